#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "codedmat/matdot.hpp"
#include "helpers.hpp"

using namespace codedmat;

namespace {

FieldMatrix make(const PrimeField& f, std::size_t rows, std::size_t cols,
                 std::vector<std::int64_t> vals) {
    FieldMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_signed(vals[i * cols + j]);
    return m;
}

std::vector<WorkerProduct> run_workers(const std::vector<MatDotShare>& shares) {
    std::vector<WorkerProduct> out;
    out.reserve(shares.size());
    for (const MatDotShare& s : shares) out.push_back(matdot_worker(s));
    return out;
}

std::vector<WorkerProduct> pick(const std::vector<WorkerProduct>& all,
                                const std::vector<std::size_t>& ids) {
    std::vector<WorkerProduct> out;
    for (std::size_t id : ids) out.push_back(all[id]);
    return out;
}

}  // namespace

TEST_CASE("threshold formula") {
    CHECK(matdot_threshold(2) == 3);
    CHECK(matdot_threshold(1) == 1);
    CHECK(matdot_threshold(5) == 9);
    CHECK_THROWS_AS(matdot_threshold(0), InvalidParameter);
}

TEST_CASE("spec validation") {
    PrimeField f(11);
    CHECK_THROWS_AS(MatDotSpec::create(f, 2, 2), InsufficientWorkers);
    try {
        MatDotSpec::create(f, 3, 4);
        FAIL("expected InsufficientWorkers");
    } catch (const InsufficientWorkers& e) {
        CHECK(e.needed == 5);
        CHECK(e.got == 4);
    }
    // need p > P
    CHECK_THROWS_AS(MatDotSpec::create(PrimeField(5), 2, 5), InvalidParameter);
    // duplicate points
    CHECK_THROWS_AS(MatDotSpec::create(f, 2, 3, false, {1, 1, 2}), DuplicatePoint);
}

TEST_CASE("encode evaluates the block polynomials") {
    PrimeField f(11);
    FieldMatrix a = make(f, 2, 2, {1, 2, 3, 4});
    FieldMatrix b = make(f, 2, 2, {5, 6, 7, 1});
    MatDotSpec spec = MatDotSpec::create(f, 2, 4, false, {2, 0, 5, 7});

    std::vector<MatDotShare> shares = matdot_encode(a, b, spec);
    REQUIRE(shares.size() == 4);

    // x = 2: p_A(2) = A0 + 2 A1, p_B(2) = 2 B0 + B1
    CHECK(shares[0].a_part == make(f, 2, 1, {5, 0}));
    CHECK(shares[0].b_part == make(f, 1, 2, {6, 2}));

    // x = 0 extracts the constant terms: A0 and B_{m-1}
    std::vector<FieldMatrix> ablocks = split_columns(a, 2);
    std::vector<FieldMatrix> bblocks = split_rows(b, 2);
    CHECK(shares[1].a_part == ablocks[0]);
    CHECK(shares[1].b_part == bblocks[1]);
}

TEST_CASE("m = 1 is the uncoded degenerate case") {
    PrimeField f;
    std::mt19937_64 rng(2);
    FieldMatrix a = FieldMatrix::random(f, 5, 5, rng);
    FieldMatrix b = FieldMatrix::random(f, 5, 5, rng);
    MatDotSpec spec = MatDotSpec::create(f, 1, 3);
    std::vector<MatDotShare> shares = matdot_encode(a, b, spec);
    for (const MatDotShare& s : shares) {
        CHECK(s.a_part == a);
        CHECK(s.b_part == b);
    }
    std::vector<WorkerProduct> prods = run_workers(shares);
    CHECK(prods[0].c_part == matmul_serial(a, b));
    std::vector<WorkerProduct> one{prods[2]};
    CHECK(matdot_decode(one, spec) == matmul_serial(a, b));
}

TEST_CASE("worker output expands as A0B1 + (A0B0 + A1B1) x + A1B0 x^2") {
    PrimeField f;
    std::mt19937_64 rng(3);
    FieldMatrix a = FieldMatrix::random(f, 6, 6, rng);
    FieldMatrix b = FieldMatrix::random(f, 6, 6, rng);
    MatDotSpec spec = MatDotSpec::create(f, 2, 4);
    std::vector<FieldMatrix> as = split_columns(a, 2);
    std::vector<FieldMatrix> bs = split_rows(b, 2);

    std::vector<MatDotShare> shares = matdot_encode(a, b, spec);
    for (const MatDotShare& s : shares) {
        WorkerProduct p = matdot_worker(s);
        FieldMatrix want = matmul_serial(as[0], bs[1]);
        want = add(want, scale(add(matmul_serial(as[0], bs[0]), matmul_serial(as[1], bs[1])), s.x));
        want = add(want, scale(matmul_serial(as[1], bs[0]), f.mul(s.x, s.x)));
        CHECK(p.c_part == want);
        CHECK(p.mult_count == 6ULL * 3 * 6);
    }

    MatDotShare zeroed = shares[0];
    zeroed.a_part = FieldMatrix(f, 6, 3);
    CHECK(matdot_worker(zeroed).c_part == FieldMatrix(f, 6, 6));
}

TEST_CASE("any 3 of 4 workers reproduce the GF(11) product") {
    PrimeField f(11);
    FieldMatrix a = make(f, 2, 2, {1, 2, 3, 4});
    FieldMatrix b = make(f, 2, 2, {5, 6, 7, 1});
    FieldMatrix want = make(f, 2, 2, {8, 8, 10, 0});
    MatDotSpec spec = MatDotSpec::create(f, 2, 4);
    std::vector<WorkerProduct> prods = run_workers(matdot_encode(a, b, spec));
    for (const auto& ids : testutil::all_subsets(4, 3)) CHECK(matdot_decode(pick(prods, ids), spec) == want);

    SUBCASE("two results are not enough, and the error carries the counts") {
        std::vector<WorkerProduct> two{prods[0], prods[1]};
        try {
            matdot_decode(two, spec);
            FAIL("expected RecoveryThresholdNotMet");
        } catch (const RecoveryThresholdNotMet& e) {
            CHECK(e.needed == 3);
            CHECK(e.got == 2);
        }
    }

    SUBCASE("extra results beyond the threshold are ignored") {
        CHECK(matdot_decode(prods, spec) == want);
    }

    SUBCASE("duplicate points among the used results are rejected") {
        std::vector<WorkerProduct> dup{prods[0], prods[0], prods[1]};
        CHECK_THROWS_AS(matdot_decode(dup, spec), DuplicatePoint);
    }
}

TEST_CASE("every threshold-sized subset decodes exactly, m up to 6") {
    PrimeField f;
    std::mt19937_64 rng(7);
    for (std::size_t m = 1; m <= 6; ++m) {
        std::size_t workers = 2 * m + 3;
        std::size_t k = 2 * m - 1;
        std::size_t n = 1 + rng() % 12;
        FieldMatrix a = FieldMatrix::random(f, n, n, rng);
        FieldMatrix b = FieldMatrix::random(f, n, n, rng);
        FieldMatrix want = matmul_serial(a, b);
        MatDotSpec spec = MatDotSpec::create(f, m, workers);
        std::vector<WorkerProduct> prods = run_workers(matdot_encode(a, b, spec));
        auto subsets = m <= 3 ? testutil::all_subsets(workers, k)
                              : testutil::random_subsets(workers, k, 40, rng);
        for (const auto& ids : subsets) CHECK(matdot_decode(pick(prods, ids), spec) == want);
    }
}

TEST_CASE("encoding is linear in A") {
    PrimeField f;
    std::mt19937_64 rng(19);
    FieldMatrix a1 = FieldMatrix::random(f, 6, 6, rng);
    FieldMatrix a2 = FieldMatrix::random(f, 6, 6, rng);
    FieldMatrix b = FieldMatrix::random(f, 6, 6, rng);
    MatDotSpec spec = MatDotSpec::create(f, 3, 7);
    std::vector<MatDotShare> s1 = matdot_encode(a1, b, spec);
    std::vector<MatDotShare> s2 = matdot_encode(a2, b, spec);
    std::vector<MatDotShare> sum = matdot_encode(add(a1, a2), b, spec);
    for (std::size_t r = 0; r < spec.workers; ++r) {
        CHECK(sum[r].a_part == add(s1[r].a_part, s2[r].a_part));
        CHECK(sum[r].b_part == s1[r].b_part);
    }
}

TEST_CASE("systematic workers compute the uncoded block products") {
    PrimeField f;
    std::mt19937_64 rng(23);
    for (std::size_t m : {2, 3, 4}) {
        std::size_t n = 8;
        FieldMatrix a = FieldMatrix::random(f, n, n, rng);
        FieldMatrix b = FieldMatrix::random(f, n, n, rng);
        MatDotSpec spec = MatDotSpec::create(f, m, 2 * m + 1, true);
        std::vector<FieldMatrix> as = split_columns(a, m);
        std::vector<FieldMatrix> bs = split_rows(b, m);
        std::vector<WorkerProduct> prods = run_workers(systematic_encode(a, b, spec));
        for (std::size_t r = 0; r < m; ++r) CHECK(prods[r].c_part == matmul_serial(as[r], bs[r]));

        // the sum of the systematic outputs is already the product
        FieldMatrix acc = prods[0].c_part;
        for (std::size_t r = 1; r < m; ++r) acc = add(acc, prods[r].c_part);
        CHECK(acc == matmul_serial(a, b));
    }
}

TEST_CASE("systematic m = 1 share is the pair (A, B)") {
    PrimeField f;
    std::mt19937_64 rng(29);
    FieldMatrix a = FieldMatrix::random(f, 4, 4, rng);
    FieldMatrix b = FieldMatrix::random(f, 4, 4, rng);
    MatDotSpec spec = MatDotSpec::create(f, 1, 2, true);
    std::vector<MatDotShare> shares = systematic_encode(a, b, spec);
    CHECK(shares[0].a_part == a);
    CHECK(shares[0].b_part == b);
    std::vector<WorkerProduct> one{matdot_worker(shares[0])};
    DecodeStats stats;
    CHECK(systematic_decode(one, spec, &stats) == matmul_serial(a, b));
    CHECK(stats.fast_path);
}

TEST_CASE("systematic decode paths") {
    PrimeField f(101);
    std::mt19937_64 rng(31);
    FieldMatrix a = FieldMatrix::random(f, 6, 6, rng);
    FieldMatrix b = FieldMatrix::random(f, 6, 6, rng);
    FieldMatrix want = matmul_serial(a, b);
    MatDotSpec spec = MatDotSpec::create(f, 2, 4, true);
    std::vector<WorkerProduct> prods = run_workers(systematic_encode(a, b, spec));

    SUBCASE("fast path: systematic workers only, zero interpolations") {
        std::vector<WorkerProduct> sys{prods[0], prods[1]};
        DecodeStats stats;
        CHECK(systematic_decode(sys, spec, &stats) == want);
        CHECK(stats.fast_path);
        CHECK(stats.entry_interpolations == 0);
    }

    SUBCASE("fast path wins even when a full threshold set is present") {
        std::vector<WorkerProduct> all{prods[2], prods[0], prods[3], prods[1]};
        DecodeStats stats;
        CHECK(systematic_decode(all, spec, &stats) == want);
        CHECK(stats.fast_path);
    }

    SUBCASE("general path: workers {0, 2, 3}") {
        std::vector<WorkerProduct> mix{prods[0], prods[2], prods[3]};
        DecodeStats stats;
        CHECK(systematic_decode(mix, spec, &stats) == want);
        CHECK(!stats.fast_path);
        CHECK(stats.entry_interpolations == 36);
    }

    SUBCASE("not enough results and systematic set incomplete") {
        std::vector<WorkerProduct> short_set{prods[0], prods[2]};
        CHECK_THROWS_AS(systematic_decode(short_set, spec, nullptr), RecoveryThresholdNotMet);
    }

    SUBCASE("general path agrees with the fast path on the same round") {
        std::vector<WorkerProduct> fast_set{prods[0], prods[1]};
        std::vector<WorkerProduct> general_set{prods[1], prods[2], prods[3]};
        DecodeStats fast_stats, general_stats;
        FieldMatrix via_fast = systematic_decode(fast_set, spec, &fast_stats);
        FieldMatrix via_general = systematic_decode(general_set, spec, &general_stats);
        CHECK(fast_stats.fast_path);
        CHECK(!general_stats.fast_path);
        CHECK(via_fast == via_general);
        CHECK(via_fast == want);
    }
}

TEST_CASE("cost accounting is exact") {
    PrimeField f;
    MatDotSpec spec = MatDotSpec::create(f, 2, 4);
    CostReport costs = matdot_costs(spec, 12);
    CHECK(costs.per_worker_in_symbols == 144);   // 2 N^2 / m
    CHECK(costs.per_worker_out_symbols == 144);  // N^2
    CHECK(costs.master_out_symbols == 4 * 144);
    CHECK(costs.fusion_in_symbols == 3 * 144);
    CHECK(costs.worker_mult_count == 12ULL * 6 * 12);  // N^3 / m

    // and they match what encode/worker actually produce
    std::mt19937_64 rng(37);
    FieldMatrix a = FieldMatrix::random(f, 12, 12, rng);
    FieldMatrix b = FieldMatrix::random(f, 12, 12, rng);
    std::vector<MatDotShare> shares = matdot_encode(a, b, spec);
    WorkerProduct p = matdot_worker(shares[0]);
    CHECK(shares[0].a_part.rows() * shares[0].a_part.cols() +
              shares[0].b_part.rows() * shares[0].b_part.cols() ==
          costs.per_worker_in_symbols);
    CHECK(p.c_part.rows() * p.c_part.cols() == costs.per_worker_out_symbols);
    CHECK(p.mult_count == costs.worker_mult_count);
}
