#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "codedmat/poly.hpp"
#include "helpers.hpp"

using namespace codedmat;

TEST_CASE("field construction validates the modulus") {
    CHECK_NOTHROW(PrimeField(7));
    CHECK_NOTHROW(PrimeField());  // 2^31 - 1
    CHECK_THROWS_AS(PrimeField(1), InvalidParameter);
    CHECK_THROWS_AS(PrimeField(9), InvalidParameter);
    CHECK_THROWS_AS(PrimeField(2147483649ULL), InvalidParameter);  // 2^31 + 1 = 3 * 715827883
}

TEST_CASE("basic field ops") {
    PrimeField f(7);
    CHECK(f.add(3, 5) == 1);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.pow(2, 0) == 1);
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.neg(0) == 0);
    CHECK(f.from_signed(-1) == 6);
    CHECK_THROWS_AS(f.inv(0), DivisionByZero);
}

TEST_CASE("inverse matches the extended-Euclid oracle") {
    PrimeField f(7);
    CHECK(testutil::euclid_inverse(3, 7) == 5);  // 3 * 5 = 15 = 1 mod 7
    CHECK(f.inv(3) == 5);

    PrimeField big;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Fe a = big.reduce(rng());
        if (a == 0) continue;
        Fe inv = big.inv(a);
        CHECK(inv == testutil::euclid_inverse(a, big.modulus()));
        CHECK(big.mul(a, inv) == 1);
    }
}

TEST_CASE("field axioms hold on random triples") {
    PrimeField f;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        Fe a = f.reduce(rng()), b = f.reduce(rng()), c = f.reduce(rng());
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.add(a, f.neg(a)) == 0);
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
    }
}

TEST_CASE("scalar polynomial evaluation") {
    PrimeField f(7);
    std::vector<Fe> constant{3};
    CHECK(eval_poly(f, constant, 5) == 3);
    std::vector<Fe> coeffs{1, 2, 3};
    CHECK(eval_poly(f, coeffs, 2) == 3);  // 1 + 4 + 12 = 17 = 3 mod 7
    CHECK_THROWS_AS(eval_poly(f, std::vector<Fe>{}, 2), EmptyInput);
}

TEST_CASE("matrix polynomial evaluation") {
    PrimeField f(7);
    std::vector<FieldMatrix> zeros{FieldMatrix(f, 2, 3), FieldMatrix(f, 2, 3)};
    CHECK(eval_poly(zeros, 4) == FieldMatrix(f, 2, 3));

    std::vector<FieldMatrix> bad{FieldMatrix(f, 2, 3), FieldMatrix(f, 3, 2)};
    CHECK_THROWS_AS(eval_poly(bad, 4), ShapeError);
}

TEST_CASE("interpolation round trips") {
    PrimeField f(7);
    std::vector<std::pair<Fe, Fe>> single{{1, 3}};
    CHECK(interpolate(f, single) == std::vector<Fe>{3});

    // samples of 1 + 2x + 3x^2 at x = 1, 2, 3
    std::vector<Fe> coeffs{1, 2, 3};
    std::vector<std::pair<Fe, Fe>> samples;
    for (Fe x : {1, 2, 3}) samples.push_back({x, eval_poly(f, coeffs, x)});
    CHECK(interpolate(f, samples) == coeffs);

    CHECK_THROWS_AS(interpolate(f, std::vector<std::pair<Fe, Fe>>{}), EmptyInput);
    std::vector<std::pair<Fe, Fe>> dup{{1, 3}, {1, 4}};
    CHECK_THROWS_AS(interpolate(f, dup), DuplicatePoint);
}

TEST_CASE("any threshold-sized subset of samples gives identical coefficients") {
    PrimeField f(11);
    std::vector<Fe> coeffs{4, 0, 9};  // degree 2
    std::vector<std::pair<Fe, Fe>> samples;
    for (Fe x : {1, 2, 3, 4, 5}) samples.push_back({x, eval_poly(f, coeffs, x)});
    std::vector<std::pair<Fe, Fe>> first3(samples.begin(), samples.begin() + 3);
    std::vector<std::pair<Fe, Fe>> last3(samples.end() - 3, samples.end());
    CHECK(interpolate(f, first3) == coeffs);
    CHECK(interpolate(f, last3) == coeffs);
}

TEST_CASE("interpolate after eval is the identity for random polynomials") {
    PrimeField f;
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t deg = rng() % 8;
        std::vector<Fe> coeffs(deg + 1);
        for (Fe& c : coeffs) c = f.reduce(rng());
        std::vector<std::pair<Fe, Fe>> samples;
        for (std::size_t x = 1; x <= deg + 1; ++x)
            samples.push_back({static_cast<Fe>(x), eval_poly(f, coeffs, static_cast<Fe>(x))});
        CHECK(interpolate(f, samples) == coeffs);
    }
}

TEST_CASE("interpolation weights") {
    PrimeField f(101);

    SUBCASE("single point") {
        std::vector<Fe> xs{7};
        CHECK(interpolation_weights(f, xs) == std::vector<Fe>{1});
    }

    SUBCASE("weights times Vandermonde is the identity") {
        std::vector<Fe> xs{3, 19, 42, 77};
        std::vector<Fe> w = interpolation_weights(f, xs);
        std::size_t k = xs.size();
        for (std::size_t d = 0; d < k; ++d)
            for (std::size_t e = 0; e < k; ++e) {
                Fe acc = 0;  // sum_j W[d][j] * xs[j]^e
                for (std::size_t j = 0; j < k; ++j) acc = f.add(acc, f.mul(w[d * k + j], f.pow(xs[j], e)));
                CHECK(acc == (d == e ? 1 : 0));
            }
    }

    SUBCASE("weights applied to samples of x^2 give [0, 0, 1]") {
        std::vector<Fe> xs{13, 57, 94};
        std::vector<Fe> w = interpolation_weights(f, xs);
        std::vector<Fe> want{0, 0, 1};
        for (std::size_t d = 0; d < 3; ++d) {
            Fe acc = 0;
            for (std::size_t j = 0; j < 3; ++j) acc = f.add(acc, f.mul(w[d * 3 + j], f.mul(xs[j], xs[j])));
            CHECK(acc == want[d]);
        }
    }

    SUBCASE("duplicate points rejected") {
        std::vector<Fe> xs{3, 3};
        CHECK_THROWS_AS(interpolation_weights(f, xs), DuplicatePoint);
    }
}

TEST_CASE("lagrange basis is one-hot on its nodes") {
    PrimeField f;
    std::vector<Fe> nodes{1, 2, 3, 4};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<Fe> basis = lagrange_basis_at(f, nodes, nodes[i]);
        for (std::size_t j = 0; j < nodes.size(); ++j) CHECK(basis[j] == (i == j ? 1 : 0));
    }
    std::vector<Fe> basis = lagrange_basis_at(f, nodes, 9);
    Fe sum = 0;
    for (Fe b : basis) sum = f.add(sum, b);
    CHECK(sum == 1);  // the basis sums to the constant 1 polynomial
}

TEST_CASE("parallel and serial matrix interpolation agree") {
    PrimeField f;
    std::mt19937_64 rng(23);
    std::vector<Fe> xs{1, 2, 3, 4, 5};
    std::vector<FieldMatrix> ys;
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(FieldMatrix::random(f, 9, 7, rng));
    CHECK(matrix_poly_coeffs(xs, ys) == matrix_poly_coeffs_serial(xs, ys));

    // and both invert evaluation
    std::vector<FieldMatrix> coeffs = matrix_poly_coeffs(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(eval_poly(coeffs, xs[i]) == ys[i]);
}
