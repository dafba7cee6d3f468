#include "codedmat/matdot.hpp"

#include <algorithm>
#include <set>

namespace codedmat {

std::vector<Fe> default_points(const PrimeField& field, std::size_t count) {
    if (field.modulus() <= count)
        throw InvalidParameter("field too small: need p > worker count");
    std::vector<Fe> xs(count);
    for (std::size_t r = 0; r < count; ++r) xs[r] = static_cast<Fe>(r + 1);
    return xs;
}

void require_distinct_points(std::span<const Fe> points) {
    std::vector<Fe> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DuplicatePoint("evaluation points must be pairwise distinct");
}

std::size_t matdot_threshold(std::size_t m) {
    if (m < 1) throw InvalidParameter("m must be >= 1");
    return 2 * m - 1;
}

MatDotSpec MatDotSpec::create(const PrimeField& field, std::size_t m, std::size_t workers,
                              bool systematic, std::vector<Fe> points) {
    if (m < 1) throw InvalidParameter("m must be >= 1");
    std::size_t k = matdot_threshold(m);
    if (workers == 0) workers = k;
    if (workers < k) throw InsufficientWorkers(k, workers);
    if (field.modulus() <= workers)
        throw InvalidParameter("field too small: need p > worker count");
    if (points.empty()) points = default_points(field, workers);
    if (points.size() != workers) throw InvalidParameter("need one evaluation point per worker");
    for (Fe x : points)
        if (x >= field.modulus()) throw InvalidParameter("evaluation point out of field range");
    require_distinct_points(points);
    return MatDotSpec{field, m, workers, std::move(points), systematic};
}

namespace {

void require_multipliable_inputs(const FieldMatrix& a, const FieldMatrix& b, const MatDotSpec& spec) {
    if (a.field() != spec.field || b.field() != spec.field)
        throw ShapeError("input matrices must live in the spec's field");
    if (a.cols() != b.rows()) throw ShapeError("A.cols must equal B.rows");
}

// First `count` results in arrival order; rejects duplicates among them.
std::vector<const WorkerProduct*> take_first(std::span<const WorkerProduct> results,
                                             std::size_t count, std::size_t needed) {
    if (results.size() < needed) throw RecoveryThresholdNotMet(needed, results.size());
    std::vector<const WorkerProduct*> used;
    used.reserve(count);
    std::set<Fe> seen;
    for (const WorkerProduct& r : results) {
        if (used.size() == count) break;
        if (!seen.insert(r.x).second) throw DuplicatePoint("repeated worker evaluation point");
        used.push_back(&r);
    }
    return used;
}

}  // namespace

std::vector<MatDotShare> matdot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                       const MatDotSpec& spec) {
    require_multipliable_inputs(a, b, spec);
    std::vector<FieldMatrix> ablocks = split_columns(a, spec.m);
    std::vector<FieldMatrix> bblocks = split_rows(b, spec.m);
    // p_B carries reversed exponents: coefficient of x^i is B_{m-1-i}.
    std::vector<FieldMatrix> bcoeffs(bblocks.rbegin(), bblocks.rend());

    std::vector<MatDotShare> shares;
    shares.reserve(spec.workers);
    for (std::size_t r = 0; r < spec.workers; ++r) {
        Fe x = spec.points[r];
        shares.push_back({r, x, eval_poly(ablocks, x), eval_poly(bcoeffs, x)});
    }
    return shares;
}

WorkerProduct matdot_worker(const MatDotShare& share) {
    return {share.worker_id, share.x, matmul(share.a_part, share.b_part),
            matmul_mult_count(share.a_part, share.b_part)};
}

FieldMatrix matdot_decode(std::span<const WorkerProduct> results, const MatDotSpec& spec) {
    const std::size_t k = spec.threshold();
    std::vector<const WorkerProduct*> used = take_first(results, k, k);

    std::vector<Fe> xs(k);
    std::vector<FieldMatrix> ys;
    ys.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = used[i]->x;
        ys.push_back(used[i]->c_part);
    }
    std::vector<FieldMatrix> coeffs = matrix_poly_coeffs(xs, ys);
    return coeffs[spec.m - 1];
}

std::vector<MatDotShare> systematic_encode(const FieldMatrix& a, const FieldMatrix& b,
                                           const MatDotSpec& spec) {
    require_multipliable_inputs(a, b, spec);
    std::vector<FieldMatrix> ablocks = split_columns(a, spec.m);
    std::vector<FieldMatrix> bblocks = split_rows(b, spec.m);
    std::span<const Fe> nodes(spec.points.data(), spec.m);

    std::vector<MatDotShare> shares;
    shares.reserve(spec.workers);
    for (std::size_t r = 0; r < spec.workers; ++r) {
        Fe x = spec.points[r];
        std::vector<Fe> basis = lagrange_basis_at(spec.field, nodes, x);
        FieldMatrix ax = scale(ablocks[0], basis[0]);
        FieldMatrix bx = scale(bblocks[0], basis[0]);
        for (std::size_t i = 1; i < spec.m; ++i) {
            ax = add(ax, scale(ablocks[i], basis[i]));
            bx = add(bx, scale(bblocks[i], basis[i]));
        }
        shares.push_back({r, x, std::move(ax), std::move(bx)});
    }
    return shares;
}

FieldMatrix systematic_decode(std::span<const WorkerProduct> results, const MatDotSpec& spec,
                              DecodeStats* stats) {
    if (stats) *stats = DecodeStats{};

    // The first m workers hold the uncoded block products; if they are all
    // here, summing them is enough.
    std::vector<const WorkerProduct*> systematic(spec.m, nullptr);
    std::size_t found = 0;
    for (const WorkerProduct& r : results) {
        if (r.worker_id < spec.m && systematic[r.worker_id] == nullptr) {
            systematic[r.worker_id] = &r;
            ++found;
        }
    }
    if (found == spec.m) {
        FieldMatrix acc = systematic[0]->c_part;
        for (std::size_t i = 1; i < spec.m; ++i) acc = add(acc, systematic[i]->c_part);
        if (stats) stats->fast_path = true;
        return acc;
    }

    const std::size_t k = spec.threshold();
    std::vector<const WorkerProduct*> used = take_first(results, k, k);
    std::vector<Fe> xs(k);
    std::vector<FieldMatrix> ys;
    ys.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = used[i]->x;
        ys.push_back(used[i]->c_part);
    }
    std::vector<FieldMatrix> coeffs = matrix_poly_coeffs(xs, ys);
    if (stats) stats->entry_interpolations = ys[0].rows() * ys[0].cols();

    FieldMatrix acc = eval_poly(coeffs, spec.points[0]);
    for (std::size_t r = 1; r < spec.m; ++r) acc = add(acc, eval_poly(coeffs, spec.points[r]));
    return acc;
}

CostReport matdot_costs(const MatDotSpec& spec, std::size_t n) {
    std::size_t np = padded_dim(n, spec.m);
    CostReport costs;
    costs.per_worker_in_symbols = 2ULL * n * np / spec.m;
    costs.per_worker_out_symbols = static_cast<std::uint64_t>(n) * n;
    costs.master_out_symbols = spec.workers * costs.per_worker_in_symbols;
    costs.fusion_in_symbols = spec.threshold() * costs.per_worker_out_symbols;
    costs.worker_mult_count = static_cast<std::uint64_t>(n) * (np / spec.m) * n;
    return costs;
}

}  // namespace codedmat
