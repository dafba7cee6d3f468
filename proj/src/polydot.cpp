#include "codedmat/polydot.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

namespace codedmat {

SubstitutionRule SubstitutionRule::paper(std::size_t s, std::size_t t) {
    if (s < 1 || t < 1) throw InvalidParameter("grid parameters must be >= 1");
    return {SubstitutionKind::paper, 1, static_cast<std::uint64_t>(t),
            static_cast<std::uint64_t>(t) * (2 * s - 1)};
}

SubstitutionRule SubstitutionRule::improved(std::size_t s, std::size_t t) {
    if (s < 1 || t < 1) throw InvalidParameter("grid parameters must be >= 1");
    return {SubstitutionKind::improved, static_cast<std::uint64_t>(s), 1,
            static_cast<std::uint64_t>(s) * t};
}

SubstitutionRule SubstitutionRule::make(SubstitutionKind kind, std::size_t s, std::size_t t) {
    return kind == SubstitutionKind::paper ? paper(s, t) : improved(s, t);
}

ExponentMap::ExponentMap(std::size_t s, std::size_t t, SubstitutionRule rule)
    : s_(s), t_(t), rule_(rule) {
    if (s < 1 || t < 1) throw InvalidParameter("grid parameters must be >= 1");
}

std::size_t polydot_threshold(std::size_t s, std::size_t t, const SubstitutionRule& rule) {
    return ExponentMap(s, t, rule).threshold();
}

std::size_t polydot_closed_form_threshold(std::size_t s, std::size_t t, SubstitutionKind kind) {
    if (kind == SubstitutionKind::paper) return t * t * (2 * s - 1);
    return s * t * t + s - 1;
}

ExponentMapReport verify_exponent_map(std::size_t s, std::size_t t, const SubstitutionRule& rule) {
    ExponentMap map(s, t, rule);
    ExponentMapReport report;
    report.s = s;
    report.t = t;
    report.kind = rule.kind;
    report.threshold = map.threshold();

    // Which (i, l) owns each wanted exponent.
    std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> wanted;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t l = 0; l < t; ++l) wanted[map.wanted(i, l)] = {i, l};

    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t l = 0; l < t; ++l) {
                    std::uint64_t e = map.exponent(i, s - 1 + j - k, l);
                    auto hit = wanted.find(e);
                    if (hit == wanted.end()) continue;
                    auto [wi, wl] = hit->second;
                    if (j == k && i == wi && l == wl) continue;
                    report.collisions.push_back(
                        "term (i=" + std::to_string(i) + ",j=" + std::to_string(j) + ",k=" +
                        std::to_string(k) + ",l=" + std::to_string(l) + ") lands on wanted exponent " +
                        std::to_string(e) + " of C(" + std::to_string(wi) + "," + std::to_string(wl) + ")");
                }

    if (rule.kind == SubstitutionKind::paper) {
        // (alpha, beta, gamma) -> alpha + t beta + t(2s-1) gamma must cover
        // [0, t^2(2s-1)) without repeats.
        report.bijection_checked = true;
        std::set<std::uint64_t> seen;
        bool in_range = true;
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t b = 0; b <= 2 * s - 2; ++b)
                for (std::size_t g = 0; g < t; ++g) {
                    std::uint64_t e = map.exponent(a, b, g);
                    if (e >= static_cast<std::uint64_t>(t) * t * (2 * s - 1)) in_range = false;
                    seen.insert(e);
                }
        report.bijective = in_range && seen.size() == static_cast<std::size_t>(t) * t * (2 * s - 1);
    }
    return report;
}

PolyDotSpec PolyDotSpec::create(const PrimeField& field, std::size_t s, std::size_t t,
                                std::size_t workers, SubstitutionKind kind, std::vector<Fe> points) {
    if (s < 1 || t < 1) throw InvalidParameter("grid parameters must be >= 1");
    SubstitutionRule rule = SubstitutionRule::make(kind, s, t);
    std::size_t k = polydot_threshold(s, t, rule);
    if (workers == 0) workers = k;
    if (workers < k) throw InsufficientWorkers(k, workers);
    if (field.modulus() <= workers)
        throw InvalidParameter("field too small: need p > worker count");
    if (points.empty()) points = default_points(field, workers);
    if (points.size() != workers) throw InvalidParameter("need one evaluation point per worker");
    for (Fe x : points)
        if (x >= field.modulus()) throw InvalidParameter("evaluation point out of field range");
    require_distinct_points(points);
    return PolyDotSpec{field, s, t, workers, std::move(points), rule};
}

std::vector<PolyDotShare> polydot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                         const PolyDotSpec& spec) {
    if (a.field() != spec.field || b.field() != spec.field)
        throw ShapeError("input matrices must live in the spec's field");
    if (a.cols() != b.rows()) throw ShapeError("A.cols must equal B.rows");
    const std::size_t s = spec.s, t = spec.t;
    std::vector<FieldMatrix> ablocks = split_grid(a, t, s);  // A_{i,j}
    std::vector<FieldMatrix> bblocks = split_grid(b, s, t);  // B_{k,l}
    const PrimeField& f = spec.field;

    std::vector<PolyDotShare> shares;
    shares.reserve(spec.workers);
    for (std::size_t r = 0; r < spec.workers; ++r) {
        Fe x = spec.points[r];
        FieldMatrix ax(f, ablocks[0].rows(), ablocks[0].cols());
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                Fe c = f.pow(x, i * spec.rule.e_x + j * spec.rule.e_y);
                ax = add(ax, scale(ablocks[i * s + j], c));
            }
        FieldMatrix bx(f, bblocks[0].rows(), bblocks[0].cols());
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t l = 0; l < t; ++l) {
                Fe c = f.pow(x, (s - 1 - k) * spec.rule.e_y + l * spec.rule.e_z);
                bx = add(bx, scale(bblocks[k * t + l], c));
            }
        shares.push_back({r, x, std::move(ax), std::move(bx)});
    }
    return shares;
}

WorkerProduct polydot_worker(const PolyDotShare& share) {
    return {share.worker_id, share.x, matmul(share.a_part, share.b_part),
            matmul_mult_count(share.a_part, share.b_part)};
}

FieldMatrix polydot_decode(std::span<const WorkerProduct> results, const PolyDotSpec& spec,
                           std::size_t out_rows, std::size_t out_cols) {
    const std::size_t k = spec.threshold();
    if (results.size() < k) throw RecoveryThresholdNotMet(k, results.size());

    std::vector<Fe> xs;
    std::vector<FieldMatrix> ys;
    xs.reserve(k);
    ys.reserve(k);
    std::set<Fe> seen;
    for (const WorkerProduct& r : results) {
        if (xs.size() == k) break;
        if (!seen.insert(r.x).second) throw DuplicatePoint("repeated worker evaluation point");
        xs.push_back(r.x);
        ys.push_back(r.c_part);
    }

    std::vector<FieldMatrix> coeffs = matrix_poly_coeffs(xs, ys);
    ExponentMap map = spec.map();
    std::vector<FieldMatrix> cblocks;
    cblocks.reserve(spec.t * spec.t);
    for (std::size_t i = 0; i < spec.t; ++i)
        for (std::size_t l = 0; l < spec.t; ++l) cblocks.push_back(coeffs[map.wanted(i, l)]);
    return crop(concat_grid(cblocks, spec.t, spec.t), out_rows, out_cols);
}

CostReport polydot_costs(const PolyDotSpec& spec, std::size_t n) {
    std::size_t nr = padded_dim(n, spec.t);  // row splits of A / column splits of B
    std::size_t nc = padded_dim(n, spec.s);  // the shared inner dimension
    CostReport costs;
    costs.per_worker_in_symbols = 2ULL * (nr / spec.t) * (nc / spec.s);
    costs.per_worker_out_symbols = static_cast<std::uint64_t>(nr / spec.t) * (nr / spec.t);
    costs.master_out_symbols = spec.workers * costs.per_worker_in_symbols;
    costs.fusion_in_symbols = spec.threshold() * costs.per_worker_out_symbols;
    costs.worker_mult_count =
        static_cast<std::uint64_t>(nr / spec.t) * (nc / spec.s) * (nr / spec.t);
    return costs;
}

std::vector<TradeoffPoint> tradeoff_table(std::size_t m, std::size_t n, SubstitutionKind kind) {
    if (m < 1) throw InvalidParameter("m must be >= 1");
    std::vector<TradeoffPoint> table;
    for (std::size_t t = 1; t <= m; ++t) {
        if (m % t != 0) continue;
        std::size_t s = m / t;
        std::size_t k = polydot_threshold(s, t, SubstitutionRule::make(kind, s, t));
        std::uint64_t out = static_cast<std::uint64_t>(padded_dim(n, t) / t) * (padded_dim(n, t) / t);
        table.push_back({s, t, k, out, k * out});
    }
    std::sort(table.begin(), table.end(),
              [](const TradeoffPoint& a, const TradeoffPoint& b) {
                  return a.recovery_threshold < b.recovery_threshold;
              });
    return table;
}

void write_tradeoff_csv(std::ostream& os, std::span<const TradeoffPoint> table) {
    os << "s,t,recovery_threshold,per_worker_out_symbols,fusion_total_symbols\n";
    for (const TradeoffPoint& p : table)
        os << p.s << ',' << p.t << ',' << p.recovery_threshold << ',' << p.per_worker_out_symbols
           << ',' << p.fusion_total_symbols << '\n';
}

}  // namespace codedmat
