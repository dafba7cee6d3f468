#include "codedmat/nmatrix.hpp"

#include <map>
#include <set>

namespace codedmat {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

std::vector<std::uint64_t> generalized_exponents(std::size_t n, std::size_t s, std::size_t t) {
    // e_1 = 1 and each later variable scales by t and s alternately:
    // (1, t, st, st^2, s^2 t^2, ...).
    std::vector<std::uint64_t> e(n + 1);
    for (std::size_t q = 1; q <= n + 1; ++q)
        e[q - 1] = ipow(s, (q - 1) / 2) * ipow(t, q / 2);
    return e;
}

std::vector<std::uint64_t> improved_exponents(std::size_t n, std::size_t s, std::size_t t) {
    // Interior variables grow as (1, s, st, s^2 t, ...); the free variables
    // z_1 and z_(n+1) take the largest powers.
    std::vector<std::uint64_t> e(n + 1);
    for (std::size_t q = 2; q <= n; ++q) {
        if (q % 2 == 0)
            e[q - 1] = ipow(s, q / 2 - 1) * ipow(t, q / 2 - 1);
        else
            e[q - 1] = ipow(s, (q - 1) / 2) * ipow(t, (q - 3) / 2);
    }
    if (n % 2 == 0) {
        e[0] = ipow(s, n / 2) * ipow(t, n / 2 - 1);
        e[n] = ipow(s, n / 2) * ipow(t, n / 2);
    } else {
        e[0] = ipow(s, (n - 1) / 2) * ipow(t, (n - 1) / 2);
        e[n] = ipow(s, (n - 1) / 2) * ipow(t, (n + 1) / 2);
    }
    return e;
}

NMatSpec make_spec(const PrimeField& field, std::size_t n, std::size_t s, std::size_t t,
                   NMatVariant variant, std::size_t workers, std::vector<Fe> points) {
    if (n < 2) throw InvalidParameter("chain length n must be >= 2");
    if (s < 1 || t < 1) throw InvalidParameter("grid parameters must be >= 1");
    NMatSpec spec;
    spec.field = field;
    spec.n = n;
    spec.s = s;
    spec.t = t;
    spec.variant = variant;
    spec.workers = workers;
    spec.z_exp = variant == NMatVariant::improved ? improved_exponents(n, s, t)
                                                  : generalized_exponents(n, s, t);
    std::size_t k = spec.threshold();
    if (workers == 0) workers = spec.workers = k;
    if (workers < k) throw InsufficientWorkers(k, workers);
    if (field.modulus() <= workers)
        throw InvalidParameter("field too small: need p > worker count");
    if (points.empty()) points = default_points(field, workers);
    if (points.size() != workers) throw InvalidParameter("need one evaluation point per worker");
    for (Fe x : points)
        if (x >= field.modulus()) throw InvalidParameter("evaluation point out of field range");
    require_distinct_points(points);
    spec.points = std::move(points);
    return spec;
}

}  // namespace

NMatSpec NMatSpec::basic(const PrimeField& field, std::size_t n, std::size_t m,
                         std::size_t workers, std::vector<Fe> points) {
    if (m < 1) throw InvalidParameter("m must be >= 1");
    return make_spec(field, n, m, 1, NMatVariant::basic, workers, std::move(points));
}

NMatSpec NMatSpec::generalized(const PrimeField& field, std::size_t n, std::size_t s,
                               std::size_t t, std::size_t workers, std::vector<Fe> points) {
    return make_spec(field, n, s, t, NMatVariant::generalized, workers, std::move(points));
}

NMatSpec NMatSpec::improved(const PrimeField& field, std::size_t n, std::size_t s, std::size_t t,
                            std::size_t workers, std::vector<Fe> points) {
    return make_spec(field, n, s, t, NMatVariant::improved, workers, std::move(points));
}

std::size_t NMatSpec::digit_max(std::size_t q) const {
    if (q == 1) return t - 1;
    if (q == n + 1) return (n % 2 == 0 ? t : s) - 1;
    return q % 2 == 0 ? 2 * s - 2 : 2 * t - 2;
}

std::size_t NMatSpec::digit_diag(std::size_t q) const { return (q % 2 == 0 ? s : t) - 1; }

std::size_t NMatSpec::threshold() const {
    if (z_exp.size() != n + 1)
        throw InvalidParameter("spec has no substitution table; build it through a factory");
    std::uint64_t max_exp = 0;
    for (std::size_t q = 1; q <= n + 1; ++q) max_exp += digit_max(q) * z_exp[q - 1];
    return static_cast<std::size_t>(max_exp) + 1;
}

std::uint64_t NMatSpec::wanted_exponent(std::size_t i, std::size_t j) const {
    std::uint64_t e = i * z_exp[0] + j * z_exp[n];
    for (std::size_t q = 2; q <= n; ++q) e += digit_diag(q) * z_exp[q - 1];
    return e;
}

std::size_t nmat_threshold(const NMatSpec& spec) { return spec.threshold(); }

std::size_t nmat_closed_form_threshold(NMatVariant variant, std::size_t n, std::size_t s,
                                       std::size_t t) {
    const bool even = n % 2 == 0;
    switch (variant) {
        case NMatVariant::basic: {
            std::size_t m = s * t;
            return even ? 2 * ipow(m, n / 2) - 1 : (m + 1) * ipow(m, n / 2) - 1;
        }
        case NMatVariant::generalized:
            return even ? ipow(s, n / 2) * ipow(t, n / 2 + 1) + ipow(s, n / 2) * ipow(t, n / 2) - t
                        : ipow(s, (n + 1) / 2) * ipow(t, (n + 1) / 2) +
                              ipow(s, (n - 1) / 2) * ipow(t, (n + 1) / 2) - t;
        case NMatVariant::improved:
            return even ? ipow(s, n / 2) * ipow(t, n / 2 + 1) + ipow(s, n / 2) * ipow(t, n / 2 - 1) - 1
                        : ipow(s, (n + 1) / 2) * ipow(t, (n + 1) / 2) +
                              ipow(s, (n - 1) / 2) * ipow(t, (n - 1) / 2) - 1;
    }
    throw InvalidParameter("unknown variant");
}

namespace {

// Factor f (1-based) is an A when odd, a B when even; its row-block range.
std::size_t row_range(const NMatSpec& spec, std::size_t f) { return f % 2 == 1 ? spec.t : spec.s; }
std::size_t col_range(const NMatSpec& spec, std::size_t f) { return f % 2 == 1 ? spec.s : spec.t; }

// Exponent contributed by block (a, b) of factor f. Every factor after the
// first reverses its row exponent so that matched chain terms maximize the
// shared digit.
std::uint64_t block_exponent(const NMatSpec& spec, std::size_t f, std::size_t a, std::size_t b) {
    std::uint64_t row = (f == 1) ? a : row_range(spec, f) - 1 - a;
    return row * spec.z_exp[f - 1] + static_cast<std::uint64_t>(b) * spec.z_exp[f];
}

}  // namespace

std::vector<NMatShare> nmat_encode(std::span<const FieldMatrix> chain, const NMatSpec& spec) {
    if (chain.size() != spec.n) throw ShapeError("chain length does not match the spec");
    for (std::size_t f = 1; f < spec.n; ++f)
        if (chain[f - 1].cols() != chain[f].rows())
            throw ShapeError("chain factors are not conformable");
    for (const FieldMatrix& d : chain)
        if (d.field() != spec.field) throw ShapeError("chain factors must live in the spec's field");

    // Per-factor block grids; padding on a shared interface dimension uses the
    // same multiple on both sides, so conformability survives.
    std::vector<std::vector<FieldMatrix>> grids;
    grids.reserve(spec.n);
    for (std::size_t f = 1; f <= spec.n; ++f)
        grids.push_back(split_grid(chain[f - 1], row_range(spec, f), col_range(spec, f)));

    const PrimeField& field = spec.field;
    std::vector<NMatShare> shares;
    shares.reserve(spec.workers);
    for (std::size_t r = 0; r < spec.workers; ++r) {
        Fe x = spec.points[r];
        NMatShare share{r, x, {}};
        share.parts.reserve(spec.n);
        for (std::size_t f = 1; f <= spec.n; ++f) {
            const std::vector<FieldMatrix>& blocks = grids[f - 1];
            std::size_t rr = row_range(spec, f), cc = col_range(spec, f);
            FieldMatrix part(field, blocks[0].rows(), blocks[0].cols());
            for (std::size_t a = 0; a < rr; ++a)
                for (std::size_t b = 0; b < cc; ++b) {
                    Fe c = field.pow(x, block_exponent(spec, f, a, b));
                    part = add(part, scale(blocks[a * cc + b], c));
                }
            share.parts.push_back(std::move(part));
        }
        shares.push_back(std::move(share));
    }
    return shares;
}

WorkerProduct nmat_worker(const NMatShare& share, const NMatSpec& spec) {
    if (share.parts.size() != spec.n) throw ShapeError("share does not match the spec");
    std::uint64_t mults = 0;
    auto mm = [&mults](const FieldMatrix& x, const FieldMatrix& y) {
        mults += matmul_mult_count(x, y);
        return matmul(x, y);
    };

    const std::span<const FieldMatrix> p(share.parts);
    FieldMatrix out;
    if (spec.n == 2) {
        out = mm(p[0], p[1]);
    } else {
        std::size_t pairs = spec.n % 2 == 0 ? spec.n / 2 - 1 : (spec.n - 1) / 2;
        std::vector<FieldMatrix> inner;
        inner.reserve(pairs);
        for (std::size_t i = 0; i < pairs; ++i) inner.push_back(mm(p[2 * i + 1], p[2 * i + 2]));
        FieldMatrix d = inner[0];
        for (std::size_t i = 1; i < pairs; ++i) d = mm(d, inner[i]);
        FieldMatrix e = mm(p[0], d);
        out = spec.n % 2 == 0 ? mm(e, p[spec.n - 1]) : std::move(e);
    }
    return {share.worker_id, share.x, std::move(out), mults};
}

FieldMatrix nmat_decode(std::span<const WorkerProduct> results, const NMatSpec& spec,
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
    std::size_t bc = spec.out_block_cols();
    std::vector<FieldMatrix> cblocks;
    cblocks.reserve(spec.t * bc);
    for (std::size_t i = 0; i < spec.t; ++i)
        for (std::size_t j = 0; j < bc; ++j) cblocks.push_back(coeffs[spec.wanted_exponent(i, j)]);
    return crop(concat_grid(cblocks, spec.t, bc), out_rows, out_cols);
}

IsolationReport verify_coefficient_isolation(const NMatSpec& spec) {
    IsolationReport report;
    const std::size_t n = spec.n;

    std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> wanted;
    for (std::size_t i = 0; i < spec.t; ++i)
        for (std::size_t j = 0; j < spec.out_block_cols(); ++j)
            wanted[spec.wanted_exponent(i, j)] = {i, j};

    // Matched chain terms expected per wanted coefficient: one free index per
    // interior contraction.
    std::size_t expected_chains = 1;
    for (std::size_t q = 2; q <= n; ++q) expected_chains *= q % 2 == 0 ? spec.s : spec.t;
    std::map<std::uint64_t, std::size_t> chain_hits;

    // Odometer over all block index tuples (a_1, b_1, ..., a_n, b_n).
    std::vector<std::size_t> idx(2 * n, 0);
    auto range_of = [&](std::size_t d) {
        std::size_t f = d / 2 + 1;
        return d % 2 == 0 ? row_range(spec, f) : col_range(spec, f);
    };

    while (true) {
        std::uint64_t e = 0;
        for (std::size_t f = 1; f <= n; ++f) e += block_exponent(spec, f, idx[2 * (f - 1)], idx[2 * (f - 1) + 1]);
        bool chained = true;
        for (std::size_t f = 1; f < n && chained; ++f) chained = idx[2 * (f - 1) + 1] == idx[2 * f];

        auto hit = wanted.find(e);
        if (hit != wanted.end()) {
            auto [wi, wj] = hit->second;
            if (chained && idx[0] == wi && idx[2 * n - 1] == wj) {
                ++chain_hits[e];
            } else {
                std::string tuple;
                for (std::size_t f = 1; f <= n; ++f)
                    tuple += " (" + std::to_string(idx[2 * (f - 1)]) + "," +
                             std::to_string(idx[2 * (f - 1) + 1]) + ")";
                report.violations.push_back("stray term" + tuple + " lands on wanted exponent " +
                                            std::to_string(e) + " of block C(" + std::to_string(wi) +
                                            "," + std::to_string(wj) + ")");
            }
        }
        ++report.tuples_checked;

        std::size_t d = 0;
        while (d < 2 * n && ++idx[d] == range_of(d)) idx[d++] = 0;
        if (d == 2 * n) break;
    }

    for (const auto& [e, owner] : wanted) {
        std::size_t got = chain_hits.count(e) ? chain_hits[e] : 0;
        if (got != expected_chains)
            report.violations.push_back("wanted exponent " + std::to_string(e) + " of block C(" +
                                        std::to_string(owner.first) + "," + std::to_string(owner.second) +
                                        ") collected " + std::to_string(got) + " chain terms, expected " +
                                        std::to_string(expected_chains));
    }
    return report;
}

CostReport nmat_costs(const NMatSpec& spec, std::size_t n_dim) {
    const std::size_t nt = padded_dim(n_dim, spec.t);
    const std::size_t ns = padded_dim(n_dim, spec.s);
    const std::uint64_t ar = nt / spec.t, ac = ns / spec.s;  // A-eval block shape
    const std::uint64_t br = ac, bc = ar;                    // B-eval block shape

    CostReport costs;
    costs.per_worker_in_symbols = spec.n * ar * ac;
    costs.per_worker_out_symbols = spec.n % 2 == 0 ? ar * bc : ar * ac;
    costs.master_out_symbols = spec.workers * costs.per_worker_in_symbols;
    costs.fusion_in_symbols = spec.threshold() * costs.per_worker_out_symbols;

    // Same association order as nmat_worker, dimensions only.
    std::uint64_t mults = 0;
    if (spec.n == 2) {
        mults = ar * ac * bc;
    } else {
        std::size_t pairs = spec.n % 2 == 0 ? spec.n / 2 - 1 : (spec.n - 1) / 2;
        mults += pairs * (br * bc * ac);          // each B.A product, shape br x ac
        if (pairs > 1) mults += (pairs - 1) * (br * ac * ac);  // chaining the br x ac squares
        mults += ar * ac * ac;                    // leading A times the chain
        if (spec.n % 2 == 0) mults += ar * ac * bc;  // trailing B
    }
    costs.worker_mult_count = mults;
    return costs;
}

HeterogeneousThresholdReport heterogeneous_nmat_threshold(std::size_t n,
                                                          std::span<const std::size_t> s,
                                                          std::span<const std::size_t> t) {
    if (n < 2) throw InvalidParameter("chain length n must be >= 2");
    HeterogeneousThresholdReport report;
    if (n % 2 == 0) {
        if (s.size() != n / 2 || t.size() != n / 2 + 1)
            throw InvalidParameter("even chains need n/2 row splits and n/2+1 column splits");
        double prod = 1.0;
        for (std::size_t i = 0; i < n / 2; ++i) prod *= static_cast<double>(s[i]) * t[i];
        report.value = (static_cast<double>(t[n / 2]) - 1.0 / t[0]) * prod - 1.0;
        report.value_alt = (static_cast<double>(t[n / 2]) + 1.0 / t[0]) * prod - 1.0;
        report.exact = t[0] == 1;
        report.note =
            "fractional term 1/t_1: the printed sign gives t^2 s - s - 1 on equal grids, the "
            "flipped sign gives s t^2 + s - 1, which is the value the equal-grid improved "
            "threshold attains";
    } else {
        if (s.size() != (n + 1) / 2 || t.size() != (n + 1) / 2)
            throw InvalidParameter("odd chains need (n+1)/2 row and column splits");
        double prod = 1.0;
        for (std::size_t i = 0; i < (n - 1) / 2; ++i) prod *= static_cast<double>(s[i]) * t[i];
        report.value = (static_cast<double>(t[0]) * s[(n - 1) / 2] + 1.0) * prod - 1.0;
        report.value_alt = report.value;
        report.exact = true;
        report.note = "integer-valued as printed";
    }
    return report;
}

}  // namespace codedmat
