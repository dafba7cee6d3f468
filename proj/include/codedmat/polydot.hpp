#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "codedmat/common.hpp"
#include "codedmat/poly.hpp"

namespace codedmat {

// PolyDot(m, s, t) with st = m: A is cut into a t x s grid of blocks, B into an
// s x t grid, and the bivariate encodings
//
//     p_A(x, y) = sum_{i<t, j<s} A_{i,j} x^i y^j
//     p_B(y, z) = sum_{k<s, l<t} B_{k,l} y^(s-1-k) z^l
//
// are collapsed to one variable by substituting fixed powers for x, y, z. A
// term A_{i,j} B_{k,l} then lands on exponent i*e_x + (s-1+j-k)*e_y + l*e_z,
// and the product block C_{i,l} = sum_k A_{i,k} B_{k,l} is the coefficient at
// the j-k = 0 stratum. A substitution is decodable when no term with j != k
// collides with any of those wanted exponents.

enum class SubstitutionKind { paper, improved };

/// Powers of the single variable assigned to x, y, z.
struct SubstitutionRule {
    SubstitutionKind kind = SubstitutionKind::paper;
    std::uint64_t e_x = 1, e_y = 1, e_z = 1;

    /// y = x^t, z = x^(t(2s-1)); threshold t^2 (2s-1).
    static SubstitutionRule paper(std::size_t s, std::size_t t);

    /// x = y^s, z = y^(st); threshold s t^2 + s - 1, matching the improved
    /// chain substitution at length two.
    static SubstitutionRule improved(std::size_t s, std::size_t t);

    static SubstitutionRule make(SubstitutionKind kind, std::size_t s, std::size_t t);
};

/// Exponent bookkeeping for one (s, t, rule) triple.
class ExponentMap {
  public:
    ExponentMap(std::size_t s, std::size_t t, SubstitutionRule rule);

    /// delta = s-1+j-k ranges over [0, 2s-2].
    std::uint64_t exponent(std::size_t i, std::size_t delta, std::size_t l) const {
        return i * rule_.e_x + delta * rule_.e_y + l * rule_.e_z;
    }

    /// Exponent carrying C_{i,l} (the delta = s-1 stratum).
    std::uint64_t wanted(std::size_t i, std::size_t l) const { return exponent(i, s_ - 1, l); }

    std::uint64_t max_exponent() const { return exponent(t_ - 1, 2 * s_ - 2, t_ - 1); }

    /// Points needed to interpolate the collapsed product polynomial.
    std::size_t threshold() const { return static_cast<std::size_t>(max_exponent()) + 1; }

    std::size_t s() const { return s_; }
    std::size_t t() const { return t_; }
    const SubstitutionRule& rule() const { return rule_; }

  private:
    std::size_t s_, t_;
    SubstitutionRule rule_;
};

/// Threshold derived from the exponent map (never hard-coded per family).
std::size_t polydot_threshold(std::size_t s, std::size_t t, const SubstitutionRule& rule);

/// Closed forms: t^2(2s-1) for the paper rule, s t^2 + s - 1 for the improved
/// rule. Tests assert these agree with the map-derived values.
std::size_t polydot_closed_form_threshold(std::size_t s, std::size_t t, SubstitutionKind kind);

struct ExponentMapReport {
    std::size_t s = 0, t = 0;
    SubstitutionKind kind = SubstitutionKind::paper;
    std::size_t threshold = 0;
    bool bijection_checked = false;  // only meaningful for the paper rule
    bool bijective = false;
    std::vector<std::string> collisions;  // wanted exponents hit by stray terms
    bool ok() const { return collisions.empty() && (!bijection_checked || bijective); }
};

/// Exhaustively enumerates (i, j, k, l) and checks that every wanted exponent
/// receives contributions only from its own j = k terms; for the paper rule
/// additionally checks that (alpha, beta, gamma) -> alpha + t beta + t(2s-1)
/// gamma is a bijection onto [0, t^2(2s-1)).
ExponentMapReport verify_exponent_map(std::size_t s, std::size_t t, const SubstitutionRule& rule);

struct PolyDotSpec {
    PrimeField field;
    std::size_t s = 1, t = 1;
    std::size_t workers = 1;
    std::vector<Fe> points;
    SubstitutionRule rule;

    static PolyDotSpec create(const PrimeField& field, std::size_t s, std::size_t t,
                              std::size_t workers,
                              SubstitutionKind kind = SubstitutionKind::paper,
                              std::vector<Fe> points = {});

    std::size_t m() const { return s * t; }
    std::size_t threshold() const { return polydot_threshold(s, t, rule); }
    ExponentMap map() const { return ExponentMap(s, t, rule); }
};

struct PolyDotShare {
    std::size_t worker_id = 0;
    Fe x = 0;
    FieldMatrix a_part;  // rows(A)/t x cols(A)/s after padding
    FieldMatrix b_part;  // rows(B)/s x cols(B)/t after padding
};

std::vector<PolyDotShare> polydot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                         const PolyDotSpec& spec);

WorkerProduct polydot_worker(const PolyDotShare& share);

/// Interpolates the collapsed polynomial entrywise from the first threshold()
/// results, reads the C_{i,l} blocks at the wanted exponents, reassembles and
/// crops to out_rows x out_cols (pass rows(A), cols(B)).
FieldMatrix polydot_decode(std::span<const WorkerProduct> results, const PolyDotSpec& spec,
                           std::size_t out_rows, std::size_t out_cols);

/// Exact symbol counts for square N x N inputs with s | N and t | N.
CostReport polydot_costs(const PolyDotSpec& spec, std::size_t n);

/// One row of the communication/threshold trade-off for a factor pair of m.
struct TradeoffPoint {
    std::size_t s = 0, t = 0;
    std::size_t recovery_threshold = 0;
    std::uint64_t per_worker_out_symbols = 0;
    std::uint64_t fusion_total_symbols = 0;
};

/// One row per factor pair (s, t) of m at matrix size N, sorted by threshold.
std::vector<TradeoffPoint> tradeoff_table(std::size_t m, std::size_t n, SubstitutionKind kind);

/// CSV with header s,t,recovery_threshold,per_worker_out_symbols,fusion_total_symbols.
void write_tradeoff_csv(std::ostream& os, std::span<const TradeoffPoint> table);

}  // namespace codedmat
