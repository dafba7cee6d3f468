#pragma once

#include <span>
#include <string>
#include <vector>

#include "codedmat/common.hpp"
#include "codedmat/poly.hpp"

namespace codedmat {

// Single-round codes for chain products D1 D2 ... Dn (n >= 2). Odd-numbered
// factors play the A role and are cut into t x s grids; even-numbered factors
// play the B role and are cut into s x t grids. Each factor f is encoded as a
// polynomial in a "row" variable z_f and a "column" variable z_(f+1); the
// column exponent of a block is its column index b, the row exponent is the
// row index a for the first factor and (range-1-a) for every later factor, so
// that a shared variable z_q collects the digit
//
//     delta_q = (range_q - 1) + b_(q-1) - a_q   in [0, 2 range_q - 2],
//
// which sits at its maximum range_q - 1 exactly on the matched terms
// b_(q-1) = a_q of the block chain product. Substituting z_q = x^(e_q)
// collapses everything to one variable; the exponent table e_1..e_(n+1)
// distinguishes the variants:
//
//   basic        the column-block / row-block code, i.e. generalized with
//                (s, t) = (m, 1); factor i is evaluated at x^(m^(i-1))
//   generalized  e = (1, t, st, st^2, s^2 t^2, ...)
//   improved     a permuted assignment that gives the big exponents to the two
//                free variables z_1 and z_(n+1), lowering the threshold
//
// The threshold is 1 + max exponent over all digit ranges, never a hard-coded
// closed form; the block C_(i,j) of the chain product is the coefficient at
// the exponent whose interior digits all sit at their matched maxima.

enum class NMatVariant { basic, generalized, improved };

struct NMatSpec {
    PrimeField field;
    std::size_t n = 2;
    std::size_t s = 1, t = 1;
    NMatVariant variant = NMatVariant::basic;
    std::size_t workers = 1;
    std::vector<Fe> points;
    std::vector<std::uint64_t> z_exp;  // z_exp[q-1] = e_q, q = 1..n+1

    static NMatSpec basic(const PrimeField& field, std::size_t n, std::size_t m,
                          std::size_t workers, std::vector<Fe> points = {});
    static NMatSpec generalized(const PrimeField& field, std::size_t n, std::size_t s,
                                std::size_t t, std::size_t workers, std::vector<Fe> points = {});
    static NMatSpec improved(const PrimeField& field, std::size_t n, std::size_t s, std::size_t t,
                             std::size_t workers, std::vector<Fe> points = {});

    std::size_t m() const { return s * t; }

    /// Largest digit value at position q (1-based, q = 1..n+1).
    std::size_t digit_max(std::size_t q) const;
    /// Matched-chain digit value at an interior position q (2..n).
    std::size_t digit_diag(std::size_t q) const;

    /// 1 + maximum exponent of the collapsed product polynomial.
    std::size_t threshold() const;

    /// Exponent carrying block (i, j) of the chain product. i < t; j < t for
    /// even n (last factor is a B), j < s for odd n (last factor is an A).
    std::uint64_t wanted_exponent(std::size_t i, std::size_t j) const;

    /// Grid of the decoded product: t rows of blocks, and this many columns.
    std::size_t out_block_cols() const { return n % 2 == 0 ? t : s; }
};

std::size_t nmat_threshold(const NMatSpec& spec);

/// Closed forms the digit-derived threshold is checked against in tests.
std::size_t nmat_closed_form_threshold(NMatVariant variant, std::size_t n, std::size_t s,
                                       std::size_t t);

struct NMatShare {
    std::size_t worker_id = 0;
    Fe x = 0;
    std::vector<FieldMatrix> parts;  // one encoded block per chain factor
};

std::vector<NMatShare> nmat_encode(std::span<const FieldMatrix> chain, const NMatSpec& spec);

/// Chain product of the encoded blocks, associated smallest-first: the
/// interior B.A products, then their chain, then the outer factors. The order
/// only affects mult_count, never the value.
WorkerProduct nmat_worker(const NMatShare& share, const NMatSpec& spec);

/// Interpolates the collapsed polynomial from the first threshold() results,
/// reads the wanted coefficients, reassembles the block grid and crops to
/// out_rows x out_cols (pass rows(D1), cols(Dn)).
FieldMatrix nmat_decode(std::span<const WorkerProduct> results, const NMatSpec& spec,
                        std::size_t out_rows, std::size_t out_cols);

struct IsolationReport {
    std::size_t tuples_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustively enumerates every block-index tuple of the expanded product
/// polynomial and checks that each wanted exponent collects exactly the
/// matched chain terms with the right outer indices — nothing more, nothing
/// missing.
IsolationReport verify_coefficient_isolation(const NMatSpec& spec);

/// Exact symbol counts for square N x N factors with s | N and t | N.
CostReport nmat_costs(const NMatSpec& spec, std::size_t n_dim);

/// Threshold of the per-factor-grid generalization (factor i on a t_i x s_i /
/// s_i x t_(i+1) grid). The even-n closed form contains a fractional term
/// whose printed sign disagrees with the homogeneous reduction, so both
/// readings are reported instead of picking one.
struct HeterogeneousThresholdReport {
    bool exact = false;       // true when the formula is integer-valued as printed
    double value = 0.0;       // formula as printed
    double value_alt = 0.0;   // sign-flipped reading of the fractional term
    std::string note;
};

HeterogeneousThresholdReport heterogeneous_nmat_threshold(std::size_t n,
                                                          std::span<const std::size_t> s,
                                                          std::span<const std::size_t> t);

}  // namespace codedmat
