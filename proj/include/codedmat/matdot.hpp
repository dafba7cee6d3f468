#pragma once

#include <optional>
#include <span>
#include <vector>

#include "codedmat/common.hpp"
#include "codedmat/poly.hpp"

namespace codedmat {

/// Parameters of a MatDot round: A is cut into m column-blocks, B into m
/// row-blocks, and worker r receives the evaluations p_A(x_r), p_B(x_r) of
///
///     p_A(x) = sum_i A_i x^i,    p_B(x) = sum_j B_j x^(m-1-j).
///
/// The product polynomial p_A(x) p_B(x) has degree 2m-2 and its coefficient
/// of x^(m-1) is sum_i A_i B_i = AB, so any 2m-1 worker outputs recover AB.
///
/// The systematic variant encodes with the Lagrange basis over the first m
/// points instead, so workers 0..m-1 compute the plain block products
/// A_r B_r and their sum alone already yields AB.
struct MatDotSpec {
    PrimeField field;
    std::size_t m = 1;
    std::size_t workers = 1;
    std::vector<Fe> points;
    bool systematic = false;

    /// Validates m >= 1, workers >= 2m-1, |field| > workers, points distinct.
    /// Empty `points` selects the defaults x_r = r; workers == 0 selects
    /// exactly the threshold.
    static MatDotSpec create(const PrimeField& field, std::size_t m, std::size_t workers,
                             bool systematic = false, std::vector<Fe> points = {});

    std::size_t threshold() const { return 2 * m - 1; }
};

/// Recovery threshold 2m-1.
std::size_t matdot_threshold(std::size_t m);

struct MatDotShare {
    std::size_t worker_id = 0;
    Fe x = 0;
    FieldMatrix a_part;  // p_A(x), shape rows(A) x cols(A)/m after padding
    FieldMatrix b_part;  // p_B(x), shape rows(B)/m x cols(B) after padding
};

std::vector<MatDotShare> matdot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                       const MatDotSpec& spec);

WorkerProduct matdot_worker(const MatDotShare& share);

/// Interpolates the degree-(2m-2) product polynomial entrywise from the first
/// 2m-1 results (extras are ignored) and returns the coefficient of x^(m-1).
FieldMatrix matdot_decode(std::span<const WorkerProduct> results, const MatDotSpec& spec);

std::vector<MatDotShare> systematic_encode(const FieldMatrix& a, const FieldMatrix& b,
                                           const MatDotSpec& spec);

/// Fast path: when all m systematic results are present, returns their sum
/// without interpolating. Otherwise interpolates from the first 2m-1 results,
/// evaluates the product polynomial at the first m points and sums.
FieldMatrix systematic_decode(std::span<const WorkerProduct> results, const MatDotSpec& spec,
                              DecodeStats* stats = nullptr);

/// Exact symbol counts for square N x N inputs with m | N.
CostReport matdot_costs(const MatDotSpec& spec, std::size_t n);

}  // namespace codedmat
