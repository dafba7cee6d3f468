#pragma once

#include <span>
#include <utility>
#include <vector>

#include "codedmat/matrix.hpp"

namespace codedmat {

// Univariate polynomials over GF(p), with either scalar or matrix
// coefficients. Interpolation is exact: k samples at distinct points determine
// the unique degree-(k-1) coefficient vector. The weight matrix W maps samples
// to coefficients (coeffs = W * ys); it is the inverse of the Vandermonde
// matrix of the points and is computed once in O(k^2), then shared across all
// matrix entries so decoding costs O(k) per entry per coefficient.

/// Sum_i coeffs[i] * x^i.
Fe eval_poly(const PrimeField& field, std::span<const Fe> coeffs, Fe x);

/// Matrix-coefficient variant; all coefficients must share one shape.
FieldMatrix eval_poly(std::span<const FieldMatrix> coeffs, Fe x);

/// Values L_i(x) of the Lagrange basis over `nodes`, i = 0..nodes.size()-1.
std::vector<Fe> lagrange_basis_at(const PrimeField& field, std::span<const Fe> nodes, Fe x);

/// Row-major k x k matrix W with coeffs = W * ys for samples taken at xs.
std::vector<Fe> interpolation_weights(const PrimeField& field, std::span<const Fe> xs);

/// Coefficients of the unique polynomial of degree samples.size()-1 through
/// all (x, y) samples.
std::vector<Fe> interpolate(const PrimeField& field, std::span<const std::pair<Fe, Fe>> samples);

/// All k coefficient matrices of the matrix polynomial with values ys[i] at
/// xs[i]. Parallel over matrix entries; entries are independent, so the result
/// is identical to the serial variant.
std::vector<FieldMatrix> matrix_poly_coeffs(std::span<const Fe> xs, std::span<const FieldMatrix> ys);

/// Serial reference for matrix_poly_coeffs.
std::vector<FieldMatrix> matrix_poly_coeffs_serial(std::span<const Fe> xs,
                                                   std::span<const FieldMatrix> ys);

}  // namespace codedmat
