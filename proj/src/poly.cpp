#include "codedmat/poly.hpp"

#include <algorithm>

namespace codedmat {

namespace {

void require_distinct(std::span<const Fe> xs) {
    std::vector<Fe> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DuplicatePoint();
}

}  // namespace

Fe eval_poly(const PrimeField& field, std::span<const Fe> coeffs, Fe x) {
    if (coeffs.empty()) throw EmptyInput("polynomial with no coefficients");
    Fe acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), coeffs[i]);
    return acc;
}

FieldMatrix eval_poly(std::span<const FieldMatrix> coeffs, Fe x) {
    if (coeffs.empty()) throw EmptyInput("polynomial with no coefficients");
    FieldMatrix acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = add(scale(acc, x), coeffs[i]);
    return acc;
}

std::vector<Fe> lagrange_basis_at(const PrimeField& field, std::span<const Fe> nodes, Fe x) {
    if (nodes.empty()) throw EmptyInput("no interpolation nodes");
    require_distinct(nodes);
    std::vector<Fe> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Fe num = 1, den = 1;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            num = field.mul(num, field.sub(x, nodes[j]));
            den = field.mul(den, field.sub(nodes[i], nodes[j]));
        }
        values[i] = field.mul(num, field.inv(den));
    }
    return values;
}

std::vector<Fe> interpolation_weights(const PrimeField& field, std::span<const Fe> xs) {
    if (xs.empty()) throw EmptyInput("no interpolation points");
    require_distinct(xs);
    const std::size_t k = xs.size();

    // Master polynomial M(x) = prod_j (x - x_j), degree k, monic. Built
    // incrementally; the top-down sweep only reads indices not yet updated.
    std::vector<Fe> master(k + 1, 0);
    master[0] = 1;
    for (std::size_t j = 0; j < k; ++j) {
        Fe c = field.neg(xs[j]);
        for (std::size_t d = j + 2; d-- > 0;) {
            Fe v = field.mul(master[d], c);
            if (d > 0) v = field.add(v, master[d - 1]);
            master[d] = v;
        }
    }

    std::vector<Fe> weights(k * k, 0);
    std::vector<Fe> quotient(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // Synthetic division: q_i(x) = M(x) / (x - x_i), coefficients of the
        // Lagrange numerator for node i.
        quotient[k - 1] = master[k];
        for (std::size_t d = k - 1; d-- > 0;) quotient[d] = field.add(master[d + 1], field.mul(xs[i], quotient[d + 1]));
        // q_i(x_i) = prod_{j != i} (x_i - x_j)
        Fe scale = field.inv(eval_poly(field, quotient, xs[i]));
        // Column i of W holds the coefficients of L_i = q_i / q_i(x_i).
        for (std::size_t d = 0; d < k; ++d) weights[d * k + i] = field.mul(quotient[d], scale);
    }
    return weights;
}

std::vector<Fe> interpolate(const PrimeField& field, std::span<const std::pair<Fe, Fe>> samples) {
    if (samples.empty()) throw EmptyInput("no samples to interpolate");
    std::vector<Fe> xs(samples.size()), ys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        xs[i] = samples[i].first;
        ys[i] = samples[i].second;
    }
    std::vector<Fe> w = interpolation_weights(field, xs);
    const std::size_t k = samples.size();
    std::vector<Fe> coeffs(k, 0);
    for (std::size_t d = 0; d < k; ++d) {
        Fe acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc = field.add(acc, field.mul(w[d * k + j], ys[j]));
        coeffs[d] = acc;
    }
    return coeffs;
}

namespace {

std::vector<FieldMatrix> matrix_poly_coeffs_impl(std::span<const Fe> xs, std::span<const FieldMatrix> ys,
                                                 bool parallel) {
    if (ys.empty()) throw EmptyInput("no sample matrices");
    if (xs.size() != ys.size()) throw ShapeError("point/sample count mismatch");
    const PrimeField field = ys[0].field();
    const std::size_t rows = ys[0].rows(), cols = ys[0].cols();
    for (const FieldMatrix& y : ys)
        if (y.rows() != rows || y.cols() != cols || y.field() != field)
            throw ShapeError("sample matrices disagree in shape");

    std::vector<Fe> w = interpolation_weights(field, xs);
    const std::size_t k = xs.size();
    std::vector<FieldMatrix> coeffs(k, FieldMatrix(field, rows, cols));
    const std::size_t entries = rows * cols;

    auto solve_entry = [&](std::size_t e) {
        std::size_t r = e / cols, c = e % cols;
        for (std::size_t d = 0; d < k; ++d) {
            Fe acc = 0;
            for (std::size_t j = 0; j < k; ++j) acc = field.add(acc, field.mul(w[d * k + j], ys[j](r, c)));
            coeffs[d](r, c) = acc;
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t e = 0; e < entries; ++e) solve_entry(e);
    } else {
        for (std::size_t e = 0; e < entries; ++e) solve_entry(e);
    }
    return coeffs;
}

}  // namespace

std::vector<FieldMatrix> matrix_poly_coeffs(std::span<const Fe> xs, std::span<const FieldMatrix> ys) {
    return matrix_poly_coeffs_impl(xs, ys, true);
}

std::vector<FieldMatrix> matrix_poly_coeffs_serial(std::span<const Fe> xs,
                                                   std::span<const FieldMatrix> ys) {
    return matrix_poly_coeffs_impl(xs, ys, false);
}

}  // namespace codedmat
