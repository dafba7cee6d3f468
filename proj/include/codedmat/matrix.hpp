#pragma once

#include <cstddef>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "codedmat/field.hpp"

namespace codedmat {

/// Dense row-major matrix over GF(p). Values are immutable in practice: every
/// operation returns a fresh matrix.
class FieldMatrix {
  public:
    FieldMatrix() : field_(PrimeField::kDefaultPrime), rows_(0), cols_(0) {}

    FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols, std::vector<Fe> data);

    static FieldMatrix identity(const PrimeField& field, std::size_t n);
    static FieldMatrix random(const PrimeField& field, std::size_t rows, std::size_t cols,
                              std::mt19937_64& rng);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const Fe> data() const { return data_; }

    Fe operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Fe& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool operator==(const FieldMatrix&) const = default;

  private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Fe> data_;
};

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scale(const FieldMatrix& a, Fe c);

/// Exact schoolbook product over GF(p), parallelized over output rows.
FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);

/// Serial reference kernel; kept as the independent check for the parallel one.
FieldMatrix matmul_serial(const FieldMatrix& a, const FieldMatrix& b);

/// Scalar multiplications performed by the schoolbook product.
std::uint64_t matmul_mult_count(const FieldMatrix& a, const FieldMatrix& b);

/// Chain product using the serial kernel; used as the decode oracle.
FieldMatrix chain_product_serial(std::span<const FieldMatrix> chain);

// Splitting pads with zero rows/columns when the block count does not divide
// the dimension; concatenation is the inverse on the padded matrix and crop()
// strips the padding again.

std::size_t padded_dim(std::size_t dim, std::size_t multiple);

FieldMatrix pad_to_multiple(const FieldMatrix& a, std::size_t row_multiple, std::size_t col_multiple);
FieldMatrix crop(const FieldMatrix& a, std::size_t rows, std::size_t cols);

std::vector<FieldMatrix> split_columns(const FieldMatrix& a, std::size_t m);
std::vector<FieldMatrix> split_rows(const FieldMatrix& a, std::size_t m);
/// t x s grid of equally sized blocks, returned in row-major block order.
std::vector<FieldMatrix> split_grid(const FieldMatrix& a, std::size_t t, std::size_t s);

FieldMatrix concat_columns(std::span<const FieldMatrix> blocks);
FieldMatrix concat_rows(std::span<const FieldMatrix> blocks);
FieldMatrix concat_grid(std::span<const FieldMatrix> blocks, std::size_t t, std::size_t s);

// Text format: one header line "rows cols p", then `rows` lines of
// space-separated values in [0, p). Round trips bit-exactly.
void write_matrix(std::ostream& os, const FieldMatrix& a);
FieldMatrix read_matrix(std::istream& is);

}  // namespace codedmat
