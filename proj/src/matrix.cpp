#include "codedmat/matrix.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace codedmat {

namespace {

void require_same_field(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.field() != b.field()) throw ShapeError("matrices belong to different fields");
}

void require_same_shape(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

}  // namespace

FieldMatrix::FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols, std::vector<Fe> data)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw ShapeError("data length does not match rows*cols");
    for (Fe v : data_)
        if (v >= field_.modulus()) throw InvalidParameter("matrix entry out of field range");
}

FieldMatrix FieldMatrix::identity(const PrimeField& field, std::size_t n) {
    FieldMatrix r(field, n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
    return r;
}

FieldMatrix FieldMatrix::random(const PrimeField& field, std::size_t rows, std::size_t cols,
                                std::mt19937_64& rng) {
    FieldMatrix r(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r(i, j) = field.reduce(rng());
    return r;
}

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_shape(a, b);
    FieldMatrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a.field().add(a(i, j), b(i, j));
    return r;
}

FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_shape(a, b);
    FieldMatrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a.field().sub(a(i, j), b(i, j));
    return r;
}

FieldMatrix scale(const FieldMatrix& a, Fe c) {
    FieldMatrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a.field().mul(a(i, j), c);
    return r;
}

namespace {

// Shared inner kernel; one output row at a time so the parallel variant can
// hand out disjoint rows and stay bit-deterministic.
void matmul_row(const FieldMatrix& a, const FieldMatrix& b, FieldMatrix& out, std::size_t i) {
    const PrimeField& f = a.field();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Fe acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
        out(i, j) = acc;
    }
}

void require_multipliable(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw ShapeError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
}

}  // namespace

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
    require_multipliable(a, b);
    FieldMatrix r(a.field(), a.rows(), b.cols());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, r, i);
    return r;
}

FieldMatrix matmul_serial(const FieldMatrix& a, const FieldMatrix& b) {
    require_multipliable(a, b);
    FieldMatrix r(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, r, i);
    return r;
}

std::uint64_t matmul_mult_count(const FieldMatrix& a, const FieldMatrix& b) {
    return static_cast<std::uint64_t>(a.rows()) * a.cols() * b.cols();
}

FieldMatrix chain_product_serial(std::span<const FieldMatrix> chain) {
    if (chain.empty()) throw EmptyInput("empty matrix chain");
    FieldMatrix acc = chain[0];
    for (std::size_t i = 1; i < chain.size(); ++i) acc = matmul_serial(acc, chain[i]);
    return acc;
}

std::size_t padded_dim(std::size_t dim, std::size_t multiple) {
    if (multiple == 0) throw InvalidParameter("block count must be positive");
    return (dim + multiple - 1) / multiple * multiple;
}

FieldMatrix pad_to_multiple(const FieldMatrix& a, std::size_t row_multiple, std::size_t col_multiple) {
    std::size_t pr = padded_dim(a.rows(), row_multiple);
    std::size_t pc = padded_dim(a.cols(), col_multiple);
    if (pr == a.rows() && pc == a.cols()) return a;
    FieldMatrix r(a.field(), pr, pc);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    return r;
}

FieldMatrix crop(const FieldMatrix& a, std::size_t rows, std::size_t cols) {
    if (rows > a.rows() || cols > a.cols()) throw ShapeError("crop larger than matrix");
    if (rows == a.rows() && cols == a.cols()) return a;
    FieldMatrix r(a.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r(i, j) = a(i, j);
    return r;
}

std::vector<FieldMatrix> split_grid(const FieldMatrix& a, std::size_t t, std::size_t s) {
    if (t == 0 || s == 0) throw InvalidParameter("block counts must be positive");
    FieldMatrix p = pad_to_multiple(a, t, s);
    std::size_t br = p.rows() / t, bc = p.cols() / s;
    std::vector<FieldMatrix> blocks;
    blocks.reserve(t * s);
    for (std::size_t bi = 0; bi < t; ++bi) {
        for (std::size_t bj = 0; bj < s; ++bj) {
            FieldMatrix blk(a.field(), br, bc);
            for (std::size_t i = 0; i < br; ++i)
                for (std::size_t j = 0; j < bc; ++j) blk(i, j) = p(bi * br + i, bj * bc + j);
            blocks.push_back(std::move(blk));
        }
    }
    return blocks;
}

std::vector<FieldMatrix> split_columns(const FieldMatrix& a, std::size_t m) {
    return split_grid(a, 1, m);
}

std::vector<FieldMatrix> split_rows(const FieldMatrix& a, std::size_t m) {
    return split_grid(a, m, 1);
}

FieldMatrix concat_grid(std::span<const FieldMatrix> blocks, std::size_t t, std::size_t s) {
    if (blocks.size() != t * s || blocks.empty()) throw ShapeError("block count does not match grid");
    std::size_t br = blocks[0].rows(), bc = blocks[0].cols();
    for (const FieldMatrix& b : blocks)
        if (b.rows() != br || b.cols() != bc || b.field() != blocks[0].field())
            throw ShapeError("inconsistent block shapes");
    FieldMatrix r(blocks[0].field(), t * br, s * bc);
    for (std::size_t bi = 0; bi < t; ++bi)
        for (std::size_t bj = 0; bj < s; ++bj) {
            const FieldMatrix& blk = blocks[bi * s + bj];
            for (std::size_t i = 0; i < br; ++i)
                for (std::size_t j = 0; j < bc; ++j) r(bi * br + i, bj * bc + j) = blk(i, j);
        }
    return r;
}

FieldMatrix concat_columns(std::span<const FieldMatrix> blocks) {
    return concat_grid(blocks, 1, blocks.size());
}

FieldMatrix concat_rows(std::span<const FieldMatrix> blocks) {
    return concat_grid(blocks, blocks.size(), 1);
}

void write_matrix(std::ostream& os, const FieldMatrix& a) {
    os << a.rows() << ' ' << a.cols() << ' ' << a.field().modulus() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            os << a(i, j);
        }
        os << '\n';
    }
}

FieldMatrix read_matrix(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    std::uint64_t p = 0;
    if (!(is >> rows >> cols >> p)) throw IoError("bad matrix header, expected: rows cols p");
    PrimeField field(p);
    FieldMatrix r(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t v;
            if (!(is >> v)) throw IoError("truncated matrix body");
            if (v >= p) throw IoError("matrix entry " + std::to_string(v) + " not in [0, p)");
            r(i, j) = v;
        }
    return r;
}

}  // namespace codedmat
