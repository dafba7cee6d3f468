#pragma once

#include <cstdint>

#include "codedmat/matrix.hpp"

namespace codedmat {

/// Output of one worker: the product of its encoded inputs, evaluated at the
/// worker's point.
struct WorkerProduct {
    std::size_t worker_id = 0;
    Fe x = 0;
    FieldMatrix c_part;
    std::uint64_t mult_count = 0;  // scalar multiplications spent by the worker
};

/// Decode-side instrumentation.
struct DecodeStats {
    bool fast_path = false;
    std::uint64_t entry_interpolations = 0;  // per-matrix-entry interpolation solves
};

/// Exact symbol counts for one round. fusion_in_symbols always equals
/// threshold * per_worker_out_symbols and master_out_symbols equals
/// workers * per_worker_in_symbols.
struct CostReport {
    std::uint64_t master_out_symbols = 0;
    std::uint64_t per_worker_in_symbols = 0;
    std::uint64_t per_worker_out_symbols = 0;
    std::uint64_t fusion_in_symbols = 0;
    std::uint64_t worker_mult_count = 0;

    bool operator==(const CostReport&) const = default;
};

/// Default evaluation points x_r = r for r = 1..count (distinct, nonzero).
std::vector<Fe> default_points(const PrimeField& field, std::size_t count);

/// Throws DuplicatePoint unless all points are pairwise distinct.
void require_distinct_points(std::span<const Fe> points);

}  // namespace codedmat
