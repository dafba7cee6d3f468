#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "codedmat/common.hpp"
#include "codedmat/matdot.hpp"
#include "codedmat/nmatrix.hpp"
#include "codedmat/polydot.hpp"

namespace codedmat {

/// Shifted-exponential service times with an independent per-worker failure
/// coin. Identical seeds reproduce identical timelines bit for bit.
struct StragglerModel {
    double shift = 1.0;
    double rate = 1.0;
    double fail_prob = 0.0;
    std::uint64_t seed = 0;
};

enum class DecodeStatus { success, threshold_failure };

struct WorkerTiming {
    std::size_t worker_id = 0;
    double finish_time = 0.0;  // +inf for failed workers
    bool failed = false;
};

struct RoundOutcome {
    std::vector<WorkerTiming> completion_order;  // successes by (time, id), failures last by id
    std::vector<std::size_t> used_workers;       // the first threshold() successes
    DecodeStatus status = DecodeStatus::threshold_failure;
    double wall_time = std::numeric_limits<double>::infinity();
    CostReport costs;
    FieldMatrix decoded;  // empty unless status == success
};

/// One fully-encoded round: inputs are encoded and every worker's product is
/// computed eagerly up front; completion times are purely simulated, so the
/// plan can be replayed under many models.
struct RoundPlan {
    std::string family;
    std::size_t workers = 0;
    std::size_t threshold = 0;
    std::vector<WorkerProduct> products;
    std::function<FieldMatrix(std::span<const WorkerProduct>)> decode;
    FieldMatrix oracle;
    CostReport costs;
};

RoundPlan make_matdot_plan(const FieldMatrix& a, const FieldMatrix& b, const MatDotSpec& spec);
RoundPlan make_polydot_plan(const FieldMatrix& a, const FieldMatrix& b, const PolyDotSpec& spec);
RoundPlan make_nmat_plan(std::span<const FieldMatrix> chain, const NMatSpec& spec);

/// Samples per-worker finish times, feeds the first threshold() successes to
/// the decoder in completion order, and checks the decoded product against
/// the oracle (a mismatch throws CorrectnessViolation). Workers listed in
/// forced_failures never complete regardless of the model.
RoundOutcome simulate_round(const RoundPlan& plan, const StragglerModel& model,
                            std::span<const std::size_t> forced_failures = {});

struct SweepStats {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double mean_wall_time = std::numeric_limits<double>::infinity();  // over successful trials
    CostReport costs;
};

/// Repeated rounds with per-trial seeds derived deterministically from
/// model.seed.
SweepStats sweep(const RoundPlan& plan, const StragglerModel& model, std::size_t trials);

std::vector<SweepStats> sweep(std::span<const RoundPlan> grid, const StragglerModel& model,
                              std::size_t trials);

/// Per-trial seed derivation used by sweep; exposed for reproducibility tests.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace codedmat
