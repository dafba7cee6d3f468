#include "codedmat/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace codedmat {

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53 uniform bits; [0, 1).
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CostReport costs_from_products(std::size_t workers, std::size_t threshold,
                               std::uint64_t per_worker_in, const WorkerProduct& sample) {
    CostReport costs;
    costs.per_worker_in_symbols = per_worker_in;
    costs.per_worker_out_symbols = sample.c_part.rows() * sample.c_part.cols();
    costs.master_out_symbols = workers * costs.per_worker_in_symbols;
    costs.fusion_in_symbols = threshold * costs.per_worker_out_symbols;
    costs.worker_mult_count = sample.mult_count;
    return costs;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 over seed + trial.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RoundPlan make_matdot_plan(const FieldMatrix& a, const FieldMatrix& b, const MatDotSpec& spec) {
    RoundPlan plan;
    plan.family = spec.systematic ? "sysmatdot" : "matdot";
    plan.workers = spec.workers;
    plan.threshold = spec.threshold();
    std::vector<MatDotShare> shares =
        spec.systematic ? systematic_encode(a, b, spec) : matdot_encode(a, b, spec);
    plan.products.reserve(shares.size());
    for (const MatDotShare& s : shares) plan.products.push_back(matdot_worker(s));
    std::uint64_t in_symbols = shares[0].a_part.rows() * shares[0].a_part.cols() +
                               shares[0].b_part.rows() * shares[0].b_part.cols();
    plan.costs = costs_from_products(spec.workers, plan.threshold, in_symbols, plan.products[0]);
    plan.oracle = matmul_serial(a, b);
    if (spec.systematic) {
        plan.decode = [spec](std::span<const WorkerProduct> r) { return systematic_decode(r, spec); };
    } else {
        plan.decode = [spec](std::span<const WorkerProduct> r) { return matdot_decode(r, spec); };
    }
    return plan;
}

RoundPlan make_polydot_plan(const FieldMatrix& a, const FieldMatrix& b, const PolyDotSpec& spec) {
    RoundPlan plan;
    plan.family = "polydot";
    plan.workers = spec.workers;
    plan.threshold = spec.threshold();
    std::vector<PolyDotShare> shares = polydot_encode(a, b, spec);
    plan.products.reserve(shares.size());
    for (const PolyDotShare& s : shares) plan.products.push_back(polydot_worker(s));
    std::uint64_t in_symbols = shares[0].a_part.rows() * shares[0].a_part.cols() +
                               shares[0].b_part.rows() * shares[0].b_part.cols();
    plan.costs = costs_from_products(spec.workers, plan.threshold, in_symbols, plan.products[0]);
    plan.oracle = matmul_serial(a, b);
    std::size_t out_rows = a.rows(), out_cols = b.cols();
    plan.decode = [spec, out_rows, out_cols](std::span<const WorkerProduct> r) {
        return polydot_decode(r, spec, out_rows, out_cols);
    };
    return plan;
}

RoundPlan make_nmat_plan(std::span<const FieldMatrix> chain, const NMatSpec& spec) {
    RoundPlan plan;
    plan.family = "nmat";
    plan.workers = spec.workers;
    plan.threshold = spec.threshold();
    std::vector<NMatShare> shares = nmat_encode(chain, spec);
    plan.products.reserve(shares.size());
    for (const NMatShare& s : shares) plan.products.push_back(nmat_worker(s, spec));
    std::uint64_t in_symbols = 0;
    for (const FieldMatrix& part : shares[0].parts) in_symbols += part.rows() * part.cols();
    plan.costs = costs_from_products(spec.workers, plan.threshold, in_symbols, plan.products[0]);
    plan.oracle = chain_product_serial(chain);
    std::size_t out_rows = chain.front().rows(), out_cols = chain.back().cols();
    plan.decode = [spec, out_rows, out_cols](std::span<const WorkerProduct> r) {
        return nmat_decode(r, spec, out_rows, out_cols);
    };
    return plan;
}

RoundOutcome simulate_round(const RoundPlan& plan, const StragglerModel& model,
                            std::span<const std::size_t> forced_failures) {
    if (model.shift < 0 || model.rate <= 0 || model.fail_prob < 0 || model.fail_prob > 1)
        throw InvalidParameter("straggler model needs shift >= 0, rate > 0, fail_prob in [0,1]");
    std::set<std::size_t> forced(forced_failures.begin(), forced_failures.end());
    for (std::size_t id : forced)
        if (id >= plan.workers) throw InvalidParameter("forced failure id out of range");

    std::mt19937_64 rng(model.seed);
    std::vector<WorkerTiming> timings(plan.workers);
    for (std::size_t w = 0; w < plan.workers; ++w) {
        double u_fail = uniform01(rng);
        double u_service = uniform01(rng);
        bool failed = forced.contains(w) || u_fail < model.fail_prob;
        double finish = model.shift - std::log(1.0 - u_service) / model.rate;
        timings[w] = {w, failed ? std::numeric_limits<double>::infinity() : finish, failed};
    }

    RoundOutcome outcome;
    outcome.completion_order = timings;
    std::stable_sort(outcome.completion_order.begin(), outcome.completion_order.end(),
                     [](const WorkerTiming& a, const WorkerTiming& b) {
                         if (a.failed != b.failed) return !a.failed;
                         if (a.finish_time != b.finish_time) return a.finish_time < b.finish_time;
                         return a.worker_id < b.worker_id;
                     });
    outcome.costs = plan.costs;

    std::size_t successes = 0;
    for (const WorkerTiming& t : outcome.completion_order)
        if (!t.failed) ++successes;

    if (successes < plan.threshold) {
        outcome.status = DecodeStatus::threshold_failure;
        return outcome;
    }

    std::vector<WorkerProduct> used;
    used.reserve(plan.threshold);
    for (const WorkerTiming& t : outcome.completion_order) {
        if (used.size() == plan.threshold) break;
        outcome.used_workers.push_back(t.worker_id);
        used.push_back(plan.products[t.worker_id]);
        outcome.wall_time = t.finish_time;
    }

    outcome.decoded = plan.decode(used);
    outcome.status = DecodeStatus::success;
    if (outcome.decoded != plan.oracle)
        throw CorrectnessViolation("decoded product disagrees with the reference product");
    return outcome;
}

SweepStats sweep(const RoundPlan& plan, const StragglerModel& model, std::size_t trials) {
    if (trials < 1) throw InvalidParameter("trials must be >= 1");
    SweepStats stats;
    stats.trials = trials;
    stats.costs = plan.costs;
    double total_wall = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        StragglerModel m = model;
        m.seed = derive_seed(model.seed, trial);
        RoundOutcome outcome = simulate_round(plan, m);
        if (outcome.status == DecodeStatus::success) {
            ++stats.successes;
            total_wall += outcome.wall_time;
        }
    }
    stats.success_rate = static_cast<double>(stats.successes) / static_cast<double>(trials);
    if (stats.successes > 0) stats.mean_wall_time = total_wall / static_cast<double>(stats.successes);
    return stats;
}

std::vector<SweepStats> sweep(std::span<const RoundPlan> grid, const StragglerModel& model,
                              std::size_t trials) {
    std::vector<SweepStats> all;
    all.reserve(grid.size());
    for (const RoundPlan& plan : grid) all.push_back(sweep(plan, model, trials));
    return all;
}

}  // namespace codedmat
