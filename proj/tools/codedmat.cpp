// Command-line front end: threshold tables, single coded rounds, straggler
// sweeps, the communication/threshold trade-off table and the exponent-map
// verifiers.
//
// Exit codes: 0 success, 2 usage or invalid parameters, 3 decode below the
// recovery threshold, 4 internal invariant violation.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include "codedmat/simulator.hpp"

using namespace codedmat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitThresholdFailure = 3;
constexpr int kExitInvariantViolation = 4;

struct CommonOpts {
    std::string family = "matdot";
    std::size_t m = 0;
    std::size_t s = 0, t = 0;
    std::size_t n = 2;
    std::string rule = "paper";
    std::uint64_t prime = PrimeField::kDefaultPrime;
};

SubstitutionKind parse_rule(const std::string& rule) {
    return rule == "improved" ? SubstitutionKind::improved : SubstitutionKind::paper;
}

void add_family_flags(CLI::App* cmd, CommonOpts& o, bool with_family = true) {
    if (with_family)
        cmd->add_option("--family", o.family, "code family")
            ->check(CLI::IsMember({"matdot", "sysmatdot", "polydot", "nmat"}));
    cmd->add_option("--m", o.m, "blocks per matrix (storage fraction)");
    cmd->add_option("--s", o.s, "inner grid split");
    cmd->add_option("--t", o.t, "outer grid split");
    cmd->add_option("--n", o.n, "chain length for nmat");
    cmd->add_option("--rule", o.rule, "variable substitution rule")
        ->check(CLI::IsMember({"paper", "improved"}));
    cmd->add_option("--prime", o.prime, "field modulus (prime)");
}

// Resolves (s, t) for grid families: explicit flags win, otherwise --m with
// t defaulting to the matdot end of the range.
void resolve_grid(CommonOpts& o) {
    if (o.s == 0 && o.t == 0) {
        if (o.m == 0) throw InvalidParameter("need --m or --s/--t");
        o.s = o.m;
        o.t = 1;
    } else if (o.s == 0 || o.t == 0) {
        if (o.m == 0) throw InvalidParameter("need both of --s/--t, or --m");
        if (o.s == 0) o.s = o.m / o.t;
        if (o.t == 0) o.t = o.m / o.s;
    }
    if (o.m == 0) o.m = o.s * o.t;
    if (o.s * o.t != o.m)
        throw InvalidParameter("grid splits must satisfy s*t = m");
}

NMatSpec build_nmat_spec(const CommonOpts& o, std::size_t workers) {
    PrimeField field(o.prime);
    if (o.s != 0 || o.t != 0) {
        CommonOpts g = o;
        resolve_grid(g);
        return parse_rule(o.rule) == SubstitutionKind::improved
                   ? NMatSpec::improved(field, o.n, g.s, g.t, workers)
                   : NMatSpec::generalized(field, o.n, g.s, g.t, workers);
    }
    if (o.m == 0) throw InvalidParameter("need --m or --s/--t");
    return NMatSpec::basic(field, o.n, o.m, workers);
}

void print_threshold_header() {
    std::cout << "family,m,s,t,n,N,recovery_threshold,per_worker_in_symbols,per_worker_out_symbols,"
                 "fusion_total_symbols\n";
}

void print_threshold_row(const std::string& family, std::size_t m, std::size_t s, std::size_t t,
                         std::size_t n, std::size_t dim, std::size_t k, const CostReport& costs) {
    std::cout << family << ',' << m << ',' << s << ',' << t << ',' << n << ',' << dim << ',' << k
              << ',' << costs.per_worker_in_symbols << ',' << costs.per_worker_out_symbols << ','
              << costs.fusion_in_symbols << '\n';
}

int cmd_threshold(const CommonOpts& o, std::size_t dim) {
    PrimeField field(o.prime);
    print_threshold_header();
    if (o.family == "matdot" || o.family == "sysmatdot") {
        if (o.m == 0) throw InvalidParameter("need --m");
        std::size_t k = matdot_threshold(o.m);
        MatDotSpec spec = MatDotSpec::create(field, o.m, k, o.family == "sysmatdot");
        std::size_t d = dim ? dim : o.m;
        print_threshold_row(o.family, o.m, o.m, 1, 2, d, k, matdot_costs(spec, d));
        return kExitOk;
    }
    if (o.family == "polydot") {
        SubstitutionKind kind = parse_rule(o.rule);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (o.s != 0 || o.t != 0) {
            CommonOpts g = o;
            resolve_grid(g);
            pairs.push_back({g.s, g.t});
        } else {
            if (o.m == 0) throw InvalidParameter("need --m or --s/--t");
            for (std::size_t t = 1; t <= o.m; ++t)
                if (o.m % t == 0) pairs.push_back({o.m / t, t});
        }
        for (auto [s, t] : pairs) {
            std::size_t k = polydot_threshold(s, t, SubstitutionRule::make(kind, s, t));
            PolyDotSpec spec = PolyDotSpec::create(field, s, t, k, kind);
            std::size_t d = dim ? dim : s * t;
            print_threshold_row("polydot", s * t, s, t, 2, d, k, polydot_costs(spec, d));
        }
        return kExitOk;
    }
    NMatSpec spec = build_nmat_spec(o, 0);  // workers = threshold
    std::size_t d = dim ? dim : spec.m();
    print_threshold_row("nmat", spec.m(), spec.s, spec.t, spec.n, d, spec.threshold(),
                        nmat_costs(spec, d));
    return kExitOk;
}

struct RunInputs {
    std::vector<FieldMatrix> matrices;  // two for the grid families, n for chains
};

RunInputs load_inputs(const CommonOpts& o, std::size_t random_dim,
                      const std::vector<std::string>& files, std::uint64_t seed,
                      std::size_t chain_len) {
    RunInputs in;
    PrimeField field(o.prime);
    if (random_dim > 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < chain_len; ++i)
            in.matrices.push_back(FieldMatrix::random(field, random_dim, random_dim, rng));
        return in;
    }
    if (files.size() != chain_len)
        throw InvalidParameter("need --random N or exactly " + std::to_string(chain_len) +
                               " input matrix files");
    for (const std::string& path : files) {
        std::ifstream is(path);
        if (!is.good()) throw IoError("cannot open " + path);
        in.matrices.push_back(read_matrix(is));
        if (in.matrices.back().field().modulus() != o.prime)
            throw InvalidParameter("matrix file " + path + " uses a different prime");
    }
    return in;
}

RoundPlan build_plan(const CommonOpts& o, std::size_t workers, const RunInputs& in) {
    PrimeField field(o.prime);
    if (o.family == "matdot" || o.family == "sysmatdot") {
        if (o.m == 0) throw InvalidParameter("need --m");
        return make_matdot_plan(in.matrices[0], in.matrices[1],
                                MatDotSpec::create(field, o.m, workers, o.family == "sysmatdot"));
    }
    if (o.family == "polydot") {
        CommonOpts g = o;
        resolve_grid(g);
        return make_polydot_plan(
            in.matrices[0], in.matrices[1],
            PolyDotSpec::create(field, g.s, g.t, workers, parse_rule(o.rule)));
    }
    return make_nmat_plan(in.matrices, build_nmat_spec(o, workers));
}

void print_outcome(const RoundPlan& plan, const RoundOutcome& outcome) {
    std::cout << std::fixed << std::setprecision(6);
    std::cout << "family=" << plan.family << " workers=" << plan.workers
              << " threshold=" << plan.threshold << '\n';
    std::cout << "completion_order:";
    for (const WorkerTiming& t : outcome.completion_order) {
        std::cout << ' ' << t.worker_id << ':';
        if (t.failed)
            std::cout << "failed";
        else
            std::cout << t.finish_time;
    }
    std::cout << "\nused:";
    for (std::size_t id : outcome.used_workers) std::cout << ' ' << id;
    std::cout << "\nstatus: "
              << (outcome.status == DecodeStatus::success ? "success" : "threshold_failure") << '\n';
    std::cout << "wall_time: " << outcome.wall_time << '\n';
    const CostReport& c = outcome.costs;
    std::cout << "costs: master_out=" << c.master_out_symbols
              << " per_worker_in=" << c.per_worker_in_symbols
              << " per_worker_out=" << c.per_worker_out_symbols
              << " fusion_in=" << c.fusion_in_symbols << " worker_mults=" << c.worker_mult_count
              << '\n';
}

int cmd_run(const CommonOpts& o, std::size_t workers, std::size_t random_dim,
            const std::vector<std::string>& files, const StragglerModel& model,
            const std::vector<std::size_t>& kills, const std::string& out_path) {
    std::size_t chain_len = o.family == "nmat" ? o.n : 2;
    RunInputs in = load_inputs(o, random_dim, files, model.seed, chain_len);
    RoundPlan plan = build_plan(o, workers, in);
    RoundOutcome outcome = simulate_round(plan, model, kills);
    print_outcome(plan, outcome);
    if (outcome.status != DecodeStatus::success) {
        std::cout << "error: threshold_failure needed=" << plan.threshold << " got="
                  << outcome.used_workers.size() << '\n';
        return kExitThresholdFailure;
    }
    std::cout << "decode verified against the direct product\n";
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os.good()) throw IoError("cannot write " + out_path);
        write_matrix(os, outcome.decoded);
        std::cout << "wrote " << out_path << '\n';
    }
    return kExitOk;
}

int cmd_simulate(const CommonOpts& o, std::size_t workers, std::size_t workers_max,
                 std::size_t random_dim, const StragglerModel& model, std::size_t trials) {
    if (random_dim == 0) throw InvalidParameter("simulate needs --random N");
    if (workers_max < workers) workers_max = workers;
    std::cout << "family,m,s,t,n,P,k,trials,successes,success_rate,master_out_symbols,"
                 "per_worker_in_symbols,per_worker_out_symbols,fusion_in_symbols,worker_mult_count\n";
    std::size_t chain_len = o.family == "nmat" ? o.n : 2;
    for (std::size_t p = workers; p <= workers_max; ++p) {
        RunInputs in = load_inputs(o, random_dim, {}, model.seed, chain_len);
        RoundPlan plan = build_plan(o, p, in);
        SweepStats stats = sweep(plan, model, trials);
        CommonOpts g = o;
        if (o.family == "polydot") resolve_grid(g);
        std::size_t s = o.family == "polydot" ? g.s : (o.family == "nmat" ? 0 : o.m);
        std::size_t t = o.family == "polydot" ? g.t : (o.family == "nmat" ? 0 : 1);
        if (o.family == "nmat") {
            NMatSpec spec = build_nmat_spec(o, p);
            s = spec.s;
            t = spec.t;
        }
        std::cout << o.family << ',' << (o.family == "nmat" ? s * t : (o.m ? o.m : s * t)) << ','
                  << s << ',' << t << ',' << chain_len << ',' << p << ',' << plan.threshold << ','
                  << stats.trials << ',' << stats.successes << ',' << std::fixed
                  << std::setprecision(6) << stats.success_rate << ','
                  << stats.costs.master_out_symbols << ',' << stats.costs.per_worker_in_symbols
                  << ',' << stats.costs.per_worker_out_symbols << ','
                  << stats.costs.fusion_in_symbols << ',' << stats.costs.worker_mult_count << '\n';
    }
    return kExitOk;
}

int cmd_tradeoff(std::size_t m, std::size_t dim, SubstitutionKind kind, const std::string& out) {
    if (m == 0) throw InvalidParameter("need --m");
    std::vector<TradeoffPoint> table = tradeoff_table(m, dim ? dim : m, kind);
    if (out.empty()) {
        write_tradeoff_csv(std::cout, table);
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os.good()) throw IoError("cannot write " + out);
        write_tradeoff_csv(os, table);
    }
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    if (o.family == "polydot" || o.family == "matdot" || o.family == "sysmatdot") {
        CommonOpts g = o;
        resolve_grid(g);
        SubstitutionRule rule = SubstitutionRule::make(parse_rule(o.rule), g.s, g.t);
        ExponentMapReport rep = verify_exponent_map(g.s, g.t, rule);
        std::cout << "s=" << rep.s << " t=" << rep.t << " rule=" << o.rule
                  << " threshold=" << rep.threshold << '\n';
        if (rep.bijection_checked)
            std::cout << "index map bijective: " << (rep.bijective ? "yes" : "NO") << '\n';
        std::cout << "wanted-exponent collisions: " << rep.collisions.size() << '\n';
        for (const std::string& c : rep.collisions) std::cout << "  " << c << '\n';
        return rep.ok() ? kExitOk : kExitInvariantViolation;
    }
    NMatSpec spec = build_nmat_spec(o, 0);  // workers = threshold
    IsolationReport rep = verify_coefficient_isolation(spec);
    std::cout << "n=" << spec.n << " s=" << spec.s << " t=" << spec.t
              << " variant=" << (spec.variant == NMatVariant::basic
                                     ? "basic"
                                     : spec.variant == NMatVariant::generalized ? "generalized"
                                                                                : "improved")
              << " threshold=" << spec.threshold() << '\n';
    std::cout << "tuples checked: " << rep.tuples_checked << '\n';
    std::cout << "violations: " << rep.violations.size() << '\n';
    for (const std::string& v : rep.violations) std::cout << "  " << v << '\n';
    return rep.ok() ? kExitOk : kExitInvariantViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"straggler-tolerant coded matrix multiplication over GF(p)"};
    app.require_subcommand(1);

    CommonOpts topts;
    std::size_t tdim = 0;
    CLI::App* threshold = app.add_subcommand("threshold", "recovery thresholds and symbol counts");
    add_family_flags(threshold, topts);
    threshold->add_option("--N", tdim, "matrix dimension for symbol counts");

    CommonOpts ropts;
    std::size_t rworkers = 0, rrandom = 0;
    std::vector<std::string> rfiles;
    std::vector<std::size_t> rkills;
    StragglerModel rmodel;
    std::string rout;
    CLI::App* run = app.add_subcommand("run", "encode, simulate one round, decode, verify");
    add_family_flags(run, ropts);
    run->add_option("--P", rworkers, "worker count")->required();
    run->add_option("--random", rrandom, "use random square N x N inputs");
    run->add_option("--a", rfiles, "input matrix files (repeat: --a A.txt --a B.txt ...)");
    run->add_option("--kill", rkills, "worker ids forced to straggle");
    run->add_option("--seed", rmodel.seed, "simulation and data seed");
    run->add_option("--shift", rmodel.shift, "minimum service time");
    run->add_option("--rate", rmodel.rate, "exponential tail rate");
    run->add_option("--fail-prob", rmodel.fail_prob, "worker failure probability");
    run->add_option("--out", rout, "write the decoded matrix here");

    CommonOpts sopts;
    std::size_t sworkers = 0, sworkers_max = 0, srandom = 0, strials = 100;
    StragglerModel smodel;
    CLI::App* simulate = app.add_subcommand("simulate", "seeded straggler sweep, CSV output");
    add_family_flags(simulate, sopts);
    simulate->add_option("--P", sworkers, "worker count (range start)")->required();
    simulate->add_option("--P-max", sworkers_max, "worker count range end");
    simulate->add_option("--random", srandom, "random square N x N inputs")->required();
    simulate->add_option("--trials", strials, "trials per grid point");
    simulate->add_option("--seed", smodel.seed, "base seed");
    simulate->add_option("--shift", smodel.shift, "minimum service time");
    simulate->add_option("--rate", smodel.rate, "exponential tail rate");
    simulate->add_option("--fail-prob", smodel.fail_prob, "worker failure probability");

    std::size_t tom = 0, todim = 0;
    std::string torule = "paper", toout;
    CLI::App* tradeoff = app.add_subcommand("tradeoff", "communication vs threshold table");
    tradeoff->add_option("--m", tom, "storage fraction")->required();
    tradeoff->add_option("--N", todim, "matrix dimension (default m)");
    tradeoff->add_option("--rule", torule, "substitution rule")
        ->check(CLI::IsMember({"paper", "improved"}));
    tradeoff->add_option("--out", toout, "write CSV here instead of stdout");

    CommonOpts vopts;
    CLI::App* verify = app.add_subcommand("verify", "exponent-map and coefficient-isolation checks");
    add_family_flags(verify, vopts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (threshold->parsed()) return cmd_threshold(topts, tdim);
        if (run->parsed()) return cmd_run(ropts, rworkers, rrandom, rfiles, rmodel, rkills, rout);
        if (simulate->parsed())
            return cmd_simulate(sopts, sworkers, sworkers_max, srandom, smodel, strials);
        if (tradeoff->parsed()) return cmd_tradeoff(tom, todim, parse_rule(torule), toout);
        if (verify->parsed()) return cmd_verify(vopts);
    } catch (const CorrectnessViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return kExitInvariantViolation;
    } catch (const RecoveryThresholdNotMet& e) {
        std::cerr << "error: threshold_failure needed=" << e.needed << " got=" << e.got << '\n';
        return kExitThresholdFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
