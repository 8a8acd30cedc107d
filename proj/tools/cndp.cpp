// Command-line front end for the network design toolkit.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cndp/approx.hpp"
#include "cndp/equilibrium.hpp"
#include "cndp/errors.hpp"
#include "cndp/gadgets.hpp"
#include "cndp/json_io.hpp"
#include "cndp/model.hpp"
#include "cndp/oracle.hpp"
#include "cndp/random_instances.hpp"
#include "cndp/relaxation.hpp"

using nlohmann::json;

namespace {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("CNDP_LOG");
        if (!env) {
            return LogLevel::error;
        }
        std::string s = env;
        if (s == "debug") {
            return LogLevel::debug;
        }
        if (s == "info") {
            return LogLevel::info;
        }
        return LogLevel::error;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) {
        std::cerr << "[info] " << msg << "\n";
    }
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) {
        std::cerr << "[debug] " << msg << "\n";
    }
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw cndp::DomainError("cannot write " + out_path);
    }
    out << text;
    log_info("wrote " + out_path);
}

cndp::FunctionClass parse_class(const std::string& spec) {
    if (spec == "concave") {
        return cndp::FunctionClass::concave();
    }
    if (spec == "convex") {
        return cndp::FunctionClass::convex_general();
    }
    if (spec.rfind("poly:", 0) == 0) {
        int degree = 0;
        try {
            degree = std::stoi(spec.substr(5));
        } catch (const std::exception&) {
            throw cndp::ParseError("bad class spec: " + spec);
        }
        if (degree < 0) {
            throw cndp::ParseError("polynomial degree must be non-negative");
        }
        return cndp::FunctionClass::polynomial(degree);
    }
    throw cndp::ParseError("unknown class spec: " + spec + " (want poly:<d>, concave, convex)");
}

struct CommonArgs {
    std::string instance_path;
    std::string out_path;
};

cndp::Instance load_instance(const std::string& path) {
    log_debug("loading instance from " + path);
    return cndp::instance_from_json(cndp::parse_json_file(path));
}

json wardrop_report(const cndp::WardropResult& eq) {
    return json{{"gap", eq.gap}, {"iterations", eq.iterations}, {"converged", eq.converged}};
}

int run(int argc, char** argv) {
    CLI::App app{"continuous network design solver toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "approximation algorithms with certificates");
    CommonArgs solve_args;
    std::string algorithm = "best2";
    std::string class_spec;
    bool dispatch_only = false;
    double solve_tol = 1e-8;
    solve->add_option("--instance", solve_args.instance_path, "instance JSON")->required();
    solve->add_option("--out", solve_args.out_path, "output path (default stdout)");
    solve->add_option("--algorithm", algorithm, "bte|su|best2|budgeted")
        ->check(CLI::IsMember({"bte", "su", "best2", "budgeted"}));
    solve->add_flag("--dispatch-only", dispatch_only,
                    "best2: pick one algorithm by the p threshold instead of running both");
    solve->add_option("--class", class_spec, "latency class: poly:<d>|concave|convex");
    solve->add_option("--tol", solve_tol, "equilibrium gap tolerance");

    // relax / single-sink
    auto* relax = app.add_subcommand("relax", "capacity relaxation (lower bound)");
    CommonArgs relax_args;
    relax->add_option("--instance", relax_args.instance_path, "instance JSON")->required();
    relax->add_option("--out", relax_args.out_path, "output path");

    auto* single_sink = app.add_subcommand("single-sink", "exact solve for a common sink");
    CommonArgs ss_args;
    single_sink->add_option("--instance", ss_args.instance_path, "instance JSON")->required();
    single_sink->add_option("--out", ss_args.out_path, "output path");

    // equilibrium
    auto* equilibrium = app.add_subcommand("equilibrium", "Wardrop equilibrium at fixed capacities");
    CommonArgs eq_args;
    std::string eq_caps_path;
    double eq_tol = 1e-8;
    equilibrium->add_option("--instance", eq_args.instance_path, "instance JSON")->required();
    equilibrium->add_option("--caps", eq_caps_path, "capacities JSON")->required();
    equilibrium->add_option("--tol", eq_tol, "relative equilibrium gap tolerance");
    equilibrium->add_option("--out", eq_args.out_path, "output path");

    // verify
    auto* verify = app.add_subcommand("verify", "recompute costs and equilibrium gap");
    CommonArgs verify_args;
    std::string verify_caps_path, verify_flow_path;
    verify->add_option("--instance", verify_args.instance_path, "instance JSON")->required();
    verify->add_option("--caps", verify_caps_path, "capacities JSON")->required();
    verify->add_option("--flow", verify_flow_path, "flow JSON")->required();
    verify->add_option("--out", verify_args.out_path, "output path");

    // gadget
    auto* gadget = app.add_subcommand("gadget", "compile a 3-CNF formula to an instance");
    std::string cnf_path, gadget_out, witness_path;
    double epsilon = 0.1;
    gadget->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
    gadget->add_option("--epsilon", epsilon, "clause edge parameter, in (0, 1/8)");
    gadget->add_option("--out", gadget_out, "instance output path");
    gadget->add_option("--witness", witness_path,
                       "assignment JSON (array of booleans); emits the witness solution");

    // budget-relax
    auto* budget_relax = app.add_subcommand("budget-relax", "budget-constrained relaxation");
    CommonArgs br_args;
    std::optional<double> budget_override;
    double budget_value = 0.0;
    budget_relax->add_option("--instance", br_args.instance_path, "instance JSON")->required();
    auto* budget_opt = budget_relax->add_option("--budget", budget_value,
                                                "budget (overrides the instance's)");
    budget_relax->add_option("--out", br_args.out_path, "output path");

    // constants
    auto* constants = app.add_subcommand("constants", "class constants and guarantees");
    std::string constants_class = "poly:1";
    std::string constants_out;
    constants->add_option("--class", constants_class, "poly:<d>|concave|convex");
    constants->add_option("--out", constants_out, "output path");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustive capacity grid search");
    CommonArgs oracle_args;
    int resolution = 64;
    bool oracle_random = false;
    bool oracle_serial = false;
    unsigned long long seed = 1;
    oracle->add_option("--instance", oracle_args.instance_path, "instance JSON");
    oracle->add_option("--resolution", resolution, "grid points per strict edge (>= 16)");
    oracle->add_flag("--random", oracle_random, "search a seeded random tiny instance");
    oracle->add_option("--seed", seed, "seed for --random");
    oracle->add_flag("--serial", oracle_serial, "disable the parallel grid sweep");
    oracle->add_option("--out", oracle_args.out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    if (*budget_opt) {
        budget_override = budget_value;
    }

    if (solve->parsed()) {
        cndp::Instance inst = load_instance(solve_args.instance_path);
        cndp::ApproxParams params;
        params.wardrop.tol_gap = solve_tol;
        params.dispatch_only = dispatch_only;
        if (!class_spec.empty()) {
            params.function_class = parse_class(class_spec);
        }
        cndp::ApproxResult result;
        if (algorithm == "bte") {
            result = cndp::bring_to_equilibrium(inst, params);
        } else if (algorithm == "su") {
            result = cndp::scale_uniformly(inst, params);
        } else if (algorithm == "budgeted") {
            result = cndp::solve_budgeted(inst, params);
        } else {
            result = cndp::best_of_two(inst, params);
        }
        log_info("algorithm " + result.certificate.algorithm + " total " +
                 fmt17(result.certificate.total) + " ratio " + fmt17(result.certificate.ratio));
        if (result.certificate.low_p_flag) {
            std::cerr << "note: relaxation is capacity-dominated (p < 0.01); the uniform-scaling "
                         "guarantee degrades towards 1 + mu\n";
        }
        if (result.certificate.slack_warning) {
            std::cerr << "warning: budget could not be exhausted\n";
        }
        emit(cndp::solution_to_json(inst, result.flow, result.caps, &result.certificate),
             solve_args.out_path);
        return 0;
    }

    if (relax->parsed() || single_sink->parsed()) {
        const CommonArgs& args = relax->parsed() ? relax_args : ss_args;
        cndp::Instance inst = load_instance(args.instance_path);
        cndp::RelaxationResult result =
            relax->parsed() ? cndp::solve_relaxation(inst) : cndp::solve_single_sink(inst);
        cndp::Certificate cert;
        cert.relaxation_cost = result.cost;
        cert.routing_cost = result.routing_cost;
        cert.capacity_cost = result.capacity_cost;
        cert.total = result.cost;
        cert.ratio = 1.0;
        cert.guarantee = 1.0;
        cert.algorithm = relax->parsed() ? "relaxation" : "single_sink";
        cert.p = result.p();
        cndp::Cost gap = cndp::verify_wardrop(inst, result.caps, result.flow);
        cert.equilibrium_gap =
            gap.finite() ? gap.value : std::numeric_limits<double>::infinity();
        log_info(cert.algorithm + " cost " + fmt17(result.cost));
        emit(cndp::solution_to_json(inst, result.flow, result.caps, &cert), args.out_path);
        return 0;
    }

    if (equilibrium->parsed()) {
        cndp::Instance inst = load_instance(eq_args.instance_path);
        cndp::CapacityVector caps =
            cndp::capacities_from_json(inst, cndp::parse_json_file(eq_caps_path));
        cndp::WardropOptions opts;
        opts.tol_gap = eq_tol;
        cndp::WardropResult eq = cndp::solve_wardrop(inst, caps, opts);
        log_info("equilibrium gap " + fmt17(eq.gap) + " after " + std::to_string(eq.iterations) +
                 " iterations");
        json out = cndp::solution_to_json(inst, eq.flow, caps);
        out["equilibrium"] = wardrop_report(eq);
        emit(out, eq_args.out_path);
        return 0;
    }

    if (verify->parsed()) {
        cndp::Instance inst = load_instance(verify_args.instance_path);
        cndp::CapacityVector caps =
            cndp::capacities_from_json(inst, cndp::parse_json_file(verify_caps_path));
        cndp::FlowAssignment flow =
            cndp::flow_from_json(inst, cndp::parse_json_file(verify_flow_path));
        json report;
        json violations = json::array();
        for (const cndp::FlowViolation& v : cndp::validate_flow(inst, flow)) {
            violations.push_back(json{{"commodity", v.commodity},
                                      {"node", v.node},
                                      {"imbalance", v.imbalance},
                                      {"message", v.message}});
        }
        report["flow_violations"] = violations;
        if (violations.empty()) {
            cndp::Cost cr = cndp::routing_cost(inst, flow, caps);
            double cz = cndp::capacity_cost(inst, caps);
            report["routing_cost"] = cr.finite() ? json(cr.value) : json("infinite");
            report["capacity_cost"] = cz;
            if (cr.finite()) {
                report["total"] = cr.value + cz;
            }
            cndp::Cost gap = cndp::verify_wardrop(inst, caps, flow);
            report["equilibrium_gap"] = gap.finite() ? json(gap.value) : json("infinite");
            cndp::Cost mgap = cndp::marginal_equilibrium_check(inst, caps, flow);
            report["marginal_gap"] = mgap.finite() ? json(mgap.value) : json("infinite");
        }
        emit(report, verify_args.out_path);
        return 0;
    }

    if (gadget->parsed()) {
        std::ifstream in(cnf_path);
        if (!in) {
            throw cndp::ParseError("cannot open " + cnf_path);
        }
        cndp::CnfFormula formula = cndp::parse_dimacs(in);
        cndp::GadgetInstance compiled(formula, epsilon);
        log_info("compiled " + std::to_string(formula.num_vars) + " variables, " +
                 std::to_string(formula.num_clauses()) + " clauses into " +
                 std::to_string(compiled.instance().num_edges()) + " edges");
        emit(cndp::instance_to_json(compiled.instance()), gadget_out);
        if (!witness_path.empty()) {
            json ja = cndp::parse_json_file(witness_path);
            std::vector<bool> assignment;
            for (const json& b : ja) {
                assignment.push_back(b.is_boolean() ? b.get<bool>() : b.get<int>() != 0);
            }
            auto [flow, caps] = compiled.witness(assignment);
            cndp::WitnessReport report = cndp::verify_witness(compiled, flow, caps);
            json out = cndp::solution_to_json(compiled.instance(), flow, caps);
            out["witness_report"] = json{{"total_cost", report.total_cost},
                                         {"expected_cost", report.expected_cost},
                                         {"cost_error", report.cost_error},
                                         {"equilibrium_gap", report.equilibrium_gap},
                                         {"pass", report.pass()}};
            std::cout << out.dump(2) << "\n";
        }
        return 0;
    }

    if (budget_relax->parsed()) {
        cndp::Instance inst = load_instance(br_args.instance_path);
        if (budget_override) {
            inst = cndp::Instance(inst.nodes(), inst.edges(), inst.commodities(), budget_override);
        }
        cndp::BudgetedRelaxationResult result = cndp::solve_budgeted_relaxation(inst);
        if (result.slack_warning) {
            std::cerr << "warning: budget could not be exhausted; capacities were scaled down "
                         "to meet it\n";
        }
        json out = cndp::solution_to_json(inst, result.flow, result.caps);
        out["budget_relaxation"] = json{{"routing_cost", result.routing_cost},
                                        {"spent_budget", result.spent_budget},
                                        {"rho", result.rho},
                                        {"slack_warning", result.slack_warning}};
        emit(out, br_args.out_path);
        return 0;
    }

    if (constants->parsed()) {
        cndp::FunctionClass cls = parse_class(constants_class);
        json out{{"mu", cls.mu},
                 {"gamma", cls.gamma},
                 {"guarantee_single", cls.guarantee_single()},
                 {"guarantee_best2", cls.guarantee_best_of_two()},
                 {"p_star", cls.p_star()}};
        emit(out, constants_out);
        return 0;
    }

    if (oracle->parsed()) {
        std::optional<cndp::Instance> inst;
        if (oracle_random) {
            cndp::RandomInstanceOptions ropts;
            ropts.num_commodities = 1;
            ropts.extra_edges = 2;
            ropts.min_path_hops = 1;
            ropts.max_path_hops = 2;
            ropts.single_sink = true;
            ropts.max_degree = 2;
            inst = cndp::random_instance(seed, ropts);
        } else if (!oracle_args.instance_path.empty()) {
            inst = load_instance(oracle_args.instance_path);
        } else {
            std::cerr << "usage error: oracle needs --instance or --random\n";
            return 2;
        }
        cndp::OracleOptions opts;
        opts.resolution = resolution;
        opts.parallel = !oracle_serial;
        cndp::OracleResult result = cndp::oracle_search(*inst, opts);
        log_info("oracle best cost " + fmt17(result.cost) + " over " +
                 std::to_string(result.evaluated) + " feasible grid points");
        json out = cndp::solution_to_json(*inst, result.flow, result.caps);
        out["oracle"] = json{{"cost", result.cost}, {"evaluated", result.evaluated}};
        if (oracle_random) {
            out["instance"] = cndp::instance_to_json(*inst);
        }
        emit(out, oracle_args.out_path);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cndp::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
