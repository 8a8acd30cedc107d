#include "cndp/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "cndp/equilibrium.hpp"

namespace cndp {

void CnfFormula::validate() const {
    if (num_vars < 1) {
        throw DomainError("formula needs at least one variable");
    }
    for (size_t k = 0; k < clauses.size(); ++k) {
        const auto& cl = clauses[k];
        for (int lit : cl) {
            if (lit == 0 || std::abs(lit) > num_vars) {
                throw DomainError("clause " + std::to_string(k + 1) + " has literal " +
                                  std::to_string(lit) + " out of range");
            }
        }
        // A repeated variable (same or opposite sign) would merge or add
        // paths between the clause terminals, so neither is allowed.
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                if (std::abs(cl[a]) == std::abs(cl[b])) {
                    throw DomainError("clause " + std::to_string(k + 1) +
                                      " mentions variable " + std::to_string(std::abs(cl[a])) +
                                      " twice");
                }
            }
        }
    }
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula formula;
    int expected_clauses = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first == "c") {
            continue;
        }
        if (first == "p") {
            std::string fmt;
            if (!(ls >> fmt >> formula.num_vars >> expected_clauses) || fmt != "cnf") {
                throw ParseError("malformed problem line: " + line);
            }
            continue;
        }
        if (expected_clauses < 0) {
            throw ParseError("clause before the problem line: " + line);
        }
        std::array<int, 3> clause{};
        int lit = std::atoi(first.c_str());
        if (lit == 0 && first != "0") {
            throw ParseError("bad literal: " + first);
        }
        int count = 0;
        while (lit != 0) {
            if (count == 3) {
                throw ParseError("clause with more than three literals: " + line);
            }
            clause[static_cast<size_t>(count++)] = lit;
            if (!(ls >> lit)) {
                throw ParseError("clause not terminated by 0: " + line);
            }
        }
        if (count != 3) {
            throw ParseError("clause with fewer than three literals: " + line);
        }
        formula.clauses.push_back(clause);
    }
    if (expected_clauses < 0) {
        throw ParseError("missing problem line");
    }
    if (formula.num_clauses() != expected_clauses) {
        throw ParseError("problem line announces " + std::to_string(expected_clauses) +
                         " clauses, found " + std::to_string(formula.num_clauses()));
    }
    formula.validate();
    return formula;
}

namespace {

std::string pad4(int x) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d", x);
    return buf;
}

std::string var_tag(int var, bool positive) {
    return "v" + pad4(var) + (positive ? "_p" : "_n");
}

}  // namespace

GadgetInstance::GadgetInstance(CnfFormula formula, double epsilon)
    : formula_(std::move(formula)), epsilon_(epsilon) {
    formula_.validate();
    if (!(epsilon_ > 0.0) || !(epsilon_ < 0.125)) {
        throw DomainError("epsilon must lie strictly between 0 and 1/8");
    }
    const int nu = formula_.num_vars;
    const int kappa = formula_.num_clauses();
    if (kappa == 0) {
        throw DomainError("formula has no clauses");
    }

    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    auto add_node = [&](const std::string& id) {
        nodes.push_back(id);
        return static_cast<int>(nodes.size()) - 1;
    };

    // Per-literal chains of one unit-price edge per clause slot. Chains of
    // the two signs share their endpoints s_v / t_v; consecutive literal
    // edges are joined by zero-latency spacers so clause connectors attach
    // to nodes private to a single literal edge.
    std::vector<int> s_var(static_cast<size_t>(nu) + 1, -1);
    std::vector<int> t_var(static_cast<size_t>(nu) + 1, -1);
    // tail/head node of literal edge e_{l,k}, indexed [var][sign][clause]
    auto node_grid = [&] {
        return std::vector<std::array<std::vector<int>, 2>>(
            static_cast<size_t>(nu) + 1,
            {std::vector<int>(static_cast<size_t>(kappa), -1),
             std::vector<int>(static_cast<size_t>(kappa), -1)});
    };
    auto lit_tail = node_grid();
    auto lit_head = node_grid();

    chain_edges_pos_.assign(static_cast<size_t>(nu) + 1, {});
    chain_edges_neg_.assign(static_cast<size_t>(nu) + 1, {});

    for (int v = 1; v <= nu; ++v) {
        s_var[static_cast<size_t>(v)] = add_node("s_v" + pad4(v));
        t_var[static_cast<size_t>(v)] = add_node("t_v" + pad4(v));
    }
    for (int v = 1; v <= nu; ++v) {
        for (int sign = 0; sign < 2; ++sign) {
            bool positive = sign == 0;
            std::string tag = var_tag(v, positive);
            auto& tails = lit_tail[static_cast<size_t>(v)][static_cast<size_t>(sign)];
            auto& heads = lit_head[static_cast<size_t>(v)][static_cast<size_t>(sign)];
            auto& chain = positive ? chain_edges_pos_[static_cast<size_t>(v)]
                                   : chain_edges_neg_[static_cast<size_t>(v)];
            // every literal edge gets private endpoints: the shared s_v / t_v
            // terminals attach through zero-latency spacers, so a path can
            // only enter a chain through its own connectors
            for (int k = 0; k < kappa; ++k) {
                tails[static_cast<size_t>(k)] = add_node("u_" + tag + "_c" + pad4(k + 1));
                heads[static_cast<size_t>(k)] = add_node("w_" + tag + "_c" + pad4(k + 1));
            }
            {
                int sp = static_cast<int>(edges.size());
                edges.push_back(Edge{"spc_" + tag + "_in", s_var[static_cast<size_t>(v)],
                                     tails[0], LatencyFunction::constant(0.0), 0.0});
                chain.push_back(sp);
            }
            for (int k = 0; k < kappa; ++k) {
                int e = static_cast<int>(edges.size());
                edges.push_back(Edge{"lit_" + tag + "_c" + pad4(k + 1),
                                     tails[static_cast<size_t>(k)], heads[static_cast<size_t>(k)],
                                     LatencyFunction::polynomial({0.0, 1.0}), 1.0});
                literal_edges_[{v, positive, k}] = e;
                chain.push_back(e);
                if (k + 1 < kappa) {
                    int sp = static_cast<int>(edges.size());
                    edges.push_back(Edge{"spc_" + tag + "_c" + pad4(k + 1),
                                         heads[static_cast<size_t>(k)],
                                         tails[static_cast<size_t>(k + 1)],
                                         LatencyFunction::constant(0.0), 0.0});
                    chain.push_back(sp);
                }
            }
            {
                int sp = static_cast<int>(edges.size());
                edges.push_back(Edge{"spc_" + tag + "_out",
                                     heads[static_cast<size_t>(kappa) - 1],
                                     t_var[static_cast<size_t>(v)],
                                     LatencyFunction::constant(0.0), 0.0});
                chain.push_back(sp);
            }
        }
    }

    // Clause terminals, the clause edge, and the connector path visiting the
    // clause's three literal edges in order.
    const double clause_price = (epsilon_ / 2.0) * (epsilon_ / 2.0);
    clause_edges_.assign(static_cast<size_t>(kappa), -1);
    for (int k = 0; k < kappa; ++k) {
        int sk = add_node("s_c" + pad4(k + 1));
        int tk = add_node("t_c" + pad4(k + 1));
        clause_edges_[static_cast<size_t>(k)] = static_cast<int>(edges.size());
        edges.push_back(Edge{"cls_c" + pad4(k + 1), sk, tk,
                             LatencyFunction::polynomial({4.0, 1.0}), clause_price});
        int prev = sk;
        const auto& cl = formula_.clauses[static_cast<size_t>(k)];
        for (int j = 0; j < 3; ++j) {
            int var = std::abs(cl[static_cast<size_t>(j)]);
            size_t sign = cl[static_cast<size_t>(j)] > 0 ? 0 : 1;
            edges.push_back(Edge{"con_c" + pad4(k + 1) + "_" + std::to_string(j), prev,
                                 lit_tail[static_cast<size_t>(var)][sign][static_cast<size_t>(k)],
                                 LatencyFunction::constant(0.0), 0.0});
            prev = lit_head[static_cast<size_t>(var)][sign][static_cast<size_t>(k)];
        }
        edges.push_back(Edge{"con_c" + pad4(k + 1) + "_3", prev, tk,
                             LatencyFunction::constant(0.0), 0.0});
    }

    std::vector<Commodity> commodities;
    commodities.reserve(static_cast<size_t>(nu + kappa));
    for (int v = 1; v <= nu; ++v) {
        commodities.push_back(
            Commodity{s_var[static_cast<size_t>(v)], t_var[static_cast<size_t>(v)], 1.0});
    }
    for (int k = 0; k < kappa; ++k) {
        int sk = edges[static_cast<size_t>(clause_edges_[static_cast<size_t>(k)])].tail;
        int tk = edges[static_cast<size_t>(clause_edges_[static_cast<size_t>(k)])].head;
        commodities.push_back(Commodity{sk, tk, 1.0});
    }

    instance_ = std::make_shared<Instance>(std::move(nodes), std::move(edges),
                                           std::move(commodities));
}

int GadgetInstance::literal_edge(int var, bool positive, int clause) const {
    auto it = literal_edges_.find({var, positive, clause});
    if (it == literal_edges_.end()) {
        throw BadNode("no such literal edge");
    }
    return it->second;
}

int GadgetInstance::clause_edge(int clause) const {
    if (clause < 0 || clause >= formula_.num_clauses()) {
        throw BadNode("clause index out of range");
    }
    return clause_edges_[static_cast<size_t>(clause)];
}

double GadgetInstance::expected_cost() const {
    double nu = formula_.num_vars;
    double kappa = formula_.num_clauses();
    return 2.0 * kappa * nu + (4.0 + epsilon_) * kappa;
}

std::pair<FlowAssignment, CapacityVector> GadgetInstance::witness(
    const std::vector<bool>& assignment) const {
    const int nu = formula_.num_vars;
    const int kappa = formula_.num_clauses();
    if (static_cast<int>(assignment.size()) != nu) {
        throw WrongShape("assignment has wrong length");
    }
    for (int k = 0; k < kappa; ++k) {
        const auto& cl = formula_.clauses[static_cast<size_t>(k)];
        bool satisfied = false;
        for (int lit : cl) {
            bool value = assignment[static_cast<size_t>(std::abs(lit)) - 1];
            satisfied = satisfied || (lit > 0 ? value : !value);
        }
        if (!satisfied) {
            throw UnsatisfiedClause(k + 1, "assignment leaves clause " + std::to_string(k + 1) +
                                               " unsatisfied");
        }
    }

    const Instance& inst = *instance_;
    FlowAssignment flow = FlowAssignment::zeros(inst.num_commodities(), inst.num_edges());
    CapacityVector caps(static_cast<size_t>(inst.num_edges()), 0.0);

    // Each variable routes on, and buys unit capacity along, the chain of
    // its *unset* literal; the chain of the set literal stays at capacity
    // zero and blocks every satisfied clause's detour.
    for (int v = 1; v <= nu; ++v) {
        bool route_positive = !assignment[static_cast<size_t>(v) - 1];
        const auto& chain = route_positive ? chain_edges_pos_[static_cast<size_t>(v)]
                                           : chain_edges_neg_[static_cast<size_t>(v)];
        for (int e : chain) {
            flow.per_commodity[static_cast<size_t>(v) - 1][static_cast<size_t>(e)] = 1.0;
            if (inst.edges()[static_cast<size_t>(e)].latency.is_strict()) {
                caps[static_cast<size_t>(e)] = 1.0;
            }
        }
    }
    for (int k = 0; k < kappa; ++k) {
        size_t e = static_cast<size_t>(clause_edges_[static_cast<size_t>(k)]);
        flow.per_commodity[static_cast<size_t>(clause_commodity(k))][e] = 1.0;
        caps[e] = 2.0 / epsilon_;
    }
    return {std::move(flow), caps};
}

WitnessReport verify_witness(const GadgetInstance& gadget, const FlowAssignment& flow,
                             const CapacityVector& caps) {
    const Instance& inst = gadget.instance();
    WitnessReport report;
    report.expected_cost = gadget.expected_cost();
    Cost total = total_cost(inst, flow, caps);
    if (total.finite()) {
        report.total_cost = total.value;
        report.cost_error = std::abs(total.value - report.expected_cost);
        report.cost_ok = report.cost_error <= 1e-9 * std::max(1.0, report.expected_cost);
    } else {
        report.total_cost = std::numeric_limits<double>::infinity();
        report.cost_error = std::numeric_limits<double>::infinity();
    }
    Cost gap = verify_wardrop(inst, caps, flow);
    report.equilibrium_gap = gap.finite() ? gap.value : std::numeric_limits<double>::infinity();
    report.equilibrium_ok = gap.finite() && gap.value <= 1e-6;
    return report;
}

}  // namespace cndp
