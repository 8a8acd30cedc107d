#pragma once

#include <array>
#include <istream>
#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "cndp/model.hpp"

namespace cndp {

/// 3-CNF formula; literals are signed 1-based variable indices.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    void validate() const;
};

CnfFormula parse_dimacs(std::istream& in);

struct UnsatisfiedClause : DomainError {
    int clause;
    UnsatisfiedClause(int k, const std::string& what) : DomainError(what), clause(k) {}
};

/// The CNDP instance compiled from a formula: literal edges (S(x)=x, l=1)
/// chained per literal across all clauses, clause edges (S(x)=4+x,
/// l=(eps/2)^2), and zero-latency connectors giving each clause commodity
/// its alternative path through the three literal edges.
class GadgetInstance {
public:
    GadgetInstance(CnfFormula formula, double epsilon);

    const Instance& instance() const { return *instance_; }
    const CnfFormula& formula() const { return formula_; }
    double epsilon() const { return epsilon_; }

    /// Edge index of literal edge e_{l,k}; literal by variable (1-based)
    /// and sign, clause 0-based.
    int literal_edge(int var, bool positive, int clause) const;
    int clause_edge(int clause) const;
    /// Commodity indices: variables first (0..nu-1), then clauses.
    int variable_commodity(int var) const { return var - 1; }
    int clause_commodity(int clause) const { return formula_.num_vars + clause; }

    /// The constructed optimal solution for a satisfying assignment
    /// (assignment[i] is the value of variable i+1). Throws
    /// UnsatisfiedClause naming the first violated clause otherwise.
    std::pair<FlowAssignment, CapacityVector> witness(const std::vector<bool>& assignment) const;

    /// 2*kappa*nu + (4+eps)*kappa, the exact optimal cost for satisfiable
    /// formulas.
    double expected_cost() const;

private:
    CnfFormula formula_;
    double epsilon_;
    std::shared_ptr<Instance> instance_;
    std::map<std::tuple<int, bool, int>, int> literal_edges_;
    std::vector<int> clause_edges_;
    std::vector<std::vector<int>> chain_edges_pos_;  // per variable: literal+spacer edges in order
    std::vector<std::vector<int>> chain_edges_neg_;
};

struct WitnessReport {
    double total_cost = 0.0;
    double expected_cost = 0.0;
    double cost_error = 0.0;       // |total - expected|
    double equilibrium_gap = 0.0;  // +inf when the flow hits an infinite edge
    bool cost_ok = false;          // within 1e-9 relative
    bool equilibrium_ok = false;   // gap <= 1e-6
    bool pass() const { return cost_ok && equilibrium_ok; }
};

WitnessReport verify_witness(const GadgetInstance& gadget, const FlowAssignment& flow,
                             const CapacityVector& caps);

}  // namespace cndp
