#pragma once

// Shared test utilities: brute-force oracles kept deliberately independent
// of the library's algorithms.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "cndp/gadgets.hpp"
#include "cndp/model.hpp"

namespace cndp::testing {

/// All simple source->sink paths as edge-index lists (for graphs small
/// enough to enumerate).
inline void enumerate_paths_rec(const Instance& inst, int node, int sink,
                                std::vector<char>& visited, std::vector<int>& stack,
                                std::vector<std::vector<int>>& out) {
    if (node == sink) {
        out.push_back(stack);
        return;
    }
    visited[static_cast<size_t>(node)] = 1;
    for (int e : inst.out_edges(node)) {
        int head = inst.edges()[static_cast<size_t>(e)].head;
        if (visited[static_cast<size_t>(head)]) {
            continue;
        }
        stack.push_back(e);
        enumerate_paths_rec(inst, head, sink, visited, stack, out);
        stack.pop_back();
    }
    visited[static_cast<size_t>(node)] = 0;
}

inline std::vector<std::vector<int>> enumerate_simple_paths(const Instance& inst, int source,
                                                            int sink) {
    std::vector<std::vector<int>> out;
    std::vector<char> visited(static_cast<size_t>(inst.num_nodes()), 0);
    std::vector<int> stack;
    enumerate_paths_rec(inst, source, sink, visited, stack, out);
    return out;
}

/// Brute-force satisfying assignment, or nullopt (formulas up to ~20 vars).
inline std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& formula) {
    const int nu = formula.num_vars;
    for (unsigned long long mask = 0; mask < (1ULL << nu); ++mask) {
        std::vector<bool> assignment(static_cast<size_t>(nu));
        for (int i = 0; i < nu; ++i) {
            assignment[static_cast<size_t>(i)] = (mask >> i) & 1;
        }
        bool ok = true;
        for (const auto& cl : formula.clauses) {
            bool sat = false;
            for (int lit : cl) {
                bool value = assignment[static_cast<size_t>(std::abs(lit)) - 1];
                sat = sat || (lit > 0 ? value : !value);
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return assignment;
        }
    }
    return std::nullopt;
}

/// Random 3-CNF with three distinct variables per clause.
inline CnfFormula random_formula(std::mt19937_64& rng, int num_vars, int num_clauses) {
    CnfFormula formula;
    formula.num_vars = num_vars;
    std::uniform_int_distribution<int> var(1, num_vars);
    std::bernoulli_distribution sign(0.5);
    for (int k = 0; k < num_clauses; ++k) {
        int a = var(rng), b = a, c = a;
        while (b == a) {
            b = var(rng);
        }
        while (c == a || c == b) {
            c = var(rng);
        }
        formula.clauses.push_back({sign(rng) ? a : -a, sign(rng) ? b : -b, sign(rng) ? c : -c});
    }
    return formula;
}

}  // namespace cndp::testing
