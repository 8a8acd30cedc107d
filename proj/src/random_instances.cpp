#include "cndp/random_instances.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cndp/errors.hpp"
#include "cndp/relaxation.hpp"

namespace cndp {

namespace {

LatencyFunction random_strict(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(1, std::max(1, max_degree));
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    std::uniform_real_distribution<double> offset(0.0, 2.0);
    int d = deg(rng);
    std::vector<double> coeffs(static_cast<size_t>(d) + 1, 0.0);
    coeffs[0] = offset(rng);
    coeffs[static_cast<size_t>(d)] = lead(rng);
    return LatencyFunction::polynomial(std::move(coeffs));
}

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomInstanceOptions& opts) {
    if (opts.num_commodities < 1 || opts.num_commodities > 4) {
        throw DomainError("random instances carry between one and four commodities");
    }
    if (opts.min_path_hops < 1 || opts.max_path_hops < opts.min_path_hops) {
        throw DomainError("bad path-length range");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> path_len(opts.min_path_hops, opts.max_path_hops);
    std::uniform_real_distribution<double> price(0.5, 3.0);
    std::uniform_real_distribution<double> demand(0.5, 2.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> const_lat(0.1, 2.0);

    std::vector<std::string> nodes;
    auto add_node = [&] {
        nodes.push_back("n" + std::to_string(nodes.size()));
        return static_cast<int>(nodes.size()) - 1;
    };

    std::vector<Edge> edges;
    std::set<std::pair<int, int>> used;
    auto add_edge = [&](int tail, int head) {
        if (tail == head || !used.insert({tail, head}).second) {
            return false;
        }
        bool constant = !opts.single_sink && coin(rng) < opts.constant_edge_share;
        Edge e;
        e.id = "e" + std::to_string(edges.size());
        e.tail = tail;
        e.head = head;
        if (constant) {
            e.latency = LatencyFunction::constant(const_lat(rng));
            e.price = 0.0;
        } else {
            e.latency = random_strict(rng, opts.max_degree);
            e.price = price(rng);
        }
        edges.push_back(std::move(e));
        return true;
    };

    std::vector<Commodity> commodities;
    int shared_sink = opts.single_sink ? add_node() : -1;
    for (int k = 0; k < opts.num_commodities; ++k) {
        int source = add_node();
        int sink = opts.single_sink ? shared_sink : add_node();
        int node = source;
        int hops = path_len(rng);
        for (int h = 1; h < hops; ++h) {
            int mid = add_node();
            add_edge(node, mid);
            node = mid;
        }
        add_edge(node, sink);
        commodities.push_back(Commodity{source, sink, demand(rng)});
    }

    std::uniform_int_distribution<int> pick(0, static_cast<int>(nodes.size()) - 1);
    int attempts = 0;
    int added = 0;
    while (added < opts.extra_edges && attempts < 20 * opts.extra_edges) {
        ++attempts;
        int tail = pick(rng);
        int head = pick(rng);
        if (opts.single_sink && tail == shared_sink) {
            continue;  // keep the sink a sink
        }
        if (add_edge(tail, head)) {
            ++added;
        }
    }

    return Instance(std::move(nodes), std::move(edges), std::move(commodities));
}

Instance with_budget_fraction(const Instance& inst, double fraction) {
    if (!(fraction > 0.0)) {
        throw DomainError("budget fraction must be positive");
    }
    RelaxationResult relax = solve_relaxation(inst);
    if (relax.capacity_cost <= 0.0) {
        throw DomainError("relaxation spends nothing on capacity, no budget to scale");
    }
    return Instance(inst.nodes(), inst.edges(), inst.commodities(),
                    fraction * relax.capacity_cost);
}

}  // namespace cndp
