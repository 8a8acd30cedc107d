#include "cndp/json_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cndp/errors.hpp"

namespace cndp {

using nlohmann::json;

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is the offset of the failure; recover line/column for the
        // diagnostic.
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what());
    }
}

nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

namespace {

double real_from(const json& j, const std::string& what) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        // Decimal strings are admitted wherever reals are, to carry full
        // precision through tools that normalize JSON numbers.
        const std::string s = j.get<std::string>();
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ParseError(what + ": not a number: \"" + s + "\"");
        }
        if (pos != s.size()) {
            throw ParseError(what + ": trailing characters in \"" + s + "\"");
        }
        return v;
    }
    throw ParseError(what + ": expected a number or decimal string");
}

const json& field(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(what + ": missing field \"" + key + "\"");
    }
    return *it;
}

}  // namespace

LatencyFunction latency_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("latency: expected an object");
    }
    std::string type = field(j, "type", "latency").get<std::string>();
    if (type == "constant") {
        double v = real_from(field(j, "value", "latency"), "latency value");
        if (v < 0.0) {
            throw ParseError("latency: negative constant");
        }
        return LatencyFunction::constant(v);
    }
    if (type == "polynomial") {
        const json& jc = field(j, "coeffs", "latency");
        if (!jc.is_array() || jc.empty()) {
            throw ParseError("latency: coeffs must be a non-empty array");
        }
        std::vector<double> coeffs;
        coeffs.reserve(jc.size());
        for (const json& c : jc) {
            double v = real_from(c, "latency coefficient");
            if (v < 0.0) {
                throw ParseError("latency: negative coefficient");
            }
            coeffs.push_back(v);
        }
        return LatencyFunction::polynomial(std::move(coeffs));
    }
    throw ParseError("latency: unknown type \"" + type + "\"");
}

nlohmann::json latency_to_json(const LatencyFunction& f) {
    if (f.kind() == LatencyFunction::Kind::constant) {
        return json{{"type", "constant"}, {"value", f.coefficients().front()}};
    }
    return json{{"type", "polynomial"}, {"coeffs", f.coefficients()}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("instance: expected an object");
    }
    std::vector<std::string> nodes;
    for (const json& n : field(j, "nodes", "instance")) {
        nodes.push_back(n.get<std::string>());
    }
    std::unordered_map<std::string, int> node_index;
    for (size_t i = 0; i < nodes.size(); ++i) {
        node_index[nodes[i]] = static_cast<int>(i);
    }
    auto lookup = [&](const json& id, const std::string& what) {
        std::string s = id.get<std::string>();
        auto it = node_index.find(s);
        if (it == node_index.end()) {
            throw ParseError(what + ": unknown node \"" + s + "\"");
        }
        return it->second;
    };

    std::vector<Edge> edges;
    for (const json& je : field(j, "edges", "instance")) {
        Edge e;
        e.id = field(je, "id", "edge").get<std::string>();
        e.tail = lookup(field(je, "tail", "edge " + e.id), "edge " + e.id);
        e.head = lookup(field(je, "head", "edge " + e.id), "edge " + e.id);
        e.latency = latency_from_json(field(je, "latency", "edge " + e.id));
        e.price = real_from(field(je, "price", "edge " + e.id), "edge " + e.id + " price");
        edges.push_back(std::move(e));
    }

    std::vector<Commodity> commodities;
    for (const json& jk : field(j, "commodities", "instance")) {
        Commodity k;
        k.source = lookup(field(jk, "source", "commodity"), "commodity");
        k.sink = lookup(field(jk, "sink", "commodity"), "commodity");
        k.demand = real_from(field(jk, "demand", "commodity"), "commodity demand");
        commodities.push_back(k);
    }

    std::optional<double> budget;
    if (auto it = j.find("budget"); it != j.end() && !it->is_null()) {
        budget = real_from(*it, "budget");
    }
    return Instance(std::move(nodes), std::move(edges), std::move(commodities), budget);
}

nlohmann::json instance_to_json(const Instance& inst) {
    json j;
    j["nodes"] = inst.nodes();
    json edges = json::array();
    for (const Edge& e : inst.edges()) {
        edges.push_back(json{{"id", e.id},
                             {"tail", inst.nodes()[static_cast<size_t>(e.tail)]},
                             {"head", inst.nodes()[static_cast<size_t>(e.head)]},
                             {"latency", latency_to_json(e.latency)},
                             {"price", e.price}});
    }
    j["edges"] = std::move(edges);
    json commodities = json::array();
    for (const Commodity& k : inst.commodities()) {
        commodities.push_back(json{{"source", inst.nodes()[static_cast<size_t>(k.source)]},
                                   {"sink", inst.nodes()[static_cast<size_t>(k.sink)]},
                                   {"demand", k.demand}});
    }
    j["commodities"] = std::move(commodities);
    if (inst.budget()) {
        j["budget"] = *inst.budget();
    }
    return j;
}

nlohmann::json certificate_to_json(const Certificate& cert) {
    json j{{"relaxation_cost", cert.relaxation_cost},
           {"routing_cost", cert.routing_cost},
           {"capacity_cost", cert.capacity_cost},
           {"total", cert.total},
           {"ratio", cert.ratio},
           {"guarantee", cert.guarantee},
           {"algorithm", cert.algorithm},
           {"p", cert.p},
           {"equilibrium_gap", cert.equilibrium_gap},
           {"low_p_flag", cert.low_p_flag},
           {"slack_warning", cert.slack_warning}};
    if (cert.lambda) {
        j["lambda"] = *cert.lambda;
    }
    if (cert.p_star) {
        j["p_star"] = *cert.p_star;
    }
    return j;
}

nlohmann::json solution_to_json(const Instance& inst, const FlowAssignment& flow,
                                const CapacityVector& caps, const Certificate* certificate) {
    json j;
    json jcaps = json::object();
    for (int e = 0; e < inst.num_edges(); ++e) {
        jcaps[inst.edges()[static_cast<size_t>(e)].id] = caps[static_cast<size_t>(e)];
    }
    j["capacities"] = std::move(jcaps);
    json jflows = json::object();
    for (size_t k = 0; k < flow.per_commodity.size(); ++k) {
        json jf = json::object();
        for (int e = 0; e < inst.num_edges(); ++e) {
            double v = flow.per_commodity[k][static_cast<size_t>(e)];
            if (v != 0.0) {
                jf[inst.edges()[static_cast<size_t>(e)].id] = v;
            }
        }
        jflows[std::to_string(k)] = std::move(jf);
    }
    j["flows"] = std::move(jflows);
    if (certificate) {
        j["certificate"] = certificate_to_json(*certificate);
    }
    return j;
}

CapacityVector capacities_from_json(const Instance& inst, const json& j) {
    const json& map = j.is_object() && j.contains("capacities") ? j["capacities"] : j;
    if (!map.is_object()) {
        throw ParseError("capacities: expected an object keyed by edge id");
    }
    CapacityVector caps(static_cast<size_t>(inst.num_edges()), 0.0);
    for (auto it = map.begin(); it != map.end(); ++it) {
        int e = inst.edge_index(it.key());
        double z = real_from(it.value(), "capacity of " + it.key());
        if (z < 0.0) {
            throw ParseError("capacity of " + it.key() + " is negative");
        }
        caps[static_cast<size_t>(e)] = z;
    }
    return caps;
}

FlowAssignment flow_from_json(const Instance& inst, const json& j) {
    const json& map = j.is_object() && j.contains("flows") ? j["flows"] : j;
    if (!map.is_object()) {
        throw ParseError("flows: expected an object keyed by commodity index");
    }
    FlowAssignment flow = FlowAssignment::zeros(inst.num_commodities(), inst.num_edges());
    for (auto it = map.begin(); it != map.end(); ++it) {
        int k = -1;
        try {
            k = std::stoi(it.key());
        } catch (const std::exception&) {
        }
        if (k < 0 || k >= inst.num_commodities()) {
            throw ParseError("flows: bad commodity key \"" + it.key() + "\"");
        }
        if (!it.value().is_object()) {
            throw ParseError("flows: commodity " + it.key() + " must map edge ids to flows");
        }
        for (auto fe = it.value().begin(); fe != it.value().end(); ++fe) {
            int e = inst.edge_index(fe.key());
            double v = real_from(fe.value(), "flow on " + fe.key());
            if (v < 0.0) {
                throw ParseError("flow on " + fe.key() + " is negative");
            }
            flow.per_commodity[static_cast<size_t>(k)][static_cast<size_t>(e)] = v;
        }
    }
    return flow;
}

}  // namespace cndp
