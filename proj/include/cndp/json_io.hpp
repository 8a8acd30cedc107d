#pragma once

#include <string>

#include <json.hpp>

#include "cndp/model.hpp"

namespace cndp {

/// Parse a JSON document; on malformed input throws ParseError carrying the
/// line and column of the failure.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin = "<input>");
nlohmann::json parse_json_file(const std::string& path);

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

LatencyFunction latency_from_json(const nlohmann::json& j);
nlohmann::json latency_to_json(const LatencyFunction& f);

/// Solution document: {"capacities": {edge-id: z}, "flows": {commodity-index:
/// {edge-id: v}}, "certificate": {...}}. Keys come out sorted, so equal
/// solutions serialize byte-identically.
nlohmann::json solution_to_json(const Instance& inst, const FlowAssignment& flow,
                                const CapacityVector& caps,
                                const Certificate* certificate = nullptr);
nlohmann::json certificate_to_json(const Certificate& cert);

/// Read capacities from either a full solution document or a bare
/// {edge-id: z} map; missing edges default to zero.
CapacityVector capacities_from_json(const Instance& inst, const nlohmann::json& j);
/// Likewise for flows ({commodity: {edge: v}} or a solution document).
FlowAssignment flow_from_json(const Instance& inst, const nlohmann::json& j);

}  // namespace cndp
