#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cnet/conjugate.hpp"
#include "cnet/multicast.hpp"
#include "cnet/routing.hpp"
#include "cnet/topology.hpp"
#include "cnet/verify.hpp"

namespace cnet {

using json = nlohmann::json;

// Topology schema (documented in the README): {kind, N_in, N_out, params,
// stages:[[{label:{stage,prefix,suffix}, class, capability, fan_in, fan_out,
// links:[{out: label-or-port}]}]], inputs:[{port, element}]}. Bit-string label
// parts serialize as strings ("" is the empty numbering), Clos module indices
// as numbers; round-trips are lossless.
json to_json(const NetworkTopology& topology);
NetworkTopology topology_from_json(const json& j);

// Same schema plus base_kind and link_map:[{from:{label,link}, to:{label}}].
json to_json(const ConjugateTopology& conj);
ConjugateTopology conjugate_from_json(const json& j);

json to_json(const NodeLabel& label);
NodeLabel label_from_json(const json& j);

json routes_to_json(const std::vector<Route>& routes);
std::vector<Route> routes_from_json(const json& j);

json requests_to_json(const std::vector<ConnectionRequest>& requests);
std::vector<ConnectionRequest> requests_from_json(const json& j);

json multicast_requests_to_json(const std::vector<MulticastRequest>& requests);
std::vector<MulticastRequest> multicast_requests_from_json(const json& j);

json benes_assignment_to_json(const std::vector<std::pair<std::string, BitString>>& assignment);
json clos_assignment_to_json(const std::vector<std::pair<std::string, int>>& assignment);

json tag_table_to_json(const std::vector<TagTableRow>& rows);
json to_json(const MulticastRealization& realization);

json violations_to_json(const std::vector<Violation>& violations);
json to_json(const SweepSummary& summary);
json to_json(const ElementCounts& counts);

// Reads/writes with a trailing newline; identical values produce identical bytes.
std::string dump(const json& j);
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace cnet
