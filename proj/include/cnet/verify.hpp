#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnet/conjugate.hpp"
#include "cnet/routing.hpp"
#include "cnet/topology.hpp"

namespace cnet {

// Which signals traverse each element and each output link. A signal
// replicated at a copy node counts once per element: the sets hold distinct
// signal identities.
struct OccupancyLedger {
  std::map<NodeLabel, std::set<std::string>> element_signals;
  std::map<std::pair<NodeLabel, int>, std::set<std::string>> link_signals;
  std::size_t hop_count = 0;
};

OccupancyLedger occupancy(const NetworkTopology& topology, const std::vector<Route>& routes);

struct Violation {
  enum class Kind { LinkCollision, NodeCollision };

  Kind kind = Kind::LinkCollision;
  NodeLabel element;
  int link = -1;  // meaningful for link collisions
  std::vector<std::string> signals;
};

// Every (element, output link) carrying two or more distinct signals — the
// nonblocking condition of the electronic network.
std::vector<Violation> check_link_disjoint(const NetworkTopology& topology,
                                           const std::vector<Route>& routes);

// Every element of the conjugate network carrying two or more distinct
// signals, edge splitters and combiners included — the crosstalk condition of
// the optical network.
std::vector<Violation> check_crosstalk_free(const ConjugateTopology& conj,
                                            const std::vector<Route>& conj_routes);

// Replays a route's hops against the wiring: consecutive hops must be joined
// by the traced link and the final hops must exit at the route's declared
// destinations. Throws InvalidRouteError on any mismatch.
void validate_route(const NetworkTopology& topology, const Route& route);

struct SweepSummary {
  long long tested = 0;
  long long link_violations = 0;
  long long node_violations = 0;
  long long rank_violations = 0;  // monotone sweeps: rank-spacing inequality failures
};

// Routes every permutation (exhaustive for N <= 8, otherwise `samples` seeded
// draws) with the looping algorithm, then checks link-disjointness in the
// Benes network and node-disjointness in its conjugate.
SweepSummary sweep_benes_permutations(int ports, std::optional<long long> samples,
                                      std::uint64_t seed);

// Same sweep over a three-stage Clos network using the bipartite coloring.
SweepSummary sweep_clos_permutations(int n, int k, int m, std::optional<long long> samples,
                                     std::uint64_t seed);

// Enumerates monotone consecutive-interval multicast request sets (all
// running-sum re-rangings of compositions of up to N copies over increasing
// sources when exhaustive) and checks the rank-spacing inequality, tree
// link-disjointness, and conjugate crosstalk-freedom.
SweepSummary sweep_monotonic_multicast(int ports, std::optional<long long> samples,
                                       std::uint64_t seed);

// Arithmetic witnesses behind the rank-based nonblocking argument: ranks that
// agree in their low `stage` bits differ by at least 2^stage, and sources that
// agree in their leading n-stage bits differ by at most 2^stage - 1.
bool rank_spacing_witness(int rank_i, int rank_j, int stage);
bool source_spacing_witness(int src_i, int src_j, int n, int stage);

// Deterministic Fisher-Yates shuffle of 0..count-1 (results do not depend on
// the standard library's distribution implementations).
std::vector<int> random_permutation(std::uint64_t& state, int count);

}  // namespace cnet
