#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnet/bitstring.hpp"
#include "cnet/label.hpp"

namespace cnet {

struct ConnectionRequest {
  std::string id;
  int src = 0;
  int dst = 0;
};

struct RouteHop {
  NodeLabel element;
  int link = 0;

  friend bool operator==(const RouteHop&, const RouteHop&) = default;
};

// One signal's path. Point-to-point routes are hop sequences; multicast trees
// flatten to hop sets (an element taking both output links appears twice).
// A route either enters at an external port (src >= 0) or continues another
// route's flow: `parent` names that route and `continuation_of` the exact
// (element, link) hop of the parent it extends.
struct Route {
  std::string id;
  std::string parent;
  std::optional<std::pair<NodeLabel, int>> continuation_of;
  int src = -1;
  std::vector<int> dsts;
  std::vector<RouteHop> hops;
  std::vector<int> link_sequence;
};

// --- Benes point-to-point routing -----------------------------------------

// The unique path from src to dst through central module (central, phi) in a
// 2^n-port Benes network; link sequence x1...x(n-1) d1...dn.
Route benes_path(int n, int src, int dst, const BitString& central);

// Central-module assignment for a (partial) permutation, computed by the
// sequential looping algorithm. Deterministic: each chain of the pairing
// graph starts at its lowest-numbered request (lowest-numbered endpoint for
// open chains) which takes the upper subnetwork. Result is aligned with the
// input order.
std::vector<std::pair<std::string, BitString>> looping_assign(
    int n, const std::vector<ConnectionRequest>& requests);

std::vector<Route> benes_routes(int n, const std::vector<ConnectionRequest>& requests,
                                const std::vector<std::pair<std::string, BitString>>& assignment);

// --- Clos routing -----------------------------------------------------------

struct ClosParams {
  int n = 0;
  int k = 0;
  int m = 0;
};

// src = input s2 of module s1 with s1 = floor(src/n), s2 = src mod n; the path
// runs s1 -> central x1 -> d1 -> dst.
Route clos_path(const ClosParams& p, int src, int dst, int central);

// Rank-based coloring for monotone request sets: rank r takes central r mod m.
std::vector<std::pair<std::string, int>> clos_rank_assign(
    const ClosParams& p, const std::vector<ConnectionRequest>& requests);

// Proper edge coloring of the input-module/output-module bipartite multigraph
// with at most m colors (requires m >= n). Monotone inputs reduce to the
// rank-based rule; otherwise greedy coloring with alternating-chain recoloring.
std::vector<std::pair<std::string, int>> clos_assign_general(
    const ClosParams& p, const std::vector<ConnectionRequest>& requests);

std::vector<Route> clos_routes(const ClosParams& p,
                               const std::vector<ConnectionRequest>& requests,
                               const std::vector<std::pair<std::string, int>>& assignment);

}  // namespace cnet
