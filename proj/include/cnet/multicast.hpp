#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cnet/bitstring.hpp"
#include "cnet/routing.hpp"
#include "cnet/topology.hpp"

namespace cnet {

struct MulticastRequest {
  std::string id;
  int src = 0;
  std::vector<int> dsts;
};

struct MonotonicityCheck {
  bool ok = true;
  int first = -1;   // indices of the first violating pair, in list order
  int second = -1;
};

// A request set is monotonic when requests with larger sources ask only for
// larger outputs: S_i < S_j implies every output of i is below every output
// of j.
MonotonicityCheck is_monotonic(const std::vector<MulticastRequest>& requests);

// Re-ranges raw requests onto consecutive output intervals by the running sum
// of requested copies: rank i gets [sum of earlier copies, +|R_i|-1]. The
// result is monotonic by construction.
std::vector<MulticastRequest> running_sum_ranges(const std::vector<MulticastRequest>& requests,
                                                 int ports);

// Central module for the request of rank i = a_n...a_1: the reversal of the
// low n-1 bits, a_1...a_(n-1).
BitString rank_to_central(int rank, int n);

// Output address range [lo, hi] as n-bit words; the replication half consumes
// one address bit per stage.
struct AddressInterval {
  BitString lo;
  BitString hi;

  bool contains(int port) const {
    return lo.value() <= static_cast<std::uint32_t>(port) &&
           static_cast<std::uint32_t>(port) <= hi.value();
  }
  int count() const { return static_cast<int>(hi.value() - lo.value()) + 1; }

  friend bool operator==(const AddressInterval&, const AddressInterval&) = default;
};

// One stage of the interval splitting algorithm. At stage i the node examines
// address bit i: equal bits route on that link unchanged; a 0/1 split sends
// [lo, common 0 1...1] on link 0 and [common 1 0...0, hi] on link 1.
std::vector<std::pair<int, AddressInterval>> split_interval(const AddressInterval& interval,
                                                            int stage, int n);

struct CopyBranch {
  int link = 0;
  int child = -1;      // index into CopyTree::nodes, or
  int leaf_port = -1;  // the output port when the branch exits the network
};

struct CopyTreeNode {
  NodeLabel element;
  AddressInterval interval;
  std::vector<CopyBranch> branches;
};

// Replication tree in the reverse baseline half, from the central module at
// stage n down to the output stage. nodes[0] is the root.
struct CopyTree {
  BitString central;
  std::vector<CopyTreeNode> nodes;

  std::vector<int> leaf_ports() const;
};

CopyTree build_copy_tree(const BitString& central, const AddressInterval& interval, int n);

// Rank-based realization of one monotone request in a copy network.
struct CopyRealization {
  std::string id;
  int src = 0;
  int rank = 0;
  BitString rank_bits;      // rank as an n-bit word
  BitString tag;            // central module label a_1...a_(n-1), the baseline routing tag
  AddressInterval interval;
  std::vector<RouteHop> baseline_hops;  // source to central module, steered by the tag
  CopyTree tree;

  // Baseline path plus flattened tree as one signal, for occupancy checks.
  Route combined_route() const;
};

// Assigns central modules by rank and builds the replication trees. Requires
// strictly increasing sources, consecutive per-request intervals, and a
// monotonic set.
std::vector<CopyRealization> copy_assign(const std::vector<MulticastRequest>& requests, int n);

// Routing-tag table row for one request (source, assigned range, rank and its
// binary form, baseline tag, address interval).
struct TagTableRow {
  int src = 0;
  std::pair<int, int> range;
  int rank = 0;
  BitString rank_bits;
  BitString tag;
  BitString interval_min;
  BitString interval_max;
};

std::vector<TagTableRow> routing_tag_table(const std::vector<CopyRealization>& realizations);

// End-to-end realization of raw multicast requests over a copy + point-to-point
// cascade: running-sum re-ranging, rank-based copying, then the induced
// permutation routed by the looping algorithm.
struct MulticastRealization {
  std::vector<MulticastRequest> ranges;           // monotone re-ranged requests
  std::vector<CopyRealization> copy;
  std::vector<int> permutation;                   // intermediate port -> final output (-1 idle)
  std::vector<std::pair<std::string, BitString>> benes_assignment;
  std::vector<Route> routes;                      // trees plus per-copy continuations
};

MulticastRealization multicast_route(const std::vector<MulticastRequest>& raw,
                                     const NetworkTopology& cascade);

}  // namespace cnet
