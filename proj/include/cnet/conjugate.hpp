#pragma once

#include <unordered_map>
#include <vector>

#include "cnet/routing.hpp"
#include "cnet/topology.hpp"

namespace cnet {

// Key for one output link of one element.
struct LinkRef {
  NodeLabel element;
  int link = 0;

  friend bool operator==(const LinkRef&, const LinkRef&) = default;
  friend auto operator<=>(const LinkRef&, const LinkRef&) = default;
};

struct LinkRefHash {
  std::size_t operator()(const LinkRef& r) const {
    return NodeLabelHash()(r.element) * 1000003u + static_cast<std::size_t>(r.link);
  }
};

// Result of the two-step conjugate transformation: every internal link of the
// base network becomes a merged node, first-stage splitters and last-stage
// combiners stay as edge elements. `net` holds the full staged structure
// (splitter layer, merged layers, combiner layer) and `link_map` records the
// internal-link-to-merged-node bijection.
struct ConjugateTopology {
  NetworkTopology base;
  NetworkTopology net;
  std::unordered_map<LinkRef, NodeLabel, LinkRefHash> link_map;
  std::unordered_map<NodeLabel, LinkRef, NodeLabelHash> link_map_inverse;

  const std::vector<Element>& input_splitters() const { return net.stages.front(); }
  const std::vector<Element>& output_combiners() const { return net.stages.back(); }
  int merged_stage_count() const { return net.stage_count() - 2; }
  const std::vector<Element>& merged_stage(int k) const {  // k = 1..merged_stage_count()
    return net.stages[static_cast<std::size_t>(k)];
  }

  NodeLabel splitter_label(int port) const;
  NodeLabel combiner_label(int port) const;
};

struct ElementCounts {
  long splitters = 0;
  long merged = 0;
  long combiners = 0;
  // Merged nodes plus one edge element per port: the count that satisfies the
  // closed forms 3N (square conjugate Clos) and (2n-1)N (conjugate Benes).
  long node_count = 0;
};

// Step 1: replace every a x b element by a splitters (1 x b) followed by
// b combiners (a x 1), fully wired; external behaviour is unchanged.
NetworkTopology decompose(const NetworkTopology& topology);

// Step 2: merge every combiner/splitter pair joined by a single link across
// an original stage boundary into one element.
ConjugateTopology merge(const NetworkTopology& decomposed);

// The composition merge(decompose(t)).
ConjugateTopology conjugate_of(const NetworkTopology& topology);

// Label conversion rule for Benes-family networks: output link g of stage-k
// node (a, b) becomes merged node (a g, b) in the baseline half (k <= n-1) and
// (a, b g) in the reverse half (k >= n). Stage 2n-1 links feed output ports,
// not merged nodes.
NodeLabel map_benes_link(int n, int stage, const NodeLabel& label, int link);

// Kind-aware conversion for any internal link of a base network.
NodeLabel merged_label_for_link(const NetworkTopology& base, const NodeLabel& label, int link);

// Maps base-network routes onto the conjugate network. The link sequence of
// every connection is preserved verbatim. Routes that continue other routes
// (multicast copies entering the point-to-point half) are resolved through
// their `parent` / `continues_from` fields, so pass the whole set at once.
std::vector<Route> map_routes(const ConjugateTopology& conj, const std::vector<Route>& routes);
Route map_route(const ConjugateTopology& conj, const Route& route);

ElementCounts element_counts(const ConjugateTopology& conj);

}  // namespace cnet
