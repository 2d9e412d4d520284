#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cnet/errors.hpp"
#include "cnet/label.hpp"

namespace cnet {

enum class NetworkKind { Benes, Clos, Copy, Cascade, Decomposed, Conjugate };

enum class ElementClass { Switch, Splitter, Combiner, Merged };

enum class Capability { PointToPoint, CopyCapable };

std::string to_string(NetworkKind kind);
std::string to_string(ElementClass cls);
std::string to_string(Capability cap);
NetworkKind network_kind_from_string(const std::string& s);
ElementClass element_class_from_string(const std::string& s);
Capability capability_from_string(const std::string& s);

// Where an output link lands: either another element or an external port.
struct LinkTarget {
  static LinkTarget to_element(const NodeLabel& l) { return LinkTarget{l, -1}; }
  static LinkTarget to_port(int p) { return LinkTarget{{}, p}; }

  bool is_port() const { return port >= 0; }

  NodeLabel element;  // valid when !is_port()
  int port = -1;

  friend bool operator==(const LinkTarget&, const LinkTarget&) = default;
};

// One switching element. Output link labels are the indices into `links`
// (0 = upper, 1 = lower for 2x2 nodes).
struct Element {
  NodeLabel label;
  ElementClass cls = ElementClass::Switch;
  Capability cap = Capability::PointToPoint;
  int fan_in = 0;
  std::vector<LinkTarget> links;

  int fan_out() const { return static_cast<int>(links.size()); }
};

// Attachment of external input port `port` to an element's input side.
struct PortAttachment {
  int port = 0;
  NodeLabel element;

  friend bool operator==(const PortAttachment&, const PortAttachment&) = default;
};

// Construction parameters, kept with the topology so that derived networks
// (decomposed, conjugate) can rebuild their base deterministically.
struct Params {
  NetworkKind base = NetworkKind::Benes;  // meaningful for derived kinds
  int n = 0;                              // log2(N) for Benes-family; module size for Clos
  int k = 0;                              // Clos input/output module count
  int m = 0;                              // Clos central module count
  bool fuse = false;                      // cascade: combine boundary stages

  friend bool operator==(const Params&, const Params&) = default;
};

// A staged switching network. Stages are ordered input side to output side;
// elements within a stage are ordered top-down. Value type: builders return it
// fully wired, and transformations produce new values.
class NetworkTopology {
 public:
  NetworkKind kind = NetworkKind::Benes;
  int n_in = 0;
  int n_out = 0;
  Params params;
  std::vector<std::vector<Element>> stages;
  std::vector<PortAttachment> inputs;  // inputs[p] feeds external port p

  int stage_count() const { return static_cast<int>(stages.size()); }
  std::size_t element_count() const;

  // Must be called after stages are populated or modified.
  void rebuild_index();

  const Element* find(const NodeLabel& label) const;
  const Element& at(const NodeLabel& label) const;  // throws LookupError
  std::pair<int, int> position(const NodeLabel& label) const;

  // Follows one output link to its downstream element or external port.
  LinkTarget trace_link(const NodeLabel& label, int link) const;

  // Structural sanity: every link resolves, every element input is fed by
  // exactly one upstream link or input port, labels are unique.
  void validate() const;

 private:
  std::unordered_map<NodeLabel, std::pair<int, int>, NodeLabelHash> index_;
};

// Builders. Port/label bit order is most-significant-bit first: input port
// s1...sn attaches to first-stage node (phi, s1...s(n-1)).
NetworkTopology build_benes(int ports);
NetworkTopology build_clos(int n, int k, int m);
NetworkTopology build_copy_network(int ports);
NetworkTopology build_multicast_cascade(int ports, bool fuse);

// log2 for exact powers of two; anything else is an InvalidParameterError.
int log2_exact(int ports);

}  // namespace cnet
