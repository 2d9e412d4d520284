#include "cnet/topology.hpp"

#include <algorithm>
#include <map>

namespace cnet {

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::Benes: return "benes";
    case NetworkKind::Clos: return "clos";
    case NetworkKind::Copy: return "copy";
    case NetworkKind::Cascade: return "cascade";
    case NetworkKind::Decomposed: return "decomposed";
    case NetworkKind::Conjugate: return "conjugate";
  }
  return "?";
}

std::string to_string(ElementClass cls) {
  switch (cls) {
    case ElementClass::Switch: return "switch";
    case ElementClass::Splitter: return "splitter";
    case ElementClass::Combiner: return "combiner";
    case ElementClass::Merged: return "merged";
  }
  return "?";
}

std::string to_string(Capability cap) {
  return cap == Capability::CopyCapable ? "copy_capable" : "point_to_point";
}

NetworkKind network_kind_from_string(const std::string& s) {
  if (s == "benes") return NetworkKind::Benes;
  if (s == "clos") return NetworkKind::Clos;
  if (s == "copy") return NetworkKind::Copy;
  if (s == "cascade") return NetworkKind::Cascade;
  if (s == "decomposed") return NetworkKind::Decomposed;
  if (s == "conjugate") return NetworkKind::Conjugate;
  throw ParseError("unknown network kind: " + s);
}

ElementClass element_class_from_string(const std::string& s) {
  if (s == "switch") return ElementClass::Switch;
  if (s == "splitter") return ElementClass::Splitter;
  if (s == "combiner") return ElementClass::Combiner;
  if (s == "merged") return ElementClass::Merged;
  throw ParseError("unknown element class: " + s);
}

Capability capability_from_string(const std::string& s) {
  if (s == "point_to_point") return Capability::PointToPoint;
  if (s == "copy_capable") return Capability::CopyCapable;
  throw ParseError("unknown capability: " + s);
}

std::size_t NetworkTopology::element_count() const {
  std::size_t total = 0;
  for (const auto& stage : stages) total += stage.size();
  return total;
}

void NetworkTopology::rebuild_index() {
  index_.clear();
  for (int s = 0; s < static_cast<int>(stages.size()); ++s)
    for (int e = 0; e < static_cast<int>(stages[s].size()); ++e) {
      auto [it, inserted] = index_.emplace(stages[s][e].label, std::pair<int, int>{s, e});
      if (!inserted)
        throw InvalidParameterError("duplicate element label " + stages[s][e].label.display());
    }
}

const Element* NetworkTopology::find(const NodeLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return nullptr;
  return &stages[it->second.first][it->second.second];
}

const Element& NetworkTopology::at(const NodeLabel& label) const {
  const Element* e = find(label);
  if (!e) throw LookupError("no element labelled " + label.display());
  return *e;
}

std::pair<int, int> NetworkTopology::position(const NodeLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw LookupError("no element labelled " + label.display());
  return it->second;
}

LinkTarget NetworkTopology::trace_link(const NodeLabel& label, int link) const {
  const Element& e = at(label);
  if (link < 0 || link >= e.fan_out())
    throw LookupError("element " + label.display() + " has no output link " +
                      std::to_string(link));
  return e.links[static_cast<std::size_t>(link)];
}

void NetworkTopology::validate() const {
  // Totality of link tracing plus exact in-degree accounting.
  std::map<NodeLabel, int> fed;
  std::vector<bool> port_fed(static_cast<std::size_t>(n_out), false);
  for (const auto& att : inputs) {
    const Element* e = find(att.element);
    if (!e) throw InvalidRouteError("input port attached to unknown element");
    ++fed[att.element];
  }
  for (const auto& stage : stages)
    for (const auto& e : stage) {
      if (e.fan_out() == 0) throw InvalidParameterError("element with no output links");
      for (const auto& t : e.links) {
        if (t.is_port()) {
          if (t.port >= n_out) throw InvalidParameterError("link to out-of-range port");
          if (port_fed[static_cast<std::size_t>(t.port)])
            throw InvalidParameterError("output port fed twice");
          port_fed[static_cast<std::size_t>(t.port)] = true;
        } else {
          if (!find(t.element))
            throw LookupError("link to unknown element " + t.element.display());
          ++fed[t.element];
        }
      }
    }
  for (const auto& stage : stages)
    for (const auto& e : stage) {
      auto it = fed.find(e.label);
      int got = it == fed.end() ? 0 : it->second;
      if (got != e.fan_in)
        throw InvalidParameterError("element " + e.label.display() + " fed by " +
                                    std::to_string(got) + " links, fan_in " +
                                    std::to_string(e.fan_in));
    }
  for (int p = 0; p < n_out; ++p)
    if (!port_fed[static_cast<std::size_t>(p)])
      throw InvalidParameterError("output port " + std::to_string(p) + " unreachable");
  if (static_cast<int>(inputs.size()) != n_in)
    throw InvalidParameterError("input attachment count mismatch");
}

int log2_exact(int ports) {
  if (ports < 2 || (ports & (ports - 1)) != 0)
    throw InvalidParameterError("port count must be a power of two >= 2, got " +
                                std::to_string(ports));
  int n = 0;
  while ((1 << n) < ports) ++n;
  return n;
}

namespace {

// Shared wiring for Benes-family networks (Benes, copy): 2n-1 stages of N/2
// nodes. Stage i node (a1...a(i-1), b1...b(n-i)) reaches, via output link c,
//   stage i+1 node (a1...a(i-1)c, b1...b(n-i-1))   for i < n (baseline half),
//   stage i+1 node (a1...a(i-2),  b1...b(i-n)c)    for i >= n (reverse half),
// and last-stage links exit to port (suffix value)*2 + c.
NetworkTopology build_benes_like(int ports, NetworkKind kind, Capability cap) {
  int n = log2_exact(ports);
  NetworkTopology t;
  t.kind = kind;
  t.n_in = t.n_out = ports;
  t.params.base = kind;
  t.params.n = n;

  int last = 2 * n - 1;
  t.stages.resize(static_cast<std::size_t>(last));
  for (int stage = 1; stage <= last; ++stage) {
    int plen = stage <= n ? stage - 1 : 2 * n - 1 - stage;
    int slen = n - 1 - plen;
    auto& row = t.stages[static_cast<std::size_t>(stage - 1)];
    for (int r = 0; r < ports / 2; ++r) {
      BitString prefix(static_cast<std::uint32_t>(r >> slen), plen);
      BitString suffix(static_cast<std::uint32_t>(r) & ((1u << slen) - 1u), slen);
      Element e;
      e.label = benes_label(stage, prefix, suffix);
      e.cls = ElementClass::Switch;
      e.cap = cap;
      e.fan_in = 2;
      for (int c = 0; c < 2; ++c) {
        if (stage == last) {
          e.links.push_back(LinkTarget::to_port(static_cast<int>(suffix.value()) * 2 + c));
        } else if (stage < n) {
          e.links.push_back(
              LinkTarget::to_element(benes_label(stage + 1, prefix.append(c), suffix.drop_last())));
        } else {
          e.links.push_back(
              LinkTarget::to_element(benes_label(stage + 1, prefix.drop_last(), suffix.append(c))));
        }
      }
      row.push_back(std::move(e));
    }
  }
  for (int p = 0; p < ports; ++p)
    t.inputs.push_back(
        {p, benes_label(1, BitString(), BitString(static_cast<std::uint32_t>(p >> 1), n - 1))});
  t.rebuild_index();
  return t;
}

NodeLabel clos_module(int stage, int row) {
  if (stage == 2) return NodeLabel{stage, LabelPart::of_index(row), LabelPart::phi()};
  return NodeLabel{stage, LabelPart::phi(), LabelPart::of_index(row)};
}

}  // namespace

NetworkTopology build_benes(int ports) {
  return build_benes_like(ports, NetworkKind::Benes, Capability::PointToPoint);
}

NetworkTopology build_copy_network(int ports) {
  return build_benes_like(ports, NetworkKind::Copy, Capability::CopyCapable);
}

NetworkTopology build_clos(int n, int k, int m) {
  if (n < 1 || k < 1 || m < 1)
    throw InvalidParameterError("Clos parameters must be positive");
  NetworkTopology t;
  t.kind = NetworkKind::Clos;
  t.n_in = t.n_out = n * k;
  t.params.base = NetworkKind::Clos;
  t.params.n = n;
  t.params.k = k;
  t.params.m = m;
  t.stages.resize(3);

  for (int j = 0; j < k; ++j) {
    Element e;
    e.label = clos_module(1, j);
    e.fan_in = n;
    for (int x = 0; x < m; ++x) e.links.push_back(LinkTarget::to_element(clos_module(2, x)));
    t.stages[0].push_back(std::move(e));
  }
  for (int x = 0; x < m; ++x) {
    Element e;
    e.label = clos_module(2, x);
    e.fan_in = k;
    for (int d = 0; d < k; ++d) e.links.push_back(LinkTarget::to_element(clos_module(3, d)));
    t.stages[1].push_back(std::move(e));
  }
  for (int j = 0; j < k; ++j) {
    Element e;
    e.label = clos_module(3, j);
    e.fan_in = m;
    for (int c = 0; c < n; ++c) e.links.push_back(LinkTarget::to_port(j * n + c));
    t.stages[2].push_back(std::move(e));
  }
  for (int p = 0; p < n * k; ++p) t.inputs.push_back({p, clos_module(1, p / n)});
  t.rebuild_index();
  return t;
}

NetworkTopology build_multicast_cascade(int ports, bool fuse) {
  int n = log2_exact(ports);
  NetworkTopology copy = build_copy_network(ports);
  NetworkTopology benes = build_benes(ports);

  NetworkTopology t;
  t.kind = NetworkKind::Cascade;
  t.n_in = t.n_out = ports;
  t.params.base = NetworkKind::Cascade;
  t.params.n = n;
  t.params.fuse = fuse;
  t.inputs = copy.inputs;

  int copy_stages = fuse ? 2 * n - 2 : 2 * n - 1;
  int offset = fuse ? 2 * n - 2 : 2 * n - 1;  // benes local stage s -> global offset + s

  for (int s = 1; s <= copy_stages; ++s) t.stages.push_back(copy.stages[static_cast<std::size_t>(s - 1)]);

  auto relabel = [offset](const NodeLabel& l) {
    NodeLabel out = l;
    out.stage = l.stage + offset;
    return out;
  };

  // Benes half: stage 1 keeps copy capability when it absorbs the copy
  // network's output stage (the fused node still replicates).
  for (int s = 1; s <= 2 * n - 1; ++s) {
    std::vector<Element> row;
    for (const Element& src : benes.stages[static_cast<std::size_t>(s - 1)]) {
      Element e = src;
      e.label = relabel(e.label);
      e.cap = (fuse && s == 1) ? Capability::CopyCapable : Capability::PointToPoint;
      for (auto& link : e.links)
        if (!link.is_port()) link = LinkTarget::to_element(relabel(link.element));
      row.push_back(std::move(e));
    }
    t.stages.push_back(std::move(row));
  }

  if (!fuse) {
    // Rewire the copy network's output stage into the point-to-point half:
    // node (phi, b) link c lands on benes stage-1 node (phi, b), input c.
    auto& boundary = t.stages[static_cast<std::size_t>(2 * n - 2)];
    for (Element& e : boundary)
      for (int c = 0; c < e.fan_out(); ++c) {
        int port = e.links[static_cast<std::size_t>(c)].port;
        e.links[static_cast<std::size_t>(c)] = LinkTarget::to_element(
            benes_label(2 * n, BitString(), BitString(static_cast<std::uint32_t>(port >> 1),
                                                      n - 1)));
      }
  }

  t.rebuild_index();
  return t;
}

}  // namespace cnet
