#include "cnet/conjugate.hpp"

#include <algorithm>
#include <map>

namespace cnet {

namespace {

bool is_original_kind(NetworkKind kind) {
  return kind == NetworkKind::Benes || kind == NetworkKind::Clos || kind == NetworkKind::Copy ||
         kind == NetworkKind::Cascade;
}

NetworkTopology rebuild_base(const Params& params) {
  switch (params.base) {
    case NetworkKind::Benes: return build_benes(1 << params.n);
    case NetworkKind::Copy: return build_copy_network(1 << params.n);
    case NetworkKind::Clos: return build_clos(params.n, params.k, params.m);
    case NetworkKind::Cascade: return build_multicast_cascade(1 << params.n, params.fuse);
    default: throw InvalidKindError("cannot rebuild base of kind " + to_string(params.base));
  }
}

// External port coordinate as a label part: n-bit word for Benes-family
// networks, plain index for Clos.
LabelPart port_part(const Params& params, int port) {
  if (params.base == NetworkKind::Clos) return LabelPart::of_index(port);
  return LabelPart::of(BitString(static_cast<std::uint32_t>(port), params.n));
}

}  // namespace

NodeLabel map_benes_link(int n, int stage, const NodeLabel& label, int link) {
  if (link != 0 && link != 1)
    throw InvalidParameterError("Benes link label must be 0 or 1");
  if (stage == 2 * n - 1)
    throw InvalidParameterError("stage " + std::to_string(stage) +
                                " links feed output ports, not merged nodes");
  if (stage < 1 || stage > 2 * n - 2)
    throw InvalidParameterError("stage out of range for link conversion");
  if (label.stage != stage)
    throw InvalidParameterError("label stage does not match conversion stage");
  if (!label.prefix.is_bits() || !label.suffix.is_bits())
    throw InvalidParameterError("Benes labels are bit strings");
  int plen = stage <= n ? stage - 1 : 2 * n - 1 - stage;
  if (label.prefix.bits().size() != plen || label.suffix.bits().size() != n - 1 - plen)
    throw InvalidParameterError("label bit lengths do not match stage " + std::to_string(stage));
  if (stage <= n - 1)
    return benes_label(stage, label.prefix.bits().append(link), label.suffix.bits());
  return benes_label(stage, label.prefix.bits(), label.suffix.bits().append(link));
}

NodeLabel merged_label_for_link(const NetworkTopology& base, const NodeLabel& label, int link) {
  const Element& e = base.at(label);
  if (link < 0 || link >= e.fan_out())
    throw LookupError("element " + label.display() + " has no output link " +
                      std::to_string(link));
  if (e.links[static_cast<std::size_t>(link)].is_port())
    throw InvalidParameterError("link feeds an output port, not a merged node");

  int n = base.params.n;
  switch (base.kind) {
    case NetworkKind::Benes:
    case NetworkKind::Copy:
      return map_benes_link(n, label.stage, label, link);
    case NetworkKind::Clos:
      if (label.stage == 1)
        return NodeLabel{1, LabelPart::of_index(link), label.suffix};
      return NodeLabel{2, label.prefix, LabelPart::of_index(link)};
    case NetworkKind::Cascade: {
      int stage = label.stage;
      int offset = base.params.fuse ? 2 * n - 2 : 2 * n - 1;
      bool grow_prefix = stage <= n - 1 || (stage > offset && stage - offset <= n - 1);
      NodeLabel out = label;
      if (grow_prefix)
        out.prefix = LabelPart::of(label.prefix.bits().append(link));
      else
        out.suffix = LabelPart::of(label.suffix.bits().append(link));
      return out;
    }
    default:
      throw InvalidKindError("no link conversion for kind " + to_string(base.kind));
  }
}

NetworkTopology decompose(const NetworkTopology& topology) {
  if (!is_original_kind(topology.kind))
    throw InvalidKindError("decompose expects an untransformed network, got " +
                           to_string(topology.kind));

  int last = topology.stage_count();
  NetworkTopology d;
  d.kind = NetworkKind::Decomposed;
  d.n_in = topology.n_in;
  d.n_out = topology.n_out;
  d.params = topology.params;
  d.params.base = topology.kind;
  d.stages.resize(static_cast<std::size_t>(2 * last));

  // Feeders of each element, in deterministic order: external ports first
  // (ascending), then upstream links in stage/element/link order.
  std::map<NodeLabel, std::vector<NodeLabel>> splitter_labels;  // per element, one per feeder
  for (const auto& att : topology.inputs) {
    splitter_labels[att.element].push_back(
        NodeLabel{1, LabelPart::phi(), port_part(d.params, att.port)});
  }
  for (const auto& stage : topology.stages)
    for (const auto& e : stage)
      for (int l = 0; l < e.fan_out(); ++l) {
        const LinkTarget& t = e.links[static_cast<std::size_t>(l)];
        if (t.is_port()) continue;
        NodeLabel conv = merged_label_for_link(topology, e.label, l);
        conv.stage = 2 * conv.stage + 1;  // splitter layer of the downstream stage
        splitter_labels[t.element].push_back(conv);
      }

  for (int j = 1; j <= last; ++j) {
    auto& splitter_layer = d.stages[static_cast<std::size_t>(2 * j - 2)];
    auto& combiner_layer = d.stages[static_cast<std::size_t>(2 * j - 1)];
    for (const Element& e : topology.stages[static_cast<std::size_t>(j - 1)]) {
      // Combiner labels first: splitters link to them.
      std::vector<NodeLabel> comb_labels;
      for (int l = 0; l < e.fan_out(); ++l) {
        const LinkTarget& t = e.links[static_cast<std::size_t>(l)];
        NodeLabel lab;
        if (t.is_port()) {
          lab = NodeLabel{2 * j, LabelPart::phi(), port_part(d.params, t.port)};
        } else {
          lab = merged_label_for_link(topology, e.label, l);
          lab.stage = 2 * j;
        }
        comb_labels.push_back(lab);
      }

      for (const NodeLabel& slab : splitter_labels[e.label]) {
        Element sp;
        sp.label = slab;
        sp.cls = ElementClass::Splitter;
        sp.cap = e.cap;
        sp.fan_in = 1;
        for (const NodeLabel& cl : comb_labels) sp.links.push_back(LinkTarget::to_element(cl));
        splitter_layer.push_back(std::move(sp));
      }
      if (static_cast<int>(splitter_labels[e.label].size()) != e.fan_in)
        throw InvalidParameterError("element " + e.label.display() +
                                    " feeder count differs from fan_in");

      for (int l = 0; l < e.fan_out(); ++l) {
        const LinkTarget& t = e.links[static_cast<std::size_t>(l)];
        Element cb;
        cb.label = comb_labels[static_cast<std::size_t>(l)];
        cb.cls = ElementClass::Combiner;
        cb.cap = Capability::PointToPoint;
        cb.fan_in = e.fan_in;
        if (t.is_port()) {
          cb.links.push_back(t);
        } else {
          NodeLabel down = merged_label_for_link(topology, e.label, l);
          down.stage = 2 * down.stage + 1;
          cb.links.push_back(LinkTarget::to_element(down));
        }
        combiner_layer.push_back(std::move(cb));
      }
    }
  }

  for (const auto& att : topology.inputs)
    d.inputs.push_back(
        {att.port, NodeLabel{1, LabelPart::phi(), port_part(d.params, att.port)}});
  d.rebuild_index();
  return d;
}

ConjugateTopology merge(const NetworkTopology& decomposed) {
  if (decomposed.kind != NetworkKind::Decomposed)
    throw InvalidKindError("merge expects a decomposed network, got " +
                           to_string(decomposed.kind));

  ConjugateTopology conj;
  conj.base = rebuild_base(decomposed.params);
  int last = conj.base.stage_count();
  if (decomposed.stage_count() != 2 * last)
    throw InvalidParameterError("decomposed stage count does not match its base parameters");

  NetworkTopology& net = conj.net;
  net.kind = NetworkKind::Conjugate;
  net.n_in = decomposed.n_in;
  net.n_out = decomposed.n_out;
  net.params = decomposed.params;
  net.stages.resize(static_cast<std::size_t>(last + 1));

  // A target at decomposed combiner layer 2j keeps its 2-tuple and lands at
  // conjugate stage j (merged for j < last, output combiner for j = last).
  auto retarget = [](const NodeLabel& l) {
    NodeLabel out = l;
    out.stage = l.stage / 2;
    return out;
  };

  // Input splitters: decomposed layer 1, restaged to 0.
  for (const Element& sp : decomposed.stages.front()) {
    Element e = sp;
    e.label.stage = 0;
    e.cls = ElementClass::Splitter;
    for (auto& link : e.links)
      if (!link.is_port()) link = LinkTarget::to_element(retarget(link.element));
    net.stages[0].push_back(std::move(e));
  }

  // Merged nodes: pair each internal combiner with the splitter it feeds.
  for (int j = 1; j < last; ++j) {
    auto& layer = net.stages[static_cast<std::size_t>(j)];
    for (const Element& cb : decomposed.stages[static_cast<std::size_t>(2 * j - 1)]) {
      const LinkTarget& t = cb.links.front();
      if (t.is_port())
        throw InvalidParameterError("internal combiner exits to a port");
      const Element& sp = decomposed.at(t.element);
      if (sp.label.prefix != cb.label.prefix || sp.label.suffix != cb.label.suffix)
        throw InvalidParameterError("combiner/splitter pair labels disagree");
      Element e;
      e.label = retarget(cb.label);
      e.cls = ElementClass::Merged;
      e.cap = sp.cap;
      e.fan_in = cb.fan_in;
      for (const auto& link : sp.links)
        e.links.push_back(link.is_port() ? link : LinkTarget::to_element(retarget(link.element)));
      layer.push_back(std::move(e));
    }
    std::sort(layer.begin(), layer.end(),
              [](const Element& a, const Element& b) { return a.label < b.label; });
  }

  // Output combiners: decomposed layer 2*last, restaged to last.
  for (const Element& cb : decomposed.stages.back()) {
    Element e = cb;
    e.label.stage = last;
    e.cls = ElementClass::Combiner;
    net.stages[static_cast<std::size_t>(last)].push_back(std::move(e));
  }

  for (const auto& att : decomposed.inputs) {
    NodeLabel l = att.element;
    l.stage = 0;
    net.inputs.push_back({att.port, l});
  }
  net.rebuild_index();

  // The internal-link bijection, recomputed from the rebuilt base.
  for (int j = 1; j < last; ++j)
    for (const Element& e : conj.base.stages[static_cast<std::size_t>(j - 1)])
      for (int l = 0; l < e.fan_out(); ++l) {
        NodeLabel m = merged_label_for_link(conj.base, e.label, l);
        if (!net.find(m))
          throw InvalidParameterError("merged node missing for link " + e.label.display());
        conj.link_map.emplace(LinkRef{e.label, l}, m);
        conj.link_map_inverse.emplace(m, LinkRef{e.label, l});
      }
  return conj;
}

ConjugateTopology conjugate_of(const NetworkTopology& topology) {
  return merge(decompose(topology));
}

NodeLabel ConjugateTopology::splitter_label(int port) const {
  return NodeLabel{0, LabelPart::phi(), port_part(net.params, port)};
}

NodeLabel ConjugateTopology::combiner_label(int port) const {
  return NodeLabel{base.stage_count(), LabelPart::phi(), port_part(net.params, port)};
}

std::vector<Route> map_routes(const ConjugateTopology& conj, const std::vector<Route>& routes) {
  // Continuation routes (multicast copies picking up mid-network) indexed by
  // the parent hop they extend.
  std::map<std::pair<NodeLabel, int>, std::vector<const Route*>> continuations;
  for (const Route& r : routes)
    if (r.continuation_of) continuations[*r.continuation_of].push_back(&r);

  std::vector<Route> mapped;
  mapped.reserve(routes.size());
  for (const Route& r : routes) {
    std::map<NodeLabel, std::vector<int>> taken;
    for (const RouteHop& h : r.hops) taken[h.element].push_back(h.link);

    Route out;
    out.id = r.id;
    out.parent = r.parent;
    out.src = r.src;
    out.dsts = r.dsts;
    out.link_sequence = r.link_sequence;

    // Out-links of the conjugate element that stands for base link (E, l):
    // whatever this signal (or a copy continuing it) takes at the downstream
    // element.
    auto downstream_links = [&](const NodeLabel& down, const NodeLabel& from_element,
                                int from_link) {
      std::vector<int> links;
      if (auto it = taken.find(down); it != taken.end()) links = it->second;
      if (auto it = continuations.find({from_element, from_link}); it != continuations.end())
        for (const Route* child : it->second) {
          if (child->parent != r.id) continue;
          if (child->hops.empty() || !(child->hops.front().element == down))
            throw InvalidRouteError("continuation of " + r.id + " does not start downstream");
          links.push_back(child->hops.front().link);
        }
      std::sort(links.begin(), links.end());
      return links;
    };

    if (r.src >= 0) {
      if (r.src >= conj.base.n_in) throw InvalidRouteError("route source port out of range");
      const NodeLabel& entry = conj.base.inputs[static_cast<std::size_t>(r.src)].element;
      auto it = taken.find(entry);
      if (it == taken.end())
        throw InvalidRouteError("route " + r.id + " has no hop at its entry element");
      for (int l : it->second) out.hops.push_back({conj.splitter_label(r.src), l});
    }
    for (const RouteHop& h : r.hops) {
      LinkTarget t = conj.base.trace_link(h.element, h.link);
      if (t.is_port()) {
        out.hops.push_back({conj.combiner_label(t.port), 0});
        continue;
      }
      auto mit = conj.link_map.find(LinkRef{h.element, h.link});
      if (mit == conj.link_map.end())
        throw InvalidRouteError("no merged node for hop at " + h.element.display());
      std::vector<int> links = downstream_links(t.element, h.element, h.link);
      if (links.empty())
        throw InvalidRouteError("route " + r.id + " dead-ends inside the network at " +
                                t.element.display());
      for (int l : links) out.hops.push_back({mit->second, l});
    }
    mapped.push_back(std::move(out));
  }
  return mapped;
}

Route map_route(const ConjugateTopology& conj, const Route& route) {
  return map_routes(conj, {route}).front();
}

ElementCounts element_counts(const ConjugateTopology& conj) {
  ElementCounts c;
  c.splitters = static_cast<long>(conj.input_splitters().size());
  c.combiners = static_cast<long>(conj.output_combiners().size());
  for (int k = 1; k <= conj.merged_stage_count(); ++k)
    c.merged += static_cast<long>(conj.merged_stage(k).size());
  c.node_count = c.merged + conj.base.n_in;
  return c;
}

}  // namespace cnet
