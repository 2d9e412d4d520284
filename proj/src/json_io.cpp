#include "cnet/json_io.hpp"

#include <fstream>
#include <map>

namespace cnet {

namespace {

json part_to_json(const LabelPart& p) {
  if (p.is_index()) return p.index();
  return p.bits().to_string();
}

LabelPart part_from_json(const json& j) {
  if (j.is_number_integer()) return LabelPart::of_index(j.get<long>());
  if (j.is_string()) return LabelPart::of(BitString(j.get<std::string>()));
  throw ParseError("label part must be a bit string or a module index");
}

json params_to_json(const Params& p) {
  json j;
  j["base"] = to_string(p.base);
  switch (p.base) {
    case NetworkKind::Benes:
    case NetworkKind::Copy: j["n"] = p.n; break;
    case NetworkKind::Clos:
      j["n"] = p.n;
      j["k"] = p.k;
      j["m"] = p.m;
      break;
    case NetworkKind::Cascade:
      j["n"] = p.n;
      j["fuse"] = p.fuse;
      break;
    default: break;
  }
  return j;
}

Params params_from_json(const json& j) {
  Params p;
  p.base = network_kind_from_string(j.at("base").get<std::string>());
  p.n = j.value("n", 0);
  p.k = j.value("k", 0);
  p.m = j.value("m", 0);
  p.fuse = j.value("fuse", false);
  return p;
}

json element_to_json(const Element& e) {
  json links = json::array();
  for (const auto& t : e.links) {
    if (t.is_port())
      links.push_back({{"out", t.port}});
    else
      links.push_back({{"out", to_json(t.element)}});
  }
  return json{{"label", to_json(e.label)},
              {"class", to_string(e.cls)},
              {"capability", to_string(e.cap)},
              {"fan_in", e.fan_in},
              {"fan_out", e.fan_out()},
              {"links", links}};
}

Element element_from_json(const json& j) {
  Element e;
  e.label = label_from_json(j.at("label"));
  e.cls = element_class_from_string(j.at("class").get<std::string>());
  e.cap = capability_from_string(j.at("capability").get<std::string>());
  e.fan_in = j.at("fan_in").get<int>();
  for (const auto& l : j.at("links")) {
    const json& out = l.at("out");
    if (out.is_number_integer())
      e.links.push_back(LinkTarget::to_port(out.get<int>()));
    else
      e.links.push_back(LinkTarget::to_element(label_from_json(out)));
  }
  if (j.at("fan_out").get<int>() != e.fan_out())
    throw ParseError("element fan_out disagrees with its link list");
  return e;
}

}  // namespace

json to_json(const NodeLabel& label) {
  return json{{"stage", label.stage},
              {"prefix", part_to_json(label.prefix)},
              {"suffix", part_to_json(label.suffix)}};
}

NodeLabel label_from_json(const json& j) {
  return NodeLabel{j.at("stage").get<int>(), part_from_json(j.at("prefix")),
                   part_from_json(j.at("suffix"))};
}

json to_json(const NetworkTopology& topology) {
  json stages = json::array();
  for (const auto& stage : topology.stages) {
    json row = json::array();
    for (const auto& e : stage) row.push_back(element_to_json(e));
    stages.push_back(std::move(row));
  }
  json inputs = json::array();
  for (const auto& att : topology.inputs)
    inputs.push_back({{"port", att.port}, {"element", to_json(att.element)}});
  return json{{"kind", to_string(topology.kind)}, {"N_in", topology.n_in},
              {"N_out", topology.n_out},         {"params", params_to_json(topology.params)},
              {"stages", stages},                {"inputs", inputs}};
}

NetworkTopology topology_from_json(const json& j) {
  NetworkTopology t;
  t.kind = network_kind_from_string(j.at("kind").get<std::string>());
  t.n_in = j.at("N_in").get<int>();
  t.n_out = j.at("N_out").get<int>();
  t.params = params_from_json(j.at("params"));
  for (const auto& stage : j.at("stages")) {
    std::vector<Element> row;
    for (const auto& e : stage) row.push_back(element_from_json(e));
    t.stages.push_back(std::move(row));
  }
  for (const auto& att : j.at("inputs"))
    t.inputs.push_back({att.at("port").get<int>(), label_from_json(att.at("element"))});
  t.rebuild_index();
  return t;
}

json to_json(const ConjugateTopology& conj) {
  json j = to_json(conj.net);
  j["base_kind"] = to_string(conj.base.kind);
  json map = json::array();
  std::map<LinkRef, NodeLabel> sorted(conj.link_map.begin(), conj.link_map.end());
  for (const auto& [from, to] : sorted)
    map.push_back({{"from", {{"label", to_json(from.element)}, {"link", from.link}}},
                   {"to", {{"label", to_json(to)}}}});
  j["link_map"] = std::move(map);
  return j;
}

ConjugateTopology conjugate_from_json(const json& j) {
  ConjugateTopology conj;
  conj.net = topology_from_json(j);
  if (conj.net.kind != NetworkKind::Conjugate)
    throw ParseError("expected a conjugate topology");
  switch (conj.net.params.base) {
    case NetworkKind::Benes: conj.base = build_benes(1 << conj.net.params.n); break;
    case NetworkKind::Copy: conj.base = build_copy_network(1 << conj.net.params.n); break;
    case NetworkKind::Clos:
      conj.base = build_clos(conj.net.params.n, conj.net.params.k, conj.net.params.m);
      break;
    case NetworkKind::Cascade:
      conj.base = build_multicast_cascade(1 << conj.net.params.n, conj.net.params.fuse);
      break;
    default: throw ParseError("conjugate topology with unknown base kind");
  }
  for (const auto& entry : j.at("link_map")) {
    LinkRef from{label_from_json(entry.at("from").at("label")),
                 entry.at("from").at("link").get<int>()};
    NodeLabel to = label_from_json(entry.at("to").at("label"));
    conj.link_map.emplace(from, to);
    conj.link_map_inverse.emplace(to, from);
  }
  return conj;
}

json routes_to_json(const std::vector<Route>& routes) {
  json arr = json::array();
  for (const Route& r : routes) {
    json hops = json::array();
    for (const RouteHop& h : r.hops)
      hops.push_back({{"label", to_json(h.element)}, {"link", h.link}});
    json item{{"id", r.id},   {"src", r.src},  {"dsts", r.dsts},
              {"hops", hops}, {"link_sequence", r.link_sequence}};
    if (!r.parent.empty()) item["parent"] = r.parent;
    if (r.continuation_of)
      item["continuation_of"] = {{"label", to_json(r.continuation_of->first)},
                                 {"link", r.continuation_of->second}};
    arr.push_back(std::move(item));
  }
  return json{{"routes", arr}};
}

std::vector<Route> routes_from_json(const json& j) {
  std::vector<Route> routes;
  for (const auto& item : j.at("routes")) {
    Route r;
    r.id = item.at("id").get<std::string>();
    r.src = item.at("src").get<int>();
    r.dsts = item.at("dsts").get<std::vector<int>>();
    for (const auto& h : item.at("hops"))
      r.hops.push_back({label_from_json(h.at("label")), h.at("link").get<int>()});
    r.link_sequence = item.at("link_sequence").get<std::vector<int>>();
    r.parent = item.value("parent", std::string());
    if (item.contains("continuation_of"))
      r.continuation_of = {{label_from_json(item.at("continuation_of").at("label")),
                            item.at("continuation_of").at("link").get<int>()}};
    routes.push_back(std::move(r));
  }
  return routes;
}

json requests_to_json(const std::vector<ConnectionRequest>& requests) {
  json arr = json::array();
  for (const auto& r : requests) arr.push_back({{"id", r.id}, {"src", r.src}, {"dst", r.dst}});
  return json{{"requests", arr}};
}

std::vector<ConnectionRequest> requests_from_json(const json& j) {
  std::vector<ConnectionRequest> out;
  for (const auto& r : j.at("requests"))
    out.push_back({r.at("id").get<std::string>(), r.at("src").get<int>(), r.at("dst").get<int>()});
  return out;
}

json multicast_requests_to_json(const std::vector<MulticastRequest>& requests) {
  json arr = json::array();
  for (const auto& r : requests) arr.push_back({{"id", r.id}, {"src", r.src}, {"dsts", r.dsts}});
  return json{{"requests", arr}};
}

std::vector<MulticastRequest> multicast_requests_from_json(const json& j) {
  std::vector<MulticastRequest> out;
  for (const auto& r : j.at("requests"))
    out.push_back({r.at("id").get<std::string>(), r.at("src").get<int>(),
                   r.at("dsts").get<std::vector<int>>()});
  return out;
}

json benes_assignment_to_json(const std::vector<std::pair<std::string, BitString>>& assignment) {
  json arr = json::array();
  for (const auto& [id, central] : assignment)
    arr.push_back({{"id", id}, {"central", central.to_string()}});
  return json{{"assignment", arr}};
}

json clos_assignment_to_json(const std::vector<std::pair<std::string, int>>& assignment) {
  json arr = json::array();
  for (const auto& [id, central] : assignment) arr.push_back({{"id", id}, {"central", central}});
  return json{{"assignment", arr}};
}

json tag_table_to_json(const std::vector<TagTableRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows)
    arr.push_back({{"src", row.src},
                   {"range", {row.range.first, row.range.second}},
                   {"rank", row.rank},
                   {"rank_bits", row.rank_bits.to_string()},
                   {"tag", row.tag.to_string()},
                   {"interval_min", row.interval_min.to_string()},
                   {"interval_max", row.interval_max.to_string()}});
  return json{{"table", arr}};
}

json to_json(const MulticastRealization& realization) {
  json j;
  j["ranges"] = multicast_requests_to_json(realization.ranges).at("requests");
  j["table"] = tag_table_to_json(routing_tag_table(realization.copy)).at("table");
  json trees = json::array();
  for (const auto& c : realization.copy) {
    json nodes = json::array();
    for (const auto& node : c.tree.nodes) {
      json branches = json::array();
      for (const auto& b : node.branches) {
        json branch{{"link", b.link}};
        if (b.child >= 0)
          branch["child"] = b.child;
        else
          branch["port"] = b.leaf_port;
        branches.push_back(std::move(branch));
      }
      nodes.push_back({{"label", to_json(node.element)},
                       {"interval",
                        {{"min", node.interval.lo.to_string()},
                         {"max", node.interval.hi.to_string()}}},
                       {"branches", branches}});
    }
    trees.push_back({{"id", c.id}, {"central", c.tag.to_string()}, {"nodes", nodes}});
  }
  j["trees"] = std::move(trees);
  j["permutation"] = realization.permutation;
  j["assignment"] = benes_assignment_to_json(realization.benes_assignment).at("assignment");
  j["routes"] = routes_to_json(realization.routes).at("routes");
  return j;
}

json violations_to_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const auto& v : violations) {
    json item{{"kind", v.kind == Violation::Kind::LinkCollision ? "link-collision"
                                                                : "node-collision"},
              {"element", to_json(v.element)},
              {"signals", v.signals}};
    if (v.kind == Violation::Kind::LinkCollision) item["link"] = v.link;
    arr.push_back(std::move(item));
  }
  return json{{"violations", arr}};
}

json to_json(const SweepSummary& summary) {
  return json{{"tested", summary.tested},
              {"link_violations", summary.link_violations},
              {"node_violations", summary.node_violations},
              {"rank_violations", summary.rank_violations}};
}

json to_json(const ElementCounts& counts) {
  return json{{"splitters", counts.splitters},
              {"merged", counts.merged},
              {"combiners", counts.combiners},
              {"node_count", counts.node_count}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << dump(j);
}

}  // namespace cnet
