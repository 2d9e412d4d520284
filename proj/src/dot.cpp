#include "cnet/dot.hpp"

#include <map>
#include <sstream>

namespace cnet {

namespace {

const char* kPalette[] = {"red",      "blue",   "forestgreen", "darkorange",
                          "purple",   "brown",  "deeppink",    "teal",
                          "crimson",  "navy",   "olive",       "darkcyan"};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));

std::string node_id(const NetworkTopology& t, const NodeLabel& label) {
  auto [s, e] = t.position(label);
  return "s" + std::to_string(s) + "_" + std::to_string(e);
}

std::string element_shape(ElementClass cls) {
  switch (cls) {
    case ElementClass::Splitter: return "triangle";
    case ElementClass::Combiner: return "invtriangle";
    default: return "box";
  }
}

}  // namespace

std::string render_dot(const NetworkTopology& topology, const std::vector<Route>& routes) {
  // Color per signal, in first-appearance order; edges shared by several
  // signals keep the first signal's color.
  std::map<std::string, int> signal_color;
  std::map<std::pair<NodeLabel, int>, std::string> edge_signal;
  for (const Route& r : routes) {
    if (signal_color.find(r.id) == signal_color.end())
      signal_color.emplace(r.id, static_cast<int>(signal_color.size()));
    for (const RouteHop& h : r.hops) edge_signal.try_emplace({h.element, h.link}, r.id);
  }

  std::ostringstream out;
  out << "digraph network {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontsize=10, fontname=\"Helvetica\"];\n";
  out << "  edge [fontsize=9, fontname=\"Helvetica\"];\n";

  out << "  { rank=same;";
  for (int p = 0; p < topology.n_in; ++p)
    out << " in" << p << " [shape=plaintext, label=\"" << p << "\"];";
  out << " }\n";
  for (int s = 0; s < topology.stage_count(); ++s) {
    out << "  { rank=same;";
    for (std::size_t e = 0; e < topology.stages[static_cast<std::size_t>(s)].size(); ++e) {
      const Element& el = topology.stages[static_cast<std::size_t>(s)][e];
      out << " s" << s << "_" << e << " [shape=" << element_shape(el.cls) << ", label=\"("
          << el.label.prefix.display() << "," << el.label.suffix.display() << ")\"];";
    }
    out << " }\n";
  }
  out << "  { rank=same;";
  for (int p = 0; p < topology.n_out; ++p)
    out << " out" << p << " [shape=plaintext, label=\"" << p << "\"];";
  out << " }\n";

  for (const auto& att : topology.inputs)
    out << "  in" << att.port << " -> " << node_id(topology, att.element) << ";\n";

  for (int s = 0; s < topology.stage_count(); ++s)
    for (std::size_t e = 0; e < topology.stages[static_cast<std::size_t>(s)].size(); ++e) {
      const Element& el = topology.stages[static_cast<std::size_t>(s)][e];
      for (int l = 0; l < el.fan_out(); ++l) {
        const LinkTarget& t = el.links[static_cast<std::size_t>(l)];
        out << "  s" << s << "_" << e << " -> ";
        if (t.is_port())
          out << "out" << t.port;
        else
          out << node_id(topology, t.element);
        out << " [label=\"" << l << "\"";
        auto it = edge_signal.find({el.label, l});
        if (it != edge_signal.end()) {
          out << ", color=" << kPalette[signal_color[it->second] % kPaletteSize]
              << ", penwidth=2.0, tooltip=\"" << it->second << "\"";
        }
        out << "];\n";
      }
    }
  out << "}\n";
  return out.str();
}

}  // namespace cnet
