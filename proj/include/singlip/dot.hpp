// Graphviz output in the conventions of the decorated figures: L-nodes
// black, vertices created by blowing up central edges gray, node rates in
// italics, branches and polar components as arrows to point terminals.
#pragma once

#include <cstddef>
#include <sstream>
#include <string>

#include "singlip/decomposition.hpp"
#include "singlip/graph.hpp"
#include "singlip/plane_curves.hpp"

namespace singlip {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string italic(const Rational& q) { return "<<I>" + to_string(q) + "</I>>"; }

}  // namespace detail

inline std::string emit_dot(const ResolutionGraph& g) {
  std::ostringstream out;
  out << "graph resolution {\n  node [shape=circle, width=0.2, fixedsize=true, label=\"\"];\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << "  " << detail::dot_quote(g.id(v)) << " [xlabel=\"" << g.weight(v);
    if (g.genus(v) > 0) out << " [" << g.genus(v) << "]";
    out << "\"];\n";
  }
  for (const auto& e : g.edges()) out << "  " << detail::dot_quote(g.id(e.a)) << " -- " << detail::dot_quote(g.id(e.b)) << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string emit_dot(const DecoratedGraph& d) {
  const auto& g = d.graph;
  std::ostringstream out;
  out << "graph decorated {\n  node [shape=circle, width=0.2, fixedsize=true, label=\"\"];\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << "  " << detail::dot_quote(g.id(v)) << " [tooltip=\"" << g.id(v) << " (" << g.weight(v) << ")\"";
    if (d.kinds[v] & kLNode) {
      out << ", style=filled, fillcolor=black";
    } else if (g.vertex(v).origin == Origin::central_edge_blowup) {
      out << ", style=filled, fillcolor=gray";
    }
    if (d.is_node(v) && d.rates[v]) out << ", xlabel=" << detail::italic(*d.rates[v]);
    out << "];\n";
  }
  for (const auto& e : g.edges()) out << "  " << detail::dot_quote(g.id(e.a)) << " -- " << detail::dot_quote(g.id(e.b)) << ";\n";
  std::size_t terminal = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (const auto& name : d.arrows[v]) {
      const std::string t = "arrow" + std::to_string(++terminal);
      out << "  " << t << " [shape=point, width=0.01];\n";
      out << "  " << detail::dot_quote(g.id(v)) << " -- " << t << " [dir=forward, label=\"" << name << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

inline std::string emit_dot(const PlaneTree& t) {
  std::ostringstream out;
  const auto nodes = t.nodes();
  out << "graph plane_tree {\n  node [shape=circle, width=0.2, fixedsize=true, label=\"\"];\n";
  for (std::size_t v = 0; v < t.size(); ++v) {
    out << "  t" << v << " [tooltip=\"t" << v << "\"";
    if (v == 0) out << ", style=filled, fillcolor=black";
    out << ", xlabel=" << detail::italic(t.rate(v));
    if (!nodes[v]) out << ", color=gray";
    out << "];\n";
  }
  for (const auto& e : t.edges) out << "  t" << e.a << " -- t" << e.b << ";\n";
  std::size_t terminal = 0;
  for (const auto& a : t.arrows) {
    const std::string name = "arrow" + std::to_string(++terminal);
    out << "  " << name << " [shape=point, width=0.01];\n";
    out << "  t" << a.vertex << " -- " << name << " [dir=forward, label=" << detail::dot_quote(a.branch) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace singlip
