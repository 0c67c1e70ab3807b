// The resolution Gamma_0 of a minimal singularity (central edges blown up),
// its node classification, inner rates, node separation and the geometric
// decomposition into B and A pieces.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "singlip/error.hpp"
#include "singlip/graph.hpp"
#include "singlip/minimality.hpp"
#include "singlip/pieces.hpp"
#include "singlip/rational.hpp"

namespace singlip {

enum NodeKind : unsigned {
  kNotNode = 0,
  kLNode = 1u << 0,
  kPNode = 1u << 1,
  kJunction = 1u << 2,
  kGenusNode = 1u << 3,
};

inline std::string node_kind_names(unsigned kinds) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (kinds & bit) {
      if (!out.empty()) out += ',';
      out += name;
    }
  };
  add(kLNode, "L");
  add(kPNode, "P");
  add(kJunction, "junction");
  add(kGenusNode, "genus");
  return out;
}

/// A resolution graph with node kinds, s-values and inner rates. Rates and
/// s-values are Gamma_0 data; vertices created by node separation have none.
struct DecoratedGraph {
  ResolutionGraph graph;
  std::vector<unsigned> kinds;
  std::vector<std::optional<int>> s;
  std::vector<std::optional<Rational>> rates;
  std::vector<std::vector<std::string>> arrows;  // polar components per vertex
  PolarProfile profile;
  std::vector<std::size_t> gray;  // Gamma_0 vertex of each central-edge component, in edge order

  bool is_node(std::size_t v) const { return kinds.at(v) != kNotNode; }

  std::vector<std::size_t> nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < kinds.size(); ++v)
      if (is_node(v)) out.push_back(v);
    return out;
  }

  Rational rate(std::size_t v) const {
    ensure(rates.at(v).has_value(), ErrorKind::internal, "vertex '" + graph.id(v) + "' has no rate");
    return *rates[v];
  }
};

/// s(v), or s(v) - 1/2 for the (-1)-curve created on a central edge. A
/// (-1)-curve already present in the input keeps s(v).
inline Rational inner_rate(int s, bool central_edge_curve) {
  return central_edge_curve ? Rational(2 * s - 1, 2) : Rational(s);
}

inline DecoratedGraph build_gamma0(const ResolutionGraph& g) {
  require_minimal(g);
  const auto profile = polar_profile(g);
  const auto lnodes = l_nodes(g);

  ResolutionGraph g0 = g;
  std::vector<std::size_t> gray;
  for (const auto& e : central_edges(g)) {
    g0 = blow_up_edge(g0, e.a, e.b, Origin::central_edge_blowup);
    gray.push_back(g0.size() - 1);
  }

  const auto s = s_values_from(g0, lnodes);
  DecoratedGraph d{g0, std::vector<unsigned>(g0.size(), kNotNode), {}, {}, {}, profile, gray};
  d.s.resize(g0.size());
  d.rates.resize(g0.size());
  d.arrows.resize(g0.size());
  for (auto v : lnodes) d.kinds[v] |= kLNode;

  std::size_t edge_component = 0;
  for (const auto& c : profile.components) {
    if (c.on_edge) {
      d.arrows[gray.at(edge_component++)].push_back(c.name);
    } else {
      d.arrows[c.vertex].push_back(c.name);
      d.arrows[c.vertex].push_back(c.name);
    }
  }
  for (std::size_t v = 0; v < g0.size(); ++v) {
    if (!d.arrows[v].empty() || g0.vertex(v).origin == Origin::central_edge_blowup) d.kinds[v] |= kPNode;
    if (g0.valency(v) >= 3) d.kinds[v] |= kJunction;
    if (g0.genus(v) > 0) d.kinds[v] |= kGenusNode;
    d.s[v] = s[v];
    d.rates[v] = inner_rate(s[v], g0.vertex(v).origin == Origin::central_edge_blowup);
  }
  for (auto v : lnodes) ensure(*d.rates[v] == Rational(1), ErrorKind::internal, "L-node with rate != 1");
  return d;
}

/// Blows up every edge of Gamma_0 joining two nodes, so that nodes are
/// separated by strings.
inline DecoratedGraph separate_adjacent_nodes(const DecoratedGraph& g0) {
  DecoratedGraph d = g0;
  const std::vector<Edge> original(g0.graph.edges().begin(), g0.graph.edges().end());
  for (const auto& e : original) {
    if (!g0.is_node(e.a) || !g0.is_node(e.b)) continue;
    d.graph = blow_up_edge(d.graph, e.a, e.b, Origin::node_separation);
    d.kinds.push_back(kNotNode);
    d.s.push_back(std::nullopt);
    d.rates.push_back(std::nullopt);
    d.arrows.emplace_back();
  }
  return d;
}

inline std::vector<std::vector<std::size_t>> adjacency_of(const ResolutionGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  return adj;
}

struct GeometricDecomposition {
  DecoratedGraph gamma0;
  DecoratedGraph gamma;
  PieceList pieces;
};

inline GeometricDecomposition geometric_decomposition(const ResolutionGraph& g) {
  auto g0 = build_gamma0(g);
  auto sep = separate_adjacent_nodes(g0);
  std::vector<bool> is_node(sep.graph.size());
  for (std::size_t v = 0; v < is_node.size(); ++v) is_node[v] = sep.is_node(v);
  for (const auto& e : sep.graph.edges())
    ensure(!(is_node[e.a] && is_node[e.b]), ErrorKind::internal, "adjacent nodes after separation");
  auto pieces = pieces_from_nodes(adjacency_of(sep.graph), is_node, sep.rates);
  ensure(pieces_partition(pieces, sep.graph.size()), ErrorKind::internal, "pieces do not partition the graph");
  return {std::move(g0), std::move(sep), std::move(pieces)};
}

}  // namespace singlip
