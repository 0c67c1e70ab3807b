// Minimal singularities: Spivakovsky's criterion, L-nodes, the s-function,
// central edges and vertices, the polar curve profile and the Lipschitz
// normal embedding verdict for rational graphs.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "singlip/cycles.hpp"
#include "singlip/error.hpp"
#include "singlip/graph.hpp"

namespace singlip {

/// A tree of rational curves with -w(v) >= valency(v) everywhere.
inline bool is_minimal(const ResolutionGraph& g) {
  if (!g.is_tree()) return false;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.genus(v) != 0) return false;
    if (-g.weight(v) < g.valency(v)) return false;
  }
  return true;
}

inline void require_minimal(const ResolutionGraph& g) {
  if (!is_minimal(g)) fail(ErrorKind::not_minimal, "graph is not minimal");
}

/// Vertices with -w(v) > valency(v), in index order.
inline std::vector<std::size_t> l_nodes(const ResolutionGraph& g) {
  require_minimal(g);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (-g.weight(v) > g.valency(v)) out.push_back(v);
  ensure(!out.empty(), ErrorKind::internal, "minimal graph without L-nodes");
  return out;
}

/// s(v): number of vertices on a shortest path from v to an L-node.
struct SValues {
  std::vector<int> values;

  int operator[](std::size_t v) const { return values.at(v); }
  std::size_t size() const { return values.size(); }
};

/// Multi-source breadth-first search, counting vertices inclusively.
inline SValues s_values_from(const ResolutionGraph& g, const std::vector<std::size_t>& sources) {
  SValues s{std::vector<int>(g.size(), 0)};
  std::queue<std::size_t> todo;
  for (auto v : sources) {
    s.values[v] = 1;
    todo.push(v);
  }
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop();
    for (auto w : g.neighbors(v)) {
      if (s.values[w] == 0) {
        s.values[w] = s.values[v] + 1;
        todo.push(w);
      }
    }
  }
  return s;
}

inline SValues s_values(const ResolutionGraph& g) { return s_values_from(g, l_nodes(g)); }

/// Edges whose endpoints share their s-value.
inline std::vector<Edge> central_edges(const ResolutionGraph& g) {
  auto s = s_values(g);
  std::vector<Edge> out;
  for (const auto& e : g.edges())
    if (s[e.a] == s[e.b]) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

/// Vertices with at least two neighbours whose s-value is one less.
inline std::vector<std::size_t> central_vertices(const ResolutionGraph& g) {
  auto s = s_values(g);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    int lower = 0;
    for (auto w : g.neighbors(v))
      if (s[w] == s[v] - 1) ++lower;
    if (lower >= 2) out.push_back(v);
  }
  return out;
}

/// One component of the generic polar curve, located on the minimal
/// resolution. Vertex components are pairs of smooth curvettes forming an
/// A_{2s-1} curve; edge components pass through the point of a central edge
/// and are irreducible A_{2(s+1)-2} curves of multiplicity 2.
struct PolarComponent {
  std::string name;
  bool on_edge = false;
  std::size_t vertex = 0;  // meaningful when !on_edge
  Edge edge;               // meaningful when on_edge
  int an_type = 0;
  int multiplicity = 1;
  int s = 0;  // s of the carrying curve (s of the new curve for edges)
};

struct PolarProfile {
  std::vector<std::int64_t> raw_incidence;  // m_v = -(S + E_v).E_v - 2
  std::vector<int> central_edge_count;      // c_v
  std::vector<int> pair_count;              // (m_v - c_v) / 2
  std::vector<PolarComponent> components;   // vertices in index order, then edges
};

inline PolarProfile polar_profile(const ResolutionGraph& g) {
  require_minimal(g);
  const auto s = s_values(g);
  const auto central = central_edges(g);
  const Cycle big_s(g, std::vector<std::int64_t>(s.values.begin(), s.values.end()));

  PolarProfile p;
  p.raw_incidence.resize(g.size());
  p.central_edge_count.assign(g.size(), 0);
  p.pair_count.resize(g.size());
  for (const auto& e : central) {
    ++p.central_edge_count[e.a];
    ++p.central_edge_count[e.b];
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    const std::int64_t m = -(pair_with_curve(big_s, v) + g.weight(v)) - 2;
    p.raw_incidence[v] = m;
    const std::int64_t rest = m - p.central_edge_count[v];
    if (m < 0 || rest < 0 || rest % 2 != 0) {
      fail(ErrorKind::theorem_reading,
           "polar incidence at '" + g.id(v) + "' is m=" + std::to_string(m) + " with " +
               std::to_string(p.central_edge_count[v]) + " central edges; cannot split into pairs");
    }
    p.pair_count[v] = static_cast<int>(rest / 2);
  }
  for (auto v : central_vertices(g)) {
    ensure(p.pair_count[v] >= 1, ErrorKind::theorem_reading,
           "central vertex '" + g.id(v) + "' carries no polar curvette");
  }

  int next = 1;
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (int k = 0; k < p.pair_count[v]; ++k) {
      PolarComponent c;
      c.name = "C" + std::to_string(next++);
      c.vertex = v;
      c.s = s[v];
      c.an_type = 2 * s[v] - 1;
      c.multiplicity = 1;
      p.components.push_back(c);
    }
  }
  for (const auto& e : central) {
    PolarComponent c;
    c.name = "C" + std::to_string(next++);
    c.on_edge = true;
    c.edge = e;
    c.s = s[e.a] + 1;
    c.an_type = 2 * c.s - 2;
    c.multiplicity = 2;
    p.components.push_back(c);
  }
  return p;
}

enum class LneVerdict { lne, not_lne, unknown };

constexpr std::string_view to_string(LneVerdict v) {
  switch (v) {
    case LneVerdict::lne: return "LNE";
    case LneVerdict::not_lne: return "NotLNE";
    case LneVerdict::unknown: return "Unknown";
  }
  return "Unknown";
}

struct LneDecision {
  LneVerdict verdict = LneVerdict::unknown;
  bool rational = false;
  bool minimal = false;
  bool reduced_zmin = false;
};

/// For rational graphs: LNE exactly when minimal. Non-rational graphs get
/// no verdict, since LNE non-minimal examples exist there.
inline LneDecision decide_lne(const ResolutionGraph& g) {
  LneDecision d;
  d.rational = is_rational(g);
  d.minimal = is_minimal(g);
  d.reduced_zmin = minimal_cycle(g).is_reduced();
  if (!d.rational) return d;
  ensure(d.minimal == d.reduced_zmin, ErrorKind::internal,
         "Spivakovsky's criterion and the reduced fundamental cycle disagree");
  d.verdict = d.minimal ? LneVerdict::lne : LneVerdict::not_lne;
  return d;
}

inline LneVerdict is_lne(const ResolutionGraph& g) { return decide_lne(g).verdict; }

}  // namespace singlip
