// Weighted dual resolution graphs, cycles on them, the intersection pairing
// and point blow-ups.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "singlip/error.hpp"

namespace singlip {

enum class Origin { original, central_edge_blowup, node_separation, free_blowup };

constexpr std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::original: return "original";
    case Origin::central_edge_blowup: return "central-edge-blowup";
    case Origin::node_separation: return "node-separation";
    case Origin::free_blowup: return "free-blowup";
  }
  return "original";
}

struct Vertex {
  std::string id;
  int weight = -1;
  int genus = 0;
  Origin origin = Origin::original;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Undirected edge between vertex indices, stored with `a <= b`.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  Edge() = default;
  Edge(std::size_t u, std::size_t v) : a(std::min(u, v)), b(std::max(u, v)) {}

  std::size_t other(std::size_t v) const { return v == a ? b : a; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

/// Leading principal minors of a symmetric integer matrix, computed with
/// fraction-free (Bareiss) elimination. Stops early at the first zero minor;
/// the returned vector then ends with that zero.
inline std::vector<BigInt> leading_principal_minors(
    const std::vector<std::vector<std::int64_t>>& matrix) {
  const std::size_t n = matrix.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = matrix[i][j];

  std::vector<BigInt> minors;
  minors.reserve(n);
  BigInt previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(m[k][k]);
    if (m[k][k] == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
      }
    }
    previous = m[k][k];
  }
  return minors;
}

}  // namespace detail

/// Dual graph of a resolution: vertices are exceptional curves weighted by
/// self-intersection and genus, edges are intersection points (parallel
/// edges allowed). Instances are immutable and always validated: connected,
/// weights <= -1 and a negative definite intersection matrix.
class ResolutionGraph {
 public:
  /// Builds and validates a graph from vertex records and id pairs.
  ResolutionGraph(std::vector<Vertex> vertices,
                  const std::vector<std::pair<std::string, std::string>>& edges) {
    auto data = std::make_shared<Data>();
    data->vertices = std::move(vertices);
    index_vertices(*data);
    for (const auto& [u, v] : edges) {
      auto iu = data->index.find(u);
      auto iv = data->index.find(v);
      if (iu == data->index.end())
        fail(ErrorKind::dangling_edge, "edge endpoint '" + u + "' is not a declared vertex");
      if (iv == data->index.end())
        fail(ErrorKind::dangling_edge, "edge endpoint '" + v + "' is not a declared vertex");
      data->edges.emplace_back(iu->second, iv->second);
    }
    finish(std::move(data));
  }

  static ResolutionGraph from_indices(std::vector<Vertex> vertices, std::vector<Edge> edges) {
    auto data = std::make_shared<Data>();
    data->vertices = std::move(vertices);
    index_vertices(*data);
    for (const auto& e : edges) {
      if (e.b >= data->vertices.size())
        fail(ErrorKind::dangling_edge, "edge endpoint index out of range");
    }
    data->edges = std::move(edges);
    ResolutionGraph g;
    g.finish(std::move(data));
    return g;
  }

  std::size_t size() const { return data_->vertices.size(); }
  const Vertex& vertex(std::size_t i) const { return data_->vertices.at(i); }
  std::span<const Vertex> vertices() const { return data_->vertices; }
  std::span<const Edge> edges() const { return data_->edges; }
  const std::string& id(std::size_t i) const { return vertex(i).id; }
  int weight(std::size_t i) const { return vertex(i).weight; }
  int genus(std::size_t i) const { return vertex(i).genus; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = data_->index.find(std::string(id));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view id) const {
    auto i = find(id);
    if (!i) fail(ErrorKind::unknown_vertex, "unknown vertex '" + std::string(id) + "'");
    return *i;
  }

  /// Neighbours of `i`, repeated according to edge multiplicity.
  std::span<const std::size_t> neighbors(std::size_t i) const { return data_->adjacency.at(i); }

  /// Number of edge ends at `i` (the valency nu).
  int valency(std::size_t i) const { return static_cast<int>(neighbors(i).size()); }

  int edge_multiplicity(std::size_t i, std::size_t j) const {
    return static_cast<int>(std::count(neighbors(i).begin(), neighbors(i).end(), j));
  }

  bool is_tree() const { return data_->edges.size() + 1 == size() && !has_parallel_edges(); }

  bool has_parallel_edges() const {
    std::vector<Edge> sorted = data_->edges;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }

  /// E_i . E_j: the weight on the diagonal, the number of edges off it.
  std::int64_t intersection(std::size_t i, std::size_t j) const {
    if (i == j) return weight(i);
    return edge_multiplicity(i, j);
  }

  std::vector<std::vector<std::int64_t>> intersection_matrix() const {
    std::vector<std::vector<std::int64_t>> m(size(), std::vector<std::int64_t>(size(), 0));
    for (std::size_t i = 0; i < size(); ++i) m[i][i] = weight(i);
    for (const auto& e : edges()) {
      m[e.a][e.b] += 1;
      m[e.b][e.a] += 1;
    }
    return m;
  }

  bool same_as(const ResolutionGraph& other) const {
    return data_ == other.data_ ||
           (data_->vertices == other.data_->vertices && data_->edges == other.data_->edges);
  }

  friend bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) { return a.same_as(b); }

 private:
  struct Data {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> adjacency;
  };

  ResolutionGraph() = default;

  static void index_vertices(Data& data) {
    if (data.vertices.empty()) fail(ErrorKind::invalid_value, "graph has no vertices");
    for (std::size_t i = 0; i < data.vertices.size(); ++i) {
      const auto& v = data.vertices[i];
      if (v.id.empty()) fail(ErrorKind::invalid_value, "empty vertex id");
      if (!data.index.emplace(v.id, i).second)
        fail(ErrorKind::duplicate_vertex, "duplicate vertex id '" + v.id + "'");
      if (v.weight > -1)
        fail(ErrorKind::invalid_value,
             "vertex '" + v.id + "' has weight " + std::to_string(v.weight) + " > -1");
      if (v.genus < 0) fail(ErrorKind::invalid_value, "vertex '" + v.id + "' has negative genus");
    }
  }

  void finish(std::shared_ptr<Data> data) {
    const std::size_t n = data->vertices.size();
    data->adjacency.assign(n, {});
    for (const auto& e : data->edges) {
      if (e.a == e.b)
        fail(ErrorKind::invalid_value, "self-loop at vertex '" + data->vertices[e.a].id + "'");
      data->adjacency[e.a].push_back(e.b);
      data->adjacency[e.b].push_back(e.a);
    }
    for (auto& nbrs : data->adjacency) std::sort(nbrs.begin(), nbrs.end());
    data_ = std::move(data);

    if (!connected()) fail(ErrorKind::disconnected, "graph is not connected");
    auto minors = detail::leading_principal_minors(negated_matrix());
    for (std::size_t k = 0; k < minors.size(); ++k) {
      if (minors[k] <= 0) {
        fail(ErrorKind::not_negative_definite,
             "intersection matrix is not negative definite (leading minor of order " +
                 std::to_string(k + 1) + " of -M is " + minors[k].str() + ")");
      }
    }
  }

  std::vector<std::vector<std::int64_t>> negated_matrix() const {
    auto m = intersection_matrix();
    for (auto& row : m)
      for (auto& x : row) x = -x;
    return m;
  }

  bool connected() const {
    std::vector<bool> seen(size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop();
      for (auto w : neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          todo.push(w);
        }
      }
    }
    return count == size();
  }

  std::shared_ptr<const Data> data_;
};

/// Integer divisor supported on the exceptional curves of a graph.
class Cycle {
 public:
  Cycle(ResolutionGraph graph, std::vector<std::int64_t> coefficients)
      : graph_(std::move(graph)), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != graph_.size())
      fail(ErrorKind::graph_mismatch, "cycle has " + std::to_string(coefficients_.size()) +
                                          " coefficients for a graph with " +
                                          std::to_string(graph_.size()) + " vertices");
  }

  static Cycle zero(const ResolutionGraph& g) { return Cycle(g, std::vector<std::int64_t>(g.size(), 0)); }
  static Cycle reduced(const ResolutionGraph& g) { return Cycle(g, std::vector<std::int64_t>(g.size(), 1)); }
  static Cycle curve(const ResolutionGraph& g, std::size_t i) {
    auto z = zero(g);
    z.coefficients_.at(i) = 1;
    return z;
  }
  static Cycle curve(const ResolutionGraph& g, std::string_view id) { return curve(g, g.index_of(id)); }

  const ResolutionGraph& graph() const { return graph_; }
  std::span<const std::int64_t> coefficients() const { return coefficients_; }
  std::int64_t operator[](std::size_t i) const { return coefficients_.at(i); }
  std::int64_t at(std::string_view id) const { return coefficients_.at(graph_.index_of(id)); }

  bool is_reduced() const {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](auto c) { return c == 1; });
  }

  Cycle& add_curve(std::size_t i, std::int64_t times = 1) {
    coefficients_.at(i) += times;
    return *this;
  }

  friend Cycle operator+(const Cycle& x, const Cycle& y) { return combine(x, y, 1); }
  friend Cycle operator-(const Cycle& x, const Cycle& y) { return combine(x, y, -1); }

  friend bool operator==(const Cycle& x, const Cycle& y) {
    return x.graph_.same_as(y.graph_) && x.coefficients_ == y.coefficients_;
  }

  /// Coefficientwise <=.
  bool leq(const Cycle& other) const {
    require_same_graph(*this, other);
    for (std::size_t i = 0; i < coefficients_.size(); ++i)
      if (coefficients_[i] > other.coefficients_[i]) return false;
    return true;
  }

  static void require_same_graph(const Cycle& x, const Cycle& y) {
    if (!x.graph_.same_as(y.graph_)) fail(ErrorKind::graph_mismatch, "cycles live on different graphs");
  }

 private:
  static Cycle combine(const Cycle& x, const Cycle& y, std::int64_t sign) {
    require_same_graph(x, y);
    auto z = x;
    for (std::size_t i = 0; i < z.coefficients_.size(); ++i) z.coefficients_[i] += sign * y.coefficients_[i];
    return z;
  }

  ResolutionGraph graph_;
  std::vector<std::int64_t> coefficients_;
};

/// Intersection pairing Z1 . Z2.
inline std::int64_t pair(const Cycle& z1, const Cycle& z2) {
  Cycle::require_same_graph(z1, z2);
  const auto& g = z1.graph();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) total += g.weight(i) * z1[i] * z2[i];
  for (const auto& e : g.edges()) total += z1[e.a] * z2[e.b] + z1[e.b] * z2[e.a];
  return total;
}

/// Z . E_i without materialising E_i.
inline std::int64_t pair_with_curve(const Cycle& z, std::size_t i) {
  const auto& g = z.graph();
  std::int64_t total = g.weight(i) * z[i];
  for (auto j : g.neighbors(i)) total += z[j];
  return total;
}

/// K . E_v by adjunction.
inline std::int64_t canonical_pairing(const ResolutionGraph& g, std::size_t i) {
  return -static_cast<std::int64_t>(g.weight(i)) - 2 + 2 * static_cast<std::int64_t>(g.genus(i));
}

inline std::int64_t canonical_pairing(const ResolutionGraph& g, std::string_view id) {
  return canonical_pairing(g, g.index_of(id));
}

namespace detail {

/// Next unused generated id of the form bu<N>.
inline std::string next_blowup_id(const ResolutionGraph& g) {
  long highest = 0;
  for (const auto& v : g.vertices()) {
    if (v.id.size() > 2 && v.id.compare(0, 2, "bu") == 0 &&
        std::all_of(v.id.begin() + 2, v.id.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        v.id.size() < 12) {
      highest = std::max(highest, std::stol(v.id.substr(2)));
    }
  }
  return "bu" + std::to_string(highest + 1);
}

}  // namespace detail

/// Blows up the intersection point of the curves joined by edge {u, v}.
/// The new (-1)-curve sits between them; one copy of the edge is replaced.
inline ResolutionGraph blow_up_edge(const ResolutionGraph& g, std::size_t u, std::size_t v,
                                    Origin origin = Origin::central_edge_blowup) {
  const Edge target(u, v);
  auto pos = std::find(g.edges().begin(), g.edges().end(), target);
  if (u >= g.size() || v >= g.size() || pos == g.edges().end()) {
    fail(ErrorKind::unknown_edge, "no edge between the given vertices");
  }
  std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
  const std::size_t fresh = vertices.size();
  vertices.push_back(Vertex{detail::next_blowup_id(g), -1, 0, origin});
  vertices[u].weight -= 1;
  vertices[v].weight -= 1;

  std::vector<Edge> edges;
  edges.reserve(g.edges().size() + 1);
  bool replaced = false;
  for (const auto& e : g.edges()) {
    if (!replaced && e == target) {
      edges.emplace_back(target.a, fresh);
      edges.emplace_back(fresh, target.b);
      replaced = true;
    } else {
      edges.push_back(e);
    }
  }
  return ResolutionGraph::from_indices(std::move(vertices), std::move(edges));
}

inline ResolutionGraph blow_up_edge(const ResolutionGraph& g, std::string_view u, std::string_view v,
                                    Origin origin = Origin::central_edge_blowup) {
  auto iu = g.find(u);
  auto iv = g.find(v);
  if (!iu || !iv) fail(ErrorKind::unknown_edge, "no edge " + std::string(u) + "-" + std::string(v));
  return blow_up_edge(g, *iu, *iv, origin);
}

/// Blows up a smooth point of E_v lying on no other exceptional curve.
inline ResolutionGraph blow_up_free(const ResolutionGraph& g, std::size_t v) {
  if (v >= g.size()) fail(ErrorKind::unknown_vertex, "vertex index out of range");
  std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
  const std::size_t fresh = vertices.size();
  vertices.push_back(Vertex{detail::next_blowup_id(g), -1, 0, Origin::free_blowup});
  vertices[v].weight -= 1;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.emplace_back(v, fresh);
  return ResolutionGraph::from_indices(std::move(vertices), std::move(edges));
}

inline ResolutionGraph blow_up_free(const ResolutionGraph& g, std::string_view v) {
  return blow_up_free(g, g.index_of(v));
}

}  // namespace singlip
