// Plane curve collections (A_n curves, the discriminant of a generic
// projection of a minimal singularity), their embedded resolution trees
// decorated with rates, and the carrousel decomposition.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "singlip/decomposition.hpp"
#include "singlip/error.hpp"
#include "singlip/minimality.hpp"
#include "singlip/pieces.hpp"
#include "singlip/puiseux.hpp"
#include "singlip/rational.hpp"

namespace singlip {

struct CurveBranch {
  std::string name;
  PuiseuxBranch series;
  bool generic = false;  // coefficients are stand-ins; only contacts and exponents are meaningful
};

/// Named plane branches with their symmetric, ultrametric contact matrix.
class CurveCollection {
 public:
  /// Contacts are computed from the explicit series.
  static CurveCollection from_explicit(const std::vector<NamedBranch>& named) {
    CurveCollection c;
    for (const auto& nb : named) c.branches_.push_back({nb.name, nb.branch, false});
    c.compute_contacts();
    c.validate();
    return c;
  }

  /// Branches known only by their characteristic exponent (none for smooth
  /// branches) and prescribed contacts. Series are materialised with small
  /// distinct coefficients and checked to realise the contacts under two
  /// different coefficient assignments.
  static CurveCollection from_generic(const std::vector<std::string>& names,
                                      const std::vector<std::optional<Rational>>& exponents,
                                      const std::vector<std::vector<Rational>>& contacts) {
    const std::size_t n = names.size();
    ensure(exponents.size() == n && contacts.size() == n, ErrorKind::invalid_value, "size mismatch");
    CurveCollection c;
    c.contacts_ = contacts;
    for (std::size_t i = 0; i < n; ++i) {
      ensure(contacts[i].size() == n, ErrorKind::invalid_value, "contact matrix is not square");
      c.branches_.push_back({names[i], materialize(i, exponents, contacts, 0), true});
    }
    c.validate();
    for (int offset : {0, 5}) {
      for (std::size_t i = 0; i < n; ++i) {
        auto bi = materialize(i, exponents, contacts, offset);
        auto chars = characteristic_exponents(bi);
        ensure(chars.size() == (exponents[i] ? 1u : 0u) && (!exponents[i] || chars[0] == *exponents[i]),
               ErrorKind::internal, "materialised branch has the wrong characteristic exponents");
        for (std::size_t j = i + 1; j < n; ++j) {
          auto bj = materialize(j, exponents, contacts, offset);
          ensure(contact_exponent(bi, bj) == contacts[i][j], ErrorKind::internal,
                 "materialised branches " + names[i] + ", " + names[j] + " do not realise contact " +
                     to_string(contacts[i][j]));
        }
      }
    }
    return c;
  }

  std::size_t size() const { return branches_.size(); }
  const CurveBranch& branch(std::size_t i) const { return branches_.at(i); }
  std::span<const CurveBranch> branches() const { return branches_; }
  const Rational& contact(std::size_t i, std::size_t j) const { return contacts_.at(i).at(j); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < branches_.size(); ++i)
      if (branches_[i].name == name) return i;
    fail(ErrorKind::unknown_branch, "unknown branch '" + std::string(name) + "'");
  }

  bool is_ultrametric() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          if (contacts_[i][j] < std::min(contacts_[i][k], contacts_[k][j])) return false;
        }
    return true;
  }

 private:
  void compute_contacts() {
    const std::size_t n = branches_.size();
    contacts_.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        contacts_[i][j] = contacts_[j][i] = contact_exponent(branches_[i].series, branches_[j].series);
  }

  void validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (branches_[i].name == branches_[j].name)
          fail(ErrorKind::invalid_value, "duplicate branch name '" + branches_[i].name + "'");
        if (contacts_[i][j] != contacts_[j][i]) fail(ErrorKind::ultrametric, "contact matrix is not symmetric");
        if (contacts_[i][j] <= Rational(0)) fail(ErrorKind::ultrametric, "contacts must be positive");
      }
    }
    if (!is_ultrametric()) fail(ErrorKind::ultrametric, "contacts are not ultrametric");
  }

  static std::int64_t floor_of(const Rational& q) { return q.numerator() / q.denominator(); }

  /// Integer terms 1..K carry the index of the class of `i` under
  /// "contact > k"; a cusp gets its exponent with the index of its class
  /// under "contact > e".
  static PuiseuxBranch materialize(std::size_t i, const std::vector<std::optional<Rational>>& exponents,
                                   const std::vector<std::vector<Rational>>& contacts, int offset) {
    const std::size_t n = exponents.size();
    auto class_index = [&](const Rational& level) {
      // Classes are numbered by their smallest member.
      std::vector<std::size_t> representatives;
      for (std::size_t j = 0; j < n; ++j) {
        bool fresh = true;
        for (auto r : representatives)
          if (contacts[r][j] > level) fresh = false;
        if (fresh) representatives.push_back(j);
      }
      for (std::size_t k = 0; k < representatives.size(); ++k) {
        auto r = representatives[k];
        if (r == i || contacts[r][i] > level) return static_cast<std::int64_t>(k + 1 + offset);
      }
      return static_cast<std::int64_t>(1 + offset);
    };
    std::int64_t top = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) top = std::max(top, floor_of(contacts[i][j]));
    std::vector<PuiseuxTerm> terms;
    for (std::int64_t k = 1; k <= top; ++k) {
      if (exponents[i] && Rational(k) == *exponents[i]) continue;
      terms.push_back({Rational(k), Rational(class_index(Rational(k)))});
    }
    if (exponents[i]) {
      terms.push_back({*exponents[i], Rational(class_index(*exponents[i]))});
      std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
      // A cusp must not carry integer terms that would change its
      // characteristic exponent; integer terms never do.
    }
    return PuiseuxBranch(std::move(terms));
  }

  std::vector<CurveBranch> branches_;
  std::vector<std::vector<Rational>> contacts_;
};

/// A_n curve: two smooth branches with contact (n+1)/2 for odd n, one
/// branch with characteristic exponent (n+1)/2 for even n >= 2, a smooth
/// branch for n = 0.
inline CurveCollection an_curve(int n, const std::string& prefix) {
  if (n < 0) fail(ErrorKind::invalid_value, "A_n needs n >= 0");
  if (n == 0) return CurveCollection::from_generic({prefix}, {std::nullopt}, {{Rational(0)}});
  if (n % 2 == 0)
    return CurveCollection::from_generic({prefix}, {Rational(n + 1, 2)}, {{Rational(0)}});
  Rational c((n + 1) / 2);
  return CurveCollection::from_generic({prefix + "a", prefix + "b"}, {std::nullopt, std::nullopt},
                                       {{Rational(0), c}, {c, Rational(0)}});
}

/// One component of the discriminant, attached to a Gamma_0 vertex.
struct DiscriminantComponent {
  std::string polar_name;  // C_k
  std::size_t gamma0_vertex = 0;
  int an_type = 0;
  std::vector<std::size_t> branches;  // indices into the collection
};

struct Discriminant {
  CurveCollection curves;
  std::vector<DiscriminantComponent> components;
};

namespace detail {

/// Minimum of s along the unique tree path between u and w.
inline int min_s_on_path(const ResolutionGraph& g, const std::vector<std::optional<int>>& s, std::size_t u,
                         std::size_t w) {
  std::vector<std::size_t> parent(g.size(), g.size());
  std::queue<std::size_t> todo;
  parent[u] = u;
  todo.push(u);
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop();
    for (auto x : g.neighbors(v)) {
      if (parent[x] == g.size()) {
        parent[x] = v;
        todo.push(x);
      }
    }
  }
  int best = *s.at(w);
  for (std::size_t v = w; v != u; v = parent[v]) best = std::min(best, *s.at(v));
  return std::min(best, *s.at(u));
}

}  // namespace detail

/// The discriminant of a generic projection as a union of A_n curves: an
/// A_{2s-1} pair per polar pair, an A_{2s-2} cusp per central-edge
/// component, contacts given by the minimum of s on Gamma_0 paths.
inline Discriminant discriminant_collection(const DecoratedGraph& g0) {
  const auto& profile = g0.profile;
  std::vector<std::string> names;
  std::vector<std::optional<Rational>> exponents;
  std::vector<std::size_t> anchor;
  Discriminant out;

  std::size_t edge_component = 0;
  for (const auto& c : profile.components) {
    DiscriminantComponent dc;
    dc.polar_name = c.name;
    dc.an_type = c.an_type;
    const std::string base = "Δ" + c.name.substr(1);
    if (c.on_edge) {
      dc.gamma0_vertex = g0.gray.at(edge_component++);
      ensure(*g0.s.at(dc.gamma0_vertex) == c.s, ErrorKind::internal, "s of the gray vertex is off");
      dc.branches.push_back(names.size());
      names.push_back(base);
      exponents.push_back(Rational(2 * c.s - 1, 2));
      anchor.push_back(dc.gamma0_vertex);
    } else {
      dc.gamma0_vertex = c.vertex;
      for (const char* suffix : {"a", "b"}) {
        dc.branches.push_back(names.size());
        names.push_back(base + suffix);
        exponents.push_back(std::nullopt);
        anchor.push_back(c.vertex);
      }
    }
    out.components.push_back(std::move(dc));
  }

  const std::size_t n = names.size();
  std::vector<std::vector<Rational>> contacts(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      contacts[i][j] = contacts[j][i] = Rational(detail::min_s_on_path(g0.graph, g0.s, anchor[i], anchor[j]));

  if (n == 0) fail(ErrorKind::invalid_value, "the polar curve is empty: the graph resolves a smooth point");
  try {
    out.curves = CurveCollection::from_generic(names, exponents, contacts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ultrametric) fail(ErrorKind::internal, std::string("discriminant: ") + e.what());
    throw;
  }
  return out;
}

/// How a vertex of a plane resolution tree was created.
enum class TreeEvent { root, free, satellite };

struct TreeVertex {
  FractionPair rate;  // unreduced: the denominator is the curvette multiplicity
  TreeEvent event = TreeEvent::root;
  std::size_t on = 0;     // free: the curve carrying the centre; satellite: first curve
  std::size_t other = 0;  // satellite: second curve
};

struct TreeArrow {
  std::string branch;
  std::size_t vertex = 0;
};

/// Dual graph of the exceptional curves of a sequence of point blow-ups,
/// vertices in creation order (vertex 0 is the first blow-up).
struct PlaneTree {
  std::vector<TreeVertex> vertices;
  std::vector<Edge> edges;
  std::vector<TreeArrow> arrows;

  std::size_t size() const { return vertices.size(); }
  Rational rate(std::size_t v) const { return vertices.at(v).rate.value(); }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (const auto& e : edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  std::vector<std::string> arrows_at(std::size_t v) const {
    std::vector<std::string> out;
    for (const auto& a : arrows)
      if (a.vertex == v) out.push_back(a.branch);
    return out;
  }

  /// Root, vertices carrying arrows and vertices of valency >= 3.
  std::vector<bool> nodes() const {
    auto adj = adjacency();
    std::vector<bool> out(size(), false);
    if (!out.empty()) out[0] = true;
    for (std::size_t v = 0; v < size(); ++v)
      if (adj[v].size() >= 3) out[v] = true;
    for (const auto& a : arrows) out[a.vertex] = true;
    return out;
  }
};

namespace detail {

struct PathStep {
  FractionPair rate;
  TreeEvent event = TreeEvent::root;
  std::ptrdiff_t on = -1;     // position on the same path
  std::ptrdiff_t other = -1;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Blow-up centres followed by one branch: Stern-Brocot descent towards its
/// characteristic exponent (or an integer target for smooth branches), then
/// free points with rate step 1/multiplicity until the rate reaches `reach`.
inline std::vector<PathStep> branch_path(const std::optional<Rational>& exponent, const Rational& reach) {
  std::vector<PathStep> path;
  const Rational target = exponent ? *exponent : Rational(std::max<std::int64_t>(1, (reach.numerator() + reach.denominator() - 1) / reach.denominator()));
  FractionPair lo{0, 1};
  FractionPair hi{1, 0};
  std::ptrdiff_t lo_pos = -1;
  std::ptrdiff_t hi_pos = -1;
  for (;;) {
    PathStep step;
    step.rate = mediant(lo, hi);
    if (lo_pos < 0 && hi_pos < 0) {
      step.event = TreeEvent::root;
    } else if (hi_pos < 0) {
      step.event = TreeEvent::free;
      step.on = lo_pos;
    } else {
      ensure(lo_pos >= 0, ErrorKind::internal, "descent below rate 1");
      step.event = TreeEvent::satellite;
      step.on = lo_pos;
      step.other = hi_pos;
    }
    path.push_back(step);
    const auto pos = static_cast<std::ptrdiff_t>(path.size()) - 1;
    const Rational value = step.rate.value();
    if (value == target) break;
    if (value < target) {
      lo = step.rate;
      lo_pos = pos;
    } else {
      hi = step.rate;
      hi_pos = pos;
    }
    ensure(path.size() < 10'000, ErrorKind::internal, "runaway descent");
  }
  while (path.back().rate.value() < reach) {
    PathStep step;
    step.rate = {path.back().rate.num + 1, path.back().rate.den};
    step.event = TreeEvent::free;
    step.on = static_cast<std::ptrdiff_t>(path.size()) - 1;
    path.push_back(step);
  }
  return path;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Minimal embedded resolution of a collection of smooth and
/// one-characteristic-exponent branches, built from exponents and contacts.
/// Two branches pass through the same centre while their paths agree and
/// every free centre lies on a curve of rate below their contact.
inline PlaneTree resolution_tree(const CurveCollection& c) {
  const std::size_t n = c.size();
  if (n == 0) fail(ErrorKind::invalid_value, "empty curve collection");
  std::vector<std::optional<Rational>> exponent(n);
  std::vector<std::vector<detail::PathStep>> paths(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto chars = characteristic_exponents(c.branch(i).series);
    if (chars.size() > 1)
      fail(ErrorKind::unsupported_branch,
           "branch '" + c.branch(i).name + "' has more than one characteristic exponent");
    if (!c.branch(i).series.is_axis() && c.branch(i).series.first_exponent() < Rational(1))
      fail(ErrorKind::unsupported_branch, "branch '" + c.branch(i).name + "' is not a graph over x");
    if (!chars.empty()) exponent[i] = chars[0];
    Rational reach(1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) reach = std::max(reach, c.contact(i, j));
    paths[i] = detail::branch_path(exponent[i], reach);
  }

  // Slot (i, k) is position k on the path of branch i.
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + paths[i].size();
  detail::UnionFind uf(offset[n]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational contact = c.contact(i, j);
      for (std::size_t k = 0; k < std::min(paths[i].size(), paths[j].size()); ++k) {
        const auto& step = paths[i][k];
        if (!(step == paths[j][k])) break;
        if (step.event == TreeEvent::free && !(paths[i][step.on].rate.value() < contact)) break;
        uf.unite(offset[i] + k, offset[j] + k);
      }
    }
  }

  // Number the classes in creation order: by path position, then branch.
  std::map<std::size_t, std::size_t> vertex_of_class;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (position, branch)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < paths[i].size(); ++k) slots.emplace_back(k, i);
  std::sort(slots.begin(), slots.end());

  PlaneTree tree;
  auto slot_vertex = [&](std::size_t i, std::size_t k) { return vertex_of_class.at(uf.find(offset[i] + k)); };
  for (const auto& [k, i] : slots) {
    const auto cls = uf.find(offset[i] + k);
    const auto& step = paths[i][k];
    auto found = vertex_of_class.find(cls);
    if (found != vertex_of_class.end()) {
      const auto& existing = tree.vertices[found->second];
      ensure(existing.rate == step.rate, ErrorKind::internal, "merged centres disagree on the rate");
      continue;
    }
    TreeVertex v;
    v.rate = step.rate;
    v.event = step.event;
    const std::size_t fresh = tree.vertices.size();
    if (step.event == TreeEvent::free) {
      v.on = slot_vertex(i, static_cast<std::size_t>(step.on));
      tree.edges.emplace_back(v.on, fresh);
    } else if (step.event == TreeEvent::satellite) {
      v.on = slot_vertex(i, static_cast<std::size_t>(step.on));
      v.other = slot_vertex(i, static_cast<std::size_t>(step.other));
      auto it = std::find(tree.edges.begin(), tree.edges.end(), Edge(v.on, v.other));
      ensure(it != tree.edges.end(), ErrorKind::internal, "satellite centre off an intersection point");
      tree.edges.erase(it);
      tree.edges.emplace_back(v.on, fresh);
      tree.edges.emplace_back(v.other, fresh);
    } else {
      ensure(fresh == 0, ErrorKind::internal, "second root");
    }
    tree.vertices.push_back(v);
    vertex_of_class.emplace(cls, fresh);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  for (std::size_t i = 0; i < n; ++i) tree.arrows.push_back({c.branch(i).name, slot_vertex(i, paths[i].size() - 1)});
  ensure(tree.edges.size() + 1 == tree.vertices.size(), ErrorKind::internal, "resolution graph is not a tree");
  return tree;
}

/// B(1) at the root, B(q) per other node with its bamboos, A(q,q') per
/// maximal string between nodes.
inline PieceList carrousel_pieces(const PlaneTree& t) {
  std::vector<std::optional<Rational>> rates(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) rates[v] = t.rate(v);
  return pieces_from_nodes(t.adjacency(), t.nodes(), rates);
}

/// Node rates of the tree other than the root.
inline std::vector<Rational> non_root_node_rates(const PlaneTree& t) {
  auto is_node = t.nodes();
  std::vector<Rational> out;
  for (std::size_t v = 1; v < t.size(); ++v)
    if (is_node[v]) out.push_back(t.rate(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace singlip
