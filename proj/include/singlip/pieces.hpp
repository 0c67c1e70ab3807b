// B(q) and A(q,q') pieces read off a graph whose nodes carry rates. Shared
// by the geometric decomposition of a surface and the carrousel
// decomposition of the plane.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "singlip/error.hpp"
#include "singlip/rational.hpp"

namespace singlip {

enum class PieceKind { B, A };

struct Piece {
  PieceKind kind = PieceKind::B;
  Rational rate{1};     // q
  Rational rate_hi{1};  // q' for A pieces, equal to `rate` for B pieces
  std::size_t anchor = 0;            // B: the node; A: endpoint with rate q
  std::size_t other_end = 0;         // A: endpoint with rate q'
  std::vector<std::size_t> members;  // B: anchor then bamboo vertices; A: string interior
  bool equal_rates = false;          // A(q,q) flag

  std::string label() const {
    if (kind == PieceKind::B) return "B(" + to_string(rate) + ")";
    return "A(" + to_string(rate) + "," + to_string(rate_hi) + ")";
  }
};

struct PieceList {
  std::vector<Piece> pieces;

  std::size_t count(PieceKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(pieces.begin(), pieces.end(), [&](const Piece& p) { return p.kind == kind; }));
  }
};

/// Builds the pieces of a tree-shaped graph: one B piece per node together
/// with its bamboos, one A piece per maximal string between two nodes. Two
/// adjacent nodes give an A piece with an empty string.
inline PieceList pieces_from_nodes(const std::vector<std::vector<std::size_t>>& adjacency,
                                   const std::vector<bool>& is_node,
                                   const std::vector<std::optional<Rational>>& rates) {
  const std::size_t n = adjacency.size();
  std::vector<std::optional<std::size_t>> owner(n);  // node owning a bamboo vertex
  std::vector<bool> in_string(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (is_node[v]) ensure(rates[v].has_value(), ErrorKind::internal, "node without a rate");
  }

  // Bamboos: walk from every non-node leaf towards the first node.
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    if (is_node[leaf] || adjacency[leaf].size() > 1) continue;
    std::vector<std::size_t> chain;
    std::size_t prev = n;
    std::size_t cur = leaf;
    while (!is_node[cur]) {
      ensure(adjacency[cur].size() <= 2, ErrorKind::internal, "non-node of valency >= 3");
      chain.push_back(cur);
      std::size_t next = n;
      for (auto w : adjacency[cur])
        if (w != prev) next = w;
      ensure(next != n, ErrorKind::internal, "bamboo without a node");
      prev = cur;
      cur = next;
    }
    for (auto v : chain) owner[v] = cur;
  }

  PieceList out;
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_node[v]) continue;
    Piece p;
    p.kind = PieceKind::B;
    p.rate = p.rate_hi = *rates[v];
    p.anchor = p.other_end = v;
    p.members.push_back(v);
    for (std::size_t u = 0; u < n; ++u)
      if (owner[u] == v) p.members.push_back(u);
    out.pieces.push_back(std::move(p));
  }

  auto make_a = [&](std::size_t end1, std::size_t end2, std::vector<std::size_t> string) {
    Piece p;
    p.kind = PieceKind::A;
    Rational q1 = *rates[end1];
    Rational q2 = *rates[end2];
    if (q2 < q1 || (q2 == q1 && end2 < end1)) {
      std::swap(end1, end2);
      std::swap(q1, q2);
    }
    p.rate = q1;
    p.rate_hi = q2;
    p.anchor = end1;
    p.other_end = end2;
    p.members = std::move(string);
    p.equal_rates = q1 == q2;
    return p;
  };

  std::vector<Piece> strings;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_node[v] || owner[v] || in_string[v]) continue;
    // Collect the maximal string through v, then order it end to end.
    std::vector<std::size_t> component{v};
    in_string[v] = true;
    std::vector<std::size_t> ends;
    for (std::size_t head = 0; head < component.size(); ++head) {
      for (auto w : adjacency[component[head]]) {
        if (is_node[w]) {
          ends.push_back(w);
        } else if (!in_string[w]) {
          ensure(!owner[w].has_value(), ErrorKind::internal, "string touches a bamboo");
          in_string[w] = true;
          component.push_back(w);
        }
      }
    }
    ensure(ends.size() == 2, ErrorKind::internal, "string does not join two nodes");
    std::vector<std::size_t> ordered;
    std::size_t prev = ends[0];
    std::size_t cur = n;
    for (auto w : adjacency[ends[0]])
      if (std::find(component.begin(), component.end(), w) != component.end()) cur = w;
    while (cur != ends[1]) {
      ordered.push_back(cur);
      std::size_t next = n;
      for (auto w : adjacency[cur])
        if (w != prev) next = w;
      prev = cur;
      cur = next;
    }
    strings.push_back(make_a(ends[0], ends[1], std::move(ordered)));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_node[v]) continue;
    for (auto w : adjacency[v])
      if (w > v && is_node[w]) strings.push_back(make_a(v, w, {}));
  }
  std::stable_sort(strings.begin(), strings.end(), [](const Piece& x, const Piece& y) {
    auto kx = std::minmax(x.anchor, x.other_end);
    auto ky = std::minmax(y.anchor, y.other_end);
    return kx < ky;
  });
  for (auto& p : strings) out.pieces.push_back(std::move(p));
  return out;
}

/// True when every vertex lies in exactly one B piece or one A string.
inline bool pieces_partition(const PieceList& list, std::size_t vertex_count) {
  std::vector<int> hits(vertex_count, 0);
  for (const auto& p : list.pieces)
    for (auto v : p.members) ++hits.at(v);
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

}  // namespace singlip
