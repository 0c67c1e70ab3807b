// Graphs used across the suites.
#pragma once

#include <string>

#include "singlip/graph.hpp"
#include "singlip/graph_io.hpp"

namespace singlip::testing {

inline const char* const kMinimal9 = R"(vertex v1 weight=-4
vertex v2 weight=-2
vertex v3 weight=-3
vertex v4 weight=-3
vertex v5 weight=-2
vertex v6 weight=-2
vertex b1 weight=-2
vertex b2 weight=-2
vertex b3 weight=-2
edge v1 v2
edge v2 v3
edge v3 v4
edge v4 v5
edge v5 v6
edge v3 b1
edge b1 b2
edge b2 b3
)";

// Bourbaki numbering: e2 hangs off e4.
inline const char* const kE8 = R"(vertex e1 weight=-2
vertex e2 weight=-2
vertex e3 weight=-2
vertex e4 weight=-2
vertex e5 weight=-2
vertex e6 weight=-2
vertex e7 weight=-2
vertex e8 weight=-2
edge e1 e3
edge e3 e4
edge e2 e4
edge e4 e5
edge e5 e6
edge e6 e7
edge e7 e8
)";

inline ResolutionGraph minimal9() { return parse_graph_text(kMinimal9); }
inline ResolutionGraph e8() { return parse_graph_text(kE8); }
inline ResolutionGraph a2() { return parse_graph_text("vertex a weight=-2\nvertex b weight=-2\nedge a b\n"); }
inline ResolutionGraph chain_323() {
  return parse_graph_text("vertex p weight=-3\nvertex q weight=-2\nvertex r weight=-3\nedge p q\nedge q r\n");
}
inline ResolutionGraph single(int weight, int genus = 0) {
  return parse_graph_text("vertex a weight=" + std::to_string(weight) + " genus=" + std::to_string(genus) + "\n");
}

}  // namespace singlip::testing
