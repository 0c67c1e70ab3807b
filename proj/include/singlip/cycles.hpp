// Fundamental cycle (Laufer's algorithm and an exhaustive oracle),
// arithmetic genus, rationality and the multiplicity of rational graphs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "singlip/error.hpp"
#include "singlip/graph.hpp"

namespace singlip {

struct LauferStep {
  std::size_t step = 0;
  std::size_t vertex = 0;
  std::int64_t pairing = 0;  // Z . E_vertex just before E_vertex is added
};

struct LauferRun {
  Cycle cycle;
  std::vector<LauferStep> trace;
};

/// Picks the next curve among the candidates (all with Z . E_v > 0, sorted
/// by vertex index).
using LauferChooser = std::function<std::size_t(std::span<const std::size_t>)>;

inline std::size_t choose_lowest(std::span<const std::size_t> candidates) { return candidates.front(); }

/// Runs Laufer's algorithm from `start`: repeatedly adds a curve E_v with
/// Z . E_v > 0 until none is left. Any positive start cycle below Z_min
/// ends at Z_min.
inline LauferRun laufer_run(Cycle start, const LauferChooser& choose = choose_lowest) {
  LauferRun run{std::move(start), {}};
  const auto& g = run.cycle.graph();
  std::vector<std::size_t> candidates;
  for (;;) {
    candidates.clear();
    for (std::size_t v = 0; v < g.size(); ++v)
      if (pair_with_curve(run.cycle, v) > 0) candidates.push_back(v);
    if (candidates.empty()) break;
    std::size_t v = choose(candidates);
    std::int64_t value = pair_with_curve(run.cycle, v);
    run.cycle.add_curve(v);
    run.trace.push_back({run.trace.size() + 1, v, value});
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    ensure(run.cycle[v] >= 1, ErrorKind::internal, "Laufer run ended with a non-positive coefficient");
  }
  return run;
}

/// Fundamental cycle starting from the reduced cycle, lowest index first.
inline LauferRun laufer_minimal_cycle(const ResolutionGraph& g) { return laufer_run(Cycle::reduced(g)); }

/// Laufer's original sequence, starting from the single curve `start`.
inline LauferRun laufer_from_curve(const ResolutionGraph& g, std::size_t start = 0,
                                   const LauferChooser& choose = choose_lowest) {
  return laufer_run(Cycle::curve(g, start), choose);
}

inline Cycle minimal_cycle(const ResolutionGraph& g) { return laufer_minimal_cycle(g).cycle; }

inline bool is_anti_nef(const Cycle& z) {
  for (std::size_t v = 0; v < z.graph().size(); ++v)
    if (pair_with_curve(z, v) > 0) return false;
  return true;
}

/// Exhaustive oracle: the coefficientwise minimum of all anti-nef cycles
/// with coefficients in [1, bound]. Partial assignments are cut as soon as
/// one curve and all its neighbours are assigned and violate Z . E_v <= 0,
/// which never drops a member of the kept set.
inline Cycle brute_force_minimal_cycle(const ResolutionGraph& g, std::int64_t bound) {
  if (bound < 1) fail(ErrorKind::invalid_value, "bound must be positive");
  const std::size_t n = g.size();

  // Breadth-first order keeps closed neighbourhoods early in the sequence.
  std::vector<std::size_t> order;
  std::vector<std::size_t> position(n, n);
  order.push_back(0);
  position[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (auto w : g.neighbors(order[head])) {
      if (position[w] == n) {
        position[w] = order.size();
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::size_t>> checkable(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t last = position[v];
    for (auto w : g.neighbors(v)) last = std::max(last, position[w]);
    checkable[last].push_back(v);
  }

  std::vector<std::int64_t> current(n, 0);
  std::vector<std::int64_t> lowest(n, bound + 1);
  std::size_t kept = 0;

  auto satisfied = [&](std::size_t v) {
    std::int64_t total = g.weight(v) * current[v];
    for (auto w : g.neighbors(v)) total += current[w];
    return total <= 0;
  };

  std::function<void(std::size_t)> descend = [&](std::size_t k) {
    if (k == n) {
      ++kept;
      for (std::size_t v = 0; v < n; ++v) lowest[v] = std::min(lowest[v], current[v]);
      return;
    }
    const std::size_t v = order[k];
    for (std::int64_t c = 1; c <= bound; ++c) {
      current[v] = c;
      bool ok = true;
      for (auto u : checkable[k]) {
        if (!satisfied(u)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(k + 1);
    }
    current[v] = 0;
  };
  descend(0);

  if (kept == 0) fail(ErrorKind::bound_too_small, "no anti-nef cycle with coefficients <= " + std::to_string(bound));
  for (auto c : lowest) {
    if (c >= bound)
      fail(ErrorKind::bound_too_small, "minimum touches the bound " + std::to_string(bound));
  }
  Cycle result(g, lowest);
  ensure(is_anti_nef(result), ErrorKind::internal,
         "coefficientwise minimum of anti-nef cycles is not anti-nef");
  return result;
}

/// The oracle with automatic doubling of the bound, from `start_bound` up
/// to `max_bound`.
inline Cycle oracle_minimal_cycle(const ResolutionGraph& g, std::int64_t start_bound = 12,
                                  std::int64_t max_bound = 48) {
  for (std::int64_t bound = start_bound;; bound *= 2) {
    try {
      return brute_force_minimal_cycle(g, bound);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::bound_too_small || bound * 2 > max_bound) throw;
    }
  }
}

/// p_a(Z) = 1 + (Z.Z + K.Z) / 2.
inline std::int64_t arithmetic_genus(const ResolutionGraph& g, const Cycle& z) {
  if (!z.graph().same_as(g)) fail(ErrorKind::graph_mismatch, "cycle lives on a different graph");
  std::int64_t kz = 0;
  for (std::size_t v = 0; v < g.size(); ++v) kz += z[v] * canonical_pairing(g, v);
  const std::int64_t twice = pair(z, z) + kz;
  ensure(twice % 2 == 0, ErrorKind::internal, "Z.Z + K.Z is odd");
  return 1 + twice / 2;
}

struct RationalityReport {
  Cycle zmin;
  std::int64_t genus_of_zmin = 0;
  bool by_genus = false;  // p_a(Z_min) == 0 and every curve rational
  bool by_steps = false;  // every Laufer step from a single curve pairs to 1
  LauferRun step_run;
};

inline RationalityReport rationality_report(const ResolutionGraph& g) {
  auto from_reduced = laufer_minimal_cycle(g);
  auto from_curve = laufer_from_curve(g, 0);
  ensure(from_reduced.cycle == from_curve.cycle, ErrorKind::internal,
         "Laufer runs from the reduced cycle and from a single curve disagree");

  RationalityReport r{from_reduced.cycle, 0, false, false, from_curve};
  r.genus_of_zmin = arithmetic_genus(g, r.zmin);
  bool all_rational_curves = true;
  for (std::size_t v = 0; v < g.size(); ++v) all_rational_curves = all_rational_curves && g.genus(v) == 0;
  r.by_genus = r.genus_of_zmin == 0 && all_rational_curves;
  r.by_steps = all_rational_curves;
  for (const auto& step : from_curve.trace) r.by_steps = r.by_steps && step.pairing == 1;
  return r;
}

inline bool is_rational(const ResolutionGraph& g) {
  auto r = rationality_report(g);
  ensure(r.by_genus == r.by_steps, ErrorKind::internal,
         "Laufer step criterion and p_a(Z_min) disagree on rationality");
  return r.by_genus;
}

inline void require_rational(const ResolutionGraph& g) {
  if (!is_rational(g)) fail(ErrorKind::not_rational, "graph is not rational");
}

/// -Z_min^2, the multiplicity of a rational singularity.
inline std::int64_t multiplicity_rational(const ResolutionGraph& g) {
  require_rational(g);
  auto z = minimal_cycle(g);
  return -pair(z, z);
}

/// Number of generic hyperplane-section arrows on each curve:
/// max(0, -Z_min . E_v).
inline std::vector<std::int64_t> hyperplane_arrows(const ResolutionGraph& g) {
  require_rational(g);
  auto z = minimal_cycle(g);
  std::vector<std::int64_t> arrows(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) arrows[v] = std::max<std::int64_t>(0, -pair_with_curve(z, v));
  return arrows;
}

}  // namespace singlip
