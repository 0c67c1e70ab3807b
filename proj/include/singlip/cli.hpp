// The singlip command-line driver. `run` takes the arguments after the
// program name and writes to the given streams, so tests can call it
// directly.
#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "singlip/cycles.hpp"
#include "singlip/decomposition.hpp"
#include "singlip/dot.hpp"
#include "singlip/error.hpp"
#include "singlip/graph.hpp"
#include "singlip/graph_io.hpp"
#include "singlip/minimality.hpp"
#include "singlip/plane_curves.hpp"
#include "singlip/puiseux.hpp"

namespace singlip::cli {

enum class Format { text, json, dot };

struct Options {
  std::string command;
  std::string file;
  std::vector<std::string> names;  // contact: the two branch names
  Format format = Format::text;
  bool trace = false;
  bool oracle = false;
};

namespace detail {

using json = nlohmann::ordered_json;

inline std::string read_input(const std::string& file, std::istream& in) {
  if (file == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(file, std::ios::binary);
  if (!f) fail(ErrorKind::io, "cannot open '" + file + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

// JSON by suffix, or on stdin when the text opens with '{'.
inline ResolutionGraph load_graph(const Options& o, std::istream& in) {
  auto text = read_input(o.file, in);
  const auto first = text.find_first_not_of(" \t\r\n");
  return parse_graph(text, ends_with(o.file, ".json") || (first != std::string::npos && text[first] == '{'));
}

inline std::int64_t oracle_bound() {
  const char* env = std::getenv("SINGLIP_ORACLE_BOUND");
  if (env == nullptr) return 12;
  auto bound = parse_integer(env);
  if (bound < 1) fail(ErrorKind::usage, "SINGLIP_ORACLE_BOUND must be positive");
  return bound;
}

inline void require_format(const Options& o, std::initializer_list<Format> allowed) {
  for (auto f : allowed)
    if (f == o.format) return;
  fail(ErrorKind::usage, "output format not supported by '" + o.command + "'");
}

inline std::string join_ids(const ResolutionGraph& g, const std::vector<std::size_t>& vs) {
  std::string out;
  for (auto v : vs) out += (out.empty() ? "" : " ") + g.id(v);
  return out;
}

inline std::string edge_name(const ResolutionGraph& g, const Edge& e) { return g.id(e.a) + "-" + g.id(e.b); }

inline json cycle_json(const Cycle& z) {
  json j = json::object();
  for (std::size_t v = 0; v < z.graph().size(); ++v) j[z.graph().id(v)] = z[v];
  return j;
}

inline std::string component_text(const ResolutionGraph& g, const PolarComponent& c) {
  std::string out = c.name + " A_" + std::to_string(c.an_type);
  if (c.on_edge) {
    out += " multiplicity 2 on edge " + edge_name(g, c.edge);
  } else {
    out += " pair at " + g.id(c.vertex);
  }
  return out + " s=" + std::to_string(c.s);
}

inline json component_json(const ResolutionGraph& g, const PolarComponent& c) {
  json j{{"name", c.name}, {"an_type", c.an_type}, {"multiplicity", c.multiplicity}, {"s", c.s}};
  if (c.on_edge) {
    j["edge"] = {g.id(c.edge.a), g.id(c.edge.b)};
  } else {
    j["vertex"] = g.id(c.vertex);
  }
  return j;
}

inline std::string piece_text(const ResolutionGraph& g, const Piece& p) {
  std::string out = p.label();
  if (p.kind == PieceKind::B) {
    out += " " + g.id(p.anchor);
    if (p.members.size() > 1) {
      out += " bamboo";
      for (std::size_t k = 1; k < p.members.size(); ++k) out += " " + g.id(p.members[k]);
    }
  } else {
    out += " " + g.id(p.anchor);
    for (auto v : p.members) out += " " + g.id(v);
    out += " " + g.id(p.other_end);
    if (p.equal_rates) out += " (equal rates)";
  }
  return out;
}

inline json piece_json(const ResolutionGraph& g, const Piece& p) {
  json members = json::array();
  for (auto v : p.members) members.push_back(g.id(v));
  json j{{"kind", p.kind == PieceKind::B ? "B" : "A"}, {"label", p.label()}, {"rate", to_string(p.rate)}};
  if (p.kind == PieceKind::B) {
    j["anchor"] = g.id(p.anchor);
  } else {
    j["rate_hi"] = to_string(p.rate_hi);
    j["ends"] = {g.id(p.anchor), g.id(p.other_end)};
    j["equal_rates"] = p.equal_rates;
  }
  j["members"] = members;
  return j;
}

inline std::string tree_event(const TreeVertex& v) {
  switch (v.event) {
    case TreeEvent::root: return "root";
    case TreeEvent::free: return "free t" + std::to_string(v.on);
    case TreeEvent::satellite: return "satellite t" + std::to_string(v.on) + " t" + std::to_string(v.other);
  }
  return "root";
}

inline void print_tree(std::ostream& out, const PlaneTree& t) {
  const auto nodes = t.nodes();
  for (std::size_t v = 0; v < t.size(); ++v) {
    out << "t" << v << " rate=" << to_string(t.rate(v)) << " " << tree_event(t.vertices[v]);
    if (nodes[v]) out << " node";
    auto arrows = t.arrows_at(v);
    if (!arrows.empty()) {
      out << " arrows";
      for (const auto& a : arrows) out << " " << a;
    }
    out << "\n";
  }
  for (const auto& e : t.edges) out << "edge t" << e.a << " t" << e.b << "\n";
  for (const auto& p : carrousel_pieces(t).pieces) {
    out << "piece " << p.label() << " t" << p.anchor;
    if (p.kind == PieceKind::A) out << " t" << p.other_end;
    out << "\n";
  }
}

inline json tree_json(const PlaneTree& t) {
  json vs = json::array();
  const auto nodes = t.nodes();
  for (std::size_t v = 0; v < t.size(); ++v)
    vs.push_back({{"index", v}, {"rate", to_string(t.rate(v))}, {"event", tree_event(t.vertices[v])},
                  {"node", static_cast<bool>(nodes[v])}, {"arrows", t.arrows_at(v)}});
  json es = json::array();
  for (const auto& e : t.edges) es.push_back({e.a, e.b});
  json ps = json::array();
  for (const auto& p : carrousel_pieces(t).pieces) ps.push_back(p.label());
  return {{"vertices", vs}, {"edges", es}, {"pieces", ps}};
}

inline void print_collection(std::ostream& out, const CurveCollection& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& b = c.branch(i);
    auto chars = characteristic_exponents(b.series);
    out << "branch " << b.name << " = " << to_string(b.series);
    if (b.generic) out << " (generic)";
    out << "\n";
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      out << "contact " << c.branch(i).name << " " << c.branch(j).name << " " << to_string(c.contact(i, j)) << "\n";
}

inline int run_graph_command(const Options& o, std::istream& in, std::ostream& out) {
  const auto g = load_graph(o, in);
  const auto& cmd = o.command;

  if (cmd == "validate") {
    require_format(o, {Format::text, Format::json, Format::dot});
    if (o.format == Format::json) {
      out << graph_to_json(g).dump(2) << "\n";
    } else if (o.format == Format::dot) {
      out << emit_dot(g);
    } else {
      out << "ok " << g.size() << " vertices " << g.edges().size() << " edges\n";
    }
  } else if (cmd == "zmin") {
    require_format(o, {Format::text, Format::json});
    auto run = laufer_minimal_cycle(g);
    std::optional<Cycle> oracle;
    if (o.oracle) {
      const auto bound = oracle_bound();
      oracle = oracle_minimal_cycle(g, bound, std::max<std::int64_t>(128, bound));
      ensure(*oracle == run.cycle, ErrorKind::internal, "Laufer's algorithm and the oracle disagree");
    }
    if (o.format == Format::json) {
      json j{{"zmin", cycle_json(run.cycle)}};
      if (o.trace) {
        j["trace"] = json::array();
        for (const auto& s : run.trace) j["trace"].push_back({{"step", s.step}, {"vertex", g.id(s.vertex)}, {"pairing", s.pairing}});
      }
      if (oracle) j["oracle"] = "agrees";
      out << j.dump(2) << "\n";
    } else {
      out << "order";
      for (std::size_t v = 0; v < g.size(); ++v) out << " " << g.id(v);
      out << "\nzmin";
      for (auto c : run.cycle.coefficients()) out << " " << c;
      out << "\n";
      if (oracle) out << "oracle agrees\n";
      if (o.trace) {
        out << "step\tvertex\tpairing\n";
        for (const auto& s : run.trace) out << s.step << "\t" << g.id(s.vertex) << "\t" << s.pairing << "\n";
      }
    }
  } else if (cmd == "rational") {
    require_format(o, {Format::text, Format::json});
    auto r = rationality_report(g);
    ensure(r.by_genus == r.by_steps, ErrorKind::internal, "rationality criteria disagree");
    if (o.format == Format::json) {
      json j{{"rational", r.by_genus}, {"genus_of_zmin", r.genus_of_zmin}, {"step_criterion", r.by_steps}};
      if (o.trace) {
        j["trace"] = json::array();
        for (const auto& s : r.step_run.trace) j["trace"].push_back({{"step", s.step}, {"vertex", g.id(s.vertex)}, {"pairing", s.pairing}});
      }
      out << j.dump(2) << "\n";
    } else {
      out << (r.by_genus ? "true" : "false") << "\n";
      if (o.trace) {
        out << "step\tvertex\tpairing\n";
        for (const auto& s : r.step_run.trace) out << s.step << "\t" << g.id(s.vertex) << "\t" << s.pairing << "\n";
      }
    }
  } else if (cmd == "minimal") {
    require_format(o, {Format::text, Format::json});
    bool m = is_minimal(g);
    if (o.format == Format::json) out << json{{"minimal", m}}.dump(2) << "\n";
    else out << (m ? "true" : "false") << "\n";
  } else if (cmd == "multiplicity") {
    require_format(o, {Format::text, Format::json});
    auto m = multiplicity_rational(g);
    if (o.format == Format::json) out << json{{"multiplicity", m}}.dump(2) << "\n";
    else out << m << "\n";
  } else if (cmd == "arrows") {
    require_format(o, {Format::text, Format::json});
    auto a = hyperplane_arrows(g);
    if (o.format == Format::json) {
      json j = json::object();
      for (std::size_t v = 0; v < g.size(); ++v) j[g.id(v)] = a[v];
      out << j.dump(2) << "\n";
    } else {
      for (std::size_t v = 0; v < g.size(); ++v) out << g.id(v) << " " << a[v] << "\n";
    }
  } else if (cmd == "lnodes") {
    require_format(o, {Format::text, Format::json});
    auto ls = l_nodes(g);
    if (o.format == Format::json) {
      json j = json::array();
      for (auto v : ls) j.push_back(g.id(v));
      out << j.dump(2) << "\n";
    } else {
      out << join_ids(g, ls) << "\n";
    }
  } else if (cmd == "svalues") {
    require_format(o, {Format::text, Format::json});
    auto s = s_values(g);
    if (o.format == Format::json) {
      json j = json::object();
      for (std::size_t v = 0; v < g.size(); ++v) j[g.id(v)] = s[v];
      out << j.dump(2) << "\n";
    } else {
      for (std::size_t v = 0; v < g.size(); ++v) out << g.id(v) << " " << s[v] << "\n";
    }
  } else if (cmd == "central") {
    require_format(o, {Format::text, Format::json});
    auto es = central_edges(g);
    auto vs = central_vertices(g);
    if (o.format == Format::json) {
      json je = json::array();
      for (const auto& e : es) je.push_back({g.id(e.a), g.id(e.b)});
      json jv = json::array();
      for (auto v : vs) jv.push_back(g.id(v));
      out << json{{"edges", je}, {"vertices", jv}}.dump(2) << "\n";
    } else {
      out << "edges";
      for (const auto& e : es) out << " " << edge_name(g, e);
      out << "\nvertices";
      for (auto v : vs) out << " " << g.id(v);
      out << "\n";
    }
  } else if (cmd == "polar") {
    require_format(o, {Format::text, Format::json});
    auto p = polar_profile(g);
    if (o.format == Format::json) {
      json raw = json::object();
      json pairs = json::object();
      for (std::size_t v = 0; v < g.size(); ++v) {
        raw[g.id(v)] = p.raw_incidence[v];
        pairs[g.id(v)] = p.pair_count[v];
      }
      json comps = json::array();
      for (const auto& c : p.components) comps.push_back(component_json(g, c));
      out << json{{"raw_incidence", raw}, {"pair_count", pairs}, {"components", comps}}.dump(2) << "\n";
    } else {
      out << "m";
      for (std::size_t v = 0; v < g.size(); ++v) out << " " << g.id(v) << "=" << p.raw_incidence[v];
      out << "\n";
      for (const auto& c : p.components) out << component_text(g, c) << "\n";
    }
  } else if (cmd == "rates") {
    auto d = build_gamma0(g);
    const auto& g0 = d.graph;
    if (o.format == Format::dot) {
      out << emit_dot(d);
    } else if (o.format == Format::json) {
      json vs = json::array();
      for (std::size_t v = 0; v < g0.size(); ++v)
        vs.push_back({{"id", g0.id(v)}, {"weight", g0.weight(v)}, {"s", *d.s[v]}, {"rate", to_string(d.rate(v))},
                      {"node", d.is_node(v)}, {"kinds", node_kind_names(d.kinds[v])}});
      out << json{{"vertices", vs}}.dump(2) << "\n";
    } else {
      for (auto v : d.nodes()) out << g0.id(v) << " " << to_string(d.rate(v)) << " " << node_kind_names(d.kinds[v]) << "\n";
    }
  } else if (cmd == "decomposition") {
    auto dec = geometric_decomposition(g);
    const auto& gg = dec.gamma.graph;
    if (o.format == Format::dot) {
      out << emit_dot(dec.gamma);
    } else if (o.format == Format::json) {
      json ps = json::array();
      for (const auto& p : dec.pieces.pieces) ps.push_back(piece_json(gg, p));
      out << json{{"pieces", ps}}.dump(2) << "\n";
    } else {
      for (const auto& p : dec.pieces.pieces) out << piece_text(gg, p) << "\n";
    }
  } else if (cmd == "discriminant") {
    auto g0 = build_gamma0(g);
    auto disc = discriminant_collection(g0);
    auto tree = resolution_tree(disc.curves);
    if (o.format == Format::dot) {
      out << emit_dot(tree);
    } else if (o.format == Format::json) {
      json bs = json::array();
      for (std::size_t i = 0; i < disc.curves.size(); ++i) {
        const auto& b = disc.curves.branch(i);
        bs.push_back({{"name", b.name}, {"series", to_string(b.series)}, {"generic", b.generic}});
      }
      out << json{{"branches", bs}, {"tree", tree_json(tree)}}.dump(2) << "\n";
    } else {
      print_collection(out, disc.curves);
      print_tree(out, tree);
    }
  } else if (cmd == "lne") {
    require_format(o, {Format::text, Format::json});
    auto d = decide_lne(g);
    if (o.format == Format::json) {
      out << json{{"verdict", std::string(to_string(d.verdict))}, {"rational", d.rational}, {"minimal", d.minimal}}.dump(2)
          << "\n";
    } else if (d.verdict == LneVerdict::unknown) {
      out << "Unknown (not rational)\n";
    } else {
      out << to_string(d.verdict) << " (rational, " << (d.minimal ? "minimal" : "not minimal") << ")\n";
    }
  } else {
    fail(ErrorKind::usage, "unknown command '" + cmd + "'");
  }
  return 0;
}

inline int run_branch_command(const Options& o, std::istream& in, std::ostream& out) {
  auto collection = CurveCollection::from_explicit(parse_branch_file(read_input(o.file, in)));
  if (o.command == "contact") {
    require_format(o, {Format::text, Format::json});
    if (o.names.size() != 2) fail(ErrorKind::usage, "contact needs two branch names");
    auto i = collection.index_of(o.names[0]);
    auto j = collection.index_of(o.names[1]);
    if (i == j) fail(ErrorKind::branches_coincide, "a branch has no contact with itself");
    auto c = collection.contact(i, j);
    if (o.format == Format::json) out << json{{"contact", to_string(c)}}.dump(2) << "\n";
    else out << to_string(c) << "\n";
    return 0;
  }
  auto tree = resolution_tree(collection);
  if (o.format == Format::dot) {
    out << emit_dot(tree);
  } else if (o.format == Format::json) {
    out << tree_json(tree).dump(2) << "\n";
  } else {
    print_tree(out, tree);
  }
  return 0;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"singlip: invariants of normal surface singularities from resolution graphs", "singlip"};
  app.require_subcommand(1);
  Options o;
  std::string format = "text";
  const std::map<std::string, std::string> commands{
      {"validate", "parse and validate a graph"},
      {"zmin", "fundamental cycle by Laufer's algorithm"},
      {"rational", "Laufer's rationality criterion"},
      {"minimal", "Spivakovsky's minimality criterion"},
      {"multiplicity", "multiplicity of a rational singularity"},
      {"arrows", "generic hyperplane section arrows per vertex"},
      {"lnodes", "L-nodes of a minimal graph"},
      {"svalues", "the s-function of a minimal graph"},
      {"central", "central edges and vertices"},
      {"polar", "generic polar curve profile"},
      {"rates", "nodes and inner rates of Gamma_0"},
      {"decomposition", "geometric decomposition into B and A pieces"},
      {"discriminant", "discriminant curve and its resolution tree"},
      {"lne", "Lipschitz normal embedding verdict"},
      {"contact", "contact exponent of two branches in a branch file"},
      {"resolve", "resolution tree of a branch file"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "input file, '-' for stdin")->required();
    if (name == "contact") sub->add_option("names", o.names, "two branch names")->required()->expected(2);
    sub->add_option("--format", format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_flag("--trace", o.trace, "print the Laufer steps");
    sub->add_flag("--oracle", o.oracle, "cross-check with the brute-force oracle");
    sub->callback([&o, name = name] { o.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return 2;
  }
  o.format = format == "json" ? Format::json : format == "dot" ? Format::dot : Format::text;

  try {
    if (o.command == "contact" || o.command == "resolve") return detail::run_branch_command(o, in, out);
    return detail::run_graph_command(o, in, out);
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace singlip::cli
