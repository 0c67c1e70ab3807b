// Reading and writing the line-oriented graph format and its JSON twin.
//
//   # comment
//   vertex a weight=-2 genus=0
//   vertex b weight=-3
//   edge a b
#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "singlip/error.hpp"
#include "singlip/graph.hpp"
#include "singlip/rational.hpp"

namespace singlip {

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] inline void syntax_error(std::size_t line, std::size_t column, const std::string& msg) {
  fail(ErrorKind::syntax, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

inline int parse_int_at(const Token& tok, std::string_view value, std::size_t line) {
  try {
    auto v = parse_integer(value);
    if (v < -1'000'000'000 || v > 1'000'000'000) syntax_error(line, tok.column, "integer out of range");
    return static_cast<int>(v);
  } catch (const Error&) {
    syntax_error(line, tok.column, "expected an integer in '" + std::string(tok.text) + "'");
  }
}

}  // namespace detail

inline ResolutionGraph parse_graph_text(std::string_view text) {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> declared;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens[0].text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto& head = tokens[0];
    if (head.text == "vertex") {
      if (tokens.size() < 3) detail::syntax_error(line_no, head.column, "expected 'vertex <id> weight=<int>'");
      Vertex v;
      v.id = std::string(tokens[1].text);
      bool have_weight = false;
      bool have_genus = false;
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        const auto& tok = tokens[k];
        if (tok.text.front() == '#') break;
        auto eq = tok.text.find('=');
        if (eq == std::string_view::npos)
          detail::syntax_error(line_no, tok.column, "expected key=value, got '" + std::string(tok.text) + "'");
        auto key = tok.text.substr(0, eq);
        auto value = tok.text.substr(eq + 1);
        if (key == "weight" && !have_weight) {
          v.weight = detail::parse_int_at(tok, value, line_no);
          have_weight = true;
        } else if (key == "genus" && !have_genus) {
          v.genus = detail::parse_int_at(tok, value, line_no);
          have_genus = true;
        } else {
          detail::syntax_error(line_no, tok.column, "unexpected attribute '" + std::string(key) + "'");
        }
      }
      if (!have_weight) detail::syntax_error(line_no, head.column, "vertex '" + v.id + "' has no weight");
      vertices.push_back(std::move(v));
    } else if (head.text == "edge") {
      std::size_t count = tokens.size();
      if (count > 3 && tokens[3].text.front() == '#') count = 3;
      if (count != 3) detail::syntax_error(line_no, head.column, "expected 'edge <id> <id>'");
      edges.emplace_back(std::string(tokens[1].text), std::string(tokens[2].text));
      // Vertices must be declared before use.
      for (std::size_t k = 1; k <= 2; ++k) {
        bool known = std::any_of(vertices.begin(), vertices.end(),
                                 [&](const Vertex& v) { return v.id == tokens[k].text; });
        if (!known)
          fail(ErrorKind::dangling_edge, "line " + std::to_string(line_no) + ", column " +
                                             std::to_string(tokens[k].column) + ": edge endpoint '" +
                                             std::string(tokens[k].text) + "' is not a declared vertex");
      }
    } else {
      detail::syntax_error(line_no, head.column, "unknown directive '" + std::string(head.text) + "'");
    }
    if (end == text.size()) break;
  }
  return ResolutionGraph(std::move(vertices), edges);
}

inline ResolutionGraph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::syntax, std::string("JSON: ") + e.what());
  }
  try {
    std::vector<Vertex> vertices;
    for (const auto& jv : doc.at("vertices")) {
      Vertex v;
      v.id = jv.at("id").get<std::string>();
      v.weight = jv.at("weight").get<int>();
      v.genus = jv.value("genus", 0);
      vertices.push_back(std::move(v));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (doc.contains("edges")) {
      for (const auto& je : doc.at("edges")) {
        if (!je.is_array() || je.size() != 2) fail(ErrorKind::syntax, "JSON: every edge must be a pair of ids");
        edges.emplace_back(je[0].get<std::string>(), je[1].get<std::string>());
      }
    }
    return ResolutionGraph(std::move(vertices), edges);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::syntax, std::string("JSON: ") + e.what());
  }
}

/// Dispatches on `json`; callers decide it from the file extension.
inline ResolutionGraph parse_graph(std::string_view text, bool json = false) {
  return json ? parse_graph_json(text) : parse_graph_text(text);
}

inline std::string write_graph_text(const ResolutionGraph& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices()) {
    out << "vertex " << v.id << " weight=" << v.weight;
    if (v.genus != 0) out << " genus=" << v.genus;
    out << '\n';
  }
  for (const auto& e : g.edges()) out << "edge " << g.id(e.a) << ' ' << g.id(e.b) << '\n';
  return out.str();
}

inline nlohmann::json graph_to_json(const ResolutionGraph& g) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices())
    doc["vertices"].push_back({{"id", v.id}, {"weight", v.weight}, {"genus", v.genus}});
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back({g.id(e.a), g.id(e.b)});
  return doc;
}

}  // namespace singlip
