// Error type shared by every module of the library.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singlip {

enum class ErrorKind {
  syntax,
  duplicate_vertex,
  dangling_edge,
  not_negative_definite,
  disconnected,
  invalid_value,
  graph_mismatch,
  unknown_vertex,
  unknown_edge,
  bound_too_small,
  not_rational,
  not_minimal,
  theorem_reading,
  branches_coincide,
  exponent_underflow,
  unsupported_branch,
  ultrametric,
  unknown_branch,
  io,
  usage,
  internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::duplicate_vertex: return "duplicate-vertex";
    case ErrorKind::dangling_edge: return "dangling-edge";
    case ErrorKind::not_negative_definite: return "not-negative-definite";
    case ErrorKind::disconnected: return "disconnected";
    case ErrorKind::invalid_value: return "invalid-value";
    case ErrorKind::graph_mismatch: return "graph-mismatch";
    case ErrorKind::unknown_vertex: return "unknown-vertex";
    case ErrorKind::unknown_edge: return "unknown-edge";
    case ErrorKind::bound_too_small: return "bound-too-small";
    case ErrorKind::not_rational: return "not-rational";
    case ErrorKind::not_minimal: return "not-minimal";
    case ErrorKind::theorem_reading: return "theorem-reading";
    case ErrorKind::branches_coincide: return "branches-coincide";
    case ErrorKind::exponent_underflow: return "exponent-underflow";
    case ErrorKind::unsupported_branch: return "unsupported-branch";
    case ErrorKind::ultrametric: return "ultrametric";
    case ErrorKind::unknown_branch: return "unknown-branch";
    case ErrorKind::io: return "io";
    case ErrorKind::usage: return "usage";
    case ErrorKind::internal: return "internal";
  }
  return "internal";
}

/// Input errors (parse, io, usage) map to exit code 2 in the CLI, everything
/// else to 1.
constexpr bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax:
    case ErrorKind::duplicate_vertex:
    case ErrorKind::dangling_edge:
    case ErrorKind::not_negative_definite:
    case ErrorKind::disconnected:
    case ErrorKind::invalid_value:
    case ErrorKind::io:
    case ErrorKind::usage:
    case ErrorKind::unknown_branch:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Internal consistency checks stay on in release builds.
inline void ensure(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace singlip
