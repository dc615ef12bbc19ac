#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amenkit/digraph.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/semigroup.hpp"
#include "amenkit/universe.hpp"

namespace amenkit {

namespace detail {

// Whitespace tokenizer over non-blank lines; '#' starts a comment line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::size_t line_number() const { return line_no_; }

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

inline std::uint32_t parse_u32(const std::string& tok, std::size_t line,
                               const std::string& what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw parse_error("expected a nonnegative integer for " + what + ", got '" + tok + "'", line);
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (errno != 0 || v > 0xFFFFFFFFull) {
    throw parse_error(what + " out of range: '" + tok + "'", line);
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

// Format: line `table n`, then n rows of n 0-based entries.
inline FiniteSemigroup parse_table(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw parse_error("empty input, expected 'table n' header", 0);
  if (tok.size() != 2 || tok[0] != "table") {
    throw parse_error("expected header 'table n'", reader.line_number());
  }
  const std::uint32_t n = detail::parse_u32(tok[1], reader.line_number(), "element count");
  if (n == 0) throw parse_error("element count must be at least 1", reader.line_number());
  std::vector<std::uint32_t> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (std::uint32_t row = 0; row < n; ++row) {
    if (!reader.next(tok)) {
      throw parse_error("table row " + std::to_string(row) + " missing", reader.line_number());
    }
    if (tok.size() != n) {
      throw parse_error("table row " + std::to_string(row) + " has " +
                            std::to_string(tok.size()) + " entries, expected " + std::to_string(n),
                        reader.line_number());
    }
    for (const auto& t : tok) {
      const std::uint32_t v = detail::parse_u32(t, reader.line_number(), "table entry");
      if (v >= n) {
        throw parse_error("table entry " + std::to_string(v) + " outside [0, " +
                              std::to_string(n) + ")",
                          reader.line_number());
      }
      entries.push_back(v);
    }
  }
  if (reader.next(tok)) {
    throw parse_error("trailing content after table rows", reader.line_number());
  }
  if (const auto violation = FiniteSemigroup::check(n, entries)) {
    throw parse_error("table is not associative at triple (" + std::to_string(violation->a) +
                          ", " + std::to_string(violation->b) + ", " + std::to_string(violation->c) +
                          ")",
                      0);
  }
  return FiniteSemigroup(n, entries);
}

// Format: line `transformations n k`, then k rows of n 0-based images.
inline TransformationUniverse parse_transformations(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) {
    throw parse_error("empty input, expected 'transformations n k' header", 0);
  }
  if (tok.size() != 3 || tok[0] != "transformations") {
    throw parse_error("expected header 'transformations n k'", reader.line_number());
  }
  const std::uint32_t n = detail::parse_u32(tok[1], reader.line_number(), "point count");
  const std::uint32_t k = detail::parse_u32(tok[2], reader.line_number(), "generator count");
  if (n == 0 || n > 255) throw parse_error("point count must be in 1..255", reader.line_number());
  if (k == 0) throw parse_error("generator count must be at least 1", reader.line_number());
  std::vector<std::vector<std::uint8_t>> gens;
  for (std::uint32_t g = 0; g < k; ++g) {
    if (!reader.next(tok)) {
      throw parse_error("generator row " + std::to_string(g) + " missing", reader.line_number());
    }
    if (tok.size() != n) {
      throw parse_error("generator row " + std::to_string(g) + " has " +
                            std::to_string(tok.size()) + " images, expected " + std::to_string(n),
                        reader.line_number());
    }
    std::vector<std::uint8_t> images;
    for (const auto& t : tok) {
      const std::uint32_t v = detail::parse_u32(t, reader.line_number(), "image point");
      if (v >= n) {
        throw parse_error("image point " + std::to_string(v) + " outside [0, " +
                              std::to_string(n) + ")",
                          reader.line_number());
      }
      images.push_back(static_cast<std::uint8_t>(v));
    }
    gens.push_back(std::move(images));
  }
  if (reader.next(tok)) {
    throw parse_error("trailing content after generator rows", reader.line_number());
  }
  return TransformationUniverse(n, std::move(gens));
}

// Format: line `digraph n m`, then m rows `u v` (directed edge u -> v).
inline Digraph parse_digraph(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw parse_error("empty input, expected 'digraph n m' header", 0);
  if (tok.size() != 3 || tok[0] != "digraph") {
    throw parse_error("expected header 'digraph n m'", reader.line_number());
  }
  const std::uint32_t n = detail::parse_u32(tok[1], reader.line_number(), "vertex count");
  const std::uint32_t m = detail::parse_u32(tok[2], reader.line_number(), "edge count");
  if (n == 0) throw parse_error("vertex count must be at least 1", reader.line_number());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (!reader.next(tok)) {
      throw parse_error("edge " + std::to_string(e) + " missing", reader.line_number());
    }
    if (tok.size() != 2) {
      throw parse_error("edge line must be 'u v'", reader.line_number());
    }
    const std::uint32_t u = detail::parse_u32(tok[0], reader.line_number(), "edge source");
    const std::uint32_t v = detail::parse_u32(tok[1], reader.line_number(), "edge target");
    if (u >= n || v >= n) {
      throw parse_error("edge endpoint outside [0, " + std::to_string(n) + ")",
                        reader.line_number());
    }
    edges.push_back({u, v});
  }
  if (reader.next(tok)) {
    throw parse_error("trailing content after edge rows", reader.line_number());
  }
  return Digraph(n, edges);
}

// Format: one line `i j` per source vertex, meaning the map sends i to j;
// the i values must cover 0..n-1 exactly once.
inline std::vector<std::uint32_t> parse_vertex_map(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  while (reader.next(tok)) {
    if (tok.size() != 2) throw parse_error("map line must be 'i j'", reader.line_number());
    pairs.push_back({detail::parse_u32(tok[0], reader.line_number(), "source vertex"),
                     detail::parse_u32(tok[1], reader.line_number(), "target vertex")});
  }
  if (pairs.empty()) throw parse_error("empty vertex map", 0);
  std::vector<std::uint32_t> phi(pairs.size(), 0);
  std::vector<bool> seen(pairs.size(), false);
  for (const auto& [i, j] : pairs) {
    if (i >= pairs.size() || seen[i]) {
      throw parse_error("source vertices must cover 0.." + std::to_string(pairs.size() - 1) +
                            " exactly once",
                        0);
    }
    seen[i] = true;
    phi[i] = j;
  }
  return phi;
}

namespace detail {

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path, 0);
  return in;
}

}  // namespace detail

inline FiniteSemigroup load_table(const std::string& path) {
  auto in = detail::open_file(path);
  return parse_table(in);
}

inline TransformationUniverse load_transformations(const std::string& path) {
  auto in = detail::open_file(path);
  return parse_transformations(in);
}

inline Digraph load_digraph(const std::string& path) {
  auto in = detail::open_file(path);
  return parse_digraph(in);
}

inline std::vector<std::uint32_t> load_vertex_map(const std::string& path) {
  auto in = detail::open_file(path);
  return parse_vertex_map(in);
}

// ---------------------------------------------------------------------------
// Universe selection strings: free:k, freecomm:k, bicyclic, table:PATH,
// transformations:PATH.

using AnyUniverse = std::variant<FreeUniverse, FreeCommutativeUniverse, BicyclicUniverse,
                                 TableUniverse, TransformationUniverse>;

inline AnyUniverse parse_universe_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "bicyclic") {
    if (!rest.empty()) throw parse_error("universe 'bicyclic' takes no argument", 0);
    return BicyclicUniverse{};
  }
  if (head == "free" || head == "freecomm") {
    const std::uint32_t k = detail::parse_u32(rest, 0, "generator count in '" + spec + "'");
    if (k == 0) throw parse_error("generator count must be at least 1 in '" + spec + "'", 0);
    if (head == "free") return FreeUniverse(k);
    return FreeCommutativeUniverse(k);
  }
  if (head == "table") {
    if (rest.empty()) throw parse_error("universe 'table:PATH' needs a file path", 0);
    return TableUniverse(load_table(rest));
  }
  if (head == "transformations") {
    if (rest.empty()) throw parse_error("universe 'transformations:PATH' needs a file path", 0);
    return load_transformations(rest);
  }
  throw parse_error("unrecognized universe spec '" + spec +
                        "' (expected free:k, freecomm:k, bicyclic, table:PATH, "
                        "transformations:PATH)",
                    0);
}

inline std::string universe_kind(const AnyUniverse& u) {
  struct Visitor {
    std::string operator()(const FreeUniverse& f) const {
      return "free:" + std::to_string(f.rank());
    }
    std::string operator()(const FreeCommutativeUniverse& f) const {
      return "freecomm:" + std::to_string(f.rank());
    }
    std::string operator()(const BicyclicUniverse&) const { return "bicyclic"; }
    std::string operator()(const TableUniverse& t) const {
      return "table(order " + std::to_string(t.table().size()) + ")";
    }
    std::string operator()(const TransformationUniverse& t) const {
      return "transformations(points " + std::to_string(t.points()) + ")";
    }
  };
  return std::visit(Visitor{}, u);
}

}  // namespace amenkit
