#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rainbow/colouring.hpp"
#include "rainbow/graph.hpp"

// Text formats:
//   first content line: vertex count n
//   graph lines:          "u v"
//   coloured-graph lines: "u v c"
// Blank lines and lines whose first non-blank character is '#' are skipped.
// LF and CRLF line endings are both accepted.

namespace rainbow {

namespace detail {

struct ParsedLine {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

inline std::vector<ParsedLine> content_lines(std::string_view text) {
  std::vector<ParsedLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    ParsedLine parsed{line_no, {}};
    std::size_t i = first;
    while (i < line.size()) {
      const auto start = line.find_first_not_of(" \t", i);
      if (start == std::string_view::npos) break;
      auto stop = line.find_first_of(" \t", start);
      if (stop == std::string_view::npos) stop = line.size();
      parsed.tokens.push_back(line.substr(start, stop - start));
      i = stop;
    }
    out.push_back(std::move(parsed));
    if (end == text.size()) break;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(ParseError::Kind::kMalformed, line,
                     "expected a nonnegative integer, got '" +
                         std::string(token) + "'");
  }
  return value;
}

inline ColouredGraph parse_document(std::string_view text, bool coloured) {
  const auto lines = content_lines(text);
  if (lines.empty()) {
    throw ParseError(ParseError::Kind::kMalformed, 1, "missing vertex count");
  }
  if (lines[0].tokens.size() != 1) {
    throw ParseError(ParseError::Kind::kMalformed, lines[0].number,
                     "first line must hold the vertex count only");
  }
  const std::uint64_t n = parse_uint(lines[0].tokens[0], lines[0].number);
  if (n >= kNoVertex) {
    throw ParseError(ParseError::Kind::kOutOfRange, lines[0].number,
                     "vertex count too large");
  }
  const std::size_t width = coloured ? 3 : 2;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  EdgeColouring colouring;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens.size() != width) {
      throw ParseError(ParseError::Kind::kMalformed, line.number,
                       coloured ? "expected 'u v c'" : "expected 'u v'");
    }
    const auto u = parse_uint(line.tokens[0], line.number);
    const auto v = parse_uint(line.tokens[1], line.number);
    if (u >= n || v >= n) {
      throw ParseError(ParseError::Kind::kOutOfRange, line.number,
                       "vertex index out of range");
    }
    if (u == v) {
      throw ParseError(ParseError::Kind::kSelfLoop, line.number, "self-loop");
    }
    const auto a = static_cast<Vertex>(u);
    const auto b = static_cast<Vertex>(v);
    if (!seen.insert(edge_key(a, b)).second) {
      throw ParseError(ParseError::Kind::kDuplicateEdge, line.number,
                       "duplicate edge");
    }
    edges.push_back(make_edge(a, b));
    if (coloured) {
      const auto c = parse_uint(line.tokens[2], line.number);
      if (c > 0xffffffffULL) {
        throw ParseError(ParseError::Kind::kOutOfRange, line.number,
                         "colour out of range");
      }
      colouring.set(a, b, static_cast<Colour>(c));
    }
  }
  return {Graph::from_edges(n, std::move(edges)), std::move(colouring)};
}

}  // namespace detail

inline Graph load_graph(std::string_view text) {
  return detail::parse_document(text, false).graph;
}

inline ColouredGraph load_coloured_graph(std::string_view text) {
  return detail::parse_document(text, true);
}

/// Accepts either format, deciding by the width of the first edge line.
inline std::pair<Graph, std::optional<EdgeColouring>> load_any_graph(
    std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.size() >= 2 && lines[1].tokens.size() == 3) {
    auto cg = load_coloured_graph(text);
    return {std::move(cg.graph), std::move(cg.colouring)};
  }
  return {load_graph(text), std::nullopt};
}

/// Canonical document: vertex count, then edges in increasing (min, max)
/// order. `header` lines are emitted as '#' comments first.
inline std::string write_graph(const Graph& g,
                               const std::vector<std::string>& header = {}) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  out << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline std::string write_coloured_graph(
    const Graph& g, const EdgeColouring& c,
    const std::vector<std::string>& header = {}) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  out << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << c.at(e.u, e.v) << '\n';
  }
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rainbow
