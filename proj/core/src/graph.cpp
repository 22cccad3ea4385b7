#include "wheeler/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "text.hpp"

namespace wheeler {

LabeledDigraph::LabeledDigraph(std::size_t n, Label sigma, std::vector<Edge> edges)
    : n_(n), sigma_(sigma), edges_(std::move(edges)), out_(n), in_(n) {
  if (sigma_ == 0)
    throw Error("alphabet size must be at least 1");
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge &e = edges_[id];
    if (e.tail >= n_ || e.head >= n_)
      throw Error("edge endpoint out of range");
    if (e.label < 1 || e.label > sigma_)
      throw Error("edge label " + std::to_string(e.label) + " outside 1.." + std::to_string(sigma_));
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
  }
}

bool operator==(const LabeledDigraph &a, const LabeledDigraph &b) {
  if (a.n_ != b.n_ || a.sigma_ != b.sigma_ || a.edges_.size() != b.edges_.size())
    return false;
  auto ea = a.edges_;
  auto eb = b.edges_;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

Ordering Ordering::from_sequence(std::vector<Vertex> sequence) {
  Ordering pi;
  pi.rank_.assign(sequence.size(), sequence.size());
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    Vertex v = sequence[r];
    if (v >= sequence.size() || pi.rank_[v] != sequence.size())
      throw Error("ordering is not a permutation of the vertex set");
    pi.rank_[v] = r;
  }
  pi.order_ = std::move(sequence);
  return pi;
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<Vertex> seq(n);
  std::iota(seq.begin(), seq.end(), Vertex{0});
  return from_sequence(std::move(seq));
}

using detail::LineReader;
using detail::split_ws;
using detail::to_uint;

LabeledDigraph parse_graph(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  if (!reader.next(line))
    throw ParseError(0, "empty graph file");
  auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "wg")
    throw ParseError(reader.line_no, "expected header 'wg <n> <e> <sigma>'");
  const std::size_t n = to_uint(header[1], reader.line_no);
  const std::size_t e = to_uint(header[2], reader.line_no);
  const std::uint64_t sigma = to_uint(header[3], reader.line_no);
  if (sigma < 1)
    throw ParseError(reader.line_no, "sigma must be at least 1");

  std::vector<Edge> edges;
  edges.reserve(e);
  while (edges.size() < e) {
    if (!reader.next(line))
      throw ParseError(reader.line_no, "expected " + std::to_string(e) + " edges, found " +
                                           std::to_string(edges.size()));
    auto tok = split_ws(line);
    if (tok.size() != 3)
      throw ParseError(reader.line_no, "expected '<tail> <head> <label>'");
    const auto tail = to_uint(tok[0], reader.line_no);
    const auto head = to_uint(tok[1], reader.line_no);
    const auto label = to_uint(tok[2], reader.line_no);
    if (tail < 1 || tail > n || head < 1 || head > n)
      throw ParseError(reader.line_no, "vertex id out of range 1.." + std::to_string(n));
    if (label < 1 || label > sigma)
      throw ParseError(reader.line_no, "label " + std::to_string(label) + " exceeds sigma=" +
                                           std::to_string(sigma));
    edges.push_back({static_cast<Vertex>(tail - 1), static_cast<Vertex>(head - 1),
                     static_cast<Label>(label)});
  }
  if (reader.next(line))
    throw ParseError(reader.line_no, "trailing content after the edge list");
  return LabeledDigraph(n, static_cast<Label>(sigma), std::move(edges));
}

std::string serialize_graph(const LabeledDigraph &g) {
  std::ostringstream out;
  out << "wg " << g.num_vertices() << ' ' << g.num_edges() << ' ' << g.sigma() << '\n';
  for (const Edge &e : g.edges())
    out << e.tail + 1 << ' ' << e.head + 1 << ' ' << e.label << '\n';
  return out.str();
}

Ordering parse_ordering(std::string_view text, std::size_t n) {
  LineReader reader{text};
  std::string_view line;
  std::vector<Vertex> seq;
  std::size_t line_no = 0;
  while (reader.next(line)) {
    line_no = reader.line_no;
    for (auto tok : split_ws(line)) {
      auto v = to_uint(tok, line_no);
      if (v < 1 || v > n)
        throw ParseError(line_no, "vertex id out of range 1.." + std::to_string(n));
      seq.push_back(static_cast<Vertex>(v - 1));
    }
  }
  if (seq.size() != n)
    throw ParseError(line_no, "ordering lists " + std::to_string(seq.size()) + " vertices, expected " +
                                  std::to_string(n));
  try {
    return Ordering::from_sequence(std::move(seq));
  } catch (const Error &) {
    throw ParseError(line_no, "ordering repeats a vertex");
  }
}

std::string serialize_ordering(const Ordering &pi) {
  std::string out;
  for (std::size_t r = 0; r < pi.size(); ++r) {
    if (r)
      out += ' ';
    out += std::to_string(pi.at(r) + 1);
  }
  out += '\n';
  return out;
}

std::vector<Vertex> sources(const LabeledDigraph &g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.in_degree(v) == 0)
      out.push_back(v);
  return out;
}

LabeledDigraph label_subgraph(const LabeledDigraph &g, Label k) {
  if (k < 1 || k > g.sigma())
    throw Error("label " + std::to_string(k) + " outside 1.." + std::to_string(g.sigma()));
  std::vector<Edge> kept;
  for (const Edge &e : g.edges())
    if (e.label == k)
      kept.push_back(e);
  return LabeledDigraph(g.num_vertices(), g.sigma(), std::move(kept));
}

std::size_t nondeterminism(const LabeledDigraph &g) {
  std::size_t best = 0;
  std::vector<std::size_t> count(g.sigma() + 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::fill(count.begin(), count.end(), 0);
    for (EdgeId id : g.out_edges(v))
      best = std::max(best, ++count[g.edge(id).label]);
  }
  return best;
}

bool inlabel_consistent(const LabeledDigraph &g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto in = g.in_edges(v);
    for (EdgeId id : in)
      if (g.edge(id).label != g.edge(in.front()).label)
        return false;
  }
  return true;
}

LabeledDigraph edge_subgraph(const LabeledDigraph &g, std::span<const EdgeId> keep) {
  std::vector<Edge> kept;
  kept.reserve(keep.size());
  for (EdgeId id : keep)
    kept.push_back(g.edge(id));
  return LabeledDigraph(g.num_vertices(), g.sigma(), std::move(kept));
}

} // namespace wheeler
