#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wheeler/error.hpp"

namespace wheeler {

/// Vertex ids are dense and 0-based inside the library; file formats use 1-based ids.
using Vertex = std::uint32_t;
/// Edge labels live in 1..sigma.
using Label = std::uint32_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  Label label = 1;

  friend auto operator<=>(const Edge &, const Edge &) = default;
  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Edge-labeled directed multigraph. Parallel edges and self-loops are allowed.
/// Immutable after construction.
class LabeledDigraph {
public:
  LabeledDigraph() = default;
  /// Throws wheeler::Error when an endpoint is >= n or a label is outside 1..sigma.
  LabeledDigraph(std::size_t n, Label sigma, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  Label sigma() const noexcept { return sigma_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge &edge(EdgeId id) const { return edges_[id]; }

  std::span<const EdgeId> out_edges(Vertex v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  /// Same vertex count, alphabet and edge multiset (edge order ignored).
  friend bool operator==(const LabeledDigraph &a, const LabeledDigraph &b);

private:
  std::size_t n_ = 0;
  Label sigma_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// A bijection vertex -> rank (0-based). `at(r)` is the vertex holding rank r.
class Ordering {
public:
  Ordering() = default;

  /// `sequence[r]` is the vertex at rank r. Throws wheeler::Error if not a permutation of 0..n-1.
  static Ordering from_sequence(std::vector<Vertex> sequence);
  static Ordering identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t rank(Vertex v) const { return rank_[v]; }
  Vertex at(std::size_t r) const { return order_[r]; }
  std::span<const Vertex> sequence() const noexcept { return order_; }

  friend bool operator==(const Ordering &, const Ordering &) = default;

private:
  std::vector<Vertex> order_;
  std::vector<std::size_t> rank_;
};

LabeledDigraph parse_graph(std::string_view text);
std::string serialize_graph(const LabeledDigraph &g);

/// One line of n space-separated 1-based vertex ids in rank order.
Ordering parse_ordering(std::string_view text, std::size_t n);
std::string serialize_ordering(const Ordering &pi);

/// Vertices of in-degree zero, ascending. A self-loop counts toward in-degree.
std::vector<Vertex> sources(const LabeledDigraph &g);

/// Same vertex set and alphabet, only the edges labeled k.
LabeledDigraph label_subgraph(const LabeledDigraph &g, Label k);

/// Maximum number of equally labeled edges leaving one vertex; 0 for edgeless graphs.
std::size_t nondeterminism(const LabeledDigraph &g);

/// True iff all edges entering each vertex share one label.
bool inlabel_consistent(const LabeledDigraph &g);

/// The graph on the same vertices keeping only the listed edges.
LabeledDigraph edge_subgraph(const LabeledDigraph &g, std::span<const EdgeId> keep);

} // namespace wheeler
