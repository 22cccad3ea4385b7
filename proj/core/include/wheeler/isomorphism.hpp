#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wheeler/graph.hpp"

namespace wheeler {

/// Simple-or-multi undirected graph on vertices 0..n-1.
class UndirectedGraph {
public:
  UndirectedGraph() = default;
  UndirectedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::pair<Vertex, Vertex>> &edges() const noexcept { return edges_; }
  /// Neighbors with multiplicity; a loop contributes the vertex twice.
  const std::vector<Vertex> &neighbors(Vertex v) const { return adj_[v]; }

private:
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// A bijection f (f[v] is the image of v) with (u,v,k) in G iff (f(u),f(v),k) in H,
/// counting multiplicity, or none. Alphabet sizes are not compared.
std::optional<std::vector<Vertex>> labeled_iso(const LabeledDigraph &g, const LabeledDigraph &h);

/// Replaces every edge (u,v,k) by a gadget: the path u - a - b - v, a pendant path of
/// k vertices hanging from a and a pendant path of sigma+2 vertices hanging from b.
/// Original vertices keep their ids; gadget vertices follow in edge order.
UndirectedGraph alpha(const LabeledDigraph &g);

/// An isomorphism between undirected graphs, if one exists.
std::optional<std::vector<Vertex>> undirected_isomorphism(const UndirectedGraph &a,
                                                          const UndirectedGraph &b);
bool undirected_iso(const UndirectedGraph &a, const UndirectedGraph &b);

/// a_i = number of vertices at distance exactly i from v, for i = 1..n.
std::vector<std::size_t> distance_profile(const UndirectedGraph &h, Vertex v);

} // namespace wheeler
