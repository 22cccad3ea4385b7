#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wheeler/graph.hpp"

namespace wheeler {

/// Half-open interval [begin, end) of ranks. Empty when begin == end.
struct RankRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const noexcept { return begin >= end; }
  std::size_t size() const noexcept { return empty() ? 0 : end - begin; }
  friend bool operator==(RankRange a, RankRange b) {
    return (a.empty() && b.empty()) || (a.begin == b.begin && a.end == b.end);
  }
};

/// True iff `pi` is a proper (Wheeler) ordering of `g`:
///  - in-degree-zero vertices precede all other vertices,
///  - k < k' implies v < v' for edges (u,v,k), (u',v',k'),
///  - equal labels and u < u' imply v <= v'.
/// O(e log e). Throws wheeler::Error if `pi` does not cover the vertex set.
bool check_ordering(const LabeledDigraph &g, const Ordering &pi);

/// Ids (ascending) of every edge that takes part in a violated axiom under `pi`.
/// An edge is reported when it forms a violating pair with another edge, when its
/// tail is an in-degree-zero vertex ranked after a vertex with positive in-degree,
/// or when its head has positive in-degree and is ranked before such a source.
/// Empty exactly when check_ordering(g, pi) holds.
std::vector<EdgeId> violations(const LabeledDigraph &g, const Ordering &pi);

/// Ranks reached from `start` by following `pattern` left to right. Requires a
/// proper ordering; path coherence guarantees a consecutive result.
RankRange follow(const LabeledDigraph &g, const Ordering &pi, RankRange start,
                 std::span<const Label> pattern);

} // namespace wheeler
