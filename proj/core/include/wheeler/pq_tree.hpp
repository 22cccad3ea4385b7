#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wheeler/graph.hpp"

namespace wheeler {

/// A PQ-tree over a ground set of vertex ids. P-nodes permute their children freely,
/// Q-nodes only admit reversal. The epsilon tree represents the empty set of orderings.
///
/// Trees are immutable values: every operation returns a new tree. Correctness is
/// frontier equality; two trees with different shapes may represent the same orderings.
class PQTree {
public:
  enum class Kind { Leaf, P, Q };

  struct Node {
    Kind kind = Kind::Leaf;
    Vertex leaf = 0;
    std::vector<Node> children;
  };

  PQTree() = default;

  /// One P-node over all leaves (a single leaf when |leaves| == 1). Throws on an empty set.
  static PQTree universal(std::vector<Vertex> leaves);
  /// The empty set of orderings over `leaves`.
  static PQTree epsilon(std::vector<Vertex> leaves);
  /// Exactly `order` and its reversal.
  static PQTree fixed(std::span<const Vertex> order);

  bool is_epsilon() const noexcept { return !root_.has_value(); }
  /// Sorted ground set.
  const std::vector<Vertex> &leaves() const noexcept { return leaves_; }
  const Node &root() const { return *root_; }

  /// Debug dump, e.g. `P(1 Q[2 3 4])`, using 1-based ids; `EPSILON` for the empty set.
  std::string to_string() const;

  // Internal: wraps an already normalized node.
  static PQTree from_root(Node root, std::vector<Vertex> leaves);

private:
  std::optional<Node> root_;
  std::vector<Vertex> leaves_;
};

/// Orderings of T in which the leaves of `subset` are consecutive.
PQTree reduce(const PQTree &tree, std::span<const Vertex> subset);

/// Orderings common to both trees. Leaf sets must coincide.
PQTree intersect(const PQTree &a, const PQTree &b);

/// Orderings of T with leaf `x` removed. Throws when x is the only leaf.
PQTree delete_leaf(const PQTree &tree, Vertex x);

/// Every ordering represented by the tree, sorted. Exponential; throws GuardExceeded
/// when the tree has more than `max_leaves` leaves.
std::vector<std::vector<Vertex>> frontiers(const PQTree &tree, std::size_t max_leaves = 9);

/// Number of represented orderings (no enumeration).
double frontier_count(const PQTree &tree);

/// Some ordering of the tree (the left-to-right leaf order). Empty for epsilon.
std::vector<Vertex> any_frontier(const PQTree &tree);

/// An ordering of the tree whose restriction to the leaves in `partial` equals `partial`,
/// if one exists.
std::optional<std::vector<Vertex>> frontier_matching(const PQTree &tree,
                                                     std::span<const Vertex> partial);

/// True iff `order` is one of the tree's orderings.
bool contains_frontier(const PQTree &tree, std::span<const Vertex> order);

/// Arc from a vertex of the current level to a vertex of the next level.
using LevelArc = std::pair<Vertex, Vertex>;

/// Pushes T across a two-level edge set: the orderings of `next` for which some ordering
/// of T makes the bipartite layout rainbow-free (u < u' implies v <= v'). Leaves of T
/// without arcs are unconstrained. Throws if a vertex of `next` has no incoming arc or an
/// arc leaves a vertex outside T.
PQTree push(const PQTree &tree, std::span<const Vertex> next, std::span<const LevelArc> arcs);

/// True iff the two fixed orders form a rainbow-free layout of `arcs`.
bool rainbow_free(std::span<const Vertex> upper, std::span<const Vertex> lower,
                  std::span<const LevelArc> arcs);

} // namespace wheeler
