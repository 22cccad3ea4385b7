#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wheeler/graph.hpp"

namespace wheeler {

/// Elements are 1..n. A triple (a, b, c) asks for b strictly between a and c.
struct BetweennessInstance {
  std::size_t n = 0;
  std::vector<std::array<std::uint32_t, 3>> triples;
  friend bool operator==(const BetweennessInstance &, const BetweennessInstance &) = default;
};

/// Elements are 1..n. A pair (a, b) asks for a before b.
struct FasInstance {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> inequalities;
  friend bool operator==(const FasInstance &, const FasInstance &) = default;
};

/// +i is variable i, -i its negation; variables are 1..vars.
using Literal = std::int32_t;

struct Naesat4 {
  std::size_t vars = 0;
  std::vector<std::array<Literal, 4>> clauses;
  friend bool operator==(const Naesat4 &, const Naesat4 &) = default;
};

/// 3-NAESAT where a variable used in a middle position occurs at most twice overall.
struct Naesat3Star {
  std::size_t vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
  friend bool operator==(const Naesat3Star &, const Naesat3Star &) = default;
};

// Each validate throws wheeler::Error describing the first broken invariant.
void validate(const BetweennessInstance &inst);
void validate(const FasInstance &inst);
void validate(const Naesat4 &phi);
void validate(const Naesat3Star &phi);

/// `order` lists the elements 1..n from first to last.
bool satisfies(const BetweennessInstance &inst, std::span<const std::uint32_t> order);

/// First satisfying order in lexicographic enumeration. Throws GuardExceeded above max_n.
std::optional<std::vector<std::uint32_t>> solve_betweenness(const BetweennessInstance &inst,
                                                            std::size_t max_n = 10);

/// Vertex layout: v_0 = 0, v_i^j = 1 + (j-1)n + (i-1), w_l^j = 1 + nk + 3(j-1) + (l-1).
LabeledDigraph betweenness_to_graph(const BetweennessInstance &inst);

/// The proper ordering induced by a satisfying order. Throws wheeler::Error otherwise.
Ordering betweenness_ordering_to_wheeler(const BetweennessInstance &inst,
                                         std::span<const std::uint32_t> order);

/// Splits (a, b, c, d) into (a, w, b) and (c, -w, d) with fresh w = vars + clause index.
Naesat3Star naesat4_to_naesat3star(const Naesat4 &phi);

/// Menorah, clause chains and one betweenness layer per constraint. Vertex 0 is the
/// single source.
LabeledDigraph naesat3star_to_graph(const Naesat3Star &phi);

/// Truth table search; assignment[i] is the value of variable i+1. Throws GuardExceeded
/// above max_vars.
std::optional<std::vector<bool>> solve_naesat(const Naesat3Star &phi, std::size_t max_vars = 20);
std::optional<std::vector<bool>> solve_naesat(const Naesat4 &phi, std::size_t max_vars = 20);

/// Violated inequalities under `order` (elements 1..n, first to last).
std::size_t fas_violations(const FasInstance &inst, std::span<const std::uint32_t> order);

/// Minimum violations over all n! orders. Throws GuardExceeded above max_n.
std::size_t fas_brute(const FasInstance &inst, std::size_t max_n = 10);

/// How a heavy edge of multiplicity k+1 is realized.
enum class HeavyEdges {
  /// k+1 two-edge paths through fresh midpoints, both edges carrying the heavy label.
  Subdivided,
  /// k+1 parallel copies of the edge.
  Parallel,
};

/// Named vertices: v_0 = 0, v_i^j = 1 + (j-1)(n+1) + (i-1), w_l^j = 1 + (n+1)k + 2(j-1) +
/// (l-1). Subdivided midpoints follow the named vertices in construction order.
///
/// With subdivided label-2 heavy edges the midpoints sort after every label-1 vertex and
/// their out-edges cross the light edges, so the optimum can exceed the FAS optimum;
/// the parallel form keeps the two equal.
LabeledDigraph fas_to_wgv_graph(const FasInstance &inst,
                                HeavyEdges style = HeavyEdges::Subdivided);

// Instance files. Headers: "btw n k", "fas n k", "nae4 vars clauses", "nae3s vars clauses".
// Literal lines may end with a DIMACS-style 0.
BetweennessInstance parse_betweenness(std::string_view text);
FasInstance parse_fas(std::string_view text);
Naesat4 parse_naesat4(std::string_view text);
Naesat3Star parse_naesat3star(std::string_view text);
std::string serialize(const BetweennessInstance &inst);
std::string serialize(const FasInstance &inst);
std::string serialize(const Naesat4 &phi);
std::string serialize(const Naesat3Star &phi);

/// First token of the first content line ("btw", "fas", "nae4", "nae3s"), or empty.
std::string instance_kind(std::string_view text);

} // namespace wheeler
