#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "wheeler/graph.hpp"

namespace wheeler {

struct RecognizerOptions {
  /// recognize_exhaustive refuses graphs with more vertices.
  std::size_t max_vertices = 10;
  /// Search nodes before GuardExceeded; 0 means unlimited.
  std::size_t node_limit = 0;
  /// recognize_via_codes refuses inputs with more candidate codes.
  double max_code_candidates = double(1u << 24);
};

/// Exact backtracking search. Returns the lexicographically least proper ordering
/// (compared as rank sequences), or none.
std::optional<Ordering> recognize_exhaustive(const LabeledDigraph &g,
                                             const RecognizerOptions &opts = {});

/// Enumerates (O, I, L) codes with the degree profile of `g`, decodes each and tests
/// label-preserving isomorphism.
std::optional<Ordering> recognize_via_codes(const LabeledDigraph &g,
                                            const RecognizerOptions &opts = {});

/// Polynomial recognizer for single-letter alphabets (leveling + PQ-tree pushes).
/// Throws wheeler::Error when sigma != 1.
std::optional<Ordering> recognize_sigma1(const LabeledDigraph &g,
                                         const RecognizerOptions &opts = {});

/// Every vertex with an out-edge has an out-edge of each label 1..sigma.
bool has_full_spectrum_outputs(const LabeledDigraph &g);

/// Builds the neighborhood-set tree from the sources; false iff some vertex lands in two
/// sets, or some vertex is never reached. Throws wheeler::Error when g has no source.
bool has_unique_string_traversal(const LabeledDigraph &g);

/// Recognizer for graphs with full spectrum outputs and unique string traversal.
/// Throws wheeler::Error when the preconditions fail.
std::optional<Ordering> recognize_special(const LabeledDigraph &g);

enum class Algorithm { Exhaustive, Codes, Sigma1, Special, Auto };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

/// The algorithm `Auto` resolves to for this graph.
Algorithm choose_algorithm(const LabeledDigraph &g);

std::optional<Ordering> recognize(const LabeledDigraph &g, Algorithm algo = Algorithm::Auto,
                                  const RecognizerOptions &opts = {});

} // namespace wheeler
