#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wheeler/graph.hpp"
#include "wheeler/recognizer.hpp"

namespace wheeler {

struct WgvOptions {
  /// Give up after this many deletions; wgv_exact then returns none.
  std::optional<std::size_t> budget;
  /// Edge-count guard when no budget is given.
  std::size_t max_edges = 16;
  /// Subset-count guard when a budget is given.
  std::uint64_t max_subsets = std::uint64_t(1) << 24;
  RecognizerOptions recognizer;
};

/// A kept edge set (ids into the input graph, ascending) with a proper ordering of the
/// subgraph it spans.
struct WheelerSubgraph {
  std::vector<EdgeId> edges;
  Ordering order;
};

struct WgvResult {
  std::vector<EdgeId> deleted;
  Ordering order;
};

/// Minimum deletion set, subsets tried by size then lexicographically by edge id.
/// Returns none only when `budget` is set and exceeded. Throws GuardExceeded.
std::optional<WgvResult> wgv_exact(const LabeledDigraph &g, const WgvOptions &opts = {});

/// Complement of wgv_exact.
WheelerSubgraph ws_exact(const LabeledDigraph &g, const WgvOptions &opts = {});

/// Constant-factor approximation for graphs whose edges all carry one label.
/// Throws wheeler::Error when two labels occur.
WheelerSubgraph ws_approx_sigma1(const LabeledDigraph &g);

/// Best single-label approximation over all labels.
WheelerSubgraph ws_approx(const LabeledDigraph &g);

struct ApproxReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t approx_kept = 0;
  std::optional<std::size_t> exact_kept;
  /// approx_kept / exact_kept; 1 when exact_kept is 0. None when the exact solver was
  /// out of range.
  std::optional<double> ratio;
  bool wheeler_input = false;
  double approx_ms = 0;
  double exact_ms = 0;
};

/// Runs ws_approx and, within the guards, ws_exact. A Wheeler input short-circuits to
/// ratio 1.
ApproxReport approx_report(const LabeledDigraph &g, const WgvOptions &opts = {});

} // namespace wheeler
