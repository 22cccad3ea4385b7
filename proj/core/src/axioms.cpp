#include "wheeler/axioms.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace wheeler {

namespace {

void require_permutation(const LabeledDigraph &g, const Ordering &pi) {
  if (pi.size() != g.num_vertices())
    throw Error("ordering size " + std::to_string(pi.size()) + " does not match vertex count " +
                std::to_string(g.num_vertices()));
}

struct RankedEdge {
  Label label;
  std::size_t tail;
  std::size_t head;
  EdgeId id;
};

std::vector<RankedEdge> ranked_edges(const LabeledDigraph &g, const Ordering &pi) {
  std::vector<RankedEdge> out;
  out.reserve(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge &e = g.edge(id);
    out.push_back({e.label, pi.rank(e.tail), pi.rank(e.head), id});
  }
  std::sort(out.begin(), out.end(), [](const RankedEdge &a, const RankedEdge &b) {
    return std::tie(a.label, a.tail, a.head) < std::tie(b.label, b.tail, b.head);
  });
  return out;
}

} // namespace

bool check_ordering(const LabeledDigraph &g, const Ordering &pi) {
  require_permutation(g, pi);
  const std::size_t n = g.num_vertices();

  std::size_t last_source = 0, first_other = n;
  bool any_source = false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) {
      last_source = std::max(last_source, pi.rank(v));
      any_source = true;
    } else {
      first_other = std::min(first_other, pi.rank(v));
    }
  }
  if (any_source && first_other < last_source)
    return false;

  const auto edges = ranked_edges(g, pi);
  bool have_prev_label = false;
  std::size_t max_head_lower_labels = 0;
  std::size_t i = 0;
  while (i < edges.size()) {
    const Label label = edges[i].label;
    std::size_t min_head = std::numeric_limits<std::size_t>::max();
    std::size_t max_head = 0;
    bool have_earlier_tail = false;
    std::size_t max_head_earlier_tails = 0;
    while (i < edges.size() && edges[i].label == label) {
      const std::size_t tail = edges[i].tail;
      std::size_t group_max = 0;
      for (; i < edges.size() && edges[i].label == label && edges[i].tail == tail; ++i) {
        if (have_earlier_tail && edges[i].head < max_head_earlier_tails)
          return false;
        min_head = std::min(min_head, edges[i].head);
        group_max = std::max(group_max, edges[i].head);
      }
      max_head_earlier_tails = have_earlier_tail ? std::max(max_head_earlier_tails, group_max) : group_max;
      have_earlier_tail = true;
      max_head = std::max(max_head, group_max);
    }
    if (have_prev_label && min_head <= max_head_lower_labels)
      return false;
    max_head_lower_labels = have_prev_label ? std::max(max_head_lower_labels, max_head) : max_head;
    have_prev_label = true;
  }
  return true;
}

std::vector<EdgeId> violations(const LabeledDigraph &g, const Ordering &pi) {
  require_permutation(g, pi);
  const std::size_t n = g.num_vertices();
  std::vector<char> bad(g.num_edges(), 0);

  // Misplaced sources and the vertices ranked before them.
  std::size_t last_source = 0, first_other = n;
  bool any_source = false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) {
      last_source = std::max(last_source, pi.rank(v));
      any_source = true;
    } else {
      first_other = std::min(first_other, pi.rank(v));
    }
  }
  if (any_source && first_other < last_source) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.in_degree(v) == 0 && pi.rank(v) > first_other)
        for (EdgeId id : g.out_edges(v))
          bad[id] = 1;
      if (g.in_degree(v) > 0 && pi.rank(v) < last_source)
        for (EdgeId id : g.in_edges(v))
          bad[id] = 1;
    }
  }

  const auto edges = ranked_edges(g, pi);
  constexpr std::size_t none_min = std::numeric_limits<std::size_t>::max();

  // Axiom (i): compare against heads of strictly lower / higher labels.
  {
    std::vector<std::size_t> prefix_max(edges.size()), suffix_min(edges.size());
    std::size_t i = 0;
    std::size_t run_max = 0;
    bool have = false;
    while (i < edges.size()) {
      std::size_t j = i;
      std::size_t label_max = 0;
      for (; j < edges.size() && edges[j].label == edges[i].label; ++j)
        label_max = std::max(label_max, edges[j].head);
      for (std::size_t t = i; t < j; ++t)
        prefix_max[t] = have ? run_max : none_min;
      run_max = have ? std::max(run_max, label_max) : label_max;
      have = true;
      i = j;
    }
    std::size_t run_min = none_min;
    std::size_t j = edges.size();
    while (j > 0) {
      std::size_t s = j;
      std::size_t label_min = none_min;
      for (; s > 0 && edges[s - 1].label == edges[j - 1].label; --s)
        label_min = std::min(label_min, edges[s - 1].head);
      for (std::size_t t = s; t < j; ++t)
        suffix_min[t] = run_min;
      run_min = std::min(run_min, label_min);
      j = s;
    }
    for (std::size_t t = 0; t < edges.size(); ++t) {
      if (suffix_min[t] != none_min && edges[t].head >= suffix_min[t])
        bad[edges[t].id] = 1;
      if (prefix_max[t] != none_min && edges[t].head <= prefix_max[t])
        bad[edges[t].id] = 1;
    }
  }

  // Axiom (ii): rainbows within each label.
  std::size_t i = 0;
  while (i < edges.size()) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].label == edges[i].label)
      ++j;
    // Max head over strictly smaller tails; min head over strictly larger tails.
    std::size_t run_max = 0;
    bool have = false;
    for (std::size_t a = i; a < j;) {
      std::size_t b = a;
      std::size_t group_max = 0;
      for (; b < j && edges[b].tail == edges[a].tail; ++b) {
        if (have && edges[b].head < run_max)
          bad[edges[b].id] = 1;
        group_max = std::max(group_max, edges[b].head);
      }
      run_max = have ? std::max(run_max, group_max) : group_max;
      have = true;
      a = b;
    }
    std::size_t run_min = none_min;
    for (std::size_t b = j; b > i;) {
      std::size_t a = b;
      std::size_t group_min = none_min;
      for (; a > i && edges[a - 1].tail == edges[b - 1].tail; --a) {
        if (edges[a - 1].head > run_min)
          bad[edges[a - 1].id] = 1;
        group_min = std::min(group_min, edges[a - 1].head);
      }
      run_min = std::min(run_min, group_min);
      b = a;
    }
    i = j;
  }

  std::vector<EdgeId> out;
  for (EdgeId id = 0; id < bad.size(); ++id)
    if (bad[id])
      out.push_back(id);
  return out;
}

RankRange follow(const LabeledDigraph &g, const Ordering &pi, RankRange start,
                 std::span<const Label> pattern) {
  if (!check_ordering(g, pi))
    throw Error("follow requires a proper ordering");
  const std::size_t n = g.num_vertices();
  if (start.empty())
    return {};
  if (start.end > n)
    throw Error("start range exceeds the vertex count");

  std::vector<char> current(n, 0), next(n, 0);
  for (std::size_t r = start.begin; r < start.end; ++r)
    current[pi.at(r)] = 1;
  for (Label k : pattern) {
    if (k < 1 || k > g.sigma())
      return {};
    std::fill(next.begin(), next.end(), 0);
    for (Vertex v = 0; v < n; ++v)
      if (current[v])
        for (EdgeId id : g.out_edges(v))
          if (g.edge(id).label == k)
            next[g.edge(id).head] = 1;
    current.swap(next);
  }

  std::size_t lo = n, hi = 0, count = 0;
  for (Vertex v = 0; v < n; ++v)
    if (current[v]) {
      lo = std::min(lo, pi.rank(v));
      hi = std::max(hi, pi.rank(v));
      ++count;
    }
  if (count == 0)
    return {};
  if (hi - lo + 1 != count)
    throw std::logic_error("path coherence violated under a proper ordering");
  return {lo, hi + 1};
}

} // namespace wheeler
