#include "wheeler/optimization.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>

#include "wheeler/axioms.hpp"

namespace wheeler {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Saturate instead of overflowing; only compared against guards.
    if (r > UINT64_MAX / (n - k + i)) return UINT64_MAX;
    r = r * (n - k + i) / i;
  }
  return r;
}

// Advances a k-combination of 0..n-1 in lexicographic order.
bool next_combination(std::vector<EdgeId> &c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<EdgeId> complement(std::size_t e, const std::vector<EdgeId> &removed) {
  std::vector<EdgeId> kept;
  std::size_t j = 0;
  for (EdgeId id = 0; id < e; ++id) {
    if (j < removed.size() && removed[j] == id) ++j;
    else kept.push_back(id);
  }
  return kept;
}

// Spanning forest grown by breadth-first search, ordered level by level.
WheelerSubgraph branching(const LabeledDigraph &g) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> children(n);
  std::vector<Vertex> roots;

  auto grow = [&](std::vector<Vertex> start) {
    std::deque<Vertex> queue(start.begin(), start.end());
    for (Vertex r : start) seen[r] = true;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (EdgeId id : g.out_edges(u)) {
        Vertex v = g.edge(id).head;
        if (seen[v]) continue;
        seen[v] = true;
        children[u].emplace_back(v, id);
        queue.push_back(v);
      }
    }
  };

  roots = sources(g);
  grow(roots);
  // Source-free parts: root at the unseen vertex reaching the most unseen vertices.
  while (true) {
    std::size_t best_reach = 0;
    Vertex best = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (seen[v]) continue;
      std::vector<bool> mark(n, false);
      std::vector<Vertex> stack{v};
      mark[v] = true;
      std::size_t reach = 0;
      while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        ++reach;
        for (EdgeId id : g.out_edges(u)) {
          Vertex w = g.edge(id).head;
          if (!seen[w] && !mark[w]) {
            mark[w] = true;
            stack.push_back(w);
          }
        }
      }
      if (reach > best_reach) {
        best_reach = reach;
        best = v;
      }
    }
    if (best_reach == 0) break;
    roots.push_back(best);
    grow({best});
  }

  std::sort(roots.begin(), roots.end());
  WheelerSubgraph out;
  std::vector<Vertex> seq(roots.begin(), roots.end());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto &kids = children[seq[i]];
    std::sort(kids.begin(), kids.end());
    for (auto [v, id] : kids) {
      seq.push_back(v);
      out.edges.push_back(id);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.order = Ordering::from_sequence(std::move(seq));
  return out;
}

// One out-edge per source; sources sorted by their chosen head.
WheelerSubgraph source_star(const LabeledDigraph &g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::pair<Vertex, Vertex>> chosen; // (head, source)
  std::vector<bool> is_head(n, false), placed(n, false);
  WheelerSubgraph out;
  std::vector<Vertex> seq;
  for (Vertex s : sources(g)) {
    if (g.out_degree(s) == 0) {
      seq.push_back(s);
      placed[s] = true;
      continue;
    }
    EdgeId id = g.out_edges(s)[0];
    for (EdgeId other : g.out_edges(s)) id = std::min(id, other);
    chosen.emplace_back(g.edge(id).head, s);
    is_head[g.edge(id).head] = true;
    out.edges.push_back(id);
  }
  std::sort(chosen.begin(), chosen.end());
  for (auto [h, s] : chosen) {
    seq.push_back(s);
    placed[s] = true;
  }
  for (Vertex v = 0; v < n; ++v)
    if (!placed[v] && !is_head[v]) seq.push_back(v);
  for (Vertex v = 0; v < n; ++v)
    if (is_head[v]) seq.push_back(v);
  std::sort(out.edges.begin(), out.edges.end());
  out.order = Ordering::from_sequence(std::move(seq));
  return out;
}

// Largest edge set (single label) that `pi` keeps proper. Kept edges must be
// non-crossing and the vertices without kept in-edges must form a prefix.
std::vector<EdgeId> best_under(const LabeledDigraph &g, const Ordering &pi) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::pair<std::size_t, EdgeId>>> into(n); // (tail rank, id)
  for (EdgeId id = 0; id < g.num_edges(); ++id)
    into[pi.rank(g.edge(id).head)].emplace_back(pi.rank(g.edge(id).tail), id);
  for (auto &list : into) std::sort(list.begin(), list.end());
  // best[h][l]: most edges into ranks h.. with every such rank covered and all tails
  // at rank >= l; -1 when impossible. cut[h][l] is the largest tail rank taken at h.
  std::vector<std::vector<long>> best(n + 1, std::vector<long>(n + 1, -1));
  std::vector<std::vector<std::size_t>> cut(n + 1, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t l = 0; l <= n; ++l) best[n][l] = 0;
  for (std::size_t h = n; h-- > 0;) {
    const auto &list = into[h];
    for (std::size_t l = 0; l < n; ++l) {
      long count = 0;
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].first < l) continue;
        ++count;
        const std::size_t u = list[i].first;
        if (i + 1 < list.size() && list[i + 1].first == u) continue;
        if (best[h + 1][u] >= 0 && count + best[h + 1][u] > best[h][l]) {
          best[h][l] = count + best[h + 1][u];
          cut[h][l] = u;
        }
      }
    }
  }
  std::size_t start = n;
  for (std::size_t q = 0; q < n; ++q)
    if (best[q][0] > best[start][0]) start = q;
  std::vector<EdgeId> kept;
  for (std::size_t h = start, l = 0; h < n; l = cut[h][l], ++h)
    for (auto [u, id] : into[h])
      if (u >= l && u <= cut[h][l]) kept.push_back(id);
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Stable re-sort by (has in-edges, sorted in-neighbor ranks) until nothing moves.
Ordering refine(const LabeledDigraph &g, Ordering pi) {
  const std::size_t n = g.num_vertices();
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::pair<std::vector<std::size_t>, Vertex>> keys;
    for (std::size_t r = 0; r < n; ++r) {
      Vertex v = pi.at(r);
      std::vector<std::size_t> key{g.in_degree(v) > 0 ? 1u : 0u};
      std::vector<std::size_t> ranks;
      for (EdgeId id : g.in_edges(v)) ranks.push_back(pi.rank(g.edge(id).tail));
      std::sort(ranks.begin(), ranks.end());
      key.insert(key.end(), ranks.begin(), ranks.end());
      keys.emplace_back(std::move(key), v);
    }
    std::stable_sort(keys.begin(), keys.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<Vertex> seq;
    for (auto &k : keys) seq.push_back(k.second);
    Ordering next = Ordering::from_sequence(std::move(seq));
    if (next == pi) break;
    pi = std::move(next);
  }
  return pi;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

} // namespace

std::optional<WgvResult> wgv_exact(const LabeledDigraph &g, const WgvOptions &opts) {
  const std::size_t e = g.num_edges();
  std::size_t limit = e;
  if (opts.budget) {
    limit = std::min(*opts.budget, e);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= limit; ++k) {
      std::uint64_t c = binomial(e, k);
      total = c > UINT64_MAX - total ? UINT64_MAX : total + c;
    }
    if (total > opts.max_subsets)
      throw GuardExceeded("wgv_exact: " + std::to_string(total) + " subsets exceed the guard");
  } else if (e > opts.max_edges) {
    throw GuardExceeded("wgv_exact: " + std::to_string(e) + " edges exceed the guard of " +
                        std::to_string(opts.max_edges));
  }
  for (std::size_t k = 0; k <= limit; ++k) {
    std::vector<EdgeId> removed(k);
    std::iota(removed.begin(), removed.end(), EdgeId(0));
    do {
      const auto kept = complement(e, removed);
      auto pi = recognize(edge_subgraph(g, kept), Algorithm::Auto, opts.recognizer);
      if (pi) return WgvResult{removed, std::move(*pi)};
    } while (next_combination(removed, e));
  }
  return std::nullopt;
}

WheelerSubgraph ws_exact(const LabeledDigraph &g, const WgvOptions &opts) {
  WgvOptions unbounded = opts;
  unbounded.budget.reset();
  auto r = wgv_exact(g, unbounded);
  // Deleting every edge always succeeds, so r is set.
  return {complement(g.num_edges(), r->deleted), std::move(r->order)};
}

WheelerSubgraph ws_approx_sigma1(const LabeledDigraph &g) {
  for (const Edge &e : g.edges())
    if (e.label != g.edges()[0].label)
      throw Error("ws_approx_sigma1 needs a single edge label");
  // Isolated vertices do not count toward either side of the case split.
  std::size_t active = 0, active_sources = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.in_degree(v) + g.out_degree(v) == 0) continue;
    ++active;
    if (g.in_degree(v) == 0) ++active_sources;
  }
  const bool few_sources = 2 * active_sources <= active;
  // The construction the case split prescribes comes first, so it wins ties. Each
  // candidate ordering then keeps the largest edge set it can certify.
  std::vector<Ordering> candidates;
  candidates.push_back((few_sources ? branching(g) : source_star(g)).order);
  candidates.push_back((few_sources ? source_star(g) : branching(g)).order);
  candidates.push_back(refine(g, candidates[0]));
  candidates.push_back(refine(g, candidates[1]));
  WheelerSubgraph out;
  bool first = true;
  for (auto &pi : candidates) {
    auto kept = best_under(g, pi);
    if (first || kept.size() > out.edges.size()) out = {std::move(kept), pi};
    first = false;
  }
  if (!check_ordering(edge_subgraph(g, out.edges), out.order))
    throw std::logic_error("ws_approx_sigma1 produced an improper ordering");
  return out;
}

WheelerSubgraph ws_approx(const LabeledDigraph &g) {
  WheelerSubgraph best{{}, Ordering::identity(g.num_vertices())};
  for (Label k = 1; k <= g.sigma(); ++k) {
    std::vector<EdgeId> ids;
    for (EdgeId id = 0; id < g.num_edges(); ++id)
      if (g.edge(id).label == k) ids.push_back(id);
    if (ids.size() <= best.edges.size()) continue;
    WheelerSubgraph r = ws_approx_sigma1(edge_subgraph(g, ids));
    if (r.edges.size() <= best.edges.size()) continue;
    for (EdgeId &id : r.edges) id = ids[id];
    best = std::move(r);
  }
  return best;
}

ApproxReport approx_report(const LabeledDigraph &g, const WgvOptions &opts) {
  ApproxReport rep;
  rep.vertices = g.num_vertices();
  rep.edges = g.num_edges();
  auto t0 = std::chrono::steady_clock::now();
  try {
    rep.wheeler_input = recognize(g, Algorithm::Auto, opts.recognizer).has_value();
  } catch (const GuardExceeded &) {
  }
  if (rep.wheeler_input) {
    rep.approx_kept = rep.edges;
    rep.exact_kept = rep.edges;
    rep.ratio = 1.0;
    rep.approx_ms = rep.exact_ms = elapsed_ms(t0);
    return rep;
  }
  t0 = std::chrono::steady_clock::now();
  rep.approx_kept = ws_approx(g).edges.size();
  rep.approx_ms = elapsed_ms(t0);
  t0 = std::chrono::steady_clock::now();
  try {
    rep.exact_kept = ws_exact(g, opts).edges.size();
    rep.exact_ms = elapsed_ms(t0);
    rep.ratio = *rep.exact_kept == 0 ? 1.0 : double(rep.approx_kept) / double(*rep.exact_kept);
  } catch (const GuardExceeded &) {
  }
  return rep;
}

} // namespace wheeler
