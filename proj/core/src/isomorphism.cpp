#include "wheeler/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace wheeler {

UndirectedGraph::UndirectedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
    : edges_(std::move(edges)), adj_(n) {
  for (auto [a, b] : edges_) {
    if (a >= n || b >= n) throw Error("undirected edge endpoint out of range");
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
}

std::vector<std::size_t> distance_profile(const UndirectedGraph &h, Vertex v) {
  const std::size_t n = h.num_vertices();
  if (v >= n) throw Error("vertex out of range");
  std::vector<std::size_t> dist(n, n), profile(n, 0);
  std::queue<Vertex> q;
  dist[v] = 0;
  q.push(v);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : h.neighbors(x))
      if (dist[y] == n) {
        dist[y] = dist[x] + 1;
        ++profile[dist[y] - 1];
        q.push(y);
      }
  }
  return profile;
}

UndirectedGraph alpha(const LabeledDigraph &g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex next = static_cast<Vertex>(g.num_vertices());
  auto pendant = [&](Vertex at, std::size_t len) {
    Vertex prev = at;
    for (std::size_t i = 0; i < len; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  };
  for (const Edge &e : g.edges()) {
    const Vertex a = next++, b = next++;
    edges.emplace_back(e.tail, a);
    edges.emplace_back(a, b);
    edges.emplace_back(b, e.head);
    pendant(a, e.label);
    pendant(b, std::size_t(g.sigma()) + 2);
  }
  return UndirectedGraph(next, std::move(edges));
}

namespace {

// Vertex-colored graph with colored arcs, the common ground of both isomorphism tests.
struct Colored {
  std::vector<std::vector<std::pair<std::uint32_t, Vertex>>> adj; // (arc color, neighbor)
  std::vector<std::vector<std::size_t>> init;                     // initial vertex invariant
};

class IsoSearch {
public:
  IsoSearch(const Colored &a, const Colored &b) : a_(a), b_(b), na_(a.adj.size()) {
    std::map<std::vector<std::size_t>, std::uint32_t> ids;
    for (const auto *g : {&a, &b})
      for (const auto &inv : g->init) ids.emplace(inv, 0);
    std::uint32_t next = 0;
    for (auto &[k, v] : ids) v = next++;
    colors_.reserve(2 * na_);
    for (const auto *g : {&a, &b})
      for (const auto &inv : g->init) colors_.push_back(ids.at(inv));
  }

  std::optional<std::vector<Vertex>> run() {
    if (a_.adj.size() != b_.adj.size()) return std::nullopt;
    if (!search(colors_)) return std::nullopt;
    return result_;
  }

private:
  const std::vector<std::pair<std::uint32_t, Vertex>> &nbrs(std::size_t x) const {
    return x < na_ ? a_.adj[x] : b_.adj[x - na_];
  }
  std::size_t global(std::size_t x, bool in_b) const { return in_b ? x + na_ : x; }

  // Color refinement on the disjoint union; false when the two sides disagree.
  bool refine(std::vector<std::uint32_t> &col) const {
    std::size_t classes = 0;
    while (true) {
      using Key = std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
      std::vector<Key> keys(col.size());
      for (std::size_t x = 0; x < col.size(); ++x) {
        keys[x].first = col[x];
        for (auto [c, y] : nbrs(x)) keys[x].second.emplace_back(c, col[global(y, x >= na_)]);
        std::sort(keys[x].second.begin(), keys[x].second.end());
      }
      std::map<Key, std::uint32_t> ids;
      for (auto &k : keys) ids.emplace(k, 0);
      std::uint32_t next = 0;
      for (auto &[k, v] : ids) v = next++;
      for (std::size_t x = 0; x < col.size(); ++x) col[x] = ids.at(keys[x]);
      std::vector<long> balance(ids.size(), 0);
      for (std::size_t x = 0; x < col.size(); ++x) balance[col[x]] += x < na_ ? 1 : -1;
      for (long d : balance)
        if (d != 0) return false;
      if (ids.size() == classes) return true;
      classes = ids.size();
    }
  }

  bool verify(const std::vector<std::uint32_t> &col) {
    std::vector<std::size_t> where(col.size());
    for (std::size_t x = na_; x < col.size(); ++x) where[col[x]] = x - na_;
    std::vector<Vertex> f(na_);
    for (std::size_t x = 0; x < na_; ++x) f[x] = static_cast<Vertex>(where[col[x]]);
    for (std::size_t x = 0; x < na_; ++x) {
      auto mapped = a_.adj[x];
      for (auto &[c, y] : mapped) y = f[y];
      auto target = b_.adj[f[x]];
      std::sort(mapped.begin(), mapped.end());
      std::sort(target.begin(), target.end());
      if (mapped != target) return false;
    }
    result_ = std::move(f);
    return true;
  }

  bool search(std::vector<std::uint32_t> col) {
    if (!refine(col)) return false;
    // Class sizes on side A; pick the smallest color with more than one member.
    std::vector<std::size_t> size(col.size(), 0);
    for (std::size_t x = 0; x < na_; ++x) ++size[col[x]];
    std::size_t target = col.size();
    for (std::size_t c = 0; c < size.size(); ++c)
      if (size[c] > 1) {
        target = c;
        break;
      }
    if (target == col.size()) return verify(col);

    std::size_t v = 0;
    while (col[v] != target) ++v;
    const auto fresh = static_cast<std::uint32_t>(col.size());
    for (std::size_t w = na_; w < col.size(); ++w) {
      if (col[w] != target) continue;
      auto next = col;
      next[v] = next[w] = fresh;
      if (search(std::move(next))) return true;
    }
    return false;
  }

  const Colored &a_;
  const Colored &b_;
  std::size_t na_;
  std::vector<std::uint32_t> colors_;
  std::vector<Vertex> result_;
};

Colored colored_from(const LabeledDigraph &g) {
  Colored c;
  const std::size_t n = g.num_vertices();
  c.adj.resize(n);
  c.init.assign(n, std::vector<std::size_t>(3 * (std::size_t(g.sigma()) + 1), 0));
  for (const Edge &e : g.edges()) {
    c.adj[e.tail].emplace_back(2 * e.label, e.head);
    c.adj[e.head].emplace_back(2 * e.label + 1, e.tail);
    ++c.init[e.tail][3 * e.label];
    ++c.init[e.head][3 * e.label + 1];
    if (e.tail == e.head) ++c.init[e.tail][3 * e.label + 2];
  }
  return c;
}

Colored colored_from(const UndirectedGraph &h) {
  Colored c;
  c.adj.resize(h.num_vertices());
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    for (Vertex w : h.neighbors(v)) c.adj[v].emplace_back(0, w);
    c.init.push_back(distance_profile(h, v));
    c.init.back().push_back(h.neighbors(v).size());
  }
  return c;
}

} // namespace

std::optional<std::vector<Vertex>> labeled_iso(const LabeledDigraph &g, const LabeledDigraph &h) {
  if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges())
    return std::nullopt;
  // Per-label invariants need a common alphabet width.
  const Label sigma = std::max(g.sigma(), h.sigma());
  auto widen = [&](const LabeledDigraph &x) {
    return LabeledDigraph(x.num_vertices(), sigma, {x.edges().begin(), x.edges().end()});
  };
  const Colored a = colored_from(widen(g)), b = colored_from(widen(h));
  return IsoSearch(a, b).run();
}

std::optional<std::vector<Vertex>> undirected_isomorphism(const UndirectedGraph &a,
                                                          const UndirectedGraph &b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
    return std::nullopt;
  const Colored ca = colored_from(a), cb = colored_from(b);
  return IsoSearch(ca, cb).run();
}

bool undirected_iso(const UndirectedGraph &a, const UndirectedGraph &b) {
  return undirected_isomorphism(a, b).has_value();
}

} // namespace wheeler
