// Single-letter recognition.
//
// Loop-free part: in a proper ordering of a loop-free single-label DAG the BFS levels from
// the sources are contiguous, every edge goes one level down or stays inside its level,
// and all same-level edges of a level enter its last vertex. Level orders are found by
// pushing PQ-trees down the levels; two anchor leaves per level pin the orientation.
//
// Self-loops: a loop vertex y splits a proper ordering into the part before and after it.
// Loop vertices and the source set act as roots; every other vertex hangs below one root
// (forward, after it) or above one (backward, before it), and a vertex hanging from two
// consecutive roots must be a sink where the two pieces meet.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wheeler/axioms.hpp"
#include "wheeler/pq_tree.hpp"
#include "wheeler/recognizer.hpp"

namespace wheeler {

namespace {

struct Piece {
  std::vector<Vertex> roots;
  std::vector<Vertex> members;
  std::optional<Vertex> last; // must end the piece
};

class PieceSolver {
public:
  PieceSolver(const std::vector<Edge> &edges, std::size_t n) : edges_(edges), base_(n) {
    out_.resize(n);
    for (std::size_t i = 0; i < edges.size(); ++i) out_[edges[i].tail].push_back(i);
  }

  // Roots first, then members, or none.
  std::optional<std::vector<Vertex>> solve(const Piece &p) const {
    std::map<Vertex, std::size_t> level;
    for (Vertex r : p.roots) level[r] = 0;
    std::set<Vertex> inside(p.members.begin(), p.members.end());
    inside.insert(p.roots.begin(), p.roots.end());

    std::vector<std::vector<Vertex>> levels{p.roots};
    std::vector<std::size_t> piece_edges;
    for (std::size_t d = 0; d < levels.size(); ++d) {
      std::vector<Vertex> next;
      for (Vertex u : levels[d])
        for (std::size_t id : out_[u]) {
          const Vertex v = edges_[id].head;
          if (!inside.count(v)) continue;
          piece_edges.push_back(id);
          if (!level.count(v)) {
            level[v] = d + 1;
            next.push_back(v);
          }
        }
      std::sort(next.begin(), next.end());
      if (!next.empty()) levels.push_back(std::move(next));
    }
    if (level.size() != inside.size()) return std::nullopt;
    const std::size_t depth = levels.size() - 1;

    // Same-level edges must all enter one vertex per level, never a root.
    std::vector<std::optional<Vertex>> z(levels.size() + 1);
    std::vector<std::vector<LevelArc>> arcs(levels.size());
    for (std::size_t id : piece_edges) {
      const Edge &e = edges_[id];
      const std::size_t lu = level.at(e.tail), lv = level.at(e.head);
      if (lv < lu || lv == 0) return std::nullopt;
      if (lv == lu) {
        if (z[lu] && *z[lu] != e.head) return std::nullopt;
        z[lu] = e.head;
        arcs[lu].emplace_back(e.tail, left(lu + 1));
      } else {
        arcs[lu].emplace_back(e.tail, e.head);
      }
    }
    if (p.last) {
      if (!level.count(*p.last) || level.at(*p.last) != depth) return std::nullopt;
      if (z[depth] && *z[depth] != *p.last) return std::nullopt;
      z[depth] = *p.last;
    }

    // Forward pass.
    std::vector<PQTree> trees;
    std::vector<Vertex> ground = levels[0];
    ground.push_back(left(0));
    ground.push_back(right(0));
    PQTree t = PQTree::universal(ground);
    std::vector<Vertex> no_left = levels[0], no_right = levels[0];
    no_left.push_back(right(0));
    no_right.push_back(left(0));
    t = reduce(reduce(t, no_left), no_right);
    for (std::size_t d = 0; d <= depth; ++d) {
      if (z[d]) {
        const Vertex pair[2] = {*z[d], right(d)};
        t = reduce(t, pair);
      }
      if (t.is_epsilon()) return std::nullopt;
      trees.push_back(t);
      arcs[d].emplace_back(left(d), left(d + 1));
      arcs[d].emplace_back(right(d), right(d + 1));
      std::vector<Vertex> next = d < depth ? levels[d + 1] : std::vector<Vertex>{};
      next.push_back(left(d + 1));
      next.push_back(right(d + 1));
      t = push(t, next, arcs[d]);
      if (t.is_epsilon()) return std::nullopt;
    }

    // Backward pass: fix the deepest layer and pull compatible orders upward.
    std::vector<Vertex> below{left(depth + 1), right(depth + 1)};
    std::vector<std::vector<Vertex>> chosen(depth + 1);
    for (std::size_t d = depth + 1; d-- > 0;) {
      std::set<Vertex> tails;
      std::vector<LevelArc> reversed;
      for (auto [u, v] : arcs[d]) {
        tails.insert(u);
        reversed.emplace_back(v, u);
      }
      std::vector<Vertex> tail_list(tails.begin(), tails.end());
      PQTree up = push(PQTree::fixed(below), tail_list, reversed);
      PQTree restricted = trees[d];
      for (Vertex v : trees[d].leaves())
        if (!tails.count(v)) restricted = delete_leaf(restricted, v);
      PQTree both = intersect(restricted, up);
      if (both.is_epsilon()) throw std::logic_error("sigma1: inconsistent level trees");
      std::vector<Vertex> g = any_frontier(both);
      if (!rainbow_free(g, below, arcs[d])) std::reverse(g.begin(), g.end());
      if (!rainbow_free(g, below, arcs[d]))
        throw std::logic_error("sigma1: no rainbow-free orientation");
      auto full = frontier_matching(trees[d], g);
      if (!full) throw std::logic_error("sigma1: frontier does not extend");
      chosen[d] = *full;
      below = std::move(*full);
    }

    std::vector<Vertex> order;
    for (const auto &lv : chosen)
      for (Vertex v : lv)
        if (v < base_) order.push_back(v);
    return order;
  }

private:
  Vertex left(std::size_t d) const { return static_cast<Vertex>(base_ + 2 * d); }
  Vertex right(std::size_t d) const { return static_cast<Vertex>(base_ + 2 * d + 1); }

  const std::vector<Edge> &edges_;
  std::size_t base_;
  std::vector<std::vector<std::size_t>> out_;
};

// Vertices of `comp` reachable from `from` along edges inside comp.
std::set<Vertex> reach_within(const std::vector<std::vector<Vertex>> &succ,
                              const std::vector<Vertex> &from, const std::set<Vertex> &comp) {
  std::set<Vertex> seen;
  std::vector<Vertex> stack;
  for (Vertex r : from)
    for (Vertex v : succ[r])
      if (comp.count(v) && seen.insert(v).second) stack.push_back(v);
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : succ[u])
      if (comp.count(v) && seen.insert(v).second) stack.push_back(v);
  }
  return seen;
}

struct Side {
  std::size_t facing = SIZE_MAX; // neighbouring root, or SIZE_MAX for an open side
  std::vector<Vertex> members;
  std::optional<Vertex> last;
  bool last_is_root = false;
  bool shared_last = false; // `last` is a sink shared with the facing root's side
  bool locked = false;      // the facing root's piece reaches this root
  std::vector<Vertex> order;
};

class Sigma1 {
public:
  Sigma1(const LabeledDigraph &g, const RecognizerOptions &opts) : g_(g), opts_(opts) {}

  std::optional<Ordering> run() {
    const std::size_t n = g_.num_vertices();
    if (n == 0) return Ordering::identity(0);

    std::vector<bool> loop(n, false);
    for (const Edge &e : g_.edges()) {
      if (e.tail == e.head) loop[e.tail] = true;
      else edges_.push_back(e);
    }
    succ_.assign(n, {});
    std::vector<std::size_t> indeg(n, 0);
    for (const Edge &e : edges_) {
      succ_[e.tail].push_back(e.head);
      ++indeg[e.head];
    }
    if (!acyclic(indeg)) return std::nullopt;

    // Roots: the source set (one root) and every loop vertex.
    root_of_.assign(n, SIZE_MAX);
    std::vector<Vertex> srcs = sources(g_);
    if (!srcs.empty()) {
      for (Vertex s : srcs) root_of_[s] = roots_.size();
      roots_.push_back(srcs);
      has_source_root_ = true;
    }
    for (Vertex v = 0; v < n; ++v)
      if (loop[v]) {
        root_of_[v] = roots_.size();
        roots_.push_back({v});
      }
    sides_.assign(roots_.size(), {});
    free_.assign(roots_.size(), {});
    links_.assign(roots_.size(), {});

    if (!classify_components() || !link_roots()) return std::nullopt;
    for (std::size_t r = 0; r < roots_.size(); ++r)
      if (!settle_root(r)) return std::nullopt;
    return assemble();
  }

private:
  bool acyclic(std::vector<std::size_t> indeg) const {
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < indeg.size(); ++v)
      if (indeg[v] == 0) stack.push_back(v);
    std::size_t seen = 0;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++seen;
      for (Vertex v : succ_[u])
        if (--indeg[v] == 0) stack.push_back(v);
    }
    return seen == indeg.size();
  }

  Side &side_facing(std::size_t r, std::size_t other) {
    for (auto &s : sides_[r])
      if (s.facing == other) return s;
    sides_[r].push_back(Side{});
    sides_[r].back().facing = other;
    links_[r].insert(other);
    links_[other].insert(r);
    return sides_[r].back();
  }

  bool set_last(Side &s, Vertex v, bool is_root, bool shared) {
    if (s.last && (*s.last != v || s.last_is_root != is_root)) return false;
    s.last = v;
    s.last_is_root = is_root;
    s.shared_last = s.shared_last || shared;
    return true;
  }

  bool classify_components() {
    const std::size_t n = g_.num_vertices();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Edge &e : edges_)
      if (root_of_[e.tail] == SIZE_MAX && root_of_[e.head] == SIZE_MAX)
        parent[find(e.tail)] = find(e.head);
    std::map<std::size_t, std::set<Vertex>> comps;
    for (Vertex v = 0; v < n; ++v)
      if (root_of_[v] == SIZE_MAX) comps[find(v)].insert(v);

    for (auto &[key, comp] : comps) {
      std::set<std::size_t> in, out;
      for (const Edge &e : edges_) {
        if (comp.count(e.head) && root_of_[e.tail] != SIZE_MAX) in.insert(root_of_[e.tail]);
        if (comp.count(e.tail) && root_of_[e.head] != SIZE_MAX) out.insert(root_of_[e.head]);
      }
      if (in.empty() || in.size() > 2) return false;
      if (in.size() == 2) {
        if (!out.empty()) return false;
        const std::size_t a = *in.begin(), b = *in.rbegin();
        auto da = reach_within(succ_, roots_[a], comp);
        auto db = reach_within(succ_, roots_[b], comp);
        std::vector<Vertex> common;
        std::set_intersection(da.begin(), da.end(), db.begin(), db.end(),
                              std::back_inserter(common));
        if (common.size() != 1 || g_.out_degree(common[0]) != 0) return false;
        if (da.size() + db.size() - 1 != comp.size()) return false;
        for (auto [r, part] : {std::pair{a, &da}, std::pair{b, &db}}) {
          const std::size_t other = r == a ? b : a;
          Side &s = side_facing(r, other);
          if (s.shared_last) return false; // at most one meeting sink per gap
          s.members.insert(s.members.end(), part->begin(), part->end());
          if (!set_last(s, common[0], false, true)) return false;
        }
        continue;
      }
      const std::size_t r = *in.begin();
      if (out.size() > 1 || out.count(r)) return false;
      if (out.empty()) {
        free_[r].emplace_back(comp.begin(), comp.end());
        continue;
      }
      const std::size_t other = *out.begin();
      Side &s = side_facing(r, other);
      s.members.insert(s.members.end(), comp.begin(), comp.end());
      if (!set_last(s, roots_[other].front(), true, false)) return false;
    }
    return true;
  }

  bool link_roots() {
    for (const Edge &e : edges_) {
      const std::size_t a = root_of_[e.tail], b = root_of_[e.head];
      if (a == SIZE_MAX || b == SIZE_MAX) continue;
      Side &s = side_facing(a, b);
      if (!set_last(s, e.head, true, false)) return false;
    }
    // Links must form vertex-disjoint paths, with the source root at an end.
    std::vector<bool> seen(roots_.size(), false);
    for (std::size_t r = 0; r < roots_.size(); ++r) {
      if (links_[r].size() > 2) return false;
      if (has_source_root_ && r == 0 && links_[r].size() > 1) return false;
      if (seen[r]) continue;
      // Walk the component; a path on k roots has k-1 links.
      std::size_t count = 0, degree_sum = 0;
      std::vector<std::size_t> stack{r};
      seen[r] = true;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        ++count;
        degree_sum += links_[x].size();
        for (std::size_t y : links_[x])
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
      }
      if (degree_sum / 2 != count - 1) return false;
    }
    // A side reaching the facing root forces that root's facing side to stay empty.
    for (std::size_t r = 0; r < roots_.size(); ++r)
      for (auto &s : sides_[r])
        if (s.last_is_root) {
          Side &back = side_facing(s.facing, r);
          if (!back.members.empty() || back.last) return false;
          back.locked = true;
        }
    return true;
  }

  bool feasible(std::size_t r, Side &s) {
    if (s.locked) return s.members.empty();
    if (opts_.node_limit && ++nodes_ > opts_.node_limit)
      throw GuardExceeded("sigma1 side assignment exceeded " + std::to_string(opts_.node_limit) +
                          " nodes");
    Piece p{roots_[r], s.members, s.last};
    if (s.last && s.last_is_root) p.members.push_back(*s.last);
    auto order = solver().solve(p);
    if (!order) return false;
    s.order = std::move(*order);
    return true;
  }

  const PieceSolver &solver() {
    if (!solver_) solver_.emplace(edges_, g_.num_vertices());
    return *solver_;
  }

  // Distributes the free components of root r over its sides.
  bool settle_root(std::size_t r) {
    const bool source_root = has_source_root_ && r == 0;
    const std::size_t wanted = source_root ? 1 : 2;
    while (sides_[r].size() < wanted) sides_[r].push_back(Side{});
    auto &sides = sides_[r];
    std::vector<Side> base = sides;
    const auto &comps = free_[r];

    // Depth-first over assignments; infeasible partial assignments stay infeasible.
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
      if (i == comps.size()) {
        for (auto &s : sides)
          if (!feasible(r, s)) return false;
        return true;
      }
      for (std::size_t k = 0; k < sides.size(); ++k) {
        if (sides[k].locked) continue;
        // Two open sides are interchangeable until one of them holds something.
        if (k == 1 && sides[0].facing == SIZE_MAX && sides[1].facing == SIZE_MAX &&
            sides[0].members.size() == sides[1].members.size() && sides[0].members.empty())
          continue;
        const std::size_t before = sides[k].members.size();
        sides[k].members.insert(sides[k].members.end(), comps[i].begin(), comps[i].end());
        if (feasible(r, sides[k]) && place(i + 1)) return true;
        sides[k].members.resize(before);
      }
      return false;
    };
    if (place(0)) return true;
    sides = std::move(base);
    return false;
  }

  std::optional<Ordering> assemble() {
    // Root sequence: the source root's path first, then the remaining paths.
    std::vector<std::size_t> seq;
    std::vector<bool> used(roots_.size(), false);
    auto walk = [&](std::size_t start) {
      std::size_t prev = SIZE_MAX, cur = start;
      while (cur != SIZE_MAX) {
        used[cur] = true;
        seq.push_back(cur);
        std::size_t next = SIZE_MAX;
        for (std::size_t y : links_[cur])
          if (y != prev && !used[y]) next = y;
        prev = cur;
        cur = next;
      }
    };
    for (std::size_t r = 0; r < roots_.size(); ++r)
      if (!used[r] && links_[r].size() <= 1) walk(r);

    std::vector<Vertex> order;
    std::vector<bool> placed(g_.num_vertices(), false);
    auto emit = [&](Vertex v) {
      if (!placed[v]) {
        placed[v] = true;
        order.push_back(v);
      }
    };
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const std::size_t r = seq[j];
      const std::size_t prev = j > 0 ? seq[j - 1] : SIZE_MAX;
      const std::size_t next = j + 1 < seq.size() ? seq[j + 1] : SIZE_MAX;
      Side *left = nullptr, *right = nullptr;
      std::vector<Side *> open;
      for (auto &s : sides_[r]) {
        if (s.facing != SIZE_MAX && s.facing == prev) left = &s;
        else if (s.facing != SIZE_MAX && s.facing == next) right = &s;
        else open.push_back(&s);
      }
      const bool source_root = has_source_root_ && r == 0;
      if (source_root) {
        if (!right) right = open.empty() ? nullptr : open.front();
      } else {
        if (!left && !open.empty()) left = open.front(), open.erase(open.begin());
        if (!right && !open.empty()) right = open.front();
      }
      if (left) {
        // Reverse piece: its members read backwards end at r.
        for (auto it = left->order.rbegin(); it != left->order.rend(); ++it) {
          if (root_of_[*it] == r) continue;
          if (left->last && *it == *left->last) {
            if (left->last_is_root) continue;
          }
          emit(*it);
        }
      }
      if (right && !right->order.empty()) {
        for (Vertex v : right->order) {
          if (right->last && v == *right->last && right->last_is_root) continue;
          emit(v);
        }
      } else {
        for (Vertex v : roots_[r]) emit(v);
      }
      for (Vertex v : roots_[r]) emit(v);
    }
    if (order.size() != g_.num_vertices()) throw std::logic_error("sigma1: incomplete ordering");
    Ordering pi = Ordering::from_sequence(std::move(order));
    if (!check_ordering(g_, pi)) throw std::logic_error("sigma1: assembled ordering is invalid");
    return pi;
  }

  const LabeledDigraph &g_;
  const RecognizerOptions &opts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::size_t> root_of_;
  std::vector<std::vector<Vertex>> roots_;
  bool has_source_root_ = false;
  std::vector<std::vector<Side>> sides_;
  std::vector<std::vector<std::vector<Vertex>>> free_;
  std::vector<std::set<std::size_t>> links_;
  std::optional<PieceSolver> solver_;
  std::size_t nodes_ = 0;
};

} // namespace

std::optional<Ordering> recognize_sigma1(const LabeledDigraph &g, const RecognizerOptions &opts) {
  if (g.sigma() != 1) throw Error("recognize_sigma1 requires sigma = 1");
  return Sigma1(g, opts).run();
}

} // namespace wheeler
