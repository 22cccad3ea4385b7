// Recognition for graphs with full spectrum outputs and the unique string traversal
// property: vertex sets reached by one string form a tree, sets are ordered by their
// strings, and PQ-trees are propagated along the tree to order each set internally.

#include <algorithm>
#include <map>
#include <set>

#include "wheeler/axioms.hpp"
#include "wheeler/pq_tree.hpp"
#include "wheeler/recognizer.hpp"

namespace wheeler {

namespace {

struct SetNode {
  std::vector<Vertex> members;
  std::vector<Label> str; // labels read from this set back to the sources
  std::size_t parent = SIZE_MAX;
  Label label = 0;
  std::vector<std::size_t> children;
};

// Neighborhood-set tree rooted at the sources; empty when the traversal property fails.
std::vector<SetNode> neighborhood_tree(const LabeledDigraph &g) {
  std::vector<Vertex> srcs = sources(g);
  if (srcs.empty()) throw Error("unique string traversal needs at least one source");
  std::vector<SetNode> nodes(1);
  nodes[0].members = srcs;
  std::vector<bool> assigned(g.num_vertices(), false);
  for (Vertex s : srcs) assigned[s] = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (Label k = 1; k <= g.sigma(); ++k) {
      std::set<Vertex> next;
      for (Vertex u : nodes[i].members)
        for (EdgeId id : g.out_edges(u))
          if (g.edge(id).label == k) next.insert(g.edge(id).head);
      if (next.empty()) continue;
      for (Vertex v : next) {
        if (assigned[v]) return {};
        assigned[v] = true;
      }
      SetNode child;
      child.members.assign(next.begin(), next.end());
      child.str.push_back(k);
      child.str.insert(child.str.end(), nodes[i].str.begin(), nodes[i].str.end());
      child.parent = i;
      child.label = k;
      nodes[i].children.push_back(nodes.size());
      nodes.push_back(std::move(child));
    }
  }
  if (std::find(assigned.begin(), assigned.end(), false) != assigned.end()) return {};
  return nodes;
}

class Special {
public:
  Special(const LabeledDigraph &g, std::vector<SetNode> nodes)
      : g_(g), nodes_(std::move(nodes)), final_(nodes_.size()), incoming_(nodes_.size()) {}

  std::optional<Ordering> run() {
    const auto &root = nodes_[0].members;
    up_.assign(nodes_.size(), PQTree());
    for (std::size_t s = nodes_.size(); s-- > 0;)
      if (!gather(s)) return std::nullopt;
    if (!propagate(0, PQTree::universal(root))) return std::nullopt;
    return compose();
  }

private:
  std::vector<Vertex> nonsinks(std::size_t s) const {
    std::vector<Vertex> out;
    for (Vertex v : nodes_[s].members)
      if (g_.out_degree(v) > 0) out.push_back(v);
    return out;
  }

  std::vector<LevelArc> arcs(std::size_t s, std::size_t child) const {
    std::vector<LevelArc> out;
    for (Vertex u : nodes_[s].members)
      for (EdgeId id : g_.out_edges(u))
        if (g_.edge(id).label == nodes_[child].label) out.emplace_back(u, g_.edge(id).head);
    return out;
  }

  static std::vector<LevelArc> reversed(const std::vector<LevelArc> &a) {
    std::vector<LevelArc> r;
    for (auto [u, v] : a) r.emplace_back(v, u);
    return r;
  }

  // Bottom-up: orders of the nonsinks of `s` allowed by its subtree. Children are
  // visited first since they have larger indices.
  bool gather(std::size_t s) {
    const auto inner = nonsinks(s);
    if (inner.empty()) return true;
    PQTree t = PQTree::universal(inner);
    for (std::size_t c : nodes_[s].children) {
      const auto a = arcs(s, c);
      const auto c_inner = nonsinks(c);
      PQTree below = c_inner.size() == nodes_[c].members.size()
                         ? up_[c]
                         : PQTree::universal(nodes_[c].members);
      t = intersect(t, push(below, inner, reversed(a)));
      if (t.is_epsilon()) return false;
      if (c_inner.empty() || c_inner.size() == nodes_[c].members.size()) continue;
      // Sinks of the child are free below, so its nonsink constraints only lift
      // exactly when their parents cover this set.
      std::vector<LevelArc> sub;
      std::set<Vertex> covered;
      for (auto [u, v] : a)
        if (g_.out_degree(v) > 0) {
          sub.emplace_back(v, u);
          covered.insert(u);
        }
      if (covered.size() != inner.size()) continue;
      t = intersect(t, push(up_[c], inner, sub));
      if (t.is_epsilon()) return false;
    }
    up_[s] = std::move(t);
    return true;
  }

  // Down-push, up-push with intersection, then re-push and recurse.
  bool propagate(std::size_t s, PQTree t) {
    incoming_[s] = t;
    // Sinks cannot be pushed back up, so they leave the tree here.
    const auto inner = nonsinks(s);
    for (Vertex v : nodes_[s].members)
      if (g_.out_degree(v) == 0 && t.leaves().size() > 1) t = delete_leaf(t, v);
    if (inner.empty()) {
      final_[s] = t;
      return true;
    }
    t = intersect(t, up_[s]);
    if (t.is_epsilon()) return false;
    for (std::size_t c : nodes_[s].children) {
      const auto a = arcs(s, c);
      PQTree down = push(t, nodes_[c].members, a);
      t = intersect(t, push(down, inner, reversed(a)));
      if (t.is_epsilon()) return false;
    }
    final_[s] = t;
    for (std::size_t c : nodes_[s].children) {
      PQTree down = push(t, nodes_[c].members, arcs(s, c));
      if (down.is_epsilon() || !propagate(c, std::move(down))) return false;
    }
    return true;
  }

  // Orders set `s` given its parent's order, then recurses.
  bool place(std::size_t s, const std::vector<Vertex> &parent_order,
             std::vector<std::vector<Vertex>> &orders) {
    std::vector<Vertex> order;
    const auto inner = nonsinks(s);
    if (nodes_[s].parent == SIZE_MAX) {
      if (!inner.empty()) order = any_frontier(final_[s]);
      for (Vertex v : nodes_[s].members)
        if (g_.out_degree(v) == 0) order.push_back(v);
    } else {
      const std::size_t p = nodes_[s].parent;
      const auto a = arcs(p, s);
      std::vector<Vertex> tails;
      for (Vertex v : parent_order)
        if (g_.out_degree(v) > 0) tails.push_back(v);
      PQTree compatible = push(PQTree::fixed(tails), nodes_[s].members, a);
      compatible = intersect(compatible, incoming_[s]);
      if (compatible.is_epsilon()) return false;
      std::vector<Vertex> inner_order;
      if (!inner.empty() && inner.size() < nodes_[s].members.size()) {
        PQTree restricted = compatible;
        for (Vertex v : nodes_[s].members)
          if (g_.out_degree(v) == 0) restricted = delete_leaf(restricted, v);
        PQTree both = intersect(restricted, final_[s]);
        if (both.is_epsilon()) return false;
        inner_order = any_frontier(both);
      } else if (!inner.empty()) {
        PQTree both = intersect(compatible, final_[s]);
        if (both.is_epsilon()) return false;
        inner_order = any_frontier(both);
      }
      auto full = inner.empty() ? std::optional<std::vector<Vertex>>(any_frontier(compatible))
                                : frontier_matching(compatible, inner_order);
      if (!full) return false;
      if (!rainbow_free(tails, *full, a)) std::reverse(full->begin(), full->end());
      if (!rainbow_free(tails, *full, a)) return false;
      order = std::move(*full);
    }
    orders[s] = order;
    for (std::size_t c : nodes_[s].children)
      if (!place(c, order, orders)) return false;
    return true;
  }

  std::optional<Ordering> compose() {
    std::vector<std::vector<Vertex>> orders(nodes_.size());
    if (!place(0, {}, orders)) return std::nullopt;
    std::vector<std::size_t> by_string(nodes_.size());
    for (std::size_t i = 0; i < by_string.size(); ++i) by_string[i] = i;
    std::sort(by_string.begin(), by_string.end(),
              [&](std::size_t a, std::size_t b) { return nodes_[a].str < nodes_[b].str; });
    std::vector<Vertex> seq;
    for (std::size_t s : by_string) seq.insert(seq.end(), orders[s].begin(), orders[s].end());
    Ordering pi = Ordering::from_sequence(std::move(seq));
    if (!check_ordering(g_, pi)) return std::nullopt;
    return pi;
  }

  const LabeledDigraph &g_;
  std::vector<SetNode> nodes_;
  std::vector<PQTree> final_;
  std::vector<PQTree> incoming_;
  std::vector<PQTree> up_;
};

} // namespace

bool has_unique_string_traversal(const LabeledDigraph &g) {
  return !neighborhood_tree(g).empty();
}

std::optional<Ordering> recognize_special(const LabeledDigraph &g) {
  if (!has_full_spectrum_outputs(g)) throw Error("recognize_special needs full spectrum outputs");
  auto nodes = neighborhood_tree(g);
  if (nodes.empty()) throw Error("recognize_special needs the unique string traversal property");
  return Special(g, std::move(nodes)).run();
}

} // namespace wheeler
