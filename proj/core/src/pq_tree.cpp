#include "wheeler/pq_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wheeler/error.hpp"

namespace wheeler {

namespace {

using Node = PQTree::Node;
using Kind = PQTree::Kind;
using LeafSet = std::unordered_set<Vertex>;

Node make_leaf(Vertex v) { return Node{Kind::Leaf, v, {}}; }

// P-node over `kids`, collapsing the trivial case.
Node make_p(std::vector<Node> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  return Node{Kind::P, 0, std::move(kids)};
}

// Q-node over `kids`; two children are order-free, so they become a P-node.
Node make_q(std::vector<Node> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  if (kids.size() == 2) return Node{Kind::P, 0, std::move(kids)};
  return Node{Kind::Q, 0, std::move(kids)};
}

void collect_leaves(const Node &n, std::vector<Vertex> &out) {
  if (n.kind == Kind::Leaf) {
    out.push_back(n.leaf);
    return;
  }
  for (const auto &c : n.children) collect_leaves(c, out);
}

std::size_t count_leaves(const Node &n) {
  if (n.kind == Kind::Leaf) return 1;
  std::size_t s = 0;
  for (const auto &c : n.children) s += count_leaves(c);
  return s;
}

std::size_t count_in(const Node &n, const LeafSet &s) {
  if (n.kind == Kind::Leaf) return s.count(n.leaf);
  std::size_t k = 0;
  for (const auto &c : n.children) k += count_in(c, s);
  return k;
}

struct Result {
  enum Status { Empty, Full, Partial, Fail } status = Fail;
  Node node;              // Empty / Full
  std::vector<Node> seq;  // Partial: children ordered empty side first, full side last
};

Result fail() { return Result{}; }

Result process(Node node, const LeafSet &s);

// Classifies the children of an internal node; returns false if any child fails.
bool process_children(Node &node, const LeafSet &s, std::vector<Result> &out) {
  out.clear();
  out.reserve(node.children.size());
  for (auto &c : node.children) {
    out.push_back(process(std::move(c), s));
    if (out.back().status == Result::Fail) return false;
  }
  return true;
}

void append_result(std::vector<Node> &dst, Result &r) {
  if (r.status == Result::Partial) {
    for (auto &x : r.seq) dst.push_back(std::move(x));
  } else {
    dst.push_back(std::move(r.node));
  }
}

// Matches E* [Partial] F* in the given order.
bool nonroot_q_pattern(const std::vector<Result> &rs) {
  std::size_t i = 0;
  while (i < rs.size() && rs[i].status == Result::Empty) ++i;
  if (i < rs.size() && rs[i].status == Result::Partial) ++i;
  while (i < rs.size() && rs[i].status == Result::Full) ++i;
  return i == rs.size();
}

Result process(Node node, const LeafSet &s) {
  const std::size_t total = count_leaves(node);
  const std::size_t in = count_in(node, s);
  if (in == 0) return Result{Result::Empty, std::move(node), {}};
  if (in == total) return Result{Result::Full, std::move(node), {}};

  std::vector<Result> rs;
  if (!process_children(node, s, rs)) return fail();

  Result out;
  out.status = Result::Partial;
  if (node.kind == Kind::P) {
    std::vector<Node> empties, fulls;
    Result *partial = nullptr;
    for (auto &r : rs) {
      if (r.status == Result::Empty) empties.push_back(std::move(r.node));
      else if (r.status == Result::Full) fulls.push_back(std::move(r.node));
      else if (partial) return fail();
      else partial = &r;
    }
    if (!empties.empty()) out.seq.push_back(make_p(std::move(empties)));
    if (partial)
      for (auto &x : partial->seq) out.seq.push_back(std::move(x));
    if (!fulls.empty()) out.seq.push_back(make_p(std::move(fulls)));
    return out;
  }

  // Q-node
  if (!nonroot_q_pattern(rs)) {
    std::reverse(rs.begin(), rs.end());
    if (!nonroot_q_pattern(rs)) return fail();
  }
  for (auto &r : rs) append_result(out.seq, r);
  return out;
}

// Reduces the pertinent root `node`: the deepest node containing all of S whose
// children each miss some element of S.
bool reduce_root(Node &node, const LeafSet &s) {
  std::vector<Result> rs;
  if (!process_children(node, s, rs)) return false;

  if (node.kind == Kind::P) {
    std::vector<Node> empties, fulls;
    std::vector<Result *> partials;
    for (auto &r : rs) {
      if (r.status == Result::Empty) empties.push_back(std::move(r.node));
      else if (r.status == Result::Full) fulls.push_back(std::move(r.node));
      else partials.push_back(&r);
    }
    if (partials.size() > 2) return false;
    std::vector<Node> q;
    if (!partials.empty())
      for (auto &x : partials[0]->seq) q.push_back(std::move(x));
    if (!fulls.empty()) q.push_back(make_p(std::move(fulls)));
    if (partials.size() == 2)
      for (auto it = partials[1]->seq.rbegin(); it != partials[1]->seq.rend(); ++it)
        q.push_back(std::move(*it));
    if (empties.empty()) {
      node = make_q(std::move(q));
    } else {
      empties.push_back(make_q(std::move(q)));
      node = make_p(std::move(empties));
    }
    return true;
  }

  // Q-node: E* [Partial] F* [Partial] E*
  std::size_t first = rs.size(), last = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].status != Result::Empty) {
      first = std::min(first, i);
      last = i;
    }
  }
  for (std::size_t i = first + 1; i < last; ++i)
    if (rs[i].status != Result::Full) return false;
  std::vector<Node> kids;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i == last && last != first && rs[i].status == Result::Partial) {
      for (auto it = rs[i].seq.rbegin(); it != rs[i].seq.rend(); ++it)
        kids.push_back(std::move(*it));
    } else {
      append_result(kids, rs[i]);
    }
  }
  node = make_q(std::move(kids));
  return true;
}

bool reduce_node(Node &node, const LeafSet &s, std::size_t size) {
  if (node.kind == Kind::Leaf) return true;
  for (auto &c : node.children)
    if (count_in(c, s) == size) return reduce_node(c, s, size);
  return reduce_root(node, s);
}

// Removes leaf x; returns false when the node becomes empty.
bool erase_leaf(Node &node, Vertex x) {
  if (node.kind == Kind::Leaf) return node.leaf != x;
  std::vector<Node> kept;
  kept.reserve(node.children.size());
  for (auto &c : node.children)
    if (erase_leaf(c, x)) kept.push_back(std::move(c));
  if (kept.empty()) return false;
  node = node.kind == Kind::P ? make_p(std::move(kept)) : make_q(std::move(kept));
  return true;
}

void dump(const Node &n, std::string &out) {
  switch (n.kind) {
  case Kind::Leaf: out += std::to_string(n.leaf + 1); return;
  case Kind::P: out += "P("; break;
  case Kind::Q: out += "Q["; break;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ' ';
    dump(n.children[i], out);
  }
  out += n.kind == Kind::P ? ')' : ']';
}

void enumerate(const Node &n, std::vector<std::vector<Vertex>> &out) {
  if (n.kind == Kind::Leaf) {
    out = {{n.leaf}};
    return;
  }
  std::vector<std::vector<std::vector<Vertex>>> parts(n.children.size());
  for (std::size_t i = 0; i < n.children.size(); ++i) enumerate(n.children[i], parts[i]);

  std::vector<std::vector<std::size_t>> arrangements;
  std::vector<std::size_t> idx(n.children.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (n.kind == Kind::P) {
    do arrangements.push_back(idx);
    while (std::next_permutation(idx.begin(), idx.end()));
  } else {
    arrangements.push_back(idx);
    std::reverse(idx.begin(), idx.end());
    arrangements.push_back(idx);
  }

  out.clear();
  for (const auto &arr : arrangements) {
    std::vector<std::vector<Vertex>> acc{{}};
    for (std::size_t c : arr) {
      std::vector<std::vector<Vertex>> next;
      for (const auto &prefix : acc)
        for (const auto &tail : parts[c]) {
          auto v = prefix;
          v.insert(v.end(), tail.begin(), tail.end());
          next.push_back(std::move(v));
        }
      acc = std::move(next);
    }
    for (auto &v : acc) out.push_back(std::move(v));
  }
}

double count_frontiers(const Node &n) {
  if (n.kind == Kind::Leaf) return 1.0;
  double r = n.kind == Kind::Q ? 2.0 : 1.0;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    r *= count_frontiers(n.children[i]);
    if (n.kind == Kind::P) r *= static_cast<double>(i + 1);
  }
  return r;
}

// Arranges the subtree so that leaves with a position appear in increasing position.
// Returns false when impossible. `lo`/`hi` receive the extreme positions (or none).
bool arrange(const Node &n, const std::unordered_map<Vertex, std::size_t> &pos,
             std::vector<Vertex> &out, std::optional<std::pair<std::size_t, std::size_t>> &span) {
  if (n.kind == Kind::Leaf) {
    out.push_back(n.leaf);
    auto it = pos.find(n.leaf);
    if (it != pos.end()) span = std::make_pair(it->second, it->second);
    return true;
  }
  struct Part {
    std::vector<Vertex> leaves;
    std::optional<std::pair<std::size_t, std::size_t>> span;
  };
  std::vector<Part> parts(n.children.size());
  for (std::size_t i = 0; i < n.children.size(); ++i)
    if (!arrange(n.children[i], pos, parts[i].leaves, parts[i].span)) return false;

  std::vector<std::size_t> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  auto ordered = [&](const std::vector<std::size_t> &o) {
    std::optional<std::size_t> prev_hi;
    for (std::size_t i : o) {
      if (!parts[i].span) continue;
      if (prev_hi && parts[i].span->first < *prev_hi) return false;
      prev_hi = parts[i].span->second;
    }
    return true;
  };
  if (n.kind == Kind::P) {
    // Children with positioned leaves sorted by position; the rest go last.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (!parts[a].span || !parts[b].span) return parts[a].span.has_value() && !parts[b].span;
      return parts[a].span->first < parts[b].span->first;
    });
    if (!ordered(order)) return false;
  } else if (!ordered(order)) {
    std::reverse(order.begin(), order.end());
    if (!ordered(order)) return false;
  }
  for (std::size_t i : order) {
    out.insert(out.end(), parts[i].leaves.begin(), parts[i].leaves.end());
    if (parts[i].span) {
      if (!span) span = parts[i].span;
      else span->second = parts[i].span->second;
    }
  }
  return true;
}

// Constraint sets whose simultaneous consecutiveness characterizes the tree.
void constraint_sets(const Node &n, std::vector<std::vector<Vertex>> &out) {
  if (n.kind == Kind::Leaf) return;
  std::vector<Vertex> all;
  collect_leaves(n, all);
  out.push_back(std::move(all));
  if (n.kind == Kind::Q) {
    for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
      std::vector<Vertex> pair;
      collect_leaves(n.children[i], pair);
      collect_leaves(n.children[i + 1], pair);
      out.push_back(std::move(pair));
    }
  }
  for (const auto &c : n.children) constraint_sets(c, out);
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw Error("PQ-tree leaves must be distinct");
  return v;
}

} // namespace

PQTree PQTree::universal(std::vector<Vertex> leaves) {
  leaves = sorted_unique(std::move(leaves));
  if (leaves.empty()) throw Error("PQ-tree needs at least one leaf");
  std::vector<Node> kids;
  for (Vertex v : leaves) kids.push_back(make_leaf(v));
  return from_root(make_p(std::move(kids)), std::move(leaves));
}

PQTree PQTree::epsilon(std::vector<Vertex> leaves) {
  PQTree t;
  t.leaves_ = sorted_unique(std::move(leaves));
  return t;
}

PQTree PQTree::fixed(std::span<const Vertex> order) {
  if (order.empty()) throw Error("PQ-tree needs at least one leaf");
  std::vector<Node> kids;
  for (Vertex v : order) kids.push_back(make_leaf(v));
  return from_root(make_q(std::move(kids)), sorted_unique({order.begin(), order.end()}));
}

PQTree PQTree::from_root(Node root, std::vector<Vertex> leaves) {
  PQTree t;
  t.root_ = std::move(root);
  t.leaves_ = std::move(leaves);
  return t;
}

std::string PQTree::to_string() const {
  if (is_epsilon()) return "EPSILON";
  std::string out;
  dump(*root_, out);
  return out;
}

PQTree reduce(const PQTree &tree, std::span<const Vertex> subset) {
  LeafSet s(subset.begin(), subset.end());
  for (Vertex v : s)
    if (!std::binary_search(tree.leaves().begin(), tree.leaves().end(), v))
      throw Error("reduce: set is not a subset of the leaves");
  if (tree.is_epsilon() || s.size() <= 1) return tree;
  Node root = tree.root();
  if (!reduce_node(root, s, s.size())) return PQTree::epsilon(tree.leaves());
  return PQTree::from_root(std::move(root), tree.leaves());
}

PQTree intersect(const PQTree &a, const PQTree &b) {
  if (a.leaves() != b.leaves()) throw Error("intersect: leaf sets differ");
  if (a.is_epsilon() || b.is_epsilon()) return PQTree::epsilon(a.leaves());
  std::vector<std::vector<Vertex>> sets;
  constraint_sets(b.root(), sets);
  PQTree t = a;
  for (const auto &s : sets) {
    t = reduce(t, s);
    if (t.is_epsilon()) break;
  }
  return t;
}

PQTree delete_leaf(const PQTree &tree, Vertex x) {
  auto leaves = tree.leaves();
  auto it = std::lower_bound(leaves.begin(), leaves.end(), x);
  if (it == leaves.end() || *it != x) throw Error("delete_leaf: not a leaf");
  if (leaves.size() == 1) throw Error("delete_leaf: cannot delete the only leaf");
  leaves.erase(it);
  if (tree.is_epsilon()) return PQTree::epsilon(std::move(leaves));
  Node root = tree.root();
  erase_leaf(root, x);
  return PQTree::from_root(std::move(root), std::move(leaves));
}

std::vector<std::vector<Vertex>> frontiers(const PQTree &tree, std::size_t max_leaves) {
  if (tree.is_epsilon()) return {};
  if (tree.leaves().size() > max_leaves)
    throw GuardExceeded("frontier enumeration limited to " + std::to_string(max_leaves) +
                        " leaves");
  std::vector<std::vector<Vertex>> out;
  enumerate(tree.root(), out);
  std::sort(out.begin(), out.end());
  return out;
}

double frontier_count(const PQTree &tree) {
  return tree.is_epsilon() ? 0.0 : count_frontiers(tree.root());
}

std::vector<Vertex> any_frontier(const PQTree &tree) {
  std::vector<Vertex> out;
  if (!tree.is_epsilon()) collect_leaves(tree.root(), out);
  return out;
}

std::optional<std::vector<Vertex>> frontier_matching(const PQTree &tree,
                                                     std::span<const Vertex> partial) {
  if (tree.is_epsilon()) return std::nullopt;
  std::unordered_map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (!std::binary_search(tree.leaves().begin(), tree.leaves().end(), partial[i]))
      throw Error("frontier_matching: vertex is not a leaf");
    if (!pos.emplace(partial[i], i).second) throw Error("frontier_matching: repeated vertex");
  }
  std::vector<Vertex> out;
  std::optional<std::pair<std::size_t, std::size_t>> span;
  if (!arrange(tree.root(), pos, out, span)) return std::nullopt;
  return out;
}

bool contains_frontier(const PQTree &tree, std::span<const Vertex> order) {
  if (tree.is_epsilon() || order.size() != tree.leaves().size()) return false;
  std::vector<Vertex> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != tree.leaves()) return false;
  auto f = frontier_matching(tree, order);
  return f && std::equal(f->begin(), f->end(), order.begin(), order.end());
}

PQTree push(const PQTree &tree, std::span<const Vertex> next, std::span<const LevelArc> arcs) {
  auto next_sorted = sorted_unique({next.begin(), next.end()});
  if (next_sorted.empty()) throw Error("push: next level is empty");

  std::map<Vertex, std::vector<Vertex>> kids;
  std::unordered_set<Vertex> covered;
  for (auto [u, v] : arcs) {
    if (!std::binary_search(tree.leaves().begin(), tree.leaves().end(), u))
      throw Error("push: arc tail is not a leaf");
    if (!std::binary_search(next_sorted.begin(), next_sorted.end(), v))
      throw Error("push: arc head is not in the next level");
    kids[u].push_back(v);
    covered.insert(v);
  }
  if (covered.size() != next_sorted.size())
    throw Error("push: a vertex of the next level has no incoming arc");
  if (tree.is_epsilon()) return PQTree::epsilon(std::move(next_sorted));

  // Drop childless leaves; they do not constrain the next level.
  PQTree t = tree;
  for (Vertex u : tree.leaves())
    if (!kids.count(u)) t = delete_leaf(t, u);

  // Grow: leaf u becomes a P-node of copies (one per child). Copies get fresh ids.
  std::vector<Vertex> copy_target;
  std::map<Vertex, std::vector<Vertex>> copies_of;
  std::unordered_map<Vertex, Node> replacement;
  for (auto &[u, vs] : kids) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<Node> leaves;
    for (Vertex v : vs) {
      Vertex id = static_cast<Vertex>(copy_target.size());
      copy_target.push_back(v);
      copies_of[v].push_back(id);
      leaves.push_back(make_leaf(id));
    }
    replacement.emplace(u, make_p(std::move(leaves)));
  }
  auto grow = [&](auto &&self, Node &n) -> void {
    if (n.kind == Kind::Leaf) {
      n = replacement.at(n.leaf);
      return;
    }
    for (auto &c : n.children) self(self, c);
  };
  Node root = t.root();
  grow(grow, root);
  std::vector<Vertex> copy_ids(copy_target.size());
  std::iota(copy_ids.begin(), copy_ids.end(), 0);
  PQTree grown = PQTree::from_root(std::move(root), copy_ids);

  // Merge: copies of one child must be consecutive, then collapse to one leaf.
  for (const auto &[v, ids] : copies_of) {
    grown = reduce(grown, ids);
    if (grown.is_epsilon()) return PQTree::epsilon(std::move(next_sorted));
  }
  for (const auto &[v, ids] : copies_of)
    for (std::size_t i = 1; i < ids.size(); ++i) grown = delete_leaf(grown, ids[i]);

  auto rename = [&](auto &&self, Node &n) -> void {
    if (n.kind == Kind::Leaf) {
      n.leaf = copy_target[n.leaf];
      return;
    }
    for (auto &c : n.children) self(self, c);
  };
  Node out = grown.root();
  rename(rename, out);
  return PQTree::from_root(std::move(out), std::move(next_sorted));
}

bool rainbow_free(std::span<const Vertex> upper, std::span<const Vertex> lower,
                  std::span<const LevelArc> arcs) {
  std::unordered_map<Vertex, std::size_t> ru, rl;
  for (std::size_t i = 0; i < upper.size(); ++i) ru[upper[i]] = i;
  for (std::size_t i = 0; i < lower.size(); ++i) rl[lower[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (auto [u, v] : arcs) e.emplace_back(ru.at(u), rl.at(v));
  std::sort(e.begin(), e.end());
  std::size_t max_head_before = 0;
  bool any = false;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    while (j < e.size() && e[j].first == e[i].first) ++j;
    if (any && e[i].second < max_head_before) return false;
    for (std::size_t k = i; k < j; ++k) max_head_before = std::max(max_head_before, e[k].second);
    any = true;
    i = j;
  }
  return true;
}

} // namespace wheeler
