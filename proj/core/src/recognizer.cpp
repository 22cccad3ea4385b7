#include "wheeler/recognizer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "wheeler/axioms.hpp"
#include "wheeler/encoding.hpp"
#include "wheeler/isomorphism.hpp"

namespace wheeler {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Backtracking over ordered partitions. Blocks only ever split, and each split is either
// forced by the axioms or a branch that places one vertex first in its block.
class ExhaustiveSearch {
public:
  ExhaustiveSearch(const LabeledDigraph &g, const RecognizerOptions &opts)
      : g_(g), opts_(opts), n_(g.num_vertices()) {}

  std::optional<Ordering> run() {
    if (!inlabel_consistent(g_)) return std::nullopt;
    std::vector<std::vector<Vertex>> blocks;
    std::vector<Vertex> srcs = sources(g_);
    if (!srcs.empty()) blocks.push_back(srcs);
    std::vector<std::vector<Vertex>> by_label(g_.sigma() + 1);
    for (Vertex v = 0; v < n_; ++v)
      if (g_.in_degree(v) > 0) by_label[g_.edge(g_.in_edges(v).front()).label].push_back(v);
    for (auto &b : by_label)
      if (!b.empty()) blocks.push_back(std::move(b));
    if (search(std::move(blocks))) return result_;
    return std::nullopt;
  }

private:
  struct Span {
    std::size_t lo = kNone, hi = 0;
    void add(std::size_t x) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    bool empty() const { return lo == kNone; }
  };

  void index_blocks(const std::vector<std::vector<Vertex>> &blocks) {
    blk_.assign(n_, 0);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (Vertex v : blocks[i]) blk_[v] = i;
  }

  // Head-block interval of v's out-edges with label k.
  Span out_span(Vertex v, Label k) const {
    Span s;
    for (EdgeId id : g_.out_edges(v))
      if (g_.edge(id).label == k) s.add(blk_[g_.edge(id).head]);
    return s;
  }

  // True when u may precede w in the same block as far as their out-edges go.
  bool may_precede(Vertex u, Vertex w) const {
    for (Label k = 1; k <= g_.sigma(); ++k) {
      Span a = out_span(u, k), b = out_span(w, k);
      if (!a.empty() && !b.empty() && a.hi > b.lo) return false;
    }
    return true;
  }

  // Splits blocks until stable; false on a contradiction.
  bool refine(std::vector<std::vector<Vertex>> &blocks) {
    while (true) {
      index_blocks(blocks);
      bool changed = false;
      std::vector<std::vector<Vertex>> next;
      next.reserve(blocks.size());
      for (auto &b : blocks) {
        if (b.size() == 1 || g_.in_degree(b.front()) == 0) {
          next.push_back(std::move(b));
          continue;
        }
        // Tail-block interval of each vertex's in-edges.
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vertex>> keyed;
        for (Vertex v : b) {
          Span s;
          for (EdgeId id : g_.in_edges(v)) s.add(blk_[g_.edge(id).tail]);
          keyed.push_back({{s.lo, s.hi}, v});
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
          auto [a, b2] = std::pair{keyed[i].first, keyed[i + 1].first};
          if (a == b2 ? a.first != a.second : a.second > b2.first) return false;
        }
        std::size_t start = 0;
        for (std::size_t i = 1; i <= keyed.size(); ++i) {
          if (i == keyed.size() || keyed[i].first != keyed[start].first) {
            std::vector<Vertex> part;
            for (std::size_t j = start; j < i; ++j) part.push_back(keyed[j].second);
            std::sort(part.begin(), part.end());
            next.push_back(std::move(part));
            start = i;
          }
        }
        if (next.size() > 0 && keyed.front().first != keyed.back().first) changed = true;
      }
      blocks = std::move(next);
      if (!changed) break;
    }
    index_blocks(blocks);

    // Across blocks: for each label, head blocks must not decrease along tail blocks.
    const std::size_t m = blocks.size();
    for (Label k = 1; k <= g_.sigma(); ++k) {
      std::vector<Span> spans(m);
      for (const Edge &e : g_.edges())
        if (e.label == k) spans[blk_[e.tail]].add(blk_[e.head]);
      std::size_t seen_max = 0;
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (spans[i].empty()) continue;
        if (any && spans[i].lo < seen_max) return false;
        seen_max = std::max(seen_max, spans[i].hi);
        any = true;
      }
    }
    // Within a block: no pair may be forced both ways.
    for (const auto &b : blocks)
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
          if (!may_precede(b[i], b[j]) && !may_precede(b[j], b[i])) return false;
    return true;
  }

  // Swapping x and y maps the edge multiset onto itself.
  bool twins(Vertex x, Vertex y) const {
    auto swap = [&](Vertex v) { return v == x ? y : v == y ? x : v; };
    auto collect = [&](Vertex v, bool out, bool mapped) {
      std::vector<std::pair<Vertex, Label>> r;
      for (EdgeId id : out ? g_.out_edges(v) : g_.in_edges(v)) {
        const Edge &e = g_.edge(id);
        Vertex other = out ? e.head : e.tail;
        r.emplace_back(mapped ? swap(other) : other, e.label);
      }
      std::sort(r.begin(), r.end());
      return r;
    };
    return collect(x, true, true) == collect(y, true, false) &&
           collect(x, false, true) == collect(y, false, false);
  }

  bool search(std::vector<std::vector<Vertex>> blocks) {
    if (opts_.node_limit && ++nodes_ > opts_.node_limit)
      throw GuardExceeded("exhaustive search exceeded " + std::to_string(opts_.node_limit) +
                          " nodes");
    if (!refine(blocks)) return false;
    std::size_t target = blocks.size();
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (blocks[i].size() > 1) {
        target = i;
        break;
      }
    if (target == blocks.size()) {
      std::vector<Vertex> seq;
      for (const auto &b : blocks) seq.push_back(b.front());
      Ordering pi = Ordering::from_sequence(std::move(seq));
      if (!check_ordering(g_, pi)) return false;
      result_ = std::move(pi);
      return true;
    }
    const std::vector<Vertex> block = blocks[target];
    std::vector<Vertex> tried;
    for (Vertex x : block) {
      bool ok = true;
      for (Vertex y : block)
        if (y != x && !may_precede(x, y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](Vertex t) { return twins(t, x); }))
        continue;
      tried.push_back(x);
      std::vector<std::vector<Vertex>> next;
      next.reserve(blocks.size() + 1);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i != target) {
          next.push_back(blocks[i]);
          continue;
        }
        next.push_back({x});
        std::vector<Vertex> rest;
        for (Vertex y : block)
          if (y != x) rest.push_back(y);
        next.push_back(std::move(rest));
      }
      if (search(std::move(next))) return true;
      index_blocks(blocks);
    }
    return false;
  }

  const LabeledDigraph &g_;
  const RecognizerOptions &opts_;
  std::size_t n_;
  std::vector<std::size_t> blk_;
  std::size_t nodes_ = 0;
  Ordering result_;
};

} // namespace

std::optional<Ordering> recognize_exhaustive(const LabeledDigraph &g,
                                             const RecognizerOptions &opts) {
  if (g.num_vertices() > opts.max_vertices)
    throw GuardExceeded("exhaustive recognition is limited to " +
                        std::to_string(opts.max_vertices) + " vertices");
  return ExhaustiveSearch(g, opts).run();
}

std::optional<Ordering> recognize_via_codes(const LabeledDigraph &g,
                                            const RecognizerOptions &opts) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return Ordering::identity(0);

  // A code decoding to a copy of g lists the (in-degree, out-degree, out-labels) types
  // of g's vertices in some order, sources first, with each vertex's labels sorted.
  using Type = std::tuple<bool, std::size_t, std::size_t, std::vector<Label>>;
  std::vector<Type> types;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Label> labels;
    for (EdgeId id : g.out_edges(v)) labels.push_back(g.edge(id).label);
    std::sort(labels.begin(), labels.end());
    types.emplace_back(g.in_degree(v) > 0, g.in_degree(v), g.out_degree(v), std::move(labels));
  }
  std::sort(types.begin(), types.end());

  // Distinct arrangements: product of multinomials over the source / non-source parts.
  double count = 1.0;
  for (bool part : {false, true}) {
    std::size_t total = 0;
    std::map<Type, std::size_t> mult;
    for (const auto &t : types)
      if (std::get<0>(t) == part) ++mult[t], ++total;
    for (std::size_t i = 2; i <= total; ++i) count *= double(i);
    for (const auto &[t, c] : mult)
      for (std::size_t i = 2; i <= c; ++i) count /= double(i);
  }
  if (count > opts.max_code_candidates)
    throw GuardExceeded("code enumeration exceeds " + std::to_string(opts.max_code_candidates) +
                        " candidates");

  const auto split = static_cast<std::ptrdiff_t>(
      std::count_if(types.begin(), types.end(), [](const Type &t) { return !std::get<0>(t); }));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Equal types share the index of their first occurrence so permutations are distinct.
  for (std::size_t i = 1; i < n; ++i)
    if (types[i] == types[i - 1]) idx[i] = idx[i - 1];

  auto try_arrangement = [&]() -> std::optional<Ordering> {
    WheelerCode c;
    c.n = n;
    c.e = g.num_edges();
    c.sigma = g.sigma();
    std::vector<bool> o, in;
    for (std::size_t i : idx) {
      const auto &[nonsource, indeg, outdeg, labels] = types[i];
      in.insert(in.end(), indeg, false);
      in.push_back(true);
      o.insert(o.end(), outdeg, false);
      o.push_back(true);
      c.L.insert(c.L.end(), labels.begin(), labels.end());
    }
    c.O = BitVector(std::move(o));
    c.I = BitVector(std::move(in));
    auto decoded = try_decode(c);
    if (!decoded) return std::nullopt;
    auto f = labeled_iso(decoded->graph, g);
    if (!f) return std::nullopt;
    Ordering pi = Ordering::from_sequence(*f);
    if (!check_ordering(g, pi)) return std::nullopt;
    return pi;
  };

  do {
    do {
      if (auto pi = try_arrangement()) return pi;
    } while (std::next_permutation(idx.begin() + split, idx.end()));
  } while (std::next_permutation(idx.begin(), idx.begin() + split));
  return std::nullopt;
}

bool has_full_spectrum_outputs(const LabeledDigraph &g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.out_degree(v) == 0) continue;
    std::vector<bool> seen(g.sigma() + 1, false);
    for (EdgeId id : g.out_edges(v)) seen[g.edge(id).label] = true;
    for (Label k = 1; k <= g.sigma(); ++k)
      if (!seen[k]) return false;
  }
  return true;
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exhaustive") return Algorithm::Exhaustive;
  if (name == "codes") return Algorithm::Codes;
  if (name == "sigma1") return Algorithm::Sigma1;
  if (name == "special") return Algorithm::Special;
  if (name == "auto") return Algorithm::Auto;
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
  case Algorithm::Exhaustive: return "exhaustive";
  case Algorithm::Codes: return "codes";
  case Algorithm::Sigma1: return "sigma1";
  case Algorithm::Special: return "special";
  case Algorithm::Auto: return "auto";
  }
  return "auto";
}

Algorithm choose_algorithm(const LabeledDigraph &g) {
  if (g.sigma() == 1) return Algorithm::Sigma1;
  if (!sources(g).empty() && has_full_spectrum_outputs(g) && has_unique_string_traversal(g))
    return Algorithm::Special;
  return Algorithm::Exhaustive;
}

std::optional<Ordering> recognize(const LabeledDigraph &g, Algorithm algo,
                                  const RecognizerOptions &opts) {
  if (algo == Algorithm::Auto) algo = choose_algorithm(g);
  switch (algo) {
  case Algorithm::Exhaustive: return recognize_exhaustive(g, opts);
  case Algorithm::Codes: return recognize_via_codes(g, opts);
  case Algorithm::Sigma1: return recognize_sigma1(g, opts);
  case Algorithm::Special: return recognize_special(g);
  case Algorithm::Auto: break;
  }
  return recognize_exhaustive(g, opts);
}

} // namespace wheeler
