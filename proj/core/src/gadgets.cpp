#include "wheeler/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "text.hpp"

namespace wheeler {

namespace {

std::vector<std::uint32_t> positions(std::size_t n, std::span<const std::uint32_t> order) {
  if (order.size() != n) throw Error("order has " + std::to_string(order.size()) +
                                     " entries, expected " + std::to_string(n));
  std::vector<std::uint32_t> pos(n + 1, UINT32_MAX);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t t = order[r];
    if (t < 1 || t > n || pos[t] != UINT32_MAX) throw Error("order is not a permutation of 1..n");
    pos[t] = std::uint32_t(r);
  }
  return pos;
}

void check_element(std::uint32_t t, std::size_t n) {
  if (t < 1 || t > n)
    throw Error("element " + std::to_string(t) + " outside 1.." + std::to_string(n));
}

void check_literal(Literal l, std::size_t vars) {
  if (l == 0 || std::size_t(l < 0 ? -std::int64_t(l) : l) > vars)
    throw Error("literal " + std::to_string(l) + " outside +-1.." + std::to_string(vars));
}

std::uint32_t var_of(Literal l) { return std::uint32_t(l < 0 ? -l : l); }

template <std::size_t W>
std::optional<std::vector<bool>> nae_search(std::size_t vars,
                                            const std::vector<std::array<Literal, W>> &clauses,
                                            std::size_t max_vars) {
  if (vars > max_vars)
    throw GuardExceeded("solve_naesat: " + std::to_string(vars) + " variables exceed " +
                        std::to_string(max_vars));
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << vars); ++mask) {
    auto value = [&](Literal l) { return bool(mask >> (var_of(l) - 1) & 1) == (l > 0); };
    bool ok = std::all_of(clauses.begin(), clauses.end(), [&](const auto &c) {
      bool any_true = false, any_false = false;
      for (Literal l : c) (value(l) ? any_true : any_false) = true;
      return any_true && any_false;
    });
    if (ok) {
      std::vector<bool> a(vars);
      for (std::size_t i = 0; i < vars; ++i) a[i] = mask >> i & 1;
      return a;
    }
  }
  return std::nullopt;
}

// Appends vertices and edges in construction order.
struct Builder {
  std::size_t n = 0;
  std::vector<Edge> edges;
  Vertex add() { return Vertex(n++); }
  void edge(Vertex u, Vertex v, Label k) { edges.push_back({u, v, k}); }
  HeavyEdges style = HeavyEdges::Subdivided;
  void heavy(Vertex u, Vertex v, Label k, std::size_t copies) {
    for (std::size_t i = 0; i < copies; ++i) {
      if (style == HeavyEdges::Parallel) {
        edge(u, v, k);
        continue;
      }
      Vertex m = add();
      edge(u, m, k);
      edge(m, v, k);
    }
  }
};

// Header "<kind> a b" followed by content lines.
std::pair<std::uint64_t, std::uint64_t> read_header(detail::LineReader &in, std::string_view kind) {
  std::string_view line;
  if (!in.next(line)) throw ParseError(in.line_no, "missing '" + std::string(kind) + "' header");
  auto tok = detail::split_ws(line);
  if (tok.size() != 3 || tok[0] != kind)
    throw ParseError(in.line_no, "expected '" + std::string(kind) + " <a> <b>'");
  return {detail::to_uint(tok[1], in.line_no), detail::to_uint(tok[2], in.line_no)};
}

template <std::size_t W>
std::vector<std::array<std::uint32_t, W>> read_rows(detail::LineReader &in, std::uint64_t count) {
  std::vector<std::array<std::uint32_t, W>> rows;
  std::string_view line;
  while (rows.size() < count) {
    if (!in.next(line))
      throw ParseError(in.line_no, "expected " + std::to_string(count) + " rows, got " +
                                       std::to_string(rows.size()));
    auto tok = detail::split_ws(line);
    if (tok.size() != W)
      throw ParseError(in.line_no, "expected " + std::to_string(W) + " ids per line");
    std::array<std::uint32_t, W> row{};
    for (std::size_t i = 0; i < W; ++i) row[i] = std::uint32_t(detail::to_uint(tok[i], in.line_no));
    rows.push_back(row);
  }
  if (in.next(line)) throw ParseError(in.line_no, "unexpected trailing content");
  return rows;
}

Literal to_literal(std::string_view tok, std::size_t line) {
  bool neg = !tok.empty() && tok[0] == '-';
  auto v = detail::to_uint(neg ? tok.substr(1) : tok, line);
  if (v == 0 || v > std::uint64_t(INT32_MAX)) throw ParseError(line, "bad literal '" + std::string(tok) + "'");
  return neg ? -Literal(v) : Literal(v);
}

template <std::size_t W>
std::vector<std::array<Literal, W>> read_clauses(detail::LineReader &in, std::uint64_t count) {
  std::vector<std::array<Literal, W>> clauses;
  std::string_view line;
  while (clauses.size() < count) {
    if (!in.next(line))
      throw ParseError(in.line_no, "expected " + std::to_string(count) + " clauses, got " +
                                       std::to_string(clauses.size()));
    auto tok = detail::split_ws(line);
    if (tok.size() == W + 1 && tok.back() == "0") tok.pop_back();
    if (tok.size() != W)
      throw ParseError(in.line_no, "expected " + std::to_string(W) + " literals per clause");
    std::array<Literal, W> c{};
    for (std::size_t i = 0; i < W; ++i) c[i] = to_literal(tok[i], in.line_no);
    clauses.push_back(c);
  }
  if (in.next(line)) throw ParseError(in.line_no, "unexpected trailing content");
  return clauses;
}

template <typename Inst, typename F> Inst parsed(Inst inst, F &&check) {
  try {
    check(inst);
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

} // namespace

void validate(const BetweennessInstance &inst) {
  const std::uint64_t n = inst.n;
  if (inst.triples.size() >= n * n * n && !inst.triples.empty())
    throw Error("betweenness: need fewer than n^3 triples");
  for (const auto &t : inst.triples) {
    for (auto x : t) check_element(x, inst.n);
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error("betweenness: triple entries must be distinct");
  }
}

void validate(const FasInstance &inst) {
  for (auto [a, b] : inst.inequalities) {
    check_element(a, inst.n);
    check_element(b, inst.n);
    if (a == b) throw Error("fas: inequality " + std::to_string(a) + " < " + std::to_string(a));
  }
}

void validate(const Naesat4 &phi) {
  for (const auto &c : phi.clauses)
    for (Literal l : c) check_literal(l, phi.vars);
}

void validate(const Naesat3Star &phi) {
  std::vector<std::size_t> occurrences(phi.vars + 1, 0);
  std::vector<bool> middle(phi.vars + 1, false);
  for (const auto &c : phi.clauses) {
    for (Literal l : c) {
      check_literal(l, phi.vars);
      ++occurrences[var_of(l)];
    }
    middle[var_of(c[1])] = true;
    if (c[0] == c[1]) throw Error("nae3s: first and middle literal coincide");
  }
  for (std::size_t v = 1; v <= phi.vars; ++v)
    if (middle[v] && occurrences[v] > 2)
      throw Error("nae3s: middle variable " + std::to_string(v) + " occurs " +
                  std::to_string(occurrences[v]) + " times");
}

bool satisfies(const BetweennessInstance &inst, std::span<const std::uint32_t> order) {
  auto pos = positions(inst.n, order);
  return std::all_of(inst.triples.begin(), inst.triples.end(), [&](const auto &t) {
    return (pos[t[0]] < pos[t[1]] && pos[t[1]] < pos[t[2]]) ||
           (pos[t[2]] < pos[t[1]] && pos[t[1]] < pos[t[0]]);
  });
}

std::optional<std::vector<std::uint32_t>> solve_betweenness(const BetweennessInstance &inst,
                                                            std::size_t max_n) {
  validate(inst);
  if (inst.n > max_n)
    throw GuardExceeded("solve_betweenness: n = " + std::to_string(inst.n) + " exceeds " +
                        std::to_string(max_n));
  std::vector<std::uint32_t> order(inst.n);
  std::iota(order.begin(), order.end(), 1u);
  do {
    if (satisfies(inst, order)) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

LabeledDigraph betweenness_to_graph(const BetweennessInstance &inst) {
  validate(inst);
  const std::size_t n = inst.n, k = inst.triples.size();
  auto v = [&](std::size_t i, std::size_t j) { return Vertex(1 + (j - 1) * n + (i - 1)); };
  auto w = [&](std::size_t l, std::size_t j) { return Vertex(1 + n * k + 3 * (j - 1) + (l - 1)); };
  std::vector<Edge> edges;
  if (k > 0)
    for (std::size_t i = 1; i <= n; ++i) edges.push_back({0, v(i, 1), 1});
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 1; i <= n; ++i) edges.push_back({v(i, j), v(i, j + 1), 1});
  for (std::size_t j = 1; j <= k; ++j) {
    const auto &t = inst.triples[j - 1];
    edges.push_back({v(t[0], j), w(1, j), 2});
    edges.push_back({v(t[1], j), w(2, j), 2});
    edges.push_back({v(t[2], j), w(3, j), 2});
    edges.push_back({v(t[0], j), w(2, j), 2});
    edges.push_back({v(t[2], j), w(2, j), 2});
  }
  return LabeledDigraph(1 + n * k + 3 * k, 2, std::move(edges));
}

Ordering betweenness_ordering_to_wheeler(const BetweennessInstance &inst,
                                         std::span<const std::uint32_t> order) {
  validate(inst);
  if (!satisfies(inst, order)) throw Error("order does not satisfy the betweenness instance");
  const std::size_t n = inst.n, k = inst.triples.size();
  std::vector<Vertex> seq{0};
  for (std::size_t j = 1; j <= k; ++j)
    for (std::uint32_t t : order) seq.push_back(Vertex(1 + (j - 1) * n + (t - 1)));
  auto pos = positions(n, order);
  for (std::size_t j = 1; j <= k; ++j) {
    const auto &t = inst.triples[j - 1];
    std::array<std::size_t, 3> l{0, 1, 2};
    std::sort(l.begin(), l.end(), [&](auto a, auto b) { return pos[t[a]] < pos[t[b]]; });
    for (auto x : l) seq.push_back(Vertex(1 + n * k + 3 * (j - 1) + x));
  }
  return Ordering::from_sequence(std::move(seq));
}

Naesat3Star naesat4_to_naesat3star(const Naesat4 &phi) {
  validate(phi);
  Naesat3Star out;
  out.vars = phi.vars + phi.clauses.size();
  for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
    const auto &[a, b, cc, d] = phi.clauses[c];
    const Literal w = Literal(phi.vars + c + 1);
    out.clauses.push_back({a, w, b});
    out.clauses.push_back({cc, -w, d});
  }
  return out;
}

LabeledDigraph naesat3star_to_graph(const Naesat3Star &phi) {
  validate(phi);
  const std::size_t n = phi.vars, m = phi.clauses.size();
  if (n == 0) throw Error("nae3s: need at least one variable");
  Builder b;
  std::vector<Vertex> spine(n + 1);
  for (std::size_t i = 1; i <= n; ++i) spine[i] = b.add();
  // Arms s_i^j and their negated twins; arm[i][0] is the spine vertex s_i^0.
  std::vector<std::vector<Vertex>> arm(n + 1), bar(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    arm[i].push_back(spine[i]);
    bar[i].push_back(spine[i]);
    for (std::size_t j = 1; j + i <= n; ++j) {
      arm[i].push_back(b.add());
      bar[i].push_back(b.add());
    }
  }
  // Layer L^0: x_1..x_n, X, xbar_n..xbar_1, Z_1..Z_m.
  const std::size_t width = 2 * n + 1 + m;
  std::vector<Vertex> layer(width);
  for (auto &x : layer) x = b.add();
  auto lit_slot = [&](Literal l) { return l > 0 ? var_of(l) - 1 : 2 * n + 1 - var_of(l); };
  const std::size_t x_slot = n;
  auto z_slot = [&](std::size_t k) { return 2 * n + 1 + k; };

  for (std::size_t i = 1; i < n; ++i) b.edge(spine[i], spine[i + 1], 1);
  b.edge(spine[n], layer[x_slot], 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j < arm[i].size(); ++j) {
      b.edge(arm[i][j - 1], arm[i][j], 1);
      b.edge(bar[i][j - 1], bar[i][j], 1);
    }
  for (std::size_t i = 1; i <= n; ++i) {
    b.edge(arm[i].back(), layer[lit_slot(Literal(i))], 1);
    b.edge(bar[i].back(), layer[lit_slot(-Literal(i))], 1);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t h = var_of(phi.clauses[k][1]);
    Vertex prev = spine[h];
    for (std::size_t j = 1; j + h <= n; ++j) {
      Vertex z = b.add();
      b.edge(prev, z, 1);
      prev = z;
    }
    b.edge(prev, layer[z_slot(k)], 1);
  }

  std::vector<std::array<std::size_t, 3>> constraints;
  for (std::size_t i = 1; i <= n; ++i)
    constraints.push_back({lit_slot(Literal(i)), x_slot, lit_slot(-Literal(i))});
  for (std::size_t k = 0; k < m; ++k) {
    const auto &c = phi.clauses[k];
    constraints.push_back({lit_slot(c[0]), z_slot(k), lit_slot(c[1])});
    constraints.push_back({lit_slot(c[2]), x_slot, z_slot(k)});
  }
  for (const auto &[y1, y2, y3] : constraints) {
    std::vector<Vertex> next(width);
    for (auto &x : next) x = b.add();
    for (std::size_t s = 0; s < width; ++s) b.edge(layer[s], next[s], 1);
    Vertex w1 = b.add(), w2 = b.add(), w3 = b.add();
    b.edge(next[y1], w1, 2);
    b.edge(next[y2], w2, 2);
    b.edge(next[y3], w3, 2);
    b.edge(next[y1], w2, 2);
    b.edge(next[y3], w2, 2);
    layer = std::move(next);
  }
  return LabeledDigraph(b.n, 2, std::move(b.edges));
}

std::optional<std::vector<bool>> solve_naesat(const Naesat3Star &phi, std::size_t max_vars) {
  for (const auto &c : phi.clauses)
    for (Literal l : c) check_literal(l, phi.vars);
  return nae_search(phi.vars, phi.clauses, max_vars);
}

std::optional<std::vector<bool>> solve_naesat(const Naesat4 &phi, std::size_t max_vars) {
  validate(phi);
  return nae_search(phi.vars, phi.clauses, max_vars);
}

std::size_t fas_violations(const FasInstance &inst, std::span<const std::uint32_t> order) {
  auto pos = positions(inst.n, order);
  std::size_t bad = 0;
  for (auto [a, b] : inst.inequalities)
    if (pos[a] > pos[b]) ++bad;
  return bad;
}

std::size_t fas_brute(const FasInstance &inst, std::size_t max_n) {
  validate(inst);
  if (inst.n > max_n)
    throw GuardExceeded("fas_brute: n = " + std::to_string(inst.n) + " exceeds " +
                        std::to_string(max_n));
  std::vector<std::uint32_t> order(inst.n);
  std::iota(order.begin(), order.end(), 1u);
  std::size_t best = inst.inequalities.size();
  do {
    best = std::min(best, fas_violations(inst, order));
  } while (best > 0 && std::next_permutation(order.begin(), order.end()));
  return best;
}

LabeledDigraph fas_to_wgv_graph(const FasInstance &inst, HeavyEdges style) {
  validate(inst);
  const std::size_t n = inst.n, k = inst.inequalities.size();
  const std::size_t copies = k + 1;
  Builder b;
  b.style = style;
  b.n = 1 + (n + 1) * k + 2 * k;
  auto v = [&](std::size_t i, std::size_t j) { return Vertex(1 + (j - 1) * (n + 1) + (i - 1)); };
  auto w = [&](std::size_t l, std::size_t j) {
    return Vertex(1 + (n + 1) * k + 2 * (j - 1) + (l - 1));
  };
  if (k > 0)
    for (std::size_t i = 1; i <= n + 1; ++i) b.heavy(0, v(i, 1), 1, copies);
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = 1; j < k; ++j) b.heavy(v(i, j), v(i, j + 1), 1, copies);
  if (k > 0) {
    b.heavy(0, w(1, 1), 2, copies);
    for (std::size_t j = 1; j < k; ++j) {
      b.heavy(v(n + 1, j), w(2, j), 2, copies);
      b.heavy(v(n + 1, j), w(1, j + 1), 2, copies);
    }
    b.heavy(v(n + 1, k), w(2, k), 2, copies);
  }
  for (std::size_t j = 1; j <= k; ++j) {
    auto [t1, t2] = inst.inequalities[j - 1];
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == t1) b.edge(v(i, j), w(1, j), 2);
      if (i == t2) b.edge(v(i, j), w(2, j), 2);
    }
  }
  return LabeledDigraph(b.n, 2, std::move(b.edges));
}

BetweennessInstance parse_betweenness(std::string_view text) {
  detail::LineReader in{text};
  auto [n, k] = read_header(in, "btw");
  BetweennessInstance inst{n, read_rows<3>(in, k)};
  return parsed(std::move(inst), [](const auto &i) { validate(i); });
}

FasInstance parse_fas(std::string_view text) {
  detail::LineReader in{text};
  auto [n, k] = read_header(in, "fas");
  FasInstance inst;
  inst.n = n;
  for (auto [a, b] : read_rows<2>(in, k)) inst.inequalities.emplace_back(a, b);
  return parsed(std::move(inst), [](const auto &i) { validate(i); });
}

Naesat4 parse_naesat4(std::string_view text) {
  detail::LineReader in{text};
  auto [vars, m] = read_header(in, "nae4");
  Naesat4 phi{vars, read_clauses<4>(in, m)};
  return parsed(std::move(phi), [](const auto &p) { validate(p); });
}

Naesat3Star parse_naesat3star(std::string_view text) {
  detail::LineReader in{text};
  auto [vars, m] = read_header(in, "nae3s");
  Naesat3Star phi{vars, read_clauses<3>(in, m)};
  return parsed(std::move(phi), [](const auto &p) { validate(p); });
}

std::string serialize(const BetweennessInstance &inst) {
  std::ostringstream out;
  out << "btw " << inst.n << ' ' << inst.triples.size() << '\n';
  for (const auto &t : inst.triples) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

std::string serialize(const FasInstance &inst) {
  std::ostringstream out;
  out << "fas " << inst.n << ' ' << inst.inequalities.size() << '\n';
  for (auto [a, b] : inst.inequalities) out << a << ' ' << b << '\n';
  return out.str();
}

std::string serialize(const Naesat4 &phi) {
  std::ostringstream out;
  out << "nae4 " << phi.vars << ' ' << phi.clauses.size() << '\n';
  for (const auto &c : phi.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  return out.str();
}

std::string serialize(const Naesat3Star &phi) {
  std::ostringstream out;
  out << "nae3s " << phi.vars << ' ' << phi.clauses.size() << '\n';
  for (const auto &c : phi.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return out.str();
}

std::string instance_kind(std::string_view text) {
  detail::LineReader in{text};
  std::string_view line;
  if (!in.next(line)) return {};
  auto tok = detail::split_ws(line);
  return tok.empty() ? std::string() : std::string(tok[0]);
}

} // namespace wheeler
