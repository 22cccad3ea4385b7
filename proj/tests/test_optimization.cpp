#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wheeler/axioms.hpp"
#include "wheeler/error.hpp"
#include "wheeler/optimization.hpp"

using namespace wheeler;

namespace {

LabeledDigraph make(std::size_t n, Label sigma, std::vector<Edge> edges) {
  return LabeledDigraph(n, sigma, std::move(edges));
}

bool certified(const LabeledDigraph &g, const WheelerSubgraph &s) {
  if (!std::is_sorted(s.edges.begin(), s.edges.end())) return false;
  if (std::adjacent_find(s.edges.begin(), s.edges.end()) != s.edges.end()) return false;
  return check_ordering(edge_subgraph(g, s.edges), s.order);
}

LabeledDigraph random_dag(std::mt19937_64 &rng, std::size_t n, std::size_t e) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < e && n > 1; ++i) {
    Vertex a = Vertex(rng() % n), b = Vertex(rng() % n);
    if (a == b) continue;
    edges.push_back({std::min(a, b), std::max(a, b), 1});
  }
  return LabeledDigraph(n, 1, std::move(edges));
}

const auto k22 = LabeledDigraph(4, 1, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}});

} // namespace

TEST_CASE("wgv_exact") {
  auto path = make(3, 2, {{0, 1, 1}, {1, 2, 2}});
  auto r = wgv_exact(path);
  REQUIRE(r);
  CHECK(r->deleted.empty());

  auto k = wgv_exact(k22);
  REQUIRE(k);
  CHECK(k->deleted == std::vector<EdgeId>{0});
  std::vector<EdgeId> kept{1, 2, 3};
  CHECK(check_ordering(edge_subgraph(k22, kept), k->order));

  WgvOptions none;
  none.budget = 0;
  CHECK_FALSE(wgv_exact(k22, none));

  WgvOptions small;
  small.max_edges = 3;
  CHECK_THROWS_AS(wgv_exact(k22, small), GuardExceeded);
}

TEST_CASE("ws_exact matches subset enumeration") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_graph(rng, 1 + rng() % 4, rng() % 7, Label(1 + rng() % 2));
    auto ws = ws_exact(g);
    auto wgv = wgv_exact(g);
    REQUIRE(wgv);
    CHECK(ws.edges.size() == oracle::ws_subsets(g));
    CHECK(ws.edges.size() + wgv->deleted.size() == g.num_edges());
    CHECK(certified(g, ws));
  }
  CHECK(ws_exact(make(3, 1, {})).edges.empty());
}

TEST_CASE("ws_approx_sigma1 small cases") {
  auto path = make(3, 1, {{0, 1, 1}, {1, 2, 1}});
  auto p = ws_approx_sigma1(path);
  CHECK(p.edges.size() == 2);
  CHECK(certified(path, p));

  auto matching = make(6, 1, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}});
  auto m = ws_approx_sigma1(matching);
  CHECK(m.edges.size() == 3);
  CHECK(certified(matching, m));

  CHECK(ws_approx_sigma1(make(2, 1, {})).edges.empty());
  CHECK_THROWS_AS(ws_approx_sigma1(make(2, 2, {{0, 1, 1}, {1, 0, 2}})), Error);
}

TEST_CASE("ws_approx_sigma1 stays within a factor 2 on random DAGs") {
  std::mt19937_64 rng(14);
  double worst = 1;
  for (int i = 0; i < 1500; ++i) {
    const std::size_t n = 1 + rng() % 6;
    auto g = random_dag(rng, n, rng() % (2 * n + 2));
    auto s = ws_approx_sigma1(g);
    REQUIRE(certified(g, s));
    const auto best = oracle::ws_sigma1(g);
    REQUIRE(s.edges.size() <= best);
    if (!s.edges.empty()) worst = std::max(worst, double(best) / double(s.edges.size()));
    else REQUIRE(best == 0);
  }
  CHECK(worst <= 2.0);
}

TEST_CASE("ws_approx_sigma1 handles cycles and loops") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 7;
    auto g = oracle::random_graph(rng, n, rng() % (2 * n + 2), 1);
    REQUIRE(certified(g, ws_approx_sigma1(g)));
  }
}

TEST_CASE("ws_approx") {
  auto path = make(3, 1, {{0, 1, 1}, {1, 2, 1}});
  CHECK(ws_approx(path).edges == ws_approx_sigma1(path).edges);

  auto mixed = make(6, 2, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {4, 5, 2}});
  auto s = ws_approx(mixed);
  CHECK(s.edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(certified(mixed, s));

  std::mt19937_64 rng(16);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_graph(rng, 1 + rng() % 5, rng() % 8, 2);
    auto a = ws_approx(g);
    REQUIRE(certified(g, a));
    const auto best = oracle::ws_subsets(g);
    // Within a factor 2 * sigma of the optimum.
    CHECK(4 * a.edges.size() >= best);
  }
}

TEST_CASE("approx_report") {
  auto path = make(3, 2, {{0, 1, 1}, {1, 2, 2}});
  auto r = approx_report(path);
  CHECK(r.wheeler_input);
  REQUIRE(r.ratio);
  CHECK(*r.ratio == 1.0);
  CHECK(r.approx_kept == 2);

  auto empty = approx_report(make(2, 1, {}));
  REQUIRE(empty.ratio);
  CHECK(*empty.ratio == 1.0);

  auto k = approx_report(k22);
  CHECK_FALSE(k.wheeler_input);
  REQUIRE(k.exact_kept);
  CHECK(*k.exact_kept == 3);
  CHECK(*k.ratio == doctest::Approx(double(k.approx_kept) / 3.0));

  std::vector<Edge> many;
  for (Vertex v = 0; v < 20; ++v) many.push_back({v, Vertex((v + 1) % 20), 1});
  many.push_back({0, 5, 1});
  auto big = approx_report(make(20, 1, many));
  CHECK_FALSE(big.exact_kept);
  CHECK_FALSE(big.ratio);
}
