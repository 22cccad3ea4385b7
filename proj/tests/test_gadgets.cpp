#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wheeler/axioms.hpp"
#include "wheeler/error.hpp"
#include "wheeler/gadgets.hpp"
#include "wheeler/optimization.hpp"
#include "wheeler/recognizer.hpp"

using namespace wheeler;

namespace {

const BetweennessInstance example{5, {{3, 4, 5}, {4, 1, 3}, {1, 4, 5}, {2, 4, 1}, {5, 2, 3}}};

// Every assignment, checked clause by clause.
bool nae_brute(std::size_t vars, const std::vector<std::vector<Literal>> &clauses) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars); ++mask) {
    bool ok = true;
    for (const auto &c : clauses) {
      bool seen_true = false, seen_false = false;
      for (Literal l : c) {
        const bool value = (mask >> (std::abs(l) - 1) & 1) != (l < 0);
        (value ? seen_true : seen_false) = true;
      }
      ok = ok && seen_true && seen_false;
    }
    if (ok) return true;
  }
  return false;
}

RecognizerOptions big() {
  RecognizerOptions o;
  o.max_vertices = 1000;
  return o;
}

} // namespace

TEST_CASE("betweenness satisfaction") {
  const std::vector<std::uint32_t> good{3, 1, 4, 2, 5}, bad{3, 1, 2, 4, 5};
  CHECK(satisfies(example, good));
  CHECK_FALSE(satisfies(example, bad));
  CHECK_FALSE(satisfies(BetweennessInstance{5, {{2, 4, 1}}}, bad));
  auto order = solve_betweenness(example);
  REQUIRE(order);
  CHECK(satisfies(example, *order));
  CHECK_FALSE(solve_betweenness(BetweennessInstance{3, {{1, 2, 3}, {2, 1, 3}}}));
  CHECK_THROWS_AS(solve_betweenness(BetweennessInstance{11, {}}), GuardExceeded);
}

TEST_CASE("betweenness validation") {
  CHECK_THROWS_AS(validate(BetweennessInstance{3, {{1, 1, 2}}}), Error);
  CHECK_THROWS_AS(validate(BetweennessInstance{3, {{1, 2, 4}}}), Error);
  CHECK_NOTHROW(validate(example));
}

TEST_CASE("betweenness graph layout") {
  auto g = betweenness_to_graph(example);
  CHECK(g.num_vertices() == 41);
  CHECK(inlabel_consistent(g));
  CHECK(sources(g) == std::vector<Vertex>{0});

  BetweennessInstance fig{6, {{5, 2, 3}, {1, 5, 2}, {4, 5, 6}}};
  CHECK(betweenness_to_graph(fig).num_vertices() == 1 + 18 + 9);

  auto empty = betweenness_to_graph(BetweennessInstance{4, {}});
  CHECK(empty.num_vertices() == 1);
  CHECK(recognize_exhaustive(empty));
}

TEST_CASE("betweenness ordering construction") {
  auto g = betweenness_to_graph(example);
  const std::vector<std::uint32_t> good{3, 1, 4, 2, 5}, bad{3, 1, 2, 4, 5};
  auto pi = betweenness_ordering_to_wheeler(example, good);
  CHECK(check_ordering(g, pi));
  CHECK_THROWS_AS(betweenness_ordering_to_wheeler(example, bad), Error);

  BetweennessInstance single{3, {{1, 2, 3}}};
  const std::vector<std::uint32_t> id{1, 2, 3};
  CHECK(check_ordering(betweenness_to_graph(single), betweenness_ordering_to_wheeler(single, id)));
}

TEST_CASE("betweenness reduction agrees on random small instances") {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 3 + rng() % 2;
    BetweennessInstance inst{n, {}};
    for (std::size_t k = 1 + rng() % 2; k > 0; --k) {
      std::vector<std::uint32_t> e(n);
      std::iota(e.begin(), e.end(), 1u);
      std::shuffle(e.begin(), e.end(), rng);
      inst.triples.push_back({e[0], e[1], e[2]});
    }
    auto g = betweenness_to_graph(inst);
    auto order = solve_betweenness(inst);
    CHECK(recognize_exhaustive(g, big()).has_value() == order.has_value());
    if (order) CHECK(check_ordering(g, betweenness_ordering_to_wheeler(inst, *order)));
  }
}

TEST_CASE("naesat4 conversion") {
  auto phi = naesat4_to_naesat3star(Naesat4{4, {{1, 2, 3, 4}}});
  CHECK(phi.vars == 5);
  CHECK(phi.clauses == std::vector<std::array<Literal, 3>>{{1, 5, 2}, {3, -5, 4}});
  CHECK(naesat4_to_naesat3star(Naesat4{}).clauses.empty());
}

TEST_CASE("naesat4 conversion preserves satisfiability") {
  // Every single 4-literal clause over 4 variables.
  std::vector<Literal> lits{1, -1, 2, -2, 3, -3, 4, -4};
  for (Literal a : lits)
    for (Literal b : lits)
      for (Literal c : lits)
        for (Literal d : lits) {
          Naesat4 phi{4, {{a, b, c, d}}};
          const bool expect = nae_brute(4, {{a, b, c, d}});
          auto star = naesat4_to_naesat3star(phi);
          REQUIRE(solve_naesat(phi).has_value() == expect);
          REQUIRE(solve_naesat(star).has_value() == expect);
        }
  std::mt19937_64 rng(19);
  for (int i = 0; i < 300; ++i) {
    Naesat4 phi{1 + rng() % 5, {}};
    std::vector<std::vector<Literal>> raw;
    for (std::size_t m = 1 + rng() % 4; m > 0; --m) {
      std::array<Literal, 4> c;
      for (auto &l : c) l = Literal(1 + rng() % phi.vars) * (rng() % 2 ? 1 : -1);
      phi.clauses.push_back(c);
      raw.push_back({c.begin(), c.end()});
    }
    const bool expect = nae_brute(phi.vars, raw);
    CHECK(solve_naesat(phi).has_value() == expect);
    CHECK(solve_naesat(naesat4_to_naesat3star(phi)).has_value() == expect);
  }
}

TEST_CASE("solve_naesat") {
  auto a = solve_naesat(Naesat3Star{3, {{1, 2, 3}}});
  REQUIRE(a);
  CHECK(a->size() == 3);
  CHECK_FALSE(solve_naesat(Naesat4{1, {{1, 1, 1, 1}}}));
  CHECK_THROWS_AS(solve_naesat(Naesat3Star{21, {}}), GuardExceeded);
}

TEST_CASE("naesat3star validation") {
  CHECK_NOTHROW(validate(Naesat3Star{3, {{1, 2, 3}}}));
  CHECK_THROWS_AS(validate(Naesat3Star{3, {{1, 4, 3}}}), Error);
  CHECK_THROWS_AS(validate(Naesat3Star{3, {{1, 0, 3}}}), Error);
  // Middle variable 2 would occur three times.
  CHECK_THROWS_AS(validate(Naesat3Star{3, {{1, 2, 3}, {2, 1, 2}}}), Error);
  // First and middle literal coincide.
  CHECK_THROWS_AS(validate(Naesat3Star{1, {{1, 1, 1}}}), Error);
}

TEST_CASE("naesat graph") {
  auto g = naesat3star_to_graph(Naesat3Star{3, {{1, 2, 3}}});
  CHECK(nondeterminism(g) <= 5);
  CHECK(sources(g) == std::vector<Vertex>{0});
  auto pi = recognize_exhaustive(g, big());
  REQUIRE(pi);
  CHECK(check_ordering(g, *pi));

  Naesat3Star forcing{2, {{1, 2, 1}, {-1, 2, -1}}};
  CHECK_FALSE(solve_naesat(forcing));
  CHECK_FALSE(recognize_exhaustive(naesat3star_to_graph(forcing), big()));

  Naesat3Star two{4, {{1, 2, 3}, {2, -3, 4}}};
  CHECK(nondeterminism(naesat3star_to_graph(two)) <= 5);
}

TEST_CASE("naesat graph never accepts an unsatisfiable formula") {
  std::mt19937_64 rng(20);
  int checked = 0;
  while (checked < 40) {
    Naesat3Star phi{1 + rng() % 3, {}};
    for (std::size_t m = 1 + rng() % 2; m > 0; --m) {
      std::array<Literal, 3> c;
      for (auto &l : c) l = Literal(1 + rng() % phi.vars) * (rng() % 2 ? 1 : -1);
      phi.clauses.push_back(c);
    }
    try {
      validate(phi);
    } catch (const Error &) {
      continue;
    }
    ++checked;
    auto g = naesat3star_to_graph(phi);
    CHECK(nondeterminism(g) <= 5);
    if (recognize_exhaustive(g, big())) CHECK(solve_naesat(phi));
  }
}

TEST_CASE("fas brute force") {
  FasInstance fig{6, {{5, 3}, {1, 5}, {6, 4}}};
  CHECK(fas_brute(fig) == 0);
  const std::vector<std::uint32_t> order{1, 5, 3, 6, 4, 2};
  CHECK(fas_violations(fig, order) == 0);
  CHECK(fas_brute(FasInstance{2, {{1, 2}, {2, 1}}}) == 1);
  CHECK(fas_brute(FasInstance{4, {}}) == 0);
  CHECK_THROWS_AS(validate(FasInstance{2, {{1, 1}}}), Error);
  CHECK_THROWS_AS(fas_brute(FasInstance{11, {}}), GuardExceeded);
}

TEST_CASE("fas graph") {
  FasInstance fig{6, {{5, 3}, {1, 5}, {6, 4}}};
  auto parallel = fas_to_wgv_graph(fig, HeavyEdges::Parallel);
  CHECK(parallel.num_vertices() == 1 + 7 * 3 + 2 * 3);
  auto subdivided = fas_to_wgv_graph(fig);
  // k+1 midpoints for each of the k+1 heavy label-2 edges.
  CHECK(subdivided.num_vertices() > parallel.num_vertices());

  auto empty = fas_to_wgv_graph(FasInstance{3, {}});
  CHECK(recognize_exhaustive(empty));

  FasInstance cycle{2, {{1, 2}, {2, 1}}};
  WgvOptions opts;
  opts.recognizer.max_vertices = 64;
  opts.max_edges = 40;
  opts.budget = 3;
  auto r = wgv_exact(fas_to_wgv_graph(cycle, HeavyEdges::Parallel), opts);
  REQUIRE(r);
  CHECK(r->deleted.size() == 1);
}

TEST_CASE("instance files") {
  CHECK(parse_betweenness(serialize(example)) == example);
  FasInstance fas{6, {{5, 3}, {1, 5}, {6, 4}}};
  CHECK(parse_fas(serialize(fas)) == fas);
  Naesat4 n4{4, {{1, -2, 3, 4}}};
  CHECK(parse_naesat4(serialize(n4)) == n4);
  Naesat3Star n3{3, {{1, 2, -3}}};
  CHECK(parse_naesat3star(serialize(n3)) == n3);
  CHECK(parse_naesat3star("nae3s 3 1\n1 2 -3 0\n") == n3);
  CHECK(instance_kind("# comment\nbtw 3 0\n") == "btw");
  CHECK(instance_kind("") == "");
  CHECK_THROWS_AS(parse_betweenness("btw 3 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_fas("fas 3 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_naesat3star("nae4 3 1\n1 2 3\n"), ParseError);
}
