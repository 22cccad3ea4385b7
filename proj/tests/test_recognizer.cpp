#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wheeler/axioms.hpp"
#include "wheeler/error.hpp"
#include "wheeler/recognizer.hpp"

using namespace wheeler;

namespace {

LabeledDigraph make(std::size_t n, Label sigma, std::vector<Edge> edges) {
  return LabeledDigraph(n, sigma, std::move(edges));
}

std::vector<Vertex> seq(const Ordering &pi) { return {pi.sequence().begin(), pi.sequence().end()}; }

bool special_class(const LabeledDigraph &g) {
  return !sources(g).empty() && has_full_spectrum_outputs(g) && has_unique_string_traversal(g);
}

} // namespace

TEST_CASE("recognize_exhaustive basics") {
  auto pi = recognize_exhaustive(make(2, 1, {{0, 1, 1}}));
  REQUIRE(pi);
  CHECK(seq(*pi) == std::vector<Vertex>{0, 1});
  CHECK_FALSE(recognize_exhaustive(make(3, 2, {{0, 2, 1}, {1, 2, 2}})));
  CHECK(recognize_exhaustive(make(0, 1, {})));
}

TEST_CASE("recognize_exhaustive returns the least rank sequence") {
  // Two isolated vertices: both orders are proper; vertex 0 gets rank 0.
  auto pi = recognize_exhaustive(make(2, 1, {}));
  REQUIRE(pi);
  CHECK(pi->rank(0) == 0);
}

TEST_CASE("recognize_exhaustive guards") {
  RecognizerOptions opts;
  opts.max_vertices = 3;
  CHECK_THROWS_AS(recognize_exhaustive(make(4, 1, {}), opts), GuardExceeded);
  opts.max_vertices = 12;
  opts.node_limit = 5;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 6; ++v) edges.push_back({v, Vertex(v + 6), Label(1 + v % 2)});
  CHECK_THROWS_AS(recognize_exhaustive(make(12, 2, edges), opts), GuardExceeded);
}

TEST_CASE("recognize_via_codes basics") {
  auto g = make(2, 1, {{0, 1, 1}});
  auto a = recognize_via_codes(g);
  REQUIRE(a);
  CHECK(check_ordering(g, *a));
  CHECK_FALSE(recognize_via_codes(make(3, 1, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}})));
  RecognizerOptions tiny;
  tiny.max_code_candidates = 1;
  // Sources of two different types give two arrangements.
  auto two = make(4, 1, {{0, 1, 1}, {1, 2, 1}});
  CHECK_THROWS_AS(recognize_via_codes(two, tiny), GuardExceeded);
}

TEST_CASE("exhaustive and code recognizers match brute force on small graphs") {
  std::size_t total = 0, accepted = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (Label sigma = 1; sigma <= 2; ++sigma)
      oracle::for_each_subset(n, sigma, oracle::all_triples(n, sigma), 4,
                              [&](const LabeledDigraph &g) {
                                const bool expect = oracle::brute_wheeler(g).has_value();
                                auto a = recognize_exhaustive(g);
                                auto b = recognize_via_codes(g);
                                ++total;
                                accepted += expect;
                                REQUIRE(a.has_value() == expect);
                                REQUIRE(b.has_value() == expect);
                                if (a) {
                                  REQUIRE(check_ordering(g, *a));
                                  REQUIRE(oracle::proper(g, seq(*a)));
                                  REQUIRE(check_ordering(g, *b));
                                }
                              });
  CHECK(total > 4000);
  CHECK(accepted > 1000);
}

TEST_CASE("recognize_sigma1") {
  CHECK(recognize_sigma1(make(3, 1, {{0, 1, 1}, {1, 2, 1}})));
  // Two sources joined to two heads: every order has a rainbow.
  auto k22 = make(4, 1, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}});
  CHECK_FALSE(oracle::brute_wheeler(k22));
  CHECK_FALSE(recognize_sigma1(k22));
  CHECK_THROWS_AS(recognize_sigma1(make(2, 2, {{0, 1, 2}})), Error);
  // Looped vertex whose in-edge goes backwards in the only proper order.
  auto looped = make(3, 1, {{0, 1, 1}, {2, 1, 1}, {2, 2, 1}});
  auto pi = recognize_sigma1(looped);
  REQUIRE(pi);
  CHECK(seq(*pi) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("recognize_sigma1 matches exhaustive search") {
  std::mt19937_64 rng(21);
  RecognizerOptions opts;
  opts.max_vertices = 8;
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = 1 + rng() % 7;
    auto g = oracle::random_graph(rng, n, rng() % (2 * n + 1), 1);
    auto a = recognize_exhaustive(g, opts);
    auto b = recognize_sigma1(g, opts);
    REQUIRE(a.has_value() == b.has_value());
    if (b) CHECK(check_ordering(g, *b));
  }
}

TEST_CASE("full spectrum outputs") {
  CHECK(has_full_spectrum_outputs(make(3, 1, {{0, 1, 1}})));
  CHECK_FALSE(has_full_spectrum_outputs(make(3, 2, {{0, 1, 1}, {0, 2, 1}})));
  auto trie = make(7, 2, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 5, 1}, {2, 6, 2}});
  CHECK(has_full_spectrum_outputs(trie));
}

TEST_CASE("unique string traversal") {
  auto trie = make(7, 2, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 5, 1}, {2, 6, 2}});
  CHECK(has_unique_string_traversal(trie));
  // t is reached by "1" and by "21".
  auto diamond = make(3, 2, {{0, 2, 1}, {0, 1, 2}, {1, 2, 1}});
  CHECK_FALSE(has_unique_string_traversal(diamond));
  CHECK_THROWS_AS(has_unique_string_traversal(make(1, 1, {{0, 0, 1}})), Error);
}

TEST_CASE("recognize_special on a complete trie") {
  auto trie = make(7, 2, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 5, 1}, {2, 6, 2}});
  auto pi = recognize_special(trie);
  REQUIRE(pi);
  // Strings "", 1, 11, 12, 2, 21, 22 (label prepended to the parent's string).
  CHECK(seq(*pi) == std::vector<Vertex>{0, 1, 3, 5, 2, 4, 6});
  CHECK_THROWS_AS(recognize_special(make(3, 2, {{0, 1, 1}, {0, 2, 1}})), Error);
}

TEST_CASE("recognize_special matches exhaustive search") {
  std::mt19937_64 rng(31);
  RecognizerOptions opts;
  opts.max_vertices = 8;
  std::size_t tested = 0, accepted = 0;
  for (int i = 0; i < 6000; ++i) {
    auto g = oracle::random_special(rng, 8, Label(1 + rng() % 3));
    if (!special_class(g)) continue;
    ++tested;
    auto a = recognize_exhaustive(g, opts);
    auto b = recognize_special(g);
    accepted += a.has_value();
    REQUIRE(a.has_value() == b.has_value());
    if (b) CHECK(check_ordering(g, *b));
  }
  CHECK(tested > 1000);
  CHECK(accepted > 100);
  CHECK(accepted < tested);
}

TEST_CASE("algorithm selection") {
  CHECK(parse_algorithm("exhaustive") == Algorithm::Exhaustive);
  CHECK(parse_algorithm("codes") == Algorithm::Codes);
  CHECK(parse_algorithm("sigma1") == Algorithm::Sigma1);
  CHECK(parse_algorithm("special") == Algorithm::Special);
  CHECK(parse_algorithm("auto") == Algorithm::Auto);
  CHECK_THROWS_AS(parse_algorithm("fast"), Error);
  CHECK(algorithm_name(Algorithm::Sigma1) == "sigma1");
  CHECK(choose_algorithm(make(2, 1, {{0, 1, 1}})) == Algorithm::Sigma1);
  auto trie = make(3, 2, {{0, 1, 1}, {0, 2, 2}});
  CHECK(choose_algorithm(trie) == Algorithm::Special);
  CHECK(choose_algorithm(make(3, 2, {{0, 1, 1}, {0, 2, 1}})) == Algorithm::Exhaustive);
  CHECK(recognize(trie));
}
