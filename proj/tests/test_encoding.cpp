#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wheeler/axioms.hpp"
#include "wheeler/encoding.hpp"
#include "wheeler/error.hpp"

using namespace wheeler;

namespace {

LabeledDigraph make(std::size_t n, Label sigma, std::vector<Edge> edges) {
  return LabeledDigraph(n, sigma, std::move(edges));
}

WheelerCode code(std::size_t n, std::size_t e, Label sigma, const char *o, const char *i,
                 std::vector<Label> l) {
  return {n, e, sigma, BitVector::from_string(o), BitVector::from_string(i), std::move(l)};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Edge multisets of size e on vertices 0..n-1 for which the identity order is proper.
std::size_t ordered_wheeler_count(std::size_t n, std::size_t e, Label sigma) {
  const auto triples = oracle::all_triples(n, sigma);
  std::vector<Edge> cur;
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == e) {
      count += oracle::proper(LabeledDigraph(n, sigma, cur), oracle::identity(n));
      return;
    }
    for (std::size_t i = from; i < triples.size(); ++i) {
      cur.push_back(triples[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return count;
}

} // namespace

TEST_CASE("BitVector rank and select match a scan") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 200; ++it) {
    std::vector<bool> bits(rng() % 70);
    for (auto &&b : bits) b = rng() % 2;
    BitVector bv(bits);
    std::size_t ones = 0;
    for (std::size_t i = 0; i <= bits.size(); ++i) {
      REQUIRE(bv.rank1(i) == ones);
      REQUIRE(bv.rank0(i) == i - ones);
      if (i < bits.size()) {
        // select returns the prefix length ending after the j-th bit.
        if (bits[i]) REQUIRE(bv.select1(ones + 1) == i + 1);
        else REQUIRE(bv.select0(i - ones + 1) == i + 1);
        ones += bits[i];
      }
    }
    CHECK(BitVector::from_string(bv.to_string()) == bv);
  }
}

TEST_CASE("encode the three-vertex example") {
  auto g = make(3, 2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}});
  auto c = encode(g, Ordering::identity(3));
  CHECK(c.I.to_string() == "101001");
  CHECK(c.O.to_string() == "001011");
  CHECK(c.L == std::vector<Label>{1, 2, 2});
  auto d = decode(c);
  CHECK(oracle::sorted_edges(d.graph) == oracle::sorted_edges(g));
  CHECK(d.order == Ordering::identity(3));
}

TEST_CASE("encode an edgeless graph") {
  auto c = encode(make(2, 1, {}), Ordering::identity(2));
  CHECK(c.I.to_string() == "11");
  CHECK(c.O.to_string() == "11");
  CHECK(c.L.empty());
}

TEST_CASE("encode requires a proper ordering") {
  auto g = make(2, 1, {{0, 1, 1}});
  CHECK_THROWS_AS(encode(g, Ordering::from_sequence({1, 0})), Error);
}

TEST_CASE("decode rejects malformed codes") {
  std::string why;
  CHECK_FALSE(try_decode(code(2, 1, 1, "0111", "101", {1}), &why));
  CHECK_FALSE(try_decode(code(2, 1, 1, "011", "101", {}), &why));
  CHECK_FALSE(try_decode(code(2, 1, 1, "010", "101", {1}), &why));
  CHECK_FALSE(try_decode(code(2, 1, 1, "011", "101", {2}), &why));
  // Vertex 2 would receive labels 1 and 2.
  CHECK_FALSE(try_decode(code(2, 2, 2, "0011", "1001", {1, 2}), &why));
  CHECK(why == "a vertex would receive two different labels");
  // Labels of one vertex must be sorted.
  CHECK_FALSE(try_decode(code(3, 2, 2, "0011", "10101", {2, 1}), &why));
  CHECK_THROWS_AS(decode(code(2, 1, 1, "010", "101", {1})), Error);
}

TEST_CASE("code size") {
  CHECK(label_bits(1) == 0);
  CHECK(label_bits(2) == 1);
  CHECK(label_bits(3) == 2);
  CHECK(label_bits(4) == 2);
  CHECK(label_bits(5) == 3);
  CHECK(code_size_bits(4, 5, 3) == 2 * 9 + 5 * 2);
  auto c = encode(make(3, 2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}}), Ordering::identity(3));
  CHECK(code_size_bits(c) == 2 * 6 + 3);
}

TEST_CASE("enumerate_codes") {
  auto one = all_codes(1, 0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].O.to_string() == "1");
  CHECK(one[0].I.to_string() == "1");

  // One edge on two ordered vertices: 1 -> 2 and a loop on 2.
  std::vector<std::vector<Edge>> graphs;
  for (const auto &c : all_codes(2, 1, 1))
    if (auto d = try_decode(c)) graphs.push_back(oracle::sorted_edges(d->graph));
  std::sort(graphs.begin(), graphs.end());
  CHECK(graphs == std::vector<std::vector<Edge>>{{{0, 1, 1}}, {{1, 1, 1}}});

  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t e = 0; e <= 3; ++e)
      for (Label s = 1; s <= 2; ++s) {
        const auto all = all_codes(n, e, s);
        const double structural = std::pow(double(binomial(n - 1 + e, e)), 2) * std::pow(s, e);
        CHECK(candidate_count(n, e, s) == structural);
        CHECK(structural <= std::pow(2.0, double(code_size_bits(n, e, s))));
        CHECK(all.size() == ordered_wheeler_count(n, e, s));
      }
  CHECK_THROWS_AS(all_codes(6, 6, 3, 10), GuardExceeded);
}

TEST_CASE("decodable codes are fixed points and decode to Wheeler graphs") {
  std::size_t decodable = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t e = 0; e <= 3; ++e)
      for (Label s = 1; s <= 2; ++s)
        enumerate_codes(n, e, s, [&](const WheelerCode &c) {
          auto d = try_decode(c);
          if (!d) return true;
          ++decodable;
          REQUIRE(oracle::proper(d->graph, oracle::identity(n)));
          REQUIRE(encode(d->graph, d->order) == c);
          REQUIRE(code_size_bits(c) == 2 * (n + e) + e * label_bits(s));
          return true;
        });
  CHECK(decodable > 100);
}

TEST_CASE("round trip on random Wheeler graphs") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    auto [g, order] = oracle::random_wheeler(rng, 1 + rng() % 6, 12, Label(1 + rng() % 3));
    const auto pi = Ordering::from_sequence(order);
    const auto c = encode(g, pi);
    const auto d = decode(c);
    CHECK(oracle::brute_iso(g, d.graph));
    // Vertex at rank r becomes vertex r.
    CHECK(oracle::relabeled(g, [&] {
            oracle::Perm f(g.num_vertices());
            for (Vertex v = 0; v < g.num_vertices(); ++v) f[v] = Vertex(pi.rank(v));
            return f;
          }()) == oracle::sorted_edges(d.graph));
    CHECK(parse_code(serialize_code(c)) == c);
  }
}

TEST_CASE("backward_step") {
  auto c = encode(make(3, 2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}}), Ordering::identity(3));
  CHECK(backward_step(c, {}, 1).empty());
  CHECK(backward_step(c, {0, 3}, 1) == RankRange{1, 2});
  CHECK(backward_step(c, {0, 3}, 2) == RankRange{2, 3});
  CHECK(backward_step(c, {1, 2}, 2) == RankRange{2, 3});
  CHECK(backward_step(c, {2, 3}, 2).empty());
}

TEST_CASE("backward_step agrees with follow on every small code") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t e = 0; e <= 3; ++e)
      for (Label s = 1; s <= 2; ++s)
        enumerate_codes(n, e, s, [&](const WheelerCode &c) {
          auto d = try_decode(c);
          if (!d) return true;
          CodeIndex index(c);
          for (std::size_t b = 0; b <= n; ++b)
            for (std::size_t f = b; f <= n; ++f)
              for (Label k = 1; k <= s; ++k) {
                const std::vector<Label> one{k};
                REQUIRE(index.backward_step({b, f}, k) == follow(d->graph, d->order, {b, f}, one));
              }
          return true;
        });
}

TEST_CASE("match_pattern") {
  auto c = encode(make(3, 2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}}), Ordering::identity(3));
  CHECK(match_pattern(c, std::vector<Label>{}) == RankRange{0, 3});
  CHECK(match_pattern(c, std::vector<Label>{1}) == backward_step(c, {0, 3}, 1));
  CHECK(match_pattern(c, std::vector<Label>{1, 2}) == RankRange{2, 3});
  CHECK(match_pattern(c, std::vector<Label>{2, 2}).empty());

  std::mt19937_64 rng(6);
  for (int i = 0; i < 400; ++i) {
    auto [g, order] = oracle::random_wheeler(rng, 1 + rng() % 6, 12, Label(1 + rng() % 3));
    const auto code = encode(g, Ordering::from_sequence(order));
    const auto d = decode(code);
    std::vector<Label> pattern(rng() % 5);
    for (auto &k : pattern) k = Label(1 + rng() % g.sigma());
    const auto r = match_pattern(code, pattern);
    const auto reach = oracle::traverse(d.graph, pattern);
    REQUIRE(r.size() == reach.size());
    if (!reach.empty()) {
      CHECK(*reach.begin() == r.begin);
      CHECK(*reach.rbegin() + 1 == r.end);
    }
  }
}

TEST_CASE("code files") {
  auto c = encode(make(3, 2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}}), Ordering::identity(3));
  CHECK(serialize_code(c) == "wgc 3 3 2\n001011\n101001\n1 2 2\n");
  CHECK(parse_code(serialize_code(c)) == c);
  CHECK_THROWS_AS(parse_code("wgc 3 3\n"), ParseError);
  CHECK_THROWS_AS(parse_code("wgc 3 3 2\n00101x\n101001\n1 2 2\n"), ParseError);
}
