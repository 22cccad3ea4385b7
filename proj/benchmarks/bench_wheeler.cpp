#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "wheeler/encoding.hpp"
#include "wheeler/optimization.hpp"
#include "wheeler/pq_tree.hpp"
#include "wheeler/recognizer.hpp"

using namespace wheeler;

namespace {

// Random out-tree with a single label; every such tree is Wheeler.
LabeledDigraph random_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({Vertex(rng() % v), v, 1});
  return LabeledDigraph(n, 1, std::move(edges));
}

// Complete sigma-ary trie of the given depth.
LabeledDigraph complete_trie(Label sigma, std::size_t depth) {
  std::vector<Edge> edges;
  std::size_t n = 1, level_begin = 0, level_end = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    for (std::size_t u = level_begin; u < level_end; ++u)
      for (Label k = 1; k <= sigma; ++k) edges.push_back({Vertex(u), Vertex(n++), k});
    level_begin = level_end;
    level_end = n;
  }
  return LabeledDigraph(n, sigma, std::move(edges));
}

LabeledDigraph random_dag(std::size_t n, std::size_t e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  while (edges.size() < e) {
    Vertex a = Vertex(rng() % n), b = Vertex(rng() % n);
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b), 1});
  }
  return LabeledDigraph(n, 1, std::move(edges));
}

void BM_RecognizeExhaustive(benchmark::State &state) {
  const auto g = random_tree(std::size_t(state.range(0)), 1);
  RecognizerOptions opts;
  opts.max_vertices = g.num_vertices();
  for (auto _ : state) benchmark::DoNotOptimize(recognize_exhaustive(g, opts));
}
BENCHMARK(BM_RecognizeExhaustive)->Arg(6)->Arg(8)->Arg(10);

void BM_RecognizeSigma1(benchmark::State &state) {
  const auto g = random_tree(std::size_t(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(recognize_sigma1(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RecognizeSigma1)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_RecognizeSpecial(benchmark::State &state) {
  const auto g = complete_trie(2, std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recognize_special(g));
}
BENCHMARK(BM_RecognizeSpecial)->DenseRange(2, 6, 2);

void BM_PqReduce(benchmark::State &state) {
  const auto n = std::size_t(state.range(0));
  std::vector<Vertex> leaves(n);
  std::iota(leaves.begin(), leaves.end(), Vertex(0));
  std::mt19937_64 rng(3);
  auto hidden = leaves;
  std::shuffle(hidden.begin(), hidden.end(), rng);
  std::vector<std::vector<Vertex>> windows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = rng() % n, len = 2 + rng() % 4;
    windows.emplace_back(hidden.begin() + a, hidden.begin() + std::min(n, a + len));
  }
  for (auto _ : state) {
    auto t = PQTree::universal(leaves);
    for (const auto &w : windows) t = reduce(t, w);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_PqReduce)->RangeMultiplier(4)->Range(16, 256);

void BM_PqPush(benchmark::State &state) {
  const auto n = std::size_t(state.range(0));
  std::vector<Vertex> upper(n), next(2 * n);
  std::iota(upper.begin(), upper.end(), Vertex(0));
  std::iota(next.begin(), next.end(), Vertex(n));
  std::vector<LevelArc> arcs;
  for (std::size_t i = 0; i < 2 * n; ++i) arcs.push_back({Vertex(i / 2), Vertex(n + i)});
  const auto tree = PQTree::universal(upper);
  for (auto _ : state) benchmark::DoNotOptimize(push(tree, next, arcs));
}
BENCHMARK(BM_PqPush)->RangeMultiplier(4)->Range(8, 512);

struct Indexed {
  LabeledDigraph graph;
  WheelerCode code;
};

Indexed indexed_trie(std::size_t depth) {
  auto g = complete_trie(2, depth);
  auto pi = recognize_special(g);
  auto code = encode(g, *pi);
  return {std::move(g), std::move(code)};
}

void BM_Encode(benchmark::State &state) {
  auto g = complete_trie(2, std::size_t(state.range(0)));
  const auto pi = *recognize_special(g);
  for (auto _ : state) benchmark::DoNotOptimize(encode(g, pi));
}
BENCHMARK(BM_Encode)->DenseRange(4, 12, 4);

void BM_Decode(benchmark::State &state) {
  const auto x = indexed_trie(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decode(x.code));
}
BENCHMARK(BM_Decode)->DenseRange(4, 12, 4);

void BM_Match(benchmark::State &state) {
  const auto x = indexed_trie(12);
  const CodeIndex index(x.code);
  std::vector<Label> pattern(std::size_t(state.range(0)));
  for (std::size_t i = 0; i < pattern.size(); ++i) pattern[i] = Label(1 + i % 2);
  for (auto _ : state) benchmark::DoNotOptimize(index.match_pattern(pattern));
}
BENCHMARK(BM_Match)->RangeMultiplier(2)->Range(1, 8);

void BM_WsApproxSigma1(benchmark::State &state) {
  const auto n = std::size_t(state.range(0));
  const auto g = random_dag(n, 3 * n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ws_approx_sigma1(g));
}
BENCHMARK(BM_WsApproxSigma1)->RangeMultiplier(4)->Range(16, 1024);

} // namespace

BENCHMARK_MAIN();
