#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wheeler/axioms.hpp"
#include "wheeler/graph.hpp"

namespace wheeler {

/// Plain bit vector with precomputed rank/select tables.
///
/// rank_b(i) counts b-bits among the first i bits (0 <= i <= size()).
/// select_b(j) is the smallest i with rank_b(i) == j, for 1 <= j <= count_b(); in other
/// words, the prefix length ending right after the j-th b-bit.
class BitVector {
public:
  BitVector() { build(); }
  explicit BitVector(std::vector<bool> bits);
  /// Parses a string of '0'/'1'. Throws wheeler::Error on other characters.
  static BitVector from_string(std::string_view s);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  std::size_t count(bool b) const noexcept { return b ? ones_.size() : zeros_.size(); }
  std::size_t rank(bool b, std::size_t i) const;
  std::size_t select(bool b, std::size_t j) const;
  std::size_t rank1(std::size_t i) const { return rank(true, i); }
  std::size_t rank0(std::size_t i) const { return rank(false, i); }
  std::size_t select1(std::size_t j) const { return select(true, j); }
  std::size_t select0(std::size_t j) const { return select(false, j); }

  std::string to_string() const;
  const std::vector<bool> &bits() const noexcept { return bits_; }
  friend bool operator==(const BitVector &a, const BitVector &b) { return a.bits_ == b.bits_; }

private:
  void build();
  std::vector<bool> bits_;
  std::vector<std::uint32_t> rank1_; // rank1_[i] = ones among the first i bits
  std::vector<std::uint32_t> ones_;  // positions of ones
  std::vector<std::uint32_t> zeros_; // positions of zeros
};

/// The (O, I, L) code of a graph under a proper ordering. O holds out-degrees in unary
/// (0^d 1 per vertex), I holds in-degrees, L the labels of the out-edges in O order.
struct WheelerCode {
  std::size_t n = 0;
  std::size_t e = 0;
  Label sigma = 1;
  BitVector O;
  BitVector I;
  std::vector<Label> L;

  friend bool operator==(const WheelerCode &, const WheelerCode &) = default;
};

/// Builds the code; out-edges of a vertex are emitted sorted by (label, head rank).
/// Throws wheeler::Error if `pi` is not proper.
WheelerCode encode(const LabeledDigraph &g, const Ordering &pi);

struct Decoded {
  LabeledDigraph graph; // vertex i is the i-th vertex of the code
  Ordering order;       // identity
};

/// Inverse of encode. Throws wheeler::Error on invalid codes.
Decoded decode(const WheelerCode &code);
/// Non-throwing decode; `why` receives the rejection reason.
std::optional<Decoded> try_decode(const WheelerCode &code, std::string *why = nullptr);

/// Payload size in bits: 2(e+n) for O and I plus e * ceil(log2 sigma) for L.
std::size_t code_size_bits(std::size_t n, std::size_t e, Label sigma);
std::size_t code_size_bits(const WheelerCode &code);
/// ceil(log2 sigma); 0 for sigma == 1.
std::size_t label_bits(Label sigma);

/// Number of structurally valid (O, I, L) candidates for the given sizes (saturating).
double candidate_count(std::size_t n, std::size_t e, Label sigma);

/// Visits every decodable code with the given sizes in lexicographic (O, I, L) order.
/// The visitor returns false to stop early. Throws GuardExceeded when the candidate
/// count exceeds `max_candidates`.
void enumerate_codes(std::size_t n, std::size_t e, Label sigma,
                     const std::function<bool(const WheelerCode &)> &visit,
                     double max_candidates = double(1u << 24));

/// Collects enumerate_codes into a vector.
std::vector<WheelerCode> all_codes(std::size_t n, std::size_t e, Label sigma,
                                   double max_candidates = double(1u << 24));

/// Backward-search index over a decodable code.
class CodeIndex {
public:
  explicit CodeIndex(const WheelerCode &code);
  /// Ranks reached from `range` by one k-labeled edge.
  RankRange backward_step(RankRange range, Label k) const;
  /// Ranks reached from all vertices by following `pattern`.
  RankRange match_pattern(std::span<const Label> pattern) const;

private:
  WheelerCode code_;
  std::vector<std::size_t> C_;                     // C_[k] = labels < k in L
  std::vector<std::vector<std::uint32_t>> by_label_; // L positions per label
};

RankRange backward_step(const WheelerCode &code, RankRange range, Label k);
RankRange match_pattern(const WheelerCode &code, std::span<const Label> pattern);

/// Code file: `wgc <n> <e> <sigma>`, then O, I, and the labels of L (1-based text).
WheelerCode parse_code(std::string_view text);
std::string serialize_code(const WheelerCode &code);

} // namespace wheeler
