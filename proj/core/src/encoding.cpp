#include "wheeler/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "text.hpp"

namespace wheeler {

BitVector::BitVector(std::vector<bool> bits) : bits_(std::move(bits)) { build(); }

BitVector BitVector::from_string(std::string_view s) {
  std::vector<bool> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("bit string may only contain '0' and '1'");
    bits.push_back(c == '1');
  }
  return BitVector(std::move(bits));
}

void BitVector::build() {
  rank1_.assign(bits_.size() + 1, 0);
  ones_.clear();
  zeros_.clear();
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    rank1_[i + 1] = rank1_[i] + (bits_[i] ? 1 : 0);
    (bits_[i] ? ones_ : zeros_).push_back(static_cast<std::uint32_t>(i));
  }
}

std::size_t BitVector::rank(bool b, std::size_t i) const {
  if (i > bits_.size()) throw Error("rank position out of range");
  return b ? rank1_[i] : i - rank1_[i];
}

std::size_t BitVector::select(bool b, std::size_t j) const {
  const auto &pos = b ? ones_ : zeros_;
  if (j < 1 || j > pos.size()) throw Error("select argument out of range");
  return pos[j - 1] + 1;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s += b ? '1' : '0';
  return s;
}

WheelerCode encode(const LabeledDigraph &g, const Ordering &pi) {
  if (!check_ordering(g, pi)) throw Error("encode: ordering is not proper");
  WheelerCode c;
  c.n = g.num_vertices();
  c.e = g.num_edges();
  c.sigma = g.sigma();
  std::vector<bool> o, in;
  o.reserve(c.n + c.e);
  in.reserve(c.n + c.e);
  for (std::size_t r = 0; r < c.n; ++r) {
    const Vertex v = pi.at(r);
    in.insert(in.end(), g.in_degree(v), false);
    in.push_back(true);
    std::vector<std::pair<Label, std::size_t>> out;
    for (EdgeId id : g.out_edges(v)) out.emplace_back(g.edge(id).label, pi.rank(g.edge(id).head));
    std::sort(out.begin(), out.end());
    o.insert(o.end(), out.size(), false);
    o.push_back(true);
    for (auto [k, h] : out) c.L.push_back(k);
  }
  c.O = BitVector(std::move(o));
  c.I = BitVector(std::move(in));
  return c;
}

namespace {

// Per-vertex degrees read off a unary bit vector; false if malformed.
bool unary_degrees(const BitVector &b, std::size_t n, std::size_t e, std::vector<std::size_t> &deg,
                   std::string &why, const char *name) {
  if (b.size() != n + e || b.count(true) != n) {
    why = std::string(name) + " must have " + std::to_string(n) + " ones and " +
          std::to_string(e) + " zeros";
    return false;
  }
  if (n > 0 && !b[b.size() - 1]) {
    why = std::string(name) + " must end with a one";
    return false;
  }
  deg.assign(n, 0);
  std::size_t v = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) ++v;
    else ++deg[v];
  }
  return true;
}

} // namespace

std::optional<Decoded> try_decode(const WheelerCode &c, std::string *why_out) {
  std::string why;
  auto reject = [&](std::string msg) -> std::optional<Decoded> {
    if (why_out) *why_out = std::move(msg);
    return std::nullopt;
  };
  if (c.n == 0) return reject("a code needs at least one vertex");
  if (c.sigma < 1) return reject("sigma must be at least 1");
  if (c.L.size() != c.e) return reject("L must hold exactly e labels");
  std::vector<std::size_t> outdeg, indeg;
  if (!unary_degrees(c.O, c.n, c.e, outdeg, why, "O")) return reject(why);
  if (!unary_degrees(c.I, c.n, c.e, indeg, why, "I")) return reject(why);

  // Labels: range check, and sorted within each vertex (canonical emission).
  std::vector<std::size_t> label_count(c.sigma + 1, 0);
  {
    std::size_t j = 0;
    for (Vertex v = 0; v < c.n; ++v)
      for (std::size_t d = 0; d < outdeg[v]; ++d, ++j) {
        const Label k = c.L[j];
        if (k < 1 || k > c.sigma) return reject("label out of range");
        if (d > 0 && c.L[j - 1] > k) return reject("labels of a vertex are not sorted");
        ++label_count[k];
      }
  }

  // Inbound labels: zeros of I form consecutive blocks, one per label, sized by L.
  std::vector<Label> in_label(c.e);
  {
    std::size_t z = 0;
    for (Label k = 1; k <= c.sigma; ++k)
      for (std::size_t t = 0; t < label_count[k]; ++t) in_label[z++] = k;
  }
  std::vector<Vertex> head_of(c.e);
  {
    std::size_t z = 0;
    for (Vertex v = 0; v < c.n; ++v)
      for (std::size_t d = 0; d < indeg[v]; ++d, ++z) {
        head_of[z] = v;
        if (d > 0 && in_label[z] != in_label[z - 1])
          return reject("a vertex would receive two different labels");
      }
  }

  // Right to left over I: match each zero with the rightmost unused L slot of its label.
  std::vector<std::vector<std::size_t>> slots(c.sigma + 1);
  for (std::size_t j = 0; j < c.e; ++j) slots[c.L[j]].push_back(j);
  std::vector<Edge> edges(c.e);
  for (std::size_t z = c.e; z-- > 0;) {
    auto &s = slots[in_label[z]];
    if (s.empty()) return reject("no unused label slot for an inbound edge");
    const std::size_t j = s.back();
    s.pop_back();
    // tail index = rank1(O, select0(O, j+1))
    edges[z] = Edge{static_cast<Vertex>(c.O.rank1(c.O.select0(j + 1))), head_of[z], in_label[z]};
  }

  Decoded d{LabeledDigraph(c.n, c.sigma, std::move(edges)), Ordering::identity(c.n)};
  if (!check_ordering(d.graph, d.order)) return reject("decoded ordering is not proper");
  return d;
}

Decoded decode(const WheelerCode &code) {
  std::string why;
  auto d = try_decode(code, &why);
  if (!d) throw Error("invalid code: " + why);
  return std::move(*d);
}

std::size_t label_bits(Label sigma) {
  std::size_t b = 0;
  while ((std::uint64_t{1} << b) < sigma) ++b;
  return b;
}

std::size_t code_size_bits(std::size_t n, std::size_t e, Label sigma) {
  return 2 * (e + n) + e * label_bits(sigma);
}

std::size_t code_size_bits(const WheelerCode &code) {
  return code_size_bits(code.n, code.e, code.sigma);
}

double candidate_count(std::size_t n, std::size_t e, Label sigma) {
  if (n == 0) return e == 0 ? 1.0 : 0.0;
  // Unary strings ending in 1: choose the positions of the e zeros among e+n-1 slots.
  double binom = 1.0;
  for (std::size_t i = 1; i <= e; ++i) binom = binom * double(n - 1 + i) / double(i);
  return binom * binom * std::pow(double(sigma), double(e));
}

namespace {

// Lexicographic enumeration of length-(n+e) strings with n ones ending in 1.
void unary_strings(std::size_t n, std::size_t e, std::vector<bool> &cur,
                   std::vector<std::vector<bool>> &out) {
  const std::size_t len = n + e;
  if (cur.size() + 1 == len) {
    cur.push_back(true);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  std::size_t ones = std::count(cur.begin(), cur.end(), true);
  std::size_t zeros = cur.size() - ones;
  if (zeros < e) {
    cur.push_back(false);
    unary_strings(n, e, cur, out);
    cur.pop_back();
  }
  if (ones + 1 < n) {
    cur.push_back(true);
    unary_strings(n, e, cur, out);
    cur.pop_back();
  }
}

} // namespace

void enumerate_codes(std::size_t n, std::size_t e, Label sigma,
                     const std::function<bool(const WheelerCode &)> &visit,
                     double max_candidates) {
  if (sigma < 1) throw Error("sigma must be at least 1");
  if (n == 0) return;
  if (candidate_count(n, e, sigma) > max_candidates)
    throw GuardExceeded("code enumeration exceeds " + std::to_string(max_candidates) +
                        " candidates");
  std::vector<std::vector<bool>> strings;
  std::vector<bool> cur;
  unary_strings(n, e, cur, strings);
  std::vector<BitVector> bvs;
  for (auto &s : strings) bvs.emplace_back(std::move(s));

  WheelerCode c;
  c.n = n;
  c.e = e;
  c.sigma = sigma;
  for (const auto &o : bvs) {
    c.O = o;
    for (const auto &in : bvs) {
      c.I = in;
      c.L.assign(e, 1);
      while (true) {
        if (try_decode(c) && !visit(c)) return;
        // next label string in lexicographic order
        std::size_t i = e;
        while (i > 0 && c.L[i - 1] == sigma) c.L[--i] = 1;
        if (i == 0) break;
        ++c.L[i - 1];
      }
    }
  }
}

std::vector<WheelerCode> all_codes(std::size_t n, std::size_t e, Label sigma,
                                   double max_candidates) {
  std::vector<WheelerCode> out;
  enumerate_codes(
      n, e, sigma,
      [&](const WheelerCode &c) {
        out.push_back(c);
        return true;
      },
      max_candidates);
  return out;
}

CodeIndex::CodeIndex(const WheelerCode &code) : code_(code) {
  if (!try_decode(code)) throw Error("backward search needs a valid code");
  C_.assign(code.sigma + 2, 0);
  by_label_.assign(code.sigma + 1, {});
  for (std::size_t j = 0; j < code.e; ++j) {
    ++C_[code.L[j] + 1];
    by_label_[code.L[j]].push_back(static_cast<std::uint32_t>(j));
  }
  for (Label k = 1; k <= code.sigma; ++k) C_[k + 1] += C_[k];
}

RankRange CodeIndex::backward_step(RankRange range, Label k) const {
  if (k < 1 || k > code_.sigma) throw Error("label " + std::to_string(k) + " outside alphabet");
  if (range.end > code_.n) throw Error("rank range out of bounds");
  if (range.empty()) return {};
  // L positions of the out-edges of ranks [begin, end).
  auto zeros_before = [&](std::size_t v) { return v == 0 ? 0 : code_.O.select1(v) - v; };
  const std::size_t lo = zeros_before(range.begin), hi = zeros_before(range.end);
  const auto &pos = by_label_[k];
  const std::size_t r1 = std::lower_bound(pos.begin(), pos.end(), lo) - pos.begin();
  const std::size_t r2 = std::lower_bound(pos.begin(), pos.end(), hi) - pos.begin();
  if (r1 == r2) return {};
  // The matching zeros of I are C[k]+r1 .. C[k]+r2-1; their heads bound the result.
  auto head = [&](std::size_t z) { return code_.I.rank1(code_.I.select0(z + 1)); };
  return {head(C_[k] + r1), head(C_[k] + r2 - 1) + 1};
}

RankRange CodeIndex::match_pattern(std::span<const Label> pattern) const {
  RankRange r{0, code_.n};
  for (Label k : pattern) {
    r = backward_step(r, k);
    if (r.empty()) return {};
  }
  return r;
}

RankRange backward_step(const WheelerCode &code, RankRange range, Label k) {
  return CodeIndex(code).backward_step(range, k);
}

RankRange match_pattern(const WheelerCode &code, std::span<const Label> pattern) {
  return CodeIndex(code).match_pattern(pattern);
}

WheelerCode parse_code(std::string_view text) {
  detail::LineReader reader{text};
  std::string_view line;
  if (!reader.next(line)) throw ParseError(0, "empty code file");
  auto header = detail::split_ws(line);
  if (header.size() != 4 || header[0] != "wgc")
    throw ParseError(reader.line_no, "expected header 'wgc <n> <e> <sigma>'");
  WheelerCode c;
  c.n = detail::to_uint(header[1], reader.line_no);
  c.e = detail::to_uint(header[2], reader.line_no);
  const auto sigma = detail::to_uint(header[3], reader.line_no);
  if (sigma < 1 || sigma > std::numeric_limits<Label>::max())
    throw ParseError(reader.line_no, "sigma must be at least 1");
  c.sigma = static_cast<Label>(sigma);
  for (BitVector *bv : {&c.O, &c.I}) {
    if (!reader.next(line)) throw ParseError(reader.line_no, "missing bit vector line");
    auto tok = detail::split_ws(line);
    if (tok.size() != 1) throw ParseError(reader.line_no, "expected one 0/1 string");
    try {
      *bv = BitVector::from_string(tok[0]);
    } catch (const Error &e) {
      throw ParseError(reader.line_no, e.what());
    }
  }
  if (reader.next(line)) {
    for (auto tok : detail::split_ws(line)) {
      const auto k = detail::to_uint(tok, reader.line_no);
      if (k < 1 || k > c.sigma)
        throw ParseError(reader.line_no, "label " + std::to_string(k) + " exceeds sigma=" +
                                             std::to_string(c.sigma));
      c.L.push_back(static_cast<Label>(k));
    }
    if (reader.next(line)) throw ParseError(reader.line_no, "trailing content");
  }
  if (c.L.empty() && c.sigma == 1) c.L.assign(c.e, 1);
  if (c.L.size() != c.e)
    throw ParseError(reader.line_no, "expected " + std::to_string(c.e) + " labels");
  return c;
}

std::string serialize_code(const WheelerCode &c) {
  std::string out = "wgc " + std::to_string(c.n) + " " + std::to_string(c.e) + " " +
                    std::to_string(c.sigma) + "\n" + c.O.to_string() + "\n" + c.I.to_string() +
                    "\n";
  if (c.sigma > 1)
    for (std::size_t j = 0; j < c.L.size(); ++j) out += (j ? " " : "") + std::to_string(c.L[j]);
  out += "\n";
  return out;
}

} // namespace wheeler
