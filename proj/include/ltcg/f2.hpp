#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltcg/error.hpp"
#include "ltcg/numeric.hpp"

namespace ltcg {

inline constexpr std::size_t kMaxBlockLength = 4096;

/// Packed vector over F2. Character i of the text form is coordinate i.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {
    require(len <= kMaxBlockLength, ErrorKind::TooLarge, "vector length " + std::to_string(len) + " exceeds 4096");
  }

  static BitVec unit(std::size_t len, std::size_t i) {
    BitVec v(len);
    v.set(i, true);
    return v;
  }

  static BitVec from_string(std::string_view bits) {
    require(!bits.empty(), ErrorKind::Parse, "empty bit string");
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      require(bits[i] == '0' || bits[i] == '1', ErrorKind::Parse, "bit string must be 0/1: '" + std::string(bits) + "'");
      if (bits[i] == '1') v.set(i, true);
    }
    return v;
  }

  /// Low `len` bits of x; coordinate j = bit j.
  static BitVec from_element(Element x, std::size_t len) {
    require(len <= 64, ErrorKind::TooLarge, "element vectors are limited to 64 coordinates");
    BitVec v(len);
    if (len > 0) v.words_[0] = len == 64 ? x : (x & ((Element{1} << len) - 1));
    return v;
  }

  [[nodiscard]] Element to_element() const {
    require(len_ <= 64, ErrorKind::TooLarge, "vector too long for a group element");
    return words_.empty() ? 0 : words_[0];
  }

  [[nodiscard]] std::size_t size() const noexcept { return len_; }

  [[nodiscard]] bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& other) {
    ensure(len_ == other.len_, "xor of equal-length vectors");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator+(BitVec a, const BitVec& b) { return a ^= b; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// Lexicographic by coordinate index (coordinate 0 most significant).
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    for (std::size_t i = 0; i < a.len_; ++i) {
      if (a.get(i) != b.get(i)) return b.get(i);
    }
    return false;
  }

  [[nodiscard]] std::size_t weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Inner product over F2.
  [[nodiscard]] int dot(const BitVec& other) const {
    ensure(len_ == other.len_, "dot of equal-length vectors");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (auto w : v.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t nrows, std::size_t ncols) : ncols_(ncols), rows_(nrows, BitVec(ncols)) {}

  static BitMatrix from_rows(std::vector<BitVec> rows, std::size_t ncols) {
    for (const auto& r : rows) {
      require(r.size() == ncols, ErrorKind::InvalidArgument, "matrix rows must all have length " + std::to_string(ncols));
    }
    BitMatrix m;
    m.ncols_ = ncols;
    m.rows_ = std::move(rows);
    return m;
  }

  static BitMatrix from_strings(std::span<const std::string> rows) {
    require(!rows.empty(), ErrorKind::InvalidArgument, "from_strings needs at least one row");
    std::vector<BitVec> vs;
    for (const auto& r : rows) vs.push_back(BitVec::from_string(r));
    const std::size_t ncols = vs.front().size();
    return from_rows(std::move(vs), ncols);
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i, true);
    return m;
  }

  /// h x n matrix whose column i is the element cols[i] (bit j -> row j).
  static BitMatrix from_columns(std::span<const Element> cols, std::size_t h) {
    BitMatrix m(h, cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t j = 0; j < h; ++j) {
        if ((cols[i] >> j) & 1U) m.rows_[j].set(i, true);
      }
    }
    return m;
  }

  [[nodiscard]] std::size_t nrows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t ncols() const noexcept { return ncols_; }
  [[nodiscard]] const BitVec& row(std::size_t i) const { return rows_[i]; }
  [[nodiscard]] const std::vector<BitVec>& rows() const noexcept { return rows_; }
  [[nodiscard]] bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

  [[nodiscard]] BitVec column(std::size_t c) const {
    BitVec v(nrows());
    for (std::size_t r = 0; r < nrows(); ++r) {
      if (rows_[r].get(c)) v.set(r, true);
    }
    return v;
  }

  /// Column c packed as an element (requires nrows <= 64).
  [[nodiscard]] Element column_element(std::size_t c) const {
    Element x = 0;
    for (std::size_t r = 0; r < nrows(); ++r) {
      if (rows_[r].get(c)) x |= Element{1} << r;
    }
    return x;
  }

  [[nodiscard]] BitMatrix transpose() const {
    BitMatrix t(ncols_, nrows());
    for (std::size_t r = 0; r < nrows(); ++r) {
      for (std::size_t c = 0; c < ncols_; ++c) {
        if (rows_[r].get(c)) t.rows_[c].set(r, true);
      }
    }
    return t;
  }

  /// this * v, one output bit per row.
  [[nodiscard]] BitVec apply(const BitVec& v) const {
    BitVec out(nrows());
    for (std::size_t r = 0; r < nrows(); ++r) {
      if (rows_[r].dot(v)) out.set(r, true);
    }
    return out;
  }

  /// Same as apply() packed into an element (requires nrows <= 64).
  [[nodiscard]] Element apply_element(const BitVec& v) const {
    Element x = 0;
    for (std::size_t r = 0; r < nrows(); ++r) {
      if (rows_[r].dot(v)) x |= Element{1} << r;
    }
    return x;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVec& r) { return r.is_zero(); });
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t ncols_ = 0;
  std::vector<BitVec> rows_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Echelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;
};

[[nodiscard]] inline Echelon rref(const BitMatrix& m) {
  std::vector<BitVec> rows = m.rows();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.ncols() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  return Echelon{BitMatrix::from_rows(std::move(rows), m.ncols()), std::move(pivots)};
}

[[nodiscard]] inline std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per free column in increasing column order.
[[nodiscard]] inline BitMatrix kernel_basis(const BitMatrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.ncols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < m.ncols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(m.ncols());
    v.set(f, true);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.reduced.get(r, f)) v.set(e.pivots[r], true);
    }
    basis.push_back(std::move(v));
  }
  return BitMatrix::from_rows(std::move(basis), m.ncols());
}

/// Greedy in-order selection of rows that are independent of the earlier ones.
[[nodiscard]] inline BitMatrix independent_rows(const BitMatrix& m) {
  std::vector<BitVec> kept;
  std::vector<BitVec> reduced;  // echelon copies of kept rows
  std::vector<std::size_t> lead;
  for (const auto& row : m.rows()) {
    BitVec v = row;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (v.get(lead[i])) v ^= reduced[i];
    }
    if (v.is_zero()) continue;
    std::size_t l = 0;
    while (!v.get(l)) ++l;
    // keep the reduced basis fully reduced on its leading columns
    for (auto& r : reduced) {
      if (r.get(l)) r ^= v;
    }
    reduced.push_back(v);
    lead.push_back(l);
    kept.push_back(row);
  }
  return BitMatrix::from_rows(std::move(kept), m.ncols());
}

namespace detail {

inline std::size_t kernel_min_weight(const BitMatrix& kernel) {
  const std::size_t m = kernel.nrows();
  BitVec cur(kernel.ncols());
  std::size_t best = kernel.ncols() + 1;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= kernel.row(static_cast<std::size_t>(std::countr_zero(i)));
    best = std::min(best, cur.weight());
    if (best == 1) break;
  }
  return best;
}

inline std::size_t symmetric_difference(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

// Smallest dependency by meeting subset sums of size <= r until two distinct subsets collide.
inline std::size_t meet_in_the_middle_width(std::span<const BitVec> vs) {
  constexpr std::size_t kMaxSubsets = 20'000'000;
  const std::size_t n = vs.size();
  std::unordered_map<BitVec, std::vector<std::vector<std::uint32_t>>, BitVecHash> table;
  table[BitVec(vs.front().size())].push_back({});
  std::size_t stored = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    std::size_t best = n + 1;
    std::vector<std::uint32_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0U);
    while (true) {
      BitVec sum(vs.front().size());
      for (auto i : idx) sum ^= vs[i];
      auto& bucket = table[sum];
      for (const auto& other : bucket) best = std::min(best, symmetric_difference(idx, other));
      bucket.push_back(idx);
      require(++stored <= kMaxSubsets, ErrorKind::TooLarge, "independence_width search exceeded subset budget");
      // next combination
      std::size_t k = r;
      while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t t = k; t < r; ++t) idx[t] = idx[t - 1] + 1;
    }
    if (best <= n) return best;
  }
  return n + 1;
}

}  // namespace detail

/// Size of the smallest linearly dependent sub-multiset of `vs` (a zero vector counts as size 1);
/// len(vs)+1 when the list is linearly independent.
[[nodiscard]] inline std::size_t independence_width(std::span<const BitVec> vs) {
  require(!vs.empty(), ErrorKind::InvalidArgument, "independence_width of an empty list");
  const std::size_t len = vs.front().size();
  for (const auto& v : vs) require(v.size() == len, ErrorKind::InvalidArgument, "vectors must share a length");
  // relations c with sum c_i v_i = 0 form the kernel of the len x n matrix with columns v_i
  const BitMatrix columns = BitMatrix::from_rows(std::vector<BitVec>(vs.begin(), vs.end()), len).transpose();
  const BitMatrix kernel = kernel_basis(columns);
  if (kernel.nrows() == 0) return vs.size() + 1;
  if (kernel.nrows() <= 22) return detail::kernel_min_weight(kernel);
  // many relations: dependencies of size <= 3 are found by a single hash pass over pairs
  std::unordered_set<BitVec, BitVecHash> seen;
  for (const auto& v : vs) {
    if (v.is_zero()) return 1;
    if (!seen.insert(v).second) return 2;
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (seen.contains(vs[i] ^ vs[j])) return 3;
    }
  }
  return detail::meet_in_the_middle_width(vs);
}

[[nodiscard]] inline std::size_t independence_width(std::span<const Element> vs, std::size_t h) {
  std::vector<BitVec> bv;
  bv.reserve(vs.size());
  for (auto x : vs) bv.push_back(BitVec::from_element(x, h));
  return independence_width(std::span<const BitVec>(bv));
}

inline constexpr std::int32_t kUnreachable = -1;

/// BFS distances from 0 in Cay(F2^h, gens); entry is kUnreachable outside the span.
[[nodiscard]] inline std::vector<std::int32_t> bfs_distances(std::span<const Element> gens, unsigned h) {
  require(h <= kMaxGroupDim, ErrorKind::TooLarge, "dimension " + std::to_string(h) + " exceeds 24");
  const std::size_t size = std::size_t{1} << h;
  std::vector<std::int32_t> dist(size, kUnreachable);
  std::vector<Element> uniq(gens.begin(), gens.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Element> frontier{0};
  dist[0] = 0;
  std::int32_t level = 0;
  while (!frontier.empty()) {
    std::vector<Element> next;
    ++level;
    for (auto x : frontier) {
      for (auto g : uniq) {
        const Element y = x ^ g;
        require(y < size, ErrorKind::InvalidArgument, "generator outside F2^h");
        if (dist[y] == kUnreachable) {
          dist[y] = level;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

/// Least number of generators (from the multiset) summing to target.
[[nodiscard]] inline std::size_t rank_wrt(const BitVec& target, std::span<const BitVec> gens) {
  require(!gens.empty(), ErrorKind::InvalidArgument, "rank_wrt needs generators");
  const std::size_t h = target.size();
  for (const auto& g : gens) require(g.size() == h, ErrorKind::InvalidArgument, "generator length mismatch");
  require(h <= kMaxGroupDim, ErrorKind::TooLarge, "rank_wrt works in F2^h with h <= 24");
  std::vector<Element> els;
  for (const auto& g : gens) els.push_back(g.to_element());
  const auto dist = bfs_distances(els, static_cast<unsigned>(h));
  const auto d = dist[target.to_element()];
  require(d != kUnreachable, ErrorKind::NotInSpan, "target " + target.to_string() + " is not in the span");
  return static_cast<std::size_t>(d);
}

/// Dimension of the span of elements of F2^h.
[[nodiscard]] inline std::size_t span_dimension(std::span<const Element> xs) {
  Element basis[64] = {};  // basis[b] has leading bit b
  std::size_t dim = 0;
  for (auto x : xs) {
    while (x != 0) {
      const int top = 63 - std::countl_zero(x);
      if (basis[top] == 0) {
        basis[top] = x;
        ++dim;
        break;
      }
      x ^= basis[top];
    }
  }
  return dim;
}

}  // namespace ltcg
