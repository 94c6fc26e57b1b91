#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/numeric.hpp"

namespace ltcg {

enum class MatrixRole { Generator, ParityCheck };

/// Binary linear [n,k] code carrying both a generator (k x n) and a parity-check ((n-k) x n) basis.
///
/// The rows of the parity-check matrix are the pinned basis of the dual code: a dual word is
/// addressed by its coordinates a in F2^h against those rows, and a received word by its syndrome
/// s in F2^h. With that choice <alpha, v> = <a, s> for every dual word alpha and word v.
class LinearCode {
 public:
  LinearCode() = default;

  /// Completes the missing matrix. Dependent input rows are dropped (first occurrences kept);
  /// a full-rank input is stored unchanged. Only a rank-0 input is rejected.
  static LinearCode make(const BitMatrix& m, MatrixRole role) {
    require(m.ncols() >= 1, ErrorKind::InvalidArgument, "block length must be at least 1");
    require(m.ncols() <= kMaxBlockLength, ErrorKind::TooLarge, "block length exceeds 4096");
    BitMatrix basis = independent_rows(m);
    require(basis.nrows() > 0, ErrorKind::RankDeficient, "input matrix has rank 0");
    LinearCode c;
    c.n_ = m.ncols();
    c.role_ = role;
    if (role == MatrixRole::Generator) {
      c.gen_ = std::move(basis);
      c.pcheck_ = kernel_basis(c.gen_);
    } else {
      c.pcheck_ = std::move(basis);
      c.gen_ = kernel_basis(c.pcheck_);
    }
    if (c.gen_.nrows() == 0) c.gen_ = BitMatrix(0, c.n_);
    if (c.pcheck_.nrows() == 0) c.pcheck_ = BitMatrix(0, c.n_);
    c.prepare();
    return c;
  }

  static LinearCode from_generator(const BitMatrix& m) { return make(m, MatrixRole::Generator); }
  static LinearCode from_parity_check(const BitMatrix& m) { return make(m, MatrixRole::ParityCheck); }

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return gen_.nrows(); }
  /// Codimension n - k; the dimension of the dual code and of the syndrome space.
  [[nodiscard]] std::size_t h() const noexcept { return pcheck_.nrows(); }
  [[nodiscard]] const BitMatrix& gen() const noexcept { return gen_; }
  [[nodiscard]] const BitMatrix& pcheck() const noexcept { return pcheck_; }
  /// Which matrix the code was built from; serialization writes that one back.
  [[nodiscard]] MatrixRole role() const noexcept { return role_; }

  [[nodiscard]] LinearCode dual() const {
    if (h() == 0) return make(BitMatrix::identity(n_), MatrixRole::ParityCheck);
    return make(pcheck_, MatrixRole::Generator);
  }

  [[nodiscard]] bool contains(const BitVec& v) const {
    check_length(v);
    return std::all_of(pcheck_.rows().begin(), pcheck_.rows().end(), [&](const BitVec& r) { return r.dot(v) == 0; });
  }

  [[nodiscard]] bool dual_contains(const BitVec& alpha) const {
    check_length(alpha);
    return std::all_of(gen_.rows().begin(), gen_.rows().end(), [&](const BitVec& r) { return r.dot(alpha) == 0; });
  }

  [[nodiscard]] Element syndrome(const BitVec& v) const {
    check_length(v);
    require_small_codim();
    return pcheck_.apply_element(v);
  }

  /// Syndrome of the unit vector e_i, i.e. column i of the parity-check matrix.
  [[nodiscard]] Element unit_syndrome(std::size_t i) const {
    require_small_codim();
    return pcheck_.column_element(i);
  }

  /// sum_j a_j * pcheck row j.
  [[nodiscard]] BitVec dual_word(Element a) const {
    require_small_codim();
    BitVec w(n_);
    for (std::size_t j = 0; j < h(); ++j) {
      if ((a >> j) & 1U) w ^= pcheck_.row(j);
    }
    return w;
  }

  /// Inverse of dual_word(); throws NotInSpan for words outside the dual code.
  [[nodiscard]] Element dual_coordinates(const BitVec& alpha) const {
    check_length(alpha);
    require_small_codim();
    Element a = 0;
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      if (alpha.get(pivots_[r])) a ^= transform_[r];
    }
    require(dual_word(a) == alpha, ErrorKind::NotInSpan, "word " + alpha.to_string() + " is not in the dual code");
    return a;
  }

  /// A word whose syndrome is s (supported on pivot columns of the parity-check matrix).
  [[nodiscard]] BitVec coset_representative(Element s) const {
    require_small_codim();
    BitVec v(n_);
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      if (dot(transform_[r], s)) v.set(pivots_[r], true);
    }
    return v;
  }

  /// Columns of the parity-check matrix as elements of F2^h (the generator multiset of the coset graph).
  [[nodiscard]] std::vector<Element> unit_syndromes() const {
    require_small_codim();
    std::vector<Element> cols(n_);
    for (std::size_t i = 0; i < n_; ++i) cols[i] = pcheck_.column_element(i);
    return cols;
  }

  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.n_ == b.n_ && a.gen_ == b.gen_ && a.pcheck_ == b.pcheck_;
  }

 private:
  void check_length(const BitVec& v) const {
    require(v.size() == n_, ErrorKind::InvalidArgument, "word length " + std::to_string(v.size()) + " != n = " + std::to_string(n_));
  }

  void require_small_codim() const {
    require(h() <= 64, ErrorKind::TooLarge, "syndrome operations need n - k <= 64");
  }

  // Row-reduce pcheck while tracking which original rows make up each reduced row.
  void prepare() {
    pivots_.clear();
    transform_.clear();
    if (h() > 64) return;
    std::vector<BitVec> rows = pcheck_.rows();
    std::vector<Element> masks(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) masks[j] = Element{1} << j;
    std::size_t next = 0;
    for (std::size_t c = 0; c < n_ && next < rows.size(); ++c) {
      std::size_t p = next;
      while (p < rows.size() && !rows[p].get(c)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[next]);
      std::swap(masks[p], masks[next]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != next && rows[r].get(c)) {
          rows[r] ^= rows[next];
          masks[r] ^= masks[next];
        }
      }
      pivots_.push_back(c);
      ++next;
    }
    ensure(next == rows.size(), "parity-check basis is full rank");
    transform_ = std::move(masks);
  }

  std::size_t n_ = 0;
  MatrixRole role_ = MatrixRole::Generator;
  BitMatrix gen_;
  BitMatrix pcheck_;
  std::vector<std::size_t> pivots_;
  std::vector<Element> transform_;
};

/// Exact minimum nonzero codeword weight; n+1 for the zero code.
[[nodiscard]] inline std::size_t min_distance(const LinearCode& c) {
  const std::size_t k = c.k();
  const std::size_t h = c.h();
  if (k == 0) return c.n() + 1;
  if (k <= h && k <= 24) {
    BitVec cur(c.n());
    std::size_t best = c.n();
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
      cur ^= c.gen().row(static_cast<std::size_t>(std::countr_zero(i)));
      best = std::min(best, cur.weight());
    }
    return best;
  }
  require(h <= 24, ErrorKind::TooLarge, "min_distance needs min(k, n-k) <= 24");
  // a set of coset images of e_i is dependent exactly when the indicator is a codeword
  std::vector<BitVec> cols;
  cols.reserve(c.n());
  for (std::size_t i = 0; i < c.n(); ++i) cols.push_back(c.pcheck().column(i));
  return independence_width(std::span<const BitVec>(cols));
}

/// Minimum distance of the dual code (n+1 when the dual is {0}).
[[nodiscard]] inline std::size_t dual_distance(const LinearCode& c) {
  if (c.h() == 0) return c.n() + 1;
  return min_distance(LinearCode::from_generator(c.pcheck()));
}

/// Coset-leader weights indexed by packed syndrome.
class CosetTable {
 public:
  CosetTable() = default;

  explicit CosetTable(LinearCode code) : code_(std::move(code)) {
    require(code_.h() <= kMaxGroupDim, ErrorKind::TooLarge, "coset table needs n - k <= 24");
    const auto gens = code_.unit_syndromes();
    const auto dist = bfs_distances(gens, static_cast<unsigned>(code_.h()));
    leader_weight_.resize(dist.size());
    for (std::size_t s = 0; s < dist.size(); ++s) {
      ensure(dist[s] != kUnreachable, "parity-check columns span the syndrome space");
      leader_weight_[s] = static_cast<std::uint32_t>(dist[s]);
      covering_radius_ = std::max<std::size_t>(covering_radius_, leader_weight_[s]);
    }
  }

  [[nodiscard]] const LinearCode& code() const noexcept { return code_; }
  [[nodiscard]] unsigned h() const noexcept { return static_cast<unsigned>(code_.h()); }
  [[nodiscard]] std::size_t size() const noexcept { return leader_weight_.size(); }
  [[nodiscard]] std::size_t leader_weight(Element s) const { return leader_weight_.at(s); }
  [[nodiscard]] const std::vector<std::uint32_t>& leader_weights() const noexcept { return leader_weight_; }
  [[nodiscard]] std::size_t covering_radius() const noexcept { return covering_radius_; }

 private:
  LinearCode code_;
  std::vector<std::uint32_t> leader_weight_;
  std::size_t covering_radius_ = 0;
};

[[nodiscard]] inline CosetTable coset_table(const LinearCode& c) { return CosetTable(c); }

[[nodiscard]] inline std::size_t dist_to_code(const BitVec& v, const CosetTable& tbl) {
  return tbl.leader_weight(tbl.code().syndrome(v));
}

// ---------------------------------------------------------------------------
// Standard codes used by the corpus and the tests.

[[nodiscard]] inline LinearCode repetition_code(std::size_t n) {
  BitMatrix g(1, n);
  for (std::size_t i = 0; i < n; ++i) g.set(0, i, true);
  return LinearCode::from_generator(g);
}

/// Even-weight [n, n-1, 2] code.
[[nodiscard]] inline LinearCode parity_code(std::size_t n) {
  BitMatrix p(1, n);
  for (std::size_t i = 0; i < n; ++i) p.set(0, i, true);
  return LinearCode::from_parity_check(p);
}

/// Hamming [2^r - 1, 2^r - 1 - r, 3]; column i of the parity check is the binary expansion of i+1.
[[nodiscard]] inline LinearCode hamming_code(unsigned r = 3) {
  require(r >= 2 && r <= 12, ErrorKind::InvalidArgument, "hamming_code needs 2 <= r <= 12");
  std::vector<Element> cols;
  for (Element x = 1; x < (Element{1} << r); ++x) cols.push_back(x);
  return LinearCode::from_parity_check(BitMatrix::from_columns(cols, r));
}

/// Extended Hamming [8,4,4]: Hamming parity check with a zero column appended and an all-ones row.
[[nodiscard]] inline LinearCode extended_hamming_code() {
  std::vector<Element> cols;
  for (Element x = 1; x < 8; ++x) cols.push_back(x | 8U);
  cols.push_back(8U);
  return LinearCode::from_parity_check(BitMatrix::from_columns(cols, 4));
}

/// RM(r, m): evaluations of all monomials of degree <= r at the points of F2^m (point p is coordinate p).
[[nodiscard]] inline LinearCode reed_muller_code(unsigned r, unsigned m) {
  require(m >= 1 && m <= 5 && r <= m, ErrorKind::InvalidArgument, "reed_muller_code needs r <= m <= 5");
  const std::size_t n = std::size_t{1} << m;
  std::vector<BitVec> rows;
  for (Element mono = 0; mono < (Element{1} << m); ++mono) {
    if (static_cast<unsigned>(std::popcount(mono)) > r) continue;
    BitVec row(n);
    for (std::size_t p = 0; p < n; ++p) {
      if ((p & mono) == mono) row.set(p, true);
    }
    rows.push_back(std::move(row));
  }
  return LinearCode::from_generator(BitMatrix::from_rows(std::move(rows), n));
}

/// Uniformly random full-rank k x n generator from a seeded mt19937_64.
[[nodiscard]] inline LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed) {
  require(k >= 1 && k <= n, ErrorKind::InvalidArgument, "random_code needs 1 <= k <= n");
  std::mt19937_64 rng(seed);
  while (true) {
    BitMatrix g(k, n);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < n; ++c) g.set(r, c, (rng() >> 63) != 0);
    }
    if (rank(g) == k) return LinearCode::from_generator(g);
  }
}

}  // namespace ltcg
