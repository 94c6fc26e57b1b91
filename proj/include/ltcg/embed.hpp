#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltcg/cayley.hpp"
#include "ltcg/codes.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/testers.hpp"

namespace ltcg {

/// A +-1 valued function on F2^dim, stored as minus[x] = 1 where f(x) = -1.
struct CutFunction {
  std::vector<std::uint8_t> minus;
  Int weight;  // probability = weight / denominator
};

/// A distribution over cut functions; the l1 embedding x -> (f(x))_f scaled so that
/// delta(x, y) = Pr_f[f(x) != f(y)].
class CutEmbedding {
 public:
  CutEmbedding() = default;

  static CutEmbedding from_weights(unsigned dim, std::vector<CutFunction> fns) {
    require(dim >= 1 && dim <= kMaxGroupDim, ErrorKind::InvalidArgument, "cut tables need 1 <= dim <= 24");
    require(!fns.empty(), ErrorKind::InvalidArgument, "embedding has no functions");
    CutEmbedding e;
    e.dim_ = dim;
    e.denominator_ = 0;
    for (const auto& f : fns) {
      require(f.minus.size() == (std::size_t{1} << dim), ErrorKind::InvalidArgument,
              "cut table length must be 2^" + std::to_string(dim));
      require(f.weight >= 0, ErrorKind::InvalidArgument, "cut weights must be nonnegative");
      e.denominator_ += f.weight;
    }
    require(e.denominator_ > 0, ErrorKind::InvalidArgument, "embedding has no mass");
    e.functions_ = std::move(fns);
    return e;
  }

  /// Probabilities must sum to exactly 1.
  static CutEmbedding from_probabilities(unsigned dim,
                                         const std::vector<std::pair<std::vector<std::uint8_t>, Rational>>& fns) {
    require(!fns.empty(), ErrorKind::InvalidArgument, "embedding has no functions");
    std::vector<Rational> probs;
    Rational total = 0;
    for (const auto& f : fns) {
      require(f.second >= 0, ErrorKind::InvalidArgument, "cut probabilities must be nonnegative");
      probs.push_back(f.second);
      total += f.second;
    }
    require(total == 1, ErrorKind::InvalidArgument, "cut probabilities sum to " + to_string(total) + ", not 1");
    Int denom;
    auto nums = common_numerators(probs, denom);
    std::vector<CutFunction> out;
    for (std::size_t i = 0; i < fns.size(); ++i) out.push_back({fns[i].first, nums[i]});
    return from_weights(dim, std::move(out));
  }

  [[nodiscard]] unsigned dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t points() const noexcept { return std::size_t{1} << dim_; }
  [[nodiscard]] const std::vector<CutFunction>& functions() const noexcept { return functions_; }
  [[nodiscard]] const Int& denominator() const noexcept { return denominator_; }
  [[nodiscard]] Rational probability(std::size_t i) const { return Rational(functions_.at(i).weight, denominator_); }

  /// delta(x, y) scaled by the denominator.
  [[nodiscard]] Int separation(Element x, Element y) const {
    Int acc = 0;
    for (const auto& f : functions_) {
      if (f.minus[x] != f.minus[y]) acc += f.weight;
    }
    return acc;
  }

  friend bool operator==(const CutEmbedding& a, const CutEmbedding& b) {
    if (a.dim_ != b.dim_ || a.functions_.size() != b.functions_.size()) return false;
    for (std::size_t i = 0; i < a.functions_.size(); ++i) {
      if (a.functions_[i].minus != b.functions_[i].minus) return false;
      if (a.functions_[i].weight * b.denominator_ != b.functions_[i].weight * a.denominator_) return false;
    }
    return true;
  }

 private:
  unsigned dim_ = 0;
  std::vector<CutFunction> functions_;
  Int denominator_{1};
};

struct DistortionReport {
  Rational max_stretch;  // over edges
  Rational min_stretch;  // over pairs at positive distance
  ExtRational distortion;
  bool shift_averaged = false;  // pairs reduced through the shift-averaged embedding
};

inline constexpr unsigned kMaxAllPairsDim = 10;
inline constexpr unsigned kMaxDistortionDim = 16;

namespace detail {

// delta'(z) * denominator * 2^h = sum_f w_f (2^h - C_f(z)) / 2 with C_f the autocorrelation of f.
inline std::vector<Int> shift_averaged_numerators(const CutEmbedding& e) {
  const std::size_t order = e.points();
  std::vector<Int> out(order, Int(0));
  std::vector<std::int64_t> f(order);
  for (const auto& fn : e.functions()) {
    if (fn.weight == 0) continue;
    for (std::size_t x = 0; x < order; ++x) f[x] = fn.minus[x] ? -1 : 1;
    walsh_hadamard(f);
    for (auto& v : f) v *= v;
    walsh_hadamard(f);  // 2^h * sum_a f(a) f(a + z)
    for (std::size_t z = 0; z < order; ++z) {
      const std::int64_t corr = f[z] / static_cast<std::int64_t>(order);
      out[z] += fn.weight * ((static_cast<std::int64_t>(order) - corr) / 2);
    }
  }
  return out;
}

inline DistortionReport make_report(const Rational& max_stretch, const std::optional<Rational>& min_stretch,
                                    bool averaged) {
  DistortionReport r;
  r.max_stretch = max_stretch;
  r.min_stretch = min_stretch.value_or(Rational(0));
  r.distortion = r.min_stretch == 0 ? ExtRational::infinity() : ExtRational::finite(r.max_stretch / r.min_stretch);
  r.shift_averaged = averaged;
  return r;
}

// Exhaustive scan with integer weights W; stretch of a pair = num / (denominator * d).
template <typename W>
DistortionReport all_pairs(const CutEmbedding& e, const std::vector<W>& w, const std::vector<std::uint32_t>& dist,
                           const std::vector<Element>& edges) {
  const auto& fns = e.functions();
  auto separation = [&](Element x, Element y) {
    W acc = 0;
    for (std::size_t i = 0; i < fns.size(); ++i) {
      if (fns[i].minus[x] != fns[i].minus[y]) acc += w[i];
    }
    return acc;
  };
  const std::size_t order = e.points();
  W max_num = 0;
  W min_num = -1;
  W min_d = 1;
  for (Element x = 0; x < order; ++x) {
    for (auto s : edges) max_num = std::max(max_num, separation(x, x ^ s));
    for (Element y = x + 1; y < order; ++y) {
      const W num = separation(x, y);
      const W d = dist[x ^ y];
      if (min_num < 0 || num * min_d < min_num * d) {
        min_num = num;
        min_d = d;
      }
    }
  }
  std::optional<Rational> min_stretch;
  if (min_num >= 0) min_stretch = Rational(Int(min_num), e.denominator() * Int(min_d));
  return make_report(Rational(Int(max_num), e.denominator()), min_stretch, false);
}

}  // namespace detail

/// Shift-averaged embedding delta'(x, y) = E_a delta(x + a, y + a), as a function of x + y.
[[nodiscard]] inline std::vector<Rational> shift_average(const CutEmbedding& e) {
  const auto num = detail::shift_averaged_numerators(e);
  std::vector<Rational> out(num.size());
  const Int scale = e.denominator() * static_cast<std::int64_t>(e.points());
  for (std::size_t z = 0; z < num.size(); ++z) out[z] = Rational(num[z], scale);
  return out;
}

/// Max edge stretch over min pair stretch against the graph metric. All pairs are scanned for
/// h <= 10; above that the embedding is shift-averaged first, which never raises distortion.
[[nodiscard]] inline DistortionReport distortion(const CutEmbedding& e, const CayleyGraph& g) {
  require(e.dim() == g.h(), ErrorKind::InvalidArgument, "embedding and graph live on different groups");
  require(g.h() <= kMaxDistortionDim, ErrorKind::TooLarge, "distortion needs h <= 16");
  const auto dist = bfs_metric(g);
  std::vector<Element> edges;
  for (auto s : g.generators()) {
    if (s != 0 && std::find(edges.begin(), edges.end(), s) == edges.end()) edges.push_back(s);
  }
  const std::size_t order = e.points();
  if (g.h() > kMaxAllPairsDim) {
    const auto avg = shift_average(e);
    Rational max_stretch = 0;
    for (auto s : edges) max_stretch = std::max(max_stretch, avg[s]);
    std::optional<Rational> min_stretch;
    for (Element z = 1; z < order; ++z) {
      Rational v = avg[z] / dist[z];
      if (!min_stretch || v < *min_stretch) min_stretch = v;
    }
    return detail::make_report(max_stretch, min_stretch, true);
  }
  if (e.denominator() < (Int(1) << 40)) {
    std::vector<std::int64_t> w;
    for (const auto& f : e.functions()) w.push_back(f.weight.convert_to<std::int64_t>());
    return detail::all_pairs(e, w, dist, edges);
  }
  std::vector<Int> w;
  for (const auto& f : e.functions()) w.push_back(f.weight);
  return detail::all_pairs(e, w, dist, edges);
}

/// The linear embedding of a tester: each dual word alpha contributes the character cut
/// s -> (-1)^<a, s> on the quotient, with the tester's weight.
[[nodiscard]] inline CutEmbedding character_embedding(const Tester& t) {
  const LinearCode& c = t.code();
  require(c.h() >= 1 && c.h() <= kMaxDistortionDim, ErrorKind::InvalidArgument, "character embedding needs 1 <= n - k <= 16");
  const std::size_t order = std::size_t{1} << c.h();
  std::vector<CutFunction> fns;
  for (const auto& e : t.support()) {
    const Element a = c.dual_coordinates(e.word);
    CutFunction f;
    f.minus.resize(order);
    for (Element s = 0; s < order; ++s) f.minus[s] = static_cast<std::uint8_t>(dot(a, s));
    f.weight = e.weight;
    fns.push_back(std::move(f));
  }
  return CutEmbedding::from_weights(static_cast<unsigned>(c.h()), std::move(fns));
}

/// epsilon / delta of the tester, i.e. the distortion of its linear embedding.
[[nodiscard]] inline DistortionReport linear_distortion(const Tester& t, const CosetTable& tbl) {
  const auto rep = soundness(t, tbl);
  require(!rep.ratio.infinite, ErrorKind::DegenerateEmbedding, "some nonzero coset is never rejected");
  DistortionReport r;
  r.max_stretch = rep.epsilon;
  r.min_stretch = rep.delta;
  r.distortion = rep.ratio;
  return r;
}

struct Linearization {
  Tester tester;
  CutEmbedding quotient;  // the input on F2^{n-k}
  DistortionReport before;
  DistortionReport after;  // linear distortion of the tester
  [[nodiscard]] bool holds() const { return after.distortion <= before.distortion; }
};

/// Tables on the quotient (2^{n-k} entries, indexed by syndrome) or on F2^n (2^n entries, indexed
/// by the word; must be constant on cosets).
[[nodiscard]] inline CutEmbedding quotient_embedding(const CutEmbedding& e, const LinearCode& c) {
  const std::size_t h = c.h();
  require(h >= 1 && h <= kMaxDistortionDim, ErrorKind::TooLarge, "linearize needs 1 <= n - k <= 16");
  if (e.dim() == h) return e;
  require(e.dim() == c.n(), ErrorKind::InvalidArgument,
          "cut tables must have 2^(n-k) or 2^n entries");
  const std::size_t order = std::size_t{1} << h;
  std::vector<CutFunction> fns;
  for (const auto& f : e.functions()) {
    CutFunction q;
    q.weight = f.weight;
    q.minus.assign(order, 0);
    std::vector<bool> seen(order, false);
    for (Element v = 0; v < f.minus.size(); ++v) {
      const Element s = c.syndrome(BitVec::from_element(v, c.n()));
      if (!seen[s]) {
        seen[s] = true;
        q.minus[s] = f.minus[v];
      } else {
        require(q.minus[s] == f.minus[v], ErrorKind::NotCosetInvariant,
                "cut table differs inside the coset of syndrome " + std::to_string(s));
      }
    }
    fns.push_back(std::move(q));
  }
  return CutEmbedding::from_weights(static_cast<unsigned>(h), std::move(fns));
}

/// Fourier mass w_a = E_f[f^(a)^2] on each dual word; includes the zero word for constant parts.
[[nodiscard]] inline Linearization linearize(const CutEmbedding& e, const CosetTable& tbl) {
  const LinearCode& c = tbl.code();
  Linearization out;
  out.quotient = quotient_embedding(e, c);
  const std::size_t order = out.quotient.points();
  std::vector<Int> mass(order, Int(0));
  std::vector<std::int64_t> f(order);
  for (const auto& fn : out.quotient.functions()) {
    if (fn.weight == 0) continue;
    for (std::size_t x = 0; x < order; ++x) f[x] = fn.minus[x] ? -1 : 1;
    walsh_hadamard(f);
    for (std::size_t a = 0; a < order; ++a) mass[a] += fn.weight * Int(f[a]) * Int(f[a]);
  }
  std::vector<TesterEntry> entries;
  for (Element a = 0; a < order; ++a) {
    if (mass[a] != 0) entries.push_back({c.dual_word(a), mass[a]});
  }
  out.tester = Tester::from_weights(c, std::move(entries)).reduced();
  out.before = distortion(out.quotient, graph_from_code(c));
  const auto rep = soundness(out.tester, tbl);
  out.after.max_stretch = rep.epsilon;
  out.after.min_stretch = rep.delta;
  out.after.distortion = rep.ratio;
  return out;
}

struct KnBound {
  Rational bound;  // (d-perp / n) * t
  std::size_t dual_distance = 0;
  std::size_t covering_radius = 0;
  double asymptotic = 0;  // d-perp h / (n log2(n / h)), informational
};

[[nodiscard]] inline KnBound khot_naor_bound(const CosetTable& tbl) {
  const LinearCode& c = tbl.code();
  require(c.h() >= 1, ErrorKind::ZeroDual, "the dual code is {0}");
  KnBound b;
  b.dual_distance = dual_distance(c);
  b.covering_radius = tbl.covering_radius();
  b.bound = Rational(Int(b.dual_distance * b.covering_radius), Int(c.n()));
  const double n = static_cast<double>(c.n());
  const double h = static_cast<double>(c.h());
  b.asymptotic = n > h ? static_cast<double>(b.dual_distance) * h / (n * std::log2(n / h)) : 0.0;
  return b;
}

struct BasisBound {
  ExtRational ratio;
  Rational bound;  // k d / (3n)
  [[nodiscard]] bool holds() const { return ExtRational::finite(bound) <= ratio; }
};

/// For a tester whose support is a basis of the dual code.
[[nodiscard]] inline BasisBound basis_tester_bound(const Tester& t, const CosetTable& tbl) {
  const LinearCode& c = t.code();
  require(c == tbl.code(), ErrorKind::InvalidArgument, "tester and coset table describe different codes");
  std::vector<BitVec> words;
  for (const auto& e : t.support()) {
    if (e.weight > 0) words.push_back(e.word);
  }
  require(words.size() == c.h() && !words.empty() && rank(BitMatrix::from_rows(words, c.n())) == c.h(),
          ErrorKind::NotBasisTester, "tester support is not a basis of the dual code");
  BasisBound b;
  b.ratio = soundness(t, tbl).ratio;
  b.bound = Rational(Int(c.k() * min_distance(c)), Int(3 * c.n()));
  return b;
}

}  // namespace ltcg
