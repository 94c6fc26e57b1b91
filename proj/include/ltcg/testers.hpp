#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ltcg/codes.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/lp.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/symmetry.hpp"

namespace ltcg {

/// Dense exact work (transforms, profiles, explicit boosting) is limited to n - k <= 20.
inline constexpr unsigned kMaxExactDim = 20;

struct TesterEntry {
  BitVec word;
  Int weight;  // probability = weight / denominator
};

/// A distribution on the dual code, stored as integer weights over a common denominator so
/// every derived quantity stays exact. Support order and multiplicity are preserved.
class Tester {
 public:
  Tester() = default;

  static Tester from_weights(LinearCode code, std::vector<TesterEntry> support) {
    Tester t;
    t.code_ = std::move(code);
    t.support_ = std::move(support);
    t.denominator_ = 0;
    for (const auto& e : t.support_) {
      require(e.weight >= 0, ErrorKind::InvalidArgument, "tester weights must be nonnegative");
      require(t.code_.dual_contains(e.word), ErrorKind::InvalidArgument,
              "support word " + e.word.to_string() + " is not a dual codeword");
      t.denominator_ += e.weight;
    }
    require(t.denominator_ > 0, ErrorKind::InvalidArgument, "tester needs positive total weight");
    return t;
  }

  /// Probabilities must sum to exactly 1.
  static Tester from_probabilities(LinearCode code, const std::vector<std::pair<BitVec, Rational>>& support) {
    require(!support.empty(), ErrorKind::InvalidArgument, "tester support is empty");
    std::vector<Rational> probs;
    Rational total = 0;
    for (const auto& [w, p] : support) {
      require(p >= 0, ErrorKind::InvalidArgument, "tester probabilities must be nonnegative");
      probs.push_back(p);
      total += p;
    }
    require(total == 1, ErrorKind::InvalidArgument, "tester probabilities sum to " + to_string(total) + ", not 1");
    Int denom;
    auto nums = common_numerators(probs, denom);
    std::vector<TesterEntry> entries;
    for (std::size_t i = 0; i < support.size(); ++i) entries.push_back({support[i].first, nums[i]});
    return from_weights(std::move(code), std::move(entries));
  }

  static Tester uniform(LinearCode code, const std::vector<BitVec>& words) {
    std::vector<TesterEntry> entries;
    for (const auto& w : words) entries.push_back({w, Int(1)});
    return from_weights(std::move(code), std::move(entries));
  }

  static Tester point_mass_zero(LinearCode code) {
    const std::size_t n = code.n();
    return from_weights(std::move(code), {{BitVec(n), Int(1)}});
  }

  /// Mixes this tester with mass (1 - p) on the zero word; the zero word is appended last.
  [[nodiscard]] Tester diluted(const Rational& p) const {
    require(p > 0 && p <= 1, ErrorKind::InvalidArgument, "dilution factor must be in (0, 1]");
    const Int pn = boost::multiprecision::numerator(p);
    const Int pd = boost::multiprecision::denominator(p);
    std::vector<TesterEntry> entries;
    for (const auto& e : support_) entries.push_back({e.word, e.weight * pn});
    if (p != 1) entries.push_back({BitVec(code_.n()), denominator_ * (pd - pn)});
    return from_weights(code_, std::move(entries));
  }

  [[nodiscard]] const LinearCode& code() const noexcept { return code_; }
  [[nodiscard]] const std::vector<TesterEntry>& support() const noexcept { return support_; }
  [[nodiscard]] const Int& denominator() const noexcept { return denominator_; }
  [[nodiscard]] Rational probability(std::size_t i) const { return Rational(support_.at(i).weight, denominator_); }

  /// Weights indexed by dual coordinates a in F2^h (duplicates merged).
  [[nodiscard]] std::vector<Int> dense_weights() const {
    require(code_.h() <= kMaxExactDim, ErrorKind::TooLarge, "dense tester view needs n - k <= 20");
    std::vector<Int> w(std::size_t{1} << code_.h(), Int(0));
    for (const auto& e : support_) w[code_.dual_coordinates(e.word)] += e.weight;
    return w;
  }

  /// Same distribution with weights divided by their common gcd with the denominator.
  [[nodiscard]] Tester reduced() const {
    Int g = denominator_;
    for (const auto& e : support_) g = boost::multiprecision::gcd(g, e.weight);
    Tester t = *this;
    if (g > 1) {
      for (auto& e : t.support_) e.weight /= g;
      t.denominator_ /= g;
    }
    return t;
  }

  /// Equality of the listed support (order, words and probabilities).
  friend bool operator==(const Tester& a, const Tester& b) {
    if (!(a.code_ == b.code_) || a.support_.size() != b.support_.size()) return false;
    for (std::size_t i = 0; i < a.support_.size(); ++i) {
      if (a.support_[i].word != b.support_[i].word) return false;
      if (a.support_[i].weight * b.denominator_ != b.support_[i].weight * a.denominator_) return false;
    }
    return true;
  }

 private:
  LinearCode code_;
  std::vector<TesterEntry> support_;
  Int denominator_{1};
};

/// Pr_{alpha ~ D}[<alpha, v> = 1], summed directly over the support.
[[nodiscard]] inline Rational rej(const Tester& t, const BitVec& v) {
  Int acc = 0;
  for (const auto& e : t.support()) {
    if (e.word.dot(v)) acc += e.weight;
  }
  return Rational(acc, t.denominator());
}

/// Rejection probability of every coset, indexed by syndrome: Rej(s) = numer[s] / denominator.
struct RejectionProfile {
  unsigned h = 0;
  std::vector<Int> numer;
  Int denominator{1};

  [[nodiscard]] Rational at(Element s) const { return Rational(numer.at(s), denominator); }
};

/// Via the Walsh–Hadamard transform of the dense weights: Rej(s) = (Q - W[s]) / 2Q.
[[nodiscard]] inline RejectionProfile rejection_profile(const Tester& t) {
  auto w = t.dense_weights();
  walsh_hadamard(w);
  RejectionProfile p;
  p.h = static_cast<unsigned>(t.code().h());
  p.denominator = t.denominator();
  p.numer.resize(w.size());
  for (std::size_t s = 0; s < w.size(); ++s) {
    const Int twice = t.denominator() - w[s];
    ensure(boost::multiprecision::bit_test(twice, 0) == false, "rejection numerator is an integer");
    p.numer[s] = twice / 2;
  }
  return p;
}

/// max_i Pr[alpha_i = 1].
[[nodiscard]] inline Rational smoothness(const Tester& t) {
  const std::size_t n = t.code().n();
  std::vector<Int> per_coord(n, Int(0));
  for (const auto& e : t.support()) {
    if (e.weight == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.word.get(i)) per_coord[i] += e.weight;
    }
  }
  Int best = 0;
  for (const auto& x : per_coord) best = std::max(best, x);
  return Rational(best, t.denominator());
}

struct TesterReport {
  Rational epsilon;
  Rational delta;
  ExtRational ratio;             // epsilon / delta, +inf when delta = 0
  std::optional<std::size_t> cap;  // set for capped soundness
  std::optional<Element> binding;  // coset attaining delta
};

/// Strong soundness min_{s != 0} Rej(s) / min(d(s), cap). Asserts delta <= epsilon and delta <= 1/min(t, cap).
[[nodiscard]] inline TesterReport soundness(const Tester& t, const CosetTable& tbl,
                                            std::optional<std::size_t> cap = std::nullopt) {
  require(t.code() == tbl.code(), ErrorKind::InvalidArgument, "tester and coset table describe different codes");
  require(!cap || *cap >= 1, ErrorKind::InvalidArgument, "cap must be at least 1");
  TesterReport r;
  r.cap = cap;
  r.epsilon = smoothness(t);
  if (tbl.size() == 1) {
    r.delta = 0;
    r.ratio = ExtRational::infinity();
    return r;
  }
  const auto profile = rejection_profile(t);
  bool first = true;
  for (Element s = 1; s < tbl.size(); ++s) {
    std::size_t d = tbl.leader_weight(s);
    if (cap) d = std::min(d, *cap);
    Rational v(profile.numer[s], profile.denominator * d);
    if (first || v < r.delta) {
      r.delta = v;
      r.binding = s;
      first = false;
    }
  }
  r.ratio = r.delta == 0 ? ExtRational::infinity() : ExtRational::finite(r.epsilon / r.delta);
  ensure(r.delta <= r.epsilon, "soundness never exceeds smoothness");
  const std::size_t radius = cap ? std::min(*cap, tbl.covering_radius()) : tbl.covering_radius();
  ensure(r.delta * radius <= 1, "soundness is at most one over the covering radius");
  return r;
}

[[nodiscard]] inline TesterReport report(const Tester& t, const CosetTable& tbl) { return soundness(t, tbl); }

// ---------------------------------------------------------------------------
// Boosting

/// Explicit l-fold XOR convolution is limited to n - k <= 14 (quadratic in 2^h per product).
inline constexpr unsigned kMaxExplicitBoostDim = 14;

namespace detail {

inline std::vector<Int> xor_convolve(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<std::size_t> sa;
  std::vector<std::size_t> sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) sa.push_back(i);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) sb.push_back(i);
  }
  std::vector<Int> out(a.size(), Int(0));
  for (auto i : sa) {
    for (auto j : sb) out[i ^ j] += a[i] * b[j];
  }
  return out;
}

inline Tester tester_from_dense(const LinearCode& code, const std::vector<Int>& w) {
  std::vector<TesterEntry> entries;
  for (Element a = 0; a < w.size(); ++a) {
    if (w[a] != 0) entries.push_back({code.dual_word(a), w[a]});
  }
  return Tester::from_weights(code, std::move(entries)).reduced();
}

}  // namespace detail

/// D^{(+)l}: sum of l independent samples. Support lists nonzero mass in dual-coordinate order.
[[nodiscard]] inline Tester boost(const Tester& t, std::size_t ell) {
  require(ell >= 1, ErrorKind::InvalidArgument, "boost needs ell >= 1");
  if (ell == 1) return t;
  require(t.code().h() <= kMaxExplicitBoostDim, ErrorKind::SupportBlowup,
          "explicit convolution needs n - k <= 14; use boosted_profile()");
  const auto base = t.dense_weights();
  std::vector<Int> result;
  std::vector<Int> power = base;
  bool have = false;
  for (std::size_t e = ell; e > 0; e >>= 1) {
    if (e & 1U) {
      result = have ? detail::xor_convolve(result, power) : power;
      have = true;
    }
    if (e > 1) power = detail::xor_convolve(power, power);
  }
  return detail::tester_from_dense(t.code(), result);
}

/// Closed form 1 - 2 Rej' = (1 - 2 Rej)^l applied to every coset.
[[nodiscard]] inline RejectionProfile boosted_profile(const RejectionProfile& p, std::size_t ell) {
  require(ell >= 1, ErrorKind::InvalidArgument, "boost needs ell >= 1");
  RejectionProfile out;
  out.h = p.h;
  out.denominator = boost::multiprecision::pow(p.denominator, static_cast<unsigned>(ell));
  out.numer.resize(p.numer.size());
  for (std::size_t s = 0; s < p.numer.size(); ++s) {
    const Int lambda = p.denominator - 2 * p.numer[s];
    out.numer[s] = (out.denominator - boost::multiprecision::pow(lambda, static_cast<unsigned>(ell))) / 2;
  }
  return out;
}

struct CovRadiusBoost {
  Tester tester;
  std::size_t ell = 1;  // 1 when the input already met the target
  TesterReport before;
  TesterReport after;
  Rational target_epsilon;  // 1/(4t)
  Rational target_delta;    // 1/(16 c t)
};

/// Rescales a tester with delta >= epsilon/c to smoothness <= 1/(4t) and soundness >= 1/(16ct).
[[nodiscard]] inline CovRadiusBoost covradius_boost(const Tester& t, const CosetTable& tbl, const Rational& c) {
  require(c >= 1, ErrorKind::InvalidArgument, "distortion bound must be at least 1");
  const std::size_t radius = tbl.covering_radius();
  require(radius >= 1, ErrorKind::PremiseViolated, "covering radius 0: the code is the full space");
  CovRadiusBoost out;
  out.before = soundness(t, tbl);
  out.target_epsilon = Rational(1, 4 * radius);
  out.target_delta = Rational(1) / (16 * c * radius);
  require(out.before.delta > 0 && out.before.delta >= out.before.epsilon / c, ErrorKind::PremiseViolated,
          "tester has delta = " + to_string(out.before.delta) + " < epsilon/c");
  if (out.before.delta > out.target_delta) {
    out.tester = t;
    out.after = out.before;
    return out;
  }
  const Rational inv = Rational(1) / (4 * radius * out.before.epsilon);
  out.ell = static_cast<std::size_t>(boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv));
  ensure(out.ell >= 1, "boost exponent is positive below the target");
  out.tester = boost(t, out.ell);
  out.after = soundness(out.tester, tbl);
  ensure(out.after.epsilon <= out.target_epsilon, "boosted smoothness is at most 1/(4t)");
  ensure(out.after.delta >= out.target_delta, "boosted soundness is at least 1/(16ct)");
  return out;
}

// ---------------------------------------------------------------------------
// LP-optimal tester

inline constexpr unsigned kMaxLpDim = 12;
/// The LP runs over weight classes (dual-word orbits under detected code automorphisms). Auto mode
/// uses exact rationals up to this many classes and double precision above, certifying afterwards.
inline constexpr std::size_t kMaxExactLpVariables = 256;
inline constexpr std::size_t kMaxForcedExactLpVariables = 1024;

enum class LpMode { Auto, Exact, Float };

/// Primal weights w (indexed by dual coordinates, w[0] = 0) and dual multipliers x (per
/// coordinate) and y (per coset, y[0] = 0) for the distortion LP, all claimed to share `value`.
struct LpCertificate {
  Rational value;
  std::vector<Rational> w;
  std::vector<Rational> x;
  std::vector<Rational> y;
};

struct CertificateCheck {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool values_match = false;
  [[nodiscard]] bool ok() const { return primal_feasible && dual_feasible && values_match; }
};

namespace detail {

// Pr-style sums f(s) = sum_a v[a] [<a,s> = 1] for all s, exactly, via one transform.
inline std::vector<Rational> odd_sums(const std::vector<Rational>& v) {
  Int denom;
  auto nums = common_numerators(v, denom);
  Int total = 0;
  for (const auto& x : nums) total += x;
  walsh_hadamard(nums);
  std::vector<Rational> out(nums.size());
  for (std::size_t s = 0; s < nums.size(); ++s) out[s] = Rational(total - nums[s], 2 * denom);
  return out;
}

}  // namespace detail

/// Exact check of a claimed optimum: primal feasibility, dual feasibility, and equal objectives.
[[nodiscard]] inline CertificateCheck verify_certificate(const CosetTable& tbl, const LpCertificate& cert) {
  const LinearCode& code = tbl.code();
  const std::size_t size = tbl.size();
  const std::size_t n = code.n();
  CertificateCheck chk;
  if (cert.w.size() != size || cert.y.size() != size || cert.x.size() != n) return chk;
  const auto cols = code.unit_syndromes();

  // primal: Rej_w(s) >= d(s) for s != 0 and Rej_w(col_i) <= value
  bool primal = cert.w[0] == 0 &&
                std::all_of(cert.w.begin(), cert.w.end(), [](const Rational& r) { return r >= 0; });
  if (primal) {
    const auto rej_w = detail::odd_sums(cert.w);
    for (std::size_t s = 1; s < size && primal; ++s) primal = rej_w[s] >= Rational(tbl.leader_weight(s));
    for (std::size_t i = 0; i < n && primal; ++i) primal = rej_w[cols[i]] <= cert.value;
  }
  chk.primal_feasible = primal;

  // dual: sum x <= 1 and for a != 0, sum_s y_s [<a,s>=1] <= sum_i x_i [<a,col_i>=1]
  bool dual = cert.y[0] == 0 && std::all_of(cert.y.begin(), cert.y.end(), [](const Rational& r) { return r >= 0; }) &&
              std::all_of(cert.x.begin(), cert.x.end(), [](const Rational& r) { return r >= 0; });
  Rational xsum = 0;
  for (const auto& v : cert.x) xsum += v;
  dual = dual && xsum <= 1;
  if (dual) {
    std::vector<Rational> xcol(size, Rational(0));
    for (std::size_t i = 0; i < n; ++i) xcol[cols[i]] += cert.x[i];
    const auto lhs = detail::odd_sums(cert.y);
    const auto rhs = detail::odd_sums(xcol);
    for (std::size_t a = 1; a < size && dual; ++a) dual = lhs[a] <= rhs[a];
  }
  chk.dual_feasible = dual;

  Rational dual_value = 0;
  for (std::size_t s = 1; s < size; ++s) dual_value += cert.y[s] * tbl.leader_weight(s);
  chk.values_match = dual_value == cert.value;
  return chk;
}

struct OptimalTester {
  Tester tester;
  Rational ratio;         // minimum epsilon/delta (exact when certified)
  double ratio_float = 0;
  bool certified = false;  // certificate verified in exact arithmetic
  bool exact_solver = false;
  LpCertificate certificate;
  std::size_t weight_classes = 0;  // LP variables after symmetry reduction
  std::size_t pivots = 0;
};

namespace detail {

// s -> sum_a v[a] [<a,s> = 1] in the solver's number type
template <typename T>
std::vector<T> odd_sums_as(const std::vector<T>& v) {
  if constexpr (std::is_floating_point_v<T>) {
    std::vector<T> w = v;
    T total = 0;
    for (const auto& x : v) total += x;
    walsh_hadamard(w);
    for (auto& x : w) x = (total - x) / 2;
    return w;
  } else {
    return odd_sums(v);
  }
}

// Cutting planes on the distortion LP over tester weights w_a (a != 0) and the bound z:
//   minimize z  s.t.  sum_a w_a [<a,col_i>=1] <= z  for each coordinate i,
//                     sum_a w_a [<a,s>=1] >= d(s)   for each coset s != 0.
// The program is invariant under code automorphisms, so w is taken constant on dual orbits and
// one row is kept per coordinate orbit and coset orbit. Coset rows start absent; each round
// prices all of them through one transform and adds the most violated.
template <typename T>
struct DistortionLpResult {
  T value{};
  std::vector<T> w;  // by dual coordinates
  std::vector<T> x;  // by coordinate
  std::vector<T> y;  // by coset
  std::size_t pivots = 0;
};

struct LpSymmetry {
  Orbits duals;
  Orbits cosets;
  Orbits coordinates;
};

inline LpSymmetry lp_symmetry(const LinearCode& code) {
  const auto gens = find_automorphisms(code);
  return {dual_orbits(code, gens), coset_orbits(code, gens), coordinate_orbits(code.n(), gens)};
}

template <typename T>
DistortionLpResult<T> solve_distortion_lp(const CosetTable& tbl, const LpSymmetry& sym) {
  using Tol = lp::Tolerance<T>;
  const std::size_t size = tbl.size();
  const std::size_t n = tbl.code().n();
  const auto cols = tbl.code().unit_syndromes();
  const std::size_t nvar = sym.duals.count();  // orbit 0 is {0}; its slot holds z
  const std::size_t z = 0;

  // row over orbit variables: sum_a w_a [<a,s>=1] grouped by orbit
  auto incidence = [&](Element s, const T& sign) {
    std::vector<std::int64_t> bins(nvar, 0);
    for (Element a = 1; a < size; ++a) {
      if (dot(a, s)) ++bins[sym.duals.orbit_of[a]];
    }
    lp::Sparse<T> row;
    for (std::size_t o = 1; o < nvar; ++o) {
      if (bins[o] != 0) row.emplace_back(o, sign * T(bins[o]));
    }
    return row;
  };

  std::vector<T> cost(nvar, T(0));
  cost[z] = T(-1);
  lp::Tableau<T> tab(cost);
  std::vector<std::size_t> coord_rep;
  for (std::size_t q = 0; q < sym.coordinates.count(); ++q) {
    const auto i = static_cast<std::size_t>(sym.coordinates.representative[q]);
    auto row = incidence(cols[i], T(1));
    row.emplace_back(z, T(-1));
    tab.add_row(row, T(0));
    coord_rep.push_back(i);
  }
  std::vector<std::uint32_t> coset_row_orbit;
  std::vector<bool> present(sym.cosets.count(), false);
  present[sym.cosets.orbit_of[0]] = true;
  const std::size_t batch = std::max<std::size_t>(8, sym.cosets.count() / 64);
  while (true) {
    const auto u = tab.primal();
    std::vector<T> w(size, T(0));
    for (Element a = 1; a < size; ++a) w[a] = u[sym.duals.orbit_of[a]];
    const auto rej = odd_sums_as(w);
    std::vector<std::pair<T, std::uint32_t>> violated;
    for (std::uint32_t p = 0; p < sym.cosets.count(); ++p) {
      if (present[p]) continue;
      const Element s = sym.cosets.representative[p];
      T slack = rej[s] - T(static_cast<int>(tbl.leader_weight(s)));
      if (Tol::negative(slack)) violated.emplace_back(std::move(slack), p);
    }
    if (violated.empty()) break;
    const std::size_t take = std::min(batch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take), violated.end());
    for (std::size_t j = 0; j < take; ++j) {
      const auto p = violated[j].second;
      const Element s = sym.cosets.representative[p];
      tab.add_row(incidence(s, T(-1)), T(-static_cast<int>(tbl.leader_weight(s))));
      coset_row_orbit.push_back(p);
      present[p] = true;
    }
    tab.solve();
  }

  DistortionLpResult<T> out;
  out.value = -tab.objective();
  out.pivots = tab.pivots();
  const auto u = tab.primal();
  const auto duals = tab.duals();
  out.w.assign(size, T(0));
  for (Element a = 1; a < size; ++a) out.w[a] = u[sym.duals.orbit_of[a]];
  // spread orbit multipliers evenly over their members
  out.x.assign(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto q = sym.coordinates.orbit_of[i];
    out.x[i] = duals[q] / T(static_cast<std::int64_t>(sym.coordinates.size[q]));
  }
  out.y.assign(size, T(0));
  std::vector<T> per_orbit(sym.cosets.count(), T(0));
  for (std::size_t j = 0; j < coset_row_orbit.size(); ++j) per_orbit[coset_row_orbit[j]] = duals[coord_rep.size() + j];
  for (Element s = 1; s < size; ++s) {
    const auto p = sym.cosets.orbit_of[s];
    if (per_orbit[p] != T(0)) out.y[s] = per_orbit[p] / T(static_cast<std::int64_t>(sym.cosets.size[p]));
  }
  return out;
}

inline Tester tester_from_rational_weights(const LinearCode& code, const std::vector<Rational>& w) {
  std::vector<Rational> nz;
  std::vector<Element> idx;
  for (Element a = 1; a < w.size(); ++a) {
    if (w[a] > 0) {
      nz.push_back(w[a]);
      idx.push_back(a);
    }
  }
  Int denom;
  auto nums = common_numerators(nz, denom);
  std::vector<TesterEntry> entries;
  for (std::size_t i = 0; i < idx.size(); ++i) entries.push_back({code.dual_word(idx[i]), nums[i]});
  return Tester::from_weights(code, std::move(entries)).reduced();
}

}  // namespace detail

/// Minimum epsilon/delta over all testers, i.e. the l1 distortion of the coset graph.
[[nodiscard]] inline OptimalTester optimal_tester(const CosetTable& tbl, LpMode mode = LpMode::Auto) {
  const LinearCode& code = tbl.code();
  const unsigned h = tbl.h();
  require(h >= 1, ErrorKind::NoValidTester, "the full-space code has no nonzero cosets to test");
  require(h <= kMaxLpDim, ErrorKind::TooLarge, "optimal_tester needs n - k <= " + std::to_string(kMaxLpDim));
  const auto sym = detail::lp_symmetry(code);
  const std::size_t vars = sym.duals.count();
  require(!(mode == LpMode::Exact && vars > kMaxForcedExactLpVariables), ErrorKind::TooLarge,
          "exact LP limited to " + std::to_string(kMaxForcedExactLpVariables) + " weight classes, got " +
              std::to_string(vars));
  bool exact = mode == LpMode::Exact || (mode == LpMode::Auto && vars <= kMaxExactLpVariables);

  OptimalTester out;
  out.exact_solver = exact;
  out.weight_classes = vars - 1;
  LpCertificate& cert = out.certificate;
  if (exact) {
    auto sol = detail::solve_distortion_lp<Rational>(tbl, sym);
    out.pivots = sol.pivots;
    cert = {sol.value, std::move(sol.w), std::move(sol.x), std::move(sol.y)};
    out.ratio_float = to_double(cert.value);
  } else {
    const auto sol = detail::solve_distortion_lp<double>(tbl, sym);
    out.pivots = sol.pivots;
    out.ratio_float = sol.value;
    auto snap = [](const std::vector<double>& v) {
      std::vector<Rational> r;
      r.reserve(v.size());
      for (double x : v) r.push_back(lp::rationalize(std::max(0.0, x)));
      return r;
    };
    cert = {lp::rationalize(sol.value), snap(sol.w), snap(sol.x), snap(sol.y)};
  }
  out.certified = verify_certificate(tbl, cert).ok();
  if (!out.certified && mode == LpMode::Auto && vars <= kMaxForcedExactLpVariables) {
    // the optimum has denominators beyond what double precision can recover
    auto sol = detail::solve_distortion_lp<Rational>(tbl, sym);
    out.pivots += sol.pivots;
    cert = {sol.value, std::move(sol.w), std::move(sol.x), std::move(sol.y)};
    out.exact_solver = exact = true;
    out.certified = verify_certificate(tbl, cert).ok();
  }
  if (exact) ensure(out.certified, "exact simplex optimum carries a valid certificate");
  out.ratio = cert.value;
  out.tester = detail::tester_from_rational_weights(code, cert.w);
  if (out.certified) {
    const auto rep = soundness(out.tester, tbl);
    ensure(!rep.ratio.infinite && rep.ratio.value == out.ratio, "optimal tester attains the LP value");
  }
  return out;
}

}  // namespace ltcg
