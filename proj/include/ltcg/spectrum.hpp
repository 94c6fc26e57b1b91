#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
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

/// Ordered list of n linear functionals on F2^h, each stored as its coefficient vector.
struct SpectrumGenerator {
  unsigned h = 0;
  std::vector<Element> functionals;

  static SpectrumGenerator make(unsigned h, std::vector<Element> b) {
    require(h >= 1 && h <= kMaxGroupDim, ErrorKind::InvalidArgument, "spectrum generators need 1 <= h <= 24");
    require(!b.empty(), ErrorKind::InvalidArgument, "spectrum generator is empty");
    for (auto x : b) require(x >> h == 0, ErrorKind::InvalidArgument, "functional outside F2^" + std::to_string(h));
    return {h, std::move(b)};
  }

  [[nodiscard]] std::size_t n() const noexcept { return functionals.size(); }
  [[nodiscard]] bool spanning() const { return span_dimension(functionals) == h; }
  [[nodiscard]] std::size_t width() const { return independence_width(functionals, h); }

  friend bool operator==(const SpectrumGenerator&, const SpectrumGenerator&) = default;
};

/// Large-eigenvalue and spectral-decay conditions, with the tightest parameters the graph admits.
struct SGReport {
  Rational mu;
  Rational nu;
  std::size_t d = 0;
  std::size_t width = 0;  // actual independence width of B
  bool spanning = false;
  bool independence_ok = false;
  bool large_ok = false;
  bool decay_ok = false;
  std::vector<std::size_t> large_witnesses;  // indices i with lambda(b_i) < 1 - mu
  std::vector<Element> decay_witnesses;      // functionals a with lambda(a) > 1 - nu rk(a), first 64
  std::size_t decay_failures = 0;
  Rational mu_min;  // max_i 1 - lambda(b_i)
  ExtRational nu_max;  // min_{a != 0} (1 - lambda(a)) / rk(a)
  bool exact = true;

  [[nodiscard]] bool pass() const { return spanning && independence_ok && large_ok && decay_ok; }
};

namespace detail {

// Eigenvalues as exact rationals; for h > 20 the doubles are rationalized (comparisons then carry
// the precision of the double transform).
inline std::vector<Rational> eigenvalues(const CayleyGraph& g, bool& exact) {
  const auto spec = spectrum(g);
  std::vector<Rational> out(spec.values.size());
  exact = spec.exact();
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = exact ? spec.lambda(b) : lp::rationalize(spec.value(b), std::int64_t{1} << 40);
  }
  return out;
}

}  // namespace detail

/// Checks the spectrum-generator definition literally, for mu, nu in [0, 2].
[[nodiscard]] inline SGReport verify_sg(const CayleyGraph& g, const SpectrumGenerator& b, const Rational& mu,
                                        const Rational& nu, std::size_t d) {
  require(g.h() == b.h, ErrorKind::InvalidArgument, "graph and generator dimensions differ");
  require(mu >= 0 && mu <= 2 && nu >= 0 && nu <= 2, ErrorKind::InvalidArgument, "mu and nu must lie in [0, 2]");
  SGReport r;
  r.mu = mu;
  r.nu = nu;
  r.d = d;
  r.width = b.width();
  r.independence_ok = r.width >= d;
  r.spanning = b.spanning();
  const auto lambda = detail::eigenvalues(g, r.exact);

  r.large_ok = true;
  r.mu_min = 0;
  for (std::size_t i = 0; i < b.n(); ++i) {
    const Rational& l = lambda[b.functionals[i]];
    r.mu_min = std::max(r.mu_min, Rational(1 - l));
    if (l < 1 - mu) {
      r.large_ok = false;
      r.large_witnesses.push_back(i);
    }
  }

  r.decay_ok = r.spanning;
  r.nu_max = ExtRational::infinity();
  if (r.spanning) {
    const auto rk = bfs_distances(b.functionals, b.h);
    for (Element a = 1; a < lambda.size(); ++a) {
      const Rational gap = 1 - lambda[a];
      const ExtRational ratio = ExtRational::finite(gap / rk[a]);
      if (ratio < r.nu_max) r.nu_max = ratio;
      if (lambda[a] > 1 - nu * rk[a]) {
        r.decay_ok = false;
        ++r.decay_failures;
        if (r.decay_witnesses.size() < 64) r.decay_witnesses.push_back(a);
      }
    }
  }
  if (r.pass() && std::any_of(b.functionals.begin(), b.functionals.end(), [](Element x) { return x != 0; })) {
    ensure(mu >= nu, "a passing spectrum generator has mu >= nu");
  }
  return r;
}

struct SgFromLtc {
  CayleyGraph graph;
  SpectrumGenerator generator;
  TesterReport tester_report;
  std::size_t distance = 0;
  SGReport report;  // at (2 epsilon, 2 delta, d)
};

/// Cay(C-perp, D) with the coset functionals e_i-bar (parity-check columns in dual coordinates).
[[nodiscard]] inline SgFromLtc sg_from_ltc(const Tester& t) {
  const LinearCode& c = t.code();
  require(c.h() >= 1, ErrorKind::DegenerateGraph, "the dual code is {0}");
  SgFromLtc out;
  out.distance = min_distance(c);
  require(out.distance >= 3, ErrorKind::DistanceTooSmall,
          "code distance " + std::to_string(out.distance) + " < 3");
  out.graph = tester_graph(t);
  out.generator = SpectrumGenerator::make(static_cast<unsigned>(c.h()), c.unit_syndromes());
  out.tester_report = soundness(t, coset_table(c));
  const Rational mu = std::min(Rational(2), Rational(2 * out.tester_report.epsilon));
  out.report = verify_sg(out.graph, out.generator, mu, 2 * out.tester_report.delta, out.distance);
  return out;
}

struct LtcFromSg {
  Tester tester;  // its code() is the [n, n-h] code
  std::size_t distance = 0;
};

/// f(alpha) = (b_1(alpha), ..., b_n(alpha)) maps F2^h onto C-perp; the tester is the pushforward
/// of the edge distribution, in the graph's entry order.
[[nodiscard]] inline LtcFromSg ltc_from_sg(const CayleyGraph& g, const SpectrumGenerator& b) {
  require(g.h() == b.h, ErrorKind::InvalidArgument, "graph and generator dimensions differ");
  require(b.spanning(), ErrorKind::NotSpanning, "functionals do not span the dual of F2^" + std::to_string(b.h));
  LinearCode code = LinearCode::from_parity_check(BitMatrix::from_columns(b.functionals, b.h));
  ensure(code.h() == b.h, "spanning functionals give a full-rank parity check");
  std::vector<TesterEntry> entries;
  entries.reserve(g.entries().size());
  for (const auto& e : g.entries()) entries.push_back({code.dual_word(e.element), e.weight});
  LtcFromSg out;
  out.tester = Tester::from_weights(std::move(code), std::move(entries));
  out.distance = min_distance(out.tester.code());
  return out;
}

// ---------------------------------------------------------------------------
// Small-set expansion

namespace detail {

inline std::vector<bool> membership(unsigned h, const std::vector<Element>& set) {
  require(!set.empty(), ErrorKind::EmptySet, "vertex set is empty");
  std::vector<bool> in(std::size_t{1} << h, false);
  for (auto x : set) {
    require(x >> h == 0, ErrorKind::InvalidArgument, "vertex outside F2^" + std::to_string(h));
    require(!in[x], ErrorKind::InvalidArgument, "vertex set has a repeated element");
    in[x] = true;
  }
  return in;
}

}  // namespace detail

/// Phi(S) = Pr_{x in S, s ~ D}[x + s not in S], exact, by counting neighbours.
[[nodiscard]] inline Rational expansion(const CayleyGraph& g, const std::vector<Element>& set) {
  const auto in = detail::membership(g.h(), set);
  Int stay = 0;
  for (const auto& e : g.entries()) {
    if (e.weight == 0) continue;
    std::size_t count = 0;
    for (auto x : set) count += in[x ^ e.element] ? 1 : 0;
    stay += e.weight * count;
  }
  return 1 - Rational(stay, g.denominator() * set.size());
}

/// 1 - <1_S, G 1_S> / tau through the spectrum (double precision).
[[nodiscard]] inline double expansion_spectral(const CayleyGraph& g, const std::vector<Element>& set) {
  const auto in = detail::membership(g.h(), set);
  std::vector<double> f(in.size(), 0.0);
  for (auto x : set) f[x] = 1.0;
  walsh_hadamard(f);
  const auto spec = spectrum(g);
  double acc = 0;
  for (std::size_t b = 0; b < f.size(); ++b) acc += spec.value(b) * f[b] * f[b];
  // Parseval for the unnormalized transform: sum_x u v = 2^-h sum_b U V
  return 1.0 - acc / static_cast<double>(f.size()) / static_cast<double>(set.size());
}

/// Test sets: singletons, Hamming balls, and random sets of sizes 1, 2, 4, 8, cycled to `count`.
[[nodiscard]] inline std::vector<std::vector<Element>> sample_sets(unsigned h, std::size_t count, std::uint64_t seed) {
  require(h >= 1 && h <= kMaxGroupDim, ErrorKind::InvalidArgument, "sample_sets needs 1 <= h <= 24");
  std::mt19937_64 rng(seed);
  const std::size_t order = std::size_t{1} << h;
  auto element = [&] { return static_cast<Element>(rng() & (order - 1)); };
  std::vector<std::vector<Element>> sets;
  sets.reserve(count);
  for (std::size_t i = 0; sets.size() < count; ++i) {
    switch (i % 3) {
      case 0:
        sets.push_back({element()});
        break;
      case 1: {
        // ball of radius 1 or 2 around a random centre
        const Element c = element();
        const unsigned radius = 1 + static_cast<unsigned>((i / 3) % 2);
        std::vector<Element> ball;
        for (Element x = 0; x < order; ++x) {
          if (static_cast<unsigned>(weight(x ^ c)) <= radius) ball.push_back(x);
        }
        sets.push_back(std::move(ball));
        break;
      }
      default: {
        const std::size_t size = std::min<std::size_t>(order, std::size_t{1} << ((i / 3) % 4));
        std::vector<Element> pick;
        std::vector<bool> used(order, false);
        while (pick.size() < size) {
          const Element x = element();
          if (!used[x]) {
            used[x] = true;
            pick.push_back(x);
          }
        }
        sets.push_back(std::move(pick));
      }
    }
  }
  return sets;
}

struct SseCheck {
  std::size_t sets = 0;
  std::size_t vacuous = 0;     // bound <= 0
  std::size_t nonvacuous = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> witness;  // index of the first violating set
  double min_slack = std::numeric_limits<double>::infinity();  // over non-vacuous sets
  [[nodiscard]] bool pass() const { return violations == 0; }
};

/// phi_tau = nu d / 4 - 3^{d/2} tau^{1/4}.
[[nodiscard]] inline double sse_bound(double nu, std::size_t d, double tau) {
  return nu * static_cast<double>(d) / 4.0 - std::pow(3.0, static_cast<double>(d) / 2.0) * std::pow(tau, 0.25);
}

/// Requires (g, b) to pass verify_sg at (mu, nu, d); then checks Phi(S) >= phi_tau on every set.
[[nodiscard]] inline SseCheck sse_bound_check(const CayleyGraph& g, const SpectrumGenerator& b, const Rational& mu,
                                              const Rational& nu, std::size_t d,
                                              const std::vector<std::vector<Element>>& sets) {
  require(verify_sg(g, b, mu, nu, d).pass(), ErrorKind::PreconditionFailed,
          "graph is not a spectrum generator at the given parameters");
  SseCheck out;
  const double order = static_cast<double>(g.order());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    ++out.sets;
    const double tau = static_cast<double>(sets[i].size()) / order;
    const double bound = sse_bound(to_double(nu), d, tau);
    if (bound <= 0) {
      ++out.vacuous;
      continue;
    }
    ++out.nonvacuous;
    const double slack = to_double(expansion(g, sets[i])) - bound;
    out.min_slack = std::min(out.min_slack, slack);
    if (slack < -1e-12) {
      if (!out.violations) out.witness = i;
      ++out.violations;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hypercontractivity

/// Seeded standard normals by Box–Muller over mt19937_64, so trials replay identically everywhere.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = 0;
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2 * std::numbers::pi * u2);
    return r * std::cos(2 * std::numbers::pi * u2);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  std::optional<double> spare_;
};

struct Moments {
  double second = 0;  // E f^2
  double fourth = 0;  // E f^4
};

/// f = sum_b coeff[b] chi_b evaluated on all of F2^h; returns E f^2 and E f^4.
[[nodiscard]] inline Moments moments(std::vector<double> coeff) {
  walsh_hadamard(coeff);  // now f(x) for every x
  Moments m;
  for (double v : coeff) {
    const double sq = v * v;
    m.second += sq;
    m.fourth += sq * sq;
  }
  m.second /= static_cast<double>(coeff.size());
  m.fourth /= static_cast<double>(coeff.size());
  return m;
}

struct HyperconCheck {
  std::size_t trials = 0;
  std::size_t monomials = 0;
  std::size_t violations = 0;
  std::size_t parseval_failures = 0;
  std::optional<std::size_t> witness;  // first violating trial
  double max_ratio = 0;                // max E f^4 / (E f^2)^2
  double max_parseval_error = 0;       // relative
  double bound = 0;                    // 9^d
  [[nodiscard]] bool pass() const { return violations == 0 && parseval_failures == 0; }
};

/// Random degree-<=d polynomials in the characters of B with standard normal coefficients.
/// Needs B to be (4d+1)-wise independent (a fully independent B qualifies at any d).
[[nodiscard]] inline HyperconCheck hypercontractivity_check(const SpectrumGenerator& b, std::size_t d,
                                                            std::size_t trials, std::uint64_t seed) {
  const std::size_t width = b.width();
  require(width >= 4 * d + 1 || width == b.n() + 1, ErrorKind::PreconditionFailed,
          "B is only " + std::to_string(width) + "-wise independent; need " + std::to_string(4 * d + 1));
  require(b.h <= kMaxExactDim, ErrorKind::TooLarge, "hypercontractivity check needs h <= 20");

  // functional of every monomial prod_{i in S} chi_{b_i}, |S| <= d
  std::vector<Element> mono{0};
  {
    std::vector<std::pair<Element, std::size_t>> frontier{{0, 0}};  // (sum, next index)
    for (std::size_t deg = 1; deg <= d; ++deg) {
      std::vector<std::pair<Element, std::size_t>> next;
      for (const auto& [sum, start] : frontier) {
        for (std::size_t i = start; i < b.n(); ++i) {
          next.emplace_back(sum ^ b.functionals[i], i + 1);
          mono.push_back(sum ^ b.functionals[i]);
        }
      }
      frontier = std::move(next);
    }
  }
  HyperconCheck out;
  out.monomials = mono.size();
  out.bound = std::pow(9.0, static_cast<double>(d));
  NormalStream normals(seed);
  std::vector<double> coeff(std::size_t{1} << b.h);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::fill(coeff.begin(), coeff.end(), 0.0);
    double energy = 0;
    for (auto m : mono) {
      const double c = normals.next();
      coeff[m] += c;
      energy += c * c;
    }
    const auto mom = moments(coeff);
    ++out.trials;
    const double perr = std::abs(mom.second - energy) / std::max(1.0, energy);
    out.max_parseval_error = std::max(out.max_parseval_error, perr);
    if (perr > 1e-10) ++out.parseval_failures;
    if (mom.second > 0) out.max_ratio = std::max(out.max_ratio, mom.fourth / (mom.second * mom.second));
    if (mom.fourth > out.bound * mom.second * mom.second + 1e-9) {
      if (!out.violations) out.witness = trial;
      ++out.violations;
    }
  }
  return out;
}

}  // namespace ltcg
