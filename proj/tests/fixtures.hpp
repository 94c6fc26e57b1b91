#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ltcg/ltcg.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace ltcg;

inline std::vector<BitVec> codewords(const LinearCode& c) {
  auto s = oracle::span(c.gen().rows(), c.n());
  return {s.begin(), s.end()};
}

inline oracle::Dist as_dist(const Tester& t) {
  oracle::Dist d;
  for (std::size_t i = 0; i < t.support().size(); ++i) d.emplace_back(t.support()[i].word, t.probability(i));
  return d;
}

inline std::vector<std::pair<Element, Rational>> as_masses(const CayleyGraph& g) {
  std::vector<std::pair<Element, Rational>> m;
  for (std::size_t i = 0; i < g.entries().size(); ++i) m.emplace_back(g.entries()[i].element, g.probability(i));
  return m;
}

/// The seven nonzero words of the [7,3] simplex code, uniform.
inline Tester hamming_simplex() {
  const auto c = hamming_code(3);
  return Tester::uniform(c, nonzero_dual_words(c));
}

/// Mass 7/64 spread over the simplex words, 57/64 on zero.
inline Tester diluted_hamming() { return hamming_simplex().diluted(Rational(7, 64)); }

/// C = {0000, 1111} with the six weight-2 dual words.
inline Tester rep4_weight_two() {
  const auto c = repetition_code(4);
  return Tester::uniform(c, min_weight_dual_words(c));
}

/// Random support of 1..max_support dual words (zero allowed) with weights 1..9.
inline Tester random_tester(const LinearCode& c, std::mt19937_64& rng, std::size_t max_support = 8) {
  const Element order = Element{1} << c.h();
  const std::size_t size = 1 + rng() % max_support;
  std::vector<TesterEntry> entries;
  for (std::size_t i = 0; i < size; ++i) entries.push_back({c.dual_word(rng() % order), Int(1 + rng() % 9)});
  return Tester::from_weights(c, std::move(entries));
}

/// Random coset-invariant embedding on the quotient: 1..4 random tables with weights 1..9.
inline CutEmbedding random_embedding(unsigned h, std::mt19937_64& rng) {
  const std::size_t order = std::size_t{1} << h;
  std::vector<CutFunction> fns;
  const std::size_t count = 1 + rng() % 4;
  for (std::size_t i = 0; i < count; ++i) {
    CutFunction f;
    f.minus.resize(order);
    for (auto& m : f.minus) m = static_cast<std::uint8_t>(rng() & 1U);
    f.weight = Int(1 + rng() % 9);
    fns.push_back(std::move(f));
  }
  return CutEmbedding::from_weights(h, std::move(fns));
}

/// The h unit characters (so every pair is separated) plus h + 2 characters with entries flipped
/// at rate 1/16: finite distortion, not linear.
inline CutEmbedding noisy_character_embedding(unsigned h, std::mt19937_64& rng) {
  const std::size_t order = std::size_t{1} << h;
  std::vector<CutFunction> fns;
  for (unsigned i = 0; i < 2 * h + 2; ++i) {
    const Element a = i < h ? Element{1} << i : rng() & (order - 1);
    const bool noisy = i >= h;
    CutFunction f;
    f.minus.resize(order);
    for (Element x = 0; x < order; ++x) {
      f.minus[x] = static_cast<std::uint8_t>(dot(a, x) ^ (noisy && rng() % 16 == 0 ? 1 : 0));
    }
    f.weight = Int(1 + rng() % 9);
    fns.push_back(std::move(f));
  }
  return CutEmbedding::from_weights(h, std::move(fns));
}

/// Checks the dual part of an LP certificate from definitions (syndromes as dot products with
/// the parity-check rows, leader weights by brute force) and returns its value sum_s y_s d(s),
/// a lower bound on epsilon/delta for every tester; nullopt if the multipliers are infeasible.
inline std::optional<Rational> certified_lower_bound(const LinearCode& c, const LpCertificate& cert) {
  const std::size_t n = c.n();
  const std::size_t size = std::size_t{1} << c.h();
  if (cert.y.size() != size || cert.x.size() != n) return std::nullopt;
  const auto words = codewords(c);
  auto syndrome = [&](const BitVec& v) {
    Element s = 0;
    for (std::size_t j = 0; j < c.h(); ++j) s |= static_cast<Element>(oracle::dot(c.pcheck().row(j), v)) << j;
    return s;
  };
  std::vector<std::size_t> leader(size, n + 1);
  std::vector<BitVec> rep(size, BitVec(n));
  for (const auto& v : oracle::all_words(n)) {
    const auto s = syndrome(v);
    const auto d = oracle::distance_to(v, words);
    if (d < leader[s]) {
      leader[s] = d;
      rep[s] = v;
    }
  }
  Rational xsum = 0;
  for (const auto& x : cert.x) {
    if (x < 0) return std::nullopt;
    xsum += x;
  }
  if (xsum > 1 || cert.y[0] != 0) return std::nullopt;
  for (const auto& y : cert.y) {
    if (y < 0) return std::nullopt;
  }
  for (const auto& alpha : oracle::orthogonal(c.gen().rows(), n)) {
    if (alpha.is_zero()) continue;
    Rational lhs = 0;
    Rational rhs = 0;
    for (std::size_t s = 1; s < size; ++s) {
      if (oracle::dot(alpha, rep[s])) lhs += cert.y[s];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha.get(i)) rhs += cert.x[i];
    }
    if (lhs > rhs) return std::nullopt;
  }
  Rational value = 0;
  for (std::size_t s = 1; s < size; ++s) value += cert.y[s] * static_cast<long long>(leader[s]);
  return value;
}

/// epsilon / delta of a tester from definitions (all 2^n words); nullopt when delta = 0.
inline std::optional<Rational> brute_ratio(const Tester& t) {
  const auto d = as_dist(t);
  const auto delta = oracle::soundness(d, codewords(t.code()), t.code().n());
  if (delta == 0) return std::nullopt;
  return oracle::smoothness(d, t.code().n()) / delta;
}

/// The corpus codes small enough for 2^n enumeration.
inline std::vector<NamedCode> small_codes(std::size_t max_n = 12) {
  std::vector<NamedCode> out;
  for (auto& nc : corpus_codes()) {
    if (nc.code.n() <= max_n) out.push_back(std::move(nc));
  }
  return out;
}

}  // namespace fixture

namespace ltcg {

// readable failure messages
inline void PrintTo(const BitVec& v, std::ostream* os) { *os << v.to_string(); }
inline void PrintTo(const Tester& t, std::ostream* os) { *os << "\n" << io::serialize_tester(t, "-"); }
inline void PrintTo(const LinearCode& c, std::ostream* os) { *os << "\n" << io::serialize_code(c); }
inline void PrintTo(const CayleyGraph& g, std::ostream* os) { *os << "\n" << io::serialize_graph(g); }
inline void PrintTo(const SpectrumGenerator& b, std::ostream* os) { *os << "\n" << io::serialize_sg(b); }
inline void PrintTo(const CutEmbedding& e, std::ostream* os) { *os << "\n" << io::serialize_embedding(e); }
inline void PrintTo(const ExtRational& r, std::ostream* os) { *os << to_string(r); }

}  // namespace ltcg
