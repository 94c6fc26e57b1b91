#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltcg/codes.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/testers.hpp"

namespace ltcg {

struct MassEntry {
  Element element;
  Int weight;  // probability = weight / denominator
};

/// Cayley graph on F2^h with an edge distribution. Built from a generator multiset (uniform
/// weights, kept in order) or from explicit masses; repeated elements are allowed in both.
class CayleyGraph {
 public:
  CayleyGraph() = default;

  static CayleyGraph from_generators(unsigned h, std::vector<Element> gens) {
    require(!gens.empty(), ErrorKind::InvalidArgument, "generator multiset is empty");
    std::vector<MassEntry> entries;
    entries.reserve(gens.size());
    for (auto g : gens) entries.push_back({g, Int(1)});
    CayleyGraph c = from_weights(h, std::move(entries));
    c.generator_form_ = true;
    return c;
  }

  static CayleyGraph from_weights(unsigned h, std::vector<MassEntry> entries) {
    require(h >= 1, ErrorKind::DegenerateGraph, "Cayley graphs need h >= 1");
    require(h <= kMaxGroupDim, ErrorKind::TooLarge, "Cayley graphs need h <= 24");
    CayleyGraph c;
    c.h_ = h;
    c.denominator_ = 0;
    for (const auto& e : entries) {
      require(e.element >> h == 0, ErrorKind::InvalidArgument, "element outside F2^" + std::to_string(h));
      require(e.weight >= 0, ErrorKind::InvalidArgument, "edge weights must be nonnegative");
      c.denominator_ += e.weight;
    }
    require(c.denominator_ > 0, ErrorKind::InvalidArgument, "edge distribution has no mass");
    c.entries_ = std::move(entries);
    return c;
  }

  /// Probabilities must sum to exactly 1.
  static CayleyGraph from_masses(unsigned h, const std::vector<std::pair<Element, Rational>>& masses) {
    require(!masses.empty(), ErrorKind::InvalidArgument, "edge distribution is empty");
    std::vector<Rational> probs;
    Rational total = 0;
    for (const auto& [s, p] : masses) {
      require(p >= 0, ErrorKind::InvalidArgument, "edge probabilities must be nonnegative");
      probs.push_back(p);
      total += p;
    }
    require(total == 1, ErrorKind::InvalidArgument, "edge probabilities sum to " + to_string(total) + ", not 1");
    Int denom;
    auto nums = common_numerators(probs, denom);
    std::vector<MassEntry> entries;
    for (std::size_t i = 0; i < masses.size(); ++i) entries.push_back({masses[i].first, nums[i]});
    return from_weights(h, std::move(entries));
  }

  [[nodiscard]] unsigned h() const noexcept { return h_; }
  [[nodiscard]] std::size_t order() const noexcept { return std::size_t{1} << h_; }
  [[nodiscard]] const std::vector<MassEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] const Int& denominator() const noexcept { return denominator_; }
  [[nodiscard]] bool generator_form() const noexcept { return generator_form_; }
  [[nodiscard]] Rational probability(std::size_t i) const { return Rational(entries_.at(i).weight, denominator_); }

  /// The multiset used for metric purposes: the generators, or the support of the distribution.
  [[nodiscard]] std::vector<Element> generators() const {
    std::vector<Element> g;
    for (const auto& e : entries_) {
      if (e.weight > 0) g.push_back(e.element);
    }
    return g;
  }

  [[nodiscard]] std::vector<Int> dense_weights() const {
    require(h_ <= kMaxExactDim, ErrorKind::TooLarge, "dense exact view needs h <= 20");
    std::vector<Int> w(order(), Int(0));
    for (const auto& e : entries_) w[e.element] += e.weight;
    return w;
  }

  [[nodiscard]] std::vector<double> dense_probabilities() const {
    std::vector<double> p(order(), 0.0);
    for (const auto& e : entries_) p[e.element] += to_double(Rational(e.weight, denominator_));
    return p;
  }

  friend bool operator==(const CayleyGraph& a, const CayleyGraph& b) {
    if (a.h_ != b.h_ || a.entries_.size() != b.entries_.size() || a.generator_form_ != b.generator_form_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (a.entries_[i].element != b.entries_[i].element) return false;
      if (a.entries_[i].weight * b.denominator_ != b.entries_[i].weight * a.denominator_) return false;
    }
    return true;
  }

 private:
  unsigned h_ = 0;
  std::vector<MassEntry> entries_;
  Int denominator_{1};
  bool generator_form_ = false;
};

/// Cay(F2^{n-k}, columns of the parity-check matrix).
[[nodiscard]] inline CayleyGraph graph_from_code(const LinearCode& c) {
  require(c.h() >= 1, ErrorKind::DegenerateGraph, "the full-space code gives a one-vertex graph");
  require(c.h() <= kMaxGroupDim, ErrorKind::TooLarge, "graph_from_code needs n - k <= 24");
  return CayleyGraph::from_generators(static_cast<unsigned>(c.h()), c.unit_syndromes());
}

/// The code whose parity-check columns are the generators: {c : sum c_i s_i = 0}.
[[nodiscard]] inline LinearCode code_from_graph(const CayleyGraph& g) {
  require(g.generator_form(), ErrorKind::InvalidArgument, "code_from_graph needs a generator multiset");
  const auto gens = g.generators();
  require(span_dimension(gens) == g.h(), ErrorKind::NotGenerating, "generators do not span F2^" + std::to_string(g.h()));
  return LinearCode::from_parity_check(BitMatrix::from_columns(gens, g.h()));
}

/// Cay(C-perp, D) in dual coordinates; support order and multiplicity are kept.
[[nodiscard]] inline CayleyGraph tester_graph(const Tester& t) {
  const LinearCode& c = t.code();
  require(c.h() >= 1, ErrorKind::DegenerateGraph, "the dual code is {0}");
  require(c.h() <= kMaxGroupDim, ErrorKind::TooLarge, "tester_graph needs n - k <= 24");
  std::vector<MassEntry> entries;
  entries.reserve(t.support().size());
  for (const auto& e : t.support()) entries.push_back({c.dual_coordinates(e.word), e.weight});
  return CayleyGraph::from_weights(static_cast<unsigned>(c.h()), std::move(entries));
}

/// Eigenvalues lambda(b) = E_{s~D} (-1)^<b,s>, exact for h <= 20 and in double precision always.
struct SpectrumTable {
  unsigned h = 0;
  std::vector<Int> numer;  // exact: lambda(b) = numer[b] / denominator (empty when h > 20)
  Int denominator{1};
  std::vector<double> values;

  [[nodiscard]] bool exact() const noexcept { return !numer.empty(); }
  [[nodiscard]] Rational lambda(Element b) const {
    require(exact(), ErrorKind::TooLarge, "exact eigenvalues need h <= 20");
    return Rational(numer.at(b), denominator);
  }
  [[nodiscard]] double value(Element b) const { return values.at(b); }
};

[[nodiscard]] inline SpectrumTable spectrum(const CayleyGraph& g) {
  SpectrumTable t;
  t.h = g.h();
  if (g.h() <= kMaxExactDim) {
    t.numer = g.dense_weights();
    walsh_hadamard(t.numer);
    t.denominator = g.denominator();
    t.values.resize(t.numer.size());
    for (std::size_t b = 0; b < t.numer.size(); ++b) t.values[b] = to_double(Rational(t.numer[b], t.denominator));
    ensure(t.numer[0] == t.denominator, "lambda(0) = 1");
  } else {
    t.values = g.dense_probabilities();
    walsh_hadamard(t.values);
  }
  return t;
}

/// Outcome of checking lambda(s) = 1 - 2 Rej(s) on every coset.
struct IdentityCheck {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<Element> witness;  // first failing coset
  Rational lambda;                 // at the witness
  Rational rejection;
};

/// The spectrum of tester_graph(t) against rejection probabilities summed directly over the
/// support at one representative per coset (functional b <-> syndrome s).
[[nodiscard]] inline IdentityCheck eigenvalue_rejection_identity(const Tester& t) {
  const LinearCode& c = t.code();
  require(c.h() >= 1, ErrorKind::DegenerateGraph, "the dual code is {0}");
  require(c.h() <= kMaxExactDim, ErrorKind::TooLarge, "identity check needs n - k <= 20");
  const auto spec = spectrum(tester_graph(t));
  IdentityCheck out;
  for (Element s = 0; s < spec.numer.size(); ++s) {
    const Rational lambda = spec.lambda(s);
    const Rational r = rej(t, c.coset_representative(s));
    ++out.checked;
    if (lambda != 1 - 2 * r) {
      out.pass = false;
      out.witness = s;
      out.lambda = lambda;
      out.rejection = r;
      break;
    }
  }
  return out;
}

/// Graph distances from 0 over the (unweighted) generator set; d(x, y) = dist[x ^ y].
[[nodiscard]] inline std::vector<std::uint32_t> bfs_metric(const CayleyGraph& g) {
  const auto gens = g.generators();
  require(span_dimension(gens) == g.h(), ErrorKind::Disconnected, "support does not generate F2^" + std::to_string(g.h()));
  const auto dist = bfs_distances(gens, g.h());
  std::vector<std::uint32_t> out(dist.size());
  for (std::size_t x = 0; x < dist.size(); ++x) {
    ensure(dist[x] != kUnreachable, "generating set reaches every vertex");
    out[x] = static_cast<std::uint32_t>(dist[x]);
  }
  return out;
}

}  // namespace ltcg
