#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace ltcg;

namespace {

Rational coset_rej(const Tester& t, Element s) { return rej(t, t.code().coset_representative(s)); }

Rational power(const Rational& x, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

TEST(Tester, RejectsWordsOutsideTheDual) {
  const auto c = hamming_code(3);
  EXPECT_THROW((void)Tester::uniform(c, {BitVec::from_string("1000000")}), Error);
  EXPECT_THROW((void)Tester::from_probabilities(c, {{BitVec(7), Rational(1, 2)}}), Error);
  EXPECT_THROW((void)Tester::from_weights(c, {{BitVec(7), Int(0)}}), Error);
}

TEST(Rej, Examples) {
  const auto t = fixture::hamming_simplex();
  EXPECT_EQ(rej(t, BitVec(7)), 0);
  const auto words = fixture::codewords(t.code());
  const auto d = fixture::as_dist(t);
  for (const auto& v : oracle::all_words(7)) {
    const bool in = std::find(words.begin(), words.end(), v) != words.end();
    EXPECT_EQ(rej(t, v), in ? Rational(0) : Rational(4, 7));
    EXPECT_EQ(oracle::rej(d, v), rej(t, v));
  }
  const auto rep = repetition_code(3);
  const auto r3 = Tester::uniform(rep, {BitVec::from_string("110"), BitVec::from_string("101"), BitVec::from_string("011")});
  EXPECT_EQ(rej(r3, BitVec::unit(3, 0)), Rational(2, 3));
}

TEST(Rej, DependsOnlyOnTheCoset) {
  std::mt19937_64 rng(1);
  for (const auto& nc : fixture::small_codes()) {
    const auto& c = nc.code;
    if (c.h() == 0) continue;
    const auto words = fixture::codewords(c);
    for (int i = 0; i < 20; ++i) {
      const auto t = fixture::random_tester(c, rng);
      const auto v = oracle::word(c.n(), rng());
      const auto& cw = words[rng() % words.size()];
      EXPECT_EQ(rej(t, v), rej(t, v ^ cw));
      EXPECT_EQ(rejection_profile(t).at(c.syndrome(v)), rej(t, v));
    }
  }
}

TEST(Smoothness, Examples) {
  EXPECT_EQ(smoothness(Tester::point_mass_zero(hamming_code(3))), 0);
  EXPECT_EQ(smoothness(fixture::hamming_simplex()), Rational(4, 7));
  EXPECT_EQ(smoothness(fixture::rep4_weight_two()), Rational(1, 2));
}

TEST(Smoothness, IsLargestUnitRejection) {
  std::mt19937_64 rng(2);
  for (const auto& nc : fixture::small_codes()) {
    if (nc.code.h() == 0) continue;
    for (int i = 0; i < 10; ++i) {
      const auto t = fixture::random_tester(nc.code, rng);
      Rational best = 0;
      for (std::size_t j = 0; j < nc.code.n(); ++j) best = std::max(best, rej(t, BitVec::unit(nc.code.n(), j)));
      EXPECT_EQ(smoothness(t), best);
      EXPECT_EQ(smoothness(t), oracle::smoothness(fixture::as_dist(t), nc.code.n()));
    }
  }
}

TEST(Soundness, Examples) {
  const auto h = fixture::hamming_simplex();
  const auto hr = report(h, coset_table(h.code()));
  EXPECT_EQ(hr.epsilon, Rational(4, 7));
  EXPECT_EQ(hr.delta, Rational(4, 7));
  EXPECT_EQ(hr.ratio, ExtRational::finite(1));

  const auto zero = report(Tester::point_mass_zero(hamming_code(3)), coset_table(hamming_code(3)));
  EXPECT_EQ(zero.delta, 0);
  EXPECT_TRUE(zero.ratio.infinite);

  const auto r = fixture::rep4_weight_two();
  const auto rr = report(r, coset_table(r.code()));
  EXPECT_EQ(rr.epsilon, Rational(1, 2));
  EXPECT_EQ(rr.delta, Rational(1, 3));
  EXPECT_EQ(rr.ratio, ExtRational::finite(Rational(3, 2)));
  ASSERT_TRUE(rr.binding.has_value());
  EXPECT_EQ(coset_table(r.code()).leader_weight(*rr.binding), 2U);
  EXPECT_EQ(coset_rej(r, *rr.binding), Rational(2, 3));
}

TEST(Soundness, MatchesWordEnumeration) {
  std::mt19937_64 rng(3);
  for (const auto& nc : fixture::small_codes(10)) {
    if (nc.code.h() == 0) continue;
    SCOPED_TRACE(nc.name);
    const auto tbl = coset_table(nc.code);
    const auto words = fixture::codewords(nc.code);
    for (int i = 0; i < 4; ++i) {
      const auto t = fixture::random_tester(nc.code, rng);
      const auto d = fixture::as_dist(t);
      EXPECT_EQ(soundness(t, tbl).delta, oracle::soundness(d, words, nc.code.n()));
      EXPECT_EQ(soundness(t, tbl, 1).delta, oracle::soundness(d, words, nc.code.n(), 1));
      EXPECT_EQ(soundness(t, tbl, 2).delta, oracle::soundness(d, words, nc.code.n(), 2));
    }
  }
}

TEST(Soundness, NeverExceedsSmoothnessOrInverseRadius) {
  std::mt19937_64 rng(4);
  for (const auto& nc : corpus_codes()) {
    if (nc.code.h() == 0) continue;
    const auto tbl = coset_table(nc.code);
    for (int i = 0; i < 30; ++i) {
      const auto r = soundness(fixture::random_tester(nc.code, rng), tbl);
      EXPECT_LE(r.delta, r.epsilon);
      EXPECT_LE(r.delta * tbl.covering_radius(), 1);
    }
  }
}

TEST(Soundness, CappedNeverBelowStrong) {
  const auto r = fixture::rep4_weight_two();
  const auto tbl = coset_table(r.code());
  const auto strong = soundness(r, tbl);
  const auto capped = soundness(r, tbl, 1);
  EXPECT_EQ(capped.cap, std::optional<std::size_t>(1));
  EXPECT_EQ(capped.delta, Rational(1, 2));
  EXPECT_GE(capped.delta, strong.delta);
  EXPECT_THROW((void)soundness(r, tbl, 0), Error);
}

TEST(Boost, OneIsIdentity) {
  const auto t = fixture::hamming_simplex();
  EXPECT_EQ(ltcg::boost(t, 1), t);
  EXPECT_THROW((void)ltcg::boost(t, 0), Error);
}

TEST(Boost, HammingSquared) {
  const auto b = ltcg::boost(fixture::hamming_simplex(), 2);
  for (Element s = 1; s < 8; ++s) EXPECT_EQ(coset_rej(b, s), Rational(24, 49));
  const auto conv = oracle::convolve_power(fixture::as_dist(fixture::hamming_simplex()), 2);
  EXPECT_EQ(conv.at(BitVec(7)), Rational(1, 7));
}

TEST(Boost, HalfIsAFixedPoint) {
  // uniform over all of C-perp including 0 rejects every nonzero coset with probability 1/2
  const auto c = reed_muller_code(1, 3);
  auto words = nonzero_dual_words(c);
  words.push_back(BitVec(c.n()));
  const auto t = Tester::uniform(c, words);
  for (std::size_t ell = 1; ell <= 5; ++ell) {
    const auto p = boosted_profile(rejection_profile(t), ell);
    for (Element s = 1; s < (Element{1} << c.h()); ++s) EXPECT_EQ(p.at(s), Rational(1, 2));
  }
}

TEST(Boost, ClosedFormMatchesExplicitConvolution) {
  for (const auto& nt : corpus_testers()) {
    const auto& t = nt.tester;
    if (t.support().size() > 64) continue;
    SCOPED_TRACE(nt.name);
    const auto d = fixture::as_dist(t);
    const auto base = rejection_profile(t);
    for (std::size_t ell = 1; ell <= 4; ++ell) {
      const auto closed = boosted_profile(base, ell);
      const auto explicit_t = ltcg::boost(t, ell);
      const auto conv = oracle::convolve_power(d, ell);
      oracle::Dist conv_dist(conv.begin(), conv.end());
      for (Element s = 0; s < (Element{1} << t.code().h()); ++s) {
        const auto v = t.code().coset_representative(s);
        const Rational r = base.at(s);
        const Rational expect = (1 - power(1 - 2 * r, ell)) / 2;
        EXPECT_EQ(closed.at(s), expect);
        EXPECT_EQ(rej(explicit_t, v), expect);
        EXPECT_EQ(oracle::rej(conv_dist, v), expect);
      }
    }
  }
}

TEST(Boost, PremiseGatedParameterBounds) {
  std::mt19937_64 rng(5);
  std::size_t gated = 0;
  for (const auto& nc : fixture::small_codes()) {
    if (nc.code.h() == 0) continue;
    const auto tbl = coset_table(nc.code);
    for (int i = 0; i < 20; ++i) {
      const auto t = fixture::random_tester(nc.code, rng).diluted(Rational(1, 1 + rng() % 12));
      const auto before = soundness(t, tbl);
      const auto profile = rejection_profile(t);
      Rational max_rej = 0;
      for (Element s = 0; s < tbl.size(); ++s) max_rej = std::max(max_rej, profile.at(s));
      for (std::size_t ell = 2; ell <= 6; ++ell) {
        if (max_rej * 4 * ell > 1) break;
        ++gated;
        const auto after = soundness(ltcg::boost(t, ell), tbl);
        EXPECT_LE(after.epsilon, before.epsilon * ell);
        EXPECT_GE(after.delta, before.delta * ell / 2);
      }
    }
  }
  EXPECT_GT(gated, 0U);
}

TEST(CovRadiusBoost, EarlyExitWhenAlreadySound) {
  const auto t = fixture::hamming_simplex();
  const auto out = covradius_boost(t, coset_table(t.code()), 1);
  EXPECT_EQ(out.ell, 1U);
  EXPECT_EQ(out.tester, t);
}

TEST(CovRadiusBoost, DilutedHamming) {
  const auto t = fixture::diluted_hamming();
  const auto tbl = coset_table(t.code());
  const auto before = soundness(t, tbl);
  EXPECT_EQ(before.epsilon, Rational(1, 16));
  EXPECT_EQ(before.delta, Rational(1, 16));
  const auto out = covradius_boost(t, tbl, 1);
  EXPECT_EQ(out.ell, 4U);
  for (Element s = 1; s < 8; ++s) EXPECT_EQ(coset_rej(out.tester, s), Rational(1695, 8192));
  EXPECT_LE(out.after.epsilon, Rational(1, 4));
  EXPECT_GE(out.after.delta, Rational(1, 16));
  const auto conv = oracle::convolve_power(fixture::as_dist(t), 4);
  EXPECT_EQ(oracle::rej({conv.begin(), conv.end()}, BitVec::unit(7, 0)), Rational(1695, 8192));
}

TEST(CovRadiusBoost, PointMassViolatesPremise) {
  const auto c = hamming_code(3);
  try {
    (void)covradius_boost(Tester::point_mass_zero(c), coset_table(c), 1);
    FAIL() << "expected PremiseViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PremiseViolated);
  }
}

TEST(CovRadiusBoost, TargetsHoldAcrossCorpus) {
  for (const auto& nt : corpus_testers()) {
    const auto tbl = coset_table(nt.tester.code());
    const auto rep = soundness(nt.tester, tbl);
    if (rep.ratio.infinite) continue;
    SCOPED_TRACE(nt.name);
    const auto out = covradius_boost(nt.tester, tbl, rep.ratio.value);
    if (out.ell == 1) {
      EXPECT_GT(out.before.delta, out.target_delta);
    } else {
      EXPECT_LE(out.after.epsilon, out.target_epsilon);
      EXPECT_GE(out.after.delta, out.target_delta);
    }
  }
}

TEST(Dilution, ScalesRejection) {
  const auto t = fixture::diluted_hamming();
  for (Element s = 1; s < 8; ++s) EXPECT_EQ(coset_rej(t, s), Rational(1, 16));
  EXPECT_EQ(t.support().back().word, BitVec(7));
  EXPECT_EQ(t.probability(t.support().size() - 1), Rational(57, 64));
}

TEST(CanonicalTesters, DilutedSmoothnessIsAtMostOneSixteenth) {
  for (const auto& nt : corpus_testers()) {
    if (nt.name.ends_with(".dil")) EXPECT_LE(smoothness(nt.tester), Rational(1, 16)) << nt.name;
  }
}

TEST(BasisTesters, RatioAtLeastKdOverThreeN) {
  for (const auto& nt : corpus_testers()) {
    if (!nt.name.ends_with(".basis")) continue;
    SCOPED_TRACE(nt.name);
    const auto& c = nt.tester.code();
    const auto r = report(nt.tester, coset_table(c));
    const Rational bound(Int(c.k() * min_distance(c)), Int(3 * c.n()));
    EXPECT_LE(ExtRational::finite(bound), r.ratio);
  }
}
