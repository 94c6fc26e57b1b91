#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace ltcg;

namespace {

const std::map<std::string, Rational>& expected_ratios() {
  static const std::map<std::string, Rational> table{
      {"rep2", Rational(1)},          {"rep3", Rational(1)},          {"rep4", Rational(3, 2)},
      {"parity4", Rational(1)},       {"hamming74", Rational(1)},     {"exthamming84", Rational(7, 4)},
      {"rm13", Rational(7, 4)},       {"rm14", Rational(21, 8)},      {"rm24", Rational(15, 8)},
      {"rand10_4", Rational(4, 3)},   {"rand12_5", Rational(14, 9)},  {"rand12_4", Rational(23, 13)},
  };
  return table;
}

}  // namespace

TEST(Simplex, SmallMaximization) {
  // maximize 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
  const std::vector<std::vector<Rational>> a{{1, 1}, {1, 3}, {1, 0}};
  const auto sol = lp::maximize<Rational>(a, {4, 6, 3}, {3, 2});
  EXPECT_EQ(sol.objective, 11);
  EXPECT_EQ(sol.primal[0], 3);
  EXPECT_EQ(sol.primal[1], 1);
  // duals certify the optimum: b.y = c.x
  Rational dual_value = 4 * sol.duals[0] + 6 * sol.duals[1] + 3 * sol.duals[2];
  EXPECT_EQ(dual_value, 11);
}

TEST(Simplex, FloatAgreesWithExact) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::vector<Rational>> a(4, std::vector<Rational>(3));
    std::vector<std::vector<double>> af(4, std::vector<double>(3));
    std::vector<Rational> b(4);
    std::vector<double> bf(4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 3; ++c) {
        const auto v = static_cast<long long>(1 + rng() % 5);
        a[r][c] = v;
        af[r][c] = static_cast<double>(v);
      }
      const auto v = static_cast<long long>(1 + rng() % 9);
      b[r] = v;
      bf[r] = static_cast<double>(v);
    }
    const auto ex = lp::maximize<Rational>(a, b, {1, 2, 3});
    const auto fl = lp::maximize<double>(af, bf, {1, 2, 3});
    EXPECT_NEAR(to_double(ex.objective), fl.objective, 1e-9);
  }
}

TEST(Rationalize, RecoversSmallFractions) {
  EXPECT_EQ(lp::rationalize(0.75), Rational(3, 4));
  EXPECT_EQ(lp::rationalize(23.0 / 13.0), Rational(23, 13));
  EXPECT_EQ(lp::rationalize(-1.0 / 3.0), Rational(-1, 3));
  EXPECT_EQ(lp::rationalize(0.0), Rational(0));
}

TEST(OptimalTester, Examples) {
  const auto ham = optimal_tester(coset_table(hamming_code(3)));
  EXPECT_EQ(ham.ratio, 1);
  EXPECT_TRUE(ham.certified);
  const auto k44 = optimal_tester(coset_table(repetition_code(4)));
  EXPECT_EQ(k44.ratio, Rational(3, 2));
  EXPECT_TRUE(k44.certified);
  const auto two = optimal_tester(coset_table(repetition_code(2)));
  EXPECT_EQ(two.ratio, 1);
}

TEST(OptimalTester, FeasibleTestersConfirmTheExamples) {
  // the uniform simplex and uniform weight-two testers attain the optimum independently of the LP
  EXPECT_EQ(report(fixture::hamming_simplex(), coset_table(hamming_code(3))).ratio, ExtRational::finite(1));
  EXPECT_EQ(report(fixture::rep4_weight_two(), coset_table(repetition_code(4))).ratio,
            ExtRational::finite(Rational(3, 2)));
}

TEST(OptimalTester, FullSpaceHasNoTester) {
  const auto c = LinearCode::from_generator(BitMatrix::identity(3));
  try {
    (void)optimal_tester(coset_table(c));
    FAIL() << "expected NoValidTester";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoValidTester);
  }
}

TEST(OptimalTester, CorpusValuesAreCertified) {
  for (const auto& nc : corpus_codes()) {
    SCOPED_TRACE(nc.name);
    const auto tbl = coset_table(nc.code);
    const auto opt = optimal_tester(tbl);
    EXPECT_TRUE(opt.certified);
    EXPECT_TRUE(verify_certificate(tbl, opt.certificate).ok());
    EXPECT_EQ(opt.ratio, expected_ratios().at(nc.name));
    const auto rep = report(opt.tester, tbl);
    EXPECT_EQ(rep.ratio, ExtRational::finite(opt.ratio));
  }
}

TEST(OptimalTester, SolverModesAgree) {
  for (const auto& nc : corpus_codes()) {
    if (nc.code.h() > 8) continue;
    SCOPED_TRACE(nc.name);
    const auto tbl = coset_table(nc.code);
    const auto ex = optimal_tester(tbl, LpMode::Exact);
    const auto fl = optimal_tester(tbl, LpMode::Float);
    EXPECT_EQ(ex.ratio, expected_ratios().at(nc.name));
    EXPECT_NEAR(fl.ratio_float, to_double(ex.ratio), 1e-9);
  }
}

TEST(OptimalTester, TamperedCertificateIsRejected) {
  const auto tbl = coset_table(repetition_code(4));
  auto cert = optimal_tester(tbl).certificate;
  cert.value = cert.value - Rational(1, 100);
  EXPECT_FALSE(verify_certificate(tbl, cert).ok());
  auto short_w = optimal_tester(tbl).certificate;
  short_w.w.pop_back();
  EXPECT_FALSE(verify_certificate(tbl, short_w).ok());
}

TEST(OptimalTester, NoRandomTesterBeatsTheOptimum) {
  std::mt19937_64 rng(2);
  for (const auto& nc : corpus_codes()) {
    SCOPED_TRACE(nc.name);
    const auto tbl = coset_table(nc.code);
    const auto opt = ExtRational::finite(optimal_tester(tbl).ratio);
    for (int i = 0; i < 200; ++i) {
      const auto r = report(fixture::random_tester(nc.code, rng, 1 + rng() % 24), tbl);
      ASSERT_LE(opt, r.ratio);
    }
  }
}

TEST(OptimalTester, NoCanonicalTesterBeatsTheOptimum) {
  for (const auto& nt : corpus_testers()) {
    const auto tbl = coset_table(nt.tester.code());
    EXPECT_LE(ExtRational::finite(optimal_tester(tbl).ratio), report(nt.tester, tbl).ratio) << nt.name;
  }
}

TEST(OptimalTester, RatioIsInvariantUnderCoordinatePermutation) {
  std::mt19937_64 rng(3);
  const auto c = random_code(10, 4, 1);
  std::vector<std::size_t> perm(c.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<BitVec> rows;
  for (const auto& r : c.gen().rows()) {
    BitVec p(c.n());
    for (std::size_t i = 0; i < c.n(); ++i) p.set(perm[i], r.get(i));
    rows.push_back(p);
  }
  const auto pc = LinearCode::from_generator(BitMatrix::from_rows(rows, c.n()));
  EXPECT_EQ(optimal_tester(coset_table(pc)).ratio, optimal_tester(coset_table(c)).ratio);
}

TEST(Symmetry, AutomorphismsPreserveTheCode) {
  for (const auto& nc : corpus_codes()) {
    for (const auto& p : find_automorphisms(nc.code)) EXPECT_TRUE(preserves(nc.code, p)) << nc.name;
  }
  // the Hamming code is preserved by a transitive group: one coordinate orbit
  const auto ham = hamming_code(3);
  EXPECT_EQ(coordinate_orbits(7, find_automorphisms(ham)).count(), 1U);
}

TEST(OptimalTester, OptimumConfirmedFromDefinitions) {
  // primal value from the returned tester, dual value from the certificate multipliers
  for (const auto& nc : fixture::small_codes()) {
    if (nc.code.h() == 0) continue;
    SCOPED_TRACE(nc.name);
    const auto opt = optimal_tester(coset_table(nc.code));
    const auto lower = fixture::certified_lower_bound(nc.code, opt.certificate);
    ASSERT_TRUE(lower.has_value());
    EXPECT_EQ(*lower, opt.ratio);
    const auto upper = fixture::brute_ratio(opt.tester);
    ASSERT_TRUE(upper.has_value());
    EXPECT_EQ(*upper, opt.ratio);
  }
}
