#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace ltcg;

namespace {

BitMatrix matrix(std::vector<std::string> rows) { return BitMatrix::from_strings(rows); }

std::vector<BitVec> bitvecs(const std::vector<std::string>& rows) {
  std::vector<BitVec> out;
  for (const auto& r : rows) out.push_back(BitVec::from_string(r));
  return out;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<BitVec> vs;
  for (std::size_t r = 0; r < rows; ++r) vs.push_back(oracle::word(cols, rng()));
  return BitMatrix::from_rows(std::move(vs), cols);
}

std::vector<BitVec> nonzero_vectors(std::size_t h) {
  std::vector<BitVec> out;
  for (Element x = 1; x < (Element{1} << h); ++x) out.push_back(BitVec::from_element(x, h));
  return out;
}

}  // namespace

TEST(BitVec, TextFormIsCoordinateOrder) {
  const auto v = BitVec::from_string("1101000");
  EXPECT_EQ(v.size(), 7U);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(2));
  EXPECT_EQ(v.to_element(), 0b1011U);
  EXPECT_EQ(v.to_string(), "1101000");
  EXPECT_EQ(BitVec::from_element(0b1011, 7), v);
}

TEST(BitVec, AddingTwiceCancels) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto x = oracle::word(130, rng());
    auto y = x;
    y ^= oracle::word(130, rng());
    y ^= x;
    EXPECT_EQ(oracle::weight(x ^ x), 0U);
    EXPECT_EQ(x.weight(), oracle::weight(x));
  }
}

TEST(BitVec, RejectsBadText) {
  EXPECT_THROW((void)BitVec::from_string("10a"), Error);
  EXPECT_THROW((void)BitVec::from_string(""), Error);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(BitMatrix::identity(3)), 3U);
  EXPECT_EQ(rank(BitMatrix(2, 5)), 0U);
  const auto m = matrix({"1110", "0111", "1001"});
  EXPECT_EQ(rank(m), 2U);
  EXPECT_EQ(oracle::rank(m.rows(), 4), 2U);
}

TEST(Rank, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 10);
    EXPECT_EQ(rank(m), oracle::rank(m.rows(), m.ncols()));
  }
}

TEST(KernelBasis, Examples) {
  EXPECT_EQ(kernel_basis(BitMatrix::identity(3)).nrows(), 0U);

  const auto k = kernel_basis(matrix({"111"}));
  ASSERT_EQ(k.nrows(), 2U);
  const auto expected = oracle::orthogonal({BitVec::from_string("111")}, 3);
  EXPECT_EQ(oracle::span(k.rows(), 3), std::set<BitVec>(expected.begin(), expected.end()));

  const auto ham = hamming_code(3);
  const auto simplex = kernel_basis(ham.gen());
  ASSERT_EQ(simplex.nrows(), 3U);
  const auto words = oracle::span(simplex.rows(), 7);
  const auto dual = oracle::orthogonal(ham.gen().rows(), 7);
  EXPECT_EQ(words, std::set<BitVec>(dual.begin(), dual.end()));
  for (const auto& w : words) {
    if (!w.is_zero()) EXPECT_EQ(oracle::weight(w), 4U);
  }
}

TEST(KernelBasis, RankNullityAndOrthogonality) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 10);
    const auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.nrows(), m.ncols());
    EXPECT_EQ(rank(k), k.nrows());
    for (const auto& kv : k.rows()) {
      for (const auto& r : m.rows()) EXPECT_EQ(oracle::dot(kv, r), 0);
    }
    EXPECT_EQ(oracle::span(k.rows(), m.ncols()).size(), oracle::orthogonal(m.rows(), m.ncols()).size());
  }
}

TEST(Elimination, IsDeterministic) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_matrix(rng, 6, 9);
    const auto a = rref(m);
    const auto b = rref(m);
    EXPECT_EQ(a.reduced.rows(), b.reduced.rows());
    EXPECT_EQ(a.pivots, b.pivots);
    EXPECT_EQ(kernel_basis(m).rows(), kernel_basis(m).rows());
  }
}

TEST(IndependenceWidth, Examples) {
  const auto basis = bitvecs({"100", "010", "001"});
  EXPECT_EQ(independence_width(basis), 4U);
  const auto all = nonzero_vectors(3);
  EXPECT_EQ(independence_width(all), 3U);
  const auto with_zero = bitvecs({"101", "000", "011"});
  EXPECT_EQ(independence_width(with_zero), 1U);
  EXPECT_THROW((void)independence_width(std::vector<BitVec>{}), Error);
}

TEST(IndependenceWidth, RepeatedVectorIsPairDependency) {
  const auto v = bitvecs({"110", "011", "110"});
  EXPECT_EQ(independence_width(v), 2U);
}

TEST(IndependenceWidth, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const unsigned h = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 12;
    std::vector<Element> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(rng() & ((Element{1} << h) - 1));
    EXPECT_EQ(independence_width(gens, h), oracle::independence_width(gens));
  }
}

TEST(IndependenceWidth, WideListsMatchSmallSubsetSearch) {
  // 30 vectors in F2^6 leave a relation space of dimension >= 24
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3; ++i) {
    std::vector<BitVec> vs;
    std::vector<Element> els;
    for (int j = 0; j < 30; ++j) {
      els.push_back(1 + rng() % 63);
      vs.push_back(BitVec::from_element(els.back(), 6));
    }
    std::size_t expect = 0;
    const std::size_t n = els.size();
    for (std::size_t a = 0; a < n && !expect; ++a) {
      for (std::size_t b = a + 1; b < n && expect != 2; ++b) {
        if (els[a] == els[b]) expect = 2;
      }
    }
    for (std::size_t a = 0; a < n && !expect; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          if ((els[a] ^ els[b] ^ els[c]) == 0) expect = 3;
        }
      }
    }
    if (!expect) expect = 4;  // sets of F2^6 with no 4-term relation have fewer than 12 elements
    EXPECT_EQ(independence_width(vs), expect);
  }
}

TEST(RankWrt, Examples) {
  const auto all = nonzero_vectors(3);
  EXPECT_EQ(rank_wrt(BitVec(3), all), 0U);
  for (const auto& s : all) EXPECT_EQ(rank_wrt(s, all), 1U);
  const auto gens = bitvecs({"100", "010", "001", "111"});
  EXPECT_EQ(rank_wrt(BitVec::from_string("110"), gens), 2U);
  EXPECT_EQ(rank_wrt(BitVec::from_string("111"), gens), 1U);
}

TEST(RankWrt, OutsideSpanThrows) {
  const auto gens = bitvecs({"100", "010"});
  try {
    (void)rank_wrt(BitVec::from_string("001"), gens);
    FAIL() << "expected NotInSpan";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInSpan);
  }
}

TEST(RankWrt, BreadthFirstMatchesSubsetMinimum) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    const unsigned h = 1 + rng() % 10;
    const std::size_t n = 1 + rng() % 12;
    std::vector<Element> gens;
    std::vector<BitVec> bv;
    for (std::size_t j = 0; j < n; ++j) {
      gens.push_back(rng() & ((Element{1} << h) - 1));
      bv.push_back(BitVec::from_element(gens.back(), h));
    }
    const auto bfs = bfs_distances(gens, h);
    for (Element t = 0; t < (Element{1} << h); ++t) {
      const int expect = oracle::min_subset_sum(t, gens);
      EXPECT_EQ(bfs[t], expect);
      if (expect >= 0) EXPECT_EQ(rank_wrt(BitVec::from_element(t, h), bv), static_cast<std::size_t>(expect));
    }
  }
}

TEST(RankWrt, DependencyWidthIsShortestZeroSum) {
  // smallest nonempty sub-multiset summing to zero: either a repeated or zero generator, or
  // a nonzero t reached by some generator g together with rk over the remaining ones
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const unsigned h = 2 + rng() % 5;
    const std::size_t n = 2 + rng() % 8;
    std::vector<Element> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(rng() & ((Element{1} << h) - 1));
    std::size_t best = n + 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (gens[j] == 0) best = 1;
      std::vector<Element> rest = gens;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      const int r = oracle::min_subset_sum(gens[j], rest);
      if (r >= 1) best = std::min<std::size_t>(best, static_cast<std::size_t>(r) + 1);
    }
    EXPECT_EQ(independence_width(gens, h), best);
  }
}

TEST(SpanDimension, MatchesRank) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    std::vector<Element> xs;
    std::vector<BitVec> bv;
    for (int j = 0; j < 6; ++j) {
      xs.push_back(rng() & 0xff);
      bv.push_back(BitVec::from_element(xs.back(), 8));
    }
    EXPECT_EQ(span_dimension(xs), oracle::rank(bv, 8));
  }
}

TEST(Transform, WalshHadamardTwiceScalesByOrder) {
  std::mt19937_64 rng(9);
  std::vector<Int> a(32);
  for (auto& x : a) x = Int(static_cast<long long>(rng() % 100) - 50);
  auto b = a;
  walsh_hadamard(b);
  walsh_hadamard(b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i], a[i] * 32);
}

TEST(IndependenceWidth, WideListsBeyondThree) {
  // odd-weight vectors of F2^6: no pair or triple sums to zero, four can
  std::vector<BitVec> odd;
  for (Element x = 1; x < 64; ++x) {
    if (std::popcount(x) % 2) odd.push_back(BitVec::from_element(x, 6));
  }
  EXPECT_EQ(odd.size(), 32U);
  EXPECT_EQ(independence_width(odd), 4U);
  EXPECT_EQ(independence_width(nonzero_vectors(12)), 3U);
}
