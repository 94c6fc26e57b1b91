#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ltcg/error.hpp"

namespace ltcg {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Group element of F2^h packed little-endian: coordinate j is bit j.
using Element = std::uint64_t;

inline constexpr unsigned kMaxGroupDim = 24;

[[nodiscard]] constexpr int parity(Element x) noexcept { return std::popcount(x) & 1; }
[[nodiscard]] constexpr int dot(Element a, Element b) noexcept { return parity(a & b); }
[[nodiscard]] constexpr int weight(Element x) noexcept { return std::popcount(x); }

/// In-place unnormalized Walsh–Hadamard transform: a[b] <- sum_x a[x] (-1)^<b,x>.
template <typename T>
void walsh_hadamard(std::span<T> a) {
  const std::size_t size = a.size();
  ensure(std::has_single_bit(size), "transform length is a power of two");
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t i = 0; i < size; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        T u = a[j];
        T v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

template <typename T>
void walsh_hadamard(std::vector<T>& a) {
  walsh_hadamard(std::span<T>(a));
}

[[nodiscard]] inline Rational make_rational(const Int& num, const Int& den) {
  require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
  return Rational(num, den);
}

/// Always "p/q", including integers ("1/1"), so goldens never depend on reduction form.
[[nodiscard]] inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

[[nodiscard]] inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Accepts "p/q" or a bare integer "p". Signs are allowed; callers check ranges.
[[nodiscard]] inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    require(!s.empty(), ErrorKind::Parse, "empty number in '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    require(start < s.size(), ErrorKind::Parse, "bad number '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      require(s[i] >= '0' && s[i] <= '9', ErrorKind::Parse, "bad number '" + std::string(text) + "'");
    }
    return Int(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int den = parse_int(text.substr(slash + 1));
  require(den != 0, ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// A nonnegative rational that may be +infinity (distortion and ratio reports).
struct ExtRational {
  Rational value{0};
  bool infinite = false;

  static ExtRational infinity() { return ExtRational{Rational(0), true}; }
  static ExtRational finite(Rational v) { return ExtRational{std::move(v), false}; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
};

[[nodiscard]] inline std::string to_string(const ExtRational& r) { return r.infinite ? "inf" : to_string(r.value); }

[[nodiscard]] inline double to_double(const ExtRational& r) {
  return r.infinite ? std::numeric_limits<double>::infinity() : to_double(r.value);
}

/// num/den as an extended value; den == 0 means +infinity (num > 0) by convention.
[[nodiscard]] inline ExtRational ext_ratio(const Rational& num, const Rational& den) {
  if (den == 0) return ExtRational::infinity();
  return ExtRational::finite(num / den);
}

[[nodiscard]] inline Int gcd_all(std::span<const Int> xs, Int seed = 0) {
  for (const auto& x : xs) seed = boost::multiprecision::gcd(seed, x);
  return seed;
}

/// Brings rationals to integer numerators over their least common denominator.
[[nodiscard]] inline std::vector<Int> common_numerators(std::span<const Rational> xs, Int& denom_out) {
  Int l = 1;
  for (const auto& x : xs) {
    Int d = boost::multiprecision::denominator(x);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<Int> nums;
  nums.reserve(xs.size());
  for (const auto& x : xs) {
    nums.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
  }
  denom_out = l;
  return nums;
}

/// 64-bit FNV-1a, used as a stable content digest for report inputs.
[[nodiscard]] inline std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ltcg
