#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ltcg/codes.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/numeric.hpp"

namespace ltcg {

/// Coordinate permutation: coordinate i moves to position perm[i].
using Permutation = std::vector<std::uint32_t>;

[[nodiscard]] inline BitVec permute(const BitVec& v, const Permutation& p) {
  BitVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.get(i)) out.set(p[i], true);
  }
  return out;
}

[[nodiscard]] inline bool preserves(const LinearCode& c, const Permutation& p) {
  for (const auto& row : c.gen().rows()) {
    if (!c.contains(permute(row, p))) return false;
  }
  return true;
}

namespace detail {

inline bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

// Permutation induced by a linear map of the syndrome space that carries the column multiset to
// itself; repeated columns are matched in index order. Empty when the map does not permute it.
inline Permutation column_permutation(const std::vector<Element>& cols, const std::vector<Element>& image) {
  std::vector<std::size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
  std::vector<std::size_t> used(cols.size(), 0);
  Permutation p(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto lo = std::lower_bound(order.begin(), order.end(), image[i],
                               [&](std::size_t idx, Element v) { return cols[idx] < v; });
    auto hi = std::upper_bound(order.begin(), order.end(), image[i],
                               [&](Element v, std::size_t idx) { return v < cols[idx]; });
    const auto pos = static_cast<std::size_t>(lo - order.begin());
    const auto count = static_cast<std::size_t>(hi - lo);
    if (used[pos] >= count) return {};
    p[i] = static_cast<std::uint32_t>(order[pos + used[pos]]);
    ++used[pos];
  }
  return p;
}

}  // namespace detail

/// Some automorphisms of the code, found by testing candidate generators: transpositions, the
/// cyclic shift, transvections of the syndrome space that permute the parity-check columns, and
/// (for n a power of two) affine maps of the coordinate index bits. Not a full automorphism group.
[[nodiscard]] inline std::vector<Permutation> find_automorphisms(const LinearCode& c) {
  const std::size_t n = c.n();
  std::vector<Permutation> found;
  auto consider = [&](Permutation p) {
    if (p.empty() || detail::is_identity(p)) return;
    if (std::find(found.begin(), found.end(), p) != found.end()) return;
    if (preserves(c, p)) found.push_back(std::move(p));
  };
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0U);
  if (c.k() == 0 || c.h() == 0) {
    // every permutation preserves {0} and F2^n
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Permutation p = id;
      std::swap(p[i], p[i + 1]);
      found.push_back(std::move(p));
    }
    return found;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Permutation p = id;
      std::swap(p[i], p[j]);
      consider(std::move(p));
    }
  }
  {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % n);
    consider(std::move(p));
  }
  if (c.h() <= kMaxGroupDim) {
    const auto cols = c.unit_syndromes();
    const auto h = static_cast<unsigned>(c.h());
    for (unsigned i = 0; i < h; ++i) {
      for (unsigned j = 0; j < h; ++j) {
        if (i == j) continue;
        std::vector<Element> image(n);
        for (std::size_t q = 0; q < n; ++q) image[q] = cols[q] ^ (((cols[q] >> i) & 1U) << j);
        consider(detail::column_permutation(cols, image));
      }
    }
  }
  if (std::has_single_bit(n) && n >= 4) {
    const auto m = static_cast<unsigned>(std::countr_zero(n));
    for (unsigned j = 0; j < m; ++j) {
      Permutation p(n);
      for (std::size_t x = 0; x < n; ++x) p[x] = static_cast<std::uint32_t>(x ^ (std::size_t{1} << j));
      consider(std::move(p));
      for (unsigned i = 0; i < m; ++i) {
        if (i == j) continue;
        Permutation q(n);
        for (std::size_t x = 0; x < n; ++x) q[x] = static_cast<std::uint32_t>(x ^ (((x >> i) & 1U) << j));
        consider(std::move(q));
      }
    }
  }
  return found;
}

/// Partition of F2^h (or of coordinates) into orbits under a group given by generators.
struct Orbits {
  std::vector<std::uint32_t> orbit_of;  // element -> orbit index, orbits numbered by least element
  std::vector<Element> representative;  // least element of each orbit
  std::vector<std::size_t> size;

  [[nodiscard]] std::size_t count() const noexcept { return representative.size(); }
};

namespace detail {

inline Orbits orbits_from_maps(std::size_t universe, const std::vector<std::vector<Element>>& maps) {
  std::vector<std::uint32_t> parent(universe);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& f : maps) {
    for (std::size_t x = 0; x < universe; ++x) {
      const auto a = find(static_cast<std::uint32_t>(x));
      const auto b = find(static_cast<std::uint32_t>(f[x]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  Orbits o;
  o.orbit_of.resize(universe);
  std::vector<std::uint32_t> index(universe, UINT32_MAX);
  for (std::size_t x = 0; x < universe; ++x) {
    const auto r = find(static_cast<std::uint32_t>(x));
    if (index[r] == UINT32_MAX) {
      index[r] = static_cast<std::uint32_t>(o.representative.size());
      o.representative.push_back(r);
      o.size.push_back(0);
    }
    o.orbit_of[x] = index[r];
    ++o.size[index[r]];
  }
  return o;
}

// Extends images of the unit vectors linearly to all of F2^h.
inline std::vector<Element> linear_extension(const std::vector<Element>& basis_images, unsigned h) {
  std::vector<Element> f(std::size_t{1} << h, 0);
  for (std::size_t x = 1; x < f.size(); ++x) {
    const auto low = static_cast<unsigned>(std::countr_zero(x));
    f[x] = f[x & (x - 1)] ^ basis_images[low];
  }
  return f;
}

}  // namespace detail

/// Orbits on syndromes (cosets of C); each permutation acts by s(v) -> s(perm v).
[[nodiscard]] inline Orbits coset_orbits(const LinearCode& c, const std::vector<Permutation>& gens) {
  const auto h = static_cast<unsigned>(c.h());
  require(h <= kMaxGroupDim, ErrorKind::TooLarge, "orbits need n - k <= 24");
  std::vector<std::vector<Element>> maps;
  for (const auto& p : gens) {
    std::vector<Element> img(h);
    for (unsigned j = 0; j < h; ++j) img[j] = c.syndrome(permute(c.coset_representative(Element{1} << j), p));
    maps.push_back(detail::linear_extension(img, h));
  }
  return detail::orbits_from_maps(std::size_t{1} << h, maps);
}

/// Orbits on dual codewords, addressed by dual coordinates.
[[nodiscard]] inline Orbits dual_orbits(const LinearCode& c, const std::vector<Permutation>& gens) {
  const auto h = static_cast<unsigned>(c.h());
  require(h <= kMaxGroupDim, ErrorKind::TooLarge, "orbits need n - k <= 24");
  std::vector<std::vector<Element>> maps;
  for (const auto& p : gens) {
    std::vector<Element> img(h);
    for (unsigned j = 0; j < h; ++j) img[j] = c.dual_coordinates(permute(c.dual_word(Element{1} << j), p));
    maps.push_back(detail::linear_extension(img, h));
  }
  return detail::orbits_from_maps(std::size_t{1} << h, maps);
}

[[nodiscard]] inline Orbits coordinate_orbits(std::size_t n, const std::vector<Permutation>& gens) {
  std::vector<std::vector<Element>> maps;
  for (const auto& p : gens) maps.emplace_back(p.begin(), p.end());
  return detail::orbits_from_maps(n, maps);
}

}  // namespace ltcg
