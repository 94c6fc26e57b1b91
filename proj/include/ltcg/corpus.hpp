#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ltcg/cayley.hpp"
#include "ltcg/codes.hpp"
#include "ltcg/io.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/testers.hpp"

namespace ltcg {

struct NamedCode {
  std::string name;
  LinearCode code;
};

struct NamedTester {
  std::string name;  // "<code>.<kind>"
  std::string code_name;
  Tester tester;
};

/// The standard zoo. Random codes are kept at n - k <= 8 so every exact check stays fast.
[[nodiscard]] inline std::vector<NamedCode> corpus_codes() {
  return {
      {"rep2", repetition_code(2)},
      {"rep3", repetition_code(3)},
      {"rep4", repetition_code(4)},
      {"parity4", parity_code(4)},
      {"hamming74", hamming_code(3)},
      {"exthamming84", extended_hamming_code()},
      {"rm13", reed_muller_code(1, 3)},
      {"rm14", reed_muller_code(1, 4)},
      {"rm24", reed_muller_code(2, 4)},
      {"rand10_4", random_code(10, 4, 1)},
      {"rand12_5", random_code(12, 5, 2)},
      {"rand12_4", random_code(12, 4, 3)},
  };
}

/// Nonzero dual codewords in dual-coordinate order.
[[nodiscard]] inline std::vector<BitVec> nonzero_dual_words(const LinearCode& c) {
  require(c.h() <= kMaxExactDim, ErrorKind::TooLarge, "dual enumeration needs n - k <= 20");
  std::vector<BitVec> out;
  for (Element a = 1; a < (Element{1} << c.h()); ++a) out.push_back(c.dual_word(a));
  return out;
}

[[nodiscard]] inline std::vector<BitVec> min_weight_dual_words(const LinearCode& c) {
  auto all = nonzero_dual_words(c);
  std::size_t best = c.n() + 1;
  for (const auto& w : all) best = std::min(best, w.weight());
  std::vector<BitVec> out;
  for (auto& w : all) {
    if (w.weight() == best) out.push_back(std::move(w));
  }
  return out;
}

/// Canonical testers of a code (none when the dual is {0}):
///   min   uniform over minimum-weight dual words
///   all   uniform over all nonzero dual words
///   dil   "all" mixed with the zero word down to smoothness 1/16 (unchanged if already below)
///   basis uniform over the parity-check rows
[[nodiscard]] inline std::vector<NamedTester> canonical_testers(const NamedCode& nc) {
  const LinearCode& c = nc.code;
  std::vector<NamedTester> out;
  if (c.h() == 0) return out;
  out.push_back({nc.name + ".min", nc.name, Tester::uniform(c, min_weight_dual_words(c))});
  Tester all = Tester::uniform(c, nonzero_dual_words(c));
  const Rational eps = smoothness(all);
  const Rational p = std::min(Rational(1), Rational(1) / (16 * eps));
  out.push_back({nc.name + ".all", nc.name, all});
  out.push_back({nc.name + ".dil", nc.name, all.diluted(p)});
  out.push_back({nc.name + ".basis", nc.name, Tester::uniform(c, c.pcheck().rows())});
  return out;
}

[[nodiscard]] inline std::vector<NamedTester> corpus_testers() {
  std::vector<NamedTester> out;
  for (const auto& nc : corpus_codes()) {
    for (auto& t : canonical_testers(nc)) out.push_back(std::move(t));
  }
  return out;
}

/// Writes <code>.code, <code>.graph and <code>.<kind>.tester files; returns the file names.
inline std::vector<std::string> write_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    io::write_file(dir / name, text);
    written.push_back(name);
  };
  for (const auto& nc : corpus_codes()) {
    const std::string code_file = nc.name + ".code";
    emit(code_file, io::serialize_code(nc.code));
    if (nc.code.h() >= 1) emit(nc.name + ".graph", io::serialize_graph(graph_from_code(nc.code)));
    for (const auto& t : canonical_testers(nc)) emit(t.name + ".tester", io::serialize_tester(t.tester, code_file));
  }
  return written;
}

}  // namespace ltcg
