#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltcg/cayley.hpp"
#include "ltcg/codes.hpp"
#include "ltcg/embed.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/spectrum.hpp"
#include "ltcg/testers.hpp"

// Text formats. Every format is line based: blank lines and lines starting with '#' are skipped,
// trailing whitespace (including '\r') is ignored. Bit strings list coordinate 0 first; a group
// element of F2^h is written with bit 0 first.
namespace ltcg::io {

[[nodiscard]] inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorKind::Io, "cannot read " + path.string());
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::Io, "cannot create " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  require(out.good(), ErrorKind::Io, "cannot write " + path.string());
}

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
[[nodiscard]] inline std::string digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

namespace detail {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string> tokens;
};

inline std::vector<Line> lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    std::istringstream ss{std::string(raw)};
    Line l{number, {}};
    for (std::string tok; ss >> tok;) l.tokens.push_back(std::move(tok));
    if (l.tokens.empty() || l.tokens[0][0] == '#') continue;
    out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] inline void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

inline void expect_tokens(const Line& l, std::size_t count, const char* shape) {
  if (l.tokens.size() != count) parse_error(l.number, std::string("expected '") + shape + "'");
}

inline std::size_t parse_count(const Line& l, const std::string& tok) {
  if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos) {
    parse_error(l.number, "bad count '" + tok + "'");
  }
  return std::stoul(tok);
}

template <typename F>
auto at_line(const Line& l, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    parse_error(l.number, e.what());
  }
}

inline BitVec parse_bits(const Line& l, const std::string& tok, std::size_t len) {
  if (tok.size() != len) {
    parse_error(l.number, "expected " + std::to_string(len) + " bits, got '" + tok + "'");
  }
  return at_line(l, [&] { return BitVec::from_string(tok); });
}

inline Element parse_element(const Line& l, const std::string& tok, unsigned h) {
  return parse_bits(l, tok, h).to_element();
}

inline Rational parse_probability(const Line& l, const std::string& tok) {
  Rational p = at_line(l, [&] { return parse_rational(tok); });
  if (p < 0 || p > 1) parse_error(l.number, "probability out of range: " + tok);
  return p;
}

inline std::string element_string(Element x, unsigned h) { return BitVec::from_element(x, h).to_string(); }

inline const Line& header(const std::vector<Line>& ls, const char* what) {
  if (ls.empty()) fail(ErrorKind::Parse, std::string("empty ") + what + " file");
  return ls.front();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrix: "nrows ncols", then one 0/1 row per line.

[[nodiscard]] inline BitMatrix parse_matrix(std::string_view text) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "matrix");
  detail::expect_tokens(head, 2, "nrows ncols");
  const std::size_t nrows = detail::parse_count(head, head.tokens[0]);
  const std::size_t ncols = detail::parse_count(head, head.tokens[1]);
  if (ls.size() != nrows + 1) detail::parse_error(head.number, "expected " + std::to_string(nrows) + " rows");
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < nrows; ++r) {
    const auto& l = ls[r + 1];
    detail::expect_tokens(l, 1, "row");
    rows.push_back(detail::parse_bits(l, l.tokens[0], ncols));
  }
  return BitMatrix::from_rows(std::move(rows), ncols);
}

[[nodiscard]] inline std::string serialize_matrix(const BitMatrix& m) {
  std::string out = std::to_string(m.nrows()) + " " + std::to_string(m.ncols()) + "\n";
  for (const auto& r : m.rows()) out += r.to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Code: "code n k", then "gen" or "pcheck", then the rows of that matrix.

[[nodiscard]] inline LinearCode parse_code(std::string_view text) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "code");
  detail::expect_tokens(head, 3, "code n k");
  if (head.tokens[0] != "code") detail::parse_error(head.number, "expected 'code n k'");
  const std::size_t n = detail::parse_count(head, head.tokens[1]);
  const std::size_t k = detail::parse_count(head, head.tokens[2]);
  if (n == 0 || k > n) detail::parse_error(head.number, "need 1 <= n and k <= n");
  if (ls.size() < 2) detail::parse_error(head.number, "missing 'gen' or 'pcheck' line");
  const auto& kind = ls[1];
  detail::expect_tokens(kind, 1, "gen | pcheck");
  MatrixRole role;
  if (kind.tokens[0] == "gen") {
    role = MatrixRole::Generator;
  } else if (kind.tokens[0] == "pcheck") {
    role = MatrixRole::ParityCheck;
  } else {
    detail::parse_error(kind.number, "expected 'gen' or 'pcheck'");
  }
  const std::size_t nrows = role == MatrixRole::Generator ? k : n - k;
  if (ls.size() != nrows + 2) detail::parse_error(kind.number, "expected " + std::to_string(nrows) + " rows");
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < nrows; ++r) {
    const auto& l = ls[r + 2];
    detail::expect_tokens(l, 1, "row");
    rows.push_back(detail::parse_bits(l, l.tokens[0], n));
  }
  BitMatrix m = BitMatrix::from_rows(std::move(rows), n);
  if (nrows == 0) {
    // k = 0 or k = n: the stored matrix is empty, the other one is the identity
    return LinearCode::make(BitMatrix::identity(n), role == MatrixRole::Generator ? MatrixRole::ParityCheck
                                                                                  : MatrixRole::Generator);
  }
  LinearCode c = detail::at_line(kind, [&] { return LinearCode::make(m, role); });
  if (c.k() != k) detail::parse_error(head.number, "rows are dependent: dimension " + std::to_string(c.k()) + ", header says k = " + std::to_string(k));
  return c;
}

[[nodiscard]] inline std::string serialize_code(const LinearCode& c) {
  std::string out = "code " + std::to_string(c.n()) + " " + std::to_string(c.k()) + "\n";
  const MatrixRole role = c.role();
  const BitMatrix& m = role == MatrixRole::Generator ? c.gen() : c.pcheck();
  out += role == MatrixRole::Generator ? "gen\n" : "pcheck\n";
  for (const auto& r : m.rows()) out += r.to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tester: "tester <codefile>", then "p/q word" per support entry.

struct TesterFile {
  std::string code_path;  // as written in the file
  Tester tester;
};

/// `load_code` resolves the path named in the header.
[[nodiscard]] inline TesterFile parse_tester(std::string_view text,
                                             const std::function<LinearCode(const std::string&)>& load_code) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "tester");
  detail::expect_tokens(head, 2, "tester <codefile>");
  if (head.tokens[0] != "tester") detail::parse_error(head.number, "expected 'tester <codefile>'");
  TesterFile out;
  out.code_path = head.tokens[1];
  LinearCode code = load_code(out.code_path);
  if (ls.size() < 2) detail::parse_error(head.number, "tester has no support");
  std::vector<std::pair<BitVec, Rational>> support;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    detail::expect_tokens(l, 2, "p/q word");
    support.emplace_back(detail::parse_bits(l, l.tokens[1], code.n()), detail::parse_probability(l, l.tokens[0]));
  }
  out.tester = detail::at_line(head, [&] { return Tester::from_probabilities(std::move(code), support); });
  return out;
}

[[nodiscard]] inline TesterFile parse_tester_file(const std::filesystem::path& path) {
  const auto dir = path.parent_path();
  return parse_tester(read_file(path), [&](const std::string& p) {
    const std::filesystem::path cp(p);
    return parse_code(read_file(cp.is_absolute() ? cp : dir / cp));
  });
}

[[nodiscard]] inline std::string serialize_tester(const Tester& t, const std::string& code_path) {
  require(!code_path.empty() && code_path.find_first_of(" \t\n") == std::string::npos, ErrorKind::InvalidArgument,
          "code path must be nonempty without whitespace");
  std::string out = "tester " + code_path + "\n";
  for (std::size_t i = 0; i < t.support().size(); ++i) {
    out += to_string(t.probability(i)) + " " + t.support()[i].word.to_string() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph: "cayley h", then "gen bits" lines (a multiset) or "mass p/q bits" lines.

[[nodiscard]] inline CayleyGraph parse_graph(std::string_view text) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "graph");
  detail::expect_tokens(head, 2, "cayley h");
  if (head.tokens[0] != "cayley") detail::parse_error(head.number, "expected 'cayley h'");
  const std::size_t hh = detail::parse_count(head, head.tokens[1]);
  if (hh < 1 || hh > kMaxGroupDim) detail::parse_error(head.number, "need 1 <= h <= 24");
  const auto h = static_cast<unsigned>(hh);
  if (ls.size() < 2) detail::parse_error(head.number, "graph has no edges");
  const bool gens = ls[1].tokens[0] == "gen";
  std::vector<Element> elems;
  std::vector<std::pair<Element, Rational>> masses;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    if (gens) {
      if (l.tokens[0] != "gen") detail::parse_error(l.number, "cannot mix 'gen' and 'mass' lines");
      detail::expect_tokens(l, 2, "gen bits");
      elems.push_back(detail::parse_element(l, l.tokens[1], h));
    } else {
      if (l.tokens[0] != "mass") detail::parse_error(l.number, "expected 'gen bits' or 'mass p/q bits'");
      detail::expect_tokens(l, 3, "mass p/q bits");
      masses.emplace_back(detail::parse_element(l, l.tokens[2], h), detail::parse_probability(l, l.tokens[1]));
    }
  }
  if (gens) return CayleyGraph::from_generators(h, std::move(elems));
  return detail::at_line(head, [&] { return CayleyGraph::from_masses(h, masses); });
}

[[nodiscard]] inline std::string serialize_graph(const CayleyGraph& g) {
  std::string out = "cayley " + std::to_string(g.h()) + "\n";
  for (std::size_t i = 0; i < g.entries().size(); ++i) {
    const auto bits = detail::element_string(g.entries()[i].element, g.h());
    if (g.generator_form()) {
      out += "gen " + bits + "\n";
    } else {
      out += "mass " + to_string(g.probability(i)) + " " + bits + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum generator: "sg h n", then n functionals.

[[nodiscard]] inline SpectrumGenerator parse_sg(std::string_view text) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "spectrum generator");
  detail::expect_tokens(head, 3, "sg h n");
  if (head.tokens[0] != "sg") detail::parse_error(head.number, "expected 'sg h n'");
  const std::size_t hh = detail::parse_count(head, head.tokens[1]);
  const std::size_t n = detail::parse_count(head, head.tokens[2]);
  if (hh < 1 || hh > kMaxGroupDim || n < 1) detail::parse_error(head.number, "need 1 <= h <= 24 and n >= 1");
  if (ls.size() != n + 1) detail::parse_error(head.number, "expected " + std::to_string(n) + " functionals");
  const auto h = static_cast<unsigned>(hh);
  std::vector<Element> b;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    detail::expect_tokens(ls[i], 1, "functional");
    b.push_back(detail::parse_element(ls[i], ls[i].tokens[0], h));
  }
  return SpectrumGenerator::make(h, std::move(b));
}

[[nodiscard]] inline std::string serialize_sg(const SpectrumGenerator& b) {
  std::string out = "sg " + std::to_string(b.h) + " " + std::to_string(b.n()) + "\n";
  for (auto x : b.functionals) out += detail::element_string(x, b.h) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Embedding: "embed h", then "p/q table" with the table a +/- string of length 2^h indexed by
// the vertex (bit 0 of the vertex is its first coordinate).

[[nodiscard]] inline CutEmbedding parse_embedding(std::string_view text) {
  const auto ls = detail::lines(text);
  const auto& head = detail::header(ls, "embedding");
  detail::expect_tokens(head, 2, "embed h");
  if (head.tokens[0] != "embed") detail::parse_error(head.number, "expected 'embed h'");
  const std::size_t hh = detail::parse_count(head, head.tokens[1]);
  if (hh < 1 || hh > kMaxDistortionDim) detail::parse_error(head.number, "need 1 <= h <= 16");
  const std::size_t order = std::size_t{1} << hh;
  if (ls.size() < 2) detail::parse_error(head.number, "embedding has no functions");
  std::vector<std::pair<std::vector<std::uint8_t>, Rational>> fns;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    detail::expect_tokens(l, 2, "p/q table");
    const auto& tab = l.tokens[1];
    if (tab.size() != order) detail::parse_error(l.number, "table must have " + std::to_string(order) + " entries");
    std::vector<std::uint8_t> minus(order);
    for (std::size_t x = 0; x < order; ++x) {
      if (tab[x] != '+' && tab[x] != '-') detail::parse_error(l.number, "table entries must be '+' or '-'");
      minus[x] = tab[x] == '-';
    }
    fns.emplace_back(std::move(minus), detail::parse_probability(l, l.tokens[0]));
  }
  return detail::at_line(head, [&] { return CutEmbedding::from_probabilities(static_cast<unsigned>(hh), fns); });
}

[[nodiscard]] inline std::string serialize_embedding(const CutEmbedding& e) {
  std::string out = "embed " + std::to_string(e.dim()) + "\n";
  for (std::size_t i = 0; i < e.functions().size(); ++i) {
    std::string tab(e.points(), '+');
    const auto& minus = e.functions()[i].minus;
    for (std::size_t x = 0; x < minus.size(); ++x) {
      if (minus[x]) tab[x] = '-';
    }
    out += to_string(e.probability(i)) + " " + tab + "\n";
  }
  return out;
}

}  // namespace ltcg::io
