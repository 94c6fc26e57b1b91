#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltcg/cayley.hpp"
#include "ltcg/codes.hpp"
#include "ltcg/corpus.hpp"
#include "ltcg/embed.hpp"
#include "ltcg/error.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/io.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/spectrum.hpp"
#include "ltcg/testers.hpp"

namespace ltcg::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";

/// Exit statuses.
inline constexpr int kPass = 0;
inline constexpr int kUsage = 1;
inline constexpr int kViolated = 2;

/// Rationals are accepted as "p/q", integers, or finite decimals ("0.125").
[[nodiscard]] inline Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  require(!frac.empty() && frac.find_first_not_of("0123456789") == std::string::npos, ErrorKind::Parse,
          "bad number '" + text + "'");
  const bool neg = !whole.empty() && whole[0] == '-';
  const Rational w = whole.empty() || whole == "-" || whole == "+" ? Rational(0) : parse_rational(whole);
  const Rational f(Int(frac), boost::multiprecision::pow(Int(10), static_cast<unsigned>(frac.size())));
  return neg ? Rational(w - f) : Rational(w + f);
}

namespace detail {

inline std::string bits(Element x, unsigned h) { return BitVec::from_element(x, h).to_string(); }

inline Json support_json(const Tester& t) {
  Json a = Json::array();
  for (std::size_t i = 0; i < t.support().size(); ++i) {
    a.push_back({{"p", to_string(t.probability(i))}, {"word", t.support()[i].word.to_string()}});
  }
  return a;
}

inline Json report_json(const TesterReport& r, unsigned h) {
  Json j{{"epsilon", to_string(r.epsilon)}, {"delta", to_string(r.delta)}, {"ratio", to_string(r.ratio)}};
  if (r.cap) j["cap"] = *r.cap;
  if (r.binding) j["binding_syndrome"] = bits(*r.binding, h);
  return j;
}

inline Json distortion_json(const DistortionReport& r) {
  return {{"max_stretch", to_string(r.max_stretch)},
          {"min_stretch", to_string(r.min_stretch)},
          {"distortion", to_string(r.distortion)},
          {"shift_averaged", r.shift_averaged}};
}

inline Json sg_json(const SGReport& r) {
  Json large = Json::array();
  for (auto i : r.large_witnesses) large.push_back(i);
  Json decay = Json::array();
  for (auto a : r.decay_witnesses) decay.push_back(a);
  return {{"mu", to_string(r.mu)},
          {"nu", to_string(r.nu)},
          {"d", r.d},
          {"width", r.width},
          {"spanning", r.spanning},
          {"independence", r.independence_ok},
          {"large_eigenvalues", r.large_ok},
          {"spectral_decay", r.decay_ok},
          {"large_witnesses", large},
          {"decay_witnesses", decay},
          {"decay_failures", r.decay_failures},
          {"mu_min", to_string(r.mu_min)},
          {"nu_max", to_string(r.nu_max)},
          {"exact", r.exact},
          {"is_spectrum_generator", r.pass()}};
}

}  // namespace detail

/// Result of one command: `pass` is false only when a checked identity fails.
struct Outcome {
  Json results = Json::object();
  bool pass = true;
};

/// Options shared by all subcommands plus the per-command ones.
struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  bool exact = false;
  bool flt = false;
  std::optional<std::size_t> cap;
  std::size_t ell = 2;
  std::optional<std::string> c;
  std::optional<std::string> mu;
  std::optional<std::string> nu;
  std::optional<std::size_t> d;
  unsigned h = 6;
  std::size_t degree = 1;
  std::size_t trials = 200;
  std::size_t sets = 1000;
  std::optional<std::string> out;
  std::vector<std::string> files;
  std::string mode;
};

/// Loads inputs and records each file's digest for the report.
class Session {
 public:
  Json inputs = Json::array();

  std::string read(const std::filesystem::path& p) {
    std::string text = io::read_file(p);
    inputs.push_back({{"path", p.string()}, {"fnv1a64", io::digest(text)}});
    return text;
  }

  LinearCode code(const std::string& p) { return io::parse_code(read(p)); }
  CayleyGraph graph(const std::string& p) { return io::parse_graph(read(p)); }
  SpectrumGenerator sg(const std::string& p) { return io::parse_sg(read(p)); }
  CutEmbedding embedding(const std::string& p) { return io::parse_embedding(read(p)); }

  io::TesterFile tester(const std::string& p) {
    const std::filesystem::path path(p);
    const auto dir = path.parent_path();
    return io::parse_tester(read(path), [&](const std::string& cp) {
      const std::filesystem::path c(cp);
      return code((c.is_absolute() ? c : dir / c).string());
    });
  }
};

namespace commands {

inline LpMode lp_mode(const Options& o) { return o.exact ? LpMode::Exact : o.flt ? LpMode::Float : LpMode::Auto; }

inline std::filesystem::path with_suffix(const std::string& prefix, const char* suffix) {
  return std::filesystem::path(prefix + suffix);
}

// PREFIX.code and PREFIX.tester, the tester naming the code file by its base name.
inline void write_code_and_tester(const std::string& prefix, const Tester& t, Json& results) {
  const auto code_path = with_suffix(prefix, ".code");
  const auto tester_path = with_suffix(prefix, ".tester");
  io::write_file(code_path, io::serialize_code(t.code()));
  io::write_file(tester_path, io::serialize_tester(t, code_path.filename().string()));
  results["written"] = {code_path.string(), tester_path.string()};
}

inline Outcome code_info(Session& s, const Options& o) {
  const LinearCode c = s.code(o.files.at(0));
  Outcome r;
  r.results = {{"n", c.n()}, {"k", c.k()}, {"h", c.h()}, {"d", min_distance(c)}, {"dual_d", dual_distance(c)}};
  if (c.h() <= kMaxGroupDim) r.results["t"] = coset_table(c).covering_radius();
  return r;
}

inline Outcome tester_info(Session& s, const Options& o) {
  const auto tf = s.tester(o.files.at(0));
  const Tester& t = tf.tester;
  const auto tbl = coset_table(t.code());
  const auto rep = soundness(t, tbl, o.cap);
  Outcome r;
  r.results = detail::report_json(rep, tbl.h());
  r.results["support"] = detail::support_json(t);
  // delta <= epsilon and delta <= 1/t are asserted inside soundness()
  return r;
}

inline Outcome boost_cmd(Session& s, const Options& o) {
  const auto tf = s.tester(o.files.at(0));
  const Tester& t = tf.tester;
  const auto tbl = coset_table(t.code());
  const std::size_t ell = o.ell;
  const auto before = soundness(t, tbl);
  const auto profile = rejection_profile(t);
  const auto closed = boosted_profile(profile, ell);
  Outcome r;
  r.results["ell"] = ell;
  r.results["before"] = detail::report_json(before, tbl.h());

  // closed form against the explicit convolution, when the convolution is affordable
  if (t.code().h() <= kMaxExplicitBoostDim) {
    const Tester b = ltcg::boost(t, ell);
    const auto explicit_profile = rejection_profile(b);
    bool same = true;
    for (Element x = 0; x < closed.numer.size(); ++x) same = same && explicit_profile.at(x) == closed.at(x);
    r.results["closed_form_matches"] = same;
    r.pass = r.pass && same;
    const auto after = soundness(b, tbl);
    r.results["after"] = detail::report_json(after, tbl.h());
    r.results["support"] = detail::support_json(b);

    // the lemma's premise: ell <= 1 / (4 max Rej)
    Rational max_rej = 0;
    for (Element x = 0; x < profile.numer.size(); ++x) max_rej = std::max(max_rej, profile.at(x));
    const bool premise = max_rej == 0 || Rational(ell) * 4 * max_rej <= 1;
    r.results["premise"] = premise;
    if (premise) {
      const bool eps_ok = after.epsilon <= ell * before.epsilon;
      const bool delta_ok = 2 * after.delta >= ell * before.delta;
      r.results["epsilon_bound"] = eps_ok;
      r.results["delta_bound"] = delta_ok;
      r.pass = r.pass && eps_ok && delta_ok;
    }
    if (o.out) write_code_and_tester(*o.out, b, r.results);
  } else {
    r.results["closed_form_only"] = true;
  }
  return r;
}

inline Outcome covradius_boost_cmd(Session& s, const Options& o) {
  const auto tf = s.tester(o.files.at(0));
  const Tester& t = tf.tester;
  const auto tbl = coset_table(t.code());
  Rational c;
  if (o.c) {
    c = parse_number(*o.c);
  } else {
    // the tester's own distortion always satisfies the premise delta >= epsilon / c
    const auto rep = soundness(t, tbl);
    require(!rep.ratio.infinite, ErrorKind::PremiseViolated, "tester has delta = 0");
    c = rep.ratio.value;
  }
  const auto cb = covradius_boost(t, tbl, c);
  Outcome r;
  r.results = {{"c", to_string(c)},
               {"t", tbl.covering_radius()},
               {"ell", cb.ell},
               {"target_epsilon", to_string(cb.target_epsilon)},
               {"target_delta", to_string(cb.target_delta)},
               {"before", detail::report_json(cb.before, tbl.h())},
               {"after", detail::report_json(cb.after, tbl.h())}};
  const auto profile = rejection_profile(cb.tester);
  Json rej = Json::array();
  for (Element x = 1; x < profile.numer.size(); ++x) rej.push_back(to_string(profile.at(x)));
  r.results["rejection"] = rej;
  r.pass = cb.after.epsilon <= cb.target_epsilon && cb.after.delta >= cb.target_delta;
  if (o.out) write_code_and_tester(*o.out, cb.tester, r.results);
  return r;
}

inline Outcome optimal_tester_cmd(Session& s, const Options& o) {
  const LinearCode c = s.code(o.files.at(0));
  const auto tbl = coset_table(c);
  const auto opt = optimal_tester(tbl, lp_mode(o));
  const auto rep = soundness(opt.tester, tbl);
  Outcome r;
  r.results = detail::report_json(rep, tbl.h());
  r.results["ratio"] = to_string(opt.ratio);
  r.results["ratio_float"] = opt.ratio_float;
  r.results["certified"] = opt.certified;
  r.results["exact_solver"] = opt.exact_solver;
  r.results["weight_classes"] = opt.weight_classes;
  r.results["pivots"] = opt.pivots;
  r.results["support"] = detail::support_json(opt.tester);
  // an exact certificate must agree with the tester it describes
  if (opt.certified) r.pass = !rep.ratio.infinite && rep.ratio.value == opt.ratio;
  if (o.out) write_code_and_tester(*o.out, opt.tester, r.results);
  return r;
}

inline Outcome from_code(Session& s, const Options& o) {
  const LinearCode c = s.code(o.files.at(0));
  const auto g = graph_from_code(c);
  const auto tbl = coset_table(c);
  const auto dist = bfs_metric(g);
  bool same = true;
  for (Element x = 0; x < dist.size(); ++x) same = same && dist[x] == tbl.leader_weight(x);
  Outcome r;
  Json gens = Json::array();
  for (const auto& e : g.entries()) gens.push_back(detail::bits(e.element, g.h()));
  r.results = {{"h", g.h()}, {"generators", gens}, {"metric_matches_coset_weights", same}};
  r.pass = same;
  if (o.out) {
    io::write_file(*o.out, io::serialize_graph(g));
    r.results["written"] = {*o.out};
  }
  return r;
}

inline Outcome to_code(Session& s, const Options& o) {
  const CayleyGraph g = s.graph(o.files.at(0));
  const LinearCode c = code_from_graph(g);
  const bool round_trip = graph_from_code(c) == g;
  Outcome r;
  r.results = {{"n", c.n()}, {"k", c.k()}, {"d", min_distance(c)}, {"round_trip", round_trip}};
  r.pass = round_trip;
  if (o.out) {
    io::write_file(*o.out, io::serialize_code(c));
    r.results["written"] = {*o.out};
  }
  return r;
}

inline Outcome graph_cmd(Session& s, const Options& o) {
  const CayleyGraph g = s.graph(o.files.at(0));
  Outcome r;
  r.results["h"] = g.h();
  if (o.mode == "spectrum") {
    const auto sp = spectrum(g);
    Json values = Json::array();
    bool in_range = true;
    for (Element b = 0; b < sp.values.size(); ++b) {
      if (sp.exact()) {
        const Rational l = sp.lambda(b);
        in_range = in_range && l >= -1 && l <= 1;
        values.push_back(to_string(l));
      } else {
        in_range = in_range && sp.value(b) >= -1 - 1e-12 && sp.value(b) <= 1 + 1e-12;
        values.push_back(sp.value(b));
      }
    }
    const bool unit = sp.exact() ? sp.lambda(0) == 1 : std::abs(sp.value(0) - 1) <= 1e-12;
    r.results["exact"] = sp.exact();
    r.results["lambda"] = values;
    r.pass = in_range && unit;
  } else {
    const auto dist = bfs_metric(g);
    std::uint32_t diameter = 0;
    for (auto v : dist) diameter = std::max(diameter, v);
    r.results["diameter"] = diameter;
    r.results["distance"] = dist;
  }
  return r;
}

inline Rational required(const std::optional<std::string>& v, const char* name) {
  require(v.has_value(), ErrorKind::InvalidArgument, std::string("missing --") + name);
  return parse_number(*v);
}

inline Outcome verify_sg_cmd(Session& s, const Options& o) {
  const CayleyGraph g = s.graph(o.files.at(0));
  const SpectrumGenerator b = s.sg(o.files.at(1));
  require(o.d.has_value(), ErrorKind::InvalidArgument, "missing --d");
  const auto rep = verify_sg(g, b, required(o.mu, "mu"), required(o.nu, "nu"), *o.d);
  Outcome r;
  r.results = detail::sg_json(rep);
  if (rep.pass()) {
    // a spectrum generator yields a (mu/2, nu/2)-tester
    const auto back = ltc_from_sg(g, b);
    const auto trep = soundness(back.tester, coset_table(back.tester.code()));
    const bool eps_ok = 2 * trep.epsilon <= rep.mu;
    const bool delta_ok = 2 * trep.delta >= rep.nu;
    r.results["tester"] = detail::report_json(trep, b.h);
    r.results["epsilon_le_mu_half"] = eps_ok;
    r.results["delta_ge_nu_half"] = delta_ok;
    r.pass = eps_ok && delta_ok;
  }
  return r;
}

inline Outcome sg_from_ltc_cmd(Session& s, const Options& o) {
  const auto tf = s.tester(o.files.at(0));
  const auto sg = sg_from_ltc(tf.tester);
  Outcome r;
  r.results = {{"h", sg.graph.h()},
               {"n", sg.generator.n()},
               {"distance", sg.distance},
               {"tester", detail::report_json(sg.tester_report, sg.graph.h())},
               {"report", detail::sg_json(sg.report)}};
  const auto back = ltc_from_sg(sg.graph, sg.generator);
  // generator bases may differ; the parity check and the tester file may not
  const bool round_trip = back.tester.code().pcheck() == tf.tester.code().pcheck() &&
                          io::serialize_tester(back.tester, tf.code_path) == io::serialize_tester(tf.tester, tf.code_path);
  r.results["round_trip"] = round_trip;
  r.pass = sg.report.pass() && round_trip;
  if (o.out) {
    const auto gp = with_suffix(*o.out, ".graph");
    const auto bp = with_suffix(*o.out, ".sg");
    io::write_file(gp, io::serialize_graph(sg.graph));
    io::write_file(bp, io::serialize_sg(sg.generator));
    r.results["written"] = {gp.string(), bp.string()};
  }
  return r;
}

inline Outcome ltc_from_sg_cmd(Session& s, const Options& o) {
  const CayleyGraph g = s.graph(o.files.at(0));
  const SpectrumGenerator b = s.sg(o.files.at(1));
  const auto lt = ltc_from_sg(g, b);
  const auto tbl = coset_table(lt.tester.code());
  const auto rep = soundness(lt.tester, tbl);
  const std::size_t width = b.width();
  Outcome r;
  r.results = {{"n", lt.tester.code().n()},
               {"k", lt.tester.code().k()},
               {"d", lt.distance},
               {"width", width},
               {"tester", detail::report_json(rep, tbl.h())},
               {"support", detail::support_json(lt.tester)}};
  // distance equals the independence width of the functionals
  r.pass = lt.distance == width;
  r.results["distance_equals_width"] = r.pass;
  if (o.mu && o.nu && o.d) {
    const auto sg = verify_sg(g, b, parse_number(*o.mu), parse_number(*o.nu), *o.d);
    r.results["is_spectrum_generator"] = sg.pass();
    if (sg.pass()) {
      const bool ok = 2 * rep.epsilon <= sg.mu && 2 * rep.delta >= sg.nu;
      r.results["tester_bounds"] = ok;
      r.pass = r.pass && ok;
    }
  }
  if (o.out) write_code_and_tester(*o.out, lt.tester, r.results);
  return r;
}

inline Outcome sse_probe(Session& s, const Options& o) {
  const CayleyGraph g = s.graph(o.files.at(0));
  const SpectrumGenerator b = s.sg(o.files.at(1));
  require(o.d.has_value(), ErrorKind::InvalidArgument, "missing --d");
  const auto sets = sample_sets(g.h(), o.sets, o.seed);
  const auto chk = sse_bound_check(g, b, required(o.mu, "mu"), required(o.nu, "nu"), *o.d, sets);
  Outcome r;
  r.results = {{"sets", chk.sets}, {"vacuous", chk.vacuous}, {"nonvacuous", chk.nonvacuous},
               {"violations", chk.violations}};
  if (chk.nonvacuous) r.results["min_slack"] = chk.min_slack;
  if (chk.witness) r.results["witness_set"] = sets[*chk.witness];
  r.pass = chk.pass();
  return r;
}

inline Outcome hypercon(Session& s, const Options& o) {
  SpectrumGenerator b;
  if (!o.files.empty()) {
    b = s.sg(o.files.at(0));
  } else {
    std::vector<Element> basis;
    for (unsigned i = 0; i < o.h; ++i) basis.push_back(Element{1} << i);
    b = SpectrumGenerator::make(o.h, std::move(basis));
  }
  const auto chk = hypercontractivity_check(b, o.degree, o.trials, o.seed);
  Outcome r;
  r.results = {{"h", b.h},
               {"d", o.degree},
               {"trials", chk.trials},
               {"monomials", chk.monomials},
               {"bound", chk.bound},
               {"max_ratio", chk.max_ratio},
               {"max_parseval_error", chk.max_parseval_error},
               {"violations", chk.violations},
               {"parseval_failures", chk.parseval_failures}};
  if (chk.witness) r.results["witness_trial"] = *chk.witness;
  r.pass = chk.pass();
  return r;
}

inline Outcome distortion_cmd(Session& s, const Options& o) {
  const CutEmbedding e = s.embedding(o.files.at(0));
  const CayleyGraph g = s.graph(o.files.at(1));
  const auto rep = distortion(e, g);
  Outcome r;
  r.results = detail::distortion_json(rep);
  // a finite distortion is at least 1
  r.pass = rep.distortion.infinite || rep.distortion.value >= 1;
  return r;
}

inline Outcome linearize_cmd(Session& s, const Options& o) {
  const CutEmbedding e = s.embedding(o.files.at(0));
  const LinearCode c = s.code(o.files.at(1));
  const auto tbl = coset_table(c);
  const auto lin = linearize(e, tbl);
  Outcome r;
  r.results = {{"before", detail::distortion_json(lin.before)},
               {"after", detail::distortion_json(lin.after)},
               {"support", detail::support_json(lin.tester)}};
  r.pass = lin.holds();
  if (o.out) write_code_and_tester(*o.out, lin.tester, r.results);
  return r;
}

inline Outcome kn_bound(Session& s, const Options& o) {
  const LinearCode c = s.code(o.files.at(0));
  const auto tbl = coset_table(c);
  const auto kn = khot_naor_bound(tbl);
  Outcome r;
  r.results = {{"bound", to_string(kn.bound)},
               {"dual_d", kn.dual_distance},
               {"t", kn.covering_radius},
               {"asymptotic", kn.asymptotic}};
  if (c.h() <= kMaxLpDim) {
    const auto opt = optimal_tester(tbl, lp_mode(o));
    r.results["optimum"] = to_string(opt.ratio);
    r.results["certified"] = opt.certified;
    if (opt.certified) r.pass = kn.bound <= opt.ratio;
  }
  return r;
}

inline Outcome basis_bound(Session& s, const Options& o) {
  const auto tf = s.tester(o.files.at(0));
  const auto bb = basis_tester_bound(tf.tester, coset_table(tf.tester.code()));
  Outcome r;
  r.results = {{"ratio", to_string(bb.ratio)}, {"bound", to_string(bb.bound)}};
  r.pass = bb.holds();
  return r;
}

inline Outcome corpus_cmd(Session&, const Options& o) {
  const std::filesystem::path dir(o.files.at(0));
  const auto files = write_corpus(dir);
  Outcome r;
  Json list = Json::array();
  for (const auto& f : files) list.push_back({{"path", (dir / f).string()}, {"fnv1a64", io::digest(io::read_file(dir / f))}});
  r.results["files"] = list;
  return r;
}

}  // namespace commands

/// Runs one invocation (args excludes the program name). Prints the JSON report on `out`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally testable codes and Cayley graphs over F2^h", "ltcg"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json"}));
  app.add_option("--seed", o.seed, "random seed");
  auto* exact = app.add_flag("--exact", o.exact, "force exact LP arithmetic");
  auto* flt = app.add_flag("--float", o.flt, "force double-precision LP");
  exact->excludes(flt);
  app.add_option("--cap", o.cap, "capped soundness: divide by min(d(v,C), cap)");

  using Handler = std::function<Outcome(Session&, const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, std::size_t nfiles, const char* files_help, Handler h) {
    CLI::App* c = app.add_subcommand(name, help);
    c->fallthrough();
    if (nfiles > 0) c->add_option("files", o.files, files_help)->required()->expected(static_cast<int>(nfiles));
    subs.emplace_back(c, std::move(h));
    return c;
  };

  sub("code-info", "code parameters", 1, "code file", commands::code_info);
  sub("tester-info", "smoothness, soundness and support of a tester", 1, "tester file", commands::tester_info);
  sub("boost", "l-fold XOR convolution of a tester", 1, "tester file", commands::boost_cmd)
      ->add_option("--ell", o.ell, "number of summed samples")
      ->check(CLI::PositiveNumber);
  auto* cov = sub("covradius-boost", "boost to smoothness 1/(4t)", 1, "tester file", commands::covradius_boost_cmd);
  cov->add_option("--c", o.c, "distortion bound (default: the tester's own ratio)");
  sub("optimal-tester", "LP-optimal tester and the l1 distortion of the coset graph", 1, "code file",
      commands::optimal_tester_cmd);
  sub("from-code", "coset graph of a code", 1, "code file", commands::from_code);
  sub("to-code", "code of a generator multiset", 1, "graph file", commands::to_code);
  auto* graph = app.add_subcommand("graph", "spectrum or metric of a Cayley graph");
  graph->fallthrough();
  graph->add_option("mode", o.mode, "spectrum | metric")->required()->check(CLI::IsMember({"spectrum", "metric"}));
  graph->add_option("file", o.files, "graph file")->required()->expected(1);
  subs.emplace_back(graph, commands::graph_cmd);
  auto* vsg = sub("verify-sg", "check the spectrum-generator conditions", 2, "graph file, sg file", commands::verify_sg_cmd);
  sub("sg-from-ltc", "spectrum generator of a tester's Cayley graph", 1, "tester file", commands::sg_from_ltc_cmd);
  auto* lfs = sub("ltc-from-sg", "code and tester from a spectrum generator", 2, "graph file, sg file",
                  commands::ltc_from_sg_cmd);
  auto* sse = sub("sse-probe", "small-set expansion against the hypercontractive bound", 2, "graph file, sg file",
                  commands::sse_probe);
  for (auto* c : {vsg, lfs, sse}) {
    c->add_option("--mu", o.mu, "large-eigenvalue slack");
    c->add_option("--nu", o.nu, "spectral-decay rate");
    c->add_option("--d", o.d, "independence width");
  }
  sse->add_option("--sets", o.sets, "number of sampled sets");
  auto* hyp = app.add_subcommand("hypercon", "fourth-moment bound for low-degree polynomials");
  hyp->fallthrough();
  hyp->set_help_flag("--help", "print this help message and exit");  // frees -h for --h
  hyp->add_option("sg", o.files, "sg file (default: standard basis of F2^h)")->expected(0, 1);
  hyp->add_option("--h", o.h, "dimension for the standard basis")->check(CLI::Range(1U, 20U));
  hyp->add_option("--d", o.degree, "degree");
  hyp->add_option("--trials", o.trials, "random polynomials");
  subs.emplace_back(hyp, commands::hypercon);
  sub("distortion", "distortion of a cut embedding", 2, "embedding file, graph file", commands::distortion_cmd);
  sub("linearize", "tester from the Fourier mass of an embedding", 2, "embedding file, code file",
      commands::linearize_cmd);
  sub("kn-bound", "lower bound (d-perp/n) t on the distortion", 1, "code file", commands::kn_bound);
  sub("basis-bound", "ratio against kd/3n for a basis tester", 1, "tester file", commands::basis_bound);
  sub("corpus", "write the standard codes and testers", 1, "output directory", commands::corpus_cmd);
  for (auto& [c, h] : subs) c->add_option("--out", o.out, "output file or prefix");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  for (auto& [c, handler] : subs) {
    if (!c->parsed()) continue;
    Session session;
    try {
      const auto outcome = handler(session, o);
      Json report{{"schema", kSchema},
                  {"command", c->get_name()},
                  {"inputs", session.inputs},
                  {"results", outcome.results},
                  {"pass", outcome.pass}};
      out << report.dump(2) << "\n";
      if (!outcome.pass) err << "ltcg: identity check failed\n";
      return outcome.pass ? kPass : kViolated;
    } catch (const Error& e) {
      err << "ltcg: " << e.what() << "\n";
      return kUsage;
    } catch (const InvariantViolation& e) {
      err << "ltcg: " << e.what() << "\n";
      return kViolated;
    } catch (const std::exception& e) {
      err << "ltcg: " << e.what() << "\n";
      return kUsage;
    }
  }
  return kUsage;
}

}  // namespace ltcg::cli
