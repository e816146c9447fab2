#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccc/cli.hpp"
#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/lattice.hpp"
#include "ccc/quantizer.hpp"
#include "ccc/spectrum.hpp"
#include "ccc/uniformity.hpp"

namespace ccc::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json to_json(std::span<const Int> p) { return Json(std::vector<Int>(p.begin(), p.end())); }
Json to_json(const BigInt& v) { return Json(v.str()); }

Json spectrum_json(const SpectrumTable& t) {
  Json rows = Json::array();
  for (const auto& [d2, k] : t.counts) rows.push_back({{"d2", d2}, {"count", k}});
  return rows;
}

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

std::string flat_text(const Json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += scalar_text(v[i]);
  }
  return s + ")";
}

// Indented "key: value" rendering of a JSON result.
void render_human(const Json& v, std::ostream& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (is_flat(val)) {
        out << pad << key << ": " << flat_text(val) << "\n";
      } else if (val.empty()) {
        out << pad << key << ": (empty)\n";
      } else {
        out << pad << key << ":\n";
        render_human(val, out, depth + 1);
      }
    }
    return;
  }
  for (const auto& e : v) {
    if (is_flat(e)) {
      out << pad << "- " << flat_text(e) << "\n";
      continue;
    }
    // Objects in a list print on one line when all members are flat.
    bool one_line = e.is_object();
    for (const auto& [k, x] : e.items()) one_line = one_line && is_flat(x);
    if (one_line) {
      out << pad << "-";
      for (const auto& [k, x] : e.items()) out << " " << k << "=" << flat_text(x);
      out << "\n";
    } else {
      out << pad << "-\n";
      render_human(e, out, depth + 1);
    }
  }
}

struct Options {
  std::string preset;
  std::string chain_path;
  std::string format = "human";
  unsigned threads = 0;
  bool timing = false;

  std::string center;
  Int r2max = 0;
  std::string mode;
  std::string x, y, xp;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int n = 0;
};

struct Outcome {
  Json result;
  int exit = kOk;
  std::optional<SpectrumTable> table;  // for tsv output
  std::string raw;                     // printed verbatim in human mode when set
};

struct Context {
  Context(const Options& o, std::istream& i) : opt(o), in(i) {}

  const Options& opt;
  std::istream& in;
  Json args = Json::object();
  std::optional<CodeChain> chain;
  std::string source;

  const CodeChain& load() {
    if (chain) return *chain;
    if (!opt.preset.empty() && !opt.chain_path.empty()) throw ParseError("give either --preset or a chain file, not both");
    if (!opt.preset.empty()) {
      chain = preset(opt.preset);
      source = "preset:" + opt.preset;
    } else if (opt.chain_path == "-") {
      std::string text(std::istreambuf_iterator<char>(in), {});
      chain = parse_chain(text);
      source = "stdin";
    } else if (!opt.chain_path.empty()) {
      std::ifstream f(opt.chain_path);
      if (!f) throw ParseError("cannot open chain file '" + opt.chain_path + "'");
      std::string text(std::istreambuf_iterator<char>(f), {});
      chain = parse_chain(text);
      source = "file:" + opt.chain_path;
    } else {
      throw ParseError("no chain given; use --preset NAME or a chain file path ('-' for stdin)");
    }
    return *chain;
  }
};

Json chain_summary(const CodeChain& chain) {
  return {{"n", chain.length()},
          {"L", chain.levels()},
          {"modulus", chain.modulus()},
          {"residue_count", chain.residue_count()}};
}

Json witness_pair(const std::optional<std::pair<Point, Point>>& w) {
  if (!w) return nullptr;
  return {{"s", to_json(w->first)}, {"t", to_json(w->second)}, {"sum", to_json(add(w->first, w->second))}};
}

Json schur_json(const SchurClosure& s) {
  if (!s.witness) return nullptr;
  return {{"level", s.witness->level},
          {"x", s.witness->x.to_string()},
          {"y", s.witness->y.to_string()},
          {"product", schur(s.witness->x, s.witness->y).to_string()}};
}

Json eds_witness_json(const std::optional<EdsWitness>& w) {
  if (!w) return nullptr;
  return {{"center", to_json(w->center)},
          {"other", to_json(w->other)},
          {"d2", w->d2},
          {"count_center", w->count_center},
          {"count_other", w->count_other}};
}

Outcome cmd_info(Context& ctx) {
  const CodeChain& chain = ctx.load();
  Outcome o;
  o.result = chain_summary(chain);
  Json codes = Json::array();
  for (int lv = 0; lv < chain.levels(); ++lv) {
    const auto& c = chain.code(lv);
    const bool lin = is_linear(c);
    codes.push_back({{"level", lv + 1}, {"size", c.size()}, {"linear", lin}, {"dimension", lin ? Json(c.dimension()) : Json(nullptr)}});
  }
  o.result["codes"] = std::move(codes);
  o.result["all_linear"] = chain.all_linear();
  o.result["nested"] = chain.nested();
  if (chain.all_linear() && chain.nested()) {
    o.result["schur_closed"] = schur_closed_chain(chain).closed;
  } else {
    o.result["schur_closed"] = nullptr;
  }
  return o;
}

Outcome cmd_lattice(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const DirectLatticeTest t = is_lattice_direct(chain);
  Outcome o;
  o.result = {{"is_lattice", t.is_lattice}, {"witness", witness_pair(t.witness)}};
  o.exit = t.is_lattice ? kOk : kRefuted;
  return o;
}

Outcome cmd_theorem1(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const Theorem1Report r = theorem1_report(chain);
  Outcome o;
  o.result = {{"is_lattice", r.is_lattice},
              {"equals_lambda_c", r.equals_lambda_c},
              {"schur_closed", r.schur_closed},
              {"equals_lambda_d", r.equals_lambda_d},
              {"consistent", r.consistent()},
              {"nested", r.nested},
              {"residue_count", r.residue_count},
              {"det_lambda_c", to_json(r.det_lambda_c)},
              {"det_lambda_d", to_json(r.det_lambda_d)},
              {"addition_witness", witness_pair(r.direct.witness)},
              {"schur_witness", schur_json(r.schur)}};
  o.exit = r.consistent() ? kOk : kInconsistent;
  return o;
}

Outcome cmd_spectrum(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const Point c = parse_point(ctx.opt.center);
  ctx.args["center"] = to_json(c);
  ctx.args["r2max"] = ctx.opt.r2max;
  if (static_cast<int>(c.size()) != chain.length()) throw LengthMismatch("--center has the wrong length");
  SpectrumTable t = spectrum_at(chain, c, ctx.opt.r2max);
  Outcome o;
  o.result = {{"center", to_json(t.center)}, {"r2max", t.r2max}, {"total", t.total()}, {"counts", spectrum_json(t)}};
  o.table = std::move(t);
  return o;
}

Outcome cmd_eds(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const Int r2max = ctx.opt.r2max > 0 ? ctx.opt.r2max : default_r2max(chain);
  ctx.args["r2max"] = r2max;
  const EdsResult r = eds_check(chain, r2max, ctx.opt.threads);
  const KissingStats ks = kissing_stats(chain, ctx.opt.threads);
  Outcome o;
  o.result = {{"r2max", r2max},
              {"equal", r.equal},
              {"witness", eds_witness_json(r.witness)},
              {"d2min", ks.d2min},
              {"kissing_values", Json(std::vector<std::uint64_t>(ks.kissing_values.begin(), ks.kissing_values.end()))},
              {"reference", {{"center", to_json(r.reference.center)}, {"counts", spectrum_json(r.reference)}}}};
  o.exit = r.equal ? kOk : kRefuted;
  o.table = r.reference;
  return o;
}

Outcome cmd_gu(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const GuTwoLevelResult r = gu_check_two_level(chain, ctx.opt.threads);
  Outcome o;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back({{"x", to_json(c.x)}, {"signs", c.map.signs}});
  o.result = {{"uniform", r.uniform},
              {"failing_residue", r.failing_residue ? to_json(*r.failing_residue) : Json(nullptr)},
              {"certificates", std::move(certs)}};
  o.exit = r.uniform ? kOk : kRefuted;
  return o;
}

Outcome cmd_gu_search(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const Int r2max = ctx.opt.r2max > 0 ? ctx.opt.r2max : default_r2max(chain);
  ctx.args["r2max"] = r2max;
  const GuSearchResult r = gu_subgroup_search(chain, r2max, ctx.opt.threads);
  Outcome o;
  Json maps = Json::array();
  for (const auto& [x, m] : r.isometries) {
    maps.push_back({{"x", to_json(x)}, {"permutation", m.permutation}, {"signs", m.signs}});
  }
  o.result = {{"verdict", to_string(r.verdict)},
              {"eds_witness", eds_witness_json(r.eds_witness)},
              {"unresolved", r.unresolved ? to_json(*r.unresolved) : Json(nullptr)},
              {"isometries", std::move(maps)}};
  o.exit = r.verdict == GuVerdict::refuted_by_eds ? kRefuted : kOk;
  return o;
}

Outcome cmd_partner(Context& ctx) {
  const CodeChain& chain = ctx.load();
  const Point x = parse_point(ctx.opt.x);
  const Point y = parse_point(ctx.opt.y);
  const Point xp = parse_point(ctx.opt.xp);
  for (const Point* p : {&x, &y, &xp}) {
    if (static_cast<int>(p->size()) != chain.length()) throw LengthMismatch("--x, --y and --xp need length n");
  }
  ctx.args["mode"] = ctx.opt.mode;
  ctx.args["x"] = to_json(x);
  ctx.args["y"] = to_json(y);
  ctx.args["xp"] = to_json(xp);

  const Point e = sub(y, x);
  Outcome o;
  o.result = {{"mode", ctx.opt.mode}, {"difference", to_json(e)}, {"d2", norm2(e)}};
  std::optional<Point> found;
  if (ctx.opt.mode == "lemma1") {
    const PartnerTrace tr = partner_lemma1(chain, x, y, xp);
    found = tr.yprime;
    o.result["trace"] = {{"e1", tr.e1},       {"e2", tr.e2},   {"e1p", tr.e1p},
                         {"e2p", tr.e2p},     {"delta", tr.delta}, {"case", tr.cases},
                         {"orientation", tr.orientation}, {"zbar", tr.zbar}};
  } else if (ctx.opt.mode == "cw-brute") {
    Json cands = Json::array();
    if (!contains(chain, x) || !contains(chain, y) || !contains(chain, xp)) {
      throw NotAMember("x, y and x' must be members of the constellation");
    }
    for (const auto& c : cw_candidates(xp, e)) cands.push_back({{"point", to_json(c)}, {"member", contains(chain, c)}});
    found = partner_bruteforce(chain, x, y, xp);
    o.result["candidates"] = std::move(cands);
  } else if (ctx.opt.mode == "euclid-brute") {
    const auto all = euclidean_partners(chain, x, y, xp);
    Json sols = Json::array();
    for (const auto& p : all) sols.push_back(to_json(p));
    if (!all.empty()) found = all.front();
    o.result["solutions"] = std::move(sols);
  } else {
    throw ParseError("--mode must be lemma1, cw-brute or euclid-brute");
  }
  o.result["found"] = found.has_value();
  o.result["yprime"] = found ? to_json(*found) : Json(nullptr);
  o.exit = found ? kOk : kRefuted;
  return o;
}

Outcome cmd_nsm(Context& ctx) {
  const CodeChain& chain = ctx.load();
  ctx.args["samples"] = ctx.opt.samples;
  ctx.args["seed"] = ctx.opt.seed;
  const NsmEstimate est = nsm_estimate(chain, ctx.opt.samples, ctx.opt.seed, ctx.opt.threads);
  constexpr double kCubic = 1.0 / 12.0;
  Outcome o;
  o.result = {{"value", est.value},
              {"std_error", est.std_error},
              {"samples", est.samples},
              {"seed", est.seed},
              {"covolume", {{"numerator", to_json(est.covolume_num)}, {"denominator", to_json(est.covolume_den)}, {"value", est.covolume}}},
              {"cubic_reference", kCubic},
              {"sigmas_below_cubic", est.std_error > 0 ? (kCubic - est.value) / est.std_error : 0.0}};
  return o;
}

Outcome cmd_dplus(Context& ctx) {
  ctx.args["n"] = ctx.opt.n;
  const CodeChain chain = dplus_chain(ctx.opt.n);
  ctx.chain = chain;
  ctx.source = "dplus";
  Outcome o;
  o.raw = format_chain(chain);
  o.result = chain_summary(chain);
  o.result["chain"] = o.raw;
  return o;
}

Outcome cmd_presets(Context&) {
  Outcome o;
  Json list = Json::array();
  for (const auto& p : presets()) list.push_back({{"name", p.name}, {"description", p.description}});
  o.result = {{"presets", std::move(list)}};
  std::ostringstream os;
  for (const auto& p : presets()) os << p.name << "\t" << p.description << "\n";
  o.raw = os.str();
  return o;
}

std::optional<unsigned> env_threads() {
  const char* v = std::getenv("CCC_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long t = std::strtoul(v, &end, 10);
  if (*end != '\0') return std::nullopt;
  return static_cast<unsigned>(t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  if (auto t = env_threads()) opt.threads = *t;

  CLI::App app{"Construction C constellations: lattice tests, spectra, uniformity and quantization", "ccc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ccc 0.1.0");

  using Handler = std::function<Outcome(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const char* name, const char* help, Handler h, bool needs_chain = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (needs_chain) {
      sub->add_option("path", opt.chain_path, "chain file, '-' reads stdin");
      sub->add_option("--chain", opt.chain_path, "chain file, '-' reads stdin");
      sub->add_option("--preset", opt.preset, "built-in chain (see 'ccc presets')");
    }
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"human", "json", "tsv"}));
    sub->add_option("--threads", opt.threads, "worker threads, 0 = all cores (default: $CCC_THREADS or 0)");
    sub->add_flag("--timing", opt.timing, "include the runtime in json output");
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  add("info", "summarize the chain", cmd_info);
  add("lattice", "test whether the constellation is closed under addition", cmd_lattice);
  add("theorem1", "evaluate the four lattice criteria independently", cmd_theorem1);
  auto* spectrum = add("spectrum", "distance spectrum around one point", cmd_spectrum);
  spectrum->add_option("--center", opt.center, "comma separated point")->required();
  spectrum->add_option("--r2max", opt.r2max, "largest squared distance")->required()->check(CLI::PositiveNumber);
  auto* eds = add("eds", "compare the distance spectra of all residues", cmd_eds);
  eds->add_option("--r2max", opt.r2max, "largest squared distance (default 4*4^L)")->check(CLI::PositiveNumber);
  add("gu", "two-level geometric uniformity certificate", cmd_gu);
  auto* gus = add("gu-search", "search signed permutations for uniformity symmetries", cmd_gu_search);
  gus->add_option("--r2max", opt.r2max, "squared radius for the spectrum pre-check")->check(CLI::PositiveNumber);
  auto* partner = add("partner", "find y' with y'-x' equal to y-x up to signs or in norm", cmd_partner);
  partner->add_option("--mode", opt.mode, "lemma1, cw-brute or euclid-brute")
      ->required()
      ->check(CLI::IsMember({"lemma1", "cw-brute", "euclid-brute"}));
  partner->add_option("--x", opt.x, "comma separated point")->required();
  partner->add_option("--y", opt.y, "comma separated point")->required();
  partner->add_option("--xp", opt.xp, "comma separated point")->required();
  auto* nsm = add("nsm", "Monte Carlo normalized second moment", cmd_nsm);
  nsm->add_option("--samples", opt.samples, "number of samples (>= 1000)");
  nsm->add_option("--seed", opt.seed, "random seed");
  auto* dplus = add("dplus", "print the two-level repetition/even-weight chain", cmd_dplus, false);
  dplus->add_option("--n", opt.n, "length")->required();
  add("presets", "list built-in chains", cmd_presets, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto it = std::find_if(commands.begin(), commands.end(), [](const auto& c) { return c.first->parsed(); });
  const std::string name = it->first->get_name();
  Context ctx(opt, in);

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (opt.format == "tsv" && name != "spectrum" && name != "eds") {
      throw ParseError("--format tsv is only available for spectrum and eds");
    }
    o = it->second(ctx);
  } catch (const ConsistencyFailure& e) {
    err << "ccc: internal consistency failure: " << e.what() << "\n";
    return kInconsistent;
  } catch (const Error& e) {
    err << "ccc: " << e.what() << "\n";
    return kInputError;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (opt.format == "tsv") {
    out << "d2\tcount\n";
    for (const auto& [d2, k] : o.table->counts) out << d2 << "\t" << k << "\n";
    return o.exit;
  }
  if (opt.format == "json") {
    Json report;
    report["tool"] = "ccc";
    report["schema_version"] = kSchemaVersion;
    report["command"] = {{"name", name}, {"args", ctx.args}};
    if (ctx.chain) {
      report["input"] = {{"source", ctx.source}, {"digest", chain_digest(*ctx.chain)}, {"chain", chain_summary(*ctx.chain)}};
    } else {
      report["input"] = nullptr;
    }
    report["result"] = o.result;
    report["exit_code"] = o.exit;
    if (opt.timing) report["runtime_seconds"] = seconds;
    out << report.dump(2) << "\n";
    return o.exit;
  }

  if (!o.raw.empty()) {
    out << o.raw;
    return o.exit;
  }
  out << "command: " << name << "\n";
  if (ctx.chain) {
    out << "chain: " << ctx.source << " n=" << ctx.chain->length() << " L=" << ctx.chain->levels()
        << " residues=" << ctx.chain->residue_count() << " " << chain_digest(*ctx.chain) << "\n";
  }
  render_human(o.result, out, 0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  out << "runtime: " << buf << " s\n";
  return o.exit;
}

}  // namespace ccc::cli
