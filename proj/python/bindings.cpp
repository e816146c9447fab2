#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccc/cli.hpp"
#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/lattice.hpp"
#include "ccc/quantizer.hpp"
#include "ccc/spectrum.hpp"
#include "ccc/uniformity.hpp"

namespace py = pybind11;
using namespace ccc;

namespace {

py::int_ big(const BigInt& v) { return py::int_(py::str(v.str())); }

CodeChain make_chain(const std::vector<std::vector<std::string>>& codes) {
  if (codes.empty() || codes.front().empty()) throw ParseError("a chain needs at least one non-empty code");
  const int n = static_cast<int>(codes.front().front().size());
  std::vector<BinaryCode> out;
  for (const auto& words : codes) {
    std::vector<BitWord> w;
    for (const auto& s : words) w.push_back(BitWord::from_string(s));
    out.push_back(BinaryCode::from_words(n, std::move(w)));
  }
  return CodeChain(std::move(out));
}

std::vector<std::vector<std::string>> code_words(const CodeChain& chain) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : chain.codes()) {
    auto& level = out.emplace_back();
    for (const auto& w : c.words()) level.push_back(w.to_string());
  }
  return out;
}

py::object pair_or_none(const std::optional<std::pair<Point, Point>>& w) {
  if (!w) return py::none();
  return py::make_tuple(w->first, w->second);
}

py::dict eds_witness(const EdsWitness& w) {
  py::dict d;
  d["center"] = w.center;
  d["other"] = w.other;
  d["d2"] = w.d2;
  d["count_center"] = w.count_center;
  d["count_other"] = w.count_other;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto base = py::register_exception<Error>(m, "CccError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotAMember>(m, "NotAMember", base.ptr());
  py::register_exception<HypothesisViolated>(m, "HypothesisViolated", base.ptr());
  py::register_exception<GuardExceeded>(m, "GuardExceeded", base.ptr());
  py::register_exception<LengthMismatch>(m, "LengthMismatch", base.ptr());
  py::register_exception<ConsistencyFailure>(m, "ConsistencyFailure", PyExc_RuntimeError);

  py::class_<CodeChain>(m, "Chain")
      .def(py::init(&make_chain), py::arg("codes"))
      .def_static("parse", [](const std::string& text) { return cli::parse_chain(text); })
      .def_static("preset", [](const std::string& name) { return cli::preset(name); })
      .def_property_readonly("n", &CodeChain::length)
      .def_property_readonly("levels", &CodeChain::levels)
      .def_property_readonly("modulus", &CodeChain::modulus)
      .def_property_readonly("linear", &CodeChain::all_linear)
      .def_property_readonly("nested", &CodeChain::nested)
      .def_property_readonly("codes", &code_words)
      .def("format", &cli::format_chain)
      .def("digest", &cli::chain_digest)
      .def("residues", [](const CodeChain& c) { return residues(c).points(); })
      .def("__contains__", [](const CodeChain& c, const Point& p) { return contains(c, p); })
      .def("__len__", [](const CodeChain& c) { return c.residue_count(); })
      .def("__eq__", [](const CodeChain& a, const CodeChain& b) { return a == b; })
      .def("__repr__", [](const CodeChain& c) {
        std::ostringstream s;
        s << "Chain(n=" << c.length() << ", levels=" << c.levels() << ")";
        return s.str();
      });

  m.def("presets", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : cli::presets()) out.emplace_back(p.name, p.description);
    return out;
  });
  m.def("dplus", &dplus_chain, py::arg("n"));

  m.def("is_lattice", [](const CodeChain& c) {
    const auto t = is_lattice_direct(c);
    return py::make_tuple(t.is_lattice, pair_or_none(t.witness));
  });

  m.def("theorem1", [](const CodeChain& c) {
    const auto r = theorem1_report(c);
    py::dict d;
    d["is_lattice"] = r.is_lattice;
    d["equals_lambda_c"] = r.equals_lambda_c;
    d["schur_closed"] = r.schur_closed;
    d["equals_lambda_d"] = r.equals_lambda_d;
    d["nested"] = r.nested;
    d["consistent"] = r.consistent();
    d["residue_count"] = r.residue_count;
    d["det_lambda_c"] = big(r.det_lambda_c);
    d["det_lambda_d"] = big(r.det_lambda_d);
    d["addition_witness"] = pair_or_none(r.direct.witness);
    return d;
  });

  m.def("spectrum", [](const CodeChain& c, const Point& center, Int r2max) {
    return spectrum_at(c, center, r2max).counts;
  }, py::arg("chain"), py::arg("center"), py::arg("r2max"));

  m.def("eds", [](const CodeChain& c, Int r2max, unsigned threads) {
    const auto r = eds_check(c, r2max > 0 ? r2max : default_r2max(c), threads);
    return py::make_tuple(r.equal, r.witness ? py::object(eds_witness(*r.witness)) : py::none());
  }, py::arg("chain"), py::arg("r2max") = 0, py::arg("threads") = 0);

  m.def("kissing", [](const CodeChain& c, unsigned threads) {
    const auto k = kissing_stats(c, threads);
    return py::make_tuple(k.d2min, k.kissing_values);
  }, py::arg("chain"), py::arg("threads") = 0);

  m.def("gu", [](const CodeChain& c, unsigned threads) {
    const auto r = gu_check_two_level(c, threads);
    std::vector<std::pair<Point, std::vector<int>>> certs;
    for (const auto& cert : r.certificates) certs.emplace_back(cert.x, cert.map.signs);
    return py::make_tuple(r.uniform, certs);
  }, py::arg("chain"), py::arg("threads") = 0);

  m.def("gu_search", [](const CodeChain& c, Int r2max, unsigned threads) {
    const auto r = gu_subgroup_search(c, r2max > 0 ? r2max : default_r2max(c), threads);
    return std::string(to_string(r.verdict));
  }, py::arg("chain"), py::arg("r2max") = 0, py::arg("threads") = 0);

  m.def("partner_lemma1", [](const CodeChain& c, const Point& x, const Point& y, const Point& xp) {
    return partner_lemma1(c, x, y, xp).yprime;
  }, py::arg("chain"), py::arg("x"), py::arg("y"), py::arg("xp"));
  m.def("partner_bruteforce", [](const CodeChain& c, const Point& x, const Point& y, const Point& xp) {
    return partner_bruteforce(c, x, y, xp);
  }, py::arg("chain"), py::arg("x"), py::arg("y"), py::arg("xp"));
  m.def("euclidean_partners", [](const CodeChain& c, const Point& x, const Point& y, const Point& xp) {
    return euclidean_partners(c, x, y, xp);
  }, py::arg("chain"), py::arg("x"), py::arg("y"), py::arg("xp"));

  m.def("nearest", [](const CodeChain& c, const std::vector<double>& w) { return nearest(c, w); },
        py::arg("chain"), py::arg("w"));

  m.def("nsm", [](const CodeChain& c, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    NsmEstimate est;
    {
      py::gil_scoped_release release;
      est = nsm_estimate(c, samples, seed, threads);
    }
    py::dict d;
    d["value"] = est.value;
    d["std_error"] = est.std_error;
    d["samples"] = est.samples;
    d["seed"] = est.seed;
    d["covolume"] = py::make_tuple(big(est.covolume_num), big(est.covolume_den));
    return d;
  }, py::arg("chain"), py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("threads") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args, const std::string& input) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), py::arg("stdin") = "");
}
