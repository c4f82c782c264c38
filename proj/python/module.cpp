#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flam/census.hpp"
#include "flam/error.hpp"
#include "flam/reduce.hpp"
#include "flam/set_model.hpp"
#include "flam/synth.hpp"
#include "flam/syntax.hpp"
#include "flam/vec_model.hpp"

namespace py = pybind11;
using namespace flam;

namespace {

// Sources carry an optional "ctx:" header, as in .flam files. Without a
// field, scalars are rejected.
Judgment load(const std::string& src, std::optional<std::uint32_t> p) {
  std::optional<Field> field;
  if (p) field = Field(*p);
  Program prog = parse_program(src, field);
  return make_judgment(prog.context, prog.term, field);
}

// Inverse of load: a header line when the context is non-empty, then the term.
std::string source(const Judgment& j) {
  std::string body = print_term(j.term, j.context);
  return j.context.empty() ? body : "ctx: " + context_to_string(j.context) + "\n" + body;
}

std::vector<std::vector<Residue>> vec_table(const std::string& src, std::uint32_t p) {
  KFun den = vec_denote(load(src, p), Field(p));
  std::vector<std::vector<Residue>> out;
  for (std::uint64_t t = 0; t < den.entries(); ++t) out.push_back(den.at(t).coeffs);
  return out;
}

SynthRequest request(const std::string& type, const std::vector<Residue>& coeffs, std::uint32_t p) {
  Field field(p);
  TypePtr t = parse_type(type);
  VecSpace space(t, field);
  if (coeffs.size() != space.dim()) {
    throw py::value_error(type + " needs " + std::to_string(space.dim()) + " coefficients");
  }
  for (Residue c : coeffs)
    if (c >= p) throw py::value_error("coefficients must lie in 0.." + std::to_string(p - 1));
  return {t, {t, coeffs}, field};
}

py::dict census(const std::string& type, std::uint32_t p, const std::string& model, std::size_t max, bool fingerprint,
                bool slow) {
  if (model != "vec" && model != "set") throw py::value_error("model must be 'vec' or 'set'");
  CensusOptions opts{model == "vec" ? Model::Vec : Model::Set, max, fingerprint || slow, slow};
  CensusReport r = church_census(parse_type(type), Field(p), opts);
  py::dict d;
  d["distinct"] = r.distinct();
  d["classes"] = r.classes;
  d["class_of"] = r.class_of;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite PCF, its algebraic extension, and their finite models";

  auto base = py::register_exception<Error>(m, "FlamError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<TypeError>(m, "TypeError", base.ptr());
  py::register_exception<GuardError>(m, "GuardError", base.ptr());
  py::register_exception<FieldError>(m, "FieldError", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", base.ptr());

  m.def(
      "check", [](const std::string& src, std::optional<std::uint32_t> p) { return print_judgment(load(src, p)); },
      py::arg("source"), py::arg("p") = py::none(), "Typecheck and print the judgment.");

  m.def(
      "normalize",
      [](const std::string& src, std::uint32_t p, std::optional<std::size_t> fuel) {
        Judgment j = load(src, p);
        if (!j.context.empty()) throw TypeError("normalize needs a closed term");
        return print_term(normalize(j.term, Field(p), fuel));
      },
      py::arg("source"), py::arg("p") = 2, py::arg("fuel") = py::none());

  m.def(
      "trace",
      [](const std::string& src, std::uint32_t p) {
        Judgment j = load(src, p);
        std::vector<std::pair<std::string, std::string>> steps;
        normalize(j.term, Field(p), {}, [&](const Step& s) { steps.emplace_back(s.rule, print_term(s.term)); });
        return steps;
      },
      py::arg("source"), py::arg("p") = 2, "Reduction steps as (rule, term) pairs.");

  m.def("vec_denote", &vec_table, py::arg("source"), py::arg("p") = 2,
        "Coordinates of the result on each basis tuple, in rank order.");

  m.def(
      "matrix",
      [](const std::string& src, std::uint32_t p) { return to_matrix(vec_denote(load(src, p), Field(p))); },
      py::arg("source"), py::arg("p") = 2);

  m.def(
      "set_denote",
      [](const std::string& src) {
        SetFun den = set_denote(load(src, std::nullopt));
        std::vector<std::string> out;
        for (std::uint64_t t = 0; t < den.table().size(); ++t) out.push_back(set_elem_compact(den.at(t)));
        return out;
      },
      py::arg("source"));

  m.def(
      "vec_equiv",
      [](const std::string& a, const std::string& b, std::uint32_t p) {
        return vec_equiv(load(a, p), load(b, p), Field(p));
      },
      py::arg("a"), py::arg("b"), py::arg("p") = 2);

  m.def(
      "set_equiv",
      [](const std::string& a, const std::string& b) { return set_equiv(load(a, std::nullopt), load(b, std::nullopt)); },
      py::arg("a"), py::arg("b"));

  m.def("census", &census, py::arg("type"), py::arg("p") = 2, py::arg("model") = "vec", py::arg("max") = 20,
        py::arg("fingerprint") = false, py::arg("slow") = false);

  m.def("census_formula", &census_formula, py::arg("p"));

  m.def(
      "synth_vector",
      [](const std::string& type, const std::vector<Residue>& coeffs, std::uint32_t p) {
        return print_term(synth_vector(request(type, coeffs, p)));
      },
      py::arg("type"), py::arg("coeffs"), py::arg("p") = 2);

  m.def(
      "synth_delta",
      [](const std::string& type, const std::vector<Residue>& coeffs, std::uint32_t p) {
        return print_term(synth_delta(request(type, coeffs, p)));
      },
      py::arg("type"), py::arg("coeffs"), py::arg("p") = 2);

  m.def(
      "vts_type", [](const std::string& type) { return to_string(vts_type(parse_type(type))); }, py::arg("type"));

  m.def(
      "factor",
      [](const std::string& src) {
        Factoring f = factor_through_set(load(src, 2), Field(2));
        return std::make_pair(source(f.tilde), source(f.reassembled));
      },
      py::arg("source"), "Factor x:A |- M : B through a pure term; returns (tilde, reassembled) as sources.");
}
