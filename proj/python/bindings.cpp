// Python bindings for the main engine operations. Subsets cross the
// boundary as sorted member lists, axiom-sets and setoids as their text
// formats, derivations and judgements as s-expression strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "topo/constructions.hpp"
#include "topo/cover.hpp"
#include "topo/deriv.hpp"
#include "topo/interp.hpp"
#include "topo/oracle.hpp"
#include "topo/pca.hpp"
#include "topo/positivity.hpp"
#include "topo/quotient.hpp"

namespace py = pybind11;
using namespace topo;

namespace {

using Members = std::vector<Element>;

AxiomSet load(const std::string& text) {
  return validate_axiom_set(parse_axiom_set(text));
}

Subset to_subset(std::uint32_t n, const Members& ms) {
  return Subset::from_members(n, ms);
}

std::string verdict(TriBool t) {
  return t.is_yes() ? "yes" : t.is_no() ? "no" : "unknown";
}

}  // namespace

PYBIND11_MODULE(topo_kernel, m) {
  m.doc() =
      "finitary cover/positivity generation, derivation checking and "
      "numeric realizability";

  py::register_exception<Error>(m, "KernelError");

  m.def("ex1_text", [] { return print_axiom_set(ex1()); },
        "the worked three-element fixture, in the axiom text format");

  m.def(
      "saturate",
      [](const std::string& ax_text, const Members& v) {
        AxiomSet ax = load(ax_text);
        return saturate(ax, to_subset(ax.carrier_size(), v)).closure.members();
      },
      py::arg("axioms"), py::arg("subset"),
      "closure of the subset under the generated cover");

  m.def(
      "interior",
      [](const std::string& ax_text, const Members& v) {
        AxiomSet ax = load(ax_text);
        return interior(ax, to_subset(ax.carrier_size(), v)).interior.members();
      },
      py::arg("axioms"), py::arg("subset"),
      "greatest split subset of the given subset");

  m.def(
      "covers",
      [](const std::string& ax_text, Element a, const Members& v) {
        AxiomSet ax = load(ax_text);
        return covers(ax, a, to_subset(ax.carrier_size(), v));
      },
      py::arg("axioms"), py::arg("elem"), py::arg("subset"));

  m.def(
      "is_positive",
      [](const std::string& ax_text, Element a, const Members& v) {
        AxiomSet ax = load(ax_text);
        return is_positive(ax, a, to_subset(ax.carrier_size(), v));
      },
      py::arg("axioms"), py::arg("elem"), py::arg("subset"));

  m.def(
      "oracle_agrees",
      [](const std::string& ax_text) {
        AxiomSet ax = load(ax_text);
        for (const Subset& v : enumerate_subsets(ax.carrier_size())) {
          if (saturate(ax, v).closure != saturate_oracle(ax, v)) return false;
          if (interior(ax, v).interior != interior_oracle(ax, v)) return false;
          for (Element a = 0; a < ax.carrier_size(); ++a)
            if (is_positive(ax, a, v) != duality_oracle(ax, a, v)) return false;
        }
        return true;
      },
      py::arg("axioms"),
      "both fixpoint engines and the duality against powerset references");

  m.def(
      "extract_proof",
      [](const std::string& ax_text, Element a, const Members& v) {
        AxiomSet ax = load(ax_text);
        return extract_proof(ax, a, to_subset(ax.carrier_size(), v)).to_string();
      },
      py::arg("axioms"), py::arg("elem"), py::arg("subset"),
      "first derivation of coverage found, as an s-expression");

  m.def(
      "compatibility_witness",
      [](const std::string& ax_text, Element a, const Members& v,
         const Members& u) {
        AxiomSet ax = load(ax_text);
        std::uint32_t n = ax.carrier_size();
        return compatibility_witness(ax, a, to_subset(n, v), to_subset(n, u));
      },
      py::arg("axioms"), py::arg("elem"), py::arg("pos_subset"),
      py::arg("cover_subset"));

  m.def(
      "coreflect",
      [](const std::string& ax_text) { return print_axiom_set(coreflect(load(ax_text))); },
      py::arg("axioms"), "open coreflection, in the axiom text format");

  m.def(
      "transform_quotient",
      [](const std::string& ax_text, const std::string& setoid_text) {
        QuotientMap qm(parse_setoid(setoid_text));
        return print_axiom_set(transform_quotient(qm, load(ax_text)));
      },
      py::arg("class_axioms"), py::arg("setoid"),
      "pull an axiom-set on classes back to the base");

  m.def(
      "formal_opens",
      [](const std::string& ax_text) {
        std::vector<Members> out;
        for (const Subset& s : formal_opens(load(ax_text)))
          out.push_back(s.members());
        return out;
      },
      py::arg("axioms"));

  m.def(
      "formal_closeds",
      [](const std::string& ax_text) {
        std::vector<Members> out;
        for (const Subset& s : formal_closeds(load(ax_text)))
          out.push_back(s.members());
        return out;
      },
      py::arg("axioms"));

  m.def(
      "check_derivation",
      [](const std::string& deriv_text, const std::string& ruleset) {
        Derivation d = Derivation::from_sexpr(sx::parse(deriv_text));
        CheckResult r = check_derivation(d, ruleset_of_name(ruleset));
        return py::make_tuple(r.ok, r.diagnostics);
      },
      py::arg("derivation"), py::arg("ruleset"),
      "(accepted, diagnostics) for a derivation s-expression");

  m.def(
      "realize_judgement",
      [](const std::string& j_text, std::uint64_t fuel) {
        Judgement j = Judgement::from_sexpr(sx::parse(j_text));
        return verdict(check_judgement_realized(j, {}, fuel));
      },
      py::arg("judgement"), py::arg("fuel") = 100000,
      "'yes' / 'no' / 'unknown' under the numeric interpretation");

  m.def(
      "ct_demo_graph",
      [](std::uint64_t bound) {
        PcaTerm suc_f = PcaTerm::lam(PcaTerm::app(
            PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair),
                         PcaTerm::app(PcaTerm::prim(PcaTerm::Suc), PcaTerm::v(0))),
            PcaTerm::num(0)));
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        for (const auto& [x, y] : ct_demo(encode_term(suc_f), 0, bound).graph)
          out.emplace_back(x.convert_to<std::uint64_t>(),
                           y.convert_to<std::uint64_t>());
        return out;
      },
      py::arg("bound") = 10,
      "graph of the extracted choice index for the successor relation");

  m.def(
      "pairing",
      [](std::uint64_t n, std::uint64_t k) {
        return pair(n, k).convert_to<std::uint64_t>();
      },
      py::arg("n"), py::arg("m"));
  m.def("unpairing", [](std::uint64_t c) {
    Nat n(c);
    return py::make_tuple(proj0(n).convert_to<std::uint64_t>(),
                          proj1(n).convert_to<std::uint64_t>());
  });
}
