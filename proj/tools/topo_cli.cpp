#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "topo/constructions.hpp"
#include "topo/cover.hpp"
#include "topo/deriv.hpp"
#include "topo/interp.hpp"
#include "topo/oracle.hpp"
#include "topo/positivity.hpp"
#include "topo/quotient.hpp"

namespace {

using namespace topo;

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string subset_text(const Subset& s) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (Element m : s.members()) {
    if (!first) os << ' ';
    os << m;
    first = false;
  }
  os << ")";
  return os.str();
}

int verdict_exit(TriBool t) {
  return t.is_yes() ? kYes : t.is_no() ? kNo : kUnknown;
}

void print_judgement(const std::string& text, TriBool t) {
  std::cout << "JUDGEMENT " << text << " => ";
  if (t.is_yes())
    std::cout << "YES";
  else if (t.is_no())
    std::cout << "NO";
  else
    std::cout << "UNKNOWN(fuel=" << t.fuel_spent << ")";
  std::cout << "\n";
}

struct Options {
  std::string axioms_file, setoid_file, deriv_file, subset_text, ruleset, mode;
  std::uint64_t elem = 0;
  std::uint64_t fuel = 10000;
  bool fuel_given = false;
  std::uint32_t oracle_bound = kDefaultOracleBound;
};

AxiomSet load_axioms(const Options& o) {
  return validate_axiom_set(parse_axiom_set(slurp(o.axioms_file)));
}

int run_saturate(const Options& o) {
  AxiomSet ax = load_axioms(o);
  Subset v = parse_subset(ax.carrier_size(), o.subset_text);
  SaturationResult r = saturate(ax, v);
  std::cout << "closure " << subset_text(r.closure) << "\n";
  std::cout << "depths";
  for (std::uint32_t d : r.witness_depth) std::cout << ' ' << d;
  std::cout << "\n";
  return kYes;
}

int run_interior(const Options& o) {
  AxiomSet ax = load_axioms(o);
  Subset v = parse_subset(ax.carrier_size(), o.subset_text);
  InteriorResult r = interior(ax, v);
  std::cout << "interior " << subset_text(r.interior) << "\n";
  std::cout << "iterations " << r.iterations << "\n";
  return kYes;
}

int run_cover(const Options& o) {
  AxiomSet ax = load_axioms(o);
  Subset v = parse_subset(ax.carrier_size(), o.subset_text);
  Element a = static_cast<Element>(o.elem);
  TriBool t;
  if (o.fuel_given)
    t = covers_bounded(lazy_of_finite(ax), a,
                       [v](Element x) { return v.contains(x); }, o.fuel);
  else
    t = covers(ax, a, v) ? TriBool::yes() : TriBool::no();
  print_judgement("(cover " + std::to_string(a) + " " + subset_text(v) + ")", t);
  return verdict_exit(t);
}

int run_pos(const Options& o) {
  AxiomSet ax = load_axioms(o);
  Subset v = parse_subset(ax.carrier_size(), o.subset_text);
  Element a = static_cast<Element>(o.elem);
  TriBool t;
  if (o.fuel_given)
    t = positive_bounded(lazy_of_finite(ax), a,
                         [v](Element x) { return v.contains(x); }, o.fuel);
  else
    t = is_positive(ax, a, v) ? TriBool::yes() : TriBool::no();
  print_judgement("(pos " + std::to_string(a) + " " + subset_text(v) + ")", t);
  return verdict_exit(t);
}

int run_oracle(const Options& o) {
  AxiomSet ax = load_axioms(o);
  std::uint32_t n = ax.carrier_size();
  std::uint64_t total = 0, agree = 0;
  for (const Subset& v : enumerate_subsets(n, o.oracle_bound)) {
    if (o.mode == "lfp") {
      ++total;
      bool ok = saturate(ax, v).closure == saturate_oracle(ax, v, o.oracle_bound);
      agree += ok;
      if (!ok) std::cout << "mismatch lfp " << subset_text(v) << "\n";
    } else if (o.mode == "gfp") {
      ++total;
      bool ok = interior(ax, v).interior == interior_oracle(ax, v, o.oracle_bound);
      agree += ok;
      if (!ok) std::cout << "mismatch gfp " << subset_text(v) << "\n";
    } else if (o.mode == "duality") {
      for (Element a = 0; a < n; ++a) {
        ++total;
        bool ok = is_positive(ax, a, v) == duality_oracle(ax, a, v);
        agree += ok;
        if (!ok)
          std::cout << "mismatch duality " << a << " " << subset_text(v) << "\n";
      }
    } else {
      throw Error(ErrorKind::ParseError, "oracle mode must be lfp, gfp or duality");
    }
  }
  std::cout << "agree " << agree << "/" << total << "\n";
  return agree == total ? kYes : kNo;
}

int run_lattice(const Options& o) {
  AxiomSet ax = load_axioms(o);
  for (const Subset& s : formal_opens(ax, o.oracle_bound))
    std::cout << "open " << subset_text(s) << "\n";
  for (const Subset& s : formal_closeds(ax, o.oracle_bound))
    std::cout << "closed " << subset_text(s) << "\n";
  return kYes;
}

int run_quotient(const Options& o) {
  AxiomSet ax = load_axioms(o);
  Setoid eq = parse_setoid(slurp(o.setoid_file));
  QuotientMap qm(eq);
  if (o.mode.empty()) {
    std::cout << print_axiom_set(transform_quotient(qm, ax));
    return kYes;
  }
  if (o.mode != "eqcov" && o.mode != "ceqcov")
    throw Error(ErrorKind::ParseError, "quotient mode must be eqcov or ceqcov");
  AxiomSet on_base = transform_quotient(qm, ax);
  std::uint64_t total = 0, agree = 0;
  for (const Subset& w : enumerate_subsets(qm.class_count(), o.oracle_bound)) {
    Subset pulled = es(qm, w);
    for (Element b = 0; b < qm.base_size(); ++b) {
      ++total;
      bool lhs, rhs;
      if (o.mode == "eqcov") {
        lhs = covers(ax, qm.class_of(b), w);
        rhs = covers(on_base, b, pulled);
      } else {
        lhs = is_positive(ax, qm.class_of(b), w);
        rhs = is_positive(on_base, b, pulled);
      }
      agree += lhs == rhs;
      if (lhs != rhs)
        std::cout << "mismatch " << o.mode << " b=" << b << " W="
                  << subset_text(w) << "\n";
    }
  }
  std::cout << "agree " << agree << "/" << total << "\n";
  return agree == total ? kYes : kNo;
}

int run_coreflect(const Options& o) {
  AxiomSet ax = load_axioms(o);
  std::cout << print_axiom_set(coreflect(ax));
  return kYes;
}

int run_check(const Options& o) {
  Ruleset rs = ruleset_of_name(o.ruleset);
  Derivation d = Derivation::from_sexpr(sx::parse(slurp(o.deriv_file)));
  try {
    CheckResult r = check_derivation(d, rs);
    for (const std::string& line : r.diagnostics) std::cout << line << "\n";
    std::cout << (r.ok ? "ACCEPTED" : "REJECTED") << "\n";
    return r.ok ? kYes : kNo;
  } catch (const Error& e) {
    if (e.kind == ErrorKind::UnknownRule) {
      std::cout << "unknown rule: " << e.what() << "\n";
      std::cout << "REJECTED\n";
      return kNo;
    }
    throw;
  }
}

int run_realize(const Options& o) {
  sx::Sexpr e = sx::parse(slurp(o.deriv_file));
  Judgement j;
  if (e.is_list() && e.size() > 0 && (e.head() == "rule" || e.head() == "assume"))
    j = Derivation::from_sexpr(e).concl;
  else
    j = Judgement::from_sexpr(e);
  TriBool t = check_judgement_realized(j, {}, o.fuel);
  std::cout << judgement_report_line(j, t) << "\n";
  return verdict_exit(t);
}

int run_ct_demo(const Options& o) {
  std::uint64_t bound = o.elem == 0 ? 10 : o.elem;
  // R(x,y) with y = x+1: realizer pairs the successor with a trivial witness.
  PcaTerm suc_f = PcaTerm::lam(PcaTerm::app(
      PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair),
                   PcaTerm::app(PcaTerm::prim(PcaTerm::Suc), PcaTerm::v(0))),
      PcaTerm::num(0)));
  std::cout << "relation y = x+1\n";
  std::cout << ct_demo(encode_term(suc_f), 0, bound, o.fuel).text;
  // R(x,y) with y = 0.
  PcaTerm zero_f = PcaTerm::lam(
      PcaTerm::app(PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair), PcaTerm::num(0)),
                   PcaTerm::num(0)));
  std::cout << "relation y = 0\n";
  std::cout << ct_demo(encode_term(zero_f), 0, bound, o.fuel).text;
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query engines for finitary cover/positivity generation, "
               "derivation checking and numeric realizability"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--axioms", o.axioms_file, "axiom-set file");
    sub->add_option("--setoid", o.setoid_file, "setoid file");
    sub->add_option("--deriv", o.deriv_file, "derivation or judgement file");
    sub->add_option("--elem", o.elem, "focus element / bound");
    sub->add_option("--subset", o.subset_text, "space-separated members");
    sub->add_option("--ruleset", o.ruleset, "emTT | mTT | MLtt | MLS");
    sub->add_option("--fuel", o.fuel, "exploration budget")
        ->each([&](const std::string&) { o.fuel_given = true; });
    sub->add_option("--oracle-bound", o.oracle_bound,
                    "max carrier for powerset enumeration");
    sub->add_option("--mode", o.mode, "duality | lfp | gfp | eqcov | ceqcov");
  };

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Entry entries[] = {
      {"saturate", "closure of a subset under the cover", run_saturate},
      {"interior", "greatest split subset", run_interior},
      {"cover", "does elem get covered by the subset", run_cover},
      {"pos", "is elem positive in the subset", run_pos},
      {"oracle", "compare engines against powerset references", run_oracle},
      {"lattice", "formal opens and closeds", run_lattice},
      {"quotient", "quotient transformation and its lemmas", run_quotient},
      {"coreflect", "open coreflection of an axiom-set", run_coreflect},
      {"check", "check a derivation against a rule table", run_check},
      {"realize", "numeric realizability of a judgement", run_realize},
      {"ct-demo", "extract and verify a choice index", run_ct_demo},
  };
  std::map<std::string, int (*)(const Options&)> dispatch;
  for (const Entry& e : entries) {
    add_common(app.add_subcommand(e.name, e.help));
    dispatch[e.name] = e.fn;
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return dispatch.at(app.get_subcommands().front()->get_name())(o);
  } catch (const topo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
