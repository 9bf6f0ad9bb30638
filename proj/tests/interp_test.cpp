#include <random>

#include "doctest.h"
#include "topo/interp.hpp"

using namespace topo;

namespace {

Term T(const std::string& text) { return sx::parse(text); }

Judgement J(const std::string& text) {
  return Judgement::from_sexpr(sx::parse(text));
}

Nat value_of(const std::string& term, const Env& env = {}) {
  std::uint64_t fuel = 100000;
  auto r = realize_value(T(term), env, fuel);
  REQUIRE(r.has_value());
  return *r;
}

}  // namespace

TEST_CASE("term interpretation computes the obvious values") {
  CHECK(value_of("zero") == 0);
  CHECK(value_of("7") == 7);
  CHECK(value_of("(suc (suc zero))") == 2);
  CHECK(value_of("(pair 3 4)") == pair(3, 4));
  CHECK(value_of("(p1 (pair 3 4))") == 3);
  CHECK(value_of("(p2 (pair 3 4))") == 4);
  CHECK(value_of("(ap (lam x (suc x)) 5)") == 6);
  CHECK(value_of("x", {{"x", 9}}) == 9);
  CHECK(value_of("hat-n1") == code_nat(1));
  CHECK_THROWS_AS(value_of("y"), Error);               // unbound name
  CHECK_THROWS_AS(realize_term(T("(pow A)")), Error);  // outside the fragment
}

TEST_CASE("interpretation commutes with substitution") {
  // (lam x b) a and b[a/x] compute the same value.
  std::mt19937 rng(12001);
  std::vector<std::string> bodies{
      "(suc x)", "(pair x x)", "(p1 (pair x 2))", "(ap (lam y (pair y x)) x)",
      "(suc (suc x))"};
  for (const std::string& b : bodies)
    for (unsigned a = 0; a < 5; ++a) {
      Nat lhs = value_of("(ap (lam x " + b + ") " + std::to_string(a) + ")");
      Nat rhs = value_of(b, {{"x", a}});
      CHECK(lhs == rhs);
      // And syntactic substitution agrees with both.
      Term bs = subst(T(b), "x", sx::Sexpr::sym(std::to_string(a)));
      CHECK(value_of(bs.to_string()) == lhs);
    }
}

TEST_CASE("constructor translations carry their tags") {
  CHECK(proj0(value_of("(rf a r)", {{"a", 3}, {"r", 0}})) == 7);
  CHECK(proj0(value_of("(hat-sigma x hat-n1 hat-n1)")) == 1);
  CHECK(proj0(value_of("(hat-pi x hat-n1 hat-n1)")) == 2);
  CHECK(proj0(value_of("(hat-plus hat-n1 hat-n1)")) == 3);
  CHECK(proj0(value_of("(hat-list hat-n1)")) == 4);
  CHECK(proj0(value_of("(hat-id hat-n1 zero zero)")) == 5);
  CHECK(value_of("(hat-plus hat-n1 hat-n1)") ==
        code_plus(code_nat(1), code_nat(1)));
  CHECK(value_of("(hat-id hat-n1 zero zero)") == code_id(code_nat(1), 0, 0));
}

TEST_CASE("type descriptors decide the small types") {
  StageMachine sm;
  std::uint64_t fuel = 100000;
  Env env;

  TypeDesc n1 = realize_type(T("n1"), env, sm, fuel);
  CHECK(n1.contains(0).is_yes());
  CHECK(n1.contains(1).is_no());
  REQUIRE(n1.enumeration.has_value());
  CHECK(*n1.enumeration == std::vector<Nat>{0});

  TypeDesc n0 = realize_type(T("n0"), env, sm, fuel);
  CHECK(n0.contains(0).is_no());

  TypeDesc sig = realize_type(T("(sigma x n1 n1)"), env, sm, fuel);
  CHECK(sig.contains(pair(0, 0)).is_yes());
  CHECK(sig.contains(pair(0, 1)).is_no());

  TypeDesc fn = realize_type(T("(arrow n1 n1)"), env, sm, fuel);
  Nat id_code = encode_term(PcaTerm::lam(PcaTerm::v(0)));
  CHECK(fn.contains(id_code).is_yes());

  TypeDesc lst = realize_type(T("(list n1)"), env, sm, fuel);
  CHECK(lst.contains(list_nil()).is_yes());
  CHECK(lst.contains(list_of({0, 0})).is_yes());
  CHECK(lst.contains(list_of({2})).is_no());

  TypeDesc idt = realize_type(T("(id n1 zero zero)"), env, sm, fuel);
  CHECK(idt.contains(0).is_yes());
  CHECK(idt.contains(1).is_no());

  TypeDesc uni = realize_type(T("u0"), env, sm, fuel);
  CHECK(uni.contains(code_nat(1)).is_yes());
  CHECK(uni.contains(code_rf(0, 0)).is_no());

  // T(code) reads the code through the stage machine.
  TypeDesc tc = realize_type(T("(t hat-n1)"), env, sm, fuel);
  CHECK(tc.contains(0).is_yes());
  CHECK(tc.contains(1).is_no());
}

TEST_CASE("judgement checking: representative verdicts") {
  auto yes = [](const std::string& j, Env env = {}) {
    TriBool r = check_judgement_realized(J(j), env);
    CHECK_MESSAGE(r.is_yes(), j);
  };
  auto no = [](const std::string& j, Env env = {}) {
    TriBool r = check_judgement_realized(J(j), env);
    CHECK_MESSAGE(r.is_no(), j);
  };

  yes("(elem zero n1 (ctx))");
  yes("(type (sigma x n1 n1) (ctx))");
  yes("(elem (pair zero zero) (sigma x n1 n1) (ctx))");
  yes("(elem (lam x x) (pi x n1 n1) (ctx))");
  yes("(elem zero (id n1 zero zero) (ctx))");
  yes("(eqtype (sigma x n1 n1) (times n1 n1) (ctx))");
  yes("(eqelem (p1 (pair zero 3)) zero n1 (ctx))");
  yes("(elem hat-n1 u0 (ctx))");
  yes("(elem zero (t hat-n1) (ctx))");
  yes("(elem x n1 (ctx (x n1)))", {{"x", 0}});
  // A false context makes anything hold vacuously.
  yes("(elem 5 n1 (ctx (x n0)))", {{"x", 0}});

  no("(elem (suc zero) n1 (ctx))");
  no("(elem (pair zero (suc zero)) (sigma x n1 n1) (ctx))");
  no("(elem (lam x (suc x)) (arrow n1 n1) (ctx))");
  no("(eqelem zero (suc zero) n1 (ctx))");
  no("(eqtype n1 n0 (ctx))");
  no("(elem (rf a r) u0 (ctx))", {{"a", 0}, {"r", 0}});

  // Quantification over an unbounded domain cannot be affirmed.
  TriBool u = check_judgement_realized(J("(elem (lam x zero) (pi x (t 5) n1) (ctx))"), {});
  CHECK(u.is_unknown());
  // ... but a sampled counterexample still refutes.
  TriBool n = check_judgement_realized(J("(elem (lam x x) (pi x (t 5) n1) (ctx))"), {});
  CHECK(n.is_no());

  CHECK_THROWS_AS(
      check_judgement_realized(J("(elem x n1 (ctx (x n1)))"), {}), Error);
}

TEST_CASE("report lines carry the verdict") {
  Judgement j = J("(elem zero n1 (ctx))");
  CHECK(judgement_report_line(j, TriBool::yes()) ==
        "JUDGEMENT " + j.to_string() + " => YES");
  CHECK(judgement_report_line(j, TriBool::unknown(17)) ==
        "JUDGEMENT " + j.to_string() + " => UNKNOWN(fuel=17)");
}

TEST_CASE("choice-index extraction on total realizers") {
  // f x = (x+1, trivial witness): the relation y = x + 1.
  PcaTerm suc_f = PcaTerm::lam(PcaTerm::app(
      PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair),
                   PcaTerm::app(PcaTerm::prim(PcaTerm::Suc), PcaTerm::v(0))),
      PcaTerm::num(0)));
  CtReport rep = ct_demo(encode_term(suc_f), 0, 10);
  REQUIRE(rep.graph.size() == 11);
  for (const auto& [x, y] : rep.graph) CHECK(y == x + 1);
  CHECK(rep.text.find("CT extracted index e = ") != std::string::npos);

  // f x = (0, 0): the constant relation, with a relation realizer that
  // checks its input pair.
  PcaTerm zero_f = PcaTerm::lam(PcaTerm::app(
      PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair), PcaTerm::num(0)),
      PcaTerm::num(0)));
  PcaTerm rel = PcaTerm::lam(PcaTerm::lam(PcaTerm::num(0)));
  CtReport rep0 = ct_demo(encode_term(zero_f), encode_term(rel), 10);
  for (const auto& [x, y] : rep0.graph) CHECK(y == 0);

  // A realizer that diverges on some input is rejected.
  PcaTerm diverge = PcaTerm::lam(PcaTerm::app(
      PcaTerm::lam(PcaTerm::app(PcaTerm::v(0), PcaTerm::v(0))),
      PcaTerm::lam(PcaTerm::app(PcaTerm::v(0), PcaTerm::v(0)))));
  CHECK_THROWS_AS(ct_demo(encode_term(diverge), 0, 3, 2000), Error);
}
