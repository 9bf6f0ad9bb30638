#ifndef TOPO_DERIV_HPP
#define TOPO_DERIV_HPP

#include <string>
#include <vector>

#include "topo/core.hpp"
#include "topo/sexpr.hpp"

namespace topo {

/// Terms are raw s-expressions over a small concrete grammar (see README):
/// variables are atoms; application is (ap f a); binders are
/// (lam x b), (exists y A b), (forall y A b), (sigma y A b), (pi y A b);
/// the relation formers are (pos A I C a V) / (hat-pos s i c a v) /
/// (hat-cov s i c a v); membership in a subset is (eps a V) in the
/// extensional theories and (t (ap v a)) in the Tarski-style ones.
using Term = sx::Sexpr;

struct Judgement {
  enum Kind { Type, EqType, Elem, EqElem } kind = Type;
  Term a;           // subject (the type itself for Type/EqType)
  Term b;           // second subject for the equality forms
  Term ty;          // the type, for Elem/EqElem
  std::vector<std::pair<std::string, Term>> ctx;  // telescope, outermost first

  sx::Sexpr to_sexpr() const;
  static Judgement from_sexpr(const sx::Sexpr& e);  // throws ParseError/ScopeError
  std::string to_string() const { return to_sexpr().to_string(); }
  bool operator==(const Judgement& o) const;
};

struct Derivation {
  bool is_assumption = false;
  std::string rule;  // empty for assumptions
  Judgement concl;
  std::vector<Derivation> prems;

  static Derivation from_sexpr(const sx::Sexpr& e);
  sx::Sexpr to_sexpr() const;
};

enum class Ruleset { emTT, mTT, MLtt, MLS };
Ruleset ruleset_of_name(const std::string& name);  // throws ParseError

struct CheckResult {
  bool ok = true;
  std::vector<std::string> diagnostics;  // schema failures and warnings
};

/// Validates every node of the tree against the selected rule table
/// (plus repl and assumption leaves). Unknown rule labels — including the
/// deliberately absent xi — throw Error(UnknownRule); schema failures are
/// reported in the result.
CheckResult check_derivation(const Derivation& d, Ruleset rs);

/// The replacement-rule schema on a single node.
bool check_repl(const Derivation& node, std::string* diagnostic = nullptr);

// Term utilities shared with the tests.
bool alpha_eq(const Term& a, const Term& b);
Term subst(const Term& t, const std::string& var, const Term& replacement);
void free_vars(const Term& t, std::vector<std::string>& out);

/// Translates a judgement from the Russell-style theory into the
/// Tarski-style one: props becomes u0, prop formers become their hat-coded
/// counterparts, and uses of a small proposition as a type are wrapped in t.
Judgement translate_mtt_to_mltt(const Judgement& j);
Term translate_term(const Term& t);  // the term-role clause, exposed for tests
Term translate_type(const Term& t);  // the type-role clause

}  // namespace topo

#endif
