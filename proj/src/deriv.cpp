#include "topo/deriv.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace topo {

using sx::Sexpr;

namespace {

Sexpr S(const std::string& s) { return Sexpr::sym(s); }
Sexpr L(std::vector<Sexpr> xs) { return Sexpr::list(std::move(xs)); }
Sexpr ap(const Sexpr& f, const Sexpr& a) { return L({S("ap"), f, a}); }
Sexpr ap2(const Sexpr& f, const Sexpr& a, const Sexpr& b) { return ap(ap(f, a), b); }
Sexpr ap3(const Sexpr& f, const Sexpr& a, const Sexpr& b, const Sexpr& c) {
  return ap(ap2(f, a, b), c);
}
Sexpr ap4(const Sexpr& f, const Sexpr& a, const Sexpr& b, const Sexpr& c,
          const Sexpr& d) {
  return ap(ap3(f, a, b, c), d);
}

// Binder arities: (lam x b) binds x in b; the quantifier-style formers
// (q x A b) bind x in b but not in A.
bool is_lam(const Term& t) { return t.is_list() && t.head() == "lam" && t.size() == 3; }
bool is_quant(const Term& t) {
  if (!t.is_list() || t.size() != 4) return false;
  const std::string& h = t.head();
  return h == "exists" || h == "forall" || h == "sigma" || h == "pi" ||
         h == "hat-sigma" || h == "hat-pi";
}

void free_vars_impl(const Term& t, std::set<std::string>& bound,
                    std::vector<std::string>& out) {
  if (t.is_atom) {
    if (!bound.count(t.atom)) out.push_back(t.atom);
    return;
  }
  if (is_lam(t)) {
    if (!t[1].is_atom) throw Error(ErrorKind::ParseError, "binder variable must be an atom");
    bool fresh = bound.insert(t[1].atom).second;
    free_vars_impl(t[2], bound, out);
    if (fresh) bound.erase(t[1].atom);
    return;
  }
  if (is_quant(t)) {
    if (!t[1].is_atom) throw Error(ErrorKind::ParseError, "binder variable must be an atom");
    free_vars_impl(t[2], bound, out);
    bool fresh = bound.insert(t[1].atom).second;
    free_vars_impl(t[3], bound, out);
    if (fresh) bound.erase(t[1].atom);
    return;
  }
  // Ordinary former: item 0 is a rigid keyword, the rest are subterms.
  for (std::size_t i = 1; i < t.size(); ++i) free_vars_impl(t[i], bound, out);
}

bool occurs_free(const Term& t, const std::string& v) {
  std::vector<std::string> fv;
  free_vars(t, fv);
  return std::find(fv.begin(), fv.end(), v) != fv.end();
}

std::string fresh_name(const std::string& base, const std::vector<const Term*>& avoid) {
  for (int k = 0;; ++k) {
    std::string cand = k == 0 ? base : base + "_" + std::to_string(k);
    bool clash = false;
    for (const Term* t : avoid)
      if (occurs_free(*t, cand)) {
        clash = true;
        break;
      }
    if (!clash) return cand;
  }
}

bool alpha_eq_impl(const Term& a, const Term& b,
                   std::vector<std::pair<std::string, std::string>>& stack) {
  if (a.is_atom != b.is_atom) return false;
  if (a.is_atom) {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (it->first == a.atom || it->second == b.atom)
        return it->first == a.atom && it->second == b.atom;
    }
    return a.atom == b.atom;
  }
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  if (!(a[0] == b[0])) return false;  // rigid keyword
  if (is_lam(a) != is_lam(b) || is_quant(a) != is_quant(b)) return false;
  if (is_lam(a)) {
    if (!a[1].is_atom || !b[1].is_atom) return false;
    stack.emplace_back(a[1].atom, b[1].atom);
    bool ok = alpha_eq_impl(a[2], b[2], stack);
    stack.pop_back();
    return ok;
  }
  if (is_quant(a)) {
    if (!a[1].is_atom || !b[1].is_atom) return false;
    if (!alpha_eq_impl(a[2], b[2], stack)) return false;
    stack.emplace_back(a[1].atom, b[1].atom);
    bool ok = alpha_eq_impl(a[3], b[3], stack);
    stack.pop_back();
    return ok;
  }
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!alpha_eq_impl(a[i], b[i], stack)) return false;
  return true;
}

using Substitution = std::map<std::string, Term>;

Term subst_multi(const Term& t, const Substitution& sub);

Term subst_binder(const Term& t, const Substitution& sub, std::size_t var_pos,
                  std::size_t body_pos, bool dom_is_sub) {
  Substitution inner = sub;
  inner.erase(t[var_pos].atom);
  Term out = t;
  if (dom_is_sub) out.items[2] = subst_multi(t[2], sub);  // domain: full substitution
  if (inner.empty()) return out;
  std::string v = t[var_pos].atom;
  bool clash = false;
  for (const auto& [k, rep] : inner)
    if (occurs_free(t[body_pos], k) && occurs_free(rep, v)) clash = true;
  if (clash) {
    std::vector<const Term*> avoid{&t[body_pos]};
    for (const auto& [k, rep] : inner) avoid.push_back(&rep);
    std::string nv = fresh_name(v, avoid);
    Substitution rename{{v, S(nv)}};
    out.items[var_pos] = S(nv);
    out.items[body_pos] = subst_multi(subst_multi(t[body_pos], rename), inner);
  } else {
    out.items[body_pos] = subst_multi(t[body_pos], inner);
  }
  return out;
}

Term subst_multi(const Term& t, const Substitution& sub) {
  if (sub.empty()) return t;
  if (t.is_atom) {
    auto it = sub.find(t.atom);
    return it == sub.end() ? t : it->second;
  }
  if (is_lam(t)) return subst_binder(t, sub, 1, 2, false);
  if (is_quant(t)) return subst_binder(t, sub, 1, 3, true);
  Term out = t;
  for (std::size_t i = 1; i < t.size(); ++i) out.items[i] = subst_multi(t[i], sub);
  return out;
}

using Ctx = std::vector<std::pair<std::string, Term>>;

[[noreturn]] void mismatch(const std::string& msg) {
  throw Error(ErrorKind::SchemaMismatch, msg);
}

/// Destructures `t` as f applied to exactly the given variable atoms in
/// order, returning f; f must not mention those variables.
Term strip_apps(const Term& t, const std::vector<std::string>& vars,
                const std::string& what) {
  Term cur = t;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (!cur.is_list() || cur.head() != "ap" || cur.size() != 3 || !cur[2].is_atom ||
        cur[2].atom != *it)
      mismatch(what + " must be applied to the context variables in order");
    Term inner = cur[1];  // copy out first: the source aliases cur's storage
    cur = std::move(inner);
  }
  for (const std::string& v : vars)
    if (occurs_free(cur, v)) mismatch(what + " head may not mention its arguments");
  return cur;
}

}  // namespace

void free_vars(const Term& t, std::vector<std::string>& out) {
  std::set<std::string> bound;
  free_vars_impl(t, bound, out);
}

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::pair<std::string, std::string>> stack;
  return alpha_eq_impl(a, b, stack);
}

Term subst(const Term& t, const std::string& var, const Term& replacement) {
  return subst_multi(t, {{var, replacement}});
}

// ---------------------------------------------------------------------------
// Judgements and derivations
// ---------------------------------------------------------------------------

sx::Sexpr Judgement::to_sexpr() const {
  std::vector<Sexpr> c{S("ctx")};
  for (const auto& [n, t] : ctx) c.push_back(L({S(n), t}));
  switch (kind) {
    case Type:
      return L({S("type"), a, L(std::move(c))});
    case EqType:
      return L({S("eqtype"), a, b, L(std::move(c))});
    case Elem:
      return L({S("elem"), a, ty, L(std::move(c))});
    case EqElem:
      return L({S("eqelem"), a, b, ty, L(std::move(c))});
  }
  mismatch("unreachable");
}

Judgement Judgement::from_sexpr(const sx::Sexpr& e) {
  Judgement j;
  const std::string& h = e.head();
  std::size_t body;
  if (h == "type") j.kind = Type, body = 2;
  else if (h == "eqtype") j.kind = EqType, body = 3;
  else if (h == "elem") j.kind = Elem, body = 3;
  else if (h == "eqelem") j.kind = EqElem, body = 4;
  else throw Error(ErrorKind::ParseError, "unknown judgement form: " + h);
  if (e.size() != body && e.size() != body + 1)
    throw Error(ErrorKind::ParseError, "judgement " + h + " has wrong arity");
  j.a = e[1];
  if (j.kind == EqType || j.kind == EqElem) j.b = e[2];
  if (j.kind == Elem) j.ty = e[2];
  if (j.kind == EqElem) j.ty = e[3];
  if (e.size() == body + 1) {
    const Sexpr& c = e[body];
    if (c.head() != "ctx") throw Error(ErrorKind::ParseError, "expected (ctx ...)");
    std::set<std::string> names;
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (!c[i].is_list() || c[i].size() != 2 || !c[i][0].is_atom)
        throw Error(ErrorKind::ParseError, "context entry must be (x Type)");
      if (!names.insert(c[i][0].atom).second)
        throw Error(ErrorKind::ScopeError,
                    "duplicate context variable " + c[i][0].atom);
      j.ctx.emplace_back(c[i][0].atom, c[i][1]);
    }
  }
  return j;
}

bool Judgement::operator==(const Judgement& o) const {
  return kind == o.kind && a == o.a && b == o.b && ty == o.ty && ctx == o.ctx;
}

Derivation Derivation::from_sexpr(const sx::Sexpr& e) {
  Derivation d;
  if (e.head() == "assume") {
    if (e.size() != 2) throw Error(ErrorKind::ParseError, "(assume J) takes one judgement");
    d.is_assumption = true;
    d.concl = Judgement::from_sexpr(e[1]);
    return d;
  }
  if (e.head() != "rule" || e.size() < 3 || !e[1].is_atom)
    throw Error(ErrorKind::ParseError,
                "derivation must be (assume J) or (rule name (concl J) (prem ...))");
  d.rule = e[1].atom;
  if (e[2].head() != "concl" || e[2].size() != 2)
    throw Error(ErrorKind::ParseError, "expected (concl J)");
  d.concl = Judgement::from_sexpr(e[2][1]);
  if (e.size() == 4) {
    if (e[3].head() != "prem") throw Error(ErrorKind::ParseError, "expected (prem ...)");
    for (std::size_t i = 1; i < e[3].size(); ++i)
      d.prems.push_back(from_sexpr(e[3][i]));
  } else if (e.size() > 4) {
    throw Error(ErrorKind::ParseError, "derivation node has trailing clauses");
  }
  return d;
}

sx::Sexpr Derivation::to_sexpr() const {
  if (is_assumption) return L({S("assume"), concl.to_sexpr()});
  std::vector<Sexpr> ps{S("prem")};
  for (const Derivation& p : prems) ps.push_back(p.to_sexpr());
  return L({S("rule"), S(rule), L({S("concl"), concl.to_sexpr()}), L(std::move(ps))});
}

Ruleset ruleset_of_name(const std::string& name) {
  if (name == "emTT") return Ruleset::emTT;
  if (name == "mTT") return Ruleset::mTT;
  if (name == "MLtt") return Ruleset::MLtt;
  if (name == "MLS") return Ruleset::MLS;
  throw Error(ErrorKind::ParseError, "unknown ruleset: " + name);
}

// ---------------------------------------------------------------------------
// Rule checkers
// ---------------------------------------------------------------------------

namespace {

struct NodeChecker {
  Ruleset rs;
  const Derivation& node;
  const Ctx& gamma;
  std::vector<std::string>* warnings;

  bool tarski() const { return rs == Ruleset::MLtt || rs == Ruleset::MLS; }
  Term univ() const {
    if (rs == Ruleset::MLtt) return S("u0");
    if (rs == Ruleset::MLS) return S("S");
    return S("props");
  }
  // The type of base elements: A itself, or T(s).
  Term el_of(const Term& base) const {
    return tarski() ? L({S("t"), base}) : base;
  }
  Term fam_ty(const Term& base) const {
    if (rs == Ruleset::emTT) return L({S("pow"), base});
    if (rs == Ruleset::mTT) return L({S("arrow"), base, S("props")});
    return L({S("arrow"), el_of(base), univ()});
  }
  Term eps(const Term& a, const Term& v) const {
    return tarski() ? L({S("t"), ap(v, a)}) : L({S("eps"), a, v});
  }
  // The proposition/code "a positive in v" for the axiom data.
  Term pos_code(const Term& base, const Term& I, const Term& C, const Term& a,
                const Term& v) const {
    const char* h = rs == Ruleset::MLtt ? "hat-pos" : "pos";
    return L({S(h), base, I, C, a, v});
  }
  // The same, in type role (Tarski wraps in t).
  Term pos_ty(const Term& base, const Term& I, const Term& C, const Term& a,
              const Term& v) const {
    Term c = pos_code(base, I, C, a, v);
    return rs == Ruleset::MLtt ? L({S("t"), c}) : c;
  }
  Term cov_ty(const Term& base, const Term& I, const Term& C, const Term& a,
              const Term& v) const {
    return L({S("t"), L({S("hat-cov"), base, I, C, a, v})});
  }

  const Judgement& prem(std::size_t k) const {
    if (k >= node.prems.size()) mismatch("missing premise " + std::to_string(k));
    return node.prems[k].concl;
  }
  void need_prems(std::size_t n) const {
    if (node.prems.size() != n)
      mismatch("rule " + node.rule + " takes " + std::to_string(n) + " premises, got " +
               std::to_string(node.prems.size()));
  }

  /// Premise contexts must literally extend the conclusion's context.
  Ctx ext(const Judgement& j, std::size_t expect_n) const {
    if (j.ctx.size() < gamma.size() ||
        !std::equal(gamma.begin(), gamma.end(), j.ctx.begin()))
      mismatch("premise context does not extend the conclusion context");
    Ctx out(j.ctx.begin() + gamma.size(), j.ctx.end());
    if (out.size() != expect_n)
      mismatch("premise context extension has wrong length");
    return out;
  }

  void want(bool cond, const std::string& msg) const {
    if (!cond) mismatch(msg);
  }
  void want_alpha(const Term& actual, const Term& expected, const std::string& what) const {
    if (!alpha_eq(actual, expected))
      mismatch(what + ": expected " + expected.to_string() + ", found " +
               actual.to_string());
  }

  /// Matches `actual` against (quant y dom (conj l r)) with the conjuncts in
  /// either order; l and r are built over the bound variable name `y`.
  void want_quant_conj(const Term& actual, const std::string& quant,
                       const std::string& conj, const std::string& y,
                       const Term& dom, const Term& l, const Term& r,
                       const std::string& what) const {
    Term e1 = L({S(quant), S(y), dom, L({S(conj), l, r})});
    Term e2 = L({S(quant), S(y), dom, L({S(conj), r, l})});
    if (!alpha_eq(actual, e1) && !alpha_eq(actual, e2))
      mismatch(what + ": expected " + e1.to_string() + " (conjuncts may be swapped), found " +
               actual.to_string());
  }

  struct AxData {
    Term base, I, C;
  };

  /// Premises 0..2: the axiom-set data A/s, I/i, C/c.
  AxData data() const {
    AxData d;
    {
      const Judgement& p = prem(0);
      if (tarski()) {
        want(p.kind == Judgement::Elem, "premise 0 must be a code judgement");
        want_alpha(p.ty, univ(), "premise 0 universe");
      } else {
        want(p.kind == Judgement::Type, "premise 0 must be a type judgement");
      }
      ext(p, 0);
      d.base = p.a;
    }
    {
      const Judgement& p = prem(1);
      Term body;
      if (tarski()) {
        want(p.kind == Judgement::Elem, "premise 1 must be a code judgement");
        want_alpha(p.ty, univ(), "premise 1 universe");
        body = p.a;
      } else {
        want(p.kind == Judgement::Type, "premise 1 must be a type judgement");
        body = p.a;
      }
      Ctx e = ext(p, 1);
      want_alpha(e[0].second, el_of(d.base), "premise 1 context entry");
      d.I = strip_apps(body, {e[0].first}, "index family");
    }
    {
      const Judgement& p = prem(2);
      want(p.kind == Judgement::Elem, "premise 2 must be a membership judgement");
      want_alpha(p.ty, fam_ty(d.base), "cover family type");
      Ctx e = ext(p, 2);
      const std::string& x = e[0].first;
      want_alpha(e[0].second, el_of(d.base), "premise 2 context entry for x");
      Term it = tarski() ? L({S("t"), ap(d.I, S(x))}) : ap(d.I, S(x));
      want_alpha(e[1].second, it, "premise 2 context entry for j");
      d.C = strip_apps(p.a, {x, e[1].first}, "cover family");
    }
    return d;
  }

  /// A plain membership premise `subject : type` in the ambient context.
  Term member(std::size_t k, const Term& ty, const std::string& what) const {
    const Judgement& p = prem(k);
    want(p.kind == Judgement::Elem, what + " must be a membership judgement");
    ext(p, 0);
    want_alpha(p.ty, ty, what + " type");
    return p.a;
  }

  /// emTT truth premise `phi true`, encoded as `true : phi`.
  Term truth(std::size_t k, const std::string& what) const {
    const Judgement& p = prem(k);
    want(p.kind == Judgement::Elem && p.a == S("true"),
         what + " must be a truth judgement (elem true ...)");
    ext(p, 0);
    return p.ty;
  }

  void conclude_elem(const Term& subject, const Term& ty) const {
    want(node.concl.kind == Judgement::Elem, "conclusion must be a membership judgement");
    want_alpha(node.concl.a, subject, "conclusion subject");
    want_alpha(node.concl.ty, ty, "conclusion type");
  }
  void conclude_eqelem(const Term& l, const Term& r, const Term& ty) const {
    want(node.concl.kind == Judgement::EqElem, "conclusion must be an equality judgement");
    want_alpha(node.concl.a, l, "conclusion left side");
    want_alpha(node.concl.b, r, "conclusion right side");
    want_alpha(node.concl.ty, ty, "conclusion type");
  }

  // --- positivity rules -----------------------------------------------------

  void f_pos() const {
    need_prems(5);
    AxData d = data();
    Term v = member(3, fam_ty(d.base), "subset premise");
    Term a = member(4, el_of(d.base), "element premise");
    if (rs == Ruleset::emTT || rs == Ruleset::mTT)
      conclude_elem(pos_code(d.base, d.I, d.C, a, v), S("props"));
    else
      conclude_elem(pos_code(d.base, d.I, d.C, a, v), S("u0"));
  }

  void crf_pos() const {
    if (rs == Ruleset::emTT) {
      need_prems(5);
      AxData d = data();
      Term v = member(3, fam_ty(d.base), "subset premise");
      Term p = truth(4, "positivity premise");
      // destructure (pos base I C a v)
      want(p.is_list() && p.head() == "pos" && p.size() == 6,
           "positivity premise must be a pos proposition");
      want_alpha(p[1], d.base, "pos base");
      want_alpha(p[2], d.I, "pos index family");
      want_alpha(p[3], d.C, "pos cover family");
      want_alpha(p[5], v, "pos subset");
      Term a = p[4];
      want(node.concl.kind == Judgement::Elem && node.concl.a == S("true"),
           "conclusion must be a truth judgement");
      want_alpha(node.concl.ty, eps(a, v), "conclusion");
      return;
    }
    need_prems(6);
    AxData d = data();
    Term v = member(3, fam_ty(d.base), "subset premise");
    Term a = member(4, el_of(d.base), "element premise");
    Term q = member(5, pos_ty(d.base, d.I, d.C, a, v), "positivity premise");
    conclude_elem(L({S("ax1"), a, q}), eps(a, v));
  }

  void ax_mon_pos() const {
    need_prems(7);
    AxData d = data();
    Term a, i, v, q;
    if (rs == Ruleset::emTT) {
      a = member(3, el_of(d.base), "element premise");
      i = member(4, ap(d.I, a), "index premise");
      v = member(5, fam_ty(d.base), "subset premise");
      Term p = truth(6, "positivity premise");
      want_alpha(p, pos_code(d.base, d.I, d.C, a, v), "positivity premise");
    } else if (rs == Ruleset::mTT) {
      v = member(3, fam_ty(d.base), "subset premise");
      a = member(4, el_of(d.base), "element premise");
      i = member(5, ap(d.I, a), "index premise");
      q = member(6, pos_ty(d.base, d.I, d.C, a, v), "positivity premise");
    } else {
      v = member(3, fam_ty(d.base), "subset premise");
      a = member(4, el_of(d.base), "element premise");
      i = member(5, L({S("t"), ap(d.I, a)}), "index premise");
      q = member(6, pos_ty(d.base, d.I, d.C, a, v), "positivity premise");
    }
    std::string y = fresh_name("y", {&d.base, &d.I, &d.C, &a, &i, &v});
    Term memb = eps(S(y), ap2(d.C, a, i));
    Term posy = pos_ty(d.base, d.I, d.C, S(y), v);
    if (rs == Ruleset::emTT) {
      want(node.concl.kind == Judgement::Elem && node.concl.a == S("true"),
           "conclusion must be a truth judgement");
      want_quant_conj(node.concl.ty, "exists", "and", y, d.base, memb, posy,
                      "conclusion");
      return;
    }
    want(node.concl.kind == Judgement::Elem, "conclusion must be a membership judgement");
    const Term& t = node.concl.a;
    want(t.is_list() && t.head() == "ax2" && t.size() == 4, "conclusion term must be ax2");
    want_alpha(t[1], a, "ax2 element");
    if (rs == Ruleset::MLtt && !alpha_eq(t[2], i) && alpha_eq(t[2], d.I)) {
      if (warnings)
        warnings->push_back(
            "ax2 written with the index family in place of the index; accepted");
    } else {
      want_alpha(t[2], i, "ax2 index");
    }
    want_alpha(t[3], q, "ax2 proof");
    const char* qh = rs == Ruleset::mTT ? "exists" : "sigma";
    const char* ch = rs == Ruleset::mTT ? "and" : "times";
    want_quant_conj(node.concl.ty, qh, ch, y, el_of(d.base), memb, posy,
                    "conclusion type");
  }

  void cind_pos() const {
    AxData d = data();
    if (rs == Ruleset::emTT) {
      need_prems(8);
      Term a = member(3, el_of(d.base), "element premise");
      Term v = member(4, fam_ty(d.base), "subset premise");
      Term p;
      {
        const Judgement& pj = prem(5);
        want(pj.kind == Judgement::Type, "predicate premise must be a type judgement");
        Ctx e = ext(pj, 1);
        want_alpha(e[0].second, d.base, "predicate context entry");
        p = strip_apps(pj.a, {e[0].first}, "predicate family");
      }
      Term sp = truth(6, "split premise");
      want(sp.is_list() && sp.head() == "split" && sp.size() == 6,
           "split premise must be (split A I C V P)");
      want_alpha(sp[1], d.base, "split base");
      want_alpha(sp[2], d.I, "split index family");
      want_alpha(sp[3], d.C, "split cover family");
      want_alpha(sp[4], v, "split subset");
      want_alpha(sp[5], p, "split predicate");
      want_alpha(truth(7, "predicate-at-a premise"), ap(p, a), "predicate-at-a premise");
      want(node.concl.kind == Judgement::Elem && node.concl.a == S("true"),
           "conclusion must be a truth judgement");
      want_alpha(node.concl.ty, pos_code(d.base, d.I, d.C, a, v), "conclusion");
      return;
    }
    need_prems(9);
    Term p;
    {
      const Judgement& pj = prem(3);
      want(pj.kind == Judgement::Type, "predicate premise must be a type judgement");
      Ctx e = ext(pj, 1);
      want_alpha(e[0].second, el_of(d.base), "predicate context entry");
      p = strip_apps(pj.a, {e[0].first}, "predicate family");
    }
    Term v = member(4, fam_ty(d.base), "subset premise");
    Term a = member(5, el_of(d.base), "element premise");
    Term m = member(6, ap(p, a), "inhabitant premise");
    Term q1;
    {
      const Judgement& pj = prem(7);
      want(pj.kind == Judgement::Elem, "q1 premise must be a membership judgement");
      Ctx e = ext(pj, 2);
      const std::string &x = e[0].first, &z = e[1].first;
      want_alpha(e[0].second, el_of(d.base), "q1 context entry for x");
      want_alpha(e[1].second, ap(p, S(x)), "q1 context entry for z");
      q1 = strip_apps(pj.a, {x, z}, "q1");
      Term vx = rs == Ruleset::mTT ? eps(S(x), v) : L({S("t"), ap(v, S(x))});
      want_alpha(pj.ty, vx, "q1 type");
    }
    Term q2;
    {
      const Judgement& pj = prem(8);
      want(pj.kind == Judgement::Elem, "q2 premise must be a membership judgement");
      Ctx e = ext(pj, 3);
      const std::string &x = e[0].first, &j = e[1].first, &z = e[2].first;
      want_alpha(e[0].second, el_of(d.base), "q2 context entry for x");
      Term jt = tarski() ? L({S("t"), ap(d.I, S(x))}) : ap(d.I, S(x));
      want_alpha(e[1].second, jt, "q2 context entry for j");
      want_alpha(e[2].second, ap(p, S(x)), "q2 context entry for z");
      q2 = strip_apps(pj.a, {x, j, z}, "q2");
      const char* qh = rs == Ruleset::mTT ? "exists" : "sigma";
      const char* ch = rs == Ruleset::mTT ? "and" : "times";
      Term xt = S(x), jt2 = S(j);
      std::string y = fresh_name("y", {&d.base, &d.I, &d.C, &p, &v, &xt, &jt2});
      want_quant_conj(pj.ty, qh, ch, y, el_of(d.base), ap(p, S(y)),
                      eps(S(y), ap2(d.C, S(x), S(j))), "q2 type");
    }
    Term subj = rs == Ruleset::mTT ? L({S("ax3"), a, m, q1, q2})
                                   : L({S("ax3"), m, q1, q2});
    conclude_elem(subj, pos_ty(d.base, d.I, d.C, a, v));
  }

  // --- cover rules (MLS) ----------------------------------------------------

  void f_cov() const {
    need_prems(5);
    AxData d = data();
    Term a = member(3, el_of(d.base), "element premise");
    Term v = member(4, fam_ty(d.base), "subset premise");
    conclude_elem(L({S("hat-cov"), d.base, d.I, d.C, a, v}), S("S"));
  }

  void rf_cov() const {
    need_prems(6);
    AxData d = data();
    Term a = member(3, el_of(d.base), "element premise");
    Term v = member(4, fam_ty(d.base), "subset premise");
    Term r = member(5, eps(a, v), "membership premise");
    conclude_elem(L({S("rf"), a, r}), cov_ty(d.base, d.I, d.C, a, v));
  }

  Term tr_arg_type(const AxData& d, const Term& a, const Term& j, const Term& v) const {
    std::string z = fresh_name("z", {&d.base, &d.I, &d.C, &a, &j, &v});
    return L({S("pi"), S(z), el_of(d.base),
              L({S("arrow"), eps(S(z), ap2(d.C, a, j)),
                 cov_ty(d.base, d.I, d.C, S(z), v)})});
  }

  void tr_cov() const {
    need_prems(7);
    AxData d = data();
    Term a = member(3, el_of(d.base), "element premise");
    Term j = member(4, L({S("t"), ap(d.I, a)}), "index premise");
    Term v = member(5, fam_ty(d.base), "subset premise");
    Term r = member(6, tr_arg_type(d, a, j, v), "cover-function premise");
    conclude_elem(L({S("tr"), a, j, r}), cov_ty(d.base, d.I, d.C, a, v));
  }

  struct IndParts {
    AxData d;
    Term v, P, q1, q2;
  };

  /// Premises 0..2 data, 3 subset, 4 motive P(x,u); then (after the
  /// rule-specific premises at positions elim..) q1 and q2 at the two
  /// final positions.
  IndParts ind_common(std::size_t q1_at) const {
    IndParts r;
    r.d = data();
    r.v = member(3, fam_ty(r.d.base), "subset premise");
    {
      const Judgement& pj = prem(4);
      want(pj.kind == Judgement::Type, "motive premise must be a type judgement");
      Ctx e = ext(pj, 2);
      const std::string &x = e[0].first, &u = e[1].first;
      want_alpha(e[0].second, el_of(r.d.base), "motive context entry for x");
      want_alpha(e[1].second, cov_ty(r.d.base, r.d.I, r.d.C, S(x), r.v),
                 "motive context entry for u");
      r.P = strip_apps(pj.a, {x, u}, "motive");
    }
    {
      const Judgement& pj = prem(q1_at);
      want(pj.kind == Judgement::Elem, "q1 premise must be a membership judgement");
      Ctx e = ext(pj, 2);
      const std::string &x = e[0].first, &w = e[1].first;
      want_alpha(e[0].second, el_of(r.d.base), "q1 context entry for x");
      want_alpha(e[1].second, eps(S(x), r.v), "q1 context entry for w");
      r.q1 = strip_apps(pj.a, {x, w}, "q1");
      want_alpha(pj.ty, ap2(r.P, S(x), L({S("rf"), S(x), S(w)})), "q1 type");
    }
    {
      const Judgement& pj = prem(q1_at + 1);
      want(pj.kind == Judgement::Elem, "q2 premise must be a membership judgement");
      Ctx e = ext(pj, 4);
      const std::string &x = e[0].first, &h = e[1].first, &k = e[2].first,
                        &f = e[3].first;
      want_alpha(e[0].second, el_of(r.d.base), "q2 context entry for x");
      want_alpha(e[1].second, L({S("t"), ap(r.d.I, S(x))}), "q2 context entry for h");
      want_alpha(e[2].second, tr_arg_type(r.d, S(x), S(h), r.v),
                 "q2 context entry for k");
      Term xt = S(x), ht = S(h), kt = S(k);
      std::string z =
          fresh_name("z", {&r.d.base, &r.d.C, &r.P, &r.v, &xt, &ht, &kt});
      std::string u =
          fresh_name("u", {&r.d.base, &r.d.C, &r.P, &r.v, &xt, &ht, &kt});
      Term fty = L({S("pi"), S(z), el_of(r.d.base),
                    L({S("pi"), S(u), eps(S(z), ap2(r.d.C, S(x), S(h))),
                       ap2(r.P, S(z), ap2(S(k), S(z), S(u)))})});
      want_alpha(e[3].second, fty, "q2 context entry for f");
      r.q2 = strip_apps(pj.a, {x, h, k, f}, "q2");
      want_alpha(pj.ty, ap2(r.P, S(x), L({S("tr"), S(x), S(h), S(k)})), "q2 type");
    }
    return r;
  }

  void ind_cov() const {
    need_prems(9);
    IndParts r = ind_common(7);
    Term a = member(5, el_of(r.d.base), "element premise");
    Term m = member(6, cov_ty(r.d.base, r.d.I, r.d.C, a, r.v), "cover premise");
    conclude_elem(L({S("ind"), m, r.q1, r.q2}), ap2(r.P, a, m));
  }

  void c1_ind_cov() const {
    need_prems(9);
    IndParts r = ind_common(7);
    Term a = member(5, el_of(r.d.base), "element premise");
    Term rr = member(6, eps(a, r.v), "membership premise");
    Term rfterm = L({S("rf"), a, rr});
    conclude_eqelem(L({S("ind"), rfterm, r.q1, r.q2}), ap2(r.q1, a, rr),
                    ap2(r.P, a, rfterm));
  }

  void c2_ind_cov() const {
    need_prems(10);
    IndParts r = ind_common(8);
    Term a = member(5, el_of(r.d.base), "element premise");
    Term j = member(6, L({S("t"), ap(r.d.I, a)}), "index premise");
    Term rr = member(7, tr_arg_type(r.d, a, j, r.v), "cover-function premise");
    Term trterm = L({S("tr"), a, j, rr});
    std::string z = fresh_name("z", {&rr, &r.q1, &r.q2});
    std::string u = fresh_name("u", {&rr, &r.q1, &r.q2});
    Term unfold =
        L({S("lam"), S(z),
           L({S("lam"), S(u),
              L({S("ind"), ap2(rr, S(z), S(u)), r.q1, r.q2})})});
    conclude_eqelem(L({S("ind"), trterm, r.q1, r.q2}),
                    ap4(r.q2, a, j, rr, unfold), ap2(r.P, a, trterm));
  }

  // --- replacement ----------------------------------------------------------

  void repl() const {
    if (node.prems.empty()) mismatch("repl needs the substituted-term premise");
    const Judgement& p0 = prem(0);
    want(p0.kind == Judgement::Elem, "repl premise 0 must be a membership judgement");
    std::size_t n = node.prems.size() - 1;
    Ctx xs = ext(p0, n);
    Substitution sub_a, sub_b;
    for (std::size_t i = 0; i < n; ++i) {
      const Judgement& pi = prem(i + 1);
      want(pi.kind == Judgement::EqElem,
           "repl equation premises must be equality judgements");
      ext(pi, 0);
      want_alpha(pi.ty, subst_multi(xs[i].second, sub_a),
                 "repl equation " + std::to_string(i) + " type");
      sub_a[xs[i].first] = pi.a;
      sub_b[xs[i].first] = pi.b;
    }
    conclude_eqelem(subst_multi(p0.a, sub_a), subst_multi(p0.a, sub_b),
                    subst_multi(p0.ty, sub_a));
  }

  void dispatch() const {
    const std::string& r = node.rule;
    bool pos_table = rs != Ruleset::MLS;
    if (r == "repl") return repl();
    if (pos_table) {
      if (r == "F-Pos") return f_pos();
      if (r == "crf-Pos") return crf_pos();
      if (r == "ax-mon-Pos") return ax_mon_pos();
      if (r == "cind-Pos") return cind_pos();
    } else {
      if (r == "F-cov") return f_cov();
      if (r == "rf-cov") return rf_cov();
      if (r == "tr-cov") return tr_cov();
      if (r == "ind-cov") return ind_cov();
      if (r == "C1-ind-cov") return c1_ind_cov();
      if (r == "C2-ind-cov") return c2_ind_cov();
    }
    throw Error(ErrorKind::UnknownRule, "rule not in the selected table: " + r);
  }
};

void check_tree(const Derivation& d, Ruleset rs, CheckResult& res,
                const std::string& path) {
  if (d.is_assumption) return;
  for (std::size_t i = 0; i < d.prems.size(); ++i)
    check_tree(d.prems[i], rs, res, path + "." + std::to_string(i));
  NodeChecker nc{rs, d, d.concl.ctx, &res.diagnostics};
  try {
    nc.dispatch();
  } catch (const Error& e) {
    if (e.kind == ErrorKind::SchemaMismatch || e.kind == ErrorKind::ScopeError) {
      res.ok = false;
      res.diagnostics.push_back("node " + path + " (" + d.rule + "): " + e.what());
    } else {
      throw;
    }
  }
}

}  // namespace

CheckResult check_derivation(const Derivation& d, Ruleset rs) {
  CheckResult res;
  check_tree(d, rs, res, "root");
  return res;
}

bool check_repl(const Derivation& node, std::string* diagnostic) {
  if (node.rule != "repl") {
    if (diagnostic) *diagnostic = "node is not labelled repl";
    return false;
  }
  NodeChecker nc{Ruleset::MLS, node, node.concl.ctx, nullptr};
  try {
    nc.repl();
    return true;
  } catch (const Error& e) {
    if (diagnostic) *diagnostic = e.what();
    return false;
  }
}

// ---------------------------------------------------------------------------
// Russell-to-Tarski translation
// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, std::string>& hat_table() {
  static const std::map<std::string, std::string> t{
      {"pos", "hat-pos"},     {"exists", "hat-sigma"}, {"forall", "hat-pi"},
      {"and", "hat-times"},   {"or", "hat-plus"},      {"implies", "hat-arrow"},
      {"split", "hat-split"}, {"sigma", "hat-sigma"},  {"pi", "hat-pi"},
      {"times", "hat-times"}, {"plus", "hat-plus"},    {"arrow", "hat-arrow"},
      {"list", "hat-list"},   {"id", "hat-id"},        {"n0", "hat-n0"},
      {"n1", "hat-n1"},
  };
  return t;
}

bool structural_former(const std::string& h) {
  static const std::set<std::string> s{"ap", "pair", "p1",  "p2",  "ax1",
                                       "ax2", "rf",  "tr",  "ind", "suc",
                                       "zero"};
  return s.count(h) > 0;
}

}  // namespace

Term translate_term(const Term& t) {
  if (t.is_atom) {
    if (t.atom == "props") return S("u0");
    if (t.atom == "true" || t.atom == "prop")
      throw Error(ErrorKind::UnsupportedConstruct,
                  t.atom + " has no term-level translation");
    auto it = hat_table().find(t.atom);
    return it == hat_table().end() ? t : S(it->second);
  }
  const std::string& h = t.head();
  if (h == "lam") {
    Term out = t;
    out.items[2] = translate_term(t[2]);
    return out;
  }
  if (h == "ax3") {
    if (t.size() != 5)
      throw Error(ErrorKind::UnsupportedConstruct, "ax3 expects four arguments here");
    // The Tarski-side constant drops the element argument.
    return L({S("ax3"), translate_term(t[2]), translate_term(t[3]),
              translate_term(t[4])});
  }
  if (h == "eps") {
    if (t.size() != 3) throw Error(ErrorKind::UnsupportedConstruct, "eps arity");
    return ap(translate_term(t[2]), translate_term(t[1]));
  }
  auto it = hat_table().find(h);
  if (it != hat_table().end()) {
    Term out = t;
    out.items[0] = S(it->second);
    std::size_t first = is_quant(t) ? 2 : 1;  // binder variables stay put
    for (std::size_t i = first; i < t.size(); ++i)
      out.items[i] = translate_term(t[i]);
    return out;
  }
  if (structural_former(h)) {
    Term out = t;
    for (std::size_t i = 1; i < t.size(); ++i) out.items[i] = translate_term(t[i]);
    return out;
  }
  throw Error(ErrorKind::UnsupportedConstruct, "cannot translate former: " + h);
}

Term translate_type(const Term& t) {
  if (t.is_atom) {
    if (t.atom == "props") return S("u0");
    return L({S("t"), t});
  }
  if (t.head() == "arrow" && t.size() == 3 && t[2] == S("props"))
    return L({S("arrow"), translate_type(t[1]), S("u0")});
  if (t.head() == "pow")
    throw Error(ErrorKind::UnsupportedConstruct, "pow is extensional-only");
  return L({S("t"), translate_term(t)});
}

Judgement translate_mtt_to_mltt(const Judgement& j) {
  Judgement out;
  out.ctx.reserve(j.ctx.size());
  for (const auto& [n, ty] : j.ctx) out.ctx.emplace_back(n, translate_type(ty));
  switch (j.kind) {
    case Judgement::Type:
      out.kind = Judgement::Type;
      out.a = translate_type(j.a);
      return out;
    case Judgement::EqType:
      out.kind = Judgement::EqType;
      out.a = translate_type(j.a);
      out.b = translate_type(j.b);
      return out;
    case Judgement::Elem:
      if (j.ty == S("prop")) {  // a large proposition used as a type
        out.kind = Judgement::Type;
        out.a = translate_type(j.a);
        return out;
      }
      out.kind = Judgement::Elem;
      out.a = translate_term(j.a);
      out.ty = j.ty == S("props") ? S("u0") : translate_type(j.ty);
      return out;
    case Judgement::EqElem:
      out.kind = Judgement::EqElem;
      out.a = translate_term(j.a);
      out.b = translate_term(j.b);
      out.ty = j.ty == S("props") ? S("u0") : translate_type(j.ty);
      return out;
  }
  throw Error(ErrorKind::UnsupportedConstruct, "unreachable");
}

}  // namespace topo
