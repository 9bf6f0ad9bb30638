#include "topo/interp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace topo {

namespace {

using sx::Sexpr;

PcaTerm mk2(PcaTerm a, PcaTerm b) {
  return PcaTerm::app(PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair), std::move(a)),
                      std::move(b));
}

PcaTerm mk_tuple(std::vector<PcaTerm> xs) {
  PcaTerm acc = std::move(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i)
    acc = mk2(std::move(acc), std::move(xs[i]));
  return acc;
}

PcaTerm tagged(unsigned tag, PcaTerm payload) {
  return mk2(PcaTerm::num(tag), std::move(payload));
}

[[noreturn]] void unsupported(const Term& t) {
  throw Error(ErrorKind::UnsupportedConstruct,
              "no numeric interpretation for " + t.to_string());
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

// A binder name that cannot clash with grammar identifiers.
const char* kUnused = "%unused";

}  // namespace

PcaTerm realize_term(const Term& t) {
  if (t.is_atom) {
    if (all_digits(t.atom)) return PcaTerm::num(Nat(t.atom));
    if (t.atom == "zero" || t.atom == "true") return PcaTerm::num(0);
    if (t.atom == "hat-n0") return PcaTerm::num(code_nat(0));
    if (t.atom == "hat-n1") return PcaTerm::num(code_nat(1));
    if (t.atom == "u0" || t.atom == "S" || t.atom == "props") unsupported(t);
    return PcaTerm::free(t.atom);
  }
  if (t.size() == 0) unsupported(t);
  const std::string& h = t.head();
  auto sub = [&](std::size_t i) { return realize_term(t[i]); };
  if (h == "ap" && t.size() == 3) return PcaTerm::app(sub(1), sub(2));
  if (h == "lam" && t.size() == 3 && t[1].is_atom)
    return lambda_encode(t[1].atom, sub(2));
  if (h == "pair" && t.size() == 3) return mk2(sub(1), sub(2));
  if (h == "p1" && t.size() == 2)
    return PcaTerm::app(PcaTerm::prim(PcaTerm::Proj0), sub(1));
  if (h == "p2" && t.size() == 2)
    return PcaTerm::app(PcaTerm::prim(PcaTerm::Proj1), sub(1));
  if (h == "suc" && t.size() == 2)
    return PcaTerm::app(PcaTerm::prim(PcaTerm::Suc), sub(1));
  if (h == "ax1" && t.size() == 3)
    return PcaTerm::app(PcaTerm::prim(PcaTerm::Proj0), sub(2));
  if (h == "ax2" && t.size() == 4)
    return PcaTerm::app(
        PcaTerm::app(PcaTerm::prim(PcaTerm::Proj1), sub(3)), sub(2));
  if (h == "ax3" && (t.size() == 5 || t.size() == 4)) {
    // 4-argument form (ax3 a m q1 q2); the 3-argument form has no focus
    // element and only the z-instantiation applies.
    bool has_a = t.size() == 5;
    PcaTerm m = has_a ? sub(2) : sub(1);
    PcaTerm q1 = has_a ? sub(3) : sub(2);
    PcaTerm q2 = has_a ? sub(4) : sub(3);
    if (has_a) {
      PcaTerm a = sub(1);
      q1 = subst_free(q1, "x", a);
      q2 = subst_free(q2, "x", a);
    }
    q1 = subst_free(q1, "z", m);
    q2 = subst_free(q2, "z", m);
    return mk2(std::move(q1), lambda_encode("j", q2));
  }
  if (h == "rf" && t.size() == 3)
    return tagged(7, mk2(sub(1), sub(2)));
  if (h == "tr" && t.size() == 4)
    return tagged(8, mk_tuple({sub(1), sub(2), sub(3)}));
  if (h == "u" && t.size() == 3 && t[2].is_list() && t[2].size() == 3 &&
      t[2].head() == "lam")
    return tagged(10, mk2(sub(1), lambda_encode(t[2][1].atom,
                                                realize_term(t[2][2]))));
  if ((h == "hat-sigma" || h == "hat-pi") && t.size() == 4 && t[1].is_atom) {
    unsigned tag = h == "hat-sigma" ? 1 : 2;
    return tagged(tag, mk2(sub(2), lambda_encode(t[1].atom, realize_term(t[3]))));
  }
  if ((h == "hat-times" || h == "hat-arrow") && t.size() == 3) {
    unsigned tag = h == "hat-times" ? 1 : 2;
    return tagged(tag, mk2(sub(1), lambda_encode(kUnused, sub(2))));
  }
  if (h == "hat-plus" && t.size() == 3) return tagged(3, mk2(sub(1), sub(2)));
  if (h == "hat-list" && t.size() == 2) return tagged(4, sub(1));
  if (h == "hat-id" && t.size() == 4)
    return tagged(5, mk_tuple({sub(1), sub(2), sub(3)}));
  if ((h == "hat-cov" || h == "hat-pos") && t.size() == 6) {
    unsigned tag = h == "hat-cov" ? 6 : 9;
    // payload order (a, v, s, i, c) for the code a ~rel_{s,i,c} v
    return tagged(tag, mk_tuple({sub(4), sub(5), sub(1), sub(2), sub(3)}));
  }
  unsupported(t);
}

std::optional<Nat> realize_value(const Term& t, const Env& env,
                                 std::uint64_t& fuel) {
  PcaTerm p = realize_term(t);
  for (const auto& [name, val] : env) p = subst_free(p, name, PcaTerm::num(val));
  if (has_free_names(p))
    throw Error(ErrorKind::PreconditionViolated,
                "unbound identifier in " + t.to_string());
  return eval_closed(p, fuel);
}

namespace {

TriBool t_and(TriBool a, TriBool b) {
  if (a.is_no() || b.is_no()) return TriBool::no();
  if (a.is_yes() && b.is_yes()) return TriBool::yes();
  return TriBool::unknown(a.fuel_spent + b.fuel_spent);
}

}  // namespace

TypeDesc realize_type(const Term& ty, const Env& env, StageMachine& sm,
                      std::uint64_t& fuel) {
  TypeDesc d;
  if (ty.is_atom) {
    if (ty.atom == "n0") {
      d.contains = [](const Nat&) { return TriBool::no(); };
      d.enumeration = std::vector<Nat>{};
      return d;
    }
    if (ty.atom == "n1") {
      d.contains = [](const Nat& x) {
        return x == 0 ? TriBool::yes() : TriBool::no();
      };
      d.enumeration = std::vector<Nat>{0};
      return d;
    }
    if (ty.atom == "u0" || ty.atom == "S") {
      d.contains = [&sm](const Nat& x) { return sm.is_set(x); };
      return d;
    }
    unsupported(ty);
  }
  if (ty.size() == 0) unsupported(ty);
  const std::string& h = ty.head();

  // Compound codes under `t` are read off structurally instead of being
  // evaluated to set codes first: the Goedel numbering of a nested family
  // lambda grows exponentially with its depth, while the unfolded type
  // formers only ever evaluate the small leaf codes.
  if (h == "t" && ty.size() == 2 && ty[1].is_atom) {
    if (ty[1].atom == "hat-n0") return realize_type(Sexpr::sym("n0"), env, sm, fuel);
    if (ty[1].atom == "hat-n1") return realize_type(Sexpr::sym("n1"), env, sm, fuel);
  }
  if (h == "t" && ty.size() == 2 && ty[1].is_list() && ty[1].size() > 0) {
    const Term& c = ty[1];
    const std::string& k = c.head();
    auto T = [](const Term& x) {
      return Sexpr::list({Sexpr::sym("t"), x});
    };
    std::optional<Term> unfolded;
    if ((k == "hat-sigma" || k == "hat-pi") && c.size() == 4 && c[1].is_atom)
      unfolded = Sexpr::list({Sexpr::sym(k == "hat-sigma" ? "sigma" : "pi"),
                              c[1], T(c[2]), T(c[3])});
    else if ((k == "hat-times" || k == "hat-arrow") && c.size() == 3)
      unfolded = Sexpr::list({Sexpr::sym(k == "hat-times" ? "times" : "arrow"),
                              T(c[1]), T(c[2])});
    else if (k == "hat-plus" && c.size() == 3)
      unfolded = Sexpr::list({Sexpr::sym("plus"), T(c[1]), T(c[2])});
    else if (k == "hat-list" && c.size() == 2)
      unfolded = Sexpr::list({Sexpr::sym("list"), T(c[1])});
    else if (k == "hat-id" && c.size() == 4)
      unfolded = Sexpr::list({Sexpr::sym("id"), T(c[1]), c[2], c[3]});
    if (unfolded) return realize_type(*unfolded, env, sm, fuel);
  }

  if (h == "t" && ty.size() == 2) {
    auto a = realize_value(ty[1], env, fuel);
    if (!a) {
      // The code itself fails to evaluate: nothing provably belongs.
      bool genuine = fuel > 0;
      d.contains = [genuine](const Nat&) {
        return genuine ? TriBool::no() : TriBool::unknown(0);
      };
      return d;
    }
    Nat code = *a;
    d.contains = [&sm, code](const Nat& x) { return sm.mem(x, code); };
    d.enumeration = sm.enumerate_members(sm.max_stage(), code);
    return d;
  }

  bool dependent = (h == "sigma" || h == "pi") && ty.size() == 4;
  bool plain_pair = (h == "times" || h == "arrow") && ty.size() == 3;
  if (dependent || plain_pair) {
    bool is_fun = h == "pi" || h == "arrow";
    std::string var = dependent ? ty[1].atom : kUnused;
    Term dom = dependent ? ty[2] : ty[1];
    Term cod = dependent ? ty[3] : ty[2];
    TypeDesc A = realize_type(dom, env, sm, fuel);
    auto body_at = [cod, env, &sm, &fuel, var](const Nat& v) {
      Env e2 = env;
      e2[var] = v;
      return realize_type(cod, e2, sm, fuel);
    };
    if (!is_fun) {
      d.contains = [A, body_at](const Nat& x) {
        Nat x0 = proj0(x), x1 = proj1(x);
        TriBool inA = A.contains(x0);
        if (inA.is_no()) return TriBool::no();
        TriBool inB = body_at(x0).contains(x1);
        return t_and(inA, inB);
      };
      if (A.enumeration) {
        std::vector<Nat> all;
        bool complete = true;
        for (const Nat& a : *A.enumeration) {
          TypeDesc B = body_at(a);
          if (!B.enumeration) {
            complete = false;
            break;
          }
          for (const Nat& b : *B.enumeration) all.push_back(pair(a, b));
        }
        if (complete) d.enumeration = std::move(all);
      }
      return d;
    }
    d.contains = [A, body_at, &fuel](const Nat& x) {
      if (A.enumeration) {
        TriBool acc = TriBool::yes();
        for (const Nat& a : *A.enumeration) {
          auto xa = kleene_apply_budget(x, {a}, fuel);
          if (!xa) {
            if (fuel > 0) return TriBool::no();  // genuinely stuck
            return TriBool::unknown(0);
          }
          acc = t_and(acc, body_at(a).contains(*xa));
          if (acc.is_no()) return acc;
        }
        return acc;
      }
      // Unbounded domain: sampling can only refute.
      for (unsigned a = 0; a <= 64; ++a) {
        if (!A.contains(a).is_yes()) continue;
        auto xa = kleene_apply_budget(x, {a}, fuel);
        if (!xa) {
          if (fuel > 0) return TriBool::no();
          return TriBool::unknown(0);
        }
        if (body_at(a).contains(*xa).is_no()) return TriBool::no();
      }
      return TriBool::unknown(0);
    };
    return d;
  }

  if (h == "plus" && ty.size() == 3) {
    TypeDesc A = realize_type(ty[1], env, sm, fuel);
    TypeDesc B = realize_type(ty[2], env, sm, fuel);
    d.contains = [A, B](const Nat& x) {
      Nat tag = proj0(x), v = proj1(x);
      if (tag == 0) return A.contains(v);
      if (tag == 1) return B.contains(v);
      return TriBool::no();
    };
    if (A.enumeration && B.enumeration) {
      std::vector<Nat> all;
      for (const Nat& a : *A.enumeration) all.push_back(pair(0, a));
      for (const Nat& b : *B.enumeration) all.push_back(pair(1, b));
      d.enumeration = std::move(all);
    }
    return d;
  }

  if (h == "list" && ty.size() == 2) {
    TypeDesc A = realize_type(ty[1], env, sm, fuel);
    d.contains = [A](const Nat& x) {
      TriBool acc = TriBool::yes();
      Nat len = list_len(x);
      for (Nat i = 0; i < len; ++i) {
        acc = t_and(acc, A.contains(list_at(x, i)));
        if (acc.is_no()) break;
      }
      return acc;
    };
    if (A.enumeration && A.enumeration->empty())
      d.enumeration = std::vector<Nat>{list_nil()};
    return d;
  }

  if (h == "id" && ty.size() == 4) {
    TypeDesc A = realize_type(ty[1], env, sm, fuel);
    auto a = realize_value(ty[2], env, fuel);
    auto b = realize_value(ty[3], env, fuel);
    if (!a || !b) {
      bool genuine = fuel > 0;
      d.contains = [genuine](const Nat&) {
        return genuine ? TriBool::no() : TriBool::unknown(0);
      };
      return d;
    }
    Nat av = *a, bv = *b;
    d.contains = [A, av, bv](const Nat& x) {
      if (x != av || av != bv) return TriBool::no();
      return A.contains(av);
    };
    if (av == bv) {
      TriBool inA = A.contains(av);
      if (inA.is_yes()) d.enumeration = std::vector<Nat>{av};
      if (inA.is_no()) d.enumeration = std::vector<Nat>{};
    } else {
      d.enumeration = std::vector<Nat>{};
    }
    return d;
  }

  unsupported(ty);
}

namespace {

TriBool implication(TriBool premises, TriBool conclusion) {
  if (premises.is_no()) return TriBool::yes();  // vacuous
  if (conclusion.is_yes()) return TriBool::yes();
  if (premises.is_yes() && conclusion.is_no()) return TriBool::no();
  return TriBool::unknown(premises.fuel_spent + conclusion.fuel_spent);
}

}  // namespace

TriBool check_judgement_realized(const Judgement& j, const Env& env,
                                 std::uint64_t fuel) {
  StageMachine sm(24, fuel);
  std::uint64_t term_fuel = fuel;
  auto spent = [&]() {
    return (fuel - sm.fuel_left()) + (fuel - term_fuel);
  };

  TriBool ctx_holds = TriBool::yes();
  for (const auto& [name, ty] : j.ctx) {
    auto it = env.find(name);
    if (it == env.end())
      throw Error(ErrorKind::PreconditionViolated,
                  "no environment value for context variable " + name);
    TypeDesc d = realize_type(ty, env, sm, term_fuel);
    ctx_holds = t_and(ctx_holds, d.contains(it->second));
    if (ctx_holds.is_no()) break;
  }
  if (ctx_holds.is_no()) return TriBool::yes();

  TriBool concl = TriBool::unknown(0);
  switch (j.kind) {
    case Judgement::Type:
      // Descriptors are subclasses of the naturals by construction; forming
      // one is the whole obligation.
      realize_type(j.a, env, sm, term_fuel);
      concl = TriBool::yes();
      break;
    case Judgement::EqType: {
      TypeDesc A = realize_type(j.a, env, sm, term_fuel);
      TypeDesc B = realize_type(j.b, env, sm, term_fuel);
      std::set<Nat> probes;
      for (unsigned x = 0; x <= 32; ++x) probes.insert(x);
      if (A.enumeration)
        for (const Nat& x : *A.enumeration) probes.insert(x);
      if (B.enumeration)
        for (const Nat& x : *B.enumeration) probes.insert(x);
      bool decided_all = true;
      bool mismatch = false;
      for (const Nat& x : probes) {
        TriBool ina = A.contains(x), inb = B.contains(x);
        if (ina.is_unknown() || inb.is_unknown()) {
          decided_all = false;
          continue;
        }
        if (ina.is_yes() != inb.is_yes()) {
          mismatch = true;
          break;
        }
      }
      if (mismatch)
        concl = TriBool::no();
      else if (decided_all && A.enumeration && B.enumeration)
        concl = TriBool::yes();  // both extensions fully probed
      else
        concl = TriBool::unknown(spent());
      break;
    }
    case Judgement::Elem:
    case Judgement::EqElem: {
      TypeDesc A = realize_type(j.ty, env, sm, term_fuel);
      auto av = realize_value(j.a, env, term_fuel);
      if (!av) {
        concl = term_fuel > 0 ? TriBool::no() : TriBool::unknown(spent());
        break;
      }
      concl = A.contains(*av);
      if (j.kind == Judgement::EqElem && !concl.is_no()) {
        auto bv = realize_value(j.b, env, term_fuel);
        if (!bv)
          concl = term_fuel > 0 ? TriBool::no() : TriBool::unknown(spent());
        else if (*av != *bv)
          concl = TriBool::no();
      }
      break;
    }
  }
  TriBool out = implication(ctx_holds, concl);
  if (out.is_unknown()) out = TriBool::unknown(spent());
  return out;
}

std::string judgement_report_line(const Judgement& j, TriBool verdict) {
  std::ostringstream os;
  os << "JUDGEMENT " << j.to_string() << " => ";
  if (verdict.is_yes())
    os << "YES";
  else if (verdict.is_no())
    os << "NO";
  else
    os << "UNKNOWN(fuel=" << verdict.fuel_spent << ")";
  return os.str();
}

CtReport ct_demo(const Nat& f_code, const Nat& r_code, std::uint64_t bound,
                 std::uint64_t fuel) {
  CtReport rep;
  PcaTerm eterm = lambda_encode(
      "x", PcaTerm::app(PcaTerm::prim(PcaTerm::Proj0),
                        PcaTerm::app(PcaTerm::num(f_code), PcaTerm::free("x"))));
  rep.extracted_index = encode_term(eterm);
  std::ostringstream os;
  std::string e_dec = rep.extracted_index.str();
  if (e_dec.size() <= 40)
    os << "CT extracted index e = " << e_dec << "\n";
  else
    os << "CT extracted index e = <" << e_dec.size() << "-digit code>\n";
  for (std::uint64_t x = 0; x <= bound; ++x) {
    auto fx = kleene_apply(f_code, x, fuel);
    if (!fx)
      throw Error(ErrorKind::NotTotalWithinFuel,
                  "realizer diverges at x = " + std::to_string(x));
    Nat y = proj0(*fx), witness = proj1(*fx);
    auto ex = kleene_apply(rep.extracted_index, x, fuel);
    if (!ex || *ex != y)
      throw Error(ErrorKind::NotTotalWithinFuel,
                  "extracted index disagrees at x = " + std::to_string(x));
    if (r_code != 0) {
      auto rv = kleene_apply(r_code, std::vector<Nat>{Nat(x), y}, fuel);
      if (!rv)
        throw Error(ErrorKind::NotTotalWithinFuel,
                    "relation realizer diverges at x = " + std::to_string(x));
    }
    rep.graph.emplace_back(x, y);
    os << "x=" << x << " {e}(x)=" << y << " witness=" << witness << " ok\n";
  }
  rep.text = os.str();
  return rep;
}

}  // namespace topo
