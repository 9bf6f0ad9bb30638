#include "topo/pca.hpp"

#include <sstream>

namespace topo {

namespace mp = boost::multiprecision;

Nat pair(const Nat& n, const Nat& m) {
  Nat s = n + m;
  return s * (s + 1) / 2 + m;
}

namespace {

std::pair<Nat, Nat> unpair(const Nat& k) {
  Nat w = (mp::sqrt(Nat(8 * k + 1)) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat m = k - t;
  return {w - m, m};
}

}  // namespace

Nat proj0(const Nat& k) { return unpair(k).first; }
Nat proj1(const Nat& k) { return unpair(k).second; }

Nat tuple_of(const std::vector<Nat>& xs) {
  if (xs.empty()) throw Error(ErrorKind::PreconditionViolated, "empty tuple");
  Nat acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = pair(acc, xs[i]);
  return acc;
}

std::vector<Nat> untuple(const Nat& k, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolated, "empty tuple");
  std::vector<Nat> out(n);
  Nat cur = k;
  for (std::size_t i = n - 1; i > 0; --i) {
    auto [l, r] = unpair(cur);
    out[i] = r;
    cur = l;
  }
  out[0] = cur;
  return out;
}

Nat list_nil() { return 0; }
Nat list_cons(const Nat& head, const Nat& tail) { return pair(head, tail) + 1; }

Nat list_len(const Nat& code) {
  Nat len = 0, cur = code;
  while (cur != 0) {
    cur = proj1(cur - 1);
    ++len;
  }
  return len;
}

Nat list_at(const Nat& code, const Nat& index) {
  Nat cur = code, i = index;
  while (cur != 0) {
    auto [h, t] = unpair(cur - 1);
    if (i == 0) return h;
    --i;
    cur = t;
  }
  return 0;
}

Nat list_of(const std::vector<Nat>& xs) {
  Nat acc = list_nil();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = list_cons(*it, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

PcaTerm PcaTerm::v(std::uint32_t i) {
  PcaTerm t;
  t.kind = Var;
  t.var = i;
  return t;
}
PcaTerm PcaTerm::free(std::string n) {
  PcaTerm t;
  t.kind = Free;
  t.name = std::move(n);
  return t;
}
PcaTerm PcaTerm::lam(PcaTerm body) {
  PcaTerm t;
  t.kind = Lam;
  t.kids.push_back(std::move(body));
  return t;
}
PcaTerm PcaTerm::app(PcaTerm f, PcaTerm a) {
  PcaTerm t;
  t.kind = App;
  t.kids.push_back(std::move(f));
  t.kids.push_back(std::move(a));
  return t;
}
PcaTerm PcaTerm::num(Nat n) {
  PcaTerm t;
  t.kind = Lit;
  t.lit = std::move(n);
  return t;
}
PcaTerm PcaTerm::prim(Kind k) {
  PcaTerm t;
  t.kind = k;
  return t;
}
PcaTerm PcaTerm::table(Nat spine) {
  PcaTerm t;
  t.kind = Table;
  t.lit = std::move(spine);
  return t;
}
PcaTerm PcaTerm::corec(Nat spine, Nat focus) {
  PcaTerm t;
  t.kind = Corec;
  t.lit = pair(spine, focus);
  return t;
}

bool PcaTerm::operator==(const PcaTerm& o) const {
  if (kind != o.kind || var != o.var || name != o.name || lit != o.lit ||
      kids.size() != o.kids.size())
    return false;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(kids[i] == o.kids[i])) return false;
  return true;
}

std::string PcaTerm::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Var: os << "#" << var; break;
    case Free: os << name; break;
    case Lam: os << "(lam " << kids[0].to_string() << ")"; break;
    case App: os << "(" << kids[0].to_string() << " " << kids[1].to_string() << ")"; break;
    case Lit: os << lit; break;
    case Suc: os << "suc"; break;
    case MkPair: os << "mkpair"; break;
    case Proj0: os << "proj0"; break;
    case Proj1: os << "proj1"; break;
    case Rec: os << "rec"; break;
    case Table: os << "(table " << lit << ")"; break;
    case Corec: os << "(corec " << lit << ")"; break;
  }
  return os.str();
}

namespace {

// Gödel numbering: Var p(0,i); Lam p(1,body); App p(2,p(f,a)); Lit p(3,v);
// primitives p(4,0..4).
Nat encode_impl(const PcaTerm& t, std::uint32_t depth) {
  switch (t.kind) {
    case PcaTerm::Var:
      if (t.var >= depth)
        throw Error(ErrorKind::PreconditionViolated, "unbound de Bruijn index");
      return pair(0, t.var);
    case PcaTerm::Free:
      throw Error(ErrorKind::PreconditionViolated,
                  "cannot encode a term with free variable " + t.name);
    case PcaTerm::Lam:
      return pair(1, encode_impl(t.kids[0], depth + 1));
    case PcaTerm::App:
      return pair(2, pair(encode_impl(t.kids[0], depth),
                          encode_impl(t.kids[1], depth)));
    case PcaTerm::Lit:
      return pair(3, t.lit);
    case PcaTerm::Suc:
      return pair(4, 0);
    case PcaTerm::MkPair:
      return pair(4, 1);
    case PcaTerm::Proj0:
      return pair(4, 2);
    case PcaTerm::Proj1:
      return pair(4, 3);
    case PcaTerm::Rec:
      return pair(4, 4);
    case PcaTerm::Table:
      return pair(4, pair(5, t.lit));
    case PcaTerm::Corec:
      return pair(4, pair(6, t.lit));
  }
  throw Error(ErrorKind::PreconditionViolated, "unreachable");
}

std::optional<PcaTerm> decode_impl(const Nat& code, std::uint32_t depth) {
  auto [tag, payload] = unpair(code);
  if (tag == 0) {
    if (payload >= depth) return std::nullopt;
    return PcaTerm::v(static_cast<std::uint32_t>(payload));
  }
  if (tag == 1) {
    auto b = decode_impl(payload, depth + 1);
    if (!b) return std::nullopt;
    return PcaTerm::lam(std::move(*b));
  }
  if (tag == 2) {
    auto [fc, ac] = unpair(payload);
    auto f = decode_impl(fc, depth);
    auto a = decode_impl(ac, depth);
    if (!f || !a) return std::nullopt;
    return PcaTerm::app(std::move(*f), std::move(*a));
  }
  if (tag == 3) return PcaTerm::num(payload);
  if (tag == 4) {
    if (payload == 0) return PcaTerm::prim(PcaTerm::Suc);
    if (payload == 1) return PcaTerm::prim(PcaTerm::MkPair);
    if (payload == 2) return PcaTerm::prim(PcaTerm::Proj0);
    if (payload == 3) return PcaTerm::prim(PcaTerm::Proj1);
    if (payload == 4) return PcaTerm::prim(PcaTerm::Rec);
    if (proj0(payload) == 5) return PcaTerm::table(proj1(payload));
    if (proj0(payload) == 6) {
      Nat sf = proj1(payload);
      return PcaTerm::corec(proj0(sf), proj1(sf));
    }
  }
  return std::nullopt;
}

}  // namespace

Nat encode_term(const PcaTerm& t) { return encode_impl(t, 0); }

std::optional<PcaTerm> decode_term(const Nat& code) { return decode_impl(code, 0); }

bool has_free_names(const PcaTerm& t) {
  if (t.kind == PcaTerm::Free) return true;
  for (const PcaTerm& k : t.kids)
    if (has_free_names(k)) return true;
  return false;
}

namespace {

PcaTerm bind_name(const PcaTerm& t, const std::string& name, std::uint32_t depth) {
  if (t.kind == PcaTerm::Free && t.name == name) return PcaTerm::v(depth);
  PcaTerm out = t;
  std::uint32_t d2 = depth + (t.kind == PcaTerm::Lam ? 1 : 0);
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    out.kids[i] = bind_name(t.kids[i], name, d2);
  return out;
}

bool has_free_index(const PcaTerm& t, std::uint32_t depth) {
  if (t.kind == PcaTerm::Var) return t.var >= depth;
  std::uint32_t d2 = depth + (t.kind == PcaTerm::Lam ? 1 : 0);
  for (const PcaTerm& k : t.kids)
    if (has_free_index(k, d2)) return true;
  return false;
}

}  // namespace

PcaTerm lambda_encode(const std::string& name, const PcaTerm& body) {
  return PcaTerm::lam(bind_name(body, name, 0));
}

PcaTerm subst_free(const PcaTerm& t, const std::string& name, const PcaTerm& rep) {
  if (has_free_index(rep, 0))
    throw Error(ErrorKind::PreconditionViolated,
                "replacement carries free de Bruijn indices");
  if (t.kind == PcaTerm::Free && t.name == name) return rep;
  PcaTerm out = t;
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    out.kids[i] = subst_free(t.kids[i], name, rep);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

/// Substitutes the closed value for index `idx` and renumbers higher
/// indices downwards.
PcaTerm db_subst(const PcaTerm& t, std::uint32_t idx, const PcaTerm& value) {
  if (t.kind == PcaTerm::Var) {
    if (t.var == idx) return value;
    if (t.var > idx) return PcaTerm::v(t.var - 1);
    return t;
  }
  PcaTerm out = t;
  std::uint32_t idx2 = idx + (t.kind == PcaTerm::Lam ? 1 : 0);
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    out.kids[i] = db_subst(t.kids[i], idx2, value);
  return out;
}

Nat value_to_nat(const PcaTerm& v) {
  if (v.kind == PcaTerm::Lit) return v.lit;
  return encode_term(v);
}

std::optional<PcaTerm> eval_term(const PcaTerm& t, std::uint64_t& fuel);

std::optional<PcaTerm> apply_value(const PcaTerm& f, const PcaTerm& a,
                                   std::uint64_t& fuel) {
  if (fuel == 0) return std::nullopt;
  --fuel;
  switch (f.kind) {
    case PcaTerm::Lam:
      return eval_term(db_subst(f.kids[0], 0, a), fuel);
    case PcaTerm::Lit: {
      auto d = decode_term(f.lit);
      if (!d) return std::nullopt;  // junk codes diverge
      auto vf = eval_term(*d, fuel);
      if (!vf) return std::nullopt;
      return apply_value(*vf, a, fuel);
    }
    case PcaTerm::Suc:
      return PcaTerm::num(value_to_nat(a) + 1);
    case PcaTerm::Proj0:
      return PcaTerm::num(proj0(value_to_nat(a)));
    case PcaTerm::Proj1:
      return PcaTerm::num(proj1(value_to_nat(a)));
    case PcaTerm::Table: {
      Nat spine = f.lit;
      for (Nat k = value_to_nat(a); k > 0; --k) {
        if (fuel == 0) return std::nullopt;
        --fuel;
        spine = proj1(spine);
      }
      return PcaTerm::num(proj0(spine));
    }
    case PcaTerm::Corec: {
      auto walk = [&fuel](Nat spine, const Nat& steps) -> std::optional<Nat> {
        for (Nat k = steps; k > 0; --k) {
          if (fuel == 0) return std::nullopt;
          --fuel;
          spine = proj1(spine);
        }
        return proj0(spine);
      };
      auto inner = walk(proj0(f.lit), proj1(f.lit));
      if (!inner) return std::nullopt;
      auto u = walk(*inner, value_to_nat(a));
      if (!u) return std::nullopt;
      Nat next = pair(4, pair(6, pair(proj0(f.lit), *u)));
      return PcaTerm::num(pair(*u, pair(0, pair(0, next))));
    }
    case PcaTerm::MkPair:
    case PcaTerm::Rec:
      return PcaTerm::app(f, a);  // partial application is a value
    case PcaTerm::App: {
      const PcaTerm& head = f.kids[0];
      if (head.kind == PcaTerm::MkPair)
        return PcaTerm::num(pair(value_to_nat(f.kids[1]), value_to_nat(a)));
      if (head.kind == PcaTerm::Rec)
        return PcaTerm::app(f, a);  // rec with two of three arguments
      if (head.kind == PcaTerm::App && head.kids[0].kind == PcaTerm::Rec) {
        const PcaTerm& z = head.kids[1];
        const PcaTerm& s = f.kids[1];
        Nat n = value_to_nat(a);
        PcaTerm acc = z;
        for (Nat i = 0; i < n; ++i) {
          auto si = apply_value(s, PcaTerm::num(i), fuel);
          if (!si) return std::nullopt;
          auto next = apply_value(*si, acc, fuel);
          if (!next) return std::nullopt;
          acc = std::move(*next);
        }
        return acc;
      }
      return std::nullopt;  // stuck
    }
    default:
      return std::nullopt;  // stuck (Var/Free cannot appear in values)
  }
}

std::optional<PcaTerm> eval_term(const PcaTerm& t, std::uint64_t& fuel) {
  if (fuel == 0) return std::nullopt;
  --fuel;
  switch (t.kind) {
    case PcaTerm::Var:
    case PcaTerm::Free:
      return std::nullopt;  // open terms are junk here
    case PcaTerm::App: {
      auto f = eval_term(t.kids[0], fuel);
      if (!f) return std::nullopt;
      auto a = eval_term(t.kids[1], fuel);
      if (!a) return std::nullopt;
      return apply_value(*f, *a, fuel);
    }
    default:
      return t;  // values: Lit, Lam, primitives
  }
}

}  // namespace

std::optional<Nat> eval_closed(const PcaTerm& t, std::uint64_t& fuel) {
  auto v = eval_term(t, fuel);
  if (!v) return std::nullopt;
  return value_to_nat(*v);
}

std::optional<Nat> kleene_apply_budget(const Nat& e, const std::vector<Nat>& args,
                                       std::uint64_t& fuel) {
  PcaTerm t = PcaTerm::num(e);
  for (const Nat& a : args) t = PcaTerm::app(std::move(t), PcaTerm::num(a));
  return eval_closed(t, fuel);
}

std::optional<Nat> kleene_apply(const Nat& e, const Nat& n, std::uint64_t fuel) {
  return kleene_apply_budget(e, {n}, fuel);
}

std::optional<Nat> kleene_apply(const Nat& e, const std::vector<Nat>& args,
                                std::uint64_t fuel) {
  return kleene_apply_budget(e, args, fuel);
}

}  // namespace topo
