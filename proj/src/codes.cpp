#include "topo/codes.hpp"

#include <algorithm>
#include <sstream>

namespace topo {

namespace {

// Payload arity per tag; tuples are right-nested pairings.
int payload_arity(unsigned tag) {
  switch (tag) {
    case 0: return 1;
    case 1: return 2;
    case 2: return 2;
    case 3: return 2;
    case 4: return 1;
    case 5: return 3;
    case 6: return 5;
    case 7: return 2;
    case 8: return 3;
    case 9: return 5;
    case 10: return 2;
    default: return -1;
  }
}

}  // namespace

ClassifiedCode classify_code(const Nat& n) {
  Nat tag = proj0(n);
  Nat payload = proj1(n);
  ClassifiedCode out;
  if (tag > 10) return out;  // Junk
  if (tag == 0 && payload > 2) return out;
  int arity = payload_arity(static_cast<unsigned>(tag));
  out.tag = static_cast<ClassifiedCode::Tag>(static_cast<unsigned>(tag));
  out.payload = untuple(payload, static_cast<std::size_t>(arity));
  return out;
}

Nat code_nat(unsigned j) { return pair(0, j); }
Nat code_sigma(const Nat& k, const Nat& e) { return pair(1, pair(k, e)); }
Nat code_pi(const Nat& k, const Nat& e) { return pair(2, pair(k, e)); }
Nat code_plus(const Nat& n, const Nat& m) { return pair(3, pair(n, m)); }
Nat code_list(const Nat& n) { return pair(4, n); }
Nat code_id(const Nat& n, const Nat& m, const Nat& k) {
  return pair(5, tuple_of({n, m, k}));
}
Nat code_cov(const Nat& a, const Nat& v, const Nat& s, const Nat& i, const Nat& c) {
  return pair(6, tuple_of({a, v, s, i, c}));
}
Nat code_rf(const Nat& z, const Nat& r) { return pair(7, pair(z, r)); }
Nat code_tr(const Nat& z, const Nat& j, const Nat& r) {
  return pair(8, tuple_of({z, j, r}));
}
Nat code_pos(const Nat& a, const Nat& v, const Nat& s, const Nat& i, const Nat& c) {
  return pair(9, tuple_of({a, v, s, i, c}));
}
Nat code_u(const Nat& a, const Nat& b) { return pair(10, pair(a, b)); }

std::string print_code(const Nat& n, unsigned depth) {
  if (depth == 0) return n.str();
  ClassifiedCode c = classify_code(n);
  std::ostringstream os;
  auto kids = [&](std::initializer_list<bool> recurse) {
    std::size_t k = 0;
    for (bool r : recurse) {
      os << (k == 0 ? "" : " ");
      os << (r ? print_code(c.payload[k], depth - 1) : c.payload[k].str());
      ++k;
    }
  };
  switch (c.tag) {
    case ClassifiedCode::NFam:
      if (c.payload[0] == 2) return "nat";
      return "n" + c.payload[0].str();
    case ClassifiedCode::SigmaT: os << "(sigma~ "; kids({true, false}); break;
    case ClassifiedCode::PiT: os << "(pi~ "; kids({true, false}); break;
    case ClassifiedCode::PlusT: os << "(+~ "; kids({true, true}); break;
    case ClassifiedCode::ListT: os << "(list~ "; kids({true}); break;
    case ClassifiedCode::IdT: os << "(id~ "; kids({true, false, false}); break;
    case ClassifiedCode::CovT:
      os << "(cov~ ";
      kids({false, false, true, false, false});
      break;
    case ClassifiedCode::RfT: os << "(rf~ "; kids({false, false}); break;
    case ClassifiedCode::TrT: os << "(tr~ "; kids({false, false, false}); break;
    case ClassifiedCode::PosT:
      os << "(pos~ ";
      kids({false, false, true, false, false});
      break;
    case ClassifiedCode::UT: os << "(u~ "; kids({false, false}); break;
    case ClassifiedCode::Junk: return "(junk " + n.str() + ")";
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// StageMachine
// ---------------------------------------------------------------------------

StageMachine::StageMachine(unsigned max_stage, std::uint64_t fuel)
    : max_stage_(max_stage), fuel_(fuel), fuel_start_(fuel) {}

void StageMachine::spend(std::uint64_t cost) {
  if (fuel_ < cost) {
    fuel_ = 0;
    throw FuelOut{};
  }
  fuel_ -= cost;
}

Nat StageMachine::apply(const Nat& e, const std::vector<Nat>& args) {
  auto r = kleene_apply_budget(e, args, fuel_);
  if (fuel_ == 0) throw FuelOut{};
  if (!r) throw Indeterminate{};  // genuine divergence: caller sees failure
  return *r;
}

bool StageMachine::fam_b(unsigned stage, const Nat& e, const Nat& k) {
  if (!set_b(stage, k)) return false;
  std::optional<std::vector<Nat>> ms;
  try {
    ms = members_b(stage, k);
  } catch (const Indeterminate&) {
    ms = std::nullopt;
  }
  if (ms) {
    for (const Nat& j : *ms) {
      std::optional<Nat> ej;
      try {
        ej = apply(e, {j});
      } catch (const Indeterminate&) {
        return false;  // family diverges on a member
      }
      if (!set_b(stage, *ej)) return false;
    }
    return true;
  }
  // Sampled: only refutation is definite.
  for (unsigned j = 0; j <= sample_bound_; ++j) {
    if (!mem_b(stage, j, k)) continue;
    std::optional<Nat> ej;
    try {
      ej = apply(e, {j});
    } catch (const Indeterminate&) {
      return false;
    }
    if (!set_b(stage, *ej)) return false;
  }
  throw Indeterminate{};
}

bool StageMachine::star_b(unsigned stage, const std::vector<Nat>& pl) {
  const Nat &a = pl[0], &v = pl[1], &s = pl[2], &i = pl[3], &c = pl[4];
  if (!set_b(stage, s)) return false;
  if (!mem_b(stage, a, s)) return false;
  if (!fam_b(stage, v, s)) return false;
  if (!fam_b(stage, i, s)) return false;
  std::vector<Nat> xs = members_b(stage, s);  // Indeterminate propagates
  for (const Nat& x : xs) {
    Nat ix = apply(i, {x});
    for (const Nat& y : members_b(stage, ix)) {
      Nat cxy;
      try {
        cxy = apply(c, {x, y});
      } catch (const Indeterminate&) {
        return false;
      }
      if (!fam_b(stage, cxy, s)) return false;
    }
  }
  return true;
}

bool StageMachine::set_b(unsigned stage, const Nat& m) {
  auto key = std::make_pair(stage, m);
  auto it = set_memo_.find(key);
  if (it != set_memo_.end()) return it->second;
  spend();
  ClassifiedCode c = classify_code(m);
  bool r = false;
  switch (c.tag) {
    case ClassifiedCode::NFam:
      r = true;
      break;
    case ClassifiedCode::SigmaT:
    case ClassifiedCode::PiT:
      r = stage > 0 && fam_b(stage - 1, c.payload[1], c.payload[0]);
      break;
    case ClassifiedCode::PlusT:
      r = stage > 0 && set_b(stage - 1, c.payload[0]) &&
          set_b(stage - 1, c.payload[1]);
      break;
    case ClassifiedCode::ListT:
      r = stage > 0 && set_b(stage - 1, c.payload[0]);
      break;
    case ClassifiedCode::IdT:
      r = stage > 0 && set_b(stage - 1, c.payload[0]);
      break;
    case ClassifiedCode::CovT:
    case ClassifiedCode::PosT:
      r = stage > 0 && star_b(stage - 1, c.payload);
      break;
    case ClassifiedCode::UT:
      r = stage > 0 && fam_b(stage - 1, c.payload[1], c.payload[0]);
      break;
    case ClassifiedCode::RfT:
    case ClassifiedCode::TrT:
    case ClassifiedCode::Junk:
      r = false;
      break;
  }
  set_memo_[key] = r;
  return r;
}

bool StageMachine::mem_b(unsigned stage, const Nat& n, const Nat& m) {
  auto key = std::make_tuple(stage, n, m);
  auto it = mem_memo_.find(key);
  if (it != mem_memo_.end()) return it->second;
  spend();
  ClassifiedCode c = classify_code(m);
  bool r = false;
  unsigned b = stage > 0 ? stage - 1 : 0;
  bool has_b = stage > 0;
  switch (c.tag) {
    case ClassifiedCode::NFam:
      r = c.payload[0] == 2 || n < c.payload[0];
      break;
    case ClassifiedCode::PiT: {
      if (!has_b || !fam_b(b, c.payload[1], c.payload[0])) break;
      const Nat &k = c.payload[0], &e = c.payload[1];
      std::optional<std::vector<Nat>> ms;
      try {
        ms = members_b(b, k);
      } catch (const Indeterminate&) {
        ms = std::nullopt;
      }
      auto check_at = [&](const Nat& i) -> bool {
        std::optional<Nat> ni, ei;
        try {
          ni = apply(n, {i});
          ei = apply(e, {i});
        } catch (const Indeterminate&) {
          return false;  // n (or the family) diverges here
        }
        return mem_b(b, *ni, *ei);
      };
      if (ms) {
        r = std::all_of(ms->begin(), ms->end(), check_at);
      } else {
        for (unsigned i = 0; i <= sample_bound_; ++i) {
          if (!mem_b(b, i, k)) continue;
          if (!check_at(i)) {
            r = false;
            mem_memo_[key] = r;
            return r;
          }
        }
        throw Indeterminate{};  // samples passed; totality unprovable here
      }
      break;
    }
    case ClassifiedCode::SigmaT: {
      if (!has_b || !fam_b(b, c.payload[1], c.payload[0])) break;
      Nat x = proj0(n), y = proj1(n);
      if (!mem_b(b, x, c.payload[0])) break;
      Nat ex;
      try {
        ex = apply(c.payload[1], {x});
      } catch (const Indeterminate&) {
        break;
      }
      r = mem_b(b, y, ex);
      break;
    }
    case ClassifiedCode::PlusT: {
      if (!has_b || !set_b(b, c.payload[0]) || !set_b(b, c.payload[1])) break;
      Nat t = proj0(n), x = proj1(n);
      if (t == 0)
        r = mem_b(b, x, c.payload[0]);
      else if (t == 1)
        r = mem_b(b, x, c.payload[1]);
      break;
    }
    case ClassifiedCode::ListT: {
      if (!has_b || !set_b(b, c.payload[0])) break;
      r = true;
      Nat len = list_len(n);
      for (Nat j = 0; j < len; ++j)
        if (!mem_b(b, list_at(n, j), c.payload[0])) {
          r = false;
          break;
        }
      break;
    }
    case ClassifiedCode::IdT: {
      if (!has_b || !set_b(b, c.payload[0])) break;
      r = n == c.payload[1] && c.payload[1] == c.payload[2] &&
          mem_b(b, c.payload[1], c.payload[0]);
      break;
    }
    case ClassifiedCode::CovT: {
      if (!has_b || !star_b(b, c.payload)) break;
      std::vector<std::pair<Nat, Nat>> path;
      r = v_member(b, c.payload, c.payload[0], n, path);
      break;
    }
    case ClassifiedCode::PosT: {
      if (!has_b || !star_b(b, c.payload)) break;
      std::vector<std::pair<Nat, Nat>> visited;
      r = w_member(b, c.payload, c.payload[0], n, visited);
      break;
    }
    case ClassifiedCode::UT: {
      if (!has_b || !fam_b(b, c.payload[1], c.payload[0])) break;
      std::vector<Nat> path;
      r = z_member(b, n, path);
      break;
    }
    case ClassifiedCode::RfT:
    case ClassifiedCode::TrT:
    case ClassifiedCode::Junk:
      r = false;
      break;
  }
  mem_memo_[key] = r;
  return r;
}

std::vector<Nat> StageMachine::members_b(unsigned stage, const Nat& m) {
  spend();
  ClassifiedCode c = classify_code(m);
  unsigned b = stage > 0 ? stage - 1 : 0;
  switch (c.tag) {
    case ClassifiedCode::NFam: {
      if (c.payload[0] == 2) throw Indeterminate{};  // the naturals
      std::vector<Nat> out;
      for (Nat i = 0; i < c.payload[0]; ++i) out.push_back(i);
      return out;
    }
    case ClassifiedCode::SigmaT: {
      std::vector<Nat> out;
      for (const Nat& x : members_b(b, c.payload[0])) {
        Nat ex = apply(c.payload[1], {x});
        for (const Nat& y : members_b(b, ex)) out.push_back(pair(x, y));
      }
      return out;
    }
    case ClassifiedCode::PlusT: {
      std::vector<Nat> out;
      for (const Nat& x : members_b(b, c.payload[0])) out.push_back(pair(0, x));
      for (const Nat& x : members_b(b, c.payload[1])) out.push_back(pair(1, x));
      return out;
    }
    case ClassifiedCode::ListT: {
      if (!members_b(b, c.payload[0]).empty()) throw Indeterminate{};
      return {list_nil()};  // lists over the empty set: nil only
    }
    case ClassifiedCode::IdT: {
      if (c.payload[1] == c.payload[2] && mem_b(b, c.payload[1], c.payload[0]))
        return {c.payload[1]};
      return {};
    }
    default:
      throw Indeterminate{};  // Pi, cover, positivity, universe: not enumerable
  }
}

bool StageMachine::v_member(unsigned stage, const std::vector<Nat>& pl,
                            const Nat& elem, const Nat& q,
                            std::vector<std::pair<Nat, Nat>>& path) {
  spend();
  auto node = std::make_pair(elem, q);
  if (std::find(path.begin(), path.end(), node) != path.end())
    return false;  // a least fixpoint has no circular support
  const Nat &v = pl[1], &s = pl[2], &i = pl[3], &cc = pl[4];
  ClassifiedCode c = classify_code(q);
  if (c.tag == ClassifiedCode::RfT) {
    const Nat &z = c.payload[0], &r = c.payload[1];
    if (z != elem || !mem_b(stage, z, s)) return false;
    Nat vz;
    try {
      vz = apply(v, {z});
    } catch (const Indeterminate&) {
      return false;
    }
    return mem_b(stage, r, vz);
  }
  if (c.tag == ClassifiedCode::TrT) {
    const Nat &z = c.payload[0], &j = c.payload[1], &r = c.payload[2];
    if (z != elem || !mem_b(stage, z, s)) return false;
    Nat iz = apply(i, {z});
    if (!mem_b(stage, j, iz)) return false;
    path.push_back(node);
    bool ok = true;
    for (const Nat& u : members_b(stage, s)) {
      Nat czju = apply(cc, {z, j, u});
      for (const Nat& t : members_b(stage, czju)) {
        std::optional<Nat> rut;
        try {
          rut = apply(r, {u, t});
        } catch (const Indeterminate&) {
          ok = false;
          break;
        }
        if (!v_member(stage, pl, u, *rut, path)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    path.pop_back();
    return ok;
  }
  return false;
}

bool StageMachine::w_member(unsigned stage, const std::vector<Nat>& pl,
                            const Nat& elem, const Nat& q,
                            std::vector<std::pair<Nat, Nat>>& visited) {
  spend();
  auto node = std::make_pair(elem, q);
  if (std::find(visited.begin(), visited.end(), node) != visited.end())
    return true;  // circular support is fine in a greatest fixpoint
  visited.push_back(node);
  const Nat &v = pl[1], &s = pl[2], &i = pl[3], &cc = pl[4];
  if (!mem_b(stage, elem, s)) return true;  // conditions are guarded by z ε s
  Nat vz;
  try {
    vz = apply(v, {elem});
  } catch (const Indeterminate&) {
    return false;
  }
  if (!mem_b(stage, proj0(q), vz)) return false;
  Nat iz = apply(i, {elem});
  for (const Nat& j : members_b(stage, iz)) {
    std::optional<Nat> w;
    try {
      w = apply(proj1(q), {j});
    } catch (const Indeterminate&) {
      return false;
    }
    Nat u = proj0(*w);
    if (!mem_b(stage, u, s)) return false;
    Nat czju;
    try {
      czju = apply(cc, {elem, j, u});
    } catch (const Indeterminate&) {
      return false;
    }
    if (!mem_b(stage, proj0(proj1(*w)), czju)) return false;
    if (!w_member(stage, pl, u, proj1(proj1(*w)), visited)) return false;
  }
  return true;
}

bool StageMachine::z_member(unsigned stage, const Nat& d, std::vector<Nat>& path) {
  spend();
  if (std::find(path.begin(), path.end(), d) != path.end()) return false;
  ClassifiedCode c = classify_code(d);
  switch (c.tag) {
    case ClassifiedCode::NFam:
      return true;
    case ClassifiedCode::SigmaT:
    case ClassifiedCode::PiT: {
      const Nat &n = c.payload[0], &m = c.payload[1];
      if (!fam_b(stage, m, n)) return false;
      path.push_back(d);
      bool ok = z_member(stage, n, path);
      if (ok) {
        for (const Nat& x : members_b(stage, n)) {
          std::optional<Nat> mx;
          try {
            mx = apply(m, {x});
          } catch (const Indeterminate&) {
            ok = false;
            break;
          }
          if (!z_member(stage, *mx, path)) {
            ok = false;
            break;
          }
        }
      }
      path.pop_back();
      return ok;
    }
    case ClassifiedCode::PlusT: {
      if (!set_b(stage, c.payload[0]) || !set_b(stage, c.payload[1])) return false;
      path.push_back(d);
      bool ok = z_member(stage, c.payload[0], path) &&
                z_member(stage, c.payload[1], path);
      path.pop_back();
      return ok;
    }
    case ClassifiedCode::ListT: {
      if (!set_b(stage, c.payload[0])) return false;
      path.push_back(d);
      bool ok = z_member(stage, c.payload[0], path);
      path.pop_back();
      return ok;
    }
    case ClassifiedCode::IdT: {
      if (!set_b(stage, c.payload[0])) return false;
      path.push_back(d);
      bool ok = z_member(stage, c.payload[0], path);
      path.pop_back();
      return ok;
    }
    default:
      return false;  // cover, positivity and universe codes stay outside
  }
}

TriBool StageMachine::is_set_at(unsigned stage, const Nat& m) {
  try {
    return set_b(stage, m) ? TriBool::yes() : TriBool::no();
  } catch (const FuelOut&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  } catch (const Indeterminate&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  }
}

TriBool StageMachine::mem_at(unsigned stage, const Nat& k, const Nat& m) {
  try {
    return mem_b(stage, k, m) ? TriBool::yes() : TriBool::no();
  } catch (const FuelOut&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  } catch (const Indeterminate&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  }
}

std::optional<std::vector<Nat>> StageMachine::enumerate_members(unsigned stage,
                                                               const Nat& m) {
  try {
    return members_b(stage, m);
  } catch (const FuelOut&) {
    return std::nullopt;
  } catch (const Indeterminate&) {
    return std::nullopt;
  }
}

TriBool StageMachine::compute_V(unsigned stage, const std::vector<Nat>& pl,
                                const Nat& q) {
  if (pl.size() != 5)
    throw Error(ErrorKind::StarConditionFailed, "cover payload must have 5 parts");
  try {
    if (!star_b(stage, pl))
      throw Error(ErrorKind::StarConditionFailed,
                  "cover code payload fails the side conditions");
    std::vector<std::pair<Nat, Nat>> path;
    return v_member(stage, pl, pl[0], q, path) ? TriBool::yes() : TriBool::no();
  } catch (const FuelOut&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  } catch (const Indeterminate&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  }
}

TriBool StageMachine::compute_W(unsigned stage, const std::vector<Nat>& pl,
                                const Nat& q) {
  if (pl.size() != 5)
    throw Error(ErrorKind::StarConditionFailed,
                "positivity payload must have 5 parts");
  try {
    if (!star_b(stage, pl))
      throw Error(ErrorKind::StarConditionFailed,
                  "positivity code payload fails the side conditions");
    std::vector<std::pair<Nat, Nat>> visited;
    return w_member(stage, pl, pl[0], q, visited) ? TriBool::yes() : TriBool::no();
  } catch (const FuelOut&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  } catch (const Indeterminate&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  }
}

TriBool StageMachine::compute_Z(unsigned stage, const std::vector<Nat>& pl,
                                const Nat& d) {
  if (pl.size() != 2)
    throw Error(ErrorKind::FamConditionFailed, "u payload must have 2 parts");
  try {
    if (!fam_b(stage, pl[1], pl[0]))
      throw Error(ErrorKind::FamConditionFailed,
                  "u code payload fails the family condition");
    std::vector<Nat> path;
    return z_member(stage, d, path) ? TriBool::yes() : TriBool::no();
  } catch (const FuelOut&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  } catch (const Indeterminate&) {
    return TriBool::unknown(fuel_start_ - fuel_);
  }
}

// ---------------------------------------------------------------------------
// Finite axiom-sets as codes
// ---------------------------------------------------------------------------

Nat finite_set_code(std::uint32_t n, std::vector<Nat>* realizers) {
  if (realizers) realizers->clear();
  if (n == 0) return code_nat(0);
  if (n == 1) {
    if (realizers) realizers->push_back(0);
    return code_nat(1);
  }
  std::vector<Nat> left_rs;
  Nat left = finite_set_code(n - 1, &left_rs);
  if (realizers) {
    for (const Nat& x : left_rs) realizers->push_back(pair(0, x));
    realizers->push_back(pair(1, 0));
  }
  return code_plus(left, code_nat(1));
}

namespace {

// Finite function as a table-primitive code over a right-nested pair spine.
Nat table_code(const std::vector<Nat>& values) {
  Nat spine = 0;
  for (auto it = values.rbegin(); it != values.rend(); ++it)
    spine = pair(*it, spine);
  return encode_term(PcaTerm::table(spine));
}

std::size_t as_index(const Nat& n) { return static_cast<std::size_t>(n); }

}  // namespace

Nat EncodedAxiomSet::subset_code(const Subset& v) const {
  std::vector<Nat> table;
  for (std::size_t x = 0; x < elem_codes.size(); ++x) {
    std::size_t slot = as_index(elem_codes[x]);
    if (table.size() <= slot) table.resize(slot + 1, code_nat(0));
    table[slot] = code_nat(v.contains(static_cast<Element>(x)) ? 1 : 0);
  }
  return table_code(table);
}

std::vector<Nat> EncodedAxiomSet::cover_payload(Element a, const Subset& v) const {
  return {elem_codes[a], subset_code(v), base, index_fam, cover_fam};
}

EncodedAxiomSet encode_axiom_set(const AxiomSet& ax) {
  EncodedAxiomSet out;
  std::uint32_t n = ax.carrier_size();
  out.base = finite_set_code(n, &out.elem_codes);

  auto place = [](std::vector<Nat>& table, const Nat& slot_code, const Nat& value) {
    std::size_t slot = as_index(slot_code);
    if (table.size() <= slot) table.resize(slot + 1, code_nat(0));
    table[slot] = value;
  };

  std::vector<Nat> index_table, cover_table;
  for (Element x = 0; x < n; ++x) {
    std::uint32_t arity = ax.index_count(x);
    std::vector<Nat> idx_realizers;
    Nat idx_code = finite_set_code(arity, &idx_realizers);
    place(index_table, out.elem_codes[x], idx_code);

    // {c}(x,j): table over index realizers of the subset table of C(x,j).
    std::vector<Nat> per_index;
    for (std::uint32_t j = 0; j < arity; ++j) {
      std::vector<Nat> subset_table;
      for (Element u = 0; u < n; ++u)
        place(subset_table, out.elem_codes[u],
              code_nat(ax.cover(x, j).contains(u) ? 1 : 0));
      place(per_index, idx_realizers[j], table_code(subset_table));
    }
    place(cover_table, out.elem_codes[x], table_code(per_index));
  }
  out.index_fam = table_code(index_table);
  out.cover_fam = table_code(cover_table);
  return out;
}

}  // namespace topo
