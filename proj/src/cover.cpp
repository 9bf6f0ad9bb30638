#include "topo/cover.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace topo {

sx::Sexpr CoverProof::to_sexpr() const {
  using sx::Sexpr;
  if (kind == Rf)
    return Sexpr::list({Sexpr::sym("rf"), Sexpr::sym(std::to_string(elem))});
  std::vector<Sexpr> items{Sexpr::sym("tr"), Sexpr::sym(std::to_string(elem)),
                           Sexpr::sym(std::to_string(index))};
  for (const auto& [z, child] : children)
    items.push_back(Sexpr::list({Sexpr::sym(std::to_string(z)), child.to_sexpr()}));
  return Sexpr::list(std::move(items));
}

namespace {

Element parse_nat_atom(const sx::Sexpr& e, const char* what) {
  if (!e.is_atom) throw Error(ErrorKind::ParseError, std::string("expected ") + what);
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(e.atom, &used);
    if (used != e.atom.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, std::string("expected numeral for ") + what);
  }
}

}  // namespace

CoverProof CoverProof::from_sexpr(const sx::Sexpr& e) {
  CoverProof p;
  if (e.head() == "rf") {
    if (e.size() != 2) throw Error(ErrorKind::ParseError, "(rf a) takes one argument");
    p.kind = Rf;
    p.elem = parse_nat_atom(e[1], "rf element");
    return p;
  }
  if (e.head() == "tr") {
    if (e.size() < 3) throw Error(ErrorKind::ParseError, "(tr a j (z p)...) malformed");
    p.kind = Tr;
    p.elem = parse_nat_atom(e[1], "tr element");
    p.index = static_cast<std::uint32_t>(parse_nat_atom(e[2], "tr index"));
    for (std::size_t i = 3; i < e.size(); ++i) {
      const sx::Sexpr& pair = e[i];
      if (!pair.is_list() || pair.size() != 2)
        throw Error(ErrorKind::ParseError, "tr child must be (z proof)");
      p.children.emplace_back(parse_nat_atom(pair[0], "child element"),
                              from_sexpr(pair[1]));
    }
    return p;
  }
  throw Error(ErrorKind::ParseError, "proof node must be (rf ...) or (tr ...)");
}

std::uint32_t CoverProof::depth() const {
  if (kind == Rf) return 1;
  std::uint32_t d = 0;
  for (const auto& [z, c] : children) d = std::max(d, c.depth());
  return d + 1;
}

namespace {

struct SaturationState {
  SaturationResult result;
  // Index of the axiom that discharged each element added by a tr step;
  // elements of V record no axiom (they close by rf).
  std::vector<std::int64_t> used_index;
};

SaturationState saturate_impl(const AxiomSet& ax, const Subset& v) {
  if (v.carrier_size() != ax.carrier_size())
    throw Error(ErrorKind::CarrierMismatch, "subset carrier differs from axiom-set base");
  const std::uint32_t n = ax.carrier_size();
  SaturationState st;
  st.result.closure = v;
  st.result.witness_depth.assign(n, 0);
  st.used_index.assign(n, -1);

  // Residual counters: per (x, j), how many members of C(x,j) are still
  // outside the closure. Empty covers fire immediately.
  std::vector<std::vector<std::uint32_t>> residual(n);
  // watch list: for element z, the (x,j) pairs whose cover contains z
  std::vector<std::vector<std::pair<Element, std::uint32_t>>> watch(n);
  for (Element x = 0; x < n; ++x) {
    residual[x].resize(ax.index_count(x));
    for (std::uint32_t j = 0; j < ax.index_count(x); ++j) {
      const Subset& c = ax.cover(x, j);
      residual[x][j] = c.count();
      for (Element z : c.members()) watch[z].emplace_back(x, j);
    }
  }

  std::deque<Element> work;
  auto push = [&](Element e, std::uint32_t depth, std::int64_t via) {
    if (st.result.witness_depth[e] != 0) return;
    st.result.closure.add(e);
    st.result.witness_depth[e] = depth;
    st.used_index[e] = via;
    work.push_back(e);
  };

  for (Element e : v.members()) push(e, 1, -1);
  // Axioms with empty covers fire unconditionally.
  for (Element x = 0; x < n; ++x)
    for (std::uint32_t j = 0; j < ax.index_count(x); ++j)
      if (residual[x][j] == 0) push(x, 1, j);

  while (!work.empty()) {
    Element z = work.front();
    work.pop_front();
    for (auto [x, j] : watch[z]) {
      if (--residual[x][j] == 0 && st.result.witness_depth[x] == 0) {
        std::uint32_t d = 0;
        for (Element m : ax.cover(x, j).members())
          d = std::max(d, st.result.witness_depth[m]);
        push(x, d + 1, j);
      }
    }
  }
  return st;
}

}  // namespace

SaturationResult saturate(const AxiomSet& ax, const Subset& v) {
  return saturate_impl(ax, v).result;
}

bool covers(const AxiomSet& ax, Element a, const Subset& v) {
  if (a >= ax.carrier_size())
    throw Error(ErrorKind::IndexOutOfRange, "element out of carrier");
  return saturate(ax, v).closure.contains(a);
}

CoverProof extract_proof(const AxiomSet& ax, Element a, const Subset& v) {
  SaturationState st = saturate_impl(ax, v);
  if (!st.result.closure.contains(a))
    throw Error(ErrorKind::NotCovered, "element is not covered by the subset");
  struct Builder {
    const AxiomSet& ax;
    const Subset& v;
    const SaturationState& st;
    CoverProof build(Element x) const {
      CoverProof p;
      p.elem = x;
      if (v.contains(x)) {
        p.kind = CoverProof::Rf;
        return p;
      }
      p.kind = CoverProof::Tr;
      p.index = static_cast<std::uint32_t>(st.used_index[x]);
      for (Element z : ax.cover(x, p.index).members())
        p.children.emplace_back(z, build(z));
      return p;
    }
  };
  return Builder{ax, v, st}.build(a);
}

bool check_proof(const AxiomSet& ax, const Subset& v, const CoverProof& p,
                 std::string* diagnostic) {
  auto fail = [&](const std::string& msg) {
    if (diagnostic) *diagnostic = msg;
    return false;
  };
  if (p.elem >= ax.carrier_size())
    return fail("element " + std::to_string(p.elem) + " out of carrier");
  if (p.kind == CoverProof::Rf) {
    if (!v.contains(p.elem))
      return fail("rf at " + std::to_string(p.elem) + " but element is not in the subset");
    return true;
  }
  if (p.index >= ax.index_count(p.elem))
    return fail("tr index " + std::to_string(p.index) + " not in I(" +
                std::to_string(p.elem) + ")");
  const Subset& c = ax.cover(p.elem, p.index);
  // Children must cover exactly the members of C(a,j), keyed by element.
  std::set<Element> seen;
  for (const auto& [z, child] : p.children) {
    if (!c.contains(z))
      return fail("tr child " + std::to_string(z) + " not in the axiom cover");
    if (!seen.insert(z).second)
      return fail("duplicate tr child " + std::to_string(z));
    if (child.elem != z)
      return fail("child proof concludes " + std::to_string(child.elem) +
                  " under key " + std::to_string(z));
    if (!check_proof(ax, v, child, diagnostic)) return false;
  }
  if (seen.size() != c.count())
    return fail("tr at " + std::to_string(p.elem) + " is missing children");
  return true;
}

TriBool covers_bounded(const LazyAxiomSet& lax, Element a,
                       const std::function<bool(Element)>& v, std::uint64_t fuel) {
  if (fuel == 0) throw Error(ErrorKind::PreconditionViolated, "fuel must be positive");
  std::uint64_t spent = 0;
  // Explore breadth-first from a; an element is "explored" once its index
  // list and every cover have been generated.
  std::map<Element, std::vector<std::vector<Element>>> explored;
  std::set<Element> seen{a};
  std::deque<Element> frontier{a};
  while (!frontier.empty() && spent < fuel) {
    Element x = frontier.front();
    frontier.pop_front();
    if (explored.count(x)) continue;
    if (spent >= fuel) break;
    ++spent;
    std::vector<std::uint32_t> js = lax.index_gen(x);
    std::vector<std::vector<Element>> covs;
    bool complete = true;
    for (std::uint32_t j : js) {
      if (spent >= fuel) {
        complete = false;
        break;
      }
      ++spent;
      covs.push_back(lax.cover_gen(x, j));
    }
    if (!complete) break;  // x stays unexplored
    for (const auto& cov : covs)
      for (Element z : cov)
        if (seen.insert(z).second) frontier.push_back(z);
    explored[x] = std::move(covs);
  }

  // Strict least fixpoint: only axioms of explored elements may fire, and a
  // member counts as covered only once actually derived. Yes is a genuine
  // finite derivation.
  auto lfp = [&](bool optimistic) {
    std::set<Element> closed;
    for (Element x : seen)
      if (v(x) || (optimistic && !explored.count(x))) closed.insert(x);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [x, covs] : explored) {
        if (closed.count(x)) continue;
        for (const auto& cov : covs) {
          bool all = true;
          for (Element z : cov)
            if (!closed.count(z)) {
              all = false;
              break;
            }
          if (all) {
            closed.insert(x);
            changed = true;
            break;
          }
        }
      }
    }
    return closed;
  };

  if (lfp(false).count(a)) return TriBool::yes();
  // Optimistically treat every unexplored element as covered; if a still
  // fails, no extension of the search can derive it.
  if (!lfp(true).count(a)) return TriBool::no();
  return TriBool::unknown(spent);
}

}  // namespace topo
