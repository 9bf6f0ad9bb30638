#include "topo/positivity.hpp"

#include <deque>
#include <map>
#include <set>

#include "topo/cover.hpp"

namespace topo {

sx::Sexpr SplitCertificate::to_sexpr() const {
  using sx::Sexpr;
  std::vector<Sexpr> ms{Sexpr::sym("members")};
  for (Element e : witness.members()) ms.push_back(Sexpr::sym(std::to_string(e)));
  std::vector<Sexpr> ts{Sexpr::sym("target")};
  for (Element e : target.members()) ts.push_back(Sexpr::sym(std::to_string(e)));
  return Sexpr::list({Sexpr::sym("split"), Sexpr::list(std::move(ms)),
                      Sexpr::list(std::move(ts))});
}

SplitCertificate SplitCertificate::from_sexpr(const sx::Sexpr& e, std::uint32_t n) {
  if (e.head() != "split" || e.size() != 3 || e[1].head() != "members" ||
      e[2].head() != "target")
    throw Error(ErrorKind::ParseError, "expected (split (members ...) (target ...))");
  auto read = [&](const sx::Sexpr& lst) {
    Subset s(n);
    for (std::size_t i = 1; i < lst.size(); ++i) {
      if (!lst[i].is_atom) throw Error(ErrorKind::ParseError, "expected numeral member");
      s.add(std::stoull(lst[i].atom));
    }
    return s;
  };
  return SplitCertificate{read(e[1]), read(e[2])};
}

namespace {

bool survives(const AxiomSet& ax, Element x, const Subset& v, const Subset& x_set) {
  if (!v.contains(x) || !x_set.contains(x)) return false;
  for (std::uint32_t j = 0; j < ax.index_count(x); ++j) {
    bool met = false;
    for (Element y : ax.cover(x, j).members())
      if (x_set.contains(y)) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

}  // namespace

InteriorResult interior(const AxiomSet& ax, const Subset& v) {
  if (v.carrier_size() != ax.carrier_size())
    throw Error(ErrorKind::CarrierMismatch, "subset carrier differs from axiom-set base");
  InteriorResult r{v, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    ++r.iterations;
    Subset next = r.interior;
    for (Element x : r.interior.members())
      if (!survives(ax, x, v, r.interior)) {
        next.remove(x);
        changed = true;
      }
    r.interior = next;
  }
  return r;
}

bool is_positive(const AxiomSet& ax, Element a, const Subset& v) {
  if (a >= ax.carrier_size())
    throw Error(ErrorKind::IndexOutOfRange, "element out of carrier");
  return interior(ax, v).interior.contains(a);
}

bool check_split(const AxiomSet& ax, const Subset& v, const Subset& p) {
  if (v.carrier_size() != ax.carrier_size() || p.carrier_size() != ax.carrier_size())
    throw Error(ErrorKind::CarrierMismatch, "subset carrier differs from axiom-set base");
  for (Element x : p.members()) {
    if (!v.contains(x)) return false;
    for (std::uint32_t j = 0; j < ax.index_count(x); ++j) {
      bool met = false;
      for (Element y : ax.cover(x, j).members())
        if (p.contains(y)) {
          met = true;
          break;
        }
      if (!met) return false;
    }
  }
  return true;
}

bool coinduct(const AxiomSet& ax, Element a, const SplitCertificate& cert) {
  if (!check_split(ax, cert.target, cert.witness))
    throw Error(ErrorKind::InvalidCertificate, "certificate fails the split condition");
  return cert.witness.contains(a);
}

SplitCertificate extract_splitting_set(const AxiomSet& ax, const Subset& v) {
  return SplitCertificate{interior(ax, v).interior, v};
}

bool duality_oracle(const AxiomSet& ax, Element a, const Subset& v) {
  return !covers(ax, a, v.complement());
}

Element compatibility_witness(const AxiomSet& ax, Element a, const Subset& v,
                              const Subset& u) {
  if (!is_positive(ax, a, v) || !covers(ax, a, u))
    throw Error(ErrorKind::PreconditionViolated,
                "requires a positive in V and a covered by U");
  Subset pos = interior(ax, v).interior;
  CoverProof proof = extract_proof(ax, a, u);
  const CoverProof* node = &proof;
  // Invariant: node's element is positive in V. At an rf leaf it is also a
  // member of U, so it witnesses both conjuncts. At a tr node the deflation
  // axiom guarantees a positive member of the cover; its child subproof
  // keeps the invariant.
  while (node->kind == CoverProof::Tr) {
    const CoverProof* next = nullptr;
    for (const auto& [z, child] : node->children)
      if (pos.contains(z)) {
        next = &child;
        break;
      }
    if (!next)
      throw Error(ErrorKind::PreconditionViolated,
                  "deflation failed: no positive member in the axiom cover");
    node = next;
  }
  return node->elem;
}

std::vector<Subset> chain_construction(const AxiomSet& ax, const Subset& y,
                                       const Subset& v, Element a0,
                                       std::uint32_t n_max) {
  if (!check_split(ax, v, y) || !y.contains(a0))
    throw Error(ErrorKind::PreconditionViolated,
                "requires split(V,Y) and a0 a member of Y");
  std::vector<Subset> chain;
  Subset x(ax.carrier_size());
  x.add(a0);
  chain.push_back(x);
  for (std::uint32_t k = 0; k < n_max; ++k) {
    Subset next = x;
    for (Element e : x.members())
      for (std::uint32_t j = 0; j < ax.index_count(e); ++j)
        for (Element cand : ax.cover(e, j).members())
          if (y.contains(cand)) {  // f_e(j) = least member of C(e,j) within Y
            next.add(cand);
            break;
          }
    chain.push_back(next);
    if (next == x) break;
    x = next;
  }
  return chain;
}

TriBool positive_bounded(const LazyAxiomSet& lax, Element a,
                         const std::function<bool(Element)>& v, std::uint64_t fuel) {
  if (fuel == 0) throw Error(ErrorKind::PreconditionViolated, "fuel must be positive");
  std::uint64_t spent = 0;
  std::map<Element, std::vector<std::vector<Element>>> explored;
  std::set<Element> seen{a};
  std::deque<Element> frontier{a};
  while (!frontier.empty() && spent < fuel) {
    Element x = frontier.front();
    frontier.pop_front();
    if (explored.count(x)) continue;
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
    if (!complete) break;
    for (const auto& cov : covs)
      for (Element z : cov)
        if (seen.insert(z).second) frontier.push_back(z);
    explored[x] = std::move(covs);
  }

  // Greatest fixpoint by removal over the finite explored region. In strict
  // mode only explored elements may support an obligation, so the result is
  // a genuine split certificate. In optimistic mode unexplored elements are
  // kept, so falling out refutes positivity outright.
  auto gfp = [&](bool optimistic) {
    std::set<Element> p;
    for (Element x : seen) {
      if (explored.count(x)) {
        if (v(x)) p.insert(x);
      } else if (optimistic) {
        p.insert(x);
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [x, covs] : explored) {
        if (!p.count(x)) continue;
        for (const auto& cov : covs) {
          bool met = false;
          for (Element y : cov)
            if (p.count(y)) {
              met = true;
              break;
            }
          if (!met) {
            p.erase(x);
            changed = true;
            break;
          }
        }
      }
    }
    return p;
  };

  if (gfp(true).count(a) == 0) return TriBool::no();
  if (gfp(false).count(a)) return TriBool::yes();
  return TriBool::unknown(spent);
}

}  // namespace topo
