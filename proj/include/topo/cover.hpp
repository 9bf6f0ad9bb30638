#ifndef TOPO_COVER_HPP
#define TOPO_COVER_HPP

#include <functional>
#include <memory>

#include "topo/core.hpp"
#include "topo/sexpr.hpp"

namespace topo {

/// Proof-term tree for a derivation of `a covered-by V`.
/// Leaf: rf(a, r) with r an opaque membership token.
/// Node: tr(a, j, children), one child per member z of C(a,j), keyed by z.
struct CoverProof {
  enum Kind { Rf, Tr } kind = Rf;
  Element elem = 0;
  std::uint32_t index = 0;                                   // Tr only
  std::vector<std::pair<Element, CoverProof>> children;      // Tr only, keyed by z
  std::string token = "*";                                   // Rf evidence, opaque

  sx::Sexpr to_sexpr() const;
  static CoverProof from_sexpr(const sx::Sexpr& e);
  std::string to_string() const { return to_sexpr().to_string(); }

  std::uint32_t depth() const;
};

struct SaturationResult {
  Subset closure;
  std::vector<std::uint32_t> witness_depth;  // per element; 0 for uncovered
};

/// Least X containing V and closed under the generation step: if some
/// C(a,j) lies inside X then a joins X. Worklist with residual counters.
SaturationResult saturate(const AxiomSet& ax, const Subset& v);

bool covers(const AxiomSet& ax, Element a, const Subset& v);

/// Bounded search on a lazily generated base. Yes is sound (a finite
/// derivation exists); No is sound (even treating every unexplored element
/// as covered, a is not derivable); otherwise Unknown. Fuel counts
/// generator invocations.
TriBool covers_bounded(const LazyAxiomSet& lax, Element a,
                       const std::function<bool(Element)>& v, std::uint64_t fuel);

/// First derivation found in worklist order; throws NotCovered.
CoverProof extract_proof(const AxiomSet& ax, Element a, const Subset& v);

/// Validates a proof tree against the rule shapes; diagnostic on failure.
bool check_proof(const AxiomSet& ax, const Subset& v, const CoverProof& p,
                 std::string* diagnostic = nullptr);

/// Structural recursion over a checked proof: Rf nodes via q1, Tr nodes via
/// q2 on the recursively evaluated children.
template <typename Value>
Value eval_ind(
    const AxiomSet& ax, const Subset& v, const CoverProof& p,
    const std::function<Value(Element, const std::string&)>& q1,
    const std::function<Value(Element, std::uint32_t,
                              const std::vector<std::pair<Element, Value>>&)>& q2) {
  std::string diag;
  if (!check_proof(ax, v, p, &diag))
    throw Error(ErrorKind::IllFormedProof, diag);
  struct Rec {
    const std::function<Value(Element, const std::string&)>& q1;
    const std::function<Value(Element, std::uint32_t,
                              const std::vector<std::pair<Element, Value>>&)>& q2;
    Value run(const CoverProof& node) const {
      if (node.kind == CoverProof::Rf) return q1(node.elem, node.token);
      std::vector<std::pair<Element, Value>> vals;
      vals.reserve(node.children.size());
      for (const auto& [z, child] : node.children) vals.emplace_back(z, run(child));
      return q2(node.elem, node.index, vals);
    }
  };
  return Rec{q1, q2}.run(p);
}

}  // namespace topo

#endif
