#ifndef TOPO_POSITIVITY_HPP
#define TOPO_POSITIVITY_HPP

#include <functional>
#include <optional>

#include "topo/core.hpp"
#include "topo/sexpr.hpp"

namespace topo {

struct InteriorResult {
  Subset interior;
  std::uint32_t iterations = 0;
};

/// Witness P for a coinduction step: split(target, witness) must hold.
struct SplitCertificate {
  Subset witness;  // the set P
  Subset target;   // the set V

  sx::Sexpr to_sexpr() const;
  static SplitCertificate from_sexpr(const sx::Sexpr& e, std::uint32_t carrier_size);
};

/// Greatest X within V with X contained in tau(X), where
/// tau(X) = { x : x in X, x in V, and every I(x)-axiom meets X }.
/// Computed by element removal from V down to the fixpoint.
InteriorResult interior(const AxiomSet& ax, const Subset& v);

bool is_positive(const AxiomSet& ax, Element a, const Subset& v);

/// Both split conjuncts of P against V: P within V, and every member of P
/// meets each of its axiom covers inside P.
bool check_split(const AxiomSet& ax, const Subset& v, const Subset& p);

/// The coinduction rule: with a valid certificate, membership of a in the
/// witness establishes positivity. Throws InvalidCertificate.
bool coinduct(const AxiomSet& ax, Element a, const SplitCertificate& cert);

/// Largest split set for V, namely the interior.
SplitCertificate extract_splitting_set(const AxiomSet& ax, const Subset& v);

/// Classical reading: a positive in V iff not (a covered by complement of V).
bool duality_oracle(const AxiomSet& ax, Element a, const Subset& v);

/// Given a positive in V and a covered by U, finds x in U that is positive
/// in V, descending the extracted cover proof. Throws PreconditionViolated.
Element compatibility_witness(const AxiomSet& ax, Element a, const Subset& v,
                              const Subset& u);

/// The approximation chain X_0 = {a0}, X_{k+1} = X_k plus choice-function
/// images, with f_x(j) = least member of C(x,j) inside Y. Returned sequence
/// ends with the stable X*.
std::vector<Subset> chain_construction(const AxiomSet& ax, const Subset& y,
                                       const Subset& v, Element a0,
                                       std::uint32_t n_max = 10000);

/// Bounded positivity on a lazily generated base; No is sound, Yes only on a
/// fully explored finite certificate.
TriBool positive_bounded(const LazyAxiomSet& lax, Element a,
                         const std::function<bool(Element)>& v, std::uint64_t fuel);

}  // namespace topo

#endif
