#ifndef TOPO_QUOTIENT_HPP
#define TOPO_QUOTIENT_HPP

#include "topo/core.hpp"

namespace topo {

/// The quotient B/R of a base by its equivalence. Classes are numbered in
/// order of their least element; representatives are least-in-class and are
/// used only for display.
class QuotientMap {
 public:
  explicit QuotientMap(Setoid setoid);

  const Setoid& setoid() const { return setoid_; }
  std::uint32_t base_size() const { return setoid_.carrier_size(); }
  std::uint32_t class_count() const { return static_cast<std::uint32_t>(reps_.size()); }
  Element class_of(Element b) const;
  Element rep(Element cls) const { return reps_.at(cls); }
  const std::vector<Element>& class_reps() const { return reps_; }

 private:
  Setoid setoid_;
  std::vector<Element> reps_;
  std::vector<Element> class_of_;
};

/// es(W) = { b in B : [b] in W }; always R-saturated.
Subset es(const QuotientMap& qm, const Subset& w);

/// es_inv(V) = { z : some b in V has [b] = z }.
Subset es_inv(const QuotientMap& qm, const Subset& v);

/// Pulls an axiom-set on classes back to the base: element b inherits each
/// class index j with cover es(C([b],j)), then gains one singleton axiom {y}
/// for every y related to b.
AxiomSet transform_quotient(const QuotientMap& qm, const AxiomSet& ax_on_classes);

/// Extends ax on its own carrier by singleton axioms {y} for every y with
/// x = y in eq, making the base extensional.
AxiomSet transform_setoid(const AxiomSet& ax, const Setoid& eq);

}  // namespace topo

#endif
