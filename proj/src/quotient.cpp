#include "topo/quotient.hpp"

namespace topo {

QuotientMap::QuotientMap(Setoid setoid) : setoid_(std::move(setoid)) {
  const std::uint32_t n = setoid_.carrier_size();
  class_of_.assign(n, 0);
  for (Element b = 0; b < n; ++b) {
    Element least = b;
    for (Element c = 0; c < b; ++c)
      if (setoid_.related(b, c)) {
        least = c;
        break;
      }
    if (least == b) {
      class_of_[b] = reps_.size();
      reps_.push_back(b);
    } else {
      class_of_[b] = class_of_[least];
    }
  }
}

Element QuotientMap::class_of(Element b) const {
  if (b >= base_size())
    throw Error(ErrorKind::IndexOutOfRange, "element out of base");
  return class_of_.at(b);
}

Subset es(const QuotientMap& qm, const Subset& w) {
  if (w.carrier_size() != qm.class_count())
    throw Error(ErrorKind::CarrierMismatch, "subset carrier differs from class count");
  Subset out(qm.base_size());
  for (Element b = 0; b < qm.base_size(); ++b)
    if (w.contains(qm.class_of(b))) out.add(b);
  return out;
}

Subset es_inv(const QuotientMap& qm, const Subset& v) {
  if (v.carrier_size() != qm.base_size())
    throw Error(ErrorKind::CarrierMismatch, "subset carrier differs from base size");
  Subset out(qm.class_count());
  for (Element b : v.members()) out.add(qm.class_of(b));
  return out;
}

AxiomSet transform_quotient(const QuotientMap& qm, const AxiomSet& ax_on_classes) {
  if (ax_on_classes.carrier_size() != qm.class_count())
    throw Error(ErrorKind::CarrierMismatch,
                "class axiom-set carrier differs from class count");
  const std::uint32_t n = qm.base_size();
  AxiomSet out(n);
  for (Element b = 0; b < n; ++b) {
    Element cls = qm.class_of(b);
    for (std::uint32_t j = 0; j < ax_on_classes.index_count(cls); ++j)
      out.add_cover(b, es(qm, ax_on_classes.cover(cls, j)));
    for (Element y = 0; y < n; ++y)
      if (qm.setoid().related(b, y)) out.add_cover(b, Subset(n, {y}));
  }
  return out;
}

AxiomSet transform_setoid(const AxiomSet& ax, const Setoid& eq) {
  if (eq.carrier_size() != ax.carrier_size())
    throw Error(ErrorKind::CarrierMismatch, "setoid carrier differs from axiom-set base");
  const std::uint32_t n = ax.carrier_size();
  AxiomSet out(n);
  for (Element x = 0; x < n; ++x) {
    for (std::uint32_t j = 0; j < ax.index_count(x); ++j)
      out.add_cover(x, ax.cover(x, j));
    for (Element y = 0; y < n; ++y)
      if (eq.related(x, y)) out.add_cover(x, Subset(n, {y}));
  }
  return out;
}

}  // namespace topo
