#include "topo/constructions.hpp"

#include "topo/cover.hpp"
#include "topo/positivity.hpp"

namespace topo {

bool pos_predicate(const AxiomSet& ax, Element a) {
  return is_positive(ax, a, Subset::full(ax.carrier_size()));
}

AxiomSet coreflect(const AxiomSet& ax) {
  const std::uint32_t n = ax.carrier_size();
  Subset pos = interior(ax, Subset::full(n)).interior;
  AxiomSet out(n);
  for (Element a = 0; a < n; ++a) {
    for (std::uint32_t j = 0; j < ax.index_count(a); ++j)
      out.add_cover(a, ax.cover(a, j));
    out.add_cover(a, pos.contains(a) ? Subset::full(n) : Subset(n));
  }
  return out;
}

PositiveTopology embed_locale(const AxiomSet& ax) {
  return PositiveTopology{validate_axiom_set(ax)};
}

std::vector<Subset> formal_opens(const AxiomSet& ax, std::uint32_t oracle_bound) {
  std::vector<Subset> out;
  for (const Subset& v : enumerate_subsets(ax.carrier_size(), oracle_bound))
    if (saturate(ax, v).closure == v) out.push_back(v);
  return out;
}

std::vector<Subset> formal_closeds(const AxiomSet& ax, std::uint32_t oracle_bound) {
  std::vector<Subset> out;
  for (const Subset& v : enumerate_subsets(ax.carrier_size(), oracle_bound))
    if (interior(ax, v).interior == v) out.push_back(v);
  return out;
}

}  // namespace topo
