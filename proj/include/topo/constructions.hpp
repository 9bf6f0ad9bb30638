#ifndef TOPO_CONSTRUCTIONS_HPP
#define TOPO_CONSTRUCTIONS_HPP

#include "topo/core.hpp"

namespace topo {

/// An axiom-set read with both of its generated relations: the inductive
/// cover and the coinductive positivity. Compatibility between the two is a
/// semantic invariant, spot-checkable via compatibility_witness.
struct PositiveTopology {
  AxiomSet ax;
};

/// Pos(a): a is positive in the full carrier.
bool pos_predicate(const AxiomSet& ax, Element a);

/// Adds to every element one extra axiom whose cover is the full carrier
/// when Pos(a) holds (in the original system) and empty otherwise.
AxiomSet coreflect(const AxiomSet& ax);

PositiveTopology embed_locale(const AxiomSet& ax);

/// All fixpoints of saturation, in mask order. Carrier must stay within the
/// oracle bound.
std::vector<Subset> formal_opens(const AxiomSet& ax,
                                 std::uint32_t oracle_bound = kDefaultOracleBound);

/// All fixpoints of the interior operator, in mask order.
std::vector<Subset> formal_closeds(const AxiomSet& ax,
                                   std::uint32_t oracle_bound = kDefaultOracleBound);

}  // namespace topo

#endif
