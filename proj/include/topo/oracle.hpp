#ifndef TOPO_ORACLE_HPP
#define TOPO_ORACLE_HPP

#include "topo/core.hpp"

namespace topo {

/// Brute-force reference for saturation: the intersection of every
/// pre-fixed superset of v in the full powerset. Carrier must stay within
/// the oracle bound (throws OracleBoundExceeded).
Subset saturate_oracle(const AxiomSet& ax, const Subset& v,
                       std::uint32_t oracle_bound = kDefaultOracleBound);

/// Brute-force reference for the interior: the union of every post-fixed
/// subset of v (the split subsets).
Subset interior_oracle(const AxiomSet& ax, const Subset& v,
                       std::uint32_t oracle_bound = kDefaultOracleBound);

}  // namespace topo

#endif
