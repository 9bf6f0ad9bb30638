#include "topo/oracle.hpp"

namespace topo {

namespace {

void check_bound(const AxiomSet& ax, std::uint32_t oracle_bound) {
  if (ax.carrier_size() > oracle_bound)
    throw Error(ErrorKind::OracleBoundExceeded,
                "carrier too large for powerset enumeration");
}

}  // namespace

Subset saturate_oracle(const AxiomSet& ax, const Subset& v,
                       std::uint32_t oracle_bound) {
  check_bound(ax, oracle_bound);
  std::uint32_t n = ax.carrier_size();
  Subset acc = Subset::full(n);
  for (const Subset& w : enumerate_subsets(n, oracle_bound)) {
    if (!v.subset_of(w)) continue;
    bool prefixed = true;
    for (Element x = 0; x < n && prefixed; ++x) {
      if (w.contains(x)) continue;
      for (std::uint32_t j = 0; j < ax.index_count(x); ++j)
        if (ax.cover(x, j).subset_of(w)) {
          prefixed = false;
          break;
        }
    }
    if (prefixed) acc = acc.intersect(w);
  }
  return acc;
}

Subset interior_oracle(const AxiomSet& ax, const Subset& v,
                       std::uint32_t oracle_bound) {
  check_bound(ax, oracle_bound);
  std::uint32_t n = ax.carrier_size();
  Subset acc(n);
  for (const Subset& x : enumerate_subsets(n, oracle_bound)) {
    if (!x.subset_of(v)) continue;
    bool postfixed = true;
    for (Element e = 0; e < n && postfixed; ++e) {
      if (!x.contains(e)) continue;
      for (std::uint32_t j = 0; j < ax.index_count(e); ++j)
        if (ax.cover(e, j).intersect(x).count() == 0) {
          postfixed = false;
          break;
        }
    }
    if (postfixed) acc = acc.unite(x);
  }
  return acc;
}

}  // namespace topo
