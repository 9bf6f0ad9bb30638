#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "topo/cover.hpp"
#include "topo/oracle.hpp"
#include "topo/positivity.hpp"

using namespace topo;

TEST_CASE("interior on the worked fixture") {
  AxiomSet ax = ex1();
  // 2 can never be positive (its only axiom has an empty cover).
  CHECK(interior(ax, Subset(3, {2})).interior == Subset(3));
  CHECK(interior(ax, Subset(3, {0, 1})).interior == Subset(3, {0, 1}));
  CHECK(interior(ax, Subset(3, {0, 2})).interior == Subset(3));
  CHECK(interior(ax, Subset::full(3)).interior == Subset(3, {0, 1}));

  CHECK(is_positive(ax, 0, Subset(3, {0, 1})));
  CHECK(is_positive(ax, 1, Subset(3, {1})));
  CHECK(!is_positive(ax, 2, Subset(3, {2})));
  CHECK(!is_positive(ax, 0, Subset(3, {0, 2})));
}

TEST_CASE("interior is an interior operator") {
  std::mt19937 rng(8001);
  for (int t = 0; t < 250; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    Subset w = gen::random_subset(rng, n);
    Subset iv = interior(ax, v).interior;
    CHECK(iv.subset_of(v));                                     // deflationary
    CHECK(interior(ax, iv).interior == iv);                     // idempotent
    CHECK(interior(ax, v.intersect(w)).interior.subset_of(iv));  // monotone
  }
}

TEST_CASE("interior agrees with the powerset reference") {
  std::mt19937 rng(8002);
  for (int t = 0; t < 150; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    Subset v = gen::random_subset(rng, ax.carrier_size());
    CHECK(interior(ax, v).interior == interior_oracle(ax, v));
  }
}

TEST_CASE("positivity is the classical dual of the cover") {
  std::mt19937 rng(8003);
  for (int t = 0; t < 150; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    for (Element a = 0; a < n; ++a) {
      CHECK(is_positive(ax, a, v) == duality_oracle(ax, a, v));
      CHECK(duality_oracle(ax, a, v) == !covers(ax, a, v.complement()));
    }
  }
}

TEST_CASE("splitting certificates drive the coinduction rule") {
  AxiomSet ax = ex1();
  Subset v(3, {0, 1});

  SplitCertificate cert = extract_splitting_set(ax, v);
  CHECK(cert.target == v);
  CHECK(check_split(ax, v, cert.witness));
  CHECK(coinduct(ax, 0, cert));
  CHECK(coinduct(ax, 1, cert));
  CHECK(!coinduct(ax, 2, cert));

  // A non-split witness is refused outright.
  SplitCertificate bad{Subset(3, {2}), Subset(3, {2})};
  CHECK(!check_split(ax, bad.target, bad.witness));
  CHECK_THROWS_AS(coinduct(ax, 2, bad), Error);

  // Certificate round-trip through s-expressions.
  SplitCertificate back = SplitCertificate::from_sexpr(cert.to_sexpr(), 3);
  CHECK(back.witness == cert.witness);
  CHECK(back.target == cert.target);
}

TEST_CASE("membership in any split subset implies positivity") {
  std::mt19937 rng(8004);
  for (int t = 0; t < 200; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 4, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    for (const Subset& p : enumerate_subsets(n)) {
      if (!check_split(ax, v, p)) continue;
      for (Element a : p.members()) CHECK(is_positive(ax, a, v));
    }
  }
}

TEST_CASE("compatibility witnesses are positive members of the cover") {
  std::mt19937 rng(8005);
  int found = 0;
  for (int t = 0; t < 300; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    Subset u = gen::random_subset(rng, n);
    for (Element a = 0; a < n; ++a) {
      if (!is_positive(ax, a, v) || !covers(ax, a, u)) continue;
      Element x = compatibility_witness(ax, a, v, u);
      CHECK(u.contains(x));
      CHECK(is_positive(ax, x, v));
      ++found;
    }
  }
  CHECK(found > 100);
  CHECK_THROWS_AS(compatibility_witness(ex1(), 2, Subset(3, {2}), Subset(3, {2})),
                  Error);
}

TEST_CASE("the approximation chain grows to a stable set") {
  std::mt19937 rng(8006);
  for (int t = 0; t < 100; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    Subset y = interior(ax, v).interior;
    for (Element a0 : y.members()) {
      auto chain = chain_construction(ax, y, v, a0);
      REQUIRE(!chain.empty());
      CHECK(chain.front().contains(a0));
      for (std::size_t i = 1; i < chain.size(); ++i)
        CHECK(chain[i - 1].subset_of(chain[i]));
      for (const Subset& s : chain) CHECK(s.subset_of(y));
      if (chain.size() >= 2)
        CHECK(chain[chain.size() - 1] == chain[chain.size() - 2]);
    }
  }
}

TEST_CASE("bounded positivity is consistent with the exact engine") {
  std::mt19937 rng(8007);
  for (int t = 0; t < 120; ++t) {
    AxiomSet ax = gen::random_axiom_set(rng, 5, 2);
    std::uint32_t n = ax.carrier_size();
    Subset v = gen::random_subset(rng, n);
    LazyAxiomSet lax = lazy_of_finite(ax);
    auto pred = [v](Element x) { return v.contains(x); };
    for (Element a = 0; a < n; ++a) {
      bool exact = is_positive(ax, a, v);
      TriBool big = positive_bounded(lax, a, pred, 10000);
      if (!big.is_unknown()) CHECK(big.is_yes() == exact);
      TriBool small = positive_bounded(lax, a, pred, 3);
      if (!small.is_unknown()) CHECK(small.is_yes() == exact);
    }
  }
}
