#include <random>

#include "doctest.h"
#include "topo/pca.hpp"

using namespace topo;

TEST_CASE("pairing constants") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(1, 0) == 1);
  CHECK(pair(0, 1) == 2);
  CHECK(pair(2, 0) == 3);
  CHECK(pair(1, 1) == 4);
  CHECK(pair(0, 2) == 5);
}

TEST_CASE("pairing is a bijection") {
  // Exhaustive inversion on a grid, surjectivity on an initial segment.
  for (unsigned n = 0; n <= 100; ++n)
    for (unsigned m = 0; m <= 100; ++m) {
      Nat k = pair(n, m);
      CHECK(proj0(k) == n);
      CHECK(proj1(k) == m);
    }
  for (unsigned k = 0; k <= 2000; ++k)
    CHECK(pair(proj0(k), proj1(k)) == k);
  // Large random values survive the round trip.
  std::mt19937_64 rng(11001);
  for (int t = 0; t < 50; ++t) {
    Nat n = Nat(rng()) * rng() + rng();
    Nat m = Nat(rng()) * rng() + rng();
    Nat k = pair(n, m);
    CHECK(proj0(k) == n);
    CHECK(proj1(k) == m);
  }
}

TEST_CASE("tuples and lists code and decode") {
  std::vector<Nat> xs{4, 0, 17, 3};
  CHECK(untuple(tuple_of(xs), 4) == xs);
  CHECK(tuple_of({7}) == 7);

  CHECK(list_len(list_nil()) == 0);
  Nat l = list_of({5, 6, 7});
  CHECK(list_len(l) == 3);
  CHECK(list_at(l, 0) == 5);
  CHECK(list_at(l, 1) == 6);
  CHECK(list_at(l, 2) == 7);
  CHECK(list_at(l, 3) == 0);  // out of range
  CHECK(list_cons(5, list_of({6, 7})) == l);
}

TEST_CASE("terms encode and decode faithfully") {
  std::vector<PcaTerm> samples{
      PcaTerm::num(0),
      PcaTerm::num(42),
      PcaTerm::lam(PcaTerm::v(0)),
      PcaTerm::lam(PcaTerm::lam(PcaTerm::v(1))),
      PcaTerm::app(PcaTerm::lam(PcaTerm::v(0)), PcaTerm::num(3)),
      PcaTerm::prim(PcaTerm::Suc),
      PcaTerm::prim(PcaTerm::MkPair),
      PcaTerm::prim(PcaTerm::Proj0),
      PcaTerm::prim(PcaTerm::Proj1),
      PcaTerm::prim(PcaTerm::Rec),
      PcaTerm::table(pair(9, pair(8, 0))),
  };
  for (const PcaTerm& t : samples) {
    Nat code = encode_term(t);
    auto back = decode_term(code);
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  // Free names and unbound indices are not encodable.
  CHECK_THROWS_AS(encode_term(PcaTerm::free("x")), Error);
  CHECK_THROWS_AS(encode_term(PcaTerm::lam(PcaTerm::v(1))), Error);
}

TEST_CASE("evaluation computes the primitives") {
  std::uint64_t fuel = 100000;
  auto run = [&](PcaTerm t) { return eval_closed(t, fuel); };
  auto A = [](PcaTerm f, PcaTerm a) {
    return PcaTerm::app(std::move(f), std::move(a));
  };

  CHECK(run(A(PcaTerm::prim(PcaTerm::Suc), PcaTerm::num(4))) == Nat(5));
  PcaTerm p = A(A(PcaTerm::prim(PcaTerm::MkPair), PcaTerm::num(3)),
                PcaTerm::num(9));
  CHECK(run(p) == pair(3, 9));
  CHECK(run(A(PcaTerm::prim(PcaTerm::Proj0), PcaTerm::num(pair(3, 9)))) ==
        Nat(3));
  CHECK(run(A(PcaTerm::prim(PcaTerm::Proj1), PcaTerm::num(pair(3, 9)))) ==
        Nat(9));

  // rec z s n: addition of 4 via four successor steps.
  PcaTerm s_step = PcaTerm::lam(PcaTerm::lam(
      A(PcaTerm::prim(PcaTerm::Suc), PcaTerm::v(0))));
  PcaTerm add4 = A(A(A(PcaTerm::prim(PcaTerm::Rec), PcaTerm::num(10)), s_step),
                   PcaTerm::num(4));
  CHECK(run(add4) == Nat(14));

  // rec exposes the step index: sum of 0..4.
  PcaTerm sum_step = PcaTerm::lam(PcaTerm::lam(A(
      A(A(PcaTerm::prim(PcaTerm::Rec), PcaTerm::v(0)), s_step), PcaTerm::v(1))));
  PcaTerm sum5 = A(A(A(PcaTerm::prim(PcaTerm::Rec), PcaTerm::num(0)), sum_step),
                   PcaTerm::num(5));
  CHECK(run(sum5) == Nat(0 + 1 + 2 + 3 + 4));

  // Table lookup walks the spine.
  PcaTerm tbl = PcaTerm::table(pair(11, pair(22, pair(33, 0))));
  CHECK(run(A(tbl, PcaTerm::num(0))) == Nat(11));
  CHECK(run(A(tbl, PcaTerm::num(1))) == Nat(22));
  CHECK(run(A(tbl, PcaTerm::num(2))) == Nat(33));
}

TEST_CASE("numerals act as the programs they code") {
  std::uint64_t fuel = 100000;
  PcaTerm id = PcaTerm::lam(PcaTerm::v(0));
  Nat id_code = encode_term(id);
  PcaTerm use = PcaTerm::app(PcaTerm::num(id_code), PcaTerm::num(7));
  CHECK(eval_closed(use, fuel) == Nat(7));
}

TEST_CASE("kleene application and its budgets") {
  PcaTerm swap = PcaTerm::lam(PcaTerm::lam(PcaTerm::app(
      PcaTerm::app(PcaTerm::prim(PcaTerm::MkPair), PcaTerm::v(0)),
      PcaTerm::v(1))));
  Nat e = encode_term(swap);
  auto r = kleene_apply(e, std::vector<Nat>{3, 4}, 10000);
  REQUIRE(r.has_value());
  CHECK(*r == pair(4, 3));

  // Divergence: (lam x (x x)) applied to itself never settles.
  PcaTerm self = PcaTerm::lam(PcaTerm::app(PcaTerm::v(0), PcaTerm::v(0)));
  Nat omega = encode_term(self);
  CHECK(!kleene_apply(omega, omega, 5000).has_value());

  // Fuel monotonicity: once decided, larger budgets agree.
  for (std::uint64_t f : {10, 100, 1000}) {
    auto small = kleene_apply(e, std::vector<Nat>{3, 4}, f);
    if (small) CHECK(*small == pair(4, 3));
  }

  // The shared-budget variant actually spends.
  std::uint64_t budget = 10000;
  auto rb = kleene_apply_budget(e, {5, 6}, budget);
  REQUIRE(rb.has_value());
  CHECK(*rb == pair(6, 5));
  CHECK(budget < 10000);
  CHECK(budget > 0);
}

TEST_CASE("junk codes diverge rather than crash") {
  // A code whose head position decodes to nothing.
  Nat junk = pair(4, pair(99, 0));
  CHECK(!decode_term(junk).has_value());
  CHECK(!kleene_apply(junk, 0, 1000).has_value());
}

TEST_CASE("free-variable plumbing") {
  PcaTerm body = PcaTerm::app(PcaTerm::prim(PcaTerm::Suc), PcaTerm::free("x"));
  CHECK(has_free_names(body));
  PcaTerm lam = lambda_encode("x", body);
  CHECK(!has_free_names(lam));
  std::uint64_t fuel = 1000;
  CHECK(eval_closed(PcaTerm::app(lam, PcaTerm::num(8)), fuel) == Nat(9));

  PcaTerm subbed = subst_free(body, "x", PcaTerm::num(1));
  CHECK(!has_free_names(subbed));
  fuel = 1000;
  CHECK(eval_closed(subbed, fuel) == Nat(2));
}

TEST_CASE("corecursive branch tables") {
  // Two elements (realizers 0 and 1) with one index each; the table sends
  // element 0 to element 1 and element 1 back to element 0.
  Nat inner0 = pair(Nat(1), Nat(0));  // j=0 -> u=1
  Nat inner1 = pair(Nat(0), Nat(0));  // j=0 -> u=0
  Nat spine = pair(inner0, pair(inner1, Nat(0)));

  PcaTerm b0 = PcaTerm::corec(spine, 0);
  Nat code0 = encode_term(b0);
  CHECK(decode_term(code0).has_value());
  CHECK(*decode_term(code0) == b0);

  // Applying the branch yields p(u, p(0, p(0, refocused table))).
  auto w = kleene_apply(code0, 0, 1000);
  REQUIRE(w.has_value());
  CHECK(proj0(*w) == 1);
  CHECK(proj0(proj1(*w)) == 0);
  Nat q1 = proj1(proj1(*w));
  CHECK(proj0(q1) == 0);
  Nat code1 = proj1(q1);
  CHECK(code1 == encode_term(PcaTerm::corec(spine, 1)));

  // One more unfolding step closes the two-cycle exactly.
  auto w1 = kleene_apply(code1, 0, 1000);
  REQUIRE(w1.has_value());
  CHECK(proj0(*w1) == 0);
  CHECK(proj1(proj1(proj1(*w1))) == code0);
}
