#ifndef TOPO_CODES_HPP
#define TOPO_CODES_HPP

#include <map>
#include <optional>
#include <vector>

#include "topo/core.hpp"
#include "topo/pca.hpp"

namespace topo {

/// Tag/payload view of a universe code. The tag is the first pairing
/// component; payload arity is fixed per tag (see classify_code).
struct ClassifiedCode {
  enum Tag {
    NFam = 0,  // n_0, n_1 and the naturals code (payload 0, 1 or 2)
    SigmaT = 1,
    PiT = 2,
    PlusT = 3,
    ListT = 4,
    IdT = 5,
    CovT = 6,  // payload (a, v, s, i, c)
    RfT = 7,   // payload (z, r)
    TrT = 8,   // payload (z, j, r)
    PosT = 9,  // payload (a, v, s, i, c)
    UT = 10,   // payload (a, b)
    Junk = 99,
  } tag = Junk;
  std::vector<Nat> payload;
};

ClassifiedCode classify_code(const Nat& n);

// Smart constructors for the tagged codes.
Nat code_nat(unsigned j);  // j = 0, 1, 2
Nat code_sigma(const Nat& k, const Nat& e);
Nat code_pi(const Nat& k, const Nat& e);
Nat code_plus(const Nat& n, const Nat& m);
Nat code_list(const Nat& n);
Nat code_id(const Nat& n, const Nat& m, const Nat& k);
Nat code_cov(const Nat& a, const Nat& v, const Nat& s, const Nat& i, const Nat& c);
Nat code_rf(const Nat& z, const Nat& r);
Nat code_tr(const Nat& z, const Nat& j, const Nat& r);
Nat code_pos(const Nat& a, const Nat& v, const Nat& s, const Nat& i, const Nat& c);
Nat code_u(const Nat& a, const Nat& b);

/// Human-readable tag tree (decimal payloads, recursively classified).
std::string print_code(const Nat& n, unsigned depth = 6);

/// Finite-stage variant of the stage-indexed universe relations Set / ε.
///
/// Stages are naturals; existential stage quantifiers collapse to the
/// predecessor stage, which the monotonicity of the construction justifies
/// for every code built at a finite stage. Quantifiers over members of a
/// code are exact when the code is finitely enumerable and sampled
/// (reporting Unknown rather than Yes) otherwise. All queries draw on one
/// shared fuel budget; exhaustion yields Unknown.
class StageMachine {
 public:
  explicit StageMachine(unsigned max_stage = 24, std::uint64_t fuel = 100000);

  TriBool is_set(const Nat& m) { return is_set_at(max_stage_, m); }
  TriBool mem(const Nat& k, const Nat& m) { return mem_at(max_stage_, k, m); }
  TriBool is_set_at(unsigned stage, const Nat& m);
  TriBool mem_at(unsigned stage, const Nat& k, const Nat& m);

  /// All members of a finitely-inhabited code, or nothing when the code's
  /// extension is infinite or not effectively enumerable.
  std::optional<std::vector<Nat>> enumerate_members(unsigned stage, const Nat& m);

  /// Membership of p(a,q) in the least fixpoint attached to a cover code.
  /// Throws StarConditionFailed when the payload is not a valid cover code.
  TriBool compute_V(unsigned stage, const std::vector<Nat>& payload, const Nat& q);
  /// Membership of p(a,q) in the greatest fixpoint attached to a positivity
  /// code. Throws StarConditionFailed on an invalid payload.
  TriBool compute_W(unsigned stage, const std::vector<Nat>& payload, const Nat& q);
  /// Membership in the inductive universe attached to a u-code. Throws
  /// FamConditionFailed when the payload family condition does not hold.
  TriBool compute_Z(unsigned stage, const std::vector<Nat>& payload, const Nat& d);

  std::uint64_t fuel_left() const { return fuel_; }
  unsigned max_stage() const { return max_stage_; }

 private:
  struct FuelOut {};  // internal unwinding, converted to Unknown at the API

  void spend(std::uint64_t cost = 1);
  bool set_b(unsigned stage, const Nat& m);
  bool mem_b(unsigned stage, const Nat& k, const Nat& m);
  bool fam_b(unsigned stage, const Nat& e, const Nat& k);
  bool star_b(unsigned stage, const std::vector<Nat>& payload);
  Nat apply(const Nat& e, const std::vector<Nat>& args);
  bool v_member(unsigned stage, const std::vector<Nat>& payload, const Nat& elem,
                const Nat& q, std::vector<std::pair<Nat, Nat>>& path);
  bool w_member(unsigned stage, const std::vector<Nat>& payload, const Nat& elem,
                const Nat& q, std::vector<std::pair<Nat, Nat>>& visited);
  bool z_member(unsigned stage, const Nat& d, std::vector<Nat>& path);
  std::vector<Nat> members_b(unsigned stage, const Nat& m);
  struct Indeterminate {};  // sampled quantifier could not be decided

  unsigned max_stage_;
  std::uint64_t fuel_;
  std::uint64_t fuel_start_;
  unsigned sample_bound_ = 64;  // probe range for quantifiers over the naturals
  std::map<std::pair<unsigned, Nat>, bool> set_memo_;
  std::map<std::tuple<unsigned, Nat, Nat>, bool> mem_memo_;
};

/// Codes for a finite axiom-set: the carrier as a sum tree of n_1, the
/// index and cover families as lambda codes returning sum trees. Produces
/// the payload (a, v, s, i, c) for a given focus element and subset.
struct EncodedAxiomSet {
  Nat base;                     // carrier code; element k realized by code k
  Nat index_fam;                // i with {i}(x) = code of I(x)
  Nat cover_fam;                // c with {c}(x,y) = code of C(x,y)
  std::vector<Nat> elem_codes;  // realizer of carrier element k

  std::vector<Nat> cover_payload(Element a, const Subset& v) const;
  Nat subset_code(const Subset& v) const;  // v as a characteristic family
};

EncodedAxiomSet encode_axiom_set(const AxiomSet& ax);

/// Code of the finite set {0, ..., n-1} built as a sum tree of n_1 (n = 0
/// gives n_0, n = 1 gives n_1). Element k's realizer is produced alongside.
Nat finite_set_code(std::uint32_t n, std::vector<Nat>* realizers = nullptr);

}  // namespace topo

#endif
