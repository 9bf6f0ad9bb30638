#ifndef TOPO_PCA_HPP
#define TOPO_PCA_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topo/core.hpp"

namespace topo {

/// Arbitrary-precision natural; nested pairings blow past 64 bits quickly.
using Nat = boost::multiprecision::cpp_int;

// Cantor pairing p(n,m) = (n+m)(n+m+1)/2 + m and its inverses.
Nat pair(const Nat& n, const Nat& m);
Nat proj0(const Nat& k);
Nat proj1(const Nat& k);

// Right-growing tuples: p(a,b,c) = p(p(a,b),c).
Nat tuple_of(const std::vector<Nat>& xs);
std::vector<Nat> untuple(const Nat& k, std::size_t n);

// Finite-list coding: 0 is nil, k+1 encodes p(head, tail-code).
Nat list_nil();
Nat list_cons(const Nat& head, const Nat& tail);
Nat list_len(const Nat& code);
Nat list_at(const Nat& code, const Nat& index);  // 0 when out of range
Nat list_of(const std::vector<Nat>& xs);

/// A program of the untyped calculus underlying the Kleene application.
/// Bound variables are de Bruijn indices; Free names survive until they are
/// either lambda-bound or substituted away, and make a term non-encodable.
struct PcaTerm {
  enum Kind {
    Var,     // de Bruijn index
    Free,    // named free variable
    Lam,     // one body child
    App,     // two children
    Lit,     // numeral
    Suc,     // successor primitive
    MkPair,  // binary pairing primitive
    Proj0,
    Proj1,
    Rec,  // primitive recursion: rec z s 0 = z; rec z s (n+1) = s n (rec z s n)
    Table,  // finite lookup table; the pair-spine payload lives in `lit`
    Corec,  // corecursive branch table; payload p(spine, focus) in `lit`
  } kind = Lit;
  std::uint32_t var = 0;
  std::string name;
  Nat lit = 0;
  std::vector<PcaTerm> kids;

  static PcaTerm v(std::uint32_t i);
  static PcaTerm free(std::string n);
  static PcaTerm lam(PcaTerm body);
  static PcaTerm app(PcaTerm f, PcaTerm a);
  static PcaTerm num(Nat n);
  static PcaTerm prim(Kind k);
  /// Table over a right-nested pair spine p(v0, p(v1, ...)); applying it to
  /// k walks k tails and projects the head. Keeps the payload shallow in the
  /// Goedel numbering, so nested finite families stay small.
  static PcaTerm table(Nat spine);
  /// Corecursive branch table over a two-level spine z -> j -> u. Applied to
  /// an index realizer j it looks up u under the current focus z and returns
  /// p(u, p(0, p(0, b))) where b is the same table refocused on u. This
  /// gives small fixed points of the branch equations a positivity
  /// certificate has to satisfy; a lambda-built fixed point is exponentially
  /// larger in the numbering.
  static PcaTerm corec(Nat spine, Nat focus);

  bool operator==(const PcaTerm& o) const;
  std::string to_string() const;
};

/// Gödel code of a closed term; throws PreconditionViolated on free names
/// or unbound indices.
Nat encode_term(const PcaTerm& t);
/// Inverse; returns nothing for junk codes.
std::optional<PcaTerm> decode_term(const Nat& code);

/// Binds every occurrence of the named free variable, producing Lam(body).
PcaTerm lambda_encode(const std::string& name, const PcaTerm& body);

/// Replaces a named free variable; the replacement must not carry free
/// de Bruijn indices of its own.
PcaTerm subst_free(const PcaTerm& t, const std::string& name, const PcaTerm& rep);

bool has_free_names(const PcaTerm& t);

/// Fuelled call-by-value evaluation of a closed term to a numeral (lambdas
/// and partial primitives collapse to their codes). Returns nothing when the
/// fuel runs out or the term is junk-stuck.
std::optional<Nat> eval_closed(const PcaTerm& t, std::uint64_t& fuel);

/// Kleene application {e}(n); junk codes diverge.
std::optional<Nat> kleene_apply(const Nat& e, const Nat& n, std::uint64_t fuel);
std::optional<Nat> kleene_apply(const Nat& e, const std::vector<Nat>& args,
                                std::uint64_t fuel);
/// Shared-budget variant used by the stage machine.
std::optional<Nat> kleene_apply_budget(const Nat& e, const std::vector<Nat>& args,
                                       std::uint64_t& fuel);

}  // namespace topo

#endif
