#ifndef TOPO_CORE_HPP
#define TOPO_CORE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace topo {

enum class ErrorKind {
  IndexOutOfRange,
  MissingCover,
  CarrierMismatch,
  OracleBoundExceeded,
  NotAnEquivalence,
  NotCovered,
  IllFormedProof,
  InvalidCertificate,
  PreconditionViolated,
  ParseError,
  UnknownRule,
  SchemaMismatch,
  ScopeError,
  UnsupportedConstruct,
  StarConditionFailed,
  FamConditionFailed,
  NotTotalWithinFuel,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

const char* error_kind_name(ErrorKind k);

/// Index into a finite carrier, or a raw natural in lazy mode.
using Element = std::uint64_t;

/// Finite characteristic set over a carrier {0, ..., carrier_size-1}.
class Subset {
 public:
  Subset() : n_(0) {}
  explicit Subset(std::uint32_t carrier_size)
      : n_(carrier_size), w_((carrier_size + 63) / 64, 0) {}
  Subset(std::uint32_t carrier_size, std::initializer_list<Element> members)
      : Subset(carrier_size) {
    for (Element e : members) add(e);
  }
  static Subset full(std::uint32_t carrier_size) {
    Subset s(carrier_size);
    for (std::uint32_t i = 0; i < carrier_size; ++i) s.add(i);
    return s;
  }
  static Subset from_members(std::uint32_t carrier_size, const std::vector<Element>& ms) {
    Subset s(carrier_size);
    for (Element e : ms) s.add(e);
    return s;
  }

  std::uint32_t carrier_size() const { return n_; }

  bool contains(Element e) const {
    return e < n_ && (w_[e >> 6] >> (e & 63)) & 1;
  }
  void add(Element e) {
    if (e >= n_) throw Error(ErrorKind::IndexOutOfRange, "subset member out of carrier");
    w_[e >> 6] |= std::uint64_t(1) << (e & 63);
  }
  void remove(Element e) {
    if (e < n_) w_[e >> 6] &= ~(std::uint64_t(1) << (e & 63));
  }

  std::uint32_t count() const;
  bool empty() const;
  std::vector<Element> members() const;

  bool operator==(const Subset& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Subset& o) const { return !(*this == o); }
  bool operator<(const Subset& o) const {  // for use as map key
    if (n_ != o.n_) return n_ < o.n_;
    return w_ < o.w_;
  }

  Subset unite(const Subset& o) const;
  Subset intersect(const Subset& o) const;
  Subset complement() const;
  bool subset_of(const Subset& o) const;

  /// Renders as space-separated member list, e.g. "0 2".
  std::string to_string() const;

 private:
  void check_same(const Subset& o) const {
    if (n_ != o.n_) throw Error(ErrorKind::CarrierMismatch, "carrier sizes differ");
  }
  std::uint32_t n_;
  std::vector<std::uint64_t> w_;
};

/// Generation data (A, I, C): carrier A = {0..carrier_size-1}, index sets
/// I(x) = {0..index_count(x)-1}, covering subsets C(x,j).
class AxiomSet {
 public:
  AxiomSet() : n_(0) {}
  explicit AxiomSet(std::uint32_t carrier_size)
      : n_(carrier_size), index_counts_(carrier_size, 0) {}

  std::uint32_t carrier_size() const { return n_; }
  std::uint32_t index_count(Element x) const { return index_counts_.at(x); }

  const Subset& cover(Element x, std::uint32_t j) const {
    return covers_.at(x).at(j);
  }

  /// Appends index j = index_count(x) with the given cover.
  void add_cover(Element x, const Subset& c) {
    if (x >= n_) throw Error(ErrorKind::IndexOutOfRange, "element out of carrier");
    if (c.carrier_size() != n_)
      throw Error(ErrorKind::CarrierMismatch, "cover carrier differs from base");
    if (covers_.size() < n_) covers_.resize(n_);
    covers_[x].push_back(c);
    index_counts_[x] = static_cast<std::uint32_t>(covers_[x].size());
  }

  bool operator==(const AxiomSet& o) const {
    return n_ == o.n_ && index_counts_ == o.index_counts_ && covers_ == o.covers_;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> index_counts_;
  std::vector<std::vector<Subset>> covers_;
};

/// Checks the axiom-set invariants; returns the input unchanged on success.
AxiomSet validate_axiom_set(const AxiomSet& raw);

/// The canonical worked fixture: carrier {0,1,2}; I(0)={0}, C(0,0)={1,2};
/// I(1)=empty; I(2)={0}, C(2,0)=empty.
AxiomSet ex1();

/// Countable-base axiom data given by total deterministic generators.
struct LazyAxiomSet {
  std::function<std::vector<std::uint32_t>(Element)> index_gen;  // returns list of indices
  std::function<std::vector<Element>(Element, std::uint32_t)> cover_gen;
  std::uint64_t fuel = 0;  // default exploration budget
};

/// Wraps a finite axiom-set as generators.
LazyAxiomSet lazy_of_finite(const AxiomSet& ax);

/// Base with a decidable equivalence relation, validated at construction.
class Setoid {
 public:
  Setoid(std::uint32_t carrier_size, std::vector<std::pair<Element, Element>> pairs);
  static Setoid identity(std::uint32_t carrier_size);

  std::uint32_t carrier_size() const { return n_; }
  bool related(Element a, Element b) const {
    return a < n_ && b < n_ && rel_[a * n_ + b];
  }

 private:
  std::uint32_t n_;
  std::vector<char> rel_;
};

struct TriBool {
  enum Value { Yes, No, Unknown } value = Unknown;
  std::uint64_t fuel_spent = 0;  // meaningful only for Unknown

  static TriBool yes() { return {Yes, 0}; }
  static TriBool no() { return {No, 0}; }
  static TriBool unknown(std::uint64_t spent) { return {Unknown, spent}; }
  bool is_yes() const { return value == Yes; }
  bool is_no() const { return value == No; }
  bool is_unknown() const { return value == Unknown; }
};

// Subset algebra entry points.
inline Subset subset_union(const Subset& a, const Subset& b) { return a.unite(b); }
inline Subset subset_intersect(const Subset& a, const Subset& b) { return a.intersect(b); }
inline Subset subset_complement(const Subset& a) { return a.complement(); }
inline bool subset_subseteq(const Subset& a, const Subset& b) { return a.subset_of(b); }
inline bool subset_member(Element e, const Subset& a) { return a.contains(e); }

constexpr std::uint32_t kDefaultOracleBound = 12;

/// All 2^n subsets of {0..n-1} in mask order.
std::vector<Subset> enumerate_subsets(std::uint32_t carrier_size,
                                      std::uint32_t oracle_bound = kDefaultOracleBound);

// Text formats (line-oriented; see README).
AxiomSet parse_axiom_set(const std::string& text);
std::string print_axiom_set(const AxiomSet& ax);
Setoid parse_setoid(const std::string& text);

/// Parses a space-separated member list against a carrier, e.g. "0 2".
Subset parse_subset(std::uint32_t carrier_size, const std::string& text);

}  // namespace topo

#endif
