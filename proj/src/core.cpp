#include "topo/core.hpp"

#include <bit>
#include <sstream>

namespace topo {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MissingCover: return "MissingCover";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::OracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorKind::NotAnEquivalence: return "NotAnEquivalence";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::IllFormedProof: return "IllFormedProof";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownRule: return "UnknownRule";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ScopeError: return "ScopeError";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::StarConditionFailed: return "StarConditionFailed";
    case ErrorKind::FamConditionFailed: return "FamConditionFailed";
    case ErrorKind::NotTotalWithinFuel: return "NotTotalWithinFuel";
  }
  return "Error";
}

std::uint32_t Subset::count() const {
  std::uint32_t c = 0;
  for (auto w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

bool Subset::empty() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::vector<Element> Subset::members() const {
  std::vector<Element> out;
  for (std::uint32_t i = 0; i < n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

Subset Subset::unite(const Subset& o) const {
  check_same(o);
  Subset r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
  return r;
}

Subset Subset::intersect(const Subset& o) const {
  check_same(o);
  Subset r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
  return r;
}

Subset Subset::complement() const {
  Subset r(n_);
  for (std::uint32_t i = 0; i < n_; ++i)
    if (!contains(i)) r.add(i);
  return r;
}

bool Subset::subset_of(const Subset& o) const {
  check_same(o);
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

std::string Subset::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (Element e : members()) {
    if (!first) os << ' ';
    os << e;
    first = false;
  }
  return os.str();
}

AxiomSet validate_axiom_set(const AxiomSet& raw) {
  for (Element x = 0; x < raw.carrier_size(); ++x) {
    for (std::uint32_t j = 0; j < raw.index_count(x); ++j) {
      const Subset& c = raw.cover(x, j);
      if (c.carrier_size() != raw.carrier_size())
        throw Error(ErrorKind::CarrierMismatch, "cover carrier differs from base");
      // Subset construction already guarantees members < carrier; re-check to
      // keep the contract independent of the representation.
      for (Element m : c.members())
        if (m >= raw.carrier_size())
          throw Error(ErrorKind::IndexOutOfRange, "cover member out of carrier");
    }
  }
  return raw;
}

AxiomSet ex1() {
  AxiomSet ax(3);
  ax.add_cover(0, Subset(3, {1, 2}));
  ax.add_cover(2, Subset(3));
  return ax;
}

LazyAxiomSet lazy_of_finite(const AxiomSet& ax) {
  LazyAxiomSet lax;
  lax.index_gen = [ax](Element x) {
    std::vector<std::uint32_t> js;
    if (x < ax.carrier_size())
      for (std::uint32_t j = 0; j < ax.index_count(x); ++j) js.push_back(j);
    return js;
  };
  lax.cover_gen = [ax](Element x, std::uint32_t j) {
    return ax.cover(x, j).members();
  };
  return lax;
}

Setoid::Setoid(std::uint32_t carrier_size, std::vector<std::pair<Element, Element>> pairs)
    : n_(carrier_size), rel_(std::size_t(carrier_size) * carrier_size, 0) {
  for (auto [a, b] : pairs) {
    if (a >= n_ || b >= n_)
      throw Error(ErrorKind::IndexOutOfRange, "relation pair out of carrier");
    rel_[a * n_ + b] = 1;
  }
  // Must already be a full equivalence; no closure is taken.
  for (Element a = 0; a < n_; ++a)
    if (!rel_[a * n_ + a])
      throw Error(ErrorKind::NotAnEquivalence, "relation is not reflexive");
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b)
      if (rel_[a * n_ + b] && !rel_[b * n_ + a])
        throw Error(ErrorKind::NotAnEquivalence, "relation is not symmetric");
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b)
      if (rel_[a * n_ + b])
        for (Element c = 0; c < n_; ++c)
          if (rel_[b * n_ + c] && !rel_[a * n_ + c])
            throw Error(ErrorKind::NotAnEquivalence, "relation is not transitive");
}

Setoid Setoid::identity(std::uint32_t carrier_size) {
  std::vector<std::pair<Element, Element>> pairs;
  for (Element a = 0; a < carrier_size; ++a) pairs.emplace_back(a, a);
  return Setoid(carrier_size, std::move(pairs));
}

std::vector<Subset> enumerate_subsets(std::uint32_t carrier_size, std::uint32_t oracle_bound) {
  if (carrier_size > oracle_bound)
    throw Error(ErrorKind::OracleBoundExceeded, "carrier exceeds oracle bound");
  std::vector<Subset> out;
  out.reserve(std::size_t(1) << carrier_size);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << carrier_size); ++mask) {
    Subset s(carrier_size);
    for (std::uint32_t i = 0; i < carrier_size; ++i)
      if ((mask >> i) & 1) s.add(i);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

AxiomSet parse_axiom_set(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::uint32_t> base;
  // (x, j) -> members, collected then checked for contiguous indices
  std::map<std::pair<Element, std::uint32_t>, std::vector<Element>> covers;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "base") {
      std::uint32_t n;
      if (!(ls >> n)) parse_fail(lineno, "expected carrier size after 'base'");
      base = n;
    } else if (kw == "cover") {
      if (!base) parse_fail(lineno, "'cover' before 'base'");
      Element x;
      std::uint32_t j;
      std::string colon;
      if (!(ls >> x >> j >> colon) || colon != ":")
        parse_fail(lineno, "expected 'cover <x> <j> : <members...>'");
      std::vector<Element> ms;
      Element m;
      while (ls >> m) ms.push_back(m);
      if (!ls.eof()) parse_fail(lineno, "bad cover member");
      if (covers.count({x, j})) parse_fail(lineno, "duplicate cover");
      covers[{x, j}] = std::move(ms);
    } else {
      parse_fail(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!base) throw Error(ErrorKind::ParseError, "missing 'base' line");
  AxiomSet ax(*base);
  // Indices per element must form 0..k-1.
  std::map<Element, std::uint32_t> max_index;
  for (const auto& [key, _] : covers) {
    if (key.first >= *base)
      throw Error(ErrorKind::IndexOutOfRange, "cover element out of carrier");
    auto it = max_index.find(key.first);
    if (it == max_index.end() || key.second > it->second) max_index[key.first] = key.second;
  }
  for (auto [x, jmax] : max_index) {
    for (std::uint32_t j = 0; j <= jmax; ++j) {
      auto it = covers.find({x, j});
      if (it == covers.end())
        throw Error(ErrorKind::MissingCover,
                    "element " + std::to_string(x) + " missing index " + std::to_string(j));
      Subset c(*base);
      for (Element m : it->second) {
        if (m >= *base) throw Error(ErrorKind::IndexOutOfRange, "cover member out of carrier");
        c.add(m);
      }
      ax.add_cover(x, c);
    }
  }
  return validate_axiom_set(ax);
}

std::string print_axiom_set(const AxiomSet& ax) {
  std::ostringstream os;
  os << "base " << ax.carrier_size() << "\n";
  for (Element x = 0; x < ax.carrier_size(); ++x)
    for (std::uint32_t j = 0; j < ax.index_count(x); ++j) {
      os << "cover " << x << ' ' << j << " :";
      for (Element m : ax.cover(x, j).members()) os << ' ' << m;
      os << "\n";
    }
  return os.str();
}

Setoid parse_setoid(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::uint32_t> base;
  std::vector<std::pair<Element, Element>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "base") {
      std::uint32_t n;
      if (!(ls >> n)) parse_fail(lineno, "expected carrier size after 'base'");
      base = n;
    } else if (kw == "rel") {
      Element a, b;
      if (!(ls >> a >> b)) parse_fail(lineno, "expected 'rel <a> <b>'");
      pairs.emplace_back(a, b);
    } else {
      parse_fail(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!base) throw Error(ErrorKind::ParseError, "missing 'base' line");
  return Setoid(*base, std::move(pairs));
}

Subset parse_subset(std::uint32_t carrier_size, const std::string& text) {
  Subset s(carrier_size);
  std::istringstream in(text);
  Element m;
  while (in >> m) {
    if (m >= carrier_size)
      throw Error(ErrorKind::IndexOutOfRange, "subset member out of carrier");
    s.add(m);
  }
  if (!in.eof()) throw Error(ErrorKind::ParseError, "bad subset member");
  return s;
}

}  // namespace topo
