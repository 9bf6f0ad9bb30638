#ifndef TOPO_SEXPR_HPP
#define TOPO_SEXPR_HPP

#include <memory>
#include <string>
#include <vector>

namespace topo::sx {

/// A node is either an atom (symbol or numeral, stored as text) or a list.
struct Sexpr {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexpr> items;

  static Sexpr sym(std::string s) {
    Sexpr e;
    e.is_atom = true;
    e.atom = std::move(s);
    return e;
  }
  static Sexpr list(std::vector<Sexpr> xs) {
    Sexpr e;
    e.items = std::move(xs);
    return e;
  }

  bool is_list() const { return !is_atom; }
  std::size_t size() const { return items.size(); }
  const Sexpr& operator[](std::size_t i) const { return items[i]; }

  /// Head symbol of a list, or "" for atoms/empty lists.
  const std::string& head() const;

  bool operator==(const Sexpr& o) const;
  std::string to_string() const;
};

/// Parses a single s-expression; throws Error(ParseError) with position info.
Sexpr parse(const std::string& text);

/// Parses a whole file of s-expressions.
std::vector<Sexpr> parse_many(const std::string& text);

}  // namespace topo::sx

#endif
