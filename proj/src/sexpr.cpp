#include "topo/sexpr.hpp"

#include <cctype>
#include <sstream>

#include "topo/core.hpp"

namespace topo::sx {

const std::string& Sexpr::head() const {
  static const std::string empty;
  if (is_atom || items.empty() || !items[0].is_atom) return empty;
  return items[0].atom;
}

bool Sexpr::operator==(const Sexpr& o) const {
  if (is_atom != o.is_atom) return false;
  if (is_atom) return atom == o.atom;
  if (items.size() != o.items.size()) return false;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (!(items[i] == o.items[i])) return false;
  return true;
}

std::string Sexpr::to_string() const {
  if (is_atom) return atom;
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ' ';
    os << items[i].to_string();
  }
  os << ')';
  return os.str();
}

namespace {

struct Reader {
  const std::string& s;
  std::size_t pos = 0;
  std::size_t line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + " col " +
                                           std::to_string(col) + ": " + msg);
  }

  void advance() {
    if (s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == ';') {  // comment to end of line
        while (pos < s.size() && s[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  Sexpr read() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      advance();
      Sexpr e;
      while (true) {
        skip_ws();
        if (pos >= s.size()) fail("unterminated list");
        if (s[pos] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    std::string atom;
    while (pos < s.size()) {
      char d = s[pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      atom.push_back(d);
      advance();
    }
    return Sexpr::sym(std::move(atom));
  }
};

}  // namespace

Sexpr parse(const std::string& text) {
  Reader r{text};
  Sexpr e = r.read();
  if (!r.done()) r.fail("trailing content after s-expression");
  return e;
}

std::vector<Sexpr> parse_many(const std::string& text) {
  Reader r{text};
  std::vector<Sexpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

}  // namespace topo::sx
