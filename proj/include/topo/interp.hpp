#ifndef TOPO_INTERP_HPP
#define TOPO_INTERP_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topo/codes.hpp"
#include "topo/deriv.hpp"
#include "topo/pca.hpp"

namespace topo {

/// Values for the free identifiers of a term, used to close it before
/// evaluation.
using Env = std::map<std::string, Nat>;

/// Compositional translation of a term into a program; free identifiers of
/// the term stay free in the program. Throws UnsupportedConstruct outside
/// the implemented fragment.
PcaTerm realize_term(const Term& t);

/// Closes the program with the environment and evaluates it. Returns
/// nothing when the program is genuinely stuck; throws the internal fuel
/// signal through the TriBool layer above.
std::optional<Nat> realize_value(const Term& t, const Env& env,
                                 std::uint64_t& fuel);

/// A pre-type as a definable subclass of the naturals: a fuelled membership
/// predicate plus, when the extension is finite and effectively listable,
/// its enumeration.
struct TypeDesc {
  std::function<TriBool(const Nat&)> contains;
  std::optional<std::vector<Nat>> enumeration;
};

TypeDesc realize_type(const Term& ty, const Env& env, StageMachine& sm,
                      std::uint64_t& fuel);

/// Validity of a checked judgement under the numeric interpretation, with
/// the context read as a conjunction of membership constraints on the
/// environment. Yes and No are sound; Unknown reports spent fuel.
TriBool check_judgement_realized(const Judgement& j, const Env& env,
                                 std::uint64_t fuel = 100000);

/// One line per checked judgement: `JUDGEMENT <text> => YES|NO|UNKNOWN(fuel=n)`.
std::string judgement_report_line(const Judgement& j, TriBool verdict);

struct CtReport {
  Nat extracted_index;  // e with {e}(x) = p0({f}(x))
  std::vector<std::pair<Nat, Nat>> graph;  // (x, {e}(x)) for x <= bound
  std::string text;
};

/// From a realizer f of a total relation, extracts the recursive-choice
/// index demanded by the formal Church's thesis and checks it against f and
/// the relation realizer on every x <= bound. Throws NotTotalWithinFuel
/// when f (or the extracted index) fails to converge on some sample.
CtReport ct_demo(const Nat& f_code, const Nat& r_code, std::uint64_t bound,
                 std::uint64_t fuel = 100000);

}  // namespace topo

#endif
