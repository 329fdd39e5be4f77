// ===== tccp/logic.hpp — Linear temporal formulas over constraint stores =====
//
// Formula kernel:  true | false | atom | ~phi | phi /\ psi | exists X phi
//                  | next phi | phi U psi
// Derived forms expanded by the parser:
//   always phi      = ~(true U ~phi)
//   eventually phi  = true U phi
//   phi \/ psi      = ~(~phi /\ ~psi)
//   phi -> psi      = ~phi \/ (phi /\ psi)
// Double negation and ~true/~false are simplified away at construction, so
// the De Morgan dual of a parsed formula is again a canonical AST.
//
// Atoms state that the store carries a conjunction of equalities.  Free
// variables of an atom are existentially closed at parse time, and exists
// distributes over the boolean structure until it sits directly on atoms
// (an exists whose body keeps a temporal operator is rejected).  An atom
// holds in a store when some instantiation of its quantified variables is
// supported by the store: a variable in anchor position must name a store
// variable, pattern-internal variables may match any subterm, and every
// instantiated token must then be entailed.  (Plain logical entailment of an
// existentially closed equality is trivially true — the satisfying term can
// always be invented — so support by the store is what the atom asserts.)

#ifndef TCCP_LOGIC_HPP
#define TCCP_LOGIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "tccp/store.hpp"
#include "tccp/term.hpp"

namespace tccp {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind : std::uint8_t { True, False, Atom, Not, And, Exists, Next, Until };

  Kind kind;
  TokenConj conj;            // Atom
  std::string var;           // Exists
  FormulaPtr a;              // Not/Exists/Next: operand; And/Until: left
  FormulaPtr b;              // And/Until: right
};

// Smart constructors (simplifying where the canonical form requires it).
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(const TokenConj& c);
FormulaPtr f_not(const FormulaPtr& f);   // ~~phi = phi, ~true = false, ~false = true
FormulaPtr f_and(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_or(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_exists(const std::string& var, const FormulaPtr& f);
FormulaPtr f_next(const FormulaPtr& f);
FormulaPtr f_until(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr f_always(const FormulaPtr& f);
FormulaPtr f_eventually(const FormulaPtr& f);

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
std::string to_string(const FormulaPtr& f);

struct FormulaParseError : std::runtime_error {
  FormulaParseError(const std::string& what, int line, int col)
      : std::runtime_error(what), line(line), col(col) {}
  int line;
  int col;
};

/// Parses, expands derived operators, existentially closes free atom
/// variables, and normalizes quantifiers onto atoms.
FormulaPtr parse_formula(const std::string& source);

// ── Atom evaluation ─────────────────────────────────────────────────────────

/// True when f is an Atom or a chain of Exists over an Atom.
bool is_atom_formula(const FormulaPtr& f);

/// Store-supported satisfaction of a (possibly quantified) atom; see the
/// header comment.  f must satisfy is_atom_formula.
bool atom_holds(const Store& store, const FormulaPtr& f);

// ── Closure ─────────────────────────────────────────────────────────────────

/// The closure of a formula: its subformula set (negations stripped, untils
/// unfolded to their next formula, quantified atoms kept atomic), completed
/// with the negation of every member (modulo ~~), plus the pushed-in form
/// next ~phi for every negated-next member ~next phi.
struct ClosureSet {
  std::vector<FormulaPtr> members;  // insertion (BFS) order, deduplicated
  std::vector<int> atoms;           // indices of atom members
  std::vector<int> nexts;           // indices of Next members
  std::vector<int> untils;          // indices of Until members

  int index_of(const FormulaPtr& f) const;  // -1 when absent
  bool contains(const FormulaPtr& f) const { return index_of(f) >= 0; }
  std::size_t size() const { return members.size(); }
};

ClosureSet closure(const FormulaPtr& f);

/// Number of operators and atoms of f (each atom counts once); the closure
/// size is bounded by 4 * op_count + 2.
std::size_t op_count(const FormulaPtr& f);

// ── Finite-prefix satisfaction ──────────────────────────────────────────────

/// phi holds of the finite store sequence seq at position pos: an atom is
/// checked at seq[pos]; next beyond the end is false; an until needs its
/// witness inside the prefix.
bool holds(const std::vector<Store>& seq, const FormulaPtr& f, std::size_t pos = 0);

}  // namespace tccp

#endif  // TCCP_LOGIC_HPP
