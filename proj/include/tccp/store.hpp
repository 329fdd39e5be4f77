// ===== tccp/store.hpp — Constraint stores over term equalities =====
//
// A Store is an element of the underlying constraint lattice:
//
//   positive  — a triangular solved form (each domain variable bound once,
//               no variable reachable from its own binding); the unification
//               that builds it runs with the occurs check on
//   blocked   — guard conjunctions recorded as "known not entailed" when an
//               else branch was taken; they never help entailment, they only
//               make a later join inconsistent if it would entail one of them
//   status    — Consistent, or Aleph (the inconsistent top element)
//
// Stores are immutable values: lub / hide / rename / block all return new
// stores.  Entailment is syntactic: d entails lhs=rhs iff applying d's
// substitution to both sides yields identical terms.  Over solved forms this
// is complete for the variable=term queries the checker generates.
//
// Canonical form: variables are ranked by first occurrence (token order,
// left side before right, pre-order within a term); variable-variable
// bindings are oriented younger-to-older.  Printing follows the rank order,
// which makes equal stores print identically; equivalence modulo renaming is
// decided by a backtracking bijective matcher instead of a global
// canonicalization.

#ifndef TCCP_STORE_HPP
#define TCCP_STORE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tccp/term.hpp"

namespace tccp {

class Store {
 public:
  /// The bottom element "true": empty substitution, nothing blocked.
  Store() = default;

  /// The inconsistent store.
  static Store aleph();

  bool is_aleph() const { return aleph_; }
  /// True for the lattice bottom (no information at all).
  bool is_true() const { return !aleph_ && bind_.empty() && blocked_.empty(); }

  /// Triangular solved form; empty when the store is Aleph.
  const std::map<std::string, TermPtr>& bindings() const { return bind_; }
  const std::vector<TokenConj>& blocked() const { return blocked_; }

  /// sigma(var): the bound term, or the variable itself.
  TermPtr value_of(const std::string& var) const;
  /// sigma(t), applied everywhere at once (sigma is idempotent).
  TermPtr apply(const TermPtr& t) const;
  TokenConj apply(const TokenConj& c) const;

  /// First-occurrence rank of a variable; unseen variables rank last.
  std::size_t rank(const std::string& var) const;
  /// All variables ever seen by this store, in rank order.
  const std::vector<std::string>& var_order() const { return order_; }

  /// The positive part as tokens, domain variables in rank order.
  TokenConj positive_tokens() const;

  /// Variables occurring in the positive part (domain and right-hand sides).
  std::vector<std::string> positive_vars() const;

 private:
  bool aleph_ = false;
  std::map<std::string, TermPtr> bind_;
  std::vector<std::string> order_;
  std::vector<TokenConj> blocked_;

  void note_var(const std::string& v);
  void note_vars(const TermPtr& t);
  bool unify(TermPtr a, TermPtr b);   // into bind_, occurs-checked
  bool normalize();                   // make bind_ idempotent
  bool entails_any_blocked() const;

  friend Store lub(const Store&, const TokenConj&);
  friend Store lub(const Store&, const Store&);
  friend Store block(const Store&, const TokenConj&);
  friend Store hide(const std::string&, const Store&);
  friend Store rename(const Store&, const Renaming&);
  friend Store strip_blocked(const Store&);
};

// ── Lattice operations ──────────────────────────────────────────────────────

/// d |- c, token by token, by syntactic identity under d's substitution.
bool entails(const Store& d, const Token& t);
bool entails(const Store& d, const TokenConj& c);

/// Least upper bound of d and the constraint c.  Result is Aleph when
/// unification fails or the join would entail a blocked conjunction.
Store lub(const Store& d, const TokenConj& c);
Store lub(const Store& a, const Store& b);

/// Existential quantification: the strongest x-free store entailed by d.
/// When x is in the substitution's domain its binding is dropped (idempotence
/// guarantees x occurs nowhere else); otherwise every binding mentioning x is
/// re-expressed through x-free consequences where possible and dropped where
/// not.  Blocked conjunctions are kept when every occurrence of x in their
/// resolved form re-expresses the same way, dropped otherwise.
Store hide(const std::string& x, const Store& d);
Store hide(const std::vector<std::string>& xs, const Store& d);

/// Applies a renaming to every variable of d.  Throws std::invalid_argument
/// if the induced map is not injective on d's variables (two distinct
/// variables of d would collapse).
Store rename(const Store& d, const Renaming& r);

/// Records c as known-not-entailed.  If d already entails c the result is
/// Aleph (the else branch contradicts the store).
Store block(const Store& d, const TokenConj& c);

/// Drops the blocked set (used when a store crosses an instant boundary:
/// "not entailed" is only meaningful within the instant that recorded it).
Store strip_blocked(const Store& d);

/// Mutual entailment modulo a bijective renaming of variables; returns the
/// renaming from a's variables to b's when one exists.  Blocked sets must
/// match as well (as multisets, under the same renaming).
std::optional<Renaming> equivalent(const Store& a, const Store& b);

std::string to_string(const Store& d);

}  // namespace tccp

#endif  // TCCP_STORE_HPP
