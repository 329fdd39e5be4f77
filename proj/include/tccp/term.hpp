// ===== tccp/term.hpp — Herbrand terms, equality tokens, variable renamings =====
//
// The constraint system of the checker is equalities over finite trees
// (rational-tree unification is deliberately excluded: the occurs check is
// always on).  Terms are immutable and shared; every operation that "changes"
// a term builds a new one.
//
//   Term      — Var | Atom | Cons (list cell [h|t]) | Compound | Anonymous
//   Token     — a single equality  lhs = rhs
//   TokenConj — a conjunction of tokens
//   Renaming  — a bijective variable-to-variable map
//
// Anonymous only exists between lexing and the parser's normalization pass,
// which replaces each occurrence by a fresh variable; no other component ever
// sees it.

#ifndef TCCP_TERM_HPP
#define TCCP_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tccp {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : std::uint8_t { Var, Atom, Cons, Compound, Anonymous };

  Kind kind;
  std::string name;           // Var: variable name; Atom: constant; Compound: functor
  std::vector<TermPtr> args;  // Cons: {head, tail}; Compound: arguments

  Term(Kind k, std::string n, std::vector<TermPtr> a)
      : kind(k), name(std::move(n)), args(std::move(a)) {}
};

// ── Constructors ────────────────────────────────────────────────────────────

TermPtr mk_var(const std::string& name);
TermPtr mk_atom(const std::string& name);
TermPtr mk_cons(const TermPtr& head, const TermPtr& tail);
TermPtr mk_compound(const std::string& functor, std::vector<TermPtr> args);
TermPtr mk_anon();
TermPtr nil();  // the empty-list constant, printed []

bool is_var(const TermPtr& t);
bool is_nil(const TermPtr& t);

// ── Structural operations ───────────────────────────────────────────────────

bool equal(const TermPtr& a, const TermPtr& b);

/// Appends the variables of t to out in pre-order of first occurrence.
void vars_of(const TermPtr& t, std::vector<std::string>& out);
std::vector<std::string> vars_of(const TermPtr& t);
bool mentions(const TermPtr& t, const std::string& var);

using Subst = std::map<std::string, TermPtr>;

/// Simultaneous substitution; variables outside the map are unchanged.
TermPtr substitute(const TermPtr& t, const Subst& s);

std::string to_string(const TermPtr& t);

// ── Tokens ──────────────────────────────────────────────────────────────────

struct Token {
  TermPtr lhs;
  TermPtr rhs;
};

using TokenConj = std::vector<Token>;

Token mk_token(const TermPtr& lhs, const TermPtr& rhs);
bool equal(const Token& a, const Token& b);
void vars_of(const Token& t, std::vector<std::string>& out);
void vars_of(const TokenConj& c, std::vector<std::string>& out);
std::vector<std::string> vars_of(const TokenConj& c);
Token substitute(const Token& t, const Subst& s);
TokenConj substitute(const TokenConj& c, const Subst& s);
std::string to_string(const Token& t);
std::string to_string(const TokenConj& c);

// ── Renamings ───────────────────────────────────────────────────────────────

/// A bijective map between variable names.  `add` refuses pairs that would
/// break injectivity or functionality, so a Renaming is bijective on its
/// domain by construction.
class Renaming {
 public:
  /// Returns false (and leaves the map unchanged) if `from` is already mapped
  /// to a different target or `to` is already the target of a different
  /// source.
  bool add(const std::string& from, const std::string& to);

  bool maps(const std::string& from) const;
  bool targets(const std::string& to) const;

  /// The image of a variable; variables outside the domain map to themselves.
  const std::string& apply(const std::string& var) const;
  TermPtr apply(const TermPtr& t) const;
  Token apply(const Token& t) const;
  TokenConj apply(const TokenConj& c) const;

  Renaming inverse() const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  const std::map<std::string, std::string>& pairs() const { return pairs_; }

  /// True when every pair is x -> x.
  bool is_identity() const;

 private:
  std::map<std::string, std::string> pairs_;
  std::map<std::string, std::string> reverse_;
};

std::string to_string(const Renaming& r);

/// A growable injective variable matcher with backtracking, the work-horse
/// behind every up-to-renaming comparison (state folding, trace equivalence,
/// node memoization).  `term` matches two terms structurally, pairing up the
/// variables it meets; `mark`/`undo` rewind failed branches of a search.
class VarMatcher {
 public:
  bool add(const std::string& a, const std::string& b);
  bool term(const TermPtr& a, const TermPtr& b);
  bool token(const Token& a, const Token& b);

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  const std::map<std::string, std::string>& mapping() const { return fwd_; }
  Renaming renaming() const;

 private:
  std::map<std::string, std::string> fwd_;
  std::map<std::string, std::string> rev_;
  std::vector<std::string> trail_;
};

// ── Fresh variables ─────────────────────────────────────────────────────────

/// Generates names like D'1, D'2, ... — the prime cannot occur in source
/// programs, so runtime-fresh variables never collide with user variables.
class FreshVarGen {
 public:
  std::string fresh(const std::string& base);

 private:
  std::uint64_t counter_ = 0;
};

/// Strips a runtime freshness suffix: base_name("D'3") == "D".
std::string base_name(const std::string& var);

}  // namespace tccp

#endif  // TCCP_TERM_HPP
