// ===== tests/test_logic.cpp — temporal formula tests =====
//
// The closure implementation is checked two ways: against an explicit
// 17-formula expected set for the reference property (derived by hand from
// the closure rules), and against an in-file rule-applier that closes a seed
// set under the defining rules bidirectionally until fixpoint — the real
// closure must be a subset of that fixpoint and a superset of the listing.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "tccp/logic.hpp"
#include "tccp/parser.hpp"
#include "tccp/store.hpp"
#include "test_util.hpp"

using namespace tccp;
using tccp_test::corpus_property;

namespace {

TokenConj conj(const std::string& text) { return parse_conj(text); }

Store store_of(const std::string& text) { return lub(Store{}, conj(text)); }

bool member_of(const std::vector<FormulaPtr>& set, const FormulaPtr& f) {
  for (const auto& g : set)
    if (formula_equal(g, f)) return true;
  return false;
}

/// Independent oracle: the least set containing seed and closed under the
/// defining rules, applied bidirectionally — negation completion, part
/// extraction for conjunctions, quantifier stripping, next unwrapping, until
/// unfolding, and the pushed-in next of a negated next.
std::vector<FormulaPtr> rule_fixpoint(const FormulaPtr& seed) {
  std::vector<FormulaPtr> set;
  auto add = [&set](const FormulaPtr& f) {
    if (member_of(set, f)) return false;
    set.push_back(f);
    return true;
  };
  add(seed);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      FormulaPtr f = set[i];
      grew |= add(f_not(f));
      switch (f->kind) {
        case Formula::Kind::Not:
          grew |= add(f->a);
          break;
        case Formula::Kind::And:
          grew |= add(f->a);
          grew |= add(f->b);
          break;
        case Formula::Kind::Exists:
          grew |= add(f->a);
          break;
        case Formula::Kind::Next:
          grew |= add(f->a);
          break;
        case Formula::Kind::Until:
          grew |= add(f->a);
          grew |= add(f->b);
          grew |= add(f_next(f));
          break;
        default:
          break;
      }
      if (f->kind == Formula::Kind::Not && f->a->kind == Formula::Kind::Next)
        grew |= add(f_next(f_not(f->a->a)));
    }
  }
  return set;
}

/// The reference property's pieces, rebuilt from fragments.
struct ReferenceFormula {
  FormulaPtr no = parse_formula("Error=[no|E]");
  FormulaPtr yes = parse_formula("Error=[yes|E]");
  FormulaPtr off = parse_formula("Button=[off|B]");
  FormulaPtr yesoff = f_and(yes, off);
  FormulaPtr body = f_and(f_not(no), f_not(yesoff));
  FormulaPtr chi = f_until(f_true(), body);
};

}  // namespace

// ── Parsing and normalization ───────────────────────────────────────────────

TEST_CASE("negating the reference property gives the until normal form") {
  ReferenceFormula r;
  FormulaPtr property = corpus_property("p1.prop");
  CHECK(formula_equal(property, f_not(r.chi)));
  CHECK(formula_equal(f_not(property), r.chi));
}

TEST_CASE("explicit quantification matches per-atom closure") {
  FormulaPtr explicit_form = corpus_property("p1.prop");
  FormulaPtr auto_closed = parse_formula(
      "always ( Error=[no|E] \\/ (Error=[yes|E] /\\ Button=[off|B]) )");
  CHECK(formula_equal(explicit_form, auto_closed));
}

TEST_CASE("derived operators expand to the kernel") {
  CHECK(formula_equal(parse_formula("always true"),
                      f_not(f_until(f_true(), f_false()))));
  CHECK(formula_equal(parse_formula("eventually X=a"),
                      f_until(f_true(), parse_formula("X=a"))));
}

TEST_CASE("quantifiers are distributed and fused onto atoms") {
  // Shared-variable conjuncts fuse into one quantified multi-token atom.
  CHECK(is_atom_formula(parse_formula("exists X,Y (X=f(Y) /\\ Y=a)")));
  // Unrelated conjuncts keep the boolean structure.
  FormulaPtr split = parse_formula("exists X,Y (X=a /\\ Y=b)");
  REQUIRE(split->kind == Formula::Kind::And);
  CHECK(is_atom_formula(split->a));
  CHECK(is_atom_formula(split->b));
  // A quantifier over a temporal operator has no atomic normal form.
  CHECK_THROWS_AS(parse_formula("exists X (eventually X=a)"),
                  FormulaParseError);
  CHECK_THROWS_AS(parse_formula("always (("), FormulaParseError);
}

// ── Closure ─────────────────────────────────────────────────────────────────

TEST_CASE("closure of the negated reference property has the 17 members") {
  ReferenceFormula r;
  std::vector<FormulaPtr> expected = {
      r.chi,
      f_true(),
      f_false(),
      r.body,
      f_not(r.no),
      f_not(r.yesoff),
      f_not(r.body),
      r.no,
      r.yesoff,
      r.yes,
      r.off,
      f_not(r.yes),
      f_not(r.off),
      f_next(r.chi),
      f_not(f_next(r.chi)),
      f_next(f_not(r.chi)),
      f_not(r.chi),
  };
  ClosureSet cl = closure(r.chi);
  CHECK(cl.size() == expected.size());
  for (const auto& f : expected)
    CHECK_MESSAGE(cl.contains(f), "missing ", to_string(f));
  for (const auto& f : cl.members)
    CHECK_MESSAGE(member_of(expected, f), "unexpected ", to_string(f));

  // Index structure: three atoms, two nexts, one until, seed first.
  CHECK(cl.atoms.size() == 3);
  CHECK(cl.nexts.size() == 2);
  CHECK(cl.untils.size() == 1);
  CHECK(cl.index_of(r.chi) == 0);
}

TEST_CASE("the closure stays within the rule fixpoint and the size bound") {
  std::vector<std::string> properties = {
      "p1.prop", "error_always_yes.prop", "always_true.prop",
      "eventually_close.prop", "eventually_a.prop"};
  for (const auto& name : properties) {
    FormulaPtr negated = f_not(corpus_property(name));
    ClosureSet cl = closure(negated);
    auto fix = rule_fixpoint(negated);
    for (const auto& f : cl.members)
      CHECK_MESSAGE(member_of(fix, f), name, ": ", to_string(f),
                    " falls outside the rule fixpoint");
    CHECK_MESSAGE(cl.size() <= 4 * op_count(negated) + 2, name,
                  ": closure size ", cl.size(), " exceeds the bound for ",
                  op_count(negated), " operators");
  }
}

TEST_CASE("closure of small formulas") {
  FormulaPtr c = parse_formula("X=a");
  ClosureSet atom_cl = closure(c);
  CHECK(atom_cl.size() == 2);
  CHECK(atom_cl.contains(c));
  CHECK(atom_cl.contains(f_not(c)));

  ClosureSet next_cl = closure(f_next(c));
  CHECK(next_cl.size() == 5);
  CHECK(next_cl.contains(f_next(c)));
  CHECK(next_cl.contains(c));
  CHECK(next_cl.contains(f_not(f_next(c))));
  CHECK(next_cl.contains(f_not(c)));
  CHECK(next_cl.contains(f_next(f_not(c))));
}

// ── Atom evaluation ─────────────────────────────────────────────────────────

TEST_CASE("a quantified atom is supported through anchors and patterns") {
  Store yes = store_of("Error=[yes|E]");
  CHECK(atom_holds(yes, parse_formula("Error=[yes|E2]")));
  CHECK_FALSE(atom_holds(store_of("Error=[no|E]"),
                         parse_formula("Error=[yes|E2]")));
  // An anchor variable may stand for any store variable.
  CHECK(atom_holds(store_of("X=a"), parse_formula("Y=a")));
  CHECK_FALSE(atom_holds(store_of("X=b"), parse_formula("Y=a")));
  // The inconsistent store supports everything.
  Store clash = lub(store_of("X=a"), conj("X=b"));
  REQUIRE(clash.is_aleph());
  CHECK(atom_holds(clash, parse_formula("Q=z")));
}

TEST_CASE("an unquantified atom is checked literally") {
  CHECK(atom_holds(store_of("X=a"), f_atom(conj("X=a"))));
  CHECK_FALSE(atom_holds(store_of("Y=a"), f_atom(conj("X=a"))));
}

// ── Finite-prefix satisfaction ──────────────────────────────────────────────

TEST_CASE("holds evaluates formulas over finite store sequences") {
  FormulaPtr yes = parse_formula("Error=[yes|E]");
  std::vector<Store> seq = {Store{}, store_of("Error=[yes|E]")};

  CHECK_FALSE(holds(seq, yes, 0));
  CHECK(holds(seq, yes, 1));
  CHECK(holds(seq, f_next(yes), 0));

  // Monotone sequences keep supported atoms supported.
  std::vector<Store> grow = {store_of("X=a"), store_of("X=a /\\ Y=b")};
  FormulaPtr xa = parse_formula("X=a");
  CHECK(holds(grow, xa, 0));
  CHECK(holds(grow, xa, 1));

  // An until needs its witness inside the prefix.
  std::vector<Store> late = {Store{}, Store{}, store_of("Z=c")};
  CHECK(holds(late, f_until(f_true(), parse_formula("Z=c")), 0));
  CHECK_FALSE(holds(late, f_until(f_true(), parse_formula("W=d")), 0));
  CHECK_FALSE(holds(late, f_until(f_true(), f_false()), 0));

  // Next beyond the end of the prefix is false.
  std::vector<Store> single = {Store{}};
  CHECK_FALSE(holds(single, f_next(f_true()), 0));
  CHECK(holds(single, f_not(f_next(f_true())), 0));
}
