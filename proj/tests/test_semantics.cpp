// ===== tests/test_semantics.cpp — the reference interpreter =====

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "tccp/parser.hpp"
#include "tccp/semantics.hpp"
#include "tccp/store.hpp"
#include "test_util.hpp"

using namespace tccp;
using tccp_test::corpus_program;

namespace {

Store store_of(const std::string& text) {
  return lub(Store{}, parse_conj(text));
}

}  // namespace

TEST_CASE("a tell takes one time unit") {
  Program p = parse_program("tell(X=a)");
  FreshVarGen fresh;
  Configuration c = initial_configuration(p, fresh);
  CHECK(c.store.is_true());
  std::vector<Configuration> next = step(c, p, fresh);
  REQUIRE(next.size() == 1);
  CHECK(entails(next[0].store, parse_conj("X=a")));
  CHECK(step(next[0], p, fresh).empty());  // nothing left to do
}

TEST_CASE("an unentailed ask cannot fire") {
  Program p = parse_program("ask(X=a) -> tell(Y=b)");
  FreshVarGen fresh;
  Configuration c = initial_configuration(p, fresh);
  CHECK(step(c, p, fresh).empty());
}

TEST_CASE("a conditional acts within the instant of its check") {
  Program p = parse_program("now X=a then tell(Y=b) else tell(Z=c)");
  FreshVarGen fresh;

  Configuration c = initial_configuration(p, fresh);
  c.store = store_of("X=a");
  std::vector<Configuration> then_side = step(c, p, fresh);
  REQUIRE(then_side.size() == 1);
  CHECK(entails(then_side[0].store, parse_conj("Y=b")));

  Configuration e = initial_configuration(p, fresh);
  std::vector<Configuration> else_side = step(e, p, fresh);
  REQUIRE(else_side.size() == 1);
  CHECK(entails(else_side[0].store, parse_conj("Z=c")));
  CHECK_FALSE(entails(else_side[0].store, parse_conj("Y=b")));
}

TEST_CASE("parallel tells land together") {
  Program p = parse_program("tell(X=a) || tell(Y=b)");
  FreshVarGen fresh;
  Configuration c = initial_configuration(p, fresh);
  std::vector<Configuration> next = step(c, p, fresh);
  REQUIRE(next.size() == 1);
  CHECK(entails(next[0].store, parse_conj("X=a, Y=b")));
}

TEST_CASE("clashing parallel tells have no successor") {
  Program p = corpus_program("c14_conflict.tccp");
  std::vector<Trace> traces = run_bounded(p, 3);
  REQUIRE(traces.size() == 1);
  for (const Store& s : traces[0]) CHECK(s.is_true());
}

TEST_CASE("stop quiesces immediately") {
  Program p = parse_program("stop");
  std::vector<Trace> traces = run_bounded(p, 3);
  REQUIRE(traces.size() == 1);
  REQUIRE(traces[0].size() == 4);
  for (const Store& s : traces[0]) CHECK(s.is_true());
}

TEST_CASE("the loop accumulates one level of nesting per instant") {
  Program p = corpus_program("loop.tccp");
  std::vector<Trace> traces = run_bounded(p, 3);
  REQUIRE(traces.size() == 1);
  REQUIRE(traces[0].size() == 4);
  TokenConj two_levels{
      mk_token(mk_var("X"), mk_compound("f", {mk_var("Q'1")})),
      mk_token(mk_var("Q'1"), mk_compound("f", {mk_var("Q'2")}))};
  CHECK_FALSE(entails(traces[0][2], two_levels));
  CHECK(entails(traces[0][3], two_levels));
}

TEST_CASE("a call unfolding costs one instant") {
  Program p = corpus_program("c05_call_chain.tccp");
  std::vector<Trace> traces = run_bounded(p, 3);
  REQUIRE(traces.size() == 1);
  CHECK(traces[0][2].is_true());
  CHECK(entails(traces[0][3], parse_conj("X=a")));
}

TEST_CASE("the driven microwave raises the error and drops the button") {
  Program p = corpus_program("microwave_input.tccp");
  std::vector<Trace> traces = run_bounded(p, 2);
  REQUIRE(traces.size() == 1);
  const Store& s2 = traces[0][2];
  TokenConj error_yes{
      mk_token(mk_var("Error"), mk_cons(mk_var("P'1"), mk_var("P'2"))),
      mk_token(mk_var("P'2"), mk_cons(mk_atom("yes"), mk_var("P'3")))};
  TokenConj button_off{
      mk_token(mk_var("Button"), mk_cons(mk_var("P'4"), mk_var("P'5"))),
      mk_token(mk_var("P'5"), mk_cons(mk_atom("off"), mk_var("P'6")))};
  CHECK(entails(s2, error_yes));
  CHECK(entails(s2, button_off));
}

TEST_CASE("a choice with two entailed guards branches the run") {
  // t0 call, t1 body in place, t2 tells landed, t3 choice fired, t4 the
  // chosen branch's tell has landed.
  Program p = corpus_program("c08_choice_branch.tccp");
  std::vector<Trace> traces = run_bounded(p, 4);
  REQUIRE(traces.size() == 2);
  bool saw_left = false;
  bool saw_right = false;
  for (const auto& t : traces) {
    if (entails(t[4], parse_conj("Z=left"))) saw_left = true;
    if (entails(t[4], parse_conj("Z=right"))) saw_right = true;
  }
  CHECK(saw_left);
  CHECK(saw_right);
}

TEST_CASE("choice-free programs run deterministically") {
  const char* names[] = {"loop.tccp", "microwave_input.tccp",
                         "c01_tell.tccp", "c09_nested_now.tccp"};
  for (const char* name : names) {
    CAPTURE(name);
    CHECK(run_bounded(corpus_program(name), 4).size() == 1);
  }
}

TEST_CASE("stores only ever grow along a trace") {
  const char* names[] = {"microwave_input.tccp", "loop.tccp",
                         "c06_now_then.tccp",    "c07_now_else.tccp",
                         "c08_choice_branch.tccp", "c12_two_strands.tccp"};
  for (const char* name : names) {
    CAPTURE(name);
    for (const Trace& t : run_bounded(corpus_program(name), 4))
      for (std::size_t i = 0; i + 1 < t.size(); ++i)
        CHECK(entails(t[i + 1], t[i].positive_tokens()));
  }
}

TEST_CASE("exploding branching reports a resource error") {
  Program p = parse_program(
      "br(X) :- ask(X=X) -> exists X1 (tell(X=[l|X1]) || br(X1))"
      "       + ask(X=X) -> exists X1 (tell(X=[r|X1]) || br(X1)). br(X)");
  RunLimits tight;
  tight.max_configurations = 16;
  CHECK_THROWS_AS(run_bounded(p, 12, tight), ResourceError);
}
