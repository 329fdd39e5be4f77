// ===== tests/test_parser.cpp — concrete syntax and labeling =====

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "tccp/ast.hpp"
#include "tccp/parser.hpp"
#include "test_util.hpp"

using namespace tccp;
using tccp_test::corpus_program;
using tccp_test::read_corpus;

namespace {

std::vector<std::string> label_names(const Program& p) {
  LabelIndex idx(p);
  std::vector<Label> all = idx.all_labels();
  std::sort(all.begin(), all.end(),
            [](const Label& a, const Label& b) { return a.index < b.index; });
  std::vector<std::string> names;
  names.reserve(all.size());
  for (const auto& l : all) names.push_back(to_string(l));
  return names;
}

}  // namespace

TEST_CASE("the microwave program parses to the expected shape") {
  Program p = corpus_program("microwave.tccp");
  REQUIRE(p.decls.size() == 1);
  const Declaration& d = p.decls[0];
  CHECK(d.name == "microwave_error");
  CHECK(d.params == std::vector<std::string>{"Door", "Button", "Error"});
  REQUIRE(d.body->kind == Agent::Kind::Hide);
  CHECK(d.body->hide_vars == std::vector<std::string>{"D", "B", "E"});
  // Four parallel layers: three stream tells, then the conditional next to
  // the recursive call.
  const Agent* a = d.body->left.get();
  for (int i = 0; i < 3; ++i) {
    REQUIRE(a->kind == Agent::Kind::Parallel);
    CHECK(a->left->kind == Agent::Kind::Tell);
    a = a->right.get();
  }
  REQUIRE(a->kind == Agent::Kind::Parallel);
  CHECK(a->left->kind == Agent::Kind::Now);
  CHECK(a->right->kind == Agent::Kind::Call);
  CHECK(a->right->call_decl == 0);
  REQUIRE(p.goal);
  CHECK(p.goal->kind == Agent::Kind::Call);
}

TEST_CASE("labeling the microwave program is a single pre-order pass") {
  Program p = corpus_program("microwave.tccp");
  std::vector<std::string> expected{
      "lp0",  "le1",  "lpar2", "lt3",   "lpar4", "lt5",  "lpar6",
      "lt7",  "lpar8", "lnow9", "lpar10", "le11", "lt12", "le13",
      "lt14", "le15", "lt16",  "lp17",  "lp18"};
  CHECK(label_names(p) == expected);
}

TEST_CASE("relabeling is idempotent") {
  Program p = corpus_program("microwave.tccp");
  std::vector<std::string> before = label_names(p);
  label_program(p);
  CHECK(label_names(p) == before);
}

TEST_CASE("a goal-only program starts labeling at zero") {
  Program p = parse_program("stop");
  REQUIRE(p.goal);
  CHECK(p.decls.empty());
  CHECK(label_names(p) == std::vector<std::string>{"lstop0"});
}

TEST_CASE("a parallel pair is labeled parent first") {
  Program p = parse_program("tell(X=a) || tell(Y=b)");
  CHECK(label_names(p) ==
        std::vector<std::string>{"lpar0", "lt1", "lt2"});
}

TEST_CASE("the recursive loop program parses") {
  Program p = corpus_program("loop.tccp");
  REQUIRE(p.decls.size() == 1);
  CHECK(p.decls[0].name == "p");
  REQUIRE(p.decls[0].body->kind == Agent::Kind::Hide);
  REQUIRE(p.goal);
  CHECK(p.goal->kind == Agent::Kind::Call);
  CHECK(p.goal->call_decl == 0);
}

TEST_CASE("pretty-printing round-trips for the whole corpus") {
  const char* names[] = {
      "microwave.tccp",     "microwave_input.tccp", "loop.tccp",
      "c01_tell.tccp",      "c02_parallel.tccp",    "c03_stop.tccp",
      "c04_hide.tccp",      "c05_call_chain.tccp",  "c06_now_then.tccp",
      "c07_now_else.tccp",  "c08_choice_branch.tccp", "c09_nested_now.tccp",
      "c10_stream.tccp",    "c11_choice_wait.tccp", "c12_two_strands.tccp",
      "c13_stop_only.tccp", "c14_conflict.tccp"};
  for (const char* name : names) {
    CAPTURE(name);
    Program p = corpus_program(name);
    Program q = parse_program(to_string(p));
    CHECK(to_labeled_string(q) == to_labeled_string(p));
  }
}

TEST_CASE("anonymous variables become distinct fresh variables") {
  Program p = parse_program("main(X) :- tell(X=[_|_]). main(X)");
  const Agent* body = p.decls[0].body.get();
  REQUIRE(body->kind == Agent::Kind::Tell);
  std::vector<std::string> vs = vars_of(body->constraint);
  REQUIRE(vs.size() == 3);  // X and the two normalized anonymous cells
  CHECK(vs[0] == "X");
  CHECK(vs[1] != "_");
  CHECK(vs[2] != "_");
  CHECK(vs[1] != vs[2]);
}

TEST_CASE("choices parse with guards and bodies in order") {
  Program p = parse_program(
      "pick(X,Y) :- ask(X=a) -> tell(Y=one) + ask(X=b) -> tell(Y=two). "
      "pick(X,Y)");
  const Agent* body = p.decls[0].body.get();
  REQUIRE(body->kind == Agent::Kind::Choice);
  REQUIRE(body->branches.size() == 2);
  CHECK(to_string(body->branches[0].guard[0]) == "X=a");
  CHECK(body->branches[1].body->kind == Agent::Kind::Tell);
}

TEST_CASE("list syntax desugars to cells") {
  TokenConj c = parse_conj("L=[a,b|T], M=[]");
  REQUIRE(c.size() == 2);
  CHECK(to_string(c[0]) == "L=[a,b|T]");
  CHECK(to_string(c[1].rhs) == "[]");
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_program("q(X) :- tell(X=a. q(X)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("unresolved procedure names are rejected") {
  CHECK_THROWS_AS(parse_program("q(X) :- tell(X=a). r(Y)"), ParseError);
}

TEST_CASE("call arity is checked") {
  CHECK_THROWS_AS(parse_program("q(X) :- tell(X=a). q(X, Y)"), ParseError);
}

TEST_CASE("conditional nesting beyond the limit is rejected") {
  std::string deep = "main(X) :- ";
  for (int i = 0; i < 40; ++i) deep += "now X=a then ";
  deep += "stop";
  for (int i = 0; i < 40; ++i) deep += " else stop";
  deep += ". main(X)";
  CHECK_THROWS_AS(parse_program(deep), ParseError);
  ParseOptions strict;
  strict.max_now_depth = 1;
  CHECK_THROWS_AS(
      parse_program("main(X) :- now X=a then (now X=b then stop else stop) "
                    "else stop. main(X)",
                    strict),
      ParseError);
}
