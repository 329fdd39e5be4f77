// ===== tests/test_theorem.cpp — operational/structural equivalence =====
//
// The central correctness claim: unrolling a program's structure yields
// exactly the store sequences its operational semantics produces.  Verified
// bounded, on a corpus covering every agent kind (tell, parallel, stop,
// hiding, calls, committed and waiting choices, nested conditionals,
// recursion, clashing tells), for horizons 0 through 6, with traces compared
// modulo variable renaming.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "tccp/parser.hpp"
#include "tccp/semantics.hpp"
#include "tccp/structure.hpp"
#include "test_util.hpp"

using namespace tccp;
using tccp_test::corpus_program;

namespace {

const std::vector<std::string> kCorpus = {
    "loop.tccp",
    "c01_tell.tccp",
    "c02_parallel.tccp",
    "c03_stop.tccp",
    "c04_hide.tccp",
    "c05_call_chain.tccp",
    "c06_now_then.tccp",
    "c07_now_else.tccp",
    "c08_choice_branch.tccp",
    "c09_nested_now.tccp",
    "c10_stream.tccp",
    "c11_choice_wait.tccp",
    "c12_two_strands.tccp",
    "c13_stop_only.tccp",
    "c14_conflict.tccp",
};

}  // namespace

TEST_CASE("structure unrollings match the operational semantics") {
  for (const std::string& file : kCorpus) {
    Program p = corpus_program(file);
    TccpStructure z = construct_goal(p);
    REQUIRE_MESSAGE(!z.truncated, file, ": construction hit a budget");
    for (int horizon = 0; horizon <= 6; ++horizon) {
      auto ran = run_bounded(p, horizon);
      auto unrolled = delta_traces(z, horizon);
      CHECK_MESSAGE(same_trace_set(ran, unrolled), file,
                    " diverges at horizon ", horizon, ": semantics produced ",
                    ran.size(), " trace(s), the structure ", unrolled.size());
    }
  }
}
