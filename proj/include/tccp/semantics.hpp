// ===== tccp/semantics.hpp — Operational semantics (the oracle interpreter) =====
//
// A direct implementation of the transition rules, independent of the
// structure builder (the two are compared against each other by the
// equivalence test-suite):
//
//   * tell(c) takes one time unit: the told constraint is visible in the
//     store of the NEXT instant.
//   * A choice fires in the instant one of its guards is entailed (one
//     successor per entailed guard, maximal parallelism: it may not wait);
//     the chosen body starts acting at the next instant.
//   * now c then A else B checks the guard within the instant and lets the
//     taken branch act in that same instant; a branch that cannot act leaves
//     the configuration to it at the next instant.
//   * A call unfolds in one time unit: the body starts acting at the next
//     instant.
//   * Parallel composition is maximally parallel: in each instant every
//     agent that can act does.
//
// Hiding is handled by renaming the bound variables fresh when the body is
// activated, so configurations only ever contain tell/choice/now/call
// instances.  A configuration with no applicable rule is quiescent and its
// store repeats (stuttering).  A step whose combined tells are inconsistent
// has no successor (a failed simultaneous join cannot occur).

#ifndef TCCP_SEMANTICS_HPP
#define TCCP_SEMANTICS_HPP

#include <stdexcept>
#include <vector>

#include "tccp/ast.hpp"
#include "tccp/store.hpp"

namespace tccp {

/// An active agent: a pointer into the program AST plus the substitution
/// accumulated by call unfolding and hide renaming.
struct AgentInst {
  const Agent* node = nullptr;
  Subst subst;
};

struct Configuration {
  std::vector<AgentInst> agents;
  Store store;
};

/// One store per time instant, element 0 being the initial store (true).
using Trace = std::vector<Store>;

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunLimits {
  std::size_t max_configurations = 4096;  // per BFS level
  std::size_t max_traces = 4096;
};

/// All successor configurations of c (empty means quiescent).
std::vector<Configuration> step(const Configuration& c, const Program& p,
                                FreshVarGen& fresh);

/// The initial configuration <goal, true> with hiding/parallel already
/// resolved into a flat multiset of agent instances.
Configuration initial_configuration(const Program& p, FreshVarGen& fresh);

/// Every maximal store sequence of length T+1 reachable from <goal, true>;
/// quiescent configurations stutter their store.  Throws ResourceError when
/// the branching exceeds the limits.
std::vector<Trace> run_bounded(const Program& p, int T, const RunLimits& limits = {});

}  // namespace tccp

#endif  // TCCP_SEMANTICS_HPP
