// ===== tccp/structure.hpp — The finite-state structure of a program =====
//
// The model-checking structure is a graph whose states describe one time
// instant each:
//
//   C (store)  — the NEW information of the instant: constraints told during
//                the previous step plus the assumptions under which branch
//                resolution committed (an assumed ask/now guard, or a blocked
//                guard for an else branch)
//   T (labels) — the pending agents that will act during the step out of the
//                state
//   depth      — instants from an initial state (drives the time limit)
//
// Arcs carry a Renaming: when a newly expanded state is equivalent to an
// existing one up to a variable renaming, the arc is folded back and the
// renaming recorded, which is what keeps recursive programs finite.  The
// renaming maps the folded candidate's variables to the existing state's.
//
// delta_traces unrolls the graph again, composing the inverse renamings, and
// accumulates the C stores; on the supported program class these traces
// coincide with the operational semantics' store sequences (the equivalence
// test-suite checks exactly that).
//
// follows / instant / flat are the standalone single-instant analysis
// operators; construct / construct_ag / find_equivalent build whole
// structures.  The builder additionally tracks, per state, the pending agent
// instances and the accumulated store restricted to them — label sets alone
// would fold states that behave differently.

#ifndef TCCP_STRUCTURE_HPP
#define TCCP_STRUCTURE_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tccp/ast.hpp"
#include "tccp/semantics.hpp"
#include "tccp/store.hpp"

namespace tccp {

struct TccpState {
  Store store;               // C: the instant's new information
  std::vector<Label> labels; // T: labels of the pending agents
  int depth = 0;
};

struct Arc {
  int from = -1;
  Renaming renaming;  // folded-candidate variables -> target-state variables
  int to = -1;
};

/// Builder-internal per-state data, exposed because find_equivalent is
/// defined on it: the pending instances and the accumulated store restricted
/// to their variables decide foldability.
struct StateDetail {
  std::vector<AgentInst> pending;
  Store accumulated;  // positive part only; blocked is instant-local
};

struct TccpStructure {
  std::vector<TccpState> states;
  std::vector<StateDetail> details;
  std::vector<int> initial;
  std::vector<Arc> arcs;
  bool truncated = false;

  std::vector<const Arc*> arcs_from(int state) const;
};

struct BuildLimits {
  int time_limit = 50;            // maximum state depth
  std::size_t max_states = 100000;
};

// ── Single-instant analysis ─────────────────────────────────────────────────

/// One (store, labels) pair per resolution alternative of one instant.
struct InstantEntry {
  Store store;            // may be Aleph
  std::set<Label> labels;
};

/// All alternatives of running the agent with label l for one instant from
/// store st (both branches of a conditional are explored: the then branch
/// under st joined with the guard, the else branch under st with the guard
/// blocked; the guard assumption itself is not part of the result).
std::vector<InstantEntry> instant_analysis(const Program& p, const Store& st,
                                           const Label& l);

/// The stores of instant_analysis, in order.
std::vector<Store> instant(const Program& p, const Store& st, const Label& l);

/// The label sets of the same alternatives: what is left pending after the
/// instant.  A procedure call leaves its own (call-site) label pending.
std::vector<std::set<Label>> follows(const Program& p, const Label& l);

/// Element-wise join against st; inconsistent entries become Aleph.
std::vector<Store> flat(const Store& st, const std::vector<Store>& stores);

/// Cross-product union of label-set alternatives (the parallel combine).
std::vector<std::set<Label>> combine(const std::vector<std::set<Label>>& a,
                                     const std::vector<std::set<Label>>& b);

// ── Structure construction ──────────────────────────────────────────────────

/// The structure of one declaration: the body is resolved over the empty
/// store with the formal parameters left free (the open, any-caller view —
/// an underdetermined guard splits the construction into an assumed-then
/// state and a blocked-else state).
TccpStructure construct(const Program& p, int decl_index,
                        const BuildLimits& limits = {});

/// The structure of the program's goal agent.
TccpStructure construct_goal(const Program& p, const BuildLimits& limits = {});

/// The structure the checker verifies: a goal that is a bare procedure call
/// is construct() of the called declaration (the called process is the
/// system, in its open any-caller view); any other goal goes through
/// construct_goal; with no goal the first declaration is taken.  Throws
/// std::invalid_argument when the program has neither goal nor declaration.
TccpStructure construct_program(const Program& p, const BuildLimits& limits = {});

/// Expands one state in place: computes its successor candidates, folds the
/// ones find_equivalent recognizes, appends the genuinely new ones, and adds
/// the arcs.  Returns the indices of newly created states.
std::vector<int> construct_ag(TccpStructure& z, int state, const Program& p,
                              FreshVarGen& fresh, const BuildLimits& limits);

/// Searches z for a state equivalent to the candidate: the pending labels
/// must agree as multisets and one injective renaming must simultaneously
/// match the increment store, the pending instances' arguments, and the
/// accumulated store restricted to the pending instances' variables.
/// Returns the state index and the renaming candidate -> existing.
std::optional<std::pair<int, Renaming>> find_equivalent(
    const TccpStructure& z, const TccpState& cand_state,
    const StateDetail& cand_detail);

// ── Unrolling ───────────────────────────────────────────────────────────────

/// Every path of `horizon` arcs from an initial state, replayed with the arc
/// renamings undone, as the accumulated store per position:
/// element i is the join of the C stores of positions 0..i (blocked parts
/// stripped).  Stuttering self-loops keep traces maximal.
std::vector<Trace> delta_traces(const TccpStructure& z, int horizon);

/// Sequence-wise store equivalence under ONE renaming for the whole trace.
bool equivalent_traces(const Trace& a, const Trace& b);

/// Set equality of trace sets modulo equivalent_traces.
bool same_trace_set(const std::vector<Trace>& a, const std::vector<Trace>& b);

std::string to_dot(const TccpStructure& z);

}  // namespace tccp

#endif  // TCCP_STRUCTURE_HPP
