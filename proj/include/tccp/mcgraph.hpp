// ===== tccp/mcgraph.hpp — The model-checking graph and the verdict search =====
//
// To check a property the checker searches for a counterexample: the graph
// is built for the NEGATED property over the program's structure.  A node is
// a structure state together with the store accumulated along the unrolled
// path to it and a maximally consistent subset Q of the closure:
//
//   * atoms are decided by the accumulated store (no free choice),
//   * boolean members follow from their parts,
//   * only the polarity of next-members is free (a negated next is tied to
//     the next of the negation),
//   * an until is in Q iff its right argument is, or its left argument and
//     the corresponding next-member are.
//
// Node positions are output-aligned: the node over state s evaluates the
// store REACHED by the step into s, so position 0 of a path talks about the
// outputs of the first step (the initial completely unconstrained store is
// never a checked position).  Initial nodes therefore sit over the
// successors of the structure's initial states and must contain the negated
// property.
//
// Edges follow structure arcs and synchronize next-members: next phi in the
// source iff phi in the target.  Unrolling is folded by memoizing on the
// structure state, the atom valuation, the next-polarities, and the
// accumulated store restricted to the live (pending-agent) variables modulo
// renaming; truly dead bindings are summarized by the monotone atom
// valuation.  A counterexample is a path from an initial node to a
// nontrivial self-fulfilling strongly connected component; any reported
// witness is re-verified independently before the verdict is produced.

#ifndef TCCP_MCGRAPH_HPP
#define TCCP_MCGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "tccp/logic.hpp"
#include "tccp/structure.hpp"

namespace tccp {

struct MCNode {
  int state = -1;           // index into the structure
  Store acc_store;          // accumulated store checked at this position
  std::vector<bool> q;      // membership per closure index
  int depth = 0;
};

struct MCGraph {
  ClosureSet cl;            // closure of the negated property
  FormulaPtr target;        // the negated property
  TccpStructure structure;
  std::vector<MCNode> nodes;
  std::vector<std::vector<int>> edges;
  std::vector<int> initial;
  bool truncated = false;

  std::vector<FormulaPtr> q_of(int node) const;  // Q as formulas
};

struct CheckLimits {
  int time_limit = 50;
  std::size_t max_states = 100000;
};

/// Builds the graph of the (already negated) formula over z.
MCGraph build_graph(const FormulaPtr& negated, const TccpStructure& z,
                    const Program& p, const CheckLimits& limits = {});

// ── SCC machinery ───────────────────────────────────────────────────────────

/// Tarjan's algorithm; components are returned in reverse topological order,
/// each as a sorted list of node indices.
std::vector<std::vector<int>> sccs(const std::vector<std::vector<int>>& adj);

/// More than one node, or a single node with a self-edge.
bool nontrivial(const std::vector<int>& component,
                const std::vector<std::vector<int>>& adj);

/// Every until formula appearing in any member's Q has a node inside the
/// component whose Q contains the until's right argument.
bool self_fulfilling(const MCGraph& g, const std::vector<int>& component);

// ── Verdict ─────────────────────────────────────────────────────────────────

struct Witness {
  std::vector<int> prefix;  // node path from an initial node into the SCC
  std::vector<int> scc;     // the self-fulfilling component
};

struct Verdict {
  enum class Kind : std::uint8_t { Satisfied, Violated, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<Witness> witness;  // Violated only
  std::string detail;
};

/// The counterexample search over an already-built graph: Violated when an
/// initial node reaches a nontrivial self-fulfilling component, Satisfied
/// when none exists and the graph is complete, Inconclusive when it was
/// truncated.  A Violated verdict has passed independent witness
/// re-verification (edge conditions, local Q rules, until witnesses, and
/// component mutual reachability are re-checked from scratch).
Verdict search_graph(const MCGraph& g);

/// Property check: negate, build, search.
Verdict check(const Program& p, const FormulaPtr& property,
              const CheckLimits& limits = {});

/// Same, over an already-built structure.
Verdict check_structure(const TccpStructure& z, const Program& p,
                        const FormulaPtr& property, const CheckLimits& limits = {});

/// 0 Satisfied, 1 Violated, 2 Inconclusive.
int exit_code(const Verdict& v);

std::string to_dot(const MCGraph& g);

}  // namespace tccp

#endif  // TCCP_MCGRAPH_HPP
