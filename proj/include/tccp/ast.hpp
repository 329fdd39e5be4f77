// ===== tccp/ast.hpp — Agents, declarations, programs, labels =====
//
// The agent language:
//
//   A ::= stop | tell(c) | sum of ask(c_i) -> A_i | now c then A else B
//       | A || B | exists X1,...,Xk A | p(X1,...,Xn)
//
// Every AST node carries a Label (an agent-kind tag plus a global index).
// label_program assigns indices by a single pre-order traversal of the whole
// program: declarations first (the head atom gets the label, then the body;
// parents before children, left before right), then the goal.  A multi-
// variable exists is ONE Hide node and gets one label.
//
// Rendering: lp0 (head/call), le1 (exists), lpar2 (parallel), lt3 (tell),
// lnow9 (now), lask5 (choice), lstop6 (stop).

#ifndef TCCP_AST_HPP
#define TCCP_AST_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tccp/term.hpp"

namespace tccp {

struct Label {
  enum class Kind : std::uint8_t { Proc, Hide, Tell, Par, Now, Ask, Stop };
  Kind kind = Kind::Stop;
  int index = -1;
};

bool operator==(const Label& a, const Label& b);
bool operator<(const Label& a, const Label& b);
std::string to_string(const Label& l);

struct Agent;
using AgentPtr = std::shared_ptr<Agent>;

struct AskBranch {
  TokenConj guard;
  AgentPtr body;
};

struct Agent {
  enum class Kind : std::uint8_t { Stop, Tell, Choice, Now, Parallel, Hide, Call };

  Kind kind = Kind::Stop;
  Label label;

  TokenConj constraint;            // Tell: told conjunction; Now: the guard
  std::vector<AskBranch> branches; // Choice
  AgentPtr left;                   // Parallel: left; Now: then; Hide: body
  AgentPtr right;                  // Parallel: right; Now: else
  std::vector<std::string> hide_vars;
  std::string call_name;
  std::vector<std::string> call_args;
  int call_decl = -1;              // resolved declaration index
};

struct Declaration {
  std::string name;
  std::vector<std::string> params;
  AgentPtr body;
  Label head_label;
};

struct Program {
  std::vector<Declaration> decls;
  AgentPtr goal;

  int decl_index(const std::string& name) const;
};

// ── Labeling ────────────────────────────────────────────────────────────────

/// Assigns indices 0,1,2,... in one pre-order pass over declarations (head,
/// then body) and finally the goal.  Idempotent: re-running reassigns the
/// same labels.
void label_program(Program& p);

/// The node carrying label l (head labels resolve to the declaration body's
/// owner declaration; see agent_of/decl_of).  Null when l is unknown.
struct LabelIndex {
  explicit LabelIndex(const Program& p);
  const Agent* agent_of(const Label& l) const;   // null for head labels
  const Declaration* decl_of(const Label& l) const;  // non-null for head labels
  std::vector<Label> all_labels() const;

 private:
  std::map<int, const Agent*> agents_;
  std::map<int, const Declaration*> heads_;
};

// ── Printing ────────────────────────────────────────────────────────────────

/// Pretty-prints to concrete syntax that reparses to the same program
/// (modulo anonymous-variable names, which are already normalized here).
std::string to_string(const Agent& a);
std::string to_string(const Program& p);

/// Like to_string but with every node prefixed by {label}.
std::string to_labeled_string(const Program& p);

/// Free variables of an agent (call arguments included, hide-bound removed).
std::vector<std::string> free_vars(const Agent& a);

}  // namespace tccp

#endif  // TCCP_AST_HPP
