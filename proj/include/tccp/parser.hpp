// ===== tccp/parser.hpp — Concrete syntax for programs =====
//
// Grammar (see docs/grammar.ebnf for the full EBNF):
//
//   program   : declaration* goal "."?
//   decl      : name "(" vars? ")" ":-" agent "."
//   agent     : choice ("||" agent)?                      (|| is right-assoc)
//   choice    : askbranch ("+" askbranch)* | unary
//   askbranch : "ask" "(" conj ")" "->" unary
//   unary     : "tell" "(" conj ")" | "stop"
//             | "now" guard "then" unary "else" unary
//             | "exists" Var ("," Var)* unary
//             | "(" agent ")" | name ("(" vars? ")")?     (procedure call)
//   conj      : token (("," | "/\") token)*
//   token     : term "=" term
//   term      : Var | "_" | name ("(" term ("," term)* ")")? | list
//   list      : "[" (term ("," term)* ("|" term)?)? "]"
//
// Variables start with an upper-case letter or "_"; atoms and procedure
// names with a lower-case letter.  "%" starts a comment.  Each "_" is a
// fresh variable (normalized after the parse to names no user variable
// uses).  Errors carry 1-based line/column.

#ifndef TCCP_PARSER_HPP
#define TCCP_PARSER_HPP

#include <stdexcept>
#include <string>

#include "tccp/ast.hpp"

namespace tccp {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what), line(line), col(col) {}
  int line;
  int col;
};

struct ParseOptions {
  /// Maximum nesting depth of now agents; exceeding it is a ParseError
  /// (deeply nested conditionals explode the structure construction).
  int max_now_depth = 32;
};

/// Parses, resolves calls (unknown procedure names are ParseErrors), checks
/// call arity, normalizes anonymous variables, and labels the program.
Program parse_program(const std::string& source, const ParseOptions& opts = {});

/// Parses a single token conjunction, e.g. "X=f(Y), Y=a" (used by tests and
/// the property parser).
TokenConj parse_conj(const std::string& source);

}  // namespace tccp

#endif  // TCCP_PARSER_HPP
