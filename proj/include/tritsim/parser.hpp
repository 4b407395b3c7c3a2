#pragma once

#include <string>
#include <vector>

#include "tritsim/netlist.hpp"

namespace tritsim {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;  // characters
};

enum class ParseErrorKind { Lex, Syntax, Semantic };

struct ParseError {
  SourceSpan span;
  std::string message;
  ParseErrorKind kind = ParseErrorKind::Syntax;
};

struct ParseResult {
  Circuit circuit;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

// Parses netlist text. Never throws on bad input; the parser recovers at
// statement boundaries and reports every error it finds with a span inside
// the offending token. On success the circuit satisfies all structural
// invariants (unique drivers, resolvable references, acyclic hierarchy).
// The last cell in the file is the top cell.
//
// Grammar:
//   file     := cell* ;
//   cell     := "cell" IDENT "{" item* "}" ;
//   item     := portdecl | instdecl ;
//   portdecl := ("input"|"output") IDENT ("ternary")? ";" ;
//   instdecl := "inst" IDENT ":" IDENT "(" IDENT ("," IDENT)* ")"
//               "->" IDENT ("," IDENT)* ";" ;
//   comments run from '#' to end of line; IDENT := [A-Za-z_][A-Za-z0-9_]*
ParseResult parse(const std::string& text);

// Renders a circuit back to netlist text. parse(serialize(c)) is
// structurally equal to c for any circuit whose top is its last def.
std::string serialize(const Circuit& circuit);

// "line:col: message" for diagnostics.
std::string format_error(const ParseError& error);

}  // namespace tritsim
