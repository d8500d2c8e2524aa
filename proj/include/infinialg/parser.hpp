#ifndef INFINIALG_PARSER_HPP
#define INFINIALG_PARSER_HPP

#include <string>

#include "infinialg/term.hpp"

namespace infinialg {

// Theory DSL, whitespace-insensitive:
//   file   := "theory" IDENT ";" (opdecl | eqdecl)*
//   opdecl := "op" IDENT "/" NAT ";"
//   eqdecl := "eq" "[" NAT "]" term "=" term ";"
//   term   := IDENT "(" term ("," term)* ")" | IDENT | "x" NAT
// Constants are written bare ("e"); they normalize to applications with no
// arguments. Variables are positional: x1, x2, ...
Presentation parse_presentation(const std::string& text);

// Canonical printout; parse_presentation(print_presentation(p)) == p.
std::string print_presentation(const Presentation& p);

}  // namespace infinialg

#endif
