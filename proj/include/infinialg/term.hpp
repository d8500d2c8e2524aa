#ifndef INFINIALG_TERM_HPP
#define INFINIALG_TERM_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "infinialg/common.hpp"

namespace infinialg {

// One-sorted signature: function symbols with arities. Names are unique.
struct Signature {
  std::vector<std::pair<std::string, int>> symbols;

  // -1 when the symbol is not declared.
  int arity_of(const std::string& name) const;
  bool has(const std::string& name) const { return arity_of(name) >= 0; }
};

// First-order term over positional variables x1..xn. var == 0 encodes an
// application node; var >= 1 encodes the variable with that index.
struct Term {
  int var = 0;
  std::string symbol;
  std::vector<Term> args;

  static Term make_var(int index);
  static Term make_app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const { return var > 0; }

  // Nesting depth: variables and constants are 0, f(t...) is 1 + max arg depth.
  int depth() const;
  // Largest variable index used (0 for closed terms).
  int max_var() const;

  std::string print() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
};

// Canonical total order: by depth first, then by printed form. Used for
// class representatives and deterministic enumeration output.
bool term_less(const Term& a, const Term& b);

struct Equation {
  Term lhs, rhs;
  int nvars = 0;
};

struct Presentation {
  std::string name;
  Signature signature;
  std::vector<Equation> equations;
};

// Checks arities against the signature and variable indices against nvars.
// Throws ArityError on arity misuse, DomainError on out-of-range variables.
void check_term(const Term& t, const Signature& sig, int nvars);

// Simultaneous substitution t[subs[0]/x1, ..., subs[n-1]/xn]. Purely
// syntactic; no equational rewriting.
Term term_substitute(const Term& t, std::span<const Term> subs);

// All well-formed terms over nvars variables with depth <= depth, in
// canonical order.
std::vector<Term> enumerate_terms(const Presentation& p, int nvars, int depth);

}  // namespace infinialg

#endif
