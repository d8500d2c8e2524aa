#include <doctest.h>

#include "infinialg/parser.hpp"

using namespace infinialg;

TEST_CASE("parses the semilattice presentation") {
  Presentation p = parse_presentation(
      "theory Semilattice; op meet/2;"
      " eq[2] meet(x1,x1)=x1;"
      " eq[2] meet(x1,x2)=meet(x2,x1);"
      " eq[3] meet(meet(x1,x2),x3)=meet(x1,meet(x2,x3));");
  CHECK(p.name == "Semilattice");
  CHECK(p.signature.symbols.size() == 1);
  CHECK(p.equations.size() == 3);
  CHECK(p.equations[2].nvars == 3);
}

TEST_CASE("parses a nullary symbol without parentheses") {
  Presentation p = parse_presentation("theory Pointed; op e/0;");
  CHECK(p.signature.symbols.size() == 1);
  CHECK(p.signature.arity_of("e") == 0);
  CHECK(p.equations.empty());
}

TEST_CASE("constants normalize to empty applications") {
  Presentation p = parse_presentation("theory P; op e/0; op f/1; eq[1] f(e)=e;");
  CHECK(p.equations[0].lhs.args[0].args.empty());
  CHECK_FALSE(p.equations[0].rhs.is_var());
}

TEST_CASE("arity misuse is an ArityError") {
  CHECK_THROWS_AS(parse_presentation("theory Bad; op f/2; eq[1] f(x1)=x1;"), ArityError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_presentation("theory T;\nop f/;");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 0);
    CHECK_FALSE(e.expected.empty());
  }
}

TEST_CASE("rejects undeclared symbols in equations") {
  CHECK_THROWS_AS(parse_presentation("theory T; op f/1; eq[1] g(x1)=x1;"), SyntaxError);
}

TEST_CASE("rejects duplicate symbols and reserved names") {
  CHECK_THROWS_AS(parse_presentation("theory T; op f/1; op f/2;"), SyntaxError);
  CHECK_THROWS_AS(parse_presentation("theory T; op x2/1;"), SyntaxError);
}

TEST_CASE("rejects variables beyond the declared count") {
  CHECK_THROWS_AS(parse_presentation("theory T; op f/1; eq[1] f(x2)=x1;"), SyntaxError);
}

TEST_CASE("print then parse is the identity") {
  const char* sources[] = {
      "theory Semilattice; op meet/2; eq[2] meet(x1,x2)=meet(x2,x1);",
      "theory Pointed; op e/0;",
      "theory Ab; op plus/2; op neg/1; op zero/0;"
      " eq[3] plus(plus(x1,x2),x3)=plus(x1,plus(x2,x3));"
      " eq[1] plus(x1,neg(x1))=zero;",
  };
  for (const char* src : sources) {
    Presentation p = parse_presentation(src);
    std::string text = print_presentation(p);
    Presentation q = parse_presentation(text);
    CHECK(print_presentation(q) == text);
    CHECK(q.name == p.name);
    CHECK(q.signature.symbols == p.signature.symbols);
    CHECK(q.equations.size() == p.equations.size());
  }
}
