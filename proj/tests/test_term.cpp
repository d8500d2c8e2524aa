#include <doctest.h>

#include "infinialg/parser.hpp"
#include "infinialg/term.hpp"

using namespace infinialg;

namespace {

Presentation semilattice() {
  return parse_presentation(
      "theory Semilattice; op meet/2;"
      " eq[2] meet(x1,x1)=x1;"
      " eq[2] meet(x1,x2)=meet(x2,x1);"
      " eq[3] meet(meet(x1,x2),x3)=meet(x1,meet(x2,x3));");
}

Presentation pointed() { return parse_presentation("theory Pointed; op e/0;"); }

std::vector<std::string> printed(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.print());
  return out;
}

}  // namespace

TEST_CASE("substitution projects variables") {
  Term s = Term::make_app("meet", {Term::make_var(1), Term::make_var(2)});
  std::vector<Term> subs = {s};
  CHECK(term_substitute(Term::make_var(1), subs) == s);
}

TEST_CASE("substitution swaps variables") {
  Term t = Term::make_app("meet", {Term::make_var(1), Term::make_var(2)});
  std::vector<Term> subs = {Term::make_var(2), Term::make_var(1)};
  CHECK(term_substitute(t, subs).print() == "meet(x2,x1)");
}

TEST_CASE("substitution duplicates arguments") {
  Term t = Term::make_app("meet", {Term::make_var(1), Term::make_var(1)});
  std::vector<Term> subs = {Term::make_app("meet", {Term::make_var(1), Term::make_var(2)})};
  CHECK(term_substitute(t, subs).print() == "meet(meet(x1,x2),meet(x1,x2))");
}

TEST_CASE("substitution arity mismatch") {
  Term t = Term::make_app("meet", {Term::make_var(1), Term::make_var(2)});
  std::vector<Term> subs = {Term::make_var(1)};
  CHECK_THROWS_AS(term_substitute(t, subs), ArityMismatch);
}

TEST_CASE("enumeration at depth zero") {
  // canonical order: depth first, then printed form
  auto terms = enumerate_terms(pointed(), 1, 0);
  CHECK(printed(terms) == std::vector<std::string>{"e", "x1"});
}

TEST_CASE("enumeration of semilattice terms") {
  CHECK(enumerate_terms(semilattice(), 1, 1).size() == 2);
  auto terms = enumerate_terms(semilattice(), 2, 1);
  CHECK(terms.size() == 6);
  CHECK(printed(terms) ==
        std::vector<std::string>{"x1", "x2", "meet(x1,x1)", "meet(x1,x2)", "meet(x2,x1)",
                                 "meet(x2,x2)"});
}

TEST_CASE("substitution satisfies the clone laws on enumerated terms") {
  Presentation p = semilattice();
  auto ts = enumerate_terms(p, 2, 1);
  auto ss = enumerate_terms(p, 2, 1);

  // unit: t[x1,...,xn] = t
  std::vector<Term> identity = {Term::make_var(1), Term::make_var(2)};
  for (const auto& t : ts) CHECK(term_substitute(t, identity) == t);

  // projection: xj[s1,...,sn] = sj
  for (const auto& s1 : ss)
    for (const auto& s2 : ss) {
      std::vector<Term> subs = {s1, s2};
      CHECK(term_substitute(Term::make_var(1), subs) == s1);
      CHECK(term_substitute(Term::make_var(2), subs) == s2);
    }

  // associativity: every t up to depth 2, every substitution pair up to depth 1
  auto deep = enumerate_terms(p, 2, 2);
  std::size_t checked = 0;
  for (const auto& t : deep)
    for (const auto& s1 : ss)
      for (const auto& s2 : ss)
        for (const auto& r1 : ss)
          for (const auto& r2 : ss) {
            std::vector<Term> subs = {s1, s2};
            std::vector<Term> subs2 = {r1, r2};
            Term lhs = term_substitute(term_substitute(t, subs), subs2);
            std::vector<Term> composed = {term_substitute(s1, subs2),
                                          term_substitute(s2, subs2)};
            Term rhs = term_substitute(t, composed);
            if (lhs != rhs) CHECK(lhs == rhs);  // avoid millions of assertions
            ++checked;
          }
  CHECK(checked == deep.size() * ss.size() * ss.size() * ss.size() * ss.size());
}

TEST_CASE("term order: depth first, then printed form") {
  Term a = Term::make_var(1);
  Term b = Term::make_app("meet", {Term::make_var(1), Term::make_var(1)});
  CHECK(term_less(a, b));
  CHECK_FALSE(term_less(b, a));
  CHECK(term_less(Term::make_var(1), Term::make_var(2)));
}
