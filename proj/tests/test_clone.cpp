#include <doctest.h>

#include <functional>

#include "infinialg/clone.hpp"
#include "infinialg/free_clone.hpp"
#include "infinialg/gallery.hpp"
#include "infinialg/parser.hpp"

using namespace infinialg;

namespace {

ClonePtr semilattice_clone() {
  Presentation p = parse_presentation(
      "theory Semilattice; op meet/2;"
      " eq[2] meet(x1,x1)=x1;"
      " eq[2] meet(x1,x2)=meet(x2,x1);"
      " eq[3] meet(meet(x1,x2),x3)=meet(x1,meet(x2,x3));");
  return free_clone(p, 2, 4).clone;
}

}  // namespace

TEST_CASE("endo clone sizes are |A|^(|A|^n)") {
  auto c = endo_clone(2, 1);
  CHECK(c->op_count(0) == 2);
  CHECK(c->op_count(1) == 4);

  auto c2 = endo_clone(2, 2);
  CHECK(c2->op_count(2) == 16);

  auto c3 = endo_clone(3, 2);
  CHECK(c3->op_count(2) == 19683);  // 3^(3^2)

  auto one = endo_clone(1, 2);
  for (int n = 0; n <= 2; ++n) CHECK(one->op_count(n) == 1);
}

TEST_CASE("endo clone over-budget carrier") {
  CHECK_THROWS_AS(endo_clone(4, 3), BudgetExceeded);
}

TEST_CASE("endo clone substitution composes functions") {
  EndoClone c(2, 2);
  // names are output tables over lexicographic inputs
  auto and_op = c.find_op(2, "0001");
  auto not_op = c.find_op(1, "10");
  REQUIRE(and_op);
  REQUIRE(not_op);
  OpId args[1] = {*and_op};
  OpId nand = c.subst(1, 2, *not_op, args);
  CHECK(c.op_name(2, nand) == "1110");
  // projections pick coordinates
  CHECK(c.op_name(2, c.proj(2, 1)) == "0011");
  CHECK(c.op_name(2, c.proj(2, 2)) == "0101");
}

TEST_CASE("validate endo clone") {
  auto c = endo_clone(2, 2);
  ValidationReport report = validate_clone(*c);
  CHECK(report.ok());
  CHECK(report.exhaustive);
  CHECK(report.checked == report.total);
}

TEST_CASE("validate free semilattice clone") {
  CHECK(validate_clone(*semilattice_clone()).ok());
}

TEST_CASE("broken projection table is caught") {
  std::vector<std::vector<std::string>> names = {{}, {"p"}, {"p1", "p2"}};
  std::vector<std::vector<OpId>> proj = {{}, {0}, {1, 1}};  // pi^2_1 remapped to p2
  std::vector<std::vector<std::vector<OpId>>> subst(3);
  subst[0] = {{}, {}, {}};
  subst[1].resize(3);
  subst[1][1] = {0};
  subst[1][2] = {0, 1};  // p * (p1) = p1, p * (p2) = p2 at target arity 2? one row per arg
  subst[2].resize(3);
  subst[2][1] = {0, 0};
  // both arity-2 ops behave as the second projection on O(2) arguments
  subst[2][2] = {/*p1 rows:*/ 0, 1, 0, 1, /*p2 rows:*/ 0, 1, 0, 1};
  auto c = std::make_shared<TableClone>(2, names, proj, subst);
  ValidationReport report = validate_clone(*c);
  CHECK_FALSE(report.ok());
  bool projection_violation = false;
  for (const auto& v : report.violations)
    if (v.axiom.rfind("projection", 0) == 0) projection_violation = true;
  CHECK(projection_violation);
}

TEST_CASE("clone homomorphism: identity family") {
  auto c = semilattice_clone();
  CloneHom h;
  h.source = c;
  h.target = c;
  for (int n = 0; n <= c->n_max(); ++n) {
    std::vector<OpId> ids;
    for (OpId i = 0; i < c->op_count(n); ++i) ids.push_back(i);
    h.maps.push_back(std::move(ids));
  }
  CHECK(clone_hom_check(h));
}

TEST_CASE("an algebra structure is a clone hom into End(A)") {
  // free affine clone over Z/2 acting on the carrier Z/2
  Presentation p = parse_presentation(
      "theory AffineZ2; op p/3;"
      " eq[2] p(x1,x1,x2)=x2;"
      " eq[2] p(x1,x2,x2)=x1;"
      " eq[3] p(x1,x2,x3)=p(x2,x1,x3);"
      " eq[3] p(x1,x2,x3)=p(x1,x3,x2);"
      " eq[5] p(p(x1,x2,x3),x4,x5)=p(x1,x2,p(x3,x4,x5));");
  auto fc = free_clone(p, 2, 6);
  auto src = fc.clone;
  auto dst = std::make_shared<EndoClone>(2, 2);

  // map each class to the function its canonical term computes (p = xor3)
  CloneHom h;
  h.source = src;
  h.target = dst;
  for (int n = 0; n <= 2; ++n) {
    std::vector<OpId> level;
    for (OpId i = 0; i < src->op_count(n); ++i) {
      std::string text = "theory T; op p/3; eq[" + std::to_string(std::max(n, 1)) + "] " +
                         src->op_name(n, i) + "=" + src->op_name(n, i) + ";";
      Term t = parse_presentation(text).equations.at(0).lhs;
      std::uint64_t inputs = 1;
      for (int k = 0; k < n; ++k) inputs *= 2;
      std::uint64_t table = 0;
      for (std::uint64_t idx = 0; idx < inputs; ++idx) {
        std::vector<int> env;
        for (int k = n - 1; k >= 0; --k) env.push_back(static_cast<int>((idx >> k) & 1));
        std::function<int(const Term&)> eval = [&](const Term& u) -> int {
          if (u.is_var()) return env[static_cast<std::size_t>(u.var - 1)];
          int v = 0;
          for (const auto& arg : u.args) v ^= eval(arg);
          return v;
        };
        table = table * 2 + static_cast<std::uint64_t>(eval(t));
      }
      level.push_back(static_cast<OpId>(table));
    }
    h.maps.push_back(std::move(level));
  }
  CHECK(clone_hom_check(h));

  SUBCASE("breaking the projection images breaks the check") {
    REQUIRE(src->op_count(2) == 2);
    std::swap(h.maps[2][0], h.maps[2][1]);
    CHECK_FALSE(clone_hom_check(h));
  }
}

TEST_CASE("constants algebra of the pointed clone") {
  Presentation p = parse_presentation("theory Pointed; op e/0;");
  auto c = free_clone(p, 2, 2).clone;
  ConstantsAlgebra alg = constants_algebra(c);
  CHECK(alg.carrier_size == 1);
  int tuple[1] = {0};
  for (OpId sigma = 0; sigma < c->op_count(1); ++sigma)
    CHECK(alg.act(1, sigma, tuple) == 0);
}

TEST_CASE("constants algebra of an affine clone is empty") {
  auto c = affine_clone(ring_zmod(3), 2);
  CHECK(constants_algebra(c).carrier_size == 0);
}

TEST_CASE("sampled validation is flagged") {
  auto c = abelian_exp_clone(4, 3);
  ValidateOptions options;
  options.exhaustive_limit = 1000;
  options.sample_size = 2000;
  ValidationReport report = validate_clone(*c, options);
  CHECK(report.ok());
  CHECK_FALSE(report.exhaustive);
}
