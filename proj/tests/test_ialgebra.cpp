#include <doctest.h>

#include "infinialg/colimits.hpp"
#include "infinialg/gallery.hpp"

using namespace infinialg;

namespace {

// Z/2 carrier as a total algebra over the affine Z/4 clone: coefficients act
// through reduction mod 2.
IAlgebraPtr affine_z4_on_z2(const IStructure& istr) {
  auto clone = affine_clone(ring_zmod(4), 3);
  auto act = [clone](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone->coefficients(n, sigma);
    int out = 0;
    for (int i = 0; i < n; ++i)
      out = (out + coeffs[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)]) % 2;
    return out;
  };
  return std::make_shared<IAlgebra>(clone, istr, act);
}

}  // namespace

TEST_CASE("affine action on the Z/4 nil-square structure is a valid i-algebra") {
  auto a = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  ValidationReport report = validate_ialgebra(*a);
  CHECK(report.ok());
  CHECK(report.exhaustive);
}

TEST_CASE("discrete affine structures validate via the degenerate domain") {
  // shrinking the i-structure shrinks the axiom domains: the discrete affine
  // algebra is valid because the action only ever sees diagonal tuples
  FiniteRing z4 = ring_zmod(4);
  auto clone = affine_clone(z4, 3);
  auto disc = std::make_shared<IAlgebra>(
      clone, discrete(4, 3),
      [](int, OpId, std::span<const int> tuple) { return tuple.empty() ? 0 : tuple[0]; });
  CHECK(validate_ialgebra(*disc).ok());
}

TEST_CASE("a broken neighbourhood is reported") {
  // affine Z/4 action on the full carrier but with only the diagonal plus a
  // single stray pair: the stray pair's affine combinations leave the diagonal
  FiniteRing z4 = ring_zmod(4);
  auto clone = affine_clone(z4, 3);
  std::map<int, std::vector<std::vector<int>>> gens;
  gens[2] = {{0, 1}};  // 1 is not a nil-square neighbour of 0
  IStructure istr = generate_from_tuples(4, gens, 3);
  REQUIRE(validate_istructure(istr).ok());
  auto alg = std::make_shared<IAlgebra>(clone, istr, [&z4, clone](int n, OpId sigma,
                                                                  std::span<const int> tuple) {
    const auto& coeffs = clone->coefficients(n, sigma);
    int out = 0;
    for (int i = 0; i < n; ++i)
      out = z4.add(out, z4.mul(coeffs[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(i)]));
    return out;
  });
  ValidationReport report = validate_ialgebra(*alg);
  CHECK_FALSE(report.ok());
  CHECK(report.violations.front().axiom == "neighbourhood");
}

TEST_CASE("total algebras validate and reject bad tables") {
  auto clone2 = abelian_exp_clone(2, 2);
  auto good = [clone2](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone2->coefficients(n, sigma);
    int out = 0;
    for (int i = 0; i < n; ++i)
      out = (out + coeffs[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)]) % 2;
    return out;
  };
  CHECK_NOTHROW(total_algebra(clone2, 2, good, 2));

  auto bad = [clone2](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone2->coefficients(n, sigma);
    int out = 0;
    for (int i = 0; i < n; ++i)
      out = (out + coeffs[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)]) % 2;
    return n == 2 ? 1 - out : out;  // poison binary operations
  };
  CHECK_THROWS_AS(total_algebra(clone2, 2, bad, 2), NotAClonAlgebra);
}

TEST_CASE("one-point total algebras exist for every clone in the gallery") {
  auto pointed = total_abelian_zmod(2, 3);
  CHECK(pointed->carrier_size() == 2);
  auto one = std::make_shared<IAlgebra>(affine_clone(ring_zmod(3), 3), indiscrete(1, 3),
                                        [](int, OpId, std::span<const int>) { return 0; });
  CHECK(validate_ialgebra(*one).ok());
}

TEST_CASE("action lookups outside the neighbourhood are domain errors") {
  auto a = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  int outside[] = {0, 1};  // 1 - 0 = 1 is not nil-square
  OpId sigma = 0;
  CHECK_THROWS_AS(a->act(2, sigma, outside), DomainError);
}

TEST_CASE("homomorphism flags") {
  SUBCASE("identity map is accepted and reflects") {
    auto a = nil_square_affine_algebra(ring_zmod(4), 1, 3);
    IHom id = identity_hom(a);
    CHECK(id.accepted());
    CHECK(id.reflects);
    CHECK(id.closed_image);
  }

  SUBCASE("the zero endomorphism of total Z/4 is equivariant") {
    auto z4 = total_abelian_zmod(4, 3);
    IHom zero = is_ihom({0, 0, 0, 0}, z4, z4);
    CHECK(zero.accepted());
    CHECK(zero.reflects);  // total source
  }

  SUBCASE("mod-2 from the nil-square line to the discrete line") {
    auto src = nil_square_affine_algebra(ring_zmod(4), 1, 3);
    auto dst = affine_z4_on_z2(discrete(2, 3));
    REQUIRE(validate_ialgebra(*dst).ok());
    IHom mod2 = is_ihom({0, 1, 0, 1}, src, dst);
    CHECK(mod2.i_morphism);
    CHECK(mod2.equivariant);
    // congruent points mod 2 are exactly the nil-square neighbours in Z/4
    CHECK(mod2.reflects);
  }

  SUBCASE("different clones are rejected") {
    auto a = total_abelian_zmod(2, 3);
    auto b = total_affine_line(ring_zmod(2), 3);
    CHECK_THROWS_AS(is_ihom({0, 1}, a, b), DifferentClones);
  }
}

TEST_CASE("homomorphisms compose and flags compose") {
  auto nil = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  auto sub = sub_algebra(nil, {0, 2});
  REQUIRE(sub);
  IHom incl = sub->inclusion;
  REQUIRE(incl.accepted());
  IHom shift = is_ihom({1, 2, 3, 0}, nil, nil);  // x + 1 is affine and invertible
  REQUIRE(shift.accepted());
  IHom composed = compose(shift, incl);
  CHECK(composed.accepted());
  CHECK(composed.map == std::vector<int>{1, 3});
  // reflects composes
  CHECK(incl.reflects);
  CHECK(shift.reflects);
  CHECK(composed.reflects);

  // the identity into the total line preserves but does not reflect
  auto total = total_affine_line(ring_zmod(4), 3);
  IHom widen = is_ihom({0, 1, 2, 3}, nil, total);
  CHECK(widen.accepted());
  CHECK_FALSE(widen.reflects);
}

TEST_CASE("homomorphisms out of total algebras always reflect") {
  // exhaustive over every accepted endomorphism of two small total algebras
  auto total3 = total_affine_line(ring_zmod(3), 3);
  auto z4 = total_abelian_zmod(4, 3);
  for (const auto& a : {total3, z4}) {
    int accepted = 0;
    std::vector<int> map(static_cast<std::size_t>(a->carrier_size()), 0);
    bool more = true;
    while (more) {
      IHom h = is_ihom(map, a, a);
      if (h.accepted()) {
        ++accepted;
        CHECK(h.reflects);
      }
      more = next_tuple(map, a->carrier_size());
    }
    CHECK(accepted > 1);
  }
}

TEST_CASE("total algebra validity matches the clone hom criterion") {
  // abelian exponent-2 tables on Z/2 against End(Z/2), both routes agree
  auto clone2 = abelian_exp_clone(2, 2);
  auto endo = std::make_shared<EndoClone>(2, 2);
  auto table_of = [&](int n, OpId sigma) {
    const auto& coeffs = clone2->coefficients(n, sigma);
    std::uint64_t inputs = 1;
    for (int i = 0; i < n; ++i) inputs *= 2;
    std::uint64_t table = 0;
    for (std::uint64_t idx = 0; idx < inputs; ++idx) {
      int out = 0;
      for (int i = 0; i < n; ++i) {
        int x = static_cast<int>((idx >> (n - 1 - i)) & 1);
        out = (out + coeffs[static_cast<std::size_t>(i)] * x) % 2;
      }
      table = table * 2 + static_cast<std::uint64_t>(out);
    }
    return static_cast<OpId>(table);
  };
  CloneHom h;
  h.source = clone2;
  h.target = endo;
  for (int n = 0; n <= 2; ++n) {
    std::vector<OpId> level;
    for (OpId i = 0; i < clone2->op_count(n); ++i) level.push_back(table_of(n, i));
    h.maps.push_back(std::move(level));
  }
  CHECK(clone_hom_check(h));
  CHECK_NOTHROW(total_algebra(
      clone2, 2,
      [&](int n, OpId sigma, std::span<const int> tuple) {
        const auto& coeffs = clone2->coefficients(n, sigma);
        int out = 0;
        for (int i = 0; i < n; ++i)
          out = (out + coeffs[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)]) % 2;
        return out;
      },
      2));
}
