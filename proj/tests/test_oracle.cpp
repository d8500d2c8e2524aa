#include <doctest.h>

#include <random>

#include "infinialg/colimits.hpp"
#include "infinialg/gallery.hpp"
#include "infinialg/oracle.hpp"

using namespace infinialg;

namespace {

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("INFINIALG_SEED")) return std::strtoull(s, nullptr, 10);
  return 424242ULL;
}

}  // namespace

TEST_CASE("closure oracle degenerate cases") {
  CHECK(oracle::brute_istructure_closure(3, {}, 3) == discrete(3, 3));
  std::map<int, std::vector<std::vector<int>>> full;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) full[2].push_back({x, y});
  CHECK(oracle::brute_istructure_closure(2, full, 3) == indiscrete(2, 3));
}

TEST_CASE("one-pass generation agrees with the fixpoint oracle") {
  std::mt19937_64 rng(seed_from_env());
  for (int it = 0; it < 200; ++it) {
    int size = 1 + static_cast<int>(rng() % 5);
    std::map<int, std::vector<std::vector<int>>> gens;
    int count = static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
      int n = 2 + static_cast<int>(rng() % 2);
      std::vector<int> t(static_cast<std::size_t>(n));
      for (auto& v : t) v = static_cast<int>(rng() % size);
      gens[n].push_back(t);
    }
    CAPTURE(it);
    CAPTURE(size);
    CHECK(generate_from_tuples(size, gens, 3) == oracle::brute_istructure_closure(size, gens, 3));
  }
}

TEST_CASE("iso search finds the identity on a fixed algebra") {
  auto a = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  auto iso = oracle::brute_iso_search(a, a);
  REQUIRE(iso.has_value());
  CHECK(*iso == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("iso search distinguishes different structures") {
  // total affine line vs the discrete affine space on three points
  auto total = total_affine_line(ring_zmod(3), 3);
  auto clone = total->clone();
  auto disc = std::make_shared<IAlgebra>(
      clone, discrete(3, 3),
      [](int, OpId, std::span<const int> t) { return t.empty() ? 0 : t[0]; });
  CHECK_FALSE(oracle::brute_iso_search(total, disc).has_value());
  CHECK_FALSE(oracle::brute_iso_search(total, total_abelian_zmod(3, 3)).has_value());
}

TEST_CASE("size mismatch yields no bijection") {
  auto z2 = total_abelian_zmod(2, 3);
  CoconeResult wedge = coproduct(z2->clone(), {z2, z2}, 3);
  CHECK_FALSE(oracle::brute_iso_search(wedge.apex, z2).has_value());
}

TEST_CASE("set coequalizer classes") {
  SUBCASE("equal maps quotient nothing") {
    std::vector<int> f = {0, 1, 2}, g = {0, 1, 2};
    auto classes = oracle::brute_set_coequalizer(f, g, 3);
    CHECK(classes.size() == 3);
  }
  SUBCASE("zero vs doubling on Z/4") {
    std::vector<int> zero = {0, 0, 0, 0}, dbl = {0, 2, 0, 2};
    auto classes = oracle::brute_set_coequalizer(zero, dbl, 4);
    REQUIRE(classes.size() == 3);
    CHECK(classes[0] == std::vector<int>{0, 2});
    CHECK(classes[1] == std::vector<int>{1});
    CHECK(classes[2] == std::vector<int>{3});
  }
  SUBCASE("zero vs identity on Z/2 collapses everything") {
    std::vector<int> zero = {0, 0}, id = {0, 1};
    CHECK(oracle::brute_set_coequalizer(zero, id, 2).size() == 1);
  }
}

TEST_CASE("oracle budgets") {
  auto big = total_affine_line(ring_zmod(3), 3);
  SearchBudget tiny;
  tiny.max_function_space = 2;
  CHECK_THROWS_AS(oracle::brute_iso_search(big, big, tiny), BudgetExceeded);
}
