#ifndef INFINIALG_TESTS_CORPUS_HPP
#define INFINIALG_TESTS_CORPUS_HPP

// Randomized instance generation shared by the colimit tests and the
// acceptance suite. Everything is seeded (INFINIALG_SEED overrides).

#include <algorithm>
#include <cstdlib>
#include <random>

#include "infinialg/colimits.hpp"
#include "infinialg/gallery.hpp"

namespace infinialg::testing {

inline std::uint64_t seed_from_env(std::uint64_t fallback = 20250808ULL) {
  if (const char* s = std::getenv("INFINIALG_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

// A universe is a fixed valid i-algebra whose sub-algebras supply the random
// corpus; inclusions of restricted sub-algebras always reflect i-structure.
struct UniversePool {
  std::vector<IAlgebraPtr> universes;

  static UniversePool standard(int n_max = kDefaultNMax) {
    UniversePool pool;
    pool.universes.push_back(nil_square_affine_algebra(ring_zmod(4), 1, n_max));
    pool.universes.push_back(total_affine_line(ring_zmod(3), n_max));
    // a 5-point discrete affine space over Z/3: any subset is closed
    auto clone = affine_clone(ring_zmod(3), n_max);
    pool.universes.push_back(std::make_shared<IAlgebra>(
        clone, discrete(5, n_max),
        [](int, OpId, std::span<const int> tuple) { return tuple.empty() ? 0 : tuple[0]; }));
    return pool;
  }
};

inline std::vector<int> random_subset(std::mt19937_64& rng, int size, int min_size) {
  std::vector<int> subset;
  while (static_cast<int>(subset.size()) < min_size) {
    subset.clear();
    for (int i = 0; i < size; ++i)
      if (rng() % 2) subset.push_back(i);
  }
  return subset;
}

// Random closed sub-algebra of a universe with at least min_size points.
inline SubObject random_sub(std::mt19937_64& rng, const IAlgebraPtr& universe, int min_size = 1) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto sub = sub_algebra(universe, random_subset(rng, universe->carrier_size(), min_size));
    if (sub) return *sub;
  }
  // the full universe is always closed
  return *sub_algebra(universe, [&] {
    std::vector<int> all(static_cast<std::size_t>(universe->carrier_size()));
    for (int i = 0; i < universe->carrier_size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }());
}

struct RandomSpan {
  IAlgebraPtr vertex;
  std::vector<IHom> legs;
};

// Wide span of reflecting inclusions: a shared sub-algebra included into two
// or three larger sub-algebras of one universe. Injections into the discrete
// universe get randomly permuted.
inline RandomSpan random_inclusion_span(std::mt19937_64& rng, const UniversePool& pool,
                                        int max_legs) {
  const IAlgebraPtr& universe =
      pool.universes[static_cast<std::size_t>(rng() % pool.universes.size())];
  bool discrete_universe = universe->istr() == discrete(universe->carrier_size(), universe->n_max());
  int leg_count = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_legs - 1));
  for (int attempt = 0;; ++attempt) {
    SubObject base = random_sub(rng, universe, 1);
    std::vector<IHom> legs;
    bool ok = true;
    for (int i = 0; i < leg_count && ok; ++i) {
      // grow the base subset into a larger closed subset
      std::vector<int> grown = base.inclusion.map;
      for (int x = 0; x < universe->carrier_size(); ++x)
        if (rng() % 2) grown.push_back(x);
      auto bigger = sub_algebra(universe, grown);
      if (!bigger) {
        ok = false;
        break;
      }
      std::vector<int> map;
      for (int g : base.inclusion.map) {
        const auto& big_set = bigger->inclusion.map;
        auto it = std::lower_bound(big_set.begin(), big_set.end(), g);
        map.push_back(static_cast<int>(it - big_set.begin()));
      }
      if (discrete_universe) {
        // any injection between discrete affine spaces is a reflecting hom
        std::vector<int> perm(static_cast<std::size_t>(bigger->algebra->carrier_size()));
        for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = static_cast<int>(p);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& v : map) v = perm[static_cast<std::size_t>(v)];
      }
      IHom leg = is_ihom(map, base.algebra, bigger->algebra);
      if (!leg.accepted() || !leg.reflects) {
        ok = false;
        break;
      }
      legs.push_back(std::move(leg));
    }
    if (ok) return {base.algebra, std::move(legs)};
    if (attempt > 300) throw std::runtime_error("corpus generation failed to converge");
  }
}

// Non-injective reflecting spans out of a total vertex: identities, constant
// collapses, and affine symmetries.
inline RandomSpan random_collapse_span(std::mt19937_64& rng, const UniversePool& pool,
                                       int max_legs) {
  const IAlgebraPtr& vertex = pool.universes[1];  // the total affine line
  int size = vertex->carrier_size();
  int leg_count = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_legs - 1));
  std::vector<IHom> legs;
  for (int i = 0; i < leg_count; ++i) {
    std::vector<int> map(static_cast<std::size_t>(size));
    switch (rng() % 3) {
      case 0:  // identity
        for (int x = 0; x < size; ++x) map[static_cast<std::size_t>(x)] = x;
        break;
      case 1: {  // constant
        int c = static_cast<int>(rng() % size);
        std::fill(map.begin(), map.end(), c);
        break;
      }
      default: {  // affine symmetry x -> ux + v with u invertible mod 3
        int u = 1 + 1 * static_cast<int>(rng() % 2), v = static_cast<int>(rng() % size);
        for (int x = 0; x < size; ++x) map[static_cast<std::size_t>(x)] = (u * x + v) % size;
        break;
      }
    }
    IHom leg = is_ihom(map, vertex, vertex);
    if (!leg.accepted() || !leg.reflects) throw std::runtime_error("collapse leg rejected");
    legs.push_back(std::move(leg));
  }
  return {vertex, std::move(legs)};
}

inline RandomSpan random_reflecting_span(std::mt19937_64& rng, const UniversePool& pool,
                                         int max_legs = 3) {
  if (rng() % 4 == 0) return random_collapse_span(rng, pool, max_legs);
  return random_inclusion_span(rng, pool, max_legs);
}

// Random congruence on a random sub-algebra; structure is product-restricted
// (a kernel-pair candidate) or discrete.
inline Congruence random_congruence(std::mt19937_64& rng, const UniversePool& pool,
                                    int max_carrier = 4) {
  for (int attempt = 0;; ++attempt) {
    const IAlgebraPtr& universe =
        pool.universes[static_cast<std::size_t>(rng() % pool.universes.size())];
    SubObject sub = random_sub(rng, universe, 1);
    if (sub.algebra->carrier_size() > max_carrier) continue;
    IAlgebraPtr a = sub.algebra;
    std::vector<std::pair<int, int>> pairs;
    int extra = static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i)
      pairs.emplace_back(static_cast<int>(rng() % a->carrier_size()),
                         static_cast<int>(rng() % a->carrier_size()));
    RelStructure structure =
        rng() % 2 ? RelStructure::ProductRestricted : RelStructure::Discrete;
    try {
      return congruence_generated_by(a, pairs, structure);
    } catch (const NotACongruence&) {
      if (attempt > 300) throw;
    }
  }
}

}  // namespace infinialg::testing

#endif
