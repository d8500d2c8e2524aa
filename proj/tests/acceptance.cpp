// Acceptance suite: one criterion per entry, each timed against its stated
// bound, independent counting oracles recomputed inline. Prints one PASS or
// FAIL line per criterion and exits nonzero when anything fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "corpus.hpp"
#include "infinialg/free_clone.hpp"
#include "infinialg/json_io.hpp"
#include "infinialg/oracle.hpp"
#include "infinialg/parser.hpp"

using namespace infinialg;
using namespace infinialg::testing;

namespace {

struct Criterion {
  int number;
  std::string description;
  double bound_seconds;
  std::function<bool(std::string&)> run;
};

Presentation semilattice_presentation() {
  return parse_presentation(
      "theory Semilattice; op meet/2;"
      " eq[2] meet(x1,x1)=x1;"
      " eq[2] meet(x1,x2)=meet(x2,x1);"
      " eq[3] meet(meet(x1,x2),x3)=meet(x1,meet(x2,x3));");
}

// counting oracles: direct enumeration, sharing nothing with the clones
int count_nonempty_subsets(int n) { return (1 << n) - 1; }

int count_affine_pairs(int m) {
  int count = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if ((a + b) % m == 1) ++count;
  return count;
}

std::vector<std::pair<int, int>> congruence_pairs(const Congruence& cg) {
  std::vector<std::pair<int, int>> pairs;
  for (int y = 0; y < cg.rel->carrier_size(); ++y) pairs.emplace_back(cg.p1(y), cg.p2(y));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Test-only oracle: lifts the Set-level quotient of a pair relation without
// consulting the joint-reflection predicate, then checks whether the given
// congruence is the kernel pair of the lifted quotient.
bool oracle_is_kernel_pair(const Congruence& cg) {
  IAlgebraPtr a = cg.p1.target;
  std::vector<int> parent(static_cast<std::size_t>(a->carrier_size()));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int y = 0; y < cg.rel->carrier_size(); ++y) {
    int r1 = find(cg.p1(y)), r2 = find(cg.p2(y));
    if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
  }
  std::vector<int> q(parent.size());
  int classes = 0;
  std::vector<int> index(parent.size(), -1);
  for (std::size_t i = 0; i < parent.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (index[static_cast<std::size_t>(root)] < 0) index[static_cast<std::size_t>(root)] = classes++;
    q[i] = index[static_cast<std::size_t>(root)];
  }

  const Clone& c = *a->clone();
  try {
    IStructure istr = image_istructure(q, a->istr(), classes);
    // action from witnesses; disagreement means the quotient has no lift
    std::vector<std::map<std::pair<OpId, std::uint64_t>, int>> tables(
        static_cast<std::size_t>(a->n_max() + 1));
    for (int n = 0; n <= a->n_max(); ++n) {
      std::uint64_t count = a->istr().tuple_count(n);
      for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<int> x;
        if (n == 1)
          x = {static_cast<int>(t)};
        else if (n >= 2)
          x = decode_tuple(a->istr().tuples(n)[t], a->carrier_size(), n);
        std::vector<int> image(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) image[i] = q[static_cast<std::size_t>(x[i])];
        std::uint64_t key = encode_tuple(image, classes);
        for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
          int result = q[static_cast<std::size_t>(a->act(n, sigma, x))];
          auto [it, inserted] = tables[static_cast<std::size_t>(n)].try_emplace({sigma, key}, result);
          if (!inserted && it->second != result) return false;  // no lift
        }
      }
    }
    auto act = [&tables, classes](int n, OpId sigma, std::span<const int> tuple) {
      return tables[static_cast<std::size_t>(n)].at({sigma, encode_tuple(tuple, classes)});
    };
    auto apex = std::make_shared<IAlgebra>(a->clone(), istr, act);
    IHom quotient = is_ihom(q, a, apex);
    if (!quotient.accepted()) return false;
    Congruence back = kernel_pair(quotient);
    return congruence_pairs(back) == congruence_pairs(cg) &&
           back.rel->istr() == cg.rel->istr();
  } catch (const Error&) {
    return false;
  }
}

bool criterion1(std::string& note) {
  auto sl = free_clone(semilattice_presentation(), 2, 4);
  auto pt = free_clone(parse_presentation("theory Pointed; op e/0;"), 2, 2);
  auto af = affine_clone(ring_zmod(4), 3);
  auto ab = abelian_exp_clone(4, 3);
  auto en = endo_clone(2, 2);

  struct Entry {
    std::string name;
    ClonePtr clone;
    int expected_binary;
  };
  std::vector<Entry> entries = {
      {"free semilattice", sl.clone, count_nonempty_subsets(2)},
      {"free pointed", pt.clone, 2 + 1},           // variables plus the constant
      {"affine Z/4", af, count_affine_pairs(4)},   // pairs summing to 1 mod 4
      {"abelian exp 4", ab, 4 * 4},                // all coefficient pairs
      {"endo {0,1}", en, (1 << (1 << 2))},         // 2^(2^2) binary functions
  };
  for (const auto& entry : entries) {
    if (entry.clone->op_count(2) != entry.expected_binary) {
      note = entry.name + ": |O(2)| = " + std::to_string(entry.clone->op_count(2)) +
             ", oracle expects " + std::to_string(entry.expected_binary);
      return false;
    }
    ValidationReport report = validate_clone(*entry.clone);
    if (!report.ok()) {
      note = entry.name + ": " + std::to_string(report.violations.size()) + " violations";
      return false;
    }
  }
  note = "5 clones, 0 violations";
  return true;
}

bool criterion2(std::string& note) {
  auto base = free_clone(parse_presentation("theory Pointed; op e/0;"), 2, 2).clone;
  auto again = free_clone(theory_of_clone(*base), 2, 8);
  auto iso = oracle::brute_clone_iso_search(again.clone, base);
  if (!iso) {
    note = "no arity-wise bijective clone homomorphism found";
    return false;
  }
  note = "bijective clone homomorphism found";
  return true;
}

bool criterion3(std::string& note) {
  for (int k : {1, 2}) {
    auto a = nil_square_affine_algebra(ring_zmod(4), k, 3);
    ValidationReport report = validate_ialgebra(*a);
    if (!report.ok() || !report.exhaustive) {
      note = "k=" + std::to_string(k) + ": violations=" +
             std::to_string(report.violations.size()) +
             " exhaustive=" + (report.exhaustive ? "yes" : "no");
      return false;
    }
  }
  note = "k=1,2 exhaustive with 0 violations";
  return true;
}

bool criterion4(std::string& note) {
  std::mt19937_64 rng(seed_from_env() ^ 0xC4ULL);
  UniversePool pool = UniversePool::standard();
  auto one_point_affine = [&](const ClonePtr& clone) {
    return std::make_shared<IAlgebra>(clone, indiscrete(1, 3),
                                      [](int, OpId, std::span<const int>) { return 0; });
  };
  for (int it = 0; it < 100; ++it) {
    RandomSpan span;
    int apex_bound = 8;
    do {
      span = random_reflecting_span(rng, pool);
      int apex = span.vertex->carrier_size();
      for (const auto& leg : span.legs)
        apex += leg.target->carrier_size() - span.vertex->carrier_size();
      if (apex <= apex_bound) break;
    } while (true);

    CoconeResult result = wide_pushout(span.vertex, span.legs);
    for (std::size_t i = 0; i < result.legs.size(); ++i)
      if (!result.legs[i].reflects || !result.legs[i].accepted()) {
        note = "diagram " + std::to_string(it) + ": leg " + std::to_string(i) +
               " does not reflect";
        return false;
      }
    if (!validate_ialgebra(*result.apex).ok()) {
      note = "diagram " + std::to_string(it) + ": apex invalid";
      return false;
    }

    std::vector<TestCocone> targets;
    TestCocone self;
    self.target = result.apex;
    for (const auto& leg : result.legs) self.legs.push_back(leg.map);
    targets.push_back(std::move(self));
    if (span.vertex->clone()->op_count(0) == 0) {
      TestCocone point;
      point.target = one_point_affine(span.vertex->clone());
      for (const auto& leg : result.legs)
        point.legs.push_back(std::vector<int>(leg.map.size(), 0));
      targets.push_back(std::move(point));
    }
    auto report = verify_universal_property(result, targets);
    if (!report.pass) {
      note = "diagram " + std::to_string(it) + ": mediating counts off";
      return false;
    }
  }
  note = "100 diagrams, all legs reflect, universal property certified";
  return true;
}

bool criterion5(std::string& note) {
  std::mt19937_64 rng(seed_from_env() ^ 0xC5ULL);
  UniversePool pool = UniversePool::standard();
  auto z2 = total_abelian_zmod(2, 3);
  auto klein = product(z2, z2);
  for (int it = 0; it < 50; ++it) {
    if (it % 2 == 0) {
      // affine: disjoint unions
      const auto& universe = pool.universes[static_cast<std::size_t>(rng() % pool.universes.size())];
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<IAlgebraPtr> factors;
      std::uint64_t size_sum = 0;
      for (int i = 0; i < k; ++i) {
        SubObject sub = random_sub(rng, universe, 1);
        size_sum += static_cast<std::uint64_t>(sub.algebra->carrier_size());
        factors.push_back(sub.algebra);
      }
      CoconeResult result = coproduct(universe->clone(), factors, 3);
      if (static_cast<std::uint64_t>(result.apex->carrier_size()) != size_sum) {
        note = "affine coproduct size law failed at iteration " + std::to_string(it);
        return false;
      }
    } else {
      // exponent-2 abelian: wedges
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<IAlgebraPtr> factors;
      std::uint64_t size_sum = 0;
      for (int i = 0; i < k; ++i) {
        IAlgebraPtr f = (rng() % 2) ? z2 : klein;
        size_sum += static_cast<std::uint64_t>(f->carrier_size());
        factors.push_back(f);
      }
      CoconeResult result = coproduct(z2->clone(), factors, 3);
      if (static_cast<std::uint64_t>(result.apex->carrier_size()) !=
          size_sum - static_cast<std::uint64_t>(k - 1)) {
        note = "wedge size law failed at iteration " + std::to_string(it);
        return false;
      }
    }
  }
  note = "50 coproducts satisfy their size laws";
  return true;
}

bool criterion6(std::string& note) {
  std::mt19937_64 rng(seed_from_env() ^ 0xC6ULL);
  UniversePool pool = UniversePool::standard();
  int kernel_count = 0, failure_count = 0;
  for (int it = 0; it < 100; ++it) {
    Congruence cg = random_congruence(rng, pool);
    bool kernel = is_kernel_pair(cg);
    bool oracle_kernel = oracle_is_kernel_pair(cg);
    if (kernel != oracle_kernel) {
      note = "oracle disagrees at iteration " + std::to_string(it);
      return false;
    }
    if (kernel) {
      ++kernel_count;
      CoconeResult result = coequalizer_congruence(cg);
      Congruence back = kernel_pair(result.legs[0]);
      if (congruence_pairs(back) != congruence_pairs(cg) ||
          back.rel->istr() != cg.rel->istr()) {
        note = "kernel pair of the quotient differs at iteration " + std::to_string(it);
        return false;
      }
    } else {
      ++failure_count;
      try {
        coequalizer_congruence(cg);
        note = "expected JointReflectionFailure at iteration " + std::to_string(it);
        return false;
      } catch (const JointReflectionFailure&) {
      }
    }
  }
  note = std::to_string(kernel_count) + " kernel pairs, " + std::to_string(failure_count) +
         " reflection failures, oracle agrees on all 100";
  return kernel_count > 0 && failure_count > 0;
}

bool criterion7(std::string& note) {
  std::mt19937_64 rng(seed_from_env() ^ 0xC7ULL);
  UniversePool pool = UniversePool::standard();
  int done = 0;
  while (done < 50) {
    Congruence cg = random_congruence(rng, pool);
    if (!is_kernel_pair(cg)) continue;
    CoconeResult quotient = coequalizer_congruence(cg);
    const IHom& e = quotient.legs[0];
    if (!is_regular_epi(e)) {
      note = "coequalizer leg is not a regular epi";
      return false;
    }
    SubObject b = random_sub(rng, pool.universes[static_cast<std::size_t>(rng() % 2)], 1);
    if (!same_clone(*b.algebra->clone(), *quotient.apex->clone())) continue;
    if (b.algebra->carrier_size() > 3) continue;
    std::vector<std::vector<int>> candidates;
    std::vector<int> map(static_cast<std::size_t>(b.algebra->carrier_size()), 0);
    bool more = true;
    while (more) {
      if (is_ihom(map, b.algebra, quotient.apex).accepted()) candidates.push_back(map);
      more = next_tuple(map, quotient.apex->carrier_size());
    }
    if (candidates.empty()) continue;
    IHom f = is_ihom(candidates[rng() % candidates.size()], b.algebra, quotient.apex);
    PullbackResult pb = pullback(f, e);
    if (!is_regular_epi(pb.to_f_source)) {
      note = "pullback of a regular epi is not a regular epi";
      return false;
    }
    ++done;
  }
  note = "50 pullbacks of regular epis are regular epis";
  return true;
}

bool criterion8(std::string& note) {
  auto reports = counterexample_suite();
  if (reports.size() != 3) {
    note = "expected three fixtures";
    return false;
  }
  for (const auto& r : reports)
    if (!r.pass) {
      note = "fixture " + r.name + " failed";
      return false;
    }
  // exact values frozen from the gallery expectations
  auto value = [&](int i, const std::string& key) -> std::string {
    for (const auto& [k, v] : reports[static_cast<std::size_t>(i)].actual)
      if (k == key) return v;
    return "";
  };
  bool exact = value(0, "set_coequalizer_classes") == "3" &&
               value(0, "algebra_quotient_carrier") == "2" &&
               value(1, "joint_reflection_failure_raised") == "true" &&
               value(1, "one_point_lift_accepted") == "true" &&
               value(2, "reflects") == "false";
  note = exact ? "Set: 3 vs OiAlg: 2; lift exhibited; reflects=false"
               : "fixture values drifted";
  return exact;
}

bool criterion9(std::string& note) {
  // two-clique atlas over Z/4
  auto expected = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  Atlas at;
  at.ambient_size = 4;
  at.ambient_names = {"0", "1", "2", "3"};
  at.charts.push_back({{}, sub_algebra(expected, {})->algebra});
  at.charts.push_back({{0, 2}, sub_algebra(expected, {0, 2})->algebra});
  at.charts.push_back({{1, 3}, sub_algebra(expected, {1, 3})->algebra});
  IAlgebraPtr glued = glue_atlas(at);
  if (!structurally_equal(*glued, *expected)) {
    note = "glued algebra differs from the nil-square line";
    return false;
  }

  // chain of three two-point charts with singleton meets
  auto clone = affine_clone(ring_zmod(3), 3);
  auto chart = [&](int size) {
    return std::make_shared<IAlgebra>(
        clone, discrete(size, 3),
        [](int, OpId, std::span<const int> t) { return t.empty() ? 0 : t[0]; });
  };
  Atlas chain;
  chain.ambient_size = 4;
  chain.ambient_names = {"a", "b", "c", "d"};
  chain.charts.push_back({{}, chart(0)});
  chain.charts.push_back({{1}, chart(1)});
  chain.charts.push_back({{2}, chart(1)});
  chain.charts.push_back({{0, 1}, chart(2)});
  chain.charts.push_back({{1, 2}, chart(2)});
  chain.charts.push_back({{2, 3}, chart(2)});
  IAlgebraPtr glued_chain = glue_atlas(chain);
  if (glued_chain->carrier_size() != 4) {
    note = "chain atlas glued to " + std::to_string(glued_chain->carrier_size()) + " points";
    return false;
  }
  note = "nil-square line recovered exactly; chain atlas has 4 points, not 6";
  return true;
}

bool criterion10(std::string& note) {
  auto line = nil_square_affine_algebra(ring_zmod(4), 1, 3);
  auto prod = product(line, line);
  auto plane = nil_square_affine_algebra(ring_zmod(4), 2, 3);
  if (!structurally_equal(*prod, *plane)) {
    note = "product structure differs from the nil-square plane";
    return false;
  }

  auto z4 = total_abelian_zmod(4, 3);
  IHom id = identity_hom(z4);
  IHom neg = is_ihom({0, 3, 2, 1}, z4, z4);
  SubObject eq = equalizer(id, neg);
  // oracle: enumerate fixed points of negation directly
  std::vector<int> fixed;
  for (int x = 0; x < 4; ++x)
    if (x == (4 - x) % 4) fixed.push_back(x);
  if (eq.inclusion.map != fixed) {
    note = "equalizer carrier differs from the enumerated fixed points";
    return false;
  }

  auto z2 = total_abelian_quotient(4, 2, 3);
  IHom mod2 = is_ihom({0, 1, 0, 1}, z4, z2);
  Congruence kp = kernel_pair(mod2);
  // oracle: count congruent pairs directly
  int pairs = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (x % 2 == y % 2) ++pairs;
  if (kp.rel->carrier_size() != pairs || kp.rel->istr() != indiscrete(pairs, 3)) {
    note = "kernel pair differs from the enumerated congruent pairs";
    return false;
  }
  note = "product = nil-square plane; equalizer {0,2}; kernel pair of 8 pairs, indiscrete";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "clone laws with counted operation sets", 10.0, criterion1},
      {2, "theory-clone round trip admits an arity-wise bijection", 60.0, criterion2},
      {3, "nil-square affine actions are valid i-algebras", 30.0, criterion3},
      {4, "wide pushouts of reflecting spans glue and are universal", 300.0, criterion4},
      {5, "coproduct size laws (disjoint unions and wedges)", 30.0, criterion5},
      {6, "congruence quotients match the kernel-pair characterization", 300.0, criterion6},
      {7, "regular epimorphisms are stable under pullback", 120.0, criterion7},
      {8, "counterexample suite reproduces its frozen values", 10.0, criterion8},
      {9, "atlas gluing recovers the nil-square line; chain glues to 4", 10.0, criterion9},
      {10, "limits: product, equalizer, kernel pair against enumeration", 10.0, criterion10},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < criterion.bound_seconds;
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%.2fs / %.0fs) %s\n", pass ? "PASS" : "FAIL",
                criterion.number, criterion.description.c_str(), seconds,
                criterion.bound_seconds, detail.c_str());
  }
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
