#include "infinialg/gallery.hpp"

#include <algorithm>
#include <map>

#include "infinialg/colimits.hpp"

namespace infinialg {

FiniteRing::FiniteRing(std::string name, std::vector<std::vector<int>> add,
                       std::vector<std::vector<int>> mul, int zero, int one)
    : name_(std::move(name)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
  int m = static_cast<int>(add_.size());
  if (m == 0 || static_cast<int>(mul_.size()) != m)
    throw DomainError("ring tables must be square and nonempty");
  auto at = [&](const std::vector<std::vector<int>>& t, int a, int b) {
    return t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  for (int a = 0; a < m; ++a)
    if (static_cast<int>(add_[static_cast<std::size_t>(a)].size()) != m ||
        static_cast<int>(mul_[static_cast<std::size_t>(a)].size()) != m)
      throw DomainError("ring tables must be square");
  for (int a = 0; a < m; ++a) {
    if (at(add_, a, zero_) != a) throw DomainError("zero is not an additive identity");
    if (at(mul_, a, one_) != a) throw DomainError("one is not a multiplicative identity");
    for (int b = 0; b < m; ++b) {
      if (at(add_, a, b) != at(add_, b, a)) throw DomainError("addition is not commutative");
      if (at(mul_, a, b) != at(mul_, b, a)) throw DomainError("multiplication is not commutative");
      for (int c = 0; c < m; ++c) {
        if (at(add_, at(add_, a, b), c) != at(add_, a, at(add_, b, c)))
          throw DomainError("addition is not associative");
        if (at(mul_, at(mul_, a, b), c) != at(mul_, a, at(mul_, b, c)))
          throw DomainError("multiplication is not associative");
        if (at(mul_, a, at(add_, b, c)) != at(add_, at(mul_, a, b), at(mul_, a, c)))
          throw DomainError("distributivity fails");
      }
    }
  }
  neg_.assign(static_cast<std::size_t>(m), -1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (at(add_, a, b) == zero_) neg_[static_cast<std::size_t>(a)] = b;
  for (int a = 0; a < m; ++a)
    if (neg_[static_cast<std::size_t>(a)] < 0) throw DomainError("missing additive inverse");
}

FiniteRing ring_zmod(int m) {
  if (m < 2) throw DomainError("ring_zmod needs modulus >= 2");
  std::vector<std::vector<int>> add(static_cast<std::size_t>(m),
                                    std::vector<int>(static_cast<std::size_t>(m)));
  auto mul = add;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a * b) % m;
    }
  return FiniteRing("zmod" + std::to_string(m), std::move(add), std::move(mul), 0, 1 % m);
}

std::vector<std::vector<int>> nil_square_set(const FiniteRing& r, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(static_cast<std::size_t>(k), 0);
  do {
    bool nil = true;
    for (int i = 0; i < k && nil; ++i)
      for (int j = 0; j < k && nil; ++j)
        nil = r.mul(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]) == r.zero();
    if (nil) out.push_back(d);
  } while (next_tuple(d, r.size()));
  return out;
}

namespace {

std::uint64_t power_checked(int base, int exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > limit) throw BudgetExceeded(v, "carrier R^k exceeds the tuple budget");
  }
  return v;
}

std::vector<std::string> point_names(const FiniteRing& r, int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(r.size());
  std::vector<std::string> names;
  names.reserve(count);
  for (std::uint64_t key = 0; key < count; ++key) {
    auto p = decode_tuple(key, r.size(), k);
    names.push_back("(" + join_ints(p) + ")");
  }
  return names;
}

}  // namespace

IStructure nil_square(const FiniteRing& r, int k, int n_max, const SearchBudget& budget) {
  if (k < 1) throw DomainError("nil_square needs k >= 1");
  std::uint64_t carrier = power_checked(r.size(), k, budget.max_tuples);
  auto nil = nil_square_set(r, k);
  std::vector<std::pair<int, int>> rel;
  // points indexed by encode_tuple over R^k; difference componentwise
  for (std::uint64_t pk = 0; pk < carrier; ++pk) {
    auto p = decode_tuple(pk, r.size(), k);
    for (const auto& d : nil) {
      std::vector<int> q(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        q[static_cast<std::size_t>(i)] = r.add(p[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)]);
      rel.emplace_back(static_cast<int>(pk), static_cast<int>(encode_tuple(q, r.size())));
    }
  }
  return generate_from_binary(static_cast<int>(carrier), rel, n_max, point_names(r, k));
}

// ---- coefficient clones ----

AffineClone::AffineClone(FiniteRing ring, int n_max, const SearchBudget& budget)
    : AffineClone(std::move(ring), n_max, /*affine_only=*/true, budget) {}

AffineClone::AffineClone(FiniteRing ring, int n_max, bool affine_only, const SearchBudget& budget)
    : ring_(std::move(ring)), n_max_(n_max) {
  ops_.resize(static_cast<std::size_t>(n_max_ + 1));
  index_map_.resize(static_cast<std::size_t>(n_max_ + 1));
  for (int n = 0; n <= n_max_; ++n) {
    std::uint64_t keys = power_checked(ring_.size(), n, budget.max_tuples);
    index_map_[static_cast<std::size_t>(n)].assign(keys, -1);
    std::vector<int> coeffs(static_cast<std::size_t>(n), 0);
    std::uint64_t key = 0;  // next_tuple enumerates keys 0,1,2,... base |R|
    bool more = true;
    while (more) {
      int sum = ring_.zero();
      for (int c : coeffs) sum = ring_.add(sum, c);
      if ((!affine_only || sum == ring_.one()) && !(n == 0 && affine_only)) {
        index_map_[static_cast<std::size_t>(n)][key] =
            static_cast<OpId>(ops_[static_cast<std::size_t>(n)].size());
        ops_[static_cast<std::size_t>(n)].push_back(coeffs);
      }
      more = n > 0 && next_tuple(coeffs, ring_.size());
      ++key;
    }
  }
}

OpId AffineClone::subst(int n, int k, OpId sigma, std::span<const OpId> args) const {
  const auto& s = ops_[static_cast<std::size_t>(n)][static_cast<std::size_t>(sigma)];
  int out[kMaxDeclaredArity] = {};
  for (int j = 0; j < k; ++j) out[j] = ring_.zero();
  for (int i = 0; i < n; ++i) {
    const auto& t = ops_[static_cast<std::size_t>(k)][static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
    int si = s[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j) out[j] = ring_.add(out[j], ring_.mul(si, t[static_cast<std::size_t>(j)]));
  }
  std::uint64_t key = 0, mul = 1;
  for (int j = 0; j < k; ++j) {
    key += static_cast<std::uint64_t>(out[j]) * mul;
    mul *= static_cast<std::uint64_t>(ring_.size());
  }
  OpId idx = index_map_[static_cast<std::size_t>(k)][key];
  if (idx < 0) throw InternalInconsistency("coefficient tuple fell outside the clone");
  return idx;
}

OpId AffineClone::proj(int n, int j) const {
  std::uint64_t key = 1;
  for (int i = 1; i < j; ++i) key *= static_cast<std::uint64_t>(ring_.size());
  OpId idx = index_map_[static_cast<std::size_t>(n)][key * static_cast<std::uint64_t>(ring_.one())];
  if (idx < 0) throw InternalInconsistency("projection tuple fell outside the clone");
  return idx;
}

std::string AffineClone::op_name(int n, OpId op) const {
  return "(" + join_ints(ops_[static_cast<std::size_t>(n)][static_cast<std::size_t>(op)]) + ")";
}

AbelianExpClone::AbelianExpClone(int modulus, int n_max, const SearchBudget& budget)
    : AffineClone(ring_zmod(modulus), n_max, /*affine_only=*/false, budget) {}

std::shared_ptr<const AffineClone> affine_clone(const FiniteRing& r, int n_max,
                                                const SearchBudget& budget) {
  return std::make_shared<AffineClone>(r, n_max, budget);
}

std::shared_ptr<const AbelianExpClone> abelian_exp_clone(int modulus, int n_max,
                                                         const SearchBudget& budget) {
  return std::make_shared<AbelianExpClone>(modulus, n_max, budget);
}

// ---- stock algebras ----

IAlgebraPtr nil_square_affine_algebra(const FiniteRing& r, int k, int n_max) {
  auto clone = affine_clone(r, n_max);
  IStructure istr = nil_square(r, k, n_max);
  auto act = [clone, &r, k](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone->coefficients(n, sigma);
    std::vector<int> out(static_cast<std::size_t>(k), r.zero());
    for (int i = 0; i < n; ++i) {
      auto p = decode_tuple(static_cast<std::uint64_t>(tuple[static_cast<std::size_t>(i)]),
                            r.size(), k);
      for (int j = 0; j < k; ++j)
        out[static_cast<std::size_t>(j)] =
            r.add(out[static_cast<std::size_t>(j)],
                  r.mul(coeffs[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]));
    }
    return static_cast<int>(encode_tuple(out, r.size()));
  };
  return std::make_shared<IAlgebra>(clone, std::move(istr), act);
}

IAlgebraPtr total_affine_line(const FiniteRing& r, int n_max) {
  auto clone = affine_clone(r, n_max);
  auto act = [clone, &r](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone->coefficients(n, sigma);
    int out = r.zero();
    for (int i = 0; i < n; ++i)
      out = r.add(out, r.mul(coeffs[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(i)]));
    return out;
  };
  return std::make_shared<IAlgebra>(clone, indiscrete(r.size(), n_max), act);
}

IAlgebraPtr total_abelian_zmod(int modulus, int n_max) {
  return total_abelian_quotient(modulus, modulus, n_max);
}

IAlgebraPtr total_abelian_quotient(int modulus, int p, int n_max) {
  if (modulus % p != 0) throw DomainError("quotient modulus must divide the exponent");
  auto clone = abelian_exp_clone(modulus, n_max);
  auto act = [clone, p](int n, OpId sigma, std::span<const int> tuple) {
    const auto& coeffs = clone->coefficients(n, sigma);
    int out = 0;
    for (int i = 0; i < n; ++i)
      out = (out + coeffs[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)]) % p;
    return out;
  };
  return std::make_shared<IAlgebra>(clone, indiscrete(p, n_max), act);
}

// ---- counterexample suite ----

namespace {

std::string partition_str(const std::vector<std::vector<int>>& classes) {
  std::string out = "{";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += ",";
    out += "{" + join_ints(classes[i]) + "}";
  }
  return out + "}";
}

// Set-level coequalizer of two carrier maps into the same codomain:
// partition generated by f(x) ~ g(x).
std::vector<std::vector<int>> set_coequalizer_classes(std::span<const int> f,
                                                      std::span<const int> g, int codomain) {
  std::vector<int> parent(static_cast<std::size_t>(codomain));
  for (int i = 0; i < codomain; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    int a = find(f[i]), b = find(g[i]);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < codomain; ++i) classes[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  return out;
}

}  // namespace

std::vector<FixtureReport> counterexample_suite() {
  std::vector<FixtureReport> reports;

  {  // (a) Set coequalizer vs algebra quotient on Z/4.
    FixtureReport rep;
    rep.name = "coeq_totals";
    rep.description =
        "Z/4 analogue of the classical phenomenon on the integers: the coequalizer of the "
        "zero map and doubling is Z/2 among abelian groups but the three-point set "
        "{[0,2],[1],[3]} in Set, so the quotient is not computed from the underlying sets "
        "even though both maps reflect i-structure.";
    auto z4 = total_abelian_zmod(4);
    std::vector<int> zero_map = {0, 0, 0, 0};
    std::vector<int> doubling = {0, 2, 0, 2};  // z -> 2z mod 4
    IHom f = is_ihom(zero_map, z4, z4);
    IHom g = is_ihom(doubling, z4, z4);
    auto set_classes = set_coequalizer_classes(f.map, g.map, 4);
    Congruence cg = congruence_from_parallel_pair(f, g);
    CoconeResult quotient = coequalizer_congruence(cg);
    rep.expected.emplace_back("set_coequalizer_classes", "3");
    rep.expected.emplace_back("algebra_quotient_carrier", "2");
    rep.expected.emplace_back("f_reflects_and_g_reflects", "true");
    rep.actual.emplace_back("set_coequalizer_classes", std::to_string(set_classes.size()));
    rep.actual.emplace_back("algebra_quotient_carrier",
                            std::to_string(quotient.apex->carrier_size()));
    rep.actual.emplace_back("f_reflects_and_g_reflects",
                            f.reflects && g.reflects ? "true" : "false");
    rep.actual.emplace_back("set_partition", partition_str(set_classes));
    rep.pass = set_classes.size() == 3 && quotient.apex->carrier_size() == 2 && f.reflects &&
               g.reflects;
    reports.push_back(std::move(rep));
  }

  {  // (b) A congruence that is not a kernel pair.
    FixtureReport rep;
    rep.name = "not_kernel_pair";
    rep.description =
        "The projections from A x A with the discrete i-structure onto the total affine line "
        "A = Z/3 form a congruence that does not jointly reflect i-structure, so its quotient "
        "does not lift; yet the underlying Set quotient A -> 1 lifts to the one-point total "
        "algebra, exhibited explicitly.";
    auto a = total_affine_line(ring_zmod(3));
    std::vector<std::pair<int, int>> all_pairs;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) all_pairs.emplace_back(x, y);
    Congruence cg = congruence_from_pairs(a, all_pairs, RelStructure::Discrete);
    bool kernel = is_kernel_pair(cg);
    bool raised = false;
    std::string witness;
    try {
      coequalizer_congruence(cg);
    } catch (const JointReflectionFailure& e) {
      raised = true;
      witness = "(" + join_ints(e.witness) + ")";
    }
    // The Set quotient A -> 1 lifts: the one-point total affine algebra.
    auto clone = a->clone();
    auto point = std::make_shared<IAlgebra>(
        clone, indiscrete(1, a->n_max()),
        [](int, OpId, std::span<const int>) { return 0; });
    IHom to_point = is_ihom(std::vector<int>{0, 0, 0}, a, point);
    rep.expected.emplace_back("is_kernel_pair", "false");
    rep.expected.emplace_back("joint_reflection_failure_raised", "true");
    rep.expected.emplace_back("one_point_lift_accepted", "true");
    rep.actual.emplace_back("is_kernel_pair", kernel ? "true" : "false");
    rep.actual.emplace_back("joint_reflection_failure_raised", raised ? "true" : "false");
    rep.actual.emplace_back("one_point_lift_accepted", to_point.accepted() ? "true" : "false");
    if (!witness.empty()) rep.actual.emplace_back("witness", witness);
    rep.pass = !kernel && raised && to_point.accepted();
    reports.push_back(std::move(rep));
  }

  {  // (c) An accepted homomorphism that does not reflect i-structure.
    FixtureReport rep;
    rep.name = "non_reflecting_identity";
    rep.description =
        "The identity from the discrete affine Z/3 to the total affine Z/3 is an accepted "
        "homomorphism but reflects no i-structure once the carrier has more than one point; "
        "it is epi and mono yet not a regular epimorphism.";
    FiniteRing z3 = ring_zmod(3);
    auto clone = affine_clone(z3, kDefaultNMax);
    auto disc = std::make_shared<IAlgebra>(
        clone, discrete(3, kDefaultNMax),
        [](int, OpId, std::span<const int> tuple) { return tuple.empty() ? 0 : tuple[0]; });
    auto total = total_affine_line(z3);
    IHom id = is_ihom(std::vector<int>{0, 1, 2}, disc, total);
    rep.expected.emplace_back("accepted", "true");
    rep.expected.emplace_back("reflects", "false");
    rep.expected.emplace_back("is_regular_epi", "false");
    rep.actual.emplace_back("accepted", id.accepted() ? "true" : "false");
    rep.actual.emplace_back("reflects", id.reflects ? "true" : "false");
    rep.actual.emplace_back("is_regular_epi", is_regular_epi(id) ? "true" : "false");
    rep.pass = id.accepted() && !id.reflects && !is_regular_epi(id);
    reports.push_back(std::move(rep));
  }

  return reports;
}

}  // namespace infinialg
