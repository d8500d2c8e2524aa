#include "infinialg/colimits.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace infinialg {
namespace {

template <typename Fn>
void for_each_tuple(const IStructure& s, int m, Fn&& fn) {
  if (m == 0) {
    fn(std::vector<int>{});
    return;
  }
  if (m == 1) {
    for (int a = 0; a < s.carrier_size(); ++a) fn(std::vector<int>{a});
    return;
  }
  for (std::uint64_t key : s.tuples(m)) fn(decode_tuple(key, s.carrier_size(), m));
}

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

  // class index per element, classes ordered by least member.
  std::vector<int> classes(int* count_out = nullptr) {
    std::vector<int> index(parent.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      int root = find(static_cast<int>(i));
      if (index[static_cast<std::size_t>(root)] < 0) index[static_cast<std::size_t>(root)] = next++;
      index[i] = index[static_cast<std::size_t>(root)];
    }
    if (count_out) *count_out = next;
    return index;
  }
};

// Action tables for a quotient-style apex, built from witness images and
// cross-checked over every witness.
class WitnessTables {
 public:
  WitnessTables(const Clone& c, int n_max)
      : clone_(c), tables_(static_cast<std::size_t>(n_max + 1)) {}

  // Records q(sigma . x) for the apex tuple `key`; throws on disagreement.
  void record(int n, std::uint64_t key, OpId sigma, int result, const std::string& context) {
    auto& slot = tables_[static_cast<std::size_t>(n)][key];
    if (slot.empty()) slot.assign(static_cast<std::size_t>(clone_.op_count(n)), -1);
    int& cell = slot[static_cast<std::size_t>(sigma)];
    if (cell < 0) {
      cell = result;
    } else if (cell != result) {
      throw InternalInconsistency("witnesses disagree at " + context + ": " +
                                  std::to_string(cell) + " vs " + std::to_string(result));
    }
  }

  int lookup(int n, std::uint64_t key, OpId sigma) const {
    auto it = tables_[static_cast<std::size_t>(n)].find(key);
    if (it == tables_[static_cast<std::size_t>(n)].end() ||
        it->second[static_cast<std::size_t>(sigma)] < 0)
      throw InternalInconsistency("apex tuple has no witness at arity " + std::to_string(n));
    return it->second[static_cast<std::size_t>(sigma)];
  }

 private:
  const Clone& clone_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> tables_;
};

std::vector<int> apply_map(std::span<const int> f, std::span<const int> tuple) {
  std::vector<int> out(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i)
    out[i] = f[static_cast<std::size_t>(tuple[i])];
  return out;
}

}  // namespace

// ---- congruences ----

void validate_congruence(const Congruence& cg) {
  const IHom &p1 = cg.p1, &p2 = cg.p2;
  if (p1.source.get() != cg.rel.get() || p2.source.get() != cg.rel.get())
    throw NotACongruence("projections must share the relation carrier as source");
  if (p1.target.get() != p2.target.get())
    throw NotACongruence("projections must share their target");
  if (!p1.accepted() || !p2.accepted())
    throw NotACongruence("projections must be accepted homomorphisms");

  int a_size = p1.target->carrier_size();
  std::set<std::pair<int, int>> pairs;
  for (int y = 0; y < cg.rel->carrier_size(); ++y)
    if (!pairs.emplace(p1(y), p2(y)).second)
      throw NotACongruence("(p1,p2) is not jointly injective");
  for (int a = 0; a < a_size; ++a)
    if (!pairs.count({a, a})) throw NotACongruence("relation is not reflexive");
  for (const auto& [a, b] : pairs)
    if (!pairs.count({b, a})) throw NotACongruence("relation is not symmetric");
  for (const auto& [a, b] : pairs)
    for (int c = 0; c < a_size; ++c)
      if (pairs.count({b, c}) && !pairs.count({a, c}))
        throw NotACongruence("relation is not transitive");
}

bool jointly_reflect(const Congruence& cg) {
  const IStructure& rs = cg.rel->istr();
  const IStructure& as = cg.p1.target->istr();
  for (int n = 2; n <= rs.n_max(); ++n) {
    if (cg.rel->carrier_size() == 0) continue;
    std::vector<int> y(static_cast<std::size_t>(n), 0);
    do {
      auto im1 = apply_map(cg.p1.map, y);
      auto im2 = apply_map(cg.p2.map, y);
      if (as.contains(im1) && as.contains(im2) && !rs.contains(y)) return false;
    } while (next_tuple(y, cg.rel->carrier_size()));
  }
  return true;
}

namespace {

std::optional<std::vector<int>> joint_reflection_witness(const Congruence& cg) {
  const IStructure& rs = cg.rel->istr();
  const IStructure& as = cg.p1.target->istr();
  for (int n = 2; n <= rs.n_max(); ++n) {
    if (cg.rel->carrier_size() == 0) continue;
    std::vector<int> y(static_cast<std::size_t>(n), 0);
    do {
      auto im1 = apply_map(cg.p1.map, y);
      auto im2 = apply_map(cg.p2.map, y);
      if (as.contains(im1) && as.contains(im2) && !rs.contains(y)) return y;
    } while (next_tuple(y, cg.rel->carrier_size()));
  }
  return std::nullopt;
}

}  // namespace

Congruence congruence_from_pairs(IAlgebraPtr a, const std::vector<std::pair<int, int>>& pairs_in,
                                 RelStructure structure) {
  std::set<std::pair<int, int>> pairs(pairs_in.begin(), pairs_in.end());
  for (int x = 0; x < a->carrier_size(); ++x)
    if (!pairs.count({x, x})) throw NotACongruence("pair set is not reflexive");
  for (const auto& [x, y] : pairs) {
    if (x < 0 || x >= a->carrier_size() || y < 0 || y >= a->carrier_size())
      throw NotACongruence("pair entry outside carrier");
    if (!pairs.count({y, x})) throw NotACongruence("pair set is not symmetric");
  }
  for (const auto& [x, y] : pairs)
    for (int z = 0; z < a->carrier_size(); ++z)
      if (pairs.count({y, z}) && !pairs.count({x, z}))
        throw NotACongruence("pair set is not transitive");

  std::vector<std::pair<int, int>> carrier(pairs.begin(), pairs.end());
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    index.emplace(carrier[i], static_cast<int>(i));

  int r_size = static_cast<int>(carrier.size());
  int N = a->n_max();
  std::vector<std::string> names;
  names.reserve(carrier.size());
  for (const auto& [x, y] : carrier)
    names.push_back("(" + a->istr().name(x) + "," + a->istr().name(y) + ")");

  IStructure rs(r_size, N, std::move(names));
  if (structure == RelStructure::Discrete) {
    rs = discrete(r_size, N, rs.names());
  } else {
    for (int n = 2; n <= N; ++n) {
      if (r_size == 0) continue;
      std::vector<int> y(static_cast<std::size_t>(n), 0);
      do {
        std::vector<int> firsts(static_cast<std::size_t>(n)), seconds(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          firsts[static_cast<std::size_t>(i)] = carrier[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])].first;
          seconds[static_cast<std::size_t>(i)] = carrier[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])].second;
        }
        if (a->istr().contains(firsts) && a->istr().contains(seconds)) rs.insert(y);
      } while (next_tuple(y, r_size));
    }
    rs.normalize();
  }

  auto act = [&a, &carrier, &index](int n, OpId sigma, std::span<const int> y) -> int {
    std::vector<int> firsts(y.size()), seconds(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      firsts[i] = carrier[static_cast<std::size_t>(y[i])].first;
      seconds[i] = carrier[static_cast<std::size_t>(y[i])].second;
    }
    std::pair<int, int> result = {a->act(n, sigma, firsts), a->act(n, sigma, seconds)};
    auto it = index.find(result);
    if (it == index.end())
      throw NotACongruence("pair set is not compatible with the action: image (" +
                           std::to_string(result.first) + "," + std::to_string(result.second) +
                           ") escapes the relation");
    return it->second;
  };

  Congruence cg;
  auto rel = std::make_shared<IAlgebra>(a->clone(), std::move(rs), act);
  // Product-restricted relations inherit the axioms from A x A; a discrete
  // relation can break the neighbourhood axiom, so it gets checked.
  if (structure == RelStructure::Discrete) {
    ValidationReport report = validate_ialgebra(*rel);
    if (!report.ok())
      throw NotACongruence("discrete relation is not an i-algebra: " +
                           report.violations.front().witness);
  }
  std::vector<int> m1(carrier.size()), m2(carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    m1[i] = carrier[i].first;
    m2[i] = carrier[i].second;
  }
  cg.rel = rel;
  cg.p1 = is_ihom(std::move(m1), rel, a);
  cg.p2 = is_ihom(std::move(m2), rel, a);
  validate_congruence(cg);
  return cg;
}

Congruence congruence_generated_by(IAlgebraPtr a, const std::vector<std::pair<int, int>>& pairs,
                                   RelStructure structure) {
  const Clone& c = *a->clone();
  UnionFind uf(a->carrier_size());
  for (const auto& [x, y] : pairs) uf.unite(x, y);

  // Close under the action: related neighbour tuples must have related images.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n <= a->n_max(); ++n) {
      if (c.op_count(n) == 0) continue;
      std::vector<std::vector<int>> tuples;
      for_each_tuple(a->istr(), n, [&](const std::vector<int>& x) { tuples.push_back(x); });
      for (const auto& x : tuples) {
        for (const auto& y : tuples) {
          bool related = true;
          for (std::size_t i = 0; i < x.size() && related; ++i)
            related = uf.find(x[i]) == uf.find(y[i]);
          if (!related) continue;
          for (OpId sigma = 0; sigma < c.op_count(n); ++sigma)
            if (uf.unite(a->act(n, sigma, x), a->act(n, sigma, y))) changed = true;
        }
      }
    }
  }

  std::vector<std::pair<int, int>> closure;
  for (int x = 0; x < a->carrier_size(); ++x)
    for (int y = 0; y < a->carrier_size(); ++y)
      if (uf.find(x) == uf.find(y)) closure.emplace_back(x, y);
  return congruence_from_pairs(std::move(a), closure, structure);
}

Congruence congruence_from_parallel_pair(const IHom& f, const IHom& g) {
  if (!f.accepted() || !g.accepted()) throw DomainError("parallel pair must be accepted");
  if (f.source.get() != g.source.get() || f.target.get() != g.target.get())
    throw DomainError("maps are not a parallel pair");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t x = 0; x < f.map.size(); ++x) pairs.emplace_back(f.map[x], g.map[x]);
  return congruence_generated_by(f.target, pairs, RelStructure::ProductRestricted);
}

// ---- limits ----

IAlgebraPtr initial_object(ClonePtr c, int n_max) {
  int constants = c->op_count(0);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(constants));
  for (OpId i = 0; i < constants; ++i) names.push_back(c->op_name(0, i));
  ClonePtr clone = c;
  auto act = [clone](int n, OpId sigma, std::span<const int> tuple) {
    return clone->subst(n, 0, sigma, tuple);
  };
  return std::make_shared<IAlgebra>(c, indiscrete(constants, n_max, std::move(names)), act);
}

IHom initial_morphism(IAlgebraPtr target) {
  IAlgebraPtr init = initial_object(target->clone(), target->n_max());
  std::vector<int> map(static_cast<std::size_t>(init->carrier_size()));
  for (OpId sigma = 0; sigma < init->carrier_size(); ++sigma)
    map[static_cast<std::size_t>(sigma)] = target->act(0, sigma, {});
  return is_ihom(std::move(map), init, target);
}

IAlgebraPtr product(IAlgebraPtr a, IAlgebraPtr b) {
  if (!same_clone(*a->clone(), *b->clone()))
    throw DifferentClones("product factors live over different clones");
  int N = a->n_max();
  int bs = b->carrier_size();
  int size = a->carrier_size() * bs;
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(size));
  for (int x = 0; x < a->carrier_size(); ++x)
    for (int y = 0; y < bs; ++y)
      names.push_back("(" + a->istr().name(x) + "," + b->istr().name(y) + ")");

  IStructure istr(size, N, std::move(names));
  for (int n = 2; n <= N; ++n) {
    for (std::uint64_t ka : a->istr().tuples(n)) {
      auto ta = decode_tuple(ka, a->carrier_size(), n);
      for (std::uint64_t kb : b->istr().tuples(n)) {
        auto tb = decode_tuple(kb, bs, n);
        std::vector<int> tuple(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          tuple[static_cast<std::size_t>(i)] =
              ta[static_cast<std::size_t>(i)] * bs + tb[static_cast<std::size_t>(i)];
        istr.insert(tuple);
      }
    }
  }
  istr.normalize();

  auto act = [a, b, bs](int n, OpId sigma, std::span<const int> tuple) {
    std::vector<int> xs(tuple.size()), ys(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      xs[i] = tuple[i] / bs;
      ys[i] = tuple[i] % bs;
    }
    return a->act(n, sigma, xs) * bs + b->act(n, sigma, ys);
  };
  return std::make_shared<IAlgebra>(a->clone(), std::move(istr), act);
}

std::optional<SubObject> sub_algebra(IAlgebraPtr a, const std::vector<int>& subset_in) {
  std::vector<int> subset = subset_in;
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<int> position(static_cast<std::size_t>(a->carrier_size()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= a->carrier_size())
      throw DomainError("subset element outside carrier");
    position[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
  }

  int N = a->n_max();
  std::vector<std::string> names;
  for (int x : subset) names.push_back(a->istr().name(x));
  IStructure istr(static_cast<int>(subset.size()), N, std::move(names));
  for (int n = 2; n <= N; ++n) {
    for (std::uint64_t key : a->istr().tuples(n)) {
      auto tuple = decode_tuple(key, a->carrier_size(), n);
      std::vector<int> local(static_cast<std::size_t>(n));
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) {
        int p = position[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
        inside = p >= 0;
        local[static_cast<std::size_t>(i)] = p;
      }
      if (inside) istr.insert(local);
    }
  }
  istr.normalize();

  // The restricted action must stay inside the subset.
  const Clone& c = *a->clone();
  bool closed = true;
  for (int n = 0; n <= N && closed; ++n) {
    for_each_tuple(istr, n, [&](const std::vector<int>& local) {
      if (!closed) return;
      std::vector<int> global(local.size());
      for (std::size_t i = 0; i < local.size(); ++i)
        global[i] = subset[static_cast<std::size_t>(local[i])];
      for (OpId sigma = 0; sigma < c.op_count(n); ++sigma)
        if (position[static_cast<std::size_t>(a->act(n, sigma, global))] < 0) {
          closed = false;
          return;
        }
    });
  }
  if (!closed) return std::nullopt;

  auto act = [a, subset](int n, OpId sigma, std::span<const int> local) {
    std::vector<int> global(local.size());
    for (std::size_t i = 0; i < local.size(); ++i)
      global[i] = subset[static_cast<std::size_t>(local[i])];
    int value = a->act(n, sigma, global);
    auto it = std::lower_bound(subset.begin(), subset.end(), value);
    return static_cast<int>(it - subset.begin());
  };
  SubObject out;
  out.algebra = std::make_shared<IAlgebra>(a->clone(), std::move(istr), act);
  out.inclusion = is_ihom(subset, out.algebra, a);
  return out;
}

SubObject equalizer(const IHom& f, const IHom& g) {
  if (!f.accepted() || !g.accepted()) throw DomainError("equalizer needs accepted maps");
  if (f.source.get() != g.source.get() || f.target.get() != g.target.get())
    throw DomainError("maps are not a parallel pair");
  std::vector<int> subset;
  for (int x = 0; x < f.source->carrier_size(); ++x)
    if (f(x) == g(x)) subset.push_back(x);
  auto sub = sub_algebra(f.source, subset);
  if (!sub)
    throw InternalInconsistency("equalizer carrier is not action-closed despite equivariance");
  return *sub;
}

Congruence kernel_pair(const IHom& f) {
  if (!f.accepted()) throw DomainError("kernel pair needs an accepted map");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < f.source->carrier_size(); ++x)
    for (int y = 0; y < f.source->carrier_size(); ++y)
      if (f(x) == f(y)) pairs.emplace_back(x, y);
  return congruence_from_pairs(f.source, pairs, RelStructure::ProductRestricted);
}

PullbackResult pullback(const IHom& f, const IHom& g) {
  if (!f.accepted() || !g.accepted()) throw DomainError("pullback needs accepted maps");
  if (f.target.get() != g.target.get() && !structurally_equal(*f.target, *g.target))
    throw DifferentClones("pullback legs need a common codomain");
  IAlgebraPtr b = f.source, a = g.source;
  int N = b->n_max();
  std::vector<std::pair<int, int>> carrier;  // (b, a)
  for (int x = 0; x < b->carrier_size(); ++x)
    for (int y = 0; y < a->carrier_size(); ++y)
      if (f(x) == g(y)) carrier.emplace_back(x, y);

  std::map<std::pair<int, int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    index.emplace(carrier[i], static_cast<int>(i));
    names.push_back("(" + b->istr().name(carrier[i].first) + "," +
                    a->istr().name(carrier[i].second) + ")");
  }

  int size = static_cast<int>(carrier.size());
  IStructure istr(size, N, std::move(names));
  for (int n = 2; n <= N; ++n) {
    if (size == 0) continue;
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    do {
      std::vector<int> bs(static_cast<std::size_t>(n)), as(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        bs[static_cast<std::size_t>(i)] = carrier[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])].first;
        as[static_cast<std::size_t>(i)] = carrier[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])].second;
      }
      if (b->istr().contains(bs) && a->istr().contains(as)) istr.insert(tuple);
    } while (next_tuple(tuple, size));
  }
  istr.normalize();

  auto act = [b, a, carrier, index](int n, OpId sigma, std::span<const int> tuple) {
    std::vector<int> bs(tuple.size()), as(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      bs[i] = carrier[static_cast<std::size_t>(tuple[i])].first;
      as[i] = carrier[static_cast<std::size_t>(tuple[i])].second;
    }
    auto it = index.find({b->act(n, sigma, bs), a->act(n, sigma, as)});
    if (it == index.end())
      throw InternalInconsistency("pullback carrier not action-closed");
    return it->second;
  };

  PullbackResult out;
  auto apex = std::make_shared<IAlgebra>(b->clone(), std::move(istr), act);
  std::vector<int> to_b(carrier.size()), to_a(carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    to_b[i] = carrier[i].first;
    to_a[i] = carrier[i].second;
  }
  out.apex = apex;
  out.to_f_source = is_ihom(std::move(to_b), apex, b);
  out.to_g_source = is_ihom(std::move(to_a), apex, a);
  return out;
}

// ---- colimits ----

CoconeResult wide_pushout(IAlgebraPtr a, const std::vector<IHom>& legs) {
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const IHom& leg = legs[i];
    if (leg.source.get() != a.get() && !structurally_equal(*leg.source, *a))
      throw InvalidLeg(static_cast<int>(i), "source is not the pushout vertex");
    if (!leg.accepted()) throw InvalidLeg(static_cast<int>(i), "not an accepted homomorphism");
    if (!leg.reflects) throw LegNotReflecting(static_cast<int>(i));
  }
  CoconeResult result;
  if (legs.empty()) {
    result.apex = a;
    result.construction_log.push_back("no legs: apex is the vertex itself");
    return result;
  }

  const Clone& c = *a->clone();
  int N = a->n_max();
  std::vector<int> offset(legs.size());
  int total = 0;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    offset[i] = total;
    total += legs[i].target->carrier_size();
  }

  // zig-zag closure of {(f(x), g(x))}
  UnionFind uf(total);
  for (int x = 0; x < a->carrier_size(); ++x)
    for (std::size_t i = 1; i < legs.size(); ++i)
      if (uf.unite(legs[0](x) + offset[0], legs[i](x) + offset[i]))
        result.construction_log.push_back(
            "identify leg0:" + legs[0].target->istr().name(legs[0](x)) + " ~ leg" +
            std::to_string(i) + ":" + legs[i].target->istr().name(legs[i](x)) + " via vertex " +
            a->istr().name(x));

  int classes = 0;
  std::vector<int> cls = uf.classes(&classes);
  std::vector<std::vector<int>> q(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    q[i].resize(static_cast<std::size_t>(legs[i].target->carrier_size()));
    for (int e = 0; e < legs[i].target->carrier_size(); ++e)
      q[i][static_cast<std::size_t>(e)] = cls[static_cast<std::size_t>(e + offset[i])];
  }

  // names: least disjoint-union member of each class
  std::vector<std::string> names(static_cast<std::size_t>(classes));
  for (std::size_t i = legs.size(); i-- > 0;)
    for (int e = legs[static_cast<std::size_t>(i)].target->carrier_size(); e-- > 0;)
      names[static_cast<std::size_t>(q[i][static_cast<std::size_t>(e)])] =
          std::to_string(i) + ":" + legs[i].target->istr().name(e);

  // i-structure: join of the leg images
  IStructure istr(classes, N, names);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const IStructure& bi = legs[i].target->istr();
    for (int n = 2; n <= N; ++n)
      for (std::uint64_t key : bi.tuples(n)) {
        auto tuple = decode_tuple(key, bi.carrier_size(), n);
        istr.insert(apply_map(q[i], tuple));
      }
  }
  istr.normalize();

  // action from witnesses, cross-checked over all of them
  WitnessTables tables(c, N);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    IAlgebraPtr bi = legs[i].target;
    for (int n = 0; n <= N; ++n) {
      if (c.op_count(n) == 0) continue;
      for_each_tuple(bi->istr(), n, [&](const std::vector<int>& x) {
        auto image = apply_map(q[i], x);
        std::uint64_t key = encode_tuple(image, classes);
        for (OpId sigma = 0; sigma < c.op_count(n); ++sigma)
          tables.record(n, key, sigma,
                        q[i][static_cast<std::size_t>(bi->act(n, sigma, x))],
                        "arity " + std::to_string(n) + " tuple (" + join_ints(image) + ")");
      });
    }
  }

  auto act = [tables = std::make_shared<WitnessTables>(std::move(tables)), classes](
                 int n, OpId sigma, std::span<const int> tuple) {
    return tables->lookup(n, encode_tuple(tuple, classes), sigma);
  };
  result.apex = std::make_shared<IAlgebra>(a->clone(), std::move(istr), act);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    result.legs.push_back(is_ihom(q[i], legs[i].target, result.apex));
    if (!result.legs.back().accepted())
      throw InternalInconsistency("cocone leg " + std::to_string(i) + " rejected");
  }
  result.construction_log.push_back("apex carrier size " + std::to_string(classes));
  return result;
}

CoconeResult coproduct(ClonePtr c, const std::vector<IAlgebraPtr>& factors, int n_max) {
  IAlgebraPtr init = initial_object(std::move(c), n_max);
  std::vector<IHom> legs;
  legs.reserve(factors.size());
  for (const auto& f : factors) {
    IHom leg = initial_morphism(f);
    leg.source = init;  // one shared vertex instance
    legs.push_back(std::move(leg));
  }
  return wide_pushout(init, legs);
}

CoconeResult coequalizer_congruence(const Congruence& cg) {
  validate_congruence(cg);
  if (auto witness = joint_reflection_witness(cg))
    throw JointReflectionFailure(*witness, "projections do not jointly reflect i-structure at (" +
                                               join_ints(*witness) + ")");

  IAlgebraPtr a = cg.p1.target;
  const Clone& c = *a->clone();
  int N = a->n_max();
  UnionFind uf(a->carrier_size());
  for (int y = 0; y < cg.rel->carrier_size(); ++y) uf.unite(cg.p1(y), cg.p2(y));
  int classes = 0;
  std::vector<int> q = uf.classes(&classes);

  std::vector<std::string> names(static_cast<std::size_t>(classes));
  for (int x = a->carrier_size(); x-- > 0;)
    names[static_cast<std::size_t>(q[static_cast<std::size_t>(x)])] = a->istr().name(x);

  IStructure istr = image_istructure(q, a->istr(), classes, names);

  WitnessTables tables(c, N);
  for (int n = 0; n <= N; ++n) {
    if (c.op_count(n) == 0) continue;
    for_each_tuple(a->istr(), n, [&](const std::vector<int>& x) {
      auto image = apply_map(q, x);
      std::uint64_t key = encode_tuple(image, classes);
      for (OpId sigma = 0; sigma < c.op_count(n); ++sigma)
        tables.record(n, key, sigma, q[static_cast<std::size_t>(a->act(n, sigma, x))],
                      "arity " + std::to_string(n) + " tuple (" + join_ints(image) + ")");
    });
  }

  CoconeResult result;
  auto act = [tables = std::make_shared<WitnessTables>(std::move(tables)), classes](
                 int n, OpId sigma, std::span<const int> tuple) {
    return tables->lookup(n, encode_tuple(tuple, classes), sigma);
  };
  result.apex = std::make_shared<IAlgebra>(a->clone(), std::move(istr), act);
  result.legs.push_back(is_ihom(q, a, result.apex));
  if (!result.legs.back().accepted())
    throw InternalInconsistency("quotient map rejected as a homomorphism");
  result.construction_log.push_back("quotient classes: " + std::to_string(classes));
  return result;
}

bool is_kernel_pair(const Congruence& cg) {
  validate_congruence(cg);
  return jointly_reflect(cg);
}

bool is_regular_epi(const IHom& q) {
  if (!q.accepted()) return false;
  std::vector<bool> hit(static_cast<std::size_t>(q.target->carrier_size()), false);
  for (int v : q.map) hit[static_cast<std::size_t>(v)] = true;
  for (bool h : hit)
    if (!h) return false;
  IStructure image = image_istructure(q.map, q.source->istr(), q.target->carrier_size(),
                                      q.target->istr().names());
  return image == q.target->istr();
}

// ---- atlases ----

namespace {

int chart_with_subset(const Atlas& at, const std::vector<int>& subset) {
  for (std::size_t i = 0; i < at.charts.size(); ++i)
    if (at.charts[i].subset == subset) return static_cast<int>(i);
  return -1;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// inclusion map between charts, in local indices
std::vector<int> inclusion_map(const std::vector<int>& small, const std::vector<int>& big) {
  std::vector<int> map;
  map.reserve(small.size());
  for (int x : small) {
    auto it = std::lower_bound(big.begin(), big.end(), x);
    if (it == big.end() || *it != x) throw AtlasInvalid("inclusion target misses an element");
    map.push_back(static_cast<int>(it - big.begin()));
  }
  return map;
}

}  // namespace

void validate_atlas(const Atlas& at) {
  std::set<std::vector<int>> seen;
  std::vector<bool> covered(static_cast<std::size_t>(at.ambient_size), false);
  for (const auto& chart : at.charts) {
    if (!std::is_sorted(chart.subset.begin(), chart.subset.end()) ||
        std::adjacent_find(chart.subset.begin(), chart.subset.end()) != chart.subset.end())
      throw AtlasInvalid("chart subsets must be strictly increasing");
    for (int x : chart.subset) {
      if (x < 0 || x >= at.ambient_size) throw AtlasInvalid("chart element outside the ambient set");
      covered[static_cast<std::size_t>(x)] = true;
    }
    if (!chart.algebra || chart.algebra->carrier_size() != static_cast<int>(chart.subset.size()))
      throw AtlasInvalid("chart lift carrier does not match its subset");
    if (!seen.insert(chart.subset).second) throw AtlasInvalid("duplicate chart subset");
  }
  if (at.charts.empty()) {
    if (at.ambient_size != 0) throw AtlasInvalid("not covering: no charts");
    return;
  }
  for (bool c : covered)
    if (!c) throw AtlasInvalid("not covering: some ambient point lies in no chart");

  const Clone& clone = *at.charts.front().algebra->clone();
  for (const auto& chart : at.charts)
    if (!same_clone(clone, *chart.algebra->clone()))
      throw AtlasInvalid("charts live over different clones");

  for (std::size_t i = 0; i < at.charts.size(); ++i) {
    for (std::size_t j = 0; j < at.charts.size(); ++j) {
      if (i == j) continue;
      auto meet = intersect_sorted(at.charts[i].subset, at.charts[j].subset);
      if (chart_with_subset(at, meet) < 0)
        throw AtlasInvalid("missing meet of two charts");
      // inclusion homomorphisms for the poset relations
      if (std::includes(at.charts[j].subset.begin(), at.charts[j].subset.end(),
                        at.charts[i].subset.begin(), at.charts[i].subset.end())) {
        IHom incl = is_ihom(inclusion_map(at.charts[i].subset, at.charts[j].subset),
                            at.charts[i].algebra, at.charts[j].algebra);
        if (!incl.accepted())
          throw AtlasInvalid("non-homomorphic inclusion between charts");
        if (!incl.reflects)
          throw AtlasInvalid("non-reflecting inclusion between charts");
      }
    }
  }
}

namespace {

struct Glued {
  std::vector<int> subset;  // ambient indices, sorted
  IAlgebraPtr algebra;      // carrier aligned with subset order
};

// Relabels a pushout apex onto ambient indices. Every apex class must
// correspond to exactly one ambient point.
Glued relabel_onto_ambient(const CoconeResult& pushout, const std::vector<const Glued*>& pieces,
                           const Atlas& at) {
  int classes = pushout.apex->carrier_size();
  std::vector<int> ambient_of(static_cast<std::size_t>(classes), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& q = pushout.legs[i].map;
    for (std::size_t e = 0; e < q.size(); ++e) {
      int amb = pieces[i]->subset[e];
      int& slot = ambient_of[static_cast<std::size_t>(q[e])];
      if (slot < 0)
        slot = amb;
      else if (slot != amb)
        throw InternalInconsistency("glued class mixes distinct ambient points");
    }
  }
  std::vector<int> order(static_cast<std::size_t>(classes));
  for (int i = 0; i < classes; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return ambient_of[static_cast<std::size_t>(x)] < ambient_of[static_cast<std::size_t>(y)];
  });
  std::vector<int> new_of_old(static_cast<std::size_t>(classes));
  Glued out;
  out.subset.reserve(static_cast<std::size_t>(classes));
  std::vector<std::string> names;
  for (int pos = 0; pos < classes; ++pos) {
    int old = order[static_cast<std::size_t>(pos)];
    new_of_old[static_cast<std::size_t>(old)] = pos;
    out.subset.push_back(ambient_of[static_cast<std::size_t>(old)]);
    names.push_back(at.ambient_names.empty()
                        ? std::to_string(ambient_of[static_cast<std::size_t>(old)])
                        : at.ambient_names[static_cast<std::size_t>(
                              ambient_of[static_cast<std::size_t>(old)])]);
  }

  const IAlgebra& apex = *pushout.apex;
  IStructure istr(classes, apex.n_max(), std::move(names));
  for (int n = 2; n <= apex.n_max(); ++n)
    for (std::uint64_t key : apex.istr().tuples(n)) {
      auto tuple = decode_tuple(key, classes, n);
      istr.insert(apply_map(new_of_old, tuple));
    }
  istr.normalize();

  std::vector<int> old_of_new(static_cast<std::size_t>(classes));
  for (int old = 0; old < classes; ++old)
    old_of_new[static_cast<std::size_t>(new_of_old[static_cast<std::size_t>(old)])] = old;
  auto act = [apex_ptr = pushout.apex, old_of_new, new_of_old](int n, OpId sigma,
                                                               std::span<const int> tuple) {
    std::vector<int> old_tuple(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i)
      old_tuple[i] = old_of_new[static_cast<std::size_t>(tuple[i])];
    return new_of_old[static_cast<std::size_t>(apex_ptr->act(n, sigma, old_tuple))];
  };
  out.algebra = std::make_shared<IAlgebra>(pushout.apex->clone(), std::move(istr), act);
  return out;
}

Glued glue_charts(const Atlas& at, const std::vector<int>& chart_indices);

// Union of a partial union G with chart V, as the pushout over their meet.
Glued binary_union(const Atlas& at, const Glued& g, const Glued& v,
                   const std::vector<int>& meet_chart_indices) {
  Glued w = glue_charts(at, meet_chart_indices);
  IHom into_g = is_ihom(inclusion_map(w.subset, g.subset), w.algebra, g.algebra);
  IHom into_v = is_ihom(inclusion_map(w.subset, v.subset), w.algebra, v.algebra);
  if (!into_g.accepted() || !into_g.reflects || !into_v.accepted() || !into_v.reflects)
    throw AtlasInvalid("meet does not include reflectingly into both sides of a union");
  CoconeResult push = wide_pushout(w.algebra, {into_g, into_v});
  std::vector<const Glued*> pieces = {&g, &v};
  return relabel_onto_ambient(push, pieces, at);
}

// Folds the listed charts into their union by iterated binary pushouts.
Glued glue_charts(const Atlas& at, const std::vector<int>& chart_indices) {
  if (chart_indices.empty()) {
    // empty union: the empty algebra (valid only without constants)
    Glued out;
    const Clone& c = *at.charts.front().algebra->clone();
    if (c.op_count(0) != 0)
      throw AtlasInvalid("empty union over a clone with constants");
    out.algebra = std::make_shared<IAlgebra>(
        at.charts.front().algebra->clone(),
        IStructure(0, at.charts.front().algebra->n_max()),
        [](int, OpId, std::span<const int>) { return 0; });
    return out;
  }
  Glued acc{at.charts[static_cast<std::size_t>(chart_indices[0])].subset,
            at.charts[static_cast<std::size_t>(chart_indices[0])].algebra};
  for (std::size_t k = 1; k < chart_indices.size(); ++k) {
    const Chart& next = at.charts[static_cast<std::size_t>(chart_indices[k])];
    if (std::includes(acc.subset.begin(), acc.subset.end(), next.subset.begin(),
                      next.subset.end()))
      continue;  // nothing new to glue
    // meets of the accumulated charts with the next one, deduplicated
    std::vector<int> meets;
    std::set<std::vector<int>> seen;
    for (std::size_t j = 0; j < k; ++j) {
      auto meet = intersect_sorted(at.charts[static_cast<std::size_t>(chart_indices[j])].subset,
                                   next.subset);
      if (!seen.insert(meet).second) continue;
      int idx = chart_with_subset(at, meet);
      if (idx < 0) throw AtlasInvalid("missing meet of two charts");
      meets.push_back(idx);
    }
    Glued v{next.subset, next.algebra};
    acc = binary_union(at, acc, v, meets);
  }
  return acc;
}

}  // namespace

IAlgebraPtr glue_atlas(const Atlas& at) {
  validate_atlas(at);
  if (at.charts.empty()) throw AtlasInvalid("cannot glue an empty atlas");
  // fold in ascending size order (meets first) for a deterministic log
  std::vector<int> order(at.charts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto &sx = at.charts[static_cast<std::size_t>(x)].subset,
               &sy = at.charts[static_cast<std::size_t>(y)].subset;
    if (sx.size() != sy.size()) return sx.size() < sy.size();
    return sx < sy;
  });
  Glued out = glue_charts(at, order);
  if (static_cast<int>(out.subset.size()) != at.ambient_size)
    throw InternalInconsistency("glued union does not cover the ambient set");
  return out.algebra;
}

// ---- universal property oracle ----

UniversalPropertyReport verify_universal_property(const CoconeResult& result,
                                                  const std::vector<TestCocone>& targets,
                                                  const SearchBudget& budget) {
  UniversalPropertyReport report;
  report.pass = true;
  const IAlgebraPtr& apex = result.apex;
  for (const auto& target : targets) {
    if (target.legs.size() != result.legs.size())
      throw DomainError("test cocone leg count does not match the diagram");
    std::uint64_t space = 1;
    for (int i = 0; i < apex->carrier_size(); ++i) {
      if (target.target->carrier_size() > 0 &&
          space > budget.max_function_space / static_cast<std::uint64_t>(
                                                  std::max(target.target->carrier_size(), 1)))
        throw BudgetExceeded(space, "function space |W|^|apex| exceeds the budget");
      space *= static_cast<std::uint64_t>(target.target->carrier_size());
    }

    // positions forced by commutation with the cocones
    std::vector<int> forced(static_cast<std::size_t>(apex->carrier_size()), -1);
    bool contradiction = false;
    for (std::size_t i = 0; i < result.legs.size() && !contradiction; ++i) {
      const auto& q = result.legs[i].map;
      const auto& t = target.legs[i];
      if (t.size() != q.size()) throw DomainError("test cocone leg has the wrong carrier");
      for (std::size_t e = 0; e < q.size(); ++e) {
        int& slot = forced[static_cast<std::size_t>(q[e])];
        if (slot < 0)
          slot = t[e];
        else if (slot != t[e])
          contradiction = true;
      }
    }
    if (contradiction) {
      report.mediating_counts.push_back(0);
      report.notes.push_back("test cocone inconsistent on identified points");
      report.pass = false;
      continue;
    }

    std::vector<int> free_positions;
    for (int z = 0; z < apex->carrier_size(); ++z)
      if (forced[static_cast<std::size_t>(z)] < 0) free_positions.push_back(z);

    std::uint64_t count = 0;
    std::vector<int> candidate(forced.begin(), forced.end());
    int wsize = target.target->carrier_size();
    if (!free_positions.empty() && wsize == 0) {
      report.mediating_counts.push_back(0);
      report.pass = false;
      continue;
    }
    std::vector<int> digits(free_positions.size(), 0);
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < free_positions.size(); ++i)
        candidate[static_cast<std::size_t>(free_positions[i])] = digits[i];
      IHom h = is_ihom(candidate, apex, target.target);
      if (h.accepted()) ++count;
      more = !free_positions.empty() && next_tuple(digits, wsize);
    }
    report.mediating_counts.push_back(count);
    if (count != 1) report.pass = false;
  }
  return report;
}

}  // namespace infinialg
