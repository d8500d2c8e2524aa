#include "infinialg/ialgebra.hpp"

#include <algorithm>

namespace infinialg {

IAlgebra::IAlgebra(ClonePtr clone, IStructure istr, const ActionFn& fn)
    : clone_(std::move(clone)), istr_(std::move(istr)) {
  int N = istr_.n_max();
  if (clone_->n_max() != N)
    throw DomainError("clone and i-structure disagree on n_max");
  action_.resize(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    std::uint64_t tuples = istr_.tuple_count(n);
    auto ops = static_cast<std::uint64_t>(clone_->op_count(n));
    if (ops > 0 && tuples > 0 && istr_.carrier_size() == 0)
      throw DomainError("clone has constants but the carrier is empty");
    auto& table = action_[static_cast<std::size_t>(n)];
    table.reserve(ops * tuples);
    for (OpId sigma = 0; sigma < clone_->op_count(n); ++sigma) {
      if (n == 0) {
        int v = fn(0, sigma, {});
        if (v < 0 || v >= istr_.carrier_size()) throw DomainError("action value outside carrier");
        table.push_back(v);
        continue;
      }
      if (n == 1) {
        for (int a = 0; a < istr_.carrier_size(); ++a) {
          int tuple[1] = {a};
          int v = fn(1, sigma, tuple);
          if (v < 0 || v >= istr_.carrier_size())
            throw DomainError("action value outside carrier");
          table.push_back(v);
        }
        continue;
      }
      for (std::uint64_t key : istr_.tuples(n)) {
        auto tuple = decode_tuple(key, istr_.carrier_size(), n);
        int v = fn(n, sigma, tuple);
        if (v < 0 || v >= istr_.carrier_size()) throw DomainError("action value outside carrier");
        table.push_back(v);
      }
    }
  }
}

int IAlgebra::act(int n, OpId sigma, std::span<const int> tuple) const {
  std::int64_t idx = istr_.tuple_index(tuple);
  if (idx < 0)
    throw DomainError("action applied outside A<" + std::to_string(n) + ">: (" +
                      join_ints(tuple) + ")");
  return act_at(n, sigma, static_cast<std::uint64_t>(idx));
}

int IAlgebra::act_at(int n, OpId sigma, std::uint64_t tuple_index) const {
  return action_[static_cast<std::size_t>(n)]
                [static_cast<std::uint64_t>(sigma) * istr_.tuple_count(n) + tuple_index];
}

bool structurally_equal(const IAlgebra& a, const IAlgebra& b) {
  if (!same_clone(*a.clone(), *b.clone())) return false;
  if (a.istr() != b.istr()) return false;
  for (int n = 0; n <= a.n_max(); ++n) {
    std::uint64_t tuples = a.istr().tuple_count(n);
    for (OpId sigma = 0; sigma < a.clone()->op_count(n); ++sigma)
      for (std::uint64_t i = 0; i < tuples; ++i)
        if (a.act_at(n, sigma, i) != b.act_at(n, sigma, i)) return false;
  }
  return true;
}

namespace {

// Iterates the stored tuples of A<m> for any m, including the structural
// arities 0 and 1.
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

std::string ops_str(const Clone& c, int arity, std::span<const OpId> ops) {
  std::string out = "(";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ",";
    out += c.op_name(arity, ops[i]);
  }
  return out + ")";
}

}  // namespace

namespace {

std::vector<int> tuple_at(const IStructure& s, int m, std::uint64_t index) {
  if (m == 0) return {};
  if (m == 1) return {static_cast<int>(index)};
  return decode_tuple(s.tuples(m)[index], s.carrier_size(), m);
}

}  // namespace

ValidationReport validate_ialgebra(const IAlgebra& a, const ValidateOptions& options) {
  ValidationReport report;
  int N = a.n_max();
  const Clone& c = *a.clone();
  report.note = "axiom checks certify indices <= n_max = " + std::to_string(N) + " only";

  auto add_violation = [&](const std::string& axiom, const std::string& witness) {
    if (report.violations.size() < options.max_violations)
      report.violations.push_back({axiom, witness});
  };

  // Neighbourhood: <sigma_1 . x, ..., sigma_n . x> in A<n> for x in A<m>.
  for (int n = 1; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      if (c.op_count(m) == 0) continue;
      std::uint64_t tuples = a.istr().tuple_count(m);
      if (tuples == 0) continue;
      std::uint64_t count = tuples;
      for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(c.op_count(m));
      std::vector<OpId> sigmas(static_cast<std::size_t>(n), 0);
      auto check_instance = [&](const std::vector<int>& x) {
        std::vector<int> image(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          image[static_cast<std::size_t>(i)] = a.act(m, sigmas[static_cast<std::size_t>(i)], x);
        ++report.checked;
        if (!a.istr().contains(image))
          add_violation("neighbourhood",
                        "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                            " sigmas=" + ops_str(c, m, sigmas) + " x=(" + join_ints(x) +
                            ") image=(" + join_ints(image) + ")");
      };
      if (count <= options.exhaustive_limit) {
        report.total += count;
        bool more = true;
        while (more) {
          for_each_tuple(a.istr(), m, check_instance);
          more = next_tuple(sigmas, c.op_count(m));
        }
      } else {
        report.exhaustive = false;
        report.total += options.sample_size;
        std::uint64_t state = options.seed ^ 0x6EB5ULL ^ (static_cast<std::uint64_t>(n) << 8) ^
                              static_cast<std::uint64_t>(m);
        for (std::uint64_t it = 0; it < options.sample_size; ++it) {
          for (int i = 0; i < n; ++i)
            sigmas[static_cast<std::size_t>(i)] =
                static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(m)));
          check_instance(tuple_at(a.istr(), m, splitmix64(state) % tuples));
        }
      }
    }
  }

  // Associativity: sigma . (t_1 . x, ..., t_n . x) = (sigma *_{nm} t) . x.
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      if (c.op_count(n) == 0) continue;
      if (n > 0 && c.op_count(m) == 0) continue;
      std::uint64_t tuples = a.istr().tuple_count(m);
      if (tuples == 0) continue;
      std::uint64_t count = tuples * static_cast<std::uint64_t>(c.op_count(n));
      for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(c.op_count(m));
      std::vector<OpId> t(static_cast<std::size_t>(n), 0);
      std::vector<int> inner(static_cast<std::size_t>(n));
      auto check_instance = [&](OpId sigma, const std::vector<int>& x) {
        ++report.checked;
        for (int i = 0; i < n; ++i)
          inner[static_cast<std::size_t>(i)] = a.act(m, t[static_cast<std::size_t>(i)], x);
        if (!a.istr().contains(inner)) return;  // reported by the neighbourhood pass
        int lhs = a.act(n, sigma, inner);
        int rhs = a.act(m, c.subst(n, m, sigma, t), x);
        if (lhs != rhs)
          add_violation("associativity",
                        "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                            " sigma=" + c.op_name(n, sigma) + " t=" + ops_str(c, m, t) + " x=(" +
                            join_ints(x) + ") lhs=" + std::to_string(lhs) +
                            " rhs=" + std::to_string(rhs));
      };
      if (count <= options.exhaustive_limit) {
        report.total += count;
        bool more = true;
        while (more) {
          for_each_tuple(a.istr(), m, [&](const std::vector<int>& x) {
            for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) check_instance(sigma, x);
          });
          more = n > 0 && next_tuple(t, c.op_count(m));
        }
      } else {
        report.exhaustive = false;
        report.total += options.sample_size;
        std::uint64_t state = options.seed ^ 0xA550ULL ^ (static_cast<std::uint64_t>(n) << 8) ^
                              static_cast<std::uint64_t>(m);
        for (std::uint64_t it = 0; it < options.sample_size; ++it) {
          for (int i = 0; i < n; ++i)
            t[static_cast<std::size_t>(i)] =
                static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(m)));
          OpId sigma =
              static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(n)));
          check_instance(sigma, tuple_at(a.istr(), m, splitmix64(state) % tuples));
        }
      }
    }
  }

  // Projection: pi^n_j . (a_1,...,a_n) = a_j. Always exhaustive.
  for (int n = 1; n <= N; ++n) {
    for_each_tuple(a.istr(), n, [&](const std::vector<int>& x) {
      for (int j = 1; j <= n; ++j) {
        ++report.checked;
        ++report.total;
        int got = a.act(n, c.proj(n, j), x);
        if (got != x[static_cast<std::size_t>(j - 1)])
          add_violation("projection", "n=" + std::to_string(n) + " j=" + std::to_string(j) +
                                          " x=(" + join_ints(x) + ") got=" + std::to_string(got));
      }
    });
  }

  return report;
}

IAlgebra total_algebra(ClonePtr clone, int carrier_size, const IAlgebra::ActionFn& fn, int n_max,
                       std::vector<std::string> names) {
  IAlgebra a(std::move(clone), indiscrete(carrier_size, n_max, std::move(names)), fn);
  // Construction-time validation: tight enough to stay quick on the larger
  // coefficient clones, exhaustive on everything desk-sized.
  ValidateOptions options;
  options.exhaustive_limit = 50'000'000;
  options.sample_size = 2'000'000;
  ValidationReport report = validate_ialgebra(a, options);
  if (!report.ok())
    throw NotAClonAlgebra(report.violations.front().axiom + ": " +
                          report.violations.front().witness);
  return a;
}

IHom is_ihom(std::vector<int> map, IAlgebraPtr source, IAlgebraPtr target) {
  if (!same_clone(*source->clone(), *target->clone()))
    throw DifferentClones("homomorphism endpoints live over different clones");
  if (static_cast<int>(map.size()) != source->carrier_size())
    throw DomainError("map length does not match source carrier");
  for (int v : map)
    if (v < 0 || v >= target->carrier_size()) throw DomainError("map value outside target");

  IHom h;
  h.source = std::move(source);
  h.target = std::move(target);
  h.map = std::move(map);
  h.i_morphism = is_i_morphism(h.map, h.source->istr(), h.target->istr());
  h.reflects = reflects_istructure(h.map, h.source->istr(), h.target->istr());
  h.closed_image = image_closed(h.map, h.source->istr(), h.target->istr());

  // Equivariance over every source tuple whose image the target action
  // accepts; with i_morphism that is all of them.
  h.equivariant = true;
  const Clone& c = *h.source->clone();
  for (int n = 0; n <= h.source->n_max() && h.equivariant; ++n) {
    for_each_tuple(h.source->istr(), n, [&](const std::vector<int>& x) {
      if (!h.equivariant) return;
      std::vector<int> image(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        image[i] = h.map[static_cast<std::size_t>(x[i])];
      if (!h.target->istr().contains(image)) return;
      for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
        if (h.map[static_cast<std::size_t>(h.source->act(n, sigma, x))] !=
            h.target->act(n, sigma, image)) {
          h.equivariant = false;
          return;
        }
      }
    });
  }
  return h;
}

IHom require_ihom(std::vector<int> map, IAlgebraPtr source, IAlgebraPtr target) {
  IHom h = is_ihom(std::move(map), std::move(source), std::move(target));
  if (!h.accepted())
    throw DomainError(std::string("map rejected: ") +
                      (!h.i_morphism ? "not an i-morphism" : "not equivariant"));
  return h;
}

IHom identity_hom(IAlgebraPtr a) {
  std::vector<int> id(static_cast<std::size_t>(a->carrier_size()));
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return is_ihom(std::move(id), a, a);
}

IHom compose(const IHom& g, const IHom& f) {
  if (f.target.get() != g.source.get() && !structurally_equal(*f.target, *g.source))
    throw DomainError("composition endpoints do not match");
  std::vector<int> map(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i)
    map[i] = g.map[static_cast<std::size_t>(f.map[i])];
  return is_ihom(std::move(map), f.source, g.target);
}

}  // namespace infinialg
