#include "infinialg/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace infinialg::oracle {

IStructure brute_istructure_closure(int carrier_size,
                                    const std::map<int, std::vector<std::vector<int>>>& gens,
                                    int n_max, const SearchBudget& budget) {
  // Tuple sets per arity, grown pass by pass until nothing changes.
  std::vector<std::set<std::vector<int>>> sets(static_cast<std::size_t>(n_max + 1));
  for (int a = 0; a < carrier_size; ++a) sets[1].insert({a});
  for (const auto& [n, tuples] : gens) {
    if (n < 1 || n > n_max) throw DomainError("generator arity outside 1..n_max");
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != n) throw DomainError("generator has the wrong length");
      for (int v : t)
        if (v < 0 || v >= carrier_size) throw DomainError("generator entry outside carrier");
      sets[static_cast<std::size_t>(n)].insert(t);
    }
  }

  std::uint64_t work = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 1; n <= n_max; ++n) {
      std::vector<std::vector<int>> snapshot(sets[static_cast<std::size_t>(n)].begin(),
                                             sets[static_cast<std::size_t>(n)].end());
      for (const auto& tuple : snapshot) {
        for (int m = 1; m <= n_max; ++m) {
          // every h : m -> n, image (t_h(1), ..., t_h(m))
          std::vector<int> h(static_cast<std::size_t>(m), 0);
          bool more = true;
          while (more) {
            if (++work > budget.max_tuples)
              throw BudgetExceeded(work, "closure exceeded the tuple budget");
            std::vector<int> image(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
              image[static_cast<std::size_t>(i)] =
                  tuple[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
            if (sets[static_cast<std::size_t>(m)].insert(image).second) changed = true;
            more = next_tuple(h, n);
          }
        }
      }
    }
  }

  IStructure out(carrier_size, n_max);
  for (int n = 2; n <= n_max; ++n)
    for (const auto& tuple : sets[static_cast<std::size_t>(n)]) out.insert(tuple);
  out.normalize();
  return out;
}

std::optional<std::vector<int>> brute_iso_search(IAlgebraPtr a, IAlgebraPtr b,
                                                 const SearchBudget& budget) {
  if (a->carrier_size() != b->carrier_size()) return std::nullopt;
  if (!same_clone(*a->clone(), *b->clone())) return std::nullopt;
  int n = a->carrier_size();
  std::uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) {
    fact *= static_cast<std::uint64_t>(i);
    if (fact > budget.max_function_space)
      throw BudgetExceeded(fact, "factorial search space exceeds the budget");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    IHom forward = is_ihom(perm, a, b);
    if (!forward.accepted()) continue;
    std::vector<int> inverse(perm.size());
    for (int i = 0; i < n; ++i) inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    IHom backward = is_ihom(inverse, b, a);
    if (backward.accepted()) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::optional<std::vector<std::vector<OpId>>> brute_clone_iso_search(ClonePtr a, ClonePtr b,
                                                                     const SearchBudget& budget) {
  if (a->n_max() != b->n_max()) return std::nullopt;
  int N = a->n_max();
  std::uint64_t space = 1;
  for (int n = 0; n <= N; ++n) {
    if (a->op_count(n) != b->op_count(n)) return std::nullopt;
    for (int i = 2; i <= a->op_count(n); ++i) {
      space *= static_cast<std::uint64_t>(i);
      if (space > budget.max_function_space)
        throw BudgetExceeded(space, "clone bijection space exceeds the budget");
    }
  }

  std::vector<std::vector<OpId>> perms(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    perms[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(a->op_count(n)));
    std::iota(perms[static_cast<std::size_t>(n)].begin(), perms[static_cast<std::size_t>(n)].end(), 0);
  }

  // odometer over per-arity permutations
  std::function<bool(int)> advance = [&](int n) -> bool {
    if (n > N) return false;
    if (std::next_permutation(perms[static_cast<std::size_t>(n)].begin(),
                              perms[static_cast<std::size_t>(n)].end()))
      return true;
    return advance(n + 1);
  };

  while (true) {
    CloneHom h{a, b, perms};
    if (clone_hom_check(h)) return perms;
    if (!advance(0)) break;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> brute_set_coequalizer(std::span<const int> f,
                                                    std::span<const int> g, int codomain_size) {
  if (f.size() != g.size()) throw DomainError("parallel maps must share their domain");
  std::vector<int> parent(static_cast<std::size_t>(codomain_size));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    int x = find(f[i]), y = find(g[i]);
    if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
  }
  std::vector<std::vector<int>> classes;
  std::vector<int> index(static_cast<std::size_t>(codomain_size), -1);
  for (int x = 0; x < codomain_size; ++x) {
    int root = find(x);
    if (index[static_cast<std::size_t>(root)] < 0) {
      index[static_cast<std::size_t>(root)] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(index[static_cast<std::size_t>(root)])].push_back(x);
  }
  return classes;
}

}  // namespace infinialg::oracle
