#ifndef INFINIALG_ORACLE_HPP
#define INFINIALG_ORACLE_HPP

#include <optional>

#include "infinialg/clone.hpp"
#include "infinialg/ialgebra.hpp"

namespace infinialg::oracle {

// Reference closure semantics: repeated passes over every index map until a
// fixpoint, with no single-pass shortcut. Certifies generate_from_tuples.
IStructure brute_istructure_closure(int carrier_size,
                                    const std::map<int, std::vector<std::vector<int>>>& gens,
                                    int n_max, const SearchBudget& budget = {});

// Searches every carrier bijection for one that is an accepted homomorphism
// in both directions. Requires equal carrier sizes and factorial(size) within
// the budget.
std::optional<std::vector<int>> brute_iso_search(IAlgebraPtr a, IAlgebraPtr b,
                                                 const SearchBudget& budget = {});

// Arity-wise bijections forming a clone homomorphism.
std::optional<std::vector<std::vector<OpId>>> brute_clone_iso_search(
    ClonePtr a, ClonePtr b, const SearchBudget& budget = {});

// Partition of the codomain generated by f(x) ~ g(x); the Set-level
// coequalizer, classes ordered by least member.
std::vector<std::vector<int>> brute_set_coequalizer(std::span<const int> f,
                                                    std::span<const int> g, int codomain_size);

}  // namespace infinialg::oracle

#endif
