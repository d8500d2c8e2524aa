#ifndef INFINIALG_IALGEBRA_HPP
#define INFINIALG_IALGEBRA_HPP

#include <functional>
#include <memory>

#include "infinialg/clone.hpp"
#include "infinialg/istructure.hpp"

namespace infinialg {

// Partial clone action: tables are total exactly on O(n) x A<n>. Lookups
// outside a neighbourhood are contract violations (DomainError), never
// silently extended.
class IAlgebra {
 public:
  using ActionFn = std::function<int(int n, OpId sigma, std::span<const int> tuple)>;

  IAlgebra() = default;
  IAlgebra(ClonePtr clone, IStructure istr, const ActionFn& fn);

  const ClonePtr& clone() const { return clone_; }
  const IStructure& istr() const { return istr_; }
  int carrier_size() const { return istr_.carrier_size(); }
  int n_max() const { return istr_.n_max(); }

  int act(int n, OpId sigma, std::span<const int> tuple) const;
  // Raw table access for serialization: entry for (sigma, tuple position).
  int act_at(int n, OpId sigma, std::uint64_t tuple_index) const;

 private:
  ClonePtr clone_;
  IStructure istr_;
  std::vector<std::vector<int>> action_;  // [n][sigma * |A<n>| + tuple_index]
};

using IAlgebraPtr = std::shared_ptr<const IAlgebra>;

// Same clone (by operation names), identical i-structure and action tables.
// Carrier names are ignored: carrier equality, not isomorphism.
bool structurally_equal(const IAlgebra& a, const IAlgebra& b);

// Neighbourhood, associativity and projection axioms over all arities
// <= n_max. Axiom families within the exhaustive limit are fully enumerated;
// larger ones are checked on a deterministic sample and the report drops its
// exhaustive flag. Violations carry witnesses in enumeration order.
ValidationReport validate_ialgebra(const IAlgebra& a, const ValidateOptions& options = {});

// Total algebra: indiscrete i-structure over the given action. Throws
// NotAClonAlgebra with the first violating instance when the tables fail the
// clone-algebra axioms.
IAlgebra total_algebra(ClonePtr clone, int carrier_size, const IAlgebra::ActionFn& fn,
                       int n_max = kDefaultNMax, std::vector<std::string> names = {});

// Carrier map between i-algebras over one clone, with computed property
// flags. Valid homomorphisms are exactly those with i_morphism && equivariant;
// the other flags feed the gluing preconditions.
struct IHom {
  IAlgebraPtr source, target;
  std::vector<int> map;
  bool i_morphism = false;
  bool equivariant = false;
  bool reflects = false;
  bool closed_image = false;

  bool accepted() const { return i_morphism && equivariant; }
  int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }
};

// Computes all four flags. Throws DifferentClones when the algebras disagree.
IHom is_ihom(std::vector<int> map, IAlgebraPtr source, IAlgebraPtr target);

// is_ihom + throws DomainError unless the map is accepted.
IHom require_ihom(std::vector<int> map, IAlgebraPtr source, IAlgebraPtr target);

IHom identity_hom(IAlgebraPtr a);
IHom compose(const IHom& g, const IHom& f);  // g after f

}  // namespace infinialg

#endif
