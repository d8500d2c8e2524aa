#ifndef INFINIALG_GALLERY_HPP
#define INFINIALG_GALLERY_HPP

#include <string>
#include <vector>

#include "infinialg/clone.hpp"
#include "infinialg/ialgebra.hpp"

namespace infinialg {

// Finite commutative ring given by tables; ring axioms are checked
// exhaustively at construction.
class FiniteRing {
 public:
  FiniteRing(std::string name, std::vector<std::vector<int>> add,
             std::vector<std::vector<int>> mul, int zero, int one);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(add_.size()); }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int zero() const { return zero_; }
  int one() const { return one_; }

 private:
  std::string name_;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> neg_;
  int zero_, one_;
};

FiniteRing ring_zmod(int m);

// Elements of D(k): tuples with all pairwise products zero.
std::vector<std::vector<int>> nil_square_set(const FiniteRing& r, int k);

// Nil-square i-structure on R^k: P and Q are neighbours when Q - P lies in
// D(k); higher arities are generated pairwise. Carrier enumerated
// lexicographically, names "(a,b,...)".
IStructure nil_square(const FiniteRing& r, int k, int n_max = kDefaultNMax,
                      const SearchBudget& budget = {});

// Clone of affine combinations over R: O(n) = coefficient tuples summing to
// one, substitution = composition of combinations. O(0) is empty.
class AffineClone : public Clone {
 public:
  AffineClone(FiniteRing ring, int n_max, const SearchBudget& budget = {});

  int n_max() const override { return n_max_; }
  int op_count(int n) const override { return static_cast<int>(ops_[static_cast<std::size_t>(n)].size()); }
  OpId subst(int n, int k, OpId sigma, std::span<const OpId> args) const override;
  OpId proj(int n, int j) const override;
  std::string op_name(int n, OpId op) const override;

  const FiniteRing& ring() const { return ring_; }
  const std::vector<int>& coefficients(int n, OpId op) const {
    return ops_[static_cast<std::size_t>(n)][static_cast<std::size_t>(op)];
  }

 protected:
  AffineClone(FiniteRing ring, int n_max, bool affine_only, const SearchBudget& budget);

  FiniteRing ring_;
  int n_max_;
  std::vector<std::vector<std::vector<int>>> ops_;  // [n][op] = coefficient tuple
  std::vector<std::vector<OpId>> index_map_;        // [n][key] = op index, key base |R|
};

// Clone of Z/m-linear combinations (abelian groups of exponent m): O(n) is
// every coefficient tuple; the empty tuple in O(0) names the zero constant.
class AbelianExpClone : public AffineClone {
 public:
  AbelianExpClone(int modulus, int n_max, const SearchBudget& budget = {});
  int modulus() const { return ring().size(); }
};

std::shared_ptr<const AffineClone> affine_clone(const FiniteRing& r, int n_max,
                                                const SearchBudget& budget = {});
std::shared_ptr<const AbelianExpClone> abelian_exp_clone(int modulus, int n_max,
                                                         const SearchBudget& budget = {});

// R^k with the nil-square i-structure and the pointwise action of the affine
// clone over R; the running nontrivial example of a valid i-algebra.
IAlgebraPtr nil_square_affine_algebra(const FiniteRing& r, int k, int n_max = kDefaultNMax);

// Total algebras used throughout the fixture corpus.
IAlgebraPtr total_affine_line(const FiniteRing& r, int n_max = kDefaultNMax);
IAlgebraPtr total_abelian_zmod(int modulus, int n_max = kDefaultNMax);
// Z/p as a total algebra over the abelian exponent-m clone (p divides m).
IAlgebraPtr total_abelian_quotient(int modulus, int p, int n_max = kDefaultNMax);

struct FixtureReport {
  std::string name;
  std::string description;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> expected;  // key -> value
  std::vector<std::pair<std::string, std::string>> actual;
};

// The three counterexample fixtures: (a) Set-coequalizer vs algebra quotient
// size mismatch on Z/4, (b) a congruence that is not a kernel pair yet has a
// liftable Set-quotient, (c) an accepted homomorphism that does not reflect
// i-structure. Failures are report entries, not errors.
std::vector<FixtureReport> counterexample_suite();

}  // namespace infinialg

#endif
