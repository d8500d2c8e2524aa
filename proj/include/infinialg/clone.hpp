#ifndef INFINIALG_CLONE_HPP
#define INFINIALG_CLONE_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infinialg/common.hpp"

namespace infinialg {

// Operations inside an arity are addressed by dense indices 0..|O(n)|-1.
using OpId = int;

// Truncated abstract clone: operation sets O(n) for n <= n_max, substitution
// *_{nk} : O(n) x O(k)^n -> O(k), and projections pi^n_j. Implementations
// either store explicit tables or compute substitution on demand; both are
// immutable after construction.
class Clone {
 public:
  virtual ~Clone() = default;

  virtual int n_max() const = 0;
  virtual int op_count(int n) const = 0;
  virtual OpId subst(int n, int k, OpId sigma, std::span<const OpId> args) const = 0;
  // j is 1-based: proj(n, j) is pi^n_j, requires 1 <= j <= n.
  virtual OpId proj(int n, int j) const = 0;
  virtual std::string op_name(int n, OpId op) const = 0;

  std::optional<OpId> find_op(int n, const std::string& name) const;
};

using ClonePtr = std::shared_ptr<const Clone>;

// Same object, or same shape with identical operation names per arity.
// Operation names encode content (canonical terms, function tables,
// coefficient tuples), so name equality is the working notion of clone
// equality across independently constructed instances.
bool same_clone(const Clone& a, const Clone& b);

// Explicit-table clone; the deserialization target and the output of
// saturation. Tables are validated for totality at construction.
class TableClone : public Clone {
 public:
  TableClone(int n_max, std::vector<std::vector<std::string>> names,
             std::vector<std::vector<OpId>> proj,
             std::vector<std::vector<std::vector<OpId>>> subst);

  int n_max() const override { return n_max_; }
  int op_count(int n) const override { return static_cast<int>(names_[static_cast<std::size_t>(n)].size()); }
  OpId subst(int n, int k, OpId sigma, std::span<const OpId> args) const override;
  OpId proj(int n, int j) const override { return proj_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j - 1)]; }
  std::string op_name(int n, OpId op) const override {
    return names_[static_cast<std::size_t>(n)][static_cast<std::size_t>(op)];
  }

 private:
  int n_max_;
  std::vector<std::vector<std::string>> names_;       // [n][op]
  std::vector<std::vector<OpId>> proj_;               // [n][j-1]
  // subst_[n][k] flat table indexed by sigma * B^n + sum args[i] * B^i, B = |O(k)|.
  std::vector<std::vector<std::vector<OpId>>> subst_;
};

// End(A): O(n) = all functions A^n -> A encoded as output tables in
// row-major order over lexicographic inputs; substitution is composition.
class EndoClone : public Clone {
 public:
  // Throws BudgetExceeded when |A|^(|A|^n_max) overflows max_tuples.
  EndoClone(int carrier_size, int n_max, const SearchBudget& budget = {});

  int n_max() const override { return n_max_; }
  int op_count(int n) const override { return static_cast<int>(op_counts_[static_cast<std::size_t>(n)]); }
  OpId subst(int n, int k, OpId sigma, std::span<const OpId> args) const override;
  OpId proj(int n, int j) const override;
  std::string op_name(int n, OpId op) const override;

  int carrier_size() const { return carrier_; }
  // Value of operation `op` of arity n at an input tuple.
  int apply(int n, OpId op, std::span<const int> input) const;

 private:
  int carrier_, n_max_;
  std::vector<std::uint64_t> op_counts_;  // |A|^(|A|^n)
  std::vector<std::uint64_t> input_counts_;  // |A|^n
};

ClonePtr endo_clone(int carrier_size, int n_max, const SearchBudget& budget = {});

struct ValidateOptions {
  // Axiom families with at most this many instances are enumerated in full;
  // larger ones are checked on `sample_size` deterministically sampled
  // instances (the report flags the reduced coverage).
  std::uint64_t exhaustive_limit = 300'000'000;
  std::uint64_t sample_size = 1'000'000;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
  std::size_t max_violations = 1000;
};

// Checks associativity, projection, unit, and normalisation for all indices
// <= n_max. Violations are reported with witnessing operation tuples in
// enumeration order.
ValidationReport validate_clone(const Clone& c, const ValidateOptions& options = {});

// Arity-indexed family of maps between clones with equal n_max.
struct CloneHom {
  ClonePtr source, target;
  std::vector<std::vector<OpId>> maps;  // maps[n][op] in target O(n)
};

// True iff the family commutes with substitution and preserves projections.
bool clone_hom_check(const CloneHom& h);

// The clone-algebra structure on the set of constants O(0): the action of
// sigma in O(n) on an n-tuple of constants is sigma *_{n0} (tuple).
struct ConstantsAlgebra {
  ClonePtr clone;
  int carrier_size;  // |O(0)|
  int act(int n, OpId sigma, std::span<const int> constants) const;
};

ConstantsAlgebra constants_algebra(ClonePtr c);

}  // namespace infinialg

#endif
