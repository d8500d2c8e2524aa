#ifndef INFINIALG_COLIMITS_HPP
#define INFINIALG_COLIMITS_HPP

#include <optional>

#include "infinialg/ialgebra.hpp"

namespace infinialg {

// Jointly monomorphic parallel pair (p1,p2) : R => A whose underlying pair
// set is an equivalence relation on the carrier of A.
struct Congruence {
  IAlgebraPtr rel;  // carrier R
  IHom p1, p2;      // both into the same target
};

// Throws NotACongruence when the pair relation is not an equivalence, the
// pair is not jointly injective, or the legs are not accepted homomorphisms.
void validate_congruence(const Congruence& cg);

// For all n <= n_max and all tuples over R: images under p1 and p2 both in
// A<n> imply the tuple lies in R<n>.
bool jointly_reflect(const Congruence& cg);

enum class RelStructure { ProductRestricted, Discrete };

// R = the given pair set as a sub-i-algebra of A x A, with either the full
// product-restricted i-structure or the discrete one.
Congruence congruence_from_pairs(IAlgebraPtr a, const std::vector<std::pair<int, int>>& pairs,
                                 RelStructure structure = RelStructure::ProductRestricted);

// Smallest congruence containing the given pairs: equivalence closure plus
// compatibility with the action.
Congruence congruence_generated_by(IAlgebraPtr a, const std::vector<std::pair<int, int>>& pairs,
                                   RelStructure structure = RelStructure::ProductRestricted);

// congruence_generated_by over {(f(x), g(x))}, with the product-restricted
// i-structure.
Congruence congruence_from_parallel_pair(const IHom& f, const IHom& g);

struct CoconeResult {
  IAlgebraPtr apex;
  std::vector<IHom> legs;
  std::vector<std::string> construction_log;
};

// ---- limits ----

IAlgebraPtr initial_object(ClonePtr c, int n_max = kDefaultNMax);
IHom initial_morphism(IAlgebraPtr target);

// Carrier A x B indexed a * |B| + b, componentwise neighbourhoods and action.
IAlgebraPtr product(IAlgebraPtr a, IAlgebraPtr b);

struct SubObject {
  IAlgebraPtr algebra;
  IHom inclusion;
};

// Restriction of structure and action to a subset of the carrier; nullopt
// when the action leaves the subset. The inclusion reflects by construction.
std::optional<SubObject> sub_algebra(IAlgebraPtr a, const std::vector<int>& subset);

// Sub-i-algebra on {x : f(x) = g(x)} with the restricted structure.
SubObject equalizer(const IHom& f, const IHom& g);

// Congruence {(x,y) : f(x) = f(y)} with the product-restricted structure.
Congruence kernel_pair(const IHom& f);

struct PullbackResult {
  IAlgebraPtr apex;  // {(b,a) : f(b) = g(a)} indexed b * |A| + a
  IHom to_f_source;  // projection onto the source of f
  IHom to_g_source;  // projection onto the source of g
};

PullbackResult pullback(const IHom& f, const IHom& g);

// ---- colimits ----

// Quotient of the disjoint union of the codomains by the zig-zag closure of
// {(f(a), g(a))}. Every leg must be an accepted homomorphism with
// reflects=true; the cocone legs reflect i-structure and the action is
// cross-checked over all witnesses (InternalInconsistency on disagreement).
CoconeResult wide_pushout(IAlgebraPtr a, const std::vector<IHom>& legs);

// Wide pushout of the initial morphisms; with no constants this is the
// disjoint union, with one constant class the wedge.
CoconeResult coproduct(ClonePtr c, const std::vector<IAlgebraPtr>& factors,
                       int n_max = kDefaultNMax);

// Quotient by a congruence whose legs jointly reflect the i-structure;
// Z<n> = q^n(A<n>), action via witnesses with full cross-checking. Throws
// JointReflectionFailure with a witness tuple when the precondition fails.
CoconeResult coequalizer_congruence(const Congruence& cg);

// Kernel pairs are exactly the jointly reflecting congruences.
bool is_kernel_pair(const Congruence& cg);

// Surjective with image i-structure equal to the codomain i-structure.
bool is_regular_epi(const IHom& q);

// Meet-stable covering family of lifted subsets of an ambient set, with
// i-structure reflecting inclusions.
struct Chart {
  std::vector<int> subset;  // strictly increasing ambient indices
  IAlgebraPtr algebra;      // carrier aligned with subset order
};

struct Atlas {
  int ambient_size = 0;
  std::vector<std::string> ambient_names;
  std::vector<Chart> charts;
};

void validate_atlas(const Atlas& at);

// Union of the atlas by iterated binary pushouts: union(V, W) is the wide
// pushout over V meet W, and the intersection of a partial union with the
// next chart folds over pairwise meets (all charts by meet stability). The
// result is relabelled onto the ambient carrier.
IAlgebraPtr glue_atlas(const Atlas& at);

struct TestCocone {
  IAlgebraPtr target;
  std::vector<std::vector<int>> legs;  // one carrier map per diagram codomain
};

struct UniversalPropertyReport {
  bool pass = false;
  std::vector<std::uint64_t> mediating_counts;  // per test target
  std::vector<std::string> notes;
};

// Brute-force universal property check: for every target counts carrier maps
// apex -> W that are accepted homomorphisms commuting with both cocones;
// passes iff each count is exactly one. Enumeration is pruned but exact.
UniversalPropertyReport verify_universal_property(const CoconeResult& result,
                                                  const std::vector<TestCocone>& targets,
                                                  const SearchBudget& budget = {});

}  // namespace infinialg

#endif
