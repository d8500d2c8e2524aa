#ifndef INFINIALG_ISTRUCTURE_HPP
#define INFINIALG_ISTRUCTURE_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "infinialg/common.hpp"

namespace infinialg {

// Finite i-structure: neighbourhood relations A<n> for 2 <= n <= n_max over
// a carrier of indexed elements. A<1> is the carrier and A<0> the one-point
// set by definition, so only the higher arities are stored. Tuples are kept
// as sorted encoded keys under a fixed carrier enumeration.
class IStructure {
 public:
  IStructure() = default;
  IStructure(int carrier_size, int n_max, std::vector<std::string> names = {});

  int carrier_size() const { return size_; }
  int n_max() const { return n_max_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(std::span<const int> tuple) const;
  // Sorted keys of A<n>; decode with decode_tuple(key, carrier_size(), n).
  const std::vector<std::uint64_t>& tuples(int n) const;
  std::uint64_t tuple_count(int n) const;
  // Position of the tuple inside the sorted key list of its arity; -1 if absent.
  std::int64_t tuple_index(std::span<const int> tuple) const;

  void insert(std::span<const int> tuple);
  // Restores sorted-unique storage after a batch of inserts.
  void normalize();

  bool operator==(const IStructure& other) const;
  bool operator!=(const IStructure& other) const { return !(*this == other); }

 private:
  int size_ = 0;
  int n_max_ = kDefaultNMax;
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint64_t>> nbhd_;  // index by arity; 0 and 1 unused
};

// Exhaustively checks closure under precomposition with every map of finite
// sets h : m -> n for m, n <= n_max (this subsumes reflexivity and symmetry).
ValidationReport validate_istructure(const IStructure& s);

IStructure discrete(int carrier_size, int n_max, std::vector<std::string> names = {});
IStructure indiscrete(int carrier_size, int n_max, std::vector<std::string> names = {});

// A<m> = all m-tuples pairwise related by R. R must be symmetric and
// reflexive; offending pairs are reported via NotSymmetricReflexive.
IStructure generate_from_binary(int carrier_size, const std::vector<std::pair<int, int>>& rel,
                                int n_max, std::vector<std::string> names = {});

// Least i-structure containing the generators: a single pass over all index
// maps h, since precompositions compose.
IStructure generate_from_tuples(int carrier_size,
                                const std::map<int, std::vector<std::vector<int>>>& gens,
                                int n_max, std::vector<std::string> names = {});

// Carrier maps between i-structures.
bool is_i_morphism(std::span<const int> f, const IStructure& source, const IStructure& target);
bool reflects_istructure(std::span<const int> f, const IStructure& source,
                         const IStructure& target);
bool image_closed(std::span<const int> f, const IStructure& source, const IStructure& target);

// Z<n> = f^n(S<n>) along a surjection onto a carrier of target_size elements.
IStructure image_istructure(std::span<const int> f, const IStructure& s, int target_size,
                            std::vector<std::string> target_names = {});

}  // namespace infinialg

#endif
