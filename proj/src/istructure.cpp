#include "infinialg/istructure.hpp"

#include <algorithm>
#include <set>

#include "infinialg/term.hpp"

namespace infinialg {

static std::vector<std::string> default_names(int size, std::vector<std::string> names) {
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != size)
      throw DomainError("carrier names must match carrier size");
    return names;
  }
  names.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) names.push_back(std::to_string(i));
  return names;
}

IStructure::IStructure(int carrier_size, int n_max, std::vector<std::string> names)
    : size_(carrier_size),
      n_max_(n_max),
      names_(default_names(carrier_size, std::move(names))),
      nbhd_(static_cast<std::size_t>(n_max + 1)) {
  if (carrier_size < 0 || n_max < 1) throw DomainError("bad i-structure dimensions");
}

bool IStructure::contains(std::span<const int> tuple) const {
  int n = static_cast<int>(tuple.size());
  if (n == 0) return true;  // A<0> is the one-point set
  for (int v : tuple)
    if (v < 0 || v >= size_) return false;
  if (n == 1) return true;  // A<1> = A
  if (n > n_max_) return false;
  const auto& keys = nbhd_[static_cast<std::size_t>(n)];
  std::uint64_t key = encode_tuple(tuple, size_);
  return std::binary_search(keys.begin(), keys.end(), key);
}

const std::vector<std::uint64_t>& IStructure::tuples(int n) const {
  return nbhd_[static_cast<std::size_t>(n)];
}

std::uint64_t IStructure::tuple_count(int n) const {
  if (n == 0) return 1;
  if (n == 1) return static_cast<std::uint64_t>(size_);
  return nbhd_[static_cast<std::size_t>(n)].size();
}

std::int64_t IStructure::tuple_index(std::span<const int> tuple) const {
  int n = static_cast<int>(tuple.size());
  if (n == 0) return 0;
  if (n == 1) return tuple[0] >= 0 && tuple[0] < size_ ? tuple[0] : -1;
  const auto& keys = nbhd_[static_cast<std::size_t>(n)];
  std::uint64_t key = encode_tuple(tuple, size_);
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return -1;
  return it - keys.begin();
}

void IStructure::insert(std::span<const int> tuple) {
  int n = static_cast<int>(tuple.size());
  if (n < 2 || n > n_max_) return;  // arities 0 and 1 are structural
  for (int v : tuple)
    if (v < 0 || v >= size_) throw DomainError("tuple entry outside carrier");
  nbhd_[static_cast<std::size_t>(n)].push_back(encode_tuple(tuple, size_));
}

void IStructure::normalize() {
  for (auto& keys : nbhd_) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }
}

bool IStructure::operator==(const IStructure& other) const {
  return size_ == other.size_ && n_max_ == other.n_max_ && nbhd_ == other.nbhd_;
}

ValidationReport validate_istructure(const IStructure& s) {
  ValidationReport report;
  report.note = "closure checked for arities <= n_max = " + std::to_string(s.n_max()) + " only";
  int size = s.carrier_size();
  for (int n = 1; n <= s.n_max(); ++n) {
    for (int m = 1; m <= s.n_max(); ++m) {
      auto maps = all_index_maps(m, n);
      if (n == 1) {
        // A<1> = A is structural; its precompositions are the diagonals.
        for (int a = 0; a < size; ++a) {
          for (std::size_t hi = 0; hi < maps.size(); ++hi) {
            std::vector<int> image(static_cast<std::size_t>(m), a);
            ++report.checked;
            ++report.total;
            if (!s.contains(image))
              report.violations.push_back(
                  {"precomposition", "h:" + std::to_string(m) + "->1 image of (" + s.name(a) +
                                         ") missing at arity " + std::to_string(m)});
          }
        }
        continue;
      }
      for (std::uint64_t key : s.tuples(n)) {
        auto tuple = decode_tuple(key, size, n);
        for (const auto& h : maps) {
          std::vector<int> image(static_cast<std::size_t>(m));
          for (int i = 0; i < m; ++i)
            image[static_cast<std::size_t>(i)] =
                tuple[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
          ++report.checked;
          ++report.total;
          if (!s.contains(image))
            report.violations.push_back(
                {"precomposition",
                 "h=(" + join_ints(h) + "):" + std::to_string(m) + "->" + std::to_string(n) +
                     " tuple=(" + join_ints(tuple) + ") image=(" + join_ints(image) +
                     ") missing"});
        }
      }
    }
  }
  return report;
}

IStructure discrete(int carrier_size, int n_max, std::vector<std::string> names) {
  IStructure s(carrier_size, n_max, std::move(names));
  for (int n = 2; n <= n_max; ++n)
    for (int a = 0; a < carrier_size; ++a) {
      std::vector<int> tuple(static_cast<std::size_t>(n), a);
      s.insert(tuple);
    }
  s.normalize();
  return s;
}

IStructure indiscrete(int carrier_size, int n_max, std::vector<std::string> names) {
  IStructure s(carrier_size, n_max, std::move(names));
  for (int n = 2; n <= n_max; ++n) {
    if (carrier_size == 0) continue;
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    do {
      s.insert(tuple);
    } while (next_tuple(tuple, carrier_size));
  }
  s.normalize();
  return s;
}

IStructure generate_from_binary(int carrier_size, const std::vector<std::pair<int, int>>& rel,
                                int n_max, std::vector<std::string> names) {
  std::set<std::pair<int, int>> pairs(rel.begin(), rel.end());
  std::string offending;
  for (int a = 0; a < carrier_size; ++a)
    if (!pairs.count({a, a})) offending += " (" + std::to_string(a) + "," + std::to_string(a) + ")";
  for (const auto& [a, b] : pairs)
    if (!pairs.count({b, a})) offending += " (" + std::to_string(b) + "," + std::to_string(a) + ")";
  if (!offending.empty())
    throw NotSymmetricReflexive("missing pairs:" + offending);

  IStructure s(carrier_size, n_max, std::move(names));
  auto related = [&](int a, int b) { return pairs.count({a, b}) > 0; };
  for (int n = 2; n <= n_max; ++n) {
    if (carrier_size == 0) continue;
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    do {
      bool all = true;
      for (int i = 0; i < n && all; ++i)
        for (int j = 0; j < n && all; ++j)
          all = related(tuple[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(j)]);
      if (all) s.insert(tuple);
    } while (next_tuple(tuple, carrier_size));
  }
  s.normalize();
  return s;
}

IStructure generate_from_tuples(int carrier_size,
                                const std::map<int, std::vector<std::vector<int>>>& gens,
                                int n_max, std::vector<std::string> names) {
  IStructure s(carrier_size, n_max, std::move(names));
  // Generators of length 1 are implicit: every carrier element. One pass over
  // all h : m -> n suffices because precompositions compose.
  for (int m = 2; m <= n_max; ++m) {
    for (int a = 0; a < carrier_size; ++a) {
      std::vector<int> diag(static_cast<std::size_t>(m), a);
      s.insert(diag);
    }
    for (const auto& [n, tuples] : gens) {
      for (const auto& g : tuples) {
        if (static_cast<int>(g.size()) != n)
          throw DomainError("generator length does not match its declared arity");
        for (const auto& h : all_index_maps(m, n)) {
          std::vector<int> image(static_cast<std::size_t>(m));
          for (int i = 0; i < m; ++i)
            image[static_cast<std::size_t>(i)] =
                g[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
          s.insert(image);
        }
      }
    }
  }
  s.normalize();
  return s;
}

bool is_i_morphism(std::span<const int> f, const IStructure& source, const IStructure& target) {
  for (int n = 2; n <= source.n_max(); ++n) {
    for (std::uint64_t key : source.tuples(n)) {
      auto tuple = decode_tuple(key, source.carrier_size(), n);
      std::vector<int> image(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        image[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
      if (!target.contains(image)) return false;
    }
  }
  return true;
}

bool reflects_istructure(std::span<const int> f, const IStructure& source,
                         const IStructure& target) {
  // Quantified over all source tuples, not only neighbours.
  for (int n = 2; n <= source.n_max(); ++n) {
    if (source.carrier_size() == 0) continue;
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    do {
      std::vector<int> image(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        image[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
      if (target.contains(image) && !source.contains(tuple)) return false;
    } while (next_tuple(tuple, source.carrier_size()));
  }
  return true;
}

bool image_closed(std::span<const int> f, const IStructure& source, const IStructure& target) {
  std::vector<bool> in_image(static_cast<std::size_t>(target.carrier_size()), false);
  for (std::size_t i = 0; i < f.size(); ++i) in_image[static_cast<std::size_t>(f[i])] = true;
  if (target.n_max() < 2) return true;
  for (int x = 0; x < source.carrier_size(); ++x) {
    for (int y = 0; y < target.carrier_size(); ++y) {
      if (in_image[static_cast<std::size_t>(y)]) continue;
      std::vector<int> pair = {f[static_cast<std::size_t>(x)], y};
      if (target.contains(pair)) return false;
    }
  }
  return true;
}

IStructure image_istructure(std::span<const int> f, const IStructure& s, int target_size,
                            std::vector<std::string> target_names) {
  std::vector<bool> hit(static_cast<std::size_t>(target_size), false);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0 || f[i] >= target_size) throw DomainError("map value outside target carrier");
    hit[static_cast<std::size_t>(f[i])] = true;
  }
  for (int y = 0; y < target_size; ++y)
    if (!hit[static_cast<std::size_t>(y)])
      throw NotSurjective("element " + std::to_string(y) + " has no preimage");

  IStructure out(target_size, s.n_max(), std::move(target_names));
  for (int n = 2; n <= s.n_max(); ++n) {
    for (std::uint64_t key : s.tuples(n)) {
      auto tuple = decode_tuple(key, s.carrier_size(), n);
      std::vector<int> image(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        image[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
      out.insert(image);
    }
  }
  out.normalize();
  return out;
}

}  // namespace infinialg
