#ifndef INFINIALG_COMMON_HPP
#define INFINIALG_COMMON_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace infinialg {

// Global default truncation arity. Every quantification over "all n" in the
// library is checked for n <= n_max only; reports carry this caveat.
inline constexpr int kDefaultNMax = 3;

// Hard cap on declared symbol arities in the theory DSL. Symbols above the
// clone truncation may still appear inside terms.
inline constexpr int kMaxDeclaredArity = 8;

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct SyntaxError : Error {
  int line, column;
  std::vector<std::string> expected;
  SyntaxError(int ln, int col, const std::string& msg, std::vector<std::string> exp = {})
      : Error("SyntaxError", "line " + std::to_string(ln) + ", col " + std::to_string(col) +
                                 ": " + msg),
        line(ln), column(col), expected(std::move(exp)) {}
};

struct ArityError : Error {
  explicit ArityError(const std::string& msg) : Error("ArityError", msg) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& msg) : Error("ArityMismatch", msg) {}
};

struct NotSaturated : Error {
  int depth_bound;
  explicit NotSaturated(int depth, const std::string& msg)
      : Error("NotSaturated", msg), depth_bound(depth) {}
};

struct BudgetExceeded : Error {
  std::uint64_t required;
  explicit BudgetExceeded(std::uint64_t req, const std::string& msg)
      : Error("BudgetExceeded", msg), required(req) {}
};

struct NotSymmetricReflexive : Error {
  explicit NotSymmetricReflexive(const std::string& msg)
      : Error("NotSymmetricReflexive", msg) {}
};

struct NotSurjective : Error {
  explicit NotSurjective(const std::string& msg) : Error("NotSurjective", msg) {}
};

struct DifferentClones : Error {
  explicit DifferentClones(const std::string& msg) : Error("DifferentClones", msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

struct NotAClonAlgebra : Error {
  explicit NotAClonAlgebra(const std::string& msg) : Error("NotAClonAlgebra", msg) {}
};

struct NotACongruence : Error {
  explicit NotACongruence(const std::string& msg) : Error("NotACongruence", msg) {}
};

struct JointReflectionFailure : Error {
  std::vector<int> witness;  // tuple of relation-carrier indices
  JointReflectionFailure(std::vector<int> w, const std::string& msg)
      : Error("JointReflectionFailure", msg), witness(std::move(w)) {}
};

struct LegNotReflecting : Error {
  int leg_index;
  explicit LegNotReflecting(int idx)
      : Error("LegNotReflecting", "leg " + std::to_string(idx) + " does not reflect i-structure"),
        leg_index(idx) {}
};

struct InvalidLeg : Error {
  int leg_index;
  InvalidLeg(int idx, const std::string& msg)
      : Error("InvalidLeg", "leg " + std::to_string(idx) + ": " + msg), leg_index(idx) {}
};

struct InternalInconsistency : Error {
  explicit InternalInconsistency(const std::string& msg)
      : Error("InternalInconsistency", msg) {}
};

struct AtlasInvalid : Error {
  explicit AtlasInvalid(const std::string& msg) : Error("AtlasInvalid", msg) {}
};

// Enumeration bounds for the brute-force paths. max_function_space bounds
// |W|^|A| function enumerations, max_tuples bounds materialized tuple spaces.
struct SearchBudget {
  std::uint64_t max_function_space = 50'000'000;
  std::uint64_t max_tuples = 10'000'000;
};

struct Violation {
  std::string axiom;
  std::string witness;
};

// Violations are data, not errors. `exhaustive` is false when some axiom
// family was sampled rather than fully enumerated; `note` carries the
// truncation caveat.
struct ValidationReport {
  std::vector<Violation> violations;
  std::uint64_t checked = 0;
  std::uint64_t total = 0;
  bool exhaustive = true;
  std::string note;

  bool ok() const { return violations.empty(); }
};

// ---- small shared helpers ----

// key = sum tuple[i] * base^i; requires base^n to fit in 64 bits.
inline std::uint64_t encode_tuple(std::span<const int> tuple, int base) {
  std::uint64_t key = 0, mul = 1;
  for (int v : tuple) {
    key += static_cast<std::uint64_t>(v) * mul;
    mul *= static_cast<std::uint64_t>(base);
  }
  return key;
}

inline std::vector<int> decode_tuple(std::uint64_t key, int base, int n) {
  std::vector<int> tuple(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(key % static_cast<std::uint64_t>(base));
    key /= static_cast<std::uint64_t>(base);
  }
  return tuple;
}

// All maps h : {0..m-1} -> {0..n-1}, each as a vector of images.
std::vector<std::vector<int>> all_index_maps(int m, int n);

// Advances a mixed-radix counter where every digit has the same radix.
// Returns false once the counter wraps to all zeros.
inline bool next_tuple(std::vector<int>& tuple, int radix) {
  for (auto& digit : tuple) {
    if (++digit < radix) return true;
    digit = 0;
  }
  return false;
}

std::string join_ints(std::span<const int> values, const std::string& sep = ",");

// splitmix64; used wherever the library needs deterministic sampling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace infinialg

#endif
