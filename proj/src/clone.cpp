#include "infinialg/clone.hpp"

#include <cmath>

namespace infinialg {

std::optional<OpId> Clone::find_op(int n, const std::string& name) const {
  for (OpId i = 0; i < op_count(n); ++i)
    if (op_name(n, i) == name) return i;
  return std::nullopt;
}

bool same_clone(const Clone& a, const Clone& b) {
  if (&a == &b) return true;
  if (a.n_max() != b.n_max()) return false;
  for (int n = 0; n <= a.n_max(); ++n) {
    if (a.op_count(n) != b.op_count(n)) return false;
    for (OpId i = 0; i < a.op_count(n); ++i)
      if (a.op_name(n, i) != b.op_name(n, i)) return false;
  }
  return true;
}

// ---- TableClone ----

TableClone::TableClone(int n_max, std::vector<std::vector<std::string>> names,
                       std::vector<std::vector<OpId>> proj,
                       std::vector<std::vector<std::vector<OpId>>> subst)
    : n_max_(n_max), names_(std::move(names)), proj_(std::move(proj)), subst_(std::move(subst)) {
  auto arities = static_cast<std::size_t>(n_max_ + 1);
  if (names_.size() != arities || proj_.size() != arities || subst_.size() != arities)
    throw DomainError("table clone: vectors must cover arities 0..n_max");
  for (int n = 0; n <= n_max_; ++n) {
    auto un = static_cast<std::size_t>(n);
    if (proj_[un].size() != static_cast<std::size_t>(n))
      throw DomainError("table clone: arity " + std::to_string(n) + " needs " +
                        std::to_string(n) + " projections");
    if (subst_[un].size() != arities)
      throw DomainError("table clone: substitution tables must cover target arities 0..n_max");
    for (int k = 0; k <= n_max_; ++k) {
      std::uint64_t expect = static_cast<std::uint64_t>(op_count(n));
      for (int i = 0; i < n; ++i) expect *= static_cast<std::uint64_t>(op_count(k));
      if (subst_[un][static_cast<std::size_t>(k)].size() != expect)
        throw DomainError("table clone: *_{" + std::to_string(n) + "," + std::to_string(k) +
                          "} has wrong size");
    }
  }
}

OpId TableClone::subst(int n, int k, OpId sigma, std::span<const OpId> args) const {
  if (static_cast<int>(args.size()) != n)
    throw ArityMismatch("substitution into arity " + std::to_string(n) + " needs " +
                        std::to_string(n) + " arguments");
  std::uint64_t base = static_cast<std::uint64_t>(op_count(k));
  std::uint64_t idx = static_cast<std::uint64_t>(sigma);
  for (int i = 0; i < n; ++i) idx = idx * base + static_cast<std::uint64_t>(args[static_cast<std::size_t>(i)]);
  return subst_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)][idx];
}

// ---- EndoClone ----

EndoClone::EndoClone(int carrier_size, int n_max, const SearchBudget& budget)
    : carrier_(carrier_size), n_max_(n_max) {
  if (carrier_ < 1) throw DomainError("endo clone needs a nonempty carrier");
  op_counts_.resize(static_cast<std::size_t>(n_max_ + 1));
  input_counts_.resize(static_cast<std::size_t>(n_max_ + 1));
  for (int n = 0; n <= n_max_; ++n) {
    std::uint64_t inputs = 1;
    for (int i = 0; i < n; ++i) inputs *= static_cast<std::uint64_t>(carrier_);
    input_counts_[static_cast<std::size_t>(n)] = inputs;
    double bits = static_cast<double>(inputs) * std::log2(static_cast<double>(carrier_));
    if (bits >= 62.0)
      throw BudgetExceeded(~0ULL, "endo clone operation count overflows at arity " +
                                      std::to_string(n));
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < inputs; ++i) count *= static_cast<std::uint64_t>(carrier_);
    if (count > budget.max_tuples)
      throw BudgetExceeded(count, "endo clone needs " + std::to_string(count) +
                                      " operations at arity " + std::to_string(n));
    op_counts_[static_cast<std::size_t>(n)] = count;
  }
}

int EndoClone::apply(int n, OpId op, std::span<const int> input) const {
  // input index in row-major order: first coordinate most significant.
  std::uint64_t idx = 0;
  for (int i = 0; i < n; ++i)
    idx = idx * static_cast<std::uint64_t>(carrier_) + static_cast<std::uint64_t>(input[static_cast<std::size_t>(i)]);
  // The op id read in base |A| is the output table left to right.
  std::uint64_t inputs = input_counts_[static_cast<std::size_t>(n)];
  std::uint64_t div = 1;
  for (std::uint64_t i = idx + 1; i < inputs; ++i) div *= static_cast<std::uint64_t>(carrier_);
  return static_cast<int>((static_cast<std::uint64_t>(op) / div) % static_cast<std::uint64_t>(carrier_));
}

OpId EndoClone::subst(int n, int k, OpId sigma, std::span<const OpId> args) const {
  std::uint64_t inputs = input_counts_[static_cast<std::size_t>(k)];
  std::uint64_t out = 0;
  std::vector<int> x(static_cast<std::size_t>(k));
  std::vector<int> y(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < inputs; ++i) {
    // decode input in row-major order
    std::uint64_t rest = i;
    for (int j = k - 1; j >= 0; --j) {
      x[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::uint64_t>(carrier_));
      rest /= static_cast<std::uint64_t>(carrier_);
    }
    for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = apply(k, args[static_cast<std::size_t>(j)], x);
    out = out * static_cast<std::uint64_t>(carrier_) + static_cast<std::uint64_t>(apply(n, sigma, y));
  }
  return static_cast<OpId>(out);
}

OpId EndoClone::proj(int n, int j) const {
  std::uint64_t inputs = input_counts_[static_cast<std::size_t>(n)];
  std::uint64_t out = 0;
  std::vector<int> x(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < inputs; ++i) {
    std::uint64_t rest = i;
    for (int t = n - 1; t >= 0; --t) {
      x[static_cast<std::size_t>(t)] = static_cast<int>(rest % static_cast<std::uint64_t>(carrier_));
      rest /= static_cast<std::uint64_t>(carrier_);
    }
    out = out * static_cast<std::uint64_t>(carrier_) + static_cast<std::uint64_t>(x[static_cast<std::size_t>(j - 1)]);
  }
  return static_cast<OpId>(out);
}

std::string EndoClone::op_name(int n, OpId op) const {
  std::uint64_t inputs = input_counts_[static_cast<std::size_t>(n)];
  std::string digits(static_cast<std::size_t>(inputs), '0');
  std::uint64_t rest = static_cast<std::uint64_t>(op);
  for (std::uint64_t i = inputs; i-- > 0;) {
    digits[static_cast<std::size_t>(i)] =
        static_cast<char>('0' + static_cast<int>(rest % static_cast<std::uint64_t>(carrier_)));
    rest /= static_cast<std::uint64_t>(carrier_);
  }
  return digits;
}

ClonePtr endo_clone(int carrier_size, int n_max, const SearchBudget& budget) {
  return std::make_shared<EndoClone>(carrier_size, n_max, budget);
}

// ---- validation ----

namespace {

// Flat substitution tables materialized for the hot loops; falls back to
// virtual dispatch for tables over the cap.
class SubstCache {
 public:
  SubstCache(const Clone& c, std::uint64_t per_table_limit = 20'000'000) : c_(c) {
    int N = c.n_max();
    tables_.resize(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n) {
      tables_[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(N + 1));
      for (int k = 0; k <= N; ++k) {
        std::uint64_t entries = static_cast<std::uint64_t>(c.op_count(n));
        bool overflow = false;
        for (int i = 0; i < n && !overflow; ++i) {
          std::uint64_t b = static_cast<std::uint64_t>(c.op_count(k));
          if (b != 0 && entries > per_table_limit / b + 1) overflow = true;
          entries *= b;
        }
        if (overflow || entries > per_table_limit || c.op_count(n) == 0) continue;
        if (n > 0 && c.op_count(k) == 0) continue;  // empty argument domain
        auto& table = tables_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        table.reserve(entries);
        std::vector<OpId> args(static_cast<std::size_t>(n), 0);
        for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
          if (n == 0) {
            table.push_back(c.subst(0, k, sigma, {}));
            continue;
          }
          std::fill(args.begin(), args.end(), 0);
          // args enumerated with args[n-1] fastest: index = ((sigma*B + a0)*B + a1)...
          bool more = true;
          while (more) {
            table.push_back(c.subst(n, k, sigma, args));
            more = false;
            for (int i = n - 1; i >= 0; --i) {
              if (++args[static_cast<std::size_t>(i)] < c.op_count(k)) {
                more = true;
                break;
              }
              args[static_cast<std::size_t>(i)] = 0;
            }
          }
        }
      }
    }
  }

  OpId subst(int n, int k, OpId sigma, std::span<const OpId> args) const {
    const auto& table = tables_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    if (table.empty()) return c_.subst(n, k, sigma, args);
    std::uint64_t base = static_cast<std::uint64_t>(c_.op_count(k));
    std::uint64_t idx = static_cast<std::uint64_t>(sigma);
    for (int i = 0; i < n; ++i) idx = idx * base + static_cast<std::uint64_t>(args[static_cast<std::size_t>(i)]);
    return table[idx];
  }

  // Raw table when materialized (nonempty domains only).
  const std::vector<OpId>* table(int n, int k) const {
    const auto& t = tables_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    return t.empty() ? nullptr : &t;
  }

 private:
  const Clone& c_;
  std::vector<std::vector<std::vector<OpId>>> tables_;
};

std::string op_tuple_str(const Clone& c, int arity, std::span<const OpId> ops) {
  std::string out = "(";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ",";
    out += c.op_name(arity, ops[i]);
  }
  return out + ")";
}

struct FamilyCounter {
  std::uint64_t total = 0;
  bool overflow = false;

  void multiply(std::uint64_t factor) {
    if (factor == 0) {
      total = 0;
      return;
    }
    if (total > (~0ULL) / factor) overflow = true;
    total *= factor;
  }
};

}  // namespace

ValidationReport validate_clone(const Clone& c, const ValidateOptions& options) {
  ValidationReport report;
  report.note = "axiom checks certify indices <= n_max = " + std::to_string(c.n_max()) + " only";
  SubstCache cache(c);
  int N = c.n_max();

  auto add_violation = [&](const std::string& axiom, const std::string& witness) {
    if (report.violations.size() < options.max_violations)
      report.violations.push_back({axiom, witness});
  };

  // Associativity: sigma *_{nk} (t_1 *_{mk} s, ..., t_n *_{mk} s)
  //              = (sigma *_{nm} t) *_{mk} s.
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      for (int k = 0; k <= N; ++k) {
        FamilyCounter counter;
        counter.total = static_cast<std::uint64_t>(c.op_count(n));
        for (int i = 0; i < n; ++i) counter.multiply(static_cast<std::uint64_t>(c.op_count(m)));
        for (int i = 0; i < m; ++i) counter.multiply(static_cast<std::uint64_t>(c.op_count(k)));
        if (counter.total == 0) continue;
        std::string family = "associativity(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                             ",k=" + std::to_string(k) + ")";
        std::vector<OpId> t(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(m)),
            u(static_cast<std::size_t>(n));
        auto fill_u = [&] {
          for (int i = 0; i < n; ++i)
            u[static_cast<std::size_t>(i)] = cache.subst(m, k, t[static_cast<std::size_t>(i)], s);
        };
        auto check_instance = [&](OpId sigma) {
          OpId lhs = cache.subst(n, k, sigma, u);
          OpId rhs = cache.subst(m, k, cache.subst(n, m, sigma, t), s);
          ++report.checked;
          if (lhs != rhs)
            add_violation(family, "sigma=" + c.op_name(n, sigma) + " t=" + op_tuple_str(c, m, t) +
                                      " s=" + op_tuple_str(c, k, s) + " lhs=" + c.op_name(k, lhs) +
                                      " rhs=" + c.op_name(k, rhs));
        };
        const std::vector<OpId>* table_nk = cache.table(n, k);
        const std::vector<OpId>* table_nm = cache.table(n, m);
        const std::vector<OpId>* table_mk = cache.table(m, k);
        if (!counter.overflow && counter.total <= options.exhaustive_limit && table_nk &&
            table_nm && table_mk && n > 0 && m > 0) {
          // flat-table kernel: maintain mixed-radix indices incrementally
          report.total += counter.total;
          std::uint64_t Bm = static_cast<std::uint64_t>(c.op_count(m));
          std::uint64_t Bk = static_cast<std::uint64_t>(c.op_count(k));
          std::uint64_t Bk_pow_n = 1, Bm_pow_n = 1, Bk_pow_m = 1;
          for (int i = 0; i < n; ++i) Bk_pow_n *= Bk;
          for (int i = 0; i < n; ++i) Bm_pow_n *= Bm;
          for (int i = 0; i < m; ++i) Bk_pow_m *= Bk;
          std::vector<OpId> phi(static_cast<std::size_t>(c.op_count(m)));
          std::fill(s.begin(), s.end(), 0);
          bool more_s = true;
          while (more_s) {
            std::uint64_t sidx = 0;  // flat index of s within O(k)^m
            for (int i = 0; i < m; ++i)
              sidx = sidx * Bk + static_cast<std::uint64_t>(s[static_cast<std::size_t>(i)]);
            for (OpId tt = 0; tt < c.op_count(m); ++tt)
              phi[static_cast<std::size_t>(tt)] =
                  (*table_mk)[static_cast<std::uint64_t>(tt) * Bk_pow_m + sidx];
            std::fill(t.begin(), t.end(), 0);
            bool more_t = true;
            while (more_t) {
              std::uint64_t tidx = 0, uidx = 0;
              for (int i = 0; i < n; ++i) {
                tidx = tidx * Bm + static_cast<std::uint64_t>(t[static_cast<std::size_t>(i)]);
                uidx = uidx * Bk + static_cast<std::uint64_t>(
                                       phi[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]);
              }
              for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
                OpId lhs = (*table_nk)[static_cast<std::uint64_t>(sigma) * Bk_pow_n + uidx];
                OpId v = (*table_nm)[static_cast<std::uint64_t>(sigma) * Bm_pow_n + tidx];
                OpId rhs = (*table_mk)[static_cast<std::uint64_t>(v) * Bk_pow_m + sidx];
                ++report.checked;
                if (lhs != rhs) {
                  for (int i = 0; i < n; ++i)
                    u[static_cast<std::size_t>(i)] = phi[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
                  add_violation(family, "sigma=" + c.op_name(n, sigma) + " t=" +
                                            op_tuple_str(c, m, t) + " s=" + op_tuple_str(c, k, s) +
                                            " lhs=" + c.op_name(k, lhs) + " rhs=" +
                                            c.op_name(k, rhs));
                }
              }
              more_t = false;
              for (int i = n - 1; i >= 0; --i) {
                if (++t[static_cast<std::size_t>(i)] < static_cast<OpId>(Bm)) {
                  more_t = true;
                  break;
                }
                t[static_cast<std::size_t>(i)] = 0;
              }
            }
            more_s = false;
            for (int i = m - 1; i >= 0; --i) {
              if (++s[static_cast<std::size_t>(i)] < static_cast<OpId>(Bk)) {
                more_s = true;
                break;
              }
              s[static_cast<std::size_t>(i)] = 0;
            }
          }
        } else if (!counter.overflow && counter.total <= options.exhaustive_limit) {
          report.total += counter.total;
          std::fill(s.begin(), s.end(), 0);
          bool more_s = true;
          while (more_s) {
            std::fill(t.begin(), t.end(), 0);
            bool more_t = true;
            while (more_t) {
              fill_u();
              for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) check_instance(sigma);
              more_t = n > 0 && next_tuple(t, c.op_count(m));
            }
            more_s = m > 0 && next_tuple(s, c.op_count(k));
          }
        } else {
          report.exhaustive = false;
          report.total += options.sample_size;
          std::uint64_t state = options.seed ^ (static_cast<std::uint64_t>(n) << 16) ^
                                (static_cast<std::uint64_t>(m) << 8) ^ static_cast<std::uint64_t>(k);
          for (std::uint64_t it = 0; it < options.sample_size; ++it) {
            OpId sigma = static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(n)));
            for (int i = 0; i < n; ++i)
              t[static_cast<std::size_t>(i)] =
                  static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(m)));
            for (int i = 0; i < m; ++i)
              s[static_cast<std::size_t>(i)] =
                  static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(k)));
            fill_u();
            check_instance(sigma);
          }
        }
      }
    }
  }

  // Projection: pi^n_j *_{nm} (t_1,...,t_n) = t_j.
  for (int n = 1; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      FamilyCounter counter;
      counter.total = static_cast<std::uint64_t>(n);
      for (int i = 0; i < n; ++i) counter.multiply(static_cast<std::uint64_t>(c.op_count(m)));
      if (counter.total == 0) continue;
      std::string family = "projection(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
      std::vector<OpId> t(static_cast<std::size_t>(n));
      auto check_instance = [&](int j) {
        OpId got = cache.subst(n, m, c.proj(n, j), t);
        ++report.checked;
        if (got != t[static_cast<std::size_t>(j - 1)])
          add_violation(family, "j=" + std::to_string(j) + " t=" + op_tuple_str(c, m, t) +
                                    " got=" + c.op_name(m, got));
      };
      if (!counter.overflow && counter.total <= options.exhaustive_limit) {
        report.total += counter.total;
        std::fill(t.begin(), t.end(), 0);
        bool more = true;
        while (more) {
          for (int j = 1; j <= n; ++j) check_instance(j);
          more = next_tuple(t, c.op_count(m));
        }
      } else {
        report.exhaustive = false;
        report.total += options.sample_size;
        std::uint64_t state = options.seed ^ 0xABCDULL ^ (static_cast<std::uint64_t>(n) << 8) ^
                              static_cast<std::uint64_t>(m);
        for (std::uint64_t it = 0; it < options.sample_size; ++it) {
          for (int i = 0; i < n; ++i)
            t[static_cast<std::size_t>(i)] =
                static_cast<OpId>(splitmix64(state) % static_cast<std::uint64_t>(c.op_count(m)));
          check_instance(1 + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n)));
        }
      }
    }
  }

  // Unit: sigma *_{nn} (pi^n_1,...,pi^n_n) = sigma.
  for (int n = 1; n <= N; ++n) {
    std::vector<OpId> projections;
    projections.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) projections.push_back(c.proj(n, j));
    report.total += static_cast<std::uint64_t>(c.op_count(n));
    for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
      OpId got = cache.subst(n, n, sigma, projections);
      ++report.checked;
      if (got != sigma)
        add_violation("unit(n=" + std::to_string(n) + ")",
                      "sigma=" + c.op_name(n, sigma) + " got=" + c.op_name(n, got));
    }
  }

  // Normalisation: *_{00}(c) = c.
  report.total += static_cast<std::uint64_t>(c.op_count(0));
  for (OpId sigma = 0; sigma < c.op_count(0); ++sigma) {
    OpId got = cache.subst(0, 0, sigma, {});
    ++report.checked;
    if (got != sigma)
      add_violation("normalisation", "c=" + c.op_name(0, sigma) + " got=" + c.op_name(0, got));
  }

  return report;
}

bool clone_hom_check(const CloneHom& h) {
  const Clone& src = *h.source;
  const Clone& dst = *h.target;
  if (src.n_max() != dst.n_max())
    throw DifferentClones("clone hom requires equal n_max");
  int N = src.n_max();
  for (int n = 0; n <= N; ++n)
    if (h.maps[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(src.op_count(n)))
      throw DomainError("clone hom family incomplete at arity " + std::to_string(n));

  for (int n = 1; n <= N; ++n)
    for (int j = 1; j <= n; ++j)
      if (h.maps[static_cast<std::size_t>(n)][static_cast<std::size_t>(src.proj(n, j))] != dst.proj(n, j))
        return false;

  std::vector<OpId> t, ft;
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= N; ++k) {
      if (src.op_count(n) == 0) continue;
      if (n > 0 && src.op_count(k) == 0) continue;
      t.assign(static_cast<std::size_t>(n), 0);
      ft.assign(static_cast<std::size_t>(n), 0);
      bool more = true;
      while (more) {
        for (int i = 0; i < n; ++i)
          ft[static_cast<std::size_t>(i)] =
              h.maps[static_cast<std::size_t>(k)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
        for (OpId sigma = 0; sigma < src.op_count(n); ++sigma) {
          OpId lhs = h.maps[static_cast<std::size_t>(k)][static_cast<std::size_t>(src.subst(n, k, sigma, t))];
          OpId rhs = dst.subst(n, k, h.maps[static_cast<std::size_t>(n)][static_cast<std::size_t>(sigma)], ft);
          if (lhs != rhs) return false;
        }
        more = n > 0 && next_tuple(t, src.op_count(k));
      }
    }
  }
  return true;
}

int ConstantsAlgebra::act(int n, OpId sigma, std::span<const int> constants) const {
  return clone->subst(n, 0, sigma, constants);
}

ConstantsAlgebra constants_algebra(ClonePtr c) {
  ConstantsAlgebra out;
  out.carrier_size = c->op_count(0);
  out.clone = std::move(c);
  return out;
}

}  // namespace infinialg
