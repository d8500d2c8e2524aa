#include "infinialg/free_clone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace infinialg {
namespace {

// Union-find e-graph over ground terms in a fixed variable context. Nodes are
// variables or applications of a symbol to class ids; signatures are kept
// canonical so congruence closure is a rehash-and-merge fixpoint.
class TermGraph {
 public:
  explicit TermGraph(const Signature& sig) : sig_(sig) {}

  void add_vars(int nvars) {
    for (int j = 1; j <= nvars; ++j) {
      int id = new_node(-1, {}, Term::make_var(j));
      var_class_.push_back(id);
    }
  }

  int find(int id) const {
    while (parent_[static_cast<std::size_t>(id)] != id) {
      parent_[static_cast<std::size_t>(id)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(id)])];
      id = parent_[static_cast<std::size_t>(id)];
    }
    return id;
  }

  int var_class(int j) const { return find(var_class_[static_cast<std::size_t>(j - 1)]); }

  // Application node over canonical child classes; returns the class id.
  int mk_app(int sym, std::vector<int> children) {
    for (auto& ch : children) ch = find(ch);
    auto key = sig_key(sym, children);
    auto it = sig_map_.find(key);
    if (it != sig_map_.end()) return find(it->second);
    Term t = Term::make_app(sig_.symbols[static_cast<std::size_t>(sym)].first);
    t.args.reserve(children.size());
    for (int ch : children) t.args.push_back(best_term_[static_cast<std::size_t>(ch)]);
    int id = new_node(sym, std::move(children), std::move(t));
    sig_map_.emplace(std::move(key), id);
    return id;
  }

  // Evaluates a term whose variables are bound to class ids, creating any
  // missing application nodes along the way.
  int eval(const Term& t, std::span<const int> env) {
    if (t.is_var()) return find(env[static_cast<std::size_t>(t.var - 1)]);
    int sym = symbol_index(t.symbol);
    std::vector<int> children;
    children.reserve(t.args.size());
    for (const auto& a : t.args) children.push_back(eval(a, env));
    return mk_app(sym, std::move(children));
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);  // keep the smaller id as root
    parent_[static_cast<std::size_t>(b)] = a;
    if (term_less(best_term_[static_cast<std::size_t>(b)], best_term_[static_cast<std::size_t>(a)]))
      best_term_[static_cast<std::size_t>(a)] = best_term_[static_cast<std::size_t>(b)];
    min_node_[static_cast<std::size_t>(a)] =
        std::min(min_node_[static_cast<std::size_t>(a)], min_node_[static_cast<std::size_t>(b)]);
    dirty_ = true;
  }

  // Congruence closure: rehash all application signatures and merge nodes
  // whose canonical signatures collide, until stable.
  void rebuild() {
    do {
      dirty_ = false;
      sig_map_.clear();
      for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
        auto& node = nodes_[static_cast<std::size_t>(id)];
        if (node.sym < 0) continue;
        for (auto& ch : node.children) ch = find(ch);
        auto key = sig_key(node.sym, node.children);
        auto [it, inserted] = sig_map_.emplace(std::move(key), id);
        if (!inserted) merge(it->second, id);
      }
    } while (dirty_);
  }

  std::vector<int> roots() const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(nodes_.size()); ++id)
      if (find(id) == id) out.push_back(id);
    return out;
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int min_node_of(int root) const { return min_node_[static_cast<std::size_t>(find(root))]; }
  const Term& best_term(int root) const { return best_term_[static_cast<std::size_t>(find(root))]; }
  const Term& node_term(int id) const { return nodes_[static_cast<std::size_t>(id)].term; }

  std::vector<int> class_members(int root) const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(nodes_.size()); ++id)
      if (find(id) == find(root)) out.push_back(id);
    return out;
  }

  int symbol_index(const std::string& name) const {
    for (std::size_t i = 0; i < sig_.symbols.size(); ++i)
      if (sig_.symbols[i].first == name) return static_cast<int>(i);
    throw DomainError("undeclared symbol '" + name + "'");
  }

 private:
  struct Node {
    int sym;  // -1 for variables
    std::vector<int> children;
    Term term;  // creation-time concrete syntax, used for representatives
  };

  static std::string sig_key(int sym, const std::vector<int>& children) {
    std::string key = std::to_string(sym);
    for (int ch : children) key += "," + std::to_string(ch);
    return key;
  }

  int new_node(int sym, std::vector<int> children, Term term) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({sym, std::move(children), std::move(term)});
    parent_.push_back(id);
    best_term_.push_back(nodes_.back().term);
    min_node_.push_back(id);
    return id;
  }

  const Signature& sig_;
  std::vector<Node> nodes_;
  mutable std::vector<int> parent_;
  std::vector<Term> best_term_;  // per root: least member term
  std::vector<int> min_node_;    // per root: least member node id
  std::unordered_map<std::string, int> sig_map_;
  std::vector<int> var_class_;
  bool dirty_ = false;
};

// Saturates the free algebra on nvars generators. Returns the graph plus a
// flag; depth_used reports the confirming round.
struct ArityResult {
  std::unique_ptr<TermGraph> graph;
  bool saturated = false;
  int depth_used = 0;
};

ArityResult saturate_arity(const Presentation& p, int nvars, int depth_bound) {
  ArityResult result;
  result.graph = std::make_unique<TermGraph>(p.signature);
  TermGraph& g = *result.graph;
  g.add_vars(nvars);

  for (int round = 1; round <= depth_bound; ++round) {
    std::vector<int> reps = g.roots();
    int nodes_before = g.node_count();
    std::size_t roots_before = reps.size();

    // Apply every symbol to all tuples of current representatives.
    for (std::size_t sym = 0; sym < p.signature.symbols.size(); ++sym) {
      int arity = p.signature.symbols[sym].second;
      if (arity > 0 && reps.empty()) continue;
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      bool more = true;
      while (more) {
        std::vector<int> children;
        children.reserve(static_cast<std::size_t>(arity));
        for (int i : idx) children.push_back(reps[static_cast<std::size_t>(i)]);
        g.mk_app(static_cast<int>(sym), std::move(children));
        more = arity > 0 && next_tuple(idx, static_cast<int>(reps.size()));
      }
    }

    // Instantiate every equation over tuples of representatives.
    for (const auto& eq : p.equations) {
      if (eq.nvars > 0 && reps.empty()) continue;
      std::vector<int> idx(static_cast<std::size_t>(eq.nvars), 0);
      std::vector<int> env(static_cast<std::size_t>(eq.nvars));
      bool more = true;
      while (more) {
        for (int i = 0; i < eq.nvars; ++i)
          env[static_cast<std::size_t>(i)] = reps[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        g.merge(g.eval(eq.lhs, env), g.eval(eq.rhs, env));
        more = eq.nvars > 0 && next_tuple(idx, static_cast<int>(reps.size()));
      }
    }

    g.rebuild();

    // Saturated: every class contains a pre-round node and no two pre-round
    // classes were merged.
    std::set<int> old_roots_now;
    for (int r : reps) old_roots_now.insert(g.find(r));
    bool merged_old = old_roots_now.size() != roots_before;
    bool added_new = false;
    for (int r : g.roots())
      if (g.min_node_of(r) >= nodes_before) added_new = true;
    result.depth_used = round;
    if (!merged_old && !added_new) {
      result.saturated = true;
      break;
    }
  }
  return result;
}

}  // namespace

FreeCloneResult free_clone(const Presentation& p, int n_max, int depth_bound) {
  if (depth_bound < 1) throw DomainError("depth_bound must be >= 1");
  // Symbols of arity above n_max still occur inside terms; only the operation
  // sets O(n) themselves are truncated.
  std::vector<ArityResult> per_arity;
  SaturationReport report;
  report.saturated = true;
  for (int n = 0; n <= n_max; ++n) {
    ArityResult r = saturate_arity(p, n, depth_bound);
    if (!r.saturated)
      throw NotSaturated(depth_bound, "theory '" + p.name + "' still growing at arity " +
                                          std::to_string(n) + " after " +
                                          std::to_string(depth_bound) + " rounds");
    report.depth_used = std::max(report.depth_used, r.depth_used);
    per_arity.push_back(std::move(r));
  }

  // Classes per arity, in canonical representative order.
  std::vector<std::vector<int>> class_roots(static_cast<std::size_t>(n_max + 1));
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(n_max + 1));
  std::vector<std::unordered_map<int, OpId>> root_index(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    TermGraph& g = *per_arity[static_cast<std::size_t>(n)].graph;
    auto roots = g.roots();
    std::sort(roots.begin(), roots.end(),
              [&](int a, int b) { return term_less(g.best_term(a), g.best_term(b)); });
    for (OpId i = 0; i < static_cast<OpId>(roots.size()); ++i) {
      int root = roots[static_cast<std::size_t>(i)];
      class_roots[static_cast<std::size_t>(n)].push_back(root);
      names[static_cast<std::size_t>(n)].push_back(g.best_term(root).print());
      root_index[static_cast<std::size_t>(n)].emplace(root, i);
    }
    report.sizes[n] = static_cast<int>(roots.size());
    auto& reps_out = report.class_reps[n];
    for (int root : roots) {
      std::vector<Term> members;
      for (int id : g.class_members(root)) members.push_back(g.node_term(id));
      std::sort(members.begin(), members.end(), term_less);
      std::vector<std::string> printed;
      for (const auto& t : members) {
        std::string s = t.print();
        if (printed.empty() || printed.back() != s) printed.push_back(std::move(s));
      }
      reps_out.emplace(g.best_term(root).print(), std::move(printed));
    }
  }

  // Projections and substitution tables at the class level. Substituted
  // representatives are evaluated in the target-arity graph: saturation
  // guarantees every application signature resolves to an existing class.
  std::vector<std::vector<OpId>> proj(static_cast<std::size_t>(n_max + 1));
  for (int n = 1; n <= n_max; ++n)
    for (int j = 1; j <= n; ++j) {
      TermGraph& g = *per_arity[static_cast<std::size_t>(n)].graph;
      proj[static_cast<std::size_t>(n)].push_back(
          root_index[static_cast<std::size_t>(n)].at(g.find(g.var_class(j))));
    }

  std::vector<std::vector<std::vector<OpId>>> subst(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    subst[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n_max + 1));
    int count_n = static_cast<int>(class_roots[static_cast<std::size_t>(n)].size());
    for (int k = 0; k <= n_max; ++k) {
      TermGraph& gk = *per_arity[static_cast<std::size_t>(k)].graph;
      int count_k = static_cast<int>(class_roots[static_cast<std::size_t>(k)].size());
      auto& table = subst[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      if (n > 0 && count_k == 0) continue;  // empty domain, empty table
      std::vector<int> args(static_cast<std::size_t>(n), 0);
      for (OpId sigma = 0; sigma < count_n; ++sigma) {
        // by value: eval below may grow the graph and reallocate its terms
        const Term rep =
            per_arity[static_cast<std::size_t>(n)].graph->best_term(class_roots[static_cast<std::size_t>(n)][static_cast<std::size_t>(sigma)]);
        std::fill(args.begin(), args.end(), 0);
        bool more = true;
        while (more) {
          std::vector<int> env(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            env[static_cast<std::size_t>(i)] =
                class_roots[static_cast<std::size_t>(k)][static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
          int before = gk.node_count();
          int result_root = gk.eval(rep, env);
          if (gk.node_count() != before) {
            gk.rebuild();
            result_root = gk.find(result_root);
            if (!root_index[static_cast<std::size_t>(k)].count(result_root))
              throw InternalInconsistency("saturated graph produced a fresh class during "
                                          "substitution table construction");
          }
          table.push_back(root_index[static_cast<std::size_t>(k)].at(gk.find(result_root)));
          more = false;
          for (int i = n - 1; i >= 0; --i) {
            if (++args[static_cast<std::size_t>(i)] < count_k) {
              more = true;
              break;
            }
            args[static_cast<std::size_t>(i)] = 0;
          }
        }
      }
    }
  }

  FreeCloneResult out;
  out.clone = std::make_shared<TableClone>(n_max, std::move(names), std::move(proj),
                                           std::move(subst));
  out.report = std::move(report);
  out.report.saturated = true;
  return out;
}

Presentation theory_of_clone(const Clone& c, const SearchBudget& budget) {
  Presentation p;
  p.name = "TheoryOfClone";
  int N = c.n_max();
  // one symbol per operation
  std::vector<std::vector<std::string>> sym_names(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n)
    for (OpId i = 0; i < c.op_count(n); ++i) {
      std::string name = "f" + std::to_string(n) + "_" + std::to_string(i);
      sym_names[static_cast<std::size_t>(n)].push_back(name);
      p.signature.symbols.emplace_back(name, n);
    }

  std::uint64_t eq_count = 0;
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m) {
      std::uint64_t block = static_cast<std::uint64_t>(c.op_count(n));
      for (int i = 0; i < n; ++i) block *= static_cast<std::uint64_t>(c.op_count(m));
      eq_count += block;
    }
  if (eq_count > budget.max_tuples)
    throw BudgetExceeded(eq_count, "clone too large to emit as a presentation");

  auto vars = [](int m) {
    std::vector<Term> xs;
    for (int j = 1; j <= m; ++j) xs.push_back(Term::make_var(j));
    return xs;
  };

  // Substitution-table equations:
  //   F_sigma(F_{t_1}(x...), ..., F_{t_n}(x...)) = F_{sigma * t}(x...)
  for (int n = 0; n <= N; ++n) {
    for (int m = 0; m <= N; ++m) {
      if (c.op_count(n) == 0) continue;
      if (n > 0 && c.op_count(m) == 0) continue;
      std::vector<OpId> t(static_cast<std::size_t>(n), 0);
      bool more = true;
      while (more) {
        for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
          Equation eq;
          eq.nvars = m;
          std::vector<Term> args;
          args.reserve(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            args.push_back(Term::make_app(
                sym_names[static_cast<std::size_t>(m)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])],
                vars(m)));
          eq.lhs = Term::make_app(sym_names[static_cast<std::size_t>(n)][static_cast<std::size_t>(sigma)],
                                  std::move(args));
          OpId composite = c.subst(n, m, sigma, t);
          eq.rhs = Term::make_app(
              sym_names[static_cast<std::size_t>(m)][static_cast<std::size_t>(composite)], vars(m));
          p.equations.push_back(std::move(eq));
        }
        more = n > 0 && next_tuple(t, c.op_count(m));
      }
    }
  }

  // Projection identities: F_{pi^n_j}(x1,...,xn) = xj.
  for (int n = 1; n <= N; ++n)
    for (int j = 1; j <= n; ++j) {
      Equation eq;
      eq.nvars = n;
      eq.lhs = Term::make_app(
          sym_names[static_cast<std::size_t>(n)][static_cast<std::size_t>(c.proj(n, j))], vars(n));
      eq.rhs = Term::make_var(j);
      p.equations.push_back(std::move(eq));
    }

  return p;
}

}  // namespace infinialg
