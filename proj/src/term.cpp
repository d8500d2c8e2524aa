#include "infinialg/term.hpp"

#include <algorithm>
#include <set>

namespace infinialg {

std::vector<std::vector<int>> all_index_maps(int m, int n) {
  std::vector<std::vector<int>> maps;
  if (m == 0) {
    maps.push_back({});
    return maps;
  }
  if (n == 0) return maps;  // no maps from a nonempty set into the empty set
  std::vector<int> h(static_cast<std::size_t>(m), 0);
  do {
    maps.push_back(h);
  } while (next_tuple(h, n));
  return maps;
}

std::string join_ints(std::span<const int> values, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

int Signature::arity_of(const std::string& name) const {
  for (const auto& [sym, arity] : symbols)
    if (sym == name) return arity;
  return -1;
}

Term Term::make_var(int index) {
  Term t;
  t.var = index;
  return t;
}

Term Term::make_app(std::string symbol, std::vector<Term> args) {
  Term t;
  t.symbol = std::move(symbol);
  t.args = std::move(args);
  return t;
}

int Term::depth() const {
  if (is_var() || args.empty()) return 0;
  int d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

int Term::max_var() const {
  if (is_var()) return var;
  int m = 0;
  for (const auto& a : args) m = std::max(m, a.max_var());
  return m;
}

std::string Term::print() const {
  if (is_var()) return "x" + std::to_string(var);
  if (args.empty()) return symbol;
  std::string out = symbol + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].print();
  }
  return out + ")";
}

bool Term::operator==(const Term& other) const {
  if (var != other.var) return false;
  if (is_var()) return true;
  return symbol == other.symbol && args == other.args;
}

bool term_less(const Term& a, const Term& b) {
  int da = a.depth(), db = b.depth();
  if (da != db) return da < db;
  return a.print() < b.print();
}

void check_term(const Term& t, const Signature& sig, int nvars) {
  if (t.is_var()) {
    if (t.var > nvars)
      throw DomainError("variable x" + std::to_string(t.var) + " exceeds declared count " +
                        std::to_string(nvars));
    return;
  }
  int arity = sig.arity_of(t.symbol);
  if (arity < 0) throw DomainError("undeclared symbol '" + t.symbol + "'");
  if (arity != static_cast<int>(t.args.size()))
    throw ArityError("symbol '" + t.symbol + "' declared with arity " + std::to_string(arity) +
                     " but used with " + std::to_string(t.args.size()) + " arguments");
  for (const auto& a : t.args) check_term(a, sig, nvars);
}

Term term_substitute(const Term& t, std::span<const Term> subs) {
  if (t.is_var()) {
    if (t.var > static_cast<int>(subs.size()))
      throw ArityMismatch("term over " + std::to_string(t.max_var()) +
                          " variables given " + std::to_string(subs.size()) + " substitutes");
    return subs[static_cast<std::size_t>(t.var - 1)];
  }
  Term out = Term::make_app(t.symbol);
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(term_substitute(a, subs));
  return out;
}

std::vector<Term> enumerate_terms(const Presentation& p, int nvars, int depth) {
  // Level sets: T_0 = variables + constants, T_{k+1} adds every application
  // of a positive-arity symbol to T_k tuples.
  std::vector<Term> level;
  for (int j = 1; j <= nvars; ++j) level.push_back(Term::make_var(j));
  for (const auto& [sym, arity] : p.signature.symbols)
    if (arity == 0) level.push_back(Term::make_app(sym));

  std::set<std::string> seen;
  std::vector<Term> all;
  for (const auto& t : level)
    if (seen.insert(t.print()).second) all.push_back(t);

  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next;
    for (const auto& [sym, arity] : p.signature.symbols) {
      if (arity == 0) continue;
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      if (all.empty()) continue;
      do {
        std::vector<Term> args;
        args.reserve(static_cast<std::size_t>(arity));
        for (int i : idx) args.push_back(all[static_cast<std::size_t>(i)]);
        Term t = Term::make_app(sym, std::move(args));
        if (t.depth() <= d && seen.insert(t.print()).second) next.push_back(t);
      } while (next_tuple(idx, static_cast<int>(all.size())));
    }
    if (next.empty()) break;
    all.insert(all.end(), next.begin(), next.end());
  }
  std::sort(all.begin(), all.end(), term_less);
  return all;
}

}  // namespace infinialg
