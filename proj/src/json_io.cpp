#include "infinialg/json_io.hpp"

#include <algorithm>

namespace infinialg {

namespace {

ClonePtr clone_from_ref(const std::string& ref, int n_max) {
  auto colon = ref.find(':');
  if (colon == std::string::npos) throw DomainError("clone ref needs the form kind:parameter");
  std::string kind = ref.substr(0, colon);
  int param = std::stoi(ref.substr(colon + 1));
  if (kind == "affine") return affine_clone(ring_zmod(param), n_max);
  if (kind == "abelian") return abelian_exp_clone(param, n_max);
  if (kind == "endo") return endo_clone(param, n_max);
  throw DomainError("unknown clone ref kind '" + kind + "'");
}

std::string clone_ref_of(const Clone& c) {
  if (auto* ab = dynamic_cast<const AbelianExpClone*>(&c))
    return "abelian:" + std::to_string(ab->modulus());
  if (auto* af = dynamic_cast<const AffineClone*>(&c)) {
    // only the zmod family has a stable ref
    if (af->ring().name().rfind("zmod", 0) == 0)
      return "affine:" + af->ring().name().substr(4);
    return {};
  }
  if (auto* en = dynamic_cast<const EndoClone*>(&c))
    return "endo:" + std::to_string(en->carrier_size());
  return {};
}

}  // namespace

json clone_to_json(const ClonePtr& c, const SearchBudget& budget) {
  json j;
  j["n_max"] = c->n_max();
  std::string ref = clone_ref_of(*c);
  if (!ref.empty()) {
    j["ref"] = ref;
    return j;
  }

  std::uint64_t rows = 0;
  for (int n = 0; n <= c->n_max(); ++n)
    for (int k = 0; k <= c->n_max(); ++k) {
      std::uint64_t block = static_cast<std::uint64_t>(c->op_count(n));
      for (int i = 0; i < n; ++i) block *= static_cast<std::uint64_t>(c->op_count(k));
      rows += block;
      if (rows > budget.max_tuples)
        throw BudgetExceeded(rows, "clone too large to serialize as tables");
    }

  json ops = json::object();
  for (int n = 0; n <= c->n_max(); ++n) {
    json level = json::array();
    for (OpId i = 0; i < c->op_count(n); ++i) level.push_back(c->op_name(n, i));
    ops[std::to_string(n)] = std::move(level);
  }
  j["ops"] = std::move(ops);

  json proj = json::object();
  for (int n = 1; n <= c->n_max(); ++n) {
    if (c->op_count(n) == 0) continue;  // a positive arity can be empty in table clones
    for (int jj = 1; jj <= n; ++jj)
      proj[std::to_string(n) + "," + std::to_string(jj)] = c->op_name(n, c->proj(n, jj));
  }
  j["proj"] = std::move(proj);

  json subst = json::array();
  for (int n = 0; n <= c->n_max(); ++n) {
    for (int k = 0; k <= c->n_max(); ++k) {
      if (c->op_count(n) == 0) continue;
      if (n > 0 && c->op_count(k) == 0) continue;
      std::vector<OpId> args(static_cast<std::size_t>(n), 0);
      for (OpId sigma = 0; sigma < c->op_count(n); ++sigma) {
        std::fill(args.begin(), args.end(), 0);
        bool more = true;
        while (more) {
          json row;
          row["n"] = n;
          row["k"] = k;
          row["sigma"] = c->op_name(n, sigma);
          json arg_names = json::array();
          for (OpId a : args) arg_names.push_back(c->op_name(k, a));
          row["args"] = std::move(arg_names);
          row["result"] = c->op_name(k, c->subst(n, k, sigma, args));
          subst.push_back(std::move(row));
          more = false;
          for (int i = n - 1; i >= 0; --i) {
            if (++args[static_cast<std::size_t>(i)] < c->op_count(k)) {
              more = true;
              break;
            }
            args[static_cast<std::size_t>(i)] = 0;
          }
        }
      }
    }
  }
  j["subst"] = std::move(subst);
  return j;
}

ClonePtr clone_from_json(const json& j) {
  int n_max = j.at("n_max").get<int>();
  if (j.contains("ref")) return clone_from_ref(j.at("ref").get<std::string>(), n_max);

  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(n_max + 1));
  std::vector<std::map<std::string, OpId>> index(static_cast<std::size_t>(n_max + 1));
  const json& ops = j.at("ops");
  for (int n = 0; n <= n_max; ++n) {
    auto key = std::to_string(n);
    if (!ops.contains(key)) continue;
    for (const auto& name : ops.at(key)) {
      auto s = name.get<std::string>();
      index[static_cast<std::size_t>(n)][s] =
          static_cast<OpId>(names[static_cast<std::size_t>(n)].size());
      names[static_cast<std::size_t>(n)].push_back(std::move(s));
    }
  }
  auto op_of = [&](int n, const std::string& s) {
    auto it = index[static_cast<std::size_t>(n)].find(s);
    if (it == index[static_cast<std::size_t>(n)].end())
      throw DomainError("unknown operation id '" + s + "' at arity " + std::to_string(n));
    return it->second;
  };

  std::vector<std::vector<OpId>> proj(static_cast<std::size_t>(n_max + 1));
  for (int n = 1; n <= n_max; ++n)
    for (int jj = 1; jj <= n; ++jj) {
      auto key = std::to_string(n) + "," + std::to_string(jj);
      if (!j.at("proj").contains(key)) {
        if (names[static_cast<std::size_t>(n)].empty()) {
          continue;  // empty arity: projections vacuous only when O(n) empty
        }
        throw DomainError("missing projection " + key);
      }
      proj[static_cast<std::size_t>(n)].push_back(
          op_of(n, j.at("proj").at(key).get<std::string>()));
    }
  // empty arities still need placeholder projections arrays of the right size
  for (int n = 1; n <= n_max; ++n)
    if (names[static_cast<std::size_t>(n)].empty())
      proj[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n), 0);

  std::vector<std::vector<std::vector<OpId>>> subst(static_cast<std::size_t>(n_max + 1));
  std::vector<std::vector<std::map<std::uint64_t, OpId>>> rows(
      static_cast<std::size_t>(n_max + 1),
      std::vector<std::map<std::uint64_t, OpId>>(static_cast<std::size_t>(n_max + 1)));
  for (const auto& row : j.at("subst")) {
    int n = row.at("n").get<int>();
    int k = row.at("k").get<int>();
    OpId sigma = op_of(n, row.at("sigma").get<std::string>());
    std::uint64_t base = names[static_cast<std::size_t>(k)].size();
    std::uint64_t idx = static_cast<std::uint64_t>(sigma);
    if (row.at("args").size() != static_cast<std::size_t>(n))
      throw DomainError("substitution row has the wrong argument count");
    for (const auto& arg : row.at("args"))
      idx = idx * base + static_cast<std::uint64_t>(op_of(k, arg.get<std::string>()));
    rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)][idx] =
        op_of(k, row.at("result").get<std::string>());
  }
  for (int n = 0; n <= n_max; ++n) {
    subst[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n_max + 1));
    for (int k = 0; k <= n_max; ++k) {
      std::uint64_t expect = names[static_cast<std::size_t>(n)].size();
      for (int i = 0; i < n; ++i) expect *= names[static_cast<std::size_t>(k)].size();
      auto& flat = subst[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      const auto& loaded = rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      if (loaded.size() != expect)
        throw DomainError("substitution table *_{" + std::to_string(n) + "," + std::to_string(k) +
                          "} is not total: " + std::to_string(loaded.size()) + " of " +
                          std::to_string(expect) + " rows");
      flat.resize(expect);
      for (const auto& [idx, result] : loaded) flat[idx] = result;
    }
  }
  return std::make_shared<TableClone>(n_max, std::move(names), std::move(proj), std::move(subst));
}

json istructure_to_json(const IStructure& s) {
  json j;
  j["carrier"] = s.names();
  j["n_max"] = s.n_max();
  json nbhd = json::object();
  for (int n = 2; n <= s.n_max(); ++n) {
    json level = json::array();
    for (std::uint64_t key : s.tuples(n)) level.push_back(decode_tuple(key, s.carrier_size(), n));
    nbhd[std::to_string(n)] = std::move(level);
  }
  j["nbhd"] = std::move(nbhd);
  return j;
}

IStructure istructure_from_json(const json& j) {
  std::vector<std::string> names = j.at("carrier").get<std::vector<std::string>>();
  int n_max = j.at("n_max").get<int>();
  int size = static_cast<int>(names.size());
  IStructure s(size, n_max, std::move(names));
  if (j.contains("nbhd")) {
    for (const auto& [key, tuples] : j.at("nbhd").items()) {
      int n = std::stoi(key);
      if (n < 2 || n > n_max) throw DomainError("nbhd arity outside 2..n_max");
      for (const auto& t : tuples) {
        auto tuple = t.get<std::vector<int>>();
        if (static_cast<int>(tuple.size()) != n) throw DomainError("tuple length mismatch");
        s.insert(tuple);
      }
    }
  }
  s.normalize();
  return s;
}

json ialgebra_to_json(const IAlgebra& a, const SearchBudget& budget) {
  json j;
  j["clone"] = clone_to_json(a.clone(), budget);
  j["istructure"] = istructure_to_json(a.istr());
  json action = json::array();
  const Clone& c = *a.clone();
  for (int n = 0; n <= a.n_max(); ++n) {
    std::uint64_t tuples = a.istr().tuple_count(n);
    for (OpId sigma = 0; sigma < c.op_count(n); ++sigma) {
      for (std::uint64_t i = 0; i < tuples; ++i) {
        json row;
        row["n"] = n;
        row["op"] = c.op_name(n, sigma);
        if (n == 0)
          row["tuple"] = json::array();
        else if (n == 1)
          row["tuple"] = std::vector<int>{static_cast<int>(i)};
        else
          row["tuple"] = decode_tuple(a.istr().tuples(n)[i], a.carrier_size(), n);
        row["result"] = a.act_at(n, sigma, i);
        action.push_back(std::move(row));
      }
    }
  }
  j["action"] = std::move(action);
  return j;
}

IAlgebraPtr ialgebra_from_json(const json& j) {
  ClonePtr clone = clone_from_json(j.at("clone"));
  IStructure istr = istructure_from_json(j.at("istructure"));
  const Clone& c = *clone;
  std::vector<std::map<std::pair<OpId, std::uint64_t>, int>> rows(
      static_cast<std::size_t>(istr.n_max() + 1));
  for (const auto& row : j.at("action")) {
    int n = row.at("n").get<int>();
    auto op = c.find_op(n, row.at("op").get<std::string>());
    if (!op) throw DomainError("action row references an unknown operation");
    auto tuple = row.at("tuple").get<std::vector<int>>();
    std::int64_t idx = istr.tuple_index(tuple);
    if (idx < 0) throw DomainError("action row tuple outside A<n>");
    rows[static_cast<std::size_t>(n)][{*op, static_cast<std::uint64_t>(idx)}] =
        row.at("result").get<int>();
  }
  auto act = [rows = std::move(rows), &istr](int n, OpId sigma, std::span<const int> tuple) {
    auto idx = istr.tuple_index(tuple);
    auto it = rows[static_cast<std::size_t>(n)].find({sigma, static_cast<std::uint64_t>(idx)});
    if (it == rows[static_cast<std::size_t>(n)].end())
      throw DomainError("action table is not total on O(n) x A<n>");
    return it->second;
  };
  return std::make_shared<IAlgebra>(std::move(clone), istr, act);
}

json ihom_to_json(const IHom& h, const SearchBudget& budget) {
  json j;
  j["source"] = ialgebra_to_json(*h.source, budget);
  j["target"] = ialgebra_to_json(*h.target, budget);
  j["map"] = h.map;
  j["flags"] = {{"i_morphism", h.i_morphism},
                {"equivariant", h.equivariant},
                {"reflects", h.reflects},
                {"closed_image", h.closed_image}};
  return j;
}

IHom ihom_from_json(const json& j) {
  IAlgebraPtr source = ialgebra_from_json(j.at("source"));
  IAlgebraPtr target = ialgebra_from_json(j.at("target"));
  return is_ihom(j.at("map").get<std::vector<int>>(), std::move(source), std::move(target));
}

json congruence_to_json(const Congruence& cg, const SearchBudget& budget) {
  json j;
  j["target"] = ialgebra_to_json(*cg.p1.target, budget);
  j["rel"] = ialgebra_to_json(*cg.rel, budget);
  j["p1"] = cg.p1.map;
  j["p2"] = cg.p2.map;
  return j;
}

Congruence congruence_from_json(const json& j) {
  IAlgebraPtr target = ialgebra_from_json(j.at("target"));
  if (j.contains("pairs")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    RelStructure structure = RelStructure::ProductRestricted;
    if (j.contains("structure") && j.at("structure").get<std::string>() == "discrete")
      structure = RelStructure::Discrete;
    return congruence_from_pairs(target, pairs, structure);
  }
  Congruence cg;
  cg.rel = ialgebra_from_json(j.at("rel"));
  cg.p1 = is_ihom(j.at("p1").get<std::vector<int>>(), cg.rel, target);
  cg.p2 = is_ihom(j.at("p2").get<std::vector<int>>(), cg.rel, target);
  validate_congruence(cg);
  return cg;
}

json atlas_to_json(const Atlas& at, const SearchBudget& budget) {
  json j;
  j["ambient"] = at.ambient_names.empty()
                     ? [&] {
                         std::vector<std::string> names;
                         for (int i = 0; i < at.ambient_size; ++i) names.push_back(std::to_string(i));
                         return names;
                       }()
                     : at.ambient_names;
  json charts = json::array();
  for (const auto& chart : at.charts) {
    json cj;
    cj["subset"] = chart.subset;
    cj["algebra"] = ialgebra_to_json(*chart.algebra, budget);
    charts.push_back(std::move(cj));
  }
  j["charts"] = std::move(charts);
  return j;
}

Atlas atlas_from_json(const json& j) {
  Atlas at;
  at.ambient_names = j.at("ambient").get<std::vector<std::string>>();
  at.ambient_size = static_cast<int>(at.ambient_names.size());
  for (const auto& cj : j.at("charts")) {
    Chart chart;
    chart.subset = cj.at("subset").get<std::vector<int>>();
    chart.algebra = ialgebra_from_json(cj.at("algebra"));
    at.charts.push_back(std::move(chart));
  }
  return at;
}

PushoutDiagram pushout_diagram_from_json(const json& j) {
  PushoutDiagram d;
  d.source = ialgebra_from_json(j.at("source"));
  for (const auto& lj : j.at("legs")) {
    IAlgebraPtr target = ialgebra_from_json(lj.at("target"));
    d.legs.push_back(is_ihom(lj.at("map").get<std::vector<int>>(), d.source, target));
  }
  return d;
}

json cocone_to_json(const CoconeResult& r, const SearchBudget& budget) {
  json j;
  j["apex"] = ialgebra_to_json(*r.apex, budget);
  json legs = json::array();
  for (const auto& leg : r.legs) legs.push_back(leg.map);
  j["legs"] = std::move(legs);
  j["log"] = r.construction_log;
  return j;
}

json validation_report_to_json(const ValidationReport& r) {
  json j;
  j["ok"] = r.ok();
  j["checked"] = r.checked;
  j["total"] = r.total;
  j["exhaustive"] = r.exhaustive;
  j["note"] = r.note;
  json v = json::array();
  for (const auto& violation : r.violations)
    v.push_back({{"axiom", violation.axiom}, {"witness", violation.witness}});
  j["violations"] = std::move(v);
  return j;
}

json saturation_report_to_json(const SaturationReport& r) {
  json j;
  j["saturated"] = r.saturated;
  j["depth_used"] = r.depth_used;
  json sizes = json::object();
  for (const auto& [n, count] : r.sizes) sizes[std::to_string(n)] = count;
  j["sizes"] = std::move(sizes);
  json reps = json::object();
  for (const auto& [n, classes] : r.class_reps) {
    json level = json::object();
    for (const auto& [canon, members] : classes) level[canon] = members;
    reps[std::to_string(n)] = std::move(level);
  }
  j["class_reps"] = std::move(reps);
  return j;
}

json fixture_reports_to_json(const std::vector<FixtureReport>& reports) {
  json j = json::array();
  for (const auto& r : reports) {
    json rj;
    rj["name"] = r.name;
    rj["description"] = r.description;
    rj["pass"] = r.pass;
    json expected = json::object(), actual = json::object();
    for (const auto& [k, v] : r.expected) expected[k] = v;
    for (const auto& [k, v] : r.actual) actual[k] = v;
    rj["expected"] = std::move(expected);
    rj["actual"] = std::move(actual);
    j.push_back(std::move(rj));
  }
  return j;
}

}  // namespace infinialg
