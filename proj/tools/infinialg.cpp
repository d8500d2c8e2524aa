// infinialg: batch computations on finite infinitesimal models of algebraic
// theories. Structures travel as JSON files; reports go to stdout or --out.
// Exit codes: 0 success/valid, 1 domain failure, 2 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "infinialg/cli_map.hpp"
#include "infinialg/json_io.hpp"
#include "infinialg/oracle.hpp"
#include "infinialg/parser.hpp"

namespace {

using namespace infinialg;

struct Options {
  int n_max = kDefaultNMax;
  SearchBudget budget;
  std::string out;
  std::string format = "json";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError(0, 0, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    if (j.size() > 16 || (!j.empty() && (j[0].is_object() || j[0].is_array()))) {
      std::size_t i = 0;
      for (const auto& value : j) flatten(value, path + "[" + std::to_string(i++) + "]", out);
      if (j.empty()) out += path + " = []\n";
    } else {
      out += path + " = " + j.dump() + "\n";
    }
  } else {
    out += path + " = " + j.dump() + "\n";
  }
}

void emit(const Options& opt, const json& body) {
  std::string text;
  if (opt.format == "text") {
    flatten(body, "", text);
  } else {
    text = body.dump(2) + "\n";
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out);
    if (!out) throw Error("IoError", "cannot write '" + opt.out + "'");
    out << text;
  }
}

json meta(const Options& opt, const std::string& command) {
  return {{"command", command}, {"n_max", opt.n_max}};
}

// ---- fixtures registry ----

json emit_fixture(const std::string& name, const Options& opt) {
  int N = opt.n_max;
  if (name == "nil-square-z4-k1")
    return ialgebra_to_json(*nil_square_affine_algebra(ring_zmod(4), 1, N), opt.budget);
  if (name == "nil-square-z4-k2")
    return ialgebra_to_json(*nil_square_affine_algebra(ring_zmod(4), 2, N), opt.budget);
  if (name == "nil-square-z9-k1")
    return ialgebra_to_json(*nil_square_affine_algebra(ring_zmod(9), 1, N), opt.budget);
  if (name == "affine-z3-total")
    return ialgebra_to_json(*total_affine_line(ring_zmod(3), N), opt.budget);
  if (name == "abelian4-z4-total")
    return ialgebra_to_json(*total_abelian_zmod(4, N), opt.budget);
  if (name == "abelian2-z2-total")
    return ialgebra_to_json(*total_abelian_zmod(2, N), opt.budget);
  if (name == "discrete-3") return istructure_to_json(discrete(3, N));
  if (name == "indiscrete-2") return istructure_to_json(indiscrete(2, N));
  if (name == "tuples-generated-3") {
    std::map<int, std::vector<std::vector<int>>> gens;
    gens[3] = {{0, 1, 2}};
    return istructure_to_json(generate_from_tuples(3, gens, N));
  }
  if (name == "endo-clone-2") return clone_to_json(endo_clone(2, std::min(N, 2)), opt.budget);
  if (name == "congruence-mod2-z4") {
    auto z4 = total_abelian_zmod(4, N);
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        if ((x - y) % 2 == 0) pairs.emplace_back(x, y);
    return congruence_to_json(congruence_from_pairs(z4, pairs), opt.budget);
  }
  if (name == "atlas-z4-two-charts") {
    auto full = nil_square_affine_algebra(ring_zmod(4), 1, N);
    Atlas at;
    at.ambient_size = 4;
    at.ambient_names = {"0", "1", "2", "3"};
    auto empty_chart = sub_algebra(full, {});
    auto even = sub_algebra(full, {0, 2});
    auto odd = sub_algebra(full, {1, 3});
    at.charts.push_back({{}, empty_chart->algebra});
    at.charts.push_back({{0, 2}, even->algebra});
    at.charts.push_back({{1, 3}, odd->algebra});
    return atlas_to_json(at, opt.budget);
  }
  if (name == "pushout-wedge-z2") {
    auto z2 = total_abelian_zmod(2, N);
    CoconeResult wedge = coproduct(z2->clone(), {z2, z2}, N);
    return cocone_to_json(wedge, opt.budget);
  }
  throw Error("UnknownFixture", "no fixture named '" + name + "'");
}

const std::vector<std::string> kFixtureNames = {
    "nil-square-z4-k1", "nil-square-z4-k2", "nil-square-z9-k1", "affine-z3-total",
    "abelian4-z4-total", "abelian2-z2-total", "discrete-3",      "indiscrete-2",
    "tuples-generated-3", "endo-clone-2",    "congruence-mod2-z4", "atlas-z4-two-charts",
    "pushout-wedge-z2"};

// ---- verbs ----

int cmd_validate(const Options& opt, const std::string& clone_path,
                 const std::string& istructure_path, const std::string& ialgebra_path,
                 const std::string& ihom_path, const std::string& clone_hom_path,
                 const std::string& congruence_path, const std::string& atlas_path) {
  json body;
  body["meta"] = meta(opt, "validate");
  bool ok = true;
  if (!clone_path.empty()) {
    ClonePtr c = clone_from_json(load_json(clone_path));
    ValidationReport report = validate_clone(*c);
    body["clone"] = validation_report_to_json(report);
    ok = ok && report.ok();
  }
  if (!istructure_path.empty()) {
    IStructure s = istructure_from_json(load_json(istructure_path));
    ValidationReport report = validate_istructure(s);
    body["istructure"] = validation_report_to_json(report);
    ok = ok && report.ok();
  }
  if (!ialgebra_path.empty()) {
    IAlgebraPtr a = ialgebra_from_json(load_json(ialgebra_path));
    ValidationReport report = validate_ialgebra(*a);
    body["ialgebra"] = validation_report_to_json(report);
    ok = ok && report.ok();
  }
  if (!ihom_path.empty()) {
    IHom h = ihom_from_json(load_json(ihom_path));
    body["ihom"] = {{"accepted", h.accepted()},
                    {"i_morphism", h.i_morphism},
                    {"equivariant", h.equivariant},
                    {"reflects", h.reflects},
                    {"closed_image", h.closed_image},
                    {"regular_epi", is_regular_epi(h)}};
    ok = ok && h.accepted();
  }
  if (!clone_hom_path.empty()) {
    json j = load_json(clone_hom_path);
    CloneHom h;
    h.source = clone_from_json(j.at("source"));
    h.target = clone_from_json(j.at("target"));
    for (const auto& level : j.at("maps")) h.maps.push_back(level.get<std::vector<OpId>>());
    bool pass = clone_hom_check(h);
    body["clone_hom"] = {{"commutes", pass}};
    ok = ok && pass;
  }
  if (!congruence_path.empty()) {
    Congruence cg = congruence_from_json(load_json(congruence_path));
    body["congruence"] = {{"valid", true}, {"kernel_pair", is_kernel_pair(cg)}};
  }
  if (!atlas_path.empty()) {
    Atlas at = atlas_from_json(load_json(atlas_path));
    validate_atlas(at);
    body["atlas"] = {{"valid", true}, {"charts", at.charts.size()}};
  }
  body["ok"] = ok;
  emit(opt, body);
  return ok ? 0 : 1;
}

int cmd_free_clone(const Options& opt, const std::string& theory_path,
                   const std::string& of_clone_path, int depth, bool emit_theory) {
  Presentation p;
  if (!theory_path.empty()) {
    p = parse_presentation(read_file(theory_path));
  } else if (!of_clone_path.empty()) {
    ClonePtr base = clone_from_json(load_json(of_clone_path));
    p = theory_of_clone(*base, opt.budget);
  } else {
    throw Error("Usage", "free-clone needs --theory or --of-clone");
  }
  json body;
  body["meta"] = meta(opt, "free-clone");
  if (emit_theory) body["theory"] = print_presentation(p);
  FreeCloneResult result = free_clone(p, opt.n_max, depth);
  body["clone"] = clone_to_json(result.clone, opt.budget);
  body["saturation"] = saturation_report_to_json(result.report);
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

int cmd_limit(const Options& opt, const std::string& sub, const std::string& a_path,
              const std::string& b_path, const std::string& f_path, const std::string& g_path,
              const std::string& pair_path) {
  json body;
  body["meta"] = meta(opt, "limit " + sub);
  if (sub == "product") {
    IAlgebraPtr a = ialgebra_from_json(load_json(a_path));
    IAlgebraPtr b = ialgebra_from_json(load_json(b_path));
    body["result"] = ialgebra_to_json(*product(a, b), opt.budget);
  } else if (sub == "equalizer") {
    json pj = load_json(pair_path);
    IAlgebraPtr src = ialgebra_from_json(pj.at("source"));
    IAlgebraPtr dst = ialgebra_from_json(pj.at("target"));
    IHom f = is_ihom(pj.at("f").get<std::vector<int>>(), src, dst);
    IHom g = is_ihom(pj.at("g").get<std::vector<int>>(), src, dst);
    SubObject eq = equalizer(f, g);
    body["result"] = ialgebra_to_json(*eq.algebra, opt.budget);
    body["inclusion"] = eq.inclusion.map;
  } else if (sub == "kernel-pair") {
    IHom f = ihom_from_json(load_json(f_path));
    Congruence cg = kernel_pair(f);
    body["result"] = congruence_to_json(cg, opt.budget);
    body["kernel_pair"] = is_kernel_pair(cg);
  } else if (sub == "pullback") {
    IHom f = ihom_from_json(load_json(f_path));
    IHom g = ihom_from_json(load_json(g_path));
    PullbackResult pb = pullback(f, g);
    body["result"] = ialgebra_to_json(*pb.apex, opt.budget);
    body["projection_to_f_source"] = pb.to_f_source.map;
    body["projection_to_g_source"] = pb.to_g_source.map;
  } else {
    throw Error("Usage", "unknown limit '" + sub + "'");
  }
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

int cmd_colimit(const Options& opt, const std::string& sub, const std::string& diagram_path,
                const std::string& clone_path, const std::vector<std::string>& factor_paths,
                const std::string& congruence_path, const std::string& parallel_path) {
  json body;
  body["meta"] = meta(opt, "colimit " + sub);
  if (sub == "pushout") {
    PushoutDiagram d = pushout_diagram_from_json(load_json(diagram_path));
    CoconeResult result = wide_pushout(d.source, d.legs);
    body["result"] = cocone_to_json(result, opt.budget);
  } else if (sub == "coproduct") {
    std::vector<IAlgebraPtr> factors;
    for (const auto& path : factor_paths) factors.push_back(ialgebra_from_json(load_json(path)));
    ClonePtr c;
    int n_max = opt.n_max;
    if (!clone_path.empty()) {
      c = clone_from_json(load_json(clone_path));
    } else if (!factors.empty()) {
      c = factors.front()->clone();
      n_max = factors.front()->n_max();
    } else {
      throw Error("Usage", "coproduct needs --clone or at least one factor");
    }
    CoconeResult result = coproduct(c, factors, n_max);
    body["result"] = cocone_to_json(result, opt.budget);
  } else if (sub == "coequalizer") {
    Congruence cg;
    if (!congruence_path.empty()) {
      cg = congruence_from_json(load_json(congruence_path));
    } else if (!parallel_path.empty()) {
      json pj = load_json(parallel_path);
      IAlgebraPtr src = ialgebra_from_json(pj.at("source"));
      IAlgebraPtr dst = ialgebra_from_json(pj.at("target"));
      IHom f = is_ihom(pj.at("f").get<std::vector<int>>(), src, dst);
      IHom g = is_ihom(pj.at("g").get<std::vector<int>>(), src, dst);
      cg = congruence_from_parallel_pair(f, g);
    } else {
      throw Error("Usage", "coequalizer needs --congruence or --parallel");
    }
    CoconeResult result = coequalizer_congruence(cg);
    body["result"] = cocone_to_json(result, opt.budget);
  } else if (sub == "initial") {
    ClonePtr c = clone_from_json(load_json(clone_path));
    body["result"] = ialgebra_to_json(*initial_object(c, opt.n_max), opt.budget);
  } else {
    throw Error("Usage", "unknown colimit '" + sub + "'");
  }
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

int cmd_glue(const Options& opt, const std::string& atlas_path) {
  Atlas at = atlas_from_json(load_json(atlas_path));
  json body;
  body["meta"] = meta(opt, "glue");
  body["result"] = ialgebra_to_json(*glue_atlas(at), opt.budget);
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

int cmd_fixtures(const Options& opt, const std::string& run, const std::string& emit_name,
                 bool list, const std::string& regen_dir) {
  json body;
  body["meta"] = meta(opt, "fixtures");
  if (list) {
    body["fixtures"] = kFixtureNames;
    body["ok"] = true;
    emit(opt, body);
    return 0;
  }
  if (!regen_dir.empty()) {
    json written = json::array();
    for (const auto& name : kFixtureNames) {
      std::string path = regen_dir + "/" + name + ".json";
      std::ofstream out(path);
      if (!out) throw Error("IoError", "cannot write '" + path + "'");
      out << emit_fixture(name, opt).dump(2) << "\n";
      written.push_back(path);
    }
    body["written"] = std::move(written);
    body["ok"] = true;
    emit(opt, body);
    return 0;
  }
  if (!emit_name.empty()) {
    body["fixture"] = emit_name;
    body["payload"] = emit_fixture(emit_name, opt);
    body["ok"] = true;
    emit(opt, body);
    return 0;
  }
  if (run == "counterexamples") {
    auto reports = counterexample_suite();
    body["report"] = fixture_reports_to_json(reports);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.pass;
    body["ok"] = ok;
    emit(opt, body);
    return ok ? 0 : 1;
  }
  throw Error("Usage", "fixtures needs --run, --emit, --regen, or --list");
}

int cmd_oracle(const Options& opt, const std::string& sub, const std::string& gens_path,
               const std::string& a_path, const std::string& b_path,
               const std::string& pair_path) {
  json body;
  body["meta"] = meta(opt, "oracle " + sub);
  if (sub == "closure") {
    json gj = load_json(gens_path);
    int carrier = gj.at("carrier").get<int>();
    std::map<int, std::vector<std::vector<int>>> gens;
    for (const auto& [key, tuples] : gj.at("gens").items())
      gens[std::stoi(key)] = tuples.get<std::vector<std::vector<int>>>();
    body["result"] =
        istructure_to_json(oracle::brute_istructure_closure(carrier, gens, opt.n_max, opt.budget));
  } else if (sub == "iso") {
    IAlgebraPtr a = ialgebra_from_json(load_json(a_path));
    IAlgebraPtr b = ialgebra_from_json(load_json(b_path));
    auto bijection = oracle::brute_iso_search(a, b, opt.budget);
    body["found"] = bijection.has_value();
    if (bijection) body["bijection"] = *bijection;
  } else if (sub == "set-coequalizer") {
    json pj = load_json(pair_path);
    auto f = pj.at("f").get<std::vector<int>>();
    auto g = pj.at("g").get<std::vector<int>>();
    int codomain = pj.at("codomain").get<int>();
    body["classes"] = oracle::brute_set_coequalizer(f, g, codomain);
  } else {
    throw Error("Usage", "unknown oracle '" + sub + "'");
  }
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

int cmd_coverage(const Options& opt) {
  json body;
  body["meta"] = meta(opt, "coverage");
  json table = json::array();
  for (const auto& row : kCliCoverage)
    table.push_back({{"operation", std::string(row.operation)},
                     {"verb", std::string(row.verb)},
                     {"route", std::string(row.route)}});
  body["coverage"] = std::move(table);
  body["ok"] = true;
  emit(opt, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite infinitesimal models of algebraic theories"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--n-max", opt.n_max, "global truncation arity (default 3)");
  std::uint64_t budget = 0;
  app.add_option("--budget", budget, "enumeration budget for brute-force paths");
  app.add_option("--out", opt.out, "write the report to a file instead of stdout");
  app.add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string clone_path, istructure_path, ialgebra_path, ihom_path, clone_hom_path;
  std::string congruence_path, atlas_path;
  auto* validate = app.add_subcommand("validate", "check structures against their axioms");
  validate->add_option("--clone", clone_path, "clone JSON");
  validate->add_option("--istructure", istructure_path, "i-structure JSON");
  validate->add_option("--ialgebra", ialgebra_path, "i-algebra JSON");
  validate->add_option("--ihom", ihom_path, "homomorphism JSON (reports flags)");
  validate->add_option("--clone-hom", clone_hom_path, "clone homomorphism JSON");
  validate->add_option("--congruence", congruence_path, "congruence JSON");
  validate->add_option("--atlas", atlas_path, "atlas JSON");

  std::string theory_path, of_clone_path;
  int depth = 6;
  bool emit_theory = false;
  auto* freeclone = app.add_subcommand("free-clone", "saturate a presentation into a clone");
  freeclone->add_option("--theory", theory_path, "theory DSL file");
  freeclone->add_option("--of-clone", of_clone_path, "clone JSON; saturates its theory");
  freeclone->add_option("--depth", depth, "saturation round bound (default 6)");
  freeclone->add_flag("--emit-theory", emit_theory, "include the presentation text");

  std::string limit_sub, a_path, b_path, f_path, g_path, pair_path;
  auto* limit = app.add_subcommand("limit", "products, equalizers, kernel pairs, pullbacks");
  limit->add_option("kind", limit_sub, "product|equalizer|kernel-pair|pullback")->required();
  limit->add_option("--a", a_path, "left factor (i-algebra JSON)");
  limit->add_option("--b", b_path, "right factor (i-algebra JSON)");
  limit->add_option("--f", f_path, "homomorphism JSON");
  limit->add_option("--g", g_path, "homomorphism JSON");
  limit->add_option("--parallel", pair_path, "parallel pair JSON {source,target,f,g}");

  std::string colimit_sub, diagram_path, co_clone_path, co_congruence_path, co_parallel_path;
  std::vector<std::string> factor_paths;
  auto* colimit = app.add_subcommand("colimit", "pushouts, coproducts, coequalizers");
  colimit->add_option("kind", colimit_sub, "pushout|coproduct|coequalizer|initial")->required();
  colimit->add_option("--diagram", diagram_path, "wide span JSON {source, legs}");
  colimit->add_option("--clone", co_clone_path, "clone JSON");
  colimit->add_option("--factors", factor_paths, "i-algebra JSON files");
  colimit->add_option("--congruence", co_congruence_path, "congruence JSON");
  colimit->add_option("--parallel", co_parallel_path, "parallel pair JSON");

  std::string glue_atlas_path;
  auto* glue = app.add_subcommand("glue", "glue an atlas into a global i-algebra");
  glue->add_option("--atlas", glue_atlas_path, "atlas JSON")->required();

  std::string run, emit_name, regen_dir;
  bool list_fixtures = false;
  auto* fixtures = app.add_subcommand("fixtures", "named gallery objects and counterexamples");
  fixtures->add_option("--run", run, "suite name (counterexamples)");
  fixtures->add_option("--emit", emit_name, "emit a named fixture as JSON");
  fixtures->add_option("--regen", regen_dir, "write every fixture into a directory");
  fixtures->add_flag("--list", list_fixtures, "list fixture names");

  std::string oracle_sub, gens_path, oa_path, ob_path, opair_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "independent brute-force checkers");
  oracle_cmd->add_option("kind", oracle_sub, "closure|iso|set-coequalizer")->required();
  oracle_cmd->add_option("--gens", gens_path, "generators JSON {carrier, gens}");
  oracle_cmd->add_option("--a", oa_path, "i-algebra JSON");
  oracle_cmd->add_option("--b", ob_path, "i-algebra JSON");
  oracle_cmd->add_option("--pair", opair_path, "maps JSON {f, g, codomain}");

  auto* coverage = app.add_subcommand("coverage", "operation-to-verb audit table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (budget != 0) {
    opt.budget.max_function_space = budget;
    opt.budget.max_tuples = budget;
  }

  try {
    if (validate->parsed())
      return cmd_validate(opt, clone_path, istructure_path, ialgebra_path, ihom_path,
                          clone_hom_path, congruence_path, atlas_path);
    if (freeclone->parsed()) return cmd_free_clone(opt, theory_path, of_clone_path, depth, emit_theory);
    if (limit->parsed()) return cmd_limit(opt, limit_sub, a_path, b_path, f_path, g_path, pair_path);
    if (colimit->parsed())
      return cmd_colimit(opt, colimit_sub, diagram_path, co_clone_path, factor_paths,
                         co_congruence_path, co_parallel_path);
    if (glue->parsed()) return cmd_glue(opt, glue_atlas_path);
    if (fixtures->parsed()) return cmd_fixtures(opt, run, emit_name, list_fixtures, regen_dir);
    if (oracle_cmd->parsed()) return cmd_oracle(opt, oracle_sub, gens_path, oa_path, ob_path, opair_path);
    if (coverage->parsed()) return cmd_coverage(opt);
  } catch (const SyntaxError& e) {
    std::cerr << json({{"error", e.code}, {"detail", e.what()}}).dump(2) << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << json({{"error", "JsonError"}, {"detail", e.what()}}).dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json({{"error", e.code}, {"detail", e.what()}}).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json({{"error", "Internal"}, {"detail", e.what()}}).dump(2) << "\n";
    return 1;
  }
  return 2;
}
