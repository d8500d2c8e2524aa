#ifndef INFINIALG_JSON_IO_HPP
#define INFINIALG_JSON_IO_HPP

#include <json.hpp>

#include "infinialg/colimits.hpp"
#include "infinialg/free_clone.hpp"
#include "infinialg/gallery.hpp"

namespace infinialg {

using nlohmann::json;

// Clones serialize either as explicit tables
//   {"n_max":N, "ops":{"0":[id...],...}, "proj":{"n,j":id},
//    "subst":[{"n":..,"k":..,"sigma":id,"args":[id...],"result":id}...]}
// or as builtin references {"ref":"affine:4","n_max":N} for the coefficient
// and endomorphism families. Operation ids are names: canonical terms for
// free clones, coefficient tuples or output tables for the builtins.
json clone_to_json(const ClonePtr& c, const SearchBudget& budget = {});
ClonePtr clone_from_json(const json& j);

// {"carrier":[names...], "n_max":N, "nbhd":{"2":[[i,j]...],...}}; the arity-1
// block is implied by the carrier.
json istructure_to_json(const IStructure& s);
IStructure istructure_from_json(const json& j);

// {"clone":..., "istructure":..., "action":[{"n":..,"op":id,"tuple":[...],
//  "result":i}...]} with one row per table cell.
json ialgebra_to_json(const IAlgebra& a, const SearchBudget& budget = {});
IAlgebraPtr ialgebra_from_json(const json& j);

// {"source":<ialgebra>, "target":<ialgebra>, "map":[...]}; emitted with the
// computed flags attached.
json ihom_to_json(const IHom& h, const SearchBudget& budget = {});
IHom ihom_from_json(const json& j);

// Explicit form {"target":..., "rel":..., "p1":[...], "p2":[...]} or the
// compact builder {"target":..., "pairs":[[x,y]...], "structure":"product"|
// "discrete"}.
json congruence_to_json(const Congruence& cg, const SearchBudget& budget = {});
Congruence congruence_from_json(const json& j);

// {"ambient":[names...], "charts":[{"subset":[...], "algebra":...}...]}
json atlas_to_json(const Atlas& at, const SearchBudget& budget = {});
Atlas atlas_from_json(const json& j);

// {"source":<ialgebra>, "legs":[{"target":<ialgebra>, "map":[...]}...]}
struct PushoutDiagram {
  IAlgebraPtr source;
  std::vector<IHom> legs;
};
PushoutDiagram pushout_diagram_from_json(const json& j);

json cocone_to_json(const CoconeResult& r, const SearchBudget& budget = {});
json validation_report_to_json(const ValidationReport& r);
json saturation_report_to_json(const SaturationReport& r);
json fixture_reports_to_json(const std::vector<FixtureReport>& reports);

}  // namespace infinialg

#endif
