#ifndef INFINIALG_CLI_MAP_HPP
#define INFINIALG_CLI_MAP_HPP

#include <array>
#include <string_view>

namespace infinialg {

// Operation -> CLI verb map. The audit test checks that every library
// operation backed by theory (rather than plumbing) stays reachable from the
// command line, and that only the published verbs appear here.
struct CliMapping {
  std::string_view operation;
  std::string_view verb;
  std::string_view route;
};

inline constexpr std::array<CliMapping, 31> kCliCoverage = {{
    {"term_substitute", "free-clone", "saturation applies class-level substitution"},
    {"free_clone", "free-clone", "--theory"},
    {"validate_clone", "validate", "--clone"},
    {"endo_clone", "fixtures", "--emit endo-clone-2"},
    {"clone_hom_check", "validate", "--clone-hom"},
    {"theory_of_clone", "free-clone", "--of-clone"},
    {"constants_algebra", "colimit", "initial --clone"},
    {"validate_istructure", "validate", "--istructure"},
    {"discrete", "fixtures", "--emit discrete-3"},
    {"indiscrete", "fixtures", "--emit indiscrete-2"},
    {"generate_from_binary", "fixtures", "--emit nil-square-z4-k1 (pairwise generation)"},
    {"generate_from_tuples", "fixtures", "--emit tuples-generated-3"},
    {"nil_square", "fixtures", "--emit nil-square-z4-k1"},
    {"is_i_morphism", "validate", "--ihom (flag i_morphism)"},
    {"reflects_istructure", "validate", "--ihom (flag reflects)"},
    {"image_closed", "validate", "--ihom (flag closed_image)"},
    {"image_istructure", "colimit", "coequalizer (quotient i-structure)"},
    {"validate_ialgebra", "validate", "--ialgebra"},
    {"total_algebra", "fixtures", "--emit abelian4-z4-total"},
    {"is_ihom", "validate", "--ihom"},
    {"initial_object", "colimit", "initial --clone"},
    {"product_equalizer_kernel_pair", "limit", "product | equalizer | kernel-pair"},
    {"wide_pushout", "colimit", "pushout --diagram"},
    {"coproduct", "colimit", "coproduct --factors"},
    {"coequalizer_congruence", "colimit", "coequalizer --congruence"},
    {"is_kernel_pair", "validate", "--congruence (kernel_pair flag)"},
    {"is_regular_epi_and_pullback", "limit", "pullback; validate --ihom (regular_epi flag)"},
    {"glue_atlas", "glue", "--atlas"},
    {"affine_clone_and_abelian_exp_clone", "fixtures", "--emit affine-z3-total, abelian4-z4-total"},
    {"counterexample_suite", "fixtures", "--run counterexamples"},
    {"brute_istructure_closure_and_set_coequalizer", "oracle", "closure --gens; set-coequalizer"},
}};

}  // namespace infinialg

#endif
