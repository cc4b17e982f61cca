use std::collections::BTreeSet;

use het::checks::{registry, Relation, Suite};

/// Every listed relation, grouped by module, and the check that covers it.
const MANIFEST: &[(&str, &[&str])] = &[
    (
        "set-algebra",
        &[
            "ruzsa_triangle",
            "ruzsa_triangle_higher",
            "ruzsa_triangle_chain",
            "ruzsa_triangle_swap",
            "restricted_diff_sum",
            "higher_power_diff",
            "higher_power_sum",
            "g_bases",
            "moshchevitin",
            "petridis",
            "petridis_delta",
            "triangle_plus",
            "freiman_pigaev",
            "diff_basis_growth",
            "sum_basis_growth",
            "higher_diff_agree",
        ],
    ),
    (
        "harmonic",
        &[
            "parseval",
            "parseval_inner",
            "convolution_energy",
            "convolution_transform",
            "char_char",
            "char_char_converse",
            "commutative_C",
            "scalar_C",
            "gen_C",
            "conv_C",
            "energy_tensor",
        ],
    ),
    (
        "energy",
        &[
            "energy_cs",
            "energy_trivial",
            "energy_kl_symmetry",
            "energy_tuple",
            "restricted_energy_sums",
            "gen_conv_moments",
            "uncertainty",
            "fourier_energy",
            "tk_paths",
            "energy_sigma",
            "energy_energy",
            "energy_sanity",
            "sidon_equality",
        ],
    ),
    (
        "spectral",
        &[
            "trace_1",
            "trace_2",
            "main_eigenvalue",
            "eigen_square_sum",
            "triangles_g",
            "eigen_d_s",
            "energy_3_2",
            "li_inequality",
            "d_const",
            "ss2",
            "action_g",
            "prune_half",
            "connected",
        ],
    ),
    (
        "constructions",
        &[
            "gamma_invariance",
            "heilbronn_e3_ratio",
            "heilbronn_parseval",
            "heilbronn_chain",
            "convex_e3_ratio",
            "a_prime_b_ratio",
            "residue_basis",
        ],
    ),
];

#[test]
fn registry_covers_the_manifest() {
    let names: BTreeSet<&str> = registry().iter().map(|c| c.name).collect();
    let missing: Vec<String> = MANIFEST
        .iter()
        .flat_map(|(m, checks)| checks.iter().filter(|c| !names.contains(*c)).map(move |c| format!("{m}/{c}")))
        .collect();
    assert!(missing.is_empty(), "unregistered: {missing:?}");
}

#[test]
fn every_check_has_a_formula_reference() {
    for c in registry() {
        assert!(!c.paper_ref.trim().is_empty(), "{} lacks a reference", c.name);
    }
}

#[test]
fn monitors_are_exactly_the_report_only_checks() {
    for c in registry() {
        assert_eq!(c.suite == Suite::Monitor, c.relation == Relation::ReportOnly, "{}", c.name);
    }
}
