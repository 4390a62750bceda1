//! Acceptance suite: seventeen criteria spanning the flat family, the Nil
//! family, the verdict layer, and the report front end. Each criterion
//! prints exactly one pass/fail line (run with `--nocapture` to see them
//! all); the test fails if any criterion fails.

use solvknot_cli::claims::{exit_code, verify_all, Status};
use solvknot_cli::config::RunConfig;
use solvknot_cli::render::{report_json, verdict_table};
use solvknot_core::flat_aut::{
    aut_word, element_order, meridianal_classes, out_g6_cached, verify_aut_presentation,
};
use solvknot_core::flat_group::{commutator_lattice, verify_g6_presentation};
use solvknot_core::flat_sub::{
    centralizer_report, symmetry_certificates, weight_orbit_invariance_check,
    weight_orbit_normal_form, Family,
};
use solvknot_core::invariants::{
    commutator_quotient, doubly_slice_verdict, is_direct_double, lambda_cyclic, q_solver,
    KnotFamily,
};
use solvknot_core::nil_aut::{
    aut_compose, aut_equal, aut_is_identity, aut_pow, centralizer_claims_gamma, f_subgroup,
    k_make, meridianal_classes_gamma, named_auts, orbit_labels_bounded, out_gamma,
    tau2_certificates,
};
use solvknot_core::nil_group::{gamma_build, h1_gamma, verify_gamma_presentations};

const GAMMA_SET: [(i64, i64); 6] = [(-2, 1), (-2, -1), (0, 1), (0, -1), (2, 1), (2, -1)];

fn criterion_01() -> bool {
    verify_g6_presentation().all_ok()
}

fn criterion_02() -> bool {
    let out = out_g6_cached();
    let ab = out.label_of(&aut_word("ab").unwrap());
    let mut images = std::collections::BTreeSet::new();
    let mut kernel = 0usize;
    for k in 0..out.order() {
        let m = out.gl2_image(k);
        if m == [[1, 0], [0, 1]] {
            kernel += 1;
        }
        images.insert(m);
    }
    let mut expected_center = vec![out.table.id, ab];
    expected_center.sort_unstable();
    let mut center = out.table.center();
    center.sort_unstable();
    out.order() == 96
        && center == expected_center
        && images.len() == 6
        && kernel == 16
        && out.label_of(&aut_word("d").unwrap()) == out.label_of(&aut_word("bc").unwrap())
        && out.label_of(&aut_word("f").unwrap()) == out.label_of(&aut_word("ace").unwrap())
}

fn criterion_03() -> bool {
    let out = out_g6_cached();
    let def: Vec<usize> = ["d", "e", "f"]
        .iter()
        .map(|w| out.label_of(&aut_word(w).unwrap()))
        .collect();
    let normal = out.table.subgroup_generated(&def);
    let candidates = out.table.two_generated_subgroups_of_order(12);
    normal.len() == 8
        && !candidates.is_empty()
        && candidates.iter().all(|s| s.intersection(&normal).count() > 1)
}

fn criterion_04() -> bool {
    verify_aut_presentation().iter().all(|(_, ok)| *ok)
}

fn criterion_05() -> bool {
    let rep = meridianal_classes(out_g6_cached());
    rep.orientation_preserving == vec!["ja".to_string(), "jb".to_string()]
        && rep.ja_cubed_is_identity
        && rep.jb_cubed_is_de_inv_f
        && rep.jb_class_cubed_is_ab
        && rep.ab_nontrivial_in_out
}

fn criterion_06() -> bool {
    let rep = centralizer_report();
    let head_ok = rep.lines.iter().take(4).all(|l| l.solver_matches_claimed);
    let tail_ok = rep.lines[4..].chunks(2).all(|pair| {
        pair[0].solver_matches_claimed
            && pair[0].solver_finite_part == 3
            && !pair[1].solver_matches_claimed
            && pair[1].solver_finite_part == 6
    });
    // the n != 0 normalizer discrepancies come with explicit
    // orientation-preserving inverting witnesses
    head_ok && tail_ok && rep.iab_inverts_d2n_ja && rep.i_inverts_d2n_jb
}

fn criterion_07() -> bool {
    let lat = commutator_lattice();
    for family in [Family::Plus, Family::Minus] {
        for m in -2..=2i64 {
            for n in -2..=2i64 {
                for p in -2..=2i64 {
                    if !lat.contains(&[m, n, p]) {
                        continue;
                    }
                    let cert = match weight_orbit_normal_form(&[m, n, p], family) {
                        Ok(c) => c,
                        Err(_) => return false,
                    };
                    if !cert.identity_holds || cert.lambda != family.lambda(&[m, n, p]) {
                        return false;
                    }
                }
            }
        }
        let inv = weight_orbit_invariance_check(family);
        let listed_ok = inv.listed_generators.iter().all(|l| {
            let expected_offset = if family == Family::Minus && l.generator == "ce" {
                Some(-1)
            } else {
                Some(0)
            };
            l.commutes_with_meridian_mod_inner
                && l.sign == Some(l.determinant)
                && l.offset == expected_offset
        });
        if !listed_ok || !inv.full_scan_label_is_det_lambda_plus_offset {
            return false;
        }
    }
    Family::Plus.axis() == [1, 1, -1] && Family::Plus.lambda(&[1, 1, -1]) == 3
}

fn criterion_08() -> bool {
    let de_inv_f = aut_word("de^-1f").unwrap();
    (0..=3i64).all(|n| {
        let phi = aut_word(&format!("d^{}jb", 2 * n)).unwrap();
        element_order(&phi).is_none() && phi.pow(3) == de_inv_f.pow(2 * n + 1)
    })
}

fn criterion_09() -> bool {
    symmetry_certificates().iter().all(|(_, ok)| *ok)
}

fn criterion_10() -> bool {
    // the randomized oracle is part of the claim catalog; run it through
    // verify_all on a minimal config and read off its record
    let cfg = RunConfig {
        gamma_params: vec![(0, -1)],
        search_radius: 2,
        ..RunConfig::default()
    };
    verify_all(&cfg)
        .iter()
        .find(|r| r.claim_id == "S11.composition-oracle")
        .map(|r| r.status == Status::Pass && r.payload["trials"] == serde_json::json!(1000))
        .unwrap_or(false)
}

fn criterion_11() -> bool {
    GAMMA_SET.iter().all(|&(e, eta)| {
        let g = gamma_build(e, eta).unwrap();
        verify_gamma_presentations(&g).iter().all(|(_, ok)| *ok)
            && h1_gamma(&g) == vec![3, 3 * g.q.abs()]
    })
}

fn criterion_12() -> bool {
    GAMMA_SET.iter().all(|&(e, eta)| {
        let g = gamma_build(e, eta).unwrap();
        let f = f_subgroup(&g).unwrap();
        let na = named_auts(&g).unwrap();
        let pattern = if eta == 1 {
            f.all_succeed && f.success_count == 49
        } else {
            f.success_iff_mod3
        };
        let specials = aut_equal(&k_make(&g, -2, -1).unwrap(), &na.c_u)
            && aut_equal(&k_make(&g, 1, -1).unwrap(), &na.c_v);
        let relations = aut_is_identity(&g, &aut_pow(&g, &na.b, 6).unwrap())
            && aut_is_identity(&g, &aut_pow(&g, &na.r, 2).unwrap())
            && aut_is_identity(
                &g,
                &aut_pow(&g, &aut_compose(&g, &na.b, &na.r).unwrap(), 2).unwrap(),
            )
            && aut_equal(&na.c_z, &aut_pow(&g, &na.b, 4).unwrap());
        pattern && specials && relations
    })
}

fn criterion_13() -> bool {
    GAMMA_SET.iter().all(|&(e, eta)| {
        let g = gamma_build(e, eta).unwrap();
        let out = out_gamma(&g).unwrap();
        let profile = out.table.order_profile();
        let table_ok = if eta == 1 {
            out.table.size == 12 && profile == vec![1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 6, 6]
        } else {
            out.table.size == 4 && profile == vec![1, 2, 2, 2]
        };
        // the class of [r] is meridianal in all cases; for eta = +1 the
        // solver finds a second meridianal class (the order-6 class of
        // r k[1,0]) and the discrepancy with the one-class description is
        // recorded rather than patched over
        let mer = meridianal_classes_gamma(&g, &out).unwrap();
        let mer_ok = mer.meridianal_class_contains_r
            && !mer.identity_is_meridianal
            && !mer.b_cubed_is_meridianal
            && if eta == 1 {
                mer.meridianal_class_count == 2 && mer.meridianal_rep_orders == vec![2, 6]
            } else {
                mer.meridianal_class_count == 1 && mer.meridianal_rep_orders == vec![2]
            };
        table_ok && mer_ok
    })
}

fn criterion_14() -> bool {
    let radius = 6i64;
    GAMMA_SET.iter().all(|&(e, eta)| {
        let g = gamma_build(e, eta).unwrap();
        (-2..=2i64).all(|n| {
            let rep = centralizer_claims_gamma(&g, n).unwrap();
            // bounded search at radius 6: each u^n t representative only
            // reaches its own label, so distinct representatives are
            // inequivalent and u^n t (n != 0) is not conjugate to its
            // inverse (label -n) within the bound
            let labels = orbit_labels_bounded(&g, &g.u.pow(n), radius).unwrap();
            rep.uv_shift_commutes && labels.len() == 1 && labels.contains(&n)
        })
    })
}

fn criterion_15() -> bool {
    GAMMA_SET.iter().all(|&(e, eta)| {
        let g = gamma_build(e, eta).unwrap();
        let tau = tau2_certificates(&g).unwrap();
        tau.r_squared_is_identity
            && tau.fixed_curve_verified
            && tau.lift_conjugation_consistent
            && tau.b_cubed_formula_verified
    })
}

fn criterion_16() -> bool {
    if q_solver(10) != vec![(0, -1)] {
        return false;
    }
    let lc = |fam| lambda_cyclic(&commutator_quotient(fam).unwrap()).unwrap();
    if !lc(KnotFamily::GPlus) || !lc(KnotFamily::GMinus) {
        return false;
    }
    let verdicts_ok = GAMMA_SET.iter().all(|&(e, eta)| {
        let fam = KnotFamily::PiEEta { e, eta };
        let q = 3 * e - eta - 2;
        let v = doubly_slice_verdict(fam).unwrap();
        let dd = is_direct_double(&commutator_quotient(fam).unwrap()).unwrap();
        v.doubly_slice == ((e, eta) == (0, -1)) && (q.abs() == 1 || !dd)
    });
    let table = verdict_table(&GAMMA_SET);
    verdicts_ok
        && !doubly_slice_verdict(KnotFamily::GPlus).unwrap().doubly_slice
        && !doubly_slice_verdict(KnotFamily::Fox).unwrap().doubly_slice
        && table.iter().any(|r| r.family == "Z x I*")
}

fn criterion_17() -> bool {
    let cfg = RunConfig::default();
    let a = verify_all(&cfg);
    let b = verify_all(&cfg);
    exit_code(&a) == 0 && report_json(&a) == report_json(&b)
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> bool)> = vec![
        ("01 flat presentation and dictionary", criterion_01),
        ("02 outer automorphism table structure", criterion_02),
        ("03 non-splitting (no order-12 complement)", criterion_03),
        ("04 automorphism presentation relations", criterion_04),
        ("05 flat meridianal classification", criterion_05),
        ("06 centralizer/normalizer comparisons", criterion_06),
        ("07 weight-orbit certificates and invariance", criterion_07),
        ("08 twisted meridians of infinite order", criterion_08),
        ("09 symmetry certificates", criterion_09),
        ("10 Nil composition oracle", criterion_10),
        ("11 Gamma presentations and H1", criterion_11),
        ("12 k-family integrality pattern", criterion_12),
        ("13 Gamma outer table and meridianal classes", criterion_13),
        ("14 bounded orbit uniqueness (radius 6)", criterion_14),
        ("15 involution certificates", criterion_15),
        ("16 doubly-slice verdicts", criterion_16),
        ("17 report determinism", criterion_17),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let ok = std::panic::catch_unwind(f).unwrap_or(false);
        println!("criterion {}: {}", name, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
