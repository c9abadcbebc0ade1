//! Cross-module structural invariants, exercised over the fixture zoo.

mod common;

use std::collections::BTreeSet;

use hh1_core::catalog;
use hh1_core::fp::{dot_mod, FpSubspace};
use hh1_core::gamma::{build_gamma, decode_vertex, PathLength};
use hh1_core::group::{direct_product, frattini_quotient, Group};
use hh1_core::lie::{build_h, derived_series, full_der_algebra, hh1_quotient_solvable};
use hh1_core::loewy::{dl_upper_bound, loewy};
use hh1_core::report::{analyze_group, AnalyzeOptions, Verdict};
use hh1_core::transfer::reduced_transfer;

fn all_fixtures() -> Vec<(String, Group, u32)> {
    let mut out: Vec<(String, Group, u32)> = common::p3_fixtures()
        .into_iter()
        .map(|(n, g)| (n, g, 3))
        .collect();
    out.extend(common::p2_fixtures().into_iter().map(|(n, g)| (n, g, 2)));
    out.push(("SL23".into(), catalog::sl23().unwrap(), 3));
    out.push(("trivial".into(), Group::trivial(), 3));
    out
}

#[test]
fn frattini_quotient_projection_is_exact() {
    for (name, g, p) in all_fixtures() {
        let fq = frattini_quotient(&g, p).unwrap();
        assert_eq!(fq.proj.kernel(), fq.subgroup.members(), "{name}");
        for y in 0..fq.quotient.order() {
            assert!(
                fq.proj.preimage(y).is_some(),
                "{name}: projection must be onto"
            );
        }
        for x in 0..g.order() {
            assert!(fq.subgroup.contains(g.pow(x, p as usize)), "{name}");
            for y in 0..g.order() {
                assert!(fq.subgroup.contains(g.commutator(x, y)), "{name}");
            }
        }
    }
}

#[test]
fn gamma_edge_structure() {
    for (name, g, p) in all_fixtures() {
        let gamma = build_gamma(&g, p).unwrap();
        for (_, b) in gamma.edges() {
            assert_ne!(b, 0, "{name}: no edges into the identity vertex");
        }
        if gamma.dim() >= 1 {
            for b in 1..gamma.vertex_count() {
                assert!(
                    gamma.has_edge(0, b),
                    "{name}: identity reaches every vertex"
                );
            }
        }
        for v in 0..gamma.vertex_count() {
            let outgoing = gamma.edges().any(|(a, _)| a == v);
            assert_eq!(
                gamma.h_dims()[v] > 0,
                outgoing,
                "{name}: nonzero component iff outgoing edge"
            );
        }
    }
}

#[test]
fn reduction_preserves_cycles_and_shortens_paths_by_one() {
    for (name, g, p) in all_fixtures() {
        let gamma = build_gamma(&g, p).unwrap();
        let reduced = gamma.reduce();
        assert_eq!(
            gamma.find_cycle().is_some(),
            reduced.find_cycle().is_some(),
            "{name}"
        );
        if gamma.find_cycle().is_none() && gamma.edge_count() > 0 {
            let (PathLength::Finite(l), PathLength::Finite(lr)) =
                (gamma.longest_path(), reduced.longest_path())
            else {
                panic!("{name}: acyclic graphs have finite paths");
            };
            assert_eq!(l, lr + 1, "{name}: l(gamma) = l(reduced) + 1");
        }
    }
}

#[test]
fn loops_match_the_bv_kernel_condition() {
    // a loop at a exists exactly when some component functional phi has
    // phi(a) != 0, i.e. the image escapes the kernel of the BV operator
    for (name, g, p) in all_fixtures() {
        let gamma = build_gamma(&g, p).unwrap();
        let h = build_h(&g, p).unwrap();
        for v in 0..gamma.vertex_count() {
            let coords = decode_vertex(v, p, gamma.dim());
            let witness = h.grade(v).is_some_and(|space| {
                space
                    .basis()
                    .iter()
                    .any(|phi| dot_mod(phi, &coords, p) != 0)
            });
            assert_eq!(gamma.has_edge(v, v), witness, "{name}: loop at vertex {v}");
        }
    }
}

#[test]
fn component_over_representatives_equals_all_preimages() {
    let picks = [
        ("UT33", catalog::heisenberg(3).unwrap(), 3u32),
        ("M27", catalog::modular(3).unwrap(), 3),
        ("C9:C9", catalog::c9_rtimes_c9().unwrap(), 3),
        ("SL23", catalog::sl23().unwrap(), 3),
        ("D8", catalog::dihedral(8).unwrap(), 2),
        ("Q8", catalog::quaternion8().unwrap(), 2),
    ];
    for (name, g, p) in picks {
        let fq = frattini_quotient(&g, p).unwrap();
        let mut by_reps: Vec<FpSubspace> =
            vec![FpSubspace::empty(p, fq.dim()); fq.quotient.order()];
        for x in g.class_representatives() {
            let rt = reduced_transfer(&g, &fq, x).unwrap();
            by_reps[fq.proj.apply(x)].merge(&rt.matrix.row_space());
        }
        let mut by_all: Vec<FpSubspace> = vec![FpSubspace::empty(p, fq.dim()); fq.quotient.order()];
        for x in 0..g.order() {
            let rt = reduced_transfer(&g, &fq, x).unwrap();
            by_all[fq.proj.apply(x)].merge(&rt.matrix.row_space());
        }
        assert_eq!(by_reps, by_all, "{name}");
    }
}

#[test]
fn full_oracle_agrees_with_the_graph_on_small_p_groups() {
    for (name, g, p) in all_fixtures() {
        if g.order() > 32 || !g.is_p_group(p) {
            continue;
        }
        let verdict = hh1_quotient_solvable(&full_der_algebra(&g, p).unwrap());
        let gamma = build_gamma(&g, p).unwrap();
        if p != 2 {
            assert_eq!(
                verdict.solvable,
                gamma.find_cycle().is_none(),
                "{name}: oracle must match the graph criterion"
            );
        } else {
            let g2 = gamma.gamma2().unwrap();
            if g2.find_cycle().is_some() {
                assert!(
                    !verdict.solvable,
                    "{name}: a gamma2 cycle forces nonsolvability"
                );
            }
        }
        // the image algebra never out-lives the full quotient
        let h_series = derived_series(&build_h(&g, p).unwrap());
        if let (Some(full), Some(image)) = (verdict.derived_length, h_series.length()) {
            assert!(full >= image, "{name}");
        }
        if verdict.solvable {
            assert!(
                h_series.reached_zero,
                "{name}: quotients of solvable stay solvable"
            );
        }
    }
}

#[test]
fn upper_bound_dominates_on_acyclic_odd_fixtures() {
    for (name, g) in common::p3_fixtures() {
        if !g.is_p_group(3) {
            continue;
        }
        let gamma = build_gamma(&g, 3).unwrap();
        let Some(l) = gamma.longest_path().finite() else {
            continue;
        };
        let f = loewy(&g, 3).unwrap();
        if f.loewy_length < 2 {
            continue;
        }
        let bound = dl_upper_bound(f.loewy_length, l);
        let dl_h = derived_series(&build_h(&g, 3).unwrap()).length().unwrap();
        assert!(bound >= dl_h as f64, "{name}");
    }
}

#[test]
fn product_verdict_matches_factor_verdicts() {
    let factors = [
        ("UT33", catalog::heisenberg(3).unwrap()),
        ("M27", catalog::modular(3).unwrap()),
        ("C3", catalog::cyclic(3).unwrap()),
        ("C9:C9", catalog::c9_rtimes_c9().unwrap()),
    ];
    let opts = AnalyzeOptions::default();
    let verdict_of = |g: &Group| analyze_group(g, 3, &opts, vec![]).unwrap().report.verdict;
    let factor_verdicts: Vec<Verdict> = factors.iter().map(|(_, g)| verdict_of(g)).collect();
    for (i, (n1, g1)) in factors.iter().enumerate() {
        for (j, (n2, g2)) in factors.iter().enumerate().skip(i) {
            if g1.order() * g2.order() > 4096 {
                continue;
            }
            let prod = direct_product(g1, g2).unwrap();
            let got = verdict_of(&prod.group);
            let expected = if factor_verdicts[i] == Verdict::Solvable
                && factor_verdicts[j] == Verdict::Solvable
            {
                Verdict::Solvable
            } else {
                Verdict::NotSolvable
            };
            assert_eq!(got, expected, "{n1} x {n2}");
        }
    }
}

#[test]
fn reduced_product_graphs_stay_inside_the_factors() {
    // for solvable factors, every reduced edge of the product joins
    // vertices coming from a single factor
    let ut33 = catalog::heisenberg(3).unwrap();
    let m27 = catalog::modular(3).unwrap();
    for (g1, g2) in [(&ut33, &ut33), (&m27, &m27), (&ut33, &m27)] {
        let prod = direct_product(g1, g2).unwrap();
        let fq = frattini_quotient(&prod.group, 3).unwrap();
        let reduced = build_gamma(&prod.group, 3).unwrap().reduce();
        let factor_vertices: [BTreeSet<usize>; 2] = [0, 1].map(|i| {
            let factor = if i == 0 { g1 } else { g2 };
            (0..factor.order())
                .map(|x| {
                    hh1_core::gamma::encode_vertex(fq.class_coords(prod.inject[i].apply(x)), 3)
                })
                .collect()
        });
        for (a, b) in reduced.edges() {
            let inside = factor_vertices
                .iter()
                .any(|side| side.contains(&a) && side.contains(&b));
            assert!(inside, "edge ({a}, {b}) crosses the factor embeddings");
        }
    }
}
