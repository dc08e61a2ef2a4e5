mod common;

use common::*;
use orbicalc::charts::LocalChart;
use orbicalc::corpus::find;
use orbicalc::onedim::{
    assemble_components, boundary_parity, classify_1_orbifold, forbidden_index2_check, no_retraction_hypothesis,
    retraction_contradiction, End, OneDimError, OneOrbifoldComponent, OneOrbifoldType, Piece, PieceKind,
    RetractionOutcome, RetractionScenario,
};
use orbicalc::ratlin::rat_vec;
use orbicalc::report;
use orbicalc::scenario::atlas_scenario;
use proptest::prelude::*;
use serde_json::Value;

use End::{Boundary, Mirror};
use OneOrbifoldComponent::{Interval, Loop};

#[test]
fn four_types() {
    assert_eq!(classify_1_orbifold(Loop), OneOrbifoldType::A);
    assert_eq!(classify_1_orbifold(Interval(Boundary, Boundary)), OneOrbifoldType::B);
    assert_eq!(classify_1_orbifold(Interval(Mirror, Boundary)), OneOrbifoldType::C);
    assert_eq!(classify_1_orbifold(Interval(Boundary, Mirror)), OneOrbifoldType::C);
    assert_eq!(classify_1_orbifold(Interval(Mirror, Mirror)), OneOrbifoldType::D);
}

#[test]
fn parity_rejects_mirror_components() {
    let r = boundary_parity(&[Loop, Interval(Boundary, Boundary), Interval(Boundary, Boundary)]).unwrap();
    assert_eq!((r.boundary_points, r.even), (4, true));
    assert!(matches!(
        boundary_parity(&[Loop, Interval(Boundary, Mirror)]).unwrap_err(),
        OneDimError::MirrorComponent { index: 1, kind: 'c' }
    ));
}

#[test]
fn index2_check_examples() {
    let r = forbidden_index2_check(&reflection());
    assert!(r.forbidden);
    let (h, line) = r.witness.unwrap();
    assert!(h.is_trivial());
    assert_eq!(line.dim(), 1);

    let pm = forbidden_index2_check(&pm_plane());
    assert!(pm.forbidden);
    assert_eq!(pm.witness.unwrap().0.order(), 1);
    assert!(!forbidden_index2_check(&c3()).forbidden);
    assert_eq!(forbidden_index2_check(&c3()).index2_count, 0);
    let k4 = forbidden_index2_check(&q_times_q());
    assert!(k4.forbidden);
    assert_eq!(k4.index2_count, 3);
}

fn scenario(name: &str) -> Value {
    find(name).unwrap_or_else(|| panic!("{name} missing from the corpus"))
}

#[test]
fn hypothesis_on_corpus_atlases() {
    let s = atlas_scenario(&scenario("type-c-retraction")).unwrap();
    let h = no_retraction_hypothesis(&s.atlas);
    assert!(!h.holds);
    let s = atlas_scenario(&scenario("disk-pm-retraction")).unwrap();
    assert!(no_retraction_hypothesis(&s.atlas).holds);
}

fn run_retraction(name: &str) -> RetractionOutcome {
    let s = atlas_scenario(&scenario(name)).unwrap();
    let scen = RetractionScenario {
        target: s.target.clone().unwrap(),
        germs: s.germs.iter().map(|g| (g.chart, g.germ.clone())).collect(),
        p: s.p.clone().unwrap(),
    };
    retraction_contradiction(&s.atlas, &scen).unwrap().outcome
}

#[test]
fn retraction_outcomes() {
    assert!(matches!(run_retraction("type-c-retraction"), RetractionOutcome::HypothesisNotMet));
    for name in ["disk-pm-retraction", "disk-pm-retraction-quadric", "borsuk-manifold"] {
        match run_retraction(name) {
            RetractionOutcome::Contradiction(c) => {
                assert!(c.contradiction, "{name}");
                assert!(c.mirror_point_forced, "{name}");
                assert_eq!(c.boundary_points, 1, "{name}");
                assert!(c.mirror_checks.iter().all(|m| !m.admits_mirror), "{name}");
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn direct_assembly_of_an_interval() {
    let s = atlas_scenario(&scenario("parity-interval")).unwrap();
    let pieces: Vec<Piece> = s
        .pieces
        .iter()
        .map(|(c, x)| Piece { chart: *c, germ: s.germ_on(*c).unwrap().clone(), point: x.clone() })
        .collect();
    let a = assemble_components(&s.atlas, &pieces, &s.gluings, &s.p.clone().unwrap()).unwrap();
    assert_eq!(a.kinds, vec![PieceKind::BoundaryEnd, PieceKind::BoundaryEnd]);
    assert_eq!(a.verified_gluings, 1);
    assert_eq!(a.components.len(), 1);
    assert_eq!(a.components[0].kind, OneOrbifoldType::B);
}

#[test]
fn open_port_is_an_error() {
    let s = atlas_scenario(&scenario("open-port")).unwrap();
    let pieces: Vec<Piece> = s
        .pieces
        .iter()
        .map(|(c, x)| Piece { chart: *c, germ: s.germ_on(*c).unwrap().clone(), point: x.clone() })
        .collect();
    let err = assemble_components(&s.atlas, &pieces, &s.gluings, &s.p.clone().unwrap()).unwrap_err();
    assert!(matches!(err, OneDimError::OpenPort { .. }), "{err:?}");
}

#[test]
fn mirror_piece_is_recognised() {
    let s = atlas_scenario(&scenario("mirror-end")).unwrap();
    let r = report::retraction(&scenario("mirror-end")).unwrap();
    assert_eq!(r.value["index2_free"], false);
    assert!(s.pieces.iter().any(|(c, _)| s.atlas.chart(*c).group().order() == 2));
    let kinds: Vec<&str> =
        r.value["assembly"]["pieces"].as_array().unwrap().iter().map(|p| p["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"mirror-end"));
}

#[test]
fn retraction_needs_a_germ_on_a_boundary_chart() {
    let disk = LocalChart::trivial(2, false);
    let s = atlas_scenario(&scenario("borsuk-manifold")).unwrap();
    let scen = RetractionScenario { target: line(), germs: vec![(0, germ(&disk, &line(), poly(2, &[&[(1, &[0, 1])]]), &[]))], p: rat_vec(&[0]) };
    assert_eq!(retraction_contradiction(&s.atlas, &scen).unwrap_err(), OneDimError::NoBoundaryGerm);
}

/// Reverses the chart list and renames every chart; pieces, germs and
/// embeddings refer to charts by name, so nothing else changes.
fn relabel(v: &Value) -> Value {
    let mut v = v.clone();
    let rename = |n: &str| format!("{n}-relabelled");
    if let Some(charts) = v["charts"].as_array_mut() {
        charts.reverse();
        for c in charts {
            let n = c["name"].as_str().unwrap().to_string();
            c["name"] = Value::String(rename(&n));
        }
    }
    for key in ["germs", "pieces"] {
        if let Some(items) = v[key].as_array_mut() {
            for it in items {
                let n = it["chart"].as_str().unwrap().to_string();
                it["chart"] = Value::String(rename(&n));
            }
        }
    }
    if let Some(embs) = v["embeddings"].as_array_mut() {
        for e in embs {
            for k in ["source", "target"] {
                let n = e[k].as_str().unwrap().to_string();
                e[k] = Value::String(rename(&n));
            }
        }
    }
    if let Some(gl) = v["gluings"].as_array_mut() {
        for g in gl {
            if g["via"].is_object() {
                let n = g["via"]["chart"].as_str().unwrap().to_string();
                g["via"]["chart"] = Value::String(rename(&n));
            }
        }
    }
    v
}

fn types(r: &Value) -> Vec<String> {
    let mut t: Vec<String> = r["assembly"]["components"]
        .as_array()
        .map(|cs| cs.iter().map(|c| c["type"].as_str().unwrap().to_string()).collect())
        .unwrap_or_default();
    t.sort();
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn results_are_stable_under_relabelling(
        name in prop::sample::select(vec![
            "parity-interval", "parity-loop", "parity-mixed", "mirror-end", "two-mirrors",
            "disk-pm-retraction", "type-c-retraction", "borsuk-manifold",
        ])
    ) {
        let v = scenario(name);
        let a = report::retraction(&v).unwrap().value;
        let b = report::retraction(&relabel(&v)).unwrap().value;
        prop_assert_eq!(&a["hypothesis"]["holds"], &b["hypothesis"]["holds"]);
        prop_assert_eq!(&a["index2_free"], &b["index2_free"]);
        prop_assert_eq!(&a["retraction"]["outcome"], &b["retraction"]["outcome"]);
        prop_assert_eq!(&a["retraction"]["contradiction"], &b["retraction"]["contradiction"]);
        prop_assert_eq!(types(&a), types(&b));
        prop_assert_eq!(&a["assembly"]["parity"], &b["assembly"]["parity"]);
    }

    #[test]
    fn parity_is_twice_the_intervals(loops in 0usize..5, intervals in 0usize..5) {
        let mut cs = vec![Loop; loops];
        cs.extend(std::iter::repeat(Interval(Boundary, Boundary)).take(intervals));
        let r = boundary_parity(&cs).unwrap();
        prop_assert_eq!(r.boundary_points, 2 * intervals);
        prop_assert!(r.even);
    }
}
