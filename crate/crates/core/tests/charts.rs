mod common;

use common::{chart, diag, m, pm_plane, q_line, q_times_q, reflection, signed_permutation_groups};
use orbicalc::charts::{
    build_chart, has_interior_codim1_stratum, product_chart, stratify, suborbifold_model, verify_embedding, ChartError,
    LocalChart,
};
use orbicalc::ratlin::{rat, rat_vec, ratio, unit_vec, Rational, Subspace};
use proptest::prelude::*;
use std::sync::Arc;

#[test]
fn build_examples() {
    assert_eq!(q_line().group().order(), 2);
    assert_eq!(q_times_q().group().order(), 4);
    let mirror = chart(2, &[diag(&[-1, 1])], true);
    assert!(mirror.has_boundary());
    assert_eq!(
        build_chart(2, &[diag(&[1, -1])], true).unwrap_err(),
        ChartError::BoundaryViolation { index: 0 }
    );
}

#[test]
fn product_examples() {
    let qq = product_chart(&q_line(), &q_line()).unwrap();
    assert_eq!(qq.group().elements().len(), 4);
    assert!(qq.group().index_of(&diag(&[-1, 1])).is_some() && qq.group().index_of(&diag(&[1, -1])).is_some());

    let q_r = product_chart(&q_line(), &LocalChart::trivial(1, false)).unwrap();
    assert_eq!(q_r.group().order(), 2);
    assert_eq!(q_r.group().fixed_subspace(&q_r.group().whole()), Subspace::span(2, &[unit_vec(2, 1)]));

    let rr = product_chart(&LocalChart::trivial(1, false), &LocalChart::trivial(1, false)).unwrap();
    assert!(rr.group().is_trivial());

    let half = LocalChart::trivial(1, true);
    assert_eq!(product_chart(&half, &half).unwrap_err(), ChartError::BothBoundary);
    let moved = product_chart(&half, &q_line()).unwrap();
    assert!(moved.has_boundary());
    assert!(moved.group().index_of(&diag(&[-1, 1])).is_some());
}

#[test]
fn isotropy_examples() {
    let qq = q_times_q();
    assert_eq!(qq.isotropy_at(&rat_vec(&[0, 0])).unwrap().order(), 4);
    let h = qq.isotropy_at(&rat_vec(&[1, 0])).unwrap();
    assert_eq!(h.members(), &[0, qq.group().index_of(&diag(&[1, -1])).unwrap()]);
    assert!(qq.isotropy_at(&rat_vec(&[1, 2])).unwrap().is_trivial());
}

#[test]
fn strata_examples() {
    let r = stratify(&q_times_q());
    let mut singular: Vec<(usize, usize, usize)> = r.singular().map(|s| (s.dim, s.codim, s.isotropy.order())).collect();
    singular.sort();
    assert_eq!(singular, vec![(0, 2, 4), (1, 1, 2), (1, 1, 2)]);

    let pm: Vec<_> = stratify(&pm_plane()).singular().map(|s| (s.dim, s.codim)).collect();
    assert_eq!(pm, vec![(0, 2)]);
    assert_eq!(stratify(&LocalChart::trivial(3, false)).singular().count(), 0);

    assert!(has_interior_codim1_stratum(&reflection()));
    assert!(!has_interior_codim1_stratum(&pm_plane()));
    assert!(!has_interior_codim1_stratum(&LocalChart::trivial(2, false)));
}

#[test]
fn product_strata_match_three_strata() {
    let qq = product_chart(&q_line(), &q_line()).unwrap();
    let mut dims: Vec<usize> = stratify(&qq).singular().map(|s| s.dim).collect();
    dims.sort();
    assert_eq!(dims, vec![0, 1, 1]);
}

#[test]
fn suborbifold_examples() {
    let qq = q_times_q();
    let x_axis = Subspace::span(2, &[unit_vec(2, 0)]);
    let s = suborbifold_model(&qq, &x_axis, &qq.group().whole()).unwrap();
    assert_eq!(s.omega.members(), &[0, qq.group().index_of(&diag(&[1, -1])).unwrap()]);
    assert_eq!(s.intrinsic_isotropy.order(), 2);
    assert!(s.full);

    let diagonal = Subspace::span(2, &[rat_vec(&[1, 1])]);
    let minus = qq.group().index_of(&diag(&[-1, -1])).unwrap();
    let lambda = qq.group().subgroup(&[0, minus]).unwrap();
    let s = suborbifold_model(&qq, &diagonal, &lambda).unwrap();
    assert!(s.omega.is_trivial());
    assert_eq!(s.intrinsic_isotropy.order(), 2);
    assert!(!s.full);

    match suborbifold_model(&qq, &diagonal, &qq.group().whole()).unwrap_err() {
        ChartError::NotInvariant { vector, image, .. } => {
            assert_eq!(vector, rat_vec(&[1, 1]));
            assert!(image == rat_vec(&[-1, 1]) || image == rat_vec(&[1, -1]));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn embedding_examples() {
    let qq = q_times_q();
    let at_axis = chart(2, &[diag(&[1, -1])], false);
    let id = m(&[&[1, 0], &[0, 1]]);
    verify_embedding(&at_axis, &qq, &id, &rat_vec(&[1, 0]), &[diag(&[1, -1])]).unwrap();
    verify_embedding(&qq, &qq, &id, &rat_vec(&[0, 0]), &qq.group().generator_matrices()).unwrap();
    match verify_embedding(&at_axis, &qq, &id, &rat_vec(&[1, 0]), &[diag(&[-1, 1])]).unwrap_err() {
        ChartError::NotEquivariant { .. } => {}
        other => panic!("{other:?}"),
    }
}

fn small_chart() -> impl Strategy<Value = LocalChart> {
    let pool: Vec<LocalChart> = (1..=3)
        .flat_map(|n| signed_permutation_groups(n, 8))
        .map(|g| LocalChart::from_group(Arc::new(g), false).unwrap())
        .collect();
    prop::sample::select(pool)
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    // Small integers hit the singular set often enough to matter.
    prop::collection::vec(prop_oneof![2 => (-2i64..=2).prop_map(rat), 1 => (-9i64..=9, 1i64..=4).prop_map(|(a, b)| ratio(a, b))], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strata_cover_the_singular_set((c, x) in small_chart().prop_flat_map(|c| { let n = c.dim(); (Just(c), point(n)) })) {
        let report = stratify(&c);
        let iso = c.isotropy_at(&x).unwrap();
        let containing: Vec<_> = report.strata.iter().filter(|s| s.fixed.contains(&x)).collect();
        // The point lies in exactly the stratum whose fixed space is the
        // smallest one containing it, and that stratum's isotropy is the
        // point's isotropy.
        let smallest = containing.iter().min_by_key(|s| s.dim).unwrap();
        prop_assert_eq!(&smallest.isotropy, &iso);
        prop_assert_eq!(smallest.is_singular(), !iso.is_trivial());
        let dims: Vec<usize> = report.strata.iter().map(|s| s.dim).collect();
        for (i, a) in report.strata.iter().enumerate() {
            for (j, b) in report.strata.iter().enumerate() {
                if i != j && a.fixed.is_subspace_of(&b.fixed) {
                    prop_assert!(dims[i] < dims[j]);
                }
            }
        }
    }

    #[test]
    fn isotropy_conjugates((c, x, g) in small_chart().prop_flat_map(|c| { let n = c.dim(); let o = c.group().order(); (Just(c), point(n), 0..o) })) {
        let group = c.group();
        let h = c.isotropy_at(&x).unwrap();
        let moved = c.isotropy_at(&group.element(g).mul_vec(&x)).unwrap();
        let mut conj: Vec<usize> = h.members().iter().map(|&a| group.conjugate(g, a)).collect();
        conj.sort();
        prop_assert_eq!(moved.members(), conj.as_slice());
    }

    #[test]
    fn suborbifold_isotropy_is_effective(c in small_chart(), d in 0usize..4) {
        for s in &stratify(&c).strata {
            let w = &s.fixed;
            if w.dim() > d { continue; }
            let lambda = c.group().whole();
            if let Ok(model) = suborbifold_model(&c, w, &lambda) {
                for coset in model.intrinsic_isotropy.cosets().iter().skip(1) {
                    prop_assert!(!w.is_fixed_pointwise_by(c.group().element(coset[0])));
                }
                if model.full {
                    prop_assert_eq!(&model.lambda, &c.group().whole());
                }
            }
        }
    }
}
