mod common;

use std::sync::Arc;

use common::{diag, m, signed_permutation_groups};
use orbicalc::groups::{
    find_invariant_subspace, index2_subgroups, kernel_of, quotient, FiniteMatrixGroup, GroupError, GroupHom,
    InvariantOutcome,
};
use orbicalc::ratlin::{unit_vec, Matrix, Subspace};
use proptest::prelude::*;

fn group(dim: usize, gens: &[Matrix]) -> Arc<FiniteMatrixGroup> {
    Arc::new(FiniteMatrixGroup::generate(dim, gens).unwrap())
}

fn rot90() -> Matrix {
    m(&[&[0, -1], &[1, 0]])
}

fn rot120() -> Matrix {
    m(&[&[0, -1], &[1, -1]])
}

#[test]
fn closure_orders() {
    assert_eq!(group(1, &[m(&[&[-1]])]).order(), 2);
    assert_eq!(group(2, &[diag(&[-1, 1]), diag(&[1, -1])]).order(), 4);
    assert_eq!(group(2, &[rot120()]).order(), 3);
    assert!(group(2, &[]).element(0).is_identity());
}

#[test]
fn closure_respects_order_bound() {
    let shear = m(&[&[1, 1], &[0, 1]]);
    assert_eq!(
        FiniteMatrixGroup::generate_bounded(2, &[shear], 50).unwrap_err(),
        GroupError::OrderBoundExceeded { bound: 50 }
    );
}

#[test]
fn homomorphism_examples() {
    let z2 = group(1, &[m(&[&[-1]])]);
    let id = GroupHom::identity(z2.clone());
    assert!(kernel_of(&id).is_trivial());

    let z4 = group(2, &[rot90()]);
    let to_z2 = GroupHom::from_generator_matrices(z4.clone(), z2.clone(), &[m(&[&[-1]])]).unwrap();
    let k = kernel_of(&to_z2);
    assert_eq!(k.order(), 2);
    let square = z4.index_of(&(&rot90() * &rot90())).unwrap();
    assert!(k.contains(square));

    let z3 = group(2, &[rot120()]);
    assert!(GroupHom::from_generator_matrices(z3.clone(), z2.clone(), &[m(&[&[-1]])]).is_err());

    let trivial = group(1, &[]);
    assert_eq!(kernel_of(&GroupHom::trivial(z3.clone(), trivial)).order(), 3);
}

#[test]
fn quotient_examples() {
    let k4 = group(2, &[diag(&[-1, 1]), diag(&[1, -1])]);
    let minus = k4.index_of(&diag(&[-1, -1])).unwrap();
    let diagonal = k4.subgroup(&[0, minus]).unwrap();
    assert_eq!(quotient(&k4, &diagonal).unwrap().order(), 2);
    assert_eq!(quotient(&k4, &k4.trivial_subgroup()).unwrap().order(), 4);
    assert!(quotient(&k4, &k4.whole()).unwrap().is_trivial());
}

#[test]
fn fixed_subspace_examples() {
    let refl = group(2, &[diag(&[1, -1])]);
    assert_eq!(refl.fixed_subspace(&refl.trivial_subgroup()), Subspace::full(2));
    assert_eq!(refl.fixed_subspace(&refl.whole()), Subspace::span(2, &[unit_vec(2, 0)]));
    let pm = group(2, &[diag(&[-1, -1])]);
    assert_eq!(pm.fixed_subspace(&pm.whole()), Subspace::zero(2));
}

#[test]
fn commutant_examples() {
    assert_eq!(group(2, &[]).commutant().len(), 4);
    assert_eq!(group(2, &[rot90()]).commutant().len(), 2);
    let swap = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let cycle = m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let s3 = group(3, &[swap, cycle]);
    // Restricted to the sum-zero plane the commutant is the scalars; on R^3
    // it also contains the projection onto the fixed line.
    assert_eq!(s3.commutant().len(), 2);
    let standard = m(&[&[0, 1], &[1, 0]]);
    let three_cycle = m(&[&[0, -1], &[1, -1]]);
    assert_eq!(group(2, &[standard, three_cycle]).commutant().len(), 1);
}

#[test]
fn invariant_subspace_examples() {
    let pm = group(2, &[diag(&[-1, -1])]);
    match find_invariant_subspace(&pm, 1).outcome {
        InvariantOutcome::Found(s) => assert_eq!(s.dim(), 1),
        other => panic!("{other:?}"),
    }
    assert_eq!(find_invariant_subspace(&group(2, &[rot120()]), 1).outcome, InvariantOutcome::CertifiedNone);
    let refl = group(2, &[diag(&[1, -1])]);
    match find_invariant_subspace(&refl, 1).outcome {
        InvariantOutcome::Found(s) => {
            assert!(s == Subspace::span(2, &[unit_vec(2, 0)]) || s == Subspace::span(2, &[unit_vec(2, 1)]))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn index2_examples() {
    let z2 = group(1, &[m(&[&[-1]])]);
    let subs = index2_subgroups(&z2);
    assert_eq!(subs.len(), 1);
    assert!(subs[0].is_trivial());
    assert!(index2_subgroups(&group(2, &[rot120()])).is_empty());
    let k4 = group(2, &[diag(&[-1, 1]), diag(&[1, -1])]);
    let subs = index2_subgroups(&k4);
    assert_eq!(subs.len(), 3);
    assert!(subs.iter().all(|s| s.order() == 2 && k4.is_normal(s)));
}

fn small_group() -> impl Strategy<Value = FiniteMatrixGroup> {
    let pool: Vec<FiniteMatrixGroup> =
        (1..=3).flat_map(|n| signed_permutation_groups(n, 8)).filter(|g| g.order() > 1).collect();
    prop::sample::select(pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_idempotent(g in small_group()) {
        let again = FiniteMatrixGroup::generate(g.dim(), g.elements()).unwrap();
        let mut a = g.elements().to_vec();
        let mut b = again.elements().to_vec();
        a.sort_by_key(|x| x.to_strings());
        b.sort_by_key(|x| x.to_strings());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lagrange(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let gens: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let h = g.generated_subgroup(&gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        if g.is_normal(&h) {
            prop_assert_eq!(quotient(&g, &h).unwrap().order() * h.order(), g.order());
        }
    }

    #[test]
    fn invariant_subspaces_reverify(g in small_group(), d in 1usize..3) {
        if let InvariantOutcome::Found(s) = find_invariant_subspace(&g, d).outcome {
            prop_assert_eq!(s.dim(), d);
            for e in g.elements() {
                prop_assert!(s.is_invariant_under(e));
            }
        }
    }

    #[test]
    fn commutant_commutes(g in small_group()) {
        for c in g.commutant() {
            for e in g.elements() {
                prop_assert_eq!(&c * e, e * &c);
            }
        }
    }

    #[test]
    fn kernel_is_conjugation_invariant(g in small_group(), t in small_group(), imgs in prop::collection::vec(any::<prop::sample::Index>(), 4)) {
        let g = Arc::new(g);
        let t = Arc::new(t);
        let gens = g.generators().len();
        let images: Vec<usize> = imgs.iter().cycle().take(gens).map(|i| i.index(t.order())).collect();
        if let Ok(theta) = GroupHom::from_generator_images(g.clone(), t.clone(), &images) {
            let k = kernel_of(&theta);
            for eta in 0..t.order() {
                prop_assert_eq!(&kernel_of(&theta.conjugated_by(eta)), &k);
            }
        }
    }
}
