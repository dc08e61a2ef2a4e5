mod common;

use common::{diag, m, poly};
use orbicalc::ratlin::{
    factor, rat, rat_vec, ratio, to_f64, unit_vec, zero_vec, Matrix, MultiPoly, Rational, Subspace, UniPoly,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // Sparse-ish entries so that rank deficiency actually shows up.
        prop::collection::vec(prop_oneof![3 => Just(rat(0)), 2 => small_rational()], r * c)
            .prop_map(move |data| Matrix::new(r, c, data).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![2 => Just(rat(0)), 3 => (-3i64..=3).prop_map(rat)], n * n)
            .prop_map(move |data| Matrix::new(n, n, data).unwrap())
    })
}

#[test]
fn kernel_image_rank_examples() {
    let (k, im, r) = m(&[&[2, 0]]).kernel_image_rank();
    assert_eq!(k, Subspace::span(2, &[unit_vec(2, 1)]));
    assert_eq!(im, Subspace::full(1));
    assert_eq!(r, 1);

    let (k, im, r) = Matrix::zeros(3, 3).kernel_image_rank();
    assert_eq!((k, im, r), (Subspace::full(3), Subspace::zero(3), 0));

    let (k, _, r) = Matrix::identity(3).kernel_image_rank();
    assert_eq!((k, r), (Subspace::zero(3), 3));
}

#[test]
fn charpoly_factor_examples() {
    let rot = m(&[&[0, -1], &[1, -1]]);
    assert_eq!(rot.charpoly_factor().unwrap(), vec![(UniPoly::from_i64(&[1, 1, 1]), 1)]);

    let mut f = diag(&[1, -1]).charpoly_factor().unwrap();
    f.sort_by_key(|(p, _)| p.coeffs()[0].clone());
    assert_eq!(f, vec![(UniPoly::from_i64(&[-1, 1]), 1), (UniPoly::from_i64(&[1, 1]), 1)]);

    assert_eq!(Matrix::identity(2).charpoly_factor().unwrap(), vec![(UniPoly::from_i64(&[-1, 1]), 2)]);
}

#[test]
fn evaluation_examples() {
    let circle = poly(2, &[&[(1, &[2, 0]), (1, &[0, 2])]]);
    assert_eq!(circle.eval(&[ratio(3, 2), rat(0)]).unwrap(), vec![ratio(9, 4)]);
    let with_constant = poly(2, &[&[(7, &[0, 0]), (1, &[1, 1])], &[(-2, &[0, 0])]]);
    assert_eq!(with_constant.eval(&zero_vec(2)).unwrap(), rat_vec(&[7, -2]));
    let square = poly(1, &[&[(1, &[2])]]);
    assert_eq!(square.eval(&[rat(-2)]).unwrap(), vec![rat(4)]);
}

#[test]
fn jacobian_examples() {
    let square = poly(1, &[&[(1, &[2])]]);
    assert_eq!(square.jacobian(&[rat(1)]).unwrap(), m(&[&[2]]));
    let x = poly(2, &[&[(1, &[1, 0])]]);
    assert_eq!(x.jacobian(&[ratio(5, 7), rat(-3)]).unwrap(), m(&[&[1, 0]]));
    let circle = poly(2, &[&[(1, &[2, 0]), (1, &[0, 2])]]);
    assert_eq!(circle.jacobian(&rat_vec(&[1, 0])).unwrap(), m(&[&[2, 0]]));
}

#[test]
fn identically_zero_examples() {
    let neg = m(&[&[-1]]);
    let square = poly(1, &[&[(1, &[2])]]);
    assert!(square.compose_linear(&neg).sub(&square).is_identically_zero());
    let x = poly(1, &[&[(1, &[1])]]);
    assert!(!x.compose_linear(&neg).sub(&x).is_identically_zero());
    assert!(MultiPoly::zero(3, 2).is_identically_zero());
}

#[test]
fn malformed_polynomial_is_rejected() {
    assert!(MultiPoly::new(2, vec![vec![(rat(1), vec![1])]]).is_err());
}

#[test]
fn sturm_counts_distinct_roots() {
    // (x - 1)^2 (x + 2) (x^2 + 1)
    let p = UniPoly::from_i64(&[-1, 1]).pow(2).mul(&UniPoly::from_i64(&[2, 1])).mul(&UniPoly::from_i64(&[1, 0, 1]));
    assert_eq!(p.count_real_roots(), 2);
    let roots = p.isolate_real_roots(&ratio(1, 100));
    assert_eq!(roots.len(), 2);
    let inside = |(lo, hi): &(Rational, Rational), r: i64| *lo <= rat(r) && rat(r) <= *hi;
    assert!(inside(&roots[0], -2) && inside(&roots[1], 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_kernel_annihilation(a in matrix(6)) {
        let (k, im, r) = a.kernel_image_rank();
        prop_assert_eq!(r + k.dim(), a.cols());
        prop_assert_eq!(im.dim(), r);
        for v in k.basis() {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
        for c in 0..a.cols() {
            prop_assert!(im.contains(&a.column(c)));
        }
    }

    #[test]
    fn factors_reexpand_to_charpoly(a in square(4)) {
        let cp = a.charpoly().unwrap();
        let product = factor(&cp).iter().fold(UniPoly::one(), |acc, (q, e)| acc.mul(&q.pow(*e)));
        prop_assert_eq!(product, cp);
    }

    #[test]
    fn subspace_equality_ignores_order_and_scaling(
        vs in prop::collection::vec(prop::collection::vec(small_rational(), 4), 1..4),
        s in small_rational().prop_filter("nonzero", |s| *s != rat(0)),
    ) {
        let a = Subspace::span(4, &vs);
        let mut rev: Vec<Vec<Rational>> = vs.iter().rev().map(|v| v.iter().map(|x| x * &s).collect()).collect();
        if let Some(first) = rev.first().cloned() {
            let extra: Vec<Rational> = first.iter().zip(&vs[0]).map(|(x, y)| x + y).collect();
            rev.push(extra);
        }
        prop_assert_eq!(a, Subspace::span(4, &rev));
    }

    #[test]
    fn jacobian_matches_finite_differences(
        coefs in prop::collection::vec(-4i64..=4, 6),
        point in prop::collection::vec(-8i64..=8, 2),
    ) {
        let exps: [&[u32]; 6] = [&[0, 0], &[1, 0], &[0, 1], &[2, 1], &[1, 2], &[3, 0]];
        let terms: Vec<(i64, &[u32])> = coefs.iter().copied().zip(exps).collect();
        let f = poly(2, &[&terms[..3], &terms[3..]]);
        let x: Vec<Rational> = point.iter().map(|&p| ratio(p, 8)).collect();
        let jac = f.jacobian(&x).unwrap();
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        let h = 1e-5;
        for j in 0..2 {
            let (mut up, mut down) = (xf.clone(), xf.clone());
            up[j] += h;
            down[j] -= h;
            let (fu, fd) = (f.eval_f64(&up), f.eval_f64(&down));
            for i in 0..2 {
                let fd_est = (fu[i] - fd[i]) / (2.0 * h);
                prop_assert!((fd_est - to_f64(jac.get(i, j))).abs() < 1e-6);
            }
        }
    }
}
