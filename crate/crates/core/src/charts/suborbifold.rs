use crate::groups::{QuotientGroup, Subgroup};
use crate::ratlin::Subspace;

use super::{ChartError, LocalChart};

/// A `lambda`-invariant linear subspace of a chart with its intrinsic
/// isotropy `lambda / omega`.
#[derive(Clone, Debug)]
pub struct SuborbifoldLocalModel {
    pub chart: LocalChart,
    pub subspace: Subspace,
    pub lambda: Subgroup,
    /// Elements of `lambda` fixing the subspace pointwise.
    pub omega: Subgroup,
    pub intrinsic_isotropy: QuotientGroup,
    pub full: bool,
}

pub fn suborbifold_model(
    chart: &LocalChart,
    subspace: &Subspace,
    lambda: &Subgroup,
) -> Result<SuborbifoldLocalModel, ChartError> {
    if subspace.ambient_dim() != chart.dim() {
        return Err(ChartError::Dimension {
            expected: chart.dim(),
            got: subspace.ambient_dim(),
            what: "subspace ambient".into(),
        });
    }
    let g = chart.group();
    let lambda = g.subgroup(lambda.members())?;
    for &e in lambda.members() {
        let m = g.element(e);
        if let Some(v) = subspace.invariance_witness(m) {
            let image = m.mul_vec(&v);
            return Err(ChartError::NotInvariant { element: e, vector: v, image });
        }
    }
    let omega = lambda.intersect(&g.pointwise_stabilizer(subspace));
    let intrinsic_isotropy = QuotientGroup::new(g, &lambda, &omega)?;
    // Only the identity coset may act trivially.
    for (c, coset) in intrinsic_isotropy.cosets().iter().enumerate().skip(1) {
        if subspace.is_fixed_pointwise_by(g.element(coset[0])) {
            return Err(ChartError::NotEffective { coset: c });
        }
    }
    let full = lambda.order() == g.order();
    Ok(SuborbifoldLocalModel { chart: chart.clone(), subspace: subspace.clone(), lambda, omega, intrinsic_isotropy, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::build_chart;
    use crate::ratlin::{rat_vec, Matrix};

    fn qq() -> LocalChart {
        build_chart(2, &[Matrix::from_i64(&[&[-1, 0], &[0, 1]]), Matrix::from_i64(&[&[1, 0], &[0, -1]])], false)
            .unwrap()
    }

    #[test]
    fn axis_is_full_suborbifold() {
        let c = qq();
        let x_axis = Subspace::span(2, &[rat_vec(&[1, 0])]);
        let m = suborbifold_model(&c, &x_axis, &c.group().whole()).unwrap();
        assert!(m.full);
        assert_eq!(m.omega.order(), 2);
        assert_eq!(m.intrinsic_isotropy.order(), 2);
    }

    #[test]
    fn diagonal_needs_smaller_lambda() {
        let c = qq();
        let diag = Subspace::span(2, &[rat_vec(&[1, 1])]);
        let minus = c.group().index_of(&Matrix::from_i64(&[&[-1, 0], &[0, -1]])).unwrap();
        let lambda = c.group().generated_subgroup(&[minus]);
        let m = suborbifold_model(&c, &diag, &lambda).unwrap();
        assert!(!m.full);
        assert!(m.omega.is_trivial());
        assert_eq!(m.intrinsic_isotropy.order(), 2);

        let err = suborbifold_model(&c, &diag, &c.group().whole()).unwrap_err();
        match err {
            ChartError::NotInvariant { element, vector, image } => {
                assert_eq!(*c.group().element(element), Matrix::from_i64(&[&[-1, 0], &[0, 1]]));
                assert_eq!((vector, image), (rat_vec(&[1, 1]), rat_vec(&[-1, 1])));
            }
            other => panic!("{other:?}"),
        }
    }
}
