use crate::groups::GroupHom;
use crate::ratlin::{ratio, unit_vec, zero_vec, Matrix, MultiPoly, Rational};

use super::{ChartError, LocalChart};

/// Affine chart embedding `y -> linear y + translate` with its injective
/// homomorphism between the chart groups.
#[derive(Clone, Debug)]
pub struct ChartEmbedding {
    pub source: LocalChart,
    pub target: LocalChart,
    pub linear: Matrix,
    pub translate: Vec<Rational>,
    pub theta: GroupHom,
}

impl ChartEmbedding {
    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.linear.mul_vec(y).into_iter().zip(&self.translate).map(|(a, b)| a + b).collect()
    }

    /// The embedding as a polynomial map.
    pub fn as_poly(&self) -> MultiPoly {
        let neg: Vec<Rational> = self.translate.iter().map(|t| -t).collect();
        MultiPoly::linear(&self.linear).shift_output(&neg)
    }
}

/// Checks injectivity of the linear part and of `theta`, and equivariance
/// `embed(g y) = theta(g) embed(y)` as a polynomial identity in `y` for every
/// source element, then re-checks the diagram at a few rational points.
pub fn verify_embedding(
    source: &LocalChart,
    target: &LocalChart,
    linear: &Matrix,
    translate: &[Rational],
    theta_gen_images: &[Matrix],
) -> Result<ChartEmbedding, ChartError> {
    let (m, n) = (target.dim(), source.dim());
    if linear.rows() != m || linear.cols() != n {
        return Err(ChartError::Dimension { expected: m * n, got: linear.rows() * linear.cols(), what: "embedding linear part entries".into() });
    }
    if translate.len() != m {
        return Err(ChartError::Dimension { expected: m, got: translate.len(), what: "embedding translation".into() });
    }
    let rank = linear.rank();
    if rank != n {
        return Err(ChartError::EmbeddingNotInjective { rank, expected: n });
    }
    let theta = GroupHom::from_generator_matrices(source.group().clone(), target.group().clone(), theta_gen_images)?;
    let kernel_order = theta.kernel().order();
    if kernel_order != 1 {
        return Err(ChartError::ThetaNotInjective { kernel_order });
    }
    let e = ChartEmbedding {
        source: source.clone(),
        target: target.clone(),
        linear: linear.clone(),
        translate: translate.to_vec(),
        theta,
    };
    let poly = e.as_poly();
    let mut probes: Vec<Vec<Rational>> = vec![zero_vec(n)];
    probes.extend((0..n).map(|i| unit_vec(n, i)));
    probes.push((0..n).map(|i| ratio(1, i as i64 + 2)).collect());
    let g = source.group();
    for el in 0..g.order() {
        let gm = g.element(el);
        let tm = e.theta.apply_matrix(el);
        if poly.compose_linear(gm).sub(&poly.apply_output(tm)).is_identically_zero() {
            continue;
        }
        // Affine maps agreeing on an affine basis agree everywhere, so one
        // of the probes exposes the failure.
        for y in &probes {
            let lhs = e.apply(&gm.mul_vec(y));
            let rhs = tm.mul_vec(&e.apply(y));
            if lhs != rhs {
                return Err(ChartError::NotEquivariant { element: el, point: y.clone(), lhs, rhs });
            }
        }
        unreachable!("affine probes span the source");
    }
    Ok(e)
}
