use std::sync::Arc;

use crate::charts::{ChartEmbedding, LocalChart};
use crate::groups::{FiniteMatrixGroup, GroupHom};
use crate::ratlin::{zero_vec, Matrix, MultiPoly, Rational, Subspace};

use super::GermError;

/// An equivariant polynomial lift between two charts together with the
/// group homomorphism it intertwines.
#[derive(Clone, Debug)]
pub struct MapGerm {
    source: LocalChart,
    target: LocalChart,
    lift: MultiPoly,
    theta: GroupHom,
    base_point: Vec<Rational>,
}

fn same_group(a: &Arc<FiniteMatrixGroup>, b: &Arc<FiniteMatrixGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.elements() == b.elements()
}

/// Validates shapes, domains and equivariance `lift(g y) = theta(g) lift(y)`
/// as a polynomial identity for every source element.
pub fn build_germ(
    source: &LocalChart,
    target: &LocalChart,
    lift: MultiPoly,
    theta: GroupHom,
    base_point: Option<Vec<Rational>>,
) -> Result<MapGerm, GermError> {
    if lift.num_vars() != source.dim() {
        return Err(GermError::Dimension { expected: source.dim(), got: lift.num_vars(), what: "lift variables".into() });
    }
    if lift.out_dim() != target.dim() {
        return Err(GermError::Dimension { expected: target.dim(), got: lift.out_dim(), what: "lift outputs".into() });
    }
    if !same_group(theta.source(), source.group()) || !same_group(theta.target(), target.group()) {
        return Err(GermError::ThetaMismatch);
    }
    let base_point = base_point.unwrap_or_else(|| zero_vec(source.dim()));
    source.check_point(&base_point)?;
    let value = lift.eval(&base_point)?;
    target.check_point(&value).map_err(|_| GermError::TargetOutsideHalfSpace(value.clone()))?;
    let g = source.group();
    for el in 0..g.order() {
        let gm = g.element(el);
        let residual = lift.compose_linear(gm).sub(&lift.apply_output(theta.apply_matrix(el)));
        if !residual.is_identically_zero() {
            return Err(GermError::NotEquivariant { element: el, element_matrix: gm.clone(), residual });
        }
    }
    Ok(MapGerm { source: source.clone(), target: target.clone(), lift, theta, base_point })
}

impl MapGerm {
    /// [`build_germ`] with `theta` given by images of the source generators.
    pub fn new(
        source: &LocalChart,
        target: &LocalChart,
        lift: MultiPoly,
        theta_gen_images: &[Matrix],
        base_point: Option<Vec<Rational>>,
    ) -> Result<Self, GermError> {
        let theta =
            GroupHom::from_generator_matrices(source.group().clone(), target.group().clone(), theta_gen_images)?;
        build_germ(source, target, lift, theta, base_point)
    }

    pub fn source(&self) -> &LocalChart {
        &self.source
    }

    pub fn target(&self) -> &LocalChart {
        &self.target
    }

    pub fn lift(&self) -> &MultiPoly {
        &self.lift
    }

    pub fn theta(&self) -> &GroupHom {
        &self.theta
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.base_point
    }

    pub fn jacobian_at(&self, point: &[Rational]) -> Result<Matrix, GermError> {
        Ok(self.lift.jacobian(point)?)
    }

    /// Kernel of the differential at `point`.
    pub fn kernel_at(&self, point: &[Rational]) -> Result<Subspace, GermError> {
        Ok(self.jacobian_at(point)?.kernel())
    }

    /// Whether every source element fixes `point`.
    pub fn is_centered_at(&self, point: &[Rational]) -> bool {
        self.source.group().elements().iter().all(|g| g.mul_vec(point) == point)
    }
}

/// Moves the germ to `point`: translates source and target so `point` and
/// its image sit at the origin, and cuts both groups down to the isotropy
/// there. Boundary flags survive only for points on the boundary hyperplane.
pub fn recenter(germ: &MapGerm, point: &[Rational]) -> Result<MapGerm, GermError> {
    let src = &germ.source;
    let h = src.isotropy_at(point)?;
    let q = germ.lift.eval(point)?;
    let tq = germ.target.isotropy_at(&q).map_err(|_| GermError::TargetOutsideHalfSpace(q.clone()))?;
    let new_source = src.restricted(&h, src.on_boundary(point));
    let new_target = germ.target.restricted(&tq, germ.target.on_boundary(&q));
    let n = src.dim();
    let lift = germ.lift.compose_affine(&Matrix::identity(n), point).shift_output(&q);
    let images: Vec<Matrix> = new_source
        .group()
        .generators()
        .iter()
        .map(|&i| {
            let parent = src.group().index_of(new_source.group().element(i)).expect("isotropy lies in the chart group");
            germ.theta.apply_matrix(parent).clone()
        })
        .collect();
    MapGerm::new(&new_source, &new_target, lift, &images, None)
}

/// `germ` composed with a chart embedding into its source chart: lift
/// `f(L y + t)` and homomorphism `theta_f ∘ theta_e`.
pub fn pull_back(germ: &MapGerm, emb: &ChartEmbedding) -> Result<MapGerm, GermError> {
    if !same_group(emb.target.group(), germ.source.group()) || emb.target.dim() != germ.source.dim() {
        return Err(GermError::ThetaMismatch);
    }
    let lift = germ.lift.compose_affine(&emb.linear, &emb.translate);
    let images: Vec<Matrix> = emb
        .source
        .group()
        .generators()
        .iter()
        .map(|&g| {
            let mid = emb.theta.apply_matrix(g);
            let idx = germ.source.group().index_of(mid).expect("theta lands in the chart group");
            germ.theta.apply_matrix(idx).clone()
        })
        .collect();
    MapGerm::new(&emb.source, &germ.target, lift, &images, None)
}
