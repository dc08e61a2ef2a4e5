use crate::charts::{stratify, suborbifold_model, SuborbifoldLocalModel};
use crate::groups::{quotient, QuotientGroup, Subgroup};
use crate::ratlin::{unit_vec, Matrix, Rational, Subspace};

use super::{invariant_projection, GermError, MapGerm};

/// Rank of the differential at each supplied preimage point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub target_dim: usize,
    pub points: Vec<(Vec<Rational>, usize)>,
}

/// `p` is regular when the differential is onto at every supplied preimage
/// point; with no points it is regular by convention.
pub fn is_regular_value(germ: &MapGerm, p: &[Rational], lifts: &[Vec<Rational>]) -> Result<RegularityReport, GermError> {
    let k = germ.target().dim();
    let mut points = Vec::with_capacity(lifts.len());
    for x in lifts {
        check_in_preimage(germ, p, x)?;
        points.push((x.clone(), germ.jacobian_at(x)?.rank()));
    }
    let regular = points.iter().all(|(_, r)| *r == k);
    Ok(RegularityReport { regular, target_dim: k, points })
}

fn check_in_preimage(germ: &MapGerm, p: &[Rational], x: &[Rational]) -> Result<(), GermError> {
    germ.source().check_point(x)?;
    let value = germ.lift().eval(x)?;
    if value != p {
        return Err(GermError::NotInPreimage { point: x.to_vec(), value });
    }
    Ok(())
}

/// Boundary data of a preimage model on a half-space chart.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub on_boundary: bool,
    /// `K ∩ {x_n = 0}` when the point is on the boundary.
    pub boundary_kernel: Option<Subspace>,
}

/// Local structure of `f^{-1}(p)` at a regular point fixed by the chart
/// group.
#[derive(Clone, Debug)]
pub struct PreimageModel {
    pub point: Vec<Rational>,
    pub p: Vec<Rational>,
    pub jacobian: Matrix,
    pub kernel: Subspace,
    /// Elements acting as the identity on the kernel.
    pub g: Subgroup,
    pub gamma_s: QuotientGroup,
    pub suborbifold: SuborbifoldLocalModel,
    pub dim: usize,
    pub boundary: Option<BoundaryData>,
}

pub fn preimage_model(germ: &MapGerm, p: &[Rational], point: &[Rational]) -> Result<PreimageModel, GermError> {
    check_in_preimage(germ, p, point)?;
    if !germ.is_centered_at(point) {
        return Err(GermError::NotCentered(point.to_vec()));
    }
    let jacobian = germ.jacobian_at(point)?;
    let (n, k) = (germ.source().dim(), germ.target().dim());
    let rank = jacobian.rank();
    if rank != k {
        return Err(GermError::NotRegular { point: point.to_vec(), rank, expected: k });
    }
    let kernel = jacobian.kernel();
    let group = germ.source().group();
    if let Some(el) = (0..group.order()).find(|&e| !kernel.is_invariant_under(group.element(e))) {
        return Err(GermError::KernelNotInvariant { element: el });
    }
    let g = group.pointwise_stabilizer(&kernel);
    let gamma_s = quotient(group, &g)?;
    let suborbifold = suborbifold_model(germ.source(), &kernel, &group.whole())?;
    debug_assert_eq!(kernel.dim(), n - k);
    Ok(PreimageModel { point: point.to_vec(), p: p.to_vec(), jacobian, kernel, g, gamma_s, suborbifold, dim: n - k, boundary: None })
}

/// [`preimage_model`] on a half-space chart. On the boundary hyperplane the
/// restriction of the germ to the hyperplane must be regular too, and the
/// kernel then meets the hyperplane in codimension one.
pub fn preimage_model_boundary(germ: &MapGerm, p: &[Rational], point: &[Rational]) -> Result<PreimageModel, GermError> {
    if !germ.source().has_boundary() {
        return Err(GermError::NoBoundary);
    }
    let mut model = preimage_model(germ, p, point)?;
    let on_boundary = germ.source().on_boundary(point);
    let boundary_kernel = if on_boundary {
        let n = germ.source().dim();
        let k = germ.target().dim();
        let columns: Vec<Vec<Rational>> = (0..n - 1).map(|c| model.jacobian.column(c)).collect();
        let restricted = Matrix::from_columns(k, &columns);
        let rank = restricted.rank();
        if rank != k {
            return Err(GermError::BoundaryRestrictionCritical { rank, expected: k });
        }
        let hyperplane = Subspace::span(n, &(0..n - 1).map(|i| unit_vec(n, i)).collect::<Vec<_>>());
        let bk = model.kernel.intersect(&hyperplane);
        debug_assert_eq!(bk.dim() + 1, model.kernel.dim());
        Some(bk)
    } else {
        None
    };
    model.boundary = Some(BoundaryData { on_boundary, boundary_kernel });
    Ok(model)
}

impl PreimageModel {
    /// Only the identity coset of `gamma_s` acts trivially on the kernel.
    pub fn gamma_s_effective(&self, germ: &MapGerm) -> bool {
        let group = germ.source().group();
        self.gamma_s.cosets().iter().skip(1).all(|c| !self.kernel.is_fixed_pointwise_by(group.element(c[0])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub n_order: usize,
    pub g_order: usize,
    pub intersection_trivial: bool,
    /// Coset of `gamma_s` hit by each element of `N`.
    pub images: Vec<usize>,
    pub injective: bool,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.intersection_trivial && self.injective
    }
}

/// `N ∩ G = {e}` and `N -> Γ/G` is injective.
pub fn faithfulness_check(germ: &MapGerm, model: &PreimageModel) -> FaithfulnessReport {
    let n = germ.theta().kernel();
    let intersection_trivial = n.intersect(&model.g).is_trivial();
    let images: Vec<usize> =
        n.members().iter().map(|&x| model.gamma_s.coset_of(x).expect("every element lies in a coset")).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == images.len();
    FaithfulnessReport { n_order: n.order(), g_order: model.g.order(), intersection_trivial, images, injective }
}

/// Structure forced at a regular point of a germ into a one-dimensional
/// chart with trivial group. The differential factors through averaging over
/// `N = Γ`, so `ker A_x` (the fixed space) is nonzero and the singular stratum
/// through the point has positive dimension. When `K` has no fixed vectors
/// the splitting is exactly `ker A_x ⊕ K` with `ker A_x` a line; the last two
/// flags record whether that sharper form holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTargetReport {
    pub gamma_order: usize,
    pub gamma_s_order: usize,
    pub gamma_s_is_gamma: bool,
    pub ker_ax: Subspace,
    /// `ker A_x` is nonzero and fixed pointwise by the chart group.
    pub ker_ax_fixed: bool,
    pub ker_ax_is_fixed_line: bool,
    pub image_is_kernel: bool,
    /// Dimension of the isotropy stratum through the point.
    pub stratum_dim: usize,
    pub stratum_ok: bool,
}

impl RealTargetReport {
    pub fn holds(&self) -> bool {
        self.gamma_s_is_gamma && self.ker_ax_fixed && self.stratum_ok
    }
}

pub fn real_target_structure(germ: &MapGerm, model: &PreimageModel) -> Result<RealTargetReport, GermError> {
    if germ.target().dim() != 1 || !germ.target().group().is_trivial() {
        return Err(GermError::WrongTargetShape);
    }
    let group = germ.source().group();
    let proj = invariant_projection(germ);
    let ker_ax = proj.kernel.clone();
    let ker_ax_fixed = ker_ax.dim() >= 1 && group.elements().iter().all(|g| ker_ax.is_fixed_pointwise_by(g));
    let ker_ax_is_fixed_line = ker_ax_fixed && ker_ax.dim() == 1;
    let image_is_kernel = proj.image == model.kernel;
    let fixed = group.fixed_subspace(&group.whole());
    let chart_strata = stratify(germ.source());
    let stratum_dim =
        chart_strata.strata.iter().find(|s| s.fixed == fixed).map_or(fixed.dim(), |s| s.dim);
    let stratum_ok = group.is_trivial() || stratum_dim >= 1;
    Ok(RealTargetReport {
        gamma_order: group.order(),
        gamma_s_order: model.gamma_s.order(),
        gamma_s_is_gamma: model.gamma_s.order() == group.order() && model.g.is_trivial(),
        ker_ax,
        ker_ax_fixed,
        ker_ax_is_fixed_line,
        image_is_kernel,
        stratum_dim,
        stratum_ok,
    })
}
