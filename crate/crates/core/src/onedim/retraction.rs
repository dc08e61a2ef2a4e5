use crate::charts::{stratify, LocalChart, Stratum};
use crate::germs::{preimage_model_boundary, projection_for, recenter, MapGerm, PreimageModel};
use crate::groups::{index2_subgroups, Subgroup};
use crate::ratlin::{unit_vec, zero_vec, Matrix, MultiPoly, Rational, Subspace};

use super::{Atlas, OneDimError};

#[derive(Clone, Debug)]
pub struct ChartEvidence {
    pub chart: String,
    pub singular: Vec<Stratum>,
    /// Indices into `singular` of interior strata of codimension one.
    pub interior_codim1: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    /// No chart has an interior singular stratum of codimension one.
    pub holds: bool,
    pub charts: Vec<ChartEvidence>,
}

pub fn no_retraction_hypothesis(atlas: &Atlas) -> HypothesisReport {
    let charts: Vec<ChartEvidence> = atlas
        .charts
        .iter()
        .map(|nc| {
            let singular: Vec<Stratum> = stratify(&nc.chart).singular().cloned().collect();
            let interior_codim1 =
                singular.iter().enumerate().filter(|(_, s)| s.codim == 1 && !s.boundary).map(|(i, _)| i).collect();
            ChartEvidence { chart: nc.name.clone(), singular, interior_codim1 }
        })
        .collect();
    let holds = charts.iter().all(|c| c.interior_codim1.is_empty());
    HypothesisReport { holds, charts }
}

/// Candidate restrictions of a would-be retraction `X -> ∂X` to the charts
/// of an atlas.
#[derive(Clone, Debug)]
pub struct RetractionScenario {
    pub target: LocalChart,
    /// `(chart index, germ on that chart)`.
    pub germs: Vec<(usize, MapGerm)>,
    pub p: Vec<Rational>,
}

/// Whether a stratum could carry a mirror point of a one-dimensional
/// preimage: its isotropy `H` would have to be `Z2` with `A_x` of rank one,
/// so that `ker A_x` is a fixed hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorCheck {
    pub chart: String,
    pub stratum_dim: usize,
    pub isotropy_order: usize,
    pub ker_ax_dim: usize,
    pub im_ax_dim: usize,
    pub admits_mirror: bool,
}

#[derive(Clone, Debug)]
pub struct ContradictionReport {
    pub boundary_charts_checked: Vec<String>,
    /// Chart and point where `p` sits on the boundary.
    pub boundary_chart: String,
    pub boundary_point: Vec<Rational>,
    pub boundary_model: PreimageModel,
    /// `f` is the identity on `∂X`, so `f^{-1}(p) ∩ ∂X = {p}`.
    pub boundary_points: usize,
    /// A compact 1-orbifold with an odd number of boundary points has a
    /// component of type (c), hence a mirror point.
    pub mirror_point_forced: bool,
    pub mirror_checks: Vec<MirrorCheck>,
    pub contradiction: bool,
}

#[derive(Clone, Debug)]
pub enum RetractionOutcome {
    HypothesisNotMet,
    Contradiction(ContradictionReport),
}

#[derive(Clone, Debug)]
pub struct RetractionReport {
    pub hypothesis: HypothesisReport,
    pub outcome: RetractionOutcome,
}

/// The lift restricted to `x_n = 0` equals `(x_1, ..., x_{n-1})`.
fn fixes_boundary(germ: &MapGerm) -> bool {
    let n = germ.source().dim();
    if germ.target().dim() + 1 != n {
        return false;
    }
    let cols: Vec<Vec<Rational>> = (0..n - 1).map(|i| unit_vec(n, i)).collect();
    let inclusion = Matrix::from_columns(n, &cols);
    let restricted = germ.lift().compose_affine(&inclusion, &zero_vec(n));
    restricted.sub(&MultiPoly::linear(&Matrix::identity(n - 1))).is_identically_zero()
}

fn mirror_checks(atlas: &Atlas) -> Vec<MirrorCheck> {
    let mut out = Vec::new();
    for nc in &atlas.charts {
        let group = nc.chart.group();
        let n = nc.chart.dim();
        for s in stratify(&nc.chart).singular().filter(|s| !s.boundary) {
            let proj = projection_for(group, &s.isotropy, Subspace::full(n));
            let (ker_ax_dim, im_ax_dim) = (proj.kernel.dim(), proj.image.dim());
            out.push(MirrorCheck {
                chart: nc.name.clone(),
                stratum_dim: s.dim,
                isotropy_order: s.isotropy.order(),
                ker_ax_dim,
                im_ax_dim,
                admits_mirror: s.isotropy.order() == 2 && im_ax_dim == 1,
            });
        }
    }
    out
}

/// Runs the no-retraction argument on a scenario: either reports the interior
/// codimension-one strata that break the hypothesis, or derives the
/// contradiction from a forced mirror point that no chart can host.
pub fn retraction_contradiction(atlas: &Atlas, s: &RetractionScenario) -> Result<RetractionReport, OneDimError> {
    for (c, g) in &s.germs {
        if *c >= atlas.charts.len() {
            return Err(OneDimError::Malformed(format!("germ refers to chart {c}")));
        }
        if g.source().dim() != atlas.chart(*c).dim() || g.target().dim() != s.target.dim() {
            return Err(OneDimError::Malformed(format!("germ on chart {} has the wrong shape", atlas.charts[*c].name)));
        }
    }
    let mut checked = Vec::new();
    for (c, g) in &s.germs {
        if atlas.chart(*c).has_boundary() {
            let name = atlas.charts[*c].name.clone();
            if !fixes_boundary(g) {
                return Err(OneDimError::NotBoundaryFixing { chart: name });
            }
            checked.push(name);
        }
    }
    let hypothesis = no_retraction_hypothesis(atlas);
    if !hypothesis.holds {
        return Ok(RetractionReport { hypothesis, outcome: RetractionOutcome::HypothesisNotMet });
    }
    if s.target.isotropy_at(&s.p).map(|h| !h.is_trivial()).unwrap_or(true) {
        return Err(OneDimError::Malformed("p must be a non-singular point of the boundary".into()));
    }
    let (c, germ) = s.germs.iter().find(|(c, _)| atlas.chart(*c).has_boundary()).ok_or(OneDimError::NoBoundaryGerm)?;
    let mut point = s.p.clone();
    point.push(Rational::from_integer(0.into()));
    let local = recenter(germ, &point)?;
    let boundary_model = preimage_model_boundary(&local, &zero_vec(s.p.len()), &zero_vec(point.len()))?;
    let boundary_points = 1;
    let mirror_point_forced = boundary_points % 2 == 1;
    let mirror_checks = mirror_checks(atlas);
    let contradiction = mirror_point_forced && mirror_checks.iter().all(|m| !m.admits_mirror);
    Ok(RetractionReport {
        hypothesis,
        outcome: RetractionOutcome::Contradiction(ContradictionReport {
            boundary_charts_checked: checked,
            boundary_chart: atlas.charts[*c].name.clone(),
            boundary_point: point,
            boundary_model,
            boundary_points,
            mirror_point_forced,
            mirror_checks,
            contradiction,
        }),
    })
}

#[derive(Clone, Debug)]
pub struct Index2Report {
    /// Some index-2 subgroup fixes a nonzero vector.
    pub forbidden: bool,
    pub index2_count: usize,
    pub witness: Option<(Subgroup, Subspace)>,
}

/// An index-2 subgroup `H` acting as `R^{n-1} ⊕ R` with trivial action on
/// the `R` factor exists iff some index-2 `H` fixes a nonzero vector: an
/// `H`-invariant complement to a fixed line always exists by averaging.
pub fn forbidden_index2_check(chart: &LocalChart) -> Index2Report {
    let group = chart.group();
    let subs = index2_subgroups(group);
    let witness = subs.iter().find_map(|h| {
        let f = group.fixed_subspace(h);
        f.basis().first().map(|v| (h.clone(), Subspace::span(chart.dim(), std::slice::from_ref(v))))
    });
    Index2Report { forbidden: witness.is_some(), index2_count: subs.len(), witness }
}
