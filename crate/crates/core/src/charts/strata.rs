use num_traits::Zero;

use crate::groups::Subgroup;
use crate::ratlin::Subspace;

use super::LocalChart;

/// One isotropy stratum: the points of `fixed` not lying in any smaller
/// fixed subspace of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// `{g : fixed ⊆ Fix(g)}`, the isotropy of every point of the stratum.
    pub isotropy: Subgroup,
    pub fixed: Subspace,
    pub dim: usize,
    pub codim: usize,
    /// Contained in the boundary hyperplane `x_n = 0`.
    pub boundary: bool,
}

impl Stratum {
    pub fn is_singular(&self) -> bool {
        !self.isotropy.is_trivial()
    }
}

#[derive(Clone, Debug)]
pub struct StrataReport {
    pub chart_dim: usize,
    /// All strata, regular one included, by decreasing dimension.
    pub strata: Vec<Stratum>,
}

impl StrataReport {
    pub fn singular(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| s.is_singular())
    }

    pub fn regular(&self) -> Option<&Stratum> {
        self.strata.iter().find(|s| !s.is_singular())
    }

    pub fn interior_codim1(&self) -> impl Iterator<Item = &Stratum> {
        self.singular().filter(|s| s.codim == 1 && !s.boundary)
    }
}

/// Strata are indexed by the intersection-closed family of fixed subspaces
/// `Fix(g)`; strata with equal fixed subspaces are identified.
pub fn stratify(chart: &LocalChart) -> StrataReport {
    let g = chart.group();
    let n = chart.dim();
    let mut lattice: Vec<Subspace> = Vec::new();
    for i in 0..g.order() {
        let f = g.fixed_subspace(&g.generated_subgroup(&[i]));
        if !lattice.contains(&f) {
            lattice.push(f);
        }
    }
    let mut i = 0;
    while i < lattice.len() {
        for j in 0..i {
            let f = lattice[i].intersect(&lattice[j]);
            if !lattice.contains(&f) {
                lattice.push(f);
            }
        }
        i += 1;
    }
    let mut strata: Vec<Stratum> = lattice
        .into_iter()
        .map(|fixed| {
            let isotropy = g.pointwise_stabilizer(&fixed);
            let dim = fixed.dim();
            let boundary = chart.has_boundary() && fixed.basis().iter().all(|v| v[n - 1].is_zero());
            Stratum { isotropy, dim, codim: n - dim, boundary, fixed }
        })
        .collect();
    strata.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.fixed.basis().cmp(b.fixed.basis())));
    StrataReport { chart_dim: n, strata }
}

/// Some singular stratum of codimension 1 meets the interior.
pub fn has_interior_codim1_stratum(chart: &LocalChart) -> bool {
    stratify(chart).interior_codim1().next().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::build_chart;
    use crate::ratlin::Matrix;

    #[test]
    fn scalar_group_has_single_point_stratum() {
        let c = build_chart(2, &[Matrix::from_i64(&[&[-1, 0], &[0, -1]])], false).unwrap();
        let r = stratify(&c);
        let sing: Vec<_> = r.singular().collect();
        assert_eq!(sing.len(), 1);
        assert_eq!((sing[0].dim, sing[0].codim), (0, 2));
        assert!(!has_interior_codim1_stratum(&c));
    }

    #[test]
    fn mirror_has_codim_one() {
        let c = build_chart(2, &[Matrix::from_i64(&[&[1, 0], &[0, -1]])], false).unwrap();
        assert!(has_interior_codim1_stratum(&c));
    }

    #[test]
    fn trivial_group_has_only_regular_stratum() {
        let r = stratify(&LocalChart::trivial(3, false));
        assert_eq!(r.strata.len(), 1);
        assert_eq!(r.singular().count(), 0);
    }
}
