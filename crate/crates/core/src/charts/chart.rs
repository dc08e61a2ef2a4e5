use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::groups::{FiniteMatrixGroup, Subgroup, DEFAULT_ORDER_BOUND};
use crate::ratlin::{Matrix, Rational};

use super::ChartError;

/// A linear chart model: `R^n` (or `R^n_+` when `boundary` is set) with a
/// finite group acting by matrices.
#[derive(Clone, Debug)]
pub struct LocalChart {
    dim: usize,
    group: Arc<FiniteMatrixGroup>,
    boundary: bool,
}

/// Closure of `generators`, checked against the half-space normal form when
/// `boundary` is set: every element must have last row `(0, ..., 0, 1)`.
pub fn build_chart(dim: usize, generators: &[Matrix], boundary: bool) -> Result<LocalChart, ChartError> {
    build_chart_bounded(dim, generators, boundary, DEFAULT_ORDER_BOUND)
}

pub fn build_chart_bounded(
    dim: usize,
    generators: &[Matrix],
    boundary: bool,
    bound: usize,
) -> Result<LocalChart, ChartError> {
    if boundary {
        if dim == 0 {
            return Err(ChartError::BoundaryDimZero);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() == dim && g.cols() == dim && !fixes_last_coordinate(g) {
                return Err(ChartError::BoundaryViolation { index: i });
            }
        }
    }
    let group = FiniteMatrixGroup::generate_bounded(dim, generators, bound)?;
    LocalChart::from_group(Arc::new(group), boundary)
}

fn fixes_last_coordinate(g: &Matrix) -> bool {
    let n = g.rows();
    (0..n).all(|c| if c + 1 == n { g.get(n - 1, c).is_one() } else { g.get(n - 1, c).is_zero() })
}

impl LocalChart {
    pub fn from_group(group: Arc<FiniteMatrixGroup>, boundary: bool) -> Result<Self, ChartError> {
        if boundary {
            if group.dim() == 0 {
                return Err(ChartError::BoundaryDimZero);
            }
            if let Some(i) = group.elements().iter().position(|g| !fixes_last_coordinate(g)) {
                return Err(ChartError::BoundaryViolation { index: i });
            }
        }
        Ok(Self { dim: group.dim(), group, boundary })
    }

    /// `R^n` with the trivial group.
    pub fn trivial(dim: usize, boundary: bool) -> Self {
        let group = FiniteMatrixGroup::generate(dim, &[]).expect("trivial group");
        Self { dim, group: Arc::new(group), boundary: boundary && dim > 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary
    }

    pub fn check_point(&self, point: &[Rational]) -> Result<(), ChartError> {
        if point.len() != self.dim {
            return Err(ChartError::Dimension { expected: self.dim, got: point.len(), what: "chart point".into() });
        }
        if self.boundary && point[self.dim - 1].is_negative() {
            return Err(ChartError::OutsideHalfSpace(point.to_vec()));
        }
        Ok(())
    }

    /// Whether `point` lies on the boundary hyperplane `x_n = 0`.
    pub fn on_boundary(&self, point: &[Rational]) -> bool {
        self.boundary && point.last().is_some_and(Zero::is_zero)
    }

    /// `{g : g point = point}`.
    pub fn isotropy_at(&self, point: &[Rational]) -> Result<Subgroup, ChartError> {
        self.check_point(point)?;
        let members: Vec<usize> =
            (0..self.group.order()).filter(|&g| self.group.element(g).mul_vec(point) == point).collect();
        Ok(self.group.subgroup(&members).expect("stabilizers are subgroups"))
    }

    /// The chart with the group cut down to `h`.
    pub fn restricted(&self, h: &Subgroup, boundary: bool) -> LocalChart {
        let group = Arc::new(self.group.subgroup_as_group(h));
        LocalChart { dim: self.dim, group, boundary: boundary && self.boundary }
    }
}

/// Block-diagonal product. When the first factor carries the boundary, its
/// boundary coordinate is moved to the end so the product is again in normal
/// form.
pub fn product_chart(a: &LocalChart, b: &LocalChart) -> Result<LocalChart, ChartError> {
    if a.boundary && b.boundary {
        return Err(ChartError::BothBoundary);
    }
    let (na, nb) = (a.dim, b.dim);
    let n = na + nb;
    let mut gens: Vec<Matrix> = Vec::new();
    for g in a.group.generator_matrices() {
        gens.push(g.block_diag(&Matrix::identity(nb)));
    }
    for g in b.group.generator_matrices() {
        gens.push(Matrix::identity(na).block_diag(&g));
    }
    if a.boundary {
        // Permutation moving coordinate na-1 to position n-1.
        let mut order: Vec<usize> = (0..n).filter(|&i| i != na - 1).collect();
        order.push(na - 1);
        let mut p = Matrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            p.set(new, old, Rational::one());
        }
        let pt = p.transpose();
        gens = gens.iter().map(|g| &(&p * g) * &pt).collect();
    }
    build_chart(n, &gens, a.boundary || b.boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat_vec;

    fn q() -> LocalChart {
        build_chart(1, &[Matrix::from_i64(&[&[-1]])], false).unwrap()
    }

    #[test]
    fn q_times_q_is_klein_four() {
        let qq = product_chart(&q(), &q()).unwrap();
        assert_eq!(qq.group().order(), 4);
        assert_eq!(qq.isotropy_at(&rat_vec(&[0, 0])).unwrap().order(), 4);
        let h = qq.isotropy_at(&rat_vec(&[1, 0])).unwrap();
        assert_eq!(h.order(), 2);
        let g = qq.group().element(h.members()[1]);
        assert_eq!(*g, Matrix::from_i64(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn boundary_normal_form_enforced() {
        assert!(build_chart(2, &[Matrix::from_i64(&[&[-1, 0], &[0, 1]])], true).is_ok());
        assert_eq!(
            build_chart(2, &[Matrix::from_i64(&[&[1, 0], &[0, -1]])], true).unwrap_err(),
            ChartError::BoundaryViolation { index: 0 }
        );
    }

    #[test]
    fn boundary_factor_moved_last() {
        let half = LocalChart::trivial(1, true);
        let p = product_chart(&half, &q()).unwrap();
        assert!(p.has_boundary());
        assert_eq!(p.group().generator_matrices()[0], Matrix::from_i64(&[&[-1, 0], &[0, 1]]));
    }

    #[test]
    fn point_outside_half_space_rejected() {
        let half = LocalChart::trivial(2, true);
        assert!(matches!(half.isotropy_at(&rat_vec(&[0, -1])), Err(ChartError::OutsideHalfSpace(_))));
    }
}
