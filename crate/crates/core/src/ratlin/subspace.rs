//! Linear subspaces of `Q^n` with a canonical reduced-echelon basis, so
//! equality of subspaces is structural equality.

use num_traits::Zero;

use super::{format_rational, Matrix, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec(), ambient).expect("vector length must match ambient");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|i| super::unit_vec(ambient, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        // Reduce against the echelon basis; v is inside iff it reduces to 0.
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (ri, bi) in r.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *ri -= &f * bi;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Annihilator under the standard pairing: `{w : <w, v> = 0 for v in self}`.
    pub fn annihilator(&self) -> Subspace {
        Matrix::from_rows(self.basis.clone(), self.ambient).unwrap().kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image of this subspace under `m` (an `r x ambient` matrix).
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let vs: Vec<_> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &vs)
    }

    /// First basis vector `b` with `m b` outside the subspace, if any.
    pub fn invariance_witness(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.basis.iter().find(|b| !self.contains(&m.mul_vec(b))).cloned()
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.invariance_witness(m).is_none()
    }

    /// Every vector of the subspace is fixed by `m`.
    pub fn is_fixed_pointwise_by(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|b| &m.mul_vec(b) == b)
    }

    /// Whether `self` and `other` are complementary (`self ⊕ other = Q^n`).
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.ambient && self.intersect(other).dim() == 0
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|b| b.iter().map(format_rational).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat_vec;

    #[test]
    fn canonical_bases_compare_equal() {
        let a = Subspace::span(3, &[rat_vec(&[1, 1, 0]), rat_vec(&[0, 1, 0])]);
        let b = Subspace::span(3, &[rat_vec(&[2, 0, 0]), rat_vec(&[3, 5, 0]), rat_vec(&[1, 0, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::span(3, &[rat_vec(&[1, 0, 0]), rat_vec(&[0, 1, 0])]);
        let yz = Subspace::span(3, &[rat_vec(&[0, 1, 0]), rat_vec(&[0, 0, 1])]);
        assert_eq!(xy.intersect(&yz), Subspace::span(3, &[rat_vec(&[0, 1, 0])]));
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert_eq!(Subspace::zero(3).intersect(&xy), Subspace::zero(3));
    }

    #[test]
    fn membership() {
        let d = Subspace::span(2, &[rat_vec(&[1, 1])]);
        assert!(d.contains(&rat_vec(&[-3, -3])));
        assert!(!d.contains(&rat_vec(&[1, 0])));
        assert!(d.contains(&rat_vec(&[0, 0])));
    }

    #[test]
    fn invariance() {
        let d = Subspace::span(2, &[rat_vec(&[1, 1])]);
        let refl = Matrix::from_i64(&[&[-1, 0], &[0, 1]]);
        assert_eq!(d.invariance_witness(&refl), Some(rat_vec(&[1, 1])));
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(d.is_invariant_under(&swap));
        assert!(d.is_fixed_pointwise_by(&swap));
    }
}
