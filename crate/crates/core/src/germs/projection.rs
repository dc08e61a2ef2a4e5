use crate::groups::{FiniteMatrixGroup, Subgroup};
use crate::ratlin::{ratio, Matrix, Subspace};

use super::MapGerm;

/// The averaged projection built from `N = ker theta`:
/// `A_g = g - I`, `A = (1/|N|) Σ A_g`, `A_x = -A`.
#[derive(Clone, Debug)]
pub struct InvariantProjection {
    pub n: Subgroup,
    /// `(element index, A_g)` for every `g` in `N`, identity first.
    pub a_gamma: Vec<(usize, Matrix)>,
    pub average: Matrix,
    pub projection: Matrix,
    pub kernel: Subspace,
    pub image: Subspace,
    /// Kernel of the differential at the germ's base point.
    pub k: Subspace,
    group_elements: Vec<Matrix>,
    table: Vec<Vec<usize>>,
}

pub fn invariant_projection(germ: &MapGerm) -> InvariantProjection {
    let group = germ.source().group();
    let n = germ.theta().kernel();
    let k = germ.kernel_at(germ.base_point()).expect("base point has the right arity");
    projection_for(group, &n, k)
}

/// The same construction for an arbitrary subgroup, with `k` supplied.
pub fn projection_for(group: &FiniteMatrixGroup, n: &Subgroup, k: Subspace) -> InvariantProjection {
    let d = group.dim();
    let id = Matrix::identity(d);
    let a_gamma: Vec<(usize, Matrix)> = n.members().iter().map(|&g| (g, group.element(g) - &id)).collect();
    let sum = a_gamma.iter().fold(Matrix::zeros(d, d), |acc, (_, a)| &acc + a);
    let average = sum.scale(&ratio(1, n.order() as i64));
    let projection = -&average;
    let (kernel, image, _) = projection.kernel_image_rank();
    let table = n.members().iter().map(|&a| n.members().iter().map(|&b| group.mul(a, b)).collect()).collect();
    InvariantProjection {
        n: n.clone(),
        a_gamma,
        average,
        projection,
        kernel,
        image,
        k,
        group_elements: group.elements().to_vec(),
        table,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionChecks {
    pub idempotent: bool,
    pub commutes_with_n: bool,
    pub image_in_k: bool,
    /// Every `g - I` with `g` in `N` maps into `K`.
    pub a_gamma_into_k: bool,
    pub kernel_fixed_by_n: bool,
    pub direct_sum: bool,
}

impl ProjectionChecks {
    pub fn all(&self) -> bool {
        self.idempotent
            && self.commutes_with_n
            && self.image_in_k
            && self.a_gamma_into_k
            && self.kernel_fixed_by_n
            && self.direct_sum
    }
}

impl InvariantProjection {
    fn a_of(&self, element: usize) -> &Matrix {
        &self.a_gamma.iter().find(|(g, _)| *g == element).expect("element of N").1
    }

    pub fn check(&self) -> ProjectionChecks {
        let p = &self.projection;
        let n_mats = || self.n.members().iter().map(|&g| &self.group_elements[g]);
        ProjectionChecks {
            idempotent: &(p * p) == p,
            commutes_with_n: n_mats().all(|g| &(g * p) == &(p * g)),
            image_in_k: self.image.is_subspace_of(&self.k),
            a_gamma_into_k: self.a_gamma.iter().all(|(_, a)| a.image().is_subspace_of(&self.k)),
            kernel_fixed_by_n: self.kernel.basis().iter().all(|v| n_mats().all(|g| g.mul_vec(v) == *v)),
            direct_sum: self.kernel.is_complement_of(&self.image),
        }
    }
}

/// Failures of `A_{gd} = A_g + g A_d = A_d + A_g d = A_d + A_g + A_g A_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub pairs_checked: usize,
    /// `(g, d, which)`: `which` is 1, 2 or 3 for the three right-hand sides.
    pub failures: Vec<(usize, usize, u8)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cocycle_identities(proj: &InvariantProjection) -> CocycleReport {
    let members = proj.n.members();
    let mut failures = Vec::new();
    for (i, &g) in members.iter().enumerate() {
        for (j, &d) in members.iter().enumerate() {
            let gd = proj.table[i][j];
            let lhs = proj.a_of(gd);
            let (ag, ad) = (proj.a_of(g), proj.a_of(d));
            let gm = &proj.group_elements[g];
            let dm = &proj.group_elements[d];
            let rhs = [&(ag + &(gm * ad)), &(ad + &(ag * dm)), &(&(ad + ag) + &(ag * ad))];
            for (w, r) in rhs.iter().enumerate() {
                if lhs != *r {
                    failures.push((g, d, w as u8 + 1));
                }
            }
        }
    }
    CocycleReport { pairs_checked: members.len() * members.len(), failures }
}
