use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratlin::{rat, Matrix, Rational, Subspace};

use super::{commutant_of, FiniteMatrixGroup, Subgroup};

pub const DEFAULT_SEARCH_SEED: u64 = 0x5eed_0001;

/// Random commutant combinations tried per node after the basis elements.
const RANDOM_TRIES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantOutcome {
    Found(Subspace),
    /// Proved: no invariant subspace of the requested dimension exists.
    CertifiedNone,
    /// The search was inconclusive.
    NoneFound,
}

/// One summand of the computed decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantLeaf {
    pub subspace: Subspace,
    /// Real-irreducible, decided exactly by the trace form on the commutant.
    /// `false` means reducible over the reals without a rational splitting.
    pub irreducible: bool,
}

#[derive(Clone, Debug)]
pub struct InvariantSearch {
    pub outcome: InvariantOutcome,
    pub dim_wanted: usize,
    pub seed: u64,
    pub commutant_dim: usize,
    pub leaves: Vec<InvariantLeaf>,
}

/// Matrix of `m` restricted to the `m`-invariant subspace `w`, in the
/// coordinates of `w`'s echelon basis.
pub fn restrict_to(m: &Matrix, w: &Subspace) -> Matrix {
    let piv = pivots(w);
    let d = w.dim();
    let mut out = Matrix::zeros(d, d);
    for (j, b) in w.basis().iter().enumerate() {
        let img = m.mul_vec(b);
        for (i, &p) in piv.iter().enumerate() {
            out.set(i, j, img[p].clone());
        }
    }
    out
}

fn pivots(w: &Subspace) -> Vec<usize> {
    w.basis()
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero"))
        .collect()
}

/// Number of positive entries in a diagonalization of the symmetric
/// matrix `gram` by congruence.
pub fn positive_inertia(gram: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = gram.to_vec();
    let mut positive = 0;
    loop {
        let n = a.len();
        if n == 0 {
            return positive;
        }
        let pivot = match (0..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    return positive;
                };
                // Row and column i += row and column j puts 2 a_ij on the diagonal.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            positive += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != pivot).collect();
        a = rest
            .iter()
            .map(|&r| rest.iter().map(|&c| &a[r][c] - &a[r][pivot] * &a[pivot][c] / &p).collect())
            .collect();
    }
}

struct Node {
    /// Columns are this piece's basis in ambient coordinates.
    embed: Matrix,
    elements: Vec<Matrix>,
    generators: Vec<Matrix>,
}

impl Node {
    fn dim(&self) -> usize {
        self.embed.cols()
    }

    fn child(&self, w: &Subspace) -> Node {
        let basis = Matrix::from_columns(self.dim(), w.basis());
        Node {
            embed: &self.embed * &basis,
            elements: self.elements.iter().map(|m| restrict_to(m, w)).collect(),
            generators: self.generators.iter().map(|m| restrict_to(m, w)).collect(),
        }
    }

    fn ambient(&self) -> Subspace {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|j| self.embed.column(j)).collect();
        Subspace::span(self.embed.rows(), &cols)
    }
}

fn trace_form_inertia(comm: &[Matrix]) -> usize {
    let gram: Vec<Vec<Rational>> =
        comm.iter().map(|a| comm.iter().map(|b| (a * b).trace()).collect()).collect();
    positive_inertia(&gram)
}

/// Invariant complement of `w` obtained by averaging a projection onto `w`
/// over the group.
fn invariant_complement(node: &Node, w: &Subspace) -> Subspace {
    let d = node.dim();
    let piv = pivots(w);
    let mut proj = Matrix::zeros(d, d);
    for (b, &p) in w.basis().iter().zip(&piv) {
        for r in 0..d {
            proj.set(r, p, b[r].clone());
        }
    }
    let mut avg = Matrix::zeros(d, d);
    for g in &node.elements {
        let ginv = g.inverse().expect("group elements are invertible");
        avg = &avg + &(&(g * &proj) * &ginv);
    }
    avg.kernel()
}

fn try_split(node: &Node, c: &Matrix) -> Option<Vec<Subspace>> {
    let factors = c.charpoly_factor().expect("commutant elements are square");
    if factors.len() >= 2 {
        return Some(factors.iter().map(|(q, m)| c.eval_poly(&q.pow(*m)).kernel()).collect());
    }
    let (q, m) = &factors[0];
    if *m < 2 {
        return None;
    }
    let qc = c.eval_poly(q);
    if qc.is_zero() {
        return None;
    }
    let w = qc.kernel();
    let comp = invariant_complement(node, &w);
    Some(vec![w, comp])
}

fn split_node(node: Node, rng: &mut ChaCha8Rng, leaves: &mut Vec<InvariantLeaf>) {
    let d = node.dim();
    let comm = commutant_of(d, &node.generators);
    if comm.len() == 1 || trace_form_inertia(&comm) == 1 {
        leaves.push(InvariantLeaf { subspace: node.ambient(), irreducible: true });
        return;
    }
    let mut candidates: Vec<Matrix> = comm.iter().filter(|c| !c.is_scalar()).cloned().collect();
    for _ in 0..RANDOM_TRIES {
        let mut acc = Matrix::zeros(d, d);
        for c in &comm {
            let k: i64 = rng.gen_range(-3..=3);
            acc = &acc + &c.scale(&rat(k));
        }
        if !acc.is_scalar() {
            candidates.push(acc);
        }
    }
    for c in &candidates {
        if let Some(parts) = try_split(&node, c) {
            for w in parts {
                split_node(node.child(&w), rng, leaves);
            }
            return;
        }
    }
    leaves.push(InvariantLeaf { subspace: node.ambient(), irreducible: false });
}

/// Splits the representation into invariant summands, recursively using
/// elements of the commutant. Leaves are sorted by echelon pivots.
pub fn decompose(g: &FiniteMatrixGroup, seed: u64) -> Vec<InvariantLeaf> {
    let n = g.dim();
    if n == 0 {
        return Vec::new();
    }
    let root = Node {
        embed: Matrix::identity(n),
        elements: g.elements().to_vec(),
        generators: g.generator_matrices(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    split_node(root, &mut rng, &mut leaves);
    leaves.sort_by(|a, b| {
        pivots(&a.subspace).cmp(&pivots(&b.subspace)).then_with(|| a.subspace.basis().cmp(b.subspace.basis()))
    });
    leaves
}

/// Indices of leaves whose dimensions sum to `target`, preferring earlier
/// leaves.
fn subset_with_sum(dims: &[usize], target: usize) -> Option<Vec<usize>> {
    // reach[i][t]: can leaves i.. sum to t
    let k = dims.len();
    let mut reach = vec![vec![false; target + 1]; k + 1];
    reach[k][0] = true;
    for i in (0..k).rev() {
        for t in 0..=target {
            reach[i][t] = reach[i + 1][t] || (dims[i] <= t && reach[i + 1][t - dims[i]]);
        }
    }
    if !reach[0][target] {
        return None;
    }
    let mut chosen = Vec::new();
    let mut t = target;
    for i in 0..k {
        if dims[i] <= t && reach[i + 1][t - dims[i]] {
            chosen.push(i);
            t -= dims[i];
        }
    }
    Some(chosen)
}

pub fn find_invariant_subspace(g: &FiniteMatrixGroup, dim_wanted: usize) -> InvariantSearch {
    find_invariant_subspace_seeded(g, dim_wanted, DEFAULT_SEARCH_SEED)
}

/// Searches for a `g`-invariant subspace of dimension `dim_wanted`.
///
/// "Certified none" is issued only when every summand of the decomposition
/// is proved real-irreducible and no sub-multiset of their dimensions adds
/// up to `dim_wanted`.
pub fn find_invariant_subspace_seeded(g: &FiniteMatrixGroup, dim_wanted: usize, seed: u64) -> InvariantSearch {
    let n = g.dim();
    let commutant_dim = g.commutant().len();
    if dim_wanted == 0 || dim_wanted >= n {
        let outcome = match dim_wanted.cmp(&n) {
            std::cmp::Ordering::Greater => InvariantOutcome::CertifiedNone,
            std::cmp::Ordering::Equal => InvariantOutcome::Found(Subspace::full(n)),
            std::cmp::Ordering::Less => InvariantOutcome::Found(Subspace::zero(n)),
        };
        return InvariantSearch { outcome, dim_wanted, seed, commutant_dim, leaves: Vec::new() };
    }
    let leaves = decompose(g, seed);
    let dims: Vec<usize> = leaves.iter().map(|l| l.subspace.dim()).collect();
    let outcome = match subset_with_sum(&dims, dim_wanted) {
        Some(idx) => {
            let s = idx.iter().fold(Subspace::zero(n), |acc, &i| acc.sum(&leaves[i].subspace));
            assert!(
                g.generator_matrices().iter().all(|m| s.is_invariant_under(m)),
                "assembled subspace must be invariant"
            );
            InvariantOutcome::Found(s)
        }
        None if leaves.iter().all(|l| l.irreducible) => InvariantOutcome::CertifiedNone,
        None => InvariantOutcome::NoneFound,
    };
    InvariantSearch { outcome, dim_wanted, seed, commutant_dim, leaves }
}

/// All subgroups of index 2, as kernels of surjections onto Z2.
pub fn index2_subgroups(g: &FiniteMatrixGroup) -> Vec<Subgroup> {
    let gens = g.irredundant_generators();
    let r = gens.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << r) {
        let signs: Vec<bool> = (0..r).map(|i| mask >> i & 1 == 1).collect();
        if let Some(members) = sign_kernel(g, &gens, &signs) {
            out.push(g.subgroup(&members).expect("kernels are subgroups"));
        }
    }
    out.sort_by(|a, b| a.members().cmp(b.members()));
    out
}

/// Kernel of the map to Z2 sending `gens[i]` to `signs[i]`, if it is a
/// well-defined homomorphism.
fn sign_kernel(g: &FiniteMatrixGroup, gens: &[usize], signs: &[bool]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut sign: Vec<Option<bool>> = vec![None; n];
    sign[0] = Some(false);
    let mut frontier = vec![0usize];
    while let Some(a) = frontier.pop() {
        let sa = sign[a].expect("visited");
        for (&x, &s) in gens.iter().zip(signs) {
            let b = g.mul(a, x);
            match sign[b] {
                None => {
                    sign[b] = Some(sa ^ s);
                    frontier.push(b);
                }
                Some(sb) if sb != sa ^ s => return None,
                Some(_) => {}
            }
        }
    }
    // f(a x) = f(a) f(x) for every element a and generator x suffices.
    Some((0..n).filter(|&a| sign[a] == Some(false)).collect())
}
