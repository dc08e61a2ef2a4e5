use std::collections::{HashMap, VecDeque};

use crate::ratlin::{Matrix, Subspace};

use super::GroupError;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// A finite group of invertible rational matrices.
///
/// Elements are stored in breadth-first discovery order from the identity
/// (index 0), multiplying on the right by the generators in the order given.
/// Each element remembers the word that reached it, so products are
/// computed by walking words through the generator table instead of
/// multiplying matrices.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    generators: Vec<usize>,
    /// `right_gen[k][j]` = index of `elements[k] * generator_j`.
    right_gen: Vec<Vec<usize>>,
    /// `elements[k] = elements[p] * generator_j` for `words[k] = Some((p, j))`.
    words: Vec<Option<(usize, usize)>>,
    inverses: Vec<usize>,
}

impl FiniteMatrixGroup {
    pub fn generate(dim: usize, generators: &[Matrix]) -> Result<Self, GroupError> {
        Self::generate_bounded(dim, generators, DEFAULT_ORDER_BOUND)
    }

    /// Closure of `generators` under multiplication; aborts once more than
    /// `bound` elements have been found.
    pub fn generate_bounded(dim: usize, generators: &[Matrix], bound: usize) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::GeneratorShape { index: i, dim, rows: g.rows(), cols: g.cols() });
            }
            if !g.is_invertible() {
                return Err(GroupError::NotInvertible { index: i });
            }
        }
        let id = Matrix::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut words = vec![None];
        let mut right_gen: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (j, g) in generators.iter().enumerate() {
                let m = &elements[k] * g;
                let idx = match index.get(&m) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= bound {
                            return Err(GroupError::OrderBoundExceeded { bound });
                        }
                        let i = elements.len();
                        index.insert(m.clone(), i);
                        elements.push(m);
                        words.push(Some((k, j)));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx);
            }
            if right_gen.len() <= k {
                right_gen.resize(k + 1, Vec::new());
            }
            right_gen[k] = row;
        }
        let generators_idx = generators.iter().map(|g| index[g]).collect();
        let inverses = elements
            .iter()
            .map(|e| {
                let inv = e.inverse().expect("group elements are invertible");
                index[&inv]
            })
            .collect();
        Ok(Self { dim, elements, index, generators: generators_idx, right_gen, words, inverses })
    }

    /// Group from an element list already known to be closed, e.g. the
    /// members of a subgroup. Element order is preserved, except that the
    /// identity is moved to the front. The list is used as the generating set.
    pub fn from_closed_elements(dim: usize, elements: &[Matrix]) -> Result<Self, GroupError> {
        let g = Self::generate(dim, elements)?;
        if g.order() != elements.len() {
            return Err(GroupError::NotClosed);
        }
        // Re-index to follow the caller's order (identity first).
        let id = Matrix::identity(dim);
        let mut order: Vec<Matrix> = vec![id.clone()];
        order.extend(elements.iter().filter(|m| **m != id).cloned());
        Ok(g.reindexed(&order))
    }

    fn reindexed(&self, order: &[Matrix]) -> Self {
        let perm: Vec<usize> = order.iter().map(|m| self.index[m]).collect();
        let mut inv_perm = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv_perm[old] = new;
        }
        let elements = order.to_vec();
        let index = elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let right_gen = perm.iter().map(|&old| self.right_gen[old].iter().map(|&x| inv_perm[x]).collect()).collect();
        let words = perm.iter().map(|&old| self.words[old].map(|(p, j)| (inv_perm[p], j))).collect();
        let inverses = perm.iter().map(|&old| inv_perm[self.inverses[old]]).collect();
        let generators = self.generators.iter().map(|&g| inv_perm[g]).collect();
        Self { dim: self.dim, elements, index, generators, right_gen, words, inverses }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Generator positions `j_1, ..., j_r` with `element(a) = g_{j_1} ... g_{j_r}`.
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, j)) = self.words[a] {
            w.push(j);
            a = p;
        }
        w.reverse();
        w
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.word(b).into_iter().fold(a, |acc, j| self.right_gen[acc][j])
    }

    /// Full multiplication table, `table[a][b] = a * b`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Validates a member list as a subgroup (closure and identity).
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup, GroupError> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        if let Some(&bad) = m.iter().find(|&&x| x >= self.order()) {
            return Err(GroupError::NotASubgroup(format!("index {bad} out of range")));
        }
        let s = Subgroup { members: m };
        for &a in &s.members {
            for &b in &s.members {
                if !s.contains(self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("product of elements {a} and {b} escapes")));
                }
            }
        }
        Ok(s)
    }

    /// Smallest subgroup containing the given elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![0usize];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                let m = self.mul(a, g);
                if !seen[m] {
                    seen[m] = true;
                    members.push(m);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// Greedy irredundant generating set drawn from the stored generators.
    pub fn irredundant_generators(&self) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut h = self.trivial_subgroup();
        for g in self.generators.iter().copied().chain(0..self.order()) {
            if h.order() == self.order() {
                break;
            }
            if !h.contains(g) {
                chosen.push(g);
                h = self.generated_subgroup(&chosen);
            }
        }
        chosen
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.normality_witness(n).is_none()
    }

    /// `(g, x)` with `x` in `n` and `g x g^-1` outside, if any.
    pub fn normality_witness(&self, n: &Subgroup) -> Option<(usize, usize)> {
        for g in 0..self.order() {
            for &x in &n.members {
                if !n.contains(self.conjugate(g, x)) {
                    return Some((g, x));
                }
            }
        }
        None
    }

    /// Members of `sub` as their own matrix group, listed in `sub`'s order.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> FiniteMatrixGroup {
        let mats: Vec<Matrix> = sub.members.iter().map(|&i| self.elements[i].clone()).collect();
        FiniteMatrixGroup::from_closed_elements(self.dim, &mats).expect("subgroups are closed")
    }

    /// `{v : g v = v for all g in h}`.
    pub fn fixed_subspace(&self, h: &Subgroup) -> Subspace {
        let id = Matrix::identity(self.dim);
        let stacked = h
            .members
            .iter()
            .filter(|&&g| g != 0)
            .fold(Matrix::zeros(0, self.dim), |acc, &g| acc.vstack(&(&self.elements[g] - &id)));
        stacked.kernel()
    }

    /// Pointwise stabilizer `{g : g v = v for all v in w}`.
    pub fn pointwise_stabilizer(&self, w: &Subspace) -> Subgroup {
        Subgroup {
            members: (0..self.order()).filter(|&g| w.is_fixed_pointwise_by(&self.elements[g])).collect(),
        }
    }

    /// Basis of the commutant `{M : M g = g M for all g}`.
    pub fn commutant(&self) -> Vec<Matrix> {
        commutant_of(self.dim, &self.generator_matrices())
    }
}

/// Commutant basis of the algebra generated by `mats` (all `n x n`).
pub fn commutant_of(n: usize, mats: &[Matrix]) -> Vec<Matrix> {
    use crate::ratlin::Rational;
    use num_traits::Zero;
    // Unknown X flattened row-major; (X g - g X)_{ab} = 0 for each generator.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in mats {
        for a in 0..n {
            for b in 0..n {
                let mut eq = vec![Rational::zero(); n * n];
                for k in 0..n {
                    eq[a * n + k] += g.get(k, b);
                    eq[k * n + b] -= g.get(a, k);
                }
                rows.push(eq);
            }
        }
    }
    let sys = Matrix::from_rows(rows, n * n).expect("commutation system shape");
    sys.kernel()
        .basis()
        .iter()
        .map(|v| Matrix::new(n, n, v.clone()).expect("n*n entries"))
        .collect()
}

/// Subgroup of an implicit parent group: sorted member indices, identity
/// (index 0) always present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.iter().copied().filter(|&m| other.contains(m)).collect() }
    }
}
