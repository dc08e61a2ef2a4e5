use std::sync::Arc;

use crate::ratlin::Matrix;

use super::{FiniteMatrixGroup, GroupError, Subgroup};

/// A verified homomorphism between finite matrix groups, stored as an
/// element-index map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteMatrixGroup>,
    target: Arc<FiniteMatrixGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    /// Extends `images` (target indices, one per source generator) to the
    /// whole source group and checks `f(ab) = f(a) f(b)` for every pair.
    pub fn from_generator_images(
        source: Arc<FiniteMatrixGroup>,
        target: Arc<FiniteMatrixGroup>,
        images: &[usize],
    ) -> Result<Self, GroupError> {
        let gens = source.generators().to_vec();
        Self::extend(source, target, &gens, images)
    }

    /// Same as [`GroupHom::from_generator_images`] with images given as
    /// matrices, matched to target elements by exact equality.
    pub fn from_generator_matrices(
        source: Arc<FiniteMatrixGroup>,
        target: Arc<FiniteMatrixGroup>,
        images: &[Matrix],
    ) -> Result<Self, GroupError> {
        let idx = images
            .iter()
            .enumerate()
            .map(|(i, m)| target.index_of(m).ok_or(GroupError::ImageNotInTarget { generator: i }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generator_images(source, target, &idx)
    }

    /// The homomorphism sending everything to the identity.
    pub fn trivial(source: Arc<FiniteMatrixGroup>, target: Arc<FiniteMatrixGroup>) -> Self {
        let map = vec![0; source.order()];
        Self { source, target, map }
    }

    pub fn identity(group: Arc<FiniteMatrixGroup>) -> Self {
        let map = (0..group.order()).collect();
        Self { source: group.clone(), target: group, map }
    }

    /// Inclusion of a group whose elements all lie in `target`.
    pub fn inclusion(source: Arc<FiniteMatrixGroup>, target: Arc<FiniteMatrixGroup>) -> Result<Self, GroupError> {
        let images: Vec<Matrix> = source.generator_matrices();
        Self::from_generator_matrices(source, target, &images)
    }

    /// Extension along an arbitrary generating list of the source.
    pub fn extend(
        source: Arc<FiniteMatrixGroup>,
        target: Arc<FiniteMatrixGroup>,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self, GroupError> {
        if gens.len() != images.len() {
            return Err(GroupError::ImageCount { expected: gens.len(), got: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(GroupError::NotASubgroup(format!("target index {bad} out of range")));
        }
        let n = source.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(a) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let b = source.mul(a, g);
                let want = target.mul(map[a], img);
                if map[b] == usize::MAX {
                    map[b] = want;
                    frontier.push(b);
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(GroupError::NotASubgroup("generator list does not generate the source".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = source.mul(a, b);
                if map[ab] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn source(&self) -> &Arc<FiniteMatrixGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMatrixGroup> {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn apply_matrix(&self, a: usize) -> &Matrix {
        self.target.element(self.map[a])
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order()).filter(|&a| self.map[a] == 0).collect();
        self.source.subgroup(&members).expect("kernels are subgroups")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `a -> eta f(a) eta^-1` for a target element `eta`.
    pub fn conjugated_by(&self, eta: usize) -> GroupHom {
        let map = self.map.iter().map(|&x| self.target.conjugate(eta, x)).collect();
        GroupHom { source: self.source.clone(), target: self.target.clone(), map }
    }

    /// Target images of the source generators, as matrices.
    pub fn generator_images(&self) -> Vec<Matrix> {
        self.source.generators().iter().map(|&g| self.apply_matrix(g).clone()).collect()
    }
}

/// `{g : hom(g) = identity}`, a normal subgroup of the source.
pub fn kernel_of(hom: &GroupHom) -> Subgroup {
    let k = hom.kernel();
    debug_assert!(hom.source().is_normal(&k));
    k
}
