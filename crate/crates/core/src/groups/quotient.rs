use super::{FiniteMatrixGroup, GroupError, Subgroup};

/// `over / normal` for subgroups `normal ⊴ over` of one parent group.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    over: Subgroup,
    normal: Subgroup,
    /// Cosets as sorted parent indices; coset 0 is `normal` itself.
    cosets: Vec<Vec<usize>>,
    /// Parent index -> coset number (`usize::MAX` outside `over`).
    coset_of: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl QuotientGroup {
    pub fn new(parent: &FiniteMatrixGroup, over: &Subgroup, normal: &Subgroup) -> Result<Self, GroupError> {
        if !normal.is_subset_of(over) {
            return Err(GroupError::NotASubgroup("normal part is not inside the quotiented group".into()));
        }
        for &g in over.members() {
            for &x in normal.members() {
                if !normal.contains(parent.conjugate(g, x)) {
                    return Err(GroupError::NotNormal { g, x });
                }
            }
        }
        let mut coset_of = vec![usize::MAX; parent.order()];
        let mut cosets = Vec::new();
        for &g in over.members() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = cosets.len();
            let mut members: Vec<usize> = normal.members().iter().map(|&n| parent.mul(g, n)).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = c;
            }
            cosets.push(members);
        }
        // Coset products are well defined because `normal` is normal.
        let table = cosets
            .iter()
            .map(|a| cosets.iter().map(|b| coset_of[parent.mul(a[0], b[0])]).collect())
            .collect();
        Ok(Self { over: over.clone(), normal: normal.clone(), cosets, coset_of, table })
    }

    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, g: usize) -> Option<usize> {
        self.coset_of.get(g).copied().filter(|&c| c != usize::MAX)
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn over(&self) -> &Subgroup {
        &self.over
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

/// `parent / n`.
pub fn quotient(parent: &FiniteMatrixGroup, n: &Subgroup) -> Result<QuotientGroup, GroupError> {
    QuotientGroup::new(parent, &parent.whole(), n)
}
