use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charts::LocalChart;
use crate::groups::{find_invariant_subspace, GroupHom, InvariantOutcome, InvariantSearch, Subgroup};
use crate::ratlin::{rat, Matrix, MultiPoly, Rational};

use super::MapGerm;

const WITNESS_SEED: u64 = 0x0b57;
const WITNESS_TRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Possible,
    Impossible,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Possible => "possible",
            Verdict::Impossible => "impossible",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Equal dimensions and a nontrivial kernel: `N` would have to act
    /// faithfully on the zero space.
    EqualDimNontrivialKernel { n: Subgroup },
    /// No invariant subspace of the dimension the kernel must have.
    NoInvariantSubspace { dim: usize },
    /// Fewer source than target dimensions, so no differential is onto.
    SourceTooSmall,
    /// The only equivariant linear map is zero.
    NoEquivariantMap,
    /// An equivariant linear surjection; as a lift it is regular at 0.
    LinearWitness { map: Matrix },
    Inconclusive,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::EqualDimNontrivialKernel { .. } => "a",
            Reason::NoInvariantSubspace { .. } => "b",
            Reason::SourceTooSmall => "dimension",
            Reason::NoEquivariantMap => "no-equivariant-map",
            Reason::LinearWitness { .. } => "witness",
            Reason::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub verdict: Verdict,
    pub reason: Reason,
    pub invariant_search: Option<InvariantSearch>,
}

impl ObstructionCertificate {
    /// The witness as a germ, for "possible" verdicts.
    pub fn witness_germ(&self, source: &LocalChart, target: &LocalChart, theta: &GroupHom) -> Option<MapGerm> {
        match &self.reason {
            Reason::LinearWitness { map } => {
                super::build_germ(source, target, MultiPoly::linear(map), theta.clone(), None).ok()
            }
            _ => None,
        }
    }
}

/// Basis of `{L : L g = theta(g) L for all generators g}`, `L` of shape
/// `target dim x source dim`.
pub fn equivariant_linear_maps(source: &LocalChart, target: &LocalChart, theta: &GroupHom) -> Vec<Matrix> {
    let (n, k) = (source.dim(), target.dim());
    let g = source.group();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &gen in g.generators() {
        let gm = g.element(gen);
        let tm = theta.apply_matrix(gen);
        for a in 0..k {
            for b in 0..n {
                let mut eq = vec![rat(0); k * n];
                for c in 0..n {
                    eq[a * n + c] += gm.get(c, b);
                }
                for c in 0..k {
                    eq[c * n + b] -= tm.get(a, c);
                }
                rows.push(eq);
            }
        }
    }
    if k * n == 0 {
        return Vec::new();
    }
    let sys = Matrix::from_rows(rows, k * n).expect("row length k*n");
    sys.kernel().basis().iter().map(|v| Matrix::new(k, n, v.clone()).expect("k*n entries")).collect()
}

/// Decides whether the chart center can be a regular value of a germ with
/// homomorphism `theta` mapping center to center.
///
/// The differential of any such germ at the center is an equivariant linear
/// map, so "possible" is only issued with such a map of full rank in hand.
pub fn obstruction_certificate(source: &LocalChart, target: &LocalChart, theta: &GroupHom) -> ObstructionCertificate {
    let (n, k) = (source.dim(), target.dim());
    let kernel = theta.kernel();
    let done = |verdict, reason, search| ObstructionCertificate { verdict, reason, invariant_search: search };
    if n < k {
        return done(Verdict::Impossible, Reason::SourceTooSmall, None);
    }
    if n == k && !kernel.is_trivial() {
        return done(Verdict::Impossible, Reason::EqualDimNontrivialKernel { n: kernel }, None);
    }
    let mut search = None;
    if n > k && k > 0 {
        let s = find_invariant_subspace(source.group(), n - k);
        if s.outcome == InvariantOutcome::CertifiedNone {
            return done(Verdict::Impossible, Reason::NoInvariantSubspace { dim: n - k }, Some(s));
        }
        search = Some(s);
    }
    let maps = equivariant_linear_maps(source, target, theta);
    if k > 0 && maps.is_empty() {
        return done(Verdict::Impossible, Reason::NoEquivariantMap, search);
    }
    if let Some(map) = full_rank_combination(&maps, k, n) {
        return done(Verdict::Possible, Reason::LinearWitness { map }, search);
    }
    done(Verdict::Unknown, Reason::Inconclusive, search)
}

fn full_rank_combination(maps: &[Matrix], k: usize, n: usize) -> Option<Matrix> {
    if k == 0 {
        return Some(Matrix::zeros(0, n));
    }
    if let Some(m) = maps.iter().find(|m| m.rank() == k) {
        return Some(m.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    for _ in 0..WITNESS_TRIES {
        let m = maps.iter().fold(Matrix::zeros(k, n), |acc, b| &acc + &b.scale(&rat(rng.gen_range(-5..=5))));
        if m.rank() == k {
            return Some(m);
        }
    }
    None
}
