use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ratlin::{rat, snap_f64, to_f64, Rational, UniPoly};

use super::{is_regular_value, GermError, MapGerm};

/// Sampled targets are snapped to rationals with this denominator.
pub const SNAP_DENOMINATOR: i64 = 1_000_000;
const CHUNK: usize = 1024;

/// Exact preimages for selected target points, for lifts the sampler cannot
/// solve itself.
#[derive(Clone, Debug, Default)]
pub struct PreimageTable {
    pub entries: Vec<(Vec<Rational>, Vec<Vec<Rational>>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SardReport {
    pub samples: usize,
    pub regular: usize,
    pub critical: usize,
    /// Table mode only: samples with no table entry, left out of the fraction.
    pub unresolved: usize,
    pub regular_fraction: f64,
    pub critical_values: Vec<Vec<Rational>>,
    pub seed: u64,
}

/// One output coordinate `f_i(x_v)` depending on a single variable.
struct Coordinate {
    var: Option<usize>,
    poly: UniPoly,
}

enum Solver {
    Univariate(Vec<Coordinate>),
    Table(PreimageTable),
}

fn univariate_shape(germ: &MapGerm) -> Option<Vec<Coordinate>> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for p in germ.lift().coords() {
        let vars = p.variables();
        match vars.as_slice() {
            [] => out.push(Coordinate { var: None, poly: constant_of(p) }),
            [v] => {
                if !used.insert(*v) {
                    return None;
                }
                out.push(Coordinate { var: Some(*v), poly: p.as_univariate(*v)? });
            }
            _ => return None,
        }
    }
    Some(out)
}

fn constant_of(p: &crate::ratlin::Poly) -> UniPoly {
    UniPoly::constant(p.eval(&vec![rat(0); p.nvars()]))
}

fn count_in_domain(q: &UniPoly, nonneg: bool) -> usize {
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    if nonneg {
        let b = q.root_bound();
        q.count_real_roots_in(&rat(0), &b) + usize::from(q.eval(&rat(0)).is_zero())
    } else {
        q.count_real_roots()
    }
}

/// Whether `h` has a root in the variable's domain that is also a root of
/// `h'`. The zero polynomial counts as critical everywhere.
fn has_critical_root(h: &UniPoly, nonneg: bool) -> bool {
    if h.is_zero() {
        return true;
    }
    let g = h.gcd(&h.derivative());
    count_in_domain(&g, nonneg) > 0
}

fn has_root(h: &UniPoly, nonneg: bool) -> bool {
    h.is_zero() || count_in_domain(h, nonneg) > 0
}

fn classify_univariate(coords: &[Coordinate], p: &[Rational], nvars: usize, boundary: bool) -> bool {
    let hs: Vec<(UniPoly, bool)> = coords
        .iter()
        .zip(p)
        .map(|(c, pi)| (c.poly.sub(&UniPoly::constant(pi.clone())), boundary && c.var == Some(nvars - 1)))
        .collect();
    // Critical needs a nonempty preimage and a repeated root in some
    // coordinate; the cheap gcd test usually settles it first.
    if !hs.iter().any(|(h, nn)| has_critical_root(h, *nn)) {
        return true;
    }
    !hs.iter().all(|(h, nn)| has_root(h, *nn))
}

/// Monte Carlo estimate of the regular-value fraction over a box of target
/// points. Deterministic for a given seed: chunk `i` draws from the ChaCha
/// stream `i` and chunks are merged in order.
pub fn sard_sample(
    germ: &MapGerm,
    boxes: &[(Rational, Rational)],
    samples: usize,
    seed: u64,
    table: Option<&PreimageTable>,
) -> Result<SardReport, GermError> {
    let k = germ.target().dim();
    if boxes.len() != k {
        return Err(GermError::Dimension { expected: k, got: boxes.len(), what: "sampling box".into() });
    }
    if let Some((lo, hi)) = boxes.iter().find(|(lo, hi)| lo > hi) {
        return Err(GermError::BadBox { lo: lo.clone(), hi: hi.clone() });
    }
    let solver = match (univariate_shape(germ), table) {
        (Some(c), _) => Solver::Univariate(c),
        (None, Some(t)) => Solver::Table(t.clone()),
        (None, None) => {
            return Err(GermError::UnsupportedLift(
                "each output coordinate must depend on at most one variable, distinct across coordinates; \
                 otherwise supply a preimage table"
                    .into(),
            ))
        }
    };
    let bounds: Vec<(f64, f64)> = boxes.iter().map(|(lo, hi)| (to_f64(lo), to_f64(hi))).collect();
    let nvars = germ.source().dim();
    let boundary = germ.source().has_boundary();
    let chunks = samples.div_ceil(CHUNK);
    let classify = |p: &[Rational]| -> Option<bool> {
        match &solver {
            Solver::Univariate(c) => Some(classify_univariate(c, p, nvars, boundary)),
            Solver::Table(t) => t
                .entries
                .iter()
                .find(|(q, _)| q.as_slice() == p)
                .and_then(|(_, pts)| is_regular_value(germ, p, pts).ok())
                .map(|r| r.regular),
        }
    };
    let parts: Vec<(usize, usize, usize, BTreeSet<Vec<Rational>>)> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(ci as u64);
            let count = CHUNK.min(samples - ci * CHUNK);
            let (mut reg, mut crit, mut unres) = (0, 0, 0);
            let mut values = BTreeSet::new();
            for _ in 0..count {
                let p: Vec<Rational> = bounds
                    .iter()
                    .map(|&(lo, hi)| snap_f64(lo + rng.gen::<f64>() * (hi - lo), SNAP_DENOMINATOR))
                    .collect();
                match classify(&p) {
                    Some(true) => reg += 1,
                    Some(false) => {
                        crit += 1;
                        values.insert(p);
                    }
                    None => unres += 1,
                }
            }
            (reg, crit, unres, values)
        })
        .collect();
    let mut report = SardReport {
        samples,
        regular: 0,
        critical: 0,
        unresolved: 0,
        regular_fraction: 1.0,
        critical_values: Vec::new(),
        seed,
    };
    let mut values = BTreeSet::new();
    for (r, c, u, v) in parts {
        report.regular += r;
        report.critical += c;
        report.unresolved += u;
        values.extend(v);
    }
    let resolved = report.regular + report.critical;
    if resolved > 0 {
        report.regular_fraction = report.regular as f64 / resolved as f64;
    }
    report.critical_values = values.into_iter().collect();
    Ok(report)
}

/// Exact classification of a single target point for a univariate-shaped
/// lift; `None` when the lift shape is unsupported.
pub fn classify_point(germ: &MapGerm, p: &[Rational]) -> Option<bool> {
    let coords = univariate_shape(germ)?;
    Some(classify_univariate(&coords, p, germ.source().dim(), germ.source().has_boundary()))
}
