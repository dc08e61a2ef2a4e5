#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use orbicalc::charts::{build_chart, LocalChart};
use orbicalc::corpus::scenarios;
use orbicalc::germs::{is_regular_value, MapGerm};
use orbicalc::groups::FiniteMatrixGroup;
use orbicalc::ratlin::{factor, Matrix, MultiPoly, Poly, Rational, Subspace};
use orbicalc::report::local_model;
use orbicalc::scenario::germ_scenario;
use serde_json::Value;

pub fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

pub fn diag(d: &[i64]) -> Matrix {
    let rows: Vec<Vec<i64>> =
        (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    m(&refs)
}

pub fn chart(dim: usize, gens: &[Matrix], boundary: bool) -> LocalChart {
    build_chart(dim, gens, boundary).unwrap()
}

pub fn q_line() -> LocalChart {
    chart(1, &[m(&[&[-1]])], false)
}

pub fn q_times_q() -> LocalChart {
    chart(2, &[diag(&[-1, 1]), diag(&[1, -1])], false)
}

pub fn reflection() -> LocalChart {
    chart(2, &[diag(&[1, -1])], false)
}

pub fn pm_plane() -> LocalChart {
    chart(2, &[diag(&[-1, -1])], false)
}

pub fn c3() -> LocalChart {
    chart(2, &[m(&[&[0, -1], &[1, -1]])], false)
}

pub fn line() -> LocalChart {
    LocalChart::trivial(1, false)
}

/// Polynomial map from `(coef, exponents)` terms per output coordinate.
pub fn poly(nvars: usize, coords: &[&[(i64, &[u32])]]) -> MultiPoly {
    let polys = coords
        .iter()
        .map(|terms| Poly::from_terms(nvars, terms.iter().map(|(c, e)| (orbicalc::ratlin::rat(*c), e.to_vec()))))
        .collect();
    MultiPoly::from_polys(nvars, polys)
}

pub fn germ(source: &LocalChart, target: &LocalChart, lift: MultiPoly, theta: &[Matrix]) -> MapGerm {
    MapGerm::new(source, target, lift, theta, None).unwrap()
}

/// A germ scenario of the built-in corpus with the same defaults the
/// `analyze` command applies to `p` and the preimage lifts.
pub struct CorpusGerm {
    pub name: String,
    pub germ: MapGerm,
    pub p: Vec<Rational>,
    pub lifts: Vec<Vec<Rational>>,
    pub regular: bool,
}

pub fn corpus_germ_scenarios() -> Vec<CorpusGerm> {
    let mut out = Vec::new();
    for v in scenarios() {
        if v.get("command").and_then(Value::as_str) != Some("analyze") {
            continue;
        }
        let Ok(s) = germ_scenario(&v) else { continue };
        let Ok(germ) = s.germ() else { continue };
        let base = germ.base_point().to_vec();
        let at_base = germ.lift().eval(&base).unwrap();
        let p = s.p.clone().unwrap_or_else(|| at_base.clone());
        let lifts = s.preimage_lifts.clone().unwrap_or_else(|| if at_base == p { vec![base] } else { Vec::new() });
        let regular = is_regular_value(&germ, &p, &lifts).unwrap().regular;
        out.push(CorpusGerm { name: s.name, germ, p, lifts, regular });
    }
    out
}

/// Germs centered at a point fixed by their source group: every corpus germ
/// whose base point is fixed, plus the local models at the preimage lifts
/// of every regular scenario.
pub fn centered_corpus_germs() -> Vec<(String, MapGerm)> {
    let mut out = Vec::new();
    for c in corpus_germ_scenarios() {
        if c.germ.is_centered_at(c.germ.base_point()) {
            out.push((c.name.clone(), c.germ.clone()));
        }
        if c.regular {
            for x in &c.lifts {
                let (local, _) = local_model(&c.germ, x).unwrap();
                out.push((format!("{} at {}", c.name, fmt(x)), local));
            }
        }
    }
    out
}

pub fn fmt(x: &[Rational]) -> String {
    format!("({})", orbicalc::ratlin::format_vec(x).join(", "))
}

/// All subgroups of order at most `max_order` of the signed permutation
/// matrices in dimension `n`, as sorted element lists.
pub fn signed_permutation_groups(n: usize, max_order: usize) -> Vec<FiniteMatrixGroup> {
    let mut all = Vec::new();
    let perms = permutations(n);
    for p in &perms {
        for signs in 0..(1u32 << n) {
            let mut rows = vec![vec![0i64; n]; n];
            for (i, &j) in p.iter().enumerate() {
                rows[i][j] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            all.push(m(&refs));
        }
    }
    let key = |g: &FiniteMatrixGroup| -> BTreeSet<Vec<String>> {
        g.elements().iter().map(|e| e.to_strings().concat()).collect()
    };
    let mut seen: HashSet<BTreeSet<Vec<String>>> = HashSet::new();
    let mut groups: Vec<FiniteMatrixGroup> = Vec::new();
    let mut frontier: Vec<Vec<Matrix>> = vec![Vec::new()];
    while let Some(gens) = frontier.pop() {
        for x in &all {
            let mut next = gens.clone();
            next.push(x.clone());
            let Ok(g) = FiniteMatrixGroup::generate_bounded(n, &next, max_order) else { continue };
            if seen.insert(key(&g)) {
                groups.push(g.clone());
                frontier.push(g.generator_matrices());
            }
        }
    }
    groups
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Brute-force invariant subspaces: coordinate subspaces and the kernels of
/// `q(g)` for rational irreducible factors `q` of each element's
/// characteristic polynomial, plus pairwise sums and intersections of those,
/// kept when invariant under every element.
pub fn oracle_invariant_subspaces(g: &FiniteMatrixGroup) -> Vec<Subspace> {
    let n = g.dim();
    let mut cands: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, cands: &mut Vec<Subspace>| {
        if !cands.contains(&s) {
            cands.push(s);
        }
    };
    for mask in 0..(1u32 << n) {
        let vs: Vec<Vec<Rational>> =
            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| orbicalc::ratlin::unit_vec(n, i)).collect();
        push(Subspace::span(n, &vs), &mut cands);
    }
    for e in g.elements() {
        for (q, _) in factor(&e.charpoly().unwrap()) {
            push(e.eval_poly(&q).kernel(), &mut cands);
        }
    }
    let base = cands.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i + 1..] {
            push(a.sum(b), &mut cands);
            push(a.intersect(b), &mut cands);
        }
    }
    cands.into_iter().filter(|s| g.elements().iter().all(|e| s.is_invariant_under(e))).collect()
}
