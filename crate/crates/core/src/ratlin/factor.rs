//! Factorization of rational univariate polynomials into monic irreducibles.
//!
//! Squarefree parts are rescaled to monic integer polynomials, factored
//! modulo a small prime with Berlekamp's algorithm, Hensel-lifted past the
//! Mignotte coefficient bound and recombined over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, UniPoly};

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. The leading coefficient of `p` is dropped; the zero and
/// constant polynomials have no factors.
pub fn factor(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ma.cmp(mb))
    });
    out
}

/// Yun's algorithm: `p = prod a_i^i` with the `a_i` squarefree and coprime.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

fn factor_squarefree(s: &UniPoly) -> Vec<UniPoly> {
    let s = s.monic();
    let n = s.degree().unwrap_or(0);
    if n <= 1 {
        return vec![s];
    }
    // s(x) monic rational; F(x) = c^n s(x/c) is monic integral for c the lcm
    // of the coefficient denominators.
    let c = s.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let big: Vec<BigInt> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let v = q * Rational::from_integer(num_traits::pow(c.clone(), n - i));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    factor_monic_integer(&big)
        .into_iter()
        .map(|h| {
            // h(x) | F(x) maps back to c^{-deg h} h(cx) | s(x).
            let d = h.len() - 1;
            let coeffs = h
                .iter()
                .enumerate()
                .map(|(i, hi)| {
                    Rational::from_integer(hi * num_traits::pow(c.clone(), i))
                        / Rational::from_integer(num_traits::pow(c.clone(), d))
                })
                .collect();
            UniPoly::new(coeffs)
        })
        .collect()
}

const PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281,
    283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397,
];

/// Factors a monic squarefree integer polynomial (ascending coefficients).
fn factor_monic_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Among the first few admissible primes take the one with fewest
    // modular factors; fewer factors means cheaper recombination.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = reduce(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if gcd_mod(&fp, &derivative_mod(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp, p);
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("a squarefree polynomial is squarefree modulo some small prime");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Mignotte: integer factors have coefficients bounded by 2^n ||f||_1.
    let norm1 = f.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
    let bound = (norm1 << n) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut lifted: Vec<Vec<BigInt>> =
        modular.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let bezout = bezout_cofactors(&modular, p);
    while modulus <= bound {
        hensel_step(f, &mut lifted, &modular, &bezout, &modulus, p);
        modulus *= &pb;
    }
    recombine(f.to_vec(), lifted, &modulus)
}

fn hensel_step(
    f: &[BigInt],
    lifted: &mut [Vec<BigInt>],
    modular: &[Vec<u64>],
    bezout: &[Vec<u64>],
    modulus: &BigInt,
    p: u64,
) {
    let prod = lifted.iter().fold(vec![BigInt::one()], |acc, g| zmul(&acc, g));
    let err: Vec<BigInt> = (0..f.len())
        .map(|i| {
            let d = &f[i] - prod.get(i).cloned().unwrap_or_default();
            debug_assert!((&d % modulus).is_zero());
            d / modulus
        })
        .collect();
    let e = reduce(&err, p);
    for ((g, gm), s) in lifted.iter_mut().zip(modular).zip(bezout) {
        let c = rem_mod(&mul_mod(&e, s, p), gm, p);
        for (i, ci) in c.iter().enumerate() {
            g[i] += modulus * BigInt::from(*ci);
        }
    }
}

/// `s_i` with `sum s_i prod_{j != i} g_j = 1 (mod p)`, `deg s_i < deg g_i`.
fn bezout_cofactors(factors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, g)| mul_mod(&acc, g, p));
            let r = rem_mod(&others, &factors[i], p);
            inverse_mod_poly(&r, &factors[i], p)
        })
        .collect()
}

fn recombine(mut f: Vec<BigInt>, mut pool: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let half = modulus / 2;
    let sym = |c: &BigInt| {
        let r = c.mod_floor(modulus);
        if r > half {
            r - modulus
        } else {
            r
        }
    };
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in combinations(pool.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &pool[i]))
                .iter()
                .map(sym)
                .collect::<Vec<_>>();
            if !f[0].is_zero() && (cand[0].is_zero() || !(&f[0] % &cand[0]).is_zero()) {
                continue;
            }
            if let Some(q) = zdiv_exact(&f, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` over the integers for monic `b`, if exact.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r[..db].iter().all(Zero::is_zero).then_some(q)
}

// ---- arithmetic in F_p[x]; coefficient vectors ascending, trimmed ----

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn divrem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem_mod(a, b, p).1
}

fn monic_mod(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    monic_mod(&a, p)
}

fn derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// Inverse of `a` modulo `m` in `F_p[x]` (they must be coprime).
fn inverse_mod_poly(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem_mod(&r0, &r1, p);
        let t = sub_mod(&t0, &mul_mod(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "not coprime modulo p");
    let inv = inv_mod(r0[0], p);
    rem_mod(&t0.iter().map(|&c| c * inv % p).collect::<Vec<_>>(), m, p)
}

/// Berlekamp factorization of a monic squarefree polynomial over `F_p`.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    // Row i: coefficients of x^{ip} mod f.
    let xp = {
        let mut acc = vec![1u64];
        let mut base = vec![0, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem_mod(&mul_mod(&acc, &base, p), f, p);
            }
            base = rem_mod(&mul_mod(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    };
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = rem_mod(&mul_mod(&cur, &xp, p), f, p);
    }
    // Kernel of (Q - I)^T: vectors v with sum_i v_i (row_i - e_i) = 0.
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let q = rows[i][j];
            m[j][i] = (q + if i == j { p - 1 } else { 0 }) % p;
        }
    }
    let basis = nullspace_mod(m, p);
    let r = basis.len();
    let mut factors = vec![f.to_vec()];
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let g = trim(v.clone());
        if g.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.len() <= 2 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = sub_mod(&g, &[s], p);
                let d = gcd_mod(&rest, &shifted, p);
                if d.len() > 1 && d.len() < rest.len() {
                    rest = monic_mod(&divrem_mod(&rest, &d, p).0, p);
                    next.push(d);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors.sort();
    factors
}

fn nullspace_mod(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows {
            break;
        }
        let Some(pr) = (lead..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(lead, pr);
        let inv = inv_mod(m[lead][c], p);
        for k in 0..cols {
            m[lead][k] = m[lead][k] * inv % p;
        }
        for r in 0..rows {
            if r != lead && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p - f * m[lead][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][free]) % p;
            }
            v
        })
        .collect()
}
