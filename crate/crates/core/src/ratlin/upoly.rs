//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_rational, rat, Rational};

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(rat).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let lead_inv = d.lead().recip();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&rat(-1)));
        }
        chain
    }

    /// Cauchy bound: every real root lies in `(-b, b)`.
    pub fn root_bound(&self) -> Rational {
        let l = self.lead().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &l)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let changes = |x: &Rational| {
            let signs: Vec<bool> = chain
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a).saturating_sub(changes(b))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let b = self.root_bound();
        self.count_real_roots_in(&-b.clone(), &b)
    }

    /// Disjoint isolating intervals `(lo, hi]` for the distinct real roots,
    /// ascending, each narrower than `width`. A root that lands exactly on a
    /// bisection point comes back as the degenerate interval `[r, r]`.
    pub fn isolate_real_roots(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sq = {
            let g = self.gcd(&self.derivative());
            self.div_rem(&g).0
        };
        let b = sq.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = sq.count_real_roots_in(&lo, &hi);
            if n == 0 {
                continue;
            }
            if sq.eval(&hi).is_zero() && n == 1 {
                out.push((hi.clone(), hi));
                continue;
            }
            if n == 1 && &hi - &lo < *width {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && (-c).is_one() {
                "-".into()
            } else if i > 0 {
                format!("{}*", format_rational(c))
            } else {
                format_rational(c)
            };
            parts.push(format!("{coef}{mono}"));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::ratio;

    #[test]
    fn arithmetic() {
        let a = UniPoly::from_i64(&[-1, 1]);
        let b = UniPoly::from_i64(&[1, 1]);
        assert_eq!(a.mul(&b), UniPoly::from_i64(&[-1, 0, 1]));
        let (q, r) = UniPoly::from_i64(&[1, 0, 1]).div_rem(&a);
        assert_eq!(q, UniPoly::from_i64(&[1, 1]));
        assert_eq!(r, UniPoly::from_i64(&[2]));
        assert_eq!(a.mul(&b).gcd(&a.pow(2)), a);
        assert_eq!(UniPoly::from_i64(&[0, 0, 3]).derivative(), UniPoly::from_i64(&[0, 6]));
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2: two irrational roots
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.count_real_roots(), 2);
        assert_eq!(UniPoly::from_i64(&[1, 0, 1]).count_real_roots(), 0);
        // x^2 has a double root at 0, counted once
        assert_eq!(UniPoly::from_i64(&[0, 0, 1]).count_real_roots(), 1);
        assert_eq!(p.count_real_roots_in(&rat(0), &rat(2)), 1);
    }

    #[test]
    fn isolation() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let w = ratio(1, 1000);
        let iv = p.isolate_real_roots(&w);
        assert_eq!(iv.len(), 2);
        for (lo, hi) in &iv {
            assert!(hi - lo < w);
            assert!(p.eval(lo) * p.eval(hi) <= Rational::zero());
        }
        let q = UniPoly::from_i64(&[0, -1, 0, 1]); // x^3 - x
        let roots = q.isolate_real_roots(&w);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|(lo, hi)| lo == hi && lo.is_zero()));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_i64(&[1, 1, 1]).to_string(), "x^2 + x + 1");
        assert_eq!(UniPoly::from_i64(&[1, -1]).to_string(), "-x + 1");
    }
}
