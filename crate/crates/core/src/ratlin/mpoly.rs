//! Sparse multivariate polynomials and polynomial maps `Q^n -> Q^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{format_rational, rat, LinalgError, Matrix, Rational, UniPoly};

/// Scalar polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Rational, Vec<u32>)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(c.clone(), |m, (&k, xi)| {
                if k == 0 {
                    m
                } else {
                    m * num_traits::pow(xi.clone(), k as usize)
                }
            });
            acc + m
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(super::to_f64(c), |m, (&k, xi)| m * xi.powi(k as i32))
            })
            .sum()
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            p.add_term(e2, c * rat(e[var] as i64));
        }
        p
    }

    /// Substitutes variable `i` by `subs[i]` (all in a common variable set).
    pub fn substitute(&self, subs: &[Poly]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.first().map_or(0, |s| s.nvars);
        let mut out = Self::zero(nv);
        for (e, c) in &self.terms {
            let term = e
                .iter()
                .zip(subs)
                .fold(Self::constant(nv, c.clone()), |acc, (&k, s)| acc.mul(&s.pow(k)));
            out = out.add(&term);
        }
        out
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.depends_on(v)).collect()
    }

    /// Univariate view when the polynomial involves at most `var`.
    pub fn as_univariate(&self, var: usize) -> Option<UniPoly> {
        if self.variables().iter().any(|&v| v != var) {
            return None;
        }
        let deg = self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[var] as usize] += c;
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format_rational(c),
                    (false, true) => mono.join("*"),
                    (false, false) if (-c).is_one() => format!("-{}", mono.join("*")),
                    (false, false) => format!("{}*{}", format_rational(c), mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Polynomial map `Q^num_vars -> Q^out_dim`, one [`Poly`] per output coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    num_vars: usize,
    coords: Vec<Poly>,
}

impl MultiPoly {
    /// Output coordinates as `(coefficient, exponents)` term lists.
    pub fn new(num_vars: usize, coords: Vec<Vec<(Rational, Vec<u32>)>>) -> Result<Self, LinalgError> {
        let mut polys = Vec::with_capacity(coords.len());
        for (i, terms) in coords.into_iter().enumerate() {
            if let Some((_, e)) = terms.iter().find(|(_, e)| e.len() != num_vars) {
                return Err(LinalgError::Arity { expected: num_vars, got: e.len(), what: format!("exponent vector of coordinate {i}") });
            }
            polys.push(Poly::from_terms(num_vars, terms));
        }
        Ok(Self { num_vars, coords: polys })
    }

    pub fn from_polys(num_vars: usize, coords: Vec<Poly>) -> Self {
        assert!(coords.iter().all(|p| p.nvars == num_vars));
        Self { num_vars, coords }
    }

    pub fn zero(num_vars: usize, out_dim: usize) -> Self {
        Self { num_vars, coords: vec![Poly::zero(num_vars); out_dim] }
    }

    /// The linear map `x -> M x`.
    pub fn linear(m: &Matrix) -> Self {
        let n = m.cols();
        let coords = (0..m.rows())
            .map(|r| Poly::from_terms(n, (0..n).map(|c| (m.get(r, c).clone(), unit_exp(n, c)))))
            .collect();
        Self { num_vars: n, coords }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn out_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    fn check_arity(&self, point: &[Rational]) -> Result<(), LinalgError> {
        if point.len() != self.num_vars {
            return Err(LinalgError::Arity { expected: self.num_vars, got: point.len(), what: "evaluation point".into() });
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        self.check_arity(point)?;
        Ok(self.coords.iter().map(|p| p.eval(point)).collect())
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.coords.iter().map(|p| p.eval_f64(point)).collect()
    }

    /// Exact `out_dim x num_vars` matrix of partial derivatives at `point`.
    pub fn jacobian(&self, point: &[Rational]) -> Result<Matrix, LinalgError> {
        self.check_arity(point)?;
        let mut j = Matrix::zeros(self.out_dim(), self.num_vars);
        for (r, p) in self.coords.iter().enumerate() {
            for c in 0..self.num_vars {
                j.set(r, c, p.derivative(c).eval(point));
            }
        }
        Ok(j)
    }

    /// Symbolic Jacobian: entry `[r][c]` is `d coord_r / d x_c`.
    pub fn jacobian_polys(&self) -> Vec<Vec<Poly>> {
        self.coords
            .iter()
            .map(|p| (0..self.num_vars).map(|c| p.derivative(c)).collect())
            .collect()
    }

    /// Whether every coordinate is the zero polynomial after simplification.
    pub fn is_identically_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.num_vars, self.out_dim()), (o.num_vars, o.out_dim()));
        Self {
            num_vars: self.num_vars,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    /// `y -> self(L y + t)` where `L` is `num_vars x k`.
    pub fn compose_affine(&self, linear: &Matrix, translate: &[Rational]) -> Self {
        assert_eq!(linear.rows(), self.num_vars);
        assert_eq!(translate.len(), self.num_vars);
        let k = linear.cols();
        let subs: Vec<Poly> = (0..self.num_vars)
            .map(|i| {
                let mut terms: Vec<(Rational, Vec<u32>)> =
                    (0..k).map(|c| (linear.get(i, c).clone(), unit_exp(k, c))).collect();
                terms.push((translate[i].clone(), vec![0; k]));
                Poly::from_terms(k, terms)
            })
            .collect();
        Self { num_vars: k, coords: self.coords.iter().map(|p| p.substitute(&subs)).collect() }
    }

    /// `y -> self(M y)`.
    pub fn compose_linear(&self, m: &Matrix) -> Self {
        self.compose_affine(m, &super::zero_vec(self.num_vars))
    }

    /// `x -> M self(x)` where `M` is `r x out_dim`.
    pub fn apply_output(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.out_dim());
        let coords = (0..m.rows())
            .map(|r| {
                self.coords
                    .iter()
                    .enumerate()
                    .fold(Poly::zero(self.num_vars), |acc, (c, p)| acc.add(&p.scale(m.get(r, c))))
            })
            .collect();
        Self { num_vars: self.num_vars, coords }
    }

    /// `x -> self(x) - c`.
    pub fn shift_output(&self, c: &[Rational]) -> Self {
        assert_eq!(c.len(), self.out_dim());
        let coords = self
            .coords
            .iter()
            .zip(c)
            .map(|(p, ci)| p.sub(&Poly::constant(self.num_vars, ci.clone())))
            .collect();
        Self { num_vars: self.num_vars, coords }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self.num_vars {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            n => (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.var_names();
        let parts: Vec<String> = self.coords.iter().map(|p| p.to_string_with(&names)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn unit_exp(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}
