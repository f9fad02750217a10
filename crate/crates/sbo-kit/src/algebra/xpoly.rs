//! Sparse multivariate polynomials in the space variables x₁..x_n with
//! rational-function coefficients.
//!
//! Exponent vectors are compared in graded lex order so canonical forms and
//! leading terms are deterministic.

use super::param::rational_to_f64;
use super::rational::Rat;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector for x₁..x_n under graded lex.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct XExp(pub Vec<u32>);

impl XExp {
    pub fn zero(n: usize) -> Self {
        XExp(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for XExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for XExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPolynomial {
    n: usize,
    terms: BTreeMap<XExp, Rat>,
}

impl MultiPolynomial {
    pub fn zero(n: usize) -> Self {
        MultiPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Self::zero(n);
        p.add_term(XExp::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    /// The coordinate x_k (1-based).
    pub fn var(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n, "variable index out of range");
        let mut e = vec![0; n];
        e[k - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(XExp(e), Rat::one());
        p
    }

    /// |x|² = x₁² + ⋯ + x_n².
    pub fn norm_square(n: usize) -> Self {
        let mut acc = Self::zero(n);
        for k in 1..=n {
            acc = &acc + &Self::var(n, k).pow(2);
        }
        acc
    }

    /// x₁² + ⋯ + x_{n−1}², the tangential part of |x|².
    pub fn norm_square_tangential(n: usize) -> Self {
        let mut acc = Self::zero(n);
        for k in 1..n {
            acc = &acc + &Self::var(n, k).pow(2);
        }
        acc
    }

    pub fn monomial(n: usize, e: XExp, c: Rat) -> Self {
        assert_eq!(e.0.len(), n);
        let mut p = Self::zero(n);
        p.add_term(e, c);
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XExp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: XExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn leading(&self) -> Option<(&XExp, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(XExp::total).max().unwrap_or(0)
    }

    /// Degree in the single variable x_k (1-based).
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e.0[k - 1]).max().unwrap_or(0)
    }

    /// Minimum exponent of x_k over all monomials (0 for the zero polynomial).
    pub fn min_degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e.0[k - 1]).min().unwrap_or(0)
    }

    /// True when every monomial has the same total degree d.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(XExp::total);
        match it.next() {
            None => true,
            Some(d) => it.all(|t| t == d),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by d; None when not exactly divisible.
    pub fn divide_exact(&self, d: &MultiPolynomial) -> Option<MultiPolynomial> {
        assert_eq!(self.n, d.n, "dimension mismatch");
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dl, dc) = d.leading().unwrap();
        let dl = dl.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPolynomial::zero(self.n);
        while let Some((rl, rc)) = rem.leading() {
            let mut qe = Vec::with_capacity(self.n);
            for (a, b) in rl.0.iter().zip(dl.0.iter()) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qt = MultiPolynomial::monomial(self.n, XExp(qe), rc / &dc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Divide by x_k^m (1-based k); panics when not divisible.
    pub fn shift_down(&self, k: usize, m: u32) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.n);
        for (e, c) in &self.terms {
            assert!(e.0[k - 1] >= m, "monomial not divisible by x_{}^{}", k, m);
            let mut v = e.0.clone();
            v[k - 1] -= m;
            out.add_term(XExp(v), c.clone());
        }
        out
    }

    /// Multiply by x_k.
    pub fn mul_var(&self, k: usize) -> MultiPolynomial {
        &MultiPolynomial::var(self.n, k) * self
    }

    /// ∂/∂x_k.
    pub fn derivative(&self, k: usize) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.n);
        for (e, c) in &self.terms {
            let p = e.0[k - 1];
            if p == 0 {
                continue;
            }
            let mut v = e.0.clone();
            v[k - 1] -= 1;
            out.add_term(XExp(v), c.scale_int(p as i64));
        }
        out
    }

    /// Substitute x ↦ x − y formally: returns the coefficients of the
    /// expansion in powers of y, i.e. the map γ ↦ coefficient polynomial in x
    /// of (−1)^{|γ|} ∂^γ/γ! applied to self.
    pub fn shift_expansion(&self) -> BTreeMap<XExp, MultiPolynomial> {
        use super::param::binomial;
        let mut out: BTreeMap<XExp, MultiPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            // x^e with x ↦ x − y expands over subexponents γ ≤ e.
            let mut stack: Vec<(usize, Vec<u32>, Rat)> = vec![(0, Vec::new(), c.clone())];
            while let Some((pos, gamma, coeff)) = stack.pop() {
                if pos == self.n {
                    let mut xexp = Vec::with_capacity(self.n);
                    for (k, g) in gamma.iter().enumerate() {
                        xexp.push(e.0[k] - g);
                    }
                    let entry = out
                        .entry(XExp(gamma.clone()))
                        .or_insert_with(|| MultiPolynomial::zero(self.n));
                    entry.add_term(XExp(xexp), coeff);
                    continue;
                }
                for g in 0..=e.0[pos] {
                    let mut c2 = coeff.clone();
                    let b = binomial(e.0[pos], g);
                    let sign = if g % 2 == 1 { -1 } else { 1 };
                    c2 = &c2 * &Rat::from_q(b).scale_int(sign);
                    let mut gamma2 = gamma.clone();
                    gamma2.push(g);
                    stack.push((pos + 1, gamma2, c2));
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Evaluate at a real point with parameters (λ, ν).
    pub fn eval_c64(&self, x: &[f64], lam: Complex64, nu: Complex64) -> Complex64 {
        assert_eq!(x.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = 1.0f64;
            for (xi, p) in x.iter().zip(e.0.iter()) {
                m *= xi.powi(*p as i32);
            }
            acc += c.eval_c64(lam, nu) * m;
        }
        acc
    }

    pub fn display<'a>(&'a self, param_names: [&'a str; 2]) -> XPolyDisplay<'a> {
        XPolyDisplay {
            poly: self,
            param_names,
        }
    }
}

impl Rat {
    /// Multiply by the integer k (small convenience used all over).
    pub fn scale_int(&self, k: i64) -> Rat {
        self * &Rat::from_int(k)
    }
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        MultiPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = MultiPolynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = XExp(
                    ea.0.iter()
                        .zip(eb.0.iter())
                        .map(|(a, b)| a + b)
                        .collect(),
                );
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

pub struct XPolyDisplay<'a> {
    poly: &'a MultiPolynomial,
    param_names: [&'a str; 2],
}

impl fmt::Display for XPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.total() == 0 {
                write!(f, "({})", c.display(self.param_names))?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({})·", c.display(self.param_names))?;
            }
            let mut printed = false;
            for (k, p) in e.0.iter().enumerate() {
                if *p > 0 {
                    if printed {
                        write!(f, "·")?;
                    }
                    write!(f, "x{}", k + 1)?;
                    if *p > 1 {
                        write!(f, "^{}", p)?;
                    }
                    printed = true;
                }
            }
        }
        Ok(())
    }
}

/// Evaluate a polynomial with purely rational coefficients at f64 coordinates.
pub fn eval_rational_poly(p: &MultiPolynomial, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (e, c) in p.terms() {
        let q = c
            .as_q()
            .expect("polynomial must have constant rational coefficients");
        let mut m = rational_to_f64(&q);
        for (xi, pw) in x.iter().zip(e.0.iter()) {
            m *= xi.powi(*pw as i32);
        }
        acc += m;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_square_division() {
        let n = 3;
        let r2 = MultiPolynomial::norm_square(n);
        let p = &r2 * &MultiPolynomial::var(n, 2);
        let q = p.divide_exact(&r2).unwrap();
        assert_eq!(q, MultiPolynomial::var(n, 2));
        assert!(MultiPolynomial::var(n, 1).divide_exact(&r2).is_none());
    }

    #[test]
    fn min_degree_and_shift() {
        let n = 2;
        let x1 = MultiPolynomial::var(n, 1);
        let x2 = MultiPolynomial::var(n, 2);
        let p = &(&x1 * &x2.pow(2)) + &x2.pow(3);
        assert_eq!(p.min_degree_in(2), 2);
        let q = p.shift_down(2, 2);
        assert_eq!(q, &x1 + &x2);
    }

    #[test]
    fn shift_expansion_recovers_taylor() {
        // (x − y)² = x² − 2xy + y²: γ=0 ↦ x², γ=1 ↦ −2x, γ=2 ↦ +1
        let n = 1;
        let p = MultiPolynomial::var(n, 1).pow(2);
        let exp = p.shift_expansion();
        assert_eq!(exp[&XExp(vec![0])], MultiPolynomial::var(n, 1).pow(2));
        assert_eq!(
            exp[&XExp(vec![1])],
            MultiPolynomial::var(n, 1).scale(&Rat::from_int(-2))
        );
        assert_eq!(
            exp[&XExp(vec![2])],
            MultiPolynomial::one(n)
        );
    }

    #[test]
    fn derivative_basic() {
        let n = 2;
        let p = &MultiPolynomial::var(n, 1).pow(3) * &MultiPolynomial::var(n, 2);
        let d = p.derivative(1);
        assert_eq!(
            d,
            (&MultiPolynomial::var(n, 1).pow(2) * &MultiPolynomial::var(n, 2))
                .scale(&Rat::from_int(3))
        );
    }
}
