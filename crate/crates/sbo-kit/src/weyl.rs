//! The Weyl algebra ℂ[x, ∂/∂x] in n variables with rational-function scalars.
//!
//! Elements are kept in normal order (x-factors to the left of ∂-factors).
//! Reduction modulo the left ideal generated by x₁..x_n — the annihilator of
//! the Dirac delta — realizes distributions supported at the origin: every
//! element has a unique x-free representative D with P·δ = D·δ.

use crate::algebra::{binomial, factorial, MultiPolynomial, Rat, XExp};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Normal-ordered element Σ c_{αβ} x^α ∂^β.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<(XExp, XExp), Rat>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, XExp::zero(n), XExp::zero(n), Rat::one())
    }

    pub fn monomial(n: usize, x: XExp, d: XExp, c: Rat) -> Self {
        assert_eq!(x.0.len(), n);
        assert_eq!(d.0.len(), n);
        let mut w = Self::zero(n);
        w.add_term(x, d, c);
        w
    }

    /// The coordinate function x_k (1-based).
    pub fn x(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k - 1] = 1;
        Self::monomial(n, XExp(e), XExp::zero(n), Rat::one())
    }

    /// The derivation ∂/∂x_k (1-based).
    pub fn d(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k - 1] = 1;
        Self::monomial(n, XExp::zero(n), XExp(e), Rat::one())
    }

    /// The Laplacian Δ = ∂₁² + ⋯ + ∂_n².
    pub fn laplacian(n: usize) -> Self {
        ConstCoeffOp::laplacian(n).into_weyl()
    }

    pub fn from_x_poly(p: &MultiPolynomial) -> Self {
        let n = p.dim();
        let mut w = Self::zero(n);
        for (e, c) in p.terms() {
            w.add_term(e.clone(), XExp::zero(n), c.clone());
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, x: XExp, d: XExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (x, d);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WeylElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The unique x-free representative D with P·δ = D·δ.
    ///
    /// Anti-normal ordering moves every x to the right of the ∂'s; monomials
    /// that keep an x-factor act as x^α δ = 0 and are dropped. For a single
    /// normal-ordered monomial the surviving part of x^a ∂^b (one variable) is
    /// (−1)^a C(b,a) a! ∂^{b−a}, provided a ≤ b.
    pub fn reduce_mod_annihilator(&self) -> ConstCoeffOp {
        let mut out = ConstCoeffOp::zero(self.n);
        'term: for ((x, d), c) in &self.terms {
            let mut coeff = c.clone();
            let mut rem = Vec::with_capacity(self.n);
            for (a, b) in x.0.iter().zip(d.0.iter()) {
                if a > b {
                    continue 'term;
                }
                let sign = if a % 2 == 1 { -1 } else { 1 };
                let f = &binomial(*b, *a) * &factorial(*a);
                coeff = &coeff * &Rat::from_q(f).scale_int(sign);
                rem.push(b - a);
            }
            out.add_term(XExp(rem), coeff);
        }
        out
    }

    /// ⟨P δ, x^γ⟩ computed term by term without reducing first:
    /// ⟨x^α ∂^β δ, x^γ⟩ = (−1)^{|β|} β! when β = α + γ, else 0.
    pub fn pair_delta_direct(&self, gamma: &XExp) -> Rat {
        assert_eq!(gamma.0.len(), self.n);
        let mut acc = Rat::zero();
        for ((x, d), c) in &self.terms {
            let matches = x
                .0
                .iter()
                .zip(gamma.0.iter())
                .zip(d.0.iter())
                .all(|((a, g), b)| a + g == *b);
            if !matches {
                continue;
            }
            let mut f = Rat::one();
            for b in &d.0 {
                f = &f * &Rat::from_q(factorial(*b));
            }
            let sign = if d.total() % 2 == 1 { -1 } else { 1 };
            acc = &acc + &(&c.clone() * &f.scale_int(sign));
        }
        acc
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for ((x, d), c) in &rhs.terms {
            out.add_term(x.clone(), d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for ((x, d), c) in &rhs.terms {
            out.add_term(x.clone(), d.clone(), -c);
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&Rat::from_int(-1))
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;

    /// Normal-ordered product from ∂_p x_p = x_p ∂_p + 1, variable by
    /// variable: ∂^b x^g = Σ_k C(b,k) C(g,k) k! x^{g−k} ∂^{b−k}.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = WeylElement::zero(n);
        for ((xa, da), ca) in &self.terms {
            for ((xb, db), cb) in &rhs.terms {
                let coeff = ca * cb;
                // Expand ∂^{da} x^{xb} over the contraction vector k ≤ min(da, xb).
                let mut stack: Vec<(usize, Vec<u32>, Rat)> = vec![(0, Vec::new(), coeff)];
                while let Some((pos, kvec, c)) = stack.pop() {
                    if pos == n {
                        let xe: Vec<u32> = (0..n)
                            .map(|t| xa.0[t] + xb.0[t] - kvec[t])
                            .collect();
                        let de: Vec<u32> = (0..n)
                            .map(|t| da.0[t] + db.0[t] - kvec[t])
                            .collect();
                        out.add_term(XExp(xe), XExp(de), c);
                        continue;
                    }
                    let top = da.0[pos].min(xb.0[pos]);
                    for k in 0..=top {
                        let f = &(&binomial(da.0[pos], k) * &binomial(xb.0[pos], k))
                            * &factorial(k);
                        let mut kvec2 = kvec.clone();
                        kvec2.push(k);
                        stack.push((pos + 1, kvec2, &c * &Rat::from_q(f)));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, d), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, p) in x.0.iter().enumerate() {
                if *p > 0 {
                    write!(f, "·x{}", k + 1)?;
                    if *p > 1 {
                        write!(f, "^{}", p)?;
                    }
                }
            }
            for (k, p) in d.0.iter().enumerate() {
                if *p > 0 {
                    write!(f, "·∂{}", k + 1)?;
                    if *p > 1 {
                        write!(f, "^{}", p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Constant-coefficient differential operator: a Weyl element with empty
/// x-part. Via P ↦ P·δ it doubles as a distribution supported at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstCoeffOp {
    n: usize,
    terms: BTreeMap<XExp, Rat>,
}

impl ConstCoeffOp {
    pub fn zero(n: usize) -> Self {
        ConstCoeffOp {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, XExp::zero(n), Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::monomial(n, XExp::zero(n), c)
    }

    pub fn monomial(n: usize, d: XExp, c: Rat) -> Self {
        assert_eq!(d.0.len(), n);
        let mut op = Self::zero(n);
        op.add_term(d, c);
        op
    }

    /// ∂/∂x_k (1-based).
    pub fn partial(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let mut e = vec![0; n];
        e[k - 1] = 1;
        Self::monomial(n, XExp(e), Rat::one())
    }

    /// Δ = Σ_{k=1}^n ∂_k².
    pub fn laplacian(n: usize) -> Self {
        let mut op = Self::zero(n);
        for k in 1..=n {
            let mut e = vec![0; n];
            e[k - 1] = 2;
            op.add_term(XExp(e), Rat::one());
        }
        op
    }

    /// Δ′ = Σ_{k=1}^{n−1} ∂_k², the tangential Laplacian.
    pub fn laplacian_tangential(n: usize) -> Self {
        let mut op = Self::zero(n);
        for k in 1..n {
            let mut e = vec![0; n];
            e[k - 1] = 2;
            op.add_term(XExp(e), Rat::one());
        }
        op
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

    pub fn coefficient(&self, d: &XExp) -> Rat {
        self.terms.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total order of the operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(XExp::total).max().unwrap_or(0)
    }

    fn add_term(&mut self, d: XExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ConstCoeffOp {
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

    pub fn into_weyl(&self) -> WeylElement {
        let mut w = WeylElement::zero(self.n);
        for (d, c) in &self.terms {
            w.add_term(XExp::zero(self.n), d.clone(), c.clone());
        }
        w
    }

    /// Apply the operator to a polynomial.
    pub fn apply_to_poly(&self, f: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(f.dim(), self.n, "dimension mismatch");
        let mut out = MultiPolynomial::zero(self.n);
        for (d, c) in &self.terms {
            let mut g = f.clone();
            for (k, p) in d.0.iter().enumerate() {
                for _ in 0..*p {
                    g = g.derivative(k + 1);
                }
            }
            out = &out + &g.scale(c);
        }
        out
    }

    /// Evaluate every coefficient at a concrete (λ, ν); None when some
    /// coefficient has a pole there.
    pub fn specialize(&self, lam: &crate::algebra::Q, nu: &crate::algebra::Q) -> Option<ConstCoeffOp> {
        let mut out = ConstCoeffOp::zero(self.n);
        for (d, c) in &self.terms {
            let v = c.eval(lam, nu)?;
            out.add_term(d.clone(), Rat::from_q(v));
        }
        Some(out)
    }

    /// ⟨D δ, x^γ⟩ = (−1)^{|γ|} γ! · (coefficient of ∂^γ in D).
    pub fn pair_delta_monomial(&self, gamma: &XExp) -> Rat {
        assert_eq!(gamma.0.len(), self.n);
        let c = self.coefficient(gamma);
        if c.is_zero() {
            return Rat::zero();
        }
        let mut f = Rat::one();
        for g in &gamma.0 {
            f = &f * &Rat::from_q(factorial(*g));
        }
        let sign = if gamma.total() % 2 == 1 { -1 } else { 1 };
        &c * &f.scale_int(sign)
    }

    /// Convolution (D δ) ∗ f for polynomial f, computed through the pairing
    /// (Dδ ∗ f)(x) = ⟨Dδ(y), f(x − y)⟩ rather than by differentiating f.
    ///
    /// f(x−y) = Σ_γ P_γ(x) y^γ with the expansion signs inside P_γ, and
    /// ⟨Dδ, y^γ⟩ is the monomial pairing, so the two paths to Df stay
    /// independent.
    pub fn convolve_poly(&self, f: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(f.dim(), self.n);
        let mut out = MultiPolynomial::zero(self.n);
        for (gamma, xpoly) in f.shift_expansion() {
            let pairing = self.pair_delta_monomial(&gamma);
            if !pairing.is_zero() {
                out = &out + &xpoly.scale(&pairing);
            }
        }
        out
    }
}

impl Add for &ConstCoeffOp {
    type Output = ConstCoeffOp;
    fn add(self, rhs: &ConstCoeffOp) -> ConstCoeffOp {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ConstCoeffOp {
    type Output = ConstCoeffOp;
    fn sub(self, rhs: &ConstCoeffOp) -> ConstCoeffOp {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), -c);
        }
        out
    }
}

impl Neg for &ConstCoeffOp {
    type Output = ConstCoeffOp;
    fn neg(self) -> ConstCoeffOp {
        self.scale(&Rat::from_int(-1))
    }
}

impl Mul for &ConstCoeffOp {
    type Output = ConstCoeffOp;
    fn mul(self, rhs: &ConstCoeffOp) -> ConstCoeffOp {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = ConstCoeffOp::zero(self.n);
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                let e = XExp(
                    da.0.iter()
                        .zip(db.0.iter())
                        .map(|(a, b)| a + b)
                        .collect(),
                );
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ConstCoeffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.into_weyl())
    }
}
