//! Renormalized Gegenbauer polynomials over the parameter field, the
//! inflation map to two variables, and the parity constant γ(μ, a).
//!
//! C̃_l^α is normalized so that it is nonzero for every value of α; the Gamma
//! quotients in the classical formula are eliminated into Pochhammer products
//! so coefficients stay inside ℚ(α), with α either a free symbol or a shifted
//! copy of λ.

use crate::algebra::{factorial, qi, Rat, XExp};
use crate::weyl::ConstCoeffOp;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable z with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPolynomial {
    coeffs: BTreeMap<u32, Rat>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        ParamPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: u32, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        ParamPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, deg: u32) -> Rat {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, deg: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&deg) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.coeffs.remove(&deg);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(deg, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            coeffs: self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// d/dz.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.coeffs {
            if *d > 0 {
                out.add_term(d - 1, c.scale_int(*d as i64));
            }
        }
        out
    }

    /// θ = z d/dz.
    pub fn theta(&self) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.coeffs {
            out.add_term(*d, c.scale_int(*d as i64));
        }
        out
    }

    /// True when every exponent is ≡ l (mod 2) and ≤ l, i.e. membership in
    /// the degree-l parity class Pol_l\[z\]_even.
    pub fn in_parity_class(&self, l: u32) -> bool {
        self.coeffs
            .keys()
            .all(|&d| d <= l && (l - d).is_multiple_of(2))
    }

    pub fn eval_rat(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (d, c) in &self.coeffs {
            acc = &acc + &(c * &z.pow(*d as i64));
        }
        acc
    }
}

impl Add for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c);
        }
        out
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        self.scale(&Rat::from_int(-1))
    }
}

impl Mul for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = ParamPolynomial::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if *d > 0 {
                write!(f, "·z")?;
                if *d > 1 {
                    write!(f, "^{}", d)?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in two variables (s, t) with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPolynomial {
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        BiPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, s: u32, t: u32) -> Rat {
        self.coeffs
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, s: u32, t: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&(s, t)) {
            Some(v) => {
                let sum = &*v + &c;
                if sum.is_zero() {
                    self.coeffs.remove(&(s, t));
                } else {
                    *v = sum;
                }
            }
            None => {
                self.coeffs.insert((s, t), c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPolynomial {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// ∂/∂s.
    pub fn d_s(&self) -> Self {
        let mut out = Self::zero();
        for ((s, t), c) in &self.coeffs {
            if *s > 0 {
                out.add_term(s - 1, *t, c.scale_int(*s as i64));
            }
        }
        out
    }

    /// ∂/∂t.
    pub fn d_t(&self) -> Self {
        let mut out = Self::zero();
        for ((s, t), c) in &self.coeffs {
            if *t > 0 {
                out.add_term(*s, t - 1, c.scale_int(*t as i64));
            }
        }
        out
    }

    /// After substituting s = σ², true when homogeneous of degree l in (σ, t).
    pub fn inflation_homogeneous(&self, l: u32) -> bool {
        self.coeffs.keys().all(|(s, t)| 2 * s + t == l)
    }

    /// Substitute (s, t) = (−Δ′, ∂_n) on ℝⁿ, yielding a constant-coefficient
    /// operator.
    pub fn substitute_operator(&self, n: usize) -> ConstCoeffOp {
        assert!(n >= 1);
        let lap_t = ConstCoeffOp::laplacian_tangential(n);
        let mut out = ConstCoeffOp::zero(n);
        for ((s, t), c) in &self.coeffs {
            let sign = if s % 2 == 1 { -1 } else { 1 };
            let mut dn = vec![0u32; n];
            dn[n - 1] = *t;
            let term = &lap_t.pow(*s) * &ConstCoeffOp::monomial(n, XExp(dn), c.scale_int(sign));
            out = &out + &term;
        }
        out
    }
}

impl Add for &BiPolynomial {
    type Output = BiPolynomial;
    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for ((s, t), c) in &rhs.coeffs {
            out.add_term(*s, *t, c.clone());
        }
        out
    }
}

impl Sub for &BiPolynomial {
    type Output = BiPolynomial;
    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for ((s, t), c) in &rhs.coeffs {
            out.add_term(*s, *t, -c);
        }
        out
    }
}

/// The renormalized Gegenbauer polynomial
///
///   C̃_l^α(z) = Γ(α + ⌊(l+1)/2⌋)^{−1} Σ_k (−1)^k Γ(l−k+α) / (k!(l−2k)!) (2z)^{l−2k},
///
/// with the Gamma quotient expanded into the rising product
/// ∏_{j=0}^{l−k−⌊(l+1)/2⌋−1} (α + ⌊(l+1)/2⌋ + j), so the result is an honest
/// polynomial in z with coefficients polynomial in α.
pub fn gegenbauer_renormalized(l: u32, alpha: &Rat) -> ParamPolynomial {
    let mut out = ParamPolynomial::zero();
    let base = l / 2 + l % 2; // ⌊(l+1)/2⌋
    for k in 0..=l / 2 {
        let deg = l - 2 * k;
        // Γ(l−k+α)/Γ(α+⌊(l+1)/2⌋) = ∏_{j=0}^{l−k−base−1} (α + base + j)
        let mut poch = Rat::one();
        for j in 0..(l - k - base) {
            let shift = Rat::from_int((base + j) as i64);
            poch = &poch * &(alpha + &shift);
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let two_pow = Rat::from_q(qi(2).pow(deg as i32));
        let denom = &Rat::from_q(factorial(k)) * &Rat::from_q(factorial(deg));
        let coeff = &(&poch.scale_int(sign) * &two_pow) / &denom;
        out = &out + &ParamPolynomial::monomial(deg, coeff);
    }
    out
}

/// Inflation of g ∈ Pol_l\[z\]_even: g = Σ_j a_j z^{l−2j} ↦ Σ_j a_j s^j t^{l−2j}.
///
/// Rejects polynomials outside the degree-l parity class.
pub fn inflate(l: u32, g: &ParamPolynomial) -> BiPolynomial {
    assert!(
        g.in_parity_class(l),
        "inflation input must lie in the degree-{} parity class",
        l
    );
    let mut out = BiPolynomial::zero();
    for (d, c) in g.coeffs() {
        let j = (l - d) / 2;
        out.add_term(j, *d, c.clone());
    }
    out
}

/// The parity constant γ(μ, a): 1 for odd a, μ + a/2 for even a.
pub fn parity_gamma(mu: &Rat, a: u32) -> Rat {
    if a % 2 == 1 {
        Rat::one()
    } else {
        mu + &Rat::from_int((a / 2) as i64)
    }
}

impl Rat {
    /// Convenience: self + integer.
    pub fn add_int(&self, k: i64) -> Rat {
        self + &Rat::from_int(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qr;

    fn alpha() -> Rat {
        Rat::lambda()
    }

    #[test]
    fn low_degree_values() {
        let a = alpha();
        assert_eq!(
            gegenbauer_renormalized(0, &a),
            ParamPolynomial::constant(Rat::one())
        );
        assert_eq!(
            gegenbauer_renormalized(1, &a),
            ParamPolynomial::monomial(1, Rat::from_int(2))
        );
        // C̃₂^α = 2(α+1)z² − 1
        let c2 = gegenbauer_renormalized(2, &a);
        let expect = &ParamPolynomial::monomial(2, (&a.add_int(1)).scale_int(2))
            - &ParamPolynomial::constant(Rat::one());
        assert_eq!(c2, expect);
    }

    #[test]
    fn nonzero_for_all_degrees() {
        let a = alpha();
        for l in 0..=10 {
            let c = gegenbauer_renormalized(l, &a);
            assert!(!c.is_zero(), "C̃_{}^α vanished", l);
            assert!(c.in_parity_class(l));
        }
    }

    #[test]
    fn lowering_relation() {
        // (l − θ) C̃_l^α = −2 C̃_{l−2}^{α+1}
        let a = alpha();
        for l in 2..=10u32 {
            let c = gegenbauer_renormalized(l, &a);
            let lhs = &c.scale(&Rat::from_int(l as i64)) - &c.theta();
            let rhs = gegenbauer_renormalized(l - 2, &a.add_int(1)).scale(&Rat::from_int(-2));
            assert_eq!(lhs, rhs, "l = {}", l);
        }
    }

    #[test]
    fn raising_relation() {
        // d/dz C̃_l^α = 2 γ(α, l) C̃_{l−1}^{α+1}
        let a = alpha();
        for l in 1..=10u32 {
            let lhs = gegenbauer_renormalized(l, &a).derivative();
            let g = parity_gamma(&a, l);
            let rhs = gegenbauer_renormalized(l - 1, &a.add_int(1))
                .scale(&g.scale_int(2));
            assert_eq!(lhs, rhs, "l = {}", l);
        }
    }

    #[test]
    fn three_term_relation() {
        // (μ+a) C̃_a^μ + C̃_{a−2}^{μ+1} = (μ + ⌊(a+1)/2⌋) C̃_a^{μ+1},
        // with C̃ of negative degree read as 0. The degree a−2 of the middle
        // term is forced: every other term lies in the degree-a parity class.
        let mu = alpha();
        for a in 1..=10u32 {
            let middle = if a >= 2 {
                gegenbauer_renormalized(a - 2, &mu.add_int(1))
            } else {
                ParamPolynomial::zero()
            };
            let lhs = &gegenbauer_renormalized(a, &mu).scale(&mu.add_int(a as i64)) + &middle;
            let half = ((a + 1) / 2) as i64;
            let rhs = gegenbauer_renormalized(a, &mu.add_int(1)).scale(&mu.add_int(half));
            assert_eq!(lhs, rhs, "a = {}", a);
        }
    }

    #[test]
    fn inflation_examples() {
        // g = z², l = 2 → t²; g = 1, l = 2 → s
        let g = ParamPolynomial::monomial(2, Rat::one());
        assert_eq!(inflate(2, &g).coefficient(0, 2), Rat::one());
        let g = ParamPolynomial::constant(Rat::one());
        let infl = inflate(2, &g);
        assert_eq!(infl.coefficient(1, 0), Rat::one());
        assert_eq!(infl.coeffs().count(), 1);
        // 2(α+1)z² − 1 → 2(α+1)t² − s
        let a = alpha();
        let g = gegenbauer_renormalized(2, &a);
        let infl = inflate(2, &g);
        assert_eq!(infl.coefficient(0, 2), a.add_int(1).scale_int(2));
        assert_eq!(infl.coefficient(1, 0), Rat::from_int(-1));
    }

    #[test]
    #[should_panic(expected = "parity class")]
    fn inflation_rejects_wrong_parity() {
        let g = &ParamPolynomial::monomial(2, Rat::one())
            + &ParamPolynomial::monomial(1, Rat::one());
        inflate(2, &g);
    }

    #[test]
    fn inflation_identities() {
        // ∂_s(I_l g) = ½ I_{l−2}((l − θ)g) and ∂_t(I_l g) = I_{l−1}(g′)
        let a = alpha();
        for l in 2..=10u32 {
            // Random-ish member of the parity class built from Gegenbauer
            // pieces with shifted parameters.
            let g = &gegenbauer_renormalized(l, &a)
                + &gegenbauer_renormalized(l, &a.add_int(3)).scale(&Rat::from_q(qr(2, 5)));
            let infl = inflate(l, &g);

            let lowered = &g.scale(&Rat::from_int(l as i64)) - &g.theta();
            let lhs_s = infl.d_s();
            let rhs_s = inflate(l - 2, &lowered).scale(&Rat::from_q(qr(1, 2)));
            assert_eq!(lhs_s, rhs_s, "s-derivative at l = {}", l);

            let lhs_t = infl.d_t();
            let rhs_t = inflate(l - 1, &g.derivative());
            assert_eq!(lhs_t, rhs_t, "t-derivative at l = {}", l);
        }
    }

    #[test]
    fn inflation_homogeneity() {
        let a = alpha();
        for l in 0..=8u32 {
            let infl = inflate(l, &gegenbauer_renormalized(l, &a));
            assert!(infl.inflation_homogeneous(l));
        }
    }

    #[test]
    fn parity_gamma_values() {
        let mu = alpha();
        assert_eq!(parity_gamma(&mu, 1), Rat::one());
        assert_eq!(parity_gamma(&mu, 4), mu.add_int(2));
        assert_eq!(parity_gamma(&Rat::from_int(5), 0), Rat::from_int(5));
    }
}
