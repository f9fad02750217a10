//! Sparse polynomials in the parameter symbols (λ, ν) over arbitrary-precision
//! rationals.
//!
//! These are the coefficients of everything else in the crate: an exponent pair
//! `(l, n)` stands for λ^l ν^n. The term order is graded lexicographic (total
//! degree first, then λ before ν), which fixes leading terms, canonical monic
//! denominators and deterministic printing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Rational from an integer.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Rational p/q from integers. Panics on q = 0.
pub fn qr(p: i64, q: i64) -> Q {
    assert!(q != 0, "zero denominator");
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// n! as an exact rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Binomial coefficient C(n, k) as an exact rational.
pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as u64 {
        num *= BigInt::from(n as u64 - j);
        den *= BigInt::from(j + 1);
    }
    Q::new(num, den)
}

/// Exponent pair (λ-power, ν-power) under graded lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct ParamExp {
    pub l: u32,
    pub n: u32,
}

impl ParamExp {
    pub const fn new(l: u32, n: u32) -> Self {
        ParamExp { l, n }
    }

    pub fn total(&self) -> u32 {
        self.l + self.n
    }
}

impl Ord for ParamExp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.l).cmp(&(other.total(), other.l))
    }
}

impl PartialOrd for ParamExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in (λ, ν) with rational coefficients.
///
/// Invariant: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExp, Q>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ParamExp::new(0, 0), c);
        }
        ParamPoly { terms }
    }

    /// The symbol λ.
    pub fn lambda() -> Self {
        Self::monomial(ParamExp::new(1, 0), Q::one())
    }

    /// The symbol ν.
    pub fn nu() -> Self {
        Self::monomial(ParamExp::new(0, 1), Q::one())
    }

    pub fn monomial(e: ParamExp, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ParamPoly { terms }
    }

    /// Affine polynomial c0 + cl·λ + cn·ν.
    pub fn affine(c0: Q, cl: Q, cn: Q) -> Self {
        let mut p = Self::constant(c0);
        p.add_term(ParamExp::new(1, 0), cl);
        p.add_term(ParamExp::new(0, 1), cn);
        p
    }

    fn add_term(&mut self, e: ParamExp, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ParamExp::new(0, 0))
                .map_or(false, |c| c.is_one())
    }

    /// Some(c) when the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &Q)> {
        self.terms.iter()
    }

    /// Leading (exponent, coefficient) in graded lex order.
    pub fn leading(&self) -> Option<(ParamExp, &Q)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.total()).max().unwrap_or(0)
    }

    pub fn degree_lambda(&self) -> u32 {
        self.terms.keys().map(|e| e.l).max().unwrap_or(0)
    }

    pub fn degree_nu(&self) -> u32 {
        self.terms.keys().map(|e| e.n).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, lam: &Q, nu: &Q) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.l {
                t *= lam;
            }
            for _ in 0..e.n {
                t *= nu;
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, lam: f64, nu: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rational_to_f64(c) * lam.powi(e.l as i32) * nu.powi(e.n as i32))
            .sum()
    }

    /// Exact quotient self / d. Returns None when the division is not exact.
    pub fn divide_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dl, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rl, rc)) = rem.leading() {
            if rl.l < dl.l || rl.n < dl.n {
                return None;
            }
            let qe = ParamExp::new(rl.l - dl.l, rl.n - dl.n);
            let qc = rc / dc;
            let qt = ParamPoly::monomial(qe, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    pub fn display<'a>(&'a self, names: [&'a str; 2]) -> ParamPolyDisplay<'a> {
        ParamPolyDisplay { poly: self, names }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ParamExp::new(ea.l + eb.l, ea.n + eb.n), ca * cb);
            }
        }
        out
    }
}

pub struct ParamPolyDisplay<'a> {
    poly: &'a ParamPoly,
    names: [&'a str; 2],
}

impl fmt::Display for ParamPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest terms first.
        for (e, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if !unit || e.total() == 0 {
                write!(f, "{}", mag)?;
            }
            let mut printed = !unit || e.total() == 0;
            for (pow, name) in [(e.l, self.names[0]), (e.n, self.names[1])] {
                if pow > 0 {
                    if printed {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", name)?;
                    if pow > 1 {
                        write!(f, "^{}", pow)?;
                    }
                    printed = true;
                }
            }
        }
        Ok(())
    }
}

pub fn rational_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of approximations for very large entries.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

// ---------------------------------------------------------------------------
// GCD machinery.
//
// Polynomials in (λ, ν) are viewed as univariate in λ with coefficients in
// ℚ[ν]; the gcd is content × primitive-part gcd, the latter via a primitive
// pseudo-remainder sequence. Degrees in this crate stay small, so the
// primitive PRS is perfectly adequate.
// ---------------------------------------------------------------------------

/// Univariate polynomial over ℚ, ascending coefficients, last entry nonzero.
type Uni = Vec<Q>;

fn uni_trim(mut v: Uni) -> Uni {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn uni_is_zero(v: &Uni) -> bool {
    v.is_empty()
}

fn uni_scale(v: &Uni, c: &Q) -> Uni {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|x| x * c).collect()
}

fn uni_sub(a: &Uni, b: &Uni) -> Uni {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    uni_trim(out)
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    if uni_is_zero(a) || uni_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    uni_trim(out)
}

#[allow(clippy::needless_range_loop)]
fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    assert!(!uni_is_zero(b));
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !uni_is_zero(&r) {
        let dr = r.len() - 1;
        let q = r.last().unwrap() / &lb;
        for k in 0..=db {
            let idx = dr - db + k;
            let delta = &b[k] * &q;
            r[idx] -= delta;
        }
        r = uni_trim(r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn uni_div_exact(a: &Uni, b: &Uni) -> Uni {
    assert!(!uni_is_zero(b));
    if uni_is_zero(a) {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut q = vec![Q::zero(); a.len() - b.len() + 1];
    while !uni_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let c = r.last().unwrap() / &lb;
        q[dr - db] = c.clone();
        for k in 0..=db {
            let delta = &b[k] * &c;
            r[dr - db + k] -= delta;
        }
        r = uni_trim(r);
    }
    assert!(uni_is_zero(&r), "inexact univariate division");
    uni_trim(q)
}

fn uni_monic(v: &Uni) -> Uni {
    match v.last() {
        None => Vec::new(),
        Some(lc) => uni_scale(v, &lc.recip()),
    }
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let mut a = a.clone();
    let mut b = b.clone();
    while !uni_is_zero(&b) {
        // Monic remainders keep the rational coefficients small.
        let r = uni_monic(&uni_rem(&a, &b));
        a = b;
        b = r;
    }
    if uni_is_zero(&a) {
        Vec::new()
    } else {
        uni_monic(&a)
    }
}

/// λ-coefficient vector: entry k is the ℚ[ν] coefficient of λ^k.
fn to_lambda_coeffs(p: &ParamPoly) -> Vec<Uni> {
    let dl = p.degree_lambda() as usize;
    let mut out = vec![Vec::new(); dl + 1];
    for (e, c) in p.terms() {
        let v = &mut out[e.l as usize];
        if v.len() <= e.n as usize {
            v.resize(e.n as usize + 1, Q::zero());
        }
        v[e.n as usize] += c;
    }
    for v in &mut out {
        *v = uni_trim(std::mem::take(v));
    }
    while out.last().is_some_and(uni_is_zero) {
        out.pop();
    }
    out
}

fn from_lambda_coeffs(coeffs: &[Uni]) -> ParamPoly {
    let mut p = ParamPoly::zero();
    for (l, v) in coeffs.iter().enumerate() {
        for (n, c) in v.iter().enumerate() {
            p.add_term(ParamExp::new(l as u32, n as u32), c.clone());
        }
    }
    p
}

fn lambda_content(coeffs: &[Uni]) -> Uni {
    let mut g: Uni = Vec::new();
    for v in coeffs {
        if uni_is_zero(v) {
            continue;
        }
        g = if uni_is_zero(&g) {
            uni_monic(v)
        } else {
            uni_gcd(&g, v)
        };
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn lambda_primitive(coeffs: &[Uni], content: &Uni) -> Vec<Uni> {
    coeffs.iter().map(|v| {
        if uni_is_zero(v) {
            Vec::new()
        } else {
            uni_div_exact(v, content)
        }
    }).collect()
}

fn lambda_trim(mut v: Vec<Uni>) -> Vec<Uni> {
    while v.last().is_some_and(uni_is_zero) {
        v.pop();
    }
    v
}

/// Content-damped pseudo-remainder of a by b in (ℚ[ν])[λ]: repeat
/// r := lb·r − lr·λ^{dr−db}·b until deg r < deg b. The top coefficient cancels
/// each round, so the λ-degree strictly decreases. Each round strips the
/// ν-content and rescales to a monic leading rational — the result is a
/// content multiple of the true pseudo-remainder, which is all a gcd
/// iteration needs, and it keeps coefficient growth linear instead of
/// exponential.
fn lambda_prem(a: &[Uni], b: &[Uni]) -> Vec<Uni> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<Uni> = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<Uni> = r.iter().map(|v| uni_mul(v, &lb)).collect();
        for (k, bv) in b.iter().enumerate() {
            let idx = dr - db + k;
            next[idx] = uni_sub(&next[idx], &uni_mul(bv, &lr));
        }
        r = lambda_trim(next);
        if !r.is_empty() {
            let cont = lambda_content(&r);
            if cont.len() > 1 {
                r = lambda_primitive(&r, &cont);
            }
            let top = r.last().unwrap().last().unwrap().clone();
            if !top.is_one() {
                let inv = top.recip();
                r = r.iter().map(|v| uni_scale(v, &inv)).collect();
            }
        }
    }
    r
}

/// GCD of two parameter polynomials, normalized to be monic in graded lex.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ParamPoly::one();
    }
    if a.degree_lambda() == 0 && b.degree_lambda() == 0 {
        // Pure ℚ[ν].
        let ga = to_lambda_coeffs(a);
        let gb = to_lambda_coeffs(b);
        let g = uni_gcd(&ga[0], &gb[0]);
        return from_lambda_coeffs(&[g]).monic();
    }
    if a.degree_lambda() == 0 || b.degree_lambda() == 0 {
        // One side is λ-free: gcd divides the content of the other.
        let (flat, tall) = if a.degree_lambda() == 0 { (a, b) } else { (b, a) };
        let tall_c = lambda_content(&to_lambda_coeffs(tall));
        let flat_c = to_lambda_coeffs(flat)[0].clone();
        let g = uni_gcd(&tall_c, &flat_c);
        return from_lambda_coeffs(&[g]).monic();
    }

    let ca = to_lambda_coeffs(a);
    let cb = to_lambda_coeffs(b);
    let cont_a = lambda_content(&ca);
    let cont_b = lambda_content(&cb);
    let cont_g = uni_gcd(&cont_a, &cont_b);
    let mut u = lambda_primitive(&ca, &cont_a);
    let mut v = lambda_primitive(&cb, &cont_b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = lambda_prem(&u, &v);
        u = v;
        v = if r.is_empty() {
            Vec::new()
        } else {
            let c = lambda_content(&r);
            lambda_primitive(&r, &c)
        };
    }
    let prim = from_lambda_coeffs(&u);
    let g = &prim * &from_lambda_coeffs(&[cont_g]);
    g.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> ParamPoly {
        ParamPoly::lambda()
    }

    fn nu() -> ParamPoly {
        ParamPoly::nu()
    }

    fn int(v: i64) -> ParamPoly {
        ParamPoly::constant(qi(v))
    }

    #[test]
    fn graded_lex_order() {
        // total degree dominates, then λ beats ν
        assert!(ParamExp::new(0, 2) > ParamExp::new(1, 0));
        assert!(ParamExp::new(1, 1) > ParamExp::new(0, 2));
        assert!(ParamExp::new(2, 0) > ParamExp::new(1, 1));
    }

    #[test]
    fn arithmetic_and_leading() {
        let p = &(&lam() + &int(1)) * &(&lam() - &int(1));
        let expect = &lam().pow(2) - &int(1);
        assert_eq!(p, expect);
        assert_eq!(p.leading().unwrap().0, ParamExp::new(2, 0));
    }

    #[test]
    fn exact_division() {
        let p = &(&lam() + &nu()) * &(&lam() - &(&nu() + &int(2)));
        let q = p.divide_exact(&(&lam() + &nu())).unwrap();
        assert_eq!(q, &lam() - &(&nu() + &int(2)));
        assert!(p.divide_exact(&(&lam() + &int(7))).is_none());
    }

    #[test]
    fn gcd_shared_factor() {
        let f = &(&lam() + &nu()) * &(&lam() - &int(1));
        let g = &(&lam() + &nu()) * &(&nu() + &int(2));
        let d = poly_gcd(&f, &g);
        assert_eq!(d, (&lam() + &nu()).monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = &lam() + &int(1);
        let g = &nu() + &int(1);
        assert_eq!(poly_gcd(&f, &g), ParamPoly::one());
    }

    #[test]
    fn gcd_univariate_each_axis() {
        let f = &(&nu() + &int(1)).pow(2) * &(&nu() - &int(3));
        let g = &(&nu() + &int(1)) * &(&nu() + &int(5));
        assert_eq!(poly_gcd(&f, &g), (&nu() + &int(1)).monic());

        let f = &(&lam() - &int(2)).pow(3) * &int(4);
        let g = &(&lam() - &int(2)) * &(&lam() + &int(2));
        assert_eq!(poly_gcd(&f, &g), (&lam() - &int(2)).monic());
    }

    #[test]
    fn eval_matches_expansion() {
        let p = &(&lam() * &nu()) + &(&lam().pow(2) - &int(3));
        let v = p.eval(&qi(2), &qi(5));
        assert_eq!(v, qi(2 * 5 + 4 - 3));
    }
}
