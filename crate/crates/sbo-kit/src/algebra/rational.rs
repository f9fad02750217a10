//! The parameter field: rational functions in (λ, ν) in canonical form.
//!
//! Invariants: the denominator is nonzero and monic under graded lex, and
//! gcd(numerator, denominator) = 1. Equality is therefore structural.

use super::param::{poly_gcd, qi, rational_to_f64, ParamPoly, Q};
use num_complex::Complex64;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Rat {
    num: ParamPoly,
    den: ParamPoly,
}

impl Rat {
    /// Build num/den in canonical form. Panics when den = 0.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Rat {
                num: ParamPoly::zero(),
                den: ParamPoly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let num = num.divide_exact(&g).expect("gcd divides numerator");
        let den = den.divide_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().unwrap().1.clone();
        Rat {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        }
    }

    pub fn zero() -> Self {
        Rat {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Rat {
            num: ParamPoly::one(),
            den: ParamPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_q(qi(v))
    }

    pub fn from_q(c: Q) -> Self {
        Rat {
            num: ParamPoly::constant(c),
            den: ParamPoly::one(),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Rat {
            num: p,
            den: ParamPoly::one(),
        }
    }

    /// The symbol λ.
    pub fn lambda() -> Self {
        Self::from_poly(ParamPoly::lambda())
    }

    /// The symbol ν.
    pub fn nu() -> Self {
        Self::from_poly(ParamPoly::nu())
    }

    pub fn numerator(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == ParamPoly::one() && self.den == ParamPoly::one()
    }

    /// Some(c) when this is the constant c.
    pub fn as_q(&self) -> Option<Q> {
        if self.den == ParamPoly::one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Evaluate at rational (λ, ν). None when the denominator vanishes there.
    pub fn eval(&self, lam: &Q, nu: &Q) -> Option<Q> {
        let d = self.den.eval(lam, nu);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(lam, nu) / d)
    }

    pub fn eval_c64(&self, lam: Complex64, nu: Complex64) -> Complex64 {
        let evalp = |p: &ParamPoly| -> Complex64 {
            p.terms().fold(Complex64::zero(), |acc, (e, c)| {
                acc + rational_to_f64(c) * lam.powu(e.l) * nu.powu(e.n)
            })
        };
        evalp(&self.num) / evalp(&self.den)
    }

    pub fn display<'a>(&'a self, names: [&'a str; 2]) -> RatDisplay<'a> {
        RatDisplay { rat: self, names }
    }
}

// Polynomial-over-1 operands stay canonical under +, −, ×, so the gcd
// normalization is skipped on that fast path.
impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if self.den.is_one() && rhs.den.is_one() {
            return Rat {
                num: &self.num + &rhs.num,
                den: ParamPoly::one(),
            };
        }
        Rat::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if self.den.is_one() && rhs.den.is_one() {
            return Rat {
                num: &self.num - &rhs.num,
                den: ParamPoly::one(),
            };
        }
        Rat::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if self.den.is_one() && rhs.den.is_one() {
            return Rat {
                num: &self.num * &rhs.num,
                den: ParamPoly::one(),
            };
        }
        Rat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Rat::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

pub struct RatDisplay<'a> {
    rat: &'a Rat,
    names: [&'a str; 2],
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rat.den == ParamPoly::one() {
            write!(f, "{}", self.rat.num.display(self.names))
        } else {
            write!(
                f,
                "({})/({})",
                self.rat.num.display(self.names),
                self.rat.den.display(self.names)
            )
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(["λ", "ν"]))
    }
}

/// Affine form c0 + cl·λ + cn·ν, the argument type of Gamma factors and the
/// exponent type of kernel expressions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Affine {
    pub c0: Q,
    pub cl: Q,
    pub cn: Q,
}

impl Affine {
    pub fn new(c0: Q, cl: Q, cn: Q) -> Self {
        Affine { c0, cl, cn }
    }

    pub fn constant(c0: Q) -> Self {
        Affine::new(c0, Q::zero(), Q::zero())
    }

    pub fn is_constant(&self) -> bool {
        self.cl.is_zero() && self.cn.is_zero()
    }

    pub fn shift(&self, k: &Q) -> Affine {
        Affine::new(&self.c0 + k, self.cl.clone(), self.cn.clone())
    }

    pub fn to_poly(&self) -> ParamPoly {
        ParamPoly::affine(self.c0.clone(), self.cl.clone(), self.cn.clone())
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_poly(self.to_poly())
    }

    pub fn eval(&self, lam: &Q, nu: &Q) -> Q {
        &self.c0 + &(&self.cl * lam) + &(&self.cn * nu)
    }

    pub fn eval_c64(&self, lam: Complex64, nu: Complex64) -> Complex64 {
        rational_to_f64(&self.c0) + rational_to_f64(&self.cl) * lam + rational_to_f64(&self.cn) * nu
    }

    /// Substitute ν = λ + l, collapsing onto the λ axis.
    pub fn eliminate_nu(&self, l: i64) -> Affine {
        Affine::new(
            &self.c0 + &(&self.cn * &qi(l)),
            &self.cl + &self.cn,
            Q::zero(),
        )
    }

    pub fn display<'a>(&'a self, names: [&'a str; 2]) -> ParamPolyDisplayOwned<'a> {
        ParamPolyDisplayOwned {
            poly: self.to_poly(),
            names,
        }
    }
}

pub struct ParamPolyDisplayOwned<'a> {
    poly: ParamPoly,
    names: [&'a str; 2],
}

impl fmt::Display for ParamPolyDisplayOwned<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display(self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::param::qr;
    use num_traits::One;

    fn lam() -> Rat {
        Rat::lambda()
    }

    fn nu() -> Rat {
        Rat::nu()
    }

    fn int(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (λ² − ν²)/(λ + ν) = λ − ν
        let p = &(&lam() * &lam()) - &(&nu() * &nu());
        let q = &lam() + &nu();
        let r = &p / &q;
        assert_eq!(r, &lam() - &nu());
    }

    #[test]
    fn monic_denominator() {
        // 1/(2λ − 4) normalizes to (1/2)/(λ − 2)
        let r = &int(1) / &(&(&int(2) * &lam()) - &int(4));
        assert_eq!(r.denominator(), (&lam() - &int(2)).numerator());
        assert_eq!(
            r.numerator().as_constant().unwrap(),
            qr(1, 2)
        );
    }

    #[test]
    fn cancellation_identities() {
        let a = &(&lam() + &int(3)) / &(&nu() - &int(1));
        let b = &(&nu() * &lam()) + &int(7);
        assert!((&a - &a).is_zero());
        let prod = &(&a / &b) * &(&b / &a);
        assert!(prod.is_one());
    }

    #[test]
    fn eval_pole_detection() {
        let r = &int(1) / &(&lam() - &int(2));
        assert!(r.eval(&qi(2), &qi(0)).is_none());
        assert_eq!(r.eval(&qi(3), &qi(0)).unwrap(), qi(1));
    }

    #[test]
    fn affine_nu_elimination() {
        // λ + ν − n with ν = λ + l becomes 2λ + l − n
        let a = Affine::new(qi(-4), Q::one(), Q::one());
        let e = a.eliminate_nu(3);
        assert_eq!(e, Affine::new(qi(-1), qi(2), Q::zero()));
    }
}
