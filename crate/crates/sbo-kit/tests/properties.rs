//! Property tests for the algebraic invariants of the exact core.

use num_traits::{One, Zero};
use proptest::prelude::*;
use sbo_kit::algebra::{qi, IndexSet, MultiPolynomial, ParamExp, ParamPoly, Rat, XExp};
use sbo_kit::kernels::GammaProduct;
use sbo_kit::weyl::WeylElement;

fn arb_param_poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(
        (0..=max_deg, 0..=max_deg, -6i64..=6),
        1..=max_terms,
    )
    .prop_map(|terms| {
        let mut p = ParamPoly::zero();
        for (l, n, c) in terms {
            p = &p + &ParamPoly::monomial(ParamExp::new(l, n), qi(c));
        }
        p
    })
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (arb_param_poly(4, 3), arb_param_poly(4, 2)).prop_filter_map(
        "nonzero denominator",
        |(num, den)| {
            if den.is_zero() {
                None
            } else {
                Some(Rat::new(num, den))
            }
        },
    )
}

/// Low-degree operands: the triple product keeps gcd inputs at the sizes the
/// library actually produces (affine denominators, small numerators).
fn arb_small_rat() -> impl Strategy<Value = Rat> {
    (arb_param_poly(2, 1), arb_param_poly(2, 1)).prop_filter_map(
        "nonzero denominator",
        |(num, den)| {
            if den.is_zero() {
                None
            } else {
                Some(Rat::new(num, den))
            }
        },
    )
}

fn arb_weyl(n: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=2, n),
            prop::collection::vec(0u32..=2, n),
            -4i64..=4,
        ),
        1..=4,
    )
    .prop_map(move |terms| {
        let mut w = WeylElement::zero(n);
        for (x, d, c) in terms {
            w = &w + &WeylElement::monomial(n, XExp(x), XExp(d), Rat::from_int(c));
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_self_subtraction_is_zero(a in arb_rat()) {
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rat_cross_ratio_is_one(a in arb_rat(), b in arb_rat()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = &(&a / &b) * &(&b / &a);
        prop_assert!(prod.is_one());
    }

    #[test]
    fn rat_add_mul_distribute(
        a in arb_small_rat(),
        b in arb_small_rat(),
        c in arb_small_rat(),
    ) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_product_associative(
        p in arb_weyl(3),
        q in arb_weyl(3),
        r in arb_weyl(3),
    ) {
        let lhs = &(&p * &q) * &r;
        let rhs = &p * &(&q * &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_product_associative_dim4(
        p in arb_weyl(4),
        q in arb_weyl(4),
        r in arb_weyl(4),
    ) {
        let lhs = &(&p * &q) * &r;
        let rhs = &p * &(&q * &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_reduction_matches_direct_pairing(
        p in arb_weyl(2),
        g1 in 0u32..=4,
        g2 in 0u32..=4,
    ) {
        let gamma = XExp(vec![g1, g2]);
        let reduced = p.reduce_mod_annihilator();
        prop_assert_eq!(
            reduced.pair_delta_monomial(&gamma),
            p.pair_delta_direct(&gamma)
        );
    }

    #[test]
    fn s_polynomial_symmetric(
        seed in 0u64..1_000_000,
    ) {
        // Draw two random index sets of equal cardinality from {1..5}.
        let n = 5u32;
        let mut s = seed;
        let mut pick = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as u32
        };
        let card = (pick() % 3) as usize;
        let all = IndexSet::all(n, card);
        let a = all[(pick() as usize) % all.len()].clone();
        let b = all[(pick() as usize) % all.len()].clone();
        prop_assert_eq!(
            sbo_kit::algebra::s_polynomial(&a, &b, n),
            sbo_kit::algebra::s_polynomial(&b, &a, n)
        );
    }

    #[test]
    fn gamma_normalize_respects_products(
        c0a in -4i64..=4,
        c0b in -4i64..=4,
        ea in -2i64..=2,
        eb in -2i64..=2,
    ) {
        use sbo_kit::algebra::Affine;
        use sbo_kit::algebra::Q;
        // Symbolic arguments in the same λ-class and a ν-class.
        let a = GammaProduct::gamma_pow(Affine::new(qi(c0a), Q::one(), Q::zero()), ea);
        let b = GammaProduct::gamma_pow(Affine::new(qi(c0b), Q::zero(), Q::one()), eb)
            .mul_rat(&Rat::from_int(3));
        let lhs = a.mul(&b).normalize().unwrap();
        let rhs = a
            .normalize()
            .unwrap()
            .mul(&b.normalize().unwrap())
            .normalize()
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_sub_self_is_zero(coef in -5i64..=5, a0 in -3i64..=3) {
        use sbo_kit::algebra::{Affine, Q};
        let n = 2;
        let poly = &MultiPolynomial::one(n).scale(&Rat::from_int(coef.max(1)))
            + &MultiPolynomial::var(n, 1).pow(2);
        let entry = sbo_kit::kernels::KernelExpression::single(
            n,
            GammaProduct::gamma_pow(Affine::new(qi(a0), Q::one(), Q::zero()), -1),
            Affine::new(qi(-1), Q::zero(), -Q::one()),
            Affine::new(qi(-2), Q::one(), Q::one()),
            0,
            poly,
        );
        prop_assert!(entry.sub(&entry).canonical().unwrap().terms().is_empty());
    }
}
