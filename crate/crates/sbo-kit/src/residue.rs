//! End-to-end verification pipelines: the Weyl-algebra identities for Juhl
//! kernels, the reduction of matrix kernel components to scalar ones, the
//! matrix-valued residue formula, and the vanishing classification with its
//! brute-force oracle.
//!
//! Throughout, λ is symbolic with ν = λ + l eliminated, so every scalar is a
//! rational function of λ alone; identities are exact comparisons of
//! constant-coefficient operators.

use crate::algebra::{qi, qr, Affine, IndexSet, MultiPolynomial, OperatorSignature, Q, Rat};
use crate::gegenbauer::parity_gamma;
use crate::kernels::{g_polynomial, GammaProduct};
use crate::operators::{juhl_kernel, sbo_components, sbo_differential_at};
use crate::weyl::{ConstCoeffOp, WeylElement};
use num_traits::{One, Signed, Zero};

/// A single verified identity, with canonical forms retained on failure.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub pass: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

impl IdentityCheck {
    fn compare(label: String, lhs: &ConstCoeffOp, rhs: &ConstCoeffOp) -> Self {
        let pass = lhs == rhs;
        IdentityCheck {
            label,
            pass,
            lhs: (!pass).then(|| lhs.to_string()),
            rhs: (!pass).then(|| rhs.to_string()),
        }
    }
}

fn reduce_x_product(poly: &MultiPolynomial, kernel: &ConstCoeffOp) -> ConstCoeffOp {
    (&WeylElement::from_x_poly(poly) * &kernel.into_weyl()).reduce_mod_annihilator()
}

/// Verify, for symbolic λ and every 0 ≤ l ≤ lmax, the multiplication
/// identities of the Juhl kernels 𝒞_{λ,ν} (ν = λ + l) modulo the annihilator
/// of δ:
///
/// * x_p 𝒞_{λ,ν} = −2 ∂_p 𝒞_{λ+1,ν−1}                        (tangential p)
/// * x_n 𝒞_{λ,ν} = −2 γ(λ−(n−1)/2, l) 𝒞_{λ+1,ν}
/// * x_p x_n 𝒞_{λ−1,ν+1} = 4 γ(λ−(n−1)/2, l) ∂_p 𝒞_{λ+1,ν}
/// * x_p x_q 𝒞_{λ−1,ν+1} = 4 ∂_p ∂_q 𝒞_{λ+1,ν−1}             (p ≠ q)
/// * x_p² 𝒞_{λ−1,ν+1} = 4 ∂_p² 𝒞_{λ+1,ν−1} + 2 𝒞_{λ,ν}
/// * x_n² 𝒞_{λ−1,ν+1} = 4(λ−(n−1)/2+⌊(l+1)/2⌋) 𝒞_{λ+1,ν+1}
///   = 2(2ν−n+1) 𝒞_{λ,ν} − 4 Δ′ 𝒞_{λ+1,ν−1}
/// * Q_{n−1} 𝒞_{λ−1,ν+1} = 4ν 𝒞_{λ,ν} − 4(λ−(n−1)/2+⌊(l+1)/2⌋) 𝒞_{λ+1,ν+1}
///
/// with Q_{n−1}(x) = x₁² + ⋯ + x_{n−1}².
pub fn juhl_weyl_identities(n: u32, lmax: i64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for l in 0..=lmax {
        out.extend(juhl_weyl_identities_at(n, l));
    }
    out
}

/// The identities of [`juhl_weyl_identities`] at a single order l.
pub fn juhl_weyl_identities_at(n: u32, l: i64) -> Vec<IdentityCheck> {
    assert!(n >= 2, "needs at least one tangential variable");
    assert!(l >= 0);
    let nn = n as usize;
    let lam = Rat::lambda();
    let half_nm1 = Rat::from_q(qr(n as i64 - 1, 2));
    let mut out = Vec::new();
    let xv = |k: usize| MultiPolynomial::var(nn, k);
    {
        let c_base = juhl_kernel(nn, l, &lam);
        let c_up = juhl_kernel(nn, l + 2, &lam.add_int(-1)); // 𝒞_{λ−1,ν+1}
        let c_down = juhl_kernel(nn, l - 2, &lam.add_int(1)); // 𝒞_{λ+1,ν−1}
        let c_shift = juhl_kernel(nn, l - 1, &lam.add_int(1)); // 𝒞_{λ+1,ν}
        let c_same = juhl_kernel(nn, l, &lam.add_int(1)); // 𝒞_{λ+1,ν+1}
        let gam = parity_gamma(&(&lam - &half_nm1), l as u32);
        let beta = &(&lam - &half_nm1) + &Rat::from_int((l + 1) / 2);
        let nu = lam.add_int(l);

        // Tangential first-order relation, one representative p plus p = 1.
        for p in [1usize, nn - 1] {
            let lhs = reduce_x_product(&xv(p), &c_base);
            let rhs = (&ConstCoeffOp::partial(nn, p) * &c_down).scale(&Rat::from_int(-2));
            out.push(IdentityCheck::compare(
                format!("x_{} lowering, n={} l={}", p, n, l),
                &lhs,
                &rhs,
            ));
        }
        // Normal first-order relation.
        let lhs = reduce_x_product(&xv(nn), &c_base);
        let rhs = c_shift.scale(&gam.scale_int(-2));
        out.push(IdentityCheck::compare(
            format!("x_n lowering, n={} l={}", n, l),
            &lhs,
            &rhs,
        ));
        // Mixed tangential-normal.
        let lhs = reduce_x_product(&(&xv(1) * &xv(nn)), &c_up);
        let rhs = (&ConstCoeffOp::partial(nn, 1) * &c_shift).scale(&gam.scale_int(4));
        out.push(IdentityCheck::compare(
            format!("x_p x_n, n={} l={}", n, l),
            &lhs,
            &rhs,
        ));
        // Mixed tangential pair (needs two tangential variables).
        if nn >= 3 {
            let lhs = reduce_x_product(&(&xv(1) * &xv(2)), &c_up);
            let rhs = (&(&ConstCoeffOp::partial(nn, 1) * &ConstCoeffOp::partial(nn, 2)) * &c_down)
                .scale(&Rat::from_int(4));
            out.push(IdentityCheck::compare(
                format!("x_p x_q, n={} l={}", n, l),
                &lhs,
                &rhs,
            ));
        }
        // Tangential square.
        let lhs = reduce_x_product(&xv(1).pow(2), &c_up);
        let rhs = &(&ConstCoeffOp::partial(nn, 1).pow(2) * &c_down).scale(&Rat::from_int(4))
            + &c_base.scale(&Rat::from_int(2));
        out.push(IdentityCheck::compare(
            format!("x_p², n={} l={}", n, l),
            &lhs,
            &rhs,
        ));
        // Normal square, both displayed forms.
        let lhs = reduce_x_product(&xv(nn).pow(2), &c_up);
        let rhs1 = c_same.scale(&beta.scale_int(4));
        out.push(IdentityCheck::compare(
            format!("x_n² (first form), n={} l={}", n, l),
            &lhs,
            &rhs1,
        ));
        let two_nu = &nu.scale_int(4) + &Rat::from_int(2 - 2 * n as i64);
        let rhs2 = &c_base.scale(&two_nu)
            - &(&ConstCoeffOp::laplacian_tangential(nn) * &c_down).scale(&Rat::from_int(4));
        out.push(IdentityCheck::compare(
            format!("x_n² (three-term form), n={} l={}", n, l),
            &lhs,
            &rhs2,
        ));
        // Tangential norm square Q_{n−1}.
        let q_poly = MultiPolynomial::norm_square_tangential(nn);
        let lhs = reduce_x_product(&q_poly, &c_up);
        let rhs = &c_base.scale(&nu.scale_int(4)) - &c_same.scale(&beta.scale_int(4));
        out.push(IdentityCheck::compare(
            format!("Q_{{n−1}}, n={} l={}", n, l),
            &lhs,
            &rhs,
        ));
    }
    out
}

/// The scalar residue constant q_C^A(λ, ν) = (−1)^m m! π^{(n−1)/2} / (2^{2m} Γ(ν))
/// at ν − λ = 2m, with ν kept symbolic.
pub fn scalar_residue_constant(n: u32, m: u32) -> GammaProduct {
    let sign = if m % 2 == 1 { -1 } else { 1 };
    let coeff = Rat::from_q(&(&qi(sign) * &crate::algebra::factorial(m)) / &qi(2).pow(2 * m as i32));
    GammaProduct::rat(coeff)
        .mul(&GammaProduct::sqrt_pi_pow(n as i64 - 1))
        .mul(&GammaProduct::gamma_pow(
            Affine::new(Q::zero(), Q::zero(), Q::one()),
            -1,
        ))
}

/// The constant of the matrix residue formula,
/// (−1)^{i−j+m+κ} π^{(n−1)/2} m! / (2^{2m−1+3κ} Γ(ν+1)), with Γ(ν+1) written
/// in symbolic ν when `nu_symbolic`, else with ν = λ + 2m + κ eliminated.
pub fn matrix_residue_constant(sig: &OperatorSignature, m: u32, nu_symbolic: bool) -> GammaProduct {
    let kappa = sig.kappa as i64;
    let sign = if (sig.i as i64 - sig.j as i64 + m as i64 + kappa) % 2 != 0 {
        -1
    } else {
        1
    };
    let power = 2 * m as i64 - 1 + 3 * kappa;
    let coeff = Rat::from_q(
        &(&qi(sign) * &crate::algebra::factorial(m)) / &qi(2).pow(power as i32),
    );
    let gamma_arg = if nu_symbolic {
        Affine::new(Q::one(), Q::zero(), Q::one())
    } else {
        Affine::new(qi(2 * m as i64 + kappa + 1), Q::one(), Q::zero())
    };
    GammaProduct::rat(coeff)
        .mul(&GammaProduct::sqrt_pi_pow(sig.n as i64 - 1))
        .mul(&GammaProduct::gamma_pow(gamma_arg, -1))
}

/// The residue representative of the kernel entry (Ã^{i,j}_{ε(κ)})_{IJ} at
/// ν − λ = 2m + κ, as a Gamma-product prefactor together with the
/// distribution supported at the origin it multiplies:
///
/// * κ = 0: (−1)^m m! π^{(n−1)/2}/(2^{2m+2} Γ(ν+1)) · (g_{IJ} 𝒞_{λ−1,ν+1} mod 𝒥)
/// * κ = 1: (−1)^m m! π^{(n−1)/2}/(2^{2m+5} (λ+ν−n) Γ(ν+1)) · (x_n g_{IJ} 𝒞_{λ−2,ν+1} mod 𝒥)
pub fn residue_reduce(
    sig: &OperatorSignature,
    m: u32,
    i_set: &IndexSet,
    j_set: &IndexSet,
) -> (GammaProduct, ConstCoeffOp) {
    let nn = sig.n as usize;
    let l = 2 * m as i64 + sig.kappa as i64;
    let lam = Rat::lambda();
    let g = g_polynomial(sig, i_set, j_set);
    let sign = if m % 2 == 1 { -1 } else { 1 };
    let m_fact = crate::algebra::factorial(m);
    if sig.kappa == 0 {
        let kernel = juhl_kernel(nn, l + 2, &lam.add_int(-1));
        let op = reduce_x_product(&g, &kernel);
        let coeff = Rat::from_q(&(&qi(sign) * &m_fact) / &qi(2).pow(2 * m as i32 + 2));
        let pre = GammaProduct::rat(coeff)
            .mul(&GammaProduct::sqrt_pi_pow(sig.n as i64 - 1))
            .mul(&GammaProduct::gamma_pow(
                Affine::new(qi(2 * m as i64 + 1), Q::one(), Q::zero()),
                -1,
            ));
        (pre, op)
    } else {
        let kernel = juhl_kernel(nn, l + 3, &lam.add_int(-2));
        let xng = g.mul_var(nn);
        let op = reduce_x_product(&xng, &kernel);
        // λ + ν − n with ν eliminated: 2λ + 2m + 1 − n.
        let lin = &lam.scale_int(2) + &Rat::from_int(2 * m as i64 + 1 - sig.n as i64);
        let coeff = &Rat::from_q(&(&qi(sign) * &m_fact) / &qi(2).pow(2 * m as i32 + 5)) / &lin;
        let pre = GammaProduct::rat(coeff)
            .mul(&GammaProduct::sqrt_pi_pow(sig.n as i64 - 1))
            .mul(&GammaProduct::gamma_pow(
                Affine::new(qi(2 * m as i64 + 2), Q::one(), Q::zero()),
                -1,
            ));
        (pre, op)
    }
}

/// One entry of a matrix verification.
#[derive(Clone, Debug)]
pub struct EntryReport {
    pub i_set: IndexSet,
    pub j_set: IndexSet,
    pub pass: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

/// Verify g_{IJ} 𝒞_{λ−1,ν+1} = 8(−1)^{i−j} (𝒞^{i,j}_{λ,ν})_{IJ} mod 𝒥 for
/// symbolic λ, ν = λ + l.
pub fn proposition_gc_check(
    sig: &OperatorSignature,
    l: i64,
    i_set: &IndexSet,
    j_set: &IndexSet,
) -> EntryReport {
    let nn = sig.n as usize;
    let lam = Rat::lambda();
    let g = g_polynomial(sig, i_set, j_set);
    let kernel = juhl_kernel(nn, l + 2, &lam.add_int(-1));
    let lhs = reduce_x_product(&g, &kernel);
    let sign = if (sig.i as i64 - sig.j as i64) % 2 != 0 {
        -8
    } else {
        8
    };
    let rhs = sbo_components(sig, l, i_set, j_set, &lam).scale(&Rat::from_int(sign));
    let pass = lhs == rhs;
    EntryReport {
        i_set: i_set.clone(),
        j_set: j_set.clone(),
        pass,
        lhs: (!pass).then(|| lhs.to_string()),
        rhs: (!pass).then(|| rhs.to_string()),
    }
}

/// Result of checking the matrix residue formula at one (signature, m).
#[derive(Clone, Debug)]
pub struct MatrixResidueReport {
    pub sig: OperatorSignature,
    pub m: u32,
    pub pass: bool,
    pub entries: Vec<EntryReport>,
}

/// Verify, entrywise with constants included, that the residue representative
/// of Ã^{i,j} at ν − λ = 2m + κ equals
/// (−1)^{i−j+m+κ} π^{(n−1)/2} m! / (2^{2m−1+3κ} Γ(ν+1)) · C^{i,j}_{λ,ν},
/// with C^{i,j} assembled from its compositional definition.
pub fn main_theorem_check(sig: &OperatorSignature, m: u32) -> MatrixResidueReport {
    let l = 2 * m as i64 + sig.kappa as i64;
    let operator = sbo_differential_at(sig, l, &Rat::lambda());
    let rhs_const = matrix_residue_constant(sig, m, false);
    let mut entries = Vec::new();
    let mut pass = true;
    for i_set in IndexSet::all(sig.n, sig.i as usize) {
        for j_set in IndexSet::all(sig.n - 1, sig.j as usize) {
            let (pre, lhs_op) = residue_reduce(sig, m, &i_set, &j_set);
            let ratio = rhs_const
                .ratio_rat(&pre)
                .expect("residue constants differ by a rational function");
            let rhs_op = operator.entry(&i_set, &j_set).scale(&ratio);
            let ok = lhs_op == rhs_op;
            pass &= ok;
            entries.push(EntryReport {
                i_set: i_set.clone(),
                j_set: j_set.clone(),
                pass: ok,
                lhs: (!ok).then(|| lhs_op.to_string()),
                rhs: (!ok).then(|| rhs_op.to_string()),
            });
        }
    }
    MatrixResidueReport {
        sig: *sig,
        m,
        pass,
        entries,
    }
}

/// The integer-point lattices where normalized operators may vanish:
/// L_even = {(−a,−b) : 0 ≤ b ≤ a, a ≡ b (mod 2)}, L_odd with a ≡ b+1.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParityLattice;

impl ParityLattice {
    /// Membership in L_even (κ = 0) or L_odd (κ = 1).
    pub fn contains(&self, lam: &Q, nu: &Q, kappa: u8) -> bool {
        if !lam.is_integer() || !nu.is_integer() {
            return false;
        }
        let gap = nu - lam;
        if gap.is_negative() || &gap % &qi(2) != qi(kappa as i64) {
            return false;
        }
        // (λ, ν) = (−a, −b) with 0 ≤ b ≤ a means λ ≤ ν ≤ 0.
        nu <= &Q::zero() && lam <= nu
    }
}

/// Which branch of the vanishing classification matched.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VanishVerdict {
    /// ν − λ ∉ 2ℕ + κ: nonzero by the support argument.
    OffParity,
    /// Inside the parity lattice (with the ν = 0 boundary kept).
    Lattice,
    /// Inside the parity lattice minus {ν = 0}.
    LatticePunctured,
    /// The extra isolated point (i, i) or (n−i, n−i).
    IsolatedPoint,
    /// No branch matched: nonzero.
    Nonzero,
}

/// Decide whether the admissible parity holds: ν − λ ∈ 2ℕ + κ.
pub fn admissible_parity(lam: &Q, nu: &Q, kappa: u8) -> bool {
    let gap = nu - lam;
    gap.is_integer() && !gap.is_negative() && &gap % &qi(2) == qi(kappa as i64)
}

/// Exact vanishing set of the normalized operator family at (λ, ν), by the
/// classification case lists.
pub fn vanish_classifier(lam: &Q, nu: &Q, kappa: u8, sig: &OperatorSignature) -> bool {
    vanish_classify(lam, nu, kappa, sig).0
}

/// Classifier with the matched branch attached.
pub fn vanish_classify(
    lam: &Q,
    nu: &Q,
    kappa: u8,
    sig: &OperatorSignature,
) -> (bool, VanishVerdict) {
    assert!(kappa <= 1);
    if !admissible_parity(lam, nu, kappa) {
        return (false, VanishVerdict::OffParity);
    }
    let lattice = ParityLattice;
    let in_l = lattice.contains(lam, nu, kappa);
    let n = sig.n as i64;
    let i = sig.i as i64;
    if sig.j == sig.i {
        if sig.i == 0 {
            return if in_l {
                (true, VanishVerdict::Lattice)
            } else {
                (false, VanishVerdict::Nonzero)
            };
        }
        // 1 ≤ i ≤ n−1 (i = n is an invalid signature for j = i).
        if in_l && !nu.is_zero() {
            return (true, VanishVerdict::LatticePunctured);
        }
        if kappa == 0 && lam == &qi(i) && nu == &qi(i) {
            return (true, VanishVerdict::IsolatedPoint);
        }
        (false, VanishVerdict::Nonzero)
    } else {
        if sig.i as i64 == n {
            return if in_l {
                (true, VanishVerdict::Lattice)
            } else {
                (false, VanishVerdict::Nonzero)
            };
        }
        // 1 ≤ i ≤ n−1.
        if in_l && !nu.is_zero() {
            return (true, VanishVerdict::LatticePunctured);
        }
        if kappa == 0 && lam == &qi(n - i) && nu == &qi(n - i) {
            return (true, VanishVerdict::IsolatedPoint);
        }
        (false, VanishVerdict::Nonzero)
    }
}

/// Independent vanishing oracle via the residue formula: the normalized
/// operator vanishes iff 1/Γ(ν+1) = 0 (ν a negative integer) or the
/// specialized differential operator C^{i,j}_{λ,ν} is identically zero.
pub fn vanish_bruteforce(lam: &Q, nu: &Q, kappa: u8, sig: &OperatorSignature) -> bool {
    assert!(
        admissible_parity(lam, nu, kappa),
        "brute-force oracle requires ν − λ ∈ 2ℕ + κ"
    );
    if nu.is_integer() && *nu <= -Q::one() {
        return true;
    }
    let l = (nu - lam).to_integer();
    let l: i64 = i64::try_from(l).expect("order fits i64");
    let op = sbo_differential_at(sig, l, &Rat::from_q(lam.clone()));
    op.is_zero()
}
