//! Floating-point cross-checks: numeric kernel evaluation, adaptive
//! multidimensional quadrature of kernel pairings in the convergence region,
//! Gaussian-moment closed forms, and symbolic-vs-numeric operator agreement.

use crate::algebra::{eval_rational_poly, MultiPolynomial, Rat};
use crate::kernels::{GammaProduct, KernelExpression};
use crate::weyl::ConstCoeffOp;
use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::PI;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum NumericError {
    /// Evaluation at x = 0 or x_n = 0.
    SingularPoint,
    /// A Gamma factor with positive exponent sits at a nonpositive integer.
    GammaPole,
    /// Quadrature requested outside Re λ ≥ |Re ν| + n + 2.
    OutsideConvergenceRegion,
    /// The subdivision budget ran out before reaching the tolerance.
    ToleranceNotReached { achieved: f64 },
}

impl fmt::Display for NumericError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericError::SingularPoint => write!(f, "evaluation at a singular point"),
            NumericError::GammaPole => write!(f, "Gamma pole in the prefactor"),
            NumericError::OutsideConvergenceRegion => {
                write!(f, "parameters outside the quadrature convergence region")
            }
            NumericError::ToleranceNotReached { achieved } => {
                write!(f, "tolerance not reached (achieved ≈ {:.3e})", achieved)
            }
        }
    }
}

impl std::error::Error for NumericError {}

/// Complex log-Gamma via the Lanczos approximation (g = 7, 9 coefficients),
/// with the reflection formula for Re z < 1/2.
pub fn lgamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.5203681218851,
        -1259.1392167224028,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507343278686905,
        -0.13857109526572012,
        9.984_369_578_019_572e-6,
        1.5056327351493116e-7,
    ];
    if z.re < 0.5 {
        // log Γ(z) = log(π / sin(πz)) − log Γ(1 − z)
        let pi_z = PI * z;
        return Complex64::new(PI, 0.0).ln() - pi_z.sin().ln() - lgamma(Complex64::new(1.0, 0.0) - z);
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(COEFFS[0], 0.0);
    for (k, c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + k as f64);
    }
    let t = zm1 + G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(z) for complex z.
pub fn gamma_fn(z: Complex64) -> Complex64 {
    lgamma(z).exp()
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-9 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-9
}

/// Numeric value of a Gamma product at (λ, ν). Factors with negative exponent
/// at a pole contribute zero; positive exponents at a pole are an error.
pub fn gamma_product_eval(
    g: &GammaProduct,
    lam: Complex64,
    nu: Complex64,
) -> Result<Complex64, NumericError> {
    let mut log_sum = Complex64::zero();
    let mut zero_factor = false;
    for (arg, &e) in g.gammas() {
        let z = arg.eval_c64(lam, nu);
        if is_nonpositive_integer(z) {
            if e > 0 {
                return Err(NumericError::GammaPole);
            }
            zero_factor = true;
            continue;
        }
        log_sum += lgamma(z) * e as f64;
    }
    if zero_factor {
        return Ok(Complex64::zero());
    }
    let coeff = g.coeff().eval_c64(lam, nu);
    let pi_pow = PI.powf(g.sqrt_pi() as f64 / 2.0);
    Ok(coeff * pi_pow * log_sum.exp())
}

/// Numeric value of a symbolic kernel entry at a point off the singular set.
pub fn evaluate_kernel(
    entry: &KernelExpression,
    x: &[f64],
    lam: Complex64,
    nu: Complex64,
) -> Result<Complex64, NumericError> {
    let n = entry.dim();
    assert_eq!(x.len(), n);
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let xn = x[n - 1];
    if r2 < 1e-300 || xn.abs() < 1e-300 {
        return Err(NumericError::SingularPoint);
    }
    let mut acc = Complex64::zero();
    for t in entry.terms() {
        let pre = gamma_product_eval(&t.gamma, lam, nu)?;
        if pre.norm() == 0.0 {
            continue;
        }
        let a = t.norm_exp.eval_c64(lam, nu);
        let b = t.abs_exp.eval_c64(lam, nu);
        let mut v = pre
            * (a * r2.ln()).exp()
            * (b * xn.abs().ln()).exp()
            * t.poly.eval_c64(x, lam, nu);
        if t.kappa == 1 && xn < 0.0 {
            v = -v;
        }
        acc += v;
    }
    Ok(acc)
}

/// Polynomial profile times the Gaussian envelope exp(−|x|²).
#[derive(Clone, Debug)]
pub struct TestForm {
    pub poly: MultiPolynomial,
}

impl TestForm {
    pub fn new(poly: MultiPolynomial) -> Self {
        TestForm { poly }
    }

    pub fn constant_one(n: usize) -> Self {
        TestForm {
            poly: MultiPolynomial::one(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        eval_rational_poly(&self.poly, x) * (-r2).exp()
    }
}

/// Apply a constant-coefficient operator with plain rational coefficients to
/// p(x)·exp(−|x|²), returning the new polynomial profile.
pub fn apply_to_gaussian_profile(op: &ConstCoeffOp, p: &MultiPolynomial) -> MultiPolynomial {
    let n = p.dim();
    assert_eq!(op.dim(), n);
    let mut out = MultiPolynomial::zero(n);
    for (d, c) in op.terms() {
        let mut q = p.clone();
        for (k, pw) in d.0.iter().enumerate() {
            for _ in 0..*pw {
                // ∂_k (q e^{−|x|²}) = (∂_k q − 2 x_k q) e^{−|x|²}
                let xk = MultiPolynomial::var(n, k + 1);
                q = &q.derivative(k + 1) - &(&xk * &q).scale(&Rat::from_int(2));
            }
        }
        out = &out + &q.scale(c);
    }
    out
}

/// Central finite difference of ∂^β f at x0 with one Richardson step.
pub fn numeric_derivative(
    f: &dyn Fn(&[f64]) -> f64,
    beta: &[u32],
    x0: &[f64],
    h: f64,
) -> f64 {
    fn diff(f: &dyn Fn(&[f64]) -> f64, beta: &[u32], x: &mut Vec<f64>, h: f64) -> f64 {
        match beta.iter().position(|&b| b > 0) {
            None => f(x),
            Some(k) => {
                let mut b2 = beta.to_vec();
                b2[k] -= 1;
                x[k] += h;
                let plus = diff(f, &b2, x, h);
                x[k] -= 2.0 * h;
                let minus = diff(f, &b2, x, h);
                x[k] += h;
                (plus - minus) / (2.0 * h)
            }
        }
    }
    let mut x = x0.to_vec();
    let d_h = diff(f, beta, &mut x, h);
    let d_h2 = diff(f, beta, &mut x, h / 2.0);
    // O(h²) leading error: Richardson gives (4 d_{h/2} − d_h)/3.
    (4.0 * d_h2 - d_h) / 3.0
}

// ---------------------------------------------------------------------------
// Quadrature.
// ---------------------------------------------------------------------------

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k {
        // Chebyshev initial guess.
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_k(x) and P'_k(x) by recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=k {
                let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = pj;
            }
            let dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for j in 2..=k {
            let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
            p0 = p1;
            p1 = pj;
        }
        let dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

struct Leaf {
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: Complex64,
    err: f64,
    id: u64,
}

/// Deterministic adaptive tensor-product quadrature over a box with global
/// error control: the leaf with the largest error estimate is bisected along
/// its widest dimension until the summed estimates meet the relative
/// tolerance. The integrand may return None at isolated singular points,
/// which are treated as removable (the integrands here extend continuously
/// by 0).
pub fn adaptive_integrate(
    f: &dyn Fn(&[f64]) -> Option<Complex64>,
    lo: &[f64],
    hi: &[f64],
    tol: f64,
    max_cells: usize,
) -> Result<Complex64, NumericError> {
    let dim = lo.len();
    let (n_lo, w_lo) = gauss_legendre(6);
    let (n_hi, w_hi) = gauss_legendre(12);
    let rule = |clo: &[f64], chi: &[f64], nodes: &[f64], weights: &[f64]| -> Complex64 {
        let mut acc = Complex64::zero();
        let mut idx = vec![0usize; dim];
        let mut point = vec![0.0; dim];
        loop {
            let mut w = 1.0;
            for d in 0..dim {
                let mid = 0.5 * (clo[d] + chi[d]);
                let half = 0.5 * (chi[d] - clo[d]);
                point[d] = mid + half * nodes[idx[d]];
                w *= half * weights[idx[d]];
            }
            if let Some(v) = f(&point) {
                acc += w * v;
            }
            // Odometer increment.
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] < nodes.len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == dim {
                    return acc;
                }
            }
        }
    };
    let mut next_id = 0u64;
    let mut evaluate = |clo: Vec<f64>, chi: Vec<f64>| -> Leaf {
        let coarse = rule(&clo, &chi, &n_lo, &w_lo);
        let fine = rule(&clo, &chi, &n_hi, &w_hi);
        let leaf = Leaf {
            lo: clo,
            hi: chi,
            value: fine,
            err: (fine - coarse).norm(),
            id: next_id,
        };
        next_id += 1;
        leaf
    };
    // Worst-leaf-first heap; ties resolved by creation order.
    struct Prio(f64, u64);
    impl PartialEq for Prio {
        fn eq(&self, other: &Self) -> bool {
            self.0.total_cmp(&other.0).is_eq() && self.1 == other.1
        }
    }
    impl Eq for Prio {}
    impl PartialOrd for Prio {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Prio {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0).then(other.1.cmp(&self.1))
        }
    }
    let first = evaluate(lo.to_vec(), hi.to_vec());
    let mut err_total = first.err;
    let mut total = first.value;
    let mut l1 = first.value.norm();
    let mut heap: std::collections::BinaryHeap<(Prio, usize)> = std::collections::BinaryHeap::new();
    let mut leaves: Vec<Leaf> = Vec::new();
    heap.push((Prio(first.err, first.id), 0));
    leaves.push(first);
    loop {
        // Relative control against the running total, with a floor guarding
        // against fully cancelling integrals.
        let scale = total.norm().max(1e-9 * l1).max(1e-300);
        if err_total <= tol * scale {
            break;
        }
        if leaves.len() >= max_cells {
            return Err(NumericError::ToleranceNotReached {
                achieved: err_total / scale,
            });
        }
        let (_, slot) = heap.pop().expect("nonempty heap while error remains");
        let cell = std::mem::replace(
            &mut leaves[slot],
            Leaf {
                lo: Vec::new(),
                hi: Vec::new(),
                value: Complex64::zero(),
                err: 0.0,
                id: u64::MAX,
            },
        );
        err_total -= cell.err;
        total -= cell.value;
        l1 -= cell.value.norm();
        let (widest, _) = cell
            .lo
            .iter()
            .zip(cell.hi.iter())
            .map(|(a, b)| b - a)
            .enumerate()
            .fold((0usize, f64::MIN), |best, (d, w)| {
                if w > best.1 {
                    (d, w)
                } else {
                    best
                }
            });
        let mid = 0.5 * (cell.lo[widest] + cell.hi[widest]);
        let mut left_hi = cell.hi.clone();
        left_hi[widest] = mid;
        let mut right_lo = cell.lo.clone();
        right_lo[widest] = mid;
        let left = evaluate(cell.lo, left_hi);
        let right = evaluate(right_lo, cell.hi);
        err_total += left.err + right.err;
        total += left.value + right.value;
        l1 += left.value.norm() + right.value.norm();
        heap.push((Prio(left.err, left.id), slot));
        leaves[slot] = left;
        heap.push((Prio(right.err, right.id), leaves.len()));
        leaves.push(right);
    }
    // Deterministic summation order.
    leaves.sort_by_key(|l| l.id);
    Ok(leaves
        .iter()
        .filter(|l| l.id != u64::MAX)
        .fold(Complex64::zero(), |acc, l| acc + l.value))
}

/// Adaptive quadrature of ∫ entry(y) · f(x0 − y) dy at a base point on the
/// hyperplane {x_n = 0}, inside the guard region Re λ ≥ |Re ν| + n + 2 where
/// the integrand extends continuously by 0 across the singular set.
pub fn integrate_pairing(
    entry: &KernelExpression,
    f: &TestForm,
    x0: &[f64],
    lam: Complex64,
    nu: Complex64,
    tol: f64,
) -> Result<Complex64, NumericError> {
    let n = entry.dim();
    assert_eq!(f.dim(), n);
    assert_eq!(x0.len(), n);
    assert!(
        x0[n - 1] == 0.0,
        "evaluation point must lie on the hyperplane"
    );
    if lam.re < nu.re.abs() + n as f64 + 2.0 {
        return Err(NumericError::OutsideConvergenceRegion);
    }
    let radius = 8.5;
    let lo: Vec<f64> = x0.iter().map(|c| c - radius).collect();
    let hi: Vec<f64> = x0.iter().map(|c| c + radius).collect();
    let integrand = |y: &[f64]| -> Option<Complex64> {
        let shifted: Vec<f64> = x0.iter().zip(y.iter()).map(|(c, v)| c - v).collect();
        match evaluate_kernel(entry, y, lam, nu) {
            Ok(v) => Some(v * f.value(&shifted)),
            Err(NumericError::SingularPoint) => None,
            Err(_) => None,
        }
    };
    adaptive_integrate(&integrand, &lo, &hi, tol, 60_000)
}

/// Closed form of the pure-Gaussian pairing of the normalized scalar kernel
/// at x0 = 0: ⟨Ã⁺_{λ,ν}, e^{−|y|²}⟩ = π^{(n−1)/2} / Γ((λ+ν)/2).
pub fn scalar_gaussian_pairing_closed_form(n: usize, lam: Complex64, nu: Complex64) -> Complex64 {
    PI.powf((n as f64 - 1.0) / 2.0) * (-lgamma((lam + nu) / 2.0)).exp()
}

/// Closed form of the Gaussian moment
/// ∫ |y|^{2A} |y_n|^B sgn(y_n)^κ y^γ e^{−|y|²} dy =
///   Γ((2A+B+|γ|+n)/2) · ∏_{k<n} Γ((γ_k+1)/2) · Γ((B+γ_n+1)/2) / Γ((B+|γ|+n)/2),
/// zero when a tangential γ_k is odd or γ_n + κ is odd.
pub fn gaussian_moment(
    a2: Complex64,
    b: Complex64,
    gamma: &[u32],
    kappa: u8,
) -> Complex64 {
    let n = gamma.len();
    for &g in &gamma[..n - 1] {
        if g % 2 == 1 {
            return Complex64::zero();
        }
    }
    if (gamma[n - 1] + kappa as u32) % 2 == 1 {
        return Complex64::zero();
    }
    let total: u32 = gamma.iter().sum();
    let mut log = lgamma((2.0 * a2 + b + total as f64 + n as f64) / 2.0);
    for &g in &gamma[..n - 1] {
        log += lgamma(Complex64::new((g as f64 + 1.0) / 2.0, 0.0));
    }
    log += lgamma((b + gamma[n - 1] as f64 + 1.0) / 2.0);
    log -= lgamma((b + total as f64 + n as f64) / 2.0);
    log.exp()
}

/// Pairing ⟨entry, poly·e^{−|y|²}⟩ at x0 = 0 through the Gaussian-moment
/// closed forms; this is the analytic continuation in (λ, ν) and stays valid
/// outside the quadrature convergence region.
pub fn moment_pairing(
    entry: &KernelExpression,
    profile: &MultiPolynomial,
    lam: Complex64,
    nu: Complex64,
) -> Result<Complex64, NumericError> {
    let n = entry.dim();
    assert_eq!(profile.dim(), n);
    let mut acc = Complex64::zero();
    for t in entry.terms() {
        let pre = gamma_product_eval(&t.gamma, lam, nu)?;
        let a2 = t.norm_exp.eval_c64(lam, nu);
        let b = t.abs_exp.eval_c64(lam, nu);
        let combined = &t.poly * profile;
        for (e, c) in combined.terms() {
            let m = gaussian_moment(a2, b, &e.0, t.kappa);
            acc += pre * c.eval_c64(lam, nu) * m;
        }
    }
    Ok(acc)
}
