//! Index sets 𝕴_{n,i}, the sign conventions attached to them, the quadratic
//! polynomials S_{IJ}, and basis projection onto the hyperplane.
//!
//! Index sets label the standard bases e_I, dx_I of exterior powers; all
//! indices are 1-based and stored strictly increasing.

use super::rational::Rat;
use super::xpoly::MultiPolynomial;
use std::fmt;

/// Strictly increasing subset of {1..n} of declared cardinality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct IndexSet(Vec<u32>);

impl IndexSet {
    /// Build from a list of distinct indices; sorts and validates.
    pub fn new(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        for w in v.windows(2) {
            assert!(w[0] < w[1], "index set has repeated element {}", w[0]);
        }
        assert!(v.first().is_none_or(|&k| k >= 1), "indices are 1-based");
        IndexSet(v)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn card(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// 1-based position of k among the sorted elements.
    pub fn position(&self, k: u32) -> Option<usize> {
        self.0.binary_search(&k).ok().map(|p| p + 1)
    }

    pub fn insert(&self, k: u32) -> IndexSet {
        assert!(!self.contains(k));
        let mut v = self.0.clone();
        v.push(k);
        IndexSet::new(v)
    }

    pub fn remove(&self, k: u32) -> IndexSet {
        assert!(self.contains(k));
        IndexSet(self.0.iter().copied().filter(|&x| x != k).collect())
    }

    pub fn difference(&self, other: &IndexSet) -> Vec<u32> {
        self.0
            .iter()
            .copied()
            .filter(|&k| !other.contains(k))
            .collect()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(
            self.0
                .iter()
                .copied()
                .filter(|&k| other.contains(k))
                .collect(),
        )
    }

    /// All i-element subsets of {1..n}, lexicographically ordered.
    pub fn all(n: u32, i: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(i);
        fn rec(start: u32, n: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<IndexSet>) {
            if left == 0 {
                out.push(IndexSet(cur.clone()));
                return;
            }
            for k in start..=n {
                if (n - k + 1) as usize >= left {
                    cur.push(k);
                    rec(k + 1, n, left - 1, cur, out);
                    cur.pop();
                }
            }
        }
        if i <= n as usize {
            rec(1, n, i, &mut cur, &mut out);
        }
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

/// Degrees and parity of a symmetry breaking operator ℰ^i(ℝⁿ) → ℰ^j(ℝ^{n−1}).
///
/// κ = 0 selects the even (+) family, κ = 1 the odd (−) family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct OperatorSignature {
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub kappa: u8,
}

impl OperatorSignature {
    pub fn new(n: u32, i: u32, j: u32, kappa: u8) -> Self {
        let sig = OperatorSignature { n, i, j, kappa };
        assert!(sig.is_valid(), "invalid operator signature {:?}", sig);
        sig
    }

    pub fn is_valid(&self) -> bool {
        if self.n < 1 || self.i > self.n || self.kappa > 1 || self.j > self.n - 1 {
            return false;
        }
        self.j == self.i || self.j + 1 == self.i
    }

    pub fn lowers_degree(&self) -> bool {
        self.j + 1 == self.i
    }
}

/// sgn(K; p, q) = (−1)^{#{r ∈ K : min(p,q) < r < max(p,q)}}.
pub fn sign_between(k: &IndexSet, p: u32, q: u32) -> i64 {
    assert!(p != q, "sign_between requires p ≠ q");
    assert!(p >= 1 && q >= 1);
    let (lo, hi) = (p.min(q), p.max(q));
    let count = k.iter().filter(|&r| lo < r && r < hi).count();
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// sgn(I, I′) for #I = #I′ and #(I∖I′) = 1: sign_between on the intersection,
/// taken at the two exchanged indices.
pub fn sign_pair(i1: &IndexSet, i2: &IndexSet) -> i64 {
    assert_eq!(i1.card(), i2.card(), "sign_pair needs equal cardinalities");
    let d1 = i1.difference(i2);
    let d2 = i2.difference(i1);
    assert!(
        d1.len() == 1 && d2.len() == 1,
        "sign_pair needs sets exchanging exactly one index"
    );
    sign_between(&i1.intersection(i2), d1[0], d2[0])
}

/// ε_I(k): +1 when k ∈ I, −1 otherwise.
pub fn epsilon_weight(i: &IndexSet, k: u32, n: u32) -> i64 {
    assert!(k >= 1 && k <= n, "index {} out of range 1..={}", k, n);
    if i.contains(k) {
        1
    } else {
        -1
    }
}

/// The quadratic polynomial S_{IJ}(x) on ℝⁿ:
///
/// * I = J:        Σ_k ε_I(k) x_k²
/// * #(I∖J) = 1:   2·sgn(I,J)·x_p·x_q  with p ∈ I∖J, q ∈ J∖I
/// * otherwise:    0
///
/// The off-diagonal coefficient 2 is forced by the minor determinants of the
/// reflection matrix ψ(x) = I − 2xxᵀ/|x|²: the 1×1 off-diagonal minors are
/// −2x_px_q/|x|², and every identity S_{IJ} enters downstream (the minor
/// identity, the Knapp–Stein reduction, the g_{IJ} component formulas) holds
/// with this normalization and fails without it.
pub fn s_polynomial(i: &IndexSet, j: &IndexSet, n: u32) -> MultiPolynomial {
    assert_eq!(i.card(), j.card(), "S_{{IJ}} needs equal cardinalities");
    let nn = n as usize;
    if i == j {
        let mut acc = MultiPolynomial::zero(nn);
        for k in 1..=n {
            let sq = MultiPolynomial::var(nn, k as usize).pow(2);
            let sign = Rat::from_int(epsilon_weight(i, k, n));
            acc = &acc + &sq.scale(&sign);
        }
        return acc;
    }
    let d1 = i.difference(j);
    if d1.len() == 1 {
        let p = d1[0];
        let q = j.difference(i)[0];
        let s = sign_pair(i, j);
        let xpq = &MultiPolynomial::var(nn, p as usize) * &MultiPolynomial::var(nn, q as usize);
        return xpq.scale(&Rat::from_int(2 * s));
    }
    MultiPolynomial::zero(nn)
}

/// Image of the basis element e_I under the projection
/// Λ^i(ℂⁿ) → Λ^j(ℂ^{n−1}), j ∈ {i−1, i}:
///
/// * j = i:    e_I when n ∉ I, zero otherwise;
/// * j = i−1:  (−1)^{i−1} e_{I∖{n}} when n ∈ I, zero otherwise.
pub fn project_basis(sig: &OperatorSignature, i_set: &IndexSet) -> Option<(i64, IndexSet)> {
    assert_eq!(i_set.card(), sig.i as usize, "index set has wrong degree");
    let n = sig.n;
    if sig.j == sig.i {
        if i_set.contains(n) {
            None
        } else {
            Some((1, i_set.clone()))
        }
    } else if i_set.contains(n) {
        let sign = if sig.i % 2 == 1 { 1 } else { -1 };
        Some((sign, i_set.remove(n)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    /// Brute-force count of elements strictly between p and q.
    fn sign_between_oracle(k: &IndexSet, p: u32, q: u32) -> i64 {
        let (lo, hi) = (p.min(q), p.max(q));
        let mut count = 0;
        for r in lo + 1..hi {
            if k.contains(r) {
                count += 1;
            }
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn sign_between_examples() {
        assert_eq!(sign_between(&set(&[]), 1, 3), 1);
        assert_eq!(sign_between(&set(&[2]), 1, 3), -1);
        // {2,3} lie strictly between 1 and 4; 5 does not.
        assert_eq!(sign_between(&set(&[2, 3, 5]), 1, 4), 1);
        assert_eq!(
            sign_between(&set(&[2, 3, 5]), 1, 4),
            sign_between_oracle(&set(&[2, 3, 5]), 1, 4)
        );
    }

    #[test]
    fn sign_between_symmetric_in_pq() {
        for n in 1..=6u32 {
            for k in IndexSet::all(n, 2) {
                for p in 1..=n {
                    for q in 1..=n {
                        if p != q {
                            assert_eq!(sign_between(&k, p, q), sign_between(&k, q, p));
                            assert_eq!(sign_between(&k, p, q), sign_between_oracle(&k, p, q));
                        }
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "p ≠ q")]
    fn sign_between_rejects_equal() {
        sign_between(&set(&[1]), 2, 2);
    }

    #[test]
    fn sign_pair_examples() {
        assert_eq!(sign_pair(&set(&[1]), &set(&[2])), 1);
        assert_eq!(sign_pair(&set(&[1, 3]), &set(&[2, 3])), 1);
        assert_eq!(sign_pair(&set(&[1, 2]), &set(&[2, 3])), -1);
    }

    #[test]
    fn sign_pair_symmetric() {
        for n in 2..=5u32 {
            for i in 1..=n as usize {
                for a in IndexSet::all(n, i) {
                    for b in IndexSet::all(n, i) {
                        if a.difference(&b).len() == 1 {
                            assert_eq!(sign_pair(&a, &b), sign_pair(&b, &a));
                        }
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "exactly one")]
    fn sign_pair_rejects_distance_two() {
        sign_pair(&set(&[1, 2]), &set(&[3, 4]));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_weight(&set(&[1, 2]), 1, 3), 1);
        assert_eq!(epsilon_weight(&set(&[1, 2]), 3, 3), -1);
        assert_eq!(epsilon_weight(&set(&[]), 2, 4), -1);
    }

    #[test]
    fn epsilon_sum_counts_cardinality() {
        // Σ_k ε_I(k) = 2#I − n
        for n in 1..=6u32 {
            for i in 0..=n as usize {
                for iset in IndexSet::all(n, i) {
                    let total: i64 = (1..=n).map(|k| epsilon_weight(&iset, k, n)).sum();
                    assert_eq!(total, 2 * i as i64 - n as i64);
                }
            }
        }
    }

    #[test]
    fn s_polynomial_examples() {
        let x = |k: usize| MultiPolynomial::var(2, k);
        // S_{∅∅} on ℝ²: −x₁² − x₂²
        let s = s_polynomial(&set(&[]), &set(&[]), 2);
        let expect = &x(1).pow(2).scale(&Rat::from_int(-1)) - &x(2).pow(2);
        assert_eq!(s, expect);
        // S_{{1}{1}} on ℝ²: x₁² − x₂²
        let s = s_polynomial(&set(&[1]), &set(&[1]), 2);
        assert_eq!(s, &x(1).pow(2) - &x(2).pow(2));
        // Off-diagonal carries the reflection-minor normalization.
        let s = s_polynomial(&set(&[1]), &set(&[2]), 2);
        assert_eq!(s, (&x(1) * &x(2)).scale(&Rat::from_int(2)));
        // Distance ≥ 2 vanishes.
        let s4 = s_polynomial(&set(&[1, 2]), &set(&[3, 4]), 4);
        assert!(s4.is_zero());
    }

    #[test]
    fn s_polynomial_symmetric() {
        for n in 2..=5u32 {
            for i in 0..=n.min(3) as usize {
                for a in IndexSet::all(n, i) {
                    for b in IndexSet::all(n, i) {
                        assert_eq!(s_polynomial(&a, &b, n), s_polynomial(&b, &a, n));
                    }
                }
            }
        }
    }

    #[test]
    fn project_basis_cases() {
        let keep = OperatorSignature::new(3, 2, 2, 0);
        assert_eq!(
            project_basis(&keep, &set(&[1, 2])),
            Some((1, set(&[1, 2])))
        );
        assert_eq!(project_basis(&keep, &set(&[1, 3])), None);

        let drop = OperatorSignature::new(3, 2, 1, 0);
        assert_eq!(project_basis(&drop, &set(&[1, 3])), Some((-1, set(&[1]))));
        assert_eq!(project_basis(&drop, &set(&[1, 2])), None);
    }

    #[test]
    fn signature_validation() {
        assert!(OperatorSignature {
            n: 3,
            i: 3,
            j: 3,
            kappa: 0
        }
        .is_valid()
            == false);
        assert!(OperatorSignature {
            n: 3,
            i: 0,
            j: 0,
            kappa: 1
        }
        .is_valid());
        assert!(OperatorSignature {
            n: 3,
            i: 1,
            j: 0,
            kappa: 0
        }
        .is_valid());
        assert!(OperatorSignature {
            n: 3,
            i: 2,
            j: 0,
            kappa: 0
        }
        .is_valid()
            == false);
    }
}
