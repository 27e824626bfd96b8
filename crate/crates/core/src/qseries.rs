//! q-series building blocks: Pochhammer products, Gaussian binomials and
//! Rogers-Szego polynomials.
//!
//! All arguments that the classical formulas treat as "a variable times a
//! sign" are [`SignedMonomial`]s, so the same code evaluates `(q;q)_n`,
//! `(-q;-q^2)_n`, `(ac;Q)_n` in the four-variable ring, and every other
//! specialization that shows up.

use crate::error::{Error, Result};
use crate::poly::{SignedMonomial, SparsePoly, TruncationSpec, Var, VarSet};

/// Finite or unbounded product length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl From<u64> for Length {
    fn from(n: u64) -> Self {
        Length::Finite(n)
    }
}

/// The q-Pochhammer product `prod_{i=0}^{len-1} (1 - first * ratio^i)`,
/// truncated.
///
/// An unbounded length is allowed only when successive factors eventually
/// leave the truncation window for good: the ratio must have non-negative
/// exponents and strictly grow along some finitely bounded degree (the
/// `q`-degree in the univariate rings, the total degree under a total cap).
pub fn pochhammer(
    first: &SignedMonomial,
    ratio: &SignedMonomial,
    length: Length,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    assert_eq!(first.var_set(), ratio.var_set());
    assert_eq!(first.var_set(), trunc.var_set());
    let mut out = SparsePoly::one(trunc);
    match length {
        Length::Finite(n) => {
            let mut m = first.clone();
            for _ in 0..n {
                out = out.mul(&SparsePoly::one_minus(&m, trunc))?;
                m = m.mul(ratio);
            }
        }
        Length::Infinite => {
            if ratio.exps().iter().any(|&e| e < 0) {
                return Err(Error::Divergence(
                    "unbounded product with a ratio of negative degree".into(),
                ));
            }
            let grows = trunc
                .var_set()
                .vars()
                .iter()
                .enumerate()
                .any(|(i, &v)| ratio.exps()[i] >= 1 && trunc.max_of(v).is_some())
                || (trunc.total_cap().is_some() && ratio.total_degree() >= 1);
            if !grows {
                return Err(Error::Divergence(
                    "unbounded product does not stabilize under this truncation".into(),
                ));
            }
            let mut m = first.clone();
            loop {
                if escapes_for_good(&m, ratio, trunc) {
                    break;
                }
                out = out.mul(&SparsePoly::one_minus(&m, trunc))?;
                m = m.mul(ratio);
            }
        }
    }
    Ok(out)
}

/// True when `m` violates an upper bound that multiplying by `ratio`
/// (non-negative exponents) can never repair.
fn escapes_for_good(m: &SignedMonomial, ratio: &SignedMonomial, trunc: &TruncationSpec) -> bool {
    debug_assert!(ratio.exps().iter().all(|&e| e >= 0));
    for (i, &v) in trunc.var_set().vars().iter().enumerate() {
        if let Some(max) = trunc.max_of(v) {
            if m.exps()[i] > max {
                return true;
            }
        }
    }
    if let Some(t) = trunc.total_cap() {
        if m.total_degree() > t {
            return true;
        }
    }
    false
}

/// Product of several Pochhammer symbols sharing the ratio, e.g.
/// `(-a, -abc; Q)_inf`.
pub fn pochhammer_multi(
    firsts: &[SignedMonomial],
    ratio: &SignedMonomial,
    length: Length,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    let mut out = SparsePoly::one(trunc);
    for f in firsts {
        out = out.mul(&pochhammer(f, ratio, length, trunc)?)?;
    }
    Ok(out)
}

/// Gaussian binomial coefficient in an arbitrary signed-monomial base,
/// zero when `k < 0`, `n < 0` or `k > n`.
///
/// Computed by the Pascal recurrence
/// `[n k] = [n-1 k] + base^(n-k) [n-1 k-1]`,
/// which stays division-free and is valid for any monomial base.
pub fn qbinomial(n: i64, k: i64, base: &SignedMonomial, trunc: &TruncationSpec) -> SparsePoly {
    assert_eq!(base.var_set(), trunc.var_set());
    if k < 0 || n < 0 || k > n {
        return SparsePoly::zero(trunc);
    }
    let n = n as usize;
    let k = k as usize;
    // Row m of the table holds [m j] for 0 <= j <= min(m, k).
    let mut row: Vec<SparsePoly> = vec![SparsePoly::one(trunc)];
    for m in 1..=n {
        let width = m.min(k);
        let mut next: Vec<SparsePoly> = Vec::with_capacity(width + 1);
        next.push(SparsePoly::one(trunc));
        for j in 1..=width {
            let up = if j < row.len() {
                row[j].clone()
            } else {
                SparsePoly::zero(trunc)
            };
            let left = row[j - 1].clone();
            let shift = base.pow((m - j) as i64);
            next.push(
                up.add(&left.mul_monomial(&shift))
                    .expect("same truncation by construction"),
            );
        }
        row = next;
    }
    row[k.min(row.len() - 1)].clone()
}

/// The Rogers-Szego polynomial `H_n(z, q) = sum_k [n k]_q z^k`.
pub fn rogers_szego(n: i64, trunc: &TruncationSpec) -> SparsePoly {
    let vs = trunc.var_set();
    assert!(vs.contains(Var::Q) && vs.contains(Var::Z));
    let base = SignedMonomial::var(vs, Var::Q);
    let z = SignedMonomial::var(vs, Var::Z);
    let mut out = SparsePoly::zero(trunc);
    for k in 0..=n {
        let term = qbinomial(n, k, &base, trunc).mul_monomial(&z.pow(k));
        out = out.add(&term).expect("same truncation");
    }
    out
}

/// `(q^a ; q^r)`-style helper: the signed monomial `sign * q^e` in a ring
/// containing `q`.
pub fn q_mono(vs: &VarSet, negative: bool, e: i64) -> SignedMonomial {
    SignedMonomial::build(vs, negative, &[(Var::Q, e)])
}

/// `1/(q;q)_len` style inverse Pochhammer, a convenience used by the
/// formula builders.
pub fn inv_pochhammer(
    first: &SignedMonomial,
    ratio: &SignedMonomial,
    length: Length,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    pochhammer(first, ratio, length, trunc)?.series_inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn qt(d: i64) -> TruncationSpec {
        TruncationSpec::q_degree(d)
    }

    fn qpoly(trunc: &TruncationSpec, terms: &[(i64, i64)]) -> SparsePoly {
        SparsePoly::from_terms(
            trunc,
            terms.iter().map(|&(d, c)| (vec![d], BigInt::from(c))),
        )
    }

    #[test]
    fn pochhammer_basics() {
        let t = qt(20);
        let vs = VarSet::q();
        // empty product
        let q = q_mono(&vs, false, 1);
        let p0 = pochhammer(&q, &q_mono(&vs, false, 4), Length::Finite(0), &t).unwrap();
        assert_eq!(p0, SparsePoly::one(&t));
        // (-q; q^2)_2 = (1+q)(1+q^3)
        let p = pochhammer(
            &q_mono(&vs, true, 1),
            &q_mono(&vs, false, 2),
            Length::Finite(2),
            &t,
        )
        .unwrap();
        assert_eq!(p, qpoly(&t, &[(0, 1), (1, 1), (3, 1), (4, 1)]));
        // (q;q)_2 = (1-q)(1-q^2)
        let p2 = pochhammer(&q, &q, Length::Finite(2), &t).unwrap();
        assert_eq!(p2, qpoly(&t, &[(0, 1), (1, -1), (2, -1), (3, 1)]));
    }

    #[test]
    fn pochhammer_shift_identity() {
        // (a;Q)_{m+n} = (a;Q)_m (a Q^m; Q)_n for m, n <= 6
        let t = qt(60);
        let vs = VarSet::q();
        let a = q_mono(&vs, true, 1);
        let ratio = q_mono(&vs, false, 2);
        for m in 0..=6u64 {
            for n in 0..=6u64 {
                let whole = pochhammer(&a, &ratio, Length::Finite(m + n), &t).unwrap();
                let left = pochhammer(&a, &ratio, Length::Finite(m), &t).unwrap();
                let shifted = a.mul(&ratio.pow(m as i64));
                let right = pochhammer(&shifted, &ratio, Length::Finite(n), &t).unwrap();
                assert_eq!(whole, left.mul(&right).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn unbounded_pochhammer_stabilizes() {
        let t = qt(10);
        let vs = VarSet::q();
        let q = q_mono(&vs, false, 1);
        // (q;q)_inf: Euler function, pentagonal number signs
        let euler = pochhammer(&q, &q, Length::Infinite, &t).unwrap();
        assert_eq!(
            euler,
            qpoly(&t, &[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)])
        );
        // divergent ratio rejected
        let one = q_mono(&vs, false, 0);
        assert!(matches!(
            pochhammer(&q, &one, Length::Infinite, &t),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn qbinomial_golden_and_edges() {
        let t = qt(40);
        let vs = VarSet::q();
        let q = q_mono(&vs, false, 1);
        // [4 2]_q = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(
            qbinomial(4, 2, &q, &t),
            qpoly(&t, &[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert_eq!(qbinomial(7, 0, &q, &t), SparsePoly::one(&t));
        assert!(qbinomial(3, 5, &q, &t).is_zero());
        assert!(qbinomial(-1, 0, &q, &t).is_zero());
        assert!(qbinomial(4, -2, &q, &t).is_zero());
    }

    #[test]
    fn qbinomial_symmetry_and_pascal() {
        let t = qt(200);
        let vs = VarSet::q();
        let base = q_mono(&vs, false, 1);
        for n in 0..=12i64 {
            for k in 0..=n {
                let b = qbinomial(n, k, &base, &t);
                assert_eq!(b, qbinomial(n, n - k, &base, &t), "symmetry n={n} k={k}");
                if n > 0 {
                    let up = qbinomial(n - 1, k, &base, &t);
                    let diag = qbinomial(n - 1, k - 1, &base, &t);
                    let lhs1 = up.add(&diag.mul_monomial(&base.pow(n - k))).unwrap();
                    assert_eq!(b, lhs1, "first Pascal recurrence n={n} k={k}");
                    let lhs2 = diag.add(&up.mul_monomial(&base.pow(k))).unwrap();
                    assert_eq!(b, lhs2, "second Pascal recurrence n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn qbinomial_signed_base() {
        // In base -q^2: [2 1]_{-q^2} = 1 + (-q^2) = 1 - q^2
        let t = qt(40);
        let vs = VarSet::q();
        let b = q_mono(&vs, true, 2);
        assert_eq!(qbinomial(2, 1, &b, &t), qpoly(&t, &[(0, 1), (2, -1)]));
    }

    #[test]
    fn rogers_szego_small() {
        let t = TruncationSpec::qz_degree(20, 10);
        assert_eq!(rogers_szego(0, &t), SparsePoly::one(&t));
        // H_2(z,q) = 1 + (1+q) z + z^2
        let h2 = rogers_szego(2, &t);
        let expect = SparsePoly::from_terms(
            &t,
            [
                (vec![0, 0], BigInt::one()),
                (vec![0, 1], BigInt::one()),
                (vec![1, 1], BigInt::one()),
                (vec![0, 2], BigInt::one()),
            ],
        );
        assert_eq!(h2, expect);
        // H_N(1, q) = sum_k [N k]_q
        let tq = qt(20);
        let one = SignedMonomial::one(&VarSet::q());
        let q = SignedMonomial::var(&VarSet::q(), Var::Q);
        for n in 0..=5 {
            let h = rogers_szego(n, &t)
                .substitute(&[(Var::Q, q.clone()), (Var::Z, one.clone())], &tq)
                .unwrap();
            let mut sum = SparsePoly::zero(&tq);
            for k in 0..=n {
                sum = sum.add(&qbinomial(n, k, &q, &tq)).unwrap();
            }
            assert_eq!(h, sum, "H_{n}(1,q)");
        }
    }

    #[test]
    fn inverse_pochhammer_is_partition_gf() {
        // 1/(q;q)_inf counts partitions
        let t = qt(12);
        let vs = VarSet::q();
        let q = q_mono(&vs, false, 1);
        let inv = inv_pochhammer(&q, &q, Length::Infinite, &t).unwrap();
        let p: [i64; 13] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &pn) in p.iter().enumerate() {
            assert_eq!(inv.coeff_q(n as i64), BigInt::from(pn), "p({n})");
        }
    }
}
