//! Sparse multivariate Laurent polynomials over the integers, with an
//! explicit truncation context.
//!
//! Every value is exact: coefficients are arbitrary-precision integers and
//! any monomial falling outside the [`TruncationSpec`] is dropped eagerly
//! from every operation result. This keeps term maps bounded and makes
//! equality a literal comparison of normalized term maps.
//!
//! Invariants maintained by all constructors and operations:
//! - no stored zero coefficients,
//! - every stored exponent vector satisfies the truncation,
//! - exponents may be negative only in variables whose declared minimum
//!   degree is negative (in practice only `z`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The formal variables of the laboratory.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Q,
    Z,
    A,
    B,
    C,
    D,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Z => "z",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::D => "d",
        }
    }
}

/// An ordered set of distinct variables; fixes the meaning of exponent
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    /// Panics if `vars` contains duplicates.
    pub fn new(vars: &[Var]) -> Self {
        let mut seen = vars.to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), vars.len(), "duplicate variable in VarSet");
        VarSet {
            vars: vars.to_vec(),
        }
    }

    /// The univariate ring in `q`.
    pub fn q() -> Self {
        VarSet::new(&[Var::Q])
    }

    /// The bivariate ring in `q` and `z`.
    pub fn qz() -> Self {
        VarSet::new(&[Var::Q, Var::Z])
    }

    /// The four-variable ring of the decorated diagrams.
    pub fn abcd() -> Self {
        VarSet::new(&[Var::A, Var::B, Var::C, Var::D])
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index_of(v).is_some()
    }
}

/// Per-variable degree bounds plus an optional total-degree cap.
///
/// A monomial is kept only when, for every variable, its exponent lies in
/// `[min, max]` and (when a total cap is set) the exponent sum does not
/// exceed the cap. Minimum degrees default to 0 and may be negative only
/// for `z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncationSpec {
    var_set: VarSet,
    max: Vec<Option<i64>>,
    min: Vec<i64>,
    total: Option<i64>,
}

impl TruncationSpec {
    /// No bounds at all (every exponent must still be non-negative).
    pub fn unbounded(var_set: VarSet) -> Self {
        let n = var_set.len();
        TruncationSpec {
            var_set,
            max: vec![None; n],
            min: vec![0; n],
            total: None,
        }
    }

    /// Univariate ring in `q`, truncated at `q^degree` inclusive.
    pub fn q_degree(degree: i64) -> Self {
        TruncationSpec::unbounded(VarSet::q()).with_max(Var::Q, degree)
    }

    /// Ring in `q, z` with `q`-degree at most `degree` and `z` ranging over
    /// `-z_bound ..= z_bound`.
    pub fn qz_degree(degree: i64, z_bound: i64) -> Self {
        TruncationSpec::unbounded(VarSet::qz())
            .with_max(Var::Q, degree)
            .with_max(Var::Z, z_bound)
            .with_min(Var::Z, -z_bound)
    }

    /// Four-variable ring with a total-degree cap (each variable is also
    /// individually capped so that inverses terminate).
    pub fn abcd_total(total: i64) -> Self {
        let mut t = TruncationSpec::unbounded(VarSet::abcd()).with_total(total);
        for v in [Var::A, Var::B, Var::C, Var::D] {
            t = t.with_max(v, total);
        }
        t
    }

    pub fn with_max(mut self, v: Var, max: i64) -> Self {
        let i = self.var_set.index_of(v).expect("variable not in set");
        assert!(max >= self.min[i], "max degree below min degree");
        self.max[i] = Some(max);
        self
    }

    pub fn with_min(mut self, v: Var, min: i64) -> Self {
        assert!(
            min >= 0 || v == Var::Z,
            "negative minimum degree is only allowed for z"
        );
        let i = self.var_set.index_of(v).expect("variable not in set");
        if let Some(m) = self.max[i] {
            assert!(min <= m, "min degree above max degree");
        }
        self.min[i] = min;
        self
    }

    pub fn with_total(mut self, total: i64) -> Self {
        assert!(total >= 0);
        self.total = Some(total);
        self
    }

    pub fn var_set(&self) -> &VarSet {
        &self.var_set
    }

    pub fn max_of(&self, v: Var) -> Option<i64> {
        self.var_set.index_of(v).and_then(|i| self.max[i])
    }

    pub fn min_of(&self, v: Var) -> i64 {
        self.var_set.index_of(v).map(|i| self.min[i]).unwrap_or(0)
    }

    pub fn total_cap(&self) -> Option<i64> {
        self.total
    }

    /// Whether a monomial with these exponents is kept.
    pub fn contains(&self, exps: &[i64]) -> bool {
        debug_assert_eq!(exps.len(), self.var_set.len());
        for (i, &e) in exps.iter().enumerate() {
            if e < self.min[i] {
                return false;
            }
            if let Some(m) = self.max[i] {
                if e > m {
                    return false;
                }
            }
        }
        if let Some(t) = self.total {
            if exps.iter().sum::<i64>() > t {
                return false;
            }
        }
        true
    }
}

/// `+-1` times a single monomial; the currency of substitutions,
/// Pochhammer arguments and q-binomial bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMonomial {
    var_set: VarSet,
    negative: bool,
    exps: Vec<i64>,
}

impl SignedMonomial {
    pub fn new(var_set: VarSet, negative: bool, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), var_set.len());
        SignedMonomial {
            var_set,
            negative,
            exps,
        }
    }

    /// Build from sparse `(variable, exponent)` pairs.
    pub fn build(var_set: &VarSet, negative: bool, entries: &[(Var, i64)]) -> Self {
        let mut exps = vec![0i64; var_set.len()];
        for &(v, e) in entries {
            let i = var_set.index_of(v).expect("variable not in set");
            exps[i] += e;
        }
        SignedMonomial::new(var_set.clone(), negative, exps)
    }

    pub fn one(var_set: &VarSet) -> Self {
        SignedMonomial::new(var_set.clone(), false, vec![0; var_set.len()])
    }

    pub fn var(var_set: &VarSet, v: Var) -> Self {
        SignedMonomial::build(var_set, false, &[(v, 1)])
    }

    pub fn var_set(&self) -> &VarSet {
        &self.var_set
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn exp_of(&self, v: Var) -> i64 {
        self.var_set.index_of(v).map(|i| self.exps[i]).unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exps.iter().all(|&e| e == 0)
    }

    pub fn neg(&self) -> Self {
        SignedMonomial {
            var_set: self.var_set.clone(),
            negative: !self.negative,
            exps: self.exps.clone(),
        }
    }

    pub fn mul(&self, other: &SignedMonomial) -> Self {
        assert_eq!(self.var_set, other.var_set, "monomial variable sets differ");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        SignedMonomial {
            var_set: self.var_set.clone(),
            negative: self.negative ^ other.negative,
            exps,
        }
    }

    /// Integer power; negative powers invert the monomial.
    pub fn pow(&self, k: i64) -> Self {
        SignedMonomial {
            var_set: self.var_set.clone(),
            negative: self.negative && k.rem_euclid(2) == 1,
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }
}

/// Exact sparse Laurent polynomial bound to a truncation context.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    trunc: TruncationSpec,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl SparsePoly {
    pub fn zero(trunc: &TruncationSpec) -> Self {
        SparsePoly {
            trunc: trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: &TruncationSpec) -> Self {
        SparsePoly::constant(trunc, BigInt::one())
    }

    pub fn constant(trunc: &TruncationSpec, c: BigInt) -> Self {
        let mut p = SparsePoly::zero(trunc);
        p.insert_term(vec![0; trunc.var_set().len()], c);
        p
    }

    /// The one-term polynomial `+-1 * monomial` (zero if out of bounds).
    pub fn from_monomial(m: &SignedMonomial, trunc: &TruncationSpec) -> Self {
        assert_eq!(
            m.var_set(),
            trunc.var_set(),
            "monomial has a different variable set"
        );
        let mut p = SparsePoly::zero(trunc);
        let c = if m.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        p.insert_term(m.exps().to_vec(), c);
        p
    }

    /// `1 - m`, truncated.
    pub fn one_minus(m: &SignedMonomial, trunc: &TruncationSpec) -> Self {
        let mut p = SparsePoly::one(trunc);
        let c = if m.is_negative() {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        p.insert_term(m.exps().to_vec(), c);
        p
    }

    /// Build directly from `(exponents, coefficient)` pairs.
    pub fn from_terms<I>(trunc: &TruncationSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = SparsePoly::zero(trunc);
        for (e, c) in terms {
            p.insert_term(e, c);
        }
        p
    }

    pub fn var_set(&self) -> &VarSet {
        self.trunc.var_set()
    }

    pub fn trunc(&self) -> &TruncationSpec {
        &self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `q^n` in a univariate ring.
    pub fn coeff_q(&self, n: i64) -> BigInt {
        assert_eq!(self.var_set().len(), 1);
        self.coeff(&[n])
    }

    /// Adds `coeff` at `exps`, dropping zeros and out-of-bound monomials.
    pub fn insert_term(&mut self, exps: Vec<i64>, coeff: BigInt) {
        if coeff.is_zero() || !self.trunc.contains(&exps) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::Structural(format!(
                "operands disagree: {:?} vs {:?}",
                self.trunc.var_set().vars(),
                other.trunc.var_set().vars()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.trunc);
        }
        SparsePoly {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Convolution product, re-truncated.
    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = SparsePoly::zero(&self.trunc);
        // Iterate the smaller operand on the outside.
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let n = self.var_set().len();
        let mut exps = vec![0i64; n];
        for (e1, c1) in &small.terms {
            for (e2, c2) in &big.terms {
                for i in 0..n {
                    exps[i] = e1[i] + e2[i];
                }
                if out.trunc.contains(&exps) {
                    out.insert_term(exps.clone(), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Multiply by a signed monomial (shift of every exponent vector).
    pub fn mul_monomial(&self, m: &SignedMonomial) -> SparsePoly {
        assert_eq!(m.var_set(), self.var_set());
        let mut out = SparsePoly::zero(&self.trunc);
        for (e, c) in &self.terms {
            let exps: Vec<i64> = e.iter().zip(m.exps()).map(|(a, b)| a + b).collect();
            let coeff = if m.is_negative() {
                -c.clone()
            } else {
                c.clone()
            };
            out.insert_term(exps, coeff);
        }
        out
    }

    /// Multiplicative inverse up to truncation.
    ///
    /// Requires a constant term of `+1` or `-1`, non-negative exponents, and
    /// finite bounds for every variable actually appearing (otherwise the
    /// geometric expansion cannot terminate).
    pub fn series_inverse(&self) -> Result<SparsePoly> {
        let n = self.var_set().len();
        let zero_exps = vec![0i64; n];
        let c0 = self.coeff(&zero_exps);
        if !(c0.clone().abs().is_one()) {
            return Err(Error::NonInvertible(format!(
                "constant term is {c0}, not +-1"
            )));
        }
        let mut appearing = vec![false; n];
        for e in self.terms.keys() {
            for (i, &ei) in e.iter().enumerate() {
                if ei < 0 {
                    return Err(Error::NonInvertible(
                        "negative exponents cannot be inverted as a power series".into(),
                    ));
                }
                if ei > 0 {
                    appearing[i] = true;
                }
            }
        }
        // Effective bound on the total degree of any representable monomial.
        let depth = match self.trunc.total_cap() {
            Some(t) => t,
            None => {
                let mut sum = 0i64;
                for (i, &used) in appearing.iter().enumerate() {
                    if used {
                        match self.trunc.max[i] {
                            Some(m) => sum += m,
                            None => {
                                return Err(Error::Divergence(format!(
                                    "inverse needs a finite bound for {}",
                                    self.var_set().vars()[i].name()
                                )))
                            }
                        }
                    }
                }
                sum
            }
        };
        // 1/p = c0 * sum_k (-c0 (p - c0))^k since c0^2 = 1.
        let mut g = self.clone();
        g.insert_term(zero_exps.clone(), -c0.clone());
        if c0.is_one() {
            g = g.neg();
        }
        let mut acc = SparsePoly::one(&self.trunc);
        let mut pw = SparsePoly::one(&self.trunc);
        for _ in 0..=depth {
            pw = pw.mul(&g)?;
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        Ok(acc.scale(&c0))
    }

    /// Map each variable to a signed monomial over a target ring.
    ///
    /// Signs accumulate through exponents; the result is re-truncated in the
    /// target. Every variable occurring with a nonzero exponent must be
    /// mapped.
    pub fn substitute(
        &self,
        images: &[(Var, SignedMonomial)],
        target: &TruncationSpec,
    ) -> Result<SparsePoly> {
        let src_vars = self.var_set().vars().to_vec();
        let tgt_len = target.var_set().len();
        for (_, m) in images {
            if m.var_set() != target.var_set() {
                return Err(Error::Structural(
                    "substitution image lives in a different ring than the target".into(),
                ));
            }
        }
        // Per source variable: the image, or None when unmapped.
        let lookup: Vec<Option<&SignedMonomial>> = src_vars
            .iter()
            .map(|&v| images.iter().find(|(w, _)| *w == v).map(|(_, m)| m))
            .collect();
        let mut out = SparsePoly::zero(target);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; tgt_len];
            let mut neg = false;
            let mut ok = true;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                match lookup[i] {
                    Some(m) => {
                        for (k, me) in m.exps().iter().enumerate() {
                            exps[k] += me * ei;
                        }
                        if m.is_negative() && ei.rem_euclid(2) == 1 {
                            neg = !neg;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return Err(Error::Structural(format!(
                    "unmapped variable with nonzero exponent in term {}",
                    monomial_string(self.var_set(), e)
                )));
            }
            out.insert_term(exps, if neg { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// The coefficient of `var^degree`, as a polynomial in the remaining
    /// variables.
    pub fn coeff_of(&self, var: Var, degree: i64) -> SparsePoly {
        let vi = self.var_set().index_of(var).expect("variable not in set");
        let rest: Vec<Var> = self
            .var_set()
            .vars()
            .iter()
            .copied()
            .filter(|&v| v != var)
            .collect();
        let rest_set = VarSet::new(&rest);
        let mut t = TruncationSpec::unbounded(rest_set.clone());
        for (j, &v) in rest_set.vars().iter().enumerate() {
            let i = self.var_set().index_of(v).unwrap();
            if let Some(m) = self.trunc.max[i] {
                t.max[j] = Some(m);
            }
            t.min[j] = self.trunc.min[i];
        }
        let mut out = SparsePoly::zero(&t);
        for (e, c) in &self.terms {
            if e[vi] != degree {
                continue;
            }
            let exps: Vec<i64> = e
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != vi)
                .map(|(_, &x)| x)
                .collect();
            out.insert_term(exps, c.clone());
        }
        out
    }

    /// Terms in canonical order: ascending total degree, then lexicographic
    /// exponent order.
    pub fn canonical_terms(&self) -> Vec<(&Vec<i64>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(e1, _), (e2, _)| {
            let t1: i64 = e1.iter().sum();
            let t2: i64 = e2.iter().sum();
            t1.cmp(&t2).then_with(|| e1.cmp(e2))
        });
        v
    }
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.var_set() == other.var_set() && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

/// Canonical text form of a monomial, e.g. `q^4*z^-1` or `1`.
pub fn monomial_string(var_set: &VarSet, exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = var_set.vars()[i].name();
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.canonical_terms() {
            let neg = c.is_negative();
            let abs = c.clone().abs();
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
            let mono = monomial_string(self.var_set(), e);
            if abs.is_one() && mono != "1" {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
