//! Builders for both sides of every identity: weighted enumerations of
//! partition classes under variable substitutions on one side, and the
//! closed-form bounded sums and infinite products on the other.
//!
//! The enumeration side works directly on the decorated-diagram weight
//! `a^ceil(O) b^floor(O) c^ceil(E) d^floor(E)`: a [`Substitution`] assigns
//! each of `a, b, c, d` a signed monomial in the target ring, each part
//! contributes incrementally according to the parity of its index, and the
//! recursion prunes on the accumulated degree. Unbounded largest parts are
//! realized through stabilization: only finitely many partitions carry
//! weight inside the truncation window, and the part bound is derived from
//! the window rather than supplied.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{self, Cap, ClassFilter, Partition, PartitionClass};
use crate::poly::{SignedMonomial, SparsePoly, TruncationSpec, Var, VarSet};
use crate::qseries::{inv_pochhammer, pochhammer, qbinomial, rogers_szego, Length};

/// Which generating function a builder targets: distinct parts (psi) or
/// ordinary partitions (phi).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum GenKind {
    #[serde(rename = "psi")]
    Psi,
    #[serde(rename = "phi")]
    Phi,
}

impl GenKind {
    pub fn class(self) -> PartitionClass {
        match self {
            GenKind::Psi => PartitionClass::Distinct,
            GenKind::Phi => PartitionClass::Ordinary,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Psi => "psi",
            GenKind::Phi => "phi",
        }
    }
}

/// Assignment of each of `a, b, c, d` to a signed monomial in a target
/// ring; encodes every specialization of the weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    id: String,
    var_set: VarSet,
    images: [SignedMonomial; 4],
}

impl Substitution {
    pub fn new(id: impl Into<String>, var_set: VarSet, images: [SignedMonomial; 4]) -> Self {
        for m in &images {
            assert_eq!(m.var_set(), &var_set);
        }
        Substitution {
            id: id.into(),
            var_set,
            images,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn var_set(&self) -> &VarSet {
        &self.var_set
    }

    pub fn image(&self, v: Var) -> &SignedMonomial {
        match v {
            Var::A => &self.images[0],
            Var::B => &self.images[1],
            Var::C => &self.images[2],
            Var::D => &self.images[3],
            _ => panic!("substitutions map only a, b, c, d"),
        }
    }

    /// `ab`, `ac`, `abc`, `abcd` products of the images.
    pub fn ab(&self) -> SignedMonomial {
        self.images[0].mul(&self.images[1])
    }

    pub fn ac(&self) -> SignedMonomial {
        self.images[0].mul(&self.images[2])
    }

    pub fn abc(&self) -> SignedMonomial {
        self.images[0].mul(&self.images[1]).mul(&self.images[2])
    }

    /// `Q = abcd` after substitution.
    pub fn big_q(&self) -> SignedMonomial {
        self.ab().mul(&self.images[2]).mul(&self.images[3])
    }

    /// Keep `a, b, c, d` formal.
    pub fn formal() -> Self {
        let vs = VarSet::abcd();
        Substitution::new(
            "a,b,c,d",
            vs.clone(),
            [
                SignedMonomial::var(&vs, Var::A),
                SignedMonomial::var(&vs, Var::B),
                SignedMonomial::var(&vs, Var::C),
                SignedMonomial::var(&vs, Var::D),
            ],
        )
    }

    fn q_ring(id: &str, specs: [(bool, i64); 4]) -> Self {
        let vs = VarSet::q();
        let imgs = specs.map(|(neg, e)| SignedMonomial::build(&vs, neg, &[(Var::Q, e)]));
        Substitution::new(id, vs, imgs)
    }

    fn qz_ring(id: &str, specs: [(bool, i64, i64); 4]) -> Self {
        let vs = VarSet::qz();
        let imgs = specs
            .map(|(neg, eq, ez)| SignedMonomial::build(&vs, neg, &[(Var::Q, eq), (Var::Z, ez)]));
        Substitution::new(id, vs, imgs)
    }

    /// `(q, q, 1, 1)`: the weight becomes `q^O`.
    pub fn odd_sum() -> Self {
        Substitution::q_ring("q,q,1,1", [(false, 1), (false, 1), (false, 0), (false, 0)])
    }

    /// `(q, q, -1, -1)`: `(-1)^E q^O`.
    pub fn sign_even() -> Self {
        Substitution::q_ring("q,q,-1,-1", [(false, 1), (false, 1), (true, 0), (true, 0)])
    }

    /// `(q, q, -1, 1)`: `(-1)^ceil(E) q^O`.
    pub fn ceil_even() -> Self {
        Substitution::q_ring("q,q,-1,1", [(false, 1), (false, 1), (true, 0), (false, 0)])
    }

    /// `(q, q, -1, -q)`: `(-1)^E q^(O + floor(E))`.
    pub fn floor_even() -> Self {
        Substitution::q_ring("q,q,-1,-q", [(false, 1), (false, 1), (true, 0), (true, 1)])
    }

    /// `(-1, -1, q, q)`: `(-1)^O q^E`.
    pub fn neg_odd() -> Self {
        Substitution::q_ring("-1,-1,q,q", [(true, 0), (true, 0), (false, 1), (false, 1)])
    }

    /// `(1, 1, q, q)`: `q^E`.
    pub fn even_sum() -> Self {
        Substitution::q_ring("1,1,q,q", [(false, 0), (false, 0), (false, 1), (false, 1)])
    }

    /// `(q^r, q^t, -1, eps q^s)` with `r + t > 0`, `eps = +-1`.
    pub fn rts(r: u32, t: u32, s: u32, eps: i8) -> Result<Self> {
        if r + t == 0 {
            return Err(Error::Params("the general family needs r + t > 0".into()));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::Params("eps must be +1 or -1".into()));
        }
        let sign = if eps < 0 { "-" } else { "" };
        Ok(Substitution::q_ring(
            &format!("q^{r},q^{t},-1,{sign}q^{s}"),
            [
                (false, r as i64),
                (false, t as i64),
                (true, 0),
                (eps < 0, s as i64),
            ],
        ))
    }

    /// `(zq, zq, q/z, q/z)`: `q^|pi| z^gamma`.
    pub fn size_gamma() -> Self {
        Substitution::qz_ring(
            "zq,zq,q/z,q/z",
            [(false, 1, 1), (false, 1, 1), (false, 1, -1), (false, 1, -1)],
        )
    }

    /// `(qz, qz, 1/z, 1/z)`: `q^O z^gamma`.
    pub fn odd_gamma() -> Self {
        Substitution::qz_ring(
            "qz,qz,1/z,1/z",
            [(false, 1, 1), (false, 1, 1), (false, 0, -1), (false, 0, -1)],
        )
    }

    /// `(z, z, q/z, q/z)`: `q^E z^gamma`.
    pub fn even_gamma() -> Self {
        Substitution::qz_ring(
            "z,z,q/z,q/z",
            [(false, 0, 1), (false, 0, 1), (false, 1, -1), (false, 1, -1)],
        )
    }
}

// ---------------------------------------------------------------------------
// Weighted enumeration engine
// ---------------------------------------------------------------------------

/// Pruning measure of the recursion: the degree that part contributions can
/// only increase.
enum Measure {
    /// q-degree, with the index of q in the target ring and the cap.
    QDegree(usize, i64),
    /// total degree under a total cap (the four-variable mode).
    Total(i64),
    /// no usable cap; only sound for distinct parts with a finite bound.
    None,
}

impl Measure {
    fn of(&self, exps: &[i64]) -> i64 {
        match self {
            Measure::QDegree(qi, _) => exps[*qi],
            Measure::Total(_) => exps.iter().sum(),
            Measure::None => 0,
        }
    }

    fn cap(&self) -> Option<i64> {
        match self {
            Measure::QDegree(_, c) => Some(*c),
            Measure::Total(c) => Some(*c),
            Measure::None => None,
        }
    }
}

struct Step {
    neg: bool,
    dexps: Vec<i64>,
    dmeas: i64,
}

/// Contribution of a part of size `lam` at an odd (`a`/`b`) or even
/// (`c`/`d`) index.
fn step_for(lam: u32, hi: &SignedMonomial, lo: &SignedMonomial, meas: &Measure) -> Step {
    let ceil = (lam as i64 + 1) / 2;
    let floor = lam as i64 / 2;
    let dexps: Vec<i64> = hi
        .exps()
        .iter()
        .zip(lo.exps())
        .map(|(a, b)| a * ceil + b * floor)
        .collect();
    let neg = (hi.is_negative() && ceil % 2 == 1) ^ (lo.is_negative() && floor % 2 == 1);
    let dmeas = meas.of(&dexps);
    Step { neg, dexps, dmeas }
}

enum Acc {
    /// Dense grid over (q, optional z); only used when those bounds are
    /// finite and the measure is the q-degree.
    Grid {
        z_width: usize,
        z_min: i64,
        z_max: i64,
        has_z: bool,
        data: Vec<i64>,
    },
    Map(BTreeMap<Vec<i64>, i64>),
}

impl Acc {
    #[inline]
    fn add(&mut self, exps: &[i64], neg: bool, trunc: &TruncationSpec) {
        let delta: i64 = if neg { -1 } else { 1 };
        match self {
            Acc::Grid {
                z_width,
                z_min,
                z_max,
                has_z,
                data,
            } => {
                let dz = if *has_z { exps[1] } else { 0 };
                if dz < *z_min || dz > *z_max {
                    return;
                }
                let idx = exps[0] as usize * *z_width + (dz - *z_min) as usize;
                data[idx] += delta;
            }
            Acc::Map(map) => {
                if !trunc.contains(exps) {
                    return;
                }
                *map.entry(exps.to_vec()).or_insert(0) += delta;
            }
        }
    }

    fn into_poly(self, trunc: &TruncationSpec) -> SparsePoly {
        let mut out = SparsePoly::zero(trunc);
        match self {
            Acc::Grid {
                z_width,
                z_min,
                has_z,
                data,
                ..
            } => {
                for (idx, &c) in data.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let dq = (idx / z_width) as i64;
                    let dz = idx as i64 % z_width as i64 + z_min;
                    let exps = if has_z { vec![dq, dz] } else { vec![dq] };
                    out.insert_term(exps, BigInt::from(c));
                }
            }
            Acc::Map(map) => {
                for (e, c) in map {
                    out.insert_term(e, BigInt::from(c));
                }
            }
        }
        out
    }
}

/// Sum of substituted weights over a partition class, truncated.
fn weighted_sum(
    class: PartitionClass,
    largest_part: Option<u32>,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    if sub.var_set() != trunc.var_set() {
        return Err(Error::Structural(
            "substitution targets a different ring than the truncation".into(),
        ));
    }
    let vs = trunc.var_set();
    let measure = match vs
        .index_of(Var::Q)
        .and_then(|qi| trunc.max_of(Var::Q).map(|m| (qi, m)))
    {
        Some((qi, m)) => Measure::QDegree(qi, m),
        None => match trunc.total_cap() {
            Some(t) => Measure::Total(t),
            None => Measure::None,
        },
    };
    for v in [Var::A, Var::B, Var::C, Var::D] {
        if measure.of(sub.image(v).exps()) < 0 {
            return Err(Error::Divergence(format!(
                "image of {} decreases the pruning degree; enumeration cannot be pruned",
                v.name()
            )));
        }
    }
    let ma = measure.of(sub.image(Var::A).exps());
    let mb = measure.of(sub.image(Var::B).exps());
    let mc = measure.of(sub.image(Var::C).exps());
    let cap = measure.cap();

    // The largest part is odd-indexed; derive its bound from the window when
    // none is supplied.
    let lam_max: u32 = match (largest_part, cap) {
        (Some(n), None) => {
            if class == PartitionClass::Ordinary {
                return Err(Error::Divergence(
                    "ordinary partitions need a degree cap to stabilize".into(),
                ));
            }
            n
        }
        (bound, Some(cap)) => {
            let derived = if ma + mb >= 1 {
                let mut lam = 0u32;
                loop {
                    let next = lam + 1;
                    let d = (next as i64 + 1) / 2 * ma + (next as i64 / 2) * mb;
                    if d > cap {
                        break lam;
                    }
                    lam = next;
                }
            } else {
                match bound {
                    Some(_) => u32::MAX,
                    None => {
                        return Err(Error::Divergence(format!(
                            "substitution {} kills the odd-indexed degree; a finite part bound is required",
                            sub.id()
                        )))
                    }
                }
            };
            match bound {
                Some(n) => n.min(derived),
                None => derived,
            }
        }
        (None, None) => {
            return Err(Error::Divergence(
                "neither a part bound nor a degree cap was given".into(),
            ))
        }
    };
    if class == PartitionClass::Ordinary && ma + mc < 1 {
        return Err(Error::Divergence(format!(
            "substitution {} gives repeated parts zero degree; the ordinary sum diverges",
            sub.id()
        )));
    }

    // Per-part contribution tables, index 0 unused.
    let dummy = Step {
        neg: false,
        dexps: vec![0; vs.len()],
        dmeas: 0,
    };
    let mut odd_steps = vec![dummy];
    let mut even_steps = vec![Step {
        neg: false,
        dexps: vec![0; vs.len()],
        dmeas: 0,
    }];
    for lam in 1..=lam_max {
        odd_steps.push(step_for(
            lam,
            sub.image(Var::A),
            sub.image(Var::B),
            &measure,
        ));
        even_steps.push(step_for(
            lam,
            sub.image(Var::C),
            sub.image(Var::D),
            &measure,
        ));
    }

    let mut acc = match (&measure, vs.len()) {
        (Measure::QDegree(_, qcap), 1) => Acc::Grid {
            z_width: 1,
            z_min: 0,
            z_max: 0,
            has_z: false,
            data: vec![0; (*qcap + 1) as usize],
        },
        (Measure::QDegree(_, qcap), 2)
            if vs.vars() == [Var::Q, Var::Z] && trunc.max_of(Var::Z).is_some() =>
        {
            let z_min = trunc.min_of(Var::Z);
            let z_max = trunc.max_of(Var::Z).unwrap();
            let w = (z_max - z_min + 1) as usize;
            Acc::Grid {
                z_width: w,
                z_min,
                z_max,
                has_z: true,
                data: vec![0; (*qcap + 1) as usize * w],
            }
        }
        _ => Acc::Map(BTreeMap::new()),
    };

    let gap = match class {
        PartitionClass::Ordinary => 0u32,
        PartitionClass::Distinct => 1,
        PartitionClass::RogersRamanujan => 2,
    };

    struct Ctx<'a> {
        odd: &'a [Step],
        even: &'a [Step],
        gap: u32,
        cap: Option<i64>,
        trunc: &'a TruncationSpec,
    }

    fn rec(
        ctx: &Ctx,
        max_next: u32,
        odd_index: bool,
        exps: &mut [i64],
        meas: i64,
        neg: bool,
        acc: &mut Acc,
    ) {
        acc.add(exps, neg, ctx.trunc);
        let steps = if odd_index { ctx.odd } else { ctx.even };
        for lam in 1..=max_next {
            let st = &steps[lam as usize];
            let nm = meas + st.dmeas;
            if let Some(cap) = ctx.cap {
                // contributions are nondecreasing in the part size
                if nm > cap {
                    break;
                }
            }
            for (e, d) in exps.iter_mut().zip(&st.dexps) {
                *e += d;
            }
            rec(
                ctx,
                lam.saturating_sub(ctx.gap),
                !odd_index,
                exps,
                nm,
                neg ^ st.neg,
                acc,
            );
            for (e, d) in exps.iter_mut().zip(&st.dexps) {
                *e -= d;
            }
        }
    }

    let ctx = Ctx {
        odd: &odd_steps,
        even: &even_steps,
        gap,
        cap,
        trunc,
    };
    let mut exps = vec![0i64; vs.len()];
    rec(&ctx, lam_max, true, &mut exps, 0, false, &mut acc);
    Ok(acc.into_poly(trunc))
}

/// Sum of substituted weights over distinct-part partitions with largest
/// part at most `n` (`None` = derived from the truncation window).
pub fn psi_enum(
    largest_part: Option<u32>,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    weighted_sum(PartitionClass::Distinct, largest_part, sub, trunc)
}

/// Same over ordinary partitions.
pub fn phi_enum(
    largest_part: Option<u32>,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    weighted_sum(PartitionClass::Ordinary, largest_part, sub, trunc)
}

// ---------------------------------------------------------------------------
// Closed-form sides
// ---------------------------------------------------------------------------

fn split_parity(n: u32) -> (i64, u64) {
    ((n / 2) as i64, (n % 2) as u64)
}

/// The bounded sum formula driven by `[m i]_Q (-a;Q)_{m-i+nu} (-c;Q)_i (ab)^i`.
pub fn psi_formula_iz(n: u32, sub: &Substitution, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let (m, nu) = split_parity(n);
    let big_q = sub.big_q();
    let neg_a = sub.image(Var::A).neg();
    let neg_c = sub.image(Var::C).neg();
    let ab = sub.ab();
    let mut out = SparsePoly::zero(trunc);
    for i in 0..=m {
        let term = qbinomial(m, i, &big_q, trunc)
            .mul(&pochhammer(
                &neg_a,
                &big_q,
                Length::Finite((m - i) as u64 + nu),
                trunc,
            )?)?
            .mul(&pochhammer(
                &neg_c,
                &big_q,
                Length::Finite(i as u64),
                trunc,
            )?)?
            .mul_monomial(&ab.pow(i));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The companion with the denominator `(ac;Q)_{m+nu} (Q;Q)_m` divided out.
pub fn phi_formula_iz(n: u32, sub: &Substitution, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let (m, nu) = split_parity(n);
    let big_q = sub.big_q();
    let denom = pochhammer(&sub.ac(), &big_q, Length::Finite(m as u64 + nu), trunc)?.mul(
        &pochhammer(&big_q, &big_q, Length::Finite(m as u64), trunc)?,
    )?;
    psi_formula_iz(n, sub, trunc)?.mul(&denom.series_inverse()?)
}

/// The combinatorial bounded sum: `[m i]_Q (-a;Q)_{i+nu} (-abc;Q)_i
/// (ac Q^{i+nu}; Q)_{m-i} (ab)^{m-i}`, division-free.
pub fn psi_formula_bu(n: u32, sub: &Substitution, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let (m, nu) = split_parity(n);
    let big_q = sub.big_q();
    let neg_a = sub.image(Var::A).neg();
    let neg_abc = sub.abc().neg();
    let ac = sub.ac();
    let ab = sub.ab();
    let mut out = SparsePoly::zero(trunc);
    for i in 0..=m {
        let ratio_start = ac.mul(&big_q.pow(i + nu as i64));
        let term = qbinomial(m, i, &big_q, trunc)
            .mul(&pochhammer(
                &neg_a,
                &big_q,
                Length::Finite(i as u64 + nu),
                trunc,
            )?)?
            .mul(&pochhammer(
                &neg_abc,
                &big_q,
                Length::Finite(i as u64),
                trunc,
            )?)?
            .mul(&pochhammer(
                &ratio_start,
                &big_q,
                Length::Finite((m - i) as u64),
                trunc,
            )?)?
            .mul_monomial(&ab.pow(m - i));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The combinatorial companion for ordinary partitions.
pub fn phi_formula_bu(n: u32, sub: &Substitution, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let (m, nu) = split_parity(n);
    let big_q = sub.big_q();
    let neg_a = sub.image(Var::A).neg();
    let neg_abc = sub.abc().neg();
    let ac = sub.ac();
    let ab = sub.ab();
    let mut out = SparsePoly::zero(trunc);
    for i in 0..=m {
        let term = qbinomial(m, i, &big_q, trunc)
            .mul(&pochhammer(
                &neg_a,
                &big_q,
                Length::Finite(i as u64 + nu),
                trunc,
            )?)?
            .mul(&pochhammer(
                &neg_abc,
                &big_q,
                Length::Finite(i as u64),
                trunc,
            )?)?
            .mul(&inv_pochhammer(
                &ac,
                &big_q,
                Length::Finite(i as u64 + nu),
                trunc,
            )?)?
            .mul_monomial(&ab.pow(m - i));
        out = out.add(&term)?;
    }
    out.mul(&inv_pochhammer(
        &big_q,
        &big_q,
        Length::Finite(m as u64),
        trunc,
    )?)
}

/// Truncated evaluation of the infinite products
/// `(-a, -abc; Q)_inf / (ab; Q)_inf` and
/// `(-a, -abc; Q)_inf / ((ab, ac, Q; Q)_inf)`.
pub fn boulet_product(
    kind: GenKind,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    let big_q = sub.big_q();
    let num = pochhammer(&sub.image(Var::A).neg(), &big_q, Length::Infinite, trunc)?.mul(
        &pochhammer(&sub.abc().neg(), &big_q, Length::Infinite, trunc)?,
    )?;
    let mut den = pochhammer(&sub.ab(), &big_q, Length::Infinite, trunc)?;
    if kind == GenKind::Phi {
        den = den
            .mul(&pochhammer(&sub.ac(), &big_q, Length::Infinite, trunc)?)?
            .mul(&pochhammer(&big_q, &big_q, Length::Infinite, trunc)?)?;
    }
    num.mul(&den.series_inverse()?)
}

/// Which finite sum representation of the bounded Schmidt generating
/// functions to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchmidtVariant {
    /// Sums over `[m i]_{q^2} (-q;q^2)_{m-i+nu} (-1;q^2)_i q^{2i}`.
    Old,
    /// Sums over `[n i]_q q^i`.
    New,
}

/// Finite sum representations of `sum q^O` over bounded distinct or
/// ordinary partitions.
pub fn rhs_schmidt_sum(
    n: u32,
    variant: SchmidtVariant,
    kind: GenKind,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    let vs = trunc.var_set().clone();
    let q = SignedMonomial::var(&vs, Var::Q);
    match variant {
        SchmidtVariant::Old => {
            let (m, nu) = split_parity(n);
            let q2 = q.pow(2);
            let neg_q = q.neg();
            let neg_one = SignedMonomial::one(&vs).neg();
            let mut sum = SparsePoly::zero(trunc);
            for i in 0..=m {
                let term = qbinomial(m, i, &q2, trunc)
                    .mul(&pochhammer(
                        &neg_q,
                        &q2,
                        Length::Finite((m - i) as u64 + nu),
                        trunc,
                    )?)?
                    .mul(&pochhammer(&neg_one, &q2, Length::Finite(i as u64), trunc)?)?
                    .mul_monomial(&q2.pow(i));
                sum = sum.add(&term)?;
            }
            match kind {
                GenKind::Psi => Ok(sum),
                GenKind::Phi => sum.mul(&inv_pochhammer(&q, &q, Length::Finite(n as u64), trunc)?),
            }
        }
        SchmidtVariant::New => {
            let mut sum = SparsePoly::zero(trunc);
            for i in 0..=n as i64 {
                let term = match kind {
                    GenKind::Psi => qbinomial(n as i64, i, &q, trunc).mul_monomial(&q.pow(i)),
                    GenKind::Phi => inv_pochhammer(&q, &q, Length::Finite(i as u64), trunc)?
                        .mul(&inv_pochhammer(
                            &q,
                            &q,
                            Length::Finite(n as u64 - i as u64),
                            trunc,
                        )?)?
                        .mul_monomial(&q.pow(i)),
                };
                sum = sum.add(&term)?;
            }
            Ok(sum)
        }
    }
}

/// The z-refined bounded sums: `sum_k q^k z^k [n k]_q` and
/// `sum_k q^k z^k / ((q;q)_k (q;q)_{n-k})`.
pub fn rhs_z_refined(n: u32, kind: GenKind, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let vs = trunc.var_set().clone();
    let q = SignedMonomial::var(&vs, Var::Q);
    let z = SignedMonomial::var(&vs, Var::Z);
    let mut sum = SparsePoly::zero(trunc);
    for k in 0..=n as i64 {
        let qz = q.pow(k).mul(&z.pow(k));
        let term = match kind {
            GenKind::Psi => qbinomial(n as i64, k, &q, trunc).mul_monomial(&qz),
            GenKind::Phi => inv_pochhammer(&q, &q, Length::Finite(k as u64), trunc)?
                .mul(&inv_pochhammer(
                    &q,
                    &q,
                    Length::Finite((n as i64 - k) as u64),
                    trunc,
                )?)?
                .mul_monomial(&qz),
        };
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// `H_n(zq, q^2)`: the Rogers-Szego polynomial after the shift.
pub fn rogers_szego_shifted(n: u32, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let n_i = n as i64;
    // Build H_n(z, q) exactly, then substitute z -> zq, q -> q^2.
    let wide = TruncationSpec::qz_degree(n_i * n_i + 1, n_i.max(1));
    let h = rogers_szego(n_i, &wide);
    let vs = VarSet::qz();
    let zq = SignedMonomial::build(&vs, false, &[(Var::Q, 1), (Var::Z, 1)]);
    let q2 = SignedMonomial::build(&vs, false, &[(Var::Q, 2)]);
    h.substitute(&[(Var::Z, zq), (Var::Q, q2)], trunc)
}

/// The Rogers-Szego expansion
/// `sum_k [m k]_{q^4} (-zq; q^4)_{m-k+nu} (-q/z; q^4)_k (zq)^{2k}`
/// for `n = 2m + nu`.
pub fn rogers_szego_expansion(n: u32, trunc: &TruncationSpec) -> Result<SparsePoly> {
    let (m, nu) = split_parity(n);
    let vs = trunc.var_set().clone();
    let q4 = SignedMonomial::build(&vs, false, &[(Var::Q, 4)]);
    let zq = SignedMonomial::build(&vs, false, &[(Var::Q, 1), (Var::Z, 1)]);
    let q_over_z = SignedMonomial::build(&vs, false, &[(Var::Q, 1), (Var::Z, -1)]);
    let mut out = SparsePoly::zero(trunc);
    for k in 0..=m {
        let term = qbinomial(m, k, &q4, trunc)
            .mul(&pochhammer(
                &zq.neg(),
                &q4,
                Length::Finite((m - k) as u64 + nu),
                trunc,
            )?)?
            .mul(&pochhammer(
                &q_over_z.neg(),
                &q4,
                Length::Finite(k as u64),
                trunc,
            )?)?
            .mul_monomial(&zq.pow(2 * k));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `sum over gap >= 2 partitions of weight(pi) q^|pi|`, where the weight is
/// the multiplicative gap weight, or its bounded variant when `hat_bound`
/// is given (largest part then at most `hat_bound - 1`).
pub fn rr_weighted_sum(
    largest_part: Option<u32>,
    hat_bound: Option<u32>,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    let qmax = trunc
        .max_of(Var::Q)
        .ok_or_else(|| Error::Divergence("weighted gap sum needs a q-degree cap".into()))?;
    let mut filter = ClassFilter::new(PartitionClass::RogersRamanujan, Cap::Size(qmax as u64));
    let bound = match (hat_bound, largest_part) {
        (Some(nb), _) => Some(nb.saturating_sub(1)),
        (None, Some(n)) => Some(n),
        (None, None) => None,
    };
    if let Some(b) = bound {
        filter = filter.with_max_part(b);
    }
    let mut acc: Vec<i64> = vec![0; qmax as usize + 1];
    partition::visit_class(&filter, |parts| {
        let p = Partition::new(parts.to_vec()).expect("visitor yields valid partitions");
        let w = match hat_bound {
            Some(nb) => partition::rr_weight_hat(&p, nb),
            None => partition::rr_weight(&p),
        }
        .expect("class respects the weight preconditions");
        acc[p.size() as usize] += w as i64;
    })?;
    Ok(SparsePoly::from_terms(
        trunc,
        acc.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (vec![d as i64], BigInt::from(c))),
    ))
}
