//! The identity catalog and the verification engine.
//!
//! Every identity family gets a stable id, a human-readable statement, and
//! an evaluator producing both sides over the same ring and truncation.
//! Series families are compared monomial by monomial inside the window;
//! counting families compare exact integer counts over a range of sizes.
//! Verification never proves anything symbolically: unbounded forms are
//! checked through stabilization, taking the part bound implied by the
//! degree window.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfun::{self, GenKind, SchmidtVariant, Substitution};
use crate::partition::{self, Cap, ClassFilter, Partition, PartitionClass, TwoColorConstraint};
use crate::poly::{monomial_string, SignedMonomial, SparsePoly, TruncationSpec, Var, VarSet};
use crate::qseries::{inv_pochhammer, pochhammer, qbinomial, Length};

/// How an identity family is checked.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "series")]
    Series,
    #[serde(rename = "count")]
    Count,
}

/// One registered identity family.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FamilyDescriptor {
    pub id: &'static str,
    pub mode: Mode,
    pub statement: &'static str,
}

static FAMILIES: &[FamilyDescriptor] = &[
    FamilyDescriptor { id: "boulet-psi-product", mode: Mode::Series, statement: "sum of a^ceil(O) b^floor(O) c^ceil(E) d^floor(E) over distinct-part partitions equals (-a,-abc;Q)inf/(ab;Q)inf with Q=abcd" },
    FamilyDescriptor { id: "boulet-phi-product", mode: Mode::Series, statement: "the same weighted sum over all partitions equals (-a,-abc;Q)inf/((ab,ac,Q;Q)inf)" },
    FamilyDescriptor { id: "schmidt", mode: Mode::Series, statement: "sum of q^O over distinct-part partitions equals 1/(q;q)inf" },
    FamilyDescriptor { id: "uap", mode: Mode::Series, statement: "sum of q^O over all partitions equals 1/(q;q)inf^2" },
    FamilyDescriptor { id: "iz-psi", mode: Mode::Series, statement: "bounded distinct-part weight sum equals the [m i]_Q (-a;Q)_(m-i+v) (-c;Q)_i (ab)^i sum" },
    FamilyDescriptor { id: "iz-phi", mode: Mode::Series, statement: "bounded all-partition weight sum equals the same sum over (ac;Q)_(m+v) (Q;Q)_m" },
    FamilyDescriptor { id: "bu-psi", mode: Mode::Series, statement: "bounded distinct-part weight sum equals the division-free [m i]_Q (-a;Q)_(i+v) (-abc;Q)_i (ac Q^(i+v);Q)_(m-i) (ab)^(m-i) sum" },
    FamilyDescriptor { id: "bu-phi", mode: Mode::Series, statement: "bounded all-partition weight sum equals its companion with 1/((ac;Q)_(i+v) (Q;Q)_m)" },
    FamilyDescriptor { id: "rogers-szego", mode: Mode::Series, statement: "H_n(zq,q^2) equals sum_k [m k]_(q^4) (-zq;q^4)_(m-k+v) (-q/z;q^4)_k (zq)^(2k) for n = 2m+v" },
    FamilyDescriptor { id: "rs-psi-link", mode: Mode::Series, statement: "H_n(zq,q^2) equals the (zq,zq,q/z,q/z)-weighted sum over distinct parts <= n" },
    FamilyDescriptor { id: "psi-alt-genfun", mode: Mode::Series, statement: "sum of q^|pi| z^gamma over distinct parts <= n equals sum_k q^k z^k [n k]_(q^2)" },
    FamilyDescriptor { id: "z-refined-psi", mode: Mode::Series, statement: "sum of q^O z^gamma over distinct parts <= n equals sum_k q^k z^k [n k]_q" },
    FamilyDescriptor { id: "z-refined-phi", mode: Mode::Series, statement: "sum of q^O z^gamma over all parts <= n equals sum_k q^k z^k/((q;q)_k (q;q)_(n-k))" },
    FamilyDescriptor { id: "finite-schmidt-old", mode: Mode::Series, statement: "bounded q^O sums equal the [m i]_(q^2) (-q;q^2)_(m-i+v) (-1;q^2)_i q^(2i) representation" },
    FamilyDescriptor { id: "finite-schmidt-new", mode: Mode::Series, statement: "bounded q^O sums equal sum_i [n i]_q q^i, resp. sum_i q^i/((q;q)_i (q;q)_(n-i))" },
    FamilyDescriptor { id: "hook-count", mode: Mode::Count, statement: "distinct parts <= N with O = n are equinumerous with partitions of n of largest hook <= N" },
    FamilyDescriptor { id: "two-color", mode: Mode::Count, statement: "partitions with parts <= N and O = n are equinumerous with red/green partitions of n with #red + max green <= N" },
    FamilyDescriptor { id: "hook-refined", mode: Mode::Count, statement: "adding gamma = j on the left matches exactly j parts on the hook side" },
    FamilyDescriptor { id: "two-color-refined", mode: Mode::Count, statement: "adding gamma = j on the left matches exactly j red parts and max green <= N - j" },
    FamilyDescriptor { id: "sign-E", mode: Mode::Series, statement: "sum of (-1)^E q^O over distinct parts equals (-q;q^2)inf; over all partitions, 1/(q^2;q^2)inf" },
    FamilyDescriptor { id: "sign-E-finite", mode: Mode::Series, statement: "the bounded versions with parts <= N use length ceil(N/2) on the distinct side, floor(N/2) on the ordinary side" },
    FamilyDescriptor { id: "ceil-E", mode: Mode::Series, statement: "sum of (-1)^ceil(E) q^O over distinct parts equals (-q;-q^2)inf; over all partitions, 1/(-q^2;-q^2)inf" },
    FamilyDescriptor { id: "ceil-E-finite", mode: Mode::Series, statement: "the bounded versions with parts <= N use length ceil(N/2) on the distinct side, floor(N/2) on the ordinary side" },
    FamilyDescriptor { id: "floor-E-mod3", mode: Mode::Series, statement: "sum of (-1)^E q^(O+floor(E)) over distinct parts equals (-q;q^3)inf; over all partitions, 1/(q^3;q^3)inf" },
    FamilyDescriptor { id: "floor-E-mod3-finite", mode: Mode::Series, statement: "the bounded versions with parts <= N use length ceil(N/2) on the distinct side, floor(N/2) on the ordinary side" },
    FamilyDescriptor { id: "general-rts", mode: Mode::Series, statement: "the (q^r,q^t,-1,eps q^s) weight sums to (-q^r; Q)inf over distinct parts and 1/(Q;Q)inf over all partitions, with Q = -eps q^(r+t+s) and r+t > 0" },
    FamilyDescriptor { id: "general-rts-finite", mode: Mode::Series, statement: "the bounded versions of the general family, same split of the length" },
    FamilyDescriptor { id: "odd-sign", mode: Mode::Series, statement: "sum of (-1)^O q^E over parts <= N vanishes for odd N and gives (-q;q^2)_(N/2), resp. 1/(q^2;q^2)_(N/2), for even N" },
    FamilyDescriptor { id: "E-sum", mode: Mode::Series, statement: "sum of q^E over distinct parts <= N equals sum_i [N i]_q; over all parts <= N, sum_i 1/((q;q)_i (q;q)_(N-i))" },
    FamilyDescriptor { id: "E-refined", mode: Mode::Series, statement: "restricting to gamma = j gives [N j]_q, resp. 1/((q;q)_j (q;q)_(N-j))" },
    FamilyDescriptor { id: "E-limit", mode: Mode::Series, statement: "without the part bound, gamma = j gives 1/(q;q)_j over distinct parts and 1/((q;q)_j (q;q)inf) over all partitions" },
    FamilyDescriptor { id: "E-two-color", mode: Mode::Count, statement: "partitions with E = n and gamma = j are equinumerous with red/green partitions of n whose red parts are <= j" },
    FamilyDescriptor { id: "parts-leq-j", mode: Mode::Count, statement: "distinct-part partitions with E = n and gamma = j are equinumerous with partitions of n into parts <= j" },
    FamilyDescriptor { id: "rr-weighted", mode: Mode::Series, statement: "sum of q^O over distinct parts equals the gap-weighted sum over gap >= 2 partitions" },
    FamilyDescriptor { id: "rr-weighted-finite", mode: Mode::Series, statement: "the same with largest part <= N on both sides" },
    FamilyDescriptor { id: "rr-hat", mode: Mode::Series, statement: "sum of q^E over distinct parts <= N equals the (N - largest) gap-weighted sum over gap >= 2 partitions <= N-1, empty partition weighing N+1" },
];

/// All registered identity families, in catalog order.
pub fn registry() -> &'static [FamilyDescriptor] {
    FAMILIES
}

/// Look up a family by id.
pub fn family(id: &str) -> Option<&'static FamilyDescriptor> {
    FAMILIES.iter().find(|f| f.id == id)
}

fn family_index(id: &str) -> usize {
    FAMILIES
        .iter()
        .position(|f| f.id == id)
        .unwrap_or(usize::MAX)
}

/// Concrete parameters of one identity instance. Fields apply per family;
/// unused ones stay `None`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub n_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<GenKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub: Option<String>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(v) = self.n_bound {
            parts.push(format!("N={v}"));
        }
        if let Some(v) = self.j {
            parts.push(format!("j={v}"));
        }
        if let Some(v) = self.n {
            parts.push(format!("n={v}"));
        }
        if let Some(v) = self.r {
            parts.push(format!("r={v}"));
        }
        if let Some(v) = self.t {
            parts.push(format!("t={v}"));
        }
        if let Some(v) = self.s {
            parts.push(format!("s={v}"));
        }
        if let Some(v) = self.eps {
            parts.push(format!("eps={v}"));
        }
        if let Some(v) = self.kind {
            parts.push(format!("kind={}", v.as_str()));
        }
        if let Some(v) = &self.sub {
            parts.push(format!("sub={v}"));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A registered family bound to concrete parameters and a degree window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityInstance {
    pub family_id: String,
    pub params: Params,
    /// q-degree for series in q, total degree in the four-variable ring,
    /// largest checked size for counting families.
    pub degree: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "error")]
    Error,
}

/// First differing monomial between the two sides.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of verifying one instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub status: Status,
    pub checked_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
    /// Diagnostic detail, present only on evaluation errors.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

/// Degree windows and parameter grids for the default suite. All values
/// are data and overridable per run.
#[derive(Clone, Debug)]
pub struct BoundsProfile {
    /// Part-bound grid for bounded series families: N = 0..=n_max.
    pub n_max: u32,
    /// q-degree window for series families.
    pub q_degree: u32,
    /// r, t, s range of the general signed family.
    pub rts_max: u32,
    /// Include the four-variable formal-ring instances.
    pub four_variable: bool,
    pub four_var_n_max: u32,
    pub four_var_degree: u32,
    /// Counting families: N = 0..=count_bound_max, n = 0..=count_n_max.
    pub count_bound_max: u32,
    pub count_n_max: u64,
    /// Degree windows for the heavier stabilized enumerations.
    pub rts_degree: u32,
    pub rts_phi_degree: u32,
    pub rts_finite_phi_degree: u32,
    pub e_limit_degree: u32,
    pub e_limit_j_max: u32,
    /// E-statistic counting families: j = 0..=pair_j_max, n = 0..=pair_n_max.
    pub pair_j_max: u32,
    pub pair_n_max: u64,
}

impl Default for BoundsProfile {
    fn default() -> Self {
        BoundsProfile {
            n_max: 10,
            q_degree: 40,
            rts_max: 2,
            four_variable: true,
            four_var_n_max: 6,
            four_var_degree: 16,
            count_bound_max: 6,
            count_n_max: 14,
            rts_degree: 32,
            rts_phi_degree: 16,
            rts_finite_phi_degree: 22,
            e_limit_degree: 22,
            e_limit_j_max: 6,
            pair_j_max: 5,
            pair_n_max: 12,
        }
    }
}

impl BoundsProfile {
    /// Force one explicit degree everywhere (an explicit `--degree` wins
    /// over the per-family derating).
    pub fn with_degree(mut self, d: u32) -> Self {
        self.q_degree = d;
        self.rts_degree = d;
        self.rts_phi_degree = d;
        self.rts_finite_phi_degree = d;
        self.e_limit_degree = d;
        self
    }
}

/// Explicit parameter pins for a suite run; `None` keeps the grid.
#[derive(Clone, Debug, Default)]
pub struct GridOverrides {
    pub n_bound: Option<u32>,
    pub j: Option<u32>,
    pub n: Option<u64>,
    pub r: Option<u32>,
    pub t: Option<u32>,
    pub s: Option<u32>,
    pub eps: Option<i8>,
}

// ---------------------------------------------------------------------------
// Instantiation and grids
// ---------------------------------------------------------------------------

fn kinded(id: &str) -> bool {
    matches!(
        id,
        "finite-schmidt-old"
            | "finite-schmidt-new"
            | "sign-E"
            | "sign-E-finite"
            | "ceil-E"
            | "ceil-E-finite"
            | "floor-E-mod3"
            | "floor-E-mod3-finite"
            | "general-rts"
            | "general-rts-finite"
            | "odd-sign"
            | "E-sum"
            | "E-refined"
            | "E-limit"
    )
}

fn needs_n_bound(id: &str) -> bool {
    matches!(
        id,
        "iz-psi"
            | "iz-phi"
            | "bu-psi"
            | "bu-phi"
            | "rogers-szego"
            | "rs-psi-link"
            | "psi-alt-genfun"
            | "z-refined-psi"
            | "z-refined-phi"
            | "finite-schmidt-old"
            | "finite-schmidt-new"
            | "hook-count"
            | "two-color"
            | "hook-refined"
            | "two-color-refined"
            | "sign-E-finite"
            | "ceil-E-finite"
            | "floor-E-mod3-finite"
            | "general-rts-finite"
            | "odd-sign"
            | "E-sum"
            | "E-refined"
            | "rr-weighted-finite"
            | "rr-hat"
    )
}

/// The substitution presets exercised by the bounded-formula families.
fn formula_presets() -> Vec<Substitution> {
    vec![
        Substitution::odd_sum(),
        Substitution::sign_even(),
        Substitution::ceil_even(),
        Substitution::floor_even(),
        Substitution::even_sum(),
        Substitution::neg_odd(),
        Substitution::size_gamma(),
        Substitution::odd_gamma(),
    ]
}

fn preset_by_id(id: &str) -> Option<Substitution> {
    let all = formula_presets();
    all.into_iter()
        .find(|s| s.id() == id)
        .or_else(|| (id == "a,b,c,d").then(Substitution::formal))
}

/// Bind a family to parameters, validating them; the degree defaults to
/// the family's slot in the default profile.
pub fn instantiate(id: &str, params: Params, degree: Option<u32>) -> Result<IdentityInstance> {
    let fam = family(id).ok_or_else(|| Error::Params(format!("unknown identity {id:?}")))?;
    let prof = BoundsProfile::default();
    if kinded(id) && params.kind.is_none() {
        return Err(Error::Params(format!("{id} needs kind=psi or kind=phi")));
    }
    if needs_n_bound(id) && params.n_bound.is_none() {
        return Err(Error::Params(format!("{id} needs N")));
    }
    match id {
        "general-rts" | "general-rts-finite" => {
            let (r, t, s, eps) = (
                params.r.ok_or_else(|| Error::Params("missing r".into()))?,
                params.t.ok_or_else(|| Error::Params("missing t".into()))?,
                params.s.ok_or_else(|| Error::Params("missing s".into()))?,
                params
                    .eps
                    .ok_or_else(|| Error::Params("missing eps".into()))?,
            );
            Substitution::rts(r, t, s, eps)?;
            if params.kind == Some(GenKind::Phi) && r == 0 {
                return Err(Error::Params(
                    "the ordinary-partition side needs r >= 1 to stabilize".into(),
                ));
            }
        }
        "hook-refined" | "two-color-refined" | "E-refined" => {
            let j = params.j.ok_or_else(|| Error::Params("missing j".into()))?;
            if j > params.n_bound.unwrap() {
                return Err(Error::Params("j must not exceed N".into()));
            }
        }
        "E-limit" | "E-two-color" | "parts-leq-j" => {
            params.j.ok_or_else(|| Error::Params("missing j".into()))?;
        }
        "iz-psi" | "iz-phi" | "bu-psi" | "bu-phi" => {
            let sid = params
                .sub
                .as_deref()
                .ok_or_else(|| Error::Params("missing sub".into()))?;
            preset_by_id(sid)
                .ok_or_else(|| Error::Params(format!("unknown substitution {sid:?}")))?;
        }
        _ => {}
    }
    let degree = degree.unwrap_or(match id {
        "boulet-psi-product" | "boulet-phi-product" => prof.four_var_degree,
        "rogers-szego" => exact_rs_degree(params.n_bound.unwrap_or(0)),
        "rs-psi-link" | "psi-alt-genfun" => {
            let n = params.n_bound.unwrap_or(0);
            n * (n + 1) / 2 + 1
        }
        "hook-count" | "two-color" | "hook-refined" | "two-color-refined" => params
            .n
            .map(|n| n as u32)
            .unwrap_or(prof.count_n_max as u32),
        "E-two-color" | "parts-leq-j" => {
            params.n.map(|n| n as u32).unwrap_or(prof.pair_n_max as u32)
        }
        "general-rts" => match params.kind {
            Some(GenKind::Phi) => prof.rts_phi_degree,
            _ => prof.rts_degree,
        },
        "general-rts-finite" => match params.kind {
            Some(GenKind::Phi) => prof.rts_finite_phi_degree,
            _ => prof.q_degree,
        },
        "E-limit" => prof.e_limit_degree,
        _ if params.sub.as_deref() == Some("a,b,c,d") => prof.four_var_degree,
        _ => prof.q_degree,
    });
    Ok(IdentityInstance {
        family_id: fam.id.to_string(),
        params,
        degree,
    })
}

/// q-degree needed to hold both sides of the Rogers-Szego expansion
/// exactly (coarse upper bound on the largest exponent).
fn exact_rs_degree(n: u32) -> u32 {
    6 * n * n + 20
}

fn n_range(prof_max: u32, ov: Option<u32>) -> Vec<u32> {
    match ov {
        Some(n) => vec![n],
        None => (0..=prof_max).collect(),
    }
}

/// The default instance grid of one family under a profile, with explicit
/// parameter pins applied.
pub fn default_grid(
    id: &str,
    profile: &BoundsProfile,
    ov: &GridOverrides,
) -> Result<Vec<IdentityInstance>> {
    let fam = family(id).ok_or_else(|| Error::Params(format!("unknown identity {id:?}")))?;
    let mut out = Vec::new();
    let mut push = |params: Params, degree: u32| {
        out.push(IdentityInstance {
            family_id: fam.id.to_string(),
            params,
            degree,
        });
    };
    let kinds = [GenKind::Psi, GenKind::Phi];
    match id {
        "schmidt" | "uap" | "rr-weighted" => push(Params::default(), profile.q_degree),
        "boulet-psi-product" | "boulet-phi-product" => {
            push(Params::default(), profile.four_var_degree)
        }
        "iz-psi" | "iz-phi" | "bu-psi" | "bu-phi" => {
            for sub in formula_presets() {
                for n in n_range(profile.n_max, ov.n_bound) {
                    push(
                        Params {
                            n_bound: Some(n),
                            sub: Some(sub.id().to_string()),
                            ..Params::default()
                        },
                        profile.q_degree,
                    );
                }
            }
            if profile.four_variable {
                for n in n_range(profile.four_var_n_max, ov.n_bound) {
                    push(
                        Params {
                            n_bound: Some(n),
                            sub: Some("a,b,c,d".to_string()),
                            ..Params::default()
                        },
                        profile.four_var_degree,
                    );
                }
            }
        }
        "rogers-szego" => {
            for n in n_range(12, ov.n_bound) {
                push(
                    Params {
                        n_bound: Some(n),
                        ..Params::default()
                    },
                    exact_rs_degree(n),
                );
            }
        }
        "rs-psi-link" | "psi-alt-genfun" => {
            for n in n_range(profile.n_max, ov.n_bound) {
                push(
                    Params {
                        n_bound: Some(n),
                        ..Params::default()
                    },
                    n * (n + 1) / 2 + 1,
                );
            }
        }
        "z-refined-psi" | "z-refined-phi" => {
            for n in n_range(profile.n_max, ov.n_bound) {
                push(
                    Params {
                        n_bound: Some(n),
                        ..Params::default()
                    },
                    profile.q_degree,
                );
            }
        }
        "finite-schmidt-old"
        | "finite-schmidt-new"
        | "odd-sign"
        | "E-sum"
        | "sign-E-finite"
        | "ceil-E-finite"
        | "floor-E-mod3-finite" => {
            for kind in kinds {
                for n in n_range(profile.n_max, ov.n_bound) {
                    push(
                        Params {
                            n_bound: Some(n),
                            kind: Some(kind),
                            ..Params::default()
                        },
                        profile.q_degree,
                    );
                }
            }
        }
        "sign-E" | "ceil-E" | "floor-E-mod3" => {
            for kind in kinds {
                push(
                    Params {
                        kind: Some(kind),
                        ..Params::default()
                    },
                    profile.q_degree,
                );
            }
        }
        "E-refined" => {
            if let (Some(j), Some(nb)) = (ov.j, ov.n_bound) {
                if j > nb {
                    return Err(Error::Params("j must not exceed N".into()));
                }
            }
            for kind in kinds {
                for n in n_range(profile.n_max, ov.n_bound) {
                    let js = match ov.j {
                        Some(j) => vec![j],
                        None => (0..=n).collect(),
                    };
                    for j in js {
                        if j > n {
                            continue;
                        }
                        push(
                            Params {
                                n_bound: Some(n),
                                j: Some(j),
                                kind: Some(kind),
                                ..Params::default()
                            },
                            profile.q_degree,
                        );
                    }
                }
            }
        }
        "E-limit" => {
            for kind in kinds {
                let js = match ov.j {
                    Some(j) => vec![j],
                    None => (0..=profile.e_limit_j_max).collect(),
                };
                for j in js {
                    push(
                        Params {
                            j: Some(j),
                            kind: Some(kind),
                            ..Params::default()
                        },
                        profile.e_limit_degree,
                    );
                }
            }
        }
        "general-rts" | "general-rts-finite" => {
            let finite = id == "general-rts-finite";
            if let (Some(r), Some(t)) = (ov.r, ov.t) {
                if r + t == 0 {
                    return Err(Error::Params("the general family needs r + t > 0".into()));
                }
            }
            if let Some(e) = ov.eps {
                if e != 1 && e != -1 {
                    return Err(Error::Params("eps must be +1 or -1".into()));
                }
            }
            for kind in kinds {
                let rs = match ov.r {
                    Some(r) => vec![r],
                    None => (0..=profile.rts_max).collect(),
                };
                let ts = match ov.t {
                    Some(t) => vec![t],
                    None => (0..=profile.rts_max).collect(),
                };
                let ss = match ov.s {
                    Some(s) => vec![s],
                    None => (0..=profile.rts_max).collect(),
                };
                let es = match ov.eps {
                    Some(e) => vec![e],
                    None => vec![1, -1],
                };
                for &r in &rs {
                    for &t in &ts {
                        if r + t == 0 {
                            continue;
                        }
                        if kind == GenKind::Phi && r == 0 {
                            continue;
                        }
                        for &s in &ss {
                            for &eps in &es {
                                let degree = match (finite, kind) {
                                    (false, GenKind::Psi) => profile.rts_degree,
                                    (false, GenKind::Phi) => profile.rts_phi_degree,
                                    (true, GenKind::Psi) => profile.q_degree,
                                    (true, GenKind::Phi) => profile.rts_finite_phi_degree,
                                };
                                let ns = if finite {
                                    n_range(profile.n_max, ov.n_bound)
                                } else {
                                    vec![0]
                                };
                                for n in ns {
                                    push(
                                        Params {
                                            n_bound: finite.then_some(n),
                                            r: Some(r),
                                            t: Some(t),
                                            s: Some(s),
                                            eps: Some(eps),
                                            kind: Some(kind),
                                            ..Params::default()
                                        },
                                        degree,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        "hook-count" | "two-color" => {
            for n_bound in n_range(profile.count_bound_max, ov.n_bound) {
                push(
                    Params {
                        n_bound: Some(n_bound),
                        n: ov.n,
                        ..Params::default()
                    },
                    ov.n.unwrap_or(profile.count_n_max) as u32,
                );
            }
        }
        "hook-refined" | "two-color-refined" => {
            if let (Some(j), Some(nb)) = (ov.j, ov.n_bound) {
                if j > nb {
                    return Err(Error::Params("j must not exceed N".into()));
                }
            }
            for n_bound in n_range(profile.count_bound_max, ov.n_bound) {
                let js = match ov.j {
                    Some(j) => vec![j],
                    None => (0..=n_bound).collect(),
                };
                for j in js {
                    if j > n_bound {
                        continue;
                    }
                    push(
                        Params {
                            n_bound: Some(n_bound),
                            j: Some(j),
                            n: ov.n,
                            ..Params::default()
                        },
                        ov.n.unwrap_or(profile.count_n_max) as u32,
                    );
                }
            }
        }
        "E-two-color" | "parts-leq-j" => {
            let js = match ov.j {
                Some(j) => vec![j],
                None => (0..=profile.pair_j_max).collect(),
            };
            for j in js {
                push(
                    Params {
                        j: Some(j),
                        n: ov.n,
                        ..Params::default()
                    },
                    ov.n.unwrap_or(profile.pair_n_max) as u32,
                );
            }
        }
        "rr-weighted-finite" | "rr-hat" => {
            for n in n_range(profile.n_max, ov.n_bound) {
                push(
                    Params {
                        n_bound: Some(n),
                        ..Params::default()
                    },
                    profile.q_degree,
                );
            }
        }
        other => return Err(Error::Params(format!("unknown identity {other:?}"))),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

enum Evaluated {
    Series(SparsePoly, SparsePoly),
    /// (n, lhs count, rhs count) triples.
    Counts(Vec<(u64, u64, u64)>),
}

fn q_sm(vs: &VarSet, negative: bool, e: i64) -> SignedMonomial {
    SignedMonomial::build(vs, negative, &[(Var::Q, e)])
}

fn kind_enum(
    kind: GenKind,
    bound: Option<u32>,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> Result<SparsePoly> {
    match kind {
        GenKind::Psi => genfun::psi_enum(bound, sub, trunc),
        GenKind::Phi => genfun::phi_enum(bound, sub, trunc),
    }
}

fn require<T: Copy>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Params(format!("missing {what}")))
}

/// Product lengths of the bounded signed families: `ceil(N/2)` on the
/// distinct-part side, `floor(N/2)` on the ordinary side. Both fall out of
/// the c = -1 collapse of the bounded formulas (numerator length M + v,
/// denominator length M for N = 2M + v), and the floor is what exhaustive
/// enumeration confirms at odd N.
fn half_len(n: u32, kind: GenKind) -> u64 {
    match kind {
        GenKind::Psi => n.div_ceil(2) as u64,
        GenKind::Phi => (n / 2) as u64,
    }
}

/// Count partitions in a class with parts <= max_part by odd-indexed sum
/// (and alternating sum, when `gamma` is set), for every n <= n_max.
fn counts_by_odd_sum(
    class: PartitionClass,
    max_part: u32,
    n_max: u64,
    gamma: Option<u64>,
) -> Vec<u64> {
    let filter = ClassFilter::new(class, Cap::OddSum(n_max)).with_max_part(max_part);
    let mut counts = vec![0u64; n_max as usize + 1];
    partition::visit_class(&filter, |parts| {
        let p = Partition::new(parts.to_vec()).expect("valid by construction");
        let s = p.stats();
        if s.odd_sum <= n_max && gamma.is_none_or(|g| s.gamma == g) {
            counts[s.odd_sum as usize] += 1;
        }
    })
    .expect("odd-sum cap is finite");
    counts
}

/// Count partitions with E = n and gamma = j for every n <= n_max.
fn counts_by_even_sum(class: PartitionClass, j: u64, n_max: u64) -> Vec<u64> {
    // gamma = j and E <= n force the largest part below j + n.
    let max_part = (j + n_max) as u32;
    let filter = ClassFilter::new(class, Cap::EvenSum(n_max)).with_max_part(max_part);
    let mut counts = vec![0u64; n_max as usize + 1];
    partition::visit_class(&filter, |parts| {
        let p = Partition::new(parts.to_vec()).expect("valid by construction");
        let s = p.stats();
        if s.even_sum <= n_max && s.gamma == j {
            counts[s.even_sum as usize] += 1;
        }
    })
    .expect("even-sum cap with a part bound is finite");
    counts
}

fn count_points(params: &Params, degree: u32) -> Vec<u64> {
    match params.n {
        Some(n) => vec![n],
        None => (0..=degree as u64).collect(),
    }
}

fn evaluate(inst: &IdentityInstance) -> Result<Evaluated> {
    let p = &inst.params;
    let d = inst.degree as i64;
    let vs_q = VarSet::q();
    let tq = TruncationSpec::q_degree(d);
    let q = q_sm(&vs_q, false, 1);
    match inst.family_id.as_str() {
        "schmidt" => {
            let lhs = genfun::psi_enum(None, &Substitution::odd_sum(), &tq)?;
            let rhs = inv_pochhammer(&q, &q, Length::Infinite, &tq)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "uap" => {
            let lhs = genfun::phi_enum(None, &Substitution::odd_sum(), &tq)?;
            let inv = inv_pochhammer(&q, &q, Length::Infinite, &tq)?;
            Ok(Evaluated::Series(lhs, inv.mul(&inv)?))
        }
        "boulet-psi-product" | "boulet-phi-product" => {
            let kind = if inst.family_id == "boulet-psi-product" {
                GenKind::Psi
            } else {
                GenKind::Phi
            };
            let t4 = TruncationSpec::abcd_total(d);
            let sub = Substitution::formal();
            let lhs = kind_enum(kind, None, &sub, &t4)?;
            let rhs = genfun::boulet_product(kind, &sub, &t4)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "iz-psi" | "iz-phi" | "bu-psi" | "bu-phi" => {
            let n = require(p.n_bound, "N")?;
            let sid = p
                .sub
                .as_deref()
                .ok_or_else(|| Error::Params("missing sub".into()))?;
            let sub = preset_by_id(sid)
                .ok_or_else(|| Error::Params(format!("unknown substitution {sid:?}")))?;
            let trunc = if sub.var_set() == &VarSet::abcd() {
                TruncationSpec::abcd_total(d)
            } else if sub.var_set() == &VarSet::qz() {
                TruncationSpec::qz_degree(d, n as i64)
            } else {
                tq.clone()
            };
            let (lhs, rhs) = match inst.family_id.as_str() {
                "iz-psi" => (
                    genfun::psi_enum(Some(n), &sub, &trunc)?,
                    genfun::psi_formula_iz(n, &sub, &trunc)?,
                ),
                "iz-phi" => (
                    genfun::phi_enum(Some(n), &sub, &trunc)?,
                    genfun::phi_formula_iz(n, &sub, &trunc)?,
                ),
                "bu-psi" => (
                    genfun::psi_enum(Some(n), &sub, &trunc)?,
                    genfun::psi_formula_bu(n, &sub, &trunc)?,
                ),
                _ => (
                    genfun::phi_enum(Some(n), &sub, &trunc)?,
                    genfun::phi_formula_bu(n, &sub, &trunc)?,
                ),
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "rogers-szego" => {
            let n = require(p.n_bound, "N")?;
            let t = TruncationSpec::qz_degree(d, (n as i64).max(1));
            let lhs = genfun::rogers_szego_shifted(n, &t)?;
            let rhs = genfun::rogers_szego_expansion(n, &t)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "rs-psi-link" => {
            let n = require(p.n_bound, "N")?;
            let t = TruncationSpec::qz_degree(d, (n as i64).max(1));
            let lhs = genfun::rogers_szego_shifted(n, &t)?;
            let rhs = genfun::psi_enum(Some(n), &Substitution::size_gamma(), &t)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "psi-alt-genfun" => {
            let n = require(p.n_bound, "N")?;
            let t = TruncationSpec::qz_degree(d, (n as i64).max(1));
            let lhs = genfun::psi_enum(Some(n), &Substitution::size_gamma(), &t)?;
            let vs = VarSet::qz();
            let q2 = SignedMonomial::build(&vs, false, &[(Var::Q, 2)]);
            let zq = SignedMonomial::build(&vs, false, &[(Var::Q, 1), (Var::Z, 1)]);
            let mut rhs = SparsePoly::zero(&t);
            for k in 0..=n as i64 {
                rhs = rhs.add(&qbinomial(n as i64, k, &q2, &t).mul_monomial(&zq.pow(k)))?;
            }
            Ok(Evaluated::Series(lhs, rhs))
        }
        "z-refined-psi" | "z-refined-phi" => {
            let n = require(p.n_bound, "N")?;
            let kind = if inst.family_id == "z-refined-psi" {
                GenKind::Psi
            } else {
                GenKind::Phi
            };
            let t = TruncationSpec::qz_degree(d, n as i64);
            let lhs = kind_enum(kind, Some(n), &Substitution::odd_gamma(), &t)?;
            let rhs = genfun::rhs_z_refined(n, kind, &t)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "finite-schmidt-old" | "finite-schmidt-new" => {
            let n = require(p.n_bound, "N")?;
            let kind = require(p.kind, "kind")?;
            let variant = if inst.family_id == "finite-schmidt-old" {
                SchmidtVariant::Old
            } else {
                SchmidtVariant::New
            };
            let lhs = kind_enum(kind, Some(n), &Substitution::odd_sum(), &tq)?;
            let rhs = genfun::rhs_schmidt_sum(n, variant, kind, &tq)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "sign-E"
        | "sign-E-finite"
        | "ceil-E"
        | "ceil-E-finite"
        | "floor-E-mod3"
        | "floor-E-mod3-finite" => {
            let kind = require(p.kind, "kind")?;
            let finite = inst.family_id.ends_with("-finite");
            let (sub, psi_first, psi_ratio, phi_first) = match inst.family_id.as_str() {
                "sign-E" | "sign-E-finite" => (
                    Substitution::sign_even(),
                    q_sm(&vs_q, true, 1),
                    q_sm(&vs_q, false, 2),
                    q_sm(&vs_q, false, 2),
                ),
                "ceil-E" | "ceil-E-finite" => (
                    Substitution::ceil_even(),
                    q_sm(&vs_q, true, 1),
                    q_sm(&vs_q, true, 2),
                    q_sm(&vs_q, true, 2),
                ),
                _ => (
                    Substitution::floor_even(),
                    q_sm(&vs_q, true, 1),
                    q_sm(&vs_q, false, 3),
                    q_sm(&vs_q, false, 3),
                ),
            };
            let (bound, len) = if finite {
                let n = require(p.n_bound, "N")?;
                (Some(n), Length::Finite(half_len(n, kind)))
            } else {
                (None, Length::Infinite)
            };
            let lhs = kind_enum(kind, bound, &sub, &tq)?;
            let rhs = match kind {
                GenKind::Psi => pochhammer(&psi_first, &psi_ratio, len, &tq)?,
                GenKind::Phi => inv_pochhammer(&phi_first, &phi_first, len, &tq)?,
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "general-rts" | "general-rts-finite" => {
            let kind = require(p.kind, "kind")?;
            let (r, t, s) = (require(p.r, "r")?, require(p.t, "t")?, require(p.s, "s")?);
            let eps = require(p.eps, "eps")?;
            let sub = Substitution::rts(r, t, s, eps)?;
            let (bound, len) = if inst.family_id.ends_with("-finite") {
                let n = require(p.n_bound, "N")?;
                (Some(n), Length::Finite(half_len(n, kind)))
            } else {
                (None, Length::Infinite)
            };
            let lhs = kind_enum(kind, bound, &sub, &tq)?;
            // The product base is Q after substitution: -eps q^(r+t+s).
            // The eps-signed base disagrees with every c = -1 specialization.
            let modulus = (r + t + s) as i64;
            let ratio = q_sm(&vs_q, eps > 0, modulus);
            let rhs = match kind {
                GenKind::Psi => pochhammer(&q_sm(&vs_q, true, r as i64), &ratio, len, &tq)?,
                GenKind::Phi => inv_pochhammer(&ratio, &ratio, len, &tq)?,
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "odd-sign" => {
            let n = require(p.n_bound, "N")?;
            let kind = require(p.kind, "kind")?;
            let lhs = kind_enum(kind, Some(n), &Substitution::neg_odd(), &tq)?;
            let rhs = if n % 2 == 1 {
                SparsePoly::zero(&tq)
            } else {
                let len = Length::Finite((n / 2) as u64);
                match kind {
                    GenKind::Psi => {
                        pochhammer(&q_sm(&vs_q, true, 1), &q_sm(&vs_q, false, 2), len, &tq)?
                    }
                    GenKind::Phi => {
                        inv_pochhammer(&q_sm(&vs_q, false, 2), &q_sm(&vs_q, false, 2), len, &tq)?
                    }
                }
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "E-sum" => {
            let n = require(p.n_bound, "N")?;
            let kind = require(p.kind, "kind")?;
            let lhs = kind_enum(kind, Some(n), &Substitution::even_sum(), &tq)?;
            let mut rhs = SparsePoly::zero(&tq);
            for i in 0..=n as i64 {
                let term = match kind {
                    GenKind::Psi => qbinomial(n as i64, i, &q, &tq),
                    GenKind::Phi => inv_pochhammer(&q, &q, Length::Finite(i as u64), &tq)?.mul(
                        &inv_pochhammer(&q, &q, Length::Finite(n as u64 - i as u64), &tq)?,
                    )?,
                };
                rhs = rhs.add(&term)?;
            }
            Ok(Evaluated::Series(lhs, rhs))
        }
        "E-refined" => {
            let n = require(p.n_bound, "N")?;
            let j = require(p.j, "j")?;
            let kind = require(p.kind, "kind")?;
            let rest = n
                .checked_sub(j)
                .ok_or_else(|| Error::Params("j must not exceed N".into()))?;
            let t = TruncationSpec::unbounded(VarSet::qz())
                .with_max(Var::Q, d)
                .with_max(Var::Z, n as i64);
            let lhs = kind_enum(kind, Some(n), &Substitution::even_gamma(), &t)?
                .coeff_of(Var::Z, j as i64);
            let rhs = match kind {
                GenKind::Psi => qbinomial(n as i64, j as i64, &q, &tq),
                GenKind::Phi => inv_pochhammer(&q, &q, Length::Finite(j as u64), &tq)?
                    .mul(&inv_pochhammer(&q, &q, Length::Finite(rest as u64), &tq)?)?,
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "E-limit" => {
            let j = require(p.j, "j")?;
            let kind = require(p.kind, "kind")?;
            // gamma = j and E <= d force the largest part below j + d
            let stabilized = j + inst.degree;
            let t = TruncationSpec::unbounded(VarSet::qz())
                .with_max(Var::Q, d)
                .with_max(Var::Z, j as i64);
            let lhs = kind_enum(kind, Some(stabilized), &Substitution::even_gamma(), &t)?
                .coeff_of(Var::Z, j as i64);
            let inv_j = inv_pochhammer(&q, &q, Length::Finite(j as u64), &tq)?;
            let rhs = match kind {
                GenKind::Psi => inv_j,
                GenKind::Phi => inv_j.mul(&inv_pochhammer(&q, &q, Length::Infinite, &tq)?)?,
            };
            Ok(Evaluated::Series(lhs, rhs))
        }
        "rr-weighted" => {
            let lhs = genfun::psi_enum(None, &Substitution::odd_sum(), &tq)?;
            let rhs = genfun::rr_weighted_sum(None, None, &tq)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "rr-weighted-finite" => {
            let n = require(p.n_bound, "N")?;
            let lhs = genfun::psi_enum(Some(n), &Substitution::odd_sum(), &tq)?;
            let rhs = genfun::rr_weighted_sum(Some(n), None, &tq)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "rr-hat" => {
            let n = require(p.n_bound, "N")?;
            let lhs = genfun::psi_enum(Some(n), &Substitution::even_sum(), &tq)?;
            let rhs = genfun::rr_weighted_sum(None, Some(n), &tq)?;
            Ok(Evaluated::Series(lhs, rhs))
        }
        "hook-count" | "hook-refined" => {
            let n_bound = require(p.n_bound, "N")?;
            let j = if inst.family_id == "hook-refined" {
                Some(require(p.j, "j")? as u64)
            } else {
                None
            };
            let points = count_points(p, inst.degree);
            let n_max = *points.iter().max().unwrap_or(&0);
            let lhs_counts = counts_by_odd_sum(PartitionClass::Distinct, n_bound, n_max, j);
            let triples = points
                .iter()
                .map(|&n| {
                    let rhs = partition::hook_count(n, n_bound, j);
                    (n, lhs_counts[n as usize], rhs)
                })
                .collect();
            Ok(Evaluated::Counts(triples))
        }
        "two-color" | "two-color-refined" => {
            let n_bound = require(p.n_bound, "N")?;
            let refined = inst.family_id == "two-color-refined";
            let j = if refined {
                let j = require(p.j, "j")?;
                if j > n_bound {
                    return Err(Error::Params("j must not exceed N".into()));
                }
                Some(j as u64)
            } else {
                None
            };
            let points = count_points(p, inst.degree);
            let n_max = *points.iter().max().unwrap_or(&0);
            let lhs_counts = counts_by_odd_sum(PartitionClass::Ordinary, n_bound, n_max, j);
            let triples = points
                .iter()
                .map(|&n| {
                    let rhs = match j {
                        None => partition::enumerate_two_color(
                            n,
                            None,
                            TwoColorConstraint::CountPlusMaxGreenAtMost(n_bound),
                        )
                        .len() as u64,
                        Some(j) => partition::enumerate_two_color(
                            n,
                            Some(j),
                            TwoColorConstraint::MaxGreenAtMost(n_bound - j as u32),
                        )
                        .len() as u64,
                    };
                    (n, lhs_counts[n as usize], rhs)
                })
                .collect();
            Ok(Evaluated::Counts(triples))
        }
        "E-two-color" | "parts-leq-j" => {
            let j = require(p.j, "j")?;
            let distinct_side = inst.family_id == "parts-leq-j";
            let class = if distinct_side {
                PartitionClass::Distinct
            } else {
                PartitionClass::Ordinary
            };
            let points = count_points(p, inst.degree);
            let n_max = *points.iter().max().unwrap_or(&0);
            let lhs_counts = counts_by_even_sum(class, j as u64, n_max);
            let triples = points
                .iter()
                .map(|&n| {
                    let rhs = if distinct_side {
                        partition::count_with_parts_at_most(n, j)
                    } else {
                        partition::enumerate_two_color(
                            n,
                            None,
                            TwoColorConstraint::RedPartsAtMost(j),
                        )
                        .len() as u64
                    };
                    (n, lhs_counts[n as usize], rhs)
                })
                .collect();
            Ok(Evaluated::Counts(triples))
        }
        other => Err(Error::Params(format!("unknown identity {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// A single-monomial perturbation of the right-hand side, used to confirm
/// that verification localizes mismatches.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub exps: Vec<i64>,
    pub delta: BigInt,
}

impl Perturbation {
    pub fn q_power(degree: i64) -> Self {
        Perturbation {
            exps: vec![degree],
            delta: BigInt::one(),
        }
    }
}

fn compare_series(lhs: &SparsePoly, rhs: &SparsePoly) -> Option<Mismatch> {
    if lhs == rhs {
        return None;
    }
    let mut keys: BTreeSet<&Vec<i64>> = BTreeSet::new();
    keys.extend(lhs.terms().map(|(e, _)| e));
    keys.extend(rhs.terms().map(|(e, _)| e));
    let mut ordered: Vec<&Vec<i64>> = keys.into_iter().collect();
    ordered.sort_by(|e1, e2| {
        let t1: i64 = e1.iter().sum();
        let t2: i64 = e2.iter().sum();
        t1.cmp(&t2).then_with(|| e1.cmp(e2))
    });
    for e in ordered {
        let a = lhs.coeff(e);
        let b = rhs.coeff(e);
        if a != b {
            return Some(Mismatch {
                monomial: monomial_string(lhs.var_set(), e),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    None
}

/// Evaluate both sides of an instance and compare them exactly.
pub fn verify(inst: &IdentityInstance) -> VerificationReport {
    verify_perturbed(inst, None)
}

/// Like [`verify`], with an optional single-monomial perturbation applied
/// to the right-hand side before comparison (series mode; counting
/// families perturb the count at size `exps[0]`).
pub fn verify_perturbed(
    inst: &IdentityInstance,
    pert: Option<&Perturbation>,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        id: inst.family_id.clone(),
        params: inst.params.clone(),
        status: Status::Error,
        checked_bound: inst.degree as u64,
        first_mismatch: None,
        elapsed_ms: 0,
        message: None,
    };
    match evaluate(inst) {
        Ok(Evaluated::Series(lhs, mut rhs)) => {
            if let Some(pt) = pert {
                rhs.insert_term(pt.exps.clone(), pt.delta.clone());
            }
            match compare_series(&lhs, &rhs) {
                None => report.status = Status::Pass,
                Some(mm) => {
                    report.status = Status::Fail;
                    report.first_mismatch = Some(mm);
                }
            }
        }
        Ok(Evaluated::Counts(mut triples)) => {
            if let Some(pt) = pert {
                let at = *pt.exps.first().unwrap_or(&0) as u64;
                for t in triples.iter_mut() {
                    if t.0 == at {
                        let adjusted = BigInt::from(t.2) + &pt.delta;
                        t.2 = adjusted.try_into().unwrap_or(u64::MAX);
                    }
                }
            }
            report.checked_bound = triples.iter().map(|t| t.0).max().unwrap_or(0);
            match triples.iter().find(|(_, l, r)| l != r) {
                None => report.status = Status::Pass,
                Some(&(n, l, r)) => {
                    report.status = Status::Fail;
                    report.first_mismatch = Some(Mismatch {
                        monomial: if n == 0 {
                            "1".to_string()
                        } else {
                            format!("q^{n}")
                        },
                        lhs: l.to_string(),
                        rhs: r.to_string(),
                    });
                }
            }
        }
        Err(e) => {
            report.status = Status::Error;
            report.message = Some(e.to_string());
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Run the selected families (all when `None`) over their default grids,
/// in parallel, merging reports in catalog order.
pub fn verify_suite(
    families: Option<&[String]>,
    overrides: &GridOverrides,
    profile: &BoundsProfile,
) -> Result<Vec<VerificationReport>> {
    let selected: Vec<&str> = match families {
        None => FAMILIES.iter().map(|f| f.id).collect(),
        Some(list) => {
            let mut v = Vec::new();
            for name in list {
                family(name).ok_or_else(|| Error::Params(format!("unknown identity {name:?}")))?;
                v.push(family(name).unwrap().id);
            }
            v
        }
    };
    let mut instances = Vec::new();
    for id in selected {
        instances.extend(default_grid(id, profile, overrides)?);
    }
    let mut reports: Vec<VerificationReport> = instances.par_iter().map(verify).collect();
    reports.sort_by(|a, b| {
        family_index(&a.id)
            .cmp(&family_index(&b.id))
            .then_with(|| a.params.cmp(&b.params))
    });
    Ok(reports)
}
