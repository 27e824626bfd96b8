//! The weighted enumeration engine against a naive oracle: enumerate the
//! class through the plain partition enumerator, compute each weight from
//! the statistic record, substitute directly, and accumulate. The engine
//! must agree monomial for monomial.

use num_bigint::BigInt;

use schmidt_core::genfun::{self, Substitution};
use schmidt_core::partition::{self, Cap, ClassFilter, Partition, PartitionClass};
use schmidt_core::poly::{SparsePoly, TruncationSpec, Var};

/// Which statistic bounds the naive enumeration for a given substitution:
/// any partition whose substituted q-degree fits the window also satisfies
/// this cap.
fn covering_cap(sub_id: &str, q_cap: u64) -> Cap {
    match sub_id {
        "1,1,q,q" | "-1,-1,q,q" | "z,z,q/z,q/z" => Cap::EvenSum(q_cap),
        "zq,zq,q/z,q/z" => Cap::Size(q_cap),
        // all remaining presets have q-degree at least ceil(O)/2
        _ => Cap::OddSum(2 * q_cap + 1),
    }
}

fn naive_weighted_sum(
    class: PartitionClass,
    max_part: u32,
    sub: &Substitution,
    trunc: &TruncationSpec,
) -> SparsePoly {
    let q_cap = trunc.max_of(Var::Q).unwrap() as u64;
    let filter = ClassFilter::new(class, covering_cap(sub.id(), q_cap)).with_max_part(max_part);
    let mut out = SparsePoly::zero(trunc);
    partition::visit_class(&filter, |parts| {
        let p = Partition::new(parts.to_vec()).unwrap();
        let [ea, eb, ec, ed] = p.boulet_exponents();
        let mut exps = vec![0i64; trunc.var_set().len()];
        let mut neg = false;
        for (v, e) in [(Var::A, ea), (Var::B, eb), (Var::C, ec), (Var::D, ed)] {
            let img = sub.image(v);
            for (k, ie) in img.exps().iter().enumerate() {
                exps[k] += ie * e as i64;
            }
            if img.is_negative() && e % 2 == 1 {
                neg = !neg;
            }
        }
        out.insert_term(
            exps,
            if neg {
                -BigInt::from(1)
            } else {
                BigInt::from(1)
            },
        );
    })
    .unwrap();
    out
}

#[test]
fn engine_matches_naive_oracle_in_q() {
    let trunc = TruncationSpec::q_degree(14);
    let subs = [
        Substitution::odd_sum(),
        Substitution::sign_even(),
        Substitution::ceil_even(),
        Substitution::floor_even(),
        Substitution::even_sum(),
        Substitution::neg_odd(),
        Substitution::rts(1, 0, 2, -1).unwrap(),
        Substitution::rts(0, 1, 1, 1).unwrap(),
        Substitution::rts(2, 2, 0, -1).unwrap(),
    ];
    for sub in &subs {
        for n in [0u32, 1, 2, 3, 5, 7] {
            let psi = genfun::psi_enum(Some(n), sub, &trunc).unwrap();
            let naive = naive_weighted_sum(PartitionClass::Distinct, n, sub, &trunc);
            assert_eq!(psi, naive, "distinct, {} N={n}", sub.id());
        }
    }
    // ordinary partitions: skip the r = 0 substitution, whose sum diverges
    for sub in &subs {
        if sub.id().starts_with("q^0") {
            continue;
        }
        for n in [0u32, 1, 2, 3, 5] {
            let phi = genfun::phi_enum(Some(n), sub, &trunc).unwrap();
            let naive = naive_weighted_sum(PartitionClass::Ordinary, n, sub, &trunc);
            assert_eq!(phi, naive, "ordinary, {} N={n}", sub.id());
        }
    }
}

#[test]
fn engine_matches_naive_oracle_in_qz() {
    for sub in [
        Substitution::size_gamma(),
        Substitution::odd_gamma(),
        Substitution::even_gamma(),
    ] {
        for n in [0u32, 1, 3, 6] {
            let trunc = TruncationSpec::qz_degree(12, n as i64);
            let psi = genfun::psi_enum(Some(n), &sub, &trunc).unwrap();
            let naive = naive_weighted_sum(PartitionClass::Distinct, n, &sub, &trunc);
            assert_eq!(psi, naive, "distinct, {} N={n}", sub.id());
            let phi = genfun::phi_enum(Some(n), &sub, &trunc).unwrap();
            let naive = naive_weighted_sum(PartitionClass::Ordinary, n, &sub, &trunc);
            assert_eq!(phi, naive, "ordinary, {} N={n}", sub.id());
        }
    }
}

#[test]
fn engine_matches_naive_oracle_four_variable() {
    let trunc = TruncationSpec::abcd_total(10);
    let sub = Substitution::formal();
    for n in [0u32, 1, 2, 4, 6] {
        let psi = genfun::psi_enum(Some(n), &sub, &trunc).unwrap();
        let mut naive = SparsePoly::zero(&trunc);
        let filter = ClassFilter::new(PartitionClass::Distinct, Cap::Size(10)).with_max_part(n);
        partition::visit_class(&filter, |parts| {
            let p = Partition::new(parts.to_vec()).unwrap();
            let e = p.boulet_exponents();
            naive.insert_term(e.iter().map(|&x| x as i64).collect(), BigInt::from(1));
        })
        .unwrap();
        assert_eq!(psi, naive, "N={n}");
    }
}
