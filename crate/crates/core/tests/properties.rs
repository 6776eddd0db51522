mod common;

use proptest::prelude::*;

use common::Tr;
use num_bigint::BigInt;
use separable::bijections::{big_phi, eta, eta_inv, phi, phi_inv, psi, psi_inv, theta, theta_inv};
use separable::series::{MarkerPolynomial, TruncatedSeries};
use separable::{DiSkTree, Permutation, TraversalOrder};

fn any_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Separable permutations grown by random direct and skew sums.
fn separable_perm() -> impl Strategy<Value = Permutation> {
    Just(Permutation::identity(1)).prop_recursive(5, 24, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, direct)| {
            if direct {
                a.direct_sum(&b)
            } else {
                a.skew_sum(&b)
            }
        })
    })
}

fn disk_tree() -> impl Strategy<Value = DiSkTree> {
    separable_perm().prop_map(|p| eta(&p).unwrap())
}

fn poly() -> impl Strategy<Value = MarkerPolynomial> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3], -4i64..5), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(MarkerPolynomial::zero(), |acc, (e, c)| acc.add(&MarkerPolynomial::monomial(e, c)))
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(poly(), order + 1).prop_map(move |c| TruncatedSeries::new(order, c))
}

proptest! {
    #[test]
    fn basic_perm_facts(p in any_perm(12)) {
        let n = p.len();
        let first = p.values()[0];
        prop_assert!(p.lmax().contains(&first) && p.lmin().contains(&first));
        prop_assert!(p.lmax().contains(&n) && p.lmin().contains(&1));
        let first_des = p.des().first().copied().unwrap_or(n);
        prop_assert_eq!(p.iar(), first_des);
        prop_assert_eq!(p.idr() >= 2, p.des().contains(&1));
        prop_assert_eq!(p.comp(), common::comp(p.values()));
        prop_assert_eq!(p.desb(), common::desb(p.values()));
        prop_assert_eq!(p.idr(), common::idr(p.values()));
    }

    #[test]
    fn reverse_complement_involution(p in any_perm(12)) {
        let rc = p.reverse_complement();
        prop_assert_eq!(rc.reverse_complement(), p.clone());
        prop_assert_eq!(rc.is_separable(), p.is_separable());
    }

    #[test]
    fn comp_of_sums(a in any_perm(6), b in any_perm(6)) {
        prop_assert_eq!(a.direct_sum(&b).comp(), a.comp() + b.comp());
        prop_assert_eq!(a.skew_sum(&b).comp(), 1);
    }

    #[test]
    fn separability_matches_eta(p in any_perm(9)) {
        prop_assert_eq!(eta(&p).is_ok(), p.is_separable());
    }

    #[test]
    fn eta_transport(p in separable_perm()) {
        let t = eta(&p).unwrap();
        prop_assert!(t.validate());
        prop_assert_eq!(t.size(), p.len() - 1);
        prop_assert_eq!(eta_inv(&t), p.clone());
        prop_assert_eq!(p.iar() - 1, t.iop());
        prop_assert_eq!(p.comp() - 1, t.top());
        prop_assert_eq!(p.des().len(), t.omi());
    }

    #[test]
    fn big_phi_contract(p in separable_perm()) {
        let q = big_phi(&p).unwrap();
        prop_assert_eq!(big_phi(&q).unwrap(), p.clone());
        prop_assert_eq!((q.lmax(), q.lmin(), q.desb()), (p.lmax(), p.lmin(), p.desb()));
        prop_assert_eq!((q.comp(), q.iar()), (p.iar(), p.comp()));
    }

    #[test]
    fn tree_stats_match_oracle(t in disk_tree()) {
        let o = Tr::parse(&t.to_string());
        for s in common::ALL_STATS {
            prop_assert_eq!(t.stat(s), Some(o.stat(s)), "{}", s);
        }
        prop_assert_eq!(t.omi(), o.omi());
        prop_assert_eq!(t.rtop(), t.rlop());
        prop_assert!(t.top() + t.iom() <= t.size());
        prop_assert_eq!(t.top(), t.initial_count(TraversalOrder::Preorder, separable::Sign::Plus));
    }

    #[test]
    fn top_is_leading_plus_run_of_spine(t in disk_tree()) {
        prop_assume!(!t.is_empty());
        let spine = t.spine().unwrap();
        let run = spine.iter().take_while(|&&v| t.sign(v).unwrap() == separable::Sign::Plus).count();
        prop_assert_eq!(t.top(), run);
    }

    #[test]
    fn serialization_keeps_stats(t in disk_tree()) {
        let text: DiSkTree = t.to_string().parse().unwrap();
        let json: DiSkTree = serde_json::from_value(serde_json::to_value(&t).unwrap()).unwrap();
        prop_assert_eq!(&text, &t);
        prop_assert_eq!(&json, &t);
        prop_assert_eq!(json.stat_profile(), t.stat_profile());
    }

    #[test]
    fn conjugation(t in disk_tree()) {
        let c = t.conjugate();
        prop_assert!(c.validate());
        prop_assert_eq!(c.conjugate(), t.clone());
        prop_assert_eq!(c.omi(), t.size() - t.omi());
        for (plus, minus) in [("iop", "iom"), ("riop", "riom"), ("top", "tom"), ("pop", "pom"), ("rpop", "rpom"), ("lop", "lom")] {
            prop_assert_eq!(t.stat(plus), c.stat(minus));
        }
    }

    #[test]
    fn tree_bijections_round_trip(t in disk_tree()) {
        if let Ok(img) = phi(&t) {
            prop_assert_eq!((img.top() + 1, img.iop()), (t.top(), t.iop() + 1));
            prop_assert_eq!(phi_inv(&img).unwrap(), t.clone());
        }
        if let Ok(img) = psi(&t) {
            prop_assert_eq!((img.top() + 1, img.iom()), (t.top(), t.iom() + 1));
            prop_assert_eq!(psi_inv(&img).unwrap(), t.clone());
        }
        if let Ok(pre) = psi_inv(&t) {
            prop_assert_eq!(psi(&pre).unwrap(), t.clone());
        }
        let th = theta(&t);
        prop_assert_eq!((th.pop(), th.rpop()), (t.rpop(), t.pop()));
        prop_assert_eq!(theta_inv(&th), t);
    }

    #[test]
    fn series_multiplication(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn polynomial_specialization(p in poly(), q in poly()) {
        use separable::series::Marker;
        let at_one = |p: &MarkerPolynomial| p.specialize(Marker::T).specialize(Marker::X).specialize(Marker::Y);
        prop_assert_eq!(at_one(&p.mul(&q)).coefficient([0, 0, 0]), p.evaluate_at_one() * q.evaluate_at_one());
        prop_assert_eq!(p.swap(Marker::X, Marker::Y).swap(Marker::X, Marker::Y), p.clone());
        prop_assert_eq!(p.sub(&p).coefficient([0, 0, 0]), BigInt::from(0));
    }
}
