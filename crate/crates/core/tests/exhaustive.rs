mod common;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use separable::bijections::{eta, eta_inv, l_inv, l_op_tracked, phi, psi};
use separable::enumeration::{distribution, gen_avoiders, gen_disk_trees, matrix_top_iom, StatValue};
use separable::perm::separable_patterns;
use separable::series::{build_series, Marker};
use separable::{DiSkTree, NodeRef, Permutation};

fn perms(n: usize) -> impl Iterator<Item = Permutation> {
    common::all_perms(n).into_iter().map(|v| Permutation::new(v).unwrap())
}

#[test]
fn separability_is_eta_success() {
    for n in 1..=8 {
        for p in perms(n) {
            let oracle = !common::contains(p.values(), &[2, 4, 1, 3]) && !common::contains(p.values(), &[3, 1, 4, 2]);
            assert_eq!(eta(&p).is_ok(), oracle, "{p}");
            assert_eq!(p.is_separable(), oracle, "{p}");
            assert_eq!(p.reverse_complement().is_separable(), oracle, "{p}");
        }
    }
}

#[test]
fn perm_stats_match_oracle() {
    for n in 1..=7 {
        for p in perms(n) {
            let v = p.values();
            assert_eq!(p.des(), common::des(v));
            assert_eq!(p.desb(), common::desb(v));
            assert_eq!(p.lmax(), common::lmax(v));
            assert_eq!(p.lmin(), common::lmin(v));
            assert_eq!((p.iar(), p.idr(), p.comp()), (common::iar(v), common::idr(v), common::comp(v)));
        }
    }
}

#[test]
fn fast_avoiders_match_filter() {
    for n in 1..=8 {
        let fast: HashSet<Permutation> = gen_avoiders(n, &separable_patterns()).unwrap().collect();
        let oracle: HashSet<Permutation> =
            common::separable_oracle(n).into_iter().map(|v| Permutation::new(v).unwrap()).collect();
        assert_eq!(fast, oracle, "n = {n}");
    }
}

#[test]
fn eta_statistic_transports() {
    for n in 1..=8 {
        for p in gen_avoiders(n, &separable_patterns()).unwrap() {
            let t = eta(&p).unwrap();
            let minus: Vec<usize> = (1..=t.size())
                .filter(|&i| t.sign(NodeRef(i)).unwrap() == separable::Sign::Minus)
                .collect();
            assert_eq!(minus, common::des(p.values()), "{p}");
            assert_eq!(common::iar(p.values()) - 1, t.iop(), "{p}");
            assert_eq!(common::comp(p.values()) - 1, t.top(), "{p}");
        }
    }
}

#[test]
fn l_op_exhaustive() {
    for m in 0..=7 {
        let mut images = HashSet::new();
        for t in gen_disk_trees(m) {
            let p = eta_inv(&t);
            for v in 1..=m {
                let Ok((moved, pos)) = l_op_tracked(NodeRef(v), &t) else {
                    continue;
                };
                assert!(moved.validate());
                let q = eta_inv(&moved);
                assert_eq!((q.desb(), q.lmax(), q.lmin()), (p.desb(), p.lmax(), p.lmin()), "{t} at {v}");
                assert_eq!(l_inv(pos, &moved).unwrap(), t, "{t} at {v}");
                assert!(images.insert((moved, pos)), "{t} at {v}");
            }
        }
    }
}

#[test]
fn phi_and_psi_class_sizes() {
    for m in 0..=8 {
        let mut phi_images = HashSet::new();
        let mut psi_images = HashSet::new();
        let (mut phi_codomain, mut psi_codomain) = (0, 0);
        for t in gen_disk_trees(m) {
            if t.spine_has_minus() && t.iop() >= 1 {
                phi_codomain += 1;
            }
            if t.iom() >= 1 {
                psi_codomain += 1;
            }
            if let Ok(i) = phi(&t) {
                assert!(phi_images.insert(i));
            }
            if let Ok(i) = psi(&t) {
                assert!(psi_images.insert(i));
            }
        }
        assert_eq!(phi_images.len(), phi_codomain, "m = {m}");
        assert_eq!(psi_images.len(), psi_codomain, "m = {m}");
    }
}

/// Every admissible `(a, b)` in `t1`: `a` the left child of `b`, `a` the
/// root with `b` empty, or `a` empty below a `b` without left child.
fn insertion_points(t1: &DiSkTree) -> Vec<(Option<NodeRef>, Option<NodeRef>)> {
    let mut out = vec![(t1.root(), None)];
    for b in (1..=t1.size()).map(NodeRef) {
        out.push((t1.left(b).unwrap(), Some(b)));
    }
    out
}

#[test]
fn insert_then_extract() {
    for m1 in 0..=4 {
        for t1 in gen_disk_trees(m1) {
            for m2 in 1..=(5 - m1).min(3) {
                for t2 in gen_disk_trees(m2) {
                    let d_in_t2 = t2.root().unwrap().0;
                    for (a, b) in insertion_points(&t1) {
                        let t3 = t1.insert(&t2, a, b).unwrap();
                        assert_eq!(t3.size(), m1 + m2);
                        let before = b.map_or(m1, |b| b.0 - 1);
                        let c = NodeRef(before + 1);
                        let d = NodeRef(before + d_in_t2);
                        let (rest, piece) = t3.extract(d, c).unwrap();
                        assert_eq!((&rest, &piece), (&t1, &t2), "{t1} / {t2} at {a:?}, {b:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn insert_examples() {
    let plus: DiSkTree = "(. + .)".parse().unwrap();
    let minus: DiSkTree = "(. - .)".parse().unwrap();
    let t3 = plus.insert(&minus, Some(NodeRef(1)), None).unwrap();
    assert_eq!(t3.to_string(), "((. + .) - .)");
    let (rest, piece) = t3.extract(NodeRef(2), NodeRef(2)).unwrap();
    assert_eq!((rest, piece), (plus, minus));
    let (rest, piece) = t3.extract(NodeRef(2), NodeRef(1)).unwrap();
    assert!(rest.is_empty());
    assert_eq!(piece, t3);
}

#[test]
fn series_marginals_match_tables() {
    let s = build_series(8).unwrap();
    for (marker, stat) in [(Marker::Y, "top"), (Marker::X, "rpop"), (Marker::T, "omi")] {
        let others: Vec<Marker> = [Marker::T, Marker::X, Marker::Y].into_iter().filter(|&m| m != marker).collect();
        let marginal = s.specialize(others[0]).specialize(others[1]);
        for n in 1..=8 {
            let table = distribution(gen_disk_trees(n), &[stat]).unwrap();
            let from_series: BTreeMap<usize, BigInt> = marginal
                .coeff(n)
                .terms()
                .map(|(e, c)| (e.iter().sum::<u32>() as usize, c.clone()))
                .collect();
            let from_table: BTreeMap<usize, BigInt> = table
                .rows
                .iter()
                .map(|(k, &c)| (k[0].as_int().unwrap(), BigInt::from(c)))
                .collect();
            assert_eq!(from_series, from_table, "{stat} at n = {n}");
        }
    }
}

#[test]
fn matrices_hankel_and_triangular() {
    for n in 1..=9 {
        let m = matrix_top_iom(n);
        assert!(m.is_hankel() && m.is_upper_anti_triangular(), "n = {n}");
        assert_eq!(m.total(), common::schroder_seq(8)[n - 1]);
    }
}

#[test]
fn comp_idr_symmetric() {
    for n in 1..=8 {
        let t = distribution(gen_avoiders(n, &separable_patterns()).unwrap(), &["comp", "idr"]).unwrap();
        for (k, &c) in &t.rows {
            let swapped = [k[1].clone(), k[0].clone()];
            assert_eq!(t.count(&swapped), c, "n = {n}");
        }
        assert!(t.rows.keys().all(|k| matches!(k[0], StatValue::Int(_))));
    }
}
