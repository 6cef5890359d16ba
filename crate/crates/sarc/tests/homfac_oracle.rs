mod common;

use common::{set_len, set_meet, Set, Table};
use num_bigint::BigUint;
use sarc::factor::{search_homogeneous, SearchOptions};
use sarc::groups::{construct, GroupSpec};
use sarc::numth::factorize;
use sarc::subgroups::subgroup_classes;

/// (order, |H ∩ K|, class sizes sorted) for one witness pair of classes.
type Shape = (u64, u64, [u64; 2]);

/// Every unordered pair of classes {A, B} of equal proper order for which
/// some H in A and some conjugate K of B give G = HK with H ≅ K. No
/// pruning beyond |H|² ≥ |G|.
fn brute_force(spec: &GroupSpec, require_conjugate: bool) -> Vec<Shape> {
    let g = construct(spec).unwrap();
    let t = Table::new(&g);
    let n = t.n as u64;
    let classes: Vec<(Set, u64)> = subgroup_classes(&g, 1)
        .unwrap()
        .into_iter()
        .filter(|c| c.order < n && c.order * c.order >= n)
        .map(|c| (t.set_of(&c.representative), c.class_size))
        .collect();
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            let (a, sa) = &classes[i];
            let (b, sb) = &classes[j];
            let m = set_len(a) as u64;
            if m != set_len(b) as u64 || (require_conjugate && i != j) {
                continue;
            }
            let hit = t.conjugates(b).into_iter().find_map(|k| {
                let meet = set_meet(a, &k) as u64;
                (n * meet == m * m).then_some(meet)
            });
            if let Some(meet) = hit {
                if t.isomorphic(a, b) {
                    let mut sizes = [*sa, *sb];
                    sizes.sort();
                    out.push((m, meet, sizes));
                }
            }
        }
    }
    out.sort();
    out
}

fn from_library(spec: &GroupSpec, require_conjugate: bool) -> Vec<Shape> {
    let g = construct(spec).unwrap();
    let opts = SearchOptions { require_conjugate, threads: 2, ..Default::default() };
    let r = search_homogeneous(&g, &spec.to_string(), &opts);
    assert!(r.certified, "{spec}");
    let mut out: Vec<Shape> = r
        .witnesses
        .iter()
        .map(|w| {
            let mut sizes = [w.h_class_size, w.k_class_size];
            sizes.sort();
            (w.order, w.intersection_order, sizes)
        })
        .collect();
    out.sort();
    out
}

fn sp23_wr(k: u32) -> GroupSpec {
    GroupSpec::Wreath(Box::new(GroupSpec::Sp { dim: 2, q: 3 }), k)
}

#[test]
fn oracle_matches_frozen_values() {
    let cases: Vec<(GroupSpec, Vec<Shape>)> = vec![
        (GroupSpec::Sym(4), vec![]),
        (GroupSpec::Sym(5), vec![]),
        (GroupSpec::Metacyclic { n: 17, r: 4, m: 4 }, vec![]),
        (GroupSpec::Alt(6), vec![(60, 10, [6, 6])]),
        (GroupSpec::Sym(6), vec![(120, 20, [6, 6])]),
        (sp23_wr(2), vec![(48, 2, [2, 12]), (48, 2, [8, 12])]),
    ];
    for (spec, frozen) in cases {
        assert_eq!(brute_force(&spec, false), frozen, "{spec}");
        assert_eq!(from_library(&spec, false), frozen, "{spec}");
        assert!(brute_force(&spec, true).is_empty(), "{spec}");
        assert!(from_library(&spec, true).is_empty(), "{spec}");
    }
}

fn p_part(n: &BigUint, p: &BigUint) -> BigUint {
    let mut out = BigUint::from(1u32);
    let mut r = n.clone();
    while (&r % p) == BigUint::from(0u32) {
        r /= p;
        out *= p;
    }
    out
}

/// Witnesses have equal prime sets, |H|_p² ≥ |G|_p for every p, and give
/// |G|·|H∩K| = |H|·|K|; stage counts never increase.
#[test]
fn witnesses_satisfy_the_order_conditions() {
    for spec in [GroupSpec::Alt(6), GroupSpec::Sym(6), sp23_wr(2), GroupSpec::PGL2(7), GroupSpec::Sym(4)] {
        let g = construct(&spec).unwrap();
        let r = search_homogeneous(&g, &spec.to_string(), &SearchOptions::default());
        let s = &r.stages;
        assert!(s.p_part >= s.order_equal && s.order_equal >= s.product && s.product >= s.isomorphic, "{spec}");
        assert_eq!(s.isomorphic as usize, r.witnesses.len());
        let order = g.order();
        for w in &r.witnesses {
            assert_eq!(w.h.order(), w.k.order());
            assert_eq!(&order * w.intersection_order, w.h.order() * w.k.order());
            let hp: Vec<_> = factorize(&w.h.order()).into_iter().map(|(p, _)| p).collect();
            let kp: Vec<_> = factorize(&w.k.order()).into_iter().map(|(p, _)| p).collect();
            assert_eq!(hp, kp);
            for (p, _) in factorize(&order) {
                let hp = p_part(&w.h.order(), &p);
                assert!(&hp * &hp >= p_part(&order, &p), "{spec}: p = {p}");
            }
        }
    }
}
