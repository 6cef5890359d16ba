use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use sarc::digraph::{CosetDigraph, DEFAULT_ARC_CAP};
use sarc::error::Error;
use sarc::groups::{construct, GroupSpec};
use sarc::permgroup::{Perm, PermGroup};
use sarc::subgroups::subgroup_classes;

struct Case {
    g: PermGroup,
    elems: Vec<Perm>,
    subgroups: Vec<PermGroup>,
}

fn corpus() -> &'static [Case] {
    static CORPUS: OnceLock<Vec<Case>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

fn build_corpus() -> Vec<Case> {
    let specs = [
        GroupSpec::Sym(4),
        GroupSpec::Metacyclic { n: 7, r: 2, m: 3 },
        GroupSpec::Alt(5),
        GroupSpec::PSL2(7),
        GroupSpec::Wreath(Box::new(GroupSpec::Sym(2)), 4),
        GroupSpec::Wreath(Box::new(GroupSpec::Sym(3)), 2),
        GroupSpec::Wreath(Box::new(GroupSpec::Dih(4)), 2),
    ];
    specs
        .iter()
        .map(|s| {
            let g = construct(s).unwrap();
            let n = g.order_u64().unwrap();
            let subgroups = subgroup_classes(&g, n.div_ceil(40))
                .unwrap()
                .into_iter()
                .filter(|c| c.order < n)
                .map(|c| c.representative)
                .collect();
            Case { elems: g.elements(), g, subgroups }
        })
        .collect()
}

fn key(p: &Perm) -> Vec<u32> {
    p.images().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, rng_seed: RngSeed::Fixed(3), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coset_digraph_invariants(which in 0usize..7, hi in any::<usize>(), gi in any::<usize>()) {
        let case = &corpus()[which];
        let h = &case.subgroups[hi % case.subgroups.len()];
        let conn = &case.elems[gi % case.elems.len()];
        let d = match CosetDigraph::new(&case.g, h, conn, 100) {
            Ok(d) => d,
            Err(Error::Loop(_)) => {
                prop_assert!(h.contains(conn));
                return Ok(());
            }
            Err(Error::NotAntisymmetric(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let n = d.vertex_count() as u32;

        // arcs against the definition: Hx → Hy iff y x⁻¹ ∈ HgH
        let h_elems = h.elements();
        let double: HashSet<Vec<u32>> =
            h_elems.iter().flat_map(|a| h_elems.iter().map(move |b| key(&a.mul(conn).mul(b)))).collect();
        let reps = d.action().reps();
        for x in 0..n {
            for y in 0..n {
                let z = reps[y as usize].mul(&reps[x as usize].inv());
                prop_assert_eq!(d.is_arc(x, y), double.contains(&key(&z)), "arc ({}, {})", x, y);
                prop_assert!(!(d.is_arc(x, y) && d.is_arc(y, x)));
            }
        }

        // G-invariance
        for s in d.image_group().gens() {
            for (x, y) in d.arcs() {
                prop_assert!(d.is_arc(s.apply(x), s.apply(y)));
            }
        }

        // valency = |H : H ∩ H^g|, a divisor of |H|
        let meet = h_elems.iter().filter(|x| h.contains(&x.conj(conn))).count();
        prop_assert_eq!(d.valency() * meet, h_elems.len());
        prop_assert!((0..n).all(|v| d.out_neighbours(v).len() == d.valency()));

        // arc-transitive by construction
        prop_assert_eq!(d.base_s_arc_orbit(1, DEFAULT_ARC_CAP).unwrap(), d.count_s_arcs(1, DEFAULT_ARC_CAP).unwrap());
        prop_assert!(d.is_arc(d.base_arc().0, d.base_arc().1));

        // the two s-arc tests agree
        if let Ok(b) = d.max_s_by_orbits(4, DEFAULT_ARC_CAP) {
            prop_assert_eq!(d.max_s_by_criterion(4), b);
        }

        // G_v normalises no proper nontrivial normal subgroup of itself
        // together with g when the digraph is connected
        if d.is_connected() && d.vertex_stabiliser_order() <= BigUint::from(2000u32) {
            prop_assert!(d.normalised_normal_subgroups(2000).unwrap().is_empty());
        }
    }
}
