use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use sarc::factor::{search_homogeneous, wreath_projections, SearchOptions};
use sarc::groups::{construct, GroupSpec};
use sarc::numth::factorize;
use sarc::permgroup::{Perm, PermGroup};

fn wr(a: GroupSpec, k: u32) -> GroupSpec {
    GroupSpec::Wreath(Box::new(a), k)
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

fn corpus() -> Vec<(GroupSpec, GroupSpec)> {
    vec![
        (GroupSpec::Sp { dim: 2, q: 3 }, wr(GroupSpec::Sp { dim: 2, q: 3 }, 2)),
        (GroupSpec::Sym(3), wr(GroupSpec::Sym(3), 2)),
        (GroupSpec::Sym(3), wr(GroupSpec::Sym(3), 3)),
        (GroupSpec::Alt(4), wr(GroupSpec::Alt(4), 2)),
        (GroupSpec::Cyc(3), wr(GroupSpec::Cyc(3), 3)),
    ]
}

/// In every homogeneous factorisation of A≀S_k found, some factor has a
/// transitive top image, and when H's top image is transitive the first
/// component of H ∩ M has p-part squared at least |A|_p for odd p | |A|.
#[test]
fn factor_projections() {
    let mut seen = 0;
    for (a, spec) in corpus() {
        let w = construct(&spec).unwrap();
        let a_order = construct(&a).unwrap().order();
        let r = search_homogeneous(&w, &spec.to_string(), &SearchOptions::default());
        assert!(r.certified, "{spec}");
        for wit in &r.witnesses {
            seen += 1;
            let ph = wreath_projections(&w, &wit.h).unwrap();
            let pk = wreath_projections(&w, &wit.k).unwrap();
            assert!(ph.top.is_transitive() || pk.top.is_transitive(), "{spec}");
            for proj in [&ph, &pk] {
                if !proj.top.is_transitive() {
                    continue;
                }
                for (p, _) in factorize(&a_order) {
                    if p == BigUint::from(2u32) {
                        continue;
                    }
                    let c = p_part(&proj.components[0].order(), &p);
                    assert!(&c * &c >= p_part(&a_order, &p), "{spec}: p = {p}");
                }
            }
        }
    }
    assert!(seen > 0, "corpus has no factorisations to check");
}

fn random_subgroup(w: &PermGroup, picks: &[usize]) -> PermGroup {
    let elems = w.elements();
    w.subgroup(picks.iter().map(|&i| elems[i % elems.len()].clone()).collect::<Vec<Perm>>())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(7), failure_persistence: None, ..ProptestConfig::default() })]

    /// |H| = |top image| · |H ∩ M|, and each component lies in A.
    #[test]
    fn projection_accounting(which in 0usize..5, picks in proptest::collection::vec(any::<usize>(), 1..3)) {
        let (a, spec) = corpus().swap_remove(which);
        let w = construct(&spec).unwrap();
        let a = construct(&a).unwrap();
        let h = random_subgroup(&w, &picks);
        let proj = wreath_projections(&w, &h).unwrap();
        prop_assert_eq!(h.order(), proj.top.order() * proj.base_part.order());
        for c in &proj.components {
            prop_assert!(c.is_subgroup_of(&a));
        }
        let k = w.wreath().unwrap().blocks;
        prop_assert_eq!(proj.components.len(), k);
    }
}
