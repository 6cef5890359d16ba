mod common;

use std::collections::HashSet;

use common::{set_len, Table};
use sarc::groups::{construct, GroupSpec};
use sarc::subgroups::subgroup_classes;

fn corpus() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Sym(4),
        GroupSpec::Dih(8),
        GroupSpec::Metacyclic { n: 17, r: 4, m: 4 },
        GroupSpec::Wreath(Box::new(GroupSpec::Sym(3)), 2),
        GroupSpec::Sym(5),
        GroupSpec::PSL2(7),
        GroupSpec::Alt(6),
        GroupSpec::Sym(6),
        GroupSpec::DirectProduct(vec![GroupSpec::Alt(5), GroupSpec::Cyc(6)]),
    ]
}

/// Conjugates of the class representatives cover exactly the subgroups
/// found by naive closure, and each class has the advertised size.
#[test]
fn classes_cover_every_subgroup() {
    for spec in corpus() {
        let g = construct(&spec).unwrap();
        let t = Table::new(&g);
        let naive = t.all_subgroups();
        let mut expanded = HashSet::new();
        for c in subgroup_classes(&g, 1).unwrap() {
            let rep = t.set_of(&c.representative);
            assert_eq!(set_len(&rep) as u64, c.order, "{spec}");
            let conj = t.conjugates(&rep);
            assert_eq!(conj.len() as u64, c.class_size, "{spec}: class of order {}", c.order);
            for k in conj {
                assert!(expanded.insert(k), "{spec}: two classes share a subgroup");
            }
        }
        assert_eq!(expanded.len(), naive.len(), "{spec}");
        assert!(expanded == naive, "{spec}");
    }
}

#[test]
fn known_subgroup_counts() {
    // totals from naive closure, independent of the class machinery
    for (spec, total) in [(GroupSpec::Sym(4), 30), (GroupSpec::Sym(5), 156), (GroupSpec::Alt(6), 501), (GroupSpec::Sym(6), 1455)] {
        let g = construct(&spec).unwrap();
        assert_eq!(Table::new(&g).all_subgroups().len(), total, "{spec}");
    }
}
