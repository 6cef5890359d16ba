//! Factorisation predicates and the staged search for homogeneous
//! factorisations G = HK with H ≅ K.

use std::thread;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::factorize;
use crate::permgroup::{intersection_order, PermGroup};
use crate::subgroups::{
    are_isomorphic, classes_above_p_subgroups, is_conjugate_subgroup, isomorphic_within, min_factor_order,
    ClassRecord, ElementGroup, DEFAULT_ELEMENT_CAP,
};

/// G = HK, via |G|·|H∩K| = |H|·|K|.
pub fn is_factorisation(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> bool {
    g.order() * intersection_order(h, k) == h.order() * k.order()
}

/// G = HK with H, K proper and isomorphic, and conjugate in G when
/// `require_conjugate` is set.
pub fn is_homogeneous_pair(g: &PermGroup, h: &PermGroup, k: &PermGroup, require_conjugate: bool) -> Result<bool> {
    let n = g.order();
    if h.order() >= n || k.order() >= n || h.order() != k.order() {
        return Ok(false);
    }
    if !is_factorisation(g, h, k) || !are_isomorphic(h, k)? {
        return Ok(false);
    }
    if require_conjugate {
        return Ok(is_conjugate_subgroup(g, h, k)?.is_some());
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Only pairs of subgroups conjugate in G count.
    pub require_conjugate: bool,
    /// Only factors whose order is divisible by this.
    pub order_divisor: Option<u64>,
    /// Largest |G| handled by the exhaustive strategy.
    pub cap: u64,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions { require_conjugate: false, order_divisor: None, cap: DEFAULT_ELEMENT_CAP, threads: 1 }
    }
}

/// Pair counts after each stage. Every count is at most the previous one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    /// Unordered pairs of classes whose orders meet |H|_p² ≥ |G|_p for every p.
    pub p_part: u64,
    pub order_equal: u64,
    pub product: u64,
    pub isomorphic: u64,
    /// Present when conjugate factors are required.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub h_gens: Vec<String>,
    pub k_gens: Vec<String>,
    pub order: u64,
    pub intersection_order: u64,
    pub h_class_size: u64,
    pub k_class_size: u64,
    #[serde(skip)]
    pub h: PermGroup,
    #[serde(skip)]
    pub k: PermGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorisationReport {
    pub group: String,
    pub group_order: String,
    /// True when the subgroup enumeration was exhaustive, so an empty
    /// witness list proves there is no such factorisation.
    pub certified: bool,
    pub strategy: String,
    pub min_order: String,
    pub max_index: String,
    pub require_conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_divisor: Option<u64>,
    pub classes_examined: u64,
    pub stages: StageCounts,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Searches G for homogeneous factorisations, one witness per unordered
/// pair of subgroup classes.
///
/// Both factors must satisfy |H|_p² ≥ |G|_p for each prime p, so both
/// contain a p-subgroup of order p^⌈e_p/2⌉ for the largest prime p of |G|;
/// only classes above those are enumerated. Groups beyond `cap` get a
/// report marked uncertified with no witnesses.
pub fn search_homogeneous(g: &PermGroup, label: &str, opts: &SearchOptions) -> FactorisationReport {
    let order = g.order();
    let min_order = order_min_factor(&order);
    let mut report = FactorisationReport {
        group: label.to_string(),
        group_order: order.to_string(),
        certified: false,
        strategy: "exhaustive".into(),
        min_order: min_order.to_string(),
        max_index: (&order / &min_order).to_string(),
        require_conjugate: opts.require_conjugate,
        order_divisor: opts.order_divisor,
        classes_examined: 0,
        stages: StageCounts { conjugate: opts.require_conjugate.then_some(0), ..Default::default() },
        witnesses: Vec::new(),
        note: None,
    };
    let eg = match ElementGroup::new(g, opts.cap) {
        Ok(eg) => eg,
        Err(Error::ResourceLimit(msg)) => {
            report.strategy = "none".into();
            report.note = Some(format!("not searched: {msg}"));
            return report;
        }
        Err(e) => {
            report.strategy = "none".into();
            report.note = Some(format!("not searched: {e}"));
            return report;
        }
    };
    let n = eg.order();
    let bounds: Vec<(u64, u64)> = factorize(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| {
            let p: u64 = (&p).try_into().expect("small prime");
            (p, p.pow(e.div_ceil(2)))
        })
        .collect();
    report.certified = true;
    let Some(&(p, pk)) = bounds.last() else {
        return report;
    };
    let k = pk.ilog(p);
    let classes: Vec<ClassRecord> = classes_above_p_subgroups(&eg, p, k)
        .into_iter()
        .filter(|c| {
            let o = c.order();
            o < n && bounds.iter().all(|&(q, b)| p_part_u64(o, q) >= b) && opts.order_divisor.is_none_or(|d| o % d == 0)
        })
        .collect();
    report.classes_examined = classes.len() as u64;

    let mut pairs = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            report.stages.p_part += 1;
            if classes[i].order() == classes[j].order() {
                pairs.push((i, j));
            }
        }
    }
    report.stages.order_equal = pairs.len() as u64;

    let survivors = run_stages(&eg, &classes, &pairs, opts.threads.max(1));
    report.stages.product = survivors.iter().filter(|s| s.1).count() as u64;
    let iso: Vec<(usize, usize, u64)> = survivors.iter().filter(|s| s.2).map(|s| s.0).collect();
    report.stages.isomorphic = iso.len() as u64;
    let kept: Vec<(usize, usize, u64)> =
        if opts.require_conjugate { iso.into_iter().filter(|&(i, j, _)| i == j).collect() } else { iso };
    if opts.require_conjugate {
        report.stages.conjugate = Some(kept.len() as u64);
    }
    for (i, j, meet) in kept {
        let h = eg.to_perm_group(&classes[i].rep);
        let k = eg.to_perm_group(&classes[j].rep);
        report.witnesses.push(Witness {
            h_gens: h.gens().iter().map(|x| x.to_string()).collect(),
            k_gens: k.gens().iter().map(|x| x.to_string()).collect(),
            order: classes[i].order(),
            intersection_order: meet,
            h_class_size: classes[i].class_size,
            k_class_size: classes[j].class_size,
            h,
            k,
        });
    }
    report
}

/// Product and isomorphism tests on each pair: ((i, j, |H∩K|), factorises, isomorphic).
fn run_stages(
    eg: &ElementGroup,
    classes: &[ClassRecord],
    pairs: &[(usize, usize)],
    threads: usize,
) -> Vec<((usize, usize, u64), bool, bool)> {
    let n = eg.order();
    let test = |&(i, j): &(usize, usize)| {
        let (h, k) = (&classes[i].rep, &classes[j].rep);
        let meet = h.bits.meet_count(&k.bits) as u64;
        // the product test does not depend on the representatives chosen,
        // since G = HK implies G = H^x K^y for all x, y
        let factorises = n * meet == h.order() * k.order();
        let iso = factorises && isomorphic_within(eg, h, eg, k);
        ((i, j, meet), factorises, iso)
    };
    if threads <= 1 || pairs.len() < 2 {
        return pairs.iter().map(test).collect();
    }
    let chunk = pairs.len().div_ceil(threads);
    thread::scope(|s| {
        let handles: Vec<_> = pairs.chunks(chunk).map(|c| s.spawn(move || c.iter().map(test).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn p_part_u64(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

/// ∏ p^⌈e_p/2⌉ for arbitrary orders.
pub fn order_min_factor(n: &BigUint) -> BigUint {
    if let Ok(small) = u64::try_from(n) {
        return BigUint::from(min_factor_order(small));
    }
    factorize(n).into_iter().map(|(p, e)| p.pow(e.div_ceil(2))).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};

    #[test]
    fn a4_a4_is_not_a_factorisation() {
        let s4 = construct(&GroupSpec::Sym(4)).unwrap();
        let a4 = s4.subgroup(construct(&GroupSpec::Alt(4)).unwrap().gens().to_vec());
        assert!(!is_factorisation(&s4, &a4, &a4));
    }

    #[test]
    fn a6_factorises_as_two_a5() {
        let a6 = construct(&GroupSpec::Alt(6)).unwrap();
        let r = search_homogeneous(&a6, "A(6)", &SearchOptions::default());
        assert!(r.certified);
        assert_eq!(r.witnesses.len(), 1);
        let w = &r.witnesses[0];
        assert_eq!((w.order, w.intersection_order), (60, 10));
        assert!(is_homogeneous_pair(&a6, &w.h, &w.k, false).unwrap());
        assert!(!is_homogeneous_pair(&a6, &w.h, &w.k, true).unwrap());
    }

    #[test]
    fn min_factor_of_large_order() {
        let n = BigUint::from(7962624u64) * BigUint::from(1u64 << 40);
        assert_eq!(order_min_factor(&n), BigUint::from(6912u64) * BigUint::from(1u64 << 20));
    }
}
