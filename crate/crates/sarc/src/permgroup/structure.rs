//! Normal closures, derived series, perfect residual and soluble radical.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashSet;

use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::numth;

pub const DEFAULT_RADICAL_CAP: u64 = 1_000_000;

/// Normal closure of ⟨gens⟩ in G.
pub fn normal_closure(g: &PermGroup, gens: &[Perm]) -> PermGroup {
    let mut n = g.subgroup(gens.iter().filter(|x| !x.is_identity()).cloned().collect());
    let mut i = 0;
    while i < n.gens().len() {
        let x = n.gens()[i].clone();
        let mut extra = Vec::new();
        for s in g.gens() {
            let c = x.conj(s);
            if !n.contains(&c) {
                extra.push(c);
                break;
            }
        }
        if extra.is_empty() {
            i += 1;
        } else {
            n = n.join(&extra);
        }
    }
    n
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.gens();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// G, G', G'', ... down to the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let d = derived_subgroup(last);
        if d.order() == last.order() {
            return series;
        }
        let done = d.order().is_one();
        series.push(d);
        if done {
            return series;
        }
    }
}

pub fn perfect_residual(g: &PermGroup) -> PermGroup {
    derived_series(g).pop().unwrap()
}

pub fn is_soluble(g: &PermGroup) -> bool {
    perfect_residual(g).order().is_one()
}

/// Number of nontrivial steps in the derived series, or None if G is
/// not soluble.
pub fn derived_length(g: &PermGroup) -> Option<usize> {
    let s = derived_series(g);
    if s.last().unwrap().order().is_one() {
        Some(s.len() - 1)
    } else {
        None
    }
}

/// Largest soluble normal subgroup, accumulated from p-elements whose
/// normal closure is soluble.
pub fn soluble_radical(g: &PermGroup, cap: u64) -> Result<PermGroup> {
    let order = g.order();
    if order > BigUint::from(cap) {
        return Err(Error::ResourceLimit(format!("group order {order} exceeds cap {cap}")));
    }
    if is_soluble(g) {
        return Ok(g.clone());
    }
    let mut radical = g.subgroup(Vec::new());
    let mut rejected: FxHashSet<Perm> = FxHashSet::default();
    for x in g.elements() {
        if radical.contains(&x) {
            continue;
        }
        let ord = x.order();
        for p in numth::prime_set_u64(ord) {
            let mut pp = 1u64;
            while ord % (pp * p) == 0 {
                pp *= p;
            }
            let y = x.pow((ord / pp) as i64);
            if radical.contains(&y) || rejected.contains(&y) {
                continue;
            }
            let mut gens = radical.gens().to_vec();
            gens.push(y.clone());
            let n = normal_closure(g, &gens);
            if is_soluble(&n) {
                radical = n;
            } else {
                for c in conjugacy_class(g, &y) {
                    rejected.insert(c);
                }
            }
        }
    }
    Ok(radical)
}

pub fn conjugacy_class(g: &PermGroup, x: &Perm) -> Vec<Perm> {
    let mut seen: FxHashSet<Perm> = FxHashSet::default();
    seen.insert(x.clone());
    let mut out = vec![x.clone()];
    let mut i = 0;
    while i < out.len() {
        for s in g.gens() {
            let c = out[i].conj(s);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        i += 1;
    }
    out
}

/// Whether N is normalised by every generator of G.
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    n.gens().iter().all(|x| g.gens().iter().all(|s| n.contains(&x.conj(s))))
}

pub fn order_u64(g: &PermGroup) -> u64 {
    g.order().to_u64().expect("order fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn residuals() {
        let s5 = PermGroup::new(5, vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)]);
        assert_eq!(perfect_residual(&s5).order(), BigUint::from(60u32));
        let s4 = PermGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]);
        assert!(perfect_residual(&s4).order().is_one());
        assert_eq!(derived_length(&s4), Some(3));
    }

    #[test]
    fn radical_of_c6_times_a5() {
        // C6 on points 1..6, A5 on 7..11
        let c6 = p("(1,2,3,4,5,6)", 11);
        let a = p("(7,8,9)", 11);
        let b = p("(7,8,9,10,11)", 11);
        let g = PermGroup::new(11, vec![c6, a, b]);
        let r = soluble_radical(&g, DEFAULT_RADICAL_CAP).unwrap();
        assert_eq!(r.order(), BigUint::from(6u32));
        let a5 = PermGroup::new(5, vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]);
        assert!(soluble_radical(&a5, DEFAULT_RADICAL_CAP).unwrap().order().is_one());
    }
}
