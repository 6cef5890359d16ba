//! Isomorphism testing for small groups: cheap invariants first, then a
//! backtrack over images of a generating set.

use std::collections::BTreeMap;

use super::elements::{ElemSet, ElemSubgroup, ElementGroup};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

/// Default ceiling on group order for isomorphism tests.
pub const DEFAULT_ISO_CAP: u64 = 10_000;

/// Invariants that isomorphic groups share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u64,
    /// (element order, conjugacy class length) → number of classes.
    pub class_shape: BTreeMap<(u32, u64), u32>,
    pub centre_order: u64,
    pub abelianisation_order: u64,
    /// None when the group is not soluble.
    pub derived_length: Option<usize>,
}

/// Conjugacy classes of a subgroup, as lists of element indices.
fn classes_within(eg: &ElementGroup, h: &ElemSubgroup) -> Vec<Vec<u32>> {
    let mut seen = ElemSet::new(eg.len());
    let mut out = Vec::new();
    for &x in &h.elems {
        if !seen.insert(x) {
            continue;
        }
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            for &g in &h.gens {
                let y = eg.conj_elem(class[i], g);
                if seen.insert(y) {
                    class.push(y);
                }
            }
            i += 1;
        }
        out.push(class);
    }
    out
}

/// Normal closure in `h` of the given elements.
fn normal_closure_within(eg: &ElementGroup, h: &ElemSubgroup, xs: &[u32]) -> ElemSubgroup {
    let mut n = eg.trivial();
    let mut queue: Vec<u32> = xs.to_vec();
    while let Some(x) = queue.pop() {
        if n.contains(x) {
            continue;
        }
        n = eg.join(&n, x);
        for &g in &h.gens {
            for &y in &n.gens {
                let c = eg.conj_elem(y, g);
                if !n.contains(c) {
                    queue.push(c);
                }
            }
        }
    }
    n
}

fn derived_within(eg: &ElementGroup, h: &ElemSubgroup) -> ElemSubgroup {
    let mut comms = Vec::new();
    for (i, &a) in h.gens.iter().enumerate() {
        for &b in &h.gens[i + 1..] {
            comms.push(eg.mul(eg.mul(eg.inv(a), eg.inv(b)), eg.mul(a, b)));
        }
    }
    normal_closure_within(eg, h, &comms)
}

pub fn fingerprint(eg: &ElementGroup, h: &ElemSubgroup) -> Fingerprint {
    let classes = classes_within(eg, h);
    let mut class_shape = BTreeMap::new();
    let mut centre_order = 0;
    for c in &classes {
        *class_shape.entry((eg.elem_order(c[0]), c.len() as u64)).or_insert(0) += 1;
        if c.len() == 1 {
            centre_order += 1;
        }
    }
    let d1 = derived_within(eg, h);
    let abelianisation_order = h.order() / d1.order();
    let mut derived_length = Some(if h.order() == 1 { 0 } else { 1 });
    let mut cur = d1;
    while cur.order() > 1 {
        let next = derived_within(eg, &cur);
        if next.order() == cur.order() {
            derived_length = None;
            break;
        }
        derived_length = derived_length.map(|l| l + 1);
        cur = next;
    }
    Fingerprint { order: h.order(), class_shape, centre_order, abelianisation_order, derived_length }
}

/// A short generating set, preferring elements of large order.
fn small_generating_set(eg: &ElementGroup, h: &ElemSubgroup) -> Vec<u32> {
    let mut elems = h.elems.clone();
    elems.sort_by_key(|&x| std::cmp::Reverse(eg.elem_order(x)));
    let mut cur = eg.trivial();
    let mut gens = Vec::new();
    for x in elems {
        if cur.order() == h.order() {
            break;
        }
        if !cur.contains(x) {
            cur = eg.join(&cur, x);
            gens.push(x);
        }
    }
    gens
}

struct Side<'a> {
    eg: &'a ElementGroup,
    sub: &'a ElemSubgroup,
    /// class length of each element, by element index (0 outside)
    class_len: Vec<u32>,
    class_reps: Vec<u32>,
}

impl<'a> Side<'a> {
    fn new(eg: &'a ElementGroup, sub: &'a ElemSubgroup) -> Side<'a> {
        let mut class_len = vec![0; eg.len()];
        let mut class_reps = Vec::new();
        for c in classes_within(eg, sub) {
            class_reps.push(c[0]);
            for &x in &c {
                class_len[x as usize] = c.len() as u32;
            }
        }
        Side { eg, sub, class_len, class_reps }
    }

    fn signature(&self, x: u32) -> (u32, u32) {
        (self.eg.elem_order(x), self.class_len[x as usize])
    }
}

/// Whether a_i ↦ b_i extends to an injective homomorphism on ⟨a_0..a_k⟩.
fn extends(a: &Side, b: &Side, ag: &[u32], bg: &[u32], img: &mut [u32], touched: &mut Vec<u32>) -> bool {
    for &t in touched.iter() {
        img[t as usize] = u32::MAX;
    }
    touched.clear();
    img[0] = 0;
    touched.push(0);
    let mut used = ElemSet::new(b.eg.len());
    used.insert(0);
    let mut head = 0;
    while head < touched.len() {
        let x = touched[head];
        let fx = img[x as usize];
        for (&g, &h) in ag.iter().zip(bg) {
            let y = a.eg.mul(x, g);
            let fy = b.eg.mul(fx, h);
            match img[y as usize] {
                u32::MAX => {
                    if !used.insert(fy) {
                        return false;
                    }
                    img[y as usize] = fy;
                    touched.push(y);
                }
                v if v != fy => return false,
                _ => {}
            }
        }
        head += 1;
    }
    true
}

/// Element-index form of [`are_isomorphic`]; the two groups may live in
/// different listed groups.
pub fn isomorphic_within(ea: &ElementGroup, a: &ElemSubgroup, eb: &ElementGroup, b: &ElemSubgroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if fingerprint(ea, a) != fingerprint(eb, b) {
        return false;
    }
    let sa = Side::new(ea, a);
    let sb = Side::new(eb, b);
    let ag = small_generating_set(ea, a);
    if ag.is_empty() {
        return true;
    }
    let candidates: Vec<Vec<u32>> = ag
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let pool: &[u32] = if i == 0 { &sb.class_reps } else { &b.elems };
            pool.iter().copied().filter(|&y| sb.signature(y) == sa.signature(x)).collect()
        })
        .collect();
    let mut img = vec![u32::MAX; ea.len()];
    let mut touched = Vec::new();
    let mut chosen = Vec::with_capacity(ag.len());
    search(&sa, &sb, &ag, &candidates, &mut chosen, &mut img, &mut touched)
}

fn search(
    a: &Side,
    b: &Side,
    ag: &[u32],
    cands: &[Vec<u32>],
    chosen: &mut Vec<u32>,
    img: &mut [u32],
    touched: &mut Vec<u32>,
) -> bool {
    let k = chosen.len();
    if k == ag.len() {
        return touched.len() as u64 == a.sub.order();
    }
    for &y in &cands[k] {
        chosen.push(y);
        if extends(a, b, &ag[..=k], chosen, img, touched) && search(a, b, ag, cands, chosen, img, touched) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Whether two permutation groups are abstractly isomorphic.
pub fn are_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    are_isomorphic_capped(a, b, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_capped(a: &PermGroup, b: &PermGroup, cap: u64) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.order() > cap.into() {
        return Err(Error::ResourceLimit(format!("isomorphism test needs |A| ≤ {cap}, got {}", a.order())));
    }
    let ea = ElementGroup::new(a, cap)?;
    let eb = ElementGroup::new(b, cap)?;
    Ok(isomorphic_within(&ea, &ea.whole(), &eb, &eb.whole()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};
    use crate::permgroup::Perm;

    fn cyc(n: usize, c: &[Vec<u32>]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    #[test]
    fn a5_and_psl25() {
        let a5 = construct(&GroupSpec::Alt(5)).unwrap();
        let l = construct(&GroupSpec::PSL2(5)).unwrap();
        assert_eq!(l.degree(), 6);
        assert!(are_isomorphic(&a5, &l).unwrap());
    }

    #[test]
    fn c4_versus_klein() {
        let c4 = PermGroup::new(4, vec![cyc(4, &[vec![0, 1, 2, 3]])]);
        let v4 = PermGroup::new(4, vec![cyc(4, &[vec![0, 1], vec![2, 3]]), cyc(4, &[vec![0, 2], vec![1, 3]])]);
        assert!(!are_isomorphic(&c4, &v4).unwrap());
    }

    #[test]
    fn s3_as_dihedral() {
        let s3 = construct(&GroupSpec::Sym(3)).unwrap();
        let d3 = construct(&GroupSpec::Dih(3)).unwrap();
        let c6 = construct(&GroupSpec::Cyc(6)).unwrap();
        assert!(are_isomorphic(&s3, &d3).unwrap());
        assert!(!are_isomorphic(&s3, &c6).unwrap());
    }

    #[test]
    fn fingerprint_of_s4() {
        let g = construct(&GroupSpec::Sym(4)).unwrap();
        let eg = ElementGroup::new(&g, 100).unwrap();
        let f = fingerprint(&eg, &eg.whole());
        assert_eq!(f.centre_order, 1);
        assert_eq!(f.abelianisation_order, 2);
        assert_eq!(f.derived_length, Some(3));
        assert_eq!(f.class_shape.values().sum::<u32>(), 5);
    }
}
