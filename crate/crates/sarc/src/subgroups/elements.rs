//! Groups small enough to list. Elements are indexed 0..n with the
//! identity at 0, and subgroups are bitsets over those indices.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::permgroup::{Perm, PermGroup};

/// Default ceiling on |G| for element-indexed work.
pub const DEFAULT_ELEMENT_CAP: u64 = 20_000;

/// Fixed-size bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> ElemSet {
        ElemSet { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[i as usize >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns true when `i` was not already present.
    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let w = &mut self.words[i as usize >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn meet_count(&self, other: &ElemSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((wi as u32) << 6 | b)
            })
        })
    }

    /// 128-bit digest used as a hash-map key for conjugates.
    pub fn digest(&self) -> u128 {
        let mut a: u64 = 0x243f_6a88_85a3_08d3;
        let mut b: u64 = 0x1319_8a2e_0370_7344;
        for (i, &w) in self.words.iter().enumerate() {
            a = splitmix(a ^ w ^ (i as u64).rotate_left(32));
            b = splitmix(b.wrapping_add(w).wrapping_add(i as u64 * 0x9e37_79b9));
        }
        (a as u128) << 64 | b as u128
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A subgroup of an [`ElementGroup`]: membership bits, the element list
/// (identity first) and a generating set.
#[derive(Clone, Debug)]
pub struct ElemSubgroup {
    pub bits: ElemSet,
    pub elems: Vec<u32>,
    pub gens: Vec<u32>,
}

impl ElemSubgroup {
    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn contains(&self, i: u32) -> bool {
        self.bits.contains(i)
    }
}

/// Every element of a permutation group, listed.
///
/// The action is first restricted to a small faithful union of orbits,
/// so products are cheap; `lift` recovers elements on the original points.
pub struct ElementGroup {
    source: PermGroup,
    points: Vec<u32>,
    local_of: Vec<u32>,
    degree: usize,
    data: Vec<u32>,
    index: FxHashMap<Box<[u32]>, u32>,
    gens: Vec<u32>,
    rmul: Vec<Vec<u32>>,
    conj: Vec<Vec<u32>>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    parent: Vec<(u32, u32)>,
}

impl ElementGroup {
    pub fn new(g: &PermGroup, cap: u64) -> Result<ElementGroup> {
        let order = g.order_u64().filter(|&o| o <= cap).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "group of order {} is beyond the element-listing cap {cap}; use a smaller group or raise the cap",
                g.order()
            ))
        })?;
        let points = faithful_points(g, order);
        let mut local_of = vec![u32::MAX; g.degree()];
        for (i, &p) in points.iter().enumerate() {
            local_of[p as usize] = i as u32;
        }
        let restrict = |p: &Perm| -> Vec<u32> { points.iter().map(|&x| local_of[p.apply(x) as usize]).collect() };
        let local_gens: Vec<Vec<u32>> = g.gens().iter().map(restrict).collect();
        let degree = points.len();
        let n = order as usize;

        let mut eg = ElementGroup {
            source: g.clone(),
            points: points.clone(),
            local_of: local_of.clone(),
            degree,
            data: Vec::with_capacity(n * degree),
            index: FxHashMap::default(),
            gens: Vec::new(),
            rmul: vec![Vec::with_capacity(n); local_gens.len()],
            conj: Vec::new(),
            inv: Vec::new(),
            orders: Vec::new(),
            parent: Vec::with_capacity(n),
        };
        eg.push((0..degree as u32).collect(), (u32::MAX, u32::MAX));
        let mut head = 0;
        while head < eg.len() {
            for (s, gen) in local_gens.iter().enumerate() {
                let prod: Vec<u32> = eg.elem(head as u32).iter().map(|&x| gen[x as usize]).collect();
                let j = match eg.index.get(prod.as_slice()) {
                    Some(&j) => j,
                    None => {
                        if eg.len() >= n {
                            return Err(Error::Precondition("element count exceeds the computed order".into()));
                        }
                        eg.push(prod, (head as u32, s as u32))
                    }
                };
                eg.rmul[s].push(j);
            }
            head += 1;
        }
        if eg.len() != n {
            return Err(Error::Precondition(format!("listed {} elements for a group of order {n}", eg.len())));
        }
        eg.gens = local_gens.iter().map(|p| eg.index[p.as_slice()]).collect();
        eg.inv = (0..n as u32)
            .map(|i| {
                let e = eg.elem(i);
                let mut inv = vec![0u32; degree];
                for (x, &y) in e.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                eg.index[inv.as_slice()]
            })
            .collect();
        eg.conj = eg.gens.iter().map(|&s| (0..n as u32).map(|i| eg.conj_elem(i, s)).collect()).collect();
        eg.orders = (0..n as u32).map(|i| eg.compute_order(i)).collect();
        Ok(eg)
    }

    fn push(&mut self, images: Vec<u32>, parent: (u32, u32)) -> u32 {
        let id = self.parent.len() as u32;
        self.data.extend_from_slice(&images);
        self.index.insert(images.into_boxed_slice(), id);
        self.parent.push(parent);
        id
    }

    fn compute_order(&self, i: u32) -> u32 {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.len() as u64
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    /// Points of the original action kept after restriction.
    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn elem(&self, i: u32) -> &[u32] {
        let d = self.degree;
        &self.data[i as usize * d..(i as usize + 1) * d]
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// a·b, applying a first.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (pa, pb) = (self.elem(a), self.elem(b));
        let prod: Vec<u32> = pa.iter().map(|&x| pb[x as usize]).collect();
        self.index[prod.as_slice()]
    }

    /// x·g_s for the s-th generator.
    pub fn mul_gen(&self, x: u32, s: usize) -> u32 {
        self.rmul[s][x as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g⁻¹·x·g
    pub fn conj_elem(&self, x: u32, g: u32) -> u32 {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// g_s⁻¹·x·g_s by table.
    pub fn conj_gen(&self, x: u32, s: usize) -> u32 {
        self.conj[s][x as usize]
    }

    pub fn elem_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        if p.degree() != self.source.degree() {
            return None;
        }
        let local: Vec<u32> = self.points.iter().map(|&x| self.local_of[p.apply(x) as usize]).collect();
        self.index.get(local.as_slice()).copied()
    }

    /// The element on the original points.
    pub fn lift(&self, i: u32) -> Perm {
        let mut word = Vec::new();
        let mut x = i;
        while x != 0 {
            let (p, s) = self.parent[x as usize];
            word.push(s as usize);
            x = p;
        }
        let gens = self.source.gens();
        let mut out = Perm::identity(self.source.degree());
        for &s in word.iter().rev() {
            out = out.mul(&gens[s]);
        }
        out
    }

    pub fn trivial(&self) -> ElemSubgroup {
        let mut bits = ElemSet::new(self.len());
        bits.insert(0);
        ElemSubgroup { bits, elems: vec![0], gens: Vec::new() }
    }

    pub fn whole(&self) -> ElemSubgroup {
        self.closure(&self.gens)
    }

    pub fn closure(&self, gens: &[u32]) -> ElemSubgroup {
        gens.iter().fold(self.trivial(), |h, &g| self.join(&h, g))
    }

    /// ⟨H, y⟩ by adding whole right cosets of H.
    pub fn join(&self, h: &ElemSubgroup, y: u32) -> ElemSubgroup {
        self.join_within(h, y, usize::MAX).expect("unbounded join")
    }

    /// As `join`, giving up once the result would exceed `limit` elements.
    pub fn join_within(&self, h: &ElemSubgroup, y: u32, limit: usize) -> Option<ElemSubgroup> {
        if h.contains(y) {
            return Some(h.clone());
        }
        let mut gens = h.gens.clone();
        gens.push(y);
        let mut bits = h.bits.clone();
        let mut elems = h.elems.clone();
        let mut reps = vec![0u32];
        let mut r = 0;
        while r < reps.len() {
            for &g in &gens {
                let t = self.mul(reps[r], g);
                if bits.contains(t) {
                    continue;
                }
                if elems.len() + h.elems.len() > limit {
                    return None;
                }
                for &x in &h.elems {
                    let e = self.mul(x, t);
                    bits.insert(e);
                    elems.push(e);
                }
                reps.push(t);
            }
            r += 1;
        }
        Some(ElemSubgroup { bits, elems, gens })
    }

    /// The subgroup generated by the given permutations, which must lie in G.
    pub fn subgroup_of(&self, h: &PermGroup) -> Result<ElemSubgroup> {
        let gens = h
            .gens()
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::Precondition("generator outside the group".into())))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.closure(&gens))
    }

    /// Image of an element set under conjugation by the s-th generator.
    pub fn conjugate_set_gen(&self, set: &ElemSet, s: usize) -> ElemSet {
        let mut out = ElemSet::new(self.len());
        for x in set.iter() {
            out.insert(self.conj[s][x as usize]);
        }
        out
    }

    pub fn conjugate_set(&self, set: &ElemSet, g: u32) -> ElemSet {
        let gi = self.inv(g);
        let mut out = ElemSet::new(self.len());
        for x in set.iter() {
            out.insert(self.mul(gi, self.mul(x, g)));
        }
        out
    }

    /// Whether g normalises H.
    pub fn normalises(&self, h: &ElemSubgroup, g: u32) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj_elem(x, g)))
    }

    /// N_G(H), by testing every element.
    pub fn normaliser(&self, h: &ElemSubgroup) -> ElemSubgroup {
        let mut n = h.clone();
        for g in 0..self.len() as u32 {
            if !n.contains(g) && self.normalises(h, g) {
                n = self.join(&n, g);
            }
        }
        n
    }

    pub fn to_perm_group(&self, h: &ElemSubgroup) -> PermGroup {
        let gens = h.gens.iter().map(|&i| self.lift(i)).collect();
        PermGroup::new(self.source.degree(), gens).with_seed(self.source.seed()).with_order(h.order().into())
    }
}

/// A union of orbits on which `g` acts faithfully: a single orbit if one
/// suffices, otherwise orbits added from the smallest up.
fn faithful_points(g: &PermGroup, order: u64) -> Vec<u32> {
    let mut orbits = g.orbits();
    orbits.retain(|o| o.len() > 1);
    orbits.sort_by_key(|o| o.len());
    let faithful = |points: &[u32]| {
        let mut local = vec![u32::MAX; g.degree()];
        for (i, &p) in points.iter().enumerate() {
            local[p as usize] = i as u32;
        }
        let gens: Vec<Perm> = g
            .gens()
            .iter()
            .map(|p| Perm::from_images_unchecked(points.iter().map(|&x| local[p.apply(x) as usize]).collect()))
            .collect();
        PermGroup::new(points.len(), gens).with_seed(g.seed()).order_u64() == Some(order)
    };
    if let Some(o) = orbits.iter().find(|o| faithful(o)) {
        let mut points = o.clone();
        points.sort_unstable();
        return points;
    }
    let mut points: Vec<u32> = Vec::new();
    for o in &orbits {
        points.extend_from_slice(o);
        points.sort_unstable();
        if faithful(&points) {
            return points;
        }
    }
    if points.is_empty() {
        // trivial group: keep one point so elements have a body
        points.push(0);
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};

    #[test]
    fn listing_matches_order() {
        let g = construct(&GroupSpec::Sym(4)).unwrap();
        let eg = ElementGroup::new(&g, 1000).unwrap();
        assert_eq!(eg.len(), 24);
        for i in 0..24u32 {
            assert_eq!(eg.mul(i, eg.inv(i)), 0);
            assert_eq!(eg.index_of(&eg.lift(i)), Some(i));
        }
        assert_eq!(eg.whole().order(), 24);
    }

    #[test]
    fn faithful_restriction() {
        // S3 on {0,1,2} plus a copy of its sign action on {3,4}
        let a = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1], vec![3, 4]]).unwrap();
        let g = PermGroup::new(5, vec![a, b]);
        let eg = ElementGroup::new(&g, 100).unwrap();
        assert_eq!(eg.points(), &[0, 1, 2]);
        assert_eq!(eg.len(), 6);
        let x = eg.index_of(&g.gens()[1]).unwrap();
        assert_eq!(eg.lift(x), g.gens()[1]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = construct(&GroupSpec::Sym(8)).unwrap();
        assert!(matches!(ElementGroup::new(&g, 1000), Err(Error::ResourceLimit(_))));
    }
}
