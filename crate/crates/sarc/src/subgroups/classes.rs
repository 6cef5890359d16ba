//! Conjugacy classes of subgroups by joining class representatives with
//! cyclic subgroups of prime-power order.
//!
//! Every subgroup is generated by its cyclic subgroups of prime-power
//! order, so starting from the trivial group and repeatedly joining a
//! representative K with such a cyclic subgroup reaches every class. Only
//! one cyclic subgroup per N_G(K)-orbit needs to be tried.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::elements::{ElemSet, ElemSubgroup, ElementGroup, DEFAULT_ELEMENT_CAP};
use crate::error::Result;
use crate::numth::factorize;
use crate::permgroup::{Perm, PermGroup};

/// A cyclic subgroup of prime-power order, given by one generator.
#[derive(Clone, Copy, Debug)]
pub struct Zuppo {
    pub gen: u32,
    pub prime: u64,
    pub order: u32,
}

/// The cyclic subgroups of prime-power order of an element group, and for
/// each element the index of the one it generates.
pub struct Zuppos {
    pub list: Vec<Zuppo>,
    of_elem: Vec<u32>,
}

impl Zuppos {
    pub fn new(eg: &ElementGroup) -> Zuppos {
        let n = eg.len();
        let mut of_elem = vec![u32::MAX; n];
        let mut list = Vec::new();
        for i in 1..n as u32 {
            if of_elem[i as usize] != u32::MAX {
                continue;
            }
            let ord = eg.elem_order(i);
            let f = factorize(&BigUint::from(ord));
            if f.len() != 1 {
                continue;
            }
            let prime: u64 = (&f[0].0).try_into().expect("small prime");
            let id = list.len() as u32;
            list.push(Zuppo { gen: i, prime, order: ord });
            // generators of <i> are the powers coprime to its order
            let mut x = i;
            for k in 1..ord {
                if k as u64 % prime != 0 {
                    of_elem[x as usize] = id;
                }
                x = eg.mul(x, i);
            }
        }
        Zuppos { list, of_elem }
    }

    /// The cyclic subgroup generated by element `x`, if of prime-power order.
    pub fn of_elem(&self, x: u32) -> Option<u32> {
        let z = self.of_elem[x as usize];
        (z != u32::MAX).then_some(z)
    }
}

/// One class of subgroups: representative, class length and generators
/// of the normaliser of the representative.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub rep: ElemSubgroup,
    pub class_size: u64,
    pub normaliser_gens: Vec<u32>,
}

impl ClassRecord {
    pub fn order(&self) -> u64 {
        self.rep.order()
    }
}

/// Growing list of subgroup classes of one element group.
pub struct Lattice<'a> {
    eg: &'a ElementGroup,
    zuppos: &'a Zuppos,
    classes: Vec<ClassRecord>,
    seen: FxHashMap<u128, u32>,
}

impl<'a> Lattice<'a> {
    pub fn new(eg: &'a ElementGroup, zuppos: &'a Zuppos) -> Lattice<'a> {
        Lattice { eg, zuppos, classes: Vec::new(), seen: FxHashMap::default() }
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<ClassRecord> {
        self.classes
    }

    /// Index of the class containing `h`, if already known.
    pub fn class_of(&self, h: &ElemSet) -> Option<usize> {
        self.seen.get(&h.digest()).map(|&i| i as usize)
    }

    /// Adds the class of `h` if new. Returns its index and whether it was new.
    pub fn register(&mut self, h: ElemSubgroup) -> (usize, bool) {
        if let Some(id) = self.class_of(&h.bits) {
            return (id, false);
        }
        let eg = self.eg;
        let id = self.classes.len() as u32;
        let mut transversal: FxHashMap<u128, u32> = FxHashMap::default();
        transversal.insert(h.bits.digest(), 0);
        let mut stack = vec![(h.bits.clone(), 0u32)];
        let mut norm = h.clone();
        while let Some((set, t)) = stack.pop() {
            for s in 0..eg.gens().len() {
                let img = eg.conjugate_set_gen(&set, s);
                let d = img.digest();
                let ts = eg.mul_gen(t, s);
                match transversal.get(&d) {
                    Some(&u) => {
                        let x = eg.mul(ts, eg.inv(u));
                        if !norm.contains(x) {
                            norm = eg.join(&norm, x);
                        }
                    }
                    None => {
                        transversal.insert(d, ts);
                        stack.push((img, ts));
                    }
                }
            }
        }
        let class_size = transversal.len() as u64;
        debug_assert_eq!(class_size * norm.order(), eg.order());
        for d in transversal.into_keys() {
            self.seen.insert(d, id);
        }
        self.classes.push(ClassRecord { rep: h, class_size, normaliser_gens: norm.gens });
        (id as usize, true)
    }

    /// Processes classes from index `from` to the end of the (growing)
    /// list, joining each with one cyclic subgroup per normaliser orbit.
    /// `use_zuppo` restricts which cyclic subgroups are tried; `accept`
    /// filters joins, returning them only if they fit within `limit`.
    pub fn extend<U, A>(&mut self, from: usize, limit: usize, use_zuppo: U, accept: A)
    where
        U: Fn(&Zuppo) -> bool,
        A: Fn(&ElemSubgroup) -> bool,
    {
        let eg = self.eg;
        let zs = self.zuppos;
        let nz = zs.list.len();
        let mut i = from;
        while i < self.classes.len() {
            let k = self.classes[i].rep.clone();
            let ngens = self.classes[i].normaliser_gens.clone();
            let mut done = vec![false; nz];
            for (zi, z) in zs.list.iter().enumerate() {
                if done[zi] || !use_zuppo(z) || k.contains(z.gen) {
                    continue;
                }
                // mark the normaliser orbit of this cyclic subgroup
                done[zi] = true;
                let mut orbit = vec![zi as u32];
                let mut h = 0;
                while h < orbit.len() {
                    let g0 = zs.list[orbit[h] as usize].gen;
                    for &n in &ngens {
                        let img = zs.of_elem(eg.conj_elem(g0, n)).expect("conjugate of a prime-power element");
                        if !done[img as usize] {
                            done[img as usize] = true;
                            orbit.push(img);
                        }
                    }
                    h += 1;
                }
                if let Some(j) = eg.join_within(&k, z.gen, limit) {
                    if accept(&j) {
                        self.register(j);
                    }
                }
            }
            i += 1;
        }
    }

    /// Every conjugate of class `i` with a conjugating element.
    pub fn conjugates(&self, i: usize) -> Vec<(ElemSet, u32)> {
        conjugates_of(self.eg, &self.classes[i].rep.bits)
    }
}

/// The conjugation orbit of an element set, each with an element taking
/// the original to it.
pub fn conjugates_of(eg: &ElementGroup, set: &ElemSet) -> Vec<(ElemSet, u32)> {
    let mut seen: FxHashMap<u128, ()> = FxHashMap::default();
    seen.insert(set.digest(), ());
    let mut out = vec![(set.clone(), 0u32)];
    let mut h = 0;
    while h < out.len() {
        for s in 0..eg.gens().len() {
            let img = eg.conjugate_set_gen(&out[h].0, s);
            if seen.insert(img.digest(), ()).is_none() {
                let t = eg.mul_gen(out[h].1, s);
                out.push((img, t));
            }
        }
        h += 1;
    }
    out
}

/// All classes of subgroups of the listed group.
pub fn all_classes(eg: &ElementGroup) -> Vec<ClassRecord> {
    let zs = Zuppos::new(eg);
    let mut lat = Lattice::new(eg, &zs);
    lat.register(eg.trivial());
    lat.extend(0, usize::MAX, |_| true, |_| true);
    lat.into_classes()
}

/// Classes of subgroups containing a subgroup of order p^k.
///
/// The p-subgroups of order p^k are found first, restricting joins to
/// p-elements; then the classes above them are grown with every cyclic
/// subgroup of prime-power order.
pub fn classes_above_p_subgroups(eg: &ElementGroup, p: u64, k: u32) -> Vec<ClassRecord> {
    let zs = Zuppos::new(eg);
    let target = p.pow(k) as usize;
    let seeds: Vec<ElemSubgroup> = if k == 0 {
        vec![eg.trivial()]
    } else {
        let mut plat = Lattice::new(eg, &zs);
        plat.register(eg.trivial());
        plat.extend(0, target, |z| z.prime == p, |j| is_power_of(j.order(), p));
        plat.into_classes().into_iter().filter(|c| c.rep.elems.len() == target).map(|c| c.rep).collect()
    };
    let mut lat = Lattice::new(eg, &zs);
    for s in seeds {
        lat.register(s);
    }
    lat.extend(0, usize::MAX, |_| true, |_| true);
    lat.into_classes()
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// ∏ p^⌈e_p/2⌉ over the factorisation ∏ p^{e_p} of n: the least order a
/// factor in a factorisation with equal-order factors can have.
pub fn min_factor_order(n: u64) -> u64 {
    factorize(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| {
            let p: u64 = (&p).try_into().expect("small prime");
            p.pow(e.div_ceil(2))
        })
        .product()
}

/// A class of subgroups on the original points.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub order: u64,
    pub class_size: u64,
}

impl Serialize for SubgroupClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<String> = self.representative.gens().iter().map(|g| g.to_string()).collect();
        let mut st = s.serialize_struct("SubgroupClass", 3)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("class_size", &self.class_size)?;
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

pub fn lift_class(eg: &ElementGroup, c: &ClassRecord) -> SubgroupClass {
    SubgroupClass { representative: eg.to_perm_group(&c.rep), order: c.order(), class_size: c.class_size }
}

/// One representative per conjugacy class of subgroups of order at least
/// `min_order`, sorted by order.
pub fn subgroup_classes(g: &PermGroup, min_order: u64) -> Result<Vec<SubgroupClass>> {
    subgroup_classes_capped(g, min_order, DEFAULT_ELEMENT_CAP)
}

pub fn subgroup_classes_capped(g: &PermGroup, min_order: u64, cap: u64) -> Result<Vec<SubgroupClass>> {
    let eg = ElementGroup::new(g, cap)?;
    let mut out: Vec<SubgroupClass> =
        all_classes(&eg).iter().filter(|c| c.order() >= min_order).map(|c| lift_class(&eg, c)).collect();
    out.sort_by_key(|c| (c.order, c.class_size));
    Ok(out)
}

/// An element g of G with H^g = K, if there is one.
pub fn is_conjugate_subgroup(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Option<Perm>> {
    let eg = ElementGroup::new(g, DEFAULT_ELEMENT_CAP)?;
    let hs = eg.subgroup_of(h)?;
    let ks = eg.subgroup_of(k)?;
    Ok(conjugating_element(&eg, &hs, &ks).map(|t| eg.lift(t)))
}

/// Element-index form of [`is_conjugate_subgroup`].
pub fn conjugating_element(eg: &ElementGroup, h: &ElemSubgroup, k: &ElemSubgroup) -> Option<u32> {
    if h.order() != k.order() || orbit_shape(eg, h) != orbit_shape(eg, k) {
        return None;
    }
    let target = k.bits.digest();
    let mut seen: FxHashMap<u128, ()> = FxHashMap::default();
    seen.insert(h.bits.digest(), ());
    let mut queue = vec![(h.bits.clone(), 0u32)];
    let mut head = 0;
    while head < queue.len() {
        if queue[head].0.digest() == target && queue[head].0 == k.bits {
            return Some(queue[head].1);
        }
        for s in 0..eg.gens().len() {
            let img = eg.conjugate_set_gen(&queue[head].0, s);
            if seen.insert(img.digest(), ()).is_none() {
                let t = eg.mul_gen(queue[head].1, s);
                queue.push((img, t));
            }
        }
        head += 1;
    }
    None
}

/// Sorted orbit lengths of a subgroup on the original points.
fn orbit_shape(eg: &ElementGroup, h: &ElemSubgroup) -> Vec<usize> {
    let mut sizes: Vec<usize> = eg.to_perm_group(h).orbits().iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};

    fn orders(g: &GroupSpec, min: u64) -> Vec<u64> {
        subgroup_classes(&construct(g).unwrap(), min).unwrap().iter().map(|c| c.order).collect()
    }

    #[test]
    fn s4_has_eleven_classes() {
        let cs = subgroup_classes(&construct(&GroupSpec::Sym(4)).unwrap(), 1).unwrap();
        assert_eq!(cs.len(), 11);
        let total: u64 = cs.iter().map(|c| c.class_size).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn a5_large_classes() {
        assert_eq!(orders(&GroupSpec::Alt(5), 10), vec![10, 12, 60]);
    }

    #[test]
    fn p_seeded_classes_contain_seed() {
        let g = construct(&GroupSpec::Sym(5)).unwrap();
        let eg = ElementGroup::new(&g, 1000).unwrap();
        let all = all_classes(&eg);
        let above = classes_above_p_subgroups(&eg, 5, 1);
        let expect = all.iter().filter(|c| c.order() % 5 == 0).count();
        assert_eq!(above.len(), expect);
    }

    #[test]
    fn min_factor_orders() {
        assert_eq!(min_factor_order(7962624), 6912);
        assert_eq!(min_factor_order(17280), 720);
        assert_eq!(min_factor_order(720), 60);
    }

    #[test]
    fn sylow_subgroups_are_conjugate() {
        let g = construct(&GroupSpec::Sym(4)).unwrap();
        let p = |c: &[Vec<u32>]| Perm::from_cycles(4, c).unwrap();
        let h = g.subgroup(vec![p(&[vec![0, 1, 2, 3]]), p(&[vec![0, 2]])]);
        let k = g.subgroup(vec![p(&[vec![0, 2, 1, 3]]), p(&[vec![0, 1]])]);
        let x = is_conjugate_subgroup(&g, &h, &k).unwrap().expect("Sylow subgroups are conjugate");
        assert!(h.conjugate(&x).equals(&k));
    }
}
