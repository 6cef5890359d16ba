//! Actions on cosets and on arbitrary hashable objects.

use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::chain::{ChainOptions, StabChain};
use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

pub const DEFAULT_INDEX_CAP: usize = 1_000_000;

/// Orbit of `start` under the maps `act(x, k)` for generator index k in
/// 0..ngens, with the induced permutation of each generator.
pub fn induced_action<T, F>(start: T, ngens: usize, cap: usize, act: F) -> Result<(Vec<T>, Vec<Perm>)>
where
    T: Hash + Eq + Clone,
    F: Fn(&T, usize) -> T,
{
    let mut index: FxHashMap<T, u32> = FxHashMap::default();
    let mut points = vec![start.clone()];
    index.insert(start, 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); ngens];
    let mut i = 0;
    while i < points.len() {
        for (k, img) in images.iter_mut().enumerate() {
            let y = act(&points[i], k);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if points.len() >= cap {
                        return Err(Error::ResourceLimit(format!("orbit exceeds {cap} points")));
                    }
                    let j = points.len() as u32;
                    index.insert(y.clone(), j);
                    points.push(y);
                    j
                }
            };
            img.push(j);
        }
        i += 1;
    }
    let perms = images
        .into_iter()
        .map(|v| Perm::from_images(v).map_err(|_| Error::Precondition("action is not by bijections".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((points, perms))
}

/// Action of G by right multiplication on the right cosets of H.
#[derive(Clone, Debug)]
pub struct CosetAction {
    h_chain: StabChain,
    reps: Vec<Perm>,
    index: FxHashMap<Vec<u32>, u32>,
    images: Vec<Perm>,
    source_order: BigUint,
}

impl CosetAction {
    pub fn new(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<CosetAction> {
        if !h.is_subgroup_of(g) {
            return Err(Error::Precondition("H is not a subgroup of G".into()));
        }
        let idx = g.order() / h.order();
        let n = idx.to_usize().filter(|&n| n <= cap).ok_or_else(|| {
            Error::ResourceLimit(format!("index {idx} exceeds cap {cap}"))
        })?;
        let opts = ChainOptions { base_prefix: g.chain().base(), known_order: Some(h.order()), seed: h.seed() };
        let h_chain = StabChain::build(g.degree(), h.gens(), &opts);
        let mut act = CosetAction {
            h_chain,
            reps: Vec::with_capacity(n),
            index: FxHashMap::default(),
            images: Vec::new(),
            source_order: g.order(),
        };
        let id = Perm::identity(g.degree());
        let (key, rep) = act.canonical(&id);
        act.index.insert(key, 0);
        act.reps.push(rep);
        let mut imgs: Vec<Vec<u32>> = vec![Vec::with_capacity(n); g.gens().len()];
        let mut i = 0;
        while i < act.reps.len() {
            for (k, s) in g.gens().iter().enumerate() {
                let y = act.reps[i].mul(s);
                let (key, rep) = act.canonical(&y);
                let j = match act.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = act.reps.len() as u32;
                        act.index.insert(key, j);
                        act.reps.push(rep);
                        j
                    }
                };
                imgs[k].push(j);
            }
            i += 1;
        }
        debug_assert_eq!(act.reps.len(), n);
        act.images = imgs.into_iter().map(Perm::from_images_unchecked).collect();
        Ok(act)
    }

    /// Canonical element of the coset Hx: greedily minimises the images of
    /// the base points (the base contains a base of G).
    fn canonical(&self, x: &Perm) -> (Vec<u32>, Perm) {
        let mut x = x.clone();
        let mut key = Vec::with_capacity(self.h_chain.levels.len());
        for lvl in &self.h_chain.levels {
            let mut best = u32::MAX;
            let mut best_gamma = lvl.point;
            for &gamma in &lvl.orbit {
                let im = x.apply(gamma);
                if im < best {
                    best = im;
                    best_gamma = gamma;
                }
            }
            if best_gamma != lvl.point {
                x = lvl.rep(best_gamma).mul(&x);
            }
            key.push(best);
        }
        (key, x)
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives; point i is the coset H·reps[i].
    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    /// Images of the generators of G, in order.
    pub fn gen_images(&self) -> &[Perm] {
        &self.images
    }

    /// The coset containing x.
    pub fn point_of(&self, x: &Perm) -> u32 {
        let (key, _) = self.canonical(x);
        self.index[&key]
    }

    /// Image of an arbitrary element of G.
    pub fn image_of(&self, g: &Perm) -> Perm {
        let imgs: Vec<u32> = self.reps.iter().map(|r| self.point_of(&r.mul(g))).collect();
        Perm::from_images_unchecked(imgs)
    }

    pub fn image_group(&self, seed: u64) -> PermGroup {
        PermGroup::new(self.degree(), self.images.clone()).with_seed(seed)
    }

    pub fn source_order(&self) -> &BigUint {
        &self.source_order
    }
}

pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction> {
    CosetAction::new(g, h, DEFAULT_INDEX_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn s4_on_cosets_of_d8() {
        let s4 = PermGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]);
        let d8 = s4.subgroup(vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]);
        let a = coset_action(&s4, &d8).unwrap();
        assert_eq!(a.degree(), 3);
        assert_eq!(a.image_group(1).order(), BigUint::from(6u32));
        for x in s4.elements() {
            let img = a.image_of(&x);
            assert_eq!(img.apply(0) == 0, d8.contains(&x));
        }
    }

    #[test]
    fn induced_on_pairs() {
        let s4 = [p("(1,2)", 4), p("(1,2,3,4)", 4)];
        let (pts, perms) = induced_action((0u32, 1u32), 2, 100, |&(a, b), k| {
            let (x, y) = (s4[k].apply(a), s4[k].apply(b));
            (x.min(y), x.max(y))
        })
        .unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(perms.len(), 2);
    }
}
