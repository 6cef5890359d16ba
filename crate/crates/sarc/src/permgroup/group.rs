use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::chain::{ChainOptions, RandomSource, StabChain};
use super::perm::Perm;

pub const DEFAULT_SEED: u64 = 0x5a5c_0d1e_77f1_2b03;

/// Block structure of a group built as A wr S_k: `blocks` blocks of
/// `component_degree` consecutive points, with the component group given
/// by `component_gens` acting on 0..component_degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathInfo {
    pub component_degree: usize,
    pub blocks: usize,
    pub component_gens: Vec<Perm>,
}

impl WreathInfo {
    pub fn block_of(&self, x: u32) -> usize {
        x as usize / self.component_degree
    }

    pub fn partition(&self) -> Vec<Vec<u32>> {
        let d = self.component_degree as u32;
        (0..self.blocks as u32).map(|b| (b * d..(b + 1) * d).collect()).collect()
    }
}

/// A permutation group given by generators, with a lazily built
/// stabiliser chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    seed: u64,
    order_hint: Option<BigUint>,
    chain: OnceLock<Arc<StabChain>>,
    wreath: Option<Arc<WreathInfo>>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        assert!(gens.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        PermGroup { degree, gens, seed: DEFAULT_SEED, order_hint: None, chain: OnceLock::new(), wreath: None }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    pub fn with_seed(mut self, seed: u64) -> PermGroup {
        self.seed = seed;
        self
    }

    /// Records the known order; chain construction then stops as soon as
    /// it is reached.
    pub fn with_order(mut self, order: BigUint) -> PermGroup {
        self.order_hint = Some(order);
        self
    }

    pub fn with_wreath(mut self, info: WreathInfo) -> PermGroup {
        self.wreath = Some(Arc::new(info));
        self
    }

    /// Installs an already computed chain for this group.
    pub fn with_chain(self, chain: StabChain) -> PermGroup {
        let _ = self.chain.set(Arc::new(chain));
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn wreath(&self) -> Option<&WreathInfo> {
        self.wreath.as_deref()
    }

    /// A subgroup handle on the same domain with the same seed.
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::new(self.degree, gens).with_seed(self.seed)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let opts = ChainOptions { base_prefix: Vec::new(), known_order: self.order_hint.clone(), seed: self.seed };
            Arc::new(StabChain::build(self.degree, &self.gens, &opts))
        })
    }

    /// A fresh chain whose base starts with `prefix`.
    pub fn chain_with_base(&self, prefix: &[u32]) -> StabChain {
        let c = self.chain();
        if c.base().starts_with(prefix) {
            return c.clone();
        }
        let opts = ChainOptions { base_prefix: prefix.to_vec(), known_order: Some(c.order()), seed: self.seed };
        StabChain::build(self.degree, &c.strong_gens(), &opts)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for g in &self.gens {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Orbits in order of their smallest point; each orbit is sorted.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let mut h = self.subgroup(self.gens.iter().map(|x| x.conj(g)).collect());
        if let Some(c) = self.chain.get() {
            h.order_hint = Some(c.order());
        } else {
            h.order_hint = self.order_hint.clone();
        }
        h
    }

    /// Stabiliser of the points in `points`, taken in order.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let mut prefix: Vec<u32> = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let chain = self.chain_with_base(&prefix);
        let k = prefix.len();
        let gens = chain.stabilizer_gens(k);
        let order = if k >= chain.levels.len() { BigUint::one() } else { chain.order_from(k) };
        self.subgroup(gens).with_order(order)
    }

    pub fn random_source(&self, seed: u64) -> RandomSource {
        RandomSource::new(self.degree, &self.chain().strong_gens(), seed)
    }

    /// All elements; intended for small groups only.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.chain().for_each_element(|g| out.push(g.clone()));
        out
    }

    /// The group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Perm]) -> PermGroup {
        let mut gens = self.gens.clone();
        for g in extra {
            if !self.contains(g) && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.len() == self.gens.len() {
            return self.clone();
        }
        self.subgroup(gens)
    }
}
