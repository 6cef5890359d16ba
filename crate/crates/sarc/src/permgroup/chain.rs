//! Base and strong generating set via randomised Schreier–Sims with a
//! deterministic verification pass.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Perm;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Orbits up to this many image entries keep explicit inverse coset
/// representatives; larger ones walk the Schreier tree.
const EXPLICIT_LIMIT: usize = 1 << 23;

/// Consecutive successful sifts needed to end the random phase when no
/// target order is known.
const QUIET_SIFTS: usize = 48;

#[derive(Clone, Debug)]
pub struct Level {
    pub point: u32,
    pub gens: Vec<Perm>,
    gen_invs: Vec<Perm>,
    pub orbit: Vec<u32>,
    label: Vec<u32>,
    inv_reps: Option<Vec<Option<Perm>>>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Level {
        let mut label = vec![NOT_IN_ORBIT; degree];
        label[point as usize] = ROOT;
        Level {
            point,
            gens: Vec::new(),
            gen_invs: Vec::new(),
            orbit: vec![point],
            label,
            inv_reps: None,
        }
    }

    fn recompute_orbit(&mut self) {
        let degree = self.label.len();
        self.label.iter_mut().for_each(|l| *l = NOT_IN_ORBIT);
        self.label[self.point as usize] = ROOT;
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for (k, s) in self.gens.iter().enumerate() {
                let y = s.apply(x);
                if self.label[y as usize] == NOT_IN_ORBIT {
                    self.label[y as usize] = k as u32;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
        if self.orbit.len() * degree <= EXPLICIT_LIMIT {
            let mut reps: Vec<Option<Perm>> = vec![None; degree];
            reps[self.point as usize] = Some(Perm::identity(degree));
            for idx in 1..self.orbit.len() {
                let y = self.orbit[idx];
                let k = self.label[y as usize] as usize;
                let parent = self.gen_invs[k].apply(y);
                let r = self.gen_invs[k].mul(reps[parent as usize].as_ref().unwrap());
                reps[y as usize] = Some(r);
            }
            self.inv_reps = Some(reps);
        } else {
            self.inv_reps = None;
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gen_invs.push(g.inv());
        self.gens.push(g);
    }

    #[inline]
    pub fn contains_point(&self, x: u32) -> bool {
        self.label[x as usize] != NOT_IN_ORBIT
    }

    /// Element mapping `x` to the level's base point.
    pub fn inv_rep(&self, x: u32) -> Perm {
        if let Some(reps) = &self.inv_reps {
            return reps[x as usize].clone().expect("point in orbit");
        }
        let mut w = Perm::identity(self.label.len());
        let mut y = x;
        while y != self.point {
            let k = self.label[y as usize] as usize;
            w.mul_assign(&self.gen_invs[k]);
            y = self.gen_invs[k].apply(y);
        }
        w
    }

    /// Element mapping the base point to `x`.
    pub fn rep(&self, x: u32) -> Perm {
        self.inv_rep(x).inv()
    }

    /// g := g · u_x⁻¹ where x = point^g.
    fn strip(&self, g: &mut Perm, x: u32) {
        if let Some(reps) = &self.inv_reps {
            g.mul_assign(reps[x as usize].as_ref().unwrap());
            return;
        }
        let mut y = x;
        while y != self.point {
            let k = self.label[y as usize] as usize;
            g.mul_assign(&self.gen_invs[k]);
            y = self.gen_invs[k].apply(y);
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
}

#[derive(Clone, Debug, Default)]
pub struct ChainOptions {
    pub base_prefix: Vec<u32>,
    pub known_order: Option<BigUint>,
    pub seed: u64,
}

/// Product-replacement random elements.
pub struct RandomSource {
    state: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(degree: usize, gens: &[Perm], seed: u64) -> RandomSource {
        let mut state: Vec<Perm> = gens.to_vec();
        if state.is_empty() {
            state.push(Perm::identity(degree));
        }
        let base = state.clone();
        while state.len() < 10 {
            let k = state.len() % base.len();
            state.push(base[k].clone());
        }
        let mut src = RandomSource {
            state,
            acc: Perm::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            src.next_element();
        }
        src
    }

    pub fn next_element(&mut self) -> Perm {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) { self.state[j].clone() } else { self.state[j].inv() };
        if self.rng.gen_bool(0.5) {
            self.state[i] = self.state[i].mul(&other);
        } else {
            self.state[i] = other.mul(&self.state[i]);
        }
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm], opts: &ChainOptions) -> StabChain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain {
            degree,
            levels: opts.base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.absorb(g.clone(), 0);
        }
        let target = opts.known_order.clone();
        let mut rs = RandomSource::new(degree, &gens, opts.seed);
        let mut quiet = 0;
        loop {
            if let Some(t) = &target {
                if &chain.order() >= t {
                    break;
                }
            } else if quiet >= QUIET_SIFTS {
                break;
            }
            let r = rs.next_element();
            if chain.absorb(r, 0) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
        if target.is_none() {
            chain.verify();
        }
        chain
    }

    /// Sifts `g` from `start`; adds the residue as a new strong generator
    /// if it is nontrivial. Returns whether the chain changed.
    fn absorb(&mut self, g: Perm, start: usize) -> bool {
        let (h, j) = self.sift_from(&g, start);
        if h.is_identity() {
            return false;
        }
        self.insert_residue(h, start, j);
        true
    }

    fn insert_residue(&mut self, h: Perm, start: usize, j: usize) {
        let mut j = j;
        if j == self.levels.len() {
            let point = choose_base_point(&h);
            self.levels.push(Level::new(point, self.degree));
            j = self.levels.len() - 1;
        }
        for lvl in start..=j {
            self.levels[lvl].add_gen(h.clone());
            self.levels[lvl].recompute_orbit();
        }
    }

    /// Checks every Schreier generator, repairing the chain if needed.
    fn verify(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let lvl = &self.levels[i];
                let orbit = lvl.orbit.clone();
                let ngens = lvl.gens.len();
                for &x in &orbit {
                    let ux = self.levels[i].rep(x);
                    for k in 0..ngens {
                        let s = &self.levels[i].gens[k];
                        let y = s.apply(x);
                        let mut sg = ux.mul(s);
                        self.levels[i].strip(&mut sg, y);
                        if sg.is_identity() {
                            continue;
                        }
                        let (h, j) = self.sift_from(&sg, i + 1);
                        if !h.is_identity() {
                            self.insert_residue(h, i + 1, j);
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_gens(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    /// Order of the stabiliser of the first `k` base points.
    pub fn order_from(&self, k: usize) -> BigUint {
        self.levels[k..].iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    /// Sifts `g` starting at level `start`; returns the residue and the
    /// level at which sifting stopped (levels.len() if it went through).
    pub fn sift_from(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, lvl) in self.levels.iter().enumerate().skip(start) {
            let x = h.apply(lvl.point);
            if !lvl.contains_point(x) {
                return (h, i);
            }
            lvl.strip(&mut h, x);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Strong generators of the stabiliser of the first `k` base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.levels[k].gens.clone()
    }

    /// Uniformly random element from the transversal product.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lvl in self.levels.iter().rev() {
            let x = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            g = g.mul(&lvl.rep(x));
        }
        g
    }

    /// Calls `f` on every element. Only sensible for small groups.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, mut f: F) {
        // deeper levels first: g = u_k ... u_1
        fn rec_rev<F: FnMut(&Perm)>(chain: &StabChain, i: isize, acc: &Perm, f: &mut F) {
            if i < 0 {
                f(acc);
                return;
            }
            let lvl = &chain.levels[i as usize];
            for &x in &lvl.orbit {
                let g = acc.mul(&lvl.rep(x));
                rec_rev(chain, i - 1, &g, f);
            }
        }
        rec_rev(self, self.levels.len() as isize - 1, &Perm::identity(self.degree), &mut f);
    }
}

/// Among the points moved by `h`, one in a shortest cycle; ties go to
/// the smallest point.
fn choose_base_point(h: &Perm) -> u32 {
    let mut best: Option<(usize, u32)> = None;
    for c in h.cycles() {
        let m = *c.iter().min().unwrap();
        let cand = (c.len(), m);
        if best.map_or(true, |b| cand < b) {
            best = Some(cand);
        }
    }
    best.expect("nontrivial permutation").1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()]
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..9 {
            let c = StabChain::build(n, &sym(n), &ChainOptions::default());
            let expect: u64 = (1..=n as u64).product();
            assert_eq!(c.order(), BigUint::from(expect));
        }
    }

    #[test]
    fn prefix_is_respected() {
        let opts = ChainOptions { base_prefix: vec![3, 1], known_order: None, seed: 7 };
        let c = StabChain::build(5, &sym(5), &opts);
        assert_eq!(&c.base()[..2], &[3, 1]);
        assert_eq!(c.order(), BigUint::from(120u32));
        assert_eq!(c.order_from(1), BigUint::from(24u32));
    }

    #[test]
    fn element_enumeration_counts() {
        let c = StabChain::build(4, &sym(4), &ChainOptions::default());
        let mut seen = std::collections::HashSet::new();
        c.for_each_element(|g| {
            seen.insert(g.clone());
        });
        assert_eq!(seen.len(), 24);
    }
}
