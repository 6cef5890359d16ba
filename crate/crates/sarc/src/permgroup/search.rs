//! Backtrack searches over stabiliser chains.

use num_bigint::BigUint;

use super::chain::{ChainOptions, StabChain};
use super::group::PermGroup;
use super::perm::Perm;

/// Some g in G with a_i^g = b_i for all i, or None.
pub fn transporter(g: &PermGroup, a: &[u32], b: &[u32]) -> Option<Perm> {
    assert_eq!(a.len(), b.len(), "tuples of different length");
    let mut prefix: Vec<u32> = Vec::new();
    let mut targets: Vec<u32> = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        match prefix.iter().position(|&p| p == x) {
            Some(j) => {
                if targets[j] != b[i] {
                    return None;
                }
            }
            None => {
                if b[..i].iter().zip(&a[..i]).any(|(&bb, &aa)| bb == b[i] && aa != x) {
                    return None;
                }
                prefix.push(x);
                targets.push(b[i]);
            }
        }
    }
    let chain = g.chain_with_base(&prefix);
    transport_in_chain(&chain, &targets)
}

/// With the chain's base starting with the source tuple, finds g mapping
/// the base prefix onto `targets`. Every such g differs by an element of
/// the pointwise stabiliser, so no backtracking is needed.
pub fn transport_in_chain(chain: &StabChain, targets: &[u32]) -> Option<Perm> {
    let mut p = Perm::identity(chain.degree());
    let mut p_inv = p.clone();
    for (i, &t) in targets.iter().enumerate() {
        let lvl = &chain.levels[i];
        let gamma = p_inv.apply(t);
        if !lvl.contains_point(gamma) {
            return None;
        }
        let u = lvl.rep(gamma);
        p = u.mul(&p);
        p_inv = p.inv();
    }
    Some(p)
}

/// H ∩ K by backtracking over the chain of H, pruning with the chain of K
/// rebuilt on the same base.
pub fn intersection(h: &PermGroup, k: &PermGroup) -> PermGroup {
    assert_eq!(h.degree(), k.degree());
    if h.is_subgroup_of(k) {
        return h.clone();
    }
    if k.is_subgroup_of(h) {
        return k.clone();
    }
    let hc = h.chain();
    let base = hc.base();
    let kc = k.chain_with_base(&base);
    let n = hc.levels.len();
    let mut found: Vec<Perm> = Vec::new();
    // search level by level from the bottom, extending the intersection
    for i in (0..n).rev() {
        let lvl = &hc.levels[i];
        let mut dead = vec![false; h.degree()];
        let mut l_orbit = orbit_of(lvl.point, &found, h.degree());
        for &x in &l_orbit {
            dead[x as usize] = true;
        }
        for &gamma in &lvl.orbit {
            if dead[gamma as usize] {
                continue;
            }
            let hit = SearchState::start(h.degree())
                .descend(&kc, i, lvl.rep(gamma), gamma)
                .and_then(|s| dfs(hc, &kc, i + 1, s));
            match hit {
                Some(g) => {
                    found.push(g);
                    l_orbit = orbit_of(lvl.point, &found, h.degree());
                    for &x in &l_orbit {
                        dead[x as usize] = true;
                    }
                }
                None => {
                    for x in orbit_of(gamma, &found, h.degree()) {
                        dead[x as usize] = true;
                    }
                }
            }
        }
    }
    h.subgroup(found)
}

fn orbit_of(x: u32, gens: &[Perm], degree: usize) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[x as usize] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let z = g.apply(orbit[i]);
            if !seen[z as usize] {
                seen[z as usize] = true;
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit
}

/// Partial product P with the K-side residue Q used for pruning.
#[derive(Clone)]
struct SearchState {
    p: Perm,
    q: Perm,
}

impl SearchState {
    fn start(degree: usize) -> SearchState {
        let id = Perm::identity(degree);
        SearchState { p: id.clone(), q: id }
    }

    /// Chooses u at H-level i; the base point then maps to gamma^P.
    fn descend(&self, kc: &StabChain, i: usize, u: Perm, gamma: u32) -> Option<SearchState> {
        let image = self.p.apply(gamma);
        let kl = &kc.levels[i];
        let x = self.q.apply(image);
        if !kl.contains_point(x) {
            return None;
        }
        let q = self.q.mul(&kl.inv_rep(x));
        Some(SearchState { p: u.mul(&self.p), q })
    }
}

fn dfs(hc: &StabChain, kc: &StabChain, i: usize, st: SearchState) -> Option<Perm> {
    if i == hc.levels.len() {
        return if kc.contains(&st.p) { Some(st.p) } else { None };
    }
    let lvl = &hc.levels[i];
    for &gamma in &lvl.orbit {
        let u = lvl.rep(gamma);
        if let Some(next) = st.descend(kc, i, u, gamma) {
            if let Some(g) = dfs(hc, kc, i + 1, next) {
                return Some(g);
            }
        }
    }
    None
}

/// H ∩ K with a chain for the result built from its known order.
pub fn intersection_order(h: &PermGroup, k: &PermGroup) -> BigUint {
    intersection(h, k).order()
}

/// Builds a chain for `gens` whose base starts with `prefix`, given the
/// group order.
pub fn rebase(degree: usize, gens: &[Perm], prefix: &[u32], order: BigUint, seed: u64) -> StabChain {
    let opts = ChainOptions { base_prefix: prefix.to_vec(), known_order: Some(order), seed };
    StabChain::build(degree, gens, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn transporter_examples() {
        let s3 = PermGroup::new(3, vec![p("(1,2)", 3), p("(1,2,3)", 3)]);
        let t = transporter(&s3, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(t.apply(0), 1);
        assert_eq!(t.apply(1), 0);
        let c3 = PermGroup::new(3, vec![p("(1,2,3)", 3)]);
        assert!(transporter(&c3, &[0, 1], &[1, 0]).is_none());
    }

    #[test]
    fn intersection_of_point_stabilizers_in_a6() {
        let a6 = PermGroup::new(6, vec![p("(1,2,3)", 6), p("(2,3,4,5,6)", 6)]);
        let h = a6.pointwise_stabilizer(&[0]);
        let k = a6.pointwise_stabilizer(&[1]);
        let i = intersection(&h, &k);
        assert_eq!(i.order(), BigUint::from(12u32));
        assert!(i.gens().iter().all(|g| g.apply(0) == 0 && g.apply(1) == 1));
    }
}
