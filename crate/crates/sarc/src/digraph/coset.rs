//! Cos(G, H, g): vertices are the right cosets of H, with Hx → Hy exactly
//! when yx⁻¹ ∈ HgH.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{CosetAction, Perm, PermGroup};
use crate::subgroups::{all_classes, ElementGroup};

/// Default bound on the number of s-arcs enumerated by brute force.
pub const DEFAULT_ARC_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct CosetDigraph {
    group: PermGroup,
    stabiliser: PermGroup,
    connector: Perm,
    action: CosetAction,
    image: PermGroup,
    out: Vec<Vec<u32>>,
}

/// One level of the stabiliser criterion along the base arc, with
/// `tail` = |G_{v1..vi}|, `whole` = |G_{v0..vi}|, `next` = |G_{v1..v(i+1)}|
/// and `whole_next` = |G_{v0..v(i+1)}|.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionLevel {
    pub i: usize,
    pub tail: String,
    pub whole: String,
    pub next: String,
    pub whole_next: String,
    /// G_{v1..vi} = G_{v0..vi}·G_{v1..v(i+1)}.
    pub holds: bool,
}

/// The base s-arc and the criterion evaluated at each level.
#[derive(Clone, Debug, Serialize)]
pub struct ArcChain {
    pub arc: Vec<u32>,
    pub levels: Vec<CriterionLevel>,
}

impl CosetDigraph {
    /// Builds Cos(G, H, g). `cap` bounds the index |G:H|.
    pub fn new(g: &PermGroup, h: &PermGroup, conn: &Perm, cap: usize) -> Result<CosetDigraph> {
        if conn.degree() != g.degree() || !g.contains(conn) {
            return Err(Error::InvalidArgument("connecting element is not in G".into()));
        }
        if h.contains(conn) {
            return Err(Error::Loop(format!("{conn} ∈ H")));
        }
        let action = CosetAction::new(g, h, cap)?;
        let image = action.image_group(g.seed());
        let h_images: Vec<Perm> = h.gens().iter().map(|x| action.image_of(x)).collect();
        let v1 = action.point_of(conn);
        let mut first = orbit_under(&h_images, v1, action.degree());
        if first.contains(&action.point_of(&conn.inv())) {
            return Err(Error::NotAntisymmetric(format!("the inverse of {conn} lies in HgH")));
        }
        first.sort_unstable();

        // out(Hx·s) = out(Hx)·s, spread from the base vertex
        let n = action.degree();
        let mut out: Vec<Option<Vec<u32>>> = vec![None; n];
        out[0] = Some(first);
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            for s in action.gen_images() {
                let w = s.apply(v) as usize;
                if out[w].is_none() {
                    let mut list: Vec<u32> = out[v as usize].as_ref().unwrap().iter().map(|&x| s.apply(x)).collect();
                    list.sort_unstable();
                    out[w] = Some(list);
                    queue.push_back(w as u32);
                }
            }
        }
        let out = out.into_iter().map(|o| o.expect("G is transitive on cosets")).collect();
        Ok(CosetDigraph { group: g.clone(), stabiliser: h.clone(), connector: conn.clone(), action, image, out })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn stabiliser(&self) -> &PermGroup {
        &self.stabiliser
    }

    pub fn connector(&self) -> &Perm {
        &self.connector
    }

    pub fn action(&self) -> &CosetAction {
        &self.action
    }

    /// The permutation group induced on the vertices.
    pub fn image_group(&self) -> &PermGroup {
        &self.image
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// Out-valency |H : H ∩ H^g|.
    pub fn valency(&self) -> usize {
        self.out[0].len()
    }

    pub fn out_neighbours(&self, v: u32) -> &[u32] {
        &self.out[v as usize]
    }

    pub fn is_arc(&self, x: u32, y: u32) -> bool {
        self.out[x as usize].binary_search(&y).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x as u32, y)))
    }

    /// H → Hg.
    pub fn base_arc(&self) -> (u32, u32) {
        (0, self.action.point_of(&self.connector))
    }

    /// Order of the vertex stabiliser in the induced group.
    pub fn vertex_stabiliser_order(&self) -> BigUint {
        self.image.order() / BigUint::from(self.vertex_count())
    }

    /// H → Hg followed by the first out-neighbour at each later step.
    pub fn base_s_arc(&self, s: usize) -> Vec<u32> {
        let (u, v) = self.base_arc();
        let mut arc = vec![u, v];
        arc.truncate(s + 1);
        while arc.len() < s + 1 {
            let last = *arc.last().unwrap();
            arc.push(self.out[last as usize][0]);
        }
        arc
    }

    /// Order of the pointwise stabiliser of `points` in the induced group.
    fn fixer_order(&self, points: &[u32]) -> BigUint {
        let mut prefix: Vec<u32> = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let chain = self.image.chain_with_base(&prefix);
        if prefix.len() >= chain.levels.len() {
            BigUint::one()
        } else {
            chain.order_from(prefix.len())
        }
    }

    /// The criterion at levels 1..cap-1 along the base cap-arc.
    pub fn arc_chain(&self, cap: usize) -> ArcChain {
        let arc = self.base_s_arc(cap);
        let levels = (1..cap)
            .map(|i| {
                let tail = self.fixer_order(&arc[1..=i]);
                let whole = self.fixer_order(&arc[..=i]);
                let next = self.fixer_order(&arc[1..=i + 1]);
                let whole_next = self.fixer_order(&arc[..=i + 1]);
                // |G_{v0..vi} G_{v1..v(i+1)}| = |G_{v0..vi}||G_{v1..v(i+1)}| / |G_{v0..v(i+1)}|,
                // and the product lies inside G_{v1..vi}
                let holds = &tail * &whole_next == &whole * &next;
                CriterionLevel {
                    i,
                    tail: tail.to_string(),
                    whole: whole.to_string(),
                    next: next.to_string(),
                    whole_next: whole_next.to_string(),
                    holds,
                }
            })
            .collect();
        ArcChain { arc, levels }
    }

    /// Largest s ≤ cap such that the stabiliser factorisation holds at every
    /// level below s.
    pub fn max_s_by_criterion(&self, cap: usize) -> usize {
        if cap == 0 {
            return 0;
        }
        let chain = self.arc_chain(cap);
        chain.levels.iter().find(|l| !l.holds).map_or(cap, |l| l.i)
    }

    /// Number of s-arcs, by depth-first enumeration.
    pub fn count_s_arcs(&self, s: usize, arc_cap: u64) -> Result<u64> {
        let mut total = 0u64;
        let mut stack: Vec<(u32, usize)> = (0..self.vertex_count() as u32).map(|v| (v, 0)).collect();
        while let Some((v, depth)) = stack.pop() {
            if depth == s {
                total += 1;
                if total > arc_cap {
                    return Err(Error::ResourceLimit(format!("more than {arc_cap} {s}-arcs")));
                }
                continue;
            }
            stack.extend(self.out[v as usize].iter().map(|&w| (w, depth + 1)));
        }
        Ok(total)
    }

    /// Size of the orbit of the base s-arc, by breadth-first search on tuples.
    pub fn base_s_arc_orbit(&self, s: usize, arc_cap: u64) -> Result<u64> {
        self.s_arc_orbit_under(self.image.gens(), s, arc_cap)
    }

    /// As `base_s_arc_orbit` for the group generated by `gens`, given as
    /// permutations of the vertices.
    pub fn s_arc_orbit_under(&self, gens: &[Perm], s: usize, arc_cap: u64) -> Result<u64> {
        let start = self.base_s_arc(s);
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for x in gens {
                let img: Vec<u32> = t.iter().map(|&p| x.apply(p)).collect();
                if seen.insert(img.clone()) {
                    if seen.len() as u64 > arc_cap {
                        return Err(Error::ResourceLimit(format!("s-arc orbit exceeds {arc_cap}")));
                    }
                    queue.push_back(img);
                }
            }
        }
        Ok(seen.len() as u64)
    }

    /// Largest s ≤ cap for which the base s-arc's orbit is every s-arc.
    pub fn max_s_by_orbits(&self, cap: usize, arc_cap: u64) -> Result<usize> {
        self.max_s_under(self.image.gens(), cap, arc_cap)
    }

    /// `max_s_by_orbits` for a group of automorphisms given by generators
    /// on the vertices; 0 when that group is not transitive on arcs.
    pub fn max_s_under(&self, gens: &[Perm], cap: usize, arc_cap: u64) -> Result<usize> {
        for s in 1..=cap {
            let total = self.count_s_arcs(s, arc_cap)?;
            if self.s_arc_orbit_under(gens, s, arc_cap)? != total {
                return Ok(s - 1);
            }
        }
        Ok(cap)
    }

    /// Whether ⟨H, g⟩ = G, i.e. the digraph is connected.
    pub fn is_connected(&self) -> bool {
        self.stabiliser.join(std::slice::from_ref(&self.connector)).order() == self.group.order()
    }

    /// Orders of the proper nontrivial normal subgroups of G_v (in the
    /// induced group) normalised by the connecting element. For connected
    /// digraphs this is empty. Needs |G_v| ≤ `cap`.
    pub fn normalised_normal_subgroups(&self, cap: u64) -> Result<Vec<u64>> {
        let gv = self.image.pointwise_stabilizer(&[0]);
        let eg = ElementGroup::new(&gv, cap)?;
        let g = self.action.image_of(&self.connector);
        let n = eg.order();
        let mut out = Vec::new();
        for c in all_classes(&eg) {
            let o = c.order();
            if c.class_size != 1 || o == 1 || o == n {
                continue;
            }
            let k = eg.to_perm_group(&c.rep);
            if k.conjugate(&g).equals(&k) {
                out.push(o);
            }
        }
        Ok(out)
    }
}

fn orbit_under(gens: &[Perm], x: u32, n: usize) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[x as usize] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let y = g.apply(orbit[i]);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};

    pub(crate) fn frobenius21() -> CosetDigraph {
        let g = construct(&GroupSpec::Metacyclic { n: 7, r: 2, m: 3 }).unwrap();
        let h = g.subgroup(vec![g.gens()[1].clone()]);
        CosetDigraph::new(&g, &h, &g.gens()[0], 100).unwrap()
    }

    #[test]
    fn directed_five_cycle() {
        let g = construct(&GroupSpec::Cyc(5)).unwrap();
        let d = CosetDigraph::new(&g, &PermGroup::trivial(5), &g.gens()[0], 100).unwrap();
        assert_eq!(d.vertex_count(), 5);
        assert_eq!(d.valency(), 1);
        assert_eq!(d.max_s_by_criterion(10), 10);
        assert_eq!(d.max_s_by_orbits(4, DEFAULT_ARC_CAP).unwrap(), 4);
        assert_eq!(d.count_s_arcs(3, DEFAULT_ARC_CAP).unwrap(), 5);
    }

    #[test]
    fn frobenius_tournament() {
        let d = frobenius21();
        assert_eq!((d.vertex_count(), d.valency()), (7, 3));
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    assert!(d.is_arc(x, y) ^ d.is_arc(y, x));
                }
            }
        }
        assert_eq!(d.max_s_by_criterion(5), 1);
        assert_eq!(d.count_s_arcs(2, DEFAULT_ARC_CAP).unwrap(), 63);
        assert_eq!(d.base_s_arc_orbit(2, DEFAULT_ARC_CAP).unwrap(), 21);
        assert_eq!(d.max_s_by_orbits(3, DEFAULT_ARC_CAP).unwrap(), 1);
    }

    #[test]
    fn involution_gives_a_graph() {
        let g = construct(&GroupSpec::Sym(3)).unwrap();
        let t = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let r = CosetDigraph::new(&g, &PermGroup::trivial(3), &t, 100);
        assert!(matches!(r, Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn element_of_h_is_a_loop() {
        let g = construct(&GroupSpec::Sym(3)).unwrap();
        let t = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let h = g.subgroup(vec![t.clone()]);
        assert!(matches!(CosetDigraph::new(&g, &h, &t, 100), Err(Error::Loop(_))));
    }

    #[test]
    fn arc_cap_is_enforced() {
        let d = frobenius21();
        assert!(matches!(d.count_s_arcs(4, 100), Err(Error::ResourceLimit(_))));
    }
}
