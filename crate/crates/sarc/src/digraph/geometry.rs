//! Group actions on subspaces of a symplectic space: orbits of a single
//! subspace, swap certificates for pairs, and the flags of the symplectic
//! quadrangle W(3, q) under Sp4(q) with a duality.

use std::sync::Arc;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{classical_order, Family};
use crate::linalg::{
    pair_profile, sp_generators, symplectic_basis, vector_from_index, Field, FormedSpace, FqMatrix, PairProfile,
    Subspace,
};
use crate::permgroup::{induced_action, transporter, Perm, PermGroup, DEFAULT_INDEX_CAP};

/// A group of matrices acting on the orbit of one subspace.
#[derive(Clone, Debug)]
pub struct SubspaceAction {
    pub points: Vec<Subspace>,
    pub group: PermGroup,
    index: FxHashMap<Subspace, u32>,
}

impl SubspaceAction {
    pub fn new(gens: &[FqMatrix], start: &Subspace, cap: usize) -> Result<SubspaceAction> {
        let (points, perms) = induced_action(start.clone(), gens.len(), cap, |w, k| w.image(&gens[k]))?;
        let index = points.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        Ok(SubspaceAction { group: PermGroup::new(points.len(), perms), points, index })
    }

    pub fn index_of(&self, w: &Subspace) -> Option<u32> {
        self.index.get(w).copied()
    }
}

/// Unit vector of e_i (i from 1) in the standard basis e1, f1, e2, f2, ...
fn e(i: usize, dim: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[2 * (i - 1)] = 1;
    v
}

fn f(i: usize, dim: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[2 * i - 1] = 1;
    v
}

fn plus(a: Vec<u32>, b: Vec<u32>, k: &Field) -> Vec<u32> {
    a.iter().zip(&b).map(|(&x, &y)| k.add(x, y)).collect()
}

/// In the standard space of dimension 2n (n ≥ 6),
/// W1 = ⟨e1, f1, e4, f4, e5+f3, f5+e2, e6, f6, ..., en, fn⟩ and
/// W2 = ⟨e1, f1, e2, f2, e3, f3, e6, f6, ..., en, fn⟩: isometric
/// nondegenerate subspaces whose ordered pair cannot be reversed.
pub fn unswappable_pair(n: usize, field: &Arc<Field>) -> Result<(Arc<FormedSpace>, Subspace, Subspace)> {
    if n < 6 {
        return Err(Error::InvalidArgument(format!("needs n ≥ 6, got {n}")));
    }
    let d = 2 * n;
    let space = FormedSpace::standard_symplectic(n, field);
    let mut a = vec![e(1, d), f(1, d), e(4, d), f(4, d), plus(e(5, d), f(3, d), field), plus(f(5, d), e(2, d), field)];
    let mut b = vec![e(1, d), f(1, d), e(2, d), f(2, d), e(3, d), f(3, d)];
    for i in 6..=n {
        a.extend([e(i, d), f(i, d)]);
        b.extend([e(i, d), f(i, d)]);
    }
    let w1 = Subspace::span(&space, &a)?;
    let w2 = Subspace::span(&space, &b)?;
    Ok((space, w1, w2))
}

/// Generators of Sp(U^⊥) acting trivially on U, for nondegenerate U.
pub fn perp_isometry_gens(u: &Subspace) -> Result<Vec<FqMatrix>> {
    let space = u.space();
    let field = space.field();
    let uperp = u.perp()?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (x, y) in symplectic_basis(&uperp)? {
        rows.push(x);
        rows.push(y);
    }
    let m = rows.len() / 2;
    rows.extend(u.basis().row_vecs());
    let b = FqMatrix::from_rows(field, &rows)?;
    let b_inv = b.inverse().ok_or_else(|| Error::Precondition("U and its perp do not span".into()))?;
    let d = space.dim();
    let gens = sp_generators(m, field)
        .into_iter()
        .map(|g| {
            let mut full = FqMatrix::identity(field, d);
            for r in 0..2 * m {
                for c in 0..2 * m {
                    full.set(r, c, g.get(r, c));
                }
            }
            b_inv.mul(&full).mul(&b)
        })
        .collect::<Vec<_>>();
    debug_assert!(gens.iter().all(|g| space.preserves(g)));
    Ok(gens)
}

/// Whether some isometry maps (W1, W2) to (W2, W1), decided inside the
/// setwise stabiliser of U = W1 ∩ W2.
#[derive(Clone, Debug, Serialize)]
pub struct SwapCertificate {
    pub forward: PairProfile,
    pub backward: PairProfile,
    pub meet_dim: usize,
    /// Order of the group searched, Sp(U^⊥).
    pub group_order: String,
    /// Size of the orbit of W1 under that group.
    pub orbit_size: usize,
    pub w2_in_orbit: bool,
    /// Points moved by an element reversing the pair, if there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap_support: Option<usize>,
}

impl SwapCertificate {
    pub fn self_paired(&self) -> bool {
        self.swap_support.is_some()
    }
}

/// Any isometry swapping W1 and W2 fixes U = W1 ∩ W2, so when U is
/// nondegenerate it lies in Sp(U) × Sp(U^⊥). The first factor fixes both
/// subspaces, so the search runs in Sp(U^⊥) on the orbit of W1.
pub fn swap_certificate(w1: &Subspace, w2: &Subspace, cap: usize) -> Result<SwapCertificate> {
    let forward = pair_profile(w1, w2)?;
    let backward = pair_profile(w2, w1)?;
    let u = w1.intersect(w2)?;
    if !u.is_nondegenerate() {
        return Err(Error::Unsupported("W1 ∩ W2 is degenerate".into()));
    }
    let gens = perp_isometry_gens(&u)?;
    let mut act = SubspaceAction::new(&gens, w1, cap)?;
    // -1 on U^⊥ fixes every subspace containing U, and PSp is simple outside
    // the small cases, so the image is PSp(U^⊥) and its order is known
    let m = (u.space().dim() - u.dim()) as u32;
    let q = u.space().field().order();
    if !matches!((m, q), (2, 2) | (2, 3) | (4, 2)) {
        let order = classical_order(Family::PSp, m, q as u64)?.value;
        act.group = act.group.clone().with_order(order);
    }
    let i1 = act.index_of(w1).expect("start point");
    let i2 = act.index_of(w2);
    let swap = i2.and_then(|i2| transporter(&act.group, &[i1, i2], &[i2, i1]));
    Ok(SwapCertificate {
        forward,
        backward,
        meet_dim: u.dim(),
        group_order: act.group.order().to_string(),
        orbit_size: act.points.len(),
        w2_in_orbit: i2.is_some(),
        swap_support: swap.map(|p| p.support().len()),
    })
}

/// Flags (point, line) of W(3, q) with the group generated by Sp4(q) and a
/// duality, acting on flags.
#[derive(Clone, Debug)]
pub struct FlagAction {
    pub points: Vec<Subspace>,
    pub lines: Vec<Subspace>,
    /// (point index, line index) with the point on the line.
    pub flags: Vec<(u32, u32)>,
    /// Sp4(q) and the duality, on points followed by lines.
    pub vertex_gens: Vec<Perm>,
    pub duality: Perm,
    /// The same group on flags.
    pub group: PermGroup,
    /// Sp4(q) alone on flags.
    pub isometries: PermGroup,
}

/// Points, lines and flags of W(3, q) with a duality of the incidence graph
/// found by backtracking; q must be even.
pub fn symplectic_flags(q: u32) -> Result<FlagAction> {
    let field = Field::of_order(q)?;
    if field.characteristic() != 2 {
        return Err(Error::Unsupported("W(3, q) is self-dual only for even q".into()));
    }
    let space = FormedSpace::standard_symplectic(2, &field);
    let mut points: Vec<Subspace> = Vec::new();
    let mut point_index: FxHashMap<Subspace, u32> = FxHashMap::default();
    for idx in 1..(q as u64).pow(4) {
        let w = Subspace::span(&space, &[vector_from_index(idx, q, 4)])?;
        if !point_index.contains_key(&w) {
            point_index.insert(w.clone(), points.len() as u32);
            points.push(w);
        }
    }
    let mut lines: Vec<Subspace> = Vec::new();
    let mut line_index: FxHashMap<Subspace, u32> = FxHashMap::default();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let (x, y) = (a.basis().row(0), b.basis().row(0));
            if space.pair(x, y) == 0 {
                let w = a.sum(b)?;
                if !line_index.contains_key(&w) {
                    line_index.insert(w.clone(), lines.len() as u32);
                    lines.push(w);
                }
            }
        }
    }
    let np = points.len();
    let mut flags = Vec::new();
    let mut adj = vec![Vec::new(); np + lines.len()];
    for (j, l) in lines.iter().enumerate() {
        for (i, p) in points.iter().enumerate() {
            if l.contains(p.basis().row(0)) {
                flags.push((i as u32, j as u32));
                adj[i].push((np + j) as u32);
                adj[np + j].push(i as u32);
            }
        }
    }
    let mut vertex_gens: Vec<Perm> = sp_generators(2, &field)
        .iter()
        .map(|g| {
            let mut imgs: Vec<u32> = points.iter().map(|p| point_index[&p.image(g)]).collect();
            imgs.extend(lines.iter().map(|l| np as u32 + line_index[&l.image(g)]));
            Perm::from_images_unchecked(imgs)
        })
        .collect();
    let duality = swap_parts(&adj, np)
        .ok_or_else(|| Error::Precondition("incidence graph has no duality".into()))?;
    let on_flags = |x: &Perm| -> Perm {
        let flag_index: FxHashMap<(u32, u32), u32> =
            flags.iter().enumerate().map(|(k, &f)| (f, k as u32)).collect();
        let imgs = flags
            .iter()
            .map(|&(p, l)| {
                let (a, b) = (x.apply(p), x.apply(np as u32 + l));
                let key = if a < b { (a, b - np as u32) } else { (b, a - np as u32) };
                flag_index[&key]
            })
            .collect();
        Perm::from_images_unchecked(imgs)
    };
    let iso_gens: Vec<Perm> = vertex_gens.iter().map(on_flags).collect();
    let isometries = PermGroup::new(flags.len(), iso_gens.clone());
    let mut all = iso_gens;
    all.push(on_flags(&duality));
    vertex_gens.push(duality.clone());
    Ok(FlagAction {
        points,
        lines,
        flags: flags.clone(),
        vertex_gens,
        duality,
        group: PermGroup::new(flags.len(), all),
        isometries,
    })
}

/// An automorphism of a bipartite graph (parts 0..np and np..) mapping
/// vertex 0 into the second part, by backtracking along a BFS order.
fn swap_parts(adj: &[Vec<u32>], np: usize) -> Option<Perm> {
    let n = adj.len();
    if n != 2 * np {
        return None;
    }
    let mut order = vec![0u32];
    let mut parent = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return None;
    }
    let is_adj = |a: u32, b: u32| adj[a as usize].contains(&b);
    let mut img = vec![u32::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        k: usize,
        order: &[u32],
        parent: &[u32],
        img: &mut [u32],
        used: &mut [bool],
        adj: &[Vec<u32>],
        is_adj: &dyn Fn(u32, u32) -> bool,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let cands: Vec<u32> = adj[img[parent[v as usize] as usize] as usize].clone();
        for c in cands {
            if used[c as usize] {
                continue;
            }
            let ok = order[..k].iter().all(|&u| is_adj(u, v) == is_adj(img[u as usize], c));
            if ok {
                img[v as usize] = c;
                used[c as usize] = true;
                if extend(k + 1, order, parent, img, used, adj, is_adj) {
                    return true;
                }
                used[c as usize] = false;
                img[v as usize] = u32::MAX;
            }
        }
        false
    }

    for root in np..n {
        img[0] = root as u32;
        used[root] = true;
        if extend(1, &order, &parent, &mut img, &mut used, adj, &is_adj) {
            return Some(Perm::from_images_unchecked(img));
        }
        used[root] = false;
        img.iter_mut().for_each(|x| *x = u32::MAX);
        used.iter_mut().for_each(|x| *x = false);
    }
    None
}

/// Default cap on orbit sizes for the swap search.
pub const SWAP_ORBIT_CAP: usize = DEFAULT_INDEX_CAP;

/// |Sp4(q)|·2, the order of the flag group when the duality is outer.
pub fn flag_group_order(q: u32) -> BigUint {
    let q = BigUint::from(q);
    let q2 = &q * &q;
    let q4 = &q2 * &q2;
    &q4 * (&q2 - 1u32) * (&q4 - 1u32) * 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_profiles_differ() {
        let field = Field::prime(2).unwrap();
        let (_, w1, w2) = unswappable_pair(6, &field).unwrap();
        assert_eq!((w1.dim(), w2.dim()), (8, 8));
        assert!(w1.is_nondegenerate() && w2.is_nondegenerate());
        let p = pair_profile(&w1, &w2).unwrap();
        assert_eq!((p.first_perp_second.dim, p.first_perp_second.rank), (2, 2));
        assert_eq!((p.second_perp_first.dim, p.second_perp_first.rank), (2, 0));
    }

    #[test]
    fn perp_gens_fix_u_pointwise() {
        let field = Field::prime(3).unwrap();
        let space = FormedSpace::standard_symplectic(3, &field);
        let u = Subspace::span(&space, &[e(1, 6), f(1, 6)]).unwrap();
        for g in perp_isometry_gens(&u).unwrap() {
            assert!(space.preserves(&g));
            for v in u.basis().row_vecs() {
                assert_eq!(g.apply(&v), v);
            }
        }
    }

    #[test]
    fn flags_of_w32() {
        let fa = symplectic_flags(2).unwrap();
        assert_eq!((fa.points.len(), fa.lines.len(), fa.flags.len()), (15, 15, 45));
        assert_eq!(fa.isometries.order(), BigUint::from(720u32));
        assert_eq!(fa.group.order(), flag_group_order(2));
    }
}
