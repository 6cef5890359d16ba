use std::sync::Arc;

use num_bigint::BigUint;

use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::linalg::{normalize_projective, sp_generators, vector_from_index, vector_index, Field, FormedSpace, FqMatrix};
use crate::permgroup::{Perm, PermGroup, WreathInfo, DEFAULT_SEED};

pub const DEFAULT_DEGREE_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub degree_cap: usize,
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> BuildOptions {
        BuildOptions { degree_cap: DEFAULT_DEGREE_CAP, seed: DEFAULT_SEED }
    }
}

/// Degree of the permutation representation `construct` would build.
pub fn degree_of(spec: &GroupSpec) -> Result<u64> {
    let qpow = |q: u32, d: u32| (q as u64).checked_pow(d).ok_or_else(|| Error::ResourceLimit("degree overflow".into()));
    Ok(match spec {
        GroupSpec::Sym(n) | GroupSpec::Alt(n) | GroupSpec::Cyc(n) | GroupSpec::Dih(n) => *n as u64,
        GroupSpec::Metacyclic { n, .. } => *n as u64,
        GroupSpec::Sp { dim, q } | GroupSpec::GOMinus { dim, q } => qpow(*q, *dim)? - 1,
        GroupSpec::PSp { dim, q } => (qpow(*q, *dim)? - 1) / (*q as u64 - 1).max(1),
        GroupSpec::PSL2(q) | GroupSpec::PGL2(q) => *q as u64 + 1,
        GroupSpec::DirectProduct(parts) => parts.iter().map(degree_of).sum::<Result<u64>>()?,
        GroupSpec::Wreath(a, k) => degree_of(a)? * *k as u64,
    })
}

pub fn construct(spec: &GroupSpec) -> Result<PermGroup> {
    construct_with(spec, &BuildOptions::default())
}

pub fn construct_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<PermGroup> {
    let deg = degree_of(spec)?;
    if deg > opts.degree_cap as u64 {
        return Err(Error::ResourceLimit(format!("degree {deg} exceeds cap {}", opts.degree_cap)));
    }
    Ok(build(spec, opts)?.with_seed(opts.seed))
}

fn cycle(n: usize, pts: Vec<u32>) -> Perm {
    if pts.len() < 2 {
        return Perm::identity(n);
    }
    Perm::from_cycles(n, &[pts]).expect("valid cycle")
}

fn build(spec: &GroupSpec, opts: &BuildOptions) -> Result<PermGroup> {
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    match spec {
        GroupSpec::Sym(n) => {
            let n = *n as usize;
            if n == 0 {
                return bad("S(0) is empty".into());
            }
            if n == 1 {
                return Ok(PermGroup::trivial(1));
            }
            Ok(PermGroup::new(n, vec![cycle(n, vec![0, 1]), cycle(n, (0..n as u32).collect())]))
        }
        GroupSpec::Alt(n) => {
            let n = *n as usize;
            if n == 0 {
                return bad("A(0) is empty".into());
            }
            if n < 3 {
                return Ok(PermGroup::trivial(n));
            }
            let long: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
            Ok(PermGroup::new(n, vec![cycle(n, vec![0, 1, 2]), cycle(n, long)]))
        }
        GroupSpec::Cyc(n) => {
            let n = *n as usize;
            if n == 0 {
                return bad("C(0) is empty".into());
            }
            Ok(PermGroup::new(n, vec![cycle(n, (0..n as u32).collect())]))
        }
        GroupSpec::Dih(n) => {
            let n = *n as usize;
            if n < 3 {
                return bad(format!("D({n}) needs n ≥ 3"));
            }
            let refl = Perm::from_images((0..n as u32).map(|x| (n as u32 - x) % n as u32).collect())?;
            Ok(PermGroup::new(n, vec![cycle(n, (0..n as u32).collect()), refl]))
        }
        GroupSpec::Metacyclic { n, r, m } => {
            let (n, r, m) = (*n as u64, *r as u64, *m as u64);
            if n < 2 || m == 0 {
                return bad("MC needs n ≥ 2 and m ≥ 1".into());
            }
            if num_integer::gcd(r, n) != 1 {
                return bad(format!("MC: {r} is not a unit mod {n}"));
            }
            let mut rm = 1u64;
            for _ in 0..m {
                rm = rm * r % n;
            }
            if rm != 1 {
                return bad(format!("MC: {r}^{m} is not 1 mod {n}"));
            }
            let nn = n as usize;
            let shift = cycle(nn, (0..n as u32).collect());
            let mult = Perm::from_images((0..n).map(|x| (x * r % n) as u32).collect())?;
            Ok(PermGroup::new(nn, vec![shift, mult]))
        }
        GroupSpec::Sp { dim, q } => {
            let (field, gens) = sp_matrix_gens(*dim, *q)?;
            matrix_action(&field, *dim as usize, &gens, false, opts.degree_cap)
        }
        GroupSpec::PSp { dim, q } => {
            let (field, gens) = sp_matrix_gens(*dim, *q)?;
            matrix_action(&field, *dim as usize, &gens, true, opts.degree_cap)
        }
        GroupSpec::GOMinus { dim, q } => {
            let (field, _, gens) = go_minus_matrix_gens(*dim, *q, opts.seed)?;
            matrix_action(&field, *dim as usize, &gens, false, opts.degree_cap)
        }
        GroupSpec::PSL2(q) | GroupSpec::PGL2(q) => {
            let field = Field::of_order(*q)?;
            let mut gens = sp_generators(1, &field);
            if matches!(spec, GroupSpec::PGL2(_)) && *q > 2 {
                let mut d = FqMatrix::identity(&field, 2);
                d.set(0, 0, field.primitive_element());
                gens.push(d);
            }
            matrix_action(&field, 2, &gens, true, opts.degree_cap)
        }
        GroupSpec::DirectProduct(parts) => {
            let groups = parts.iter().map(|p| build(p, opts)).collect::<Result<Vec<_>>>()?;
            let n: usize = groups.iter().map(|g| g.degree()).sum();
            let mut gens = Vec::new();
            let mut off = 0;
            for g in &groups {
                for x in g.gens() {
                    gens.push(x.shifted(off, n));
                }
                off += g.degree();
            }
            Ok(PermGroup::new(n, gens))
        }
        GroupSpec::Wreath(a, k) => {
            let k = *k as usize;
            if k == 0 {
                return bad("wreath needs k ≥ 1".into());
            }
            let comp = build(a, opts)?;
            let d = comp.degree();
            Ok(wreath_of(&comp, k).with_wreath(WreathInfo {
                component_degree: d,
                blocks: k,
                component_gens: comp.gens().to_vec(),
            }))
        }
    }
}

/// A wr S_k on k·deg(A) points, blocks of consecutive points.
fn wreath_of(comp: &PermGroup, k: usize) -> PermGroup {
    let d = comp.degree();
    let n = d * k;
    let mut gens: Vec<Perm> = comp.gens().iter().map(|g| g.shifted(0, n)).collect();
    let block_perm = |sigma: &dyn Fn(usize) -> usize| {
        let imgs: Vec<u32> = (0..n).map(|x| (sigma(x / d) * d + x % d) as u32).collect();
        Perm::from_images_unchecked(imgs)
    };
    if k >= 2 {
        gens.push(block_perm(&|b| match b {
            0 => 1,
            1 => 0,
            other => other,
        }));
    }
    if k >= 3 {
        gens.push(block_perm(&|b| (b + 1) % k));
    }
    PermGroup::new(n, gens)
}

/// Base group ∏A_i (block-pointwise kernel) and the block partition of a
/// group built as a wreath product.
pub fn base_and_top(w: &PermGroup) -> Result<(PermGroup, Vec<Vec<u32>>)> {
    let info = w.wreath().ok_or_else(|| Error::InvalidArgument("group has no wreath structure".into()))?;
    let n = w.degree();
    let d = info.component_degree;
    let mut gens = Vec::new();
    for b in 0..info.blocks {
        for g in &info.component_gens {
            gens.push(g.shifted(b * d, n));
        }
    }
    Ok((w.subgroup(gens), info.partition()))
}

pub fn sp_matrix_gens(dim: u32, q: u32) -> Result<(Arc<Field>, Vec<FqMatrix>)> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::InvalidArgument(format!("symplectic dimension {dim} is not even")));
    }
    let field = Field::of_order(q)?;
    let gens = sp_generators(dim as usize / 2, &field);
    Ok((field, gens))
}

/// Diagonal symmetric form of minus type in dimension `dim`, q odd.
pub fn go_minus_form(dim: u32, q: u32) -> Result<Arc<FormedSpace>> {
    if dim < 2 || dim % 2 == 1 {
        return Err(Error::InvalidArgument(format!("GO- needs even dimension ≥ 2, got {dim}")));
    }
    if q % 2 == 0 {
        return Err(Error::Unsupported("GO- is only built for odd q".into()));
    }
    let field = Field::of_order(q)?;
    let m = dim / 2;
    // type is minus iff (-1)^m · det is a nonsquare
    let sign = if m % 2 == 0 { 1 } else { field.neg(1) };
    let d = (1..q).find(|&d| !field.is_square(field.mul(sign, d))).expect("nonsquares exist for odd q");
    let mut diag = vec![1; dim as usize];
    diag[dim as usize - 1] = d;
    FormedSpace::diagonal(&field, &diag)
}

/// Reflection in a nonsingular vector v of a symmetric form.
pub fn reflection(space: &FormedSpace, v: &[u32]) -> FqMatrix {
    let k = space.field();
    let n = space.dim();
    let bvv = space.pair(v, v);
    let c = k.div(k.from_int(2), bvv);
    let gv = space.gram().apply(v);
    let mut m = FqMatrix::identity(k, n);
    for (i, &bi) in gv.iter().enumerate() {
        let coef = k.neg(k.mul(c, bi));
        if coef == 0 {
            continue;
        }
        for (j, &vj) in v.iter().enumerate() {
            let x = m.get(i, j);
            m.set(i, j, k.add(x, k.mul(coef, vj)));
        }
    }
    m
}

/// Generators of GO-(dim, q): reflections added greedily until the group
/// reaches the formula order.
pub fn go_minus_matrix_gens(dim: u32, q: u32, seed: u64) -> Result<(Arc<Field>, Arc<FormedSpace>, Vec<FqMatrix>)> {
    let space = go_minus_form(dim, q)?;
    let field = space.field().clone();
    let target = super::orders::classical_order(super::orders::Family::GO(-1), dim, q as u64)?.value;
    let n = dim as usize;
    let total = (q as u64).pow(dim);
    let mut gens: Vec<FqMatrix> = Vec::new();
    let mut group: Option<PermGroup> = None;
    for idx in 1..total {
        let mut v = vector_from_index(idx, q, n);
        normalize_projective(&field, &mut v);
        if vector_index(&v, q) != idx || space.pair(&v, &v) == 0 {
            continue;
        }
        let r = reflection(&space, &v);
        let perm = matrix_perm(&field, n, &r, false);
        if let Some(g) = &group {
            if g.contains(&perm) {
                continue;
            }
        }
        gens.push(r);
        let pg = matrix_action(&field, n, &gens, false, usize::MAX)?.with_seed(seed);
        let done = pg.order() == target;
        group = Some(pg);
        if done {
            return Ok((field, space, gens));
        }
    }
    Err(Error::Precondition(format!("reflections did not reach |GO-({dim},{q})|")))
}

/// A matrix g with g · gram · gᵀ = λ · gram, found by building an
/// orthogonal basis with prescribed norms. Only for diagonal symmetric
/// forms in odd characteristic.
pub fn similitude(space: &FormedSpace, lambda: u32) -> Result<FqMatrix> {
    let k = space.field();
    let n = space.dim();
    let q = k.order();
    let targets: Vec<u32> = (0..n).map(|i| k.mul(lambda, space.gram().get(i, i))).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    fn search(
        space: &FormedSpace,
        targets: &[u32],
        rows: &mut Vec<Vec<u32>>,
        q: u32,
    ) -> bool {
        let i = rows.len();
        if i == targets.len() {
            return true;
        }
        let n = space.dim();
        for idx in 1..(q as u64).pow(n as u32) {
            let v = vector_from_index(idx, q, n);
            if space.pair(&v, &v) != targets[i] {
                continue;
            }
            if rows.iter().any(|r| space.pair(r, &v) != 0) {
                continue;
            }
            rows.push(v);
            if search(space, targets, rows, q) {
                return true;
            }
            rows.pop();
        }
        false
    }
    if !search(space, &targets, &mut rows, q) {
        return Err(Error::Precondition("no similitude with that multiplier".into()));
    }
    let m = FqMatrix::from_rows(k, &rows)?;
    let lam_gram = {
        let mut g = space.gram().clone();
        for i in 0..n {
            for j in 0..n {
                let x = g.get(i, j);
                g.set(i, j, k.mul(lambda, x));
            }
        }
        g
    };
    debug_assert_eq!(m.mul(space.gram()).mul(&m.transpose()), lam_gram);
    Ok(m)
}

/// Permutation induced by a matrix on nonzero vectors (index - 1) or on
/// normalised projective points.
pub fn matrix_perm(field: &Field, dim: usize, g: &FqMatrix, projective: bool) -> Perm {
    let q = field.order();
    let pts = point_list(field, dim, projective);
    let lookup = point_lookup(&pts, q, dim);
    let imgs: Vec<u32> = pts
        .iter()
        .map(|&idx| {
            let v = vector_from_index(idx, q, dim);
            let mut w = g.apply(&v);
            if projective {
                normalize_projective(field, &mut w);
            }
            lookup[vector_index(&w, q) as usize]
        })
        .collect();
    Perm::from_images_unchecked(imgs)
}

/// Vector indices of the points: all nonzero vectors, or the normalised
/// representatives of projective points.
pub fn point_list(field: &Field, dim: usize, projective: bool) -> Vec<u64> {
    let q = field.order();
    let total = (q as u64).pow(dim as u32);
    (1..total)
        .filter(|&idx| {
            if !projective {
                return true;
            }
            let v = vector_from_index(idx, q, dim);
            v.iter().find(|&&x| x != 0) == Some(&1)
        })
        .collect()
}

fn point_lookup(pts: &[u64], q: u32, dim: usize) -> Vec<u32> {
    let total = (q as u64).pow(dim as u32) as usize;
    let mut lookup = vec![u32::MAX; total];
    for (i, &idx) in pts.iter().enumerate() {
        lookup[idx as usize] = i as u32;
    }
    lookup
}

/// Permutation group induced by matrices on vectors or projective points.
pub fn matrix_action(field: &Arc<Field>, dim: usize, gens: &[FqMatrix], projective: bool, cap: usize) -> Result<PermGroup> {
    let q = field.order();
    if (q as u64).checked_pow(dim as u32).map_or(true, |t| t > 1 << 26) {
        return Err(Error::ResourceLimit(format!("vector space of dimension {dim} over GF({q}) is too large")));
    }
    let pts = point_list(field, dim, projective);
    if pts.len() > cap {
        return Err(Error::ResourceLimit(format!("degree {} exceeds cap {cap}", pts.len())));
    }
    let lookup = point_lookup(&pts, q, dim);
    let perms = gens
        .iter()
        .map(|g| {
            let imgs: Vec<u32> = pts
                .iter()
                .map(|&idx| {
                    let v = vector_from_index(idx, q, dim);
                    let mut w = g.apply(&v);
                    if projective {
                        normalize_projective(field, &mut w);
                    }
                    lookup[vector_index(&w, q) as usize]
                })
                .collect();
            Perm::from_images(imgs).map_err(|_| Error::InvalidArgument("matrix is singular".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PermGroup::new(pts.len(), perms))
}

/// Image of ⟨a ⊗ 1, 1 ⊗ b⟩ on the projective points of the tensor space.
pub fn tensor_embed(field: &Arc<Field>, a: &[FqMatrix], b: &[FqMatrix], cap: usize) -> Result<PermGroup> {
    let da = a.first().map(|m| m.rows()).ok_or_else(|| Error::InvalidArgument("no generators for A".into()))?;
    let db = b.first().map(|m| m.rows()).ok_or_else(|| Error::InvalidArgument("no generators for B".into()))?;
    let ia = FqMatrix::identity(field, da);
    let ib = FqMatrix::identity(field, db);
    let mut gens: Vec<FqMatrix> = a.iter().map(|g| g.kron(&ib)).collect();
    gens.extend(b.iter().map(|h| ia.kron(h)));
    matrix_action(field, da * db, &gens, true, cap)
}

pub const C4_GROUP_ORDER: u64 = 17280;

/// (PSp2(3) × PGO4-(3)).2 inside PSp8(3): the tensor image of Sp2(3) and
/// GO4-(3) with the product of two similitudes of multiplier -1, acting
/// on the 3280 projective points of GF(3)^8. Also returns the 8-dim
/// matrix generators.
pub fn c4_tensor_group(seed: u64) -> Result<(PermGroup, Vec<FqMatrix>)> {
    let (field, sp) = sp_matrix_gens(2, 3)?;
    let (_, oform, go) = go_minus_matrix_gens(4, 3, seed)?;
    let minus = field.neg(1);
    let sim_sp = FqMatrix::from_rows(&field, &[vec![1, 0], vec![0, minus]])?;
    let sim_go = similitude(&oform, minus)?;
    let ia = FqMatrix::identity(&field, 2);
    let ib = FqMatrix::identity(&field, 4);
    let mut gens: Vec<FqMatrix> = sp.iter().map(|g| g.kron(&ib)).collect();
    gens.extend(go.iter().map(|h| ia.kron(h)));
    gens.push(sim_sp.kron(&sim_go));
    let g = matrix_action(&field, 8, &gens, true, usize::MAX)?.with_seed(seed);
    let order = g.order();
    if order != BigUint::from(C4_GROUP_ORDER) {
        return Err(Error::Precondition(format!("tensor group has order {order}, expected {C4_GROUP_ORDER}")));
    }
    Ok((g, gens))
}

/// ⟨PSL2(q), x ↦ x^(p^e)⟩ on the q + 1 points of the projective line,
/// where q = p^f; the field automorphism has order f / gcd(e, f).
pub fn psl2_with_field_automorphism(q: u32, e: u32) -> Result<PermGroup> {
    let field = Field::of_order(q)?;
    let g = build(&GroupSpec::PSL2(q), &BuildOptions::default())?;
    let pts = point_list(&field, 2, true);
    let lookup = point_lookup(&pts, q, 2);
    let power = (field.characteristic() as u64).pow(e % field.degree());
    let imgs: Vec<u32> = pts
        .iter()
        .map(|&idx| {
            let mut v: Vec<u32> = vector_from_index(idx, q, 2).iter().map(|&x| field.pow(x, power)).collect();
            normalize_projective(&field, &mut v);
            lookup[vector_index(&v, q) as usize]
        })
        .collect();
    let mut gens = g.gens().to_vec();
    gens.push(Perm::from_images_unchecked(imgs));
    Ok(PermGroup::new(g.degree(), gens))
}

/// C_m² : D₈ acting affinely on the m² points of (Z/m)², m ≥ 3. Returns the
/// group with generators [x, y, b, c], where x, y translate the two
/// coordinates and (x,y)^b = (y⁻¹,x), (x,y)^c = (y,x).
pub fn square_dihedral_extension(m: u32) -> Result<PermGroup> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("C_m^2:D8 needs m ≥ 3, got {m}")));
    }
    let n = (m * m) as usize;
    let map = |f: &dyn Fn(u32, u32) -> (u32, u32)| {
        let imgs = (0..n as u32)
            .map(|p| {
                let (i, j) = f(p / m, p % m);
                i * m + j
            })
            .collect();
        Perm::from_images_unchecked(imgs)
    };
    let gens = vec![
        map(&|i, j| ((i + 1) % m, j)),
        map(&|i, j| (i, (j + 1) % m)),
        map(&|i, j| (j, (m - i) % m)),
        map(&|i, j| (j, i)),
    ];
    Ok(PermGroup::new(n, gens).with_order(BigUint::from(8 * m as u64 * m as u64)))
}
