//! Formed spaces, subspaces and the pair invariants used to certify that
//! no isometry swaps two subspaces.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use super::field::Field;
use super::matrix::FqMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Alternating,
    Symmetric,
}

/// A vector space with a bilinear form B(u, v) = u · gram · vᵀ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormedSpace {
    field: Arc<Field>,
    gram: FqMatrix,
    kind: FormKind,
}

impl FormedSpace {
    pub fn new(gram: FqMatrix, kind: FormKind) -> Result<Arc<FormedSpace>> {
        let k = gram.field().clone();
        if !gram.is_square() {
            return Err(Error::InvalidArgument("Gram matrix is not square".into()));
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..n {
                let ok = match kind {
                    FormKind::Alternating => gram.get(i, j) == k.neg(gram.get(j, i)) && (i != j || gram.get(i, i) == 0),
                    FormKind::Symmetric => gram.get(i, j) == gram.get(j, i),
                };
                if !ok {
                    return Err(Error::InvalidArgument(format!("Gram matrix is not {kind:?}")));
                }
            }
        }
        Ok(Arc::new(FormedSpace { field: k, gram, kind }))
    }

    /// Dimension 2n with basis e1, f1, ..., en, fn (coordinates 2i, 2i+1)
    /// and B(e_i, f_i) = 1 = -B(f_i, e_i).
    pub fn standard_symplectic(n: usize, field: &Arc<Field>) -> Arc<FormedSpace> {
        let mut g = FqMatrix::zero(field, 2 * n, 2 * n);
        for i in 0..n {
            g.set(2 * i, 2 * i + 1, 1);
            g.set(2 * i + 1, 2 * i, field.neg(1));
        }
        FormedSpace::new(g, FormKind::Alternating).expect("standard form")
    }

    /// Diagonal symmetric form.
    pub fn diagonal(field: &Arc<Field>, diag: &[u32]) -> Result<Arc<FormedSpace>> {
        let n = diag.len();
        let mut g = FqMatrix::zero(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            g.set(i, i, d);
        }
        FormedSpace::new(g, FormKind::Symmetric)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FqMatrix {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    pub fn pair(&self, u: &[u32], v: &[u32]) -> u32 {
        let k = &*self.field;
        let ug = self.gram.apply(u);
        ug.iter().zip(v).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    }

    /// Whether g preserves the form: g · gram · gᵀ = gram.
    pub fn preserves(&self, g: &FqMatrix) -> bool {
        g.mul(&self.gram).mul(&g.transpose()) == self.gram
    }
}

/// A subspace, stored by its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    space: Arc<FormedSpace>,
    basis: FqMatrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Subspace) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl Subspace {
    pub fn span(space: &Arc<FormedSpace>, vectors: &[Vec<u32>]) -> Result<Subspace> {
        let n = space.dim();
        if vectors.is_empty() {
            return Ok(Subspace::zero(space));
        }
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument(format!("vector length differs from dimension {n}")));
        }
        let m = FqMatrix::from_rows(space.field(), vectors)?;
        Ok(Subspace::from_matrix(space, &m))
    }

    pub fn from_matrix(space: &Arc<FormedSpace>, m: &FqMatrix) -> Subspace {
        Subspace { space: space.clone(), basis: m.row_space() }
    }

    pub fn zero(space: &Arc<FormedSpace>) -> Subspace {
        Subspace { space: space.clone(), basis: FqMatrix::zero(space.field(), 0, space.dim()) }
    }

    pub fn full(space: &Arc<FormedSpace>) -> Subspace {
        Subspace { space: space.clone(), basis: FqMatrix::identity(space.field(), space.dim()) }
    }

    pub fn space(&self) -> &Arc<FormedSpace> {
        &self.space
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.space != other.space {
            return Err(Error::InvalidArgument("subspaces live in different spaces".into()));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let m = self.basis.stack(&FqMatrix::from_rows(self.space.field(), &[v.to_vec()]).unwrap());
        m.rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::from_matrix(&self.space, &self.basis.stack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(&self.space));
        }
        // (a, b) with aU + bW = 0 gives aU in both
        let stacked = self.basis.stack(&other.basis);
        let ln = stacked.left_nullspace();
        let k = self.dim();
        let mut rows = Vec::new();
        for r in 0..ln.rows() {
            let a = &ln.row(r)[..k];
            rows.push(self.basis.apply(a));
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(&self.space));
        }
        Subspace::span(&self.space, &rows)
    }

    /// {v : B(w, v) = 0 for all w in W}; needs a nondegenerate ambient.
    pub fn perp(&self) -> Result<Subspace> {
        if !self.space.is_nondegenerate() {
            return Err(Error::Unsupported("perp in a degenerate ambient space".into()));
        }
        Ok(self.perp_unchecked())
    }

    fn perp_unchecked(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(&self.space);
        }
        let wg = self.basis.mul(self.space.gram());
        Subspace { space: self.space.clone(), basis: wg.nullspace().row_space() }
    }

    /// Gram matrix of the form restricted to the echelon basis.
    pub fn restricted_gram(&self) -> FqMatrix {
        self.basis.mul(self.space.gram()).mul(&self.basis.transpose())
    }

    pub fn form_rank(&self) -> usize {
        if self.dim() == 0 {
            0
        } else {
            self.restricted_gram().rank()
        }
    }

    /// W ∩ W^⊥, computed from the restricted form.
    pub fn radical(&self) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        let ln = self.restricted_gram().left_nullspace();
        let rows: Vec<Vec<u32>> = (0..ln.rows()).map(|r| self.basis.apply(ln.row(r))).collect();
        Subspace::span(&self.space, &rows).expect("same ambient")
    }

    pub fn is_totally_isotropic(&self) -> bool {
        self.form_rank() == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.form_rank() == self.dim()
    }

    /// Image under a matrix acting on row vectors.
    pub fn image(&self, g: &FqMatrix) -> Subspace {
        Subspace::from_matrix(&self.space, &self.basis.mul(g))
    }

    /// Hashable encoding of the echelon basis.
    pub fn key(&self) -> Vec<u32> {
        self.basis.data().to_vec()
    }
}

/// Dimension, form rank and radical dimension of one subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormSummary {
    pub dim: usize,
    pub rank: usize,
    pub radical_dim: usize,
}

impl FormSummary {
    fn of(w: &Subspace) -> FormSummary {
        let rank = w.form_rank();
        FormSummary { dim: w.dim(), rank, radical_dim: w.dim() - rank }
    }
}

/// Isometry invariants of an ordered pair of subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairProfile {
    pub dim_first: usize,
    pub dim_second: usize,
    pub meet: FormSummary,
    /// W1 ∩ W2^⊥
    pub first_perp_second: FormSummary,
    /// W2 ∩ W1^⊥
    pub second_perp_first: FormSummary,
}

pub fn pair_profile(w1: &Subspace, w2: &Subspace) -> Result<PairProfile> {
    w1.check_same(w2)?;
    let meet = w1.intersect(w2)?;
    let a = w1.intersect(&w2.perp()?)?;
    let b = w2.intersect(&w1.perp()?)?;
    Ok(PairProfile {
        dim_first: w1.dim(),
        dim_second: w2.dim(),
        meet: FormSummary::of(&meet),
        first_perp_second: FormSummary::of(&a),
        second_perp_first: FormSummary::of(&b),
    })
}

pub type HyperbolicPair = (Vec<u32>, Vec<u32>);

fn axpy(k: &Field, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = k.add(*yi, k.mul(a, xi));
    }
}

fn scale(k: &Field, a: u32, x: &[u32]) -> Vec<u32> {
    x.iter().map(|&xi| k.mul(a, xi)).collect()
}

/// Hyperbolic pairs (u_i, w_i) spanning W with B(u_i, w_j) = δ_ij and all
/// other pairings zero. W must be nondegenerate under an alternating form.
pub fn symplectic_basis(w: &Subspace) -> Result<Vec<HyperbolicPair>> {
    let sp = w.space();
    if sp.kind() != FormKind::Alternating {
        return Err(Error::Precondition("form is not alternating".into()));
    }
    if w.dim() % 2 == 1 {
        return Err(Error::Precondition("odd-dimensional subspace".into()));
    }
    if !w.is_nondegenerate() {
        return Err(Error::Precondition("form restricted to W is degenerate".into()));
    }
    let k = &**sp.field();
    let mut vs = w.basis().row_vecs();
    let mut out = Vec::new();
    while !vs.is_empty() {
        let u = vs.remove(0);
        let j = vs
            .iter()
            .position(|v| sp.pair(&u, v) != 0)
            .ok_or_else(|| Error::Precondition("form restricted to W is degenerate".into()))?;
        let v = vs.remove(j);
        let c = k.inv(sp.pair(&u, &v));
        let v = scale(k, c, &v);
        for x in vs.iter_mut() {
            // x - B(x, v) u + B(x, u) v
            let bxv = sp.pair(x, &v);
            let bxu = sp.pair(x, &u);
            axpy(k, x, k.neg(bxv), &u);
            axpy(k, x, bxu, &v);
        }
        out.push((u, v));
    }
    Ok(out)
}

/// For a totally isotropic W0 = ⟨w_1..w_l⟩, a totally isotropic U0 with
/// B(w_i, u_j) = δ_ij; returns U0 and the pairs (w_i, u_i).
pub fn hyperbolic_complement(w0: &Subspace) -> Result<(Subspace, Vec<HyperbolicPair>)> {
    let sp = w0.space().clone();
    if !sp.is_nondegenerate() {
        return Err(Error::Precondition("ambient space is degenerate".into()));
    }
    if !w0.is_totally_isotropic() {
        return Err(Error::Precondition("subspace is not totally isotropic".into()));
    }
    let k = &**sp.field();
    let ws = w0.basis().row_vecs();
    let mut us: Vec<Vec<u32>> = Vec::new();
    for i in 0..ws.len() {
        let mut others: Vec<Vec<u32>> = ws.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()).collect();
        others.extend(us.iter().cloned());
        let s = Subspace::span(&sp, &others)?;
        let cand = s.perp()?;
        let u = cand
            .basis()
            .row_vecs()
            .into_iter()
            .find(|u| sp.pair(&ws[i], u) != 0)
            .ok_or_else(|| Error::Precondition("no hyperbolic partner found".into()))?;
        let c = k.inv(sp.pair(&ws[i], &u));
        us.push(scale(k, c, &u));
    }
    let u0 = Subspace::span(&sp, &us)?;
    let pairs = ws.into_iter().zip(us).collect();
    Ok((u0, pairs))
}

/// Generators of Sp_{2n}(q) on the standard space: the SL2 generators on
/// the first hyperbolic pair together with (for n > 1) a cycle of the
/// pairs and an element mixing the first two pairs.
pub fn sp_generators(n: usize, field: &Arc<Field>) -> Vec<FqMatrix> {
    let k = &**field;
    let d = 2 * n;
    let one = 1;
    let minus = k.neg(1);
    let mut gens = Vec::new();
    // transvection f1 -> f1 + e1
    let mut t = FqMatrix::identity(field, d);
    t.set(1, 0, one);
    // e1 -> f1, f1 -> -e1, combined with the pair cycle when n > 1
    let mut s = FqMatrix::zero(field, d, d);
    s.set(0, 1, one);
    s.set(1, 0, minus);
    for i in 1..n {
        s.set(2 * i, 2 * i, one);
        s.set(2 * i + 1, 2 * i + 1, one);
    }
    if n > 1 {
        let mut c = FqMatrix::zero(field, d, d);
        for i in 0..n {
            let j = (i + 1) % n;
            c.set(2 * i, 2 * j, one);
            c.set(2 * i + 1, 2 * j + 1, one);
        }
        s = s.mul(&c);
    }
    gens.push(t);
    gens.push(s);
    if field.degree() > 1 {
        // diag(w, 1/w) on the first pair
        let w = k.primitive_element();
        let mut h = FqMatrix::identity(field, d);
        h.set(0, 0, w);
        h.set(1, 1, k.inv(w));
        gens.push(h);
    }
    if n > 1 {
        // e2 -> e1 + e2, f1 -> f1 - f2
        let mut x = FqMatrix::identity(field, d);
        x.set(2, 0, one);
        x.set(1, 3, minus);
        gens.push(x);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[u32]) -> Vec<u32> {
        xs.to_vec()
    }

    #[test]
    fn perp_and_radical_examples() {
        let k = Field::prime(3).unwrap();
        let sp = FormedSpace::standard_symplectic(2, &k);
        // coordinates: e1 f1 e2 f2
        let e1 = Subspace::span(&sp, &[v(&[1, 0, 0, 0])]).unwrap();
        let expect = Subspace::span(&sp, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(e1.perp().unwrap(), expect);
        assert_eq!(Subspace::full(&sp).perp().unwrap().dim(), 0);
        let w = Subspace::span(&sp, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(w.radical(), e1);
        let h = Subspace::span(&sp, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(h.radical().dim(), 0);
        let iso = Subspace::span(&sp, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(iso.radical(), iso);
    }

    #[test]
    fn symplectic_basis_rejects_odd() {
        let k = Field::prime(3).unwrap();
        let sp = FormedSpace::standard_symplectic(2, &k);
        let w = Subspace::span(&sp, &[v(&[1, 0, 0, 1]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]).unwrap();
        assert!(symplectic_basis(&w).is_err());
        let pairs = symplectic_basis(&Subspace::full(&sp)).unwrap();
        assert_eq!(pairs.len(), 2);
        for (i, (u, w)) in pairs.iter().enumerate() {
            assert_eq!(sp.pair(u, w), 1);
            for (u2, w2) in &pairs[i + 1..] {
                assert_eq!(sp.pair(u, u2), 0);
                assert_eq!(sp.pair(u, w2), 0);
                assert_eq!(sp.pair(w, w2), 0);
            }
        }
    }

    #[test]
    fn hyperbolic_complement_of_e1() {
        let k = Field::prime(3).unwrap();
        let sp = FormedSpace::standard_symplectic(2, &k);
        let e1 = Subspace::span(&sp, &[v(&[1, 0, 0, 0])]).unwrap();
        let (u0, _) = hyperbolic_complement(&e1).unwrap();
        assert_eq!(u0, Subspace::span(&sp, &[v(&[0, 1, 0, 0])]).unwrap());
    }

    #[test]
    fn sp_generators_preserve_form() {
        for (n, p, f) in [(1, 3, 1), (2, 2, 1), (3, 2, 1), (2, 3, 2), (1, 3, 2)] {
            let k = Field::new(p, f).unwrap();
            let sp = FormedSpace::standard_symplectic(n, &k);
            let gens = sp_generators(n, &k);
            assert!(gens.len() <= 4);
            assert!(gens.iter().all(|g| sp.preserves(g)), "n={n} q={p}^{f}");
        }
    }
}
