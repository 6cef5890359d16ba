use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense matrix over a finite field, row-major. Vectors are rows and
/// matrices act on the right.
#[derive(Clone)]
pub struct FqMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &FqMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for FqMatrix {}

impl Hash for FqMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn zero(field: &Arc<Field>, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u32>]) -> Result<FqMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        let q = field.order();
        if rows.iter().flatten().any(|&x| x >= q) {
            return Err(Error::InvalidArgument(format!("matrix entry outside 0..{q}")));
        }
        Ok(FqMatrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds from a flat row-major entry list.
    pub fn from_flat(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<u32>) -> FqMatrix {
        assert_eq!(data.len(), rows * cols);
        FqMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let k = &*self.field;
        let mut out = FqMatrix::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(i, c);
                    if b != 0 {
                        let idx = r * other.cols + c;
                        out.data[idx] = k.add(out.data[idx], k.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let k = &*self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(i, c);
                if b != 0 {
                    *o = k.add(*o, k.mul(a, b));
                }
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &FqMatrix) -> FqMatrix {
        let k = &*self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = FqMatrix::zero(&self.field, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for x in 0..r2 {
                    for y in 0..c2 {
                        out.set(i * r2 + x, j * c2 + y, k.mul(a, other.get(x, y)));
                    }
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let k = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c));
            for j in 0..m.cols {
                let x = m.get(r, j);
                m.set(r, j, k.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                let nf = k.neg(f);
                for j in 0..m.cols {
                    let x = m.get(r, j);
                    if x != 0 {
                        let y = m.get(i, j);
                        m.set(i, j, k.add(y, k.mul(nf, x)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_space(&self) -> FqMatrix {
        let (m, pivots) = self.rref();
        let r = pivots.len();
        FqMatrix { field: m.field.clone(), rows: r, cols: m.cols, data: m.data[..r * m.cols].to_vec() }
    }

    /// Basis (as rows) of {x : M xᵀ = 0}.
    pub fn nullspace(&self) -> FqMatrix {
        let k = &*self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FqMatrix::zero(&self.field, free.len(), self.cols);
        for (idx, &fc) in free.iter().enumerate() {
            out.set(idx, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(idx, pc, k.neg(m.get(r, fc)));
            }
        }
        out
    }

    /// Basis (as rows) of {y : y M = 0}.
    pub fn left_nullspace(&self) -> FqMatrix {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FqMatrix::zero(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FqMatrix::zero(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, m.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn stack(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    /// Plain text: one row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(field: &Arc<Field>, text: &str) -> Result<FqMatrix> {
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::InvalidArgument(format!("line {}: bad entry {t:?}", ln + 1))))
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        FqMatrix::from_rows(field, &rows)
    }
}

/// Index of a vector read as base-q digits, first coordinate least
/// significant.
pub fn vector_index(v: &[u32], q: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn vector_from_index(mut idx: u64, q: u32, dim: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push((idx % q as u64) as u32);
        idx /= q as u64;
    }
    v
}

/// Scales v so its first nonzero coordinate is 1.
pub fn normalize_projective(field: &Field, v: &mut [u32]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = field.inv(lead);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let k = Field::prime(3).unwrap();
        let m = FqMatrix::from_rows(&k, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        match m.inverse() {
            Some(inv) => assert!(m.mul(&inv).is_identity()),
            None => assert!(m.rank() < 3),
        }
        let s = FqMatrix::from_rows(&k, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        let ns = s.nullspace();
        assert_eq!(ns.rows(), 1);
        assert_eq!(s.mul(&ns.transpose()).data(), &[0, 0]);
    }

    #[test]
    fn text_round_trip() {
        let k = Field::prime(2).unwrap();
        let m = FqMatrix::from_rows(&k, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(FqMatrix::parse_text(&k, &m.to_text()).unwrap(), m);
        assert!(FqMatrix::parse_text(&k, "1 2").is_err());
    }
}
