use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("cycle syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("point {point} exceeds degree {degree}")]
    OutOfRange { point: usize, degree: usize },
}

/// A permutation of {0, .., n-1}, stored as its image list.
///
/// Composition is left to right: `a.mul(&b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from images without checking; caller guarantees a bijection.
    pub fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(PermError::OutOfRange { point: x.max(y) as usize, degree: n });
                }
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// In-place `self := self * other`.
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inv(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// g⁻¹ · self · g
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Perm { images }
    }

    /// self⁻¹ · other⁻¹ · self · other
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                c.push(x);
                x = self.images[x as usize];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> Vec<u32> {
        (0..self.degree() as u32).filter(|&x| self.apply(x) != x).collect()
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Perm { images }
    }

    /// Shifts the permutation to act on `offset..offset+deg` inside degree `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Perm { images }
    }

    /// Parses 1-based disjoint cycle notation such as "(1,2,3)(4,5)".
    pub fn parse(text: &str, n: usize) -> Result<Perm, PermError> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut cycles = Vec::new();
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(PermError::Syntax { offset: i, msg: "expected '('".into() });
            }
            i += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == b')' && cycle.is_empty() {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(PermError::Syntax { offset: i, msg: "expected a point".into() });
                }
                let p: usize = text[start..i].parse().map_err(|_| PermError::Syntax {
                    offset: start,
                    msg: "bad integer".into(),
                })?;
                if p == 0 || p > n {
                    return Err(PermError::OutOfRange { point: p, degree: n });
                }
                if cycle.contains(&((p - 1) as u32)) {
                    return Err(PermError::Syntax { offset: start, msg: "repeated point".into() });
                }
                cycle.push((p - 1) as u32);
                skip_ws(&mut i);
                match bytes.get(i) {
                    Some(b',') => i += 1,
                    Some(b')') => {
                        i += 1;
                        break;
                    }
                    _ => return Err(PermError::Syntax { offset: i, msg: "expected ',' or ')'".into() }),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            skip_ws(&mut i);
        }
        let mut used = vec![false; n];
        for c in &cycles {
            for &x in c {
                if used[x as usize] {
                    return Err(PermError::Syntax { offset: 0, msg: "cycles are not disjoint".into() });
                }
                used[x as usize] = true;
            }
        }
        Perm::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_left_to_right() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).apply(0), 2);
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
    }

    #[test]
    fn parse_print_round_trip() {
        let p = Perm::parse("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse("()", 4).unwrap(), Perm::identity(4));
        assert!(Perm::parse("(1,2", 4).is_err());
        assert!(Perm::parse("(1,9)", 4).is_err());
        assert!(Perm::parse("(1,2)(2,3)", 4).is_err());
    }

    #[test]
    fn inverse_and_conjugate() {
        let p = Perm::parse("(1,2,3,4)", 4).unwrap();
        let g = Perm::parse("(1,2)", 4).unwrap();
        assert!(p.mul(&p.inv()).is_identity());
        let c = p.conj(&g);
        assert_eq!(c, g.inv().mul(&p).mul(&g));
        assert_eq!(p.pow(-1), p.inv());
        assert_eq!(p.pow(4), Perm::identity(4));
    }
}
