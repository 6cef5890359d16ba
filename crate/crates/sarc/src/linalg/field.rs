use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numth::is_prime_u64;

/// Largest field order supported.
pub const MAX_ORDER: u32 = 59049;

/// Known irreducible polynomials, coefficients from x^0 upward (monic
/// leading coefficient omitted).
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 2, 1, 0, 2, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (11, 2, &[2, 7]),
    (13, 2, &[2, 12]),
];

/// The finite field GF(p^f). Elements are integers in 0..q whose base-p
/// digits are polynomial coefficients modulo the field's modulus.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u32, f: u32) -> Result<Arc<Field>> {
        if !is_prime_u64(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_ORDER as u64).ok_or_else(|| {
            Error::Unsupported(format!("field order {p}^{f} exceeds {MAX_ORDER}"))
        })? as u32;
        let modulus = if f == 1 {
            vec![0]
        } else if let Some(m) = MODULI.iter().find(|m| m.0 == p && m.1 == f) {
            m.2.to_vec()
        } else {
            first_irreducible(p, f)
        };
        let mut field = Field { p, f, q, modulus, exp: Vec::new(), log: Vec::new(), add_table: None };
        if f > 1 && !field.modulus_is_irreducible() {
            return Err(Error::InvalidArgument(format!("modulus for GF({q}) is reducible")));
        }
        if f > 1 && q <= 256 {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(t);
        }
        field.build_logs();
        Ok(Arc::new(field))
    }

    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::new(p, 1)
    }

    /// Field of order q, a prime power.
    pub fn of_order(q: u32) -> Result<Arc<Field>> {
        let fac = crate::numth::factorize(&num_bigint::BigUint::from(q));
        if fac.len() != 1 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let p: u32 = fac[0].0.clone().try_into().expect("small prime");
        Field::new(p, fac[0].1)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients from x^0 upward, monic term omitted.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    /// Polynomial product modulo the modulus, without log tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p;
        let f = self.f as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * f];
        for i in 0..f {
            for j in 0..f {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (f..2 * f).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // x^f = -(m_0 + m_1 x + ...)
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = k - f + i;
                prod[idx] = (prod[idx] + (p - m % p) * c) % p;
            }
        }
        self.from_digits(&prod[..f])
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// Whether the modulus has no monic factor of degree 1..=f/2.
    fn modulus_is_irreducible(&self) -> bool {
        let p = self.p;
        let f = self.f as usize;
        let mut m: Vec<u32> = self.modulus.clone();
        m.push(1);
        for d in 1..=f / 2 {
            // monic divisors of degree d: x^d + c_{d-1} x^{d-1} + ... + c_0
            for code in 0..p.pow(d as u32) {
                let mut a = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    a.push(x % p);
                    x /= p;
                }
                a.push(1);
                if poly_rem(&m, &a, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn build_logs(&mut self) {
        let q = self.q;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; q as usize];
        for g in 1..q {
            let mut x = 1u32;
            let mut ok = true;
            for (k, slot) in exp.iter_mut().enumerate() {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x;
                x = self.mul_slow(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        self.exp = exp;
        self.log = log;
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.f == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Remainder of a by monic b over GF(p); coefficients from x^0 upward.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - bc) * c) % p;
            }
        }
        r.pop();
    }
    r
}

fn first_irreducible(p: u32, f: u32) -> Vec<u32> {
    let count = p.pow(f);
    for code in 0..count {
        let mut c = Vec::with_capacity(f as usize);
        let mut x = code;
        for _ in 0..f {
            c.push(x % p);
            x /= p;
        }
        if c[0] == 0 {
            continue;
        }
        let trial = Field { p, f, q: count, modulus: c.clone(), exp: Vec::new(), log: Vec::new(), add_table: None };
        if trial.modulus_is_irreducible() {
            return c;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabled_moduli_are_irreducible() {
        for &(p, f, _) in MODULI {
            if p.pow(f) <= 4096 {
                Field::new(p, f).unwrap();
            }
        }
    }

    #[test]
    fn field_axioms_gf9() {
        let k = Field::new(3, 2).unwrap();
        for a in 0..9 {
            assert_eq!(k.add(a, k.neg(a)), 0);
            if a != 0 {
                assert_eq!(k.mul(a, k.inv(a)), 1);
            }
            for b in 0..9 {
                assert_eq!(k.mul(a, b), k.mul(b, a));
                for c in 0..9 {
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
        assert_eq!(k.pow(k.primitive_element(), 8), 1);
        assert_ne!(k.pow(k.primitive_element(), 4), 1);
    }

    #[test]
    fn prime_fields() {
        let k = Field::prime(7).unwrap();
        assert_eq!(k.mul(3, 5), 1);
        assert_eq!(k.inv(3), 5);
        assert!(k.is_square(2));
        assert!(!k.is_square(3));
        assert!(Field::new(4, 1).is_err());
    }
}
