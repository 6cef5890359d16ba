//! Order formulas for classical and exceptional groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    GL,
    SL,
    PGL,
    PSL,
    Sp,
    PSp,
    GU,
    SU,
    PSU,
    /// Orthogonal families carry the type: +1, -1, or 0 for odd dimension.
    GO(i8),
    SO(i8),
    Omega(i8),
    POmega(i8),
    Sz,
    G2,
    F4,
    Ree,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |e: i8| match e {
            1 => "+",
            -1 => "-",
            _ => "",
        };
        match self {
            Family::GO(e) => write!(f, "GO{}", sign(*e)),
            Family::SO(e) => write!(f, "SO{}", sign(*e)),
            Family::Omega(e) => write!(f, "Omega{}", sign(*e)),
            Family::POmega(e) => write!(f, "POmega{}", sign(*e)),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let (stem, eps) = match s.strip_suffix('+') {
            Some(t) => (t, 1),
            None => match s.strip_suffix('-') {
                Some(t) => (t, -1),
                None => (s, 0),
            },
        };
        let fam = match (stem, eps) {
            ("GL", 0) => Family::GL,
            ("SL", 0) => Family::SL,
            ("PGL", 0) => Family::PGL,
            ("PSL", 0) => Family::PSL,
            ("Sp", 0) => Family::Sp,
            ("PSp", 0) => Family::PSp,
            ("GU", 0) => Family::GU,
            ("SU", 0) => Family::SU,
            ("PSU", 0) => Family::PSU,
            ("GO", e) => Family::GO(e),
            ("SO", e) => Family::SO(e),
            ("Omega", e) => Family::Omega(e),
            ("POmega", e) => Family::POmega(e),
            ("Sz", 0) => Family::Sz,
            ("G2", 0) => Family::G2,
            ("F4", 0) => Family::F4,
            ("Ree", 0) => Family::Ree,
            _ => return Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        };
        Ok(fam)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalOrder {
    pub family: Family,
    pub dim: u32,
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn pw(q: &BigUint, e: u64) -> BigUint {
    Pow::pow(q, e)
}

/// ∏_{i=1}^{k} (q^{step·i} - 1)
fn prod_minus(q: &BigUint, k: u64, step: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * (pw(q, step * i) - 1u32))
}

fn gcd_u64(a: u64, b: &BigUint) -> BigUint {
    BigUint::from(a).gcd(b)
}

/// q^m - ε as a nonnegative integer.
fn q_pow_minus_eps(q: &BigUint, m: u64, eps: i8) -> BigUint {
    match eps {
        1 => pw(q, m) - 1u32,
        -1 => pw(q, m) + 1u32,
        _ => pw(q, m),
    }
}

/// Exact order of the group in `family` of dimension `dim` over GF(q).
/// For Sz, G2, F4 and Ree the dimension argument is ignored.
pub fn classical_order(family: Family, dim: u32, q: u64) -> Result<ClassicalOrder> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    let qb = BigUint::from(q);
    let n = dim as u64;
    let need = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{family} needs {what}")))
        }
    };
    let gl = |n: u64| pw(&qb, n * (n - 1) / 2) * prod_minus(&qb, n, 1);
    let gu = |n: u64| {
        let mut v = pw(&qb, n * (n - 1) / 2);
        for i in 1..=n {
            let qi = pw(&qb, i);
            v *= if i % 2 == 0 { qi - 1u32 } else { qi + 1u32 };
        }
        v
    };
    let odd_q = q % 2 == 1;
    let value = match family {
        Family::GL => {
            need(n >= 1, "dimension ≥ 1")?;
            gl(n)
        }
        Family::SL => {
            need(n >= 1, "dimension ≥ 1")?;
            gl(n) / (&qb - 1u32)
        }
        Family::PGL => {
            need(n >= 1, "dimension ≥ 1")?;
            gl(n) / (&qb - 1u32)
        }
        Family::PSL => {
            need(n >= 2, "dimension ≥ 2")?;
            gl(n) / (&qb - 1u32) / gcd_u64(n, &(&qb - 1u32))
        }
        Family::Sp | Family::PSp => {
            need(n >= 2 && n % 2 == 0, "even dimension ≥ 2")?;
            let m = n / 2;
            let v = pw(&qb, m * m) * prod_minus(&qb, m, 2);
            if family == Family::PSp && odd_q {
                v / 2u32
            } else {
                v
            }
        }
        Family::GU => {
            need(n >= 1, "dimension ≥ 1")?;
            gu(n)
        }
        Family::SU => {
            need(n >= 1, "dimension ≥ 1")?;
            gu(n) / (&qb + 1u32)
        }
        Family::PSU => {
            need(n >= 2, "dimension ≥ 2")?;
            gu(n) / (&qb + 1u32) / gcd_u64(n, &(&qb + 1u32))
        }
        Family::GO(e) | Family::SO(e) | Family::Omega(e) | Family::POmega(e) => {
            orthogonal(family, e, n, &qb, odd_q)?
        }
        Family::Sz => {
            need(q >= 8 && q.is_power_of_two() && q.trailing_zeros() % 2 == 1, "q = 2^(2k+1) ≥ 8")?;
            pw(&qb, 2) * (pw(&qb, 2) + 1u32) * (&qb - 1u32)
        }
        Family::G2 => pw(&qb, 6) * (pw(&qb, 6) - 1u32) * (pw(&qb, 2) - 1u32),
        Family::F4 => {
            pw(&qb, 24) * (pw(&qb, 12) - 1u32) * (pw(&qb, 8) - 1u32) * (pw(&qb, 6) - 1u32) * (pw(&qb, 2) - 1u32)
        }
        Family::Ree => {
            need(is_odd_power_of_three(q), "q = 3^(2k+1)")?;
            pw(&qb, 3) * (pw(&qb, 3) + 1u32) * (&qb - 1u32)
        }
    };
    Ok(ClassicalOrder { family, dim, q, value })
}

fn is_odd_power_of_three(mut q: u64) -> bool {
    let mut e = 0;
    while q % 3 == 0 {
        q /= 3;
        e += 1;
    }
    q == 1 && e % 2 == 1
}

fn orthogonal(family: Family, eps: i8, n: u64, q: &BigUint, odd_q: bool) -> Result<BigUint> {
    if eps == 0 {
        if n % 2 == 0 || n < 3 {
            return Err(Error::InvalidArgument(format!("{family} needs odd dimension ≥ 3")));
        }
        let m = (n - 1) / 2;
        let sp = pw(q, m * m) * prod_minus(q, m, 2);
        if !odd_q {
            // isomorphic to Sp_{2m}(q) in even characteristic
            return Ok(sp);
        }
        let go = sp * 2u32;
        return Ok(match family {
            Family::GO(_) => go,
            Family::SO(_) => go / 2u32,
            _ => go / 4u32,
        });
    }
    if n % 2 == 1 || n < 2 {
        return Err(Error::InvalidArgument(format!("{family} needs even dimension ≥ 2")));
    }
    let m = n / 2;
    let qm = q_pow_minus_eps(q, m, eps);
    let go = pw(q, m * (m - 1)) * &qm * prod_minus(q, m - 1, 2) * 2u32;
    Ok(if odd_q {
        match family {
            Family::GO(_) => go,
            Family::SO(_) => go / 2u32,
            Family::Omega(_) => go / 4u32,
            _ => go / 2u32 / gcd_u64(4, &qm),
        }
    } else {
        match family {
            Family::GO(_) => go,
            _ => go / 2u32,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(f: Family, n: u32, q: u64) -> u64 {
        classical_order(f, n, q).unwrap().value.try_into().unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(val(Family::Sp, 2, 3), 24);
        assert_eq!(val(Family::Sp, 4, 2), 720);
        assert_eq!(val(Family::Sp, 4, 3), 51840);
        assert_eq!(val(Family::PSp, 4, 3), 25920);
        assert_eq!(val(Family::Sp, 6, 2), 1451520);
        assert_eq!(val(Family::GO(-1), 4, 3), 1440);
        assert_eq!(val(Family::PSL, 2, 13), 1092);
        assert_eq!(val(Family::PSL, 2, 5), 60);
        assert_eq!(val(Family::PSU, 4, 3), 3265920);
        assert_eq!(val(Family::POmega(-1), 4, 3), 360);
        assert_eq!(val(Family::POmega(1), 8, 2), 174182400);
        assert_eq!(val(Family::Omega(0), 7, 3), 4585351680);
        assert_eq!(val(Family::G2, 0, 3), 4245696);
        assert_eq!(val(Family::Sz, 0, 8), 29120);
        assert_eq!(val(Family::Ree, 0, 3), 1512);
        assert_eq!(val(Family::PSL, 3, 4), 20160);
    }

    #[test]
    fn family_names_parse() {
        for s in ["GL", "PSL", "Sp", "GO-", "POmega+", "Omega", "G2"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("XY".parse::<Family>().is_err());
    }
}
