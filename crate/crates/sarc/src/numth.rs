//! Exact integer arithmetic: prime parts, Legendre sums, primality,
//! factorisation and primitive prime divisors.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumthError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{base}^{exp} - 1 exceeds the 2^128 factorisation cap")]
    TooLarge { base: u64, exp: u32 },
}

/// The largest power of `prime` dividing some integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePart {
    pub value: BigUint,
    pub prime: u64,
    pub exponent: u64,
}

impl PrimePart {
    fn new(prime: u64, exponent: u64) -> Self {
        let value = BigUint::from(prime).pow(exponent as u32);
        PrimePart { value, prime, exponent }
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the first twelve prime bases are exact below 3.3e24.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().unwrap();
    let mut n = n.clone();
    let mut t = 1;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let eight = BigUint::from(8u32);
    let four = BigUint::from(4u32);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    let n_int = BigInt::from(n.clone());
    let mut d_val: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d_val), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d_val.abs()) != n_int {
            return false;
        }
        d_val = if d_val > 0 { -(d_val + 2) } else { -d_val + 2 };
    }
    let to_mod = |v: i64| -> BigUint { BigInt::from(v).mod_floor(&n_int).to_biguint().unwrap() };
    let dm = to_mod(d_val);
    let qm = to_mod((1 - d_val) / 4);
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let d = &np1 >> s;

    let mut u = BigUint::zero();
    let mut v = BigUint::from(2u32) % n;
    let mut qk = BigUint::one();
    let bits = d.bits();
    for i in (0..bits).rev() {
        // doubling
        u = (&u * &v) % n;
        v = ((&v * &v) + n + n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if d.bit(i) {
            let nu = half_mod((&u + &v) % n, n);
            let nv = half_mod((&dm * &u + &v) % n, n);
            u = nu;
            v = nv;
            qk = (&qk * &qm) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = ((&v * &v) + n + n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality: deterministic below 2^64, Baillie–PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for p in trial_primes().iter().take(200) {
        if (n % *p).is_zero() {
            return false;
        }
    }
    strong_probable_prime(n, 2) && strong_lucas(n)
}

fn trial_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 1usize << 16;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=limit).filter(|&k| sieve[k]).map(|k| k as u64).collect()
    })
}

fn pollard_brent(n: &BigUint, seed: u64) -> BigUint {
    let one = BigUint::one();
    let c = BigUint::from(seed % 1000 + 1);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(seed % 97 + 2) % n;
    let mut r: u64 = 1;
    let m: u64 = 64;
    let mut g = one.clone();
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    g
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let mut seed = 1;
    loop {
        let d = pollard_brent(&n, seed);
        if !d.is_one() && d != n {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
        seed += 1;
    }
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in trial_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !rest.is_one() {
        let mut big = Vec::new();
        split_into(rest, &mut big);
        big.sort();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort();
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> Result<PrimePart, NumthError> {
    if !is_prime_u64(p) {
        return Err(NumthError::NotPrime(p));
    }
    if n.is_zero() {
        return Err(NumthError::InvalidArgument("p-part of zero".into()));
    }
    let mut rest = n.clone();
    let mut e = 0;
    while (&rest % p).is_zero() {
        rest /= p;
        e += 1;
    }
    Ok(PrimePart::new(p, e))
}

/// Exponent of `p` in n!, by Legendre's sum.
pub fn legendre_exponent(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut pk = p;
    loop {
        e += n / pk;
        match pk.checked_mul(p) {
            Some(next) if next <= n => pk = next,
            _ => break,
        }
    }
    e
}

/// (n!)_p without forming n!.
pub fn factorial_p_part(n: u64, p: u64) -> Result<PrimePart, NumthError> {
    if !is_prime_u64(p) {
        return Err(NumthError::NotPrime(p));
    }
    Ok(PrimePart::new(p, legendre_exponent(n, p)))
}

/// Exact test of (n!)_p < p^{n/(p-1)}, i.e. e·(p−1) < n.
pub fn legendre_bound_holds(n: u64, p: u64) -> bool {
    (legendre_exponent(n, p) as u128) * ((p - 1) as u128) < n as u128
}

/// Set of prime divisors of `n`; empty for 1.
pub fn prime_set(n: &BigUint) -> BTreeSet<BigUint> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn prime_set_u64(n: u64) -> BTreeSet<u64> {
    prime_set(&BigUint::from(n)).into_iter().map(|p| p.to_u64().unwrap()).collect()
}

/// Primes dividing n^m − 1 and no n^i − 1 with 0 < i < m.
///
/// Uses the cyclotomic value Φ_m(n): its prime divisors are the primitive
/// ones together with possibly the largest prime factor of m.
pub fn ppd_set(n: u64, m: u32) -> Result<BTreeSet<BigUint>, NumthError> {
    if n < 2 || m < 2 {
        return Err(NumthError::InvalidArgument(format!("ppd needs n, m >= 2, got ({n}, {m})")));
    }
    let nb = BigUint::from(n);
    let full = nb.pow(m) - 1u32;
    if full.bits() > 128 {
        return Err(NumthError::TooLarge { base: n, exp: m });
    }
    let phi = cyclotomic_value(n, m);
    let mut out = BTreeSet::new();
    for (r, _) in factorize(&phi) {
        // r is primitive iff the multiplicative order of n mod r is m
        if multiplicative_order(&nb, &r) == m as u64 {
            out.insert(r);
        }
    }
    Ok(out)
}

/// Φ_m(n) computed as ∏_{d | m} (n^d − 1)^{μ(m/d)}.
pub fn cyclotomic_value(n: u64, m: u32) -> BigUint {
    let nb = BigUint::from(n);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let term = nb.pow(d) - 1u32;
        match mobius((m / d) as u64) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn mobius(n: u64) -> i32 {
    let mut sign = 1;
    for (p, e) in factorize(&BigUint::from(n)) {
        let _ = p;
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Multiplicative order of n modulo the prime r (n coprime to r).
pub fn multiplicative_order(n: &BigUint, r: &BigUint) -> u64 {
    let rm1 = r - 1u32;
    let mut ord = rm1.clone();
    for (p, _) in factorize(&rm1) {
        while (&ord % &p).is_zero() && n.modpow(&(&ord / &p), r).is_one() {
            ord /= &p;
        }
    }
    ord.to_u64().expect("order fits in u64")
}

/// True iff q is prime and q + 1 is a power of two.
pub fn is_mersenne_prime(q: &BigUint) -> bool {
    let q1 = q + 1u32;
    q1.count_ones() == 1 && is_prime(q)
}

/// ∏ p^⌈e_p/2⌉ over the factorisation of `n`: the least order a factor
/// of a factorisation into two groups of equal order can have, prime by prime.
pub fn half_power_bound(n: &BigUint) -> BigUint {
    let mut out = BigUint::one();
    for (p, e) in factorize(n) {
        out *= p.pow(e.div_ceil(2));
    }
    out
}

/// n! as an arbitrary-precision integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn to_bigint(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}
