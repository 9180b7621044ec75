//! Small exact number-theory helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic trial-division primality test; inputs here stay far below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (d|n) for a discriminant-style `d` and a prime `n`.
pub fn kronecker_prime(d: i64, n: u64) -> i32 {
    if n == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    legendre(d, n)
}

/// Largest `r` with `r*r <= n`, for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

/// `floor(sqrt(x))` for a nonnegative rational.
pub fn isqrt_floor_rational(x: &BigRational) -> BigInt {
    if x.is_zero() || x.is_negative() {
        return BigInt::zero();
    }
    isqrt(&x.floor().to_integer())
}

pub fn ceil_rat(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn bigrat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Generator of the ideal `sum x_i Z` for rationals `x_i` (nonnegative).
pub fn rational_gcd<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        // gcd(a/b, c/d) = gcd(a d, c b) / (b d), then reduce.
        let a = num.clone() * x.denom();
        let c = x.numer().abs() * &den;
        num = a.gcd(&c);
        den *= x.denom();
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
    }
    BigRational::new(num, den)
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer out of i64 range")
}

/// `numerator/denominator` string used in every serialized rational.
pub fn rat_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_from_string(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
