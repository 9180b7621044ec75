use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::kronecker_prime;
use crate::Error;

/// A negative quadratic discriminant `D = D0 f^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadDisc {
    pub d: i64,
    pub fundamental: i64,
    pub conductor: i64,
}

impl QuadDisc {
    pub fn new(d: i64) -> Result<Self, Error> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::BadDiscriminant(d));
        }
        let mut fundamental = d;
        let mut conductor = 1;
        let mut l = 2;
        while l * l <= fundamental.abs() {
            while fundamental % (l * l) == 0 && matches!((fundamental / (l * l)).rem_euclid(4), 0 | 1) {
                fundamental /= l * l;
                conductor *= l;
            }
            l += 1;
        }
        Ok(QuadDisc { d, fundamental, conductor })
    }

    /// `|O_D^*| / 2`
    pub fn units(&self) -> i64 {
        match self.d {
            -3 => 3,
            -4 => 2,
            _ => 1,
        }
    }

    pub fn class_number(&self) -> i64 {
        class_number(self.d)
    }

    /// Kronecker symbol `(D|l)` for a prime `l`.
    pub fn symbol(&self, l: u64) -> i32 {
        kronecker_prime(self.d, l)
    }

    /// `t0 in {0, 1}` with `t0 = D mod 2`, and `(t0^2 - D)/4`: trace and norm
    /// of the standard generator `(t0 + sqrt D)/2`.
    pub fn generator_trace_norm(&self) -> (i64, i64) {
        let t0 = self.d.rem_euclid(2);
        (t0, (t0 * t0 - self.d) / 4)
    }

    pub fn conductor_primes(&self) -> Vec<i64> {
        crate::arith::prime_factors(self.conductor as u64).into_iter().map(|l| l as i64).collect()
    }
}

/// Number of primitive reduced forms `(a, b, c)` of discriminant `d < 0`:
/// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn class_number(d: i64) -> i64 {
    assert!(d < 0 && matches!(d.rem_euclid(4), 0 | 1), "not a negative discriminant: {d}");
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Negative discriminants in `[lo, -1]` coprime to every prime in `avoid`.
pub fn discriminants_down_to(lo: i64, avoid: &[u64]) -> Vec<QuadDisc> {
    (lo..0)
        .rev()
        .filter(|d| matches!(d.rem_euclid(4), 0 | 1))
        .filter(|d| avoid.iter().all(|&p| d % p as i64 != 0))
        .map(|d| QuadDisc::new(d).expect("filtered"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-4), 1);
        assert_eq!(class_number(-3), 1);
        assert_eq!(class_number(-23), 3);
        assert_eq!(class_number(-36), 2);
        assert_eq!(class_number(-16), 1);
        assert_eq!(class_number(-8), 1);
        assert_eq!(class_number(-47), 5);
        assert_eq!(class_number(-71), 7);
    }

    #[test]
    fn conductor_split() {
        let d = QuadDisc::new(-36).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-4, 3));
        let d = QuadDisc::new(-16).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-4, 2));
        let d = QuadDisc::new(-12).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-3, 2));
        let d = QuadDisc::new(-4 * 81).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-4, 9));
        assert!(QuadDisc::new(-5).is_err());
        assert!(QuadDisc::new(4).is_err());
    }

    #[test]
    fn class_number_formula_for_orders() {
        // h(D0 f^2) = h(D0) f prod (1 - (D0|l)/l) / [O^*: O_f^*]
        assert_eq!(class_number(-4 * 9), 2);
        assert_eq!(class_number(-4 * 49), 4);
        assert_eq!(class_number(-4 * 81), 6);
        assert_eq!(class_number(-3 * 4), 1);
        assert_eq!(class_number(-7 * 4), 1);
    }

    #[test]
    fn units_and_generator() {
        assert_eq!(QuadDisc::new(-3).unwrap().units(), 3);
        assert_eq!(QuadDisc::new(-4).unwrap().units(), 2);
        assert_eq!(QuadDisc::new(-36).unwrap().units(), 1);
        assert_eq!(QuadDisc::new(-23).unwrap().generator_trace_norm(), (1, 6));
        assert_eq!(QuadDisc::new(-36).unwrap().generator_trace_norm(), (0, 9));
    }
}
