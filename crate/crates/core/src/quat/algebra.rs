use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bigrat, is_prime, legendre, prime_factors, rat};
use crate::Error;

/// Presentation used for `B_{q,inf}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Presentation {
    /// `(-1, -q)` for `q = 3 mod 4`, `(-2, -q)` for `q = 5 mod 8`,
    /// `(-q, -r)` for `q = 1 mod 8`.
    Standard,
    /// `(-q, -r)` with an auxiliary prime `r = 3 mod 4`, `(q|r) = -1`.
    /// Valid for every odd `q`; used to cross-check model independence.
    Auxiliary,
}

/// The definite quaternion algebra ramified at `q` and infinity, with basis
/// `1, i, j, k`, `i^2 = -a`, `j^2 = -b`, `k = ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    q: u64,
    a: u64,
    b: u64,
    presentation: Presentation,
}

impl QuaternionAlgebra {
    pub fn new(q: u64) -> Result<Self, Error> {
        Self::with_presentation(q, Presentation::Standard)
    }

    pub fn with_presentation(q: u64, presentation: Presentation) -> Result<Self, Error> {
        if q == 2 || !is_prime(q) {
            return Err(Error::InvalidPrime(q));
        }
        let (a, b) = match presentation {
            Presentation::Standard if q % 4 == 3 => (1, q),
            Presentation::Standard if q % 8 == 5 => (2, q),
            _ => (q, auxiliary_prime(q)),
        };
        let alg = QuaternionAlgebra { q, a, b, presentation };
        debug_assert_eq!(alg.ramified_places(), vec![Place::Finite(q), Place::Infinite]);
        Ok(alg)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Structure constants `(a, b)`: `i^2 = -a`, `j^2 = -b`.
    pub fn constants(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    /// Places where `(-a, -b)` does not split, from Hilbert symbols at every
    /// prime dividing `2ab` and at infinity.
    pub fn ramified_places(&self) -> Vec<Place> {
        let (a, b) = (-(self.a as i64), -(self.b as i64));
        let mut places: Vec<Place> = prime_factors(2 * self.a * self.b)
            .into_iter()
            .filter(|&l| hilbert_symbol(a, b, l) == -1)
            .map(Place::Finite)
            .collect();
        if a < 0 && b < 0 {
            places.push(Place::Infinite);
        }
        places
    }

    pub fn one(&self) -> QuatElement {
        QuatElement::from_ints(1, 0, 0, 0)
    }

    pub fn mul(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        let a = bigrat(&BigInt::from(self.a));
        let b = bigrat(&BigInt::from(self.b));
        let ab = &a * &b;
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        // i^2 = -a, j^2 = -b, ij = k = -ji, k^2 = -ab, ik = -a j, ki = a j, jk = b i, kj = -b i
        QuatElement([
            x0 * y0 - &a * x1 * y1 - &b * x2 * y2 - &ab * x3 * y3,
            x0 * y1 + x1 * y0 + &b * x2 * y3 - &b * x3 * y2,
            x0 * y2 + x2 * y0 - &a * x1 * y3 + &a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ])
    }

    pub fn nrd(&self, x: &QuatElement) -> BigRational {
        let a = bigrat(&BigInt::from(self.a));
        let b = bigrat(&BigInt::from(self.b));
        let [x0, x1, x2, x3] = &x.0;
        x0 * x0 + &a * x1 * x1 + &b * x2 * x2 + &a * &b * x3 * x3
    }

    pub fn trd(&self, x: &QuatElement) -> BigRational {
        &x.0[0] * rat(2)
    }

    pub fn inverse(&self, x: &QuatElement) -> Option<QuatElement> {
        let n = self.nrd(x);
        if n.is_zero() {
            return None;
        }
        Some(x.conj().scale(&n.recip()))
    }

    /// Diagonal of the norm form in the `1, i, j, k` coordinates.
    pub fn norm_form_diagonal(&self) -> [BigInt; 4] {
        [
            BigInt::one(),
            BigInt::from(self.a),
            BigInt::from(self.b),
            BigInt::from(self.a * self.b),
        ]
    }

    /// `trd(x * conj(y))`
    pub fn trace_pairing(&self, x: &QuatElement, y: &QuatElement) -> BigRational {
        self.trd(&self.mul(x, &y.conj()))
    }
}

/// Auxiliary prime `r = 3 mod 4` with `(q|r) = -1`, smallest such.
fn auxiliary_prime(q: u64) -> u64 {
    (3..)
        .step_by(4)
        .find(|&r| is_prime(r) && r != q && legendre(q as i64, r) == -1)
        .expect("infinitely many such primes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

fn split_valuation(mut x: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// Hilbert symbol `(a, b)_l` for a finite prime `l` and nonzero integers.
pub fn hilbert_symbol(a: i64, b: i64, l: u64) -> i32 {
    assert!(a != 0 && b != 0);
    let li = l as i64;
    let (alpha, u) = split_valuation(a, li);
    let (beta, v) = split_valuation(b, li);
    if l == 2 {
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
        let omega = |x: i64| ((x * x - 1) / 8).rem_euclid(2);
        let e = eps(u) * eps(v) + alpha as i64 * omega(v) + beta as i64 * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let eps = (li - 1) / 2 ;
    let mut s = if (alpha as i64 * beta as i64 * eps) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(u, l);
    }
    if alpha % 2 == 1 {
        s *= legendre(v, l);
    }
    s
}

/// An element `x0 + x1 i + x2 j + x3 k` with exact rational coordinates.
///
/// Arithmetic that depends on the structure constants goes through
/// [`QuaternionAlgebra`]; the additive structure is available directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuatElement(pub [BigRational; 4]);

impl QuatElement {
    pub fn zero() -> Self {
        QuatElement([BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn from_ints(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        QuatElement([rat(x0), rat(x1), rat(x2), rat(x3)])
    }

    pub fn from_rationals(c: [BigRational; 4]) -> Self {
        QuatElement(c)
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.0
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.0;
        QuatElement([x0.clone(), -x1.clone(), -x2.clone(), -x3.clone()])
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QuatElement(self.0.clone().map(|x| x * c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.0[1..].iter().all(|x| x.is_zero())
    }
}

impl Add for &QuatElement {
    type Output = QuatElement;
    fn add(self, rhs: &QuatElement) -> QuatElement {
        QuatElement(std::array::from_fn(|t| &self.0[t] + &rhs.0[t]))
    }
}

impl Sub for &QuatElement {
    type Output = QuatElement;
    fn sub(self, rhs: &QuatElement) -> QuatElement {
        QuatElement(std::array::from_fn(|t| &self.0[t] - &rhs.0[t]))
    }
}

impl Neg for &QuatElement {
    type Output = QuatElement;
    fn neg(self) -> QuatElement {
        QuatElement(std::array::from_fn(|t| -self.0[t].clone()))
    }
}

impl Mul<&BigRational> for &QuatElement {
    type Output = QuatElement;
    fn mul(self, rhs: &BigRational) -> QuatElement {
        self.scale(rhs)
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "k"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            if a.is_one() && !n.is_empty() {
                write!(f, "{n}")?;
            } else {
                write!(f, "{a}{n}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
