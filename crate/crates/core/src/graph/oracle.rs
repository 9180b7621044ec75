//! Independent count of supersingular `j`-invariants from the Legendre form.

use std::collections::BTreeSet;

use crate::arith::{legendre, mod_pow};

/// `F_{q^2} = F_q[s]/(s^2 - n)` for a fixed non-residue `n`.
#[derive(Clone, Copy)]
struct Fq2 {
    q: u64,
    n: u64,
}

type El = (u64, u64);

impl Fq2 {
    fn new(q: u64) -> Self {
        let n = (2..q).find(|&n| legendre(n as i64, q) == -1).expect("odd prime has a non-residue");
        Fq2 { q, n }
    }

    fn add(&self, x: El, y: El) -> El {
        ((x.0 + y.0) % self.q, (x.1 + y.1) % self.q)
    }

    fn sub(&self, x: El, y: El) -> El {
        ((x.0 + self.q - y.0) % self.q, (x.1 + self.q - y.1) % self.q)
    }

    fn mul(&self, x: El, y: El) -> El {
        let q = self.q as u128;
        let (a, b, c, d) = (x.0 as u128, x.1 as u128, y.0 as u128, y.1 as u128);
        (((a * c + b * d % q * self.n as u128) % q) as u64, ((a * d + b * c) % q) as u64)
    }

    fn pow(&self, mut x: El, mut e: u64) -> El {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, x: El) -> El {
        // x^(q^2 - 2)
        self.pow(x, self.q * self.q - 2)
    }

    fn scalar(&self, c: u64) -> El {
        (c % self.q, 0)
    }
}

/// Number of supersingular `j`-invariants in characteristic `q`, and how many
/// of them lie in `F_q`.
///
/// Roots of the Hasse polynomial `sum_{i<=m} C(m,i)^2 x^i`, `m = (q-1)/2`, are
/// found by exhaustive search in `F_{q^2}` and mapped through
/// `j = 256 (x^2 - x + 1)^3 / (x^2 (x - 1)^2)`.
pub fn ss_oracle(q: u64) -> (usize, usize) {
    let f = Fq2::new(q);
    let m = (q - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut binom = 1u64;
    for i in 0..=m {
        coeffs.push(binom * binom % q);
        binom = binom * ((m - i) % q) % q * mod_pow(i + 1, q - 2, q) % q;
    }
    let mut js = BTreeSet::new();
    for a in 0..q {
        for b in 0..q {
            let x = (a, b);
            let val = coeffs.iter().rev().fold((0, 0), |acc, &c| f.add(f.mul(acc, x), f.scalar(c)));
            if val != (0, 0) {
                continue;
            }
            let one = f.scalar(1);
            let num = f.mul(f.scalar(256), f.pow(f.add(f.sub(f.mul(x, x), x), one), 3));
            let xm1 = f.sub(x, one);
            let den = f.mul(f.mul(x, x), f.mul(xm1, xm1));
            js.insert(f.mul(num, f.inv(den)));
        }
    }
    let rational = js.iter().filter(|j| j.1 == 0).count();
    (js.len(), rational)
}
