use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bigrat, gcd_all, lcm_all};
use crate::gross::{eisenstein_modular, DivisorVector, RatVector};
use crate::graph::VertexSet;
use crate::linalg::solve;

/// `lambda_0 A_E = sum_{n=1}^N lambda_n Gamma_n` with every `lambda_n`
/// divisible by 12.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub depth: usize,
    #[serde(with = "crate::codec::bigint_string")]
    pub lambda0: BigInt,
    /// `lambda_1, ..., lambda_N`
    #[serde(with = "crate::codec::bigint_strings")]
    pub lambdas: Vec<BigInt>,
    /// `lambda_0 A_E - sum lambda_n Gamma_n`
    pub residual: DivisorVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionOutcome {
    Found(Decomposition),
    /// The smallest depth admits only solutions with `p | lambda_0`.
    DividesP(Decomposition),
    /// `A_E` is not in the span of `Gamma_1..Gamma_N` for any `N <= N_max`.
    NotInSpan,
}

/// Writes `A_E` in terms of `modular[1..=N]` for the smallest `N`, and scales
/// the primitive integer solution so every `lambda_n` is a multiple of 12.
///
/// `modular[0]` is ignored so the slice can be the whole Gross family.
pub fn decompose_eisenstein(vs: &VertexSet, modular: &[DivisorVector], p: u64) -> DecompositionOutcome {
    let a_e = eisenstein_modular(vs);
    for depth in 1..modular.len() {
        let cols = &modular[1..=depth];
        let m: Vec<Vec<BigRational>> = (0..vs.len()).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect();
        let Some(x) = solve(&m, &a_e.0) else {
            continue;
        };
        // (lambda_0, lambda_1..N) proportional to (1, x)
        let dens: Vec<BigInt> = x.iter().map(|v| v.denom().clone()).collect();
        let scale = bigrat(&lcm_all(dens.iter()));
        let mut ints: Vec<BigInt> = std::iter::once(scale.to_integer())
            .chain(x.iter().map(|v| (v * &scale).to_integer()))
            .collect();
        let g = gcd_all(ints.iter());
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
        let rest_gcd = gcd_all(ints[1..].iter());
        let twelve = BigInt::from(12);
        let mult = &twelve / twelve.gcd(&rest_gcd);
        for v in ints.iter_mut() {
            *v *= &mult;
        }
        if ints[0].is_negative() {
            for v in ints.iter_mut() {
                *v = -&*v;
            }
        }
        let lambda0 = ints[0].clone();
        let lambdas = ints[1..].to_vec();
        let mut residual = a_e.scale(&bigrat(&lambda0));
        for (l, c) in lambdas.iter().zip(cols) {
            residual = &residual - &c.scale(&bigrat(l));
        }
        let dec = Decomposition { depth, lambda0, lambdas, residual };
        return if (&dec.lambda0 % BigInt::from(p)).is_zero() {
            DecompositionOutcome::DividesP(dec)
        } else {
            DecompositionOutcome::Found(dec)
        };
    }
    DecompositionOutcome::NotInSpan
}

impl Decomposition {
    /// `lambda_0 (q-1)/12 = sum lambda_n deg Gamma_n`
    pub fn degree_identity(&self, vs: &VertexSet, modular: &[DivisorVector]) -> bool {
        let lhs = bigrat(&self.lambda0) * BigRational::new((vs.q() as i64 - 1).into(), 12.into());
        let rhs = self
            .lambdas
            .iter()
            .zip(&modular[1..])
            .fold(BigRational::zero(), |acc, (l, c)| acc + bigrat(l) * c.sum());
        lhs == rhs
    }

    pub fn all_divisible_by_twelve(&self) -> bool {
        self.lambdas.iter().all(|l| (l % BigInt::from(12)).is_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_zero() && !self.lambda0.is_zero()
    }
}

/// `sum lambda_n v_n` over `vectors[1..]`.
pub fn combine(lambdas: &[BigInt], vectors: &[RatVector]) -> RatVector {
    let n = vectors.first().map_or(0, |v| v.len());
    lambdas
        .iter()
        .zip(&vectors[1..])
        .fold(RatVector::zeros(n), |acc, (l, v)| &acc + &v.scale(&bigrat(l)))
}
