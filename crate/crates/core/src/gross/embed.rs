use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::disc::QuadDisc;
use crate::arith::{rat, rat_frac};
use crate::quat::{units, Order, QuatElement, QuaternionAlgebra};

/// Optimal embeddings of several quadratic orders into one quaternion order,
/// sharing a single short-vector enumeration.
///
/// An embedding of `O_D` is determined by the image `x` of `(t0 + sqrt D)/2`;
/// it is optimal when no `(x - c)/l` lies in the order for a prime `l | f`.
/// Counts are taken modulo conjugation by the unit group of the order.
pub struct EmbeddingCounter<'a> {
    alg: &'a QuaternionAlgebra,
    order: &'a Order,
    units: Vec<QuatElement>,
    /// `(trd, nrd, x)` with `trd in {0, 1}`
    candidates: Vec<(i64, i64, QuatElement)>,
}

impl<'a> EmbeddingCounter<'a> {
    /// Prepares counts for every discriminant `D` with `|D| <= max_abs_d`.
    pub fn new(alg: &'a QuaternionAlgebra, order: &'a Order, max_abs_d: i64) -> Self {
        let bound = rat((max_abs_d + 1) / 4);
        let candidates = order
            .short_elements(alg, &bound)
            .into_iter()
            .filter_map(|(x, n)| {
                let t = alg.trd(&x);
                (t.is_integer() && (t == rat(0) || t == rat(1)))
                    .then(|| (crate::arith::to_i64(&t.to_integer()), crate::arith::to_i64(&n.to_integer()), x))
            })
            .collect();
        EmbeddingCounter { alg, order, units: units(alg, order), candidates }
    }

    /// Generators of all optimal embeddings of `O_D`.
    pub fn optimal_generators(&self, d: &QuadDisc) -> Vec<QuatElement> {
        let (t0, n) = d.generator_trace_norm();
        let primes = d.conductor_primes();
        self.candidates
            .iter()
            .filter(|(t, m, _)| *t == t0 && *m == n)
            .map(|(_, _, x)| x)
            .filter(|x| {
                primes.iter().all(|&l| {
                    (0..l).all(|c| {
                        let y = (*x - &QuatElement::from_ints(c, 0, 0, 0)).scale(&rat_frac(1, l));
                        !self.order.contains(&y)
                    })
                })
            })
            .cloned()
            .collect()
    }

    /// Number of optimal embeddings modulo unit conjugation.
    pub fn count(&self, d: &QuadDisc) -> usize {
        let gens = self.optimal_generators(d);
        let mut total = BigRational::zero();
        for x in &gens {
            let orbit: BTreeSet<QuatElement> =
                self.units.iter().map(|u| self.alg.mul(&self.alg.mul(u, x), &u.conj())).collect();
            total += rat_frac(1, orbit.len() as i64);
        }
        assert!(total.is_integer(), "orbit sizes partition the embeddings");
        crate::arith::to_i64(&total.to_integer()) as usize
    }
}

/// Number of optimal embeddings of `O_D` into `R` modulo `R^*`-conjugation.
pub fn optimal_embeddings(alg: &QuaternionAlgebra, r: &Order, d: &QuadDisc) -> usize {
    EmbeddingCounter::new(alg, r, d.d.abs()).count(d)
}
