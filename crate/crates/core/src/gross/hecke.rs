use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::disc::QuadDisc;
use super::vectors::{gross_modular, gross_shimura, DivisorVector, PathVector, RatVector};
use crate::arith::{rat, rat_frac};
use crate::graph::{BrandtMatrix, EdgeSet, Level, VertexSet};
use crate::Error;

/// Gross vectors of the orders of conductor `l^n` in `Z[i]`, `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrossFamily {
    pub l: u64,
    /// `Gamma_{-4 l^{2n}}`
    pub modular: Vec<DivisorVector>,
    /// `gamma_{-4 l^{2n}}`
    pub shimura: Vec<PathVector>,
}

/// Runs `G_{n+1}` from `G_0` where `G = sum (H/2) E` is the unit-free count.
///
/// A CM point of conductor `l^n` has `l + 1` neighbours under `T_l`: for
/// `n >= 1`, `l` of conductor `l^{n+1}` and one of conductor `l^{n-1}`.
fn recurrence(base: RatVector, l: u64, symbol: i32, units: i64, n_max: usize, b: &[Vec<i64>]) -> Vec<RatVector> {
    let mut out = vec![base];
    if n_max == 0 {
        return out;
    }
    let g0 = out[0].clone();
    let g1 = (&g0.times(b) - &g0.scale(&rat(1 + symbol as i64))).scale(&rat_frac(1, units));
    out.push(g1);
    for n in 1..n_max {
        let back = if n == 1 { rat_frac(l as i64 - symbol as i64, units) } else { rat(l as i64) };
        let next = &out[n].times(b) - &out[n - 1].scale(&back);
        out.push(next);
    }
    out
}

/// Gross vectors for `D_n = -4 l^{2n}`, from the base case `D = -4` by the
/// Hecke recurrence on both graphs.
pub fn gross_family(
    vs: &VertexSet,
    es: &EdgeSet,
    bv: &BrandtMatrix,
    be: &BrandtMatrix,
    n_max: usize,
) -> Result<GrossFamily, Error> {
    let l = bv.l;
    if bv.level != Level::Vertices || be.level != Level::Edges || be.l != l {
        return Err(Error::Internal("Brandt matrices do not match".into()));
    }
    let d0 = QuadDisc::new(-4)?;
    let symbol = d0.symbol(l);
    let u0 = d0.units();

    let base_v = gross_modular(vs, &d0).scale(&rat(u0));
    let gv = recurrence(base_v, l, symbol, u0, n_max, &bv.entries);
    // u(-4 l^{2n}) = 1 for n >= 1
    let modular = gv.iter().enumerate().map(|(n, g)| if n == 0 { g.scale(&rat_frac(1, u0)) } else { g.clone() }).collect();

    // h_i / 2 at D = -4
    let lengths: Vec<i64> = es.edges().iter().map(|e| e.length as i64).collect();
    let base_e = RatVector(
        gross_shimura(vs, es, &d0).0.iter().zip(&lengths).map(|(c, &len)| c * rat_frac(len, 2)).collect(),
    );
    let ge = recurrence(base_e, l, symbol, u0, n_max, &be.entries);
    let shimura = ge
        .iter()
        .map(|g| RatVector(g.0.iter().zip(&lengths).map(|(c, &len)| c * rat_frac(2, len)).collect()))
        .collect();
    Ok(GrossFamily { l, modular, shimura })
}

impl GrossFamily {
    pub fn depth(&self) -> usize {
        self.modular.len() - 1
    }

    /// `-4 l^{2n}` exactly.
    pub fn discriminant(&self, n: usize) -> BigInt {
        -BigInt::from(4) * BigInt::from(self.l).pow(2 * n as u32)
    }

    /// `O_{-4 l^{2n}}` when the discriminant fits in an `i64`.
    pub fn disc(&self, n: usize) -> Option<QuadDisc> {
        i64::try_from(self.discriminant(n)).ok().and_then(|d| QuadDisc::new(d).ok())
    }
}
