use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::disc::QuadDisc;
use super::embed::EmbeddingCounter;
use crate::arith::{lcm_all, rat, rat_frac, rat_from_string, rat_to_string};
use crate::graph::{EdgeSet, VertexSet};
use crate::Error;

/// Exact rational coefficients over vertices or edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(pub Vec<BigRational>);

/// Coefficients over the vertex set.
pub type DivisorVector = RatVector;
/// Coefficients over the edge set.
pub type PathVector = RatVector;

impl RatVector {
    pub fn zeros(n: usize) -> Self {
        RatVector(vec![BigRational::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = rat(1);
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |a, x| a + x)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        let ds: Vec<BigInt> = self.0.iter().map(|x| x.denom().clone()).collect();
        lcm_all(ds.iter())
    }

    /// Row vector times a sparse-friendly integer matrix.
    pub fn times(&self, m: &[Vec<i64>]) -> Self {
        let n = m.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(n);
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &c) in m[i].iter().enumerate() {
                if c != 0 {
                    out.0[j] += x * rat(c);
                }
            }
        }
        out
    }
}

impl Index<usize> for RatVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl Add for &RatVector {
    type Output = RatVector;
    fn add(self, rhs: &RatVector) -> RatVector {
        assert_eq!(self.len(), rhs.len(), "basis mismatch");
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVector {
    type Output = RatVector;
    fn sub(self, rhs: &RatVector) -> RatVector {
        assert_eq!(self.len(), rhs.len(), "basis mismatch");
        RatVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVector {
    type Output = RatVector;
    fn neg(self) -> RatVector {
        RatVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(rat_to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| rat_from_string(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}"))))
            .collect::<Result<_, _>>()
            .map(RatVector)
    }
}

fn check_len(v: &RatVector, n: usize) -> Result<(), Error> {
    if v.len() != n {
        return Err(Error::BasisMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

/// `Gamma_D = (1/(2u(D))) sum_k H_k(D) E_k`
pub fn gross_modular(vs: &VertexSet, d: &QuadDisc) -> DivisorVector {
    let scale = rat_frac(1, 2 * d.units());
    RatVector(
        (0..vs.len())
            .map(|k| {
                let h = EmbeddingCounter::new(vs.algebra(), vs.right_order(k), d.d.abs()).count(d);
                rat(h as i64) * &scale
            })
            .collect(),
    )
}

/// `gamma_D = sum_i (h_i(D) / l(e_i)) e_i`
pub fn gross_shimura(vs: &VertexSet, es: &EdgeSet, d: &QuadDisc) -> PathVector {
    RatVector(
        es.edges()
            .iter()
            .map(|e| {
                let h = EmbeddingCounter::new(vs.algebra(), &e.eichler, d.d.abs()).count(d);
                rat_frac(h as i64, e.length as i64)
            })
            .collect(),
    )
}

/// Per-vertex counts `H_k(D)` for a batch of discriminants.
pub fn vertex_embedding_table(vs: &VertexSet, ds: &[QuadDisc]) -> Vec<Vec<usize>> {
    let max = ds.iter().map(|d| d.d.abs()).max().unwrap_or(0);
    (0..vs.len())
        .map(|k| {
            let c = EmbeddingCounter::new(vs.algebra(), vs.right_order(k), max);
            ds.iter().map(|d| c.count(d)).collect()
        })
        .collect()
}

/// Per-edge counts `h_i(D)` for a batch of discriminants.
pub fn edge_embedding_table(vs: &VertexSet, es: &EdgeSet, ds: &[QuadDisc]) -> Vec<Vec<usize>> {
    let max = ds.iter().map(|d| d.d.abs()).max().unwrap_or(0);
    es.edges()
        .iter()
        .map(|e| {
            let c = EmbeddingCounter::new(vs.algebra(), &e.eichler, max);
            ds.iter().map(|d| c.count(d)).collect()
        })
        .collect()
}

/// `A_E = sum_k (1/w_k) E_k`
pub fn eisenstein_modular(vs: &VertexSet) -> DivisorVector {
    RatVector(vs.weights().iter().map(|&w| rat_frac(1, w as i64)).collect())
}

/// `a_E = sum_i (1/l(e_i)) e_i`
pub fn eisenstein_shimura(es: &EdgeSet) -> PathVector {
    RatVector(es.edges().iter().map(|e| rat_frac(1, e.length as i64)).collect())
}

fn pairing(weights: impl Iterator<Item = usize>, u: &RatVector, v: &RatVector) -> BigRational {
    weights
        .zip(u.0.iter().zip(&v.0))
        .fold(BigRational::zero(), |acc, (w, (a, b))| acc + a * b * rat(w as i64))
}

/// `<E_k, E_l> = delta_kl w_k`
pub fn monodromy_pairing_vertices(vs: &VertexSet, u: &DivisorVector, v: &DivisorVector) -> Result<BigRational, Error> {
    check_len(u, vs.len())?;
    check_len(v, vs.len())?;
    Ok(pairing(vs.weights().iter().copied(), u, v))
}

/// `<e_i, e_j> = delta_ij l(e_i)`
pub fn monodromy_pairing_edges(es: &EdgeSet, u: &PathVector, v: &PathVector) -> Result<BigRational, Error> {
    check_len(u, es.len())?;
    check_len(v, es.len())?;
    Ok(pairing(es.edges().iter().map(|e| e.length), u, v))
}

/// `<v, A_E>`
pub fn degree_vertices(vs: &VertexSet, v: &DivisorVector) -> Result<BigRational, Error> {
    monodromy_pairing_vertices(vs, v, &eisenstein_modular(vs))
}

/// `<v, a_E>`
pub fn degree_edges(es: &EdgeSet, v: &PathVector) -> Result<BigRational, Error> {
    monodromy_pairing_edges(es, v, &eisenstein_shimura(es))
}

fn push_forward(es: &EdgeSet, v: &PathVector, n: usize, end: impl Fn(usize) -> usize) -> Result<DivisorVector, Error> {
    check_len(v, es.len())?;
    let mut out = RatVector::zeros(n);
    for (e, c) in v.0.iter().enumerate() {
        out.0[end(e)] += c;
    }
    Ok(out)
}

/// Linear extension of the source map.
pub fn s_star(vs: &VertexSet, es: &EdgeSet, v: &PathVector) -> Result<DivisorVector, Error> {
    push_forward(es, v, vs.len(), |e| es.s(e))
}

/// Linear extension of the target map.
pub fn t_star(vs: &VertexSet, es: &EdgeSet, v: &PathVector) -> Result<DivisorVector, Error> {
    push_forward(es, v, vs.len(), |e| es.t(e))
}

/// `v - (<v, a_E> / <a_E, a_E>) a_E`
pub fn project_degree_zero(es: &EdgeSet, v: &PathVector) -> Result<PathVector, Error> {
    let a = eisenstein_shimura(es);
    let c = monodromy_pairing_edges(es, v, &a)? / monodromy_pairing_edges(es, &a, &a)?;
    Ok(v - &a.scale(&c))
}

/// Whether both boundary maps kill `v`.
pub fn in_cycle_space(vs: &VertexSet, es: &EdgeSet, v: &PathVector) -> Result<bool, Error> {
    Ok(s_star(vs, es, v)?.is_zero() && t_star(vs, es, v)?.is_zero())
}

/// `w_p(e) = -e_{tau(e)}`, extended linearly.
pub fn apply_wp(es: &EdgeSet, v: &PathVector) -> Result<PathVector, Error> {
    check_len(v, es.len())?;
    let mut out = RatVector::zeros(es.len());
    for (e, c) in v.0.iter().enumerate() {
        out.0[es.wp()[e]] = -c.clone();
    }
    Ok(out)
}

pub fn apply_wq_edges(es: &EdgeSet, v: &PathVector) -> Result<PathVector, Error> {
    check_len(v, es.len())?;
    let mut out = RatVector::zeros(es.len());
    for (e, c) in v.0.iter().enumerate() {
        out.0[es.wq()[e]] = c.clone();
    }
    Ok(out)
}

pub fn apply_wq_vertices(vs: &VertexSet, v: &DivisorVector) -> Result<DivisorVector, Error> {
    check_len(v, vs.len())?;
    let mut out = RatVector::zeros(vs.len());
    for (k, c) in v.0.iter().enumerate() {
        out.0[vs.wq()[k]] = c.clone();
    }
    Ok(out)
}
