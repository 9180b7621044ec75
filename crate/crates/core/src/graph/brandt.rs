use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::edges::EdgeSet;
use super::vertices::VertexSet;
use crate::arith::is_prime;
use crate::quat::norm_ideals;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    Vertices,
    Edges,
}

/// Matrix of the Hecke operator `T_l` acting on divisors by row vectors:
/// `E_k T_l = sum_j B[k][j] E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandtMatrix {
    pub l: u64,
    pub level: Level,
    pub entries: Vec<Vec<i64>>,
}

impl BrandtMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// `B[i][j] w_j = B[j][i] w_i`
    pub fn is_weighted_symmetric(&self, weights: &[usize]) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| self.entries[i][j] * weights[j] as i64 == self.entries[j][i] * weights[i] as i64)
        })
    }

    pub fn mul(&self, other: &BrandtMatrix) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|t| self.entries[i][t] * other.entries[t][j]).sum()).collect())
            .collect()
    }

    pub fn commutes_with(&self, other: &BrandtMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Same operator after relabelling: new index `t` is old index `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> BrandtMatrix {
        let entries = perm.iter().map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect()).collect();
        BrandtMatrix { l: self.l, level: self.level, entries }
    }
}

fn check_prime(l: u64, bad: &[u64]) -> Result<(), Error> {
    if !is_prime(l) || bad.contains(&l) {
        return Err(Error::BadAuxiliaryPrime(l));
    }
    Ok(())
}

/// `B[k][j] = #{Q : nrd(Q) = l, I_k Q ~ I_j}`.
pub fn vertex_brandt(vs: &VertexSet, l: u64) -> Result<BrandtMatrix, Error> {
    check_prime(l, &[vs.q()])?;
    let alg = vs.algebra();
    let entries = (0..vs.len())
        .into_par_iter()
        .map(|k| -> Result<Vec<i64>, Error> {
            let mut row = vec![0i64; vs.len()];
            for qi in norm_ideals(alg, vs.right_order(k), l)? {
                row[vs.locate(&vs.rep(k).mul(alg, &qi))?.0] += 1;
            }
            Ok(row)
        })
        .collect::<Result<_, _>>()?;
    Ok(BrandtMatrix { l, level: Level::Vertices, entries })
}

/// `T_l(I, J) = sum_Q (I Q, J ∩ I Q)` over the `l + 1` ideals `Q` of norm `l`.
pub fn edge_brandt(vs: &VertexSet, es: &EdgeSet, l: u64) -> Result<BrandtMatrix, Error> {
    check_prime(l, &[vs.q(), es.p()])?;
    let alg = vs.algebra();
    let per_vertex: Vec<Vec<(usize, Vec<i64>)>> = (0..vs.len())
        .into_par_iter()
        .map(|k| -> Result<Vec<(usize, Vec<i64>)>, Error> {
            let ik = vs.rep(k);
            let moves = norm_ideals(alg, vs.right_order(k), l)?
                .into_iter()
                .map(|qi| {
                    let iq = ik.mul(alg, &qi);
                    vs.locate(&iq).map(|(t, x)| (iq, t, x))
                })
                .collect::<Result<Vec<_>, _>>()?;
            es.edges_at(k)
                .map(|e| {
                    let mut row = vec![0i64; es.len()];
                    for (iq, t, x) in &moves {
                        row[es.lookup(vs, *t, x, &es.edge(e).ideal.intersection(iq))?] += 1;
                    }
                    Ok((e, row))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let mut entries = vec![Vec::new(); es.len()];
    for (e, row) in per_vertex.into_iter().flatten() {
        entries[e] = row;
    }
    Ok(BrandtMatrix { l, level: Level::Edges, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_classes, vertex_classes};

    #[test]
    fn eleven_fixture_up_to_order() {
        let vs = vertex_classes(11).unwrap();
        let b = vertex_brandt(&vs, 2).unwrap();
        // weight-2 class first
        let perm: Vec<usize> = vec![1, 0];
        assert_eq!(vs.weight(perm[0]), 2);
        assert_eq!(b.permuted(&perm).entries, vec![vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn vertex_brandt_properties() {
        let vs = vertex_classes(47).unwrap();
        let b2 = vertex_brandt(&vs, 2).unwrap();
        let b3 = vertex_brandt(&vs, 3).unwrap();
        assert_eq!(b2.row_sums(), vec![3; 5]);
        assert!(b2.is_weighted_symmetric(vs.weights()));
        assert!(b3.is_weighted_symmetric(vs.weights()));
        assert!(b2.commutes_with(&b3));
        assert!(vertex_brandt(&vs, 47).is_err());
    }

    #[test]
    fn edge_brandt_row_sums_and_compatibility() {
        let vs = vertex_classes(23).unwrap();
        let es = edge_classes(5, &vs).unwrap();
        let be = edge_brandt(&vs, &es, 2).unwrap();
        let bv = vertex_brandt(&vs, 2).unwrap();
        assert_eq!(be.row_sums(), vec![3; es.len()]);
        for e in 0..es.len() {
            let mut pushed = vec![0i64; vs.len()];
            for (f, &c) in be.entries[e].iter().enumerate() {
                pushed[es.s(f)] += c;
            }
            assert_eq!(pushed, bv.entries[es.s(e)]);
        }
        let lengths: Vec<usize> = (0..es.len()).map(|e| es.length(e)).collect();
        assert!(be.is_weighted_symmetric(&lengths));
    }
}
