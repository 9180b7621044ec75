use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::vertices::VertexSet;
use crate::arith::{is_prime, rat, rat_frac};
use crate::quat::{norm_ideals, ramified_ideal, unit_order, units, LeftIdeal, Order, QuatElement};
use crate::Error;

/// A `p`-isogeny class: a unit orbit of norm-`p` left ideals of the right
/// order of its source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Order of the unit group of the Eichler order, modulo `+-1`.
    pub length: usize,
    /// `I_s P` for the orbit representative `P`.
    pub ideal: LeftIdeal,
    /// `x` with `I_s P = I_t x`.
    pub target_witness: QuatElement,
    /// `I_s P'` for every `P'` in the orbit, sorted.
    pub members: Vec<LeftIdeal>,
    /// `O_R(I_s) ∩ O_R(I_s P)`, an Eichler order of level `p`.
    pub eichler: Order,
}

/// Edges of the dual graph, all oriented from the first copy of the vertex
/// set to the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet {
    p: u64,
    edges: Vec<Edge>,
    wp: Vec<usize>,
    wq: Vec<usize>,
    #[serde(skip)]
    index: Vec<HashMap<LeftIdeal, usize>>,
}

/// Builds every edge with its source, target, length and Eichler order, then
/// the two Atkin–Lehner permutations.
pub fn edge_classes(p: u64, vs: &VertexSet) -> Result<EdgeSet, Error> {
    if p == vs.q() {
        return Err(Error::SamePrime(p));
    }
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidPrime(p));
    }
    let alg = vs.algebra();
    let per_vertex: Vec<Vec<Edge>> = (0..vs.len())
        .into_par_iter()
        .map(|k| -> Result<Vec<Edge>, Error> {
            let r = vs.right_order(k);
            let us = units(alg, r);
            let ideals = norm_ideals(alg, r, p)?;
            let mut seen = vec![false; ideals.len()];
            let mut out = Vec::new();
            for a in 0..ideals.len() {
                if seen[a] {
                    continue;
                }
                let mut orbit: Vec<usize> = Vec::new();
                for u in &us {
                    let image = ideals[a].right_mul_elem(alg, u);
                    let b = ideals.binary_search(&image).map_err(|_| Error::Internal("unit orbit escapes ideal set".into()))?;
                    if !orbit.contains(&b) {
                        orbit.push(b);
                        seen[b] = true;
                    }
                }
                let length = vs.weight(k) / orbit.len();
                let eichler = r.intersection(&ideals[a].right_order(alg));
                if unit_order(alg, &eichler) != length {
                    return Err(Error::Internal(format!("stabilizer mismatch at vertex {k}")));
                }
                let ideal = vs.rep(k).mul(alg, &ideals[a]);
                let (target, target_witness) = vs.locate(&ideal)?;
                let mut members: Vec<LeftIdeal> = orbit.iter().map(|&b| vs.rep(k).mul(alg, &ideals[b])).collect();
                members.sort();
                out.push(Edge { source: k, target, length, ideal, target_witness, members, eichler });
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    let mut es = EdgeSet { p, edges: per_vertex.into_iter().flatten().collect(), wp: Vec::new(), wq: Vec::new(), index: Vec::new() };
    es.rebuild_index(vs.len());

    let pr = rat(p as i64);
    es.wp = (0..es.len())
        .into_par_iter()
        .map(|e| {
            let edge = &es.edges[e];
            es.lookup(vs, edge.target, &edge.target_witness, &vs.rep(edge.source).scale(&pr))
        })
        .collect::<Result<_, _>>()?;
    let pq = ramified_ideal(alg, vs.order());
    let moved: Vec<(usize, QuatElement)> = (0..vs.len())
        .into_par_iter()
        .map(|k| vs.locate(&pq.mul(alg, vs.rep(k))))
        .collect::<Result<_, _>>()?;
    es.wq = (0..es.len())
        .into_par_iter()
        .map(|e| {
            let edge = &es.edges[e];
            let (k, x) = &moved[edge.source];
            es.lookup(vs, *k, x, &pq.mul(alg, &edge.ideal))
        })
        .collect::<Result<_, _>>()?;
    Ok(es)
}

impl EdgeSet {
    /// Restores the lookup table after deserialization.
    pub fn rebuild_index(&mut self, vertex_count: usize) {
        let mut index = vec![HashMap::new(); vertex_count];
        for (e, edge) in self.edges.iter().enumerate() {
            for m in &edge.members {
                index[edge.source].insert(m.clone(), e);
            }
        }
        self.index = index;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn s(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn t(&self, e: usize) -> usize {
        self.edges[e].target
    }

    pub fn length(&self, e: usize) -> usize {
        self.edges[e].length
    }

    /// `sum 1/length`
    pub fn mass(&self) -> BigRational {
        self.edges.iter().fold(BigRational::zero(), |acc, e| acc + rat_frac(1, e.length as i64))
    }

    /// `w_p(e) = -e_{tau(e)}`; this is `tau`, the dual-isogeny permutation.
    pub fn wp(&self) -> &[usize] {
        &self.wp
    }

    /// Edge permutation induced by the two-sided ideal of norm `q`.
    pub fn wq(&self) -> &[usize] {
        &self.wq
    }

    /// Edges at a vertex, in index order.
    pub fn edges_at(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&e| self.edges[e].source == k)
    }

    /// The edge of the pair `J ⊂ I` of left `O`-ideals with `nrd(J) = p nrd(I)`.
    pub fn locate(&self, vs: &VertexSet, i: &LeftIdeal, j: &LeftIdeal) -> Result<usize, Error> {
        let (k, x) = vs.locate(i)?;
        self.lookup(vs, k, &x, j)
    }

    /// As [`EdgeSet::locate`] when `I = I_k x` is already known.
    pub fn lookup(&self, vs: &VertexSet, k: usize, x: &QuatElement, j: &LeftIdeal) -> Result<usize, Error> {
        let alg = vs.algebra();
        let xinv = alg.inverse(x).expect("witness is invertible");
        let m = j.right_mul_elem(alg, &xinv);
        self.index[k]
            .get(&m)
            .copied()
            .ok_or_else(|| Error::Internal(format!("sublattice of vertex {k} matches no edge")))
    }

    /// Copy with the vertex indices relabelled by `perm` (new `t` is old `perm[t]`).
    pub fn relabel_vertices(&self, perm: &[usize]) -> EdgeSet {
        let mut inv = vec![0; perm.len()];
        for (t, &old) in perm.iter().enumerate() {
            inv[old] = t;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { source: inv[e.source], target: inv[e.target], ..e.clone() })
            .collect();
        let mut es = EdgeSet { p: self.p, edges, wp: self.wp.clone(), wq: self.wq.clone(), index: Vec::new() };
        es.rebuild_index(perm.len());
        es
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_classes;

    #[test]
    fn edge_mass_five_twenty_three() {
        let vs = vertex_classes(23).unwrap();
        let es = edge_classes(5, &vs).unwrap();
        assert_eq!(es.mass(), rat_frac(6 * 22, 12));
        for k in 0..vs.len() {
            let orbit_total: usize = es.edges_at(k).map(|e| vs.weight(k) / es.length(e)).sum();
            assert_eq!(orbit_total, 6);
        }
    }

    #[test]
    fn involutions() {
        let vs = vertex_classes(23).unwrap();
        let es = edge_classes(5, &vs).unwrap();
        for e in 0..es.len() {
            assert_eq!(es.wp()[es.wp()[e]], e);
            assert_eq!(es.wq()[es.wq()[e]], e);
            assert_eq!(es.s(es.wp()[e]), es.t(e));
            assert_eq!(es.length(es.wp()[e]), es.length(e));
            assert_eq!(es.s(es.wq()[e]), vs.wq()[es.s(e)]);
            assert_eq!(es.t(es.wq()[e]), vs.wq()[es.t(e)]);
        }
    }

    #[test]
    fn eichler_orders_have_level_p() {
        let vs = vertex_classes(23).unwrap();
        let es = edge_classes(5, &vs).unwrap();
        for e in es.edges() {
            assert_eq!(e.eichler.discriminant(vs.algebra()), rat(5 * 23));
        }
    }

    #[test]
    fn rejects_p_equal_q() {
        let vs = vertex_classes(23).unwrap();
        assert!(edge_classes(23, &vs).is_err());
    }
}
