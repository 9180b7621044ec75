use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rat_frac;
use crate::quat::{
    equivalence_witness, maximal_order, norm_ideals, normalized_norm_counts, ramified_ideal, reduce_ideal, unit_order,
    LeftIdeal, Order, QuatElement, QuaternionAlgebra,
};
use crate::Error;

/// Depth of the normalized theta prefix used to prefilter class lookups.
const THETA_DEPTH: i64 = 3;

/// Structural type of a vertex, read off from its unit group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    /// `w = 2`: the right order contains a fourth root of unity.
    J1728,
    /// `w = 3`: the right order contains a sixth root of unity.
    J0,
    Generic,
}

/// Left ideal classes of a fixed maximal order `O`, i.e. the supersingular
/// points in characteristic `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSet {
    alg: QuaternionAlgebra,
    order: Order,
    reps: Vec<LeftIdeal>,
    right_orders: Vec<Order>,
    weights: Vec<usize>,
    theta: Vec<Vec<usize>>,
    wq: Vec<usize>,
}

/// Vertex classes for the default presentation of `B_{q,inf}`.
pub fn vertex_classes(q: u64) -> Result<VertexSet, Error> {
    VertexSet::build(QuaternionAlgebra::new(q)?)
}

impl VertexSet {
    /// Breadth-first search through norm-2 neighbours from `O` until the mass
    /// `(q-1)/12` is reached.
    pub fn build(alg: QuaternionAlgebra) -> Result<Self, Error> {
        if alg.q() < 5 {
            return Err(Error::InvalidPrime(alg.q()));
        }
        let o = maximal_order(&alg);
        let l = 2;
        let target = rat_frac(alg.q() as i64 - 1, 12);
        let mut found: Vec<(LeftIdeal, Vec<usize>)> = vec![(o.clone(), normalized_norm_counts(&alg, &o, THETA_DEPTH))];
        let mut mass = rat_frac(1, unit_order(&alg, &o) as i64);
        let mut queue = VecDeque::from([0usize]);
        'bfs: while let Some(k) = queue.pop_front() {
            let ik = found[k].0.clone();
            let r = ik.right_order(&alg);
            for p in norm_ideals(&alg, &r, l)? {
                if mass == target {
                    break 'bfs;
                }
                let (j, _) = reduce_ideal(&alg, &ik.mul(&alg, &p));
                let theta = normalized_norm_counts(&alg, &j, THETA_DEPTH);
                let known = found
                    .iter()
                    .any(|(rep, t)| *t == theta && equivalence_witness(&alg, rep, &j).is_some());
                if !known {
                    mass += rat_frac(1, unit_order(&alg, &j.right_order(&alg)) as i64);
                    found.push((j, theta));
                    queue.push_back(found.len() - 1);
                }
            }
        }
        if mass != target {
            return Err(Error::Internal(format!("class search stopped at mass {mass}, expected {target}")));
        }

        let mut entries: Vec<(usize, LeftIdeal, Order, Vec<usize>)> = found
            .into_par_iter()
            .map(|(rep, theta)| {
                let r = rep.right_order(&alg);
                (unit_order(&alg, &r), rep, r, theta)
            })
            .collect();
        entries.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let mut vs = VertexSet {
            alg,
            order: o,
            weights: entries.iter().map(|e| e.0).collect(),
            reps: entries.iter().map(|e| e.1.clone()).collect(),
            right_orders: entries.iter().map(|e| e.2.clone()).collect(),
            theta: entries.into_iter().map(|e| e.3).collect(),
            wq: Vec::new(),
        };
        let pq = ramified_ideal(&vs.alg, &vs.order);
        vs.wq = (0..vs.len())
            .into_par_iter()
            .map(|k| vs.locate(&pq.mul(&vs.alg, &vs.reps[k])).map(|(t, _)| t))
            .collect::<Result<_, _>>()?;
        Ok(vs)
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.alg
    }

    pub fn q(&self) -> u64 {
        self.alg.q()
    }

    /// The fixed maximal order `O` whose left ideals represent the vertices.
    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, k: usize) -> &LeftIdeal {
        &self.reps[k]
    }

    pub fn right_order(&self, k: usize) -> &Order {
        &self.right_orders[k]
    }

    pub fn weight(&self, k: usize) -> usize {
        self.weights[k]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn kind(&self, k: usize) -> VertexKind {
        match self.weights[k] {
            2 => VertexKind::J1728,
            3 => VertexKind::J0,
            _ => VertexKind::Generic,
        }
    }

    pub fn index_of_kind(&self, kind: VertexKind) -> Option<usize> {
        (0..self.len()).find(|&k| self.kind(k) == kind)
    }

    /// `sum 1/w_k`
    pub fn mass(&self) -> BigRational {
        self.weights.iter().fold(BigRational::zero(), |acc, &w| acc + rat_frac(1, w as i64))
    }

    /// Vertex permutation induced by left multiplication with the two-sided
    /// ideal of norm `q`.
    pub fn wq(&self) -> &[usize] {
        &self.wq
    }

    /// Whether the vertex is fixed by `w_q`, i.e. defined over `F_q`.
    pub fn is_rational(&self, k: usize) -> bool {
        self.wq[k] == k
    }

    pub fn rational_count(&self) -> usize {
        (0..self.len()).filter(|&k| self.is_rational(k)).count()
    }

    /// Index `k` and `x` with `I = I_k x` for a left `O`-ideal `I`.
    pub fn locate(&self, i: &LeftIdeal) -> Result<(usize, QuatElement), Error> {
        let theta = normalized_norm_counts(&self.alg, i, THETA_DEPTH);
        for k in 0..self.len() {
            if self.theta[k] != theta {
                continue;
            }
            if let Some(x) = equivalence_witness(&self.alg, &self.reps[k], i) {
                return Ok((k, x));
            }
        }
        Err(Error::Internal(format!("ideal {i} matches no vertex class")))
    }

    /// Copy with the vertices reordered: new vertex `t` is old vertex `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> VertexSet {
        let mut inv = vec![0; perm.len()];
        for (t, &old) in perm.iter().enumerate() {
            inv[old] = t;
        }
        VertexSet {
            alg: self.alg.clone(),
            order: self.order.clone(),
            reps: perm.iter().map(|&k| self.reps[k].clone()).collect(),
            right_orders: perm.iter().map(|&k| self.right_orders[k].clone()).collect(),
            weights: perm.iter().map(|&k| self.weights[k]).collect(),
            theta: perm.iter().map(|&k| self.theta[k].clone()).collect(),
            wq: perm.iter().map(|&k| inv[self.wq[k]]).collect(),
        }
    }
}
