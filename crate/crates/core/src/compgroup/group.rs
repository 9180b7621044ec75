use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::multigraph::{blow_up, MultiGraph};
use crate::arith::{bigrat, lcm_all};
use crate::linalg::{determinant, smith_normal_form, solve, to_rational, IntMatrix};
use crate::Error;

/// Invariant factors `d_1 | d_2 | ...` (all `> 1`) of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroup {
    #[serde(with = "crate::codec::bigint_strings")]
    pub factors: Vec<BigInt>,
}

impl ComponentGroup {
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    fn from_diagonal(diag: &[BigInt]) -> Self {
        ComponentGroup { factors: diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect() }
    }
}

/// Potentials of a Kirchhoff solve, shifted so the minimum is 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialAssignment {
    #[serde(with = "rat_strings")]
    pub potentials: Vec<BigRational>,
    pub integral: bool,
}

mod rat_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::arith::{rat_from_string, rat_to_string};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rat_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| rat_from_string(x).ok_or_else(|| serde::de::Error::custom(format!("bad rational {x}"))))
            .collect()
    }
}

fn int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn require_connected(g: &MultiGraph) -> Result<(), Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Torsion of the cokernel of the Laplacian of the blow-up.
pub fn component_group(g: &MultiGraph) -> Result<ComponentGroup, Error> {
    require_connected(g)?;
    let b = blow_up(g);
    let (diag, _) = smith_normal_form(&int_matrix(&b.laplacian()));
    Ok(ComponentGroup::from_diagonal(&diag))
}

/// Cokernel of the Gram matrix of the cycle lattice, with each edge weighted
/// by its length. Agrees with [`component_group`] on connected graphs.
pub fn cycle_group(g: &MultiGraph) -> Result<ComponentGroup, Error> {
    require_connected(g)?;
    let cycles = cycle_basis(g);
    let gram: IntMatrix = cycles
        .iter()
        .map(|c| {
            cycles
                .iter()
                .map(|d| {
                    let s: i64 = (0..g.edge_count()).map(|e| c[e] * d[e] * g.edges[e].length as i64).sum();
                    BigInt::from(s)
                })
                .collect()
        })
        .collect();
    if gram.is_empty() {
        return Ok(ComponentGroup { factors: Vec::new() });
    }
    let (diag, _) = smith_normal_form(&gram);
    Ok(ComponentGroup::from_diagonal(&diag))
}

/// Fundamental cycles of a BFS spanning tree, as signed edge vectors.
fn cycle_basis(g: &MultiGraph) -> Vec<Vec<i64>> {
    let n = g.node_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; g.edge_count()];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for (e, edge) in g.edges.iter().enumerate() {
            let other = if edge.a == a {
                edge.b
            } else if edge.b == a {
                edge.a
            } else {
                continue;
            };
            if depth[other] == usize::MAX {
                depth[other] = depth[a] + 1;
                parent[other] = Some((a, e));
                tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    // signed path from the root to v, oriented along each edge a -> b
    let path = |mut v: usize| {
        let mut out = vec![0i64; g.edge_count()];
        while let Some((u, e)) = parent[v] {
            out[e] += if g.edges[e].a == u { 1 } else { -1 };
            v = u;
        }
        out
    };
    (0..g.edge_count())
        .filter(|&e| !tree[e])
        .map(|e| {
            let edge = g.edges[e];
            let mut c = vec![0i64; g.edge_count()];
            c[e] = 1;
            let (pa, pb) = (path(edge.a), path(edge.b));
            for f in 0..c.len() {
                c[f] += pa[f] - pb[f];
            }
            c
        })
        .collect()
}

/// Determinant of the reduced Laplacian of the blow-up.
pub fn spanning_tree_count(g: &MultiGraph) -> BigInt {
    let b = blow_up(g);
    let l = b.laplacian();
    let n = l.len();
    if n <= 1 {
        return BigInt::one();
    }
    let reduced: Vec<Vec<i64>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    determinant(&to_rational(&int_matrix(&reduced))).to_integer()
}

/// Solves `sum_D N(C, D)(nu(C) - nu(D)) = b(C)` with `b(sink) = I0`,
/// `b(source) = -I0` and `b = 0` elsewhere.
///
/// The flag is set exactly when some solution is integral, that is when
/// `I0 (source - sink)` vanishes in the component group.
pub fn k_law_solve(g: &MultiGraph, source: usize, sink: usize, current: &BigInt) -> Result<PotentialAssignment, Error> {
    if source == sink {
        return Err(Error::Internal("source and sink coincide".into()));
    }
    require_connected(g)?;
    let nu = potentials(g, source, sink, &bigrat(current))?;
    let min = nu.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let potentials: Vec<BigRational> = nu.iter().map(|x| x - &min).collect();
    let integral = potentials.iter().all(|x| x.is_integer());
    Ok(PotentialAssignment { potentials, integral })
}

/// Solution with `nu(sink) = 0`.
fn potentials(g: &MultiGraph, source: usize, sink: usize, current: &BigRational) -> Result<Vec<BigRational>, Error> {
    let n = g.node_count();
    let l = g.laplacian();
    let keep: Vec<usize> = (0..n).filter(|&i| i != sink).collect();
    let a: Vec<Vec<BigRational>> =
        keep.iter().map(|&i| keep.iter().map(|&j| BigRational::from_integer(l[i][j].into())).collect()).collect();
    let rhs: Vec<BigRational> =
        keep.iter().map(|&i| if i == source { -current.clone() } else { BigRational::zero() }).collect();
    let x = solve(&a, &rhs).ok_or(Error::Disconnected)?;
    let mut nu = vec![BigRational::zero(); n];
    for (t, &i) in keep.iter().enumerate() {
        nu[i] = x[t].clone();
    }
    Ok(nu)
}

/// Order of `source - sink` in the component group, from the denominators of
/// the unit-current potentials.
pub fn element_order_by_potentials(g: &MultiGraph, source: usize, sink: usize) -> Result<BigInt, Error> {
    require_connected(g)?;
    let nu = potentials(g, source, sink, &BigRational::one())?;
    let dens: Vec<BigInt> = nu.iter().map(|x| x.denom().clone()).collect();
    Ok(lcm_all(dens.iter()))
}

/// Order of `source - sink` in the component group, read off the Smith form
/// `U L V = D`: the class of `x` has order `lcm d_i / gcd(d_i, (U x)_i)`.
pub fn element_order_by_snf(g: &MultiGraph, source: usize, sink: usize) -> Result<BigInt, Error> {
    require_connected(g)?;
    let (diag, u) = smith_normal_form(&int_matrix(&g.laplacian()));
    let n = g.node_count();
    let mut x = vec![BigInt::zero(); n];
    x[source] += 1;
    x[sink] -= 1;
    let mut order = BigInt::one();
    for i in 0..n {
        let ux: BigInt = (0..n).map(|j| &u[i][j] * &x[j]).sum();
        if diag[i].is_zero() {
            if !ux.is_zero() {
                return Err(Error::Internal("degree-zero divisor has infinite order".into()));
            }
            continue;
        }
        let d = diag[i].abs();
        order = order.lcm(&(&d / d.gcd(&ux)));
    }
    Ok(order)
}
