use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::group::{element_order_by_potentials, element_order_by_snf, k_law_solve};
use super::multigraph::{blow_up, MultiGraph, Node};
use crate::arith::{rat, rat_to_string};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub node: String,
    pub degree: u64,
    /// `None` when the closed formula is not an integer for this `p`.
    pub expected: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub source: String,
    pub target: String,
    pub count: u64,
    /// `(p+1) / (w(A_E) eps w(C_1) w(C_2))`, printed as `n/d`.
    pub leading_term: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub rows: Vec<DegreeRow>,
    pub handshake: bool,
    /// `N(C_1, C_2) > 0` for every non-exceptional pair across the two sides.
    pub all_pairs_joined: bool,
    pub pairs: Vec<PairRow>,
}

impl DegreeReport {
    pub fn passes(&self) -> bool {
        self.handshake && self.rows.iter().all(|r| r.expected == Some(r.degree))
    }
}

fn exact_div(num: u64, den: u64) -> Option<u64> {
    num.is_multiple_of(den).then_some(num / den)
}

/// Expected number of edges at a non-exceptional vertex of the quotient.
fn expected_degree(node: &Node, rational: bool, p: u64) -> Option<u64> {
    match node {
        Node::J(_) => exact_div(p + 3, 4),
        Node::G(_) if p % 3 == 1 => exact_div(p + 5, 6),
        Node::G(_) => exact_div(p + 1, 6),
        _ if rational => exact_div(p + 1, 2),
        _ => Some(p + 1),
    }
}

fn weight(node: &Node) -> i64 {
    match node {
        Node::J(_) => 2,
        Node::G(_) => 3,
        _ => 1,
    }
}

/// Compares the degrees of the quotient graph `g` (edges counted once
/// whatever their length) with the closed formulas, and lists `N(C_1, C_2)`
/// on the blow-up next to its leading asymptotic term.
pub fn degree_check(g: &MultiGraph, p: u64) -> DegreeReport {
    let sides: Vec<usize> = (0..g.node_count()).filter(|&i| g.nodes[i].side().is_some()).collect();
    let rows = sides
        .iter()
        .map(|&i| DegreeRow {
            node: g.nodes[i].to_string(),
            degree: g.degree(i) as u64,
            expected: expected_degree(&g.nodes[i], g.members[i].len() == 1, p),
        })
        .collect();
    let handshake = (0..g.node_count()).map(|i| g.degree(i)).sum::<usize>() == 2 * g.edge_count();

    let b = blow_up(g);
    // w(A_E) on the modular graph: every class once
    let mut mass = BigRational::from_integer(0.into());
    for &i in &sides {
        if g.nodes[i].side() == Some(1) {
            let w = rat(weight(&g.nodes[i]));
            mass += rat(g.members[i].len() as i64) / w;
        }
    }
    let mut pairs = Vec::new();
    for &a in sides.iter().filter(|&&i| g.nodes[i].side() == Some(1)) {
        for &c in sides.iter().filter(|&&i| g.nodes[i].side() == Some(2)) {
            let eps = if g.members[a].len() == 1 && g.members[c].len() == 1 { 2 } else { 1 };
            let lead = rat(p as i64 + 1) / (&mass * rat(eps * weight(&g.nodes[a]) * weight(&g.nodes[c])));
            pairs.push(PairRow {
                source: g.nodes[a].to_string(),
                target: g.nodes[c].to_string(),
                count: b.n_between(a, c) as u64,
                leading_term: rat_to_string(&lead),
            });
        }
    }
    let all_pairs_joined = pairs.iter().all(|r| r.count > 0);
    DegreeReport { rows, handshake, all_pairs_joined, pairs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalTest {
    pub node: String,
    /// Order of `J - 𝒥` in the component group, by Smith form.
    #[serde(with = "crate::codec::bigint_string")]
    pub order: BigInt,
    /// Kirchhoff solve with current `p + 1` has an integral solution.
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaGeneralReport {
    pub tests: Vec<ExceptionalTest>,
    /// `(p+1)(𝒥 - J) != 0` for every `J != 𝒥`.
    pub holds: bool,
    /// The Kirchhoff verdicts agree with both order computations.
    pub consistent: bool,
}

/// Tests `(p+1)(𝒥 - J) != 0` in the component group for every vertex `J` of
/// the blown-up graph other than `𝒥`.
pub fn lemma_general_check(blown: &MultiGraph, p: u64) -> Result<LemmaGeneralReport, Error> {
    let sink = blown.position(&Node::Chain2).ok_or_else(|| Error::Internal("no length-2 exceptional vertex".into()))?;
    let current = BigInt::from(p + 1);
    let mut tests = Vec::new();
    let mut consistent = true;
    for j in (0..blown.node_count()).filter(|&j| j != sink) {
        let solved = k_law_solve(blown, j, sink, &current)?;
        let order = element_order_by_snf(blown, j, sink)?;
        let by_potentials = element_order_by_potentials(blown, j, sink)?;
        consistent &= order == by_potentials && solved.integral == (&current % &order == BigInt::from(0));
        tests.push(ExceptionalTest { node: blown.nodes[j].to_string(), order, integral: solved.integral });
    }
    let holds = tests.iter().all(|t| !t.integral);
    Ok(LemmaGeneralReport { tests, holds, consistent })
}
