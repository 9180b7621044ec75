use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::decompose::{combine, Decomposition};
use crate::arith::{bigrat, rat, rat_to_string};
use crate::graph::{EdgeSet, VertexSet};
use crate::gross::{
    degree_edges, eisenstein_shimura, in_cycle_space, project_degree_zero, GrossFamily, PathVector,
};
use crate::Error;

/// Length-2 and length-3 edges met by one Gross vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSupport {
    pub n: usize,
    #[serde(with = "crate::codec::bigint_string")]
    pub discriminant: BigInt,
    pub length2_edges: Vec<usize>,
    pub length3_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    /// `C_0 = (p+1) C - 4 lambda_0 a_E`
    pub c0: PathVector,
    pub closed: bool,
    pub degree_zero: bool,
    /// `C_0` is the degree-zero projection of `(p+1) C`.
    pub in_gross_span: bool,
    pub exceptional_support: Vec<ExceptionalSupport>,
    pub avoids_exceptional_edges: bool,
    /// Coefficients of `C_0` on the length-2 edges, as `n/d`.
    pub length2_multiplicities: Vec<String>,
    /// `-2 lambda_0`
    #[serde(with = "crate::codec::bigint_string")]
    pub expected_multiplicity: BigInt,
    pub multiplicity_matches: bool,
    pub multiplicity_coprime_to_p: bool,
}

/// Builds `C = sum lambda_n gamma_n` and `C_0`, and evaluates every check.
pub fn build_cycle(
    vs: &VertexSet,
    es: &EdgeSet,
    family: &GrossFamily,
    dec: &Decomposition,
    p: u64,
) -> Result<CycleReport, Error> {
    let a_e = eisenstein_shimura(es);
    let c = combine(&dec.lambdas, &family.shimura[..=dec.depth]);
    let pc = c.scale(&rat(p as i64 + 1));
    let c0 = &pc - &a_e.scale(&(bigrat(&dec.lambda0) * rat(4)));
    let closed = in_cycle_space(vs, es, &c0)?;
    let degree_zero = degree_edges(es, &c0)? == rat(0);
    let in_gross_span = project_degree_zero(es, &pc)? == c0;

    let length2: Vec<usize> = (0..es.len()).filter(|&e| es.length(e) == 2).collect();
    let length3: Vec<usize> = (0..es.len()).filter(|&e| es.length(e) == 3).collect();
    let exceptional_support: Vec<ExceptionalSupport> = (1..=dec.depth)
        .map(|n| {
            let v = &family.shimura[n];
            let hits = |set: &[usize]| set.iter().copied().filter(|&e| v[e] != rat(0)).collect::<Vec<_>>();
            ExceptionalSupport {
                n,
                discriminant: family.discriminant(n),
                length2_edges: hits(&length2),
                length3_edges: hits(&length3),
            }
        })
        .collect();
    let avoids_exceptional_edges =
        exceptional_support.iter().all(|s| s.length2_edges.is_empty() && s.length3_edges.is_empty());

    let expected_multiplicity = -BigInt::from(2) * &dec.lambda0;
    let multiplicity_matches =
        !length2.is_empty() && length2.iter().all(|&e| c0[e] == bigrat(&expected_multiplicity));
    let multiplicity_coprime_to_p = (BigInt::from(2) * &dec.lambda0).gcd(&BigInt::from(p)).is_one();
    Ok(CycleReport {
        length2_multiplicities: length2.iter().map(|&e| rat_to_string(&c0[e])).collect(),
        c0,
        closed,
        degree_zero,
        in_gross_span,
        exceptional_support,
        avoids_exceptional_edges,
        expected_multiplicity,
        multiplicity_matches,
        multiplicity_coprime_to_p,
    })
}
