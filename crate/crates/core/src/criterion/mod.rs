//! The end-to-end criterion: Ogg's congruence case, the Eisenstein
//! decomposition, the closed path `C_0` and its certificate.

mod cycle;
mod decompose;

use serde::{Deserialize, Serialize};

pub use cycle::{build_cycle, CycleReport, ExceptionalSupport};
pub use decompose::{combine, decompose_eisenstein, Decomposition, DecompositionOutcome};

use crate::arith::{is_prime, legendre, rat_to_string};
use crate::compgroup::{blow_up, degree_check, lemma_general_check, quotient_by_wq, DegreeReport, LemmaGeneralReport};
use crate::graph::{edge_brandt, edge_classes, genus, vertex_brandt, vertex_classes, EdgeSet, VertexSet};
use crate::gross::gross_family;
use crate::Error;

/// Bumped whenever the certificate layout changes.
pub const CERTIFICATE_VERSION: u32 = 1;

const CAVEAT: &str = "The conclusion also needs p larger than a bound depending on q that is not \
known effectively. A satisfied criterion certifies every instance-checkable hypothesis, and the \
conclusion is conditional on p being large enough.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OggCase {
    Ramified,
    Nonramified,
    None,
}

/// `nonramified` iff `(p|q) = -1`, `p = 1 mod 4`, `q = 3 mod 4`;
/// `ramified` iff `(p|q) = -1` and `p = 3 mod 4`.
pub fn check_ogg(p: u64, q: u64) -> Result<OggCase, Error> {
    for x in [p, q] {
        if x < 5 || !is_prime(x) {
            return Err(Error::InvalidPrime(x));
        }
    }
    if p == q {
        return Err(Error::SamePrime(p));
    }
    if legendre(p as i64, q) != -1 {
        return Ok(OggCase::None);
    }
    Ok(match (p % 4, q % 4) {
        (1, 3) => OggCase::Nonramified,
        (3, _) => OggCase::Ramified,
        _ => OggCase::None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub q_above_245: bool,
    pub q_3_mod_4: bool,
    pub p_1_mod_4: bool,
    pub q_nonresidue_mod_p: bool,
}

impl Hypotheses {
    pub fn new(p: u64, q: u64) -> Self {
        Hypotheses {
            q_above_245: q > 245,
            q_3_mod_4: q % 4 == 3,
            p_1_mod_4: p % 4 == 1,
            q_nonresidue_mod_p: legendre(q as i64, p) == -1,
        }
    }

    pub fn failures(&self) -> Vec<String> {
        [
            (self.q_above_245, "q > 245"),
            (self.q_3_mod_4, "q = 3 mod 4"),
            (self.p_1_mod_4, "p = 1 mod 4"),
            (self.q_nonresidue_mod_p, "(q|p) = -1"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name.to_string())
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CriterionSatisfied,
    CheckFailed(String),
    HypothesesNotMet(Vec<String>),
}

impl Verdict {
    /// Process exit status: 0 satisfied, 1 check failed, 2 hypotheses not met.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::CriterionSatisfied => 0,
            Verdict::CheckFailed(_) => 1,
            Verdict::HypothesesNotMet(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub rational_vertices: usize,
    pub edges: usize,
    pub edge_mass: String,
    pub length2_edges: usize,
    pub length3_edges: usize,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub degrees: DegreeReport,
    /// Instance value only; the general statement is asymptotic in `p`.
    pub exceptional_component_test: Option<LemmaGeneralReport>,
}

/// Outcome for one auxiliary prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryAttempt {
    pub l: u64,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionCertificate {
    pub version: u32,
    pub p: u64,
    pub q: u64,
    pub ogg_case: OggCase,
    pub genus: u64,
    pub hypotheses: Hypotheses,
    pub hypotheses_overridden: bool,
    pub graph: GraphStats,
    pub attempts: Vec<AuxiliaryAttempt>,
    pub auxiliary_prime: Option<u64>,
    pub decomposition: Option<Decomposition>,
    pub degree_identity: Option<bool>,
    pub lambdas_divisible_by_12: Option<bool>,
    pub cycle: Option<CycleReport>,
    pub failed_checks: Vec<String>,
    pub caveat: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default)]
pub struct CriterionOptions {
    /// Use only this auxiliary prime.
    pub l: Option<u64>,
    /// Largest depth `N`; defaults to `g + 2`.
    pub max_n: Option<usize>,
    /// Run the machinery even when the congruence hypotheses fail.
    pub override_hypotheses: bool,
    /// How many auxiliary primes to try when none is given.
    pub max_attempts: Option<usize>,
}

/// Primes `l = 3 mod 4` in ascending order, skipping `p` and `q`.
pub fn auxiliary_primes(p: u64, q: u64) -> impl Iterator<Item = u64> {
    (3u64..).step_by(4).filter(move |&l| is_prime(l) && l != p && l != q)
}

pub fn build_graph(p: u64, q: u64) -> Result<(VertexSet, EdgeSet), Error> {
    let vs = vertex_classes(q)?;
    let es = edge_classes(p, &vs)?;
    Ok((vs, es))
}

fn graph_stats(vs: &VertexSet, es: &EdgeSet) -> Result<GraphStats, Error> {
    let p = es.p();
    let g = quotient_by_wq(vs, es);
    let blown = blow_up(&g);
    let exceptional_component_test =
        if blown.position(&crate::compgroup::Node::Chain2).is_some() && blown.is_connected() {
            Some(lemma_general_check(&blown, p)?)
        } else {
            None
        };
    Ok(GraphStats {
        vertices: vs.len(),
        rational_vertices: vs.rational_count(),
        edges: es.len(),
        edge_mass: rat_to_string(&es.mass()),
        length2_edges: (0..es.len()).filter(|&e| es.length(e) == 2).count(),
        length3_edges: (0..es.len()).filter(|&e| es.length(e) == 3).count(),
        quotient_vertices: g.node_count(),
        quotient_edges: g.edge_count(),
        degrees: degree_check(&g, p),
        exceptional_component_test,
    })
}

/// Runs every stage on a built graph and records the outcome.
pub fn run_criterion(vs: &VertexSet, es: &EdgeSet, opts: &CriterionOptions) -> Result<CriterionCertificate, Error> {
    let (p, q) = (es.p(), vs.q());
    let ogg_case = check_ogg(p, q)?;
    let hypotheses = Hypotheses::new(p, q);
    let unmet = hypotheses.failures();
    let mut cert = CriterionCertificate {
        version: CERTIFICATE_VERSION,
        p,
        q,
        ogg_case,
        genus: genus(q),
        hypotheses,
        hypotheses_overridden: opts.override_hypotheses,
        graph: graph_stats(vs, es)?,
        attempts: Vec::new(),
        auxiliary_prime: None,
        decomposition: None,
        degree_identity: None,
        lambdas_divisible_by_12: None,
        cycle: None,
        failed_checks: Vec::new(),
        caveat: CAVEAT.to_string(),
        verdict: Verdict::CriterionSatisfied,
    };
    if !unmet.is_empty() && !opts.override_hypotheses {
        cert.verdict = Verdict::HypothesesNotMet(unmet);
        return Ok(cert);
    }

    let max_n = opts.max_n.unwrap_or(cert.genus as usize + 2);
    let candidates: Vec<u64> = match opts.l {
        Some(l) => {
            if !is_prime(l) || l == p || l == q {
                return Err(Error::BadAuxiliaryPrime(l));
            }
            vec![l]
        }
        None => auxiliary_primes(p, q).take(opts.max_attempts.unwrap_or(4)).collect(),
    };
    let mut chosen = None;
    for l in candidates {
        let bv = vertex_brandt(vs, l)?;
        let be = edge_brandt(vs, es, l)?;
        let family = gross_family(vs, es, &bv, &be, max_n)?;
        match decompose_eisenstein(vs, &family.modular, p) {
            DecompositionOutcome::Found(dec) => {
                cert.attempts.push(AuxiliaryAttempt { l, outcome: format!("decomposed at depth {}", dec.depth) });
                chosen = Some((l, family, dec));
                break;
            }
            DecompositionOutcome::DividesP(dec) => {
                cert.attempts
                    .push(AuxiliaryAttempt { l, outcome: format!("p divides lambda_0 at depth {}", dec.depth) });
            }
            DecompositionOutcome::NotInSpan => {
                cert.attempts.push(AuxiliaryAttempt { l, outcome: format!("not in span up to depth {max_n}") });
            }
        }
    }
    let Some((l, family, dec)) = chosen else {
        cert.failed_checks.push("decomposition".into());
        cert.verdict = Verdict::CheckFailed("decomposition".into());
        return Ok(cert);
    };

    let cycle = build_cycle(vs, es, &family, &dec, p)?;
    let degree_identity = dec.degree_identity(vs, &family.modular);
    let twelve = dec.all_divisible_by_twelve();
    let checks = [
        ("residual", dec.is_exact() && degree_identity && twelve),
        ("intersection", cycle.avoids_exceptional_edges),
        ("closed", cycle.closed && cycle.degree_zero),
        ("gross_span", cycle.in_gross_span),
        ("multiplicity", cycle.multiplicity_matches && cycle.multiplicity_coprime_to_p),
    ];
    cert.failed_checks = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.to_string()).collect();
    cert.auxiliary_prime = Some(l);
    cert.degree_identity = Some(degree_identity);
    cert.lambdas_divisible_by_12 = Some(twelve);
    cert.decomposition = Some(dec);
    cert.cycle = Some(cycle);
    cert.verdict = if let Some(first) = cert.failed_checks.first() {
        Verdict::CheckFailed(first.clone())
    } else if !unmet.is_empty() {
        Verdict::HypothesesNotMet(unmet)
    } else {
        Verdict::CriterionSatisfied
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ogg_cases() {
        assert_eq!(check_ogg(13, 47).unwrap(), OggCase::Nonramified);
        assert_eq!(check_ogg(29, 251).unwrap(), OggCase::Nonramified);
        assert_eq!(check_ogg(7, 47).unwrap(), OggCase::None);
        assert_eq!(check_ogg(7, 5).unwrap(), OggCase::Ramified);
        assert!(check_ogg(13, 13).is_err());
        assert!(check_ogg(15, 47).is_err());
    }

    #[test]
    fn auxiliary_order() {
        let ls: Vec<u64> = auxiliary_primes(29, 7).take(4).collect();
        assert_eq!(ls, vec![3, 11, 19, 23]);
    }

    #[test]
    fn thirteen_forty_seven_hypotheses() {
        let (vs, es) = build_graph(13, 47).unwrap();
        let cert = run_criterion(&vs, &es, &CriterionOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::HypothesesNotMet(vec!["q > 245".into()]));
        assert!(cert.graph.degrees.passes());
        assert_eq!(cert.graph.quotient_edges, 28);
    }

    #[test]
    fn seven_forty_seven_is_not_ogg() {
        let (vs, es) = build_graph(7, 47).unwrap();
        let cert = run_criterion(&vs, &es, &CriterionOptions::default()).unwrap();
        assert_eq!(cert.ogg_case, OggCase::None);
        assert!(matches!(cert.verdict, Verdict::HypothesesNotMet(_)));
    }

    #[test]
    fn overridden_small_instance_runs() {
        let (vs, es) = build_graph(13, 47).unwrap();
        let opts = CriterionOptions { override_hypotheses: true, ..Default::default() };
        let cert = run_criterion(&vs, &es, &opts).unwrap();
        let dec = cert.decomposition.as_ref().expect("decomposition found");
        assert!(dec.is_exact());
        assert_eq!(cert.degree_identity, Some(true));
        assert_eq!(cert.lambdas_divisible_by_12, Some(true));
        let cycle = cert.cycle.as_ref().unwrap();
        if cycle.avoids_exceptional_edges {
            assert!(cycle.closed && cycle.in_gross_span && cycle.multiplicity_matches);
        } else {
            assert_eq!(cert.verdict, Verdict::CheckFailed("intersection".into()));
        }
    }
}
