use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{Presentation, QuatElement, QuaternionAlgebra};
use super::lattice::{LeftIdeal, Lattice, Order};
use crate::arith::{bigrat, rat, rat_frac};
use crate::Error;

/// A maximal order of reduced discriminant `q` in the given presentation.
pub fn maximal_order(alg: &QuaternionAlgebra) -> Order {
    let h = |d: i64, x: [i64; 4]| QuatElement(x.map(|c| rat_frac(c, d)));
    let (a, b) = alg.constants();
    let gens = match (alg.presentation(), a) {
        (Presentation::Standard, 1) => vec![h(1, [1, 0, 0, 0]), h(1, [0, 1, 0, 0]), h(2, [1, 0, 1, 0]), h(2, [0, 1, 0, 1])],
        (Presentation::Standard, 2) => vec![h(2, [1, 0, 1, 1]), h(4, [0, 1, 2, 1]), h(1, [0, 0, 1, 0]), h(1, [0, 0, 0, 1])],
        _ => {
            // (-q, -r) with r | c^2 q + 1
            let (q, r) = (a as i64, b as i64);
            let c = (0..r).find(|c| (c * c % r * q + 1) % r == 0).expect("-1/q is a square mod r");
            vec![
                h(2, [1, 0, 1, 0]),
                h(2, [0, 1, 0, 1]),
                QuatElement([rat(0), rat(0), rat_frac(1, r), rat_frac(c, r)]),
                h(1, [0, 0, 0, 1]),
            ]
        }
    };
    let o = Lattice::from_generators(&gens).expect("explicit basis has rank 4");
    debug_assert!(o.is_order(alg));
    debug_assert_eq!(o.discriminant(alg), bigrat(&BigInt::from(alg.q())));
    o
}

/// All elements of reduced norm 1, i.e. the unit group `O^*`.
pub fn units(alg: &QuaternionAlgebra, o: &Order) -> Vec<QuatElement> {
    o.short_elements(alg, &rat(1))
        .into_iter()
        .filter(|(_, n)| n.is_one())
        .map(|(x, _)| x)
        .collect()
}

/// `|O^* / {+-1}|`
pub fn unit_order(alg: &QuaternionAlgebra, o: &Order) -> usize {
    units(alg, o).len() / 2
}

/// All `x` in `L` with `trd(x) = t` and `nrd(x) = n`, sorted.
pub fn short_vectors(alg: &QuaternionAlgebra, l: &Lattice, t: i64, n: i64) -> Vec<QuatElement> {
    let (t, n) = (rat(t), rat(n));
    let mut out: Vec<QuatElement> = l
        .short_elements(alg, &n)
        .into_iter()
        .filter(|(x, nx)| *nx == n && alg.trd(x) == t)
        .map(|(x, _)| x)
        .collect();
    if n.is_zero() && t.is_zero() {
        out.insert(0, QuatElement::zero());
    }
    out
}

/// Some `a` with `J = I a` when the left ideals `I`, `J` of a common order are
/// in the same class.
pub fn equivalence_witness(alg: &QuaternionAlgebra, i: &LeftIdeal, j: &LeftIdeal) -> Option<QuatElement> {
    let ni = i.nrd(alg);
    let target = &ni * j.nrd(alg);
    let prod = i.conj().mul(alg, j);
    let beta = prod.find_element_of_norm(alg, &target)?;
    let a = beta.scale(&ni.recip());
    debug_assert_eq!(&i.right_mul_elem(alg, &a), j);
    Some(a)
}

pub fn is_equivalent(alg: &QuaternionAlgebra, i: &LeftIdeal, j: &LeftIdeal) -> bool {
    equivalence_witness(alg, i, j).is_some()
}

/// The `l + 1` left ideals of `O` of reduced norm `l`, sorted by canonical basis.
///
/// Each such ideal is `lO + O a` for any `a` in it outside `lO`, and every
/// 2-dimensional subspace of `O/lO` meets the hyperplane where the first
/// coordinate vanishes, so it suffices to scan projective points there.
pub fn norm_ideals(alg: &QuaternionAlgebra, o: &Order, l: u64) -> Result<Vec<LeftIdeal>, Error> {
    if l == alg.q() || !crate::arith::is_prime(l) {
        return Err(Error::BadAuxiliaryPrime(l));
    }
    let li = l as i64;
    let lo = o.scale(&rat(li));
    let mut found = BTreeSet::new();
    let mut candidates: Vec<[i64; 4]> = Vec::new();
    for x in 0..li {
        for y in 0..li {
            candidates.push([0, 1, x, y]);
        }
        candidates.push([0, 0, 1, x]);
    }
    candidates.push([0, 0, 0, 1]);
    let lr = rat(li);
    for c in candidates {
        let c: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        let a = o.element(&c);
        if !(alg.nrd(&a) / &lr).is_integer() {
            continue;
        }
        let ideal = lo.sum(&o.right_mul_elem(alg, &a));
        if ideal.nrd(alg) == lr {
            found.insert(ideal);
        }
    }
    let out: Vec<LeftIdeal> = found.into_iter().collect();
    if out.len() as u64 != l + 1 {
        return Err(Error::Internal(format!("found {} ideals of norm {l}, expected {}", out.len(), l + 1)));
    }
    Ok(out)
}

/// The unique two-sided ideal of `O` above the ramified prime `q`.
pub fn ramified_ideal(alg: &QuaternionAlgebra, o: &Order) -> LeftIdeal {
    let q = rat(alg.q() as i64);
    let qo = o.scale(&q);
    let a = o
        .short_elements(alg, &q)
        .into_iter()
        .map(|(x, _)| x)
        .find(|x| (alg.nrd(x) / &q).is_integer())
        .expect("an element of norm q exists in a maximal order");
    let p = qo.sum(&o.right_mul_elem(alg, &a));
    debug_assert_eq!(p.nrd(alg), q);
    p
}

/// An ideal of the same class with small norm: `I conj(a) / nrd(I)` for a
/// shortest `a` in `I`. Returns the new ideal and `x` with `J = I x`.
pub fn reduce_ideal(alg: &QuaternionAlgebra, i: &LeftIdeal) -> (LeftIdeal, QuatElement) {
    let (_, a) = i.shortest(alg);
    let x = a.conj().scale(&i.nrd(alg).recip());
    (i.right_mul_elem(alg, &x), x)
}

/// `nrd(I)` divided into the norm form, as an integer-valued invariant of the class.
pub fn normalized_norm_counts(alg: &QuaternionAlgebra, i: &LeftIdeal, upto: i64) -> Vec<usize> {
    let n = i.nrd(alg);
    let elems = i.short_elements(alg, &(&n * rat(upto)));
    (1..=upto)
        .map(|m| {
            let t: BigRational = &n * rat(m);
            elems.iter().filter(|(_, v)| *v == t).count()
        })
        .collect()
}
