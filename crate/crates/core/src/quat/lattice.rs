use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::{QuatElement, QuaternionAlgebra};
use crate::arith::{bigrat, isqrt, lcm_all, rational_gcd};
use crate::linalg::{determinant, enumerate_short, hnf_rows, inverse, minimum, IntMatrix, RatMatrix};
use crate::Error;

/// A full-rank lattice in `B_{q,inf}`, stored as `(1/denom) * hnf` where the rows
/// of `hnf` are coordinates in the basis `1, i, j, k`.
///
/// The representation is canonical: `hnf` is the row Hermite normal form and
/// `gcd(content(hnf), denom) = 1`, so structural equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    denom: BigInt,
    hnf: IntMatrix,
}

/// Orders and left ideals share the lattice representation.
pub type Order = Lattice;
pub type LeftIdeal = Lattice;

impl Lattice {
    /// Lattice spanned by arbitrary generators; fails unless they span rank 4.
    pub fn from_generators(gens: &[QuatElement]) -> Result<Self, Error> {
        let denoms: Vec<BigInt> = gens
            .iter()
            .flat_map(|g| g.coords().iter().map(|c| c.denom().clone()))
            .collect();
        let d = lcm_all(denoms.iter());
        let rows: IntMatrix = gens
            .iter()
            .map(|g| g.coords().iter().map(|c| (c * bigrat(&d)).to_integer()).collect())
            .collect();
        Self::from_int_rows(rows, d)
    }

    fn from_int_rows(rows: IntMatrix, denom: BigInt) -> Result<Self, Error> {
        let mut hnf = hnf_rows(rows);
        if hnf.len() != 4 {
            return Err(Error::RankDeficient(hnf.len()));
        }
        let mut g = denom.clone();
        for row in &hnf {
            for x in row {
                g = g.gcd(x);
            }
        }
        let mut denom = denom;
        if !g.is_one() {
            for row in hnf.iter_mut() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
            denom /= &g;
        }
        Ok(Lattice { denom, hnf })
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Integer rows; the lattice is these rows divided by [`Lattice::denom`].
    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn basis(&self) -> Vec<QuatElement> {
        self.hnf
            .iter()
            .map(|r| QuatElement(std::array::from_fn(|t| BigRational::new(r[t].clone(), self.denom.clone()))))
            .collect()
    }

    pub fn element(&self, c: &[BigInt]) -> QuatElement {
        QuatElement(std::array::from_fn(|t| {
            let s: BigInt = (0..4).map(|i| &c[i] * &self.hnf[i][t]).sum();
            BigRational::new(s, self.denom.clone())
        }))
    }

    /// Coordinates of `x` in the canonical basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &QuatElement) -> Vec<BigRational> {
        // c * H = denom * x with H upper triangular
        let mut c = vec![BigRational::zero(); 4];
        for t in 0..4 {
            let mut v = &x.0[t] * bigrat(&self.denom);
            for (i, ci) in c.iter().enumerate().take(t) {
                v -= ci * bigrat(&self.hnf[i][t]);
            }
            c[t] = v / bigrat(&self.hnf[t][t]);
        }
        c
    }

    pub fn contains(&self, x: &QuatElement) -> bool {
        self.coordinates(x).iter().all(|c| c.is_integer())
    }

    pub fn is_subset_of(&self, other: &Lattice) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn scale(&self, c: &BigRational) -> Lattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.scale(c)).collect();
        Lattice::from_generators(&gens).expect("nonzero scaling keeps rank")
    }

    pub fn conj(&self) -> Lattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.conj()).collect();
        Lattice::from_generators(&gens).expect("conjugation keeps rank")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Lattice::from_generators(&gens).expect("sum of full-rank lattices")
    }

    /// `L* = {y : <x, y> in Z for all x in L}` for the standard coordinate dot product.
    fn dual(&self) -> Lattice {
        let b: RatMatrix = self
            .hnf
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect())
            .collect();
        let inv = inverse(&b).expect("full rank");
        let gens: Vec<QuatElement> = (0..4).map(|j| QuatElement(std::array::from_fn(|t| inv[t][j].clone()))).collect();
        Lattice::from_generators(&gens).expect("dual of full rank")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    /// Additive span of all products `x y`, `x in self`, `y in other`.
    pub fn mul(&self, alg: &QuaternionAlgebra, other: &Lattice) -> Lattice {
        let (bx, by) = (self.basis(), other.basis());
        let gens: Vec<QuatElement> = bx.iter().flat_map(|x| by.iter().map(|y| alg.mul(x, y))).collect();
        Lattice::from_generators(&gens).expect("product of full-rank lattices")
    }

    /// `x * L`
    pub fn left_mul_elem(&self, alg: &QuaternionAlgebra, x: &QuatElement) -> Lattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| alg.mul(x, b)).collect();
        Lattice::from_generators(&gens).expect("multiplication by a unit of B")
    }

    /// `L * x`
    pub fn right_mul_elem(&self, alg: &QuaternionAlgebra, x: &QuatElement) -> Lattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| alg.mul(b, x)).collect();
        Lattice::from_generators(&gens).expect("multiplication by a unit of B")
    }

    /// `{x : x L subset L}`
    pub fn left_order(&self, alg: &QuaternionAlgebra) -> Order {
        self.basis()
            .iter()
            .map(|b| self.right_mul_elem(alg, &alg.inverse(b).expect("basis vector is nonzero")))
            .reduce(|acc, l| acc.intersection(&l))
            .expect("four basis vectors")
    }

    /// `{x : L x subset L}`
    pub fn right_order(&self, alg: &QuaternionAlgebra) -> Order {
        self.basis()
            .iter()
            .map(|b| self.left_mul_elem(alg, &alg.inverse(b).expect("basis vector is nonzero")))
            .reduce(|acc, l| acc.intersection(&l))
            .expect("four basis vectors")
    }

    /// Integer Gram matrix `G` with `nrd(sum c_i b_i) = c^T G c / denom^2`.
    pub fn norm_gram(&self, alg: &QuaternionAlgebra) -> IntMatrix {
        let diag = alg.norm_form_diagonal();
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| (0..4).map(|t| &self.hnf[i][t] * &diag[t] * &self.hnf[j][t]).sum())
                    .collect()
            })
            .collect()
    }

    /// Reduced norm of the lattice: the positive generator of `nrd(L) Z`.
    pub fn nrd(&self, alg: &QuaternionAlgebra) -> BigRational {
        let g = self.norm_gram(alg);
        let mut vals = Vec::new();
        for i in 0..4 {
            vals.push(bigrat(&g[i][i]));
            for j in (i + 1)..4 {
                vals.push(bigrat(&(&g[i][j] * 2)));
            }
        }
        rational_gcd(vals.iter()) / bigrat(&(&self.denom * &self.denom))
    }

    /// `sqrt |det trd(b_i conj(b_j))|`; for an order this is its reduced discriminant.
    pub fn discriminant(&self, alg: &QuaternionAlgebra) -> BigRational {
        let g = self.norm_gram(alg);
        let d2 = bigrat(&(&self.denom * &self.denom));
        let m: RatMatrix = g.iter().map(|r| r.iter().map(|x| bigrat(&(x * 2)) / &d2).collect()).collect();
        let det = determinant(&m).abs();
        let (n, d) = (isqrt(det.numer()), isqrt(det.denom()));
        assert!(&n * &n == *det.numer() && &d * &d == *det.denom(), "discriminant is a square");
        BigRational::new(n, d)
    }

    /// Covolume relative to `Z^4` in the `1, i, j, k` coordinates.
    pub fn covolume(&self) -> BigRational {
        let det: BigInt = (0..4).map(|i| self.hnf[i][i].clone()).product();
        BigRational::new(det, self.denom.pow(4))
    }

    /// Whether the lattice is a ring with unit and integral reduced trace and norm.
    pub fn is_order(&self, alg: &QuaternionAlgebra) -> bool {
        if !self.contains(&alg.one()) {
            return false;
        }
        let basis = self.basis();
        basis.iter().all(|x| alg.trd(x).is_integer() && alg.nrd(x).is_integer())
            && basis.iter().all(|x| basis.iter().all(|y| self.contains(&alg.mul(x, y))))
    }

    /// Every nonzero element with `nrd <= bound`, with its norm, sorted by
    /// `(nrd, coordinates)`.
    pub fn short_elements(&self, alg: &QuaternionAlgebra, bound: &BigRational) -> Vec<(QuatElement, BigRational)> {
        let g = self.norm_gram(alg);
        let d2 = &self.denom * &self.denom;
        let ib = (bound * bigrat(&d2)).floor().to_integer();
        let mut out = Vec::new();
        enumerate_short(&g, &ib, |c, v| {
            if !v.is_zero() {
                out.push((self.element(c), BigRational::new(v.clone(), d2.clone())));
            }
            false
        });
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Some element with `nrd = target`, if one exists. `target` must be the
    /// lattice minimum or below for this to be cheap.
    pub fn find_element_of_norm(&self, alg: &QuaternionAlgebra, target: &BigRational) -> Option<QuatElement> {
        let g = self.norm_gram(alg);
        let d2 = &self.denom * &self.denom;
        let t = target * bigrat(&d2);
        if !t.is_integer() {
            return None;
        }
        let t = t.to_integer();
        let mut found = None;
        enumerate_short(&g, &t, |c, v| {
            if *v == t {
                found = Some(c.to_vec());
                return true;
            }
            false
        });
        found.map(|c| self.element(&c))
    }

    /// Smallest nonzero norm and the least element (in coordinate order) achieving it.
    pub fn shortest(&self, alg: &QuaternionAlgebra) -> (BigRational, QuatElement) {
        let g = self.norm_gram(alg);
        let d2 = bigrat(&(&self.denom * &self.denom));
        let m = bigrat(&minimum(&g)) / &d2;
        let (x, n) = self.short_elements(alg, &m).into_iter().next().expect("the minimum is attained");
        (n, x)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis().iter().map(|b| format!("{b}")).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn q11() -> QuaternionAlgebra {
        QuaternionAlgebra::new(11).unwrap()
    }

    fn classical(q: i64) -> Lattice {
        let h = |a, b, c, d| QuatElement([rat_frac(a, 2), rat_frac(b, 2), rat_frac(c, 2), rat_frac(d, 2)]);
        Lattice::from_generators(&[h(2, 0, 0, 0), h(0, 2, 0, 0), h(1, 0, 1, 0), h(0, 1, 0, 1)]).unwrap_or_else(|_| panic!("{q}"))
    }

    #[test]
    fn canonical_form_ignores_generator_order() {
        let o = classical(11);
        let mut gens = o.basis();
        gens.reverse();
        let s = alg_sum(&gens);
        gens.push(s);
        assert_eq!(Lattice::from_generators(&gens).unwrap(), o);
    }

    fn alg_sum(xs: &[QuatElement]) -> QuatElement {
        xs.iter().fold(QuatElement::zero(), |acc, x| &acc + x)
    }

    #[test]
    fn classical_order_for_eleven() {
        let alg = q11();
        let o = classical(11);
        assert!(o.is_order(&alg));
        assert_eq!(o.discriminant(&alg), rat(11));
        assert_eq!(o.mul(&alg, &o), o);
        assert_eq!(o.left_order(&alg), o);
        assert_eq!(o.right_order(&alg), o);
        assert_eq!(o.nrd(&alg), rat(1));
    }

    #[test]
    fn rank_deficient_rejected() {
        let x = QuatElement::from_ints(1, 0, 0, 0);
        assert!(matches!(Lattice::from_generators(&[x]), Err(Error::RankDeficient(1))));
    }

    #[test]
    fn intersection_and_sum_of_scaled_lattices() {
        let o = classical(11);
        let two = o.scale(&rat(2));
        let three = o.scale(&rat(3));
        assert_eq!(two.intersection(&three), o.scale(&rat(6)));
        assert_eq!(two.sum(&three), o);
        assert!(two.is_subset_of(&o));
        assert!(!o.is_subset_of(&two));
    }

    #[test]
    fn membership() {
        let o = classical(11);
        assert!(o.contains(&QuatElement([rat_frac(1, 2), rat(0), rat_frac(1, 2), rat(0)])));
        assert!(!o.contains(&QuatElement([rat_frac(1, 2), rat(0), rat(0), rat(0)])));
    }

    #[test]
    fn units_of_the_classical_order() {
        let alg = q11();
        let o = classical(11);
        let units: Vec<_> = o.short_elements(&alg, &rat(1)).into_iter().filter(|(_, n)| n.is_one()).collect();
        assert_eq!(units.len(), 4);
        let (m, x) = o.shortest(&alg);
        assert_eq!(m, rat(1));
        assert!(o.contains(&x));
    }
}
