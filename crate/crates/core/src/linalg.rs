//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`; matrices are plain
//! `Vec<Vec<_>>` in row-major order. The dimensions that occur in practice are
//! tiny (rank-4 lattices) or moderate (Laplacians of a few hundred vertices).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{bigrat, ceil_rat, floor_rat, isqrt_floor_rational};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

fn row_sub_mul(rows: &mut [Vec<BigInt>], target: usize, src: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let (a, b) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= factor * y;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is in echelon form with positive pivots; entries above each pivot
/// lie in `[0, pivot)`. Zero rows are dropped, so the output has `rank` rows.
pub fn hnf_rows(mut rows: IntMatrix) -> IntMatrix {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let m = rows.len();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(pi) = pivot else { break };
            rows.swap(r, pi);
            let mut clean = true;
            for i in (r + 1)..m {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                row_sub_mul(&mut rows, i, r, &q);
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            row_sub_mul(&mut rows, i, r, &q);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Smith normal form `U * A * V = diag(d_1, ..., d_n)` of a square integer
/// matrix. Returns the diagonal (with `d_i | d_{i+1}`, zeros last) and `U`.
pub fn smith_normal_form(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = a.len();
    let mut m = a.clone();
    let mut u: IntMatrix = identity(n);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if m[bi][bj].abs() <= m[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(m, u);
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in (t + 1)..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_sub_mul(&mut m, i, t, &q);
                row_sub_mul(&mut u, i, t, &q);
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in (t + 1)..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let s = row[t].clone();
                    row[j] -= &q * s;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: pull in a row whose entries are not multiples of the pivot
            let piv = m[t][t].clone();
            let bad = ((t + 1)..n).find(|&i| ((t + 1)..n).any(|j| !(&m[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_sub_mul(&mut m, t, i, &one);
                    row_sub_mul(&mut u, t, i, &one);
                }
                None => break,
            }
        }
    }
    finish_snf(m, u)
}

fn finish_snf(mut m: IntMatrix, mut u: IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = m.len();
    for i in 0..n {
        if m[i][i].is_negative() {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
            for x in u[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    ((0..n).map(|i| m[i][i].clone()).collect(), u)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.iter().map(|r| r.iter().map(bigrat).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pi) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pi);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A particular solution of `A x = b` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: RatMatrix = a
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            v
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(a: &RatMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(pi) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if pi != c {
            m.swap(pi, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let s = &f * &m[c][j];
                m[i][j] -= s;
            }
        }
    }
    det
}

/// Gram–Schmidt data of a positive definite Gram matrix: `(mu, b)` with
/// `Q(y) = sum_i b_i (y_i + sum_{j>i} mu[j][i] y_j)^2`.
fn gso(g: &IntMatrix) -> (RatMatrix, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = bigrat(&g[i][j]);
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = bigrat(&g[i][i]);
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b[i] = s;
    }
    (mu, b)
}

fn gram_transform(g: &IntMatrix, u: &IntMatrix) -> IntMatrix {
    let n = g.len();
    let ug: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &u[i][k] * &g[k][j]).sum()).collect())
        .collect();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &ug[i][k] * &u[j][k]).sum()).collect())
        .collect()
}

/// LLL reduction (delta = 3/4) of a positive definite integer Gram matrix.
/// Returns `(u, g')` with `g' = u g u^T` and `u` unimodular.
///
/// Integral variant: only the Gram determinants `d_i` and the scaled
/// coefficients `lambda_ij = d_j mu_ij` are tracked, so every division is exact.
pub fn lll_gram(g: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = g.len();
    let mut h = identity(n);
    if n <= 1 {
        return (h, g.clone());
    }
    let inner = |h: &IntMatrix, i: usize, j: usize| -> BigInt {
        let mut s = BigInt::zero();
        for a in 0..n {
            if h[i][a].is_zero() {
                continue;
            }
            let mut t = BigInt::zero();
            for b in 0..n {
                if !h[j][b].is_zero() {
                    t += &g[a][b] * &h[j][b];
                }
            }
            s += &h[i][a] * t;
        }
        s
    };
    // d[0] = 1, d[i + 1] = det of the leading (i+1)x(i+1) Gram block
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[1] = g[0][0].clone();
    let mut k = 1usize;
    let mut kmax = 0usize;

    fn redi(h: &mut IntMatrix, lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        let two_l: BigInt = &lam[k][l] * 2;
        if two_l.abs() <= d[l + 1] {
            return;
        }
        let dl = &d[l + 1];
        let q = (&two_l + dl).div_floor(&(dl * BigInt::from(2)));
        row_sub_mul(h, k, l, &q);
        lam[k][l] -= &q * dl;
        for i in 0..l {
            let t = &q * &lam[l][i];
            lam[k][i] -= t;
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = inner(&h, k, j);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "Gram matrix is not positive definite");
                    d[k + 1] = u;
                }
            }
        }
        redi(&mut h, &mut lam, &d, k, k - 1);
        let lhs = &d[k + 1] * &d[k - 1] * 4;
        let rhs = &d[k] * &d[k] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
        if lhs < rhs {
            h.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in (k + 1)..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            for l in (0..k - 1).rev() {
                redi(&mut h, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    let red = gram_transform(g, &h);
    (h, red)
}

/// Fincke–Pohst enumeration of all integer vectors `x` with `x^T g x <= bound`
/// for a positive definite integer Gram matrix `g`.
///
/// The callback receives each vector (in the original coordinates) and its
/// exact value; returning `true` stops the enumeration early.
pub fn enumerate_short<F>(g: &IntMatrix, bound: &BigInt, mut visit: F)
where
    F: FnMut(&[BigInt], &BigInt) -> bool,
{
    let n = g.len();
    if bound.is_negative() {
        return;
    }
    let (u, red) = lll_gram(g);
    let (mu, b) = gso(&red);
    let bound_r = bigrat(bound);
    let mut y = vec![BigInt::zero(); n];
    let mut stop = false;
    descend(n, &mu, &b, &bound_r, &mut y, &u, g, &mut visit, &mut stop, n);
    fn descend<F: FnMut(&[BigInt], &BigInt) -> bool>(
        n: usize,
        mu: &RatMatrix,
        b: &[BigRational],
        remaining: &BigRational,
        y: &mut Vec<BigInt>,
        u: &IntMatrix,
        g: &IntMatrix,
        visit: &mut F,
        stop: &mut bool,
        level: usize,
    ) {
        if *stop {
            return;
        }
        if level == 0 {
            let x: Vec<BigInt> = (0..n).map(|j| (0..n).map(|i| &y[i] * &u[i][j]).sum()).collect();
            let val: BigInt = (0..n)
                .map(|i| (0..n).map(|j| &x[i] * &g[i][j] * &x[j]).sum::<BigInt>())
                .sum();
            if visit(&x, &val) {
                *stop = true;
            }
            return;
        }
        let i = level - 1;
        let mut center = BigRational::zero();
        for j in (i + 1)..n {
            if !y[j].is_zero() {
                center += &mu[j][i] * bigrat(&y[j]);
            }
        }
        // b_i (y_i + center)^2 <= remaining
        let t = remaining / &b[i];
        let r = bigrat(&(isqrt_floor_rational(&t) + BigInt::one()));
        let lo = ceil_rat(&(-&center - &r));
        let hi = floor_rat(&(-&center + &r));
        let mut yi = lo;
        while yi <= hi {
            let d = bigrat(&yi) + &center;
            let used = &b[i] * &d * &d;
            if used <= *remaining {
                y[i] = yi.clone();
                let rest = remaining - used;
                descend(n, mu, b, &rest, y, u, g, visit, stop, level - 1);
                if *stop {
                    return;
                }
            }
            yi += 1;
        }
        y[i] = BigInt::zero();
    }
}

/// Minimum nonzero value of `x^T g x` over integer `x`.
///
/// The first vector of an LLL-reduced basis bounds the search.
pub fn minimum(g: &IntMatrix) -> BigInt {
    let (_, red) = lll_gram(g);
    let start = (0..g.len()).map(|i| red[i][i].clone()).min().expect("nonempty form");
    let mut best = start.clone();
    enumerate_short(g, &start, |_, v| {
        if !v.is_zero() && *v < best {
            best = v.clone();
        }
        false
    });
    best
}

/// Collects every vector with `x^T g x <= bound`, sorted lexicographically.
pub fn short_vectors_gram(g: &IntMatrix, bound: &BigInt) -> Vec<(Vec<BigInt>, BigInt)> {
    let mut out = Vec::new();
    enumerate_short(g, bound, |x, v| {
        out.push((x.to_vec(), v.clone()));
        false
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let h = hnf_rows(im(&[&[2, 0], &[1, 3], &[0, 6]]));
        assert_eq!(h, im(&[&[1, 3], &[0, 6]]));
    }

    #[test]
    fn hnf_is_canonical_under_unimodular_rebasing() {
        let a = im(&[&[4, 1, 0], &[0, 3, 2], &[1, 1, 5]]);
        // r2 += r1, r3 += r1
        let c = im(&[&[4, 1, 0], &[4, 4, 2], &[5, 2, 5]]);
        // different covolume, different lattice
        let b = im(&[&[4, 1, 0], &[4, 4, 2], &[9, 3, 10]]);
        let ha = hnf_rows(a);
        assert_eq!(ha, hnf_rows(c));
        assert_ne!(ha, hnf_rows(b));
    }

    #[test]
    fn snf_of_cycle_laplacian() {
        // reduced Laplacian of a 5-cycle
        let l = im(&[&[2, -1, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]]);
        let (d, _) = smith_normal_form(&l);
        assert_eq!(d, vec![1, 1, 1, 5].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = im(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        let (d, u) = smith_normal_form(&a);
        assert_eq!(d, vec![1, 2, 12].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let det = determinant(&to_rational(&u));
        assert!(det == BigRational::one() || det == -BigRational::one());
    }

    #[test]
    fn solve_and_inverse() {
        let a = to_rational(&im(&[&[2, 1], &[1, 3]]));
        let x = solve(&a, &[bigrat(&BigInt::from(3)), bigrat(&BigInt::from(4))]).unwrap();
        assert_eq!(x, vec![BigRational::one(), BigRational::one()]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], BigRational::new(3.into(), 5.into()));
        assert!(solve(&to_rational(&im(&[&[1, 1], &[1, 1]])), &[BigRational::one(), BigRational::zero()]).is_none());
    }

    #[test]
    fn enumeration_counts_z2() {
        // x^2 + y^2 <= 5 has 21 integer points
        let g = im(&[&[1, 0], &[0, 1]]);
        assert_eq!(short_vectors_gram(&g, &BigInt::from(5)).len(), 21);
        // a skewed basis of the same lattice
        let g2 = im(&[&[1, 7], &[7, 50]]);
        assert_eq!(short_vectors_gram(&g2, &BigInt::from(5)).len(), 21);
    }
}
