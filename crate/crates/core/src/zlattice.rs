//! Exact lattice arithmetic over the rationals and integers.
//!
//! Small dense matrices only (dimension at most 4 in practice): rational
//! Gaussian elimination, column Hermite form for Z-span bases, and an
//! integer diagonalization with tracked row transform for enumerating
//! finite lattice quotients.

use crate::field::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Solves `A x = b` exactly; `None` when inconsistent. `A` is given by rows
/// and need not be square; when the solution space is positive-dimensional
/// one solution (free variables zero) is returned.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let delta = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Exact inverse of a square rational matrix; `None` if singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let col = solve(a, &e)?;
        cols.push(col);
    }
    // cols[j] is the j-th column of the inverse; transpose into rows.
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            inv[i][j] = col[i].clone();
        }
    }
    // A singular matrix can still yield per-column solutions when columns of
    // the identity happen to lie in the range; verify A * inv = I.
    for i in 0..n {
        for j in 0..n {
            let mut s = Rational::zero();
            for k in 0..n {
                s = &s + &(&a[i][k] * &inv[k][j]);
            }
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            if s != expect {
                return None;
            }
        }
    }
    Some(inv)
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), k);
        for j in 0..m {
            let mut s = Rational::zero();
            for t in 0..k {
                s = &s + &(&a[i][t] * &b[t][j]);
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}

pub fn det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].recip();
        for j in c..n {
            m[c][j] = &m[c][j] * &inv;
        }
        for i in (c + 1)..n {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
    }
    d
}

/// Z-span of the given vectors, as a reduced basis (column Hermite form
/// computed on a common-denominator integer scaling; zero columns dropped).
pub fn zspan_basis(gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let dim = gens[0].len();
    let mut denom = BigInt::one();
    for g in gens {
        for x in g {
            denom = denom.lcm(x.denom());
        }
    }
    // Columns of an integer matrix, one per generator.
    let mut cols: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| x.numer() * (&denom / x.denom()))
                .collect()
        })
        .collect();
    column_echelon(&mut cols, dim);
    cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    cols.into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| Rational::new(x, denom.clone()))
                .collect()
        })
        .collect()
}

/// In-place column echelon form over Z (Hermite-style, using gcd steps).
fn column_echelon(cols: &mut [Vec<BigInt>], dim: usize) {
    let n = cols.len();
    let mut lead = 0usize;
    for row in 0..dim {
        if lead >= n {
            break;
        }
        loop {
            // Find a column with a nonzero entry in this row at or after `lead`.
            let Some(p) = (lead..n).find(|&j| !cols[j][row].is_zero()) else {
                break;
            };
            cols.swap(lead, p);
            // Eliminate the row entry from every later column by gcd steps.
            let mut again = false;
            for j in (lead + 1)..n {
                while !cols[j][row].is_zero() {
                    let q = &cols[j][row] / &cols[lead][row];
                    if !q.is_zero() {
                        for r in 0..dim {
                            let delta = &q * &cols[lead][r];
                            cols[j][r] = &cols[j][r] - &delta;
                        }
                    }
                    if cols[j][row].is_zero() {
                        break;
                    }
                    cols.swap(lead, j);
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if lead < n && !cols[lead][row].is_zero() {
            if cols[lead][row].is_negative() {
                for r in 0..dim {
                    cols[lead][r] = -cols[lead][r].clone();
                }
            }
            lead += 1;
        }
    }
}

/// Does the Z-span of `basis` (independent columns) contain `v`?
pub fn zspan_contains(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let dim = v.len();
    // Solve basis-matrix * c = v with columns as generators.
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| basis.iter().map(|c| c[r].clone()).collect())
        .collect();
    match solve(&rows, v) {
        None => false,
        Some(c) => c.iter().all(|x| x.denom().is_one()),
    }
}

/// Equality of two Z-spans by mutual membership of generators.
pub fn zspan_equal(gens_a: &[Vec<Rational>], gens_b: &[Vec<Rational>]) -> bool {
    let a = zspan_basis(gens_a);
    let b = zspan_basis(gens_b);
    gens_a.iter().all(|g| zspan_contains(&b, g))
        && gens_b.iter().all(|g| zspan_contains(&a, g))
}

/// Diagonalizes an integer matrix by row and column operations, returning
/// `(d, u)` with `u * a * v = diag(d)` for unimodular `u`, `v` (only `u` is
/// returned; the column transform is discarded). Entries of `d` are
/// non-negative; zeros mean rank deficiency.
pub fn diagonalize_with_row_transform(a: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // Bring a nonzero entry of minimal absolute value to (k, k).
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !m[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            m.swap(k, bi);
            u.swap(k, bi);
            for row in m.iter_mut() {
                row.swap(k, bj);
            }
            let mut dirty = false;
            for i in (k + 1)..rows {
                if !m[i][k].is_zero() {
                    let q = div_round(&m[i][k], &m[k][k]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let delta = &q * &m[k][j];
                            m[i][j] = &m[i][j] - &delta;
                        }
                        for j in 0..rows {
                            let delta = &q * &u[k][j];
                            u[i][j] = &u[i][j] - &delta;
                        }
                    }
                    if !m[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in (k + 1)..cols {
                if !m[k][j].is_zero() {
                    let q = div_round(&m[k][j], &m[k][k]);
                    if !q.is_zero() {
                        for row in m.iter_mut() {
                            let delta = &q * &row[k];
                            row[j] = &row[j] - &delta;
                        }
                    }
                    if !m[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
    }
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        d.push(m[k][k].abs());
    }
    (d, u)
}

/// Rounded integer division (nearest, ties toward zero), used to shrink
/// remainders fast in the diagonalization.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn rv(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn solve_and_invert() {
        let a = vec![rv(&[(2, 1), (1, 1)]), rv(&[(1, 1), (3, 1)])];
        let x = solve(&a, &rv(&[(5, 1), (10, 1)])).unwrap();
        assert_eq!(x, rv(&[(1, 1), (3, 1)]));
        let inv = invert(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        assert_eq!(prod[0], rv(&[(1, 1), (0, 1)]));
        assert_eq!(prod[1], rv(&[(0, 1), (1, 1)]));
        let singular = vec![rv(&[(1, 1), (2, 1)]), rv(&[(2, 1), (4, 1)])];
        assert!(invert(&singular).is_none());
        assert!(solve(&singular, &rv(&[(1, 1), (3, 1)])).is_none());
    }

    #[test]
    fn det_works() {
        let a = vec![rv(&[(2, 1), (1, 1)]), rv(&[(1, 1), (3, 1)])];
        assert_eq!(det(&a), rat(5, 1));
        let s = vec![rv(&[(1, 2), (1, 1)]), rv(&[(1, 1), (2, 1)])];
        assert_eq!(det(&s), rat(0, 1));
    }

    #[test]
    fn zspan_membership() {
        // Span of (1,0) and (1/2, 1/2): contains (0,1)? (0,1) = -1*(1,0) + 2*(1/2,1/2). Yes.
        let basis = zspan_basis(&[rv(&[(1, 1), (0, 1)]), rv(&[(1, 2), (1, 2)])]);
        assert!(zspan_contains(&basis, &rv(&[(0, 1), (1, 1)])));
        assert!(zspan_contains(&basis, &rv(&[(1, 2), (1, 2)])));
        assert!(!zspan_contains(&basis, &rv(&[(1, 4), (1, 4)])));
        assert!(!zspan_contains(&basis, &rv(&[(1, 3), (0, 1)])));
    }

    #[test]
    fn zspan_equality() {
        // <1, 1/2, 1/3> = <1/6> as subgroups of Q.
        assert!(zspan_equal(
            &[rv(&[(1, 1)]), rv(&[(1, 2)]), rv(&[(1, 3)])],
            &[rv(&[(1, 6)])]
        ));
        assert!(!zspan_equal(&[rv(&[(1, 2)])], &[rv(&[(1, 3)])]));
        // Rank-2 example in Q^2.
        assert!(zspan_equal(
            &[rv(&[(1, 1), (0, 1)]), rv(&[(0, 1), (1, 1)]), rv(&[(1, 1), (1, 1)])],
            &[rv(&[(1, 1), (1, 1)]), rv(&[(0, 1), (1, 1)])]
        ));
    }

    #[test]
    fn diagonalization_counts_quotient() {
        // Z^2 / span{(2,0),(0,3)} has order 6.
        let a = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
        ];
        let (d, _u) = diagonalize_with_row_transform(&a);
        let order: BigInt = d.iter().product();
        assert_eq!(order, BigInt::from(6));

        // A messier unimodular-ish case: |det| = 4.
        let a = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(-2), BigInt::from(1)],
        ];
        let (d, _u) = diagonalize_with_row_transform(&a);
        let order: BigInt = d.iter().product();
        assert_eq!(order, BigInt::from(4));
    }

    #[test]
    fn row_transform_is_unimodular() {
        let a = vec![
            vec![BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(2), BigInt::from(8)],
        ];
        let (_, u) = diagonalize_with_row_transform(&a);
        let ur: Vec<Vec<Rational>> = u
            .iter()
            .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
            .collect();
        assert_eq!(det(&ur).abs(), rat(1, 1));
    }
}
