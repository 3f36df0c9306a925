//! Reference answers computed by dense exact linear algebra, sharing nothing
//! with the library beyond `MPoly` construction.

#![allow(dead_code)]

use num_traits::{One, Zero};
use triangular::arith::Rational;
use triangular::MPoly;

/// Solves the square system `a x = b` by Gauss-Jordan elimination. `None`
/// when singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(a.iter().all(|row| row.len() == n), "square system");
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        b[col] *= &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
            let sub = &f * &b[col];
            b[r] -= sub;
        }
    }
    Some(b)
}

fn power(a: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

fn binom(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut r = Rational::one();
    for i in 0..k {
        r = r * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    r
}

/// `k`-th Taylor coefficient at `a` of `x^i`: `C(i, k) a^(i-k)`.
fn taylor_of_monomial(i: usize, k: usize, a: &Rational) -> Rational {
    if k > i {
        Rational::zero()
    } else {
        binom(i, k) * power(a, i - k)
    }
}

fn univariate(var: usize, coeffs: &[Rational]) -> MPoly {
    let terms: Vec<(Vec<u32>, Rational)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = vec![0; var];
            e[var - 1] = i as u32;
            (e, c.clone())
        })
        .collect();
    MPoly::from_terms(terms.iter().map(|(e, c)| (e.as_slice(), c.clone())))
}

fn distinct(values: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// The monic lexicographic triangular set through `points` (one or two
/// coordinates each, equal fibers), by solving for the tail coefficients.
pub fn lagrange_triangular(points: &[Vec<Rational>]) -> Vec<MPoly> {
    let n = points[0].len();
    assert!((1..=2).contains(&n));
    let xs = distinct(points.iter().map(|p| p[0].clone()));
    let d1 = xs.len();
    // sum_{i<d1} c_i a^i = -a^d1
    let a: Vec<Vec<Rational>> = xs
        .iter()
        .map(|x| (0..d1).map(|i| power(x, i)).collect())
        .collect();
    let b: Vec<Rational> = xs.iter().map(|x| -power(x, d1)).collect();
    let c = solve(a, b).expect("distinct abscissae");
    let mut out = vec![&univariate(1, &c) + &MPoly::var(1).pow(d1 as u32)];
    if n == 1 {
        return out;
    }

    let d2 = points.len() / d1;
    assert_eq!(d1 * d2, points.len(), "equal fibers");
    // unknowns c[i][j] for x2^i x1^j, i < d2, j < d1
    let idx = |i: usize, j: usize| i * d1 + j;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for p in points {
        let mut row = vec![Rational::zero(); d1 * d2];
        for i in 0..d2 {
            for j in 0..d1 {
                row[idx(i, j)] = power(&p[0], j) * power(&p[1], i);
            }
        }
        a.push(row);
        b.push(-power(&p[1], d2));
    }
    let c = solve(a, b).expect("points in general position for the lex basis");
    let mut terms: Vec<(Vec<u32>, Rational)> = vec![(vec![0, d2 as u32], Rational::one())];
    for i in 0..d2 {
        for j in 0..d1 {
            terms.push((vec![j as u32, i as u32], c[idx(i, j)].clone()));
        }
    }
    out.push(MPoly::from_terms(
        terms.iter().map(|(e, c)| (e.as_slice(), c.clone())),
    ));
    out
}

/// Rows `k < delta` of the confluent Vandermonde matrix at `a` with `d`
/// columns: Taylor coefficients of `1, x, .., x^(d-1)`.
fn hermite_rows(a: &Rational, delta: u32, d: usize) -> Vec<Vec<Rational>> {
    (0..delta as usize)
        .map(|k| (0..d).map(|i| taylor_of_monomial(i, k, a)).collect())
        .collect()
}

/// `prod (x1 - a)^delta` in monic form, found from the vanishing of its
/// low Taylor coefficients at every root.
pub fn hermite_modulus(roots: &[(Rational, u32)]) -> MPoly {
    let d: usize = roots.iter().map(|r| r.1 as usize).sum();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (root, delta) in roots {
        a.extend(hermite_rows(root, *delta, d));
        b.extend((0..*delta as usize).map(|k| -taylor_of_monomial(d, k, root)));
    }
    let c = solve(a, b).expect("distinct roots");
    &univariate(1, &c) + &MPoly::var(1).pow(d as u32)
}

/// The Hermite basis idempotent of `roots[which]`: degree below `d`, Taylor
/// expansion `1 + O((x - a)^delta)` at its own root and `O((x - b)^delta_b)`
/// at the others.
pub fn hermite_idempotent(roots: &[(Rational, u32)], which: usize) -> MPoly {
    let d: usize = roots.iter().map(|r| r.1 as usize).sum();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, (root, delta)) in roots.iter().enumerate() {
        a.extend(hermite_rows(root, *delta, d));
        b.extend((0..*delta as usize).map(|k| {
            if j == which && k == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
    }
    univariate(1, &solve(a, b).expect("distinct roots"))
}
