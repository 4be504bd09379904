//! Dense integer matrices: Hermite and Smith normal forms, determinants,
//! characteristic polynomials and rational solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn vec_mul(v: &[BigInt], a: &Mat) -> Vec<BigInt> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![BigInt::zero(); m];
    for (x, row) in v.iter().zip(a) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn det(a: &Mat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Characteristic polynomial det(xI - A), coefficients constant term first.
/// Faddeev-LeVerrier; every division is exact over the integers.
pub fn charpoly(a: &Mat) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mul(a, &m);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    coeffs
}

fn row_combine(a: &mut [Vec<BigInt>], i: usize, j: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    // (row_i, row_j) <- (x r_i + y r_j, u r_i + v r_j)
    let ri = a[i].clone();
    let rj = a[j].clone();
    for c in 0..ri.len() {
        a[i][c] = x * &ri[c] + y * &rj[c];
        a[j][c] = u * &ri[c] + v * &rj[c];
    }
}

fn row_sub(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let s = a[src].clone();
    for (t, x) in a[target].iter_mut().zip(&s) {
        *t -= q * x;
    }
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U * a = H`, `U`
/// unimodular, and `H` upper triangular in echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hnf_with_transform(a: &Mat) -> (Mat, Mat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let e = h[r][c].extended_gcd(&h[i][c]);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let p = &h[i][c] / &g;
            let q = &h[r][c] / &g;
            let np = -p;
            row_combine(&mut h, r, i, &x, &y, &np, &q);
            row_combine(&mut u, r, i, &x, &y, &np, &q);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_sub(&mut h, i, r, &q);
            row_sub(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    (h, u)
}

pub fn hnf(a: &Mat) -> Mat {
    hnf_with_transform(a).0
}

/// Nonzero rows of the Hermite normal form.
pub fn hnf_basis(a: &Mat) -> Mat {
    hnf(a).into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Smith normal form `U * a * V = D` with `d_1 | d_2 | ...` nonnegative.
pub fn snf_with_transforms(a: &Mat) -> (Mat, Mat, Mat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: nonzero entry of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                if (&d[i][t] % &d[t][t]).is_zero() {
                    let q = &d[i][t] / &d[t][t];
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    continue;
                }
                let e = d[t][t].extended_gcd(&d[i][t]);
                let p = &d[i][t] / &e.gcd;
                let q = &d[t][t] / &e.gcd;
                let np = -p;
                row_combine(&mut d, t, i, &e.x, &e.y, &np, &q);
                row_combine(&mut u, t, i, &e.x, &e.y, &np, &q);
                changed = true;
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                if (&d[t][j] % &d[t][t]).is_zero() {
                    let q = &d[t][j] / &d[t][t];
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    continue;
                }
                let e = d[t][t].extended_gcd(&d[t][j]);
                let p = &d[t][j] / &e.gcd;
                let q = &d[t][t] / &e.gcd;
                let np = -p;
                col_combine(&mut d, t, j, &e.x, &e.y, &np, &q);
                col_combine(&mut v, t, j, &e.x, &e.y, &np, &q);
                changed = true;
            }
            if !changed {
                // divisibility of the rest of the block
                let mut fix = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&d[i][j] % &d[t][t]).is_zero() {
                            fix = Some(i);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        // add row i to row t and redo
                        let ri = d[i].clone();
                        for (x, y) in d[t].iter_mut().zip(&ri) {
                            *x += y;
                        }
                        let ui = u[i].clone();
                        for (x, y) in u[t].iter_mut().zip(&ui) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    (u, d, v)
}

fn swap_cols(a: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

fn col_sub(a: &mut Mat, target: usize, src: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let x = &r[src] * q;
        r[target] -= x;
    }
}

fn col_combine(a: &mut Mat, i: usize, j: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    for r in a.iter_mut() {
        let ci = r[i].clone();
        let cj = r[j].clone();
        r[i] = x * &ci + y * &cj;
        r[j] = u * &ci + v * &cj;
    }
}

/// Diagonal of the Smith form.
pub fn elementary_divisors(a: &Mat) -> Vec<BigInt> {
    let (_, d, _) = snf_with_transforms(a);
    let n = d.len().min(d.first().map_or(0, |r| r.len()));
    (0..n).map(|i| d[i][i].clone()).collect()
}

pub type QMat = Vec<Vec<BigRational>>;

pub fn to_rational(a: &Mat) -> QMat {
    a.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse_q(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a.clone();
    let mut inv: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let piv = m[c][c].clone();
        for j in 0..n {
            m[c][j] = &m[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..n {
                let a = &m[c][j] * &f;
                m[i][j] -= a;
                let b = &inv[c][j] * &f;
                inv[i][j] -= b;
            }
        }
    }
    Some(inv)
}

pub fn qvec_mul(v: &[BigRational], a: &QMat) -> Vec<BigRational> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![BigRational::zero(); m];
    for (x, row) in v.iter().zip(a) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

pub fn mul_q(a: &QMat, b: &QMat) -> QMat {
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![BigRational::zero(); m]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * &b[l][j];
            }
        }
    }
    out
}
