//! Dense exact integer and rational matrix routines.
//!
//! Matrices are row-major `Vec<Vec<Integer>>` with an explicit column count so
//! that matrices with zero rows are still well-shaped.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntMatrix = Vec<Vec<Integer>>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn ints(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Integer::one() } else { Integer::zero() }).collect())
        .collect()
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Integer]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn gcd_vec(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Divides by the coordinate gcd. The zero vector is returned unchanged.
pub fn primitive_vec(v: &[Integer]) -> Vec<Integer> {
    let g = gcd_vec(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and returns the primitive integer vector
/// pointing in the same direction.
pub fn primitive_from_rational(v: &[Rational]) -> Vec<Integer> {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Integer> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive_vec(&scaled)
}

pub fn sup_norm(v: &[Integer]) -> Integer {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

pub fn l1_norm(v: &[Integer]) -> Integer {
    v.iter().map(|x| x.abs()).sum()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, b_cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn vec_mat(v: &[Integer], m: &IntMatrix, cols: usize) -> Vec<Integer> {
    (0..cols).map(|j| v.iter().zip(m).map(|(x, row)| x * &row[j]).sum()).collect()
}

pub fn transpose(a: &IntMatrix, cols: usize) -> IntMatrix {
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.d.len().min(self.v.len())).map(|i| self.d[i][i].clone()).collect()
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

// row[dst] += q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &Integer) {
    let (s, d) = if src < dst {
        let (a, b) = m.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = m.split_at_mut(src);
        (&b[0], &mut a[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x += q * y;
    }
}

// col[dst] += q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &Integer) {
    for row in m.iter_mut() {
        let add = q * &row[src];
        row[dst] += add;
    }
}

/// Smith normal form `U·A·V = D` with unimodular `U`, `V` and `d_i | d_{i+1}`.
pub fn smith_normal_form(a: &IntMatrix, ncols: usize) -> Snf {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = -d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = -d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = Integer::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Snf { u, d, v, rank: t }
}

pub fn rank(a: &IntMatrix, ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..ncols {
                let sub = &f * &m[r][j];
                m[i][j] -= sub;
            }
        }
        r += 1;
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IntMatrix) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::one();
    }
    let mut m = a.clone();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Integer::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Inverse of a square matrix over the rationals.
pub fn inverse_rational(a: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().cloned().map(Rational::from_integer).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..2 * n {
                let sub = &f * &m[c][j];
                m[i][j] -= sub;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(a: &IntMatrix) -> IntMatrix {
    inverse_rational(a)
        .expect("unimodular matrix is invertible")
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
        .collect()
}

/// Row-style Hermite normal form of the row lattice; zero rows are dropped.
pub fn hermite_rows(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let mut m = rows.clone();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    m.swap(r, p);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = -m[i][c].div_floor(&m[r][c]);
                row_axpy(&mut m, i, r, &q);
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = -m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                row_axpy(&mut m, i, r, &q);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Basis (rows, in Hermite form) of the saturated lattice `span_Q(rows) ∩ Z^n`.
pub fn saturated_span(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let snf = smith_normal_form(rows, ncols);
    let vinv = inverse_unimodular(&snf.v);
    hermite_rows(&vinv[..snf.rank].to_vec(), ncols)
}

/// Basis (rows, in Hermite form) of `{x ∈ Z^n : rows · x = 0}`.
pub fn kernel(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    let snf = smith_normal_form(rows, ncols);
    let vt = transpose(&snf.v, ncols);
    hermite_rows(&vt[snf.rank..].to_vec(), ncols)
}

/// Integer coefficients `c` with `c · basis == v`, if they exist.
pub fn coords_in_row_lattice(basis: &IntMatrix, ncols: usize, v: &[Integer]) -> Option<Vec<Integer>> {
    let snf = smith_normal_form(basis, ncols);
    // c·U⁻¹·D = v·V
    let w = vec_mat(v, &snf.v, ncols);
    let mut z = vec![Integer::zero(); basis.len()];
    for (j, wj) in w.iter().enumerate() {
        if j < snf.rank {
            let dj = &snf.d[j][j];
            if !wj.is_multiple_of(dj) {
                return None;
            }
            z[j] = wj / dj;
        } else if !wj.is_zero() {
            return None;
        }
    }
    Some(vec_mat(&z, &snf.u, basis.len()))
}

/// Rational coefficients `c` with `c · basis == v` for linearly independent rows.
pub fn rational_coords(basis: &IntMatrix, ncols: usize, v: &[Integer]) -> Option<Vec<Rational>> {
    // Solve via the normal equations (B Bᵀ) c = B v.
    let k = basis.len();
    let gram: IntMatrix = basis.iter().map(|r| basis.iter().map(|s| dot(r, s)).collect()).collect();
    let rhs: Vec<Integer> = basis.iter().map(|r| dot(r, v)).collect();
    let inv = inverse_rational(&gram)?;
    let c: Vec<Rational> = (0..k)
        .map(|i| (0..k).map(|j| &inv[i][j] * Rational::from_integer(rhs[j].clone())).sum())
        .collect();
    let back: Vec<Rational> = (0..ncols)
        .map(|j| (0..k).map(|i| &c[i] * Rational::from_integer(basis[i][j].clone())).sum())
        .collect();
    let exact = back.iter().zip(v).all(|(x, y)| *x == Rational::from_integer(y.clone()));
    exact.then_some(c)
}
