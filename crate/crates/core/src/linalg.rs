//! Exact dense linear algebra over any [`FieldElement`].
//!
//! Matrices are row-major `Vec<Vec<F>>`. Functions that may see empty
//! matrices take a prototype scalar to build zeros.

use crate::algebra::FieldElement;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: FieldElement>(proto: &F, rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![proto.zero_like(); cols]; rows]
}

pub fn identity<F: FieldElement>(proto: &F, n: usize) -> Matrix<F> {
    let mut m = zeros(proto, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = proto.one_like();
    }
    m
}

pub fn transpose<F: FieldElement>(m: &Matrix<F>, cols: usize) -> Matrix<F> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: FieldElement>(a: &Matrix<F>, b: &Matrix<F>, proto: &F) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(proto.zero_like(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: FieldElement>(a: &Matrix<F>, v: &[F], proto: &F) -> Vec<F> {
    a.iter().map(|row| dot(row, v, proto)).collect()
}

pub fn dot<F: FieldElement>(a: &[F], b: &[F], proto: &F) -> F {
    a.iter().zip(b).fold(proto.zero_like(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

pub fn add_vec<F: FieldElement>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<F: FieldElement>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<F: FieldElement>(c: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn is_zero_vec<F: FieldElement>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit_vec<F: FieldElement>(proto: &F, n: usize, i: usize) -> Vec<F> {
    let mut v = vec![proto.zero_like(); n];
    v[i] = proto.one_like();
    v
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: FieldElement>(m: &Matrix<F>, cols: usize) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        a[r] = scale_vec(&inv, &a[r]);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row = scale_vec(&f, &a[r]);
                a[i] = sub_vec(&a[i], &row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    (a, pivots)
}

pub fn rank<F: FieldElement>(m: &Matrix<F>, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace<F: FieldElement>(m: &Matrix<F>, cols: usize, proto: &F) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![proto.zero_like(); cols];
            v[f] = proto.one_like();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m v = b`, or `None` if the system is inconsistent.
pub fn solve<F: FieldElement>(m: &Matrix<F>, cols: usize, b: &[F], proto: &F) -> Option<Vec<F>> {
    let aug: Matrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut v = vec![proto.zero_like(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        v[pc] = row[cols].clone();
    }
    Some(v)
}

/// An independent basis of the span of `vectors`, in reduced form.
pub fn span_basis<F: FieldElement>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    rref(&vectors.to_vec(), dim).0
}

/// Coordinates of `v` with respect to the (independent) `basis`.
pub fn coordinates<F: FieldElement>(basis: &[Vec<F>], v: &[F], proto: &F) -> Option<Vec<F>> {
    let cols = basis.len();
    let m = transpose(&basis.to_vec(), v.len());
    let m = if cols == 0 {
        vec![Vec::new(); v.len()]
    } else {
        m
    };
    solve(&m, cols, v, proto)
}

pub fn in_span<F: FieldElement>(basis: &[Vec<F>], v: &[F], proto: &F) -> bool {
    coordinates(basis, v, proto).is_some()
}

/// True iff the vectors are linearly independent.
pub fn independent<F: FieldElement>(vectors: &[Vec<F>], dim: usize) -> bool {
    rank(&vectors.to_vec(), dim) == vectors.len()
}

/// Extends an independent list by standard vectors to a basis of `F^dim`,
/// returning only the added vectors.
pub fn complement<F: FieldElement>(basis: &[Vec<F>], dim: usize, proto: &F) -> Vec<Vec<F>> {
    let mut current = basis.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        let e = unit_vec(proto, dim, i);
        let mut trial = current.clone();
        trial.push(e.clone());
        if rank(&trial, dim) == trial.len() {
            current = trial;
            added.push(e);
        }
    }
    added
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersection<F: FieldElement>(
    a: &[Vec<F>],
    b: &[Vec<F>],
    dim: usize,
    proto: &F,
) -> Vec<Vec<F>> {
    let a = span_basis(a, dim);
    let b = span_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let cols = a.len() + b.len();
    let m: Matrix<F> = (0..dim)
        .map(|k| {
            a.iter()
                .map(|v| v[k].clone())
                .chain(b.iter().map(|v| -v[k].clone()))
                .collect()
        })
        .collect();
    let vecs: Vec<Vec<F>> = nullspace(&m, cols, proto)
        .into_iter()
        .map(|sol| {
            a.iter().zip(&sol).fold(vec![proto.zero_like(); dim], |acc, (v, c)| {
                add_vec(&acc, &scale_vec(c, v))
            })
        })
        .collect();
    span_basis(&vecs, dim)
}

pub fn inverse<F: FieldElement>(m: &Matrix<F>, proto: &F) -> Option<Matrix<F>> {
    let n = m.len();
    let aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(proto, n, i));
            r
        })
        .collect();
    if n == 0 {
        return Some(Vec::new());
    }
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// True iff `m^k = 0` for some `k` (checked at `k = n`).
pub fn is_nilpotent<F: FieldElement>(m: &Matrix<F>, proto: &F) -> bool {
    let n = m.len();
    let mut p = identity(proto, n);
    for _ in 0..n {
        p = mat_mul(&p, m, proto);
    }
    p.iter().all(|r| is_zero_vec(r))
}
