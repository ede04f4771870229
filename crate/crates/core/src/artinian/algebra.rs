//! Commutative finite-dimensional algebras given by structure constants.

use crate::algebra::FieldElement;
use crate::linalg::{self, Matrix};

use super::ArtinianError;

/// `table[i][j]` holds the coordinates of `e_i * e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra<F: FieldElement> {
    dim: usize,
    table: Vec<Vec<Vec<F>>>,
    unit: Vec<F>,
    proto: F,
}

/// Residue data of a local algebra whose residue field is the base field.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalData<F: FieldElement> {
    /// The residue map on basis vectors, `e_i -> lambda_i`.
    pub residues: Vec<F>,
    /// A basis of the maximal ideal, `e_i - lambda_i * 1` reduced.
    pub maximal_ideal: Vec<Vec<F>>,
}

impl<F: FieldElement> FiniteAlgebra<F> {
    /// Validates commutativity, associativity and the unit on all basis
    /// elements.
    pub fn new(table: Vec<Vec<Vec<F>>>, unit: Vec<F>, proto: &F) -> Result<Self, ArtinianError> {
        let dim = unit.len();
        if table.len() != dim
            || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(ArtinianError::Shape("structure constants must be d x d x d".into()));
        }
        let alg = FiniteAlgebra {
            dim,
            table,
            unit,
            proto: proto.zero_like(),
        };
        for i in 0..dim {
            for j in 0..dim {
                if alg.table[i][j] != alg.table[j][i] {
                    return Err(ArtinianError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..dim {
            let ei = alg.basis(i);
            if alg.mul(&alg.unit, &ei) != ei {
                return Err(ArtinianError::BadUnit(i));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = alg.mul(&alg.table[i][j], &alg.basis(k));
                    let rhs = alg.mul(&ei, &alg.table[j][k]);
                    if lhs != rhs {
                        return Err(ArtinianError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The algebra built from a multiplication rule on basis indices.
    pub fn from_rule(
        dim: usize,
        unit: Vec<F>,
        proto: &F,
        rule: impl Fn(usize, usize) -> Vec<F>,
    ) -> Result<Self, ArtinianError> {
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| rule(i, j)).collect())
            .collect();
        Self::new(table, unit, proto)
    }

    /// `F[t]/(t^n)` in the basis `1, t, ..., t^(n-1)`.
    pub fn truncated(proto: &F, n: usize) -> Self {
        Self::from_rule(n, linalg::unit_vec(proto, n, 0), proto, |i, j| {
            let mut v = vec![proto.zero_like(); n];
            if i + j < n {
                v[i + j] = proto.one_like();
            }
            v
        })
        .expect("truncated polynomial algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn proto(&self) -> &F {
        &self.proto
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn table(&self) -> &Vec<Vec<Vec<F>>> {
        &self.table
    }

    pub fn zero_vec(&self) -> Vec<F> {
        vec![self.proto.zero_like(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        linalg::unit_vec(&self.proto, self.dim, i)
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.clone() * bj.clone();
                out = linalg::add_vec(&out, &linalg::scale_vec(&c, &self.table[i][j]));
            }
        }
        out
    }

    pub fn pow(&self, a: &[F], k: u32) -> Vec<F> {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of `x -> a x`; column `j` is `a * e_j`.
    pub fn mul_matrix(&self, a: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        linalg::transpose(&cols, self.dim)
    }

    /// Residue field data when the algebra is local with residue field `F`,
    /// otherwise `None`.
    pub fn local_data(&self) -> Option<LocalData<F>> {
        if self.dim == 0 {
            return None;
        }
        let mut residues = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            residues.push(unique_eigenvalue(&self.mul_matrix(&self.basis(i)), &self.proto)?);
        }
        let vectors: Vec<Vec<F>> = (0..self.dim)
            .map(|i| linalg::sub_vec(&self.basis(i), &linalg::scale_vec(&residues[i], &self.unit)))
            .collect();
        let maximal_ideal = linalg::span_basis(&vectors, self.dim);
        if maximal_ideal.len() + 1 != self.dim {
            return None;
        }
        Some(LocalData {
            residues,
            maximal_ideal,
        })
    }

    pub fn is_local(&self) -> bool {
        self.local_data().is_some()
    }

    /// Length as a module over itself; only defined for local algebras with
    /// residue field `F`.
    pub fn length(&self) -> Result<usize, ArtinianError> {
        self.local_data().map(|_| self.dim).ok_or(ArtinianError::NotLocal)
    }

    /// The subalgebra spanned by `basis` (which must contain the unit and be
    /// closed), as an algebra in its own right in the given basis.
    pub fn subalgebra(&self, basis: &[Vec<F>]) -> Result<FiniteAlgebra<F>, ArtinianError> {
        if !linalg::independent(basis, self.dim) {
            return Err(ArtinianError::NotSubalgebra("basis is not independent".into()));
        }
        let coords = |v: &[F]| linalg::coordinates(basis, v, &self.proto);
        let unit = coords(&self.unit)
            .ok_or_else(|| ArtinianError::NotSubalgebra("does not contain 1".into()))?;
        let mut table = Vec::with_capacity(basis.len());
        for (i, a) in basis.iter().enumerate() {
            let mut row = Vec::with_capacity(basis.len());
            for (j, b) in basis.iter().enumerate() {
                row.push(coords(&self.mul(a, b)).ok_or_else(|| {
                    ArtinianError::NotSubalgebra(format!(
                        "product of basis vectors {i} and {j} leaves the span"
                    ))
                })?);
            }
            table.push(row);
        }
        FiniteAlgebra::new(table, unit, &self.proto)
    }

    /// Smallest subalgebra containing `1` and `gens`, as a reduced basis.
    pub fn closure(&self, gens: &[Vec<F>]) -> Vec<Vec<F>> {
        let mut span = {
            let mut v = gens.to_vec();
            v.push(self.unit.clone());
            linalg::span_basis(&v, self.dim)
        };
        loop {
            let mut next = span.clone();
            for a in &span {
                for b in &span {
                    next.push(self.mul(a, b));
                }
            }
            let next = linalg::span_basis(&next, self.dim);
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    /// The direct product of algebras, with block-diagonal structure.
    pub fn product(factors: &[FiniteAlgebra<F>], proto: &F) -> Result<Self, ArtinianError> {
        let dim: usize = factors.iter().map(|f| f.dim).sum();
        let mut offsets = Vec::new();
        let mut acc = 0;
        for f in factors {
            offsets.push(acc);
            acc += f.dim;
        }
        let locate = |i: usize| {
            let k = offsets.iter().rposition(|&o| o <= i).unwrap();
            (k, i - offsets[k])
        };
        let mut unit = vec![proto.zero_like(); dim];
        for (k, f) in factors.iter().enumerate() {
            for (i, u) in f.unit.iter().enumerate() {
                unit[offsets[k] + i] = u.clone();
            }
        }
        Self::from_rule(dim, unit, proto, |i, j| {
            let mut out = vec![proto.zero_like(); dim];
            let (ki, li) = locate(i);
            let (kj, lj) = locate(j);
            if ki == kj {
                for (t, c) in factors[ki].table[li][lj].iter().enumerate() {
                    out[offsets[ki] + t] = c.clone();
                }
            }
            out
        })
    }
}

/// `lambda` with `m - lambda` nilpotent, if it exists in `F`.
pub(crate) fn unique_eigenvalue<F: FieldElement>(m: &Matrix<F>, proto: &F) -> Option<F> {
    let n = m.len();
    let cp = charpoly(m, proto);
    // (t - l)^n = (t^q - l^q)^(n/q) with q the largest power of p dividing n;
    // the coefficient of t^(n-q) is -(n/q) l^q.
    let p = proto.characteristic();
    let mut q = 1usize;
    let mut s = 0;
    if p > 0 {
        while n % (q * p as usize) == 0 {
            q *= p as usize;
            s += 1;
        }
    }
    let mult = proto.from_i64_like((n / q) as i64);
    let lq = (-cp[n - q].clone()).checked_div(&mult)?;
    let mut lambda = lq;
    for _ in 0..s {
        lambda = lambda.pth_root()?;
    }
    let shifted: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| if i == j { v.clone() - lambda.clone() } else { v.clone() })
                .collect()
        })
        .collect();
    linalg::is_nilpotent(&shifted, proto).then_some(lambda)
}

/// Characteristic polynomial `det(t - m)` via Hessenberg reduction, valid in
/// every characteristic. Coefficients ascending, monic of degree `n`.
pub fn charpoly<F: FieldElement>(m: &Matrix<F>, proto: &F) -> Vec<F> {
    let n = m.len();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(i) = (pivot_row..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if i != pivot_row {
            h.swap(i, pivot_row);
            for row in h.iter_mut() {
                row.swap(i, pivot_row);
            }
        }
        let t = h[pivot_row][col].clone();
        for i in pivot_row + 1..n {
            let u = h[i][col].checked_div(&t).expect("nonzero pivot");
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h[pivot_row][j].clone() * u.clone();
                h[i][j] = h[i][j].clone() - v;
            }
            for row in h.iter_mut() {
                let v = row[i].clone() * u.clone();
                row[pivot_row] = row[pivot_row].clone() + v;
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    let zero = proto.zero_like();
    let one = proto.one_like();
    let mut polys: Vec<Vec<F>> = vec![vec![one.clone()]];
    let times_t_minus = |p: &Vec<F>, c: &F| {
        let mut out = vec![zero.clone(); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            out[k + 1] = out[k + 1].clone() + a.clone();
            out[k] = out[k].clone() - a.clone() * c.clone();
        }
        out
    };
    for k in 0..n {
        let mut next = times_t_minus(&polys[k], &h[k][k]);
        let mut t = one.clone();
        for i in 1..=k {
            t = t * h[k - i + 1][k - i].clone();
            let coeff = t.clone() * h[k - i][k].clone();
            for (d, a) in polys[k - i].iter().enumerate() {
                next[d] = next[d].clone() - coeff.clone() * a.clone();
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, Scalar};

    pub(crate) fn truncated(field: BaseField, n: usize) -> FiniteAlgebra<Scalar> {
        FiniteAlgebra::truncated(&field.zero(), n)
    }

    #[test]
    fn charpoly_matches_determinant() {
        let q = BaseField::rationals();
        let m: Matrix<Scalar> = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
            .iter()
            .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
            .collect();
        let cp = charpoly(&m, &q.zero());
        // t^3 - 9 t^2 + 24 t - 18
        let want: Vec<Scalar> = [-18, 24, -9, 1].iter().map(|&v| q.from_i64(v)).collect();
        assert_eq!(cp, want);
    }

    #[test]
    fn truncated_polynomial_ring_is_local() {
        for char in [0, 2, 3] {
            let f = BaseField::new(char).unwrap();
            let a = truncated(f, 4);
            let ld = a.local_data().unwrap();
            assert_eq!(ld.maximal_ideal.len(), 3);
            assert_eq!(a.length().unwrap(), 4);
        }
    }

    #[test]
    fn split_product_is_not_local() {
        let f = BaseField::prime(2).unwrap();
        let k = truncated(f, 1);
        let kk = FiniteAlgebra::product(&[k.clone(), k], &f.zero()).unwrap();
        assert!(!kk.is_local());
        assert_eq!(kk.length(), Err(ArtinianError::NotLocal));
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let q = BaseField::rationals();
        let proto = q.zero();
        let noncomm = FiniteAlgebra::new(
            vec![
                vec![vec![q.one(), q.zero()], vec![q.zero(), q.one()]],
                vec![vec![q.zero(), q.zero()], vec![q.zero(), q.zero()]],
            ],
            vec![q.one(), q.zero()],
            &proto,
        );
        assert!(matches!(noncomm, Err(ArtinianError::NotCommutative(0, 1))));
    }
}
