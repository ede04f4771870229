//! Finite modules over a [`FiniteAlgebra`], given by one action matrix per
//! algebra basis vector.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FieldElement;
use crate::linalg::{self, Matrix};

use super::algebra::FiniteAlgebra;
use super::ArtinianError;

#[derive(Clone, Debug)]
pub struct FiniteModule<F: FieldElement> {
    algebra: Arc<FiniteAlgebra<F>>,
    dim: usize,
    /// `action[i]` is the matrix of `v -> e_i v`.
    action: Vec<Matrix<F>>,
}

impl<F: FieldElement> FiniteModule<F> {
    /// Checks that the unit acts as the identity and that the action is
    /// multiplicative on basis elements.
    pub fn new(
        algebra: Arc<FiniteAlgebra<F>>,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, ArtinianError> {
        if action.len() != algebra.dim()
            || action
                .iter()
                .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(ArtinianError::Shape("one m x m matrix per basis vector".into()));
        }
        let module = FiniteModule {
            algebra,
            dim,
            action,
        };
        let proto = module.proto().clone();
        if module.act_matrix(module.algebra.unit()) != linalg::identity(&proto, dim) {
            return Err(ArtinianError::InvalidAction("unit does not act as identity".into()));
        }
        let a = module.algebra.clone();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = linalg::mat_mul(&module.action[i], &module.action[j], &proto);
                let rhs = module.act_matrix(&a.table()[i][j]);
                if lhs != rhs {
                    return Err(ArtinianError::InvalidAction(format!(
                        "action of e_{i} e_{j} is not the product of actions"
                    )));
                }
            }
        }
        Ok(module)
    }

    /// The algebra acting on itself.
    pub fn regular(algebra: Arc<FiniteAlgebra<F>>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.mul_matrix(&algebra.basis(i)))
            .collect();
        FiniteModule {
            dim: algebra.dim(),
            algebra,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn proto(&self) -> &F {
        self.algebra.proto()
    }

    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Matrix of `v -> a v` for an algebra element `a`.
    pub fn act_matrix(&self, a: &[F]) -> Matrix<F> {
        let proto = self.proto();
        let mut out = linalg::zeros(proto, self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                *orow = linalg::add_vec(orow, &linalg::scale_vec(c, mrow));
            }
        }
        out
    }

    pub fn act(&self, a: &[F], v: &[F]) -> Vec<F> {
        linalg::mat_vec(&self.act_matrix(a), v, self.proto())
    }

    /// Length over a local algebra with residue field `F`, i.e. `dim_F M`.
    pub fn length(&self) -> Result<usize, ArtinianError> {
        if self.algebra.is_local() {
            Ok(self.dim)
        } else {
            Err(ArtinianError::NotLocal)
        }
    }

    /// `Hom_F(M, F)` with `(a.l)(v) = l(a v)`: the transposed action.
    pub fn dual_module(&self) -> Self {
        FiniteModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self
                .action
                .iter()
                .map(|m| linalg::transpose(m, self.dim))
                .collect(),
        }
    }

    /// `{v : m v = 0}` for the maximal ideal `m`.
    pub fn socle(&self) -> Result<Vec<Vec<F>>, ArtinianError> {
        let ld = self.algebra.local_data().ok_or(ArtinianError::NotLocal)?;
        let stacked: Matrix<F> = ld
            .maximal_ideal
            .iter()
            .flat_map(|a| self.act_matrix(a))
            .collect();
        Ok(linalg::nullspace(&stacked, self.dim, self.proto()))
    }

    /// `m M`, the image of the maximal ideal.
    pub fn radical_image(&self) -> Result<Vec<Vec<F>>, ArtinianError> {
        let ld = self.algebra.local_data().ok_or(ArtinianError::NotLocal)?;
        let mut vecs = Vec::new();
        for a in &ld.maximal_ideal {
            let m = self.act_matrix(a);
            vecs.extend(linalg::transpose(&m, self.dim));
        }
        Ok(linalg::span_basis(&vecs, self.dim))
    }

    /// The ideal `{a : a M = 0}` as vectors of the algebra.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        let d = self.algebra.dim();
        // Row (r, c) of the system lists the (r, c) entry of each e_i action.
        let mut rows = Vec::with_capacity(self.dim * self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                rows.push((0..d).map(|i| self.action[i][r][c].clone()).collect());
            }
        }
        linalg::nullspace(&rows, d, self.proto())
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().is_empty()
    }

    /// True iff `M ≅ A`: equal length, `M / mM` one-dimensional, and a
    /// generator `g` with `a -> a g` injective.
    pub fn is_free_rank_one(&self) -> Result<bool, ArtinianError> {
        if self.dim != self.algebra.dim() {
            return Ok(false);
        }
        let rad = self.radical_image()?;
        if rad.len() + 1 != self.dim {
            return Ok(false);
        }
        Ok(self.free_generator()?.is_some())
    }

    /// A vector `g` with `A -> M, a -> a g` bijective, when one exists.
    pub fn free_generator(&self) -> Result<Option<Vec<F>>, ArtinianError> {
        let rad = self.radical_image()?;
        let Some(g) = linalg::complement(&rad, self.dim, self.proto()).into_iter().next() else {
            return Ok(None);
        };
        let images: Vec<Vec<F>> = (0..self.algebra.dim())
            .map(|i| linalg::mat_vec(&self.action[i], &g, self.proto()))
            .collect();
        Ok((linalg::rank(&images, self.dim) == self.algebra.dim() && self.dim == self.algebra.dim())
            .then_some(g))
    }

    /// The submodule spanned by `vectors` is closed under the action.
    pub fn is_submodule(&self, vectors: &[Vec<F>]) -> bool {
        self.action.iter().all(|m| {
            vectors
                .iter()
                .all(|v| linalg::in_span(vectors, &linalg::mat_vec(m, v, self.proto()), self.proto()))
        })
    }

    /// `M / N` in the basis of standard vectors complementing `N`.
    pub fn quotient(&self, sub: &[Vec<F>]) -> Result<Self, ArtinianError> {
        let sub = linalg::span_basis(sub, self.dim);
        if !self.is_submodule(&sub) {
            return Err(ArtinianError::InvalidAction("not a submodule".into()));
        }
        let comp = linalg::complement(&sub, self.dim, self.proto());
        let mut full = comp.clone();
        full.extend(sub.iter().cloned());
        let q = comp.len();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<F>> = comp
                    .iter()
                    .map(|v| {
                        let img = linalg::mat_vec(m, v, self.proto());
                        let c = linalg::coordinates(&full, &img, self.proto()).expect("full basis");
                        c[..q].to_vec()
                    })
                    .collect();
                linalg::transpose(&cols, q)
            })
            .collect();
        Ok(FiniteModule {
            algebra: self.algebra.clone(),
            dim: q,
            action,
        })
    }

    /// The submodule spanned by `sub`, in that basis.
    pub fn submodule(&self, sub: &[Vec<F>]) -> Result<Self, ArtinianError> {
        let sub = linalg::span_basis(sub, self.dim);
        if !self.is_submodule(&sub) {
            return Err(ArtinianError::InvalidAction("not a submodule".into()));
        }
        let k = sub.len();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<F>> = sub
                    .iter()
                    .map(|v| {
                        linalg::coordinates(&sub, &linalg::mat_vec(m, v, self.proto()), self.proto())
                            .expect("closed")
                    })
                    .collect();
                linalg::transpose(&cols, k)
            })
            .collect();
        Ok(FiniteModule {
            algebra: self.algebra.clone(),
            dim: k,
            action,
        })
    }

    /// Restriction of scalars along the inclusion of `sub` (given by the
    /// images of its basis vectors in this module's algebra).
    pub fn restrict(
        &self,
        sub: Arc<FiniteAlgebra<F>>,
        inclusion: &[Vec<F>],
    ) -> Result<Self, ArtinianError> {
        let action = inclusion.iter().map(|b| self.act_matrix(b)).collect();
        FiniteModule::new(sub, self.dim, action)
    }

    /// An equivariant isomorphism `self -> other` as a matrix, if one exists.
    ///
    /// The equivariant maps form a subspace `S`. Over a small prime field
    /// every element of `S` is tried; otherwise a fixed-seed random search
    /// over integer combinations is used, which finds an invertible element
    /// with high probability whenever one exists.
    pub fn isomorphism_to(&self, other: &Self) -> Option<Matrix<F>> {
        let n = self.dim;
        if n != other.dim || self.action.len() != other.action.len() {
            return None;
        }
        let proto = self.proto().clone();
        if n == 0 {
            return Some(Vec::new());
        }
        // Unknown X (n x n, row-major index r*n+c) with X A_i = B_i X.
        let mut rows: Matrix<F> = Vec::new();
        for (a, b) in self.action.iter().zip(&other.action) {
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![proto.zero_like(); n * n];
                    for k in 0..n {
                        // (X A)[r][c] = sum_k X[r][k] A[k][c]
                        row[r * n + k] = row[r * n + k].clone() + a[k][c].clone();
                        // (B X)[r][c] = sum_k B[r][k] X[k][c]
                        row[k * n + c] = row[k * n + c].clone() - b[r][k].clone();
                    }
                    rows.push(row);
                }
            }
        }
        let space = linalg::nullspace(&rows, n * n, &proto);
        if space.is_empty() {
            return None;
        }
        let as_matrix = |v: &[F]| -> Matrix<F> { v.chunks(n).map(|c| c.to_vec()).collect() };
        let combine = |coeffs: &[F]| -> Vec<F> {
            space.iter().zip(coeffs).fold(vec![proto.zero_like(); n * n], |acc, (v, c)| {
                linalg::add_vec(&acc, &linalg::scale_vec(c, v))
            })
        };
        let try_vec = |v: Vec<F>| {
            let m = as_matrix(&v);
            linalg::inverse(&m, &proto).map(|_| m)
        };
        for v in &space {
            if let Some(m) = try_vec(v.clone()) {
                return Some(m);
            }
        }
        let p = proto.characteristic();
        let k = space.len();
        if p > 0 && (k as f64) * (p as f64).ln() <= (4096f64).ln() {
            let total = p.pow(k as u32);
            for idx in 1..total {
                let mut rest = idx;
                let coeffs: Vec<F> = (0..k)
                    .map(|_| {
                        let digit = rest % p;
                        rest /= p;
                        proto.from_i64_like(digit as i64)
                    })
                    .collect();
                if let Some(m) = try_vec(combine(&coeffs)) {
                    return Some(m);
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x150_0000 + k as u64);
        for _ in 0..64 {
            let coeffs: Vec<F> = (0..k)
                .map(|_| proto.from_i64_like(rng.gen_range(-1000..=1000)))
                .collect();
            if let Some(m) = try_vec(combine(&coeffs)) {
                return Some(m);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// The length `n^2 + 1` algebra `{c I + B}` of `2n x 2n` matrices with `B`
/// supported in the top right `n x n` block, acting faithfully on `F^{2n}`.
pub fn matrix_counterexample<F: FieldElement>(
    n: usize,
    proto: &F,
) -> Result<(Arc<FiniteAlgebra<F>>, FiniteModule<F>), ArtinianError> {
    if n == 0 {
        return Err(ArtinianError::Shape("n must be at least 1".into()));
    }
    let d = n * n + 1;
    // Basis: identity, then E_(i, n+j) for i, j < n in row-major order.
    let alg = FiniteAlgebra::from_rule(d, linalg::unit_vec(proto, d, 0), proto, |a, b| {
        match (a, b) {
            (0, k) | (k, 0) => linalg::unit_vec(proto, d, k),
            _ => vec![proto.zero_like(); d],
        }
    })?;
    let alg = Arc::new(alg);
    let m = 2 * n;
    let action = (0..d)
        .map(|a| {
            if a == 0 {
                return linalg::identity(proto, m);
            }
            let (i, j) = ((a - 1) / n, (a - 1) % n);
            let mut e = linalg::zeros(proto, m, m);
            e[i][n + j] = proto.one_like();
            e
        })
        .collect();
    let module = FiniteModule::new(alg.clone(), m, action)?;
    Ok((alg, module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, Scalar};

    fn truncated(field: BaseField, n: usize) -> Arc<FiniteAlgebra<Scalar>> {
        let proto = field.zero();
        Arc::new(
            FiniteAlgebra::from_rule(n, linalg::unit_vec(&proto, n, 0), &proto, |i, j| {
                let mut v = vec![field.zero(); n];
                if i + j < n {
                    v[i + j] = field.one();
                }
                v
            })
            .unwrap(),
        )
    }

    #[test]
    fn socle_of_truncated_ring() {
        let q = BaseField::rationals();
        let m = FiniteModule::regular(truncated(q, 3));
        let soc = m.socle().unwrap();
        assert_eq!(soc, vec![vec![q.zero(), q.zero(), q.one()]]);
    }

    #[test]
    fn dual_of_regular_is_regular() {
        let q = BaseField::rationals();
        let m = FiniteModule::regular(truncated(q, 2));
        let d = m.dual_module();
        assert!(d.is_isomorphic(&m));
        assert!(d.is_free_rank_one().unwrap());
    }

    #[test]
    fn residue_field_is_not_free() {
        let q = BaseField::rationals();
        let a = truncated(q, 2);
        let m = FiniteModule::regular(a.clone());
        let t = vec![vec![q.zero(), q.one()]];
        let k = m.quotient(&t).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(!k.is_free_rank_one().unwrap());
        assert_eq!(k.annihilator(), t);
        assert!(!k.is_faithful());
        assert!(m.is_faithful());
    }

    #[test]
    fn counterexample_lengths() {
        let q = BaseField::rationals();
        for (n, la, lm) in [(1, 2, 2), (2, 5, 4), (3, 10, 6)] {
            let (a, m) = matrix_counterexample(n, &q.zero()).unwrap();
            assert_eq!(a.length().unwrap(), la);
            assert_eq!(m.length().unwrap(), lm);
            assert!(m.is_faithful());
        }
    }
}
