//! The trace `Hom(O_C, F) -> Hom(O_D, F)` dual to an inclusion of algebras.

use std::sync::Arc;

use crate::algebra::FieldElement;
use crate::linalg::{self, Matrix};

use super::algebra::FiniteAlgebra;
use super::module::FiniteModule;
use super::ArtinianError;

/// Restriction of functionals along `O_D ⊂ O_C`.
///
/// Functionals on `O_C` are written in the dual basis of the standard basis,
/// so a functional is just the vector of its values on `e_0, e_1, ...`.
#[derive(Clone, Debug)]
pub struct RestrictionTrace<F: FieldElement> {
    /// `O_D` as an algebra in the given basis.
    pub sub: Arc<FiniteAlgebra<F>>,
    /// The basis of `O_D` inside `O_C`.
    pub inclusion: Vec<Vec<F>>,
    /// `dim O_D x dim O_C`; row `j` evaluates a functional on the `j`-th
    /// basis vector of `O_D`.
    pub matrix: Matrix<F>,
    /// Functionals vanishing on `O_D`.
    pub kernel: Vec<Vec<F>>,
    /// The kernel with its `O_D`-module structure `(d.l)(c) = l(d c)`.
    pub kernel_module: FiniteModule<F>,
}

impl<F: FieldElement> RestrictionTrace<F> {
    /// Applies the trace to a functional on `O_C`.
    pub fn apply(&self, functional: &[F]) -> Vec<F> {
        linalg::mat_vec(&self.matrix, functional, self.sub.proto())
    }
}

pub fn restriction_trace<F: FieldElement>(
    big: &Arc<FiniteAlgebra<F>>,
    sub_basis: &[Vec<F>],
) -> Result<RestrictionTrace<F>, ArtinianError> {
    let sub = Arc::new(big.subalgebra(sub_basis)?);
    let proto = big.proto().clone();
    let n = big.dim();
    let matrix: Matrix<F> = sub_basis.to_vec();
    let kernel = linalg::nullspace(&matrix, n, &proto);
    let omega = FiniteModule::regular(big.clone()).dual_module();
    let restricted = omega.restrict(sub.clone(), sub_basis)?;
    let kernel_module = restricted.submodule(&kernel)?;
    Ok(RestrictionTrace {
        sub,
        inclusion: sub_basis.to_vec(),
        matrix,
        kernel,
        kernel_module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, Scalar};

    fn truncated(n: usize) -> Arc<FiniteAlgebra<Scalar>> {
        Arc::new(FiniteAlgebra::truncated(&BaseField::rationals().zero(), n))
    }

    #[test]
    fn cusp_kernel() {
        let a = truncated(2);
        let tr = restriction_trace(&a, &[a.unit().to_vec()]).unwrap();
        // The kernel is spanned by the dual of t.
        assert_eq!(tr.kernel.len(), 1);
        assert!(tr.kernel[0][0].is_zero());
        assert_eq!(tr.kernel_module.dim(), 1);
        assert!(linalg::is_zero_vec(&tr.apply(&tr.kernel[0])));
    }

    #[test]
    fn node_and_identity() {
        let q = BaseField::rationals();
        let k = truncated(1);
        let kk = Arc::new(FiniteAlgebra::product(&[(*k).clone(), (*k).clone()], &q.zero()).unwrap());
        let tr = restriction_trace(&kk, &[kk.unit().to_vec()]).unwrap();
        assert_eq!(tr.kernel.len(), 1);
        let full = restriction_trace(&kk, &[kk.basis(0), kk.basis(1)]).unwrap();
        assert!(full.kernel.is_empty());
    }
}
