use std::sync::Arc;

use super::{Awb, Operation};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix, Scalar, Subspace};

/// A linear map between algebras, `dim(target) x dim(source)`, whose
/// columns are the images of the source basis.
#[derive(Clone, Debug)]
pub struct AwbMorphism {
    source: Arc<Awb>,
    target: Arc<Awb>,
    matrix: Matrix,
}

/// Outcome of [`AwbMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub product_failures: Vec<(usize, usize)>,
    pub bracket_failures: Vec<(usize, usize)>,
    pub injective: bool,
    pub surjective: bool,
}

impl MorphismReport {
    pub fn is_algebra_map(&self) -> bool {
        self.product_failures.is_empty() && self.bracket_failures.is_empty()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_algebra_map() && self.injective && self.surjective
    }
}

impl AwbMorphism {
    pub fn new(source: Arc<Awb>, target: Arc<Awb>, matrix: Matrix) -> Result<AwbMorphism> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch(source.field(), matrix.field()));
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Dimension(format!(
                "morphism matrix must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(AwbMorphism { source, target, matrix })
    }

    pub fn identity(a: &Arc<Awb>) -> AwbMorphism {
        AwbMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.field(), a.dim()),
        }
    }

    pub fn zero(source: &Arc<Awb>, target: &Arc<Awb>) -> AwbMorphism {
        AwbMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &Arc<Awb> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Awb> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AwbMorphism) -> Result<AwbMorphism> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::Dimension("composition of incompatible morphisms".into()));
        }
        AwbMorphism::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    /// Inverse map, when the matrix is invertible.
    pub fn inverse(&self) -> Option<AwbMorphism> {
        let inv = self.matrix.inverse()?;
        Some(AwbMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_space()
    }

    /// Verifies preservation of both operations on all basis pairs and
    /// reports injectivity and surjectivity.
    pub fn check(&self) -> MorphismReport {
        let n = self.source.dim();
        let images = self.matrix.columns();
        let mut product_failures = Vec::new();
        let mut bracket_failures = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (op, failures) in [(Operation::Product, &mut product_failures), (Operation::Bracket, &mut bracket_failures)] {
                    let lhs = self.apply(self.source.basis_op(op, i, j));
                    let rhs = self.target.op(op, &images[i], &images[j]);
                    if lhs != rhs {
                        failures.push((i, j));
                    }
                }
            }
        }
        let rank = self.matrix.rank();
        MorphismReport {
            product_failures,
            bracket_failures,
            injective: rank == n,
            surjective: rank == self.target.dim(),
        }
    }

    pub fn is_algebra_map(&self) -> bool {
        self.check().is_algebra_map()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.check().is_isomorphism()
    }

    /// Errors with the first failing basis pair unless this is an algebra map.
    pub fn require_algebra_map(&self) -> Result<()> {
        let r = self.check();
        if let Some(&p) = r.product_failures.first() {
            return Err(Error::NotAlgebraMap(Operation::Product, p));
        }
        if let Some(&p) = r.bracket_failures.first() {
            return Err(Error::NotAlgebraMap(Operation::Bracket, p));
        }
        Ok(())
    }

    /// Image of the `i`-th source basis vector.
    pub fn image_of_basis(&self, i: usize) -> Vec<Scalar> {
        self.apply(&unit_vector(self.source.field(), self.source.dim(), i))
    }
}
