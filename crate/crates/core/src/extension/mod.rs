//! Central extensions `0 -> N -> G -> Q -> 0` and constructions on them.

mod constructions;
mod factor_set;

pub use constructions::{
    common_ancestor, direct_sum_abelian, is_stem, is_stem_cover, is_stem_cover_definitional, is_stem_definitional,
    pullback, split_off_abelian, stemify, SplitOff,
};
pub use factor_set::FactorSet;

use std::sync::Arc;

use crate::awb::{center, derived_algebra, ideal_flags, quotient, Awb, AwbMorphism, MorphismReport};
use crate::error::{Error, Operation, Result};
use crate::linalg::{unit_vector, Field, Matrix, Scalar, Subspace};

/// A central extension of `Q` by the kernel `N ⊆ G`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    total: Arc<Awb>,
    kernel: Subspace,
    quotient: Arc<Awb>,
    projection: AwbMorphism,
    section: Matrix,
}

/// First `(kernel vector, basis vector, operation)` witnessing that `n` is
/// not central in `g`.
fn central_violation(g: &Awb, n: &Subspace) -> Option<Error> {
    let dim = g.dim();
    for (a, v) in n.vectors().enumerate() {
        for j in 0..dim {
            let e = unit_vector(g.field(), dim, j);
            for op in [Operation::Product, Operation::Bracket] {
                let hit = g.op(op, v, &e).iter().any(|x| !x.is_zero()) || g.op(op, &e, v).iter().any(|x| !x.is_zero());
                if hit {
                    return Some(Error::NotCentral {
                        kernel_index: a,
                        basis_index: j,
                        op,
                    });
                }
            }
        }
    }
    None
}

impl CentralExtension {
    /// `0 -> N -> G -> G/N -> 0`, rejecting non-ideals and non-central `N`.
    pub fn new(total: Arc<Awb>, kernel: Subspace) -> Result<CentralExtension> {
        if kernel.ambient_dim() != total.dim() || kernel.field() != total.field() {
            return Err(Error::Dimension(format!(
                "kernel lives in F^{}, algebra has dimension {}",
                kernel.ambient_dim(),
                total.dim()
            )));
        }
        if !ideal_flags(&total, &kernel).two_sided {
            return Err(Error::NotAnIdeal);
        }
        if let Some(e) = central_violation(&total, &kernel) {
            return Err(e);
        }
        let q = quotient(&total, &kernel)?;
        Ok(CentralExtension {
            total,
            kernel,
            quotient: q.algebra,
            projection: q.projection,
            section: q.section,
        })
    }

    /// The extension given by a surjective algebra map with central kernel.
    pub fn from_projection(projection: AwbMorphism) -> Result<CentralExtension> {
        projection.require_algebra_map()?;
        let total = projection.source().clone();
        let kernel = projection.kernel();
        if kernel.dim() + projection.target().dim() != total.dim() {
            return Err(Error::Dimension("projection is not surjective".into()));
        }
        if let Some(e) = central_violation(&total, &kernel) {
            return Err(e);
        }
        let field = total.field();
        let free = kernel.complement_indices();
        let restricted = projection.matrix().select_columns(&free);
        let inv = restricted.inverse().expect("projection restricted to a kernel complement is invertible");
        let lifts: Vec<Vec<Scalar>> = free.iter().map(|&c| unit_vector(field, total.dim(), c)).collect();
        let section = Matrix::from_columns(field, total.dim(), &lifts).mul(&inv);
        Ok(CentralExtension {
            quotient: projection.target().clone(),
            total,
            kernel,
            projection,
            section,
        })
    }

    /// `0 -> Z(A) -> A -> A/Z(A) -> 0`.
    pub fn of_center(a: &Arc<Awb>) -> CentralExtension {
        CentralExtension::new(a.clone(), center(a)).expect("the center is a central ideal")
    }

    /// `0 -> 0 -> A -> A -> 0`.
    pub fn trivial(a: &Arc<Awb>) -> CentralExtension {
        CentralExtension::new(a.clone(), Subspace::zero(a.field(), a.dim())).expect("zero is a central ideal")
    }

    /// The same extension with a different linear section of the projection.
    pub fn with_section(&self, section: Matrix) -> Result<CentralExtension> {
        if section.shape() != (self.total.dim(), self.quotient.dim()) {
            return Err(Error::Dimension("section has the wrong shape".into()));
        }
        if !self.projection.matrix().mul(&section).is_identity() {
            return Err(Error::Dimension("section is not a right inverse of the projection".into()));
        }
        Ok(CentralExtension {
            section,
            ..self.clone()
        })
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    /// `G`
    pub fn total(&self) -> &Arc<Awb> {
        &self.total
    }

    /// `N`, as a subspace of `G`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }

    /// `Q`
    pub fn quotient(&self) -> &Arc<Awb> {
        &self.quotient
    }

    pub fn projection(&self) -> &AwbMorphism {
        &self.projection
    }

    /// `dim G x dim N`; columns are the kernel basis.
    pub fn inclusion(&self) -> Matrix {
        self.kernel.inclusion()
    }

    /// `dim G x dim Q`; a linear right inverse of the projection.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        self.section.apply(q)
    }

    /// `[[G, G]]`
    pub fn derived(&self) -> Subspace {
        derived_algebra(&self.total)
    }

    /// `C(q,q') = [∂q, ∂q']` and `P(q,q') = ∂q ∂q'` on basis pairs.
    pub fn commutator_maps(&self) -> CommutatorMaps {
        let n = self.quotient.dim();
        let lifts = self.section.columns();
        let mut c = Vec::with_capacity(n * n);
        let mut p = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                c.push(self.total.bracket(&lifts[i], &lifts[j]));
                p.push(self.total.mul(&lifts[i], &lifts[j]));
            }
        }
        CommutatorMaps {
            field: self.field(),
            quotient_dim: n,
            ambient_dim: self.total.dim(),
            c,
            p,
        }
    }
}

/// The bilinear maps `Q x Q -> [[G, G]]` induced by bracket and product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorMaps {
    field: Field,
    quotient_dim: usize,
    ambient_dim: usize,
    c: Vec<Vec<Scalar>>,
    p: Vec<Vec<Scalar>>,
}

impl CommutatorMaps {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_dim
    }

    /// `dim G`
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn c(&self, i: usize, j: usize) -> &[Scalar] {
        &self.c[i * self.quotient_dim + j]
    }

    pub fn p(&self, i: usize, j: usize) -> &[Scalar] {
        &self.p[i * self.quotient_dim + j]
    }

    fn eval(&self, table: &[Vec<Scalar>], u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.quotient_dim;
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let s = &u[i] * &v[j];
                for (o, x) in out.iter_mut().zip(&table[i * n + j]) {
                    if !x.is_zero() {
                        o.add_product(&s, x);
                    }
                }
            }
        }
        out
    }

    pub fn eval_c(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.eval(&self.c, u, v)
    }

    pub fn eval_p(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.eval(&self.p, u, v)
    }
}

/// A morphism of extensions `(α, β, γ)`; `α` is in kernel coordinates.
#[derive(Clone, Debug)]
pub struct ExtensionMorphism {
    pub alpha: Matrix,
    pub beta: AwbMorphism,
    pub gamma: AwbMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMorphismReport {
    pub beta: MorphismReport,
    pub gamma: MorphismReport,
    /// `β ∘ χ₁ = χ₂ ∘ α`
    pub left_square: bool,
    /// `γ ∘ π₁ = π₂ ∘ β`
    pub right_square: bool,
    pub alpha_invertible: bool,
}

impl ExtensionMorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.beta.is_algebra_map() && self.gamma.is_algebra_map() && self.left_square && self.right_square
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_morphism() && self.beta.is_isomorphism() && self.gamma.is_isomorphism() && self.alpha_invertible
    }
}

impl ExtensionMorphism {
    /// Completes `β: G₁ -> G₂` to a morphism of extensions, provided `β`
    /// maps `N₁` into `N₂`.
    pub fn from_total(e1: &CentralExtension, e2: &CentralExtension, beta: AwbMorphism) -> Result<ExtensionMorphism> {
        let field = e1.field();
        let cols = e1
            .kernel()
            .vectors()
            .map(|v| e2.kernel().coordinates(&beta.apply(v)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Dimension("map does not send kernel into kernel".into()))?;
        let alpha = Matrix::from_columns(field, e2.kernel_dim(), &cols);
        let gamma_matrix = e2.projection().matrix().mul(beta.matrix()).mul(e1.section());
        let gamma = AwbMorphism::new(e1.quotient().clone(), e2.quotient().clone(), gamma_matrix)?;
        Ok(ExtensionMorphism { alpha, beta, gamma })
    }

    pub fn identity(e: &CentralExtension) -> ExtensionMorphism {
        ExtensionMorphism {
            alpha: Matrix::identity(e.field(), e.kernel_dim()),
            beta: AwbMorphism::identity(e.total()),
            gamma: AwbMorphism::identity(e.quotient()),
        }
    }

    pub fn check(&self, e1: &CentralExtension, e2: &CentralExtension) -> ExtensionMorphismReport {
        let shapes = self.alpha.shape() == (e2.kernel_dim(), e1.kernel_dim())
            && self.beta.matrix().shape() == (e2.total().dim(), e1.total().dim())
            && self.gamma.matrix().shape() == (e2.quotient().dim(), e1.quotient().dim());
        let left_square = shapes && self.beta.matrix().mul(&e1.inclusion()) == e2.inclusion().mul(&self.alpha);
        let right_square = shapes
            && self.gamma.matrix().mul(e1.projection().matrix()) == e2.projection().matrix().mul(self.beta.matrix());
        ExtensionMorphismReport {
            beta: self.beta.check(),
            gamma: self.gamma.check(),
            left_square,
            right_square,
            alpha_invertible: self.alpha.is_invertible(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awb::Tensors;

    const Q: Field = Field::Rational;

    fn heis() -> Arc<Awb> {
        let mut t = Tensors::zeros(Q, 3);
        t.set_bracket(0, 1, 2, 1);
        Arc::new(t.build("heis").unwrap())
    }

    fn taut_u2() -> Arc<Awb> {
        let mut t = Tensors::zeros(Q, 3);
        t.set_product(0, 0, 0, 1);
        t.set_product(0, 1, 1, 1);
        t.set_product(1, 2, 1, 1);
        t.set_product(2, 2, 2, 1);
        Arc::new(Awb::tautological("taut_u2", Q, 3, t.product).unwrap())
    }

    #[test]
    fn heis_over_center() {
        let e = CentralExtension::new(heis(), Subspace::coordinate(Q, 3, &[2])).unwrap();
        assert!(e.quotient().is_abelian());
        assert_eq!(e.quotient().dim(), 2);
        assert!(e.projection().matrix().mul(e.section()).is_identity());
        assert!(e.projection().matrix().mul(&e.inclusion()).is_zero());
        let maps = e.commutator_maps();
        assert_eq!(maps.c(0, 1), unit_vector(Q, 3, 2).as_slice());
        assert!((0..2).all(|i| (0..2).all(|j| maps.p(i, j).iter().all(Scalar::is_zero))));
    }

    #[test]
    fn non_central_kernel_is_rejected() {
        let err = CentralExtension::new(taut_u2(), Subspace::coordinate(Q, 3, &[1])).unwrap_err();
        assert!(matches!(err, Error::NotCentral { .. }), "{err}");
    }

    #[test]
    fn non_ideal_is_rejected() {
        let err = CentralExtension::new(heis(), Subspace::coordinate(Q, 3, &[0])).unwrap_err();
        assert!(matches!(err, Error::NotAnIdeal));
    }

    #[test]
    fn trivial_extension_of_taut_u2() {
        let e = CentralExtension::trivial(&taut_u2());
        assert_eq!(e.quotient().dim(), 3);
        assert_eq!(e.commutator_maps().p(0, 1), unit_vector(Q, 3, 1).as_slice());
    }

    #[test]
    fn commutator_maps_do_not_depend_on_lift() {
        let e = CentralExtension::new(heis(), Subspace::coordinate(Q, 3, &[2])).unwrap();
        let shifted = Matrix::from_ints(Q, &[&[1, 0], &[0, 1], &[5, -2]]);
        let other = e.with_section(shifted).unwrap();
        assert_eq!(e.commutator_maps(), other.commutator_maps());
    }

    #[test]
    fn from_projection_matches_quotient() {
        let e = CentralExtension::new(heis(), Subspace::coordinate(Q, 3, &[2])).unwrap();
        let again = CentralExtension::from_projection(e.projection().clone()).unwrap();
        assert_eq!(again.section(), e.section());
        assert_eq!(again.kernel(), e.kernel());
    }

    #[test]
    fn identity_morphism_checks() {
        let e = CentralExtension::of_center(&heis());
        assert!(ExtensionMorphism::identity(&e).check(&e, &e).is_isomorphism());
    }
}
