use std::sync::Arc;

use super::{CentralExtension, ExtensionMorphism};
use crate::awb::{quotient, Awb, AwbMorphism};
use crate::error::{Error, Result};
use crate::homology::{h1, induced_h1_between, theta_on};
use crate::linalg::{Matrix, Subspace};

/// `N ⊆ [[G, G]]`.
pub fn is_stem(e: &CentralExtension) -> bool {
    e.derived().contains_subspace(e.kernel())
}

/// `G/[[G,G]]` and `Q/[[Q,Q]]` have the same dimension.
pub fn is_stem_definitional(e: &CentralExtension) -> bool {
    let g = e.total();
    let q = e.quotient();
    g.dim() - e.derived().dim() == q.dim() - crate::awb::derived_algebra(q).dim()
}

/// `θ: H1(Q) -> N` is bijective.
pub fn is_stem_cover(e: &CentralExtension) -> bool {
    let t = theta_on(e, h1(e.quotient()));
    t.is_injective() && t.is_surjective()
}

/// Stem, `H1(π) = 0`, and `dim N = dim H1(Q)`.
pub fn is_stem_cover_definitional(e: &CentralExtension) -> bool {
    if !is_stem(e) {
        return false;
    }
    let hq = h1(e.quotient());
    if hq.dim() != e.kernel_dim() {
        return false;
    }
    let hg = h1(e.total());
    induced_h1_between(&hg, &hq, e.projection()).is_zero()
}

/// Basis vectors of `N` complementing `N ∩ [[G,G]]`, chosen at the
/// non-pivot coordinates of that intersection.
fn abelian_complement(e: &CentralExtension) -> Subspace {
    let field = e.field();
    let k = e.kernel().intersection(&e.derived());
    let coords: Vec<_> = k.vectors().map(|v| e.kernel().coordinates(v).expect("K ⊆ N")).collect();
    let in_n = Subspace::spanned_by(field, e.kernel_dim(), &coords);
    let picked: Vec<&[_]> = in_n.complement_indices().into_iter().map(|i| e.kernel().vector(i)).collect();
    Subspace::spanned_by(field, e.total().dim(), picked)
}

/// Quotient by a complement of `N ∩ [[G,G]]` in `N`, with the projection
/// morphism from `e`.
pub fn stemify(e: &CentralExtension) -> Result<(CentralExtension, ExtensionMorphism)> {
    let m = abelian_complement(e);
    if m.is_zero() {
        return Ok((e.clone(), ExtensionMorphism::identity(e)));
    }
    let q = quotient(e.total(), &m)?;
    // π factors through G/M
    let down = e.projection().matrix().mul(&q.section);
    let stem = CentralExtension::from_projection(AwbMorphism::new(q.algebra.clone(), e.quotient().clone(), down)?)?;
    let morphism = ExtensionMorphism::from_total(e, &stem, q.projection)?;
    Ok((stem, morphism))
}

/// `G ≅ H ⊕ A` with `H` carrying a stem extension of the same `Q`.
#[derive(Clone, Debug)]
pub struct SplitOff {
    pub stem: CentralExtension,
    pub abelian: Arc<Awb>,
    /// `H × A -> G`, `(t, a) ↦ t + a`.
    pub isomorphism: AwbMorphism,
}

pub fn split_off_abelian(e: &CentralExtension) -> Result<SplitOff> {
    let field = e.field();
    let m = abelian_complement(e);
    let t = e.derived().extend_to_complement_of(&m);
    let h = Arc::new(e.total().restrict(&t)?.with_name(format!("{}|stem", e.total().name())));
    let proj = e.projection().matrix().mul(&t.inclusion());
    let stem = CentralExtension::from_projection(AwbMorphism::new(h.clone(), e.quotient().clone(), proj)?)?;
    let abelian = Arc::new(Awb::abelian(field, m.dim()));
    let sum = Arc::new(Awb::direct_product(&h, &abelian)?);
    let isomorphism = AwbMorphism::new(sum, e.total().clone(), t.inclusion().hstack(&m.inclusion()))?;
    Ok(SplitOff {
        stem,
        abelian,
        isomorphism,
    })
}

/// `0 -> N ⊕ A -> G ⊕ A -> Q -> 0`.
pub fn direct_sum_abelian(e: &CentralExtension, a: &Awb) -> Result<CentralExtension> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if a.field() != e.field() {
        return Err(Error::FieldMismatch(e.field(), a.field()));
    }
    if a.dim() == 0 {
        return Ok(e.clone());
    }
    let sum = Arc::new(Awb::direct_product(e.total(), a)?);
    let proj = e.projection().matrix().hstack(&Matrix::zeros(e.field(), e.quotient().dim(), a.dim()));
    CentralExtension::from_projection(AwbMorphism::new(sum, e.quotient().clone(), proj)?)
}

/// `G₂^η = {(g, q) : π₂(g) = η(q)}` over `Q₁`.
pub fn pullback(e2: &CentralExtension, eta: &AwbMorphism) -> Result<CentralExtension> {
    if eta.target().dim() != e2.quotient().dim() || !eta.is_isomorphism() {
        return Err(Error::NotIso);
    }
    let field = e2.field();
    let q1 = eta.source();
    let n2 = e2.total().dim();
    let neg_eta = eta.matrix().scale(&-field.one());
    let space = e2.projection().matrix().hstack(&neg_eta).kernel();
    let product = Awb::direct_product(e2.total(), q1)?;
    let total = Arc::new(product.restrict(&space)?.with_name(format!("{}^eta", e2.total().name())));
    let to_q1 = Matrix::zeros(field, q1.dim(), n2).hstack(&Matrix::identity(field, q1.dim()));
    CentralExtension::from_projection(AwbMorphism::new(total, q1.clone(), to_q1.mul(&space.inclusion()))?)
}

/// `G' = {(g₁, g₂) : η π₁(g₁) = π₂(g₂)}` over `Q₁`, with its projections
/// onto both extensions.
pub fn common_ancestor(
    e1: &CentralExtension,
    e2: &CentralExtension,
    eta: &AwbMorphism,
) -> Result<(CentralExtension, ExtensionMorphism, ExtensionMorphism)> {
    if eta.source().dim() != e1.quotient().dim() || eta.target().dim() != e2.quotient().dim() || !eta.is_isomorphism() {
        return Err(Error::NotIso);
    }
    let field = e1.field();
    let (d1, d2) = (e1.total().dim(), e2.total().dim());
    let lhs = eta.matrix().mul(e1.projection().matrix());
    let rhs = e2.projection().matrix().scale(&-field.one());
    let space = lhs.hstack(&rhs).kernel();
    let product = Awb::direct_product(e1.total(), e2.total())?;
    let total = Arc::new(product.restrict(&space)?.with_name("ancestor"));
    let first = Matrix::identity(field, d1).hstack(&Matrix::zeros(field, d1, d2)).mul(&space.inclusion());
    let second = Matrix::zeros(field, d2, d1).hstack(&Matrix::identity(field, d2)).mul(&space.inclusion());
    let rho = e1.projection().matrix().mul(&first);
    let ancestor = CentralExtension::from_projection(AwbMorphism::new(total.clone(), e1.quotient().clone(), rho)?)?;
    let m1 = ExtensionMorphism::from_total(&ancestor, e1, AwbMorphism::new(total.clone(), e1.total().clone(), first)?)?;
    let m2 = ExtensionMorphism::from_total(&ancestor, e2, AwbMorphism::new(total, e2.total().clone(), second)?)?;
    Ok((ancestor, m1, m2))
}
