//! Isoclinism of central extensions and of algebras.
//!
//! A certificate is a pair `(η, ξ)`: an algebra isomorphism `η: Q₁ -> Q₂`
//! and a linear bijection `ξ: [[G₁,G₁]] -> [[G₂,G₂]]` between the derived
//! subalgebras, written in the coordinates of their canonical bases, such
//! that `ξ C₁ = C₂ (η × η)` and `ξ P₁ = P₂ (η × η)`.

mod stem;

pub use stem::stem_isomorphism;

use std::sync::Arc;

use serde::Serialize;

use crate::awb::{center, derived_algebra, Awb, AwbMorphism};
use crate::error::{Error, Operation, Result};
use crate::extension::{CentralExtension, ExtensionMorphism};
use crate::homology::{induced_h1_between, theta, theta_q};
use crate::linalg::{Field, Matrix, Scalar, Subspace};
use crate::par::{self, Execution};
use crate::search::{self, Constraints};

#[derive(Clone, Debug)]
pub struct IsoclinismCertificate {
    pub eta: AwbMorphism,
    /// `dim [[G₂,G₂]] x dim [[G₁,G₁]]`
    pub xi: Matrix,
}

impl IsoclinismCertificate {
    pub fn identity(e: &CentralExtension) -> IsoclinismCertificate {
        IsoclinismCertificate {
            eta: AwbMorphism::identity(e.quotient()),
            xi: Matrix::identity(e.field(), e.derived().dim()),
        }
    }

    pub fn inverse(&self) -> Option<IsoclinismCertificate> {
        Some(IsoclinismCertificate {
            eta: self.eta.inverse()?,
            xi: self.xi.inverse()?,
        })
    }

    /// `next ∘ self`
    pub fn then(&self, next: &IsoclinismCertificate) -> Result<IsoclinismCertificate> {
        if self.xi.rows() != next.xi.cols() {
            return Err(Error::Dimension("certificates do not compose".into()));
        }
        Ok(IsoclinismCertificate {
            eta: next.eta.compose(&self.eta)?,
            xi: next.xi.mul(&self.xi),
        })
    }
}

/// `ξ` applied to a vector of `[[G₁,G₁]]` given in `G₁` coordinates.
pub fn apply_xi(d1: &Subspace, d2: &Subspace, xi: &Matrix, g: &[Scalar]) -> Option<Vec<Scalar>> {
    let c = d1.coordinates(g)?;
    Some(d2.from_coordinates(&xi.apply(&c)))
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub eta_is_isomorphism: bool,
    pub xi_shape: bool,
    pub xi_bijective: bool,
    /// Basis pairs of `Q₁` where the bracket square fails.
    pub c_failures: Vec<(usize, usize)>,
    /// Basis pairs of `Q₁` where the product square fails.
    pub p_failures: Vec<(usize, usize)>,
    /// Basis pairs of `[[G₁,G₁]]` where `ξ` fails to preserve an operation.
    pub xi_multiplicative_failures: Vec<(usize, usize, Operation)>,
    /// `π₂ ξ = η π₁` on `[[G₁,G₁]]`.
    pub projection_compatible: bool,
    /// `ξ(N₁ ∩ [[G₁,G₁]]) = N₂ ∩ [[G₂,G₂]]`.
    pub kernel_correspondence: bool,
}

impl CertificateReport {
    /// The defining conditions.
    pub fn accepted(&self) -> bool {
        self.eta_is_isomorphism && self.xi_shape && self.xi_bijective && self.c_failures.is_empty() && self.p_failures.is_empty()
    }

    /// Consequences that every accepted certificate must also satisfy.
    pub fn consequences_hold(&self) -> bool {
        self.xi_multiplicative_failures.is_empty() && self.projection_compatible && self.kernel_correspondence
    }

    pub fn first_failure(&self) -> Option<String> {
        if !self.eta_is_isomorphism {
            return Some("eta is not an algebra isomorphism".into());
        }
        if !self.xi_shape {
            return Some("xi has the wrong shape".into());
        }
        if !self.xi_bijective {
            return Some("xi is not bijective".into());
        }
        if let Some(p) = self.c_failures.first() {
            return Some(format!("bracket square fails at {p:?}"));
        }
        if let Some(p) = self.p_failures.first() {
            return Some(format!("product square fails at {p:?}"));
        }
        None
    }
}

pub fn verify_certificate(e1: &CentralExtension, e2: &CentralExtension, cert: &IsoclinismCertificate) -> CertificateReport {
    let mut r = CertificateReport::default();
    let (q1, q2) = (e1.quotient(), e2.quotient());
    let eta_shape = cert.eta.matrix().shape() == (q2.dim(), q1.dim()) && cert.eta.matrix().field() == e1.field();
    r.eta_is_isomorphism = eta_shape && cert.eta.is_isomorphism();
    let (d1, d2) = (e1.derived(), e2.derived());
    r.xi_shape = cert.xi.shape() == (d2.dim(), d1.dim()) && cert.xi.field() == e1.field();
    if !eta_shape || !r.xi_shape {
        return r;
    }
    r.xi_bijective = cert.xi.is_invertible();
    let (m1, m2) = (e1.commutator_maps(), e2.commutator_maps());
    let eta = cert.eta.matrix().columns();
    for i in 0..q1.dim() {
        for j in 0..q1.dim() {
            let c = apply_xi(&d1, &d2, &cert.xi, m1.c(i, j)).expect("C lands in the derived algebra");
            if c != m2.eval_c(&eta[i], &eta[j]) {
                r.c_failures.push((i, j));
            }
            let p = apply_xi(&d1, &d2, &cert.xi, m1.p(i, j)).expect("P lands in the derived algebra");
            if p != m2.eval_p(&eta[i], &eta[j]) {
                r.p_failures.push((i, j));
            }
        }
    }
    let (g1, g2) = (e1.total(), e2.total());
    let images: Vec<Vec<Scalar>> = d1.vectors().map(|v| apply_xi(&d1, &d2, &cert.xi, v).unwrap()).collect();
    for (a, x) in d1.vectors().enumerate() {
        for (b, y) in d1.vectors().enumerate() {
            for op in [Operation::Product, Operation::Bracket] {
                let lhs = apply_xi(&d1, &d2, &cert.xi, &g1.op(op, x, y)).unwrap();
                if lhs != g2.op(op, &images[a], &images[b]) {
                    r.xi_multiplicative_failures.push((a, b, op));
                }
            }
        }
    }
    r.projection_compatible = d1.vectors().zip(&images).all(|(x, y)| {
        e2.projection().apply(y) == cert.eta.apply(&e1.projection().apply(x))
    });
    let k1 = e1.kernel().intersection(&d1);
    let k2 = e2.kernel().intersection(&d2);
    let mapped = Subspace::spanned_by(e1.field(), g2.dim(), k1.vectors().map(|v| apply_xi(&d1, &d2, &cert.xi, v).unwrap()));
    r.kernel_correspondence = mapped == k2;
    r
}

fn require_iso(eta: &AwbMorphism, e1: &CentralExtension, e2: &CentralExtension) -> Result<()> {
    let shape = eta.matrix().shape() == (e2.quotient().dim(), e1.quotient().dim());
    if !shape || !eta.is_isomorphism() {
        return Err(Error::NotIso);
    }
    Ok(())
}

/// The unique linear `ξ` forced by `η`, when it exists and is bijective.
pub fn xi_from_eta(e1: &CentralExtension, e2: &CentralExtension, eta: &AwbMorphism) -> Result<Option<Matrix>> {
    require_iso(eta, e1, e2)?;
    Ok(forced_xi(e1, e2, eta.matrix()))
}

fn forced_xi(e1: &CentralExtension, e2: &CentralExtension, eta: &Matrix) -> Option<Matrix> {
    let (d1, d2) = (e1.derived(), e2.derived());
    if d1.dim() != d2.dim() {
        return None;
    }
    let field = e1.field();
    let n = e1.quotient().dim();
    let (m1, m2) = (e1.commutator_maps(), e2.commutator_maps());
    let eta = eta.columns();
    let mut src = Vec::with_capacity(2 * n * n);
    let mut dst = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            src.push(d1.coordinates(m1.c(i, j)).expect("C lands in the derived algebra"));
            dst.push(d2.coordinates(&m2.eval_c(&eta[i], &eta[j])).expect("C lands in the derived algebra"));
            src.push(d1.coordinates(m1.p(i, j)).expect("P lands in the derived algebra"));
            dst.push(d2.coordinates(&m2.eval_p(&eta[i], &eta[j])).expect("P lands in the derived algebra"));
        }
    }
    // ξ S = T, solved as Sᵀ ξᵀ = Tᵀ; S spans the derived algebra so ξ is unique
    let s = Matrix::from_rows(field, d1.dim(), src);
    let t = Matrix::from_rows(field, d2.dim(), dst);
    let xi = s.solve(&t)?.transpose();
    if s.mul(&xi.transpose()) != t || !xi.is_invertible() {
        return None;
    }
    Some(xi)
}

fn prime_field(f: Field) -> Result<()> {
    if f.is_prime_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedField(f))
    }
}

/// Cheap necessary conditions for two extensions to be isoclinic.
pub fn extensions_may_be_isoclinic(e1: &CentralExtension, e2: &CentralExtension) -> bool {
    let (d1, d2) = (e1.derived(), e2.derived());
    e1.quotient().dim() == e2.quotient().dim()
        && d1.dim() == d2.dim()
        && e1.kernel().intersection(&d1).dim() == e2.kernel().intersection(&d2).dim()
        && derived_algebra(e1.quotient()).dim() == derived_algebra(e2.quotient()).dim()
}

pub fn decide_extension_isoclinism(e1: &CentralExtension, e2: &CentralExtension) -> Result<Option<IsoclinismCertificate>> {
    decide_extension_isoclinism_with(e1, e2, Execution::default())
}

/// The certificate with the lexicographically first accepted `η`.
pub fn decide_extension_isoclinism_with(
    e1: &CentralExtension,
    e2: &CentralExtension,
    exec: Execution,
) -> Result<Option<IsoclinismCertificate>> {
    prime_field(e1.field())?;
    if e1.field() != e2.field() {
        return Err(Error::FieldMismatch(e1.field(), e2.field()));
    }
    if !extensions_may_be_isoclinic(e1, e2) {
        return Ok(None);
    }
    let accept = |m: &Matrix| forced_xi(e1, e2, m).is_some();
    let Some(eta) = search::find_isomorphism_where(e1.quotient(), e2.quotient(), &Constraints::none(), exec, &accept)? else {
        return Ok(None);
    };
    let xi = forced_xi(e1, e2, &eta).expect("accepted by the search");
    Ok(Some(IsoclinismCertificate {
        eta: AwbMorphism::new(e1.quotient().clone(), e2.quotient().clone(), eta)?,
        xi,
    }))
}

/// Every isomorphism `Q₁ -> Q₂`, each paired with its forced `ξ` if any.
pub fn candidate_certificates(
    e1: &CentralExtension,
    e2: &CentralExtension,
    exec: Execution,
) -> Result<Vec<(AwbMorphism, Option<Matrix>)>> {
    prime_field(e1.field())?;
    let etas = search::all_isomorphisms_with(e1.quotient(), e2.quotient(), &Constraints::none(), exec)?;
    let results = par::map(exec, &etas, |m| forced_xi(e1, e2, m));
    etas.into_iter()
        .zip(results)
        .map(|(m, xi)| Ok((AwbMorphism::new(e1.quotient().clone(), e2.quotient().clone(), m)?, xi)))
        .collect()
}

pub fn decide_algebra_isoclinism(g: &Arc<Awb>, h: &Arc<Awb>) -> Result<Option<IsoclinismCertificate>> {
    decide_algebra_isoclinism_with(g, h, Execution::default())
}

pub fn decide_algebra_isoclinism_with(g: &Arc<Awb>, h: &Arc<Awb>, exec: Execution) -> Result<Option<IsoclinismCertificate>> {
    prime_field(g.field())?;
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    decide_extension_isoclinism_with(&CentralExtension::of_center(g), &CentralExtension::of_center(h), exec)
}

/// When `γ` is bijective and `ker β ∩ [[G₁,G₁]] = 0`, the restriction of
/// `β` to the derived algebras, in their canonical coordinates.
pub fn is_isoclinic_homomorphism(m: &ExtensionMorphism) -> Option<Matrix> {
    let g1 = m.beta.source();
    let g2 = m.beta.target();
    if !m.gamma.matrix().is_invertible() {
        return None;
    }
    let d1 = derived_algebra(g1);
    if !m.beta.kernel().intersection(&d1).is_zero() {
        return None;
    }
    let d2 = derived_algebra(g2);
    let cols = d1
        .vectors()
        .map(|v| d2.coordinates(&m.beta.apply(v)))
        .collect::<Option<Vec<_>>>()?;
    let xi = Matrix::from_columns(g1.field(), d2.dim(), &cols);
    xi.is_invertible().then_some(xi)
}

/// `ker β ∩ [[G,G]] = 0` and `im β + Z(H) = H`.
pub fn is_isoclinic_algebra_hom(beta: &AwbMorphism) -> Result<bool> {
    beta.require_algebra_map()?;
    let injective_on_derived = beta.kernel().intersection(&derived_algebra(beta.source())).is_zero();
    let covers = beta.image().sum(&center(beta.target())).is_full();
    Ok(injective_on_derived && covers)
}

/// `H1(η)(ker θ₁) = ker θ₂`.
pub fn kernel_theta_criterion(e1: &CentralExtension, e2: &CentralExtension, eta: &AwbMorphism) -> Result<bool> {
    require_iso(eta, e1, e2)?;
    let t1 = theta(e1);
    let t2 = theta(e2);
    let induced = induced_h1_between(&t1.h1, &t2.h1, eta);
    Ok(t1.kernel().image(&induced) == t2.kernel())
}

/// Invariants shared by isoclinic algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub central_quotient: usize,
    pub derived: usize,
    pub derived_of_central_quotient: usize,
    pub center_in_derived: usize,
    pub theta_rank: usize,
}

impl Fingerprint {
    pub fn as_tuple(self) -> (usize, usize, usize, usize, usize) {
        (
            self.central_quotient,
            self.derived,
            self.derived_of_central_quotient,
            self.center_in_derived,
            self.theta_rank,
        )
    }
}

pub fn fingerprint(g: &Arc<Awb>) -> Fingerprint {
    let e = CentralExtension::of_center(g);
    let d = e.derived();
    Fingerprint {
        central_quotient: e.quotient().dim(),
        derived: d.dim(),
        derived_of_central_quotient: derived_algebra(e.quotient()).dim(),
        center_in_derived: e.kernel().intersection(&d).dim(),
        theta_rank: theta_q(g).image.dim(),
    }
}
