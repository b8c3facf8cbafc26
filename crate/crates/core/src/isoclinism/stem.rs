use super::{apply_xi, verify_certificate, IsoclinismCertificate};
use crate::awb::{derived_algebra, AwbMorphism};
use crate::error::{Error, Result};
use crate::extension::{is_stem, CentralExtension, ExtensionMorphism, FactorSet};
use crate::linalg::{unit_vector, Matrix, Scalar};

fn invalid(msg: &str) -> Error {
    Error::InvalidCertificate(msg.into())
}

/// `Σ_{i,j} u_i v_j table(i, j)`
fn bilinear(table: impl Fn(usize, usize) -> Vec<Scalar>, u: &[Scalar], v: &[Scalar], m: usize) -> Vec<Scalar> {
    let field = u.first().or(v.first()).map(Scalar::field);
    let mut out: Vec<Scalar> = match field {
        Some(f) => vec![f.zero(); m],
        None => return Vec::new(),
    };
    for (i, x) in u.iter().enumerate() {
        for (j, y) in v.iter().enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let s = x * y;
            for (o, t) in out.iter_mut().zip(table(i, j)) {
                o.add_product(&s, &t);
            }
        }
    }
    out
}

/// An isomorphism of stem extensions built from an isoclinism between them.
///
/// Both extensions are replaced by their factor-set models on `N ⊕ Q`; the
/// second model is transported back along `(ξ|N, η)`, and the resulting
/// discrepancy between the two factor sets is absorbed by a linear map
/// `d: Q₁ -> N` defined on `[[Q₁,Q₁]]` and extended by zero.
pub fn stem_isomorphism(e1: &CentralExtension, e2: &CentralExtension, cert: &IsoclinismCertificate) -> Result<ExtensionMorphism> {
    if !is_stem(e1) || !is_stem(e2) {
        return Err(Error::NotStem);
    }
    let report = verify_certificate(e1, e2, cert);
    if !report.accepted() {
        return Err(Error::InvalidCertificate(report.first_failure().unwrap_or_default()));
    }
    let field = e1.field();
    let m = e1.kernel_dim();
    if m != e2.kernel_dim() {
        return Err(invalid("kernel dimensions differ"));
    }
    let (d1, d2) = (e1.derived(), e2.derived());
    let (q1, q2) = (e1.quotient(), e2.quotient());
    let (n1, n2) = (q1.dim(), q2.dim());

    // G_i ≅ N ⊕ Q_i via (n, q) ↦ χ(n) + ∂q
    let fs2 = FactorSet::extract(e2);
    let th1 = e1.inclusion().hstack(e1.section());
    let th2 = e2.inclusion().hstack(e2.section());
    let th1_inv = th1.inverse().expect("kernel plus section is a basis");
    let th2_inv = th2.inverse().expect("kernel plus section is a basis");

    // ξ restricted to the kernels
    let cols = e1
        .kernel()
        .vectors()
        .map(|v| apply_xi(&d1, &d2, &cert.xi, v).and_then(|w| e2.kernel().coordinates(&w)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| invalid("xi does not map kernel to kernel"))?;
    let xi_n = Matrix::from_columns(field, m, &cols);
    let xi_n_inv = xi_n.inverse().ok_or_else(|| invalid("xi is not bijective on kernels"))?;

    // (h, k) transported along (ξ|N, η)
    let eta = cert.eta.matrix().columns();
    let mut transported = FactorSet::zero(q1.clone(), m);
    for a in 0..n1 {
        for b in 0..n1 {
            let h = bilinear(|i, j| fs2.f(i, j).to_vec(), &eta[a], &eta[b], m);
            let k = bilinear(|i, j| fs2.g(i, j).to_vec(), &eta[a], &eta[b], m);
            transported.f_mut(a, b).clone_from_slice(&xi_n_inv.apply(&h));
            transported.g_mut(a, b).clone_from_slice(&xi_n_inv.apply(&k));
        }
    }
    transported.check().map_err(|_| invalid("transported factor set is not valid"))?;

    // ω: N ⊕ Q₁ -> N ⊕ Q₂, diag(ξ|N, η)
    let omega = Matrix::from_fn(field, m + n2, m + n1, |r, c| match (r < m, c < m) {
        (true, true) => xi_n.get(r, c).clone(),
        (false, false) => cert.eta.matrix().get(r - m, c - m).clone(),
        _ => field.zero(),
    });
    let omega_inv = omega.inverse().expect("block diagonal of isomorphisms");
    let back = omega_inv.mul(&th2_inv);
    // ξ' = ω⁻¹ θ₂⁻¹ ξ θ₁ on [[X₁, X₁]]
    let xi_prime = |x: &[Scalar]| -> Option<Vec<Scalar>> {
        let y = apply_xi(&d1, &d2, &cert.xi, &th1.apply(x))?;
        Some(back.apply(&y))
    };

    // d on [[Q₁,Q₁]] from ξ'(0, u) = (d(u), u)
    let dq = derived_algebra(q1);
    let mut d_cols = Vec::with_capacity(dq.dim());
    for u in dq.vectors() {
        let mut x = vec![field.zero(); m];
        x.extend_from_slice(u);
        let w = xi_prime(&x).ok_or_else(|| invalid("xi' undefined on the derived algebra"))?;
        if w[m..] != *u {
            return Err(invalid("xi is not compatible with the projections"));
        }
        d_cols.push(w[..m].to_vec());
    }
    // d̄: zero on the standard complement of [[Q₁,Q₁]]
    let mut adapted: Vec<Vec<Scalar>> = dq.vectors().map(<[Scalar]>::to_vec).collect();
    adapted.extend(dq.complement_indices().into_iter().map(|t| unit_vector(field, n1, t)));
    let to_adapted = Matrix::from_columns(field, n1, &adapted).inverse().expect("complement basis");
    let head: Vec<usize> = (0..dq.dim()).collect();
    let d_bar = Matrix::from_columns(field, m, &d_cols).mul(&to_adapted.select_rows(&head));

    // λ(n, q) = ξ'(n, 0) + (d̄ q, q)
    let mut lambda_cols = Vec::with_capacity(m + n1);
    for a in 0..m {
        let w = xi_prime(&unit_vector(field, m + n1, a)).ok_or_else(|| invalid("kernel outside the derived algebra"))?;
        lambda_cols.push(w);
    }
    for b in 0..n1 {
        let mut col = d_bar.column(b);
        col.extend(unit_vector(field, n1, b));
        lambda_cols.push(col);
    }
    let lambda = Matrix::from_columns(field, m + n1, &lambda_cols);
    let total = th2.mul(&omega).mul(&lambda).mul(&th1_inv);
    let beta = AwbMorphism::new(e1.total().clone(), e2.total().clone(), total)?;
    let morphism = ExtensionMorphism::from_total(e1, e2, beta)?;
    if !morphism.check(e1, e2).is_isomorphism() {
        return Err(invalid("construction did not produce an isomorphism"));
    }
    Ok(morphism)
}
