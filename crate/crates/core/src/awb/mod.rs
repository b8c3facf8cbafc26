//! Finite-dimensional algebras with bracket, stored by structure constants.
//!
//! An algebra with bracket is an associative algebra `A` with an extra
//! bilinear map `[-,-]` such that `[ab, c] = [a, c] b + a [b, c]`.

mod ideal;
mod morphism;

pub use ideal::{center, commutator_ideal, derived_algebra, ideal_flags, quotient, IdealFlags, Quotient};
pub use morphism::{AwbMorphism, MorphismReport};

use crate::error::{Error, Operation, Result, Violation};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

/// An algebra with bracket on the basis `e_0, ..., e_{n-1}`.
///
/// `product[(i*n + j)*n + k]` is the `e_k`-coefficient of `e_i e_j`, and
/// `bracket` is laid out the same way for `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Awb {
    name: String,
    field: Field,
    dim: usize,
    product: Vec<Scalar>,
    bracket: Vec<Scalar>,
}

/// Mutable dense structure constants, validated by [`Tensors::build`].
#[derive(Clone, Debug)]
pub struct Tensors {
    pub field: Field,
    pub dim: usize,
    pub product: Vec<Scalar>,
    pub bracket: Vec<Scalar>,
}

impl Tensors {
    pub fn zeros(field: Field, dim: usize) -> Tensors {
        let len = dim * dim * dim;
        Tensors {
            field,
            dim,
            product: vec![field.zero(); len],
            bracket: vec![field.zero(); len],
        }
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn set(&mut self, op: Operation, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.index(i, j, k);
        match op {
            Operation::Product => self.product[idx] = v,
            Operation::Bracket => self.bracket[idx] = v,
        }
    }

    pub fn set_product(&mut self, i: usize, j: usize, k: usize, v: i64) {
        self.set(Operation::Product, i, j, k, self.field.from_i64(v));
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: i64) {
        self.set(Operation::Bracket, i, j, k, self.field.from_i64(v));
    }

    /// Every failed associativity or bracket identity, in index order.
    pub fn violations(&self) -> Vec<Violation> {
        violations(self.field, self.dim, &self.product, &self.bracket)
    }

    pub fn build(self, name: impl Into<String>) -> Result<Awb> {
        Awb::new(name, self.field, self.dim, self.product, self.bracket)
    }
}

/// Checks the associativity and bracket identities on all basis triples.
pub fn violations(field: Field, n: usize, product: &[Scalar], bracket: &[Scalar]) -> Vec<Violation> {
    fn at(t: &[Scalar], n: usize, i: usize, j: usize) -> &[Scalar] {
        &t[(i * n + j) * n..(i * n + j + 1) * n]
    }
    // sum_t c[t] * row(t), accumulated into out
    fn combine<'a>(out: &mut [Scalar], coeffs: &[Scalar], row: impl Fn(usize) -> &'a [Scalar]) {
        for (t, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row(t)) {
                if !v.is_zero() {
                    o.add_product(c, v);
                }
            }
        }
    }
    let mut found = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = vec![field.zero(); n];
                let mut rhs = vec![field.zero(); n];
                combine(&mut lhs, at(product, n, i, j), |t| at(product, n, t, k));
                combine(&mut rhs, at(product, n, j, k), |t| at(product, n, i, t));
                if lhs != rhs {
                    found.push(Violation::Associativity { i, j, k });
                }
                let mut lhs = vec![field.zero(); n];
                let mut rhs = vec![field.zero(); n];
                combine(&mut lhs, at(product, n, i, j), |t| at(bracket, n, t, k));
                combine(&mut rhs, at(bracket, n, i, k), |t| at(product, n, t, j));
                combine(&mut rhs, at(bracket, n, j, k), |t| at(product, n, i, t));
                if lhs != rhs {
                    found.push(Violation::Identity1 { i, j, k });
                }
            }
        }
    }
    found
}

impl Awb {
    /// Validates and wraps dense structure constants.
    pub fn new(name: impl Into<String>, field: Field, dim: usize, product: Vec<Scalar>, bracket: Vec<Scalar>) -> Result<Awb> {
        let len = dim * dim * dim;
        if product.len() != len || bracket.len() != len {
            return Err(Error::Dimension(format!(
                "structure tensors must have {len} entries for dim {dim}, got {} and {}",
                product.len(),
                bracket.len()
            )));
        }
        if let Some(s) = product.iter().chain(&bracket).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        let found = violations(field, dim, &product, &bracket);
        if !found.is_empty() {
            return Err(Error::InvalidStructure(found));
        }
        Ok(Awb {
            name: name.into(),
            field,
            dim,
            product,
            bracket,
        })
    }

    /// The abelian algebra of dimension `n`: both operations vanish.
    pub fn abelian(field: Field, n: usize) -> Awb {
        Tensors::zeros(field, n).build(format!("ab({n})")).expect("zero tensors are valid")
    }

    pub fn zero(field: Field) -> Awb {
        Awb::abelian(field, 0)
    }

    /// Bracket `[a, b] = a D(b) - D(b) a` on an associative algebra, where
    /// the columns of `d` are the images `D(e_j)`.
    pub fn d_bracket(name: impl Into<String>, field: Field, dim: usize, product: Vec<Scalar>, d: &Matrix) -> Result<Awb> {
        if d.shape() != (dim, dim) {
            return Err(Error::Dimension(format!("D must be {dim}x{dim}")));
        }
        let assoc_only: Vec<Violation> = violations(field, dim, &product, &vec![field.zero(); product.len()])
            .into_iter()
            .filter(|v| matches!(v, Violation::Associativity { .. }))
            .collect();
        if !assoc_only.is_empty() {
            return Err(Error::InvalidStructure(assoc_only));
        }
        let carrier = Awb {
            name: String::new(),
            field,
            dim,
            bracket: vec![field.zero(); product.len()],
            product,
        };
        let mut t = Tensors::zeros(field, dim);
        t.product = carrier.product.clone();
        for i in 0..dim {
            let ei = crate::linalg::unit_vector(field, dim, i);
            for j in 0..dim {
                let dj = d.column(j);
                let v = crate::linalg::vec_sub(&carrier.mul(&ei, &dj), &carrier.mul(&dj, &ei));
                for (k, c) in v.into_iter().enumerate() {
                    t.set(Operation::Bracket, i, j, k, c);
                }
            }
        }
        t.build(name)
    }

    /// The tautological algebra with bracket: `[a, b] = ab - ba`.
    pub fn tautological(name: impl Into<String>, field: Field, dim: usize, product: Vec<Scalar>) -> Result<Awb> {
        Awb::d_bracket(name, field, dim, product, &Matrix::identity(field, dim))
    }

    /// Componentwise operations on `A x B`, basis of `A` first.
    pub fn direct_product(a: &Awb, b: &Awb) -> Result<Awb> {
        if a.field != b.field {
            return Err(Error::FieldMismatch(a.field, b.field));
        }
        let n = a.dim + b.dim;
        let mut t = Tensors::zeros(a.field, n);
        for (src, off) in [(a, 0), (b, a.dim)] {
            for i in 0..src.dim {
                for j in 0..src.dim {
                    for k in 0..src.dim {
                        let base = (i * src.dim + j) * src.dim + k;
                        t.set(Operation::Product, i + off, j + off, k + off, src.product[base].clone());
                        t.set(Operation::Bracket, i + off, j + off, k + off, src.bracket[base].clone());
                    }
                }
            }
        }
        t.build(format!("{}x{}", a.name, b.name))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Awb {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product_tensor(&self) -> &[Scalar] {
        &self.product
    }

    pub fn bracket_tensor(&self) -> &[Scalar] {
        &self.bracket
    }

    pub fn tensors(&self) -> Tensors {
        Tensors {
            field: self.field,
            dim: self.dim,
            product: self.product.clone(),
            bracket: self.bracket.clone(),
        }
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.product[base..base + self.dim]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.bracket[base..base + self.dim]
    }

    pub fn basis_op(&self, op: Operation, i: usize, j: usize) -> &[Scalar] {
        match op {
            Operation::Product => self.basis_product(i, j),
            Operation::Bracket => self.basis_bracket(i, j),
        }
    }

    fn bilinear(&self, table: &[Scalar], a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                let base = (i * n + j) * n;
                for (o, c) in out.iter_mut().zip(&table[base..base + n]) {
                    if !c.is_zero() {
                        o.add_product(&xy, c);
                    }
                }
            }
        }
        out
    }

    /// The product `ab` of two elements given in coordinates.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.bilinear(&self.product, a, b)
    }

    /// The bracket `[a, b]`.
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.bilinear(&self.bracket, a, b)
    }

    pub fn op(&self, op: Operation, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        match op {
            Operation::Product => self.mul(a, b),
            Operation::Bracket => self.bracket(a, b),
        }
    }

    /// Both structure tensors vanish.
    pub fn is_abelian(&self) -> bool {
        self.product.iter().chain(&self.bracket).all(Scalar::is_zero)
    }

    /// Structure constants relative to the basis given by the columns of
    /// `p`, which must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Awb> {
        if p.shape() != (self.dim, self.dim) {
            return Err(Error::Dimension("change of basis must be square".into()));
        }
        let inv = p.inverse().ok_or(Error::NotIso)?;
        let cols = p.columns();
        let mut t = Tensors::zeros(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for op in [Operation::Product, Operation::Bracket] {
                    let v = inv.apply(&self.op(op, &cols[i], &cols[j]));
                    for (k, c) in v.into_iter().enumerate() {
                        t.set(op, i, j, k, c);
                    }
                }
            }
        }
        t.build(self.name.clone())
    }

    /// The subalgebra on `s`, in the coordinates of its canonical basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Awb> {
        let mut t = Tensors::zeros(self.field, s.dim());
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                for op in [Operation::Product, Operation::Bracket] {
                    let v = self.op(op, s.vector(i), s.vector(j));
                    let coords = s.coordinates(&v).ok_or(Error::NotSubalgebra)?;
                    for (k, c) in coords.into_iter().enumerate() {
                        t.set(op, i, j, k, c);
                    }
                }
            }
        }
        t.build(format!("{}|sub", self.name))
    }

    /// True when `s` is closed under both operations.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        ideal_flags(self, s).subalgebra
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn heis(field: Field) -> Awb {
        let mut t = Tensors::zeros(field, 3);
        t.set_bracket(0, 1, 2, 1);
        t.build("heis").unwrap()
    }

    #[test]
    fn heis_and_abelian_validate() {
        assert!(heis(Q).violations_free());
        assert!(Awb::abelian(Q, 4).is_abelian());
    }

    #[test]
    fn idempotent_with_self_bracket_fails_identity() {
        let mut t = Tensors::zeros(Q, 1);
        t.set_product(0, 0, 0, 1);
        t.set_bracket(0, 0, 0, 1);
        assert_eq!(t.violations(), vec![Violation::Identity1 { i: 0, j: 0, k: 0 }]);
        assert!(matches!(t.build("bad"), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn nonassociative_product_reported() {
        // e0 e0 = e1, everything else zero except e1 e0 = e0
        let mut t = Tensors::zeros(Q, 2);
        t.set_product(0, 0, 1, 1);
        t.set_product(1, 0, 0, 1);
        let v = t.violations();
        assert!(v.contains(&Violation::Associativity { i: 0, j: 0, k: 0 }));
    }

    #[test]
    fn wrong_tensor_length() {
        assert!(matches!(Awb::new("x", Q, 2, vec![], vec![]), Err(Error::Dimension(_))));
    }

    #[test]
    fn direct_product_with_zero_algebra() {
        let h = heis(Q);
        let p = Awb::direct_product(&h, &Awb::zero(Q)).unwrap();
        assert_eq!(p.product_tensor(), h.product_tensor());
        assert_eq!(p.bracket_tensor(), h.bracket_tensor());
        let ab2 = Awb::direct_product(&Awb::abelian(Q, 1), &Awb::abelian(Q, 1)).unwrap();
        assert!(ab2.is_abelian() && ab2.dim() == 2);
        assert!(Awb::direct_product(&h, &Awb::abelian(Field::prime(2).unwrap(), 1)).is_err());
    }

    #[test]
    fn d_bracket_on_commutative_algebra_vanishes() {
        // K[x]/(x^3) on 1, x, x^2
        let mut t = Tensors::zeros(Q, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i + j < 3 {
                    t.set_product(i, j, i + j, 1);
                }
            }
        }
        let d = Matrix::from_ints(Q, &[&[1, 2, 0], &[0, 3, 1], &[5, 0, 7]]);
        let a = Awb::d_bracket("poly", Q, 3, t.product, &d).unwrap();
        assert!(a.bracket_tensor().iter().all(Scalar::is_zero));
    }

    #[test]
    fn d_bracket_rejects_nonassociative_product() {
        let mut t = Tensors::zeros(Q, 2);
        t.set_product(0, 0, 1, 1);
        t.set_product(1, 0, 0, 1);
        let err = Awb::d_bracket("bad", Q, 2, t.product, &Matrix::identity(Q, 2)).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(v) if v.iter().all(|x| matches!(x, Violation::Associativity { .. }))));
    }

    #[test]
    fn zero_product_d_bracket_is_abelian() {
        let d = Matrix::from_ints(Q, &[&[1, 1], &[0, 1]]);
        let a = Awb::d_bracket("z", Q, 2, vec![Q.zero(); 8], &d).unwrap();
        assert!(a.is_abelian());
    }

    impl Awb {
        fn violations_free(&self) -> bool {
            violations(self.field, self.dim, &self.product, &self.bracket).is_empty()
        }
    }
}
