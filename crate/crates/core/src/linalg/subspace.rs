use super::{is_zero_vec, unit_vector, Field, Matrix, Scalar};

/// A subspace of `F^n` in canonical RREF form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn spanned_by<I, V>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let m = Matrix::from_rows(field, ambient, vectors.into_iter().map(|v| v.as_ref().to_vec()));
        Subspace::from_rows(&m)
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Subspace {
        Subspace::spanned_by(field, ambient, indices.iter().map(|&i| unit_vector(field, ambient, i)))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vectors()
    }

    /// Basis as the columns of an `ambient x dim` matrix (the inclusion map).
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Indices of the standard basis vectors spanning the canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// The span of the non-pivot standard basis vectors.
    pub fn complement(&self) -> Subspace {
        Subspace::coordinate(self.field(), self.ambient, &self.complement_indices())
    }

    /// Remainder of `v` after eliminating every pivot coordinate. Zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let neg = -&v[p];
            for (o, b) in out.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    o.add_product(&neg, b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the canonical basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the canonical basis.
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![self.field().zero(); self.ambient];
        for (row, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(row)) {
                o.add_product(c, b);
            }
        }
        out
    }

    /// Coordinates of the class of `v` modulo this subspace, relative to the
    /// canonical complement basis.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x = sum a_i u_i lies in `other` iff sum a_i reduce(u_i) = 0
        let residues: Vec<Vec<Scalar>> = self.vectors().map(|u| other.reduce(u)).collect();
        let m = Matrix::from_columns(self.field(), self.ambient, &residues);
        let combos = m.kernel();
        Subspace::spanned_by(self.field(), self.ambient, combos.vectors().map(|a| self.from_coordinates(a)))
    }

    /// Image under the linear map `m` (which must have `ambient` columns).
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::spanned_by(m.field(), m.rows(), self.vectors().map(|v| m.apply(v)))
    }

    /// `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| self.quotient_coordinates(&m.column(c))).collect();
        Matrix::from_columns(m.field(), self.ambient - self.dim(), &cols).kernel()
    }

    /// Extends this subspace's basis by standard basis vectors, in order,
    /// until it together with `avoid` spans everything. Returns the extension
    /// as a subspace complementary to `avoid` and containing `self`.
    pub fn extend_to_complement_of(&self, avoid: &Subspace) -> Subspace {
        let field = self.field();
        let mut acc = self.sum(avoid);
        let mut kept = self.clone();
        for i in 0..self.ambient {
            if acc.dim() == self.ambient {
                break;
            }
            let e = unit_vector(field, self.ambient, i);
            if !acc.contains(&e) {
                acc = acc.sum(&Subspace::spanned_by(field, self.ambient, [&e]));
                kept = kept.sum(&Subspace::spanned_by(field, self.ambient, [&e]));
            }
        }
        kept
    }
}
