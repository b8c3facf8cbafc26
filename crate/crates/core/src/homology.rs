//! Trivial-coefficient chain complex in degrees 0..=2, with `H0`, `H1`,
//! induced maps and the connecting map of a central extension.
//!
//! Chain bases: `C0 = A`; `C1` has the `⊗` block `e_i⊗e_j` at `i*n + j`
//! followed by the `∘` block at `n² + i*n + j`; `C2` uses the same layout
//! with index `(i*n + j)*n + k` inside each block.

use std::sync::Arc;

use crate::awb::{Awb, AwbMorphism};
use crate::error::Result;
use crate::extension::{CentralExtension, CommutatorMaps};
use crate::linalg::{Matrix, RowBasis, Scalar, Subspace};
use crate::par::{self, Execution};

/// Index of `e_i⊗e_j` in `C1`.
pub fn tensor_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Index of `e_i∘e_j` in `C1`.
pub fn circ_index(n: usize, i: usize, j: usize) -> usize {
    n * n + i * n + j
}

#[derive(Clone, Debug)]
pub struct ChainSlice {
    algebra: Arc<Awb>,
    d0: Matrix,
    d1: Matrix,
}

impl ChainSlice {
    pub fn algebra(&self) -> &Arc<Awb> {
        &self.algebra
    }

    pub fn c0_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn c1_dim(&self) -> usize {
        2 * self.algebra.dim().pow(2)
    }

    pub fn c2_dim(&self) -> usize {
        2 * self.algebra.dim().pow(3)
    }

    /// `C1 -> C0`
    pub fn d0(&self) -> &Matrix {
        &self.d0
    }

    /// `C2 -> C1`
    pub fn d1(&self) -> &Matrix {
        &self.d1
    }
}

pub fn chain_slice(a: &Arc<Awb>) -> ChainSlice {
    chain_slice_with(a, Execution::default())
}

pub fn chain_slice_with(a: &Arc<Awb>, exec: Execution) -> ChainSlice {
    let n = a.dim();
    let field = a.field();
    let d0_cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| a.basis_product(ij / n, ij % n).to_vec())
        .chain((0..n * n).map(|ij| a.basis_bracket(ij / n, ij % n).to_vec()))
        .collect();
    let d0 = Matrix::from_columns(field, n, &d0_cols);

    let c1 = 2 * n * n;
    // one block of columns per first index i, assembled independently
    let blocks = par::map_range(exec, n, |i| {
        let mut tensor_cols = Vec::with_capacity(n * n);
        let mut circ_cols = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let mut col = vec![field.zero(); c1];
                for t in 0..n {
                    // (e_i e_j)⊗e_k - e_i⊗(e_j e_k)
                    let mu_ij = &a.basis_product(i, j)[t];
                    if !mu_ij.is_zero() {
                        col[tensor_index(n, t, k)].add_assign_ref(mu_ij);
                    }
                    let mu_jk = &a.basis_product(j, k)[t];
                    if !mu_jk.is_zero() {
                        col[tensor_index(n, i, t)].add_assign_ref(&-mu_jk);
                    }
                }
                tensor_cols.push(col);

                let mut col = vec![field.zero(); c1];
                for t in 0..n {
                    // [e_i,e_k]⊗e_j + e_i⊗[e_j,e_k] - (e_i e_j)∘e_k
                    let b_ik = &a.basis_bracket(i, k)[t];
                    if !b_ik.is_zero() {
                        col[tensor_index(n, t, j)].add_assign_ref(b_ik);
                    }
                    let b_jk = &a.basis_bracket(j, k)[t];
                    if !b_jk.is_zero() {
                        col[tensor_index(n, i, t)].add_assign_ref(b_jk);
                    }
                    let mu_ij = &a.basis_product(i, j)[t];
                    if !mu_ij.is_zero() {
                        col[circ_index(n, t, k)].add_assign_ref(&-mu_ij);
                    }
                }
                circ_cols.push(col);
            }
        }
        (tensor_cols, circ_cols)
    });
    let mut cols = Vec::with_capacity(2 * n * n * n);
    let mut circ = Vec::with_capacity(n * n * n);
    for (t, c) in blocks {
        cols.extend(t);
        circ.extend(c);
    }
    cols.extend(circ);
    let d1 = Matrix::from_columns(field, c1, &cols);
    ChainSlice {
        algebra: a.clone(),
        d0,
        d1,
    }
}

/// A homology space presented by cycle representatives modulo boundaries.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    degree: usize,
    representatives: Matrix,
    cycles: Subspace,
    boundaries: Subspace,
    coords: RowBasis,
}

impl HomologySpace {
    fn new(degree: usize, cycles: Subspace, boundaries: Subspace) -> HomologySpace {
        let field = cycles.field();
        let ambient = cycles.ambient_dim();
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let mut span = boundaries.clone();
        for v in cycles.vectors() {
            if !span.contains(v) {
                chosen.push(v.to_vec());
                span = span.sum(&Subspace::spanned_by(field, ambient, [v]));
            }
        }
        let representatives = Subspace::spanned_by(field, ambient, &chosen).basis().clone();
        let coords = RowBasis::new(&representatives.vstack(boundaries.basis()));
        HomologySpace {
            degree,
            representatives,
            cycles,
            boundaries,
            coords,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.rows()
    }

    /// One cycle per row.
    pub fn representatives(&self) -> &Matrix {
        &self.representatives
    }

    pub fn representative(&self, k: usize) -> &[Scalar] {
        self.representatives.row(k)
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Coordinates of the class of `z`, or `None` when `z` is not a cycle.
    pub fn class_of(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.cycles.contains(z) {
            return None;
        }
        let mut c = self.coords.coordinates(z)?;
        c.truncate(self.dim());
        Some(c)
    }

    pub fn is_boundary(&self, z: &[Scalar]) -> bool {
        self.boundaries.contains(z)
    }
}

/// `H0(A) = coker d0`.
pub fn h0(a: &Arc<Awb>) -> HomologySpace {
    let s = chain_slice(a);
    HomologySpace::new(0, Subspace::full(a.field(), a.dim()), s.d0.column_space())
}

/// `H1(A) = ker d0 / im d1`.
pub fn h1(a: &Arc<Awb>) -> HomologySpace {
    h1_with(a, Execution::default())
}

pub fn h1_with(a: &Arc<Awb>, exec: Execution) -> HomologySpace {
    h1_of(&chain_slice_with(a, exec))
}

pub fn h1_of(s: &ChainSlice) -> HomologySpace {
    HomologySpace::new(1, s.d0.kernel(), s.d1.column_space())
}

/// The chain map `C1(φ)`.
pub fn chain_map_c1(phi: &AwbMorphism) -> Matrix {
    let n = phi.source().dim();
    let m = phi.target().dim();
    let field = phi.source().field();
    let p = phi.matrix();
    let mut out = Matrix::zeros(field, 2 * m * m, 2 * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                let a = p.get(k, i);
                if a.is_zero() {
                    continue;
                }
                for l in 0..m {
                    let b = p.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let ab = a * b;
                    out.entry_mut(tensor_index(m, k, l), tensor_index(n, i, j)).add_assign_ref(&ab);
                    out.entry_mut(circ_index(m, k, l), circ_index(n, i, j)).add_assign_ref(&ab);
                }
            }
        }
    }
    out
}

/// `H1(φ)` as a `dim H1(target) x dim H1(source)` matrix.
pub fn induced_h1(phi: &AwbMorphism) -> Result<Matrix> {
    phi.require_algebra_map()?;
    Ok(induced_h1_between(&h1(phi.source()), &h1(phi.target()), phi))
}

/// `H1(φ)` relative to precomputed homology spaces of source and target.
pub fn induced_h1_between(source: &HomologySpace, target: &HomologySpace, phi: &AwbMorphism) -> Matrix {
    let c = chain_map_c1(phi);
    let cols: Vec<Vec<Scalar>> = source
        .representatives()
        .row_vectors()
        .map(|r| target.class_of(&c.apply(r)).expect("chain map sends cycles to cycles"))
        .collect();
    Matrix::from_columns(phi.source().field(), target.dim(), &cols)
}

/// The connecting map `θ: H1(Q) -> N` of a central extension.
#[derive(Clone, Debug)]
pub struct Theta {
    /// `dim N x dim H1(Q)`, in the coordinates of the kernel basis.
    pub matrix: Matrix,
    pub h1: HomologySpace,
    /// Image inside `G`.
    pub image: Subspace,
}

impl Theta {
    pub fn rank(&self) -> usize {
        self.image.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.h1.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.matrix.rows()
    }

    /// `ker θ` in `H1(Q)` coordinates.
    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }
}

/// Evaluates `Σ α (q⊗q') + Σ γ (q∘q')` on lifts: `Σ α ∂q∂q' + Σ γ [∂q,∂q']`.
pub fn lift_chain(maps: &CommutatorMaps, chain: &[Scalar]) -> Vec<Scalar> {
    let n = maps.quotient_dim();
    let mut out = vec![maps.field().zero(); maps.ambient_dim()];
    for i in 0..n {
        for j in 0..n {
            for (coef, value) in [(&chain[tensor_index(n, i, j)], maps.p(i, j)), (&chain[circ_index(n, i, j)], maps.c(i, j))] {
                if coef.is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(value) {
                    if !v.is_zero() {
                        o.add_product(coef, v);
                    }
                }
            }
        }
    }
    out
}

pub fn theta(e: &CentralExtension) -> Theta {
    theta_with(e, Execution::default())
}

pub fn theta_with(e: &CentralExtension, exec: Execution) -> Theta {
    let h1 = h1_with(e.quotient(), exec);
    theta_on(e, h1)
}

pub fn theta_on(e: &CentralExtension, h1: HomologySpace) -> Theta {
    let maps = e.commutator_maps();
    let field = e.field();
    let lifted: Vec<Vec<Scalar>> = h1.representatives().row_vectors().map(|r| lift_chain(&maps, r)).collect();
    let cols: Vec<Vec<Scalar>> = lifted
        .iter()
        .map(|g| e.kernel().coordinates(g).expect("lifted cycles land in the kernel"))
        .collect();
    let matrix = Matrix::from_columns(field, e.kernel().dim(), &cols);
    let image = Subspace::spanned_by(field, e.total().dim(), &lifted);
    Theta { matrix, h1, image }
}

/// `θ_Q: H1(Q/Z(Q)) -> [[Q,Q]]`, the connecting map of `Z(Q) -> Q -> Q/Z(Q)`
/// followed by the inclusion of the center.
#[derive(Clone, Debug)]
pub struct ThetaQ {
    /// `dim Q x dim H1(Q/Z(Q))`
    pub matrix: Matrix,
    pub image: Subspace,
    pub theta: Theta,
}

pub fn theta_q(q: &Arc<Awb>) -> ThetaQ {
    let e = CentralExtension::of_center(q);
    let theta = theta(&e);
    let matrix = e.kernel().inclusion().mul(&theta.matrix);
    ThetaQ {
        matrix,
        image: theta.image.clone(),
        theta,
    }
}
