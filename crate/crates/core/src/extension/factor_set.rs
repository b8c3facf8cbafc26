use std::sync::Arc;

use super::{CentralExtension, ExtensionMorphism};
use crate::awb::{Awb, AwbMorphism, Tensors};
use crate::error::{Error, Operation, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// Central factor set `(f, g)` on `Q` with values in an `m`-dimensional
/// trivial module `N`.
///
/// `f(a, b)` and `g(a)(b)` are stored at `(a*n + b)*m .. (a*n + b + 1)*m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    quotient: Arc<Awb>,
    kernel_dim: usize,
    f: Vec<Scalar>,
    g: Vec<Scalar>,
}

impl FactorSet {
    pub fn zero(quotient: Arc<Awb>, kernel_dim: usize) -> FactorSet {
        let len = quotient.dim() * quotient.dim() * kernel_dim;
        let zero = quotient.field().zero();
        FactorSet {
            quotient,
            kernel_dim,
            f: vec![zero.clone(); len],
            g: vec![zero; len],
        }
    }

    pub fn new(quotient: Arc<Awb>, kernel_dim: usize, f: Vec<Scalar>, g: Vec<Scalar>) -> Result<FactorSet> {
        let len = quotient.dim() * quotient.dim() * kernel_dim;
        if f.len() != len || g.len() != len {
            return Err(Error::Dimension(format!("factor set tables must have {len} entries")));
        }
        let field = quotient.field();
        if let Some(s) = f.iter().chain(&g).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(FactorSet {
            quotient,
            kernel_dim,
            f,
            g,
        })
    }

    /// `f(a,b) = ∂a ∂b - ∂(ab)` and `g(a)(b) = [∂a,∂b] - ∂[a,b]`, in kernel
    /// coordinates.
    pub fn extract(e: &CentralExtension) -> FactorSet {
        let q = e.quotient().clone();
        let n = q.dim();
        let m = e.kernel_dim();
        let g_alg = e.total();
        let lifts = e.section().columns();
        let mut fs = FactorSet::zero(q.clone(), m);
        for a in 0..n {
            for b in 0..n {
                for op in [Operation::Product, Operation::Bracket] {
                    let up = g_alg.op(op, &lifts[a], &lifts[b]);
                    let down = e.lift(q.basis_op(op, a, b));
                    let diff: Vec<Scalar> = up.iter().zip(&down).map(|(x, y)| x - y).collect();
                    let coords = e.kernel().coordinates(&diff).expect("defect of a section lies in the kernel");
                    let slot = (a * n + b) * m;
                    let table = match op {
                        Operation::Product => &mut fs.f,
                        Operation::Bracket => &mut fs.g,
                    };
                    table[slot..slot + m].clone_from_slice(&coords);
                }
            }
        }
        fs
    }

    pub fn field(&self) -> Field {
        self.quotient.field()
    }

    pub fn quotient(&self) -> &Arc<Awb> {
        &self.quotient
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn f(&self, a: usize, b: usize) -> &[Scalar] {
        let s = (a * self.quotient.dim() + b) * self.kernel_dim;
        &self.f[s..s + self.kernel_dim]
    }

    pub fn g(&self, a: usize, b: usize) -> &[Scalar] {
        let s = (a * self.quotient.dim() + b) * self.kernel_dim;
        &self.g[s..s + self.kernel_dim]
    }

    pub fn f_mut(&mut self, a: usize, b: usize) -> &mut [Scalar] {
        let s = (a * self.quotient.dim() + b) * self.kernel_dim;
        &mut self.f[s..s + self.kernel_dim]
    }

    pub fn g_mut(&mut self, a: usize, b: usize) -> &mut [Scalar] {
        let s = (a * self.quotient.dim() + b) * self.kernel_dim;
        &mut self.g[s..s + self.kernel_dim]
    }

    /// `Σ_t v_t table(t, c)` or `Σ_t v_t table(c, t)`.
    fn contract(&self, table: &[Scalar], v: &[Scalar], fixed: usize, left: bool) -> Vec<Scalar> {
        let n = self.quotient.dim();
        let m = self.kernel_dim;
        let mut out = vec![self.field().zero(); m];
        for (t, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = if left { (t * n + fixed) * m } else { (fixed * n + t) * m };
            for (o, y) in out.iter_mut().zip(&table[s..s + m]) {
                if !y.is_zero() {
                    o.add_product(x, y);
                }
            }
        }
        out
    }

    /// First basis triple violating `f(ab, c) = f(a, bc)`.
    pub fn cocycle_violation(&self) -> Option<(usize, usize, usize)> {
        let q = &self.quotient;
        let n = q.dim();
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| {
                self.contract(&self.f, q.basis_product(a, b), c, true) != self.contract(&self.f, q.basis_product(b, c), a, false)
            })
    }

    /// First basis triple violating `g(ab)(c) = f([a,c], b) + f(a, [b,c])`.
    pub fn bracket_violation(&self) -> Option<(usize, usize, usize)> {
        let q = &self.quotient;
        let n = q.dim();
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| {
                let lhs = self.contract(&self.g, q.basis_product(a, b), c, true);
                let r1 = self.contract(&self.f, q.basis_bracket(a, c), b, true);
                let r2 = self.contract(&self.f, q.basis_bracket(b, c), a, false);
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| x + y).collect();
                lhs != rhs
            })
    }

    pub fn check(&self) -> Result<()> {
        if let Some((a, b, c)) = self.cocycle_violation() {
            return Err(Error::CocycleViolation(a, b, c));
        }
        if let Some((a, b, c)) = self.bracket_violation() {
            return Err(Error::BracketCompatibilityViolation(a, b, c));
        }
        Ok(())
    }

    /// Structure constants on `N ⊕ Q` (kernel basis first), without checking
    /// the factor-set conditions.
    pub fn tensors(&self) -> Tensors {
        let n = self.quotient.dim();
        let m = self.kernel_dim;
        let mut t = Tensors::zeros(self.field(), m + n);
        for a in 0..n {
            for b in 0..n {
                for (op, table) in [(Operation::Product, &self.f), (Operation::Bracket, &self.g)] {
                    let s = (a * n + b) * m;
                    for k in 0..m {
                        t.set(op, m + a, m + b, k, table[s + k].clone());
                    }
                    for (k, v) in self.quotient.basis_op(op, a, b).iter().enumerate() {
                        t.set(op, m + a, m + b, m + k, v.clone());
                    }
                }
            }
        }
        t
    }

    /// The extension `0 -> N -> N ⊕_(f,g) Q -> Q -> 0`.
    pub fn build(&self) -> Result<CentralExtension> {
        self.check()?;
        let n = self.quotient.dim();
        let m = self.kernel_dim;
        let field = self.field();
        let total = Arc::new(self.tensors().build(format!("N{m}+{}", self.quotient.name()))?);
        let proj = Matrix::from_fn(field, n, m + n, |r, c| if c == m + r { field.one() } else { field.zero() });
        CentralExtension::from_projection(AwbMorphism::new(total, self.quotient.clone(), proj)?)
    }

    /// `(n, q) ↦ χ(n) + ∂q` from `build(extract(e))` to `e`.
    pub fn roundtrip_morphism(built: &CentralExtension, e: &CentralExtension) -> Result<ExtensionMorphism> {
        let beta = AwbMorphism::new(built.total().clone(), e.total().clone(), e.inclusion().hstack(e.section()))?;
        ExtensionMorphism::from_total(built, e, beta)
    }
}
