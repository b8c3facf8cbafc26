//! Exhaustive isomorphism search over prime fields.
//!
//! Images of the source basis are assigned in order, each chosen among the
//! nonzero vectors of `F_p^n` in lexicographic order (coordinate 0 most
//! significant). A partial assignment is pruned as soon as it is linearly
//! dependent or some structure equation whose indices are all assigned
//! fails. The first complete assignment in that order is the answer, so the
//! result does not depend on the execution strategy.

use std::sync::Arc;

use crate::awb::{Awb, AwbMorphism};
use crate::error::{Error, Result};
use crate::extension::{CentralExtension, ExtensionMorphism};
use crate::linalg::{Field, Matrix, Subspace};
use crate::par::{self, Execution};

type Vector = Vec<u32>;

/// Structure constants reduced to residues.
struct Table {
    p: u64,
    n: usize,
    product: Vec<u32>,
    bracket: Vec<u32>,
}

impl Table {
    fn new(a: &Awb, p: u32) -> Table {
        let residues = |t: &[crate::linalg::Scalar]| t.iter().map(|s| s.residue().expect("prime field")).collect();
        Table {
            p: p as u64,
            n: a.dim(),
            product: residues(a.product_tensor()),
            bracket: residues(a.bracket_tensor()),
        }
    }

    fn at(t: &[u32], n: usize, i: usize, j: usize) -> &[u32] {
        &t[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// `u * v` under the tensor `t`.
    fn eval(&self, t: &[u32], u: &[u32], v: &[u32]) -> Vector {
        let n = self.n;
        let mut out = vec![0u64; n];
        for (a, &x) in u.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in v.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let s = x as u64 * y as u64 % self.p;
                for (o, &c) in out.iter_mut().zip(Table::at(t, n, a, b)) {
                    *o = (*o + s * c as u64) % self.p;
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// `Σ_t coeffs_t images_t`
    fn combine(&self, coeffs: &[u32], images: &[&[u32]], dim: usize) -> Vector {
        let mut out = vec![0u64; dim];
        for (c, img) in coeffs.iter().zip(images) {
            if *c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(img.iter()) {
                *o = (*o + *c as u64 * x as u64) % self.p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }
}

/// Incremental row echelon form over `F_p`, for independence tests.
#[derive(Clone)]
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn new(p: u64) -> Echelon {
        Echelon { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &[u32]) -> Vector {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot] as u64;
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + (self.p - c) * r as u64) % self.p) as u32;
            }
        }
        v
    }

    fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`, returning `false` when it is already in the span.
    fn push(&mut self, v: &[u32]) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(r[pivot] as u64, self.p - 2, self.p);
        let r: Vector = r.iter().map(|&x| (x as u64 * inv % self.p) as u32).collect();
        self.rows.push((pivot, r));
        true
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// All nonzero vectors of `F_p^n`, coordinate 0 most significant.
fn nonzero_vectors(p: u32, n: usize) -> Vec<Vector> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as usize) as u32;
                idx /= p as usize;
            }
            v
        })
        .collect()
}

/// Per-index restrictions on where basis vectors may be sent.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    /// `allowed[i]`, when present, is a subspace of the target that must
    /// contain the image of `e_i`.
    pub allowed: Vec<Option<Subspace>>,
}

impl Constraints {
    pub fn none() -> Constraints {
        Constraints::default()
    }

    fn for_index(&self, i: usize) -> Option<&Subspace> {
        self.allowed.get(i).and_then(Option::as_ref)
    }
}

struct Search {
    source: Table,
    target: Table,
    candidates: Vec<Vec<Vector>>,
    /// `checks[i]` lists basis pairs whose equations involve only indices `<= i`.
    checks: Vec<Vec<(usize, usize)>>,
    exec: Execution,
}

impl Search {
    fn new(a: &Awb, b: &Awb, p: u32, constraints: &Constraints, exec: Execution) -> Search {
        let source = Table::new(a, p);
        let target = Table::new(b, p);
        let n = a.dim();
        let all = nonzero_vectors(p, n);
        let candidates = (0..n)
            .map(|i| match constraints.for_index(i) {
                None => all.clone(),
                Some(s) => {
                    let mut ech = Echelon::new(p as u64);
                    for v in s.vectors() {
                        ech.push(&v.iter().map(|x| x.residue().expect("prime field")).collect::<Vector>());
                    }
                    all.iter().filter(|v| ech.contains(v)).cloned().collect()
                }
            })
            .collect();
        let mut checks = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let mut level = i.max(j);
                for t in [&source.product, &source.bracket] {
                    if let Some(k) = Table::at(t, n, i, j).iter().rposition(|&c| c != 0) {
                        level = level.max(k);
                    }
                }
                checks[level].push((i, j));
            }
        }
        Search {
            source,
            target,
            candidates,
            checks,
            exec,
        }
    }

    fn consistent(&self, images: &[&[u32]], level: usize) -> bool {
        let n = self.source.n;
        self.checks[level].iter().all(|&(i, j)| {
            [(&self.source.product, &self.target.product), (&self.source.bracket, &self.target.bracket)]
                .into_iter()
                .all(|(s, t)| {
                    let lhs = self.source.combine(Table::at(s, n, i, j), images, n);
                    lhs == self.target.eval(t, images[i], images[j])
                })
        })
    }

    /// Depth-first extension of `chosen`; `visit` returns `true` to stop.
    fn extend(&self, chosen: &mut Vec<Vector>, ech: &Echelon, visit: &mut dyn FnMut(&[Vector]) -> bool) -> bool {
        let level = chosen.len();
        if level == self.source.n {
            return visit(chosen);
        }
        for v in &self.candidates[level] {
            let mut next = ech.clone();
            if !next.push(v) {
                continue;
            }
            chosen.push(v.clone());
            let images: Vec<&[u32]> = chosen.iter().map(Vec::as_slice).collect();
            if self.consistent(&images, level) && self.extend(chosen, &next, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn roots(&self) -> Vec<Vector> {
        self.candidates.first().cloned().unwrap_or_default()
    }

    fn explore_root(&self, root: &Vector, visit: &mut dyn FnMut(&[Vector]) -> bool) {
        let mut ech = Echelon::new(self.source.p);
        if !ech.push(root) {
            return;
        }
        let mut chosen = vec![root.clone()];
        let images: Vec<&[u32]> = vec![root.as_slice()];
        if self.consistent(&images, 0) {
            self.extend(&mut chosen, &ech, visit);
        }
    }

    fn first(&self, accept: &(dyn Fn(&[Vector]) -> bool + Sync)) -> Option<Vec<Vector>> {
        if self.source.n == 0 {
            return accept(&[]).then(Vec::new);
        }
        par::find_map_first(self.exec, &self.roots(), |root| {
            let mut found = None;
            self.explore_root(root, &mut |imgs| {
                if accept(imgs) {
                    found = Some(imgs.to_vec());
                    true
                } else {
                    false
                }
            });
            found
        })
    }

    fn all(&self) -> Vec<Vec<Vector>> {
        if self.source.n == 0 {
            return vec![Vec::new()];
        }
        par::map(self.exec, &self.roots(), |root| {
            let mut found = Vec::new();
            self.explore_root(root, &mut |imgs| {
                found.push(imgs.to_vec());
                false
            });
            found
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

fn prime_of(a: &Awb, b: &Awb) -> Result<u32> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    match a.field() {
        Field::Prime { p } => Ok(p),
        f => Err(Error::UnsupportedField(f)),
    }
}

fn to_matrix(field: Field, rows: usize, images: &[Vector]) -> Matrix {
    Matrix::from_fn(field, rows, images.len(), |r, c| field.from_i64(images[c][r] as i64))
}

/// The lexicographically first isomorphism `a -> b`, as a matrix.
pub fn find_isomorphism_with(a: &Awb, b: &Awb, constraints: &Constraints, exec: Execution) -> Result<Option<Matrix>> {
    find_isomorphism_where(a, b, constraints, exec, &|_| true)
}

/// The lexicographically first isomorphism `a -> b` accepted by `accept`.
pub fn find_isomorphism_where(
    a: &Awb,
    b: &Awb,
    constraints: &Constraints,
    exec: Execution,
    accept: &(dyn Fn(&Matrix) -> bool + Sync),
) -> Result<Option<Matrix>> {
    let p = prime_of(a, b)?;
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let field = a.field();
    let rows = b.dim();
    let s = Search::new(a, b, p, constraints, exec);
    Ok(s.first(&|imgs| accept(&to_matrix(field, rows, imgs))).map(|imgs| to_matrix(field, rows, &imgs)))
}

/// Every isomorphism `a -> b` satisfying `constraints`, in search order.
pub fn all_isomorphisms_with(a: &Awb, b: &Awb, constraints: &Constraints, exec: Execution) -> Result<Vec<Matrix>> {
    let p = prime_of(a, b)?;
    if a.dim() != b.dim() {
        return Ok(Vec::new());
    }
    let s = Search::new(a, b, p, constraints, exec);
    Ok(s.all().iter().map(|imgs| to_matrix(a.field(), b.dim(), imgs)).collect())
}

pub fn find_isomorphism(a: &Arc<Awb>, b: &Arc<Awb>) -> Result<Option<AwbMorphism>> {
    find_isomorphism_with(a, b, &Constraints::none(), Execution::default())?
        .map(|m| AwbMorphism::new(a.clone(), b.clone(), m))
        .transpose()
}

pub fn are_isomorphic(a: &Awb, b: &Awb) -> Result<bool> {
    Ok(find_isomorphism_with(a, b, &Constraints::none(), Execution::default())?.is_some())
}

/// All automorphisms of `a`, in search order.
pub fn automorphisms(a: &Arc<Awb>) -> Result<Vec<AwbMorphism>> {
    automorphisms_with(a, Execution::default())
}

pub fn automorphisms_with(a: &Arc<Awb>, exec: Execution) -> Result<Vec<AwbMorphism>> {
    all_isomorphisms_with(a, a, &Constraints::none(), exec)?
        .into_iter()
        .map(|m| AwbMorphism::new(a.clone(), a.clone(), m))
        .collect()
}

/// An isomorphism of extensions `e1 -> e2`: an algebra isomorphism of the
/// totals carrying `N₁` onto `N₂`.
pub fn find_extension_isomorphism(e1: &CentralExtension, e2: &CentralExtension) -> Result<Option<ExtensionMorphism>> {
    find_extension_isomorphism_with(e1, e2, Execution::default())
}

pub fn find_extension_isomorphism_with(
    e1: &CentralExtension,
    e2: &CentralExtension,
    exec: Execution,
) -> Result<Option<ExtensionMorphism>> {
    prime_of(e1.total(), e2.total())?;
    if e1.total().dim() != e2.total().dim() || e1.kernel_dim() != e2.kernel_dim() {
        return Ok(None);
    }
    // adapted basis of G₁: kernel first, then the lifts of Q₁
    let adapted = e1.inclusion().hstack(e1.section());
    let g1 = e1.total().change_basis(&adapted)?;
    let m = e1.kernel_dim();
    let constraints = Constraints {
        allowed: (0..g1.dim()).map(|i| (i < m).then(|| e2.kernel().clone())).collect(),
    };
    let Some(b) = find_isomorphism_with(&g1, e2.total(), &constraints, exec)? else {
        return Ok(None);
    };
    let inv = adapted.inverse().expect("adapted basis is invertible");
    let beta = AwbMorphism::new(e1.total().clone(), e2.total().clone(), b.mul(&inv))?;
    ExtensionMorphism::from_total(e1, e2, beta).map(Some)
}
