//! JSON files for algebras, extensions, certificates and factor sets.
//!
//! Scalars are written as strings (`"a/b"` or an integer) so rationals stay
//! exact; integers are also accepted on input. Output is canonical: sparse
//! entries are sorted and zeros omitted, so writing, reading and writing
//! again gives identical text.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::awb::{derived_algebra, Awb, AwbMorphism, Tensors};
use crate::error::{Error, Operation, Result};
use crate::extension::{CentralExtension, FactorSet};
use crate::isoclinism::IsoclinismCertificate;
use crate::linalg::{Field, Matrix, Scalar, Subspace};

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Text(String),
    Int(i64),
}

impl Value {
    fn of(s: &Scalar) -> Value {
        Value::Text(s.to_string())
    }

    fn read(&self, field: Field, context: &str) -> Result<Scalar> {
        let parsed = match self {
            Value::Text(t) => field.parse(t),
            Value::Int(i) => Ok(field.from_i64(*i)),
        };
        parsed.map_err(|e| Error::Parse(format!("{context}: {e}")))
    }
}

/// `[i, j, k, value]`
pub type Entry = (usize, usize, usize, Value);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwbFile {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    #[serde(default)]
    pub product: Vec<Entry>,
    #[serde(default)]
    pub bracket: Vec<Entry>,
}

fn check_field(field: Field) -> Result<Field> {
    match field {
        Field::Rational => Ok(field),
        Field::Prime { p } => Field::prime(p as u64),
    }
}

fn sparse(n: usize, tensor: &[Scalar]) -> Vec<Entry> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &tensor[(i * n + j) * n + k];
                if !v.is_zero() {
                    out.push((i, j, k, Value::of(v)));
                }
            }
        }
    }
    out
}

impl AwbFile {
    pub fn from_awb(a: &Awb) -> AwbFile {
        AwbFile {
            name: a.name().to_string(),
            field: a.field(),
            dim: a.dim(),
            product: sparse(a.dim(), a.product_tensor()),
            bracket: sparse(a.dim(), a.bracket_tensor()),
        }
    }

    /// Validated algebra; repeated entries add up.
    pub fn to_awb(&self) -> Result<Awb> {
        let field = check_field(self.field)?;
        let n = self.dim;
        let mut t = Tensors::zeros(field, n);
        for (op, entries) in [(Operation::Product, &self.product), (Operation::Bracket, &self.bracket)] {
            let label = match op {
                Operation::Product => "product",
                Operation::Bracket => "bracket",
            };
            for (idx, (i, j, k, v)) in entries.iter().enumerate() {
                if *i >= n || *j >= n || *k >= n {
                    return Err(Error::Parse(format!(
                        "{label}[{idx}]: index ({i}, {j}, {k}) out of range for dim {n}"
                    )));
                }
                let v = v.read(field, &format!("{label}[{idx}]"))?;
                let slot = match op {
                    Operation::Product => &mut t.product,
                    Operation::Bracket => &mut t.bracket,
                };
                slot[(i * n + j) * n + k].add_assign_ref(&v);
            }
        }
        t.build(self.name.clone())
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn awb_to_json(a: &Awb) -> String {
    to_json(&AwbFile::from_awb(a))
}

pub fn parse_awb(text: &str) -> Result<Awb> {
    parse_json::<AwbFile>(text, "algebra file")?.to_awb()
}

pub fn load_awb(path: impl AsRef<Path>) -> Result<Awb> {
    let path = path.as_ref();
    parse_awb(&read_file(path)?).map_err(|e| context(path, e))
}

fn context(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) if !m.starts_with(&path.display().to_string()) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    }
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<Value>> {
    m.row_vectors().map(|r| r.iter().map(Value::of).collect()).collect()
}

fn read_rows(field: Field, cols: usize, rows: &[Vec<Value>], what: &str) -> Result<Matrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse(format!("{what}[{r}]: expected {cols} entries, got {}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, v)| v.read(field, &format!("{what}[{r}][{c}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Ok(Matrix::from_rows(field, cols, out))
}

/// An algebra given inline or by a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AwbFile),
    Path(String),
}

impl AlgebraRef {
    fn resolve(&self, base: Option<&Path>) -> Result<Awb> {
        match self {
            AlgebraRef::Inline(f) => f.to_awb(),
            AlgebraRef::Path(p) => {
                let path = match base {
                    Some(b) => b.join(p),
                    None => PathBuf::from(p),
                };
                load_awb(path)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub algebra: AlgebraRef,
    /// Kernel basis rows in algebra coordinates.
    pub kernel: Vec<Vec<Value>>,
}

impl ExtensionFile {
    pub fn from_extension(e: &CentralExtension) -> ExtensionFile {
        ExtensionFile {
            algebra: AlgebraRef::Inline(AwbFile::from_awb(e.total())),
            kernel: matrix_rows(e.kernel().basis()),
        }
    }

    pub fn to_extension(&self, base: Option<&Path>) -> Result<CentralExtension> {
        let g = Arc::new(self.algebra.resolve(base)?);
        let rows = read_rows(g.field(), g.dim(), &self.kernel, "kernel")?;
        CentralExtension::new(g, Subspace::from_rows(&rows))
    }
}

pub fn extension_to_json(e: &CentralExtension) -> String {
    to_json(&ExtensionFile::from_extension(e))
}

pub fn parse_extension(text: &str, base: Option<&Path>) -> Result<CentralExtension> {
    parse_json::<ExtensionFile>(text, "extension file")?.to_extension(base)
}

pub fn load_extension(path: impl AsRef<Path>) -> Result<CentralExtension> {
    let path = path.as_ref();
    parse_extension(&read_file(path)?, path.parent()).map_err(|e| context(path, e))
}

/// Canonical bases the certificate matrices refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBases {
    /// `[[G₁,G₁]]`, rows in `G₁` coordinates.
    pub derived_source: Vec<Vec<Value>>,
    /// `[[G₂,G₂]]`, rows in `G₂` coordinates.
    pub derived_target: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub field: Field,
    /// `dim Q₂ x dim Q₁`
    pub eta: Vec<Vec<Value>>,
    /// `dim [[G₂,G₂]] x dim [[G₁,G₁]]`
    pub xi: Vec<Vec<Value>>,
    pub bases: CertificateBases,
}

impl CertificateFile {
    pub fn from_certificate(e1: &CentralExtension, e2: &CentralExtension, cert: &IsoclinismCertificate) -> CertificateFile {
        CertificateFile {
            field: e1.field(),
            eta: matrix_rows(cert.eta.matrix()),
            xi: matrix_rows(&cert.xi),
            bases: CertificateBases {
                derived_source: matrix_rows(derived_algebra(e1.total()).basis()),
                derived_target: matrix_rows(derived_algebra(e2.total()).basis()),
            },
        }
    }

    /// Reads the certificate against the two extensions it claims to relate.
    pub fn to_certificate(&self, e1: &CentralExtension, e2: &CentralExtension) -> Result<IsoclinismCertificate> {
        let field = check_field(self.field)?;
        if field != e1.field() || field != e2.field() {
            return Err(Error::FieldMismatch(field, e1.field()));
        }
        let (d1, d2) = (e1.derived(), e2.derived());
        let b1 = read_rows(field, e1.total().dim(), &self.bases.derived_source, "bases.derived_source")?;
        let b2 = read_rows(field, e2.total().dim(), &self.bases.derived_target, "bases.derived_target")?;
        if &b1 != d1.basis() || &b2 != d2.basis() {
            return Err(Error::InvalidCertificate("derived bases do not match the extensions".into()));
        }
        let eta = read_rows(field, e1.quotient().dim(), &self.eta, "eta")?;
        if eta.rows() != e2.quotient().dim() {
            return Err(Error::Parse(format!("eta: expected {} rows", e2.quotient().dim())));
        }
        let xi = read_rows(field, d1.dim(), &self.xi, "xi")?;
        if xi.rows() != d2.dim() {
            return Err(Error::Parse(format!("xi: expected {} rows", d2.dim())));
        }
        Ok(IsoclinismCertificate {
            eta: AwbMorphism::new(e1.quotient().clone(), e2.quotient().clone(), eta)?,
            xi,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSetFile {
    pub quotient: AlgebraRef,
    pub kernel_dim: usize,
    /// `[a, b, k, value]`: the `k`-th kernel coordinate of `f(a, b)`.
    #[serde(default)]
    pub f: Vec<Entry>,
    /// `[a, b, k, value]`: the `k`-th kernel coordinate of `g(a)(b)`.
    #[serde(default)]
    pub g: Vec<Entry>,
}

impl FactorSetFile {
    pub fn from_factor_set(fs: &FactorSet) -> FactorSetFile {
        let n = fs.quotient().dim();
        let collect = |get: &dyn Fn(usize, usize) -> Vec<Scalar>| {
            let mut out = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for (k, v) in get(a, b).iter().enumerate() {
                        if !v.is_zero() {
                            out.push((a, b, k, Value::of(v)));
                        }
                    }
                }
            }
            out
        };
        FactorSetFile {
            quotient: AlgebraRef::Inline(AwbFile::from_awb(fs.quotient())),
            kernel_dim: fs.kernel_dim(),
            f: collect(&|a, b| fs.f(a, b).to_vec()),
            g: collect(&|a, b| fs.g(a, b).to_vec()),
        }
    }

    /// The factor set, without checking its defining conditions.
    pub fn to_factor_set(&self, base: Option<&Path>) -> Result<FactorSet> {
        let q = Arc::new(self.quotient.resolve(base)?);
        let (n, m) = (q.dim(), self.kernel_dim);
        let field = q.field();
        let mut fs = FactorSet::zero(q, m);
        for (label, entries) in [("f", &self.f), ("g", &self.g)] {
            for (idx, (a, b, k, v)) in entries.iter().enumerate() {
                if *a >= n || *b >= n || *k >= m {
                    return Err(Error::Parse(format!("{label}[{idx}]: index ({a}, {b}, {k}) out of range")));
                }
                let v = v.read(field, &format!("{label}[{idx}]"))?;
                let slot = if label == "f" { fs.f_mut(*a, *b) } else { fs.g_mut(*a, *b) };
                slot[*k].add_assign_ref(&v);
            }
        }
        Ok(fs)
    }
}

pub fn factor_set_to_json(fs: &FactorSet) -> String {
    to_json(&FactorSetFile::from_factor_set(fs))
}

pub fn parse_factor_set(text: &str, base: Option<&Path>) -> Result<FactorSet> {
    parse_json::<FactorSetFile>(text, "factor set file")?.to_factor_set(base)
}

pub fn load_factor_set(path: impl AsRef<Path>) -> Result<FactorSet> {
    let path = path.as_ref();
    parse_factor_set(&read_file(path)?, path.parent()).map_err(|e| context(path, e))
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    parse_json(text, "certificate file")
}

pub fn load_certificate(path: impl AsRef<Path>) -> Result<CertificateFile> {
    let path = path.as_ref();
    parse_certificate(&read_file(path)?).map_err(|e| context(path, e))
}
