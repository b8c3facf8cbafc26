//! Named example algebras and extensions, and valid-by-construction random
//! algebras.
//!
//! Names are field-independent; [`get_in`] and [`extension`] build an entry
//! over any field, [`get`] over the rationals.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::awb::{center, Awb, Tensors};
use crate::error::{Error, Result};
use crate::extension::{CentralExtension, FactorSet};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

const ALGEBRAS: &[&str] = &[
    "zero",
    "ab(1)",
    "ab(2)",
    "ab(3)",
    "ab(4)",
    "idem1",
    "heis",
    "heis_x_ab1",
    "heis_x_ab2",
    "taut_u2",
    "u2_dbracket",
    "cover_ab1",
    "cover_ab1_b",
];

const EXTENSIONS: &[&str] = &[
    "e_heis",
    "e_heis_x_ab1",
    "e_heis_x_ab2",
    "heis_x_ab1_over_heis",
    "split_ab2",
    "split_ab3",
    "trivial_heis",
    "trivial_taut_u2",
    "trivial_idem1",
    "e_u2_dbracket",
    "cover_ab1",
    "cover_ab1_b",
];

pub fn list() -> &'static [&'static str] {
    ALGEBRAS
}

pub fn extension_names() -> &'static [&'static str] {
    EXTENSIONS
}

/// Dimensions a catalog algebra must reproduce; `None` where no
/// independent value is recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub dim: usize,
    pub center: Option<usize>,
    pub derived: Option<usize>,
    pub h0: Option<usize>,
    pub h1: Option<usize>,
}

pub fn expected(name: &str) -> Result<Expected> {
    let e = |dim, center, derived, h0, h1| Expected {
        dim,
        center,
        derived,
        h0,
        h1,
    };
    Ok(match name {
        "zero" => e(0, Some(0), Some(0), Some(0), Some(0)),
        "idem1" => e(1, Some(0), Some(1), Some(0), Some(0)),
        // im d1 on heis is spanned by z⊗x + x⊗z, z⊗y, z⊗z, y⊗z
        "heis" => e(3, Some(1), Some(1), Some(2), Some(13)),
        "heis_x_ab1" => e(4, Some(2), Some(1), Some(3), Some(25)),
        "taut_u2" => e(3, Some(0), Some(3), Some(0), None),
        "u2_dbracket" => e(3, None, Some(3), Some(0), None),
        "cover_ab1" | "cover_ab1_b" => e(3, Some(2), Some(2), Some(1), None),
        "heis_x_ab2" => e(5, Some(3), Some(1), Some(4), None),
        other => match abelian_dim(other) {
            Some(n) => e(n, Some(n), Some(0), Some(n), Some(2 * n * n)),
            None => return Err(Error::UnknownName(other.into())),
        },
    })
}

fn abelian_dim(name: &str) -> Option<usize> {
    name.strip_prefix("ab(")?.strip_suffix(')')?.parse().ok()
}

fn heis_in(field: Field) -> Awb {
    let mut t = Tensors::zeros(field, 3);
    t.set_bracket(0, 1, 2, 1);
    t.build("heis").expect("heis is valid")
}

/// Upper-triangular 2x2 matrices on `E11, E12, E22`.
fn u2_product(field: Field) -> Vec<Scalar> {
    let mut t = Tensors::zeros(field, 3);
    t.set_product(0, 0, 0, 1);
    t.set_product(0, 1, 1, 1);
    t.set_product(1, 2, 1, 1);
    t.set_product(2, 2, 2, 1);
    t.product
}

/// Stem covers of `ab(1)` on `n1, n2, e`: `e e = n1` and `[e, e] = n1 f + n2`.
fn cover_factor_set(field: Field, mixed: bool) -> FactorSet {
    let q = Arc::new(Awb::abelian(field, 1));
    let mut fs = FactorSet::zero(q, 2);
    fs.f_mut(0, 0)[0] = field.one();
    if mixed {
        fs.f_mut(0, 0)[1] = field.one();
    }
    fs.g_mut(0, 0)[1] = field.one();
    fs
}

/// A catalog algebra over the rationals.
pub fn get(name: &str) -> Result<Arc<Awb>> {
    get_in(name, Field::Rational)
}

pub fn get_in(name: &str, field: Field) -> Result<Arc<Awb>> {
    let a = match name {
        "zero" => Awb::zero(field).with_name("zero"),
        "idem1" => {
            let mut t = Tensors::zeros(field, 1);
            t.set_product(0, 0, 0, 1);
            t.build("idem1")?
        }
        "heis" => heis_in(field),
        "heis_x_ab1" => Awb::direct_product(&heis_in(field), &Awb::abelian(field, 1))?.with_name(name),
        "heis_x_ab2" => Awb::direct_product(&heis_in(field), &Awb::abelian(field, 2))?.with_name(name),
        "taut_u2" => Awb::tautological(name, field, 3, u2_product(field))?,
        // D: E11 ↦ E12, E12 ↦ 0, E22 ↦ E22
        "u2_dbracket" => {
            let d = Matrix::from_ints(field, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1]]);
            Awb::d_bracket(name, field, 3, u2_product(field), &d)?
        }
        "cover_ab1" | "cover_ab1_b" => {
            let e = cover_factor_set(field, name == "cover_ab1_b").build()?;
            e.total().as_ref().clone().with_name(name)
        }
        other => match abelian_dim(other) {
            Some(n) => Awb::abelian(field, n),
            None => return Err(Error::UnknownName(other.into())),
        },
    };
    Ok(Arc::new(a))
}

/// A catalog central extension over `field`.
pub fn extension(name: &str, field: Field) -> Result<CentralExtension> {
    let coord = |n, idx: &[usize]| Subspace::coordinate(field, n, idx);
    match name {
        "e_heis" => CentralExtension::new(get_in("heis", field)?, coord(3, &[2])),
        "e_heis_x_ab1" => CentralExtension::new(get_in("heis_x_ab1", field)?, coord(4, &[2, 3])),
        "e_heis_x_ab2" => CentralExtension::new(get_in("heis_x_ab2", field)?, coord(5, &[2, 3, 4])),
        "heis_x_ab1_over_heis" => CentralExtension::new(get_in("heis_x_ab1", field)?, coord(4, &[3])),
        "split_ab2" => CentralExtension::new(get_in("ab(2)", field)?, coord(2, &[0])),
        "split_ab3" => CentralExtension::new(get_in("ab(3)", field)?, coord(3, &[0])),
        "trivial_heis" => Ok(CentralExtension::trivial(&get_in("heis", field)?)),
        "trivial_taut_u2" => Ok(CentralExtension::trivial(&get_in("taut_u2", field)?)),
        "trivial_idem1" => Ok(CentralExtension::trivial(&get_in("idem1", field)?)),
        "e_u2_dbracket" => {
            let a = get_in("u2_dbracket", field)?;
            let z = center(&a);
            CentralExtension::new(a, z)
        }
        "cover_ab1" | "cover_ab1_b" => cover_factor_set(field, name == "cover_ab1_b").build(),
        other => Err(Error::UnknownName(other.into())),
    }
}

/// Every catalog extension over `field`.
pub fn extensions(field: Field) -> Vec<(&'static str, CentralExtension)> {
    EXTENSIONS
        .iter()
        .map(|&n| (n, extension(n, field).expect("catalog extensions are valid")))
        .collect()
}

/// Every catalog algebra over `field`.
pub fn algebras(field: Field) -> Vec<Arc<Awb>> {
    ALGEBRAS.iter().map(|&n| get_in(n, field).expect("catalog algebras are valid")).collect()
}

fn small(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

/// Associative pieces used by [`random_awb`], by dimension.
fn block(field: Field, kind: usize, dim: usize) -> Vec<Scalar> {
    let mut t = Tensors::zeros(field, dim);
    match kind {
        // u2
        0 if dim == 3 => t.product = u2_product(field),
        // M2 on E11, E12, E21, E22
        1 if dim == 4 => {
            for (a, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                for (b, (k, l)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                    if j == k {
                        t.set_product(a, b, 2 * i + l, 1);
                    }
                }
            }
        }
        // t, t², ..., t^dim with t^(dim+1) = 0
        2 => {
            for a in 0..dim {
                for b in 0..dim {
                    if a + b + 1 < dim {
                        t.set_product(a, b, a + b + 1, 1);
                    }
                }
            }
        }
        // 1, t, ..., t^(dim-1) with t^dim = 0
        3 => {
            for a in 0..dim {
                for b in 0..dim {
                    if a + b < dim {
                        t.set_product(a, b, a + b, 1);
                    }
                }
            }
        }
        _ => {}
    }
    t.product
}

/// A random unimodular matrix: unit lower times unit upper triangular.
fn unimodular(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let lower = Matrix::from_fn(field, n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Greater => small(field, rng),
        std::cmp::Ordering::Less => field.zero(),
    });
    let upper = Matrix::from_fn(field, n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Less => small(field, rng),
        std::cmp::Ordering::Greater => field.zero(),
    });
    lower.mul(&upper)
}

/// A valid algebra with bracket of dimension `n`, deterministic in `seed`.
///
/// Either the product vanishes and the bracket is arbitrary, or the product
/// is a direct sum of matrix and truncated-polynomial algebras in a random
/// basis and the bracket is `a D(b) - D(b) a` for a random `D`.
pub fn random_awb(field: Field, n: usize, seed: u64) -> Awb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("random({n},{seed})");
    if n == 0 {
        return Awb::zero(field).with_name(name);
    }
    if rng.gen_bool(0.3) {
        let mut t = Tensors::zeros(field, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rng.gen_bool(0.3) {
                        t.set(crate::error::Operation::Bracket, i, j, k, small(field, &mut rng));
                    }
                }
            }
        }
        return t.build(name).expect("zero product makes every bracket valid");
    }
    let mut pieces = Vec::new();
    let mut left = n;
    while left > 0 {
        let (kind, dim) = match rng.gen_range(0..5) {
            0 if left >= 3 => (0, 3),
            1 if left >= 4 => (1, 4),
            2 => (2, rng.gen_range(1..=left)),
            3 => (3, rng.gen_range(1..=left)),
            _ => (4, 1),
        };
        let mut t = Tensors::zeros(field, dim);
        t.product = block(field, kind, dim);
        pieces.push(t.build("piece").expect("associative block"));
        left -= dim;
    }
    let mut sum = Awb::zero(field);
    for p in &pieces {
        sum = Awb::direct_product(&sum, p).expect("same field");
    }
    let sum = sum.change_basis(&unimodular(field, n, &mut rng)).expect("unimodular change of basis");
    let d = Matrix::from_fn(field, n, n, |_, _| if rng.gen_bool(0.5) { small(field, &mut rng) } else { field.zero() });
    Awb::d_bracket(name, field, n, sum.product_tensor().to_vec(), &d).expect("D-brackets are valid")
}
