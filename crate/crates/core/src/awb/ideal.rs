use std::sync::Arc;

use super::{Awb, AwbMorphism, Operation, Tensors};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix, Scalar, Subspace};

/// Closure properties of a subspace `I` of `A`.
///
/// Sides follow the convention that a right ideal satisfies `A I ⊆ I` and
/// `[A, I] ⊆ I`, and a left ideal `I A ⊆ I` and `[I, A] ⊆ I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealFlags {
    pub subalgebra: bool,
    pub left_ideal: bool,
    pub right_ideal: bool,
    pub two_sided: bool,
}

pub fn ideal_flags(a: &Awb, i: &Subspace) -> IdealFlags {
    let n = a.dim();
    let closed = |x: &[Scalar], y: &[Scalar]| {
        [Operation::Product, Operation::Bracket]
            .into_iter()
            .all(|op| i.contains(&a.op(op, x, y)))
    };
    let subalgebra = i.vectors().all(|x| i.vectors().all(|y| closed(x, y)));
    let basis: Vec<Vec<Scalar>> = (0..n).map(|k| unit_vector(a.field(), n, k)).collect();
    let right_ideal = basis.iter().all(|e| i.vectors().all(|x| closed(e, x)));
    let left_ideal = basis.iter().all(|e| i.vectors().all(|x| closed(x, e)));
    IdealFlags {
        subalgebra,
        left_ideal,
        right_ideal,
        two_sided: left_ideal && right_ideal,
    }
}

fn require_ideal(a: &Awb, i: &Subspace) -> Result<()> {
    if i.ambient_dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "subspace of F^{} used in an algebra of dimension {}",
            i.ambient_dim(),
            a.dim()
        )));
    }
    if !ideal_flags(a, i).two_sided {
        return Err(Error::NotAnIdeal);
    }
    Ok(())
}

/// `[[I, J]]`: generated by `ij, ji, [i,j], [j,i]` and closed under both
/// operations with elements of `I` and of `J` on either side.
pub fn commutator_ideal(a: &Awb, i: &Subspace, j: &Subspace) -> Result<Subspace> {
    require_ideal(a, i)?;
    require_ideal(a, j)?;
    let ops = [Operation::Product, Operation::Bracket];
    let mut generators = Vec::new();
    for x in i.vectors() {
        for y in j.vectors() {
            for op in ops {
                generators.push(a.op(op, x, y));
                generators.push(a.op(op, y, x));
            }
        }
    }
    let mut current = Subspace::spanned_by(a.field(), a.dim(), &generators);
    let actors: Vec<&[Scalar]> = i.vectors().chain(j.vectors()).collect();
    loop {
        let mut grown = Vec::new();
        for x in current.vectors() {
            for s in &actors {
                for op in ops {
                    grown.push(a.op(op, s, x));
                    grown.push(a.op(op, x, s));
                }
            }
        }
        let next = current.sum(&Subspace::spanned_by(a.field(), a.dim(), &grown));
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// `[[A, A]]`, the span of all products and brackets.
pub fn derived_algebra(a: &Awb) -> Subspace {
    let n = a.dim();
    let gens = (0..n).flat_map(|i| (0..n).flat_map(move |j| [a.basis_product(i, j).to_vec(), a.basis_bracket(i, j).to_vec()]));
    Subspace::spanned_by(a.field(), n, gens)
}

/// `Z(A)`: elements killed by both operations on both sides.
pub fn center(a: &Awb) -> Subspace {
    let n = a.dim();
    // rows indexed by (map, j, k), columns by the coordinate i of the unknown
    let rows = 4 * n * n;
    let m = Matrix::from_fn(a.field(), rows, n, |r, i| {
        let (map, rest) = (r / (n * n), r % (n * n));
        let (j, k) = (rest / n, rest % n);
        match map {
            0 => a.basis_product(i, j)[k].clone(),
            1 => a.basis_product(j, i)[k].clone(),
            2 => a.basis_bracket(i, j)[k].clone(),
            _ => a.basis_bracket(j, i)[k].clone(),
        }
    });
    m.kernel()
}

/// `A/I` on the canonical complement basis of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<Awb>,
    pub projection: AwbMorphism,
    /// Linear right inverse of the projection: class `k` lifts to the
    /// `k`-th non-pivot standard basis vector.
    pub section: Matrix,
}

pub fn quotient(a: &Arc<Awb>, i: &Subspace) -> Result<Quotient> {
    require_ideal(a, i)?;
    let reps = i.complement_indices();
    let m = reps.len();
    let n = a.dim();
    let field = a.field();
    let mut t = Tensors::zeros(field, m);
    for (x, &rx) in reps.iter().enumerate() {
        for (y, &ry) in reps.iter().enumerate() {
            for op in [Operation::Product, Operation::Bracket] {
                let v = i.quotient_coordinates(a.basis_op(op, rx, ry));
                for (k, c) in v.into_iter().enumerate() {
                    t.set(op, x, y, k, c);
                }
            }
        }
    }
    let algebra = Arc::new(t.build(format!("{}/I", a.name()))?);
    let proj_cols: Vec<Vec<Scalar>> = (0..n).map(|k| i.quotient_coordinates(&unit_vector(field, n, k))).collect();
    let projection = AwbMorphism::new(a.clone(), algebra.clone(), Matrix::from_columns(field, m, &proj_cols))?;
    let section_cols: Vec<Vec<Scalar>> = reps.iter().map(|&r| unit_vector(field, n, r)).collect();
    let section = Matrix::from_columns(field, n, &section_cols);
    Ok(Quotient {
        algebra,
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn heis() -> Awb {
        let mut t = Tensors::zeros(Q, 3);
        t.set_bracket(0, 1, 2, 1);
        t.build("heis").unwrap()
    }

    fn idem1() -> Awb {
        let mut t = Tensors::zeros(Q, 1);
        t.set_product(0, 0, 0, 1);
        t.build("idem1").unwrap()
    }

    fn taut_u2() -> Awb {
        // E11, E12, E22
        let mut t = Tensors::zeros(Q, 3);
        t.set_product(0, 0, 0, 1);
        t.set_product(0, 1, 1, 1);
        t.set_product(1, 2, 1, 1);
        t.set_product(2, 2, 2, 1);
        Awb::tautological("taut_u2", Q, 3, t.product).unwrap()
    }

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(Q, n, idx)
    }

    #[test]
    fn commutator_ideal_examples() {
        let ab = Awb::abelian(Q, 3);
        let full = Subspace::full(Q, 3);
        assert!(commutator_ideal(&ab, &full, &span(3, &[1])).unwrap().is_zero());
        assert_eq!(commutator_ideal(&heis(), &full, &full).unwrap(), span(3, &[2]));
        assert!(commutator_ideal(&idem1(), &Subspace::full(Q, 1), &Subspace::full(Q, 1)).unwrap().is_full());
    }

    #[test]
    fn commutator_ideal_rejects_non_ideals() {
        // span{x} is not an ideal of heis: [x, y] = z
        let err = commutator_ideal(&heis(), &span(3, &[0]), &Subspace::full(Q, 3)).unwrap_err();
        assert!(matches!(err, Error::NotAnIdeal));
    }

    #[test]
    fn derived_matches_full_commutator() {
        for a in [heis(), idem1(), taut_u2()] {
            let full = Subspace::full(Q, a.dim());
            assert_eq!(derived_algebra(&a), commutator_ideal(&a, &full, &full).unwrap());
        }
    }

    #[test]
    fn center_examples() {
        assert!(center(&Awb::abelian(Q, 2)).is_full());
        assert_eq!(center(&heis()), span(3, &[2]));
        assert!(center(&taut_u2()).is_zero());
    }

    #[test]
    fn taut_u2_bracket() {
        let a = taut_u2();
        assert_eq!(a.basis_bracket(0, 1), &[Q.zero(), Q.one(), Q.zero()]);
        assert_eq!(a.basis_bracket(1, 0), &[Q.zero(), Q.from_i64(-1), Q.zero()]);
    }

    #[test]
    fn quotient_examples() {
        let h = Arc::new(heis());
        let q = quotient(&h, &span(3, &[2])).unwrap();
        assert!(q.algebra.is_abelian());
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.projection.matrix().mul(&q.section).is_identity());

        let same = quotient(&h, &Subspace::zero(Q, 3)).unwrap();
        assert_eq!(same.algebra.bracket_tensor(), h.bracket_tensor());
        assert!(same.projection.matrix().is_identity());

        let none = quotient(&h, &Subspace::full(Q, 3)).unwrap();
        assert_eq!(none.algebra.dim(), 0);
    }

    #[test]
    fn quotient_by_non_ideal_fails() {
        let h = Arc::new(heis());
        assert!(matches!(quotient(&h, &span(3, &[1])), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn flags_distinguish_sides() {
        // e0 e0 = e0, e0 e1 = e1
        let mut t = Tensors::zeros(Q, 2);
        t.set_product(0, 1, 1, 1);
        t.set_product(0, 0, 0, 1);
        let a = t.build("l").unwrap();
        let f = ideal_flags(&a, &span(2, &[0]));
        assert!(f.subalgebra);
        assert!(f.right_ideal);
        assert!(!f.left_ideal);
        assert!(!f.two_sided);
        assert!(ideal_flags(&a, &span(2, &[1])).two_sided);
    }
}
