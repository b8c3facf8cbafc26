//! Brute-force checks over F2 using plain bit arithmetic, independent of the
//! library's linear algebra.

use std::sync::Arc;

use awb::awb::{center, derived_algebra, Awb};
use awb::catalog::{self, random_awb};
use awb::linalg::Field;
use awb::search::automorphisms;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

/// Structure constants as bits: `table[i][j]` is the bitmask of `e_i e_j`.
fn bits(a: &Awb, bracket: bool) -> Vec<Vec<u32>> {
    let n = a.dim();
    let t = if bracket { a.bracket_tensor() } else { a.product_tensor() };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).filter(|&k| !t[(i * n + j) * n + k].is_zero()).fold(0, |m, k| m | 1 << k))
                .collect()
        })
        .collect()
}

fn op(table: &[Vec<u32>], x: u32, y: u32) -> u32 {
    let n = table.len();
    let mut out = 0;
    for i in 0..n {
        for j in 0..n {
            if x >> i & 1 == 1 && y >> j & 1 == 1 {
                out ^= table[i][j];
            }
        }
    }
    out
}

fn span_size(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    1 << basis.len()
}

fn samples() -> Vec<Arc<Awb>> {
    let mut out = catalog::algebras(f2());
    out.extend((0..40).map(|s| Arc::new(random_awb(f2(), 1 + s as usize % 4, s))));
    out.retain(|a| a.dim() <= 5);
    out
}

#[test]
fn center_matches_enumeration() {
    for a in samples() {
        let (p, b) = (bits(&a, false), bits(&a, true));
        let n = a.dim();
        let count = (0u32..1 << n)
            .filter(|&z| (0..n).all(|i| {
                let e = 1 << i;
                op(&p, z, e) == 0 && op(&p, e, z) == 0 && op(&b, z, e) == 0 && op(&b, e, z) == 0
            }))
            .count();
        assert_eq!(count, 1 << center(&a).dim(), "{}", a.name());
    }
}

#[test]
fn derived_algebra_matches_enumeration() {
    for a in samples() {
        let (p, b) = (bits(&a, false), bits(&a, true));
        let all = 1u32 << a.dim();
        let gens = (0..all).flat_map(|x| (0..all).flat_map(move |y| [(x, y)]));
        let size = span_size(gens.flat_map(|(x, y)| [op(&p, x, y), op(&b, x, y)]));
        assert_eq!(size, 1 << derived_algebra(&a).dim(), "{}", a.name());
    }
}

/// Count of invertible linear maps preserving both operations, by trying
/// every matrix.
fn brute_automorphisms(a: &Awb) -> usize {
    let n = a.dim();
    let (p, b) = (bits(a, false), bits(a, true));
    let apply = |cols: &[u32], x: u32| (0..n).filter(|&i| x >> i & 1 == 1).fold(0, |m, i| m ^ cols[i]);
    let mut count = 0;
    let total = 1u64 << (n * n);
    for code in 0..total {
        let cols: Vec<u32> = (0..n).map(|i| ((code >> (i * n)) & ((1 << n) - 1)) as u32).collect();
        if span_size(cols.iter().copied()) != 1 << n {
            continue;
        }
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                op(&p, cols[i], cols[j]) == apply(&cols, p[i][j]) && op(&b, cols[i], cols[j]) == apply(&cols, b[i][j])
            })
        });
        count += ok as usize;
    }
    count
}

#[test]
fn automorphism_counts_match_enumeration() {
    for a in samples().into_iter().filter(|a| a.dim() <= 3) {
        assert_eq!(automorphisms(&a).unwrap().len(), brute_automorphisms(&a), "{}", a.name());
    }
}

#[test]
fn known_automorphism_counts() {
    // |GL2(F2)| = 6, |GL3(F2)| = 168
    assert_eq!(automorphisms(&catalog::get_in("ab(2)", f2()).unwrap()).unwrap().len(), 6);
    assert_eq!(automorphisms(&catalog::get_in("ab(3)", f2()).unwrap()).unwrap().len(), 168);
    // heis: [x, y] = z but [y, x] = 0, so the action on (x, y) must preserve
    // u_x v_y, forcing the identity there; x and y may still pick up z
    assert_eq!(automorphisms(&catalog::get_in("heis", f2()).unwrap()).unwrap().len(), 4);
}
