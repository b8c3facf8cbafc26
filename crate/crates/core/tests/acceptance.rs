//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p awb --test acceptance -- --nocapture` to see the
//! report. Every check is exact; no tolerances are involved.

use std::sync::Arc;

use awb::awb::{center, derived_algebra, Awb, AwbMorphism};
use awb::catalog;
use awb::extension::{
    common_ancestor, direct_sum_abelian, is_stem, is_stem_cover, pullback, split_off_abelian, stemify, CentralExtension,
    FactorSet,
};
use awb::homology::{chain_slice, circ_index, h0, h1, induced_h1_between, theta};
use awb::isoclinism::{
    candidate_certificates, decide_algebra_isoclinism, decide_extension_isoclinism, is_isoclinic_homomorphism,
    kernel_theta_criterion, stem_isomorphism, verify_certificate, IsoclinismCertificate,
};
use awb::linalg::{Field, Matrix, Scalar, Subspace};
use awb::par::Execution;
use awb::search::{automorphisms, find_extension_isomorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Catalog algebras over Q, F2, F3 followed by 200 seeded random algebras.
fn population() -> Vec<Arc<Awb>> {
    let mut out = Vec::new();
    for field in [Field::Rational, f2(), f3()] {
        out.extend(catalog::algebras(field));
    }
    let fields = [Field::Rational, f2(), f3()];
    for seed in 0..200u64 {
        let field = fields[seed as usize % 3];
        let n = (seed as usize / 3) % 6;
        out.push(Arc::new(catalog::random_awb(field, n, seed)));
    }
    out
}

fn c01_complex_soundness() -> Outcome {
    let pop = population();
    for a in &pop {
        let s = chain_slice(a);
        ensure(s.d0().mul(s.d1()).is_zero(), || format!("d0 d1 != 0 on {} over {}", a.name(), a.field()))?;
    }
    Ok(format!("d0∘d1 = 0 on {} algebras", pop.len()))
}

fn c02_h0_law() -> Outcome {
    let pop = population();
    for a in &pop {
        let lhs = h0(a).dim();
        let rhs = a.dim() - derived_algebra(a).dim();
        ensure(lhs == rhs, || format!("{}: dim H0 = {lhs}, expected {rhs}", a.name()))?;
    }
    Ok(format!("dim H0 = dim A - dim [[A,A]] on {} algebras", pop.len()))
}

/// Rank of a small integer matrix by fraction-free elimination.
fn int_rank(mut m: Vec<Vec<i64>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn c03_abelian_h1() -> Outcome {
    for n in 1..=4 {
        let d = h1(&catalog::get(&format!("ab({n})")).unwrap()).dim();
        ensure(d == 2 * n * n, || format!("dim H1(ab({n})) = {d}"))?;
    }
    // idem1 by hand: d0 = [1 0] on (e⊗e, e∘e); d1 = [[0 0] [0 -1]] on (e⊗e⊗e, e∘e∘e)
    let oracle = (2 - int_rank(vec![vec![1, 0]])) - int_rank(vec![vec![0, 0], vec![0, -1]]);
    let d = h1(&catalog::get("idem1").unwrap()).dim();
    ensure(d == oracle && oracle == 0, || format!("dim H1(idem1) = {d}, oracle {oracle}"))?;
    Ok("dim H1(ab(n)) = 2n² for n ≤ 4; dim H1(idem1) = 0".into())
}

/// The section shifted by kernel-valued columns.
fn shifted(e: &CentralExtension, seed: u64) -> CentralExtension {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = e.field();
    let mut s = e.section().clone();
    for v in e.kernel().vectors() {
        for c in 0..s.cols() {
            let k = field.from_i64(rng.gen_range(-2..=2));
            for r in 0..s.rows() {
                let add = &k * &v[r];
                s.entry_mut(r, c).add_assign_ref(&add);
            }
        }
    }
    e.with_section(s).unwrap()
}

fn c04_theta_image() -> Outcome {
    let mut count = 0;
    for field in [Field::Rational, f2()] {
        for (name, e) in catalog::extensions(field) {
            let t = theta(&e);
            let expected = e.kernel().intersection(&e.derived());
            ensure(t.image == expected, || format!("{name} over {field}: im θ != N ∩ [[G,G]]"))?;
            let other = theta(&shifted(&e, 7));
            ensure(other.matrix == t.matrix, || format!("{name} over {field}: θ depends on the section"))?;
            count += 1;
        }
    }
    let e = catalog::extension("e_heis", Field::Rational).unwrap();
    let t = theta(&e);
    ensure(t.rank() == 1, || format!("rank θ(e_heis) = {}", t.rank()))?;
    let n = t.h1.cycles().ambient_dim();
    let mut xy = vec![Field::Rational.zero(); n];
    xy[circ_index(2, 0, 1)] = Field::Rational.one();
    let class = t.h1.class_of(&xy).ok_or("x∘y is not a cycle")?;
    // θ([x∘y]) in kernel coordinates; the kernel basis is z
    ensure(t.matrix.apply(&class) == vec![Field::Rational.one()], || "θ([x∘y]) != z".into())?;
    Ok(format!("im θ = N ∩ [[G,G]] on {count} extensions; θ([x∘y]) = z on e_heis"))
}

fn c05_factor_set_roundtrip() -> Outcome {
    let mut count = 0;
    for (name, e) in catalog::extensions(Field::Rational) {
        let built = FactorSet::extract(&e).build().map_err(|err| format!("{name}: {err}"))?;
        let m = FactorSet::roundtrip_morphism(&built, &e).map_err(|err| format!("{name}: {err}"))?;
        ensure(m.check(&built, &e).is_isomorphism(), || format!("{name}: n + ∂q is not an isomorphism over Q"))?;
        count += 1;
    }
    for (name, e) in catalog::extensions(f2()) {
        let built = FactorSet::extract(&e).build().map_err(|err| format!("{name}: {err}"))?;
        let found = find_extension_isomorphism(&built, &e).map_err(|err| err.to_string())?;
        let m = found.ok_or_else(|| format!("{name}: no extension isomorphism over F2"))?;
        ensure(m.check(&built, &e).is_isomorphism(), || format!("{name}: searched map fails verification"))?;
        count += 1;
    }
    Ok(format!("{count} roundtrips verified (Q via n + ∂q, F2 via search)"))
}

/// `Σ_t coeffs_t table(t)` with plain loops.
fn lin(coeffs: &[Scalar], table: &dyn Fn(usize) -> Vec<Scalar>, m: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); m];
    for (t, c) in coeffs.iter().enumerate() {
        for (o, v) in out.iter_mut().zip(table(t)) {
            *o = &*o + &(c * &v);
        }
    }
    out
}

/// Direct evaluation of both factor-set conditions at one triple.
fn violates(fs: &FactorSet, (a, b, c): (usize, usize, usize)) -> (bool, bool) {
    let q = fs.quotient();
    let (m, field) = (fs.kernel_dim(), fs.field());
    let f_left = lin(q.basis_product(a, b), &|t| fs.f(t, c).to_vec(), m, field);
    let f_right = lin(q.basis_product(b, c), &|t| fs.f(a, t).to_vec(), m, field);
    let g_lhs = lin(q.basis_product(a, b), &|t| fs.g(t, c).to_vec(), m, field);
    let r1 = lin(q.basis_bracket(a, c), &|t| fs.f(t, b).to_vec(), m, field);
    let r2 = lin(q.basis_bracket(b, c), &|t| fs.f(a, t).to_vec(), m, field);
    let g_rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| x + y).collect();
    (f_left != f_right, g_lhs != g_rhs)
}

fn c06_factor_set_validity() -> Outcome {
    let field = f3();
    let quotients: Vec<Arc<Awb>> = catalog::algebras(field).into_iter().filter(|a| a.dim() <= 3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut valid, mut invalid) = (0, 0);
    for q in &quotients {
        let n = q.dim();
        if n == 0 {
            continue;
        }
        for trial in 0..100 {
            let m = 1 + trial % 2;
            let mut fs = FactorSet::zero(q.clone(), m);
            for _ in 0..rng.gen_range(1..=3) {
                let (a, b, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..m));
                let v = field.from_i64(rng.gen_range(1..3));
                if rng.gen_bool(0.5) {
                    fs.f_mut(a, b)[k] = v;
                } else {
                    fs.g_mut(a, b)[k] = v;
                }
            }
            let tensors_ok = fs.tensors().violations().is_empty();
            let built = fs.build();
            ensure(built.is_ok() == tensors_ok, || format!("{} trial {trial}: build/validate disagree", q.name()))?;
            match built {
                Ok(_) => valid += 1,
                Err(awb::Error::CocycleViolation(a, b, c)) => {
                    ensure(violates(&fs, (a, b, c)).0, || format!("{}: reported cocycle triple holds", q.name()))?;
                    invalid += 1;
                }
                Err(awb::Error::BracketCompatibilityViolation(a, b, c)) => {
                    let (cocycle, bracket) = violates(&fs, (a, b, c));
                    ensure(bracket, || format!("{}: reported bracket triple holds", q.name()))?;
                    ensure(fs.cocycle_violation().is_none() || cocycle, || "bracket reported before cocycle".into())?;
                    invalid += 1;
                }
                Err(other) => return Err(format!("{}: unexpected error {other}", q.name())),
            }
        }
    }
    ensure(valid > 0 && invalid > 0, || format!("degenerate sample: {valid} valid, {invalid} invalid"))?;
    Ok(format!("{} quotients x 100 mutations: {valid} valid, {invalid} rejected with a violating triple", quotients.len() - 1))
}

fn isoclinism_family() -> Vec<(String, CentralExtension)> {
    let f = f2();
    let e = catalog::extension("e_heis", f).unwrap();
    let q = e.quotient().clone();
    let swap = AwbMorphism::new(q.clone(), q.clone(), Matrix::from_ints(f, &[&[0, 1], &[1, 0]])).unwrap();
    let shear = AwbMorphism::new(q.clone(), q.clone(), Matrix::from_ints(f, &[&[1, 1], &[0, 1]])).unwrap();
    let id = AwbMorphism::identity(&q);
    vec![
        ("e_heis".into(), e.clone()),
        ("e_heis+ab(1)".into(), direct_sum_abelian(&e, &Awb::abelian(f, 1)).unwrap()),
        ("e_heis+ab(2)".into(), direct_sum_abelian(&e, &Awb::abelian(f, 2)).unwrap()),
        ("pullback(swap)".into(), pullback(&e, &swap).unwrap()),
        ("pullback(shear)".into(), pullback(&e, &shear).unwrap()),
        ("ancestor".into(), common_ancestor(&e, &e, &id).unwrap().0),
    ]
}

fn accepted(e1: &CentralExtension, e2: &CentralExtension, c: &IsoclinismCertificate) -> bool {
    let r = verify_certificate(e1, e2, c);
    r.accepted() && r.consequences_hold()
}

fn c07_equivalence_relation() -> Outcome {
    let fam = isoclinism_family();
    let k = fam.len();
    let mut certs = vec![vec![None; k]; k];
    for (i, (ni, ei)) in fam.iter().enumerate() {
        ensure(accepted(ei, ei, &IsoclinismCertificate::identity(ei)), || format!("reflexivity fails on {ni}"))?;
        for (j, (nj, ej)) in fam.iter().enumerate() {
            let c = decide_extension_isoclinism(ei, ej).map_err(|e| e.to_string())?;
            let c = c.ok_or_else(|| format!("{ni} and {nj} not found isoclinic"))?;
            ensure(accepted(ei, ej, &c), || format!("certificate {ni} -> {nj} rejected"))?;
            let inv = c.inverse().ok_or("certificate not invertible")?;
            ensure(accepted(ej, ei, &inv), || format!("symmetry fails for {ni}, {nj}"))?;
            certs[i][j] = Some(c);
        }
    }
    let mut triples = 0;
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let c = certs[i][j].as_ref().unwrap().then(certs[j][l].as_ref().unwrap()).map_err(|e| e.to_string())?;
                ensure(accepted(&fam[i].1, &fam[l].1, &c), || format!("transitivity fails on ({i},{j},{l})"))?;
                triples += 1;
            }
        }
    }
    Ok(format!("{k} extensions: reflexive, {} symmetric pairs, {triples} transitive triples", k * k))
}

fn isoclinic_algebras(g: &Arc<Awb>, h: &Arc<Awb>) -> Result<bool, String> {
    let c = decide_algebra_isoclinism(g, h).map_err(|e| e.to_string())?;
    if let Some(c) = &c {
        let (e1, e2) = (CentralExtension::of_center(g), CentralExtension::of_center(h));
        ensure(accepted(&e1, &e2, c), || format!("certificate {} -> {} rejected", g.name(), h.name()))?;
    }
    Ok(c.is_some())
}

fn c08_extra_suite() -> Outcome {
    let f = f2();
    // a) G ~ G x A
    for name in ["heis", "taut_u2", "u2_dbracket", "idem1"] {
        let g = catalog::get_in(name, f).unwrap();
        for n in 1..=2 {
            let ga = Arc::new(Awb::direct_product(&g, &Awb::abelian(f, n)).unwrap());
            if ga.dim() > 5 {
                continue;
            }
            ensure(isoclinic_algebras(&g, &ga)?, || format!("{name} !~ {name} x ab({n})"))?;
        }
    }
    // b) G ~ G/I iff I ∩ [[G,G]] = 0, in heis x ab(1) on x, y, z, w
    let g = catalog::get_in("heis_x_ab1", f).unwrap();
    let d = derived_algebra(&g);
    for (label, idx) in [("z", 2), ("w", 3)] {
        let i = Subspace::coordinate(f, 4, &[idx]);
        let quotient = awb::awb::quotient(&g, &i).unwrap().algebra;
        let trivial_meet = i.intersection(&d).is_zero();
        let iso = isoclinic_algebras(&g, &quotient)?;
        ensure(iso == trivial_meet, || format!("I = span{{{label}}}: isoclinic {iso}, I ∩ D = 0 {trivial_meet}"))?;
        let reduced = awb::awb::quotient(&g, &i.intersection(&d)).unwrap().algebra;
        ensure(isoclinic_algebras(&quotient, &reduced)?, || format!("G/I !~ G/(I ∩ D) for I = span{{{label}}}"))?;
    }
    // c) H ~ H + Z(G), and H ~ G iff H + Z(G) = G
    let mut instances = 0;
    for (gname, subs) in [
        ("heis_x_ab1", vec![vec![0, 1, 2], vec![0, 2], vec![2], vec![0, 1, 2, 3]]),
        ("heis_x_ab2", vec![vec![0, 1, 2, 3], vec![0, 2, 4], vec![1, 2]]),
    ] {
        let g = catalog::get_in(gname, f).unwrap();
        let z = center(&g);
        for idx in subs {
            let hs = Subspace::coordinate(f, g.dim(), &idx);
            ensure(g.is_subalgebra(&hs), || format!("{idx:?} is not a subalgebra of {gname}"))?;
            let plus = hs.sum(&z);
            let h = Arc::new(g.restrict(&hs).unwrap());
            let hz = Arc::new(g.restrict(&plus).unwrap());
            ensure(isoclinic_algebras(&h, &hz)?, || format!("H !~ H + Z(G) for {idx:?} in {gname}"))?;
            let iso = isoclinic_algebras(&h, &g)?;
            ensure(iso == plus.is_full(), || format!("{idx:?} in {gname}: H ~ G is {iso}"))?;
            instances += 1;
        }
    }
    Ok(format!("a) 4 algebras with abelian factors; b) both directions; c) {instances} subalgebras"))
}

fn c09_kernel_criterion() -> Outcome {
    let exts = catalog::extensions(f2());
    let (mut etas, mut yes, mut disagreements) = (0, 0, Vec::new());
    for (n1, e1) in &exts {
        for (n2, e2) in &exts {
            if e1.quotient().dim() != e2.quotient().dim() {
                continue;
            }
            for (eta, xi) in candidate_certificates(e1, e2, Execution::default()).map_err(|e| e.to_string())? {
                let crit = kernel_theta_criterion(e1, e2, &eta).map_err(|e| e.to_string())?;
                if crit != xi.is_some() {
                    disagreements.push(format!("{n1} -> {n2}"));
                }
                etas += 1;
                yes += crit as usize;
            }
        }
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first {}", disagreements.len(), disagreements[0]))?;
    ensure(yes > 0 && yes < etas, || "degenerate sample".into())?;
    Ok(format!("{etas} isomorphisms searched, {yes} induce isoclinisms, 0 disagreements"))
}

fn c10_stemify() -> Outcome {
    let mut count = 0;
    for (name, e) in catalog::extensions(f2()) {
        let (s, m) = stemify(&e).map_err(|err| format!("{name}: {err}"))?;
        ensure(is_stem(&s), || format!("{name}: stemify output is not stem"))?;
        ensure(m.check(&e, &s).is_morphism(), || format!("{name}: projection is not a morphism"))?;
        ensure(m.beta.check().surjective, || format!("{name}: projection is not onto"))?;
        ensure(is_isoclinic_homomorphism(&m).is_some(), || format!("{name}: projection is not isoclinic"))?;
        let c = decide_extension_isoclinism(&e, &s).map_err(|err| err.to_string())?;
        ensure(c.is_some(), || format!("{name}: not found isoclinic to its stem form"))?;
        count += 1;
    }
    Ok(format!("{count} extensions stemified"))
}

fn c11_stem_isomorphism() -> Outcome {
    let f = f2();
    let e = catalog::extension("e_heis", f).unwrap();
    let autos = automorphisms(e.quotient()).map_err(|err| err.to_string())?;
    let pulled: Vec<CentralExtension> = autos.iter().map(|a| pullback(&e, a).unwrap()).collect();
    let mut built = 0;
    for p in &pulled {
        let cert = decide_extension_isoclinism(p, &e).map_err(|err| err.to_string())?.ok_or("pullback not isoclinic")?;
        let m = stem_isomorphism(p, &e, &cert).map_err(|err| err.to_string())?;
        ensure(m.check(p, &e).is_isomorphism(), || "constructed map is not an isomorphism".into())?;
        built += 1;
    }
    let mut converse = 0;
    let all: Vec<&CentralExtension> = std::iter::once(&e).chain(&pulled).collect();
    for a in &all {
        for b in &all {
            let m = find_extension_isomorphism(a, b).map_err(|err| err.to_string())?.ok_or("no isomorphism")?;
            let xi = is_isoclinic_homomorphism(&m).ok_or("isomorphism is not isoclinic")?;
            let cert = IsoclinismCertificate { eta: m.gamma.clone(), xi };
            ensure(accepted(a, b, &cert), || "isomorphism-induced certificate rejected".into())?;
            converse += 1;
        }
    }
    Ok(format!("{built} pullbacks (|Aut ab(2)| = {}) mapped isomorphically; {converse} isomorphic pairs isoclinic", autos.len()))
}

fn c12_decomposition() -> Outcome {
    let mut count = 0;
    for (name, e) in catalog::extensions(f2()) {
        let sp = split_off_abelian(&e).map_err(|err| format!("{name}: {err}"))?;
        ensure(is_stem(&sp.stem), || format!("{name}: stem part is not stem"))?;
        ensure(sp.isomorphism.is_isomorphism(), || format!("{name}: H x A -> G is not an isomorphism"))?;
        let rebuilt = direct_sum_abelian(&sp.stem, &sp.abelian).map_err(|err| err.to_string())?;
        let m = find_extension_isomorphism(&rebuilt, &e).map_err(|err| err.to_string())?;
        let m = m.ok_or_else(|| format!("{name}: H ⊕ A not isomorphic to E"))?;
        ensure(m.check(&rebuilt, &e).is_isomorphism(), || format!("{name}: searched map fails"))?;
        count += 1;
    }
    Ok(format!("{count} extensions reassembled up to isomorphism"))
}

fn c13_stem_cover() -> Outcome {
    let mut covers = 0;
    let mut count = 0;
    for field in [Field::Rational, f2()] {
        for (name, e) in catalog::extensions(field) {
            let hq = h1(e.quotient());
            let hg = h1(e.total());
            let zero_map = induced_h1_between(&hg, &hq, e.projection()).is_zero();
            let definitional = is_stem(&e) && zero_map && e.kernel_dim() == hq.dim();
            let predicate = is_stem_cover(&e);
            ensure(predicate == definitional, || format!("{name} over {field}: {predicate} vs {definitional}"))?;
            covers += predicate as usize;
            count += 1;
        }
    }
    ensure(covers > 0, || "no stem covers in the catalog".into())?;
    Ok(format!("{count} extensions agree, {covers} stem covers"))
}

fn c14_minimality() -> Outcome {
    let f = f2();
    let family: Vec<Arc<Awb>> = ["heis", "heis_x_ab1", "heis_x_ab2"].iter().map(|n| catalog::get_in(n, f).unwrap()).collect();
    for g in &family[1..] {
        ensure(isoclinic_algebras(&family[0], g)?, || format!("{} not isoclinic to heis", g.name()))?;
    }
    let min = family.iter().map(|g| g.dim()).min().unwrap();
    for g in &family {
        let stem = derived_algebra(g).contains_subspace(&center(g));
        ensure(stem == (g.dim() == min), || format!("{}: stem {stem}, dim {}", g.name(), g.dim()))?;
    }
    Ok(format!("minimum dimension {min} attained exactly by the stem member"))
}

#[test]
fn acceptance() {
    let criteria: [Check; 14] = [
        ("complex soundness", c01_complex_soundness),
        ("H0 law", c02_h0_law),
        ("abelian H1", c03_abelian_h1),
        ("theta image law", c04_theta_image),
        ("factor-set roundtrip", c05_factor_set_roundtrip),
        ("factor-set validity equivalence", c06_factor_set_validity),
        ("isoclinism equivalence relation", c07_equivalence_relation),
        ("abelian factors, quotients, subalgebras", c08_extra_suite),
        ("kernel criterion consistency", c09_kernel_criterion),
        ("stemify correctness", c10_stemify),
        ("stem isomorphism", c11_stem_isomorphism),
        ("abelian decomposition", c12_decomposition),
        ("stem-cover predicate", c13_stem_cover),
        ("minimality of stem algebras", c14_minimality),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail} ({ms} ms)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
