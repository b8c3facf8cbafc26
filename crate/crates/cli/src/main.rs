//! `awb`: command-line front end for the awb library.
//!
//! Exit codes: 0 success or true, 1 false or invalid, 2 undecided, 3 usage,
//! parse and other errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use awb::awb::{center, derived_algebra};
use awb::catalog;
use awb::extension::{is_stem, is_stem_cover, split_off_abelian, stemify, CentralExtension, FactorSet};
use awb::homology::{h0, h1, theta, HomologySpace};
use awb::io::{self, matrix_rows, AwbFile, CertificateFile, ExtensionFile, Value};
use awb::isoclinism::{
    decide_extension_isoclinism, extensions_may_be_isoclinic, fingerprint, verify_certificate, Fingerprint,
};
use awb::{Awb, Error, Field, Matrix, Scalar};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "awb", version, about = "Exact computations with algebras with bracket")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for reproducibility; every search is already deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest algebra dimension the isoclinism search will attempt.
    #[arg(long, global = true, default_value_t = 5)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structure identities.
    Validate { file: PathBuf },
    /// Invariants of an algebra.
    Info { file: PathBuf },
    /// A homology space with representative cycles.
    Homology {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
    },
    /// The connecting map of a central extension.
    Theta { file: PathBuf },
    /// Decide or verify isoclinism of two algebras or two extensions.
    Isoclinic {
        a: PathBuf,
        b: PathBuf,
        /// Extensions of `a` and `b` to compare instead of the central ones.
        #[arg(long, num_args = 2, value_names = ["E1", "E2"])]
        extensions: Option<Vec<PathBuf>>,
        /// Check this certificate instead of searching.
        #[arg(long, value_name = "CERT")]
        verify: Option<PathBuf>,
    },
    /// Build the extension of a factor set.
    Extend {
        #[arg(long, value_name = "FS")]
        factorset: PathBuf,
    },
    /// Factor set of an extension with respect to its canonical section.
    Extract { file: PathBuf },
    /// Quotient an extension to a stem one.
    Stemify { file: PathBuf },
    /// Split an extension into a stem part and an abelian factor.
    Split { file: PathBuf },
    /// Whether the connecting map is bijective.
    CoverCheck { file: PathBuf },
    /// Whether the kernel lies in the derived algebra.
    StemCheck { file: PathBuf },
    /// Print a built-in algebra or extension as JSON, or list the names.
    Catalog {
        name: Option<String>,
        /// `q` or a prime.
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
        /// Look `name` up among the extensions.
        #[arg(long)]
        extension: bool,
    },
}

fn parse_field(text: &str) -> Result<Field, String> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p: u64 = text.parse().map_err(|_| format!("expected `q` or a prime, got {text:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

enum Verdict {
    Yes,
    No,
    Undecided,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl Verdict {
    fn code(&self) -> ExitCode {
        match self {
            Verdict::Yes => ExitCode::SUCCESS,
            Verdict::No => ExitCode::from(1),
            Verdict::Undecided => ExitCode::from(2),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(&cli) {
        Ok(v) => v.code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Verdict, Error> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Info { file } => info(cli, &load_algebra(file)?),
        Command::Homology { file, degree } => homology(cli, &load_algebra(file)?, *degree),
        Command::Theta { file } => theta_cmd(cli, &io::load_extension(file)?),
        Command::Isoclinic {
            a,
            b,
            extensions,
            verify,
        } => isoclinic(cli, a, b, extensions.as_deref(), verify.as_deref()),
        Command::Extend { factorset } => {
            let fs = io::load_factor_set(factorset)?;
            let e = fs.build()?;
            emit(&io::extension_to_json(&e));
            Ok(Verdict::Yes)
        }
        Command::Extract { file } => {
            let e = io::load_extension(file)?;
            emit(&io::factor_set_to_json(&FactorSet::extract(&e)));
            Ok(Verdict::Yes)
        }
        Command::Stemify { file } => {
            let (s, _) = stemify(&io::load_extension(file)?)?;
            emit(&io::extension_to_json(&s));
            Ok(Verdict::Yes)
        }
        Command::Split { file } => split(&io::load_extension(file)?),
        Command::CoverCheck { file } => cover_check(cli, &io::load_extension(file)?),
        Command::StemCheck { file } => stem_check(cli, &io::load_extension(file)?),
        Command::Catalog { name, field, extension } => {
            match (name, extension) {
                (None, false) => catalog::list().iter().for_each(|n| println!("{n}")),
                (None, true) => catalog::extension_names().iter().for_each(|n| println!("{n}")),
                (Some(n), false) => emit(&io::awb_to_json(&*catalog::get_in(n, *field)?)),
                (Some(n), true) => emit(&io::extension_to_json(&catalog::extension(n, *field)?)),
            }
            Ok(Verdict::Yes)
        }
    }
}

fn emit(text: &str) {
    print!("{text}");
}

fn load_algebra(path: &Path) -> Result<Arc<Awb>, Error> {
    Ok(Arc::new(io::load_awb(path)?))
}

fn fmt_scalar(s: &Scalar) -> String {
    s.to_string()
}

fn fmt_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(fmt_scalar).collect();
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    if m.rows() == 0 {
        out.push_str("  (empty)\n");
    }
    out
}

/// `2 e0 - e1` style rendering of a vector over named basis elements.
fn fmt_combination(v: &[Scalar], label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let text = fmt_scalar(c);
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&label(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn validate(cli: &Cli, path: &Path) -> Result<Verdict, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file: AwbFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: algebra file: {e}", path.display())))?;
    let violations = match file.to_awb() {
        Ok(_) => Vec::new(),
        Err(Error::InvalidStructure(v)) => v,
        Err(e) => return Err(e),
    };
    if cli.json {
        #[derive(Serialize)]
        struct Report<'a> {
            valid: bool,
            violations: &'a [awb::error::Violation],
        }
        emit(&io::to_json(&Report {
            valid: violations.is_empty(),
            violations: &violations,
        }));
    } else if violations.is_empty() {
        println!("OK: {} is a valid algebra with bracket of dimension {} over {}", file.name, file.dim, file.field);
    } else {
        println!("INVALID: {} identity failures", violations.len());
        for v in &violations {
            println!("  {v:?}");
        }
    }
    Ok(violations.is_empty().into())
}

#[derive(Serialize)]
struct InfoReport {
    name: String,
    field: Field,
    dim: usize,
    center: usize,
    derived: usize,
    h0: usize,
    h1: usize,
    abelian: bool,
    stem: bool,
    fingerprint: Fingerprint,
}

fn info(cli: &Cli, a: &Arc<Awb>) -> Result<Verdict, Error> {
    let z = center(a);
    let d = derived_algebra(a);
    let r = InfoReport {
        name: a.name().to_string(),
        field: a.field(),
        dim: a.dim(),
        center: z.dim(),
        derived: d.dim(),
        h0: h0(a).dim(),
        h1: h1(a).dim(),
        abelian: a.is_abelian(),
        stem: d.contains_subspace(&z),
        fingerprint: fingerprint(a),
    };
    if cli.json {
        emit(&io::to_json(&r));
    } else {
        println!("{} over {}, dimension {}", r.name, r.field, r.dim);
        println!("  center Z:        {}", r.center);
        println!("  derived [[A,A]]: {}", r.derived);
        println!("  H0:              {}", r.h0);
        println!("  H1:              {}", r.h1);
        println!("  abelian:         {}", r.abelian);
        println!("  stem (Z ⊆ [[A,A]]): {}", r.stem);
        println!("  fingerprint:     {:?}", r.fingerprint.as_tuple());
    }
    Ok(Verdict::Yes)
}

fn chain_label(n: usize, degree: u8) -> impl Fn(usize) -> String {
    move |idx| {
        if degree == 0 {
            return format!("e{idx}");
        }
        let (block, rest) = (idx / (n * n), idx % (n * n));
        let sym = if block == 0 { "⊗" } else { "∘" };
        format!("e{}{sym}e{}", rest / n, rest % n)
    }
}

fn homology(cli: &Cli, a: &Arc<Awb>, degree: u8) -> Result<Verdict, Error> {
    let space: HomologySpace = if degree == 0 { h0(a) } else { h1(a) };
    if cli.json {
        #[derive(Serialize)]
        struct Report {
            degree: u8,
            dim: usize,
            representatives: Vec<Vec<Value>>,
        }
        emit(&io::to_json(&Report {
            degree,
            dim: space.dim(),
            representatives: matrix_rows(space.representatives()),
        }));
    } else {
        println!("H{degree}({}) has dimension {}", a.name(), space.dim());
        let label = chain_label(a.dim(), degree);
        for k in 0..space.dim() {
            println!("  [{}]", fmt_combination(space.representative(k), &label));
        }
    }
    Ok(Verdict::Yes)
}

fn theta_cmd(cli: &Cli, e: &CentralExtension) -> Result<Verdict, Error> {
    let t = theta(e);
    let (image, kernel) = (t.rank(), t.kernel().dim());
    if cli.json {
        #[derive(Serialize)]
        struct Report {
            matrix: Vec<Vec<Value>>,
            rank: usize,
            image_dim: usize,
            kernel_dim: usize,
            injective: bool,
            surjective: bool,
        }
        emit(&io::to_json(&Report {
            matrix: matrix_rows(&t.matrix),
            rank: t.rank(),
            image_dim: image,
            kernel_dim: kernel,
            injective: t.is_injective(),
            surjective: t.is_surjective(),
        }));
    } else {
        println!("theta: H1(Q) (dim {}) -> N (dim {})", t.h1.dim(), e.kernel_dim());
        print!("{}", fmt_matrix(&t.matrix));
        println!("  image dim {image}, kernel dim {kernel}");
    }
    Ok(Verdict::Yes)
}

fn same_algebra(a: &Awb, b: &Awb) -> bool {
    a.field() == b.field() && a.product_tensor() == b.product_tensor() && a.bracket_tensor() == b.bracket_tensor()
}

fn not_isoclinic(cli: &Cli, reason: &str) -> Verdict {
    if cli.json {
        emit(&io::to_json(&serde_json::json!({ "isoclinic": false, "reason": reason })));
    } else {
        println!("NOT ISOCLINIC ({reason})");
    }
    Verdict::No
}

fn isoclinic(
    cli: &Cli,
    a: &Path,
    b: &Path,
    extensions: Option<&[PathBuf]>,
    verify: Option<&Path>,
) -> Result<Verdict, Error> {
    let (ga, gb) = (load_algebra(a)?, load_algebra(b)?);
    if ga.field() != gb.field() {
        return Err(Error::FieldMismatch(ga.field(), gb.field()));
    }
    let (e1, e2) = match extensions {
        Some([p1, p2]) => {
            let (e1, e2) = (io::load_extension(p1)?, io::load_extension(p2)?);
            if !same_algebra(e1.total(), &ga) || !same_algebra(e2.total(), &gb) {
                return Err(Error::Parse("extension files must extend the two given algebras".into()));
            }
            (e1, e2)
        }
        _ => (CentralExtension::of_center(&ga), CentralExtension::of_center(&gb)),
    };
    if let Some(path) = verify {
        let cert = io::load_certificate(path)?.to_certificate(&e1, &e2)?;
        let report = verify_certificate(&e1, &e2, &cert);
        if cli.json {
            emit(&io::to_json(&report));
        } else if report.accepted() {
            println!("ISOCLINIC (certificate verified)");
        } else {
            println!("NOT ISOCLINIC (certificate rejected: {})", report.first_failure().unwrap_or_default());
        }
        return Ok(report.accepted().into());
    }
    let central = extensions.is_none();
    if central && fingerprint(&ga) != fingerprint(&gb) {
        let reason = format!("fingerprints differ: {:?} vs {:?}", fingerprint(&ga).as_tuple(), fingerprint(&gb).as_tuple());
        return Ok(not_isoclinic(cli, &reason));
    }
    if !extensions_may_be_isoclinic(&e1, &e2) {
        return Ok(not_isoclinic(cli, "quotient, derived or kernel dimensions differ"));
    }
    if !ga.field().is_prime_field() {
        if cli.json {
            emit(&io::to_json(&serde_json::json!({ "isoclinic": null, "reason": "invariants agree; no search over Q" })));
        } else {
            println!("UNDECIDED (invariants agree; exhaustive search needs a prime field)");
        }
        return Ok(Verdict::Undecided);
    }
    let dim = ga.dim().max(gb.dim());
    if dim > cli.max_dim {
        return Err(Error::DimensionGuard { dim, max: cli.max_dim });
    }
    match decide_extension_isoclinism(&e1, &e2)? {
        Some(cert) => {
            emit(&io::to_json(&CertificateFile::from_certificate(&e1, &e2, &cert)));
            Ok(Verdict::Yes)
        }
        None => Ok(not_isoclinic(cli, "no isomorphism of the quotients induces one of the derived algebras")),
    }
}

fn split(e: &CentralExtension) -> Result<Verdict, Error> {
    let sp = split_off_abelian(e)?;
    #[derive(Serialize)]
    struct Report {
        stem: ExtensionFile,
        abelian_dim: usize,
        /// Columns are the images in `G` of the basis of `H × A`.
        isomorphism: Vec<Vec<Value>>,
    }
    emit(&io::to_json(&Report {
        stem: ExtensionFile::from_extension(&sp.stem),
        abelian_dim: sp.abelian.dim(),
        isomorphism: matrix_rows(sp.isomorphism.matrix()),
    }));
    Ok(Verdict::Yes)
}

fn cover_check(cli: &Cli, e: &CentralExtension) -> Result<Verdict, Error> {
    let t = theta(e);
    let cover = is_stem_cover(e);
    if cli.json {
        emit(&io::to_json(&serde_json::json!({
            "stem_cover": cover,
            "stem": is_stem(e),
            "theta_rank": t.rank(),
            "h1_quotient": t.h1.dim(),
            "kernel_dim": e.kernel_dim(),
        })));
    } else {
        println!("{cover}");
        println!("  theta rank {} with dim H1(Q) = {} and dim N = {}", t.rank(), t.h1.dim(), e.kernel_dim());
    }
    Ok(cover.into())
}

fn stem_check(cli: &Cli, e: &CentralExtension) -> Result<Verdict, Error> {
    let stem = is_stem(e);
    let d = e.derived();
    // a kernel basis vector outside the derived algebra
    let witness = e.kernel().vectors().find(|v| !d.contains(v)).map(|v| v.iter().map(fmt_scalar).collect::<Vec<_>>());
    if cli.json {
        emit(&io::to_json(&serde_json::json!({ "stem": stem, "witness": witness })));
    } else {
        println!("{stem}");
        if let Some(w) = &witness {
            println!("  kernel vector [{}] is not in [[G,G]]", w.join(", "));
        }
    }
    Ok(stem.into())
}
