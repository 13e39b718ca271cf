//! Command-line front end: classification, construction, verification,
//! search, and the independent brute-force oracles, with file I/O.
//!
//! Every run is fully determined by its argument vector; there are no
//! environment variables and no hidden randomness (sampling takes an
//! explicit seed). Reports are key=value lines with sorted keys. Exit
//! codes: 0 for success or a verified space, 1 for a refutation (witness
//! written when an output path is given), 2 for usage or input errors.

use crate::constructions::{
    change_basis, construct_general, construct_general_odd, Coords, MatrixSpace, SpaceKind,
};
use crate::field::FieldSpec;
use crate::form::{BilinearForm, DEFAULT_WITT_BUDGET};
use crate::io::{decode_form, decode_space, encode_matrix, encode_space, Report};
use crate::matrix::Matrix;
use crate::verify::{
    flag_certificate, nilpotency_exhaustive_with_workers, nilpotency_sample,
    search_max_nilpotent, theorem_bound, trace_orthogonality, Status, Witness,
    DEFAULT_NILPOTENCY_BUDGET, DEFAULT_SEARCH_BUDGET,
};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "nilforms",
    about = "Symmetric bilinear forms over GF(2^k): classification, extremal nilpotent spaces, and verification oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a form: rank, Witt index, Ker Q, SKer Q, normal invariants.
    Classify(ClassifyArgs),
    /// Build the extremal nilpotent space for a form and kind.
    Construct(ConstructArgs),
    /// Re-validate a space file and certify its nilpotency.
    Verify(VerifyArgs),
    /// Exhaustively search for the maximum nilpotent subspace (GF(2)).
    Search(SearchArgs),
    /// Emit the a-transform of a form's Gram matrix.
    Atransform(AtransformArgs),
    /// Run the independent brute-force oracles against the fast paths.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct FormInput {
    /// Field spec: gf2 or gf(2^k):m=<modulus bits>. Optional with file: grams.
    #[arg(long)]
    field: Option<String>,
    /// Gram shorthand: identity:<n>, hyperbolic:<2m>, or file:<path>.
    #[arg(long)]
    gram: String,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    input: FormInput,
    /// Also write the report to a file.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    input: FormInput,
    /// Which compatibility the space's elements have with the form.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Coordinate system for the emitted basis.
    #[arg(long, value_enum, default_value_t = CoordsArg::Original)]
    coords: CoordsArg,
    /// Write the space file here; without it the space goes to stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Space file produced by `construct` (or compatible).
    input: String,
    /// Combination budget for exhaustive nilpotency.
    #[arg(long, default_value_t = DEFAULT_NILPOTENCY_BUDGET)]
    budget: u64,
    /// Sampling trials used when the budget rules out exhaustion.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Seed for the sampling fallback.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the combination scan (deterministic merge).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Where to dump a refutation witness matrix.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    input: FormInput,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Node budget for the subspace search.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Write the maximum witness space here.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct AtransformArgs {
    #[command(flatten)]
    input: FormInput,
    /// Write the alternating matrix here; without it it goes to stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: FormInput,
    /// Also run the subspace search oracle for this kind.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Shared node budget for both brute-force oracles.
    #[arg(long, default_value_t = DEFAULT_WITT_BUDGET)]
    budget: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Sym,
    Alt,
}

impl From<KindArg> for SpaceKind {
    fn from(k: KindArg) -> SpaceKind {
        match k {
            KindArg::Sym => SpaceKind::BSymmetric,
            KindArg::Alt => SpaceKind::BAlternating,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CoordsArg {
    Original,
    Normal,
}

impl From<CoordsArg> for Coords {
    fn from(c: CoordsArg) -> Coords {
        match c {
            CoordsArg::Original => Coords::Original,
            CoordsArg::Normal => Coords::Normal,
        }
    }
}

/// Entry point used by the binary: parses `argv` (without the program
/// name) and returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run_with_output(argv, &mut stdout, &mut stderr)
}

/// Like [`run`], writing to the given streams; used by tests.
pub fn run_with_output<I: IntoIterator<Item = String>>(
    argv: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let args = std::iter::once("nilforms".to_string()).chain(argv);
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text; --help and --version
            // are successful outcomes rather than usage errors.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Classify(args) => classify(args, out),
        Command::Construct(args) => construct(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Search(args) => search(args, out),
        Command::Atransform(args) => atransform(args, out),
        Command::Oracle(args) => oracle(args, out),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::BadInput(format!("cannot write {path}: {e}")))
}

fn load_form(input: &FormInput) -> Result<BilinearForm> {
    let declared_field = input.field.as_deref().map(FieldSpec::parse).transpose()?;
    if let Some(path) = input.gram.strip_prefix("file:") {
        let form = decode_form(&read_file(path)?)?;
        if let Some(field) = declared_field {
            if field != form.field() {
                return Err(Error::BadInput(format!(
                    "--field {} disagrees with the file's field {}",
                    field,
                    form.field()
                )));
            }
        }
        return Ok(form);
    }
    let field = declared_field
        .ok_or_else(|| Error::BadInput("--field is required with gram shorthands".into()))?;
    if let Some(n) = input.gram.strip_prefix("identity:") {
        let n: usize =
            n.parse().map_err(|_| Error::Parse(format!("bad dimension in {:?}", input.gram)))?;
        return Ok(BilinearForm::identity(field, n));
    }
    if let Some(n) = input.gram.strip_prefix("hyperbolic:") {
        let n: usize =
            n.parse().map_err(|_| Error::Parse(format!("bad dimension in {:?}", input.gram)))?;
        if !n.is_multiple_of(2) {
            return Err(Error::BadInput(format!("hyperbolic dimension {n} must be even")));
        }
        return Ok(BilinearForm::hyperbolic(field, n / 2));
    }
    Err(Error::Parse(format!(
        "bad gram {:?}: expected identity:<n>, hyperbolic:<2m>, or file:<path>",
        input.gram
    )))
}

fn classify(args: ClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let form = load_form(&args.input)?;
    let inv = form.invariants();
    let mut report = Report::new();
    report
        .set("alternating", form.is_alternating())
        .set("dim_ker_q", inv.dim_ker_q)
        .set("dim_sker_q", inv.dim_sker_q)
        .set("n", inv.n)
        .set("nu", inv.witt_index)
        .set("rank", inv.rank);
    if form.is_nondegenerate() {
        let nb = form.normal_basis()?;
        report.set("p", nb.p_count()).set("q", nb.q_count()).set("m", nb.m_count());
    } else {
        // Normal invariants of the radical-reduced form.
        let (reduced, _) = form.reduce_by_radical();
        let nb = reduced.normal_basis()?;
        report
            .set("p", nb.p_count())
            .set("q", nb.q_count())
            .set("m", nb.m_count())
            .set("radical_dim", form.n() - form.rank());
    }
    let rendered = report.render();
    write!(out, "{rendered}").ok();
    if let Some(path) = args.out {
        write_file(&path, &rendered)?;
    }
    Ok(0)
}

/// The construction that attains the main theorem's bound for this form
/// and kind: the block-triangular space, except for the b-alternating kind
/// in odd dimension (p = 1) where the bordered space is strictly larger.
pub fn construct_extremal(
    form: &BilinearForm,
    kind: SpaceKind,
    coords: Coords,
) -> Result<MatrixSpace> {
    let nb = form.normal_basis()?;
    if kind == SpaceKind::BAlternating && nb.p_count() == 1 {
        construct_general_odd(&nb, form.gram(), coords)
    } else {
        construct_general(&nb, form.gram(), kind, coords)
    }
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Result<i32> {
    let form = load_form(&args.input)?;
    let kind: SpaceKind = args.kind.into();
    let space = construct_extremal(&form, kind, args.coords.into())?;
    let encoded = encode_space(&space);
    match args.out {
        Some(path) => {
            write_file(&path, &encoded)?;
            let nb = form.normal_basis()?;
            let mut report = Report::new();
            report
                .set("dimension", space.dimension())
                .set("field", space.field())
                .set("kind", kind.as_str())
                .set("n", space.n())
                .set("nu", nb.nu())
                .set("out", &path);
            write!(out, "{}", report.render()).ok();
        }
        None => {
            write!(out, "{encoded}").ok();
        }
    }
    Ok(0)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let space = decode_space(&read_file(&args.input)?)?;
    let nilpotency =
        nilpotency_exhaustive_with_workers(&space, args.budget, args.workers.max(1));
    let (nilpotency, mode) = match nilpotency.status {
        Status::Inconclusive => (nilpotency_sample(&space, args.trials, args.seed), "sample"),
        _ => (nilpotency, "exhaustive"),
    };
    let trace = trace_orthogonality(&space)?;
    let flag = flag_certificate(&space)?;

    let status = match (nilpotency.status, trace.status) {
        (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
        (Status::Verified, _) => Status::Verified,
        _ => Status::Inconclusive,
    };
    let mut report = Report::new();
    report
        .set("combinations_tested", nilpotency.stats.combinations_tested)
        .set("dimension", space.dimension())
        .set("field", space.field())
        .set("flag_certificate", if flag.is_some() { "present" } else { "absent" })
        .set("kind", space.kind().as_str())
        .set("mode", mode)
        .set("n", space.n())
        .set("nodes", nilpotency.stats.nodes)
        .set("status", status.as_str());
    let mut witness_path = "none".to_string();
    if status == Status::Refuted {
        if let (Some(path), Some(Witness::Combination { matrix, .. })) =
            (&args.out, &nilpotency.witness)
        {
            write_file(path, &encode_matrix(matrix))?;
            witness_path = path.clone();
        }
    }
    report.set("witness", witness_path);
    write!(out, "{}", report.render()).ok();
    Ok(if status == Status::Refuted { 1 } else { 0 })
}

fn search(args: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let form = load_form(&args.input)?;
    let kind: SpaceKind = args.kind.into();
    let outcome = search_max_nilpotent(&form, kind, args.budget)?;
    let inv = form.invariants();
    let mut report = Report::new();
    report
        .set("complete", outcome.complete)
        .set("dimension", outcome.max_dim)
        .set("field", form.field())
        .set("kind", kind.as_str())
        .set("n", form.n())
        .set("nodes", outcome.stats.nodes)
        .set("theorem_bound", theorem_bound(kind, inv.n, inv.witt_index, inv.dim_sker_q));
    write!(out, "{}", report.render()).ok();
    if let Some(path) = args.out {
        write_file(&path, &encode_space(&outcome.witness))?;
    }
    Ok(0)
}

fn atransform(args: AtransformArgs, out: &mut dyn Write) -> Result<i32> {
    let form = load_form(&args.input)?;
    let encoded = encode_matrix(&form.a_transform());
    match args.out {
        Some(path) => write_file(&path, &encoded)?,
        None => {
            write!(out, "{encoded}").ok();
        }
    }
    Ok(0)
}

fn oracle(args: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let form = load_form(&args.input)?;
    let inv = form.invariants();
    let nu_fast = inv.witt_index;
    let nu_brute = form.witt_index_bruteforce(args.budget)?;
    let mut agreement = nu_fast == nu_brute;
    let mut report = Report::new();
    report
        .set("field", form.field())
        .set("n", form.n())
        .set("nu", nu_fast)
        .set("nu_bruteforce", nu_brute);
    if let Some(kind) = args.kind {
        let kind: SpaceKind = kind.into();
        let outcome = search_max_nilpotent(&form, kind, args.budget)?;
        let bound = theorem_bound(kind, inv.n, inv.witt_index, inv.dim_sker_q);
        agreement &= !outcome.complete || outcome.max_dim == bound;
        report
            .set("kind", kind.as_str())
            .set("search_complete", outcome.complete)
            .set("search_dimension", outcome.max_dim)
            .set("theorem_bound", bound);
    }
    report.set("agreement", agreement);
    write!(out, "{}", report.render()).ok();
    Ok(if agreement { 0 } else { 1 })
}

/// Conjugate a loaded space by an explicit matrix; exposed for library
/// callers mirroring the CLI pipeline on space files.
pub fn rebase_space(space: &MatrixSpace, p: &Matrix) -> Result<MatrixSpace> {
    change_basis(space, p)
}
