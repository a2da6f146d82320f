//! bikernel command-line surface: parse presentation files, dispatch checks
//! and constructions, run the fuzz corpus, and emit machine-readable
//! reports on standard output.
//!
//! Exit codes: 0 pass, 1 property fail, 2 invalid input, 3 budget exceeded.

use bikernel::bicat::{
    self, check_laws, presentation_from_json, presentation_to_json, BicatPresentation,
};
use bikernel::budget::Budget;
use bikernel::cell::CellId;
use bikernel::config::Config;
use bikernel::display::{
    check_disp_laws, check_disp_univalence, disp_from_json, disp_to_json, fullsub_disp,
    prod_disp, sigma_disp, total_bicat, trivial_disp, DispBicatPresentation,
};
use bikernel::disp_psfun::{
    check_disp_biequivalence, DispBiequivalenceData, DispInvModificationData, DispPsfunctorData,
    DispPstransData,
};
use bikernel::error::KernelError;
use bikernel::fincat::{
    check_cwf_representation, cwf_bicat, fincat_fragment_bicat, kleisli_bicat,
    monad_kleisli_biequiv, CwFData, FiniteCategory,
};
use bikernel::psfun::{build_pseudo_bicat, identity_biequivalence};
use bikernel::univalence::{check_global_univalence, check_local_univalence, check_univalent};
use bikernel::yoneda::{representable0, yoneda_check, CatValuedPsfunctor};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bikernel", version, about = "Kernel for finitely presented bicategories")]
struct Cli {
    /// Enumeration budget in instantiation tuples (also BIKERNEL_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation and check every coherence law.
    Check(CheckArgs),
    /// Decide local/global univalence of a presentation.
    Univalence(UnivalenceArgs),
    /// Build a presentation or bundle and write it to a file.
    Build(BuildArgs),
    /// Enumerate cells: invertible 2-cells, adjoint equivalences, monads.
    Find(FindArgs),
    /// Run the Yoneda lemma check at an object.
    Yoneda(YonedaArgs),
    /// Run the seed-deterministic theorem suites.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Presentation file (plain bicategory unless a flag selects otherwise).
    file: Option<PathBuf>,
    /// Treat the file as a displayed presentation.
    #[arg(long)]
    displayed: bool,
    /// Check a CwF instance file for the comprehension property.
    #[arg(long)]
    cwf: Option<PathBuf>,
    /// Check a displayed biequivalence bundle.
    #[arg(long)]
    disp_biequiv: Option<PathBuf>,
}

#[derive(Args)]
struct UnivalenceArgs {
    file: PathBuf,
    /// Only the local check.
    #[arg(long, conflicts_with = "global")]
    local: bool,
    /// Only the global check.
    #[arg(long)]
    global: bool,
    /// Both checks (the default).
    #[arg(long, conflicts_with_all = ["local", "global"])]
    both: bool,
    /// Treat the file as a displayed presentation (fiberwise univalence).
    #[arg(long)]
    displayed: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[command(subcommand)]
    kind: BuildKind,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Total bicategory of a displayed presentation.
    Total {
        disp: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Product of two displayed presentations over the same base.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sigma of a displayed presentation over the total of another.
    Sigma {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Full subbicategory on a listed object set, as a displayed file.
    Fullsub {
        base: PathBuf,
        /// Comma-separated object tokens to keep.
        #[arg(long)]
        objects: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trivial displayed presentation of one presentation over another.
    Trivial {
        base: PathBuf,
        fiber: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The bicategory Pseudo(B,C) via the displayed layering.
    Pseudo {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        tgt: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The bicategory of internal monads of a presentation.
    Monads {
        base: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the displayed tower next to the output.
        #[arg(long)]
        expose_tower: Option<PathBuf>,
    },
    /// The fragment bicategory of a list of finite categories.
    Fragment {
        cats: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The bicategory of Kleisli triples over a fragment.
    Kleisli {
        cats: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The CwF bicategory over a fragment with a presheaf value bound.
    Cwf {
        cats: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The monad↔Kleisli displayed biequivalence bundle over a fragment.
    MonadKleisli {
        cats: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// A named generator instance.
    Gen {
        /// terminal | discrete:N | chaotic:N | delooping:bool |
        /// delooping:zmod2 | delooping:leftzero | delta2 | weakunit
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct FindArgs {
    #[command(subcommand)]
    kind: FindKind,
}

#[derive(Subcommand)]
enum FindKind {
    /// Invertible 2-cells between two parallel 1-cells.
    Inv2cells {
        file: PathBuf,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
    },
    /// Adjoint equivalences between two objects.
    Adjequivs {
        file: PathBuf,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
    },
    /// Biinitial objects.
    Biinitial { file: PathBuf },
    /// Monad structures by brute force.
    Monads { file: PathBuf },
    /// Strictness report.
    Strict { file: PathBuf },
}

#[derive(Args)]
struct YonedaArgs {
    file: PathBuf,
    #[arg(long)]
    object: String,
    /// Optional Cat-valued pseudofunctor file; defaults to the representable
    /// at the object.
    #[arg(long)]
    presheaf: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
}

/// A displayed biequivalence bundle: the two displayed presentations plus
/// all displayed components over the identity biequivalence of their shared
/// base.
#[derive(Serialize, Deserialize)]
struct BiequivBundle {
    d1: serde_json::Value,
    d2: serde_json::Value,
    l: DispPsfunctorData,
    r: DispPsfunctorData,
    eta: DispPstransData,
    eta_i: DispPstransData,
    eps: DispPstransData,
    eps_i: DispPstransData,
    m1: DispInvModificationData,
    m2: DispInvModificationData,
    m3: DispInvModificationData,
    m4: DispInvModificationData,
}

#[derive(Deserialize)]
struct FragmentFile {
    categories: BTreeMap<String, FiniteCategory>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

enum CliError {
    Input(String),
    Budget(String),
    Kernel(String),
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::EnumerationBudgetExceeded { .. } => CliError::Budget(e.to_string()),
            KernelError::InvalidInput(_)
            | KernelError::DuplicateId { .. }
            | KernelError::InvalidMonoid(_)
            | KernelError::InvalidGroup(_) => CliError::Input(e.to_string()),
            other => CliError::Kernel(other.to_string()),
        }
    }
}

fn load_presentation(path: &Path) -> Result<BicatPresentation, CliError> {
    let p = presentation_from_json(&read(path)?)?;
    let v = p.validate();
    if !v.passed() {
        return Err(CliError::Input(format!(
            "{}: presentation invalid: {}",
            path.display(),
            serde_json::to_string(&v.violations).unwrap_or_default()
        )));
    }
    Ok(p)
}

fn load_disp(path: &Path) -> Result<DispBicatPresentation, CliError> {
    let d = disp_from_json(&read(path)?)?;
    let v = d.validate();
    if !v.passed() {
        return Err(CliError::Input(format!(
            "{}: displayed presentation invalid: {}",
            path.display(),
            serde_json::to_string(&v.violations).unwrap_or_default()
        )));
    }
    Ok(d)
}

fn load_fragment(
    path: &Path,
    budget: &Budget,
) -> Result<bikernel::fincat::FragmentBicat, CliError> {
    let file: FragmentFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let cats: Vec<(CellId, FiniteCategory)> = file
        .categories
        .into_iter()
        .map(|(k, v)| (CellId::from(k), v))
        .collect();
    Ok(fincat_fragment_bicat(&cats, budget)?)
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut config = Config::default();
    if let Ok(v) = std::env::var("BIKERNEL_BUDGET") {
        if let Ok(n) = v.parse() {
            config.enumeration_budget = n;
        }
    }
    if let Some(b) = cli.budget {
        config.enumeration_budget = b;
    }
    let budget = config.budget();

    match cli.command {
        Command::Check(args) => {
            if let Some(path) = args.cwf {
                let data: CwFData = serde_json::from_str(&read(&path)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let (ok, witnesses) = check_cwf_representation(&data, &budget)?;
                emit(&json!({
                    "status": if ok { "pass" } else { "fail" },
                    "witnesses": witnesses,
                }));
                return Ok(ok);
            }
            if let Some(path) = args.disp_biequiv {
                let bundle: BiequivBundle = serde_json::from_str(&read(&path)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let d1 = disp_from_json(&bundle.d1.to_string())?;
                let d2 = disp_from_json(&bundle.d2.to_string())?;
                if d1.base != d2.base {
                    return Err(CliError::Input(
                        "bundle layers live over different bases".into(),
                    ));
                }
                let base = identity_biequivalence(&d1.base)?;
                let db = DispBiequivalenceData {
                    l: bundle.l,
                    r: bundle.r,
                    eta: bundle.eta,
                    eta_i: bundle.eta_i,
                    eps: bundle.eps,
                    eps_i: bundle.eps_i,
                    m1: bundle.m1,
                    m2: bundle.m2,
                    m3: bundle.m3,
                    m4: bundle.m4,
                };
                let report = check_disp_biequivalence(&d1, &d2, &base, &db, &budget)?;
                emit(&report);
                return Ok(report.passed());
            }
            let path = args
                .file
                .ok_or_else(|| CliError::Input("check needs a file or a mode flag".into()))?;
            if args.displayed {
                let d = load_disp(&path)?;
                let report = check_disp_laws(&d, &budget)?;
                emit(&report);
                Ok(report.passed())
            } else {
                let p = load_presentation(&path)?;
                let report = check_laws(&p, &budget)?;
                emit(&report);
                Ok(report.passed())
            }
        }
        Command::Univalence(args) => {
            if args.displayed {
                let d = load_disp(&args.file)?;
                let report = check_disp_univalence(&d, &budget)?;
                emit(&report);
                return Ok(report.passed());
            }
            let p = load_presentation(&args.file)?;
            if args.local {
                let side = check_local_univalence(&p, &budget)?;
                emit(&side);
                Ok(side.passed())
            } else if args.global {
                let side = check_global_univalence(&p, &budget)?;
                emit(&side);
                Ok(side.passed())
            } else {
                let report = check_univalent(&p, &budget)?;
                emit(&report);
                Ok(report.passed())
            }
        }
        Command::Build(args) => {
            match args.kind {
                BuildKind::Total { disp, out } => {
                    let d = load_disp(&disp)?;
                    let t = total_bicat(&d)?;
                    write_out(&out, &presentation_to_json(&t))?;
                }
                BuildKind::Product { left, right, out } => {
                    let d1 = load_disp(&left)?;
                    let d2 = load_disp(&right)?;
                    write_out(&out, &disp_to_json(&prod_disp(&d1, &d2)?))?;
                }
                BuildKind::Sigma { first, second, out } => {
                    let d1 = load_disp(&first)?;
                    let d2 = load_disp(&second)?;
                    write_out(&out, &disp_to_json(&sigma_disp(&d1, &d2)?))?;
                }
                BuildKind::Fullsub { base, objects, out } => {
                    let p = load_presentation(&base)?;
                    let keep: std::collections::BTreeSet<CellId> =
                        objects.split(',').map(CellId::from).collect();
                    let d = fullsub_disp(&p, &|a| keep.contains(a))?;
                    write_out(&out, &disp_to_json(&d))?;
                }
                BuildKind::Trivial { base, fiber, out } => {
                    let p = load_presentation(&base)?;
                    let q = load_presentation(&fiber)?;
                    write_out(&out, &disp_to_json(&trivial_disp(&p, &q)?))?;
                }
                BuildKind::Pseudo { src, tgt, out } => {
                    let b = load_presentation(&src)?;
                    let c = load_presentation(&tgt)?;
                    let ps = build_pseudo_bicat(&b, &c, &budget)?;
                    write_out(&out, &presentation_to_json(&ps.presentation))?;
                }
                BuildKind::Monads {
                    base,
                    out,
                    expose_tower,
                } => {
                    let p = load_presentation(&base)?;
                    let tower = bikernel::algebra::monad_bicat(&p, &budget)?;
                    write_out(&out, &presentation_to_json(&tower.presentation))?;
                    if let Some(dir) = expose_tower {
                        std::fs::create_dir_all(&dir)
                            .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
                        write_out(&dir.join("tower.json"), &disp_to_json(&tower.disp))?;
                    }
                }
                BuildKind::Fragment { cats, out } => {
                    let frag = load_fragment(&cats, &budget)?;
                    write_out(&out, &presentation_to_json(&frag.presentation))?;
                }
                BuildKind::Kleisli { cats, out } => {
                    let frag = load_fragment(&cats, &budget)?;
                    let kb = kleisli_bicat(&frag, &budget)?;
                    write_out(&out, &presentation_to_json(&kb))?;
                }
                BuildKind::Cwf { cats, bound, out } => {
                    let frag = load_fragment(&cats, &budget)?;
                    let cwf = cwf_bicat(&frag, bound, &budget)?;
                    write_out(&out, &presentation_to_json(&cwf.presentation))?;
                }
                BuildKind::MonadKleisli { cats, out } => {
                    let frag = load_fragment(&cats, &budget)?;
                    let bi = monad_kleisli_biequiv(&frag, &budget)?;
                    let bundle = BiequivBundle {
                        d1: serde_json::from_str(&disp_to_json(&bi.monads.disp))
                            .expect("disp json"),
                        d2: serde_json::from_str(&disp_to_json(&bi.kleisli.disp))
                            .expect("disp json"),
                        l: bi.db.l,
                        r: bi.db.r,
                        eta: bi.db.eta,
                        eta_i: bi.db.eta_i,
                        eps: bi.db.eps,
                        eps_i: bi.db.eps_i,
                        m1: bi.db.m1,
                        m2: bi.db.m2,
                        m3: bi.db.m3,
                        m4: bi.db.m4,
                    };
                    write_out(
                        &out,
                        &serde_json::to_string_pretty(&bundle).expect("bundle serializes"),
                    )?;
                }
                BuildKind::Gen { spec, out } => {
                    let p = generator_by_name(&spec)?;
                    write_out(&out, &presentation_to_json(&p))?;
                }
            }
            Ok(true)
        }
        Command::Find(args) => match args.kind {
            FindKind::Inv2cells { file, src, tgt } => {
                let p = load_presentation(&file)?;
                let cells =
                    bicat::invertible_2cells(&p, &CellId::from(src.as_str()), &CellId::from(tgt.as_str()))?;
                emit(&cells);
                Ok(true)
            }
            FindKind::Adjequivs { file, src, tgt } => {
                let p = load_presentation(&file)?;
                let cells = bicat::adjoint_equivalences(
                    &p,
                    &CellId::from(src.as_str()),
                    &CellId::from(tgt.as_str()),
                    &budget,
                )?;
                emit(&cells);
                Ok(true)
            }
            FindKind::Biinitial { file } => {
                let p = load_presentation(&file)?;
                let reports: Vec<_> = p
                    .objects
                    .iter()
                    .map(|a| bicat::is_biinitial(&p, a))
                    .collect::<Result<_, _>>()?;
                emit(&reports);
                Ok(true)
            }
            FindKind::Monads { file } => {
                let p = load_presentation(&file)?;
                let monads = bikernel::algebra::enumerate_monads(&p, &budget)?;
                emit(&json!({
                    "count": monads.len(),
                    "monads": monads
                        .iter()
                        .map(|m| json!({
                            "carrier": m.carrier,
                            "m": m.m,
                            "eta": m.eta,
                            "mu": m.mu,
                        }))
                        .collect::<Vec<_>>(),
                }));
                Ok(true)
            }
            FindKind::Strict { file } => {
                let p = load_presentation(&file)?;
                let report = bicat::check_strict(&p)?;
                emit(&report);
                Ok(true)
            }
        },
        Command::Yoneda(args) => {
            let p = load_presentation(&args.file)?;
            let a = CellId::from(args.object.as_str());
            let target: CatValuedPsfunctor = match args.presheaf {
                Some(path) => serde_json::from_str(&read(&path)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
                None => representable0(&p, &a, &budget)?,
            };
            let report = yoneda_check(&p, &target, &a, &budget)?;
            emit(&report);
            Ok(report.passed)
        }
        Command::Fuzz(args) => {
            let summary = bikernel::corpus::run_fuzz(args.seed, args.count, &budget)?;
            emit(&summary);
            Ok(summary.failures.is_empty())
        }
    }
}

fn generator_by_name(spec: &str) -> Result<BicatPresentation, CliError> {
    let p = match spec {
        "terminal" => bicat::terminal_bicat(),
        "delta2" => bicat::delta2(),
        "weakunit" => bicat::weak_unit_bicat(),
        "delooping:bool" => bicat::monoid_delooping(&bicat::MonoidTable::bool_and())?,
        "delooping:zmod2" => bicat::monoid_delooping(&bicat::MonoidTable::zmod2())?,
        "delooping:leftzero" => bicat::monoid_delooping(&bicat::MonoidTable::left_zero_unit())?,
        other => {
            if let Some(n) = other.strip_prefix("discrete:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad generator spec `{other}`")))?;
                bicat::discrete_bicat(n)
            } else if let Some(n) = other.strip_prefix("chaotic:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad generator spec `{other}`")))?;
                bicat::chaotic_bicat(n)
            } else {
                return Err(CliError::Input(format!("unknown generator spec `{other}`")));
            }
        }
    };
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Kernel(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
