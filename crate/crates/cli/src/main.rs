use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcmlat::coord::classify;
use lcmlat::ideal::{ideal_from_labeling, lcm_lattice, weak_ideal};
use lcmlat::io::{
    hasse_dot, ideal_from_text, ideal_to_text, labeling_from_json, lattice_from_json, lattice_to_json, DotOptions,
};
use lcmlat::labeling_c::{check_cover_strength, check_interval_hypothesis, check_pair_condition, labeling_c};
use lcmlat::superatomic::{enumerate_super_atomic, is_super_atomic, is_super_atomic_via_supp};
use lcmlat::{AtomicLattice, Error, Labeling};
use serde_json::json;

mod fixtures;

#[derive(Parser)]
#[command(name = "lcmlat", version, about = "Finite atomic lattices and the lcm-lattices of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a lattice or labeling file.
    Validate { path: PathBuf },
    /// Print the ideal generated by a labeling, one generator per atom.
    BuildIdeal {
        labeling: PathBuf,
        #[command(flatten)]
        kind: IdealKind,
    },
    /// Print the lcm-lattice of an ideal as lattice JSON.
    LcmLattice {
        ideal: PathBuf,
        /// Also write the Hasse diagram with monomial labels.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Draw the bottom element in the diagram.
        #[arg(long)]
        keep_bottom: bool,
    },
    /// Classify a labeling and print the result as JSON.
    Classify { labeling: PathBuf },
    /// List every super-atomic lattice on n atoms.
    EnumerateSuperatomic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Write one lattice file per result and an index.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both super-atomic tests on a lattice.
    CheckSuperatomic { lattice: PathBuf },
    /// Reports on the support labeling of a lattice.
    CheckLabelingC(LabelingCArgs),
    /// Run the bundled reference examples.
    ReferenceExamples {
        /// Read fixtures from this directory instead of the bundled set.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Write the Hasse diagram of a lattice or labeling in DOT.
    ExportDot {
        path: PathBuf,
        #[arg(long)]
        suppress_bottom: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct IdealKind {
    /// Generators `x(a)`.
    #[arg(long)]
    plain: bool,
    /// Generators `Δ(a)`.
    #[arg(long)]
    weak: bool,
}

#[derive(Args)]
struct LabelingCArgs {
    lattice: Option<PathBuf>,
    /// The interval-count hypothesis for a weak support labeling.
    #[arg(long, conflicts_with_all = ["pair_condition", "cover"])]
    interval_hypothesis: bool,
    /// The pair condition for a strong support labeling (super-atomic input).
    #[arg(long, conflicts_with = "cover")]
    pair_condition: bool,
    /// Cover check: outer super-atomic lattice, middle lattice, covered lattice.
    #[arg(long, num_args = 3, value_names = ["OUTER", "MIDDLE", "COVERED"])]
    cover: Option<Vec<PathBuf>>,
}

/// A failure with its exit code: 1 for domain failures, 3 for I/O and
/// unreadable input.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Json { .. } | Error::Parse { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 3,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure {
        code: 3,
        message: format!("{}: {e}", path.display()),
    })
}

fn with_path(path: &Path) -> impl Fn(Failure) -> Failure + '_ {
    move |f| Failure {
        code: f.code,
        message: format!("{}: {}", path.display(), f.message),
    }
}

fn load_lattice(path: &Path) -> Result<AtomicLattice, Failure> {
    let text = read(path)?;
    lattice_from_json(&text).map_err(Failure::from).map_err(with_path(path))
}

fn load_labeling(path: &Path) -> Result<(AtomicLattice, Labeling), Failure> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    labeling_from_json(&text, |rel| {
        fs::read_to_string(base.join(rel)).map_err(|e| Error::Precondition(format!("lattice file {rel}: {e}")))
    })
    .map_err(|e| match e {
        Error::Precondition(m) if m.starts_with("lattice file") => Failure { code: 3, message: m },
        other => Failure::from(other),
    })
    .map_err(with_path(path))
}

fn is_labeling_doc(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("labels").is_some())
        .unwrap_or(false)
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn validate(path: &Path) -> Outcome {
    let text = read(path)?;
    if is_labeling_doc(&text) {
        let (l, lab) = load_labeling(path)?;
        println!("valid labeling: {} atoms, {} elements, {} labeled", l.atom_count(), l.len(), lab.len());
    } else {
        let l = load_lattice(path)?;
        println!("valid lattice: {} atoms, {} elements", l.atom_count(), l.len());
    }
    Ok(())
}

fn build_ideal(path: &Path, kind: &IdealKind) -> Outcome {
    let (l, lab) = load_labeling(path)?;
    let ideal = if kind.weak {
        weak_ideal(&l, &lab)?
    } else {
        ideal_from_labeling(&l, &lab)
    };
    if ideal.contains_unit() {
        eprintln!("warning: some generators are 1");
    }
    print!("{}", ideal_to_text(ideal.generators()));
    Ok(())
}

fn lcm_lattice_cmd(path: &Path, dot: Option<&Path>, keep_bottom: bool) -> Outcome {
    let ideal = ideal_from_text(&read(path)?).map_err(Failure::from).map_err(with_path(path))?;
    let lcm = lcm_lattice(&ideal)?;
    print!("{}", lattice_to_json(lcm.lattice()));
    if let Some(out) = dot {
        let opts = DotOptions {
            suppress_bottom: !keep_bottom,
            labels: Some(lcm.monomials().iter().map(|m| m.to_string()).collect()),
        };
        write(out, &hasse_dot(lcm.lattice(), &opts))?;
    }
    Ok(())
}

fn enumerate(n: usize, count_only: bool, out: Option<&Path>) -> Outcome {
    let all = enumerate_super_atomic(n)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure {
            code: 3,
            message: format!("{}: {e}", dir.display()),
        })?;
        let width = all.len().to_string().len().max(4);
        let mut files = Vec::new();
        for (i, l) in all.iter().enumerate() {
            let name = format!("lattice-{:0width$}.json", i + 1);
            write(&dir.join(&name), &lattice_to_json(l))?;
            files.push(name);
        }
        let index = json!({"n": n, "count": all.len(), "files": files});
        write(&dir.join("index.json"), &(serde_json::to_string_pretty(&index).expect("json") + "\n"))?;
    }
    if count_only || out.is_some() {
        println!("{}", all.len());
    } else {
        for l in &all {
            let sets: Vec<_> = l.sets().to_vec();
            println!("{}", json!({"n": n, "sets": sets}));
        }
    }
    Ok(())
}

fn check_superatomic(path: &Path) -> Outcome {
    let l = load_lattice(path)?;
    let literal = is_super_atomic(&l);
    let via = is_super_atomic_via_supp(&l);
    print_json(&json!({
        "is_super_atomic": literal,
        "is_super_atomic_via_supp": via,
        "agree": literal == via,
    }));
    if literal != via {
        return Err(Failure::domain("the two tests disagree"));
    }
    Ok(())
}

fn check_labeling_c(args: &LabelingCArgs) -> Outcome {
    if let Some(paths) = &args.cover {
        let r = load_lattice(&paths[0])?;
        let p = load_lattice(&paths[1])?;
        let q = load_lattice(&paths[2])?;
        print_json(&check_cover_strength(&r, &p, &q)?);
        return Ok(());
    }
    let path = args
        .lattice
        .as_deref()
        .ok_or_else(|| Failure {
            code: 2,
            message: "a lattice file is required".into(),
        })?;
    let l = load_lattice(path)?;
    if args.interval_hypothesis {
        print_json(&check_interval_hypothesis(&l));
    } else if args.pair_condition {
        print_json(&check_pair_condition(&l)?);
    } else {
        let c = labeling_c(&l);
        let pair = if is_super_atomic(&l) {
            Some(check_pair_condition(&l)?)
        } else {
            None
        };
        print_json(&json!({
            "ideal": ideal_from_labeling(&l, &c).generators().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "classification": classify(&l, &c)?,
            "interval_hypothesis": check_interval_hypothesis(&l),
            "pair_condition": pair,
        }));
    }
    Ok(())
}

fn reference_examples(dir: Option<&Path>) -> Outcome {
    let texts = fixtures::load(dir).map_err(|m| Failure { code: 3, message: m })?;
    let mut failed = 0;
    for (name, text) in &texts {
        let report = fixtures::run(text);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let id = if report.id == "?" { name.as_str() } else { report.id.as_str() };
        println!("{status} {id}");
        if !report.note.is_empty() {
            println!("    {}", report.note);
        }
        if let Some(err) = &report.error {
            println!("    error: {err}");
        }
        for o in &report.outcomes {
            let mark = if o.passed() { "ok" } else { "MISMATCH" };
            println!("    {mark} {}: expected {} got {}", o.what, o.expected, o.actual);
        }
        if !report.passed() {
            failed += 1;
        }
    }
    println!("{} of {} passed", texts.len() - failed, texts.len());
    if failed > 0 {
        return Err(Failure::domain(format!("{failed} reference examples failed")));
    }
    Ok(())
}

fn export_dot(path: &Path, suppress_bottom: bool, output: Option<&Path>) -> Outcome {
    let text = read(path)?;
    let (l, labels) = if is_labeling_doc(&text) {
        let (l, lab) = load_labeling(path)?;
        let labels = l
            .sets()
            .iter()
            .map(|&s| match lab.get(s) {
                Some(m) => format!("{s} {m}"),
                None => s.to_string(),
            })
            .collect();
        (l, Some(labels))
    } else {
        (load_lattice(path)?, None)
    };
    let dot = hasse_dot(&l, &DotOptions { suppress_bottom, labels });
    match output {
        Some(out) => write(out, &dot),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => validate(path),
        Command::BuildIdeal { labeling, kind } => build_ideal(labeling, kind),
        Command::LcmLattice { ideal, dot, keep_bottom } => lcm_lattice_cmd(ideal, dot.as_deref(), *keep_bottom),
        Command::Classify { labeling } => load_labeling(labeling).and_then(|(l, lab)| {
            print_json(&classify(&l, &lab)?);
            Ok(())
        }),
        Command::EnumerateSuperatomic { n, count_only, out } => enumerate(*n, *count_only, out.as_deref()),
        Command::CheckSuperatomic { lattice } => check_superatomic(lattice),
        Command::CheckLabelingC(args) => check_labeling_c(args),
        Command::ReferenceExamples { fixtures } => reference_examples(fixtures.as_deref()),
        Command::ExportDot {
            path,
            suppress_bottom,
            output,
        } => export_dot(path, *suppress_bottom, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
