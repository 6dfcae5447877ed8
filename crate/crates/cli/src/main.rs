use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finhtop::diagram::mapping_cylinder;
use finhtop::homology::{homology_profile, poset_homology};
use finhtop::io::{from_json, to_dot, to_json};
use finhtop::reduction::{core, is_contractible};
use finhtop::simplicial::{barycentric, face_poset, face_poset_op, order_complex};
use finhtop::verify::{self, CheckInput, CheckReport, CofinalityInput, TheoremId};
use finhtop::{Budget, ComplexDiagram, DiagramMorphism, Error, FinitePoset, PosetDiagram, PosetMap, SimplicialComplex};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "finhtop", version, about = "Finite spaces, homotopy colimits and executable theorem checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a single poset file.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Operations on a simplicial complex file.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Operations on diagrams of posets.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Run a theorem checker (or `all`).
    Check(CheckArgs),
}

#[derive(Subcommand)]
enum PosetCommand {
    /// Core and the beat-point removals reaching it.
    Core { file: PathBuf },
    /// Whether the poset is contractible (dismantlable).
    Contractible { file: PathBuf },
    /// Order complex K(P).
    Ordercomplex { file: PathBuf },
    /// Integral homology of K(P).
    Homology { file: PathBuf },
    /// Hasse diagram in DOT.
    ExportDot { file: PathBuf },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Face poset X(K), or its opposite with `--op`.
    Faceposet {
        file: PathBuf,
        #[arg(long)]
        op: bool,
    },
    /// Barycentric subdivision.
    Sd { file: PathBuf },
    /// Integral homology.
    Homology { file: PathBuf },
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Non-Hausdorff homotopy colimit.
    Hocolim { file: PathBuf },
    /// Mapping cylinder of a poset map file.
    Cylinder { file: PathBuf },
    /// Restriction to a subset of the index.
    Restrict {
        file: PathBuf,
        /// Comma-separated index elements to keep.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Theorem id, or `all`.
    theorem: String,
    /// Input file: a check input, a diagram, a morphism or `{"map", "diagram"}`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Index point the theorem removes.
    #[arg(long)]
    point: Option<String>,
    /// Index point dominating `--point`.
    #[arg(long)]
    dominator: Option<String>,
    /// Number of seeded random instances.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search budget in visited states.
    #[arg(long, env = "FINHTOP_BUDGET")]
    budget: Option<usize>,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, Error> {
    from_json(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn describe_poset(p: &FinitePoset) -> String {
    let covers: Vec<String> = p.cover_names().map(|(a, b)| format!("{a} < {b}")).collect();
    format!(
        "{} elements: {}\ncovers: {}\n",
        p.len(),
        p.elements().join(" "),
        if covers.is_empty() { "none".into() } else { covers.join(", ") }
    )
}

fn describe_complex(k: &SimplicialComplex) -> String {
    let facets: Vec<String> = k.facets().iter().map(|f| k.simplex_name(f)).collect();
    format!(
        "{} vertices, f-vector {:?}, Euler characteristic {}\nfacets: {}\n",
        k.vertices().len(),
        k.f_vector(),
        k.euler_characteristic(),
        facets.join(" ")
    )
}

/// Renders a poset result in the requested format.
fn poset_output(p: &FinitePoset, format: Format, name: &str) -> String {
    match format {
        Format::Text => describe_poset(p),
        Format::Json => to_json(p),
        Format::Dot => to_dot(p, name),
    }
}

fn value_output<T: Serialize>(value: &T, text: String, format: Format) -> Result<String, Error> {
    match format {
        Format::Text => Ok(text),
        Format::Json => Ok(to_json(value)),
        Format::Dot => Err(Error::Parse("this command has no DOT output".into())),
    }
}

fn run_poset(cmd: PosetCommand, format: Format) -> Result<String, Error> {
    match cmd {
        PosetCommand::Core { file } => {
            let p: FinitePoset = load(&file)?;
            let (c, removals) = core(&p)?;
            if format == Format::Dot {
                return Ok(to_dot(&c, "core"));
            }
            #[derive(Serialize)]
            struct CoreOutput<'a> {
                core: &'a FinitePoset,
                removals: &'a finhtop::RemovalSequence,
            }
            let removed: Vec<&str> = removals.elements().collect();
            let removed = if removed.is_empty() { "none".to_string() } else { removed.join(" ") };
            let text = format!("{}removed: {removed}\n", describe_poset(&c));
            value_output(&CoreOutput { core: &c, removals: &removals }, text, format)
        }
        PosetCommand::Contractible { file } => {
            let c = is_contractible(&load(&file)?)?;
            value_output(&c, format!("{c}\n"), format)
        }
        PosetCommand::Ordercomplex { file } => {
            let k = order_complex(&load(&file)?)?;
            value_output(&k, describe_complex(&k), format)
        }
        PosetCommand::Homology { file } => {
            let h = poset_homology(&load(&file)?)?;
            value_output(&h, h.to_string(), format)
        }
        PosetCommand::ExportDot { file } => Ok(to_dot(&load(&file)?, "poset")),
    }
}

fn run_complex(cmd: ComplexCommand, format: Format) -> Result<String, Error> {
    match cmd {
        ComplexCommand::Faceposet { file, op } => {
            let k: SimplicialComplex = load(&file)?;
            let x = if op { face_poset_op(&k)? } else { face_poset(&k)? };
            Ok(poset_output(&x, format, "face_poset"))
        }
        ComplexCommand::Sd { file } => {
            let k = barycentric(&load(&file)?)?;
            value_output(&k, describe_complex(&k), format)
        }
        ComplexCommand::Homology { file } => {
            let h = homology_profile(&load(&file)?)?;
            value_output(&h, h.to_string(), format)
        }
    }
}

fn run_diagram(cmd: DiagramCommand, format: Format) -> Result<String, Error> {
    match cmd {
        DiagramCommand::Hocolim { file } => {
            let d: PosetDiagram = load(&file)?;
            Ok(poset_output(&d.hocolim(), format, "hocolim"))
        }
        DiagramCommand::Cylinder { file } => {
            let f: PosetMap = load(&file)?;
            Ok(poset_output(&mapping_cylinder(&f), format, "cylinder"))
        }
        DiagramCommand::Restrict { file, keep } => {
            let d: PosetDiagram = load(&file)?;
            let r = d.restrict(&keep)?;
            match format {
                Format::Dot => Ok(to_dot(r.index(), "index")),
                Format::Json => Ok(to_json(&r)),
                Format::Text => {
                    let mut out = format!("index: {}", describe_poset(r.index()));
                    for (p, f) in r.index().elements().iter().zip(r.fibers()) {
                        out.push_str(&format!("fiber {p}: {}", describe_poset(f)));
                    }
                    Ok(out)
                }
            }
        }
    }
}

/// Reads a check input, accepting bare diagrams, morphisms and map+diagram pairs.
fn load_check_input(path: &Path, point: Option<String>, dominator: Option<String>) -> Result<CheckInput, Error> {
    let text = read(path)?;
    let parsed = from_json::<CheckInput>(&text)
        .or_else(|_| from_json::<PosetDiagram>(&text).map(|diagram| CheckInput::Diagram { diagram, point: None, dominator: None }))
        .or_else(|_| from_json::<ComplexDiagram>(&text).map(|diagram| CheckInput::Complexes { diagram }))
        .or_else(|_| from_json::<DiagramMorphism>(&text).map(|morphism| CheckInput::Morphism { morphism }))
        .or_else(|_| from_json::<CofinalityInput>(&text).map(CheckInput::Cofinality));
    let mut input = parsed.map_err(|_| {
        Error::Parse(format!(
            "{}: not a check input, poset diagram, complex diagram, morphism or map with diagram",
            path.display()
        ))
    })?;
    if let CheckInput::Diagram { point: p, dominator: d, .. } = &mut input {
        if point.is_some() {
            *p = point;
        }
        if dominator.is_some() {
            *d = dominator;
        }
    }
    Ok(input)
}

fn run_check(args: CheckArgs, format: Format) -> Result<(String, bool), Error> {
    let budget = Budget::new(args.budget.unwrap_or(Budget::default().states));
    let theorems: Vec<TheoremId> = if args.theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![args.theorem.parse()?]
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    let single = args.input.is_some();
    if let Some(path) = &args.input {
        if theorems.len() != 1 {
            return Err(Error::Parse("`--input` needs a single theorem id".into()));
        }
        let input = load_check_input(path, args.point.clone(), args.dominator.clone())?;
        let mut report = verify::run_check(theorems[0], &input, &budget)?;
        report.instance = Some(path.display().to_string());
        reports.push(report);
    } else {
        for &t in &theorems {
            match args.random {
                Some(n) => reports.extend(verify::run_suite(t, n, args.seed, &budget)?),
                None => reports.extend(verify::run_examples(t, &budget)?),
            }
            if args.random.is_some() && args.theorem == "all" {
                reports.extend(verify::run_examples(t, &budget)?);
            }
        }
    }
    let refuted = reports.iter().any(CheckReport::is_refuted);
    let out = match format {
        Format::Json if single => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Dot => return Err(Error::Parse("`check` has no DOT output".into())),
        Format::Text => {
            let mut out: String = reports.iter().map(|r| r.to_string()).collect();
            let t = verify::tally(&reports);
            out.push_str(&format!(
                "{} verified, {} refuted, {} skipped\n",
                t.verified, t.refuted, t.skipped
            ));
            out
        }
    };
    Ok((out, refuted))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poset(c) => run_poset(c, cli.format).map(|o| (o, false)),
        Command::Complex(c) => run_complex(c, cli.format).map(|o| (o, false)),
        Command::Diagram(c) => run_diagram(c, cli.format).map(|o| (o, false)),
        Command::Check(a) => run_check(a, cli.format),
    };
    match result {
        Ok((out, refuted)) => {
            print!("{out}");
            if refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
