//! The `kgraph` command line.

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use kgraph_core::analysis::{self, Status, Verdict};
use kgraph_core::io::{self, KgDocument, Parameters, Report, VerdictRecord};
use kgraph_core::{boundary, desource, fixtures, ideals, Degree, KGraph, KgError};

#[derive(Parser, Debug)]
#[command(name = "kgraph", version, about = "Finite higher-rank graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the factorisation squares of a graph
    Validate { file: PathBuf },
    /// List paths of a given degree (or in Λ^{<=n}) at a vertex
    Paths(PathsArgs),
    /// List boundary fragments of a given depth at a vertex
    Boundary {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        depth: u32,
    },
    /// Materialise the source-free extension up to an overshoot bound
    Desource {
        file: PathBuf,
        #[arg(long)]
        pmax: String,
        #[arg(long)]
        dot: bool,
    },
    /// Run an analysis and report verdicts
    Check {
        file: PathBuf,
        what: CheckKind,
        /// Search box for periodicity degrees
        #[arg(long = "box")]
        bound: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Saturated hereditary vertex sets
    Ideals {
        file: PathBuf,
        #[arg(long)]
        quotients: bool,
        #[arg(long)]
        gauge: bool,
        #[arg(long = "box")]
        bound: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Built-in example graphs
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Args, Debug)]
struct PathsArgs {
    file: PathBuf,
    #[arg(long)]
    from: String,
    #[arg(long, conflicts_with = "le", required_unless_present = "le")]
    degree: Option<String>,
    #[arg(long)]
    le: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Simplicity,
    Cofinal,
    Lp,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Simplicity => "simplicity",
            CheckKind::Cofinal => "cofinal",
            CheckKind::Lp => "lp",
        }
    }
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    Emit { name: String, args: Vec<String> },
}

enum Failure {
    Usage(String),
    Invalid(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

/// Process exit status for a library error: 2 when the graph itself is
/// rejected, 3 for an internal invariant breach, 1 otherwise.
pub fn exit_code(e: &KgError) -> u8 {
    match e {
        KgError::Invariant(_) => 3,
        KgError::ZeroRank
        | KgError::MalformedEdge(_)
        | KgError::MalformedSquare { .. }
        | KgError::IncompleteSquares(_)
        | KgError::AmbiguousSquares(_)
        | KgError::NonAssociative(_)
        | KgError::NotLocallyConvex(..) => 2,
        _ => 1,
    }
}

impl From<KgError> for Failure {
    fn from(e: KgError) -> Self {
        let message = e.to_string();
        match exit_code(&e) {
            3 => Failure::Internal(message),
            2 => Failure::Invalid(message),
            _ => Failure::Usage(message),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn load(file: &FsPath) -> Outcome<(KgDocument, KGraph)> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let doc = io::parse(&text).map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))?;
    let g = KGraph::validate(doc.to_spec())?;
    Ok((doc, g))
}

fn vertex(g: &KGraph, name: &str) -> Outcome<usize> {
    g.vertex_id(name)
        .ok_or_else(|| Failure::Usage(format!("unknown vertex {name}")))
}

fn degree(g: &KGraph, text: &str) -> Outcome<Degree> {
    Degree::parse_for_rank(text, g.rank()).map_err(Failure::Usage)
}

fn print_verdict(g: &KGraph, v: &Verdict) {
    let depth = match (v.exact, v.depth) {
        (true, _) => "exact".to_string(),
        (false, Some(b)) => format!("at depth {b}"),
        (false, None) => "bounded".to_string(),
    };
    println!("{}: {:?} ({depth})", v.name, v.status);
    if let Some(w) = v.witness_record(g) {
        let degrees: Vec<String> = w.degrees.iter().map(|d| d.to_string()).collect();
        println!(
            "  witness at {}: {} [{}]",
            w.vertex,
            w.note,
            degrees.join(" ")
        );
        for t in &w.trace {
            println!("    {t}");
        }
    }
}

fn write_report(
    doc: &KgDocument,
    g: &KGraph,
    command: &str,
    parameters: Parameters,
    verdicts: &[Verdict],
    out: &FsPath,
) -> Outcome {
    let records = verdicts.iter().map(|v| VerdictRecord::new(g, v)).collect();
    let report = Report::new(&io::print(doc), command, parameters, records);
    std::fs::write(out, report.to_json())
        .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let (_, g) = load(&file)?;
            println!(
                "valid rank-{} graph: {} vertices, {} edges, {} squares",
                g.rank(),
                g.vertex_count(),
                g.edge_count(),
                g.spec().squares.len()
            );
            match g.convexity_witness() {
                None => println!("locally convex"),
                Some((e, f)) => println!(
                    "not locally convex (witness {} and {})",
                    g.edge_name(e),
                    g.edge_name(f)
                ),
            }
            println!("sources: {}", if g.has_sources() { "yes" } else { "no" });
        }
        Command::Paths(args) => {
            let (_, g) = load(&args.file)?;
            let v = vertex(&g, &args.from)?;
            let paths = match (&args.degree, &args.le) {
                (Some(n), _) => g.paths_from(v, &degree(&g, n)?),
                (None, Some(n)) => {
                    g.require_locally_convex()?;
                    g.paths_le(v, &degree(&g, n)?)
                }
                (None, None) => unreachable!("clap requires one of --degree, --le"),
            };
            for p in &paths {
                println!(
                    "{} {} -> {}",
                    p.degree(),
                    g.display_path(p),
                    g.vertex_name(p.source())
                );
            }
            println!("{} paths", paths.len());
        }
        Command::Boundary { file, from, depth } => {
            let (_, g) = load(&file)?;
            let v = vertex(&g, &from)?;
            let frags = boundary::fragments_from(&g, v, depth)?;
            for f in &frags {
                println!(
                    "{} {} d(x) = {}",
                    f.body().degree(),
                    g.display_path(f.body()),
                    f.known_degree()
                );
            }
            println!("{} fragments of depth {depth}", frags.len());
        }
        Command::Desource { file, pmax, dot } => {
            let (_, g) = load(&file)?;
            let p_max = degree(&g, &pmax)?;
            let region = desource::materialize(&g, &p_max)?;
            if dot {
                print!(
                    "{}",
                    io::export_dot(&region.graph, &format!("desourced (p_max = {p_max})"))
                );
            } else {
                print!("{}", io::print(&KgDocument::from_spec(region.graph.spec())));
            }
        }
        Command::Check {
            file,
            what,
            bound,
            depth,
            json,
        } => {
            let (doc, g) = load(&file)?;
            let bound = match bound {
                Some(b) => degree(&g, &b)?,
                None => Degree::splat(g.rank(), 3),
            };
            let mut parameters = Parameters::default();
            let verdicts = match what {
                CheckKind::Cofinal => vec![analysis::is_cofinal(&g)?],
                CheckKind::Lp => {
                    parameters.bound = Some(bound.clone());
                    parameters.depth = Some(depth);
                    let report = analysis::simplicity_verdict(&g, &bound, depth)?;
                    for c in &report.candidates {
                        println!(
                            "candidate {} m = {} n = {}",
                            g.vertex_name(c.vertex),
                            c.m,
                            c.n
                        );
                    }
                    vec![report.aperiodicity]
                }
                CheckKind::Simplicity => {
                    parameters.bound = Some(bound.clone());
                    parameters.depth = Some(depth);
                    let report = analysis::simplicity_verdict(&g, &bound, depth)?;
                    let verdicts = report.verdicts();
                    let label = match verdicts[2].status {
                        Status::Holds => "Simple",
                        Status::Violated => "NotSimple",
                        Status::UnknownAtDepth => "Unknown",
                    };
                    println!("{label}");
                    verdicts
                }
            };
            for v in &verdicts {
                print_verdict(&g, v);
            }
            if let Some(out) = json {
                write_report(
                    &doc,
                    &g,
                    &format!("check {}", what.name()),
                    parameters,
                    &verdicts,
                    &out,
                )?;
            }
        }
        Command::Ideals {
            file,
            quotients,
            gauge,
            bound,
            depth,
        } => {
            let (_, g) = load(&file)?;
            let lattice = ideals::enumerate_sat_hered(&g)?;
            println!("{} saturated hereditary sets", lattice.len());
            for h in &lattice {
                println!("{{{}}}", ideals::set_names(&g, h).join(" "));
                if quotients {
                    let q = ideals::quotient(&g, h)?;
                    println!(
                        "  quotient: {} vertices, {} edges",
                        q.vertex_count(),
                        q.edge_count()
                    );
                }
            }
            if gauge {
                let bound = match bound {
                    Some(b) => degree(&g, &b)?,
                    None => Degree::splat(g.rank(), 3),
                };
                let report = ideals::gauge_invariance_criterion(&g, &bound, depth)?;
                print_verdict(&g, &report.cofinality);
                match report.first_failure() {
                    None => println!(
                        "no proper quotient has local periodicity (box {bound}, depth {depth})"
                    ),
                    Some(e) => {
                        let c = &e.candidates[0];
                        println!(
                            "fails at H = {{{}}}: quotient has local periodicity {}, {} at {}",
                            ideals::set_names(&g, &e.set).join(" "),
                            c.m,
                            c.n,
                            e.quotient.vertex_name(c.vertex)
                        );
                    }
                }
            }
        }
        Command::Fixtures { action } => match action {
            FixtureAction::List => {
                for (_, usage) in fixtures::NAMES {
                    println!("{usage}");
                }
            }
            FixtureAction::Emit { name, args } => {
                let spec = fixtures::named(&name, &args).map_err(Failure::Usage)?;
                print!("{}", io::print(&KgDocument::from_spec(&spec)));
            }
        },
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit
/// status. Diagnostics go to stderr.
pub fn run_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}
