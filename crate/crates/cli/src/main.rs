//! `acgt`: operator command line for the portal.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acgt_core::content::{export_page, import_page, validate_page, PageId};
use acgt_core::families::{generate, Family};
use acgt_core::graph::format_rational;
use acgt_core::workflow::{parse_percentages, parse_roster, plan_exercises, Portal};
use acgt_core::{
    hosoya_wiener, spanning_tree_census, spanning_tree_count, verify_a136328, weighted_wiener, wiener, CensusOptions,
    FamilySpec, Graph,
};
use acgt_service::store::valid_student_id;
use acgt_service::{Config, Document, Store};
use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};

const FAMILIES: &str = "complete, complete-bipartite, cycle, star, ladder, hypercube, wheel, gear, petersen, odd, \
                        fibonacci-tree, block, extended-block, gk-open, gk-closed";

#[derive(Debug, Parser)]
#[command(name = "acgt", version, about = "Graph-theory portal: compute engine, content store and service")]
struct Cli {
    /// Store directory.
    #[arg(long, global = true, env = "DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the HTTP service (PORT and AUTH_MODE come from the environment).
    Serve {
        #[arg(long, env = "PORT", default_value_t = 8080)]
        port: u16,
    },
    /// Load the seed pages, prerequisite corpus and syllabus into the store.
    Seed {
        /// Overwrite seed pages in a non-empty store.
        #[arg(long)]
        force: bool,
    },
    /// Print the edge list of a family instance.
    #[command(after_help = format!("families: {FAMILIES}"))]
    Gen {
        family: Family,
        params: Vec<u64>,
    },
    /// Wiener index of a connected graph given as an edge-list file.
    Wiener {
        file: PathBuf,
        /// Also print the Hosoya–Wiener polynomial (unweighted graphs only).
        #[arg(long)]
        polynomial: bool,
    },
    /// Spanning trees of a family instance grouped up to isomorphism.
    #[command(after_help = format!("families: {FAMILIES}"))]
    Census {
        family: Family,
        params: Vec<u64>,
        /// Lift the default 12-vertex / 20-edge limit.
        #[arg(long)]
        unbounded: bool,
    },
    /// Check both closed forms, and brute force up to n = 6, against the sequence terms.
    #[command(name = "verify-a136328")]
    VerifyA136328 {
        #[arg(long, default_value_t = 17)]
        max_n: u32,
    },
    /// Write a stored page in the fielded format.
    Export {
        id: PageId,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a fielded page file and store it.
    Import { file: PathBuf },
    /// Merge a roster file into the store and list group changes.
    Roster { file: PathBuf },
    /// Exercise mix for a class.
    Plan {
        /// Group shares g1,g2,g3 as exact decimals or fractions summing to 1.
        #[arg(long)]
        pcts: String,
        #[arg(long)]
        total: u64,
    },
}

/// Writes to stdout; a closed pipe (`acgt ... | head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(&format!($($arg)*))? };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format!($($arg)*)))? };
}

/// Clap's message plus a synopsis, for the subcommand named on the line.
fn usage_error(e: clap::Error) -> ExitCode {
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        e.exit();
    }
    let mut cmd = Cli::command();
    cmd.build();
    let rendered = e.render().to_string();
    eprint!("{rendered}");
    if !rendered.contains("Usage:") {
        let sub = std::env::args().skip(1).find_map(|a| cmd.find_subcommand(&a).map(|c| c.clone()));
        let usage = sub.unwrap_or(cmd).render_usage();
        eprintln!("\n{usage}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => return usage_error(e),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Parameter arity and range problems are usage errors.
fn family_spec(subcommand: &str, family: Family, params: Vec<u64>) -> FamilySpec {
    let spec = FamilySpec::new(family, params);
    if let Err(e) = spec.validate() {
        let mut cmd = Cli::command();
        cmd.build();
        let sub = cmd.find_subcommand_mut(subcommand).expect("subcommand exists");
        sub.error(ErrorKind::InvalidValue, e.to_string()).exit();
    }
    spec
}

fn run(cli: Cli) -> Result<ExitCode> {
    let data_dir = cli.data_dir;
    match cli.command {
        Command::Serve { port } => serve(data_dir, port)?,
        Command::Seed { force } => seed(&data_dir, force)?,
        Command::Gen { family, params } => {
            let g = generate(&family_spec("gen", family, params))?;
            out!("{}", g.to_edge_list());
        }
        Command::Wiener { file, polynomial } => wiener_of(&file, polynomial)?,
        Command::Census {
            family,
            params,
            unbounded,
        } => census(&family_spec("census", family, params), unbounded)?,
        Command::VerifyA136328 { max_n } => {
            let report = verify_a136328(max_n)?;
            out!("{report}");
            if !report.all_passed() {
                eprintln!("{} of {} rows failed", report.rows.len() - report.passed(), report.rows.len());
                return Ok(ExitCode::from(1));
            }
        }
        Command::Export { id, output } => {
            let portal = Store::open(&data_dir)?.load()?;
            let page = portal.pages.get(&id).with_context(|| format!("no page {id} in {}", data_dir.display()))?;
            let text = export_page(page);
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out!("{text}"),
            }
        }
        Command::Import { file } => import(&data_dir, &file)?,
        Command::Roster { file } => roster(&data_dir, &file)?,
        Command::Plan { pcts, total } => {
            let plan = plan_exercises(&parse_percentages(&pcts)?, total)?;
            outln!("{plan}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn serve(data_dir: PathBuf, port: u16) -> Result<()> {
    let mut config = Config::from_env()?;
    config.data_dir = data_dir;
    config.port = port;
    eprintln!("listening on 0.0.0.0:{port}, data in {}", config.data_dir.display());
    tokio::runtime::Runtime::new()?.block_on(acgt_service::serve(config))?;
    Ok(())
}

fn seed(data_dir: &Path, force: bool) -> Result<()> {
    let mut store = Store::open(data_dir)?;
    if !force && !store.load()?.pages.is_empty() {
        bail!("{} already holds pages; pass --force to overwrite the seed pages", data_dir.display());
    }
    let portal = Portal::seeded();
    store.save_all(&portal)?;
    outln!(
        "seeded {} pages and {} corpus terms into {}",
        portal.pages.len(),
        portal.corpus.len(),
        data_dir.display()
    );
    Ok(())
}

fn read_graph(file: &Path) -> Result<Graph> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    Graph::from_edge_list(&text).with_context(|| format!("parsing {}", file.display()))
}

fn wiener_of(file: &Path, polynomial: bool) -> Result<()> {
    let g = read_graph(file)?;
    if g.is_weighted() {
        if polynomial {
            bail!("the Hosoya–Wiener polynomial is defined for unweighted graphs only");
        }
        outln!("{}", format_rational(&weighted_wiener(&g)?));
    } else {
        outln!("{}", wiener(&g)?);
        if polynomial {
            outln!("{}", hosoya_wiener(&g)?);
        }
    }
    Ok(())
}

fn census(spec: &FamilySpec, unbounded: bool) -> Result<()> {
    let g = generate(spec)?;
    let options = if unbounded { CensusOptions::unbounded() } else { CensusOptions::default() };
    let classes = spanning_tree_census(&g, options)?;
    outln!("{:>5}  {:>12}  {:>6}  degrees", "class", "multiplicity", "wiener");
    for (i, c) in classes.iter().enumerate() {
        let mut degrees = c.tree.degrees();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let degrees: Vec<String> = degrees.iter().map(ToString::to_string).collect();
        outln!("{:>5}  {:>12}  {:>6}  {}", i + 1, c.multiplicity, c.wiener, degrees.join(","));
    }
    let total: acgt_core::BigInt = classes.iter().map(|c| &c.multiplicity).sum();
    outln!("total {} spanning trees in {} classes; matrix-tree count {}", total, classes.len(), spanning_tree_count(&g));
    Ok(())
}

fn import(data_dir: &Path, file: &Path) -> Result<()> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let page = import_page(&text).with_context(|| format!("parsing {}", file.display()))?;
    let mut store = Store::open(data_dir)?;
    let portal = store.load()?;
    let report = validate_page(&page, &portal.corpus, &portal.pages);
    if page.is_published() && !report.is_clean() {
        let findings: Vec<String> = report.findings.iter().map(ToString::to_string).collect();
        bail!("{} cannot be stored as published:\n  {}", page.id, findings.join("\n  "));
    }
    store.commit(vec![Document::page(&page)])?;
    outln!("imported {} ({} findings)", page.id, report.findings.len());
    Ok(())
}

fn roster(data_dir: &Path, file: &Path) -> Result<()> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let records = parse_roster(&text)?;
    if let Some(r) = records.iter().find(|r| !valid_student_id(&r.id)) {
        bail!("student id `{}` must be 1-64 letters, digits, `-` or `_`", r.id);
    }
    let ids: Vec<String> = records.iter().map(|r| r.id.clone()).collect();
    let mut store = Store::open(data_dir)?;
    let mut portal = store.load()?;
    let changes = portal.load_roster(records);
    let docs = ids
        .iter()
        .map(|id| Document::student(&portal.students[id]))
        .collect::<Result<Vec<_>, _>>()?;
    store.commit(docs)?;
    outln!("{:<12}  {:>5}  group", "student", "t");
    for id in &ids {
        let s = &portal.students[id];
        let t = s.t().map_or("-".to_string(), |t| t.to_string());
        let g = s.group().map_or("-".to_string(), |g| g.to_string());
        outln!("{id:<12}  {t:>5}  {g}");
    }
    for (id, c) in changes {
        let from = c.from.map_or("-".to_string(), |g| g.to_string());
        outln!("pending: {id} group {from} -> {} (confirm before use)", c.to);
    }
    Ok(())
}
