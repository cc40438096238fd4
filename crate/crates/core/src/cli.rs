//! The `plancon` command line.
//!
//! Exit status: 0 for yes / valid, 1 for no / invalid, 2 for errors
//! (including an exceeded subset cap).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::io::{parse_edge_list, write_edge_list};
use crate::graph::{families, Graph, Instance, MergeClasses};
use crate::oracle::{solve_exact_with, OracleConfig, Refutation, SolveResult, DEFAULT_CAP};
use crate::pipeline::{find_apex_set, find_irrelevant_edge, solve_with, Irrelevance, ReductionStep, SolveOptions};
use crate::planarity::{test_planarity, KuratowskiKind, PlanarityCertificate};
use crate::walls::{generate_instance, Family, Pos, Wall};

#[derive(Debug, Parser)]
#[command(name = "plancon", version, about = "Make a graph planar with at most k edge contractions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the reduction pipeline and print a certificate.
    Solve(SolveArgs),
    /// Exhaustive search only.
    Oracle(OracleArgs),
    /// Apply irrelevant-edge contractions and write the reduced graph.
    Reduce(ReduceArgs),
    /// Write a generated instance as an edge list.
    Gen(GenArgs),
    /// Check a solver or wall certificate against a graph.
    Verify(VerifyArgs),
    /// Print a planar embedding, or a Kuratowski subdivision.
    Embed(Io),
}

#[derive(Debug, Args)]
pub struct Io {
    /// Edge-list file; standard input when absent or `-`.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent or `-`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Contraction budget.
    #[arg(short, long)]
    pub k: usize,
    /// Maximum number of edge subsets the exhaustive search may examine.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker threads for the exhaustive search.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl SearchArgs {
    fn oracle(&self) -> OracleConfig {
        OracleConfig { cap: self.cap, jobs: self.jobs }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub io: Io,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Keep yes-certificates relative to the reduced graph instead of
    /// re-solving the original graph when they do not lift.
    #[arg(long)]
    pub no_fallback: bool,
    /// Write per-iteration statistics as CSV.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub io: Io,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(short, long)]
    pub k: usize,
    /// Write per-iteration statistics as CSV.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Gr,
    Gstar,
    GstarMinor,
    K5sub,
    Wall,
    WallPlusApex,
    Random,
    Grid,
    Petersen,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    /// Apex attachments: lists of `row,col` positions, lists separated by `;`.
    #[arg(long)]
    pub attach: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub rows: Option<u32>,
    #[arg(long)]
    pub cols: Option<u32>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge-list file of the graph the certificate refers to.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Certificate file (solver output or wall certificate).
    #[arg(short, long)]
    pub cert: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn write_output(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::write(p, text)?,
        _ => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_stats(path: &Option<PathBuf>, steps: &[ReductionStep]) -> Result<()> {
    if let Some(p) = path {
        let mut csv = String::from("iteration,vertices,wall_height\n");
        for s in steps {
            writeln!(csv, "{},{},{}", s.iteration, s.vertices, s.wall_height).unwrap();
        }
        std::fs::write(p, csv)?;
    }
    Ok(())
}

fn answer_code(r: &SolveResult) -> i32 {
    if r.is_yes() {
        0
    } else {
        1
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve(a) => {
            let g = parse_edge_list(&read_input(&a.io.input)?)?;
            let opts = SolveOptions { oracle: a.search.oracle(), fallback: !a.no_fallback };
            let (result, trace) = solve_with(&Instance::new(g, a.search.k), &opts)?;
            write_stats(&a.stats, &trace.steps)?;
            let cert = Certificate::from_solve(a.search.k, result, &trace);
            write_output(&a.io.output, &cert.to_text(), out)?;
            Ok(answer_code(&cert.result))
        }
        Command::Oracle(a) => {
            let g = parse_edge_list(&read_input(&a.io.input)?)?;
            let result = solve_exact_with(&Instance::new(g, a.search.k), &a.search.oracle())?;
            let cert = Certificate::from_result(a.search.k, result);
            write_output(&a.io.output, &cert.to_text(), out)?;
            Ok(answer_code(&cert.result))
        }
        Command::Reduce(a) => reduce(a, out),
        Command::Gen(a) => {
            let g = generate(a)?;
            write_output(&a.output, &write_edge_list(&g), out)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let g = parse_edge_list(&read_input(&a.input)?)?;
            let text = std::fs::read_to_string(&a.cert)?;
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            let valid = if first.is_some_and(|l| l.starts_with("height")) {
                Wall::parse(&text, Arc::new(g))?.validate()
            } else {
                Certificate::parse(&text)?.verify(&g)
            };
            writeln!(out, "{}", if valid { "valid" } else { "invalid" })?;
            Ok(if valid { 0 } else { 1 })
        }
        Command::Embed(io) => {
            let g = parse_edge_list(&read_input(&io.input)?)?;
            match test_planarity(&g) {
                PlanarityCertificate::Planar(emb) => {
                    write_output(&io.output, &emb.to_text(), out)?;
                    Ok(0)
                }
                PlanarityCertificate::NonPlanar(ks) => {
                    let mut text = String::new();
                    let kind = match ks.kind {
                        KuratowskiKind::K5 => "K5",
                        KuratowskiKind::K33 => "K33",
                    };
                    writeln!(text, "kuratowski: {kind}").unwrap();
                    let branch: Vec<String> = ks.branch_vertices.iter().map(|v| v.to_string()).collect();
                    writeln!(text, "branch: {}", branch.join(" ")).unwrap();
                    for p in &ks.paths {
                        let p: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                        writeln!(text, "path: {}", p.join(" ")).unwrap();
                    }
                    write_output(&io.output, &text, out)?;
                    Ok(1)
                }
            }
        }
    }
}

/// Contracts irrelevant edges until none is found. Writes the reduced
/// graph preceded by `# trace:` comment lines, or a no-certificate when the
/// instance is refuted along the way.
fn reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<i32> {
    let g = parse_edge_list(&read_input(&a.io.input)?)?;
    let Some(apex) = find_apex_set(&g, a.k) else {
        let cert = Certificate::from_result(a.k, SolveResult::No(Refutation::NoApexSet { budget: a.k }));
        write_output(&a.io.output, &cert.to_text(), out)?;
        return Ok(1);
    };
    let mut cur = g.clone();
    let mut classes = MergeClasses::new();
    let mut trace = Vec::new();
    let mut steps = Vec::new();
    loop {
        let iteration = steps.len();
        match find_irrelevant_edge(&cur, &apex, a.k, None)? {
            Irrelevance::Edge { edge, wall_height, .. } => {
                steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height });
                cur = cur.contract_edge(edge)?;
                classes.union(edge.u, edge.v);
                trace.push(edge);
            }
            Irrelevance::Refuted(cert) => {
                steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height: 0 });
                write_stats(&a.stats, &steps)?;
                let mut c = Certificate::from_result(a.k, SolveResult::No(Refutation::Type1(cert)));
                c.apex = Some(apex);
                c.trace = trace;
                write_output(&a.io.output, &c.to_text(), out)?;
                return Ok(1);
            }
            Irrelevance::NoWall => {
                steps.push(ReductionStep { iteration, vertices: cur.n(), wall_height: 0 });
                break;
            }
        }
    }
    write_stats(&a.stats, &steps)?;
    let mut text = String::new();
    for e in &trace {
        writeln!(text, "# trace: {e}").unwrap();
    }
    text.push_str(&write_edge_list(&cur));
    write_output(&a.io.output, &text, out)?;
    Ok(0)
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required for this family")))
}

fn parse_attachments(s: &str) -> Result<Vec<Vec<Pos>>> {
    s.split(';')
        .filter(|l| !l.trim().is_empty())
        .map(|list| {
            list.split_whitespace()
                .map(|p| {
                    let (r, c) = p.split_once(',').ok_or_else(|| Error::InvalidParameter(format!("bad position `{p}`")))?;
                    let num = |x: &str| x.parse().map_err(|_| Error::InvalidParameter(format!("bad position `{p}`")));
                    Ok(Pos::new(num(r)?, num(c)?))
                })
                .collect()
        })
        .collect()
}

fn generate(a: &GenArgs) -> Result<Graph> {
    let family = match a.family {
        FamilyName::Gr => Family::Gr { r: need(a.r, "r")? },
        FamilyName::Gstar => Family::GStar { p: need(a.p, "p")? },
        FamilyName::GstarMinor => Family::GStarMinor { p: need(a.p, "p")? },
        FamilyName::K5sub => Family::SubdividedK5 { p: need(a.p, "p")? },
        FamilyName::Wall => Family::Wall { height: need(a.height, "height")? },
        FamilyName::WallPlusApex => Family::WallPlusApex {
            height: need(a.height, "height")?,
            attachments: parse_attachments(a.attach.as_deref().unwrap_or(""))?,
        },
        FamilyName::Random => Family::Random { n: need(a.n, "n")?, m: need(a.m, "m")?, seed: a.seed },
        FamilyName::Grid => return Ok(families::grid(need(a.rows, "rows")?, need(a.cols, "cols")?)),
        FamilyName::Petersen => return Ok(families::petersen()),
    };
    generate_instance(&family)
}
