//! The `hivering` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::excavation::{
    assemble_top, excavate_in_order, fill, verify_star, ExcavationOrder, HivePair, TetPoint, TraceEvent,
};
use crate::hive::{count_hives, enumerate_hives, BoundarySpec, Hive};
use crate::honeycomb::{hive_to_honeycomb, render_svg, SvgOptions};
use crate::laurent::symbolic_excavate;
use crate::ring::{pieri_expand, product_expand, RingElement};
use crate::speyer::{build_scatter_graph, closed_form};
use crate::weight::Weight;

#[derive(Parser, Debug)]
#[command(name = "hivering", version, about = "Littlewood-Richardson coefficients via hives and the octahedron recurrence")]
pub struct Cli {
    /// Worker threads for enumeration (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    Layer,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the hives with boundary (lambda, mu, nu).
    Lrcoef {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        nu: Weight,
    },
    /// Expand the product of two basis elements.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the hives with boundary (lambda, mu, nu).
    Hives {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        nu: Weight,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Product with the i-th fundamental weight, from the Pieri formula.
    Pieri {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Excavate a pair of top hives (or, with --inverse, fill a bottom pair).
    Excavate {
        /// Hive JSON for the face {w=0} (bottom face {x=0} with --inverse).
        #[arg(long)]
        left: PathBuf,
        /// Hive JSON for the face {z=0} (bottom face {y=0} with --inverse).
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        inverse: bool,
        /// Include the list of removed pieces in the output.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "layer")]
        order: OrderKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check associativity for (lambda, mu, nu, pi) and the excavation bijection.
    CheckAssoc {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        nu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        pi: Weight,
    },
    /// Convert a hive (JSON file) to its honeycomb.
    Honeycomb {
        #[arg(long)]
        hive: PathBuf,
        /// Write an SVG drawing to this path ("-" for standard output)
        /// instead of printing JSON.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Matching closed form of one bottom entry.
    Speyer {
        #[arg(long)]
        n: usize,
        /// Bottom point as x,y,z,w.
        #[arg(long)]
        entry: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Symbolic bottom labels under the rational octahedron recurrence.
    Laurent {
        #[arg(long)]
        n: usize,
        /// Allow sizes beyond the default limit.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_hive(path: &Path) -> Result<Hive> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_point(s: &str) -> Result<TetPoint> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Malformed(format!("bad coordinate {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match parts.as_slice() {
        [x, y, z, w] => Ok(TetPoint::new(*x, *y, *z, *w)),
        _ => Err(Error::Malformed(format!("expected four coordinates, got {s:?}"))),
    }
}

fn print_ring(out: &mut dyn Write, e: &RingElement, format: Format) -> Result<()> {
    match format {
        Format::Text => write!(out, "{e}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(e)?)?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Lrcoef { lambda, mu, nu } => {
            writeln!(out, "{}", count_hives(&BoundarySpec::new(lambda, mu, nu))?)?;
        }
        Command::Expand { lambda, mu, format } => print_ring(out, &product_expand(&lambda, &mu)?, format)?,
        Command::Pieri { lambda, i, format } => print_ring(out, &pieri_expand(&lambda, i)?, format)?,
        Command::Hives { lambda, mu, nu, format } => {
            let hives = enumerate_hives(&BoundarySpec::new(lambda, mu, nu))?;
            match format {
                Format::Text => {
                    for (i, h) in hives.iter().enumerate() {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{h}")?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&hives)?)?,
            }
        }
        Command::Excavate { left, right, inverse, trace, order, seed } => {
            let (l, r) = (read_hive(&left)?, read_hive(&right)?);
            let order = match order {
                OrderKind::Layer => ExcavationOrder::Layer,
                OrderKind::Random => ExcavationOrder::Random(seed),
            };
            let mut events: Vec<TraceEvent<i64>> = Vec::new();
            let result = if inverse {
                let shared = Weight::new(l.south_differences())?;
                fill(&HivePair { left: l, right: r, shared })?
            } else {
                let t = assemble_top(&l, &r)?;
                excavate_in_order(&t, order, trace.then_some(&mut events))?
            };
            if trace && !inverse {
                let doc = serde_json::json!({ "pair": result, "trace": events });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
            }
        }
        Command::CheckAssoc { lambda, mu, nu, pi } => {
            let r = verify_star(&lambda, &mu, &nu, &pi)?;
            let ok = r.lhs == r.rhs && r.bijection_ok;
            writeln!(out, "lhs={} rhs={} bijection={}", r.lhs, r.rhs, if r.bijection_ok { "ok" } else { "failed" })?;
            if !ok {
                return Ok(1);
            }
        }
        Command::Honeycomb { hive, svg } => {
            let hc = hive_to_honeycomb(&read_hive(&hive)?)?;
            match svg {
                Some(path) if path.as_os_str() == "-" => write!(out, "{}", render_svg(&hc, &SvgOptions::default()))?,
                Some(path) => std::fs::write(path, render_svg(&hc, &SvgOptions::default()))?,
                None => writeln!(out, "{}", serde_json::to_string_pretty(&hc)?)?,
            }
        }
        Command::Speyer { n, entry, format } => {
            let g = build_scatter_graph(n)?;
            let b = parse_point(&entry)?;
            let cf = closed_form(&g, b)?;
            match format {
                Format::Text => {
                    writeln!(out, "matchings: {}", cf.matchings)?;
                    writeln!(out, "laurent: {}", cf.laurent)?;
                    writeln!(out, "tropical: {}", cf.tropical)?;
                }
                Format::Json => {
                    let doc = serde_json::json!({
                        "entry": b,
                        "matchings": cf.matchings,
                        "laurent": cf.laurent.to_json(),
                        "tropical": cf.tropical.to_json(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
            }
        }
        Command::Laurent { n, allow_large, format } => {
            let s = symbolic_excavate(n, allow_large)?;
            match format {
                Format::Text => {
                    for (p, poly) in &s.bottom {
                        writeln!(out, "{p}: {poly}")?;
                    }
                }
                Format::Json => {
                    let list: Vec<_> =
                        s.bottom.iter().map(|(p, poly)| serde_json::json!({ "p": p, "poly": poly.to_json() })).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?;
                }
            }
        }
    }
    Ok(0)
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
