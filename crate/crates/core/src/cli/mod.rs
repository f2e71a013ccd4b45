//! Command-line front end: `solve`, `verify`, `demand`, `decompose` and
//! `corpus`.
//!
//! Exit codes: `0` found or verified, `1` input error, `2` certified not
//! found or verification failed.

pub mod corpus;
pub mod format;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::demand::{demand_set, verify_ce, verify_pe};
use crate::error::{Error, Result};
use crate::model::{Allocation, GPoint, PriceVector};
use crate::polytope::{
    enumerate_decompositions, minkowski_contains, nested_chain_point, padberg_check,
    vertex_sum_contains, Caps, Face,
};
use crate::pricing::{
    ce_for_covering, ce_price_at_point, covering_point, optimal_ce, CeResult, SolveOptions,
};

pub use corpus::{corpus, CORPUS_NAMES};
pub use format::{AllocPriceFile, Instance, InstanceFile, ResultFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;

/// Decompositions printed by `decompose` before truncating.
const LIST_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "quadprice",
    version,
    about = "Competitive equilibria with graphical valuations and quadratic prices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Instance JSON file.
    pub instance: Option<PathBuf>,
    /// Use a built-in instance instead of a file.
    #[arg(long, conflicts_with = "instance")]
    pub corpus: Option<String>,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Largest number of item types for exhaustive enumeration.
    #[arg(long, default_value_t = Caps::default().max_n)]
    pub max_n: usize,
    /// Largest number of agents for exhaustive enumeration.
    #[arg(long, default_value_t = Caps::default().max_m)]
    pub max_m: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let caps = Caps {
            max_n: self.max_n,
            max_m: self.max_m,
        };
        let default = Caps::default();
        if caps.max_n > default.max_n || caps.max_m > default.max_m {
            eprintln!("warning: raised enumeration caps; running time grows exponentially");
        }
        caps
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a revenue-optimal competitive equilibrium.
    Solve {
        #[command(flatten)]
        source: Source,
        /// Restrict to linear prices (every edge price zero).
        #[arg(long)]
        walrasian: bool,
        /// Solve only at this aggregate point (comma-separated coordinates).
        #[arg(long)]
        point: Option<String>,
        /// Worker threads for the point search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        caps: CapArgs,
        /// Print only the JSON result.
        #[arg(long)]
        json: bool,
    },
    /// Check an allocation and price for competitive equilibrium.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Allocation and price: a JSON file path or inline JSON.
        #[arg(long)]
        alloc: String,
        /// Also check the seller's revenue condition.
        #[arg(long)]
        pe: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Print demand sets at a price.
    Demand {
        #[command(flatten)]
        source: Source,
        /// 1-based agent; all agents when omitted.
        #[arg(long)]
        agent: Option<usize>,
        /// Comma-separated rational prices; zero when omitted.
        #[arg(long)]
        price: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Decompose an aggregate point into one vertex of P(G) per agent.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// Comma-separated coordinates; defaults to the instance point, or
        /// the nested-chain point of the supply.
        #[arg(long)]
        point: Option<String>,
        /// Number of parts; defaults to the number of agents.
        #[arg(long)]
        parts: Option<usize>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Print a built-in instance.
    Corpus {
        /// One of cutlery, cutlery-shifted, house, idp-k4.
        name: String,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code and standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => (EXIT_INPUT, format!("error: {e}\n")),
    }
}

fn load(source: &Source) -> Result<Instance> {
    match (&source.instance, &source.corpus) {
        (_, Some(name)) => corpus(name),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            InstanceFile::from_json(&text)?.resolve()
        }
        (None, None) => Err(Error::parse(
            "arguments",
            "give an instance file or --corpus",
        )),
    }
}

fn parse_point(inst: &Instance, s: &str) -> Result<GPoint> {
    let coords = format::parse_int_list(s, "point")?;
    if coords.len() != inst.graph.d() {
        return Err(Error::DimensionMismatch {
            what: "point",
            expected: inst.graph.d(),
            got: coords.len(),
        });
    }
    Ok(GPoint(coords))
}

fn execute(cmd: &Command) -> Result<(i32, String)> {
    match cmd {
        Command::Solve {
            source,
            walrasian,
            point,
            jobs,
            caps,
            json,
        } => {
            let inst = load(source)?;
            let opts = SolveOptions {
                caps: caps.caps(),
                walrasian: *walrasian || inst.mode.walrasian,
                jobs: (*jobs).max(1),
            };
            let point = point
                .as_deref()
                .map(|s| parse_point(&inst, s))
                .transpose()?;
            let res = solve(&inst, point, &opts)?;
            Ok(report_solve(&inst, &res, opts.walrasian, *json))
        }
        Command::Verify {
            source,
            alloc,
            pe,
            caps,
        } => {
            let inst = load(source)?;
            let text = if alloc.trim_start().starts_with('{') {
                alloc.clone()
            } else {
                std::fs::read_to_string(alloc).map_err(|e| Error::Io(format!("{alloc}: {e}")))?
            };
            let (allocation, price) = AllocPriceFile::from_json(&text)?.resolve(&inst.graph)?;
            verify(&inst, &allocation, &price, *pe, &caps.caps())
        }
        Command::Demand {
            source,
            agent,
            price,
            caps,
        } => {
            let inst = load(source)?;
            let p = match price {
                Some(s) => {
                    let entries = format::parse_rational_list(s, "price")?;
                    if entries.len() != inst.graph.d() {
                        return Err(Error::DimensionMismatch {
                            what: "price",
                            expected: inst.graph.d(),
                            got: entries.len(),
                        });
                    }
                    PriceVector::new(entries)
                }
                None => PriceVector::zero(inst.graph.d()),
            };
            let agents: Vec<usize> = match agent {
                Some(0) => return Err(Error::parse("--agent", "agents are numbered from 1")),
                Some(b) if *b > inst.m() => {
                    return Err(Error::parse("--agent", format!("only {} agents", inst.m())))
                }
                Some(b) => vec![b - 1],
                None => (0..inst.m()).collect(),
            };
            let caps = caps.caps();
            let mut out = String::new();
            for b in agents {
                let ds = demand_set(&inst.graph, b, &inst.valuations[b], &p, &caps)?;
                let names: Vec<_> = ds.bundles.iter().map(|&s| inst.bundle_name(s)).collect();
                writeln!(
                    out,
                    "agent {}: utility {} demands {}",
                    b + 1,
                    ds.utility,
                    names.join(" ")
                )
                .unwrap();
            }
            Ok((EXIT_OK, out))
        }
        Command::Decompose {
            source,
            point,
            parts,
            caps,
        } => {
            let inst = load(source)?;
            decompose(&inst, point.as_deref(), *parts, &caps.caps())
        }
        Command::Corpus { name } => {
            let inst = corpus(name)?;
            Ok((EXIT_OK, inst.to_file().to_json() + "\n"))
        }
    }
}

/// Runs the solver an instance asks for.
pub fn solve(inst: &Instance, point: Option<GPoint>, opts: &SolveOptions) -> Result<CeResult> {
    let (g, vs) = (&inst.graph, &inst.valuations);
    if inst.mode.covering {
        let a = match point {
            Some(a) => a,
            None => covering_point(g, vs, &inst.supply)?,
        };
        return ce_for_covering(g, vs, &inst.supply, &a, opts);
    }
    match point {
        Some(a) => ce_price_at_point(g, vs, &a, opts),
        None => optimal_ce(g, vs, &inst.supply, opts),
    }
}

fn report_solve(
    inst: &Instance,
    res: &CeResult,
    walrasian: bool,
    json_only: bool,
) -> (i32, String) {
    let json = serde_json::to_string(&ResultFile::from(res)).unwrap();
    let code = if res.is_found() {
        EXIT_OK
    } else {
        EXIT_NOT_FOUND
    };
    if json_only {
        return (code, json + "\n");
    }
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "status   {}", format::status_name(res.status)).unwrap();
    if let Some(p) = &res.point {
        writeln!(w, "point    {p}").unwrap();
    }
    match &res.solution {
        Some(sol) => {
            writeln!(w, "revenue  {}", sol.revenue).unwrap();
            let entries: Vec<_> = sol
                .price
                .entries()
                .iter()
                .enumerate()
                .map(|(c, x)| format!("{}:{x}", coord_name(inst, c)))
                .collect();
            writeln!(w, "price    {}", entries.join(" ")).unwrap();
            for (b, &s) in sol.allocation.bundles.iter().enumerate() {
                writeln!(w, "agent {:<2} {}", b + 1, inst.bundle_name(s)).unwrap();
            }
        }
        None if walrasian => writeln!(w, "no Walrasian equilibrium").unwrap(),
        None => writeln!(w, "no competitive equilibrium").unwrap(),
    }
    out.push_str(&json);
    out.push('\n');
    (code, out)
}

fn coord_name(inst: &Instance, c: usize) -> String {
    if c < inst.graph.n() {
        inst.item_name(c)
    } else {
        let (i, j) = inst.graph.edges()[c - inst.graph.n()];
        format!("{}-{}", inst.item_name(i), inst.item_name(j))
    }
}

fn verify(
    inst: &Instance,
    alloc: &Allocation,
    p: &PriceVector,
    pe: bool,
    caps: &Caps,
) -> Result<(i32, String)> {
    let (g, vs) = (&inst.graph, &inst.valuations);
    let mut out = String::new();
    let (ce, seller_ok) = if pe {
        let v = verify_pe(g, vs, alloc, p, &inst.supply, caps)?;
        let ok = v.seller_satisfied();
        writeln!(
            out,
            "seller: revenue {} vs best {} -> {}",
            v.revenue,
            v.seller.revenue,
            if ok { "pass" } else { "fail" }
        )
        .unwrap();
        (v.ce, ok)
    } else {
        (verify_ce(g, vs, alloc, p, caps)?, true)
    };
    for c in &ce.agents {
        match c.better_bundle() {
            None => writeln!(
                out,
                "agent {}: {} utility {} -> pass",
                c.agent + 1,
                inst.bundle_name(c.bundle),
                c.utility
            ),
            Some(better) => writeln!(
                out,
                "agent {}: {} utility {} -> fail, prefers {} with utility {}",
                c.agent + 1,
                inst.bundle_name(c.bundle),
                c.utility,
                inst.bundle_name(better),
                c.demand.utility
            ),
        }
        .unwrap();
    }
    let ce_ok = ce.holds();
    writeln!(out, "CE {}", if ce_ok { "pass" } else { "fail" }).unwrap();
    if pe {
        writeln!(
            out,
            "PE {}",
            if ce_ok && seller_ok { "pass" } else { "fail" }
        )
        .unwrap();
    }
    let code = if ce_ok && seller_ok {
        EXIT_OK
    } else {
        EXIT_NOT_FOUND
    };
    Ok((code, out))
}

fn decompose(
    inst: &Instance,
    point: Option<&str>,
    parts: Option<usize>,
    caps: &Caps,
) -> Result<(i32, String)> {
    let g = &inst.graph;
    let m = parts.unwrap_or(inst.m());
    let mut out = String::new();
    let a = match (point, &inst.point) {
        (Some(s), _) => parse_point(inst, s)?,
        (None, Some(a)) => a.clone(),
        (None, None) => {
            let (a, dec) = nested_chain_point(g, &inst.supply, m)?;
            let names: Vec<_> = dec
                .parts
                .iter()
                .map(|p| format!("{}x{}", p.multiplicity, inst.bundle_name(p.clique)))
                .collect();
            writeln!(out, "nested chain: {}", names.join(" + ")).unwrap();
            a
        }
    };
    writeln!(out, "point {a}").unwrap();
    if g.is_complete() {
        let violations = padberg_check(g, &a, m as i64)?;
        if violations.is_empty() {
            writeln!(out, "relaxation: all inequalities hold").unwrap();
        }
        for v in violations {
            let idx: Vec<_> = v.indices.iter().map(|&i| inst.item_name(i)).collect();
            writeln!(
                out,
                "relaxation: {:?} violated at {} (lhs {})",
                v.inequality,
                idx.join(","),
                v.lhs
            )
            .unwrap();
        }
    }
    if let Some(faces) = &inst.faces {
        let faces = faces
            .iter()
            .map(|f| Face::from_bundles(g, f))
            .collect::<Result<Vec<_>>>()?;
        writeln!(
            out,
            "minkowski sum contains point: {}",
            minkowski_contains(g, &faces, &a)?
        )
        .unwrap();
        match vertex_sum_contains(g, &faces, &a)? {
            Some(picks) => {
                let names: Vec<_> = picks
                    .iter()
                    .zip(&faces)
                    .map(|(&k, f)| inst.bundle_name(f.bundles(g)[k]))
                    .collect();
                writeln!(out, "vertex sum: {}", names.join(" + ")).unwrap();
            }
            None => writeln!(out, "vertex sum: absent").unwrap(),
        }
    }
    let mut count = 0usize;
    for dec in enumerate_decompositions(g, &a, m, caps)? {
        if count < LIST_LIMIT {
            let names: Vec<_> = dec.iter().map(|&s| inst.bundle_name(s)).collect();
            writeln!(out, "decomposition: {}", names.join(" + ")).unwrap();
        }
        count += 1;
    }
    if count > LIST_LIMIT {
        writeln!(out, "... {} more", count - LIST_LIMIT).unwrap();
    }
    writeln!(out, "{count} decompositions into {m} parts").unwrap();
    let code = if count > 0 { EXIT_OK } else { EXIT_NOT_FOUND };
    Ok((code, out))
}
