mod render;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use mvlab::covering::{c_star, covering_number};
use mvlab::harness::{verify, FormulaId, Verdict, VerificationReport, VerifyOptions};
use mvlab::hypergraph::{
    build_H_nk, build_complete_uniform, build_disjoint_edges, build_generalized_triangle,
};
use mvlab::transversal::transversal_number;
use mvlab::turan::{ex_uniform, Pattern};
use mvlab::{
    Budget, Error, FamilyGraph, FamilyKind, Hypergraph, Status, Value, VisibilityGraph,
    VisibilityVariant,
};
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use render::{render, scalar, table, Format};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERVAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mvlab", version, about = "Mutual-visibility in Kneser, bipartite Kneser and Johnson graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Node limit per search.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    max_nodes: u64,
    /// Wall-clock limit per search, in seconds.
    #[arg(long, default_value_t = 60.0, global = true)]
    time_limit: f64,
}

impl Common {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            time_limit: Duration::from_secs_f64(self.time_limit.max(0.0)),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a visibility parameter by definitional search.
    Compute {
        /// e.g. `kneser:n=5,k=2`, `bipartite-kneser:n=7,k=2`, `johnson:n=5,k=2`.
        #[arg(long)]
        family: FamilyGraph,
        /// mu, mu-total, mu-dual, mu-outer or gp.
        #[arg(long, value_parser = parse_param)]
        param: VisibilityVariant,
        #[command(flatten)]
        common: Common,
    },
    /// Check closed formulas against independent oracles.
    Verify {
        /// A formula tag, or `all`.
        #[arg(long)]
        formula: String,
        /// `5` or an inclusive range `4..6`.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// `2` or an inclusive range; ignored by formulas of `n` alone.
        #[arg(long, value_parser = parse_range, default_value = "2")]
        k: (usize, usize),
        /// Graph family for `sandwich-dual-outer`.
        #[arg(long)]
        family: Option<FamilyKind>,
        /// Seed for sampled sweeps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sets per sampled sweep.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Print a fixed-width summary instead of the report array.
        #[arg(long)]
        summary: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build one of the extremal hypergraphs in the text format.
    Construct {
        /// H_nk, disjoint, complete or triangle.
        #[arg(long)]
        what: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// Number of edges for `disjoint`.
        #[arg(long)]
        count: Option<usize>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Turán number of a suspension pattern.
    Turan {
        /// `c4sus:k=3` or `k4sus:k=2`.
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        n: usize,
        /// Write the extremal witness here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Covering number C(n, k, t), or C*(n, k) with `--cstar`.
    Covering {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, required_unless_present = "cstar")]
        t: Option<usize>,
        /// Fewest k-sets with transversal number at least 2k.
        #[arg(long, conflicts_with = "t")]
        cstar: bool,
        /// Write the witness hypergraph here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Transversal number of a hypergraph file.
    Tau {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// All five parameters of each graph in a range; asserts nothing.
    Explore {
        /// kneser, bipartite-kneser or johnson.
        #[arg(long)]
        family: FamilyKind,
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        k: (usize, usize),
        #[command(flatten)]
        common: Common,
    },
}

fn parse_param(s: &str) -> Result<VisibilityVariant, String> {
    Ok(match s {
        "mu" | "mutual" => VisibilityVariant::Mutual,
        "mu-total" | "total" => VisibilityVariant::Total,
        "mu-dual" | "dual" => VisibilityVariant::Dual,
        "mu-outer" | "outer" => VisibilityVariant::Outer,
        "gp" | "general-position" => VisibilityVariant::GeneralPosition,
        _ => return Err(format!("unknown parameter `{s}`")),
    })
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected `N` or `A..B`, got `{s}`");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Failure that ends the command with a JSON error on stderr.
struct Failure {
    code: u8,
    body: Json,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut body = json!({ "error": kind_of(&e), "message": e.to_string() });
        match &e {
            Error::Constraint { constraint, .. } => body["constraint"] = json!(constraint),
            Error::Precondition { clause, .. } => body["clause"] = json!(clause),
            _ => {}
        }
        Failure {
            code: EXIT_USAGE,
            body,
        }
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::Constraint { .. } => "constraint",
        Error::Domain(_) => "domain",
        Error::Precondition { .. } => "precondition",
        Error::Parse(_) => "parse",
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        body: json!({ "error": "usage", "message": message.into() }),
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        body: json!({ "error": "io", "message": format!("{}: {e}", path.display()) }),
    }
}

struct Output {
    text: String,
    code: u8,
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Exact => 0,
        Status::Incomplete => EXIT_INTERVAL,
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn hypergraph_json(h: &Hypergraph) -> Json {
    json!({ "n": h.n(), "k": h.k(), "edge_count": h.edge_count(), "edges": h.edges() })
}

fn compute_one(g: FamilyGraph, variant: VisibilityVariant, budget: Budget) -> Result<Json, Failure> {
    let c = VisibilityGraph::new(g)?.max_visibility_number(variant, budget)?;
    let value = match c.status {
        Status::Exact => Value::Exact(c.value as u64),
        Status::Incomplete => Value::from_bounds(c.value as u64, g.vertex_count() as u64),
    };
    let mut out = serde_json::to_value(&c).expect("certificates serialize");
    out["value"] = serde_json::to_value(value).expect("values serialize");
    Ok(out)
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Compute {
            family,
            param,
            common,
        } => {
            let out = compute_one(family, param, common.budget())?;
            let code = if out["status"] == "exact" { 0 } else { EXIT_INTERVAL };
            Ok(Output {
                text: render(&out, common.format),
                code,
            })
        }
        Command::Verify {
            formula,
            n,
            k,
            family,
            seed,
            samples,
            summary,
            common,
        } => {
            let formulas: Vec<FormulaId> = if formula == "all" {
                FormulaId::ALL.to_vec()
            } else {
                vec![formula.parse()?]
            };
            let opts = VerifyOptions {
                budget: common.budget(),
                seed,
                samples,
                family,
            };
            let mut jobs = Vec::new();
            for f in formulas {
                for nn in n.0..=n.1 {
                    if f.ignores_k() {
                        jobs.push((f, nn, k.0));
                    } else {
                        jobs.extend((k.0..=k.1).map(|kk| (f, nn, kk)));
                    }
                }
            }
            let single = jobs.len() == 1;
            let rows: Vec<(Result<VerificationReport, Error>, f64)> = jobs
                .par_iter()
                .map(|&(f, nn, kk)| {
                    let start = Instant::now();
                    let r = verify(f, nn, kk, &opts);
                    (r, start.elapsed().as_secs_f64())
                })
                .collect();
            let mut reports = Vec::new();
            let mut seconds = Vec::new();
            for (r, s) in rows {
                match r {
                    Ok(r) => {
                        reports.push(r);
                        seconds.push(s);
                    }
                    // out-of-range points of a sweep are dropped; a single query reports them
                    Err(Error::Precondition { .. } | Error::Constraint { .. }) if !single => {}
                    Err(e) => return Err(e.into()),
                }
            }
            if reports.is_empty() {
                return Err(usage("no parameter in the requested range satisfies the formula's preconditions"));
            }
            let code = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                EXIT_FAIL
            } else if reports.iter().any(|r| r.verdict == Verdict::Skipped) {
                EXIT_INTERVAL
            } else {
                0
            };
            let text = if summary {
                summary_table(&reports, &seconds)
            } else {
                render(
                    &serde_json::to_value(&reports).expect("reports serialize"),
                    common.format,
                )
            };
            Ok(Output { text, code })
        }
        Command::Construct {
            what,
            n,
            k,
            count,
            out,
            common,
        } => {
            let need_n = || n.ok_or_else(|| usage(format!("`--n` is required for {what}")));
            let h = match what.as_str() {
                "H_nk" | "h_nk" | "hnk" => build_H_nk(need_n()?, k)?,
                "disjoint" => build_disjoint_edges(
                    need_n()?,
                    k,
                    count.ok_or_else(|| usage("`--count` is required for disjoint"))?,
                )?,
                "complete" => build_complete_uniform(need_n()?, k)?,
                "triangle" => {
                    let h = build_generalized_triangle(k)?;
                    match n {
                        Some(n) => h.with_ground(n)?,
                        None => h,
                    }
                }
                other => {
                    return Err(usage(format!(
                        "unknown construction `{other}`; expected H_nk, disjoint, complete or triangle"
                    )))
                }
            };
            emit_hypergraph(&h, out, common.format)
        }
        Command::Turan {
            pattern,
            n,
            out,
            common,
        } => {
            let r = ex_uniform(n, pattern.k(), &pattern, common.budget())?;
            if let Some(path) = &out {
                write_file(path, &r.extremal_witness.to_text())?;
            }
            let json = serde_json::to_value(&r).expect("results serialize");
            Ok(Output {
                text: render(&json, common.format),
                code: status_code(r.status),
            })
        }
        Command::Covering {
            n,
            k,
            t,
            cstar,
            out,
            common,
        } => {
            let budget = common.budget();
            let (json, status, text) = if cstar {
                let m = c_star(n, k, budget)?;
                let mut json = serde_json::to_value(&m).expect("results serialize");
                json["value"] = serde_json::to_value(m.value()).expect("values serialize");
                (json, m.status, m.witness.to_text())
            } else {
                let t = t.ok_or_else(|| usage("`--t` or `--cstar` is required"))?;
                let c = covering_number(n, k, t, budget)?;
                let mut json = serde_json::to_value(&c).expect("results serialize");
                json["value"] = serde_json::to_value(c.value()).expect("values serialize");
                let h = Hypergraph::new(n, k, c.blocks.clone())?;
                (json, c.status, h.to_text())
            };
            if let Some(path) = &out {
                write_file(path, &text)?;
            }
            Ok(Output {
                text: render(&json, common.format),
                code: status_code(status),
            })
        }
        Command::Tau { input, common } => {
            let text = fs::read_to_string(&input).map_err(|e| io_failure(&input, e))?;
            let h = Hypergraph::parse_text(&text)?;
            let c = transversal_number(&h);
            let json = json!({
                "n": h.n(),
                "k": h.k(),
                "edge_count": h.edge_count(),
                "tau": c.tau,
                "transversal": c.transversal,
                "optimal": c.optimal,
            });
            Ok(Output {
                text: render(&json, common.format),
                code: 0,
            })
        }
        Command::Explore {
            family,
            n,
            k,
            common,
        } => {
            let budget = common.budget();
            let mut graphs = Vec::new();
            for nn in n.0..=n.1 {
                for kk in k.0..=k.1 {
                    if let Ok(g) = FamilyGraph::new(family, nn, kk) {
                        graphs.push(g);
                    }
                }
            }
            if graphs.is_empty() {
                return Err(usage("no graph of this family in the requested range"));
            }
            let rows: Vec<Result<Json, Failure>> = graphs
                .par_iter()
                .map(|&g| {
                    let mut row = json!({ "family": g, "vertices": g.vertex_count() });
                    for variant in VisibilityVariant::ALL {
                        let c = compute_one(g, variant, budget)?;
                        row[variant.as_str()] = c["value"].clone();
                    }
                    Ok(row)
                })
                .collect();
            let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
            let interval = rows
                .iter()
                .any(|r| VisibilityVariant::ALL.iter().any(|v| r[v.as_str()].is_object()));
            Ok(Output {
                text: render(&Json::Array(rows), common.format),
                code: if interval { EXIT_INTERVAL } else { 0 },
            })
        }
    }
}

fn emit_hypergraph(h: &Hypergraph, out: Option<PathBuf>, format: Format) -> Result<Output, Failure> {
    let text = match out {
        Some(path) => {
            write_file(&path, &h.to_text())?;
            render(&hypergraph_json(h), format)
        }
        None => h.to_text(),
    };
    Ok(Output { text, code: 0 })
}

fn summary_table(reports: &[VerificationReport], seconds: &[f64]) -> String {
    let header: Vec<String> = ["formula", "params", "formula value", "oracle value", "verdict", "seconds"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let show = |v: &Option<Value>| {
        v.map(|v| scalar(&serde_json::to_value(v).expect("values serialize")))
            .unwrap_or_else(|| "-".into())
    };
    let rows: Vec<Vec<String>> = reports
        .iter()
        .zip(seconds)
        .map(|(r, s)| {
            let mut params = format!("n={},k={}", r.params.n, r.params.k);
            if let Some(f) = r.params.family {
                params = format!("{f}:{params}");
            }
            vec![
                r.formula.to_string(),
                params,
                show(&r.formula_value),
                show(&r.oracle_value),
                serde_json::to_value(r.verdict)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                format!("{s:.3}"),
            ]
        })
        .collect();
    table(&header, &rows)
}

fn configure_threads() {
    if let Some(n) = std::env::var("MVLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let body = json!({ "error": "usage", "message": e.to_string().trim_end() });
            eprintln!("{body}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
