use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use borsuk_core::cuts::{cut, verify_partition, PartitionPlan};
use borsuk_core::discrete::{borsuk_discrete_exact, borsuk_discrete_tree, DiscretePartition};
use borsuk_core::io::{self, GraphFile};
use borsuk_core::monotone::{h_profile, is_convex_monotone, is_monotone, monotone_partition};
use borsuk_core::tree::borsuk_continuous_tree;
use borsuk_core::{svg, AbstractGraph, ContinuousPoint, Execution, GeometricGraph, Line2, Metric, Tolerance};
use borsuk_prover::{run_prover, ProverConfig, Strictness};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "borsuk", version, about = "Diameters and Borsuk partitions of geometric graphs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a graph file and check its invariants.
    Validate { graph: PathBuf },
    /// Discrete (hop) diameter, or the continuous diameter with a witness pair.
    Diameter {
        graph: PathBuf,
        #[arg(long)]
        continuous: bool,
    },
    /// Cut a geometric graph by the line a·x + b·y = c.
    Cut {
        graph: PathBuf,
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
        line: Line2,
        /// Write the minus side here.
        #[arg(long)]
        minus: Option<PathBuf>,
        /// Write the plus side here.
        #[arg(long)]
        plus: Option<PathBuf>,
    },
    /// Apply a partition plan and check that every part has smaller diameter.
    Verify { graph: PathBuf, plan: PathBuf },
    /// Exact discrete Borsuk number by exhaustive search.
    BorsukDiscrete { graph: PathBuf },
    /// Discrete Borsuk number of a tree by the center-degree formula.
    BorsukTree { graph: PathBuf },
    /// Continuous Borsuk number of a geometric tree with a witness plan.
    BorsukCtree {
        graph: PathBuf,
        /// Write the witness plan here.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Monotonicity tests and the h-profile along perpendicular cuts.
    Monotone {
        graph: PathBuf,
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
        line: Line2,
        /// Slice positions along the line direction.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<f64>,
    },
    /// Perpendicular cuts stabbing every diametral set of a monotone graph.
    PartitionMonotone {
        graph: PathBuf,
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
        line: Line2,
        /// Write the plan here.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Exact case analysis for two disjoint diametral paths.
    ProveDisjoint {
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Require slack 1/1000 on the strict constraints.
        #[arg(long, conflicts_with = "closed")]
        slack: bool,
        /// Treat every constraint as closed.
        #[arg(long)]
        closed: bool,
        /// One JSON line per feasible case.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Only cases with smaller id.
        #[arg(long, default_value_t = borsuk_prover::CASE_COUNT)]
        limit: u32,
    },
    /// SVG drawing of a graph and optionally a plan.
    Render {
        graph: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn parse_line(s: &str) -> Result<Line2, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = v[..] else {
        return Err("expected a,b,c".into());
    };
    Line2::new(a, b, c).map_err(|e| e.to_string())
}

/// A report in both output forms.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }
}

type Failure = String;

fn num(x: f64) -> String {
    format!("{x:.12}")
}

fn load(path: &Path, tol: &Tolerance) -> Result<GraphFile, Failure> {
    io::load_graph(path, tol).map_err(|e| format!("{}: {e}", path.display()))
}

fn geometric(path: &Path, tol: &Tolerance) -> Result<GeometricGraph, Failure> {
    match load(path, tol)? {
        GraphFile::Geometric { graph, .. } => Ok(graph),
        GraphFile::Abstract { .. } => Err(format!("{}: a geometric graph is required", path.display())),
    }
}

fn point_json(g: &GeometricGraph, p: &ContinuousPoint) -> Value {
    let pos = p.position(g);
    json!({"edge": p.edge, "anchor": p.anchor, "lambda": p.lambda, "position": [pos.x, pos.y]})
}

fn point_text(g: &GeometricGraph, p: &ContinuousPoint) -> String {
    let pos = p.position(g);
    format!(
        "edge {} from {} at {} ({}, {})",
        p.edge,
        p.anchor,
        num(p.lambda),
        num(pos.x),
        num(pos.y)
    )
}

fn save_plan(path: &Option<PathBuf>, plan: &PartitionPlan) -> Result<(), Failure> {
    match path {
        Some(p) => io::save_plan(p, plan).map_err(|e| e.to_string()),
        None => Ok(()),
    }
}

fn plan_json(plan: &PartitionPlan) -> Value {
    serde_json::from_str(&io::plan_to_string(plan)).expect("plans serialize to JSON")
}

fn partition_report(k: usize, part: &DiscretePartition, g: &AbstractGraph) -> Report {
    let mut text = format!("{k}\n");
    for b in &part.blocks {
        text.push_str(&format!("block {b:?}\n"));
    }
    let deleted = part.deleted_edges(g);
    text.push_str(&format!("deleted edges {deleted:?}\n"));
    Report::ok(text, json!({"borsuk": k, "blocks": part.blocks, "deleted_edges": deleted}))
}

fn run(cmd: Command, tol: &Tolerance) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { graph } => {
            let f = load(&graph, tol)?;
            let (kind, n, m) = match &f {
                GraphFile::Geometric { graph, .. } => ("geometric", graph.n(), graph.m()),
                GraphFile::Abstract { graph, .. } => ("abstract", graph.n(), graph.m()),
            };
            Ok(Report::ok(
                format!("ok: {kind} graph with {n} vertices and {m} edges\n"),
                json!({"valid": true, "kind": kind, "vertices": n, "edges": m}),
            ))
        }
        Command::Diameter { graph, continuous } => {
            if continuous {
                let g = geometric(&graph, tol)?;
                if !g.is_connected() {
                    return Err("graph is not connected".into());
                }
                let d = Metric::new(&g, tol).diameter();
                let mut text = format!("{}\n", num(d.value));
                let mut js = json!({"diameter": d.value, "continuous": true});
                if let Some((p, q)) = &d.witness {
                    text.push_str(&format!("witness {}\n        {}\n", point_text(&g, p), point_text(&g, q)));
                    js["witness"] = json!([point_json(&g, p), point_json(&g, q)]);
                }
                Ok(Report::ok(text, js))
            } else {
                let a = load(&graph, tol)?.to_abstract();
                let d = a.diameter().ok_or("graph is not connected")?;
                Ok(Report::ok(format!("{d}\n"), json!({"diameter": d, "continuous": false})))
            }
        }
        Command::Cut {
            graph,
            line,
            minus,
            plus,
        } => {
            let g = geometric(&graph, tol)?;
            let r = cut(&g, &line, tol).map_err(|e| e.to_string())?;
            for (path, side) in [(&minus, &r.minus), (&plus, &r.plus)] {
                if let Some(p) = path {
                    io::save_graph(p, &GraphFile::geometric(side.clone())).map_err(|e| e.to_string())?;
                }
            }
            let text = format!(
                "minus: {} vertices, {} edges, length {}\nplus: {} vertices, {} edges, length {}\ns_l length {}\n",
                r.minus.n(),
                r.minus.m(),
                num(r.minus.total_length()),
                r.plus.n(),
                r.plus.m(),
                num(r.plus.total_length()),
                num(r.s_ell_length())
            );
            Ok(Report::ok(
                text,
                json!({
                    "minus": {"vertices": r.minus.n(), "edges": r.minus.m(), "length": r.minus.total_length()},
                    "plus": {"vertices": r.plus.n(), "edges": r.plus.m(), "length": r.plus.total_length()},
                    "s_ell": [[r.s_ell.0.x, r.s_ell.0.y], [r.s_ell.1.x, r.s_ell.1.y]],
                    "s_ell_length": r.s_ell_length(),
                }),
            ))
        }
        Command::Verify { graph, plan } => {
            let g = geometric(&graph, tol)?;
            let p = io::load_plan(&plan).map_err(|e| e.to_string())?;
            let v = verify_partition(&g, &p, tol).map_err(|e| e.to_string())?;
            let mut text = format!("{}\noriginal {}\n", if v.correct { "correct" } else { "incorrect" }, num(v.original));
            for (i, d) in v.diameters.iter().enumerate() {
                text.push_str(&format!("part {i} {}\n", num(*d)));
            }
            Ok(Report {
                text,
                json: json!({"correct": v.correct, "original": v.original, "diameters": v.diameters, "margin": v.margin}),
                ok: v.correct,
            })
        }
        Command::BorsukDiscrete { graph } => {
            let a = load(&graph, tol)?.to_abstract();
            let (k, part) = borsuk_discrete_exact(&a).map_err(|e| e.to_string())?;
            Ok(partition_report(k, &part, &a))
        }
        Command::BorsukTree { graph } => {
            let a = load(&graph, tol)?.to_abstract();
            let (k, part) = borsuk_discrete_tree(&a).map_err(|e| e.to_string())?;
            Ok(partition_report(k, &part, &a))
        }
        Command::BorsukCtree { graph, plan } => {
            let g = geometric(&graph, tol)?;
            let r = borsuk_continuous_tree(&g, tol).map_err(|e| e.to_string())?;
            save_plan(&plan, &r.plan)?;
            let c = r.center.point.position(&g);
            let mut text = format!("{}\ncenter ({}, {})\n", r.k, num(c.x), num(c.y));
            for (i, s) in r.plan.steps.iter().enumerate() {
                let (a, b, cc) = s.line.coefficients();
                text.push_str(&format!("line {i}: {} {} {}\n", num(a), num(b), num(cc)));
            }
            Ok(Report::ok(
                text,
                json!({
                    "borsuk": r.k,
                    "center": [c.x, c.y],
                    "center_is_vertex": r.center.is_vertex,
                    "plan": plan_json(&r.plan),
                    "diameters": r.verdict.diameters,
                    "delta": r.delta,
                }),
            ))
        }
        Command::Monotone { graph, line, at } => {
            let g = geometric(&graph, tol)?;
            let mono = is_monotone(&g, &line, tol);
            let convex = mono && is_convex_monotone(&g, &line, tol);
            let mut text = format!("monotone {mono}\nconvex {convex}\n");
            let mut js = json!({"monotone": mono, "convex": convex});
            if !at.is_empty() {
                let p = h_profile(&g, &line, &at, tol, Execution::default()).map_err(|e| e.to_string())?;
                let mut rows = vec![];
                for s in &p.samples {
                    text.push_str(&format!("x {} h- {} h+ {}\n", num(s.x), num(s.h_minus), num(s.h_plus)));
                    rows.push(json!({"x": s.x, "h_minus": s.h_minus, "h_plus": s.h_plus}));
                }
                js["profile"] = Value::Array(rows);
            }
            Ok(Report::ok(text, js))
        }
        Command::PartitionMonotone { graph, line, plan } => {
            let g = geometric(&graph, tol)?;
            let r = monotone_partition(&g, &line, tol).map_err(|e| e.to_string())?;
            save_plan(&plan, &r.plan)?;
            let v = verify_partition(&g, &r.plan, tol).map_err(|e| e.to_string())?;
            let mut text = format!(
                "{} lines\ndiametral sets {}\nmax disjoint {}\n",
                r.plan.len(),
                r.family.sets.len(),
                r.family.max_disjoint
            );
            for x in &r.positions {
                text.push_str(&format!("cut at {}\n", num(*x)));
            }
            text.push_str(if v.correct { "correct\n" } else { "incorrect\n" });
            Ok(Report {
                text,
                json: json!({
                    "lines": r.plan.len(),
                    "positions": r.positions,
                    "diametral_sets": r.family.sets.len(),
                    "max_disjoint": r.family.max_disjoint,
                    "plan": plan_json(&r.plan),
                    "correct": v.correct,
                }),
                ok: v.correct,
            })
        }
        Command::ProveDisjoint {
            shards,
            slack,
            closed,
            log,
            limit,
        } => {
            let strictness = if closed {
                Strictness::Closed
            } else if slack {
                Strictness::slack()
            } else {
                Strictness::Strict
            };
            let cfg = ProverConfig {
                strictness: strictness.clone(),
                shards,
                limit,
                ..ProverConfig::default()
            };
            let r = run_prover(&cfg);
            if let Some(path) = log {
                let mut f = fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                for v in &r.feasible {
                    writeln!(f, "{}", v.log_line()).map_err(|e| format!("{}: {e}", path.display()))?;
                }
            }
            let s = &r.summary;
            let text = format!(
                "mode: {strictness}\ntotal: {}\nfeasible: {}\nnonplanar: {}\nexceptions: {}\n{}\n",
                s.total,
                s.feasible_count,
                s.nonplanar_count,
                s.exceptions.len(),
                if s.confirmed() { "confirmed" } else { "not confirmed" }
            );
            Ok(Report::ok(
                text,
                json!({
                    "mode": strictness.to_string(),
                    "total": s.total,
                    "feasible": s.feasible_count,
                    "nonplanar": s.nonplanar_count,
                    "exceptions": s.exceptions,
                    "confirmed": s.confirmed(),
                }),
            ))
        }
        Command::Render { graph, plan, out } => {
            let g = geometric(&graph, tol)?;
            let p = plan.map(|p| io::load_plan(&p)).transpose().map_err(|e| e.to_string())?;
            let doc = svg::render(&g, p.as_ref(), tol).map_err(|e| e.to_string())?;
            fs::write(&out, &doc).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(Report::ok(
                format!("wrote {}\n", out.display()),
                json!({"written": out.display().to_string(), "bytes": doc.len()}),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tolerance::from_env();
    match run(cli.command, &tol) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                print!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
