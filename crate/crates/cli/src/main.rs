//! `krcomb`: fermionic formulas, Kleber trees, crystals and one-dimensional sums.
//!
//! Tensor factors are listed left to right exactly as in `B = B^{r_1,s_1} (x) ... (x) B^{r_L,s_L}`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use krcomb::crystals::{generate_graph, CrystalGraph, KrSpec, TensorCrystal};
use krcomb::energy::{x_polynomial, EnergyCache};
use krcomb::fermionic::{admissible_configs, m_polynomial_with, FermionicData};
use krcomb::kleber::{kleber_tree_with, path_to_config, KleberTree};
use krcomb::verify::{self, Budget};
use krcomb::virtual_kleber::{embedding, virtual_kleber_tree_with};
use krcomb::{AffineType, Configuration, Exec, QPolynomial, TensorSpec, Weight};
use serde_json::{json, Value};

/// Exit status for usage and runtime errors; 1..=125 is reserved for verification failures.
const EXIT_ERROR: u8 = 126;

#[derive(Parser)]
#[command(name = "krcomb", version, about = "Rigged configurations, Kleber trees and KR crystals")]
struct Cli {
    /// Run every sweep on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fermionic formula M(B, lambda; q).
    M(WeightedJob),
    /// One-dimensional sum X(B, lambda; q) from the crystal B^{1,s} factors.
    X(WeightedJob),
    /// Kleber tree of a simply-laced type.
    Tree(TreeJob),
    /// Virtual Kleber tree of a folded type.
    Vtree(VirtualTreeJob),
    /// Crystal graph of a tensor product of B^{1,s} factors.
    Crystal(CrystalJob),
    /// Batch verification; the exit status is the number of failures, capped at 125.
    Verify(VerifyJob),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Target {
    /// Affine type such as A3~1, C2~1, A4~2, A4~2dag, D3~2.
    #[arg(long = "type", value_name = "TYPE", value_parser = parse_type)]
    ctype: AffineType,
    /// Tensor factors `r,s`, left to right.
    #[arg(long, value_name = "R,S", num_args = 1.., required = true, value_parser = parse_factor)]
    tensor: Vec<(usize, u32)>,
}

#[derive(Args)]
struct WeightedJob {
    #[command(flatten)]
    target: Target,
    /// Classical weight as coefficients of the fundamental weights, e.g. 0,1,0.
    #[arg(long, value_parser = parse_weight)]
    weight: Weight,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TreeJob {
    #[command(flatten)]
    target: Target,
    /// Grow only towards this weight.
    #[arg(long, value_parser = parse_weight)]
    weight: Option<Weight>,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

#[derive(Args)]
struct VirtualTreeJob {
    #[command(flatten)]
    target: Target,
    /// `all` or a weight of the folded type.
    #[arg(long, default_value = "all")]
    weight_filter: String,
    /// Drop subtrees without a selected node.
    #[arg(long)]
    trim: bool,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

#[derive(Args)]
struct CrystalJob {
    #[command(flatten)]
    target: Target,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

#[derive(Args)]
struct VerifyJob {
    /// `default`, `quick` or a path to a budget JSON file.
    #[arg(long, default_value = "default")]
    budget: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_type(s: &str) -> Result<AffineType, String> {
    s.parse().map_err(|e: krcomb::Error| e.to_string())
}

fn parse_factor(s: &str) -> Result<(usize, u32), String> {
    let bad = || format!("expected a factor `r,s` with positive integers, got {s:?}");
    let (r, w) = s.split_once(',').ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let w: u32 = w.trim().parse().map_err(|_| bad())?;
    if r == 0 || w == 0 {
        return Err(bad());
    }
    Ok((r, w))
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(Weight)
        .map_err(|_| format!("expected comma-separated integers, got {s:?}"))
}

impl Target {
    fn spec(&self) -> TensorSpec {
        TensorSpec::from_factors(&self.tensor)
    }

    fn factors_json(&self) -> Value {
        json!(self.tensor.iter().map(|&(r, s)| [r as u64, s as u64]).collect::<Vec<_>>())
    }

    fn check_weight(&self, w: &Weight) -> anyhow::Result<()> {
        if w.rank() != self.ctype.rank() {
            bail!("weight has {} coefficients but {} has rank {}", w.rank(), self.ctype, self.ctype.rank());
        }
        Ok(())
    }
}

fn poly_json(p: &QPolynomial) -> Value {
    json!({ "text": p.to_string(), "terms": p })
}

fn rows_json(nu: &Configuration) -> Value {
    json!((1..=nu.rank()).map(|a| nu.rows(a).to_vec()).collect::<Vec<_>>())
}

fn vacancies_json(fd: &FermionicData, l: &TensorSpec, nu: &Configuration) -> Value {
    json!((1..=nu.rank())
        .map(|a| nu.rows(a).iter().map(|&i| fd.vacancy(l, nu, a, i)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// Write to standard output; a closed pipe ends the process quietly.
fn emit(mut text: String) {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            std::process::exit(EXIT_ERROR.into());
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

fn cmd_m(job: &WeightedJob, exec: Exec) -> anyhow::Result<()> {
    let t = &job.target;
    t.check_weight(&job.weight)?;
    let l = t.spec();
    let poly = m_polynomial_with(t.ctype, &l, &job.weight, exec)?;
    let count = admissible_configs(t.ctype, &l, &job.weight)?.len();
    match job.format {
        Format::Json => emit(pretty(&json!({
            "command": "m",
            "type": t.ctype.label(),
            "tensor": t.factors_json(),
            "weight": job.weight.0,
            "configurations": count,
            "polynomial": poly_json(&poly),
        }))),
        Format::Text => emit(format!("{poly}\nconfigurations: {count}")),
        Format::Dot => bail!("m has no DOT output"),
    }
    Ok(())
}

fn row_specs(t: &Target) -> anyhow::Result<Vec<KrSpec>> {
    if t.ctype.is_exceptional() {
        bail!("x covers nonexceptional types only, got {}", t.ctype);
    }
    t.tensor
        .iter()
        .map(|&(r, s)| {
            if r != 1 {
                bail!("x covers factors B^{{1,s}} only, got B^{{{r},{s}}}");
            }
            Ok(KrSpec::new(t.ctype, 1, s)?)
        })
        .collect()
}

fn cmd_x(job: &WeightedJob) -> anyhow::Result<()> {
    let t = &job.target;
    t.check_weight(&job.weight)?;
    let specs = row_specs(t)?;
    let cache = EnergyCache::default();
    let x = x_polynomial(&cache, &specs, &job.weight)?;
    let inverted = x.invert();
    let paths = x.at_one();
    match job.format {
        Format::Json => emit(pretty(&json!({
            "command": "x",
            "type": t.ctype.label(),
            "tensor": t.factors_json(),
            "weight": job.weight.0,
            "paths": paths.to_string(),
            "polynomial": poly_json(&x),
            "inverted": poly_json(&inverted),
        }))),
        Format::Text => emit(format!("{x}\nX(q^-1) = {inverted}\npaths: {paths}")),
        Format::Dot => bail!("x has no DOT output"),
    }
    Ok(())
}

/// Root coordinates as `(1,0,1)`.
fn edge_label(e: &[i64]) -> String {
    let parts: Vec<String> = e.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

fn tree_dot(tree: &KleberTree, name: &str) -> String {
    let mut s = format!("digraph {name} {{\n  node [shape=box];\n");
    for x in &tree.nodes {
        let mut attrs = format!("label=\"{}\"", x.weight);
        if x.selected {
            attrs.push_str(", peripheries=2");
        }
        if x.superlattice {
            attrs.push_str(", style=dashed");
        }
        let _ = writeln!(s, "  n{} [{attrs}];", x.id);
    }
    for x in &tree.nodes {
        if let (Some(p), Some(e)) = (x.parent, &x.edge) {
            let _ = writeln!(s, "  n{p} -> n{} [label=\"{}\"];", x.id, edge_label(e));
        }
    }
    s.push_str("}\n");
    s
}

fn tree_text(tree: &KleberTree) -> String {
    let mut s = String::new();
    let mut stack = vec![tree.root().id];
    while let Some(id) = stack.pop() {
        let x = &tree.nodes[id];
        let mark = if x.selected { " *" } else { "" };
        let edge = x.edge.as_deref().map(edge_label).unwrap_or_default();
        let _ = writeln!(s, "{}{} {edge}{mark}", "  ".repeat(x.depth as usize), x.weight);
        stack.extend(x.children.iter().rev());
    }
    s
}

fn nodes_json(tree: &KleberTree) -> Vec<Value> {
    tree.nodes
        .iter()
        .map(|x| {
            json!({
                "id": x.id,
                "parent": x.parent,
                "depth": x.depth,
                "weight": x.weight.0,
                "edge": x.edge,
                "children": x.children,
                "selected": x.selected,
                "superlattice": x.superlattice,
            })
        })
        .collect()
}

fn cmd_tree(job: &TreeJob, exec: Exec) -> anyhow::Result<()> {
    let t = &job.target;
    if let Some(w) = &job.weight {
        t.check_weight(w)?;
    }
    let l = t.spec();
    let tree = kleber_tree_with(t.ctype, &l, job.weight.as_ref(), exec)?;
    match job.format {
        Format::Dot => emit(tree_dot(&tree, "kleber")),
        Format::Text => emit(tree_text(&tree)),
        Format::Json => {
            let fd = FermionicData::new(t.ctype)?;
            let configurations: Vec<Value> = tree
                .nodes
                .iter()
                .map(|x| {
                    let (w, nu) = path_to_config(&tree, x.id);
                    json!({
                        "node": x.id,
                        "weight": w.0,
                        "rows": rows_json(&nu),
                        "vacancies": vacancies_json(&fd, &l, &nu),
                    })
                })
                .collect();
            emit(pretty(&json!({
                "command": "tree",
                "type": t.ctype.label(),
                "ambient_type": t.ctype.label(),
                "tensor": t.factors_json(),
                "nodes": nodes_json(&tree),
                "configurations": configurations,
            })));
        }
    }
    Ok(())
}

fn cmd_vtree(job: &VirtualTreeJob, exec: Exec) -> anyhow::Result<()> {
    let t = &job.target;
    let target = match job.weight_filter.as_str() {
        "all" => None,
        w => {
            let w = parse_weight(w).map_err(anyhow::Error::msg)?;
            t.check_weight(&w)?;
            Some(w)
        }
    };
    let l = t.spec();
    let emb = embedding(t.ctype)?;
    let mut tree = virtual_kleber_tree_with(t.ctype, &l, target.as_ref(), exec)?;
    if job.trim {
        tree = tree.trimmed();
    }
    match job.format {
        Format::Dot => emit(tree_dot(&tree, "virtual_kleber")),
        Format::Text => emit(tree_text(&tree)),
        Format::Json => {
            // no direct vacancy formula exists for every folded type
            let fd = FermionicData::new(t.ctype).ok();
            let mut configurations = Vec::new();
            for x in tree.nodes.iter().filter(|x| x.selected) {
                let (w_hat, nu_hat) = path_to_config(&tree, x.id);
                let w = emb.unpsi_weight(&w_hat).context("selected node outside the embedded lattice")?;
                let nu = emb.devirtualize(&nu_hat)?;
                configurations.push(json!({
                    "node": x.id,
                    "weight": w.0,
                    "rows": rows_json(&nu),
                    "vacancies": fd.as_ref().map(|fd| vacancies_json(fd, &l, &nu)),
                    "virtual_rows": rows_json(&nu_hat),
                }));
            }
            emit(pretty(&json!({
                "command": "vtree",
                "type": t.ctype.label(),
                "ambient_type": tree.ctype.label(),
                "tensor": t.factors_json(),
                "nodes": nodes_json(&tree),
                "configurations": configurations,
            })));
        }
    }
    Ok(())
}

fn crystal_text(g: &CrystalGraph) -> String {
    let mut s = format!("{}: {} vertices\n", g.name, g.vertices.len());
    for (a, i, b) in &g.arcs {
        let _ = writeln!(s, "{} -{i}-> {}", g.vertices[*a], g.vertices[*b]);
    }
    s
}

fn cmd_crystal(job: &CrystalJob) -> anyhow::Result<()> {
    let t = &job.target;
    let cache = EnergyCache::default();
    let specs = t
        .tensor
        .iter()
        .map(|&(r, s)| KrSpec::new(t.ctype, r, s))
        .collect::<krcomb::Result<Vec<_>>>()?;
    let crystal = TensorCrystal::new(specs.iter().map(|&s| cache.table(s)).collect());
    let g = generate_graph(&crystal, job.cap)?;
    match job.format {
        Format::Dot => emit(g.to_dot()),
        Format::Text => emit(crystal_text(&g)),
        Format::Json => emit(pretty(&json!({
            "command": "crystal",
            "type": t.ctype.label(),
            "tensor": t.factors_json(),
            "graph": g,
        }))),
    }
    Ok(())
}

fn load_budget(name: &str) -> anyhow::Result<Budget> {
    if let Some(b) = Budget::named(name) {
        return Ok(b);
    }
    let text = std::fs::read_to_string(name).with_context(|| format!("reading budget file {name}"))?;
    Ok(Budget::from_json(&text)?)
}

fn cmd_verify(job: &VerifyJob, exec: Exec) -> anyhow::Result<usize> {
    let budget = load_budget(&job.budget)?;
    let report = verify::run(&budget, exec)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &job.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => emit(text),
    }
    for (kind, s) in &report.summary {
        eprintln!("{kind}: {} cases, {} failures", s.cases, s.failures);
    }
    Ok(report.failures)
}

fn run(cli: &Cli) -> anyhow::Result<usize> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::M(job) => cmd_m(job, exec)?,
        Command::X(job) => cmd_x(job)?,
        Command::Tree(job) => cmd_tree(job, exec)?,
        Command::Vtree(job) => cmd_vtree(job, exec)?,
        Command::Crystal(job) => cmd_crystal(job)?,
        Command::Verify(job) => return cmd_verify(job, exec),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(failures) => ExitCode::from(failures.min(125) as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
