use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use codegree::search::lemmas::{run_lemma_grid, Grid};
use codegree::search::{threshold_scan, ThresholdScan};
use codegree::{
    build_a, co_norm, co_norm_a_closed, codegree_table, cover_number, exhaustive_max, hill_climb,
    matching_number, size_a, stability_decompose, stars_cover, sunflower_count,
    sunflower_count_a_closed, Count, Error, ExtremalSpec, Family, HillConfig, Objective,
    SearchReport, StarDecomposition,
};

#[derive(Parser)]
#[command(name = "codegree", version, about = "Extremal quantities of uniform families with bounded matching number")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build A(n,k,s,i) (i = 1 gives H(n,k,s)).
    Construct(ConstructArgs),
    /// Size, matching and cover numbers, codegree norms and sunflower counts of a family file.
    Stats(StatsArgs),
    /// Split a family into at most s stars.
    Decompose(DecomposeArgs),
    /// Maximise an objective over families with matching number at most s.
    Search(SearchArgs),
    /// Compare H(n,k,s) with A(n,k,s,k) over a range of n.
    Threshold(ThresholdArgs),
    /// Run the lemma checkers.
    VerifyLemmas(VerifyArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    i: u32,
    /// Print closed-form values instead of the family.
    #[arg(long)]
    sizes_only: bool,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    p: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    l: Vec<u32>,
}

#[derive(Args)]
struct StatsArgs {
    file: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    p: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    l: Vec<u32>,
}

#[derive(Args)]
struct DecomposeArgs {
    file: PathBuf,
    #[arg(long)]
    s: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    #[value(alias = "hill_climb")]
    Hill,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// size, co:<p> or sunflower:<l>
    #[arg(long, default_value = "size")]
    objective: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    method: MethodArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, default_value = "size")]
    objective: String,
    #[arg(long)]
    from: u32,
    #[arg(long)]
    to: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "small")]
    grid: GridArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// What a subcommand produced: text to emit and the exit code.
struct Outcome {
    body: String,
    code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(a, cli.format),
        Command::Stats(a) => stats(a, cli.format),
        Command::Decompose(a) => decompose(a, cli.format),
        Command::Search(a) => search(a, cli.format),
        Command::Threshold(a) => threshold(a, cli.format),
        Command::VerifyLemmas(a) => verify(a, cli.format),
    };
    match result {
        Ok(outcome) => match emit(&outcome.body, cli.output.as_ref()) {
            Ok(()) => ExitCode::from(outcome.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) => 3,
                _ => 2,
            })
        }
    }
}

fn emit(body: &str, output: Option<&PathBuf>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn count(c: &Count) -> Value {
    Value::String(c.to_string())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn read_family(path: &PathBuf) -> Result<Family, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    Family::parse(&text)
}

fn edges_json(h: &Family) -> Value {
    json!(h.to_lists())
}

fn unsupported(format: Format, command: &str) -> Error {
    let name = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    };
    Error::InvalidArgument(format!("{command} does not support --format {name}"))
}

fn construct(a: &ConstructArgs, format: Option<Format>) -> Result<Outcome, Error> {
    let spec = ExtremalSpec::new(a.n, a.k, a.s, a.i)?;
    if spec.is_degenerate() {
        eprintln!(
            "warning: window i*s+i-1 = {} exceeds n = {}; the matching number may differ from s",
            spec.window(),
            a.n
        );
    }
    if a.sizes_only {
        if matches!(format, Some(f) if f != Format::Json) {
            return Err(unsupported(format.unwrap(), "construct --sizes-only"));
        }
        let mut co = Map::new();
        for &p in &a.p {
            co.insert(p.to_string(), count(&co_norm_a_closed(&spec, p)?));
        }
        let mut sf = Map::new();
        for &l in &a.l {
            sf.insert(l.to_string(), count(&sunflower_count_a_closed(&spec, l)?));
        }
        let v = json!({
            "n": a.n, "k": a.k, "s": a.s, "i": a.i,
            "size": count(&size_a(&spec)),
            "co_p": co,
            "sunflowers_l": sf,
        });
        return Ok(Outcome::ok(pretty(&v)));
    }
    let h = build_a(&spec);
    match format.unwrap_or(Format::Text) {
        Format::Text => Ok(Outcome::ok(h.to_text())),
        Format::Json => Ok(Outcome::ok(pretty(&json!({"n": a.n, "k": a.k, "edges": edges_json(&h)})))),
        f => Err(unsupported(f, "construct")),
    }
}

fn stats(a: &StatsArgs, format: Option<Format>) -> Result<Outcome, Error> {
    let h = read_family(&a.file)?;
    let table = codegree_table(&h)?;
    let mut co = Map::new();
    for &p in &a.p {
        co.insert(p.to_string(), count(&co_norm(&h, p)?));
    }
    let mut sf = Map::new();
    for &l in &a.l {
        sf.insert(l.to_string(), count(&sunflower_count(&h, l)?));
    }
    let (tau, _) = cover_number(&h);
    let v = json!({
        "n": h.n(), "k": h.k(),
        "edges": h.len(),
        "nu": matching_number(&h),
        "cover": tau,
        "delta": table.max(),
        "co": co,
        "sunflowers": sf,
    });
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(Outcome::ok(pretty(&v))),
        Format::Text => Ok(Outcome::ok(flat_text(&v))),
        f => Err(unsupported(f, "stats")),
    }
}

/// `key: value` lines, nested maps as `key.sub: value`.
fn flat_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn decomposition_json(d: &StarDecomposition) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("centers".into(), json!(d.centers().iter().map(|c| c.label()).collect::<Vec<_>>()));
    m.insert("parts".into(), json!(d.parts().iter().map(|p| p.to_lists()).collect::<Vec<_>>()));
    m
}

fn decompose(a: &DecomposeArgs, format: Option<Format>) -> Result<Outcome, Error> {
    if matches!(format, Some(f) if f != Format::Json) {
        return Err(unsupported(format.unwrap(), "decompose"));
    }
    let h = read_family(&a.file)?;
    let nu = matching_number(&h);
    let (mut out, code) = if nu > a.s {
        let mut m = Map::new();
        m.insert("diagnostic".into(), json!(format!("matching number {nu} exceeds s = {}", a.s)));
        (m, 1)
    } else if nu < a.s {
        match stars_cover(&h, a.s) {
            Some(d) => (decomposition_json(&d), 0),
            None => {
                let mut m = Map::new();
                m.insert("diagnostic".into(), json!(format!("no {} vertices cover every edge", a.s)));
                (m, 1)
            }
        }
    } else {
        match stability_decompose(&h, a.s)? {
            Ok(d) => (decomposition_json(&d), 0),
            Err(diag) => match stars_cover(&h, a.s) {
                Some(d) => {
                    let mut m = decomposition_json(&d);
                    m.insert("diagnostic".into(), json!(diag.to_string()));
                    (m, 2)
                }
                None => {
                    let mut m = Map::new();
                    m.insert("diagnostic".into(), json!(diag.to_string()));
                    (m, 1)
                }
            },
        }
    };
    out.insert("s".into(), json!(a.s));
    Ok(Outcome { body: pretty(&Value::Object(out)), code })
}

fn report_json(r: &SearchReport) -> Value {
    json!({
        "n": r.n, "k": r.k, "s": r.s,
        "objective": r.objective.to_string(),
        "optimum": count(&r.optimum),
        "witnesses": r.witnesses.iter().map(|w| w.to_lists()).collect::<Vec<_>>(),
        "witnesses_truncated": r.witnesses_truncated,
        "optimal_families": r.optimal_families,
        "nodes_explored": r.nodes_explored,
        "method": r.method.to_string(),
        "seed": r.seed,
        "patience": r.patience,
    })
}

fn search(a: &SearchArgs, format: Option<Format>) -> Result<Outcome, Error> {
    let objective: Objective = a.objective.parse()?;
    let report = match a.method {
        MethodArg::Exhaustive => exhaustive_max(a.n, a.k, a.s, objective)?,
        MethodArg::Hill => {
            let config = HillConfig { seed: a.seed, restarts: a.restarts, steps: a.steps, threads: a.threads.max(1) };
            hill_climb(a.n, a.k, a.s, objective, config)?
        }
    };
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(Outcome::ok(pretty(&report_json(&report)))),
        Format::Text => {
            let mut out = format!(
                "# {} n={} k={} s={} objective={} optimum={} optimal_families={} nodes={}\n",
                report.method, report.n, report.k, report.s, report.objective, report.optimum,
                report.optimal_families, report.nodes_explored
            );
            for w in &report.witnesses {
                out.push_str(&w.to_text());
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
        f => Err(unsupported(f, "search")),
    }
}

fn threshold_csv(scan: &ThresholdScan) -> String {
    let mut out = String::from("n,value_H,value_Ak,winner\n");
    for r in &scan.rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.value_h, r.value_ak, r.winner));
    }
    out
}

fn threshold(a: &ThresholdArgs, format: Option<Format>) -> Result<Outcome, Error> {
    let objective: Objective = a.objective.parse()?;
    let scan = threshold_scan(a.k, a.s, objective, a.from, a.to)?;
    match format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(Outcome::ok(threshold_csv(&scan))),
        Format::Json => {
            let rows: Vec<Value> = scan
                .rows
                .iter()
                .map(|r| json!({"n": r.n, "value_H": count(&r.value_h), "value_Ak": count(&r.value_ak), "winner": r.winner.to_string()}))
                .collect();
            let v = json!({
                "k": a.k, "s": a.s, "objective": objective.to_string(),
                "rows": rows,
                "first_h_win": scan.first_h_win,
                "stays_winning": scan.stays_winning,
            });
            Ok(Outcome::ok(pretty(&v)))
        }
        Format::Text => {
            let mut out = threshold_csv(&scan).replace(',', " ");
            match scan.first_h_win {
                Some(n) => out.push_str(&format!(
                    "H first wins at n = {n}{}\n",
                    if scan.stays_winning { " and keeps winning" } else { " but does not keep winning" }
                )),
                None => out.push_str("H never wins strictly in this range\n"),
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn verify(a: &VerifyArgs, format: Option<Format>) -> Result<Outcome, Error> {
    let grid = match a.grid {
        GridArg::Small => Grid::Small,
        GridArg::Full => Grid::Full,
    };
    let checks = run_lemma_grid(grid, a.seed)?;
    let code = if checks.iter().all(|c| c.passed()) { 0 } else { 3 };
    let body = match format.unwrap_or(Format::Text) {
        Format::Text => checks.iter().map(|c| format!("{c}\n")).collect(),
        Format::Json => {
            let v: Vec<Value> = checks
                .iter()
                .map(|c| json!({
                    "name": c.name, "params": c.params, "cases": c.cases,
                    "violations": c.violations, "passed": c.passed(), "note": c.note,
                }))
                .collect();
            pretty(&Value::Array(v))
        }
        f => return Err(unsupported(f, "verify-lemmas")),
    };
    Ok(Outcome { body, code })
}
