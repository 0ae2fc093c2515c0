use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use netrobust::claims::{
    init_threads_from_env, render_table, revalidate, run_verification, Plan, RunOptions, Status, Value,
};
use netrobust::independence::{independence_number, DEFAULT_NODE_BUDGET};
use netrobust::matching::{
    cond_super_matched_status, mp1_number, mp_number, super_matched_status, v_e_path, MatchingError,
};
use netrobust::mincut::edge_connectivity;
use netrobust::oracle::{brute_alpha, brute_lambda_k, brute_mp, brute_super_lambda_k};
use netrobust::restricted::{classify_super_lambda_k, lambda_k, xi_k, Verdict};
use netrobust::topology::{check_adjacency_preserving, dcell_star_map, gen_dcell, gen_star};
use netrobust::{parse_graph, write_graph, Graph};
use serde_json::json;

#[derive(Parser)]
#[command(name = "netrobust", version, about = "Edge-connectivity and matching robustness of DCell and star graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated topology in the graph text format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// DCell level, or k' for the (n', k')-star graph.
        #[arg(long)]
        k: usize,
        /// DCell base, or n' for the (n', k')-star graph.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute one metric of a graph file.
    Analyze {
        #[arg(long, value_enum)]
        metric: AnalyzeMetric,
        /// Order for `lambdak` and `xi`.
        #[arg(long)]
        k: Option<usize>,
        /// Enumerate every optimal preclusion set instead of stopping at the first.
        #[arg(long)]
        exhaustive: bool,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a super-connectivity or super-matching property.
    Classify {
        #[arg(long, value_enum)]
        property: Property,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check that D_{1,n} maps onto S_{n+1,2} edge for edge.
    Isocheck {
        #[arg(long)]
        n: usize,
    },
    /// Cross-check a fast routine against its brute-force oracle.
    Oracle {
        #[arg(long, value_enum)]
        metric: OracleMetric,
        file: PathBuf,
    },
    /// Evaluate the claim catalog over the desk plan.
    VerifyPaper {
        #[arg(long, default_value_t = netrobust::claims::DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Also run the λ and λ₂ claims on D_{3,2}.
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = netrobust::oracle::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dcell,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeMetric {
    Lambda,
    Lambda2,
    Lambda3,
    Lambdak,
    Xi,
    Alpha,
    Ve,
    Mp,
    Mp1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    SuperLambda,
    SuperLambda2,
    SuperLambda3,
    SuperMatched,
    CondSuperMatched,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMetric {
    Lambda,
    Lambda2,
    Lambda3,
    SuperLambda,
    SuperLambda2,
    Alpha,
    Mp,
    Mp1,
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn int(v: usize) -> Value {
    Value::Int(v as u64)
}

fn preclusion(r: Result<netrobust::PreclusionResult, MatchingError>) -> Result<(Value, serde_json::Value), String> {
    match r {
        Ok(r) => Ok((int(r.number), json!({ "exhaustive": r.exhaustive, "optimal_sets": r.witnesses }))),
        Err(MatchingError::NoPreclusionSet) => Ok((Value::not_defined(), serde_json::Value::Null)),
        Err(e) => Err(e.to_string()),
    }
}

fn analyze(
    g: &Graph,
    metric: AnalyzeMetric,
    k: Option<usize>,
    exhaustive: bool,
) -> Result<(Value, serde_json::Value), String> {
    let need_k = || k.ok_or_else(|| "--k is required for this metric".to_string());
    let ladder = |k: usize| -> Result<(Value, serde_json::Value), String> {
        let r = lambda_k(g, k).map_err(|e| e.to_string())?;
        let value = r.value.defined().map_or(Value::not_defined(), int);
        Ok((value, json!(r.witness)))
    };
    match metric {
        AnalyzeMetric::Lambda => {
            let (v, w) = edge_connectivity(g).map_err(|e| e.to_string())?;
            Ok((int(v), json!(w)))
        }
        AnalyzeMetric::Lambda2 => ladder(2),
        AnalyzeMetric::Lambda3 => ladder(3),
        AnalyzeMetric::Lambdak => ladder(need_k()?),
        AnalyzeMetric::Xi => {
            let x = xi_k(g, need_k()?).map_err(|e| e.to_string())?;
            Ok((int(x.value), json!({ "set": x.set })))
        }
        AnalyzeMetric::Alpha => {
            let a = independence_number(g, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
            Ok((int(a.alpha), json!({ "independent_set": a.witness, "proof_bound": a.proof_bound })))
        }
        AnalyzeMetric::Ve => {
            let (v, path) = v_e_path(g).map_err(|e| e.to_string())?;
            Ok((int(v), json!({ "path": path })))
        }
        AnalyzeMetric::Mp => preclusion(mp_number(g, exhaustive)),
        AnalyzeMetric::Mp1 => preclusion(mp1_number(g, exhaustive)),
    }
}

fn classify(g: &Graph, property: Property) -> Result<netrobust::restricted::SuperStatus, String> {
    match property {
        Property::SuperLambda => classify_super_lambda_k(g, 1).map_err(|e| e.to_string()),
        Property::SuperLambda2 => classify_super_lambda_k(g, 2).map_err(|e| e.to_string()),
        Property::SuperLambda3 => classify_super_lambda_k(g, 3).map_err(|e| e.to_string()),
        Property::SuperMatched => Ok(super_matched_status(g)),
        Property::CondSuperMatched => Ok(cond_super_matched_status(g)),
    }
}

fn fast_and_oracle(g: &Graph, metric: OracleMetric) -> Result<(Value, Value), String> {
    let opt = |v: Option<usize>| v.map_or(Value::not_defined(), int);
    let verdict = |v: Verdict| match v {
        Verdict::Proven => Value::Bool(true),
        Verdict::Refuted => Value::Bool(false),
        Verdict::Unknown => Value::not_defined(),
    };
    let e = |e: &dyn std::fmt::Display| e.to_string();
    match metric {
        OracleMetric::Lambda | OracleMetric::Lambda2 | OracleMetric::Lambda3 => {
            let k = match metric {
                OracleMetric::Lambda => 1,
                OracleMetric::Lambda2 => 2,
                _ => 3,
            };
            let fast = lambda_k(g, k).map_err(|x| e(&x))?.value.defined();
            Ok((opt(fast), opt(brute_lambda_k(g, k).map_err(|x| e(&x))?)))
        }
        OracleMetric::SuperLambda | OracleMetric::SuperLambda2 => {
            let k = if matches!(metric, OracleMetric::SuperLambda) { 1 } else { 2 };
            let fast = verdict(classify_super_lambda_k(g, k).map_err(|x| e(&x))?.verdict);
            let brute = brute_super_lambda_k(g, k).map_err(|x| e(&x))?;
            Ok((fast, brute.map_or(Value::not_defined(), Value::Bool)))
        }
        OracleMetric::Alpha => {
            let fast = independence_number(g, DEFAULT_NODE_BUDGET).map_err(|x| e(&x))?.alpha;
            Ok((int(fast), int(brute_alpha(g).map_err(|x| e(&x))?)))
        }
        OracleMetric::Mp | OracleMetric::Mp1 => {
            let conditional = matches!(metric, OracleMetric::Mp1);
            let fast = preclusion(if conditional { mp1_number(g, false) } else { mp_number(g, false) })?.0;
            Ok((fast, opt(brute_mp(g, conditional).map_err(|x| e(&x))?)))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen { family, k, n, out } => {
            let g = match family {
                Family::Dcell => gen_dcell(k, n),
                Family::Star => gen_star(n, k),
            }
            .map_err(|e| e.to_string())?;
            let text = write_graph(&g);
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Analyze { metric, k, exhaustive, file, json } => {
            let g = read_graph(&file)?;
            let start = Instant::now();
            let (value, witness) = analyze(&g, metric, k, exhaustive)?;
            let name = metric.to_possible_value().unwrap().get_name().to_string();
            if json {
                let out = json!({
                    "metric": name,
                    "k": k,
                    "value": value,
                    "witness": witness,
                    "runtime_ms": start.elapsed().as_millis() as u64,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{name} = {value}");
                if !witness.is_null() {
                    println!("witness: {witness}");
                }
            }
        }
        Command::Classify { property, file, json } => {
            let g = read_graph(&file)?;
            let status = classify(&g, property)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&status).unwrap());
            } else {
                println!("{:?}", status.verdict);
                println!("evidence: {}", serde_json::to_string(&status.evidence).unwrap());
            }
        }
        Command::Isocheck { n } => {
            let d = gen_dcell(1, n).map_err(|e| e.to_string())?;
            let s = gen_star(n + 1, 2).map_err(|e| e.to_string())?;
            let map = dcell_star_map(n).map_err(|e| e.to_string())?;
            let ok = check_adjacency_preserving(&d, &s, &map).map_err(|e| e.to_string())?;
            println!("D_{{1,{n}}} -> S_{{{},2}}: {}", n + 1, if ok { "isomorphic" } else { "map fails" });
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Oracle { metric, file } => {
            let g = read_graph(&file)?;
            let (fast, oracle) = fast_and_oracle(&g, metric)?;
            let agree = fast == oracle;
            println!("fast {fast}, oracle {oracle}: {}", if agree { "agree" } else { "DISAGREE" });
            if !agree {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::VerifyPaper { max_order, slow, seed, json } => {
            let threads = init_threads_from_env();
            let opts = RunOptions { max_order, slow, seed, ..RunOptions::from_env() };
            let start = Instant::now();
            let report = run_verification(&Plan::default_for(max_order), &opts);
            print!("{}", render_table(&report));
            let issues = revalidate(&report);
            for issue in &issues {
                println!("witness check: {issue}");
            }
            println!(
                "{} claims: {} PASS, {} FAIL, {} SKIPPED-too-large, {} SKIPPED-not-stated ({:.1}s, {threads} threads)",
                report.claims.len(),
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::SkippedTooLarge),
                report.count(Status::SkippedNotStated),
                start.elapsed().as_secs_f64()
            );
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).unwrap();
                fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if !report.passed() || !issues.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
