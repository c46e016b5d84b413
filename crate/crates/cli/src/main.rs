use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qgrs_core::analytic::{construct, Family, FamilyParams};
use qgrs_core::galois::TowerCtx;
use qgrs_core::puncture::{
    check_bounds, existence_scan, exists_weight, parent_spec, puncture_code, BoundCheck, ExistenceVerdict, SearchOptions,
    Verdict,
};
use qgrs_core::quantum::DistanceOptions;
use qgrs_core::record::{
    record_from_construction, record_from_verdict, render_record, render_table, unification_table, verify_record, CodeRecord,
    SCHEMA_VERSION,
};
use qgrs_core::{Error, DEFAULT_BUDGET};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "qgrs", version, about = "Construct, search and verify quantum generalized Reed-Solomon codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code from one of the closed-form families and verify it.
    Construct {
        #[arg(long)]
        q: u32,
        /// q2plus1, q2-l, mq-l or at-most-q
        #[arg(long)]
        family: String,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Length, for at-most-q.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the record here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Stored verbatim in the record.
        #[arg(long)]
        timestamp: Option<String>,
    },
    /// Search the puncture code for self-orthogonal codes of dimension k.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        /// Only this length.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
        /// Directory receiving one record file per witness.
        #[arg(long)]
        records_dir: Option<PathBuf>,
    },
    /// Re-verify a record from its serialized specs.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Tabulate every reachable [[n,k,d]]_q for q up to qmax.
    Table {
        #[arg(long)]
        qmax: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    fn verify(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_VERIFY, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::Inadmissible(_)
            | Error::Forbidden(_)
            | Error::Malformed(_) => Failure::usage(e.to_string()),
            _ => Failure::verify(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Construct { q, family, l, m, k, n, out, budget, seed, output, timestamp } => {
            cmd_construct(q, &family, l, m, k, n, out, budget, seed, output, timestamp)
        }
        Cmd::Search { q, k, r, budget, seed, out, records_dir } => cmd_search(q, k, r, budget, seed, out, records_dir),
        Cmd::Verify { input, budget } => cmd_verify(&input, budget),
        Cmd::Table { qmax, budget, seed, out } => cmd_table(qmax, budget, seed, out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn require(name: &str, v: Option<usize>) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{name} is required for this family")))
}

fn family_params(q: u32, family: &str, l: Option<usize>, m: Option<usize>, k: Option<usize>, n: Option<usize>) -> Result<FamilyParams, Failure> {
    let fp = match family.parse::<Family>()? {
        Family::Q2Plus1 => {
            if k.is_some_and(|k| k != q as usize) {
                return Err(Failure::usage(format!("q2plus1 has k = q = {q}")));
            }
            FamilyParams::q2plus1(q)
        }
        Family::Q2MinusL => FamilyParams::q2minus_l(q, l.unwrap_or(0), require("k", k)?)?,
        Family::MqMinusL => FamilyParams::mq_minus_l(q, require("m", m)?, l.unwrap_or(0), require("k", k)?)?,
        Family::AtMostQ => FamilyParams::at_most_q(q, require("n", n)?, require("k", k)?)?,
    };
    Ok(fp)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    q: u32,
    family: &str,
    l: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    n: Option<usize>,
    out: Out,
    budget: u64,
    seed: u64,
    output: Option<PathBuf>,
    timestamp: Option<String>,
) -> CmdResult {
    let tower = TowerCtx::for_q(q)?;
    let fp = family_params(q, family, l, m, k, n)?;
    let c = construct(&tower, &fp)?;
    let mut rec = record_from_construction(&tower, &c, DistanceOptions::with_budget(budget), seed)?;
    rec.timestamp = timestamp;
    let duplicates: Vec<String> = FamilyParams::enumerate(q)
        .into_iter()
        .filter(|o| o.family != fp.family && o.n == fp.n && o.k == fp.k)
        .map(|o| o.to_string())
        .collect();
    if !duplicates.is_empty() {
        eprintln!("note: same parameters also reached by {}", duplicates.join(", "));
    }
    let text = match out {
        Out::Json => pretty(&rec),
        Out::Table => render_record(&rec),
    };
    emit(&text, output)
}

fn emit(text: &str, output: Option<PathBuf>) -> CmdResult {
    match output {
        Some(path) => fs::write(&path, format!("{}\n", text.trim_end())).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn render_verdict(v: &ExistenceVerdict) -> String {
    match &v.verdict {
        Verdict::Exists { method, .. } => format!("r={:<3} exists ({method:?})", v.r),
        Verdict::NotExists { reason } => format!("r={:<3} none ({reason:?})", v.r),
        Verdict::Forbidden { clause } => format!("r={:<3} forbidden: {clause}", v.r),
        Verdict::Unknown => format!("r={:<3} unknown (budget exhausted)", v.r),
    }
}

fn cmd_search(q: u32, k: usize, r: Option<usize>, budget: u64, seed: u64, out: Out, records_dir: Option<PathBuf>) -> CmdResult {
    let tower = TowerCtx::for_q(q)?;
    if k == 0 {
        return Err(Failure::usage("k must be at least 1"));
    }
    if let BoundCheck::Forbidden(clause) = check_bounds(q, 2 * k, k) {
        return Err(Failure::usage(format!("forbidden by {clause}")));
    }
    let opts = SearchOptions { budget, seed, ..SearchOptions::default() };
    let dopts = DistanceOptions::with_budget(budget);
    let (header, verdicts) = match r {
        Some(r) => {
            if let BoundCheck::Forbidden(clause) = check_bounds(q, r, k) {
                return Err(Failure::usage(format!("r = {r} forbidden by {clause}")));
            }
            let p = puncture_code(&parent_spec(&tower, k)?, &tower)?;
            let v = exists_weight(&p, &tower, r, opts)?;
            (json!({"parent_len": p.len(), "puncture_dim": p.dim(), "product_dim": p.product_dim}), vec![v])
        }
        None => {
            let s = existence_scan(&tower, k, opts)?;
            (
                json!({"parent_len": s.parent_len, "puncture_dim": s.puncture_dim, "product_dim": s.product_dim, "distribution": s.distribution}),
                s.verdicts,
            )
        }
    };
    let mut records = Vec::new();
    for v in &verdicts {
        if let Some(rec) = record_from_verdict(&tower, v, dopts, seed)? {
            records.push(rec);
        }
    }
    if let Some(dir) = &records_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        for rec in &records {
            let w = rec.witness.as_ref().expect("search records carry a witness");
            let path = dir.join(format!("q{q}_k{}_r{}.json", w.k, w.r));
            fs::write(&path, format!("{}\n", pretty(rec))).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        }
    }
    match out {
        Out::Json => {
            let mut doc = json!({"schema": SCHEMA_VERSION, "q": q, "k": k, "seed": seed, "budget": budget});
            merge(&mut doc, header);
            doc["verdicts"] = serde_json::to_value(&verdicts).expect("serializable");
            doc["records"] = serde_json::to_value(&records).expect("serializable");
            println!("{}", pretty(&doc));
        }
        Out::Table => {
            println!("q={q} k={k} parent length {} puncture dimension {}", header["parent_len"], header["puncture_dim"]);
            for v in &verdicts {
                println!("{}", render_verdict(v));
            }
            for rec in &records {
                print!("{}", render_record(rec));
            }
        }
    }
    Ok(())
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(d), Value::Object(e)) = (doc, extra) {
        d.extend(e);
    }
}

fn cmd_verify(input: &PathBuf, budget: u64) -> CmdResult {
    let text = fs::read_to_string(input).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let rec: CodeRecord = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) if e.is_data() => return Err(Failure::verify(format!("spec: {e}"))),
        Err(e) => return Err(Failure::usage(format!("malformed record: {e}"))),
    };
    let outcome = verify_record(&rec, DistanceOptions::with_budget(budget))?;
    for c in &outcome.checks {
        println!("{:<20} {}  {}", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail);
    }
    if outcome.passed() {
        println!("verified {}", rec.params.label());
        Ok(())
    } else {
        let names: Vec<&str> = outcome.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::verify(format!("failed checks: {}", names.join(", "))))
    }
}

fn cmd_table(qmax: u32, budget: u64, seed: u64, out: Out) -> CmdResult {
    if qmax < 2 {
        return Err(Failure::usage("--qmax must be at least 2"));
    }
    let t = unification_table(qmax, budget, seed)?;
    match out {
        Out::Json => println!("{}", pretty(&t)),
        Out::Table => print!("{}", render_table(&t)),
    }
    Ok(())
}
