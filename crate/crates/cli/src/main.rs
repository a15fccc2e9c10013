use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use swapins::oracle::{matching_distance, ucs_distance, OracleError, DEFAULT_COMBINATION_BUDGET, DEFAULT_STATE_BUDGET};
use swapins::toolkit::{exhaustive_selftest, run_bench, GeneratorSpec, OutputFormat, Profile};
use swapins::{Cost, Instance, Script, Weight};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_UNREACHABLE: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

/// Swap-insert correction distance between two strings.
///
/// Exit status: 0 finite distance or oracle agreement, 1 usage or input
/// error, 2 unreachable, 3 oracle budget exceeded, 4 oracle disagreement.
#[derive(Parser)]
#[command(name = "swapins", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance from SOURCE to TARGET, optionally with an optimal script.
    Dist(DistArgs),
    /// Compare the engine against the brute-force oracles.
    Oracle(OracleArgs),
    /// Imbalance measures and the memo-size bound of an instance.
    Stats(StatsArgs),
    /// Time the engine on generated instances; CSV (or JSON lines) on stdout.
    Bench(BenchArgs),
    /// Exhaustive engine/oracle/script check over a small alphabet.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Source string (a file path with --files).
    #[arg(required_unless_present = "stdin")]
    source: Option<String>,
    /// Target string (a file path with --files).
    #[arg(required_unless_present = "stdin")]
    target: Option<String>,
    /// Read both strings from files; one trailing newline is stripped.
    #[arg(long, conflicts_with = "stdin")]
    files: bool,
    /// Read the source from the first line of stdin and the target from the second.
    #[arg(long)]
    stdin: bool,
    /// Treat input as raw bytes instead of unicode scalar values.
    #[arg(long)]
    bytes: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ops {
    /// Insertions and adjacent swaps from SOURCE to the longer TARGET.
    SwapInsert,
    /// Deletions and adjacent swaps from the longer SOURCE to TARGET.
    SwapDelete,
}

impl Ops {
    fn name(self) -> &'static str {
        match self {
            Ops::SwapInsert => "swap-insert",
            Ops::SwapDelete => "swap-delete",
        }
    }
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "swap-insert")]
    ops: Ops,
    /// Print an optimal script, one operation per line.
    #[arg(long)]
    script: bool,
    #[arg(long)]
    json: bool,
    /// Insertion cost: an integer, a fraction a/b or a decimal.
    #[arg(long, value_parser = parse_weight)]
    c_ins: Option<Weight>,
    /// Swap cost: an integer, a fraction a/b or a decimal.
    #[arg(long, value_parser = parse_weight)]
    c_swap: Option<Weight>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Ucs,
    Matching,
    Both,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "both")]
    kind: OracleKind,
    /// Search budget: stored strings for ucs, enumerated matchings for matching.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// zero-g, balanced-g, max-g or custom:g1,g2,...
    #[arg(long, default_value = "balanced-g")]
    profile: Profile,
    /// Comma-separated source lengths.
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    sizes: Vec<usize>,
    /// Alphabet size.
    #[arg(short, long, default_value_t = 4)]
    d: usize,
    /// Target length is n + round(n * extra).
    #[arg(long, default_value_t = 0.5)]
    extra: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timed runs per instance; the median is reported.
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// JSON lines instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    #[arg(long, default_value_t = 6)]
    max_m: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long)]
    json: bool,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    let bad = || format!("invalid weight {s:?}");
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    let w = if let Some((a, b)) = s.split_once('/') {
        let b = parse(b)?;
        if b == 0 {
            return Err(bad());
        }
        Weight::new(parse(a)?, b)
    } else if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let whole = if whole.is_empty() { 0 } else { parse(whole)? };
        let num = whole.checked_mul(scale).and_then(|w| w.checked_add(parse(frac).ok()?)).ok_or_else(bad)?;
        Weight::new(num, scale)
    } else {
        Weight::from_integer(parse(s)?)
    };
    Ok(w)
}

fn read_inputs(args: &InputArgs) -> Result<(Vec<u8>, Vec<u8>)> {
    if args.stdin {
        let mut all = String::new();
        io::stdin().read_to_string(&mut all).context("reading stdin")?;
        let mut lines = all.lines();
        let source = lines.next().ok_or_else(|| anyhow!("stdin: missing source line"))?;
        let target = lines.next().ok_or_else(|| anyhow!("stdin: missing target line"))?;
        return Ok((source.as_bytes().to_vec(), target.as_bytes().to_vec()));
    }
    let (source, target) = (args.source.clone().unwrap(), args.target.clone().unwrap());
    if args.files {
        let read = |path: &str| -> Result<Vec<u8>> {
            let mut raw = std::fs::read(PathBuf::from(path)).with_context(|| format!("reading {path}"))?;
            if raw.ends_with(b"\n") {
                raw.pop();
                if raw.ends_with(b"\r") {
                    raw.pop();
                }
            }
            Ok(raw)
        };
        return Ok((read(&source)?, read(&target)?));
    }
    Ok((source.into_bytes(), target.into_bytes()))
}

fn symbols(raw: &[u8], bytes: bool) -> Result<Vec<char>> {
    if bytes {
        Ok(raw.iter().map(|&b| char::from(b)).collect())
    } else {
        Ok(std::str::from_utf8(raw).context("input is not valid UTF-8 (try --bytes)")?.chars().collect())
    }
}

fn load(args: &InputArgs) -> Result<(Vec<char>, Vec<char>)> {
    let (s, l) = read_inputs(args)?;
    Ok((symbols(&s, args.bytes)?, symbols(&l, args.bytes)?))
}

fn echo(s: &[char], bytes: bool) -> Value {
    if bytes {
        json!(s.iter().map(|&c| c as u32).collect::<Vec<_>>())
    } else {
        json!(s.iter().collect::<String>())
    }
}

fn emit(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn show_symbol(ch: char, bytes: bool) -> String {
    if bytes {
        format!("0x{:02x}", ch as u32)
    } else {
        ch.to_string()
    }
}

fn print_script(script: &Script<char>, bytes: bool) {
    for op in &script.ops {
        let line = match *op {
            swapins::EditOp::Insert { position, symbol } => format!("ins {position} {}", show_symbol(symbol, bytes)),
            swapins::EditOp::Delete { position, symbol } => format!("del {position} {}", show_symbol(symbol, bytes)),
            swapins::EditOp::Swap { position } => format!("swap {position}"),
        };
        println!("{line}");
    }
}

fn dist(args: DistArgs) -> Result<u8> {
    let (source, target) = load(&args.input)?;
    let bytes = args.input.bytes;
    let weighted = args.c_ins.is_some() || args.c_swap.is_some();
    if weighted && args.ops == Ops::SwapDelete {
        bail!("--c-ins/--c-swap apply to swap-insert only");
    }

    let (result, script) = match args.ops {
        Ops::SwapInsert => {
            let instance = Instance::new(&source, &target)?;
            if args.script {
                match instance.distance_with_script() {
                    Ok((result, script)) => (result, Some(script)),
                    Err(_) => (instance.distance(), None),
                }
            } else {
                (instance.distance(), None)
            }
        }
        Ops::SwapDelete => {
            let instance = Instance::new(&target, &source)?;
            let (result, script) = instance.swap_delete_distance();
            (result, script.filter(|_| args.script))
        }
    };
    let weights = weighted.then(|| {
        let c_ins = args.c_ins.unwrap_or(Weight::from_integer(1));
        let c_swap = args.c_swap.unwrap_or(Weight::from_integer(1));
        let instance = Instance::new(&source, &target).expect("indexed above");
        (c_ins, c_swap, instance.weighted_distance(c_ins, c_swap))
    });

    if args.json {
        let mut report = json!({
            "source": echo(&source, bytes),
            "target": echo(&target, bytes),
            "bytes": bytes,
            "ops": args.ops.name(),
            "distance": result.distance,
            "memo_entries": result.memo_entries,
        });
        if let Some((c_ins, c_swap, w)) = weights {
            report["c_ins"] = json!(c_ins.to_string());
            report["c_swap"] = json!(c_swap.to_string());
            report["weighted_distance"] = match w {
                Cost::Finite(v) => json!(v.to_string()),
                Cost::Unreachable => Value::Null,
            };
        }
        if args.script {
            report["script"] = match &script {
                Some(s) => json!(s.ops.iter().map(|op| op_json(op, bytes)).collect::<Vec<_>>()),
                None => Value::Null,
            };
            report["positions"] = json!("1-based, into the working string at the time of each operation");
        }
        emit(&report)?;
    } else {
        match &weights {
            Some((_, _, w)) => println!("{w}"),
            None => println!("{}", result.distance),
        }
        if let Some(script) = &script {
            print_script(script, bytes);
        }
    }
    Ok(if result.distance.is_finite() { EXIT_OK } else { EXIT_UNREACHABLE })
}

fn op_json(op: &swapins::EditOp<char>, bytes: bool) -> Value {
    let mut v = serde_json::to_value(op).expect("plain data");
    if bytes {
        if let swapins::EditOp::Insert { symbol, .. } | swapins::EditOp::Delete { symbol, .. } = op {
            v["symbol"] = json!(*symbol as u32);
        }
    }
    v
}

fn oracle(args: OracleArgs) -> Result<u8> {
    let (source, target) = load(&args.input)?;
    let engine = Instance::new(&source, &target)?.distance().distance;
    let mut values: Vec<(&str, Result<Cost, OracleError>)> = Vec::new();
    if matches!(args.kind, OracleKind::Ucs | OracleKind::Both) {
        let budget = args.budget.map_or(DEFAULT_STATE_BUDGET, |b| b as usize);
        values.push(("ucs", ucs_distance(&source, &target, budget)));
    }
    if matches!(args.kind, OracleKind::Matching | OracleKind::Both) {
        let budget = args.budget.unwrap_or(DEFAULT_COMBINATION_BUDGET);
        values.push(("matching", matching_distance(&source, &target, budget)));
    }

    let too_large = values.iter().any(|(_, v)| v.is_err());
    let agree = values.iter().all(|(_, v)| v.as_ref().map_or(true, |&c| c == engine));
    let code = if !agree {
        EXIT_DISAGREE
    } else if too_large {
        EXIT_TOO_LARGE
    } else {
        EXIT_OK
    };

    if args.json {
        let mut report = json!({
            "source": echo(&source, args.input.bytes),
            "target": echo(&target, args.input.bytes),
            "engine": engine,
            "agree": agree && !too_large,
        });
        for (name, v) in &values {
            report[*name] = match v {
                Ok(c) => json!(c),
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
        emit(&report)?;
    } else {
        println!("engine\t{engine}");
        for (name, v) in &values {
            match v {
                Ok(c) => println!("{name}\t{c}"),
                Err(e) => println!("{name}\t{e}"),
            }
        }
        if !agree {
            eprintln!("oracle disagreement");
        }
    }
    Ok(code)
}

fn stats(args: StatsArgs) -> Result<u8> {
    let (source, target) = load(&args.input)?;
    let instance = Instance::new(&source, &target)?;
    let st = instance.stats();
    if args.json {
        let mut report = serde_json::to_value(&st)?;
        report["symbols"] = echo(instance.alphabet.symbols(), args.input.bytes);
        emit(&report)?;
    } else {
        println!("n\t{}", st.n);
        println!("m\t{}", st.m);
        println!("d\t{}", st.d);
        println!("g\t{}", st.g);
        println!("s\t{}", st.s);
        println!("feasible\t{}", st.feasible);
        println!("predicted_state_bound\t{}", st.predicted_state_bound);
        println!("symbol\tn_a\tm_a\tg_a");
        for (k, &ch) in instance.alphabet.symbols().iter().enumerate() {
            println!(
                "{}\t{}\t{}\t{}",
                show_symbol(ch, args.input.bytes),
                st.source_counts[k],
                st.target_counts[k],
                st.imbalance[k]
            );
        }
    }
    Ok(EXIT_OK)
}

fn bench(args: BenchArgs) -> Result<u8> {
    if !(args.extra >= 0.0 && args.extra.is_finite()) {
        bail!("--extra must be a non-negative number");
    }
    let specs: Vec<GeneratorSpec> = args
        .sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let m = n + (n as f64 * args.extra).round() as usize;
            GeneratorSpec::new(args.d, n, m, args.profile.clone(), args.seed.wrapping_add(k as u64))
        })
        .collect();
    let format = if args.json { OutputFormat::JsonLines } else { OutputFormat::Csv };
    let records = run_bench(&specs, args.repeats, format, io::stdout().lock())?;
    let mut failed = false;
    for (spec, record) in specs.iter().zip(&records) {
        if let Err(e) = record {
            eprintln!("n={} m={}: {e}", spec.n, spec.m);
            failed = true;
        }
    }
    Ok(if failed { EXIT_USAGE } else { EXIT_OK })
}

fn selftest(args: SelftestArgs) -> Result<u8> {
    let report = exhaustive_selftest(args.max_n, args.max_m, args.alphabet);
    if args.json {
        emit(&json!({
            "instances": report.instances,
            "failures": report.failures,
            "passed": report.passed(),
        }))?;
    } else {
        for f in &report.failures {
            println!("FAIL {f}");
        }
        println!(
            "{} instances, {} failures",
            report.instances,
            report.failures.len()
        );
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_DISAGREE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let outcome = match cli.command {
        Command::Dist(a) => dist(a),
        Command::Oracle(a) => oracle(a),
        Command::Stats(a) => stats(a),
        Command::Bench(a) => bench(a),
        Command::Selftest(a) => selftest(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("3"), Ok(Weight::from_integer(3)));
        assert_eq!(parse_weight("2/4"), Ok(Weight::new(1, 2)));
        assert_eq!(parse_weight("1.25"), Ok(Weight::new(5, 4)));
        assert_eq!(parse_weight(".5"), Ok(Weight::new(1, 2)));
        for bad in ["", "1/0", "-1", "1.", "a", "1.2.3"] {
            assert!(parse_weight(bad).is_err(), "{bad}");
        }
    }
}
