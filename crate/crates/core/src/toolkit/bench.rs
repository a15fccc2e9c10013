use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::{generate_instance, GeneratorSpec, ToolkitError};
use crate::engine::{Cost, Engine};
use crate::Instance;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 11] = [
    "d",
    "n",
    "m",
    "g",
    "s",
    "profile",
    "seed",
    "distance",
    "memo_entries",
    "predicted_bound",
    "wall_time_ns",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub g: usize,
    pub s: usize,
    pub profile: String,
    pub seed: u64,
    pub distance: Cost,
    pub memo_entries: usize,
    pub predicted_bound: u64,
    pub wall_time_ns: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    /// One JSON object per line.
    JsonLines,
}

/// Times one generated instance: median wall time over `repeats` fresh runs.
pub fn bench_instance(spec: &GeneratorSpec, repeats: usize) -> Result<BenchRecord, ToolkitError> {
    let (source, target) = generate_instance(spec)?;
    let instance = Instance::new(&source, &target)?;
    let stats = instance.stats();

    let mut times = Vec::with_capacity(repeats.max(1));
    let mut outcome = (Cost::Unreachable, 0);
    for _ in 0..repeats.max(1) {
        let mut engine = Engine::new(&instance.source, &instance.target);
        let start = Instant::now();
        let distance = engine.distance();
        times.push(start.elapsed().as_nanos() as u64);
        outcome = (distance, engine.memo_entries());
    }
    times.sort_unstable();
    let (distance, memo_entries) = outcome;

    let predicted_bound = stats.predicted_state_bound;
    if memo_entries as u64 > predicted_bound {
        return Err(ToolkitError::BoundViolation {
            memo_entries,
            bound: predicted_bound,
        });
    }
    Ok(BenchRecord {
        d: spec.d,
        n: stats.n,
        m: stats.m,
        g: stats.g,
        s: stats.s,
        profile: spec.profile.to_string(),
        seed: spec.seed,
        distance,
        memo_entries,
        predicted_bound,
        wall_time_ns: times[times.len() / 2],
    })
}

/// Benchmarks every spec in order, streaming successful records to `sink`.
///
/// A failing instance yields an `Err` entry and the sweep continues.
pub fn run_bench<W: Write>(
    specs: &[GeneratorSpec],
    repeats: usize,
    format: OutputFormat,
    sink: W,
) -> Result<Vec<Result<BenchRecord, ToolkitError>>, ToolkitError> {
    let mut sink = RecordSink::new(format, sink)?;
    let mut records = Vec::with_capacity(specs.len());
    for spec in specs {
        let record = bench_instance(spec, repeats);
        if let Ok(r) = &record {
            sink.write(r)?;
        }
        records.push(record);
    }
    sink.flush()?;
    Ok(records)
}

enum RecordSink<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json(W),
}

impl<W: Write> RecordSink<W> {
    fn new(format: OutputFormat, out: W) -> Result<Self, ToolkitError> {
        Ok(match format {
            OutputFormat::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
                w.write_record(CSV_COLUMNS)?;
                RecordSink::Csv(Box::new(w))
            }
            OutputFormat::JsonLines => RecordSink::Json(out),
        })
    }

    fn write(&mut self, record: &BenchRecord) -> Result<(), ToolkitError> {
        match self {
            RecordSink::Csv(w) => w.serialize(record)?,
            RecordSink::Json(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), ToolkitError> {
        match self {
            RecordSink::Csv(w) => w.flush()?,
            RecordSink::Json(w) => w.flush()?,
        }
        Ok(())
    }
}
