use std::collections::BTreeMap;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use serde::Serialize;

use qdim_core::gf::{count_rect_by_rank, grassmann_count, prasad_delta, CountReport, GFq, GfError};
use qdim_core::identity::{
    conclusion_chain, lemma1_chain, simplification_chain, verify_lemma1, verify_main, IdentityError, VerificationReport,
};
use qdim_core::jacquet::{brute_dim, closed_dim, middle_dim, DimensionReport, JacquetError};
use qdim_core::Exec;

use crate::{Command, Format};

pub struct RunConfig {
    pub command: Command,
    pub n: RangeInclusive<i64>,
    pub k: Option<i64>,
    pub q: Vec<u32>,
    pub limit: u64,
    pub format: Format,
}

pub enum Outcome {
    Passed,
    Failed,
}

pub enum Fatal {
    Invalid(String),
    Infeasible(String),
    Io(io::Error),
}

impl From<io::Error> for Fatal {
    fn from(e: io::Error) -> Self {
        Fatal::Io(e)
    }
}

impl From<IdentityError> for Fatal {
    fn from(e: IdentityError) -> Self {
        Fatal::Invalid(e.to_string())
    }
}

impl From<GfError> for Fatal {
    fn from(e: GfError) -> Self {
        match e {
            GfError::Infeasible { .. } => Fatal::Infeasible(e.to_string()),
            other => Fatal::Invalid(other.to_string()),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Record {
    Identity(VerificationReport),
    Dimension(DimensionReport),
    Count(CountReport),
}

impl Record {
    fn passed(&self) -> bool {
        match self {
            Record::Identity(r) => r.equal,
            Record::Dimension(r) => r.agree,
            Record::Count(r) => r.equal,
        }
    }
}

/// Flat CSV view of a record; compound values are compact JSON.
#[derive(Serialize)]
struct CsvRow {
    check: String,
    n: Option<i64>,
    k: Option<i64>,
    q: Option<u32>,
    params: String,
    passed: bool,
    left: String,
    middle: String,
    right: String,
}

impl CsvRow {
    fn new(record: &Record) -> Self {
        match record {
            Record::Identity(r) => CsvRow {
                check: r.identity.clone(),
                n: Some(r.n),
                k: r.k,
                q: None,
                params: String::new(),
                passed: r.equal,
                left: compact(&r.lhs),
                middle: String::new(),
                right: compact(&r.rhs),
            },
            Record::Dimension(r) => CsvRow {
                check: "dimension".into(),
                n: Some(r.n as i64),
                k: None,
                q: Some(r.q),
                params: compact(&r.buckets),
                passed: r.agree,
                left: r.brute.clone(),
                middle: r.middle.clone(),
                right: r.closed.clone(),
            },
            Record::Count(r) => CsvRow {
                check: r.count.into(),
                n: None,
                k: None,
                q: r.params.get("q").map(|&q| q as u32),
                params: compact(&r.params),
                passed: r.equal,
                left: r.enumerated.clone(),
                middle: String::new(),
                right: r.formula.clone(),
            },
        }
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report values serialize")
}

enum Sink<W: Write> {
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> Sink<W> {
    fn emit(&mut self, record: &Record) -> Result<(), Fatal> {
        match self {
            Sink::Json(w) => {
                serde_json::to_writer(&mut *w, record).map_err(io::Error::from)?;
                w.write_all(b"\n")?;
                w.flush()?;
            }
            Sink::Csv(w) => {
                w.serialize(CsvRow::new(record)).map_err(io::Error::from)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

struct Runner<'a, W: Write> {
    config: &'a RunConfig,
    sink: Sink<W>,
    all_passed: bool,
}

impl<W: Write> Runner<'_, W> {
    fn emit(&mut self, record: Record) -> Result<(), Fatal> {
        self.all_passed &= record.passed();
        self.sink.emit(&record)
    }

    fn ks(&self, n: i64) -> Vec<i64> {
        match self.config.k {
            Some(k) => vec![k],
            None => (0..=n).collect(),
        }
    }

    fn verify(&mut self) -> Result<(), Fatal> {
        for n in self.config.n.clone() {
            self.emit(Record::Identity(verify_main(n)?))?;
        }
        Ok(())
    }

    fn lemma1(&mut self) -> Result<(), Fatal> {
        for n in self.config.n.clone() {
            for k in self.ks(n) {
                self.emit(Record::Identity(verify_lemma1(n, k)?))?;
            }
        }
        Ok(())
    }

    fn chain(&mut self) -> Result<(), Fatal> {
        for n in self.config.n.clone() {
            let mut steps = simplification_chain(n)?;
            for k in self.ks(n) {
                steps.extend(lemma1_chain(n, k)?);
            }
            steps.extend(conclusion_chain(n)?);
            for step in steps {
                self.emit(Record::Identity(step))?;
            }
        }
        Ok(())
    }

    fn brute(&mut self) -> Result<(), Fatal> {
        for n in self.config.n.clone() {
            let n = n as usize;
            for &q in &self.config.q {
                let field = GFq::new(q)?;
                let middle = middle_dim(n, q).map_err(|e| Fatal::Invalid(e.to_string()))?;
                let closed = closed_dim(n, q);
                let report = match brute_dim(&field, n, self.config.limit, Exec::default()) {
                    Ok(b) => DimensionReport::new(&b, &middle, &closed),
                    Err(JacquetError::Gf(e)) => return Err(e.into()),
                    Err(e) => DimensionReport {
                        n,
                        q,
                        brute: format!("error: {e}"),
                        middle: middle.to_string(),
                        closed: closed.to_string(),
                        buckets: BTreeMap::new(),
                        agree: false,
                    },
                };
                self.emit(Record::Dimension(report))?;
            }
        }
        Ok(())
    }

    /// For each size `N` in the range: rank counts of `s x t` matrices with
    /// `max(s, t) = N`, trace-class differences of order `N`, and subspace
    /// counts in dimension `N`.
    fn counts(&mut self) -> Result<(), Fatal> {
        let limit = self.config.limit;
        for size in self.config.n.clone() {
            let size = size as usize;
            for &q in &self.config.q {
                let field = GFq::new(q)?;
                let qi = q as i64;
                for s in 1..=size {
                    for t in 1..=size {
                        if s.max(t) != size {
                            continue;
                        }
                        for k in 0..=s.min(t) {
                            let (e, f) = count_rect_by_rank(&field, s, t, k, limit, Exec::default())?;
                            let params = [("q", qi), ("s", s as i64), ("t", t as i64), ("k", k as i64)];
                            self.emit(Record::Count(CountReport::new("rank", &params, &e, &f)))?;
                        }
                    }
                }
                for k in 0..=size {
                    let m = size - k;
                    let params = [("q", qi), ("m", m as i64), ("k", k as i64)];
                    let report = match prasad_delta(&field, m, k, limit, Exec::default()) {
                        Ok((e, f)) => CountReport::new("trace-difference", &params, &e, &f),
                        Err(e @ GfError::Infeasible { .. }) => return Err(e.into()),
                        Err(e) => {
                            let mut r =
                                CountReport::new("trace-difference", &params, &BigInt::from(0), &BigInt::from(0));
                            r.enumerated = format!("error: {e}");
                            r.equal = false;
                            r
                        }
                    };
                    self.emit(Record::Count(report))?;
                }
                for m in 0..=size {
                    let (e, f) = grassmann_count(&field, size, m, limit)?;
                    let params = [("q", qi), ("n", size as i64), ("m", m as i64)];
                    self.emit(Record::Count(CountReport::new("grassmannian", &params, &e, &f)))?;
                }
            }
        }
        Ok(())
    }
}

/// Runs the configured checks, streaming each report as soon as it is ready.
pub fn run<W: Write>(config: &RunConfig, out: W) -> Result<Outcome, Fatal> {
    let sink = match config.format {
        Format::Json => Sink::Json(out),
        Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
    };
    let mut runner = Runner { config, sink, all_passed: true };
    match config.command {
        Command::Verify => runner.verify()?,
        Command::Lemma1 => runner.lemma1()?,
        Command::Chain => runner.chain()?,
        Command::Brute => runner.brute()?,
        Command::Counts => runner.counts()?,
        Command::All => {
            runner.verify()?;
            runner.lemma1()?;
            runner.chain()?;
            runner.brute()?;
            runner.counts()?;
        }
    }
    Ok(if runner.all_passed { Outcome::Passed } else { Outcome::Failed })
}
