//! File formats: phase tables (JSON, CSV), envelopes (CSV plus a JSON
//! sidecar holding the period), line spectra, illuminator designs and
//! intensity traces.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss_phase::PhaseSequence;
use crate::numtheory::Int;
use crate::phase::ExactPhase;
use crate::tai::TaiDesign;
use crate::talbot_field::{LineSpectrum, PeriodicEnvelope};
use crate::talbot_s::Sign;

/// Serialized form of a phase sequence tied to a Talbot order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub p: Int,
    pub q: Int,
    pub sigma: Sign,
    pub s: Int,
    pub xi0: Option<ExactPhase>,
    pub phases: Vec<ExactPhase>,
    pub complex: Vec<[f64; 2]>,
    pub gain: f64,
}

impl PhaseRecord {
    pub fn from_sequence(seq: &PhaseSequence) -> Result<Self> {
        let (order, s) = match (seq.order(), seq.s()) {
            (Some(o), Some(s)) => (o, s),
            _ => return Err(Error::Shape("sequence has no Talbot order attached".into())),
        };
        let phases = seq.exact().ok_or_else(|| Error::Shape("sequence has no exact phases".into()))?.to_vec();
        Ok(PhaseRecord {
            p: order.p(),
            q: order.q(),
            sigma: order.sigma(),
            s,
            xi0: seq.xi0(),
            phases,
            complex: seq.entries().iter().map(|z| [z.re, z.im]).collect(),
            gain: seq.gain(),
        })
    }
}

pub fn phases_to_json(seq: &PhaseSequence) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PhaseRecord::from_sequence(seq)?)?)
}

pub fn phases_from_json(text: &str) -> Result<PhaseRecord> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Serialize, Deserialize)]
struct PhaseRow {
    n: usize,
    num: Int,
    den: Int,
    re: f64,
    im: f64,
}

/// Columns `n,num,den,re,im`; the phase of entry `n` is `π·num/den`.
pub fn phases_to_csv(seq: &PhaseSequence) -> Result<String> {
    let exact = seq.exact().ok_or_else(|| Error::Shape("sequence has no exact phases".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for (n, (p, z)) in exact.iter().zip(seq.entries()).enumerate() {
        w.serialize(PhaseRow { n, num: p.num(), den: p.den(), re: z.re, im: z.im })?;
    }
    into_string(w)
}

/// Reads the exact phases back from [`phases_to_csv`] output.
pub fn phases_from_csv(text: &str) -> Result<Vec<ExactPhase>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<PhaseRow>().enumerate() {
        let row = row?;
        if row.n != i {
            return Err(Error::Parse(format!("row {i} has index {}", row.n)));
        }
        out.push(ExactPhase::new(row.num, row.den)?);
    }
    Ok(out)
}

/// Envelope sidecar: the period `T` and the sample count `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub period: f64,
    pub samples: usize,
}

#[derive(Serialize, Deserialize)]
struct EnvelopeRow {
    k: usize,
    t: f64,
    re: f64,
    im: f64,
}

/// Columns `k,t,re,im`.
pub fn envelope_to_csv(env: &PeriodicEnvelope) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (k, z) in env.samples().iter().enumerate() {
        w.serialize(EnvelopeRow { k, t: env.time(k), re: z.re, im: z.im })?;
    }
    into_string(w)
}

/// Parses `k,t,re,im`. Without a sidecar the period is `N·t_1`.
pub fn envelope_from_csv(text: &str, sidecar: Option<Sidecar>) -> Result<PeriodicEnvelope> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut samples = Vec::new();
    let mut t1 = None;
    for (i, row) in r.deserialize::<EnvelopeRow>().enumerate() {
        let row = row?;
        if row.k != i {
            return Err(Error::Parse(format!("row {i} has sample index {}", row.k)));
        }
        if i == 1 {
            t1 = Some(row.t);
        }
        samples.push(Complex64::new(row.re, row.im));
    }
    let period = match sidecar {
        Some(sc) => {
            if sc.samples != samples.len() {
                return Err(Error::Shape(format!(
                    "sidecar declares {} samples, file has {}",
                    sc.samples,
                    samples.len()
                )));
            }
            sc.period
        }
        None => match t1 {
            Some(t) => t * samples.len() as f64,
            None => return Err(Error::Parse("cannot infer the period from fewer than 2 samples".into())),
        },
    };
    PeriodicEnvelope::new(period, samples)
}

/// `input.csv` pairs with `input.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes the CSV and its sidecar.
pub fn write_envelope(path: &Path, env: &PeriodicEnvelope) -> Result<()> {
    fs::write(path, envelope_to_csv(env)?)?;
    let sc = Sidecar { period: env.period(), samples: env.len() };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&sc)?)?;
    Ok(())
}

/// Reads an envelope CSV, using the sidecar when present.
pub fn read_envelope(path: &Path) -> Result<PeriodicEnvelope> {
    let text = fs::read_to_string(path)?;
    let sc_path = sidecar_path(path);
    let sidecar = if sc_path.exists() { Some(serde_json::from_str(&fs::read_to_string(sc_path)?)?) } else { None };
    envelope_from_csv(&text, sidecar)
}

#[derive(Serialize, Deserialize)]
struct LineRow {
    n: Int,
    re: f64,
    im: f64,
}

/// Columns `n,re,im`, lines in increasing harmonic order.
pub fn spectrum_to_csv(spec: &LineSpectrum) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (n, c) in spec.lines() {
        w.serialize(LineRow { n, re: c.re, im: c.im })?;
    }
    into_string(w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaiRecord {
    pub p: Int,
    pub q: Int,
    pub sigma: Sign,
    pub s: Int,
    /// Bin width as a fraction of the period, `"1/q"`.
    pub bin_width_fraction: String,
    pub levels: Vec<ExactPhase>,
}

pub fn tai_design_to_json(design: &TaiDesign) -> Result<String> {
    let o = design.order();
    let levels = design.phases().exact().ok_or_else(|| Error::Shape("design has no exact levels".into()))?.to_vec();
    let rec = TaiRecord {
        p: o.p(),
        q: o.q(),
        sigma: o.sigma(),
        s: design.s(),
        bin_width_fraction: format!("1/{}", o.q()),
        levels,
    };
    Ok(serde_json::to_string_pretty(&rec)?)
}

pub fn tai_design_from_json(text: &str) -> Result<TaiRecord> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Serialize)]
struct TraceRow {
    t: f64,
    abs: f64,
    arg: f64,
}

/// Columns `t,abs,arg` of an envelope.
pub fn trace_to_csv(env: &PeriodicEnvelope) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (k, z) in env.samples().iter().enumerate() {
        w.serialize(TraceRow { t: env.time(k), abs: z.norm(), arg: z.arg() })?;
    }
    into_string(w)
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}
