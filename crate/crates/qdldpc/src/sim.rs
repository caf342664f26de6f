//! Monte Carlo logical-error-rate estimation over the depolarizing channel.
//!
//! Every trial's randomness is a pure function of (master seed, p index,
//! trial index), and the stopping rule scans trial outcomes in index order,
//! so results are identical for any number of worker threads. Trials run in
//! fixed batches through rayon; outcomes past the stopping trial within the
//! final batch are discarded.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bp4::{Bp4Decoder, BpConfig, Decimation};
use crate::camel::ensemble_with;
use crate::channel::{sample_error, syndrome, DepolarizingParams, PauliErrorVector};
use crate::codes::CssCodePair;
use crate::error::{Error, Result};
use crate::f2linalg::RowSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderKind {
    PlainBp4,
    Camel,
    Genie,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::PlainBp4 => "bp4",
            DecoderKind::Camel => "camel",
            DecoderKind::Genie => "genie",
        })
    }
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<DecoderKind> {
        match s {
            "bp4" => Ok(DecoderKind::PlainBp4),
            "camel" => Ok(DecoderKind::Camel),
            "genie" => Ok(DecoderKind::Genie),
            other => Err(Error::BadConfig(format!("unknown decoder {other:?}"))),
        }
    }
}

/// Sweep configuration. `record_timing` controls whether measured wall time
/// reaches the CSV; leaving it off keeps output bytes reproducible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub p_values: Vec<f64>,
    pub target_logical_errors: u64,
    pub max_trials: u64,
    pub decoder: DecoderKind,
    pub bp: BpConfig,
    pub seed: u64,
    pub record_timing: bool,
}

impl SweepConfig {
    pub fn new(decoder: DecoderKind, p_values: Vec<f64>, seed: u64) -> SweepConfig {
        SweepConfig {
            p_values,
            target_logical_errors: 100,
            max_trials: 10_000_000,
            decoder,
            bp: BpConfig::default(),
            seed,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_logical_errors < 1 {
            return Err(Error::BadConfig("target_logical_errors must be at least 1".into()));
        }
        if self.max_trials < self.target_logical_errors {
            return Err(Error::BadConfig("max_trials must cover the error target".into()));
        }
        for &p in &self.p_values {
            if !(0.0..1.0).contains(&p) {
                return Err(Error::BadProbability(p));
            }
        }
        self.bp.validate()
    }
}

/// One measured sweep point. `censored` marks points that hit `max_trials`
/// before collecting the target number of logical errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LerPoint {
    pub p: f64,
    pub trials: u64,
    pub logical_errors: u64,
    pub ler: f64,
    pub ci95: f64,
    pub seed: u64,
    pub wall_seconds: f64,
    pub censored: bool,
}

/// A CSV row: the point plus its provenance labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LerRow {
    pub code_id: String,
    pub decoder: DecoderKind,
    pub point: LerPoint,
}

/// Precomputed row spaces of H_X and H_Z for the residual membership test.
pub struct LogicalErrorTester {
    hx_space: RowSpace,
    hz_space: RowSpace,
    n: usize,
}

impl LogicalErrorTester {
    pub fn new(code: &CssCodePair) -> LogicalErrorTester {
        LogicalErrorTester {
            hx_space: RowSpace::new(code.hx()),
            hz_space: RowSpace::new(code.hz()),
            n: code.n(),
        }
    }

    /// A trial is a logical error unless the decoder produced an estimate
    /// whose residual against the true error is a stabilizer: X part in the
    /// row space of H_X and Z part in the row space of H_Z. Decoder failure
    /// (no estimate) always counts as a logical error.
    pub fn is_logical_error(
        &self,
        e: &PauliErrorVector,
        estimate: Option<&PauliErrorVector>,
    ) -> Result<bool> {
        let Some(est) = estimate else {
            return Ok(true);
        };
        if e.len() != self.n || est.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: if e.len() != self.n { e.len() } else { est.len() },
            });
        }
        let residual = e.add(est)?;
        Ok(!(self.hx_space.contains_bits(&residual.x_part())?
            && self.hz_space.contains_bits(&residual.z_part())?))
    }
}

/// Convenience wrapper building the row spaces on the fly.
pub fn is_logical_error(
    code: &CssCodePair,
    e: &PauliErrorVector,
    estimate: Option<&PauliErrorVector>,
) -> Result<bool> {
    LogicalErrorTester::new(code).is_logical_error(e, estimate)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-point channel seed: a pure function of the master seed and the index
/// of p in the sweep grid.
fn point_seed(master: u64, p_index: usize) -> u64 {
    splitmix64(master ^ splitmix64(p_index as u64 + 1))
}

const BATCH: u64 = 4096;

/// Runs Monte Carlo trials at `cfg.p_values[p_index]` until the target
/// number of logical errors or `max_trials`, whichever comes first.
pub fn run_point(code: &CssCodePair, p_index: usize, cfg: &SweepConfig) -> Result<LerPoint> {
    cfg.validate()?;
    let &p = cfg
        .p_values
        .get(p_index)
        .ok_or_else(|| Error::BadConfig(format!("p index {p_index} out of range")))?;
    let params = DepolarizingParams::new(p, point_seed(cfg.seed, p_index))?;
    let decoder = Bp4Decoder::new(code);
    let tester = LogicalErrorTester::new(code);
    let assembled = code.assembled_column();
    let start = Instant::now();

    let run_trial = |scratch: &mut crate::bp4::DecoderScratch, trial: u64| -> Result<bool> {
        let e = sample_error(code.n(), &params, trial);
        let s = syndrome(code, &e)?;
        let estimate = match cfg.decoder {
            DecoderKind::PlainBp4 => {
                Some(decoder.decode_with_scratch(&s, p, &cfg.bp, None, scratch)?.estimate)
            }
            DecoderKind::Genie => {
                let decim = Decimation { qubit: assembled, label: e.symbol(assembled) };
                Some(decoder.decode_with_scratch(&s, p, &cfg.bp, Some(decim), scratch)?.estimate)
            }
            DecoderKind::Camel => {
                let out = ensemble_with(&decoder, assembled, &s, p, &cfg.bp, scratch)?;
                out.chosen().cloned()
            }
        };
        tester.is_logical_error(&e, estimate.as_ref())
    };

    let mut trials = 0u64;
    let mut errors = 0u64;
    'outer: while trials < cfg.max_trials && errors < cfg.target_logical_errors {
        let hi = (trials + BATCH).min(cfg.max_trials);
        let outcomes: Vec<Result<bool>> = (trials..hi)
            .into_par_iter()
            .map_init(|| decoder.scratch(), |scratch, t| run_trial(scratch, t))
            .collect();
        for outcome in outcomes {
            trials += 1;
            if outcome? {
                errors += 1;
                if errors == cfg.target_logical_errors {
                    break 'outer;
                }
            }
        }
    }

    let ler = errors as f64 / trials as f64;
    let ci95 = 1.96 * (ler * (1.0 - ler) / trials as f64).sqrt();
    Ok(LerPoint {
        p,
        trials,
        logical_errors: errors,
        ler,
        ci95,
        seed: cfg.seed,
        wall_seconds: if cfg.record_timing { start.elapsed().as_secs_f64() } else { 0.0 },
        censored: errors < cfg.target_logical_errors,
    })
}

/// Runs every point of the sweep in grid order.
pub fn run_sweep(code: &CssCodePair, cfg: &SweepConfig) -> Result<Vec<LerPoint>> {
    (0..cfg.p_values.len()).map(|i| run_point(code, i, cfg)).collect()
}

pub const CSV_HEADER: &str = "code_id,decoder,p,trials,logical_errors,ler,ci95,seed,wall_seconds";

/// Renders rows as CSV, sorted by (decoder, descending p). Pure function of
/// its input: rewriting the same rows is byte-identical.
pub fn results_csv(rows: &[LerRow]) -> String {
    let mut sorted: Vec<&LerRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.decoder
            .to_string()
            .cmp(&b.decoder.to_string())
            .then(b.point.p.total_cmp(&a.point.p))
    });
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in sorted {
        let p = &row.point;
        out.push_str(&format!(
            "{},{},{},{},{},{:e},{:e},{},{:.3}\n",
            row.code_id,
            row.decoder,
            p.p,
            p.trials,
            p.logical_errors,
            p.ler,
            p.ci95,
            p.seed,
            p.wall_seconds
        ));
    }
    out
}

pub fn write_results(rows: &[LerRow], path: &Path) -> Result<()> {
    std::fs::write(path, results_csv(rows))?;
    Ok(())
}
