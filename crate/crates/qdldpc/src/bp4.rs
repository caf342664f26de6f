//! Quaternary sum-product belief propagation over the stabilizer Tanner
//! graph, flooding schedule, with optional decimation of one variable node.
//!
//! Messages live in the probability domain. Each check row carries a single
//! GF(4) entry type (ω for H_X rows, ω̄ for H_Z rows), so a variable→check
//! message collapses to one scalar per edge: the probability that the
//! variable's error anticommutes with the check entry. Check→variable
//! messages then take exactly two values, one for commuting and one for
//! anticommuting candidates.

use crate::channel::{anticommute, PauliErrorVector, Syndrome, GF4_X, GF4_Z};
use crate::codes::CssCodePair;
use crate::error::{Error, Result};

/// Decoder knobs. `message_floor` is the multiplicative probability clamp;
/// `early_stop` ends decoding at the first syndrome-matching hard decision.
/// Message-update order within one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Schedule {
    /// All checks update simultaneously from the previous variable messages.
    Flooding,
    /// The H_X check layer updates, variables refresh, then the H_Z layer.
    AlternatingXz,
    /// Checks update one at a time against the running posteriors.
    SerialCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BpConfig {
    pub max_iters: usize,
    pub message_floor: f64,
    pub early_stop: bool,
    /// Fraction of the previous check→variable message mixed into the new
    /// one; 0 disables damping.
    pub damping: f64,
    pub schedule: Schedule,
}

impl Default for BpConfig {
    fn default() -> Self {
        // The 3e-3 clamp keeps messages short of saturation within the
        // 15-iteration budget; it was calibrated once against the genie
        // decoding curve and is not per-code tuning.
        BpConfig {
            max_iters: 15,
            message_floor: 3e-3,
            early_stop: true,
            damping: 0.0,
            schedule: Schedule::Flooding,
        }
    }
}

impl BpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::BadConfig("max_iters must be at least 1".into()));
        }
        if !(self.message_floor > 0.0 && self.message_floor < 0.25) {
            return Err(Error::BadConfig("message_floor must lie in (0, 0.25)".into()));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::BadConfig("damping must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

/// Fixes one variable node's prior to a point mass on `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decimation {
    pub qubit: usize,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub estimate: PauliErrorVector,
    /// True iff the returned estimate reproduces the input syndrome.
    pub converged: bool,
    pub iterations_used: usize,
}

/// Channel prior over (I, Y, X, Z) labels for one qubit, floored and
/// normalized; a decimated qubit gets the floored indicator of its label.
pub fn prior_vector(p: f64, decim: Option<&Decimation>, qubit: usize, floor: f64) -> [f64; 4] {
    let mut v = match decim {
        Some(d) if d.qubit == qubit => {
            let mut v = [0.0; 4];
            v[d.label as usize] = 1.0;
            v
        }
        _ => [1.0 - p, p / 3.0, p / 3.0, p / 3.0],
    };
    for x in v.iter_mut() {
        *x = x.max(floor);
    }
    let sum: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= sum;
    }
    v
}

/// Raw check-node update: given the anticommute probabilities η of all
/// neighbors and the check's syndrome bit, returns per neighbor the message
/// pair (commuting value, anticommuting value):
/// ½(1 ± (−1)^s · Π_{j'≠j} (1 − 2η_{j'})).
pub fn check_update(incoming: &[f64], syndrome_bit: u8) -> Vec<(f64, f64)> {
    let sign = if syndrome_bit == 0 { 1.0 } else { -1.0 };
    let deg = incoming.len();
    let mut fwd = vec![1.0; deg + 1];
    for (i, &eta) in incoming.iter().enumerate() {
        fwd[i + 1] = fwd[i] * (1.0 - 2.0 * eta);
    }
    let mut out = vec![(0.0, 0.0); deg];
    let mut suffix = 1.0;
    for i in (0..deg).rev() {
        let q = sign * fwd[i] * suffix;
        out[i] = (0.5 * (1.0 + q), 0.5 * (1.0 - q));
        suffix *= 1.0 - 2.0 * incoming[i];
    }
    out
}

/// Edge-level message structure of a CSS pair, reusable across decodes.
/// Checks are ordered H_X rows first (entry ω), then H_Z rows (entry ω̄).
#[derive(Debug, Clone)]
pub struct Bp4Decoder {
    n: usize,
    rows_x: usize,
    rows_z: usize,
    check_ptr: Vec<usize>,
    edge_var: Vec<u32>,
    edge_entry: Vec<u8>,
    var_ptr: Vec<usize>,
    var_edges: Vec<u32>,
}

/// Per-call working memory; reuse one per worker thread.
#[derive(Debug, Clone, Default)]
pub struct DecoderScratch {
    eta: Vec<f64>,
    msg_c: Vec<f64>,
    msg_a: Vec<f64>,
    inv_c: Vec<f64>,
    inv_a: Vec<f64>,
    fwd: Vec<f64>,
    tmp_c: Vec<f64>,
    tmp_a: Vec<f64>,
    post: Vec<[f64; 4]>,
    hard: Vec<u8>,
}

impl Bp4Decoder {
    pub fn new(code: &CssCodePair) -> Bp4Decoder {
        let n = code.n();
        let rows_x = code.hx().rows();
        let rows_z = code.hz().rows();
        let mut check_ptr = Vec::with_capacity(rows_x + rows_z + 1);
        let mut edge_var = Vec::new();
        let mut edge_entry = Vec::new();
        check_ptr.push(0);
        for (h, entry) in [(code.hx(), GF4_X), (code.hz(), GF4_Z)] {
            for i in 0..h.rows() {
                for &j in h.row(i) {
                    edge_var.push(j);
                    edge_entry.push(entry);
                }
                check_ptr.push(edge_var.len());
            }
        }
        let mut var_ptr = vec![0usize; n + 1];
        for &v in &edge_var {
            var_ptr[v as usize + 1] += 1;
        }
        for i in 0..n {
            var_ptr[i + 1] += var_ptr[i];
        }
        let mut cursor = var_ptr.clone();
        let mut var_edges = vec![0u32; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[cursor[v as usize]] = e as u32;
            cursor[v as usize] += 1;
        }
        Bp4Decoder { n, rows_x, rows_z, check_ptr, edge_var, edge_entry, var_ptr, var_edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn checks(&self) -> usize {
        self.rows_x + self.rows_z
    }

    pub fn scratch(&self) -> DecoderScratch {
        let edges = self.edge_var.len();
        let max_deg =
            (0..self.checks()).map(|c| self.check_ptr[c + 1] - self.check_ptr[c]).max().unwrap_or(0);
        DecoderScratch {
            eta: vec![0.0; edges],
            msg_c: vec![1.0; edges],
            msg_a: vec![1.0; edges],
            inv_c: vec![1.0; edges],
            inv_a: vec![1.0; edges],
            fwd: vec![1.0; max_deg + 1],
            tmp_c: vec![1.0; max_deg],
            tmp_a: vec![1.0; max_deg],
            post: vec![[0.0; 4]; self.n],
            hard: vec![0; self.n],
        }
    }

    /// One full BP decode. See the module docs for the message schedule:
    /// per iteration, all check messages update from the previous η, then
    /// all variable nodes recompute posteriors, hard decisions, and the next
    /// η in one pass.
    pub fn decode(
        &self,
        s: &Syndrome,
        p: f64,
        cfg: &BpConfig,
        decim: Option<Decimation>,
    ) -> Result<DecodeResult> {
        let mut scratch = self.scratch();
        self.decode_with_scratch(s, p, cfg, decim, &mut scratch)
    }

    pub fn decode_with_scratch(
        &self,
        s: &Syndrome,
        p: f64,
        cfg: &BpConfig,
        decim: Option<Decimation>,
        scratch: &mut DecoderScratch,
    ) -> Result<DecodeResult> {
        cfg.validate()?;
        if !(0.0..1.0).contains(&p) {
            return Err(Error::BadProbability(p));
        }
        if s.x_bits.len() != self.rows_x || s.z_bits.len() != self.rows_z {
            return Err(Error::DimensionMismatch {
                expected: self.rows_x + self.rows_z,
                got: s.x_bits.len() + s.z_bits.len(),
            });
        }
        if let Some(d) = decim {
            if d.qubit >= self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: d.qubit });
            }
            if d.label > 3 {
                return Err(Error::BadGf4Label(d.label));
            }
        }

        let floor = cfg.message_floor;
        let edges = self.edge_var.len();
        if scratch.eta.len() != edges || scratch.hard.len() != self.n {
            *scratch = self.scratch();
        }
        scratch.msg_c.fill(1.0);
        scratch.msg_a.fill(1.0);
        scratch.inv_c.fill(1.0);
        scratch.inv_a.fill(1.0);

        let channel_prior = prior_vector(p, None, 0, floor);
        let priors = Priors { channel: channel_prior, decim };

        // initial variable pass against neutral check messages: η from priors
        for v in 0..self.n {
            let prior = priors.get(v, floor);
            for &e in &self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]] {
                let e = e as usize;
                scratch.eta[e] = anti_mass(&prior, self.edge_entry[e]);
            }
        }

        let mut converged = false;
        let mut iterations_used = 0;
        for it in 1..=cfg.max_iters {
            iterations_used = it;
            let damping = if it == 1 { 0.0 } else { cfg.damping };
            match cfg.schedule {
                Schedule::Flooding => {
                    self.check_pass(s, floor, damping, 0..self.checks(), scratch);
                    self.variable_pass(&priors, floor, scratch);
                }
                Schedule::AlternatingXz => {
                    self.check_pass(s, floor, damping, 0..self.rows_x, scratch);
                    self.variable_pass(&priors, floor, scratch);
                    self.check_pass(s, floor, damping, self.rows_x..self.checks(), scratch);
                    self.variable_pass(&priors, floor, scratch);
                }
                Schedule::SerialCheck => {
                    self.serial_pass(s, floor, damping, &priors, scratch);
                }
            }
            converged = self.hard_matches(s, &scratch.hard);
            if converged && cfg.early_stop {
                break;
            }
        }

        let estimate = PauliErrorVector::new(scratch.hard.clone())?;
        debug_assert!(!converged || self.hard_matches(s, estimate.symbols()));
        Ok(DecodeResult { estimate, converged, iterations_used })
    }

    fn check_pass(
        &self,
        s: &Syndrome,
        floor: f64,
        damping: f64,
        range: std::ops::Range<usize>,
        scratch: &mut DecoderScratch,
    ) {
        let keep = damping;
        let take = 1.0 - damping;
        for c in range {
            let (lo, hi) = (self.check_ptr[c], self.check_ptr[c + 1]);
            let bit = if c < self.rows_x { s.x_bits[c] } else { s.z_bits[c - self.rows_x] };
            let sign = if bit == 0 { 1.0 } else { -1.0 };
            let deg = hi - lo;
            scratch.fwd[0] = 1.0;
            for i in 0..deg {
                scratch.fwd[i + 1] = scratch.fwd[i] * (1.0 - 2.0 * scratch.eta[lo + i]);
            }
            let mut suffix = 1.0;
            for i in (0..deg).rev() {
                let q = sign * scratch.fwd[i] * suffix;
                let mut mc = (0.5 * (1.0 + q)).max(floor);
                let mut ma = (0.5 * (1.0 - q)).max(floor);
                if keep > 0.0 {
                    mc = take * mc + keep * scratch.msg_c[lo + i];
                    ma = take * ma + keep * scratch.msg_a[lo + i];
                }
                scratch.msg_c[lo + i] = mc;
                scratch.msg_a[lo + i] = ma;
                scratch.inv_c[lo + i] = 1.0 / mc;
                scratch.inv_a[lo + i] = 1.0 / ma;
                suffix *= 1.0 - 2.0 * scratch.eta[lo + i];
            }
        }
    }

    fn variable_pass(&self, priors: &Priors, floor: f64, scratch: &mut DecoderScratch) {
        for v in 0..self.n {
            let prior = priors.get(v, floor);
            let edge_ids = &self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]];

            if let Some(d) = priors.decim.filter(|d| d.qubit == v) {
                // hard decimation: the node always emits its indicator prior
                // and decides the forced label
                scratch.hard[v] = d.label;
                for &e in edge_ids {
                    let e = e as usize;
                    scratch.eta[e] = anti_mass(&prior, self.edge_entry[e]);
                }
                continue;
            }

            let mut post = prior;
            for (i, &e) in edge_ids.iter().enumerate() {
                let e = e as usize;
                mul_message(&mut post, scratch.msg_c[e], scratch.msg_a[e], self.edge_entry[e]);
                if i & 7 == 7 {
                    normalize(&mut post);
                }
            }
            normalize(&mut post);

            let mut best = 0usize;
            for label in 1..4 {
                if post[label] > post[best] {
                    best = label;
                }
            }
            scratch.hard[v] = best as u8;

            for &e in edge_ids {
                let e = e as usize;
                let q = variable_message(
                    &post,
                    scratch.inv_c[e],
                    scratch.inv_a[e],
                    self.edge_entry[e],
                    floor,
                );
                scratch.eta[e] = anti_mass(&q, self.edge_entry[e]);
            }
        }
    }

    /// One serial iteration: posteriors are rebuilt exactly, then each check
    /// updates in turn against the running posteriors (Gauss–Seidel style).
    fn serial_pass(
        &self,
        s: &Syndrome,
        floor: f64,
        damping: f64,
        priors: &Priors,
        scratch: &mut DecoderScratch,
    ) {
        let keep = damping;
        let take = 1.0 - damping;
        for v in 0..self.n {
            let prior = priors.get(v, floor);
            if priors.decim.is_some_and(|d| d.qubit == v) {
                scratch.post[v] = prior;
                continue;
            }
            let mut post = prior;
            for (i, &e) in self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]].iter().enumerate() {
                let e = e as usize;
                mul_message(&mut post, scratch.msg_c[e], scratch.msg_a[e], self.edge_entry[e]);
                if i & 7 == 7 {
                    normalize(&mut post);
                }
            }
            normalize(&mut post);
            scratch.post[v] = post;
        }

        for c in 0..self.checks() {
            let (lo, hi) = (self.check_ptr[c], self.check_ptr[c + 1]);
            let bit = if c < self.rows_x { s.x_bits[c] } else { s.z_bits[c - self.rows_x] };
            let sign = if bit == 0 { 1.0 } else { -1.0 };
            let deg = hi - lo;
            for i in 0..deg {
                let e = lo + i;
                let v = self.edge_var[e] as usize;
                let q = if priors.decim.is_some_and(|d| d.qubit == v) {
                    priors.get(v, floor)
                } else {
                    variable_message(
                        &scratch.post[v],
                        scratch.inv_c[e],
                        scratch.inv_a[e],
                        self.edge_entry[e],
                        floor,
                    )
                };
                scratch.eta[e] = anti_mass(&q, self.edge_entry[e]);
            }
            scratch.fwd[0] = 1.0;
            for i in 0..deg {
                scratch.fwd[i + 1] = scratch.fwd[i] * (1.0 - 2.0 * scratch.eta[lo + i]);
            }
            let mut suffix = 1.0;
            for i in (0..deg).rev() {
                let q = sign * scratch.fwd[i] * suffix;
                let mut mc = (0.5 * (1.0 + q)).max(floor);
                let mut ma = (0.5 * (1.0 - q)).max(floor);
                if keep > 0.0 {
                    mc = take * mc + keep * scratch.msg_c[lo + i];
                    ma = take * ma + keep * scratch.msg_a[lo + i];
                }
                scratch.tmp_c[i] = mc;
                scratch.tmp_a[i] = ma;
                suffix *= 1.0 - 2.0 * scratch.eta[lo + i];
            }
            for i in 0..deg {
                let e = lo + i;
                let v = self.edge_var[e] as usize;
                let (mc, ma) = (scratch.tmp_c[i], scratch.tmp_a[i]);
                if !priors.decim.is_some_and(|d| d.qubit == v) {
                    let rc = mc * scratch.inv_c[e];
                    let ra = ma * scratch.inv_a[e];
                    mul_message(&mut scratch.post[v], rc, ra, self.edge_entry[e]);
                    normalize(&mut scratch.post[v]);
                }
                scratch.msg_c[e] = mc;
                scratch.msg_a[e] = ma;
                scratch.inv_c[e] = 1.0 / mc;
                scratch.inv_a[e] = 1.0 / ma;
            }
        }

        for v in 0..self.n {
            if let Some(d) = priors.decim.filter(|d| d.qubit == v) {
                scratch.hard[v] = d.label;
                continue;
            }
            let post = &scratch.post[v];
            let mut best = 0usize;
            for label in 1..4 {
                if post[label] > post[best] {
                    best = label;
                }
            }
            scratch.hard[v] = best as u8;
        }
    }

    /// Syndrome of a hard decision, compared against the target on the fly.
    fn hard_matches(&self, s: &Syndrome, hard: &[u8]) -> bool {
        for c in 0..self.checks() {
            let (lo, hi) = (self.check_ptr[c], self.check_ptr[c + 1]);
            let entry = self.edge_entry[lo];
            let mut bit = 0u8;
            for &v in &self.edge_var[lo..hi] {
                bit ^= anticommute(entry, hard[v as usize]);
            }
            let target = if c < self.rows_x { s.x_bits[c] } else { s.z_bits[c - self.rows_x] };
            if bit != target {
                return false;
            }
        }
        true
    }
}

/// Per-variable priors for one decode call: the shared channel prior plus
/// the indicator prior of the decimated node, if any.
struct Priors {
    channel: [f64; 4],
    decim: Option<Decimation>,
}

impl Priors {
    #[inline]
    fn get(&self, v: usize, floor: f64) -> [f64; 4] {
        match self.decim {
            Some(d) if d.qubit == v => prior_of_label(d.label, floor),
            _ => self.channel,
        }
    }
}

fn prior_of_label(label: u8, floor: f64) -> [f64; 4] {
    let mut v = [floor; 4];
    v[label as usize] = 1.0;
    let sum: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= sum;
    }
    v
}

/// Probability mass on labels anticommuting with the check entry.
#[inline]
fn anti_mass(q: &[f64; 4], entry: u8) -> f64 {
    if entry == GF4_X {
        q[1] + q[3]
    } else {
        q[1] + q[2]
    }
}

#[inline]
fn mul_message(post: &mut [f64; 4], mc: f64, ma: f64, entry: u8) {
    if entry == GF4_X {
        post[0] *= mc;
        post[1] *= ma;
        post[2] *= mc;
        post[3] *= ma;
    } else {
        post[0] *= mc;
        post[1] *= ma;
        post[2] *= ma;
        post[3] *= mc;
    }
}

/// The outgoing variable→check 4-vector for one edge: the normalized
/// leave-one-out posterior, floored and renormalized. `inv_c`/`inv_a` are
/// the reciprocals of the incoming message values on this edge.
#[inline]
pub(crate) fn variable_message(
    post: &[f64; 4],
    inv_c: f64,
    inv_a: f64,
    entry: u8,
    floor: f64,
) -> [f64; 4] {
    let mut q = *post;
    if entry == GF4_X {
        q[0] *= inv_c;
        q[1] *= inv_a;
        q[2] *= inv_c;
        q[3] *= inv_a;
    } else {
        q[0] *= inv_c;
        q[1] *= inv_a;
        q[2] *= inv_a;
        q[3] *= inv_c;
    }
    normalize(&mut q);
    for x in q.iter_mut() {
        *x = x.max(floor);
    }
    normalize(&mut q);
    q
}

#[inline]
fn normalize(v: &mut [f64; 4]) {
    let inv = 1.0 / (v[0] + v[1] + v[2] + v[3]);
    for x in v.iter_mut() {
        *x *= inv;
    }
}

/// One-shot decode building the edge structure on the fly.
pub fn decode(
    code: &CssCodePair,
    s: &Syndrome,
    p: f64,
    cfg: &BpConfig,
    decim: Option<Decimation>,
) -> Result<DecodeResult> {
    Bp4Decoder::new(code).decode(s, p, cfg, decim)
}
