//! Samplers for the oriented swap process, staircase corner growth and dual
//! last passage percolation.
//!
//! Every trial draws from its own counter-based stream keyed by
//! `(master seed, trial index)`, so a trial is reproducible on its own and
//! results do not depend on how trials are spread over threads.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{Cell, Permutation, SortingNetwork, StandardTableau, Tableau, YoungDiagram};
use crate::error::{invalid, Error, Result};
use crate::lpp::{corner_vectors, lpp_pair};

/// Random stream for one trial.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    index: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { seed, index, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform index in `0..len`.
    pub fn below(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Inverse transform `-ln(1-u)/rate`.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        -(1.0 - self.uniform()).ln() / rate
    }
}

/// Distribution of i.i.d. weights.
pub trait WeightLaw {
    type Value;
    fn draw(&self, rng: &mut RngStream) -> Self::Value;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return invalid(format!("exponential rate must be positive, got {rate}"));
        }
        Ok(Self { rate })
    }
}

impl WeightLaw for Exponential {
    type Value = f64;

    fn draw(&self, rng: &mut RngStream) -> f64 {
        rng.exponential(self.rate)
    }
}

/// `P(X = m) = p (1-p)^m` for `m >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometric {
    p: f64,
}

impl Geometric {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return invalid(format!("geometric parameter must lie in (0, 1), got {p}"));
        }
        Ok(Self { p })
    }
}

impl WeightLaw for Geometric {
    type Value = u64;

    fn draw(&self, rng: &mut RngStream) -> u64 {
        let u = rng.uniform();
        ((1.0 - u).ln() / (1.0 - self.p).ln()).floor() as u64
    }
}

pub fn sample_weights<L: WeightLaw>(shape: &YoungDiagram, law: &L, rng: &mut RngStream) -> Tableau<L::Value> {
    Tableau::from_fn(shape, |_| law.draw(rng))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Trajectory {
    Network(SortingNetwork),
    Tableau(StandardTableau),
    None,
}

impl fmt::Display for Trajectory {
    /// Space-separated word, or tableau rows separated by `/`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Trajectory::Network(s) => write!(f, "{}", join(s.word())),
            Trajectory::Tableau(t) => {
                let rows: Vec<String> = t.rows().iter().map(|r| join(r)).collect();
                write!(f, "{}", rows.join("/"))
            }
            Trajectory::None => Ok(()),
        }
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    /// `U_n`, `V_n` or `W_n`.
    pub times: Vec<f64>,
    pub trajectory: Trajectory,
    /// Time of each step of the trajectory (empty when there is none).
    pub step_times: Vec<f64>,
    pub absorb: f64,
}

impl TrialRecord {
    fn new(times: Vec<f64>, trajectory: Trajectory, step_times: Vec<f64>) -> Self {
        let absorb = times.iter().copied().fold(0.0, f64::max);
        Self {
            times,
            trajectory,
            step_times,
            absorb,
        }
    }
}

/// Supplies the holding time and the chosen swap for each step of the
/// oriented swap process.
pub trait JumpDriver {
    fn next_jump(&mut self, ascents: &[usize]) -> Result<(f64, usize)>;
}

impl JumpDriver for RngStream {
    fn next_jump(&mut self, ascents: &[usize]) -> Result<(f64, usize)> {
        let wait = self.exponential(ascents.len() as f64);
        Ok((wait, ascents[self.below(ascents.len())]))
    }
}

/// Replays a fixed list of `(holding time, position)` events.
#[derive(Debug, Clone)]
pub struct Replay {
    events: std::vec::IntoIter<(f64, usize)>,
}

impl Replay {
    pub fn new(events: Vec<(f64, usize)>) -> Self {
        Self {
            events: events.into_iter(),
        }
    }
}

impl JumpDriver for Replay {
    fn next_jump(&mut self, ascents: &[usize]) -> Result<(f64, usize)> {
        let (wait, pos) = self
            .events
            .next()
            .ok_or_else(|| Error::InvalidArgument("replay ran out of events".into()))?;
        if !ascents.contains(&pos) {
            return invalid(format!("replayed swap at {pos} is not an ascent"));
        }
        Ok((wait, pos))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("need at least 2 particles, got {n}"));
    }
    Ok(())
}

/// Oriented swap process as a jump chain: in state `ν` with ascent set `A`,
/// wait `Exp(|A|)`, swap a uniform ascent, and record the time as the
/// latest swap at that position.
pub fn sample_osp_with(n: usize, driver: &mut impl JumpDriver) -> Result<TrialRecord> {
    check_order(n)?;
    let big_n = n * (n - 1) / 2;
    let mut state = Permutation::identity(n);
    let mut last = vec![0.0; n - 1];
    let mut word = Vec::with_capacity(big_n);
    let mut step_times = Vec::with_capacity(big_n);
    let mut now = 0.0;
    for _ in 0..big_n {
        let ascents = state.ascents();
        let (wait, pos) = driver.next_jump(&ascents)?;
        now += wait;
        state.swap_positions(pos);
        last[pos - 1] = now;
        word.push(pos);
        step_times.push(now);
    }
    let s = SortingNetwork::new_unchecked(n, word);
    Ok(TrialRecord::new(last, Trajectory::Network(s), step_times))
}

pub fn sample_osp(n: usize, rng: &mut RngStream) -> Result<TrialRecord> {
    sample_osp_with(n, rng)
}

/// Oriented swap process with one rate-1 clock per adjacent pair, futile
/// rings included. Slower than [`sample_osp`]; kept as a reference.
pub fn sample_osp_clocks(n: usize, rng: &mut RngStream) -> Result<TrialRecord> {
    check_order(n)?;
    let big_n = n * (n - 1) / 2;
    let mut clocks: Vec<f64> = (0..n - 1).map(|_| rng.exponential(1.0)).collect();
    let mut state = Permutation::identity(n);
    let mut last = vec![0.0; n - 1];
    let mut word = Vec::with_capacity(big_n);
    let mut step_times = Vec::with_capacity(big_n);
    while word.len() < big_n {
        let (i, &now) = clocks
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("at least one clock");
        let pos = i + 1;
        if state.is_ascent(pos) {
            state.swap_positions(pos);
            last[i] = now;
            word.push(pos);
            step_times.push(now);
        }
        clocks[i] = now + rng.exponential(1.0);
    }
    let s = SortingNetwork::new_unchecked(n, word);
    Ok(TrialRecord::new(last, Trajectory::Network(s), step_times))
}

/// Standard tableau listing boxes in the order their LPP times occur.
fn ranking_tableau(l: &Tableau<f64>) -> (StandardTableau, Vec<f64>) {
    let mut cells: Vec<(Cell, f64)> = l.iter().map(|(c, &v)| (c, v)).collect();
    // ties (zero weights) are broken along paths, so the result stays standard
    cells.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then((a.0 .0 + a.0 .1).cmp(&(b.0 .0 + b.0 .1)))
            .then(a.0 .0.cmp(&b.0 .0))
    });
    let mut t = l.map(|_| 0usize);
    let mut times = Vec::with_capacity(cells.len());
    for (k, (c, v)) in cells.into_iter().enumerate() {
        t.set(c, k + 1);
        times.push(v);
    }
    (t, times)
}

/// Corner growth on `δ_n` driven by given weights: box `(i,j)` is added at
/// time `L(1,1; i,j)`.
pub fn corner_growth_from_weights(x: &Tableau<f64>) -> Result<TrialRecord> {
    let Some(n) = x.shape().staircase_order() else {
        return invalid(format!("weight shape {} is not a staircase", x.shape()));
    };
    let pair = lpp_pair(x);
    let (v, _) = corner_vectors(n, &pair);
    let (t, step_times) = ranking_tableau(&pair.l);
    Ok(TrialRecord::new(v, Trajectory::Tableau(t), step_times))
}

pub fn dual_from_weights(x: &Tableau<f64>) -> Result<TrialRecord> {
    let Some(n) = x.shape().staircase_order() else {
        return invalid(format!("weight shape {} is not a staircase", x.shape()));
    };
    let (_, w) = corner_vectors(n, &lpp_pair(x));
    Ok(TrialRecord::new(w, Trajectory::None, Vec::new()))
}

fn exp_weights(n: usize, rng: &mut RngStream) -> Result<Tableau<f64>> {
    let shape = YoungDiagram::staircase(n)?;
    Ok(sample_weights(&shape, &Exponential::new(1.0)?, rng))
}

pub fn sample_corner_growth(n: usize, rng: &mut RngStream) -> Result<TrialRecord> {
    check_order(n)?;
    corner_growth_from_weights(&exp_weights(n, rng)?)
}

pub fn sample_dual(n: usize, rng: &mut RngStream) -> Result<TrialRecord> {
    check_order(n)?;
    dual_from_weights(&exp_weights(n, rng)?)
}

/// Finishing time of each particle `k = 1..n`: `max(U(n-k), U(n-k+1))`
/// with `U(0) = U(n) = 0`.
pub fn finishing_times(u: &[f64]) -> Vec<f64> {
    let n = u.len() + 1;
    let at = |i: usize| if i == 0 || i == n { 0.0 } else { u[i - 1] };
    (1..=n).map(|k| at(n - k).max(at(n - k + 1))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Oriented swap process, `U_n`.
    Osp,
    /// Corner growth, `V_n`.
    Growth,
    /// Dual last passage times, `W_n`.
    Dual,
}

impl Model {
    pub fn sample(self, n: usize, rng: &mut RngStream) -> Result<TrialRecord> {
        match self {
            Model::Osp => sample_osp(n, rng),
            Model::Growth => sample_corner_growth(n, rng),
            Model::Dual => sample_dual(n, rng),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "osp" | "u" => Ok(Model::Osp),
            "growth" | "v" => Ok(Model::Growth),
            "dual" | "w" => Ok(Model::Dual),
            other => invalid(format!("unknown model {other:?} (expected osp, growth or dual)")),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Osp => "osp",
            Model::Growth => "growth",
            Model::Dual => "dual",
        })
    }
}

/// Runs trials `0..trials` in parallel; output is in trial order and does
/// not depend on the thread count.
pub fn run_trials(model: Model, n: usize, trials: u64, seed: u64) -> Result<Vec<TrialRecord>> {
    check_order(n)?;
    (0..trials)
        .into_par_iter()
        .map(|i| model.sample(n, &mut RngStream::new(seed, i)))
        .collect()
}

/// CSV with columns `trial, t1..t{n-1}, absorb, trajectory`.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dims = records.first().map_or(0, |r| r.times.len());
    let mut header = vec!["trial".to_string()];
    header.extend((1..=dims).map(|k| format!("t{k}")));
    header.push("absorb".into());
    header.push("trajectory".into());
    w.write_record(&header)?;
    for (i, r) in records.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(r.times.iter().map(f64::to_string));
        row.push(r.absorb.to_string());
        row.push(r.trajectory.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
