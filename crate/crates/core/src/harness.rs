//! Exhaustive and randomized verification of the two 4-cycle theorems.
//!
//! Work is split into independent chunks that run on a dedicated rayon pool.
//! Chunk results are merged in chunk order, so every count and every
//! counterexample list is the same for any parallelism degree.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{gen_random_colored, gen_random_oriented, ArcProfile, ColoredParams};
use crate::detect::{find_directed_c4, find_rainbow_c4_exhaustive, verify_rainbow_c4};
use crate::dstar::is_dstar;
use crate::error::HarnessError;
use crate::format::GraphFile;
use crate::graph::{ColoredBipartiteGraph, Direction, OrientedBipartiteGraph};
use crate::hypothesis::{check_thm9_hypothesis, meets_out_degree_threshold, ThresholdMode};
use crate::reduction::{find_rainbow_c4_guided, GuidedOutcome, ProofBranch};

/// Largest number of vertex pairs the exhaustive mode accepts (3^16 instances).
pub const MAX_EXHAUSTIVE_CELLS: usize = 16;

/// Resamples allowed per colored trial. At (14, 14) with palette 30 and edge
/// probability 0.9 under one sample in a thousand meets the hypothesis.
pub const THM10_GENERATION_ATTEMPTS: u32 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    DirectedC4,
    RainbowC4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParameters {
    pub theorem: Theorem,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub seed: u64,
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ArcProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub palette: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_prob: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// Hypothesis holds, no directed 4-cycle, and not `D*`.
    NoDirectedC4,
    /// Hypothesis holds and no rainbow 4-cycle exists.
    NoRainbowC4,
    /// A finder returned a certificate its checker rejected.
    InvalidCertificate,
    /// The guided and exhaustive searches disagree.
    OracleDisagreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Enumeration index (exhaustive) or trial number (random).
    pub instance: u64,
    /// Seed that regenerates the instance (random mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub kind: FailureKind,
    pub graph: GraphFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub parameters: ReportParameters,
    pub instances_examined: u64,
    pub hypothesis_satisfied: u64,
    pub with_cycle: u64,
    pub extremal: u64,
    pub generation_failures: u64,
    /// Rainbow mode: how many certificates each step of the guided search produced.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub branches: BTreeMap<ProofBranch, u64>,
    /// Rainbow mode: certificates that needed an exhaustive fallback.
    pub proof_branch_diagnostics: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(parameters: ReportParameters) -> Self {
        VerificationReport {
            parameters,
            instances_examined: 0,
            hypothesis_satisfied: 0,
            with_cycle: 0,
            extremal: 0,
            generation_failures: 0,
            branches: BTreeMap::new(),
            proof_branch_diagnostics: 0,
            counterexamples: Vec::new(),
            elapsed_ms: 0,
        }
    }

    fn absorb(&mut self, t: Tally) {
        self.instances_examined += t.examined;
        self.hypothesis_satisfied += t.satisfied;
        self.with_cycle += t.with_cycle;
        self.extremal += t.extremal;
        self.generation_failures += t.generation_failures;
        for (branch, count) in t.branches {
            *self.branches.entry(branch).or_default() += count;
        }
        self.proof_branch_diagnostics += t.diagnostics;
        self.counterexamples.extend(t.counterexamples);
    }

    /// `hypothesis_satisfied = with_cycle + extremal + |counterexamples|`.
    pub fn ledger_balances(&self) -> bool {
        self.hypothesis_satisfied == self.with_cycle + self.extremal + self.counterexamples.len() as u64
    }

    pub fn diagnostic_rate(&self) -> f64 {
        if self.hypothesis_satisfied == 0 {
            0.0
        } else {
            self.proof_branch_diagnostics as f64 / self.hypothesis_satisfied as f64
        }
    }

    /// Report JSON with `elapsed_ms` zeroed, for reproducibility comparisons.
    pub fn to_json_without_elapsed(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        serde_json::to_string(&copy).expect("reports always serialize")
    }
}

#[derive(Debug, Default)]
struct Tally {
    examined: u64,
    satisfied: u64,
    with_cycle: u64,
    extremal: u64,
    generation_failures: u64,
    branches: BTreeMap<ProofBranch, u64>,
    diagnostics: u64,
    counterexamples: Vec<Counterexample>,
}

fn run_in_pool<T: Send>(parallelism: usize, job: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

/// Per-trial seed: SplitMix64 applied to `seed + trial·φ`, with φ the 64-bit golden ratio.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Classifies one oriented instance that satisfies the out-degree hypothesis.
fn classify_oriented(d: &OrientedBipartiteGraph, instance: u64, seed: Option<u64>, tally: &mut Tally) {
    tally.satisfied += 1;
    if find_directed_c4(d).is_some() {
        tally.with_cycle += 1;
    } else if is_dstar(d).is_some() {
        tally.extremal += 1;
    } else {
        tally.counterexamples.push(Counterexample {
            instance,
            seed,
            kind: FailureKind::NoDirectedC4,
            graph: d.into(),
        });
    }
}

/// Enumeration state for one subtree of the base-3 assignment tree.
struct Enumerator {
    m: usize,
    n: usize,
    cells: usize,
    digits: Vec<u8>,
    a_out: Vec<u32>,
    b_out: Vec<u32>,
    /// 3^k for k = 0..=cells.
    pow3: Vec<u64>,
}

impl Enumerator {
    fn new(m: usize, n: usize) -> Self {
        let cells = m * n;
        Enumerator {
            m,
            n,
            cells,
            digits: vec![0; cells],
            a_out: vec![0; m],
            b_out: vec![0; n],
            pow3: (0..=cells as u32).map(|k| 3u64.pow(k)).collect(),
        }
    }

    fn assign(&mut self, cell: usize, digit: u8) {
        let (a, b) = (cell / self.n, cell % self.n);
        self.digits[cell] = digit;
        match digit {
            1 => self.a_out[a] |= 1 << b,
            2 => self.b_out[b] |= 1 << a,
            _ => {}
        }
    }

    fn unassign(&mut self, cell: usize) {
        let (a, b) = (cell / self.n, cell % self.n);
        self.a_out[a] &= !(1 << b);
        self.b_out[b] &= !(1 << a);
        self.digits[cell] = 0;
    }

    /// False when an endpoint of `cell` can no longer reach the threshold,
    /// given the pairs that remain undecided after `cell`.
    fn viable(&self, cell: usize) -> bool {
        let (a, b) = (cell / self.n, cell % self.n);
        let a_best = self.a_out[a].count_ones() as usize + (self.n - 1 - b);
        let b_best = self.b_out[b].count_ones() as usize + (self.m - 1 - a);
        meets_out_degree_threshold(a_best, self.n) && meets_out_degree_threshold(b_best, self.m)
    }

    fn index(&self) -> u64 {
        self.digits.iter().fold(0u64, |acc, &d| acc * 3 + d as u64)
    }

    fn graph(&self) -> OrientedBipartiteGraph {
        let mut d = OrientedBipartiteGraph::empty(self.m, self.n);
        for (cell, &digit) in self.digits.iter().enumerate() {
            let (a, b) = (cell / self.n, cell % self.n);
            match digit {
                1 => d.set(a, b, Direction::AtoB),
                2 => d.set(a, b, Direction::BtoA),
                _ => {}
            }
        }
        d
    }

    fn walk(&mut self, cell: usize, tally: &mut Tally) {
        if cell == self.cells {
            tally.examined += 1;
            let d = self.graph();
            debug_assert!(check_thm9_hypothesis(&d).passed());
            classify_oriented(&d, self.index(), None, tally);
            return;
        }
        for digit in 0..3 {
            self.assign(cell, digit);
            if self.viable(cell) {
                self.walk(cell + 1, tally);
            } else {
                tally.examined += self.pow3[self.cells - cell - 1];
            }
            self.unassign(cell);
        }
    }

    /// Runs the subtree whose first `prefix.len()` digits are fixed.
    fn run_prefix(mut self, prefix: &[u8]) -> Tally {
        let mut tally = Tally::default();
        for (cell, &digit) in prefix.iter().enumerate() {
            self.assign(cell, digit);
            if !self.viable(cell) {
                tally.examined += self.pow3[self.cells - prefix.len()];
                return tally;
            }
        }
        self.walk(prefix.len(), &mut tally);
        tally
    }
}

/// Checks every orientation assignment of the `m × n` pairs.
///
/// Each pair takes one of three states (none, `A -> B`, `B -> A`), ordered as
/// base-3 numerals over the pair index `a·n + b`. Subtrees in which some
/// vertex can no longer reach the out-degree threshold are counted as
/// examined and skipped.
pub fn verify_thm9_exhaustive(m: usize, n: usize, parallelism: usize) -> Result<VerificationReport, HarnessError> {
    let cells = m * n;
    if cells > MAX_EXHAUSTIVE_CELLS {
        return Err(HarnessError::BudgetExceeded { cells, instances: 3u128.pow(cells as u32) });
    }
    if m < 2 || n < 2 {
        return Err(HarnessError::SidesTooSmall { m, n });
    }
    let start = Instant::now();
    let split = cells.min(6);
    let prefixes: Vec<Vec<u8>> = (0..3u32.pow(split as u32))
        .map(|mut k| {
            let mut digits = vec![0u8; split];
            for slot in digits.iter_mut().rev() {
                *slot = (k % 3) as u8;
                k /= 3;
            }
            digits
        })
        .collect();
    let tallies = run_in_pool(parallelism, || {
        prefixes
            .par_iter()
            .map(|prefix| Enumerator::new(m, n).run_prefix(prefix))
            .collect::<Vec<_>>()
    })?;
    let mut report = VerificationReport::new(ReportParameters {
        theorem: Theorem::DirectedC4,
        m,
        n,
        mode: Mode::Exhaustive,
        seed: 0,
        trials: None,
        profile: None,
        palette: None,
        edge_prob: None,
    });
    for t in tallies {
        report.absorb(t);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Checks `trials` random orientations repaired to satisfy the out-degree
/// hypothesis. Trial `t` is generated from [`trial_seed`]`(seed, t)`.
pub fn verify_thm9_random(
    m: usize,
    n: usize,
    trials: u64,
    seed: u64,
    profile: ArcProfile,
    parallelism: usize,
) -> Result<VerificationReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    if m < 2 || n < 2 {
        return Err(HarnessError::SidesTooSmall { m, n });
    }
    ArcProfile::new(profile.none, profile.a_to_b, profile.b_to_a)?;
    let start = Instant::now();
    let tallies = run_in_pool(parallelism, || {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut tally = Tally { examined: 1, ..Tally::default() };
                let s = trial_seed(seed, t);
                match gen_random_oriented(m, n, profile, s, true) {
                    Ok(d) => classify_oriented(&d, t, Some(s), &mut tally),
                    Err(_) => tally.generation_failures += 1,
                }
                tally
            })
            .collect::<Vec<_>>()
    })?;
    let mut report = VerificationReport::new(ReportParameters {
        theorem: Theorem::DirectedC4,
        m,
        n,
        mode: Mode::Random,
        seed,
        trials: Some(trials),
        profile: Some(profile),
        palette: None,
        edge_prob: None,
    });
    for t in tallies {
        report.absorb(t);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm10Params {
    pub m: usize,
    pub n: usize,
    pub trials: u64,
    pub palette: u64,
    pub edge_prob: f64,
    pub seed: u64,
}

fn classify_colored(g: &ColoredBipartiteGraph, instance: u64, seed: u64, tally: &mut Tally) {
    tally.satisfied += 1;
    let fail = |kind| Counterexample { instance, seed: Some(seed), kind, graph: g.into() };
    let exhaustive = find_rainbow_c4_exhaustive(g);
    match find_rainbow_c4_guided(g, ThresholdMode::AtLeast) {
        Ok(GuidedOutcome::Found { certificate, branch, .. }) => {
            if verify_rainbow_c4(g, &certificate).is_err() {
                tally.counterexamples.push(fail(FailureKind::InvalidCertificate));
            } else if exhaustive.is_none() {
                tally.counterexamples.push(fail(FailureKind::OracleDisagreement));
            } else {
                tally.with_cycle += 1;
                *tally.branches.entry(branch).or_default() += 1;
                if branch.is_diagnostic() {
                    tally.diagnostics += 1;
                }
            }
        }
        Ok(GuidedOutcome::Counterexample { .. }) => {
            let kind = if exhaustive.is_some() { FailureKind::OracleDisagreement } else { FailureKind::NoRainbowC4 };
            tally.counterexamples.push(fail(kind));
        }
        Ok(GuidedOutcome::HypothesisViolation { .. }) | Err(_) => {
            tally.counterexamples.push(fail(FailureKind::OracleDisagreement));
        }
    }
}

/// Checks `trials` random colored graphs conditioned on the color-degree
/// hypothesis. Each guided certificate is checked and compared against the
/// exhaustive finder.
pub fn verify_thm10_random(params: Thm10Params, parallelism: usize) -> Result<VerificationReport, HarnessError> {
    let Thm10Params { m, n, trials, palette, edge_prob, seed } = params;
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let generator = ColoredParams {
        m,
        n,
        edge_prob,
        palette,
        enforce_thm10: true,
        attempts: THM10_GENERATION_ATTEMPTS,
    };
    // Surface parameter errors before spawning work.
    if let Err(e @ (crate::ConstructionError::BadEdgeProbability(_) | crate::ConstructionError::EmptyPalette)) =
        gen_random_colored(ColoredParams { enforce_thm10: false, ..generator }, 0)
    {
        return Err(e.into());
    }
    let start = Instant::now();
    let tallies = run_in_pool(parallelism, || {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut tally = Tally { examined: 1, ..Tally::default() };
                let s = trial_seed(seed, t);
                match gen_random_colored(generator, s) {
                    Ok(g) => classify_colored(&g, t, s, &mut tally),
                    Err(_) => tally.generation_failures += 1,
                }
                tally
            })
            .collect::<Vec<_>>()
    })?;
    let mut report = VerificationReport::new(ReportParameters {
        theorem: Theorem::RainbowC4,
        m,
        n,
        mode: Mode::Random,
        seed,
        trials: Some(trials),
        profile: None,
        palette: Some(palette),
        edge_prob: Some(edge_prob),
    });
    for t in tallies {
        report.absorb(t);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
