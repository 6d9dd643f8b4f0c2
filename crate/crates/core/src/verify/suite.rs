//! The exact property suite: every identity and inequality of the
//! phase-space argument, checked on seeded random inputs.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellman::{MultitileTerms, PhaseSpace, Sign, SweepSummary};
use crate::boundary::{xi_boundary_closed_form, Boundary};
use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::form_direct::{lambda_w_direct, DEFAULT_ORACLE_MAX_RESOLUTION};
use crate::io::FunctionFile;
use crate::scalar::{self, ExactScalar};
use crate::stepfun::{norms, StepFun1D};
use crate::tiles::Multitile;
use crate::triple::Triple;
use crate::verify::packets;
use crate::verify::random::{random_triple, ValuePool};

/// The constant in `|Λ_W| ≤ C ‖F₁‖₂ ‖F₂‖₄ ‖F₃‖₄`.
pub const BOUND_CONSTANT: i64 = 7;

/// Hard ceiling on the brute-force oracle unless explicitly overridden.
pub const ORACLE_HARD_CAP: u32 = 6;

/// Exhaustive packet algebra runs at `min(M, this)`.
pub const PACKET_ALGEBRA_MAX_RESOLUTION: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckGroup {
    Packets,
    Decomposition,
    Lemma,
    Telescoping,
    Boundary,
    Sandwich,
    Bound,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 7] = [
        CheckGroup::Packets,
        CheckGroup::Decomposition,
        CheckGroup::Lemma,
        CheckGroup::Telescoping,
        CheckGroup::Boundary,
        CheckGroup::Sandwich,
        CheckGroup::Bound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckGroup::Packets => "packets",
            CheckGroup::Decomposition => "decomposition",
            CheckGroup::Lemma => "lemma",
            CheckGroup::Telescoping => "telescoping",
            CheckGroup::Boundary => "boundary",
            CheckGroup::Sandwich => "sandwich",
            CheckGroup::Bound => "bound",
        }
    }

    fn needs_sweep(&self) -> bool {
        !matches!(self, CheckGroup::Packets)
    }
}

impl FromStr for CheckGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s.trim())
            .ok_or_else(|| {
                let known: Vec<_> = CheckGroup::ALL.iter().map(|g| g.name()).collect();
                Error::Config(format!("unknown check {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(rename = "M")]
    pub resolution: u32,
    pub trials: u64,
    pub seed: u64,
    pub value_pool: ValuePool,
    #[serde(rename = "oracle_max_M")]
    pub oracle_max_resolution: u32,
    /// Lifts the [`ORACLE_HARD_CAP`] ceiling on `oracle_max_M`.
    pub oracle_override: bool,
    pub checks: Vec<CheckGroup>,
    /// Shrink counterexamples by zeroing cells before reporting them.
    pub minimize: bool,
}

impl SuiteConfig {
    pub fn new(resolution: u32, trials: u64, seed: u64) -> Self {
        Self {
            resolution,
            trials,
            seed,
            value_pool: ValuePool::default(),
            oracle_max_resolution: DEFAULT_ORACLE_MAX_RESOLUTION,
            oracle_override: false,
            checks: CheckGroup::ALL.to_vec(),
            minimize: true,
        }
    }

    pub fn with_checks(mut self, checks: &[CheckGroup]) -> Self {
        self.checks = checks.to_vec();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.oracle_max_resolution > ORACLE_HARD_CAP && !self.oracle_override {
            return Err(Error::Config(format!(
                "oracle_max_M {} exceeds {ORACLE_HARD_CAP} without override",
                self.oracle_max_resolution
            )));
        }
        if self.resolution > 10 {
            return Err(Error::Config(format!("M={} is beyond what the suite can sweep", self.resolution)));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        self.value_pool.validate()
    }

    fn selected(&self, g: CheckGroup) -> bool {
        self.checks.contains(&g)
    }
}

/// One violated relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub location: Option<String>,
    /// Relation that was expected to hold between `lhs` and `rhs`.
    pub relation: &'static str,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

impl Failure {
    pub fn new(location: Option<String>, relation: &'static str, lhs: ExactScalar, rhs: ExactScalar) -> Self {
        Self {
            location,
            relation,
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub run: u64,
    pub failures: u64,
    pub first: Option<Failure>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.run += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(failure());
            }
        }
    }

    pub fn equal(&mut self, lhs: &ExactScalar, rhs: &ExactScalar, location: impl FnOnce() -> String) {
        self.record(lhs == rhs, || Failure::new(Some(location()), "=", lhs.clone(), rhs.clone()));
    }

    pub fn at_most(&mut self, lhs: &ExactScalar, rhs: &ExactScalar, location: impl FnOnce() -> String) {
        self.record(lhs <= rhs, || Failure::new(Some(location()), "≤", lhs.clone(), rhs.clone()));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<FunctionFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub minimized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    #[serde(rename = "run")]
    pub instances_run: u64,
    #[serde(rename = "pass")]
    pub passes: u64,
    #[serde(rename = "fail")]
    pub failures: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Wall time spent in this check's group, summed over trials.
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
    pub notes: Vec<String>,
    pub timing_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Zeroes every wall-clock field, leaving only deterministic content.
    pub fn without_timing(mut self) -> Self {
        self.timing_ms.clear();
        for c in &mut self.checks {
            c.elapsed_ms = 0.0;
        }
        self
    }
}

/// `(Λ⁴, 7⁴ (‖F₁‖₂²)² ‖F₂‖₄⁴ ‖F₃‖₄⁴)`: the bound `|Λ| ≤ 7‖F₁‖₂‖F₂‖₄‖F₃‖₄`
/// raised to the fourth power so both sides stay rational.
pub fn bound_sides(triple: &Triple, lambda: &ExactScalar) -> (ExactScalar, ExactScalar) {
    let (l2_sq, _) = norms(triple.f1());
    let (_, l4_2) = norms(triple.f2());
    let (_, l4_3) = norms(triple.f3());
    let lam2 = lambda * lambda;
    let c2 = scalar::int(BOUND_CONSTANT * BOUND_CONSTANT);
    (&lam2 * &lam2, &c2 * &c2 * &l2_sq * &l2_sq * l4_2 * l4_3)
}

// ---------------------------------------------------------------------------
// One trial.

#[derive(Default)]
struct TrialOutcome {
    tallies: Vec<(CheckGroup, &'static str, Tally)>,
    timings: Vec<(&'static str, Duration)>,
}

impl TrialOutcome {
    fn push(&mut self, group: CheckGroup, name: &'static str, tally: Tally) {
        self.tallies.push((group, name, tally));
    }

    fn failure(&self, name: &str) -> Option<&Failure> {
        self.tallies
            .iter()
            .find(|(_, n, t)| *n == name && t.failures > 0)
            .and_then(|(_, _, t)| t.first.as_ref())
    }
}

const LEMMA_CHECKS: [&str; 9] = [
    "lemma.local_bound",
    "lemma.identity_b1",
    "lemma.identity_b2",
    "lemma.identity_b3",
    "lemma.identity_b4",
    "lemma.identity_b5",
    "lemma.bineq1",
    "lemma.bineq2",
    "lemma.bineq3",
];

/// Lemma-level relations at one multitile, in [`LEMMA_CHECKS`] order.
fn check_multitile(tallies: &mut [Tally; 9], p: &Multitile, t: &MultitileTerms) {
    let loc = || p.to_string();
    let zero = ExactScalar::zero();
    let half = scalar::ratio(1, 2);
    let b = &t.box_b;

    let lower = t.box_minus();
    let upper = t.box_plus();
    let ok = lower <= t.a && t.a <= upper;
    tallies[0].record(ok, || {
        if lower > t.a {
            Failure::new(Some(loc()), "≤", lower.clone(), t.a.clone())
        } else {
            Failure::new(Some(loc()), "≤", t.a.clone(), upper.clone())
        }
    });

    tallies[1].equal(&b.b1, &(&t.a + &t.a1), loc);
    tallies[2].record(b.b2 == t.s2 && t.s2 >= zero, || {
        Failure::new(Some(loc()), "= (sum of squares)", b.b2.clone(), t.s2.clone())
    });
    let id3 = &t.a2 + &t.a3 + &t.r3;
    tallies[3].record(b.b3 == id3 && t.r3 >= zero, || {
        Failure::new(Some(loc()), "= 𝒜₂+𝒜₃+(squares)", b.b3.clone(), id3.clone())
    });
    let id4 = &t.a4 + &t.r4;
    tallies[4].record(b.b4 == id4 && t.r4 >= zero, || {
        Failure::new(Some(loc()), "= 𝒜₄+(squares)", b.b4.clone(), id4.clone())
    });
    let id5 = &t.a5 + &t.r5;
    tallies[5].record(b.b5 == id5 && t.r5 >= zero, || {
        Failure::new(Some(loc()), "= 𝒜₅+(squares)", b.b5.clone(), id5.clone())
    });

    let cross_sum = &t.a2 + &t.a3 + &t.a4 + &t.a5;
    let box_sum = &b.b3 + &b.b4 + &b.b5;
    tallies[6].at_most(&cross_sum, &box_sum, loc);

    let gap = (&t.a - &b.b1).abs();
    let rhs2 = &b.b2 + &half * &t.a2;
    tallies[7].record(gap == t.a1.abs() && gap <= rhs2, || {
        Failure::new(Some(loc()), "|𝒜₁| ≤", t.a1.abs(), rhs2.clone())
    });

    tallies[8].at_most(&t.a3.abs(), &(&t.a4 + &t.a5), loc);
}

fn evaluate_trial(triple: &Triple, cfg: &SuiteConfig, only: Option<CheckGroup>) -> Result<TrialOutcome> {
    let m = triple.resolution();
    let want = |g: CheckGroup| only.map_or(cfg.selected(g), |o| o == g);
    let mut out = TrialOutcome::default();

    if want(CheckGroup::Packets) {
        let start = Instant::now();
        let mut tally = Tally::default();
        for f in triple.funcs() {
            for row in f.rows() {
                let row = StepFun1D::new(m, row.to_vec())?;
                let t = packets::check_w3_function(&row, DyadicInterval::unit());
                tally.run += t.run;
                tally.failures += t.failures;
                if tally.first.is_none() {
                    tally.first = t.first;
                }
            }
        }
        out.push(CheckGroup::Packets, "packets.w3_trial", tally);
        out.timings.push(("packets", start.elapsed()));
    }

    if !CheckGroup::ALL.iter().any(|g| g.needs_sweep() && want(*g)) {
        return Ok(out);
    }

    let start = Instant::now();
    let mut lemma: [Tally; 9] = Default::default();
    let check_lemma = want(CheckGroup::Lemma);
    let summary: SweepSummary = PhaseSpace::new(triple).sweep(|p, t| {
        if check_lemma {
            check_multitile(&mut lemma, p, t);
        }
    })?;
    out.timings.push(("sweep", start.elapsed()));
    if check_lemma {
        for (name, tally) in LEMMA_CHECKS.iter().zip(lemma) {
            out.push(CheckGroup::Lemma, name, tally);
        }
    }
    let lambda = &summary.lambda;

    if want(CheckGroup::Decomposition) {
        let start = Instant::now();
        let mut tally = Tally::default();
        if m <= cfg.oracle_max_resolution {
            let direct = lambda_w_direct(triple)?;
            tally.equal(&direct, lambda, || "Λ_W direct vs phase-space sum".into());
        }
        out.push(CheckGroup::Decomposition, "decomposition", tally);
        out.timings.push(("decomposition", start.elapsed()));
    }

    if want(CheckGroup::Telescoping) {
        let mut tally = Tally::default();
        for k in 0..m as usize {
            let dp = &summary.xi_plus[k + 1] - &summary.xi_plus[k];
            tally.equal(&dp, &summary.box_plus[k], || format!("Ξ⁺ level {k}→{}", k + 1));
            let dm = &summary.xi_minus[k + 1] - &summary.xi_minus[k];
            tally.equal(&dm, &summary.box_minus[k], || format!("Ξ⁻ level {k}→{}", k + 1));
        }
        out.push(CheckGroup::Telescoping, "telescoping", tally);
    }

    if want(CheckGroup::Boundary) {
        let start = Instant::now();
        for (name, which, level) in [
            ("boundary.finest", Boundary::Finest, m as usize),
            ("boundary.coarsest", Boundary::Coarsest, 0),
        ] {
            let mut tally = Tally::default();
            for (sign, xi) in [(Sign::Plus, &summary.xi_plus), (Sign::Minus, &summary.xi_minus)] {
                let closed = xi_boundary_closed_form(which, sign, triple);
                tally.equal(&xi[level], &closed, || format!("Ξ_{level} {sign:?}: tile sum vs closed form"));
            }
            out.push(CheckGroup::Boundary, name, tally);
        }
        out.timings.push(("boundary", start.elapsed()));
    }

    if want(CheckGroup::Sandwich) {
        let mut tally = Tally::default();
        let lower = &summary.xi_minus[m as usize] - &summary.xi_minus[0];
        let upper = &summary.xi_plus[m as usize] - &summary.xi_plus[0];
        tally.at_most(&lower, lambda, || "Ξ_M⁻ − Ξ_0⁻ ≤ Λ_W".into());
        tally.at_most(lambda, &upper, || "Λ_W ≤ Ξ_M⁺ − Ξ_0⁺".into());
        out.push(CheckGroup::Sandwich, "sandwich", tally);
    }

    if want(CheckGroup::Bound) {
        let mut tally = Tally::default();
        let (lhs, rhs) = bound_sides(triple, lambda);
        tally.at_most(&lhs, &rhs, || "Λ_W⁴ ≤ 2401 (‖F₁‖₂²)² ‖F₂‖₄⁴ ‖F₃‖₄⁴".into());
        out.push(CheckGroup::Bound, "bound", tally);
    }

    Ok(out)
}

/// Greedily zeroes cells of `triple` while `still_fails` keeps reporting a
/// failure. Returns the reduced input and its failure.
pub fn minimize_with(
    triple: &Triple,
    failure: Failure,
    mut still_fails: impl FnMut(&Triple) -> Option<Failure>,
) -> (Triple, Failure) {
    let mut current = triple.clone();
    let mut failure = failure;
    let side = 1u64 << triple.resolution();
    for slot in 0..3 {
        for y in 0..side {
            for x in 0..side {
                if current.get(slot).get(x, y).is_zero() {
                    continue;
                }
                let mut f = current.get(slot).clone();
                f.set(x, y, ExactScalar::zero());
                let candidate = current.replace(slot, f).expect("same resolution");
                if let Some(next) = still_fails(&candidate) {
                    current = candidate;
                    failure = next;
                }
            }
        }
    }
    (current, failure)
}

fn counterexample(trial: Option<u64>, triple: Option<&Triple>, failure: &Failure, minimized: bool) -> Counterexample {
    Counterexample {
        trial,
        functions: triple.map(FunctionFile::from_triple),
        location: failure.location.clone(),
        relation: failure.relation.to_string(),
        lhs: scalar::render(&failure.lhs),
        rhs: scalar::render(&failure.rhs),
        minimized,
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs every selected check on `cfg.trials` seeded random triples.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let m = cfg.resolution;
    let mut notes = Vec::new();
    let mut checks = Vec::new();
    let mut group_time: BTreeMap<&'static str, Duration> = BTreeMap::new();

    if m == 0 {
        notes.push("M = 0: the multitile set is empty, Λ_W = 0 and every multitile check holds vacuously".into());
    }
    if cfg.selected(CheckGroup::Decomposition) && m > cfg.oracle_max_resolution {
        notes.push(format!(
            "decomposition skipped: M = {m} exceeds oracle_max_M = {}",
            cfg.oracle_max_resolution
        ));
    }

    if cfg.selected(CheckGroup::Packets) {
        let pm = m.min(PACKET_ALGEBRA_MAX_RESOLUTION);
        if pm < m {
            notes.push(format!("packet algebra checked exhaustively at M = {pm}"));
        }
        let start = Instant::now();
        let algebra = [
            ("packets.w1", packets::check_w1(pm)),
            ("packets.w2", packets::check_w2(pm)),
            ("packets.w3", packets::check_w3(pm)),
            ("packets.w4", packets::check_w4(pm)),
            ("packets.w5", packets::check_w5(pm)),
            ("packets.orthogonality", packets::check_orthogonality(pm)),
        ];
        let elapsed = ms(start.elapsed());
        for (name, tally) in algebra {
            checks.push(CheckRecord {
                name: name.into(),
                instances_run: tally.run,
                passes: tally.run - tally.failures,
                failures: tally.failures,
                ok: tally.passed(),
                counterexample: tally.first.as_ref().map(|f| counterexample(None, None, f, false)),
                elapsed_ms: elapsed,
            });
        }
    }

    let outcomes: Vec<(Triple, TrialOutcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let triple = random_triple(m, cfg.seed, trial, &cfg.value_pool);
            evaluate_trial(&triple, cfg, None).map(|o| (triple, o))
        })
        .collect::<Result<_>>()?;

    // Merge in trial order; the first failing trial supplies the counterexample.
    let mut merged: Vec<(CheckGroup, &'static str, Tally, Option<(u64, usize)>)> = Vec::new();
    for (trial, (_, outcome)) in outcomes.iter().enumerate() {
        for (group, name, tally) in &outcome.tallies {
            let pos = match merged.iter().position(|(_, n, _, _)| n == name) {
                Some(p) => p,
                None => {
                    merged.push((*group, name, Tally::default(), None));
                    merged.len() - 1
                }
            };
            let entry = &mut merged[pos];
            entry.2.run += tally.run;
            entry.2.failures += tally.failures;
            if entry.3.is_none() && tally.failures > 0 {
                entry.3 = Some((trial as u64, trial));
            }
        }
        for (group, d) in &outcome.timings {
            *group_time.entry(group).or_default() += *d;
        }
    }

    for (group, name, tally, first) in merged {
        let counter = first.map(|(trial, idx)| {
            let (triple, outcome) = &outcomes[idx];
            let failure = outcome.failure(name).expect("failing trial recorded").clone();
            if cfg.minimize {
                let (small, failure) = minimize_with(triple, failure, |candidate| {
                    evaluate_trial(candidate, cfg, Some(group))
                        .ok()
                        .and_then(|o| o.failure(name).cloned())
                });
                counterexample(Some(trial), Some(&small), &failure, true)
            } else {
                counterexample(Some(trial), Some(triple), &failure, false)
            }
        });
        let elapsed = group_time.get(group.name()).copied().unwrap_or_default();
        checks.push(CheckRecord {
            name: name.into(),
            instances_run: tally.run,
            passes: tally.run - tally.failures,
            failures: tally.failures,
            ok: tally.passed(),
            counterexample: counter,
            elapsed_ms: ms(elapsed),
        });
    }

    let overall = checks.iter().all(|c| c.ok);
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        checks,
        overall,
        notes,
        timing_ms: group_time.into_iter().map(|(k, v)| (k.to_string(), ms(v))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepfun::StepFun2D;

    fn zero_pool_config(m: u32) -> SuiteConfig {
        let mut cfg = SuiteConfig::new(m, 2, 0);
        cfg.value_pool = ValuePool::zero();
        cfg
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::default();
        t.equal(&scalar::int(1), &scalar::int(1), || "a".into());
        t.equal(&scalar::int(1), &scalar::int(2), || "b".into());
        t.at_most(&scalar::int(3), &scalar::int(2), || "c".into());
        t.at_most(&scalar::int(1), &scalar::int(2), || "d".into());
        assert_eq!((t.run, t.failures), (4, 2));
        let first = t.first.unwrap();
        assert_eq!(first.location.as_deref(), Some("b"));
        assert_eq!((first.lhs, first.rhs), (scalar::int(1), scalar::int(2)));
    }

    #[test]
    fn check_names_parse() {
        for g in CheckGroup::ALL {
            assert_eq!(g.name().parse::<CheckGroup>().unwrap(), g);
            assert_eq!(serde_json::to_string(&g).unwrap(), format!("\"{}\"", g.name()));
        }
        assert!(matches!("lemmas".parse::<CheckGroup>(), Err(Error::Config(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::new(2, 0, 0);
        assert!(cfg.validate().is_err());
        cfg.trials = 1;
        cfg.oracle_max_resolution = 7;
        assert!(cfg.validate().is_err());
        cfg.oracle_override = true;
        assert!(cfg.validate().is_ok());
        cfg.checks.clear();
        assert!(cfg.validate().is_err());
        assert!(run_suite(&SuiteConfig::new(2, 0, 0)).is_err());
    }

    #[test]
    fn zero_inputs_pass_with_zero_sides() {
        let report = run_suite(&zero_pool_config(2)).unwrap();
        assert!(report.overall);
        assert!(report.checks.iter().all(|c| c.ok && c.failures == 0 && c.counterexample.is_none()));
        let (lhs, rhs) = bound_sides(&random_triple(2, 0, 0, &ValuePool::zero()), &ExactScalar::zero());
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn constant_inputs_have_strict_slack() {
        let one = StepFun2D::constant(2, scalar::int(1));
        let t = Triple::new(one.clone(), one.clone(), one).unwrap();
        let lambda = crate::bellman::lambda_w_tiles(&t).unwrap();
        assert!(lambda.is_zero());
        assert_eq!(bound_sides(&t, &lambda), (ExactScalar::zero(), scalar::int(2401)));
    }

    #[test]
    fn random_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig::new(2, 12, 1);
        let a = run_suite(&cfg).unwrap();
        assert!(a.overall, "{}", a.to_json());
        for c in &a.checks {
            assert_eq!(c.passes + c.failures, c.instances_run);
            assert!(c.instances_run > 0, "{} ran nothing", c.name);
        }
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    }

    #[test]
    fn selector_limits_checks() {
        let cfg = SuiteConfig::new(3, 2, 5).with_checks(&[CheckGroup::Lemma]);
        let report = run_suite(&cfg).unwrap();
        let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, LEMMA_CHECKS.to_vec());
        // 2 trials × (4 + 8 + 16) multitiles.
        assert!(report.checks.iter().all(|c| c.instances_run == 56));
    }

    #[test]
    fn degenerate_and_skipped_cases_are_noted() {
        let r0 = run_suite(&SuiteConfig::new(0, 1, 0)).unwrap();
        assert!(r0.overall);
        assert!(r0.notes.iter().any(|n| n.contains("M = 0")));

        let mut cfg = SuiteConfig::new(3, 1, 0).with_checks(&[CheckGroup::Decomposition]);
        cfg.oracle_max_resolution = 2;
        let r = run_suite(&cfg).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("decomposition skipped")));
        assert_eq!(r.check("decomposition").unwrap().instances_run, 0);
    }

    #[test]
    fn minimization_shrinks_to_the_culprit() {
        let t = random_triple(2, 3, 0, &ValuePool { zero_percent: 0, numer_min: 1, ..ValuePool::default() });
        // "Fails" while F₂ has a nonzero cell at (1, 2).
        let culprit = |c: &Triple| {
            let v = c.f2().get(1, 2).clone();
            (!v.is_zero()).then(|| Failure::new(None, "=", v, ExactScalar::zero()))
        };
        let first = culprit(&t).unwrap();
        let (small, failure) = minimize_with(&t, first, culprit);
        assert!(small.f1().is_zero() && small.f3().is_zero());
        let nonzero: Vec<_> = small.f2().cells().iter().filter(|v| !v.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(failure.lhs, *t.f2().get(1, 2));

        let cx = counterexample(Some(0), Some(&small), &failure, true);
        assert!(cx.minimized);
        assert_eq!(cx.functions.unwrap().to_triple().unwrap(), small);
    }

    #[test]
    fn report_json_shape() {
        let report = run_suite(&SuiteConfig::new(1, 1, 0).with_checks(&[CheckGroup::Bound])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["config"]["M"], 1);
        assert_eq!(v["checks"][0]["name"], "bound");
        for key in ["run", "pass", "fail", "ok", "elapsed_ms"] {
            assert!(v["checks"][0].get(key).is_some(), "{key}");
        }
        assert!(v["checks"][0].get("counterexample").is_none());
        assert_eq!(v["overall"], true);
        assert!(v["version"].is_string());
    }
}
