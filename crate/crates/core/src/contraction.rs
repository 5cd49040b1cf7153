//! Comparison functions, the implicit six-argument contraction family and
//! its condition certifiers, plus the built-in catalog of classic forms.
//!
//! The conditions quantify over all of `R+^2`, so they are certified on
//! grids, not proved: a passing verdict is always `PassOnGrid`. Failing
//! verdicts carry a self-verifying witness — re-evaluating the witness
//! reproduces the violation. A tuple on which `F` is undefined (division by
//! zero in a denominator form) is skipped as not-applicable rather than
//! treated as a failure; a check whose every probe is undefined reports
//! `NotApplicable` overall.

use crate::expr::{EvalError, Expr};
use crate::solver::{MappingPair, SolverError};
use crate::spaces::{PointRef, Space};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Tolerance separating genuine zeros from float noise in implication
/// triggers and strict inequalities.
pub const EPS_TOL: f64 = 1e-9;

/// Iterates of a comparison function must fall below this threshold.
pub const DECAY_TOL: f64 = 1e-9;

/// Cap on the number of iterations the decay check applies.
pub const DECAY_MAX_ITERS: usize = 10_000;

// ---------------------------------------------------------------------------
// Comparison functions
// ---------------------------------------------------------------------------

/// An increasing function on `[0, inf)` whose iterates vanish: `phi^n(t) -> 0`
/// for every `t > 0`. Consequently `phi(t) < t` on `(0, inf)` and `phi(0) = 0`.
#[derive(Clone)]
pub struct ComparisonFn {
    pub label: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ComparisonFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComparisonFn({})", self.label)
    }
}

impl ComparisonFn {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ComparisonFn {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// `phi(t) = k*t`.
    pub fn linear(k: f64) -> Self {
        ComparisonFn::new(format!("{k}*t"), move |t| k * t)
    }

    /// Wraps an expression in the single variable `t`. Evaluation errors map
    /// to NaN, which every certifier treats as a violation.
    pub fn from_expr(expr: Expr) -> Self {
        let label = expr.to_string();
        ComparisonFn::new(label, move |t| {
            expr.eval_with(&[("t", t)]).unwrap_or(f64::NAN)
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

/// `rho` such that `t -> rho(2t)` is itself a comparison function.
#[derive(Debug, Clone)]
pub struct HalfComparisonFn {
    inner: ComparisonFn,
}

impl HalfComparisonFn {
    pub fn new(inner: ComparisonFn) -> Self {
        HalfComparisonFn { inner }
    }

    pub fn linear(k: f64) -> Self {
        HalfComparisonFn::new(ComparisonFn::linear(k))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.inner.eval(t)
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// The induced comparison function `t -> rho(2t)`.
    pub fn doubled(&self) -> ComparisonFn {
        let inner = self.inner.clone();
        ComparisonFn::new(format!("({})(2t)", inner.label), move |t| inner.eval(2.0 * t))
    }
}

// ---------------------------------------------------------------------------
// Implicit contractions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    F1a,
    F1b,
    F1c,
    F2,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::F1a, Condition::F1b, Condition::F1c, Condition::F2];

    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::F1a => "F1a",
            Condition::F1b => "F1b",
            Condition::F1c => "F1c",
            Condition::F2 => "F2",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f1a" => Ok(Condition::F1a),
            "f1b" => Ok(Condition::F1b),
            "f1c" => Ok(Condition::F1c),
            "f2" => Ok(Condition::F2),
            _ => Err(format!("unknown condition `{s}`")),
        }
    }
}

/// A continuous `F: R+^6 -> R` with a named companion comparison function and
/// the set of conditions claimed (and, where known, denied) for it.
#[derive(Clone)]
pub struct ImplicitContraction {
    pub label: String,
    pub formula: String,
    f: Arc<dyn Fn(&[f64; 6]) -> Result<f64, EvalError> + Send + Sync>,
    pub companion: ComparisonFn,
    /// Present when the contraction is built around a half-comparison.
    pub rho: Option<HalfComparisonFn>,
    pub claims: BTreeSet<Condition>,
    pub denied: BTreeSet<Condition>,
    pub params: Vec<(String, f64)>,
}

impl fmt::Debug for ImplicitContraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImplicitContraction")
            .field("label", &self.label)
            .field("formula", &self.formula)
            .field("claims", &self.claims)
            .finish_non_exhaustive()
    }
}

impl ImplicitContraction {
    pub fn new(
        label: impl Into<String>,
        formula: impl Into<String>,
        f: impl Fn(&[f64; 6]) -> Result<f64, EvalError> + Send + Sync + 'static,
        companion: ComparisonFn,
    ) -> Self {
        ImplicitContraction {
            label: label.into(),
            formula: formula.into(),
            f: Arc::new(f),
            companion,
            rho: None,
            claims: BTreeSet::new(),
            denied: BTreeSet::new(),
            params: Vec::new(),
        }
    }

    /// Wraps a six-variable expression over `t1..t6`.
    pub fn from_expr(label: impl Into<String>, expr: Expr, companion: ComparisonFn) -> Self {
        let formula = expr.to_string();
        ImplicitContraction::new(
            label,
            formula,
            move |t| {
                expr.eval_with(&[
                    ("t1", t[0]),
                    ("t2", t[1]),
                    ("t3", t[2]),
                    ("t4", t[3]),
                    ("t5", t[4]),
                    ("t6", t[5]),
                ])
            },
            companion,
        )
    }

    pub fn with_claims(mut self, claims: &[Condition]) -> Self {
        self.claims = claims.iter().copied().collect();
        self
    }

    pub fn with_denied(mut self, denied: &[Condition]) -> Self {
        self.denied = denied.iter().copied().collect();
        self
    }

    pub fn with_rho(mut self, rho: HalfComparisonFn) -> Self {
        self.rho = Some(rho);
        self
    }

    pub fn with_params(mut self, params: Vec<(String, f64)>) -> Self {
        self.params = params;
        self
    }

    pub fn eval(&self, t: &[f64; 6]) -> Result<f64, EvalError> {
        (self.f)(t)
    }
}

// ---------------------------------------------------------------------------
// Grids and reports
// ---------------------------------------------------------------------------

/// The probe values a certifier scans.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Ascending, starting at 0.
    pub points: Vec<f64>,
    pub label: String,
}

impl GridSpec {
    /// 25 log-spaced points over `(1e-3, 1e3]` plus the boundary value 0.
    pub fn default_log() -> GridSpec {
        let mut points = vec![0.0];
        for k in 1..=25 {
            points.push(10f64.powf(-3.0 + 6.0 * k as f64 / 25.0));
        }
        GridSpec {
            points,
            label: "25 log points over (1e-3, 1e3] plus 0".into(),
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::default_log()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Comparison,
    HalfComparison,
    F1a,
    F1b,
    F1c,
    F2,
    Inequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionVerdict {
    PassOnGrid,
    Counterexample,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `phi(s) > phi(t)` although `s <= t`.
    NotIncreasing { s: f64, t: f64, phi_s: f64, phi_t: f64 },
    /// Iterates from `start` did not fall below the decay tolerance.
    NoDecay { start: f64, iterations: usize, reached: f64 },
    /// `phi(t) >= t` for a positive `t`.
    NotContractive { t: f64, phi_t: f64 },
    NotZeroAtZero { phi_zero: f64 },
    NegativeValue { t: f64, phi_t: f64 },
    /// `F(tuple) <= 0` but `u > phi(v)`.
    Implication { u: f64, v: f64, tuple: [f64; 6], f_value: f64, phi_v: f64 },
    /// `F` grows when the designated variable grows.
    NotDecreasingInVar {
        var: usize,
        tuple_lo: [f64; 6],
        tuple_hi: [f64; 6],
        f_lo: f64,
        f_hi: f64,
    },
    /// `F(u,u,0,0,u,u) <= 0` for a positive `u`.
    Positivity { u: f64, f_value: f64 },
    /// The main inequality fails at a sampled pair of points.
    PairViolation { x: PointRef, y: PointRef, tuple: [f64; 6], f_value: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotIncreasing { s, t, phi_s, phi_t } => {
                write!(f, "phi({s}) = {phi_s} > {phi_t} = phi({t}) although {s} <= {t}")
            }
            Witness::NoDecay { start, iterations, reached } => {
                write!(f, "phi^{iterations}({start}) = {reached} has not decayed below {DECAY_TOL}")
            }
            Witness::NotContractive { t, phi_t } => write!(f, "phi({t}) = {phi_t} >= {t}"),
            Witness::NotZeroAtZero { phi_zero } => write!(f, "phi(0) = {phi_zero} != 0"),
            Witness::NegativeValue { t, phi_t } => write!(f, "phi({t}) = {phi_t} < 0"),
            Witness::Implication { u, v, tuple, f_value, phi_v } => write!(
                f,
                "F{tuple:?} = {f_value} <= 0 but u = {u} > {phi_v} = phi({v})"
            ),
            Witness::NotDecreasingInVar { var, tuple_lo, tuple_hi, f_lo, f_hi } => write!(
                f,
                "F is not decreasing in t{var}: F{tuple_lo:?} = {f_lo} < {f_hi} = F{tuple_hi:?}"
            ),
            Witness::Positivity { u, f_value } => {
                write!(f, "F(u,u,0,0,u,u) = {f_value} <= 0 at u = {u}")
            }
            Witness::PairViolation { x, y, tuple, f_value } => {
                write!(f, "F{tuple:?} = {f_value} > 0 at the pair ({x}, {y})")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub subject: String,
    pub check: CheckKind,
    pub verdict: ConditionVerdict,
    pub witness: Option<Witness>,
    pub grid: String,
    pub evaluated: usize,
    pub skipped: usize,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.verdict == ConditionVerdict::PassOnGrid
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            ConditionVerdict::PassOnGrid => "pass-on-grid",
            ConditionVerdict::Counterexample => "counterexample",
            ConditionVerdict::NotApplicable => "not applicable",
        };
        write!(
            f,
            "{:?} of {}: {verdict} ({} evaluated, {} skipped; {})",
            self.check, self.subject, self.evaluated, self.skipped, self.grid
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Comparison-function certification
// ---------------------------------------------------------------------------

/// Certifies the comparison-function axioms on a grid: nonnegative,
/// increasing, `phi(t) < t` and `phi(0) = 0`, with iterates from every grid
/// point decaying below [`DECAY_TOL`].
pub fn check_comparison(phi: &ComparisonFn, grid: &GridSpec) -> ConditionReport {
    check_comparison_as(phi, grid, CheckKind::Comparison, format!("phi(t) = {}", phi.label))
}

fn check_comparison_as(
    phi: &ComparisonFn,
    grid: &GridSpec,
    check: CheckKind,
    subject: String,
) -> ConditionReport {
    let mut evaluated = 0usize;
    let mut witness = None;

    let bad = |v: f64| !v.is_finite();
    'scan: {
        let phi_zero = phi.eval(0.0);
        evaluated += 1;
        if bad(phi_zero) || phi_zero.abs() > EPS_TOL {
            witness = Some(Witness::NotZeroAtZero { phi_zero });
            break 'scan;
        }
        let mut prev: Option<(f64, f64)> = None;
        for &t in &grid.points {
            let v = phi.eval(t);
            evaluated += 1;
            if bad(v) || v < -EPS_TOL {
                witness = Some(Witness::NegativeValue { t, phi_t: v });
                break 'scan;
            }
            if let Some((s, vs)) = prev {
                if vs > v + 1e-12 {
                    witness = Some(Witness::NotIncreasing { s, t, phi_s: vs, phi_t: v });
                    break 'scan;
                }
            }
            prev = Some((t, v));
            if t > 0.0 && v >= t {
                witness = Some(Witness::NotContractive { t, phi_t: v });
                break 'scan;
            }
        }
        for &t in &grid.points {
            if t <= 0.0 {
                continue;
            }
            let mut v = t;
            let mut iters = 0usize;
            while iters < DECAY_MAX_ITERS && v >= DECAY_TOL {
                v = phi.eval(v);
                iters += 1;
                evaluated += 1;
                if bad(v) {
                    break;
                }
            }
            if bad(v) || v >= DECAY_TOL {
                witness = Some(Witness::NoDecay { start: t, iterations: iters, reached: v });
                break 'scan;
            }
        }
    }

    ConditionReport {
        subject,
        check,
        verdict: if witness.is_some() {
            ConditionVerdict::Counterexample
        } else {
            ConditionVerdict::PassOnGrid
        },
        witness,
        grid: grid.label.clone(),
        evaluated,
        skipped: 0,
    }
}

/// Certifies that `t -> rho(2t)` is a comparison function (hence in
/// particular `rho(2t) < t` on the grid).
pub fn check_half_comparison(rho: &HalfComparisonFn, grid: &GridSpec) -> ConditionReport {
    check_comparison_as(
        &rho.doubled(),
        grid,
        CheckKind::HalfComparison,
        format!("rho(t) = {}", rho.label()),
    )
}

// ---------------------------------------------------------------------------
// Condition certification for implicit contractions
// ---------------------------------------------------------------------------

fn characteristic_tuple(which: Condition, u: f64, v: f64) -> [f64; 6] {
    match which {
        Condition::F1a => [u, v, v, u, u + v, 0.0],
        Condition::F1b => [u, v, 0.0, u + v, u, v],
        Condition::F1c => [u, v, u + v, 0.0, v, u],
        Condition::F2 => [u, u, 0.0, 0.0, u, u],
    }
}

fn designated_var(which: Condition) -> usize {
    match which {
        Condition::F1a => 4, // fifth variable, 0-based
        Condition::F1b => 3,
        Condition::F1c => 2,
        Condition::F2 => unreachable!("F2 has no designated variable"),
    }
}

/// Base values for the non-designated coordinates of the monotonicity scan.
const MONO_BASES: [f64; 4] = [0.0, 0.1, 1.0, 10.0];

/// Certifies one of `F1a`/`F1b`/`F1c` on a grid: the implication
/// `F(characteristic tuple) <= 0  =>  u <= phi(v)` over all grid pairs, and
/// monotone decrease of `F` in the designated variable over sampled tuples.
///
/// Panics if `which` is `F2`; use [`check_condition_f2`] for that.
pub fn check_condition_f1(
    ic: &ImplicitContraction,
    which: Condition,
    grid: &GridSpec,
) -> ConditionReport {
    assert!(which != Condition::F2, "use check_condition_f2 for F2");
    let check = match which {
        Condition::F1a => CheckKind::F1a,
        Condition::F1b => CheckKind::F1b,
        Condition::F1c => CheckKind::F1c,
        Condition::F2 => unreachable!(),
    };
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut witness = None;

    'scan: {
        // Implication on characteristic tuples.
        for &u in &grid.points {
            for &v in &grid.points {
                let tuple = characteristic_tuple(which, u, v);
                match ic.eval(&tuple) {
                    Err(_) => skipped += 1,
                    Ok(f_value) => {
                        evaluated += 1;
                        if f_value <= EPS_TOL {
                            let phi_v = ic.companion.eval(v);
                            if !(u <= phi_v + EPS_TOL) {
                                witness = Some(Witness::Implication { u, v, tuple, f_value, phi_v });
                                break 'scan;
                            }
                        }
                    }
                }
            }
        }
        // Monotone decrease in the designated variable over sampled tuples.
        let var = designated_var(which);
        let b = MONO_BASES.len();
        for code in 0..b.pow(5) {
            let mut rest = code;
            let mut tuple = [0.0f64; 6];
            let mut slot = 0;
            for pos in 0..6 {
                if pos == var {
                    continue;
                }
                tuple[pos] = MONO_BASES[rest % b];
                rest /= b;
                slot += 1;
            }
            debug_assert_eq!(slot, 5);
            let mut prev: Option<(f64, f64)> = None;
            for &g in &grid.points {
                tuple[var] = g;
                match ic.eval(&tuple) {
                    Err(_) => {
                        skipped += 1;
                        prev = None;
                    }
                    Ok(f_value) => {
                        evaluated += 1;
                        if let Some((pg, pf)) = prev {
                            if f_value > pf + EPS_TOL {
                                let mut tuple_lo = tuple;
                                tuple_lo[var] = pg;
                                witness = Some(Witness::NotDecreasingInVar {
                                    var: var + 1,
                                    tuple_lo,
                                    tuple_hi: tuple,
                                    f_lo: pf,
                                    f_hi: f_value,
                                });
                                break 'scan;
                            }
                        }
                        prev = Some((g, f_value));
                    }
                }
            }
        }
    }

    let verdict = if witness.is_some() {
        ConditionVerdict::Counterexample
    } else if evaluated == 0 && skipped > 0 {
        ConditionVerdict::NotApplicable
    } else {
        ConditionVerdict::PassOnGrid
    };
    ConditionReport {
        subject: ic.label.clone(),
        check,
        verdict,
        witness,
        grid: grid.label.clone(),
        evaluated,
        skipped,
    }
}

/// Certifies `F2`: `F(u,u,0,0,u,u) > 0` for every positive grid `u`. When
/// `F` is undefined on every probe the verdict is `NotApplicable`.
pub fn check_condition_f2(ic: &ImplicitContraction, grid: &GridSpec) -> ConditionReport {
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut witness = None;
    for &u in &grid.points {
        if u <= 0.0 {
            continue;
        }
        let tuple = characteristic_tuple(Condition::F2, u, u);
        match ic.eval(&tuple) {
            Err(_) => skipped += 1,
            Ok(f_value) => {
                evaluated += 1;
                if f_value <= EPS_TOL {
                    witness = Some(Witness::Positivity { u, f_value });
                    break;
                }
            }
        }
    }
    let verdict = if witness.is_some() {
        ConditionVerdict::Counterexample
    } else if evaluated == 0 && skipped > 0 {
        ConditionVerdict::NotApplicable
    } else {
        ConditionVerdict::PassOnGrid
    };
    ConditionReport {
        subject: ic.label.clone(),
        check: CheckKind::F2,
        verdict,
        witness,
        grid: grid.label.clone(),
        evaluated,
        skipped,
    }
}

/// Runs all four condition certifiers.
pub fn check_all_conditions(ic: &ImplicitContraction, grid: &GridSpec) -> Vec<ConditionReport> {
    vec![
        check_condition_f1(ic, Condition::F1a, grid),
        check_condition_f1(ic, Condition::F1b, grid),
        check_condition_f1(ic, Condition::F1c, grid),
        check_condition_f2(ic, grid),
    ]
}

/// Certifies a single named condition.
pub fn check_condition(ic: &ImplicitContraction, which: Condition, grid: &GridSpec) -> ConditionReport {
    match which {
        Condition::F2 => check_condition_f2(ic, grid),
        other => check_condition_f1(ic, other, grid),
    }
}

// ---------------------------------------------------------------------------
// The contraction inequality on a concrete space
// ---------------------------------------------------------------------------

/// How pairs are drawn for [`evaluate_contraction`].
#[derive(Debug, Clone)]
pub struct PairSampler {
    /// Highest index considered on indexed spaces.
    pub index_cap: u64,
    /// Sample count on numeric spaces.
    pub numeric_points: usize,
    /// Ignore the order filter and test all pairs (metric-space mode).
    pub all_pairs: bool,
}

impl Default for PairSampler {
    fn default() -> Self {
        PairSampler {
            index_cap: 50,
            numeric_points: 41,
            all_pairs: false,
        }
    }
}

/// Checks `F(d(Tx,Ty), d(Sx,Sy), d(Sx,Tx), d(Sy,Ty), d(Sx,Ty), d(Sy,Tx)) <= 0`
/// over every sampled pair with `Sx <= Sy` (or over all pairs in metric-space
/// mode). Finite spaces are enumerated exhaustively.
pub fn evaluate_contraction(
    space: &Space,
    pair: &MappingPair,
    ic: &ImplicitContraction,
    sampler: &PairSampler,
) -> Result<ConditionReport, SolverError> {
    let (points, grid_label): (Vec<PointRef>, String) = match space {
        Space::Finite(s) => (
            (0..s.len()).map(PointRef::Finite).collect(),
            format!("exhaustive over {} points", s.len()),
        ),
        Space::Indexed(s) => {
            let cap = sampler.index_cap.min(s.budget());
            (
                (0..=cap).map(PointRef::Indexed).collect(),
                format!("indices 0..={cap}"),
            )
        }
        Space::Numeric(s) => {
            let pts = s.sample(sampler.numeric_points);
            let label = format!("{} sampled reals", pts.len());
            (pts.into_iter().map(PointRef::Numeric).collect(), label)
        }
    };

    let mut images = Vec::with_capacity(points.len());
    for &x in &points {
        let sx = pair.s_of(space, x)?;
        let tx = pair.t_of(space, x)?;
        images.push((x, sx, tx));
    }

    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut witness = None;
    'outer: for &(x, sx, tx) in &images {
        for &(y, sy, ty) in &images {
            if !sampler.all_pairs && !space.leq(sx, sy)? {
                continue;
            }
            let tuple = [
                space.metric(tx, ty)?,
                space.metric(sx, sy)?,
                space.metric(sx, tx)?,
                space.metric(sy, ty)?,
                space.metric(sx, ty)?,
                space.metric(sy, tx)?,
            ];
            match ic.eval(&tuple) {
                Err(_) => skipped += 1,
                Ok(f_value) => {
                    evaluated += 1;
                    if f_value > EPS_TOL {
                        witness = Some(Witness::PairViolation { x, y, tuple, f_value });
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(ConditionReport {
        subject: ic.label.clone(),
        check: CheckKind::Inequality,
        verdict: if witness.is_some() {
            ConditionVerdict::Counterexample
        } else {
            ConditionVerdict::PassOnGrid
        },
        witness,
        grid: grid_label,
        evaluated,
        skipped,
    })
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown contraction id `{id}`; available: {available}")]
    UnknownId { id: String, available: String },
    #[error("unknown parameter `{name}` for contraction `{id}`")]
    UnknownParam { id: String, name: String },
    #[error("invalid parameter `{name}` = {value} for contraction `{id}`: {msg}")]
    InvalidParam {
        id: String,
        name: String,
        value: f64,
        msg: String,
    },
}

/// One catalog form with its default parameters and claimed conditions.
pub struct CatalogEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub defaults: &'static [(&'static str, f64)],
    pub claims: &'static [Condition],
    pub denied: &'static [Condition],
    builder: fn(&CatalogEntry, &[(String, f64)]) -> ImplicitContraction,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatalogEntry({})", self.id)
    }
}

impl CatalogEntry {
    /// Builds the entry with defaults overridden by `overrides`.
    pub fn build(&self, overrides: &[(String, f64)]) -> Result<ImplicitContraction, CatalogError> {
        let mut params: Vec<(String, f64)> = self
            .defaults
            .iter()
            .map(|(n, v)| (n.to_string(), *v))
            .collect();
        for (name, value) in overrides {
            match params.iter_mut().find(|(n, _)| n == name) {
                Some(slot) => slot.1 = *value,
                None => {
                    return Err(CatalogError::UnknownParam {
                        id: self.id.into(),
                        name: name.clone(),
                    })
                }
            }
        }
        for (name, value) in &params {
            if !value.is_finite() || *value < 0.0 {
                return Err(CatalogError::InvalidParam {
                    id: self.id.into(),
                    name: name.clone(),
                    value: *value,
                    msg: "must be finite and nonnegative".into(),
                });
            }
            if name == "k" && *value >= 1.0 {
                return Err(CatalogError::InvalidParam {
                    id: self.id.into(),
                    name: name.clone(),
                    value: *value,
                    msg: "must lie in [0, 1)".into(),
                });
            }
        }
        Ok((self.builder)(self, &params))
    }

    pub fn build_default(&self) -> ImplicitContraction {
        self.build(&[]).expect("defaults are valid")
    }
}

fn param(params: &[(String, f64)], name: &str) -> f64 {
    params
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| *v)
        .expect("parameter resolved by build")
}

fn max5(t: &[f64; 6]) -> f64 {
    t[1].max(t[2]).max(t[3]).max(t[4]).max(t[5])
}

fn finish(
    entry: &CatalogEntry,
    params: &[(String, f64)],
    ic: ImplicitContraction,
) -> ImplicitContraction {
    ic.with_claims(entry.claims)
        .with_denied(entry.denied)
        .with_params(params.to_vec())
}

macro_rules! entry {
    ($id:literal, $formula:literal, $defaults:expr, $claims:expr, $denied:expr, $builder:expr) => {
        CatalogEntry {
            id: $id,
            formula: $formula,
            defaults: $defaults,
            claims: $claims,
            denied: $denied,
            builder: $builder,
        }
    };
}

use Condition::{F1a, F1b, F1c, F2};

static CATALOG: &[CatalogEntry] = &[
    entry!(
        "banach",
        "t1 - psi(t2)",
        &[("k", 0.5)],
        &[F1a, F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("banach (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * t[1]),
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "linear-quasi",
        "t1 - k*max(t2, t3, t4, t5, t6)",
        &[("k", 0.3)],
        &[F1a, F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            let c = k / (1.0 - k);
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("linear-quasi (k = {k})"),
                    e.formula,
                    move |t| Ok(t[0] - k * max5(t)),
                    ComparisonFn::new(format!("{k}*t/(1 - {k})"), move |t| c * t),
                ),
            )
        }
    ),
    entry!(
        "nonlinear-quasi",
        "t1 - rho(max(t2, t3, t4, t5, t6))",
        &[("k", 0.4)],
        &[F1a, F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            let rho = HalfComparisonFn::linear(k);
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("nonlinear-quasi (rho(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * max5(t)),
                    rho.doubled(),
                )
                .with_rho(rho),
            )
        }
    ),
    entry!(
        "ratio-t3",
        "t1 - psi(t3*(t5 + t6)/(t2 + t4))",
        &[("k", 0.5)],
        &[F1a, F2],
        &[F1b, F1c],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("ratio-t3 (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        let denom = t[1] + t[3];
                        if denom == 0.0 {
                            return Err(EvalError::DivisionByZero { numerator: t[2] });
                        }
                        Ok(t[0] - k * (t[2] * (t[4] + t[5]) / denom))
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "ratio-t2",
        "t1 - psi(t2*(t5 + t6)/(t3 + t4))",
        &[("k", 0.5)],
        &[F1a],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("ratio-t2 (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        let denom = t[2] + t[3];
                        if denom == 0.0 {
                            return Err(EvalError::DivisionByZero { numerator: t[1] });
                        }
                        Ok(t[0] - k * (t[1] * (t[4] + t[5]) / denom))
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "kannan",
        "t1 - rho(t3 + t4)",
        &[("k", 0.4)],
        &[F1a, F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            let rho = HalfComparisonFn::linear(k);
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("kannan (rho(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * (t[2] + t[3])),
                    rho.doubled(),
                )
                .with_rho(rho),
            )
        }
    ),
    entry!(
        "kannan-psi",
        "t1 - psi(t3 + t4)",
        &[("k", 0.6)],
        &[F2],
        &[F1a, F1b, F1c],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("kannan-psi (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * (t[2] + t[3])),
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "sum-t2t3",
        "t1 - rho(t2 + t3)",
        &[("k", 0.4)],
        &[F1a, F1b, F2],
        &[F1c],
        |e, p| {
            let k = param(p, "k");
            let rho = HalfComparisonFn::linear(k);
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("sum-t2t3 (rho(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * (t[1] + t[2])),
                    rho.doubled(),
                )
                .with_rho(rho),
            )
        }
    ),
    entry!(
        "sum-t2t3-psi",
        "t1 - psi(t2 + t3)",
        &[("k", 0.6)],
        &[F1b, F2],
        &[F1a, F1c],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("sum-t2t3-psi (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| Ok(t[0] - k * (t[1] + t[2])),
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "avg34-max",
        "t1 - psi(max(t2, (t3 + t4)/2, t5, t6))",
        &[("k", 0.5)],
        &[F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("avg34-max (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        Ok(t[0] - k * t[1].max((t[2] + t[3]) / 2.0).max(t[4]).max(t[5]))
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "avg56-max",
        "t1 - psi(max(t2, t3, t4, (t5 + t6)/2))",
        &[("k", 0.5)],
        &[F1a, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("avg56-max (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        Ok(t[0] - k * t[1].max(t[2]).max(t[3]).max((t[4] + t[5]) / 2.0))
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "avg56-max-l",
        "t1 - psi(max(t2, t3, t4, (t5 + t6)/2)) - L*min(t3, t4, t5, t6)",
        &[("k", 0.5), ("L", 1.0)],
        &[F1a, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            let l = param(p, "L");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("avg56-max-l (psi(t) = {k}*t, L = {l})"),
                    e.formula,
                    move |t| {
                        let m = t[1].max(t[2]).max(t[3]).max((t[4] + t[5]) / 2.0);
                        let mn = t[2].min(t[3]).min(t[4]).min(t[5]);
                        Ok(t[0] - k * m - l * mn)
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "avg-pairs",
        "t1 - psi(max(t2, (t3 + t4)/2, (t5 + t6)/2))",
        &[("k", 0.5)],
        &[F1a, F1b, F1c, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("avg-pairs (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        Ok(t[0] - k * t[1].max((t[2] + t[3]) / 2.0).max((t[4] + t[5]) / 2.0))
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
    entry!(
        "mixed-max",
        "t1 - psi(max(t2, t3, t4/2, (t5 + t6)/2, t6))",
        &[("k", 0.5)],
        &[F1a, F1b, F2],
        &[],
        |e, p| {
            let k = param(p, "k");
            finish(
                e,
                p,
                ImplicitContraction::new(
                    format!("mixed-max (psi(t) = {k}*t)"),
                    e.formula,
                    move |t| {
                        let m = t[1]
                            .max(t[2])
                            .max(t[3] / 2.0)
                            .max((t[4] + t[5]) / 2.0)
                            .max(t[5]);
                        Ok(t[0] - k * m)
                    },
                    ComparisonFn::linear(k),
                ),
            )
        }
    ),
];

/// The built-in contraction forms, addressable by stable string ids.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

/// Builds a catalog entry by id with parameter overrides.
pub fn build_contraction(
    id: &str,
    overrides: &[(String, f64)],
) -> Result<ImplicitContraction, CatalogError> {
    match CATALOG.iter().find(|e| e.id == id) {
        Some(e) => e.build(overrides),
        None => Err(CatalogError::UnknownId {
            id: id.into(),
            available: CATALOG
                .iter()
                .map(|e| e.id)
                .collect::<Vec<_>>()
                .join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::default_log()
    }

    #[test]
    fn default_grid_shape() {
        let g = grid();
        assert_eq!(g.points.len(), 26);
        assert_eq!(g.points[0], 0.0);
        assert!(g.points[1] > 1e-3 && g.points[1] < 2e-3);
        assert_eq!(*g.points.last().unwrap(), 1e3);
    }

    #[test]
    fn halving_passes_comparison_check() {
        let phi = ComparisonFn::new("t/2", |t| t / 2.0);
        assert!(check_comparison(&phi, &grid()).passed());
    }

    #[test]
    fn linear_slopes_below_one_pass() {
        for k in [0.0, 0.25, 0.5, 0.9, 0.99] {
            let r = check_comparison(&ComparisonFn::linear(k), &grid());
            assert!(r.passed(), "k = {k}: {r}");
        }
    }

    #[test]
    fn identity_fails_comparison_check() {
        let r = check_comparison(&ComparisonFn::new("t", |t| t), &grid());
        assert_eq!(r.verdict, ConditionVerdict::Counterexample);
        match r.witness {
            Some(Witness::NotContractive { t, phi_t }) => {
                assert!(phi_t >= t, "witness must re-verify");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn half_comparison_boundary_at_one_half() {
        assert!(check_half_comparison(&HalfComparisonFn::linear(0.4), &grid()).passed());
        assert!(check_half_comparison(&HalfComparisonFn::linear(0.0), &grid()).passed());
        let r = check_half_comparison(&HalfComparisonFn::linear(0.5), &grid());
        assert_eq!(r.verdict, ConditionVerdict::Counterexample);
        match r.witness {
            Some(Witness::NotContractive { t, phi_t }) => {
                // rho(2t) = t exactly at k = 1/2
                assert!(phi_t >= t);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn linear_quasi_claims_pass() {
        let ic = build_contraction("linear-quasi", &[("k".into(), 0.3)]).unwrap();
        for c in Condition::ALL {
            let r = check_condition(&ic, c, &grid());
            assert!(r.passed(), "{c}: {r}");
        }
    }

    #[test]
    fn ratio_t3_fails_f1c_with_reverifiable_witness() {
        let ic = build_contraction("ratio-t3", &[]).unwrap();
        let r = check_condition_f1(&ic, Condition::F1c, &grid());
        assert_eq!(r.verdict, ConditionVerdict::Counterexample);
        match r.witness {
            Some(Witness::Implication { u, v, tuple, .. }) => {
                let f_value = ic.eval(&tuple).unwrap();
                assert!(f_value <= EPS_TOL);
                assert!(u > ic.companion.eval(v) + EPS_TOL);
            }
            Some(Witness::NotDecreasingInVar { tuple_lo, tuple_hi, .. }) => {
                let lo = ic.eval(&tuple_lo).unwrap();
                let hi = ic.eval(&tuple_hi).unwrap();
                assert!(hi > lo + EPS_TOL);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn ratio_t3_fails_f1b_via_monotonicity() {
        let ic = build_contraction("ratio-t3", &[]).unwrap();
        let r = check_condition_f1(&ic, Condition::F1b, &grid());
        assert_eq!(r.verdict, ConditionVerdict::Counterexample);
        match r.witness {
            Some(Witness::NotDecreasingInVar { var, tuple_lo, tuple_hi, .. }) => {
                assert_eq!(var, 4);
                let lo = ic.eval(&tuple_lo).unwrap();
                let hi = ic.eval(&tuple_hi).unwrap();
                assert!(hi > lo + EPS_TOL, "witness must re-verify");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn ratio_t2_f2_not_applicable() {
        let ic = build_contraction("ratio-t2", &[]).unwrap();
        let r = check_condition_f2(&ic, &grid());
        assert_eq!(r.verdict, ConditionVerdict::NotApplicable);
        assert!(r.evaluated == 0 && r.skipped > 0);
    }

    #[test]
    fn plain_t1_passes_f1a_vacuously() {
        let ic = ImplicitContraction::new(
            "bare",
            "t1",
            |t| Ok(t[0]),
            ComparisonFn::new("t/2", |t| t / 2.0),
        );
        let r = check_condition_f1(&ic, Condition::F1a, &grid());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn f2_equality_counterexample() {
        let ic = ImplicitContraction::new(
            "difference",
            "t1 - t2",
            |t| Ok(t[0] - t[1]),
            ComparisonFn::new("t/2", |t| t / 2.0),
        );
        let r = check_condition_f2(&ic, &grid());
        assert_eq!(r.verdict, ConditionVerdict::Counterexample);
        match r.witness {
            Some(Witness::Positivity { u, f_value }) => {
                assert!(u > 0.0);
                assert!(f_value.abs() <= EPS_TOL);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn kannan_psi_satisfies_f2_only() {
        let ic = build_contraction("kannan-psi", &[]).unwrap();
        assert!(check_condition_f2(&ic, &grid()).passed());
        for c in [Condition::F1a, Condition::F1b, Condition::F1c] {
            let r = check_condition_f1(&ic, c, &grid());
            assert_eq!(r.verdict, ConditionVerdict::Counterexample, "{c}");
        }
    }

    #[test]
    fn zero_tuples_pass_and_identity_pairs_violate_f2_forms() {
        use crate::solver::{Mapping, MappingPair};
        use crate::spaces::FiniteSpace;
        // on a singleton every tuple is all-zero: phi(0) = 0 forms accept it
        let singleton = crate::spaces::Space::Finite(
            FiniteSpace::chain(vec!["a".into()], vec![vec![0.0]]).unwrap(),
        );
        let id1 = MappingPair::new(Mapping::Table(vec![0]), Mapping::Table(vec![0]));
        for entry in catalog() {
            let report = evaluate_contraction(
                &singleton,
                &id1,
                &entry.build_default(),
                &PairSampler::default(),
            )
            .unwrap();
            assert_eq!(
                report.verdict,
                ConditionVerdict::PassOnGrid,
                "{}: {report}",
                entry.id
            );
        }
        // with two comparable points the identity pair produces the tuple
        // (d,d,0,0,d,d), which any F with condition F2 must reject
        let chain = crate::spaces::Space::Finite(
            FiniteSpace::chain(
                vec!["a".into(), "b".into()],
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            )
            .unwrap(),
        );
        let id2 = MappingPair::new(Mapping::Table(vec![0, 1]), Mapping::Table(vec![0, 1]));
        for entry in catalog().iter().filter(|e| e.claims.contains(&Condition::F2)) {
            let report = evaluate_contraction(
                &chain,
                &id2,
                &entry.build_default(),
                &PairSampler::default(),
            )
            .unwrap();
            assert_eq!(
                report.verdict,
                ConditionVerdict::Counterexample,
                "{}: {report}",
                entry.id
            );
        }
    }

    #[test]
    fn unknown_catalog_id_lists_available() {
        let err = build_contraction("nope", &[]).unwrap_err();
        assert!(matches!(err, CatalogError::UnknownId { .. }));
    }

    #[test]
    fn unknown_param_rejected() {
        let err = build_contraction("banach", &[("q".into(), 0.5)]).unwrap_err();
        assert!(matches!(err, CatalogError::UnknownParam { .. }));
    }
}
