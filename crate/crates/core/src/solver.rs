//! T-S-sequences: given self-maps `T`, `S` with `T(X)` inside `S(X)`, iterate
//! `T x_n = S x_{n+1}` from an initial point whose images are comparable, and
//! extract coincidence / common fixed points from the resulting trace.

use crate::contraction::ComparisonFn;
use crate::expr::{EvalError, Expr};
use crate::spaces::{PointRef, Space, SpaceError};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("mapping does not fit this space flavor")]
    MappingFlavor,
    #[error("mapping table has no entry for point {point}")]
    MappingTable { point: String },
    #[error("mapping undefined at {point}: {source}")]
    MappingUndefined {
        point: String,
        source: EvalError,
    },
    #[error("mapping sends {from} to {to}, which is outside the space")]
    MappingOutOfSpace { from: String, to: String },
    #[error("no S-preimage for {target} (T(X) is not contained in S(X))")]
    NoPreimage { target: String },
    #[error("S-inverse of {target} needs an inverse expression or the monotone flag")]
    InversionUnsupported { target: String },
    #[error("invalid eps {eps}: phi(eps) = {phi_eps} is not below it")]
    InvalidEps { eps: f64, phi_eps: f64 },
    #[error("no coincidence point: minimal residual {residual} at {at}")]
    NoCoincidence { at: PointRef, residual: f64 },
    #[error("operation requires an enumerable space")]
    NotEnumerable,
}

// ---------------------------------------------------------------------------
// Mappings
// ---------------------------------------------------------------------------

/// A self-map in the representation matching the space flavor.
#[derive(Debug, Clone, PartialEq)]
pub enum Mapping {
    /// Finite flavor: `i -> table[i]`.
    Table(Vec<usize>),
    /// Indexed flavor: an expression in `i` with integer values.
    IndexExpr(Expr),
    /// Numeric flavor: an expression in `x`.
    NumericExpr(Expr),
}

impl Mapping {
    pub fn apply(&self, space: &Space, p: PointRef) -> Result<PointRef, SolverError> {
        match (self, space, p) {
            (Mapping::Table(t), Space::Finite(s), PointRef::Finite(i)) => {
                if i >= s.len() || t.len() != s.len() {
                    return Err(SolverError::MappingTable {
                        point: p.to_string(),
                    });
                }
                let j = t[i];
                if j >= s.len() {
                    return Err(SolverError::MappingOutOfSpace {
                        from: p.to_string(),
                        to: format!("#{j}"),
                    });
                }
                Ok(PointRef::Finite(j))
            }
            (Mapping::IndexExpr(e), Space::Indexed(s), PointRef::Indexed(i)) => {
                let v = e
                    .eval_with(&[("i", i as f64)])
                    .map_err(|source| SolverError::MappingUndefined {
                        point: p.to_string(),
                        source,
                    })?;
                let r = v.round();
                if (v - r).abs() > 1e-9 || r < 0.0 {
                    return Err(SolverError::MappingOutOfSpace {
                        from: p.to_string(),
                        to: v.to_string(),
                    });
                }
                let j = r as u64;
                if j > s.budget() {
                    return Err(SolverError::Space(SpaceError::BudgetExceeded {
                        index: j,
                        budget: s.budget(),
                    }));
                }
                Ok(PointRef::Indexed(j))
            }
            (Mapping::NumericExpr(e), Space::Numeric(s), PointRef::Numeric(x)) => {
                let v = e
                    .eval_with(&[("x", x)])
                    .map_err(|source| SolverError::MappingUndefined {
                        point: p.to_string(),
                        source,
                    })?;
                if !s.contains(v) {
                    return Err(SolverError::MappingOutOfSpace {
                        from: p.to_string(),
                        to: v.to_string(),
                    });
                }
                Ok(PointRef::Numeric(v))
            }
            _ => Err(SolverError::MappingFlavor),
        }
    }
}

/// The pair of self-maps `(T, S)`, with optional inversion support for `S`
/// on numeric spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingPair {
    pub t: Mapping,
    pub s: Mapping,
    /// Explicit `S^{-1}` expression (numeric flavor).
    pub s_inverse: Option<Mapping>,
    /// Declares `S` monotone on the interval, enabling bisection.
    pub s_monotone: bool,
}

impl MappingPair {
    pub fn new(t: Mapping, s: Mapping) -> MappingPair {
        MappingPair {
            t,
            s,
            s_inverse: None,
            s_monotone: false,
        }
    }

    pub fn with_s_inverse(mut self, inv: Mapping) -> MappingPair {
        self.s_inverse = Some(inv);
        self
    }

    pub fn with_s_monotone(mut self) -> MappingPair {
        self.s_monotone = true;
        self
    }

    pub fn t_of(&self, space: &Space, p: PointRef) -> Result<PointRef, SolverError> {
        self.t.apply(space, p)
    }

    pub fn s_of(&self, space: &Space, p: PointRef) -> Result<PointRef, SolverError> {
        self.s.apply(space, p)
    }

    /// Deterministic preimage selection: the smallest index on enumerable
    /// spaces, the declared inverse or a bisection solve on numeric ones.
    pub fn s_preimage(&self, space: &Space, target: PointRef) -> Result<PointRef, SolverError> {
        match space {
            Space::Finite(s) => {
                for i in 0..s.len() {
                    let p = PointRef::Finite(i);
                    if self.s_of(space, p)? == target {
                        return Ok(p);
                    }
                }
                Err(SolverError::NoPreimage {
                    target: target.to_string(),
                })
            }
            Space::Indexed(s) => {
                for i in 0..=s.budget() {
                    let p = PointRef::Indexed(i);
                    match self.s_of(space, p) {
                        Ok(q) if q == target => return Ok(p),
                        Ok(_) => {}
                        // images past the budget just cannot match
                        Err(SolverError::Space(SpaceError::BudgetExceeded { .. })) => {}
                        Err(e) => return Err(e),
                    }
                }
                Err(SolverError::NoPreimage {
                    target: target.to_string(),
                })
            }
            Space::Numeric(ns) => {
                let y = match target {
                    PointRef::Numeric(y) => y,
                    _ => return Err(SolverError::MappingFlavor),
                };
                if let Some(inv) = &self.s_inverse {
                    let x = inv.apply(space, target)?;
                    let back = self.s_of(space, x)?;
                    let err = space.metric(back, target)?;
                    if err > 1e-9 * y.abs().max(1.0) {
                        return Err(SolverError::NoPreimage {
                            target: target.to_string(),
                        });
                    }
                    return Ok(x);
                }
                if !self.s_monotone {
                    return Err(SolverError::InversionUnsupported {
                        target: target.to_string(),
                    });
                }
                let x = self.bisect_s(ns, y)?;
                if !ns.contains(x) {
                    return Err(SolverError::NoPreimage {
                        target: target.to_string(),
                    });
                }
                Ok(PointRef::Numeric(x))
            }
        }
    }

    fn s_raw(&self, x: f64) -> Result<f64, SolverError> {
        match &self.s {
            Mapping::NumericExpr(e) => {
                e.eval_with(&[("x", x)])
                    .map_err(|source| SolverError::MappingUndefined {
                        point: x.to_string(),
                        source,
                    })
            }
            _ => Err(SolverError::MappingFlavor),
        }
    }

    /// Bisection solve of `S(x) = y` for a declared-monotone `S`,
    /// to absolute bracket width 1e-12.
    fn bisect_s(&self, ns: &crate::spaces::NumericSpace, y: f64) -> Result<f64, SolverError> {
        let mut a = if ns.lo.is_finite() { ns.lo } else { y.min(0.0) - 1.0 };
        let mut b = if ns.hi.is_finite() { ns.hi } else { y.max(0.0) + 1.0 };
        let mut fa = self.s_raw(a)? - y;
        let mut fb = self.s_raw(b)? - y;
        // expand toward an infinite end until the bracket straddles zero
        let mut guard = 0;
        while fa * fb > 0.0 && guard < 80 {
            guard += 1;
            if !ns.lo.is_finite() {
                a = a * 2.0 - 1.0;
                fa = self.s_raw(a)? - y;
            }
            if !ns.hi.is_finite() {
                b = b * 2.0 + 1.0;
                fb = self.s_raw(b)? - y;
            }
            if ns.lo.is_finite() && ns.hi.is_finite() {
                break;
            }
        }
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa * fb > 0.0 {
            return Err(SolverError::NoPreimage {
                target: y.to_string(),
            });
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= 1e-12 {
                return Ok(mid);
            }
            let fm = self.s_raw(mid)? - y;
            if fm == 0.0 {
                return Ok(mid);
            }
            if fa * fm < 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        Ok(0.5 * (a + b))
    }
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Increasing,
    Decreasing,
    Either,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Either => "either",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inc" | "increasing" => Ok(Direction::Increasing),
            "dec" | "decreasing" => Ok(Direction::Decreasing),
            "either" | "monotone" => Ok(Direction::Either),
            _ => Err(format!("unknown direction `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub n: usize,
    pub x: PointRef,
    pub sx: PointRef,
    pub tx: PointRef,
    /// `d(T x_n, T x_{n+1})`, absent on the final recorded step.
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TraceVerdict {
    /// `S x_n = T x_n` exactly at step `at`.
    CoincidenceHit { at: usize },
    /// Gaps fell below the Cauchy threshold; `candidate` is the last image.
    CauchyDetected { candidate: PointRef },
    NoCoincidenceWithinBudget,
    PreconditionFailed,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationTrace {
    pub steps: Vec<TraceStep>,
    pub verdict: TraceVerdict,
    /// `d(S x, T x)` at the final/candidate point, when defined.
    pub residual: Option<f64>,
    /// The order direction actually used.
    pub direction: Direction,
    pub note: Option<String>,
}

impl IterationTrace {
    pub fn gaps(&self) -> Vec<f64> {
        self.steps.iter().filter_map(|s| s.gap).collect()
    }

    /// Line-oriented text table: `n  x  Sx  Tx  gap`.
    pub fn render(&self, space: &Space) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>5}  {:>18}  {:>18}  {:>18}  {:>14}\n",
            "n", "x", "Sx", "Tx", "gap"
        ));
        for s in &self.steps {
            out.push_str(&format!(
                "{:>5}  {:>18}  {:>18}  {:>18}  {:>14}\n",
                s.n,
                space.describe(s.x),
                space.describe(s.sx),
                space.describe(s.tx),
                s.gap.map_or("-".to_string(), |g| format!("{g:.6e}")),
            ));
        }
        let verdict = match &self.verdict {
            TraceVerdict::CoincidenceHit { at } => format!("coincidence hit at step {at}"),
            TraceVerdict::CauchyDetected { candidate } => {
                format!("cauchy detected, candidate {}", space.describe(*candidate))
            }
            TraceVerdict::NoCoincidenceWithinBudget => "no coincidence within budget".into(),
            TraceVerdict::PreconditionFailed => "precondition failed".into(),
        };
        out.push_str(&format!("verdict: {verdict} (direction {})\n", self.direction));
        if let Some(r) = self.residual {
            out.push_str(&format!("residual: {r:e}\n"));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub budget: usize,
    /// Numeric traces stop with a Cauchy verdict once gaps fall below this.
    pub cauchy_eps: f64,
    /// Thresholds the CLI reports Cauchy detection against.
    pub eps_ladder: Vec<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: 10_000,
            cauchy_eps: 1e-9,
            eps_ladder: vec![1e-3, 1e-6, 1e-9],
        }
    }
}

// ---------------------------------------------------------------------------
// Iteration
// ---------------------------------------------------------------------------

/// Checks the order precondition on `x0`, returning the direction to iterate
/// in, or `None` if the images are not comparable the required way.
fn pick_direction(
    space: &Space,
    sx0: PointRef,
    tx0: PointRef,
    requested: Direction,
) -> Result<Option<Direction>, SolverError> {
    let inc = space.leq(sx0, tx0)?;
    let dec = space.leq(tx0, sx0)?;
    Ok(match requested {
        Direction::Increasing if inc => Some(Direction::Increasing),
        Direction::Decreasing if dec => Some(Direction::Decreasing),
        Direction::Either if inc => Some(Direction::Increasing),
        Direction::Either if dec => Some(Direction::Decreasing),
        _ => None,
    })
}

/// Builds the T-S-sequence from `x0`: `x_{n+1}` is the (deterministically
/// selected) `S`-preimage of `T x_n`.
///
/// Stops with `CoincidenceHit` on an exact `S x_n = T x_n`, with
/// `CauchyDetected` on numeric spaces once consecutive image gaps fall below
/// `opts.cauchy_eps`, and truncates to `NoCoincidenceWithinBudget` when the
/// iteration leaves the materializable part of the space.
pub fn jungck_sequence(
    space: &Space,
    pair: &MappingPair,
    x0: PointRef,
    direction: Direction,
    opts: &SolveOptions,
) -> Result<IterationTrace, SolverError> {
    let sx0 = pair.s_of(space, x0)?;
    let tx0 = pair.t_of(space, x0)?;
    let used = match pick_direction(space, sx0, tx0, direction)? {
        Some(d) => d,
        None => {
            return Ok(IterationTrace {
                steps: vec![TraceStep {
                    n: 0,
                    x: x0,
                    sx: sx0,
                    tx: tx0,
                    gap: None,
                }],
                verdict: TraceVerdict::PreconditionFailed,
                residual: Some(space.metric(sx0, tx0)?),
                direction,
                note: Some(format!(
                    "S(x0) = {} and T(x0) = {} violate the {direction} start condition",
                    space.describe(sx0),
                    space.describe(tx0)
                )),
            })
        }
    };

    let numeric = matches!(space, Space::Numeric(_));
    let mut steps: Vec<TraceStep> = Vec::new();
    let mut x = x0;
    let mut sx = sx0;
    let mut tx = tx0;
    for n in 0..=opts.budget {
        let residual = space.metric(sx, tx)?;
        if residual == 0.0 {
            steps.push(TraceStep {
                n,
                x,
                sx,
                tx,
                gap: None,
            });
            return Ok(IterationTrace {
                steps,
                verdict: TraceVerdict::CoincidenceHit { at: n },
                residual: Some(0.0),
                direction: used,
                note: None,
            });
        }
        if n == opts.budget {
            steps.push(TraceStep {
                n,
                x,
                sx,
                tx,
                gap: None,
            });
            break;
        }
        let (next_x, next_tx) = match advance(space, pair, tx) {
            Ok(v) => v,
            Err(SolverError::Space(SpaceError::BudgetExceeded { .. }))
            | Err(SolverError::MappingOutOfSpace { .. })
            | Err(SolverError::MappingUndefined {
                source: EvalError::NonFinite,
                ..
            }) => {
                steps.push(TraceStep {
                    n,
                    x,
                    sx,
                    tx,
                    gap: None,
                });
                return Ok(IterationTrace {
                    steps,
                    verdict: TraceVerdict::NoCoincidenceWithinBudget,
                    residual: Some(residual),
                    direction: used,
                    note: Some("iteration left the materializable part of the space".into()),
                });
            }
            Err(e) => return Err(e),
        };
        let gap = space.metric(tx, next_tx)?;
        steps.push(TraceStep {
            n,
            x,
            sx,
            tx,
            gap: Some(gap),
        });
        // T x_n = S x_{n+1} by construction
        x = next_x;
        sx = tx;
        tx = next_tx;
        if numeric && gap < opts.cauchy_eps {
            let residual = space.metric(sx, tx)?;
            steps.push(TraceStep {
                n: n + 1,
                x,
                sx,
                tx,
                gap: None,
            });
            return Ok(IterationTrace {
                steps,
                verdict: TraceVerdict::CauchyDetected { candidate: tx },
                residual: Some(residual),
                direction: used,
                note: None,
            });
        }
    }
    let residual = steps.last().and_then(|s| {
        space.metric(s.sx, s.tx).ok()
    });
    Ok(IterationTrace {
        steps,
        verdict: TraceVerdict::NoCoincidenceWithinBudget,
        residual,
        direction: used,
        note: None,
    })
}

fn advance(
    space: &Space,
    pair: &MappingPair,
    tx: PointRef,
) -> Result<(PointRef, PointRef), SolverError> {
    let next_x = pair.s_preimage(space, tx)?;
    let next_tx = pair.t_of(space, next_x)?;
    Ok((next_x, next_tx))
}

// ---------------------------------------------------------------------------
// Cauchy detection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CauchyReport {
    pub eps: f64,
    /// `eps - phi(eps)`.
    pub threshold: f64,
    /// First step whose gap fell below the threshold.
    pub detected_at: Option<usize>,
    /// `(n, m, d)` with `d(Tx_m, Tx_n) >= eps` for `m > n`, which would
    /// contradict the contraction hypothesis on the recorded trace.
    pub containment_violation: Option<(usize, usize, f64)>,
}

impl CauchyReport {
    pub fn is_cauchy(&self) -> bool {
        self.detected_at.is_some() && self.containment_violation.is_none()
    }
}

/// Applies the `eps - phi(eps)` rule to a recorded trace: detection at the
/// first step `n` with `d(Tx_n, Tx_{n+1}) < eps - phi(eps)`, after which all
/// later images must stay within `eps` of `Tx_n` (checked empirically).
pub fn detect_cauchy(
    space: &Space,
    trace: &IterationTrace,
    phi: &ComparisonFn,
    eps: f64,
) -> Result<CauchyReport, SolverError> {
    let phi_eps = phi.eval(eps);
    if !(phi_eps < eps) || eps <= 0.0 {
        return Err(SolverError::InvalidEps { eps, phi_eps });
    }
    let threshold = eps - phi_eps;
    let mut detected_at = None;
    for step in &trace.steps {
        match step.gap {
            Some(g) if g < threshold => {
                detected_at = Some(step.n);
                break;
            }
            _ => {
                // a recorded coincidence hit ends the trace with gap 0
                if step.gap.is_none()
                    && matches!(trace.verdict, TraceVerdict::CoincidenceHit { at } if at == step.n)
                {
                    detected_at = Some(step.n);
                }
            }
        }
    }
    let mut containment_violation = None;
    if let Some(n) = detected_at {
        let base = trace.steps.iter().find(|s| s.n == n).map(|s| s.tx);
        if let Some(base) = base {
            for step in trace.steps.iter().filter(|s| s.n > n) {
                let d = space.metric(step.tx, base)?;
                if d >= eps {
                    containment_violation = Some((n, step.n, d));
                    break;
                }
            }
        }
    }
    Ok(CauchyReport {
        eps,
        threshold,
        detected_at,
        containment_violation,
    })
}

// ---------------------------------------------------------------------------
// Fixed point extraction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CommonFixedPoint {
    pub z: PointRef,
    pub t_residual: f64,
    pub s_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointResult {
    /// The coincidence point `x` with `S x = T x` (within tolerance).
    pub coincidence: PointRef,
    /// The point of coincidence `z = T x = S x`.
    pub point_of_coincidence: PointRef,
    /// `d(S x, T x)` at the coincidence point.
    pub residual: f64,
    /// Present when `z` verifies as a common fixed point: `T z = z = S z`.
    pub common: Option<CommonFixedPoint>,
}

/// Reads a coincidence point off a trace that ended in a hit or a Cauchy
/// candidate, verifying residuals against `tol`, and checks whether the point
/// of coincidence is a common fixed point. On traces without a usable
/// candidate (or when residuals exceed `tol`) the minimal residual over the
/// space is located and reported through [`SolverError::NoCoincidence`].
pub fn extract_fixed_point(
    space: &Space,
    pair: &MappingPair,
    trace: &IterationTrace,
    tol: f64,
) -> Result<FixedPointResult, SolverError> {
    match &trace.verdict {
        TraceVerdict::CoincidenceHit { at } => {
            let step = trace
                .steps
                .iter()
                .find(|s| s.n == *at)
                .expect("hit step recorded");
            let residual = space.metric(step.sx, step.tx)?;
            Ok(finish_extract(space, pair, step.x, step.tx, residual, tol))
        }
        TraceVerdict::CauchyDetected { candidate } => {
            let x = pair.s_preimage(space, *candidate)?;
            let tx = pair.t_of(space, x)?;
            let sx = pair.s_of(space, x)?;
            let residual = space.metric(sx, tx)?;
            if residual <= tol {
                Ok(finish_extract(space, pair, x, tx, residual, tol))
            } else {
                let (at, best) = minimal_residual(space, pair)?;
                Err(SolverError::NoCoincidence { at, residual: best })
            }
        }
        TraceVerdict::NoCoincidenceWithinBudget | TraceVerdict::PreconditionFailed => {
            // Enumerable spaces decide coincidence exactly; a residual below
            // tol on such a space is a numerical illusion, not a coincidence.
            if space.is_enumerable() {
                for p in space.enumerable_points().expect("enumerable") {
                    let (s, t) = match (pair.s_of(space, p), pair.t_of(space, p)) {
                        (Ok(s), Ok(t)) => (s, t),
                        _ => continue,
                    };
                    if s == t {
                        return Ok(finish_extract(space, pair, p, t, 0.0, tol));
                    }
                }
                let (at, best) = minimal_residual(space, pair)?;
                return Err(SolverError::NoCoincidence { at, residual: best });
            }
            let (at, best) = minimal_residual(space, pair)?;
            if best <= tol {
                let tx = pair.t_of(space, at)?;
                Ok(finish_extract(space, pair, at, tx, best, tol))
            } else {
                Err(SolverError::NoCoincidence { at, residual: best })
            }
        }
    }
}

fn finish_extract(
    space: &Space,
    pair: &MappingPair,
    x: PointRef,
    z: PointRef,
    residual: f64,
    tol: f64,
) -> FixedPointResult {
    let common = (|| {
        let tz = pair.t_of(space, z).ok()?;
        let sz = pair.s_of(space, z).ok()?;
        // exact fixedness on enumerable spaces, residual-based on numeric ones
        if space.is_enumerable() && !(tz == z && sz == z) {
            return None;
        }
        let t_residual = space.metric(tz, z).ok()?;
        let s_residual = space.metric(sz, z).ok()?;
        if t_residual <= tol && s_residual <= tol {
            Some(CommonFixedPoint {
                z,
                t_residual,
                s_residual,
            })
        } else {
            None
        }
    })();
    FixedPointResult {
        coincidence: x,
        point_of_coincidence: z,
        residual,
        common,
    }
}

/// The point minimizing `d(S x, T x)`: exact scan on enumerable spaces, a
/// grid scan refined by golden-section search on numeric ones.
pub fn minimal_residual(space: &Space, pair: &MappingPair) -> Result<(PointRef, f64), SolverError> {
    match space {
        Space::Finite(_) | Space::Indexed(_) => {
            let mut best: Option<(PointRef, f64)> = None;
            for p in space.enumerable_points().expect("enumerable") {
                let r = match residual_at(space, pair, p) {
                    Ok(r) => r,
                    Err(SolverError::Space(SpaceError::BudgetExceeded { .. })) => continue,
                    Err(e) => return Err(e),
                };
                if best.map_or(true, |(_, b)| r < b) {
                    best = Some((p, r));
                }
            }
            best.ok_or(SolverError::MappingFlavor)
        }
        Space::Numeric(ns) => {
            let lo = if ns.lo.is_finite() {
                ns.lo
            } else if ns.hi.is_finite() {
                ns.hi - 2e3
            } else {
                -1e3
            };
            let hi = if ns.hi.is_finite() {
                ns.hi.min(lo + 2e3)
            } else {
                lo + 1e3
            };
            let n = 20_000usize;
            let eval = |x: f64| -> f64 {
                if !ns.contains(x) {
                    return f64::INFINITY;
                }
                residual_at(space, pair, PointRef::Numeric(x)).unwrap_or(f64::INFINITY)
            };
            let mut best_x = f64::NAN;
            let mut best_r = f64::INFINITY;
            for k in 0..=n {
                let x = lo + (hi - lo) * k as f64 / n as f64;
                let r = eval(x);
                if r < best_r {
                    best_r = r;
                    best_x = x;
                }
            }
            if !best_r.is_finite() {
                return Err(SolverError::MappingFlavor);
            }
            let h = (hi - lo) / n as f64;
            let (mut a, mut b) = (best_x - h, best_x + h);
            let gr = (5f64.sqrt() - 1.0) / 2.0;
            let mut c = b - gr * (b - a);
            let mut d = a + gr * (b - a);
            let (mut fc, mut fd) = (eval(c), eval(d));
            for _ in 0..200 {
                if b - a < 1e-11 {
                    break;
                }
                if fc < fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gr * (b - a);
                    fc = eval(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gr * (b - a);
                    fd = eval(d);
                }
            }
            let x = 0.5 * (a + b);
            let r = eval(x);
            if r <= best_r {
                Ok((PointRef::Numeric(x), r))
            } else {
                Ok((PointRef::Numeric(best_x), best_r))
            }
        }
    }
}

fn residual_at(space: &Space, pair: &MappingPair, p: PointRef) -> Result<f64, SolverError> {
    let s = pair.s_of(space, p)?;
    let t = pair.t_of(space, p)?;
    Ok(space.metric(s, t)?)
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

/// Exact coincidence and common-fixed-point sets of an enumerable space.
#[derive(Debug, Clone, Serialize)]
pub struct BruteForce {
    /// `{ x : S x = T x }`.
    pub coincidence: Vec<PointRef>,
    /// `{ x : S x = T x = x }`.
    pub common_fixed: Vec<PointRef>,
}

/// Enumerates `C(T,S)` and the common fixed points by exact point equality.
/// Points whose images fall outside the materializable range are skipped.
pub fn brute_force(space: &Space, pair: &MappingPair) -> Result<BruteForce, SolverError> {
    let pts = space.enumerable_points().ok_or(SolverError::NotEnumerable)?;
    let mut coincidence = Vec::new();
    let mut common_fixed = Vec::new();
    for p in pts {
        let s = match pair.s_of(space, p) {
            Ok(v) => v,
            Err(SolverError::Space(SpaceError::BudgetExceeded { .. }))
            | Err(SolverError::MappingOutOfSpace { .. }) => continue,
            Err(e) => return Err(e),
        };
        let t = match pair.t_of(space, p) {
            Ok(v) => v,
            Err(SolverError::Space(SpaceError::BudgetExceeded { .. }))
            | Err(SolverError::MappingOutOfSpace { .. }) => continue,
            Err(e) => return Err(e),
        };
        if s == t {
            coincidence.push(p);
            if s == p {
                common_fixed.push(p);
            }
        }
    }
    Ok(BruteForce {
        coincidence,
        common_fixed,
    })
}

// ---------------------------------------------------------------------------
// Trace inequalities
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct GapViolation {
    pub n: usize,
    pub gap: f64,
    pub bound: f64,
}

impl fmt::Display for GapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gap {} = {} exceeds bound {}", self.n, self.gap, self.bound)
    }
}

/// Verifies `d(Tx_n, Tx_{n+1}) <= phi(d(Tx_{n-1}, Tx_n)) + tol` along a trace.
pub fn check_gap_contraction(
    trace: &IterationTrace,
    phi: &ComparisonFn,
    tol: f64,
) -> Option<GapViolation> {
    let gaps = trace.gaps();
    for n in 1..gaps.len() {
        let bound = phi.eval(gaps[n - 1]) + tol;
        if gaps[n] > bound {
            return Some(GapViolation {
                n,
                gap: gaps[n],
                bound,
            });
        }
    }
    None
}

/// Verifies the iterated envelope `d(Tx_n, Tx_{n+1}) <= phi^n(d(Tx_0, Tx_1)) + n*tol`.
pub fn check_gap_envelope(
    trace: &IterationTrace,
    phi: &ComparisonFn,
    tol: f64,
) -> Option<GapViolation> {
    let gaps = trace.gaps();
    if gaps.is_empty() {
        return None;
    }
    let mut env = gaps[0];
    for n in 1..gaps.len() {
        env = phi.eval(env);
        let bound = env + n as f64 * tol;
        if gaps[n] > bound {
            return Some(GapViolation {
                n,
                gap: gaps[n],
                bound,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::spaces::{FiniteSpace, IndexedSpace, NumericOrder, NumericSpace};
    use std::collections::BTreeSet;

    fn chain3() -> Space {
        Space::Finite(
            FiniteSpace::chain(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    vec![0.0, 1.0, 2.0],
                    vec![1.0, 0.0, 1.0],
                    vec![2.0, 1.0, 0.0],
                ],
            )
            .unwrap(),
        )
    }

    fn shrink_interval() -> (Space, MappingPair) {
        let space = Space::Numeric(
            NumericSpace::new(-1.0, 1.0, false, true, NumericOrder::Usual, BTreeSet::new())
                .unwrap(),
        );
        let pair = MappingPair::new(
            Mapping::NumericExpr(Expr::parse("x / 3", &["x"]).unwrap()),
            Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()),
        )
        .with_s_inverse(Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()));
        (space, pair)
    }

    fn shift_sequence(budget: u64) -> (Space, MappingPair) {
        let space = Space::Indexed(IndexedSpace::new(
            |i| if i == 0 { 0.0 } else { -(0.25f64.powi(i as i32)) },
            budget,
        ));
        let pair = MappingPair::new(
            Mapping::IndexExpr(Expr::parse("i + 2", &["i"]).unwrap()),
            Mapping::IndexExpr(Expr::parse("i + 1", &["i"]).unwrap()),
        );
        (space, pair)
    }

    #[test]
    fn identity_pair_hits_at_zero() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 1, 2]), Mapping::Table(vec![0, 1, 2]));
        let trace =
            jungck_sequence(&space, &pair, PointRef::Finite(1), Direction::Either, &SolveOptions::default())
                .unwrap();
        assert_eq!(trace.verdict, TraceVerdict::CoincidenceHit { at: 0 });
        let fp = extract_fixed_point(&space, &pair, &trace, 1e-9).unwrap();
        assert_eq!(fp.coincidence, PointRef::Finite(1));
        assert_eq!(fp.residual, 0.0);
        assert!(fp.common.is_some());
    }

    #[test]
    fn shrink_interval_trace_is_cauchy_with_candidate_near_zero() {
        let (space, pair) = shrink_interval();
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Numeric(0.9),
            Direction::Either,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(trace.direction, Direction::Decreasing);
        match trace.verdict {
            TraceVerdict::CauchyDetected { candidate: PointRef::Numeric(c) } => {
                assert!(c.abs() <= 1e-9, "candidate {c}");
            }
            ref v => panic!("unexpected verdict {v:?}"),
        }
        assert!(trace.steps.len() <= 25);
        let fp = extract_fixed_point(&space, &pair, &trace, 1e-9).unwrap();
        match fp.common {
            Some(CommonFixedPoint { z: PointRef::Numeric(z), .. }) => assert!(z.abs() <= 1e-9),
            ref other => panic!("expected a common fixed point, got {other:?}"),
        }
    }

    #[test]
    fn detect_cauchy_matches_gap_formula() {
        let (space, pair) = shrink_interval();
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Numeric(0.9),
            Direction::Decreasing,
            &SolveOptions::default(),
        )
        .unwrap();
        let phi = ComparisonFn::new("t/3", |t| t / 3.0);
        let eps = 0.01;
        // gaps are 0.6 * 3^-(n+1); the rule triggers below eps - eps/3 = 2 eps / 3
        let mut expected = None;
        for n in 0..60 {
            if 0.6 * 3f64.powi(-(n as i32 + 1)) < 2.0 * eps / 3.0 {
                expected = Some(n);
                break;
            }
        }
        let report = detect_cauchy(&space, &trace, &phi, eps).unwrap();
        assert_eq!(report.detected_at, expected);
        assert!(report.is_cauchy());
        assert!(report.containment_violation.is_none());
    }

    #[test]
    fn detect_cauchy_rejects_bad_eps() {
        let (space, pair) = shrink_interval();
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Numeric(0.9),
            Direction::Decreasing,
            &SolveOptions::default(),
        )
        .unwrap();
        let phi = ComparisonFn::new("t", |t| t);
        assert!(matches!(
            detect_cauchy(&space, &trace, &phi, 0.01),
            Err(SolverError::InvalidEps { .. })
        ));
    }

    #[test]
    fn detect_cauchy_false_when_gaps_stay_large() {
        // expanding map: gaps grow, the rule never triggers
        let space = Space::Numeric(
            NumericSpace::new(0.0, f64::INFINITY, true, false, NumericOrder::Usual, BTreeSet::new())
                .unwrap(),
        );
        let pair = MappingPair::new(
            Mapping::NumericExpr(Expr::parse("2*x + 1", &["x"]).unwrap()),
            Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()),
        )
        .with_s_inverse(Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()));
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Numeric(1.0),
            Direction::Increasing,
            &SolveOptions {
                budget: 10,
                ..Default::default()
            },
        )
        .unwrap();
        let phi = ComparisonFn::new("t/2", |t| t / 2.0);
        let report = detect_cauchy(&space, &trace, &phi, 1e-3).unwrap();
        assert_eq!(report.detected_at, None);
        assert!(!report.is_cauchy());
    }

    #[test]
    fn shift_sequence_never_coincides() {
        let (space, pair) = shift_sequence(64);
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Indexed(1),
            Direction::Either,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(trace.verdict, TraceVerdict::NoCoincidenceWithinBudget);
        // gaps decay toward zero although no coincidence point exists
        let gaps = trace.gaps();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        let err = extract_fixed_point(&space, &pair, &trace, 1e-9).unwrap_err();
        match err {
            SolverError::NoCoincidence { residual, .. } => assert!(residual > 0.0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn detect_cauchy_accepts_a_hit_trace_immediately() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 1, 2]), Mapping::Table(vec![0, 1, 2]));
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Finite(2),
            Direction::Either,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(trace.verdict, TraceVerdict::CoincidenceHit { at: 0 });
        let phi = ComparisonFn::new("t/2", |t| t / 2.0);
        for eps in [1e-1, 1e-6, 1e-12] {
            let report = detect_cauchy(&space, &trace, &phi, eps).unwrap();
            assert_eq!(report.detected_at, Some(0), "eps = {eps}");
        }
    }

    #[test]
    fn traces_are_deterministic() {
        let (space, pair) = shrink_interval();
        let run = || {
            jungck_sequence(
                &space,
                &pair,
                PointRef::Numeric(0.9),
                Direction::Either,
                &SolveOptions::default(),
            )
            .unwrap()
        };
        let (a, b) = (run(), run());
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.gaps(), b.gaps());
        assert_eq!(a.render(&space), b.render(&space));
    }

    #[test]
    fn brute_force_on_the_identity_pair_returns_every_point() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 1, 2]), Mapping::Table(vec![0, 1, 2]));
        let sets = brute_force(&space, &pair).unwrap();
        assert_eq!(sets.coincidence.len(), 3);
        assert_eq!(sets.common_fixed.len(), 3);
    }

    #[test]
    fn missing_preimage_is_an_error() {
        let space = chain3();
        // S maps everything to a; T maps everything to b, which has no S-preimage.
        let pair = MappingPair::new(Mapping::Table(vec![1, 1, 1]), Mapping::Table(vec![0, 0, 0]));
        let err = jungck_sequence(
            &space,
            &pair,
            PointRef::Finite(0),
            Direction::Increasing,
            &SolveOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SolverError::NoPreimage { .. }));
    }

    #[test]
    fn precondition_failure_is_a_verdict() {
        let space = chain3();
        // T sends the top of the chain below its S-image: from c, S(c)=c > a=T(c).
        let pair = MappingPair::new(Mapping::Table(vec![0, 0, 0]), Mapping::Table(vec![0, 1, 2]));
        let trace = jungck_sequence(
            &space,
            &pair,
            PointRef::Finite(2),
            Direction::Increasing,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(trace.verdict, TraceVerdict::PreconditionFailed);
    }

    #[test]
    fn parabola_has_minimal_residual_at_one_third() {
        let space = Space::Numeric(
            NumericSpace::new(0.0, f64::INFINITY, true, false, NumericOrder::Usual, BTreeSet::new())
                .unwrap(),
        );
        let pair = MappingPair::new(
            Mapping::NumericExpr(Expr::parse("x^2 + 1", &["x"]).unwrap()),
            Mapping::NumericExpr(Expr::parse("2*x/3", &["x"]).unwrap()),
        )
        .with_s_inverse(Mapping::NumericExpr(Expr::parse("3*x/2", &["x"]).unwrap()));
        let (at, r) = minimal_residual(&space, &pair).unwrap();
        match at {
            PointRef::Numeric(x) => assert!((x - 1.0 / 3.0).abs() <= 1e-6, "x = {x}"),
            other => panic!("unexpected point {other:?}"),
        }
        assert!((r - 8.0 / 9.0).abs() <= 1e-9, "residual {r}");
    }

    #[test]
    fn bisection_inverts_monotone_s() {
        let space = Space::Numeric(
            NumericSpace::new(0.0, f64::INFINITY, true, false, NumericOrder::Usual, BTreeSet::new())
                .unwrap(),
        );
        let pair = MappingPair::new(
            Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()),
            Mapping::NumericExpr(Expr::parse("2*x/3", &["x"]).unwrap()),
        )
        .with_s_monotone();
        let x = pair
            .s_preimage(&space, PointRef::Numeric(2.0))
            .unwrap();
        match x {
            PointRef::Numeric(v) => assert!((v - 3.0).abs() <= 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }
}
