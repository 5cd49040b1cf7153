//! Per-hypothesis checks for the common-fixed-point theorem variants,
//! brute-force oracles on enumerable spaces, and certification reports.
//!
//! Every check returns a [`HypothesisEntry`] rather than an error: a failed
//! hypothesis is a counterexample with a witness, an unverifiable one is
//! `not-checkable` (or `asserted` when the user vouched for it on a numeric
//! space). [`certify`] assembles exactly the checks a chosen theorem variant
//! requires, labels them with the variant's condition names, and — when the
//! hypotheses hold — runs the solver and confirms the promised conclusion
//! against brute force wherever the space is enumerable.
//!
//! Finite-space reductions: on a finite metric space a monotone convergent
//! sequence is eventually constant, so I-regularity reduces to the pointwise
//! condition `S x <= S(S x)` for every `x` (constant chains count as
//! increasing), and O-compatibility reduces to weak compatibility. On indexed
//! spaces the order is induced by values, so every term of an increasing
//! sequence is automatically comparable with its limit and the same pointwise
//! clause applies to the attained limits.

use crate::contraction::{
    check_condition_f1, check_condition_f2, check_half_comparison, evaluate_contraction,
    Condition, ConditionReport, ConditionVerdict, GridSpec, ImplicitContraction, PairSampler,
};
use crate::solver::{
    brute_force, extract_fixed_point, jungck_sequence, BruteForce, Direction, FixedPointResult,
    MappingPair, SolveOptions, SolverError, TraceVerdict,
};
use crate::spaces::{AssertedProperty, PointRef, Space, SpaceError};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Variants and report types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContinuityMode {
    /// (i): `T` is `(S,O)`-continuous.
    SContinuity,
    /// (ii): the pair is O-compatible and both `T` and `S` are O-continuous.
    CompatContinuity,
    /// (iii): `T` and `S` are continuous.
    PlainContinuity,
}

impl ContinuityMode {
    fn suffix(&self) -> &'static str {
        match self {
            ContinuityMode::SContinuity => "i",
            ContinuityMode::CompatContinuity => "ii",
            ContinuityMode::PlainContinuity => "iii",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremVariant {
    /// Whole-space completeness form with the (a1)-(a6) conditions. Kept for
    /// refutation: its hypotheses can hold while no coincidence point exists.
    Classic,
    /// Regularity-based form on a complete subspace, conditions (b1)-(b6).
    Regular,
    /// (b2) replaced by a continuity assumption, uniqueness via (c5)+(c6).
    Continuity(ContinuityMode),
    /// Point-of-coincidence staging, conditions (d1)-(d6).
    Poc,
    /// Poc with (d2) replaced by a continuity assumption.
    PocContinuity(ContinuityMode),
    /// Quasi-contraction corollary via a half-comparison, conditions (g1)-(g4).
    Quasi { continuity: Option<ContinuityMode> },
    /// Order-free form: complete subspace, the inequality over all pairs.
    Metric,
}

impl fmt::Display for TheoremVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremVariant::Classic => write!(f, "classic"),
            TheoremVariant::Regular => write!(f, "regular"),
            TheoremVariant::Continuity(m) => write!(f, "continuity-{}", m.suffix()),
            TheoremVariant::Poc => write!(f, "poc"),
            TheoremVariant::PocContinuity(m) => write!(f, "poc-continuity-{}", m.suffix()),
            TheoremVariant::Quasi { continuity: None } => write!(f, "quasi"),
            TheoremVariant::Quasi {
                continuity: Some(m),
            } => write!(f, "quasi-{}", m.suffix()),
            TheoremVariant::Metric => write!(f, "metric"),
        }
    }
}

impl FromStr for TheoremVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mode = |suffix: &str| match suffix {
            "i" => Ok(ContinuityMode::SContinuity),
            "ii" => Ok(ContinuityMode::CompatContinuity),
            "iii" => Ok(ContinuityMode::PlainContinuity),
            _ => Err(format!("unknown continuity mode `{suffix}`")),
        };
        match s {
            "classic" => Ok(TheoremVariant::Classic),
            "regular" => Ok(TheoremVariant::Regular),
            "poc" => Ok(TheoremVariant::Poc),
            "quasi" => Ok(TheoremVariant::Quasi { continuity: None }),
            "metric" => Ok(TheoremVariant::Metric),
            _ => {
                if let Some(sfx) = s.strip_prefix("continuity-") {
                    return Ok(TheoremVariant::Continuity(mode(sfx)?));
                }
                if let Some(sfx) = s.strip_prefix("poc-continuity-") {
                    return Ok(TheoremVariant::PocContinuity(mode(sfx)?));
                }
                if let Some(sfx) = s.strip_prefix("quasi-") {
                    return Ok(TheoremVariant::Quasi {
                        continuity: Some(mode(sfx)?),
                    });
                }
                Err(format!(
                    "unknown variant `{s}`; expected classic, regular, continuity-i/ii/iii, \
                     poc, poc-continuity-i/ii/iii, quasi, quasi-i/ii/iii or metric"
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Core,
    Coincidence,
    CommonFixed,
    Uniqueness,
    Conclusion,
    Diagnostic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryVerdict {
    Verified,
    Asserted,
    Counterexample,
    NotCheckable,
}

impl EntryVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EntryVerdict::Verified | EntryVerdict::Asserted)
    }
}

impl fmt::Display for EntryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryVerdict::Verified => "verified",
            EntryVerdict::Asserted => "asserted",
            EntryVerdict::Counterexample => "counterexample",
            EntryVerdict::NotCheckable => "not-checkable",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub description: String,
    pub verdict: EntryVerdict,
    pub detail: Option<String>,
    pub stage: Stage,
}

impl HypothesisEntry {
    fn new(name: &str, description: &str, verdict: EntryVerdict) -> Self {
        HypothesisEntry {
            name: name.into(),
            description: description.into(),
            verdict,
            detail: None,
            stage: Stage::Core,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Renames the entry to a theorem's condition label.
    pub fn relabel(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    fn at_stage(mut self, stage: Stage) -> Self {
        self.stage = stage;
        self
    }
}

impl fmt::Display for HypothesisEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:>14}] {:<14} {}",
            self.verdict.to_string(),
            self.name,
            self.description
        )?;
        if let Some(d) = &self.detail {
            write!(f, " — {d}")?;
        }
        Ok(())
    }
}

/// What the solver and brute force produced once the hypotheses held.
#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome {
    pub trace_verdict: TraceVerdict,
    pub steps: usize,
    pub fixed_point: Option<FixedPointResult>,
    /// `(point, residual)` when no coincidence point was found.
    pub no_coincidence: Option<(PointRef, f64)>,
    pub brute: Option<BruteForce>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub variant: TheoremVariant,
    pub direction: Direction,
    pub entries: Vec<HypothesisEntry>,
    pub conclusions: Vec<HypothesisEntry>,
    /// Aggregated over the hypothesis entries: verified only if every one is
    /// verified or asserted.
    pub overall: EntryVerdict,
    pub asserted_count: usize,
    pub outcome: Option<SolveOutcome>,
}

impl HypothesisReport {
    /// All hypothesis entries up to and including `stage` hold.
    pub fn stage_ok(&self, stage: Stage) -> bool {
        self.entries
            .iter()
            .filter(|e| e.stage <= stage)
            .all(|e| e.verdict.holds())
    }

    pub fn entry(&self, name: &str) -> Option<&HypothesisEntry> {
        self.entries
            .iter()
            .chain(self.conclusions.iter())
            .find(|e| e.name == name)
    }

    pub fn has_counterexample(&self) -> bool {
        self.entries
            .iter()
            .chain(self.conclusions.iter())
            .any(|e| e.verdict == EntryVerdict::Counterexample)
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "theorem variant {} (direction {})",
            self.variant, self.direction
        )?;
        for e in &self.entries {
            writeln!(f, "  {e}")?;
        }
        writeln!(f, "overall: {}", self.overall)?;
        if self.asserted_count > 0 {
            writeln!(
                f,
                "  ({} hypothesis(es) asserted by the user, not verified)",
                self.asserted_count
            )?;
        }
        if !self.conclusions.is_empty() {
            writeln!(f, "conclusions:")?;
            for e in &self.conclusions {
                writeln!(f, "  {e}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Subspace specification
// ---------------------------------------------------------------------------

/// The subspace `E` (with `T(X)` in `E` in `S(X)`) whose completeness a
/// theorem requires.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceSpec {
    Whole,
    TImage,
    SImage,
    Explicit(Vec<PointRef>),
}

impl fmt::Display for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceSpec::Whole => write!(f, "X"),
            SubspaceSpec::TImage => write!(f, "T(X)"),
            SubspaceSpec::SImage => write!(f, "S(X)"),
            SubspaceSpec::Explicit(pts) => write!(f, "{{{} points}}", pts.len()),
        }
    }
}

impl SubspaceSpec {
    /// The points of `E` on an enumerable space. Mapping applications that
    /// leave the materializable range are skipped.
    pub fn enumerate(
        &self,
        space: &Space,
        pair: &MappingPair,
    ) -> Result<Option<Vec<PointRef>>, SolverError> {
        let base = match space.enumerable_points() {
            Some(p) => p,
            None => {
                return Ok(match self {
                    SubspaceSpec::Explicit(pts) => Some(pts.clone()),
                    _ => None,
                })
            }
        };
        let image = |of_t: bool| -> Result<Vec<PointRef>, SolverError> {
            let mut keys: Vec<PointRef> = Vec::new();
            for &x in &base {
                let y = if of_t {
                    pair.t_of(space, x)
                } else {
                    pair.s_of(space, x)
                };
                match y {
                    Ok(p) => {
                        if !keys.contains(&p) {
                            keys.push(p);
                        }
                    }
                    Err(SolverError::Space(SpaceError::BudgetExceeded { .. }))
                    | Err(SolverError::MappingOutOfSpace { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(keys)
        };
        Ok(Some(match self {
            SubspaceSpec::Whole => base,
            SubspaceSpec::TImage => image(true)?,
            SubspaceSpec::SImage => image(false)?,
            SubspaceSpec::Explicit(pts) => pts.clone(),
        }))
    }
}

// ---------------------------------------------------------------------------
// Individual hypothesis checks
// ---------------------------------------------------------------------------

fn asserted_or_not_checkable(
    space: &Space,
    prop: AssertedProperty,
    name: &str,
    desc: &str,
) -> HypothesisEntry {
    if space.asserted(prop) {
        HypothesisEntry::new(name, desc, EntryVerdict::Asserted)
            .with_detail(format!("asserted via flag `{prop}`, not verified"))
    } else {
        HypothesisEntry::new(name, desc, EntryVerdict::NotCheckable).with_detail(format!(
            "not machine-checkable here; assert `{prop}` to vouch"
        ))
    }
}

/// Skips mapping applications that fall off the materializable range,
/// propagating every other error.
fn apply_or_skip(
    pair_result: Result<PointRef, SolverError>,
) -> Result<Option<PointRef>, SolverError> {
    match pair_result {
        Ok(p) => Ok(Some(p)),
        Err(SolverError::Space(SpaceError::BudgetExceeded { .. }))
        | Err(SolverError::MappingOutOfSpace { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `S x <= S y  =>  T x <= T y` over all enumerable pairs.
pub fn check_s_increasing(
    space: &Space,
    pair: &MappingPair,
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "T is S-increasing";
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(asserted_or_not_checkable(
                space,
                AssertedProperty::SIncreasing,
                "S-increasing",
                DESC,
            ))
        }
    };
    let mut images = Vec::new();
    for &x in &pts {
        let s = apply_or_skip(pair.s_of(space, x))?;
        let t = apply_or_skip(pair.t_of(space, x))?;
        if let (Some(s), Some(t)) = (s, t) {
            images.push((x, s, t));
        }
    }
    for &(x, sx, tx) in &images {
        for &(y, sy, ty) in &images {
            if space.leq(sx, sy)? && !space.leq(tx, ty)? {
                return Ok(HypothesisEntry::new(
                    "S-increasing",
                    DESC,
                    EntryVerdict::Counterexample,
                )
                .with_detail(format!(
                    "S({}) <= S({}) but T({}) is not <= T({})",
                    space.describe(x),
                    space.describe(y),
                    space.describe(x),
                    space.describe(y)
                )));
            }
        }
    }
    Ok(
        HypothesisEntry::new("S-increasing", DESC, EntryVerdict::Verified)
            .with_detail(format!("exhaustive over {} points", images.len())),
    )
}

/// `T(X)` in `E` in `S(X)`.
pub fn check_range_inclusion(
    space: &Space,
    pair: &MappingPair,
    e: &SubspaceSpec,
) -> Result<HypothesisEntry, SolverError> {
    let desc = format!("range inclusion: T(X) in E = {e} in S(X)");
    if let Some(e_pts) = e.enumerate(space, pair)? {
        let base = space.enumerable_points().unwrap_or_else(|| e_pts.clone());
        let contains = |set: &[PointRef], p: PointRef| set.iter().any(|&q| q == p);
        let mut s_image = Vec::new();
        for &x in &base {
            if let Some(s) = apply_or_skip(pair.s_of(space, x))? {
                if !contains(&s_image, s) {
                    s_image.push(s);
                }
            }
        }
        for &x in &base {
            if let Some(tx) = apply_or_skip(pair.t_of(space, x))? {
                if !contains(&e_pts, tx) {
                    return Ok(HypothesisEntry::new(
                        "range",
                        &desc,
                        EntryVerdict::Counterexample,
                    )
                    .with_detail(format!(
                        "T({}) = {} is not in E",
                        space.describe(x),
                        space.describe(tx)
                    )));
                }
            }
        }
        for &p in &e_pts {
            if !contains(&s_image, p) {
                return Ok(
                    HypothesisEntry::new("range", &desc, EntryVerdict::Counterexample)
                        .with_detail(format!("{} in E has no S-preimage", space.describe(p))),
                );
            }
        }
        return Ok(HypothesisEntry::new("range", &desc, EntryVerdict::Verified)
            .with_detail(format!("exhaustive over {} points", base.len())));
    }
    // numeric: only E = X is verifiable, by sampling
    match e {
        SubspaceSpec::Whole => {
            let ns = match space {
                Space::Numeric(ns) => ns,
                _ => unreachable!("non-enumerable means numeric"),
            };
            let samples = ns.sample(41);
            for &x in &samples {
                let p = PointRef::Numeric(x);
                if let Err(SolverError::MappingOutOfSpace { from, to }) = pair.t_of(space, p) {
                    return Ok(HypothesisEntry::new(
                        "range",
                        &desc,
                        EntryVerdict::Counterexample,
                    )
                    .with_detail(format!("T({from}) = {to} leaves the interval")));
                }
            }
            for &x in &samples {
                match pair.s_preimage(space, PointRef::Numeric(x)) {
                    Ok(_) => {}
                    Err(SolverError::InversionUnsupported { .. }) => {
                        return Ok(HypothesisEntry::new(
                            "range",
                            &desc,
                            EntryVerdict::NotCheckable,
                        )
                        .with_detail(
                            "surjectivity of S needs an S-inverse expression or the monotone flag",
                        ))
                    }
                    Err(SolverError::NoPreimage { target }) => {
                        return Ok(HypothesisEntry::new(
                            "range",
                            &desc,
                            EntryVerdict::Counterexample,
                        )
                        .with_detail(format!("{target} has no S-preimage")))
                    }
                    Err(err) => return Err(err),
                }
            }
            Ok(HypothesisEntry::new("range", &desc, EntryVerdict::Verified)
                .with_detail(format!("sampled at {} points", samples.len())))
        }
        _ => Ok(
            HypothesisEntry::new("range", &desc, EntryVerdict::NotCheckable)
                .with_detail("only E = X is checkable on a numeric space"),
        ),
    }
}

/// O-completeness of `E` in the given direction.
pub fn check_completeness(
    space: &Space,
    pair: &MappingPair,
    e: &SubspaceSpec,
    direction: Direction,
) -> Result<HypothesisEntry, SolverError> {
    let desc = format!("E = {e} is O-complete ({direction} chains)");
    match space {
        Space::Finite(_) => Ok(HypothesisEntry::new(
            "E-complete",
            &desc,
            EntryVerdict::Verified,
        )
        .with_detail("finite subsets are complete")),
        Space::Numeric(_) => Ok(asserted_or_not_checkable(
            space,
            AssertedProperty::Complete,
            "E-complete",
            &desc,
        )),
        Space::Indexed(s) => {
            let e_pts = e.enumerate(space, pair)?.expect("indexed spaces enumerate");
            let mut values: Vec<f64> = Vec::with_capacity(e_pts.len());
            for p in &e_pts {
                if let PointRef::Indexed(i) = p {
                    values.push(s.value(*i)?);
                }
            }
            let mut ascending_runs = Vec::new();
            if direction != Direction::Decreasing {
                ascending_runs.push(true);
            }
            if direction != Direction::Increasing {
                ascending_runs.push(false);
            }
            for ascending in ascending_runs {
                let mut v = values.clone();
                v.sort_by(|a, b| a.partial_cmp(b).unwrap());
                v.dedup();
                if !ascending {
                    // a decreasing chain of values is an increasing chain of
                    // their negatives
                    v = v.into_iter().rev().map(|x| -x).collect();
                }
                match analyze_chain(&v) {
                    ChainFinding::Converges => {}
                    ChainFinding::Escapes { tail, limit } => {
                        let limit = if ascending { limit } else { -limit };
                        let tail: Vec<f64> = if ascending {
                            tail
                        } else {
                            tail.into_iter().map(|x| -x).collect()
                        };
                        return Ok(HypothesisEntry::new(
                            "E-complete",
                            &desc,
                            EntryVerdict::Counterexample,
                        )
                        .with_detail(format!(
                            "monotone Cauchy chain ...{tail:?} has limit {limit:e} outside E \
                             (up to budget)"
                        )));
                    }
                    ChainFinding::Unstable { near } => {
                        let near = if ascending { near } else { -near };
                        return Ok(HypothesisEntry::new(
                            "E-complete",
                            &desc,
                            EntryVerdict::NotCheckable,
                        )
                        .with_detail(format!(
                            "chain behaviour near {near:e} is unresolved within the budget"
                        )));
                    }
                }
            }
            Ok(
                HypothesisEntry::new("E-complete", &desc, EntryVerdict::Verified).with_detail(
                    format!(
                        "no escaping monotone chain among {} materialized points",
                        values.len()
                    ),
                ),
            )
        }
    }
}

enum ChainFinding {
    Converges,
    Escapes { tail: Vec<f64>, limit: f64 },
    Unstable { near: f64 },
}

/// Looks for a strictly increasing run whose gaps decay geometrically — a
/// Cauchy chain — and decides whether its extrapolated limit is attained by
/// the next value in the sorted list. Geometric extrapolation: a run with
/// stable gap ratio `r` continues past its top by `gap * r / (1 - r)`.
fn analyze_chain(sorted: &[f64]) -> ChainFinding {
    const MIN_GAPS: usize = 4;
    const MAX_RATIO: f64 = 0.95;
    let m = sorted.len();
    if m < MIN_GAPS + 2 {
        return ChainFinding::Converges;
    }
    let gaps: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    let mut start = 0usize;
    while start < gaps.len() {
        let mut end = start;
        while end + 1 < gaps.len() {
            let r = gaps[end + 1] / gaps[end];
            if r > 0.0 && r <= MAX_RATIO {
                end += 1;
            } else {
                break;
            }
        }
        let run_gaps = end - start + 1;
        if run_gaps < MIN_GAPS {
            start = end + 1;
            continue;
        }
        // the run covers sorted[start ..= end+1]; hold out its last point as
        // the attainment candidate and extrapolate from the rest
        let ratios: Vec<f64> = (start..end.saturating_sub(1))
            .map(|i| gaps[i + 1] / gaps[i])
            .collect();
        let tail_ratios = &ratios[ratios.len().saturating_sub(5)..];
        let mut sorted_ratios = tail_ratios.to_vec();
        sorted_ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let r_hat = sorted_ratios[sorted_ratios.len() / 2];
        if !(0.0..1.0).contains(&r_hat)
            || tail_ratios.iter().any(|r| (r - r_hat).abs() > 0.4 * r_hat)
        {
            return ChainFinding::Unstable { near: sorted[end + 1] };
        }
        let chain_top = sorted[end];
        let candidate = sorted[end + 1];
        let limit_without = chain_top + gaps[end - 1] * r_hat / (1.0 - r_hat);
        let predicted_tail = (candidate - chain_top) * r_hat / (1.0 - r_hat);
        if (limit_without - candidate).abs() <= 0.25 * predicted_tail.abs().max(f64::MIN_POSITIVE)
        {
            // the candidate attains the limit of the chain below it
            start = end + 1;
            continue;
        }
        // the candidate is either one more chain member (pattern continues:
        // extend the extrapolation past it) or sits beyond the accumulation
        // point; either way the limit is not attained in E
        let membership = (limit_without - candidate) / predicted_tail;
        let limit = if (membership - 1.0).abs() <= 0.4 {
            candidate + gaps[end] * r_hat / (1.0 - r_hat)
        } else {
            limit_without
        };
        let tail_from = (end + 1).saturating_sub(3).max(start);
        let tail = sorted[tail_from..=end + 1].to_vec();
        return ChainFinding::Escapes { tail, limit };
    }
    ChainFinding::Converges
}

/// I/D/M-regularity via the pointwise reduction `S x <= S(S x)` (resp. `>=`,
/// both) over every enumerable point.
pub fn check_regularity(
    space: &Space,
    pair: &MappingPair,
    direction: Direction,
) -> Result<HypothesisEntry, SolverError> {
    let (name, desc, props): (&str, &str, Vec<AssertedProperty>) = match direction {
        Direction::Increasing => (
            "I-regular",
            "I-regularity: S x <= S(S x) for every x",
            vec![AssertedProperty::IRegular],
        ),
        Direction::Decreasing => (
            "D-regular",
            "D-regularity: S x >= S(S x) for every x",
            vec![AssertedProperty::DRegular],
        ),
        Direction::Either => (
            "M-regular",
            "M-regularity: S x and S(S x) comparable both ways for every x",
            vec![AssertedProperty::IRegular, AssertedProperty::DRegular],
        ),
    };
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(if props.iter().all(|&p| space.asserted(p)) {
                HypothesisEntry::new(name, desc, EntryVerdict::Asserted)
                    .with_detail("asserted, not verified")
            } else {
                HypothesisEntry::new(name, desc, EntryVerdict::NotCheckable)
                    .with_detail("not machine-checkable on a numeric space; assert to vouch")
            })
        }
    };
    let mut checked = 0usize;
    for &x in &pts {
        let sx = match apply_or_skip(pair.s_of(space, x))? {
            Some(s) => s,
            None => continue,
        };
        let ssx = match apply_or_skip(pair.s_of(space, sx))? {
            Some(s) => s,
            None => continue,
        };
        checked += 1;
        let inc_ok = space.leq(sx, ssx)?;
        let dec_ok = space.leq(ssx, sx)?;
        let ok = match direction {
            Direction::Increasing => inc_ok,
            Direction::Decreasing => dec_ok,
            Direction::Either => inc_ok && dec_ok,
        };
        if !ok {
            return Ok(
                HypothesisEntry::new(name, desc, EntryVerdict::Counterexample).with_detail(
                    format!(
                        "at x = {}: S x = {}, S(S x) = {}",
                        space.describe(x),
                        space.describe(sx),
                        space.describe(ssx)
                    ),
                ),
            );
        }
    }
    Ok(HypothesisEntry::new(name, desc, EntryVerdict::Verified)
        .with_detail(format!("pointwise over {checked} points")))
}

/// Exact coincidence and common-fixed-point sets on enumerable spaces.
pub fn coincidence_points_bruteforce(
    space: &Space,
    pair: &MappingPair,
) -> Result<BruteForce, SolverError> {
    brute_force(space, pair)
}

/// `S(T x) = T(S x)` at every enumerable coincidence point.
pub fn check_weak_compatibility(
    space: &Space,
    pair: &MappingPair,
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "weak compatibility: S(T x) = T(S x) at coincidence points";
    if !space.is_enumerable() {
        return Ok(asserted_or_not_checkable(
            space,
            AssertedProperty::WeaklyCompatible,
            "weak-compat",
            DESC,
        ));
    }
    let sets = brute_force(space, pair)?;
    if sets.coincidence.is_empty() {
        return Ok(
            HypothesisEntry::new("weak-compat", DESC, EntryVerdict::Verified)
                .with_detail("vacuous: no coincidence points"),
        );
    }
    for &x in &sets.coincidence {
        let tx = pair.t_of(space, x)?;
        let sx = pair.s_of(space, x)?;
        let stx = match apply_or_skip(pair.s_of(space, tx))? {
            Some(p) => p,
            None => continue,
        };
        let tsx = match apply_or_skip(pair.t_of(space, sx))? {
            Some(p) => p,
            None => continue,
        };
        if stx != tsx {
            return Ok(
                HypothesisEntry::new("weak-compat", DESC, EntryVerdict::Counterexample)
                    .with_detail(format!(
                        "at coincidence point {}: S(Tx) = {} but T(Sx) = {}",
                        space.describe(x),
                        space.describe(stx),
                        space.describe(tsx)
                    )),
            );
        }
    }
    Ok(
        HypothesisEntry::new("weak-compat", DESC, EntryVerdict::Verified).with_detail(format!(
            "checked at {} coincidence points",
            sets.coincidence.len()
        )),
    )
}

/// O-compatibility. On finite spaces monotone convergent sequences are
/// eventually constant, so this reduces to weak compatibility.
pub fn check_o_compatibility(
    space: &Space,
    pair: &MappingPair,
    _direction: Direction,
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "O-compatibility of the pair (T, S)";
    match space {
        Space::Finite(_) => {
            let inner = check_weak_compatibility(space, pair)?;
            Ok(
                HypothesisEntry::new("O-compat", DESC, inner.verdict).with_detail(format!(
                    "reduces to weak compatibility on a finite space; {}",
                    inner.detail.unwrap_or_default()
                )),
            )
        }
        Space::Indexed(_) => {
            let inner = check_weak_compatibility(space, pair)?;
            match inner.verdict {
                EntryVerdict::Counterexample => Ok(HypothesisEntry::new(
                    "O-compat",
                    DESC,
                    EntryVerdict::Counterexample,
                )
                .with_detail(inner.detail.unwrap_or_default())),
                _ => Ok(
                    HypothesisEntry::new("O-compat", DESC, EntryVerdict::NotCheckable)
                        .with_detail(
                            "only the coincidence-point reduction is checkable within the budget",
                        ),
                ),
            }
        }
        Space::Numeric(_) => Ok(asserted_or_not_checkable(
            space,
            AssertedProperty::OCompatible,
            "O-compat",
            DESC,
        )),
    }
}

/// `(T,S)`-directedness of a point set: every two members have a common
/// comparable S-image witness somewhere in the space.
pub fn check_directedness(
    space: &Space,
    pair: &MappingPair,
    c: &[PointRef],
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "C(T,S) is (T,S)-directed";
    if space.is_enumerable() && c.len() <= 1 {
        return Ok(
            HypothesisEntry::new("directed", DESC, EntryVerdict::Verified)
                .with_detail(format!("vacuous: |C| = {}", c.len())),
        );
    }
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(asserted_or_not_checkable(
                space,
                AssertedProperty::CoincidenceDirected,
                "directed",
                DESC,
            ))
        }
    };
    let mut s_images = Vec::new();
    for &z in &pts {
        if let Some(sz) = apply_or_skip(pair.s_of(space, z))? {
            s_images.push(sz);
        }
    }
    for &x in c {
        let tx = match apply_or_skip(pair.t_of(space, x))? {
            Some(p) => p,
            None => continue,
        };
        for &y in c {
            let ty = match apply_or_skip(pair.t_of(space, y))? {
                Some(p) => p,
                None => continue,
            };
            let mut found = false;
            for &sz in &s_images {
                if space.comparable(tx, sz)? && space.comparable(ty, sz)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(
                    HypothesisEntry::new("directed", DESC, EntryVerdict::Counterexample)
                        .with_detail(format!(
                            "no z with T({}) and T({}) both comparable to S z",
                            space.describe(x),
                            space.describe(y)
                        )),
                );
            }
        }
    }
    Ok(HypothesisEntry::new("directed", DESC, EntryVerdict::Verified)
        .with_detail(format!("checked over |C| = {}", c.len())))
}

/// All pairs of a point set mutually comparable.
pub fn check_totally_ordered(
    space: &Space,
    c: &[PointRef],
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "C(T,S) is totally ordered";
    if !space.is_enumerable() {
        return Ok(asserted_or_not_checkable(
            space,
            AssertedProperty::CoincidenceTotallyOrdered,
            "total-order",
            DESC,
        ));
    }
    if c.len() <= 1 {
        return Ok(
            HypothesisEntry::new("total-order", DESC, EntryVerdict::Verified)
                .with_detail(format!("vacuous: |C| = {}", c.len())),
        );
    }
    for (i, &x) in c.iter().enumerate() {
        for &y in &c[i + 1..] {
            if !space.comparable(x, y)? {
                return Ok(HypothesisEntry::new(
                    "total-order",
                    DESC,
                    EntryVerdict::Counterexample,
                )
                .with_detail(format!(
                    "{} and {} are incomparable",
                    space.describe(x),
                    space.describe(y)
                )));
            }
        }
    }
    Ok(
        HypothesisEntry::new("total-order", DESC, EntryVerdict::Verified)
            .with_detail(format!("all pairs of |C| = {} comparable", c.len())),
    )
}

/// A mapping sends comparable elements to comparable elements.
pub fn check_comparable_mapping(
    space: &Space,
    pair: &MappingPair,
    which: char,
) -> Result<HypothesisEntry, SolverError> {
    let desc = format!("{which} is a comparable mapping");
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(asserted_or_not_checkable(
                space,
                AssertedProperty::ComparableMapping,
                "comparable-map",
                &desc,
            ))
        }
    };
    let apply = |x| {
        if which == 'T' {
            pair.t_of(space, x)
        } else {
            pair.s_of(space, x)
        }
    };
    for &x in &pts {
        let fx = match apply_or_skip(apply(x))? {
            Some(p) => p,
            None => continue,
        };
        for &y in &pts {
            if !space.comparable(x, y)? {
                continue;
            }
            let fy = match apply_or_skip(apply(y))? {
                Some(p) => p,
                None => continue,
            };
            if !space.comparable(fx, fy)? {
                return Ok(HypothesisEntry::new(
                    "comparable-map",
                    &desc,
                    EntryVerdict::Counterexample,
                )
                .with_detail(format!(
                    "{} and {} are comparable but their images {} and {} are not",
                    space.describe(x),
                    space.describe(y),
                    space.describe(fx),
                    space.describe(fy)
                )));
            }
        }
    }
    Ok(
        HypothesisEntry::new("comparable-map", &desc, EntryVerdict::Verified)
            .with_detail("exhaustive"),
    )
}

/// Injectivity of one mapping.
pub fn check_one_one(
    space: &Space,
    pair: &MappingPair,
    which: char,
) -> Result<HypothesisEntry, SolverError> {
    let desc = format!("{which} is one-one");
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(asserted_or_not_checkable(
                space,
                AssertedProperty::OneOne,
                "one-one",
                &desc,
            ))
        }
    };
    let apply = |x| {
        if which == 'T' {
            pair.t_of(space, x)
        } else {
            pair.s_of(space, x)
        }
    };
    let mut seen: Vec<(PointRef, PointRef)> = Vec::new();
    for &x in &pts {
        if let Some(fx) = apply_or_skip(apply(x))? {
            if let Some((y, _)) = seen.iter().find(|(_, fy)| *fy == fx) {
                return Ok(
                    HypothesisEntry::new("one-one", &desc, EntryVerdict::Counterexample)
                        .with_detail(format!(
                            "{} and {} share the image {}",
                            space.describe(*y),
                            space.describe(x),
                            space.describe(fx)
                        )),
                );
            }
            seen.push((x, fx));
        }
    }
    Ok(HypothesisEntry::new("one-one", &desc, EntryVerdict::Verified).with_detail("exhaustive"))
}

/// `(S,O)`-continuity of `T`. On a finite space convergent sequences are
/// eventually constant, so this reduces to `S x = S y  =>  T x = T y`.
pub fn check_s_continuity(
    space: &Space,
    pair: &MappingPair,
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "T is (S,O)-continuous";
    match space {
        Space::Finite(_) => {
            let pts = space.enumerable_points().expect("finite");
            for &x in &pts {
                for &y in &pts {
                    let (sx, sy) = (pair.s_of(space, x)?, pair.s_of(space, y)?);
                    if sx == sy {
                        let (tx, ty) = (pair.t_of(space, x)?, pair.t_of(space, y)?);
                        if tx != ty {
                            return Ok(HypothesisEntry::new(
                                "S-continuity",
                                DESC,
                                EntryVerdict::Counterexample,
                            )
                            .with_detail(format!(
                                "S({0}) = S({1}) but T({0}) = {2} differs from T({1}) = {3}",
                                space.describe(x),
                                space.describe(y),
                                space.describe(tx),
                                space.describe(ty)
                            )));
                        }
                    }
                }
            }
            Ok(
                HypothesisEntry::new("S-continuity", DESC, EntryVerdict::Verified)
                    .with_detail("finite reduction: S x = S y implies T x = T y"),
            )
        }
        _ => Ok(asserted_or_not_checkable(
            space,
            AssertedProperty::SContinuous,
            "S-continuity",
            DESC,
        )),
    }
}

/// O-continuity of both maps; trivial on finite spaces.
pub fn check_o_continuity(space: &Space) -> HypothesisEntry {
    const DESC: &str = "T and S are O-continuous";
    match space {
        Space::Finite(_) => HypothesisEntry::new("O-continuity", DESC, EntryVerdict::Verified)
            .with_detail("convergent sequences in a finite metric space are eventually constant"),
        _ => asserted_or_not_checkable(space, AssertedProperty::OContinuous, "O-continuity", DESC),
    }
}

/// Plain continuity of both maps; trivial on finite spaces.
pub fn check_plain_continuity(space: &Space) -> HypothesisEntry {
    const DESC: &str = "T and S are continuous";
    match space {
        Space::Finite(_) => HypothesisEntry::new("continuity", DESC, EntryVerdict::Verified)
            .with_detail("convergent sequences in a finite metric space are eventually constant"),
        _ => asserted_or_not_checkable(space, AssertedProperty::Continuous, "continuity", DESC),
    }
}

/// The classic variant's bound condition: any two S-images admit a common
/// S-image lower bound (upper bound in the decreasing direction).
pub fn check_lower_directed(
    space: &Space,
    pair: &MappingPair,
    direction: Direction,
) -> Result<HypothesisEntry, SolverError> {
    const DESC: &str = "every two S-images admit a common comparable S-image bound";
    let pts = match space.enumerable_points() {
        Some(p) => p,
        None => {
            return Ok(
                HypothesisEntry::new("s-image-bounds", DESC, EntryVerdict::NotCheckable)
                    .with_detail("not machine-checkable on a numeric space"),
            )
        }
    };
    let mut s_images = Vec::new();
    for &z in &pts {
        if let Some(sz) = apply_or_skip(pair.s_of(space, z))? {
            if !s_images.contains(&sz) {
                s_images.push(sz);
            }
        }
    }
    let below = direction != Direction::Decreasing;
    for &x in &s_images {
        for &y in &s_images {
            let mut found = false;
            for &sv in &s_images {
                let ok = if below {
                    space.leq(sv, x)? && space.leq(sv, y)?
                } else {
                    space.leq(x, sv)? && space.leq(y, sv)?
                };
                if ok {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(HypothesisEntry::new(
                    "s-image-bounds",
                    DESC,
                    EntryVerdict::Counterexample,
                )
                .with_detail(format!(
                    "{} and {} have no common S-image bound",
                    space.describe(x),
                    space.describe(y)
                )));
            }
        }
    }
    Ok(
        HypothesisEntry::new("s-image-bounds", DESC, EntryVerdict::Verified)
            .with_detail(format!("checked over {} S-images", s_images.len())),
    )
}

fn entry_from_condition(report: &ConditionReport, name: &str) -> HypothesisEntry {
    let desc = format!("F satisfies {:?} ({})", report.check, report.subject);
    match report.verdict {
        ConditionVerdict::PassOnGrid => HypothesisEntry::new(name, &desc, EntryVerdict::Verified)
            .with_detail(format!("pass-on-grid: {}", report.grid)),
        ConditionVerdict::NotApplicable => {
            HypothesisEntry::new(name, &desc, EntryVerdict::NotCheckable)
                .with_detail("not applicable: F undefined on every probe")
        }
        ConditionVerdict::Counterexample => {
            let detail = report
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default();
            HypothesisEntry::new(name, &desc, EntryVerdict::Counterexample).with_detail(detail)
        }
    }
}

// ---------------------------------------------------------------------------
// The start condition
// ---------------------------------------------------------------------------

/// Verifies the start condition on `x0` (or searches for an admissible one),
/// returning the entry plus the point and direction the solver should use.
fn resolve_x0(
    space: &Space,
    pair: &MappingPair,
    x0: Option<PointRef>,
    direction: Direction,
) -> Result<(HypothesisEntry, Option<(PointRef, Direction)>), SolverError> {
    let desc = match direction {
        Direction::Increasing => "there is x0 with S x0 <= T x0",
        Direction::Decreasing => "there is x0 with S x0 >= T x0",
        Direction::Either => "there is x0 with S x0 and T x0 comparable",
    };
    let admissible = |x: PointRef| -> Result<Option<Direction>, SolverError> {
        let sx = match apply_or_skip(pair.s_of(space, x))? {
            Some(p) => p,
            None => return Ok(None),
        };
        let tx = match apply_or_skip(pair.t_of(space, x))? {
            Some(p) => p,
            None => return Ok(None),
        };
        let inc = space.leq(sx, tx)?;
        let dec = space.leq(tx, sx)?;
        Ok(match direction {
            Direction::Increasing if inc => Some(Direction::Increasing),
            Direction::Decreasing if dec => Some(Direction::Decreasing),
            Direction::Either if inc => Some(Direction::Increasing),
            Direction::Either if dec => Some(Direction::Decreasing),
            _ => None,
        })
    };
    if let Some(x) = x0 {
        return Ok(match admissible(x)? {
            Some(used) => (
                HypothesisEntry::new("x0", desc, EntryVerdict::Verified)
                    .with_detail(format!("x0 = {} ({used} run)", space.describe(x))),
                Some((x, used)),
            ),
            None => (
                HypothesisEntry::new("x0", desc, EntryVerdict::Counterexample).with_detail(
                    format!(
                        "the supplied x0 = {} fails the condition",
                        space.describe(x)
                    ),
                ),
                None,
            ),
        });
    }
    let candidates: Vec<PointRef> = match space.enumerable_points() {
        Some(p) => p,
        None => match space {
            Space::Numeric(ns) => ns.sample(41).into_iter().map(PointRef::Numeric).collect(),
            _ => unreachable!(),
        },
    };
    for x in candidates.iter().copied() {
        if let Some(used) = admissible(x)? {
            return Ok((
                HypothesisEntry::new("x0", desc, EntryVerdict::Verified)
                    .with_detail(format!("found x0 = {} ({used} run)", space.describe(x))),
                Some((x, used)),
            ));
        }
    }
    let verdict = if space.is_enumerable() {
        EntryVerdict::Counterexample
    } else {
        EntryVerdict::NotCheckable
    };
    Ok((
        HypothesisEntry::new("x0", desc, verdict).with_detail(format!(
            "no admissible x0 among {} candidates",
            candidates.len()
        )),
        None,
    ))
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub grid: GridSpec,
    pub sampler: PairSampler,
    pub solve: SolveOptions,
    /// Residual tolerance for numeric conclusions.
    pub tol: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid: GridSpec::default_log(),
            sampler: PairSampler::default(),
            solve: SolveOptions::default(),
            tol: 1e-9,
        }
    }
}

/// Runs exactly the hypothesis checks the chosen theorem variant requires
/// and, when they hold, the solver plus brute-force confirmation of the
/// promised conclusion. Uniqueness is only concluded when the variant's
/// uniqueness hypotheses verify.
#[allow(clippy::too_many_arguments)]
pub fn certify(
    space: &Space,
    pair: &MappingPair,
    ic: &ImplicitContraction,
    variant: TheoremVariant,
    direction: Direction,
    e: &SubspaceSpec,
    x0: Option<PointRef>,
    opts: &CertifyOptions,
) -> Result<HypothesisReport, SolverError> {
    let mut entries: Vec<HypothesisEntry> = Vec::new();
    let start: Option<(PointRef, Direction)>;

    let is_metric = variant == TheoremVariant::Metric;
    let sampler = PairSampler {
        all_pairs: is_metric || opts.sampler.all_pairs,
        ..opts.sampler.clone()
    };

    // core structural hypotheses
    let range_e = if variant == TheoremVariant::Classic {
        SubspaceSpec::SImage
    } else {
        e.clone()
    };
    entries.push(check_range_inclusion(space, pair, &range_e)?.at_stage(Stage::Core));
    if !is_metric {
        entries.push(check_s_increasing(space, pair)?.at_stage(Stage::Core));
    }
    let completeness_spec = if variant == TheoremVariant::Classic {
        SubspaceSpec::Whole
    } else {
        e.clone()
    };
    let completeness_dir = if is_metric { Direction::Either } else { direction };
    entries
        .push(check_completeness(space, pair, &completeness_spec, completeness_dir)?
            .at_stage(Stage::Core));
    if let TheoremVariant::Quasi { .. } = variant {
        let rho_entry = match &ic.rho {
            Some(rho) => {
                let r = check_half_comparison(rho, &opts.grid);
                let mut entry = entry_from_condition(&r, "rho");
                entry.description =
                    format!("rho ({}) is a half-comparison function", rho.label());
                entry
            }
            None => HypothesisEntry::new(
                "rho",
                "rho is a half-comparison function",
                EntryVerdict::NotCheckable,
            )
            .with_detail("the contraction does not declare a half-comparison"),
        };
        entries.push(rho_entry.at_stage(Stage::Core));
    }
    entries.push(
        entry_from_condition(&check_condition_f1(ic, Condition::F1a, &opts.grid), "F1a")
            .at_stage(Stage::Core),
    );
    entries.push(
        entry_from_condition(
            &evaluate_contraction(space, pair, ic, &sampler)?,
            "inequality",
        )
        .at_stage(Stage::Core),
    );

    // variant-specific hypothesis ladder
    match variant {
        TheoremVariant::Classic => {
            let (x0_entry, s) = resolve_x0(space, pair, x0, direction)?;
            start = s;
            entries.push(x0_entry.relabel("a1").at_stage(Stage::Coincidence));
            entries.push(
                check_regularity(space, pair, direction)?
                    .relabel("a2")
                    .at_stage(Stage::Coincidence),
            );
            entries.push(
                check_weak_compatibility(space, pair)?
                    .relabel("a3")
                    .at_stage(Stage::CommonFixed),
            );
            entries.push(
                entry_from_condition(&check_condition_f2(ic, &opts.grid), "a4")
                    .at_stage(Stage::CommonFixed),
            );
            entries.push(
                check_lower_directed(space, pair, direction)?
                    .relabel("a5")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                entry_from_condition(&check_condition_f1(ic, Condition::F1c, &opts.grid), "a6")
                    .at_stage(Stage::Uniqueness),
            );
        }
        TheoremVariant::Regular => {
            let (x0_entry, s) = resolve_x0(space, pair, x0, direction)?;
            start = s;
            entries.push(x0_entry.relabel("b1").at_stage(Stage::Coincidence));
            entries.push(
                check_regularity(space, pair, direction)?
                    .relabel("b2")
                    .at_stage(Stage::Coincidence),
            );
            entries.push(
                entry_from_condition(&check_condition_f2(ic, &opts.grid), "b3")
                    .at_stage(Stage::CommonFixed),
            );
            entries.push(
                check_weak_compatibility(space, pair)?
                    .relabel("b4")
                    .at_stage(Stage::CommonFixed),
            );
            let c = coincidence_set_or_empty(space, pair)?;
            entries.push(
                check_directedness(space, pair, &c)?
                    .relabel("b5")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                entry_from_condition(&check_condition_f1(ic, Condition::F1c, &opts.grid), "b6")
                    .at_stage(Stage::Uniqueness),
            );
        }
        TheoremVariant::Continuity(mode) => {
            let (x0_entry, s) = resolve_x0(space, pair, x0, direction)?;
            start = s;
            entries.push(x0_entry.relabel("b1").at_stage(Stage::Coincidence));
            push_continuity_entries(&mut entries, space, pair, mode, direction, "c2")?;
            entries.push(
                entry_from_condition(&check_condition_f2(ic, &opts.grid), "b3")
                    .at_stage(Stage::CommonFixed),
            );
            let weak = if mode == ContinuityMode::CompatContinuity {
                derive_weak_from_compat(space, pair, &entries)?
            } else {
                check_weak_compatibility(space, pair)?
            };
            entries.push(weak.relabel("b4").at_stage(Stage::CommonFixed));
            let c = coincidence_set_or_empty(space, pair)?;
            entries.push(
                check_totally_ordered(space, &c)?
                    .relabel("c5")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                comparable_mapping_either(space, pair)?
                    .relabel("c6")
                    .at_stage(Stage::Uniqueness),
            );
        }
        TheoremVariant::Poc | TheoremVariant::PocContinuity(_) => {
            let (x0_entry, s) = resolve_x0(space, pair, x0, direction)?;
            start = s;
            entries.push(x0_entry.relabel("d1").at_stage(Stage::Coincidence));
            match variant {
                TheoremVariant::Poc => entries.push(
                    check_regularity(space, pair, direction)?
                        .relabel("d2")
                        .at_stage(Stage::Coincidence),
                ),
                TheoremVariant::PocContinuity(mode) => {
                    push_continuity_entries(&mut entries, space, pair, mode, direction, "d2")?
                }
                _ => unreachable!(),
            }
            let c = coincidence_set_or_empty(space, pair)?;
            entries.push(
                check_directedness(space, pair, &c)?
                    .relabel("d3")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                entry_from_condition(&check_condition_f1(ic, Condition::F1b, &opts.grid), "d4")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                one_one_either(space, pair)?
                    .relabel("d5")
                    .at_stage(Stage::Uniqueness),
            );
            entries.push(
                check_weak_compatibility(space, pair)?
                    .relabel("d6")
                    .at_stage(Stage::Uniqueness),
            );
        }
        TheoremVariant::Quasi { continuity } => {
            let (x0_entry, s) = resolve_x0(space, pair, x0, direction)?;
            start = s;
            entries.push(x0_entry.relabel("g1").at_stage(Stage::Coincidence));
            match continuity {
                None => entries.push(
                    check_regularity(space, pair, direction)?
                        .relabel("g2")
                        .at_stage(Stage::Coincidence),
                ),
                Some(mode) => {
                    push_continuity_entries(&mut entries, space, pair, mode, direction, "g2")?
                }
            }
            entries.push(
                check_weak_compatibility(space, pair)?
                    .relabel("g3")
                    .at_stage(Stage::Uniqueness),
            );
            let c = coincidence_set_or_empty(space, pair)?;
            match continuity {
                None => entries.push(
                    check_directedness(space, pair, &c)?
                        .relabel("g4")
                        .at_stage(Stage::Uniqueness),
                ),
                Some(_) => {
                    entries.push(
                        check_totally_ordered(space, &c)?
                            .relabel("g4-order")
                            .at_stage(Stage::Uniqueness),
                    );
                    entries.push(
                        comparable_mapping_either(space, pair)?
                            .relabel("g4-comparable")
                            .at_stage(Stage::Uniqueness),
                    );
                }
            }
        }
        TheoremVariant::Metric => {
            // any start works for the metric form; search silently
            let (_, s) = resolve_x0(space, pair, x0, Direction::Either)?;
            start = s;
            entries.push(
                check_weak_compatibility(space, pair)?
                    .relabel("weak-compat")
                    .at_stage(Stage::CommonFixed),
            );
            entries.push(
                entry_from_condition(&check_condition_f2(ic, &opts.grid), "F2")
                    .at_stage(Stage::CommonFixed),
            );
        }
    }

    // aggregate
    let asserted_count = entries
        .iter()
        .filter(|e| e.verdict == EntryVerdict::Asserted)
        .count();
    let overall = if entries
        .iter()
        .any(|e| e.verdict == EntryVerdict::Counterexample)
    {
        EntryVerdict::Counterexample
    } else if entries.iter().all(|e| e.verdict.holds()) {
        EntryVerdict::Verified
    } else {
        EntryVerdict::NotCheckable
    };

    let mut report = HypothesisReport {
        variant,
        direction,
        entries,
        conclusions: Vec::new(),
        overall,
        asserted_count,
        outcome: None,
    };

    // run the promised conclusion when the relevant hypotheses hold
    let coincidence_ready = report.stage_ok(Stage::Coincidence);
    let common_ready = match variant {
        TheoremVariant::Poc | TheoremVariant::PocContinuity(_) | TheoremVariant::Quasi { .. } => {
            report.stage_ok(Stage::Uniqueness)
        }
        _ => report.stage_ok(Stage::CommonFixed),
    };
    let unique_ready = match variant {
        TheoremVariant::Metric => report.stage_ok(Stage::CommonFixed),
        _ => report.stage_ok(Stage::Uniqueness),
    };

    if coincidence_ready {
        if let Some((x0, used)) = start {
            let trace = jungck_sequence(space, pair, x0, used, &opts.solve)?;
            let steps = trace.steps.len();
            let trace_verdict = trace.verdict.clone();
            let (fixed_point, no_coincidence) =
                match extract_fixed_point(space, pair, &trace, opts.tol) {
                    Ok(fp) => (Some(fp), None),
                    Err(SolverError::NoCoincidence { at, residual }) => (None, Some((at, residual))),
                    Err(e) => return Err(e),
                };
            let brute = if space.is_enumerable() {
                Some(brute_force(space, pair)?)
            } else {
                None
            };

            let coincidence_entry = conclusion_coincidence(space, &brute, &fixed_point);
            let coincidence_failed = coincidence_entry.verdict == EntryVerdict::Counterexample;
            report.conclusions.push(coincidence_entry);
            if coincidence_failed {
                // locate the failure: the chain of T-images escapes every
                // admissible complete subspace
                report.conclusions.push(
                    check_completeness(space, pair, &SubspaceSpec::TImage, used)?
                        .relabel("diagnosis-E-complete")
                        .at_stage(Stage::Diagnostic),
                );
            } else {
                if common_ready {
                    report
                        .conclusions
                        .push(conclusion_common(space, &brute, &fixed_point));
                }
                if unique_ready {
                    report
                        .conclusions
                        .push(conclusion_unique(space, &brute, &fixed_point));
                }
            }
            report.outcome = Some(SolveOutcome {
                trace_verdict,
                steps,
                fixed_point,
                no_coincidence,
                brute,
            });
        }
    }

    Ok(report)
}

fn coincidence_set_or_empty(
    space: &Space,
    pair: &MappingPair,
) -> Result<Vec<PointRef>, SolverError> {
    if space.is_enumerable() {
        Ok(brute_force(space, pair)?.coincidence)
    } else {
        Ok(Vec::new())
    }
}

fn comparable_mapping_either(
    space: &Space,
    pair: &MappingPair,
) -> Result<HypothesisEntry, SolverError> {
    let t = check_comparable_mapping(space, pair, 'T')?;
    if t.verdict.holds() {
        return Ok(t);
    }
    let s = check_comparable_mapping(space, pair, 'S')?;
    if s.verdict.holds() {
        return Ok(s);
    }
    Ok(t.with_detail("neither T nor S maps comparable elements to comparable elements"))
}

fn one_one_either(space: &Space, pair: &MappingPair) -> Result<HypothesisEntry, SolverError> {
    let t = check_one_one(space, pair, 'T')?;
    if t.verdict.holds() {
        return Ok(t);
    }
    let s = check_one_one(space, pair, 'S')?;
    if s.verdict.holds() {
        return Ok(s);
    }
    Ok(t.with_detail("neither T nor S is one-one on the enumerated points"))
}

fn push_continuity_entries(
    entries: &mut Vec<HypothesisEntry>,
    space: &Space,
    pair: &MappingPair,
    mode: ContinuityMode,
    direction: Direction,
    label: &str,
) -> Result<(), SolverError> {
    match mode {
        ContinuityMode::SContinuity => {
            entries.push(
                check_s_continuity(space, pair)?
                    .relabel(label)
                    .at_stage(Stage::Coincidence),
            );
        }
        ContinuityMode::CompatContinuity => {
            entries.push(
                check_o_compatibility(space, pair, direction)?
                    .relabel(&format!("{label}-compat"))
                    .at_stage(Stage::Coincidence),
            );
            entries.push(
                check_o_continuity(space)
                    .relabel(&format!("{label}-continuity"))
                    .at_stage(Stage::Coincidence),
            );
        }
        ContinuityMode::PlainContinuity => {
            entries.push(
                check_plain_continuity(space)
                    .relabel(label)
                    .at_stage(Stage::Coincidence),
            );
        }
    }
    Ok(())
}

/// In compat mode weak compatibility follows from O-compatibility.
fn derive_weak_from_compat(
    space: &Space,
    pair: &MappingPair,
    entries: &[HypothesisEntry],
) -> Result<HypothesisEntry, SolverError> {
    let compat_holds = entries
        .iter()
        .find(|e| e.name.ends_with("-compat"))
        .map(|e| e.verdict.holds())
        .unwrap_or(false);
    if compat_holds {
        Ok(HypothesisEntry::new(
            "weak-compat",
            "weak compatibility: S(T x) = T(S x) at coincidence points",
            EntryVerdict::Asserted,
        )
        .with_detail("implied by O-compatibility"))
    } else {
        check_weak_compatibility(space, pair)
    }
}

fn conclusion_coincidence(
    space: &Space,
    brute: &Option<BruteForce>,
    fp: &Option<FixedPointResult>,
) -> HypothesisEntry {
    const DESC: &str = "the pair has a coincidence point";
    match brute {
        Some(sets) => {
            if sets.coincidence.is_empty() {
                HypothesisEntry::new("coincidence", DESC, EntryVerdict::Counterexample)
                    .with_detail(
                        "hypotheses hold, yet exhaustive search finds no coincidence point",
                    )
                    .at_stage(Stage::Conclusion)
            } else {
                let found = fp
                    .as_ref()
                    .map(|f| space.describe(f.coincidence))
                    .unwrap_or_else(|| space.describe(sets.coincidence[0]));
                HypothesisEntry::new("coincidence", DESC, EntryVerdict::Verified)
                    .with_detail(format!(
                        "solver and brute force agree; |C| = {}, e.g. {found}",
                        sets.coincidence.len()
                    ))
                    .at_stage(Stage::Conclusion)
            }
        }
        None => match fp {
            Some(f) => HypothesisEntry::new("coincidence", DESC, EntryVerdict::Verified)
                .with_detail(format!(
                    "solver found {} with residual {:e}",
                    space.describe(f.coincidence),
                    f.residual
                ))
                .at_stage(Stage::Conclusion),
            None => HypothesisEntry::new("coincidence", DESC, EntryVerdict::Counterexample)
                .with_detail("the trace produced no coincidence candidate within tolerance")
                .at_stage(Stage::Conclusion),
        },
    }
}

fn conclusion_common(
    space: &Space,
    brute: &Option<BruteForce>,
    fp: &Option<FixedPointResult>,
) -> HypothesisEntry {
    const DESC: &str = "the pair has a common fixed point";
    match brute {
        Some(sets) => {
            if sets.common_fixed.is_empty() {
                HypothesisEntry::new("common-fixed", DESC, EntryVerdict::Counterexample)
                    .with_detail("no common fixed point exists despite the hypotheses")
                    .at_stage(Stage::Conclusion)
            } else {
                let solver_ok = fp
                    .as_ref()
                    .and_then(|f| f.common.as_ref())
                    .map(|c| sets.common_fixed.iter().any(|&p| p == c.z))
                    .unwrap_or(false);
                if solver_ok {
                    HypothesisEntry::new("common-fixed", DESC, EntryVerdict::Verified)
                        .with_detail(format!(
                            "solver's point is among the {} found",
                            sets.common_fixed.len()
                        ))
                        .at_stage(Stage::Conclusion)
                } else {
                    HypothesisEntry::new("common-fixed", DESC, EntryVerdict::Counterexample)
                        .with_detail("solver did not land on a brute-force common fixed point")
                        .at_stage(Stage::Conclusion)
                }
            }
        }
        None => match fp.as_ref().and_then(|f| f.common.as_ref()) {
            Some(c) => HypothesisEntry::new("common-fixed", DESC, EntryVerdict::Verified)
                .with_detail(format!(
                    "solver-confirmed z = {} (T,S residuals {:e}, {:e})",
                    space.describe(c.z),
                    c.t_residual,
                    c.s_residual
                ))
                .at_stage(Stage::Conclusion),
            None => HypothesisEntry::new("common-fixed", DESC, EntryVerdict::Counterexample)
                .with_detail("the candidate does not verify as a common fixed point")
                .at_stage(Stage::Conclusion),
        },
    }
}

fn conclusion_unique(
    space: &Space,
    brute: &Option<BruteForce>,
    fp: &Option<FixedPointResult>,
) -> HypothesisEntry {
    const DESC: &str = "the common fixed point is unique";
    match brute {
        Some(sets) => {
            if sets.common_fixed.len() == 1 {
                HypothesisEntry::new("uniqueness", DESC, EntryVerdict::Verified)
                    .with_detail(format!(
                        "brute force confirms the single point {}",
                        space.describe(sets.common_fixed[0])
                    ))
                    .at_stage(Stage::Conclusion)
            } else {
                HypothesisEntry::new("uniqueness", DESC, EntryVerdict::Counterexample)
                    .with_detail(format!(
                        "brute force finds {} common fixed points",
                        sets.common_fixed.len()
                    ))
                    .at_stage(Stage::Conclusion)
            }
        }
        None => {
            let found = fp
                .as_ref()
                .and_then(|f| f.common.as_ref())
                .map(|c| space.describe(c.z));
            HypothesisEntry::new("uniqueness", DESC, EntryVerdict::NotCheckable)
                .with_detail(match found {
                    Some(z) => format!("not enumerable; solver found z = {z}"),
                    None => "not enumerable".into(),
                })
                .at_stage(Stage::Conclusion)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::build_contraction;
    use crate::expr::Expr;
    use crate::solver::Mapping;
    use crate::expr::OrderPredicate;
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
    fn s_increasing_on_the_shift_pair() {
        let (space, pair) = shift_sequence(40);
        let e = check_s_increasing(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified);
    }

    #[test]
    fn s_increasing_counterexample_on_a_reversed_chain() {
        let space = chain3();
        // S = id, T reverses the chain
        let pair = MappingPair::new(Mapping::Table(vec![2, 1, 0]), Mapping::Table(vec![0, 1, 2]));
        let e = check_s_increasing(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
    }

    #[test]
    fn singleton_space_is_vacuously_s_increasing() {
        let space = Space::Finite(
            FiniteSpace::chain(vec!["a".into()], vec![vec![0.0]]).unwrap(),
        );
        let pair = MappingPair::new(Mapping::Table(vec![0]), Mapping::Table(vec![0]));
        let e = check_s_increasing(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified);
    }

    #[test]
    fn range_inclusion_witness_when_t_leaves_e() {
        let space = chain3();
        // E = {a}: T(b) = b escapes it
        let pair = MappingPair::new(Mapping::Table(vec![0, 1, 0]), Mapping::Table(vec![0, 1, 2]));
        let e = check_range_inclusion(
            &space,
            &pair,
            &SubspaceSpec::Explicit(vec![PointRef::Finite(0)]),
        )
        .unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
    }

    #[test]
    fn range_inclusion_verified_for_surjective_s() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 0, 0]), Mapping::Table(vec![0, 1, 2]));
        let e = check_range_inclusion(&space, &pair, &SubspaceSpec::Whole).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified);
    }

    #[test]
    fn completeness_fails_on_the_shift_t_image() {
        let (space, pair) = shift_sequence(50);
        let e = check_completeness(&space, &pair, &SubspaceSpec::TImage, Direction::Increasing)
            .unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample, "{e}");
        let detail = e.detail.unwrap();
        assert!(detail.contains("limit"), "{detail}");
    }

    #[test]
    fn completeness_holds_on_the_whole_shift_space() {
        let (space, pair) = shift_sequence(50);
        let e = check_completeness(&space, &pair, &SubspaceSpec::Whole, Direction::Increasing)
            .unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified, "{e}");
    }

    #[test]
    fn regularity_reduction_counterexample_on_a_swap() {
        // 2-chain a < b with S swapping the points: S(a)=b, S(S(a))=a and b is
        // not below a.
        let space = Space::Finite(
            FiniteSpace::chain(
                vec!["a".into(), "b".into()],
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            )
            .unwrap(),
        );
        let pair = MappingPair::new(Mapping::Table(vec![0, 1]), Mapping::Table(vec![1, 0]));
        let e = check_regularity(&space, &pair, Direction::Increasing).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
    }

    #[test]
    fn identity_s_is_always_regular() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 0, 0]), Mapping::Table(vec![0, 1, 2]));
        for d in [Direction::Increasing, Direction::Decreasing, Direction::Either] {
            let e = check_regularity(&space, &pair, d).unwrap();
            assert_eq!(e.verdict, EntryVerdict::Verified);
        }
    }

    #[test]
    fn unasserted_numeric_regularity_is_not_checkable() {
        let pred = OrderPredicate::parse("(x <= y and y != 1) or (x == 1 and y == 1)").unwrap();
        let space = Space::Numeric(
            NumericSpace::new(
                -1.0,
                1.0,
                false,
                true,
                NumericOrder::Predicate(pred),
                BTreeSet::new(),
            )
            .unwrap(),
        );
        let pair = MappingPair::new(
            Mapping::NumericExpr(Expr::parse("x / 3", &["x"]).unwrap()),
            Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()),
        );
        let e = check_regularity(&space, &pair, Direction::Increasing).unwrap();
        assert_eq!(e.verdict, EntryVerdict::NotCheckable);
    }

    #[test]
    fn brute_force_is_empty_on_the_shift_pair() {
        let (space, pair) = shift_sequence(50);
        let sets = coincidence_points_bruteforce(&space, &pair).unwrap();
        assert!(sets.coincidence.is_empty());
        assert!(sets.common_fixed.is_empty());
    }

    #[test]
    fn weak_compatibility_vacuous_without_coincidence_points() {
        let (space, pair) = shift_sequence(50);
        let e = check_weak_compatibility(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified);
    }

    #[test]
    fn weak_compatibility_counterexample() {
        // c < a, c < b; S = id on a, T(a) = a: coincidence at a.
        // S(T a) = S(a) = b while T(S a) = T(b) = a: not commuting at a.
        let space = Space::Finite(
            FiniteSpace::with_transitive_closure(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    vec![0.0, 1.0, 2.0],
                    vec![1.0, 0.0, 1.0],
                    vec![2.0, 1.0, 0.0],
                ],
                &[(2, 0), (2, 1)],
            )
            .unwrap(),
        );
        let s = Mapping::Table(vec![0, 0, 2]);
        let t = Mapping::Table(vec![0, 1, 2]);
        // coincidence points: x with S x = T x: a (0=0), c (2=2)
        // at a: S(Ta) = S(a) = a, T(Sa) = T(a) = a -> fine; make it fail at c:
        let s = match s {
            Mapping::Table(mut v) => {
                v[2] = 2;
                Mapping::Table(v)
            }
            _ => unreachable!(),
        };
        let t = match t {
            Mapping::Table(mut v) => {
                v[2] = 2;
                Mapping::Table(v)
            }
            _ => unreachable!(),
        };
        // adjust: coincidence at b: S(b) = a, T(b) = ? set T(b) = a too.
        let s = match s {
            Mapping::Table(mut v) => {
                v[1] = 0;
                Mapping::Table(v)
            }
            _ => unreachable!(),
        };
        let t = match t {
            Mapping::Table(mut v) => {
                v[1] = 0;
                v[0] = 1; // S(T b) = S(a) = a vs T(S b) = T(a) = b
                Mapping::Table(v)
            }
            _ => unreachable!(),
        };
        let pair = MappingPair::new(t, s);
        let e = check_weak_compatibility(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample, "{e}");
    }

    #[test]
    fn equal_maps_are_weakly_compatible() {
        let space = chain3();
        let same = Mapping::Table(vec![1, 2, 2]);
        let pair = MappingPair::new(same.clone(), same);
        let e = check_weak_compatibility(&space, &pair).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Verified);
    }

    #[test]
    fn o_compatibility_matches_weak_compatibility_on_finite_spaces() {
        let space = chain3();
        let pair = MappingPair::new(Mapping::Table(vec![0, 0, 0]), Mapping::Table(vec![0, 1, 2]));
        let weak = check_weak_compatibility(&space, &pair).unwrap();
        let ocompat = check_o_compatibility(&space, &pair, Direction::Increasing).unwrap();
        assert_eq!(weak.verdict, ocompat.verdict);
    }

    #[test]
    fn directedness_fails_on_an_antichain() {
        // two incomparable points, T = S = id
        let space = Space::Finite(
            FiniteSpace::new(
                vec!["a".into(), "b".into()],
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
                &[],
            )
            .unwrap(),
        );
        let pair = MappingPair::new(Mapping::Table(vec![0, 1]), Mapping::Table(vec![0, 1]));
        let c = vec![PointRef::Finite(0), PointRef::Finite(1)];
        let e = check_directedness(&space, &pair, &c).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
        let e = check_totally_ordered(&space, &c).unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
    }

    #[test]
    fn comparable_mapping_counterexample_on_scrambled_chain() {
        // 3-chain mapped onto an antichain pair
        let space = Space::Finite(
            FiniteSpace::with_transitive_closure(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    vec![0.0, 1.0, 2.0],
                    vec![1.0, 0.0, 1.0],
                    vec![2.0, 1.0, 0.0],
                ],
                &[(0, 1)],
            )
            .unwrap(),
        );
        // a and b comparable; images c and b are not (only a <= b stored)
        let pair = MappingPair::new(Mapping::Table(vec![2, 1, 2]), Mapping::Table(vec![0, 1, 2]));
        let e = check_comparable_mapping(&space, &pair, 'T').unwrap();
        assert_eq!(e.verdict, EntryVerdict::Counterexample);
        let id = MappingPair::new(Mapping::Table(vec![0, 1, 2]), Mapping::Table(vec![0, 1, 2]));
        assert_eq!(
            check_comparable_mapping(&space, &id, 'T').unwrap().verdict,
            EntryVerdict::Verified
        );
        let consts = MappingPair::new(Mapping::Table(vec![1, 1, 1]), Mapping::Table(vec![0, 1, 2]));
        assert_eq!(
            check_comparable_mapping(&space, &consts, 'T').unwrap().verdict,
            EntryVerdict::Verified
        );
    }

    #[test]
    fn certify_regular_verifies_a_constant_map_on_a_chain() {
        let space = chain3();
        // T constant at the bottom, S = id
        let pair = MappingPair::new(Mapping::Table(vec![0, 0, 0]), Mapping::Table(vec![0, 1, 2]));
        let ic = build_contraction("banach", &[("k".into(), 0.5)]).unwrap();
        let report = certify(
            &space,
            &pair,
            &ic,
            TheoremVariant::Regular,
            Direction::Increasing,
            &SubspaceSpec::SImage,
            None,
            &CertifyOptions::default(),
        )
        .unwrap();
        assert_eq!(report.overall, EntryVerdict::Verified, "{report}");
        let brute = report.outcome.as_ref().unwrap().brute.as_ref().unwrap();
        assert_eq!(brute.common_fixed, vec![PointRef::Finite(0)]);
        assert!(report
            .conclusions
            .iter()
            .all(|c| c.verdict == EntryVerdict::Verified));
    }

    #[test]
    fn certify_classic_flags_the_discrepancy_on_the_shift_pair() {
        let (space, pair) = shift_sequence(64);
        let ic = build_contraction("banach", &[("k".into(), 0.25)]).unwrap();
        let report = certify(
            &space,
            &pair,
            &ic,
            TheoremVariant::Classic,
            Direction::Increasing,
            &SubspaceSpec::SImage,
            Some(PointRef::Indexed(0)),
            &CertifyOptions::default(),
        )
        .unwrap();
        // every hypothesis of the uncorrected statement holds...
        assert_eq!(report.overall, EntryVerdict::Verified, "{report}");
        // ...yet the conclusion fails, and the diagnosis lands on completeness
        let conclusion = report.entry("coincidence").unwrap();
        assert_eq!(conclusion.verdict, EntryVerdict::Counterexample);
        let diagnosis = report.entry("diagnosis-E-complete").unwrap();
        assert_eq!(diagnosis.verdict, EntryVerdict::Counterexample);
    }

    #[test]
    fn variant_ids_round_trip() {
        for id in [
            "classic",
            "regular",
            "continuity-i",
            "continuity-ii",
            "continuity-iii",
            "poc",
            "poc-continuity-ii",
            "quasi",
            "quasi-iii",
            "metric",
        ] {
            let v: TheoremVariant = id.parse().unwrap();
            assert_eq!(v.to_string(), id);
        }
        assert!("nope".parse::<TheoremVariant>().is_err());
    }
}
