//! Ordered metric spaces in three concrete flavors.
//!
//! * [`FiniteSpace`] — a labeled point table with an explicit metric matrix
//!   and an order relation stored as its reflexive closure. All axioms are
//!   exhaustively checkable via [`FiniteSpace::validate`].
//! * [`IndexedSpace`] — a countable point family `i -> value(i)` with the
//!   absolute-difference metric and the order induced by value comparison.
//!   Points materialize lazily up to a budget; queries beyond it fail with
//!   [`SpaceError::BudgetExceeded`].
//! * [`NumericSpace`] — a real interval with the usual metric and either the
//!   usual order or a user-declared order predicate. Properties that are not
//!   machine-checkable on an uncountable set (completeness, regularity,
//!   continuity of mappings, ...) travel as user-asserted flags which the
//!   certifier surfaces as "asserted, not verified".

use crate::expr::OrderPredicate;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

/// Absolute tolerance for treating two metric values as equal.
pub const METRIC_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("point {point} does not belong to this space")]
    InvalidPoint { point: String },
    #[error("index {index} exceeds the space budget {budget}")]
    BudgetExceeded { index: u64, budget: u64 },
    #[error("invalid space: {0}")]
    InvalidConstruction(String),
}

/// Handle to a point of a specific space; only valid against the space that
/// issued it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointRef {
    Finite(usize),
    Indexed(u64),
    Numeric(f64),
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRef::Finite(i) => write!(f, "#{i}"),
            PointRef::Indexed(i) => write!(f, "x[{i}]"),
            PointRef::Numeric(x) => write!(f, "{x}"),
        }
    }
}

/// Properties a user vouches for on spaces where they are not computable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssertedProperty {
    /// The subspace named in the run block is (O-)complete.
    Complete,
    IRegular,
    DRegular,
    SIncreasing,
    /// `T` is `(S,O)`-continuous.
    SContinuous,
    /// Both `T` and `S` are O-continuous.
    OContinuous,
    OCompatible,
    /// Both `T` and `S` are continuous.
    Continuous,
    WeaklyCompatible,
    CoincidenceTotallyOrdered,
    CoincidenceDirected,
    ComparableMapping,
    /// One of `T` and `S` is one-one.
    OneOne,
}

impl AssertedProperty {
    pub const ALL: [AssertedProperty; 13] = [
        AssertedProperty::Complete,
        AssertedProperty::IRegular,
        AssertedProperty::DRegular,
        AssertedProperty::SIncreasing,
        AssertedProperty::SContinuous,
        AssertedProperty::OContinuous,
        AssertedProperty::OCompatible,
        AssertedProperty::Continuous,
        AssertedProperty::WeaklyCompatible,
        AssertedProperty::CoincidenceTotallyOrdered,
        AssertedProperty::CoincidenceDirected,
        AssertedProperty::ComparableMapping,
        AssertedProperty::OneOne,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AssertedProperty::Complete => "complete",
            AssertedProperty::IRegular => "i-regular",
            AssertedProperty::DRegular => "d-regular",
            AssertedProperty::SIncreasing => "s-increasing",
            AssertedProperty::SContinuous => "s-continuous",
            AssertedProperty::OContinuous => "o-continuous",
            AssertedProperty::OCompatible => "o-compatible",
            AssertedProperty::Continuous => "continuous",
            AssertedProperty::WeaklyCompatible => "weakly-compatible",
            AssertedProperty::CoincidenceTotallyOrdered => "coincidence-totally-ordered",
            AssertedProperty::CoincidenceDirected => "coincidence-directed",
            AssertedProperty::ComparableMapping => "comparable-mapping",
            AssertedProperty::OneOne => "one-one",
        }
    }
}

impl fmt::Display for AssertedProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AssertedProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AssertedProperty::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown asserted property `{s}`"))
    }
}

// ---------------------------------------------------------------------------
// Finite flavor
// ---------------------------------------------------------------------------

/// A finite ordered metric space backed by explicit tables.
#[derive(Debug, Clone)]
pub struct FiniteSpace {
    labels: Vec<String>,
    metric: Vec<f64>,
    leq: Vec<bool>,
}

impl FiniteSpace {
    /// Builds the space, storing the reflexive closure of `order_pairs`.
    /// Shape errors fail here; axiom violations are reported by [`validate`].
    ///
    /// [`validate`]: FiniteSpace::validate
    pub fn new(
        labels: Vec<String>,
        metric_rows: Vec<Vec<f64>>,
        order_pairs: &[(usize, usize)],
    ) -> Result<FiniteSpace, SpaceError> {
        let n = labels.len();
        if n == 0 {
            return Err(SpaceError::InvalidConstruction("no points".into()));
        }
        if metric_rows.len() != n || metric_rows.iter().any(|r| r.len() != n) {
            return Err(SpaceError::InvalidConstruction(format!(
                "metric must be a {n}x{n} matrix"
            )));
        }
        let mut metric = Vec::with_capacity(n * n);
        for row in &metric_rows {
            for &d in row {
                if !d.is_finite() {
                    return Err(SpaceError::InvalidConstruction(
                        "metric entries must be finite".into(),
                    ));
                }
                metric.push(d);
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in order_pairs {
            if a >= n || b >= n {
                return Err(SpaceError::InvalidConstruction(format!(
                    "order pair ({a},{b}) out of range"
                )));
            }
            leq[a * n + b] = true;
        }
        Ok(FiniteSpace { labels, metric, leq })
    }

    /// Like [`new`](FiniteSpace::new) but completes the order transitively.
    pub fn with_transitive_closure(
        labels: Vec<String>,
        metric_rows: Vec<Vec<f64>>,
        order_pairs: &[(usize, usize)],
    ) -> Result<FiniteSpace, SpaceError> {
        let mut s = FiniteSpace::new(labels, metric_rows, order_pairs)?;
        let n = s.len();
        for k in 0..n {
            for i in 0..n {
                if s.leq[i * n + k] {
                    for j in 0..n {
                        if s.leq[k * n + j] {
                            s.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(s)
    }

    /// A totally ordered chain `0 <= 1 <= ... <= n-1`.
    pub fn chain(labels: Vec<String>, metric_rows: Vec<Vec<f64>>) -> Result<FiniteSpace, SpaceError> {
        let n = labels.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        FiniteSpace::new(labels, metric_rows, &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn d(&self, a: usize, b: usize) -> f64 {
        self.metric[a * self.len() + b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// Exhaustively checks the metric and order axioms; each violation is a
    /// report entry with a witness, never an error.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        for a in 0..n {
            if self.d(a, a).abs() > METRIC_EPS {
                violations.push(AxiomViolation::NonzeroDiagonal { a, d: self.d(a, a) });
            }
            for b in 0..n {
                let dab = self.d(a, b);
                if dab < -METRIC_EPS {
                    violations.push(AxiomViolation::NegativeDistance { a, b, d: dab });
                }
                if a != b && dab.abs() <= METRIC_EPS {
                    violations.push(AxiomViolation::IndistinctPoints { a, b });
                }
                if a < b && (dab - self.d(b, a)).abs() > METRIC_EPS {
                    violations.push(AxiomViolation::Asymmetry {
                        a,
                        b,
                        d_ab: dab,
                        d_ba: self.d(b, a),
                    });
                }
                for c in 0..n {
                    let lhs = self.d(a, b);
                    let rhs = self.d(a, c) + self.d(c, b);
                    if lhs > rhs + METRIC_EPS {
                        violations.push(AxiomViolation::Triangle {
                            a,
                            b,
                            via: c,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le(a, b) && self.le(b, a) {
                    if a < b {
                        violations.push(AxiomViolation::OrderAntisymmetry { a, b });
                    }
                    continue;
                }
                for c in 0..n {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        violations.push(AxiomViolation::OrderTransitivity { a, b, c });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum AxiomViolation {
    NonzeroDiagonal { a: usize, d: f64 },
    NegativeDistance { a: usize, b: usize, d: f64 },
    /// d(a,b) = 0 for distinct points.
    IndistinctPoints { a: usize, b: usize },
    Asymmetry { a: usize, b: usize, d_ab: f64, d_ba: f64 },
    Triangle { a: usize, b: usize, via: usize, lhs: f64, rhs: f64 },
    OrderAntisymmetry { a: usize, b: usize },
    OrderTransitivity { a: usize, b: usize, c: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NonzeroDiagonal { a, d } => write!(f, "d(#{a},#{a}) = {d} != 0"),
            AxiomViolation::NegativeDistance { a, b, d } => write!(f, "d(#{a},#{b}) = {d} < 0"),
            AxiomViolation::IndistinctPoints { a, b } => {
                write!(f, "d(#{a},#{b}) = 0 but #{a} != #{b}")
            }
            AxiomViolation::Asymmetry { a, b, d_ab, d_ba } => {
                write!(f, "d(#{a},#{b}) = {d_ab} != {d_ba} = d(#{b},#{a})")
            }
            AxiomViolation::Triangle { a, b, via, lhs, rhs } => write!(
                f,
                "triangle inequality fails: d(#{a},#{b}) = {lhs} > {rhs} = d(#{a},#{via}) + d(#{via},#{b})"
            ),
            AxiomViolation::OrderAntisymmetry { a, b } => {
                write!(f, "antisymmetry fails: #{a} <= #{b} and #{b} <= #{a}")
            }
            AxiomViolation::OrderTransitivity { a, b, c } => {
                write!(f, "transitivity fails: #{a} <= #{b} <= #{c} but not #{a} <= #{c}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "all metric and order axioms hold")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Indexed flavor
// ---------------------------------------------------------------------------

/// A countable space `{ value(0), value(1), ... }` with `d(i,j) = |v_i - v_j|`
/// and the order induced by value comparison.
#[derive(Clone)]
pub struct IndexedSpace {
    value: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    budget: u64,
}

impl fmt::Debug for IndexedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexedSpace")
            .field("budget", &self.budget)
            .finish_non_exhaustive()
    }
}

impl IndexedSpace {
    pub fn new(value: impl Fn(u64) -> f64 + Send + Sync + 'static, budget: u64) -> IndexedSpace {
        IndexedSpace {
            value: Arc::new(value),
            budget,
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn value(&self, i: u64) -> Result<f64, SpaceError> {
        if i > self.budget {
            return Err(SpaceError::BudgetExceeded {
                index: i,
                budget: self.budget,
            });
        }
        Ok((self.value)(i))
    }
}

// ---------------------------------------------------------------------------
// Numeric flavor
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum NumericOrder {
    /// The usual order on the reals.
    Usual,
    /// A user-declared relation; stored and queried through its reflexive
    /// closure.
    Predicate(OrderPredicate),
}

/// A real interval with the usual metric.
#[derive(Debug, Clone)]
pub struct NumericSpace {
    pub lo: f64,
    pub hi: f64,
    pub incl_lo: bool,
    pub incl_hi: bool,
    order: NumericOrder,
    asserted: BTreeSet<AssertedProperty>,
}

impl NumericSpace {
    pub fn new(
        lo: f64,
        hi: f64,
        incl_lo: bool,
        incl_hi: bool,
        order: NumericOrder,
        asserted: BTreeSet<AssertedProperty>,
    ) -> Result<NumericSpace, SpaceError> {
        if !(lo < hi) {
            return Err(SpaceError::InvalidConstruction(format!(
                "interval bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if lo.is_nan() || hi.is_nan() {
            return Err(SpaceError::InvalidConstruction("NaN interval bound".into()));
        }
        if (lo.is_infinite() && incl_lo) || (hi.is_infinite() && incl_hi) {
            return Err(SpaceError::InvalidConstruction(
                "an infinite endpoint cannot be included".into(),
            ));
        }
        Ok(NumericSpace {
            lo,
            hi,
            incl_lo,
            incl_hi,
            order,
            asserted,
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let lo_ok = if self.incl_lo { x >= self.lo } else { x > self.lo };
        let hi_ok = if self.incl_hi { x <= self.hi } else { x < self.hi };
        lo_ok && hi_ok
    }

    pub fn order(&self) -> &NumericOrder {
        &self.order
    }

    /// Evenly spread sample points, including closed endpoints exactly.
    /// Infinite ends are clamped to a finite working window.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        let lo = if self.lo.is_finite() { self.lo } else { -1e3 };
        let hi = if self.hi.is_finite() { self.hi } else { 1e3 };
        let mut out = Vec::with_capacity(n + 2);
        if self.incl_lo && self.lo.is_finite() {
            out.push(self.lo);
        }
        for k in 0..n {
            let x = lo + (k as f64 + 0.5) * (hi - lo) / n as f64;
            if self.contains(x) {
                out.push(x);
            }
        }
        if self.incl_hi && self.hi.is_finite() {
            out.push(self.hi);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Uniform queries
// ---------------------------------------------------------------------------

/// An ordered metric space in one of the three flavors.
#[derive(Debug, Clone)]
pub enum Space {
    Finite(FiniteSpace),
    Indexed(IndexedSpace),
    Numeric(NumericSpace),
}

impl Space {
    fn invalid(&self, p: PointRef) -> SpaceError {
        SpaceError::InvalidPoint {
            point: p.to_string(),
        }
    }

    /// Checks that the handle belongs to this space, returning its numeric
    /// embedding where one exists.
    fn resolve(&self, p: PointRef) -> Result<Resolved, SpaceError> {
        match (self, p) {
            (Space::Finite(s), PointRef::Finite(i)) => {
                if i < s.len() {
                    Ok(Resolved::Finite(i))
                } else {
                    Err(self.invalid(p))
                }
            }
            (Space::Indexed(s), PointRef::Indexed(i)) => {
                let v = s.value(i)?;
                Ok(Resolved::Value(v))
            }
            (Space::Numeric(s), PointRef::Numeric(x)) => {
                if s.contains(x) {
                    Ok(Resolved::Value(x))
                } else {
                    Err(self.invalid(p))
                }
            }
            _ => Err(self.invalid(p)),
        }
    }

    pub fn contains(&self, p: PointRef) -> bool {
        self.resolve(p).is_ok()
    }

    /// The distance `d(a, b)`.
    pub fn metric(&self, a: PointRef, b: PointRef) -> Result<f64, SpaceError> {
        match (self.resolve(a)?, self.resolve(b)?) {
            (Resolved::Finite(i), Resolved::Finite(j)) => {
                if let Space::Finite(s) = self {
                    Ok(s.d(i, j))
                } else {
                    unreachable!()
                }
            }
            (Resolved::Value(x), Resolved::Value(y)) => Ok((x - y).abs()),
            _ => Err(self.invalid(b)),
        }
    }

    /// Whether `a` precedes `b` in the space's order (reflexively closed).
    pub fn leq(&self, a: PointRef, b: PointRef) -> Result<bool, SpaceError> {
        match (self, self.resolve(a)?, self.resolve(b)?) {
            (Space::Finite(s), Resolved::Finite(i), Resolved::Finite(j)) => Ok(s.le(i, j)),
            (Space::Indexed(_), Resolved::Value(x), Resolved::Value(y)) => Ok(x <= y),
            (Space::Numeric(s), Resolved::Value(x), Resolved::Value(y)) => {
                if x == y {
                    return Ok(true);
                }
                match &s.order {
                    NumericOrder::Usual => Ok(x <= y),
                    NumericOrder::Predicate(p) => {
                        p.holds(x, y).map_err(|_| self.invalid(a))
                    }
                }
            }
            _ => Err(self.invalid(b)),
        }
    }

    /// `a` and `b` are comparable: `a <= b` or `b <= a`.
    pub fn comparable(&self, a: PointRef, b: PointRef) -> Result<bool, SpaceError> {
        Ok(self.leq(a, b)? || self.leq(b, a)?)
    }

    /// Human-readable name of a point within this space.
    pub fn describe(&self, p: PointRef) -> String {
        match (self, p) {
            (Space::Finite(s), PointRef::Finite(i)) if i < s.len() => s.label(i).to_string(),
            (Space::Indexed(s), PointRef::Indexed(i)) => match s.value(i) {
                Ok(v) => format!("x[{i}]={v}"),
                Err(_) => format!("x[{i}]"),
            },
            _ => p.to_string(),
        }
    }

    /// All points of an enumerable space (finite, or indexed up to budget).
    pub fn enumerable_points(&self) -> Option<Vec<PointRef>> {
        match self {
            Space::Finite(s) => Some((0..s.len()).map(PointRef::Finite).collect()),
            Space::Indexed(s) => Some((0..=s.budget()).map(PointRef::Indexed).collect()),
            Space::Numeric(_) => None,
        }
    }

    pub fn is_enumerable(&self) -> bool {
        !matches!(self, Space::Numeric(_))
    }

    pub fn asserted(&self, prop: AssertedProperty) -> bool {
        match self {
            Space::Numeric(s) => s.asserted.contains(&prop),
            _ => false,
        }
    }

    /// Structural / axiomatic validation. Only the finite flavor is checked
    /// exhaustively; the others validate construction invariants.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Space::Finite(s) => s.validate(),
            Space::Indexed(_) | Space::Numeric(_) => ValidationReport { violations: vec![] },
        }
    }
}

enum Resolved {
    Finite(usize),
    Value(f64),
}
