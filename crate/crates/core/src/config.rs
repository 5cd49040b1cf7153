//! The line-oriented problem config format.
//!
//! A config is a sequence of `name { key = value ... }` blocks: `space`,
//! `mappings`, `contraction` and `run`. Keys are typed per block, unknown
//! keys are rejected, `#` starts a comment. Parsing is deterministic and
//! canonical re-serialization round-trips to an identical AST.
//!
//! ```text
//! space {
//!   flavor = numeric
//!   interval = (-1, 1]
//!   order_pred = (x <= y and y != 1) or (x == 1 and y == 1)
//!   assert = complete s-increasing
//! }
//! mappings {
//!   T = x / 3
//!   S = x
//!   S_inverse = x
//! }
//! contraction {
//!   id = banach
//!   k = 0.4
//! }
//! run {
//!   variant = continuity-ii
//!   x0 = 0.9
//! }
//! ```

use crate::certifier::{SubspaceSpec, TheoremVariant};
use crate::contraction::{
    build_contraction, CatalogError, ComparisonFn, Condition, HalfComparisonFn,
    ImplicitContraction,
};
use crate::expr::{Expr, OrderPredicate, ParseError};
use crate::solver::{Direction, Mapping, MappingPair};
use crate::spaces::{
    AssertedProperty, FiniteSpace, IndexedSpace, NumericOrder, NumericSpace, PointRef, Space,
    SpaceError,
};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown key `{key}` in block `{block}`")]
    UnknownKey {
        line: usize,
        block: String,
        key: String,
    },
    #[error("line {line}: unknown block `{name}`")]
    UnknownBlock { line: usize, name: String },
    #[error("line {line}: `{key}`: {source}")]
    Expr {
        line: usize,
        key: String,
        source: ParseError,
    },
    #[error("line {line}: `{key}`: {msg}")]
    Value {
        line: usize,
        key: String,
        msg: String,
    },
    #[error("missing {what}")]
    Missing { what: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    Pairs(Vec<(usize, usize)>),
    Total,
    Discrete,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceConfig {
    Finite {
        points: Vec<String>,
        metric: Vec<Vec<f64>>,
        order: OrderSpec,
        transitive_closure: bool,
    },
    Indexed {
        value: Expr,
        overrides: Vec<(u64, f64)>,
        budget: u64,
    },
    Numeric {
        lo: f64,
        hi: f64,
        incl_lo: bool,
        incl_hi: bool,
        order_pred: Option<OrderPredicate>,
        asserted: Vec<AssertedProperty>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum MappingSpec {
    Table(Vec<usize>),
    Formula(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingsConfig {
    pub t: MappingSpec,
    pub s: MappingSpec,
    pub s_inverse: Option<MappingSpec>,
    pub s_monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionConfig {
    pub id: Option<String>,
    pub params: Vec<(String, f64)>,
    pub f: Option<Expr>,
    pub phi: Option<Expr>,
    pub rho: Option<Expr>,
    pub claims: Vec<Condition>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ESpec {
    Whole,
    TImage,
    SImage,
    Points(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub variant: Option<TheoremVariant>,
    pub direction: Direction,
    pub x0: Option<String>,
    pub budget: usize,
    pub eps: f64,
    pub e: ESpec,
    pub index_cap: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            variant: None,
            direction: Direction::Either,
            x0: None,
            budget: 10_000,
            eps: 1e-9,
            e: ESpec::SImage,
            index_cap: 50,
            samples: 41,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProblemConfig {
    pub space: Option<SpaceConfig>,
    pub mappings: Option<MappingsConfig>,
    pub contraction: Option<ContractionConfig>,
    pub run: RunConfig,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct RawBlock {
    name: String,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_blocks(text: &str) -> Result<Vec<RawBlock>, ConfigError> {
    let mut blocks = Vec::new();
    let mut current: Option<RawBlock> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_suffix('{') {
            if current.is_some() {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    msg: "nested block".into(),
                });
            }
            current = Some(RawBlock {
                name: name.trim().to_string(),
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        if line == "}" {
            match current.take() {
                Some(b) => blocks.push(b),
                None => {
                    return Err(ConfigError::Syntax {
                        line: line_no,
                        msg: "unmatched `}`".into(),
                    })
                }
            }
            continue;
        }
        let block = current.as_mut().ok_or(ConfigError::Syntax {
            line: line_no,
            msg: "expected a block header like `space {`".into(),
        })?;
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax {
            line: line_no,
            msg: "expected `key = value`".into(),
        })?;
        block
            .entries
            .push((key.trim().to_string(), value.trim().to_string(), line_no));
    }
    if let Some(b) = current {
        return Err(ConfigError::Syntax {
            line: b.line,
            msg: format!("block `{}` is never closed", b.name),
        });
    }
    Ok(blocks)
}

fn value_err(line: usize, key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Value {
        line,
        key: key.into(),
        msg: msg.into(),
    }
}

fn parse_f64(line: usize, key: &str, s: &str) -> Result<f64, ConfigError> {
    match s {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s
            .parse()
            .map_err(|_| value_err(line, key, format!("bad number `{s}`"))),
    }
}

fn parse_usize(line: usize, key: &str, s: &str) -> Result<usize, ConfigError> {
    s.parse()
        .map_err(|_| value_err(line, key, format!("bad integer `{s}`")))
}

fn parse_expr(line: usize, key: &str, src: &str, vars: &[&str]) -> Result<Expr, ConfigError> {
    Expr::parse(src, vars).map_err(|source| ConfigError::Expr {
        line,
        key: key.into(),
        source,
    })
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<ProblemConfig, ConfigError> {
        let blocks = split_blocks(text)?;
        let mut cfg = ProblemConfig::default();
        let mut raw_mappings: Option<RawBlock> = None;
        for block in blocks {
            match block.name.as_str() {
                "space" => cfg.space = Some(parse_space_block(&block)?),
                "mappings" => raw_mappings = Some(block),
                "contraction" => cfg.contraction = Some(parse_contraction_block(&block)?),
                "run" => cfg.run = parse_run_block(&block)?,
                other => {
                    return Err(ConfigError::UnknownBlock {
                        line: block.line,
                        name: other.into(),
                    })
                }
            }
        }
        // mapping expressions depend on the space flavor
        if let Some(block) = raw_mappings {
            cfg.mappings = Some(parse_mappings_block(&block, cfg.space.as_ref())?);
        }
        Ok(cfg)
    }

    pub fn build_space(&self) -> Result<Space, ConfigError> {
        let sc = self.space.as_ref().ok_or(ConfigError::Missing {
            what: "`space` block".into(),
        })?;
        Ok(match sc {
            SpaceConfig::Finite {
                points,
                metric,
                order,
                transitive_closure,
            } => {
                let n = points.len();
                let pairs: Vec<(usize, usize)> = match order {
                    OrderSpec::Pairs(p) => p.clone(),
                    OrderSpec::Total => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect(),
                    OrderSpec::Discrete => Vec::new(),
                };
                let fs = if *transitive_closure {
                    FiniteSpace::with_transitive_closure(points.clone(), metric.clone(), &pairs)?
                } else {
                    FiniteSpace::new(points.clone(), metric.clone(), &pairs)?
                };
                Space::Finite(fs)
            }
            SpaceConfig::Indexed {
                value,
                overrides,
                budget,
            } => {
                let expr = value.clone();
                let table: Vec<(u64, f64)> = overrides.clone();
                let f = move |i: u64| {
                    if let Some((_, v)) = table.iter().find(|(j, _)| *j == i) {
                        return *v;
                    }
                    expr.eval_with(&[("i", i as f64)]).unwrap_or(f64::NAN)
                };
                Space::Indexed(IndexedSpace::new(f, *budget))
            }
            SpaceConfig::Numeric {
                lo,
                hi,
                incl_lo,
                incl_hi,
                order_pred,
                asserted,
            } => {
                let order = match order_pred {
                    Some(p) => NumericOrder::Predicate(p.clone()),
                    None => NumericOrder::Usual,
                };
                let flags: BTreeSet<AssertedProperty> = asserted.iter().copied().collect();
                Space::Numeric(NumericSpace::new(
                    *lo, *hi, *incl_lo, *incl_hi, order, flags,
                )?)
            }
        })
    }

    pub fn build_pair(&self) -> Result<MappingPair, ConfigError> {
        let mc = self.mappings.as_ref().ok_or(ConfigError::Missing {
            what: "`mappings` block".into(),
        })?;
        let to_mapping = |spec: &MappingSpec| -> Mapping {
            match (spec, self.space.as_ref()) {
                (MappingSpec::Table(t), _) => Mapping::Table(t.clone()),
                (MappingSpec::Formula(e), Some(SpaceConfig::Indexed { .. })) => {
                    Mapping::IndexExpr(e.clone())
                }
                (MappingSpec::Formula(e), _) => Mapping::NumericExpr(e.clone()),
            }
        };
        let mut pair = MappingPair::new(to_mapping(&mc.t), to_mapping(&mc.s));
        if let Some(inv) = &mc.s_inverse {
            pair = pair.with_s_inverse(to_mapping(inv));
        }
        if mc.s_monotone {
            pair = pair.with_s_monotone();
        }
        Ok(pair)
    }

    /// Builds the contraction from the catalog id or the custom `F`/`phi`
    /// expressions. A CLI selector takes precedence over the config block.
    pub fn build_contraction(
        &self,
        selector: Option<&ContractionSelector>,
    ) -> Result<ImplicitContraction, ConfigError> {
        if let Some(sel) = selector {
            return Ok(build_contraction(&sel.id, &sel.params)?);
        }
        let cc = self.contraction.as_ref().ok_or(ConfigError::Missing {
            what: "`contraction` block (or --contraction flag)".into(),
        })?;
        if let Some(id) = &cc.id {
            return Ok(build_contraction(id, &cc.params)?);
        }
        let f = cc.f.as_ref().ok_or(ConfigError::Missing {
            what: "`id` or `F` in the contraction block".into(),
        })?;
        let phi = cc.phi.as_ref().ok_or(ConfigError::Missing {
            what: "companion `phi` for the custom F".into(),
        })?;
        let mut ic = ImplicitContraction::from_expr(
            "custom",
            f.clone(),
            ComparisonFn::from_expr(phi.clone()),
        )
        .with_claims(&cc.claims);
        if let Some(rho) = &cc.rho {
            ic = ic.with_rho(HalfComparisonFn::new(ComparisonFn::from_expr(rho.clone())));
        }
        Ok(ic)
    }

    /// Resolves the configured start point against the space flavor:
    /// a label or index for finite spaces, an index for indexed ones,
    /// a real number for numeric ones.
    pub fn resolve_x0(&self, space: &Space) -> Result<Option<PointRef>, ConfigError> {
        let tok = match &self.run.x0 {
            Some(t) => t,
            None => return Ok(None),
        };
        let p = match space {
            Space::Finite(fs) => {
                if let Some(i) = fs.label_index(tok) {
                    PointRef::Finite(i)
                } else if let Ok(i) = tok.trim_start_matches('#').parse::<usize>() {
                    PointRef::Finite(i)
                } else {
                    return Err(value_err(0, "x0", format!("unknown point `{tok}`")));
                }
            }
            Space::Indexed(_) => PointRef::Indexed(
                tok.parse::<u64>()
                    .map_err(|_| value_err(0, "x0", format!("bad index `{tok}`")))?,
            ),
            Space::Numeric(_) => PointRef::Numeric(
                tok.parse::<f64>()
                    .map_err(|_| value_err(0, "x0", format!("bad number `{tok}`")))?,
            ),
        };
        Ok(Some(p))
    }

    pub fn subspace(&self, space: &Space) -> Result<SubspaceSpec, ConfigError> {
        Ok(match &self.run.e {
            ESpec::Whole => SubspaceSpec::Whole,
            ESpec::TImage => SubspaceSpec::TImage,
            ESpec::SImage => SubspaceSpec::SImage,
            ESpec::Points(toks) => {
                let mut pts = Vec::new();
                for tok in toks {
                    let p = match space {
                        Space::Finite(fs) => match fs.label_index(tok) {
                            Some(i) => PointRef::Finite(i),
                            None => PointRef::Finite(tok.parse().map_err(|_| {
                                value_err(0, "E", format!("bad point `{tok}`"))
                            })?),
                        },
                        Space::Indexed(_) => PointRef::Indexed(
                            tok.parse()
                                .map_err(|_| value_err(0, "E", format!("bad index `{tok}`")))?,
                        ),
                        Space::Numeric(_) => PointRef::Numeric(
                            tok.parse()
                                .map_err(|_| value_err(0, "E", format!("bad number `{tok}`")))?,
                        ),
                    };
                    pts.push(p);
                }
                SubspaceSpec::Explicit(pts)
            }
        })
    }
}

/// A `--contraction id:k=0.3,L=1` style selector.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionSelector {
    pub id: String,
    pub params: Vec<(String, f64)>,
}

impl std::str::FromStr for ContractionSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (id, rest) = match s.split_once(':') {
            Some((id, rest)) => (id, Some(rest)),
            None => (s, None),
        };
        let mut params = Vec::new();
        if let Some(rest) = rest {
            for item in rest.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| format!("bad parameter `{item}` (expected name=value)"))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad value in `{item}`"))?;
                params.push((k.trim().to_string(), v));
            }
        }
        Ok(ContractionSelector {
            id: id.trim().to_string(),
            params,
        })
    }
}

fn parse_space_block(block: &RawBlock) -> Result<SpaceConfig, ConfigError> {
    let mut flavor: Option<(String, usize)> = None;
    for (k, v, l) in &block.entries {
        if k == "flavor" {
            flavor = Some((v.clone(), *l));
        }
    }
    let (flavor, flavor_line) = flavor.ok_or(ConfigError::Missing {
        what: "`flavor` in the space block".into(),
    })?;
    match flavor.as_str() {
        "finite" => {
            let mut points = Vec::new();
            let mut metric = Vec::new();
            let mut order = OrderSpec::Discrete;
            let mut closure = false;
            for (k, v, l) in &block.entries {
                match k.as_str() {
                    "flavor" => {}
                    "points" => points = v.split_whitespace().map(str::to_string).collect(),
                    "metric" => {
                        metric = v
                            .split(';')
                            .map(|row| {
                                row.split_whitespace()
                                    .map(|tok| parse_f64(*l, "metric", tok))
                                    .collect::<Result<Vec<f64>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                    }
                    "order" => {
                        order = match v.as_str() {
                            "total" => OrderSpec::Total,
                            "discrete" => OrderSpec::Discrete,
                            _ => {
                                let mut pairs = Vec::new();
                                for tok in v.split_whitespace() {
                                    let (a, b) = tok.split_once("<=").ok_or(value_err(
                                        *l,
                                        "order",
                                        format!("bad pair `{tok}` (expected i<=j)"),
                                    ))?;
                                    pairs.push((
                                        parse_usize(*l, "order", a)?,
                                        parse_usize(*l, "order", b)?,
                                    ));
                                }
                                OrderSpec::Pairs(pairs)
                            }
                        };
                    }
                    "closure" => closure = v == "transitive",
                    other => {
                        return Err(ConfigError::UnknownKey {
                            line: *l,
                            block: "space".into(),
                            key: other.into(),
                        })
                    }
                }
            }
            Ok(SpaceConfig::Finite {
                points,
                metric,
                order,
                transitive_closure: closure,
            })
        }
        "indexed" => {
            let mut value = None;
            let mut overrides = Vec::new();
            let mut budget = 64u64;
            for (k, v, l) in &block.entries {
                match k.as_str() {
                    "flavor" => {}
                    "value" => value = Some(parse_expr(*l, "value", v, &["i"])?),
                    "override" => {
                        let (i, x) = v.split_once(':').ok_or(value_err(
                            *l,
                            "override",
                            "expected `index : value`",
                        ))?;
                        let i: u64 = i.trim().parse().map_err(|_| {
                            value_err(*l, "override", format!("bad index `{}`", i.trim()))
                        })?;
                        overrides.push((i, parse_f64(*l, "override", x.trim())?));
                    }
                    "budget" => budget = parse_usize(*l, "budget", v)? as u64,
                    other => {
                        return Err(ConfigError::UnknownKey {
                            line: *l,
                            block: "space".into(),
                            key: other.into(),
                        })
                    }
                }
            }
            let value = value.ok_or(ConfigError::Missing {
                what: "`value` expression for the indexed space".into(),
            })?;
            Ok(SpaceConfig::Indexed {
                value,
                overrides,
                budget,
            })
        }
        "numeric" => {
            let mut interval = None;
            let mut order_pred = None;
            let mut asserted = Vec::new();
            for (k, v, l) in &block.entries {
                match k.as_str() {
                    "flavor" => {}
                    "interval" => {
                        let s = v.trim();
                        let incl_lo = s.starts_with('[');
                        let incl_hi = s.ends_with(']');
                        if !(s.starts_with('[') || s.starts_with('('))
                            || !(s.ends_with(']') || s.ends_with(')'))
                        {
                            return Err(value_err(
                                *l,
                                "interval",
                                "expected `(lo, hi]`-style bounds",
                            ));
                        }
                        let inner = &s[1..s.len() - 1];
                        let (lo, hi) = inner.split_once(',').ok_or(value_err(
                            *l,
                            "interval",
                            "expected two comma-separated bounds",
                        ))?;
                        interval = Some((
                            parse_f64(*l, "interval", lo.trim())?,
                            parse_f64(*l, "interval", hi.trim())?,
                            incl_lo,
                            incl_hi,
                        ));
                    }
                    "order_pred" => {
                        order_pred =
                            Some(OrderPredicate::parse(v).map_err(|source| ConfigError::Expr {
                                line: *l,
                                key: "order_pred".into(),
                                source,
                            })?)
                    }
                    "assert" => {
                        for tok in v.split_whitespace() {
                            asserted.push(
                                tok.parse::<AssertedProperty>()
                                    .map_err(|msg| value_err(*l, "assert", msg))?,
                            );
                        }
                    }
                    other => {
                        return Err(ConfigError::UnknownKey {
                            line: *l,
                            block: "space".into(),
                            key: other.into(),
                        })
                    }
                }
            }
            let (lo, hi, incl_lo, incl_hi) = interval.ok_or(ConfigError::Missing {
                what: "`interval` for the numeric space".into(),
            })?;
            Ok(SpaceConfig::Numeric {
                lo,
                hi,
                incl_lo,
                incl_hi,
                order_pred,
                asserted,
            })
        }
        other => Err(value_err(
            flavor_line,
            "flavor",
            format!("unknown flavor `{other}` (finite, indexed or numeric)"),
        )),
    }
}

fn parse_mapping_spec(
    line: usize,
    key: &str,
    v: &str,
    space: Option<&SpaceConfig>,
) -> Result<MappingSpec, ConfigError> {
    match space {
        Some(SpaceConfig::Finite { .. }) => {
            let table = v
                .split_whitespace()
                .map(|tok| parse_usize(line, key, tok))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MappingSpec::Table(table))
        }
        Some(SpaceConfig::Indexed { .. }) => {
            Ok(MappingSpec::Formula(parse_expr(line, key, v, &["i"])?))
        }
        Some(SpaceConfig::Numeric { .. }) | None => {
            Ok(MappingSpec::Formula(parse_expr(line, key, v, &["x"])?))
        }
    }
}

fn parse_mappings_block(
    block: &RawBlock,
    space: Option<&SpaceConfig>,
) -> Result<MappingsConfig, ConfigError> {
    let mut t = None;
    let mut s = None;
    let mut s_inverse = None;
    let mut s_monotone = false;
    for (k, v, l) in &block.entries {
        match k.as_str() {
            "T" => t = Some(parse_mapping_spec(*l, "T", v, space)?),
            "S" => s = Some(parse_mapping_spec(*l, "S", v, space)?),
            "S_inverse" => s_inverse = Some(parse_mapping_spec(*l, "S_inverse", v, space)?),
            "S_monotone" => s_monotone = v == "true",
            other => {
                return Err(ConfigError::UnknownKey {
                    line: *l,
                    block: "mappings".into(),
                    key: other.into(),
                })
            }
        }
    }
    Ok(MappingsConfig {
        t: t.ok_or(ConfigError::Missing {
            what: "`T` in the mappings block".into(),
        })?,
        s: s.ok_or(ConfigError::Missing {
            what: "`S` in the mappings block".into(),
        })?,
        s_inverse,
        s_monotone,
    })
}

const T6: [&str; 6] = ["t1", "t2", "t3", "t4", "t5", "t6"];

fn parse_contraction_block(block: &RawBlock) -> Result<ContractionConfig, ConfigError> {
    let mut cc = ContractionConfig {
        id: None,
        params: Vec::new(),
        f: None,
        phi: None,
        rho: None,
        claims: Vec::new(),
    };
    for (k, v, l) in &block.entries {
        match k.as_str() {
            "id" => cc.id = Some(v.clone()),
            "F" => cc.f = Some(parse_expr(*l, "F", v, &T6)?),
            "phi" => cc.phi = Some(parse_expr(*l, "phi", v, &["t"])?),
            "rho" => cc.rho = Some(parse_expr(*l, "rho", v, &["t"])?),
            "claims" => {
                for tok in v.split_whitespace() {
                    cc.claims.push(
                        tok.parse::<Condition>()
                            .map_err(|msg| value_err(*l, "claims", msg))?,
                    );
                }
            }
            // any other key is a named parameter like `k = 0.3`
            name => cc.params.push((name.to_string(), parse_f64(*l, name, v)?)),
        }
    }
    Ok(cc)
}

fn parse_run_block(block: &RawBlock) -> Result<RunConfig, ConfigError> {
    let mut run = RunConfig::default();
    for (k, v, l) in &block.entries {
        match k.as_str() {
            "variant" => {
                run.variant = Some(
                    v.parse::<TheoremVariant>()
                        .map_err(|msg| value_err(*l, "variant", msg))?,
                )
            }
            "direction" => {
                run.direction = v
                    .parse::<Direction>()
                    .map_err(|msg| value_err(*l, "direction", msg))?
            }
            "x0" => run.x0 = Some(v.clone()),
            "budget" => run.budget = parse_usize(*l, "budget", v)?,
            "eps" => run.eps = parse_f64(*l, "eps", v)?,
            "E" => {
                run.e = match v.as_str() {
                    "whole" => ESpec::Whole,
                    "t-image" => ESpec::TImage,
                    "s-image" => ESpec::SImage,
                    other => {
                        if let Some(rest) = other.strip_prefix("points") {
                            ESpec::Points(rest.split_whitespace().map(str::to_string).collect())
                        } else {
                            return Err(value_err(*l, "E", format!("unknown subspace `{other}`")));
                        }
                    }
                }
            }
            "index_cap" => run.index_cap = parse_usize(*l, "index_cap", v)? as u64,
            "samples" => run.samples = parse_usize(*l, "samples", v)?,
            other => {
                return Err(ConfigError::UnknownKey {
                    line: *l,
                    block: "run".into(),
                    key: other.into(),
                })
            }
        }
    }
    Ok(run)
}

// ---------------------------------------------------------------------------
// Canonical re-serialization
// ---------------------------------------------------------------------------

impl fmt::Display for ProblemConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(sc) = &self.space {
            writeln!(f, "space {{")?;
            match sc {
                SpaceConfig::Finite {
                    points,
                    metric,
                    order,
                    transitive_closure,
                } => {
                    writeln!(f, "  flavor = finite")?;
                    writeln!(f, "  points = {}", points.join(" "))?;
                    let rows: Vec<String> = metric
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect();
                    writeln!(f, "  metric = {}", rows.join(" ; "))?;
                    match order {
                        OrderSpec::Total => writeln!(f, "  order = total")?,
                        OrderSpec::Discrete => writeln!(f, "  order = discrete")?,
                        OrderSpec::Pairs(pairs) => {
                            let toks: Vec<String> =
                                pairs.iter().map(|(a, b)| format!("{a}<={b}")).collect();
                            writeln!(f, "  order = {}", toks.join(" "))?;
                        }
                    }
                    if *transitive_closure {
                        writeln!(f, "  closure = transitive")?;
                    }
                }
                SpaceConfig::Indexed {
                    value,
                    overrides,
                    budget,
                } => {
                    writeln!(f, "  flavor = indexed")?;
                    writeln!(f, "  value = {value}")?;
                    for (i, x) in overrides {
                        writeln!(f, "  override = {i} : {x}")?;
                    }
                    writeln!(f, "  budget = {budget}")?;
                }
                SpaceConfig::Numeric {
                    lo,
                    hi,
                    incl_lo,
                    incl_hi,
                    order_pred,
                    asserted,
                } => {
                    writeln!(f, "  flavor = numeric")?;
                    let lo_s = if lo.is_finite() {
                        lo.to_string()
                    } else {
                        "-inf".into()
                    };
                    let hi_s = if hi.is_finite() {
                        hi.to_string()
                    } else {
                        "inf".into()
                    };
                    writeln!(
                        f,
                        "  interval = {}{}, {}{}",
                        if *incl_lo { "[" } else { "(" },
                        lo_s,
                        hi_s,
                        if *incl_hi { "]" } else { ")" },
                    )?;
                    if let Some(p) = order_pred {
                        writeln!(f, "  order_pred = {p}")?;
                    }
                    if !asserted.is_empty() {
                        let toks: Vec<String> = asserted.iter().map(|a| a.to_string()).collect();
                        writeln!(f, "  assert = {}", toks.join(" "))?;
                    }
                }
            }
            writeln!(f, "}}")?;
        }
        if let Some(mc) = &self.mappings {
            writeln!(f, "mappings {{")?;
            let show = |spec: &MappingSpec| match spec {
                MappingSpec::Table(t) => t
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                MappingSpec::Formula(e) => e.to_string(),
            };
            writeln!(f, "  T = {}", show(&mc.t))?;
            writeln!(f, "  S = {}", show(&mc.s))?;
            if let Some(inv) = &mc.s_inverse {
                writeln!(f, "  S_inverse = {}", show(inv))?;
            }
            if mc.s_monotone {
                writeln!(f, "  S_monotone = true")?;
            }
            writeln!(f, "}}")?;
        }
        if let Some(cc) = &self.contraction {
            writeln!(f, "contraction {{")?;
            if let Some(id) = &cc.id {
                writeln!(f, "  id = {id}")?;
            }
            if let Some(e) = &cc.f {
                writeln!(f, "  F = {e}")?;
            }
            if let Some(e) = &cc.phi {
                writeln!(f, "  phi = {e}")?;
            }
            if let Some(e) = &cc.rho {
                writeln!(f, "  rho = {e}")?;
            }
            if !cc.claims.is_empty() {
                let toks: Vec<String> = cc.claims.iter().map(|c| c.to_string()).collect();
                writeln!(f, "  claims = {}", toks.join(" "))?;
            }
            for (name, v) in &cc.params {
                writeln!(f, "  {name} = {v}")?;
            }
            writeln!(f, "}}")?;
        }
        writeln!(f, "run {{")?;
        if let Some(v) = &self.run.variant {
            writeln!(f, "  variant = {v}")?;
        }
        writeln!(f, "  direction = {}", self.run.direction)?;
        if let Some(x0) = &self.run.x0 {
            writeln!(f, "  x0 = {x0}")?;
        }
        writeln!(f, "  budget = {}", self.run.budget)?;
        writeln!(f, "  eps = {}", self.run.eps)?;
        match &self.run.e {
            ESpec::Whole => writeln!(f, "  E = whole")?,
            ESpec::TImage => writeln!(f, "  E = t-image")?,
            ESpec::SImage => writeln!(f, "  E = s-image")?,
            ESpec::Points(toks) => writeln!(f, "  E = points {}", toks.join(" "))?,
        }
        writeln!(f, "  index_cap = {}", self.run.index_cap)?;
        writeln!(f, "  samples = {}", self.run.samples)?;
        writeln!(f, "}}")
    }
}
