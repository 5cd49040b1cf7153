//! Acceptance suite: reproduces the library's reference scenarios end to end
//! and checks the cross-cutting property suites. Each criterion prints one
//! pass line (run with `--nocapture` to see them).

use coincide::certifier::{
    certify, check_completeness, coincidence_points_bruteforce, CertifyOptions, ContinuityMode,
    EntryVerdict, Stage, SubspaceSpec, TheoremVariant,
};
use coincide::contraction::{
    build_contraction, check_comparison, check_condition, check_condition_f2, check_half_comparison,
    evaluate_contraction, ComparisonFn, ConditionVerdict, GridSpec, HalfComparisonFn,
    PairSampler, EPS_TOL,
};
use coincide::expr::Expr;
use coincide::solver::{
    check_gap_contraction, check_gap_envelope, extract_fixed_point, jungck_sequence, Direction,
    Mapping, MappingPair, SolveOptions, SolverError,
};
use coincide::spaces::{
    AssertedProperty, FiniteSpace, IndexedSpace, NumericOrder, NumericSpace, PointRef, Space,
};
use coincide::expr::OrderPredicate;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::Instant;

// ---------------------------------------------------------------------------
// Shared builders
// ---------------------------------------------------------------------------

fn shrink_interval_space(assertions: &[AssertedProperty]) -> Space {
    let pred = OrderPredicate::parse("(x <= y and y != 1) or (x == 1 and y == 1)").unwrap();
    Space::Numeric(
        NumericSpace::new(
            -1.0,
            1.0,
            false,
            true,
            NumericOrder::Predicate(pred),
            assertions.iter().copied().collect::<BTreeSet<_>>(),
        )
        .unwrap(),
    )
}

fn shrink_interval_pair() -> MappingPair {
    MappingPair::new(
        Mapping::NumericExpr(Expr::parse("x / 3", &["x"]).unwrap()),
        Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()),
    )
    .with_s_inverse(Mapping::NumericExpr(Expr::parse("x", &["x"]).unwrap()))
}

fn shift_space(budget: u64) -> Space {
    Space::Indexed(IndexedSpace::new(
        |i| {
            if i == 0 {
                0.0
            } else {
                -(0.25f64.powi(i as i32))
            }
        },
        budget,
    ))
}

fn shift_pair() -> MappingPair {
    MappingPair::new(
        Mapping::IndexExpr(Expr::parse("i + 2", &["i"]).unwrap()),
        Mapping::IndexExpr(Expr::parse("i + 1", &["i"]).unwrap()),
    )
}

fn parabola_space() -> Space {
    Space::Numeric(
        NumericSpace::new(
            0.0,
            f64::INFINITY,
            true,
            false,
            NumericOrder::Usual,
            BTreeSet::new(),
        )
        .unwrap(),
    )
}

fn parabola_pair() -> MappingPair {
    MappingPair::new(
        Mapping::NumericExpr(Expr::parse("x^2 + 1", &["x"]).unwrap()),
        Mapping::NumericExpr(Expr::parse("2*x/3", &["x"]).unwrap()),
    )
    .with_s_inverse(Mapping::NumericExpr(Expr::parse("3*x/2", &["x"]).unwrap()))
}

fn numeric_of(p: PointRef) -> f64 {
    match p {
        PointRef::Numeric(x) => x,
        other => panic!("expected a numeric point, got {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: the shrinking map on (-1, 1]
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_shrink_interval_reproduction() {
    let t0 = Instant::now();
    let space = shrink_interval_space(&[]);
    let pair = shrink_interval_pair();

    // solve from 0.9: |x_n| <= 1e-9 within 25 iterations, gaps 0.6 * 3^-n
    let trace = jungck_sequence(
        &space,
        &pair,
        PointRef::Numeric(0.9),
        Direction::Either,
        &SolveOptions::default(),
    )
    .unwrap();
    assert!(trace.steps.len() <= 25, "took {} steps", trace.steps.len());
    let last_x = numeric_of(trace.steps.last().unwrap().x);
    assert!(last_x.abs() <= 1e-9, "final x = {last_x}");
    for (n, gap) in trace.gaps().iter().enumerate() {
        let oracle = 0.6 * 3f64.powi(-(n as i32 + 1));
        assert!(
            (gap - oracle).abs() <= 1e-12 * oracle.max(1.0),
            "gap {n} = {gap}, oracle {oracle}"
        );
    }

    // extraction lands on 0 with zero residuals (within 1e-9)
    let fp = extract_fixed_point(&space, &pair, &trace, 1e-9).unwrap();
    assert!(fp.residual <= 1e-9);
    let common = fp.common.expect("common fixed point");
    assert!(numeric_of(common.z).abs() <= 1e-9);
    assert!(common.t_residual <= 1e-9 && common.s_residual <= 1e-9);

    // certify(continuity-ii) with a plain linear contraction: verified,
    // unique common fixed point at 0 (solver-confirmed)
    let asserted_space = shrink_interval_space(&[
        AssertedProperty::Complete,
        AssertedProperty::SIncreasing,
        AssertedProperty::OContinuous,
        AssertedProperty::OCompatible,
        AssertedProperty::CoincidenceTotallyOrdered,
        AssertedProperty::ComparableMapping,
    ]);
    let banach = build_contraction("banach", &[("k".into(), 0.4)]).unwrap();
    let report = certify(
        &asserted_space,
        &pair,
        &banach,
        TheoremVariant::Continuity(ContinuityMode::CompatContinuity),
        Direction::Either,
        &SubspaceSpec::Whole,
        Some(PointRef::Numeric(0.9)),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(report.overall, EntryVerdict::Verified, "{report}");
    let z = report
        .outcome
        .as_ref()
        .and_then(|o| o.fixed_point.as_ref())
        .and_then(|f| f.common.as_ref())
        .map(|c| numeric_of(c.z))
        .expect("certified common fixed point");
    assert!(z.abs() <= 1e-9);

    // certify(regular) with the ratio form the interval example leans on:
    // the report must carry the F1c counterexample (condition b6) and the
    // unassertable I-regularity
    let ratio = build_contraction("ratio-t3", &[("k".into(), 0.5)]).unwrap();
    let report = certify(
        &space,
        &pair,
        &ratio,
        TheoremVariant::Regular,
        Direction::Either,
        &SubspaceSpec::Whole,
        Some(PointRef::Numeric(0.9)),
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(
        report.entry("b6").unwrap().verdict,
        EntryVerdict::Counterexample,
        "{report}"
    );
    assert_eq!(
        report.entry("b2").unwrap().verdict,
        EntryVerdict::NotCheckable
    );
    assert_ne!(report.overall, EntryVerdict::Verified);

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 1 (shrink-interval reproduction): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// Criterion 2: the index-shift pair on the quarter-power space
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_shift_sequence_reproduction() {
    let t0 = Instant::now();
    let space = shift_space(64);
    let pair = shift_pair();
    let sampler = PairSampler {
        index_cap: 50,
        ..Default::default()
    };

    // the image/preimage distance ratio is exactly 1/4
    for (i, j) in [(0u64, 1u64), (1, 2), (3, 9), (10, 40)] {
        let (ti, tj) = (
            pair.t_of(&space, PointRef::Indexed(i)).unwrap(),
            pair.t_of(&space, PointRef::Indexed(j)).unwrap(),
        );
        let (si, sj) = (
            pair.s_of(&space, PointRef::Indexed(i)).unwrap(),
            pair.s_of(&space, PointRef::Indexed(j)).unwrap(),
        );
        let ratio = space.metric(ti, tj).unwrap() / space.metric(si, sj).unwrap();
        assert!((ratio - 0.25).abs() <= 1e-12, "ratio {ratio}");
    }

    // the linear inequality holds exactly at k = 1/4 and fails below it
    let at = |k: f64| build_contraction("banach", &[("k".into(), k)]).unwrap();
    let pass = evaluate_contraction(&space, &pair, &at(0.25), &sampler).unwrap();
    assert_eq!(pass.verdict, ConditionVerdict::PassOnGrid, "{pass}");
    let fail = evaluate_contraction(&space, &pair, &at(0.24), &sampler).unwrap();
    assert_eq!(fail.verdict, ConditionVerdict::Counterexample);
    match fail.witness {
        Some(coincide::contraction::Witness::PairViolation { tuple, f_value, .. }) => {
            // the witness re-verifies
            let again = at(0.24).eval(&tuple).unwrap();
            assert!((again - f_value).abs() <= 1e-15);
            assert!(again > EPS_TOL);
        }
        ref other => panic!("unexpected witness {other:?}"),
    }

    // no coincidence points below index 50
    let capped = shift_space(50);
    let sets = coincidence_points_bruteforce(&capped, &pair).unwrap();
    assert!(sets.coincidence.is_empty());

    // the T-image chain is Cauchy with limit 0, which the image misses
    let entry = check_completeness(&space, &pair, &SubspaceSpec::TImage, Direction::Increasing)
        .unwrap();
    assert_eq!(entry.verdict, EntryVerdict::Counterexample, "{entry}");
    let detail = entry.detail.unwrap();
    let limit: f64 = detail
        .split("limit ")
        .nth(1)
        .and_then(|rest| rest.split(' ').next())
        .and_then(|tok| tok.parse().ok())
        .unwrap_or_else(|| panic!("no limit in witness detail: {detail}"));
    assert!(limit.abs() <= 1e-9, "limit {limit}");

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 2 (shift-sequence reproduction): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// Criterion 3: the rootless parabola pair
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_parabola_reproduction() {
    let space = parabola_space();
    let pair = parabola_pair();

    // closed-form oracle: r(x) = x^2 - 2x/3 + 1 has vertex x* = 1/3 with
    // r(x*) = 8/9, and 3x^2 - 2x + 3 = 0 has negative discriminant
    let x_star: f64 = (2.0 / 3.0) / 2.0;
    let r_star = x_star * x_star - 2.0 / 3.0 * x_star + 1.0;
    assert!((x_star - 1.0 / 3.0).abs() < 1e-15);
    assert!((r_star - 8.0 / 9.0).abs() < 1e-15);
    let discriminant = (-2.0f64).powi(2) - 4.0 * 3.0 * 3.0;
    assert_eq!(discriminant, -32.0);
    assert!(discriminant < 0.0, "no real root exists");

    let trace = jungck_sequence(
        &space,
        &pair,
        PointRef::Numeric(0.0),
        Direction::Either,
        &SolveOptions {
            budget: 500,
            ..Default::default()
        },
    )
    .unwrap();
    match extract_fixed_point(&space, &pair, &trace, 1e-9) {
        Err(SolverError::NoCoincidence { at, residual }) => {
            let x = numeric_of(at);
            assert!((x - 1.0 / 3.0).abs() <= 1e-6, "minimizer {x}");
            assert!((residual - 8.0 / 9.0).abs() <= 1e-9, "residual {residual}");
        }
        other => panic!("expected NoCoincidence, got {other:?}"),
    }
    println!("acceptance 3 (parabola reproduction): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 4: catalog conformance
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_catalog_conformance() {
    let t0 = Instant::now();
    let grid = GridSpec::default_log();
    for entry in coincide::contraction::catalog() {
        let ic = entry.build_default();
        for &claim in entry.claims {
            let report = check_condition(&ic, claim, &grid);
            assert_eq!(
                report.verdict,
                ConditionVerdict::PassOnGrid,
                "{} should satisfy {claim}: {report}",
                entry.id
            );
        }
        for &denied in entry.denied {
            let report = check_condition(&ic, denied, &grid);
            assert_eq!(
                report.verdict,
                ConditionVerdict::Counterexample,
                "{} should fail {denied}: {report}",
                entry.id
            );
            assert!(report.witness.is_some());
        }
    }
    // the denominator form with t3+t4 admits no F2 probe at all
    let ratio_t2 = build_contraction("ratio-t2", &[]).unwrap();
    let report = check_condition_f2(&ratio_t2, &grid);
    assert_eq!(report.verdict, ConditionVerdict::NotApplicable);

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("acceptance 4 (catalog conformance): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// Criterion 5: comparison-function boundary behaviour
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_comparison_function_properties() {
    let grid = GridSpec::default_log();
    for k in [0.0, 0.25, 0.5, 0.9] {
        let report = check_comparison(&ComparisonFn::linear(k), &grid);
        assert_eq!(
            report.verdict,
            ConditionVerdict::PassOnGrid,
            "phi(t) = {k}t: {report}"
        );
    }
    for k in [0.0, 0.1, 0.25, 0.4, 0.49, 0.5, 0.6, 0.9] {
        let rho = HalfComparisonFn::linear(k);
        let report = check_half_comparison(&rho, &grid);
        if k < 0.5 {
            assert_eq!(
                report.verdict,
                ConditionVerdict::PassOnGrid,
                "rho(t) = {k}t: {report}"
            );
        } else {
            assert_eq!(
                report.verdict,
                ConditionVerdict::Counterexample,
                "rho(t) = {k}t: {report}"
            );
            // the witness re-verifies: rho(2t) >= t at the reported t
            match report.witness {
                Some(coincide::contraction::Witness::NotContractive { t, .. }) => {
                    assert!(rho.eval(2.0 * t) >= t);
                }
                Some(coincide::contraction::Witness::NoDecay { start, .. }) => {
                    assert!(start > 0.0);
                }
                ref other => panic!("unexpected witness {other:?}"),
            }
        }
    }
    println!("acceptance 5 (comparison-function properties): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 6 (+7 on its traces): randomized oracle equivalence
// ---------------------------------------------------------------------------

struct RandomInstance {
    space: Space,
    pair: MappingPair,
    k: f64,
}

fn random_instance(rng: &mut ChaCha8Rng) -> RandomInstance {
    let n = rng.random_range(1..=8usize);
    // distinct grid points in the plane make the metric axioms hold
    let mut coords: Vec<(i32, i32)> = Vec::new();
    while coords.len() < n {
        let c = (rng.random_range(0..25), rng.random_range(0..25));
        if !coords.contains(&c) {
            coords.push(c);
        }
    }
    let metric: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dx = (coords[i].0 - coords[j].0) as f64;
                    let dy = (coords[i].1 - coords[j].1) as f64;
                    (dx * dx + dy * dy).sqrt()
                })
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_range(0.0..1.0) < 0.4 {
                pairs.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let fs = FiniteSpace::with_transitive_closure(labels, metric, &pairs).unwrap();
    assert!(fs.validate().is_valid());
    let space = Space::Finite(fs);

    let random_map = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        (0..n).map(|_| rng.random_range(0..n)).collect()
    };
    let (t, s) = match rng.random_range(0..10) {
        0 | 1 => {
            // constant T over the identity S: hypotheses often verify
            let c = rng.random_range(0..n);
            (vec![c; n], (0..n).collect())
        }
        2 | 3 => {
            let c = rng.random_range(0..n);
            (vec![c; n], random_map(rng))
        }
        _ => (random_map(rng), random_map(rng)),
    };
    let pair = MappingPair::new(Mapping::Table(t), Mapping::Table(s));
    let k = rng.random_range(0.05..0.45);
    RandomInstance { space, pair, k }
}

#[test]
fn criterion_6_and_7_randomized_oracle_equivalence() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0C01AC1D);
    let mut verified_all = 0usize;
    let mut verified_common = 0usize;
    let mut traces_checked = 0usize;
    let total = 250usize;
    for case in 0..total {
        let inst = random_instance(&mut rng);
        let ic = build_contraction("linear-quasi", &[("k".into(), inst.k)]).unwrap();
        let report = certify(
            &inst.space,
            &inst.pair,
            &ic,
            TheoremVariant::Regular,
            Direction::Either,
            &SubspaceSpec::SImage,
            None,
            &CertifyOptions::default(),
        )
        .unwrap();

        let outcome = report.outcome.as_ref();
        if report.stage_ok(Stage::CommonFixed) && report.stage_ok(Stage::Coincidence) {
            let sets = outcome
                .and_then(|o| o.brute.as_ref())
                .unwrap_or_else(|| panic!("case {case}: no brute sets\n{report}"));
            assert!(
                !sets.common_fixed.is_empty(),
                "case {case}: common tier verified but no common fixed point\n{report}"
            );
            let z = outcome
                .and_then(|o| o.fixed_point.as_ref())
                .and_then(|f| f.common.as_ref())
                .map(|c| c.z)
                .unwrap_or_else(|| panic!("case {case}: solver found no common point\n{report}"));
            assert!(
                sets.common_fixed.contains(&z),
                "case {case}: solver point not confirmed by brute force\n{report}"
            );
            verified_common += 1;
            if report.overall == EntryVerdict::Verified {
                // uniqueness hypotheses (b5)+(b6) hold as well
                assert_eq!(
                    sets.common_fixed.len(),
                    1,
                    "case {case}: uniqueness verified but |common| != 1\n{report}"
                );
                assert_eq!(sets.common_fixed[0], z);
                verified_all += 1;
            }
        }

        // criterion 7 on this instance's trace, when a valid increasing start
        // exists and the core hypotheses hold
        if report.stage_ok(Stage::Coincidence) {
            let pts = inst.space.enumerable_points().unwrap();
            let start = pts.iter().copied().find(|&x| {
                let sx = inst.pair.s_of(&inst.space, x).unwrap();
                let tx = inst.pair.t_of(&inst.space, x).unwrap();
                inst.space.leq(sx, tx).unwrap()
            });
            if let Some(x0) = start {
                let trace = jungck_sequence(
                    &inst.space,
                    &inst.pair,
                    x0,
                    Direction::Increasing,
                    &SolveOptions::default(),
                )
                .unwrap();
                assert!(
                    check_gap_contraction(&trace, &ic.companion, 1e-9).is_none(),
                    "case {case}: gap contraction violated"
                );
                assert!(
                    check_gap_envelope(&trace, &ic.companion, 1e-9).is_none(),
                    "case {case}: gap envelope violated"
                );
                traces_checked += 1;
            }
        }
    }
    assert!(
        verified_all >= 10,
        "only {verified_all} fully verified cases out of {total}; generator too weak"
    );
    assert!(traces_checked >= 10);
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance 6 (randomized oracle equivalence): PASS in {elapsed:?} \
         ({verified_common} common-verified, {verified_all} uniqueness-verified, \
         {traces_checked} traces gap-checked)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 7 on the reference traces of criteria 1-2
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_gap_inequalities_on_reference_traces() {
    // shrink interval with the linear companion 0.4t (and the true ratio 1/3)
    let space = shrink_interval_space(&[]);
    let pair = shrink_interval_pair();
    let trace = jungck_sequence(
        &space,
        &pair,
        PointRef::Numeric(0.9),
        Direction::Either,
        &SolveOptions::default(),
    )
    .unwrap();
    let phi = ComparisonFn::linear(0.4);
    assert!(check_gap_contraction(&trace, &phi, 1e-9).is_none());
    assert!(check_gap_envelope(&trace, &phi, 1e-9).is_none());

    // index shift with the exact companion 0.25t: equality case
    let space = shift_space(64);
    let pair = shift_pair();
    let trace = jungck_sequence(
        &space,
        &pair,
        PointRef::Indexed(0),
        Direction::Increasing,
        &SolveOptions::default(),
    )
    .unwrap();
    assert!(trace.gaps().len() > 10);
    let phi = ComparisonFn::linear(0.25);
    assert!(check_gap_contraction(&trace, &phi, 1e-9).is_none());
    assert!(check_gap_envelope(&trace, &phi, 1e-9).is_none());
    // a too-small companion must be caught
    let phi_bad = ComparisonFn::linear(0.2);
    assert!(check_gap_contraction(&trace, &phi_bad, 1e-12).is_some());
    println!("acceptance 7 (gap inequalities on reference traces): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 8: regularity reduction vs direct sequence enumeration
// ---------------------------------------------------------------------------

/// Literal checker: every nondecreasing (resp. nonincreasing) chain of
/// S-images of length <= 4, extended by a constant tail, converges to its
/// last element; the space is regular iff each such limit `c` obeys
/// `c <= S(c)` (resp. `>=`).
fn direct_regularity(space: &Space, pair: &MappingPair, increasing: bool) -> bool {
    let pts = space.enumerable_points().unwrap();
    let mut s_images: Vec<PointRef> = Vec::new();
    for &x in &pts {
        let sx = pair.s_of(space, x).unwrap();
        if !s_images.contains(&sx) {
            s_images.push(sx);
        }
    }
    let chain_ok = |a: PointRef, b: PointRef| {
        if increasing {
            space.leq(a, b).unwrap()
        } else {
            space.leq(b, a).unwrap()
        }
    };
    // depth-first enumeration of chains up to length 4
    let mut stack: Vec<Vec<PointRef>> = s_images.iter().map(|&p| vec![p]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        // the extended sequence last,last,... converges to `last`
        let s_last = pair.s_of(space, last).unwrap();
        let ok = if increasing {
            space.leq(last, s_last).unwrap()
        } else {
            space.leq(s_last, last).unwrap()
        };
        if !ok {
            return false;
        }
        if chain.len() < 4 {
            for &next in &s_images {
                if chain_ok(last, next) {
                    let mut ext = chain.clone();
                    ext.push(next);
                    stack.push(ext);
                }
            }
        }
    }
    true
}

#[test]
fn criterion_8_regularity_cross_validation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E95EA);
    let mut agreements = 0usize;
    for _ in 0..500 {
        let n = rng.random_range(1..=4usize);
        let coords: Vec<f64> = {
            let mut c: Vec<i64> = Vec::new();
            while c.len() < n {
                let v = rng.random_range(0..40i64);
                if !c.contains(&v) {
                    c.push(v);
                }
            }
            c.into_iter().map(|v| v as f64).collect()
        };
        let metric: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (coords[i] - coords[j]).abs()).collect())
            .collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_range(0.0..1.0) < 0.5 {
                    pairs.push((i, j));
                }
            }
        }
        let labels = (0..n).map(|i| format!("q{i}")).collect();
        let fs = FiniteSpace::with_transitive_closure(labels, metric, &pairs).unwrap();
        let space = Space::Finite(fs);
        let s: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let pair = MappingPair::new(Mapping::Table((0..n).collect()), Mapping::Table(s));

        for (direction, increasing) in
            [(Direction::Increasing, true), (Direction::Decreasing, false)]
        {
            let reduced = coincide::certifier::check_regularity(&space, &pair, direction)
                .unwrap()
                .verdict
                == EntryVerdict::Verified;
            let direct = direct_regularity(&space, &pair, increasing);
            assert_eq!(
                reduced, direct,
                "pointwise reduction disagrees with sequence enumeration"
            );
            agreements += 1;
        }
    }
    println!("acceptance 8 (regularity cross-validation): PASS ({agreements} comparisons)");
}
