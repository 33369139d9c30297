//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 6 carries its own ground truth: an exhaustive convex-hull search
//! over lattice-point subsets that never looks at the bound-sextuple
//! encoding the enumeration oracle is built on.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use trinet::formulas::{
    hexagon_closed, hexagon_forcing_closed, hexagon_recurrence, pentagon_closed,
    pentagon_forcing_closed, pentagon_recurrence, ParityForm, HEXAGON_FORM,
};
use trinet::net::{embed, NetSize, PlanarPoint, Side, TriCoord};
use trinet::oracle::{count_by_class, count_touching, enumerate_polygons, PolygonClass};
use trinet::validation::{angle_law_violations, cross_validate, formula_only_validate};

fn net(n: u32) -> NetSize {
    NetSize::new(n).unwrap()
}

// ---------------------------------------------------------------------------
// Independent ground truth for criterion 6: subset convex-hull search.
// ---------------------------------------------------------------------------

type Chart = fn(TriCoord) -> (i64, i64);

/// The straightforward affine chart (beta, gamma).
fn plain_chart(p: TriCoord) -> (i64, i64) {
    (p.beta() as i64, p.gamma() as i64)
}

/// A skewed unimodular chart; counts must not depend on the embedding.
fn skewed_chart(p: TriCoord) -> (i64, i64) {
    (
        2 * p.beta() as i64 + 5 * p.gamma() as i64,
        p.beta() as i64 + 3 * p.gamma() as i64,
    )
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull with strictly convex turns; `Some(hull indices)` only when
/// every input point is a strict hull vertex.
fn strict_hull(points: &[(i64, i64)]) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    let half = |idxs: &[usize]| {
        let mut hull: Vec<usize> = Vec::new();
        for &i in idxs {
            while hull.len() >= 2
                && cross(
                    points[hull[hull.len() - 2]],
                    points[hull[hull.len() - 1]],
                    points[i],
                ) <= 0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull
    };
    let lower = half(&order);
    let reversed: Vec<usize> = order.iter().rev().copied().collect();
    let upper = half(&reversed);
    let mut hull = lower;
    hull.pop();
    hull.extend_from_slice(&upper[..upper.len() - 1]);
    (hull.len() == points.len()).then_some(hull)
}

fn for_each_subset(items: &[TriCoord], size: usize, f: &mut impl FnMut(&[TriCoord])) {
    fn recurse(
        items: &[TriCoord],
        size: usize,
        start: usize,
        current: &mut Vec<TriCoord>,
        f: &mut impl FnMut(&[TriCoord]),
    ) {
        if current.len() == size {
            f(current);
            return;
        }
        let need = size - current.len();
        for i in start..=items.len() - need {
            current.push(items[i]);
            recurse(items, size, i + 1, current, f);
            current.pop();
        }
    }
    recurse(items, size, 0, &mut Vec::new(), f);
}

fn canonical(vertices: &[TriCoord]) -> Vec<(u32, u32, u32)> {
    let mut v: Vec<_> = vertices
        .iter()
        .map(|p| (p.alpha(), p.beta(), p.gamma()))
        .collect();
    v.sort();
    v
}

/// Every strictly convex vertex set with all hull edges on grid lines, for
/// subset sizes 3..=max_size, as canonical vertex lists.
fn hull_search(n: NetSize, chart: Chart, max_size: usize) -> BTreeSet<Vec<(u32, u32, u32)>> {
    let points = trinet::net::lattice_points(n);
    let mut found = BTreeSet::new();
    for size in 3..=max_size.min(points.len()) {
        for_each_subset(&points, size, &mut |subset| {
            let uv: Vec<(i64, i64)> = subset.iter().map(|&p| chart(p)).collect();
            let Some(hull) = strict_hull(&uv) else {
                return;
            };
            let on_grid = (0..hull.len()).all(|i| {
                let p = subset[hull[i]];
                let q = subset[hull[(i + 1) % hull.len()]];
                p.alpha() == q.alpha() || p.beta() == q.beta() || p.gamma() == q.gamma()
            });
            if on_grid {
                found.insert(canonical(subset));
            }
        });
    }
    found
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_base_values_all_routes() {
    let start = Instant::now();
    let pentagon_expect = [(1, 0), (2, 0), (3, 3)];
    let hexagon_expect = [(1, 0), (2, 0), (3, 1)];
    for (n, want) in pentagon_expect {
        assert_eq!(pentagon_closed(net(n)).get(), want, "closed P({n})");
        assert_eq!(pentagon_recurrence(net(n)).get(), want, "recurrence P({n})");
        assert_eq!(count_by_class(net(n)).pentagons, want as u64, "oracle P({n})");
    }
    for (n, want) in hexagon_expect {
        assert_eq!(hexagon_closed(net(n)).get(), want, "closed H({n})");
        assert_eq!(hexagon_recurrence(net(n)).get(), want, "recurrence H({n})");
        assert_eq!(count_by_class(net(n)).hexagons, want as u64, "oracle H({n})");
    }
    let both = [Side::OA, Side::OB];
    assert_eq!(pentagon_forcing_closed(net(3)).get(), 3);
    assert_eq!(count_touching(net(3), PolygonClass::Pentagon, &both), 3);
    assert_eq!(hexagon_forcing_closed(net(3)).get(), 1);
    assert_eq!(count_touching(net(3), PolygonClass::Hexagon, &both), 1);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 1 (base values via all three routes, {elapsed:?}): PASS");
}

/// Criteria 2 and 3 share one validation run.
fn shared_report() -> &'static trinet::validation::VerificationReport {
    static REPORT: OnceLock<trinet::validation::VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        cross_validate(
            net(12),
            &[PolygonClass::Pentagon, PolygonClass::Hexagon],
            4,
        )
    })
}

#[test]
fn criterion_2_three_way_agreement_to_n12() {
    let start = Instant::now();
    let report = shared_report();
    assert_eq!(report.records.len(), 24);
    for r in &report.records {
        assert_eq!(
            r.oracle.unwrap() as i128,
            r.closed.get(),
            "oracle vs closed at n={} {}",
            r.n,
            r.class
        );
        assert_eq!(r.closed, r.recurrence, "closed vs recurrence at n={} {}", r.n, r.class);
    }
    assert!(report.verdict, "failures: {:?}", report.identity_failures);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 2 (three-way agreement, n <= 12, {elapsed:?}): PASS");
}

#[test]
fn criterion_3_forcing_agreement_to_n12() {
    let start = Instant::now();
    let report = shared_report();
    for r in &report.records {
        assert_eq!(
            r.forcing_oracle.unwrap() as i128,
            r.forcing_closed.get(),
            "forcing count at n={} {}",
            r.n,
            r.class
        );
    }
    // Same numbers through the public touching-count operation.
    let both = [Side::OA, Side::OB];
    for n in 1..=12 {
        assert_eq!(
            count_touching(net(n), PolygonClass::Pentagon, &both) as i128,
            pentagon_forcing_closed(net(n)).get()
        );
        assert_eq!(
            count_touching(net(n), PolygonClass::Hexagon, &both) as i128,
            hexagon_forcing_closed(net(n)).get()
        );
    }
    let elapsed = start.elapsed();
    println!("criterion 3 (forcing-sequence agreement, n <= 12, {elapsed:?}): PASS");
}

#[test]
fn criterion_4_acute_angle_lemma_to_n10() {
    let start = Instant::now();
    for n in 1..=10 {
        assert_eq!(angle_law_violations(net(n)), 0, "angle law at n={n}");
        for pentagon in enumerate_polygons(net(n), Some(PolygonClass::Pentagon)) {
            let acute = pentagon
                .interior_angles()
                .iter()
                .filter(|&&a| a == 60)
                .count();
            assert_eq!(acute, 1, "pentagon with {acute} acute angles at n={n}");
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 4 (acute-angle lemma, n <= 10, {elapsed:?}): PASS");
}

#[test]
fn criterion_5_identity_suite_at_scale() {
    let start = Instant::now();
    let report = formula_only_validate(net(100_000));
    assert!(report.verdict, "failures: {:?}", report.identity_failures);
    assert_eq!(report.records.len(), 200_000);

    // First-difference identities out to k = 5 * 10^4 (n up to 100_001).
    let p = |n: i128| pentagon_closed(net(n as u32)).get();
    let h = |n: i128| hexagon_closed(net(n as u32)).get();
    for k in 1i128..=50_000 {
        assert_eq!(
            2 * (p(2 * k + 1) - p(2 * k)),
            2 * (3 * k.pow(4) + 2 * k.pow(3)) - 3 * k * k - k,
            "pentagon odd step at k={k}"
        );
        assert_eq!(
            p(2 * k) - p(2 * k - 1),
            3 * k.pow(4) - 4 * k.pow(3) + k,
            "pentagon even step at k={k}"
        );
        let even = k * (12 * k.pow(4) - 15 * k.pow(3) + 5 * k * k - 2);
        assert_eq!(even % 30, 0);
        assert_eq!(h(2 * k) - h(2 * k - 1), even / 30, "hexagon even step at k={k}");
        let odd = k * (12 * k.pow(4) + 15 * k.pow(3) + 5 * k * k - 2);
        assert_eq!(odd % 30, 0);
        assert_eq!(h(2 * k + 1) - h(2 * k), odd / 30, "hexagon odd step at k={k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 5 (identity suite to n = 10^5, {elapsed:?}): PASS");
}

#[test]
fn criterion_6_exhaustive_cross_oracle_tiny_nets() {
    let start = Instant::now();
    for n in 1..=3u32 {
        let from_oracle: BTreeSet<_> = enumerate_polygons(net(n), None)
            .map(|p| canonical(&p.vertices))
            .collect();
        // Searching up to 8-point subsets also demonstrates completeness:
        // nothing with more than six vertices qualifies.
        let from_hulls = hull_search(net(n), plain_chart, 8);
        assert_eq!(from_hulls, from_oracle, "polygon sets differ at n={n}");
        assert!(from_hulls.iter().all(|v| v.len() <= 6));

        let skewed = hull_search(net(n), skewed_chart, 8);
        assert_eq!(skewed, from_oracle, "skewed-chart search differs at n={n}");
    }
    // Oracle vertex cycles are counterclockwise in the exact embedding.
    for n in 1..=4u32 {
        for poly in enumerate_polygons(net(n), None) {
            let pts: Vec<PlanarPoint> = poly
                .vertices
                .iter()
                .map(|&v| embed(v, net(n)).unwrap())
                .collect();
            for i in 0..pts.len() {
                let o = PlanarPoint::orientation(
                    pts[i],
                    pts[(i + 1) % pts.len()],
                    pts[(i + 2) % pts.len()],
                );
                assert_eq!(o, 1, "clockwise or collinear corner in {:?}", poly.bounds);
            }
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 6 (exhaustive cross-oracle, n <= 3, {elapsed:?}): PASS");
}

#[test]
fn criterion_7_overflow_safety_at_n_10_4() {
    let start = Instant::now();
    let value = hexagon_closed(net(10_000));
    assert!(
        value.get() > u64::MAX as i128,
        "hexagon count at n = 10^4 must exceed the 64-bit range"
    );
    assert_eq!(value.get(), 2_083_333_281_249_998_750_000i128);

    // Recompute in arbitrary precision from the same frozen coefficients.
    fn eval_bigint(form: &ParityForm, n: u32) -> BigInt {
        let (coeffs, divisor, k) = if n % 2 == 1 {
            (form.odd, form.odd_divisor, (n - 1) / 2)
        } else {
            (form.even, form.even_divisor, n / 2)
        };
        let k = BigInt::from(k);
        let mut acc = BigInt::from(0);
        for &c in coeffs.iter().rev() {
            acc = acc * &k + BigInt::from(c);
        }
        let rem = &acc % divisor;
        assert_eq!(rem, BigInt::from(0));
        acc / divisor
    }
    let big = eval_bigint(&HEXAGON_FORM, 10_000);
    assert_eq!(big.to_string(), value.get().to_string());
    let elapsed = start.elapsed();
    println!("criterion 7 (overflow safety at n = 10^4, {elapsed:?}): PASS");
}

#[test]
fn criterion_8_cli_determinism() {
    let start = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_trinet"))
            .args([
                "sequence",
                "--class",
                "pentagon",
                "--n-max",
                "50",
                "--format",
                "csv",
            ])
            .output()
            .expect("run trinet binary")
    };
    let first = run();
    let second = run();
    assert!(first.status.success() && second.status.success());
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "csv output must be byte-identical");
    let elapsed = start.elapsed();
    println!("criterion 8 (CLI determinism, {elapsed:?}): PASS");
}
