//! Cross-checks of the three counting routes and the sequence identities,
//! assembled into machine-readable reports.
//!
//! A mismatch never aborts a run: every comparison lands in the report, the
//! verdict summarizes them, and callers (the CLI, the acceptance suite)
//! decide what to do with a `false`.

use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::formulas::{
    hexagon_closed, pentagon_closed, ExactCount, Order2Recurrence, HEXAGON_FORCING_FORM,
    HEXAGON_FORM, PENTAGON_FORCING_FORM, PENTAGON_FORM,
};
use crate::net::NetSize;
use crate::oracle::{count_by_class, enumerate_polygons, PolygonClass, SideTouches};

/// One comparison row: all counting routes for one `(n, class)` pair.
///
/// Oracle columns are `None` in formula-only runs; `angle_law_ok` reflects
/// every polygon of the net, so both class rows of one `n` carry the same
/// value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CountRecord {
    pub n: u32,
    pub class: PolygonClass,
    pub oracle: Option<u64>,
    pub closed: ExactCount,
    pub recurrence: ExactCount,
    pub forcing_oracle: Option<u64>,
    pub forcing_closed: ExactCount,
    pub angle_law_ok: Option<bool>,
    pub agree: bool,
}

/// Wall-clock milliseconds spent in each counting route.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub oracle_ms: u64,
    pub closed_ms: u64,
    pub recurrence_ms: u64,
}

/// Agreement report over `n = 1..=n_max`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_max: u32,
    pub formula_only: bool,
    /// Rows sorted by `n`, then class.
    pub records: Vec<CountRecord>,
    /// Human-readable description of every failed identity check; empty when
    /// all hold.
    pub identity_failures: Vec<String>,
    /// True iff every record agrees and no identity failed.
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<VerificationReport, serde_json::Error> {
        serde_json::from_str(json)
    }

    /// CSV rendering of the records, one row per `(n, class)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,class,oracle,closed,recurrence,f_or_g_oracle,f_or_g_closed,agree\n");
        for r in &self.records {
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n,
                r.class,
                opt(r.oracle),
                r.closed,
                r.recurrence,
                opt(r.forcing_oracle),
                r.forcing_closed,
                r.agree
            ));
        }
        out
    }

    /// Drops the timing fields; reports from identical runs compare equal
    /// after this.
    pub fn without_timing(mut self) -> VerificationReport {
        self.timing = None;
        self
    }
}

/// Everything the oracle has to say about one net: per-class counts, the
/// forcing counts, and the angle-law outcome.
struct NetSurvey {
    n: u32,
    class_counts: [u64; 4],
    forcing_pentagon: u64,
    forcing_hexagon: u64,
    angle_violations: u64,
    /// Enumeration tally disagreed with the streaming count, per class.
    tally_mismatch: Vec<PolygonClass>,
}

/// One enumeration pass over the net: tallies classes, touching counts and
/// angle-law violations, then cross-checks the tally against the streaming
/// counter.
fn survey_net(n: NetSize) -> NetSurvey {
    let both_upper = SideTouches {
        oa: true,
        ob: true,
        ab: false,
    };
    let mut tally = [0u64; 4];
    let mut forcing = [0u64; 4];
    let mut angle_violations = 0u64;
    for poly in enumerate_polygons(n, None) {
        let idx = (poly.class.edges() - 3) as usize;
        tally[idx] += 1;
        if poly.touches.covers(both_upper) {
            forcing[idx] += 1;
        }
        let angles = poly.interior_angles();
        let acute = angles.iter().filter(|&&a| a == 60).count() as u32;
        if angles.iter().any(|&a| a != 60 && a != 120) || acute != 6 - poly.class.edges() {
            angle_violations += 1;
        }
    }
    let table = count_by_class(n);
    let tally_mismatch = PolygonClass::ALL
        .into_iter()
        .filter(|&c| tally[(c.edges() - 3) as usize] != table.get(c))
        .collect();
    NetSurvey {
        n: n.get(),
        class_counts: std::array::from_fn(|i| table.get(PolygonClass::ALL[i])),
        forcing_pentagon: forcing[2],
        forcing_hexagon: forcing[3],
        angle_violations,
        tally_mismatch,
    }
}

/// Number of enumerated polygons of the `n`-net whose interior angles break
/// the law "every angle is 60 or 120 degrees and exactly `6 - edges` of them
/// are 60".
pub fn angle_law_violations(n: NetSize) -> u64 {
    survey_net(n).angle_violations
}

fn surveys_threaded(n_max: u32, threads: usize) -> Vec<NetSurvey> {
    let workers = threads.clamp(1, n_max as usize);
    let mut surveys: Vec<Option<NetSurvey>> = (0..n_max).map(|_| None).collect();
    if workers == 1 {
        for n in 1..=n_max {
            surveys[n as usize - 1] = Some(survey_net(NetSize::new(n).unwrap()));
        }
    } else {
        let results = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        (1..=n_max)
                            .filter(|nn| *nn as usize % workers == w)
                            .map(|nn| survey_net(NetSize::new(nn).unwrap()))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("survey worker panicked"))
                .collect::<Vec<_>>()
        });
        for s in results {
            let slot = s.n as usize - 1;
            surveys[slot] = Some(s);
        }
    }
    surveys.into_iter().map(|s| s.expect("all n surveyed")).collect()
}

fn closed_and_forcing(class: PolygonClass, n: NetSize) -> (ExactCount, ExactCount) {
    match class {
        PolygonClass::Pentagon => (pentagon_closed(n), PENTAGON_FORCING_FORM.eval(n)),
        PolygonClass::Hexagon => (hexagon_closed(n), HEXAGON_FORCING_FORM.eval(n)),
        _ => unreachable!("validation only compares pentagon and hexagon routes"),
    }
}

/// Runs all three counting routes for every `n <= n_max` and each requested
/// class (pentagons and hexagons; other classes have no closed form and are
/// skipped), plus the forcing-count and angle-law checks.
///
/// Enumeration cost grows like `n^6`; full runs stay comfortable up to about
/// `n = 40`. `threads` parallelizes the per-`n` oracle work; the report is
/// identical for any thread count.
pub fn cross_validate(n_max: NetSize, classes: &[PolygonClass], threads: usize) -> VerificationReport {
    let mut wanted: Vec<PolygonClass> = classes
        .iter()
        .copied()
        .filter(|c| matches!(c, PolygonClass::Pentagon | PolygonClass::Hexagon))
        .collect();
    wanted.sort();
    wanted.dedup();

    let oracle_start = Instant::now();
    let surveys = surveys_threaded(n_max.get(), threads);
    let oracle_ms = oracle_start.elapsed().as_millis() as u64;

    let recurrence_start = Instant::now();
    let pent_rec: Vec<ExactCount> = Order2Recurrence::pentagon()
        .values_to(n_max)
        .map(|(_, v)| v)
        .collect();
    let hex_rec: Vec<ExactCount> = Order2Recurrence::hexagon()
        .values_to(n_max)
        .map(|(_, v)| v)
        .collect();
    let recurrence_ms = recurrence_start.elapsed().as_millis() as u64;

    let closed_start = Instant::now();
    let mut records = Vec::new();
    let mut identity_failures = Vec::new();
    for survey in &surveys {
        let n = NetSize::new(survey.n).unwrap();
        for &class in &wanted {
            let (closed, forcing_closed) = closed_and_forcing(class, n);
            let recurrence = match class {
                PolygonClass::Pentagon => pent_rec[survey.n as usize - 1],
                _ => hex_rec[survey.n as usize - 1],
            };
            let (oracle, forcing_oracle) = match class {
                PolygonClass::Pentagon => (survey.class_counts[2], survey.forcing_pentagon),
                _ => (survey.class_counts[3], survey.forcing_hexagon),
            };
            let angle_ok = survey.angle_violations == 0;
            let agree = oracle as i128 == closed.get()
                && closed == recurrence
                && forcing_oracle as i128 == forcing_closed.get()
                && angle_ok;
            records.push(CountRecord {
                n: survey.n,
                class,
                oracle: Some(oracle),
                closed,
                recurrence,
                forcing_oracle: Some(forcing_oracle),
                forcing_closed,
                angle_law_ok: Some(angle_ok),
                agree,
            });
        }
        for class in &survey.tally_mismatch {
            identity_failures.push(format!(
                "enumeration tally and streaming count disagree for {class} at n={}",
                survey.n
            ));
        }
    }
    let closed_ms = closed_start.elapsed().as_millis() as u64;

    let verdict = records.iter().all(|r| r.agree) && identity_failures.is_empty();
    VerificationReport {
        n_max: n_max.get(),
        formula_only: false,
        records,
        identity_failures,
        verdict,
        timing: Some(Timing {
            oracle_ms,
            closed_ms,
            recurrence_ms,
        }),
    }
}

/// Closed form versus telescoped recurrence only, no enumeration; feasible
/// up to `n_max = 10^6`. Also checks the divisibility of every closed-form
/// numerator and the parity-step identities of the count and forcing
/// sequences.
pub fn formula_only_validate(n_max: NetSize) -> VerificationReport {
    let closed_start = Instant::now();
    let mut records = Vec::with_capacity(2 * n_max.get() as usize);
    let pent = Order2Recurrence::pentagon();
    let hexa = Order2Recurrence::hexagon();
    for ((n, p_rec), (_, h_rec)) in pent.values_to(n_max).zip(hexa.values_to(n_max)) {
        let size = NetSize::new(n).unwrap();
        for (class, recurrence) in [
            (PolygonClass::Pentagon, p_rec),
            (PolygonClass::Hexagon, h_rec),
        ] {
            let (closed, forcing_closed) = closed_and_forcing(class, size);
            records.push(CountRecord {
                n,
                class,
                oracle: None,
                closed,
                recurrence,
                forcing_oracle: None,
                forcing_closed,
                angle_law_ok: None,
                agree: closed == recurrence,
            });
        }
    }
    let closed_ms = closed_start.elapsed().as_millis() as u64;

    let mut identity_failures = Vec::new();
    check_divisibility(n_max, &mut identity_failures);
    check_step_identities(n_max, &mut identity_failures);

    let verdict = records.iter().all(|r| r.agree) && identity_failures.is_empty();
    VerificationReport {
        n_max: n_max.get(),
        formula_only: true,
        records,
        identity_failures,
        verdict,
        timing: Some(Timing {
            oracle_ms: 0,
            closed_ms,
            recurrence_ms: closed_ms,
        }),
    }
}

fn check_divisibility(n_max: NetSize, failures: &mut Vec<String>) {
    for n in 1..=n_max.get() {
        let size = NetSize::new(n).unwrap();
        for (name, form) in [
            ("pentagon", &PENTAGON_FORM),
            ("hexagon", &HEXAGON_FORM),
            ("pentagon forcing", &PENTAGON_FORCING_FORM),
            ("hexagon forcing", &HEXAGON_FORCING_FORM),
        ] {
            if form.remainder(size) != 0 {
                failures.push(format!("{name} numerator not divisible at n={n}"));
            }
        }
    }
}

/// Parity-step identities: the exact first differences of the pentagon and
/// hexagon counts and of both forcing sequences, checked for every k with
/// `2k + 1 <= n_max`.
fn check_step_identities(n_max: NetSize, failures: &mut Vec<String>) {
    let p = |n: i128| pentagon_closed(NetSize::new(n as u32).unwrap()).get();
    let h = |n: i128| hexagon_closed(NetSize::new(n as u32).unwrap()).get();
    let f = |n: i128| PENTAGON_FORCING_FORM.eval(NetSize::new(n as u32).unwrap()).get();
    let g = |n: i128| HEXAGON_FORCING_FORM.eval(NetSize::new(n as u32).unwrap()).get();
    let k_max = (n_max.get() as i128 - 1) / 2;
    for k in 1..=k_max {
        if 2 * (p(2 * k + 1) - p(2 * k)) != 2 * (3 * k.pow(4) + 2 * k.pow(3)) - 3 * k * k - k {
            failures.push(format!("pentagon odd-step difference fails at k={k}"));
        }
        if p(2 * k) - p(2 * k - 1) != 3 * k.pow(4) - 4 * k.pow(3) + k {
            failures.push(format!("pentagon even-step difference fails at k={k}"));
        }
        let h_even = k * (12 * k.pow(4) - 15 * k.pow(3) + 5 * k * k - 2);
        if h_even % 30 != 0 || h(2 * k) - h(2 * k - 1) != h_even / 30 {
            failures.push(format!("hexagon even-step difference fails at k={k}"));
        }
        let h_odd = k * (12 * k.pow(4) + 15 * k.pow(3) + 5 * k * k - 2);
        if h_odd % 30 != 0 || h(2 * k + 1) - h(2 * k) != h_odd / 30 {
            failures.push(format!("hexagon odd-step difference fails at k={k}"));
        }
        if f(2 * k) - f(2 * k - 1) != 3 * (3 * k * k - 5 * k + 2) {
            failures.push(format!("pentagon forcing even step fails at k={k}"));
        }
        if f(2 * k + 1) - f(2 * k) != 3 * (3 * k * k - 2 * k) {
            failures.push(format!("pentagon forcing odd step fails at k={k}"));
        }
        let g_odd = k * (4 * k * k - 3 * k + 1);
        if g_odd % 2 != 0 || g(2 * k + 1) - g(2 * k) != g_odd / 2 {
            failures.push(format!("hexagon forcing odd step fails at k={k}"));
        }
        let g_even = (k - 1) * (4 * k * k - 5 * k + 2);
        if g_even % 2 != 0 || g(2 * k) - g(2 * k - 1) != g_even / 2 {
            failures.push(format!("hexagon forcing even step fails at k={k}"));
        }
    }
}
