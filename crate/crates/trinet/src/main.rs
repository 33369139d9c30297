//! Command-line interface: counts, sequences, verification runs and polygon
//! dumps.
//!
//! Exit codes: 0 on success (and on a `verify` run whose verdict is true),
//! 1 when `verify` finds a mismatch, 2 on usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trinet::formulas::{
    hexagon_closed, hexagon_recurrence, pentagon_closed, pentagon_recurrence, ExactCount,
    Order2Recurrence,
};
use trinet::net::NetSize;
use trinet::oracle::{count_by_class_threaded, enumerate_polygons, LatticePolygon, PolygonClass};
use trinet::validation::{cross_validate, formula_only_validate, VerificationReport};

#[derive(Parser)]
#[command(
    name = "trinet",
    version,
    about = "Count convex polygons in triangular nets",
    long_about = "Counts convex polygons whose edges run along the segments of an \
                  order-n triangular net, by closed form, by recurrence, or by brute-force \
                  enumeration, and cross-validates the three routes."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-class polygon counts for one net
    Count {
        /// Net order (parts per side)
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Classes to count, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [ClassArg::Pentagon, ClassArg::Hexagon])]
        classes: Vec<ClassArg>,
        #[command(flatten)]
        method: MethodOpt,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        threads: ThreadsOpt,
    },
    /// Count sequence for one class over n = 1..=n-max
    Sequence {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[command(flatten)]
        method: MethodOpt,
        #[arg(long, value_enum, default_value_t = SeqFormat::Table)]
        format: SeqFormat,
        #[command(flatten)]
        threads: ThreadsOpt,
    },
    /// Cross-validate the counting routes; exit code 0 iff everything agrees
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        /// Skip the enumeration oracle: closed form vs recurrence plus the
        /// sequence identities, feasible up to n-max = 10^6
        #[arg(long)]
        formula_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Omit timing fields so identical runs print identical bytes
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        threads: ThreadsOpt,
    },
    /// Dump every polygon of a net: bounds, class, vertices, touched sides
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Restrict the dump to one class
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct MethodOpt {
    /// Counting route
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
}

#[derive(Args)]
struct ThreadsOpt {
    /// Worker threads for enumeration-based counting
    #[arg(long, env = "TRINET_THREADS", default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..=1024))]
    threads: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Triangle,
    Quadrilateral,
    Pentagon,
    Hexagon,
}

impl From<ClassArg> for PolygonClass {
    fn from(c: ClassArg) -> PolygonClass {
        match c {
            ClassArg::Triangle => PolygonClass::Triangle,
            ClassArg::Quadrilateral => PolygonClass::Quadrilateral,
            ClassArg::Pentagon => PolygonClass::Pentagon,
            ClassArg::Hexagon => PolygonClass::Hexagon,
        }
    }
}

impl std::fmt::Display for ClassArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        PolygonClass::from(*self).fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Recurrence,
    Oracle,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Recurrence => "recurrence",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqFormat {
    Table,
    Csv,
    Json,
    /// Plain "n value" pairs, one per line
    Bfile,
}

const ORACLE_CEILING: u32 = 40;
const DUMP_CEILING: u32 = 15;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Count {
            n,
            classes,
            method,
            format,
            threads,
        } => cmd_count(n, &classes, method.method, format, threads.threads),
        Command::Sequence {
            class,
            n_max,
            method,
            format,
            threads,
        } => cmd_sequence(class, n_max, method.method, format, threads.threads),
        Command::Verify {
            n_max,
            formula_only,
            format,
            no_timing,
            threads,
        } => cmd_verify(n_max, formula_only, format, no_timing, threads.threads),
        Command::Enumerate { n, class, format } => cmd_enumerate(n, class, format),
    }
}

/// Semantic argument problem: report it the way clap does and exit 2.
fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).expect("write to stdout");
    out.flush().expect("flush stdout");
}

fn closed_route(class: PolygonClass, n: NetSize) -> ExactCount {
    match class {
        PolygonClass::Pentagon => pentagon_closed(n),
        PolygonClass::Hexagon => hexagon_closed(n),
        _ => unreachable!("checked before dispatch"),
    }
}

fn recurrence_route(class: PolygonClass, n: NetSize) -> ExactCount {
    match class {
        PolygonClass::Pentagon => pentagon_recurrence(n),
        PolygonClass::Hexagon => hexagon_recurrence(n),
        _ => unreachable!("checked before dispatch"),
    }
}

fn has_formula(class: PolygonClass) -> bool {
    matches!(class, PolygonClass::Pentagon | PolygonClass::Hexagon)
}

fn warn_oracle_ceiling(n: u32) {
    if n > ORACLE_CEILING {
        eprintln!(
            "warning: enumeration at n={n} visits on the order of n^6/120 candidates; \
             expect long runtimes above n={ORACLE_CEILING}"
        );
    }
}

#[derive(Serialize)]
struct CountOut {
    n: u32,
    method: &'static str,
    counts: Vec<ClassCount>,
}

#[derive(Serialize)]
struct ClassCount {
    class: PolygonClass,
    count: ExactCount,
}

fn cmd_count(n: u32, classes: &[ClassArg], method: Method, format: Format, threads: u32) -> ExitCode {
    let size = NetSize::new(n).expect("clap enforces n >= 1");
    let mut wanted: Vec<PolygonClass> = classes.iter().map(|&c| c.into()).collect();
    wanted.sort();
    wanted.dedup();

    if method != Method::Oracle {
        if let Some(bad) = wanted.iter().find(|c| !has_formula(**c)) {
            return usage_error(&format!(
                "no {} formula for class '{bad}'; use --method oracle",
                method.name()
            ));
        }
    }

    let counts: Vec<ClassCount> = match method {
        Method::Oracle => {
            warn_oracle_ceiling(n);
            let table = count_by_class_threaded(size, threads as usize);
            wanted
                .iter()
                .map(|&class| ClassCount {
                    class,
                    count: ExactCount::from(table.get(class)),
                })
                .collect()
        }
        Method::Closed => wanted
            .iter()
            .map(|&class| ClassCount {
                class,
                count: closed_route(class, size),
            })
            .collect(),
        Method::Recurrence => wanted
            .iter()
            .map(|&class| ClassCount {
                class,
                count: recurrence_route(class, size),
            })
            .collect(),
    };

    let out = CountOut {
        n,
        method: method.name(),
        counts,
    };
    match format {
        Format::Table => {
            let mut text = format!("n = {} ({})\n", out.n, out.method);
            for c in &out.counts {
                text.push_str(&format!("{:<14} {}\n", c.class.to_string(), c.count));
            }
            emit(&text);
        }
        Format::Csv => {
            let mut text = String::from("n,class,count\n");
            for c in &out.counts {
                text.push_str(&format!("{},{},{}\n", out.n, c.class, c.count));
            }
            emit(&text);
        }
        Format::Json => emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&out).expect("serialize counts")
        )),
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct SequenceOut {
    class: PolygonClass,
    method: &'static str,
    rows: Vec<SequenceRow>,
}

#[derive(Serialize)]
struct SequenceRow {
    n: u32,
    count: ExactCount,
}

fn cmd_sequence(
    class: ClassArg,
    n_max: u32,
    method: Method,
    format: SeqFormat,
    threads: u32,
) -> ExitCode {
    let class: PolygonClass = class.into();
    let size = NetSize::new(n_max).expect("clap enforces n >= 1");
    if method != Method::Oracle && !has_formula(class) {
        return usage_error(&format!(
            "no {} formula for class '{class}'; use --method oracle",
            method.name()
        ));
    }

    let rows: Vec<SequenceRow> = match method {
        Method::Closed => (1..=n_max)
            .map(|n| SequenceRow {
                n,
                count: closed_route(class, NetSize::new(n).unwrap()),
            })
            .collect(),
        Method::Recurrence => {
            // One telescoped sweep; solving per n would be quadratic.
            let rec = match class {
                PolygonClass::Pentagon => Order2Recurrence::pentagon(),
                _ => Order2Recurrence::hexagon(),
            };
            rec.values_to(size)
                .map(|(n, count)| SequenceRow { n, count })
                .collect()
        }
        Method::Oracle => {
            warn_oracle_ceiling(n_max);
            (1..=n_max)
                .map(|n| SequenceRow {
                    n,
                    count: ExactCount::from(
                        count_by_class_threaded(NetSize::new(n).unwrap(), threads as usize)
                            .get(class),
                    ),
                })
                .collect()
        }
    };

    match format {
        SeqFormat::Table => {
            let mut text = format!("{class} counts ({})\n", method.name());
            for row in &rows {
                text.push_str(&format!("{:>8}  {}\n", row.n, row.count));
            }
            emit(&text);
        }
        SeqFormat::Csv => {
            let mut text = String::from("n,count\n");
            for row in &rows {
                text.push_str(&format!("{},{}\n", row.n, row.count));
            }
            emit(&text);
        }
        SeqFormat::Bfile => {
            let mut text = String::new();
            for row in &rows {
                text.push_str(&format!("{} {}\n", row.n, row.count));
            }
            emit(&text);
        }
        SeqFormat::Json => {
            let out = SequenceOut {
                class,
                method: method.name(),
                rows,
            };
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&out).expect("serialize sequence")
            ));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(n_max: u32, formula_only: bool, format: Format, no_timing: bool, threads: u32) -> ExitCode {
    let size = NetSize::new(n_max).expect("clap enforces n >= 1");
    if !formula_only {
        warn_oracle_ceiling(n_max);
    }
    let mut report = if formula_only {
        formula_only_validate(size)
    } else {
        cross_validate(
            size,
            &[PolygonClass::Pentagon, PolygonClass::Hexagon],
            threads as usize,
        )
    };
    if no_timing {
        report = report.without_timing();
    }

    match format {
        Format::Table => emit(&render_report_table(&report)),
        Format::Csv => emit(&report.to_csv()),
        Format::Json => emit(&format!("{}\n", report.to_json())),
    }
    if report.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn render_report_table(report: &VerificationReport) -> String {
    let mut text = format!(
        "verification up to n = {} ({})\n",
        report.n_max,
        if report.formula_only {
            "closed form vs recurrence"
        } else {
            "oracle vs closed form vs recurrence"
        }
    );
    let mismatches: Vec<_> = report.records.iter().filter(|r| !r.agree).collect();
    text.push_str(&format!(
        "records: {} total, {} mismatched\n",
        report.records.len(),
        mismatches.len()
    ));
    for r in mismatches {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "  MISMATCH n={} {}: oracle={} closed={} recurrence={} forcing {}/{} angles_ok={:?}\n",
            r.n,
            r.class,
            opt(r.oracle),
            r.closed,
            r.recurrence,
            opt(r.forcing_oracle),
            r.forcing_closed,
            r.angle_law_ok
        ));
    }
    for failure in &report.identity_failures {
        text.push_str(&format!("  IDENTITY FAILURE: {failure}\n"));
    }
    if let Some(t) = &report.timing {
        text.push_str(&format!(
            "timing: oracle {} ms, closed {} ms, recurrence {} ms\n",
            t.oracle_ms, t.closed_ms, t.recurrence_ms
        ));
    }
    text.push_str(if report.verdict {
        "verdict: all routes agree\n"
    } else {
        "verdict: MISMATCH\n"
    });
    text
}

fn cmd_enumerate(n: u32, class: Option<ClassArg>, format: Format) -> ExitCode {
    let size = NetSize::new(n).expect("clap enforces n >= 1");
    if n > DUMP_CEILING {
        eprintln!(
            "warning: dumping every polygon at n={n}; output grows like n^6/120 records \
             (ceiling for comfortable dumps is n={DUMP_CEILING})"
        );
    }
    let filter = class.map(PolygonClass::from);
    let polygons: Vec<LatticePolygon> = enumerate_polygons(size, filter).collect();

    match format {
        Format::Table => {
            let mut text = String::new();
            for p in &polygons {
                let verts: Vec<String> = p
                    .vertices
                    .iter()
                    .map(|v| format!("({},{},{})", v.alpha(), v.beta(), v.gamma()))
                    .collect();
                text.push_str(&format!(
                    "{:<14} lo=({},{},{}) cut=({},{},{}) touches[OA={} OB={} AB={}] {}\n",
                    p.class.to_string(),
                    p.bounds.lo_alpha,
                    p.bounds.lo_beta,
                    p.bounds.lo_gamma,
                    p.bounds.cut_alpha,
                    p.bounds.cut_beta,
                    p.bounds.cut_gamma,
                    p.touches.oa,
                    p.touches.ob,
                    p.touches.ab,
                    verts.join(" ")
                ));
            }
            text.push_str(&format!("total: {}\n", polygons.len()));
            emit(&text);
        }
        Format::Csv => {
            let mut text = String::from(
                "n,class,lo_alpha,lo_beta,lo_gamma,cut_alpha,cut_beta,cut_gamma,\
                 touches_oa,touches_ob,touches_ab,vertices\n",
            );
            for p in &polygons {
                let verts: Vec<String> = p
                    .vertices
                    .iter()
                    .map(|v| format!("{}:{}:{}", v.alpha(), v.beta(), v.gamma()))
                    .collect();
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    n,
                    p.class,
                    p.bounds.lo_alpha,
                    p.bounds.lo_beta,
                    p.bounds.lo_gamma,
                    p.bounds.cut_alpha,
                    p.bounds.cut_beta,
                    p.bounds.cut_gamma,
                    p.touches.oa,
                    p.touches.ob,
                    p.touches.ab,
                    verts.join(";")
                ));
            }
            emit(&text);
        }
        Format::Json => emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&polygons).expect("serialize polygons")
        )),
    }
    ExitCode::SUCCESS
}
