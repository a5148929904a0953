//! Command-line frontend: exact Hurwitz tables, 1-point descendent series,
//! degree-1 invariants, and the identity verifiers.
//!
//! Exit codes: 0 = success / all checks pass, 1 = a verification mismatch,
//! 2 = usage or resource error. Output is deterministic: the same
//! invocation always produces byte-identical bytes.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use todasphere::closed_forms::{
    degree0_x_series, degree0_y_series, one_point_x_closed, one_point_y_closed, sinh_normalized,
};
use todasphere::degree_one::{degree1_invariant, DescendentKey};
use todasphere::genus01::{genus1_check, verify_genus0_small_phase};
use todasphere::hurwitz_table::TableError;
use todasphere::oracle::{hurwitz_oracle_table, OracleConfig, OracleError};
use todasphere::rational::format_rat;
use todasphere::series::Series;
use todasphere::toda::{hurwitz_by_recursion, one_point_by_recursion, toda_residual_h};
use todasphere::HurwitzTable;

use output::{Format, Table};

#[derive(Parser)]
#[command(
    name = "todasphere",
    version,
    about = "Exact descendent series and Hurwitz numbers of the sphere",
    long_about = "Exact-arithmetic computations around the Toda recursions: Hurwitz number \
                  tables cross-checked against symmetric-group counts, 1-point descendent \
                  series, degree-1 invariants, and mechanical identity verification. All \
                  output values are rationals in lowest terms."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hurwitz numbers H(g,d), by the recursion and/or the group-theoretic oracle
    Hurwitz(HurwitzArgs),
    /// The 1-point series Y_d and X_d, coefficient by coefficient
    OnePoint(OnePointArgs),
    /// A degree-1 descendent invariant from its index multiset
    DegreeOne(DegreeOneArgs),
    /// Run one of the identity verifiers
    Verify(VerifyArgs),
    /// Dump a named closed-form series
    Series(SeriesArgs),
}

#[derive(Args)]
struct HurwitzArgs {
    /// Largest genus in the table
    #[arg(long)]
    gmax: u32,
    /// Largest degree in the table (at least 1)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dmax: u32,
    /// Which pipeline(s) to run
    #[arg(long, value_enum, default_value_t = Method::Recursion)]
    method: Method,
    /// Oracle backend when the oracle runs
    #[arg(long, value_enum, default_value_t = Backend::DpSieve)]
    backend: Backend,
    /// Degree bound the oracle refuses to cross
    #[arg(long, env = "TODASPHERE_ORACLE_DMAX", default_value_t = 7)]
    oracle_dmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache file; recursion tables are written back here
    #[arg(long, env = "TODASPHERE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct OnePointArgs {
    /// Largest degree to print
    #[arg(long, default_value_t = 3)]
    dmax: u32,
    /// λ-truncation order
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Which series to print
    #[arg(long, value_enum, default_value_t = SeriesKind::Y)]
    series: SeriesKind,
    /// Recursion, closed form, or both with a match column
    #[arg(long, value_enum, default_value_t = Source::Both)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct DegreeOneArgs {
    /// Comma-separated descendent indices, e.g. "2,2,4"; empty for ⟨⟩
    key: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identity to verify
    #[arg(value_enum)]
    target: Target,
    /// Genus bound (toda-h, degree1-gen)
    #[arg(long)]
    gmax: Option<u32>,
    /// Degree bound (toda-h, one-point)
    #[arg(long)]
    dmax: Option<u32>,
    /// Truncation order: λ-order for one-point, y-order for genus0,
    /// largest descendent index for degree1-gen
    #[arg(long)]
    order: Option<usize>,
    /// Verify a cached table instead of recomputing (toda-h)
    #[arg(long, env = "TODASPHERE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct SeriesArgs {
    /// Which series to dump
    #[arg(long, value_enum)]
    name: SeriesName,
    /// λ-truncation order
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Direct,
    DpSieve,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Y,
    X,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Recursion,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Genus0,
    Genus1,
    TodaH,
    Degree1Gen,
    OnePoint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    /// sinh(λ/2)/(λ/2)
    Sinh,
    /// Its inverse, the degree-0 y-seed
    Degree0Y,
    /// 2·S^{−1}·log S, the degree-0 x-seed
    Degree0X,
}

/// Failures mapped to exit codes: mismatches exit 1, everything the user
/// must fix (usage, resources, unreadable caches) exits 2.
enum Failure {
    Mismatch(String),
    Usage(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Mismatch(msg) => {
                eprintln!("FAIL: {msg}");
                ExitCode::from(1)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hurwitz(args) => cmd_hurwitz(args),
        Command::OnePoint(args) => cmd_one_point(args),
        Command::DegreeOne(args) => cmd_degree_one(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Series(args) => cmd_series(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}

fn cmd_hurwitz(args: HurwitzArgs) -> Result<(), Failure> {
    let config = OracleConfig {
        max_degree: args.oracle_dmax,
    };
    let recursion = match args.method {
        Method::Recursion | Method::Both => Some(hurwitz_by_recursion(args.gmax, args.dmax)),
        Method::Oracle => None,
    };
    let oracle = match args.method {
        Method::Oracle | Method::Both => Some(oracle_tables(&args, &config)?),
        Method::Recursion => None,
    };

    let mut table = Table::new(args.format);
    let mut columns = vec!["g".to_string(), "d".to_string()];
    if recursion.is_some() {
        columns.push(if args.method == Method::Both {
            "recursion".to_string()
        } else {
            "H".to_string()
        });
    }
    for name in oracle_column_names(&args) {
        columns.push(name);
    }
    if args.method == Method::Both {
        columns.push("match".to_string());
    }
    table.header(columns);

    let mut all_match = true;
    for g in 0..=args.gmax {
        for d in 1..=args.dmax {
            let mut row = vec![g.to_string(), d.to_string()];
            let mut values = Vec::new();
            if let Some(t) = &recursion {
                values.push(t.get(g, d).expect("recursion fills its rectangle").clone());
            }
            if let Some(tables) = &oracle {
                for t in tables {
                    values.push(t.get(g, d).expect("oracle fills its rectangle").clone());
                }
            }
            let agree = values.windows(2).all(|w| w[0] == w[1]);
            all_match &= agree;
            row.extend(values.iter().map(format_rat));
            if args.method == Method::Both {
                row.push(if agree { "yes" } else { "NO" }.to_string());
            }
            table.row(row);
        }
    }
    table.finish();

    if let (Some(t), Some(path)) = (&recursion, &args.cache) {
        cache::write_table(path, t).map_err(Failure::Usage)?;
    }
    if !all_match {
        return Err(Failure::Mismatch(
            "recursion and oracle disagree on at least one cell".into(),
        ));
    }
    Ok(())
}

fn oracle_column_names(args: &HurwitzArgs) -> Vec<String> {
    match (args.method, args.backend) {
        (Method::Recursion, _) => vec![],
        (_, Backend::Direct) => vec!["oracle[direct]".to_string()],
        (_, Backend::DpSieve) => vec!["oracle[dp-sieve]".to_string()],
        (_, Backend::Both) => vec![
            "oracle[dp-sieve]".to_string(),
            "oracle[direct]".to_string(),
        ],
    }
}

fn oracle_tables(args: &HurwitzArgs, config: &OracleConfig) -> Result<Vec<HurwitzTable>, Failure> {
    let mut tables = Vec::new();
    if matches!(args.backend, Backend::DpSieve | Backend::Both) {
        tables.push(hurwitz_oracle_table(args.gmax, args.dmax, config)?);
    }
    if matches!(args.backend, Backend::Direct | Backend::Both) {
        let mut t = HurwitzTable::new(args.gmax, args.dmax);
        for g in 0..=args.gmax {
            for d in 1..=args.dmax {
                t.insert(
                    g,
                    d,
                    todasphere::oracle::hurwitz_oracle_direct(g, d, config)?,
                );
            }
        }
        tables.push(t);
    }
    Ok(tables)
}

fn cmd_one_point(args: OnePointArgs) -> Result<(), Failure> {
    let recursion = match args.source {
        Source::Recursion | Source::Both => Some(one_point_by_recursion(args.dmax, args.order)),
        Source::Closed => None,
    };
    let closed = |d: u32, kind: SeriesKind| -> Series {
        match (kind, d) {
            (SeriesKind::Y, 0) => degree0_y_series(args.order),
            (SeriesKind::Y, d) => one_point_y_closed(d, args.order),
            (SeriesKind::X, 0) => degree0_x_series(args.order),
            (SeriesKind::X, d) => one_point_x_closed(d, args.order),
            (SeriesKind::Both, _) => unreachable!("expanded before lookup"),
        }
    };

    let kinds: &[(SeriesKind, &str)] = match args.series {
        SeriesKind::Y => &[(SeriesKind::Y, "Y")],
        SeriesKind::X => &[(SeriesKind::X, "X")],
        SeriesKind::Both => &[(SeriesKind::Y, "Y"), (SeriesKind::X, "X")],
    };

    let mut table = Table::new(args.format);
    let mut columns = vec!["series".into(), "d".into(), "power".into()];
    match args.source {
        Source::Recursion => columns.push("recursion".into()),
        Source::Closed => columns.push("closed".into()),
        Source::Both => {
            columns.push("recursion".into());
            columns.push("closed".into());
            columns.push("match".into());
        }
    }
    table.header(columns);

    let mut all_match = true;
    for &(kind, label) in kinds {
        for d in 0..=args.dmax {
            let from_recursion = recursion.as_ref().map(|list| {
                let (y, x) = &list[d as usize];
                match kind {
                    SeriesKind::Y => y.clone(),
                    SeriesKind::X => x.clone(),
                    SeriesKind::Both => unreachable!(),
                }
            });
            let from_closed = match args.source {
                Source::Closed | Source::Both => Some(closed(d, kind)),
                Source::Recursion => None,
            };
            for power in 0..=args.order {
                let mut row = vec![label.to_string(), d.to_string(), power.to_string()];
                let mut values = Vec::new();
                if let Some(s) = &from_recursion {
                    values.push(s.coeff(power).clone());
                }
                if let Some(s) = &from_closed {
                    values.push(s.coeff(power).clone());
                }
                let agree = values.windows(2).all(|w| w[0] == w[1]);
                all_match &= agree;
                row.extend(values.iter().map(format_rat));
                if args.source == Source::Both {
                    row.push(if agree { "yes" } else { "NO" }.to_string());
                }
                table.row(row);
            }
        }
    }
    table.finish();
    if !all_match {
        return Err(Failure::Mismatch(
            "recursion and closed form disagree on at least one coefficient".into(),
        ));
    }
    Ok(())
}

fn cmd_degree_one(args: DegreeOneArgs) -> Result<(), Failure> {
    let key = DescendentKey::parse(&args.key).map_err(Failure::Usage)?;
    let value = degree1_invariant(&key);
    match args.format {
        Format::Table => println!("{}", format_rat(&value)),
        Format::Csv | Format::Json => {
            let mut table = Table::new(args.format);
            table.header(vec!["key".into(), "value".into()]);
            table.row(vec![
                key.indices()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                format_rat(&value),
            ]);
            table.finish();
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    match args.target {
        Target::Genus0 => {
            let order = args.order.unwrap_or(20);
            if order < 2 {
                return Err(Failure::Usage("genus0 needs --order >= 2".into()));
            }
            if verify_genus0_small_phase(order) {
                println!("PASS: genus-0 small-phase-space identity through y_0^{order}");
                Ok(())
            } else {
                Err(Failure::Mismatch("genus-0 identity has a nonzero residual".into()))
            }
        }
        Target::Genus1 => {
            let check = genus1_check();
            println!(
                "left side: {} terms over Δ², right side: {} terms over Δ²",
                check.lhs_numerator.term_count(),
                check.rhs_numerator.term_count()
            );
            println!("residual: {}", check.residual);
            if check.holds() {
                println!("PASS: genus-1 identity in the localized differential ring");
                Ok(())
            } else {
                Err(Failure::Mismatch("genus-1 residual polynomial is nonzero".into()))
            }
        }
        Target::TodaH => {
            let table = match &args.cache {
                Some(path) => cache::read_table(path).map_err(Failure::Usage)?,
                None => {
                    hurwitz_by_recursion(args.gmax.unwrap_or(3), args.dmax.unwrap_or(5))
                }
            };
            // Bounds beyond the table surface as missing-entry usage errors.
            let gmax = args.gmax.unwrap_or(table.gmax());
            let dmax = args.dmax.unwrap_or(table.dmax());
            let residual = toda_residual_h(&table, gmax, dmax)?;
            match residual.first_nonzero() {
                None => {
                    println!(
                        "PASS: Toda functional residual vanishes through genus {gmax}, degree {dmax}"
                    );
                    Ok(())
                }
                Some((q_power, lambda_power, value)) => Err(Failure::Mismatch(format!(
                    "Toda functional residual nonzero at q^{q_power} λ^{lambda_power} \
                     (degree d={}, genus 2g={lambda_power}): {}",
                    q_power + 1,
                    format_rat(value)
                ))),
            }
        }
        Target::Degree1Gen => {
            let gmax = args.gmax.unwrap_or(4);
            let max_index = args.order.unwrap_or(8) as u32;
            if !max_index.is_multiple_of(2) {
                return Err(Failure::Usage("--order must be even for degree1-gen".into()));
            }
            let report = todasphere::degree_one::degree1_generating_check(
                gmax,
                max_index,
                2 * gmax + 2,
            );
            if let Some(m) = report.mismatches.first() {
                return Err(Failure::Mismatch(format!(
                    "degree-1 generating identity fails at monomial {:?}, λ^{}: \
                     exponential side {}, invariant side {}",
                    m.indices,
                    m.lambda_power,
                    format_rat(&m.exponential_side),
                    format_rat(&m.invariant_side)
                )));
            }
            if !todasphere::degree_one::degree1_consistency_with_y1(20) {
                return Err(Failure::Mismatch(
                    "degree-1 invariants disagree with the closed Y_1 series".into(),
                ));
            }
            println!(
                "PASS: degree-1 generating identity through genus {gmax} over y_0..y_{max_index} \
                 ({} monomials, {} coefficients)",
                report.monomials_checked, report.coefficients_checked
            );
            Ok(())
        }
        Target::OnePoint => {
            let dmax = args.dmax.unwrap_or(6);
            let order = args.order.unwrap_or(20);
            let by_recursion = one_point_by_recursion(dmax, order);
            for d in 1..=dmax {
                let (y, x) = &by_recursion[d as usize];
                let yc = one_point_y_closed(d, order);
                let xc = one_point_x_closed(d, order);
                for power in 0..=order {
                    if y.coeff(power) != yc.coeff(power) {
                        return Err(Failure::Mismatch(format!(
                            "Y_{d} differs at λ^{power}: recursion {}, closed {}",
                            format_rat(y.coeff(power)),
                            format_rat(yc.coeff(power))
                        )));
                    }
                    if x.coeff(power) != xc.coeff(power) {
                        return Err(Failure::Mismatch(format!(
                            "X_{d} differs at λ^{power}: recursion {}, closed {}",
                            format_rat(x.coeff(power)),
                            format_rat(xc.coeff(power))
                        )));
                    }
                }
            }
            println!("PASS: 1-point recursion matches closed forms through d={dmax}, λ^{order}");
            Ok(())
        }
    }
}

fn cmd_series(args: SeriesArgs) -> Result<(), Failure> {
    let series = match args.name {
        SeriesName::Sinh => sinh_normalized(args.order),
        SeriesName::Degree0Y => degree0_y_series(args.order),
        SeriesName::Degree0X => degree0_x_series(args.order),
    };
    let mut table = Table::new(args.format);
    table.header(vec!["power".into(), "coefficient".into()]);
    for power in 0..=args.order {
        table.row(vec![power.to_string(), format_rat(series.coeff(power))]);
    }
    table.finish();
    Ok(())
}
