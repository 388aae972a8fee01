//! Command-line toolkit for canonical delta-correlated Huffman sequences:
//! construction, verification, Fourier tables, z-zero geometry, and grid
//! sweeps, exported as JSON or CSV for downstream plotting.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use huffman_core::correlate::{acorr_aperiodic, is_canonical, metrics, DEFAULT_CANONICAL_TOL};
use huffman_core::exec;
use huffman_core::families::{
    build_fib, build_fib_cyclic, build_int, build_tangent, build_three, fixture, fixtures,
};
use huffman_core::fibpoly::run_identity_suite;
use huffman_core::roots::{circle_fit, z_zeros};
use huffman_core::spectral::{
    dft, dft_closed_cyclic, flatness, flatness_bound, power_spectrum_closed,
};
use huffman_core::{Family, HuffmanError, HuffmanSequence, Numeric, Scale};

use render::{
    csv_float, csv_metric, csv_numeric, csv_scale, csv_text, float_value, json_text, metric_value,
    numeric_value, scale_value, sequence_value,
};

/// Terminal failure. Usage, parse, and construction problems exit 2;
/// verified property failures exit 1.
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<HuffmanError> for Failure {
    fn from(e: HuffmanError) -> Self {
        Failure {
            code: 2,
            kind: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Skew-symmetric Fibonacci-polynomial sequence, N = 4n+3.
    Fib,
    /// The same rotated so the middle element leads.
    FibCyclic,
    /// All-integer family, any N >= 3, s != 0.
    Int,
    /// Powers-of-three family, odd N >= 5, no scale.
    Three,
    /// Synthesized from the tangent-form spectrum of length L = 4n+1.
    Tangent,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::Fib => "fib",
            FamilyArg::FibCyclic => "fib-cyclic",
            FamilyArg::Int => "int",
            FamilyArg::Three => "three",
            FamilyArg::Tangent => "tangent",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "huffman",
    version,
    about = "Canonical delta-correlated Huffman sequences: generate, verify, analyze, sweep"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Relative tolerance for canonical checks; 0 demands exact zeros.
    #[arg(long, global = true, default_value_t = DEFAULT_CANONICAL_TOL)]
    tol: f64,
    /// Seed for the randomized identity suite.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a sequence and emit it with its quality report.
    Generate(SequenceSpec),
    /// Check delta-correlation and report quality metrics (exit 1 if not).
    Verify(SequenceSpec),
    /// Per-bin Fourier table with closed-form comparison columns.
    Spectrum(SpectrumArgs),
    /// Z-transform zeros with circle clustering and phase-gap report.
    Zeros(SequenceSpec),
    /// Grid run over lengths and scales, one CSV row per sequence.
    Sweep(SweepArgs),
    /// List the stored non-Fibonacci fixtures with their reports.
    Fixtures,
    /// Run the randomized Fibonacci-polynomial identity suite.
    Identities(IdentityArgs),
}

#[derive(Args)]
struct SequenceSpec {
    /// Family to construct.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Sequence length N (tangent: spectrum length L).
    #[arg(long)]
    length: Option<usize>,
    /// Scale parameter: "p/q" or an integer is exact, a decimal is float.
    #[arg(long, allow_hyphen_values = true)]
    scale: Option<String>,
    /// Stored fixture label (H_non_11, H_non_13, H_non_9).
    #[arg(long)]
    fixture: Option<String>,
    /// Load elements from a JSON report or a token file.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    spec: SequenceSpec,
    /// Take bins from the closed cyclic form instead of the transform.
    #[arg(long)]
    closed_form: bool,
    /// Take bins from the reference transform (the default).
    #[arg(long, conflicts_with = "closed_form")]
    fft: bool,
    /// Also write two-column q/power plot data to this file.
    #[arg(long, value_name = "PATH")]
    emit_plot_data: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Family to sweep.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Length range start:stop:step (stop inclusive when hit exactly).
    #[arg(long)]
    lengths: String,
    /// Float scale range start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    scales: Option<String>,
    /// Explicit comma-separated scale tokens, exact or float per token.
    #[arg(long, conflicts_with = "scales", allow_hyphen_values = true)]
    scale_list: Option<String>,
    /// Comma-separated scale values to skip.
    #[arg(long, allow_hyphen_values = true)]
    exclude: Option<String>,
}

#[derive(Args)]
struct IdentityArgs {
    /// Randomized cases per identity kind.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
}

fn parse_scale(token: &str) -> Result<Scale, Failure> {
    token
        .parse::<Scale>()
        .map_err(|e| Failure::usage(format!("bad scale {token:?}: {e}")))
}

fn build_family(
    family: FamilyArg,
    n: usize,
    scale: Option<&Scale>,
) -> Result<HuffmanSequence, Failure> {
    let seq = match (family, scale) {
        (FamilyArg::Three, None) => build_three(n),
        (FamilyArg::Three, Some(_)) => {
            return Err(Failure::usage("the three family takes no --scale"))
        }
        (_, None) => return Err(Failure::usage("--scale is required for this family")),
        (FamilyArg::Fib, Some(s)) => build_fib(n, s),
        (FamilyArg::FibCyclic, Some(s)) => build_fib_cyclic(n, s),
        (FamilyArg::Int, Some(s)) => build_int(n, s),
        (FamilyArg::Tangent, Some(s)) => build_tangent(n, s),
    };
    Ok(seq?)
}

fn resolve_sequence(spec: &SequenceSpec) -> Result<HuffmanSequence, Failure> {
    let sources =
        spec.family.is_some() as u8 + spec.fixture.is_some() as u8 + spec.input.is_some() as u8;
    if sources != 1 {
        return Err(Failure::usage(
            "give exactly one of --family, --fixture, --input",
        ));
    }
    if let Some(path) = &spec.input {
        return input::load_sequence(path);
    }
    if let Some(label) = &spec.fixture {
        return fixture(label).ok_or_else(|| Failure::usage(format!("unknown fixture {label:?}")));
    }
    let family = spec.family.expect("one source present");
    let n = spec
        .length
        .ok_or_else(|| Failure::usage("--length is required with --family"))?;
    let scale = spec.scale.as_deref().map(parse_scale).transpose()?;
    build_family(family, n, scale.as_ref())
}

/// Canonical verdict plus quality metrics for one sequence.
struct Quality {
    canonical: bool,
    peak: Numeric,
    end_value: Numeric,
    max_interior_abs: Numeric,
    merit_factor: Option<Numeric>,
    peak_ratio: Option<Numeric>,
    flatness: f64,
    tol: f64,
}

fn quality(seq: &HuffmanSequence, tol: f64) -> Result<Quality, Failure> {
    let report = is_canonical(&acorr_aperiodic(seq), tol)?;
    let m = metrics(seq)?;
    Ok(Quality {
        canonical: report.is_canonical,
        peak: report.peak,
        end_value: report.end_value,
        max_interior_abs: report.max_interior_abs,
        merit_factor: m.merit_factor,
        peak_ratio: m.peak_ratio,
        flatness: m.spectral_flatness,
        tol,
    })
}

impl Quality {
    fn to_value(&self) -> Value {
        json!({
            "canonical": self.canonical,
            "peak": numeric_value(&self.peak),
            "end_value": numeric_value(&self.end_value),
            "max_interior_abs": numeric_value(&self.max_interior_abs),
            "merit_factor": metric_value(&self.merit_factor),
            "peak_ratio": metric_value(&self.peak_ratio),
            "flatness": float_value(self.flatness),
            "tolerance": float_value(self.tol),
        })
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_generate(cli: &Cli, spec: &SequenceSpec) -> Result<u8, Failure> {
    let seq = resolve_sequence(spec)?;
    let q = quality(&seq, cli.tol)?;
    let text = match cli.format {
        Format::Json => json_text(&sequence_value(&seq, q.to_value())),
        Format::Csv => csv_text("element", seq.elements.iter().map(csv_numeric).collect()),
    };
    emit(cli, &text)?;
    Ok(0)
}

fn cmd_verify(cli: &Cli, spec: &SequenceSpec) -> Result<u8, Failure> {
    let seq = resolve_sequence(spec)?;
    let q = quality(&seq, cli.tol)?;
    let text = match cli.format {
        Format::Json => json_text(&sequence_value(&seq, q.to_value())),
        Format::Csv => {
            let rows = vec![
                format!("family,{}", seq.family.name()),
                format!("label,{}", seq.label.as_deref().unwrap_or("")),
                format!("length,{}", seq.len()),
                format!("scale,{}", csv_scale(&seq.scale)),
                format!("canonical,{}", q.canonical),
                format!("peak,{}", csv_numeric(&q.peak)),
                format!("end_value,{}", csv_numeric(&q.end_value)),
                format!("max_interior_abs,{}", csv_numeric(&q.max_interior_abs)),
                format!("merit_factor,{}", csv_metric(&q.merit_factor)),
                format!("peak_ratio,{}", csv_metric(&q.peak_ratio)),
                format!("flatness,{}", csv_float(q.flatness)),
                format!("tolerance,{}", csv_float(q.tol)),
            ];
            csv_text("field,value", rows)
        }
    };
    emit(cli, &text)?;
    Ok(if q.canonical { 0 } else { 1 })
}

fn cmd_spectrum(cli: &Cli, args: &SpectrumArgs) -> Result<u8, Failure> {
    let seq = resolve_sequence(&args.spec)?;
    let n = seq.len();
    let bins = if args.closed_form {
        match (&seq.family, &seq.scale) {
            (Family::FibHuffmanCyclic, Some(s)) => (0..n)
                .map(|q| dft_closed_cyclic(n, s, q))
                .collect::<huffman_core::Result<Vec<_>>>()?,
            _ => {
                return Err(Failure::usage(
                    "--closed-form bins exist for the fib-cyclic family only",
                ))
            }
        }
    } else {
        dft(&seq).bins
    };

    let closed_power = match (&seq.family, &seq.scale) {
        (Family::FibHuffman | Family::FibHuffmanCyclic, Some(s)) => Some(
            (0..n)
                .map(|q| power_spectrum_closed(n, s, q))
                .collect::<huffman_core::Result<Vec<_>>>()?,
        ),
        _ => None,
    };

    let source = if args.closed_form {
        "closed-form"
    } else {
        "fft"
    };
    let mut rows_json = Vec::with_capacity(n);
    let mut rows_csv = Vec::with_capacity(n);
    let mut plot = String::new();
    for (q, bin) in bins.iter().enumerate() {
        let power = bin.norm_sqr();
        let closed = closed_power.as_ref().map(|v| v[q]);
        let diff = closed.map(|c| (power - c).abs() / c.abs().max(f64::MIN_POSITIVE));
        rows_json.push(json!({
            "q": q,
            "re": float_value(bin.re),
            "im": float_value(bin.im),
            "magnitude": float_value(bin.norm()),
            "power": float_value(power),
            "closed_form_power": closed.map(float_value).unwrap_or(Value::Null),
            "abs_rel_diff": diff.map(float_value).unwrap_or(Value::Null),
        }));
        rows_csv.push(format!(
            "{q},{},{},{},{},{},{}",
            csv_float(bin.re),
            csv_float(bin.im),
            csv_float(bin.norm()),
            csv_float(power),
            closed.map(csv_float).unwrap_or_default(),
            diff.map(csv_float).unwrap_or_default(),
        ));
        plot.push_str(&format!("{q} {}\n", csv_float(power)));
    }

    if let Some(path) = &args.emit_plot_data {
        std::fs::write(path, plot)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let text = match cli.format {
        Format::Json => json_text(&json!({
            "family": seq.family.name(),
            "length": n,
            "scale": scale_value(&seq.scale),
            "source": source,
            "bins": rows_json,
        })),
        Format::Csv => csv_text(
            "q,re,im,magnitude,power,closed_form_power,abs_rel_diff",
            rows_csv,
        ),
    };
    emit(cli, &text)?;
    Ok(0)
}

fn cmd_zeros(cli: &Cli, spec: &SequenceSpec) -> Result<u8, Failure> {
    let seq = resolve_sequence(spec)?;
    let roots = z_zeros(&seq)?;
    let report = circle_fit(&roots, 1e-6, 1e-6);
    let mut sorted = roots;
    sorted.sort_by(|a, b| {
        (a.norm(), a.arg())
            .partial_cmp(&(b.norm(), b.arg()))
            .expect("finite roots")
    });

    let text = match cli.format {
        Format::Json => {
            let roots_json: Vec<Value> = sorted
                .iter()
                .map(|z| {
                    json!({
                        "re": float_value(z.re),
                        "im": float_value(z.im),
                        "radius": float_value(z.norm()),
                        "angle": float_value(z.arg()),
                    })
                })
                .collect();
            let clusters: Vec<Value> = report
                .clusters
                .iter()
                .map(|c| {
                    json!({
                        "radius": float_value(c.radius),
                        "count": c.count,
                        "angle_gaps": c.angle_gaps.iter().copied().map(float_value).collect::<Vec<_>>(),
                        "equi_angular": c.equi_angular,
                    })
                })
                .collect();
            json_text(&json!({
                "family": seq.family.name(),
                "label": seq.label,
                "length": seq.len(),
                "scale": scale_value(&seq.scale),
                "roots": roots_json,
                "clusters": clusters,
                "max_radius_dev": float_value(report.max_radius_dev),
                "max_angle_dev": float_value(report.max_angle_dev),
                "equi_angular": report.equi_angular,
                "reciprocal_pairs": report.reciprocal_pairs,
            }))
        }
        Format::Csv => csv_text(
            "re,im,radius,angle",
            sorted
                .iter()
                .map(|z| {
                    format!(
                        "{},{},{},{}",
                        csv_float(z.re),
                        csv_float(z.im),
                        csv_float(z.norm()),
                        csv_float(z.arg())
                    )
                })
                .collect(),
        ),
    };
    emit(cli, &text)?;
    Ok(0)
}

fn parse_lengths(token: &str) -> Result<Vec<usize>, Failure> {
    let parts: Vec<&str> = token.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Failure::usage(format!(
            "--lengths wants start:stop:step, got {token:?}"
        )));
    };
    let parse = |t: &str| {
        t.parse::<usize>()
            .map_err(|e| Failure::usage(format!("bad length bound {t:?}: {e}")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if step == 0 || start > stop {
        return Err(Failure::usage("--lengths needs step > 0 and start <= stop"));
    }
    Ok((start..=stop).step_by(step).collect())
}

fn parse_scale_range(token: &str) -> Result<Vec<Scale>, Failure> {
    let parts: Vec<&str> = token.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Failure::usage(format!(
            "--scales wants start:stop:step, got {token:?}"
        )));
    };
    let parse = |t: &str| {
        t.parse::<f64>()
            .map_err(|e| Failure::usage(format!("bad scale bound {t:?}: {e}")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(step > 0.0) || start > stop {
        return Err(Failure::usage("--scales needs step > 0 and start <= stop"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| Scale::from_f64(start + k as f64 * step))
        .collect())
}

fn length_ok(family: FamilyArg, n: usize) -> bool {
    match family {
        FamilyArg::Fib | FamilyArg::FibCyclic => n >= 7 && n % 4 == 3,
        FamilyArg::Tangent => n >= 5 && n % 4 == 1,
        FamilyArg::Three => n >= 5 && n % 2 == 1,
        FamilyArg::Int => n >= 3,
    }
}

fn sweep_row(family: FamilyArg, n: usize, scale: &Option<Scale>, tol: f64) -> (String, bool) {
    let name = family.name();
    let scale_cell = csv_scale(scale);
    let built = match (family, scale) {
        (FamilyArg::Three, None) => build_three(n),
        (FamilyArg::Fib, Some(s)) => build_fib(n, s),
        (FamilyArg::FibCyclic, Some(s)) => build_fib_cyclic(n, s),
        (FamilyArg::Int, Some(s)) => build_int(n, s),
        (FamilyArg::Tangent, Some(s)) => build_tangent(n, s),
        _ => unreachable!("scale presence is validated before the run"),
    };
    let seq = match built {
        Ok(seq) => seq,
        Err(e) => {
            return (
                format!("{name},{n},{scale_cell},,,,,,\"{}: {e}\"", e.code()),
                false,
            )
        }
    };
    let report = is_canonical(&acorr_aperiodic(&seq), tol).expect("aperiodic profile");
    let flat = flatness(&seq).expect("family members are never all zero");
    let bound_cell = match (family, scale) {
        (FamilyArg::Fib | FamilyArg::FibCyclic, Some(s)) => {
            flatness_bound(n, s).map(csv_float).unwrap_or_default()
        }
        _ => String::new(),
    };
    let row = format!(
        "{name},{n},{scale_cell},{},{},{},{},{bound_cell},",
        report.is_canonical,
        csv_numeric(&report.peak),
        csv_numeric(&report.max_interior_abs),
        csv_float(flat),
    );
    (row, report.is_canonical)
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> Result<u8, Failure> {
    let lengths = parse_lengths(&args.lengths)?;
    if let Some(&bad) = lengths.iter().find(|&&n| !length_ok(args.family, n)) {
        return Err(Failure::usage(format!(
            "length {bad} is not valid for the {} family",
            args.family.name()
        )));
    }

    let mut scales: Vec<Option<Scale>> = match (args.family, &args.scales, &args.scale_list) {
        (FamilyArg::Three, None, None) => vec![None],
        (FamilyArg::Three, _, _) => return Err(Failure::usage("the three family takes no scales")),
        (_, Some(range), None) => parse_scale_range(range)?.into_iter().map(Some).collect(),
        (_, None, Some(list)) => list
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_scale(t.trim()).map(Some))
            .collect::<Result<_, _>>()?,
        (_, None, None) => {
            return Err(Failure::usage(
                "give --scales or --scale-list for this family",
            ))
        }
        (_, Some(_), Some(_)) => unreachable!("the flags conflict"),
    };
    if let Some(exclude) = &args.exclude {
        let banned = exclude
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_scale(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        scales.retain(|s| match s {
            None => true,
            Some(s) => !banned
                .iter()
                .any(|b| (s.approx() - b.approx()).abs() <= 1e-12),
        });
    }
    scales.sort_by(|a, b| {
        let key = |s: &Option<Scale>| s.as_ref().map(Scale::approx).unwrap_or(0.0);
        key(a).partial_cmp(&key(b)).expect("finite scales")
    });
    if scales.is_empty() {
        return Err(Failure::usage("the scale grid is empty"));
    }

    let grid: Vec<(usize, Option<Scale>)> = lengths
        .iter()
        .flat_map(|&n| scales.iter().cloned().map(move |s| (n, s)))
        .collect();
    let rows = exec::map_slice(&grid, |(n, s)| sweep_row(args.family, *n, s, cli.tol));

    let all_ok = rows.iter().all(|(_, ok)| *ok);
    let text = csv_text(
        "family,length,scale,canonical,peak,max_interior_abs,flatness,flatness_bound,error",
        rows.into_iter().map(|(row, _)| row).collect(),
    );
    emit(cli, &text)?;
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_fixtures(cli: &Cli) -> Result<u8, Failure> {
    let all = fixtures();
    let text = match cli.format {
        Format::Json => {
            let items = all
                .iter()
                .map(|seq| Ok(sequence_value(seq, quality(seq, cli.tol)?.to_value())))
                .collect::<Result<Vec<_>, Failure>>()?;
            json_text(&Value::Array(items))
        }
        Format::Csv => {
            let rows = all
                .iter()
                .map(|seq| {
                    let q = quality(seq, cli.tol)?;
                    Ok(format!(
                        "{},{},{},{},{},{},{},{}",
                        seq.label.as_deref().unwrap_or(""),
                        seq.len(),
                        q.canonical,
                        csv_numeric(&q.peak),
                        csv_numeric(&q.end_value),
                        csv_metric(&q.merit_factor),
                        csv_metric(&q.peak_ratio),
                        csv_float(q.flatness),
                    ))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            csv_text(
                "label,length,canonical,peak,end_value,merit_factor,peak_ratio,flatness",
                rows,
            )
        }
    };
    emit(cli, &text)?;
    Ok(0)
}

fn cmd_identities(cli: &Cli, args: &IdentityArgs) -> Result<u8, Failure> {
    let reports = run_identity_suite(cli.seed, args.cases);
    let all_ok = reports.iter().all(|r| r.failures == 0);
    let text = match cli.format {
        Format::Json => {
            let items: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "kind": r.kind, "cases": r.cases, "failures": r.failures }))
                .collect();
            json_text(&json!({
                "seed": cli.seed,
                "all_passed": all_ok,
                "suites": items,
            }))
        }
        Format::Csv => csv_text(
            "kind,cases,failures",
            reports
                .iter()
                .map(|r| format!("{},{},{}", r.kind, r.cases, r.failures))
                .collect(),
        ),
    };
    emit(cli, &text)?;
    Ok(if all_ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(spec) => cmd_generate(&cli, spec),
        Command::Verify(spec) => cmd_verify(&cli, spec),
        Command::Spectrum(args) => cmd_spectrum(&cli, args),
        Command::Zeros(spec) => cmd_zeros(&cli, spec),
        Command::Sweep(args) => cmd_sweep(&cli, args),
        Command::Fixtures => cmd_fixtures(&cli),
        Command::Identities(args) => cmd_identities(&cli, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match cli.format {
                Format::Json => eprintln!(
                    "{}",
                    json!({ "error": { "kind": f.kind, "message": f.message } })
                ),
                Format::Csv => eprintln!("error ({}): {}", f.kind, f.message),
            }
            ExitCode::from(f.code)
        }
    }
}
