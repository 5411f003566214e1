use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sphere_logdet::chebyshev::v_coefficients;
use sphere_logdet::cli::{
    evaluate, exit_code, points_k, points_limiting, points_paneitz, render_svg, scan, write_csv,
    Abscissa, MethodSelector, ScanRow, EXIT_USAGE,
};
use sphere_logdet::quadrature::QuadratureSpec;
use sphere_logdet::spectral::{
    closed_form_p4, logdet_direct, max_pairwise_discrepancy, ClosedForm, SpherePoint,
};
use sphere_logdet::{Error, Result};

/// Log-determinants of GJMS operators on odd-dimensional round spheres.
#[derive(Parser)]
#[command(name = "sphere-logdet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate log det P_2k(d) at one point.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[command(flatten)]
        opts: MethodOpts,
    },
    /// All admissible k at fixed d.
    ScanK {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[command(flatten)]
        opts: MethodOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The limiting order k = (d-1)/2 over a range of odd d.
    Limiting {
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        d_min: i64,
        #[arg(long, default_value_t = 21, allow_negative_numbers = true)]
        d_max: i64,
        #[command(flatten)]
        opts: MethodOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The Paneitz operator (k = 2) over a range of odd d.
    Paneitz {
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        d_min: i64,
        #[arg(long, default_value_t = 21, allow_negative_numbers = true)]
        d_max: i64,
        #[command(flatten)]
        opts: MethodOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the determinant product rule for P_2k.
    Rules {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Closed-form Paneitz log-determinant for d = 5 or 7.
    ClosedForm {
        #[arg(long)]
        d: u32,
        /// Relative tolerance for the quadrature comparison.
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },
}

#[derive(Args)]
struct MethodOpts {
    /// direct, sum, chebyshev, product or all.
    #[arg(long, default_value = "direct")]
    method: MethodSelector,
    /// Target relative tolerance of each quadrature.
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
}

impl MethodOpts {
    fn spec(&self) -> Result<QuadratureSpec> {
        let spec = QuadratureSpec::default().with_rel_tol(self.tol);
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args)]
struct OutputOpts {
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG chart here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn run_eval(d: i64, k: i64, opts: &MethodOpts) -> Result<()> {
    let point = SpherePoint::new(d, k)?;
    let results = evaluate(point, opts.method, &opts.spec()?)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "log det P_{}({})", 2 * point.k(), point.d())?;
    for r in &results {
        writeln!(
            out,
            "{:<13} {:>24.16e}  ± {:.1e}",
            r.method.as_str(),
            r.value,
            r.err_estimate
        )?;
    }
    if results.len() > 1 {
        writeln!(
            out,
            "max pairwise discrepancy: {:.3e}",
            max_pairwise_discrepancy(&results)
        )?;
    }
    Ok(())
}

fn run_scan(
    points: Result<Vec<SpherePoint>>,
    opts: &MethodOpts,
    output: &OutputOpts,
    abscissa: Abscissa,
    title: &str,
) -> Result<()> {
    // Validate everything before touching the filesystem.
    let points = points?;
    let spec = opts.spec()?;
    let rows = scan(&points, opts.method, &spec)?;
    emit(&rows, output, abscissa, title)
}

fn emit(rows: &[ScanRow], output: &OutputOpts, abscissa: Abscissa, title: &str) -> Result<()> {
    match &output.out {
        Some(path) => write_csv(rows, BufWriter::new(File::create(path)?))?,
        None => write_csv(rows, io::stdout().lock())?,
    }
    if let Some(path) = &output.svg {
        std::fs::write(path, render_svg(rows, abscissa, title))?;
    }
    Ok(())
}

fn run_rules(k: i64) -> Result<()> {
    let k = u32::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("k must be at least 1 (got k = {k})")))?;
    let rule = v_coefficients(k)?;
    println!("{rule}");
    let powers: Vec<String> = rule.v().iter().map(ToString::to_string).collect();
    println!("powers: {}", powers.join(", "));
    Ok(())
}

fn run_closed_form(d: u32, tol: f64) -> Result<()> {
    let form = ClosedForm::paneitz(d)?;
    let closed = closed_form_p4(d)?;
    let spec = QuadratureSpec::default().with_rel_tol(tol);
    let direct = logdet_direct(closed.point, &spec)?;
    println!("log det P_4({d}) = {form}");
    println!(
        "{:<13} {:>24.16e}  ± {:.1e}",
        "closed_form", closed.value, closed.err_estimate
    );
    println!(
        "{:<13} {:>24.16e}  ± {:.1e}",
        "direct", direct.value, direct.err_estimate
    );
    println!("difference: {:.3e}", (closed.value - direct.value).abs());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval { d, k, opts } => run_eval(*d, *k, opts),
        Command::ScanK { d, opts, output } => run_scan(
            points_k(*d),
            opts,
            output,
            Abscissa::K,
            &format!("GJMS logdet, d={d}"),
        ),
        Command::Limiting {
            d_min,
            d_max,
            opts,
            output,
        } => run_scan(
            points_limiting(*d_min, *d_max),
            opts,
            output,
            Abscissa::D,
            "GJMS logdet, d=2k+1",
        ),
        Command::Paneitz {
            d_min,
            d_max,
            opts,
            output,
        } => run_scan(
            points_paneitz(*d_min, *d_max),
            opts,
            output,
            Abscissa::D,
            "Paneitz logdet, d=2n+1",
        ),
        Command::Rules { k } => run_rules(*k),
        Command::ClosedForm { d, tol } => run_closed_form(*d, *tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(exit_code(&e)).unwrap_or(EXIT_USAGE as u8))
        }
    }
}
