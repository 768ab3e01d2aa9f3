use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use persland::analysis::{gram_matrix, gram_to_csv, p_distance, Kernel, PNorm, WeightSpec};
use persland::benchgen::{counterexample_pair, random_diagram, random_independent_family};
use persland::diagram::bottleneck_distance;
use persland::rational::parse_rational;
use persland::reconstruct::{is_arithmetically_independent, reconstruct_from_average};
use persland::tropical::feature_grid;
use persland::{diagram_of, landscape_of, DiagramFamily, Landscape, Rational};
use serde_json::json;

mod io;

use io::{
    create_dir, emit, read_diagram, read_landscape, read_manifest, read_text, write_text, CliError, CliResult,
    NumberFormat,
};

/// Exact persistence landscapes: construction, inversion, distances,
/// kernels and reconstruction of diagram families from averages.
///
/// Exit status: 0 success, 1 invalid input, 2 precondition violated,
/// 3 I/O error.
#[derive(Parser)]
#[command(name = "persland", version)]
struct Cli {
    /// Print numbers as decimals with this many digits instead of exact
    /// rationals
    #[arg(long, global = true, value_name = "DIGITS", num_args = 0..=1, require_equals = true, default_missing_value = "15")]
    decimal: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Landscape of a diagram file
    Landscape {
        diagram: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diagram whose landscape is the given file
    Invert {
        landscape: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// p-distance between two landscape files
    Distance {
        /// 1, 2, ... or inf
        #[arg(long, default_value = "inf")]
        p: PNorm,
        first: PathBuf,
        second: PathBuf,
    },
    /// Bottleneck distance between two diagram files
    Bottleneck { first: PathBuf, second: PathBuf },
    /// Landscape kernel between two diagram files
    Kernel {
        #[command(flatten)]
        kernel: KernelArgs,
        first: PathBuf,
        second: PathBuf,
    },
    /// Gram matrix, as CSV, of the diagrams listed in a manifest
    Gram {
        #[command(flatten)]
        kernel: KernelArgs,
        /// One diagram path per line, relative to the manifest
        manifest: PathBuf,
        /// Print exact entries as p/q
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Average landscape of several diagram files
    Average {
        #[arg(required = true)]
        diagrams: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the diagram family behind an average landscape
    Reconstruct {
        average: PathBuf,
        /// Directory for component_<i>.dgm and manifest.json
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Genericity, connectivity and independence report for a family
    Check {
        #[arg(required = true)]
        diagrams: Vec<PathBuf>,
    },
    /// Generate diagrams
    #[command(subcommand)]
    Gen(Gen),
    /// Sample a landscape or the tropical features on a grid, as CSV
    #[command(subcommand)]
    Grid(Grid),
}

#[derive(Args)]
struct KernelArgs {
    /// Poisson-weighted kernel with this rate
    #[arg(long, conflicts_with = "weights")]
    nu: Option<f64>,
    /// File with one nonnegative level weight per line
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// The pair with landscape sup distance 1 and bottleneck distance 2n+1
    Counterexample {
        #[arg(long)]
        n: u32,
        /// Writes d1.dgm and d2.dgm here
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Random bars on a uniform grid of [lo, hi]
    Random {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value = "0", value_parser = rational_arg, allow_hyphen_values = true)]
        lo: Rational,
        #[arg(long, default_value = "1", value_parser = rational_arg, allow_hyphen_values = true)]
        hi: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Connected, arithmetically independent family
    Family {
        #[arg(long)]
        n: usize,
        /// Random bars per diagram, before connecting
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes diagram_<i>.dgm and a manifest listing them here
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum Grid {
    /// Level values at t_min + i (t_max - t_min)/steps
    Landscape {
        landscape: PathBuf,
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        t_min: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        t_max: Rational,
        #[arg(long)]
        steps: usize,
    },
    /// Max-plus evaluation at a + i eps for i = 0..=2m
    Tropical {
        diagram: PathBuf,
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = rational_arg)]
        eps: Rational,
        #[arg(long)]
        m: usize,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn kernel_of(args: &KernelArgs) -> CliResult<Kernel> {
    match (&args.nu, &args.weights) {
        (Some(nu), _) => Ok(Kernel::Poisson(*nu)),
        (None, Some(path)) => {
            let spec = WeightSpec::parse_level_weights(&read_text(path)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            Ok(Kernel::Weighted(spec))
        }
        (None, None) => Ok(Kernel::Plain),
    }
}

fn read_family(paths: &[PathBuf]) -> CliResult<DiagramFamily> {
    paths
        .iter()
        .map(|p| read_diagram(p))
        .collect::<CliResult<Vec<_>>>()
        .map(DiagramFamily::new)
}

fn reconstruct(average: &Path, out_dir: &Path) -> CliResult<()> {
    let avg = read_landscape(average)?;
    let components = reconstruct_from_average(&avg)?;
    create_dir(out_dir)?;
    let mut files = Vec::new();
    for (i, d) in components.iter().enumerate() {
        let name = format!("component_{i}.dgm");
        write_text(&out_dir.join(&name), &d.to_text())?;
        files.push(json!({ "index": i, "file": name, "points": d.len() }));
    }
    let manifest = json!({
        "source": average.display().to_string(),
        "verified": true,
        "components": files,
    });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_text(&out_dir.join("manifest.json"), &(text + "\n"))?;
    println!("{} components written to {}", components.len(), out_dir.display());
    Ok(())
}

fn check(paths: &[PathBuf]) -> CliResult<()> {
    let family = read_family(paths)?;
    let mut ok = true;
    for (path, d) in paths.iter().zip(&family.diagrams) {
        let generic = d.is_generic();
        let connected = d.is_connected();
        ok &= generic && connected;
        println!("{}: generic={generic} connected={connected}", path.display());
    }
    let report = is_arithmetically_independent(&family);
    println!("family: {report}");
    if ok && report.is_independent() {
        Ok(())
    } else {
        Err(CliError::Precondition("family does not satisfy the reconstruction preconditions".into()))
    }
}

fn gen(cmd: Gen) -> CliResult<()> {
    match cmd {
        Gen::Counterexample { n, out_dir } => {
            let (d1, d2) = counterexample_pair(n)?;
            create_dir(&out_dir)?;
            write_text(&out_dir.join("d1.dgm"), &d1.to_text())?;
            write_text(&out_dir.join("d2.dgm"), &d2.to_text())
        }
        Gen::Random { count, lo, hi, seed, output } => {
            let d = random_diagram(count, &lo, &hi, seed)?;
            emit(output.as_deref(), &d.to_text())
        }
        Gen::Family { n, count, seed, out_dir } => {
            let family = random_independent_family(n, count, seed)?;
            create_dir(&out_dir)?;
            let mut manifest = String::new();
            for (i, d) in family.diagrams.iter().enumerate() {
                let name = format!("diagram_{i}.dgm");
                write_text(&out_dir.join(&name), &d.to_text())?;
                manifest.push_str(&name);
                manifest.push('\n');
            }
            write_text(&out_dir.join("family.txt"), &manifest)
        }
    }
}

fn grid(cmd: Grid, fmt: NumberFormat) -> CliResult<()> {
    let rows = match cmd {
        Grid::Landscape { landscape, k_max, t_min, t_max, steps } => {
            read_landscape(&landscape)?.sample_grid(k_max, &t_min, &t_max, steps)?
        }
        Grid::Tropical { diagram, k_max, a, eps, m } => feature_grid(&read_diagram(&diagram)?, k_max, &a, &eps, m)?,
    };
    print!("{}", fmt.csv(&rows));
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let fmt = NumberFormat { decimal: cli.decimal };
    match cli.command {
        Command::Landscape { diagram, output } => {
            let l = landscape_of(&read_diagram(&diagram)?);
            emit(output.as_deref(), &l.to_text())
        }
        Command::Invert { landscape, output } => {
            let d = diagram_of(&read_landscape(&landscape)?)?;
            emit(output.as_deref(), &d.to_text())
        }
        Command::Distance { p, first, second } => {
            let (l1, l2) = (read_landscape(&first)?, read_landscape(&second)?);
            println!("{}", fmt.scalar(&p_distance(&l1, &l2, p)));
            Ok(())
        }
        Command::Bottleneck { first, second } => {
            let (d1, d2) = (read_diagram(&first)?, read_diagram(&second)?);
            println!("{}", fmt.rational(&bottleneck_distance(&d1, &d2)));
            Ok(())
        }
        Command::Kernel { kernel, first, second } => {
            let kernel = kernel_of(&kernel)?;
            let (l1, l2) = (landscape_of(&read_diagram(&first)?), landscape_of(&read_diagram(&second)?));
            println!("{}", fmt.scalar(&kernel.evaluate(&l1, &l2)?));
            Ok(())
        }
        Command::Gram { kernel, manifest, exact, output } => {
            let kernel = kernel_of(&kernel)?;
            let family = read_family(&read_manifest(&manifest)?)?;
            let g = gram_matrix(&family, &kernel)?;
            emit(output.as_deref(), &gram_to_csv(&g, exact))
        }
        Command::Average { diagrams, output } => {
            let family = read_family(&diagrams)?;
            let landscapes: Vec<Landscape> = family.diagrams.iter().map(landscape_of).collect();
            emit(output.as_deref(), &Landscape::average(&landscapes).to_text())
        }
        Command::Reconstruct { average, out_dir } => reconstruct(&average, &out_dir),
        Command::Check { diagrams } => check(&diagrams),
        Command::Gen(cmd) => gen(cmd),
        Command::Grid(cmd) => grid(cmd, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("persland: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
