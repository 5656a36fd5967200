mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "dedal",
    version,
    about = "Dedal polygons, the developing map and outer billiards"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Absolute tolerance on complex magnitudes.
    #[arg(long, global = true, default_value_t = dedal::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionArg {
    Ccw,
    Cw,
}

impl From<ConventionArg> for dedal::Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Ccw => dedal::Convention::Ccw,
            ConventionArg::Cw => dedal::Convention::Cw,
        }
    }
}

/// Selects `Q_0 + s X_{n/2}` among the dedal polygons of an even-n polygon.
#[derive(Args, Debug, Clone)]
pub struct Member {
    #[arg(long = "s-re", allow_hyphen_values = true)]
    pub s_re: Option<f64>,
    #[arg(long = "s-im", allow_hyphen_values = true)]
    pub s_im: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct Start {
    #[arg(long = "z-re", allow_hyphen_values = true)]
    pub z_re: f64,
    #[arg(long = "z-im", allow_hyphen_values = true)]
    pub z_im: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dedal polygon of the input (canonical one, or a family member for even n).
    Dedal {
        /// Polygon JSON file, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        member: Member,
        /// Fail unless developing the result reproduces the input.
        #[arg(long)]
        check: bool,
    },
    /// Midpoint polygon of the input.
    Develop { input: PathBuf },
    /// Orbit under the developing map and its shape classes.
    Iterate {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Regularity, affine regularity and similarity to the dedal polygon.
    Classify { input: PathBuf },
    /// Eigenbasis coefficients and shape class.
    Spectrum { input: PathBuf },
    /// Outer billiard orbit of a point.
    Orbit {
        input: PathBuf,
        #[command(flatten)]
        start: Start,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Ccw)]
        convention: ConventionArg,
    },
    /// Whether the dedal polygon is a Fagnano orbit of the outer billiard.
    Fagnano {
        input: PathBuf,
        #[command(flatten)]
        member: Member,
        /// Defaults to the orientation of the table.
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// Convexification experiment on random polygons.
    Bgs {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "max-m", default_value_t = 200)]
        max_m: usize,
    },
    /// SVG figure of one or more polygons side by side.
    Render {
        /// Polygon JSON files, one panel each.
        inputs: Vec<PathBuf>,
        /// Draw the canonical dedal polygon of each panel.
        #[arg(long)]
        dedal: bool,
        /// Extra polygons drawn on every panel.
        #[arg(long)]
        overlay: Vec<PathBuf>,
        /// Start of an outer billiard orbit drawn on every panel.
        #[arg(long = "z-re", allow_hyphen_values = true, requires = "z_im")]
        z_re: Option<f64>,
        #[arg(long = "z-im", allow_hyphen_values = true, requires = "z_re")]
        z_im: Option<f64>,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Panels `X_1 .. X_{ceil(n/2)-1}`: the regular n-gons up to orientation.
        #[arg(long)]
        eigen: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
