use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "pentawood", version, about = "5c-woods and barycentric drawings of 5c-triangulations of the pentagon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a rotation system is a 5c-triangulation (and optionally a structure file against it).
    Validate {
        input: String,
        /// Orientation, labeling or wood file to validate against the input.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Compute a 5c-structure.
    Construct {
        input: String,
        #[arg(long)]
        minimize: bool,
        #[arg(long, value_enum, default_value_t = Emit::Wood)]
        emit: Emit,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the barycentric drawing.
    Draw {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::Faces)]
        mode: Mode,
        /// Face weights for `--mode weighted`: a JSON object from face name (`f<a>-<b>-<c>`) to a positive rational.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Draw the wood's colored arcs in the SVG.
        #[arg(long)]
        overlay: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 500.0)]
        scale: f64,
        /// Certify planarity and the sector properties, report resolution and symmetry.
        #[arg(long)]
        check: bool,
    },
    /// Generate random 5c-triangulations.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Random flips after each vertex split.
        #[arg(long, default_value_t = 2)]
        flips: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Size, resolution and timing table for a batch of inputs.
    Stats {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Faces)]
        mode: Mode,
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Emit {
    Orientation,
    Labeling,
    Wood,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Faces,
    Vertices,
    Weighted,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input, structure } => commands::validate(&input, structure.as_deref()),
        Command::Construct { input, minimize, emit, output } => {
            commands::construct(&input, minimize, emit, output.as_deref())
        }
        Command::Draw { input, mode, weights, minimize, svg, overlay, json, scale, check } => {
            commands::draw(&commands::DrawArgs {
                input,
                mode,
                weights,
                minimize,
                svg,
                overlay,
                json,
                scale,
                check,
            })
        }
        Command::Gen { n, seed, count, flips, out } => commands::gen(n, seed, count, flips, &out),
        Command::Stats { inputs, mode, minimize, csv } => commands::stats(&inputs, mode, minimize, csv.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
