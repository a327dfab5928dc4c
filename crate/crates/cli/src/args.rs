use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "plausimap",
    version,
    about = "Extrapolate spatial observations with belief functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Combined belief field (raster and/or per-cell masses).
    Extrapolate {
        #[command(flatten)]
        common: CommonArgs,
        /// Raster style.
        #[arg(long, value_enum, default_value_t = StyleArg::Belief)]
        style: StyleArg,
    },
    /// Entropy of the pignistic distribution per cell.
    Entropy {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Information level per cell.
    Info {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Conflict mass per cell (always computed unnormalized).
    Conflict {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Most plausible value per cell; `-` where undetermined.
    Plausible {
        #[command(flatten)]
        common: CommonArgs,
        /// Singleton belief below which a cell stays undetermined.
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
    },
    /// Rank cells by expected entropy loss of a new measurement.
    Suggest {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of suggestions.
        #[arg(long, default_value_t = 5)]
        top: usize,
        /// Consider only cells whose coordinates are multiples of this.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Observation file.
    #[arg(long)]
    pub obs: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub width: usize,
    #[arg(long, default_value_t = 64)]
    pub height: usize,
    /// Persistence scale for every value (`inf` and `0` accepted).
    #[arg(long, default_value_t = 3.0)]
    pub lambda: f64,
    /// Persistence scale for one value, as NAME=F. Repeatable.
    #[arg(long = "lambda-value", value_name = "NAME=F", value_parser = parse_named_lambda)]
    pub lambda_value: Vec<(String, f64)>,
    /// Interaction scale.
    #[arg(long = "lambda-mu", default_value_t = 3.0)]
    pub lambda_mu: f64,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = DiscountArg::Interaction)]
    pub discount: DiscountArg,
    /// PGM output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV output path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Normalized,
    Unnormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiscountArg {
    Plain,
    Interaction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Belief,
    Entropy,
    Info,
    Conflict,
}

fn parse_named_lambda(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=F, got {s:?}"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("invalid persistence scale {value:?}"))?;
    Ok((name.trim().to_owned(), value))
}
