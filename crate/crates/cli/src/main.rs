mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;

use plausimap::io::{self, csv, raster, RasterStyle};
use plausimap::mapping::{
    binary_information_map, conflict_map, entropy_map, extrapolate_field, information_map,
    plausible_map, suggest_next_measurement, BeliefField, Grid2d, ObservationSet, SuggestOptions,
};
use plausimap::prelude::{
    CombinationConfig, CombinationMode, DecayModel, Discount, InteractionModel,
};

use args::{Cli, Command, CommonArgs, DiscountArg, ModeArg, StyleArg};

/// Failure classes mapped onto exit codes.
enum Failure {
    /// Bad input, configuration or I/O: exit 1.
    Input(anyhow::Error),
    /// Every cell of a normalized field is in total conflict: exit 2.
    TotalConflict,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

struct Setup {
    grid: Grid2d,
    obs: ObservationSet,
    decay: DecayModel,
    interaction: InteractionModel,
    cfg: CombinationConfig,
}

fn setup(common: &CommonArgs, default_mode: CombinationMode) -> anyhow::Result<Setup> {
    let grid = Grid2d::new(common.width, common.height)?;
    let text = fs::read_to_string(&common.obs)
        .with_context(|| format!("reading {}", common.obs.display()))?;
    let obs = io::parse_observations(&text, &grid)
        .with_context(|| format!("parsing {}", common.obs.display()))?;
    let mut decay = DecayModel::uniform(obs.domain(), common.lambda)?;
    for (name, lambda) in &common.lambda_value {
        decay = decay.with_lambda(name, *lambda)?;
    }
    let interaction = InteractionModel::new(common.lambda_mu)?;
    let mode = match common.mode {
        Some(ModeArg::Normalized) => CombinationMode::Normalized,
        Some(ModeArg::Unnormalized) => CombinationMode::Unnormalized,
        None => default_mode,
    };
    let discount = match common.discount {
        DiscountArg::Plain => Discount::Plain,
        DiscountArg::Interaction => Discount::Interaction,
    };
    Ok(Setup {
        grid,
        obs,
        decay,
        interaction,
        cfg: CombinationConfig::new(mode, discount),
    })
}

impl Setup {
    fn field(&self) -> Result<BeliefField, Failure> {
        let field = extrapolate_field(
            &self.grid,
            &self.obs,
            &self.decay,
            &self.interaction,
            self.cfg,
        )?;
        if field.mode() == CombinationMode::Normalized
            && field.conflict_cells() == field.cells().len()
        {
            return Err(Failure::TotalConflict);
        }
        Ok(field)
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("pgm");
    path.with_file_name(format!("{stem}_{suffix}.{ext}"))
}

fn require_output(common: &CommonArgs) -> anyhow::Result<()> {
    if common.out.is_none() && common.csv.is_none() {
        bail!("nothing to do: pass --out and/or --csv");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Extrapolate { common, style } => {
            require_output(&common)?;
            let s = setup(&common, CombinationMode::Normalized)?;
            let field = s.field()?;
            if let Some(out) = &common.out {
                let style = match style {
                    StyleArg::Belief => RasterStyle::Belief,
                    StyleArg::Entropy => RasterStyle::Entropy,
                    StyleArg::Info => RasterStyle::Info,
                    StyleArg::Conflict => RasterStyle::Conflict,
                };
                let domain = field.domain();
                if style == RasterStyle::Belief && domain.len() > 2 {
                    for (i, label) in domain.labels().iter().enumerate() {
                        let pixels = raster::value_belief_pixels(&field, i)?;
                        let bytes = io::encode_pgm(s.grid.width(), s.grid.height(), &pixels);
                        write_atomic(&with_suffix(out, label), &bytes)?;
                    }
                } else {
                    write_atomic(out, &io::render_raster(&field, &s.obs, style)?)?;
                }
            }
            if let Some(path) = &common.csv {
                write_atomic(path, csv::mass_csv(&field).as_bytes())?;
            }
        }
        Command::Entropy { common } => {
            require_output(&common)?;
            let s = setup(&common, CombinationMode::Normalized)?;
            let field = s.field()?;
            if let Some(out) = &common.out {
                write_atomic(
                    out,
                    &io::render_raster(&field, &s.obs, RasterStyle::Entropy)?,
                )?;
            }
            if let Some(path) = &common.csv {
                write_atomic(path, csv::scalar_csv(&entropy_map(&field)).as_bytes())?;
            }
        }
        Command::Info { common } => {
            require_output(&common)?;
            let s = setup(&common, CombinationMode::Normalized)?;
            let field = s.field()?;
            let map = if field.domain().len() == 2 {
                binary_information_map(&field)?
            } else {
                information_map(&field)
            };
            if let Some(out) = &common.out {
                write_atomic(out, &io::scalar_to_pgm(&map))?;
            }
            if let Some(path) = &common.csv {
                write_atomic(path, csv::scalar_csv(&map).as_bytes())?;
            }
        }
        Command::Conflict { common } => {
            require_output(&common)?;
            if common.mode == Some(ModeArg::Normalized) {
                return Err(Failure::Input(anyhow::anyhow!(
                    "conflict maps need --mode unnormalized"
                )));
            }
            let s = setup(&common, CombinationMode::Unnormalized)?;
            let map = conflict_map(&s.field()?)?;
            if let Some(out) = &common.out {
                write_atomic(out, &io::scalar_to_pgm(&map))?;
            }
            if let Some(path) = &common.csv {
                write_atomic(path, csv::scalar_csv(&map).as_bytes())?;
            }
        }
        Command::Plausible { common, threshold } => {
            require_output(&common)?;
            let s = setup(&common, CombinationMode::Normalized)?;
            let values = plausible_map(&s.field()?, threshold)?;
            if let Some(out) = &common.out {
                write_atomic(out, &raster::plausible_to_pgm(&values))?;
            }
            if let Some(path) = &common.csv {
                write_atomic(path, csv::value_csv(&values).as_bytes())?;
            }
        }
        Command::Suggest {
            common,
            top,
            stride,
        } => {
            let s = setup(&common, CombinationMode::Normalized)?;
            s.field()?;
            let ranked = suggest_next_measurement(
                &s.grid,
                &s.obs,
                &s.decay,
                &s.interaction,
                s.cfg,
                SuggestOptions { top, stride },
            )?;
            let table = csv::suggestions_csv(&ranked);
            if let Some(path) = &common.csv {
                write_atomic(path, table.as_bytes())?;
            }
            print!("{table}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors exit 1 like other input errors; 2 is kept for total conflict.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::TotalConflict) => {
            eprintln!("error: every cell is in total conflict; try --mode unnormalized");
            ExitCode::from(2)
        }
    }
}
