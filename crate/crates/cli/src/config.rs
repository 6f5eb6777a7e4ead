//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

pub const DEFAULT_DENOMINATOR_BOUND: u32 = 8;
pub const DEFAULT_CAP: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SCALE: f64 = 120.0;
pub const DEFAULT_CASES: usize = 25;

#[derive(Debug, Parser)]
#[command(name = "ward", version, about = "Exact computations on the Ward family of Veech surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,

    /// Family member: a 2n-gon glued to two n-gons (n >= 3).
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Use the unit square torus instead of a Ward surface.
    #[arg(long, global = true)]
    pub torus: bool,
    /// Read the surface from a surface JSON file.
    #[arg(long, global = true)]
    pub surface: Option<PathBuf>,
    /// `horizontal`, `vertical` or `rot k` (angle kπ/n).
    #[arg(long, global = true, default_value = "horizontal")]
    pub direction: String,
    /// Largest height denominator in the candidate grid.
    #[arg(long, global = true, default_value_t = DEFAULT_DENOMINATOR_BOUND)]
    pub denominator_bound: u32,
    /// Orbit size at which a search gives up.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Output file (surface or report JSON); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// SVG output file.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Pixels per unit length in SVG output.
    #[arg(long, global = true, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
    /// Omit text labels from SVG output.
    #[arg(long, global = true)]
    pub no_labels: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Build a surface and write it as JSON.
    Build,
    /// Cylinder decomposition in a direction.
    Decompose,
    /// Classify periodic points up to the denominator bound.
    Search,
    /// Orbit of one point under the affine generators.
    Orbit {
        /// `[polygon:] x, y` with exact expressions, e.g. `0: 1/3, cos(1/4 pi)`.
        #[arg(long)]
        point: String,
        /// Word to apply before exploring the orbit, e.g. `psi^-1*phi`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Randomized consistency checks.
    Selftest {
        /// Random points per surface.
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceSource {
    Ward(u32),
    Torus,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionSpec {
    Horizontal,
    Vertical,
    /// Angle `kπ/n`.
    Rot(i64),
}

impl DirectionSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        let t = s.trim().to_lowercase();
        match t.as_str() {
            "horizontal" | "h" => Ok(DirectionSpec::Horizontal),
            "vertical" | "v" => Ok(DirectionSpec::Vertical),
            _ => {
                let k = t
                    .strip_prefix("rot")
                    .map(|r| r.trim_start_matches([' ', ':', '=']).trim())
                    .and_then(|r| r.parse::<i64>().ok())
                    .ok_or_else(|| CliError::InvalidInput(format!("bad direction `{s}`")))?;
                Ok(DirectionSpec::Rot(k))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            DirectionSpec::Horizontal => "horizontal".into(),
            DirectionSpec::Vertical => "vertical".into(),
            DirectionSpec::Rot(k) => format!("rot {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub scale: f64,
    pub labels: bool,
}

/// Validated configuration for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// `None` only for `selftest`, which builds its own surfaces.
    pub source: Option<SurfaceSource>,
    pub direction: DirectionSpec,
    pub denominator_bound: u32,
    pub cap: usize,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub seed: u64,
    pub render: RenderOptions,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let chosen = cli.n.is_some() as u8 + cli.torus as u8 + cli.surface.is_some() as u8;
        let source = match (cli.n, cli.torus, cli.surface) {
            _ if chosen > 1 => {
                return Err(CliError::InvalidInput("use only one of --n, --torus, --surface".into()))
            }
            (Some(n), _, _) if n < 3 => return Err(CliError::InvalidInput(format!("n must be at least 3, got {n}"))),
            (Some(n), _, _) => Some(SurfaceSource::Ward(n)),
            (_, true, _) => Some(SurfaceSource::Torus),
            (_, _, Some(p)) => Some(SurfaceSource::File(p)),
            (None, false, None) if matches!(cli.command, CommandKind::Selftest { .. }) => None,
            (None, false, None) => {
                return Err(CliError::InvalidInput("choose a surface with --n, --torus or --surface".into()))
            }
        };
        if matches!(cli.command, CommandKind::Build) && matches!(source, Some(SurfaceSource::File(_))) {
            return Err(CliError::InvalidInput("build needs --n or --torus".into()));
        }
        if cli.denominator_bound < 1 {
            return Err(CliError::InvalidInput("--denominator-bound must be at least 1".into()));
        }
        if cli.cap < 1 {
            return Err(CliError::InvalidInput("--cap must be at least 1".into()));
        }
        if !(cli.scale.is_finite() && cli.scale > 0.0) {
            return Err(CliError::InvalidInput("--scale must be positive".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            source,
            direction: DirectionSpec::parse(&cli.direction)?,
            denominator_bound: cli.denominator_bound,
            cap: cli.cap,
            out: cli.out,
            svg: cli.svg,
            seed: cli.seed,
            render: RenderOptions { scale: cli.scale, labels: !cli.no_labels },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> CliResult<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("ward").chain(args.iter().copied()))
            .map_err(|e| CliError::InvalidInput(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn defaults_and_validation() {
        let c = cfg(&["search", "--n", "4"]).unwrap();
        assert_eq!(c.denominator_bound, DEFAULT_DENOMINATOR_BOUND);
        assert_eq!(c.cap, DEFAULT_CAP);
        assert_eq!(c.source, Some(SurfaceSource::Ward(4)));
        assert_eq!(cfg(&["selftest"]).unwrap().source, None);
        assert_eq!(c.direction, DirectionSpec::Horizontal);
        assert!(cfg(&["search"]).is_err());
        assert!(cfg(&["search", "--n", "2"]).is_err());
        assert!(cfg(&["search", "--n", "4", "--torus"]).is_err());
        assert!(cfg(&["search", "--n", "4", "--cap", "0"]).is_err());
        assert!(cfg(&["build", "--surface", "x.json"]).is_err());
        assert!(cfg(&["decompose", "--n", "4", "--direction", "sideways"]).is_err());
    }

    #[test]
    fn directions() {
        assert_eq!(DirectionSpec::parse("rot 3").unwrap(), DirectionSpec::Rot(3));
        assert_eq!(DirectionSpec::parse("rot -1").unwrap(), DirectionSpec::Rot(-1));
        assert_eq!(DirectionSpec::parse("Vertical").unwrap(), DirectionSpec::Vertical);
        assert!(DirectionSpec::parse("rot").is_err());
        assert_eq!(DirectionSpec::Rot(2).label(), "rot 2");
    }
}
