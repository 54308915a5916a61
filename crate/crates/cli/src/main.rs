use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nilchar::arrangement::{chamber_hyperplanes, Arrangement};
use nilchar::config::{parse_group, parse_scales, ModuleSpec, RunConfig};
use nilchar::io::{to_json, CharacteristicDoc, RegionsDoc};
use nilchar::liecore::WeightSystem;
use nilchar::orbits::example::example_region_label;
use nilchar::orbits::{CharacteristicEngine, CharacteristicError, Mode, OrbitModel};
use nilchar::rational::parse_rational;
use nilchar::svg::{render, Marker};
use nilchar::verify::{dynkin_suite, example_suite, sampling_suite, CheckRow};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_DENSE_UNDEFINED: u8 = 2;

#[derive(Parser)]
#[command(name = "nilchar", version, about = "Characteristics of nilpotent orbits from chamber arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the regions of the arrangement and write regions.json.
    Regions {
        #[command(flatten)]
        group: GroupArgs,
        /// Write JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the arrangement (rank two only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compute the characteristic of one orbit, or of every orbit with `all`.
    Characteristic {
        #[command(flatten)]
        group: GroupArgs,
        /// Orbit descriptor (`O_3`, a partition `2,1,1`) or `all`
        #[arg(long)]
        orbit: String,
        /// `nonempty` or `dense`
        #[arg(long, default_value = "nonempty")]
        mode: Mode,
        /// Write JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in self-checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Size of `sl_n` for the dynkin suite.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Sample count per module for the sampling suite.
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a rank-two arrangement, optionally marking characteristics.
    Plot {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        svg: PathBuf,
        /// Mark the characteristic of every orbit.
        #[arg(long)]
        characteristics: bool,
        /// `nonempty` or `dense`
        #[arg(long, default_value = "nonempty")]
        mode: Mode,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Suite {
    Example,
    Dynkin,
    Sampling,
    All,
}

#[derive(Args)]
struct GroupArgs {
    /// Series letter(s), e.g. `A`, `A,B`, or a product such as `A1xA1`.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Rank(s) matching `--type`.
    #[arg(long)]
    rank: Option<String>,
    /// `adjoint`, `little-adjoint`, `example-2x3`, or highest weights `1,1;1,0`.
    #[arg(long, default_value = "adjoint")]
    module: ModuleSpec,
    /// Right-hand side of every hyperplane.
    #[arg(long, default_value = "2")]
    level: String,
    /// Positive scale of the form on each simple factor, e.g. `1,1/2`.
    #[arg(long)]
    scales: Option<String>,
    /// Seed for the random genericity tests.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Refuse arrangements with more hyperplanes than this.
    #[arg(long, default_value_t = 20)]
    max_hyperplanes: usize,
}

impl GroupArgs {
    fn config(&self) -> Result<RunConfig> {
        let factors = match &self.ty {
            Some(t) => parse_group(t, self.rank.as_deref())?,
            None if self.rank.is_some() => bail!("--rank needs --type"),
            None => Vec::new(),
        };
        let mut cfg = RunConfig::new(factors, self.module.clone());
        cfg.level = parse_rational(&self.level).context("--level")?;
        cfg.scales = self.scales.as_deref().map(parse_scales).transpose()?;
        cfg.seed = self.seed;
        Ok(cfg)
    }

    fn arrangement(&self, cfg: &RunConfig, ws: &WeightSystem) -> Result<Arrangement> {
        let hyperplanes = chamber_hyperplanes(ws, &cfg.level)?;
        if hyperplanes.len() > self.max_hyperplanes {
            bail!(
                "{} hyperplanes meet the chamber, more than --max-hyperplanes {}",
                hyperplanes.len(),
                self.max_hyperplanes
            );
        }
        Ok(Arrangement::from_hyperplanes(ws, &cfg.level, hyperplanes)?)
    }
}

fn region_labels(cfg: &RunConfig, arr: &Arrangement) -> Vec<String> {
    match cfg.module {
        ModuleSpec::Example => arr
            .subspaces
            .iter()
            .map(|s| example_region_label(&s.i_r).map_or_else(|| s.region_id.to_string(), String::from))
            .collect(),
        _ => Vec::new(),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn engine(group: &GroupArgs) -> Result<(RunConfig, CharacteristicEngine<Box<dyn OrbitModel>>)> {
    let cfg = group.config()?;
    let model = cfg.orbit_model()?;
    let arr = group.arrangement(&cfg, model.weight_system())?;
    let form = cfg.form(model.weight_system().root_system())?;
    let engine = CharacteristicEngine::with_arrangement(model, form, arr)?;
    Ok((cfg, engine))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Regions { group, out, svg } => {
            let cfg = group.config()?;
            let ws = cfg.weight_system()?;
            let arr = group.arrangement(&cfg, &ws)?;
            let labels = region_labels(&cfg, &arr);
            let doc = RegionsDoc::new(&ws, &arr, |s| labels.get(s.region_id).cloned());
            emit(&to_json(&doc)?, out.as_ref())?;
            if let Some(path) = svg {
                std::fs::write(&path, render(ws.root_system(), &arr, &labels, &[])?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Characteristic {
            group,
            orbit,
            mode,
            out,
        } => {
            let (_, engine) = engine(&group)?;
            let model = engine.model();
            if orbit == "all" {
                let mut docs = Vec::new();
                for o in model.orbits() {
                    match engine.characteristic(o, mode) {
                        Ok(c) => docs.push(CharacteristicDoc::new(&model.name(), &c)),
                        Err(CharacteristicError::DenseUndefined(d)) => {
                            eprintln!("note: dense characteristic of {d} is undefined");
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                emit(&to_json(&docs)?, out.as_ref())?;
                return Ok(ExitCode::SUCCESS);
            }
            let o = model.parse_orbit(&orbit)?;
            match engine.characteristic(o, mode) {
                Ok(c) => {
                    emit(&to_json(&CharacteristicDoc::new(&model.name(), &c))?, out.as_ref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ CharacteristicError::DenseUndefined(_)) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(EXIT_DENSE_UNDEFINED))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify {
            suite,
            n,
            points,
            seed,
        } => {
            let mut rows: Vec<CheckRow> = Vec::new();
            if matches!(suite, Suite::Example | Suite::All) {
                rows.extend(example_suite()?);
            }
            if matches!(suite, Suite::Dynkin | Suite::All) {
                rows.extend(dynkin_suite(n, seed)?);
            }
            if matches!(suite, Suite::Sampling | Suite::All) {
                rows.extend(sampling_suite(points, seed)?);
            }
            for r in &rows {
                println!("{r}");
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            println!("{} checks, {} failed", rows.len(), failed);
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Plot {
            group,
            svg,
            characteristics,
            mode,
        } => {
            let (labels, markers, rs, arr) = if characteristics {
                let (cfg, engine) = engine(&group)?;
                let model = engine.model();
                let mut markers = Vec::new();
                for o in model.orbits() {
                    if o == model.zero_orbit() {
                        continue;
                    }
                    match engine.characteristic(o, mode) {
                        Ok(c) => markers.push(Marker {
                            point: c.point,
                            label: c.descriptor,
                        }),
                        Err(CharacteristicError::DenseUndefined(_)) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
                let arr = engine.arrangement().clone();
                let rs = model.weight_system().root_system().clone();
                (region_labels(&cfg, &arr), markers, rs, arr)
            } else {
                let cfg = group.config()?;
                let ws = cfg.weight_system()?;
                let arr = group.arrangement(&cfg, &ws)?;
                (region_labels(&cfg, &arr), Vec::new(), ws.root_system().clone(), arr)
            };
            std::fs::write(&svg, render(&rs, &arr, &labels, &markers)?)
                .with_context(|| format!("writing {}", svg.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
