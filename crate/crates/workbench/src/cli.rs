//! Command-line interface; `main` only parses arguments and calls [`run`].

use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thedra::exponential_to_additive;
use thedra::smooth::molding_surface_range;

use crate::document::{
    miura_document, smooth_preset, DesignDocument, Model, SmoothModel, SMOOTH_PRESETS,
};
use crate::frames::{classify_model, deform_smooth, range_of, surface_at, DEFAULT_RESOLUTION};
use crate::obj::to_obj;
use crate::sweep::{write_sweep, Samples};
use crate::verify::{verify_model, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "thedra",
    version,
    about = "Design, deform and verify T-hedra and T-surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the undeformed surface as OBJ.
    Build {
        design: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Samples per direction for smooth designs.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        res: usize,
    },
    /// Write the surface deformed to parameter `t` as OBJ.
    Deform {
        design: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Read `t` as the exponential parameter `s` (`1 + t = e^{2s}`); discrete designs only.
        #[arg(long)]
        exponential: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        res: usize,
    },
    /// Write a frame sequence and its manifest into a directory.
    Sweep {
        design: PathBuf,
        /// Evenly spaced frames over the range.
        #[arg(long, conflicts_with = "t")]
        frames: Option<usize>,
        /// Explicit parameters, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        /// Replaces an unbounded range end.
        #[arg(long, default_value_t = 1.0)]
        fallback: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        res: usize,
    },
    /// Print the admissible parameter range as JSON.
    Range { design: PathBuf },
    /// Print the surface class as JSON.
    Classify { design: PathBuf },
    /// Run the isometry, planarity and identity checks; exits with status 1 on failure.
    Verify {
        design: PathBuf,
        /// Parameters to check; default is evenly spaced samples of the range.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Deform a smooth design within a chosen class and write the sampled surface as OBJ.
    SmoothDeform {
        design: PathBuf,
        #[arg(long, value_enum)]
        class: SmoothClass,
        /// Additive `t` for general, axial and revolution; exponential `s` for molding and
        /// translational.
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        res: usize,
    },
    /// Write a preset design document: `miura` or a smooth preset name.
    Preset {
        name: String,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Serve the HTTP/JSON API over a workspace directory.
    Serve {
        #[arg(long, env = "THEDRA_WORKSPACE", default_value = "thedra-workspace")]
        workspace: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothClass {
    General,
    Molding,
    Axial,
    Revolution,
    Translational,
}

fn load_model(path: &Path) -> anyhow::Result<(DesignDocument, Model)> {
    let doc = DesignDocument::load(path).with_context(|| format!("loading {}", path.display()))?;
    let model = doc.model()?;
    Ok((doc, model))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn json_line(value: &impl Serialize) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Converts a smooth model to the requested deformation class.
pub fn as_class(model: SmoothModel, class: SmoothClass) -> anyhow::Result<SmoothModel> {
    use SmoothModel as M;
    Ok(match (class, model) {
        (SmoothClass::General, M::General(s) | M::Molding(s)) => M::General(s),
        (SmoothClass::General, M::Axial(s) | M::Revolution(s)) => M::General(s.to_general()?),
        (SmoothClass::General, M::Translational(s)) => M::General(s.to_general()?),
        (SmoothClass::Molding, M::General(s) | M::Molding(s)) => {
            molding_surface_range(&s)?;
            M::Molding(s)
        }
        (SmoothClass::Axial, M::Axial(s) | M::Revolution(s)) => M::Axial(s),
        (SmoothClass::Revolution, M::Revolution(s)) => M::Revolution(s),
        (SmoothClass::Translational, M::Translational(s)) => M::Translational(s),
        (class, model) => bail!(
            "a {} design cannot be deformed in the {:?} class",
            model.class_name(),
            class
        ),
    })
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Build {
            design,
            output,
            res,
        } => {
            let (_, model) = load_model(&design)?;
            emit(
                &to_obj(&surface_at(&model, 0.0, res)?),
                output.as_deref(),
                out,
            )?;
        }
        Command::Deform {
            design,
            t,
            exponential,
            output,
            res,
        } => {
            let (_, model) = load_model(&design)?;
            let t = match (&model, exponential) {
                (Model::Discrete(_), true) => exponential_to_additive(t),
                (Model::Smooth(_), true) => bail!("--exponential applies to discrete designs"),
                _ => t,
            };
            emit(
                &to_obj(&surface_at(&model, t, res)?),
                output.as_deref(),
                out,
            )?;
        }
        Command::Sweep {
            design,
            frames,
            t,
            fallback,
            out: dir,
            res,
        } => {
            let (doc, model) = load_model(&design)?;
            let samples = match frames {
                Some(count) => Samples::Count { count, fallback },
                None if !t.is_empty() => Samples::Explicit(t),
                None => bail!("give --frames or --t"),
            };
            let manifest = write_sweep(&model, &doc.metadata.name, &samples, res, &dir)?;
            writeln!(
                out,
                "wrote {} frames to {}",
                manifest.frames.len(),
                dir.display()
            )?;
        }
        Command::Range { design } => {
            let (_, model) = load_model(&design)?;
            emit(&json_line(&range_of(&model)?)?, None, out)?;
        }
        Command::Classify { design } => {
            let (_, model) = load_model(&design)?;
            emit(&json_line(&classify_model(&model)?)?, None, out)?;
        }
        Command::Verify { design, t, samples } => {
            let (_, model) = load_model(&design)?;
            let report = verify_model(
                &model,
                &VerifyOptions {
                    parameters: t,
                    samples,
                },
            )?;
            emit(&json_line(&report)?, None, out)?;
            return Ok(if report.pass { 0 } else { 1 });
        }
        Command::SmoothDeform {
            design,
            class,
            t,
            output,
            res,
        } => {
            let (_, model) = load_model(&design)?;
            let Model::Smooth(smooth) = model else {
                bail!("smooth-deform needs a smooth design");
            };
            let target = as_class(smooth, class)?;
            let surface = deform_smooth(&target, t)?;
            let r = res.max(1);
            let grid = thedra::smooth::sample_to_grid(surface.as_ref(), r, r)?;
            emit(&to_obj(&grid.surface), output.as_deref(), out)?;
        }
        Command::Preset {
            name,
            a,
            b,
            c,
            d,
            m,
            n,
            output,
        } => {
            let doc = if name == "miura" {
                miura_document(a, b, c, d, m, n)?
            } else {
                smooth_preset(&name).with_context(|| {
                    format!(
                        "unknown preset `{name}`; known: miura, {}",
                        SMOOTH_PRESETS.join(", ")
                    )
                })?
            };
            emit(&doc.to_json(), output.as_deref(), out)?;
        }
        Command::Serve {
            workspace,
            port,
            host,
        } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(out, "serving {} on http://{addr}", workspace.display())?;
            out.flush()?;
            runtime.block_on(crate::service::serve(&workspace, addr))?;
        }
    }
    Ok(0)
}
