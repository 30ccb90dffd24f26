//! Command-line front end for the `twobridge` library.
//!
//! Exit status: 0 on success, 2 when an input fails a hypothesis of the
//! construction (odd vertical twist, non-alternating word, exhausted
//! search), 1 on any other error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use twobridge::complexity::CertificateStatus;
use twobridge::{
    assemble_with, build_plat_diagram, certify_smc_with_margin, even_b_normalize, export_json,
    fraction_of, ingest_volume_table, outer_smooth, parse_conway, parse_fraction, render_svg,
    schubert_equivalent, twist_number, word_for_fraction, ComplexityError,
    ConwayError, ConwayWord, CurveError, EquivalencePolicy, Granularity, MorseError, SearchBound,
    Variant, VolumeRecord, DEFAULT_MARGIN,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twobridge", version, about = "Two-bridge links, immersed curves and stable maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Print the fraction, component count, parity and twist number.
    Analyze { word: String },
    /// Assemble a stable map and print its model document.
    Build {
        word: String,
        #[arg(long, value_enum, default_value_t = VariantArg::F2)]
        variant: VariantArg,
        /// per-region, per-crossing or subdivided:K
        #[arg(long, default_value = "per-crossing", value_parser = parse_granularity)]
        granularity: Granularity,
    },
    /// Certify smc = 2m from a hyperbolic volume.
    Certify {
        word: String,
        #[arg(long, conflicts_with = "volume_table", required_unless_present = "volume_table")]
        volume: Option<f64>,
        /// CSV of `label,conway_or_fraction,volume`.
        #[arg(long)]
        volume_table: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long)]
        json: bool,
    },
    /// Draw the curve, its strips, or the model as SVG.
    Render {
        word: String,
        #[arg(long, value_enum, default_value_t = RenderArg::Model)]
        what: RenderArg,
        #[arg(long, value_enum, default_value_t = VariantArg::F2)]
        variant: VariantArg,
    },
    /// Find an all-even-b word for the same link; accepts a word or p/q.
    Normalize {
        input: String,
        #[arg(long, default_value_t = SearchBound::default().max_weight)]
        max_weight: u64,
        #[arg(long, default_value_t = SearchBound::default().max_length)]
        max_length: usize,
    },
    /// Run a subcommand over every line of FILE, e.g.
    /// `batch words.txt build --variant f3`.
    Batch {
        file: PathBuf,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        command: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    F2,
    F3,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::F2 => Variant::F2,
            VariantArg::F3 => Variant::F3,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderArg {
    Curve,
    Strips,
    Model,
}

fn parse_granularity(s: &str) -> Result<Granularity, String> {
    match s {
        "per-region" => Ok(Granularity::PerRegion),
        "per-crossing" => Ok(Granularity::PerCrossing),
        _ => s
            .strip_prefix("subdivided:")
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|&k| k >= 1)
            .map(Granularity::Subdivided)
            .ok_or_else(|| format!("expected per-region, per-crossing or subdivided:K, got {s:?}")),
    }
}

/// A failed command: exit status plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(input: &str, hypothesis: bool, err: impl fmt::Display) -> Self {
        Failure {
            code: if hypothesis { EXIT_HYPOTHESIS } else { EXIT_ERROR },
            message: format!("{input}: {err}"),
        }
    }
}

trait Classified: fmt::Display {
    fn hypothesis(&self) -> bool;
}

impl Classified for ConwayError {
    fn hypothesis(&self) -> bool {
        self.is_hypothesis_failure()
    }
}

impl Classified for MorseError {
    fn hypothesis(&self) -> bool {
        self.is_hypothesis_failure()
    }
}

impl Classified for ComplexityError {
    fn hypothesis(&self) -> bool {
        self.is_hypothesis_failure()
    }
}

impl Classified for CurveError {
    fn hypothesis(&self) -> bool {
        false
    }
}

fn fail<E: Classified>(input: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::new(input, e.hypothesis(), e)
}

fn word(input: &str) -> Result<ConwayWord, Failure> {
    parse_conway(input).map_err(fail(input))
}

fn execute(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Analyze { word: input } => analyze(input),
        Command::Build { word: input, variant, granularity } => {
            let w = word(input)?;
            let model = assemble_with(&w, (*variant).into(), *granularity).map_err(fail(input))?;
            Ok(export_json(&model))
        }
        Command::Certify { word: input, volume, volume_table, margin, json } => {
            let w = word(input)?;
            let volume = match (volume, volume_table) {
                (Some(v), _) => *v,
                (None, Some(path)) => lookup_volume(&w, input, path)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let cert = certify_smc_with_margin(&w, volume, *margin).map_err(fail(input))?;
            if *json {
                let mut s = serde_json::to_string_pretty(&cert).expect("serializable");
                s.push('\n');
                return Ok(s);
            }
            let mut out = match cert.status {
                CertificateStatus::Certified => format!("certified smc={}\n", 2 * cert.m),
                CertificateStatus::Inconclusive => format!("inconclusive: {} <= smc <= {}\n", cert.smc_lower, cert.smc_upper),
                CertificateStatus::Inapplicable => "inapplicable: m = 0\n".to_string(),
            };
            for line in cert.chain() {
                out.push_str("  ");
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
        Command::Render { word: input, what, variant } => {
            let w = word(input)?;
            let variant: Variant = (*variant).into();
            Ok(match what {
                RenderArg::Curve => render_svg(&outer_smooth(&build_plat_diagram(&w)).map_err(fail(input))?),
                RenderArg::Strips => {
                    let model = assemble_with(&w, variant, Granularity::default()).map_err(fail(input))?;
                    render_svg(model.decomposition())
                }
                RenderArg::Model => {
                    let model = assemble_with(&w, variant, Granularity::default()).map_err(fail(input))?;
                    render_svg(&model)
                }
            })
        }
        Command::Normalize { input, max_weight, max_length } => {
            let w = if input.contains('/') {
                word_for_fraction(&parse_fraction(input).map_err(fail(input))?)
            } else {
                word(input)?
            };
            let bound = SearchBound { max_weight: *max_weight, max_length: *max_length };
            let found = even_b_normalize(&w, bound).map_err(fail(input))?;
            let f = fraction_of(&found).map_err(fail(input))?;
            Ok(format!("{found} fraction {f}\n"))
        }
        Command::Batch { .. } => Err(Failure::new("batch", false, "batch cannot be nested")),
    }
}

fn analyze(input: &str) -> Result<String, Failure> {
    let w = word(input)?;
    let f = fraction_of(&w).map_err(fail(input))?;
    let tw = match twist_number(&w) {
        Ok(tw) => tw.to_string(),
        Err(e) => format!("n/a ({e})"),
    };
    Ok(format!(
        "word: {w}\nfraction: {f}\ncomponents: {}\nall b even: {}\ntwist number: {tw}\n",
        f.component_count(),
        w.all_b_even()
    ))
}

/// Find the volume of `w` in a table: by label, or by a reference naming a
/// Schubert-equivalent link (mirrors allowed, volume is mirror invariant).
fn lookup_volume(w: &ConwayWord, input: &str, path: &PathBuf) -> Result<f64, Failure> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(&shown, false, e))?;
    let table: Vec<VolumeRecord> = ingest_volume_table(&text, &shown).map_err(fail(&shown))?;
    let target = fraction_of(w).map_err(fail(input))?;
    let hit = table.iter().find(|r| {
        if r.label == input {
            return true;
        }
        let f = if r.reference.contains('/') {
            parse_fraction(&r.reference).ok()
        } else {
            parse_conway(&r.reference).ok().and_then(|w| fraction_of(&w).ok())
        };
        f.is_some_and(|f| schubert_equivalent(&f, &target, EquivalencePolicy::UP_TO_MIRROR))
    });
    hit.map(|r| r.volume)
        .ok_or_else(|| Failure::new(input, false, format!("no entry for fraction {target} in {shown}")))
}

fn batch(file: &PathBuf, command: &[String]) -> Result<(String, String, i32), Failure> {
    let shown = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|e| Failure::new(&shown, false, e))?;
    let inputs: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    // Parse once with a placeholder to surface usage errors before the run.
    let template = |input: &str| {
        let mut args = vec!["twobridge".to_string(), command[0].clone(), input.to_string()];
        args.extend(command[1..].iter().cloned());
        Cli::try_parse_from(args)
    };
    match template("C(1)") {
        Err(e) => return Err(Failure { code: EXIT_ERROR, message: e.to_string() }),
        Ok(Cli { command: Command::Batch { .. } }) => {
            return Err(Failure::new("batch", false, "batch cannot be nested"))
        }
        Ok(_) => {}
    }
    let results: Vec<Result<String, Failure>> = inputs
        .par_iter()
        .map(|input| execute(&template(input).expect("validated above").command))
        .collect();
    let (mut out, mut err) = (String::new(), String::new());
    let (mut errors, mut hypothesis) = (false, false);
    for (input, r) in inputs.iter().zip(results) {
        match r {
            Ok(s) => {
                out.push_str(&format!("== {input}\n"));
                out.push_str(&s);
            }
            Err(f) => {
                err.push_str(&f.message);
                err.push('\n');
                errors |= f.code == EXIT_ERROR;
                hypothesis |= f.code == EXIT_HYPOTHESIS;
            }
        }
    }
    let code = match (errors, hypothesis) {
        (true, _) => EXIT_ERROR,
        (false, true) => EXIT_HYPOTHESIS,
        (false, false) => EXIT_OK,
    };
    Ok((out, err, code))
}

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Batch { file, command } => batch(file, command).map(|(out, err, code)| {
            let _ = stderr.write_all(err.as_bytes());
            (out, code)
        }),
        other => execute(other).map(|out| (out, EXIT_OK)),
    };
    match result {
        Ok((out, code)) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
