//! Argument parsing and dispatch for the `winterres` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::commands::{cmd_classify, cmd_compare, cmd_poles};
use crate::complex::parse_complex;
use crate::config::{InteractionConfig, Overrides, RunConfig};
use crate::error::CliError;
use crate::report::text_table;

#[derive(Debug, Parser)]
#[command(
    name = "winterres",
    version,
    about = "Resonances of the generalized Winter model: classification, pole search, asymptotic comparison"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the class, separation flag and equivalent boundary-condition forms.
    Classify(RunArgs),
    /// Locate resonance poles and emit a CSV table and optional SVG plot.
    Poles(RunArgs),
    /// Compare located poles with the asymptotic formulas.
    Compare(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// δ coupling α (1/length).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// δ′ coupling β (length).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Complex coupling γ written as a+bi.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub gamma: Option<Complex64>,
    /// Interaction to overlay, e.g. "alpha=50" or "beta=0.01,gamma=1+1i"; repeatable.
    #[arg(long = "interaction", allow_hyphen_values = true)]
    pub interaction: Vec<InteractionConfig>,
    /// Partial-wave index.
    #[arg(long)]
    pub l: Option<u32>,
    /// Sphere radius R.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Right edge of the search window in Re k.
    #[arg(long = "re-max")]
    pub re_max: Option<f64>,
    /// Bottom edge of the search window in Im k (default: −(ln(re_max·R) + 5)/R).
    #[arg(long = "im-min", allow_negative_numbers = true)]
    pub im_min: Option<f64>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the pole table to this CSV file instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write a scatter plot of the poles to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also print an aligned text table.
    #[arg(long)]
    pub table: bool,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            interactions: self.interaction.clone(),
            l: self.l,
            radius: self.radius,
            re_max: self.re_max,
            im_min: self.im_min,
            csv_path: self.csv.clone(),
            svg_path: self.svg.clone(),
            table: self.table,
        }
    }

    pub fn config(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(self.overrides().apply(base))
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e))
    };
    match command {
        Command::Classify(args) => {
            let cfg = args.config()?;
            cfg.validate()?;
            for (j, i) in cfg.interactions().iter().enumerate() {
                if j > 0 {
                    emit(out, "\n")?;
                }
                emit(out, &cmd_classify(&i.params()))?;
            }
        }
        Command::Poles(args) => {
            let cfg = args.config()?;
            let report = cmd_poles(&cfg)?;
            if cfg.outputs.csv_path.is_none() {
                emit(out, &report.csv)?;
            }
            if cfg.outputs.table {
                emit(out, &text_table(&report.rows))?;
            }
        }
        Command::Compare(args) => {
            let cfg = args.config()?;
            emit(out, &cmd_compare(&cfg)?)?;
        }
    }
    Ok(())
}

/// Runs the command line `argv` (including the program name) and returns the
/// process exit status: 0 success, 2 usage error, 3 solver failure.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return e.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("winterres").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_flags() {
        let (code, out, _) = run_capture(&["classify", "--alpha", "50"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("delta-type; not separated"));
        let (_, out, _) = run_capture(&["classify", "--gamma", "1+1i"]);
        assert!(out.starts_with("intermediate-type"));
        let (_, out, _) = run_capture(&["classify", "--alpha", "4", "--beta", "1"]);
        assert!(out.contains("separated: embedded eigenvalues"));
        let (code, out, _) = run_capture(&["classify", "--gamma", "-1-2i", "--alpha", "-3"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["classify", "--gamma", "1+2j"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["poles", "--radius", "-1"]).0, 2);
        assert_eq!(run_capture(&["poles", "--im-min", "1"]).0, 2);
        assert_eq!(run_capture(&["poles", "--config", "/nonexistent/cfg.json"]).0, 2);
        assert_eq!(run_capture(&["poles", "--interaction", "delta=1"]).0, 2);
    }

    #[test]
    fn poles_to_stdout() {
        let (code, out, _) = run_capture(&["poles", "--alpha", "50", "--re-max", "12"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,re_k,im_k"));
        assert!(out.lines().count() > 2);
    }
}
