//! Command-line surface.
//!
//! Four subcommands drive the pipeline: `project`, `attack-rate`, `compare`,
//! and `validate`. Exit codes: 0 on success, 1 when input data or parameters
//! fail validation, 2 on usage errors. Output is byte-deterministic for
//! identical inputs.

use std::io::Write;

use crate::dataio::{self, ScenarioBundle};
use crate::finalsize::{self, R0};
use crate::projection::{self, DeathTable};
use crate::reporting::{self, RenderFormat};

const USAGE: &str = "usage: epitoll <command> [options]

commands:
  project --scenario FILE [--format text|csv] [--summary] [--threshold YEARS]...
      project expected deaths for a scenario; thresholds add
      share-of-deaths lines to the summary
  attack-rate --r0 X
      final-size attack rate for a basic reproductive number, 6 decimals
  compare --scenario FILE [--scenario FILE]... [--format text|csv]
      side-by-side per-bin totals and ratios for several scenarios
  validate FILE
      check a dataset or scenario file and report OK or the first error
";

/// Run the CLI against `args` (without the program name); returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            let _ = write!(err, "{USAGE}");
            2
        }
        Err(Failure::Validation(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Validation(String),
}

impl From<dataio::LoadError> for Failure {
    fn from(e: dataio::LoadError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<projection::ProjectionError> for Failure {
    fn from(e: projection::ProjectionError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<finalsize::FinalSizeError> for Failure {
    fn from(e: finalsize::FinalSizeError) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn dispatch(args: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let (command, rest) = args.split_first().ok_or_else(|| usage("missing command"))?;
    match command.as_str() {
        "project" => project(rest, out),
        "attack-rate" => attack_rate(rest, out),
        "compare" => compare(rest, out),
        "validate" => validate(rest, out),
        other => Err(usage(format!("unknown command `{other}`"))),
    }
}

fn parse_format(value: &str) -> Result<RenderFormat, Failure> {
    match value {
        "text" => Ok(RenderFormat::Text),
        "csv" => Ok(RenderFormat::Csv),
        other => Err(usage(format!(
            "unknown format `{other}` (expected text or csv)"
        ))),
    }
}

fn flag_value<'a>(
    flag: &str,
    mut iter: impl Iterator<Item = &'a String>,
) -> Result<&'a String, Failure> {
    iter.next()
        .ok_or_else(|| usage(format!("{flag} expects a value")))
}

fn project_bundle(bundle: &ScenarioBundle) -> Result<DeathTable, Failure> {
    projection::project_deaths(&bundle.demographics, &bundle.lethality, &bundle.scenario)
        .map_err(Failure::from)
}

fn project(args: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let mut scenario_path = None;
    let mut format = RenderFormat::Text;
    let mut summary = false;
    let mut thresholds = Vec::new();

    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--scenario" => scenario_path = Some(flag_value("--scenario", &mut iter)?.clone()),
            "--format" => format = parse_format(flag_value("--format", &mut iter)?)?,
            "--summary" => summary = true,
            "--threshold" => {
                let raw = flag_value("--threshold", &mut iter)?;
                let t: u32 = raw.parse().map_err(|_| {
                    usage(format!("--threshold expects an age in years, got `{raw}`"))
                })?;
                thresholds.push(t);
                summary = true;
            }
            other => return Err(usage(format!("unknown option `{other}`"))),
        }
    }
    let scenario_path = scenario_path.ok_or_else(|| usage("project requires --scenario FILE"))?;

    let bundle = dataio::load_scenario(&scenario_path)?;
    let table = project_bundle(&bundle)?;
    let _ = write!(out, "{}", reporting::render_death_table(&table, format));
    if summary {
        let s = projection::summarize(&table, &thresholds)?;
        let _ = writeln!(out);
        let _ = write!(out, "{}", reporting::render_summary(&s));
    }
    Ok(())
}

fn attack_rate(args: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let mut r0_value = None;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--r0" => {
                let raw = flag_value("--r0", &mut iter)?;
                let v: f64 = raw
                    .parse()
                    .map_err(|_| usage(format!("--r0 expects a number, got `{raw}`")))?;
                r0_value = Some(v);
            }
            other => return Err(usage(format!("unknown option `{other}`"))),
        }
    }
    let raw = r0_value.ok_or_else(|| usage("attack-rate requires --r0 X"))?;
    let r0 = R0::new(raw)?;
    let z = finalsize::attack_rate(r0).value();
    let _ = writeln!(out, "{z:.6}");
    Ok(())
}

fn compare(args: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let mut paths = Vec::new();
    let mut format = RenderFormat::Text;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--scenario" => paths.push(flag_value("--scenario", &mut iter)?.clone()),
            "--format" => format = parse_format(flag_value("--format", &mut iter)?)?,
            other => return Err(usage(format!("unknown option `{other}`"))),
        }
    }
    if paths.is_empty() {
        return Err(usage("compare requires at least one --scenario FILE"));
    }

    let mut tables = Vec::with_capacity(paths.len());
    for path in &paths {
        let bundle = dataio::load_scenario(path)?;
        tables.push(project_bundle(&bundle)?);
    }
    let comparison = projection::compare_scenarios(&tables)?;
    let _ = write!(out, "{}", reporting::render_comparison(&comparison, format));
    Ok(())
}

fn validate(args: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let path = match args {
        [path] => path,
        [] => return Err(usage("validate requires a FILE argument")),
        _ => return Err(usage("validate takes exactly one FILE argument")),
    };
    dataio::validate_file(path)?;
    let _ = writeln!(out, "OK");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_vec(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn no_command_is_a_usage_error() {
        let (code, out, err) = run_vec(&[]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("usage:"));
    }

    #[test]
    fn unknown_command_and_flags_are_usage_errors() {
        assert_eq!(run_vec(&["frobnicate"]).0, 2);
        assert_eq!(run_vec(&["project", "--bogus"]).0, 2);
        assert_eq!(run_vec(&["attack-rate", "--r0", "abc"]).0, 2);
        assert_eq!(run_vec(&["attack-rate"]).0, 2);
    }

    #[test]
    fn attack_rate_prints_six_decimals() {
        let (code, out, _) = run_vec(&["attack-rate", "--r0", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0.993023\n");
    }

    #[test]
    fn non_positive_r0_is_a_validation_error() {
        let (code, out, err) = run_vec(&["attack-rate", "--r0", "-1"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("error: "));
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn validate_missing_file_is_a_validation_error() {
        let (code, _, err) = run_vec(&["validate", "/nonexistent/file.csv"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot read file"));
    }

    #[test]
    fn validate_reports_ok_for_good_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pop.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "age_lower,age_upper,male,female").unwrap();
        writeln!(f, "0,9,10,20").unwrap();
        writeln!(f, "10,,30,40").unwrap();
        drop(f);
        let (code, out, err) = run_vec(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "OK\n");
        assert!(err.is_empty());
    }
}
