//! Dataset and scenario-file ingestion.
//!
//! Three file formats feed the pipeline:
//!
//! * demographics CSV: `age_lower,age_upper,male,female`, one row per bin,
//!   `age_upper` empty on the open-ended row, integer counts;
//! * lethality CSV: `age_lower,age_upper,male_rate,female_rate`, rates as
//!   decimals in [0, 1] with at most six fractional digits;
//! * scenario config: flat `key = value` lines with `#` comments.
//!
//! `load_demographics` also accepts the `label,male,female,total` form
//! emitted by the rendering layer, so rendered count tables round-trip.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::agebin::{AgeBin, BinnedCountTable, BySex, Partition, PartitionError};
use crate::finalsize::R0;
use crate::projection::{AttackRateSource, LethalityTable, ProjectionError, Scenario};
use thiserror::Error;

const DEMOGRAPHICS_HEADER: &str = "age_lower,age_upper,male,female";
const LETHALITY_HEADER: &str = "age_lower,age_upper,male_rate,female_rate";
const RENDERED_HEADER: &str = "label,male,female,total";

/// Largest count that still converts to `f64` without losing integrality.
const MAX_EXACT_COUNT: u64 = 1 << 53;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: cannot read file: {source}")]
    MissingFile {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:1: malformed header: expected {expected}, found `{found}`")]
    MalformedHeader {
        path: String,
        expected: String,
        found: String,
    },
    #[error("{path}:{line}: {reason}")]
    MalformedRow {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("{path}:{line}: column {column}: `{value}` is not a non-negative integer")]
    NonIntegerCount {
        path: String,
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error(
        "{path}:{line}: column {column}: count {value} exceeds the exactly representable range"
    )]
    CountOutOfRange {
        path: String,
        line: usize,
        column: &'static str,
        value: u64,
    },
    #[error("{path}:{line}: column {column}: `{value}` is not a decimal rate with at most 6 fractional digits")]
    MalformedRate {
        path: String,
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("{path}:{line}: column {column}: rate {value} outside [0, 1]")]
    RateOutOfRange {
        path: String,
        line: usize,
        column: &'static str,
        value: f64,
    },
    #[error("{path}: invalid partition: {source}")]
    InvalidPartition {
        path: String,
        source: PartitionError,
    },
    #[error("{path}:{line}: expected `key = value`")]
    MalformedConfigLine { path: String, line: usize },
    #[error("{path}:{line}: unknown key `{key}`")]
    UnknownKey {
        path: String,
        line: usize,
        key: String,
    },
    #[error("{path}:{line}: duplicate key `{key}`")]
    DuplicateKey {
        path: String,
        line: usize,
        key: String,
    },
    #[error("{path}: missing required key `{key}`")]
    MissingKey { path: String, key: &'static str },
    #[error("{path}:{line}: invalid value for `{key}`: {reason}")]
    InvalidValue {
        path: String,
        line: usize,
        key: String,
        reason: String,
    },
    #[error("{path}: both attack_rate and r0 are set; choose one")]
    BothAttackRateAndR0 { path: String },
    #[error("{path}: neither attack_rate nor r0 is set")]
    NeitherAttackRateNorR0 { path: String },
    #[error(transparent)]
    InvalidScenario(#[from] ProjectionError),
}

/// What `validate_file` recognized a file as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Demographics,
    Lethality,
    Scenario,
}

/// A fully loaded scenario: parameters plus both referenced datasets.
#[derive(Debug, Clone)]
pub struct ScenarioBundle {
    pub scenario: Scenario,
    pub demographics: BinnedCountTable,
    pub lethality: LethalityTable,
}

fn read_file(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::MissingFile {
        path: path.display().to_string(),
        source,
    })
}

fn split_row<'a>(
    path: &str,
    line_no: usize,
    line: &'a str,
    fields: usize,
) -> Result<Vec<&'a str>, LoadError> {
    let parts: Vec<&str> = line.split(',').collect();
    if parts.len() != fields {
        return Err(LoadError::MalformedRow {
            path: path.to_string(),
            line: line_no,
            reason: format!(
                "expected {fields} comma-separated fields, found {}",
                parts.len()
            ),
        });
    }
    Ok(parts)
}

fn parse_count(
    path: &str,
    line: usize,
    column: &'static str,
    value: &str,
) -> Result<f64, LoadError> {
    let n: u64 = value
        .trim()
        .parse()
        .map_err(|_| LoadError::NonIntegerCount {
            path: path.to_string(),
            line,
            column,
            value: value.to_string(),
        })?;
    if n > MAX_EXACT_COUNT {
        return Err(LoadError::CountOutOfRange {
            path: path.to_string(),
            line,
            column,
            value: n,
        });
    }
    Ok(n as f64)
}

fn parse_age(path: &str, line: usize, column: &'static str, value: &str) -> Result<u32, LoadError> {
    value
        .trim()
        .parse()
        .map_err(|_| LoadError::NonIntegerCount {
            path: path.to_string(),
            line,
            column,
            value: value.to_string(),
        })
}

/// Rates are held as written: at most six fractional digits, parsed by the
/// correctly rounding `f64` parser.
fn parse_rate(
    path: &str,
    line: usize,
    column: &'static str,
    value: &str,
) -> Result<f64, LoadError> {
    let v = value.trim();
    let malformed = || LoadError::MalformedRate {
        path: path.to_string(),
        line,
        column,
        value: value.to_string(),
    };
    let (int_part, frac_part) = match v.split_once('.') {
        Some((i, f)) => (i, f),
        None => (v, ""),
    };
    if int_part.is_empty()
        || frac_part.len() > 6
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let rate: f64 = v.parse().map_err(|_| malformed())?;
    if !(0.0..=1.0).contains(&rate) {
        return Err(LoadError::RateOutOfRange {
            path: path.to_string(),
            line,
            column,
            value: rate,
        });
    }
    Ok(rate)
}

fn build_partition(path: &str, bins: Vec<AgeBin>) -> Result<Partition, LoadError> {
    Partition::new(bins).map_err(|source| LoadError::InvalidPartition {
        path: path.to_string(),
        source,
    })
}

/// Load a demographics CSV into a count table with exact integer counts.
pub fn load_demographics(path: impl AsRef<Path>) -> Result<BinnedCountTable, LoadError> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let content = read_file(path)?;
    let mut lines = content.lines().enumerate();

    let header = lines
        .next()
        .map(|(_, l)| l.trim_end_matches('\r'))
        .unwrap_or("");
    match header {
        DEMOGRAPHICS_HEADER => {}
        RENDERED_HEADER => return load_rendered_counts(&name, lines),
        _ => {
            return Err(LoadError::MalformedHeader {
                path: name,
                expected: format!("`{DEMOGRAPHICS_HEADER}` or `{RENDERED_HEADER}`"),
                found: header.to_string(),
            })
        }
    }

    let mut bins = Vec::new();
    let mut counts = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let row = split_row(&name, line_no, raw.trim_end_matches('\r'), 4)?;
        let lower = parse_age(&name, line_no, "age_lower", row[0])?;
        let upper = match row[1].trim() {
            "" => None,
            text => Some(parse_age(&name, line_no, "age_upper", text)?),
        };
        bins.push(AgeBin { lower, upper });
        counts.push(BySex::new(
            parse_count(&name, line_no, "male", row[2])?,
            parse_count(&name, line_no, "female", row[3])?,
        ));
    }
    let partition = build_partition(&name, bins)?;
    Ok(BinnedCountTable::new(partition, counts).expect("parsed cells are valid"))
}

/// The `label,male,female,total` form produced by the renderer; the total
/// column and trailing `Total` row are recomputed, not trusted.
fn load_rendered_counts<'a>(
    name: &str,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<BinnedCountTable, LoadError> {
    let mut bins = Vec::new();
    let mut counts = Vec::new();
    let mut saw_total_row = false;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let row = split_row(name, line_no, raw.trim_end_matches('\r'), 4)?;
        if saw_total_row {
            return Err(LoadError::MalformedRow {
                path: name.to_string(),
                line: line_no,
                reason: "data after the Total row".to_string(),
            });
        }
        if row[0] == "Total" {
            saw_total_row = true;
            continue;
        }
        let bin = AgeBin::parse_label(row[0]).ok_or_else(|| LoadError::MalformedRow {
            path: name.to_string(),
            line: line_no,
            reason: format!("`{}` is not an age bin label", row[0]),
        })?;
        bins.push(bin);
        counts.push(BySex::new(
            parse_count(name, line_no, "male", row[1])?,
            parse_count(name, line_no, "female", row[2])?,
        ));
    }
    let partition = build_partition(name, bins)?;
    Ok(BinnedCountTable::new(partition, counts).expect("parsed cells are valid"))
}

/// Load a lethality CSV into a rate table.
pub fn load_lethality(path: impl AsRef<Path>) -> Result<LethalityTable, LoadError> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let content = read_file(path)?;
    let mut lines = content.lines().enumerate();

    let header = lines
        .next()
        .map(|(_, l)| l.trim_end_matches('\r'))
        .unwrap_or("");
    if header != LETHALITY_HEADER {
        return Err(LoadError::MalformedHeader {
            path: name,
            expected: format!("`{LETHALITY_HEADER}`"),
            found: header.to_string(),
        });
    }

    let mut bins = Vec::new();
    let mut rates = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let row = split_row(&name, line_no, raw.trim_end_matches('\r'), 4)?;
        let lower = parse_age(&name, line_no, "age_lower", row[0])?;
        let upper = match row[1].trim() {
            "" => None,
            text => Some(parse_age(&name, line_no, "age_upper", text)?),
        };
        bins.push(AgeBin { lower, upper });
        rates.push(BySex::new(
            parse_rate(&name, line_no, "male_rate", row[2])?,
            parse_rate(&name, line_no, "female_rate", row[3])?,
        ));
    }
    let partition = build_partition(&name, bins)?;
    Ok(LethalityTable::new(partition, rates)?)
}

/// Parsed key-value pairs of a scenario file, before defaulting.
struct ConfigEntries {
    path: String,
    entries: BTreeMap<String, (usize, String)>,
}

impl ConfigEntries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }
}

const SCENARIO_KEYS: [&str; 7] = [
    "name",
    "demographics",
    "lethality",
    "shift_years",
    "vaccinated_fraction",
    "attack_rate",
    "r0",
];

fn parse_config(path: &Path) -> Result<ConfigEntries, LoadError> {
    let name = path.display().to_string();
    let content = read_file(path)?;
    let mut entries = BTreeMap::new();
    for (idx, raw) in content.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(LoadError::MalformedConfigLine {
            path: name.clone(),
            line: line_no,
        })?;
        let key = key.trim();
        let value = value.trim();
        if !SCENARIO_KEYS.contains(&key) {
            return Err(LoadError::UnknownKey {
                path: name.clone(),
                line: line_no,
                key: key.to_string(),
            });
        }
        if entries.contains_key(key) {
            return Err(LoadError::DuplicateKey {
                path: name.clone(),
                line: line_no,
                key: key.to_string(),
            });
        }
        entries.insert(key.to_string(), (line_no, value.to_string()));
    }
    Ok(ConfigEntries {
        path: name,
        entries,
    })
}

/// Load a scenario config and both datasets it references.
///
/// Relative dataset paths resolve against the scenario file's directory.
/// An `r0` key is resolved to an attack rate through the final-size
/// equation here, at load time.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioBundle, LoadError> {
    let path = path.as_ref();
    let mut config = parse_config(path)?;
    let name_of_file = config.path.clone();

    let require = |entry: Option<(usize, String)>, key: &'static str| {
        entry.map(|(_, v)| v).ok_or(LoadError::MissingKey {
            path: name_of_file.clone(),
            key,
        })
    };
    let scenario_name = require(config.take("name"), "name")?;
    let demographics_value = require(config.take("demographics"), "demographics")?;
    let lethality_value = require(config.take("lethality"), "lethality")?;

    let invalid = |line: usize, key: &str, reason: String| LoadError::InvalidValue {
        path: name_of_file.clone(),
        line,
        key: key.to_string(),
        reason,
    };

    let shift_years = match config.take("shift_years") {
        Some((line, v)) => v
            .parse::<u32>()
            .map_err(|e| invalid(line, "shift_years", e.to_string()))?,
        None => 15,
    };
    let vaccinated_fraction = match config.take("vaccinated_fraction") {
        Some((line, v)) => {
            let f = v
                .parse::<f64>()
                .map_err(|e| invalid(line, "vaccinated_fraction", e.to_string()))?;
            if !(0.0..=1.0).contains(&f) {
                return Err(invalid(
                    line,
                    "vaccinated_fraction",
                    format!("{f} outside [0, 1]"),
                ));
            }
            f
        }
        None => 1.0,
    };

    let attack_entry = config.take("attack_rate");
    let r0_entry = config.take("r0");
    let attack_rate = match (attack_entry, r0_entry) {
        (Some(_), Some(_)) => return Err(LoadError::BothAttackRateAndR0 { path: name_of_file }),
        (Some((line, v)), None) => {
            let rate = v
                .parse::<f64>()
                .map_err(|e| invalid(line, "attack_rate", e.to_string()))?;
            if !(0.0..=1.0).contains(&rate) {
                return Err(invalid(
                    line,
                    "attack_rate",
                    format!("{rate} outside [0, 1]"),
                ));
            }
            AttackRateSource::Explicit(rate)
        }
        (None, Some((line, v))) => {
            let raw = v
                .parse::<f64>()
                .map_err(|e| invalid(line, "r0", e.to_string()))?;
            let r0 = R0::new(raw).map_err(|e| invalid(line, "r0", e.to_string()))?;
            // Resolve to a concrete rate now so downstream consumers see a
            // fully determined scenario.
            AttackRateSource::Explicit(crate::finalsize::attack_rate(r0).value())
        }
        (None, None) => AttackRateSource::Explicit(1.0),
    };

    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let demographics_path: PathBuf = base.join(&demographics_value);
    let lethality_path: PathBuf = base.join(&lethality_value);

    let demographics = load_demographics(&demographics_path)?;
    let lethality = load_lethality(&lethality_path)?;

    let scenario = Scenario::new(
        scenario_name,
        shift_years,
        vaccinated_fraction,
        attack_rate,
        demographics_path.display().to_string(),
        lethality_path.display().to_string(),
    )?;

    Ok(ScenarioBundle {
        scenario,
        demographics,
        lethality,
    })
}

/// Validate any supported file, dispatching on extension and header.
///
/// Failures are exactly the errors of the corresponding load operation.
pub fn validate_file(path: impl AsRef<Path>) -> Result<FileKind, LoadError> {
    let path = path.as_ref();
    if path.extension().and_then(|e| e.to_str()) == Some("csv") {
        let content = read_file(path)?;
        let header = content.lines().next().unwrap_or("").trim_end_matches('\r');
        if header == LETHALITY_HEADER {
            load_lethality(path)?;
            return Ok(FileKind::Lethality);
        }
        load_demographics(path)?;
        Ok(FileKind::Demographics)
    } else {
        load_scenario(path)?;
        Ok(FileKind::Scenario)
    }
}
