//! Expected-death projection.
//!
//! The pipeline: shift demographic boundaries down to model vaccine
//! protection, regroup onto the lethality partition, multiply counts by
//! per-bin death probabilities, and blend vaccinated and unvaccinated
//! outcomes by coverage and attack rate. All cells stay unrounded reals;
//! integer rounding happens only in the rendering layer.

use std::collections::BTreeMap;

use crate::agebin::{BinnedCountTable, BySex, Partition, RebinError, RebinMode};
use crate::finalsize::{self, R0};
use crate::sum::Accumulator;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectionError {
    #[error("demographics cannot be regrouped onto the lethality partition: {0}")]
    PartitionMismatch(#[from] RebinError),
    #[error("rate table has {got} rate rows for {expected} bins")]
    RateLengthMismatch { expected: usize, got: usize },
    #[error("death rate {value} outside [0, 1] in bin {bin}")]
    RateOutOfRange { bin: String, value: f64 },
    #[error("vaccinated fraction {0} outside [0, 1]")]
    InvalidVaccinatedFraction(f64),
    #[error("attack rate {0} outside [0, 1]")]
    InvalidAttackRate(f64),
    #[error("threshold {0} does not coincide with a reported bin lower bound")]
    ThresholdNotOnBinBoundary(u32),
    #[error("death tables use different partitions and cannot be compared")]
    MixedPartitions,
    #[error("no death tables to compare")]
    EmptyComparison,
}

/// Probability that an infected person of a given bin and sex dies.
#[derive(Debug, Clone, PartialEq)]
pub struct LethalityTable {
    partition: Partition,
    rates: Vec<BySex<f64>>,
}

impl LethalityTable {
    pub fn new(partition: Partition, rates: Vec<BySex<f64>>) -> Result<Self, ProjectionError> {
        if rates.len() != partition.len() {
            return Err(ProjectionError::RateLengthMismatch {
                expected: partition.len(),
                got: rates.len(),
            });
        }
        for (bin, cell) in partition.bins().iter().zip(&rates) {
            for v in [cell.male, cell.female] {
                if !(0.0..=1.0).contains(&v) {
                    return Err(ProjectionError::RateOutOfRange {
                        bin: bin.to_string(),
                        value: v,
                    });
                }
            }
        }
        Ok(Self { partition, rates })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rates(&self) -> &[BySex<f64>] {
        &self.rates
    }
}

/// Where a scenario's attack rate comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackRateSource {
    /// A rate in [0, 1] used as-is. 1.0 models universal exposure.
    Explicit(f64),
    /// Resolved through the final-size equation.
    FromR0(R0),
}

/// One projection configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    /// Years subtracted from every demographic boundary before projecting.
    pub shift_years: u32,
    /// Fraction of the population the shift applies to.
    pub vaccinated_fraction: f64,
    pub attack_rate: AttackRateSource,
    pub demographics_ref: String,
    pub lethality_ref: String,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        shift_years: u32,
        vaccinated_fraction: f64,
        attack_rate: AttackRateSource,
        demographics_ref: impl Into<String>,
        lethality_ref: impl Into<String>,
    ) -> Result<Self, ProjectionError> {
        if !(0.0..=1.0).contains(&vaccinated_fraction) {
            return Err(ProjectionError::InvalidVaccinatedFraction(
                vaccinated_fraction,
            ));
        }
        if let AttackRateSource::Explicit(rate) = attack_rate {
            if !(0.0..=1.0).contains(&rate) {
                return Err(ProjectionError::InvalidAttackRate(rate));
            }
        }
        Ok(Self {
            name: name.into(),
            shift_years,
            vaccinated_fraction,
            attack_rate,
            demographics_ref: demographics_ref.into(),
            lethality_ref: lethality_ref.into(),
        })
    }

    /// The attack rate actually applied, solving the final-size equation
    /// when the scenario was given an R0.
    pub fn resolved_attack_rate(&self) -> f64 {
        match self.attack_rate {
            AttackRateSource::Explicit(rate) => rate,
            AttackRateSource::FromR0(r0) => finalsize::attack_rate(r0).value(),
        }
    }
}

/// Expected deaths per lethality bin per sex, unrounded.
#[derive(Debug, Clone, PartialEq)]
pub struct DeathTable {
    partition: Partition,
    cells: Vec<BySex<f64>>,
    scenario: Scenario,
}

impl DeathTable {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn cells(&self) -> &[BySex<f64>] {
        &self.cells
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn totals(&self) -> BySex<f64> {
        let mut male = Accumulator::new();
        let mut female = Accumulator::new();
        for cell in &self.cells {
            male.add(cell.male);
            female.add(cell.female);
        }
        BySex::new(male.total(), female.total())
    }

    pub fn total(&self) -> f64 {
        let t = self.totals();
        t.male + t.female
    }
}

/// Totals and shares computed from unrounded death cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub total_deaths: f64,
    pub male_share: f64,
    /// Share of deaths in reported bins whose lower bound is >= the key.
    pub share_at_or_above: BTreeMap<u32, f64>,
}

/// Rebin with exact aggregation where the partitions nest, proportional
/// splitting where they do not.
fn rebin_flexible(
    table: &BinnedCountTable,
    target: &Partition,
) -> Result<BinnedCountTable, ProjectionError> {
    match table.rebin(target, RebinMode::Exact) {
        Err(RebinError::StraddlingBinInExactMode { .. }) => table
            .rebin(target, RebinMode::UniformSplit)
            .map_err(ProjectionError::from),
        other => other.map_err(ProjectionError::from),
    }
}

/// Project expected deaths for one scenario.
///
/// Shifted and unshifted demographics are both regrouped onto the lethality
/// partition; each cell is then
/// `attack * (f * shifted_pop * rate + (1 - f) * unshifted_pop * rate)`.
/// With full coverage and attack rate 1 this is the plain element-by-element
/// product of adjusted population and lethality.
pub fn project_deaths(
    demog: &BinnedCountTable,
    leth: &LethalityTable,
    scenario: &Scenario,
) -> Result<DeathTable, ProjectionError> {
    let shifted = rebin_flexible(
        &demog.shift_and_clamp(scenario.shift_years),
        leth.partition(),
    )?;
    let unshifted = rebin_flexible(demog, leth.partition())?;

    let attack = scenario.resolved_attack_rate();
    let coverage = scenario.vaccinated_fraction;

    let cells = shifted
        .counts()
        .iter()
        .zip(unshifted.counts())
        .zip(leth.rates())
        .map(|((a, u), rate)| {
            a.zip_with(*rate, |pop, r| pop * r)
                .zip_with(u.zip_with(*rate, |pop, r| pop * r), |vaxed, unvaxed| {
                    attack * (coverage * vaxed + (1.0 - coverage) * unvaxed)
                })
        })
        .collect();

    Ok(DeathTable {
        partition: leth.partition().clone(),
        cells,
        scenario: scenario.clone(),
    })
}

/// The protection-fully-lost case: no shift, full coverage, full exposure.
pub fn waning_scenario(
    demog: &BinnedCountTable,
    leth: &LethalityTable,
) -> Result<DeathTable, ProjectionError> {
    let scenario = Scenario::new("waning", 0, 1.0, AttackRateSource::Explicit(1.0), "", "")
        .expect("fixed waning parameters are valid");
    project_deaths(demog, leth, &scenario)
}

/// Reported lower bound of bin `idx`: the adjusted lower plus the shift,
/// except the first bin which always reports 0.
fn reported_lower(partition: &Partition, shift: u32, idx: usize) -> u32 {
    if idx == 0 {
        0
    } else {
        partition.bins()[idx].lower + shift
    }
}

/// Summarize a death table: totals, male share, and the share of deaths at
/// or above each reported-age threshold.
pub fn summarize(dt: &DeathTable, thresholds: &[u32]) -> Result<Summary, ProjectionError> {
    let shift = dt.scenario().shift_years;
    let totals = dt.totals();
    let total = totals.male + totals.female;
    let male_share = if total > 0.0 {
        totals.male / total
    } else {
        0.0
    };

    let lowers: Vec<u32> = (0..dt.partition().len())
        .map(|i| reported_lower(dt.partition(), shift, i))
        .collect();

    let mut share_at_or_above = BTreeMap::new();
    for &threshold in thresholds {
        if !lowers.contains(&threshold) {
            return Err(ProjectionError::ThresholdNotOnBinBoundary(threshold));
        }
        let mut tail = Accumulator::new();
        for (cell, &lower) in dt.cells().iter().zip(&lowers) {
            if lower >= threshold {
                tail.add(cell.male);
                tail.add(cell.female);
            }
        }
        let share = if total > 0.0 {
            tail.total() / total
        } else {
            0.0
        };
        share_at_or_above.insert(threshold, share);
    }

    Ok(Summary {
        total_deaths: total,
        male_share,
        share_at_or_above,
    })
}

/// Side-by-side per-bin totals for several scenarios on one partition.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    /// Adjusted-age bin labels shared by every column.
    pub labels: Vec<String>,
    pub scenario_names: Vec<String>,
    /// `per_bin[scenario][bin]`, males and females combined.
    pub per_bin: Vec<Vec<f64>>,
    pub totals: Vec<f64>,
    /// Each scenario's total divided by the first scenario's total.
    pub ratios: Vec<f64>,
}

pub fn compare_scenarios(reports: &[DeathTable]) -> Result<ComparisonTable, ProjectionError> {
    let first = reports.first().ok_or(ProjectionError::EmptyComparison)?;
    if reports.iter().any(|r| r.partition() != first.partition()) {
        return Err(ProjectionError::MixedPartitions);
    }

    let labels = first.partition().labels();
    let per_bin: Vec<Vec<f64>> = reports
        .iter()
        .map(|r| r.cells().iter().map(BySex::total).collect())
        .collect();
    let totals: Vec<f64> = reports.iter().map(DeathTable::total).collect();
    let base = totals[0];
    let ratios = totals.iter().map(|t| t / base).collect();

    Ok(ComparisonTable {
        labels,
        scenario_names: reports.iter().map(|r| r.scenario().name.clone()).collect(),
        per_bin,
        totals,
        ratios,
    })
}
