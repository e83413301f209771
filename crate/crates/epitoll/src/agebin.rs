//! Age-bin interval algebra.
//!
//! Demographic tables are indexed by inclusive integer age intervals plus a
//! single open-ended terminal bin ("80+"). All table arithmetic in this crate
//! reduces to three operations on those bins: shifting boundaries down with
//! clamping at zero, regrouping counts onto a coarser or incompatible
//! partition, and expanding to single-year resolution.
//!
//! A bin labelled "0-4" covers the five integer ages 0..=4.

use crate::sum::{self, Accumulator};
use thiserror::Error;

/// An integer age interval: `lower..=upper`, or `lower..` when open-ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgeBin {
    pub lower: u32,
    /// Inclusive upper age; `None` marks the open-ended terminal bin.
    pub upper: Option<u32>,
}

impl AgeBin {
    pub fn closed(lower: u32, upper: u32) -> Self {
        Self {
            lower,
            upper: Some(upper),
        }
    }

    pub fn open(lower: u32) -> Self {
        Self { lower, upper: None }
    }

    pub fn is_open(&self) -> bool {
        self.upper.is_none()
    }

    /// Number of single-year ages the bin covers; `None` for an open bin.
    pub fn width(&self) -> Option<u32> {
        self.upper.map(|u| u - self.lower + 1)
    }

    pub fn contains(&self, age: u32) -> bool {
        age >= self.lower && self.upper.is_none_or(|u| age <= u)
    }

    /// Both boundaries moved down by `years`, clamped at zero. Open stays open.
    pub fn shifted_down(&self, years: u32) -> AgeBin {
        AgeBin {
            lower: self.lower.saturating_sub(years),
            upper: self.upper.map(|u| u.saturating_sub(years)),
        }
    }

    /// Parse a label in the `Display` form: "0-4" or "80+".
    pub fn parse_label(label: &str) -> Option<AgeBin> {
        if let Some(lower) = label.strip_suffix('+') {
            return Some(AgeBin::open(lower.parse().ok()?));
        }
        let (lo, hi) = label.split_once('-')?;
        Some(AgeBin::closed(lo.parse().ok()?, hi.parse().ok()?))
    }
}

impl std::fmt::Display for AgeBin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.upper {
            Some(u) => write!(f, "{}-{}", self.lower, u),
            None => write!(f, "{}+", self.lower),
        }
    }
}

/// Why a bin sequence fails to form a valid [`Partition`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("first bin starts at age {0}, expected 0")]
    FirstBinNotZero(u32),
    #[error("gap between bins: ages {gap_start}-{gap_end} uncovered")]
    GapBetweenBins { gap_start: u32, gap_end: u32 },
    #[error("overlapping bins: age {0} covered twice")]
    OverlappingBins(u32),
    #[error("open-ended bin {0} is not the last bin")]
    OpenBinNotLast(AgeBin),
    #[error("partition does not end with an open-ended bin")]
    NoOpenBin,
    #[error("bin upper bound {upper} is below lower bound {lower}")]
    InvertedBounds { lower: u32, upper: u32 },
}

/// An ordered, contiguous, gap-free cover of every integer age.
///
/// Starts at 0 and ends with the single open-ended bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    bins: Vec<AgeBin>,
}

impl Partition {
    /// Validate a bin sequence, reporting the first violation found in order.
    pub fn new(bins: Vec<AgeBin>) -> Result<Self, PartitionError> {
        let first = bins.first().ok_or(PartitionError::NoOpenBin)?;
        if first.lower != 0 {
            return Err(PartitionError::FirstBinNotZero(first.lower));
        }
        for window in bins.windows(2) {
            let (prev, cur) = (window[0], window[1]);
            let prev_upper = match prev.upper {
                Some(u) => u,
                None => return Err(PartitionError::OpenBinNotLast(prev)),
            };
            if prev_upper < prev.lower {
                return Err(PartitionError::InvertedBounds {
                    lower: prev.lower,
                    upper: prev_upper,
                });
            }
            // Widen to u64: prev_upper + 1 must not wrap.
            let expected = u64::from(prev_upper) + 1;
            match u64::from(cur.lower) {
                l if l > expected => {
                    return Err(PartitionError::GapBetweenBins {
                        gap_start: prev_upper + 1,
                        gap_end: cur.lower - 1,
                    })
                }
                l if l < expected => return Err(PartitionError::OverlappingBins(cur.lower)),
                _ => {}
            }
        }
        let last = *bins.last().unwrap();
        if let Some(u) = last.upper {
            if u < last.lower {
                return Err(PartitionError::InvertedBounds {
                    lower: last.lower,
                    upper: u,
                });
            }
            return Err(PartitionError::NoOpenBin);
        }
        Ok(Self { bins })
    }

    /// Single-year bins 0..max_age-1 followed by the open bin at `max_age`.
    pub fn single_years(max_age: u32) -> Self {
        let mut bins: Vec<AgeBin> = (0..max_age).map(|a| AgeBin::closed(a, a)).collect();
        bins.push(AgeBin::open(max_age));
        Self { bins }
    }

    pub fn bins(&self) -> &[AgeBin] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid partition always holds at least the open bin
    }

    /// Lower bound of the terminal open-ended bin.
    pub fn open_lower(&self) -> u32 {
        self.bins.last().unwrap().lower
    }

    /// Index of the bin covering `age`; total coverage makes this infallible.
    pub fn bin_index_of(&self, age: u32) -> usize {
        self.bins
            .iter()
            .position(|b| b.contains(age))
            .expect("partition covers every age")
    }

    pub fn labels(&self) -> Vec<String> {
        self.bins.iter().map(AgeBin::to_string).collect()
    }
}

/// True iff every bin of `coarse` is a union of consecutive bins of `fine`.
pub fn is_coarsening(fine: &Partition, coarse: &Partition) -> bool {
    // Both partitions are contiguous covers of the same age axis, so this
    // holds exactly when every coarse cut point is also a fine cut point.
    coarse.bins().iter().all(|c| {
        fine.bins()
            .binary_search_by_key(&c.lower, |f| f.lower)
            .is_ok()
    })
}

/// A male/female pair of values, the per-bin cell of every table.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BySex<T> {
    pub male: T,
    pub female: T,
}

impl<T> BySex<T> {
    pub fn new(male: T, female: T) -> Self {
        Self { male, female }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> BySex<U> {
        BySex {
            male: f(self.male),
            female: f(self.female),
        }
    }

    pub fn zip_with<U, V>(self, other: BySex<U>, mut f: impl FnMut(T, U) -> V) -> BySex<V> {
        BySex {
            male: f(self.male, other.male),
            female: f(self.female, other.female),
        }
    }
}

impl BySex<f64> {
    pub fn total(&self) -> f64 {
        self.male + self.female
    }

    pub fn scale(&self, factor: f64) -> BySex<f64> {
        self.map(|v| v * factor)
    }
}

/// Invalid cell data for a [`BinnedCountTable`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableError {
    #[error("table has {got} count rows for {expected} bins")]
    CountLengthMismatch { expected: usize, got: usize },
    #[error("bin {bin} holds invalid count {value} (must be finite and >= 0)")]
    InvalidCount { bin: AgeBin, value: f64 },
}

/// Population counts per age bin per sex.
///
/// Counts are reals so that proportional splits and coverage blends compose;
/// source data are integers and integer-valued tables stay exact through
/// every conserving operation.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedCountTable {
    partition: Partition,
    counts: Vec<BySex<f64>>,
}

/// How [`BinnedCountTable::rebin`] may reallocate counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RebinMode {
    /// Every source bin must lie wholly inside one target bin; pure
    /// aggregation, exact.
    Exact,
    /// Straddling source bins split proportionally to the number of
    /// single-year ages falling in each target bin.
    UniformSplit,
}

/// Why counts cannot be reallocated onto a target partition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RebinError {
    #[error("source bin {bin} straddles a target boundary in exact mode")]
    StraddlingBinInExactMode { bin: AgeBin },
    #[error("open-ended source bin {bin} straddles a finite target bin")]
    OpenBinStraddlesFiniteTarget { bin: AgeBin },
    #[error("max age {max_age} falls inside finite bin {bin}")]
    MaxAgeInsideFiniteBin { max_age: u32, bin: AgeBin },
}

impl BinnedCountTable {
    pub fn new(partition: Partition, counts: Vec<BySex<f64>>) -> Result<Self, TableError> {
        if counts.len() != partition.len() {
            return Err(TableError::CountLengthMismatch {
                expected: partition.len(),
                got: counts.len(),
            });
        }
        for (bin, cell) in partition.bins().iter().zip(&counts) {
            for v in [cell.male, cell.female] {
                if !v.is_finite() || v < 0.0 {
                    return Err(TableError::InvalidCount {
                        bin: *bin,
                        value: v,
                    });
                }
            }
        }
        Ok(Self { partition, counts })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn counts(&self) -> &[BySex<f64>] {
        &self.counts
    }

    /// Per-sex population totals.
    pub fn totals(&self) -> BySex<f64> {
        BySex {
            male: sum::sum(self.counts.iter().map(|c| c.male)),
            female: sum::sum(self.counts.iter().map(|c| c.female)),
        }
    }

    pub fn total(&self) -> f64 {
        let t = self.totals();
        t.male + t.female
    }

    /// Move every boundary down by `shift` years, clamping at zero.
    ///
    /// Bins whose shifted range collides at zero merge into a single leading
    /// bin whose upper bound is the largest shifted upper among them.
    /// Per-sex totals are preserved exactly.
    pub fn shift_and_clamp(&self, shift: u32) -> BinnedCountTable {
        let bins = self.partition.bins();
        // The merge set is the prefix of bins whose shifted lower hits zero.
        let merged = bins.iter().take_while(|b| b.lower <= shift).count();
        let head = bins[merged - 1].shifted_down(shift);
        debug_assert_eq!(head.lower, 0);

        let mut out_bins = Vec::with_capacity(bins.len() - merged + 1);
        let mut out_counts = Vec::with_capacity(bins.len() - merged + 1);
        out_bins.push(head);
        let mut male = Accumulator::new();
        let mut female = Accumulator::new();
        for cell in &self.counts[..merged] {
            male.add(cell.male);
            female.add(cell.female);
        }
        out_counts.push(BySex::new(male.total(), female.total()));

        for (bin, cell) in bins[merged..].iter().zip(&self.counts[merged..]) {
            out_bins.push(bin.shifted_down(shift));
            out_counts.push(*cell);
        }

        let partition = Partition::new(out_bins).expect("shift preserves partition validity");
        BinnedCountTable {
            partition,
            counts: out_counts,
        }
    }

    /// Reallocate counts onto `target`.
    ///
    /// Per-sex totals are preserved: exactly in [`RebinMode::Exact`], to
    /// within accumulated floating tolerance under [`RebinMode::UniformSplit`].
    pub fn rebin(
        &self,
        target: &Partition,
        mode: RebinMode,
    ) -> Result<BinnedCountTable, RebinError> {
        let mut acc: Vec<BySex<Accumulator>> = vec![BySex::default(); target.len()];
        let open_target_lower = target.open_lower();
        let last = target.len() - 1;

        for (bin, cell) in self.partition.bins().iter().zip(&self.counts) {
            let (lo, hi) = match bin.upper {
                None => {
                    // Open source bins never split; they must nest in the
                    // open target bin.
                    if bin.lower < open_target_lower {
                        return Err(RebinError::OpenBinStraddlesFiniteTarget { bin: *bin });
                    }
                    acc[last].male.add(cell.male);
                    acc[last].female.add(cell.female);
                    continue;
                }
                Some(hi) => (bin.lower, hi),
            };

            let first_idx = target.bin_index_of(lo);
            if target.bins()[first_idx].contains(hi) {
                acc[first_idx].male.add(cell.male);
                acc[first_idx].female.add(cell.female);
                continue;
            }
            if mode == RebinMode::Exact {
                return Err(RebinError::StraddlingBinInExactMode { bin: *bin });
            }

            // Uniform-age split across every overlapped target bin.
            let width = f64::from(hi - lo + 1);
            for (idx, t) in target.bins().iter().enumerate().skip(first_idx) {
                let seg_lo = lo.max(t.lower);
                let seg_hi = t.upper.map_or(hi, |tu| hi.min(tu));
                let share = f64::from(seg_hi - seg_lo + 1) / width;
                acc[idx].male.add(cell.male * share);
                acc[idx].female.add(cell.female * share);
                if t.contains(hi) {
                    break;
                }
            }
        }

        Ok(BinnedCountTable {
            partition: target.clone(),
            counts: acc
                .into_iter()
                .map(|c| BySex::new(c.male.total(), c.female.total()))
                .collect(),
        })
    }

    /// Spread each finite bin uniformly over its single-year ages.
    ///
    /// The result covers years 0..max_age-1 plus the open bin at `max_age`;
    /// the open source bin's count lands wholly in the open result bin.
    /// Totals are preserved (exactly for integer-valued counts).
    pub fn expand_single_years(&self, max_age: u32) -> Result<BinnedCountTable, RebinError> {
        let open_lower = self.partition.open_lower();
        if max_age < open_lower {
            let bin = self.partition.bins()[self.partition.bin_index_of(max_age)];
            return Err(RebinError::MaxAgeInsideFiniteBin { max_age, bin });
        }

        let partition = Partition::single_years(max_age);
        let mut counts = vec![BySex::new(0.0, 0.0); partition.len()];
        for (bin, cell) in self.partition.bins().iter().zip(&self.counts) {
            match bin.upper {
                None => counts[partition.len() - 1] = *cell,
                Some(hi) => {
                    // Per-year shares are consecutive differences of the
                    // cumulative fractions, so they sum back to the bin count
                    // without drift.
                    let w = f64::from(hi - bin.lower + 1);
                    for (k, age) in (bin.lower..=hi).enumerate() {
                        let k = k as f64;
                        let piece = BySex::new(
                            cell.male * (k + 1.0) / w - cell.male * k / w,
                            cell.female * (k + 1.0) / w - cell.female * k / w,
                        );
                        counts[age as usize] = piece;
                    }
                }
            }
        }
        Ok(BinnedCountTable { partition, counts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bins(ranges: &[(u32, Option<u32>)]) -> Vec<AgeBin> {
        ranges
            .iter()
            .map(|&(lo, up)| AgeBin {
                lower: lo,
                upper: up,
            })
            .collect()
    }

    /// The 17 five-year demographic bins 0-4 .. 80+.
    fn five_year_partition() -> Partition {
        let mut v: Vec<AgeBin> = (0..16).map(|i| AgeBin::closed(5 * i, 5 * i + 4)).collect();
        v.push(AgeBin::open(80));
        Partition::new(v).unwrap()
    }

    /// The 7 lethality groups 0-9 .. 60+.
    fn seven_group_partition() -> Partition {
        let mut v: Vec<AgeBin> = (0..6).map(|i| AgeBin::closed(10 * i, 10 * i + 9)).collect();
        v.push(AgeBin::open(60));
        Partition::new(v).unwrap()
    }

    fn uniform_table(partition: Partition, male: f64, female: f64) -> BinnedCountTable {
        let n = partition.len();
        BinnedCountTable::new(partition, vec![BySex::new(male, female); n]).unwrap()
    }

    #[test]
    fn validates_the_bundled_partitions() {
        assert_eq!(five_year_partition().len(), 17);
        assert_eq!(seven_group_partition().len(), 7);
    }

    #[test]
    fn rejects_gap() {
        let err = Partition::new(bins(&[(0, Some(4)), (10, Some(14)), (15, None)])).unwrap_err();
        assert_eq!(
            err,
            PartitionError::GapBetweenBins {
                gap_start: 5,
                gap_end: 9
            }
        );
    }

    #[test]
    fn rejects_overlap() {
        let err = Partition::new(bins(&[(0, Some(9)), (5, Some(14)), (15, None)])).unwrap_err();
        assert_eq!(err, PartitionError::OverlappingBins(5));
    }

    #[test]
    fn rejects_nonzero_start() {
        let err = Partition::new(bins(&[(1, Some(9)), (10, None)])).unwrap_err();
        assert_eq!(err, PartitionError::FirstBinNotZero(1));
    }

    #[test]
    fn rejects_missing_or_misplaced_open_bin() {
        let err = Partition::new(bins(&[(0, Some(9)), (10, Some(19))])).unwrap_err();
        assert_eq!(err, PartitionError::NoOpenBin);
        let err = Partition::new(bins(&[(0, None), (1, Some(9))])).unwrap_err();
        assert_eq!(err, PartitionError::OpenBinNotLast(AgeBin::open(0)));
        assert_eq!(
            Partition::new(vec![]).unwrap_err(),
            PartitionError::NoOpenBin
        );
    }

    #[test]
    fn rejects_inverted_bounds() {
        let err = Partition::new(bins(&[(0, Some(4)), (5, Some(3)), (4, None)])).unwrap_err();
        assert_eq!(err, PartitionError::InvertedBounds { lower: 5, upper: 3 });
    }

    #[test]
    fn single_open_bin_is_a_valid_partition() {
        let p = Partition::new(vec![AgeBin::open(0)]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.open_lower(), 0);
    }

    #[test]
    fn labels_round_trip() {
        for bin in [
            AgeBin::closed(0, 4),
            AgeBin::closed(10, 10),
            AgeBin::open(80),
        ] {
            assert_eq!(AgeBin::parse_label(&bin.to_string()), Some(bin));
        }
        assert_eq!(AgeBin::parse_label("abc"), None);
        assert_eq!(AgeBin::parse_label("4"), None);
    }

    #[test]
    fn shift_zero_is_identity() {
        let t = uniform_table(five_year_partition(), 10.0, 20.0);
        assert_eq!(t.shift_and_clamp(0), t);
    }

    #[test]
    fn shift_merges_clamped_bins() {
        // [0-4][5-9][10+] shifted by 7: first two collapse onto [0-2].
        let p = Partition::new(bins(&[(0, Some(4)), (5, Some(9)), (10, None)])).unwrap();
        let t = BinnedCountTable::new(
            p,
            vec![
                BySex::new(1.0, 2.0),
                BySex::new(3.0, 4.0),
                BySex::new(5.0, 6.0),
            ],
        )
        .unwrap();
        let shifted = t.shift_and_clamp(7);
        assert_eq!(
            shifted.partition().bins(),
            &[AgeBin::closed(0, 2), AgeBin::open(3)]
        );
        assert_eq!(
            shifted.counts(),
            &[BySex::new(4.0, 6.0), BySex::new(5.0, 6.0)]
        );
    }

    #[test]
    fn shift_past_everything_collapses_to_single_open_bin() {
        // The bin-level rule: [20-24] under shift 30 clamps to [0-0].
        assert_eq!(
            AgeBin::closed(20, 24).shifted_down(30),
            AgeBin::closed(0, 0)
        );
        // Table-level: the fully clamped table is one open bin holding all 100.
        let p = Partition::new(bins(&[(0, Some(19)), (20, Some(24)), (25, None)])).unwrap();
        let t = BinnedCountTable::new(
            p,
            vec![
                BySex::new(0.0, 0.0),
                BySex::new(100.0, 0.0),
                BySex::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let shifted = t.shift_and_clamp(30);
        assert_eq!(shifted.partition().bins(), &[AgeBin::open(0)]);
        assert_eq!(shifted.counts(), &[BySex::new(100.0, 0.0)]);
        assert_eq!(shifted.totals(), t.totals());
    }

    #[test]
    fn rebin_onto_own_partition_is_identity() {
        let t = uniform_table(seven_group_partition(), 7.0, 11.0);
        let again = t.rebin(&seven_group_partition(), RebinMode::Exact).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn rebin_exact_rejects_straddling_bin() {
        let p = Partition::new(bins(&[(0, Some(12)), (13, None)])).unwrap();
        let t = uniform_table(five_year_partition(), 1.0, 1.0);
        let err = t.rebin(&p, RebinMode::Exact).unwrap_err();
        assert_eq!(
            err,
            RebinError::StraddlingBinInExactMode {
                bin: AgeBin::closed(10, 14)
            }
        );
    }

    #[test]
    fn rebin_uniform_splits_proportionally() {
        // [10-14] count 100 onto [0-12],[13+]: ages 10,11,12 vs 13,14 -> 60/40.
        let src = Partition::new(bins(&[(0, Some(9)), (10, Some(14)), (15, None)])).unwrap();
        let t = BinnedCountTable::new(
            src,
            vec![
                BySex::new(0.0, 0.0),
                BySex::new(100.0, 100.0),
                BySex::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let target = Partition::new(bins(&[(0, Some(12)), (13, None)])).unwrap();
        let out = t.rebin(&target, RebinMode::UniformSplit).unwrap();
        assert_eq!(out.counts()[0], BySex::new(60.0, 60.0));
        assert_eq!(out.counts()[1], BySex::new(40.0, 40.0));
    }

    #[test]
    fn rebin_rejects_open_bin_straddling_finite_targets() {
        let src = Partition::new(bins(&[(0, Some(9)), (10, None)])).unwrap();
        let t = uniform_table(src, 1.0, 1.0);
        let target = seven_group_partition(); // open bin starts at 60
        for mode in [RebinMode::Exact, RebinMode::UniformSplit] {
            let err = t.rebin(&target, mode).unwrap_err();
            assert_eq!(
                err,
                RebinError::OpenBinStraddlesFiniteTarget {
                    bin: AgeBin::open(10)
                }
            );
        }
    }

    #[test]
    fn expand_divides_equally() {
        let p = Partition::new(bins(&[(0, Some(4)), (5, None)])).unwrap();
        let t =
            BinnedCountTable::new(p, vec![BySex::new(10.0, 0.0), BySex::new(3.0, 0.0)]).unwrap();
        let e = t.expand_single_years(5).unwrap();
        assert_eq!(e.partition().len(), 6);
        for cell in &e.counts()[..5] {
            assert_eq!(cell.male, 2.0);
        }
        assert_eq!(e.counts()[5], BySex::new(3.0, 0.0));
    }

    #[test]
    fn expand_then_exact_rebin_round_trips() {
        let t = uniform_table(five_year_partition(), 12345.0, 999.0);
        let back = t
            .expand_single_years(80)
            .unwrap()
            .rebin(t.partition(), RebinMode::Exact)
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn expand_rejects_max_age_inside_finite_bin() {
        let t = uniform_table(five_year_partition(), 1.0, 1.0);
        let err = t.expand_single_years(42).unwrap_err();
        assert_eq!(
            err,
            RebinError::MaxAgeInsideFiniteBin {
                max_age: 42,
                bin: AgeBin::closed(40, 44)
            }
        );
    }

    #[test]
    fn coarsening_checks() {
        let fine = five_year_partition();
        let coarse = seven_group_partition();
        assert!(is_coarsening(&fine, &coarse));
        assert!(is_coarsening(&fine, &fine));
        assert!(!is_coarsening(&coarse, &fine));

        let p = Partition::new(bins(&[(0, Some(9)), (10, None)])).unwrap();
        let q = Partition::new(bins(&[(0, Some(4)), (5, None)])).unwrap();
        assert!(!is_coarsening(&p, &q));
    }

    #[test]
    fn table_construction_rejects_bad_cells() {
        let p = seven_group_partition();
        let err = BinnedCountTable::new(p.clone(), vec![BySex::new(1.0, 1.0)]).unwrap_err();
        assert_eq!(
            err,
            TableError::CountLengthMismatch {
                expected: 7,
                got: 1
            }
        );
        let mut counts = vec![BySex::new(0.0, 0.0); 7];
        counts[3].female = -2.0;
        let err = BinnedCountTable::new(p, counts).unwrap_err();
        assert!(matches!(err, TableError::InvalidCount { .. }));
    }
}
