//! Smallest solutions of `n(x⁴ + y⁴) = z⁴ + w⁴` by meet in the middle.
//!
//! All sums `x⁴ + y⁴` with `x ≤ y ≤ B` go into one table sorted by value.
//! The same table serves both sides: walking it in increasing order gives
//! candidate `s = z⁴ + w⁴`, and a binary search for `s/n` finds `(x, y)`.
//! The first hit is therefore the one minimizing `s`. The table is built
//! once per sweep and shared read-only by every worker.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::{Integer, Quadruple};

/// Residues mod 16 searched by default.
pub const DEFAULT_RESIDUES: [u64; 4] = [1, 2, 8, 9];

/// Largest coordinate bound for which `2·B⁴` fits in 128 bits.
pub const MAX_BOUND: u32 = 1 << 31;

/// `n mod 16 ∈ residues`; an empty residue set admits everything.
pub fn admissible(n: u64, residues: &[u64]) -> bool {
    residues.is_empty() || residues.contains(&(n % 16))
}

/// No `d⁴` with `d > 1` divides `n`.
pub fn is_fourth_power_free(n: u64) -> bool {
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p).saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if e >= 4 {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n_min: u64,
    pub n_max: u64,
    pub bound: u32,
    pub residues: Vec<u64>,
    /// Worker threads; `None` uses the machine's parallelism.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Permit zero coordinates. Off by default: with it on, trivial hits
    /// such as `2(0⁴ + 1⁴) = 1⁴ + 1⁴` shadow the interesting ones.
    pub allow_zero: bool,
    /// Skip `n = d⁴·n'` with `d > 1`, which inherit `(x, y, dz, dw)` from
    /// any solution for `n'` (and `81(1⁴ + 1⁴) = 3⁴ + 3⁴` outright).
    pub fourth_power_free_only: bool,
}

impl SearchConfig {
    pub fn new(n_min: u64, n_max: u64, bound: u32) -> Self {
        SearchConfig {
            n_min,
            n_max,
            bound,
            residues: DEFAULT_RESIDUES.to_vec(),
            threads: None,
            checkpoint: None,
            allow_zero: false,
            fourth_power_free_only: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= n_min <= n_max, got [{}, {}]",
                self.n_min, self.n_max
            )));
        }
        validate_bound(self.bound)
    }

    pub fn admissible_values(&self) -> Vec<u64> {
        (self.n_min..=self.n_max)
            .filter(|&n| admissible(n, &self.residues))
            .filter(|&n| !self.fourth_power_free_only || is_fourth_power_free(n))
            .collect()
    }
}

fn validate_bound(bound: u32) -> Result<()> {
    if bound < 1 {
        return Err(Error::InvalidArgument("coordinate bound must be >= 1".into()));
    }
    if bound > MAX_BOUND {
        return Err(Error::BoundTooLarge(bound as u64));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub quadruple: Quadruple,
    /// `z⁴ + w⁴ = n(x⁴ + y⁴)`
    pub objective: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Hit(SearchHit),
    /// Nothing within the bound; says nothing about larger solutions.
    NotFound,
}

impl SearchOutcome {
    pub fn hit(&self) -> Option<&SearchHit> {
        match self {
            SearchOutcome::Hit(h) => Some(h),
            SearchOutcome::NotFound => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    sum: u128,
    lo: u32,
    hi: u32,
}

fn p4(v: u32) -> u128 {
    let v = v as u128;
    v * v * v * v
}

/// Every `x⁴ + y⁴` with `x ≤ y ≤ bound`, sorted by value then `x`.
pub struct FourthPowerTable {
    entries: Vec<Entry>,
    bound: u32,
}

impl FourthPowerTable {
    pub fn build(bound: u32, allow_zero: bool) -> Result<Self> {
        validate_bound(bound)?;
        let start = if allow_zero { 0 } else { 1 };
        let mut entries: Vec<Entry> = (start..=bound)
            .into_par_iter()
            .flat_map_iter(|lo| {
                (lo.max(1)..=bound).map(move |hi| Entry { sum: p4(lo) + p4(hi), lo, hi })
            })
            .collect();
        entries.par_sort_unstable();
        Ok(FourthPowerTable { entries, bound })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The pair with the smallest `x` among those with `x⁴ + y⁴ = sum`.
    pub fn lookup(&self, sum: u128) -> Option<(u32, u32)> {
        let i = self.entries.partition_point(|e| e.sum < sum);
        self.entries
            .get(i)
            .filter(|e| e.sum == sum)
            .map(|e| (e.lo, e.hi))
    }

    /// Minimal `s = z⁴ + w⁴` with `n | s` and `s/n` in the table; ties go
    /// to the smaller `x`, then the smaller `z`.
    pub fn smallest_for_n(&self, n: u64) -> Result<SearchOutcome> {
        if n < 1 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        let n128 = n as u128;
        for e in &self.entries {
            if e.sum % n128 != 0 {
                continue;
            }
            if let Some((x, y)) = self.lookup(e.sum / n128) {
                let quadruple = Quadruple::new(
                    Integer::from(n),
                    Integer::from(x),
                    Integer::from(y),
                    Integer::from(e.lo),
                    Integer::from(e.hi),
                )?;
                return Ok(SearchOutcome::Hit(SearchHit { quadruple, objective: e.sum }));
            }
        }
        Ok(SearchOutcome::NotFound)
    }
}

/// Builds a table for `bound` and searches a single `n`.
pub fn smallest_for_n(n: u64, bound: u32) -> Result<SearchOutcome> {
    FourthPowerTable::build(bound, false)?.smallest_for_n(n)
}

/// Runs [`FourthPowerTable::smallest_for_n`] for every admissible `n` in
/// range, in parallel, returning results ordered by `n`.
///
/// With a checkpoint path, completed `n` are loaded from it and skipped,
/// and the file is rewritten (temp file + rename) after each new result.
/// The checkpoint does not record the bound, so resuming with a different
/// bound reuses stale results.
pub fn sweep(config: &SearchConfig) -> Result<Vec<(u64, SearchOutcome)>> {
    config.validate()?;
    let targets = config.admissible_values();
    if targets.is_empty() {
        return Ok(Vec::new());
    }

    let mut done: BTreeMap<u64, SearchOutcome> = match &config.checkpoint {
        Some(path) => load_checkpoint(path)
            .into_iter()
            .filter(|(n, _)| targets.binary_search(n).is_ok())
            .collect(),
        None => BTreeMap::new(),
    };
    let pending: Vec<u64> = targets.iter().copied().filter(|n| !done.contains_key(n)).collect();

    if !pending.is_empty() {
        let table = FourthPowerTable::build(config.bound, config.allow_zero)?;
        let progress = Mutex::new(done);
        let work = || {
            pending.par_iter().try_for_each(|&n| -> Result<()> {
                let outcome = table.smallest_for_n(n)?;
                let mut guard = progress.lock().expect("checkpoint lock poisoned");
                guard.insert(n, outcome);
                if let Some(path) = &config.checkpoint {
                    write_checkpoint(path, &guard)?;
                }
                Ok(())
            })
        };
        match config.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?
                .install(work)?,
            None => work()?,
        }
        done = progress.into_inner().expect("checkpoint lock poisoned");
    }
    Ok(done.into_iter().collect())
}

/// `n,status,x,y,z,w,s` per line; `status` is `hit` or `notfound`.
pub fn format_checkpoint(results: &BTreeMap<u64, SearchOutcome>) -> String {
    let mut out = String::new();
    for (n, outcome) in results {
        match outcome {
            SearchOutcome::Hit(h) => {
                let q = &h.quadruple;
                writeln!(out, "{n},hit,{},{},{},{},{}", q.x(), q.y(), q.z(), q.w(), h.objective)
            }
            SearchOutcome::NotFound => writeln!(out, "{n},notfound,,,,,"),
        }
        .expect("writing to a String");
    }
    out
}

pub fn parse_checkpoint(text: &str) -> Result<BTreeMap<u64, SearchOutcome>> {
    let bad = |line: &str| Error::Io(format!("malformed checkpoint line {line:?}"));
    let mut out = BTreeMap::new();
    for line in text.lines() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(bad(line));
        }
        let n: u64 = fields[0].parse().map_err(|_| bad(line))?;
        let outcome = match fields[1] {
            "notfound" if fields[2..].iter().all(|f| f.is_empty()) => SearchOutcome::NotFound,
            "hit" => {
                let num = |s: &str| s.parse::<u32>().map_err(|_| bad(line));
                let (x, y, z, w) = (num(fields[2])?, num(fields[3])?, num(fields[4])?, num(fields[5])?);
                let objective: u128 = fields[6].parse().map_err(|_| bad(line))?;
                if objective != p4(z) + p4(w) {
                    return Err(bad(line));
                }
                let quadruple = Quadruple::new(
                    Integer::from(n),
                    Integer::from(x),
                    Integer::from(y),
                    Integer::from(z),
                    Integer::from(w),
                )?;
                SearchOutcome::Hit(SearchHit { quadruple, objective })
            }
            _ => return Err(bad(line)),
        };
        out.insert(n, outcome);
    }
    Ok(out)
}

fn load_checkpoint(path: &Path) -> BTreeMap<u64, SearchOutcome> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return BTreeMap::new(),
        Err(e) => {
            warn!("cannot read checkpoint {}: {e}; starting fresh", path.display());
            return BTreeMap::new();
        }
    };
    parse_checkpoint(&text).unwrap_or_else(|e| {
        warn!("corrupt checkpoint {}: {e}; starting fresh", path.display());
        BTreeMap::new()
    })
}

fn write_checkpoint(path: &Path, results: &BTreeMap<u64, SearchOutcome>) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, format_checkpoint(results))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        let r = &DEFAULT_RESIDUES;
        assert!(admissible(41, r));
        assert!(admissible(34, r));
        assert!(!admissible(16, r));
        assert!(!admissible(3, r));
        assert!(admissible(3, &[]));
    }

    #[test]
    fn fourth_power_free() {
        for n in [1, 2, 8, 15, 17, 41, 24, 1000, 2 * 3 * 5 * 7 * 4] {
            assert!(is_fourth_power_free(n), "{n}");
        }
        for n in [16, 81, 162, 625, 648, 729, 32, 16 * 97, 2401] {
            assert!(!is_fourth_power_free(n), "{n}");
        }
    }

    #[test]
    fn sweep_skips_fourth_power_multiples() {
        let mut cfg = SearchConfig::new(81, 81, 10);
        assert!(cfg.admissible_values().is_empty());
        cfg.fourth_power_free_only = false;
        let out = sweep(&cfg).unwrap();
        assert_eq!(out[0].1.hit().unwrap().quadruple, Quadruple::from_i64(81, 1, 1, 3, 3).unwrap());
    }

    #[test]
    fn table_lookup() {
        let t = FourthPowerTable::build(10, false).unwrap();
        assert_eq!(t.len(), 55);
        assert_eq!(t.lookup(82), Some((1, 3)));
        assert_eq!(t.lookup(83), None);
        assert_eq!(t.lookup(2), Some((1, 1)));
        let z = FourthPowerTable::build(10, true).unwrap();
        assert_eq!(z.len(), 65);
        assert_eq!(z.lookup(16), Some((0, 2)));
    }

    #[test]
    fn lookup_prefers_smaller_x_on_collisions() {
        // 59⁴ + 158⁴ = 133⁴ + 134⁴
        let t = FourthPowerTable::build(160, false).unwrap();
        assert_eq!(t.lookup(p4(133) + p4(134)), Some((59, 158)));
    }

    #[test]
    fn smallest_examples() {
        let hit = |n, b| smallest_for_n(n, b).unwrap().hit().unwrap().quadruple.clone();
        assert!(hit(17, 20).eq_unordered(&Quadruple::from_i64(17, 5, 6, 13, 8).unwrap()));
        assert!(hit(41, 5).eq_unordered(&Quadruple::from_i64(41, 1, 1, 3, 1).unwrap()));
        assert_eq!(hit(1, 20), Quadruple::from_i64(1, 1, 1, 1, 1).unwrap());
        assert_eq!(smallest_for_n(17, 10).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn zero_coordinates_change_the_answer_when_allowed() {
        let t = FourthPowerTable::build(25, true).unwrap();
        let h = t.smallest_for_n(2).unwrap();
        assert_eq!(h.hit().unwrap().quadruple, Quadruple::from_i64(2, 0, 1, 1, 1).unwrap());
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(smallest_for_n(0, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(smallest_for_n(3, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(FourthPowerTable::build(u32::MAX, false), Err(Error::BoundTooLarge(_))));
        assert!(sweep(&SearchConfig::new(5, 4, 10)).is_err());
    }

    #[test]
    fn empty_admissible_range() {
        assert!(sweep(&SearchConfig::new(3, 7, 10)).unwrap().is_empty());
    }

    #[test]
    fn checkpoint_roundtrip() {
        let mut m = BTreeMap::new();
        let q = Quadruple::from_i64(41, 1, 1, 3, 1).unwrap();
        m.insert(41, SearchOutcome::Hit(SearchHit { quadruple: q, objective: 82 }));
        m.insert(34, SearchOutcome::NotFound);
        let text = format_checkpoint(&m);
        assert_eq!(text, "34,notfound,,,,,\n41,hit,1,1,3,1,82\n");
        assert_eq!(parse_checkpoint(&text).unwrap(), m);
    }

    #[test]
    fn checkpoint_rejects_garbage() {
        assert!(parse_checkpoint("41,hit,1,1,3,2,97\n").is_err());
        assert!(parse_checkpoint("41,hit,1,1,3,1,83\n").is_err());
        assert!(parse_checkpoint("41,maybe,,,,,\n").is_err());
        assert!(parse_checkpoint("garbage").is_err());
    }
}
