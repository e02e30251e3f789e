//! Counting `|B(W)| = Σ_x |{u : u ≤_R x}| · 2^{|Π ∩ xΠ|}`.
//!
//! The per-element factor `d(x) = |{u : u ≤_R x}|` has several backends:
//! a parallel bitset scan (default), inclusion-exclusion over the lower
//! covers, a prefix BFS, and a direct definitional search.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bits::SimpleSet;
use crate::error::{Error, Result};
use crate::rootsys::{CartanMatrix, RootSystem};
use crate::weylgroup::{Elem, GroupTable, DEFAULT_ORDER_CAP};

/// `(type, |W|, |B(W)|)` for every finite Weyl group of order below 10⁶.
pub const REFERENCE_COUNTS: &[(&str, u64, u64)] = &[
    ("A1", 2, 4),
    ("A2", 6, 26),
    ("A3", 24, 252),
    ("A4", 120, 3368),
    ("A5", 720, 58810),
    ("A6", 5040, 1290930),
    ("A7", 40320, 34604844),
    ("A8", 362880, 1107490596),
    ("B2", 8, 38),
    ("B3", 48, 664),
    ("B4", 384, 17848),
    ("B5", 3840, 672004),
    ("B6", 46080, 33369560),
    ("B7", 645120, 2094849020),
    ("D4", 192, 6512),
    ("D5", 1920, 238720),
    ("D6", 23040, 11633624),
    ("D7", 322560, 720453984),
    ("E6", 51840, 38305190),
    ("F4", 1152, 91244),
    ("G2", 12, 68),
];

/// Reference `|B(W)|` for a label. `C_n` shares the Weyl group of `B_n`.
pub fn reference_count(label: &str) -> Option<u64> {
    let label = label.trim().to_ascii_uppercase();
    let key = match label.strip_prefix('C') {
        Some(n) => format!("B{n}"),
        None => label,
    };
    REFERENCE_COUNTS.iter().find(|(l, _, _)| *l == key).map(|&(_, _, b)| b)
}

/// `d(x) = |{u ∈ W : u ≤_R x}|`, indexed like the group table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetVector(pub Vec<u32>);

impl DownsetVector {
    pub fn get(&self, x: Elem) -> u32 {
        self.0[x.index()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Bitset containment `Φ⁺(u) ⊆ Φ⁺(x)` over all `u` no longer than `x`.
    #[default]
    Scan,
    /// `d(x) = 1 + Σ_{∅≠S⊆D_R(x)} (-1)^{|S|+1} d(x w_S)`.
    Covers,
    /// Size of the set reached by walking down right descents from `x`.
    PrefixBfs,
    /// Counts `u` with `ℓ(u⁻¹x) = ℓ(x) - ℓ(u)`.
    Definitional,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "scan" => Ok(Backend::Scan),
            "covers" => Ok(Backend::Covers),
            "prefix-bfs" => Ok(Backend::PrefixBfs),
            "definitional" => Ok(Backend::Definitional),
            _ => Err(format!("unknown backend `{s}` (expected scan, covers, prefix-bfs or definitional)")),
        }
    }
}

/// Counts how many `x` have been finished, for progress reporting.
#[derive(Debug, Default)]
pub struct Progress {
    done: AtomicUsize,
}

impl Progress {
    pub fn done(&self) -> usize {
        self.done.load(Ordering::Relaxed)
    }

    fn add(&self, k: usize) {
        self.done.fetch_add(k, Ordering::Relaxed);
    }
}

pub fn downset_sizes(t: &GroupTable) -> DownsetVector {
    downset_sizes_with(t, Backend::Scan, None)
}

/// Runs on the current rayon pool; only [`Backend::Scan`] is parallel.
pub fn downset_sizes_with(t: &GroupTable, backend: Backend, progress: Option<&Progress>) -> DownsetVector {
    let d = match backend {
        Backend::Scan => scan(t, progress),
        Backend::Covers => covers(t),
        Backend::PrefixBfs => t.elements().map(|x| t.prefix_downset(x).len() as u32).collect(),
        Backend::Definitional => t
            .elements()
            .map(|x| t.elements().filter(|&u| t.leq_weak_definitional(u, x)).count() as u32)
            .collect(),
    };
    DownsetVector(d)
}

const SCAN_CHUNK: usize = 256;

fn scan(t: &GroupTable, progress: Option<&Progress>) -> Vec<u32> {
    let n = t.order();
    let bounds: Vec<usize> = t.elements().map(|x| t.up_to_length(t.length(x)).end).collect();
    if t.root_system().num_positive() <= 64 {
        let sets: Vec<u64> = t.inv_sets().iter().map(|s| s.0 as u64).collect();
        scan_words(&sets, &bounds, n, progress)
    } else {
        let sets: Vec<u128> = t.inv_sets().iter().map(|s| s.0).collect();
        scan_words(&sets, &bounds, n, progress)
    }
}

fn scan_words<T>(sets: &[T], bounds: &[usize], n: usize, progress: Option<&Progress>) -> Vec<u32>
where
    T: Copy + Send + Sync + Eq + Default + std::ops::BitAnd<Output = T> + std::ops::Not<Output = T>,
{
    let mut d = vec![0u32; n];
    d.par_chunks_mut(SCAN_CHUNK).enumerate().for_each(|(c, out)| {
        let start = c * SCAN_CHUNK;
        for (off, slot) in out.iter_mut().enumerate() {
            let x = start + off;
            let outside = !sets[x];
            let zero = T::default();
            *slot = sets[..bounds[x]].iter().filter(|&&u| (u & outside) == zero).count() as u32;
        }
        if let Some(p) = progress {
            p.add(out.len());
        }
    });
    d
}

fn covers(t: &GroupTable) -> Vec<u32> {
    let mut parabolic_words: std::collections::HashMap<u32, Vec<u8>> = Default::default();
    let mut d = vec![0u32; t.order()];
    for x in t.elements() {
        let descents = t.right_descents(x);
        let mut total: i64 = 1;
        for s in descents.subsets().skip(1) {
            let word = parabolic_words
                .entry(s.mask())
                .or_insert_with(|| t.word(t.longest_parabolic(s)).to_vec());
            let y = word.iter().fold(x, |cur, &i| t.right_mul(cur, i as usize));
            let term = i64::from(d[y.index()]);
            total += if s.len() % 2 == 1 { term } else { -term };
        }
        d[x.index()] = total as u32;
    }
    d
}

/// `Σ_x d(x) · 2^{|Π∩xΠ|}` with overflow detection.
pub fn count_bw_from(t: &GroupTable, d: &DownsetVector) -> Result<u64> {
    t.elements().try_fold(0u64, |acc, x| {
        let factor = 1u64.checked_shl(t.pi_cap_xpi(x).len() as u32).ok_or(Error::Overflow("|B(W)|"))?;
        u64::from(d.get(x))
            .checked_mul(factor)
            .and_then(|term| acc.checked_add(term))
            .ok_or(Error::Overflow("|B(W)|"))
    })
}

pub fn count_bw(t: &GroupTable) -> Result<u64> {
    count_bw_from(t, &downset_sizes(t))
}

/// Resolves a type argument: a built-in label, or a path to a JSON matrix file.
pub fn load_cartan(arg: &str) -> Result<CartanMatrix> {
    match CartanMatrix::builtin(arg) {
        Ok(m) => Ok(m),
        Err(err) => {
            let path = Path::new(arg);
            if path.is_file() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidCartan(format!("cannot read {arg}: {e}")))?;
                let mut m = CartanMatrix::from_json(&text)?;
                if m.label() == "custom" {
                    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
                    m = CartanMatrix::new(stem, m.rows())?;
                }
                Ok(m)
            } else {
                Err(err)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub label: String,
    pub group_order: u64,
    pub b_count: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug)]
pub struct CensusFailure {
    pub label: String,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub threads: usize,
    pub backend: Backend,
    /// Interval for progress lines on standard error; `None` disables them.
    pub progress: Option<Duration>,
    pub order_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            backend: Backend::Scan,
            progress: None,
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool construction")
        .install(f)
}

/// One census row per label; failing labels are reported and skipped.
pub fn census_run(labels: &[&str], opts: &CensusOptions) -> Vec<std::result::Result<CensusRow, CensusFailure>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .expect("thread pool construction");
    labels
        .iter()
        .map(|&label| {
            census_one(label, opts, &pool).map_err(|error| CensusFailure { label: label.to_string(), error })
        })
        .collect()
}

fn census_one(arg: &str, opts: &CensusOptions, pool: &rayon::ThreadPool) -> Result<CensusRow> {
    let start = Instant::now();
    let rs = RootSystem::new(load_cartan(arg)?)?;
    let t = GroupTable::enumerate_with_cap(rs, opts.order_cap)?;
    let progress = Progress::default();
    let finished = AtomicBool::new(false);
    let d = std::thread::scope(|scope| {
        if let Some(every) = opts.progress {
            let (progress, finished, t) = (&progress, &finished, &t);
            scope.spawn(move || {
                let mut last = Instant::now();
                while !finished.load(Ordering::Relaxed) {
                    std::thread::sleep(Duration::from_millis(20).min(every));
                    if last.elapsed() >= every {
                        last = Instant::now();
                        eprintln!("[{}] {}/{} elements", t.label(), progress.done(), t.order());
                    }
                }
            });
        }
        let d = pool.install(|| downset_sizes_with(&t, opts.backend, Some(&progress)));
        finished.store(true, Ordering::Relaxed);
        d
    });
    let b_count = count_bw_from(&t, &d)?;
    Ok(CensusRow {
        label: t.label().to_string(),
        group_order: t.order() as u64,
        b_count,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub const CSV_HEADER: &str = "type,group_order,b_count,elapsed_ms";

/// CSV with header; `with_timing = false` leaves the `elapsed_ms` field empty
/// so that the output depends only on the inputs.
pub fn census_csv(rows: &[CensusRow], with_timing: bool) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        if with_timing {
            writeln!(out, "{},{},{},{}", r.label, r.group_order, r.b_count, r.elapsed_ms).unwrap();
        } else {
            writeln!(out, "{},{},{},", r.label, r.group_order, r.b_count).unwrap();
        }
    }
    out
}

/// `|{u : u⁻¹ ≤_R x}|` per element, straight from the definition of `B(W)`.
pub fn inverse_downset_sizes(t: &GroupTable) -> DownsetVector {
    DownsetVector(
        t.elements()
            .map(|x| t.elements().filter(|&u| t.leq_weak(t.inverse(u), x)).count() as u32)
            .collect(),
    )
}

/// `2^{|Π∩xΠ|}` summed against `d`, itemized per element (for tables).
pub fn itemize(t: &GroupTable, d: &DownsetVector) -> Vec<(Elem, u32, SimpleSet)> {
    t.elements().map(|x| (x, d.get(x), t.pi_cap_xpi(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(label: &str) -> GroupTable {
        GroupTable::builtin(label).unwrap()
    }

    #[test]
    fn downset_examples() {
        let a2 = g("A2");
        // Definitional oracle: count u with x = u·y, ℓ additive, by trying every y.
        let oracle: Vec<u32> = a2
            .elements()
            .map(|x| {
                a2.elements()
                    .filter(|&u| {
                        a2.elements()
                            .any(|y| a2.multiply(u, y) == x && a2.length(x) == a2.length(u) + a2.length(y))
                    })
                    .count() as u32
            })
            .collect();
        assert_eq!(oracle, vec![1, 2, 2, 3, 3, 6]);
        assert_eq!(downset_sizes(&a2).0, oracle);

        let g2 = g("G2");
        let d = downset_sizes(&g2);
        assert_eq!(d.0, vec![1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 12]);
        assert_eq!(d.get(Elem::IDENTITY), 1);
        assert_eq!(d.get(g2.longest()), 12);
    }

    #[test]
    fn backends_agree_rank_four() {
        for label in ["A4", "B4", "C4", "D4", "F4"] {
            let t = g(label);
            let scan = downset_sizes_with(&t, Backend::Scan, None);
            assert_eq!(downset_sizes_with(&t, Backend::Covers, None), scan, "{label} covers");
            assert_eq!(downset_sizes_with(&t, Backend::PrefixBfs, None), scan, "{label} bfs");
            assert_eq!(downset_sizes_with(&t, Backend::Definitional, None), scan, "{label} def");
        }
    }

    #[test]
    fn downset_monotone_along_covers() {
        let t = g("B4");
        let d = downset_sizes(&t);
        assert_eq!(d.get(t.longest()) as usize, t.order());
        for x in t.elements() {
            for i in 0..t.rank() {
                let y = t.right_mul(x, i);
                if t.length(y) > t.length(x) {
                    assert!(d.get(y) > d.get(x));
                }
            }
        }
    }

    #[test]
    fn inverse_downsets_have_same_sizes() {
        for label in ["A3", "B3", "G2"] {
            let t = g(label);
            assert_eq!(inverse_downset_sizes(&t), downset_sizes(&t), "{label}");
        }
    }

    #[test]
    fn small_counts() {
        for (label, expected) in [("A1", 4), ("A2", 26), ("A3", 252), ("B2", 38), ("C3", 664), ("G2", 68)] {
            assert_eq!(count_bw(&g(label)).unwrap(), expected, "{label}");
        }
    }

    #[test]
    fn reference_lookup() {
        assert_eq!(reference_count("B7"), Some(2094849020));
        assert_eq!(reference_count("C4"), Some(17848));
        assert_eq!(reference_count("c4"), Some(17848));
        assert_eq!(reference_count("E7"), None);
    }

    #[test]
    fn census_rows_and_failures() {
        let opts = CensusOptions { threads: 2, ..Default::default() };
        let rows = census_run(&["A1", "Z9", "A3"], &opts);
        assert_eq!(rows[0].as_ref().unwrap().b_count, 4);
        assert!(matches!(rows[1], Err(CensusFailure { error: Error::UnknownType(_), .. })));
        assert_eq!(rows[2].as_ref().unwrap().b_count, 252);
        let ok: Vec<CensusRow> = rows.into_iter().filter_map(|r| r.ok()).collect();
        assert_eq!(census_csv(&ok, false), "type,group_order,b_count,elapsed_ms\nA1,2,4,\nA3,24,252,\n");
    }

    #[test]
    fn cap_failure_is_per_label() {
        let opts = CensusOptions { threads: 1, order_cap: 100, ..Default::default() };
        let rows = census_run(&["A4", "A2"], &opts);
        assert!(matches!(rows[0], Err(CensusFailure { error: Error::GroupTooLarge { .. }, .. })));
        assert_eq!(rows[1].as_ref().unwrap().b_count, 26);
    }

    #[test]
    fn backend_parse() {
        assert_eq!("covers".parse::<Backend>().unwrap(), Backend::Covers);
        assert!("fast".parse::<Backend>().is_err());
    }
}
