//! Bounded exhaustive search over 8-dimensional data with four fixed points.
//!
//! Candidates are the data described by loop-free multigraphs on four
//! vertices with eight edges, each vertex of degree four and labels in
//! `1..=W`. Every realizable datum with weights bounded by `W` is among them.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consistency::{self as filters, names, weights_agree_up_to_sign, FilterReport};
use crate::examples::s2xs6;
use crate::fpdata::{FixedPointData, GenusPolynomial, Weight};
use crate::genus::genus_via_counts;
use crate::localization::{chern_numbers_dim8, ChernNumbersDim8};
use crate::multigraph::find_describing_multigraph;

pub const POINTS: usize = 4;
pub const N: usize = 4;

/// The genus excluded by the search.
pub const EXCLUDED_GENUS: [i64; 5] = [1, -1, 0, -1, 1];
pub const EXPECTED_GENUS: [i64; 5] = [0, -1, 2, -1, 0];
pub const EXPECTED_CHERN: [i64; 5] = [0, 0, 0, 4, 4];

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

type Key = [[Weight; N]; POINTS];

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (i, j)).expect("distinct vertices")
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Edge counts per vertex pair with every vertex of degree `N`, one
/// representative per relabeling class.
fn multiplicity_classes() -> Vec<[usize; 6]> {
    let perms = permutations4();
    let mut out = Vec::new();
    let mut m = [0usize; 6];
    fn fill(k: usize, m: &mut [usize; 6], out: &mut Vec<[usize; 6]>, perms: &[[usize; 4]]) {
        if k == 6 {
            let degree_ok = (0..POINTS).all(|v| {
                PAIRS.iter().zip(m.iter()).filter(|((i, j), _)| *i == v || *j == v).map(|(_, c)| c).sum::<usize>() == N
            });
            if !degree_ok {
                return;
            }
            let relabeled = |p: &[usize; 4]| {
                let mut r = [0usize; 6];
                for (idx, &(i, j)) in PAIRS.iter().enumerate() {
                    r[pair_index(p[i], p[j])] = m[idx];
                }
                r
            };
            if perms.iter().all(|p| relabeled(p) >= *m) {
                out.push(*m);
            }
            return;
        }
        for c in 0..=N {
            m[k] = c;
            fill(k + 1, m, out, perms);
        }
        m[k] = 0;
    }
    fill(0, &mut m, &mut out, &perms);
    out
}

/// Nondecreasing sequences of length `k` over `0..options`.
fn multisets(options: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, options: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for o in start..options {
            cur.push(o);
            go(o, options, k, cur, out);
            cur.pop();
        }
    }
    go(0, options, k, &mut cur, &mut out);
    out
}

fn canonical_key(slots: &[Vec<Weight>; POINTS]) -> Key {
    let mut key = [[0; N]; POINTS];
    for (row, s) in key.iter_mut().zip(slots) {
        row.copy_from_slice(s);
        row.sort_unstable();
    }
    key.sort_unstable();
    key
}

fn keys_for_class(m: &[usize; 6], max_weight: Weight) -> HashSet<Key> {
    let options = 2 * max_weight as usize;
    // option o: label o / 2 + 1, directed low -> high when o is even
    let choices: Vec<Vec<Vec<usize>>> = m.iter().map(|&k| multisets(options, k)).collect();
    let mut seen = HashSet::new();
    let mut slots: [Vec<Weight>; POINTS] = Default::default();
    fn go(
        k: usize,
        choices: &[Vec<Vec<usize>>],
        slots: &mut [Vec<Weight>; POINTS],
        seen: &mut HashSet<Key>,
    ) {
        if k == PAIRS.len() {
            seen.insert(canonical_key(slots));
            return;
        }
        let (i, j) = PAIRS[k];
        for choice in &choices[k] {
            for &o in choice {
                let w = (o / 2 + 1) as Weight;
                let (src, dst) = if o % 2 == 0 { (i, j) } else { (j, i) };
                slots[src].push(w);
                slots[dst].push(-w);
            }
            go(k + 1, choices, slots, seen);
            for _ in choice {
                slots[i].pop();
                slots[j].pop();
            }
        }
    }
    go(0, &choices, &mut slots, &mut seen);
    seen
}

fn key_to_data(key: &Key) -> FixedPointData {
    FixedPointData::from_weights(key.iter().map(|r| r.to_vec()).collect()).expect("nonzero weights")
}

/// Every candidate exactly once, in canonical form, sorted.
pub fn enumerate_candidates(max_weight: Weight) -> Vec<FixedPointData> {
    enumerate_keys(max_weight).iter().map(key_to_data).collect()
}

fn enumerate_keys(max_weight: Weight) -> Vec<Key> {
    assert!(max_weight >= 1, "weight bound must be positive");
    let merged = multiplicity_classes()
        .par_iter()
        .map(|m| keys_for_class(m, max_weight))
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut keys: Vec<Key> = merged.into_iter().collect();
    keys.sort_unstable();
    keys
}

fn pairing_report(d: &FixedPointData) -> FilterReport {
    filters::check_small_weight_pairing(d)
        .unwrap_or_else(|e| FilterReport::not_applicable(names::SMALL_WEIGHT_PAIRING, e.to_string()))
}

fn multigraph_report(d: &FixedPointData) -> FilterReport {
    match find_describing_multigraph(d) {
        Ok(Some(_)) => FilterReport::pass(names::DESCRIBING_MULTIGRAPH),
        Ok(None) => FilterReport::fail(
            names::DESCRIBING_MULTIGRAPH,
            "no loop-free describing multigraph meets the edge conditions",
        ),
        Err(e) => FilterReport::fail(names::DESCRIBING_MULTIGRAPH, e.to_string()),
    }
}

type Check = fn(&FixedPointData) -> FilterReport;

/// Filters in the order they are tried; the first failure is credited.
pub const SEARCH_FILTERS: [(&str, Check); 12] = [
    (names::ADJACENT_COUNTS, filters::check_adjacent_counts),
    (names::WEIGHT_SUM_ZERO, filters::check_weight_sum_zero),
    (names::HATTORI, filters::check_hattori),
    (names::SMALL_WEIGHT_PAIRING, pairing_report),
    (names::RECIPROCAL_SUMS, filters::check_reciprocal_sums),
    (names::DICHOTOMY, filters::dichotomy_report),
    (names::BINOMIAL_PROFILE, filters::check_binomial_profile),
    (names::ISOTROPY_RESTRICTIONS, filters::check_isotropy_restrictions),
    (names::DESCRIBING_MULTIGRAPH, multigraph_report),
    (names::LOCALIZATION_VANISHING, filters::check_localization_vanishing),
    (names::GENUS_DUALITY, filters::check_genus_duality),
    (names::INDEX_FORMULA, filters::check_index_formula),
];

/// The first search filter that `d` fails, if any.
pub fn first_failure(d: &FixedPointData) -> Option<FilterReport> {
    SEARCH_FILTERS.iter().map(|(_, check)| check(d)).find(FilterReport::failed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub data: FixedPointData,
    pub genus: GenusPolynomial,
    pub chern: ChernNumbersDim8,
    pub weights_agree_up_to_sign: bool,
}

/// Whether the weights at any two survivors' points agree up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpToSignProbe {
    pub survivors_checked: usize,
    pub agreeing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub weight_bound: Weight,
    pub candidates_enumerated: usize,
    pub survivors: Vec<Survivor>,
    pub eliminated_by: BTreeMap<String, usize>,
    pub up_to_sign: UpToSignProbe,
}

impl SearchReport {
    pub fn eliminated_total(&self) -> usize {
        self.eliminated_by.values().sum()
    }

    pub fn counts_consistent(&self) -> bool {
        self.candidates_enumerated == self.survivors.len() + self.eliminated_total()
    }

    pub fn to_json(&self) -> String {
        crate::json::to_stable_string(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("search assertion failed: {reason}; counterexample {counterexample}")]
pub struct AssertionBreach {
    pub report: Box<SearchReport>,
    pub counterexample: FixedPointData,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Enumerating,
    Filtering,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub stage: Stage,
    pub done: usize,
    pub total: usize,
}

pub type ProgressFn<'a> = &'a (dyn Fn(Progress) + Sync);

const PROGRESS_EVERY: usize = 1 << 14;

/// Enumerates and filters without judging the survivors. `jobs = 0` uses
/// every available core.
pub fn run_search(max_weight: Weight, jobs: usize, progress: Option<ProgressFn>) -> SearchReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| search_in_pool(max_weight, progress))
}

#[derive(Default)]
struct Partial {
    survivors: Vec<Survivor>,
    eliminated_by: BTreeMap<String, usize>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.survivors.extend(other.survivors);
        for (k, v) in other.eliminated_by {
            *self.eliminated_by.entry(k).or_insert(0) += v;
        }
        self
    }
}

fn search_in_pool(max_weight: Weight, progress: Option<ProgressFn>) -> SearchReport {
    let report = |stage, done, total| {
        if let Some(f) = progress {
            f(Progress { stage, done, total });
        }
    };
    report(Stage::Enumerating, 0, 0);
    let keys = enumerate_keys(max_weight);
    let total = keys.len();
    report(Stage::Filtering, 0, total);

    let done = AtomicUsize::new(0);
    let partial = keys
        .par_iter()
        .fold(Partial::default, |mut acc, key| {
            let d = key_to_data(key);
            match first_failure(&d) {
                Some(fail) => *acc.eliminated_by.entry(fail.name).or_insert(0) += 1,
                None => acc.survivors.push(annotate(d)),
            }
            let k = done.fetch_add(1, Ordering::Relaxed) + 1;
            if k.is_multiple_of(PROGRESS_EVERY) {
                report(Stage::Filtering, k, total);
            }
            acc
        })
        .reduce(Partial::default, Partial::merge);
    report(Stage::Filtering, total, total);

    let mut survivors = partial.survivors;
    survivors.sort_by_key(|s| weight_lists(&s.data));
    let mut eliminated_by: BTreeMap<String, usize> =
        SEARCH_FILTERS.iter().map(|(name, _)| (name.to_string(), 0)).collect();
    for (k, v) in partial.eliminated_by {
        *eliminated_by.entry(k).or_insert(0) += v;
    }
    let up_to_sign = UpToSignProbe {
        survivors_checked: survivors.len(),
        agreeing: survivors.iter().filter(|s| s.weights_agree_up_to_sign).count(),
    };
    SearchReport {
        weight_bound: max_weight,
        candidates_enumerated: total,
        survivors,
        eliminated_by,
        up_to_sign,
    }
}

fn weight_lists(d: &FixedPointData) -> Vec<Vec<Weight>> {
    d.points().iter().map(|p| p.weights.clone()).collect()
}

fn annotate(d: FixedPointData) -> Survivor {
    let genus = genus_via_counts(&d);
    let chern = chern_numbers_dim8(&d).expect("search data is 8-dimensional");
    let weights_agree_up_to_sign = weights_agree_up_to_sign(&d);
    Survivor {
        data: d,
        genus,
        chern,
        weights_agree_up_to_sign,
    }
}

/// Checks that no survivor has the excluded genus and that every survivor
/// has the genus and Chern numbers of the product of spheres.
pub fn check_assertions(report: SearchReport) -> Result<SearchReport, AssertionBreach> {
    let expected_chern = ChernNumbersDim8::from_integers(EXPECTED_CHERN);
    let breach = report.survivors.iter().find_map(|s| {
        if s.genus.coefficients() == EXCLUDED_GENUS {
            Some((s, format!("survivor has the excluded genus {}", s.genus)))
        } else if s.genus.coefficients() != EXPECTED_GENUS {
            Some((s, format!("survivor has genus {}", s.genus)))
        } else if s.chern != expected_chern {
            Some((s, format!("survivor has Chern numbers {}", s.chern)))
        } else {
            None
        }
    });
    match breach {
        None => Ok(report),
        Some((s, reason)) => Err(AssertionBreach {
            counterexample: s.data.clone(),
            reason,
            report: Box::new(report.clone()),
        }),
    }
}

pub fn case_elimination_report(
    max_weight: Weight,
    jobs: usize,
    progress: Option<ProgressFn>,
) -> Result<SearchReport, AssertionBreach> {
    check_assertions(run_search(max_weight, jobs, progress))
}

/// Product-of-spheres data with every weight bounded by `W` that is missing
/// from the survivors. Empty when the filters are sound on this family.
pub fn audit_soundness(report: &SearchReport) -> Vec<String> {
    let w = report.weight_bound;
    let survivors: HashSet<&FixedPointData> = report.survivors.iter().map(|s| &s.data).collect();
    let mut missing = Vec::new();
    for a in 1..=w {
        for b in 1..w {
            for c in 1..=(w - b) {
                let d = s2xs6(a, b, c).expect("positive parameters");
                if !survivors.contains(&d) {
                    missing.push(format!("s2xs6({a},{b},{c})"));
                }
            }
        }
    }
    missing
}
