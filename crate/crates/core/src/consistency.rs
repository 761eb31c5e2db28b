//! Necessary conditions on fixed-point data.
//!
//! Every check here is a consequence of the data coming from a circle action
//! with isolated fixed points on a compact almost complex manifold. A failed
//! report therefore certifies that no such action exists; a passing report
//! claims nothing.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Rational;
use crate::fpdata::{FixedPoint, FixedPointData, Weight};
use crate::genus::{genus_via_counts, genus_via_index_formula, IndexFormulaError};
use crate::localization::{localization_sum, ChernPartition};

pub mod names {
    pub const HATTORI: &str = "hattori";
    pub const WEIGHT_SUM_ZERO: &str = "weight_sum_zero";
    pub const SMALL_WEIGHT_PAIRING: &str = "small_weight_pairing";
    pub const ADJACENT_COUNTS: &str = "adjacent_counts";
    pub const GENUS_DUALITY: &str = "genus_duality";
    pub const RECIPROCAL_SUMS: &str = "reciprocal_sums";
    pub const BINOMIAL_PROFILE: &str = "binomial_profile";
    pub const DICHOTOMY: &str = "dichotomy";
    pub const ISOTROPY_RESTRICTIONS: &str = "isotropy_restrictions";
    pub const LOCALIZATION_VANISHING: &str = "localization_vanishing";
    pub const INDEX_FORMULA: &str = "index_formula";
    pub const DESCRIBING_MULTIGRAPH: &str = "describing_multigraph";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one necessary-condition check. Failed reports always carry a
/// nonempty witness naming the violating object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub name: String,
    pub status: FilterStatus,
    pub witness: String,
}

impl FilterReport {
    pub fn pass(name: &str) -> Self {
        Self {
            name: name.to_string(),
            status: FilterStatus::Pass,
            witness: String::new(),
        }
    }

    pub fn fail(name: &str, witness: impl Into<String>) -> Self {
        let witness = witness.into();
        assert!(!witness.is_empty(), "failed report needs a witness");
        Self {
            name: name.to_string(),
            status: FilterStatus::Fail,
            witness,
        }
    }

    pub fn not_applicable(name: &str, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status: FilterStatus::NotApplicable,
            witness: reason.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == FilterStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == FilterStatus::Fail
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("data has no weights")]
    EmptyData,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

/// `count(+w) - count(-w)` over all points, keyed by `w > 0`.
fn signed_tally<'a, I: IntoIterator<Item = &'a Weight>>(weights: I) -> BTreeMap<u64, i64> {
    let mut tally = BTreeMap::new();
    for &w in weights {
        *tally.entry(w.unsigned_abs()).or_insert(0) += w.signum();
    }
    tally
}

/// Every weight `w` occurs as often as `-w`, counted over all points.
pub fn check_hattori(d: &FixedPointData) -> FilterReport {
    let all: Vec<Weight> = d.all_weights().collect();
    match signed_tally(&all).into_iter().find(|(_, net)| *net != 0) {
        None => FilterReport::pass(names::HATTORI),
        Some((w, _)) => {
            let plus = all.iter().filter(|x| x.unsigned_abs() == w && **x > 0).count();
            let minus = all.iter().filter(|x| x.unsigned_abs() == w && **x < 0).count();
            FilterReport::fail(
                names::HATTORI,
                format!("weight {w} occurs {plus} times but -{w} occurs {minus} times"),
            )
        }
    }
}

pub fn check_weight_sum_zero(d: &FixedPointData) -> FilterReport {
    let total: i128 = d.points().iter().map(FixedPoint::weight_sum).sum();
    if total == 0 {
        FilterReport::pass(names::WEIGHT_SUM_ZERO)
    } else {
        FilterReport::fail(names::WEIGHT_SUM_ZERO, format!("total weight is {total}"))
    }
}

/// Smallest and second-smallest positive weights over all points, counted
/// with multiplicity. The second may equal the first.
pub fn smallest_positive_weights(d: &FixedPointData) -> Option<(Weight, Option<Weight>)> {
    let mut pos: Vec<Weight> = d.all_weights().filter(|w| *w > 0).collect();
    pos.sort_unstable();
    pos.first().map(|a| (*a, pos.get(1).copied()))
}

/// For `a` the smallest or second-smallest positive weight: at each level
/// `i`, occurrences of `+a` at points with `i` negative weights match
/// occurrences of `-a` at points with `i + 1` negative weights.
pub fn check_small_weight_pairing(d: &FixedPointData) -> Result<FilterReport, FilterError> {
    if d.all_weights().next().is_none() {
        return Err(FilterError::EmptyData);
    }
    let Some((first, second)) = smallest_positive_weights(d) else {
        return Ok(FilterReport::fail(names::SMALL_WEIGHT_PAIRING, "no positive weight at any point"));
    };
    let mut tested = vec![first];
    if let Some(s) = second.filter(|s| *s != first) {
        tested.push(s);
    }
    let n = d.n();
    for a in tested {
        let mut plus_at = vec![0usize; n + 1];
        let mut minus_at = vec![0usize; n + 1];
        for p in d.points() {
            let level = p.negative_weight_count();
            plus_at[level] += p.count_weight(a);
            minus_at[level] += p.count_weight(-a);
        }
        for i in 0..n {
            if plus_at[i] != minus_at[i + 1] {
                return Ok(FilterReport::fail(
                    names::SMALL_WEIGHT_PAIRING,
                    format!(
                        "weight {a}: {} occurrences at points with {i} negative weights, \
                         but -{a} occurs {} times at points with {} negative weights",
                        plus_at[i],
                        minus_at[i + 1],
                        i + 1
                    ),
                ));
            }
        }
    }
    Ok(FilterReport::pass(names::SMALL_WEIGHT_PAIRING))
}

/// Some `i` has `N_i != 0` and `N_{i+1} != 0`.
pub fn check_adjacent_counts(d: &FixedPointData) -> FilterReport {
    if d.is_empty() {
        return FilterReport::not_applicable(names::ADJACENT_COUNTS, "no fixed points");
    }
    let profile = d.negative_count_profile();
    if profile.windows(2).any(|w| w[0] != 0 && w[1] != 0) {
        FilterReport::pass(names::ADJACENT_COUNTS)
    } else {
        FilterReport::fail(
            names::ADJACENT_COUNTS,
            format!("negative-weight profile {profile:?} has no two adjacent nonzero counts"),
        )
    }
}

/// `N_i = N_{n-i}` for all `i`.
pub fn check_genus_duality(d: &FixedPointData) -> FilterReport {
    let profile = d.negative_count_profile();
    let n = d.n();
    match (0..=n).find(|&i| profile[i] != profile[n - i]) {
        None => FilterReport::pass(names::GENUS_DUALITY),
        Some(i) => FilterReport::fail(
            names::GENUS_DUALITY,
            format!("N_{i} = {} but N_{} = {}", profile[i], n - i, profile[n - i]),
        ),
    }
}

/// When the per-point weight sums take at most `n` values, the reciprocal
/// weight products vanish within each level set of the sum.
pub fn check_reciprocal_sums(d: &FixedPointData) -> FilterReport {
    let mut by_sum: BTreeMap<i128, Rational> = BTreeMap::new();
    for p in d.points() {
        *by_sum.entry(p.weight_sum()).or_insert_with(Rational::zero) +=
            Rational::new(BigInt::from(1), p.weight_product());
    }
    if by_sum.len() > d.n() {
        return FilterReport::not_applicable(
            names::RECIPROCAL_SUMS,
            format!("{} distinct weight sums exceed n = {}", by_sum.len(), d.n()),
        );
    }
    match by_sum.iter().find(|(_, r)| !r.is_zero()) {
        None => FilterReport::pass(names::RECIPROCAL_SUMS),
        Some((k, r)) => FilterReport::fail(
            names::RECIPROCAL_SUMS,
            format!("points with weight sum {k} have reciprocal product sum {r}"),
        ),
    }
}

/// `N_k = N_0 * binom(m, k)` for a collection of weight lists all of size
/// `m` whose entries are all `+v` or `-v`.
fn binomial_profile_holds(lists: &[&[Weight]], m: usize) -> Result<(), String> {
    let mut profile = vec![0u64; m + 1];
    for l in lists {
        profile[l.iter().filter(|w| **w < 0).count()] += 1;
    }
    let n0 = BigInt::from(profile[0]);
    for (k, &nk) in profile.iter().enumerate() {
        let expected = &n0 * num_integer::binomial(BigInt::from(m), BigInt::from(k));
        if BigInt::from(nk) != expected {
            return Err(format!(
                "profile {profile:?}: N_{k} = {nk}, expected N_0 * C({m},{k}) = {expected}"
            ));
        }
    }
    Ok(())
}

/// The single absolute value shared by every weight, if there is one.
fn common_abs_value<'a, I: IntoIterator<Item = &'a Weight>>(weights: I) -> Option<u64> {
    let mut it = weights.into_iter().map(|w| w.unsigned_abs());
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

/// If every weight is `+w` or `-w` for one `w`, the negative-weight profile
/// is `N_0` times a row of Pascal's triangle.
pub fn check_binomial_profile(d: &FixedPointData) -> FilterReport {
    let Some(w) = common_abs_value(d.points().iter().flat_map(|p| p.weights.iter())) else {
        return FilterReport::not_applicable(names::BINOMIAL_PROFILE, "weights are not all +w or -w");
    };
    let lists: Vec<&[Weight]> = d.points().iter().map(|p| p.weights.as_slice()).collect();
    match binomial_profile_holds(&lists, d.n()) {
        Ok(()) => FilterReport::pass(names::BINOMIAL_PROFILE),
        Err(why) => FilterReport::fail(names::BINOMIAL_PROFILE, format!("all weights are ±{w}; {why}")),
    }
}

/// Result of splitting four fixed points by their weight sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Dichotomy {
    /// Every weight sum is zero and the reciprocal weight products sum to zero.
    Case1,
    /// Two pairs with opposite weight products inside each pair and weight
    /// sums `(s, s, -s, -s)`, `s > 0`.
    Case2 {
        positive_pair: [String; 2],
        negative_pair: [String; 2],
        sum: i128,
    },
    Fail { reason: String },
}

impl Dichotomy {
    pub fn is_fail(&self) -> bool {
        matches!(self, Dichotomy::Fail { .. })
    }
}

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

pub fn classify_dichotomy(d: &FixedPointData) -> Result<Dichotomy, FilterError> {
    if d.n() < 4 || d.len() != 4 {
        return Err(FilterError::PreconditionViolation(format!(
            "needs n >= 4 and exactly 4 fixed points, got n = {} with {} points",
            d.n(),
            d.len()
        )));
    }
    let pts = d.points();
    let sums: Vec<i128> = pts.iter().map(FixedPoint::weight_sum).collect();
    let prods: Vec<BigInt> = pts.iter().map(FixedPoint::weight_product).collect();

    if sums.iter().all(|s| *s == 0) {
        let recip: Rational = prods
            .iter()
            .map(|p| Rational::new(BigInt::from(1), p.clone()))
            .sum();
        if recip.is_zero() {
            return Ok(Dichotomy::Case1);
        }
        return Ok(Dichotomy::Fail {
            reason: format!("all weight sums are 0 but the reciprocal products sum to {recip}"),
        });
    }

    let opposite = |(i, j): (usize, usize)| sums[i] == sums[j] && prods[i] == -&prods[j];
    for [a, b] in PAIRINGS {
        if opposite(a) && opposite(b) && sums[a.0] == -sums[b.0] {
            let (pos, neg) = if sums[a.0] > 0 { (a, b) } else { (b, a) };
            let pair = |(i, j): (usize, usize)| {
                let mut l = [pts[i].label.clone(), pts[j].label.clone()];
                l.sort();
                l
            };
            return Ok(Dichotomy::Case2 {
                positive_pair: pair(pos),
                negative_pair: pair(neg),
                sum: sums[pos.0],
            });
        }
    }
    Ok(Dichotomy::Fail {
        reason: format!("weight sums {sums:?} with products {prods:?} admit no valid pairing"),
    })
}

pub fn dichotomy_report(d: &FixedPointData) -> FilterReport {
    match classify_dichotomy(d) {
        Err(e) => FilterReport::not_applicable(names::DICHOTOMY, e.to_string()),
        Ok(Dichotomy::Fail { reason }) => FilterReport::fail(names::DICHOTOMY, reason),
        Ok(_) => FilterReport::pass(names::DICHOTOMY),
    }
}

/// Multisets equal as sorted vectors.
fn same_multiset(a: &[Weight], b: &[Weight]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Two fixed points with weights `{-a-b, a, b}` and `{-a, -b, a+b}`.
pub fn is_s6_pattern(x: &[Weight], y: &[Weight]) -> bool {
    let matches = |x: &[Weight], y: &[Weight]| {
        if x.len() != 3 || y.len() != 3 {
            return false;
        }
        let neg: Vec<Weight> = x.iter().copied().filter(|w| *w < 0).collect();
        let pos: Vec<Weight> = x.iter().copied().filter(|w| *w > 0).collect();
        if neg.len() != 1 || pos.len() != 2 || neg[0] != -(pos[0] + pos[1]) {
            return false;
        }
        let negated: Vec<Weight> = x.iter().map(|w| -w).collect();
        same_multiset(&negated, y)
    };
    matches(x, y) || matches(y, x)
}

/// Three fixed points with weights `{a+b, a}`, `{-a, b}`, `{-b, -a-b}`.
pub fn is_cp2_pattern(points: [&[Weight]; 3]) -> bool {
    if points.iter().any(|p| p.len() != 2) {
        return false;
    }
    let neg = |p: &[Weight]| p.iter().filter(|w| **w < 0).count();
    let find = |k| points.iter().find(|p| neg(p) == k).copied();
    let (Some(p0), Some(p1), Some(p2)) = (find(0), find(1), find(2)) else {
        return false;
    };
    let (hi, lo) = (p0[0].max(p0[1]), p0[0].min(p0[1]));
    let (a, b) = (lo, hi - lo);
    b > 0 && same_multiset(p1, &[-a, b]) && same_multiset(p2, &[-b, -a - b])
}

/// Four fixed points with weights `{a, b}`, `{-a, b}`, `{-b, c}`, `{-b, -c}`
/// where `a = c` or `a = -c` modulo `b`.
pub fn is_hirzebruch_pattern(points: [&[Weight]; 4]) -> bool {
    if points.iter().any(|p| p.len() != 2) {
        return false;
    }
    let neg = |p: &[Weight]| p.iter().filter(|w| **w < 0).count();
    let by_level = |k| points.iter().filter(|p| neg(p) == k).copied().collect::<Vec<_>>();
    let (lv0, lv1, lv2) = (by_level(0), by_level(1), by_level(2));
    if lv0.len() != 1 || lv1.len() != 2 || lv2.len() != 1 {
        return false;
    }
    let (top, bottom) = (lv0[0], lv2[0]);
    for (a, b) in [(top[0], top[1]), (top[1], top[0])] {
        let c = if bottom[0] == -b {
            -bottom[1]
        } else if bottom[1] == -b {
            -bottom[0]
        } else {
            continue;
        };
        let middles_ok = (same_multiset(lv1[0], &[-a, b]) && same_multiset(lv1[1], &[-b, c]))
            || (same_multiset(lv1[1], &[-a, b]) && same_multiset(lv1[0], &[-b, c]));
        let congruent = (a - c).rem_euclid(b) == 0 || (a + c).rem_euclid(b) == 0;
        if middles_ok && congruent {
            return true;
        }
    }
    false
}

/// Whether the tangent data `lists` (all of size `m >= 1`) could belong to
/// one connected component of an isotropy submanifold.
fn admissible_component(lists: &[&[Weight]], m: usize) -> Result<(), String> {
    let tally = signed_tally(lists.iter().flat_map(|l| l.iter()));
    if let Some((w, _)) = tally.iter().find(|(_, net)| **net != 0) {
        return Err(format!("weights ±{w} unbalanced"));
    }
    if let Some(v) = common_abs_value(lists.iter().flat_map(|l| l.iter())) {
        binomial_profile_holds(lists, m).map_err(|why| format!("all weights ±{v}; {why}"))?;
    }
    let ok = match (lists.len(), m) {
        // A single fixed point only on a point.
        (1, _) => false,
        // Two fixed points: the 2-sphere or the 6-sphere pattern.
        (2, 1) => true,
        (2, 3) => is_s6_pattern(lists[0], lists[1]),
        (2, _) => false,
        // Three fixed points only in dimension 4, with the CP^2 pattern.
        (3, 2) => is_cp2_pattern([lists[0], lists[1], lists[2]]),
        (3, _) => false,
        // Dimension 2 with isolated fixed points is a 2-sphere.
        (_, 1) => false,
        (4, 2) => is_hirzebruch_pattern([lists[0], lists[1], lists[2], lists[3]]),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{} fixed points with tangent weights {lists:?} match no classified action", lists.len()))
    }
}

/// Largest class of points searched exhaustively for a valid grouping.
const MAX_GROUPING_CLASS: usize = 16;

/// Whether `members` can be split into admissible components. Exhaustive
/// over set partitions, memoized on the bitmask of unassigned members.
fn admits_grouping(members: &[&[Weight]], m: usize) -> bool {
    let k = members.len();
    let full: u32 = (1u32 << k) - 1;
    let mut valid: HashMap<u32, bool> = HashMap::new();
    let mut solvable: HashMap<u32, bool> = HashMap::new();

    fn solve(
        rest: u32,
        members: &[&[Weight]],
        m: usize,
        valid: &mut HashMap<u32, bool>,
        solvable: &mut HashMap<u32, bool>,
    ) -> bool {
        if rest == 0 {
            return true;
        }
        if let Some(&s) = solvable.get(&rest) {
            return s;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // Enumerate subsets of `others`, each joined with the lowest member.
        let mut sub = others;
        let mut found = false;
        loop {
            let group = sub | low;
            let ok = *valid.entry(group).or_insert_with(|| {
                let lists: Vec<&[Weight]> = (0..members.len())
                    .filter(|i| group & (1 << i) != 0)
                    .map(|i| members[i])
                    .collect();
                admissible_component(&lists, m).is_ok()
            });
            if ok && solve(rest & !group, members, m, valid, solvable) {
                found = true;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        solvable.insert(rest, found);
        found
    }

    solve(full, members, m, &mut valid, &mut solvable)
}

/// Candidate isotropy orders: every `w >= 2` that is the gcd of some subset
/// of the weight magnitudes. Any other `w` selects the same weights as the
/// gcd of the weights it divides.
fn isotropy_orders(d: &FixedPointData) -> BTreeSet<u64> {
    let mut orders: BTreeSet<u64> = BTreeSet::new();
    let mags: BTreeSet<u64> = d.all_weights().map(|w| w.unsigned_abs()).collect();
    for x in mags {
        let mut next: Vec<u64> = orders.iter().map(|g| g.gcd(&x)).collect();
        next.push(x);
        orders.extend(next);
    }
    orders.retain(|w| *w >= 2);
    orders
}

/// For each isotropy order `w`, the weights divisible by `w` at each point
/// are the tangent weights of the `Z_w`-fixed submanifold there. Points must
/// split into connected components whose tangent data is consistent with
/// the classification of actions with few fixed points.
pub fn check_isotropy_restrictions(d: &FixedPointData) -> FilterReport {
    for w in isotropy_orders(d) {
        let subs: Vec<(usize, Vec<Weight>)> = d
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let s: Vec<Weight> = p.weights.iter().copied().filter(|x| x.unsigned_abs() % w == 0).collect();
                (i, s)
            })
            .filter(|(_, s)| !s.is_empty())
            .collect();
        let mut by_dim: BTreeMap<usize, Vec<(usize, &[Weight])>> = BTreeMap::new();
        for (i, s) in &subs {
            by_dim.entry(s.len()).or_default().push((*i, s.as_slice()));
        }
        for (m, members) in by_dim {
            if members.len() > MAX_GROUPING_CLASS {
                continue;
            }
            let lists: Vec<&[Weight]> = members.iter().map(|(_, s)| *s).collect();
            if !admits_grouping(&lists, m) {
                let described: Vec<String> = members
                    .iter()
                    .map(|(i, s)| format!("{}{:?}", d.points()[*i].label, s))
                    .collect();
                return FilterReport::fail(
                    names::ISOTROPY_RESTRICTIONS,
                    format!(
                        "Z_{w}-fixed tangent data of dimension {} at {} splits into no admissible components",
                        2 * m,
                        described.join(", ")
                    ),
                );
            }
        }
    }
    FilterReport::pass(names::ISOTROPY_RESTRICTIONS)
}

/// Every pair of points has the same weights up to sign.
pub fn weights_agree_up_to_sign(d: &FixedPointData) -> bool {
    let mut it = d.points().iter().map(FixedPoint::abs_weights);
    match it.next() {
        None => true,
        Some(first) => it.all(|a| a == first),
    }
}

/// Localization sums of every Chern monomial of degree below `n` vanish.
pub fn check_localization_vanishing(d: &FixedPointData) -> FilterReport {
    let n = d.n();
    for lambda in ChernPartition::all_up_to(n.saturating_sub(1)) {
        let value = localization_sum(d, &lambda).expect("parts bounded by degree < n");
        if !value.is_zero() {
            return FilterReport::fail(
                names::LOCALIZATION_VANISHING,
                format!("{lambda} localizes to {value}, expected 0 below degree {n}"),
            );
        }
    }
    FilterReport::pass(names::LOCALIZATION_VANISHING)
}

pub fn check_index_formula(d: &FixedPointData) -> FilterReport {
    match genus_via_index_formula(d) {
        Ok(g) if g == genus_via_counts(d) => FilterReport::pass(names::INDEX_FORMULA),
        Ok(g) => FilterReport::fail(
            names::INDEX_FORMULA,
            format!("index formula gives {g} but counting gives {}", genus_via_counts(d)),
        ),
        Err(e @ IndexFormulaError::ExponentOverflow { .. }) => {
            FilterReport::not_applicable(names::INDEX_FORMULA, e.to_string())
        }
        Err(e) => FilterReport::fail(names::INDEX_FORMULA, e.to_string()),
    }
}

/// Runs every check in a fixed order without short-circuiting.
pub fn run_all_filters(d: &FixedPointData) -> Vec<FilterReport> {
    let pairing = check_small_weight_pairing(d).unwrap_or_else(|e| {
        FilterReport::not_applicable(names::SMALL_WEIGHT_PAIRING, e.to_string())
    });
    vec![
        check_hattori(d),
        check_weight_sum_zero(d),
        pairing,
        check_adjacent_counts(d),
        check_genus_duality(d),
        check_reciprocal_sums(d),
        check_binomial_profile(d),
        dichotomy_report(d),
        check_isotropy_restrictions(d),
        check_localization_vanishing(d),
        check_index_formula(d),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(w: Vec<Vec<Weight>>) -> FixedPointData {
        FixedPointData::from_weights(w).unwrap()
    }

    fn s2xs6(a: Weight, b: Weight, c: Weight) -> FixedPointData {
        data(vec![
            vec![-b - c, a, b, c],
            vec![-b, -c, a, b + c],
            vec![-a, -b - c, b, c],
            vec![-a, -b, -c, b + c],
        ])
    }

    /// Profile-(1,1,0,1,1) specimen used throughout.
    fn specimen() -> FixedPointData {
        data(vec![
            vec![1, 2, 2, 2],
            vec![-1, 2, 2, 2],
            vec![1, -2, -2, -2],
            vec![-1, -2, -2, -2],
        ])
    }

    #[test]
    fn hattori_examples() {
        assert!(check_hattori(&data(vec![vec![-3, 1, 2], vec![-1, -2, 3]])).passed());
        let r = check_hattori(&data(vec![vec![1], vec![1]]));
        assert!(r.failed());
        assert!(r.witness.contains("weight 1"));
        assert!(check_hattori(&s2xs6(1, 2, 3)).passed());
    }

    #[test]
    fn weight_sum_examples() {
        assert!(check_weight_sum_zero(&s2xs6(1, 1, 1)).passed());
        let r = check_weight_sum_zero(&data(vec![vec![1], vec![-2]]));
        assert!(r.failed());
        assert!(r.witness.contains("-1"));
        let s6xs6 = data(vec![
            vec![-2, 1, 1, -2, 1, 1],
            vec![-2, 1, 1, -1, -1, 2],
            vec![-1, -1, 2, -2, 1, 1],
            vec![-1, -1, 2, -1, -1, 2],
        ]);
        assert!(check_weight_sum_zero(&s6xs6).passed());
    }

    #[test]
    fn small_weight_pairing_examples() {
        assert!(check_small_weight_pairing(&s2xs6(1, 1, 1)).unwrap().passed());
        // a = 1 only (second smallest also 1); +1 at levels 0 and 3 pair
        // with -1 at levels 1 and 4.
        assert!(check_small_weight_pairing(&specimen()).unwrap().passed());
        for a in 1..5 {
            assert!(check_small_weight_pairing(&data(vec![vec![a], vec![-a]])).unwrap().passed());
        }
        let empty = FixedPointData::new(2, vec![]).unwrap();
        assert_eq!(check_small_weight_pairing(&empty), Err(FilterError::EmptyData));
        // -1 sits at level 1 with no +1 at level 0
        assert!(check_small_weight_pairing(&data(vec![vec![1, -1], vec![2, -2]])).unwrap().failed());
        // +2 at level 0 but -2 only at level 2
        let bad = data(vec![vec![1, 2], vec![-1, 3], vec![-2, -3]]);
        let r = check_small_weight_pairing(&bad).unwrap();
        assert!(r.failed());
        assert!(r.witness.starts_with("weight 2"), "{}", r.witness);
        let none_positive = FixedPointData::new(1, vec![FixedPoint { label: "p".into(), weights: vec![-1] }]).unwrap();
        assert!(check_small_weight_pairing(&none_positive).unwrap().failed());
    }

    #[test]
    fn adjacent_counts_examples() {
        assert!(check_adjacent_counts(&data(vec![vec![-1], vec![1]])).passed());
        let split = data(vec![
            vec![1, 1, 1, 1],
            vec![2, 2, 2, 2],
            vec![-1, -1, -1, -1],
            vec![-2, -2, -2, -2],
        ]);
        assert_eq!(split.negative_count_profile(), vec![2, 0, 0, 0, 2]);
        assert!(check_adjacent_counts(&split).failed());
        assert!(check_adjacent_counts(&data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]])).passed());
    }

    #[test]
    fn reciprocal_sum_examples() {
        assert!(check_reciprocal_sums(&s2xs6(1, 1, 1)).passed());
        let r = check_reciprocal_sums(&specimen());
        assert!(r.failed());
        assert!(r.witness.contains("1/8"), "{}", r.witness);
        let five_sums = data(vec![
            vec![1, 1, 1, 1],
            vec![1, 1, 1, 2],
            vec![1, 1, 1, 3],
            vec![1, 1, 1, 4],
            vec![1, 1, 1, 5],
        ]);
        assert_eq!(check_reciprocal_sums(&five_sums).status, FilterStatus::NotApplicable);
    }

    #[test]
    fn binomial_profile_examples() {
        let hirz = data(vec![vec![3, 3], vec![-3, 3], vec![3, -3], vec![-3, -3]]);
        assert!(check_binomial_profile(&hirz).passed());
        let four = data(vec![vec![2, 2, 2], vec![-2, 2, 2], vec![-2, -2, 2], vec![-2, -2, -2]]);
        assert!(check_binomial_profile(&four).failed());
        let mixed = data(vec![vec![1, 2], vec![-1, -2]]);
        assert_eq!(check_binomial_profile(&mixed).status, FilterStatus::NotApplicable);
    }

    #[test]
    fn dichotomy_examples() {
        let d = s2xs6(1, 1, 1);
        match classify_dichotomy(&d).unwrap() {
            Dichotomy::Case2 { positive_pair, negative_pair, sum } => {
                assert_eq!(sum, 1);
                assert_eq!(positive_pair, ["p1".to_string(), "p2".to_string()]);
                assert_eq!(negative_pair, ["p3".to_string(), "p4".to_string()]);
                let prods: Vec<BigInt> = d.points().iter().map(FixedPoint::weight_product).collect();
                assert_eq!(prods, vec![BigInt::from(-2), BigInt::from(2), BigInt::from(2), BigInt::from(-2)]);
            }
            other => panic!("expected Case2, got {other:?}"),
        }
        let zero_sums = data(vec![vec![1, -1, 2, -2]; 4].into_iter().collect());
        assert!(classify_dichotomy(&zero_sums).unwrap().is_fail());
        assert!(classify_dichotomy(&specimen()).unwrap().is_fail());
        let cp2 = data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]);
        assert!(matches!(classify_dichotomy(&cp2), Err(FilterError::PreconditionViolation(_))));
    }

    #[test]
    fn dichotomy_case1() {
        // sums all zero, products 1, -3, -3, -3
        let d = data(vec![
            vec![1, -1, 1, -1],
            vec![1, 1, 1, -3],
            vec![1, 1, 1, -3],
            vec![1, 1, 1, -3],
        ]);
        assert_eq!(classify_dichotomy(&d).unwrap(), Dichotomy::Case1);
        // sums all zero, reciprocals 1 + 1/4 + 1/4 + 1
        let d = data(vec![
            vec![1, -1, 1, -1],
            vec![1, -1, 2, -2],
            vec![-1, 1, -1, 1],
            vec![2, -2, 1, -1],
        ]);
        assert!(classify_dichotomy(&d).unwrap().is_fail());
    }

    #[test]
    fn dichotomy_rejects_unpaired_sums() {
        let d = data(vec![
            vec![2, -2, 1, 1],
            vec![-2, 2, -1, -1],
            vec![1, -1, 1, -1],
            vec![1, -1, 1, -1],
        ]);
        assert!(classify_dichotomy(&d).unwrap().is_fail());
    }

    #[test]
    fn patterns() {
        assert!(is_s6_pattern(&[-3, 1, 2], &[-1, -2, 3]));
        assert!(is_s6_pattern(&[-1, -2, 3], &[2, -3, 1]));
        assert!(!is_s6_pattern(&[-3, 1, 2], &[-1, -1, 3]));
        assert!(is_cp2_pattern([&[2, 1], &[-1, 1], &[-1, -2]]));
        assert!(is_cp2_pattern([&[-1, -5], &[5, 4], &[-4, 1]]));
        assert!(!is_cp2_pattern([&[1, 2], &[-1, 3], &[-2, -3]]));
        assert!(is_hirzebruch_pattern([&[1, 3], &[-1, 3], &[-3, 2], &[-3, -2]]));
        assert!(is_hirzebruch_pattern([&[3, 1], &[-3, 1], &[-1, 5], &[-1, -5]]));
        // a = 2, b = 3, c = 1: 2 - 1 and 2 + 1 modulo 3 are 1 and 0
        assert!(is_hirzebruch_pattern([&[2, 3], &[-2, 3], &[-3, 1], &[-3, -1]]));
        // a = 2, b = 5, c = 1
        assert!(!is_hirzebruch_pattern([&[2, 5], &[-2, 5], &[-5, 1], &[-5, -1]]));
    }

    #[test]
    fn isotropy_examples() {
        assert!(check_isotropy_restrictions(&s2xs6(1, 1, 1)).passed());
        assert!(check_isotropy_restrictions(&s2xs6(1, 2, 3)).passed());
        // Z_2 sees one point with weight 2 and nothing to pair it with
        let lonely = data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]);
        assert!(check_isotropy_restrictions(&lonely).passed());
        // Z_2 sees two points with weight +2 in a 2-dimensional component
        let bad = data(vec![vec![2, 1], vec![-1, 2], vec![-2, -2]]);
        let r = check_isotropy_restrictions(&bad);
        assert!(r.failed());
        assert!(r.witness.contains("Z_"), "{}", r.witness);
        assert!(check_isotropy_restrictions(&specimen()).failed());
    }

    #[test]
    fn up_to_sign_probe() {
        let same = data(vec![vec![1, 2, 2, 2], vec![-1, 2, 2, -2], vec![1, -2, -2, -2], vec![-1, -2, -2, 2]]);
        assert!(weights_agree_up_to_sign(&same));
        assert!(weights_agree_up_to_sign(&s2xs6(1, 2, 3)));
        assert!(!weights_agree_up_to_sign(&data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]])));
    }

    #[test]
    fn all_filters_on_realizable_data() {
        let realizable = [
            s2xs6(1, 1, 1),
            s2xs6(2, 1, 3),
            data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]),
            data(vec![vec![-3, 1, 2], vec![-1, -2, 3]]),
            data(vec![vec![5], vec![-5]]),
            data(vec![vec![1, 3], vec![-1, 3], vec![-3, 2], vec![-3, -2]]),
        ];
        for d in &realizable {
            for r in run_all_filters(d) {
                assert!(!r.failed(), "{} failed on {d}: {}", r.name, r.witness);
            }
        }
    }

    #[test]
    fn all_filters_order_and_witnesses() {
        let reports = run_all_filters(&specimen());
        let got: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            got,
            vec![
                names::HATTORI,
                names::WEIGHT_SUM_ZERO,
                names::SMALL_WEIGHT_PAIRING,
                names::ADJACENT_COUNTS,
                names::GENUS_DUALITY,
                names::RECIPROCAL_SUMS,
                names::BINOMIAL_PROFILE,
                names::DICHOTOMY,
                names::ISOTROPY_RESTRICTIONS,
                names::LOCALIZATION_VANISHING,
                names::INDEX_FORMULA,
            ]
        );
        for r in reports.iter().filter(|r| r.failed()) {
            assert!(!r.witness.is_empty());
        }
        assert!(reports.iter().any(|r| r.failed()));
    }

    #[test]
    fn report_json_shape() {
        let r = FilterReport::fail(names::HATTORI, "x");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["name"], "hattori");
        let back: FilterReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
