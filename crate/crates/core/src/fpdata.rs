//! Fixed-point data: the weights of a circle action at each isolated fixed
//! point, plus the JSON interchange format.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Weights are machine integers; every product or symmetric function of them
/// is accumulated in [`BigInt`].
pub type Weight = i64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedPoint {
    pub label: String,
    pub weights: Vec<Weight>,
}

impl FixedPoint {
    pub fn new(label: impl Into<String>, weights: Vec<Weight>) -> Self {
        Self {
            label: label.into(),
            weights,
        }
    }

    /// Number of strictly negative weights (the `n_p` of the index formula).
    pub fn negative_weight_count(&self) -> usize {
        self.weights.iter().filter(|w| **w < 0).count()
    }

    pub fn positive_weight_count(&self) -> usize {
        self.weights.iter().filter(|w| **w > 0).count()
    }

    /// Multiplicity of `w` among this point's weights.
    pub fn count_weight(&self, w: Weight) -> usize {
        self.weights.iter().filter(|x| **x == w).count()
    }

    pub fn weight_sum(&self) -> i128 {
        self.weights.iter().map(|w| *w as i128).sum()
    }

    pub fn weight_product(&self) -> BigInt {
        self.weights.iter().map(|w| BigInt::from(*w)).product()
    }

    pub fn sorted_weights(&self) -> Vec<Weight> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }

    /// Sorted absolute values.
    pub fn abs_weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self.weights.iter().map(|w| w.unsigned_abs()).collect();
        w.sort_unstable();
        w
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error("n must be positive")]
    ZeroDimension,
    #[error("point {index} has {found} weights, expected {expected}")]
    WrongWeightCount {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("point {index} has a zero weight at position {position}")]
    ZeroWeight { index: usize, position: usize },
    #[error("label {label:?} is used more than once")]
    DuplicateLabel { label: String },
}

/// A validated collection of fixed points sharing the weight count `n`
/// (half the real dimension).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointData {
    n: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    pub fn new(n: usize, points: Vec<FixedPoint>) -> Result<Self, DataError> {
        if n == 0 {
            return Err(DataError::ZeroDimension);
        }
        let mut seen = HashSet::new();
        for (index, p) in points.iter().enumerate() {
            if p.weights.len() != n {
                return Err(DataError::WrongWeightCount {
                    index,
                    found: p.weights.len(),
                    expected: n,
                });
            }
            if let Some(position) = p.weights.iter().position(|w| *w == 0) {
                return Err(DataError::ZeroWeight { index, position });
            }
            if !seen.insert(p.label.as_str()) {
                return Err(DataError::DuplicateLabel {
                    label: p.label.clone(),
                });
            }
        }
        Ok(Self { n, points })
    }

    /// Builds data from bare weight lists, labelling points `p1, p2, ...`.
    /// `n` is taken from the first list.
    pub fn from_weights(weights: Vec<Vec<Weight>>) -> Result<Self, DataError> {
        let n = weights.first().map_or(0, Vec::len);
        let points = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| FixedPoint::new(format!("p{}", i + 1), w))
            .collect();
        Self::new(n, points)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.label.as_str())
    }

    pub fn point(&self, label: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn all_weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.points.iter().flat_map(|p| p.weights.iter().copied())
    }

    /// `N_i` for `i = 0..=n`: how many points have exactly `i` negative weights.
    pub fn negative_count_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.n + 1];
        for p in &self.points {
            profile[p.negative_weight_count()] += 1;
        }
        profile
    }

    /// Weights sorted within each point, points sorted by weight list, labels
    /// renumbered `p1, p2, ...`.
    pub fn canonical_form(&self) -> Self {
        let mut lists: Vec<Vec<Weight>> = self.points.iter().map(FixedPoint::sorted_weights).collect();
        lists.sort();
        let points = lists
            .into_iter()
            .enumerate()
            .map(|(i, w)| FixedPoint::new(format!("p{}", i + 1), w))
            .collect();
        Self { n: self.n, points }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Serializes the canonical form as pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let doc = DataDocument::from(&self.canonical_form());
        crate::json::to_stable_string(&doc)
    }

    pub fn from_json(document: &str) -> Result<Self, ParseError> {
        parse_fixed_point_data(document)
    }
}

impl fmt::Display for FixedPointData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{:?}", p.label, p.weights)?;
        }
        write!(f, "]")
    }
}

/// Wire format: `{"n": int, "points": [{"label": str, "weights": [int]}]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataDocument {
    n: usize,
    points: Vec<FixedPoint>,
}

impl Serialize for FixedPointData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DataDocument::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FixedPointData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = DataDocument::deserialize(deserializer)?;
        FixedPointData::new(doc.n, doc.points).map_err(serde::de::Error::custom)
    }
}

impl From<&FixedPointData> for DataDocument {
    fn from(d: &FixedPointData) -> Self {
        Self {
            n: d.n,
            points: d.points.clone(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{position}: {reason}")]
pub struct ParseError {
    /// `line L column C` for syntax errors, a JSON path for invalid values.
    pub position: String,
    pub reason: String,
}

pub fn parse_fixed_point_data(document: &str) -> Result<FixedPointData, ParseError> {
    let doc: DataDocument = serde_json::from_str(document).map_err(|e| ParseError {
        position: format!("line {} column {}", e.line(), e.column()),
        reason: e.to_string(),
    })?;
    FixedPointData::new(doc.n, doc.points).map_err(|e| {
        let position = match &e {
            DataError::ZeroDimension => "n".to_string(),
            DataError::WrongWeightCount { index, .. } => format!("points[{index}].weights"),
            DataError::ZeroWeight { index, position } => {
                format!("points[{index}].weights[{position}]")
            }
            DataError::DuplicateLabel { label } => format!("label {label:?}"),
        };
        ParseError {
            position,
            reason: e.to_string(),
        }
    })
}

/// Coefficients `chi^0..chi^n` of the chi_y-genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GenusPolynomial(Vec<i64>);

impl GenusPolynomial {
    pub fn new(coefficients: Vec<i64>) -> Self {
        assert!(!coefficients.is_empty(), "genus polynomial needs chi^0");
        Self(coefficients)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    /// The `n` with `len = n + 1`.
    pub fn degree_bound(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, y: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * y + c)
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }
}

impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "y")?,
                (1, _) => write!(f, "{a}y")?,
                (_, 1) => write!(f, "y^{i}")?,
                _ => write!(f, "{a}y^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
