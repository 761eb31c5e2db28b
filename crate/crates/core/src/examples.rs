//! Fixed-point data of known circle actions. Every generator returns data
//! in canonical form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpdata::{FixedPoint, FixedPointData, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExampleError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: Weight },
    #[error("variant {variant} needs a = {sign}c mod b, got a = {a}, b = {b}, c = {c}")]
    InvalidCongruence {
        a: Weight,
        b: Weight,
        c: Weight,
        variant: Variant,
        sign: &'static str,
    },
    #[error("unknown example {0:?}; expected one of {names}", names = NAMES.join(", "))]
    UnknownName(String),
}

fn positive(name: &'static str, value: Weight) -> Result<Weight, ExampleError> {
    if value >= 1 {
        Ok(value)
    } else {
        Err(ExampleError::NonPositive { name, value })
    }
}

fn build(weights: Vec<Vec<Weight>>) -> FixedPointData {
    FixedPointData::from_weights(weights)
        .expect("generated weights are nonzero and of uniform length")
        .canonical_form()
}

/// Rotation of the 2-sphere with speed `a`.
pub fn sphere(a: Weight) -> Result<FixedPointData, ExampleError> {
    let a = positive("a", a)?;
    Ok(build(vec![vec![-a], vec![a]]))
}

pub fn s6(b: Weight, c: Weight) -> Result<FixedPointData, ExampleError> {
    let (b, c) = (positive("b", b)?, positive("c", c)?);
    Ok(build(vec![vec![-b - c, b, c], vec![-b, -c, b + c]]))
}

pub fn cp2(a: Weight, b: Weight) -> Result<FixedPointData, ExampleError> {
    let (a, b) = (positive("a", a)?, positive("b", b)?);
    Ok(build(vec![vec![a + b, a], vec![-a, b], vec![-b, -a - b]]))
}

/// The two ways four fixed points sit on a 4-manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `a = c mod b`
    I,
    /// `a = -c mod b`
    II,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "I",
            Variant::II => "II",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" | "i" | "1" => Ok(Variant::I),
            "II" | "ii" | "2" => Ok(Variant::II),
            other => Err(format!("unknown variant {other:?}; expected I or II")),
        }
    }
}

/// Hirzebruch-surface-type data `{a,b}, {-a,b}, {-b,c}, {-b,-c}`.
pub fn hirzebruch(a: Weight, b: Weight, c: Weight, variant: Variant) -> Result<FixedPointData, ExampleError> {
    let (a, b, c) = (positive("a", a)?, positive("b", b)?, positive("c", c)?);
    let (holds, sign) = match variant {
        Variant::I => ((a - c).rem_euclid(b) == 0, ""),
        Variant::II => ((a + c).rem_euclid(b) == 0, "-"),
    };
    if !holds {
        return Err(ExampleError::InvalidCongruence { a, b, c, variant, sign });
    }
    Ok(build(vec![vec![a, b], vec![-a, b], vec![-b, c], vec![-b, -c]]))
}

/// Diagonal action on a product: one point per pair, weights concatenated.
pub fn product(d1: &FixedPointData, d2: &FixedPointData) -> FixedPointData {
    let points = d1
        .points()
        .iter()
        .flat_map(|p| {
            d2.points().iter().map(move |q| {
                let mut w = p.weights.clone();
                w.extend_from_slice(&q.weights);
                FixedPoint::new(format!("({},{})", p.label, q.label), w)
            })
        })
        .collect();
    FixedPointData::new(d1.n() + d2.n(), points)
        .expect("pairs of distinct labels are distinct")
        .canonical_form()
}

pub fn s2xs6(a: Weight, b: Weight, c: Weight) -> Result<FixedPointData, ExampleError> {
    Ok(product(&sphere(a)?, &s6(b, c)?))
}

pub fn s6xs6(a1: Weight, b1: Weight, a2: Weight, b2: Weight) -> Result<FixedPointData, ExampleError> {
    Ok(product(&s6(a1, b1)?, &s6(a2, b2)?))
}

pub const NAMES: [&str; 6] = ["sphere", "s6", "cp2", "hirzebruch", "s2xs6", "s6xs6"];

/// Parameters for [`by_name`]; missing values default to 1 and variant I.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub a: Option<Weight>,
    pub b: Option<Weight>,
    pub c: Option<Weight>,
    pub d: Option<Weight>,
    pub variant: Option<Variant>,
}

/// Looks up a generator by name. `s6` reads `b, c`; `s6xs6` reads
/// `a, b, c, d` as `a1, b1, a2, b2`.
pub fn by_name(name: &str, params: &Params) -> Result<FixedPointData, ExampleError> {
    let [a, b, c, d] = [params.a, params.b, params.c, params.d].map(|x| x.unwrap_or(1));
    match name {
        "sphere" => sphere(a),
        "s6" => s6(b, c),
        "cp2" => cp2(a, b),
        "hirzebruch" => hirzebruch(a, b, c, params.variant.unwrap_or(Variant::I)),
        "s2xs6" => s2xs6(a, b, c),
        "s6xs6" => s6xs6(a, b, c, d),
        other => Err(ExampleError::UnknownName(other.to_string())),
    }
}

/// Every generator over parameters `1..=max`, tagged with a description.
/// Hirzebruch data is included for each variant whose congruence holds.
pub fn parameter_grid(max: Weight) -> Vec<(String, FixedPointData)> {
    let r = || 1..=max;
    let mut out = Vec::new();
    for a in r() {
        out.push((format!("sphere({a})"), sphere(a).unwrap()));
    }
    for b in r() {
        for c in r() {
            out.push((format!("s6({b},{c})"), s6(b, c).unwrap()));
            out.push((format!("cp2({b},{c})"), cp2(b, c).unwrap()));
        }
    }
    for a in r() {
        for b in r() {
            for c in r() {
                for v in [Variant::I, Variant::II] {
                    if let Ok(d) = hirzebruch(a, b, c, v) {
                        out.push((format!("hirzebruch({a},{b},{c},{v})"), d));
                    }
                }
                out.push((format!("s2xs6({a},{b},{c})"), s2xs6(a, b, c).unwrap()));
                for d in r() {
                    out.push((format!("s6xs6({a},{b},{c},{d})"), s6xs6(a, b, c, d).unwrap()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{run_all_filters, weights_agree_up_to_sign};
    use crate::genus::genus_via_counts;
    use crate::localization::{localization_sum, ChernPartition};
    use crate::exactalg::integer;

    fn lists(d: &FixedPointData) -> Vec<Vec<Weight>> {
        d.points().iter().map(|p| p.weights.clone()).collect()
    }

    fn expected(w: Vec<Vec<Weight>>) -> Vec<Vec<Weight>> {
        lists(&FixedPointData::from_weights(w).unwrap().canonical_form())
    }

    #[test]
    fn small_examples() {
        assert_eq!(lists(&sphere(1).unwrap()), vec![vec![-1], vec![1]]);
        assert_eq!(lists(&sphere(3).unwrap()), vec![vec![-3], vec![3]]);
        assert_eq!(lists(&s6(1, 1).unwrap()), expected(vec![vec![-2, 1, 1], vec![-1, -1, 2]]));
        assert_eq!(lists(&cp2(1, 1).unwrap()), expected(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]));
        assert_eq!(genus_via_counts(&s6(2, 5).unwrap()).coefficients(), &[0, -1, 1, 0]);
        for a in 1..6 {
            assert_eq!(genus_via_counts(&sphere(a).unwrap()).coefficients(), &[1, -1]);
        }
    }

    #[test]
    fn parameters_must_be_positive() {
        assert_eq!(sphere(0), Err(ExampleError::NonPositive { name: "a", value: 0 }));
        assert!(s6(1, -2).is_err());
        assert!(by_name("torus", &Params::default()).is_err());
    }

    #[test]
    fn hirzebruch_congruences() {
        for v in [Variant::I, Variant::II] {
            assert!(matches!(hirzebruch(1, 2, 2, v), Err(ExampleError::InvalidCongruence { .. })));
        }
        assert!(hirzebruch(1, 3, 1, Variant::I).is_ok());
        assert!(hirzebruch(1, 3, 1, Variant::II).is_err());
        assert!(hirzebruch(1, 3, 2, Variant::II).is_ok());
        let d = hirzebruch(1, 1, 1, Variant::I).unwrap();
        let c1sq = localization_sum(&d, &ChernPartition::new(vec![1, 1]).unwrap()).unwrap();
        let c2 = localization_sum(&d, &ChernPartition::new(vec![2]).unwrap()).unwrap();
        assert_eq!((c1sq, c2), (integer(8), integer(4)));
    }

    #[test]
    fn product_matches_listed_weights() {
        let (a, b, c) = (2, 3, 5);
        assert_eq!(
            lists(&s2xs6(a, b, c).unwrap()),
            expected(vec![
                vec![-b - c, a, b, c],
                vec![-b, -c, a, b + c],
                vec![-a, -b - c, b, c],
                vec![-a, -b, -c, b + c],
            ])
        );
        let (a1, b1, a2, b2) = (1, 2, 3, 4);
        assert_eq!(
            lists(&s6xs6(a1, b1, a2, b2).unwrap()),
            expected(vec![
                vec![-a1 - b1, a1, b1, -a2 - b2, a2, b2],
                vec![-a1 - b1, a1, b1, -a2, -b2, a2 + b2],
                vec![-a1, -b1, a1 + b1, -a2 - b2, a2, b2],
                vec![-a1, -b1, a1 + b1, -a2, -b2, a2 + b2],
            ])
        );
    }

    #[test]
    fn product_genus_is_multiplicative() {
        let (x, y) = (cp2(1, 2).unwrap(), s6(3, 1).unwrap());
        assert_eq!(
            genus_via_counts(&product(&x, &y)),
            genus_via_counts(&x).product(&genus_via_counts(&y))
        );
    }

    #[test]
    fn product_is_commutative_and_associative() {
        let (x, y, z) = (sphere(2).unwrap(), cp2(1, 3).unwrap(), s6(1, 2).unwrap());
        assert_eq!(product(&x, &y), product(&y, &x));
        assert_eq!(product(&product(&x, &y), &z), product(&x, &product(&y, &z)));
    }

    #[test]
    fn up_to_sign_on_products() {
        assert!(weights_agree_up_to_sign(&s2xs6(1, 2, 3).unwrap()));
        assert!(weights_agree_up_to_sign(&s6xs6(1, 1, 2, 2).unwrap()));
        assert!(!weights_agree_up_to_sign(&cp2(1, 2).unwrap()));
    }

    #[test]
    fn outputs_are_canonical() {
        for (_, d) in parameter_grid(3) {
            assert!(d.is_canonical());
        }
    }

    #[test]
    fn grid_passes_every_filter() {
        for (name, d) in parameter_grid(3) {
            for r in run_all_filters(&d) {
                assert!(!r.failed(), "{name}: {} failed: {}", r.name, r.witness);
            }
        }
    }

    #[test]
    fn registry_defaults() {
        assert_eq!(by_name("s2xs6", &Params::default()).unwrap(), s2xs6(1, 1, 1).unwrap());
        let p = Params {
            a: Some(1),
            b: Some(3),
            c: Some(2),
            variant: Some(Variant::II),
            ..Params::default()
        };
        assert_eq!(by_name("hirzebruch", &p).unwrap(), hirzebruch(1, 3, 2, Variant::II).unwrap());
        assert_eq!("II".parse::<Variant>(), Ok(Variant::II));
    }
}
