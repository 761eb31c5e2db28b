//! Localization of Chern monomials to isolated fixed points.
//!
//! At a fixed point `p` the equivariant Chern class `c_j` restricts to
//! `sigma_j(w_p) t^j` and the equivariant Euler class of the tangent space
//! is `prod_i w_{p,i} t^n`. A monomial `c_{j_1} ... c_{j_k}` of degree `d`
//! therefore integrates to `t^{d-n}` times the rational number returned by
//! [`localization_sum`]. For `d < n` that coefficient sits on a negative
//! power of `t` and must vanish for genuine manifolds; for `d = n` it is the
//! Chern number.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Rational;
use crate::fpdata::{FixedPointData, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("a Chern partition needs at least one part and every part must be positive")]
    InvalidPartition,
    #[error("partition part c_{part} exceeds n = {n}")]
    PartExceedsN { part: usize, n: usize },
    #[error("expected n = {expected}, data has n = {found}")]
    WrongDimension { expected: usize, found: usize },
}

/// A Chern monomial `c_{j_1} ... c_{j_k}` stored as its parts in
/// non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChernPartition(Vec<usize>);

impl ChernPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, LocalizationError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(LocalizationError::InvalidPartition);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every partition of every degree in `1..=max_degree`, ordered by degree
    /// and then lexicographically descending within a degree.
    pub fn all_up_to(max_degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            let mut acc = Vec::new();
            partitions_into(d, d, &mut acc, &mut out);
        }
        out
    }
}

fn partitions_into(rest: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<ChernPartition>) {
    if rest == 0 {
        out.push(ChernPartition(acc.clone()));
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        acc.push(part);
        partitions_into(rest - part, part, acc, out);
        acc.pop();
    }
}

impl fmt::Display for ChernPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let part = self.0[i];
            let run = self.0[i..].iter().take_while(|p| **p == part).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "c{part}")?;
            } else {
                write!(f, "c{part}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// `sigma_0, ..., sigma_n` of the integer weights.
pub fn elementary_symmetric(weights: &[Weight]) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for &w in weights {
        let w = BigInt::from(w);
        e.push(BigInt::zero());
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * &w;
            e[k] += add;
        }
    }
    e
}

/// `sum_p prod_{j in lambda} sigma_j(w_p) / prod_i w_{p,i}`, exactly.
pub fn localization_sum(d: &FixedPointData, lambda: &ChernPartition) -> Result<Rational, LocalizationError> {
    if let Some(&part) = lambda.parts().iter().find(|&&j| j > d.n()) {
        return Err(LocalizationError::PartExceedsN { part, n: d.n() });
    }
    let mut total = Rational::zero();
    for p in d.points() {
        let sigma = elementary_symmetric(&p.weights);
        let numer: BigInt = lambda.parts().iter().map(|&j| sigma[j].clone()).product();
        total += Rational::new(numer, p.weight_product());
    }
    Ok(total)
}

/// The five Chern numbers of an 8-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernNumbersDim8 {
    #[serde(with = "crate::json::rational_serde")]
    pub c1_4: Rational,
    #[serde(with = "crate::json::rational_serde")]
    pub c1sq_c2: Rational,
    #[serde(with = "crate::json::rational_serde")]
    pub c2_sq: Rational,
    #[serde(with = "crate::json::rational_serde")]
    pub c1_c3: Rational,
    #[serde(with = "crate::json::rational_serde")]
    pub c4: Rational,
}

impl ChernNumbersDim8 {
    pub fn from_integers(v: [i64; 5]) -> Self {
        let r = |x: i64| Rational::from_integer(BigInt::from(x));
        Self {
            c1_4: r(v[0]),
            c1sq_c2: r(v[1]),
            c2_sq: r(v[2]),
            c1_c3: r(v[3]),
            c4: r(v[4]),
        }
    }

    pub fn as_array(&self) -> [&Rational; 5] {
        [&self.c1_4, &self.c1sq_c2, &self.c2_sq, &self.c1_c3, &self.c4]
    }

    pub fn all_integral(&self) -> bool {
        self.as_array().iter().all(|r| r.is_integer())
    }
}

impl fmt::Display for ChernNumbersDim8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(c1^4, c1^2c2, c2^2, c1c3, c4) = ({}, {}, {}, {}, {})",
            self.c1_4, self.c1sq_c2, self.c2_sq, self.c1_c3, self.c4
        )
    }
}

pub fn chern_numbers_dim8(d: &FixedPointData) -> Result<ChernNumbersDim8, LocalizationError> {
    if d.n() != 4 {
        return Err(LocalizationError::WrongDimension {
            expected: 4,
            found: d.n(),
        });
    }
    let sum = |parts: &[usize]| {
        let lambda = ChernPartition::new(parts.to_vec()).expect("fixed partition");
        localization_sum(d, &lambda).expect("parts bounded by n = 4")
    };
    Ok(ChernNumbersDim8 {
        c1_4: sum(&[1, 1, 1, 1]),
        c1sq_c2: sum(&[2, 1, 1]),
        c2_sq: sum(&[2, 2]),
        c1_c3: sum(&[3, 1]),
        c4: sum(&[4]),
    })
}

/// Coefficients of `(c1^4, c1^2 c2, c2^2, c1 c3, c4)` and the common
/// denominator in the degree-4 chi_y-genus integrands `T_0^4, T_1^4, T_2^4`.
/// `T_3^4 = T_1^4` and `T_4^4 = T_0^4`.
const TY_DIM8: [([i64; 5], i64); 3] = [
    ([-1, 4, 3, 1, -1], 720),
    ([-1, 4, 3, -14, -31], 180),
    ([-1, 4, 3, -19, 79], 120),
];

/// `(chi^0, chi^1, chi^2)` from the five Chern numbers.
pub fn ty_genus_from_chern(c: &ChernNumbersDim8) -> [Rational; 3] {
    TY_DIM8.map(|(coeffs, den)| {
        let numer = coeffs
            .iter()
            .zip(c.as_array())
            .fold(Rational::zero(), |acc, (k, v)| acc + v * Rational::from_integer(BigInt::from(*k)));
        numer / Rational::from_integer(BigInt::from(den))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{integer, rational};

    fn data(w: Vec<Vec<Weight>>) -> FixedPointData {
        FixedPointData::from_weights(w).unwrap()
    }

    fn s2xs6_111() -> FixedPointData {
        data(vec![vec![-2, 1, 1, 1], vec![-1, -1, 1, 2], vec![-1, -2, 1, 1], vec![-1, -1, -1, 2]])
    }

    fn part(p: &[usize]) -> ChernPartition {
        ChernPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn s2xs6_sums() {
        let d = s2xs6_111();
        assert_eq!(localization_sum(&d, &part(&[4])).unwrap(), integer(4));
        assert_eq!(localization_sum(&d, &part(&[1, 1, 1, 1])).unwrap(), integer(0));
        assert_eq!(localization_sum(&d, &part(&[2])).unwrap(), integer(0));
    }

    #[test]
    fn cp2_c1_squared_by_substitution() {
        let d = data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]);
        // (2+1)^2/(2*1) + 0^2/(-1) + (-3)^2/((-1)(-2))
        let by_hand = rational(9, 2) + integer(0) + rational(9, 2);
        assert_eq!(localization_sum(&d, &part(&[1, 1])).unwrap(), by_hand);
        assert_eq!(by_hand, integer(9));
    }

    #[test]
    fn part_bound_enforced() {
        let d = data(vec![vec![1], vec![-1]]);
        assert_eq!(
            localization_sum(&d, &part(&[2])),
            Err(LocalizationError::PartExceedsN { part: 2, n: 1 })
        );
        assert!(ChernPartition::new(vec![]).is_err());
        assert!(ChernPartition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn dim8_numbers() {
        let c = chern_numbers_dim8(&s2xs6_111()).unwrap();
        assert_eq!(c, ChernNumbersDim8::from_integers([0, 0, 0, 4, 4]));
        let cp2 = data(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]);
        assert!(matches!(chern_numbers_dim8(&cp2), Err(LocalizationError::WrongDimension { .. })));
    }

    #[test]
    fn ty_from_chern_values() {
        let t = ty_genus_from_chern(&ChernNumbersDim8::from_integers([0, 0, 0, 4, 4]));
        assert_eq!(t, [integer(0), integer(-1), integer(2)]);
        let z = ty_genus_from_chern(&ChernNumbersDim8::from_integers([0; 5]));
        assert_eq!(z, [integer(0), integer(0), integer(0)]);
    }

    #[test]
    fn partitions_enumerated() {
        let all = ChernPartition::all_up_to(4);
        // p(1) + p(2) + p(3) + p(4) = 1 + 2 + 3 + 5
        assert_eq!(all.len(), 11);
        assert_eq!(all[0].parts(), &[1]);
        assert_eq!(all.last().unwrap().parts(), &[1, 1, 1, 1]);
        assert_eq!(part(&[1, 2, 1]).to_string(), "c2 c1^2");
    }

    #[test]
    fn elementary_symmetric_small() {
        let e = elementary_symmetric(&[1, 2, 3]);
        let e: Vec<i64> = e.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(e, vec![1, 6, 11, 6]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn data_strategy() -> impl Strategy<Value = FixedPointData> {
            (1usize..5).prop_flat_map(|n| {
                prop::collection::vec(
                    prop::collection::vec((-7i64..8).prop_filter("nonzero", |w| *w != 0), n),
                    1..6,
                )
                .prop_map(|w| FixedPointData::from_weights(w).unwrap())
            })
        }

        proptest! {
            #[test]
            fn top_chern_class_counts_points(d in data_strategy()) {
                let top = part(&[d.n()]);
                prop_assert_eq!(localization_sum(&d, &top).unwrap(), integer(d.len() as i64));
            }

            #[test]
            fn degree_n_sums_scale_invariant(d in data_strategy(), k in 2i64..5) {
                let scaled = FixedPointData::from_weights(
                    d.points().iter().map(|p| p.weights.iter().map(|w| w * k).collect()).collect(),
                ).unwrap();
                for lambda in ChernPartition::all_up_to(d.n()).into_iter().filter(|l| l.degree() == d.n()) {
                    prop_assert_eq!(
                        localization_sum(&d, &lambda).unwrap(),
                        localization_sum(&scaled, &lambda).unwrap()
                    );
                }
            }
        }
    }
}
