//! Exact univariate algebra in the indeterminate `g`.
//!
//! [`LaurentPoly`] is a sparse Laurent polynomial with rational coefficients,
//! and [`RationalFunction`] a quotient of two of them kept in a canonical
//! reduced form: the denominator is an ordinary monic polynomial with a
//! nonzero constant term, coprime to the numerator. Two rational functions
//! are equal exactly when their canonical forms are structurally equal, so
//! constancy is a syntactic test.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("quotient is not a Laurent polynomial")]
    DivisionFails,
}

/// Sparse Laurent polynomial `sum c_e g^e`. The zero polynomial has no terms
/// and no stored coefficient is ever zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `g^exp`
    pub fn power(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `1 - g^exp`, the per-weight factor of a localization denominator.
    pub fn one_minus_power(exp: i64) -> Self {
        Self::from_terms([(0, Rational::one()), (exp, -Rational::one())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(terms.into_iter().map(|(e, c)| (e, integer(c))))
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// The constant value if this polynomial has no term of nonzero degree.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `g^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Returns `q` with `q * divisor == self`, or [`AlgebraError::DivisionFails`]
    /// when no Laurent polynomial quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (b_shift, b) = Dense::split_unit(divisor).ok_or(AlgebraError::ZeroDivisor)?;
        let Some((a_shift, a)) = Dense::split_unit(self) else {
            return Ok(Self::zero());
        };
        let (q, r) = a.div_rem(&b);
        if !r.is_zero() {
            return Err(AlgebraError::DivisionFails);
        }
        Ok(q.to_laurent(a_shift - b_shift))
    }

    /// Evaluates at a nonzero rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_signed(x, *e);
        }
        acc
    }
}

fn pow_signed(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one();
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}*")?;
            }
            if *e == 1 {
                write!(f, "g")?;
            } else {
                write!(f, "g^{e}")?;
            }
        }
        Ok(())
    }
}

/// Dense ordinary polynomial, index = exponent. Only used internally for
/// division and gcd.
#[derive(Clone, Debug)]
struct Dense(Vec<Rational>);

impl Dense {
    /// Writes `p = g^shift * d` with `d` ordinary and `d(0) != 0`.
    fn split_unit(p: &LaurentPoly) -> Option<(i64, Dense)> {
        let lo = p.min_exp()?;
        let hi = p.max_exp()?;
        let mut v = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (e, c) in p.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        Some((lo, Dense(v)))
    }

    fn to_laurent(&self, shift: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn div_rem(&self, b: &Dense) -> (Dense, Dense) {
        let db = b.degree();
        let lb = b.0[db].clone();
        let mut r = self.clone();
        r.trim();
        if r.0.len() <= db {
            return (Dense(vec![]), r);
        }
        let mut q = vec![Rational::zero(); r.0.len() - db];
        while r.0.len() > db && !r.0.is_empty() {
            let dr = r.0.len() - 1;
            let factor = &r.0[dr] / &lb;
            let off = dr - db;
            for (i, c) in b.0.iter().enumerate() {
                if !c.is_zero() {
                    r.0[off + i] -= &factor * c;
                }
            }
            q[off] = factor;
            r.0.pop();
            r.trim();
        }
        (Dense(q), r)
    }

    fn make_monic(&mut self) {
        self.trim();
        if let Some(lc) = self.0.last().cloned() {
            if !lc.is_one() {
                for c in &mut self.0 {
                    *c /= &lc;
                }
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    fn gcd(a: &Dense, b: &Dense) -> Dense {
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        x.trim();
        y.trim();
        while !y.is_zero() {
            y.make_monic();
            let (_, mut r) = x.div_rem(&y);
            r.trim();
            x = y;
            y = r;
        }
        x.make_monic();
        x
    }
}

/// A quotient of Laurent polynomials held in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, AlgebraError> {
        let (d_shift, mut den) = Dense::split_unit(&denominator).ok_or(AlgebraError::ZeroDivisor)?;
        let Some((n_shift, mut num)) = Dense::split_unit(&numerator) else {
            return Ok(Self::zero());
        };
        // num/den are both free of g-factors now; g is a unit so only the
        // shift difference survives.
        let g = Dense::gcd(&num, &den);
        if g.degree() > 0 {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        num.trim();
        den.trim();
        let lc = den.0.last().cloned().expect("nonzero denominator");
        for c in num.0.iter_mut().chain(den.0.iter_mut()) {
            *c /= &lc;
        }
        Ok(Self {
            numerator: num.to_laurent(n_shift - d_shift),
            denominator: den.to_laurent(0),
        })
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            numerator: p,
            denominator: LaurentPoly::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Exact sum, reduced.
    pub fn add(&self, other: &Self) -> Self {
        if self.denominator == other.denominator {
            return Self::new(&self.numerator + &other.numerator, self.denominator.clone())
                .expect("nonzero denominator");
        }
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Sums many unreduced quotients `(numerator, denominator)` over the
    /// product of their denominators and reduces once at the end.
    pub fn sum_of_quotients(
        parts: &[(LaurentPoly, LaurentPoly)],
    ) -> Result<Self, AlgebraError> {
        if parts.iter().any(|(_, d)| d.is_zero()) {
            return Err(AlgebraError::ZeroDivisor);
        }
        let mut num = LaurentPoly::zero();
        let mut den = LaurentPoly::one();
        for (pn, pd) in parts {
            num = &(&num * pd) + &(pn * &den);
            den = &den * pd;
        }
        Self::new(num, den)
    }

    pub fn neg(&self) -> Self {
        Self {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    /// The constant value, or `None` when the function is not constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.denominator != LaurentPoly::one() {
            return None;
        }
        self.numerator.as_constant()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == LaurentPoly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    fn rf(n: &[(i64, i64)], d: &[(i64, i64)]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn laurent_mul_examples() {
        assert_eq!(p(&[(0, 1), (1, -1)]) * p(&[(0, 1), (1, 1)]), p(&[(0, 1), (2, -1)]));
        assert_eq!(p(&[(-1, 1)]) * p(&[(1, 1)]), LaurentPoly::one());
        assert_eq!(p(&[(0, 1), (2, -1)]) * LaurentPoly::one(), p(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn exact_div_examples() {
        let q = p(&[(0, 1), (3, -1)]).exact_div(&p(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(q, p(&[(0, 1), (1, 1), (2, 1)]));
        let one_minus_g2 = LaurentPoly::one_minus_power(2);
        assert_eq!(one_minus_g2.exact_div(&one_minus_g2).unwrap(), LaurentPoly::one());
        assert_eq!(
            p(&[(0, 1), (1, 1)]).exact_div(&p(&[(0, 1), (1, -1)])),
            Err(AlgebraError::DivisionFails)
        );
        assert_eq!(
            LaurentPoly::one().exact_div(&LaurentPoly::zero()),
            Err(AlgebraError::ZeroDivisor)
        );
    }

    #[test]
    fn exact_div_with_negative_exponents() {
        // g^-2 - g^-1 = g^-2 (1 - g)
        let a = p(&[(-2, 1), (-1, -1)]);
        let q = a.exact_div(&p(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(q, p(&[(-2, 1)]));
        assert_eq!(LaurentPoly::zero().exact_div(&a).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn add_and_reduce_examples() {
        let a = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        let b = rf(&[(2, -1)], &[(0, 1), (2, -1)]);
        assert_eq!(a.add(&b).constant_value(), Some(integer(1)));

        let x = rf(&[(0, 1), (1, 3)], &[(0, 2), (3, 1)]);
        assert_eq!(x.add(&RationalFunction::zero()), x);

        let c = rf(&[(0, 1)], &[(0, 1), (1, -1)]);
        let d = rf(&[(0, 1)], &[(0, 1), (-1, -1)]);
        assert_eq!(c.add(&d), RationalFunction::from_poly(LaurentPoly::one()));
    }

    #[test]
    fn constant_value_examples() {
        assert_eq!(
            RationalFunction::from_poly(LaurentPoly::one()).constant_value(),
            Some(integer(1))
        );
        assert_eq!(rf(&[(0, 1), (1, 1)], &[(0, 1), (1, -1)]).constant_value(), None);
        let s2 = rf(&[(0, 1)], &[(0, 1), (2, -1)]).add(&rf(&[(0, 1)], &[(0, 1), (-2, -1)]));
        assert_eq!(s2.constant_value(), Some(integer(1)));
        assert_eq!(RationalFunction::zero().constant_value(), Some(integer(0)));
        // a lone power of g is not constant
        assert_eq!(RationalFunction::from_poly(p(&[(1, 1)])).constant_value(), None);
    }

    #[test]
    fn canonical_denominator_is_monic_and_unit_free() {
        // 2 / (2 g^3 - 2 g^2) == g^-2 / (g - 1)
        let f = rf(&[(0, 2)], &[(3, 2), (2, -2)]);
        assert_eq!(f.denominator(), &p(&[(0, -1), (1, 1)]));
        assert_eq!(f.numerator(), &p(&[(-2, 1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(AlgebraError::ZeroDivisor)
        );
    }

    #[test]
    fn sum_of_quotients_matches_pairwise_sum() {
        let parts = vec![
            (LaurentPoly::one(), LaurentPoly::one_minus_power(2)),
            (LaurentPoly::one(), LaurentPoly::one_minus_power(-2)),
            (p(&[(1, 3)]), LaurentPoly::one_minus_power(3)),
        ];
        let pairwise = parts
            .iter()
            .map(|(n, d)| RationalFunction::new(n.clone(), d.clone()).unwrap())
            .fold(RationalFunction::zero(), |acc, x| acc.add(&x));
        assert_eq!(RationalFunction::sum_of_quotients(&parts).unwrap(), pairwise);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(0, 1), (2, -1)]).to_string(), "1 - g^2");
        assert_eq!(p(&[(-1, -3), (1, 1)]).to_string(), "-3*g^-1 + g");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_matches_substitution() {
        let f = p(&[(-1, 2), (0, 1), (2, -1)]);
        assert_eq!(f.eval(&integer(2)), integer(1) + integer(1) - integer(4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((-4i64..5, -3i64..4), 0..5).prop_map(LaurentPoly::from_int_terms)
        }

        fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
            poly().prop_filter("nonzero", |p| !p.is_zero())
        }

        fn rfunc() -> impl Strategy<Value = RationalFunction> {
            (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn no_zero_coefficients(a in poly(), b in poly()) {
                let prod = &a * &b;
                prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
            }

            #[test]
            fn exact_div_inverts_mul(a in poly(), b in nonzero_poly()) {
                let prod = &a * &b;
                let q = prod.exact_div(&b).unwrap();
                prop_assert_eq!(&q * &b, prod);
            }

            #[test]
            fn exact_div_success_is_exact(a in poly(), b in nonzero_poly()) {
                if let Ok(q) = a.exact_div(&b) {
                    prop_assert_eq!(&q * &b, a);
                }
            }

            #[test]
            fn rf_add_commutative_associative(a in rfunc(), b in rfunc(), c in rfunc()) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            }

            #[test]
            fn rf_value_agrees_with_evaluation(n in poly(), d in nonzero_poly(), x in 2i64..7) {
                let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
                let pt = integer(x);
                let dv = d.eval(&pt);
                prop_assume!(!dv.is_zero());
                prop_assert_eq!(f.numerator().eval(&pt) / f.denominator().eval(&pt), n.eval(&pt) / dv);
            }

            #[test]
            fn inverse_weight_identity(w in (-40i64..40).prop_filter("nonzero", |w| *w != 0)) {
                let lhs = RationalFunction::new(LaurentPoly::one(), LaurentPoly::one_minus_power(-w)).unwrap();
                let rhs = RationalFunction::new(
                    LaurentPoly::monomial(integer(-1), w),
                    LaurentPoly::one_minus_power(w),
                ).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
