//! Exact scalar arithmetic for the discounted-sum kernels.
//!
//! The kernels are generic over [`ExactScalar`], which is implemented for every
//! `Ratio<T>` over a signed integer type. Floating point is deliberately
//! excluded: gap values and sign decisions must be exact.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

pub trait ExactScalar: Clone + Ord + Signed + fmt::Debug + fmt::Display {
    fn from_int(n: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
    /// Greatest integer not above `self`.
    fn floor(&self) -> Self;
    /// Reduced denominator, as a scalar.
    fn denominator(&self) -> Self;
    /// Reduced numerator, as a scalar.
    fn numerator(&self) -> Self;
    fn is_integral(&self) -> bool {
        self.denominator().is_one()
    }
    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<T> ExactScalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + fmt::Display,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer does not fit the scalar type"))
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn denominator(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn numerator(&self) -> Self {
        Ratio::from_integer(self.numer().clone())
    }
}

/// The residual class of a finite word under a discounted-sum condition.
///
/// Variant order gives the inclusion order of residuals: `Bot < Finite(_) < Top`,
/// and among finite gaps a larger gap has more winning continuations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GapValue<S = crate::Rational> {
    Bot,
    Finite(S),
    Top,
}

impl<S: ExactScalar> GapValue<S> {
    pub fn zero() -> Self {
        GapValue::Finite(S::zero())
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            GapValue::Finite(g) => Some(g),
            _ => None,
        }
    }
}

impl<S: fmt::Display> fmt::Display for GapValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapValue::Top => f.write_str("top"),
            GapValue::Bot => f.write_str("bot"),
            GapValue::Finite(g) => write!(f, "{g}"),
        }
    }
}

/// Largest discounted sum achievable with colors in `[-k, k]`: `k / (1 - λ)`.
pub fn max_ds<S: ExactScalar>(lambda: &S, k: i64) -> S {
    S::from_int(k) / (S::one() - lambda.clone())
}

/// Discounted sum of a finite word, `Σ c_i λ^i`.
pub fn ds_of_word<S: ExactScalar>(word: &[i64], lambda: &S) -> S {
    let mut sum = S::zero();
    let mut weight = S::one();
    for &c in word {
        sum = sum + S::from_int(c) * weight.clone();
        weight = weight * lambda.clone();
    }
    sum
}

/// Discounted sum of `prefix · period^ω`:
/// `DS(u) + λ^|u| · DS(v) / (1 - λ^|v|)`.
pub fn ds_of_lasso<S: ExactScalar>(prefix: &[i64], period: &[i64], lambda: &S) -> S {
    assert!(!period.is_empty(), "lasso period must be non-empty");
    let head = ds_of_word(prefix, lambda);
    let cycle = ds_of_word(period, lambda) / (S::one() - lambda.pow(period.len()));
    head + lambda.pow(prefix.len()) * cycle
}

/// One step of the gap recurrence `gap(wc) = (gap(w) + c) / λ`, with `Top`
/// inclusive at `k/(1-λ)` and `Bot` strictly below `-k/(1-λ)`.
pub fn gap_step<S: ExactScalar>(g: &GapValue<S>, c: i64, lambda: &S, k: i64) -> GapValue<S> {
    match g {
        GapValue::Top => GapValue::Top,
        GapValue::Bot => GapValue::Bot,
        GapValue::Finite(g) => clamp_gap((g.clone() + S::from_int(c)) / lambda.clone(), lambda, k),
    }
}

/// Classify a raw gap `DS(w)/λ^|w|` against the achievable bounds.
pub fn clamp_gap<S: ExactScalar>(raw: S, lambda: &S, k: i64) -> GapValue<S> {
    let bound = max_ds(lambda, k);
    if raw >= bound {
        GapValue::Top
    } else if raw < -bound {
        GapValue::Bot
    } else {
        GapValue::Finite(raw)
    }
}

/// Gap of a finite word, computed incrementally.
pub fn gap_of_word<S: ExactScalar>(word: &[i64], lambda: &S, k: i64) -> GapValue<S> {
    word.iter()
        .fold(GapValue::zero(), |g, &c| gap_step(&g, c, lambda, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, Rational64};

    fn half<S: ExactScalar>() -> S {
        S::from_frac(1, 2)
    }

    #[test]
    fn ds_half_gaps_from_zero() {
        let l: Rational = half();
        assert_eq!(gap_of_word(&[], &l, 2), GapValue::zero());
        assert_eq!(gap_of_word(&[1], &l, 2), GapValue::Finite(Rational::from_int(2)));
        assert_eq!(gap_of_word(&[2], &l, 2), GapValue::Top);
        assert_eq!(gap_of_word(&[-2], &l, 2), GapValue::Finite(Rational::from_int(-4)));
        assert_eq!(gap_of_word(&[-2, 0], &l, 2), GapValue::Bot);
    }

    #[test]
    fn lasso_closed_form_matches_geometric_series() {
        let l: Rational = half();
        // (1,-1)^ω sums to 1 - 1/2 + 1/4 - ... = 2/3
        assert_eq!(ds_of_lasso(&[], &[1, -1], &l), Rational::from_frac(2, 3));
    }

    #[test]
    fn kernels_agree_across_scalar_types() {
        let word = [1, -2, 0, 2, -1, 1];
        let big: Rational = Rational::from_frac(2, 3);
        let small: Rational64 = Rational64::from_frac(2, 3);
        let a = ds_of_word(&word, &big);
        let b = ds_of_word(&word, &small);
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(
            gap_of_word(&word, &big, 1).to_string(),
            gap_of_word(&word, &small, 1).to_string()
        );
    }

    #[test]
    fn gap_order_matches_residual_inclusion() {
        let lo: GapValue<Rational64> = GapValue::Finite(Rational64::from_int(-4));
        let hi = GapValue::Finite(Rational64::from_int(2));
        assert!(GapValue::Bot < lo && lo < hi && hi < GapValue::Top);
    }
}
