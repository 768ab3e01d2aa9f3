//! Max-plus evaluation of landscape values.
//!
//! In the max-plus semiring `x ⊕ y = max(x, y)` and `x ⊙ y = x + y`, with
//! additive identity `-∞` and multiplicative identity `0`. The tent value is
//! the tropical rational expression `0 ⊕ t ⊙ b ⊙ (a ⊙ b ⊕ t²)^{-1}`, and
//! `λ_k(t) = σ_k ⊙ σ_{k-1}^{-1}` where `σ_k` is the `k`th elementary
//! symmetric max-plus polynomial of the tent values.

use crate::diagram::{PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::landscape::grid_points;
use crate::rational::{Exact, Rational};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An element of `ℚ ∪ {-∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TropicalValue {
    NegInfinity,
    Finite(Rational),
}

impl TropicalValue {
    /// The multiplicative identity `0`.
    pub fn one() -> Self {
        TropicalValue::Finite(Rational::zero())
    }

    /// `x ⊕ y = max(x, y)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `x ⊙ y = x + y`, absorbing at `-∞`.
    pub fn odot(&self, other: &Self) -> Self {
        match (self, other) {
            (TropicalValue::Finite(x), TropicalValue::Finite(y)) => TropicalValue::Finite(x + y),
            _ => TropicalValue::NegInfinity,
        }
    }

    /// `x^{-1} = -x`; `-∞` has no inverse.
    pub fn inverse(&self) -> Option<Self> {
        match self {
            TropicalValue::Finite(x) => Some(TropicalValue::Finite(-x)),
            TropicalValue::NegInfinity => None,
        }
    }

    /// `x^n`, i.e. `n·x`.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.odot(self))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropicalValue::Finite(x) => Some(x),
            TropicalValue::NegInfinity => None,
        }
    }

    /// Landscape semantics: `-∞` reads as zero.
    pub fn to_landscape_value(&self) -> Rational {
        self.finite().cloned().unwrap_or_else(Rational::zero)
    }
}

impl From<Rational> for TropicalValue {
    fn from(x: Rational) -> Self {
        TropicalValue::Finite(x)
    }
}

impl PartialOrd for TropicalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropicalValue::NegInfinity, TropicalValue::NegInfinity) => Ordering::Equal,
            (TropicalValue::NegInfinity, _) => Ordering::Less,
            (_, TropicalValue::NegInfinity) => Ordering::Greater,
            (TropicalValue::Finite(x), TropicalValue::Finite(y)) => x.cmp(y),
        }
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::NegInfinity => f.write_str("-inf"),
            TropicalValue::Finite(x) => write!(f, "{}", Exact(x)),
        }
    }
}

/// Tent value of `(a, b)` at `t`, using only `⊕`, `⊙` and inversion.
pub fn tropical_tent(t: &Rational, a: &Rational, b: &Rational) -> Result<TropicalValue> {
    if a >= b {
        return Err(Error::invalid_interval(a, b));
    }
    let (t, a, b) = (
        TropicalValue::from(t.clone()),
        TropicalValue::from(a.clone()),
        TropicalValue::from(b.clone()),
    );
    let denominator = a.odot(&b).oplus(&t.pow(2));
    let inv = denominator.inverse().expect("finite denominator");
    Ok(TropicalValue::one().oplus(&t.odot(&b).odot(&inv)))
}

/// `σ_k`: the tropical sum of all `k`-fold products, i.e. the sum of the `k`
/// largest values. `σ_0 = 0`; `σ_k = -∞` for `k` beyond the arity.
pub fn sigma_k(values: &[TropicalValue], k: usize) -> TropicalValue {
    if k > values.len() {
        return TropicalValue::NegInfinity;
    }
    let mut sorted: Vec<&TropicalValue> = values.iter().collect();
    sorted.sort_by(|x, y| y.cmp(x));
    sorted[..k]
        .iter()
        .fold(TropicalValue::one(), |acc, v| acc.odot(v))
}

fn tent_values(t: &Rational, points: &[Point]) -> Vec<TropicalValue> {
    points
        .iter()
        .map(|p| tropical_tent(t, &p.birth, &p.death).expect("diagram points satisfy birth < death"))
        .collect()
}

fn quotient(num: TropicalValue, den: TropicalValue) -> TropicalValue {
    match den.inverse() {
        Some(inv) => num.odot(&inv),
        None => TropicalValue::NegInfinity,
    }
}

/// `λ_{k,t} = σ_k ⊙ σ_{k-1}^{-1}` over the tent values of the diagram.
pub fn lambda_kt(k: usize, t: &Rational, d: &PersistenceDiagram) -> TropicalValue {
    lambda_kt_points(k, t, d.points())
}

/// [`lambda_kt`] over a raw point sequence.
pub fn lambda_kt_points(k: usize, t: &Rational, points: &[Point]) -> TropicalValue {
    if k == 0 {
        return TropicalValue::NegInfinity;
    }
    let values = tent_values(t, points);
    quotient(sigma_k(&values, k), sigma_k(&values, k - 1))
}

/// `λ_{k,t}` for `k = 1..=k_max` on `t = a, a + ε, …, a + 2mε`, with `-∞`
/// read as zero.
pub fn feature_grid(
    d: &PersistenceDiagram,
    k_max: usize,
    a: &Rational,
    eps: &Rational,
    m: usize,
) -> Result<Vec<Vec<Rational>>> {
    if k_max == 0 || m == 0 || !eps.is_positive() {
        return Err(Error::InvalidParameter(
            "feature grid needs K ≥ 1, m ≥ 1 and eps > 0".into(),
        ));
    }
    let ts = grid_points(a, eps, 2 * m);
    let mut grid = vec![Vec::with_capacity(ts.len()); k_max];
    for t in &ts {
        let values = tent_values(t, d.points());
        let sigmas: Vec<TropicalValue> = (0..=k_max).map(|k| sigma_k(&values, k)).collect();
        for k in 1..=k_max {
            let v = quotient(sigmas[k].clone(), sigmas[k - 1].clone());
            grid[k - 1].push(v.to_landscape_value());
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram_from_ints;
    use crate::landscape::landscape_of;
    use crate::rational::{int, ratio};

    fn fin(n: i64) -> TropicalValue {
        TropicalValue::Finite(int(n))
    }

    #[test]
    fn semiring_identities() {
        let x = fin(3);
        assert_eq!(x.oplus(&TropicalValue::NegInfinity), x);
        assert_eq!(x.odot(&TropicalValue::one()), x);
        assert_eq!(x.odot(&TropicalValue::NegInfinity), TropicalValue::NegInfinity);
        assert_eq!(x.odot(&x.inverse().unwrap()), TropicalValue::one());
        assert_eq!(TropicalValue::NegInfinity.inverse(), None);
        assert_eq!(x.pow(2), fin(6));
    }

    #[test]
    fn tent_examples() {
        assert_eq!(tropical_tent(&int(1), &int(0), &int(2)).unwrap(), fin(1));
        assert_eq!(tropical_tent(&int(5), &int(0), &int(2)).unwrap(), fin(0));
        assert_eq!(
            tropical_tent(&ratio(3, 2), &int(1), &int(3)).unwrap(),
            TropicalValue::Finite(ratio(1, 2))
        );
        assert!(tropical_tent(&int(0), &int(2), &int(2)).is_err());
    }

    #[test]
    fn sigma_examples() {
        let v = [fin(3), fin(1), fin(2)];
        assert_eq!(sigma_k(&v, 2), fin(5));
        assert_eq!(sigma_k(&v, 0), fin(0));
        assert_eq!(sigma_k(&[], 0), fin(0));
        assert_eq!(sigma_k(&v, 4), TropicalValue::NegInfinity);
    }

    #[test]
    fn lambda_examples() {
        let d = diagram_from_ints(&[(0, 2)]);
        assert_eq!(lambda_kt(1, &int(1), &d), fin(1));
        let d = diagram_from_ints(&[(0, 2), (1, 3)]);
        assert_eq!(lambda_kt(2, &ratio(3, 2), &d), TropicalValue::Finite(ratio(1, 2)));
        assert_eq!(
            lambda_kt(2, &ratio(3, 2), &d).to_landscape_value(),
            landscape_of(&d).evaluate(2, &ratio(3, 2))
        );
        assert_eq!(lambda_kt(3, &int(1), &d), TropicalValue::NegInfinity);
    }

    #[test]
    fn feature_grids() {
        let d = diagram_from_ints(&[(0, 2)]);
        assert_eq!(feature_grid(&d, 1, &int(0), &int(1), 1).unwrap(), vec![vec![int(0), int(1), int(0)]]);
        assert_eq!(
            feature_grid(&d, 2, &int(0), &int(1), 1).unwrap(),
            vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(0)]]
        );
        assert!(feature_grid(&d, 0, &int(0), &int(1), 1).is_err());
        assert!(feature_grid(&d, 1, &int(0), &int(0), 1).is_err());
        assert!(feature_grid(&d, 1, &int(0), &int(1), 0).is_err());

        let d = diagram_from_ints(&[(0, 4), (1, 3), (2, 6), (5, 9)]);
        let grid = feature_grid(&d, 3, &int(-1), &ratio(1, 2), 11).unwrap();
        let sampled = landscape_of(&d).sample_grid(3, &int(-1), &int(10), 22).unwrap();
        assert_eq!(grid, sampled);
    }
}
