use crate::error::{Error, Result};
use crate::rational::{Exact, Rational};
use num_traits::{Signed, Zero};
use std::fmt;

/// A compactly supported, continuous, nonnegative piecewise-linear function
/// stored as its breakpoints.
///
/// The representation is canonical: abscissae strictly increase, the first
/// and last values are zero, and no breakpoint has equal slopes on both
/// sides (slope outside the support is zero). Two functions are equal
/// exactly when their breakpoint lists are equal. The zero function has no
/// breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct PiecewiseLinearFunction {
    breakpoints: Vec<(Rational, Rational)>,
}

fn collinear(p: &(Rational, Rational), q: &(Rational, Rational), r: &(Rational, Rational)) -> bool {
    (&q.1 - &p.1) * (&r.0 - &q.0) == (&r.1 - &q.1) * (&q.0 - &p.0)
}

impl PiecewiseLinearFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Validates and canonicalizes a breakpoint list.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidParameter(
                "breakpoint abscissae must strictly increase".into(),
            ));
        }
        if points.iter().any(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidParameter("values must be nonnegative".into()));
        }
        if let (Some(first), Some(last)) = (points.first(), points.last()) {
            if !first.1.is_zero() || !last.1.is_zero() {
                return Err(Error::InvalidParameter(
                    "first and last values must be zero".into(),
                ));
            }
        }
        Ok(Self::from_sorted_samples(points))
    }

    /// Canonicalizes strictly increasing samples whose end values are zero.
    pub(crate) fn from_sorted_samples(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        // zero stretches at the ends merge with the implicit zero outside
        let lead = out
            .windows(2)
            .take_while(|w| w[0].1.is_zero() && w[1].1.is_zero())
            .count();
        out.drain(..lead);
        while out.len() >= 2 && out[out.len() - 1].1.is_zero() && out[out.len() - 2].1.is_zero() {
            out.pop();
        }
        if out.len() == 1 {
            out.clear();
        }
        PiecewiseLinearFunction { breakpoints: out }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn support(&self) -> Option<(&Rational, &Rational)> {
        Some((&self.breakpoints.first()?.0, &self.breakpoints.last()?.0))
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        let bps = &self.breakpoints;
        match bps.binary_search_by(|(x, _)| x.cmp(t)) {
            Ok(i) => bps[i].1.clone(),
            Err(0) => Rational::zero(),
            Err(i) if i == bps.len() => Rational::zero(),
            Err(i) => {
                let (t0, v0) = &bps[i - 1];
                let (t1, v1) = &bps[i];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Value together with the left and right slopes at `t`.
    pub fn local(&self, t: &Rational) -> (Rational, Rational, Rational) {
        let bps = &self.breakpoints;
        let slope = |i: usize| -> Rational {
            if i == 0 || i >= bps.len() {
                Rational::zero()
            } else {
                (&bps[i].1 - &bps[i - 1].1) / (&bps[i].0 - &bps[i - 1].0)
            }
        };
        match bps.binary_search_by(|(x, _)| x.cmp(t)) {
            Ok(i) => (bps[i].1.clone(), slope(i), slope(i + 1)),
            Err(i) => {
                let s = slope(i);
                (self.evaluate(t), s.clone(), s)
            }
        }
    }

    /// Slopes of the pieces, left to right, excluding the zero tails.
    pub fn slopes(&self) -> impl Iterator<Item = Rational> + '_ {
        self.breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
    }

    pub fn max_value(&self) -> Rational {
        self.breakpoints
            .iter()
            .map(|(_, v)| v)
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonnegative combination `Σ c_i f_i`, exact.
    pub fn linear_combination(terms: &[(Rational, &PiecewiseLinearFunction)]) -> Result<Self> {
        if let Some((c, _)) = terms.iter().find(|(c, _)| c.is_negative()) {
            return Err(Error::NegativeCoefficient(c.clone()));
        }
        let mut ts: Vec<Rational> = terms
            .iter()
            .flat_map(|(_, f)| f.breakpoints.iter().map(|(t, _)| t.clone()))
            .collect();
        ts.sort();
        ts.dedup();
        let samples = ts
            .into_iter()
            .map(|t| {
                let v = terms
                    .iter()
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (c, f)| acc + c * f.evaluate(&t));
                (t, v)
            })
            .collect();
        Ok(Self::from_sorted_samples(samples))
    }

    /// Sorted union of the abscissae of several functions.
    pub fn merged_abscissae(functions: &[&PiecewiseLinearFunction]) -> Vec<Rational> {
        let mut ts: Vec<Rational> = functions
            .iter()
            .flat_map(|f| f.breakpoints.iter().map(|(t, _)| t.clone()))
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }
}

impl fmt::Display for PiecewiseLinearFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, v)) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", Exact(t), Exact(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pl(points: &[(i64, i64)]) -> PiecewiseLinearFunction {
        PiecewiseLinearFunction::new(points.iter().map(|&(t, v)| (int(t), int(v))).collect()).unwrap()
    }

    #[test]
    fn canonical_form_drops_collinear_points() {
        let f = pl(&[(-3, 0), (-1, 0), (0, 0), (1, 1), (2, 2), (4, 0), (5, 0), (6, 0), (7, 1), (8, 0), (9, 0)]);
        let expected: Vec<_> = [(0, 0), (2, 2), (4, 0), (6, 0), (7, 1), (8, 0)]
            .iter()
            .map(|&(t, v)| (int(t), int(v)))
            .collect();
        assert_eq!(f.breakpoints(), expected.as_slice());
        assert!(pl(&[(0, 0), (3, 0)]).is_zero());
        assert!(pl(&[(0, 0)]).is_zero());
    }

    #[test]
    fn rejects_invalid_breakpoints() {
        assert!(PiecewiseLinearFunction::new(vec![(int(1), int(0)), (int(1), int(0))]).is_err());
        assert!(PiecewiseLinearFunction::new(vec![(int(0), int(1)), (int(1), int(0))]).is_err());
        assert!(PiecewiseLinearFunction::new(vec![(int(0), int(0)), (int(1), int(-1)), (int(2), int(0))]).is_err());
    }

    #[test]
    fn evaluation_and_local_slopes() {
        let f = pl(&[(0, 0), (1, 1), (2, 0)]);
        assert_eq!(f.evaluate(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(f.evaluate(&int(5)), int(0));
        assert_eq!(f.evaluate(&int(-5)), int(0));
        assert_eq!(f.local(&int(1)), (int(1), int(1), int(-1)));
        assert_eq!(f.local(&int(0)), (int(0), int(0), int(1)));
        assert_eq!(f.local(&ratio(3, 2)), (ratio(1, 2), int(-1), int(-1)));
        assert_eq!(f.local(&int(9)), (int(0), int(0), int(0)));
    }

    #[test]
    fn combination_of_disjoint_tents() {
        let f = pl(&[(0, 0), (1, 1), (2, 0)]);
        let g = pl(&[(4, 0), (5, 1), (6, 0)]);
        let h = PiecewiseLinearFunction::linear_combination(&[(ratio(1, 2), &f), (ratio(1, 2), &g)]).unwrap();
        assert_eq!(h.evaluate(&int(1)), ratio(1, 2));
        assert_eq!(h.evaluate(&int(5)), ratio(1, 2));
        assert_eq!(h.evaluate(&int(3)), int(0));
        assert!(PiecewiseLinearFunction::linear_combination(&[(int(-1), &f)]).is_err());
        assert!(PiecewiseLinearFunction::linear_combination(&[(int(0), &f)]).unwrap().is_zero());
    }
}
