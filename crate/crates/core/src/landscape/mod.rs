//! Exact persistence landscapes.
//!
//! Level `k` of the landscape of a diagram is the pointwise `k`th largest
//! tent function, where the tent of `(a, b)` is `max(0, min(t - a, b - t))`:
//! zero outside `[a, b]`, peaking at the midpoint with height `(b - a) / 2`.

mod build;
mod invert;
mod pl;

pub use build::landscape_of;
pub use invert::diagram_of;
pub use pl::PiecewiseLinearFunction;

/// Slow, definition-level routes used to cross-check the fast ones.
pub mod oracle {
    pub use super::build::kmax_tent_value;
    pub use super::invert::{diagram_by_rank_inclusion_exclusion, rank_from_landscape};
}

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, Rational};
use num_traits::Zero;
use std::fmt;

/// Tent function of the bar `[a, b]`.
pub fn tent(a: &Rational, b: &Rational) -> Result<PiecewiseLinearFunction> {
    if a >= b {
        return Err(Error::invalid_interval(a, b));
    }
    let mid = (a + b) / int(2);
    let height = (b - a) / int(2);
    Ok(PiecewiseLinearFunction::from_sorted_samples(vec![
        (a.clone(), Rational::zero()),
        (mid, height),
        (b.clone(), Rational::zero()),
    ]))
}

/// A sequence of levels `λ_1 ≥ λ_2 ≥ …`; levels past the end are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Landscape {
    levels: Vec<PiecewiseLinearFunction>,
}

impl Landscape {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Wraps levels, dropping trailing zero levels. The caller is
    /// responsible for the levels being pointwise nonincreasing.
    pub fn from_levels(mut levels: Vec<PiecewiseLinearFunction>) -> Self {
        while levels.last().is_some_and(PiecewiseLinearFunction::is_zero) {
            levels.pop();
        }
        Landscape { levels }
    }

    pub fn levels(&self) -> &[PiecewiseLinearFunction] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `k` (1-indexed); `None` past the depth or for `k = 0`.
    pub fn level(&self, k: usize) -> Option<&PiecewiseLinearFunction> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    /// `λ_k(t)`, zero beyond the depth and outside the support.
    pub fn evaluate(&self, k: usize, t: &Rational) -> Rational {
        self.level(k).map_or_else(Rational::zero, |f| f.evaluate(t))
    }

    /// Abscissae where some level changes slope, sorted and deduplicated.
    pub fn critical_points(&self) -> Vec<Rational> {
        let refs: Vec<&PiecewiseLinearFunction> = self.levels.iter().collect();
        // canonical levels have slope changes at every breakpoint
        PiecewiseLinearFunction::merged_abscissae(&refs)
    }

    /// Largest value over all levels (the first level dominates).
    pub fn sup(&self) -> Rational {
        self.levels
            .first()
            .map_or_else(Rational::zero, PiecewiseLinearFunction::max_value)
    }

    /// Level-wise nonnegative combination `Σ c_i λ^(i)`.
    pub fn linear_combination(terms: &[(Rational, &Landscape)]) -> Result<Landscape> {
        if let Some((c, _)) = terms.iter().find(|(c, _)| c < &Rational::zero()) {
            return Err(Error::NegativeCoefficient(c.clone()));
        }
        let depth = terms.iter().map(|(_, l)| l.depth()).max().unwrap_or(0);
        let zero = PiecewiseLinearFunction::zero();
        let mut levels = Vec::with_capacity(depth);
        for k in 0..depth {
            let level_terms: Vec<(Rational, &PiecewiseLinearFunction)> = terms
                .iter()
                .map(|(c, l)| (c.clone(), l.levels.get(k).unwrap_or(&zero)))
                .collect();
            levels.push(PiecewiseLinearFunction::linear_combination(&level_terms)?);
        }
        Ok(Landscape::from_levels(levels))
    }

    pub fn scale(&self, c: &Rational) -> Result<Landscape> {
        Landscape::linear_combination(&[(c.clone(), self)])
    }

    /// Arithmetic mean of the landscapes; empty input gives the empty landscape.
    pub fn average(landscapes: &[Landscape]) -> Landscape {
        if landscapes.is_empty() {
            return Landscape::empty();
        }
        let weight = Rational::new(1.into(), landscapes.len().into());
        let terms: Vec<(Rational, &Landscape)> =
            landscapes.iter().map(|l| (weight.clone(), l)).collect();
        Landscape::linear_combination(&terms).expect("positive weights")
    }

    /// Values on the grid `t_min + i (t_max - t_min) / steps`, one row per level.
    pub fn sample_grid(
        &self,
        k_max: usize,
        t_min: &Rational,
        t_max: &Rational,
        steps: usize,
    ) -> Result<Vec<Vec<Rational>>> {
        if t_min >= t_max {
            return Err(Error::InvalidParameter("t_min must be below t_max".into()));
        }
        if steps == 0 || k_max == 0 {
            return Err(Error::InvalidParameter("k_max and steps must be positive".into()));
        }
        let ts = grid_points(t_min, &((t_max - t_min) / Rational::from_integer(steps.into())), steps);
        Ok((1..=k_max)
            .map(|k| ts.iter().map(|t| self.evaluate(k, t)).collect())
            .collect())
    }

    /// Parses the `PLSC 1` text format.
    pub fn parse(text: &str) -> Result<Landscape> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "PLSC 1")) => {}
            Some((n, _)) => return Err(Error::parse(n, "expected header `PLSC 1`")),
            None => return Err(Error::parse(1, "missing header `PLSC 1`")),
        }
        let mut levels = Vec::new();
        for (line_no, line) in lines {
            let (k, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, "expected `k: t:v ...`"))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad level index `{}`", k.trim())))?;
            if k != levels.len() + 1 {
                return Err(Error::parse(
                    line_no,
                    format!("expected level {}, found {k}", levels.len() + 1),
                ));
            }
            let mut points = Vec::new();
            for token in rest.split_whitespace() {
                let (t, v) = token
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line_no, format!("expected `t:v`, got `{token}`")))?;
                let t = parse_rational(t).map_err(|e| Error::literal(line_no, e))?;
                let v = parse_rational(v).map_err(|e| Error::literal(line_no, e))?;
                points.push((t, v));
            }
            let level = PiecewiseLinearFunction::new(points).map_err(|e| match e {
                Error::InvalidParameter(m) => Error::parse(line_no, m),
                other => other,
            })?;
            levels.push(level);
        }
        for (i, w) in levels.windows(2).enumerate() {
            if !pointwise_dominates(&w[0], &w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "level {} exceeds level {} somewhere",
                    i + 2,
                    i + 1
                )));
            }
        }
        Ok(Landscape::from_levels(levels))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("PLSC 1\n");
        for (i, level) in self.levels.iter().enumerate() {
            if level.is_zero() {
                out.push_str(&format!("{}:\n", i + 1));
            } else {
                out.push_str(&format!("{}: {}\n", i + 1, level));
            }
        }
        out
    }
}

/// `t0, t0 + h, …, t0 + steps·h`.
pub(crate) fn grid_points(t0: &Rational, h: &Rational, steps: usize) -> Vec<Rational> {
    (0..=steps)
        .map(|i| t0 + h * Rational::from_integer(i.into()))
        .collect()
}

/// Whether `f ≥ g` everywhere. Both are linear between merged breakpoints,
/// so checking those suffices.
pub(crate) fn pointwise_dominates(f: &PiecewiseLinearFunction, g: &PiecewiseLinearFunction) -> bool {
    PiecewiseLinearFunction::merged_abscissae(&[f, g])
        .iter()
        .all(|t| f.evaluate(t) >= g.evaluate(t))
}

impl fmt::Display for Landscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram_from_ints;
    use crate::rational::ratio;

    fn bps(f: &PiecewiseLinearFunction) -> Vec<(Rational, Rational)> {
        f.breakpoints().to_vec()
    }

    fn pts(list: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
        list.to_vec()
    }

    #[test]
    fn tents() {
        assert_eq!(
            bps(&tent(&int(0), &int(2)).unwrap()),
            pts(&[(int(0), int(0)), (int(1), int(1)), (int(2), int(0))])
        );
        assert_eq!(
            bps(&tent(&int(1), &int(3)).unwrap()),
            pts(&[(int(1), int(0)), (int(2), int(1)), (int(3), int(0))])
        );
        assert_eq!(
            bps(&tent(&int(0), &int(1)).unwrap()),
            pts(&[(int(0), int(0)), (ratio(1, 2), ratio(1, 2)), (int(1), int(0))])
        );
        assert!(tent(&int(1), &int(1)).is_err());
        assert!(tent(&int(2), &int(1)).is_err());
    }

    #[test]
    fn evaluation() {
        let l = landscape_of(&diagram_from_ints(&[(0, 2)]));
        assert_eq!(l.evaluate(1, &int(1)), int(1));
        assert_eq!(l.evaluate(2, &int(1)), int(0));
        assert_eq!(l.evaluate(0, &int(1)), int(0));
        let l = landscape_of(&diagram_from_ints(&[(0, 2), (1, 3)]));
        assert_eq!(l.evaluate(1, &ratio(3, 2)), ratio(1, 2));
    }

    #[test]
    fn critical_points_examples() {
        let l = landscape_of(&diagram_from_ints(&[(0, 2)]));
        assert_eq!(l.critical_points(), vec![int(0), int(1), int(2)]);
        let l = landscape_of(&diagram_from_ints(&[(0, 2), (1, 3)]));
        assert_eq!(
            l.critical_points(),
            vec![int(0), int(1), ratio(3, 2), int(2), int(3)]
        );
        assert!(Landscape::empty().critical_points().is_empty());
    }

    #[test]
    fn combinations() {
        let l = landscape_of(&diagram_from_ints(&[(0, 2), (1, 3)]));
        assert_eq!(Landscape::linear_combination(&[(int(1), &l)]).unwrap(), l);

        let a = landscape_of(&diagram_from_ints(&[(0, 2)]));
        let b = landscape_of(&diagram_from_ints(&[(4, 6)]));
        let avg = Landscape::linear_combination(&[(ratio(1, 2), &a), (ratio(1, 2), &b)]).unwrap();
        assert_eq!(avg.depth(), 1);
        assert_eq!(avg.evaluate(1, &int(1)), ratio(1, 2));
        assert_eq!(avg.evaluate(1, &int(5)), ratio(1, 2));

        // the average cannot tell {D1, D2} from {D1 ⊔ D2, ∅}
        let joint = landscape_of(&diagram_from_ints(&[(0, 2), (4, 6)]));
        assert_eq!(
            Landscape::average(&[a.clone(), b.clone()]),
            Landscape::average(&[joint, Landscape::empty()])
        );

        assert!(matches!(
            Landscape::linear_combination(&[(int(-1), &a)]),
            Err(Error::NegativeCoefficient(_))
        ));
        assert!(Landscape::linear_combination(&[(int(0), &a)]).unwrap().is_empty());
    }

    #[test]
    fn grids() {
        let l = landscape_of(&diagram_from_ints(&[(0, 2)]));
        assert_eq!(
            l.sample_grid(1, &int(0), &int(2), 2).unwrap(),
            vec![vec![int(0), int(1), int(0)]]
        );
        assert_eq!(
            l.sample_grid(2, &int(0), &int(2), 2).unwrap(),
            vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(0)]]
        );
        assert!(l.sample_grid(2, &int(2), &int(1), 3).is_err());
        assert!(l.sample_grid(2, &int(0), &int(1), 0).is_err());
    }

    #[test]
    fn text_format() {
        let l = landscape_of(&diagram_from_ints(&[(0, 2), (1, 3)]));
        let text = l.to_text();
        assert_eq!(text, "PLSC 1\n1: 0:0 1:1 3/2:1/2 2:1 3:0\n2: 1:0 3/2:1/2 2:0\n");
        assert_eq!(Landscape::parse(&text).unwrap(), l);
        assert_eq!(Landscape::parse("PLSC 1\n").unwrap(), Landscape::empty());

        assert!(matches!(Landscape::parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Landscape::parse("PLSC 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            Landscape::parse("PLSC 1\n2: 0:0 1:1 2:0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Landscape::parse("PLSC 1\n1: 0:0 1:1 2:1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Landscape::parse("PLSC 1\n1: 0:0 1:1 2:0\n2: 0:0 1:2 2:0\n").is_err());
    }
}
