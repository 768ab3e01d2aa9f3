use super::{landscape_of, Landscape};
use crate::diagram::{PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::rational::{int, Exact, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Recovers the unique diagram whose landscape is `l`.
///
/// Every bar peaks at `(m, h)` with `m` a breakpoint of some level. At such
/// an abscissa, take the block of levels whose value is exactly `h`: near
/// `m` they are carried by the tents through `(m, h)`, which rise on both
/// sides, fall on both sides, or peak. Rising-on-the-left levels count
/// rising tents and peaks, falling-on-the-right levels count peaks and
/// falling tents, so
///
/// `peaks = #(left slope +1) + #(right slope -1) - block size`.
///
/// The result is checked by recomputing its landscape.
pub fn diagram_of(l: &Landscape) -> Result<PersistenceDiagram> {
    let one = Rational::one();
    for (k, level) in l.levels().iter().enumerate() {
        if let Some(s) = level.slopes().find(|s| s.abs() != one && !s.is_zero()) {
            return Err(Error::NotADiagramLandscape(format!(
                "level {} has slope {}",
                k + 1,
                Exact(&s)
            )));
        }
    }

    // levels without a breakpoint at t pass straight through (slope ±1 on
    // both sides) and add nothing to the count, so only breakpoints matter
    let mut counts: BTreeMap<(Rational, Rational), i64> = BTreeMap::new();
    for level in l.levels() {
        let bps = level.breakpoints();
        for i in 1..bps.len().saturating_sub(1) {
            let (t, h) = &bps[i];
            if !h.is_positive() {
                continue;
            }
            let left = (h - &bps[i - 1].1) / (t - &bps[i - 1].0);
            let right = (&bps[i + 1].1 - h) / (&bps[i + 1].0 - t);
            let net = i64::from(left == one) + i64::from(right == -&one) - 1;
            *counts.entry((t.clone(), h.clone())).or_default() += net;
        }
    }

    let mut points = Vec::new();
    for ((t, height), peaks) in counts {
        if peaks < 0 {
            return Err(Error::NotADiagramLandscape(format!(
                "negative multiplicity at t = {}",
                Exact(&t)
            )));
        }
        for _ in 0..peaks {
            points.push(Point {
                birth: &t - &height,
                death: &t + &height,
            });
        }
    }

    let d = PersistenceDiagram::new(points);
    if landscape_of(&d) != *l {
        return Err(Error::NotADiagramLandscape(
            "recovered diagram does not reproduce the landscape".into(),
        ));
    }
    Ok(d)
}

/// Number of bars containing `[x, y]`, read off the landscape: the bars
/// containing `[x, y]` are those whose tent reaches `(y - x)/2` at the
/// midpoint.
pub fn rank_from_landscape(l: &Landscape, x: &Rational, y: &Rational) -> usize {
    let mid = (x + y) / int(2);
    let half = (y - x) / int(2);
    l.levels()
        .iter()
        .take_while(|f| f.evaluate(&mid) >= half)
        .count()
}

/// Inversion by inclusion–exclusion of the rank function over a candidate
/// grid. Quadratic in the grid size, so only practical for small inputs;
/// kept as an independent cross-check of [`diagram_of`].
pub fn diagram_by_rank_inclusion_exclusion(l: &Landscape) -> PersistenceDiagram {
    let mut grid: Vec<Rational> = Vec::new();
    for f in l.levels() {
        for (t, _) in f.breakpoints() {
            for g in l.levels() {
                let v = g.evaluate(t);
                grid.push(t - &v);
                grid.push(t + &v);
            }
        }
    }
    grid.sort();
    grid.dedup();
    if grid.len() < 2 {
        return PersistenceDiagram::empty();
    }
    let delta = grid
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least two grid values")
        / int(2);

    let rank = |x: &Rational, y: &Rational| rank_from_landscape(l, x, y) as i64;
    let mut points = Vec::new();
    for (i, a) in grid.iter().enumerate() {
        for b in &grid[i + 1..] {
            let (a_lo, b_hi) = (a - &delta, b + &delta);
            let mult = rank(a, b) - rank(&a_lo, b) - rank(a, &b_hi) + rank(&a_lo, &b_hi);
            for _ in 0..mult.to_usize().unwrap_or(0) {
                points.push(Point {
                    birth: a.clone(),
                    death: b.clone(),
                });
            }
        }
    }
    PersistenceDiagram::new(points)
}
