use super::{Landscape, PiecewiseLinearFunction};
use crate::diagram::{PersistenceDiagram, Point};
use crate::rational::{common_denominator, int, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Reverse;
use std::ops::{Add, Sub};

fn tent_value(p: &Point, t: &Rational) -> Rational {
    let up = t - &p.birth;
    let down = &p.death - t;
    up.min(down).max(Rational::zero())
}

/// Coordinates the sweep can run on.
trait SweepValue: Clone + Ord + Zero + for<'a> Add<&'a Self, Output = Self> + for<'a> Sub<&'a Self, Output = Self> {
    fn half(&self) -> Self;
}

impl SweepValue for Rational {
    fn half(&self) -> Self {
        self / int(2)
    }
}

// exact only when every halved quantity is even, which the caller ensures
impl SweepValue for i128 {
    fn half(&self) -> Self {
        self / 2
    }
}

/// Coordinates larger than this fall back to rational arithmetic.
const I128_BOUND: i128 = 1 << 120;

/// The landscape of a diagram.
///
/// Events are the tent corners plus every crossing of a rising piece with a
/// falling piece. Between consecutive events no two tents swap order, so
/// each level is linear there and is determined by the sorted tent values
/// at the events.
///
/// The sweep runs on integers when the coordinates, scaled by twice their
/// common denominator, fit in `i128`; every event and tent value is then an
/// integer.
pub fn landscape_of(d: &PersistenceDiagram) -> Landscape {
    if d.is_empty() {
        return Landscape::empty();
    }
    let coords = d.coordinates();
    let scale: BigInt = common_denominator(&coords) * 2;
    let to_int = |x: &Rational| -> Option<i128> {
        let v = (x.numer() * (&scale / x.denom())).to_i128()?;
        (v.abs() < I128_BOUND).then_some(v)
    };
    let scaled: Option<Vec<(i128, i128)>> = d
        .points()
        .iter()
        .map(|p| Some((to_int(&p.birth)?, to_int(&p.death)?)))
        .collect();
    let levels = match scaled {
        Some(bars) => {
            let back = |x: i128| Rational::new(BigInt::from(x), scale.clone());
            sweep(bars)
                .into_iter()
                .map(|level| level.into_iter().map(|(t, v)| (back(t), back(v))).collect())
                .collect()
        }
        None => sweep(d.points().iter().map(|p| (p.birth.clone(), p.death.clone())).collect()),
    };
    Landscape::from_levels(
        levels
            .into_iter()
            .map(PiecewiseLinearFunction::from_sorted_samples)
            .collect(),
    )
}

/// Samples of every level at every event, with points inside linear
/// stretches dropped. All pieces have slope -1, 0 or 1, so two pieces are
/// collinear exactly when their rises have the same sign.
fn sweep<T: SweepValue>(mut bars: Vec<(T, T)>) -> Vec<Vec<(T, T)>> {
    bars.sort_by(|x, y| x.0.cmp(&y.0));

    let mut events: Vec<T> = Vec::with_capacity(3 * bars.len());
    for (b, d) in &bars {
        events.push(b.clone());
        events.push((b.clone() + d).half());
        events.push(d.clone());
    }
    // rising piece of `up` meets falling piece of `down` at (a_up + b_down)/2
    // exactly when a_down ≤ a_up ≤ b_down ≤ b_up
    for (i, up) in bars.iter().enumerate() {
        let crossing = |down: &(T, T)| down.1 >= up.0 && down.1 <= up.1;
        for down in &bars[..i] {
            if crossing(down) {
                events.push((up.0.clone() + &down.1).half());
            }
        }
        for down in bars[i + 1..].iter().take_while(|down| down.0 <= up.0) {
            if crossing(down) {
                events.push((up.0.clone() + &down.1).half());
            }
        }
    }
    events.sort();
    events.dedup();

    let rise = |a: &(T, T), b: &(T, T)| b.1.cmp(&a.1);
    let mut samples: Vec<Vec<(T, T)>> = Vec::new();
    let mut values: Vec<T> = Vec::with_capacity(bars.len());
    for (idx, t) in events.iter().enumerate() {
        values.clear();
        // bars are sorted by birth, so the active prefix ends at the first
        // birth ≥ t
        let end = bars.partition_point(|p| p.0 < *t);
        values.extend(
            bars[..end]
                .iter()
                .filter(|p| p.1 > *t)
                .map(|p| (t.clone() - &p.0).min(p.1.clone() - t)),
        );
        values.sort_by(|x, y| y.cmp(x));
        if values.len() > samples.len() {
            // a new level was zero at the previous event
            let start = match idx {
                0 => Vec::new(),
                _ => vec![(events[idx - 1].clone(), T::zero())],
            };
            samples.resize(values.len(), start);
        }
        for (k, level) in samples.iter_mut().enumerate() {
            let p = (t.clone(), values.get(k).cloned().unwrap_or_else(T::zero));
            let n = level.len();
            if n >= 2 && rise(&level[n - 2], &level[n - 1]) == rise(&level[n - 1], &p) {
                level.pop();
            }
            level.push(p);
        }
    }
    samples
}

/// kth largest tent value at `t`, straight from the definition. Used as an
/// oracle in tests.
pub fn kmax_tent_value(d: &PersistenceDiagram, k: usize, t: &Rational) -> Rational {
    let mut values: Vec<Rational> = d.points().iter().map(|p| tent_value(p, t)).collect();
    values.sort_by_key(|v| Reverse(v.clone()));
    k.checked_sub(1)
        .and_then(|i| values.get(i).cloned())
        .unwrap_or_else(Rational::zero)
}
