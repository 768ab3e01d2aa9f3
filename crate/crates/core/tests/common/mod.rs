#![allow(dead_code)]

use persland::rational::ratio;
use persland::{PersistenceDiagram, Point, Rational};
use proptest::prelude::*;

/// Rationals on a grid of quarters in `[lo, hi]`.
pub fn quarter(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo * 4..=hi * 4).prop_map(|n| ratio(n, 4))
}

pub fn point(lo: i64, hi: i64) -> impl Strategy<Value = Point> {
    (lo * 4..hi * 4, 1i64..=(hi - lo) * 4).prop_map(|(b, len)| Point {
        birth: ratio(b, 4),
        death: ratio(b + len, 4),
    })
}

pub fn diagram(max_points: usize) -> impl Strategy<Value = PersistenceDiagram> {
    prop::collection::vec(point(-10, 10), 0..=max_points).prop_map(PersistenceDiagram::new)
}

pub fn nonempty_diagram(max_points: usize) -> impl Strategy<Value = PersistenceDiagram> {
    prop::collection::vec(point(-10, 10), 1..=max_points).prop_map(PersistenceDiagram::new)
}

/// Diagrams whose coordinates are all distinct: the `2n` values are drawn
/// as a set and paired off.
pub fn generic_diagram(max_points: usize) -> impl Strategy<Value = PersistenceDiagram> {
    (1..=max_points)
        .prop_flat_map(|n| prop::collection::btree_set(-400i64..400, 2 * n))
        .prop_flat_map(|set| Just(set.into_iter().collect::<Vec<i64>>()).prop_shuffle())
        .prop_map(|values| {
            let points = values
                .chunks(2)
                .map(|c| Point {
                    birth: ratio(c[0].min(c[1]), 7),
                    death: ratio(c[0].max(c[1]), 7),
                })
                .collect();
            PersistenceDiagram::new(points)
        })
}

/// Every breakpoint of either landscape plus the midpoints between
/// consecutive ones, with one point beyond each end.
pub fn probe_points(mut ts: Vec<Rational>) -> Vec<Rational> {
    ts.sort();
    ts.dedup();
    let mut out: Vec<Rational> = ts
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / Rational::from_integer(2.into()))
        .collect();
    if let (Some(first), Some(last)) = (ts.first(), ts.last()) {
        out.push(first - Rational::from_integer(1.into()));
        out.push(last + Rational::from_integer(1.into()));
    }
    out.extend(ts);
    out
}
