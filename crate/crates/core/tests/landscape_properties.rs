mod common;

use common::{diagram, probe_points, quarter};
use num_traits::Signed;
use persland::diagram::bottleneck_distance;
use persland::landscape::oracle::{diagram_by_rank_inclusion_exclusion, kmax_tent_value};
use persland::rational::{int, ratio};
use persland::{diagram_of, landscape_of, Landscape, PersistenceDiagram, Rational};
use proptest::prelude::*;

fn all_breakpoints(ls: &[&Landscape]) -> Vec<Rational> {
    ls.iter()
        .flat_map(|l| l.levels().iter().flat_map(|f| f.breakpoints().iter().map(|(t, _)| t.clone())))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inversion_round_trips(d in diagram(50)) {
        prop_assert_eq!(diagram_of(&landscape_of(&d)).unwrap(), d);
    }

    #[test]
    fn inversion_agrees_with_rank_oracle(d in diagram(6)) {
        let l = landscape_of(&d);
        prop_assert_eq!(diagram_by_rank_inclusion_exclusion(&l), d);
    }

    #[test]
    fn levels_are_monotone(d in diagram(12)) {
        let l = landscape_of(&d);
        for t in probe_points(all_breakpoints(&[&l])) {
            for k in 1..=l.depth() {
                prop_assert!(l.evaluate(k, &t) >= l.evaluate(k + 1, &t));
            }
        }
    }

    #[test]
    fn matches_kmax_of_tents(d in diagram(12), ts in prop::collection::vec(quarter(-12, 12), 1..20)) {
        let l = landscape_of(&d);
        for t in &ts {
            for k in 1..=d.len() + 1 {
                prop_assert_eq!(l.evaluate(k, t), kmax_tent_value(&d, k, t));
            }
        }
    }

    #[test]
    fn slopes_are_unit_and_canonical(d in diagram(12)) {
        let l = landscape_of(&d);
        let allowed = [int(-1), int(0), int(1)];
        for f in l.levels() {
            let slopes: Vec<Rational> = f.slopes().collect();
            prop_assert!(slopes.iter().all(|s| allowed.contains(s)));
            prop_assert!(slopes.windows(2).all(|w| w[0] != w[1]));
            prop_assert!(f.breakpoints().iter().all(|(_, v)| !v.is_negative()));
        }
    }

    #[test]
    fn combinations_bound_slopes(a in diagram(6), b in diagram(6), x in 0i64..8, y in 0i64..8) {
        let (x, y) = (ratio(x, 4), ratio(y, 4));
        let (la, lb) = (landscape_of(&a), landscape_of(&b));
        let c = Landscape::linear_combination(&[(x.clone(), &la), (y.clone(), &lb)]).unwrap();
        let bound = &x + &y;
        for f in c.levels() {
            prop_assert!(f.slopes().all(|s| s.abs() <= bound));
        }
        for t in probe_points(all_breakpoints(&[&la, &lb])) {
            for k in 1..=c.depth() {
                prop_assert_eq!(c.evaluate(k, &t), &x * la.evaluate(k, &t) + &y * lb.evaluate(k, &t));
            }
        }
    }

    #[test]
    fn stability(a in diagram(8), b in diagram(8)) {
        let (la, lb) = (landscape_of(&a), landscape_of(&b));
        let db = bottleneck_distance(&a, &b);
        for t in probe_points(all_breakpoints(&[&la, &lb])) {
            for k in 1..=la.depth().max(lb.depth()) {
                prop_assert!((la.evaluate(k, &t) - lb.evaluate(k, &t)).abs() <= db);
            }
        }
    }

    #[test]
    fn text_format_round_trips(d in diagram(12), x in 1i64..10) {
        let l = landscape_of(&d).scale(&ratio(x, 3)).unwrap();
        let text = l.to_text();
        let back = Landscape::parse(&text).unwrap();
        prop_assert_eq!(&back, &l);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn sample_grid_matches_evaluate(d in diagram(8), steps in 1usize..20) {
        let l = landscape_of(&d);
        let (lo, hi) = (int(-11), int(11));
        let grid = l.sample_grid(3, &lo, &hi, steps).unwrap();
        let h = (&hi - &lo) / Rational::from_integer(steps.into());
        for (k, row) in grid.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                let t = &lo + &h * Rational::from_integer(i.into());
                prop_assert_eq!(v, &l.evaluate(k + 1, &t));
            }
        }
    }

    #[test]
    fn landscape_ignores_point_order(d in diagram(12)) {
        let mut pts = d.points().to_vec();
        pts.reverse();
        prop_assert_eq!(landscape_of(&PersistenceDiagram::new(pts)), landscape_of(&d));
    }
}

#[test]
fn rejects_non_landscapes() {
    let l = Landscape::parse("PLSC 1\n1: 0:0 1:2 2:0\n").unwrap();
    assert!(diagram_of(&l).is_err());
    let lopsided = Landscape::parse("PLSC 1\n1: 0:0 1:1 3:0\n").unwrap();
    assert!(diagram_of(&lopsided).is_err());
}
