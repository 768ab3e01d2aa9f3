mod common;

use common::{diagram, nonempty_diagram, quarter};
use persland::diagram::{bottleneck_bruteforce, bottleneck_distance, connectify, make_generic};
use persland::rational::{int, ratio};
use persland::PersistenceDiagram;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bottleneck_is_a_pseudometric(a in diagram(6), b in diagram(6), c in diagram(6)) {
        let ab = bottleneck_distance(&a, &b);
        prop_assert_eq!(&ab, &bottleneck_distance(&b, &a));
        prop_assert_eq!(bottleneck_distance(&a, &a), int(0));
        prop_assert!(ab <= bottleneck_distance(&a, &c) + bottleneck_distance(&c, &b));
    }

    #[test]
    fn bottleneck_matches_bruteforce(a in diagram(6), b in diagram(6)) {
        prop_assert_eq!(bottleneck_distance(&a, &b), bottleneck_bruteforce(&a, &b).unwrap());
    }

    #[test]
    fn bottleneck_ignores_point_order(a in diagram(8), b in diagram(8)) {
        let mut reversed = a.points().to_vec();
        reversed.reverse();
        let reversed = PersistenceDiagram::new(reversed);
        prop_assert_eq!(bottleneck_distance(&a, &b), bottleneck_distance(&reversed, &b));
    }

    #[test]
    fn connectify_connects_within_eps(d in nonempty_diagram(6), eps in quarter(0, 4)) {
        prop_assume!(eps > int(0));
        let c = connectify(&d, &eps).unwrap();
        prop_assert!(c.is_connected());
        prop_assert!(bottleneck_distance(&d, &c) < eps);
        prop_assert!(c.points().iter().take(d.len()).eq(d.points().iter()));
    }

    #[test]
    fn make_generic_moves_outwards_within_eps(d in diagram(8), eps_quarters in 1i64..8, seed: u64) {
        let eps = ratio(eps_quarters, 4);
        let g = make_generic(&d, &eps, seed).unwrap();
        prop_assert_eq!(g.len(), d.len());
        prop_assert!(g.is_generic());
        prop_assert!(bottleneck_distance(&d, &g) < eps);
        let half = &eps / int(2);
        for (p, q) in d.points().iter().zip(g.points()) {
            prop_assert!(q.birth <= p.birth && &p.birth - &q.birth <= half);
            prop_assert!(q.death >= p.death && &q.death - &p.death <= half);
        }
        if d.is_connected() {
            prop_assert!(g.is_connected());
        }
        prop_assert_eq!(make_generic(&d, &eps, seed).unwrap(), g);
    }

    #[test]
    fn text_format_round_trips(d in diagram(12)) {
        let back = PersistenceDiagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.to_text(), d.to_text());
    }
}
