//! Small perturbations that make a diagram connected or generic while
//! staying within a prescribed bottleneck distance.

use super::{PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Resolution of the grid that perturbation magnitudes are drawn from.
const PERTURBATION_STEPS: i64 = 1 << 20;

/// Appends a ladder of short overlapping bars spanning the whole diagram.
///
/// Each ladder bar has half-persistence `(b - a) / N < eps / 2`, so the
/// result is within bottleneck distance `eps` of the input.
pub fn connectify(d: &PersistenceDiagram, eps: &Rational) -> Result<PersistenceDiagram> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let (Some(a), Some(b)) = (d.min_birth(), d.max_death()) else {
        return Err(Error::InvalidParameter("cannot connectify an empty diagram".into()));
    };
    let span = b - a;
    // smallest N with span / N < eps / 2
    let bound: BigInt = (int(2) * &span / eps).floor().to_integer();
    let n = (bound + BigInt::from(1)).max(BigInt::from(2));
    let step = &span / Rational::from_integer(n.clone());
    let count = n.to_i64().expect("ladder length fits in i64");

    let ladder = (0..=count).map(|k| Point {
        birth: a + &step * int(k - 1),
        death: a + &step * int(k + 1),
    });
    let mut points = d.points().to_vec();
    points.extend(ladder);
    Ok(PersistenceDiagram::new(points))
}

/// Moves births down and deaths up by at most `eps / 2` until all
/// coordinates are distinct. Already generic input is returned unchanged.
pub fn make_generic(d: &PersistenceDiagram, eps: &Rational, seed: u64) -> Result<PersistenceDiagram> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if d.is_generic() {
        return Ok(d.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = eps / int(2 * PERTURBATION_STEPS);
    let mut taken: BTreeSet<Rational> = BTreeSet::new();
    let mut points = Vec::with_capacity(d.len());

    for p in d.points() {
        let mut candidate = p.clone();
        // finitely many values are blocked, so a random grid draw escapes
        // them almost surely
        while taken.contains(&candidate.birth) || taken.contains(&candidate.death) {
            let da = rng.gen_range(0..=PERTURBATION_STEPS);
            let db = rng.gen_range(0..=PERTURBATION_STEPS);
            candidate = Point {
                birth: &p.birth - &unit * int(da),
                death: &p.death + &unit * int(db),
            };
        }
        taken.insert(candidate.birth.clone());
        taken.insert(candidate.death.clone());
        points.push(candidate);
    }
    Ok(PersistenceDiagram::new(points))
}
