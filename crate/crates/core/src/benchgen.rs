//! Diagram generators: the landscape-vs-bottleneck counterexample family,
//! seeded random diagrams, and random families that are certified connected
//! and arithmetically independent.

use crate::diagram::{connectify, make_generic, DiagramFamily, PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::reconstruct::{bipartite_graph, is_arithmetically_independent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of grid steps across `[lo, hi]` for random coordinates.
const RANDOM_GRID_STEPS: i64 = 10_000;
/// Denominator of the jitter grid used to break arithmetic coincidences.
const JITTER_DENOMINATOR: i64 = 1_000_000_000;
const MAX_JITTER_ROUNDS: usize = 64;
const MAX_DRAWS: usize = 1_000;

/// Two diagrams whose landscapes are at sup distance 1 while their
/// bottleneck distance is `2n + 1`.
///
/// `D_1` has bars `(-3n-1+2i, 3n-1+2i)` for `i = 1..=n` with their
/// reflections through 0; `D_2` has `(-3n+2i, 3n+2i)` for `i = 1..n` with
/// reflections, plus `(-3n, 3n)` and `(-n, n)`.
pub fn counterexample_pair(n: u32) -> Result<(PersistenceDiagram, PersistenceDiagram)> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let n = i64::from(n);
    let reflected = |b: i64, d: i64| [Point { birth: int(b), death: int(d) }, Point { birth: int(-d), death: int(-b) }];

    let d1 = (1..=n)
        .flat_map(|i| reflected(-3 * n - 1 + 2 * i, 3 * n - 1 + 2 * i))
        .collect();
    let mut d2: Vec<Point> = (1..n)
        .flat_map(|i| reflected(-3 * n + 2 * i, 3 * n + 2 * i))
        .collect();
    d2.push(Point { birth: int(-3 * n), death: int(3 * n) });
    d2.push(Point { birth: int(-n), death: int(n) });
    Ok((PersistenceDiagram::new(d1), PersistenceDiagram::new(d2)))
}

fn draw_diagram(rng: &mut ChaCha8Rng, count: usize, lo: &Rational, hi: &Rational) -> PersistenceDiagram {
    let step = (hi - lo) / int(RANDOM_GRID_STEPS);
    let points = (0..count)
        .map(|_| loop {
            let x = rng.gen_range(0..=RANDOM_GRID_STEPS);
            let y = rng.gen_range(0..=RANDOM_GRID_STEPS);
            if x != y {
                let (b, d) = (x.min(y), x.max(y));
                break Point {
                    birth: lo + &step * int(b),
                    death: lo + &step * int(d),
                };
            }
        })
        .collect();
    PersistenceDiagram::new(points)
}

/// `count` bars with endpoints on a uniform grid of `[lo, hi]`.
pub fn random_diagram(count: usize, lo: &Rational, hi: &Rational, seed: u64) -> Result<PersistenceDiagram> {
    if lo >= hi {
        return Err(Error::InvalidParameter("lo must be below hi".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(draw_diagram(&mut rng, count, lo, hi))
}

/// Moves every birth down and every death up by an independent amount
/// below `bound` drawn from a fine grid. Bars only grow, so connectivity
/// is kept.
fn jitter(d: &PersistenceDiagram, bound: &Rational, rng: &mut ChaCha8Rng) -> PersistenceDiagram {
    let unit = ratio(1, JITTER_DENOMINATOR);
    let steps = (bound / &unit).floor().to_integer();
    let steps: i64 = steps.try_into().unwrap_or(i64::MAX).max(1);
    let points = d
        .points()
        .iter()
        .map(|p| Point {
            birth: &p.birth - &unit * int(rng.gen_range(0..steps)),
            death: &p.death + &unit * int(rng.gen_range(0..steps)),
        })
        .collect();
    PersistenceDiagram::new(points)
}

fn bipartite_connected(d: &PersistenceDiagram) -> bool {
    bipartite_graph(d).is_ok_and(|g| g.is_connected())
}

/// One random diagram whose bipartite graph is connected.
fn draw_connected(rng: &mut ChaCha8Rng, count: usize, lo: &Rational, hi: &Rational) -> Result<PersistenceDiagram> {
    for _ in 0..MAX_DRAWS {
        let mut d = draw_diagram(rng, count, lo, hi);
        if !d.is_connected() {
            let span = d.max_death().expect("nonempty") - d.min_birth().expect("nonempty");
            d = connectify(&d, &span)?;
        }
        d = make_generic(&d, &ratio(1, 100), rng.gen())?;
        if bipartite_connected(&d) {
            return Ok(d);
        }
    }
    Err(Error::RetryCapExceeded(MAX_DRAWS))
}

/// `n` connected diagrams with `count` random bars each (plus any ladder
/// bars needed for connectivity), certified arithmetically independent.
///
/// Coordinates are drawn on a coarse grid of `[0, 100]` and disconnected
/// diagrams get a ladder. Nested bars share no bipartite edge, so draws
/// whose bipartite graph is disconnected are rejected. Repeated fine
/// jitter then removes arithmetic coincidences until the independence
/// checker accepts the family.
pub fn random_independent_family(n: usize, count: usize, seed: u64) -> Result<DiagramFamily> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidParameter("n and count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (int(0), int(100));
    let diagrams = (0..n)
        .map(|_| draw_connected(&mut rng, count, &lo, &hi))
        .collect::<Result<Vec<_>>>()?;

    let mut bound = ratio(1, 100);
    for _ in 0..MAX_JITTER_ROUNDS {
        let family = DiagramFamily::new(diagrams.iter().map(|d| jitter(d, &bound, &mut rng)).collect());
        if family.diagrams.iter().all(bipartite_connected)
            && is_arithmetically_independent(&family).is_independent()
        {
            return Ok(family);
        }
        bound /= int(2);
    }
    Err(Error::RetryCapExceeded(MAX_JITTER_ROUNDS))
}
