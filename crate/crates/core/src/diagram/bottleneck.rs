//! Exact bottleneck distance.
//!
//! The optimal cost is one of finitely many candidates: a pairwise sup
//! distance or a half-persistence. We sort the candidates, binary search
//! for the smallest feasible one, and test feasibility with a perfect
//! matching on the usual "diagram plus diagonal copies" bipartite graph.

use super::{DiagramFamily, PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;

/// Largest total point count accepted by [`bottleneck_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 12;

struct CostTable {
    /// `pair[i][j]` indexes the sup distance between `d1[i]` and `d2[j]`.
    pair: Vec<Vec<usize>>,
    left_diag: Vec<usize>,
    right_diag: Vec<usize>,
    values: Vec<Rational>,
}

impl CostTable {
    fn new(d1: &[Point], d2: &[Point]) -> Self {
        let mut values = vec![Rational::zero()];
        for p in d1 {
            values.push(p.half_persistence());
            for q in d2 {
                values.push(p.sup_distance(q));
            }
        }
        values.extend(d2.iter().map(Point::half_persistence));
        values.sort();
        values.dedup();
        let rank = |v: &Rational| values.binary_search(v).expect("candidate present");
        CostTable {
            pair: d1
                .iter()
                .map(|p| d2.iter().map(|q| rank(&p.sup_distance(q))).collect())
                .collect(),
            left_diag: d1.iter().map(|p| rank(&p.half_persistence())).collect(),
            right_diag: d2.iter().map(|q| rank(&q.half_persistence())).collect(),
            values,
        }
    }

    /// Adjacency of the threshold graph at candidate index `limit`.
    ///
    /// Left side: points of `d1`, then diagonal copies of `d2`.
    /// Right side: points of `d2`, then diagonal copies of `d1`.
    fn threshold_graph(&self, limit: usize) -> Vec<Vec<usize>> {
        let n = self.left_diag.len();
        let m = self.right_diag.len();
        let mut adj = vec![Vec::new(); n + m];
        for i in 0..n {
            for j in 0..m {
                if self.pair[i][j] <= limit {
                    adj[i].push(j);
                }
            }
            if self.left_diag[i] <= limit {
                adj[i].push(m + i);
            }
        }
        for j in 0..m {
            if self.right_diag[j] <= limit {
                adj[n + j].push(j);
            }
            // diagonal to diagonal is free
            adj[n + j].extend(m..m + n);
        }
        adj
    }
}

/// Maximum bipartite matching size by repeated augmenting paths.
fn max_matching(adj: &[Vec<usize>], right_size: usize) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => augment(w, adj, seen, match_right),
            };
            if free {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut match_right = vec![None; right_size];
    let mut matched = 0;
    let mut seen = vec![false; right_size];
    for u in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        if augment(u, adj, &mut seen, &mut match_right) {
            matched += 1;
        } else {
            // a left vertex that cannot be matched rules out a perfect matching
            return matched;
        }
    }
    matched
}

pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Rational {
    let (p1, p2) = (d1.points(), d2.points());
    let total = p1.len() + p2.len();
    if total == 0 {
        return Rational::zero();
    }
    let table = CostTable::new(p1, p2);
    let feasible = |limit: usize| max_matching(&table.threshold_graph(limit), total) == total;

    // the largest candidate is always feasible (everything to the diagonal
    // or matched within that cost)
    let (mut lo, mut hi) = (0, table.values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    table.values[lo].clone()
}

/// Exhaustive minimum over all partial matchings. Test oracle only.
pub fn bottleneck_bruteforce(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<Rational> {
    let size = d1.len() + d2.len();
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: BRUTEFORCE_LIMIT,
        });
    }

    fn search(
        i: usize,
        p1: &[Point],
        p2: &[Point],
        used: &mut Vec<bool>,
        cost: Rational,
        best: &mut Option<Rational>,
    ) {
        if i == p1.len() {
            let leftover = p2
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(q, _)| q.half_persistence())
                .fold(cost, |acc, h| acc.max(h));
            if best.as_ref().is_none_or(|b| leftover < *b) {
                *best = Some(leftover);
            }
            return;
        }
        // leave p1[i] unmatched
        let alone = cost.clone().max(p1[i].half_persistence());
        search(i + 1, p1, p2, used, alone, best);
        for j in 0..p2.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            let paired = cost.clone().max(p1[i].sup_distance(&p2[j]));
            search(i + 1, p1, p2, used, paired, best);
            used[j] = false;
        }
    }

    let mut best = None;
    let mut used = vec![false; d2.len()];
    search(0, d1.points(), d2.points(), &mut used, Rational::zero(), &mut best);
    Ok(best.unwrap_or_else(Rational::zero))
}

/// Product metric on equal-length families: the worst slot.
pub fn product_distance(f1: &DiagramFamily, f2: &DiagramFamily) -> Result<Rational> {
    if f1.len() != f2.len() {
        return Err(Error::LengthMismatch {
            left: f1.len(),
            right: f2.len(),
        });
    }
    Ok(f1
        .diagrams
        .iter()
        .zip(&f2.diagrams)
        .map(|(a, b)| bottleneck_distance(a, b))
        .fold(Rational::zero(), |acc, d| acc.max(d)))
}
