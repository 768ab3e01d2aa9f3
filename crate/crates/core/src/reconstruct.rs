//! Critical-point combinatorics and recovery of a diagram family from its
//! average landscape.
//!
//! The critical points of the landscape of `D` are the births, the deaths,
//! the midpoints `(a_j + b_j)/2`, and the midpoints `(a_k + b_j)/2` of
//! overlaps `a_j < a_k < b_j < b_k`. Each bar gives an *interval triple*
//! `(a_j, (a_j + b_j)/2, b_j)` and each overlap an *intersection triple*
//! `(a_k, (a_k + b_j)/2, b_j)`, both three-term arithmetic progressions.
//! When those are the only progressions among the critical points of an
//! average, the progression endpoints form a bipartite graph whose
//! components are the bipartite graphs of the individual diagrams.

use crate::diagram::{DiagramFamily, PersistenceDiagram, Point};
use crate::error::{Error, Result};
use crate::landscape::{landscape_of, Landscape};
use crate::rational::{common_denominator, int, Exact, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::ops::Add;

/// A three-term arithmetic progression `first < middle < last`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Progression {
    pub first: Rational,
    pub middle: Rational,
    pub last: Rational,
}

impl Progression {
    fn spanning(first: &Rational, last: &Rational) -> Self {
        Progression {
            first: first.clone(),
            middle: (first + last) / int(2),
            last: last.clone(),
        }
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            Exact(&self.first),
            Exact(&self.middle),
            Exact(&self.last)
        )
    }
}

/// `C(D)` with its interval and intersection triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCriticalSet {
    pub points: Vec<Rational>,
    pub interval_triples: Vec<Progression>,
    pub intersection_triples: Vec<Progression>,
}

impl LabeledCriticalSet {
    pub fn triples(&self) -> impl Iterator<Item = &Progression> {
        self.interval_triples.iter().chain(&self.intersection_triples)
    }
}

/// Pairs `(j, k)` of bars with `a_j < a_k < b_j < b_k`.
fn overlapping_pairs(points: &[Point]) -> Vec<(&Point, &Point)> {
    let mut pairs = Vec::new();
    for pj in points {
        for pk in points {
            if pj.birth < pk.birth && pk.birth < pj.death && pj.death < pk.death {
                pairs.push((pj, pk));
            }
        }
    }
    pairs
}

pub fn critical_set(d: &PersistenceDiagram) -> LabeledCriticalSet {
    let mut interval_triples: Vec<Progression> = d
        .points()
        .iter()
        .map(|p| Progression::spanning(&p.birth, &p.death))
        .collect();
    let mut intersection_triples: Vec<Progression> = overlapping_pairs(d.points())
        .into_iter()
        .map(|(pj, pk)| Progression::spanning(&pk.birth, &pj.death))
        .collect();
    interval_triples.sort();
    interval_triples.dedup();
    intersection_triples.sort();
    intersection_triples.dedup();

    let mut points: Vec<Rational> = interval_triples
        .iter()
        .flat_map(|p| [p.first.clone(), p.middle.clone(), p.last.clone()])
        .chain(intersection_triples.iter().map(|p| p.middle.clone()))
        .collect();
    points.sort();
    points.dedup();
    LabeledCriticalSet {
        points,
        interval_triples,
        intersection_triples,
    }
}

/// Births `U`, deaths `V`, and an edge `(a, b)` for every bar and every
/// overlap `a_j < a_k < b_j < b_k` (edge `(a_k, b_j)`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    pub births: BTreeSet<Rational>,
    pub deaths: BTreeSet<Rational>,
    pub edges: BTreeSet<(Rational, Rational)>,
}

impl BipartiteGraph {
    /// Whether the graph has a single component; the empty graph counts as
    /// connected.
    ///
    /// This is stronger than connectivity of the bar overlap graph: a bar
    /// nested inside another one shares no edge with it.
    pub fn is_connected(&self) -> bool {
        let vertices: Vec<&Rational> = self.births.iter().chain(&self.deaths).collect();
        if vertices.is_empty() {
            return true;
        }
        let index: HashMap<&Rational, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut sets = DisjointSets::new(vertices.len());
        for (u, v) in &self.edges {
            sets.union(index[u], index[v]);
        }
        (0..vertices.len()).all(|i| sets.find(i) == 0)
    }
}

pub fn bipartite_graph(d: &PersistenceDiagram) -> Result<BipartiteGraph> {
    if let Some(v) = d.genericity_witness() {
        return Err(Error::NotGeneric(format!("{} appears twice", Exact(&v))));
    }
    let mut g = BipartiteGraph::default();
    for p in d.points() {
        g.births.insert(p.birth.clone());
        g.deaths.insert(p.death.clone());
        g.edges.insert((p.birth.clone(), p.death.clone()));
    }
    for (pj, pk) in overlapping_pairs(d.points()) {
        g.edges.insert((pk.birth.clone(), pj.death.clone()));
    }
    Ok(g)
}

/// Pairs every birth with its largest neighbouring death.
pub fn recover_from_bipartite(g: &BipartiteGraph) -> Result<PersistenceDiagram> {
    let mut best: BTreeMap<&Rational, &Rational> = BTreeMap::new();
    for (u, v) in &g.edges {
        let slot = best.entry(u).or_insert(v);
        if v > *slot {
            *slot = v;
        }
    }
    g.births
        .iter()
        .map(|u| {
            let v = best.get(u).ok_or_else(|| Error::IsolatedVertex(u.clone()))?;
            Point::new(u.clone(), (*v).clone())
        })
        .collect::<Result<Vec<_>>>()
        .map(PersistenceDiagram::new)
}

fn progressions_by_sum<T>(values: &[T]) -> Vec<(usize, usize, usize)>
where
    T: Clone + Eq + Hash + for<'a> Add<&'a T, Output = T>,
{
    let doubled: HashMap<T, usize> = values
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone() + v, i))
        .collect();
    let mut found = Vec::new();
    for i in 0..values.len() {
        for j in i + 2..values.len() {
            if let Some(&m) = doubled.get(&(values[i].clone() + &values[j])) {
                found.push((i, m, j));
            }
        }
    }
    found
}

/// All three-term arithmetic progressions in a strictly increasing list,
/// as index triples ordered by `(first, last)`.
///
/// Values are moved onto a common integer grid first so the membership test
/// is a hash lookup on integer sums.
pub fn three_term_progressions(sorted: &[Rational]) -> Vec<(usize, usize, usize)> {
    let scale = common_denominator(sorted);
    let scaled: Vec<BigInt> = sorted
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    let limit: BigInt = BigInt::from(1u8) << 125usize;
    if scaled.iter().all(|v| v.magnitude() < limit.magnitude()) {
        let small: Vec<i128> = scaled.iter().map(|v| v.to_i128().expect("checked bound")).collect();
        progressions_by_sum(&small)
    } else {
        progressions_by_sum(&scaled)
    }
}

/// Which clause of arithmetic independence failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: a coordinate shared by two points of one diagram.
    NotGeneric { diagram: usize, value: Rational },
    /// Condition 2: a critical point of two different diagrams.
    SharedCriticalPoint {
        first: usize,
        second: usize,
        value: Rational,
    },
    /// Condition 3: a progression among the average's critical points that
    /// is not a labelled triple of any diagram.
    UnexplainedProgression(Progression),
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::NotGeneric { .. } => 1,
            Violation::SharedCriticalPoint { .. } => 2,
            Violation::UnexplainedProgression(_) => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotGeneric { diagram, value } => write!(
                f,
                "condition (1): diagram {diagram} is not generic, {} appears twice",
                Exact(value)
            ),
            Violation::SharedCriticalPoint { first, second, value } => write!(
                f,
                "condition (2): {} is a critical point of diagrams {first} and {second}",
                Exact(value)
            ),
            Violation::UnexplainedProgression(p) => write!(
                f,
                "condition (3): progression {p} is neither an interval nor an intersection triple"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub violation: Option<Violation>,
}

impl IndependenceReport {
    pub fn is_independent(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for IndependenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("arithmetically independent"),
            Some(v) => write!(f, "not arithmetically independent: {v}"),
        }
    }
}

/// Checks the three conditions in order and reports the first failure.
pub fn is_arithmetically_independent(family: &DiagramFamily) -> IndependenceReport {
    let fail = |v| IndependenceReport { violation: Some(v) };

    for (i, d) in family.diagrams.iter().enumerate() {
        if let Some(value) = d.genericity_witness() {
            return fail(Violation::NotGeneric { diagram: i, value });
        }
    }

    let sets: Vec<LabeledCriticalSet> = family.diagrams.iter().map(critical_set).collect();
    let mut owner: HashMap<&Rational, usize> = HashMap::new();
    for (i, set) in sets.iter().enumerate() {
        for x in &set.points {
            if let Some(&j) = owner.get(x) {
                return fail(Violation::SharedCriticalPoint {
                    first: j,
                    second: i,
                    value: x.clone(),
                });
            }
            owner.insert(x, i);
        }
    }

    let labeled: HashSet<(&Rational, &Rational)> = sets
        .iter()
        .flat_map(LabeledCriticalSet::triples)
        .map(|p| (&p.first, &p.last))
        .collect();
    let landscapes: Vec<Landscape> = family.diagrams.iter().map(landscape_of).collect();
    let critical = Landscape::average(&landscapes).critical_points();
    for (i, _, j) in three_term_progressions(&critical) {
        if !labeled.contains(&(&critical[i], &critical[j])) {
            return fail(Violation::UnexplainedProgression(Progression::spanning(
                &critical[i],
                &critical[j],
            )));
        }
    }
    IndependenceReport { violation: None }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Recovers the diagrams whose landscapes average (up to a positive
/// multiple) to `avg`, sorted by smallest birth.
///
/// Requires the family to be arithmetically independent with every
/// diagram's bipartite graph connected (see [`BipartiteGraph::is_connected`]).
/// The answer is verified by recomputing the average, so an input outside
/// those conditions yields [`Error::PreconditionViolated`] rather than a
/// wrong family.
pub fn reconstruct_from_average(avg: &Landscape) -> Result<Vec<PersistenceDiagram>> {
    let critical = avg.critical_points();
    let progressions = three_term_progressions(&critical);

    let firsts: BTreeSet<usize> = progressions.iter().map(|&(i, _, _)| i).collect();
    let lasts: BTreeSet<usize> = progressions.iter().map(|&(_, _, j)| j).collect();
    if let Some(&x) = firsts.intersection(&lasts).next() {
        return Err(Error::PreconditionViolated(format!(
            "{} is both the first and the last term of progressions",
            Exact(&critical[x])
        )));
    }

    let mut components = DisjointSets::new(critical.len());
    for &(i, _, j) in &progressions {
        components.union(i, j);
    }
    let mut graphs: BTreeMap<usize, BipartiteGraph> = BTreeMap::new();
    for &(i, _, j) in &progressions {
        let g = graphs.entry(components.find(i)).or_default();
        g.births.insert(critical[i].clone());
        g.deaths.insert(critical[j].clone());
        g.edges.insert((critical[i].clone(), critical[j].clone()));
    }

    let mut diagrams = Vec::with_capacity(graphs.len());
    for g in graphs.values() {
        let d = recover_from_bipartite(g).map_err(|e| {
            Error::PreconditionViolated(format!("component is not a diagram graph: {e}"))
        })?;
        if bipartite_graph(&d).ok().as_ref() != Some(g) {
            return Err(Error::PreconditionViolated(format!(
                "component recovered as {d} does not reproduce its bipartite graph"
            )));
        }
        diagrams.push(d);
    }
    diagrams.sort_by(|x, y| x.min_birth().cmp(&y.min_birth()));

    verify_average(avg, &diagrams)?;
    Ok(diagrams)
}

/// Checks that `avg` is a positive multiple of the sum of the landscapes.
fn verify_average(avg: &Landscape, diagrams: &[PersistenceDiagram]) -> Result<()> {
    let landscapes: Vec<Landscape> = diagrams.iter().map(landscape_of).collect();
    let terms: Vec<(Rational, &Landscape)> = landscapes.iter().map(|l| (int(1), l)).collect();
    let sum = Landscape::linear_combination(&terms)?;
    let matches = if sum.is_empty() || avg.is_empty() {
        sum.is_empty() && avg.is_empty()
    } else {
        let factor = avg.sup() / sum.sup();
        !factor.is_zero() && sum.scale(&factor)? == *avg
    };
    if matches {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "the {} recovered diagram(s) do not reproduce the average landscape",
            diagrams.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram_from_ints;
    use crate::rational::{parse_rational, ratio};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn diagram(pairs: &[(&str, &str)]) -> PersistenceDiagram {
        PersistenceDiagram::from_pairs(pairs.iter().map(|(b, d)| (q(b), q(d)))).unwrap()
    }

    fn prog(a: Rational, m: Rational, b: Rational) -> Progression {
        Progression {
            first: a,
            middle: m,
            last: b,
        }
    }

    #[test]
    fn critical_set_examples() {
        let c = critical_set(&diagram_from_ints(&[(0, 2)]));
        assert_eq!(c.points, vec![int(0), int(1), int(2)]);
        assert_eq!(c.interval_triples, vec![prog(int(0), int(1), int(2))]);
        assert!(c.intersection_triples.is_empty());

        let c = critical_set(&diagram_from_ints(&[(0, 2), (1, 3)]));
        assert_eq!(c.points, vec![int(0), int(1), ratio(3, 2), int(2), int(3)]);
        assert_eq!(
            c.interval_triples,
            vec![prog(int(0), int(1), int(2)), prog(int(1), int(2), int(3))]
        );
        assert_eq!(c.intersection_triples, vec![prog(int(1), ratio(3, 2), int(2))]);

        let c = critical_set(&diagram_from_ints(&[(0, 10), (4, 6)]));
        assert_eq!(c.points, vec![int(0), int(4), int(5), int(6), int(10)]);
        assert_eq!(c.interval_triples.len(), 2);
        assert!(c.intersection_triples.is_empty());
    }

    #[test]
    fn bipartite_graphs() {
        let g = bipartite_graph(&diagram_from_ints(&[(0, 3), (1, 5)])).unwrap();
        assert_eq!(g.births, [int(0), int(1)].into_iter().collect());
        assert_eq!(g.deaths, [int(3), int(5)].into_iter().collect());
        assert_eq!(
            g.edges,
            [(int(0), int(3)), (int(1), int(5)), (int(1), int(3))].into_iter().collect()
        );
        assert_eq!(recover_from_bipartite(&g).unwrap(), diagram_from_ints(&[(0, 3), (1, 5)]));

        let g = bipartite_graph(&diagram_from_ints(&[(0, 2)])).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(recover_from_bipartite(&g).unwrap(), diagram_from_ints(&[(0, 2)]));

        assert!(matches!(
            bipartite_graph(&diagram_from_ints(&[(0, 1), (1, 2)])),
            Err(Error::NotGeneric(_))
        ));

        let lonely = BipartiteGraph {
            births: [int(0)].into_iter().collect(),
            deaths: [int(2)].into_iter().collect(),
            edges: BTreeSet::new(),
        };
        assert!(matches!(recover_from_bipartite(&lonely), Err(Error::IsolatedVertex(_))));
    }

    #[test]
    fn nested_bars_disconnect_the_bipartite_graph() {
        let nested = diagram_from_ints(&[(0, 10), (4, 6)]);
        assert!(nested.is_connected());
        assert!(!bipartite_graph(&nested).unwrap().is_connected());
        assert!(bipartite_graph(&diagram_from_ints(&[(0, 3), (1, 5)])).unwrap().is_connected());
        assert!(!bipartite_graph(&diagram_from_ints(&[(0, 2), (4, 6)])).unwrap().is_connected());
        assert!(BipartiteGraph::default().is_connected());

        // the nested diagram is independent, but its landscape splits into
        // two components whose sum is a different landscape
        let l = landscape_of(&nested);
        assert!(check(vec![nested]).is_independent());
        assert!(matches!(reconstruct_from_average(&l), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn progressions() {
        let vals: Vec<Rational> = [0, 4, 8, 11, 12, 13].iter().map(|&v| int(v)).collect();
        assert_eq!(three_term_progressions(&vals), vec![(0, 1, 2), (1, 2, 4), (3, 4, 5)]);
        let vals = vec![int(0), ratio(1, 3), ratio(2, 3), int(5)];
        assert_eq!(three_term_progressions(&vals), vec![(0, 1, 2)]);
        assert!(three_term_progressions(&[]).is_empty());
    }

    #[test]
    fn progressions_with_huge_denominators() {
        let big = Rational::new(BigInt::from(1), BigInt::from(10).pow(60));
        let vals = vec![int(0), big.clone(), &big * int(2), int(1)];
        assert_eq!(three_term_progressions(&vals), vec![(0, 1, 2)]);
    }

    fn check(diagrams: Vec<PersistenceDiagram>) -> IndependenceReport {
        is_arithmetically_independent(&DiagramFamily::new(diagrams))
    }

    #[test]
    fn independence_negative_examples() {
        let r = check(vec![diagram_from_ints(&[(0, 1), (1, 2)])]);
        assert_eq!(r.violation, Some(Violation::NotGeneric { diagram: 0, value: int(1) }));

        let r = check(vec![diagram_from_ints(&[(0, 2)]), diagram_from_ints(&[(1, 5)])]);
        assert_eq!(
            r.violation,
            Some(Violation::SharedCriticalPoint { first: 0, second: 1, value: int(1) })
        );

        let r = check(vec![diagram_from_ints(&[(0, 1)]), diagram_from_ints(&[(2, 4)])]);
        assert_eq!(
            r.violation,
            Some(Violation::UnexplainedProgression(prog(int(0), int(1), int(2))))
        );

        let r = check(vec![diagram_from_ints(&[(0, 8)]), diagram_from_ints(&[(11, 13)])]);
        assert_eq!(
            r.violation,
            Some(Violation::UnexplainedProgression(prog(int(4), int(8), int(12))))
        );
        assert!(r.to_string().contains("(4, 8, 12)"));
    }

    #[test]
    fn independence_perturbed_examples() {
        for family in [
            vec![diagram(&[("0", "1.1"), ("1.01", "2.001")])],
            vec![diagram(&[("0", "2.1")]), diagram(&[("1.01", "5.001")])],
            vec![diagram(&[("0", "1.1")]), diagram(&[("2.01", "4.001")])],
            vec![diagram(&[("0", "8.1")]), diagram(&[("11.01", "13.001")])],
        ] {
            let r = check(family.clone());
            assert!(r.is_independent(), "{family:?}: {r}");
        }
    }

    #[test]
    fn reconstructs_independent_pair() {
        let d1 = diagram(&[("0", "81/10")]);
        let d2 = diagram(&[("1101/100", "13001/1000")]);
        let avg = Landscape::average(&[landscape_of(&d1), landscape_of(&d2)]);
        assert_eq!(reconstruct_from_average(&avg).unwrap(), vec![d1.clone(), d2.clone()]);
        // any positive multiple works
        let scaled = avg.scale(&ratio(7, 3)).unwrap();
        assert_eq!(reconstruct_from_average(&scaled).unwrap(), vec![d1, d2]);
    }

    #[test]
    fn reconstructs_single_connected_diagram() {
        let d = diagram(&[("0", "3.1"), ("1.01", "5.001"), ("2.0003", "7.00007")]);
        assert!(d.is_connected());
        assert!(check(vec![d.clone()]).is_independent());
        let l = landscape_of(&d);
        assert_eq!(reconstruct_from_average(&l).unwrap(), vec![d.clone()]);
        assert_eq!(crate::landscape::diagram_of(&l).unwrap(), d);
    }

    #[test]
    fn rejects_ambiguous_average() {
        let avg = Landscape::average(&[
            landscape_of(&diagram_from_ints(&[(0, 2)])),
            landscape_of(&diagram_from_ints(&[(4, 6)])),
        ]);
        assert!(matches!(
            reconstruct_from_average(&avg),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn empty_average_has_no_components() {
        assert!(reconstruct_from_average(&Landscape::empty()).unwrap().is_empty());
    }
}
