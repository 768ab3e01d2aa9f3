//! Persistence diagrams with exact coordinates.
//!
//! A diagram is a finite multiset of `(birth, death)` pairs with
//! `birth < death`. Point order is kept as given, but equality is multiset
//! equality.

mod bottleneck;
mod perturb;

pub use bottleneck::{bottleneck_bruteforce, bottleneck_distance, product_distance, BRUTEFORCE_LIMIT};
pub use perturb::{connectify, make_generic};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Exact, Rational};
use num_traits::Signed;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub birth: Rational,
    pub death: Rational,
}

impl Point {
    pub fn new(birth: Rational, death: Rational) -> Result<Self> {
        if birth >= death {
            return Err(Error::invalid_interval(&birth, &death));
        }
        Ok(Point { birth, death })
    }

    pub fn midpoint(&self) -> Rational {
        (&self.birth + &self.death) / Rational::from_integer(2.into())
    }

    /// Half the persistence, i.e. the height of the tent.
    pub fn half_persistence(&self) -> Rational {
        (&self.death - &self.birth) / Rational::from_integer(2.into())
    }

    /// Sup-norm distance between two points in the plane.
    pub fn sup_distance(&self, other: &Point) -> Rational {
        let db = (&self.birth - &other.birth).abs();
        let dd = (&self.death - &other.death).abs();
        db.max(dd)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Exact(&self.birth), Exact(&self.death))
    }
}

#[derive(Debug, Clone, Default)]
pub struct PersistenceDiagram {
    points: Vec<Point>,
}

impl PartialEq for PersistenceDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.points.len() == other.points.len() && self.sorted_points() == other.sorted_points()
    }
}

impl Eq for PersistenceDiagram {}

impl PersistenceDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(points: Vec<Point>) -> Self {
        PersistenceDiagram { points }
    }

    /// Builds a diagram from raw pairs, validating `birth < death`.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        pairs
            .into_iter()
            .map(|(b, d)| Point::new(b, d))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sorted_points(&self) -> Vec<Point> {
        let mut pts = self.points.clone();
        pts.sort();
        pts
    }

    pub fn min_birth(&self) -> Option<&Rational> {
        self.points.iter().map(|p| &p.birth).min()
    }

    pub fn max_death(&self) -> Option<&Rational> {
        self.points.iter().map(|p| &p.death).max()
    }

    /// Disjoint union of two diagrams.
    pub fn union(&self, other: &PersistenceDiagram) -> PersistenceDiagram {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PersistenceDiagram { points }
    }

    /// All coordinates sorted ascending (with repetition).
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut coords: Vec<Rational> = self
            .points
            .iter()
            .flat_map(|p| [p.birth.clone(), p.death.clone()])
            .collect();
        coords.sort();
        coords
    }

    /// A coordinate shared by two different points, if any.
    pub fn genericity_witness(&self) -> Option<Rational> {
        // birth < death within a point, so genericity is exactly
        // "all 2n coordinates are distinct"
        let coords = self.coordinates();
        coords.windows(2).find(|w| w[0] == w[1]).map(|w| w[0].clone())
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_witness().is_none()
    }

    /// Whether the overlap graph of the closed bars is connected.
    ///
    /// For closed intervals the overlap graph is connected exactly when the
    /// union of the bars is a single interval, which a sweep by birth
    /// detects directly.
    pub fn is_connected(&self) -> bool {
        let mut bars: Vec<&Point> = self.points.iter().collect();
        bars.sort_by(|x, y| x.birth.cmp(&y.birth));
        let mut iter = bars.into_iter();
        let Some(first) = iter.next() else {
            return true;
        };
        let mut reach = &first.death;
        for bar in iter {
            if bar.birth > *reach {
                return false;
            }
            if bar.death > *reach {
                reach = &bar.death;
            }
        }
        true
    }

    /// Parses the diagram text format: one `birth,death` pair per line,
    /// `#` comments, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (b, d) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(line_no, "expected `birth,death`"))?;
            if d.contains(',') {
                return Err(Error::parse(line_no, "expected exactly two fields"));
            }
            let birth = parse_rational(b).map_err(|e| Error::literal(line_no, e))?;
            let death = parse_rational(d).map_err(|e| Error::literal(line_no, e))?;
            if birth >= death {
                return Err(Error::parse(
                    line_no,
                    format!("birth {} is not below death {}", Exact(&birth), Exact(&death)),
                ));
            }
            points.push(Point { birth, death });
        }
        Ok(PersistenceDiagram { points })
    }

    pub fn to_text(&self) -> String {
        self.points
            .iter()
            .map(|p| format!("{},{}\n", Exact(&p.birth), Exact(&p.death)))
            .collect()
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered sequence of diagrams, compared slot by slot in the product
/// metric.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiagramFamily {
    pub diagrams: Vec<PersistenceDiagram>,
}

impl DiagramFamily {
    pub fn new(diagrams: Vec<PersistenceDiagram>) -> Self {
        DiagramFamily { diagrams }
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    /// The family as an unordered set of diagrams, in canonical order.
    pub fn as_sorted_set(&self) -> Vec<Vec<Point>> {
        let mut set: Vec<Vec<Point>> = self.diagrams.iter().map(|d| d.sorted_points()).collect();
        set.sort();
        set
    }
}

/// Shorthand for tests and generators: a diagram from small integer pairs.
pub fn diagram_from_ints(pairs: &[(i64, i64)]) -> PersistenceDiagram {
    PersistenceDiagram::from_pairs(
        pairs
            .iter()
            .map(|&(b, d)| (crate::rational::int(b), crate::rational::int(d))),
    )
    .expect("integer pairs must satisfy birth < death")
}
