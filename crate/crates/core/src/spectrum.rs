//! Direction-cover spectra of point sets and vertical stab spectra of line
//! families.
//!
//! For a finite set Q and a direction d, the parallel lines in direction d
//! that each meet Q form the unique minimal cover of Q in that direction.
//! The spectrum I(Q) is the set of sizes of these covers over all
//! directions. Only directions of chords of Q can merge points, so the
//! spectrum is the set of cover sizes over the finitely many chord
//! directions, together with |Q| for every other direction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GeometryError;
use crate::geometry::{check_distinct_lines, check_distinct_points, dual_lines, Direction, NonVerticalLine, Point};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

/// A cover of the point set by parallel lines. `groups` holds point indices,
/// one group per cover line, ordered by smallest index.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePartition<S: Scalar> {
    pub direction: Direction<S>,
    pub groups: Vec<Vec<usize>>,
}

impl<S: Scalar> LinePartition<S> {
    pub fn line_count(&self) -> usize {
        self.groups.len()
    }
}

/// How a count in the spectrum is achieved.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<S: Scalar> {
    pub partition: LinePartition<S>,
    /// Set for the count |Q|, achieved by any direction that is not a chord
    /// direction. The stored direction is one such direction.
    pub generic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<S: Scalar> {
    pub counts: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, Witness<S>>,
    /// Number of distinct x-coordinates, i.e. the vertical cover size.
    pub vertical_count: usize,
}

/// One parallelism class of chords.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionClass<S: Scalar> {
    pub direction: Direction<S>,
    /// Index pairs `(i, j)`, `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
}

/// Groups all chords `q_j − q_i` into parallelism classes.
///
/// Classes appear in order of their first pair. Each chord is compared
/// against one representative per class already found.
pub fn direction_classes<S: Scalar>(
    points: &[Point<S>],
) -> Result<Vec<DirectionClass<S>>, GeometryError> {
    check_distinct_points(points)?;
    let mut classes: Vec<DirectionClass<S>> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = points[j].x.clone() - points[i].x.clone();
            let dy = points[j].y.clone() - points[i].y.clone();
            match classes
                .iter_mut()
                .find(|c| c.direction.contains_vector(&dx, &dy))
            {
                Some(class) => class.pairs.push((i, j)),
                None => classes.push(DirectionClass {
                    direction: Direction::new(dx, dy)?,
                    pairs: vec![(i, j)],
                }),
            }
        }
    }
    Ok(classes)
}

/// One representative direction per parallelism class of chords.
pub fn pair_directions<S: Scalar>(points: &[Point<S>]) -> Result<Vec<Direction<S>>, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::TooFew {
            needed: 2,
            got: points.len(),
        });
    }
    Ok(direction_classes(points)?
        .into_iter()
        .map(|c| c.direction)
        .collect())
}

/// The minimal cover of `points` by lines in direction `d`: two points share
/// a line iff their difference is parallel to `d`.
pub fn lines_in_direction<S: Scalar>(
    points: &[Point<S>],
    d: &Direction<S>,
) -> Result<LinePartition<S>, GeometryError> {
    check_distinct_points(points)?;
    if let Some(p) = points.first() {
        if !p.x.compatible(d.dx()) {
            return Err(GeometryError::DomainMismatch);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let home = groups.iter_mut().find(|g| {
            let q = &points[g[0]];
            d.contains_vector(&(p.x.clone() - q.x.clone()), &(p.y.clone() - q.y.clone()))
        });
        match home {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    Ok(LinePartition {
        direction: d.clone(),
        groups,
    })
}

/// Cover of the point set induced by one chord class: the groups are the
/// connected components of the class's pairs.
fn class_partition<S: Scalar>(n: usize, class: &DirectionClass<S>) -> LinePartition<S> {
    let mut uf = UnionFind::new(n);
    for &(i, j) in &class.pairs {
        uf.union(i, j);
    }
    LinePartition {
        direction: class.direction.clone(),
        groups: uf.groups(),
    }
}

fn class_line_count<S: Scalar>(n: usize, class: &DirectionClass<S>) -> usize {
    let mut uf = UnionFind::new(n);
    for &(i, j) in &class.pairs {
        uf.union(i, j);
    }
    uf.components()
}

/// First direction of the form (0,1), (1,0), (1,1), (1,2), … that is not a
/// chord direction. Some candidate always qualifies since the classes are
/// finitely many and the candidates pairwise non-parallel.
fn generic_direction<S: Scalar>(sample: &S, classes: &[DirectionClass<S>]) -> Direction<S> {
    let zero = sample.zero_like();
    let one = sample.one_like();
    let mut candidates = [(zero.clone(), one.clone()), (one.clone(), zero)]
        .into_iter()
        .chain((1i64..).map(|k| (one.clone(), sample.rational_like(&crate::Rational::from_integer(k.into())))));
    loop {
        let (dx, dy) = candidates.next().expect("infinite candidate sequence");
        let d = Direction::new(dx, dy).expect("nonzero candidate");
        if classes.iter().all(|c| !c.direction.parallel_to(&d)) {
            return d;
        }
    }
}

/// The direction-cover spectrum I(Q) with one witness per count.
pub fn spectrum<S: Scalar>(points: &[Point<S>]) -> Result<SpectrumReport<S>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::Empty);
    }
    let classes = direction_classes(points)?;
    let n = points.len();

    let mut counts = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for class in &classes {
        let partition = class_partition(n, class);
        let k = partition.line_count();
        if counts.insert(k) {
            witnesses.insert(
                k,
                Witness {
                    partition,
                    generic: false,
                },
            );
        }
    }

    // A chord direction always merges its own pair, so n only arises here.
    let generic = generic_direction(&points[0].x, &classes);
    counts.insert(n);
    witnesses.insert(
        n,
        Witness {
            partition: LinePartition {
                direction: generic,
                groups: (0..n).map(|i| vec![i]).collect(),
            },
            generic: true,
        },
    );

    Ok(SpectrumReport {
        counts,
        witnesses,
        vertical_count: vertical_class_count(points),
    })
}

/// The set of sizes of `L ∩ ⋃F` over all vertical lines `L`.
///
/// Computed on the dual points: a vertical line `x = A` meets the lines of
/// `q` and `q'` in the same point iff `q' − q` is parallel to `(1, −A)`, so
/// the stab counts are the cover sizes of the dual set over its
/// non-vertical chord directions, plus |F| for a generic abscissa.
pub fn stab_spectrum<S: Scalar>(lines: &[NonVerticalLine<S>]) -> Result<BTreeSet<usize>, GeometryError> {
    if lines.is_empty() {
        return Err(GeometryError::Empty);
    }
    check_distinct_lines(lines)?;
    let duals = dual_lines(lines);
    let classes = direction_classes(&duals)?;
    let mut counts: BTreeSet<usize> = classes
        .iter()
        .filter(|c| !c.direction.is_vertical())
        .map(|c| class_line_count(duals.len(), c))
        .collect();
    counts.insert(lines.len());
    Ok(counts)
}

/// Number of distinct x-coordinates.
pub fn vertical_class_count<S: Scalar>(points: &[Point<S>]) -> usize {
    let mut reps: Vec<&S> = Vec::new();
    for p in points {
        if !reps.iter().any(|x| (p.x.clone() - (*x).clone()).is_exact_zero()) {
            reps.push(&p.x);
        }
    }
    reps.len()
}
