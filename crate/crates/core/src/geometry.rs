//! Points, non-vertical lines and the duality between them.
//!
//! The point `(A, B)` corresponds to the line `y + A·x + B = 0`. Incidence is
//! symmetric under this map: `(P, Q)` lies on the line of `(A, B)` exactly
//! when `(A, B)` lies on the line of `(P, Q)`, since both say `Q + A·P + B = 0`.

use crate::error::GeometryError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    /// Builds a point, rejecting coordinates from different domains.
    pub fn new(x: S, y: S) -> Result<Self, GeometryError> {
        if !x.compatible(&y) {
            return Err(GeometryError::DomainMismatch);
        }
        Ok(Point { x, y })
    }

    fn compatible(&self, other: &Self) -> bool {
        self.x.compatible(&other.x)
    }

    /// Difference vector `self − other` as a direction candidate.
    fn minus(&self, other: &Self) -> (S, S) {
        (
            self.x.clone() - other.x.clone(),
            self.y.clone() - other.y.clone(),
        )
    }
}

/// The line `y + a·x + b = 0`. Vertical lines cannot be expressed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonVerticalLine<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> NonVerticalLine<S> {
    pub fn new(a: S, b: S) -> Result<Self, GeometryError> {
        if !a.compatible(&b) {
            return Err(GeometryError::DomainMismatch);
        }
        Ok(NonVerticalLine { a, b })
    }

    /// Height of the line over the abscissa `x`, i.e. `−(a·x + b)`.
    pub fn y_at(&self, x: &S) -> S {
        -(self.a.clone() * x.clone() + self.b.clone())
    }
}

/// A line direction up to nonzero scaling (so also up to sign).
///
/// Equality is the exact cross-product test; for rationals the stored
/// vector is additionally normalized to coprime integers with `dx > 0`, or
/// `(0, 1)` for the vertical direction.
#[derive(Debug, Clone)]
pub struct Direction<S> {
    dx: S,
    dy: S,
}

impl<S: Scalar> Direction<S> {
    pub fn new(dx: S, dy: S) -> Result<Self, GeometryError> {
        if !dx.compatible(&dy) {
            return Err(GeometryError::DomainMismatch);
        }
        if dx.is_exact_zero() && dy.is_exact_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        let (dx, dy) = S::normalize_direction(dx, dy);
        Ok(Direction { dx, dy })
    }

    pub fn dx(&self) -> &S {
        &self.dx
    }

    pub fn dy(&self) -> &S {
        &self.dy
    }

    pub fn is_vertical(&self) -> bool {
        self.dx.is_exact_zero()
    }

    /// `dx₁·dy₂ − dy₁·dx₂ = 0`.
    pub fn parallel_to(&self, other: &Self) -> bool {
        S::cross(&self.dx, &self.dy, &other.dx, &other.dy).is_exact_zero()
    }

    /// Whether the vector `(vx, vy)` points along this direction.
    pub fn contains_vector(&self, vx: &S, vy: &S) -> bool {
        S::cross(&self.dx, &self.dy, vx, vy).is_exact_zero()
    }
}

impl<S: Scalar> PartialEq for Direction<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dx.compatible(&other.dx) && self.parallel_to(other)
    }
}

/// `p ↦ m·p + t` with invertible `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<S> {
    m: [[S; 2]; 2],
    t: [S; 2],
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(m: [[S; 2]; 2], t: [S; 2]) -> Result<Self, GeometryError> {
        let all = [&m[0][0], &m[0][1], &m[1][0], &m[1][1], &t[0], &t[1]];
        if all.iter().any(|v| !v.compatible(all[0])) {
            return Err(GeometryError::DomainMismatch);
        }
        if S::cross(&m[0][0], &m[0][1], &m[1][0], &m[1][1]).is_exact_zero() {
            return Err(GeometryError::SingularMap);
        }
        Ok(AffineMap { m, t })
    }

    pub fn linear(m: [[S; 2]; 2]) -> Result<Self, GeometryError> {
        let zero = m[0][0].zero_like();
        Self::new(m, [zero.clone(), zero])
    }

    pub fn apply(&self, p: &Point<S>) -> Point<S> {
        let [[a, b], [c, d]] = &self.m;
        Point {
            x: a.clone() * p.x.clone() + b.clone() * p.y.clone() + self.t[0].clone(),
            y: c.clone() * p.x.clone() + d.clone() * p.y.clone() + self.t[1].clone(),
        }
    }
}

/// f(A, B): the point `(A, B)` becomes the line `y + A·x + B = 0`.
pub fn dual_point_to_line<S: Scalar>(p: &Point<S>) -> NonVerticalLine<S> {
    NonVerticalLine {
        a: p.x.clone(),
        b: p.y.clone(),
    }
}

/// Inverse of [`dual_point_to_line`].
pub fn dual_line_to_point<S: Scalar>(l: &NonVerticalLine<S>) -> Point<S> {
    Point {
        x: l.a.clone(),
        y: l.b.clone(),
    }
}

pub fn dual_points<S: Scalar>(points: &[Point<S>]) -> Vec<NonVerticalLine<S>> {
    points.iter().map(dual_point_to_line).collect()
}

pub fn dual_lines<S: Scalar>(lines: &[NonVerticalLine<S>]) -> Vec<Point<S>> {
    lines.iter().map(dual_line_to_point).collect()
}

/// `p.y + l.a·p.x + l.b = 0`, decided exactly.
pub fn incident<S: Scalar>(p: &Point<S>, l: &NonVerticalLine<S>) -> Result<bool, GeometryError> {
    if !p.x.compatible(&l.a) {
        return Err(GeometryError::DomainMismatch);
    }
    Ok((p.y.clone() + l.a.clone() * p.x.clone() + l.b.clone()).is_exact_zero())
}

/// Equal slopes. Identical lines count as parallel.
pub fn parallel<S: Scalar>(l1: &NonVerticalLine<S>, l2: &NonVerticalLine<S>) -> bool {
    l1.a.compatible(&l2.a) && (l1.a.clone() - l2.a.clone()).is_exact_zero()
}

/// Zero cross product of `q − p` and `r − p`.
pub fn collinear<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Result<bool, GeometryError> {
    if !p.compatible(q) || !p.compatible(r) {
        return Err(GeometryError::DomainMismatch);
    }
    let (ux, uy) = q.minus(p);
    let (vx, vy) = r.minus(p);
    Ok(S::cross(&ux, &uy, &vx, &vy).is_exact_zero())
}

/// Whether every point of the slice lies on one line.
pub fn all_collinear<S: Scalar>(points: &[Point<S>]) -> Result<bool, GeometryError> {
    let Some(first) = points.first() else {
        return Ok(true);
    };
    // Anchor on a second point distinct from the first.
    let Some(second) = points[1..].iter().find(|p| *p != first) else {
        return Ok(true);
    };
    for r in points {
        if !collinear(first, second, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether all lines of the family share a common point.
///
/// By the duality this holds exactly when the dual points are collinear on a
/// non-vertical line. A vertical common line of the dual points would mean
/// the lines are all parallel, which is reported as not concurrent.
pub fn concurrent_family<S: Scalar>(family: &[NonVerticalLine<S>]) -> Result<bool, GeometryError> {
    if family.len() < 2 {
        return Err(GeometryError::TooFew {
            needed: 2,
            got: family.len(),
        });
    }
    check_distinct_lines(family)?;
    let duals = dual_lines(family);
    if !all_collinear(&duals)? {
        return Ok(false);
    }
    // Dual points on one vertical line: pairwise parallel, never concurrent.
    Ok(!parallel(&family[0], &family[1]))
}

/// The common point of two non-parallel lines in homogeneous coordinates
/// `(X, Y, W)`, meaning `(X/W, Y/W)`. Computed without division.
pub fn intersection_homogeneous<S: Scalar>(
    l1: &NonVerticalLine<S>,
    l2: &NonVerticalLine<S>,
) -> Option<[S; 3]> {
    let w = l1.a.clone() - l2.a.clone();
    if w.is_exact_zero() {
        return None;
    }
    let x = l2.b.clone() - l1.b.clone();
    let y = S::cross(&l2.a, &l1.a, &l2.b, &l1.b);
    Some([x, y, w])
}

/// Image of every point under `m`.
pub fn affine_apply<S: Scalar>(m: &AffineMap<S>, points: &[Point<S>]) -> Vec<Point<S>> {
    points.iter().map(|p| m.apply(p)).collect()
}

/// Rejects duplicate points and mixed domains.
pub fn check_distinct_points<S: Scalar>(points: &[Point<S>]) -> Result<(), GeometryError> {
    for (i, p) in points.iter().enumerate() {
        if !p.compatible(&points[0]) {
            return Err(GeometryError::DomainMismatch);
        }
        for (j, q) in points[..i].iter().enumerate() {
            if p == q {
                return Err(GeometryError::DuplicatePoint(j, i));
            }
        }
    }
    Ok(())
}

pub fn check_distinct_lines<S: Scalar>(lines: &[NonVerticalLine<S>]) -> Result<(), GeometryError> {
    for (i, l) in lines.iter().enumerate() {
        if !l.a.compatible(&lines[0].a) {
            return Err(GeometryError::DomainMismatch);
        }
        for (j, m) in lines[..i].iter().enumerate() {
            if l == m {
                return Err(GeometryError::DuplicateLine(j, i));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{CycloElement, CyclotomicField};
    use crate::rational::ratio;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(ratio(x, 1), ratio(y, 1)).unwrap()
    }

    fn ln(a: i64, b: i64) -> NonVerticalLine<Rational> {
        NonVerticalLine::new(ratio(a, 1), ratio(b, 1)).unwrap()
    }

    #[test]
    fn duality_examples() {
        assert_eq!(dual_point_to_line(&pt(0, 0)), ln(0, 0));
        assert_eq!(dual_point_to_line(&pt(1, 2)), ln(1, 2));
        assert_eq!(dual_line_to_point(&ln(1, 2)), pt(1, 2));
        assert_eq!(dual_line_to_point(&dual_point_to_line(&pt(-3, 7))), pt(-3, 7));
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&pt(1, -3), &ln(1, 2)).unwrap());
        assert!(!incident(&pt(0, 0), &ln(1, 2)).unwrap());
        assert!(incident(&pt(1, 2), &dual_point_to_line(&pt(1, -3))).unwrap());
    }

    #[test]
    fn parallel_examples() {
        assert!(parallel(&ln(1, 2), &ln(1, 5)));
        assert!(!parallel(&ln(1, 2), &ln(2, 2)));
        let l1 = dual_point_to_line(&pt(4, -1));
        let l2 = dual_point_to_line(&pt(4, 9));
        assert!(parallel(&l1, &l2));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&pt(0, 0), &pt(1, 1), &pt(2, 2)).unwrap());
        assert!(!collinear(&pt(0, 0), &pt(1, 0), &pt(0, 1)).unwrap());
    }

    #[test]
    fn concurrency_examples() {
        // Duals of (0,0),(1,1),(2,2) all pass through (−1, 0).
        let fam = dual_points(&[pt(0, 0), pt(1, 1), pt(2, 2)]);
        assert!(concurrent_family(&fam).unwrap());
        for l in &fam {
            assert!(incident(&pt(-1, 0), l).unwrap());
        }
        let tri = dual_points(&[pt(0, 0), pt(1, 0), pt(0, 1)]);
        assert!(!concurrent_family(&tri).unwrap());
        assert!(concurrent_family(&[ln(1, 0), ln(2, 0)]).unwrap());
        assert!(!concurrent_family(&[ln(1, 0), ln(1, 3)]).unwrap());
        assert_eq!(
            concurrent_family(&[ln(1, 0)]),
            Err(GeometryError::TooFew { needed: 2, got: 1 })
        );
        assert_eq!(
            concurrent_family(&[ln(1, 0), ln(1, 0)]),
            Err(GeometryError::DuplicateLine(0, 1))
        );
    }

    #[test]
    fn homogeneous_intersection() {
        let [x, y, w] = intersection_homogeneous(&ln(1, 0), &ln(2, -3)).unwrap();
        // y + x = 0 and y + 2x − 3 = 0 meet at (3, −3).
        assert_eq!(x / w.clone(), ratio(3, 1));
        assert_eq!(y / w, ratio(-3, 1));
        assert!(intersection_homogeneous(&ln(1, 0), &ln(1, 1)).is_none());
    }

    #[test]
    fn rational_directions_are_canonical() {
        let d = Direction::new(ratio(-2, 3), ratio(4, 3)).unwrap();
        assert_eq!((d.dx().clone(), d.dy().clone()), (ratio(1, 1), ratio(-2, 1)));
        let v = Direction::new(ratio(0, 1), ratio(-5, 7)).unwrap();
        assert_eq!((v.dx().clone(), v.dy().clone()), (ratio(0, 1), ratio(1, 1)));
        assert!(v.is_vertical());
        assert_eq!(
            Direction::new(ratio(0, 1), ratio(0, 1)).unwrap_err(),
            GeometryError::ZeroDirection
        );
        assert_eq!(d, Direction::new(ratio(3, 1), ratio(-6, 1)).unwrap());
    }

    #[test]
    fn affine_examples() {
        let square = vec![pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)];
        let id = AffineMap::linear([
            [ratio(1, 1), ratio(0, 1)],
            [ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        assert_eq!(affine_apply(&id, &square), square);

        let shear = AffineMap::linear([
            [ratio(1, 1), ratio(1, 3)],
            [ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let sheared = affine_apply(&shear, &square);
        let expected = vec![
            pt(0, 0),
            pt(1, 0),
            Point::new(ratio(1, 3), ratio(1, 1)).unwrap(),
            Point::new(ratio(4, 3), ratio(1, 1)).unwrap(),
        ];
        assert_eq!(sheared, expected);

        let singular = AffineMap::linear([
            [ratio(1, 1), ratio(2, 1)],
            [ratio(2, 1), ratio(4, 1)],
        ]);
        assert_eq!(singular.unwrap_err(), GeometryError::SingularMap);
    }

    #[test]
    fn cyclotomic_domains_do_not_mix() {
        let f5 = CyclotomicField::new(5).unwrap();
        let f7 = CyclotomicField::new(7).unwrap();
        let a = CycloElement::zeta_pow(&f5, 1);
        let b = CycloElement::zeta_pow(&f7, 1);
        assert_eq!(
            Point::new(a.clone(), b.clone()).unwrap_err(),
            GeometryError::DomainMismatch
        );
        let p = Point::new(a.clone(), a.clone()).unwrap();
        let l = NonVerticalLine::new(b.clone(), b).unwrap();
        assert_eq!(incident(&p, &l), Err(GeometryError::DomainMismatch));
    }

    #[test]
    fn duplicates_are_reported() {
        assert_eq!(
            check_distinct_points(&[pt(0, 0), pt(1, 0), pt(0, 0)]),
            Err(GeometryError::DuplicatePoint(0, 2))
        );
        assert!(check_distinct_lines(&[ln(0, 0), ln(1, 0)]).is_ok());
    }
}
