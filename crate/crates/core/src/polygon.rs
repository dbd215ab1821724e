//! Regular polygons, optionally with their center, as exact point sets and
//! as a residue-class model of their chord directions.
//!
//! With vertices `q_i = w·ζⁱ` for `i ∈ Z_n`, the chord `{i, j}` has direction
//! angle `π(i + j)/n + π/2`, so two chords are parallel iff `i + j ≡ k + l
//! (mod n)`. Every count below is derived from that residue arithmetic alone;
//! the exact instantiation exists so the model can be checked against the
//! geometric predicates.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloElement, CyclotomicField};
use crate::error::PolygonError;
use crate::geometry::Point;
use crate::rational::{format_rational, ratio};
use crate::spectrum::vertical_class_count;
use crate::{CycloPoint, Rational};

/// A regular `n`-gon, with or without the center of its circumcircle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolygonConfig {
    pub n: usize,
    pub with_center: bool,
}

impl PolygonConfig {
    pub fn new(n: usize, with_center: bool) -> Result<Self, PolygonError> {
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        Ok(PolygonConfig { n, with_center })
    }

    pub fn plain(n: usize) -> Result<Self, PolygonError> {
        Self::new(n, false)
    }

    pub fn centered(n: usize) -> Result<Self, PolygonError> {
        Self::new(n, true)
    }

    pub fn point_count(&self) -> usize {
        self.n + usize::from(self.with_center)
    }
}

impl fmt::Display for PolygonConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.with_center {
            write!(f, "regular {}-gon with center", self.n)
        } else {
            write!(f, "regular {}-gon", self.n)
        }
    }
}

/// Direction class of the chords `{i, j}` with `i + j ≡ d (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChordClass {
    d: usize,
}

impl ChordClass {
    pub fn new(d: usize, n: usize) -> Result<Self, PolygonError> {
        if d >= n {
            return Err(PolygonError::InvalidResidue { residue: d, n });
        }
        Ok(ChordClass { d })
    }

    /// The class of chord `{i, j}`.
    pub fn of_chord(i: usize, j: usize, n: usize) -> Self {
        ChordClass { d: (i + j) % n }
    }

    pub fn residue(&self) -> usize {
        self.d
    }
}

/// Number of parallel lines in the chord direction `class` needed to cover
/// the configuration.
pub fn polygon_direction_count(cfg: &PolygonConfig, class: ChordClass) -> Result<usize, PolygonError> {
    let n = cfg.n;
    let d = class.d;
    if d >= n {
        return Err(PolygonError::InvalidResidue { residue: d, n });
    }
    let partner = |i: usize| (d + n - i) % n;

    // Vertex i lies on the chord line {i, d − i}, or alone on the tangent
    // line at i when 2i ≡ d. No third vertex joins: concyclic points are
    // never three on a line.
    let singletons = (0..n).filter(|&i| partner(i) == i).count();
    let pairs = (n - singletons) / 2;

    let center = if !cfg.with_center {
        0
    } else {
        // The center only lies on diameters, i.e. chords {i, i + n/2}.
        let on_diameter = n % 2 == 0 && (0..n).any(|i| partner(i) == (i + n / 2) % n);
        usize::from(!on_diameter)
    };
    Ok(pairs + singletons + center)
}

/// The spectrum of the configuration by enumerating all chord classes.
///
/// With an odd `n` and the center, the radius directions are parallel to no
/// chord and each merges only the center with one vertex, giving `n`.
pub fn polygon_spectrum_enumerated(cfg: &PolygonConfig) -> BTreeSet<usize> {
    let mut counts: BTreeSet<usize> = (0..cfg.n)
        .map(|d| {
            polygon_direction_count(cfg, ChordClass { d }).expect("residue in range")
        })
        .collect();
    if cfg.with_center && cfg.n % 2 == 1 {
        counts.insert(cfg.n);
    }
    counts.insert(cfg.point_count());
    counts
}

/// The four families of configurations that have a closed-form spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormCase {
    /// `n = 2k`: `{k, k+1, 2k}`.
    Even { k: usize },
    /// `n = 2k+1`: `{k+1, 2k+1}`.
    Odd { k: usize },
    /// `n = 4k+2` with center: `{2k+1, 2k+3, 4k+3}`.
    CenteredTwiceOdd { k: usize },
    /// `n = 4k` with center: `{2k+1, 4k+1}`.
    CenteredMultipleOfFour { k: usize },
}

impl ClosedFormCase {
    pub fn of(cfg: &PolygonConfig) -> Option<Self> {
        let n = cfg.n;
        match (cfg.with_center, n % 2, n % 4) {
            (false, 0, _) => Some(ClosedFormCase::Even { k: n / 2 }),
            (false, _, _) => Some(ClosedFormCase::Odd { k: n / 2 }),
            (true, _, 2) => Some(ClosedFormCase::CenteredTwiceOdd { k: n / 4 }),
            (true, _, 0) => Some(ClosedFormCase::CenteredMultipleOfFour { k: n / 4 }),
            (true, _, _) => None,
        }
    }

    pub fn spectrum(&self) -> BTreeSet<usize> {
        let v = match *self {
            ClosedFormCase::Even { k } => vec![k, k + 1, 2 * k],
            ClosedFormCase::Odd { k } => vec![k + 1, 2 * k + 1],
            ClosedFormCase::CenteredTwiceOdd { k } => vec![2 * k + 1, 2 * k + 3, 4 * k + 3],
            ClosedFormCase::CenteredMultipleOfFour { k } => vec![2 * k + 1, 4 * k + 1],
        };
        v.into_iter().collect()
    }
}

/// The set `{k, 2k+1}` sometimes quoted for odd polygons. It disagrees with
/// enumeration: for `n = 2k+1` every chord class has `k` pairs and one
/// tangent singleton, hence `k + 1` lines.
pub fn quoted_odd_form(k: usize) -> BTreeSet<usize> {
    [k, 2 * k + 1].into_iter().collect()
}

/// Note printed alongside odd-polygon spectra.
pub fn odd_form_note(k: usize) -> String {
    format!(
        "note: for n = 2k+1 = {} the spectrum is {{k+1, 2k+1}} = {:?}; the quoted form {{k, 2k+1}} = {:?} \
         is off by one (each chord class has k pairs plus one tangent vertex)",
        2 * k + 1,
        ClosedFormCase::Odd { k }.spectrum(),
        quoted_odd_form(k),
    )
}

/// The closed-form spectrum; odd polygons with center have none.
pub fn polygon_spectrum_closed_form(cfg: &PolygonConfig) -> Result<BTreeSet<usize>, PolygonError> {
    ClosedFormCase::of(cfg)
        .map(|c| c.spectrum())
        .ok_or(PolygonError::NoClosedForm)
}

/// A rotation `(c, s)` with rational `c² + s² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalRotation {
    c: Rational,
    s: Rational,
}

impl RationalRotation {
    pub fn new(c: Rational, s: Rational) -> Option<Self> {
        (&c * &c + &s * &s == Rational::one()).then_some(RationalRotation { c, s })
    }

    pub fn identity() -> Self {
        RationalRotation {
            c: Rational::one(),
            s: Rational::zero(),
        }
    }

    /// `((1 − t²)/(1 + t²), 2t/(1 + t²))`, the rotation by `2·atan(t)`.
    pub fn from_parameter(t: &Rational) -> Self {
        let t2 = t * t;
        let den = Rational::one() + &t2;
        RationalRotation {
            c: (Rational::one() - t2) / &den,
            s: (t * Rational::from_integer(BigInt::from(2))) / den,
        }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }
}

impl fmt::Display for RationalRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.c), format_rational(&self.s))
    }
}

/// `0` followed by the Calkin–Wilf sequence `1, 1/2, 2, 1/3, 3/2, 2/3, 3, …`,
/// which lists every positive rational exactly once.
pub fn rotation_parameters() -> impl Iterator<Item = Rational> {
    let first = std::iter::once(Rational::zero());
    let rest = std::iter::successors(Some(Rational::one()), |x| {
        let two_floor = x.floor() * Rational::from_integer(BigInt::from(2));
        Some((two_floor - x + Rational::one()).recip())
    });
    first.chain(rest)
}

/// Order of the cyclotomic field holding the coordinates of the `n`-gon:
/// `lcm(4, n)`, so that both ζₙ and the imaginary unit are available.
pub fn working_order(n: usize) -> usize {
    n.lcm(&4)
}

/// Exact coordinates: vertex `i` is `w·ζₙⁱ` with `w = c + s·i`, followed by
/// the center `(0, 0)` when requested.
pub fn instantiate_polygon(cfg: &PolygonConfig, rot: &RationalRotation) -> Vec<CycloPoint> {
    let m = working_order(cfg.n);
    let field = CyclotomicField::new(m).expect("positive order");
    let step = (m / cfg.n) as i64;
    let imag = CycloElement::zeta_pow(&field, (m / 4) as i64);
    let w = &CycloElement::from_rational(&field, &rot.c) + &imag.scale(&rot.s);
    let half = ratio(1, 2);
    let minus_half_i = imag.scale(&ratio(-1, 2));

    let mut points: Vec<CycloPoint> = (0..cfg.n as i64)
        .map(|i| {
            let v = &w * &CycloElement::zeta_pow(&field, i * step);
            let v_bar = v.conj();
            let x = (&v + &v_bar).scale(&half);
            let y = &(&v - &v_bar) * &minus_half_i;
            Point { x, y }
        })
        .collect();
    if cfg.with_center {
        points.push(Point {
            x: CycloElement::zero(&field),
            y: CycloElement::zero(&field),
        });
    }
    points
}

/// First rotation, in [`rotation_parameters`] order, that puts every point
/// of the configuration on its own vertical line.
///
/// Each pair of points shares an abscissa for at most two rotation angles
/// in `[0, π)`, and distinct parameters give distinct angles, so the search
/// ends.
pub fn choose_rotation(cfg: &PolygonConfig) -> RationalRotation {
    choose_rotation_with_parameter(cfg).1
}

/// [`choose_rotation`] together with the parameter `t` that produced it.
pub fn choose_rotation_with_parameter(cfg: &PolygonConfig) -> (Rational, RationalRotation) {
    rotation_parameters()
        .map(|t| {
            let rot = RationalRotation::from_parameter(&t);
            (t, rot)
        })
        .find(|(_, rot)| {
            let pts = instantiate_polygon(cfg, rot);
            vertical_class_count(&pts) == pts.len()
        })
        .expect("rotation search is unbounded")
}
