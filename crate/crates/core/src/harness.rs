//! Seeded random instances and the property checks run over them.
//!
//! Every check returns a [`CheckReport`] whose last line is
//! `RESULT pass=<int> fail=<int> skip=<int>`. Identical configurations
//! produce identical reports.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{
    affine_apply, all_collinear, dual_point_to_line, dual_points, incident, AffineMap, Point,
};
use crate::rational::format_rational;
use crate::spectrum::{spectrum, stab_spectrum, vertical_class_count};
use crate::{Rational, RationalPoint};

pub const DEFAULT_COORDINATE_BOUND: i64 = 50;

/// Largest point set [`oracle_spectrum`] accepts.
pub const ORACLE_SIZE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("oracle accepts at most {cap} points, got {got}")]
    SizeCap { cap: usize, got: usize },
    #[error("duplicate point in oracle input")]
    Duplicate,
}

/// Parameters of a seeded batch of random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConfig {
    pub seed: u64,
    pub count: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// Bound on numerator magnitudes and denominators of coordinates.
    pub coordinate_bound: i64,
}

impl RandomConfig {
    pub fn new(seed: u64, count: usize, min_size: usize, max_size: usize) -> Self {
        RandomConfig {
            seed,
            count,
            min_size,
            max_size,
            coordinate_bound: DEFAULT_COORDINATE_BOUND,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub details: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            self.details.push(format!("FAIL {}", detail()));
        }
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    pub fn summary(&self) -> String {
        format!("RESULT pass={} fail={} skip={}", self.pass, self.fail, self.skip)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check {}", self.name)?;
        for d in &self.details {
            writeln!(f, "{d}")?;
        }
        write!(f, "{}", self.summary())
    }
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Distinct random points. Half of the instances (chosen by the generator)
/// use a small integer grid so that collinear triples, parallel chords and
/// shared abscissae are common.
pub fn random_point_set<R: Rng>(rng: &mut R, size: usize, bound: i64) -> Vec<RationalPoint> {
    let grid = rng.gen_bool(0.5);
    let mut pts: Vec<RationalPoint> = Vec::with_capacity(size);
    while pts.len() < size {
        let p = if grid {
            let g = 3.max(size as i64 / 2);
            Point {
                x: Rational::from_integer(rng.gen_range(-g..=g).into()),
                y: Rational::from_integer(rng.gen_range(-g..=g).into()),
            }
        } else {
            Point {
                x: random_rational(rng, bound),
                y: random_rational(rng, bound),
            }
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Random invertible map with small rational entries.
pub fn random_affine_map<R: Rng>(rng: &mut R, bound: i64) -> AffineMap<Rational> {
    loop {
        let mut r = || random_rational(rng, bound);
        let m = [[r(), r()], [r(), r()]];
        let t = [r(), r()];
        if let Ok(map) = AffineMap::new(m, t) {
            return map;
        }
    }
}

fn show(points: &[RationalPoint]) -> String {
    points
        .iter()
        .map(|p| format!("({}, {})", format_rational(&p.x), format_rational(&p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn size_for<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> usize {
    rng.gen_range(cfg.min_size..=cfg.max_size)
}

/// Symmetry of incidence under the duality on random pairs, plus
/// `engineered` pairs forced to satisfy `Q + A·P + B = 0`.
pub fn duality_check(cfg: &RandomConfig, engineered: usize) -> CheckReport {
    let mut rng = cfg.rng();
    let mut report = CheckReport::new("duality");
    let bound = cfg.coordinate_bound;
    let mut incident_pairs = 0usize;
    for trial in 0..cfg.count + engineered {
        let p = Point {
            x: random_rational(&mut rng, bound),
            y: random_rational(&mut rng, bound),
        };
        let a = random_rational(&mut rng, bound);
        let b = if trial >= cfg.count {
            -(&p.y + &a * &p.x)
        } else {
            random_rational(&mut rng, bound)
        };
        let q = Point { x: a, y: b };
        let forward = incident(&p, &dual_point_to_line(&q)).expect("rational domain");
        let backward = incident(&q, &dual_point_to_line(&p)).expect("rational domain");
        incident_pairs += usize::from(forward);
        let ok = forward == backward && (trial < cfg.count || forward);
        report.record(ok, || format!("trial {trial}: {} vs {}", show(&[p.clone()]), show(&[q.clone()])));
    }
    report
        .details
        .push(format!("incident pairs: {incident_pairs}"));
    report
}

/// `max(I(Q) ∖ {n}) ≥ ⌊(n+1)/2⌋` on `count` random non-collinear sets.
///
/// Collinear draws are discarded and counted as skips; drawing stops after
/// `20·count` attempts.
pub fn pinchasi_check(cfg: &RandomConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut report = CheckReport::new("pinchasi");
    let mut attempts = 0;
    while report.pass + report.fail < cfg.count && attempts < 20 * cfg.count {
        attempts += 1;
        let size = size_for(&mut rng, cfg);
        let pts = random_point_set(&mut rng, size, cfg.coordinate_bound);
        if all_collinear(&pts).expect("rational domain") {
            report.skip += 1;
            continue;
        }
        let (ok, best) = pinchasi_holds(&pts);
        report.record(ok, || {
            format!("attempt {attempts}: n={size} max={best:?} points {}", show(&pts))
        });
    }
    report
        .details
        .push(format!("collinear rejections: {}/{}", report.skip, attempts));
    report
}

/// Whether the bound holds, and `max(I(Q) ∖ {n})`.
pub fn pinchasi_holds<S: crate::Scalar>(points: &[Point<S>]) -> (bool, Option<usize>) {
    let n = points.len();
    let counts = spectrum(points).expect("distinct points").counts;
    let best = counts.iter().copied().filter(|&k| k != n).max();
    (best.is_some_and(|m| m >= (n + 1) / 2), best)
}

/// Spectra agree before and after a random invertible affine map.
pub fn affine_check(cfg: &RandomConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut report = CheckReport::new("affine");
    for trial in 0..cfg.count {
        let size = size_for(&mut rng, cfg);
        let pts = random_point_set(&mut rng, size, cfg.coordinate_bound);
        let map = random_affine_map(&mut rng, 9);
        let image = affine_apply(&map, &pts);
        let before = spectrum(&pts).expect("distinct").counts;
        let after = spectrum(&image).expect("affine maps are injective").counts;
        report.record(before == after, || {
            format!("trial {trial}: {before:?} vs {after:?} for {}", show(&pts))
        });
    }
    report
}

/// The spectrum engine against [`oracle_spectrum`].
pub fn oracle_check(cfg: &RandomConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut report = CheckReport::new("oracle");
    for trial in 0..cfg.count {
        let size = size_for(&mut rng, cfg);
        let pts = random_point_set(&mut rng, size, cfg.coordinate_bound);
        let engine = spectrum(&pts).expect("distinct").counts;
        let oracle = oracle_spectrum(&pts).expect("within cap");
        report.record(engine == oracle, || {
            format!("trial {trial}: engine {engine:?} oracle {oracle:?} for {}", show(&pts))
        });
    }
    report
}

/// Spectrum of a set against the stab counts of its dual family, adjoining
/// the vertical cover size when abscissae repeat.
pub fn transport_check(cfg: &RandomConfig) -> CheckReport {
    let mut rng = cfg.rng();
    let mut report = CheckReport::new("transport");
    let mut repeated_x = 0usize;
    for trial in 0..cfg.count {
        let size = size_for(&mut rng, cfg);
        let pts = random_point_set(&mut rng, size, cfg.coordinate_bound);
        let counts = spectrum(&pts).expect("distinct").counts;
        let mut stab = stab_spectrum(&dual_points(&pts)).expect("distinct lines");
        let vertical = vertical_class_count(&pts);
        if vertical < pts.len() {
            repeated_x += 1;
            stab.insert(vertical);
        }
        report.record(counts == stab, || {
            format!("trial {trial}: spectrum {counts:?} stab {stab:?} for {}", show(&pts))
        });
    }
    report
        .details
        .push(format!("sets with repeated abscissae: {repeated_x}"));
    report
}

/// Brute-force spectrum of a small rational set.
///
/// For every ordered pair `(i, j)` the points are split greedily into lines
/// parallel to `q_j − q_i`: point `l` joins the line through `k` when the
/// determinant of `k`, `k + (q_j − q_i)`, `l` with a column of ones vanishes.
/// Shares no code with the spectrum engine.
pub fn oracle_spectrum(points: &[RationalPoint]) -> Result<BTreeSet<usize>, HarnessError> {
    let n = points.len();
    if n > ORACLE_SIZE_CAP {
        return Err(HarnessError::SizeCap {
            cap: ORACLE_SIZE_CAP,
            got: n,
        });
    }
    for i in 0..n {
        for j in 0..i {
            if points[i].x == points[j].x && points[i].y == points[j].y {
                return Err(HarnessError::Duplicate);
            }
        }
    }
    let det3 = |r: [[&Rational; 3]; 3]| -> Rational {
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    };
    let one = Rational::from_integer(1.into());
    let mut counts = BTreeSet::new();
    if n > 0 {
        counts.insert(n);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = &points[j].x - &points[i].x;
            let dy = &points[j].y - &points[i].y;
            let mut assigned = vec![false; n];
            let mut lines = 0;
            for k in 0..n {
                if assigned[k] {
                    continue;
                }
                lines += 1;
                assigned[k] = true;
                let (kx, ky) = (&points[k].x, &points[k].y);
                let (sx, sy) = (kx + &dx, ky + &dy);
                for l in k + 1..n {
                    if assigned[l] {
                        continue;
                    }
                    let d = det3([
                        [kx, ky, &one],
                        [&sx, &sy, &one],
                        [&points[l].x, &points[l].y, &one],
                    ]);
                    if d.is_zero() {
                        assigned[l] = true;
                    }
                }
            }
            counts.insert(lines);
        }
    }
    Ok(counts)
}
