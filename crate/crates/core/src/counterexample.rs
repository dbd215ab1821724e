//! Line families that no vertical line meets in exactly n − 1 or n − 2
//! points, built as duals of regular polygons, and their certificates.
//!
//! For a point set Q with pairwise distinct abscissae, the vertical stab
//! counts of the dual family equal the spectrum I(Q). A regular n-gon with
//! n ≥ 7 has spectrum {k, k+1, n} (n = 2k) or {k+1, n} (n = 2k+1), which
//! avoids n − 1 and n − 2; distinct abscissae make the dual lines pairwise
//! non-parallel, and no three concyclic points are collinear, so the family
//! is not concurrent.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{CounterexampleError, GeometryError};
use crate::geometry::{check_distinct_lines, concurrent_family, dual_points, intersection_homogeneous, parallel, NonVerticalLine};
use crate::polygon::{
    choose_rotation_with_parameter, instantiate_polygon, polygon_spectrum_enumerated, working_order,
    PolygonConfig, RationalRotation,
};
use crate::scalar::Scalar;
use crate::spectrum::stab_spectrum;
use crate::{CycloElement, CycloLine, Rational};

/// Which polygon configuration backs the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The regular n-gon itself.
    #[default]
    Plain,
    /// A regular (n − 1)-gon plus its center; needs n odd.
    Center,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Exact checks on a line family.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<S> {
    pub line_count: usize,
    pub pairwise_nonparallel: bool,
    /// First parallel pair found, if any.
    pub parallel_witness: Option<(usize, usize)>,
    pub nonconcurrent: bool,
    /// Common point `(X, Y, W)` ~ `(X/W, Y/W)` when the family is concurrent.
    pub concurrency_witness: Option<[S; 3]>,
    pub stab_counts: BTreeSet<usize>,
    pub forbidden: BTreeSet<usize>,
    pub forbidden_hit: BTreeSet<usize>,
    pub verdict: Verdict,
}

impl<S> VerificationReport<S> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `{n − 1, n − 2}`, dropping values below 1.
pub fn default_forbidden(n: usize) -> BTreeSet<usize> {
    [n.checked_sub(1), n.checked_sub(2)]
        .into_iter()
        .flatten()
        .filter(|&k| k >= 1)
        .collect()
}

/// Checks a family for pairwise non-parallelism, non-concurrency and
/// stab counts avoiding `forbidden`.
pub fn verify_family<S: Scalar>(
    lines: &[NonVerticalLine<S>],
    forbidden: &BTreeSet<usize>,
) -> Result<VerificationReport<S>, GeometryError> {
    if lines.is_empty() {
        return Err(GeometryError::Empty);
    }
    check_distinct_lines(lines)?;

    let parallel_witness = (0..lines.len())
        .flat_map(|i| (i + 1..lines.len()).map(move |j| (i, j)))
        .find(|&(i, j)| parallel(&lines[i], &lines[j]));

    let (nonconcurrent, concurrency_witness) = if lines.len() < 2 {
        (false, None)
    } else if concurrent_family(lines)? {
        (false, intersection_homogeneous(&lines[0], &lines[1]))
    } else {
        (true, None)
    };

    let stab_counts = stab_spectrum(lines)?;
    let forbidden_hit: BTreeSet<usize> = stab_counts.intersection(forbidden).copied().collect();
    let pass = parallel_witness.is_none() && nonconcurrent && forbidden_hit.is_empty();
    Ok(VerificationReport {
        line_count: lines.len(),
        pairwise_nonparallel: parallel_witness.is_none(),
        parallel_witness,
        nonconcurrent,
        concurrency_witness,
        stab_counts,
        forbidden: forbidden.clone(),
        forbidden_hit,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

/// A certified family of `n` dual lines of a polygon configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleBundle {
    pub n: usize,
    pub config: PolygonConfig,
    pub rotation: RationalRotation,
    /// The parameter `t` of the rotation, when it came from the search.
    pub rotation_parameter: Option<Rational>,
    pub lines: Vec<CycloLine>,
    pub certificate: VerificationReport<CycloElement>,
    /// `(a, b)` in double precision, for display.
    pub approx_lines: Vec<(f64, f64)>,
}

impl CounterexampleBundle {
    /// Order m of the field Q(ζ_m) holding the coefficients.
    pub fn field_order(&self) -> usize {
        working_order(self.config.n)
    }
}

/// The polygon configuration used for `n` lines.
pub fn config_for(n: usize, variant: Variant) -> Result<PolygonConfig, CounterexampleError> {
    match variant {
        Variant::Plain => Ok(PolygonConfig::plain(n)?),
        Variant::Center if n % 2 == 1 && n >= 5 => Ok(PolygonConfig::centered(n - 1)?),
        Variant::Center => Err(CounterexampleError::VariantUnavailable(n)),
    }
}

/// The default construction: duals of a rotated regular n-gon.
pub fn construct(n: usize) -> Result<CounterexampleBundle, CounterexampleError> {
    construct_variant(n, Variant::Plain)
}

pub fn construct_variant(n: usize, variant: Variant) -> Result<CounterexampleBundle, CounterexampleError> {
    if n < 7 {
        return Err(CounterexampleError::TooSmall(n));
    }
    let config = config_for(n, variant)?;
    let hit: Vec<usize> = polygon_spectrum_enumerated(&config)
        .intersection(&default_forbidden(n))
        .copied()
        .collect();
    if !hit.is_empty() {
        return Err(CounterexampleError::VariantHitsForbidden { n, hit });
    }
    Ok(bundle_for_config(&config)?)
}

/// Builds and certifies the dual family of any configuration, without the
/// size and variant gates of [`construct_variant`].
pub fn bundle_for_config(config: &PolygonConfig) -> Result<CounterexampleBundle, GeometryError> {
    let (t, rotation) = choose_rotation_with_parameter(config);
    let lines = dual_points(&instantiate_polygon(config, &rotation));
    let n = lines.len();
    let certificate = verify_family(&lines, &default_forbidden(n))?;
    let approx_lines = approximate(&lines);
    Ok(CounterexampleBundle {
        n,
        config: *config,
        rotation,
        rotation_parameter: Some(t),
        lines,
        certificate,
        approx_lines,
    })
}

pub(crate) fn approximate<S: Scalar>(lines: &[NonVerticalLine<S>]) -> Vec<(f64, f64)> {
    lines
        .iter()
        .map(|l| (l.a.approx_f64(), l.b.approx_f64()))
        .collect()
}

/// Re-derives the certificate of a bundle from its exact line data.
pub fn verify(bundle: &CounterexampleBundle) -> Result<VerificationReport<CycloElement>, CounterexampleError> {
    verify_with_forbidden(bundle, &default_forbidden(bundle.n))
}

pub fn verify_with_forbidden(
    bundle: &CounterexampleBundle,
    forbidden: &BTreeSet<usize>,
) -> Result<VerificationReport<CycloElement>, CounterexampleError> {
    if bundle.lines.len() != bundle.n {
        return Err(CounterexampleError::Malformed(format!(
            "{} lines for n = {}",
            bundle.lines.len(),
            bundle.n
        )));
    }
    if bundle.config.point_count() != bundle.n {
        return Err(CounterexampleError::Malformed(format!(
            "{} has {} points, bundle declares n = {}",
            bundle.config,
            bundle.config.point_count(),
            bundle.n
        )));
    }
    match verify_family(&bundle.lines, forbidden) {
        Err(GeometryError::DomainMismatch) => Err(CounterexampleError::Malformed(
            "line coefficients from different fields".into(),
        )),
        other => Ok(other?),
    }
}

/// Whether the bundle's lines are the duals of its declared configuration
/// under its declared rotation.
pub fn matches_construction(bundle: &CounterexampleBundle) -> bool {
    dual_points(&instantiate_polygon(&bundle.config, &bundle.rotation)) == bundle.lines
}

/// Result of the floating-point stab count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckOutcome {
    pub counts: BTreeSet<usize>,
    /// Abscissae at which two heights were within `[ε, 10ε)` of each other,
    /// too close to call.
    pub inconclusive: usize,
}

impl CrosscheckOutcome {
    pub fn is_conclusive(&self) -> bool {
        self.inconclusive == 0
    }
}

/// Stab counts of the bundle's family recomputed in double precision.
pub fn float_crosscheck(bundle: &CounterexampleBundle, epsilon: f64) -> CrosscheckOutcome {
    float_crosscheck_lines(&approximate(&bundle.lines), epsilon)
}

/// For every abscissa where two lines meet, counts the distinct heights of
/// all lines, merging heights closer than `epsilon`. Adds the generic count.
pub fn float_crosscheck_lines(lines: &[(f64, f64)], epsilon: f64) -> CrosscheckOutcome {
    assert!(epsilon > 0.0, "epsilon must be positive");
    let mut counts = BTreeSet::new();
    let mut inconclusive = 0;
    if !lines.is_empty() {
        counts.insert(lines.len());
    }
    for (i, &(ai, bi)) in lines.iter().enumerate() {
        for &(aj, bj) in &lines[i + 1..] {
            if ai == aj {
                continue;
            }
            let x = -(bi - bj) / (ai - aj);
            let mut heights: Vec<f64> = lines.iter().map(|&(a, b)| -(a * x + b)).collect();
            heights.sort_by(f64::total_cmp);
            let mut distinct = 1;
            let mut ambiguous = false;
            for w in heights.windows(2) {
                let gap = w[1] - w[0];
                if gap >= epsilon {
                    distinct += 1;
                }
                if (epsilon..10.0 * epsilon).contains(&gap) {
                    ambiguous = true;
                }
            }
            if ambiguous {
                inconclusive += 1;
            } else {
                counts.insert(distinct);
            }
        }
    }
    CrosscheckOutcome { counts, inconclusive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{affine_apply, AffineMap, Point};
    use crate::rational::ratio;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn rpt(x: i64, y: i64) -> Point<Rational> {
        Point::new(ratio(x, 1), ratio(y, 1)).unwrap()
    }

    #[test]
    fn heptagon_family() {
        let b = construct(7).unwrap();
        assert_eq!(b.lines.len(), 7);
        assert_eq!(b.certificate.stab_counts, set(&[4, 7]));
        assert!(b.certificate.passed());
        assert_eq!(b.certificate.forbidden, set(&[5, 6]));
        assert!(b.certificate.forbidden_hit.is_empty());
        assert!(matches_construction(&b));
        assert_eq!(verify(&b).unwrap(), b.certificate);
    }

    #[test]
    fn small_n_is_rejected() {
        assert_eq!(construct(6).unwrap_err(), CounterexampleError::TooSmall(6));
    }

    #[test]
    fn center_variant_rules() {
        assert_eq!(
            construct_variant(8, Variant::Center).unwrap_err(),
            CounterexampleError::VariantUnavailable(8)
        );
        // Hexagon plus center has stab counts {3, 5, 7}, and 5 = n − 2.
        assert_eq!(
            construct_variant(7, Variant::Center).unwrap_err(),
            CounterexampleError::VariantHitsForbidden { n: 7, hit: vec![5] }
        );
        let b = bundle_for_config(&PolygonConfig::centered(6).unwrap()).unwrap();
        assert_eq!(b.certificate.stab_counts, set(&[3, 5, 7]));
        assert!(!b.certificate.passed());
        // Octagon plus center (n = 9) avoids {7, 8}.
        let b9 = construct_variant(9, Variant::Center).unwrap();
        assert_eq!(b9.certificate.stab_counts, set(&[5, 9]));
        assert!(b9.certificate.passed());
        let b11 = construct_variant(11, Variant::Center).unwrap();
        assert_eq!(b11.certificate.stab_counts, set(&[5, 7, 11]));
        assert!(b11.certificate.passed());
    }

    #[test]
    fn concurrent_lines_fail() {
        let lines = dual_points(&[rpt(0, 0), rpt(1, 1), rpt(2, 2)]);
        let r = verify_family(&lines, &default_forbidden(3)).unwrap();
        assert!(!r.nonconcurrent);
        assert_eq!(r.verdict, Verdict::Fail);
        let [x, y, w] = r.concurrency_witness.unwrap();
        let common = Point::new(x / w.clone(), y / w).unwrap();
        assert_eq!(common, rpt(-1, 0));
    }

    #[test]
    fn sheared_square_fails_the_gate() {
        let shear = AffineMap::linear([[ratio(1, 1), ratio(1, 3)], [ratio(0, 1), ratio(1, 1)]]).unwrap();
        let sq = affine_apply(&shear, &[rpt(0, 0), rpt(1, 0), rpt(0, 1), rpt(1, 1)]);
        let r = verify_family(&dual_points(&sq), &default_forbidden(4)).unwrap();
        assert_eq!(r.stab_counts, set(&[2, 3, 4]));
        assert_eq!(r.forbidden_hit, set(&[2, 3]));
        assert!(r.pairwise_nonparallel && r.nonconcurrent);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn parallel_pair_is_witnessed() {
        let lines = dual_points(&[rpt(0, 0), rpt(1, 0), rpt(1, 3)]);
        let r = verify_family(&lines, &BTreeSet::new()).unwrap();
        assert_eq!(r.parallel_witness, Some((1, 2)));
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn malformed_bundles() {
        let mut b = construct(7).unwrap();
        b.lines.pop();
        assert!(matches!(verify(&b), Err(CounterexampleError::Malformed(_))));
    }

    #[test]
    fn float_crosscheck_small_cases() {
        let b = construct(7).unwrap();
        let out = float_crosscheck(&b, 1e-6);
        assert_eq!(out.counts, set(&[4, 7]));
        assert!(out.is_conclusive());
        let single = float_crosscheck_lines(&[(1.0, 2.0)], 1e-6);
        assert_eq!(single.counts, set(&[1]));
    }

    #[test]
    fn forbidden_defaults() {
        assert_eq!(default_forbidden(7), set(&[5, 6]));
        assert_eq!(default_forbidden(2), set(&[1]));
        assert!(default_forbidden(1).is_empty());
    }
}
