use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use dirspec::geometry::{
    affine_apply, all_collinear, collinear, concurrent_family, dual_line_to_point,
    dual_point_to_line, dual_points, incident, parallel, AffineMap, Point,
};
use dirspec::spectrum::{lines_in_direction, spectrum, stab_spectrum, vertical_class_count};
use dirspec::{CycloElement, CyclotomicField, Rational, RationalLine, RationalPoint, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn small_int() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(|n| Rational::from_integer(BigInt::from(n)))
}

fn point() -> impl Strategy<Value = RationalPoint> {
    prop_oneof![
        (rational(), rational()).prop_map(|(x, y)| Point { x, y }),
        (small_int(), small_int()).prop_map(|(x, y)| Point { x, y }),
    ]
}

fn distinct_points(max: usize) -> impl Strategy<Value = Vec<RationalPoint>> {
    prop::collection::vec(point(), 1..=max).prop_map(|v| {
        let mut out: Vec<RationalPoint> = Vec::new();
        for p in v {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    })
}

const ORDERS: [usize; 6] = [3, 5, 7, 8, 12, 28];

fn cyclo_in(field: Arc<CyclotomicField>) -> impl Strategy<Value = CycloElement> {
    prop::collection::vec(rational(), field.order()).prop_map(move |c| CycloElement::from_poly(&field, &c))
}

/// Three elements of one randomly chosen field.
fn cyclo_triple() -> impl Strategy<Value = (CycloElement, CycloElement, CycloElement)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| {
        let f = CyclotomicField::new(n).unwrap();
        (cyclo_in(f.clone()), cyclo_in(f.clone()), cyclo_in(f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((a, b, c) in cyclo_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-a.clone())).is_zero());
    }

    #[test]
    fn multiplication_matches_numeric_evaluation((a, b, _c) in cyclo_triple()) {
        let exact = (&a * &b).to_complex64();
        let numeric = a.to_complex64() * b.to_complex64();
        prop_assert!((exact - numeric).norm() < 1e-6 * (1.0 + numeric.norm()));
    }

    #[test]
    fn conjugation_is_an_involutive_homomorphism((a, b, _c) in cyclo_triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        let re = &a + &a.conj();
        prop_assert_eq!(re.conj(), re.clone());
        let z = a.to_complex64().conj();
        prop_assert!((a.conj().to_complex64() - z).norm() < 1e-6 * (1.0 + z.norm()));
    }

    #[test]
    fn zero_has_tiny_approximation((a, _b, _c) in cyclo_triple()) {
        let z = &a - &a;
        prop_assert!(z.is_zero());
        prop_assert!(z.approx(128).norm() <= z.approx_error_bound(128));
    }

    #[test]
    fn incidence_symmetry_rational(p in point(), q in point()) {
        prop_assert_eq!(
            incident(&p, &dual_point_to_line(&q)).unwrap(),
            incident(&q, &dual_point_to_line(&p)).unwrap()
        );
    }

    #[test]
    fn incidence_symmetry_forced(p in point(), a in rational()) {
        let b = -(&p.y + &a * &p.x);
        let q = Point { x: a, y: b };
        prop_assert!(incident(&p, &dual_point_to_line(&q)).unwrap());
        prop_assert!(incident(&q, &dual_point_to_line(&p)).unwrap());
    }

    #[test]
    fn incidence_symmetry_cyclotomic((a, b, c) in cyclo_triple()) {
        let p = Point::new(a.clone(), b.clone()).unwrap();
        let q = Point::new(c.clone(), a.clone()).unwrap();
        prop_assert_eq!(
            incident(&p, &dual_point_to_line(&q)).unwrap(),
            incident(&q, &dual_point_to_line(&p)).unwrap()
        );
        // Forced: y-coordinate of q chosen so that Q + A·P + B = 0.
        let forced = Point::new(c.clone(), -(&b + &(&c * &a))).unwrap();
        prop_assert!(incident(&p, &dual_point_to_line(&forced)).unwrap());
        prop_assert!(incident(&forced, &dual_point_to_line(&p)).unwrap());
    }

    #[test]
    fn bijection_round_trips(p in point(), a in rational(), b in rational()) {
        prop_assert_eq!(dual_line_to_point(&dual_point_to_line(&p)), p);
        let l = RationalLine { a, b };
        prop_assert_eq!(dual_point_to_line(&dual_line_to_point(&l)), l);
    }

    #[test]
    fn shared_abscissa_iff_parallel_duals(p in point(), q in point()) {
        prop_assume!(p != q);
        prop_assert_eq!(p.x == q.x, parallel(&dual_point_to_line(&p), &dual_point_to_line(&q)));
    }

    #[test]
    fn concurrency_matches_intersection_brute_force(pts in distinct_points(6)) {
        prop_assume!(pts.len() >= 2 && vertical_class_count(&pts) == pts.len());
        let fam = dual_points(&pts);
        // Explicit intersection points by division, rational domain only.
        let meet = |l1: &RationalLine, l2: &RationalLine| {
            let x = (&l2.b - &l1.b) / (&l1.a - &l2.a);
            let y = -(&l1.a * &x + &l1.b);
            (x, y)
        };
        let first = meet(&fam[0], &fam[1]);
        let brute = fam.iter().all(|l| (-(&l.a * &first.0 + &l.b) - &first.1).is_zero());
        prop_assert_eq!(concurrent_family(&fam).unwrap(), brute);
    }

    #[test]
    fn affine_maps_preserve_collinearity_and_spectra(
        pts in distinct_points(7),
        m in [rational(), rational(), rational(), rational(), rational(), rational()],
    ) {
        let [a, b, c, d, e, f] = m;
        let Ok(map) = AffineMap::new([[a, b], [c, d]], [e, f]) else {
            return Ok(());
        };
        let img = affine_apply(&map, &pts);
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                for k in 0..pts.len() {
                    prop_assert_eq!(
                        collinear(&pts[i], &pts[j], &pts[k]).unwrap(),
                        collinear(&img[i], &img[j], &img[k]).unwrap()
                    );
                }
            }
        }
        prop_assert_eq!(spectrum(&pts).unwrap().counts, spectrum(&img).unwrap().counts);
    }

    #[test]
    fn spectrum_report_invariants(pts in distinct_points(8)) {
        let n = pts.len();
        let r = spectrum(&pts).unwrap();
        prop_assert!(r.counts.contains(&n));
        prop_assert_eq!(*r.counts.iter().max().unwrap(), n);
        prop_assert!(*r.counts.iter().min().unwrap() >= 1);
        prop_assert_eq!(r.counts.contains(&1), n == 1 || all_collinear(&pts).unwrap());
        prop_assert_eq!(r.counts.iter().copied().collect::<Vec<_>>(), r.witnesses.keys().copied().collect::<Vec<_>>());
        for (k, w) in &r.witnesses {
            let part = &w.partition;
            prop_assert_eq!(part.line_count(), *k);
            let mut seen: Vec<usize> = part.groups.iter().flatten().copied().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            // Same group iff the difference is along the direction.
            let group_of = |i: usize| part.groups.iter().position(|g| g.contains(&i)).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let dx = &pts[j].x - &pts[i].x;
                    let dy = &pts[j].y - &pts[i].y;
                    prop_assert_eq!(group_of(i) == group_of(j), part.direction.contains_vector(&dx, &dy));
                }
            }
            prop_assert_eq!(&lines_in_direction(&pts, &part.direction).unwrap().groups, &part.groups);
        }
    }

    #[test]
    fn stab_spectrum_matches_brute_force(pts in distinct_points(7)) {
        let lines = dual_points(&pts);
        // Every abscissa where two lines cross, then distinct heights there.
        let mut brute: BTreeSet<usize> = BTreeSet::new();
        brute.insert(lines.len());
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].a == lines[j].a {
                    continue;
                }
                let x = (&lines[j].b - &lines[i].b) / (&lines[i].a - &lines[j].a);
                let heights: BTreeSet<Rational> = lines.iter().map(|l| -(&l.a * &x + &l.b)).collect();
                brute.insert(heights.len());
            }
        }
        prop_assert_eq!(stab_spectrum(&lines).unwrap(), brute);
    }

    #[test]
    fn transport_between_spectrum_and_stab(pts in distinct_points(8)) {
        let counts = spectrum(&pts).unwrap().counts;
        let mut stab = stab_spectrum(&dual_points(&pts)).unwrap();
        let vertical = vertical_class_count(&pts);
        if vertical == pts.len() {
            prop_assert_eq!(&counts, &stab);
        }
        stab.insert(vertical);
        prop_assert_eq!(counts, stab);
    }

    #[test]
    fn zeta_powers_invert(n in prop::sample::select(ORDERS.to_vec()), k in 0i64..64) {
        let f = CyclotomicField::new(n).unwrap();
        let prod = &CycloElement::zeta_pow(&f, k) * &CycloElement::zeta_pow(&f, n as i64 - k);
        prop_assert_eq!(prod, CycloElement::one(&f));
    }

    #[test]
    fn rational_directions_compare_by_cross_product(
        dx in rational(), dy in rational(), s in rational(),
    ) {
        prop_assume!(!(dx.is_zero() && dy.is_zero()) && !s.is_zero());
        let d1 = dirspec::Direction::new(dx.clone(), dy.clone()).unwrap();
        let d2 = dirspec::Direction::new(&dx * &s, &dy * &s).unwrap();
        prop_assert_eq!(d1.dx(), d2.dx());
        prop_assert_eq!(d1.dy(), d2.dy());
        prop_assert!(Rational::cross(d1.dx(), d1.dy(), &dx, &dy).is_zero());
    }
}
