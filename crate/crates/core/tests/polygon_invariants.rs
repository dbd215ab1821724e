use std::collections::BTreeSet;

use dirspec::counterexample::{bundle_for_config, construct, float_crosscheck, verify};
use dirspec::geometry::collinear;
use dirspec::polygon::{
    choose_rotation, instantiate_polygon, polygon_spectrum_closed_form, polygon_spectrum_enumerated,
    ChordClass, PolygonConfig,
};
use dirspec::spectrum::{direction_classes, pair_directions, spectrum, vertical_class_count};

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

#[test]
fn residue_model_matches_exact_parallelism() {
    for n in 3..=24 {
        let cfg = PolygonConfig::plain(n).unwrap();
        let pts = instantiate_polygon(&cfg, &choose_rotation(&cfg));
        let classes = direction_classes(&pts).unwrap();
        assert_eq!(classes.len(), n, "n = {n}");
        // Classes are an equivalence; matching residues within and across
        // classes pins the relation down pairwise.
        let residues: Vec<usize> = classes
            .iter()
            .map(|c| {
                let (i, j) = c.pairs[0];
                let d = ChordClass::of_chord(i, j, n).residue();
                assert!(c.pairs.iter().all(|&(k, l)| (k + l) % n == d), "n = {n}");
                d
            })
            .collect();
        let distinct: BTreeSet<usize> = residues.iter().copied().collect();
        assert_eq!(distinct.len(), n, "n = {n}");
    }
}

#[test]
fn heptagon_has_seven_pair_directions() {
    let cfg = PolygonConfig::plain(7).unwrap();
    let pts = instantiate_polygon(&cfg, &choose_rotation(&cfg));
    assert_eq!(pair_directions(&pts).unwrap().len(), 7);
}

#[test]
fn closed_form_equals_enumeration_up_to_51() {
    for n in 3..=51 {
        for center in [false, true] {
            let cfg = PolygonConfig::new(n, center).unwrap();
            match polygon_spectrum_closed_form(&cfg) {
                Ok(closed) => assert_eq!(closed, polygon_spectrum_enumerated(&cfg), "{cfg}"),
                Err(_) => assert!(center && n % 2 == 1),
            }
        }
    }
}

#[test]
fn enumeration_equals_exact_spectrum_up_to_24() {
    for n in 3..=24 {
        for center in [false, true] {
            let cfg = PolygonConfig::new(n, center).unwrap();
            let pts = instantiate_polygon(&cfg, &choose_rotation(&cfg));
            assert_eq!(vertical_class_count(&pts), pts.len(), "{cfg}");
            assert_eq!(
                spectrum(&pts).unwrap().counts,
                polygon_spectrum_enumerated(&cfg),
                "{cfg}"
            );
        }
    }
}

#[test]
fn only_diameters_through_the_center_are_collinear() {
    for n in 3..=16 {
        for center in [false, true] {
            let cfg = PolygonConfig::new(n, center).unwrap();
            let pts = instantiate_polygon(&cfg, &choose_rotation(&cfg));
            let m = pts.len();
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        let expected = center && n % 2 == 0 && c == n && b == a + n / 2;
                        assert_eq!(collinear(&pts[a], &pts[b], &pts[c]).unwrap(), expected, "{cfg}: {a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn constructions_transport_the_polygon_spectrum() {
    for n in 7..=24 {
        let b = construct(n).unwrap();
        assert_eq!(b.certificate.stab_counts, polygon_spectrum_enumerated(&b.config), "n = {n}");
        assert!(verify(&b).unwrap().passed(), "n = {n}");
    }
}

#[test]
fn small_constructions() {
    assert_eq!(construct(8).unwrap().certificate.stab_counts, set(&[4, 5, 8]));
    assert_eq!(construct(9).unwrap().certificate.stab_counts, set(&[5, 9]));
    let twelve = construct(12).unwrap();
    let out = float_crosscheck(&twelve, 1e-6);
    assert_eq!(out.counts, set(&[6, 7, 12]));
    assert!(out.is_conclusive());
}

#[test]
fn plain_polygons_below_seven_hit_the_forbidden_set() {
    for n in 3..=6 {
        let b = bundle_for_config(&PolygonConfig::plain(n).unwrap()).unwrap();
        assert!(!b.certificate.forbidden_hit.is_empty(), "n = {n}");
        assert!(construct(n).is_err());
    }
}
