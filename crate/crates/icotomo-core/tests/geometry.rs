//! Randomized invariants for the module geometry, star map, hulls and
//! window classification.

mod common;

use common::{qtau_interval, Rng};
use icotomo_core::geom::hull::{hull2d, hull3d, orient3d, Hull2, Hull3};
use icotomo_core::geom::window::{Classification, Window};
use icotomo_core::geom::{ModulePoint, Point3};
use icotomo_core::qtau::QTau;

#[test]
fn star_is_an_involution() {
    let mut rng = Rng::new(0x000a_11c1);
    for _ in 0..1000 {
        let p = rng.point(50);
        assert_eq!(p.star().star(), p);
    }
}

#[test]
fn star_is_additive() {
    let mut rng = Rng::new(0x000a_11c2);
    for _ in 0..500 {
        let p = rng.point(50);
        let q = rng.point(50);
        assert_eq!((&p + &q).star(), &p.star() + &q.star());
    }
}

#[test]
fn membership_inverts_embedding() {
    let mut rng = Rng::new(0x000a_11c3);
    for _ in 0..1000 {
        let m = rng.module_point(60);
        assert_eq!(ModulePoint::from_point(&m.embed()), Some(m));
    }
}

#[test]
fn module_is_closed_under_addition_and_scaling() {
    let mut rng = Rng::new(0x000a_11c4);
    for _ in 0..500 {
        let m = rng.module_point(30);
        let n = rng.module_point(30);
        let sum = &m.embed() + &n.embed();
        assert!(ModulePoint::from_point(&sum).is_some());
        let tau_scaled = m.embed().scaled(&QTau::tau());
        assert!(ModulePoint::from_point(&tau_scaled).is_some());
    }
}

#[test]
fn orientation_agrees_with_interval_numerics() {
    let mut rng = Rng::new(0x000a_11c5);
    let mut decided = 0;
    for _ in 0..1000 {
        let a = rng.point(30);
        let b = rng.point(30);
        let c = rng.point(30);
        let d = rng.point(30);
        let got = orient3d(&a, &b, &c, &d);
        // independent route: cofactor expansion of the 3x3 determinant in
        // interval arithmetic at 200 bits
        let bits = 200;
        let row = |p: &Point3, q: &Point3| {
            [
                qtau_interval(&(&q.x - &p.x), bits),
                qtau_interval(&(&q.y - &p.y), bits),
                qtau_interval(&(&q.z - &p.z), bits),
            ]
        };
        let r1 = row(&a, &b);
        let r2 = row(&a, &c);
        let r3 = row(&a, &d);
        let det = r1[0]
            .mul(&r2[1].mul(&r3[2]).sub(&r2[2].mul(&r3[1])))
            .sub(&r1[1].mul(&r2[0].mul(&r3[2]).sub(&r2[2].mul(&r3[0]))))
            .add(&r1[2].mul(&r2[0].mul(&r3[1]).sub(&r2[1].mul(&r3[0]))));
        if let Some(expected) = det.sign() {
            assert_eq!(got, expected);
            decided += 1;
        } else {
            // interval straddles zero: the determinant must be exactly zero
            assert_eq!(got, 0);
        }
    }
    assert!(decided > 900, "oracle should decide almost all samples");
}

#[test]
fn window_classification_is_translation_equivariant() {
    let mut rng = Rng::new(0x000a_11c6);
    let w = Window::icosahedron(Point3::zero()).unwrap();
    for _ in 0..200 {
        let q = rng.point(2);
        let t = rng.point(3);
        let wt = w.with_translate(t.clone());
        assert_eq!(w.classify(&q), wt.classify(&(&q + &t)));
    }
}

#[test]
fn hull_idempotence_on_random_planar_sets() {
    let mut rng = Rng::new(0x000a_11c7);
    let normal = Point3::from_ints(0, 0, 1);
    for _ in 0..100 {
        let n = 3 + rng.below(10) as usize;
        let pts: Vec<Point3> = (0..n)
            .map(|_| Point3::new(rng.qtau(8), rng.qtau(8), QTau::zero()))
            .collect();
        let h = hull2d(&pts, &normal);
        if let Hull2::Polygon(v) = &h {
            let again = hull2d(v, &normal);
            let Hull2::Polygon(v2) = again else {
                panic!("hull of hull vertices must stay a polygon")
            };
            let mut s1 = v.clone();
            s1.sort();
            let mut s2 = v2;
            s2.sort();
            assert_eq!(s1, s2);
        }
    }
}

#[test]
fn solid_hulls_contain_their_inputs() {
    let mut rng = Rng::new(0x000a_11c8);
    for _ in 0..50 {
        let n = 4 + rng.below(8) as usize;
        let pts: Vec<Point3> = (0..n).map(|_| rng.point(6)).collect();
        let h = hull3d(&pts);
        for p in &pts {
            assert!(h.contains(p), "hull must contain input point {p}");
        }
        if let Hull3::Solid { vertices, facets } = &h {
            // every facet supports at least three hull vertices
            for f in facets {
                assert!(f.vertices.len() >= 3);
                for v in &f.vertices {
                    assert!(vertices.contains(v));
                }
            }
        }
    }
}

#[test]
fn icosahedron_classifications_match_float_margins() {
    // the exact classification agrees with a crude float check away from
    // the boundary; this exercises the floats-are-presentation-only story
    let w = Window::icosahedron(Point3::zero()).unwrap();
    let mut rng = Rng::new(0x000a_11c9);
    for _ in 0..300 {
        let q = rng.point(2);
        let exact = w.classify(&q);
        let r2 = q.to_f64().iter().map(|c| c * c).sum::<f64>();
        // circumradius^2 = 3 - tau ~ 1.382, inradius^2 ~ 0.7947
        if r2 > 1.383 {
            assert_eq!(exact, Classification::Exterior);
        }
        if r2 < 0.794 {
            assert_eq!(exact, Classification::Interior);
        }
    }
}
