use cheeger_core::distance::{distance_to_boundary, inradius, makai_field, reduced_inradius, unit_gradient_fraction};
use cheeger_core::geometry::{grid_area, rasterize};
use cheeger_core::{DomainSpec, GridDomain, Point, ScalarField};
use proptest::prelude::*;

fn field(spec: &DomainSpec) -> (GridDomain, ScalarField) {
    let g = rasterize(spec).unwrap();
    let phi = distance_to_boundary(&spec.boundary_polygon().unwrap(), &g);
    (g, phi)
}

fn shapes(res: usize) -> Vec<DomainSpec> {
    vec![
        DomainSpec::disk(Point::default(), 1.0, res).unwrap(),
        DomainSpec::rectangle(1.0, 1.0, res).unwrap(),
        DomainSpec::rectangle(4.0, 1.0, res).unwrap(),
        DomainSpec::l_shape(2.0, 2.0, 1.0, res).unwrap(),
    ]
}

#[test]
fn gradient_has_unit_length_off_the_medial_axis() {
    for spec in shapes(128) {
        let (g, phi) = field(&spec);
        let frac = unit_gradient_fraction(&phi, 2.0 * g.cell());
        assert!(frac >= 0.95, "{}: {frac}", spec.kind());
    }
}

#[test]
fn makai_speed_is_bounded() {
    for spec in shapes(96) {
        let (g, phi) = field(&spec);
        let v = makai_field(&phi, inradius(&phi)).unwrap();
        assert!(v.max_speed() <= 1.0 + 3.0 * g.cell(), "{}: {}", spec.kind(), v.max_speed());
    }
}

#[test]
fn reduced_inradius_is_monotone_under_inclusion() {
    // each pair is (S, Ω) with S ⊂ Ω on a shared cell size
    let pairs = [
        (DomainSpec::rectangle(1.0, 1.0, 32).unwrap(), DomainSpec::rectangle(2.0, 1.0, 64).unwrap()),
        (DomainSpec::disk(Point::default(), 0.5, 32).unwrap(), DomainSpec::disk(Point::default(), 1.0, 64).unwrap()),
        (DomainSpec::rectangle(1.0, 1.0, 32).unwrap(), DomainSpec::l_shape(2.0, 2.0, 1.0, 64).unwrap()),
    ];
    for (s, o) in pairs {
        let (gs, ps) = field(&s);
        let (go, po) = field(&o);
        assert_eq!(gs.cell(), go.cell());
        let rs = reduced_inradius(inradius(&ps), grid_area(&gs)).unwrap();
        let ro = reduced_inradius(inradius(&po), grid_area(&go)).unwrap();
        assert!(rs <= ro + gs.cell(), "{} in {}: {rs} > {ro}", s.kind(), o.kind());
    }
}

proptest! {
    #[test]
    fn reduced_inradius_increases_with_rho(area in 0.01..100.0f64, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let top = (area / std::f64::consts::PI).sqrt();
        let (r1, r2) = (top * a.min(b), top * a.max(b));
        prop_assume!(r1 > 0.0 && r2 - r1 > 1e-9 * top);
        let (t1, t2) = (reduced_inradius(r1, area).unwrap(), reduced_inradius(r2, area).unwrap());
        prop_assert!(t1 < t2);
        prop_assert!(r1 / 2.0 < t1 && t1 < r1);
    }
}
