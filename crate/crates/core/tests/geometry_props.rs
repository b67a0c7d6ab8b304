use std::f64::consts::PI;

use cheeger_core::geometry::{cut_set_to_polygons_with, rasterize, PolygonizeOptions, DEFAULT_SIMPLIFY_CELLS};
use cheeger_core::{DomainSpec, Point, Polygon, Shape};
use proptest::prelude::*;

/// Star-shaped polygon around the origin: sorted angles, radii in [0.3, 1].
fn star_polygon() -> impl Strategy<Value = Polygon> {
    prop::collection::vec((0.0..1.0f64, 0.3..1.0f64), 3..24).prop_filter_map("degenerate", |pts| {
        let n = pts.len();
        let verts = pts
            .iter()
            .enumerate()
            .map(|(k, &(jitter, r))| {
                let t = 2.0 * PI * (k as f64 + 0.8 * jitter) / n as f64;
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        Polygon::new(verts).ok()
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

proptest! {
    #[test]
    fn rigid_motions_preserve_measures(p in star_polygon(), angle in 0.0..(2.0 * PI), dx in -5.0..5.0f64, dy in -5.0..5.0f64) {
        let q = p.map(|v| v.rotate(angle) + Point::new(dx, dy)).unwrap();
        prop_assert!(close(q.area(), p.area(), 1e-12));
        prop_assert!(close(q.perimeter(), p.perimeter(), 1e-12));
    }

    #[test]
    fn quotient_scales_inversely(p in star_polygon(), r in 0.1..10.0f64) {
        let q = p.scaled(r).unwrap();
        prop_assert!(close(q.quotient(), p.quotient() / r, 1e-12));
    }

    #[test]
    fn isoperimetric_inequality(p in star_polygon()) {
        prop_assert!(p.quotient() >= 2.0 * (PI / p.area()).sqrt() * (1.0 - 1e-12));
    }

    #[test]
    fn spec_json_round_trips(p in star_polygon(), res in 16usize..512, w in 0.1..10.0f64, h in 0.1..10.0f64, frac in 0.05..0.95f64) {
        for spec in [
            DomainSpec::polygon(p.clone(), res).unwrap(),
            DomainSpec::rectangle(w, h, res).unwrap(),
            DomainSpec::disk(Point::new(w, -h), h, res).unwrap(),
            DomainSpec::l_shape(w, h, frac * w.min(h), res).unwrap(),
        ] {
            let back = DomainSpec::from_json(&spec.to_json().unwrap()).unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}

#[test]
fn polygonized_mask_area_converges() {
    // Cell-count area error oscillates in sign with resolution, so the
    // error is checked against a first-order envelope rather than a ratio.
    let exact = Polygon::regular(1024, Point::default(), 1.0).unwrap().area();
    let envelope = |cell: f64| 2.0 * PI * cell / 4.0;
    for simplify_cells in [None, Some(DEFAULT_SIMPLIFY_CELLS)] {
        let opts = PolygonizeOptions { fill_holes: true, simplify_cells };
        let error = |res| {
            let spec = DomainSpec::new(Shape::Disk { center: Point::default(), r: 1.0 }, res).unwrap();
            let g = rasterize(&spec).unwrap();
            let area: f64 = cut_set_to_polygons_with(&g, g.mask(), opts).unwrap().iter().map(Polygon::area).sum();
            ((area - exact).abs(), g.grid.cell)
        };
        let errors: Vec<(f64, f64)> = [64, 128, 256].map(error).to_vec();
        for &(e, cell) in &errors {
            assert!(e <= envelope(cell), "{opts:?}: error {e} above {} at cell {cell}", envelope(cell));
        }
        assert!(errors[2].0 < errors[0].0, "{opts:?}: no decrease over 4x refinement: {errors:?}");
    }
}
