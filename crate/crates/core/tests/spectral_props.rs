use cheeger_core::cheeger::{cheeger_constant, CutMetricStencil};
use cheeger_core::distance::reduced_inradius;
use cheeger_core::geometry::rasterize;
use cheeger_core::spectral::{rayleigh_quotient, smallest_eigenvalue, DirichletLaplacian};
use cheeger_core::{DomainSpec, Point, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lambda(spec: DomainSpec) -> f64 {
    smallest_eigenvalue(&DirichletLaplacian::assemble(&rasterize(&spec).unwrap())).unwrap().lambda
}

#[test]
fn rayleigh_quotients_bound_the_eigenvalue_from_above() {
    let g = rasterize(&DomainSpec::l_shape(2.0, 2.0, 1.0, 32).unwrap()).unwrap();
    let l = DirichletLaplacian::assemble(&g);
    let lam = smallest_eigenvalue(&l).unwrap().lambda;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let u = ScalarField::from_fn(&g, |_| rng.gen::<f64>());
        assert!(rayleigh_quotient(&l, &u).unwrap() >= lam - 1e-8);
    }
}

#[test]
fn eigenvalue_decreases_under_inclusion() {
    // nested rectangles on a shared cell size of 1/32
    let inner = lambda(DomainSpec::rectangle(1.0, 1.0, 32).unwrap());
    let middle = lambda(DomainSpec::rectangle(2.0, 1.0, 64).unwrap());
    let outer = lambda(DomainSpec::rectangle(2.0, 2.0, 64).unwrap());
    assert!(inner >= middle && middle >= outer, "{inner} {middle} {outer}");
}

#[test]
fn eigenvalue_scales_inverse_quadratically() {
    for r in [0.5, 2.0] {
        let base = lambda(DomainSpec::disk(Point::default(), 1.0, 64).unwrap());
        let scaled = lambda(DomainSpec::disk(Point::default(), r, 64).unwrap());
        assert!((scaled * r * r - base).abs() <= 0.01 * base, "r = {r}: {scaled} vs {base}");
        let base = lambda(DomainSpec::rectangle(2.0, 1.0, 64).unwrap());
        let scaled = lambda(DomainSpec::rectangle(2.0 * r, r, 64).unwrap());
        assert!((scaled * r * r - base).abs() <= 0.01 * base, "r = {r}: {scaled} vs {base}");
    }
}

#[test]
fn ground_state_has_one_sign() {
    for spec in [
        DomainSpec::l_shape(2.0, 2.0, 1.0, 48).unwrap(),
        DomainSpec::rectangle(4.0, 1.0, 64).unwrap(),
    ] {
        let g = rasterize(&spec).unwrap();
        let e = smallest_eigenvalue(&DirichletLaplacian::assemble(&g)).unwrap();
        assert!(g.interior_cells().all(|i| e.eigenfunction.values[i] > 0.0), "{}", spec.kind());
    }
}

#[test]
fn chain_of_lower_bounds() {
    let tol = 0.05;
    for spec in [
        DomainSpec::disk(Point::default(), 1.0, 64).unwrap(),
        DomainSpec::rectangle(1.0, 1.0, 64).unwrap(),
        DomainSpec::rectangle(2.0, 1.0, 64).unwrap(),
    ] {
        let p = spec.boundary_polygon().unwrap();
        let g = rasterize(&spec).unwrap();
        let lam = smallest_eigenvalue(&DirichletLaplacian::assemble(&g)).unwrap().lambda;
        let h = cheeger_constant(&g, &CutMetricStencil::sixteen(), 0.01).unwrap().h_lower;
        let inv = 1.0 / reduced_inradius(p.inradius(), p.area()).unwrap();
        assert!(lam >= h * h / 4.0, "{}: λ = {lam}, h = {h}", spec.kind());
        if h >= inv {
            assert!(h * h / 4.0 >= inv * inv / 4.0 * (1.0 - tol) * (1.0 - tol));
        }
        assert!(lam >= inv * inv / 4.0 * (1.0 - tol) * (1.0 - tol), "{}", spec.kind());
    }
}
