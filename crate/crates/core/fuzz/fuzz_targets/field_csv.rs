#![no_main]

use std::sync::OnceLock;

use cheeger_core::field_io::{read_scalar_csv, read_vector_csv, write_scalar_csv, write_vector_csv};
use cheeger_core::geometry::{rasterize, DomainSpec};
use cheeger_core::{GridDomain, Point};
use libfuzzer_sys::fuzz_target;

fn domain() -> &'static GridDomain {
    static G: OnceLock<GridDomain> = OnceLock::new();
    G.get_or_init(|| rasterize(&DomainSpec::disk(Point::default(), 1.0, 16).unwrap()).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let g = domain();
    if let Ok(f) = read_scalar_csv(data, g) {
        let mut buf = Vec::new();
        write_scalar_csv(&f, &mut buf).unwrap();
        assert_eq!(read_scalar_csv(buf.as_slice(), g).unwrap(), f);
    }
    if let Ok(v) = read_vector_csv(data, g) {
        let mut buf = Vec::new();
        write_vector_csv(&v, &mut buf).unwrap();
        assert_eq!(read_vector_csv(buf.as_slice(), g).unwrap(), v);
    }
});
