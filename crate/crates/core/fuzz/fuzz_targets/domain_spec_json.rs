#![no_main]

use cheeger_core::geometry::rasterize;
use cheeger_core::DomainSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = DomainSpec::from_json(text) else { return };
    let json = spec.to_json().expect("valid spec serializes");
    let back = DomainSpec::from_json(&json).expect("serialized spec parses");
    assert_eq!(back, spec);
    if spec.resolution <= 64 {
        if let Ok(g) = rasterize(&spec) {
            assert!(g.interior_count() > 0);
        }
    }
});
