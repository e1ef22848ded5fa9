use entcat::catalysis::{is_catalyst, mlocc_threshold};
use entcat::limits::{component_cap, set_component_cap, DEFAULT_COMPONENT_CAP};
use entcat::{Error, SchmidtVector};

fn v(s: &str) -> SchmidtVector {
    s.parse().unwrap()
}

// The cap is process-global, so everything touching it lives in one test.
#[test]
fn global_cap_bounds_expansion() {
    assert_eq!(component_cap(), DEFAULT_COMPONENT_CAP);
    let psi = v("0.4,0.4,0.1,0.1");
    let phi = v("0.5,0.25,0.22,0.03");

    set_component_cap(64);
    assert!(psi.power(3).is_ok());
    match psi.power(4) {
        Err(Error::ResourceLimit { requested, cap }) => {
            assert_eq!((requested, cap), (256, 64));
        }
        other => panic!("expected resource limit, got {other:?}"),
    }
    assert!(matches!(
        mlocc_threshold(&psi, &phi, 12),
        Err(Error::ResourceLimit { .. })
    ));
    assert!(matches!(
        is_catalyst(&v("0.6,0.4"), &psi, &phi, 5),
        Err(Error::ResourceLimit { .. })
    ));

    set_component_cap(DEFAULT_COMPONENT_CAP);
    assert_eq!(mlocc_threshold(&psi, &phi, 12).unwrap().threshold, Some(5));
}
