#[allow(dead_code)]
mod roots_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/root_decomposition.rs"));
}
#[allow(dead_code)]
mod curvature_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/curvature_tensor.rs"));
}
#[allow(dead_code)]
mod jacobi_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/jacobi_operator.rs"));
}
#[allow(dead_code)]
mod kahler_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kahler_angle.rs"));
}
#[allow(dead_code)]
mod horosphere_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/horosphere.rs"));
}
#[allow(dead_code)]
mod tube_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tube.rs"));
}
#[allow(dead_code)]
mod totally_geodesic_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/totally_geodesic.rs"));
}
#[allow(dead_code)]
mod identities_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/curvature_identities.rs"));
}
#[allow(dead_code)]
mod codazzi_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/codazzi.rs"));
}
#[allow(dead_code)]
mod report_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verification_report.rs"));
}

use ncgrass::models::TotallyGeodesicModelKind;

#[test]
fn roots() {
    let got = roots_example::run_example(4).unwrap();
    let mults: Vec<usize> = got.iter().map(|(_, k)| *k).collect();
    assert_eq!(mults, vec![2, 2, 4, 4, 1, 1]);
}

#[test]
fn curvature() {
    let (worst, lo, hi) = curvature_example::run_example(2, 100).unwrap();
    assert!(worst < 1e-9);
    assert!(lo >= -4.0 - 1e-9 && hi <= 1e-9);
}

#[test]
fn jacobi() {
    let spectra = jacobi_example::run_example(3).unwrap();
    assert_eq!(spectra[0].iter().map(|g| g.1).collect::<Vec<_>>(), vec![1, 6, 5]);
    assert_eq!(spectra[1].iter().map(|g| g.1).collect::<Vec<_>>(), vec![4, 4, 4]);
}

#[test]
fn kahler() {
    for (t, angle) in kahler_example::run_example(2).unwrap() {
        assert!((angle - 2.0 * t).abs() < 1e-9);
    }
}

#[test]
fn horosphere() {
    let rows = horosphere_example::run_example(4, 0.0).unwrap();
    let mults: Vec<usize> = rows.iter().map(|r| r.1).collect();
    assert_eq!(mults, vec![6, 8, 1]);
}

#[test]
fn tube() {
    for kind in [
        TotallyGeodesicModelKind::su(2).unwrap(),
        TotallyGeodesicModelKind::sp(3).unwrap(),
    ] {
        assert!(tube_example::run_example(kind, 0.5).unwrap() < 1e-9);
    }
}

#[test]
fn totally_geodesic() {
    let kind = TotallyGeodesicModelKind::sp(1).unwrap();
    assert!(totally_geodesic_example::run_example(kind).unwrap() < 1e-12);
}

#[test]
fn identities() {
    assert!(identities_example::run_example(3).unwrap() < 1e-9);
}

#[test]
fn codazzi() {
    assert_eq!(codazzi_example::run_example(2, 20).unwrap(), vec![-1.0; 3]);
}

#[test]
fn report() {
    let (passed, total) = report_example::run_example(vec![2]).unwrap();
    assert_eq!(passed, total);
}
