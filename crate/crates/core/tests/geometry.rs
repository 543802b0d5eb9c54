use killing_core::exact::int;
use killing_core::geometry::check_geometry;

fn run(n: usize, module_dim: usize) {
    let r = check_geometry(n, 100, 0).unwrap();
    eprintln!("S{n}: {} ms", r.wall_ms);
    assert!(r.passed, "{r:?}");
    assert_eq!(r.points_checked, 100);
    assert_eq!(r.eq_ks_failures, 0);
    assert_eq!(r.killing_spinors, module_dim);
    assert_eq!(r.constants.s, int(2));
    assert_eq!(r.constants.sign, -1);
}

#[test]
fn s7_killing_spinors() {
    run(7, 8);
}

#[test]
fn s8_killing_spinors() {
    run(8, 16);
}

#[test]
fn s15_killing_spinors() {
    run(15, 128);
}

#[test]
fn reports_are_deterministic() {
    let mut a = check_geometry(7, 20, 5).unwrap();
    let mut b = check_geometry(7, 20, 5).unwrap();
    a.wall_ms = 0;
    b.wall_ms = 0;
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
