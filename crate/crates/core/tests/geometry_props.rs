use ncgrass::curvature::{r_bracket, r_formula, sectional_curvature};
use ncgrass::lie::{bracket, cartan_split, embed_block, metric, TangentVector};
use ncgrass::roots::weyl_chamber_vector;
use ncgrass::structures::{kahler_angle, kahler_j, QuaternionBasis};
use proptest::prelude::*;

fn tangent(m: usize) -> impl Strategy<Value = TangentVector> {
    prop::collection::vec(-1.0f64..1.0, 4 * m).prop_map(move |c| TangentVector::from_coords(m, &c))
}

fn triple() -> impl Strategy<Value = (TangentVector, TangentVector, TangentVector, TangentVector)> {
    (2usize..=4).prop_flat_map(|m| (tangent(m), tangent(m), tangent(m), tangent(m)))
}

/// Rotation about a unit axis, as rows.
fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2])
        .sqrt()
        .max(1e-3);
    let [x, y, z] = axis.map(|a| a / n);
    let (s, c) = angle.sin_cos();
    let d = 1.0 - c;
    [
        [c + x * x * d, x * y * d - z * s, x * z * d + y * s],
        [y * x * d + z * s, c + y * y * d, y * z * d - x * s],
        [z * x * d - y * s, z * y * d + x * s, c + z * z * d],
    ]
}

fn close(a: &TangentVector, b: &TangentVector, tol: f64) -> bool {
    (a - b).norm() < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curvature_symmetries((x, y, z, w) in triple()) {
        let r = r_bracket;
        prop_assert!(close(&r(&x, &y, &z), &-&r(&y, &x, &z), 1e-12));
        let bianchi = &(&r(&x, &y, &z) + &r(&y, &z, &x)) + &r(&z, &x, &y);
        prop_assert!(bianchi.norm() < 1e-12);
        let a = metric(&r(&x, &y, &z), &w);
        let b = metric(&r(&z, &w, &x), &y);
        prop_assert!((a - b).abs() < 1e-12);
        let c = metric(&r(&x, &y, &z), &w) + metric(&r(&x, &y, &w), &z);
        prop_assert!(c.abs() < 1e-12);
    }

    #[test]
    fn formula_matches_brackets((x, y, z, _w) in triple()) {
        let q = QuaternionBasis::canonical();
        let b = r_bracket(&x, &y, &z);
        let f = r_formula(&q, &x, &y, &z);
        prop_assert!((&f - &b).norm() < 1e-9 * (x.norm() * y.norm() * z.norm()).max(1e-300));
    }

    #[test]
    fn formula_ignores_quaternion_frame(
        (x, y, z, _w) in triple(),
        axis in prop::array::uniform3(-1.0f64..1.0),
        angle in 0.0f64..6.3,
    ) {
        let q = QuaternionBasis::canonical();
        let rot = q.rotated(rotation(axis, angle));
        prop_assert!(rot.relation_residual() < 1e-12);
        prop_assert!(close(&r_formula(&q, &x, &y, &z), &r_formula(&rot, &x, &y, &z), 1e-10));
    }

    #[test]
    fn kahler_and_quaternionic_structures_are_isometric((x, y, _z, _w) in triple()) {
        let q = QuaternionBasis::canonical();
        let jx = kahler_j(&x);
        prop_assert!((metric(&jx, &kahler_j(&y)) - metric(&x, &y)).abs() < 1e-12);
        prop_assert!(close(&kahler_j(&jx), &-&x, 1e-12));
        for nu in 0..3 {
            let a = q.apply(nu, &x);
            prop_assert!((metric(&a, &x)).abs() < 1e-12);
            prop_assert!(close(&q.apply(nu, &jx), &kahler_j(&a), 1e-12));
        }
    }

    #[test]
    fn sectional_curvature_is_pinched((x, y, _z, _w) in triple()) {
        if let Ok(k) = sectional_curvature(&x, &y, 1e-10) {
            prop_assert!((-4.0 - 1e-9..=1e-9).contains(&k));
        }
    }

    #[test]
    fn brackets_of_p_land_in_k((x, y, _z, _w) in triple()) {
        let b = bracket(&embed_block(&x), &embed_block(&y)).unwrap();
        let (_, p) = cartan_split(&b);
        prop_assert!(p.norm() < 1e-12 * (1.0 + b.norm()));
    }

    #[test]
    fn kahler_angle_of_chamber_vectors(m in 2usize..=5, t in 0.0f64..=std::f64::consts::FRAC_PI_4) {
        let h = weyl_chamber_vector(m, t).unwrap();
        let angle = kahler_angle(&QuaternionBasis::canonical(), &h).unwrap();
        prop_assert!((angle - 2.0 * t).abs() < 1e-9);
    }
}
