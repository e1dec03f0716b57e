use ncgrass::linalg::{
    dot, group_eigenvalues, hermitian_eig, max_principal_angle, orthonormalize, projection_residual, symmetric_eig,
    ComplexMatrix, RealMatrix, C64,
};
use proptest::prelude::*;

fn hermitian(n: usize, entries: &[f64]) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let z = if i == j {
                C64::new(entries[k], 0.0)
            } else {
                C64::new(entries[k], entries[k + 1])
            };
            k += 2;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

fn symmetric(n: usize, entries: &[f64]) -> RealMatrix {
    let at = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        entries[i * n - i * (i + 1) / 2 + j]
    };
    RealMatrix::from_fn(n, n, at)
}

fn hermitian_strategy() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=8)
        .prop_flat_map(|n| prop::collection::vec(-10.0f64..10.0, n * (n + 1)).prop_map(move |e| hermitian(n, &e)))
}

fn symmetric_strategy() -> impl Strategy<Value = RealMatrix> {
    (1usize..=10)
        .prop_flat_map(|n| prop::collection::vec(-5.0f64..5.0, n * (n + 1) / 2).prop_map(move |e| symmetric(n, &e)))
}

/// Symmetric matrix with prescribed integer eigenvalues (so with repeats),
/// conjugated by the eigenvectors of a random symmetric matrix.
fn degenerate_strategy() -> impl Strategy<Value = (RealMatrix, Vec<f64>)> {
    (2usize..=8).prop_flat_map(|n| {
        (
            prop::collection::vec(-3i32..=3, n),
            prop::collection::vec(-5.0f64..5.0, n * (n + 1) / 2),
        )
            .prop_map(move |(vals, e)| {
                let q = symmetric_eig(&symmetric(n, &e), 1e-9).unwrap().vectors;
                let vals: Vec<f64> = vals.into_iter().map(f64::from).collect();
                let a = RealMatrix::from_fn(n, n, |i, j| (0..n).map(|k| vals[k] * q[k][i] * q[k][j]).sum());
                (a, vals)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_eig_reconstructs(a in hermitian_strategy()) {
        let n = a.rows();
        let eig = hermitian_eig(&a, 1e-9).unwrap();
        let d = ComplexMatrix::from_fn(n, n, |i, j| if i == j { C64::new(eig.values[i], 0.0) } else { C64::new(0.0, 0.0) });
        let back = &(&eig.vectors * &d) * &eig.vectors.adjoint();
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!(back.max_abs_diff(&a) < 1e-10 * scale);
        let gram = &eig.vectors.adjoint() * &eig.vectors;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = eig.values.iter().sum();
        prop_assert!((trace - a.trace().re).abs() < 1e-10 * scale);
    }

    #[test]
    fn symmetric_eig_pairs_are_eigenpairs(a in symmetric_strategy()) {
        let eig = symmetric_eig(&a, 1e-9).unwrap();
        let scale = a.frobenius_norm().max(1.0);
        for (l, v) in eig.values.iter().zip(&eig.vectors) {
            let av = a.apply(v);
            let r = av.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(r < 1e-10 * scale);
        }
    }

    #[test]
    fn grouping_recovers_repeated_eigenvalues((a, mut vals) in degenerate_strategy()) {
        let eig = symmetric_eig(&a, 1e-9).unwrap();
        let table = group_eigenvalues(&eig.values, &eig.vectors, 1e-7).unwrap();
        prop_assert_eq!(table.multiplicities().iter().sum::<usize>(), a.rows());
        vals.sort_by(f64::total_cmp);
        let got = table.multiset();
        prop_assert_eq!(got.len(), vals.len());
        for (g, v) in got.iter().zip(&vals) {
            prop_assert!((g - v).abs() < 1e-9);
        }
        prop_assert!(table.orthonormality_residual() < 1e-10);
    }

    #[test]
    fn orthonormalize_spans_input(
        vs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 6), 1..8)
    ) {
        let q = orthonormalize(&vs, |a: &Vec<f64>, b: &Vec<f64>| dot(a, b), 1e-10);
        prop_assert!(q.len() <= vs.len().min(6));
        for (i, a) in q.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(a, b) - want).abs() < 1e-12);
            }
        }
        for v in &vs {
            prop_assert!(projection_residual(&q, v) < 1e-8);
        }
    }

    #[test]
    fn principal_angle_ignores_basis_choice(
        vs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 7), 1..5),
        mix in prop::collection::vec(-2.0f64..2.0, 25),
    ) {
        let a = orthonormalize(&vs, |x: &Vec<f64>, y: &Vec<f64>| dot(x, y), 1e-8);
        let k = a.len();
        let mixed: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                let mut v = a[i].clone();
                for (j, b) in a.iter().enumerate() {
                    let c = if i == j { 3.0 } else { mix[i * 5 + j] * 0.3 };
                    v.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
                }
                v
            })
            .collect();
        let b = orthonormalize(&mixed, |x: &Vec<f64>, y: &Vec<f64>| dot(x, y), 1e-8);
        prop_assert_eq!(b.len(), k);
        prop_assert!(max_principal_angle(&a, &b) < 1e-7);
    }
}
