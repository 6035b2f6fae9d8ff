mod common;

use dimer_entanglement::analysis::{
    critical_field, existence_bound_k, negativity_crossing, threshold_temperature_numeric,
    threshold_temperature_zero_field, DEFAULT_BISECTION_TOL,
};
use dimer_entanglement::entanglement::{negativity, negativity_at};
use dimer_entanglement::linalg::{
    commutator, hermitian_eig, kron, partial_transpose_a, partial_transpose_b, trace_norm_hermitian,
};
use dimer_entanglement::model::{analytic_spectrum, basis_index, build_hamiltonian};
use dimer_entanglement::thermal::{
    gibbs_state, gibbs_state_from_levels, partition_function, DensityMatrix,
};
use dimer_entanglement::{ComplexMatrixF64, DensityMatrixF64, ModelParamsF64, Param};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_hermitian, random_unitary, sorted};

fn params(j: f64, k: f64, b: f64, t: f64) -> ModelParamsF64 {
    ModelParamsF64::new(j, k, b, t).unwrap()
}

fn integer_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrixF64 {
    use rand::Rng;
    ComplexMatrixF64::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-9..=9) as f64, rng.gen_range(-9..=9) as f64)
    })
}

fn coupling() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs_random_hermitian(seed in any::<u64>(), dim in 1usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_hermitian(&mut rng, dim);
        let s = hermitian_eig(&m, 1e-12).unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(&m) <= 100.0 * 1e-12);
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = s.eigenvalues.iter().sum();
        prop_assert!((sum - m.trace().re).abs() <= 10.0 * 1e-12 * dim as f64);
    }

    #[test]
    fn kron_is_associative(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Small Gaussian-integer entries keep every product exact.
        let (a, b, c) = (
            integer_matrix(&mut rng, da),
            integer_matrix(&mut rng, db),
            integer_matrix(&mut rng, dc),
        );
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_hermitian(&mut rng, 9);
        let pt = partial_transpose_a(&m, 3, 3).unwrap();
        prop_assert_eq!(pt.trace(), m.trace());
        prop_assert_eq!(pt.adjoint(), pt.clone());
        prop_assert_eq!(partial_transpose_a(&pt, 3, 3).unwrap(), m.clone());
        // Transposing both sides is the full transpose.
        prop_assert_eq!(partial_transpose_b(&pt, 3, 3).unwrap(), m.transpose());
    }

    #[test]
    fn trace_norm_of_psd_is_trace(seed in any::<u64>(), dim in 1usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_hermitian(&mut rng, dim);
        let m = &x * &x.adjoint();
        let tn = trace_norm_hermitian(&m, 1e-12).unwrap();
        prop_assert!((tn - m.trace().re).abs() <= 1e-10 * tn.max(1.0));
    }

    #[test]
    fn analytic_states_are_eigenvectors(j in coupling(), k in coupling(), b in coupling()) {
        let p = params(j, k, b, 1.0);
        let h = build_hamiltonian(&p);
        for level in analytic_spectrum(&p).levels {
            let hv = h.apply(&level.state);
            let res = hv
                .iter()
                .zip(&level.state)
                .map(|(x, v)| (*x - *v * level.energy).norm_sqr())
                .sum::<f64>()
                .sqrt();
            prop_assert!(res <= 1e-12, "level {} residual {res:e}", level.label);
        }
    }

    #[test]
    fn spectrum_is_symmetric_under_field_flip(j in coupling(), k in coupling(), b in coupling()) {
        let up = sorted(analytic_spectrum(&params(j, k, b, 1.0)).energies());
        let down = sorted(analytic_spectrum(&params(j, k, -b, 1.0)).energies());
        for (a, c) in up.iter().zip(&down) {
            prop_assert!((a - c).abs() <= 1e-14);
        }
        let up = analytic_spectrum(&params(j, k, b, 1.0));
        let down = analytic_spectrum(&params(j, k, -b, 1.0));
        for (x, y) in [(1, 2), (3, 4), (7, 8), (5, 5), (6, 6), (9, 9)] {
            prop_assert_eq!(up.level(x).energy, down.level(y).energy);
        }
    }

    #[test]
    fn gibbs_state_commutes_with_hamiltonian(
        j in coupling(), k in coupling(), b in coupling(), t in 0.05f64..5.0,
    ) {
        let p = params(j, k, b, t);
        let rho = gibbs_state(&p).unwrap();
        prop_assert!(commutator(rho.matrix(), &build_hamiltonian(&p)).max_abs() <= 1e-10);
    }

    #[test]
    fn purity_is_bounded(j in coupling(), k in coupling(), b in coupling(), t in 0.01f64..50.0) {
        let purity = gibbs_state(&params(j, k, b, t)).unwrap().purity();
        prop_assert!(purity > 1.0 / 9.0 - 1e-12 && purity <= 1.0 + 1e-12);
    }

    #[test]
    fn energy_shift_invariance(
        j in coupling(), k in coupling(), b in coupling(), t in 0.05f64..5.0, c in -3.0f64..3.0,
    ) {
        let p = params(j, k, b, t);
        let spec = analytic_spectrum(&p);
        let mut shifted = spec.levels.clone();
        for l in &mut shifted {
            l.energy += c;
        }
        let a = gibbs_state_from_levels(&spec.levels, t).unwrap();
        let s = gibbs_state_from_levels(&shifted, t).unwrap();
        prop_assert!(a.matrix().max_abs_diff(s.matrix()) <= 1e-12);
        let z = partition_function(&p).unwrap();
        let z_shift: f64 = shifted.iter().map(|l| (-l.energy / t).exp()).sum();
        prop_assert!((z_shift / (z * (-c / t).exp()) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn negativity_is_nonnegative_and_field_symmetric(
        j in coupling(), k in coupling(), b in coupling(), t in 0.02f64..5.0,
    ) {
        let p = params(j, k, b, t);
        let up = negativity_at(&p).unwrap();
        let down = negativity_at(&p.with_field(-b)).unwrap();
        prop_assert!(up >= 0.0);
        prop_assert!((up - down).abs() <= 1e-12);
    }

    #[test]
    fn negativity_is_local_unitary_invariant(
        seed in any::<u64>(), j in coupling(), k in coupling(), b in coupling(), t in 0.05f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = gibbs_state(&params(j, k, b, t)).unwrap();
        let w = kron(&random_unitary(&mut rng, 3), &random_unitary(&mut rng, 3));
        let rotated = DensityMatrixF64::new(&(&w * rho.matrix()) * &w.adjoint()).unwrap();
        let a = negativity(&rho).unwrap().negativity;
        let r = negativity(&rotated).unwrap().negativity;
        prop_assert!((a - r).abs() <= 1e-10);
    }

    #[test]
    fn separable_mixtures_have_zero_negativity(
        weights in proptest::collection::vec(0.0f64..1.0, 9),
        seed in any::<u64>(),
    ) {
        let total: f64 = weights.iter().sum();
        prop_assume!(total > 1e-3);
        let diag: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let rho = DensityMatrix::new(ComplexMatrixF64::from_real_diag(&diag)).unwrap();
        prop_assert_eq!(negativity(&rho).unwrap().negativity, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_unitary(&mut rng, 3), random_unitary(&mut rng, 3));
        let a: Vec<Complex64> = (0..3).map(|i| u[(i, 0)]).collect();
        let b: Vec<Complex64> = (0..3).map(|i| v[(i, 0)]).collect();
        let product: Vec<Complex64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let pure = DensityMatrix::pure(&product).unwrap();
        prop_assert_eq!(negativity(&pure).unwrap().negativity, 0.0);
    }
}

#[test]
fn maximally_mixed_is_separable() {
    let rho = DensityMatrixF64::maximally_mixed(9);
    assert_eq!(negativity(&rho).unwrap().negativity, 0.0);
}

#[test]
fn pure_eigenstates_follow_schmidt_form() {
    let spec = analytic_spectrum(&params(0.3, -1.1, 0.2, 1.0));
    for level in &spec.levels {
        let oracle = common::schmidt_negativity(&level.state);
        let got = negativity(&DensityMatrix::pure(&level.state).unwrap())
            .unwrap()
            .negativity;
        assert!((got - oracle).abs() <= 1e-12, "level {}", level.label);
    }
    let psi5 = &spec.level(5).state;
    assert!((psi5[basis_index(0, 0)].re - 2.0 / 6f64.sqrt()).abs() < 1e-15);
}

fn clean_crossing(j: f64, k: f64, bc: f64) -> bool {
    let gapped = |b: f64, ground: u8| {
        let spec = analytic_spectrum(&params(j, k, b, 1.0));
        let e0 = spec.level(ground).energy;
        spec.levels
            .iter()
            .filter(|l| l.label != 8 && l.label != 9)
            .all(|l| l.energy - e0 > 0.02)
    };
    gapped(bc - 0.02, 9) && gapped(bc + 0.02, 8)
}

#[test]
fn critical_field_separates_entangled_and_product_ground_states() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let j: f64 = rng.gen_range(-2.0..2.0);
        let k: f64 = rng.gen_range(-2.0..2.0);
        let bc = critical_field(j, k);
        // Only couplings where the crossing at B_c is the singlet-like level
        // giving way to |-1,-1>, with every other level kept clear.
        if j - k <= 0.0 || !clean_crossing(j, k, bc) {
            continue;
        }
        checked += 1;
        let below = negativity_at(&params(j, k, bc - 0.02, 1e-3)).unwrap();
        let above = negativity_at(&params(j, k, bc + 0.02, 1e-3)).unwrap();
        assert!(below > 0.9, "J={j} K={k}: N(B_c-0.02) = {below}");
        assert!(above < 1e-6, "J={j} K={k}: N(B_c+0.02) = {above}");
    }
}

#[test]
fn numeric_boundary_matches_existence_bound() {
    for t in [0.1, 0.2, 0.3, 0.4] {
        let k = negativity_crossing(
            params(-0.4, -0.6, 0.0, t),
            Param::Biquadratic,
            -1.5,
            0.0,
            DEFAULT_BISECTION_TOL,
        )
        .unwrap()
        .value;
        let bound = existence_bound_k(-0.4, t).unwrap();
        assert!((k - bound).abs() <= 5e-3, "T={t}: {k} vs {bound}");
    }
}

#[test]
fn zero_field_threshold_is_monotonic_in_biquadratic() {
    let tc: Vec<f64> = [-0.45, -0.55, -0.65, -0.75, -0.85, -0.95]
        .iter()
        .map(|&k| {
            threshold_temperature_zero_field(-0.4, k, DEFAULT_BISECTION_TOL)
                .unwrap()
                .value
        })
        .collect();
    assert!(tc.windows(2).all(|w| w[1] > w[0]), "{tc:?}");
}

/// T_c at J=-0.4 for K = -0.45, -0.50, ..., -1.40 (increasing |K|).
fn numeric_thresholds(field: f64) -> Vec<f64> {
    (0..=19)
        .map(|i| -0.45 - 0.05 * i as f64)
        .map(|k| {
            threshold_temperature_numeric(-0.4, k, field, DEFAULT_BISECTION_TOL)
                .unwrap()
                .value
        })
        .collect()
}

#[test]
#[ignore = "does not hold: the upper threshold temperature is independent of B (see numeric_threshold_ignores_field)"]
fn threshold_is_not_monotonic_with_field() {
    let tc = numeric_thresholds(0.5);
    assert!(tc.windows(2).any(|w| w[1] < w[0]), "{tc:?}");
}

#[test]
fn numeric_threshold_ignores_field() {
    // Where N reaches exactly zero does not depend on B; the 1e-6 detection
    // level shifts it slightly, most at small T_c.
    let zero = numeric_thresholds(0.0);
    let half = numeric_thresholds(0.5);
    for (a, b) in zero.iter().zip(&half) {
        assert!((a - b).abs() < 1e-3, "{a} vs {b}");
    }
    assert!(half.windows(2).all(|w| w[1] > w[0]), "{half:?}");
}
