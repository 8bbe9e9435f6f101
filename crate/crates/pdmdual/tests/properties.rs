//! Randomized invariants: properties that must hold across parameter ranges,
//! not just at the benchmark values used by the acceptance checks.

use num_complex::Complex64;
use proptest::prelude::*;

use pdmdual::analytic::{energy_level, energy_threshold, hermite, EigenState};
use pdmdual::fd::Stencil;
use pdmdual::hamiltonian::{
    gauge_function, map_omega_to_psi, map_psi_to_omega, CaseId, CaseSpec, DualHamiltonian,
};
use pdmdual::model::{Grid, MassProfile, ModelParameters};
use pdmdual::solver::{quadrature, weighted_quadrature};
use pdmdual::verify::seeded_hermite_gaussian_mix;

fn any_case() -> impl Strategy<Value = CaseId> {
    prop_oneof![Just(CaseId::A), Just(CaseId::B), Just(CaseId::C)]
}

proptest! {
    /// Position scaling and deformation-parameter conversion invert exactly
    /// up to rounding for any physical parameter choice.
    #[test]
    fn unit_conversions_round_trip(
        hbar in 1e-3..1e3f64,
        m0 in 1e-3..1e3f64,
        k in 1e-3..1e3f64,
        gamma in 0.0..10.0f64,
        x in -1e3..1e3f64,
    ) {
        let params = ModelParameters::new(hbar, m0, k, gamma).unwrap();
        let back = params.unscale_position(params.scale_position(x));
        prop_assert!((back - x).abs() <= 1e-14 * x.abs().max(1.0));
        let gt = params.gamma_tilde();
        let again = params.gamma_from_tilde(gt);
        prop_assert!((again - gamma).abs() <= 1e-12 * gamma.abs().max(1.0));
    }

    /// The closed-form ladder is strictly increasing and strictly below its
    /// accumulation threshold throughout the deformation range.
    #[test]
    fn ladder_is_monotone_and_bounded(
        case in any_case(),
        gt in 0.01..0.45f64,
    ) {
        let threshold = energy_threshold(case, gt).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for n in 0..=200 {
            let e = energy_level(case, n, gt).unwrap();
            prop_assert!(e > prev, "case {case} n {n}: {e} <= {prev}");
            prop_assert!(e < threshold, "case {case} n {n}: {e} >= {threshold}");
            prev = e;
        }
    }

    /// Levels converge to the undeformed ladder n + 1/2 linearly in the
    /// deformation, with slope bounded by (N² + 8)/4, N = 2n + 1.
    #[test]
    fn levels_are_continuous_at_zero_deformation(
        case in any_case(),
        gt in 1e-12..1e-6f64,
        n in 0usize..10,
    ) {
        let e = energy_level(case, n, gt).unwrap();
        let nn = (2 * n + 1) as f64;
        let bound = 0.3 * gt * (nn * nn + 8.0) + 1e-12;
        prop_assert!((e - (n as f64 + 0.5)).abs() <= bound);
    }

    /// The closed-form gauge satisfies its defining equation
    /// g' = -alpha f m g at arbitrary points and deformations.
    #[test]
    fn gauge_satisfies_its_equation(
        case in any_case(),
        gt in 0.0..0.5f64,
        y in -3.0..3.0f64,
    ) {
        let mass = MassProfile::new(gt).unwrap();
        let spec = CaseSpec::preset(case, gt).unwrap();
        let gauge = gauge_function(&spec, &mass).unwrap();
        let scale = gauge.g_prime(y).abs().max(1.0);
        prop_assert!(gauge.ode_residual(&spec, &mass, y).abs() <= 1e-12 * scale);
    }

    /// Mapping an arbitrary complex function to the dual frame and back is
    /// the identity.
    #[test]
    fn similarity_map_round_trips(
        case in any_case(),
        gt in 0.0..0.45f64,
        coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..8),
    ) {
        let grid = Grid::new(-6.0, 6.0, 301).unwrap();
        let mass = MassProfile::new(gt).unwrap();
        let spec = CaseSpec::preset(case, gt).unwrap();
        let gauge = gauge_function(&spec, &mass).unwrap();
        let psi: Vec<Complex64> = grid
            .nodes()
            .iter()
            .map(|&y| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &(re, im)) in coeffs.iter().enumerate() {
                    acc += Complex64::new(re, im) * hermite(k, y);
                }
                acc * (-0.5 * y * y).exp()
            })
            .collect();
        let omega = map_psi_to_omega(&gauge, &mass, &grid, &psi).unwrap();
        let back = map_omega_to_psi(&gauge, &mass, &grid, &omega).unwrap();
        let scale = psi.iter().map(|v| v.norm()).fold(1e-30, f64::max);
        for (b, p) in back.iter().zip(&psi) {
            prop_assert!((b - p).norm() <= 1e-13 * scale);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The dual-frame norm of every bound state equals the gauge-weighted
    /// norm of the original eigenfunction.
    #[test]
    fn norms_are_isometric(
        case in any_case(),
        gt in 0.0..0.45f64,
        n in 0usize..5,
    ) {
        let grid = Grid::new(-12.0, 12.0, 2001).unwrap();
        let state = EigenState::normalized(case, n, gt, &grid).unwrap();
        let h = grid.spacing();
        let mass = MassProfile::new(gt).unwrap();
        let spec = CaseSpec::preset(case, gt).unwrap();
        let gauge = gauge_function(&spec, &mass).unwrap();
        let omega_sq: Vec<f64> = state
            .sample_omega(&grid)
            .unwrap()
            .iter()
            .map(|v| v * v)
            .collect();
        let psi_sq: Vec<f64> = state
            .sample_psi(&grid)
            .unwrap()
            .iter()
            .map(|v| v * v)
            .collect();
        let weights: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&y| gauge.g(y) * mass.m(y))
            .collect();
        let flat = quadrature(&omega_sq, h).unwrap();
        let weighted = weighted_quadrature(&psi_sq, &weights, h).unwrap();
        prop_assert!((flat - 1.0).abs() <= 1e-10);
        prop_assert!((flat - weighted).abs() <= 1e-12);
    }

    /// Every dual Hamiltonian has an even effective potential, so it
    /// commutes with parity: reflecting before applying equals applying
    /// then reflecting.
    #[test]
    fn dual_commutes_with_parity(
        case in any_case(),
        gt in 0.0..0.45f64,
        seed in any::<u64>(),
    ) {
        let grid = Grid::new(-6.0, 6.0, 1201).unwrap();
        let dual = DualHamiltonian::preset(case, gt).unwrap();
        let psi = seeded_hermite_gaussian_mix(seed, 5, &grid);
        let reflected: Vec<Complex64> = psi.iter().rev().copied().collect();
        let applied = dual.apply_expanded(&psi, &grid, Stencil::FivePoint).unwrap();
        let applied_reflected = dual
            .apply_expanded(&reflected, &grid, Stencil::FivePoint)
            .unwrap();
        let scale = applied
            .iter()
            .map(|v| v.norm())
            .fold(1e-30, f64::max);
        let last = grid.n_points() - 1;
        for i in 2..grid.n_points() - 2 {
            let mirrored = applied_reflected[last - i];
            prop_assert!(
                (applied[i] - mirrored).norm() <= 1e-9 * scale,
                "node {i}: {:?} vs {:?}",
                applied[i],
                mirrored
            );
        }
    }
}
