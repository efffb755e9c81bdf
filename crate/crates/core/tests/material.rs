mod common;

use common::*;
use gelfem::analytic::linspace;
use gelfem::material::{self, DeformationState, MaterialParams};
use gelfem::voigt;
use gelfem::GelError;
use nalgebra::{Matrix3, Rotation3, Vector3};
use proptest::prelude::*;

#[test]
fn reference_stretch_matches_bisection_oracle() {
    let l0 = material::solve_free_swelling_stretch(NV, CHI, 0.0).unwrap();
    let oracle = oracle_free_swelling(NV, CHI, 0.0);
    assert!(((l0 - oracle) / oracle).abs() < 1e-10, "{l0} vs {oracle}");
    assert!(((l0 - LAMBDA0_SATURATED) / LAMBDA0_SATURATED).abs() < 1e-14);
    assert!(material::free_swelling_residual(NV, CHI, 0.0, l0).abs() < 1e-12);
}

#[test]
fn published_stretch_values() {
    let sat = material::solve_free_swelling_stretch(NV, CHI, 0.0).unwrap();
    assert!((sat - 3.390).abs() / 3.390 < 5e-3);
    // 1.482 belongs to the drier end of the sweep, not to saturation.
    let dry = material::solve_free_swelling_stretch(NV, CHI, -0.05).unwrap();
    assert!(((dry - LAMBDA0_MU_M005) / LAMBDA0_MU_M005).abs() < 1e-14);
    assert!((dry - 1.482).abs() < 1e-3);
    assert!((sat - 1.482).abs() > 1.0);
}

#[test]
fn swelling_increases_with_chemical_potential() {
    let grid = linspace(-0.05, 0.0, 10);
    let l: Vec<f64> = grid
        .iter()
        .map(|&mu| material::solve_free_swelling_stretch(NV, CHI, mu).unwrap())
        .collect();
    assert!(l.windows(2).all(|w| w[1] > w[0]), "{l:?}");
    for (&mu, &li) in grid.iter().zip(&l) {
        assert!(((li - oracle_free_swelling(NV, CHI, mu)) / li).abs() < 1e-10);
    }
}

#[test]
fn parameter_domain_errors() {
    assert!(matches!(
        material::solve_free_swelling_stretch(0.0, CHI, 0.0),
        Err(GelError::ParameterDomain(_))
    ));
    assert!(matches!(
        material::solve_free_swelling_stretch(NV, CHI, 1e-3),
        Err(GelError::ParameterDomain(_))
    ));
    match material::solve_free_swelling_stretch(1e5, CHI, -5.0) {
        Err(GelError::NoRoot { reason, .. }) => assert!(reason.contains("lower bound"), "{reason}"),
        other => panic!("expected NoRoot, got {other:?}"),
    }
}

#[test]
fn energy_at_reference_state() {
    let p = MaterialParams::new(NV, CHI, 0.0).unwrap();
    let w = material::energy(&p, &DeformationState::identity()).unwrap();
    let l0 = p.lambda0;
    let direct = dry_energy_direct(NV, CHI, 0.0, &(Matrix3::identity() * l0)) / l0.powi(3);
    assert!(((w - direct) / direct).abs() < 1e-13, "{w} vs {direct}");
    assert!(((w - ENERGY_AT_REFERENCE) / ENERGY_AT_REFERENCE).abs() < 1e-13);
}

#[test]
fn dry_network_limit_is_minus_chi() {
    // The elastic and chemical terms vanish at F = I but the mixing term
    // tends to −χ, so the energy is bounded and equals zero only for χ = 0.
    for chi in [0.0, 0.1, 0.4] {
        for eps in [1e-6f64, 1e-9, 1e-12] {
            let w = material::dry_energy(NV, chi, -0.01, 3.0 * (1.0 + eps).powi(2), (1.0 + eps).powi(3));
            assert!((w + chi).abs() < 1e-4, "chi {chi}, eps {eps}: {w}");
        }
        assert_eq!(material::dry_energy(NV, chi, -0.01, 3.0, 1.0), -chi);
    }
}

#[test]
fn stress_vanishes_at_reference() {
    for mu0 in [-0.3, -0.05, 0.0] {
        let p = MaterialParams::new(NV, CHI, mu0).unwrap();
        let st = material::stress_and_tangent(&p, &DeformationState::identity()).unwrap();
        assert!(st.s.amax() < 1e-10, "{:?}", st.s);
        assert_eq!(st.d, st.d.transpose());
        let pn = material::nominal_stress(&p, &DeformationState::identity()).unwrap();
        assert!(pn.amax() < 1e-10);
    }
}

#[test]
fn inadmissible_compression_is_rejected() {
    let p = MaterialParams::new(NV, CHI, -0.05).unwrap();
    let s = DeformationState::from_deformation_gradient(Matrix3::identity() / p.lambda0).unwrap();
    for r in [
        material::energy(&p, &s).err(),
        material::stress_and_tangent(&p, &s).err(),
        material::nominal_stress(&p, &s).err(),
    ] {
        match r {
            Some(e @ GelError::Inadmissible { .. }) => assert!(e.to_string().contains("dry network")),
            other => panic!("expected inadmissible error, got {other:?}"),
        }
    }
}

#[test]
fn uniaxial_state_has_zero_transverse_nominal_stress() {
    let p = MaterialParams::new(NV, CHI, 0.0).unwrap();
    let l1 = 1.1 * p.lambda0;
    let l2 = oracle_transverse_stretch(NV, CHI, 0.0, l1, 1.01, p.lambda0);
    assert!(((l2 - LAMBDA2_AT_1P1) / LAMBDA2_AT_1P1).abs() < 1e-12);
    let fp = Matrix3::from_diagonal(&Vector3::new(l1, l2, l2)) / p.lambda0;
    let pn = material::nominal_stress(&p, &DeformationState::from_deformation_gradient(fp).unwrap()).unwrap();
    assert!(pn[(1, 1)].abs() < 1e-8 && pn[(2, 2)].abs() < 1e-8, "{pn}");
    let dry_axial = pn[(0, 0)] * p.lambda0.powi(2);
    assert!(((dry_axial - AXIAL_STRESS_AT_1P1) / AXIAL_STRESS_AT_1P1).abs() < 1e-9);
}

fn admissible_state() -> impl Strategy<Value = (MaterialParams, DeformationState)> {
    (
        -4.0f64..-2.0,
        0.0f64..0.6,
        -0.2f64..0.0,
        -0.02f64..0.02,
        prop::array::uniform9(-0.3f64..0.3),
    )
        .prop_filter_map("inadmissible", |(lnv, chi, mu0, dmu, a)| {
            let p = MaterialParams::new(10f64.powf(lnv), chi, mu0).ok()?.with_mu((mu0 + dmu).min(0.0));
            let fp = Matrix3::identity() + Matrix3::from_row_slice(&a);
            let j = fp.determinant();
            (j > 0.0 && p.lambda0.powi(3) * j > 1.05)
                .then(|| (p, DeformationState::from_deformation_gradient(fp).unwrap()))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stress_is_energy_gradient((p, s) in admissible_state()) {
        let st = material::stress_and_tangent(&p, &s).unwrap();
        let err = rel_err_vec(fd_stress(&p, &s, 1e-6).as_slice(), st.s.as_slice());
        prop_assert!(err < 1e-6, "relative error {err:e}");
    }

    #[test]
    fn tangent_is_stress_gradient((p, s) in admissible_state()) {
        let st = material::stress_and_tangent(&p, &s).unwrap();
        let err = rel_err_vec(fd_tangent(&p, &s, 1e-6).as_slice(), st.d.as_slice());
        prop_assert!(err < 1e-5, "relative error {err:e}");
        prop_assert!((st.d - st.d.transpose()).amax() <= 1e-14 * st.d.amax());
    }

    #[test]
    fn tangent_coefficients_identity((p, s) in admissible_state()) {
        let d = material::invariant_derivatives(&p, &s).unwrap();
        let (d1, d2) = material::tangent_coefficients(&d, s.i3p);
        let rhs = 4.0 * s.i3p * s.i3p * d.d2w_di3;
        prop_assert!((d1 + d2 - rhs).abs() <= 1e-12 * rhs.abs());
        prop_assert_eq!(d2, -4.0 * s.i3p * d.dw_di3);
    }

    #[test]
    fn frame_indifference((p, s) in admissible_state(), axis in prop::array::uniform3(-3.0f64..3.0)) {
        let q = *Rotation3::new(Vector3::from(axis)).matrix();
        let r = DeformationState::from_deformation_gradient(q * s.fp).unwrap();
        let (a, b) = (material::stress_and_tangent(&p, &s).unwrap(), material::stress_and_tangent(&p, &r).unwrap());
        prop_assert!(((a.w - b.w) / a.w).abs() < 1e-12);
        prop_assert!(rel_err_vec(b.s.as_slice(), a.s.as_slice()) < 1e-12);
    }

    #[test]
    fn isotropy((p, s) in admissible_state(), perm in Just([0usize, 1, 2]).prop_shuffle()) {
        let pi = Matrix3::from_fn(|i, j| if perm[i] == j { 1.0 } else { 0.0 });
        let permuted = DeformationState::from_right_cauchy_green(pi.transpose() * s.cp * pi).unwrap();
        let sp = voigt::voigt_to_stress(&material::stress_and_tangent(&p, &permuted).unwrap().s);
        let expected = pi.transpose() * voigt::voigt_to_stress(&material::stress_and_tangent(&p, &s).unwrap().s) * pi;
        prop_assert!((sp - expected).norm() <= 1e-12 * expected.norm());
    }

    #[test]
    fn nominal_stress_is_f_times_s((p, s) in admissible_state()) {
        let pn = material::nominal_stress(&p, &s).unwrap();
        let fs = s.fp * voigt::voigt_to_stress(&material::stress_and_tangent(&p, &s).unwrap().s);
        prop_assert!((pn - fs).norm() <= 1e-10 * pn.norm());
    }

    #[test]
    fn invariants_of_state((_p, s) in admissible_state()) {
        prop_assert!(((s.i3p - s.jp * s.jp) / s.i3p).abs() < 1e-12);
        prop_assert_eq!(s.cp, s.cp.transpose());
        prop_assert!((s.cp * s.cp_inv - Matrix3::identity()).amax() < 1e-12);
    }

    #[test]
    fn energy_by_composition((p, s) in admissible_state()) {
        let l0 = p.lambda0;
        let direct = dry_energy_direct(p.nv, p.chi, p.mu_bar, &(s.fp * l0)) / l0.powi(3);
        let w = material::energy(&p, &s).unwrap();
        prop_assert!((w - direct).abs() <= 1e-12 * direct.abs().max(1e-3));
    }
}
