use mannheim_core::mannheim::{
    build_pair, predicted_invariants, verify_offset, MannheimParams, ResidualRecord, StrictionOffset,
};
use mannheim_core::dual::DualAngle;
use mannheim_core::lorentz::lorentz_dot;
use mannheim_core::numerics::NumericsConfig;
use mannheim_core::ruled_surface::{default_cone, default_helicoidal, helicoidal};
use mannheim_core::{CurveFn, Vec3L};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_offsets_satisfy_every_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = NumericsConfig::default();
    for _ in 0..8 {
        let a: f64 = rng.gen_range(0.3..0.8);
        let b = (1.0 - a * a).sqrt();
        let spec = helicoidal(a, b, rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), Vec3L::zero(), (0.1, 0.6), 11)
            .unwrap();
        let params = MannheimParams::new(rng.gen_range(1.0..2.0), rng.gen_range(-1.0..1.0)).unwrap();
        let report = verify_offset(&spec, params, StrictionOffset::Binormal, &cfg).unwrap();
        for (n, v) in ResidualRecord::NAMES.iter().zip(report.max_residuals()) {
            assert!(v < 1e-8, "{n}: {v}");
        }
    }
}

#[test]
fn offset_ruling_and_striction_match_the_construction() {
    let pair = build_pair(
        &default_helicoidal((0.0, 1.0), 5),
        MannheimParams::new(1.0, 0.3).unwrap(),
        StrictionOffset::Binormal,
        &NumericsConfig::default(),
    )
    .unwrap();
    for (f, f1) in pair.frames.iter().zip(&pair.offset_frames) {
        let theta = 1.0 - f.s;
        let e1 = f.e * theta.sinh() + f.t * theta.cosh();
        assert!((f1.e - e1).max_abs() < 1e-12);
        assert!((lorentz_dot(&f1.e, &f1.e) + 1.0).abs() < 1e-12);
        let theta_star = 0.3 - 0.1 * f.s;
        assert!((f1.striction_point - (f.striction_point + f.g * theta_star)).max_abs() < 1e-10);
    }
}

#[test]
fn finite_difference_mode_with_a_wider_step() {
    // nested central differences lose digits at the default step; 1e-3
    // balances truncation against roundoff for third derivatives
    let cfg = NumericsConfig { fd_step: 1e-3, ..NumericsConfig::finite_difference() };
    let report = verify_offset(
        &default_helicoidal((0.05, 0.95), 201),
        MannheimParams::new(1.0, 0.0).unwrap(),
        StrictionOffset::Binormal,
        &cfg,
    )
    .unwrap();
    let max = report.max_residuals();
    for name in ["arc_rate", "arc_rate_dual", "big_delta", "delta", "gamma"] {
        let i = ResidualRecord::NAMES.iter().position(|n| *n == name).unwrap();
        assert!(max[i] < 1e-6, "{name}: {}", max[i]);
    }
}

#[test]
fn cone_offsets_keep_constant_distance() {
    let cfg = NumericsConfig::default();
    for (c, c_star) in [(0.4, 0.7), (1.5, -0.2), (2.0, 0.0)] {
        let report = verify_offset(
            &default_cone((0.1, 0.9), 9),
            MannheimParams::new(c, c_star).unwrap(),
            StrictionOffset::Binormal,
            &cfg,
        )
        .unwrap();
        assert!(report.developability.base_developable);
        assert!(report.developability.offset_distance_constant);
        assert!(report.developability.consistent());
    }
    // a non-developable base does not keep its offset distance
    let report = verify_offset(
        &default_helicoidal((0.1, 0.9), 9),
        MannheimParams::new(1.0, 0.0).unwrap(),
        StrictionOffset::Binormal,
        &cfg,
    )
    .unwrap();
    assert!(!report.developability.base_developable && !report.developability.offset_distance_constant);
}

#[test]
fn dual_radius_magnitude_relation() {
    for (theta, theta_star) in [(0.5, -0.05), (-1.2, 0.4), (2.0, 3.0)] {
        let p = predicted_invariants(0.75, 0.2, 0.1, DualAngle::new(theta, theta_star)).unwrap();
        let want = f64::abs(theta_star) * f64::abs(theta).sinh();
        assert!((p.radius.du.abs() - want).abs() < 1e-12);
    }
}

#[test]
fn offset_indicatrix_speed_is_the_arc_rate() {
    let pair = build_pair(
        &default_helicoidal((0.1, 0.9), 5),
        MannheimParams::new(1.0, 0.0).unwrap(),
        StrictionOffset::Binormal,
        &NumericsConfig::default(),
    )
    .unwrap();
    let h = 1e-5;
    for f in &pair.frames {
        let u = f.parameter;
        let d = (pair.offset_spec.indicatrix.at(u + h) - pair.offset_spec.indicatrix.at(u - h)) / (2.0 * h);
        let speed = lorentz_dot(&d, &d).abs().sqrt();
        assert!((speed - 0.75 * (1.0 - f.s).cosh()).abs() < 1e-8);
    }
}
