use std::time::Instant;

use brjuno_core::brjuno::{
    brjuno_sum, holder_from_sequence, max_regime_delta, sandwich, TrendConfig, Variant,
};
use brjuno_core::diophantine::{plateau_sequence, PrecisionConfig};
use brjuno_core::panel::RandomPanel;
use brjuno_core::{Error, Fixture, Number, PointSource, Rotated};

#[test]
fn sandwich_and_holder_on_random_panel() {
    let cfg = PrecisionConfig::default();
    let mut panel = RandomPanel::new(2024);
    let t = Instant::now();
    let mut accepted = 0;
    for i in 0..60 {
        if accepted == 30 {
            break;
        }
        let n = 1 + i % 3;
        let z = panel.point(n);
        let s = match sandwich(&z, 12, &cfg) {
            Err(Error::Resonant(_)) => continue,
            r => r.unwrap(),
        };
        assert!(s.holds, "sandwich fails at {z}");
        let seq = plateau_sequence(&z, 12, &cfg).unwrap();
        for eps in [0.5, 1.0, 2.0] {
            let delta = max_regime_delta(n, eps);
            match holder_from_sequence(&seq, n, eps, delta) {
                Ok(h) => assert!(h.holds && h.in_regime, "Hölder fails at {z}, ε={eps}"),
                Err(Error::NotApplicable(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        accepted += 1;
    }
    assert_eq!(accepted, 30);
    assert!(t.elapsed().as_secs() < 120);
}

#[test]
fn rotation_and_log_image_classify_alike() {
    let cfg = PrecisionConfig::default();
    let trend = TrendConfig::default();
    let mut panel = RandomPanel::new(77);
    let mut cases: Vec<(Box<dyn PointSource>, Box<dyn PointSource>)> = vec![
        (Box::new(Fixture::golden(1)), Box::new(Fixture::golden_rotation(1))),
        (Box::new(Fixture::golden(2)), Box::new(Fixture::golden_rotation(2))),
        (Box::new(Fixture::non_brjuno(1)), Box::new(Fixture::new("nb-rot", vec![Number::NonBrjuno], true))),
    ];
    while cases.len() < 20 {
        let n = 2 + cases.len() % 2;
        let z = panel.complex_point(n);
        cases.push((Box::new(z.clone()), Box::new(Rotated(z))));
    }
    for (z, lambda) in &cases {
        let a = brjuno_sum(z.as_ref(), 8, Variant::Omega, &cfg, &trend).unwrap();
        let b = brjuno_sum(lambda.as_ref(), 8, Variant::CapitalOmega, &cfg, &trend).unwrap();
        assert_eq!(a.status, b.status, "{} vs {}: {:?} / {:?}", z.label(), lambda.label(), a.partial_sums, b.partial_sums);
    }
}
