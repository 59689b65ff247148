use brjuno_core::cf1d::{cf_expand, convergents, ExpandConfig};
use brjuno_core::diophantine::{additive_value, capital_omega_profile, omega, omega_profile, PrecisionConfig, Witness};
use brjuno_core::panel::RandomPanel;
use brjuno_core::{Fixture, Point, Real, Rotated, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn omega_is_non_increasing_and_witnesses_reproduce() {
    let cfg = PrecisionConfig::default();
    let mut panel = RandomPanel::new(11);
    let ms: Vec<i64> = (1..=64).collect();
    for i in 0..100 {
        let z = panel.point(1 + i % 3);
        let prof = omega_profile(&z, &ms, &cfg).unwrap();
        for w in prof.windows(2) {
            assert!(w[1].value_sq.cmp_certain(&w[0].value_sq) != Some(std::cmp::Ordering::Greater), "at {z}");
        }
        for r in &prof {
            let Witness::Additive { k, p } = &r.witness else { panic!("additive witness expected") };
            let (sq, _) = additive_value(&z, k, p).unwrap();
            assert_eq!(sq, r.value_sq);
            assert!(k.weight() <= r.m);
        }
    }
}

#[test]
fn convergents_realise_omega() {
    let cfg = PrecisionConfig::default();
    let mut panel = RandomPanel::new(5);
    for _ in 0..20 {
        let alpha = panel.quadratic_irrational();
        let cf = cf_expand(&alpha, 8, &ExpandConfig::default()).unwrap();
        let conv = convergents(&cf).unwrap();
        let src = Fixture::new("quadratic", vec![alpha.clone()], false);
        for j in 1..=6usize {
            let (p, q) = &conv[j - 1];
            let next: i64 = conv[j].1.clone().try_into().unwrap();
            if next > 2_000_000 {
                break;
            }
            let rec = omega(&src, next - 1, &cfg).unwrap();
            let Witness::Additive { k, p: wp } = &rec.witness else { unreachable!() };
            assert_eq!(BigInt::from(k.coords()[0]), *q, "{alpha:?} level {j}");
            assert_eq!(wp, p);
        }
    }
}

#[test]
fn capital_and_small_omega_stay_in_a_corridor() {
    let cfg = PrecisionConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut lo, mut hi) = (f64::INFINITY, 0f64);
    for _ in 0..12 {
        let coords = (0..2)
            .map(|_| {
                let q = rng.gen_range(101i64..997);
                let re = BigRational::new(rng.gen_range(1..q).into(), q.into());
                let d = rng.gen_range(1000i64..9000);
                let im = BigRational::new(rng.gen_range(1..20i64).into(), d.into());
                Scalar::new(Real::Exact(re), Real::Exact(im))
            })
            .collect();
        let z = Point::new(coords);
        let ms: Vec<i64> = (1..=6).map(|j| 1i64 << j).collect();
        let small = omega_profile(&z, &ms, &cfg).unwrap();
        let big = capital_omega_profile(&Rotated(z.clone()), &ms, &cfg).unwrap();
        for (s, b) in small.iter().zip(&big) {
            let r = b.value_f64() / s.value_f64();
            assert!(r.is_finite() && r > 0.0, "at {z}");
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    assert!(lo > 0.0 && hi < f64::INFINITY);
    eprintln!("Ω/ω corridor on the sample: [{lo:.4}, {hi:.4}]");
}
