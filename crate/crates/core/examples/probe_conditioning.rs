//! Scratch probe for round-trip conditioning under different sampling laws.

use momentlab_core::canonical::*;
use momentlab_core::ensemble::{sample_beta_symmetric, sample_canonical, EnsembleSpec};
use momentlab_core::orthopoly::{hankel_polynomial, monic_from_zeta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn roundtrip_err(p: &[f64]) -> f64 {
    let pv = CanonicalVector::new(p.to_vec()).unwrap();
    let c = canonical_to_moments(&pv).unwrap();
    match moments_to_canonical(&c) {
        Ok(back) => p
            .iter()
            .zip(back.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xABCD);
    for dim in [9usize, 12, 15] {
        for margin in [0.05, 0.1, 0.2, 0.3] {
            let mut max_err: f64 = 0.0;
            for _ in 0..500 {
                let p: Vec<f64> = (0..dim)
                    .map(|_| rng.random_range(margin..1.0 - margin))
                    .collect();
                max_err = max_err.max(roundtrip_err(&p));
            }
            println!("dim={dim} uniform[{margin},{}]: max {max_err:.3e}", 1.0 - margin);
        }
        // ensemble law at order n = (dim+1)/2
        let n = dim / 2 + 1;
        let mut max_err: f64 = 0.0;
        for r in 0..500u64 {
            let s = sample_canonical::<f64>(&EnsembleSpec { n, seed: 7, replicate: r });
            max_err = max_err.max(roundtrip_err(&s.canonical().values()[..dim]));
        }
        println!("dim={dim} ensemble(n={n}): max {max_err:.3e}");
        // beta(4,4) concentrated law
        let mut max_err: f64 = 0.0;
        for _ in 0..500 {
            let p: Vec<f64> = (0..dim)
                .map(|_| sample_beta_symmetric(4.0, &mut rng))
                .collect();
            max_err = max_err.max(roundtrip_err(&p));
        }
        println!("dim={dim} beta(4,4): max {max_err:.3e}");
    }


    // near-center p-start round trips at dim 15, and the c-start direction
    for margin in [0.4, 0.45, 0.49] {
        let mut max_err: f64 = 0.0;
        for _ in 0..500 {
            let p: Vec<f64> = (0..15)
                .map(|_| rng.random_range(margin..1.0 - margin))
                .collect();
            max_err = max_err.max(roundtrip_err(&p));
        }
        println!("dim=15 p-start uniform[{margin},{}]: max {max_err:.3e}", 1.0 - margin);
    }
    for dim in [9usize, 15] {
        let mut max_err: f64 = 0.0;
        for _ in 0..500 {
            let p: Vec<f64> = (0..dim).map(|_| rng.random_range(0.1..0.9)).collect();
            let pv = CanonicalVector::new(p).unwrap();
            let c = canonical_to_moments(&pv).unwrap();
            // c-start: c -> zeta -> p -> back to c
            let z = moments_to_zeta(&c).unwrap();
            let p2 = zeta_to_canonical(&z).unwrap();
            let c2 = canonical_to_moments(&p2).unwrap();
            let err = c
                .values()
                .iter()
                .zip(c2.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            max_err = max_err.max(err);
        }
        println!("dim={dim} c-start uniform[0.1,0.9]: max {max_err:.3e}");
    }
    // zeta round trip margins
    for margin in [0.01, 0.05] {
        let mut max_err: f64 = 0.0;
        for _ in 0..1000 {
            let len = rng.random_range(1..=12);
            let p: Vec<f64> = (0..len)
                .map(|_| rng.random_range(margin..1.0 - margin))
                .collect();
            let pv = CanonicalVector::new(p.clone()).unwrap();
            let back = zeta_to_canonical(&canonical_to_zeta(&pv).unwrap()).unwrap();
            let err = p
                .iter()
                .zip(back.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            max_err = max_err.max(err);
        }
        println!("zeta roundtrip uniform[{margin},{}]: max {max_err:.3e}", 1.0 - margin);
    }

    // hankel vs recurrence under various margins
    for margin in [0.1, 0.2, 0.25, 0.3] {
        let mut max_err: f64 = 0.0;
        for _ in 0..200 {
            let m = rng.random_range(1..=6usize);
            let p: Vec<f64> = (0..2 * m - 1)
                .map(|_| rng.random_range(margin..1.0 - margin))
                .collect();
            let z = canonical_to_zeta(&CanonicalVector::new(p).unwrap()).unwrap();
            let a = monic_from_zeta(&z, m).unwrap();
            let c = zeta_to_moments(&z, 2 * m - 1).unwrap();
            let b = hankel_polynomial(&c, m).unwrap();
            let err = a
                .coeffs()
                .iter()
                .zip(b.coeffs())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            max_err = max_err.max(err);
        }
        println!("hankel m<=6 uniform[{margin},{}]: max {max_err:.3e}", 1.0 - margin);
    }
}

#[allow(dead_code)]
fn extra() {}
