//! The three regimes of Riemann sums twisted by roots of unity.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wrt_limits::asymptotics::{fourier_integral, h_sum_angle, regime_classify, PiecewisePoly, Regime, RootRule};

fn main() -> wrt_limits::Result<()> {
    let third = BigRational::new(1.into(), 3.into());
    let zero = BigRational::from_integer(0.into());
    let functions = [
        ("tent", PiecewisePoly::tent()),
        ("random cubic", PiecewisePoly::random_cubic(&mut ChaCha8Rng::seed_from_u64(1), 4)?),
    ];
    let cases: [(&str, &BigRational, f64, RootRule); 3] = [
        ("u = e^(iπ/3), offset 1", &third, 1.0 / 3.0, RootRule::Offset { sigma: 1 }),
        ("u = 1, θ_p = p^(-1/2)", &zero, 0.0, RootRule::PowerLaw { exponent: 0.5 }),
        ("u = 1, offset 1", &zero, 0.0, RootRule::Offset { sigma: 1 }),
    ];
    for (fname, f) in &functions {
        for (label, u, u_f, rule) in &cases {
            let regime = regime_classify(u, 1, *rule)?;
            let limit = match regime {
                Regime::Case3 { sigma } => fourier_integral(f, sigma),
                _ => Complex64::new(0.0, 0.0),
            };
            println!("{fname}, {label}: {regime:?}, limit {:.6}", limit.re);
            for p in [50u32, 100, 200, 400] {
                let theta = match rule {
                    RootRule::PowerLaw { exponent } => (p as f64).powf(-exponent),
                    _ => 1.0 / p as f64,
                };
                let h = h_sum_angle(f, 1, p, u_f + theta);
                println!("  p = {p:>3}: |H - limit| = {:.3e}", (h - limit).norm());
            }
        }
    }
    Ok(())
}
