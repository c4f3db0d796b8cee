//! Partial sums of the global series Z(s; m, Psi) with Psi = 1, by shells of
//! maximal degree, compared against a direct Gauss-sum evaluation.
//!
//! ```bash
//! cargo run --release --example zsum_partial
//! ```

use num_complex::Complex64;
use wmds::arith::Poly;
use wmds::cartan::HPoint;
use wmds::hcoeff::HTable;
use wmds::presets::Preset;
use wmds::zseries::{z_partial, ZConfig};

fn main() {
    let preset = Preset::RankOneN2;
    let ring = preset.ring().unwrap();
    let table = HTable::new(&ring, preset.data(), 16).unwrap();
    let s = HPoint::real_from_ints(&[3]);

    println!("rank one, n = 2, q0 = 5, s = 3, Psi = 1:");
    for n_max in 0..=3u32 {
        let cfg = ZConfig {
            m: vec![Poly::one()],
            n_max,
            s: s.clone(),
            omega_exponents: None,
        };
        let rep = z_partial(&table, &cfg).unwrap();
        println!(
            "  N_max = {n_max}: Z = {:+.9} {:+.9}i  (top shell {:+.3e})",
            rep.total.re,
            rep.total.im,
            rep.shells[n_max as usize].norm()
        );
    }

    // The N_max = 1 value is 1 + 5^{-s} * (sum of the five deg-1 Gauss sums).
    let mut gauss = Complex64::new(0.0, 0.0);
    for a in 0..5u32 {
        let c = Poly::from_coeffs(vec![a, 1]);
        gauss += ring.gauss_sum(&Poly::one(), &c, 1).to_complex();
    }
    let direct = Complex64::new(1.0, 0.0) + gauss * 5f64.powi(-3);
    println!("direct N_max = 1 value: {:+.9} {:+.9}i", direct.re, direct.im);

    // A rank-two run on the A2 cover.
    let preset = Preset::A2N2;
    let ring = preset.ring().unwrap();
    let table = HTable::new(&ring, preset.data(), 12).unwrap();
    let cfg = ZConfig {
        m: vec![Poly::one(), Poly::one()],
        n_max: 2,
        s: HPoint::real_from_ints(&[3, 3]),
        omega_exponents: None,
    };
    let rep = z_partial(&table, &cfg).unwrap();
    println!("\nA2, n = 2, s = (3,3), N_max = 2: Z = {:+.9} {:+.9}i", rep.total.re, rep.total.im);
    for (k, shell) in rep.shells.iter().enumerate() {
        println!("  shell {k}: {:+.3e}", shell.norm());
    }
}
