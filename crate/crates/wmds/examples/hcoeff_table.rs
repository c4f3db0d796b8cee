//! Local coefficients H(c; m): prime-power extraction from N(x; lambda) and
//! global assembly by twisted multiplicativity.
//!
//! ```bash
//! cargo run --release --example hcoeff_table
//! ```

use wmds::cartan::{DominantWeight, LatticeVector};
use wmds::arith::Poly;
use wmds::hcoeff::HTable;
use wmds::presets::Preset;

fn main() {
    let preset = Preset::RankOneN2;
    let data = preset.data();
    let ring = preset.ring().unwrap();
    let table = HTable::new(&ring, data, 8).unwrap();
    let m = vec![Poly::one()];

    println!("H(c; 1) over F_5[t], rank one, n = 2, deg c <= 1:");
    for deg in 0..=1u32 {
        for c in ring.monic_polys(deg) {
            let h = table.h_global(std::slice::from_ref(&c), &m).unwrap();
            println!("  H({:>4}; 1) = {}", c.display(), h);
        }
    }

    // Twisted multiplicativity across two primes: the xi cocycle appears.
    let p1 = Poly::t();
    let p2 = Poly(vec![1, 1]);
    let c = vec![ring.poly_mul(&p1, &p2)];
    let product = table.h_global(&c, &m).unwrap();
    let h1 = table.h_global(std::slice::from_ref(&p1), &m).unwrap();
    let h2 = table.h_global(std::slice::from_ref(&p2), &m).unwrap();
    let naive = ring.cyc_field().mul(&h1, &h2);
    println!("\nH(t(t+1); 1)      = {product}");
    println!("H(t; 1) H(t+1; 1) = {naive}");
    println!("ratio is the cocycle xi_B(t, t+1)");

    // The m-dependence: H(c; m m') picks up a bracket of residue symbols.
    let h_twisted = table.h_global(std::slice::from_ref(&p1), std::slice::from_ref(&p2)).unwrap();
    println!("\nH(t; t+1) = {h_twisted}");
    println!("H(t; 1)   = {h1}");

    // Prime powers read off symbolic N coefficients.
    let lambda = DominantWeight::zero(1);
    for k in 0..=3 {
        let v = table.h_prime_power(&p1, &LatticeVector(vec![k]), &lambda).unwrap();
        println!("H(t^{k}; 1) [prime power] = {v}");
    }
}
