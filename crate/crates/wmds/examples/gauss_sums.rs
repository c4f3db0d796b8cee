//! The function-field arithmetic backend: residue symbols, Gauss sums, and
//! the relations the engine relies on.
//!
//! ```bash
//! cargo run --release --example gauss_sums
//! ```

use wmds::arith::{FFRing, Poly};
use wmds::rat;

fn main() {
    let ring = FFRing::new(5, 1, 2).unwrap();
    let field = ring.cyc_field();
    let t = Poly::t();

    println!("F_5[t], n = 2 (quadratic residue symbols):");
    for a in 1..5u32 {
        let f = Poly::constant(a);
        let sym = ring.residue_symbol(&f, &t).unwrap();
        println!("  ({a}/t) = {sym}");
    }

    let g = ring.gauss_sum(&Poly::one(), &t, 1);
    println!("\ng(1, t; 1) = {g} ~ {:.6}", g.to_complex().re);
    println!("g(1, t; 1)^2 = {}", field.mul(&g, &g));
    println!("|g|^2 = {}", field.norm_squared(&g));

    // The gamma values the symbolic engine specializes to.
    let q = rat(5);
    let gamma1 = field.scale(&g, &(rat(1) / &q));
    println!("gamma(1) = g/q satisfies gamma(1)^2 = {}", field.mul(&gamma1, &gamma1));

    // Ramanujan case: a trivial symbol power gives -1 at any prime.
    println!("g(1, t; 0) = {}", ring.gauss_sum(&Poly::one(), &t, 0));

    // Degree-2 primes over F_13 keep the norm relation |g|^2 = q0^2.
    let ring13 = FFRing::new(13, 1, 2).unwrap();
    let prime = &ring13.irreducibles(2)[0];
    let g2 = ring13.gauss_sum(&Poly::one(), prime, 1);
    println!(
        "\nF_13[t]: |g(1, {}; 1)|^2 = {}",
        prime.display(),
        ring13.cyc_field().norm_squared(&g2)
    );

    // Monic reciprocity in the q0 = 1 mod 2n regime.
    let f = Poly(vec![2, 1]);
    let h = Poly(vec![2, 0, 1]);
    println!(
        "reciprocity: ({}/{}) = ({}/{}) = {}",
        f.display(),
        h.display(),
        h.display(),
        f.display(),
        ring.residue_symbol(&f, &h).unwrap()
    );
    assert_eq!(
        ring.residue_symbol(&f, &h).unwrap(),
        ring.residue_symbol(&h, &f).unwrap()
    );
}
