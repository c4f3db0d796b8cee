//! The Freudenthal oracle and the n = 1 reduction: the deformed character
//! collapses to the Weyl-Kac character under q x^{alpha_i} -> z^{-alpha_i}.
//!
//! ```bash
//! cargo run --release --example character_oracle
//! ```

use wmds::action::ActionContext;
use wmds::cartan::{CartanData, DominantWeight};
use wmds::charfn;
use wmds::roots::RootTable;

fn main() {
    // Weight multiplicities of the adjoint representation of A2.
    let a2 = CartanData::new(vec![vec![2, -1], vec![-1, 2]], 1).unwrap();
    let table = RootTable::generate(&a2, 6);
    let rho = DominantWeight::rho(2);
    let chars = charfn::freudenthal(&a2, &table, &rho, 4).unwrap();
    println!("V(rho) for A2 (the adjoint): offset, depth, multiplicity");
    print!("{}", chars.dump_csv());

    // Affine level-1 module: infinitely many weights, graded dimensions.
    let affine = CartanData::new(vec![vec![2, -2], vec![-2, 2]], 1).unwrap();
    let table = RootTable::generate(&affine, 6);
    let omega = DominantWeight::fundamental(2, 0);
    let chars = charfn::freudenthal(&affine, &table, &omega, 6).unwrap();
    println!("\nV(omega_1) for affine A1(1), offsets to depth 6:");
    print!("{}", chars.dump_csv());

    // The comparison: both sides computed independently, exact equality.
    for (data, name) in [(a2, "A2"), (affine, "affine A1(1)")] {
        let ctx = ActionContext::new(data, omega.clone(), 6).unwrap();
        let report = charfn::compare_n1(&ctx, 6).unwrap();
        println!(
            "\n{name}: n = 1 reduction vs Freudenthal at cap 6: {} ({} offsets compared)",
            if report.ok { "match" } else { "MISMATCH" },
            report.checked
        );
    }
}
