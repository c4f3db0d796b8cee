//! Root generation with multiplicities: finite, affine, and hyperbolic
//! systems side by side.
//!
//! ```bash
//! cargo run --release --example roots_table
//! ```

use wmds::presets::Preset;
use wmds::roots::{lemma_checks, QPrimeLattice, RootTable};

fn main() {
    for preset in [Preset::A2N2, Preset::AffineN2, Preset::HyperbolicN2] {
        let data = preset.data();
        let table = RootTable::generate(&data, 6);
        println!("== {} (depth 6) ==", preset.name());
        println!("{:>12} {:>6} {:>5} {:>5} {:>3}", "root", "depth", "mult", "real", "m");
        for (beta, info) in table.sorted_by_depth() {
            println!(
                "{:>12} {:>6} {:>5} {:>5} {:>3}",
                beta.to_string(),
                beta.depth(),
                info.mult,
                info.is_real,
                info.m_alpha
            );
        }
        let q = QPrimeLattice::new(&data);
        println!("Q' basis scales m(alpha_i): {:?}", q.basis_scales);
        let report = lemma_checks(&data);
        println!(
            "lattice lemma parts (1) and (3): {} / {}\n",
            report.part1_ok, report.part3_ok
        );
    }
}
