//! Weyl group enumeration, canonical reduced words, and inversion sets.
//!
//! ```bash
//! cargo run --release --example weyl_words
//! ```

use wmds::presets::Preset;
use wmds::roots::RootTable;
use wmds::weyl::{enumerate_weyl, phi_set, WeylWord};

fn main() {
    let data = Preset::HyperbolicN2.data();
    let table = RootTable::generate(&data, 12);
    println!("Elements of the hyperbolic Weyl group up to length 4:");
    for w in enumerate_weyl(&data, 4) {
        let phi = phi_set(&w, &data, &table);
        let phi_str = match &phi {
            Ok(set) => set.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
            Err(_) => "(inversions beyond the table depth)".into(),
        };
        println!(
            "  l = {}: {:10} Phi(w) = {{ {} }}",
            w.length(&data),
            w.display(),
            phi_str
        );
    }

    // Canonical forms reduce arbitrary words deterministically.
    let messy = WeylWord(vec![0, 0, 1, 0, 1, 1, 0]);
    println!(
        "\ncanonical form of {}: {} (length {})",
        messy.display(),
        messy.canonical(&data).display(),
        messy.length(&data)
    );

    let a2 = Preset::A2N2.data();
    let braid_a = WeylWord(vec![0, 1, 0]).canonical(&a2);
    let braid_b = WeylWord(vec![1, 0, 1]).canonical(&a2);
    println!(
        "A2 braid words share the canonical form: {} = {}",
        braid_a.display(),
        braid_b.display()
    );
}
