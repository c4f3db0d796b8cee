//! The full verification suite over every bundled preset, as the CLI
//! `verify` subcommand runs it.
//!
//! ```bash
//! cargo run --release --example verify_presets
//! ```

use wmds::presets::Preset;
use wmds::report::run_verify;

fn main() {
    let mut all_pass = true;
    for preset in Preset::all() {
        let report = run_verify(preset, 4).unwrap();
        all_pass &= report.pass;
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    }
    println!("\nall presets pass: {all_pass}");
    assert!(all_pass);
}
