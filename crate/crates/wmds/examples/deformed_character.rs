//! The averaging pipeline end to end: s(x, lambda), h(x; lambda), and
//! N(x; lambda) as exact symbolic series, for the rank-one cover and A2.
//!
//! ```bash
//! cargo run --release --example deformed_character
//! ```

use wmds::action::{self, ActionContext};
use wmds::cartan::DominantWeight;
use wmds::presets::Preset;

fn dump(label: &str, dist: &wmds::TruncatedDistribution) {
    println!("{label} (cap {}):", dist.cap());
    print!("{}", dist.dump_csv());
}

fn main() {
    // Rank one, n = 2: the average collapses to the closed form 1 + g1 q x.
    let preset = Preset::RankOneN2;
    let ctx = ActionContext::new(preset.data(), DominantWeight::zero(1), 6).unwrap();
    dump("rank-one s(x, 0)", &action::average_s(&ctx));
    dump("rank-one h(x; 0)", &action::h_char(&ctx).unwrap());
    dump("rank-one N(x; 0)", &action::n_series(&ctx).unwrap());

    // A2 with a cubic cover: nontrivial Gauss-sum symbols g1, g2 appear.
    let preset = Preset::A2N3;
    let ctx = ActionContext::new(preset.data(), DominantWeight::zero(2), 4).unwrap();
    dump("\nA2 (n = 3) N(x; 0)", &action::n_series(&ctx).unwrap());

    // The generator action is an involution on monomials.
    use wmds::{CoeffElement, GeomSeries, LatticeVector};
    let beta = LatticeVector(vec![1, 1]);
    let m = GeomSeries::monomial(3, beta.clone(), CoeffElement::one(3));
    let once = m.act_gen(&ctx, 0);
    let twice = once.act_gen(&ctx, 0).expand(4);
    println!("\nx^{beta} acted on twice by sigma_1 returns the monomial:");
    print!("{}", twice.dump_csv());
}
