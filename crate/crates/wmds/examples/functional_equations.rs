//! Local functional equations: the fiber series f_{beta,i} built from
//! N(x; lambda), its transformation under x -> sigma_i x, and the twisted
//! version assembled from global H coefficients.
//!
//! ```bash
//! cargo run --release --example functional_equations
//! ```

use wmds::action::{self, ActionContext};
use wmds::arith::Poly;
use wmds::cartan::{DominantWeight, LatticeVector};
use wmds::hcoeff::HTable;
use wmds::presets::Preset;

fn main() {
    // B2-type cover: m(alpha_1) = 1, m(alpha_2) = 2, so both branch cases of
    // the functional equation occur.
    let preset = Preset::B2N2;
    let data = preset.data();
    let ctx = ActionContext::new(data.clone(), DominantWeight::zero(2), 8).unwrap();
    let n = action::n_series(&ctx).unwrap();
    println!("N(x; 0) for {} to depth 3:", preset.name());
    print!("{}", n.truncated(3).dump_csv());

    for beta in [LatticeVector(vec![0, 0]), LatticeVector(vec![0, 1]), LatticeVector(vec![1, 1])] {
        for i in 0..2 {
            let m = i64::from(wmds::roots::RootTable::m_simple(&data, i));
            let mu = data.mu(&DominantWeight::zero(2), &beta, i);
            let branch = if mu.rem_euclid(m) == 0 { "m | mu" } else { "m does not divide mu" };
            let ok = action::fe_check(&ctx, &beta, i, &n).unwrap();
            println!(
                "f_({beta},{}) transforms correctly [{branch}]: {ok}",
                i + 1
            );
            assert!(ok);
        }
    }

    // Twisted version over F_5[t] with a nontrivial m-tuple.
    let ring = preset.ring().unwrap();
    let table = HTable::new(&ring, data, 8).unwrap();
    let prime = Poly::t();
    let m = vec![Poly(vec![1, 1]), Poly::one()];
    for beta in [LatticeVector(vec![0, 0]), LatticeVector(vec![1, 0])] {
        for i in 0..2 {
            let fe = table.f_twisted_fe_check(&beta, i, &prime, &m).unwrap();
            let bracket = table.n_twisted_bracket_check(&beta, i, &prime, &m).unwrap();
            println!(
                "twisted at {beta}, i = {}: functional equation {fe}, bracket identity {bracket}",
                i + 1
            );
            assert!(fe && bracket);
        }
    }
}
