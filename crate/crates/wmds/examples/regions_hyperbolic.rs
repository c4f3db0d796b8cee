//! Region geometry of the hyperbolic system [[2,-3],[-3,2]]: the sigma-orbit
//! of the box corner, the shifted Tits cone, and the inner approximation of
//! the continuation hull — all in exact rational arithmetic.
//!
//! ```bash
//! cargo run --release --example regions_hyperbolic
//! ```

use wmds::cartan::HPoint;
use wmds::presets::Preset;
use wmds::zseries::{hull_generators, hyperbolic_tits_inequalities, in_l, in_tits, in_x0_approx, RegionSpec};
use wmds::{rat, rat_frac};

fn main() {
    let data = Preset::HyperbolicN2.data();
    let spec = RegionSpec { rank: 2, length_cap: 6 };

    println!("hull generators w o (2,2) up to length 3:");
    for (w, corner) in hull_generators(&data, &RegionSpec { rank: 2, length_cap: 3 }) {
        let parts: Vec<String> = corner.iter().map(|r| r.to_string()).collect();
        println!("  {w:10} ({})", parts.join(", "));
    }

    let points = [
        ("(3, 3)", HPoint::real(vec![rat(3), rat(3)])),
        ("(3/2, 3/2)", HPoint::real(vec![rat_frac(3, 2), rat_frac(3, 2)])),
        ("(0, 5)", HPoint::real(vec![rat(0), rat(5)])),
        ("(-5, 0)", HPoint::real(vec![rat(-5), rat(0)])),
    ];
    println!("\npoint        in_L   in_Tits  in_X0(L=6)");
    for (name, p) in &points {
        println!(
            "{name:12} {:5}  {:7}  {:5}",
            in_l(p, &spec),
            in_tits(&data, p, &spec),
            in_x0_approx(&data, p, &spec)
        );
    }

    // The exact inequality pair for the Tits cone.
    let x = rat_frac(3, 2);
    let (plus, minus) = hyperbolic_tits_inequalities(&x, &x);
    println!("\n(3/2, 3/2): (3+sqrt5)x + 2y > 5+sqrt5 is {plus}, conjugate is {minus}");
    println!("so (3/2, 3/2) lies in the shifted Tits cone but outside the hull:");
    for cap in [0, 4, 8, 12] {
        let spec = RegionSpec { rank: 2, length_cap: cap };
        println!(
            "  in_X0_approx at L = {cap:2}: {}",
            in_x0_approx(&data, &HPoint::real(vec![x.clone(), x.clone()]), &spec)
        );
    }
}
