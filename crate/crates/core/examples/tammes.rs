// Maximin configurations of n points on S² and their cap densities.

use thicklink::s2_packing::{density_scan, known_optimal_radius, MaximinOptions, HEX_DENSITY};

fn main() {
    let opts = MaximinOptions {
        seed: 1,
        restarts: 4,
        iters: 2000,
    };
    println!("{:>3} {:>10} {:>10} {:>10}", "n", "r_hat", "known", "rho_hat");
    for row in density_scan(8, &opts).unwrap() {
        let known = known_optimal_radius(row.n)
            .map(|r| format!("{r:.6}"))
            .unwrap_or_else(|| "-".into());
        println!("{:>3} {:>10.6} {known:>10} {:>10.6}", row.n, row.r_hat, row.rho_hat);
        assert!(row.rho_hat < HEX_DENSITY);
    }
    println!("every density stays below pi/sqrt(12) = {HEX_DENSITY:.6}");
}
