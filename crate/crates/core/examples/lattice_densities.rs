// The three bialy lattices: overlap check, exact and sampled density.

use thicklink::lattice::{
    analytic_density, ball_density, bialy_volume_check, monte_carlo_density, paper_lattice,
    shifted_intercore_distance, PaperLattice,
};

fn main() {
    println!("shifted intercore distance c = {:.12}", shifted_intercore_distance().unwrap());
    let bialy = bialy_volume_check(200_000, 1).unwrap();
    println!("bialy volume {:.3} ± {:.3} (2π² = {:.3})", bialy.value, bialy.half_width, 2.0 * std::f64::consts::PI.powi(2));

    for id in PaperLattice::ALL {
        let spec = paper_lattice(id);
        let volume = spec.cell_volume();
        let p = spec.certify(None).expect("tubes do not overlap");
        let r = monte_carlo_density(&p, 200_000, 42).unwrap();
        println!(
            "{id:>12}: volume {volume:.4}, {} contacts, density {:.5}, sampled {:.4} ± {:.4}",
            p.report().contacts.len(),
            analytic_density(&p),
            r.monte_carlo.value,
            r.monte_carlo.half_width
        );
    }

    let stacked = paper_lattice(PaperLattice::Stacked).certify(None).unwrap();
    let ball = ball_density(&stacked, [0.3, 0.1, 0.2], 20.0, 100_000, 3).unwrap();
    println!("stacked, ball of radius 20: {:.4} ± {:.4}", ball.value, ball.half_width);

    let mut squeezed = paper_lattice(PaperLattice::Stacked);
    squeezed.basis[0] = [3.5, 0.0, 0.0];
    println!("squeezed: {}", squeezed.certify(None).unwrap_err());
}
