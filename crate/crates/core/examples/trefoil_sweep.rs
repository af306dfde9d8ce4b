// Aspect-ratio sweep for the (3, 2) torus knot on the Clifford torus.

use thicklink::hopf_links::{optimize_aspect, torus_knot_thickness};

fn main() {
    let samples = 96;
    let opt = optimize_aspect(3, samples, 32).unwrap();
    for (a, t) in opt.sweep.iter().step_by(4) {
        let bar = "#".repeat((t * 60.0) as usize);
        println!("a = {a:.3}  {t:.4} {bar}");
    }
    println!("best aspect {:.5} with thickness {:.5}", opt.aspect, opt.thickness);
    let five = optimize_aspect(5, samples, 32).unwrap();
    println!("(5, 2) knot: best aspect {:.5}, thickness {:.5}", five.aspect, five.thickness);
    println!("near-degenerate a = 0.02: {:.5}", torus_knot_thickness(3, 0.02, samples).unwrap());
}
