// Tori swept out by hexagonally packed half-plane disks.

use thicklink::revolved::{revolved_density_profile, revolved_mc_check, RevolvedCell};

fn main() {
    let cell = RevolvedCell::new(1).unwrap();
    let (area, moment) = cell.area_and_moment();
    println!("near-axis cell: area {area:.6}, centroid height {:.6}", moment / area);
    for r in revolved_density_profile(12).unwrap() {
        println!("{:>3}  cell {:.6}  cumulative {:.6}", r.row, r.cell_density, r.cumulative);
    }
    let e = revolved_mc_check(2, 200_000, 5).unwrap();
    println!("two rows sampled: {:.4} ± {:.4}", e.value, e.half_width);
}
