// Lifts points on S² to Hopf fibers and measures the resulting link in S³.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thicklink::geom::{fiber_distance, hopf_fiber, hopf_project, spherical_distance, UnitVec3};
use thicklink::hopf_links::lift_configuration;
use thicklink::s2_packing::{antipodal_pair, octahedron, tetrahedron};

fn main() {
    // Fibers over antipodal points form the standard Hopf link.
    for (name, base) in [
        ("antipodal pair", antipodal_pair()),
        ("tetrahedron", tetrahedron()),
        ("octahedron", octahedron()),
    ] {
        let link = lift_configuration(&base, 128).expect("valid configuration");
        let t = link.thickness(2e-3).expect("sampled matches closed form");
        println!(
            "{name:>15}: closed form {:.6}  fiber separation {:.6}  sampled {:.6}",
            t.closed_form, t.fiber_separation, t.sampled
        );
    }

    // Distances between fibers are half the distances between base points.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = UnitVec3::random(&mut rng);
    let q = UnitVec3::random(&mut rng);
    let base = spherical_distance(p.as_array(), q.as_array());
    let fibers = fiber_distance(&hopf_fiber(&p), &hopf_fiber(&q));
    println!("base distance {base:.9}, fiber distance {fibers:.9}");

    let on_fiber = hopf_fiber(&p).point(1.0);
    let back = hopf_project(&thicklink::geom::UnitVec4::new(on_fiber).unwrap());
    println!("fiber projects back within {:.1e}", back.distance(&p));
}
