// Writes OBJ tube meshes: one bialy, a block of the sheared lattice, and a
// Hopf link projected stereographically into R³.

use std::fs::File;
use std::io::BufWriter;

use thicklink::geom::Circle3;
use thicklink::hopf_links::lift_configuration;
use thicklink::lattice::{paper_lattice, PaperLattice};
use thicklink::mesh::{link_meshes, max_vertex_penetration, packing_meshes, torus_mesh, write_obj};
use thicklink::s2_packing::antipodal_pair;

fn main() {
    let dir = std::env::temp_dir().join("thicklink-example");
    std::fs::create_dir_all(&dir).unwrap();

    let bialy = torus_mesh(&Circle3::horizontal([0.0; 3], 1.0).unwrap(), 1.0, 64, 32).unwrap();
    println!("bialy: {} triangles, Euler characteristic {}", bialy.triangles.len(), bialy.euler_characteristic());
    write_obj(BufWriter::new(File::create(dir.join("bialy.obj")).unwrap()), &[bialy], &["bialy".into()]).unwrap();

    let p = paper_lattice(PaperLattice::Sheared).certify(None).unwrap();
    let (cores, meshes) = packing_meshes(&p, 2, 48, 24).unwrap();
    println!(
        "sheared block: {} tori, deepest vertex penetration {:.2e}",
        meshes.len(),
        max_vertex_penetration(&cores, &meshes, 1.0)
    );
    write_obj(BufWriter::new(File::create(dir.join("sheared.obj")).unwrap()), &meshes, &[]).unwrap();

    let hopf = lift_configuration(&antipodal_pair(), 96).unwrap();
    let meshes = link_meshes(hopf.link(), None, 96, 16).unwrap();
    write_obj(BufWriter::new(File::create(dir.join("hopf.obj")).unwrap()), &meshes, &[]).unwrap();
    println!("meshes written to {}", dir.display());
}
