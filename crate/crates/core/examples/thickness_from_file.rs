// Writes a trefoil to JSON and CSV, reads both back and measures it.

use thicklink::curves::{
    euclidean_thickness, link_from_csv, link_from_json, link_to_csv, link_to_json, ropelength,
    DiscreteCurve, DiscreteLink,
};

fn main() {
    let trefoil = DiscreteCurve::from_fn_euclidean(240, |t| {
        [t.sin() + 2.0 * (2.0 * t).sin(), t.cos() - 2.0 * (2.0 * t).cos(), -(3.0 * t).sin()]
    })
    .unwrap();
    let link = DiscreteLink::knot(trefoil);

    let dir = std::env::temp_dir().join("thicklink-example");
    std::fs::create_dir_all(&dir).unwrap();
    let json_path = dir.join("trefoil.json");
    let csv_path = dir.join("trefoil.csv");
    std::fs::write(&json_path, link_to_json(&link).unwrap()).unwrap();
    std::fs::write(&csv_path, link_to_csv(&link).unwrap()).unwrap();

    for path in [&json_path, &csv_path] {
        let text = std::fs::read_to_string(path).unwrap();
        let read = if path.extension().unwrap() == "csv" {
            link_from_csv(&text)
        } else {
            link_from_json(&text)
        }
        .unwrap();
        println!(
            "{}: length {:.4}, thickness {:.4}, ropelength {:.2}",
            path.display(),
            read.length(),
            euclidean_thickness(&read).unwrap(),
            ropelength(&read).unwrap()
        );
    }

    // Malformed input names the offending line and field.
    let err = link_from_csv("component,x,y,z\n0,1,2,oops\n").unwrap_err();
    println!("bad file: {err}");
}
