//! Curve files.
//!
//! JSON: `{"ambient": "r3" | "s3", "components": [[[x, y, z(, w)], ...], ...]}`.
//!
//! CSV: a header `component,x,y,z` (R³) or `component,x,y,z,w` (S³), then
//! one sample per row. Rows of a component must be contiguous and in curve
//! order; component indices start at 0.

use serde::{Deserialize, Serialize};

use super::{Ambient, DiscreteCurve, DiscreteLink};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkDocument {
    pub ambient: Ambient,
    pub components: Vec<Vec<Vec<f64>>>,
}

impl LinkDocument {
    pub fn from_link(link: &DiscreteLink) -> Self {
        let components = link
            .components()
            .iter()
            .map(|c| match (c.euclidean_points(), c.spherical_points()) {
                (Some(p), _) => p.iter().map(|x| x.to_vec()).collect(),
                (_, Some(p)) => p.iter().map(|x| x.to_vec()).collect(),
                _ => unreachable!(),
            })
            .collect();
        Self {
            ambient: link.ambient(),
            components,
        }
    }

    pub fn into_link(self) -> Result<DiscreteLink> {
        let dim = match self.ambient {
            Ambient::Euclidean => 3,
            Ambient::Spherical => 4,
        };
        let mut curves = Vec::with_capacity(self.components.len());
        for (ci, comp) in self.components.into_iter().enumerate() {
            for (pi, p) in comp.iter().enumerate() {
                if p.len() != dim {
                    return Err(Error::Parse {
                        location: format!("components[{ci}][{pi}]"),
                        message: format!("expected {dim} coordinates, found {}", p.len()),
                    });
                }
            }
            let curve = match self.ambient {
                Ambient::Euclidean => {
                    DiscreteCurve::euclidean(comp.iter().map(|p| [p[0], p[1], p[2]]).collect())
                }
                Ambient::Spherical => DiscreteCurve::spherical(
                    comp.iter().map(|p| [p[0], p[1], p[2], p[3]]).collect(),
                ),
            };
            curves.push(curve.map_err(|e| Error::Parse {
                location: format!("components[{ci}]"),
                message: e.to_string(),
            })?);
        }
        DiscreteLink::new(curves)
    }
}

pub fn link_from_json(text: &str) -> Result<DiscreteLink> {
    let doc: LinkDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    doc.into_link()
}

pub fn link_to_json(link: &DiscreteLink) -> Result<String> {
    Ok(serde_json::to_string_pretty(&LinkDocument::from_link(link))?)
}

pub fn link_from_csv(text: &str) -> Result<DiscreteLink> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let ambient = match headers.as_slice() {
        [c, x, y, z] if c == "component" && x == "x" && y == "y" && z == "z" => Ambient::Euclidean,
        [c, x, y, z, w] if c == "component" && x == "x" && y == "y" && z == "z" && w == "w" => {
            Ambient::Spherical
        }
        _ => {
            return Err(Error::Parse {
                location: "line 1".into(),
                message: "header must be component,x,y,z or component,x,y,z,w".into(),
            })
        }
    };
    let mut components: Vec<Vec<Vec<f64>>> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = row + 2;
        let field = |k: usize| -> Result<&str> {
            record.get(k).ok_or_else(|| Error::Parse {
                location: format!("line {line}"),
                message: format!("missing field {}", headers[k]),
            })
        };
        let comp: usize = field(0)?.parse().map_err(|_| Error::Parse {
            location: format!("line {line}, field component"),
            message: format!("not a component index: {:?}", field(0).unwrap_or("")),
        })?;
        let mut coords = Vec::with_capacity(headers.len() - 1);
        for (k, name) in headers.iter().enumerate().skip(1) {
            let raw = field(k)?;
            coords.push(raw.parse::<f64>().map_err(|_| Error::Parse {
                location: format!("line {line}, field {name}"),
                message: format!("not a number: {raw:?}"),
            })?);
        }
        if comp == components.len() {
            components.push(Vec::new());
        } else if comp + 1 != components.len() {
            return Err(Error::Parse {
                location: format!("line {line}, field component"),
                message: format!("component {comp} out of order"),
            });
        }
        components[comp].push(coords);
    }
    LinkDocument {
        ambient,
        components,
    }
    .into_link()
}

pub fn link_to_csv(link: &DiscreteLink) -> Result<String> {
    let doc = LinkDocument::from_link(link);
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.ambient {
        Ambient::Euclidean => w.write_record(["component", "x", "y", "z"])?,
        Ambient::Spherical => w.write_record(["component", "x", "y", "z", "w"])?,
    }
    for (ci, comp) in doc.components.iter().enumerate() {
        for p in comp {
            let mut rec = vec![ci.to_string()];
            rec.extend(p.iter().map(|x| format!("{x:?}")));
            w.write_record(&rec)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
