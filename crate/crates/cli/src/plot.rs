use dsmat::exactmat::families::{c_matrix, identity, Vertex3};
use dsmat::triangle3::{f, grid_points, Segment3};
use dsmat::{rat_int, ExactMatrix, Rational};
use serde_json::json;

use crate::{Failure, Format};

/// `r` rounded half away from zero to 12 decimal places.
pub fn decimal12(r: &Rational) -> String {
    let scaled = (r * rat_int(1_000_000_000_000)).round().to_integer();
    let neg = scaled < 0.into();
    let digits = scaled.magnitude().to_string();
    let digits = format!("{digits:0>13}");
    let (int, frac) = digits.split_at(digits.len() - 12);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

/// Surface `x,y,f` over the grid of the triangle. Decimals are rounded, so
/// the CSV is for plotting only.
pub fn triangle(grid: usize, format: Format) -> Result<String, Failure> {
    let mut s = String::new();
    let mut rows = Vec::new();
    for p in grid_points(grid) {
        let v = f(&p)?;
        match format {
            Format::Json => rows.push(json!({ "x": p.x.to_string(), "y": p.y.to_string(), "f": v.to_string() })),
            _ => s += &format!("{},{},{}\n", decimal12(&p.x), decimal12(&p.y), decimal12(&v)),
        }
    }
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
        _ => format!("x,y,f\n{s}"),
    })
}

/// Off-diagonal entries `(m12, m13, m23)`, which fix a symmetric doubly
/// stochastic 3x3 matrix.
fn coords(m: &ExactMatrix) -> [String; 3] {
    [(0, 1), (0, 2), (1, 2)].map(|(i, j)| m.get(i, j).to_string())
}

/// The five vertices and the seven determined segments as a wireframe.
pub fn polytope(format: Format) -> String {
    let vertices: Vec<(&str, ExactMatrix)> = vec![
        ("I", identity(3)),
        ("X", Vertex3::X.matrix()),
        ("Y", Vertex3::Y.matrix()),
        ("Z", Vertex3::Z.matrix()),
        ("C", c_matrix(3).expect("n = 3")),
    ];
    let name_of = |m: &ExactMatrix| vertices.iter().find(|(_, v)| v == m).map(|(n, _)| *n).expect("segment endpoint is a vertex");
    let edges: Vec<(&str, &str, &str)> = Segment3::ALL
        .iter()
        .map(|s| {
            let (a, b) = s.endpoints();
            (name_of(&a), name_of(&b), s.name())
        })
        .collect();
    let coord_of = |n: &str| coords(&vertices.iter().find(|(v, _)| *v == n).expect("vertex").1);
    match format {
        Format::Csv => {
            let mut s = String::from("from,to,x1,y1,z1,x2,y2,z2\n");
            for (a, b, _) in &edges {
                s += &format!("{a},{b},{},{}\n", coord_of(a).join(","), coord_of(b).join(","));
            }
            s
        }
        Format::Text => edges.iter().map(|(a, b, name)| format!("{name}: {a} -- {b}\n")).collect(),
        Format::Json => {
            let v = json!({
                "coordinates": ["m12", "m13", "m23"],
                "vertices": vertices.iter().map(|(n, m)| json!({ "name": n, "coords": coords(m) })).collect::<Vec<_>>(),
                "edges": edges.iter().map(|(a, b, name)| json!({ "from": a, "to": b, "segment": name })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dsmat::rat;

    #[test]
    fn decimals_round_half_away_from_zero() {
        assert_eq!(decimal12(&rat(1, 3)), "0.333333333333");
        assert_eq!(decimal12(&rat(2, 3)), "0.666666666667");
        assert_eq!(decimal12(&rat(-1, 4)), "-0.250000000000");
        assert_eq!(decimal12(&rat(1, 1)), "1.000000000000");
        assert_eq!(decimal12(&rat(0, 1)), "0.000000000000");
    }

    #[test]
    fn polytope_has_seven_edges() {
        let csv = polytope(Format::Csv);
        assert_eq!(csv.lines().count(), 8);
        assert!(csv.contains("C,Z,1/2,1/2,1/2,1/1,0/1,0/1"));
    }
}
