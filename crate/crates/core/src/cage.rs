//! The coordinatized Moore (q+1, 8)-graph Γ_q.
//!
//! Vertices on each side are `(a,b,c)`, `(ρ,b,c)`, `(ρ,ρ,c)` and `(ρ,ρ,ρ)`.
//! Edges are generated from the line-side adjacency rule; the point-side rule is
//! evaluated independently and must produce the identical edge set.

use crate::field::{FieldElement, FieldSpec};
use crate::graph::LabeledGraph;
use crate::vertex::{Coord, Side, Vertex, VertexSet};
use crate::Error;

/// All vertices of one side of Γ_q, in vertex order.
pub fn side_vertices(field: &FieldSpec, side: Side) -> Vec<Vertex> {
    let els: Vec<FieldElement> = field.elements().collect();
    let mut out = Vec::with_capacity(side_order(field.q() as u64) as usize);
    for &a in &els {
        for &b in &els {
            for &c in &els {
                out.push(Vertex::affine(side, a, b, c));
            }
        }
    }
    for &b in &els {
        for &c in &els {
            out.push(Vertex::rho1(side, b, c));
        }
    }
    for &c in &els {
        out.push(Vertex::rho2(side, c));
    }
    out.push(Vertex::rho3(side));
    out
}

/// `q^3 + q^2 + q + 1`.
pub fn side_order(q: u64) -> u64 {
    q * q * q + q * q + q + 1
}

/// `(V_0, V_1)`.
pub fn vertex_set(field: &FieldSpec) -> (Vec<Vertex>, Vec<Vertex>) {
    (
        side_vertices(field, Side::Point),
        side_vertices(field, Side::Line),
    )
}

fn check_coords(field: &FieldSpec, v: &Vertex) -> Result<(), Error> {
    match v.max_index() {
        Some(i) if i >= field.q() => Err(Error::InvalidParameter(format!(
            "vertex {v} has a coordinate outside GF({})",
            field.q()
        ))),
        _ => Ok(()),
    }
}

fn expect_side(v: &Vertex, side: Side) -> Result<(), Error> {
    if v.side() == side {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "vertex {v} is not on side {}",
            side.bit()
        )))
    }
}

/// Neighbors of a line-side vertex.
pub fn line_neighbors(field: &FieldSpec, v: &Vertex) -> Result<VertexSet, Error> {
    expect_side(v, Side::Line)?;
    check_coords(field, v)?;
    let f = field;
    let pt = Side::Point;
    let set = match v.coords() {
        // (a,b,c)_1 ~ (w, aw+b, a^2 w + 2ab + c)_0 and (ρ,a,c)_0
        [Coord::Field(a), Coord::Field(b), Coord::Field(c)] => {
            let a2 = f.mul(a, a);
            let two_ab = f.double(f.mul(a, b));
            f.elements()
                .map(|w| {
                    let second = f.add(f.mul(a, w), b);
                    let third = f.add(f.add(f.mul(a2, w), two_ab), c);
                    Vertex::affine(pt, w, second, third)
                })
                .chain([Vertex::rho1(pt, a, c)])
                .collect()
        }
        // (ρ,b,c)_1 ~ (c,b,w)_0 and (ρ,ρ,c)_0
        [Coord::Rho, Coord::Field(b), Coord::Field(c)] => f
            .elements()
            .map(|w| Vertex::affine(pt, c, b, w))
            .chain([Vertex::rho2(pt, c)])
            .collect(),
        // (ρ,ρ,c)_1 ~ (ρ,c,w)_0 and (ρ,ρ,ρ)_0
        [Coord::Rho, Coord::Rho, Coord::Field(c)] => f
            .elements()
            .map(|w| Vertex::rho1(pt, c, w))
            .chain([Vertex::rho3(pt)])
            .collect(),
        // (ρ,ρ,ρ)_1 ~ (ρ,ρ,w)_0 and (ρ,ρ,ρ)_0
        _ => f
            .elements()
            .map(|w| Vertex::rho2(pt, w))
            .chain([Vertex::rho3(pt)])
            .collect(),
    };
    Ok(set)
}

/// Neighbors of a point-side vertex.
pub fn point_neighbors(field: &FieldSpec, v: &Vertex) -> Result<VertexSet, Error> {
    expect_side(v, Side::Point)?;
    check_coords(field, v)?;
    let f = field;
    let ln = Side::Line;
    let set = match v.coords() {
        // (i,j,k)_0 ~ (w, j - wi, w^2 i - 2wj + k)_1 and (ρ,j,i)_1
        [Coord::Field(i), Coord::Field(j), Coord::Field(k)] => f
            .elements()
            .map(|w| {
                let second = f.sub(j, f.mul(w, i));
                let third = f.add(f.sub(f.mul(f.mul(w, w), i), f.double(f.mul(w, j))), k);
                Vertex::affine(ln, w, second, third)
            })
            .chain([Vertex::rho1(ln, j, i)])
            .collect(),
        // (ρ,j,k)_0 ~ (j,w,k)_1 and (ρ,ρ,j)_1
        [Coord::Rho, Coord::Field(j), Coord::Field(k)] => f
            .elements()
            .map(|w| Vertex::affine(ln, j, w, k))
            .chain([Vertex::rho2(ln, j)])
            .collect(),
        // (ρ,ρ,k)_0 ~ (ρ,w,k)_1 and (ρ,ρ,ρ)_1
        [Coord::Rho, Coord::Rho, Coord::Field(k)] => f
            .elements()
            .map(|w| Vertex::rho1(ln, w, k))
            .chain([Vertex::rho3(ln)])
            .collect(),
        // (ρ,ρ,ρ)_0 ~ (ρ,ρ,w)_1 and (ρ,ρ,ρ)_1
        _ => f
            .elements()
            .map(|w| Vertex::rho2(ln, w))
            .chain([Vertex::rho3(ln)])
            .collect(),
    };
    Ok(set)
}

fn edges_from(
    field: &FieldSpec,
    side: &[Vertex],
    rule: fn(&FieldSpec, &Vertex) -> Result<VertexSet, Error>,
) -> Result<Vec<(Vertex, Vertex)>, Error> {
    let want = field.q() as usize + 1;
    let mut edges = Vec::with_capacity(side.len() * want);
    for v in side {
        let nbrs = rule(field, v)?;
        if nbrs.len() != want {
            return Err(Error::BlockMismatch(format!(
                "{v} has {} distinct neighbors, expected {want}",
                nbrs.len()
            )));
        }
        edges.extend(
            nbrs.into_iter()
                .map(|w| if *v < w { (*v, w) } else { (w, *v) }),
        );
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Builds Γ_q from the line-side rule and cross-checks it against the point-side rule.
pub fn build_moore_graph(field: &FieldSpec) -> Result<LabeledGraph, Error> {
    let q = field.q() as u64;
    let order = 2 * side_order(q);
    if order > u32::MAX as u64 {
        return Err(Error::InvalidParameter(format!(
            "GF({q}) gives a graph too large to index"
        )));
    }
    let (points, lines) = vertex_set(field);
    let from_lines = edges_from(field, &lines, line_neighbors)?;
    let from_points = edges_from(field, &points, point_neighbors)?;
    if from_lines != from_points {
        let witness = from_lines
            .iter()
            .zip(&from_points)
            .find(|(a, b)| a != b)
            .map(|(a, _)| format!("{} -- {}", a.0, a.1))
            .unwrap_or_else(|| "edge counts differ".to_string());
        return Err(Error::BlockMismatch(format!(
            "line-side and point-side adjacency disagree at {witness}"
        )));
    }
    let mut labels = points;
    labels.extend(lines);
    Ok(LabeledGraph::new_bipartite(labels, &from_lines)?)
}
