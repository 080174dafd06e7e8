//! DOT and SVG output. Both are write-only.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bridge::MutationGraph;
use crate::cluster::{ExchangeGraph, Quiver};
use crate::io::{node_id, status_name};
use crate::polygon::FanoPolytope;

fn vertex_label(p: &FanoPolytope) -> String {
    p.vertices().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// The polygon mutation graph as an undirected DOT graph. Nodes are named
/// by their ids and labelled with their vertices; parallel T-cones on one
/// edge give a multiplicity label.
pub fn graph_to_dot(g: &MutationGraph) -> String {
    let ids: Vec<String> = g.nodes.iter().map(node_id).collect();
    let mut out = String::from("graph mutations {\n");
    writeln!(out, "  label=\"{}\";", status_name(g.status)).unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for ((p, id), d) in g.nodes.iter().zip(&ids).zip(&g.depth) {
        writeln!(out, "  \"{id}\" [label=\"{}\\ndepth {d}\"];", vertex_label(p)).unwrap();
    }
    for e in &g.edges {
        let label = if e.multiplicity > 1 { format!("{} x{}", e.index, e.multiplicity) } else { e.index.to_string() };
        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{label}\"];", ids[e.from], ids[e.to]).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Arrows `i → j` labelled with `b_ij`; frozen vertices are drawn as boxes.
pub fn quiver_to_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for i in 0..q.size() {
        let shape = if q.is_frozen(i) { "box" } else { "circle" };
        writeln!(out, "  {i} [shape={shape}];").unwrap();
    }
    for (i, j, m) in q.arrows() {
        writeln!(out, "  {i} -> {j} [label=\"{m}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn exchange_graph_to_dot(g: &ExchangeGraph) -> String {
    let mut out = String::from("graph exchange {\n");
    writeln!(out, "  label=\"{}\";", status_name(g.status)).unwrap();
    for (i, c) in g.clusters.iter().enumerate() {
        let vars: Vec<String> = c.iter().map(ToString::to_string).collect();
        writeln!(out, "  {i} [shape=box, label=\"{}\"];", vars.join("\\n").replace('"', "'")).unwrap();
    }
    for (a, b, k) in &g.edges {
        writeln!(out, "  {a} -- {b} [label=\"{k}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

const CELL: i64 = 24;
const MARGIN: i64 = 1;

/// A Fano polygon on its lattice: grid points, the polygon and the origin,
/// with integer pixel coordinates.
pub fn polygon_to_svg(p: &FanoPolytope) -> Option<String> {
    if p.dim() != 2 {
        return None;
    }
    let r = (p.max_abs_coord() + BigInt::from(MARGIN)).to_i64()?;
    if r > 200 {
        return None;
    }
    let size = 2 * r * CELL;
    let px = |x: i64| (x + r) * CELL;
    let py = |y: i64| (r - y) * CELL;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    writeln!(out, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>").unwrap();
    let pts: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| {
            let c = v.to_i64().expect("small coordinates");
            format!("{},{}", px(c[0]), py(c[1]))
        })
        .collect();
    writeln!(out, "<polygon points=\"{}\" fill=\"#dde8f4\" stroke=\"#1f4e79\" stroke-width=\"2\"/>", pts.join(" "))
        .unwrap();
    for x in -r + 1..r {
        for y in -r + 1..r {
            writeln!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#555\"/>", px(x), py(y)).unwrap();
        }
    }
    writeln!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#c00\"/>", px(0), py(0)).unwrap();
    out.push_str("</svg>\n");
    Some(out)
}
