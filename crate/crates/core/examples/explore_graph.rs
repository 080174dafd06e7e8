//! Breadth-first mutation graph of a Fano polygon, printed as JSON and DOT.
//!
//! `cargo run --example explore_graph -- 20` caps the search at 20 nodes.

use polymut::bridge::{polygon_mutation_graph, ExploreOptions};
use polymut::io::graph_to_json;
use polymut::polygon::FanoPolytope;
use polymut::render::graph_to_dot;

fn main() {
    let max_nodes = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let p = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
    let g = polygon_mutation_graph(&p, &ExploreOptions { max_nodes, ..Default::default() }).unwrap();
    println!("{}", graph_to_json(&g));
    print!("{}", graph_to_dot(&g));
}
