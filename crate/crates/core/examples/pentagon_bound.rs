//! Enumerates Fano polygons with two T-cones whose normals form a lattice
//! basis, and prints the sizes of their mutation classes.

use std::collections::{BTreeMap, BTreeSet};

use polymut::bridge::{enumerate_fano_polygons_by, polygon_mutation_graph, tcone_normals, ExploreOptions};

fn main() {
    let r = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let polys = enumerate_fano_polygons_by(r, Some(2), |v| match tcone_normals(v)[..] {
        [a, b] => (a[0] * b[1] - a[1] * b[0]).abs() == 1,
        _ => false,
    });
    let mut seen = BTreeSet::new();
    let mut sizes = BTreeMap::new();
    for p in &polys {
        if seen.contains(&p.canonical_vertices()) {
            continue;
        }
        let g = polygon_mutation_graph(p, &ExploreOptions::default()).unwrap();
        seen.extend(g.nodes.iter().map(|n| n.canonical_vertices()));
        *sizes.entry((g.nodes.len(), g.is_complete())).or_insert(0) += 1;
        if g.nodes.len() == 1 {
            println!("fixed by mutation: {p}");
        }
    }
    println!("{} polygons in [-{r},{r}]^2", polys.len());
    for ((n, complete), count) in sizes {
        println!("{count} classes of size {n}{}", if complete { "" } else { " (search cut off)" });
    }
}
