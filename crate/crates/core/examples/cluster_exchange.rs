//! Counts clusters of the A1, A2 and A3 cluster algebras and prints the A2
//! pentagon.

use polymut::cluster::{cluster_exchange_graph, FrozenMode, Quiver, Seed};

fn main() {
    let a1 = Quiver::empty(1);
    let a2 = Quiver::from_rows(&[&[0, 1], &[-1, 0]], &[]).unwrap();
    let a3 = Quiver::from_rows(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]], &[]).unwrap();
    for (name, q) in [("A1", &a1), ("A2", &a2), ("A3", &a3)] {
        let g = cluster_exchange_graph(&Seed::initial(q, FrozenMode::Unit), 1000).unwrap();
        println!("{name}: {} clusters", g.clusters.len());
    }
    let g = cluster_exchange_graph(&Seed::initial(&a2, FrozenMode::Unit), 1000).unwrap();
    for (i, c) in g.clusters.iter().enumerate() {
        let vars: Vec<String> = c.iter().map(ToString::to_string).collect();
        println!("{i}: {}", vars.join(", "));
    }
}
