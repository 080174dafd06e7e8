//! The B5 collection in dimension three: its quiver, the alternating orbit
//! under both mutation rules, and the walk of polytopes it generates.

use polymut::highdim::{
    alternating_orbit, b5_collection, b5_start, collection_quiver, pentagon_walk, MutationRule, PolytopeModel,
};

fn main() {
    let e = b5_collection();
    println!("quiver:\n{}", collection_quiver(&e).unwrap());
    for rule in [MutationRule::Linear, MutationRule::SignCoherent] {
        let o = alternating_orbit(&e, rule, 20).unwrap();
        println!("{rule:?}: period {:?}", o.period);
        let w = pentagon_walk(&b5_start(PolytopeModel::Raw), &e, 12, rule).unwrap();
        println!("  walk closes at {:?}, not convex at {:?}", w.closed_at, w.not_convex_at);
        for p in &w.polytopes {
            let verts: Vec<String> = p.vertices().iter().map(ToString::to_string).collect();
            println!("  {}", verts.join(" "));
        }
    }
}
