//! Walks away from the projective plane by edge mutations and prints the
//! polygons with their singularity content.

use polymut::bridge::{polygon_mutate_at, polygon_seed};
use polymut::polygon::FanoPolytope;

fn main() {
    let mut p = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
    let mut prev = p.canonical_vertices();
    for step in 0..5 {
        let s = p.singularity_content().unwrap();
        println!("{step}: {p}  n = {}  basket = {:?}", s.n, s.basket_types());
        let seed = polygon_seed(&p).unwrap();
        let next = (0..seed.unfrozen_count())
            .map(|k| polygon_mutate_at(&p, k).unwrap().canonical_form().unwrap().0)
            .find(|q| q.canonical_vertices() != prev)
            .unwrap();
        prev = p.canonical_vertices();
        p = next;
    }
}
