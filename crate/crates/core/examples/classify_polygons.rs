//! Finite-type verdicts for a few polygons.

use polymut::bridge::{classify, ClassifyOptions};
use polymut::polygon::FanoPolytope;

fn main() {
    let polygons: [(&str, &[&[i64]]); 3] = [
        ("P2", &[&[1, 0], &[0, 1], &[-1, -1]]),
        ("diamond", &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
        ("A2 polygon", &[&[-5, -2], &[-3, -2], &[0, -1], &[3, 1], &[3, 2], &[0, 1], &[-4, -1]]),
    ];
    for (name, verts) in polygons {
        let p = FanoPolytope::from_i64(verts).unwrap();
        let r = classify(&p, &ClassifyOptions::default()).unwrap();
        println!(
            "{name}: {:?}, quiver type {}, class size {:?}, kronecker {}",
            r.verdict, r.quiver_type, r.class_size, r.has_kronecker
        );
    }
}
