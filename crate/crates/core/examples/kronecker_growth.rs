//! Local indices of a Kronecker pair under alternating mutation: the
//! diamond (two arrows) and the projective plane (three).

use polymut::bridge::kronecker_growth_trace;
use polymut::polygon::FanoPolytope;

fn main() {
    let diamond = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap();
    let p2 = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
    for (name, p) in [("diamond", diamond), ("P2", p2)] {
        println!("{name}");
        for (t, (a, b)) in kronecker_growth_trace(&p, (0, 1), 8).unwrap().iter().enumerate() {
            println!("  {t:2}  {a:>8} {b:>8}");
        }
    }
}
