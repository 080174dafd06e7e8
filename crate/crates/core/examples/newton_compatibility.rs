//! Mutates the mirror potential of the projective plane algebraically and
//! checks that its Newton polygon moves by the combinatorial mutation.

use polymut::bridge::polygon_seed;
use polymut::laurent::LaurentPolynomial;
use polymut::mutation::{algebraic_mutate, combinatorial_mutate};
use polymut::polygon::make_fano;

fn main() {
    let w = LaurentPolynomial::from_i64(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]);
    let newt = make_fano(&w.support()).unwrap();
    let seed = polygon_seed(&newt).unwrap();
    for k in 0..seed.unfrozen_count() {
        let d = seed.mutation_data(k).unwrap();
        // on the Laurent side the factor direction is reversed
        let w2 = algebraic_mutate(&w, &d.flip_factor()).unwrap();
        let q = combinatorial_mutate(&newt, &d).unwrap();
        let same = make_fano(&w2.support()).unwrap().vertices() == q.vertices();
        println!("edge {k}: W' = {w2}\n  Newt(W') = {q}: {same}");
    }
}
