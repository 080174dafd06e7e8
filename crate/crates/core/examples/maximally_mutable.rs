//! Checks whether Laurent polynomials stay Laurent under every edge mutation
//! of their Newton polygons.

use polymut::bridge::maximally_mutable;
use polymut::laurent::LaurentPolynomial;

fn main() {
    let good = LaurentPolynomial::from_i64(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]);
    let bad = LaurentPolynomial::from_i64(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 2)]);
    for w in [good, bad] {
        let r = maximally_mutable(&w, 3).unwrap();
        println!("{w}: passed {} after {} mutations", r.passed, r.checked);
        if let Some(path) = r.failing_path {
            println!("  fails along {path:?}");
        }
    }
}
