//! Projects the Markov seed along the kernel of its exchange matrix and
//! checks that seed mutation commutes with the projection.

use polymut::cluster::Quiver;
use polymut::highdim::{check_seed_commutation, collection_quiver, from_cluster_seed};
use polymut::lattice::LatticeVector;

fn main() {
    let q = Quiver::from_rows(&[&[0, 3, -3], &[-3, 0, 3], &[3, -3, 0]], &[]).unwrap();
    let p = from_cluster_seed(&q, &[LatticeVector::from_i64(&[1, 1, 1])]).unwrap();
    for d in p.collection().items() {
        println!("w = {}  f = {}", d.weight_w, d.factor_f);
    }
    println!("recovered quiver:\n{}", collection_quiver(p.collection()).unwrap());
    for k in 0..3 {
        for u in [[1, 0], [0, 1], [2, -1]] {
            let ok = check_seed_commutation(&p, k, &LatticeVector::from_i64(&u)).unwrap();
            println!("k = {k}, u = {u:?}: {ok}");
        }
    }
}
