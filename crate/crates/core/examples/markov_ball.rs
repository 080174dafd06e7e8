//! Quivers reachable from the Markov quiver in a few mutations, with the
//! arrow multiplicities that solve the Markov equation.

use polymut::cluster::{quiver_mutation_ball, Quiver};

fn main() {
    let depth = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let q = Quiver::from_rows(&[&[0, 3, -3], &[-3, 0, 3], &[3, -3, 0]], &[]).unwrap();
    let (ball, status) = quiver_mutation_ball(&q, depth).unwrap();
    for (q, d) in &ball {
        let (a, b, c) = (q.b(0, 1).abs() / 3, q.b(1, 2).abs() / 3, q.b(0, 2).abs() / 3);
        println!("depth {d}: ({a}, {b}, {c})  {}", a * a + b * b + c * c == 3 * a * b * c);
    }
    println!("{} quivers, {status:?}", ball.len());
}
