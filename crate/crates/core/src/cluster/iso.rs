use std::collections::BTreeMap;

use super::{Quiver, QuiverError};

/// Largest quiver handled by the isomorphism search.
pub const MAX_ISO_SIZE: usize = 12;

/// Iterated colour refinement. Colours are ranks of sorted signatures, so they
/// are isomorphism invariants.
fn vertex_colours(q: &Quiver) -> Vec<usize> {
    let n = q.size();
    let mut colour: Vec<usize> = (0..n).map(|v| usize::from(q.is_frozen(v))).collect();
    loop {
        let sigs: Vec<(usize, Vec<(i64, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(i64, usize)> =
                    (0..n).filter(|&u| u != v && q.b(v, u) != 0).map(|u| (q.b(v, u), colour[u])).collect();
                nb.sort();
                (colour[v], nb)
            })
            .collect();
        let ranks: BTreeMap<_, usize> = {
            let mut s = sigs.clone();
            s.sort();
            s.dedup();
            s.into_iter().enumerate().map(|(i, x)| (x, i)).collect()
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let classes = |c: &[usize]| {
            let mut d = c.to_vec();
            d.sort();
            d.dedup();
            d.len()
        };
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Canonical representative of the isomorphism class (frozen vertices map to
/// frozen vertices) and the permutation `perm` with
/// `canonical = q.permute(perm)`.
///
/// Vertices are placed in order of their refined colour; within that
/// constraint the lower triangle read row by row is made lexicographically
/// least. Interchangeable twins are only tried in index order.
pub fn canonical_quiver(q: &Quiver) -> Result<(Quiver, Vec<usize>), QuiverError> {
    let n = q.size();
    if n > MAX_ISO_SIZE {
        return Err(QuiverError::SizeLimit(n));
    }
    let colour = vertex_colours(q);
    let mut target = colour.clone();
    target.sort();
    let twin = |u: usize, v: usize| {
        colour[u] == colour[v] && q.b(u, v) == 0 && (0..n).all(|x| x == u || x == v || q.b(u, x) == q.b(v, x))
    };
    let earlier_twins: Vec<Vec<usize>> = (0..n).map(|v| (0..v).filter(|&u| twin(u, v)).collect()).collect();

    let mut partials: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, &want) in target.iter().enumerate() {
        let mut best: Option<Vec<i64>> = None;
        let mut next = Vec::new();
        for sigma in &partials {
            let mut used = vec![false; n];
            for &v in sigma {
                used[v] = true;
            }
            for v in 0..n {
                if used[v] || colour[v] != want || earlier_twins[v].iter().any(|&u| !used[u]) {
                    continue;
                }
                let block: Vec<i64> = sigma.iter().map(|&u| q.b(v, u)).collect();
                debug_assert_eq!(block.len(), p);
                match best.as_ref().map(|b| block.cmp(b)) {
                    Some(std::cmp::Ordering::Greater) => continue,
                    Some(std::cmp::Ordering::Less) | None => {
                        best = Some(block);
                        next.clear();
                    }
                    Some(std::cmp::Ordering::Equal) => {}
                }
                let mut s = sigma.clone();
                s.push(v);
                next.push(s);
            }
        }
        partials = next;
    }
    let perm = partials.swap_remove(0);
    Ok((q.permute(&perm), perm))
}

/// Isomorphism test respecting frozen vertices. On success returns `phi` with
/// `q2.b(phi[i], phi[j]) = q1.b(i, j)`.
pub fn quiver_isomorphic(q1: &Quiver, q2: &Quiver) -> Result<Option<Vec<usize>>, QuiverError> {
    if q1.size() != q2.size() || q1.frozen().len() != q2.frozen().len() {
        return Ok(None);
    }
    let (c1, p1) = canonical_quiver(q1)?;
    let (c2, p2) = canonical_quiver(q2)?;
    if c1 != c2 {
        return Ok(None);
    }
    let mut phi = vec![0; q1.size()];
    for (a, b) in p1.iter().zip(&p2) {
        phi[*a] = *b;
    }
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::tests::{a2, markov, random_quiver};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_witness(q1: &Quiver, q2: &Quiver, phi: &[usize]) {
        for i in 0..q1.size() {
            assert_eq!(q1.is_frozen(i), q2.is_frozen(phi[i]));
            for j in 0..q1.size() {
                assert_eq!(q2.b(phi[i], phi[j]), q1.b(i, j));
            }
        }
    }

    fn brute_isomorphic(q1: &Quiver, q2: &Quiver) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut p = p.clone();
                    p.insert(pos, n - 1);
                    out.push(p);
                }
            }
            out
        }
        q1.size() == q2.size() && perms(q1.size()).into_iter().any(|p| q1.permute(&p) == *q2)
    }

    #[test]
    fn reflexive_and_transposition() {
        let q = markov();
        check_witness(&q, &q, &quiver_isomorphic(&q, &q).unwrap().unwrap());
        let rev = Quiver::from_rows(&[&[0, -1], &[1, 0]], &[]).unwrap();
        let phi = quiver_isomorphic(&a2(), &rev).unwrap().unwrap();
        assert_eq!(phi, vec![1, 0]);
    }

    #[test]
    fn markov_is_not_a_single_arrow_cycle() {
        let cyc = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[]).unwrap();
        assert_eq!(quiver_isomorphic(&markov(), &cyc).unwrap(), None);
    }

    #[test]
    fn frozen_vertices_are_respected() {
        let a = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)], &[0]).unwrap();
        let b = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)], &[2]).unwrap();
        assert_eq!(quiver_isomorphic(&a, &b).unwrap(), None);
        assert!(quiver_isomorphic(&a.unfrozen_part(), &b.unfrozen_part()).unwrap().is_some());
    }

    #[test]
    fn size_limit() {
        assert_eq!(canonical_quiver(&Quiver::empty(13)), Err(QuiverError::SizeLimit(13)));
        assert!(canonical_quiver(&Quiver::empty(12)).is_ok());
    }

    #[test]
    fn random_relabellings_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let q = random_quiver(&mut rng, n, 2);
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            let r = q.permute(&p);
            assert_eq!(canonical_quiver(&q).unwrap().0, canonical_quiver(&r).unwrap().0);
            check_witness(&q, &r, &quiver_isomorphic(&q, &r).unwrap().unwrap());
        }
    }

    #[test]
    fn matches_brute_force_on_small_quivers() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..400 {
            let n = rng.gen_range(1..=5);
            let a = random_quiver(&mut rng, n, 1);
            let b = random_quiver(&mut rng, n, 1);
            let fast = quiver_isomorphic(&a, &b).unwrap().is_some();
            assert_eq!(fast, brute_isomorphic(&a, &b), "{a} vs {b}");
        }
    }
}
