use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::{canonical_quiver, quiver_mutate, Quiver, QuiverError, SearchStatus};

/// Quivers reachable by unfrozen mutations, each in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClass {
    pub members: BTreeSet<Quiver>,
    pub status: SearchStatus,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

/// Breadth-first search of the mutation class up to isomorphism. Stops with
/// [`SearchStatus::Exceeded`] once more than `max_size` classes are found or
/// a multiplicity overflows.
pub fn quiver_mutation_class(q: &Quiver, max_size: usize) -> Result<MutationClass, QuiverError> {
    let start = canonical_quiver(q)?.0;
    let mut members = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for k in cur.unfrozen() {
            let next = match quiver_mutate(&cur, k) {
                Ok(m) => canonical_quiver(&m)?.0,
                Err(QuiverError::Overflow) => return Ok(MutationClass { members, status: SearchStatus::Exceeded }),
                Err(e) => return Err(e),
            };
            if members.insert(next.clone()) {
                if members.len() > max_size {
                    return Ok(MutationClass { members, status: SearchStatus::Exceeded });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(MutationClass { members, status: SearchStatus::Complete })
}

/// The quivers within `depth` mutations of `q`, up to isomorphism, with the
/// level at which each was first reached. The status is
/// [`SearchStatus::Complete`] when the last level brought nothing new, so the
/// whole class was seen.
pub fn quiver_mutation_ball(q: &Quiver, depth: usize) -> Result<(Vec<(Quiver, usize)>, SearchStatus), QuiverError> {
    let start = canonical_quiver(q)?.0;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut out = vec![(start.clone(), 0)];
    let mut frontier = vec![start];
    for level in 1..=depth {
        let mut next = Vec::new();
        for cur in &frontier {
            for k in cur.unfrozen() {
                let m = canonical_quiver(&quiver_mutate(cur, k)?)?.0;
                if seen.insert(m.clone()) {
                    out.push((m.clone(), level));
                    next.push(m);
                }
            }
        }
        if next.is_empty() {
            return Ok((out, SearchStatus::Complete));
        }
        frontier = next;
    }
    let closed = frontier.iter().all(|cur| {
        cur.unfrozen()
            .into_iter()
            .all(|k| quiver_mutate(cur, k).and_then(|m| canonical_quiver(&m)).is_ok_and(|(m, _)| seen.contains(&m)))
    });
    Ok((out, if closed { SearchStatus::Complete } else { SearchStatus::Exceeded }))
}

/// Mutation types of quivers recognised by [`dynkin_type`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    /// `n` isolated vertices.
    A1(usize),
    A2,
    A3,
    D4,
    Other,
}

impl DynkinType {
    pub fn is_finite(self) -> bool {
        self != DynkinType::Other
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A1(n) => write!(f, "A1^{n}"),
            DynkinType::A2 => write!(f, "A2"),
            DynkinType::A3 => write!(f, "A3"),
            DynkinType::D4 => write!(f, "D4"),
            DynkinType::Other => write!(f, "other"),
        }
    }
}

fn orientation_type(q: &Quiver) -> Option<DynkinType> {
    let n = q.size();
    let mut degree = vec![0usize; n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            match q.b(i, j).abs() {
                0 => {}
                1 => {
                    edges += 1;
                    degree[i] += 1;
                    degree[j] += 1;
                }
                _ => return None,
            }
        }
    }
    match (n, edges) {
        (_, 0) => Some(DynkinType::A1(n)),
        (2, 1) => Some(DynkinType::A2),
        (3, 2) => Some(DynkinType::A3),
        (4, 3) if degree.contains(&3) => Some(DynkinType::D4),
        _ => None,
    }
}

/// Mutation type of the unfrozen part, among `A1^n`, `A2`, `A3` and `D4`.
///
/// Looks for an orientation of one of these diagrams with all multiplicities
/// one in the mutation class, searched up to `cutoff` members.
///
/// Above four vertices only `A1^n` is possible; an arrowless quiver is fixed
/// by every mutation and nothing else mutates to it, so no search is needed.
pub fn dynkin_type(q: &Quiver, cutoff: usize) -> Result<DynkinType, QuiverError> {
    let u = q.unfrozen_part();
    if u.size() > 4 {
        return Ok(if u.arrows().is_empty() { DynkinType::A1(u.size()) } else { DynkinType::Other });
    }
    let class = quiver_mutation_class(&u, cutoff)?;
    Ok(class.members.iter().find_map(orientation_type).unwrap_or(DynkinType::Other))
}

/// True if two unfrozen vertices are joined by at least two arrows.
pub fn has_kronecker(q: &Quiver) -> bool {
    let u = q.unfrozen();
    u.iter().any(|&i| u.iter().any(|&j| q.b(i, j).abs() >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::tests::{a2, markov};

    fn kronecker() -> Quiver {
        Quiver::from_rows(&[&[0, 2], &[-2, 0]], &[]).unwrap()
    }

    #[test]
    fn markov_ball() {
        let (ball, status) = quiver_mutation_ball(&markov(), 4).unwrap();
        assert_eq!(status, SearchStatus::Exceeded);
        // Markov triples by level: (1,1,1); (1,1,2); (1,2,5); (1,5,13),
        // (2,5,29); (1,13,34), (5,13,194), (2,29,169), (5,29,433)
        let per_level: Vec<usize> = (0..=4).map(|l| ball.iter().filter(|(_, d)| *d == l).count()).collect();
        // a triangle and its opposite are not isomorphic, so from level 2 on
        // each triple is met in both orientations
        assert_eq!(per_level, [1, 1, 2, 4, 8]);
        for (q, _) in &ball {
            let (a, b, c) = (q.b(0, 1).abs() / 3, q.b(1, 2).abs() / 3, q.b(0, 2).abs() / 3);
            assert_eq!(a * a + b * b + c * c, 3 * a * b * c, "{q}");
        }
        let (a2_ball, s) = quiver_mutation_ball(&a2(), 5).unwrap();
        assert_eq!((a2_ball.len(), s), (1, SearchStatus::Complete));
    }

    #[test]
    fn small_classes() {
        let c = quiver_mutation_class(&a2(), 100).unwrap();
        assert_eq!((c.len(), c.status), (1, SearchStatus::Complete));
        let c = quiver_mutation_class(&kronecker(), 100).unwrap();
        assert_eq!((c.len(), c.status), (1, SearchStatus::Complete));
        assert!(has_kronecker(&kronecker()));
    }

    #[test]
    fn markov_class_is_unbounded() {
        let c = quiver_mutation_class(&markov(), 50).unwrap();
        assert_eq!(c.status, SearchStatus::Exceeded);
    }

    #[test]
    fn a3_class_has_four_members() {
        // oriented-path classes: linear, source-centred, sink-centred, and the
        // oriented 3-cycle
        let path = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)], &[]).unwrap();
        let c = quiver_mutation_class(&path, 100).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.is_complete());
    }

    #[test]
    fn dynkin_examples() {
        assert_eq!(dynkin_type(&Quiver::empty(3), 50).unwrap(), DynkinType::A1(3));
        assert_eq!(dynkin_type(&a2(), 50).unwrap(), DynkinType::A2);
        for arrows in [[(0, 1, 1), (1, 2, 1)], [(1, 0, 1), (1, 2, 1)], [(0, 1, 1), (2, 1, 1)]] {
            let q = Quiver::from_arrows(3, &arrows, &[]).unwrap();
            assert_eq!(dynkin_type(&q, 50).unwrap(), DynkinType::A3);
        }
        let cyc = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[]).unwrap();
        assert_eq!(dynkin_type(&cyc, 50).unwrap(), DynkinType::A3);
        let star = Quiver::from_arrows(4, &[(0, 1, 1), (0, 2, 1), (3, 0, 1)], &[]).unwrap();
        assert_eq!(dynkin_type(&star, 50).unwrap(), DynkinType::D4);
        let square = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], &[]).unwrap();
        assert_eq!(dynkin_type(&square, 50).unwrap(), DynkinType::D4);
        assert_eq!(dynkin_type(&markov(), 50).unwrap(), DynkinType::Other);
        assert_eq!(dynkin_type(&kronecker(), 50).unwrap(), DynkinType::Other);
        let a4 = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)], &[]).unwrap();
        assert_eq!(dynkin_type(&a4, 50).unwrap(), DynkinType::Other);
        assert_eq!(dynkin_type(&Quiver::empty(20), 50).unwrap(), DynkinType::A1(20));
    }

    #[test]
    fn frozen_vertices_are_ignored() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 5)], &[2]).unwrap();
        assert_eq!(dynkin_type(&q, 50).unwrap(), DynkinType::A2);
        assert!(!has_kronecker(&q));
    }
}
