use num_bigint::BigInt;

use super::{polygon_seed, BridgeError};
use crate::lattice::{det2, LatticeVector};
use crate::laurent::LaurentPolynomial;
use crate::mutation::{algebraic_mutate, combinatorial_mutate, MutationData, MutationError};
use crate::polygon::{make_fano, FanoPolytope};

fn height(p: &FanoPolytope, w: &LatticeVector) -> BigInt {
    -p.vertices().iter().map(|v| w.dot(v)).min().expect("polygon has vertices")
}

fn mutate_along(p: &FanoPolytope, w: &LatticeVector) -> Result<FanoPolytope, BridgeError> {
    let e = p.edges()?.into_iter().find(|e| &e.normal_w == w).ok_or_else(|| {
        BridgeError::InvariantViolation(format!("{p} has no edge with normal {w}"))
    })?;
    Ok(combinatorial_mutate(p, &MutationData::from_edge(&e))?)
}

/// Local indices of a Kronecker pair of edges under alternating mutation.
///
/// Entry `0` holds the heights `(h_1, h_2)` of the two edges; entry `t` the
/// heights after mutating first at `i`, then at `j`, and so on. Each step
/// checks `h_1' ≥ k·h_2 − h_1` (or the same with the roles swapped), where
/// `k = |b_ij|`.
pub fn kronecker_growth_trace(
    p: &FanoPolytope,
    pair: (usize, usize),
    steps: usize,
) -> Result<Vec<(BigInt, BigInt)>, BridgeError> {
    let seed = polygon_seed(p)?;
    let (i, j) = pair;
    for x in [i, j] {
        if x >= seed.size() {
            return Err(BridgeError::IndexOutOfRange(x));
        }
        if x >= seed.unfrozen_count() {
            return Err(BridgeError::FrozenIndex(x));
        }
    }
    let k = BigInt::from(seed.quiver.b(i, j).abs());
    if i == j || k < BigInt::from(2) {
        return Err(BridgeError::NotKronecker);
    }
    let mut normals = [seed.rho[i].clone(), seed.rho[j].clone()];
    let mut poly = p.clone();
    let mut h = [height(&poly, &normals[0]), height(&poly, &normals[1])];
    let mut trace = vec![(h[0].clone(), h[1].clone())];
    for t in 0..steps {
        let (s, o) = (t % 2, 1 - t % 2);
        poly = mutate_along(&poly, &normals[s])?;
        let b_os = det2(&normals[o], &normals[s]);
        if b_os > BigInt::from(0) {
            normals[o] = &normals[o] + &normals[s].scale(&b_os);
        }
        normals[s] = -&normals[s];
        let new = [height(&poly, &normals[0]), height(&poly, &normals[1])];
        if new[s] < &k * &h[o] - &h[s] {
            return Err(BridgeError::InvariantViolation(format!(
                "step {}: local index {} below {k}·{} − {}",
                t + 1,
                new[s],
                h[o],
                h[s]
            )));
        }
        h = new;
        trace.push((h[0].clone(), h[1].clone()));
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutabilityReport {
    pub passed: bool,
    /// Number of algebraic mutations carried out.
    pub checked: usize,
    /// Mutation data from `W` to the first non-Laurent result.
    pub failing_path: Option<Vec<MutationData>>,
}

fn newton_fano(w: &LaurentPolynomial) -> Result<FanoPolytope, BridgeError> {
    if w.dim() != 2 || w.is_empty() {
        return Err(BridgeError::NotFanoSupport);
    }
    make_fano(&w.support()).map_err(|_| BridgeError::NotFanoSupport)
}

fn walk(
    w: &LaurentPolynomial,
    back: Option<&LatticeVector>,
    depth: usize,
    path: &mut Vec<MutationData>,
    checked: &mut usize,
) -> Result<bool, BridgeError> {
    if depth == 0 {
        return Ok(true);
    }
    let newt = newton_fano(w)?;
    for e in newt.edges()? {
        if e.tcone_count_m == 0 || back.is_some_and(|b| *b == -&e.normal_w) {
            continue;
        }
        let d = MutationData::from_edge(&e).flip_factor();
        path.push(d.clone());
        *checked += 1;
        match algebraic_mutate(w, &d) {
            Ok(next) => {
                if !walk(&next, Some(&e.normal_w), depth - 1, path, checked)? {
                    return Ok(false);
                }
            }
            Err(MutationError::NotLaurent) => return Ok(false),
            Err(e) => return Err(e.into()),
        }
        path.pop();
    }
    Ok(true)
}

/// Transports `W` along every path of edge mutations of its Newton polygon
/// up to `depth` steps (never straight back), failing at the first
/// mutation that does not give a Laurent polynomial.
pub fn maximally_mutable(w: &LaurentPolynomial, depth: usize) -> Result<MutabilityReport, BridgeError> {
    newton_fano(w)?;
    let mut path = Vec::new();
    let mut checked = 0;
    let passed = walk(w, None, depth, &mut path, &mut checked)?;
    Ok(MutabilityReport { passed, checked, failing_path: (!passed).then_some(path) })
}
