use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::Integer;

use crate::lattice::LatticeVector;
use crate::polygon::{make_fano, FanoPolytope};

type P = (i64, i64);

fn det(a: P, b: P) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn turn(a: P, b: P, c: P) -> i64 {
    det((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1))
}

fn by_angle(a: &P, b: &P) -> Ordering {
    let half = |p: &P| p.1 < 0 || (p.1 == 0 && p.0 < 0);
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(*a, *b)))
}

/// T-cones on the edge from `a` to `b`, given `det(a, b) > 0`.
fn tcones(a: P, b: P) -> usize {
    let l = (b.0 - a.0).gcd(&(b.1 - a.1));
    let h = det(a, b) / l;
    (l / h) as usize
}

/// Inward normals of the T-cones of a counter-clockwise polygon given by
/// small integer vertices, one entry per T-cone.
pub fn tcone_normals(vertices: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let n = vertices.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        let l = (b[0] - a[0]).gcd(&(b[1] - a[1]));
        let w = [-(b[1] - a[1]) / l, (b[0] - a[0]) / l];
        for _ in 0..tcones((a[0], a[1]), (b[0], b[1])) {
            out.push(w);
        }
    }
    out
}

struct Search<'a, F> {
    pts: &'a [P],
    keep: F,
    max: usize,
    chain: Vec<P>,
    found: BTreeSet<Vec<LatticeVector>>,
}

impl<F: Fn(&[[i64; 2]]) -> bool> Search<'_, F> {
    fn close(&mut self, used: usize) {
        let n = self.chain.len();
        let (first, last) = (self.chain[0], self.chain[n - 1]);
        if n < 3
            || det(last, first) <= 0
            || turn(self.chain[n - 2], last, first) <= 0
            || turn(last, first, self.chain[1]) <= 0
            || used + tcones(last, first) > self.max
        {
            return;
        }
        let raw: Vec<[i64; 2]> = self.chain.iter().map(|&(x, y)| [x, y]).collect();
        if !(self.keep)(&raw) {
            return;
        }
        let verts: Vec<LatticeVector> = raw.iter().map(|v| LatticeVector::from_i64(v)).collect();
        let p = make_fano(&verts).expect("search only builds Fano polygons");
        self.found.insert(p.canonical_vertices());
    }

    fn extend(&mut self, from: usize, used: usize) {
        self.close(used);
        let n = self.chain.len();
        let last = self.chain[n - 1];
        for i in from..self.pts.len() {
            let c = self.pts[i];
            if det(last, c) <= 0 {
                continue;
            }
            if n >= 2 && turn(self.chain[n - 2], last, c) <= 0 {
                continue;
            }
            let u = used + tcones(last, c);
            if u > self.max {
                continue;
            }
            self.chain.push(c);
            self.extend(i + 1, u);
            self.chain.pop();
        }
    }
}

/// Every Fano polygon, up to GL(2,Z), with vertices in `[−r, r]²` and at
/// most `max_tcones` T-cones in total, as canonical vertex lists in sorted
/// order.
///
/// Vertices are chosen counter-clockwise by angle, so each polygon is built
/// once per placement; T-cones are counted edge by edge and prune early.
pub fn enumerate_fano_polygons(r: i64, max_tcones: Option<usize>) -> Vec<FanoPolytope> {
    enumerate_fano_polygons_by(r, max_tcones, |_| true)
}

/// As [`enumerate_fano_polygons`], keeping only the polygons whose
/// counter-clockwise vertex list passes `keep` (checked before the
/// canonical form is taken, so cheap filters save most of the work).
pub fn enumerate_fano_polygons_by<F>(r: i64, max_tcones: Option<usize>, keep: F) -> Vec<FanoPolytope>
where
    F: Fn(&[[i64; 2]]) -> bool,
{
    let mut pts: Vec<P> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| (x, y)))
        .filter(|&(x, y)| x.gcd(&y) == 1)
        .collect();
    pts.sort_by(by_angle);
    let mut s = Search { pts: &pts, keep, max: max_tcones.unwrap_or(usize::MAX), chain: Vec::new(), found: BTreeSet::new() };
    for i in 0..pts.len() {
        s.chain.push(pts[i]);
        s.extend(i + 1, 0);
        s.chain.pop();
    }
    s.found
        .into_iter()
        .map(|v| make_fano(&v).expect("canonical vertices span a Fano polygon"))
        .collect()
}
