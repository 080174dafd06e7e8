//! JSON interchange formats. All numbers are integers; a float anywhere is a
//! parse error. See `docs/formats.md`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bridge::{FiniteTypeReport, GraphEdge, MutationGraph};
use crate::cluster::{ExchangeGraph, Quiver, SearchStatus};
use crate::highdim::{check_compatible, CompatibleCollection, PentagonWalk};
use crate::lattice::{convex_hull, LatticeVector, RationalPoint, RationalPolytope};
use crate::laurent::LaurentPolynomial;
use crate::mutation::MutationData;
use crate::polygon::{make_fano, FanoPolytope, SingularityContent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid data: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

fn invalid(e: impl ToString) -> IoError {
    IoError::Invalid(e.to_string())
}

/// An arbitrary-precision integer that serializes as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let text = n.to_string();
        let digits = text.strip_prefix('-').unwrap_or(&text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(de::Error::custom(format!("expected an integer, found {text}")));
        }
        BigInt::from_str(&text).map(Int).map_err(de::Error::custom)
    }
}

fn ints(v: &LatticeVector) -> Vec<Int> {
    v.coords().iter().cloned().map(Int).collect()
}

fn vector(c: &[Int], dim: usize) -> Result<LatticeVector, IoError> {
    if c.len() != dim {
        return Err(invalid(format!("expected {dim} coordinates, found {}", c.len())));
    }
    Ok(LatticeVector::new(c.iter().map(|x| x.0.clone()).collect()))
}

fn check_dim(dim: usize) -> Result<(), IoError> {
    if dim == 0 {
        return Err(invalid("dim must be positive"));
    }
    Ok(())
}

fn to_pretty<T: Serialize>(t: &T) -> String {
    let mut s = serde_json::to_string_pretty(t).expect("serializable");
    s.push('\n');
    s
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| if e.is_data() { invalid(e) } else { IoError::Json(e.to_string()) })
}

/// `{"dim": 2, "vertices": [[1,0],[0,1],[-1,-1]]}`, with an optional
/// positive `"den"` dividing every coordinate (rational polytopes only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Int>,
    pub vertices: Vec<Vec<Int>>,
}

impl PolytopeFile {
    pub fn from_fano(p: &FanoPolytope) -> Self {
        PolytopeFile { dim: p.dim(), den: None, vertices: p.vertices().iter().map(ints).collect() }
    }

    /// Vertices scaled by their common denominator, which is written only
    /// when it is not one.
    pub fn from_rational(q: &RationalPolytope) -> Self {
        let den = q.vertices().iter().flat_map(RationalPoint::coords).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let vertices = q
            .vertices()
            .iter()
            .map(|v| v.coords().iter().map(|c| Int(c.numer() * (&den / c.denom()))).collect())
            .collect();
        PolytopeFile { dim: q.dim(), den: (!den.is_one()).then_some(Int(den)), vertices }
    }

    pub fn to_fano(&self) -> Result<FanoPolytope, IoError> {
        check_dim(self.dim)?;
        if self.den.as_ref().is_some_and(|d| !d.0.is_one()) {
            return Err(invalid("a Fano polytope has integer vertices"));
        }
        let v = self.vertices.iter().map(|c| vector(c, self.dim)).collect::<Result<Vec<_>, _>>()?;
        make_fano(&v).map_err(invalid)
    }

    pub fn to_rational(&self) -> Result<RationalPolytope, IoError> {
        check_dim(self.dim)?;
        let den = self.den.as_ref().map_or_else(BigInt::one, |d| d.0.clone());
        if !den.is_positive() {
            return Err(invalid("den must be positive"));
        }
        let pts = self
            .vertices
            .iter()
            .map(|c| {
                let v = vector(c, self.dim)?;
                Ok(RationalPoint::new(v.coords().iter().map(|x| BigRational::new(x.clone(), den.clone())).collect()))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        convex_hull(&pts, self.dim).map_err(invalid)
    }
}

pub fn parse_polytope(text: &str) -> Result<FanoPolytope, IoError> {
    parse::<PolytopeFile>(text)?.to_fano()
}

pub fn polytope_to_json(p: &FanoPolytope) -> String {
    to_pretty(&PolytopeFile::from_fano(p))
}

pub fn parse_rational_polytope(text: &str) -> Result<RationalPolytope, IoError> {
    parse::<PolytopeFile>(text)?.to_rational()
}

pub fn rational_polytope_to_json(q: &RationalPolytope) -> String {
    to_pretty(&PolytopeFile::from_rational(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub exp: Vec<Int>,
    pub num: Int,
    pub den: Int,
}

/// `{"dim": 2, "terms": [{"exp": [1,0], "num": 1, "den": 1}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentFile {
    pub dim: usize,
    pub terms: Vec<TermFile>,
}

impl LaurentFile {
    pub fn from_laurent(w: &LaurentPolynomial) -> Self {
        let terms = w
            .terms()
            .map(|(e, c)| TermFile { exp: ints(e), num: Int(c.numer().clone()), den: Int(c.denom().clone()) })
            .collect();
        LaurentFile { dim: w.dim(), terms }
    }

    pub fn to_laurent(&self) -> Result<LaurentPolynomial, IoError> {
        check_dim(self.dim)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if !t.den.0.is_positive() {
                    return Err(invalid("den must be positive"));
                }
                Ok((vector(&t.exp, self.dim)?, BigRational::new(t.num.0.clone(), t.den.0.clone())))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(LaurentPolynomial::from_terms(self.dim, terms))
    }
}

pub fn parse_laurent(text: &str) -> Result<LaurentPolynomial, IoError> {
    parse::<LaurentFile>(text)?.to_laurent()
}

pub fn laurent_to_json(w: &LaurentPolynomial) -> String {
    to_pretty(&LaurentFile::from_laurent(w))
}

/// `{"size": 3, "frozen": [2], "b": [[0,3,-3],[-3,0,3],[3,-3,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub size: usize,
    pub frozen: Vec<usize>,
    pub b: Vec<Vec<i64>>,
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver) -> Self {
        QuiverFile { size: q.size(), frozen: q.frozen().iter().copied().collect(), b: q.matrix().to_vec() }
    }

    pub fn to_quiver(&self) -> Result<Quiver, IoError> {
        if self.b.len() != self.size {
            return Err(invalid(format!("size is {} but b has {} rows", self.size, self.b.len())));
        }
        Quiver::new(self.b.clone(), self.frozen.iter().copied()).map_err(invalid)
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, IoError> {
    parse::<QuiverFile>(text)?.to_quiver()
}

pub fn quiver_to_json(q: &Quiver) -> String {
    to_pretty(&QuiverFile::from_quiver(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemFile {
    pub w: Vec<Int>,
    pub f: Vec<Int>,
}

/// `{"dim": 3, "items": [{"w": [-1,0,0], "f": [0,1,1]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionFile {
    pub dim: usize,
    pub items: Vec<ItemFile>,
}

impl CollectionFile {
    pub fn from_collection(e: &CompatibleCollection) -> Self {
        let items = e.items().iter().map(|d| ItemFile { w: ints(&d.weight_w), f: ints(&d.factor_f) }).collect();
        CollectionFile { dim: e.dim(), items }
    }

    pub fn to_data(&self) -> Result<Vec<MutationData>, IoError> {
        check_dim(self.dim)?;
        self.items
            .iter()
            .map(|i| MutationData::new(vector(&i.w, self.dim)?, vector(&i.f, self.dim)?).map_err(invalid))
            .collect()
    }

    pub fn to_collection(&self) -> Result<CompatibleCollection, IoError> {
        check_compatible(self.to_data()?).map_err(invalid)
    }

    /// As [`CollectionFile::to_collection`] but accepting imprimitive
    /// weights and factors, as written for seeds whose exchange matrix has
    /// non-unit content.
    pub fn to_collection_imprimitive(&self) -> Result<CompatibleCollection, IoError> {
        check_dim(self.dim)?;
        let items = self
            .items
            .iter()
            .map(|i| Ok(MutationData { weight_w: vector(&i.w, self.dim)?, factor_f: vector(&i.f, self.dim)? }))
            .collect::<Result<Vec<_>, IoError>>()?;
        if items.iter().any(|d| d.weight_w.is_zero() || d.factor_f.is_zero()) {
            return Err(invalid("weights and factors must be nonzero"));
        }
        CompatibleCollection::new_imprimitive(items).map_err(invalid)
    }
}

pub fn parse_collection(text: &str) -> Result<CompatibleCollection, IoError> {
    parse::<CollectionFile>(text)?.to_collection()
}

pub fn collection_to_json(e: &CompatibleCollection) -> String {
    to_pretty(&CollectionFile::from_collection(e))
}

/// Hex digest identifying a polytope up to `GL(2,Z)`: the first 16 hex
/// digits of SHA-256 of its canonical vertex list.
pub fn node_id(p: &FanoPolytope) -> String {
    let text: Vec<String> = p.canonical_vertices().iter().map(LatticeVector::to_string).collect();
    let digest = Sha256::digest(text.join(";").as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn status_name(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::Complete => "complete",
        SearchStatus::Exceeded => "exceeded",
    }
}

fn parse_status(s: &str) -> Result<SearchStatus, IoError> {
    match s {
        "complete" => Ok(SearchStatus::Complete),
        "exceeded" => Ok(SearchStatus::Exceeded),
        _ => Err(invalid(format!("unknown status {s:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFile {
    pub id: String,
    pub depth: usize,
    pub vertices: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: String,
    pub to: String,
    /// Unfrozen index of the seed at `from`.
    pub index: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub status: String,
    pub nodes: Vec<NodeFile>,
    pub edges: Vec<EdgeFile>,
}

impl GraphFile {
    pub fn from_graph(g: &MutationGraph) -> Self {
        let ids: Vec<String> = g.nodes.iter().map(node_id).collect();
        let nodes = g
            .nodes
            .iter()
            .zip(&g.depth)
            .zip(&ids)
            .map(|((p, &depth), id)| NodeFile { id: id.clone(), depth, vertices: p.vertices().iter().map(ints).collect() })
            .collect();
        let edges = g
            .edges
            .iter()
            .map(|e| EdgeFile {
                from: ids[e.from].clone(),
                to: ids[e.to].clone(),
                index: e.index,
                multiplicity: e.multiplicity,
            })
            .collect();
        GraphFile { status: status_name(g.status).to_string(), nodes, edges }
    }

    /// Rebuilds the graph, checking every node id against its polygon.
    pub fn to_graph(&self) -> Result<MutationGraph, IoError> {
        let mut nodes = Vec::new();
        let mut depth = Vec::new();
        for n in &self.nodes {
            let p = PolytopeFile { dim: 2, den: None, vertices: n.vertices.clone() }.to_fano()?;
            if node_id(&p) != n.id {
                return Err(invalid(format!("node id {} does not match its vertices", n.id)));
            }
            nodes.push(p);
            depth.push(n.depth);
        }
        let find = |id: &str| {
            self.nodes.iter().position(|n| n.id == id).ok_or_else(|| invalid(format!("unknown node {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(GraphEdge { from: find(&e.from)?, to: find(&e.to)?, index: e.index, multiplicity: e.multiplicity })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(MutationGraph { nodes, depth, edges, status: parse_status(&self.status)? })
    }
}

pub fn parse_graph(text: &str) -> Result<MutationGraph, IoError> {
    parse::<GraphFile>(text)?.to_graph()
}

pub fn graph_to_json(g: &MutationGraph) -> String {
    to_pretty(&GraphFile::from_graph(g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasketFile {
    /// Cyclic type `1/r(1,a)`.
    pub r: Int,
    pub a: Int,
    pub height: Int,
    pub width: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityFile {
    pub n: usize,
    pub basket: Vec<BasketFile>,
}

impl SingularityFile {
    pub fn from_content(c: &SingularityContent) -> Self {
        let basket = c
            .basket
            .iter()
            .map(|b| BasketFile {
                r: Int(b.cyclic_type.r.clone()),
                a: Int(b.cyclic_type.a.clone()),
                height: Int(b.height.clone()),
                width: Int(b.width.clone()),
            })
            .collect();
        SingularityFile { n: c.n, basket }
    }
}

/// Output of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyFile {
    pub polygon: PolytopeFile,
    pub quiver: QuiverFile,
    pub singularity_content: SingularityFile,
    pub quiver_type: String,
    pub has_kronecker: bool,
    pub class_size: Option<usize>,
    pub class_status: Option<String>,
    pub verdict: String,
    pub fast_path: bool,
}

impl ClassifyFile {
    pub fn new(p: &FanoPolytope, q: &Quiver, c: &SingularityContent, r: &FiniteTypeReport) -> Self {
        ClassifyFile {
            polygon: PolytopeFile::from_fano(p),
            quiver: QuiverFile::from_quiver(q),
            singularity_content: SingularityFile::from_content(c),
            quiver_type: r.quiver_type.to_string(),
            has_kronecker: r.has_kronecker,
            class_size: r.class_size,
            class_status: r.class_status.map(|s| status_name(s).to_string()),
            verdict: r.verdict.to_string(),
            fast_path: r.fast_path,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallMember {
    pub depth: usize,
    pub quiver: QuiverFile,
}

/// Output of `quiver class`: quivers up to isomorphism with the level at
/// which each was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverClassFile {
    pub status: String,
    pub members: Vec<BallMember>,
}

/// Output of `cluster graph`: clusters as lists of Laurent polynomials in
/// the initial variables and edges `[a, b, k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeFile {
    pub status: String,
    pub clusters: Vec<Vec<LaurentFile>>,
    pub edges: Vec<[usize; 3]>,
}

impl ExchangeFile {
    pub fn from_graph(g: &ExchangeGraph) -> Self {
        ExchangeFile {
            status: status_name(g.status).to_string(),
            clusters: g.clusters.iter().map(|c| c.iter().map(LaurentFile::from_laurent).collect()).collect(),
            edges: g.edges.iter().map(|&(a, b, k)| [a, b, k]).collect(),
        }
    }
}

/// Output of `highdim orbit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFile {
    pub rule: String,
    pub period: Option<usize>,
    pub collections: Vec<CollectionFile>,
}

/// Output of `highdim pentagon`: M-side polytopes along the walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkFile {
    pub rule: String,
    pub closed_at: Option<usize>,
    pub not_convex_at: Option<usize>,
    pub polytopes: Vec<PolytopeFile>,
    pub collections: Vec<CollectionFile>,
}

impl WalkFile {
    pub fn new(rule: &str, w: &PentagonWalk) -> Self {
        WalkFile {
            rule: rule.to_string(),
            closed_at: w.closed_at,
            not_convex_at: w.not_convex_at,
            polytopes: w.polytopes.iter().map(PolytopeFile::from_rational).collect(),
            collections: w.collections.iter().map(CollectionFile::from_collection).collect(),
        }
    }
}

/// Serializes any of the report structures of this module.
pub fn to_json<T: Serialize>(t: &T) -> String {
    to_pretty(t)
}

/// Reads any of the report structures of this module.
pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, IoError> {
    parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{polygon_mutation_graph, ExploreOptions};

    #[test]
    fn polytope_round_trip() {
        let text = r#"{"dim": 2, "vertices": [[1,0],[0,1],[-1,-1]]}"#;
        let p = parse_polytope(text).unwrap();
        assert_eq!(parse_polytope(&polytope_to_json(&p)).unwrap(), p);
        let big = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(p, big);
    }

    #[test]
    fn floats_are_rejected() {
        for text in [
            r#"{"dim": 2, "vertices": [[1.0,0],[0,1],[-1,-1]]}"#,
            r#"{"dim": 2, "vertices": [[1e0,0],[0,1],[-1,-1]]}"#,
            r#"{"dim": 2.0, "vertices": [[1,0],[0,1],[-1,-1]]}"#,
        ] {
            assert!(matches!(parse_polytope(text), Err(IoError::Invalid(_))), "{text}");
        }
        assert!(matches!(parse_quiver(r#"{"size":1,"frozen":[],"b":[[0.5]]}"#), Err(IoError::Invalid(_))));
        assert!(matches!(parse_polytope("{\"dim\": 2, "), Err(IoError::Json(_))));
    }

    #[test]
    fn huge_integers_survive() {
        let text = r#"{"dim":1,"terms":[{"exp":[123456789012345678901234567890],"num":-7,"den":3}]}"#;
        let w = parse_laurent(text).unwrap();
        assert_eq!(parse_laurent(&laurent_to_json(&w)).unwrap(), w);
        assert!(laurent_to_json(&w).contains("123456789012345678901234567890"));
    }

    #[test]
    fn rational_polytope_round_trip() {
        let q = parse_rational_polytope(r#"{"dim":2,"den":3,"vertices":[[3,0],[0,1],[-2,-2]]}"#).unwrap();
        let text = rational_polytope_to_json(&q);
        assert!(text.contains("\"den\": 3"));
        assert_eq!(parse_rational_polytope(&text).unwrap(), q);
    }

    #[test]
    fn quiver_and_collection_round_trip() {
        let q = parse_quiver(r#"{"size":3,"frozen":[2],"b":[[0,3,-3],[-3,0,3],[3,-3,0]]}"#).unwrap();
        assert_eq!(parse_quiver(&quiver_to_json(&q)).unwrap(), q);
        assert!(parse_quiver(r#"{"size":2,"frozen":[],"b":[[0,1],[1,0]]}"#).is_err());
        let e = parse_collection(r#"{"dim":3,"items":[{"w":[-1,0,0],"f":[0,1,1]},{"w":[0,0,-1],"f":[-1,0,0]}]}"#)
            .unwrap();
        assert_eq!(parse_collection(&collection_to_json(&e)).unwrap(), e);
        assert!(parse_collection(r#"{"dim":2,"items":[{"w":[1,0],"f":[1,0]}]}"#).is_err());
    }

    #[test]
    fn reports_round_trip() {
        let p = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let seed = crate::bridge::polygon_seed(&p).unwrap();
        let r = crate::bridge::classify(&p, &Default::default()).unwrap();
        let f = ClassifyFile::new(&p, &seed.quiver, &p.singularity_content().unwrap(), &r);
        assert_eq!(from_json::<ClassifyFile>(&to_json(&f)).unwrap(), f);
        let walk = crate::highdim::pentagon_walk(
            &crate::highdim::b5_start(Default::default()),
            &crate::highdim::b5_collection(),
            6,
            Default::default(),
        )
        .unwrap();
        let w = WalkFile::new("linear", &walk);
        assert_eq!(from_json::<WalkFile>(&to_json(&w)).unwrap(), w);
        assert!(from_json::<WalkFile>(&to_json(&w).replace("\"closed_at\": 5", "\"closed_at\": 5.0")).is_err());
    }

    #[test]
    fn graph_round_trip_and_ids() {
        let p = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let opts = ExploreOptions { max_nodes: 6, ..ExploreOptions::default() };
        let g = polygon_mutation_graph(&p, &opts).unwrap();
        let text = graph_to_json(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(graph_to_json(&parse_graph(&text).unwrap()), text);
        let moved = p.transform(&crate::polygon::gl2(2, 1, 1, 1).unwrap());
        assert_eq!(node_id(&moved), node_id(&p));
        assert_eq!(node_id(&p).len(), 16);
    }
}
