//! Problems, tropical leaky covers, validation and multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{LinForm, Rational};
use crate::oracle::{MissingVertexData, VertexKey, VertexOracle};

/// Input record: genus, leak, signed profile and psi-exponents.
///
/// Positive `x[i]` is a left end, negative a right end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub g: u32,
    pub k: i64,
    pub x: Vec<i64>,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("profile has {x} entries but psi-vector has {e}")]
    LengthMismatch { x: usize, e: usize },
    #[error("unstable: 2g-2+n = {0} must be positive")]
    Unstable(i64),
    #[error("degree mismatch: sum of x is {sum} but k(2g-2+n) = {expected}")]
    DegreeMismatch { sum: i64, expected: i64 },
    #[error("too many psi-conditions: |e| = {total} exceeds 2g-3+n = {max}")]
    PsiBound { total: i64, max: i64 },
}

impl Problem {
    pub fn new(g: u32, k: i64, x: Vec<i64>, e: Vec<u32>) -> Self {
        Problem { g, k, x, e }
    }

    /// Problem with no psi-conditions.
    pub fn plain(g: u32, k: i64, x: Vec<i64>) -> Self {
        let n = x.len();
        Problem::new(g, k, x, vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `2g - 2 + n`.
    pub fn euler(&self) -> i64 {
        2 * self.g as i64 - 2 + self.n() as i64
    }

    pub fn psi_total(&self) -> i64 {
        self.e.iter().map(|&v| v as i64).sum()
    }

    /// `c = 2g - 3 + n - |e|`, the codimension of the branch condition.
    pub fn codim(&self) -> i64 {
        self.euler() - 1 - self.psi_total()
    }

    /// Number of cover vertices, `c + 1`.
    pub fn num_vertices(&self) -> usize {
        (self.codim() + 1).max(0) as usize
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.x.len() != self.e.len() {
            return Err(ProblemError::LengthMismatch {
                x: self.x.len(),
                e: self.e.len(),
            });
        }
        if self.euler() <= 0 {
            return Err(ProblemError::Unstable(self.euler()));
        }
        let sum: i64 = self.x.iter().sum();
        let expected = self.k * self.euler();
        if sum != expected {
            return Err(ProblemError::DegreeMismatch { sum, expected });
        }
        if self.psi_total() > self.euler() - 1 {
            return Err(ProblemError::PsiBound {
                total: self.psi_total(),
                max: self.euler() - 1,
            });
        }
        Ok(())
    }

    /// The same problem seen from the other side of the line.
    pub fn turned_around(&self) -> Problem {
        Problem::new(self.g, -self.k, self.x.iter().map(|v| -v).collect(), self.e.clone())
    }
}

/// Expansion factor of an edge: a number, or an affine form in `x` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Weight {
    Int(i64),
    Form(LinForm),
}

impl Weight {
    pub fn value_at(&self, p: &Problem) -> i64 {
        match self {
            Weight::Int(w) => *w,
            Weight::Form(f) => f.eval(&p.x, p.k).expect("weight form uses only problem variables"),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Int(w) => write!(f, "{w}"),
            Weight::Form(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub genus: u32,
    /// 0-based marking indices attached to this vertex.
    pub ends: Vec<usize>,
}

/// Bounded edge oriented from `from` to `to` (left to right).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

/// A tropical leaky cover: decorated multigraph plus the left-to-right
/// order of its vertices over the line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "CoverJson", into = "CoverJson")]
pub struct CoverGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub order: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    genus: u32,
    ends: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    weight: Weight,
}

/// Wire form; markings are 1-based, vertex indices 0-based.
#[derive(Serialize, Deserialize)]
struct CoverJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    order: Vec<usize>,
}

impl From<CoverGraph> for CoverJson {
    fn from(c: CoverGraph) -> Self {
        CoverJson {
            vertices: c
                .vertices
                .into_iter()
                .map(|v| VertexJson {
                    genus: v.genus,
                    ends: v.ends.into_iter().map(|i| i + 1).collect(),
                })
                .collect(),
            edges: c
                .edges
                .into_iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    weight: e.weight,
                })
                .collect(),
            order: c.order,
        }
    }
}

impl TryFrom<CoverJson> for CoverGraph {
    type Error = String;

    fn try_from(j: CoverJson) -> Result<Self, Self::Error> {
        let mut vertices = Vec::with_capacity(j.vertices.len());
        for v in j.vertices {
            if v.ends.contains(&0) {
                return Err("end labels are 1-based".into());
            }
            vertices.push(Vertex {
                genus: v.genus,
                ends: v.ends.into_iter().map(|i| i - 1).collect(),
            });
        }
        let edges = j
            .edges
            .into_iter()
            .map(|e| Edge {
                from: e.from,
                to: e.to,
                weight: e.weight,
            })
            .collect();
        Ok(CoverGraph {
            vertices,
            edges,
            order: j.order,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("order is not a permutation of the {0} vertices")]
    BadOrder(usize),
    #[error("marking {0} is not attached to any vertex")]
    EndMissing(usize),
    #[error("marking {0} is attached more than once or does not exist")]
    EndInvalid(usize),
    #[error("edge {edge} has an endpoint out of range or is a loop")]
    BadEdge { edge: usize },
    #[error("edge {edge} points from a later to an earlier vertex")]
    Orientation { edge: usize },
    #[error("edge {edge} has non-positive expansion factor {weight}")]
    NonPositiveWeight { edge: usize, weight: i64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("genus mismatch: h1 + sum g(v) = {found}, expected {expected}")]
    Genus { found: i64, expected: u32 },
    #[error("cover has {found} vertices, expected c+1 = {expected}")]
    VertexCount { found: usize, expected: usize },
    #[error("psi-condition fails at vertex {vertex}: valence {valence}, required {required}")]
    PsiCondition { vertex: usize, valence: i64, required: i64 },
    #[error("leaky balance fails at vertex {vertex}: d_l - d_r = {found}, required {required}")]
    Balance { vertex: usize, found: String, required: String },
}

impl CoverGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Incident edges plus attached ends.
    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].ends.len() + self.edges.iter().filter(|e| e.from == v || e.to == v).count()
    }

    /// First Betti number, `E - V + 1` for a connected graph.
    pub fn h1(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let other = if e.from == v {
                    e.to
                } else if e.to == v {
                    e.from
                } else {
                    continue;
                };
                if other < n && !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Position of every vertex along the line.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.vertices.len()];
        for (p, &v) in self.order.iter().enumerate() {
            if v < pos.len() {
                pos[v] = p;
            }
        }
        pos
    }

    /// Relabels vertices by position so that `order` becomes the identity
    /// and sorts the edges. Two covers of the same problem are isomorphic
    /// exactly when their normal forms are equal.
    pub fn normalized(&self) -> CoverGraph {
        let pos = self.positions();
        let mut vertices = vec![
            Vertex {
                genus: 0,
                ends: Vec::new(),
            };
            self.vertices.len()
        ];
        for (v, vert) in self.vertices.iter().enumerate() {
            let mut ends = vert.ends.clone();
            ends.sort_unstable();
            vertices[pos[v]] = Vertex { genus: vert.genus, ends };
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: pos[e.from],
                to: pos[e.to],
                weight: e.weight.clone(),
            })
            .collect();
        edges.sort();
        CoverGraph {
            vertices,
            edges,
            order: (0..self.vertices.len()).collect(),
        }
    }

    /// Signed local degrees and psi-exponents of vertex `v`.
    pub fn vertex_key(&self, p: &Problem, v: usize) -> VertexKey {
        let mut degrees = Vec::new();
        let mut psi = Vec::new();
        for &i in &self.vertices[v].ends {
            degrees.push(p.x[i]);
            psi.push(p.e[i]);
        }
        for e in &self.edges {
            let w = e.weight.value_at(p);
            if e.to == v {
                degrees.push(w);
                psi.push(0);
            }
            if e.from == v {
                degrees.push(-w);
                psi.push(0);
            }
        }
        VertexKey::new(self.vertices[v].genus, p.k, degrees, psi).expect("slot vectors have equal length")
    }
}

fn check_structure(p: &Problem, c: &CoverGraph) -> Result<(), CoverError> {
    let nv = c.vertices.len();
    let mut seen = vec![false; nv];
    if c.order.len() != nv {
        return Err(CoverError::BadOrder(nv));
    }
    for &v in &c.order {
        if v >= nv || seen[v] {
            return Err(CoverError::BadOrder(nv));
        }
        seen[v] = true;
    }
    let mut owner = vec![false; p.n()];
    for vert in &c.vertices {
        for &i in &vert.ends {
            if i >= p.n() || owner[i] {
                return Err(CoverError::EndInvalid(i + 1));
            }
            owner[i] = true;
        }
    }
    if let Some(i) = owner.iter().position(|o| !o) {
        return Err(CoverError::EndMissing(i + 1));
    }
    let pos = c.positions();
    for (idx, e) in c.edges.iter().enumerate() {
        if e.from >= nv || e.to >= nv || e.from == e.to {
            return Err(CoverError::BadEdge { edge: idx });
        }
        if pos[e.from] >= pos[e.to] {
            return Err(CoverError::Orientation { edge: idx });
        }
        let w = e.weight.value_at(p);
        if w <= 0 {
            return Err(CoverError::NonPositiveWeight { edge: idx, weight: w });
        }
    }
    if !c.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let genus_sum: i64 = c.vertices.iter().map(|v| v.genus as i64).sum();
    if c.h1() + genus_sum != p.g as i64 {
        return Err(CoverError::Genus {
            found: c.h1() + genus_sum,
            expected: p.g,
        });
    }
    if nv != p.num_vertices() {
        return Err(CoverError::VertexCount {
            found: nv,
            expected: p.num_vertices(),
        });
    }
    for v in 0..nv {
        let val = c.valence(v) as i64;
        let required = c.vertices[v].ends.iter().map(|&i| p.e[i] as i64).sum::<i64>() + 3
            - 2 * c.vertices[v].genus as i64;
        if val != required {
            return Err(CoverError::PsiCondition {
                vertex: v,
                valence: val,
                required,
            });
        }
    }
    Ok(())
}

/// Whether `f` is a multiple of `x1 + ... + xn - k(2g-2+n)`, i.e. vanishes
/// identically on the degree hyperplane.
fn is_degree_multiple(f: &LinForm, p: &Problem) -> bool {
    let c = f.coeff(0);
    f.constant_term() == 0 && f.k_coeff() == -c * p.euler() && (0..p.n()).all(|i| f.coeff(i) == c)
}

/// Verifies every cover invariant against the problem: partition of the
/// markings, orientation along `order`, positive weights, connectivity,
/// genus, vertex count, psi-conditions and leaky balance.
///
/// Symbolic weights must balance identically on the degree hyperplane and
/// be positive at the problem's profile.
pub fn check_cover(p: &Problem, c: &CoverGraph) -> Result<(), CoverError> {
    check_structure(p, c)?;
    for v in 0..c.vertices.len() {
        let val = c.valence(v) as i64;
        let genus = c.vertices[v].genus as i64;
        // net = (sum of signed end values + inbound - outbound) - k(2g(v)-2+val)
        let mut net = LinForm::k_term(-(2 * genus - 2 + val));
        for &i in &c.vertices[v].ends {
            net.add_var(i, 1);
        }
        let mut symbolic = false;
        for e in &c.edges {
            let sign = if e.to == v {
                1
            } else if e.from == v {
                -1
            } else {
                continue;
            };
            match &e.weight {
                Weight::Int(w) => net = net.add(&LinForm::constant(sign * w)),
                Weight::Form(f) => {
                    symbolic = true;
                    net = net.add(&f.scale(sign));
                }
            }
        }
        let balanced = if symbolic {
            is_degree_multiple(&net, p)
        } else {
            net.eval(&p.x, p.k).expect("ends index the profile") == 0
        };
        if !balanced {
            let required = p.k * (2 * genus - 2 + val);
            let found = if symbolic {
                net.add(&LinForm::k_term(2 * genus - 2 + val)).to_string()
            } else {
                (net.eval(&p.x, p.k).unwrap() + required).to_string()
            };
            return Err(CoverError::Balance {
                vertex: v,
                found,
                required: if symbolic {
                    LinForm::k_term(2 * genus - 2 + val).to_string()
                } else {
                    required.to_string()
                },
            });
        }
    }
    Ok(())
}

/// `|Aut|` as the product over groups of parallel edges with equal weight
/// of the group size factorial.
pub fn automorphism_order(c: &CoverGraph) -> u64 {
    let mut groups: BTreeMap<(usize, usize, &Weight), u32> = BTreeMap::new();
    for e in &c.edges {
        let (a, b) = if e.from < e.to { (e.from, e.to) } else { (e.to, e.from) };
        *groups.entry((a, b, &e.weight)).or_insert(0) += 1;
    }
    groups
        .values()
        .map(|&m| (1..=m as u64).product::<u64>())
        .product()
}

/// A cover together with every factor of its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCover {
    pub cover: CoverGraph,
    pub aut: u64,
    pub edge_product: Rational,
    pub vertex_mults: Vec<Rational>,
    pub multiplicity: Rational,
}

/// `mult = (1/|Aut|) * prod w(e) * prod mult_v`.
pub fn assemble_multiplicity(
    p: &Problem,
    c: &CoverGraph,
    oracle: &dyn VertexOracle,
) -> Result<WeightedCover, MissingVertexData> {
    let aut = automorphism_order(c);
    let edge_product: Rational = c.edges.iter().map(|e| Rational::from(e.weight.value_at(p))).product();
    let vertex_mults = (0..c.vertices.len())
        .map(|v| oracle.vertex_mult(&c.vertex_key(p, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut multiplicity = edge_product.clone();
    for m in &vertex_mults {
        multiplicity = &multiplicity * m;
    }
    multiplicity = &multiplicity / &Rational::from(aut);
    Ok(WeightedCover {
        cover: c.clone(),
        aut,
        edge_product,
        vertex_mults,
        multiplicity,
    })
}
