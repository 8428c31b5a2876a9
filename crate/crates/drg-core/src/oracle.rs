//! Concrete small graphs: the ground truth the algebraic modules are checked
//! against.
//!
//! Graphs are immutable after construction and carry their full all-pairs
//! distance table. Everything here is brute force by design; the point is
//! independent verification, not speed.

pub mod automorphism;

use crate::params::IntersectionArray;
use crate::spectrum::{SpectralLine, Spectrum};
use crate::{DomainError, Int};
use itertools::Itertools;
use nalgebra::DMatrix;
use thiserror::Error;

/// Default vertex cap for oracle work.
pub const DEFAULT_VERTEX_CAP: usize = 64;
/// Hard cap for dense spectra.
pub const SPECTRUM_VERTEX_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {0} out of range (n = {1})")]
    InvalidVertex(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("distance-{0} relation is not an equivalence; graph is not antipodal")]
    NotAntipodal(usize),
    #[error("size limit exceeded: n = {n} > cap {cap}")]
    SizeLimitExceeded { n: usize, cap: usize },
    #[error("graph is not regular: deg({v}) = {dv} but deg({w}) = {dw}")]
    NotRegular { v: usize, dv: usize, w: usize, dw: usize },
}

/// Witness that a graph is not distance-regular: vertices `v`, `w` at
/// distance `i` where some count disagrees with the first representative.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("not distance-regular: at distance {i}, pair ({v},{w}) breaks regularity ({detail})")]
pub struct DrWitness {
    pub v: usize,
    pub w: usize,
    pub i: usize,
    pub detail: String,
}

const UNREACHED: u16 = u16::MAX;

/// An undirected connected graph with its distance table.
#[derive(Debug, Clone)]
pub struct ConcreteGraph {
    name: Option<String>,
    labels: Option<Vec<String>>,
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<u32>>,
    dist: Vec<u16>,
    diameter: usize,
}

impl ConcreteGraph {
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        name: Option<String>,
    ) -> Result<Self, OracleError> {
        Self::build(n, edges, name, None)
    }

    fn build(
        n: usize,
        edges: &[(usize, usize)],
        name: Option<String>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(DomainError("graph needs at least one vertex".into()).into());
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(OracleError::InvalidVertex(u.max(v), n));
            }
            if u == v {
                return Err(OracleError::SelfLoop(u));
            }
            if adj[u * n + v] {
                return Err(OracleError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let neighbors: Vec<Vec<u32>> = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u * n + v]).map(|v| v as u32).collect())
            .collect();

        let mut dist = vec![UNREACHED; n * n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            dist[s * n + s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = dist[s * n + u];
                for &v in &neighbors[u] {
                    let v = v as usize;
                    if dist[s * n + v] == UNREACHED {
                        dist[s * n + v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        if dist.contains(&UNREACHED) {
            return Err(OracleError::Disconnected);
        }
        let diameter = *dist.iter().max().unwrap() as usize;
        Ok(ConcreteGraph {
            name,
            labels,
            n,
            adj,
            neighbors,
            dist,
            diameter,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Result<usize, OracleError> {
        let k = self.degree_of(0);
        for v in 1..self.n {
            if self.degree_of(v) != k {
                return Err(OracleError::NotRegular {
                    v: 0,
                    dv: k,
                    w: v,
                    dw: self.degree_of(v),
                });
            }
        }
        Ok(k)
    }

    pub fn distance_row(&self, v: usize) -> &[u16] {
        &self.dist[v * self.n..(v + 1) * self.n]
    }

    /// Vertices at distance exactly `i` from `v`.
    pub fn sphere(&self, v: usize, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.dist(v, w) == i).collect()
    }
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

/// Johnson graph J(m, d): d-subsets of an m-set, adjacent when the subsets
/// differ by exactly one element.
pub fn johnson(m: usize, d: usize) -> Result<ConcreteGraph, OracleError> {
    if d < 1 || m < 2 * d + 1 {
        return Err(DomainError(format!("johnson needs m >= 2d+1 >= 3, got m={m}, d={d}")).into());
    }
    let verts: Vec<Vec<usize>> = (0..m).combinations(d).collect();
    let labels: Vec<String> = verts
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|x| x.to_string()).join(",")))
        .collect();
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let inter = verts[i].iter().filter(|x| verts[j].contains(x)).count();
            if inter == d - 1 {
                edges.push((i, j));
            }
        }
    }
    ConcreteGraph::build(verts.len(), &edges, Some(format!("johnson({m},{d})")), Some(labels))
}

/// Hamming graph H(d, m): d-tuples over an m-letter alphabet, adjacent when
/// they differ in precisely one position.
pub fn hamming(d: usize, m: usize) -> Result<ConcreteGraph, OracleError> {
    if d < 1 || m < 2 {
        return Err(DomainError(format!("hamming needs d >= 1, m >= 2, got d={d}, m={m}")).into());
    }
    let n = m.checked_pow(d as u32).ok_or_else(|| DomainError("m^d overflows".into()))?;
    let tuple = |mut x: usize| -> Vec<usize> {
        let mut t = vec![0; d];
        for slot in t.iter_mut() {
            *slot = x % m;
            x /= m;
        }
        t
    };
    let labels: Vec<String> = (0..n)
        .map(|x| format!("({})", tuple(x).iter().map(|c| c.to_string()).join(",")))
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        let ti = tuple(i);
        for j in i + 1..n {
            let tj = tuple(j);
            if ti.iter().zip(&tj).filter(|(a, b)| a != b).count() == 1 {
                edges.push((i, j));
            }
        }
    }
    ConcreteGraph::build(n, &edges, Some(format!("hamming({d},{m})")), Some(labels))
}

/// Cocktail-party graph K_{m x 2}: vertex `i` is adjacent to everything
/// except its partner `i + m (mod 2m)`.
pub fn cocktail_party(m: usize) -> Result<ConcreteGraph, OracleError> {
    if m < 2 {
        return Err(DomainError(format!("cocktail-party needs m >= 2, got {m}")).into());
    }
    let n = 2 * m;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j != i + m {
                edges.push((i, j));
            }
        }
    }
    ConcreteGraph::build(n, &edges, Some(format!("cocktail_party({m})")), None)
}

/// Complete bipartite graph K_{m,m} minus a perfect matching (crown graph).
pub fn complete_bipartite_minus_matching(m: usize) -> Result<ConcreteGraph, OracleError> {
    if m < 3 {
        return Err(DomainError(format!("crown graph needs m >= 3, got {m}")).into());
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                edges.push((i, m + j));
            }
        }
    }
    ConcreteGraph::build(2 * m, &edges, Some(format!("k{m}{m}_minus_matching")), None)
}

pub fn cycle(len: usize) -> Result<ConcreteGraph, OracleError> {
    if len < 3 {
        return Err(DomainError(format!("cycle needs length >= 3, got {len}")).into());
    }
    let edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    ConcreteGraph::build(len, &edges, Some(format!("cycle({len})")), None)
}

/// Kneser construction: 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen() -> ConcreteGraph {
    let verts: Vec<Vec<usize>> = (0..5).combinations(2).collect();
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i].iter().all(|x| !verts[j].contains(x)) {
                edges.push((i, j));
            }
        }
    }
    ConcreteGraph::build(10, &edges, Some("petersen".into()), None).expect("valid construction")
}

/// Point-line incidence graph of the Fano plane.
pub fn heawood() -> ConcreteGraph {
    const LINES: [[usize; 3]; 7] = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];
    let mut edges = Vec::new();
    for (l, line) in LINES.iter().enumerate() {
        for &p in line {
            edges.push((p, 7 + l));
        }
    }
    ConcreteGraph::build(14, &edges, Some("heawood".into()), None).expect("valid construction")
}

pub fn cube() -> ConcreteGraph {
    let mut g = hamming(3, 2).expect("valid construction");
    g.name = Some("cube".into());
    g
}

pub fn icosahedron() -> ConcreteGraph {
    const EDGES: [(usize, usize); 30] = [
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
        (1, 6), (1, 7), (2, 7), (2, 8), (3, 8),
        (3, 9), (4, 9), (4, 10), (5, 10), (5, 6),
        (6, 7), (7, 8), (8, 9), (9, 10), (10, 6),
        (6, 11), (7, 11), (8, 11), (9, 11), (10, 11),
    ];
    ConcreteGraph::build(12, &EDGES, Some("icosahedron".into()), None).expect("valid construction")
}

/// Builds one of the named families; `params` as each family requires.
pub fn build_named(name: &str, params: &[usize]) -> Result<ConcreteGraph, OracleError> {
    match (name, params) {
        ("johnson", [m, d]) => johnson(*m, *d),
        ("hamming", [d, m]) => hamming(*d, *m),
        ("cocktail_party", [m]) => cocktail_party(*m),
        ("cycle", [len]) => cycle(*len),
        ("petersen", []) => Ok(petersen()),
        ("heawood", []) => Ok(heawood()),
        ("cube", []) => Ok(cube()),
        ("icosahedron", []) => Ok(icosahedron()),
        _ => Err(DomainError(format!("unknown builder {name} with {} params", params.len())).into()),
    }
}

/// Parses the edge-list format: one `u v` pair per line, 0-indexed,
/// undirected; duplicates rejected. Blank lines and `#` comments allowed.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), DomainError> {
    let mut edges = Vec::new();
    let mut max_v = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(DomainError(format!("line {}: expected 'u v'", lineno + 1)));
        }
        let u: usize = parts[0]
            .parse()
            .map_err(|_| DomainError(format!("line {}: bad vertex '{}'", lineno + 1, parts[0])))?;
        let v: usize = parts[1]
            .parse()
            .map_err(|_| DomainError(format!("line {}: bad vertex '{}'", lineno + 1, parts[1])))?;
        max_v = max_v.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(DomainError("edge list is empty".into()));
    }
    Ok((max_v + 1, edges))
}

// ---------------------------------------------------------------------------
// Distance-regularity and intersection numbers
// ---------------------------------------------------------------------------

/// What a distance-regular graph's parameters look like: either a complete
/// graph (diameter <= 1, no array in the d >= 2 sense) or a proper array.
#[derive(Debug, Clone, PartialEq)]
pub enum DrgShape {
    Complete { n: usize },
    Array(IntersectionArray),
}

impl DrgShape {
    pub fn as_array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgShape::Array(a) => Some(a),
            DrgShape::Complete { .. } => None,
        }
    }
}

/// Verifies the distance-regularity constants exist for every vertex and
/// every distance, returning the extracted array or a counterexample.
pub fn check_distance_regular(g: &ConcreteGraph) -> Result<DrgShape, DrWitness> {
    let k = g.degree_of(0);
    for v in 1..g.n() {
        if g.degree_of(v) != k {
            return Err(DrWitness {
                v: 0,
                w: v,
                i: 1,
                detail: format!("degrees differ: {} vs {}", k, g.degree_of(v)),
            });
        }
    }
    let d = g.diameter();
    let mut b = vec![0u64; d + 1];
    let mut c = vec![0u64; d + 1];
    let mut a = vec![0u64; d + 1];
    let mut seen = vec![false; d + 1];
    for v in 0..g.n() {
        for w in 0..g.n() {
            if v == w {
                continue;
            }
            let i = g.dist(v, w);
            let mut ci = 0u64;
            let mut ai = 0u64;
            let mut bi = 0u64;
            for &x in g.neighbors(w) {
                match g.dist(v, x as usize) {
                    dd if dd + 1 == i => ci += 1,
                    dd if dd == i => ai += 1,
                    dd if dd == i + 1 => bi += 1,
                    _ => unreachable!("BFS distances differ by at most 1 across an edge"),
                }
            }
            if !seen[i] {
                seen[i] = true;
                b[i] = bi;
                c[i] = ci;
                a[i] = ai;
            } else if (b[i], c[i], a[i]) != (bi, ci, ai) {
                return Err(DrWitness {
                    v,
                    w,
                    i,
                    detail: format!(
                        "(c,a,b) = ({ci},{ai},{bi}) vs first representative ({},{},{})",
                        c[i], a[i], b[i]
                    ),
                });
            }
        }
    }
    if d < 2 {
        return Ok(DrgShape::Complete { n: g.n() });
    }
    let barr: Vec<u64> = std::iter::once(k as u64).chain(b[1..d].iter().copied()).collect();
    let carr: Vec<u64> = c[1..=d].to_vec();
    match IntersectionArray::new(barr, carr) {
        Ok(arr) => Ok(DrgShape::Array(arr)),
        Err(e) => Err(DrWitness {
            v: 0,
            w: 0,
            i: 0,
            detail: format!("extracted constants violate array invariants: {e}"),
        }),
    }
}

/// Empirically counted intersection numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTensor {
    d: usize,
    data: Vec<u64>,
}

impl CountTensor {
    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: usize, i: usize, j: usize) -> u64 {
        let w = self.d + 1;
        self.data[(s * w + i) * w + j]
    }

    pub fn get_int(&self, s: usize, i: usize, j: usize) -> Int {
        Int::from(self.get(s, i, j))
    }
}

/// Counts `|N_i(u) ∩ N_j(v)|` and asserts independence of the representative
/// pair: a full all-pairs check up to [`DEFAULT_VERTEX_CAP`] vertices, one
/// representative per distance beyond that.
pub fn empirical_p(g: &ConcreteGraph) -> Result<CountTensor, DrWitness> {
    let d = g.diameter();
    let w = d + 1;
    let mut data: Vec<Option<Vec<u64>>> = vec![None; w];
    let mut reps = vec![(0usize, 0usize); w];
    let full = g.n() <= DEFAULT_VERTEX_CAP;
    for u in 0..g.n() {
        for v in 0..g.n() {
            let s = g.dist(u, v);
            if data[s].is_some() && !full {
                continue;
            }
            let mut counts = vec![0u64; w * w];
            for x in 0..g.n() {
                counts[g.dist(u, x) * w + g.dist(v, x)] += 1;
            }
            match &data[s] {
                None => {
                    data[s] = Some(counts);
                    reps[s] = (u, v);
                }
                Some(reference) => {
                    if reference != &counts {
                        return Err(DrWitness {
                            v: u,
                            w: v,
                            i: s,
                            detail: format!(
                                "intersection counts differ from representative pair {:?}",
                                reps[s]
                            ),
                        });
                    }
                }
            }
        }
    }
    let mut flat = vec![0u64; w * w * w];
    for (s, counts) in data.into_iter().enumerate() {
        let counts = counts.expect("every distance 0..=d occurs");
        flat[s * w * w..(s + 1) * w * w].copy_from_slice(&counts);
    }
    Ok(CountTensor { d, data: flat })
}

// ---------------------------------------------------------------------------
// Halved and folded graphs
// ---------------------------------------------------------------------------

/// The two color classes of a bipartite graph.
pub fn bipartition(g: &ConcreteGraph) -> Result<(Vec<usize>, Vec<usize>), OracleError> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for v in 0..g.n() {
        if g.dist(0, v).is_multiple_of(2) {
            even.push(v);
        } else {
            odd.push(v);
        }
    }
    for &u in &even {
        for &v in &even {
            if u != v && g.adjacent(u, v) {
                return Err(OracleError::NotBipartite);
            }
        }
    }
    for &u in &odd {
        for &v in &odd {
            if u != v && g.adjacent(u, v) {
                return Err(OracleError::NotBipartite);
            }
        }
    }
    Ok((even, odd))
}

/// The halved graph on the color class of vertex 0: vertices of one part,
/// adjacent when at distance 2 in the original graph.
pub fn halved_graph(g: &ConcreteGraph) -> Result<ConcreteGraph, OracleError> {
    let (even, _) = bipartition(g)?;
    let mut edges = Vec::new();
    for (i, &u) in even.iter().enumerate() {
        for (j, &v) in even.iter().enumerate().skip(i + 1) {
            if g.dist(u, v) == 2 {
                edges.push((i, j));
            }
        }
    }
    let name = g.name().map(|s| format!("halved({s})"));
    ConcreteGraph::build(even.len(), &edges, name, None)
}

/// The folded graph: equivalence classes of the distance-`d` relation as
/// vertices, adjacent when the classes contain adjacent vertices.
pub fn folded_graph(g: &ConcreteGraph) -> Result<ConcreteGraph, OracleError> {
    let d = g.diameter();
    if d < 2 {
        return Err(DomainError("folding needs diameter >= 2".into()).into());
    }
    let mut class_of = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        if class_of[v] != usize::MAX {
            continue;
        }
        let mut members = vec![v];
        members.extend(g.sphere(v, d));
        for &x in &members {
            for &y in &members {
                if x != y && g.dist(x, y) != d {
                    return Err(OracleError::NotAntipodal(d));
                }
            }
        }
        let id = classes.len();
        for &x in &members {
            if class_of[x] != usize::MAX {
                return Err(OracleError::NotAntipodal(d));
            }
            class_of[x] = id;
        }
        classes.push(members);
    }
    let m = classes.len();
    let mut seen = vec![false; m * m];
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            let (cu, cv) = (class_of[u], class_of[v as usize]);
            if cu != cv && !seen[cu * m + cv] {
                seen[cu * m + cv] = true;
                seen[cv * m + cu] = true;
                edges.push((cu, cv));
            }
        }
    }
    let name = g.name().map(|s| format!("folded({s})"));
    ConcreteGraph::build(m, &edges, name, None)
}

/// Whether every distance-`i` graph is connected.
pub fn is_primitive(g: &ConcreteGraph) -> bool {
    let n = g.n();
    for i in 1..=g.diameter() {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for (v, visited) in seen.iter_mut().enumerate() {
                if !*visited && g.dist(u, v) == i {
                    *visited = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        if count != n {
            return false;
        }
    }
    true
}

/// Exhaustive maximum clique size.
pub fn max_clique(g: &ConcreteGraph) -> usize {
    fn extend(g: &ConcreteGraph, current: usize, candidates: &[usize], best: &mut usize) {
        if current + candidates.len() <= *best {
            return;
        }
        if candidates.is_empty() {
            *best = (*best).max(current);
            return;
        }
        for (idx, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| g.adjacent(v, w))
                .collect();
            extend(g, current + 1, &next, best);
        }
        *best = (*best).max(current);
    }
    let mut best = 1;
    let all: Vec<usize> = (0..g.n()).collect();
    extend(g, 0, &all, &mut best);
    best
}

/// Numeric adjacency spectrum, clustered into distinct eigenvalues.
pub fn adjacency_spectrum(g: &ConcreteGraph) -> Result<Spectrum, OracleError> {
    if g.n() > SPECTRUM_VERTEX_CAP {
        return Err(OracleError::SizeLimitExceeded {
            n: g.n(),
            cap: SPECTRUM_VERTEX_CAP,
        });
    }
    let k = g.regular_degree()?;
    let m = DMatrix::<f64>::from_fn(g.n(), g.n(), |r, c| if g.adjacent(r, c) { 1.0 } else { 0.0 });
    let mut eigen: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eigen.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let tol = 1e-6 * (1.0 + k as f64);
    let mut lines: Vec<SpectralLine> = Vec::new();
    let mut cluster = vec![eigen[0]];
    for &e in &eigen[1..] {
        if (cluster.last().unwrap() - e).abs() <= tol {
            cluster.push(e);
        } else {
            lines.push(SpectralLine {
                value: cluster.iter().sum::<f64>() / cluster.len() as f64,
                multiplicity: cluster.len() as u64,
            });
            cluster = vec![e];
        }
    }
    lines.push(SpectralLine {
        value: cluster.iter().sum::<f64>() / cluster.len() as f64,
        multiplicity: cluster.len() as u64,
    });
    Ok(Spectrum::from_lines(lines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_parameters, johnson_array};

    #[test]
    fn builders_have_expected_shape() {
        let p = petersen();
        assert_eq!(p.n(), 10);
        assert_eq!(p.regular_degree().unwrap(), 3);
        assert_eq!(p.diameter(), 2);

        let j = johnson(5, 2).unwrap();
        assert_eq!(j.n(), 10);
        assert_eq!(j.regular_degree().unwrap(), 6);

        let h = hamming(3, 2).unwrap();
        assert_eq!(h.n(), 8);
        assert_eq!(h.regular_degree().unwrap(), 3);

        let hw = heawood();
        assert_eq!(hw.n(), 14);
        assert_eq!(hw.regular_degree().unwrap(), 3);
        assert_eq!(hw.diameter(), 3);

        let ico = icosahedron();
        assert_eq!(ico.n(), 12);
        assert_eq!(ico.regular_degree().unwrap(), 5);
        assert_eq!(ico.diameter(), 3);

        let oct = cycle(8).unwrap();
        assert_eq!(oct.regular_degree().unwrap(), 2);
        assert_eq!(oct.diameter(), 4);
    }

    #[test]
    fn array_extraction_matches_generators() {
        let shape = check_distance_regular(&petersen()).unwrap();
        assert_eq!(
            shape.as_array().unwrap(),
            &IntersectionArray::new(vec![3, 2], vec![1, 1]).unwrap()
        );
        let shape = check_distance_regular(&heawood()).unwrap();
        assert_eq!(
            shape.as_array().unwrap(),
            &IntersectionArray::new(vec![3, 2, 2], vec![1, 1, 3]).unwrap()
        );
        let shape = check_distance_regular(&johnson(5, 2).unwrap()).unwrap();
        assert_eq!(shape.as_array().unwrap(), &johnson_array(5, 2).unwrap());
        let shape = check_distance_regular(&cocktail_party(3).unwrap()).unwrap();
        assert_eq!(
            shape.as_array().unwrap(),
            &IntersectionArray::new(vec![4, 1], vec![1, 4]).unwrap()
        );
    }

    #[test]
    fn path_is_not_distance_regular() {
        let p4 = ConcreteGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        let err = check_distance_regular(&p4).unwrap_err();
        assert!(err.detail.contains("degrees differ"));
    }

    #[test]
    fn empirical_tensor_spot_values() {
        let g = petersen();
        let p = empirical_p(&g).unwrap();
        assert_eq!(p.get(2, 2, 2), 3);
        assert_eq!(p.get(2, 1, 1), 1);
        // p^s_{0,j} = [j == s]
        for s in 0..=2 {
            for j in 0..=2 {
                assert_eq!(p.get(s, 0, j), u64::from(j == s));
            }
        }
        let j52 = johnson(5, 2).unwrap();
        let p = empirical_p(&j52).unwrap();
        assert_eq!(p.get(1, 1, 1), 3); // = lambda
    }

    #[test]
    fn empirical_tensor_matches_algebraic() {
        for g in [petersen(), heawood(), icosahedron(), cube()] {
            let arr = check_distance_regular(&g).unwrap().as_array().unwrap().clone();
            let table = derive_parameters(&arr).unwrap();
            let emp = empirical_p(&g).unwrap();
            let d = arr.diameter();
            for s in 0..=d {
                for i in 0..=d {
                    for j in 0..=d {
                        assert_eq!(
                            &emp.get_int(s, i, j),
                            table.p().get(s, i, j),
                            "mismatch at ({s},{i},{j}) on {:?}",
                            g.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn halved_and_folded_constructions() {
        let cube = cube();
        let half = halved_graph(&cube).unwrap();
        assert_eq!(half.n(), 4);
        assert_eq!(half.regular_degree().unwrap(), 3); // K_4
        let folded = folded_graph(&cube).unwrap();
        assert_eq!(folded.n(), 4);
        assert_eq!(folded.regular_degree().unwrap(), 3); // K_4

        let ico_folded = folded_graph(&icosahedron()).unwrap();
        assert_eq!(ico_folded.n(), 6);
        assert_eq!(ico_folded.regular_degree().unwrap(), 5); // K_6

        let oct = cycle(8).unwrap();
        let oct_half = halved_graph(&oct).unwrap();
        assert_eq!(oct_half.n(), 4);
        assert_eq!(oct_half.diameter(), 2); // quadrangle
        let oct_folded = folded_graph(&oct).unwrap();
        assert_eq!(oct_folded.n(), 4);
        assert_eq!(oct_folded.diameter(), 2);

        let hw_half = halved_graph(&heawood()).unwrap();
        assert_eq!(hw_half.n(), 7);
        assert_eq!(hw_half.regular_degree().unwrap(), 6); // K_7

        assert!(matches!(halved_graph(&petersen()), Err(OracleError::NotBipartite)));
        assert!(matches!(folded_graph(&petersen()), Err(OracleError::NotAntipodal(_))));
    }

    #[test]
    fn primitivity_of_catalog_graphs() {
        assert!(is_primitive(&petersen()));
        assert!(is_primitive(&johnson(5, 2).unwrap()));
        assert!(is_primitive(&hamming(3, 3).unwrap()));
        assert!(!is_primitive(&cube()));
        assert!(!is_primitive(&heawood()));
        assert!(!is_primitive(&icosahedron()));
        assert!(!is_primitive(&cocktail_party(3).unwrap()));
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(max_clique(&petersen()), 2);
        assert_eq!(max_clique(&johnson(5, 2).unwrap()), 4);
        assert_eq!(max_clique(&cocktail_party(3).unwrap()), 3);
        assert_eq!(max_clique(&cube()), 2);
    }

    #[test]
    fn spectrum_spot_checks() {
        let spec = adjacency_spectrum(&petersen()).unwrap();
        let vals: Vec<(f64, u64)> = spec.eigenvalues.iter().map(|l| (l.value, l.multiplicity)).collect();
        assert_eq!(vals.len(), 3);
        assert!((vals[0].0 - 3.0).abs() < 1e-9 && vals[0].1 == 1);
        assert!((vals[1].0 - 1.0).abs() < 1e-9 && vals[1].1 == 5);
        assert!((vals[2].0 + 2.0).abs() < 1e-9 && vals[2].1 == 4);

        let spec = adjacency_spectrum(&cycle(8).unwrap()).unwrap();
        let expect = [(2.0, 1), (2f64.sqrt(), 2), (0.0, 2), (-(2f64.sqrt()), 2), (-2.0, 1)];
        assert_eq!(spec.eigenvalues.len(), expect.len());
        for (line, (v, m)) in spec.eigenvalues.iter().zip(expect) {
            assert!((line.value - v).abs() < 1e-9);
            assert_eq!(line.multiplicity, m);
        }
    }

    #[test]
    fn edge_list_parsing() {
        let (n, edges) = parse_edge_list("0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(n, 4);
        assert_eq!(edges.len(), 3);
        assert!(parse_edge_list("0 1\nx y\n").is_err());
        assert!(ConcreteGraph::from_edges(4, &[(0, 1), (1, 0)], None).is_err());
        assert!(ConcreteGraph::from_edges(2, &[(1, 1)], None).is_err());
    }
}
