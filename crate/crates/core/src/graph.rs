//! Finite simple connected graphs, their symmetric arc sets, and the
//! graph families used by the rest of the crate.
//!
//! Every graph is undirected, loop-free, and connected; all three are
//! checked at construction. The walk machinery works on the *symmetric
//! arc set*: each edge {u, v} contributes the two directed arcs (u, v)
//! and (v, u), each carrying the index of its inverse.

use std::collections::{BTreeSet, HashMap, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A finite simple connected graph on densely indexed vertices.
///
/// Vertex labels are cosmetic; all computation uses the dense indices
/// `0..n`. Edges are stored deduplicated and sorted, so two graphs built
/// from the same edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph on `n` vertices from an edge iterator.
    ///
    /// Rejects self-loops, out-of-range endpoints, vertex counts below 2,
    /// and disconnected results. Duplicate edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::with_labels(n, edges, None)
    }

    /// Same as [`Graph::new`] but attaches one label per vertex.
    pub fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> Result<Graph> {
        if n < 2 {
            return Err(Error::TooFewVertices { n, min: 2 });
        }
        if let Some(ref ls) = labels {
            assert_eq!(ls.len(), n, "label count must match vertex count");
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let graph = Graph { n, edges, labels };
        if let Some((a, b)) = graph.disconnected_witness() {
            return Err(Error::Disconnected {
                a: graph.display_vertex(a),
                b: graph.display_vertex(b),
            });
        }
        Ok(graph)
    }

    /// Parse an edge-list document: one edge per line, two
    /// whitespace-separated endpoints, `#` starting a comment line.
    ///
    /// Endpoints may be nonnegative integers or bare-word labels; either
    /// way they are densely reindexed in order of first appearance and the
    /// original tokens are kept as labels.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut intern = |token: &str| -> usize {
            if let Some(&id) = ids.get(token) {
                return id;
            }
            let id = names.len();
            names.push(token.to_owned());
            ids.insert(token.to_owned(), id);
            id
        };
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(Error::EdgeList {
                        line: idx + 1,
                        message: format!("expected two endpoints, got {line:?}"),
                    })
                }
            };
            if u == v {
                return Err(Error::EdgeList {
                    line: idx + 1,
                    message: format!("self-loop at vertex {u:?}"),
                });
            }
            edges.push((intern(u), intern(v)));
        }
        if edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let n = names.len();
        Graph::with_labels(n, edges, Some(names))
    }

    /// The cycle graph C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The complete graph K_n, n >= 2.
    pub fn complete(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(Error::InvalidFamily(format!(
                "complete needs n >= 2, got {n}"
            )));
        }
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// The complete multipartite graph with `parts` parts of equal size
    /// `part_size`. See [`MultipartiteSpec`] for the vertex layout.
    pub fn complete_multipartite(parts: usize, part_size: usize) -> Result<Graph> {
        Ok(MultipartiteSpec::new(parts, part_size)?.graph())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted (u, v) pairs with u < v.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let k = deg[0];
        deg.iter().all(|&d| d == k).then_some(k)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|ls| ls[v].as_str())
    }

    fn display_vertex(&self, v: usize) -> String {
        match self.label(v) {
            Some(name) => format!("{v} ({name})"),
            None => v.to_string(),
        }
    }

    /// Returns representatives of two different components, or `None` if
    /// connected.
    fn disconnected_witness(&self) -> Option<(usize, usize)> {
        let mut adjacency = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s).map(|v| (0, v))
    }
}

/// A directed arc of the symmetric arc set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    /// Start vertex o(a).
    pub origin: usize,
    /// End vertex t(a).
    pub terminus: usize,
    /// Index of the reversed arc within the owning [`ArcSet`].
    pub inverse: usize,
}

/// The symmetric arc set of a graph: both orientations of every edge,
/// ordered lexicographically by (origin, terminus).
///
/// The ordering is deterministic given the graph, so arc indices are
/// stable across runs and processes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn build(graph: &Graph) -> ArcSet {
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(2 * graph.edge_count());
        for &(u, v) in graph.edges() {
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        let index: HashMap<(usize, usize), usize> = pairs
            .iter()
            .enumerate()
            .map(|(k, &pair)| (pair, k))
            .collect();
        let arcs = pairs
            .iter()
            .map(|&(o, t)| Arc {
                origin: o,
                terminus: t,
                inverse: index[&(t, o)],
            })
            .collect();
        ArcSet { arcs }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> Arc {
        self.arcs[index]
    }

    pub fn inverse(&self, index: usize) -> usize {
        self.arcs[index].inverse
    }

    /// Index of the arc (origin, terminus), if present.
    pub fn index_of(&self, origin: usize, terminus: usize) -> Option<usize> {
        self.arcs
            .binary_search_by_key(&(origin, terminus), |a| (a.origin, a.terminus))
            .ok()
    }
}

/// Parameters of the equal-part complete multipartite family.
///
/// The graph has `parts * part_size` vertices; two vertices are adjacent
/// exactly when they lie in different parts, so every vertex has degree
/// `part_size * (parts - 1)`. Part `j` (1-based), member `i` (1-based)
/// sits at dense index `(j - 1) * part_size + (i - 1)`, which makes the
/// adjacency matrix the Kronecker product of the complete-graph adjacency
/// with the all-ones block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipartiteSpec {
    parts: usize,
    part_size: usize,
}

impl MultipartiteSpec {
    pub fn new(parts: usize, part_size: usize) -> Result<MultipartiteSpec> {
        if parts < 2 {
            return Err(Error::InvalidFamily(format!(
                "multipartite needs at least 2 parts, got {parts}"
            )));
        }
        if part_size < 1 {
            return Err(Error::InvalidFamily(
                "multipartite needs part size >= 1".into(),
            ));
        }
        Ok(MultipartiteSpec { parts, part_size })
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn part_size(&self) -> usize {
        self.part_size
    }

    pub fn vertex_count(&self) -> usize {
        self.parts * self.part_size
    }

    pub fn degree(&self) -> usize {
        self.part_size * (self.parts - 1)
    }

    /// Dense index of member `i` of part `j`, both 1-based.
    pub fn vertex(&self, part: usize, member: usize) -> usize {
        assert!(
            (1..=self.parts).contains(&part) && (1..=self.part_size).contains(&member),
            "vertex ({part}, {member}) outside {}x{} layout",
            self.parts,
            self.part_size
        );
        (part - 1) * self.part_size + (member - 1)
    }

    /// 1-based (part, member) coordinates of a dense index.
    pub fn coordinates(&self, v: usize) -> (usize, usize) {
        assert!(v < self.vertex_count());
        (v / self.part_size + 1, v % self.part_size + 1)
    }

    pub fn graph(&self) -> Graph {
        let n = self.vertex_count();
        let m = self.part_size;
        let edges = (0..n)
            .flat_map(move |u| (u + 1..n).filter_map(move |v| (u / m != v / m).then_some((u, v))));
        Graph::new(n, edges).expect("multipartite family is connected by construction")
    }
}
