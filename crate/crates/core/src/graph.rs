//! Undirected simple graphs on dense integer vertices `0..n`.
//!
//! Graphs are immutable after construction; deletions are modeled as
//! induced subgraphs carrying a relabeling map back to the original ids.

use thiserror::Error;

use crate::bitset::Bitset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("layer {index} has {got} vertices, expected {expected}")]
    LayerSizeMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("vertex {0} appears in more than one layer")]
    LayersNotDisjoint(usize),
    #[error("layer {index} is not a clique: {u} and {v} are not adjacent")]
    LayerNotClique { index: usize, u: usize, v: usize },
    #[error("layer size k must be at least 1")]
    ZeroLayerSize,
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({0}, {1}) joins vertices of the same layer or points backward")]
    ArcNotLayerMonotone(usize, usize),
    #[error("arc ({0}, {1}) touches a vertex outside the layer union")]
    ArcOutsideLayers(usize, usize),
}

/// Undirected simple graph; adjacency stored as per-vertex bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    adj: Vec<Bitset>,
    m: usize,
}

impl UGraph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        UGraph {
            n,
            adj: vec![Bitset::new(n); n],
            m: 0,
        }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = UGraph::empty(n);
        for u in 0..n {
            g.adj[u] = Bitset::full(n);
            g.adj[u].remove(u);
        }
        g.m = n * n.saturating_sub(1) / 2;
        g
    }

    /// Cycle 0-1-...-(n-1)-0. Degenerates to an edge for n = 2.
    pub fn cycle(n: usize) -> Self {
        if n < 2 {
            return UGraph::empty(n);
        }
        UGraph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = UGraph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if !g.adj[u].contains(v) {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
                g.m += 1;
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as ascending `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Graph with edge {u, v} exactly where `self` has none.
    pub fn complement(&self) -> UGraph {
        let mut g = UGraph::empty(self.n);
        for u in 0..self.n {
            let mut row = Bitset::full(self.n);
            row.remove(u);
            row.subtract(&self.adj[u]);
            g.adj[u] = row;
        }
        g.m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        g
    }

    /// Induced subgraph on the given vertex set, with a map from new ids
    /// back to the originals. The set may be given in any order; the map
    /// is ascending.
    pub fn induced(&self, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let mut picked = Bitset::new(self.n);
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            picked.insert(v);
        }
        let vertex_map = picked.to_vec();
        let mut graph = UGraph::empty(vertex_map.len());
        for (i, &u) in vertex_map.iter().enumerate() {
            for (j, &v) in vertex_map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    graph.adj[i].insert(j);
                    graph.adj[j].insert(i);
                    graph.m += 1;
                }
            }
        }
        Ok(InducedSubgraph { graph, vertex_map })
    }
}

impl std::fmt::Debug for UGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UGraph(n={}, m={})", self.n, self.m)
    }
}

/// An induced subgraph plus the relabeling back to the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: UGraph,
    /// `vertex_map[i]` is the host id of subgraph vertex `i`; ascending.
    pub vertex_map: Vec<usize>,
}

impl InducedSubgraph {
    pub fn original_id(&self, local: usize) -> usize {
        self.vertex_map[local]
    }
}

/// An ordered list of pairwise-disjoint k-cliques of some host graph.
/// Only constructible through validation; reports serialize its layers as
/// plain nested arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    k: usize,
    layers: Vec<Vec<usize>>,
}

impl Layering {
    /// Validates the layers against the host graph: every layer has
    /// exactly `k` vertices, the layers are pairwise disjoint, and each
    /// layer is a clique of `g`. Layers are stored sorted.
    pub fn new(k: usize, layers: Vec<Vec<usize>>, g: &UGraph) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroLayerSize);
        }
        let mut seen = Bitset::new(g.n());
        let mut sorted_layers = Vec::with_capacity(layers.len());
        for (index, layer) in layers.into_iter().enumerate() {
            let mut layer = layer;
            layer.sort_unstable();
            layer.dedup();
            if layer.len() != k {
                return Err(GraphError::LayerSizeMismatch {
                    index,
                    got: layer.len(),
                    expected: k,
                });
            }
            for &v in &layer {
                if v >= g.n() {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        n: g.n(),
                    });
                }
                if seen.contains(v) {
                    return Err(GraphError::LayersNotDisjoint(v));
                }
                seen.insert(v);
            }
            for (a, &u) in layer.iter().enumerate() {
                for &v in layer.iter().skip(a + 1) {
                    if !g.has_edge(u, v) {
                        return Err(GraphError::LayerNotClique { index, u, v });
                    }
                }
            }
            sorted_layers.push(layer);
        }
        Ok(Layering {
            k,
            layers: sorted_layers,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of layers t.
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// All layer vertices, ascending.
    pub fn union_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}
