//! Directed graphs and layered digraphs.
//!
//! A `Digraph` is a plain directed graph on dense vertices (antiparallel
//! arc pairs allowed, no self-loops). A `LayeredDigraph` lives on a subset
//! of a host graph's vertices, partitioned into ordered layers; in a
//! well-formed one every arc points from a lower layer to a higher layer.

use crate::bitset::Bitset;
use crate::graph::{GraphError, Layering, UGraph};

/// Directed graph on vertices `0..n` with bitset adjacency in both
/// directions.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Bitset>,
    in_adj: Vec<Bitset>,
    arc_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out_adj: vec![Bitset::new(n); n],
            in_adj: vec![Bitset::new(n); n],
            arc_count: 0,
        }
    }

    /// Builds a digraph from an arc list. Duplicate arcs are rejected.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if d.out_adj[u].contains(v) {
                return Err(GraphError::DuplicateArc(u, v));
            }
            d.out_adj[u].insert(v);
            d.in_adj[v].insert(u);
            d.arc_count += 1;
        }
        Ok(d)
    }

    /// Transitive tournament: arc (u, v) for every u < v.
    pub fn transitive_tournament(n: usize) -> Self {
        Digraph::from_arcs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &Bitset {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &Bitset {
        &self.in_adj[u]
    }

    /// Arcs as ascending `(u, v)` pairs.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count);
        for u in 0..self.n {
            for v in self.out_adj[u].iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// Undirected graph joining u and v whenever an arc runs between them
    /// in either direction. Stable sets of the digraph are exactly the
    /// independent sets of this graph.
    pub fn conflict_graph(&self) -> UGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in self.out_adj[u].iter() {
                if u < v || !self.out_adj[v].contains(u) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        UGraph::from_edges(self.n, edges).unwrap()
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={})", self.n, self.arc_count)
    }
}

/// True iff `seq` is a directed path of `d`: nonempty, distinct vertices
/// all in range, consecutive pairs joined by arcs. A single vertex is a
/// valid path.
pub fn is_directed_path(d: &Digraph, seq: &[usize]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut seen = Bitset::new(d.n());
    for &v in seq {
        if v >= d.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    seq.windows(2).all(|w| d.has_arc(w[0], w[1]))
}

/// Digraph on the union of a layering's cliques, in host-vertex ids.
///
/// `build` derives the arcs from a host graph (complement arcs oriented by
/// layer index, so the result is acyclic by construction). `from_parts`
/// accepts externally supplied arcs and deliberately does NOT enforce
/// layer-monotone orientation, so that candidate files can be checked
/// rather than rejected unseen; see `first_orientation_violation`.
#[derive(Clone, Debug)]
pub struct LayeredDigraph {
    host_n: usize,
    k: usize,
    layers: Vec<Vec<usize>>,
    layer_of_host: Vec<Option<usize>>,
    dense: Digraph,
    dense_to_host: Vec<usize>,
    host_to_dense: Vec<Option<usize>>,
}

impl LayeredDigraph {
    /// Builds the witness digraph of `layering` over `g`: arc (u, v)
    /// exactly when layer(u) < layer(v) and {u, v} is a non-edge of `g`.
    pub fn build(g: &UGraph, layering: &Layering) -> Self {
        let host_n = g.n();
        let dense_to_host = layering.union_vertices();
        let mut host_to_dense = vec![None; host_n];
        for (i, &v) in dense_to_host.iter().enumerate() {
            host_to_dense[v] = Some(i);
        }
        let mut layer_of_host = vec![None; host_n];
        for (li, layer) in layering.layers().iter().enumerate() {
            for &v in layer {
                layer_of_host[v] = Some(li);
            }
        }
        let mut dense = Digraph::empty(dense_to_host.len());
        for (i, &u) in dense_to_host.iter().enumerate() {
            for (j, &v) in dense_to_host.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (lu, lv) = (layer_of_host[u].unwrap(), layer_of_host[v].unwrap());
                if lu < lv && !g.has_edge(u, v) {
                    dense.out_adj[i].insert(j);
                    dense.in_adj[j].insert(i);
                    dense.arc_count += 1;
                }
            }
        }
        LayeredDigraph {
            host_n,
            k: layering.k(),
            layers: layering.layers().to_vec(),
            layer_of_host,
            dense,
            dense_to_host,
            host_to_dense,
        }
    }

    /// Reassembles a layered digraph from raw parts (e.g. a parsed file).
    /// Validates ranges, layer sizes, disjointness, and that arcs stay
    /// inside the layer union, but not arc orientation.
    pub fn from_parts(
        host_n: usize,
        k: usize,
        layers: Vec<Vec<usize>>,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroLayerSize);
        }
        let mut layer_of_host = vec![None; host_n];
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
                if v >= host_n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        n: host_n,
                    });
                }
                if layer_of_host[v].is_some() {
                    return Err(GraphError::LayersNotDisjoint(v));
                }
                layer_of_host[v] = Some(index);
            }
            sorted_layers.push(layer);
        }
        let mut dense_to_host: Vec<usize> = sorted_layers.iter().flatten().copied().collect();
        dense_to_host.sort_unstable();
        let mut host_to_dense = vec![None; host_n];
        for (i, &v) in dense_to_host.iter().enumerate() {
            host_to_dense[v] = Some(i);
        }
        let mut dense = Digraph::empty(dense_to_host.len());
        for (u, v) in arcs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= host_n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        n: host_n,
                    });
                }
            }
            let (du, dv) = match (host_to_dense[u], host_to_dense[v]) {
                (Some(du), Some(dv)) => (du, dv),
                _ => return Err(GraphError::ArcOutsideLayers(u, v)),
            };
            if dense.out_adj[du].contains(dv) {
                return Err(GraphError::DuplicateArc(u, v));
            }
            dense.out_adj[du].insert(dv);
            dense.in_adj[dv].insert(du);
            dense.arc_count += 1;
        }
        Ok(LayeredDigraph {
            host_n,
            k,
            layers: sorted_layers,
            layer_of_host,
            dense,
            dense_to_host,
            host_to_dense,
        })
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of layers t.
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_of(&self, host_vertex: usize) -> Option<usize> {
        self.layer_of_host.get(host_vertex).copied().flatten()
    }

    /// Vertices of the digraph in host ids, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.dense_to_host
    }

    pub fn vertex_count(&self) -> usize {
        self.dense_to_host.len()
    }

    pub fn arc_count(&self) -> usize {
        self.dense.arc_count()
    }

    /// The same digraph on dense ids `0..vertex_count()`; `vertices()[i]`
    /// is the host id of dense vertex `i`.
    pub fn dense(&self) -> &Digraph {
        &self.dense
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        match (self.to_dense(u), self.to_dense(v)) {
            (Some(du), Some(dv)) => self.dense.has_arc(du, dv),
            _ => false,
        }
    }

    fn to_dense(&self, host: usize) -> Option<usize> {
        self.host_to_dense.get(host).copied().flatten()
    }

    /// Arcs in host ids, ascending.
    pub fn arcs_host(&self) -> Vec<(usize, usize)> {
        self.dense
            .arcs()
            .into_iter()
            .map(|(u, v)| (self.dense_to_host[u], self.dense_to_host[v]))
            .collect()
    }

    /// First arc (in host ids) that is not strictly layer-increasing, if
    /// any. `None` means the digraph is layer-monotone, hence acyclic.
    pub fn first_orientation_violation(&self) -> Option<(usize, usize)> {
        for (u, v) in self.arcs_host() {
            let (lu, lv) = (self.layer_of(u).unwrap(), self.layer_of(v).unwrap());
            if lu >= lv {
                return Some((u, v));
            }
        }
        None
    }

    /// True iff `seq` (host ids) is a directed path of this digraph.
    pub fn is_directed_path(&self, seq: &[usize]) -> bool {
        let dense_seq: Option<Vec<usize>> = seq.iter().map(|&v| self.to_dense(v)).collect();
        match dense_seq {
            Some(s) => is_directed_path(&self.dense, &s),
            None => false,
        }
    }
}
