//! Sparse undirected weighted graphs and their combinatorial Laplacian.
//!
//! A [`Graph`] is immutable once built. Adjacency is stored in compressed
//! row form with neighbors sorted by index, so traversal order is
//! deterministic everywhere downstream.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// An undirected edge with `i < j` and a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// One entry of a node's adjacency row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub node: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
    degrees: Vec<f64>,
    component: Vec<usize>,
    num_components: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes. Endpoint order within a pair does not
    /// matter; `(0, 1)` and `(1, 0)` name the same edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::NodeOutOfRange { i: a, j: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight { i: a, j: b, w });
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge { i, j, w });
        }
        list.sort_by_key(|e| (e.i, e.j));
        if let Some(pair) = list.windows(2).find(|p| p[0].i == p[1].i && p[0].j == p[1].j) {
            return Err(Error::DuplicateEdge {
                i: pair[0].i,
                j: pair[0].j,
            });
        }

        let mut counts = vec![0usize; n];
        for e in &list {
            counts[e.i] += 1;
            counts[e.j] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        let mut fill = offsets[..n].to_vec();
        let placeholder = Neighbor {
            node: usize::MAX,
            weight: 0.0,
        };
        let mut adjacency = vec![placeholder; offsets[n]];
        for e in &list {
            adjacency[fill[e.i]] = Neighbor {
                node: e.j,
                weight: e.w,
            };
            fill[e.i] += 1;
            adjacency[fill[e.j]] = Neighbor {
                node: e.i,
                weight: e.w,
            };
            fill[e.j] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_by_key(|nb| nb.node);
        }
        let degrees = (0..n)
            .map(|v| adjacency[offsets[v]..offsets[v + 1]].iter().map(|nb| nb.weight).sum())
            .collect();

        let mut uf = UnionFind::new(n);
        for e in &list {
            uf.union(e.i, e.j);
        }
        // Label components by their smallest node so labels are canonical.
        let mut label_of_root = vec![usize::MAX; n];
        let mut component = vec![0; n];
        let mut num_components = 0;
        for (v, slot) in component.iter_mut().enumerate() {
            let root = uf.find(v);
            if label_of_root[root] == usize::MAX {
                label_of_root[root] = num_components;
                num_components += 1;
            }
            *slot = label_of_root[root];
        }

        Ok(Graph {
            n,
            edges: list,
            offsets,
            adjacency,
            degrees,
            component,
            num_components,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        let row = self.neighbors(i);
        row.binary_search_by_key(&j, |nb| nb.node)
            .ok()
            .map(|k| row[k].weight)
    }

    /// Component label of each node; labels are `0..num_components()`,
    /// numbered in order of each component's smallest node.
    pub fn components(&self) -> &[usize] {
        &self.component
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn is_connected(&self) -> bool {
        self.num_components == 1
    }

    pub fn laplacian(&self) -> LaplacianView<'_> {
        LaplacianView { graph: self }
    }

    /// `xᵀLx = Σ_(i,j)∈E w_ij (x_i − x_j)²`.
    pub fn laplacian_quadratic(&self, x: &[f64]) -> Result<f64> {
        check_len(self.n, x.len())?;
        Ok(self
            .edges
            .iter()
            .map(|e| {
                let d = x[e.i] - x[e.j];
                e.w * d * d
            })
            .sum())
    }
}

/// Row access and products for `L = D − W` without materializing it.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianView<'g> {
    graph: &'g Graph,
}

impl<'g> LaplacianView<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn diagonal(&self, i: usize) -> f64 {
        self.graph.degrees[i]
    }

    /// Off-diagonal entries of row `i` as `(j, −w_ij)`.
    pub fn off_diagonal(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + 'g {
        self.graph.neighbors(i).iter().map(|nb| (nb.node, -nb.weight))
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.diagonal(i) + self.off_diagonal(i).map(|(_, v)| v).sum::<f64>()
    }

    /// `out = L x`.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = self.graph.degrees[i] * x[i];
            for nb in self.graph.neighbors(i) {
                acc -= nb.weight * x[nb.node];
            }
            *o = acc;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.graph.n, x.len())?;
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        Ok(out)
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

/// Unit-weight path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    Graph::new(n, (1..n).map(|v| (v - 1, v, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge_degrees() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        assert_eq!(g.degrees(), &[1.0, 1.0]);
        assert!(g.is_connected());
    }

    #[test]
    fn path_degree_pattern() {
        let g = path_graph(5).unwrap();
        assert_eq!(g.degrees(), &[1.0, 2.0, 2.0, 2.0, 1.0]);
        assert_eq!(g.num_edges(), 4);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, [(0, 1, 0.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1, -2.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1, f64::NAN)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(Graph::new(3, [(1, 1, 1.0)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::new(3, [(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdge { i: 0, j: 1 })
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3, 1.0)]),
            Err(Error::NodeOutOfRange { .. })
        ));
        assert!(matches!(Graph::new(0, []), Err(Error::EmptyGraph)));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::new(4, [(3, 0, 1.0), (0, 2, 2.0), (1, 0, 3.0), (2, 3, 0.5)]).unwrap();
        let nodes: Vec<usize> = g.neighbors(0).iter().map(|nb| nb.node).collect();
        assert_eq!(nodes, vec![1, 2, 3]);
        for e in g.edges() {
            assert!(e.i < e.j);
            assert_eq!(g.weight(e.i, e.j), Some(e.w));
            assert_eq!(g.weight(e.j, e.i), Some(e.w));
        }
        assert_eq!(g.weight(1, 2), None);
    }

    #[test]
    fn components_are_labelled_canonically() {
        let g = Graph::new(6, [(4, 5, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(g.components(), &[0, 1, 0, 2, 3, 3]);
        assert_eq!(g.num_components(), 4);
    }

    #[test]
    fn quadratic_form_examples() {
        let g = path_graph(5).unwrap();
        assert_eq!(g.laplacian_quadratic(&[3.5; 5]).unwrap(), 0.0);
        assert_eq!(g.laplacian_quadratic(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(
            g.laplacian_quadratic(&[1.0; 4]),
            Err(Error::LengthMismatch { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = Graph::new(4, [(0, 1, 0.3), (1, 2, 1.7), (0, 3, 2.2)]).unwrap();
        let lap = g.laplacian();
        for i in 0..4 {
            assert!(lap.row_sum(i).abs() <= 1e-12 * lap.diagonal(i).max(1.0));
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..20).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let m = pairs.len();
            (
                Just(n),
                Just(pairs),
                proptest::collection::vec((any::<bool>(), 0.01f64..5.0), m),
            )
                .prop_map(|(n, pairs, picks)| {
                    let edges = pairs
                        .into_iter()
                        .zip(picks)
                        .filter(|(_, (keep, _))| *keep)
                        .map(|((i, j), (_, w))| (i, j, w));
                    Graph::new(n, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn quadratic_form_is_psd_and_matches_matvec(
            g in arb_graph(),
            seed in proptest::collection::vec(-10.0f64..10.0, 20),
        ) {
            let x = &seed[..g.n()];
            let q = g.laplacian_quadratic(x).unwrap();
            prop_assert!(q >= 0.0);
            let lx = g.laplacian().apply(x).unwrap();
            let dot: f64 = x.iter().zip(&lx).map(|(a, b)| a * b).sum();
            prop_assert!((q - dot).abs() <= 1e-10 * (1.0 + q.abs()));
        }

        #[test]
        fn degrees_match_incident_weights(g in arb_graph()) {
            let mut rebuilt = vec![0.0; g.n()];
            for e in g.edges() {
                rebuilt[e.i] += e.w;
                rebuilt[e.j] += e.w;
            }
            for (a, b) in rebuilt.iter().zip(g.degrees()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b));
            }
        }
    }
}
