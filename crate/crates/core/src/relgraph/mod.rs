//! The relation graph of a cyclic-related presentation: one vertex per
//! multiple relation, one edge per pair of multiple relations sharing a
//! generator. Also hosts the graph predicates the rank theorems depend on.

mod blocks;
mod iso;

use std::fmt;

use thiserror::Error;

use crate::incidence::IncidenceData;
use crate::presentation::{intersect_sorted, join, Presentation};

pub use blocks::{biconnected_blocks, Block};
pub use iso::graphs_isomorphic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVertex {
    /// Index of the source relation (or lattice point).
    pub relation: usize,
    pub multiplicity: usize,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphEdge {
    pub generator: usize,
    pub endpoints: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} has endpoint {vertex} but the graph has {count} vertices")]
    BadEndpoint {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("vertices {0} and {1} are joined by more than one edge")]
    MultiEdge(usize, usize),
    #[error("graph is not cycle-separated")]
    NotCycleSeparated,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationGraph {
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl RelationGraph {
    pub fn new(vertices: Vec<GraphVertex>, edges: Vec<GraphEdge>) -> Result<Self, GraphError> {
        let count = vertices.len();
        let mut adjacency = vec![Vec::new(); count];
        for (id, e) in edges.iter().enumerate() {
            let (u, v) = e.endpoints;
            for w in [u, v] {
                if w >= count {
                    return Err(GraphError::BadEndpoint {
                        edge: id,
                        vertex: w,
                        count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop(id));
            }
            if adjacency[u].iter().any(|&(w, _)| w == v) {
                return Err(GraphError::MultiEdge(u.min(v), u.max(v)));
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Self {
            vertices,
            edges,
            adjacency,
        })
    }

    /// Vertices for supports of size >= 3 (in the given order); an edge joins
    /// two vertices whose supports meet in exactly one generator.
    pub fn from_supports<'a, I>(supports: I) -> Self
    where
        I: IntoIterator<Item = (usize, &'a [usize])>,
    {
        let vertices: Vec<GraphVertex> = supports
            .into_iter()
            .filter(|(_, s)| s.len() >= 3)
            .map(|(relation, s)| GraphVertex {
                relation,
                multiplicity: s.len(),
                support: s.to_vec(),
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let common = intersect_sorted(&vertices[i].support, &vertices[j].support);
                if let [g] = common[..] {
                    edges.push(GraphEdge {
                        generator: g,
                        endpoints: (i, j),
                    });
                }
            }
        }
        Self::new(vertices, edges).expect("pairwise construction has no multi-edges")
    }

    pub fn from_incidence(inc: &IncidenceData) -> Self {
        Self::from_supports(inc.supports().iter().enumerate().map(|(i, s)| (i, &s[..])))
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `(neighbor, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].iter().any(|&(w, _)| w == v)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let alive = vec![true; self.vertex_count()];
        components_of(&self.adjacency, &alive)
    }

    /// Subgraph induced on `keep` (vertex ids in ascending order are renumbered
    /// in that order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.vertex_count()];
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.endpoints.0] != usize::MAX && index[e.endpoints.1] != usize::MAX)
            .map(|e| GraphEdge {
                generator: e.generator,
                endpoints: (index[e.endpoints.0], index[e.endpoints.1]),
            })
            .collect();
        Self::new(vertices, edges).expect("induced subgraph of a simple graph is simple")
    }
}

fn components_of(adjacency: &[Vec<(usize, usize)>], alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adjacency.len()];
    let mut out = Vec::new();
    for start in 0..adjacency.len() {
        if seen[start] || !alive[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, _) in &adjacency[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The relation graph of a presentation, vertices in canonical relation order.
pub fn build_graph(p: &Presentation) -> RelationGraph {
    RelationGraph::from_supports(
        p.relations()
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.support())),
    )
}

/// First Betti number `|E| - |V| + #components`.
pub fn betti(g: &RelationGraph) -> usize {
    g.edge_count() + g.components().len() - g.vertex_count()
}

/// Every block is a single edge or a simple cycle, and no vertex lies on two
/// cycles.
pub fn is_cycle_separated(g: &RelationGraph) -> bool {
    let mut on_cycle = vec![false; g.vertex_count()];
    for block in biconnected_blocks(g) {
        match block {
            Block::Bridge(_) => {}
            Block::Cycle(vs) => {
                for v in vs {
                    if on_cycle[v] {
                        return false;
                    }
                    on_cycle[v] = true;
                }
            }
            Block::Other { .. } => return false,
        }
    }
    true
}

/// The recursive pruning test: a graph passes if its first Betti number is at
/// most one, or if removing every vertex of degree at most two (with its
/// edges) leaves a graph that passes. Vertices are pruned simultaneously and
/// the test is applied to each connected component separately; a component
/// with `β > 1` and no vertex of degree <= 2 fails.
pub fn is_conjugation_free_graph(g: &RelationGraph) -> bool {
    let alive = vec![true; g.vertex_count()];
    components_of(&g.adjacency, &alive)
        .into_iter()
        .all(|comp| cf_component(g, comp))
}

fn cf_component(g: &RelationGraph, comp: Vec<usize>) -> bool {
    let mut alive = vec![false; g.vertex_count()];
    for &v in &comp {
        alive[v] = true;
    }
    let degree = |v: usize, alive: &[bool]| g.adjacency[v].iter().filter(|(w, _)| alive[*w]).count();
    let edges: usize = comp.iter().map(|&v| degree(v, &alive)).sum::<usize>() / 2;
    // connected, so one component
    let beta = edges + 1 - comp.len();
    if beta <= 1 {
        return true;
    }
    let pruned: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| degree(v, &alive) <= 2)
        .collect();
    if pruned.is_empty() {
        return false;
    }
    for v in pruned {
        alive[v] = false;
    }
    components_of(&g.adjacency, &alive)
        .into_iter()
        .all(|c| cf_component(g, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    /// A whole cycle identified to one node.
    Cycled,
    Ordinary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedNode {
    pub kind: NodeKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    pub nodes: Vec<ContractedNode>,
    pub links: Vec<(usize, usize)>,
}

impl ContractedGraph {
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for &(a, b) in &self.links {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn cycled_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Cycled).count()
    }
}

/// Collapses each cycle of a cycle-separated graph to a single node. Nodes
/// are listed in order of their smallest vertex.
pub fn contract(g: &RelationGraph) -> Result<ContractedGraph, GraphError> {
    if !is_cycle_separated(g) {
        return Err(GraphError::NotCycleSeparated);
    }
    let mut node_of = vec![usize::MAX; g.vertex_count()];
    let mut groups: Vec<(NodeKind, Vec<usize>)> = Vec::new();
    let mut bridges = Vec::new();
    for block in biconnected_blocks(g) {
        match block {
            Block::Cycle(mut vs) => {
                vs.sort_unstable();
                for &v in &vs {
                    node_of[v] = groups.len();
                }
                groups.push((NodeKind::Cycled, vs));
            }
            Block::Bridge(e) => bridges.push(e),
            Block::Other { .. } => unreachable!("checked cycle-separated"),
        }
    }
    for v in 0..g.vertex_count() {
        if node_of[v] == usize::MAX {
            node_of[v] = groups.len();
            groups.push((NodeKind::Ordinary, vec![v]));
        }
    }
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&i| groups[i].1[0]);
    let mut renumber = vec![0; groups.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let nodes = order
        .iter()
        .map(|&i| ContractedNode {
            kind: groups[i].0,
            vertices: groups[i].1.clone(),
        })
        .collect();
    let mut links: Vec<(usize, usize)> = bridges
        .into_iter()
        .map(|e| {
            let (u, v) = g.edges[e].endpoints;
            let (a, b) = (renumber[node_of[u]], renumber[node_of[v]]);
            (a.min(b), a.max(b))
        })
        .collect();
    links.sort_unstable();
    Ok(ContractedGraph { nodes, links })
}

/// `key = value` dump of a graph and its predicates.
pub struct GraphReport<'a>(pub &'a RelationGraph);

impl fmt::Display for GraphReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.0;
        for (id, v) in g.vertices.iter().enumerate() {
            writeln!(
                f,
                "vertex.{} = mult={} support={}",
                id + 1,
                v.multiplicity,
                join(&v.support, ",")
            )?;
        }
        for (id, e) in g.edges.iter().enumerate() {
            writeln!(
                f,
                "edge.{} = gen={} {}-{}",
                id + 1,
                e.generator,
                e.endpoints.0 + 1,
                e.endpoints.1 + 1
            )?;
        }
        writeln!(f, "vertices = {}", g.vertex_count())?;
        writeln!(f, "edges = {}", g.edge_count())?;
        writeln!(f, "beta = {}", betti(g))?;
        writeln!(f, "cycle_separated = {}", is_cycle_separated(g))?;
        writeln!(f, "cf_graph = {}", is_conjugation_free_graph(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    pub(crate) fn abstract_graph(nv: usize, edges: &[(usize, usize)]) -> RelationGraph {
        let p = fixtures::presentation_from_graph(nv, edges, 0);
        build_graph(&p)
    }

    fn complete(k: usize) -> RelationGraph {
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                edges.push((i, j));
            }
        }
        abstract_graph(k, &edges)
    }

    #[test]
    fn g2_graph() {
        let g = build_graph(&fixtures::example_g2());
        assert_eq!(g.vertex_count(), 3);
        let mut labels: Vec<usize> = g.edges().iter().map(|e| e.generator).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec![1, 3, 5]);
    }

    #[test]
    fn abelian_and_pencil_graphs() {
        assert!(build_graph(&fixtures::generic(5)).is_empty());
        let g = build_graph(&fixtures::pencil(6));
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti(&abstract_graph(3, &[(0, 1), (1, 2), (2, 0)])), 1);
        assert_eq!(betti(&abstract_graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)])), 0);
        assert_eq!(betti(&complete(4)), 3);
        assert_eq!(betti(&RelationGraph::default()), 0);
        // two triangles, disjoint
        let g = abstract_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(betti(&g), 2);
    }

    #[test]
    fn cycle_separation() {
        assert!(is_cycle_separated(&build_graph(&fixtures::cycle_separated_example())));
        assert!(!is_cycle_separated(&complete(4)));
        // bowtie: two triangles through one vertex
        let bowtie = abstract_graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(!is_cycle_separated(&bowtie));
        assert!(is_cycle_separated(&abstract_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])));
    }

    #[test]
    fn conjugation_free_graphs() {
        assert!(is_conjugation_free_graph(&build_graph(
            &fixtures::cycle_separated_example()
        )));
        assert!(!is_conjugation_free_graph(&complete(4)));
        assert!(is_conjugation_free_graph(&abstract_graph(3, &[(0, 1), (1, 2), (2, 0)])));
        // K4 with a pendant: pruning the leaf leaves K4
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)];
        assert!(!is_conjugation_free_graph(&abstract_graph(5, &edges)));
        // K4 minus an edge: degree-2 vertices go, leaving one edge
        edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
        assert!(is_conjugation_free_graph(&abstract_graph(4, &edges)));
    }

    #[test]
    fn contraction() {
        let tri = abstract_graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let c = contract(&tri).unwrap();
        assert_eq!(c.nodes.len(), 1);
        assert_eq!(c.nodes[0].kind, NodeKind::Cycled);

        let tree = abstract_graph(4, &[(0, 1), (1, 2), (1, 3)]);
        let c = contract(&tree).unwrap();
        assert_eq!(c.nodes.len(), 4);
        assert!(c.nodes.iter().all(|n| n.kind == NodeKind::Ordinary));
        assert_eq!(c.links.len(), 3);

        let g = build_graph(&fixtures::cycle_separated_example());
        let c = contract(&g).unwrap();
        assert_eq!(c.cycled_count(), 2);
        assert_eq!(c.nodes.len(), 4);
        assert!(c.is_forest());

        assert_eq!(contract(&complete(4)), Err(GraphError::NotCycleSeparated));
    }

    #[test]
    fn report_format() {
        let g = build_graph(&fixtures::example_h());
        let text = GraphReport(&g).to_string();
        assert_eq!(
            text,
            "vertex.1 = mult=3 support=1,2,3\n\
             vertex.2 = mult=3 support=1,5,6\n\
             vertex.3 = mult=3 support=3,4,5\n\
             edge.1 = gen=1 1-2\n\
             edge.2 = gen=3 1-3\n\
             edge.3 = gen=5 2-3\n\
             vertices = 3\n\
             edges = 3\n\
             beta = 1\n\
             cycle_separated = true\n\
             cf_graph = true\n"
        );
    }

    #[test]
    fn graph_does_not_depend_on_relation_order() {
        let p = fixtures::example_h();
        let mut rels = p.relations().to_vec();
        rels.reverse();
        let q = Presentation::new(p.generators(), rels, false).unwrap();
        assert_eq!(build_graph(&p), build_graph(&q));
    }
}
