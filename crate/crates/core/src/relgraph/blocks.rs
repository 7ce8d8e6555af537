use super::RelationGraph;

/// A biconnected component, classified by shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    /// A single edge (by edge id).
    Bridge(usize),
    /// A simple cycle, vertices in traversal-independent (unsorted) order.
    Cycle(Vec<usize>),
    /// Anything with more edges than vertices.
    Other { vertices: Vec<usize>, edges: Vec<usize> },
}

/// Tarjan's edge-stack block decomposition. Blocks come out in DFS
/// completion order, which is deterministic for a given graph.
pub fn biconnected_blocks(g: &RelationGraph) -> Vec<Block> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent edge, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
            if *next < g.neighbors(v).len() {
                let (w, e) = g.neighbors(v)[*next];
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push(e);
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        blocks.push(classify(g, edges));
                    }
                }
            }
        }
    }
    blocks
}

fn classify(g: &RelationGraph, mut edges: Vec<usize>) -> Block {
    if edges.len() == 1 {
        return Block::Bridge(edges[0]);
    }
    let mut vertices: Vec<usize> = edges
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.edges()[e].endpoints;
            [a, b]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() == edges.len() {
        // biconnected with |E| = |V| is a simple cycle
        Block::Cycle(vertices)
    } else {
        edges.sort_unstable();
        Block::Other { vertices, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relgraph::tests::abstract_graph;

    #[test]
    fn triangle_with_tail() {
        let g = abstract_graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let blocks = biconnected_blocks(&g);
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().any(|b| matches!(b, Block::Bridge(_))));
        assert!(blocks.contains(&Block::Cycle(vec![0, 1, 2])));
    }

    #[test]
    fn theta_graph_is_other() {
        // two vertices joined by three internally disjoint paths
        let g = abstract_graph(4, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 1)]);
        let blocks = biconnected_blocks(&g);
        assert_eq!(blocks.len(), 1);
        assert!(matches!(blocks[0], Block::Other { .. }));
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = abstract_graph(
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)],
        );
        let mut seen = vec![0; g.edge_count()];
        for b in biconnected_blocks(&g) {
            match b {
                Block::Bridge(e) => seen[e] += 1,
                Block::Cycle(vs) => {
                    for e in g.edges().iter().enumerate().filter(|(_, e)| {
                        vs.contains(&e.endpoints.0) && vs.contains(&e.endpoints.1)
                    }) {
                        seen[e.0] += 1;
                    }
                }
                Block::Other { edges, .. } => edges.iter().for_each(|&e| seen[e] += 1),
            }
        }
        assert!(seen.iter().all(|&c| c == 1), "{seen:?}");
    }
}
