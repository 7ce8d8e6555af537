use super::RelationGraph;

/// Searches for a bijection of vertices that preserves adjacency and vertex
/// multiplicities. Edge generator labels are ignored. Returns the mapping
/// `g1 vertex -> g2 vertex` when one exists.
///
/// Plain backtracking with `(degree, multiplicity)` pruning; meant for the
/// few dozen vertices a relation graph has in practice.
pub fn graphs_isomorphic(g1: &RelationGraph, g2: &RelationGraph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let sig = |g: &RelationGraph, v: usize| (g.degree(v), g.vertices()[v].multiplicity);
    let mut s1: Vec<_> = (0..n).map(|v| sig(g1, v)).collect();
    let mut s2: Vec<_> = (0..n).map(|v| sig(g2, v)).collect();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }

    let adj = |g: &RelationGraph| {
        let mut m = vec![vec![false; n]; n];
        for e in g.edges() {
            let (a, b) = e.endpoints;
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    };
    let (a1, a2) = (adj(g1), adj(g2));

    // Visit g1 in BFS order from high-degree vertices so each new vertex is
    // usually adjacent to something already mapped.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g1.degree(v)), v));
    for &start in &by_degree {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(w, _) in g1.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, g1, g2, &a1, &a2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    g1: &RelationGraph,
    g2: &RelationGraph,
    a1: &[Vec<bool>],
    a2: &[Vec<bool>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let want = (g1.degree(v), g1.vertices()[v].multiplicity);
    for cand in 0..g2.vertex_count() {
        if used[cand] || (g2.degree(cand), g2.vertices()[cand].multiplicity) != want {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a1[u][v] == a2[map[u]][cand]);
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if extend(depth + 1, order, g1, g2, a1, a2, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relgraph::tests::abstract_graph;

    fn check_witness(g1: &RelationGraph, g2: &RelationGraph, map: &[usize]) {
        for e in g1.edges() {
            let (a, b) = e.endpoints;
            assert!(g2.adjacent(map[a], map[b]));
        }
        for v in 0..g1.vertex_count() {
            assert_eq!(
                g1.vertices()[v].multiplicity,
                g2.vertices()[map[v]].multiplicity
            );
        }
    }

    #[test]
    fn triangle_vs_path() {
        let tri = abstract_graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let path = abstract_graph(3, &[(0, 1), (1, 2)]);
        assert!(graphs_isomorphic(&tri, &path).is_none());
    }

    #[test]
    fn relabeled_graph_is_isomorphic() {
        let g1 = abstract_graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (3, 5)]);
        let g2 = abstract_graph(6, &[(5, 4), (4, 3), (3, 5), (3, 2), (2, 1), (2, 0)]);
        let map = graphs_isomorphic(&g1, &g2).expect("isomorphic");
        check_witness(&g1, &g2, &map);
    }

    #[test]
    fn multiplicities_must_match() {
        // star centers have different multiplicities once degree forces it
        let g1 = abstract_graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let mut g2 = g1.clone();
        let mut vs = g2.vertices().to_vec();
        vs[1].multiplicity = 5;
        g2 = RelationGraph::new(vs, g2.edges().to_vec()).unwrap();
        assert!(graphs_isomorphic(&g1, &g2).is_none());
    }

    #[test]
    fn empty_graphs() {
        let e = RelationGraph::default();
        assert_eq!(graphs_isomorphic(&e, &e), Some(vec![]));
    }
}
