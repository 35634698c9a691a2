use super::{Edge, End, MetricGraph, VertexCondition, VertexId};
use crate::error::{Error, Result};

/// One piece of a graph cut open at a vertex.
#[derive(Clone, Debug)]
pub struct SplitComponent {
    pub graph: MetricGraph,
    /// The copy of the split vertex inside `graph`.
    pub attach: VertexId,
}

/// Disconnects `g` at `v`: every edge end at `v` gets its own copy of `v`,
/// and the connected components of the result are returned in the order of
/// `v`'s incident edges. On a tree this yields `deg(v)` components.
pub fn split_at_vertex(g: &MetricGraph, v: VertexId) -> Result<Vec<SplitComponent>> {
    g.check_vertex(v)?;
    let n = g.vertex_count();
    let deg = g.degree(v);

    let mut labels = g.labels.clone();
    let mut conditions = g.conditions.clone();
    let mut edges = g.edges.clone();
    for (i, end) in g.incident(v).iter().enumerate() {
        let copy = n + i;
        labels.push(g.labels[v].clone());
        conditions.push(g.conditions[v]);
        let e = &mut edges[end.edge];
        match end.end {
            End::Source => e.source = copy,
            End::Target => e.target = copy,
        }
    }
    let opened = MetricGraph::from_parts(labels, edges, conditions);
    let comp = opened.components();

    let mut out: Vec<SplitComponent> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..deg {
        let copy = n + i;
        if seen.contains(&comp[copy]) {
            continue;
        }
        seen.push(comp[copy]);
        let members: Vec<_> = (0..opened.edge_count())
            .filter(|&e| comp[opened.edges[e].source] == comp[copy])
            .collect();
        let (graph, map) = opened.subgraph(&members);
        let attach = map[copy].expect("copy lies on one of its component's edges");
        out.push(SplitComponent { graph, attach });
    }
    Ok(out)
}

/// Disjoint union of `parts` with all `attach` vertices identified into one.
///
/// The vertices of `parts[0]` keep their ids (the glued vertex is
/// `attach[0]`); the remaining vertices of later parts are appended in order.
pub fn glue_graphs(parts: &[MetricGraph], attach: &[VertexId]) -> Result<MetricGraph> {
    if parts.is_empty() {
        return Err(Error::Validation("nothing to glue".into()));
    }
    if parts.len() != attach.len() {
        return Err(Error::Validation(format!(
            "{} parts but {} attach vertices",
            parts.len(),
            attach.len()
        )));
    }
    for (p, &a) in parts.iter().zip(attach) {
        p.check_vertex(a)?;
    }

    let glued = attach[0];
    let mut labels = parts[0].labels.clone();
    let mut conditions = parts[0].conditions.clone();
    let mut edges = parts[0].edges.clone();
    for (p, &a) in parts.iter().zip(attach).skip(1) {
        let mut map = vec![glued; p.vertex_count()];
        for (v, slot) in map.iter_mut().enumerate() {
            if v != a {
                *slot = labels.len();
                labels.push(p.labels[v].clone());
                conditions.push(p.conditions[v]);
            }
        }
        if labels[glued].is_none() {
            labels[glued] = p.labels[a].clone();
        }
        edges.extend(p.edges.iter().map(|e| Edge {
            source: map[e.source],
            target: map[e.target],
            length: e.length,
        }));
    }
    Ok(MetricGraph::from_parts(labels, edges, conditions))
}

fn rooted_code(g: &MetricGraph, v: VertexId, parent: Option<VertexId>) -> String {
    let mut children: Vec<String> = g
        .neighbours(v)
        .filter(|&(w, _)| Some(w) != parent)
        .map(|(w, e)| format!("{:?}:{}", g.length(e), rooted_code(g, w, Some(v))))
        .collect();
    children.sort();
    let mark = match g.condition(v) {
        VertexCondition::Standard => 's',
        VertexCondition::Dirichlet => 'd',
    };
    format!("{mark}({})", children.join(","))
}

/// Isomorphism of metric trees: a bijection of vertices preserving adjacency,
/// edge lengths (bit-exact) and vertex conditions. Labels are ignored.
pub fn is_isomorphic_tree(a: &MetricGraph, b: &MetricGraph) -> bool {
    if !a.is_tree() || !b.is_tree() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let target = rooted_code(b, 0, None);
    (0..a.vertex_count()).any(|r| rooted_code(a, r, None) == target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> MetricGraph {
        MetricGraph::new(4, &[(0, 1, 1.0), (0, 2, 2.0), (3, 0, 3.0)]).unwrap()
    }

    #[test]
    fn split_star_at_centre() {
        let parts = split_at_vertex(&star3(), 0).unwrap();
        assert_eq!(parts.len(), 3);
        let mut lengths: Vec<f64> = parts.iter().map(|p| p.graph.total_length()).collect();
        lengths.sort_by(f64::total_cmp);
        assert_eq!(lengths, vec![1.0, 2.0, 3.0]);
        for p in &parts {
            assert_eq!(p.graph.edge_count(), 1);
            assert_eq!(p.graph.degree(p.attach), 1);
        }
    }

    #[test]
    fn split_path_in_middle() {
        let g = MetricGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let parts = split_at_vertex(&g, 1).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.graph.vertex_count() == 2));
    }

    #[test]
    fn split_at_leaf_is_identity() {
        let g = star3();
        let parts = split_at_vertex(&g, 2).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(is_isomorphic_tree(&parts[0].graph, &g));
    }

    #[test]
    fn split_unknown_vertex() {
        assert!(matches!(
            split_at_vertex(&star3(), 9),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn glue_two_intervals() {
        let i = MetricGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        let g = glue_graphs(&[i.clone(), i], &[1, 0]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.total_length(), 2.0);
        assert!(g.is_tree());
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn glue_rejects_empty_and_mismatch() {
        assert!(matches!(glue_graphs(&[], &[]), Err(Error::Validation(_))));
        let i = MetricGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        assert!(glue_graphs(std::slice::from_ref(&i), &[0, 1]).is_err());
        assert!(glue_graphs(&[i], &[5]).is_err());
    }

    #[test]
    fn isomorphism_sees_lengths_and_conditions() {
        let a = star3();
        let b = MetricGraph::new(4, &[(1, 0, 3.0), (1, 2, 1.0), (1, 3, 2.0)]).unwrap();
        assert!(is_isomorphic_tree(&a, &b));
        let c = MetricGraph::new(4, &[(1, 0, 3.0), (1, 2, 1.0), (1, 3, 2.5)]).unwrap();
        assert!(!is_isomorphic_tree(&a, &c));
        let d = b.clone().with_dirichlet(&[0]).unwrap();
        assert!(!is_isomorphic_tree(&a, &d));
        let path = MetricGraph::new(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0)]).unwrap();
        assert!(!is_isomorphic_tree(&a, &path));
    }

    #[test]
    fn split_keeps_cycle_together() {
        // triangle with a tail at vertex 0: the cycle stays in one piece
        let g = MetricGraph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (0, 3, 1.0)]).unwrap();
        let parts = split_at_vertex(&g, 0).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].graph.edge_count(), 3);
        assert_eq!(parts[1].graph.edge_count(), 1);
    }
}
