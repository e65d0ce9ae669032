use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    Multicyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    pub kind: ComponentKind,
    pub vertices: usize,
    pub edges: usize,
    /// Smallest vertex id in the component.
    pub root: usize,
}

/// Classifies every connected component by its cyclomatic number.
/// Components are listed in order of their smallest vertex.
pub fn component_census(g: &Graph) -> Vec<ComponentInfo> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let (mut vertices, mut degree_sum) = (0usize, 0usize);
        while let Some(v) = stack.pop() {
            vertices += 1;
            degree_sum += g.degree(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let edges = degree_sum / 2;
        let kind = match (edges + 1).cmp(&vertices) {
            std::cmp::Ordering::Equal => ComponentKind::Tree,
            _ if edges == vertices => ComponentKind::Unicyclic,
            _ => ComponentKind::Multicyclic,
        };
        out.push(ComponentInfo {
            kind,
            vertices,
            edges,
            root,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn path_is_one_tree() {
        let c = component_census(&path(5));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, ComponentKind::Tree);
        assert_eq!((c[0].vertices, c[0].edges), (5, 4));
    }

    #[test]
    fn cycle_plus_isolated_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let kinds: Vec<_> = component_census(&g).iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![ComponentKind::Unicyclic, ComponentKind::Tree]);
    }

    #[test]
    fn complete_four_is_multicyclic() {
        let c = component_census(&complete(4));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, ComponentKind::Multicyclic);
    }
}
