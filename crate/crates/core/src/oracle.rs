//! Sequential reference labelings. Both oracles produce min-canonical labels
//! and are kept simple on purpose: they are the ground truth for the parallel
//! engines.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Graph, Vertex};
use crate::labels::ComponentLabeling;

/// Union-find with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

pub fn oracle_cc(graph: &Graph) -> ComponentLabeling {
    let n = graph.num_vertices();
    let mut sets = DisjointSet::new(n);
    for &(u, v) in graph.edges() {
        sets.union(u as usize, v as usize);
    }
    // Ascending scan: the first vertex seen in each set is its minimum.
    let mut min_of_root: Vec<Option<Vertex>> = vec![None; n];
    let labels = (0..n)
        .map(|v| {
            let root = sets.find(v);
            *min_of_root[root].get_or_insert(v as Vertex)
        })
        .collect();
    ComponentLabeling::canonical(labels)
}

/// Breadth-first search from each unvisited vertex in ascending order,
/// labelling with the source.
pub fn bfs_cc(graph: &Graph) -> ComponentLabeling {
    let n = graph.num_vertices();
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in graph.edges() {
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }
    let mut labels: Vec<Option<Vertex>> = vec![None; n];
    let mut queue = VecDeque::new();
    for source in 0..n {
        if labels[source].is_some() {
            continue;
        }
        let label = source as Vertex;
        labels[source] = Some(label);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            for &y in &adjacency[x] {
                if labels[y as usize].is_none() {
                    labels[y as usize] = Some(label);
                    queue.push_back(y as usize);
                }
            }
        }
    }
    ComponentLabeling::canonical(labels.into_iter().map(Option::unwrap).collect())
}

/// Component sizes keyed by label.
pub fn component_histogram(labeling: &ComponentLabeling) -> BTreeMap<Vertex, usize> {
    let mut sizes = BTreeMap::new();
    for &label in labeling.labels() {
        *sizes.entry(label).or_insert(0) += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;

    fn two_parts() -> Graph {
        Graph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_cc(&two_parts()).labels(), &[0, 0, 0, 3, 3]);
        assert_eq!(
            oracle_cc(&Graph::new(3, vec![(0, 0)]).unwrap()).labels(),
            &[0, 1, 2]
        );
        assert_eq!(oracle_cc(&grid(3, 3).unwrap()).labels(), &[0; 9]);
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(bfs_cc(&two_parts()).labels(), &[0, 0, 0, 3, 3]);
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(bfs_cc(&k4).labels(), &[0, 0, 0, 0]);
        assert_eq!(bfs_cc(&Graph::empty(2)).labels(), &[0, 1]);
    }

    #[test]
    fn labels_are_min_even_when_edges_point_down() {
        let g = Graph::new(6, vec![(5, 4), (4, 2), (3, 1)]).unwrap();
        assert_eq!(oracle_cc(&g).labels(), &[0, 1, 2, 1, 2, 2]);
        assert_eq!(bfs_cc(&g), oracle_cc(&g));
    }

    #[test]
    fn histogram() {
        let h = component_histogram(&ComponentLabeling::canonical(vec![0, 0, 0, 3, 3]));
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(0, 3), (3, 2)]);
        let h = component_histogram(&ComponentLabeling::canonical(vec![0, 1]));
        assert_eq!(h.len(), 2);
        assert!(component_histogram(&ComponentLabeling::canonical(vec![])).is_empty());
    }

    #[test]
    fn disjoint_set_basics() {
        let mut d = DisjointSet::new(4);
        assert!(d.union(0, 1));
        assert!(!d.union(1, 0));
        assert!(d.union(2, 3));
        assert_eq!(d.find(0), d.find(1));
        assert_ne!(d.find(1), d.find(2));
        let r = d.find(3);
        assert_eq!(d.find(r), r);
    }
}
