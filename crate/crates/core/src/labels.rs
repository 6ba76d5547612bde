use std::collections::HashMap;

use serde::Serialize;

use crate::error::LabelingError;
use crate::graph::Vertex;

/// Per-vertex component ids. A canonical labeling names each component by its
/// smallest vertex, so `label(label(v)) == label(v)` and `label(v) <= v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentLabeling {
    labels: Vec<Vertex>,
    canonical: bool,
}

impl ComponentLabeling {
    pub fn canonical(labels: Vec<Vertex>) -> Self {
        ComponentLabeling {
            labels,
            canonical: true,
        }
    }

    /// Arbitrary component names, e.g. read back from a file.
    pub fn arbitrary(labels: Vec<Vertex>) -> Self {
        ComponentLabeling {
            labels,
            canonical: false,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn into_labels(self) -> Vec<Vertex> {
        self.labels
    }

    /// Relabels every component by its minimum vertex.
    pub fn to_canonical(&self) -> ComponentLabeling {
        if self.canonical {
            return self.clone();
        }
        let mut first: HashMap<Vertex, Vertex> = HashMap::new();
        let labels = self
            .labels
            .iter()
            .enumerate()
            .map(|(v, &l)| *first.entry(l).or_insert(v as Vertex))
            .collect();
        ComponentLabeling::canonical(labels)
    }
}

/// Number of components. For canonical labelings this counts the roots.
pub fn count_components(labeling: &ComponentLabeling) -> usize {
    if labeling.canonical {
        labeling
            .labels
            .iter()
            .enumerate()
            .filter(|&(v, &l)| v as Vertex == l)
            .count()
    } else {
        let mut distinct = labeling.labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len()
    }
}

/// A pair of vertices grouped together by one labeling and apart by the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub u: Vertex,
    pub v: Vertex,
    /// True when `u` and `v` share a label in the first labeling.
    pub together_in_first: bool,
}

/// First witness that `a` and `b` describe different partitions, scanning
/// vertices in order and keeping a label-to-label map in each direction.
pub fn partition_mismatch(
    a: &ComponentLabeling,
    b: &ComponentLabeling,
) -> Result<Option<PartitionWitness>, LabelingError> {
    if a.len() != b.len() {
        return Err(LabelingError::LengthMismatch(a.len(), b.len()));
    }
    // label -> (label on the other side, first vertex carrying it)
    let mut forward: HashMap<Vertex, (Vertex, Vertex)> = HashMap::new();
    let mut backward: HashMap<Vertex, (Vertex, Vertex)> = HashMap::new();
    for (v, (&la, &lb)) in a.labels.iter().zip(&b.labels).enumerate() {
        let v = v as Vertex;
        let (mapped_b, first_a) = *forward.entry(la).or_insert((lb, v));
        if mapped_b != lb {
            return Ok(Some(PartitionWitness {
                u: first_a,
                v,
                together_in_first: true,
            }));
        }
        let (mapped_a, first_b) = *backward.entry(lb).or_insert((la, v));
        if mapped_a != la {
            return Ok(Some(PartitionWitness {
                u: first_b,
                v,
                together_in_first: false,
            }));
        }
    }
    Ok(None)
}

/// True iff `a` and `b` induce the same partition of the vertices.
pub fn partitions_equal(
    a: &ComponentLabeling,
    b: &ComponentLabeling,
) -> Result<bool, LabelingError> {
    Ok(partition_mismatch(a, b)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arb(labels: &[Vertex]) -> ComponentLabeling {
        ComponentLabeling::arbitrary(labels.to_vec())
    }

    #[test]
    fn counting() {
        assert_eq!(
            count_components(&ComponentLabeling::canonical(vec![0, 0, 0, 3, 3])),
            2
        );
        assert_eq!(
            count_components(&ComponentLabeling::canonical(vec![0, 1, 2, 3, 4])),
            5
        );
        assert_eq!(count_components(&ComponentLabeling::canonical(vec![])), 0);
        assert_eq!(count_components(&arb(&[7, 7, 9])), 2);
    }

    #[test]
    fn partition_equality() {
        assert!(partitions_equal(&arb(&[0, 0, 3, 3]), &arb(&[1, 1, 0, 0])).unwrap());
        assert!(!partitions_equal(&arb(&[0, 0, 0, 3]), &arb(&[0, 0, 3, 3])).unwrap());
        assert!(partitions_equal(&arb(&[]), &arb(&[])).unwrap());
        assert_eq!(
            partitions_equal(&arb(&[0]), &arb(&[0, 1])),
            Err(LabelingError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn mismatch_witness() {
        let merged = arb(&[0, 0, 0, 0]);
        let split = arb(&[0, 0, 2, 2]);
        assert_eq!(
            partition_mismatch(&merged, &split).unwrap(),
            Some(PartitionWitness {
                u: 0,
                v: 2,
                together_in_first: true
            })
        );
        assert_eq!(
            partition_mismatch(&split, &merged).unwrap(),
            Some(PartitionWitness {
                u: 0,
                v: 2,
                together_in_first: false
            })
        );
    }

    #[test]
    fn canonicalize() {
        assert_eq!(
            arb(&[5, 9, 5, 9, 2]).to_canonical().labels(),
            &[0, 1, 0, 1, 4]
        );
    }
}
