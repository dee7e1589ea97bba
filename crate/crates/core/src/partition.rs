//! Vertex partitions and vertex permutations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Assignment of every vertex to one of `m` classes `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPartition {
    class_of: Vec<usize>,
    m: usize,
}

impl VertexPartition {
    /// Every class index in `0..m` must be used at least once.
    pub fn new(class_of: Vec<usize>, m: usize) -> Result<VertexPartition> {
        let mut used = vec![false; m];
        for (v, &c) in class_of.iter().enumerate() {
            if c >= m {
                return Err(Error::Partition(format!("vertex {v} has class {c} >= {m}")));
            }
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::Partition(format!("class {c} is empty")));
        }
        Ok(VertexPartition { class_of, m })
    }

    /// Builds a partition of `0..order` from explicit classes.
    pub fn from_classes(order: usize, classes: &[Vec<usize>]) -> Result<VertexPartition> {
        let mut class_of = vec![usize::MAX; order];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                if v >= order {
                    return Err(Error::VertexOutOfRange { vertex: v, order });
                }
                if class_of[v] != usize::MAX {
                    return Err(Error::Partition(format!("vertex {v} appears twice")));
                }
                class_of[v] = c;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Partition(format!("vertex {v} is unassigned")));
        }
        VertexPartition::new(class_of, classes.len())
    }

    /// `m` consecutive blocks of `n` vertices.
    pub fn blocks(m: usize, n: usize) -> VertexPartition {
        VertexPartition { class_of: (0..m * n).map(|v| v / n).collect(), m }
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.m
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each class in ascending vertex order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// All classes have exactly `n` members.
    pub fn is_uniform(&self, n: usize) -> bool {
        self.class_sizes().iter().all(|&s| s == n)
    }

    /// Renames class `c` to `map[c]`.
    pub fn relabel_classes(&self, map: &PermutationMap) -> Result<VertexPartition> {
        if map.len() != self.m {
            return Err(Error::Partition(format!("class map of size {} for {} classes", map.len(), self.m)));
        }
        Ok(VertexPartition { class_of: self.class_of.iter().map(|&c| map.apply(c)).collect(), m: self.m })
    }

    /// The partition carried along when vertices are relabeled by `perm`.
    pub fn permuted(&self, perm: &PermutationMap) -> VertexPartition {
        let mut class_of = vec![0; self.order()];
        for (v, &c) in self.class_of.iter().enumerate() {
            class_of[perm.apply(v)] = c;
        }
        VertexPartition { class_of, m: self.m }
    }

    /// Concatenation: vertices of `other` follow those of `self`; class
    /// indices are shared.
    pub fn concat(&self, other: &VertexPartition) -> VertexPartition {
        let m = self.m.max(other.m);
        let mut class_of = self.class_of.clone();
        class_of.extend_from_slice(&other.class_of);
        VertexPartition { class_of, m }
    }
}

/// Bijection on `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermutationMap {
    image: Vec<usize>,
}

impl PermutationMap {
    pub fn new(image: Vec<usize>) -> Result<PermutationMap> {
        let mut seen = vec![false; image.len()];
        for (x, &y) in image.iter().enumerate() {
            if y >= image.len() {
                return Err(Error::Permutation(format!("{x} maps to {y}, outside 0..{}", image.len())));
            }
            if seen[y] {
                return Err(Error::Permutation(format!("{y} is hit twice")));
            }
            seen[y] = true;
        }
        Ok(PermutationMap { image })
    }

    pub fn identity(len: usize) -> PermutationMap {
        PermutationMap { image: (0..len).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> PermutationMap {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        PermutationMap { image: inv }
    }

    /// `self` after `first`: `x ↦ self(first(x))`.
    pub fn after(&self, first: &PermutationMap) -> PermutationMap {
        PermutationMap { image: first.image.iter().map(|&y| self.image[y]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_involution(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| self.image[y] == x)
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.image.iter().enumerate().filter(|(x, y)| x != *y).map(|(x, _)| x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(vec![0, 1, 1], 2).is_ok());
        assert!(VertexPartition::new(vec![0, 0, 0], 2).is_err());
        assert!(VertexPartition::new(vec![0, 2], 2).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1]]).is_err());
        let p = VertexPartition::from_classes(4, &[vec![3, 0], vec![1, 2]]).unwrap();
        assert_eq!(p.classes(), vec![vec![0, 3], vec![1, 2]]);
        assert!(p.is_uniform(2));
    }

    #[test]
    fn permutation_basics() {
        assert!(PermutationMap::new(vec![0, 0]).is_err());
        assert!(PermutationMap::new(vec![2, 0]).is_err());
        let p = PermutationMap::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.after(&p.inverse()), PermutationMap::identity(3));
        assert!(!p.is_involution());
        let s = PermutationMap::new(vec![1, 0, 2]).unwrap();
        assert!(s.is_involution());
        assert_eq!(s.moved_points().collect::<Vec<_>>(), vec![0, 1]);
    }
}
