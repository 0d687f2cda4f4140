use std::fmt;

use crate::error::{Error, Result};

/// Ordered disjoint clusters over `0..n`, plus an optional exceptional set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    clusters: Vec<Vec<usize>>,
    exceptional: Vec<usize>,
    owner: Vec<Option<usize>>,
}

impl Partition {
    pub fn new(n: usize, clusters: Vec<Vec<usize>>, exceptional: Vec<usize>) -> Result<Self> {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        let mut claimed = vec![false; n];
        let mut clusters = clusters;
        let mut exceptional = exceptional;
        for (ci, cluster) in clusters.iter_mut().enumerate() {
            if cluster.is_empty() {
                return Err(Error::InvalidPartition(format!("cluster {} is empty", ci + 1)));
            }
            cluster.sort_unstable();
            for &v in cluster.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if claimed[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                claimed[v] = true;
                owner[v] = Some(ci);
            }
        }
        exceptional.sort_unstable();
        for &v in &exceptional {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if claimed[v] {
                return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
            }
            claimed[v] = true;
        }
        if let Some(v) = claimed.iter().position(|c| !c) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Partition { n, clusters, exceptional, owner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.clusters.len()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster(&self, i: usize) -> &[usize] {
        &self.clusters[i]
    }

    pub fn exceptional(&self) -> &[usize] {
        &self.exceptional
    }

    /// Index of the cluster holding `v`, `None` for exceptional vertices.
    pub fn cluster_of(&self, v: usize) -> Option<usize> {
        self.owner[v]
    }

    /// Merges clusters `i` and `j` into the position of the smaller index.
    pub fn merge(&self, i: usize, j: usize) -> Partition {
        let (a, b) = (i.min(j), i.max(j));
        let mut clusters = self.clusters.clone();
        let moved = clusters.remove(b);
        clusters[a].extend(moved);
        Partition::new(self.n, clusters, self.exceptional.clone()).expect("merge keeps partition valid")
    }
}

/// Cluster-wise intersection counts of a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    pub fn zero(k: usize) -> Self {
        IndexVector(vec![0; k])
    }

    pub fn unit(k: usize, j: usize) -> Self {
        let mut v = vec![0; k];
        v[j] = 1;
        IndexVector(v)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_s_vector(&self, s: usize) -> bool {
        self.sum() == s
    }

    /// If `self - other = u_i - u_j` for distinct `i, j`, returns `(i, j)`.
    pub fn transferral_to(&self, other: &IndexVector) -> Option<(usize, usize)> {
        if self.0.len() != other.0.len() {
            return None;
        }
        let mut plus = None;
        let mut minus = None;
        for (idx, (&a, &b)) in self.0.iter().zip(&other.0).enumerate() {
            match a as i64 - b as i64 {
                0 => {}
                1 if plus.is_none() => plus = Some(idx),
                -1 if minus.is_none() => minus = Some(idx),
                _ => return None,
            }
        }
        match (plus, minus) {
            (Some(i), Some(j)) => Some((i, j)),
            _ => None,
        }
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `i_P(S)`: the number of vertices of `S` in each cluster of `P`.
pub fn index_vector(set: &[usize], partition: &Partition) -> Result<IndexVector> {
    let mut coords = vec![0; partition.k()];
    for &v in set {
        if v >= partition.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: partition.n() });
        }
        match partition.cluster_of(v) {
            Some(c) => coords[c] += 1,
            None => return Err(Error::ExceptionalVertex(v)),
        }
    }
    Ok(IndexVector(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_clusters() -> Partition {
        Partition::new(8, vec![vec![0, 1, 2, 3, 4], vec![5, 6]], vec![7]).unwrap()
    }

    #[test]
    fn index_vector_examples() {
        let p = two_clusters();
        assert_eq!(index_vector(&[0, 1, 5], &p).unwrap(), IndexVector(vec![2, 1]));
        assert_eq!(index_vector(&[], &p).unwrap(), IndexVector::zero(2));
        assert_eq!(index_vector(&[0, 1, 2, 3, 4], &p).unwrap(), IndexVector(vec![5, 0]));
        assert_eq!(index_vector(&[0, 7], &p), Err(Error::ExceptionalVertex(7)));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1]], vec![]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]], vec![]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![]], vec![2]).is_err());
        let p = two_clusters().merge(0, 1);
        assert_eq!(p.k(), 1);
        assert_eq!(p.cluster(0), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn transferral_detection() {
        let s = IndexVector(vec![2, 2]);
        let t = IndexVector(vec![1, 3]);
        assert_eq!(s.transferral_to(&t), Some((0, 1)));
        assert_eq!(t.transferral_to(&s), Some((1, 0)));
        assert_eq!(IndexVector(vec![4, 0]).transferral_to(&IndexVector(vec![0, 4])), None);
        assert_eq!(s.transferral_to(&s), None);
    }

    proptest! {
        #[test]
        fn index_vector_sums_to_set_size(mask in 0u32..(1 << 12), split in 1usize..11) {
            let n = 12;
            let p = Partition::new(n, vec![(0..split).collect(), (split..n).collect()], vec![]).unwrap();
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let iv = index_vector(&set, &p).unwrap();
            prop_assert_eq!(iv.sum(), set.len());
            prop_assert!(iv.is_s_vector(set.len()));
        }
    }
}
