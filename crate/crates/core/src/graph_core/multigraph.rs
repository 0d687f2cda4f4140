use crate::error::{Error, Result};

/// Multigraph with edge multiplicities in `{0, 1, 2}`; the reduced graph of a clustered host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph2 {
    k: usize,
    mult: Vec<u8>,
}

impl Multigraph2 {
    pub fn new(k: usize) -> Self {
        Multigraph2 { k, mult: vec![0; k * k] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&mut self, i: usize, j: usize, m: u8) -> Result<()> {
        for w in [i, j] {
            if w >= self.k {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.k });
            }
        }
        if m > 2 {
            return Err(Error::BadMultiplicity(m));
        }
        if i == j {
            if m == 0 {
                return Ok(());
            }
            return Err(Error::LoopEdge(i));
        }
        self.mult[i * self.k + j] = m;
        self.mult[j * self.k + i] = m;
        Ok(())
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> u8 {
        self.mult[i * self.k + j]
    }

    /// Adjacent in the underlying simple graph (multiplicity at least one).
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.mult(i, j) > 0
    }

    #[inline]
    pub fn is_double(&self, i: usize, j: usize) -> bool {
        self.mult(i, j) == 2
    }

    /// Degree with double edges counted twice.
    pub fn weighted_degree(&self, i: usize) -> usize {
        (0..self.k).map(|j| self.mult(i, j) as usize).sum()
    }

    pub fn simple_degree(&self, i: usize) -> usize {
        (0..self.k).filter(|&j| self.adjacent(i, j)).count()
    }

    pub fn min_weighted_degree(&self) -> usize {
        (0..self.k).map(|i| self.weighted_degree(i)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.k).filter(|&j| self.adjacent(i, j)).collect()
    }

    pub fn double_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.k).filter(|&j| self.is_double(i, j)).collect()
    }

    pub fn single_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.k).filter(|&j| self.mult(i, j) == 1).collect()
    }

    /// `(i, j, m)` for every pair `i < j` with nonzero multiplicity.
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                let m = self.mult(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Sum of multiplicities over pairs inside `set`.
    pub fn edge_weight_within(&self, set: &[usize]) -> usize {
        let mut total = 0;
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                total += self.mult(i, j) as usize;
            }
        }
        total
    }

    pub fn is_triangle(&self, i: usize, j: usize, l: usize) -> bool {
        self.adjacent(i, j) && self.adjacent(j, l) && self.adjacent(i, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_bounds() {
        let mut r = Multigraph2::new(3);
        assert_eq!(r.set(0, 1, 3), Err(Error::BadMultiplicity(3)));
        assert!(r.set(0, 0, 1).is_err());
        r.set(0, 1, 2).unwrap();
        r.set(1, 2, 1).unwrap();
        assert_eq!(r.mult(1, 0), 2);
        assert_eq!(r.weighted_degree(1), 3);
        assert_eq!(r.simple_degree(1), 2);
        assert_eq!(r.double_neighbors(0), vec![1]);
        assert_eq!(r.single_neighbors(2), vec![1]);
        assert!(r.weighted_degree(1) <= 2 * (r.k() - 1));
    }
}
