//! `{K2=, K3}`-tilings of a reduced multigraph.
//!
//! A `K2=` is a double edge; a `K3` is a triangle of the underlying simple
//! graph (any multiplicities).

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_core::{Multigraph2, Placement, Shape, Tiling};
use crate::rational::{fmt_ratio, Rational};

/// Largest `k` the exact search accepts by default.
pub const EXACT_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub k: usize,
    pub tiling: Tiling,
    /// `B`: vertices of `R` not covered.
    pub uncovered: Vec<usize>,
}

impl TilingReport {
    fn from_tiling(k: usize, tiling: Tiling) -> Self {
        let uncovered = tiling.uncovered(k);
        TilingReport { k, tiling, uncovered }
    }

    pub fn covered(&self) -> usize {
        self.k - self.uncovered.len()
    }

    /// `|B| < 1/μ`.
    pub fn below_inverse_mu(&self, mu: Rational) -> bool {
        Rational::from_integer(self.uncovered.len() as i64) * mu < Rational::from_integer(1)
    }

    /// `|B| ≤ ηk`.
    pub fn within_eta(&self, eta: Rational) -> bool {
        Rational::from_integer(self.uncovered.len() as i64) <= eta * Rational::from_integer(self.k as i64)
    }
}

impl fmt::Display for TilingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "placements: {}", self.tiling.len())?;
        writeln!(f, "covered: {}", self.covered())?;
        writeln!(f, "uncovered: {}", self.uncovered.len())?;
        writeln!(f, "uncovered-set: {}", crate::verify::factor::one_indexed(&self.uncovered))?;
        write!(f, "{}", self.tiling.to_text())
    }
}

/// Deficiency line for a report: `|B|`, `1/μ` and the comparison.
pub fn bound_line(report: &TilingReport, mu: Rational) -> String {
    format!(
        "bound: |B| = {} vs 1/mu = {}: {}",
        report.uncovered.len(),
        fmt_ratio(&mu.recip()),
        if report.below_inverse_mu(mu) { "below" } else { "not below" }
    )
}

/// True when `set` contains no double edge and no triangle of `R`.
pub fn spans_no_tile(r: &Multigraph2, set: &[usize]) -> bool {
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate().skip(i + 1) {
            if r.is_double(a, b) {
                return false;
            }
            if r.adjacent(a, b) && set[j + 1..].iter().any(|&c| r.adjacent(a, c) && r.adjacent(b, c)) {
                return false;
            }
        }
    }
    true
}

fn k3(vs: [usize; 3]) -> Placement {
    let mut v = vs.to_vec();
    v.sort_unstable();
    Placement::Simple { shape: Shape::K3, vertices: v }
}

fn k2(a: usize, b: usize) -> Placement {
    Placement::Simple { shape: Shape::K2Double, vertices: vec![a.min(b), a.max(b)] }
}

struct ExactSearch<'a> {
    r: &'a Multigraph2,
    used: Vec<bool>,
    decided: Vec<bool>,
    cur: Vec<Placement>,
    covered: usize,
    best: Vec<Placement>,
    best_covered: usize,
}

impl ExactSearch<'_> {
    fn run(&mut self) {
        let k = self.r.k();
        let open = (0..k).filter(|&v| !self.decided[v]).count();
        if self.covered + open <= self.best_covered {
            return;
        }
        let Some(v) = (0..k).find(|&v| !self.decided[v]) else {
            self.best_covered = self.covered;
            self.best = self.cur.clone();
            return;
        };
        let free: Vec<usize> = (v + 1..k).filter(|&u| !self.decided[u] && self.r.adjacent(v, u)).collect();
        // triangles first: they cover the most and find good incumbents early
        for (i, &a) in free.iter().enumerate() {
            for &b in &free[i + 1..] {
                if self.r.adjacent(a, b) {
                    self.place(k3([v, a, b]), &[v, a, b]);
                }
            }
        }
        for &a in &free {
            if self.r.is_double(v, a) {
                self.place(k2(v, a), &[v, a]);
            }
        }
        self.decided[v] = true;
        self.run();
        self.decided[v] = false;
    }

    fn place(&mut self, p: Placement, vs: &[usize]) {
        for &x in vs {
            self.decided[x] = true;
            self.used[x] = true;
        }
        self.covered += vs.len();
        self.cur.push(p);
        self.run();
        self.cur.pop();
        self.covered -= vs.len();
        for &x in vs {
            self.decided[x] = false;
            self.used[x] = false;
        }
    }
}

/// A maximum-coverage `{K2=, K3}`-tiling by exhaustive branch and bound.
pub fn max_k2k3_tiling(r: &Multigraph2) -> Result<TilingReport> {
    max_k2k3_tiling_capped(r, EXACT_CAP)
}

pub fn max_k2k3_tiling_capped(r: &Multigraph2, cap: usize) -> Result<TilingReport> {
    let k = r.k();
    if k > cap {
        return Err(Error::InstanceTooLarge { n: k, cap });
    }
    let mut s = ExactSearch {
        r,
        used: vec![false; k],
        decided: vec![false; k],
        cur: Vec::new(),
        covered: 0,
        best: Vec::new(),
        best_covered: 0,
    };
    s.run();
    Ok(TilingReport::from_tiling(k, Tiling { placements: s.best }))
}

/// An improving move on a tiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    AddDouble(usize, usize),
    AddTriangle(usize, usize, usize),
    /// Replace the `K2=` at this placement index by a `K3` with the vertex.
    Extend(usize, usize),
}

/// First applicable move, scanning in vertex order; `None` if move-stable.
pub fn find_move(r: &Multigraph2, tiling: &Tiling) -> Option<Move> {
    let k = r.k();
    let free = tiling.uncovered(k);
    for (i, &a) in free.iter().enumerate() {
        for (j, &b) in free.iter().enumerate().skip(i + 1) {
            if !r.adjacent(a, b) {
                continue;
            }
            if let Some(&c) = free[j + 1..].iter().find(|&&c| r.adjacent(a, c) && r.adjacent(b, c)) {
                return Some(Move::AddTriangle(a, b, c));
            }
        }
    }
    for (i, &a) in free.iter().enumerate() {
        if let Some(&b) = free[i + 1..].iter().find(|&&b| r.is_double(a, b)) {
            return Some(Move::AddDouble(a, b));
        }
    }
    for (idx, p) in tiling.placements.iter().enumerate() {
        if let Placement::Simple { shape: Shape::K2Double, vertices } = p {
            let (u, v) = (vertices[0], vertices[1]);
            if let Some(&w) = free.iter().find(|&&w| r.adjacent(u, w) && r.adjacent(v, w)) {
                return Some(Move::Extend(idx, w));
            }
        }
    }
    None
}

fn apply(tiling: &mut Tiling, m: Move) {
    match m {
        Move::AddDouble(a, b) => tiling.push(k2(a, b)),
        Move::AddTriangle(a, b, c) => tiling.push(k3([a, b, c])),
        Move::Extend(idx, w) => {
            let vs = tiling.placements[idx].vertices();
            tiling.placements[idx] = k3([vs[0], vs[1], w]);
        }
    }
}

/// Seeded greedy tiling (low-degree vertices first) improved by augmentation moves until none applies.
pub fn local_k2k3_tiling(r: &Multigraph2, seed: u64) -> TilingReport {
    let k = r.k();
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    // fewest options first; the shuffle only breaks ties
    order.sort_by_key(|&v| r.simple_degree(v));
    let mut used = vec![false; k];
    let mut tiling = Tiling::new();
    for &v in &order {
        if used[v] {
            continue;
        }
        let nbrs: Vec<usize> = order.iter().copied().filter(|&u| !used[u] && u != v && r.adjacent(u, v)).collect();
        let tri = nbrs
            .iter()
            .enumerate()
            .find_map(|(i, &a)| nbrs[i + 1..].iter().find(|&&b| r.adjacent(a, b)).map(|&b| [v, a, b]));
        if let Some(t) = tri {
            t.iter().for_each(|&x| used[x] = true);
            tiling.push(k3(t));
        } else if let Some(&a) = nbrs.iter().find(|&&a| r.is_double(v, a)) {
            used[v] = true;
            used[a] = true;
            tiling.push(k2(v, a));
        }
    }
    while let Some(m) = find_move(r, &tiling) {
        apply(&mut tiling, m);
    }
    TilingReport::from_tiling(k, tiling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::verify::{verify_tiling, Host};
    use proptest::prelude::*;

    fn all_double(k: usize) -> Multigraph2 {
        let mut r = Multigraph2::new(k);
        for i in 0..k {
            for j in i + 1..k {
                r.set(i, j, 2).unwrap();
            }
        }
        r
    }

    #[test]
    fn exact_examples() {
        let rep = max_k2k3_tiling(&all_double(3)).unwrap();
        assert_eq!(rep.tiling.len(), 1);
        assert_eq!(rep.tiling.placements[0].shape(), Shape::K3);
        assert!(rep.uncovered.is_empty());
        let mut r = Multigraph2::new(3);
        r.set(0, 1, 2).unwrap();
        let rep = max_k2k3_tiling(&r).unwrap();
        assert_eq!(rep.tiling.placements, vec![k2(0, 1)]);
        assert_eq!(rep.uncovered, vec![2]);
        assert!(matches!(max_k2k3_tiling(&Multigraph2::new(17)), Err(Error::InstanceTooLarge { .. })));
    }

    #[test]
    fn local_on_double_path() {
        let mut r = Multigraph2::new(4);
        for i in 0..3 {
            r.set(i, i + 1, 2).unwrap();
        }
        for seed in 0..8 {
            let rep = local_k2k3_tiling(&r, seed);
            assert!(verify_tiling(&rep.tiling, Host::Reduced(&r)));
            assert!(find_move(&r, &rep.tiling).is_none());
            assert_eq!(rep.covered(), 4);
        }
        assert_eq!(max_k2k3_tiling(&r).unwrap().covered(), 4);
    }

    #[test]
    fn bound_helpers() {
        let mut r = Multigraph2::new(3);
        r.set(0, 1, 2).unwrap();
        let rep = max_k2k3_tiling(&r).unwrap();
        assert!(rep.below_inverse_mu(ratio(1, 2)));
        assert!(!rep.below_inverse_mu(ratio(1, 1)));
        assert!(rep.within_eta(ratio(1, 3)));
        assert!(bound_line(&rep, ratio(1, 2)).ends_with("below"));
        assert!(spans_no_tile(&r, &rep.uncovered));
        assert!(!spans_no_tile(&r, &[0, 1]));
    }

    fn random_multi(k: usize, seed: u64) -> Multigraph2 {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = Multigraph2::new(k);
        for i in 0..k {
            for j in i + 1..k {
                r.set(i, j, rng.random_range(0..=2)).unwrap();
            }
        }
        r
    }

    /// Oracle: best coverage over all ways to pick disjoint tiles, by subset DP.
    fn best_coverage(r: &Multigraph2) -> usize {
        let k = r.k();
        let mut tiles: Vec<u32> = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if r.is_double(a, b) {
                    tiles.push(1 << a | 1 << b);
                }
                for c in b + 1..k {
                    if r.is_triangle(a, b, c) {
                        tiles.push(1 << a | 1 << b | 1 << c);
                    }
                }
            }
        }
        let mut reach = vec![false; 1 << k];
        reach[0] = true;
        let mut best = 0;
        for m in 0..1usize << k {
            if !reach[m] {
                continue;
            }
            best = best.max(m.count_ones() as usize);
            for &t in &tiles {
                if m & t as usize == 0 {
                    reach[m | t as usize] = true;
                }
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn exact_matches_oracle(k in 1usize..=10, seed in any::<u64>()) {
            let r = random_multi(k, seed);
            let rep = max_k2k3_tiling(&r).unwrap();
            prop_assert!(verify_tiling(&rep.tiling, Host::Reduced(&r)));
            prop_assert_eq!(rep.covered(), best_coverage(&r));
            prop_assert!(spans_no_tile(&r, &rep.uncovered));
        }

        #[test]
        fn local_is_move_stable(k in 1usize..=14, seed in any::<u64>()) {
            let r = random_multi(k, seed);
            let rep = local_k2k3_tiling(&r, seed);
            prop_assert!(verify_tiling(&rep.tiling, Host::Reduced(&r)));
            prop_assert!(find_move(&r, &rep.tiling).is_none());
            prop_assert!(spans_no_tile(&r, &rep.uncovered));
        }
    }
}
