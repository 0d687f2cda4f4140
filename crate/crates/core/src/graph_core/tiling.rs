use std::fmt;

/// Shape tag of a tiling placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Kr,
    K2Double,
    K3,
    Q1,
    Q2,
}

impl Shape {
    pub fn tag(self) -> &'static str {
        match self {
            Shape::Kr => "Kr",
            Shape::K2Double => "K2=",
            Shape::K3 => "K3",
            Shape::Q1 => "Q1",
            Shape::Q2 => "Q2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Shape> {
        Some(match tag {
            "Kr" => Shape::Kr,
            "K2=" => Shape::K2Double,
            "K3" => Shape::K3,
            "Q1" => Shape::Q1,
            "Q2" => Shape::Q2,
            _ => return None,
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `Q1` on sides `U1, U2`: two disjoint `K_r`s, `H1` with two vertices in `U1`, `H2` with two in `U2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetQ1 {
    pub u: [Vec<usize>; 2],
    pub h: [Vec<usize>; 2],
}

/// `Q2` on sides `U1, U2, U3`: three disjoint `K_r`s with split `(1, 1, r-2)` rotating cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetQ2 {
    pub u: [Vec<usize>; 3],
    pub h: [Vec<usize>; 3],
}

impl GadgetQ1 {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.u.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

impl GadgetQ2 {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.u.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `Kr`, `K2=` or `K3` on the listed vertices.
    Simple { shape: Shape, vertices: Vec<usize> },
    Q1(GadgetQ1),
    Q2(GadgetQ2),
}

impl Placement {
    pub fn clique(vertices: Vec<usize>) -> Self {
        Placement::Simple { shape: Shape::Kr, vertices }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Placement::Simple { shape, .. } => *shape,
            Placement::Q1(_) => Shape::Q1,
            Placement::Q2(_) => Shape::Q2,
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Placement::Simple { vertices, .. } => vertices.clone(),
            Placement::Q1(g) => g.vertices(),
            Placement::Q2(g) => g.vertices(),
        }
    }
}

/// Vertex-disjoint placements over a host graph or reduced multigraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tiling {
    pub placements: Vec<Placement>,
}

impl Tiling {
    pub fn new() -> Self {
        Tiling::default()
    }

    pub fn from_cliques(cliques: Vec<Vec<usize>>) -> Self {
        Tiling { placements: cliques.into_iter().map(Placement::clique).collect() }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn push(&mut self, p: Placement) {
        self.placements.push(p);
    }

    /// Covered vertices, sorted; duplicates are kept so callers can detect overlap.
    pub fn covered(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.placements.iter().flat_map(|p| p.vertices()).collect();
        all.sort_unstable();
        all
    }

    pub fn covered_count(&self) -> usize {
        self.placements.iter().map(|p| p.vertices().len()).sum()
    }

    /// Host vertices `0..n` not covered by any placement.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let mut hit = vec![false; n];
        for v in self.covered() {
            if v < n {
                hit[v] = true;
            }
        }
        (0..n).filter(|&v| !hit[v]).collect()
    }

    /// One line per placement: shape tag followed by 1-indexed vertices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.placements {
            out.push_str(p.shape().tag());
            for v in p.vertices() {
                out.push(' ');
                out.push_str(&(v + 1).to_string());
            }
            out.push('\n');
        }
        out
    }
}
