//! The boolean cube `Q_n` as a graph.
//!
//! A vertex is an `n`-bit mask: bit `k - 1` is set when coordinate `k` is 1,
//! which is also when the dual basis form `e*_k` occurs in the corresponding
//! exterior basis element. The dimension is carried separately by [`Cube`]
//! and validated whenever a vertex crosses a module boundary.

use std::fmt;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported cube dimension (a membership bitset is then 2 MiB).
pub const MAX_CUBE_DIM: u32 = 24;

pub type CubeVertex = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cube {
    n: u32,
}

/// Orientation of a cube edge. `Up(k)` means the second vertex has coordinate
/// `k` set in addition to the first; `k` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up(u32),
    Down(u32),
    NotAdjacent,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Up(k) => Direction::Down(k),
            Direction::Down(k) => Direction::Up(k),
            Direction::NotAdjacent => Direction::NotAdjacent,
        }
    }
}

/// Whether `u` and `v` differ in exactly one coordinate.
#[inline]
pub fn adjacent(u: CubeVertex, v: CubeVertex) -> bool {
    (u ^ v).count_ones() == 1
}

pub fn direction(u: CubeVertex, v: CubeVertex) -> Direction {
    let diff = u ^ v;
    if diff.count_ones() != 1 {
        return Direction::NotAdjacent;
    }
    let k = diff.trailing_zeros() + 1;
    if v & diff != 0 {
        Direction::Up(k)
    } else {
        Direction::Down(k)
    }
}

impl Cube {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_cap(n, MAX_CUBE_DIM)
    }

    /// Like [`Cube::new`] but with a stricter cap imposed by a caller.
    pub fn with_cap(n: u32, max: u32) -> Result<Self> {
        if n == 0 || n > max.min(MAX_CUBE_DIM) {
            return Err(Error::DimensionOutOfRange { n, max: max.min(MAX_CUBE_DIM) });
        }
        Ok(Cube { n })
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.n
    }

    /// Number of vertices, `2^n`.
    #[inline]
    pub fn order(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn all_bits(&self) -> CubeVertex {
        ((1u64 << self.n) - 1) as CubeVertex
    }

    pub fn check(&self, vertex: u64) -> Result<CubeVertex> {
        if vertex >> self.n != 0 {
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(vertex as CubeVertex)
    }

    pub fn vertices(&self) -> impl Iterator<Item = CubeVertex> {
        0..(1u32 << self.n)
    }

    /// Neighbours of `v` paired with the 1-based coordinate that changes.
    pub fn neighbors(&self, v: CubeVertex) -> impl Iterator<Item = (u32, CubeVertex)> {
        (0..self.n).map(move |bit| (bit + 1, v ^ (1 << bit)))
    }

    pub fn adjacent(&self, u: CubeVertex, v: CubeVertex) -> Result<bool> {
        self.check(u as u64)?;
        self.check(v as u64)?;
        Ok(adjacent(u, v))
    }

    pub fn direction(&self, u: CubeVertex, v: CubeVertex) -> Direction {
        direction(u, v)
    }

    /// Flips every coordinate, reversing the orientation of all edges.
    #[inline]
    pub fn complement(&self, v: CubeVertex) -> CubeVertex {
        !v & self.all_bits()
    }

    /// Binary string of length `n`, most significant character = coordinate `n`.
    pub fn format_vertex(&self, v: CubeVertex) -> String {
        format!("{:0width$b}", v, width = self.n as usize)
    }

    pub fn parse_vertex(&self, s: &str) -> Result<CubeVertex> {
        let s = s.trim();
        if s.len() != self.n as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Parse(format!("expected a binary string of length {}, got {s:?}", self.n)));
        }
        let v = u64::from_str_radix(s, 2).map_err(|e| Error::Parse(e.to_string()))?;
        self.check(v)
    }
}

/// Induced-degree counts of one vertex inside a subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub vertex: CubeVertex,
    /// Members `γ` with `γ → vertex` (one coordinate fewer).
    pub indegree: u32,
    /// Members `γ` with `vertex → γ` (one coordinate more).
    pub outdegree: u32,
    pub degree: u32,
}

/// A vertex subset `H ⊆ Q_n`, stored as a membership bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InducedSubgraph {
    cube: Cube,
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for InducedSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedSubgraph")
            .field("n", &self.cube.n)
            .field("members", &self.iter().map(|v| self.cube.format_vertex(v)).collect::<Vec<_>>())
            .finish()
    }
}

impl InducedSubgraph {
    pub fn empty(cube: Cube) -> Self {
        let words = vec![0u64; cube.order().div_ceil(64)];
        InducedSubgraph { cube, words, len: 0 }
    }

    pub fn full(cube: Cube) -> Self {
        let mut h = Self::empty(cube);
        for v in cube.vertices() {
            h.insert(v);
        }
        h
    }

    pub fn from_vertices<I: IntoIterator<Item = CubeVertex>>(cube: Cube, vertices: I) -> Result<Self> {
        let mut h = Self::empty(cube);
        for v in vertices {
            cube.check(v as u64)?;
            h.insert(v);
        }
        Ok(h)
    }

    /// Builds a subgraph of a cube with at most 64 vertices from a membership
    /// mask (bit `β` set ⇔ vertex `β` present).
    pub fn from_mask(cube: Cube, mask: u64) -> Result<Self> {
        if cube.n > 6 {
            return Err(Error::DimensionOutOfRange { n: cube.n, max: 6 });
        }
        if cube.n < 6 && mask >> cube.order() != 0 {
            return Err(Error::VertexOutOfRange { vertex: mask, n: cube.n });
        }
        let mut h = Self::empty(cube);
        h.words[0] = mask;
        h.len = mask.count_ones() as usize;
        Ok(h)
    }

    /// Uniformly random subset of `size` vertices, reproducible from `seed`.
    pub fn random(cube: Cube, size: usize, seed: u64) -> Result<Self> {
        if size > cube.order() {
            return Err(Error::InvalidPlan(format!(
                "subset size {size} exceeds the {} vertices of Q_{}",
                cube.order(),
                cube.n
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks = index::sample(&mut rng, cube.order(), size);
        Self::from_vertices(cube, picks.into_iter().map(|i| i as CubeVertex))
    }

    #[inline]
    pub fn cube(&self) -> Cube {
        self.cube
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.cube.n
    }

    pub fn insert(&mut self, v: CubeVertex) -> bool {
        let (w, b) = ((v >> 6) as usize, v & 63);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    #[inline]
    pub fn contains(&self, v: CubeVertex) -> bool {
        let w = (v >> 6) as usize;
        w < self.words.len() && self.words[w] & (1 << (v & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// More than half of the cube.
    pub fn is_large(&self) -> bool {
        self.len > self.cube.order() / 2
    }

    /// Members in ascending bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = CubeVertex> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(((wi as u32) << 6) | b)
            })
        })
    }

    /// Image under the coordinate complement `β ↦ ¬β`.
    pub fn complemented(&self) -> Self {
        let mut h = Self::empty(self.cube);
        for v in self.iter() {
            h.insert(self.cube.complement(v));
        }
        h
    }

    pub fn degree_profile(&self, beta: CubeVertex) -> Result<DegreeProfile> {
        self.cube.check(beta as u64)?;
        if !self.contains(beta) {
            return Err(Error::NotInSubgraph { vertex: beta });
        }
        let (mut indegree, mut outdegree) = (0, 0);
        for (_, gamma) in self.cube.neighbors(beta) {
            if self.contains(gamma) {
                if gamma < beta {
                    indegree += 1;
                } else {
                    outdegree += 1;
                }
            }
        }
        Ok(DegreeProfile { vertex: beta, indegree, outdegree, degree: indegree + outdegree })
    }

    fn degree_unchecked(&self, beta: CubeVertex) -> u32 {
        self.cube.neighbors(beta).filter(|&(_, g)| self.contains(g)).count() as u32
    }

    /// A vertex of maximum induced degree; ties go to the smallest bitmask.
    pub fn max_degree(&self) -> Result<(CubeVertex, u32)> {
        let mut best: Option<(CubeVertex, u32)> = None;
        for v in self.iter() {
            let d = self.degree_unchecked(v);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best.ok_or(Error::EmptySubgraph)
    }

    /// Parses the line-oriented text format: one binary string per vertex,
    /// blank lines and `#` comments ignored. When `n` is not given it is taken
    /// from the first vertex line.
    pub fn parse_text(text: &str, n: Option<u32>) -> Result<Self> {
        let mut lines =
            text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).peekable();
        let n = match n {
            Some(n) => n,
            None => match lines.peek() {
                Some(first) => first.len() as u32,
                None => return Err(Error::EmptySubgraph),
            },
        };
        let cube = Cube::new(n)?;
        let mut h = Self::empty(cube);
        for line in lines {
            h.insert(cube.parse_vertex(line)?);
        }
        Ok(h)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.iter() {
            out.push_str(&self.cube.format_vertex(v));
            out.push('\n');
        }
        out
    }
}
