//! Vertices, edges, triangles, colorings and palettes of the complete graph K_n.
//!
//! Vertices are `0..n` and colors are `0..k`. The edge `{i, j}` with `i < j`
//! has index `j(j-1)/2 + i`, so all edges whose larger endpoint is `j` form
//! one contiguous block that precedes the block of `j + 1`. Under this order
//! the triangle `(u, v, w)` is completed by its edge `(v, w)`, which is the
//! last of its three edges.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u16;

/// `C(n, 2)`.
pub const fn num_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(n, 3)`.
pub const fn num_triangles(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Binomial coefficient, exact for the sizes used here.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

/// Canonical index of the unordered pair `{i, j}` in K_n.
pub fn edge_index(i: Vertex, j: Vertex, n: usize) -> Result<usize> {
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidEdge { i, j, n });
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(pair_index(lo, hi))
}

/// Unchecked form of [`edge_index`] for `lo < hi`.
#[inline]
pub(crate) const fn pair_index(lo: Vertex, hi: Vertex) -> usize {
    hi * (hi - 1) / 2 + lo
}

/// Endpoints `(i, j)`, `i < j`, of the edge with the given index.
pub fn edge_endpoints(index: usize) -> (Vertex, Vertex) {
    // largest j with j(j-1)/2 <= index
    let mut j = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
    while num_edges(j) > index {
        j -= 1;
    }
    while num_edges(j + 1) <= index {
        j += 1;
    }
    (index - num_edges(j), j)
}

/// The edge indexing of K_n, bundling `n` with the index map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeIndexing {
    n: usize,
}

impl EdgeIndexing {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        num_edges(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: Vertex, j: Vertex) -> Result<usize> {
        edge_index(i, j, self.n)
    }

    pub fn endpoints(&self, index: usize) -> Option<(Vertex, Vertex)> {
        (index < self.len()).then(|| edge_endpoints(index))
    }

    /// All edges `(i, j)` in index order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> {
        let n = self.n;
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
    }
}

/// A triangle `u < v < w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
}

impl Triangle {
    /// Builds a triangle from three distinct vertices given in any order.
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::InvalidTriangle([a, b, c]));
        }
        Ok(Self { u: t[0], v: t[1], w: t[2] })
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        [self.u, self.v, self.w]
    }

    /// Edge indices `(u,v)`, `(u,w)`, `(v,w)`.
    pub fn edge_indices(&self) -> [usize; 3] {
        [
            pair_index(self.u, self.v),
            pair_index(self.u, self.w),
            pair_index(self.v, self.w),
        ]
    }

    pub fn contains_edge(&self, index: usize) -> bool {
        self.edge_indices().contains(&index)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.v, self.w)
    }
}

/// Iterator over the triangles of K_n in lexicographic order.
#[derive(Debug, Clone)]
pub struct Triangles {
    n: usize,
    next: Option<Triangle>,
}

impl Iterator for Triangles {
    type Item = Triangle;

    fn next(&mut self) -> Option<Triangle> {
        let cur = self.next?;
        let n = self.n;
        let Triangle { u, v, w } = cur;
        self.next = if w + 1 < n {
            Some(Triangle { u, v, w: w + 1 })
        } else if v + 2 < n {
            Some(Triangle { u, v: v + 1, w: v + 2 })
        } else if u + 3 < n {
            Some(Triangle { u: u + 1, v: u + 2, w: u + 3 })
        } else {
            None
        };
        Some(cur)
    }
}

/// All `C(n, 3)` triangles of K_n, lexicographically. Empty for `n < 3`.
pub fn triangles(n: usize) -> Triangles {
    Triangles {
        n,
        next: (n >= 3).then_some(Triangle { u: 0, v: 1, w: 2 }),
    }
}

/// Which relation decides whether two triangle palettes are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaletteMode {
    /// Proper colorings; every palette is a set of three distinct colors.
    RainbowProper,
    /// Palettes compared as sets of colors.
    Set,
    /// Palettes compared as multisets of colors.
    Multiset,
}

impl PaletteMode {
    pub const ALL: [PaletteMode; 3] =
        [PaletteMode::RainbowProper, PaletteMode::Set, PaletteMode::Multiset];

    pub fn label(&self) -> &'static str {
        match self {
            PaletteMode::RainbowProper => "rainbow",
            PaletteMode::Set => "set",
            PaletteMode::Multiset => "multiset",
        }
    }
}

impl fmt::Display for PaletteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PaletteMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rainbow" | "rainbow-proper" | "proper" => Ok(PaletteMode::RainbowProper),
            "set" => Ok(PaletteMode::Set),
            "multiset" => Ok(PaletteMode::Multiset),
            _ => Err(Error::UnknownMode(s.to_string())),
        }
    }
}

/// The colors of a triangle's three edges, sorted.
///
/// Storage always keeps all three colors. Equality, ordering and hashing
/// follow the mode: sorted triples for `Multiset` and `RainbowProper`,
/// deduplicated sorted tuples for `Set`. Palettes of different modes never
/// compare equal.
#[derive(Debug, Clone, Copy)]
pub struct Palette {
    colors: [Color; 3],
    mode: PaletteMode,
}

impl Palette {
    pub fn new(a: Color, b: Color, c: Color, mode: PaletteMode) -> Self {
        let mut colors = [a, b, c];
        colors.sort_unstable();
        Self { colors, mode }
    }

    /// The sorted stored triple.
    pub fn colors(&self) -> [Color; 3] {
        self.colors
    }

    pub fn mode(&self) -> PaletteMode {
        self.mode
    }

    /// The colors that take part in equality: all three, or the distinct
    /// ones in `Set` mode.
    pub fn key(&self) -> &[Color] {
        let [a, b, c] = self.colors;
        match self.mode {
            PaletteMode::Set if a == b && b == c => &self.colors[..1],
            // [a, a, c]
            PaletteMode::Set if a == b => &self.colors[1..],
            // [a, c, c]
            PaletteMode::Set if b == c => &self.colors[..2],
            _ => &self.colors[..],
        }
    }

    pub fn is_rainbow(&self) -> bool {
        let [a, b, c] = self.colors;
        a < b && b < c
    }

    pub fn contains(&self, color: Color) -> bool {
        self.colors.contains(&color)
    }

    /// `Some((alpha, beta))` when the stored triple is `[alpha, beta, beta]`
    /// as a multiset with `alpha != beta`.
    pub fn single_double(&self) -> Option<(Color, Color)> {
        let [a, b, c] = self.colors;
        if a == b && b != c {
            Some((c, a))
        } else if b == c && a != b {
            Some((a, b))
        } else {
            None
        }
    }
}

impl PartialEq for Palette {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.key() == other.key()
    }
}

impl Eq for Palette {}

impl Hash for Palette {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mode.hash(state);
        self.key().hash(state);
    }
}

impl PartialOrd for Palette {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Palette {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mode
            .cmp(&other.mode)
            .then_with(|| self.key().cmp(other.key()))
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.mode {
            PaletteMode::Set | PaletteMode::RainbowProper => ('{', '}'),
            PaletteMode::Multiset => ('[', ']'),
        };
        write!(f, "{open}")?;
        for (idx, c) in self.key().iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "{close}")
    }
}

/// A coloring of the edges of K_n with colors `0..k`, stored in edge-index
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(n: usize, k: usize, colors: Vec<Color>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        let expected = num_edges(n);
        if colors.len() != expected {
            return Err(Error::ColorArrayLength {
                n,
                expected,
                got: colors.len(),
            });
        }
        if let Some((edge, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c as usize >= k)
        {
            return Err(Error::ColorOutOfRange { edge, color, k });
        }
        Ok(Self { n, k, colors })
    }

    /// Colors every edge `(i, j)`, `i < j`, with `f(i, j)`.
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(Vertex, Vertex) -> Color) -> Result<Self> {
        let colors = (1..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::new(n, k, colors)
    }

    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::new(n, 1, vec![0; num_edges(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared color count; may exceed the number of colors in use.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_at(&self, index: usize) -> Color {
        self.colors[index]
    }

    /// Color of the edge `{i, j}`. Panics if it is not an edge of K_n.
    pub fn color(&self, i: Vertex, j: Vertex) -> Color {
        let idx = edge_index(i, j, self.n).expect("edge of K_n");
        self.colors[idx]
    }

    pub fn edge_indexing(&self) -> EdgeIndexing {
        EdgeIndexing { n: self.n }
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    pub fn palette(&self, t: Triangle, mode: PaletteMode) -> Palette {
        palette_of(self, t, mode)
    }
}

/// The palette of triangle `t` under `coloring`.
pub fn palette_of(coloring: &EdgeColoring, t: Triangle, mode: PaletteMode) -> Palette {
    let [e1, e2, e3] = t.edge_indices();
    Palette::new(
        coloring.colors[e1],
        coloring.colors[e2],
        coloring.colors[e3],
        mode,
    )
}
