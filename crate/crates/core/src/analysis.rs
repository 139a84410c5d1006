//! Verification and diagnostics for edge colorings of K_n.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::thread;

use crate::error::{Error, Result};
use crate::graph::{
    binomial, num_edges, num_triangles, palette_of, triangles, Color, EdgeColoring, Palette,
    PaletteMode, Triangle, Vertex,
};

/// The K_4 coloring drawn with `tau_m(4) = tau_s(4) = 3`.
///
/// Vertices A, B, C, X are 0, 1, 2, 3. The figure's colors 1, 2, 3 are kept
/// as-is, so the declared color count is 4 and color 0 is unused.
pub fn figure_k4() -> EdgeColoring {
    // edge order: (0,1) (0,2) (1,2) (0,3) (1,3) (2,3)
    EdgeColoring::new(4, 4, vec![1, 1, 1, 2, 3, 1]).expect("valid fixture")
}

/// First vertex (in vertex order) with two equally colored incident edges.
pub fn proper_conflict(coloring: &EdgeColoring) -> Option<(Vertex, Color)> {
    let n = coloring.n();
    let mut seen = vec![false; coloring.k()];
    for v in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for u in (0..n).filter(|&u| u != v) {
            let c = coloring.color(u, v);
            if seen[c as usize] {
                return Some((v, c));
            }
            seen[c as usize] = true;
        }
    }
    None
}

/// No vertex has two incident edges of the same color.
pub fn is_proper(coloring: &EdgeColoring) -> bool {
    proper_conflict(coloring).is_none()
}

fn check_mode(coloring: &EdgeColoring, mode: PaletteMode) -> Result<()> {
    if mode == PaletteMode::RainbowProper {
        if let Some((vertex, color)) = proper_conflict(coloring) {
            return Err(Error::ImproperForRainbow { vertex, color });
        }
    }
    Ok(())
}

/// Palettes of all triangles, grouped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaletteCensus {
    mode: PaletteMode,
    n: usize,
    entries: BTreeMap<Palette, Vec<Triangle>>,
}

impl PaletteCensus {
    pub fn mode(&self) -> PaletteMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Palette classes in palette order; each triangle list is sorted.
    pub fn entries(&self) -> &BTreeMap<Palette, Vec<Triangle>> {
        &self.entries
    }

    pub fn distinct_palettes(&self) -> usize {
        self.entries.len()
    }

    pub fn triangle_count(&self) -> usize {
        num_triangles(self.n)
    }

    /// Triangles minus distinct palettes.
    pub fn collision_count(&self) -> usize {
        self.triangle_count() - self.distinct_palettes()
    }

    pub fn is_distinguishing(&self) -> bool {
        self.collision_count() == 0
    }

    /// Every palette expressible with `k` colors occurs on exactly one
    /// triangle.
    pub fn is_bijection(&self, k: usize) -> bool {
        self.is_distinguishing() && self.distinct_palettes() as u64 == palette_capacity(k, self.mode)
    }

    pub fn triangles_with(&self, palette: &Palette) -> &[Triangle] {
        self.entries.get(palette).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The lexicographically first pair of distinct triangles with equal
    /// palettes.
    pub fn first_collision(&self) -> Option<(Triangle, Triangle)> {
        self.entries
            .values()
            .filter(|ts| ts.len() > 1)
            .map(|ts| (ts[0], ts[1]))
            .min()
    }

    /// Writes `palette;count;triangles` rows, palettes as sorted color lists
    /// (deduplicated in set mode).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "palette;count;triangles")?;
        for (palette, ts) in &self.entries {
            let colors: Vec<String> = palette.key().iter().map(|c| c.to_string()).collect();
            let tris: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            writeln!(out, "[{}];{};{}", colors.join(","), ts.len(), tris.join(" "))?;
        }
        Ok(())
    }

    fn insert_all(&mut self, other: BTreeMap<Palette, Vec<Triangle>>) {
        for (palette, mut ts) in other {
            self.entries.entry(palette).or_default().append(&mut ts);
        }
    }
}

fn census_of(coloring: &EdgeColoring, mode: PaletteMode, ts: impl Iterator<Item = Triangle>) -> BTreeMap<Palette, Vec<Triangle>> {
    let mut entries: BTreeMap<Palette, Vec<Triangle>> = BTreeMap::new();
    for t in ts {
        entries.entry(palette_of(coloring, t, mode)).or_default().push(t);
    }
    entries
}

/// Groups every triangle of K_n by its palette.
pub fn census(coloring: &EdgeColoring, mode: PaletteMode) -> Result<PaletteCensus> {
    check_mode(coloring, mode)?;
    Ok(PaletteCensus {
        mode,
        n: coloring.n(),
        entries: census_of(coloring, mode, triangles(coloring.n())),
    })
}

/// [`census`] with the triangle sequence split into `jobs` contiguous chunks.
/// Chunks are merged in order, so the result equals the sequential census.
pub fn census_parallel(coloring: &EdgeColoring, mode: PaletteMode, jobs: usize) -> Result<PaletteCensus> {
    check_mode(coloring, mode)?;
    let all: Vec<Triangle> = triangles(coloring.n()).collect();
    let chunk = all.len().div_ceil(jobs.max(1)).max(1);
    let parts: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = all
            .chunks(chunk)
            .map(|part| s.spawn(move || census_of(coloring, mode, part.iter().copied())))
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker")).collect()
    });
    let mut merged = PaletteCensus {
        mode,
        n: coloring.n(),
        entries: BTreeMap::new(),
    };
    for part in parts {
        merged.insert_all(part);
    }
    Ok(merged)
}

/// Outcome of [`distinguishes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinguishing,
    /// Lexicographically first pair of triangles sharing a palette.
    Collision(Triangle, Triangle),
}

impl Verdict {
    pub fn is_distinguishing(&self) -> bool {
        matches!(self, Verdict::Distinguishing)
    }
}

/// Whether all triangles of K_n get pairwise different palettes.
pub fn distinguishes(coloring: &EdgeColoring, mode: PaletteMode) -> Result<Verdict> {
    let c = census(coloring, mode)?;
    match c.first_collision() {
        Some((a, b)) => Ok(Verdict::Collision(a, b)),
        None => {
            assert!(
                num_triangles(coloring.n()) as u64 <= palette_capacity(coloring.k(), mode),
                "distinguishing coloring beyond palette capacity"
            );
            Ok(Verdict::Distinguishing)
        }
    }
}

/// Number of distinct palettes that `k` colors can express in `mode`.
pub fn palette_capacity(k: usize, mode: PaletteMode) -> u64 {
    let k = k as u64;
    match mode {
        PaletteMode::RainbowProper => binomial(k, 3),
        PaletteMode::Set => k + binomial(k, 2) + binomial(k, 3),
        PaletteMode::Multiset => binomial(k + 2, 3),
    }
}

/// Smallest `k` whose palette capacity covers all `C(n, 3)` triangles.
pub fn capacity_floor(n: usize, mode: PaletteMode) -> usize {
    let need = num_triangles(n) as u64;
    (1..).find(|&k| palette_capacity(k, mode) >= need).expect("capacity grows without bound")
}

/// Lower bound on the number of colors of a multiset-distinguishing coloring
/// of K_n: 1 for the single triangle, `n - 1` from four vertices on.
pub fn multiset_lower_bound(n: usize) -> usize {
    if n <= 3 {
        1
    } else {
        n - 1
    }
}

/// Per-color counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColorClass {
    /// Edges with this color (`m_alpha`).
    pub edges: usize,
    /// Triangles with at least one edge of this color.
    pub triangles: usize,
    /// Census palettes containing this color.
    pub palettes: usize,
    /// Distinct realized multiset palettes `[alpha, beta, beta]`, `beta != alpha`.
    pub single_double_palettes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClassStats {
    pub mode: PaletteMode,
    pub classes: Vec<ColorClass>,
}

impl ColorClassStats {
    pub fn class(&self, color: Color) -> ColorClass {
        self.classes[color as usize]
    }

    pub fn total_edges(&self) -> usize {
        self.classes.iter().map(|c| c.edges).sum()
    }

    /// Each edge of color alpha lies on at most one triangle with multiset
    /// palette `[alpha, beta, beta]` when triangles are distinguished, so the
    /// realized count of such palettes cannot exceed `m_alpha`.
    pub fn single_double_within_edges(&self) -> bool {
        self.classes.iter().all(|c| c.single_double_palettes <= c.edges)
    }
}

pub fn color_class_stats(coloring: &EdgeColoring, mode: PaletteMode) -> ColorClassStats {
    let k = coloring.k();
    let mut classes = vec![ColorClass::default(); k];
    for &c in coloring.colors() {
        classes[c as usize].edges += 1;
    }

    let mut mode_palettes: BTreeMap<Palette, ()> = BTreeMap::new();
    let mut multiset_palettes: BTreeMap<Palette, ()> = BTreeMap::new();
    for t in triangles(coloring.n()) {
        let p = palette_of(coloring, t, PaletteMode::Multiset);
        let mut cs = p.colors().to_vec();
        cs.dedup();
        for c in cs {
            classes[c as usize].triangles += 1;
        }
        multiset_palettes.insert(p, ());
        mode_palettes.insert(palette_of(coloring, t, mode), ());
    }
    for p in mode_palettes.keys() {
        let mut cs = p.key().to_vec();
        cs.dedup();
        for c in cs {
            classes[c as usize].palettes += 1;
        }
    }
    for p in multiset_palettes.keys() {
        if let Some((alpha, _)) = p.single_double() {
            classes[alpha as usize].single_double_palettes += 1;
        }
    }
    ColorClassStats { mode, classes }
}

/// Subset of the edges of K_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask {
    n: usize,
    kept: Vec<bool>,
}

impl EdgeMask {
    pub fn full(n: usize) -> Self {
        Self {
            n,
            kept: vec![true; num_edges(n)],
        }
    }

    pub fn from_kept(n: usize, kept: Vec<bool>) -> Result<Self> {
        let expected = num_edges(n);
        if kept.len() != expected {
            return Err(Error::ColorArrayLength {
                n,
                expected,
                got: kept.len(),
            });
        }
        Ok(Self { n, kept })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn remove(&mut self, index: usize) {
        self.kept[index] = false;
    }

    pub fn is_kept(&self, index: usize) -> bool {
        self.kept[index]
    }

    pub fn kept_count(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }

    /// A triangle survives when all three of its edges are kept.
    pub fn keeps(&self, t: Triangle) -> bool {
        t.edge_indices().iter().all(|&e| self.kept[e])
    }

    pub fn surviving_triangles(&self) -> impl Iterator<Item = Triangle> + '_ {
        triangles(self.n).filter(|&t| self.keeps(t))
    }
}

/// Whether the triangles surviving `mask` have pairwise distinct palettes.
pub fn restrict(coloring: &EdgeColoring, mask: &EdgeMask, mode: PaletteMode) -> Result<bool> {
    if mask.n() != coloring.n() {
        return Err(Error::MaskMismatch {
            mask: mask.n(),
            coloring: coloring.n(),
        });
    }
    let survivors = census_of(coloring, mode, mask.surviving_triangles());
    Ok(survivors.values().all(|ts| ts.len() == 1))
}
