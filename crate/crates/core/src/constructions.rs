//! Explicit distinguishing colorings.
//!
//! For odd `n` the edge `{i, j}` gets color `(i + j) mod n`. Every 3-subset
//! `{a, b, c}` of colors is then the palette of exactly one triangle, whose
//! vertices solve `p + q = a`, `q + r = b`, `r + p = c` modulo `n`. For even
//! `n` the odd construction on `n + 1` vertices is restricted to the first
//! `n` vertices.

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Triangle, Vertex};

/// Vertices `(p, q, r)` of the triangle realizing a color triple under
/// [`modular_coloring`]: `p + q = a`, `q + r = b`, `r + p = c` (mod n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaletteSolution {
    pub p: Vertex,
    pub q: Vertex,
    pub r: Vertex,
}

impl PaletteSolution {
    pub fn triangle(&self) -> Triangle {
        Triangle::new(self.p, self.q, self.r).expect("solution vertices are pairwise distinct")
    }
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    if n.is_multiple_of(2) {
        return Err(Error::NotOdd(n));
    }
    if n > Color::MAX as usize {
        return Err(Error::TooManyVertices {
            n,
            max: Color::MAX as usize,
        });
    }
    Ok(())
}

/// K_n with edge `{i, j}` colored `(i + j) mod n`, `n` odd.
pub fn modular_coloring(n: usize) -> Result<EdgeColoring> {
    check_odd(n)?;
    EdgeColoring::from_fn(n, n, |i, j| ((i + j) % n) as Color)
}

/// The unique triangle of [`modular_coloring`]`(n)` whose palette is
/// `{a, b, c}`.
pub fn solve_palette_system(a: Color, b: Color, c: Color, n: usize) -> Result<PaletteSolution> {
    check_odd(n)?;
    for color in [a, b, c] {
        if color as usize >= n {
            return Err(Error::ColorNotResidue { color, n });
        }
    }
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriple(a, b, c));
    }
    let m = n as u64;
    // (n + 1) / 2 is the inverse of 2 modulo odd n
    let half = m.div_ceil(2);
    let (a, b, c) = (a as u64, b as u64, c as u64);
    let solve = |plus1: u64, plus2: u64, minus: u64| ((plus1 + plus2 + m - minus) % m * half % m) as Vertex;
    Ok(PaletteSolution {
        p: solve(a, c, b),
        q: solve(a, b, c),
        r: solve(b, c, a),
    })
}

/// K_n for even `n` with `n + 1` colors: the modular coloring of K_{n+1}
/// with vertex `n` deleted. The color count stays `n + 1`.
pub fn even_coloring(n: usize) -> Result<EdgeColoring> {
    if n < 4 {
        return Err(Error::TooFewVertices { n, min: 4 });
    }
    if n % 2 == 1 {
        return Err(Error::NotEven(n));
    }
    let big = modular_coloring(n + 1)?;
    // vertex n is the largest, so its edges form the last index block
    let kept = big.colors()[..crate::graph::num_edges(n)].to_vec();
    EdgeColoring::new(n, n + 1, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{census, distinguishes, is_proper, Verdict};
    use crate::graph::{palette_of, triangles, PaletteMode};

    #[test]
    fn modular_five_colors() {
        let c = modular_coloring(5).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 3, 4, 0, 4, 0, 1, 2]);
        assert_eq!(c.k(), 5);
    }

    #[test]
    fn modular_three_is_rainbow_triangle() {
        let c = modular_coloring(3).unwrap();
        assert_eq!(c.colors(), &[1, 2, 0]);
    }

    #[test]
    fn modular_rejects_even_and_small() {
        assert_eq!(modular_coloring(4), Err(Error::NotOdd(4)));
        assert!(matches!(modular_coloring(1), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn modular_five_census() {
        let c = modular_coloring(5).unwrap();
        let cen = census(&c, PaletteMode::RainbowProper).unwrap();
        assert!(cen.is_bijection(5));
        let t = Triangle::new(2, 3, 4).unwrap();
        assert_eq!(palette_of(&c, t, PaletteMode::RainbowProper).colors(), [0, 1, 2]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_palette_system(0, 1, 2, 5).unwrap();
        assert_eq!((s.p, s.q, s.r), (3, 2, 4));
        assert_eq!(((s.p + s.q) % 5, (s.q + s.r) % 5, (s.r + s.p) % 5), (0, 1, 2));

        let s = solve_palette_system(1, 2, 3, 7).unwrap();
        let pal = palette_of(&modular_coloring(7).unwrap(), s.triangle(), PaletteMode::RainbowProper);
        assert_eq!(pal.colors(), [1, 2, 3]);
    }

    #[test]
    fn solve_rejects_bad_input() {
        assert_eq!(solve_palette_system(1, 1, 2, 5), Err(Error::DegenerateTriple(1, 1, 2)));
        assert_eq!(solve_palette_system(0, 1, 2, 6), Err(Error::NotOdd(6)));
        assert!(matches!(solve_palette_system(0, 1, 5, 5), Err(Error::ColorNotResidue { color: 5, .. })));
    }

    #[test]
    fn difference_identity() {
        for n in (3..=15).step_by(2) {
            let m = n as i64;
            for a in 0..n as Color {
                for b in 0..n as Color {
                    for c in 0..n as Color {
                        let Ok(s) = solve_palette_system(a, b, c, n) else { continue };
                        let md = |x: i64| x.rem_euclid(m);
                        assert_eq!(md(s.p as i64 - s.q as i64), md(c as i64 - b as i64));
                        assert_eq!(md(s.q as i64 - s.r as i64), md(a as i64 - c as i64));
                        assert_eq!(md(s.r as i64 - s.p as i64), md(b as i64 - a as i64));
                        assert!(s.p != s.q && s.q != s.r && s.r != s.p);
                    }
                }
            }
        }
    }

    #[test]
    fn even_four() {
        let c = even_coloring(4).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 3, 4, 0]);
        assert_eq!(c.k(), 5);
        assert_eq!(c.colors_used(), 5);
        let got: Vec<[Color; 3]> = triangles(4)
            .map(|t| palette_of(&c, t, PaletteMode::RainbowProper).colors())
            .collect();
        assert_eq!(got, vec![[1, 2, 3], [1, 3, 4], [0, 2, 3], [0, 3, 4]]);
    }

    #[test]
    fn even_six_distinguishes() {
        let c = even_coloring(6).unwrap();
        assert_eq!(c.k(), 7);
        assert!(is_proper(&c));
        assert_eq!(distinguishes(&c, PaletteMode::RainbowProper), Ok(Verdict::Distinguishing));
        assert_eq!(census(&c, PaletteMode::RainbowProper).unwrap().distinct_palettes(), 20);
    }

    #[test]
    fn even_rejects_odd() {
        assert_eq!(even_coloring(5), Err(Error::NotEven(5)));
        assert!(even_coloring(2).is_err());
    }

    #[test]
    fn even_matches_restriction_of_odd() {
        for n in (4..=20).step_by(2) {
            let small = even_coloring(n).unwrap();
            let big = modular_coloring(n + 1).unwrap();
            for j in 1..n {
                for i in 0..j {
                    assert_eq!(small.color(i, j), big.color(i, j));
                }
            }
        }
    }
}
