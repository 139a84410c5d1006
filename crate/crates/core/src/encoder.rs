//! CNF encoding of the decision problem, for external SAT solvers.
//!
//! Variables:
//!
//! * a selector `x(e, c)` per edge `e` and color `c`, with an exactly-one
//!   block per edge;
//! * an indicator `y(t, P)` per triangle `t` and admissible palette `P`,
//!   equivalent to "the edges of `t` realize `P`".
//!
//! Each palette gets a pairwise at-most-one block over its indicators.
//! Proper problems add `!x(e, c) | !x(f, c)` for incident edges `e`, `f`.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::{num_edges, pair_index, triangles, Color, EdgeColoring, Palette, PaletteMode, Triangle};
use crate::search::SearchProblem;

pub type Clause = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMeaning {
    Selector { edge: usize, color: Color },
    Indicator { triangle: Triangle, palette: Palette },
}

#[derive(Debug, Clone)]
pub struct CnfInstance {
    pub n: usize,
    pub k: usize,
    pub mode: PaletteMode,
    pub require_proper: bool,
    pub clauses: Vec<Clause>,
    /// `legend[v - 1]` describes variable `v`.
    pub legend: Vec<VarMeaning>,
}

#[derive(Debug, Clone, Copy)]
pub struct EncodeOptions {
    pub clause_budget: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self {
            clause_budget: 50_000_000,
        }
    }
}

/// Palettes that may appear on a triangle, in palette order.
pub fn admissible_palettes(k: usize, mode: PaletteMode) -> Vec<Palette> {
    let k = k as Color;
    let mut out = Vec::new();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                let keep = match mode {
                    PaletteMode::RainbowProper => a < b && b < c,
                    PaletteMode::Multiset => true,
                    // one representative per color set: {a}, {a,c} as [a,c,c], {a,b,c}
                    PaletteMode::Set => !(a == b && b != c),
                };
                if keep {
                    out.push(Palette::new(a, b, c, mode));
                }
            }
        }
    }
    out
}

/// Color tuples on the three edges of a triangle that realize `palette`.
fn realizations(palette: &Palette, k: usize) -> Vec<[Color; 3]> {
    let k = k as Color;
    let mut out = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if Palette::new(x, y, z, palette.mode()) == *palette {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Clauses forcing `y -> the edges realize palette`, given exactly one
/// color per edge.
fn indicator_forward(y: i32, edges: [usize; 3], palette: &Palette, sel: impl Fn(usize, Color) -> i32) -> Vec<Clause> {
    let mut colors = palette.key().to_vec();
    colors.dedup();
    let mut out = Vec::new();
    for &e in &edges {
        let mut cl = vec![-y];
        cl.extend(colors.iter().map(|&c| sel(e, c)));
        out.push(cl);
    }
    for &c in &colors {
        let multiplicity = match palette.mode() {
            PaletteMode::Set => 1,
            _ => palette.colors().iter().filter(|&&x| x == c).count(),
        };
        match multiplicity {
            1 => out.push(vec![-y, sel(edges[0], c), sel(edges[1], c), sel(edges[2], c)]),
            2 => {
                for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                    out.push(vec![-y, sel(edges[p], c), sel(edges[q], c)]);
                }
            }
            // three edges of one color are forced by the per-edge clauses
            _ => {}
        }
    }
    out
}

pub fn encode(problem: &SearchProblem) -> Result<CnfInstance> {
    encode_with(problem, &EncodeOptions::default())
}

pub fn encode_with(problem: &SearchProblem, options: &EncodeOptions) -> Result<CnfInstance> {
    let (n, k) = (problem.n, problem.k);
    let edges = num_edges(n);
    let palettes = admissible_palettes(k, problem.mode);
    let tris: Vec<Triangle> = triangles(n).collect();

    let realized: Vec<Vec<[Color; 3]>> = palettes.iter().map(|p| realizations(p, k)).collect();
    let per_indicator: usize = realized
        .iter()
        .zip(&palettes)
        .map(|(r, p)| r.len() + 3 + 3 * p.key().len())
        .sum();
    let t = tris.len();
    let estimate = edges * (1 + k * (k - 1) / 2)
        + if problem.require_proper { n * (n - 1) * (n - 2) / 2 * k } else { 0 }
        + t * per_indicator
        + palettes.len() * t * (t - 1) / 2;
    if estimate > options.clause_budget {
        return Err(Error::ClauseBudget {
            clauses: estimate,
            budget: options.clause_budget,
        });
    }

    let sel = |e: usize, c: Color| (e * k + c as usize + 1) as i32;
    let mut legend: Vec<VarMeaning> = (0..edges)
        .flat_map(|edge| (0..k as Color).map(move |color| VarMeaning::Selector { edge, color }))
        .collect();
    let mut clauses: Vec<Clause> = Vec::with_capacity(estimate);

    for e in 0..edges {
        clauses.push((0..k as Color).map(|c| sel(e, c)).collect());
        for c1 in 0..k as Color {
            for c2 in c1 + 1..k as Color {
                clauses.push(vec![-sel(e, c1), -sel(e, c2)]);
            }
        }
    }

    if problem.require_proper {
        for v in 0..n {
            let star: Vec<usize> = (0..n)
                .filter(|&u| u != v)
                .map(|u| pair_index(u.min(v), u.max(v)))
                .collect();
            for (a, &e) in star.iter().enumerate() {
                for &f in &star[a + 1..] {
                    for c in 0..k as Color {
                        clauses.push(vec![-sel(e, c), -sel(f, c)]);
                    }
                }
            }
        }
    }

    // indicator ids grouped by palette for the at-most-one blocks
    let mut by_palette: Vec<Vec<i32>> = vec![Vec::with_capacity(t); palettes.len()];
    for &tri in &tris {
        let es = tri.edge_indices();
        for (pi, palette) in palettes.iter().enumerate() {
            legend.push(VarMeaning::Indicator {
                triangle: tri,
                palette: *palette,
            });
            let y = legend.len() as i32;
            by_palette[pi].push(y);
            for cs in &realized[pi] {
                clauses.push(vec![-sel(es[0], cs[0]), -sel(es[1], cs[1]), -sel(es[2], cs[2]), y]);
            }
            clauses.extend(indicator_forward(y, es, palette, sel));
        }
    }
    for ys in &by_palette {
        for (a, &y1) in ys.iter().enumerate() {
            for &y2 in &ys[a + 1..] {
                clauses.push(vec![-y1, -y2]);
            }
        }
    }

    Ok(CnfInstance {
        n,
        k,
        mode: problem.mode,
        require_proper: problem.require_proper,
        clauses,
        legend,
    })
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.legend.len()
    }

    pub fn selector(&self, edge: usize, color: Color) -> i32 {
        (edge * self.k + color as usize + 1) as i32
    }

    pub fn write_dimacs<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "c triangle-distinguishing edge coloring of K_n")?;
        writeln!(out, "c n {}", self.n)?;
        writeln!(out, "c k {}", self.k)?;
        writeln!(out, "c mode {}", self.mode)?;
        writeln!(out, "c proper {}", self.require_proper)?;
        for (v, meaning) in self.legend.iter().enumerate() {
            match meaning {
                VarMeaning::Selector { edge, color } => {
                    let (i, j) = crate::graph::edge_endpoints(*edge);
                    writeln!(out, "c var {} edge {edge} ({i},{j}) color {color}", v + 1)?;
                }
                VarMeaning::Indicator { triangle, palette } => {
                    writeln!(out, "c var {} triangle {triangle} palette {palette}", v + 1)?;
                }
            }
        }
        writeln!(out, "p cnf {} {}", self.num_vars(), self.clauses.len())?;
        let mut line = String::new();
        for clause in &self.clauses {
            line.clear();
            for lit in clause {
                write!(line, "{lit} ").expect("write to string");
            }
            line.push('0');
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf).expect("write to vec");
        String::from_utf8(buf).expect("ascii")
    }

    /// Full assignment (selectors and indicators) induced by a coloring.
    /// `model[v]` is the value of variable `v`; index 0 is unused.
    pub fn model_from_coloring(&self, coloring: &EdgeColoring) -> Vec<bool> {
        let mut model = vec![false; self.num_vars() + 1];
        for (v, meaning) in self.legend.iter().enumerate() {
            model[v + 1] = match meaning {
                VarMeaning::Selector { edge, color } => coloring.color_at(*edge) == *color,
                VarMeaning::Indicator { triangle, palette } => coloring.palette(*triangle, self.mode) == *palette,
            };
        }
        model
    }

    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize;
                model.get(v).copied().unwrap_or(false) == (lit > 0)
            })
        })
    }
}

/// Parses solver output: whitespace-separated signed literals, optionally
/// on `v` lines, terminated by `0`. `c` and `s` lines are skipped. Returns
/// values indexed by variable (index 0 unused); unmentioned variables are
/// false.
pub fn parse_model(text: &str, num_vars: usize) -> Result<Vec<bool>> {
    let mut model = vec![false; num_vars + 1];
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::MalformedModel(format!("not a literal: {tok:?}")))?;
            if lit == 0 {
                return Ok(model);
            }
            let v = lit.unsigned_abs() as usize;
            if v > num_vars {
                return Err(Error::MalformedModel(format!("variable {v} exceeds {num_vars}")));
            }
            model[v] = lit > 0;
        }
    }
    Ok(model)
}

/// Reads the coloring from the selectors of a model.
pub fn decode(instance: &CnfInstance, model: &[bool]) -> Result<EdgeColoring> {
    if model.len() < instance.num_vars() + 1 {
        return Err(Error::MalformedModel(format!(
            "model has {} variables, instance has {}",
            model.len().saturating_sub(1),
            instance.num_vars()
        )));
    }
    let edges = num_edges(instance.n);
    let mut colors = Vec::with_capacity(edges);
    for e in 0..edges {
        let on: Vec<Color> = (0..instance.k as Color)
            .filter(|&c| model[instance.selector(e, c) as usize])
            .collect();
        match on.as_slice() {
            [c] => colors.push(*c),
            [] => return Err(Error::MalformedModel(format!("edge {e} has no color"))),
            _ => return Err(Error::MalformedModel(format!("edge {e} has colors {on:?}"))),
        }
    }
    EdgeColoring::new(instance.n, instance.k, colors)
}
