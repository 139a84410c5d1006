use std::io::Write;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use tridist::analysis::{
    capacity_floor, census, color_class_stats, is_proper, multiset_lower_bound, palette_capacity,
    proper_conflict, Verdict,
};
use tridist::constructions::{even_coloring, modular_coloring};
use tridist::encoder::encode;
use tridist::graph::num_triangles;
use tridist::search::{
    conjecture_check, decide_with, minimize, LowerCertificate, MinimizeError, MinimizeOptions, Progress,
    SearchOptions, SearchOutcome, SearchProblem, SearchStatus, TauResult,
};
use tridist::{EdgeColoring, PaletteMode};

use crate::document::ColoringDocument;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// Not distinguishing, or UNSAT on a decision query.
    Negative = 1,
    Usage = 2,
    LimitHit = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Modular,
    Even,
}

pub fn construct(kind: ConstructionKind, n: usize, out: &mut dyn Write, log: &mut dyn Write) -> Result<Exit> {
    let (coloring, name) = match kind {
        ConstructionKind::Modular => {
            if n.is_multiple_of(2) {
                bail!("n must be odd for the modular construction, got {n}");
            }
            (modular_coloring(n)?, "modular")
        }
        ConstructionKind::Even => {
            if n % 2 == 1 {
                bail!("n must be even for the even construction, got {n}");
            }
            (even_coloring(n)?, "even")
        }
    };
    let mode = PaletteMode::RainbowProper;
    let doc = ColoringDocument::new(&coloring, mode, Some(format!("{name} construction")));
    out.write_all(doc.to_json().as_bytes())?;

    let c = census(&coloring, mode)?;
    writeln!(
        log,
        "K_{n} {name} construction: k = {}, {} colors used, proper: {}, distinguishing: {}, palettes {}/{}",
        coloring.k(),
        coloring.colors_used(),
        yes_no(is_proper(&coloring)),
        yes_no(c.is_distinguishing()),
        c.distinct_palettes(),
        c.triangle_count()
    )?;
    Ok(Exit::Success)
}

pub fn verify(doc: &ColoringDocument, mode: Option<PaletteMode>, out: &mut dyn Write) -> Result<Exit> {
    let coloring = doc.coloring()?;
    let mode = match mode {
        Some(m) => m,
        None => doc.mode()?,
    };
    let n = coloring.n();
    writeln!(out, "K_{n}, k = {}, mode {mode}", coloring.k())?;
    writeln!(out, "proper: {}", yes_no(is_proper(&coloring)))?;
    if mode == PaletteMode::RainbowProper {
        if let Some((vertex, color)) = proper_conflict(&coloring) {
            writeln!(out, "status: NOT PROPER")?;
            writeln!(out, "conflict: vertex {vertex} has two edges colored {color}")?;
            return Ok(Exit::Negative);
        }
    }
    let cen = census(&coloring, mode)?;
    let triangles = num_triangles(n);
    let capacity = palette_capacity(coloring.k(), mode);
    let verdict = match cen.first_collision() {
        Some((a, b)) => Verdict::Collision(a, b),
        None => Verdict::Distinguishing,
    };
    match verdict {
        Verdict::Distinguishing => writeln!(out, "status: DISTINGUISHING")?,
        Verdict::Collision(a, b) => {
            writeln!(out, "status: NOT DISTINGUISHING")?;
            writeln!(
                out,
                "collision: {a} and {b} share palette {}",
                coloring.palette(a, mode)
            )?;
        }
    }
    writeln!(out, "palettes: {}/{} realized", cen.distinct_palettes(), triangles)?;
    writeln!(
        out,
        "capacity: C({n},3) = {triangles} {} {capacity} palettes with {} colors",
        if triangles as u64 <= capacity { "<=" } else { ">" },
        coloring.k()
    )?;

    let stats = color_class_stats(&coloring, mode);
    writeln!(out, "color  edges  triangles  palettes  [a,b,b]")?;
    for (color, class) in stats.classes.iter().enumerate() {
        writeln!(
            out,
            "{color:>5}  {:>5}  {:>9}  {:>8}  {:>7}",
            class.edges, class.triangles, class.palettes, class.single_double_palettes
        )?;
    }
    Ok(if verdict.is_distinguishing() {
        Exit::Success
    } else {
        Exit::Negative
    })
}

#[derive(Debug, Clone, Default)]
pub struct SearchArgs {
    pub n: usize,
    pub k: Option<usize>,
    pub mode: Option<PaletteMode>,
    pub proper: bool,
    pub minimize: bool,
    pub jobs: usize,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub emit_witness: Option<std::path::PathBuf>,
    pub progress: bool,
    /// Also search below the multiset lower bound when minimizing.
    pub search_below_bound: bool,
}

fn outcome_line(k: usize, o: &SearchOutcome) -> String {
    let how = if o.capacity_refuted {
        "capacity".to_string()
    } else {
        format!("{} nodes", o.nodes_explored)
    };
    format!("k = {k}: {} ({how}, {:.3}s)", o.label(), o.elapsed.as_secs_f64())
}

fn colors_line(c: &EdgeColoring) -> String {
    let cs: Vec<String> = c.colors().iter().map(|x| x.to_string()).collect();
    format!("[{}]", cs.join(", "))
}

fn write_tau(out: &mut dyn Write, r: &TauResult) -> Result<()> {
    for (k, o) in &r.runs {
        writeln!(out, "{}", outcome_line(*k, o))?;
    }
    writeln!(out, "tau = {}", r.tau)?;
    match &r.lower {
        LowerCertificate::Trivial => writeln!(out, "lower: tau = 1 needs no certificate")?,
        LowerCertificate::Search { k, outcome } => writeln!(out, "lower: {}", outcome_line(*k, outcome))?,
        LowerCertificate::MultisetBound { k, bound } => {
            writeln!(out, "lower: k = {k} excluded by the multiset bound tau_m >= {bound}")?
        }
    }
    writeln!(out, "witness: {}", colors_line(&r.witness))?;
    let stats = color_class_stats(&r.witness, r.mode);
    writeln!(
        out,
        "[a,b,b] palettes within edge counts: {}",
        yes_no(stats.single_double_within_edges())
    )?;
    Ok(())
}

pub fn search(args: &SearchArgs, out: &mut dyn Write, log: &mut dyn Write) -> Result<Exit> {
    let mode = args.mode.unwrap_or(PaletteMode::Multiset);
    if mode == PaletteMode::RainbowProper && !args.proper {
        bail!("--mode rainbow requires --proper");
    }
    let progress_hook = |p: &Progress| {
        eprintln!(
            "progress: {} nodes, depth {}, {:.1}s",
            p.nodes,
            p.depth,
            p.elapsed.as_secs_f64()
        );
    };
    let search_opts = SearchOptions {
        jobs: args.jobs.max(1),
        progress: args.progress.then_some(&progress_hook as &(dyn Fn(&Progress) + Sync)),
        ..Default::default()
    };
    let proper_label = if args.proper { "proper" } else { "general" };

    let (exit, witness) = if args.minimize {
        writeln!(out, "minimize K_{}, mode {mode}, {proper_label}", args.n)?;
        let opts = MinimizeOptions {
            node_limit: args.node_limit,
            time_limit: args.time_limit,
            search: search_opts,
            search_below_bound: args.search_below_bound,
        };
        match minimize(args.n, mode, args.proper, &opts) {
            Ok(r) => {
                write_tau(out, &r)?;
                (Exit::Success, Some(r.witness))
            }
            Err(e) => match *e {
                MinimizeError::Invalid(err) => return Err(err.into()),
                MinimizeError::Inconclusive(run) => {
                    for (k, o) in &run.runs {
                        writeln!(out, "{}", outcome_line(*k, o))?;
                    }
                    writeln!(out, "tau: INCONCLUSIVE ({:?} limit at k = {})", run.limit, run.k)?;
                    (Exit::LimitHit, None)
                }
            },
        }
    } else {
        let Some(k) = args.k else {
            bail!("give a color count with -k, or use --minimize");
        };
        writeln!(out, "decide K_{} with k = {k}, mode {mode}, {proper_label}", args.n)?;
        let problem = SearchProblem::new(args.n, k, mode, args.proper)?
            .with_node_limit(args.node_limit)
            .with_time_limit(args.time_limit);
        let o = decide_with(&problem, &search_opts);
        writeln!(out, "{}", outcome_line(k, &o))?;
        match o.status {
            SearchStatus::Sat(w) => {
                writeln!(out, "witness: {}", colors_line(&w))?;
                (Exit::Success, Some(w))
            }
            SearchStatus::Unsat => (Exit::Negative, None),
            SearchStatus::Inconclusive(_) => (Exit::LimitHit, None),
        }
    };

    if let (Some(path), Some(w)) = (&args.emit_witness, &witness) {
        let note = format!(
            "search n={} k={} mode={mode} proper={}",
            args.n,
            w.k(),
            args.proper
        );
        ColoringDocument::new(w, mode, Some(note)).save(path)?;
        writeln!(log, "witness written to {}", path.display())?;
    }
    Ok(exit)
}

pub fn capacity(k: usize, out: &mut dyn Write) -> Result<Exit> {
    if k == 0 {
        bail!("k must be at least 1");
    }
    writeln!(out, "k = {k}")?;
    for mode in PaletteMode::ALL {
        writeln!(out, "{:<8} {}", mode.label(), palette_capacity(k, mode))?;
    }
    Ok(Exit::Success)
}

/// Exact value of the proper-coloring index: `n` for odd `n`, `n + 1` for even.
pub fn tau_proper(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n + 1
    }
}

pub fn bounds(n: usize, out: &mut dyn Write) -> Result<Exit> {
    if n < 3 {
        bail!("n must be at least 3");
    }
    let proper = tau_proper(n);
    writeln!(out, "n = {n}, triangles = {}", num_triangles(n))?;
    writeln!(out, "tau_proper = {proper}")?;
    if n == 3 {
        writeln!(out, "tau_multiset = 1")?;
        writeln!(out, "tau_set = 1")?;
    } else {
        let m_low = multiset_lower_bound(n).max(capacity_floor(n, PaletteMode::Multiset));
        let s_low = m_low.max(capacity_floor(n, PaletteMode::Set));
        writeln!(out, "tau_multiset >= {m_low}")?;
        writeln!(out, "tau_set >= {s_low}")?;
    }
    writeln!(out, "tau_multiset <= tau_set <= tau_proper = {proper}")?;
    Ok(Exit::Success)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Dimacs,
}

pub fn dot(coloring: &EdgeColoring, out: &mut dyn Write) -> Result<()> {
    let n = coloring.n();
    writeln!(out, "graph K{n} {{")?;
    for v in 0..n {
        writeln!(out, "  {v};")?;
    }
    for (e, (i, j)) in coloring.edge_indexing().edges().enumerate() {
        writeln!(out, "  {i} -- {j} [label=\"{}\"];", coloring.color_at(e))?;
    }
    writeln!(out, "}}")?;
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct ExportArgs {
    pub file: Option<std::path::PathBuf>,
    pub mode: Option<PaletteMode>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub proper: bool,
}

pub fn export(format: ExportFormat, args: &ExportArgs, out: &mut dyn Write) -> Result<Exit> {
    match format {
        ExportFormat::Dot | ExportFormat::Csv => {
            let Some(path) = &args.file else {
                bail!("a coloring document is required for dot and csv export");
            };
            let doc = ColoringDocument::load(path)?;
            let coloring = doc.coloring()?;
            if format == ExportFormat::Dot {
                dot(&coloring, out)?;
            } else {
                let mode = match args.mode {
                    Some(m) => m,
                    None => doc.mode()?,
                };
                census(&coloring, mode)?.write_csv(out)?;
            }
        }
        ExportFormat::Dimacs => {
            let (Some(n), Some(k)) = (args.n, args.k) else {
                bail!("dimacs export needs -n and -k");
            };
            let mode = args.mode.unwrap_or(PaletteMode::Multiset);
            let problem = SearchProblem::new(n, k, mode, args.proper || mode == PaletteMode::RainbowProper)?;
            encode(&problem)?.write_dimacs(out)?;
        }
    }
    Ok(Exit::Success)
}

pub fn conjecture(
    n_max: usize,
    mode: PaletteMode,
    opts: &MinimizeOptions<'_>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let rows = conjecture_check(n_max, mode, opts)?;
    let mut exit = Exit::Success;
    writeln!(out, "mode {mode}: is tau(n) = n - 1?")?;
    writeln!(out, " n  tau  n-1  holds  certificates")?;
    for row in rows {
        match &row.result {
            Ok(r) => {
                let lower = match &r.lower {
                    LowerCertificate::Trivial => "trivial".to_string(),
                    LowerCertificate::Search { k, outcome } => outcome_line(*k, outcome),
                    LowerCertificate::MultisetBound { k, bound } => format!("k = {k} below bound {bound}"),
                };
                writeln!(
                    out,
                    "{:>2}  {:>3}  {:>3}  {:>5}  {}; {}",
                    row.n,
                    r.tau,
                    row.n - 1,
                    if row.holds() == Some(true) {
                        "yes"
                    } else {
                        if exit == Exit::Success {
                            exit = Exit::Negative;
                        }
                        "NO"
                    },
                    outcome_line(r.tau, &r.sat),
                    lower
                )?;
            }
            Err(e) => {
                exit = Exit::LimitHit;
                writeln!(out, "{:>2}    ?  {:>3}      ?  {e}", row.n, row.n - 1)?;
            }
        }
    }
    Ok(exit)
}

pub fn load_document(path: &Path) -> Result<ColoringDocument> {
    ColoringDocument::load(path).context("could not load coloring document")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
