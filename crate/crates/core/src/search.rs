//! Exact search for triangle-distinguishing colorings.
//!
//! Edges are colored in edge-index order. Coloring edge `(i, j)` completes
//! exactly the triangles `(u, i, j)` with `u < i`; their palettes are looked
//! up in an occupancy table with one slot per palette, so a collision is
//! detected on the edge that causes it.
//!
//! Two restrictions prune the tree without changing satisfiability:
//!
//! * color relabeling: an edge may only take a color at most one above the
//!   largest color used on earlier edges;
//! * for proper colorings, a color already present at either endpoint is
//!   skipped.
//!
//! The first witness found is the lexicographically least canonical coloring
//! in edge order. Parallel runs split the tree at a fixed depth into
//! subproblems and merge their results in tree order, which reproduces the
//! sequential witness and node count exactly.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use crate::analysis::{capacity_floor, distinguishes, is_proper, multiset_lower_bound, palette_capacity};
use crate::error::{Error, Result};
use crate::graph::{edge_endpoints, num_edges, num_triangles, pair_index, Color, EdgeColoring, PaletteMode};

/// Largest `n` and `k` the engine accepts (vertex and color masks are `u64`).
pub const MAX_VERTICES: usize = 64;
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub mode: PaletteMode,
    pub require_proper: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, mode: PaletteMode, require_proper: bool) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        if k == 0 || k > MAX_COLORS {
            return Err(Error::InvalidProblem(format!("k must be in 1..={MAX_COLORS}, got {k}")));
        }
        if mode == PaletteMode::RainbowProper && !require_proper {
            return Err(Error::InvalidProblem("rainbow mode requires a proper coloring".into()));
        }
        Ok(Self {
            n,
            k,
            mode,
            require_proper,
            node_limit: None,
            time_limit: None,
        })
    }

    pub fn with_node_limit(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    /// Mode whose capacity bounds the number of realizable palettes. Proper
    /// colorings only produce rainbow palettes.
    pub fn capacity_mode(&self) -> PaletteMode {
        if self.require_proper {
            PaletteMode::RainbowProper
        } else {
            self.mode
        }
    }

    pub fn capacity(&self) -> u64 {
        palette_capacity(self.k, self.capacity_mode())
    }

    /// `C(n, 3)` does not exceed the palette capacity.
    pub fn capacity_feasible(&self) -> bool {
        num_triangles(self.n) as u64 <= self.capacity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Nodes,
    Time,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Sat(EdgeColoring),
    Unsat,
    Inconclusive(Limit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// UNSAT decided by the capacity check alone.
    pub capacity_refuted: bool,
}

impl SearchOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SearchStatus::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.status, SearchStatus::Unsat)
    }

    pub fn witness(&self) -> Option<&EdgeColoring> {
        match &self.status {
            SearchStatus::Sat(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            SearchStatus::Sat(_) => "SAT",
            SearchStatus::Unsat => "UNSAT",
            SearchStatus::Inconclusive(_) => "INCONCLUSIVE",
        }
    }
}

/// Snapshot passed to the progress hook.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    /// Nodes of the reporting worker's subtree.
    pub nodes: u64,
    pub depth: usize,
    pub elapsed: Duration,
}

pub type ProgressHook<'a> = &'a (dyn Fn(&Progress) + Sync);

#[derive(Clone, Copy)]
pub struct SearchOptions<'a> {
    /// Worker threads; 0 and 1 both mean sequential.
    pub jobs: usize,
    pub progress: Option<ProgressHook<'a>>,
    /// Approximate number of nodes between progress reports.
    pub progress_interval: u64,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        Self {
            jobs: 1,
            progress: None,
            progress_interval: 1 << 24,
        }
    }
}

/// Decides the problem sequentially.
pub fn decide(problem: &SearchProblem) -> SearchOutcome {
    decide_with(problem, &SearchOptions::default())
}

pub fn decide_with(problem: &SearchProblem, options: &SearchOptions<'_>) -> SearchOutcome {
    let start = Instant::now();
    if !problem.capacity_feasible() {
        return SearchOutcome {
            status: SearchStatus::Unsat,
            nodes_explored: 0,
            elapsed: start.elapsed(),
            capacity_refuted: true,
        };
    }
    let layout = Layout::new(problem);
    let ctl = Control {
        node_limit: problem.node_limit,
        deadline: problem.time_limit.map(|d| start + d),
        start,
        progress: options.progress,
        progress_interval: options.progress_interval.max(1),
    };
    let (status, nodes) = if options.jobs <= 1 {
        run_sequential(&layout, &ctl)
    } else {
        run_parallel(&layout, &ctl, options.jobs)
    };
    let status = match status {
        Flow::Found(colors) => {
            let witness = EdgeColoring::new(problem.n, problem.k, colors).expect("witness colors are in range");
            let verdict = distinguishes(&witness, problem.mode).expect("witness satisfies mode precondition");
            assert!(verdict.is_distinguishing(), "search witness fails verification: {verdict:?}");
            assert!(!problem.require_proper || is_proper(&witness), "search witness is not proper");
            SearchStatus::Sat(witness)
        }
        Flow::Exhausted => SearchStatus::Unsat,
        Flow::Stopped(Stop::Nodes) => SearchStatus::Inconclusive(Limit::Nodes),
        Flow::Stopped(Stop::Time) => SearchStatus::Inconclusive(Limit::Time),
        Flow::Stopped(Stop::Cancelled) => unreachable!("top-level search is never cancelled"),
    };
    SearchOutcome {
        status,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        capacity_refuted: false,
    }
}

/// Read-only data shared by all workers.
struct Layout {
    n: usize,
    k: usize,
    set_mode: bool,
    proper: bool,
    ends: Vec<(usize, usize)>,
    // closers[closer_start[e]..closer_start[e + 1]] are the pairs of earlier
    // edges (u,i), (u,j) completing triangle (u,i,j) with edge e = (i,j)
    closers: Vec<(u32, u32)>,
    closer_start: Vec<usize>,
}

impl Layout {
    fn new(problem: &SearchProblem) -> Self {
        let edges = num_edges(problem.n);
        let mut ends = Vec::with_capacity(edges);
        let mut closers = Vec::new();
        let mut closer_start = Vec::with_capacity(edges + 1);
        for e in 0..edges {
            let (i, j) = edge_endpoints(e);
            ends.push((i, j));
            closer_start.push(closers.len());
            for u in 0..i {
                closers.push((pair_index(u, i) as u32, pair_index(u, j) as u32));
            }
        }
        closer_start.push(closers.len());
        Self {
            n: problem.n,
            k: problem.k,
            set_mode: problem.mode == PaletteMode::Set,
            proper: problem.require_proper,
            ends,
            closers,
            closer_start,
        }
    }

    fn edges(&self) -> usize {
        self.ends.len()
    }

    fn closers(&self, e: usize) -> &[(u32, u32)] {
        &self.closers[self.closer_start[e]..self.closer_start[e + 1]]
    }

    #[inline]
    fn key(&self, x: Color, y: Color, z: Color) -> usize {
        let (mut a, mut b, mut c) = (x as usize, y as usize, z as usize);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if b > c {
            std::mem::swap(&mut b, &mut c);
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if self.set_mode {
            // one slot per color set: [a,a,c] and [a,c,c] both become {a,c}
            if a == b {
                b = c;
            }
        }
        (a * self.k + b) * self.k + c
    }
}

struct Control<'a> {
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    start: Instant,
    progress: Option<ProgressHook<'a>>,
    progress_interval: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Nodes,
    Time,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Flow {
    Found(Vec<Color>),
    Exhausted,
    Stopped(Stop),
}

const CHECK_MASK: u64 = (1 << 12) - 1;

struct Kernel<'a> {
    layout: &'a Layout,
    ctl: &'a Control<'a>,
    colors: Vec<Color>,
    // largest color on edges 0..=pos
    max_upto: Vec<i32>,
    vertex_used: Vec<u64>,
    occupied: Vec<bool>,
    nodes: u64,
    next_report: u64,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl<'a> Kernel<'a> {
    fn new(layout: &'a Layout, ctl: &'a Control<'a>) -> Self {
        Self {
            layout,
            ctl,
            colors: vec![0; layout.edges()],
            max_upto: vec![-1; layout.edges()],
            vertex_used: vec![0; layout.n],
            occupied: vec![false; layout.k * layout.k * layout.k],
            nodes: 0,
            next_report: ctl.progress_interval,
            cancel: None,
        }
    }

    fn enter(&mut self, depth: usize) -> std::result::Result<(), Stop> {
        if let Some(limit) = self.ctl.node_limit {
            if self.nodes >= limit {
                return Err(Stop::Nodes);
            }
        }
        self.nodes += 1;
        if self.nodes & CHECK_MASK == 0 {
            self.periodic(depth)?;
        }
        Ok(())
    }

    #[cold]
    fn periodic(&mut self, depth: usize) -> std::result::Result<(), Stop> {
        if let Some(deadline) = self.ctl.deadline {
            if Instant::now() >= deadline {
                return Err(Stop::Time);
            }
        }
        if let Some((cutoff, me)) = self.cancel {
            if cutoff.load(Ordering::Relaxed) < me {
                return Err(Stop::Cancelled);
            }
        }
        if let Some(hook) = self.ctl.progress {
            if self.nodes >= self.next_report {
                self.next_report = self.nodes + self.ctl.progress_interval;
                hook(&Progress {
                    nodes: self.nodes,
                    depth,
                    elapsed: self.ctl.start.elapsed(),
                });
            }
        }
        Ok(())
    }

    fn color_limit(&self, pos: usize) -> usize {
        let prev = if pos == 0 { -1 } else { self.max_upto[pos - 1] };
        ((prev + 1) as usize).min(self.layout.k - 1)
    }

    #[inline]
    fn assign(&mut self, pos: usize, c: Color) -> bool {
        let layout = self.layout;
        let (i, j) = layout.ends[pos];
        if layout.proper && (self.vertex_used[i] | self.vertex_used[j]) & (1u64 << c) != 0 {
            return false;
        }
        let closers = layout.closers(pos);
        for (idx, &(a, b)) in closers.iter().enumerate() {
            let key = layout.key(self.colors[a as usize], self.colors[b as usize], c);
            if self.occupied[key] {
                for &(a, b) in &closers[..idx] {
                    let key = layout.key(self.colors[a as usize], self.colors[b as usize], c);
                    self.occupied[key] = false;
                }
                return false;
            }
            self.occupied[key] = true;
        }
        self.colors[pos] = c;
        if layout.proper {
            self.vertex_used[i] |= 1u64 << c;
            self.vertex_used[j] |= 1u64 << c;
        }
        let prev = if pos == 0 { -1 } else { self.max_upto[pos - 1] };
        self.max_upto[pos] = prev.max(c as i32);
        true
    }

    #[inline]
    fn unassign(&mut self, pos: usize) {
        let layout = self.layout;
        let c = self.colors[pos];
        for &(a, b) in layout.closers(pos) {
            let key = layout.key(self.colors[a as usize], self.colors[b as usize], c);
            self.occupied[key] = false;
        }
        if layout.proper {
            let (i, j) = layout.ends[pos];
            self.vertex_used[i] &= !(1u64 << c);
            self.vertex_used[j] &= !(1u64 << c);
        }
    }

    fn dfs(&mut self, pos: usize) -> std::result::Result<bool, Stop> {
        self.enter(pos)?;
        if pos == self.layout.edges() {
            return Ok(true);
        }
        for c in 0..=self.color_limit(pos) {
            if self.assign(pos, c as Color) {
                if self.dfs(pos + 1)? {
                    return Ok(true);
                }
                self.unassign(pos);
            }
        }
        Ok(false)
    }

    fn solve_from(&mut self, pos: usize) -> Flow {
        match self.dfs(pos) {
            Ok(true) => Flow::Found(self.colors.clone()),
            Ok(false) => Flow::Exhausted,
            Err(stop) => Flow::Stopped(stop),
        }
    }

    /// Records the tree above `depth` in preorder: internal nodes as
    /// `Event::Node`, nodes at `depth` as subproblems.
    fn split(&mut self, pos: usize, depth: usize, events: &mut Vec<Event>, tasks: &mut Vec<Vec<Color>>) {
        if pos == depth {
            events.push(Event::Task(tasks.len()));
            tasks.push(self.colors[..pos].to_vec());
            return;
        }
        events.push(Event::Node);
        for c in 0..=self.color_limit(pos) {
            if self.assign(pos, c as Color) {
                self.split(pos + 1, depth, events, tasks);
                self.unassign(pos);
            }
        }
    }

    fn replay(&mut self, prefix: &[Color]) {
        for (pos, &c) in prefix.iter().enumerate() {
            let ok = self.assign(pos, c);
            debug_assert!(ok, "prefix replays cleanly");
        }
    }
}

enum Event {
    Node,
    Task(usize),
}

fn run_sequential(layout: &Layout, ctl: &Control<'_>) -> (Flow, u64) {
    let mut kernel = Kernel::new(layout, ctl);
    let flow = kernel.solve_from(0);
    (flow, kernel.nodes)
}

fn run_parallel(layout: &Layout, ctl: &Control<'_>, jobs: usize) -> (Flow, u64) {
    let edges = layout.edges();
    let want = jobs * 8;
    let mut events = Vec::new();
    let mut tasks = Vec::new();
    for depth in 1..edges {
        events.clear();
        tasks.clear();
        Kernel::new(layout, ctl).split(0, depth, &mut events, &mut tasks);
        if tasks.len() >= want || tasks.is_empty() {
            break;
        }
    }
    if tasks.len() <= 1 {
        return run_sequential(layout, ctl);
    }

    // subproblems after the first decisive one (found, or out of budget) are
    // not needed; workers skip or abandon them
    let cutoff = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Flow, u64)>>> = Mutex::new(vec![None; tasks.len()]);
    thread::scope(|s| {
        for _ in 0..jobs.min(tasks.len()) {
            s.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= tasks.len() {
                    break;
                }
                if idx > cutoff.load(Ordering::Relaxed) {
                    continue;
                }
                let mut kernel = Kernel::new(layout, ctl);
                kernel.cancel = Some((&cutoff, idx));
                kernel.replay(&tasks[idx]);
                let flow = kernel.solve_from(tasks[idx].len());
                if matches!(flow, Flow::Found(_) | Flow::Stopped(Stop::Nodes | Stop::Time)) {
                    cutoff.fetch_min(idx, Ordering::Relaxed);
                }
                results.lock().expect("results lock")[idx] = Some((flow, kernel.nodes));
            });
        }
    });
    let results = results.into_inner().expect("results lock");

    // replay the sequential node accounting over the recorded preorder
    let limit = ctl.node_limit;
    let mut acc = 0u64;
    for event in events {
        match event {
            Event::Node => {
                if limit.is_some_and(|l| acc >= l) {
                    return (Flow::Stopped(Stop::Nodes), acc);
                }
                acc += 1;
            }
            Event::Task(idx) => {
                let (flow, nodes) = results[idx].clone().expect("subproblem before the cutoff was run");
                match flow {
                    Flow::Stopped(Stop::Nodes) => return (flow, limit.expect("node limit set")),
                    Flow::Stopped(Stop::Time) => return (flow, acc + nodes),
                    Flow::Stopped(Stop::Cancelled) => unreachable!("only subproblems past the cutoff are cancelled"),
                    Flow::Found(_) | Flow::Exhausted => {
                        if let Some(l) = limit {
                            if acc + nodes > l {
                                return (Flow::Stopped(Stop::Nodes), l);
                            }
                        }
                        acc += nodes;
                        if matches!(flow, Flow::Found(_)) {
                            return (flow, acc);
                        }
                    }
                }
            }
        }
    }
    (Flow::Exhausted, acc)
}

/// Why `tau - 1` colors do not suffice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerCertificate {
    /// `tau = 1`.
    Trivial,
    /// An UNSAT search (or capacity refutation) at `k = tau - 1`.
    Search { k: usize, outcome: SearchOutcome },
    /// `tau - 1` is below [`multiset_lower_bound`]; not searched.
    MultisetBound { k: usize, bound: usize },
}

/// Minimum color count with both certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauResult {
    pub n: usize,
    pub mode: PaletteMode,
    pub require_proper: bool,
    pub tau: usize,
    pub witness: EdgeColoring,
    pub sat: SearchOutcome,
    pub lower: LowerCertificate,
    /// Every `decide` run in ascending `k`.
    pub runs: Vec<(usize, SearchOutcome)>,
}

/// A minimization stopped by a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconclusiveRun {
    pub n: usize,
    pub k: usize,
    pub mode: PaletteMode,
    pub limit: Limit,
    pub outcome: SearchOutcome,
    pub runs: Vec<(usize, SearchOutcome)>,
}

#[derive(Clone, Copy, Default)]
pub struct MinimizeOptions<'a> {
    /// Per-`decide` node limit.
    pub node_limit: Option<u64>,
    /// Per-`decide` time limit.
    pub time_limit: Option<Duration>,
    pub search: SearchOptions<'a>,
    /// Also search `tau - 1` when it is excluded only by the multiset bound.
    pub search_below_bound: bool,
}

/// First `k` tried by [`minimize`].
pub fn search_floor(n: usize, mode: PaletteMode, require_proper: bool) -> usize {
    let cap_mode = if require_proper { PaletteMode::RainbowProper } else { mode };
    let floor = capacity_floor(n, cap_mode);
    if mode == PaletteMode::Multiset {
        floor.max(multiset_lower_bound(n))
    } else {
        floor
    }
}

/// Smallest `k` for which [`decide`] is SAT, trying `k` upward from
/// [`search_floor`].
pub fn minimize(
    n: usize,
    mode: PaletteMode,
    require_proper: bool,
    options: &MinimizeOptions<'_>,
) -> std::result::Result<TauResult, Box<MinimizeError>> {
    let floor = search_floor(n, mode, require_proper);
    let run = |k: usize| -> std::result::Result<SearchOutcome, Box<MinimizeError>> {
        let problem = SearchProblem::new(n, k, mode, require_proper)
            .map_err(|e| Box::new(MinimizeError::Invalid(e)))?
            .with_node_limit(options.node_limit)
            .with_time_limit(options.time_limit);
        Ok(decide_with(&problem, &options.search))
    };

    let mut runs: Vec<(usize, SearchOutcome)> = Vec::new();
    let mut k = floor;
    loop {
        let outcome = run(k)?;
        runs.push((k, outcome.clone()));
        match &outcome.status {
            SearchStatus::Unsat => k += 1,
            SearchStatus::Inconclusive(limit) => {
                return Err(Box::new(MinimizeError::Inconclusive(InconclusiveRun {
                    n,
                    k,
                    mode,
                    limit: *limit,
                    outcome,
                    runs,
                })))
            }
            SearchStatus::Sat(witness) => {
                let witness = witness.clone();
                let lower = if k == 1 {
                    LowerCertificate::Trivial
                } else if let Some((_, below)) = runs.iter().find(|(rk, _)| *rk == k - 1) {
                    LowerCertificate::Search { k: k - 1, outcome: below.clone() }
                } else {
                    let cap_mode = if require_proper { PaletteMode::RainbowProper } else { mode };
                    let capacity_excluded = (palette_capacity(k - 1, cap_mode)) < num_triangles(n) as u64;
                    if capacity_excluded || options.search_below_bound {
                        let below = run(k - 1)?;
                        match below.status {
                            SearchStatus::Unsat => LowerCertificate::Search { k: k - 1, outcome: below },
                            SearchStatus::Sat(_) => {
                                panic!("decide is SAT below the multiset bound for n = {n}")
                            }
                            SearchStatus::Inconclusive(_) => LowerCertificate::MultisetBound {
                                k: k - 1,
                                bound: multiset_lower_bound(n),
                            },
                        }
                    } else {
                        LowerCertificate::MultisetBound {
                            k: k - 1,
                            bound: multiset_lower_bound(n),
                        }
                    }
                };
                return Ok(TauResult {
                    n,
                    mode,
                    require_proper,
                    tau: k,
                    witness,
                    sat: outcome,
                    lower,
                    runs,
                });
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    Invalid(Error),
    Inconclusive(InconclusiveRun),
}

impl std::fmt::Display for MinimizeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinimizeError::Invalid(e) => write!(f, "{e}"),
            MinimizeError::Inconclusive(run) => write!(
                f,
                "search for n = {} at k = {} hit the {:?} limit after {} nodes",
                run.n, run.k, run.limit, run.outcome.nodes_explored
            ),
        }
    }
}

impl std::error::Error for MinimizeError {}

/// One line of [`conjecture_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: usize,
    pub result: std::result::Result<TauResult, Box<MinimizeError>>,
}

impl ConjectureRow {
    /// `Some(tau == n - 1)` once tau is known.
    pub fn holds(&self) -> Option<bool> {
        self.result.as_ref().ok().map(|r| r.tau == self.n - 1)
    }
}

/// Computes tau for `n = 4..=n_max` in a general (not necessarily proper)
/// coloring and compares it with `n - 1`.
pub fn conjecture_check(n_max: usize, mode: PaletteMode, options: &MinimizeOptions<'_>) -> Result<Vec<ConjectureRow>> {
    if n_max < 4 {
        return Err(Error::TooFewVertices { n: n_max, min: 4 });
    }
    if mode == PaletteMode::RainbowProper {
        return Err(Error::InvalidProblem("conjectures concern set and multiset palettes".into()));
    }
    Ok((4..=n_max)
        .map(|n| ConjectureRow {
            n,
            result: minimize(n, mode, false, options),
        })
        .collect())
}
