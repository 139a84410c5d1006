//! Brute-force reference checks that share no code with the search engine.

#![allow(dead_code)]

/// Edge list of K_n in index order: (0,1), (0,2), (1,2), (0,3), ...
pub fn edge_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

fn position(edges: &[(usize, usize)], a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    edges.iter().position(|&e| e == (a, b)).unwrap()
}

/// Triangles as edge-position triples.
pub fn triangle_edges(n: usize) -> Vec<[usize; 3]> {
    let edges = edge_list(n);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                out.push([position(&edges, u, v), position(&edges, u, w), position(&edges, v, w)]);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    Multiset,
    Set,
}

fn same_palette(x: [u16; 3], y: [u16; 3], rel: Rel) -> bool {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if rel == Rel::Set {
        a.dedup();
        b.dedup();
    }
    a == b
}

/// All-pairs comparison of triangle palettes.
pub fn pairwise_distinct(colors: &[u16], tris: &[[usize; 3]], rel: Rel) -> bool {
    let pal: Vec<[u16; 3]> = tris
        .iter()
        .map(|t| [colors[t[0]], colors[t[1]], colors[t[2]]])
        .collect();
    for i in 0..pal.len() {
        for j in i + 1..pal.len() {
            if same_palette(pal[i], pal[j], rel) {
                return false;
            }
        }
    }
    true
}

pub fn proper(colors: &[u16], n: usize) -> bool {
    let edges = edge_list(n);
    for (a, &(i, j)) in edges.iter().enumerate() {
        for (b, &(p, q)) in edges.iter().enumerate().skip(a + 1) {
            let share = i == p || i == q || j == p || j == q;
            if share && colors[a] == colors[b] {
                return false;
            }
        }
    }
    true
}

fn canonical(colors: &[u16]) -> bool {
    let mut max: i32 = -1;
    for &c in colors {
        if c as i32 > max + 1 {
            return false;
        }
        max = max.max(c as i32);
    }
    true
}

pub struct NaiveResult {
    pub exists: bool,
    /// Lexicographically first valid coloring among those whose colors
    /// appear in first-use order.
    pub first_canonical: Option<Vec<u16>>,
    pub count: u64,
}

/// Tries all k^C(n,2) colorings.
pub fn naive(n: usize, k: usize, rel: Rel, require_proper: bool) -> NaiveResult {
    let edges = edge_list(n).len();
    let tris = triangle_edges(n);
    let mut colors = vec![0u16; edges];
    let mut result = NaiveResult {
        exists: false,
        first_canonical: None,
        count: 0,
    };
    loop {
        if (!require_proper || proper(&colors, n)) && pairwise_distinct(&colors, &tris, rel) {
            result.exists = true;
            result.count += 1;
            if result.first_canonical.is_none() && canonical(&colors) {
                result.first_canonical = Some(colors.clone());
            }
        }
        // odometer, edge 0 most significant
        let mut pos = edges;
        loop {
            if pos == 0 {
                return result;
            }
            pos -= 1;
            colors[pos] += 1;
            if (colors[pos] as usize) < k {
                break;
            }
            colors[pos] = 0;
        }
    }
}

/// Independent backtracking check of existence. Edges are taken in
/// row-major order (0,1), (0,2), ..., (0,n-1), (1,2), ...; colors in
/// first-use order; palettes keyed by bitmask (sets) or base-64 digits
/// (multisets).
pub struct RowMajorSearch {
    k: usize,
    rel: Rel,
    proper: bool,
    order: Vec<(usize, usize)>,
    // triangles completed at each step, as positions in `order`
    completes: Vec<Vec<[usize; 2]>>,
    colors: Vec<u16>,
    used: Vec<bool>,
    pub nodes: u64,
}

impl RowMajorSearch {
    pub fn new(n: usize, k: usize, rel: Rel, proper: bool) -> Self {
        assert!(k <= 18, "palette keys need k <= 18");
        let mut order = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                order.push((i, j));
            }
        }
        let at = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            order.iter().position(|&e| e == (a, b)).unwrap()
        };
        let mut completes = vec![Vec::new(); order.len()];
        for (step, &(i, j)) in order.iter().enumerate() {
            for x in (0..n).filter(|&x| x != i && x != j) {
                let (p, q) = (at(i, x), at(j, x));
                if p < step && q < step {
                    completes[step].push([p, q]);
                }
            }
        }
        Self {
            k,
            rel,
            proper,
            completes,
            colors: vec![0; order.len()],
            order,
            used: vec![false; 1 << 18],
            nodes: 0,
        }
    }

    fn key(&self, a: u16, b: u16, c: u16) -> u64 {
        match self.rel {
            Rel::Set => (1u64 << a) | (1u64 << b) | (1u64 << c),
            Rel::Multiset => {
                let mut v = [a as u64, b as u64, c as u64];
                v.sort_unstable();
                (v[0] << 12) | (v[1] << 6) | v[2]
            }
        }
    }

    fn clashes_at_endpoint(&self, step: usize, c: u16) -> bool {
        let (i, j) = self.order[step];
        (0..step).any(|s| {
            let (p, q) = self.order[s];
            self.colors[s] == c && (p == i || p == j || q == i || q == j)
        })
    }

    fn go(&mut self, step: usize, max_used: i32) -> bool {
        self.nodes += 1;
        if step == self.order.len() {
            return true;
        }
        let top = ((max_used + 1) as usize).min(self.k - 1);
        for c in 0..=top as u16 {
            if self.proper && self.clashes_at_endpoint(step, c) {
                continue;
            }
            let mut fresh = [0u64; 64];
            let mut m = 0;
            let mut ok = true;
            for &[p, q] in &self.completes[step] {
                let key = self.key(self.colors[p], self.colors[q], c);
                if self.used[key as usize] || fresh[..m].contains(&key) {
                    ok = false;
                    break;
                }
                fresh[m] = key;
                m += 1;
            }
            if !ok {
                continue;
            }
            self.colors[step] = c;
            for &key in &fresh[..m] {
                self.used[key as usize] = true;
            }
            if self.go(step + 1, max_used.max(c as i32)) {
                return true;
            }
            for &key in &fresh[..m] {
                self.used[key as usize] = false;
            }
        }
        false
    }

    /// Existence of a distinguishing coloring; on success the colors in
    /// standard edge-index order.
    pub fn run(&mut self) -> Option<Vec<u16>> {
        if !self.go(0, -1) {
            return None;
        }
        let mut out = vec![0u16; self.order.len()];
        for (step, &(i, j)) in self.order.iter().enumerate() {
            out[j * (j - 1) / 2 + i] = self.colors[step];
        }
        Some(out)
    }
}
