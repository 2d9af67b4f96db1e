//! Canonical forms of vertex-colored graphs and digraphs by
//! individualization-refinement.
//!
//! Color refinement (1-WL, run over out- and in-neighborhoods separately)
//! does most of the work; where it stops short of a discrete partition the
//! search individualizes one vertex of the first smallest non-singleton
//! cell and recurses, taking the minimum certificate over the cell. Two
//! prunings keep that search exact but small: discovered automorphisms
//! collapse branches inside an orbit, and a per-node partition invariant
//! cuts subtrees that compare worse than the best path found so far.
//!
//! Refinement signatures are commutative hashes of neighbor colors: cheap,
//! deterministic, and isomorphism-invariant, so two isomorphic graphs
//! always walk identical search trees. The certificate itself is the
//! relabeled adjacency structure, never a hash.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::binary::BinaryCode;

/// Vertex-colored digraph. Undirected edges are stored as symmetric arc
/// pairs.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    colors: Vec<u32>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

impl ColoredGraph {
    pub fn new(n: usize, colors: Vec<u32>) -> Self {
        assert_eq!(colors.len(), n);
        ColoredGraph {
            n,
            colors,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.out[u].push(v as u32);
        self.inn[v].push(u as u32);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.add_arc(u, v);
        self.add_arc(v, u);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&(v as u32))
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// Relabels vertices: new vertex i is old vertex `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> ColoredGraph {
        let mut pos = vec![0usize; self.n];
        for (i, &p) in perm.iter().enumerate() {
            pos[p] = i;
        }
        let colors = perm.iter().map(|&p| self.colors[p]).collect();
        let mut g = ColoredGraph::new(self.n, colors);
        for u in 0..self.n {
            for &v in &self.out[u] {
                g.add_arc(pos[u], pos[v as usize]);
            }
        }
        g
    }

    /// True when `perm` (new -> old... read as v -> perm[v]) maps the graph
    /// onto itself, colors included.
    fn is_automorphism(&self, perm: &[usize]) -> bool {
        if (0..self.n).any(|v| self.colors[v] != self.colors[perm[v]]) {
            return false;
        }
        for u in 0..self.n {
            if self.out[u].len() != self.out[perm[u]].len() {
                return false;
            }
            let mut image: Vec<u32> = self.out[u].iter().map(|&v| perm[v as usize] as u32).collect();
            image.sort_unstable();
            let mut target = self.out[perm[u]].clone();
            target.sort_unstable();
            if image != target {
                return false;
            }
        }
        true
    }
}

/// Deterministic certificate: equal for isomorphic colored digraphs,
/// distinct otherwise.
pub fn canonical_form(g: &ColoredGraph) -> Vec<u8> {
    Search::new(g).run()
}

/// Canonical-form equality.
pub fn isomorphic(g1: &ColoredGraph, g2: &ColoredGraph) -> bool {
    if g1.n != g2.n {
        return false;
    }
    let mut c1: Vec<u32> = g1.colors.clone();
    let mut c2: Vec<u32> = g2.colors.clone();
    c1.sort_unstable();
    c2.sort_unstable();
    if c1 != c2 {
        return false;
    }
    canonical_form(g1) == canonical_form(g2)
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

struct Search<'a> {
    g: &'a ColoredGraph,
    best: Option<Certificate>,
    best_labeling: Option<Vec<usize>>,
    automorphisms: Vec<Vec<usize>>,
    nodes: u64,
    leaves: u64,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Certificate {
    path: Vec<u64>,
    leaf: Vec<u8>,
}

struct Leaf {
    cert: Certificate,
    labeling: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a ColoredGraph) -> Self {
        Search {
            g,
            best: None,
            best_labeling: None,
            automorphisms: Vec::new(),
            nodes: 0,
            leaves: 0,
        }
    }

    fn run(mut self) -> Vec<u8> {
        let mut colors = normalize_colors(&self.g.colors);
        refine(self.g, &mut colors);
        let path = vec![partition_invariant(self.g, &colors)];
        self.descend(colors, path, &mut Vec::new());
        if std::env::var_os("CANON_STATS").is_some() {
            eprintln!(
                "canon: n={} nodes={} leaves={} auts={}",
                self.g.n,
                self.nodes,
                self.leaves,
                self.automorphisms.len()
            );
        }
        let best = self.best.expect("at least one leaf");
        let mut bytes = best.leaf;
        for w in best.path {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        bytes
    }

    fn descend(&mut self, colors: Vec<u32>, path: Vec<u64>, fixed: &mut Vec<usize>) {
        self.nodes += 1;
        // Path-invariant pruning: nothing here can beat a best whose path
        // compares strictly smaller at this depth.
        if let Some(best) = &self.best {
            if best.path.len() >= path.len() && best.path[..path.len()] < path[..] {
                return;
            }
        }
        match first_non_singleton_cell(&colors) {
            None => {
                self.leaves += 1;
                let leaf = make_leaf(self.g, &colors, path);
                self.offer(leaf);
            }
            Some(cell) => {
                let fresh = 1 + *colors.iter().max().unwrap();
                let mut explored: Vec<usize> = Vec::new();
                for &v in &cell {
                    if self.in_explored_orbit(v, &explored, fixed) {
                        continue;
                    }
                    let mut next = colors.clone();
                    next[v] = fresh;
                    refine(self.g, &mut next);
                    let mut next_path = path.clone();
                    next_path.push(partition_invariant(self.g, &next));
                    fixed.push(v);
                    self.descend(next, next_path, fixed);
                    fixed.pop();
                    explored.push(v);
                }
            }
        }
    }

    /// True when some discovered automorphism fixing every individualized
    /// vertex maps `v` onto an already explored sibling.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        if explored.is_empty() || self.automorphisms.is_empty() {
            return false;
        }
        let stabilizing: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|perm| fixed.iter().all(|&f| perm[f] == f))
            .collect();
        if stabilizing.is_empty() {
            return false;
        }
        let mut orbit = vec![v];
        let mut seen = std::collections::HashSet::new();
        seen.insert(v);
        let mut i = 0;
        while i < orbit.len() {
            let u = orbit[i];
            i += 1;
            for perm in &stabilizing {
                let w = perm[u];
                if seen.insert(w) {
                    if explored.contains(&w) {
                        return true;
                    }
                    orbit.push(w);
                }
            }
        }
        false
    }

    fn offer(&mut self, leaf: Leaf) {
        let better = match &self.best {
            None => true,
            Some(best) => {
                if leaf.cert == *best {
                    // Equal leaves witness an automorphism.
                    if let Some(prev) = &self.best_labeling {
                        let pos_prev = inverse(prev);
                        let perm: Vec<usize> =
                            (0..self.g.n).map(|v| leaf.labeling[pos_prev[v]]).collect();
                        if self.g.is_automorphism(&perm) {
                            self.automorphisms.push(perm);
                        }
                    }
                    false
                } else {
                    leaf.cert < *best
                }
            }
        };
        if better {
            self.best = Some(leaf.cert);
            self.best_labeling = Some(leaf.labeling);
        }
    }
}

fn make_leaf(g: &ColoredGraph, colors: &[u32], path: Vec<u64>) -> Leaf {
    let mut labeling: Vec<usize> = (0..g.n).collect();
    labeling.sort_by_key(|&v| colors[v]);
    let mut pos = vec![0u32; g.n];
    for (i, &v) in labeling.iter().enumerate() {
        pos[v] = i as u32;
    }
    let mut leaf = Vec::with_capacity(8 + g.n * 8);
    leaf.extend_from_slice(&(g.n as u64).to_le_bytes());
    for &v in &labeling {
        leaf.extend_from_slice(&g.colors[v].to_le_bytes());
    }
    let mut row: Vec<u32> = Vec::new();
    for &v in &labeling {
        row.clear();
        row.extend(g.out[v].iter().map(|&u| pos[u as usize]));
        row.sort_unstable();
        leaf.extend_from_slice(&(row.len() as u32).to_le_bytes());
        for w in &row {
            leaf.extend_from_slice(&w.to_le_bytes());
        }
    }
    Leaf {
        cert: Certificate { path, leaf },
        labeling,
    }
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = i;
    }
    out
}

/// Renames colors to dense ranks preserving order.
fn normalize_colors(colors: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    colors
        .iter()
        .map(|c| sorted.binary_search(c).unwrap() as u32)
        .collect()
}

/// 1-WL refinement: each round recolors vertices by (color, hash of out-
/// neighbor color multiset, hash of in-neighbor color multiset), until the
/// number of cells stops growing. Ranks are assigned canonically by sorted
/// signature, so isomorphic graphs refine identically.
fn refine(g: &ColoredGraph, colors: &mut Vec<u32>) {
    let n = g.n;
    let mut cells = cell_count(colors);
    let mut sig: Vec<(u64, u32)> = vec![(0, 0); n];
    loop {
        for v in 0..n {
            let mut acc_out: u64 = 0;
            for &u in &g.out[v] {
                acc_out = acc_out.wrapping_add(splitmix(colors[u as usize] as u64 ^ 0x00ff00ff));
            }
            let mut acc_in: u64 = 0;
            for &u in &g.inn[v] {
                acc_in = acc_in.wrapping_add(splitmix(colors[u as usize] as u64 ^ 0x12345678));
            }
            let mixed = splitmix(acc_out ^ acc_in.rotate_left(17) ^ ((colors[v] as u64) << 40));
            sig[v] = (mixed, v as u32);
        }
        // rank by (old color, signature) to keep refinement monotone
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&v| (colors[v as usize], sig[v as usize].0));
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 {
                let (a, b) = (order[i - 1] as usize, order[i] as usize);
                if colors[a] != colors[b] || sig[a].0 != sig[b].0 {
                    rank += 1;
                }
            }
            next[order[i] as usize] = rank;
        }
        let new_cells = rank as usize + 1;
        *colors = next;
        if new_cells == cells {
            return;
        }
        cells = new_cells;
    }
}

fn cell_count(colors: &[u32]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Vertices of the first smallest non-singleton cell, by color rank.
fn first_non_singleton_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    by_color
        .into_iter()
        .filter(|(_, vs)| vs.len() > 1)
        .min_by_key(|&(c, ref vs)| (vs.len(), c))
        .map(|(_, vs)| vs)
}

/// Order-invariant digest of a refined partition: cell sizes, colors, and
/// the arc counts of the quotient graph.
fn partition_invariant(g: &ColoredGraph, colors: &[u32]) -> u64 {
    let cells = cell_count(colors);
    let mut h: u64 = 0xcbf29ce484222325;
    let mut mix = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x100000001b3);
    };
    mix(cells as u64);
    let mut sizes = vec![0u64; cells];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    for (c, s) in sizes.iter().enumerate() {
        mix(c as u64);
        mix(*s);
    }
    let mut acc: u64 = 0;
    for u in 0..g.n {
        for &v in &g.out[u] {
            acc = acc.wrapping_add(splitmix(
                (colors[u] as u64) << 32 | colors[v as usize] as u64,
            ));
        }
    }
    mix(acc);
    h
}

/// Canonical form of a binary code under coordinate permutation and
/// translation by a codeword: the minimum over x in C of the canonical form
/// of the bipartite row/column incidence graph of the translated code C+x.
/// Codes containing 0 are equivalent exactly when these forms agree.
pub fn code_canonical_form(code: &BinaryCode) -> Vec<u8> {
    let forms: Vec<Vec<u8>> = code
        .words()
        .par_iter()
        .map(|x| {
            let g = incidence_graph(code, x);
            canonical_form(&g)
        })
        .collect();
    forms.into_iter().min().expect("nonempty code")
}

fn incidence_graph(code: &BinaryCode, translate: &crate::bitvec::BitVec) -> ColoredGraph {
    let m = code.len();
    let n = code.length();
    let mut colors = vec![0u32; m];
    colors.extend(std::iter::repeat(1).take(n));
    let mut g = ColoredGraph::new(m + n, colors);
    for (i, w) in code.words().iter().enumerate() {
        let t = w.xor(translate);
        for j in t.support() {
            g.add_edge(i, m + j);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> ColoredGraph {
        let mut g = ColoredGraph::new(3, vec![0; 3]);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g
    }

    fn triangle() -> ColoredGraph {
        let mut g = ColoredGraph::new(3, vec![0; 3]);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g
    }

    #[test]
    fn relabeling_preserves_form() {
        let g = path3();
        let h = g.relabeled(&[2, 0, 1]);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert!(isomorphic(&g, &h));
    }

    #[test]
    fn path_and_triangle_differ() {
        assert_ne!(canonical_form(&path3()), canonical_form(&triangle()));
        assert!(!isomorphic(&path3(), &triangle()));
    }

    #[test]
    fn colors_distinguish() {
        let mut g1 = ColoredGraph::new(2, vec![0, 0]);
        g1.add_edge(0, 1);
        let mut g2 = ColoredGraph::new(2, vec![0, 1]);
        g2.add_edge(0, 1);
        assert!(!isomorphic(&g1, &g2));
    }

    #[test]
    fn directed_arcs_matter() {
        let mut g1 = ColoredGraph::new(3, vec![0; 3]);
        g1.add_arc(0, 1);
        g1.add_arc(1, 2);
        let mut g2 = ColoredGraph::new(3, vec![0; 3]);
        g2.add_arc(0, 1);
        g2.add_arc(2, 1);
        assert!(!isomorphic(&g1, &g2));
        let h = g1.relabeled(&[1, 2, 0]);
        assert!(isomorphic(&g1, &h));
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        // complete bipartite K_{8,8}: automorphism group of order (8!)^2 * 2
        let mut g = ColoredGraph::new(16, vec![0; 16]);
        for u in 0..8 {
            for v in 8..16 {
                g.add_edge(u, v);
            }
        }
        let start = std::time::Instant::now();
        let f1 = canonical_form(&g);
        let perm: Vec<usize> = (0..16).rev().collect();
        let f2 = canonical_form(&g.relabeled(&perm));
        assert_eq!(f1, f2);
        assert!(start.elapsed().as_secs() < 5, "took {:?}", start.elapsed());
    }
}
