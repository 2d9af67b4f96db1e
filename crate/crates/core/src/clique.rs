//! Mate search: the graph reduction from "does H have a weakly unbiased
//! mate with value set {a,b}" to n-clique existence, a bitset
//! branch-and-bound maximum-clique solver, and the direct backtracking
//! search for quasi-unbiased mates under the fixed-three-columns reduction.
//!
//! Candidate rows are the +-1 vectors x with first coordinate +1 whose
//! inner products against every row of H land in the allowed value set;
//! they are enumerated in Gray-code order so each step updates all n inner
//! products by +-2. Two candidates are adjacent when orthogonal; an
//! n-clique is exactly the row set of a mate matrix K.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;

/// Enumeration limit for candidate generation (2^{n-3} sign patterns per
/// prefix class).
pub const MAX_SEARCH_ORDER: usize = 32;

/// The four fixed 3-bit prefixes; a vertex in part j has its first three
/// coordinates equal to `PREFIXES[j]`.
const PREFIXES: [[i64; 3]; 4] = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]];

/// Vertex-filtered orthogonality graph over candidate mate rows.
#[derive(Clone)]
pub struct MateGraph {
    order: usize,
    /// Candidate rows as sign bitmasks (bit j set = entry j is -1).
    vertices: Vec<u64>,
    /// Part index (0..4) of each vertex.
    parts: Vec<u8>,
    /// Adjacency bitsets, row-major blocks of 64.
    adj: Vec<u64>,
    blocks: usize,
}

impl MateGraph {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn part_sizes(&self) -> [usize; 4] {
        let mut out = [0usize; 4];
        for &p in &self.parts {
            out[p as usize] += 1;
        }
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.blocks + v / 64] >> (v % 64) & 1 == 1
    }

    /// The +-1 row vector of a vertex.
    pub fn vertex_row(&self, v: usize) -> Vec<i64> {
        let bits = self.vertices[v];
        (0..self.order)
            .map(|j| if bits >> j & 1 == 1 { -1 } else { 1 })
            .collect()
    }

    /// Restriction to the vertices of the given parts.
    pub fn restrict_to_parts(&self, parts: &[u8]) -> MateGraph {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| parts.contains(&self.parts[v]))
            .collect();
        let blocks = keep.len().div_ceil(64).max(1);
        let mut adj = vec![0u64; keep.len() * blocks];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.adjacent(u, v) {
                    adj[i * blocks + j / 64] |= 1 << (j % 64);
                }
            }
        }
        MateGraph {
            order: self.order,
            vertices: keep.iter().map(|&v| self.vertices[v]).collect(),
            parts: keep.iter().map(|&v| self.parts[v]).collect(),
            adj,
            blocks,
        }
    }
}

/// Enumerates the candidate rows of one prefix part: all x in {+-1}^n with
/// (x_1,x_2,x_3) fixed and |x . h_i| in `allowed` for every row h_i of H.
/// Gray-code order keeps the inner product updates incremental.
fn enumerate_part(h: &SignMatrix, part: usize, allowed: &[i64]) -> Vec<u64> {
    let n = h.order();
    let free = n - 3;
    let mut allowed_mask = [false; 64];
    for &v in allowed {
        allowed_mask[v.unsigned_abs() as usize] = true;
    }
    // start vector: prefix signs, +1 elsewhere
    let mut signs: u64 = 0;
    for (j, &s) in PREFIXES[part].iter().enumerate() {
        if s < 0 {
            signs |= 1 << j;
        }
    }
    // inner products against all rows of H
    let mut dots: Vec<i64> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = if signs >> j & 1 == 1 { -1i64 } else { 1 };
                    x * h.get(i, j) as i64
                })
                .sum()
        })
        .collect();
    // column access for incremental updates
    let cols: Vec<Vec<i64>> = (3..n)
        .map(|j| (0..n).map(|i| h.get(i, j) as i64).collect())
        .collect();
    let mut out = Vec::new();
    let total: u64 = 1 << free;
    let mut gray_prev: u64 = 0;
    for counter in 0..total {
        if counter != 0 {
            let gray = counter ^ (counter >> 1);
            let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
            gray_prev = gray;
            let j = flipped + 3;
            let was_negative = signs >> j & 1 == 1;
            signs ^= 1 << j;
            let step = if was_negative { 2 } else { -2 };
            for i in 0..n {
                dots[i] += step * cols[flipped][i];
            }
        }
        if dots
            .iter()
            .all(|&d| (d.unsigned_abs() as usize) < 64 && allowed_mask[d.unsigned_abs() as usize])
        {
            out.push(signs);
        }
    }
    out.sort_unstable();
    out
}

/// Builds the orthogonality graph over the filtered candidates for every
/// prefix part. `allowed` is the permitted absolute inner-product set
/// against the rows of H (e.g. {a, b} for weak mates, {0, 2 alpha} for
/// quasi-unbiased mates).
pub fn build_mate_graph(h: &SignMatrix, allowed: &[i64]) -> Result<MateGraph> {
    let n = h.order();
    if n > MAX_SEARCH_ORDER {
        return Err(Error::SearchTooLarge {
            order: n,
            limit: MAX_SEARCH_ORDER,
        });
    }
    if !h.is_hadamard() {
        return Err(Error::NotHadamard { order: n });
    }
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    for part in 0..4 {
        let vs = enumerate_part(h, part, allowed);
        parts.extend(std::iter::repeat(part as u8).take(vs.len()));
        vertices.extend(vs);
    }
    let count = vertices.len();
    let blocks = count.div_ceil(64).max(1);
    let mut adj = vec![0u64; count * blocks];
    for u in 0..count {
        for v in u + 1..count {
            // orthogonality: popcount of sign disagreement is n/2
            let diff = (vertices[u] ^ vertices[v]).count_ones() as usize;
            if 2 * diff == n {
                adj[u * blocks + v / 64] |= 1 << (v % 64);
                adj[v * blocks + u / 64] |= 1 << (u % 64);
            }
        }
    }
    Ok(MateGraph {
        order: n,
        vertices,
        parts,
        adj,
        blocks,
    })
}

/// Outcome of a clique search.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<usize>,
    /// False when the node budget ran out; `size` is then only a lower
    /// bound.
    pub exhausted_budget: bool,
}

struct CliqueSearch<'a> {
    g: &'a MateGraph,
    order: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    target: Option<usize>,
}

/// Exact maximum clique by branch and bound with greedy-coloring bounds
/// over bitset candidate sets. `budget` caps the number of search nodes;
/// on exhaustion the best clique found so far is returned flagged.
pub fn max_clique(g: &MateGraph, budget: u64) -> CliqueResult {
    max_clique_inner(g, budget, None)
}

/// Like `max_clique` but stops as soon as a clique of `target` vertices is
/// found.
pub fn find_clique_of_size(g: &MateGraph, target: usize, budget: u64) -> CliqueResult {
    max_clique_inner(g, budget, Some(target))
}

fn max_clique_inner(g: &MateGraph, budget: u64, target: Option<usize>) -> CliqueResult {
    let n = g.vertex_count();
    if n == 0 {
        return CliqueResult {
            size: 0,
            witness: vec![],
            exhausted_budget: false,
        };
    }
    // static degeneracy-flavored order: by degree descending
    let mut order: Vec<usize> = (0..n).collect();
    let degree =
        |v: usize| -> usize { (0..n).filter(|&u| u != v && g.adjacent(u, v)).count() };
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));
    let mut search = CliqueSearch {
        g,
        order,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        target,
    };
    let all: Vec<usize> = search.order.clone();
    let exhausted = !search.expand(&all);
    CliqueResult {
        size: search.best.len(),
        witness: search.best,
        exhausted_budget: exhausted && search.target.map_or(true, |t| search.nodes >= budget && t > 0),
    }
}

impl<'a> CliqueSearch<'a> {
    /// Returns false when the budget was exhausted.
    fn expand(&mut self, candidates: &[usize]) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if let Some(t) = self.target {
            if self.best.len() >= t {
                return true;
            }
        }
        if candidates.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return true;
        }
        // greedy coloring bound: vertices grouped into independent classes
        let mut color = vec![0usize; candidates.len()];
        let mut class_members: Vec<Vec<usize>> = Vec::new();
        for (idx, &v) in candidates.iter().enumerate() {
            let mut c = 0;
            'class: loop {
                if c == class_members.len() {
                    class_members.push(vec![v]);
                    break;
                }
                if class_members[c].iter().all(|&u| !self.g.adjacent(u, v)) {
                    class_members[c].push(v);
                    break 'class;
                }
                c += 1;
            }
            color[idx] = c;
        }
        // sort candidates by color ascending; branch from the back
        let mut by_color: Vec<(usize, usize)> = color
            .iter()
            .zip(candidates)
            .map(|(&c, &v)| (c, v))
            .collect();
        by_color.sort_unstable();
        let mut ok = true;
        for i in (0..by_color.len()).rev() {
            let (c, v) = by_color[i];
            if self.current.len() + c + 1 <= self.best.len() {
                break;
            }
            let next: Vec<usize> = by_color[..i]
                .iter()
                .map(|&(_, u)| u)
                .filter(|&u| self.g.adjacent(u, v))
                .collect();
            self.current.push(v);
            ok &= self.expand(&next);
            self.current.pop();
            if !ok {
                return false;
            }
            if let Some(t) = self.target {
                if self.best.len() >= t {
                    return true;
                }
            }
        }
        ok
    }
}

/// Converts a set of n pairwise-orthogonal candidate rows into the mate
/// matrix K.
fn clique_to_matrix(g: &MateGraph, clique: &[usize]) -> SignMatrix {
    let rows: Vec<Vec<i32>> = clique
        .iter()
        .map(|&v| g.vertex_row(v).iter().map(|&x| x as i32).collect())
        .collect();
    SignMatrix::from_rows(&rows).expect("clique rows are +-1 vectors")
}

/// Searches for a Hadamard mate K with every entry of H K^T of absolute
/// value in `sigma` = {a, b}, by the n-clique route. Returns the witness
/// mate, or None after exhausting the reduced space.
pub fn find_mate(h: &SignMatrix, sigma: (u64, u64), budget: u64) -> Result<Option<SignMatrix>> {
    let g = build_mate_graph(h, &[sigma.0 as i64, sigma.1 as i64])?;
    let n = h.order();
    let res = find_clique_of_size(&g, n, budget);
    if res.size >= n {
        let k = clique_to_matrix(&g, &res.witness);
        debug_assert!(k.is_hadamard());
        return Ok(Some(k));
    }
    Ok(None)
}

/// The pre-screen used before full clique search on large orders: every
/// part subgraph must contain an (n/4)-clique.
pub fn prescreen_parts(g: &MateGraph, budget: u64) -> bool {
    let quarter = g.order() / 4;
    (0..4u8).all(|p| {
        let sub = g.restrict_to_parts(&[p]);
        find_clique_of_size(&sub, quarter, budget).size >= quarter
    })
}

/// Exhaustive enumeration of all quasi-unbiased mates of H with parameters
/// `(l, a) = ((n/2 alpha)^2, 4 alpha^2)` under the fixed-three-columns
/// reduction: row i of the mate has prefix part i / (n/4), rows chosen in
/// increasing candidate order inside each part (so each row set is counted
/// once), all rows pairwise orthogonal and with |x . h_i| in {0, 2 alpha}.
pub fn find_qub_mates(
    h: &SignMatrix,
    l: u64,
    a: u64,
    limit: Option<usize>,
) -> Result<Vec<SignMatrix>> {
    let n = h.order() as u64;
    let alpha_sq = a / 4;
    let alpha = (alpha_sq as f64).sqrt().round() as u64;
    if a % 4 != 0 || 4 * alpha * alpha != a || l * a != n * n || n % (2 * alpha) != 0 {
        return Err(Error::InfeasibleParameters { n: n as usize, l, a });
    }
    let g = build_mate_graph(h, &[0, 2 * alpha as i64])?;
    let n = h.order();
    let quarter = n / 4;
    // candidate indexes per part
    let mut part_vertices: [Vec<usize>; 4] = Default::default();
    for v in 0..g.vertex_count() {
        part_vertices[g.parts[v] as usize].push(v);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut out: Vec<SignMatrix> = Vec::new();
    fn rec(
        g: &MateGraph,
        parts: &[Vec<usize>; 4],
        quarter: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<SignMatrix>,
        limit: Option<usize>,
    ) -> bool {
        let total = 4 * quarter;
        if chosen.len() == total {
            out.push(clique_to_matrix(g, chosen));
            return limit.is_none_or(|cap| out.len() < cap);
        }
        let part = chosen.len() / quarter;
        let within = chosen.len() % quarter;
        let start = if within == 0 {
            0
        } else {
            // strictly increasing inside a part
            parts[part]
                .iter()
                .position(|&v| v == *chosen.last().unwrap())
                .unwrap()
                + 1
        };
        // feasibility: enough candidates left in this part
        for idx in start..parts[part].len() {
            if parts[part].len() - idx < quarter - within {
                break;
            }
            let v = parts[part][idx];
            if chosen.iter().all(|&u| g.adjacent(u, v)) {
                chosen.push(v);
                if !rec(g, parts, quarter, chosen, out, limit) {
                    chosen.pop();
                    return false;
                }
                chosen.pop();
            }
        }
        true
    }
    rec(&g, &part_vertices, quarter, &mut chosen, &mut out, limit);
    Ok(out)
}

/// First quasi-unbiased mate, if any.
pub fn find_qub_mate(h: &SignMatrix, l: u64, a: u64) -> Result<Option<SignMatrix>> {
    Ok(find_qub_mates(h, l, a, Some(1))?.into_iter().next())
}

/// The mates of `find_qub_mates` at leading-row granularity: one matrix per
/// (mate row set, choice of the leading row of the first block), with all
/// other positions canonically sorted. This is the granularity at which a
/// search that iterates the first row over every first-part candidate
/// reports "distinct matrices", and it is how the published order-12 count
/// of 1485 mates is stated; the canonical row-set count is 1485/3 = 495.
pub fn find_qub_mates_per_leading_row(h: &SignMatrix, l: u64, a: u64) -> Result<Vec<SignMatrix>> {
    let canonical = find_qub_mates(h, l, a, None)?;
    let quarter = h.order() / 4;
    let mut out = Vec::with_capacity(canonical.len() * quarter);
    for m in &canonical {
        for lead in 0..quarter {
            let mut perm: Vec<usize> = vec![lead];
            perm.extend((0..quarter).filter(|&r| r != lead));
            perm.extend(quarter..h.order());
            let signs = vec![1; h.order()];
            out.push(m.permute_negate_rows(&perm, &signs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::{classify_pair, negate_first_column, PairClassification};

    fn sylvester(order: usize) -> SignMatrix {
        let h2 = SignMatrix::from_sign_rows(&["++", "+-"]).unwrap();
        let mut h = h2.clone();
        while h.order() < order {
            h = h.kronecker(&h2).unwrap();
        }
        h
    }

    #[test]
    fn weak_mate_exists_for_order_8() {
        let h = sylvester(8);
        let g = build_mate_graph(&h, &[2, 6]).unwrap();
        let res = find_clique_of_size(&g, 8, 1 << 24);
        assert_eq!(res.size, 8);
        let k = find_mate(&h, (2, 6), 1 << 24).unwrap().unwrap();
        assert_eq!(
            classify_pair(&h, &k),
            PairClassification::WeaklyUnbiased {
                sigma: (2, 6),
                n_a: 7
            }
        );
    }

    #[test]
    fn known_mate_rows_appear_in_parts() {
        // rows of the negated-column mate, sign-normalized, are vertices
        let h = sylvester(8);
        let k = negate_first_column(&h).unwrap();
        let g = build_mate_graph(&h, &[2, 6]).unwrap();
        for i in 0..8 {
            let mut bits: u64 = 0;
            for j in 0..8 {
                let mut e = k.get(i, j);
                if k.get(i, 0) < 0 {
                    e = -e;
                }
                if e < 0 {
                    bits |= 1 << j;
                }
            }
            assert!(g.vertices.contains(&bits), "row {i} missing");
        }
    }

    #[test]
    fn trivial_cliques() {
        // complete graph on 5: take order-8 mate graph restricted? simpler:
        // build tiny graphs by hand through MateGraph fields is private;
        // use an order-4 Hadamard where every pair of candidates with
        // allowed {0,4} contains the rows of H itself.
        let h = sylvester(4);
        let g = build_mate_graph(&h, &[0, 4]).unwrap();
        let res = max_clique(&g, 1 << 20);
        assert_eq!(res.size, 4);
        assert!(!res.exhausted_budget);
    }

    #[test]
    fn qub_mates_order_12_first_witness() {
        let h12 = fixtures::paley_h12();
        let k = find_qub_mate(&h12, 9, 16).unwrap().unwrap();
        assert_eq!(
            classify_pair(&h12, &k),
            PairClassification::QuasiUnbiased { l: 9, a: 16 }
        );
    }

    #[test]
    fn qub_mate_rejects_infeasible_parameters() {
        let h12 = fixtures::paley_h12();
        assert!(find_qub_mate(&h12, 4, 16).is_err());
    }

    #[test]
    fn monotone_restriction() {
        let h = sylvester(8);
        let g = build_mate_graph(&h, &[2, 6]).unwrap();
        let sub = g.restrict_to_parts(&[0, 1]);
        let full = max_clique(&g, 1 << 22).size;
        let part = max_clique(&sub, 1 << 22).size;
        assert!(part <= full);
    }
}
