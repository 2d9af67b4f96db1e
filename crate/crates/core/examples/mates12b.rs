use ubh_core::{clique, fixtures, matrix::SignMatrix};
use std::collections::HashSet;

fn main() {
    let h12 = fixtures::paley_h12();
    let k12 = fixtures::figure_k12();
    let mates = clique::find_qub_mates(&h12, 9, 16, None).unwrap();
    println!("row-set count: {}", mates.len());

    // Is the Figure-1 matrix's row multiset among them?
    let figure_rows: HashSet<Vec<i32>> = (0..12)
        .map(|i| (0..12).map(|j| k12.get(i, j)).collect())
        .collect();
    let found = mates.iter().any(|m| {
        let rows: HashSet<Vec<i32>> = (0..12)
            .map(|i| (0..12).map(|j| m.get(i, j)).collect())
            .collect();
        rows == figure_rows
    });
    println!("figure K12 row set found: {found}");

    // Independent count: ordered assignments (no within-part sorting).
    // Expect row-set count * (3!)^4 if the backtracking is exhaustive.
    let g = ubh_core::clique::build_mate_graph(&h12, &[0, 4]).unwrap();
    println!("part sizes: {:?}", g.part_sizes());
    let mut parts: [Vec<usize>; 4] = Default::default();
    for v in 0..g.vertex_count() {
        let row = g.vertex_row(v);
        let part = match (row[1], row[2]) {
            (1, 1) => 0, (1, -1) => 1, (-1, 1) => 2, _ => 3,
        };
        parts[part].push(v);
    }
    fn rec(g: &ubh_core::clique::MateGraph, parts: &[Vec<usize>; 4], chosen: &mut Vec<usize>, count: &mut u64) {
        if chosen.len() == 12 {
            *count += 1;
            return;
        }
        let part = chosen.len() / 3;
        for &v in &parts[part] {
            if chosen.iter().all(|&u| u != v && g.adjacent(u, v)) {
                chosen.push(v);
                rec(g, parts, chosen, count);
                chosen.pop();
            }
        }
    }
    let mut count = 0u64;
    rec(&g, &parts, &mut Vec::new(), &mut count);
    println!("ordered count: {count} ({} row sets x 1296)", count / 1296);
    let _ = SignMatrix::from_sign_rows(&["++","+-"]); // keep import used
}
