//! Classification engines: level-by-level coset augmentation for binary
//! codes of the form `C1 u (u2+C1) u ... u (uf+C1)` and generator
//! augmentation for Z4-codes over ZRM(1,m), with equivalence-class
//! deduplication, plus the audit that re-derives every bundled fixture
//! table.
//!
//! At each level every inequivalent code from the previous level is
//! extended by every coset that keeps all cross distances inside the
//! condition's allowed set (this is exact, not heuristic: distance sets
//! only grow), and the resulting codes are deduplicated by canonical
//! forms behind a cheap invariant pre-filter.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::binary::{self, BinaryCode};
use crate::bitvec::BitVec;
use crate::bounds;
use crate::canon;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::z4::{self, WeakParity, Z4LinearCode, Z4Vector};

/// Which code condition an extension run classifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinaryCondition {
    /// Support exactly {0, n/2 +- alpha, n/2, n}: quasi-unbiased families.
    F2 { alpha: usize },
    /// Weakly unbiased pair condition with odd offsets a < b; two blocks.
    Weak { a: usize, b: usize },
    /// Type II condition with even offsets a < b; up to f blocks.
    WeakTwo { a: usize, b: usize },
}

impl BinaryCondition {
    /// Distances allowed between a new block and the existing words.
    fn allowed_cross(&self, n: usize) -> Vec<usize> {
        match *self {
            BinaryCondition::F2 { alpha } => vec![n / 2 - alpha, n / 2, n / 2 + alpha],
            BinaryCondition::Weak { a, b } | BinaryCondition::WeakTwo { a, b } => {
                vec![n / 2 - b, n / 2 - a, n / 2 + a, n / 2 + b]
            }
        }
    }

    fn max_blocks(&self) -> usize {
        match self {
            // a set of three mutually weakly unbiased matrices cannot exist
            BinaryCondition::Weak { .. } => 2,
            _ => usize::MAX,
        }
    }

    /// Full acceptance check at block count f.
    fn accepts(&self, code: &BinaryCode, f: usize) -> bool {
        match *self {
            BinaryCondition::F2 { alpha } => binary::check_f2(code, alpha, f),
            BinaryCondition::Weak { a, b } => f == 2 && binary::check_weak_f2(code, a, b),
            BinaryCondition::WeakTwo { a, b } => binary::check_weak2_f2(code, a, b, f),
        }
    }
}

/// A classified representative: the code and the coset leaders that build
/// it over the seed (leader 0 first).
#[derive(Clone, Debug)]
pub struct ClassifiedCode {
    pub code: BinaryCode,
    pub leaders: Vec<BitVec>,
}

impl ClassifiedCode {
    pub fn blocks(&self, base_len: usize) -> Vec<Vec<usize>> {
        (0..self.leaders.len())
            .map(|b| (b * base_len..(b + 1) * base_len).collect())
            .collect()
    }
}

/// Classification output per level f (= block count).
pub type BinaryLevels = BTreeMap<usize, Vec<ClassifiedCode>>;

/// Translation+permutation invariant used to pre-filter canonical
/// comparisons: the sorted multiset of per-word distance profiles.
fn code_invariant(code: &BinaryCode) -> Vec<u64> {
    let n = code.length();
    let words = code.words();
    let mut profiles: Vec<u64> = words
        .iter()
        .map(|w| {
            let mut counts = vec![0u16; n + 1];
            for v in words {
                counts[w.distance(v)] += 1;
            }
            // FNV over the profile
            let mut h: u64 = 0xcbf29ce484222325;
            for c in counts {
                h ^= c as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
            h
        })
        .collect();
    profiles.sort_unstable();
    profiles
}

/// Deduplicates codes by equivalence, keeping first representatives.
fn dedupe_binary(candidates: Vec<ClassifiedCode>) -> Vec<ClassifiedCode> {
    let mut kept: Vec<ClassifiedCode> = Vec::new();
    let mut forms: Vec<Option<Vec<u8>>> = Vec::new();
    let mut invariants: Vec<Vec<u64>> = Vec::new();
    for cand in candidates {
        let inv = code_invariant(&cand.code);
        let mut cand_form: Option<Vec<u8>> = None;
        let mut duplicate = false;
        for i in 0..kept.len() {
            if invariants[i] != inv {
                continue;
            }
            let form = cand_form
                .get_or_insert_with(|| canon::code_canonical_form(&cand.code))
                .clone();
            let kept_form = forms[i]
                .get_or_insert_with(|| canon::code_canonical_form(&kept[i].code))
                .clone();
            if form == kept_form {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(cand);
            forms.push(cand_form);
            invariants.push(inv);
        }
    }
    kept
}

/// Row-echelon pivots of a binary linear code's generators; used to
/// enumerate coset representatives directly.
fn binary_pivots(generators: &[BitVec], n: usize) -> Option<Vec<usize>> {
    let mut rows: Vec<BitVec> = generators.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if let Some(i) = (r..rows.len()).find(|&i| rows[i].get(col)) {
            rows.swap(r, i);
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row.get(col) {
                    row.xor_in_place(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    (r == generators.len()).then_some(pivots)
}

/// True if the word set is closed under xor (tested directly; the codes
/// here are small).
fn is_linear(code: &BinaryCode) -> bool {
    let set: HashSet<&BitVec> = code.words().iter().collect();
    if !set.contains(&BitVec::zeros(code.length())) {
        return false;
    }
    code.words()
        .iter()
        .take(32)
        .all(|a| code.words().iter().all(|b| set.contains(&a.xor(b))))
}

enum CandidateSpace {
    /// Linear seed: direct enumeration of coset representatives that are
    /// zero on the pivot columns.
    LinearCosets { pivots: Vec<usize> },
    /// General seed: all words with first bit zero (the complement maps
    /// each block to itself).
    HalfSpace,
}

impl CandidateSpace {
    fn for_seed(seed: &BinaryCode) -> Self {
        if is_linear(seed) {
            // derive a generator basis from the words by elimination
            let mut basis: Vec<BitVec> = Vec::new();
            let mut span: HashSet<BitVec> = HashSet::new();
            span.insert(BitVec::zeros(seed.length()));
            for w in seed.words() {
                if !span.contains(w) {
                    let extra: Vec<BitVec> = span.iter().map(|s| s.xor(w)).collect();
                    span.extend(extra);
                    basis.push(w.clone());
                }
            }
            if let Some(pivots) = binary_pivots(&basis, seed.length()) {
                return CandidateSpace::LinearCosets { pivots };
            }
            CandidateSpace::HalfSpace
        } else {
            CandidateSpace::HalfSpace
        }
    }

    fn enumerate(&self, n: usize, mut visit: impl FnMut(&BitVec)) {
        match self {
            CandidateSpace::LinearCosets { pivots } => {
                let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
                let total: u64 = 1 << free.len();
                let mut v = BitVec::zeros(n);
                let mut prev: u64 = 0;
                for counter in 0..total {
                    let gray = counter ^ (counter >> 1);
                    let diff = gray ^ prev;
                    prev = gray;
                    if diff != 0 {
                        let idx = diff.trailing_zeros() as usize;
                        v.set(free[idx], gray >> idx & 1 == 1);
                    }
                    visit(&v);
                }
            }
            CandidateSpace::HalfSpace => {
                let total: u64 = 1 << (n - 1);
                let mut v = BitVec::zeros(n);
                let mut prev: u64 = 0;
                for counter in 0..total {
                    let gray = counter ^ (counter >> 1);
                    let diff = gray ^ prev;
                    prev = gray;
                    if diff != 0 {
                        let idx = diff.trailing_zeros() as usize;
                        v.set(idx + 1, gray >> idx & 1 == 1);
                    }
                    visit(&v);
                }
            }
        }
    }
}

/// Classifies the codes `C1 u (u2+C1) u ... u (uf+C1)` satisfying the
/// condition, for f = 2..=f_max, up to code equivalence. The seed must
/// contain 0 and be self-complementary with Hadamard-type distribution.
pub fn classify_binary_extensions(
    seed: &BinaryCode,
    condition: BinaryCondition,
    f_max: usize,
    mut progress: impl FnMut(String),
) -> Result<BinaryLevels> {
    let n = seed.length();
    if !seed.contains(&BitVec::zeros(n)) {
        return Err(Error::NotNormalized);
    }
    let allowed = condition.allowed_cross(n);
    let mut allowed_mask = vec![false; n + 1];
    for &d in &allowed {
        allowed_mask[d] = true;
    }
    let space = CandidateSpace::for_seed(seed);
    let linear = matches!(space, CandidateSpace::LinearCosets { .. });
    let mut levels: BinaryLevels = BTreeMap::new();
    let mut frontier = vec![ClassifiedCode {
        code: seed.clone(),
        leaders: vec![BitVec::zeros(n)],
    }];
    let f_cap = f_max.min(condition.max_blocks());
    for f in 2..=f_cap {
        let mut candidates: Vec<ClassifiedCode> = Vec::new();
        let mut seen_blocks: HashSet<Vec<BitVec>> = HashSet::new();
        for state in &frontier {
            let words = state.code.words();
            space.enumerate(n, |u| {
                // cheap reject: u itself must sit at an allowed distance
                // from every existing word (u is in the new block)
                let ok_fast = words.iter().all(|c| allowed_mask[u.distance(c)]);
                if !ok_fast {
                    return;
                }
                // full check: every word of the new block
                let full_ok = if linear {
                    true // u + seed distances equal u + code distances here
                } else {
                    seed.words().iter().all(|w| {
                        let uw = u.xor(w);
                        words.iter().all(|c| allowed_mask[uw.distance(c)])
                    })
                };
                if !full_ok {
                    return;
                }
                // the new block, canonically keyed
                let mut block: Vec<BitVec> = seed.words().iter().map(|w| u.xor(w)).collect();
                block.sort();
                let mut key: Vec<BitVec> = state
                    .leaders
                    .iter()
                    .flat_map(|l| seed.words().iter().map(move |w| l.xor(w)))
                    .collect();
                key.extend(block.iter().cloned());
                key.sort();
                if !seen_blocks.insert(key) {
                    return;
                }
                let mut leaders = state.leaders.clone();
                leaders.push(u.clone());
                if let Ok(code) = BinaryCode::union_of_cosets(seed, &leaders) {
                    candidates.push(ClassifiedCode { code, leaders });
                }
            });
        }
        progress(format!(
            "level f={f}: {} candidate codes before dedup",
            candidates.len()
        ));
        let reps = dedupe_binary(candidates);
        let accepted: Vec<ClassifiedCode> = reps
            .into_iter()
            .filter(|c| condition.accepts(&c.code, f))
            .collect();
        progress(format!("level f={f}: {} inequivalent codes", accepted.len()));
        if accepted.is_empty() {
            levels.insert(f, Vec::new());
            break;
        }
        frontier = accepted.clone();
        levels.insert(f, accepted);
    }
    Ok(levels)
}

/// Which Z4 condition a classification run targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Z4Condition {
    /// Balance squares {0, beta^2, n^2}: quasi-unbiased families.
    Qub,
    /// Balance squares {0, a^2, b^2, n^2}, odd a b, 4n-2 balanced words.
    Weak,
    /// Same with even a, b.
    WeakTwo,
}

impl Z4Condition {
    fn max_mid_values(&self) -> usize {
        match self {
            Z4Condition::Qub => 1,
            _ => 2,
        }
    }

    /// Whether new words may have balance zero.
    fn allows_balanced(&self) -> bool {
        matches!(self, Z4Condition::Qub)
    }

    /// Required parity of nonzero |balance| values, if any.
    fn parity(&self) -> Option<u64> {
        match self {
            Z4Condition::Qub => None,
            Z4Condition::Weak => Some(1),
            Z4Condition::WeakTwo => Some(0),
        }
    }

    fn accepts(&self, code: &Z4LinearCode) -> bool {
        match self {
            Z4Condition::Qub => z4::check_z4_qub(code).is_some(),
            Z4Condition::Weak => z4::check_z4_weak(code, WeakParity::Odd).is_some(),
            Z4Condition::WeakTwo => z4::check_z4_weak(code, WeakParity::Even).is_some(),
        }
    }
}

/// Z4 classification output: level k (log2 of the code size) to
/// inequivalent codes satisfying the full condition.
pub type Z4Levels = BTreeMap<u32, Vec<Z4LinearCode>>;

struct Z4State {
    code: Z4LinearCode,
    /// Nonzero balance squares other than n^2 seen so far.
    mids: Vec<u64>,
}

/// Pivot structure of a Z4 code in row echelon form (no column swaps):
/// unit pivots and 2-pivots by column.
struct Z4Pivots {
    unit_cols: Vec<usize>,
    two_cols: Vec<usize>,
}

fn z4_row_echelon(code: &Z4LinearCode) -> (Vec<Z4Vector>, Z4Pivots) {
    let n = code.length();
    let mut rows: Vec<Z4Vector> = code.generators().to_vec();
    let mut unit_cols = Vec::new();
    let mut two_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if let Some(i) = (r..rows.len()).find(|&i| rows[i].get(col) % 2 == 1) {
            rows.swap(r, i);
            if rows[r].get(col) == 3 {
                rows[r] = rows[r].scaled(3);
            }
            let pivot = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r {
                    let c = row.get(col);
                    if c != 0 {
                        row.add_in_place(&pivot.scaled(4 - c));
                    }
                }
            }
            unit_cols.push(col);
            r += 1;
        } else if let Some(i) = (r..rows.len()).find(|&i| rows[i].get(col) == 2) {
            rows.swap(r, i);
            let pivot = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row.get(col) >= 2 {
                    row.add_in_place(&pivot);
                }
            }
            two_cols.push(col);
            r += 1;
        }
    }
    rows.truncate(r);
    rows.retain(|row| !row.is_zero());
    (
        rows,
        Z4Pivots {
            unit_cols,
            two_cols,
        },
    )
}

/// Enumerates one canonical representative per coset of `code` inside
/// `{x : 2x in code}`: the odd part ranges over the halved even subcode
/// (zero at unit pivots), the 2-part over the free columns.
pub(crate) fn enumerate_extension_reps_public(
    code: &Z4LinearCode,
    visit: impl FnMut(&Z4Vector),
) {
    enumerate_extension_reps(code, visit)
}

fn enumerate_extension_reps(code: &Z4LinearCode, mut visit: impl FnMut(&Z4Vector)) {
    let n = code.length();
    let (_, pivots) = z4_row_echelon(code);
    let pivot_cols: HashSet<usize> = pivots
        .unit_cols
        .iter()
        .chain(&pivots.two_cols)
        .copied()
        .collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    // halved even subcode, filtered to words vanishing on unit pivots
    let mut odd_parts: Vec<Z4Vector> = Vec::new();
    'words: for w in code.words() {
        let mut half = Z4Vector::zeros(n);
        for j in 0..n {
            match w.get(j) {
                0 => {}
                2 => half.set(j, 1),
                _ => continue 'words,
            }
        }
        if pivots.unit_cols.iter().any(|&c| half.get(c) == 1) {
            continue;
        }
        odd_parts.push(half);
    }
    for a in &odd_parts {
        let total: u64 = 1 << free_cols.len();
        for mask in 0..total {
            let mut x = a.clone();
            for (idx, &col) in free_cols.iter().enumerate() {
                if mask >> idx & 1 == 1 {
                    x.set(col, x.get(col) + 2);
                }
            }
            visit(&x);
        }
    }
}

fn z4_invariant(code: &Z4LinearCode) -> Vec<u64> {
    let n = code.length();
    let mut inv: Vec<u64> = code
        .words()
        .iter()
        .map(|w| {
            let b = w.balance(n);
            ((b * b) as u64) << 32 | w.lee_weight(n) as u64
        })
        .collect();
    inv.sort_unstable();
    inv
}

fn dedupe_z4(candidates: Vec<Z4State>) -> Vec<Z4State> {
    let mut kept: Vec<Z4State> = Vec::new();
    let mut forms: Vec<Option<Vec<u8>>> = Vec::new();
    let mut invariants: Vec<Vec<u64>> = Vec::new();
    let mut word_sets: HashSet<Vec<Z4Vector>> = HashSet::new();
    for cand in candidates {
        if !word_sets.insert(cand.code.words().to_vec()) {
            continue;
        }
        let inv = z4_invariant(&cand.code);
        let mut cand_form: Option<Vec<u8>> = None;
        let mut duplicate = false;
        for i in 0..kept.len() {
            if invariants[i] != inv {
                continue;
            }
            let form = cand_form
                .get_or_insert_with(|| canon::canonical_form(&z4::gamma_digraph(&cand.code)))
                .clone();
            let kept_form = forms[i]
                .get_or_insert_with(|| canon::canonical_form(&z4::gamma_digraph(&kept[i].code)))
                .clone();
            if form == kept_form {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(cand);
            forms.push(cand_form);
            invariants.push(inv);
        }
    }
    kept
}

/// Classifies linear Z4-codes of length 2^m containing ZRM(1,m) that
/// satisfy the condition, by index-two generator augmentation from
/// ZRM(1,m). Intermediate codes are allowed to realize only a subset of
/// the final balance values (otherwise the search would not be complete),
/// but every reported code passes the full public checker.
pub fn classify_z4_extensions(
    condition: Z4Condition,
    m: usize,
    mut progress: impl FnMut(String),
) -> Result<Z4Levels> {
    if !(3..=4).contains(&m) {
        return Err(Error::UnsupportedFixture {
            m,
            supported: "3..=4",
        });
    }
    let n = 1usize << m;
    let n2 = (n * n) as u64;
    let zrm = z4::zrm_fixture(m)?;
    let mut levels: Z4Levels = BTreeMap::new();
    let mut frontier = vec![Z4State {
        code: zrm,
        mids: Vec::new(),
    }];
    let mut k = (m + 2) as u32;
    while !frontier.is_empty() {
        k += 1;
        let mut candidates: Vec<Z4State> = Vec::new();
        for state in &frontier {
            let words = state.code.words();
            enumerate_extension_reps(&state.code, |x| {
                if state.code.contains(x) {
                    return;
                }
                let mut mids = state.mids.clone();
                for c in words {
                    let v = x.add(c).balance(n);
                    let v2 = (v * v) as u64;
                    if v2 == n2 {
                        // +-x can only reach balance +-n at 0 or 2*1, both
                        // inside the code already
                        return;
                    }
                    if v == 0 {
                        if condition.allows_balanced() {
                            continue;
                        }
                        return;
                    }
                    if let Some(parity) = condition.parity() {
                        if v.unsigned_abs() % 2 != parity {
                            return;
                        }
                    }
                    if !mids.contains(&v2) {
                        if mids.len() >= condition.max_mid_values() {
                            return;
                        }
                        mids.push(v2);
                    }
                }
                candidates.push(Z4State {
                    code: state.code.extended_index_two(x),
                    mids,
                });
            });
        }
        progress(format!(
            "level 2^{k}: {} candidate codes before dedup",
            candidates.len()
        ));
        let reps = dedupe_z4(candidates);
        let solutions: Vec<Z4LinearCode> = reps
            .iter()
            .filter(|s| s.mids.len() == condition.max_mid_values() && condition.accepts(&s.code))
            .map(|s| s.code.clone())
            .collect();
        progress(format!(
            "level 2^{k}: {} inequivalent states, {} satisfy the condition",
            reps.len(),
            solutions.len()
        ));
        levels.insert(k, solutions);
        frontier = reps;
        if k > 2 * n as u32 {
            break; // |C| <= 4^n always; safety stop
        }
    }
    Ok(levels)
}

/// One audited fixture row.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// Re-derives every bundled table: family codes pass their condition
/// checkers with the stated minimum distances, distributions, beta^2 and
/// (d_H, d_L) columns; the witness code over the Paley order-24 matrix
/// yields 16 mutually quasi-unbiased matrices with parameters (9,64).
pub fn verify_fixture_tables() -> Result<Vec<FixtureCheck>> {
    let mut checks = Vec::new();
    let mut push = |name: String, ok: bool, detail: String| {
        checks.push(FixtureCheck { name, ok, detail });
    };

    // B8 families: F2 with alpha = 2, minimum distance 2.
    for entry in fixtures::b8_families() {
        let (code, blocks) = fixtures::b8_code_with_blocks(
            entry.name[3..4].parse().unwrap(),
            entry.name[5..6].parse().unwrap(),
        )?;
        let f = entry.rep_indices.len();
        let cond = binary::check_f2(&code, 2, f);
        let dh = binary::min_distance(&code)?;
        let psi_ok = binary::psi_matrices(&code, Some(&blocks)).is_ok();
        push(
            entry.name.clone(),
            cond && dh == entry.min_distance && psi_ok,
            format!("check_f2={cond} d_H={dh} (expected {})", entry.min_distance),
        );
    }

    // B16 families: d_H column determines the offset, n/2 - alpha = d_H.
    for entry in fixtures::b16_families() {
        let parts: Vec<&str> = entry.name[4..].split(',').collect();
        let (code, blocks) =
            fixtures::b16_code_with_blocks(parts[0].parse().unwrap(), parts[1].parse().unwrap())?;
        let f = entry.rep_indices.len();
        let dh = binary::min_distance(&code)?;
        let alpha = 8 - entry.min_distance;
        let cond = binary::check_f2(&code, alpha, f);
        let psi_ok = binary::psi_matrices(&code, Some(&blocks)).is_ok();
        push(
            entry.name.clone(),
            cond && dh == entry.min_distance && psi_ok,
            format!("check_f2(alpha={alpha})={cond} d_H={dh} (expected {})", entry.min_distance),
        );
    }

    // C24: (24,768,8) code, F2 with alpha = 4, 16 blocks, psi gives 16
    // mutually quasi-unbiased matrices with parameters (9,64).
    {
        let (code, blocks) = fixtures::c24_code_with_blocks()?;
        let cond = binary::check_f2(&code, 4, 16);
        let dh = binary::min_distance(&code)?;
        let ms = binary::psi_matrices(&code, Some(&blocks))?;
        let mutual = crate::matrix::check_mutual(
            &ms,
            &crate::matrix::PairClassification::QuasiUnbiased { l: 9, a: 64 },
        );
        push(
            "C24".into(),
            cond && dh == 8 && ms.len() == 16 && mutual,
            format!("check_f2={cond} d_H={dh} f={} mutual(9,64)={mutual}", ms.len()),
        );
    }

    // Weak fixture codes against the distribution table.
    let expected = fixtures::weak_distribution_table();
    let weak_codes: Vec<(String, BinaryCode)> = vec![
        ("D8,1".into(), fixtures::d_code_8()?),
        ("D12,1".into(), fixtures::d_code_12(1)?),
        ("D12,2".into(), fixtures::d_code_12(2)?),
        ("D16,0,1".into(), fixtures::d_code_16(1)?),
        ("D16,0,2".into(), fixtures::d_code_16(2)?),
        ("D20".into(), fixtures::d_code_20_paley()?),
        ("D24".into(), fixtures::d_code_24_paley()?),
        ("D32,1".into(), fixtures::d_code_32()?),
    ];
    for (name, code) in weak_codes {
        let dist = binary::distance_distribution(&code)?;
        let ints = dist.as_integers().unwrap_or_default();
        let want = &expected[&name];
        let n = code.length();
        let support = dist.support();
        let offsets: Vec<usize> = support
            .iter()
            .filter(|&&d| d != n && d != n / 2)
            .map(|&d| d.abs_diff(n / 2))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let weak_ok = offsets.len() == 2 && binary::check_weak_f2(&code, offsets[0], offsets[1]);
        push(
            name.clone(),
            ints == *want && weak_ok,
            format!("distribution match={} check_weak_f2={weak_ok}", ints == *want),
        );
    }

    // Z4 maximal families: beta^2, d_H, d_L columns.
    let expected = fixtures::z4_expected_table();
    for entry in fixtures::z4_maximal_families() {
        let code = fixtures::z4_family_code(&entry)?;
        let (want_b2, want_dh, want_dl) = expected[&entry.name];
        let beta = z4::check_z4_qub(&code);
        let dh = code.min_hamming_distance()?;
        let dl = code.min_lee_distance()?;
        let ok = beta.map(|b| b * b) == Some(want_b2) && dh == want_dh && dl == want_dl;
        push(
            entry.name.clone(),
            ok,
            format!(
                "beta^2={:?} (want {want_b2}) d_H={dh} (want {want_dh}) d_L={dl} (want {want_dl})",
                beta.map(|b| b * b)
            ),
        );
    }

    // Type II weak Z4 codes: (a^2,b^2) = (4,36), (d_H,d_L) = (8,10).
    for entry in fixtures::z4_weak2_families() {
        let code = fixtures::z4_family_code(&entry)?;
        let weak = z4::check_z4_weak(&code, WeakParity::Even);
        let dh = code.min_hamming_distance()?;
        let dl = code.min_lee_distance()?;
        let ok = weak == Some((2, 6)) && dh == 8 && dl == 10;
        push(
            entry.name.clone(),
            ok,
            format!("(a,b)={weak:?} (want (2,6)) (d_H,d_L)=({dh},{dl}) (want (8,10))"),
        );
    }

    // Gray images of the Type II codes satisfy the binary Type II check.
    {
        let entry = &fixtures::z4_weak2_families()[1];
        let code = fixtures::z4_family_code(entry)?;
        let img = z4::gray_map(&code);
        let ok = binary::check_weak2_f2(&img, 2, 6, img.len() / (2 * img.length()));
        push(
            format!("{} Gray image", entry.name),
            ok,
            format!("check_weak2_f2(2,6)={ok}"),
        );
    }

    Ok(checks)
}

/// A persisted classification run, for resumption and reporting.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: String,
    pub condition: String,
    pub levels: Vec<ManifestLevel>,
    pub complete: bool,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestLevel {
    pub level: usize,
    pub count: usize,
    /// Representative codes in the library text format.
    pub representatives: Vec<String>,
}

impl Manifest {
    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        Ok(std::fs::write(path, json)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("manifest: {e}"),
        })
    }
}

/// Runs a binary classification and persists a manifest; when a complete
/// manifest for the same seed and condition already exists at `path`, it
/// is returned without recomputation.
pub fn classify_binary_with_manifest(
    seed: &BinaryCode,
    condition: BinaryCondition,
    f_max: usize,
    path: Option<&std::path::Path>,
    progress: impl FnMut(String),
) -> Result<Manifest> {
    let seed_text = crate::io::format_code(seed);
    let cond_text = format!("{condition:?}");
    if let Some(p) = path {
        if let Ok(existing) = Manifest::read(p) {
            if existing.complete && existing.seed == seed_text && existing.condition == cond_text {
                return Ok(existing);
            }
        }
    }
    let start = Instant::now();
    let levels = classify_binary_extensions(seed, condition, f_max, progress)?;
    let manifest = Manifest {
        seed: seed_text,
        condition: cond_text,
        levels: levels
            .iter()
            .map(|(&f, codes)| ManifestLevel {
                level: f,
                count: codes.len(),
                representatives: codes.iter().map(|c| crate::io::format_code(&c.code)).collect(),
            })
            .collect(),
        complete: true,
        wall_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(p) = path {
        manifest.write(p)?;
    }
    Ok(manifest)
}

/// Z4 analogue of `classify_binary_with_manifest`.
pub fn classify_z4_with_manifest(
    condition: Z4Condition,
    m: usize,
    path: Option<&std::path::Path>,
    progress: impl FnMut(String),
) -> Result<Manifest> {
    let cond_text = format!("{condition:?}/m={m}");
    if let Some(p) = path {
        if let Ok(existing) = Manifest::read(p) {
            if existing.complete && existing.condition == cond_text {
                return Ok(existing);
            }
        }
    }
    let start = Instant::now();
    let levels = classify_z4_extensions(condition, m, progress)?;
    let manifest = Manifest {
        seed: format!("ZRM(1,{m})"),
        condition: cond_text,
        levels: levels
            .iter()
            .map(|(&k, codes)| ManifestLevel {
                level: k as usize,
                count: codes.len(),
                representatives: codes.iter().map(crate::io::format_z4_code).collect(),
            })
            .collect(),
        complete: true,
        wall_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(p) = path {
        manifest.write(p)?;
    }
    Ok(manifest)
}

/// Sanity sweep used by tests: every classified code respects the absolute
/// and linear programming bounds for its support set.
pub fn respects_bounds(code: &BinaryCode) -> Result<bool> {
    let dist = binary::distance_distribution(code)?;
    let mut s_set: Vec<u64> = dist.support().iter().map(|&d| d as u64).collect();
    if !s_set.contains(&(code.length() as u64)) {
        s_set.push(code.length() as u64);
    }
    let s = s_set.len() as u64;
    let absolute = bounds::absolute_bound(code.length() as u64, s)?;
    if (code.len() as u128) > absolute {
        return Ok(false);
    }
    if let Some(lp) = bounds::lp_bound(code.length() as u64, &s_set)? {
        if (code.len() as u128) > lp {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm13_f2_levels() {
        let seed = fixtures::rm_fixture(3).unwrap();
        let levels =
            classify_binary_extensions(&seed, BinaryCondition::F2 { alpha: 2 }, 9, |_| {})
                .unwrap();
        let counts: Vec<usize> = (2..=9).map(|f| levels[&f].len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn rm13_weak_level() {
        let seed = fixtures::rm_fixture(3).unwrap();
        let levels =
            classify_binary_extensions(&seed, BinaryCondition::Weak { a: 1, b: 3 }, 2, |_| {})
                .unwrap();
        assert_eq!(levels[&2].len(), 1);
    }

    #[test]
    fn paley_h12_f2_is_empty() {
        let seed = binary::code_of_hadamard(&fixtures::paley_h12()).unwrap();
        let levels =
            classify_binary_extensions(&seed, BinaryCondition::F2 { alpha: 2 }, 2, |_| {})
                .unwrap();
        assert_eq!(levels[&2].len(), 0);
    }

    #[test]
    fn classified_codes_respect_bounds() {
        let seed = fixtures::rm_fixture(3).unwrap();
        let levels =
            classify_binary_extensions(&seed, BinaryCondition::F2 { alpha: 2 }, 8, |_| {})
                .unwrap();
        for codes in levels.values() {
            for c in codes {
                assert!(respects_bounds(&c.code).unwrap());
            }
        }
    }

    #[test]
    fn fixture_audit_is_green() {
        let checks = verify_fixture_tables().unwrap();
        let failures: Vec<&FixtureCheck> = checks.iter().filter(|c| !c.ok).collect();
        assert!(failures.is_empty(), "failing fixtures: {failures:?}");
    }
}
