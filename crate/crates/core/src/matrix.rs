//! Sign matrices over {+1,-1,0}: Hadamard and weighing matrix verification,
//! pair classification, equivalence-preserving normalization, and the
//! explicit product constructions.
//!
//! A Hadamard matrix of order n is an n x n matrix with entries +-1 and
//! `H * H^T = n * I`. A weighing matrix of order n and weight k allows zero
//! entries and satisfies `W * W^T = k * I`. Pairs of Hadamard matrices are
//! classified by the absolute values occurring in `H * K^T`:
//!
//! * one value (or one value plus zero): quasi-unbiased with parameters
//!   `(l, a)` where every entry has absolute value 0 or sqrt(a) and
//!   `l * a = n^2`;
//! * exactly two values, both congruent to 2 mod 4: weakly unbiased;
//! * exactly two values, both congruent to 0 mod 4: Type II weakly unbiased.
//!
//! Entries are stored as two bit-planes per matrix (support and sign), so a
//! row inner product is a couple of XORs and popcounts.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Library-wide cap on matrix order; keeps all products inside i64.
pub const MAX_ORDER: usize = 256;

const BITS: usize = 64;

fn blocks_for(n: usize) -> usize {
    n.div_ceil(BITS)
}

/// Square matrix over {+1,-1,0}.
///
/// Two bit-planes per row: `support` marks nonzero entries, `sign` marks
/// negative entries. Sign bits are only ever set where the support bit is
/// set, so derived equality and hashing see a unique representation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignMatrix {
    order: usize,
    blocks: usize,
    support: Vec<u64>,
    sign: Vec<u64>,
}

impl SignMatrix {
    /// Builds a matrix from explicit entries; every entry must be in {+1,-1,0}.
    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                limit: MAX_ORDER,
            });
        }
        let blocks = blocks_for(n);
        let mut support = vec![0u64; n * blocks];
        let mut sign = vec![0u64; n * blocks];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                let (blk, bit) = (i * blocks + j / BITS, j % BITS);
                match e {
                    0 => {}
                    1 => support[blk] |= 1 << bit,
                    -1 => {
                        support[blk] |= 1 << bit;
                        sign[blk] |= 1 << bit;
                    }
                    v => {
                        return Err(Error::BadEntry {
                            row: i,
                            col: j,
                            value: v,
                        })
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            blocks,
            support,
            sign,
        })
    }

    /// Builds a matrix from rows of `+`, `-`, `0` characters.
    pub fn from_sign_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed: Vec<Vec<i32>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.as_ref()
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        '0' => Ok(0),
                        other => Err(Error::Parse {
                            line: i + 1,
                            msg: format!("invalid character {other:?}"),
                        }),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&parsed)
    }

    /// Builds a row-signed matrix directly from packed sign rows (all entries
    /// nonzero). `rows[i]` has bit j set when entry (i,j) is -1.
    pub(crate) fn from_full_sign_bits(order: usize, rows: &[Vec<u64>]) -> Self {
        let blocks = blocks_for(order);
        let mut support = vec![0u64; order * blocks];
        let mut sign = vec![0u64; order * blocks];
        for (i, row) in rows.iter().enumerate() {
            for b in 0..blocks {
                let mask = tail_mask(order, b);
                support[i * blocks + b] = mask;
                sign[i * blocks + b] = row[b] & mask;
            }
        }
        Self {
            order,
            blocks,
            support,
            sign,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at (i,j) as one of +1, -1, 0.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        let (blk, bit) = (i * self.blocks + j / BITS, j % BITS);
        if self.support[blk] >> bit & 1 == 0 {
            0
        } else if self.sign[blk] >> bit & 1 == 0 {
            1
        } else {
            -1
        }
    }

    fn row_planes(&self, i: usize) -> (&[u64], &[u64]) {
        let r = i * self.blocks..(i + 1) * self.blocks;
        (&self.support[r.clone()], &self.sign[r])
    }


    /// Standard inner product of row `i` of `self` with row `j` of `other`.
    pub fn row_inner(&self, i: usize, other: &SignMatrix, j: usize) -> i64 {
        let (sa, ga) = self.row_planes(i);
        let (sb, gb) = other.row_planes(j);
        let mut common = 0i64;
        let mut diff = 0i64;
        for b in 0..self.blocks.min(other.blocks) {
            let sup = sa[b] & sb[b];
            common += sup.count_ones() as i64;
            diff += ((ga[b] ^ gb[b]) & sup).count_ones() as i64;
        }
        common - 2 * diff
    }

    /// True iff all entries are +-1 and the rows are pairwise orthogonal.
    pub fn is_hadamard(&self) -> bool {
        let n = self.order;
        for b in 0..self.blocks {
            let mask = tail_mask(n, b);
            for i in 0..n {
                if self.support[i * self.blocks + b] != mask {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.row_inner(i, self, j) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `W * W^T = k * I` and every row and column has exactly `k`
    /// nonzero entries.
    pub fn is_weighing(&self, k: usize) -> bool {
        let n = self.order;
        let mut col_counts = vec![0usize; n];
        for i in 0..n {
            let (sup, _) = self.row_planes(i);
            let row_count: u32 = sup.iter().map(|w| w.count_ones()).sum();
            if row_count as usize != k {
                return false;
            }
            for j in 0..n {
                if self.get(i, j) != 0 {
                    col_counts[j] += 1;
                }
            }
        }
        if col_counts.iter().any(|&c| c != k) {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.row_inner(i, self, j) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The product `self * other^T` as a dense integer matrix.
    pub fn product_transpose(&self, other: &SignMatrix) -> Vec<Vec<i64>> {
        let n = self.order;
        (0..n)
            .map(|i| (0..n).map(|j| self.row_inner(i, other, j)).collect())
            .collect()
    }

    /// Negates row `i` in place.
    pub fn negate_row(&mut self, i: usize) {
        for b in 0..self.blocks {
            let idx = i * self.blocks + b;
            self.sign[idx] ^= self.support[idx];
        }
    }

    /// Negates column `j` in place.
    pub fn negate_col(&mut self, j: usize) {
        let (blk, bit) = (j / BITS, j % BITS);
        for i in 0..self.order {
            let idx = i * self.blocks + blk;
            self.sign[idx] ^= self.support[idx] & (1 << bit);
        }
    }

    /// Applies a row monomial action: new row i is `signs[i] *` old row `perm[i]`.
    pub fn permute_negate_rows(&self, perm: &[usize], signs: &[i32]) -> SignMatrix {
        let mut out = self.clone();
        for i in 0..self.order {
            let src = perm[i];
            let range_src = src * self.blocks..(src + 1) * self.blocks;
            let range_dst = i * self.blocks..(i + 1) * self.blocks;
            out.support[range_dst.clone()].copy_from_slice(&self.support[range_src.clone()]);
            out.sign[range_dst].copy_from_slice(&self.sign[range_src]);
            if signs[i] < 0 {
                out.negate_row(i);
            }
        }
        out
    }

    /// Applies a column monomial action: new column j is `signs[j] *` old column `perm[j]`.
    pub fn permute_negate_cols(&self, perm: &[usize], signs: &[i32]) -> SignMatrix {
        let n = self.order;
        let rows: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| signs[j] * self.get(i, perm[j])).collect())
            .collect();
        SignMatrix::from_rows(&rows).expect("monomial image stays a sign matrix")
    }

    /// Transpose.
    pub fn transpose(&self) -> SignMatrix {
        let n = self.order;
        let rows: Vec<Vec<i32>> = (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j)).collect())
            .collect();
        SignMatrix::from_rows(&rows).expect("transpose stays a sign matrix")
    }

    /// Kronecker product.
    pub fn kronecker(&self, other: &SignMatrix) -> Result<SignMatrix> {
        let (n, m) = (self.order, other.order);
        if n * m > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: n * m,
                limit: MAX_ORDER,
            });
        }
        let rows: Vec<Vec<i32>> = (0..n * m)
            .map(|r| {
                let (i, s) = (r / m, r % m);
                (0..n * m)
                    .map(|c| {
                        let (j, t) = (c / m, c % m);
                        self.get(i, j) * other.get(s, t)
                    })
                    .collect()
            })
            .collect();
        SignMatrix::from_rows(&rows)
    }

    /// Rows rendered in the `+`/`-`/`0` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.order * (self.order + 1));
        for i in 0..self.order {
            for j in 0..self.order {
                s.push(match self.get(i, j) {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignMatrix(order={})\n{}", self.order, self.to_text())
    }
}

fn tail_mask(n: usize, block: usize) -> u64 {
    let remaining = n - block * BITS;
    if remaining >= BITS {
        !0
    } else {
        (1u64 << remaining) - 1
    }
}

/// Outcome of classifying the product `H * K^T` of a pair of Hadamard
/// matrices by the absolute values of its entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum PairClassification {
    /// Inputs are not a pair of Hadamard matrices of equal order.
    NotHadamardPair,
    /// Every entry of `H * K^T` has absolute value 0 or sqrt(a); `l = n^2/a`
    /// is the weight of the scaled weighing matrix. Unbiased pairs appear
    /// here with `l = a = n`.
    QuasiUnbiased { l: u64, a: u64 },
    /// Exactly two absolute values {a,b}, both = 2 (mod 4); `n_a` entries of
    /// absolute value `a` in each row.
    WeaklyUnbiased { sigma: (u64, u64), n_a: u64 },
    /// Exactly two absolute values {a,b}, both = 0 (mod 4).
    TypeIiWeaklyUnbiased { sigma: (u64, u64), n_a: u64 },
    /// Anything else; carries the multiset of absolute entry values as
    /// (value, count) pairs for diagnostics.
    Irregular { values: Vec<(u64, u64)> },
}

impl PairClassification {
    pub fn is_quasi_unbiased(&self) -> bool {
        matches!(self, PairClassification::QuasiUnbiased { .. })
    }

    /// The two-element value set for the weak kinds.
    pub fn sigma(&self) -> Option<(u64, u64)> {
        match self {
            PairClassification::WeaklyUnbiased { sigma, .. }
            | PairClassification::TypeIiWeaklyUnbiased { sigma, .. } => Some(*sigma),
            _ => None,
        }
    }
}

/// Classifies the pair `(H, K)` from the absolute entry values of `H * K^T`.
pub fn classify_pair(h: &SignMatrix, k: &SignMatrix) -> PairClassification {
    if h.order() != k.order() || !h.is_hadamard() || !k.is_hadamard() {
        return PairClassification::NotHadamardPair;
    }
    let n = h.order() as u64;
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..h.order() {
        for j in 0..k.order() {
            let v = h.row_inner(i, k, j).unsigned_abs();
            *counts.entry(v).or_insert(0u64) += 1;
        }
    }
    let nonzero: Vec<u64> = counts.keys().copied().filter(|&v| v != 0).collect();
    let has_zero = counts.contains_key(&0);
    match nonzero.as_slice() {
        [c] => PairClassification::QuasiUnbiased {
            l: n * n / (c * c),
            a: c * c,
        },
        [a, b] if !has_zero => {
            let n_a = (0..h.order())
                .map(|j| h.row_inner(0, k, j).unsigned_abs())
                .filter(|&v| v == *a)
                .count() as u64;
            debug_assert_eq!(a * a * n_a + b * b * (n - n_a), n * n);
            if a % 4 == 2 && b % 4 == 2 {
                PairClassification::WeaklyUnbiased {
                    sigma: (*a, *b),
                    n_a,
                }
            } else if a % 4 == 0 && b % 4 == 0 {
                PairClassification::TypeIiWeaklyUnbiased {
                    sigma: (*a, *b),
                    n_a,
                }
            } else {
                PairClassification::Irregular {
                    values: counts.into_iter().collect(),
                }
            }
        }
        _ => PairClassification::Irregular {
            values: counts.into_iter().collect(),
        },
    }
}

/// True iff every unordered pair of distinct matrices classifies exactly as
/// `expected`.
pub fn check_mutual(ms: &[SignMatrix], expected: &PairClassification) -> bool {
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if classify_pair(&ms[i], &ms[j]) != *expected {
                return false;
            }
        }
    }
    true
}

/// Row/column negations bringing `H` to the form with all-ones first row and
/// first column.
pub fn normalize(h: &SignMatrix) -> Result<SignMatrix> {
    if !h.is_hadamard() {
        return Err(Error::NotHadamard { order: h.order() });
    }
    let mut out = h.clone();
    for j in 0..out.order() {
        if out.get(0, j) < 0 {
            out.negate_col(j);
        }
    }
    for i in 0..out.order() {
        if out.get(i, 0) < 0 {
            out.negate_row(i);
        }
    }
    Ok(out)
}

/// True iff the first row and first column are all ones.
pub fn is_normalized(h: &SignMatrix) -> bool {
    (0..h.order()).all(|j| h.get(0, j) == 1) && (0..h.order()).all(|i| h.get(i, 0) == 1)
}

/// Builds the bordered form with all-ones first row and column around the
/// circulant whose first row is `first_row`. Does not verify the result is
/// Hadamard.
pub fn circulant_bordered(first_row: &[i32]) -> Result<SignMatrix> {
    let m = first_row.len();
    let n = m + 1;
    if !(n == 2 || n % 4 == 0) {
        return Err(Error::OrderMismatch {
            context: "circulant border needs n = 2 or n = 0 mod 4",
            expected: n.next_multiple_of(4),
            got: n,
        });
    }
    let mut rows = vec![vec![1i32; n]];
    for i in 0..m {
        let mut row = vec![1i32];
        for j in 0..m {
            // circulant: row i is the first row cyclically shifted right by i
            row.push(first_row[(j + m - i) % m]);
        }
        rows.push(row);
    }
    SignMatrix::from_rows(&rows)
}

/// Parses a `+`/`-` pattern like `(-+-+++---+-)` into signs.
pub fn parse_signs(pattern: &str) -> Result<Vec<i32>> {
    pattern
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ' ' | ','))
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::Parse {
                line: 1,
                msg: format!("invalid sign character {other:?}"),
            }),
        })
        .collect()
}

fn mutual_parameters(ms: &[SignMatrix]) -> Result<Option<(u64, u64)>> {
    if ms.len() < 2 {
        return Ok(None);
    }
    let first = classify_pair(&ms[0], &ms[1]);
    let (l, a) = match first {
        PairClassification::QuasiUnbiased { l, a } => (l, a),
        _ => return Err(Error::NotMutuallyQuasiUnbiased { i: 0, j: 1 }),
    };
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if classify_pair(&ms[i], &ms[j]) != (PairClassification::QuasiUnbiased { l, a }) {
                return Err(Error::NotMutuallyQuasiUnbiased { i, j });
            }
        }
    }
    Ok(Some((l, a)))
}

/// Componentwise Kronecker products `H_i (x) K_i` of two mutually
/// quasi-unbiased families; the output is mutually quasi-unbiased with
/// parameters `(l*l', a*a')`.
pub fn kronecker_qub(hs: &[SignMatrix], ks: &[SignMatrix]) -> Result<Vec<SignMatrix>> {
    if hs.len() != ks.len() {
        return Err(Error::LengthMismatch {
            left: hs.len(),
            right: ks.len(),
        });
    }
    let ph = mutual_parameters(hs)?;
    let pk = mutual_parameters(ks)?;
    let out: Vec<SignMatrix> = hs
        .iter()
        .zip(ks)
        .map(|(h, k)| h.kronecker(k))
        .collect::<Result<_>>()?;
    if let (Some((lh, ah)), Some((lk, ak))) = (ph, pk) {
        let expected = PairClassification::QuasiUnbiased {
            l: lh * lk,
            a: ah * ak,
        };
        if !check_mutual(&out, &expected) {
            return Err(Error::NotMutuallyQuasiUnbiased { i: 0, j: 1 });
        }
    }
    Ok(out)
}

/// The order-8mn Hadamard matrix
/// `M(H,K) = 1/2 (H1+H2) (x) K1 + 1/2 (H1-H2) (x) K2`
/// built from column halves of `H` (order 4m) and row halves of `K` (order 4n).
pub fn m_construction(h: &SignMatrix, k: &SignMatrix) -> Result<SignMatrix> {
    let (nh, nk) = (h.order(), k.order());
    if nh % 2 != 0 {
        return Err(Error::OddSplit { dim: nh });
    }
    if nk % 2 != 0 {
        return Err(Error::OddSplit { dim: nk });
    }
    let (half_h, half_k) = (nh / 2, nk / 2);
    let order = nh * half_k;
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let rows: Vec<Vec<i32>> = (0..order)
        .map(|r| {
            let (i, s) = (r / half_k, r % half_k);
            (0..order)
                .map(|c| {
                    let (j, t) = (c / nk, c % nk);
                    if h.get(i, j) == h.get(i, j + half_h) {
                        h.get(i, j) * k.get(s, t)
                    } else {
                        h.get(i, j) * k.get(s + half_k, t)
                    }
                })
                .collect()
        })
        .collect();
    SignMatrix::from_rows(&rows)
}

/// Applies `m_construction` with a fixed `K` across a mutually quasi-unbiased
/// family with parameters `(l, a)`, and verifies the resulting family is
/// mutually quasi-unbiased with parameters `(l, 4*a*n^2)` where `K` has
/// order 4n.
pub fn m_construction_set(hs: &[SignMatrix], k: &SignMatrix) -> Result<Vec<SignMatrix>> {
    let params = mutual_parameters(hs)?;
    let out: Vec<SignMatrix> = hs
        .iter()
        .map(|h| m_construction(h, k))
        .collect::<Result<_>>()?;
    if let Some((l, a)) = params {
        let quarter = (k.order() / 4) as u64;
        let expected = PairClassification::QuasiUnbiased {
            l,
            a: 4 * a * quarter * quarter,
        };
        if !check_mutual(&out, &expected) {
            return Err(Error::NotMutuallyQuasiUnbiased { i: 0, j: 1 });
        }
    }
    Ok(out)
}

/// The mate `K` obtained by negating the first column of `H`; the pair
/// `(H, K)` is weakly unbiased with sigma = {2, n-2}.
pub fn negate_first_column(h: &SignMatrix) -> Result<SignMatrix> {
    if h.order() < 8 {
        return Err(Error::OrderTooSmall {
            min: 8,
            got: h.order(),
        });
    }
    if !h.is_hadamard() {
        return Err(Error::NotHadamard { order: h.order() });
    }
    let mut k = h.clone();
    k.negate_col(0);
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn h2() -> SignMatrix {
        SignMatrix::from_sign_rows(&["++", "+-"]).unwrap()
    }

    fn sylvester(order: usize) -> SignMatrix {
        let mut h = h2();
        while h.order() < order {
            h = h.kronecker(&h2()).unwrap();
        }
        h
    }

    #[test]
    fn order_two_is_hadamard() {
        assert!(h2().is_hadamard());
    }

    #[test]
    fn all_ones_is_not_hadamard() {
        let j4 = SignMatrix::from_rows(&vec![vec![1; 4]; 4]).unwrap();
        assert!(!j4.is_hadamard());
    }

    #[test]
    fn circulant_bordered_h12_is_hadamard() {
        let h12 = fixtures::paley_h12();
        assert!(h12.is_hadamard());
    }

    #[test]
    fn identity_is_weighing_weight_one() {
        let rows: Vec<Vec<i32>> = (0..5)
            .map(|i| (0..5).map(|j| i32::from(i == j)).collect())
            .collect();
        let id = SignMatrix::from_rows(&rows).unwrap();
        assert!(id.is_weighing(1));
    }

    #[test]
    fn hadamard_is_weighing_of_full_weight() {
        let h = sylvester(8);
        assert!(h.is_weighing(8));
        assert!(!h.is_weighing(4));
    }

    #[test]
    fn figure_pair_product_is_weighing_of_weight_nine() {
        let h12 = fixtures::paley_h12();
        let k12 = fixtures::figure_k12();
        let p = h12.product_transpose(&k12);
        let scaled: Vec<Vec<i32>> = p
            .iter()
            .map(|row| row.iter().map(|&v| (v / 4) as i32).collect())
            .collect();
        assert!(p.iter().flatten().all(|&v| v % 4 == 0));
        let w = SignMatrix::from_rows(&scaled).unwrap();
        assert!(w.is_weighing(9));
    }

    #[test]
    fn self_pair_is_quasi_unbiased_with_l_one() {
        let h = sylvester(8);
        assert_eq!(
            classify_pair(&h, &h),
            PairClassification::QuasiUnbiased { l: 1, a: 64 }
        );
    }

    #[test]
    fn figure_pair_classifies_as_9_16() {
        let h12 = fixtures::paley_h12();
        let k12 = fixtures::figure_k12();
        assert_eq!(
            classify_pair(&h12, &k12),
            PairClassification::QuasiUnbiased { l: 9, a: 16 }
        );
    }

    #[test]
    fn order_mismatch_is_not_a_pair() {
        assert_eq!(
            classify_pair(&h2(), &sylvester(4)),
            PairClassification::NotHadamardPair
        );
    }

    #[test]
    fn check_mutual_trivial_and_pairwise() {
        let h12 = fixtures::paley_h12();
        let k12 = fixtures::figure_k12();
        let expected = PairClassification::QuasiUnbiased { l: 9, a: 16 };
        assert!(check_mutual(std::slice::from_ref(&h12), &expected));
        assert!(check_mutual(&[h12, k12], &expected));
    }

    #[test]
    fn normalize_is_identity_on_normalized_input() {
        let h12 = fixtures::paley_h12();
        assert_eq!(normalize(&h12).unwrap(), h12);
    }

    #[test]
    fn normalize_undoes_a_row_negation() {
        let h12 = fixtures::paley_h12();
        let mut flipped = h12.clone();
        flipped.negate_row(0);
        assert_eq!(normalize(&flipped).unwrap(), h12);
    }

    #[test]
    fn normalized_figures_have_unit_borders() {
        for m in [fixtures::figure_k12(), fixtures::figure_k24_1()] {
            let n = normalize(&m).unwrap();
            assert!(is_normalized(&n));
            assert!(n.is_hadamard());
            // normalization only flips signs
            for i in 0..m.order() {
                for j in 0..m.order() {
                    assert_eq!(m.get(i, j).abs(), n.get(i, j).abs());
                }
            }
        }
    }

    #[test]
    fn kronecker_of_unbiased_order4_pairs() {
        let (h4, k4) = fixtures::unbiased_pair_order4();
        assert_eq!(
            classify_pair(&h4, &k4),
            PairClassification::QuasiUnbiased { l: 4, a: 4 }
        );
        let out = kronecker_qub(&[h4.clone(), k4.clone()], &[h4, k4]).unwrap();
        assert_eq!(out[0].order(), 16);
        assert!(check_mutual(
            &out,
            &PairClassification::QuasiUnbiased { l: 16, a: 16 }
        ));
    }

    #[test]
    fn kronecker_lifts_order12_pair_to_24() {
        let hs = vec![fixtures::paley_h12(), fixtures::figure_k12()];
        let ks = vec![h2(), h2()];
        let out = kronecker_qub(&hs, &ks).unwrap();
        assert!(check_mutual(
            &out,
            &PairClassification::QuasiUnbiased { l: 9, a: 64 }
        ));
    }

    #[test]
    fn kronecker_single_product() {
        let out = kronecker_qub(&[sylvester(4)], &[h2()]).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].is_hadamard());
    }

    #[test]
    fn m_construction_smallest_case() {
        let h4 = sylvester(4);
        let m = m_construction(&h4, &h4).unwrap();
        assert_eq!(m.order(), 8);
        assert!(m.is_hadamard());
    }

    #[test]
    fn m_construction_order_12_by_4() {
        let m = m_construction(&fixtures::paley_h12(), &sylvester(4)).unwrap();
        assert_eq!(m.order(), 24);
        assert!(m.is_hadamard());
    }

    #[test]
    fn m_construction_set_parameters() {
        // Order-8 family with parameters (4,16) from the unbiased order-4 pair.
        let (h4, k4) = fixtures::unbiased_pair_order4();
        let hs = kronecker_qub(&[h4.clone(), k4.clone()], &[h2(), h2()]).unwrap();
        assert!(check_mutual(
            &hs,
            &PairClassification::QuasiUnbiased { l: 4, a: 16 }
        ));
        let out = m_construction_set(&hs, &h4).unwrap();
        assert_eq!(out[0].order(), 16);
        assert!(check_mutual(
            &out,
            &PairClassification::QuasiUnbiased { l: 4, a: 64 }
        ));
    }

    #[test]
    fn negate_first_column_gives_weak_pair() {
        let h = sylvester(8);
        let k = negate_first_column(&h).unwrap();
        assert_eq!(
            classify_pair(&h, &k),
            PairClassification::WeaklyUnbiased {
                sigma: (2, 6),
                n_a: 7
            }
        );
        // involution
        assert_eq!(negate_first_column(&k).unwrap(), h);
    }

    #[test]
    fn negate_first_column_rejects_small_orders() {
        assert!(negate_first_column(&sylvester(4)).is_err());
    }

    #[test]
    fn classification_is_symmetric_in_arguments() {
        let h12 = fixtures::paley_h12();
        let k12 = fixtures::figure_k12();
        assert_eq!(classify_pair(&h12, &k12), classify_pair(&k12, &h12));
        let h24 = fixtures::paley_h24();
        let k = negate_first_column(&h24).unwrap();
        assert_eq!(classify_pair(&h24, &k), classify_pair(&k, &h24));
    }

    #[test]
    fn paley_h24_negated_column_sigma() {
        let h = fixtures::paley_h24();
        let k = negate_first_column(&h).unwrap();
        assert_eq!(
            classify_pair(&h, &k),
            PairClassification::WeaklyUnbiased {
                sigma: (2, 22),
                n_a: 23
            }
        );
    }

    #[test]
    fn irregular_pair_reports_value_multiset() {
        // Sylvester H8 against a row-permuted variant built to break regularity.
        let h = sylvester(8);
        let perm: Vec<usize> = vec![1, 0, 2, 3, 4, 5, 6, 7];
        let signs = vec![1; 8];
        let g = h.permute_negate_rows(&perm, &signs);
        match classify_pair(&h, &g) {
            PairClassification::QuasiUnbiased { .. } => {}
            PairClassification::Irregular { values } => {
                let total: u64 = values.iter().map(|&(_, c)| c).sum();
                assert_eq!(total, 64);
            }
            other => panic!("unexpected classification {other:?}"),
        }
    }
}
