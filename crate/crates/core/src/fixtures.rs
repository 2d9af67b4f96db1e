//! Bundled data: witness matrices, circulant constructions, coset
//! representative tables, Reed-Muller generator matrices, and the Z4 code
//! families used by the classification and verification suites.
//!
//! Everything here is shipped as text assets in the library file formats
//! and parsed on demand; `audit` in the `classify` module re-derives every
//! stated invariant of these tables.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::binary::BinaryCode;
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::io;
use crate::matrix::{self, SignMatrix};
use crate::z4::{Z4LinearCode, Z4Vector};

macro_rules! asset {
    ($path:literal) => {
        include_str!(concat!("../assets/", $path))
    };
}

fn parse_fixture_matrix(text: &str) -> SignMatrix {
    io::parse_matrix(text).expect("bundled matrix asset parses")
}

/// The order-12 mate from the first witness pair; quasi-unbiased with
/// parameters (9,16) against `paley_h12`.
pub fn figure_k12() -> SignMatrix {
    parse_fixture_matrix(asset!("matrices/k12.txt"))
}

/// The order-24 mate giving a (4,144) pair with `had.24.1`.
pub fn figure_k24_1() -> SignMatrix {
    parse_fixture_matrix(asset!("matrices/k24_1.txt"))
}

/// The order-24 mate giving a weakly unbiased pair (sigma = {2,6}) with
/// `had.24.8`.
pub fn figure_k24_3() -> SignMatrix {
    parse_fixture_matrix(asset!("matrices/k24_3.txt"))
}

/// The order-24 mate giving a Type II pair (sigma = {4,8}) with `had.24.49`.
pub fn figure_k24_4() -> SignMatrix {
    parse_fixture_matrix(asset!("matrices/k24_4.txt"))
}

fn bordered(first_row: &str) -> SignMatrix {
    let signs = matrix::parse_signs(first_row).expect("bundled circulant row parses");
    matrix::circulant_bordered(&signs).expect("bundled circulant row has valid length")
}

/// The Paley Hadamard matrix of order 12 in bordered circulant form.
pub fn paley_h12() -> SignMatrix {
    bordered("-+-+++---+-")
}

/// The Paley Hadamard matrix of order 20 in bordered circulant form.
pub fn paley_h20() -> SignMatrix {
    bordered("-+--++++-+-+----++-")
}

/// The Paley Hadamard matrix of order 24 in bordered circulant form.
pub fn paley_h24() -> SignMatrix {
    bordered("-----+-+--++--++-+-++++")
}

/// An unbiased pair of Hadamard matrices of order 4.
pub fn unbiased_pair_order4() -> (SignMatrix, SignMatrix) {
    let h = SignMatrix::from_sign_rows(&["++++", "+-+-", "++--", "+--+"]).unwrap();
    let k = SignMatrix::from_sign_rows(&["+++-", "++-+", "+-++", "-+++"]).unwrap();
    (h, k)
}

/// Generator rows of the fixed RM(1,m) presentation, m in {3,4,5}.
pub fn rm_generators(m: usize) -> Result<Vec<BitVec>> {
    let text = match m {
        3 => asset!("binary/rm1_3.gens"),
        4 => asset!("binary/rm1_4.gens"),
        5 => asset!("binary/rm1_5.gens"),
        _ => {
            return Err(Error::UnsupportedFixture {
                m,
                supported: "3..=5",
            })
        }
    };
    let n = 1 << m;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut v = BitVec::zeros(n);
            for (j, c) in l.trim().chars().enumerate() {
                v.set(j, c == '1');
            }
            Ok(v)
        })
        .collect()
}

/// The first-order Reed-Muller code RM(1,m) as the span of the fixed
/// generator matrix: 2^{m+1} codewords of length 2^m.
pub fn rm_fixture(m: usize) -> Result<BinaryCode> {
    let gens = rm_generators(m)?;
    BinaryCode::span(1 << m, &gens)
}

/// The 16 complete representatives of Z2^8 / RM(1,3).
pub fn coset_reps_8() -> Vec<BitVec> {
    io::parse_support_list(asset!("binary/coset_reps_8.supp"), 8).unwrap()
}

/// The 20 listed representatives of Z2^16 / RM(1,4).
pub fn coset_reps_16() -> Vec<BitVec> {
    io::parse_support_list(asset!("binary/coset_reps_16.supp"), 16).unwrap()
}

/// One fixture-family entry: which representatives are unioned, and the
/// stated minimum distance.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub name: String,
    pub rep_indices: Vec<usize>,
    pub min_distance: usize,
}

fn parse_families(text: &str, default_dh: Option<usize>) -> Vec<FamilyEntry> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("family line");
            let (indices_part, dh) = match rest.split_once('|') {
                Some((idx, dh)) => (idx, dh.trim().parse().expect("d_H")),
                None => (rest, default_dh.expect("min distance column")),
            };
            FamilyEntry {
                name: name.trim().to_string(),
                rep_indices: indices_part
                    .split_whitespace()
                    .map(|t| t.parse().expect("index"))
                    .collect(),
                min_distance: dh,
            }
        })
        .collect()
}

/// The eight classified length-8 families; all have minimum distance 2.
pub fn b8_families() -> Vec<FamilyEntry> {
    parse_families(asset!("binary/b8_families.tbl"), Some(2))
}

/// The 21 classified length-16 families with their minimum distances.
pub fn b16_families() -> Vec<FamilyEntry> {
    parse_families(asset!("binary/b16_families.tbl"), None)
}

fn family_code(
    base: &BinaryCode,
    reps: &[BitVec],
    entry: &FamilyEntry,
) -> Result<(BinaryCode, Vec<Vec<usize>>)> {
    let leaders: Vec<BitVec> = entry
        .rep_indices
        .iter()
        .map(|&i| reps[i - 1].clone())
        .collect();
    let code = BinaryCode::union_of_cosets(base, &leaders)?;
    let blocks = (0..leaders.len())
        .map(|b| (b * base.len()..(b + 1) * base.len()).collect())
        .collect();
    Ok((code, blocks))
}

/// The classified `(8, 16(j+1))` code `B_{8,j,i}` with its block partition.
pub fn b8_code_with_blocks(j: usize, i: usize) -> Result<(BinaryCode, Vec<Vec<usize>>)> {
    let entry = b8_families()
        .into_iter()
        .find(|e| e.name == format!("B8,{j},{i}"))
        .ok_or(Error::UnsupportedFixture {
            m: j,
            supported: "B8 table",
        })?;
    family_code(&rm_fixture(3)?, &coset_reps_8(), &entry)
}

pub fn b8_code(j: usize, i: usize) -> Result<BinaryCode> {
    Ok(b8_code_with_blocks(j, i)?.0)
}

/// The classified `(16, 32(j+1))` code `B_{16,j,i}` with its block partition.
pub fn b16_code_with_blocks(j: usize, i: usize) -> Result<(BinaryCode, Vec<Vec<usize>>)> {
    let entry = b16_families()
        .into_iter()
        .find(|e| e.name == format!("B16,{j},{i}"))
        .ok_or(Error::UnsupportedFixture {
            m: j,
            supported: "B16 table",
        })?;
    family_code(&rm_fixture(4)?, &coset_reps_16(), &entry)
}

pub fn b16_code(j: usize, i: usize) -> Result<BinaryCode> {
    Ok(b16_code_with_blocks(j, i)?.0)
}

/// The (24,768,8) code built over the Paley order-24 Hadamard code from 16
/// coset leaders; yields 16 mutually quasi-unbiased matrices with
/// parameters (9,64).
pub fn c24_code_with_blocks() -> Result<(BinaryCode, Vec<Vec<usize>>)> {
    let base = crate::binary::code_of_hadamard(&paley_h24())?;
    let leaders = io::parse_support_list(asset!("binary/c24_cosets.supp"), 24)?;
    let code = BinaryCode::union_of_cosets(&base, &leaders)?;
    let blocks = (0..leaders.len())
        .map(|b| (b * base.len()..(b + 1) * base.len()).collect())
        .collect();
    Ok((code, blocks))
}

pub fn c24_code() -> Result<BinaryCode> {
    Ok(c24_code_with_blocks()?.0)
}

fn supp(n: usize, coords: &[usize]) -> BitVec {
    let mut v = BitVec::zeros(n);
    for &c in coords {
        v.set(c - 1, true);
    }
    v
}

/// The unique weak (8,32) code over RM(1,3).
pub fn d_code_8() -> Result<BinaryCode> {
    let mut gens = rm_generators(3)?;
    gens.push(supp(8, &[1]));
    BinaryCode::span(8, &gens)
}

/// The two weak (12,48) codes over the Paley order-12 Hadamard code.
pub fn d_code_12(i: usize) -> Result<BinaryCode> {
    let base = crate::binary::code_of_hadamard(&paley_h12())?;
    let u = match i {
        1 => supp(12, &[1]),
        2 => supp(12, &[1, 2, 3]),
        _ => {
            return Err(Error::UnsupportedFixture {
                m: i,
                supported: "1..=2",
            })
        }
    };
    BinaryCode::union_of_cosets(&base, &[BitVec::zeros(12), u])
}

/// The two weak (16,64) codes over RM(1,4).
pub fn d_code_16(i: usize) -> Result<BinaryCode> {
    let mut gens = rm_generators(4)?;
    gens.push(match i {
        1 => supp(16, &[1]),
        2 => supp(16, &[1, 2, 3, 5, 9]),
        _ => {
            return Err(Error::UnsupportedFixture {
                m: i,
                supported: "1..=2",
            })
        }
    });
    BinaryCode::span(16, &gens)
}

/// The weak (20,80) code over the Paley order-20 Hadamard code.
pub fn d_code_20_paley() -> Result<BinaryCode> {
    let base = crate::binary::code_of_hadamard(&paley_h20())?;
    BinaryCode::union_of_cosets(&base, &[BitVec::zeros(20), supp(20, &[1])])
}

/// The weak (24,96) code over the Paley order-24 Hadamard code.
pub fn d_code_24_paley() -> Result<BinaryCode> {
    let base = crate::binary::code_of_hadamard(&paley_h24())?;
    BinaryCode::union_of_cosets(&base, &[BitVec::zeros(24), supp(24, &[1])])
}

/// The weak [32,7] code over RM(1,5).
pub fn d_code_32() -> Result<BinaryCode> {
    let mut gens = rm_generators(5)?;
    gens.push(supp(32, &[4]));
    BinaryCode::span(32, &gens)
}

/// Expected distance distributions of the weak fixture codes, keyed by name.
pub fn weak_distribution_table() -> HashMap<String, Vec<i64>> {
    asset!("binary/weak_distributions.tbl")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("distribution line");
            let counts = rest
                .split_whitespace()
                .map(|t| t.parse().expect("count"))
                .collect();
            (name.trim().to_string(), counts)
        })
        .collect()
}

/// The bundled ZRM(1,4) generator matrix, exactly as fixed for the
/// classification tables.
pub fn zrm14_asset() -> Z4LinearCode {
    io::parse_z4_code(asset!("z4/zrm1_4.gen")).expect("bundled ZRM(1,4) parses")
}

/// One classified Z4 family entry: extension vectors over ZRM(1,4).
#[derive(Clone, Debug)]
pub struct Z4FamilyEntry {
    pub name: String,
    pub vectors: Vec<Z4Vector>,
}

fn parse_z4_families(text: &str) -> Vec<Z4FamilyEntry> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("z4 family line");
            let vectors = rest
                .split_whitespace()
                .map(|tok| {
                    let digits: Vec<u8> = tok.bytes().map(|b| b - b'0').collect();
                    Z4Vector::from_digits(&digits)
                })
                .collect();
            Z4FamilyEntry {
                name: name.trim().to_string(),
                vectors,
            }
        })
        .collect()
}

/// The 28 maximal classified length-16 Z4 codes (7 + 19 + 2).
pub fn z4_maximal_families() -> Vec<Z4FamilyEntry> {
    parse_z4_families(asset!("z4/c16_families.tbl"))
}

/// The Type II weak Z4 codes of length 16 (one of size 2^7, three of 2^8).
pub fn z4_weak2_families() -> Vec<Z4FamilyEntry> {
    parse_z4_families(asset!("z4/cprime16.tbl"))
}

/// Expected (beta^2, d_H, d_L) columns for the maximal families.
pub fn z4_expected_table() -> HashMap<String, (u64, usize, usize)> {
    asset!("z4/c16_expected.tbl")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("expected line");
            let nums: Vec<u64> = rest
                .split_whitespace()
                .map(|t| t.parse().expect("number"))
                .collect();
            (
                name.trim().to_string(),
                (nums[0], nums[1] as usize, nums[2] as usize),
            )
        })
        .collect()
}

/// Builds the code `<ZRM(1,4), vectors...>` of a family entry.
pub fn z4_family_code(entry: &Z4FamilyEntry) -> Result<Z4LinearCode> {
    let zrm = zrm14_asset();
    let mut gens = zrm.generators().to_vec();
    gens.extend(entry.vectors.iter().cloned());
    Z4LinearCode::from_generators(16, &gens)
}

static RM_CACHE: OnceLock<HashMap<usize, BinaryCode>> = OnceLock::new();

/// Cached RM(1,m) fixtures for the hot paths.
pub fn rm_fixture_cached(m: usize) -> &'static BinaryCode {
    let cache = RM_CACHE.get_or_init(|| {
        (3..=5)
            .map(|m| (m, rm_fixture(m).expect("bundled RM generators parse")))
            .collect()
    });
    &cache[&m]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z4::zrm_generators;

    #[test]
    fn bundled_matrices_are_hadamard() {
        for m in [figure_k12(), figure_k24_1(), figure_k24_3(), figure_k24_4()] {
            assert!(m.is_hadamard());
        }
        for m in [paley_h12(), paley_h20(), paley_h24()] {
            assert!(m.is_hadamard());
            assert!(crate::matrix::is_normalized(&m));
        }
    }

    #[test]
    fn zrm_asset_matches_generated_pattern() {
        let asset = zrm14_asset();
        let generated = Z4LinearCode::from_generators(16, &zrm_generators(4)).unwrap();
        assert_eq!(asset.words(), generated.words());
        assert_eq!(asset.generators(), &zrm_generators(4)[..]);
    }

    #[test]
    fn family_tables_have_expected_sizes() {
        assert_eq!(b8_families().len(), 8);
        assert_eq!(b16_families().len(), 21);
        assert_eq!(coset_reps_8().len(), 16);
        assert_eq!(coset_reps_16().len(), 20);
        assert_eq!(z4_maximal_families().len(), 28);
        assert_eq!(z4_weak2_families().len(), 4);
        assert_eq!(z4_expected_table().len(), 28);
    }

    #[test]
    fn c24_has_768_words() {
        let c = c24_code().unwrap();
        assert_eq!(c.len(), 768);
        assert_eq!(c.length(), 24);
    }

    #[test]
    fn coset_reps_8_are_a_transversal() {
        // 16 representatives, pairwise in distinct cosets of RM(1,3).
        let rm = rm_fixture(3).unwrap();
        let reps = coset_reps_8();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                assert!(!rm.contains(&reps[i].xor(&reps[j])), "reps {i} {j} collide");
            }
        }
    }
}
