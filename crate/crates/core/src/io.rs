//! Text formats for matrices and codes.
//!
//! * Matrix format: n lines of n characters from `+`, `-`, `0`, one matrix
//!   per file, optional trailing newline. This is also the format of the
//!   published Hadamard matrix library (`had.n.name` files), pointed at by
//!   the `HADAMARD_DATA` environment variable.
//! * Binary code format: header line `n M`, then M lines of n characters
//!   from `0`, `1`.
//! * Z4 code format: header line `n k`, then k generator lines of n digits
//!   from `0123`.
//! * Support-list variant: one vector per line as `supp: i j k ...` with
//!   1-indexed coordinates (an empty support is just `supp:`).

use std::path::Path;

use crate::binary::BinaryCode;
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::z4::{Z4LinearCode, Z4Vector};

/// Parses a matrix in the `+`/`-`/`0` line format; rejects ragged lines.
pub fn parse_matrix(text: &str) -> Result<SignMatrix> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty matrix file".into(),
        });
    }
    let n = lines.len();
    for (i, line) in lines.iter().enumerate() {
        if line.trim_end().chars().count() != n {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("ragged line: expected {n} columns"),
            });
        }
    }
    SignMatrix::from_sign_rows(&lines)
}

pub fn read_matrix(path: &Path) -> Result<SignMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &SignMatrix) -> Result<()> {
    Ok(std::fs::write(path, m.to_text())?)
}

/// Parses a binary code: `n M` header then M codeword lines.
pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty code file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(&mut parts, hline, "n")?;
    let m: usize = parse_field(&mut parts, hline, "M")?;
    let mut words = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines.next().ok_or(Error::Parse {
            line: hline + 1,
            msg: format!("expected {m} codeword lines"),
        })?;
        words.push(parse_bits(line.trim(), n, lno + 1)?);
    }
    BinaryCode::new(n, words)
}

pub fn read_code(path: &Path) -> Result<BinaryCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn format_code(code: &BinaryCode) -> String {
    let mut out = format!("{} {}\n", code.length(), code.len());
    for w in code.words() {
        out.push_str(&w.to_bit_string(code.length()));
        out.push('\n');
    }
    out
}

pub fn write_code(path: &Path, code: &BinaryCode) -> Result<()> {
    Ok(std::fs::write(path, format_code(code))?)
}

/// Parses a Z4 code: `n k` header then k generator lines of digits 0..3.
pub fn parse_z4_code(text: &str) -> Result<Z4LinearCode> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty z4 code file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(&mut parts, hline, "n")?;
    let k: usize = parse_field(&mut parts, hline, "k")?;
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        let (lno, line) = lines.next().ok_or(Error::Parse {
            line: hline + 1,
            msg: format!("expected {k} generator lines"),
        })?;
        gens.push(parse_z4_digits(line.trim(), n, lno + 1)?);
    }
    Z4LinearCode::from_generators(n, &gens)
}

pub fn read_z4_code(path: &Path) -> Result<Z4LinearCode> {
    parse_z4_code(&std::fs::read_to_string(path)?)
}

pub fn format_z4_code(code: &Z4LinearCode) -> String {
    let mut out = format!("{} {}\n", code.length(), code.generators().len());
    for g in code.generators() {
        out.push_str(&g.to_digit_string(code.length()));
        out.push('\n');
    }
    out
}

/// Parses one `supp: i j k` line into a bit vector of length `n`
/// (1-indexed coordinates).
pub fn parse_support_line(line: &str, n: usize, lno: usize) -> Result<BitVec> {
    let rest = line
        .trim()
        .strip_prefix("supp:")
        .ok_or_else(|| Error::Parse {
            line: lno,
            msg: "expected `supp:` prefix".into(),
        })?;
    let mut v = BitVec::zeros(n);
    for tok in rest.split_whitespace() {
        let idx: usize = tok.parse().map_err(|_| Error::Parse {
            line: lno,
            msg: format!("bad coordinate {tok:?}"),
        })?;
        if idx == 0 || idx > n {
            return Err(Error::Parse {
                line: lno,
                msg: format!("coordinate {idx} out of range 1..={n}"),
            });
        }
        v.set(idx - 1, true);
    }
    Ok(v)
}

/// Parses a whole support-list file into bit vectors of length `n`.
pub fn parse_support_list(text: &str, n: usize) -> Result<Vec<BitVec>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_support_line(l, n, i + 1))
        .collect()
}

fn parse_bits(line: &str, n: usize, lno: usize) -> Result<BitVec> {
    if line.chars().count() != n {
        return Err(Error::Parse {
            line: lno,
            msg: format!("expected {n} bits"),
        });
    }
    let mut v = BitVec::zeros(n);
    for (j, c) in line.chars().enumerate() {
        match c {
            '0' => {}
            '1' => v.set(j, true),
            other => {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("invalid bit {other:?}"),
                })
            }
        }
    }
    Ok(v)
}

fn parse_z4_digits(line: &str, n: usize, lno: usize) -> Result<Z4Vector> {
    if line.chars().count() != n {
        return Err(Error::Parse {
            line: lno,
            msg: format!("expected {n} digits"),
        });
    }
    let mut v = Z4Vector::zeros(n);
    for (j, c) in line.chars().enumerate() {
        match c {
            '0'..='3' => v.set(j, c as u8 - b'0'),
            other => {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("invalid digit {other:?}"),
                })
            }
        }
    }
    Ok(v)
}

fn parse_field<'a, I: Iterator<Item = &'a str>>(
    parts: &mut I,
    line: usize,
    name: &str,
) -> Result<usize> {
    parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: line + 1,
            msg: format!("missing or invalid header field {name}"),
        })
}

/// Resolves a matrix argument: a readable path wins, otherwise the name is
/// looked up in the `HADAMARD_DATA` directory.
pub fn resolve_matrix(arg: &str) -> Result<SignMatrix> {
    let p = Path::new(arg);
    if p.is_file() {
        return read_matrix(p);
    }
    if let Some(dir) = external_data_dir() {
        let candidate = dir.join(arg);
        if candidate.is_file() {
            return read_matrix(&candidate);
        }
    }
    Err(Error::Io(std::io::Error::new(
        std::io::ErrorKind::NotFound,
        format!("matrix {arg:?} not found (set HADAMARD_DATA for library names)"),
    )))
}

/// Directory of the external Hadamard matrix library, if configured.
pub fn external_data_dir() -> Option<std::path::PathBuf> {
    std::env::var_os("HADAMARD_DATA").map(std::path::PathBuf::from)
}

/// Loads `had.<order>.<name>` from the external library, if available.
pub fn external_matrix(name: &str) -> Option<SignMatrix> {
    let dir = external_data_dir()?;
    let path = dir.join(name);
    if path.is_file() {
        read_matrix(&path).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        let m = parse_matrix("+-\n++\n").unwrap();
        assert_eq!(m.to_text(), "+-\n++\n");
    }

    #[test]
    fn ragged_lines_rejected() {
        assert!(parse_matrix("+-\n+\n").is_err());
    }

    #[test]
    fn code_roundtrip() {
        let c = parse_code("4 2\n0000\n1111\n").unwrap();
        assert_eq!(format_code(&c), "4 2\n0000\n1111\n");
    }

    #[test]
    fn support_lines() {
        let v = parse_support_line("supp: 1 4", 8, 1).unwrap();
        assert_eq!(v.to_bit_string(8), "10010000");
        let empty = parse_support_line("supp:", 8, 1).unwrap();
        assert_eq!(empty.weight(), 0);
    }
}
