//! Feasible parameter enumeration for quasi-unbiased and weak-type pairs,
//! with the arithmetic nonexistence filters.
//!
//! Quasi-unbiased parameters of order n are exactly
//! `(l, a) = ((n/2 alpha)^2, 4 alpha^2)` for positive integers alpha with
//! `2 alpha | n` and `n <= 4 alpha^2`. Three arithmetic results rule out
//! some of them:
//!
//! * alpha odd and `n != 4 alpha^2` is impossible;
//! * specializing to `alpha = n/4`: no `(4, (n/2)^2)` pair when
//!   `n = 4 (mod 8)`, `n >= 12`;
//! * for `n = 4p`, p an odd prime >= 5, nothing but `(1, n^2)` survives.
//!
//! Weak-type parameters `(a, b)` with `a < b` solve
//! `a^2 n(a) + b^2 (n - n(a)) = n^2` with `0 < n(a) < n`; both values are
//! 2 mod 4 for weakly unbiased pairs and 0 mod 4 for Type II.

use serde::Serialize;

/// Why a feasible quasi-unbiased parameter pair cannot occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RuledOutReason {
    /// alpha odd with n != 4 alpha^2.
    AlphaParityProp,
    /// n = 4 (mod 8), n >= 12, parameters (4, (n/2)^2).
    Mod8Corollary,
    /// n = 4p with p an odd prime >= 5.
    FourPrimeCorollary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason")]
pub enum ParamStatus {
    Open,
    RuledOut(RuledOutReason),
}

/// One feasible quasi-unbiased parameter row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QubParams {
    pub l: u64,
    pub a: u64,
    pub alpha: u64,
    pub status: ParamStatus,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All feasible `(l, a)` for order n, ordered by decreasing l (increasing
/// alpha), each with its existence status.
pub fn feasible_qub_params(n: u64) -> Vec<QubParams> {
    let mut out = Vec::new();
    for alpha in 1..=n / 2 {
        if n % (2 * alpha) != 0 || n > 4 * alpha * alpha {
            continue;
        }
        let l = (n / (2 * alpha)) * (n / (2 * alpha));
        let a = 4 * alpha * alpha;
        let status = if l == 1 {
            ParamStatus::Open
        } else if n % 4 == 0 && is_odd_prime(n / 4) && n / 4 >= 5 {
            ParamStatus::RuledOut(RuledOutReason::FourPrimeCorollary)
        } else if l == 4 && n % 8 == 4 && n >= 12 {
            ParamStatus::RuledOut(RuledOutReason::Mod8Corollary)
        } else if alpha % 2 == 1 && n != 4 * alpha * alpha {
            ParamStatus::RuledOut(RuledOutReason::AlphaParityProp)
        } else {
            ParamStatus::Open
        };
        out.push(QubParams {
            l,
            a,
            alpha,
            status,
        });
    }
    out
}

/// One feasible weak-type parameter row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeakParams {
    pub a: u64,
    pub b: u64,
    pub n_a: u64,
}

/// All `(a, b, n(a))` solving the weak feasibility equation with
/// `a = b = modulus (mod 4)` (modulus 2 for weakly unbiased, 0 for
/// Type II), ordered by (a, b).
pub fn feasible_weak_params(n: u64, modulus: u64) -> Vec<WeakParams> {
    debug_assert!(modulus == 0 || modulus == 2);
    let mut out = Vec::new();
    let start = if modulus == 0 { 4 } else { 2 };
    let mut a = start;
    while a * a < n * n {
        let mut b = a + 4;
        while b < n {
            // a^2 n_a + b^2 (n - n_a) = n^2  =>  n_a = (b^2 n - n^2)/(b^2 - a^2)
            if b * b * n <= n * n {
                b += 4;
                continue;
            }
            let num = b * b * n - n * n;
            let den = b * b - a * a;
            if num % den == 0 {
                let n_a = num / den;
                if n_a > 0 && n_a < n {
                    out.push(WeakParams { a, b, n_a });
                }
            }
            b += 4;
        }
        a += 4;
    }
    out.sort_by_key(|p| (p.a, p.b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: u64) -> Vec<(u64, u64, ParamStatus)> {
        feasible_qub_params(n)
            .into_iter()
            .map(|p| (p.l, p.a, p.status))
            .collect()
    }

    #[test]
    fn qub_params_order_12() {
        assert_eq!(
            rows(12),
            vec![
                (9, 16, ParamStatus::Open),
                (4, 36, ParamStatus::RuledOut(RuledOutReason::Mod8Corollary)),
                (1, 144, ParamStatus::Open),
            ]
        );
    }

    #[test]
    fn qub_params_order_24() {
        assert_eq!(
            rows(24),
            vec![
                (16, 36, ParamStatus::RuledOut(RuledOutReason::AlphaParityProp)),
                (9, 64, ParamStatus::Open),
                (4, 144, ParamStatus::Open),
                (1, 576, ParamStatus::Open),
            ]
        );
    }

    #[test]
    fn qub_params_order_20() {
        assert_eq!(
            rows(20),
            vec![
                (4, 100, ParamStatus::RuledOut(RuledOutReason::FourPrimeCorollary)),
                (1, 400, ParamStatus::Open),
            ]
        );
    }

    #[test]
    fn qub_params_keep_square_alpha_odd_case_open() {
        // (36,36) at n=36 has alpha = 3 odd but n = 4 alpha^2.
        let r36 = rows(36);
        assert_eq!(r36[0], (36, 36, ParamStatus::Open));
        assert_eq!(
            r36[2],
            (4, 324, ParamStatus::RuledOut(RuledOutReason::Mod8Corollary))
        );
    }

    #[test]
    fn weak_params_examples() {
        let w16: Vec<(u64, u64, u64)> = feasible_weak_params(16, 2)
            .iter()
            .map(|p| (p.a, p.b, p.n_a))
            .collect();
        assert_eq!(w16, vec![(2, 6, 10), (2, 10, 14), (2, 14, 15)]);

        let w8: Vec<(u64, u64, u64)> = feasible_weak_params(8, 2)
            .iter()
            .map(|p| (p.a, p.b, p.n_a))
            .collect();
        assert_eq!(w8, vec![(2, 6, 7)]);

        let t48: Vec<(u64, u64, u64)> = feasible_weak_params(48, 0)
            .iter()
            .map(|p| (p.a, p.b, p.n_a))
            .collect();
        assert_eq!(t48, vec![(4, 8, 16), (4, 12, 36), (4, 20, 44), (4, 28, 46)]);
    }

    #[test]
    fn weak_identity_row_always_present() {
        for n in (8..=48).step_by(4) {
            let rows = feasible_weak_params(n, 2);
            assert!(rows.iter().any(|p| p.a == 2 && p.b == n - 2 && p.n_a == n - 1));
        }
    }
}
