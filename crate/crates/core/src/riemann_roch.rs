//! Orbifold Riemann–Roch on a terminal threefold with a given basket.
//!
//! For a Weil divisor `D` the Euler characteristic is
//!
//! ```text
//! χ(D) = 1 + D(D-K)(2D-K)/12 + c₂·D/12 + Σ_Q c_Q(D)
//! ```
//!
//! where `c_Q` depends only on the point type and the local index of `D`
//! at `Q`. Intersection numbers are supplied by the caller; this module does
//! not model an intersection ring.
//!
//! Indexing convention: [`l_value`] takes `m` and sums `j = 0..m`, so the
//! correction for `χ(-nK)` is `l_value(basket, n + 1)`.

use crate::arith::{smallest_residue, Rational};
use crate::basket::{Basket, OrbifoldPoint};
use crate::error::{Error, Result};

/// A point together with the local index `i` of some divisor there
/// (`D ~ iK` near the point, `0 <= i < r`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalDatum {
    point: OrbifoldPoint,
    index: u32,
}

impl LocalDatum {
    pub fn new(point: OrbifoldPoint, index: u32) -> Result<Self> {
        if index >= point.r() {
            return Err(Error::Domain(format!("local index {index} out of range for r = {}", point.r())));
        }
        Ok(LocalDatum { point, index })
    }

    pub fn point(&self) -> OrbifoldPoint {
        self.point
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

/// `Σ_{j=0}^{count-1} \bar{jb}(r - \bar{jb}) / (2r)` with residues mod `r`.
fn residue_sum(b: i64, r: i64, count: i64) -> Rational {
    let mut num = 0i64;
    for j in 0..count {
        let x = (j * b).rem_euclid(r);
        num += x * (r - x);
    }
    Rational::new(num, 2 * r)
}

/// `c_Q(D)` evaluated on raw `(b, r, i)` without folding `b`.
///
/// Exposed so the `b ↔ r - b` symmetry can be checked on the formula itself.
pub fn local_term_raw(b: i64, r: i64, i: i64) -> Rational {
    let head = Rational::new(-i * (r * r - 1), 12 * r);
    head + residue_sum(b, r, i)
}

/// The local correction `c_Q(D)`.
pub fn local_term(datum: &LocalDatum) -> Rational {
    let p = datum.point;
    local_term_raw(p.b() as i64, p.r() as i64, datum.index as i64)
}

/// `l(m) = Σ_Q Σ_{j=0}^{m-1} \bar{jb}(r - \bar{jb}) / (2r)`.
///
/// `l(1) = 0`; `m = 0` is the empty sum.
pub fn l_value(basket: &Basket, m: u32) -> Rational {
    basket.points().iter().map(|p| residue_sum(p.b() as i64, p.r() as i64, m as i64)).sum()
}

/// `χ(-nK) = n(n+1)(2n+1)c₁³/12 + 2n + 1 - l(n+1)`.
#[allow(non_snake_case)]
pub fn chi_neg_nK(basket: &Basket, c13: &Rational, n: u32) -> Rational {
    let n64 = n as i64;
    let cubic = Rational::new(n64 * (n64 + 1) * (2 * n64 + 1), 12) * c13;
    cubic + Rational::integer(2 * n64 + 1) - l_value(basket, n + 1)
}

/// `h⁰(-K) = c₁³/2 + 3 - l(2)`. Integrality is the caller's check.
#[allow(non_snake_case)]
pub fn h0_neg_K(basket: &Basket, c13: &Rational) -> Rational {
    c13 * Rational::new(1, 2) + Rational::integer(3) - l_value(basket, 2)
}

/// `[χ(0), χ(-K), …, χ(-NK)]`, i.e. the first `N + 1` coefficients of the
/// anticanonical Hilbert series (vanishing gives `h⁰ = χ` in this range).
pub fn hilbert_coeffs(basket: &Basket, c13: &Rational, n: u32) -> Vec<Rational> {
    (0..=n).map(|m| chi_neg_nK(basket, c13, m)).collect()
}

/// `χ(D)` from its local data and the two global intersection numbers
/// `ddk = D(D-K)(2D-K)` and `c2d = c₂·D`.
pub fn chi_weil(locals: &[LocalDatum], ddk: &Rational, c2d: &Rational) -> Rational {
    let twelfth = Rational::new(1, 12);
    let corrections: Rational = locals.iter().map(local_term).sum();
    Rational::one() + ddk * &twelfth + c2d * &twelfth + corrections
}

/// Local data of `D = -nK` on every basket point: `i ≡ -n (mod r)`.
pub fn anticanonical_locals(basket: &Basket, n: u32) -> Vec<LocalDatum> {
    basket
        .points()
        .iter()
        .map(|&p| {
            let i = smallest_residue(-(n as i64), p.r() as i64).expect("r >= 2");
            LocalDatum { point: p, index: i as u32 }
        })
        .collect()
}
