//! Weierstrass curve invariants b2..b8, c4, c6, Δ over exact polynomial
//! coefficients, the two monomial curve families used by the weighted-ring
//! checks, and q-series cross-checks for the level-1 forms.

use alloc::{vec, vec::Vec};
use core::fmt;
use num::{One, Zero};

use crate::arith::{int, rat, Int, Rat};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeierstrassError {
    UnsupportedWeight(u32),
    BadPrecision,
}

impl fmt::Display for WeierstrassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeierstrassError::UnsupportedWeight(k) => {
                write!(f, "no Eisenstein normalization stored for weight {k}")
            }
            WeierstrassError::BadPrecision => write!(f, "precision must be at least 1"),
        }
    }
}

/// Coefficients a1, a2, a3, a4, a6 of a Weierstrass equation, as
/// polynomials in a common variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCoeffs {
    pub a1: Poly,
    pub a2: Poly,
    pub a3: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: Poly,
    pub b4: Poly,
    pub b6: Poly,
    pub b8: Poly,
    pub c4: Poly,
    pub c6: Poly,
    pub delta: Poly,
}

/// The standard Tate quantities; 4b8 = b2b6 − b4² and c4³ − c6² = 1728Δ
/// are asserted on every call.
pub fn curve_invariants(c: &WeierstrassCoeffs) -> CurveInvariants {
    let four = |p: &Poly| p.scale(&rat(4));
    let b2 = &c.a1.pow(2) + &four(&c.a2);
    let b4 = &c.a4.scale(&rat(2)) + &(&c.a1 * &c.a3);
    let b6 = &c.a3.pow(2) + &four(&c.a6);
    let b8 = &(&(&(&(&c.a1.pow(2) * &c.a6) + &(&c.a2 * &c.a6).scale(&rat(4)))
        - &(&(&c.a1 * &c.a3) * &c.a4))
        + &(&c.a2 * &c.a3.pow(2)))
        - &c.a4.pow(2);
    assert_eq!(
        b8.scale(&rat(4)),
        &(&b2 * &b6) - &b4.pow(2),
        "4b8 = b2b6 - b4^2"
    );
    let c4 = &b2.pow(2) - &b4.scale(&rat(24));
    let c6 = &(&(&b2 * &b4).scale(&rat(36)) - &b2.pow(3)) - &b6.scale(&rat(216));
    let delta = &(&(&(&(&b2 * &b4) * &b6).scale(&rat(9)) - &(&b2.pow(2) * &b8))
        - &b4.pow(3).scale(&rat(8)))
        - &b6.pow(2).scale(&rat(27));
    assert_eq!(
        &c4.pow(3) - &c6.pow(2),
        delta.scale(&rat(1728)),
        "c4^3 - c6^2 = 1728*delta"
    );
    CurveInvariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        delta,
    }
}

/// Fully generic coefficients: five independent variables a1, a2, a3, a4, a6.
pub fn generic_coeffs() -> WeierstrassCoeffs {
    let v = |i| Poly::var(5, i);
    WeierstrassCoeffs {
        a1: v(0),
        a2: v(1),
        a3: v(2),
        a4: v(3),
        a6: v(4),
    }
}

/// y² = x³ + q2·x² + q4·x in the two variables (q2, q4).
pub fn level2_coeffs() -> WeierstrassCoeffs {
    WeierstrassCoeffs {
        a1: Poly::zero(2),
        a2: Poly::var(2, 0),
        a3: Poly::zero(2),
        a4: Poly::var(2, 1),
        a6: Poly::zero(2),
    }
}

/// y² + a1·xy + a3·y = x³ in the two variables (a1, a3).
pub fn level3_coeffs() -> WeierstrassCoeffs {
    WeierstrassCoeffs {
        a1: Poly::var(2, 0),
        a2: Poly::zero(2),
        a3: Poly::var(2, 1),
        a4: Poly::zero(2),
        a6: Poly::zero(2),
    }
}

/// A truncated power series Σ c_n qⁿ, n < precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    c: Vec<Rat>,
}

impl QSeries {
    pub fn zero(prec: usize) -> Self {
        QSeries {
            c: vec![Rat::zero(); prec],
        }
    }

    pub fn constant(prec: usize, v: Rat) -> Self {
        let mut s = Self::zero(prec);
        s.c[0] = v;
        s
    }

    pub fn precision(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.c.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, n: usize, v: Rat) {
        self.c[n] = v;
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        let prec = self.c.len().min(o.c.len());
        let mut out = QSeries::zero(prec);
        for n in 0..prec {
            out.c[n] = &self.c[n] + &o.c[n];
        }
        out
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        let prec = self.c.len().min(o.c.len());
        let mut out = QSeries::zero(prec);
        for n in 0..prec {
            out.c[n] = &self.c[n] - &o.c[n];
        }
        out
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        let prec = self.c.len().min(o.c.len());
        let mut out = QSeries::zero(prec);
        for i in 0..prec {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..prec - i {
                if o.c[j].is_zero() {
                    continue;
                }
                out.c[i + j] += &self.c[i] * &o.c[j];
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut out = QSeries::constant(self.c.len(), Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> QSeries {
        let mut out = self.clone();
        for c in &mut out.c {
            *c *= s;
        }
        out
    }
}

fn divisor_power_sum(n: u64, k: u32) -> Int {
    let mut sum = Int::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            sum += Int::from(d).pow(k);
        }
    }
    sum
}

/// E₄ = 1 + 240Σσ₃(n)qⁿ or E₆ = 1 − 504Σσ₅(n)qⁿ.
pub fn eisenstein(k: u32, prec: usize) -> Result<QSeries, WeierstrassError> {
    if prec == 0 {
        return Err(WeierstrassError::BadPrecision);
    }
    let (mult, pw) = match k {
        4 => (int(240), 3),
        6 => (int(-504), 5),
        _ => return Err(WeierstrassError::UnsupportedWeight(k)),
    };
    let mut s = QSeries::constant(prec, Rat::one());
    for n in 1..prec {
        s.c[n] = Rat::from_integer(&mult * divisor_power_sum(n as u64, pw));
    }
    Ok(s)
}

/// q·Π(1−qⁿ)²⁴, asserted equal to (E₄³ − E₆²)/1728 to the same precision.
pub fn delta_qseries(prec: usize) -> Result<QSeries, WeierstrassError> {
    if prec == 0 {
        return Err(WeierstrassError::BadPrecision);
    }
    let mut prod = QSeries::constant(prec, Rat::one());
    for n in 1..prec {
        let mut factor = QSeries::zero(prec);
        factor.c[0] = Rat::one();
        factor.c[n] = -Rat::one();
        prod = prod.mul(&factor.pow(24));
    }
    let mut q = QSeries::zero(prec);
    if prec > 1 {
        q.c[1] = Rat::one();
    }
    let delta = q.mul(&prod);
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let combo = e4.pow(3).sub(&e6.pow(2)).scale(&(Rat::one() / rat(1728)));
    assert_eq!(delta, combo, "product formula vs Eisenstein combination");
    Ok(delta)
}
