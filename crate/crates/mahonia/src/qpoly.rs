//! Exact univariate polynomials in `q` with arbitrary-precision integer
//! coefficients, plus the classical q-integers, q-factorials and Gaussian
//! binomials.
//!
//! Coefficients are dense (`coeffs[k]` is the coefficient of `q^k`) and the
//! vector never carries trailing zeros, so `Eq` is structural equality of
//! polynomials. All arithmetic is exact; `div_exact` panics if the division
//! leaves a remainder, because every division performed here is backed by a
//! divisibility theorem and a failure would mean a bug, not bad input.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

// ---------------------------------------------------------------------------
// QPoly
// ---------------------------------------------------------------------------

/// A polynomial in `q` with `BigInt` coefficients, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `c·q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_slice(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c·q^k` in place.
    pub fn add_term(&mut self, c: &BigInt, k: usize) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// The polynomial multiplied by `q^k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// The polynomial multiplied by the scalar `c`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Evaluation at `q = 1` (the total coefficient mass).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation at an arbitrary integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Truncation to degree `< deg_bound` (drops `q^k` for `k ≥ deg_bound`).
    pub fn truncated(&self, deg_bound: usize) -> Self {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .take(deg_bound)
                .cloned()
                .collect(),
        )
    }

    /// Exact division. Panics if `divisor` is zero or the remainder is
    /// nonzero: callers invoke this only where divisibility is a theorem.
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        assert!(!divisor.is_zero(), "exact division by the zero polynomial");
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len() - 1;
        let lead = &divisor.coeffs[d];
        assert!(
            rem.len() > d,
            "exact division failed: degree of dividend below divisor"
        );
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + d] / lead;
            let r = &rem[k + d] % lead;
            assert!(
                r.is_zero(),
                "exact division failed: leading coefficient does not divide"
            );
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        assert!(
            rem.iter().all(Zero::is_zero),
            "exact division failed: nonzero remainder"
        );
        QPoly::from_coeffs(quot)
    }

    /// LaTeX rendering with ascending powers, e.g. `1 + 2q + q^{3}`.
    pub fn latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k == 1 {
                out.push('q');
            } else if k > 1 {
                if latex {
                    out.push_str(&format!("q^{{{k}}}"));
                } else {
                    out.push_str(&format!("q^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

// ---------------------------------------------------------------------------
// Serialization: ascending coefficients, i64 where possible, decimal strings
// otherwise.
// ---------------------------------------------------------------------------

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coef {
            Int(i64),
            Big(String),
        }
        let raw = Vec::<Coef>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for c in raw {
            coeffs.push(match c {
                Coef::Int(v) => BigInt::from(v),
                Coef::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))?,
            });
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

// ---------------------------------------------------------------------------
// Classical q-analogues
// ---------------------------------------------------------------------------

/// The q-integer `[n]_q = 1 + q + … + q^{n-1}` (so `[0]_q = 0`).
pub fn q_int(n: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); n])
}

/// The q-factorial `[n]_q! = [1]_q [2]_q ⋯ [n]_q`.
pub fn q_factorial(n: usize) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=n {
        acc = &acc * &q_int(k);
    }
    acc
}

/// The Gaussian binomial coefficient, computed by exact division of
/// q-factorials.
pub fn q_binomial(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    q_factorial(n).div_exact(&(&q_factorial(k) * &q_factorial(n - k)))
}
