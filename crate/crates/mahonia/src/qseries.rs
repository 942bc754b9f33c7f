//! Exact q-series algebra.
//!
//! Everything here is integer-exact: multivariate polynomials with signed
//! exponents ([`MultiPoly`]), MacMahon's q-Catalan numbers, the two
//! Carlitz–Riordan q-Catalan recursions, truncated continued fractions whose
//! level weights carry a factor of `z` ([`CfSpec`], [`cf_truncate`]), the
//! Pascal-matrix transform on integer matrices ([`binomial_transform`]), and
//! the four-variable generating-function recursion for pattern statistics
//! over 312-avoiding permutations ([`genfunc_312`]).
//!
//! Cross-checks against brute-force enumeration live in the tests and in the
//! verification layer; every identity is compared coefficient-for-coefficient
//! with tolerance zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pattern::VincularPattern;
use crate::qpoly::{q_binomial, q_int, QPoly};
use crate::stats::StatSpec;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// MultiPoly: sparse exact polynomials in q, t, u, v, z
// ---------------------------------------------------------------------------

/// The variables a [`MultiPoly`] may mention, in display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Marks the tracked statistic value (may be negative for signed combos).
    Q,
    /// Marks the descent count.
    T,
    /// Marks the first letter.
    U,
    /// Marks the last letter.
    V,
    /// Marks the length in series expansions.
    Z,
}

impl Var {
    /// All variables in exponent-tuple order.
    pub const ALL: [Var; 5] = [Var::Q, Var::T, Var::U, Var::V, Var::Z];

    fn index(self) -> usize {
        match self {
            Var::Q => 0,
            Var::T => 1,
            Var::U => 2,
            Var::V => 3,
            Var::Z => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::Z => "z",
        }
    }
}

/// Exponent tuple `(q, t, u, v, z)`; `q` exponents may be negative.
pub type Exponents = [i64; 5];

/// A sparse multivariate polynomial over `q, t, u, v, z` with exact integer
/// coefficients and (possibly negative) integer exponents.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, i64>,
}

impl MultiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    /// A constant polynomial.
    pub fn constant(c: i64) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; 5], c);
        p
    }

    /// The monomial `c · Π var^exp` for the listed variable powers.
    pub fn monomial(vars: &[(Var, i64)], c: i64) -> Self {
        let mut exps = [0i64; 5];
        for &(v, e) in vars {
            exps[v.index()] += e;
        }
        let mut p = MultiPoly::zero();
        p.add_term(exps, c);
        p
    }

    /// Adds `c` to the coefficient of the given exponent tuple.
    pub fn add_term(&mut self, exps: Exponents, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    /// True when there are no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of an exponent tuple (zero when absent).
    pub fn coeff(&self, exps: Exponents) -> i64 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    /// Iterates over `(exponents, coefficient)` pairs in tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i64)> {
        self.terms.iter()
    }

    /// Substitutes `var ← Π other^exp` (a coefficient-1 monomial, possibly
    /// the empty product, i.e. `var ← 1`). The substitution is exact: each
    /// term's exponent of `var` is distributed onto the replacement
    /// variables.
    pub fn substitute_monomial(&self, var: Var, replacement: &[(Var, i64)]) -> MultiPoly {
        let vi = var.index();
        let mut out = MultiPoly::zero();
        for (&exps, &c) in &self.terms {
            let e = exps[vi];
            let mut new = exps;
            new[vi] = 0;
            for &(rv, re) in replacement {
                new[rv.index()] += e * re;
            }
            out.add_term(new, c);
        }
        out
    }

    /// Restricts to the coefficient of `watched^power` in one variable,
    /// viewing the polynomial as a polynomial in `watched`.
    pub fn coefficient_of(&self, watched: Var, power: i64) -> MultiPoly {
        let wi = watched.index();
        let mut out = MultiPoly::zero();
        for (&exps, &c) in &self.terms {
            if exps[wi] == power {
                let mut new = exps;
                new[wi] = 0;
                out.add_term(new, c);
            }
        }
        out
    }

    /// Converts a polynomial that only mentions `q` with nonnegative
    /// exponents into a [`QPoly`]; `None` if any other variable appears or a
    /// `q` exponent is negative.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        let mut p = QPoly::zero();
        for (&exps, &c) in &self.terms {
            if exps[1..] != [0, 0, 0, 0] || exps[0] < 0 {
                return None;
            }
            p.add_term(&BigInt::from(c), exps[0] as usize);
        }
        Some(p)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&exps, &c) in &rhs.terms {
            out.add_term(exps, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&exps, &c) in &rhs.terms {
            out.add_term(exps, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &rhs.terms {
                let mut exps = ea;
                for (slot, e) in exps.iter_mut().zip(eb) {
                    *slot += e;
                }
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (&exps, &c) in &rhs.terms {
            self.add_term(exps, c);
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&exps, &c) in &self.terms {
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c.abs() != 1 || exps == [0; 5] {
                factors.push(c.abs().to_string());
            }
            for v in Var::ALL {
                let e = exps[v.index()];
                if e == 1 {
                    factors.push(v.symbol().to_string());
                } else if e != 0 {
                    factors.push(format!("{}^{}", v.symbol(), e));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let flat: Vec<(Exponents, i64)> = self.terms.iter().map(|(&e, &c)| (e, c)).collect();
        flat.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let flat = Vec::<(Exponents, i64)>::deserialize(deserializer)?;
        let mut p = MultiPoly::zero();
        for (exps, c) in flat {
            if c == 0 {
                return Err(D::Error::custom("explicit zero coefficient"));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// q-Catalan numbers
// ---------------------------------------------------------------------------

/// MacMahon's q-analogue of the Catalan numbers,
/// `binom_q(2n, n) / [n+1]_q`, computed by exact polynomial division.
///
/// Equals the distribution of `maj + mak` over the 231-avoiders of length
/// `n` (checked exhaustively in the verification suite).
pub fn macmahon_q_catalan(n: usize) -> QPoly {
    q_binomial(2 * n, n).div_exact(&q_int(n + 1))
}

/// Which Carlitz–Riordan recursion to unroll.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrVariant {
    /// `C_n(q) = Σ_k q^{(k+1)(n-k-1)} C_k C_{n-1-k}`: the inv distribution
    /// over 132-avoiders.
    C,
    /// `C̃_n(q) = Σ_k q^k C̃_k C̃_{n-1-k}`: the inv distribution over
    /// 231-avoiders.
    CTilde,
}

/// The Carlitz–Riordan q-Catalan number of index `n`.
///
/// Both variants share `C_0 = 1` and the convolution structure; they differ
/// only in the exponent placed on the `k`-th summand. Variant `C` satisfies
/// `C_1 = 1` and `C_2 = 1 + q`, anchoring it to the inv distribution over
/// `S_n(132)`.
pub fn carlitz_riordan(n: usize, variant: CrVariant) -> QPoly {
    let mut table: Vec<QPoly> = Vec::with_capacity(n + 1);
    table.push(QPoly::one());
    for m in 1..=n {
        let mut acc = QPoly::zero();
        for k in 0..m {
            let exponent = match variant {
                CrVariant::C => (k + 1) * (m - k - 1),
                CrVariant::CTilde => k,
            };
            acc += &(&table[k] * &table[m - 1 - k]).shifted(exponent);
        }
        table.push(acc);
    }
    table.pop().expect("table holds n + 1 entries")
}

// ---------------------------------------------------------------------------
// Truncated continued fractions
// ---------------------------------------------------------------------------

/// A continued fraction `1/(1 - w_0/(1 - w_1/(1 - …)))` described by its
/// level weights: level `k ≥ 0` carries the monomial `q^{a_k} z^{b_k}` with
/// `b_k ≥ 1` (so an order-`N` truncation is exact modulo `z^{N+1}`).
pub struct CfSpec {
    weight: Box<dyn Fn(usize) -> (usize, usize) + Send + Sync>,
}

impl CfSpec {
    /// Builds a spec from a level-weight function `k ↦ (q-exponent, z-exponent)`.
    pub fn new(weight: impl Fn(usize) -> (usize, usize) + Send + Sync + 'static) -> Self {
        CfSpec {
            weight: Box::new(weight),
        }
    }

    /// The weight monomial of level `k` as `(q-exponent, z-exponent)`.
    pub fn weight(&self, k: usize) -> (usize, usize) {
        (self.weight)(k)
    }
}

/// Level weights `z, qz, qz, q²z, q²z, …` (`q^{⌈k/2⌉} z`): the mad
/// distribution over 231-avoiders and the sist distribution over
/// 132-avoiders.
pub fn cfrak1() -> CfSpec {
    CfSpec::new(|k| ((k + 1) / 2, 1))
}

/// Level weights `z, qz, q²z, …` (`q^k z`): the mad distribution over
/// 312-avoiders and the sist distribution over 213-avoiders.
pub fn cfrak2() -> CfSpec {
    CfSpec::new(|k| (k, 1))
}

/// Expands the continued fraction to order `N`, returning the coefficients
/// of `z^0 … z^N` as exact polynomials in `q`.
///
/// Evaluation is bottom-up: the tail below level `N` is replaced by 1, and
/// each level inverts `1 - w_k·(inner)` as a geometric series modulo
/// `z^{N+1}`. Because every weight carries `z`, the discarded tail only
/// affects orders above `N`.
pub fn cf_truncate(spec: &CfSpec, order: usize) -> Vec<QPoly> {
    let len = order + 1;
    let mut tail = vec![QPoly::zero(); len];
    tail[0] = QPoly::one();
    for level in (0..=order).rev() {
        let (qe, ze) = spec.weight(level);
        assert!(
            ze >= 1,
            "continued-fraction weight at level {level} carries no z"
        );
        // g = w_level · tail, truncated to order N.
        let mut g = vec![QPoly::zero(); len];
        for i in 0..len.saturating_sub(ze) {
            g[i + ze] = tail[i].shifted(qe);
        }
        // tail ← 1/(1 - g) via h = 1 + g·h, exact since g has no constant term.
        let mut h = vec![QPoly::zero(); len];
        h[0] = QPoly::one();
        for m in 1..len {
            let mut acc = QPoly::zero();
            for i in 1..=m {
                if !g[i].is_zero() && !h[m - i].is_zero() {
                    acc += &(&g[i] * &h[m - i]);
                }
            }
            h[m] = acc;
        }
        tail = h;
    }
    tail
}

/// Renders a `z`-series with polynomial coefficients, e.g.
/// `1 + z + (1 + q)z^2`.
pub fn render_series(coeffs: &[QPoly]) -> String {
    let mut parts = Vec::new();
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = match n {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{n}"),
        };
        if n == 0 {
            parts.push(c.to_string());
        } else if *c == QPoly::one() {
            parts.push(z);
        } else {
            parts.push(format!("({c}){z}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Pascal-matrix transform
// ---------------------------------------------------------------------------

/// A dense square integer matrix (a finite truncation of an infinite
/// lower-triangular array).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    /// The `m × m` zero matrix.
    pub fn zero(m: usize) -> Self {
        IntMatrix {
            size: m,
            entries: vec![0; m * m],
        }
    }

    /// The `m × m` identity.
    pub fn identity(m: usize) -> Self {
        IntMatrix::from_fn(m, |i, j| i64::from(i == j))
    }

    /// Builds an `m × m` matrix from an entry function.
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut a = IntMatrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                a.set(i, j, f(i, j));
            }
        }
        a
    }

    /// Side length.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.size && j < self.size, "index out of range");
        self.entries[i * self.size + j]
    }

    /// Sets the entry at row `i`, column `j`.
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.size && j < self.size, "index out of range");
        self.entries[i * self.size + j] = v;
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.size).map(|i| self.get(i, j)).collect()
    }

    /// Exact matrix product (overflow-checked).
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.size, rhs.size, "size mismatch in matrix product");
        IntMatrix::from_fn(self.size, |i, j| {
            let mut acc: i128 = 0;
            for k in 0..self.size {
                acc += i128::from(self.get(i, k)) * i128::from(rhs.get(k, j));
            }
            i64::try_from(acc).expect("matrix product entry overflows i64")
        })
    }
}

/// Binomial coefficients up to row `m - 1`, as a lower-triangular matrix.
fn binomial_rows(m: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![0i64; m];
        row[0] = 1;
        for j in 1..=i {
            row[j] = rows[i - 1][j - 1] + rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// The `m × m` Pascal matrix `B = (binom(i, j))`.
pub fn pascal(m: usize) -> IntMatrix {
    let rows = binomial_rows(m);
    IntMatrix::from_fn(m, |i, j| rows[i][j])
}

/// The inverse Pascal matrix `B⁻¹ = ((-1)^{i-j} binom(i, j))`.
pub fn pascal_inv(m: usize) -> IntMatrix {
    let rows = binomial_rows(m);
    IntMatrix::from_fn(m, |i, j| {
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        sign * rows[i][j]
    })
}

/// Which direction to apply the Pascal-matrix transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformDir {
    /// Left-multiply by `B`.
    Forward,
    /// Left-multiply by `B⁻¹`.
    Inverse,
}

/// The finite binomial transform `B·A` or `B⁻¹·A` of an integer matrix.
///
/// Applied to the matrix whose column 0 holds the continued-fraction level
/// exponents `⌈k/2⌉` and column 1 holds all ones, the inverse transform
/// yields column 0 = `(0, 1, -1, 2, -4, 8, …)` — the alternating weights
/// `(-1)^{k-1} 2^{k-2}` through which `inc` is defined — and
/// column 1 = `(1, 0, 0, …)`.
pub fn binomial_transform(a: &IntMatrix, dir: TransformDir) -> IntMatrix {
    let b = match dir {
        TransformDir::Forward => pascal(a.size()),
        TransformDir::Inverse => pascal_inv(a.size()),
    };
    b.mul(a)
}

// ---------------------------------------------------------------------------
// Generating function over 312-avoiders
// ---------------------------------------------------------------------------

/// Display names of the coefficient slots of [`GenfuncAlpha`], in order.
///
/// The two remaining length-3 vincular shapes, `<31>2` and `3<12>`, contain
/// 312 and therefore never occur in a 312-avoider; statistics are reduced
/// into this basis by dropping them.
pub const GENFUNC_SLOTS: [&str; 11] = [
    "<12>3", "<13>2", "<21>3", "<23>1", "<32>1", "1<23>", "1<32>", "2<13>", "2<31>", "3<21>",
    "<21>",
];

/// A coefficient vector over the pattern slots of [`GENFUNC_SLOTS`]: the ten
/// length-3 vincular patterns that can occur in a 312-avoider, plus the
/// adjacent descent pattern `<21>` (slot 10, default 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfuncAlpha {
    coeffs: [i64; 11],
}

impl GenfuncAlpha {
    /// Wraps an explicit 11-slot coefficient vector.
    pub fn new(coeffs: [i64; 11]) -> Self {
        GenfuncAlpha { coeffs }
    }

    /// Accepts 10 coefficients (descent slot defaulting to 0) or all 11.
    pub fn from_slice(coeffs: &[i64]) -> Result<Self> {
        match coeffs.len() {
            10 => {
                let mut full = [0i64; 11];
                full[..10].copy_from_slice(coeffs);
                Ok(GenfuncAlpha::new(full))
            }
            11 => Ok(GenfuncAlpha::new(
                coeffs.try_into().expect("length checked"),
            )),
            other => Err(Error::InconsistentData(format!(
                "expected 10 or 11 slot coefficients, got {other}"
            ))),
        }
    }

    /// Reduces a pattern-linear statistic into the slot basis. Terms on
    /// `<31>2` and `3<12>` are dropped (they vanish on 312-avoiders); any
    /// other pattern shape is rejected.
    pub fn from_stat(spec: &StatSpec) -> Result<Self> {
        let StatSpec::Linear(map) = spec else {
            return Err(Error::StatParse {
                literal: "<builtin>".to_string(),
                reason: "only pattern-linear statistics reduce to slot coefficients".to_string(),
            });
        };
        let mut coeffs = [0i64; 11];
        for (pat, &c) in map {
            match slot_of(pat) {
                Some(SlotUse::Kept(i)) => coeffs[i] += c,
                Some(SlotUse::VanishesOn312) => {}
                None => {
                    return Err(Error::StatParse {
                        literal: pat.to_string(),
                        reason: "pattern has no slot in the 312-avoider basis".to_string(),
                    })
                }
            }
        }
        Ok(GenfuncAlpha::new(coeffs))
    }

    /// The full 11-slot coefficient vector.
    pub fn coeffs(&self) -> &[i64; 11] {
        &self.coeffs
    }

    /// True when some coefficient is negative (the statistic may then take
    /// negative values; distributions must be compared with signed
    /// exponents).
    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(|&c| c < 0)
    }
}

enum SlotUse {
    Kept(usize),
    VanishesOn312,
}

fn slot_of(pat: &VincularPattern) -> Option<SlotUse> {
    if pat.restrictions().iter().any(Option::is_some) {
        return None;
    }
    let x: Vec<usize> = pat.adjacency_set().iter().copied().collect();
    let word = pat.pi().values();
    match (word, x.as_slice()) {
        ([2, 1], [1]) => Some(SlotUse::Kept(10)),
        ([1, 2, 3], [1]) => Some(SlotUse::Kept(0)),
        ([1, 3, 2], [1]) => Some(SlotUse::Kept(1)),
        ([2, 1, 3], [1]) => Some(SlotUse::Kept(2)),
        ([2, 3, 1], [1]) => Some(SlotUse::Kept(3)),
        ([3, 2, 1], [1]) => Some(SlotUse::Kept(4)),
        ([1, 2, 3], [2]) => Some(SlotUse::Kept(5)),
        ([1, 3, 2], [2]) => Some(SlotUse::Kept(6)),
        ([2, 1, 3], [2]) => Some(SlotUse::Kept(7)),
        ([2, 3, 1], [2]) => Some(SlotUse::Kept(8)),
        ([3, 2, 1], [2]) => Some(SlotUse::Kept(9)),
        ([3, 1, 2], [1]) | ([3, 1, 2], [2]) => Some(SlotUse::VanishesOn312),
        _ => None,
    }
}

/// The exponent bookkeeping of one summand of the 312-avoider recursion:
/// length-`n` permutations split at the position of `n - k` letters … more
/// precisely, at the block decomposition `σ = σ₁ · m · σ₂` where `σ₁` holds
/// the `k` smallest letters, `m = k + 1` is placed between the blocks, and
/// `σ₂` holds the rest shifted down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenfuncCoeffs {
    /// Exponent on `q` multiplying `t` inside the left factor.
    pub a1: i64,
    /// Exponent on `q` multiplying `t` inside the right factor.
    pub a2: i64,
    /// Exponent on `q` substituted for `v` in the left factor.
    pub b1: i64,
    /// Exponent on `q` substituted for `u` in the right factor.
    pub b2: i64,
    /// Scalar `q` exponent of the summand.
    pub c: i64,
    /// 1 when the left block is nonempty (`k ≥ 1`).
    pub e1: i64,
    /// 1 when the right block is nonempty (`k ≤ n - 2`).
    pub e2: i64,
}

impl GenfuncCoeffs {
    /// Computes the summand exponents for splitting length `n` at `k`
    /// (left block size `k`, right block size `n - k - 1`).
    pub fn at(alpha: &GenfuncAlpha, n: usize, k: usize) -> GenfuncCoeffs {
        let a = alpha.coeffs();
        let n = n as i64;
        let k = k as i64;
        let e1 = i64::from(k >= 1);
        let e2 = i64::from(k <= n - 2);
        let a1 = a[4] - a[3] + (n - k - 1) * (a[2] - a[0]);
        let a2 = (k + 1) * (a[6] - a[5]);
        let b1 = a[8] - a[9];
        let b2 = a[1] - a[0];
        let c = a[0] * ((n - k - 1) + (n - k - 1) * (k - 1) * e1)
            + a[5] * (k + 1) * (n - k - 2) * e2
            - a[1] * e2
            + a[2] * e1 * (n - k - 1)
            + a[7] * k * e2
            + a[3] * (k - 1) * e1
            - a[8] * e1
            + a[9] * k
            + a[10] * e1;
        GenfuncCoeffs {
            a1,
            a2,
            b1,
            b2,
            c,
            e1,
            e2,
        }
    }
}

/// The generating function `F_n = Σ_σ q^{stat_α(σ)} t^{des σ} u^{σ(1)}
/// v^{σ(n)}` over the 312-avoiders of length `n`, computed by the
/// block-decomposition recursion (no enumeration).
///
/// Each 312-avoider of length `n ≥ 1` factors uniquely as `σ₁ · m · σ₂`
/// with `σ₁` a 312-avoider on `{1..k}`, `m = k + 1`, and `σ₂` a
/// 312-avoider on `{k+2..n}`; slot occurrences split into within-block
/// occurrences (handled by substituting `q`-powers for `t`, `u`, `v` in the
/// factors) plus a scalar exponent for the occurrences involving `m` or
/// straddling blocks. Negative `α` entries are legal; exponents are signed.
pub fn genfunc_312(alpha: &GenfuncAlpha, n: usize) -> MultiPoly {
    let mut memo: Vec<MultiPoly> = Vec::with_capacity(n + 1);
    memo.push(MultiPoly::one());
    for m in 1..=n {
        let mut acc = MultiPoly::zero();
        for k in 0..m {
            let co = GenfuncCoeffs::at(alpha, m, k);
            let left = memo[k]
                .substitute_monomial(Var::T, &[(Var::Q, co.a1), (Var::T, 1)])
                .substitute_monomial(Var::V, &[(Var::Q, co.b1)]);
            let right = memo[m - 1 - k]
                .substitute_monomial(Var::T, &[(Var::Q, co.a2), (Var::T, 1)])
                .substitute_monomial(Var::U, &[(Var::Q, co.b2)]);
            let v_exp = co.e2 * (k as i64 + 1) + (1 - co.e2);
            let middle = MultiPoly::monomial(
                &[(Var::Q, co.c), (Var::T, co.e1), (Var::U, 1), (Var::V, v_exp)],
                1,
            );
            acc += &(&(&middle * &left) * &right);
        }
        memo.push(acc);
    }
    memo.pop().expect("memo holds n + 1 entries")
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
