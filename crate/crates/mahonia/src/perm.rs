//! Permutations in one-line notation: the universal value type.
//!
//! Provides the trivial symmetries (reverse, complement, inverse), inflation
//! and block decomposition around distinguished entries, and the descent /
//! extremum profiles that drive the statistic and bijection layers.
//!
//! Conventions: positions and values are one-indexed; the empty permutation
//! (`n = 0`) is a first-class value on which every statistic evaluates to 0.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// A permutation of `[n]` in one-line notation.
///
/// Ordering is lexicographic on the word, which is the order every
/// enumeration stream in this crate produces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, validating that the
    /// word is a bijection of `[n]`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("{values:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { values })
    }

    /// Builds a permutation without validating; used internally where the
    /// word is correct by construction.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    /// The empty permutation (`n = 0`).
    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    /// The identity permutation `12⋯n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Length `n`.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// True iff `n = 0`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the one-indexed position `i` (`1 ≤ i ≤ n`).
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// The underlying word (zero-indexed slice of one-indexed values).
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// One-indexed position of the value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        1 + self
            .values
            .iter()
            .position(|&x| x == v)
            .expect("value in [n]")
    }

    /// Reversal `σ(n) ⋯ σ(1)`.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Complement, sending each value `v` to `n + 1 − v`.
    pub fn complement(&self) -> Self {
        let n = self.n();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Group inverse: position and value swap roles.
    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.n()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation { values }
    }

    /// Order-reduction: the pattern of an arbitrary word of distinct
    /// integers (smallest letter becomes 1, and so on).
    pub fn pattern_of(word: &[usize]) -> Self {
        let mut sorted: Vec<usize> = word.to_vec();
        sorted.sort_unstable();
        let values = word
            .iter()
            .map(|v| 1 + sorted.binary_search(v).expect("distinct letters"))
            .collect();
        Permutation { values }
    }

    /// Number of inversions: pairs `i < j` with `σ(i) > σ(j)`.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                if self.values[i] > self.values[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Method form of [`descent_profile`].
    pub fn descent_profile(&self) -> DescentProfile {
        descent_profile(self)
    }

    /// Method form of [`extrema_profile`].
    pub fn extrema_profile(&self) -> ExtremaProfile {
        extrema_profile(self)
    }
}

/// Applies a composite word of trivial symmetries, e.g. `"rc"` or
/// `"inverse"`. Single-letter codes are `r` (reverse), `c` (complement),
/// `i` (inverse); letters apply left to right. The eight distinct composites
/// form the dihedral symmetry group of the permutation diagram.
pub fn apply_trivial(op: &str, sigma: &Permutation) -> Result<Permutation> {
    let word = match op {
        "reverse" => "r",
        "complement" => "c",
        "inverse" => "i",
        other => other,
    };
    let mut result = sigma.clone();
    for ch in word.chars() {
        result = match ch {
            'r' => result.reverse(),
            'c' => result.complement(),
            'i' => result.inverse(),
            _ => {
                return Err(Error::NotAPermutation(format!(
                    "unknown trivial-symmetry word {op:?}"
                )))
            }
        };
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Inflation and block decomposition
// ---------------------------------------------------------------------------

/// Inflation `τ[β_1, …, β_m]`: replaces each entry of the skeleton `τ` by a
/// block, blocks internally order-isomorphic to the inputs and externally
/// order-isomorphic to `τ`. Blocks may be empty.
pub fn inflate(tau: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    if blocks.len() != tau.n() {
        return Err(Error::ArityMismatch {
            skeleton: tau.n(),
            blocks: blocks.len(),
        });
    }
    // Offset of block i = total size of blocks whose skeleton letter is smaller.
    let sizes: Vec<usize> = blocks.iter().map(|b| b.n()).collect();
    let mut values = Vec::with_capacity(sizes.iter().sum());
    for (i, block) in blocks.iter().enumerate() {
        let offset: usize = (0..blocks.len())
            .filter(|&j| tau.values[j] < tau.values[i])
            .map(|j| sizes[j])
            .sum();
        values.extend(block.values.iter().map(|&v| v + offset));
    }
    Ok(Permutation::from_vec_unchecked(values))
}

/// Block-decomposition schemas, each inverting one inflation form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    /// `σ = 231[σ1, 1, σ2]`: everything before the maximum lies above
    /// everything after it.
    AroundMax,
    /// `σ = 213[1, σ1, σ2]`: after the first letter `k`, all values below
    /// `k` precede all values above `k`.
    AroundFirst,
    /// `σ = 132[σ1, σ2, 1]`: before the last letter `m`, all values below
    /// `m` precede all values above `m`.
    AroundLast,
}

/// Decomposes `σ` as an inflation of a three-letter skeleton with maximal
/// blocks. Returns the skeleton and the blocks (the distinguished entry
/// appears as a singleton block). A length-one permutation decomposes as
/// `(1, [])`.
///
/// Errors with the one-indexed position witnessing the schema violation if
/// `σ` does not fit the schema.
pub fn block_decompose(sigma: &Permutation, schema: Schema) -> Result<(Permutation, Vec<Permutation>)> {
    if sigma.is_empty() {
        return Err(Error::SchemaMismatch {
            position: 0,
            reason: "cannot decompose the empty permutation".into(),
        });
    }
    if sigma.n() == 1 {
        return Ok((Permutation::identity(1), Vec::new()));
    }
    let n = sigma.n();
    let one = Permutation::identity(1);
    match schema {
        Schema::AroundMax => {
            let pos = sigma.position_of(n);
            // Everything before the max must exceed everything after it.
            let before = &sigma.values[..pos - 1];
            let after = &sigma.values[pos..];
            if let Some(&amax) = after.iter().max() {
                if let Some((i, _)) = before.iter().enumerate().find(|&(_, &b)| b < amax) {
                    return Err(Error::SchemaMismatch {
                        position: i + 1,
                        reason: format!(
                            "entry {} before the maximum is smaller than entry {} after it",
                            before[i], amax
                        ),
                    });
                }
            }
            let skeleton = Permutation::from_vec_unchecked(vec![2, 3, 1]);
            Ok((
                skeleton,
                vec![Permutation::pattern_of(before), one, Permutation::pattern_of(after)],
            ))
        }
        Schema::AroundFirst => {
            let k = sigma.at(1);
            let rest = &sigma.values[1..];
            // All values below k must precede all values above k.
            let last_low = rest.iter().rposition(|&v| v < k);
            let first_high = rest.iter().position(|&v| v > k);
            if let (Some(lo), Some(hi)) = (last_low, first_high) {
                if hi < lo {
                    return Err(Error::SchemaMismatch {
                        position: hi + 2,
                        reason: format!(
                            "entry {} above the first letter precedes entry {} below it",
                            rest[hi], rest[lo]
                        ),
                    });
                }
            }
            let low: Vec<usize> = rest.iter().copied().filter(|&v| v < k).collect();
            let high: Vec<usize> = rest.iter().copied().filter(|&v| v > k).collect();
            let skeleton = Permutation::from_vec_unchecked(vec![2, 1, 3]);
            Ok((
                skeleton,
                vec![one, Permutation::pattern_of(&low), Permutation::pattern_of(&high)],
            ))
        }
        Schema::AroundLast => {
            let m = sigma.at(n);
            let rest = &sigma.values[..n - 1];
            let last_low = rest.iter().rposition(|&v| v < m);
            let first_high = rest.iter().position(|&v| v > m);
            if let (Some(lo), Some(hi)) = (last_low, first_high) {
                if hi < lo {
                    return Err(Error::SchemaMismatch {
                        position: hi + 1,
                        reason: format!(
                            "entry {} above the last letter precedes entry {} below it",
                            rest[hi], rest[lo]
                        ),
                    });
                }
            }
            let low: Vec<usize> = rest.iter().copied().filter(|&v| v < m).collect();
            let high: Vec<usize> = rest.iter().copied().filter(|&v| v > m).collect();
            let skeleton = Permutation::from_vec_unchecked(vec![1, 3, 2]);
            Ok((
                skeleton,
                vec![Permutation::pattern_of(&low), Permutation::pattern_of(&high), one],
            ))
        }
    }
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

/// Descent data of a permutation. Position sets are ascending; the bottom /
/// top sets are value sets, also stored ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentProfile {
    /// Descent positions `{i : σ(i) > σ(i+1)}`.
    pub des_set: Vec<usize>,
    /// Ascent positions `{i : σ(i) < σ(i+1)}`.
    pub asc_set: Vec<usize>,
    /// Descent bottoms `{σ(i+1) : i descent}`.
    pub db: Vec<usize>,
    /// Descent tops `{σ(i) : i descent}`.
    pub dt: Vec<usize>,
    /// Ascent bottoms `{σ(i) : i ascent}`.
    pub ab: Vec<usize>,
    /// Ascent tops `{σ(i+1) : i ascent}`.
    pub at: Vec<usize>,
    /// Major index: sum of descent positions.
    pub maj: usize,
    /// Number of descents.
    pub des: usize,
}

/// Computes the descent profile of `σ`.
pub fn descent_profile(sigma: &Permutation) -> DescentProfile {
    let v = sigma.values();
    let mut p = DescentProfile {
        des_set: Vec::new(),
        asc_set: Vec::new(),
        db: Vec::new(),
        dt: Vec::new(),
        ab: Vec::new(),
        at: Vec::new(),
        maj: 0,
        des: 0,
    };
    for i in 1..sigma.n() {
        if v[i - 1] > v[i] {
            p.des_set.push(i);
            p.dt.push(v[i - 1]);
            p.db.push(v[i]);
            p.maj += i;
        } else {
            p.asc_set.push(i);
            p.ab.push(v[i - 1]);
            p.at.push(v[i]);
        }
    }
    p.des = p.des_set.len();
    p.db.sort_unstable();
    p.dt.sort_unstable();
    p.ab.sort_unstable();
    p.at.sort_unstable();
    p
}

/// Extremum data of a permutation: left-to-right maxima / minima and the
/// interior peaks and valleys, all as value sets. `lrmax_set` is in
/// position order (which is ascending in value); `lrmin_set` is in position
/// order (descending in value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremaProfile {
    /// Left-to-right maxima values, in position order.
    pub lrmax_set: Vec<usize>,
    /// Left-to-right minima values, in position order.
    pub lrmin_set: Vec<usize>,
    /// Peak values `σ(i)` with `σ(i−1) < σ(i) > σ(i+1)` (interior positions).
    pub peaks: Vec<usize>,
    /// Valley values `σ(i)` with `σ(i−1) > σ(i) < σ(i+1)` (interior positions).
    pub valleys: Vec<usize>,
    /// Number of left-to-right maxima.
    pub lrmax: usize,
    /// Number of left-to-right minima.
    pub lrmin: usize,
}

/// Computes the extremum profile of `σ`.
pub fn extrema_profile(sigma: &Permutation) -> ExtremaProfile {
    let v = sigma.values();
    let mut p = ExtremaProfile {
        lrmax_set: Vec::new(),
        lrmin_set: Vec::new(),
        peaks: Vec::new(),
        valleys: Vec::new(),
        lrmax: 0,
        lrmin: 0,
    };
    let mut max_so_far = 0usize;
    let mut min_so_far = usize::MAX;
    for (idx, &x) in v.iter().enumerate() {
        if x > max_so_far {
            max_so_far = x;
            p.lrmax_set.push(x);
        }
        if x < min_so_far {
            min_so_far = x;
            p.lrmin_set.push(x);
        }
        if idx > 0 && idx + 1 < v.len() {
            if v[idx - 1] < x && x > v[idx + 1] {
                p.peaks.push(x);
            }
            if v[idx - 1] > x && x < v[idx + 1] {
                p.valleys.push(x);
            }
        }
    }
    p.lrmax = p.lrmax_set.len();
    p.lrmin = p.lrmin_set.len();
    p
}

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

impl fmt::Display for Permutation {
    /// One-line word: digits juxtaposed for `n ≤ 9`, comma-separated above.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.values.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the one-line word format produced by `Display`: either a run
    /// of digits (`"246153"`) or comma-separated values (`"10,9,…"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::NotAPermutation(s.to_string()))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::NotAPermutation(s.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    /// JSON form: the one-line word as an array of integers.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(values).map_err(|e| D::Error::custom(e.to_string()))
    }
}
