//! Dyck paths: step-level statistics and the lattice-path bijections that
//! transport permutation statistics.
//!
//! A path of semilength `n` is a word of `n` up-steps `U` and `n` down-steps
//! `D` never going below the ground line. The module provides
//!
//! * [`path_statistics`]: peak/valley counts, tunnel sums, step masses,
//!   half-height sums and the halved area in one pass;
//! * [`delta`]/[`delta_inv`]: the three recursive standardizations of the
//!   one-pattern Catalan classes (by first letter, by last letter, by
//!   maximum position);
//! * [`gamma`]/[`gamma_inv`]: the weak-excedance staircase coding of
//!   321-avoiders;
//! * [`delta_pair`], [`psi`], [`phi_path`], [`theta`], [`lambda`] and their
//!   inverses: the path-level maps whose composites carry `spea` to `stun`
//!   to step masses to half-height sums;
//! * [`omega_stump`]: the descent/inverse-descent interleaving of
//!   231-avoiders.
//!
//! Inverses of the recursive maps are constructive (first-return,
//! last-return and level parses); `omega_stump_inv` inverts through a
//! per-semilength lookup table.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pattern::{avoids, enumerate_avoiders, VincularPattern};
use crate::perm::Permutation;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// DyckPath
// ---------------------------------------------------------------------------

/// One lattice step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
}

/// A Dyck path, stored as its step word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates the ballot property: the height stays nonnegative and ends
    /// at zero.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut h = 0i64;
        for &s in &steps {
            h += if s == Step::U { 1 } else { -1 };
            if h < 0 {
                return Err(Error::InvalidPath(format!(
                    "path dips below ground: {}",
                    render_steps(&steps)
                )));
            }
        }
        if h != 0 {
            return Err(Error::InvalidPath(format!(
                "path does not return to ground: {}",
                render_steps(&steps)
            )));
        }
        Ok(DyckPath { steps })
    }

    /// Builds a path from a word that is known to be balanced (checked in
    /// debug builds).
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(DyckPath::new(steps.clone()).is_ok());
        DyckPath { steps }
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of up-steps.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights before/after each step: `heights()[i]` is the height after
    /// `i` steps, so the vector has length `2n + 1` and starts and ends at 0.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        h.push(0usize);
        for &s in &self.steps {
            let last = *h.last().expect("non-empty");
            h.push(if s == Step::U { last + 1 } else { last - 1 });
        }
        h
    }

    /// For each step index, the index of the matching partner (`U`
    /// matched with the `D` that first returns to the level below it).
    pub fn matching(&self) -> Vec<usize> {
        let mut partner = vec![0usize; self.steps.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (i, &s) in self.steps.iter().enumerate() {
            if s == Step::U {
                stack.push(i);
            } else {
                let u = stack.pop().expect("valid Dyck path");
                partner[u] = i;
                partner[i] = u;
            }
        }
        partner
    }

    /// Splits the path into the interiors of its ground-level arches:
    /// `P = U A_1 D U A_2 D ⋯ U A_m D` yields `[A_1, …, A_m]`.
    pub fn arch_interiors(&self) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut rest: &[Step] = &self.steps;
        while !rest.is_empty() {
            let mut h = 0i64;
            let mut end = 0;
            for (i, &s) in rest.iter().enumerate() {
                h += if s == Step::U { 1 } else { -1 };
                if h == 0 {
                    end = i + 1;
                    break;
                }
            }
            out.push(DyckPath::from_steps_unchecked(rest[1..end - 1].to_vec()));
            rest = &rest[end..];
        }
        out
    }

    /// Maximal run pairs `(a_i, b_i)` with `P = U^{a_1} D^{b_1} ⋯ U^{a_s}
    /// D^{b_s}`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        let n = self.steps.len();
        while i < n {
            let mut a = 0;
            while i < n && self.steps[i] == Step::U {
                a += 1;
                i += 1;
            }
            let mut b = 0;
            while i < n && self.steps[i] == Step::D {
                b += 1;
                i += 1;
            }
            out.push((a, b));
        }
        out
    }
}

fn render_steps(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|&s| if s == Step::U { 'U' } else { 'D' })
        .collect()
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_steps(&self.steps))
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&render_steps(&self.steps))
        }
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut steps = Vec::with_capacity(text.len());
        for c in text.trim().chars() {
            match c {
                'U' | 'u' => steps.push(Step::U),
                'D' | 'd' => steps.push(Step::D),
                _ => {
                    return Err(Error::InvalidPath(format!(
                        "unexpected character {c:?} in path word"
                    )))
                }
            }
        }
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// All Dyck paths of semilength `n`, in lexicographic step order with
/// `U < D`.
pub fn enumerate_dyck(n: usize) -> Vec<DyckPath> {
    let mut out = Vec::new();
    let mut word: Vec<Step> = Vec::with_capacity(2 * n);
    fn rec(n: usize, ups: usize, downs: usize, word: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if word.len() == 2 * n {
            out.push(DyckPath::from_steps_unchecked(word.clone()));
            return;
        }
        if ups < n {
            word.push(Step::U);
            rec(n, ups + 1, downs, word, out);
            word.pop();
        }
        if downs < ups {
            word.push(Step::D);
            rec(n, ups, downs + 1, word, out);
            word.pop();
        }
    }
    rec(n, 0, 0, &mut word, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Path statistics
// ---------------------------------------------------------------------------

/// The step-level statistics of one path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    /// Number of double rises `UU`.
    pub dr: i64,
    /// Number of double descents `DD`.
    pub dd: i64,
    /// Number of peaks `UD`.
    pub npea: i64,
    /// Number of valleys `DU`.
    pub nval: i64,
    /// Sum of peak heights minus one over all peaks.
    pub spea: i64,
    /// Sum of valley-tunnel half-lengths: a valley's `D` at index `v`
    /// matched with the `U` at index `u` contributes `(v - u + 1) / 2`.
    pub stun: i64,
    /// Up-step mass: an up-step directly below another up-step contributes
    /// half the gap between their matching down-steps.
    pub umass: i64,
    /// Down-step mass, the mirror of `umass` on double descents.
    pub dmass: i64,
    /// Sum over up-steps of `⌈h/2⌉` with `h` the height of the step's lower
    /// endpoint.
    pub sht: i64,
    /// Sum over down-steps of `⌈h/2⌉` with `h` the height of the step's
    /// lower endpoint.
    pub sdowns: i64,
    /// Number of full cells between the path and the sawtooth, i.e.
    /// `Σ_x ⌊y_x/2⌋` over interior lattice abscissae.
    pub area: i64,
    /// Sum over valleys of the number of down-steps up to and including the
    /// valley's down-step.
    pub beta: i64,
}

/// Computes all step statistics of `path`.
pub fn path_statistics(path: &DyckPath) -> PathStats {
    let steps = path.steps();
    let h = path.heights();
    let partner = path.matching();
    let len = steps.len();
    let mut s = PathStats {
        dr: 0,
        dd: 0,
        npea: 0,
        nval: 0,
        spea: 0,
        stun: 0,
        umass: 0,
        dmass: 0,
        sht: 0,
        sdowns: 0,
        area: 0,
        beta: 0,
    };
    let mut downs_seen = 0i64;
    for i in 0..len {
        match steps[i] {
            Step::U => {
                s.sht += ((h[i] + 1) / 2) as i64;
                if i + 1 < len && steps[i + 1] == Step::U {
                    s.dr += 1;
                    s.umass += ((partner[i] - partner[i + 1] - 1) / 2) as i64;
                }
                if i + 1 < len && steps[i + 1] == Step::D {
                    s.npea += 1;
                    s.spea += h[i + 1] as i64 - 1;
                }
            }
            Step::D => {
                downs_seen += 1;
                s.sdowns += ((h[i + 1] + 1) / 2) as i64;
                if i > 0 && steps[i - 1] == Step::D {
                    s.dd += 1;
                    s.dmass += ((partner[i - 1] - partner[i] - 1) / 2) as i64;
                }
                if i + 1 < len && steps[i + 1] == Step::U {
                    s.nval += 1;
                    s.stun += ((i - partner[i] + 1) / 2) as i64;
                    s.beta += downs_seen;
                }
            }
        }
    }
    for x in 1..len.max(1) {
        s.area += (h[x] / 2) as i64;
    }
    s
}

/// `Σ_{valleys} (pos - height)/2` with `pos` the 1-based index of the
/// valley's `D` step and `height` the level after it.
///
/// Since `pos` and `height` always share parity, each summand is the number
/// of down-steps up to and including the valley's `D`; the sum therefore
/// coincides with [`PathStats::beta`], but is computed here directly from
/// positions and heights. Against [`omega_stump`] it recovers `maj` on
/// 231-avoiders.
pub fn valley_position_weight(path: &DyckPath) -> i64 {
    let steps = path.steps();
    let h = path.heights();
    let mut total = 0i64;
    for i in 0..steps.len() {
        if steps[i] == Step::D && i + 1 < steps.len() && steps[i + 1] == Step::U {
            total += ((i + 1 - h[i + 1]) / 2) as i64;
        }
    }
    total
}

/// `Σ_{peaks of height ≥ 2} 1 + (pos - height)/2` with `pos` the 1-based
/// index of the peak's `U` step and `height` the level after it.
///
/// Against [`gamma`] it recovers Denert's statistic on 321-avoiders: each
/// summand is one more than the number of down-steps before the peak, which
/// is the column index of a box above the main diagonal in the encoding
/// array — i.e. a position where the permutation exceeds the diagonal.
/// Height-1 peaks are the left-to-right maxima sitting *on* the diagonal
/// (no excedance), so they contribute nothing.
pub fn peak_position_weight(path: &DyckPath) -> i64 {
    let steps = path.steps();
    let h = path.heights();
    let mut total = 0i64;
    for i in 0..steps.len() {
        if steps[i] == Step::U && i + 1 < steps.len() && steps[i + 1] == Step::D && h[i + 1] >= 2 {
            total += 1 + ((i + 1 - h[i + 1]) / 2) as i64;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Δ: recursive standardizations of the one-pattern classes
// ---------------------------------------------------------------------------

/// Which one-pattern Catalan class a Δ-map standardizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaVariant {
    /// 231-avoiders, recursing on the first letter.
    A231,
    /// 312-avoiders, recursing on the last letter.
    A312,
    /// 132-avoiders, recursing on the position of the maximum.
    A132,
}

impl DeltaVariant {
    fn pattern(self) -> VincularPattern {
        let lit = match self {
            DeltaVariant::A231 => "231",
            DeltaVariant::A312 => "312",
            DeltaVariant::A132 => "132",
        };
        lit.parse().expect("classical literal")
    }
}

/// The recursive bijection from the class onto Dyck paths:
///
/// * `A231`: `σ = k ⋅ σ₁ ⋅ σ₂` (values below/above the first letter) maps to
///   `U Δ(σ₁) D Δ(σ₂)`;
/// * `A312`: `σ = σ₁ ⋅ σ₂ ⋅ m` (values below/above split before the last
///   letter) maps to `Δ(σ₁) U Δ(σ₂) D`;
/// * `A132`: `σ = σ₁ ⋅ n ⋅ σ₂` (prefix on the top values) maps to
///   `U Δ(σ₁) D Δ(σ₂)`.
pub fn delta(sigma: &Permutation, variant: DeltaVariant) -> Result<DyckPath> {
    if !avoids(sigma, &[variant.pattern()]) {
        return Err(Error::NotInClass {
            pattern: variant.pattern().to_string(),
        });
    }
    let mut steps = Vec::with_capacity(2 * sigma.n());
    delta_rec(sigma.values(), variant, &mut steps);
    Ok(DyckPath::from_steps_unchecked(steps))
}

fn delta_rec(w: &[usize], variant: DeltaVariant, out: &mut Vec<Step>) {
    if w.is_empty() {
        return;
    }
    let lo = *w.iter().min().expect("non-empty");
    match variant {
        DeltaVariant::A231 => {
            // Avoiding 231 forces every value below the first letter to
            // precede every value above it.
            let k = w[0];
            let nb = k - lo;
            debug_assert!(w[1..1 + nb].iter().all(|&v| v < k));
            out.push(Step::U);
            delta_rec(&w[1..1 + nb], variant, out);
            out.push(Step::D);
            delta_rec(&w[1 + nb..], variant, out);
        }
        DeltaVariant::A312 => {
            let m = w[w.len() - 1];
            let nb = m - lo;
            debug_assert!(w[..nb].iter().all(|&v| v < m));
            delta_rec(&w[..nb], variant, out);
            out.push(Step::U);
            delta_rec(&w[nb..w.len() - 1], variant, out);
            out.push(Step::D);
        }
        DeltaVariant::A132 => {
            let p = w
                .iter()
                .position(|&v| v == lo + w.len() - 1)
                .expect("maximum present");
            debug_assert!(
                w[..p].iter().all(|&hi| w[p + 1..].iter().all(|&lo2| hi > lo2)),
                "prefix of a 132-avoider sits above the suffix"
            );
            out.push(Step::U);
            delta_rec(&w[..p], variant, out);
            out.push(Step::D);
            delta_rec(&w[p + 1..], variant, out);
        }
    }
}

/// Inverse of [`delta`], by first-return (`A231`, `A132`) or last-return
/// (`A312`) parsing.
pub fn delta_inv(path: &DyckPath, variant: DeltaVariant) -> Permutation {
    let values = delta_inv_rec(path.steps(), variant, 1);
    Permutation::from_vec_unchecked(values)
}

/// Rebuilds the block of values `offset .. offset + semilength` for the
/// given balanced step word.
fn delta_inv_rec(steps: &[Step], variant: DeltaVariant, offset: usize) -> Vec<usize> {
    if steps.is_empty() {
        return Vec::new();
    }
    let ret = first_return_of(steps);
    match variant {
        DeltaVariant::A231 => {
            // steps = U A D B; first letter k sits above the A-block.
            let a = &steps[1..ret - 1];
            let b = &steps[ret..];
            let k = offset + a.len() / 2;
            let mut out = vec![k];
            out.extend(delta_inv_rec(a, variant, offset));
            out.extend(delta_inv_rec(b, variant, k + 1));
            out
        }
        DeltaVariant::A312 => {
            // steps = A U B D; the last letter m sits between the A-block
            // (values below m) and the B-block (values above m).
            let (u, _) = last_arch_of(steps);
            let a = &steps[..u];
            let b = &steps[u + 1..steps.len() - 1];
            let m = offset + a.len() / 2;
            let mut out = delta_inv_rec(a, variant, offset);
            out.extend(delta_inv_rec(b, variant, m + 1));
            out.push(m);
            out
        }
        DeltaVariant::A132 => {
            // steps = U A D B; the A-block carries the top values.
            let a = &steps[1..ret - 1];
            let b = &steps[ret..];
            let bsize = b.len() / 2;
            let n = steps.len() / 2;
            let mut out = delta_inv_rec(a, variant, offset + bsize);
            out.push(offset + n - 1);
            out.extend(delta_inv_rec(b, variant, offset));
            out
        }
    }
}

fn first_return_of(steps: &[Step]) -> usize {
    let mut h = 0i64;
    for (i, &s) in steps.iter().enumerate() {
        h += if s == Step::U { 1 } else { -1 };
        if h == 0 {
            return i + 1;
        }
    }
    unreachable!("balanced word returns to ground")
}

/// For a word ending in `D`, the indices `(u, d)` of the last ground-level
/// arch `U … D`.
fn last_arch_of(steps: &[Step]) -> (usize, usize) {
    let d = steps.len() - 1;
    let mut h = 0i64;
    for i in (0..steps.len()).rev() {
        h += if steps[i] == Step::D { 1 } else { -1 };
        if h == 0 {
            return (i, d);
        }
    }
    unreachable!("balanced word returns to ground")
}

// ---------------------------------------------------------------------------
// Γ: weak-excedance staircase for 321-avoiders
// ---------------------------------------------------------------------------

/// Codes a 321-avoider by its weak excedances `(i, σ(i))`, `σ(i) ≥ i`: both
/// coordinate sequences increase, and the boundary word
/// `U^{v_1} D^{i_2-i_1} U^{v_2-v_1} ⋯ D^{n-i_k+1}` is a Dyck path.
pub fn gamma(sigma: &Permutation) -> Result<DyckPath> {
    let pat: VincularPattern = "321".parse().expect("classical literal");
    if !avoids(sigma, &[pat]) {
        return Err(Error::NotInClass {
            pattern: "321".to_string(),
        });
    }
    let n = sigma.n();
    if n == 0 {
        return Ok(DyckPath::empty());
    }
    let crosses: Vec<(usize, usize)> = (1..=n)
        .filter(|&i| sigma.at(i) >= i)
        .map(|i| (i, sigma.at(i)))
        .collect();
    debug_assert!(crosses.windows(2).all(|w| w[0].1 < w[1].1));
    let mut steps = Vec::with_capacity(2 * n);
    for (j, &(i, v)) in crosses.iter().enumerate() {
        let prev_v = if j == 0 { 0 } else { crosses[j - 1].1 };
        steps.extend(std::iter::repeat(Step::U).take(v - prev_v));
        let next_i = if j + 1 < crosses.len() {
            crosses[j + 1].0
        } else {
            n + 1
        };
        steps.extend(std::iter::repeat(Step::D).take(next_i - i));
    }
    Ok(DyckPath::new(steps).expect("weak-excedance staircase is a Dyck path"))
}

/// Inverse of [`gamma`]: the run structure recovers the crosses, and the
/// remaining values fill the remaining positions in increasing order.
pub fn gamma_inv(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    if n == 0 {
        return Permutation::empty();
    }
    let runs = path.runs();
    let mut values = vec![0usize; n];
    let mut i = 1usize;
    let mut v = 0usize;
    for &(a, b) in &runs {
        v += a;
        // Cross at (i, v); the next position with a cross is i + b.
        values[i - 1] = v;
        i += b;
    }
    let used_positions: Vec<bool> = {
        let mut u = vec![false; n + 1];
        let mut i = 1usize;
        for &(_, b) in &runs {
            u[i] = true;
            i += b;
        }
        u
    };
    let mut used_values = vec![false; n + 1];
    for &x in values.iter().filter(|&&x| x != 0) {
        used_values[x] = true;
    }
    let mut free_values = (1..=n).filter(|&x| !used_values[x]);
    for pos in 1..=n {
        if !used_positions[pos] {
            values[pos - 1] = free_values.next().expect("value counts match");
        }
    }
    let result = Permutation::from_vec_unchecked(values);
    debug_assert_eq!(gamma(&result).expect("image avoids 321"), *path);
    result
}

// ---------------------------------------------------------------------------
// δ: the pairing product on Dyck paths
// ---------------------------------------------------------------------------

/// The run-splicing product `δ(Q, R)`, a bijection from pairs with
/// `|Q| + |R| = n - 1` onto paths of semilength `n`.
pub fn delta_pair(q: &DyckPath, r: &DyckPath) -> DyckPath {
    if q.is_empty() {
        // δ(∅, R) = UD ⋅ R.
        let mut steps = vec![Step::U, Step::D];
        steps.extend_from_slice(r.steps());
        return DyckPath::from_steps_unchecked(steps);
    }
    let qr = q.runs();
    let s = qr.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if r.is_empty() {
        pairs.push((qr[0].0 + 1, qr[0].1 + 1));
        pairs.extend_from_slice(&qr[1..]);
    } else {
        let rr = r.runs();
        // U-runs: a₁+1, a₂, …, a_s, c₁, …, c_t;
        // D-runs: 1, b₁, …, b_{s-1}, b_s + d₁, d₂, …, d_t.
        pairs.push((qr[0].0 + 1, 1));
        for j in 1..s {
            pairs.push((qr[j].0, qr[j - 1].1));
        }
        pairs.push((rr[0].0, qr[s - 1].1 + rr[0].1));
        pairs.extend_from_slice(&rr[1..]);
    }
    path_from_runs(&pairs).expect("δ produces a Dyck path")
}

fn path_from_runs(pairs: &[(usize, usize)]) -> Result<DyckPath> {
    let mut steps = Vec::new();
    for &(a, b) in pairs {
        steps.extend(std::iter::repeat(Step::U).take(a));
        steps.extend(std::iter::repeat(Step::D).take(b));
    }
    DyckPath::new(steps)
}

/// Inverse of [`delta_pair`]. The split point of the mixed case is
/// recovered by scanning: the balance of the candidate `Q` determines its
/// final down-run, and exactly one split reproduces the input.
pub fn delta_pair_inv(path: &DyckPath) -> (DyckPath, DyckPath) {
    assert!(!path.is_empty(), "δ⁻¹ is defined on non-empty paths");
    if path.steps() == [Step::U, Step::D] {
        return (DyckPath::empty(), DyckPath::empty());
    }
    let runs = path.runs();
    let r = runs.len();
    if runs[0].1 >= 2 {
        // R = ∅: undo the doubled first runs.
        let mut pairs = vec![(runs[0].0 - 1, runs[0].1 - 1)];
        pairs.extend_from_slice(&runs[1..]);
        let q = path_from_runs(&pairs).expect("R-empty preimage is a Dyck path");
        return (q, DyckPath::empty());
    }
    if runs[0].0 == 1 {
        // Q = ∅: strip the leading UD.
        let rest = DyckPath::from_steps_unchecked(path.steps()[2..].to_vec());
        return (DyckPath::empty(), rest);
    }
    let mut found: Option<(DyckPath, DyckPath)> = None;
    for s in 1..r {
        // Q uses run pairs 1..=s.
        let mut a: Vec<usize> = Vec::with_capacity(s);
        a.push(runs[0].0 - 1);
        a.extend(runs[1..s].iter().map(|&(f, _)| f));
        let mut b: Vec<usize> = runs[1..s].iter().map(|&(_, g)| g).collect();
        let a_sum: usize = a.iter().sum();
        let b_sum: usize = b.iter().sum();
        if a_sum <= b_sum {
            continue;
        }
        let b_last = a_sum - b_sum;
        if runs[s].1 <= b_last {
            continue; // final merged down-run cannot host d₁ ≥ 1
        }
        b.push(b_last);
        let q_pairs: Vec<(usize, usize)> = a.into_iter().zip(b).collect();
        let Ok(q) = path_from_runs(&q_pairs) else {
            continue;
        };
        let mut r_pairs: Vec<(usize, usize)> = vec![(runs[s].0, runs[s].1 - b_last)];
        r_pairs.extend_from_slice(&runs[s + 1..]);
        let Ok(rr) = path_from_runs(&r_pairs) else {
            continue;
        };
        if delta_pair(&q, &rr) == *path {
            assert!(
                found.is_none(),
                "δ⁻¹ split is ambiguous for {path}: injectivity violated"
            );
            found = Some((q, rr));
        }
    }
    found.unwrap_or_else(|| panic!("δ⁻¹ found no valid split for {path}"))
}

// ---------------------------------------------------------------------------
// Ψ: tunnel transport
// ---------------------------------------------------------------------------

/// The recursive bijection carrying `spea` to `stun`: with
/// `(Q, R) = δ⁻¹(P)`, `Ψ(P)` is `UD Ψ(Q)` when `R = ∅`, `U Ψ(R) D` when
/// `Q = ∅`, and `U Ψ(Q) D Ψ(R)` otherwise.
pub fn psi(path: &DyckPath) -> DyckPath {
    if path.is_empty() {
        return DyckPath::empty();
    }
    let (q, r) = delta_pair_inv(path);
    let mut steps = Vec::with_capacity(path.steps().len());
    if r.is_empty() {
        steps.push(Step::U);
        steps.push(Step::D);
        steps.extend_from_slice(psi(&q).steps());
    } else if q.is_empty() {
        steps.push(Step::U);
        steps.extend_from_slice(psi(&r).steps());
        steps.push(Step::D);
    } else {
        steps.push(Step::U);
        steps.extend_from_slice(psi(&q).steps());
        steps.push(Step::D);
        steps.extend_from_slice(psi(&r).steps());
    }
    DyckPath::from_steps_unchecked(steps)
}

/// Inverse of [`psi`], by first-return parsing: `U A D B` came from
/// `(Q, R) = (Ψ⁻¹(A or B), …)` according to which of `A`, `B` is empty.
pub fn psi_inv(path: &DyckPath) -> DyckPath {
    if path.is_empty() {
        return DyckPath::empty();
    }
    let ret = first_return_of(path.steps());
    let a = DyckPath::from_steps_unchecked(path.steps()[1..ret - 1].to_vec());
    let b = DyckPath::from_steps_unchecked(path.steps()[ret..].to_vec());
    if a.is_empty() {
        delta_pair(&psi_inv(&b), &DyckPath::empty())
    } else if b.is_empty() {
        delta_pair(&DyckPath::empty(), &psi_inv(&a))
    } else {
        delta_pair(&psi_inv(&a), &psi_inv(&b))
    }
}

// ---------------------------------------------------------------------------
// Φ and Θ: level rewrites
// ---------------------------------------------------------------------------

/// Rewrites the arch decomposition `P = U A_1 D ⋯ U A_m D` as
/// `U^m D Φ(A_1) D Φ(A_2) D ⋯ D Φ(A_m)`, carrying `stun` to
/// `umass + dr`.
pub fn phi_path(path: &DyckPath) -> DyckPath {
    if path.is_empty() {
        return DyckPath::empty();
    }
    let interiors = path.arch_interiors();
    let mut steps = Vec::with_capacity(path.steps().len());
    steps.extend(std::iter::repeat(Step::U).take(interiors.len()));
    for interior in &interiors {
        steps.push(Step::D);
        steps.extend_from_slice(phi_path(interior).steps());
    }
    DyckPath::from_steps_unchecked(steps)
}

/// Parses `U^m D F_1 D F_2 ⋯ D F_m` where `F_j` is the maximal balanced
/// factor at its level; total on Dyck paths.
fn level_parse(steps: &[Step]) -> Vec<Vec<Step>> {
    let mut m = 0;
    while m < steps.len() && steps[m] == Step::U {
        m += 1;
    }
    let mut factors = Vec::with_capacity(m);
    let mut pos = m;
    for _ in 0..m {
        assert_eq!(steps[pos], Step::D, "level parse expects a separator");
        pos += 1;
        let start = pos;
        let mut h = 0i64;
        while pos < steps.len() {
            match steps[pos] {
                Step::U => h += 1,
                Step::D => {
                    if h == 0 {
                        break;
                    }
                    h -= 1;
                }
            }
            pos += 1;
        }
        factors.push(steps[start..pos].to_vec());
    }
    assert_eq!(pos, steps.len(), "level parse consumed the whole word");
    factors
}

/// Inverse of [`phi_path`].
pub fn phi_path_inv(path: &DyckPath) -> DyckPath {
    if path.is_empty() {
        return DyckPath::empty();
    }
    let factors = level_parse(path.steps());
    let mut steps = Vec::with_capacity(path.steps().len());
    for f in factors {
        steps.push(Step::U);
        steps.extend_from_slice(
            phi_path_inv(&DyckPath::from_steps_unchecked(f)).steps(),
        );
        steps.push(Step::D);
    }
    DyckPath::from_steps_unchecked(steps)
}

/// Maps each ground-level arch separately: `UD ↦ UD`, and a prime path
/// `U (U Q_1 D ⋯ U Q_s D) D` becomes `U^{s+1} D Θ(Q_1) D ⋯ D Θ(Q_s) D`.
/// Carries `sht` to `umass + dr`.
pub fn theta(path: &DyckPath) -> DyckPath {
    let mut steps = Vec::with_capacity(path.steps().len());
    for interior in path.arch_interiors() {
        let inner = interior.arch_interiors();
        steps.extend(std::iter::repeat(Step::U).take(inner.len() + 1));
        for q in &inner {
            steps.push(Step::D);
            steps.extend_from_slice(theta(q).steps());
        }
        steps.push(Step::D);
    }
    DyckPath::from_steps_unchecked(steps)
}

/// Inverse of [`theta`]: images of primes are arches, so each arch is
/// level-parsed on its own (its last factor is necessarily empty).
pub fn theta_inv(path: &DyckPath) -> DyckPath {
    let mut steps = Vec::with_capacity(path.steps().len());
    for interior in path.arch_interiors() {
        // Reassemble the arch and parse it at its own level.
        let mut arch = Vec::with_capacity(interior.steps().len() + 2);
        arch.push(Step::U);
        arch.extend_from_slice(interior.steps());
        arch.push(Step::D);
        let mut factors = level_parse(&arch);
        let last = factors.pop().expect("arch parses to at least one factor");
        assert!(last.is_empty(), "arch images end with an empty factor");
        steps.push(Step::U);
        for f in factors {
            steps.push(Step::U);
            steps.extend_from_slice(theta_inv(&DyckPath::from_steps_unchecked(f)).steps());
            steps.push(Step::D);
        }
        steps.push(Step::D);
    }
    DyckPath::from_steps_unchecked(steps)
}

/// `Λ = Θ⁻¹ ∘ Φ ∘ Ψ`, carrying `spea` to `sht`.
pub fn lambda(path: &DyckPath) -> DyckPath {
    theta_inv(&phi_path(&psi(path)))
}

/// Inverse of [`lambda`].
pub fn lambda_inv(path: &DyckPath) -> DyckPath {
    psi_inv(&phi_path_inv(&theta(path)))
}

// ---------------------------------------------------------------------------
// Ω: descent/inverse-descent interleaving of 231-avoiders
// ---------------------------------------------------------------------------

/// Interleaves the inverse-descent and descent sets of a 231-avoider (each
/// extended by `n`) into `U^{i'_1} D^{i_1} U^{i'_2 - i'_1} D^{i_2 - i_1} ⋯`;
/// that the result is a Dyck path (and the set sizes match) is a theorem
/// for this class, so violations panic.
pub fn omega_stump(sigma: &Permutation) -> Result<DyckPath> {
    let pat: VincularPattern = "231".parse().expect("classical literal");
    if !avoids(sigma, &[pat]) {
        return Err(Error::NotInClass {
            pattern: "231".to_string(),
        });
    }
    let n = sigma.n();
    if n == 0 {
        return Ok(DyckPath::empty());
    }
    let mut des = sigma.descent_profile().des_set;
    let mut ides = sigma.inverse().descent_profile().des_set;
    des.push(n);
    ides.push(n);
    assert_eq!(
        des.len(),
        ides.len(),
        "a 231-avoider has as many descents as its inverse"
    );
    let mut steps = Vec::with_capacity(2 * n);
    let mut prev_d = 0;
    let mut prev_i = 0;
    for (&d, &i) in des.iter().zip(&ides) {
        steps.extend(std::iter::repeat(Step::U).take(i - prev_i));
        steps.extend(std::iter::repeat(Step::D).take(d - prev_d));
        prev_d = d;
        prev_i = i;
    }
    Ok(DyckPath::new(steps).expect("interleaving of a 231-avoider is a Dyck path"))
}

/// Forward lookup table for inverting [`omega_stump`] at one semilength.
pub struct OmegaTable {
    table: std::collections::BTreeMap<DyckPath, Permutation>,
}

impl OmegaTable {
    /// Tabulates the map over all of `S_n(231)`.
    pub fn new(n: usize) -> Self {
        let pat: VincularPattern = "231".parse().expect("classical literal");
        let mut table = std::collections::BTreeMap::new();
        for sigma in enumerate_avoiders(n, std::slice::from_ref(&pat)) {
            let path = omega_stump(&sigma).expect("class member");
            let prior = table.insert(path, sigma);
            assert!(prior.is_none(), "descent interleaving is injective");
        }
        Self { table }
    }

    pub fn invert(&self, path: &DyckPath) -> &Permutation {
        self.table
            .get(path)
            .expect("every Dyck path is a descent interleaving")
    }
}

/// Inverts [`omega_stump`] through a freshly built per-semilength table.
pub fn omega_stump_inv(path: &DyckPath) -> Permutation {
    OmegaTable::new(path.semilength()).invert(path).clone()
}
