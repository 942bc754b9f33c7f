//! The statistic catalog: linear combinations of vincular pattern counts,
//! plus a handful of built-in statistics that are not pattern-linear.
//!
//! The fourteen catalog statistics (`maj`, `inv`, `mak`, `makl`, `mad`,
//! `bast`, `bast2`, `bast3`, `foze`, `foze2`, `foze3`, `sist`, `sist2`,
//! `sist3`) are all integer combinations of counts of length-3 vincular
//! patterns together with the descent count `(<21>)`. Distributions over
//! avoidance classes are computed by a single `O(n³)` sweep per permutation
//! that tallies every length-2/3 vincular count at once ([`TriCounts`]),
//! after which each catalog statistic is a dot product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::pattern::{enumerate_avoiders, VincularPattern};
use crate::perm::Permutation;
use crate::qpoly::QPoly;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// StatSpec
// ---------------------------------------------------------------------------

/// A built-in (non-pattern-linear) statistic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Builtin {
    /// Denert's statistic.
    Den,
    /// The first letter.
    Head,
    /// The last letter.
    Last,
    /// The major index of the inverse.
    Imaj,
    /// `iota:k` — the number of increasing subsequences of length `k + 1`.
    Iota(usize),
    /// The alternating-weight combination of increasing-subsequence counts:
    /// `ι₁ + Σ_{k≥2} (-1)^{k-1} 2^{k-2} ι_k`.
    Inc,
}

/// A permutation statistic: either a linear combination of vincular pattern
/// counts or a built-in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatSpec {
    Linear(BTreeMap<VincularPattern, i64>),
    Builtin(Builtin),
}

/// The fourteen catalog statistics, in canonical order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "maj", "inv", "mak", "makl", "mad", "bast", "bast2", "bast3", "foze", "foze2", "foze3",
        "sist", "sist2", "sist3",
    ]
}

fn linear_from(terms: &[(i64, &str)]) -> StatSpec {
    let mut map = BTreeMap::new();
    for &(c, lit) in terms {
        let pat: VincularPattern = lit.parse().expect("catalog literals parse");
        *map.entry(pat).or_insert(0) += c;
    }
    StatSpec::Linear(map)
}

impl StatSpec {
    /// Looks up a statistic by name (catalog statistics, built-ins, `des`,
    /// and the `iota:k` family).
    pub fn named(name: &str) -> Result<StatSpec> {
        let name = name.trim();
        if let Some(k) = name.strip_prefix("iota:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::UnknownStat(name.to_string()))?;
            return Ok(StatSpec::Builtin(Builtin::Iota(k)));
        }
        Ok(match name {
            "maj" => linear_from(&[(1, "1<32>"), (1, "2<31>"), (1, "3<21>"), (1, "<21>")]),
            "inv" => linear_from(&[(1, "<23>1"), (1, "<31>2"), (1, "<32>1"), (1, "<21>")]),
            "mak" => linear_from(&[(1, "1<32>"), (1, "<31>2"), (1, "<32>1"), (1, "<21>")]),
            "makl" => linear_from(&[(1, "1<32>"), (1, "2<31>"), (1, "<32>1"), (1, "<21>")]),
            "mad" => linear_from(&[(2, "2<31>"), (1, "<31>2"), (1, "<21>")]),
            "bast" => linear_from(&[(1, "<13>2"), (1, "<21>3"), (1, "<32>1"), (1, "<21>")]),
            "bast2" => linear_from(&[(1, "<13>2"), (1, "<31>2"), (1, "<32>1"), (1, "<21>")]),
            "bast3" => linear_from(&[(1, "1<32>"), (1, "3<12>"), (1, "3<21>"), (1, "<21>")]),
            "foze" => linear_from(&[(1, "<21>3"), (1, "3<21>"), (1, "<13>2"), (1, "<21>")]),
            "foze2" => linear_from(&[(1, "1<32>"), (2, "2<31>"), (1, "<21>")]),
            "foze3" => linear_from(&[(1, "<23>1"), (2, "<31>2"), (1, "<21>")]),
            "sist" => linear_from(&[(2, "<13>2"), (1, "2<13>"), (1, "<21>")]),
            "sist2" => linear_from(&[(2, "<13>2"), (1, "2<31>"), (1, "<21>")]),
            "sist3" => linear_from(&[(1, "<13>2"), (2, "2<31>"), (1, "<21>")]),
            "des" => linear_from(&[(1, "<21>")]),
            "den" => StatSpec::Builtin(Builtin::Den),
            "head" => StatSpec::Builtin(Builtin::Head),
            "last" => StatSpec::Builtin(Builtin::Last),
            "imaj" => StatSpec::Builtin(Builtin::Imaj),
            "inc" => StatSpec::Builtin(Builtin::Inc),
            _ => return Err(Error::UnknownStat(name.to_string())),
        })
    }

    /// Parses either a name or an explicit linear combination
    /// `lin: c*pat + c*pat - …`.
    pub fn parse(text: &str) -> Result<StatSpec> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix("lin:") {
            return parse_linear(text, body);
        }
        StatSpec::named(text)
    }

    /// Evaluates the statistic on `σ`. Linear combinations may legitimately
    /// be negative.
    pub fn evaluate(&self, sigma: &Permutation) -> i64 {
        match self {
            StatSpec::Linear(terms) => terms
                .iter()
                .map(|(p, &c)| c * p.count(sigma) as i64)
                .sum(),
            StatSpec::Builtin(b) => b.evaluate(sigma),
        }
    }
}

impl Builtin {
    fn evaluate(&self, sigma: &Permutation) -> i64 {
        match self {
            Builtin::Den => den(sigma),
            Builtin::Head => sigma.values().first().map_or(0, |&v| v as i64),
            Builtin::Last => sigma.values().last().map_or(0, |&v| v as i64),
            Builtin::Imaj => sigma.inverse().descent_profile().maj as i64,
            Builtin::Iota(k) => increasing_subsequence_counts(sigma, k + 1)[k + 1],
            Builtin::Inc => inc(sigma),
        }
    }
}

impl fmt::Display for StatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatSpec::Builtin(Builtin::Den) => write!(f, "den"),
            StatSpec::Builtin(Builtin::Head) => write!(f, "head"),
            StatSpec::Builtin(Builtin::Last) => write!(f, "last"),
            StatSpec::Builtin(Builtin::Imaj) => write!(f, "imaj"),
            StatSpec::Builtin(Builtin::Iota(k)) => write!(f, "iota:{k}"),
            StatSpec::Builtin(Builtin::Inc) => write!(f, "inc"),
            StatSpec::Linear(terms) => {
                write!(f, "lin:")?;
                let mut first = true;
                for (pat, &c) in terms {
                    if c == 0 {
                        continue;
                    }
                    if first {
                        write!(f, " {}", c)?;
                        first = false;
                    } else if c < 0 {
                        write!(f, " - {}", -c)?;
                    } else {
                        write!(f, " + {}", c)?;
                    }
                    write!(f, "*{pat}")?;
                }
                if first {
                    write!(f, " 0*1")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for StatSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StatSpec::parse(s)
    }
}

/// Splits the body of a `lin:` expression at top-level `+`/`-` (signs inside
/// a value-restriction parenthesis do not split).
fn parse_linear(literal: &str, body: &str) -> Result<StatSpec> {
    let err = |reason: String| Error::StatParse {
        literal: literal.to_string(),
        reason,
    };
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut depth = 0usize;
    let flush = |sign: i64, current: &mut String, terms: &mut Vec<(i64, String)>| {
        let t = current.trim().to_string();
        current.clear();
        if t.is_empty() {
            return Err("empty term".to_string());
        }
        terms.push((sign, t));
        Ok(())
    };
    for ch in body.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() && terms.is_empty() {
                    // Leading sign.
                    sign = if ch == '-' { -1 } else { 1 };
                } else {
                    flush(sign, &mut current, &mut terms).map_err(&err)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => current.push(ch),
        }
    }
    flush(sign, &mut current, &mut terms).map_err(&err)?;

    let mut map: BTreeMap<VincularPattern, i64> = BTreeMap::new();
    for (sign, term) in terms {
        let (coeff, pat_text) = match term.split_once('*') {
            Some((c, p)) => {
                let c: i64 = c
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad coefficient in {term:?}")))?;
                (c, p.trim().to_string())
            }
            None => (1, term.clone()),
        };
        let pat: VincularPattern = pat_text.parse()?;
        *map.entry(pat).or_insert(0) += sign * coeff;
    }
    map.retain(|_, c| *c != 0);
    Ok(StatSpec::Linear(map))
}

// ---------------------------------------------------------------------------
// Built-in statistic implementations
// ---------------------------------------------------------------------------

/// Denert's statistic: `inv` of the excedance subword plus `inv` of the
/// non-excedance subword plus the sum of excedance positions.
pub fn den(sigma: &Permutation) -> i64 {
    let mut exc: Vec<usize> = Vec::new();
    let mut nexc: Vec<usize> = Vec::new();
    let mut pos_sum = 0i64;
    for (idx, &v) in sigma.values().iter().enumerate() {
        let i = idx + 1;
        if v > i {
            exc.push(v);
            pos_sum += i as i64;
        } else {
            nexc.push(v);
        }
    }
    word_inversions(&exc) + word_inversions(&nexc) + pos_sum
}

fn word_inversions(w: &[usize]) -> i64 {
    let mut inv = 0i64;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// `counts[j]` = number of strictly increasing subsequences of length `j`,
/// for `j = 0..=max_len` (`counts[0] = 1`, the empty subsequence).
fn increasing_subsequence_counts(sigma: &Permutation, max_len: usize) -> Vec<i64> {
    let n = sigma.n();
    let w = sigma.values();
    // ending[j][i] = number of increasing subsequences of length j ending at
    // index i.
    let mut totals = vec![0i64; max_len + 1];
    totals[0] = 1;
    if max_len == 0 {
        return totals;
    }
    let mut prev = vec![1i64; n];
    totals[1] = n as i64;
    for j in 2..=max_len {
        let mut cur = vec![0i64; n];
        for i in 0..n {
            for h in 0..i {
                if w[h] < w[i] {
                    cur[i] += prev[h];
                }
            }
        }
        totals[j] = cur.iter().sum();
        prev = cur;
    }
    totals
}

/// `inc(σ) = ι₁ + Σ_{k≥2} (-1)^{k-1} 2^{k-2} ι_k`, where `ι_k` counts
/// increasing subsequences of length `k + 1`. The sum is finite because
/// `ι_k = 0` beyond the longest increasing subsequence.
pub fn inc(sigma: &Permutation) -> i64 {
    let n = sigma.n();
    if n < 2 {
        return 0;
    }
    let iota = increasing_subsequence_counts(sigma, n);
    let mut total = iota[2]; // ι₁
    let mut weight = -1i64; // (-1)^{k-1} 2^{k-2} at k = 2
    for k in 2..n {
        total += weight * iota[k + 1];
        weight *= -2;
    }
    total
}

// ---------------------------------------------------------------------------
// Bulk pattern-count evaluation
// ---------------------------------------------------------------------------

/// All vincular counts of length 2 and 3 with plain adjacency sets
/// (`X ⊆ {1, 2}`, no anchors, no value restrictions) for one word, gathered
/// in a single `O(n³)` sweep.
///
/// `tri[p][m]`: `p` is the lexicographic rank of the length-3 pattern among
/// `123, 132, 213, 231, 312, 321`; `m` is the adjacency mask (bit 0 = slots
/// 1–2 adjacent, bit 1 = slots 2–3 adjacent), counting occurrences that
/// satisfy at least the masked adjacencies. `duo[d][a]`: `d` = 0 for the
/// pattern 12, 1 for 21; `a` = 1 restricts to adjacent positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriCounts {
    pub tri: [[i64; 4]; 6],
    pub duo: [[i64; 2]; 2],
}

/// Index of one bulk-counted pattern inside [`TriCounts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriIndex {
    Tri { pattern: usize, xmask: usize },
    Duo { descent: bool, adjacent: bool },
}

fn rank3(a: usize, b: usize, c: usize) -> usize {
    match (a < b, a < c, b < c) {
        (true, true, true) => 0,    // 123
        (true, true, false) => 1,   // 132
        (false, true, true) => 2,   // 213
        (true, false, false) => 3,  // 231
        (false, false, true) => 4,  // 312
        (false, false, false) => 5, // 321
        _ => unreachable!("letters of a permutation are distinct"),
    }
}

impl TriCounts {
    pub fn compute(word: &[usize]) -> TriCounts {
        let n = word.len();
        let mut tri = [[0i64; 4]; 6];
        let mut duo = [[0i64; 2]; 2];
        for i in 0..n {
            for j in i + 1..n {
                let d = usize::from(word[i] > word[j]);
                duo[d][0] += 1;
                if j == i + 1 {
                    duo[d][1] += 1;
                }
                for k in j + 1..n {
                    let p = rank3(word[i], word[j], word[k]);
                    let a1 = j == i + 1;
                    let a2 = k == j + 1;
                    tri[p][0] += 1;
                    if a1 {
                        tri[p][1] += 1;
                    }
                    if a2 {
                        tri[p][2] += 1;
                    }
                    if a1 && a2 {
                        tri[p][3] += 1;
                    }
                }
            }
        }
        TriCounts { tri, duo }
    }

    pub fn get(&self, idx: TriIndex) -> i64 {
        match idx {
            TriIndex::Tri { pattern, xmask } => self.tri[pattern][xmask],
            TriIndex::Duo { descent, adjacent } => {
                self.duo[usize::from(descent)][usize::from(adjacent)]
            }
        }
    }
}

/// A pattern-linear statistic compiled to [`TriCounts`] dot-product form.
#[derive(Clone, Debug)]
pub struct CompiledLinear {
    terms: Vec<(TriIndex, i64)>,
}

impl CompiledLinear {
    /// Compiles a statistic whose patterns are all plain length-2/3 vincular
    /// patterns; returns `None` when any term needs the generic matcher.
    pub fn compile(spec: &StatSpec) -> Option<CompiledLinear> {
        let StatSpec::Linear(map) = spec else {
            return None;
        };
        let mut terms = Vec::with_capacity(map.len());
        for (pat, &c) in map {
            if pat.restrictions().iter().any(Option::is_some) {
                return None;
            }
            let m = pat.len();
            let x = pat.adjacency_set();
            if x.contains(&0) || x.contains(&m) {
                return None;
            }
            let idx = match m {
                3 => {
                    let v = pat.pi().values();
                    let xmask =
                        usize::from(x.contains(&1)) | (usize::from(x.contains(&2)) << 1);
                    TriIndex::Tri {
                        pattern: rank3(v[0], v[1], v[2]),
                        xmask,
                    }
                }
                2 => TriIndex::Duo {
                    descent: pat.pi().values()[0] > pat.pi().values()[1],
                    adjacent: x.contains(&1),
                },
                _ => return None,
            };
            terms.push((idx, c));
        }
        Some(CompiledLinear { terms })
    }

    pub fn eval(&self, counts: &TriCounts) -> i64 {
        self.terms.iter().map(|&(idx, c)| c * counts.get(idx)).sum()
    }
}

/// Evaluator choosing the compiled fast path when available.
pub enum CompiledStat<'a> {
    Fast(CompiledLinear),
    Generic(&'a StatSpec),
}

impl<'a> CompiledStat<'a> {
    pub fn new(spec: &'a StatSpec) -> Self {
        match CompiledLinear::compile(spec) {
            Some(c) => CompiledStat::Fast(c),
            None => CompiledStat::Generic(spec),
        }
    }

    pub fn eval(&self, sigma: &Permutation) -> i64 {
        match self {
            CompiledStat::Fast(c) => c.eval(&TriCounts::compute(sigma.values())),
            CompiledStat::Generic(spec) => spec.evaluate(sigma),
        }
    }

    /// Evaluation reusing an already computed bulk count (falls back to the
    /// generic matcher when this statistic could not be compiled).
    pub fn eval_with_counts(&self, counts: &TriCounts, sigma: &Permutation) -> i64 {
        match self {
            CompiledStat::Fast(c) => c.eval(counts),
            CompiledStat::Generic(spec) => spec.evaluate(sigma),
        }
    }
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

/// The generating polynomial `Σ_{σ ∈ S_n(Π)} q^{stat(σ)}`.
///
/// Fails with [`Error::NegativeStatistic`] if the statistic goes negative on
/// some member of the class.
pub fn distribution(spec: &StatSpec, class: &[VincularPattern], n: usize) -> Result<QPoly> {
    let compiled = CompiledStat::new(spec);
    let mut poly = QPoly::zero();
    let one = BigInt::one();
    for sigma in enumerate_avoiders(n, class) {
        let v = compiled.eval(&sigma);
        if v < 0 {
            return Err(Error::NegativeStatistic { value: v });
        }
        poly.add_term(&one, v as usize);
    }
    Ok(poly)
}

/// A refinement mark: an extra variable tracked alongside the main
/// statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Des,
    Head,
    Last,
    Db,
    Dt,
    Ab,
    At,
    LrMin,
}

/// The value of a mark on one permutation: an integer exponent for the
/// scalar marks, a sorted value set for the set-valued marks (weight
/// `Π_{s ∈ S} x_s`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum MarkValue {
    Int(i64),
    Set(Vec<usize>),
}

impl Mark {
    pub const ALL: [Mark; 8] = [
        Mark::Des,
        Mark::Head,
        Mark::Last,
        Mark::Db,
        Mark::Dt,
        Mark::Ab,
        Mark::At,
        Mark::LrMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mark::Des => "des",
            Mark::Head => "head",
            Mark::Last => "last",
            Mark::Db => "DB",
            Mark::Dt => "DT",
            Mark::Ab => "AB",
            Mark::At => "AT",
            Mark::LrMin => "LRMin",
        }
    }

    pub fn value(self, sigma: &Permutation) -> MarkValue {
        match self {
            Mark::Des => MarkValue::Int(sigma.descent_profile().des as i64),
            Mark::Head => MarkValue::Int(sigma.values().first().map_or(0, |&v| v as i64)),
            Mark::Last => MarkValue::Int(sigma.values().last().map_or(0, |&v| v as i64)),
            Mark::Db => MarkValue::Set(sigma.descent_profile().db),
            Mark::Dt => MarkValue::Set(sigma.descent_profile().dt),
            Mark::Ab => MarkValue::Set(sigma.descent_profile().ab),
            Mark::At => MarkValue::Set(sigma.descent_profile().at),
            Mark::LrMin => {
                let mut v = sigma.extrema_profile().lrmin_set;
                v.sort_unstable();
                MarkValue::Set(v)
            }
        }
    }
}

impl FromStr for Mark {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mark> {
        Mark::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownStat(s.to_string()))
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The refined distribution: for each tuple of mark values, the generating
/// polynomial of the statistic over that fiber of `S_n(Π)`.
pub fn distribution_refined(
    spec: &StatSpec,
    class: &[VincularPattern],
    n: usize,
    marks: &[Mark],
) -> Result<BTreeMap<Vec<MarkValue>, QPoly>> {
    let compiled = CompiledStat::new(spec);
    let one = BigInt::one();
    let mut out: BTreeMap<Vec<MarkValue>, QPoly> = BTreeMap::new();
    for sigma in enumerate_avoiders(n, class) {
        let v = compiled.eval(&sigma);
        if v < 0 {
            return Err(Error::NegativeStatistic { value: v });
        }
        let key: Vec<MarkValue> = marks.iter().map(|&m| m.value(&sigma)).collect();
        out.entry(key).or_default().add_term(&one, v as usize);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::q_factorial;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn stat(name: &str) -> StatSpec {
        StatSpec::named(name).unwrap()
    }

    #[test]
    fn catalog_is_complete_and_parses() {
        for name in catalog_names() {
            assert!(StatSpec::named(name).is_ok(), "{name}");
        }
        assert!(StatSpec::named("majj").is_err());
    }

    #[test]
    fn maj_and_inv_match_their_definitions() {
        let maj = stat("maj");
        let inv = stat("inv");
        for sigma in enumerate_avoiders(5, &[]) {
            let profile = sigma.descent_profile();
            assert_eq!(maj.evaluate(&sigma), profile.maj as i64, "maj {sigma}");
            assert_eq!(inv.evaluate(&sigma), sigma.inversions() as i64, "inv {sigma}");
        }
    }

    #[test]
    fn builtin_values() {
        assert_eq!(den(&p("231")), 3);
        assert_eq!(stat("den").evaluate(&p("231")), 3);
        assert_eq!(stat("head").evaluate(&p("246153")), 2);
        assert_eq!(stat("last").evaluate(&p("246153")), 3);
        assert_eq!(stat("imaj").evaluate(&p("231")), 1);
        assert_eq!(stat("iota:1").evaluate(&p("123")), 3);
        assert_eq!(stat("iota:2").evaluate(&p("123")), 1);
        assert_eq!(stat("iota:1").evaluate(&p("321")), 0);
        assert_eq!(inc(&p("123")), 2);
        assert_eq!(inc(&p("321")), 0);
    }

    #[test]
    fn imaj_is_maj_of_inverse() {
        for sigma in enumerate_avoiders(5, &[]) {
            assert_eq!(
                stat("imaj").evaluate(&sigma),
                sigma.inverse().descent_profile().maj as i64
            );
        }
    }

    #[test]
    fn inc_distribution_small() {
        let class = ["132".parse().unwrap()];
        let d = distribution(&stat("inc"), &class, 3).unwrap();
        assert_eq!(d, QPoly::from_i64_slice(&[1, 2, 2]));
    }

    #[test]
    fn den_is_mahonian_small() {
        for n in 0..=5 {
            assert_eq!(distribution(&stat("den"), &[], n).unwrap(), q_factorial(n));
        }
    }

    #[test]
    fn catalog_stats_are_mahonian_at_n4() {
        for name in catalog_names() {
            let d = distribution(&stat(name), &[], 4).unwrap();
            assert_eq!(d, q_factorial(4), "{name} over S_4");
        }
    }

    #[test]
    fn linear_parse_and_display_roundtrip() {
        let maj = stat("maj");
        let parsed = StatSpec::parse("lin: 1*1<32> + 1*2<31> + 1*3<21> + 1*<21>").unwrap();
        assert_eq!(parsed, maj);
        let canonical = maj.to_string();
        assert_eq!(StatSpec::parse(&canonical).unwrap(), maj);

        let signed = StatSpec::parse("lin: 2*<13>2 - <21> + 3*<23>1@(-,6,-)").unwrap();
        assert_eq!(StatSpec::parse(&signed.to_string()).unwrap(), signed);
        let StatSpec::Linear(map) = &signed else {
            panic!()
        };
        assert_eq!(map.len(), 3);
        assert_eq!(map[&"<21>".parse().unwrap()], -1);
    }

    #[test]
    fn compiled_path_agrees_with_generic() {
        for name in catalog_names() {
            let spec = stat(name);
            let compiled = CompiledStat::new(&spec);
            assert!(matches!(compiled, CompiledStat::Fast(_)), "{name} compiles");
            for sigma in enumerate_avoiders(5, &[]) {
                assert_eq!(compiled.eval(&sigma), spec.evaluate(&sigma), "{name} {sigma}");
            }
        }
    }

    #[test]
    fn refined_distribution_by_des() {
        let fibers =
            distribution_refined(&stat("maj"), &[], 3, &[Mark::Des]).unwrap();
        assert_eq!(fibers.len(), 3);
        assert_eq!(fibers[&vec![MarkValue::Int(0)]], QPoly::one());
        assert_eq!(
            fibers[&vec![MarkValue::Int(1)]],
            QPoly::from_i64_slice(&[0, 2, 2])
        );
        assert_eq!(
            fibers[&vec![MarkValue::Int(2)]],
            QPoly::from_i64_slice(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn set_marks() {
        let sigma = p("246153");
        assert_eq!(Mark::Db.value(&sigma), MarkValue::Set(vec![1, 3]));
        assert_eq!(Mark::Dt.value(&sigma), MarkValue::Set(vec![5, 6]));
        assert_eq!(Mark::LrMin.value(&sigma), MarkValue::Set(vec![1, 2]));
    }

    #[test]
    fn negative_statistic_is_an_error() {
        let spec = StatSpec::parse("lin: -1*<21>").unwrap();
        assert!(matches!(
            distribution(&spec, &[], 3),
            Err(Error::NegativeStatistic { .. })
        ));
    }

    proptest! {
        // The bulk counter agrees with the generic matcher on every
        // length-2/3 vincular pattern without anchors or restrictions.
        #[test]
        fn bulk_counts_match_generic(
            word in (0usize..7).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        ) {
            let ranks = Permutation::new(word).unwrap();
            let counts = TriCounts::compute(ranks.values());
            let pats3 = ["123", "132", "213", "231", "312", "321"];
            for (pidx, base) in pats3.iter().enumerate() {
                let variants = [
                    (base.to_string(), 0usize),
                    (format!("<{}{}>{}", &base[0..1], &base[1..2], &base[2..3]), 1),
                    (format!("{}<{}{}>", &base[0..1], &base[1..2], &base[2..3]), 2),
                    (format!("<{}>", base), 3),
                ];
                for (lit, mask) in variants {
                    let pat: VincularPattern = lit.parse().unwrap();
                    prop_assert_eq!(
                        counts.get(TriIndex::Tri { pattern: pidx, xmask: mask }),
                        pat.count(&ranks) as i64
                    );
                }
            }
            for (lit, descent, adjacent) in [
                ("12", false, false),
                ("<12>", false, true),
                ("21", true, false),
                ("<21>", true, true),
            ] {
                let pat: VincularPattern = lit.parse().unwrap();
                prop_assert_eq!(
                    counts.get(TriIndex::Duo { descent, adjacent }),
                    pat.count(&ranks) as i64
                );
            }
        }
    }
}
