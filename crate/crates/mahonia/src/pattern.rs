//! Vincular (and value-restricted) pattern matching plus enumeration of
//! pattern-avoiding permutation classes.
//!
//! A pattern is a triple `(π, X, υ)`: a permutation `π` of length `m`, an
//! adjacency/anchor set `X ⊆ {0, 1, …, m}`, and a value-restriction vector
//! `υ`. Interior elements `j ∈ X` force the occurrence positions `i_j` and
//! `i_{j+1}` to be adjacent, `0 ∈ X` anchors the occurrence at position 1,
//! and `m ∈ X` anchors it at position `n`; `υ_j` (when present) pins the
//! value of the `j`-th occurrence letter.
//!
//! The text format groups adjacent runs in angle brackets and uses square
//! brackets for anchors: `"2<31>"`, `"[231"`, `"<23>1@(-,6,-)"`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::perm::Permutation;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// VincularPattern
// ---------------------------------------------------------------------------

/// A vincular pattern with optional anchors and value restrictions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VincularPattern {
    pi: Permutation,
    x: BTreeSet<usize>,
    upsilon: Vec<Option<usize>>,
}

/// One occurrence of a pattern: the strictly increasing tuple of one-indexed
/// positions selected in the host permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub positions: Vec<usize>,
}

impl VincularPattern {
    /// Builds a pattern, validating `X ⊆ {0, …, m}` and `|υ| = m`.
    pub fn new(
        pi: Permutation,
        x: BTreeSet<usize>,
        upsilon: Vec<Option<usize>>,
    ) -> Result<Self> {
        let m = pi.n();
        if let Some(&bad) = x.iter().find(|&&j| j > m) {
            return Err(Error::PatternParse {
                literal: pi.to_string(),
                reason: format!("adjacency index {bad} exceeds pattern length {m}"),
            });
        }
        if upsilon.len() != m {
            return Err(Error::PatternParse {
                literal: pi.to_string(),
                reason: format!(
                    "value restriction arity {} does not match pattern length {m}",
                    upsilon.len()
                ),
            });
        }
        Ok(VincularPattern { pi, x, upsilon })
    }

    /// A classical pattern: no adjacencies, no anchors, no restrictions.
    pub fn classical(pi: Permutation) -> Self {
        let upsilon = vec![None; pi.n()];
        VincularPattern {
            pi,
            x: BTreeSet::new(),
            upsilon,
        }
    }

    /// The underlying permutation `π`.
    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    /// The adjacency/anchor set `X`.
    pub fn adjacency_set(&self) -> &BTreeSet<usize> {
        &self.x
    }

    /// The value-restriction vector `υ` (entries `None` are dashes).
    pub fn restrictions(&self) -> &[Option<usize>] {
        &self.upsilon
    }

    /// Pattern length `m`.
    pub fn len(&self) -> usize {
        self.pi.n()
    }

    /// True for the empty pattern.
    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// True iff the pattern is classical (plain subsequence containment).
    pub fn is_classical(&self) -> bool {
        self.x.is_empty() && self.upsilon.iter().all(Option::is_none)
    }

    /// Returns a copy with the value restriction vector replaced.
    pub fn with_restrictions(&self, upsilon: Vec<Option<usize>>) -> Result<Self> {
        VincularPattern::new(self.pi.clone(), self.x.clone(), upsilon)
    }

    /// Number of occurrences of the pattern in `σ`.
    pub fn count(&self, sigma: &Permutation) -> usize {
        self.count_in_word(sigma.values())
    }

    /// Number of occurrences in a raw one-line word.
    pub(crate) fn count_in_word(&self, word: &[usize]) -> usize {
        let mut count = 0;
        self.scan(word, &mut |_| count += 1, false);
        count
    }

    /// True iff the pattern occurs at least once in the word.
    pub(crate) fn occurs_in_word(&self, word: &[usize]) -> bool {
        let mut found = false;
        self.scan(word, &mut |_| found = true, true);
        found
    }

    /// All occurrences, as one-indexed position tuples in lexicographic order.
    pub fn occurrences(&self, sigma: &Permutation) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.scan(sigma.values(), &mut |chosen| {
            out.push(Occurrence {
                positions: chosen.iter().map(|&i| i + 1).collect(),
            });
        }, false);
        out
    }

    /// Depth-first scan over increasing position tuples with adjacency,
    /// anchor, value-restriction and order-isomorphism pruning. Invokes
    /// `emit` with the chosen zero-based positions for every occurrence;
    /// stops after the first hit when `stop_early`.
    fn scan(&self, word: &[usize], emit: &mut dyn FnMut(&[usize]), stop_early: bool) {
        let m = self.len();
        if m == 0 {
            // The empty pattern occurs exactly once (the empty selection).
            emit(&[]);
            return;
        }
        if word.len() < m {
            return;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        self.scan_rec(word, &mut chosen, emit, stop_early);
    }

    fn scan_rec(
        &self,
        word: &[usize],
        chosen: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
        stop_early: bool,
    ) -> bool {
        let m = self.len();
        let s = chosen.len(); // zero-based slot being filled
        let n = word.len();
        let pi = self.pi.values();

        let (lo, hi) = if s == 0 {
            if self.x.contains(&0) {
                (0, 0)
            } else {
                (0, n - m)
            }
        } else if self.x.contains(&s) {
            // Adjacency between slots s and s+1 (one-based): position forced.
            let p = chosen[s - 1] + 1;
            (p, p)
        } else {
            (chosen[s - 1] + 1, n - (m - s))
        };

        for idx in lo..=hi.min(n.saturating_sub(1)) {
            if idx >= n {
                break;
            }
            // End anchor: the last slot must sit at position n.
            if s == m - 1 && self.x.contains(&m) && idx != n - 1 {
                continue;
            }
            let v = word[idx];
            if let Some(required) = self.upsilon[s] {
                if v != required {
                    continue;
                }
            }
            // Partial order-isomorphism with everything already chosen.
            if chosen
                .iter()
                .enumerate()
                .any(|(a, &ca)| (word[ca] < v) != (pi[a] < pi[s]))
            {
                continue;
            }
            chosen.push(idx);
            let hit = if chosen.len() == m {
                emit(chosen);
                true
            } else {
                self.scan_rec(word, chosen, emit, stop_early)
            };
            chosen.pop();
            if hit && stop_early {
                return true;
            }
        }
        false
    }
}

/// True iff `σ` contains no occurrence of any member of `Π`.
pub fn avoids(sigma: &Permutation, patterns: &[VincularPattern]) -> bool {
    patterns.iter().all(|p| !p.occurs_in_word(sigma.values()))
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.len();
        if self.x.contains(&0) {
            write!(f, "[")?;
        }
        let mut slot = 1;
        while slot <= m {
            // Maximal run of adjacency-linked letters starting at `slot`.
            let mut end = slot;
            while end < m && self.x.contains(&end) {
                end += 1;
            }
            if end > slot {
                write!(f, "<")?;
                for j in slot..=end {
                    write!(f, "{}", self.pi.at(j))?;
                }
                write!(f, ">")?;
            } else {
                write!(f, "{}", self.pi.at(slot))?;
            }
            slot = end + 1;
        }
        if m > 0 && self.x.contains(&m) {
            write!(f, "]")?;
        }
        if self.upsilon.iter().any(Option::is_some) {
            write!(f, "@(")?;
            for (j, r) in self.upsilon.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                match r {
                    Some(v) => write!(f, "{v}")?,
                    None => write!(f, "-")?,
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::PatternParse {
            literal: text.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = text.trim().chars().peekable();
        let mut letters: Vec<usize> = Vec::new();
        let mut x: BTreeSet<usize> = BTreeSet::new();
        let mut end_anchor = false;

        if chars.peek() == Some(&'[') {
            chars.next();
            x.insert(0);
        }
        loop {
            match chars.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let d = chars.next().unwrap().to_digit(10).unwrap() as usize;
                    if d == 0 {
                        return Err(err("pattern letters must be 1–9"));
                    }
                    letters.push(d);
                }
                Some('<') => {
                    chars.next();
                    let run_start = letters.len();
                    loop {
                        match chars.next() {
                            Some(c) if c.is_ascii_digit() => {
                                let d = c.to_digit(10).unwrap() as usize;
                                if d == 0 {
                                    return Err(err("pattern letters must be 1–9"));
                                }
                                letters.push(d);
                            }
                            Some('>') => break,
                            _ => return Err(err("unterminated adjacency group")),
                        }
                    }
                    if letters.len() < run_start + 2 {
                        return Err(err("adjacency group needs at least two letters"));
                    }
                    for j in run_start + 1..letters.len() {
                        x.insert(j);
                    }
                }
                Some(']') => {
                    chars.next();
                    end_anchor = true;
                    break;
                }
                Some('@') | None => break,
                Some(c) => return Err(err(&format!("unexpected character {c:?}"))),
            }
        }
        let m = letters.len();
        if end_anchor {
            x.insert(m);
        }

        let mut upsilon: Vec<Option<usize>> = vec![None; m];
        match chars.peek() {
            None => {}
            Some('@') => {
                chars.next();
                if chars.next() != Some('(') {
                    return Err(err("expected '(' after '@'"));
                }
                let rest: String = chars.collect();
                let body = rest
                    .strip_suffix(')')
                    .ok_or_else(|| err("unterminated value restriction"))?;
                let entries: Vec<&str> = body.split(',').collect();
                if entries.len() != m {
                    return Err(Error::PatternParse {
                        literal: text.to_string(),
                        reason: format!(
                            "value restriction arity {} does not match pattern length {m}",
                            entries.len()
                        ),
                    });
                }
                for (j, e) in entries.iter().enumerate() {
                    let e = e.trim();
                    if e != "-" {
                        upsilon[j] = Some(
                            e.parse::<usize>()
                                .map_err(|_| err("restriction entries are integers or '-'"))?,
                        );
                    }
                }
            }
            Some(c) => return Err(err(&format!("unexpected trailing character {c:?}"))),
        }

        let pi = Permutation::new(letters)
            .map_err(|_| err("pattern letters must form a permutation"))?;
        VincularPattern::new(pi, x, upsilon)
    }
}

/// Parses a comma-separated list of pattern literals (empty string = no
/// patterns).
pub fn parse_pattern_list(text: &str) -> Result<Vec<VincularPattern>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| part.trim().parse())
        .collect()
}

// ---------------------------------------------------------------------------
// Enumeration of avoidance classes
// ---------------------------------------------------------------------------

/// Lexicographic stream of `S_n(Π)`, the permutations of `[n]` avoiding
/// every member of `Π`.
///
/// Classical members of length 2 and 3 prune the backtracking search
/// incrementally (an occurrence would have a first completion point, so it
/// suffices to check occurrences ending at the freshly placed letter); all
/// other members are applied as a filter on complete words.
pub fn enumerate_avoiders(n: usize, patterns: &[VincularPattern]) -> AvoiderStream {
    AvoiderStream::with_prefix(n, patterns, &[])
        .expect("the empty prefix is always consistent")
}

/// The search-tree shard of `enumerate_avoiders(n, Π)` below a fixed prefix:
/// yields exactly the members of `S_n(Π)` beginning with `prefix`, in
/// lexicographic order. Shards over a partition of prefixes are disjoint and
/// can run concurrently.
pub fn enumerate_avoiders_with_prefix(
    n: usize,
    patterns: &[VincularPattern],
    prefix: &[usize],
) -> Result<AvoiderStream> {
    AvoiderStream::with_prefix(n, patterns, prefix)
}

/// Streaming iterator over an avoidance class. See [`enumerate_avoiders`].
pub struct AvoiderStream {
    n: usize,
    prune3: Vec<[usize; 3]>,
    prune2: Vec<[usize; 2]>,
    post: Vec<VincularPattern>,
    prefix: Vec<usize>,
    used: Vec<bool>,
    next_cand: Vec<usize>,
    base_depth: usize,
    done: bool,
}

impl AvoiderStream {
    fn with_prefix(n: usize, patterns: &[VincularPattern], prefix: &[usize]) -> Result<Self> {
        let mut prune3 = Vec::new();
        let mut prune2 = Vec::new();
        let mut post = Vec::new();
        for p in patterns {
            if p.is_classical() && p.len() == 3 {
                let v = p.pi.values();
                prune3.push([v[0], v[1], v[2]]);
            } else if p.is_classical() && p.len() == 2 {
                let v = p.pi.values();
                prune2.push([v[0], v[1]]);
            } else {
                post.push(p.clone());
            }
        }
        let mut stream = AvoiderStream {
            n,
            prune3,
            prune2,
            post,
            prefix: Vec::with_capacity(n),
            used: vec![false; n + 1],
            next_cand: vec![1; n + 1],
            base_depth: prefix.len(),
            done: false,
        };
        for &v in prefix {
            if v == 0 || v > n || stream.used[v] {
                return Err(Error::NotAPermutation(format!("prefix {prefix:?}")));
            }
            if !stream.placeable(v) {
                // The prefix itself contains a pruned pattern: empty shard.
                stream.done = true;
            }
            stream.prefix.push(v);
            stream.used[v] = true;
        }
        Ok(stream)
    }

    /// True iff placing `v` next creates no occurrence (ending at `v`) of a
    /// pruned classical pattern.
    fn placeable(&self, v: usize) -> bool {
        let w = &self.prefix;
        let d = w.len();
        for pat in &self.prune2 {
            let asc = pat[0] < pat[1];
            if w.iter().any(|&a| (a < v) == asc) {
                return false;
            }
        }
        for pat in &self.prune3 {
            for i in 0..d {
                for j in i + 1..d {
                    if (w[i] < w[j]) == (pat[0] < pat[1])
                        && (w[i] < v) == (pat[0] < pat[2])
                        && (w[j] < v) == (pat[1] < pat[2])
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn passes_post_filter(&self) -> bool {
        self.post.iter().all(|p| !p.occurs_in_word(&self.prefix))
    }

    fn backtrack(&mut self) {
        if self.prefix.len() <= self.base_depth {
            self.done = true;
            return;
        }
        let v = self.prefix.pop().expect("non-empty prefix");
        self.used[v] = false;
    }
}

impl Iterator for AvoiderStream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while !self.done {
            let d = self.prefix.len();
            if d == self.n {
                let item = if self.passes_post_filter() {
                    Some(Permutation::from_vec_unchecked(self.prefix.clone()))
                } else {
                    None
                };
                self.backtrack();
                if item.is_some() {
                    return item;
                }
                continue;
            }
            let mut placed = false;
            let mut v = self.next_cand[d];
            while v <= self.n {
                if !self.used[v] && self.placeable(v) {
                    self.next_cand[d] = v + 1;
                    self.prefix.push(v);
                    self.used[v] = true;
                    self.next_cand[d + 1] = 1;
                    placed = true;
                    break;
                }
                v += 1;
            }
            if !placed {
                self.next_cand[d] = 1;
                self.backtrack();
            }
        }
        None
    }
}
