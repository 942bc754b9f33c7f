//! Shortened polyominoes: pairs of monotone lattice paths with common
//! endpoints, the upper path strictly above the lower on vertical steps, and
//! the labeling bijection onto 321-avoiding permutations.
//!
//! A pair `(P, Q)` of equal-length `N`/`E` words with the same step counts
//! is valid when, row by row, each `N`-step of `P` sits strictly left of the
//! corresponding `N`-step of `Q` (shared `E`-steps are allowed, shared
//! `N`-steps are not; the degenerate pair `(E^n, E^n)` is valid). Numbering
//! `P`'s steps `1..n` and projecting each step of `Q` onto the `P`-step in
//! the same column (for `E`) or row (for `N`) reads off a permutation; its
//! descents are exactly the `EN` corners (valleys) of `Q`, and each valley
//! carries a pair of cell-count area statistics summed into `vcarea` and
//! `vrarea`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pattern::{avoids, VincularPattern};
use crate::perm::Permutation;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// ShortenedPolyomino
// ---------------------------------------------------------------------------

/// One lattice step of a monotone `N`/`E` path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GridStep {
    N,
    E,
}

/// A shortened polyomino: the upper path `P` and lower path `Q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShortenedPolyomino {
    p: Vec<GridStep>,
    q: Vec<GridStep>,
}

/// The valley statistics of a shortened polyomino.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolyominoStats {
    /// Number of valleys (`EN` corners) of the lower path.
    pub val: i64,
    /// Column area: for each valley, the number of `N`-steps of `P` between
    /// the projections of the valley's two steps, summed.
    pub vcarea: i64,
    /// Row area: the same with `E`-steps of `P`.
    pub vrarea: i64,
}

impl ShortenedPolyomino {
    /// Validates the defining conditions: equal length, equal step counts,
    /// and every row's `N`-step of `P` strictly left of `Q`'s.
    pub fn new(p: Vec<GridStep>, q: Vec<GridStep>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidPath(format!(
                "paths have different lengths ({} vs {})",
                p.len(),
                q.len()
            )));
        }
        let rows_p = rows_of(&p);
        let rows_q = rows_of(&q);
        if rows_p.len() != rows_q.len() {
            return Err(Error::InvalidPath(
                "paths end at different heights".to_string(),
            ));
        }
        for (r, (&xp, &xq)) in rows_p.iter().zip(&rows_q).enumerate() {
            if xp >= xq {
                return Err(Error::InvalidPath(format!(
                    "upper path is not strictly left of the lower path in row {}",
                    r + 1
                )));
            }
        }
        Ok(ShortenedPolyomino { p, q })
    }

    /// The upper path.
    pub fn upper(&self) -> &[GridStep] {
        &self.p
    }

    /// The lower path.
    pub fn lower(&self) -> &[GridStep] {
        &self.q
    }

    /// Common number of steps of each path.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// One-based indices `i` with `Q_i Q_{i+1} = EN`.
    pub fn valleys(&self) -> Vec<usize> {
        (1..self.q.len())
            .filter(|&i| self.q[i - 1] == GridStep::E && self.q[i] == GridStep::N)
            .collect()
    }

    /// The projection permutation: `P`'s steps are labeled `1..n` in path
    /// order, each step of `Q` takes the label of the `P`-step in its
    /// column (`E`) or row (`N`).
    pub fn upsilon(&self) -> Permutation {
        let mut e_labels = Vec::new();
        let mut n_labels = Vec::new();
        for (j, &s) in self.p.iter().enumerate() {
            match s {
                GridStep::E => e_labels.push(j + 1),
                GridStep::N => n_labels.push(j + 1),
            }
        }
        let (mut ec, mut nc) = (0usize, 0usize);
        let mut values = Vec::with_capacity(self.len());
        for &s in &self.q {
            match s {
                GridStep::E => {
                    values.push(e_labels[ec]);
                    ec += 1;
                }
                GridStep::N => {
                    values.push(n_labels[nc]);
                    nc += 1;
                }
            }
        }
        let sigma = Permutation::from_vec_unchecked(values);
        debug_assert!(
            avoids(&sigma, &[pattern_321()]),
            "projection of a shortened polyomino avoids 321"
        );
        sigma
    }

    /// The valley statistics. For a valley at `i` with projections
    /// `t = σ(i)` and `s = σ(i+1)`, the `E`-step contributes the `N`-steps
    /// of `P` with index in `[s, t]` to `vcarea` and the `N`-step
    /// contributes the `E`-steps of `P` in the same window to `vrarea`.
    pub fn statistics(&self) -> PolyominoStats {
        let sigma = self.upsilon();
        let mut stats = PolyominoStats {
            val: 0,
            vcarea: 0,
            vrarea: 0,
        };
        for i in self.valleys() {
            let t = sigma.at(i);
            let s = sigma.at(i + 1);
            debug_assert!(s < t, "valleys project to descents");
            stats.val += 1;
            for j in s..=t {
                match self.p[j - 1] {
                    GridStep::N => stats.vcarea += 1,
                    GridStep::E => stats.vrarea += 1,
                }
            }
        }
        stats
    }
}

/// For each row `r` (1-based), the column of the path's `r`-th `N`-step,
/// i.e. the number of `E`-steps preceding it.
fn rows_of(path: &[GridStep]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = 0usize;
    for &s in path {
        match s {
            GridStep::E => x += 1,
            GridStep::N => out.push(x),
        }
    }
    out
}

fn pattern_321() -> VincularPattern {
    "321".parse().expect("classical literal")
}

/// Inverse of the projection: `P` has `E`-steps at the left-to-right
/// maximum values of `σ`, `Q` at their positions. Requires `σ` to avoid
/// 321.
pub fn upsilon_inv(sigma: &Permutation) -> Result<ShortenedPolyomino> {
    if !avoids(sigma, &[pattern_321()]) {
        return Err(Error::NotInClass {
            pattern: "321".to_string(),
        });
    }
    let n = sigma.n();
    let mut value_is_max = vec![false; n + 1];
    let mut pos_is_max = vec![false; n + 1];
    let mut best = 0usize;
    for i in 1..=n {
        if sigma.at(i) > best {
            best = sigma.at(i);
            value_is_max[best] = true;
            pos_is_max[i] = true;
        }
    }
    let p: Vec<GridStep> = (1..=n)
        .map(|j| if value_is_max[j] { GridStep::E } else { GridStep::N })
        .collect();
    let q: Vec<GridStep> = (1..=n)
        .map(|j| if pos_is_max[j] { GridStep::E } else { GridStep::N })
        .collect();
    let poly = ShortenedPolyomino::new(p, q)
        .expect("left-to-right maximum coding of a 321-avoider is valid");
    debug_assert_eq!(poly.upsilon(), *sigma);
    Ok(poly)
}

/// All shortened polyominoes with `n` steps per path.
pub fn enumerate_polyominoes(n: usize) -> Vec<ShortenedPolyomino> {
    let mut out = Vec::new();
    for mask_p in 0u64..(1 << n) {
        let p: Vec<GridStep> = (0..n)
            .map(|j| if mask_p >> j & 1 == 1 { GridStep::E } else { GridStep::N })
            .collect();
        for mask_q in 0u64..(1 << n) {
            if (mask_q as u64).count_ones() != mask_p.count_ones() {
                continue;
            }
            let q: Vec<GridStep> = (0..n)
                .map(|j| if mask_q >> j & 1 == 1 { GridStep::E } else { GridStep::N })
                .collect();
            if let Ok(poly) = ShortenedPolyomino::new(p.clone(), q) {
                out.push(poly);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Text and serde formats: two N/E words joined by a comma
// ---------------------------------------------------------------------------

fn render_grid(path: &[GridStep]) -> String {
    path.iter()
        .map(|&s| if s == GridStep::N { 'N' } else { 'E' })
        .collect()
}

fn parse_grid(text: &str) -> Result<Vec<GridStep>> {
    text.trim()
        .chars()
        .map(|c| match c {
            'N' | 'n' => Ok(GridStep::N),
            'E' | 'e' => Ok(GridStep::E),
            _ => Err(Error::InvalidPath(format!(
                "unexpected character {c:?} in N/E word"
            ))),
        })
        .collect()
}

impl fmt::Display for ShortenedPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", render_grid(&self.p), render_grid(&self.q))
    }
}

impl fmt::Debug for ShortenedPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", render_grid(&self.p), render_grid(&self.q))
    }
}

impl FromStr for ShortenedPolyomino {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (p, q) = text.split_once(',').ok_or_else(|| {
            Error::InvalidPath("expected two N/E words separated by a comma".to_string())
        })?;
        ShortenedPolyomino::new(parse_grid(p)?, parse_grid(q)?)
    }
}

impl Serialize for ShortenedPolyomino {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [render_grid(&self.p), render_grid(&self.q)].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ShortenedPolyomino {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[String; 2]>::deserialize(deserializer)?;
        ShortenedPolyomino::new(
            parse_grid(&p).map_err(D::Error::custom)?,
            parse_grid(&q).map_err(D::Error::custom)?,
        )
        .map_err(D::Error::custom)
    }
}
