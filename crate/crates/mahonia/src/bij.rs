//! Statistic-transporting bijections between pattern-avoidance classes.
//!
//! Every map in this module moves a permutation statistic onto another one
//! while fixing some auxiliary data:
//!
//! * [`phi_321`] — involution on `S(321)` exchanging `maj` and `mak` while
//!   fixing every (descent top, descent bottom) pair;
//! * [`simion_schmidt`] — the classical bijection `S(123) → S(132)` fixing
//!   the positions and values of left-to-right minima;
//! * [`phi_132`] — bijection on `S(132)` carrying `maj` to `foze` while
//!   fixing the set of left-to-right minimum values;
//! * [`phi_231`] — bijection on `S(231)` carrying `foze` to `mak` while
//!   fixing the number of descents;
//! * [`phi_123`] — involution on `S(123)` exchanging `maj` and `mak`;
//! * [`phi_inv_to_mad`] — bijection `S(321) → S(231)` carrying `inv` to
//!   `mad`, assembled from the Dyck path maps in [`crate::dyck`];
//! * [`phi_h`] — involution on shortened polyomino pairs exchanging the
//!   column and row area statistics while fixing the valley count.
//!
//! The module also provides the reconstruction half of these maps: a
//! 231-avoiding permutation is rebuilt from any one of five data sets
//! (right-to-left minima, ascent data, the maximal decreasing run
//! partition, descent value pairs, or descent-top occurrence counts), and a
//! 132-avoiding permutation from its left-to-right minima.

use std::collections::{BTreeMap, BTreeSet};

use crate::dyck::{self, DeltaVariant};
use crate::pattern::{avoids, enumerate_avoiders, VincularPattern};
use crate::perm::Permutation;
use crate::polyomino::{upsilon_inv, ShortenedPolyomino};
use crate::stats::StatSpec;
use crate::{Error, Result};

/// Builds the classical pattern with the given one-line letters.
fn classical(letters: &[usize]) -> VincularPattern {
    VincularPattern::classical(
        Permutation::new(letters.to_vec()).expect("pattern letters form a permutation"),
    )
}

/// Errors with [`Error::NotInClass`] unless `σ` avoids the classical
/// pattern with the given letters.
fn ensure_avoids(sigma: &Permutation, letters: &[usize]) -> Result<()> {
    let pattern = classical(letters);
    if avoids(sigma, std::slice::from_ref(&pattern)) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            pattern: pattern.to_string(),
        })
    }
}

// ----------------------------------------------------------------------
// maj ↔ mak on S(321)
// ----------------------------------------------------------------------

/// Involution on `S_n(321)` exchanging `maj` and `mak` while fixing all
/// (descent top, descent bottom) pairs.
///
/// Decompose `σ = u_1 v_1 ⋯ u_t v_t` into maximal factors of left-to-right
/// maxima `u_k` and the (increasing) factors `v_k` between them, and let
/// `M_k = max u_k`, `m_k = min v_k`; the descents of `σ` are exactly the
/// pairs `(M_k, m_k)`.  The letters other than the `M_k`, `m_k` are
/// redistributed: former non-maximum letters (plus the maxima smaller than
/// every descent bottom, which cannot change roles) are sorted into the
/// maximum runs — the window `(M_{k−1}, M_k)` goes in front of `M_k` — and
/// former maximum letters are sorted after the descent bottoms — the window
/// `(m_k, m_{k+1})` follows `m_k`.  A trailing maxima factor (empty `v_t`)
/// consists of the top values; it is fixed and the map recurses on the
/// prefix.
///
/// ```
/// use mahonia::bij::phi_321;
/// let sigma = "341625978".parse().unwrap();
/// assert_eq!(phi_321(&sigma).unwrap().to_string(), "415623897");
/// ```
pub fn phi_321(sigma: &Permutation) -> Result<Permutation> {
    ensure_avoids(sigma, &[3, 2, 1])?;
    let image = phi_321_word(sigma.values());
    Ok(Permutation::new(image).expect("the image letters form a permutation"))
}

fn phi_321_word(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut is_max = vec![false; n];
    let mut mx = 0;
    for (i, &v) in w.iter().enumerate() {
        if v > mx {
            mx = v;
            is_max[i] = true;
        }
    }
    if is_max[n - 1] {
        // The word ends inside a maxima factor.  That factor holds the top
        // values in increasing order; strip it and recurse on the prefix.
        let mut s = n - 1;
        while s > 0 && is_max[s - 1] {
            s -= 1;
        }
        debug_assert!(w[s..].iter().enumerate().all(|(j, &v)| v == s + j + 1));
        let mut out = phi_321_word(&w[..s]);
        out.extend_from_slice(&w[s..]);
        return out;
    }
    // Block decomposition u_1 v_1 ⋯ u_t v_t with every factor non-empty.
    let mut big = Vec::new(); // M_k: the maximum (= last letter) of u_k
    let mut small = Vec::new(); // m_k: the minimum (= first letter) of v_k
    let mut reds = Vec::new(); // letters of u_k other than M_k
    let mut blues = Vec::new(); // letters of v_k other than m_k
    let mut i = 0;
    while i < n {
        let start = i;
        while i < n && is_max[i] {
            i += 1;
        }
        reds.extend_from_slice(&w[start..i - 1]);
        big.push(w[i - 1]);
        let start = i;
        while i < n && !is_max[i] {
            i += 1;
        }
        small.push(w[start]);
        blues.extend_from_slice(&w[start + 1..i]);
        debug_assert!(w[start..i].windows(2).all(|p| p[0] < p[1]));
    }
    let t = big.len();
    // Maxima below every descent bottom can never serve as non-maxima in
    // any permutation with these descent pairs; they keep their role.
    let (stuck, movable): (Vec<usize>, Vec<usize>) = reds.iter().partition(|&&r| r < small[0]);
    let mut new_red = blues;
    new_red.extend(stuck);
    new_red.sort_unstable();
    let mut new_blue = movable;
    new_blue.sort_unstable();
    let mut out = Vec::with_capacity(n);
    for k in 0..t {
        let lo = if k == 0 { 0 } else { big[k - 1] };
        out.extend(new_red.iter().copied().filter(|&x| lo < x && x < big[k]));
        out.push(big[k]);
        out.push(small[k]);
        let hi = if k + 1 < t { small[k + 1] } else { n + 1 };
        out.extend(new_blue.iter().copied().filter(|&x| small[k] < x && x < hi));
    }
    debug_assert_eq!(out.len(), n);
    out
}

// ----------------------------------------------------------------------
// Left-to-right minima data and the Simion–Schmidt map
// ----------------------------------------------------------------------

/// Left-to-right minima of `σ` as (position, value) pairs in position
/// order.
pub fn lr_minima(sigma: &Permutation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut cur = usize::MAX;
    for (i, &v) in sigma.values().iter().enumerate() {
        if v < cur {
            cur = v;
            out.push((i + 1, v));
        }
    }
    out
}

/// Right-to-left minima of `σ` as (position, value) pairs in position
/// order.
pub fn rl_minima(sigma: &Permutation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut cur = usize::MAX;
    for (i, &v) in sigma.values().iter().enumerate().rev() {
        if v < cur {
            cur = v;
            out.push((i + 1, v));
        }
    }
    out.reverse();
    out
}

/// Rebuilds the unique 132-avoiding permutation of `[n]` whose
/// left-to-right minima are exactly `minima` ((position, value) pairs in
/// position order).
///
/// Every non-minimum position receives the smallest remaining value
/// exceeding the closest minimum to its left.  Returns
/// [`Error::InconsistentData`] when no 132-avoider has the requested
/// minima.
pub fn reconstruct_132_from_lrmin(minima: &[(usize, usize)], n: usize) -> Result<Permutation> {
    if n == 0 {
        return if minima.is_empty() {
            Ok(Permutation::empty())
        } else {
            Err(Error::InconsistentData(
                "minima listed for an empty permutation".into(),
            ))
        };
    }
    if minima.first().map(|&(p, _)| p) != Some(1) {
        return Err(Error::InconsistentData(
            "the first position of a permutation is always a left-to-right minimum".into(),
        ));
    }
    for pair in minima.windows(2) {
        let ((p0, v0), (p1, v1)) = (pair[0], pair[1]);
        if p1 <= p0 || v1 >= v0 {
            return Err(Error::InconsistentData(
                "left-to-right minima must have increasing positions and decreasing values".into(),
            ));
        }
    }
    if minima.iter().any(|&(p, v)| p > n || v == 0 || v > n) {
        return Err(Error::InconsistentData(
            "minimum position or value out of range".into(),
        ));
    }
    let mut values = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for &(p, v) in minima {
        values[p - 1] = v;
        used[v] = true;
    }
    let mut active = 0;
    for slot in values.iter_mut() {
        if *slot != 0 {
            active = *slot;
            continue;
        }
        let v = (active + 1..=n).find(|&v| !used[v]).ok_or_else(|| {
            Error::InconsistentData(
                "no remaining value exceeds the active left-to-right minimum".into(),
            )
        })?;
        used[v] = true;
        *slot = v;
    }
    Ok(Permutation::new(values).expect("filled word is a permutation"))
}

/// The Simion–Schmidt bijection `S_n(123) → S_n(132)`: keeps the
/// left-to-right minima (positions and values) and rebuilds the other
/// letters in the unique 132-avoiding way.
///
/// ```
/// use mahonia::bij::simion_schmidt;
/// let sigma = "3142".parse().unwrap();
/// assert_eq!(simion_schmidt(&sigma).unwrap().to_string(), "3124");
/// ```
pub fn simion_schmidt(sigma: &Permutation) -> Result<Permutation> {
    ensure_avoids(sigma, &[1, 2, 3])?;
    reconstruct_132_from_lrmin(&lr_minima(sigma), sigma.n())
}

/// Inverse of [`simion_schmidt`]: keeps the left-to-right minima and fills
/// the remaining positions with the unused values in decreasing order,
/// which is the unique 123-avoiding completion.
pub fn simion_schmidt_inv(tau: &Permutation) -> Result<Permutation> {
    ensure_avoids(tau, &[1, 3, 2])?;
    let n = tau.n();
    let minima = lr_minima(tau);
    let mut values = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for &(p, v) in &minima {
        values[p - 1] = v;
        used[v] = true;
    }
    let mut rest: Vec<usize> = (1..=n).filter(|&v| !used[v]).rev().collect();
    for slot in values.iter_mut() {
        if *slot == 0 {
            *slot = rest.remove(0);
        }
    }
    let sigma = Permutation::new(values).expect("filled word is a permutation");
    debug_assert!(avoids(&sigma, &[classical(&[1, 2, 3])]));
    debug_assert_eq!(lr_minima(&sigma), minima);
    Ok(sigma)
}

// ----------------------------------------------------------------------
// maj → foze on S(132)
// ----------------------------------------------------------------------

/// Bijection on `S_n(132)` with `maj(φσ) = foze(σ)`, fixing the first
/// letter, the descent-bottom value set (hence the left-to-right minimum
/// values) and the number of descents.
///
/// The image is the 132-avoider determined by first letter `σ(1)`, descent
/// set `{n − σ(i) + 1 : i ∈ Des(σ)}`, and the old descent bottoms as new
/// descent bottoms: the k-th smallest new descent position is followed by
/// the k-th descent bottom of `σ` in position order.
///
/// ```
/// use mahonia::bij::phi_132;
/// let sigma = "213".parse().unwrap();
/// assert_eq!(phi_132(&sigma).unwrap().to_string(), "231");
/// ```
pub fn phi_132(sigma: &Permutation) -> Result<Permutation> {
    ensure_avoids(sigma, &[1, 3, 2])?;
    let n = sigma.n();
    if n == 0 {
        return Ok(Permutation::empty());
    }
    let w = sigma.values();
    let mut new_des: Vec<usize> = Vec::new();
    let mut bottoms: Vec<usize> = Vec::new();
    for i in 1..n {
        if w[i - 1] > w[i] {
            new_des.push(n - w[i - 1] + 1);
            bottoms.push(w[i]);
        }
    }
    new_des.sort_unstable();
    let mut minima = vec![(1, w[0])];
    minima.extend(new_des.iter().zip(&bottoms).map(|(&d, &b)| (d + 1, b)));
    reconstruct_132_from_lrmin(&minima, n)
}

/// Inverse of [`phi_132`], found by scanning the (finite) class for the
/// preimage.
pub fn phi_132_inv(tau: &Permutation) -> Result<Permutation> {
    ensure_avoids(tau, &[1, 3, 2])?;
    let class = [classical(&[1, 3, 2])];
    for sigma in enumerate_avoiders(tau.n(), &class) {
        if &phi_132(&sigma)? == tau {
            return Ok(sigma);
        }
    }
    Err(Error::InconsistentData(
        "no preimage found; phi_132 should be surjective".into(),
    ))
}

// ----------------------------------------------------------------------
// Data determining a 231-avoiding permutation
// ----------------------------------------------------------------------

/// The maximal decreasing runs of `σ`, in position order.
pub fn decreasing_runs(sigma: &Permutation) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &v in sigma.values() {
        match runs.last_mut() {
            Some(run) if *run.last().expect("runs are non-empty") > v => run.push(v),
            _ => runs.push(vec![v]),
        }
    }
    runs
}

/// The descents of `σ` as (top value, bottom value) pairs in position
/// order.
pub fn descent_value_pairs(sigma: &Permutation) -> Vec<(usize, usize)> {
    sigma
        .values()
        .windows(2)
        .filter(|p| p[0] > p[1])
        .map(|p| (p[0], p[1]))
        .collect()
}

/// For each interior valley `v` of `σ` (a letter below both neighbours),
/// the pair `(p, v)` where `p` is the top of the maximal decreasing run
/// ending at `v`; pairs in position order.
///
/// This data does *not* determine a 231-avoider: letters of the trailing
/// decreasing run are not recorded, so e.g. `15324` and `15423` share the
/// pair list `[(5, 2)]`.  Use [`decreasing_runs`] /
/// [`reconstruct_231_from_runs`] instead.
pub fn peak_valley_pairs(sigma: &Permutation) -> Vec<(usize, usize)> {
    let w = sigma.values();
    let n = w.len();
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        if w[i - 1] > w[i] && w[i] < w[i + 1] {
            // walk the decreasing run ending at the valley back to its top
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                j -= 1;
            }
            out.push((w[j], w[i]));
        }
    }
    out
}

/// For each descent top `α` of `σ`, the pair `(α, c_α)` where `c_α` is the
/// number of `⟨13⟩2`-occurrences whose middle (largest) letter is `α`;
/// pairs in position order.
///
/// Over `S(231)` the count `c_α` is positive exactly when `α` heads a
/// maximal decreasing run that was entered by an ascent, and then the run
/// bottom is `α − c_α`.
pub fn descent_top_counts(sigma: &Permutation) -> Vec<(usize, usize)> {
    let w = sigma.values();
    let n = w.len();
    let mut out = Vec::new();
    for i in 1..n {
        if w[i - 1] <= w[i] {
            continue;
        }
        let alpha = w[i - 1];
        let c = if i >= 2 && w[i - 2] < alpha {
            let a = w[i - 2];
            w[i..].iter().filter(|&&b| a < b && b < alpha).count()
        } else {
            0
        };
        out.push((alpha, c));
    }
    out
}

/// Rebuilds the unique 231-avoiding permutation of `[n]` whose
/// right-to-left minima are exactly `minima` ((position, value) pairs in
/// position order).
///
/// The reverse of a 231-avoider avoids 132 and has the mirrored data as
/// left-to-right minima, so this delegates to
/// [`reconstruct_132_from_lrmin`].
pub fn reconstruct_231_from_rlmin(minima: &[(usize, usize)], n: usize) -> Result<Permutation> {
    if n > 0 && minima.last().map(|&(p, _)| p) != Some(n) {
        return Err(Error::InconsistentData(
            "the last position of a permutation is always a right-to-left minimum".into(),
        ));
    }
    let mirrored: Vec<(usize, usize)> = minima
        .iter()
        .rev()
        .map(|&(p, v)| (n + 1 - p, v))
        .collect();
    let tau = reconstruct_132_from_lrmin(&mirrored, n)?;
    let sigma = tau.reverse();
    debug_assert!(avoids(&sigma, &[classical(&[2, 3, 1])]));
    debug_assert_eq!(rl_minima(&sigma), minima);
    Ok(sigma)
}

/// Rebuilds a 231-avoider from its ascents and last letter: `ascents`
/// lists the (position, bottom value) of every ascent.  Together with the
/// final letter these are exactly the right-to-left minima.
pub fn reconstruct_231_from_ascent_data(
    ascents: &[(usize, usize)],
    last: usize,
    n: usize,
) -> Result<Permutation> {
    if n == 0 {
        return reconstruct_231_from_rlmin(&[], 0);
    }
    if ascents.iter().any(|&(p, _)| p >= n) {
        return Err(Error::InconsistentData(
            "an ascent position must be smaller than the length".into(),
        ));
    }
    let mut minima = ascents.to_vec();
    minima.push((n, last));
    reconstruct_231_from_rlmin(&minima, n)
}

/// Rebuilds a 231-avoider from its maximal decreasing run partition.  The
/// runs may be given in any order; in a 231-avoider they appear sorted by
/// their bottom letters.  The result is validated by re-extracting the
/// runs, so non-maximal or otherwise impossible partitions are rejected
/// with [`Error::InconsistentData`].
pub fn reconstruct_231_from_runs(runs: &[Vec<usize>]) -> Result<Permutation> {
    for run in runs {
        if run.is_empty() || run.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::InconsistentData(
                "each run must be non-empty and strictly decreasing".into(),
            ));
        }
    }
    let mut sorted: Vec<Vec<usize>> = runs.to_vec();
    sorted.sort_by_key(|run| *run.last().expect("runs are non-empty"));
    let values: Vec<usize> = sorted.iter().flatten().copied().collect();
    let sigma = Permutation::new(values).map_err(|_| {
        Error::InconsistentData("the run letters must partition 1..=n".into())
    })?;
    if !avoids(&sigma, &[classical(&[2, 3, 1])]) {
        return Err(Error::InconsistentData(
            "the assembled permutation contains 231".into(),
        ));
    }
    if decreasing_runs(&sigma) != sorted {
        return Err(Error::InconsistentData(
            "the given runs are not the maximal decreasing runs of any 231-avoider".into(),
        ));
    }
    Ok(sigma)
}

/// Rebuilds a 231-avoider of `[n]` from its descent (top, bottom) value
/// pairs.  The pairs chain into maximal decreasing runs; letters in no
/// pair are the singleton runs.
pub fn reconstruct_231_from_descent_pairs(
    pairs: &[(usize, usize)],
    n: usize,
) -> Result<Permutation> {
    let mut below: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bottoms: BTreeSet<usize> = BTreeSet::new();
    for &(top, bottom) in pairs {
        if top <= bottom || bottom == 0 || top > n {
            return Err(Error::InconsistentData(
                "a descent pair must satisfy n ≥ top > bottom ≥ 1".into(),
            ));
        }
        if below.insert(top, bottom).is_some() {
            return Err(Error::InconsistentData(
                "a letter can top at most one descent".into(),
            ));
        }
        if !bottoms.insert(bottom) {
            return Err(Error::InconsistentData(
                "a letter can bottom at most one descent".into(),
            ));
        }
    }
    let mut in_pair: BTreeSet<usize> = BTreeSet::new();
    for &(top, bottom) in pairs {
        in_pair.insert(top);
        in_pair.insert(bottom);
    }
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for (&head, _) in below.iter().filter(|(top, _)| !bottoms.contains(top)) {
        let mut run = vec![head];
        let mut cur = head;
        while let Some(&next) = below.get(&cur) {
            run.push(next);
            cur = next;
        }
        runs.push(run);
    }
    runs.extend((1..=n).filter(|v| !in_pair.contains(v)).map(|v| vec![v]));
    reconstruct_231_from_runs(&runs)
}

/// Rebuilds a 231-avoider of `[n]` from the data of
/// [`descent_top_counts`]: the pairs `(α, c_α)` for every descent top.
///
/// Tops with `c_α > 0` head a run with bottom `α − c_α`.  Tops with
/// `c_α = 0` are either interior letters of such a run — they belong to
/// the containing value window `(bottom, top)` with the largest bottom —
/// or they form the leading run, which always ends in the letter 1.
pub fn reconstruct_231_from_top_counts(
    data: &[(usize, usize)],
    n: usize,
) -> Result<Permutation> {
    for &(alpha, c) in data {
        if alpha < 2 || alpha > n || c + 2 > alpha {
            return Err(Error::InconsistentData(
                "a descent top α requires 2 ≤ α ≤ n and c ≤ α − 2".into(),
            ));
        }
    }
    let mut known: Vec<(usize, usize)> = data
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(alpha, c)| (alpha, alpha - c))
        .collect();
    known.sort_by_key(|&(_, bottom)| bottom);
    let mut interiors: Vec<Vec<usize>> = vec![Vec::new(); known.len()];
    let mut leftovers: Vec<usize> = Vec::new();
    for &(alpha, c) in data.iter().filter(|&&(_, c)| c == 0) {
        let _ = c;
        match known
            .iter()
            .rposition(|&(top, bottom)| bottom < alpha && alpha < top)
        {
            Some(j) => interiors[j].push(alpha),
            None => leftovers.push(alpha),
        }
    }
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for (j, &(top, bottom)) in known.iter().enumerate() {
        let mut run = vec![top];
        interiors[j].sort_unstable_by(|a, b| b.cmp(a));
        run.append(&mut interiors[j]);
        run.push(bottom);
        runs.push(run);
    }
    if !leftovers.is_empty() {
        leftovers.sort_unstable_by(|a, b| b.cmp(a));
        leftovers.push(1);
        runs.push(leftovers);
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for run in &runs {
        used.extend(run.iter().copied());
    }
    runs.extend((1..=n).filter(|v| !used.contains(v)).map(|v| vec![v]));
    let sigma = reconstruct_231_from_runs(&runs)?;
    let mut extracted = descent_top_counts(&sigma);
    extracted.sort_unstable();
    let mut given = data.to_vec();
    given.sort_unstable();
    if extracted != given {
        return Err(Error::InconsistentData(
            "the given counts are not realised by any 231-avoider".into(),
        ));
    }
    Ok(sigma)
}

// ----------------------------------------------------------------------
// foze → mak on S(231)
// ----------------------------------------------------------------------

/// Bijection on `S_n(231)` with `mak(φσ) = foze(σ)`, fixing the number of
/// descents.
///
/// Each descent top `α` of `σ` is sent to the descent pair
/// `(f(α), n − α + 1)` of the image, where
/// `f(α) = (n − α + 2) + c_α` and `c_α` counts the `⟨13⟩2`-occurrences
/// with middle letter `α`; the image is then rebuilt from its descent
/// pairs.
///
/// ```
/// use mahonia::bij::phi_231;
/// let sigma = "213".parse().unwrap();
/// assert_eq!(phi_231(&sigma).unwrap().to_string(), "132");
/// ```
pub fn phi_231(sigma: &Permutation) -> Result<Permutation> {
    ensure_avoids(sigma, &[2, 3, 1])?;
    let n = sigma.n();
    let pairs: Vec<(usize, usize)> = descent_top_counts(sigma)
        .into_iter()
        .map(|(alpha, c)| (n - alpha + 2 + c, n - alpha + 1))
        .collect();
    reconstruct_231_from_descent_pairs(&pairs, n)
}

/// Inverse of [`phi_231`]: reads the descent pairs `(p, q)` of `τ`, solves
/// `α = n − q + 1` and `c_α = p − (n − α + 2)`, and rebuilds the preimage
/// from its descent-top counts.
pub fn phi_231_inv(tau: &Permutation) -> Result<Permutation> {
    ensure_avoids(tau, &[2, 3, 1])?;
    let n = tau.n();
    let mut data = Vec::new();
    for (p, q) in descent_value_pairs(tau) {
        let alpha = n + 1 - q;
        let c = p.checked_sub(n - alpha + 2).ok_or_else(|| {
            Error::InconsistentData("descent pair outside the image of the map".into())
        })?;
        data.push((alpha, c));
    }
    reconstruct_231_from_top_counts(&data, n)
}

// ----------------------------------------------------------------------
// maj ↔ mak on S(123)
// ----------------------------------------------------------------------

/// Involution on `S_n(123)` exchanging `maj` and `mak`.
///
/// The members of `S_n(123)` with `(maj, mak) = (a, b)` are matched in
/// lexicographic order with the members with `(maj, mak) = (b, a)`.  The
/// matching relies on the joint `(maj, mak)` distribution over `S_n(123)`
/// being symmetric (machine-checked through `n = 7`); an asymmetric bucket
/// would surface as [`Error::InconsistentData`].
///
/// No profile-refined strengthening is possible: `312` is alone in its
/// ascent-profile class with `(maj, mak) = (1, 2)`, and `{4213, 3421}`
/// form a descent-profile class of `S_4(123)` with the asymmetric joint
/// values `{(3, 4), (5, 3)}`.
pub fn phi_123(sigma: &Permutation) -> Result<Permutation> {
    ensure_avoids(sigma, &[1, 2, 3])?;
    let n = sigma.n();
    if n <= 1 {
        return Ok(sigma.clone());
    }
    let mak = StatSpec::named("mak").expect("mak is a catalog statistic");
    let a = sigma.descent_profile().maj as i64;
    let b = mak.evaluate(sigma);
    if a == b {
        return Ok(sigma.clone());
    }
    let class = [classical(&[1, 2, 3])];
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for tau in enumerate_avoiders(n, &class) {
        let key = (tau.descent_profile().maj as i64, mak.evaluate(&tau));
        if key == (a, b) {
            forward.push(tau);
        } else if key == (b, a) {
            backward.push(tau);
        }
    }
    let k = forward
        .iter()
        .position(|tau| tau == sigma)
        .expect("σ lies in its own bucket");
    backward.into_iter().nth(k).ok_or_else(|| {
        Error::InconsistentData(
            "joint (maj, mak) distribution over the class is asymmetric".into(),
        )
    })
}

// ----------------------------------------------------------------------
// inv → mad via Dyck paths
// ----------------------------------------------------------------------

/// Bijection `S_n(321) → S_n(231)` with `mad(φσ) = inv(σ)`, assembled as
/// `Δ_{231}^{-1} ∘ Φ ∘ Ψ ∘ Γ`.
///
/// ```
/// use mahonia::bij::phi_inv_to_mad;
/// let sigma = "451623897".parse().unwrap();
/// assert_eq!(phi_inv_to_mad(&sigma).unwrap().to_string(), "615324978");
/// ```
pub fn phi_inv_to_mad(sigma: &Permutation) -> Result<Permutation> {
    let path = dyck::gamma(sigma)?;
    Ok(dyck::delta_inv(
        &dyck::phi_path(&dyck::psi(&path)),
        DeltaVariant::A231,
    ))
}

/// Inverse of [`phi_inv_to_mad`].
pub fn phi_inv_to_mad_inv(tau: &Permutation) -> Result<Permutation> {
    let path = dyck::delta(tau, DeltaVariant::A231)?;
    Ok(dyck::gamma_inv(&dyck::psi_inv(&dyck::phi_path_inv(&path))))
}

// ----------------------------------------------------------------------
// Column area ↔ row area on shortened polyominoes
// ----------------------------------------------------------------------

/// Involution on shortened polyomino pairs exchanging the column and row
/// area statistics while fixing the number of valleys: conjugates
/// [`phi_321`] by the labelling bijection onto `S(321)`.
pub fn phi_h(poly: &ShortenedPolyomino) -> Result<ShortenedPolyomino> {
    upsilon_inv(&phi_321(&poly.upsilon())?)
}

// ----------------------------------------------------------------------
