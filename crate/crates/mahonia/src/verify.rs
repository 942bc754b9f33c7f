//! Batch verification and discovery of equidistributions.
//!
//! An *equidistribution* is an identity `Σ_{σ∈S_n(Π1)} q^{stat1(σ)} =
//! Σ_{σ∈S_n(Π2)} q^{stat2(σ)}` holding for every `n`. This module checks
//! such identities exhaustively up to a bound ([`check_equidistribution`]),
//! scans all statistic/pattern pairs for them ([`scan_equidistributions`]),
//! partitions pattern sets into st-Wilf classes ([`st_wilf_classes`]), and
//! evaluates the closed forms known for the head statistic
//! ([`head_closed_form`]).
//!
//! A bundled manifest ([`equidistribution_manifest`]) lists every known
//! equidistribution cell between the fourteen catalog statistics over
//! single length-3 avoidance classes, each tagged `black` (proved) or `red`
//! (conjectured, verified numerically); scan output is annotated against
//! it, and the acceptance suite diffs the two mechanically.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cache::DistCache;
use crate::pattern::{enumerate_avoiders, VincularPattern};
use crate::perm::Permutation;
use crate::qpoly::QPoly;
use crate::stats::{distribution, CompiledStat, StatSpec, TriCounts};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Cached distributions
// ---------------------------------------------------------------------------

/// Canonical cache rendering of an avoidance class: sorted pattern
/// literals, comma-joined.
pub fn class_key(class: &[VincularPattern]) -> String {
    let mut parts: Vec<String> = class.iter().map(|p| p.to_string()).collect();
    parts.sort();
    parts.join(",")
}

/// `distribution` routed through the cache.
pub fn cached_distribution(
    cache: &DistCache,
    spec: &StatSpec,
    class: &[VincularPattern],
    n: usize,
) -> Result<QPoly> {
    let key = DistCache::distribution_key(&spec.to_string(), &class_key(class), n);
    cache.get_or_compute(&key, || distribution(spec, class, n))
}

// ---------------------------------------------------------------------------
// Pairwise equidistribution checks
// ---------------------------------------------------------------------------

/// One length's verdict within an equidistribution check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NVerdict {
    pub n: usize,
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub agree: bool,
}

/// The outcome of comparing two statistic/class distributions for all
/// `n ≤ nmax`.
#[derive(Clone, Debug, Serialize)]
pub struct EquidistributionResult {
    pub stat1: String,
    pub class1: String,
    pub stat2: String,
    pub class2: String,
    pub per_n: Vec<NVerdict>,
    /// Smallest `n` at which the polynomials differ, if any.
    pub first_disagreement: Option<usize>,
}

impl EquidistributionResult {
    /// True when every checked length agreed.
    pub fn holds(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares `Σ q^{stat1}` over `S_n(class1)` with `Σ q^{stat2}` over
/// `S_n(class2)` for `n = 1..=nmax`, exactly.
pub fn check_equidistribution(
    cache: &DistCache,
    stat1: &StatSpec,
    class1: &[VincularPattern],
    stat2: &StatSpec,
    class2: &[VincularPattern],
    nmax: usize,
) -> Result<EquidistributionResult> {
    let mut per_n = Vec::with_capacity(nmax);
    let mut first_disagreement = None;
    for n in 1..=nmax {
        let lhs = cached_distribution(cache, stat1, class1, n)?;
        let rhs = cached_distribution(cache, stat2, class2, n)?;
        let agree = lhs == rhs;
        if !agree && first_disagreement.is_none() {
            first_disagreement = Some(n);
        }
        per_n.push(NVerdict { n, lhs, rhs, agree });
    }
    Ok(EquidistributionResult {
        stat1: stat1.to_string(),
        class1: class_key(class1),
        stat2: stat2.to_string(),
        class2: class_key(class2),
        per_n,
        first_disagreement,
    })
}

// ---------------------------------------------------------------------------
// The bundled equidistribution table
// ---------------------------------------------------------------------------

/// Status tag of a manifest cell: `Black` cells are proved, `Red` cells
/// are conjectured (and numerically verified one length deeper).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifestTag {
    Black,
    Red,
}

impl ManifestTag {
    /// The length bound to which a cell of this tag is verified by the
    /// acceptance suite (proved cells to 9, conjectured cells to 10).
    pub fn verified_depth(self) -> usize {
        match self {
            ManifestTag::Black => 9,
            ManifestTag::Red => 10,
        }
    }
}

/// One cell of the bundled table: `stat1` over the single-pattern class
/// `pattern1` is equidistributed with `stat2` over `pattern2`.
///
/// Cells between distinct statistics are stored with `stat1` before `stat2`
/// in catalog order and the pattern pair oriented accordingly; same-statistic
/// cells carry `pattern1 < pattern2` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestCell {
    pub stat1: String,
    pub pattern1: String,
    pub stat2: String,
    pub pattern2: String,
    pub tag: ManifestTag,
}

static MANIFEST: OnceLock<Vec<ManifestCell>> = OnceLock::new();

/// The bundled equidistribution cells (116 in total).
pub fn equidistribution_manifest() -> &'static [ManifestCell] {
    MANIFEST.get_or_init(|| {
        serde_json::from_str(include_str!("../data/equidistribution_manifest.json"))
            .expect("bundled manifest parses")
    })
}

fn manifest_index() -> &'static BTreeMap<(String, String, String, String), ManifestTag> {
    static INDEX: OnceLock<BTreeMap<(String, String, String, String), ManifestTag>> =
        OnceLock::new();
    INDEX.get_or_init(|| {
        equidistribution_manifest()
            .iter()
            .map(|c| {
                (
                    (
                        c.stat1.clone(),
                        c.pattern1.clone(),
                        c.stat2.clone(),
                        c.pattern2.clone(),
                    ),
                    c.tag,
                )
            })
            .collect()
    })
}

/// Looks an oriented cell up in the manifest, in either orientation.
pub fn manifest_tag(stat1: &str, pattern1: &str, stat2: &str, pattern2: &str) -> Option<ManifestTag> {
    let index = manifest_index();
    index
        .get(&(
            stat1.to_string(),
            pattern1.to_string(),
            stat2.to_string(),
            pattern2.to_string(),
        ))
        .or_else(|| {
            index.get(&(
                stat2.to_string(),
                pattern2.to_string(),
                stat1.to_string(),
                pattern1.to_string(),
            ))
        })
        .copied()
}

// ---------------------------------------------------------------------------
// Scanning
// ---------------------------------------------------------------------------

/// A statistic/pattern pair found equidistributed by the scanner, annotated
/// against the bundled manifest (`tag = None` means the pair is absent from
/// it).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFinding {
    pub stat1: String,
    pub pattern1: Permutation,
    pub stat2: String,
    pub pattern2: Permutation,
    pub tag: Option<ManifestTag>,
}

/// Computes the distributions of all `specs` over `S_n(pattern)` in a
/// single enumeration pass.
fn distributions_one_pass(
    specs: &[(String, StatSpec)],
    pattern: &VincularPattern,
    n: usize,
) -> Result<Vec<QPoly>> {
    let compiled: Vec<CompiledStat> = specs.iter().map(|(_, s)| CompiledStat::new(s)).collect();
    let mut polys = vec![QPoly::zero(); specs.len()];
    let one = BigInt::from(1);
    for sigma in enumerate_avoiders(n, std::slice::from_ref(pattern)) {
        let counts = TriCounts::compute(sigma.values());
        for (poly, stat) in polys.iter_mut().zip(&compiled) {
            let value = stat.eval_with_counts(&counts, &sigma);
            let k = usize::try_from(value).map_err(|_| Error::NegativeStatistic { value })?;
            poly.add_term(&one, k);
        }
    }
    Ok(polys)
}

/// Finds every pair `(stat1, π1, stat2, π2)` whose distributions agree for
/// all `n = 1..=nmax`, over the given statistics and single-pattern
/// avoidance classes.
///
/// Cells are canonicalized like the manifest: `stat1` at or before `stat2`
/// in the input order, and for same-statistic cells `π1 < π2`. All
/// distributions for one `(π, n)` are computed in one enumeration pass and
/// cached individually.
pub fn scan_equidistributions(
    cache: &DistCache,
    stats: &[&str],
    patterns: &[Permutation],
    nmax: usize,
) -> Result<Vec<ScanFinding>> {
    let specs: Vec<(String, StatSpec)> = stats
        .iter()
        .map(|name| Ok((name.to_string(), StatSpec::named(name)?)))
        .collect::<Result<_>>()?;
    // dists[pat_idx][stat_idx] = distributions for n = 1..=nmax.
    let mut dists: Vec<Vec<Vec<QPoly>>> =
        vec![vec![Vec::with_capacity(nmax); specs.len()]; patterns.len()];
    for (pi, pat) in patterns.iter().enumerate() {
        let vpat = VincularPattern::classical(pat.clone());
        let class = std::slice::from_ref(&vpat);
        let ck = class_key(class);
        for n in 1..=nmax {
            let keys: Vec<String> = specs
                .iter()
                .map(|(_, s)| DistCache::distribution_key(&s.to_string(), &ck, n))
                .collect();
            let mut cached: Vec<Option<QPoly>> = Vec::with_capacity(specs.len());
            for key in &keys {
                cached.push(cache.lookup(key)?);
            }
            let row: Vec<QPoly> = if cached.iter().all(Option::is_some) {
                cached.into_iter().map(|c| c.expect("checked")).collect()
            } else {
                let fresh = distributions_one_pass(&specs, &vpat, n)?;
                for (key, poly) in keys.iter().zip(&fresh) {
                    cache.publish(key, poly)?;
                }
                fresh
            };
            for (si, poly) in row.into_iter().enumerate() {
                dists[pi][si].push(poly);
            }
        }
    }
    let mut findings = Vec::new();
    for i1 in 0..specs.len() {
        for i2 in i1..specs.len() {
            for (p1, pat1) in patterns.iter().enumerate() {
                for (p2, pat2) in patterns.iter().enumerate() {
                    let same_stat = i1 == i2;
                    if same_stat && pat1 >= pat2 {
                        continue;
                    }
                    if dists[p1][i1] == dists[p2][i2] {
                        findings.push(ScanFinding {
                            stat1: specs[i1].0.clone(),
                            pattern1: pat1.clone(),
                            stat2: specs[i2].0.clone(),
                            pattern2: pat2.clone(),
                            tag: manifest_tag(
                                &specs[i1].0,
                                &pat1.to_string(),
                                &specs[i2].0,
                                &pat2.to_string(),
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(findings)
}

/// The six classical patterns of length 3, lexicographically.
pub fn s3_singletons() -> Vec<Permutation> {
    ["123", "132", "213", "231", "312", "321"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// All `k`-element subsets of the length-3 patterns, each subset and the
/// list itself in lexicographic order.
pub fn s3_subsets(k: usize) -> Vec<Vec<Permutation>> {
    let base = s3_singletons();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Permutation>)> = vec![(0, Vec::new())];
    while let Some((from, chosen)) = stack.pop() {
        if chosen.len() == k {
            out.push(chosen);
            continue;
        }
        // Depth-first in reverse so the output is lexicographic.
        for i in (from..base.len()).rev() {
            let mut next = chosen.clone();
            next.push(base[i].clone());
            stack.push((i + 1, next));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// st-Wilf classification
// ---------------------------------------------------------------------------

/// A partition of pattern sets into st-Wilf classes: sets whose statistic
/// distributions agree for every `n ≤ nmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfPartition {
    pub stat: String,
    pub nmax: usize,
    /// Each class lists its member pattern sets; classes are ordered by
    /// their first member.
    pub classes: Vec<Vec<Vec<Permutation>>>,
}

/// Partitions `pattern_sets` by exact distribution equality of `stat` for
/// all `n = 1..=nmax`.
pub fn st_wilf_classes(
    cache: &DistCache,
    stat: &StatSpec,
    pattern_sets: &[Vec<Permutation>],
    nmax: usize,
) -> Result<WilfPartition> {
    let mut groups: BTreeMap<String, Vec<Vec<Permutation>>> = BTreeMap::new();
    for set in pattern_sets {
        let class: Vec<VincularPattern> = set
            .iter()
            .map(|p| VincularPattern::classical(p.clone()))
            .collect();
        let mut signature = Vec::with_capacity(nmax);
        for n in 1..=nmax {
            signature.push(cached_distribution(cache, stat, &class, n)?);
        }
        let key = serde_json::to_string(&signature).expect("polynomials serialize");
        groups.entry(key).or_default().push(set.clone());
    }
    let mut classes: Vec<Vec<Vec<Permutation>>> = groups.into_values().collect();
    classes.sort_by(|a, b| a.first().cmp(&b.first()));
    Ok(WilfPartition {
        stat: stat.to_string(),
        nmax,
        classes,
    })
}

// ---------------------------------------------------------------------------
// Closed forms for the head statistic
// ---------------------------------------------------------------------------

/// The avoidance classes whose head distribution has a known closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadFamily {
    /// 123-avoiders: ballot-number coefficients.
    Avoid123,
    /// 213-avoiders: Catalan convolution coefficients.
    Avoid213,
    /// {123, 213}-avoiders: powers of two.
    Avoid123And213,
}

/// The ballot number `C_{n,k} = (n-k+1)/(n+1) · binom(n+k, n)`.
fn ballot(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let mut binom: i64 = 1;
    // binom(n+k, n) = binom(n+k, k)
    for i in 1..=k {
        binom = binom * (n + i) / i;
    }
    let value = binom * (n - k + 1);
    assert!(value % (n + 1) == 0, "ballot number division is exact");
    value / (n + 1)
}

/// The Catalan number `C_k`.
fn catalan(k: usize) -> i64 {
    ballot(k, k)
}

/// The closed-form head distribution `Σ_σ q^{head(σ)}` over the family's
/// length-`n` class.
pub fn head_closed_form(n: usize, family: HeadFamily) -> QPoly {
    assert!(n >= 1, "closed forms start at length 1");
    let mut coeffs = vec![0i64; n + 1];
    match family {
        HeadFamily::Avoid123 => {
            for k in 1..=n {
                coeffs[k] = ballot(n - 1, k - 1);
            }
        }
        HeadFamily::Avoid213 => {
            for k in 1..=n {
                coeffs[k] = catalan(k - 1) * catalan(n - k);
            }
        }
        HeadFamily::Avoid123And213 => {
            coeffs[1] = 1;
            for k in 2..=n {
                coeffs[k] = 1 << (k - 2);
            }
        }
    }
    QPoly::from_i64_slice(&coeffs)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Vec<VincularPattern> {
        vec![s.parse().unwrap()]
    }

    fn spec(name: &str) -> StatSpec {
        StatSpec::named(name).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn equidistribution_examples() {
        let cache = DistCache::in_memory();
        // maj over 231-avoiders matches den over 321-avoiders.
        let ok = check_equidistribution(
            &cache,
            &spec("maj"),
            &pat("231"),
            &spec("den"),
            &pat("321"),
            6,
        )
        .unwrap();
        assert!(ok.holds(), "maj/231 vs den/321");
        // maj and inv part ways over 132-avoiders at n = 3.
        let bad = check_equidistribution(
            &cache,
            &spec("maj"),
            &pat("132"),
            &spec("inv"),
            &pat("132"),
            3,
        )
        .unwrap();
        assert_eq!(bad.first_disagreement, Some(3));
        let verdict = &bad.per_n[2];
        assert_eq!(verdict.lhs, QPoly::from_i64_slice(&[1, 2, 1, 1]));
        assert_eq!(verdict.rhs, QPoly::from_i64_slice(&[1, 1, 2, 1]));
        // Reflexivity.
        let refl = check_equidistribution(
            &cache,
            &spec("sist3"),
            &pat("312"),
            &spec("sist3"),
            &pat("312"),
            5,
        )
        .unwrap();
        assert!(refl.holds());
    }

    #[test]
    fn manifest_loads_and_spot_checks() {
        let cells = equidistribution_manifest();
        assert_eq!(cells.len(), 116);
        let blacks = cells.iter().filter(|c| c.tag == ManifestTag::Black).count();
        assert_eq!(blacks, 66);
        assert_eq!(cells.len() - blacks, 50);
        assert_eq!(
            manifest_tag("maj", "123", "mak", "123"),
            Some(ManifestTag::Black)
        );
        assert_eq!(
            manifest_tag("mak", "132", "makl", "231"),
            Some(ManifestTag::Red)
        );
        // Reverse orientation resolves too.
        assert_eq!(
            manifest_tag("makl", "132", "makl", "231"),
            None,
            "no such diagonal cell"
        );
        assert_eq!(
            manifest_tag("bast2", "132", "makl", "231"),
            Some(ManifestTag::Red),
            "(makl, 231, bast2, 132) looked up reversed"
        );
        assert_eq!(manifest_tag("maj", "123", "maj", "132"), None);
    }

    #[test]
    fn scanner_covers_manifest_at_small_depth() {
        let cache = DistCache::in_memory();
        let stats: Vec<&str> = crate::stats::catalog_names().to_vec();
        let findings =
            scan_equidistributions(&cache, &stats, &s3_singletons(), 6).unwrap();
        // At depth 6 every manifest cell must already appear...
        for cell in equidistribution_manifest() {
            assert!(
                findings.iter().any(|f| {
                    f.stat1 == cell.stat1
                        && f.stat2 == cell.stat2
                        && f.pattern1.to_string() == cell.pattern1
                        && f.pattern2.to_string() == cell.pattern2
                }),
                "manifest cell missing from scan: {cell:?}"
            );
        }
        // ... and every finding matching a manifest key carries its tag.
        for f in &findings {
            assert_eq!(
                f.tag,
                manifest_tag(
                    &f.stat1,
                    &f.pattern1.to_string(),
                    &f.stat2,
                    &f.pattern2.to_string()
                )
            );
        }
    }

    #[test]
    fn wilf_classes_for_mak_inv_head() {
        let cache = DistCache::in_memory();
        let singles = s3_subsets(1);
        let classes_of = |stat: &str| {
            st_wilf_classes(&cache, &spec(stat), &singles, 6)
                .unwrap()
                .classes
                .into_iter()
                .map(|class| {
                    class
                        .into_iter()
                        .map(|set| set[0].to_string())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(
            classes_of("mak"),
            vec![
                vec!["123".to_string()],
                vec!["132".to_string(), "312".to_string()],
                vec!["213".to_string(), "231".to_string()],
                vec!["321".to_string()],
            ]
        );
        assert_eq!(
            classes_of("inv"),
            vec![
                vec!["123".to_string()],
                vec!["132".to_string(), "213".to_string()],
                vec!["231".to_string(), "312".to_string()],
                vec!["321".to_string()],
            ]
        );
        assert_eq!(
            classes_of("head"),
            vec![
                vec!["123".to_string(), "132".to_string()],
                vec!["213".to_string(), "231".to_string()],
                vec!["312".to_string(), "321".to_string()],
            ]
        );
    }

    #[test]
    fn subset_generation() {
        assert_eq!(s3_subsets(1).len(), 6);
        assert_eq!(s3_subsets(2).len(), 15);
        assert_eq!(s3_subsets(3).len(), 20);
        assert_eq!(s3_subsets(2)[0], vec![perm("123"), perm("132")]);
        assert_eq!(
            s3_subsets(3)[19],
            vec![perm("231"), perm("312"), perm("321")]
        );
    }

    #[test]
    fn head_closed_forms_match_enumeration() {
        assert_eq!(
            head_closed_form(3, HeadFamily::Avoid123),
            QPoly::from_i64_slice(&[0, 1, 2, 2])
        );
        assert_eq!(
            head_closed_form(3, HeadFamily::Avoid213),
            QPoly::from_i64_slice(&[0, 2, 1, 2])
        );
        assert_eq!(
            head_closed_form(1, HeadFamily::Avoid123And213),
            QPoly::from_i64_slice(&[0, 1])
        );
        let head = spec("head");
        for n in 1..=7 {
            assert_eq!(
                head_closed_form(n, HeadFamily::Avoid123),
                distribution(&head, &pat("123"), n).unwrap(),
                "123-avoiders at n = {n}"
            );
            assert_eq!(
                head_closed_form(n, HeadFamily::Avoid213),
                distribution(&head, &pat("213"), n).unwrap(),
                "213-avoiders at n = {n}"
            );
            let both = vec![
                "123".parse::<VincularPattern>().unwrap(),
                "213".parse::<VincularPattern>().unwrap(),
            ];
            assert_eq!(
                head_closed_form(n, HeadFamily::Avoid123And213),
                distribution(&head, &both, n).unwrap(),
                "{{123,213}}-avoiders at n = {n}"
            );
        }
    }
}
