//! Property-based invariants: randomized checks of the structural contracts
//! that the unit and acceptance suites pin only at fixed sizes — literal
//! round-trips, profile consistency, symmetry transport of pattern counts,
//! ring axioms of the exact polynomials, and the bijection identities
//! stressed on random class elements beyond the exhaustive ranges.

use std::collections::BTreeSet;

use proptest::prelude::*;

use mahonia::bij::{
    lr_minima, phi_123, phi_132, phi_231, phi_321, phi_h, phi_inv_to_mad, simion_schmidt,
    simion_schmidt_inv,
};
use mahonia::cache::DistCache;
use mahonia::dyck::{
    delta, delta_inv, delta_pair, delta_pair_inv, gamma, gamma_inv, lambda, lambda_inv,
    omega_stump, path_statistics, peak_position_weight, phi_path, phi_path_inv, psi, psi_inv,
    theta, theta_inv, valley_position_weight, DeltaVariant, DyckPath, Step,
};
use mahonia::pattern::{avoids, enumerate_avoiders};
use mahonia::perm::{apply_trivial, inflate, Permutation};
use mahonia::polyomino::enumerate_polyominoes;
use mahonia::qpoly::{q_binomial, q_factorial, q_int, QPoly};
use mahonia::qseries::{pascal, MultiPoly, Var};
use mahonia::stats::{
    catalog_names, distribution, distribution_refined, CompiledStat, Mark, StatSpec, TriCounts,
};
use mahonia::verify::{class_key, manifest_tag, equidistribution_manifest};
use mahonia::VincularPattern;

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A uniformly shuffled permutation of `[n]` for `n ≤ max_n`.
fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).expect("shuffle of [n]"))
    })
}

/// A valid Dyck path of semilength `≤ max_sl`: shuffle `U^n D^n`, then repair
/// each prefix violation by pulling the next up-step forward.
fn dyck(max_sl: usize) -> impl Strategy<Value = DyckPath> {
    (0..=max_sl).prop_flat_map(|n| {
        let word: Vec<Step> = std::iter::repeat_n(Step::U, n)
            .chain(std::iter::repeat_n(Step::D, n))
            .collect();
        Just(word).prop_shuffle().prop_map(|mut w| {
            let mut h = 0i64;
            for i in 0..w.len() {
                if w[i] == Step::D && h == 0 {
                    let j = (i + 1..w.len()).find(|&j| w[j] == Step::U).expect("balanced");
                    w.swap(i, j);
                }
                h += if w[i] == Step::U { 1 } else { -1 };
            }
            DyckPath::new(w).expect("repaired ballot word")
        })
    })
}

/// A vincular pattern with random adjacency blocks, anchors and value
/// restrictions.
fn vincular(max_m: usize) -> impl Strategy<Value = VincularPattern> {
    perm(max_m)
        .prop_filter("nonempty pattern", |p| !p.is_empty())
        .prop_flat_map(|pi| {
            let m = pi.n();
            (
                Just(pi),
                proptest::collection::btree_set(0..=m, 0..=m),
                proptest::collection::vec(proptest::option::weighted(0.2, 0usize..=3), m),
            )
        })
        .prop_map(|(pi, x, upsilon)| VincularPattern::new(pi, x, upsilon).expect("valid components"))
}

/// One of the six classical length-3 patterns.
fn classical3() -> impl Strategy<Value = VincularPattern> {
    prop::sample::select(vec!["123", "132", "213", "231", "312", "321"])
        .prop_map(|s| s.parse().expect("classical literal"))
}

fn stat(name: &str) -> StatSpec {
    StatSpec::named(name).expect("catalog name")
}

fn value(spec: &StatSpec, sigma: &Permutation) -> i64 {
    spec.evaluate(sigma)
}

// ---------------------------------------------------------------------------
// Permutations: literals, symmetries, profiles
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn perm_literal_round_trip(sigma in perm(12)) {
        // Covers both the juxtaposed (n ≤ 9) and comma-separated formats.
        let rendered = sigma.to_string();
        prop_assert_eq!(rendered.parse::<Permutation>().unwrap(), sigma);
    }

    #[test]
    fn trivial_symmetries_form_a_dihedral_group(sigma in perm(9)) {
        for word in ["rr", "cc", "ii"] {
            prop_assert_eq!(&apply_trivial(word, &sigma).unwrap(), &sigma, "{}", word);
        }
        // reverse and complement commute; conjugating inverse by reverse
        // gives inverse-then-complement (the diagram's quarter turns).
        prop_assert_eq!(
            apply_trivial("rc", &sigma).unwrap(),
            apply_trivial("cr", &sigma).unwrap()
        );
        prop_assert_eq!(
            apply_trivial("ri", &sigma).unwrap(),
            apply_trivial("ic", &sigma).unwrap()
        );
        prop_assert_eq!(apply_trivial("reverse", &sigma).unwrap(), sigma.reverse());
        prop_assert_eq!(apply_trivial("complement", &sigma).unwrap(), sigma.complement());
        prop_assert_eq!(apply_trivial("inverse", &sigma).unwrap(), sigma.inverse());
    }

    #[test]
    fn descent_profile_is_consistent(sigma in perm(10)) {
        let p = sigma.descent_profile();
        let n = sigma.n();
        prop_assert_eq!(p.des, p.des_set.len());
        prop_assert_eq!(p.des_set.len(), p.db.len());
        prop_assert_eq!(p.des_set.len(), p.dt.len());
        // Des ⊎ Asc = [n−1].
        let mut all: Vec<usize> = p.des_set.iter().chain(&p.asc_set).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (1..n).collect::<Vec<_>>());
        prop_assert_eq!(p.maj, p.des_set.iter().sum::<usize>());
        prop_assert_eq!(p.maj as i64, value(&stat("maj"), &sigma));
        // Bottom/top sets recompute from the positions.
        let dt: BTreeSet<usize> = p.des_set.iter().map(|&i| sigma.at(i)).collect();
        let db: BTreeSet<usize> = p.des_set.iter().map(|&i| sigma.at(i + 1)).collect();
        prop_assert_eq!(p.dt.iter().copied().collect::<BTreeSet<_>>(), dt);
        prop_assert_eq!(p.db.iter().copied().collect::<BTreeSet<_>>(), db);
    }

    #[test]
    fn extrema_profile_is_consistent(sigma in perm(10)) {
        let p = sigma.extrema_profile();
        prop_assert_eq!(p.lrmax, p.lrmax_set.len());
        prop_assert_eq!(p.lrmin, p.lrmin_set.len());
        if !sigma.is_empty() {
            prop_assert_eq!(*p.lrmax_set.first().unwrap(), sigma.at(1));
            prop_assert_eq!(*p.lrmin_set.first().unwrap(), sigma.at(1));
            prop_assert_eq!(*p.lrmax_set.last().unwrap(), sigma.n());
            prop_assert_eq!(*p.lrmin_set.last().unwrap(), 1);
        }
        // Position order is ascending in value for maxima, descending for minima.
        prop_assert!(p.lrmax_set.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(p.lrmin_set.windows(2).all(|w| w[0] > w[1]));
        // Independent recomputation of the maxima.
        let mut best = 0;
        let mut lrmax = Vec::new();
        for &x in sigma.values() {
            if x > best {
                best = x;
                lrmax.push(x);
            }
        }
        prop_assert_eq!(p.lrmax_set, lrmax);
    }

    #[test]
    fn inversion_count_agrees_everywhere(sigma in perm(9)) {
        let n = sigma.n();
        let inv = sigma.inversions();
        let p21: VincularPattern = "21".parse().unwrap();
        let p12: VincularPattern = "12".parse().unwrap();
        prop_assert_eq!(p21.count(&sigma), inv);
        prop_assert_eq!(p12.count(&sigma) + inv, n * n.saturating_sub(1) / 2);
        prop_assert_eq!(value(&stat("inv"), &sigma), inv as i64);
        // inv is invariant under inversion and complemented by reversal.
        prop_assert_eq!(sigma.inverse().inversions(), inv);
        prop_assert_eq!(sigma.reverse().inversions() + inv, n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn pattern_of_flattens_order_isomorphically(sigma in perm(9), k in 0usize..=9) {
        let k = k.min(sigma.n());
        let word = &sigma.values()[..k];
        let flat = Permutation::pattern_of(word);
        prop_assert_eq!(flat.n(), k);
        for i in 0..k {
            for j in i + 1..k {
                prop_assert_eq!(word[i] < word[j], flat.at(i + 1) < flat.at(j + 1));
            }
        }
        prop_assert_eq!(Permutation::pattern_of(sigma.values()), sigma);
    }

    #[test]
    fn inflation_by_singletons_is_identity(tau in perm(7)) {
        let blocks: Vec<Permutation> = (0..tau.n()).map(|_| Permutation::identity(1)).collect();
        prop_assert_eq!(inflate(&tau, &blocks).unwrap(), tau);
    }

    #[test]
    fn inflation_adds_block_lengths(
        (tau, sizes) in perm(4).prop_flat_map(|tau| {
            let n = tau.n();
            (Just(tau), proptest::collection::vec(0usize..=3, n..=n))
        }),
    ) {
        let blocks: Vec<Permutation> = sizes.iter().map(|&s| Permutation::identity(s)).collect();
        let total: usize = sizes.iter().sum();
        prop_assert_eq!(inflate(&tau, &blocks).unwrap().n(), total);
    }
}

// ---------------------------------------------------------------------------
// Patterns: literals, occurrence contracts, symmetry transport
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn pattern_literal_round_trip(p in vincular(4)) {
        let rendered = p.to_string();
        prop_assert_eq!(&rendered.parse::<VincularPattern>().unwrap(), &p, "{}", rendered);
    }

    #[test]
    fn occurrences_satisfy_the_occurrence_contract(p in vincular(3), sigma in perm(7)) {
        let occs = p.occurrences(&sigma);
        prop_assert_eq!(occs.len(), p.count(&sigma));
        prop_assert_eq!(occs.is_empty(), avoids(&sigma, std::slice::from_ref(&p)));
        let m = p.len();
        for occ in &occs {
            let pos = &occ.positions;
            prop_assert_eq!(pos.len(), m);
            prop_assert!(pos.windows(2).all(|w| w[0] < w[1]));
            // Order isomorphism with the pattern letters.
            let word: Vec<usize> = pos.iter().map(|&i| sigma.at(i)).collect();
            prop_assert_eq!(Permutation::pattern_of(&word), p.pi().clone());
            // Adjacency: an interior marker j forces consecutive positions;
            // the anchors force the first / last slot to the boundary.
            for &j in p.adjacency_set() {
                if j == 0 {
                    prop_assert_eq!(pos[0], 1);
                } else if j == m {
                    prop_assert_eq!(pos[m - 1], sigma.n());
                } else {
                    prop_assert_eq!(pos[j] - pos[j - 1], 1);
                }
            }
            // Value restrictions pin the letter of σ at the slot.
            for (j, r) in p.restrictions().iter().enumerate() {
                if let Some(v) = r {
                    prop_assert_eq!(word[j], *v);
                }
            }
        }
    }

    #[test]
    fn classical_counts_transport_along_symmetries(p in classical3(), sigma in perm(8)) {
        let pi = p.pi().clone();
        let count = p.count(&sigma);
        let rev = VincularPattern::classical(pi.reverse());
        let comp = VincularPattern::classical(pi.complement());
        let inv = VincularPattern::classical(pi.inverse());
        prop_assert_eq!(rev.count(&sigma.reverse()), count);
        prop_assert_eq!(comp.count(&sigma.complement()), count);
        prop_assert_eq!(inv.count(&sigma.inverse()), count);
    }

    #[test]
    fn avoider_stream_equals_brute_filter(
        patterns in proptest::collection::btree_set(prop::sample::select(vec!["123", "132", "213", "231", "312", "321"]), 1..=2),
        n in 0usize..=6,
    ) {
        let class: Vec<VincularPattern> =
            patterns.iter().map(|s| s.parse().unwrap()).collect();
        let streamed: Vec<Permutation> = enumerate_avoiders(n, &class).collect();
        let brute: Vec<Permutation> = enumerate_avoiders(n, &[])
            .filter(|s| avoids(s, &class))
            .collect();
        let set: BTreeSet<&Permutation> = streamed.iter().collect();
        prop_assert_eq!(set.len(), streamed.len(), "stream yields duplicates");
        prop_assert_eq!(set, brute.iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn single_pattern_classes_are_catalan(p in classical3(), n in 0usize..=7) {
        const CATALAN: [usize; 8] = [1, 1, 2, 5, 14, 42, 132, 429];
        let class = [p];
        prop_assert_eq!(enumerate_avoiders(n, &class).count(), CATALAN[n]);
    }
}

// ---------------------------------------------------------------------------
// Statistics: compiled evaluation, linearity, distribution mass
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn compiled_evaluation_matches_interpreted(
        name in prop::sample::select(catalog_names().to_vec()),
        sigma in perm(8),
    ) {
        let spec = stat(name);
        let compiled = CompiledStat::new(&spec);
        let counts = TriCounts::compute(sigma.values());
        let direct = spec.evaluate(&sigma);
        prop_assert_eq!(compiled.eval(&sigma), direct);
        prop_assert_eq!(compiled.eval_with_counts(&counts, &sigma), direct);
    }

    #[test]
    fn linear_combos_evaluate_linearly(
        entries in proptest::collection::btree_map(
            prop::sample::select(vec!["1<32>", "2<31>", "<31>2", "<13>2", "3<21>", "<21>"]),
            (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
            1..=3,
        ),
        sigma in perm(7),
    ) {
        let map: std::collections::BTreeMap<VincularPattern, i64> = entries
            .iter()
            .map(|(lit, &c)| (lit.parse().unwrap(), c))
            .collect();
        let spec = StatSpec::Linear(map.clone());
        let expected: i64 = map
            .iter()
            .map(|(p, &c)| c * p.count(&sigma) as i64)
            .sum();
        prop_assert_eq!(spec.evaluate(&sigma), expected);
    }

    #[test]
    fn distributions_have_class_mass(
        name in prop::sample::select(catalog_names().to_vec()),
        p in classical3(),
        n in 0usize..=6,
    ) {
        const CATALAN: [usize; 7] = [1, 1, 2, 5, 14, 42, 132];
        let class = [p];
        let dist = distribution(&stat(name), &class, n).unwrap();
        use num_traits::Zero;
        let zero = num_bigint::BigInt::zero();
        prop_assert!(dist.coeffs().iter().all(|c| *c >= zero));
        if let Some(d) = dist.degree() {
            prop_assert!(!dist.coeff(d).is_zero());
        }
        prop_assert_eq!(dist.eval_at_one(), CATALAN[n].into());
    }

    #[test]
    fn refined_distribution_collapses_to_plain(
        name in prop::sample::select(vec!["maj", "inv", "mak", "foze"]),
        marks in proptest::collection::btree_set(prop::sample::select(Mark::ALL.to_vec()), 0..=2),
        n in 0usize..=5,
    ) {
        let spec = stat(name);
        let marks: Vec<Mark> = marks.into_iter().collect();
        let refined = distribution_refined(&spec, &[], n, &marks).unwrap();
        let mut collapsed = QPoly::zero();
        for fiber in refined.values() {
            collapsed += fiber;
        }
        prop_assert_eq!(collapsed, distribution(&spec, &[], n).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Exact polynomials: ring axioms, Gaussian binomials, multivariate algebra
// ---------------------------------------------------------------------------

fn qpoly_strategy() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec(-5i64..=5, 0..=5).prop_map(|c| QPoly::from_i64_slice(&c))
}

fn multipoly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (proptest::array::uniform5(0i64..=3), (-4i64..=4).prop_filter("nonzero", |c| *c != 0)),
        0..=4,
    )
    .prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    })
}

fn eval_multipoly(p: &MultiPoly, point: [i64; 5]) -> i64 {
    p.terms()
        .map(|(exps, &c)| {
            c * exps
                .iter()
                .zip(point)
                .map(|(&e, x)| x.pow(u32::try_from(e).expect("nonnegative exponent")))
                .product::<i64>()
        })
        .sum()
}

proptest! {
    #[test]
    fn qpoly_ring_axioms(a in qpoly_strategy(), b in qpoly_strategy(), c in qpoly_strategy()) {
        use num_traits::Zero;
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        // Normalization: the top coefficient is never zero.
        for p in [&a, &b, &(&a + &b), &(&a * &b)] {
            if let Some(d) = p.degree() {
                prop_assert!(!p.coeff(d).is_zero());
            }
        }
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), a);
        }
    }

    #[test]
    fn gaussian_binomials_behave(n in 0usize..=10, k in 0usize..=10) {
        prop_assume!(k <= n);
        let b = q_binomial(n, k);
        prop_assert_eq!(&b, &q_binomial(n, n - k));
        prop_assert_eq!(b.eval_at_one(), pascal(11).get(n, k).into());
        if n >= 1 && k >= 1 && k < n {
            // q-Pascal recurrence with the q^k weight on the upper branch.
            let rec = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).shifted(k);
            prop_assert_eq!(b, rec);
        }
        if n >= 1 {
            prop_assert_eq!(q_factorial(n), &q_factorial(n - 1) * &q_int(n));
        }
    }

    #[test]
    fn multipoly_substitution_commutes_with_evaluation(
        p in multipoly_strategy(),
        point in proptest::array::uniform5(-2i64..=2),
    ) {
        // t ← q as a monomial substitution, then evaluate: the same as
        // evaluating the original with the t-coordinate set to q's value.
        let substituted = p.substitute_monomial(Var::T, &[(Var::Q, 1)]);
        let [q, _, u, v, z] = point;
        prop_assert_eq!(
            eval_multipoly(&substituted, [q, 1, u, v, z]),
            eval_multipoly(&p, [q, q, u, v, z])
        );
        // Normalization: stored terms are never zero.
        prop_assert!(p.terms().all(|(_, &c)| c != 0));
        let mut cancel = p.clone();
        for (exps, c) in p.terms() {
            cancel.add_term(*exps, -c);
        }
        prop_assert!(cancel.is_zero());
    }
}

// ---------------------------------------------------------------------------
// Dyck paths: literals, step statistics, bijection round-trips
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn dyck_literal_round_trip_and_validity(path in dyck(10)) {
        let rendered = path.to_string();
        prop_assert_eq!(&rendered.parse::<DyckPath>().unwrap(), &path);
        // Ballot validity and the tunnel pairing.
        let h = path.heights();
        prop_assert_eq!(h.last().copied().unwrap_or(0), 0);
        let partner = path.matching();
        for (i, &j) in partner.iter().enumerate() {
            prop_assert_eq!(partner[j], i);
            prop_assert_ne!(path.steps()[i], path.steps()[j]);
            // Tunnels have even length.
            prop_assert_eq!(i.abs_diff(j) % 2, 1);
        }
    }

    #[test]
    fn path_statistics_are_structurally_consistent(path in dyck(10)) {
        let s = path_statistics(&path);
        let n = path.semilength() as i64;
        // Every up-step is a double rise or a peak; every down-step follows
        // a peak or closes a double descent; every non-final down-step opens
        // a valley or a double descent.
        prop_assert_eq!(s.dr + s.npea, n);
        prop_assert_eq!(s.dd + s.npea, n);
        if n > 0 {
            prop_assert_eq!(s.dd + s.nval, n - 1);
            prop_assert_eq!(s.npea, s.nval + 1);
        }
        // Each valley tunnel has half-length at least one.
        prop_assert!(s.stun >= s.nval);
        // Matched steps share their lower endpoint, so the half-height sums
        // over up-steps and down-steps coincide.
        prop_assert_eq!(s.sht, s.sdowns);
        for v in [s.spea, s.stun, s.umass, s.dmass, s.area, s.beta] {
            prop_assert!(v >= 0);
        }
        prop_assert!(valley_position_weight(&path) >= 0);
        prop_assert!(peak_position_weight(&path) >= 0);
    }

    #[test]
    fn dyck_bijections_round_trip(path in dyck(9)) {
        prop_assert_eq!(psi_inv(&psi(&path)), path.clone());
        prop_assert_eq!(phi_path_inv(&phi_path(&path)), path.clone());
        prop_assert_eq!(theta_inv(&theta(&path)), path.clone());
        prop_assert_eq!(lambda_inv(&lambda(&path)), path.clone());
        prop_assert_eq!(gamma(&gamma_inv(&path)).unwrap(), path.clone());
        for variant in [DeltaVariant::A231, DeltaVariant::A312, DeltaVariant::A132] {
            let sigma = delta_inv(&path, variant);
            prop_assert_eq!(delta(&sigma, variant).unwrap(), path.clone());
        }
    }

    #[test]
    fn arch_composition_round_trips(a in dyck(5), b in dyck(5)) {
        let joined = delta_pair(&a, &b);
        prop_assert_eq!(joined.semilength(), a.semilength() + b.semilength() + 1);
        prop_assert_eq!(delta_pair_inv(&joined), (a, b));
    }
}

// ---------------------------------------------------------------------------
// Bijective transport on random class elements (beyond the exhaustive range)
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn transports_hold_on_random_321_avoiders(path in dyck(11)) {
        let sigma = gamma_inv(&path);
        let p321: VincularPattern = "321".parse().unwrap();
        prop_assert!(avoids(&sigma, std::slice::from_ref(&p321)));
        // Γ carries inv to the peak-height sum and the maxima count to the
        // peak count; its peak weight recovers Denert's statistic.
        let s = path_statistics(&path);
        prop_assert_eq!(value(&stat("inv"), &sigma), s.spea);
        prop_assert_eq!(sigma.extrema_profile().lrmax as i64, s.npea);
        prop_assert_eq!(value(&StatSpec::named("den").unwrap(), &sigma), peak_position_weight(&path));
        // The maj ↔ mak involution fixes the descent bottom and top sets.
        let tau = phi_321(&sigma).unwrap();
        prop_assert_eq!(phi_321(&tau).unwrap(), sigma.clone());
        prop_assert_eq!(value(&stat("maj"), &tau), value(&stat("mak"), &sigma));
        prop_assert_eq!(tau.descent_profile().db, sigma.descent_profile().db);
        prop_assert_eq!(tau.descent_profile().dt, sigma.descent_profile().dt);
        // inv transports to mad across the 321 → 231 bridge.
        let rho = phi_inv_to_mad(&sigma).unwrap();
        let p231: VincularPattern = "231".parse().unwrap();
        prop_assert!(avoids(&rho, std::slice::from_ref(&p231)));
        prop_assert_eq!(value(&stat("mad"), &rho), value(&stat("inv"), &sigma));
    }

    #[test]
    fn transports_hold_on_random_231_avoiders(path in dyck(10)) {
        let sigma = delta_inv(&path, DeltaVariant::A231);
        let tau = phi_231(&sigma).unwrap();
        prop_assert_eq!(value(&stat("mak"), &tau), value(&stat("foze"), &sigma));
        prop_assert_eq!(tau.descent_profile().des, sigma.descent_profile().des);
        // Ω sends maj to the valley position weight.
        let omega = omega_stump(&sigma).unwrap();
        prop_assert_eq!(valley_position_weight(&omega), value(&stat("maj"), &sigma));
    }

    #[test]
    fn transports_hold_on_random_132_avoiders(path in dyck(10)) {
        let sigma = delta_inv(&path, DeltaVariant::A132);
        let tau = phi_132(&sigma).unwrap();
        prop_assert_eq!(value(&stat("maj"), &tau), value(&stat("foze"), &sigma));
        if !sigma.is_empty() {
            prop_assert_eq!(tau.at(1), sigma.at(1));
        }
        let minima = |s: &Permutation| lr_minima(s).iter().map(|&(_, v)| v).collect::<BTreeSet<_>>();
        prop_assert_eq!(minima(&tau), minima(&sigma));
        // Δ on the same class carries inc to the down-step half-height sum.
        let inc = StatSpec::named("inc").unwrap();
        prop_assert_eq!(value(&inc, &sigma), path_statistics(&path).sdowns);
    }

    #[test]
    fn transports_hold_on_random_123_avoiders(path in dyck(10)) {
        let sigma = gamma_inv(&path).complement();
        let p123: VincularPattern = "123".parse().unwrap();
        prop_assert!(avoids(&sigma, std::slice::from_ref(&p123)));
        let tau = phi_123(&sigma).unwrap();
        prop_assert_eq!(phi_123(&tau).unwrap(), sigma.clone());
        prop_assert_eq!(value(&stat("maj"), &tau), value(&stat("mak"), &sigma));
        prop_assert_eq!(value(&stat("mak"), &tau), value(&stat("maj"), &sigma));
        // The monotone-class bijection preserves the head and lands in S(132).
        let smooth = simion_schmidt(&sigma).unwrap();
        let p132: VincularPattern = "132".parse().unwrap();
        prop_assert!(avoids(&smooth, std::slice::from_ref(&p132)));
        if !sigma.is_empty() {
            prop_assert_eq!(smooth.at(1), sigma.at(1));
        }
        prop_assert_eq!(simion_schmidt_inv(&smooth).unwrap(), sigma);
    }
}

// ---------------------------------------------------------------------------
// Polyominoes, cache, verification layer
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polyomino_contracts(n in 1usize..=6, which in any::<prop::sample::Index>()) {
        const CATALAN: [usize; 7] = [1, 1, 2, 5, 14, 42, 132];
        let all = enumerate_polyominoes(n);
        prop_assert_eq!(all.len(), CATALAN[n]);
        let poly = &all[which.index(all.len())];
        let rendered = poly.to_string();
        prop_assert_eq!(&rendered.parse::<mahonia::ShortenedPolyomino>().unwrap(), poly);
        let stats = poly.statistics();
        prop_assert!(stats.vcarea >= 0 && stats.vrarea >= 0);
        // The column/row area swap preserves the valley count.
        let swapped = phi_h(poly).unwrap();
        prop_assert_eq!(swapped.statistics().vcarea, stats.vrarea);
        prop_assert_eq!(swapped.statistics().val, stats.val);
        // Υ round-trips through its permutation encoding.
        let sigma = poly.upsilon();
        prop_assert_eq!(&mahonia::polyomino::upsilon_inv(&sigma).unwrap(), poly);
    }

    #[test]
    fn cache_persists_distributions(coeffs in proptest::collection::vec(0i64..=9, 0..=6), n in 0usize..=20) {
        let dist = QPoly::from_i64_slice(&coeffs);
        let dir = tempfile::tempdir().unwrap();
        let cache = DistCache::with_dir(dir.path());
        let key = DistCache::distribution_key("maj", "231", n);
        cache.publish(&key, &dist).unwrap();
        prop_assert_eq!(cache.lookup(&key).unwrap(), Some(dist.clone()));
        // get_or_compute must serve the stored value without recomputing.
        let mut calls = 0usize;
        let got = cache
            .get_or_compute(&key, || {
                calls += 1;
                Ok(QPoly::zero())
            })
            .unwrap();
        prop_assert_eq!(got, dist);
        prop_assert_eq!(calls, 0);
    }

    #[test]
    fn class_keys_are_order_insensitive(
        patterns in proptest::collection::vec(classical3(), 1..=3),
    ) {
        let mut reversed = patterns.clone();
        reversed.reverse();
        prop_assert_eq!(class_key(&patterns), class_key(&reversed));
    }

    #[test]
    fn manifest_tags_ignore_orientation(which in any::<prop::sample::Index>()) {
        let cells = equidistribution_manifest();
        let cell = &cells[which.index(cells.len())];
        let forward = manifest_tag(&cell.stat1, &cell.pattern1, &cell.stat2, &cell.pattern2);
        let backward = manifest_tag(&cell.stat2, &cell.pattern2, &cell.stat1, &cell.pattern1);
        prop_assert_eq!(forward, Some(cell.tag));
        prop_assert_eq!(backward, Some(cell.tag));
    }
}
