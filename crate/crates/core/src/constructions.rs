//! Generators and verifiers for the worked examples: periodic points of the
//! doubling map, the finite-depth Cantor construction that deletes periodic
//! points ball by ball, the Rome first-return encoding, and the 0-suppression
//! pullback of a minimal subshift (Thue-Morse by default).

use crate::dynamics::map_ball;
use crate::interval::IntervalSet;
use crate::map::{doubling, PiecewiseAffineMap};
use crate::rational::{pow2, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("removal schedule emptied the remaining set (or no periodic point left)")]
    EmptyRemainder,
    #[error("bad construction parameters: {0}")]
    BadSchedule(String),
    #[error("no return to the base cylinder inside the prefix")]
    NoReturnInPrefix,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("word has consecutive zeros, so it is outside Y0")]
    ConsecutiveZeros,
}

// --- periodic points of the doubling map -------------------------------------

/// Least period of the doubling-map periodic point k / (2^p - 1).
fn least_period(k: &BigInt, p: usize) -> usize {
    let modulus = (BigInt::one() << p) - BigInt::one();
    let mut cur = (k * BigInt::from(2)) % &modulus;
    let mut d = 1usize;
    while &cur != k {
        cur = (cur * BigInt::from(2)) % &modulus;
        d += 1;
    }
    d
}

/// All fixed points of f^p for the doubling map: k/(2^p - 1), ordered by
/// (least period, numeric value).
pub fn periodic_points(p: usize) -> Vec<Q> {
    assert!(p >= 1);
    let modulus = (BigInt::one() << p) - BigInt::one();
    let mut pts: Vec<(usize, Q)> = Vec::new();
    let mut k = BigInt::zero();
    while k < modulus {
        pts.push((least_period(&k, p), Q::new(k.clone(), modulus.clone())));
        k += BigInt::one();
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    pts.into_iter().map(|(_, q)| q).collect()
}

/// The global enumeration (p_n): periodic points listed by non-decreasing
/// least period, ascending within a period class.
pub fn periodic_point_enumeration(count: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(count);
    let mut p = 1usize;
    while out.len() < count {
        let modulus = (BigInt::one() << p) - BigInt::one();
        let mut k = BigInt::zero();
        while k < modulus && out.len() < count {
            if least_period(&k, p) == p {
                out.push(Q::new(k.clone(), modulus.clone()));
            }
            k += BigInt::one();
        }
        p += 1;
    }
    out
}

// --- the Przytycki-style Cantor construction ----------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    /// The deleted periodic point q_i.
    #[serde(with = "crate::rational::qserde")]
    pub center: Q,
    /// Ball radius zeta_i = zeta_0 r^i.
    #[serde(with = "crate::rational::qserde")]
    pub radius: Q,
    /// Index of q_i in the global enumeration (p_n).
    pub enumeration_index: usize,
}

/// Finite-depth approximation of the Cantor set K_l: the circle minus the
/// first `depth` preimage generations of the deleted balls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorApprox {
    pub levels: usize,
    pub depth: usize,
    pub remaining: IntervalSet,
    pub ledger: Vec<LedgerEntry>,
}

const ENUMERATION_SEARCH_CAP: usize = 4096;

/// Runs the recursive deletion: at each level pick the first enumerated
/// periodic point still in the remaining set, then remove its ball together
/// with `depth` generations of exact preimages. Radii follow zeta_0 * r^i.
pub fn feliks_cantor(
    levels: usize,
    depth: usize,
    zeta0: &Q,
    ratio: &Q,
) -> Result<CantorApprox, ConstructError> {
    if !zeta0.is_positive() || zeta0 >= &Q::new(1.into(), 3.into()) {
        return Err(ConstructError::BadSchedule(
            "zeta0 must be positive and below the gap 1/3 between p_0 and p_1".into(),
        ));
    }
    if !ratio.is_positive() || ratio >= &Q::one() {
        return Err(ConstructError::BadSchedule("ratio must lie in (0,1)".into()));
    }
    let f = doubling();
    let enumeration = periodic_point_enumeration(ENUMERATION_SEARCH_CAP);
    let mut remaining = f.whole_space();
    let mut ledger = Vec::with_capacity(levels + 1);
    let mut radius = zeta0.clone();
    for _ in 0..=levels {
        let found = enumeration
            .iter()
            .enumerate()
            .find(|(_, p)| remaining.contains(p));
        let (idx, center) = match found {
            Some((i, p)) => (i, p.clone()),
            None => return Err(ConstructError::EmptyRemainder),
        };
        let ball = map_ball(&f, &center, &radius)
            .map_err(|e| ConstructError::BadSchedule(e.to_string()))?;
        let mut generation = ball.clone();
        let mut removal = ball;
        for _ in 0..depth {
            generation = f.preimage(&generation);
            removal = removal.union(&generation);
        }
        remaining = remaining.minus(&removal);
        ledger.push(LedgerEntry { center, radius: radius.clone(), enumeration_index: idx });
        if remaining.is_empty() {
            return Err(ConstructError::EmptyRemainder);
        }
        radius = radius * ratio;
    }
    Ok(CantorApprox { levels, depth, remaining, ledger })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringCheck {
    #[serde(with = "crate::rational::qserde")]
    pub center: Q,
    /// measure(remaining \ f^N(B(x,eps) n remaining)); every missing point
    /// must lie in a forward image of a deleted ball (depth-truncation junk).
    #[serde(with = "crate::rational::qserde")]
    pub defect_measure: Q,
    pub defect_in_forward_junk: bool,
    /// measure(f^N(...) \ remaining); every extra point must lie in a
    /// preimage generation deeper than depth - N.
    #[serde(with = "crate::rational::qserde")]
    pub overshoot_measure: Q,
    pub overshoot_in_deep_tail: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivingPoint {
    pub period: usize,
    #[serde(with = "crate::rational::qserde")]
    pub point: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeliksReport {
    /// Periodic points of least period <= max_period still present.
    pub surviving_periodic: Vec<SurvivingPoint>,
    /// True iff every enumerated point up to the last ledger index is gone.
    pub ledger_scope_clear: bool,
    #[serde(with = "crate::rational::qserde")]
    pub invariance_defect_measure: Q,
    /// f(remaining) \ remaining is contained in the deepest (generation
    /// `depth`) preimages of the deleted balls.
    pub invariance_defect_bounded: bool,
    pub covering: Vec<CoveringCheck>,
}

/// Verify the finite-depth approximation: which periodic points survive,
/// how far the set is from exact invariance, and the covering identity
/// f^N(B(x,eps) n K) = K restated with the slack that finite depth forces.
pub fn feliks_verify(
    approx: &CantorApprox,
    max_period: usize,
    cover_n: usize,
    samples: &[Q],
) -> FeliksReport {
    let f = doubling();
    let remaining = &approx.remaining;

    let mut surviving = Vec::new();
    for p in 1..=max_period {
        let modulus = (BigInt::one() << p) - BigInt::one();
        let mut k = BigInt::zero();
        while k < modulus {
            if least_period(&k, p) == p {
                let pt = Q::new(k.clone(), modulus.clone());
                if remaining.contains(&pt) {
                    surviving.push(SurvivingPoint { period: p, point: pt });
                }
            }
            k += BigInt::one();
        }
    }

    let scope_end = approx.ledger.iter().map(|e| e.enumeration_index).max().unwrap_or(0);
    let enumeration = periodic_point_enumeration(scope_end + 1);
    let ledger_scope_clear = enumeration.iter().all(|p| !remaining.contains(p));

    // Deleted balls and their deep generations.
    let balls: Vec<IntervalSet> = approx
        .ledger
        .iter()
        .map(|e| map_ball(&f, &e.center, &e.radius).expect("ledger radius is valid"))
        .collect();
    let mut deepest_generation = IntervalSet::empty();
    for b in &balls {
        deepest_generation = deepest_generation.union(&f.preimage_iter(b, approx.depth));
    }
    let invariance_defect = f.image(remaining).minus(remaining);
    let invariance_defect_bounded = invariance_defect.is_subset(&deepest_generation);

    // Slack sets for the covering identity at this depth.
    let mut forward_junk = IntervalSet::empty();
    for b in &balls {
        let mut img = b.clone();
        for _ in 0..cover_n {
            img = f.image(&img);
            forward_junk = forward_junk.union(&img);
        }
    }
    let mut deep_tail = IntervalSet::empty();
    for b in &balls {
        // Generations j with j + cover_n > depth: max(0, depth-cover_n+1)..=depth.
        let start = (approx.depth + 1).saturating_sub(cover_n);
        let mut gen = f.preimage_iter(b, start);
        deep_tail = deep_tail.union(&gen);
        for _ in start + 1..=approx.depth {
            gen = f.preimage(&gen);
            deep_tail = deep_tail.union(&gen);
        }
    }

    let eps = pow2(-(cover_n as i64));
    let covering = samples
        .iter()
        .map(|x| {
            let b = map_ball(&f, x, &eps).expect("sample radius is valid");
            let reached = f.image_iter(&b.intersect(remaining), cover_n);
            let defect = remaining.minus(&reached);
            let overshoot = reached.minus(remaining);
            CoveringCheck {
                center: x.clone(),
                defect_measure: defect.measure(),
                defect_in_forward_junk: defect.is_subset(&forward_junk),
                overshoot_measure: overshoot.measure(),
                overshoot_in_deep_tail: overshoot.is_subset(&deep_tail),
            }
        })
        .collect();

    FeliksReport {
        surviving_periodic: surviving,
        ledger_scope_clear,
        invariance_defect_measure: invariance_defect.measure(),
        invariance_defect_bounded,
        covering,
    }
}

// --- the Rome first-return encoding --------------------------------------------

/// First return time to the cylinder [0]: inf { k >= 1 : x_k = 0 }.
pub fn rome_return_time(prefix: &[u8]) -> Result<usize, ConstructError> {
    if prefix.first() != Some(&0) {
        return Err(ConstructError::MalformedWord(
            "first-return prefix must start in the base cylinder [0]".into(),
        ));
    }
    prefix[1..]
        .iter()
        .position(|&b| b == 0)
        .map(|i| i + 1)
        .ok_or(ConstructError::NoReturnInPrefix)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RomeWord {
    pub n: usize,
}

impl RomeWord {
    /// The binary block (0, 1^n, 0).
    pub fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.n + 2);
        w.push(0);
        w.extend(std::iter::repeat(1).take(self.n));
        w.push(0);
        w
    }
}

pub fn rome_encode(n: usize) -> RomeWord {
    RomeWord { n }
}

pub fn rome_decode(w: &[u8]) -> Result<usize, ConstructError> {
    if w.len() < 2 || w[0] != 0 || *w.last().unwrap() != 0 {
        return Err(ConstructError::MalformedWord("block must be 0 1^n 0".into()));
    }
    if w[1..w.len() - 1].iter().any(|&b| b != 1) {
        return Err(ConstructError::MalformedWord("interior must be all ones".into()));
    }
    Ok(w.len() - 2)
}

/// Embed a graph-shift prefix into a binary prefix: consecutive blocks share
/// their separating 0 marker.
pub fn rome_encode_prefix(symbols: &[usize]) -> Vec<u8> {
    let mut out = vec![0u8];
    for &n in symbols {
        out.extend(std::iter::repeat(1).take(n));
        out.push(0);
    }
    out
}

/// Inverse of `rome_encode_prefix`.
pub fn rome_decode_prefix(binary: &[u8]) -> Result<Vec<usize>, ConstructError> {
    if binary.first() != Some(&0) || binary.last() != Some(&0) {
        return Err(ConstructError::MalformedWord("prefix must start and end with 0".into()));
    }
    let mut out = Vec::new();
    let mut run = 0usize;
    for &b in &binary[1..] {
        match b {
            1 => run += 1,
            0 => {
                out.push(run);
                run = 0;
            }
            other => {
                return Err(ConstructError::MalformedWord(format!("symbol {other} not binary")))
            }
        }
    }
    Ok(out)
}

// --- 0-suppression and the Thue-Morse pullback ----------------------------------

/// Delete the 0 symbols of a word in Y0 (no consecutive zeros allowed).
pub fn pi_suppress(w: &[u8]) -> Result<Vec<u8>, ConstructError> {
    for &s in w {
        if s > 2 {
            return Err(ConstructError::MalformedWord(format!("symbol {s} outside {{0,1,2}}")));
        }
    }
    if w.windows(2).any(|p| p == [0, 0]) {
        return Err(ConstructError::ConsecutiveZeros);
    }
    Ok(w.iter().copied().filter(|&s| s != 0).collect())
}

/// The Thue-Morse sequence over {1, 2}: 1 + (parity of popcount).
pub fn thue_morse_prefix(len: usize) -> Vec<u8> {
    (0..len).map(|i| 1 + (i.count_ones() % 2) as u8).collect()
}

/// Factor oracle for the Thue-Morse subshift, scanning a prefix of the given
/// depth. Thue-Morse is linearly recurrent, so any factor of length L occurs
/// within every window of length ~10 L; `depth` bounds the factor lengths
/// this oracle can vouch for.
pub fn thue_morse_factor_oracle(depth: usize) -> impl Fn(&[u8]) -> bool {
    let prefix = thue_morse_prefix(depth);
    move |w: &[u8]| w.is_empty() || prefix.windows(w.len()).any(|win| win == w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Consistent,
    RejectedConsecutiveZeros,
    RejectedNotAFactor,
}

/// Finite-depth membership in Y = pi^-1(X): the word must avoid 00 and its
/// suppression must be a factor of the minimal subshift X.
pub fn lindenstrauss_membership(
    w: &[u8],
    factor_oracle: impl Fn(&[u8]) -> bool,
) -> Result<Membership, ConstructError> {
    match pi_suppress(w) {
        Err(ConstructError::ConsecutiveZeros) => Ok(Membership::RejectedConsecutiveZeros),
        Err(e) => Err(e),
        Ok(suppressed) => {
            if factor_oracle(&suppressed) {
                Ok(Membership::Consistent)
            } else {
                Ok(Membership::RejectedNotAFactor)
            }
        }
    }
}

/// All distinct Thue-Morse factors of a given length within a prefix; used
/// as the independent oracle in tests.
pub fn thue_morse_factors(len: usize, prefix_len: usize) -> HashSet<Vec<u8>> {
    let prefix = thue_morse_prefix(prefix_len);
    prefix.windows(len).map(|w| w.to_vec()).collect()
}

/// The example maps bundled for the CLI.
pub struct ExampleMaps {
    pub base_tent: PiecewiseAffineMap,
    pub replicated: PiecewiseAffineMap,
    pub invariant_domain: PiecewiseAffineMap,
}

pub fn example_maps(replication_levels: u32) -> ExampleMaps {
    ExampleMaps {
        base_tent: crate::map::base_tent_map(),
        replicated: crate::map::replicated_map(replication_levels),
        invariant_domain: crate::map::invariant_domain_map(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::rational::q;

    #[test]
    fn periodic_point_sets() {
        assert_eq!(periodic_points(1), vec![q(0, 1)]);
        // Oracle for p = 2: 4x = x mod 1 means 3x integer.
        let expect: Vec<Q> = vec![q(0, 1), q(1, 3), q(2, 3)];
        assert_eq!(periodic_points(2), expect);
        let p3 = periodic_points(3);
        assert_eq!(p3.len(), 7);
        assert_eq!(p3[0], q(0, 1));
        assert!(p3[1..].iter().all(|x| *x.denom() == BigInt::from(7)));
        for x in &p3 {
            let f = doubling();
            assert_eq!(f.eval_iter(x, 3).unwrap(), *x);
        }
    }

    #[test]
    fn enumeration_orders_by_least_period() {
        let e = periodic_point_enumeration(10);
        assert_eq!(
            &e[..6],
            &[q(0, 1), q(1, 3), q(2, 3), q(1, 7), q(2, 7), q(3, 7)]
        );
        // Entry 9 starts the period-4 class 1/15 after 4/7, 5/7, 6/7.
        assert_eq!(e[9], q(1, 15));
    }

    #[test]
    fn cantor_level_zero_depth_zero() {
        let a = feliks_cantor(0, 0, &q(1, 8), &q(1, 4)).unwrap();
        assert_eq!(
            a.remaining,
            IntervalSet::from_interval(Interval::closed(q(1, 8), q(7, 8)))
        );
        assert_eq!(a.ledger.len(), 1);
        assert_eq!(a.ledger[0].center, q(0, 1));
    }

    #[test]
    fn cantor_depth_two_removal_arcs() {
        let a = feliks_cantor(0, 2, &q(1, 16), &q(1, 4)).unwrap();
        let f = doubling();
        let removed = f.whole_space().minus(&a.remaining);
        // Generations 0,1,2 have 1+2+4 arcs, but q_0 = 0 is a fixed point,
        // so the generation around 0 (and around 1/2 at depth 2) nests
        // inside the previous one: the exact union has 4 arcs at centers
        // 0, 1/4, 1/2, 3/4 with radii 1/16, 1/64, 1/32, 1/64.
        assert_eq!(removed.circle_arc_count(), 4);
        assert_eq!(removed.measure(), q(1, 4));
        assert!(removed.contains(&q(1, 4)));
        assert!(removed.contains(&q(1, 2)));
        assert!(removed.contains(&q(3, 4)));
        // Oracle: explicit preimage arithmetic reproduces the removal.
        let ball = map_ball(&f, &q(0, 1), &q(1, 16)).unwrap();
        let expect = ball.union(&f.preimage(&ball)).union(&f.preimage_iter(&ball, 2));
        assert_eq!(removed, expect);
    }

    #[test]
    fn cantor_second_level_picks_one_third() {
        let a = feliks_cantor(1, 1, &q(1, 16), &q(1, 4)).unwrap();
        assert_eq!(a.ledger[1].center, q(1, 3));
        assert_eq!(a.ledger[1].enumeration_index, 1);
        assert_eq!(a.ledger[1].radius, q(1, 64));
    }

    #[test]
    fn cantor_nested_in_levels_and_depth() {
        let base = feliks_cantor(1, 2, &q(1, 16), &q(1, 4)).unwrap();
        let deeper = feliks_cantor(1, 4, &q(1, 16), &q(1, 4)).unwrap();
        let more_levels = feliks_cantor(3, 2, &q(1, 16), &q(1, 4)).unwrap();
        assert!(deeper.remaining.is_subset(&base.remaining));
        assert!(more_levels.remaining.is_subset(&base.remaining));
    }

    #[test]
    fn aggressive_schedule_is_rejected() {
        assert!(matches!(
            feliks_cantor(0, 0, &q(1, 2), &q(1, 4)),
            Err(ConstructError::BadSchedule(_))
        ));
    }

    #[test]
    fn verify_clears_scheduled_periodic_points() {
        let a = feliks_cantor(2, 3, &q(1, 16), &q(1, 4)).unwrap();
        let report = feliks_verify(&a, 2, 4, &[q(0, 1), q(1, 2)]);
        // Period <= 2 points are 0, 1/3, 2/3: all inside the ledger scope.
        assert!(report.surviving_periodic.is_empty());
        assert!(report.ledger_scope_clear);
        assert!(report.invariance_defect_bounded);
        // Defect shrinks with the deleted measure: at most sum of ball sizes.
        let bound: Q = a.ledger.iter().map(|e| q(2, 1) * &e.radius).sum();
        assert!(report.invariance_defect_measure <= bound);
        for c in &report.covering {
            assert!(c.defect_in_forward_junk);
            assert!(c.overshoot_in_deep_tail);
        }
    }

    #[test]
    fn trivial_report_for_single_ball() {
        let a = feliks_cantor(0, 0, &q(1, 8), &q(1, 4)).unwrap();
        let report = feliks_verify(&a, 1, 3, &[]);
        assert!(report.surviving_periodic.is_empty());
        assert!(report.ledger_scope_clear);
    }

    #[test]
    fn rome_return_times() {
        assert_eq!(rome_return_time(&[0, 1, 1, 0, 1]).unwrap(), 3);
        assert_eq!(rome_return_time(&[0, 0, 1]).unwrap(), 1);
        assert_eq!(
            rome_return_time(&[0, 1, 1, 1, 1]),
            Err(ConstructError::NoReturnInPrefix)
        );
        assert!(matches!(
            rome_return_time(&[1, 0]),
            Err(ConstructError::MalformedWord(_))
        ));
    }

    #[test]
    fn rome_encode_decode() {
        assert_eq!(rome_encode(0).word(), vec![0, 0]);
        assert_eq!(rome_decode(&[0, 0]).unwrap(), 0);
        assert_eq!(rome_encode(3).word(), vec![0, 1, 1, 1, 0]);
        for n in 0..200 {
            assert_eq!(rome_decode(&rome_encode(n).word()).unwrap(), n);
        }
        assert!(rome_decode(&[0, 1]).is_err());
        assert!(rome_decode(&[0, 1, 2, 0]).is_err());
    }

    #[test]
    fn rome_prefix_embedding() {
        assert_eq!(rome_encode_prefix(&[1, 0, 2]), vec![0, 1, 0, 0, 1, 1, 0]);
        assert_eq!(rome_decode_prefix(&[0, 1, 0, 0, 1, 1, 0]).unwrap(), vec![1, 0, 2]);
        for sym in [vec![0, 0, 0], vec![5, 4, 4, 3], vec![2]] {
            assert_eq!(rome_decode_prefix(&rome_encode_prefix(&sym)).unwrap(), sym);
        }
    }

    #[test]
    fn suppression_examples() {
        assert_eq!(pi_suppress(&[0, 1, 0, 2, 1]).unwrap(), vec![1, 2, 1]);
        assert_eq!(pi_suppress(&[1, 2, 2]).unwrap(), vec![1, 2, 2]);
        assert_eq!(pi_suppress(&[0, 0, 1]), Err(ConstructError::ConsecutiveZeros));
        assert!(matches!(pi_suppress(&[3]), Err(ConstructError::MalformedWord(_))));
    }

    #[test]
    fn suppression_is_a_morphism_on_compatible_junctions() {
        let u = [1u8, 0, 2];
        let v = [1u8, 0, 1];
        let mut uv = u.to_vec();
        uv.extend_from_slice(&v);
        let lhs = pi_suppress(&uv).unwrap();
        let mut rhs = pi_suppress(&u).unwrap();
        rhs.extend(pi_suppress(&v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn thue_morse_membership() {
        let tm = thue_morse_prefix(8);
        assert_eq!(tm, vec![1, 2, 2, 1, 2, 1, 1, 2]);
        let oracle = thue_morse_factor_oracle(4096);
        // A 0-interleaved Thue-Morse prefix is consistent.
        let mut interleaved = Vec::new();
        for &s in &thue_morse_prefix(12) {
            interleaved.push(0);
            interleaved.push(s);
        }
        assert_eq!(
            lindenstrauss_membership(&interleaved, &oracle).unwrap(),
            Membership::Consistent
        );
        assert_eq!(
            lindenstrauss_membership(&[1, 0, 0, 2], &oracle).unwrap(),
            Membership::RejectedConsecutiveZeros
        );
        // Thue-Morse is cube-free: 111 is not a factor.
        assert_eq!(
            lindenstrauss_membership(&[1, 1, 1], &oracle).unwrap(),
            Membership::RejectedNotAFactor
        );
        // Oracle cross-check: factor enumeration to depth 20 never sees 111
        // or 222 but sees every length-3 word the oracle accepts.
        let factors = thue_morse_factors(3, 1 << 20);
        assert!(!factors.contains(&vec![1, 1, 1]));
        assert!(!factors.contains(&vec![2, 2, 2]));
        for f in &factors {
            assert!(oracle(f));
        }
    }
}
