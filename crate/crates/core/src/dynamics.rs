//! Metric balls, Bowen balls, LEO certification, and the expanding /
//! expansivity predicate checks for piecewise-affine maps.
//!
//! Everything is exact. Balls are open balls of the chosen metric; on the
//! circle the ball of radius exactly 1/2 is the circle minus the antipode,
//! which the flagged interval representation states precisely.

use crate::interval::{Interval, IntervalSet};
use crate::map::{MapError, PiecewiseAffineMap, Topology};
use crate::rational::{format_q, Q};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("ball radius {} must satisfy 0 < eps <= 1/2", format_q(.0))]
    BadRadius(Q),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("operation requires a nonempty region")]
    EmptyRegion,
    #[error("points must be distinct")]
    SamePoint,
    #[error("invalid witness: {0}")]
    BadWitness(String),
}

fn check_radius(eps: &Q) -> Result<(), DynamicsError> {
    if !eps.is_positive() || eps > &Q::new(1.into(), 2.into()) {
        return Err(DynamicsError::BadRadius(eps.clone()));
    }
    Ok(())
}

/// Open metric ball inside a universe interval.
pub fn ball_in(
    center: &Q,
    eps: &Q,
    topology: Topology,
    universe: &Interval,
) -> Result<IntervalSet, DynamicsError> {
    check_radius(eps)?;
    let raw = IntervalSet::from_interval(Interval::open(center - eps, center + eps));
    Ok(match topology {
        Topology::Circle => raw.reduce_mod_one(),
        Topology::Interval => raw.intersect(&IntervalSet::from_interval(universe.clone())),
    })
}

/// Open ball on the standard spaces: [0,1) with the circle metric or [0,1]
/// with the line metric.
pub fn ball(center: &Q, eps: &Q, topology: Topology) -> Result<IntervalSet, DynamicsError> {
    let universe = match topology {
        Topology::Circle => Interval::half_open(Q::zero(), Q::one()),
        Topology::Interval => Interval::closed(Q::zero(), Q::one()),
    };
    ball_in(center, eps, topology, &universe)
}

/// Ball in the phase space of a map.
pub fn map_ball(map: &PiecewiseAffineMap, center: &Q, eps: &Q) -> Result<IntervalSet, DynamicsError> {
    ball_in(center, eps, map.topology(), map.universe())
}

/// The Bowen ball B_n(x, eps) = { y : d(f^i x, f^i y) < eps, 0 <= i < n },
/// computed by pulling the deepest window constraint back through the orbit;
/// this equals the front-to-back refinement B_{m+1} = B_m n f^-m(B(f^m x, eps))
/// exactly (checked as a property test).
pub fn bowen_ball(
    map: &PiecewiseAffineMap,
    x: &Q,
    n: usize,
    eps: &Q,
) -> Result<IntervalSet, DynamicsError> {
    assert!(n >= 1, "bowen_ball needs n >= 1");
    let orbit = map.orbit(x, n - 1)?;
    let mut region = map_ball(map, &orbit[n - 1], eps)?;
    for j in (0..n - 1).rev() {
        region = map_ball(map, &orbit[j], eps)?.intersect(&map.preimage(&region));
    }
    Ok(region)
}

/// f^n(B_{n+1}(x, eps)): the n-step image of the Bowen window that pins the
/// iterates 0..=n. For expanding maps this is exactly the eps-ball around
/// f^n(x), so its diameter realizes the uniform lower bound zeta(eps) = 2 eps.
pub fn bowen_image(
    map: &PiecewiseAffineMap,
    x: &Q,
    n: usize,
    eps: &Q,
) -> Result<IntervalSet, DynamicsError> {
    let window = bowen_ball(map, x, n + 1, eps)?;
    Ok(map.image_iter(&window, n))
}

pub fn diam(map: &PiecewiseAffineMap, s: &IntervalSet) -> Q {
    match map.topology() {
        Topology::Circle => s.diam_circle(),
        Topology::Interval => s.diam_interval(),
    }
}

pub fn bowen_image_diam(
    map: &PiecewiseAffineMap,
    x: &Q,
    n: usize,
    eps: &Q,
) -> Result<Q, DynamicsError> {
    Ok(diam(map, &bowen_image(map, x, n, eps)?))
}

/// Outcome of the LEO certification loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeoOutcome {
    /// Least N with image^N(J) equal to the whole space, exactly.
    Certified { n: usize },
    /// Iteration budget exhausted; carries the terminal image set.
    Failure { iterations: usize, terminal: IntervalSet },
}

/// Certify the locally-eventually-onto property for one seed region by exact
/// forward iteration.
pub fn leo_certify(
    map: &PiecewiseAffineMap,
    region: &IntervalSet,
    max_n: usize,
) -> Result<LeoOutcome, DynamicsError> {
    if region.is_empty() {
        return Err(DynamicsError::EmptyRegion);
    }
    let whole = map.whole_space();
    let mut cur = region.clone();
    for n in 0..=max_n {
        if cur == whole {
            return Ok(LeoOutcome::Certified { n });
        }
        cur = map.image(&cur);
    }
    Ok(LeoOutcome::Failure { iterations: max_n, terminal: cur })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandingWitness {
    pub lambda: Q,
    pub delta0: Q,
    pub grid_step: Q,
}

impl ExpandingWitness {
    pub fn new(lambda: Q, delta0: Q, grid_step: Q) -> Result<Self, DynamicsError> {
        if lambda <= Q::one() {
            return Err(DynamicsError::BadWitness("lambda must exceed 1".into()));
        }
        if !delta0.is_positive() || delta0 > Q::new(1.into(), 2.into()) {
            return Err(DynamicsError::BadWitness("delta0 must lie in (0, 1/2]".into()));
        }
        if !grid_step.is_positive() {
            return Err(DynamicsError::BadWitness("grid step must be positive".into()));
        }
        Ok(ExpandingWitness { lambda, delta0, grid_step })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandingOutcome {
    Pass,
    /// First grid pair with d(f(x), f(y)) < lambda * d(x, y).
    Counterexample { x: Q, y: Q },
}

/// Check the distance-expanding inequality d(f(x),f(y)) >= lambda d(x,y) for
/// d(x,y) < delta0. Within a branch the inequality is affine-exact and
/// reduces to |slope| >= lambda (for mod-1 branches this is the inequality
/// for the affine lift, which generates the circle metric locally);
/// cross-branch pairs are scanned on the verification grid.
pub fn expanding_check(
    map: &PiecewiseAffineMap,
    w: &ExpandingWitness,
) -> Result<ExpandingOutcome, DynamicsError> {
    for b in map.branches() {
        if b.slope.abs() < w.lambda {
            // Exhibit a concrete violating pair inside the branch.
            let width = b.domain.measure();
            if width.is_zero() {
                continue;
            }
            let quarter = &width / Q::from_integer(4.into());
            let mid = (b.domain.lo() + b.domain.hi()) / Q::from_integer(2.into());
            let x = &mid - &quarter;
            let y = &mid + &quarter;
            return Ok(ExpandingOutcome::Counterexample { x, y });
        }
    }
    // Cross-branch pairs on the grid.
    let universe = map.universe();
    let mut grid: Vec<(Q, usize, Q)> = Vec::new(); // (point, branch index, f(point))
    let mut t = universe.lo().clone();
    while &t <= universe.hi() {
        if let Some(idx) = map.branches().iter().position(|b| b.domain.contains(&t)) {
            let fx = map.eval(&t)?;
            grid.push((t.clone(), idx, fx));
        }
        t += &w.grid_step;
    }
    for i in 0..grid.len() {
        for pair in &grid[i + 1..] {
            let (x, bx, fx) = &grid[i];
            let (y, by, fy) = pair;
            if bx == by {
                continue;
            }
            let d = map.dist(x, y);
            if d >= w.delta0 {
                continue;
            }
            if map.dist(fx, fy) < &w.lambda * &d {
                return Ok(ExpandingOutcome::Counterexample { x: x.clone(), y: y.clone() });
            }
        }
    }
    Ok(ExpandingOutcome::Pass)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansivityWitness {
    pub alpha: Q,
    pub horizon: usize,
}

impl ExpansivityWitness {
    pub fn new(alpha: Q, horizon: usize) -> Result<Self, DynamicsError> {
        if !alpha.is_positive() {
            return Err(DynamicsError::BadWitness("alpha must be positive".into()));
        }
        if horizon == 0 {
            return Err(DynamicsError::BadWitness("horizon must be at least 1".into()));
        }
        Ok(ExpansivityWitness { alpha, horizon })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationOutcome {
    /// Least n <= horizon with d(f^n x, f^n y) > alpha (strict).
    SeparatedAt(usize),
    NotSeparated,
}

pub fn expansivity_first_separation(
    map: &PiecewiseAffineMap,
    x: &Q,
    y: &Q,
    w: &ExpansivityWitness,
) -> Result<SeparationOutcome, DynamicsError> {
    if x == y {
        return Err(DynamicsError::SamePoint);
    }
    let mut a = x.clone();
    let mut b = y.clone();
    for n in 0..=w.horizon {
        if map.dist(&a, &b) > w.alpha {
            return Ok(SeparationOutcome::SeparatedAt(n));
        }
        a = map.eval(&a)?;
        b = map.eval(&b)?;
    }
    Ok(SeparationOutcome::NotSeparated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{beta_map, doubling, invariant_domain_map, replicated_map};
    use crate::rational::{pow2, q};

    fn ho(a: Q, b: Q) -> IntervalSet {
        IntervalSet::from_interval(Interval::half_open(a, b))
    }

    #[test]
    fn ball_examples() {
        let b = ball(&q(0, 1), &q(1, 4), Topology::Circle).unwrap();
        assert_eq!(
            b,
            ho(q(0, 1), q(1, 4)).union(&IntervalSet::from_interval(Interval::open(q(3, 4), q(1, 1))))
        );
        let c = ball(&q(1, 2), &q(1, 4), Topology::Interval).unwrap();
        assert_eq!(c, IntervalSet::from_interval(Interval::open(q(1, 4), q(3, 4))));
        let d = ball(&q(0, 1), &q(1, 4), Topology::Interval).unwrap();
        assert_eq!(d, ho(q(0, 1), q(1, 4)));
        assert!(matches!(
            ball(&q(0, 1), &q(3, 4), Topology::Circle),
            Err(DynamicsError::BadRadius(_))
        ));
        assert!(matches!(
            ball(&q(0, 1), &q(0, 1), Topology::Circle),
            Err(DynamicsError::BadRadius(_))
        ));
        // Radius exactly 1/2 on the circle: everything except the antipode.
        let e = ball(&q(0, 1), &q(1, 2), Topology::Circle).unwrap();
        assert_eq!(e.measure(), q(1, 1));
        assert!(!e.contains(&q(1, 2)));
        assert!(e.contains(&q(0, 1)));
    }

    #[test]
    fn bowen_balls_on_doubling_shrink_geometrically() {
        let f = doubling();
        let eps = q(1, 4);
        let b1 = bowen_ball(&f, &q(0, 1), 1, &eps).unwrap();
        assert_eq!(b1, ball(&q(0, 1), &eps, Topology::Circle).unwrap());
        let b2 = bowen_ball(&f, &q(0, 1), 2, &eps).unwrap();
        assert_eq!(
            b2,
            ho(q(0, 1), q(1, 8)).union(&IntervalSet::from_interval(Interval::open(q(7, 8), q(1, 1))))
        );
        let b3 = bowen_ball(&f, &q(0, 1), 3, &eps).unwrap();
        assert_eq!(
            b3,
            ho(q(0, 1), q(1, 16)).union(&IntervalSet::from_interval(Interval::open(q(15, 16), q(1, 1))))
        );
        assert!(b3.is_subset(&b2));
        assert!(b2.is_subset(&b1));
    }

    #[test]
    fn bowen_ball_matches_grid_oracle() {
        // Brute-force oracle: test both iterate distances on a fine grid.
        let f = doubling();
        let eps = q(1, 4);
        let b2 = bowen_ball(&f, &q(0, 1), 2, &eps).unwrap();
        let n_grid = 1 << 12;
        for k in 0..n_grid {
            let y = q(k, n_grid);
            let inside = f.dist(&q(0, 1), &y) < eps && f.dist(&q(0, 1), &f.eval(&y).unwrap()) < eps;
            assert_eq!(b2.contains(&y), inside, "mismatch at {k}/{n_grid}");
        }
    }

    #[test]
    fn bowen_forward_recursion_identity() {
        // B_{n+1}(x, eps) = B_n(x, eps) n f^-n(B(f^n x, eps)), exactly.
        let f = doubling();
        let eps = q(1, 8);
        for x in [q(0, 1), q(1, 3), q(2, 7), q(5, 11)] {
            for n in 1..=5usize {
                let lhs = bowen_ball(&f, &x, n + 1, &eps).unwrap();
                let fnx = f.eval_iter(&x, n).unwrap();
                let tail = f.preimage_iter(&map_ball(&f, &fnx, &eps).unwrap(), n);
                let rhs = bowen_ball(&f, &x, n, &eps).unwrap().intersect(&tail);
                assert_eq!(lhs, rhs, "recursion mismatch at x={x:?} n={n}");
            }
        }
    }

    #[test]
    fn bowen_image_is_the_ball_around_the_endpoint() {
        let f = doubling();
        for (x, n, eps) in [
            (q(0, 1), 1usize, q(1, 8)),
            (q(1, 3), 8, q(1, 8)),
            (q(2, 7), 5, q(1, 16)),
        ] {
            let img = bowen_image(&f, &x, n, &eps).unwrap();
            let target = map_ball(&f, &f.eval_iter(&x, n).unwrap(), &eps).unwrap();
            assert_eq!(img, target);
            assert_eq!(diam(&f, &img), &eps * q(2, 1));
        }
        // Radius 1/2 window: the image set fills the circle, diameter 1/2.
        assert_eq!(bowen_image_diam(&f, &q(0, 1), 1, &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(bowen_image_diam(&f, &q(0, 1), 1, &q(1, 8)).unwrap(), q(1, 4));
    }

    #[test]
    fn leo_certification_on_doubling() {
        let f = doubling();
        assert_eq!(
            leo_certify(&f, &ho(q(0, 1), q(1, 2)), 8).unwrap(),
            LeoOutcome::Certified { n: 1 }
        );
        assert_eq!(
            leo_certify(&f, &ho(q(3, 8), q(1, 2)), 8).unwrap(),
            LeoOutcome::Certified { n: 3 }
        );
        assert_eq!(
            leo_certify(&f, &ho(q(0, 1), q(1, 1)), 8).unwrap(),
            LeoOutcome::Certified { n: 0 }
        );
        assert_eq!(leo_certify(&f, &IntervalSet::empty(), 8), Err(DynamicsError::EmptyRegion));
    }

    #[test]
    fn leo_fails_on_invariant_domain() {
        let f = invariant_domain_map();
        match leo_certify(&f, &ho(q(1, 2), q(3, 4)), 32).unwrap() {
            LeoOutcome::Failure { terminal, .. } => {
                let trap = IntervalSet::from_interval(Interval::closed(q(1, 3), q(1, 1)));
                assert!(terminal.is_subset(&trap));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn expanding_checks() {
        let w = ExpandingWitness::new(q(2, 1), q(1, 2), pow2(-10)).unwrap();
        assert_eq!(expanding_check(&doubling(), &w).unwrap(), ExpandingOutcome::Pass);

        let t32 = beta_map(&q(3, 2)).unwrap();
        let w32 = ExpandingWitness::new(q(3, 2), q(1, 4), pow2(-10)).unwrap();
        assert_eq!(expanding_check(&t32, &w32).unwrap(), ExpandingOutcome::Pass);

        // The tent-shaped base map folds at its interior joints, so lambda = 3
        // fails on a cross-branch pair even though every slope is +-3.
        let f0 = crate::map::base_tent_map();
        let w0 = ExpandingWitness::new(q(3, 1), q(1, 2), pow2(-6)).unwrap();
        match expanding_check(&f0, &w0).unwrap() {
            ExpandingOutcome::Counterexample { x, y } => {
                assert!(x < y);
                let straddles = f0
                    .branches()
                    .iter()
                    .any(|b| x <= *b.domain.lo() && *b.domain.lo() < y);
                assert!(straddles, "pair ({x:?}, {y:?}) should straddle a fold joint");
                let d = f0.dist(&x, &y);
                let df = f0.dist(&f0.eval(&x).unwrap(), &f0.eval(&y).unwrap());
                assert!(df < q(3, 1) * d);
            }
            ExpandingOutcome::Pass => panic!("base tent map must not be 3-expanding"),
        }

        // The replicated map also fails (its truncation tail is an identity
        // sliver, and the folds persist in every replica).
        let f = replicated_map(1);
        let wf = ExpandingWitness::new(q(3, 1), q(1, 2), pow2(-6)).unwrap();
        match expanding_check(&f, &wf).unwrap() {
            ExpandingOutcome::Counterexample { x, y } => {
                let d = f.dist(&x, &y);
                let df = f.dist(&f.eval(&x).unwrap(), &f.eval(&y).unwrap());
                assert!(df < q(3, 1) * d);
            }
            ExpandingOutcome::Pass => panic!("replicated map must not be 3-expanding"),
        }
    }

    #[test]
    fn expansivity_separation_times() {
        let f = doubling();
        let w = ExpansivityWitness::new(q(1, 4), 64).unwrap();
        assert_eq!(
            expansivity_first_separation(&f, &q(0, 1), &q(1, 2), &w).unwrap(),
            SeparationOutcome::SeparatedAt(0)
        );
        // Distance doubles until it strictly exceeds 1/4: from 2^-10 that
        // first happens at iterate 9 (at iterate 8 it equals 1/4 exactly).
        assert_eq!(
            expansivity_first_separation(&f, &q(0, 1), &pow2(-10), &w).unwrap(),
            SeparationOutcome::SeparatedAt(9)
        );
        let id = crate::map::PiecewiseAffineMap::new(
            vec![crate::map::Branch {
                domain: Interval::closed(q(0, 1), q(1, 1)),
                slope: q(1, 1),
                intercept: q(0, 1),
            }],
            Topology::Interval,
            false,
        )
        .unwrap();
        let w100 = ExpansivityWitness::new(q(1, 4), 100).unwrap();
        assert_eq!(
            expansivity_first_separation(&id, &q(0, 1), &q(1, 8), &w100).unwrap(),
            SeparationOutcome::NotSeparated
        );
        assert_eq!(
            expansivity_first_separation(&f, &q(1, 3), &q(1, 3), &w),
            Err(DynamicsError::SamePoint)
        );
    }
}
