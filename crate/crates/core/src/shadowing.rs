//! The specification-property machinery: N-spaced specifications, the
//! uniform covering time N(eps), the nested-region shadowing solver, and its
//! periodic extension.
//!
//! The solver walks the specification right to left. For each segment it
//! builds the Bowen window pinning the segment's iterates, then pulls the
//! already-refined tail back across the gap. The pullback is interleaved
//! with the forward images of the current window, which keeps every
//! intermediate region exactly equal to `window n f^-k(tail)` while bounding
//! its complexity: pulling a region straight back through a gap of length g
//! costs 2^g pieces on the doubling map, whereas the interleaved form stays
//! at a handful of pieces when the gap is at the covering time.

use crate::rational::Q;
use crate::region::{RegionSystem, SystemError};
use crate::symbolic::{CylinderSet, ShiftKind, ShiftSpace, Symbol, SymbolicPoint};
use num_traits::Signed;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShadowError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("specification has no segments")]
    EmptySpecification,
    #[error("segment {segment} starts before the required N-spacing")]
    SpacingViolation { segment: usize },
    #[error("gap {gap} is below the covering time {required} for this tolerance")]
    GapBelowCoveringTime { gap: usize, required: usize },
    #[error("no covering time within {max_n} iterations")]
    NotCoveringWithinBound { max_n: usize },
    #[error("refinement emptied at stage {stage}")]
    EmptyRefinement { stage: usize },
    #[error("no fixed point of f^{period} inside the final region")]
    NoPeriodicPointInRegion { period: usize },
    #[error("constructed point fails the shadowing bound")]
    ShadowingViolated,
    #[error("specification tolerance differs from the solver tolerance")]
    EpsMismatch,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("graph truncation {truncation} too small; need at least {required}")]
    TruncationTooSmall { truncation: usize, required: usize },
    #[error("segment has end < start")]
    InvalidSegment,
}

/// One orbit segment of a specification, covering times start..=end. The
/// seed is the phase-space point at time `start`, so the prescribed window is
/// seed, f(seed), ..., f^(end-start)(seed). Periodic extensions replay the
/// first window without ever materializing a negative-time iterate, which is
/// why the anchored seed (not the time-zero point) is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSegment<P> {
    pub start: usize,
    pub end: usize,
    pub seed: P,
}

impl<P> OrbitSegment<P> {
    pub fn new(start: usize, end: usize, seed: P) -> Result<OrbitSegment<P>, ShadowError> {
        if end < start {
            return Err(ShadowError::InvalidSegment);
        }
        Ok(OrbitSegment { start, end, seed })
    }

    /// m = end - start, the paper's window length.
    pub fn window_len(&self) -> usize {
        self.end - self.start
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecificationInstance<P> {
    pub segments: Vec<OrbitSegment<P>>,
    pub gap: usize,
    pub eps: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpacingCheck {
    Pass,
    /// 1-based index of the first segment placed too early.
    Violation { segment: usize },
}

impl<P: Clone + PartialEq + std::fmt::Debug> SpecificationInstance<P> {
    pub fn new(
        mut segments: Vec<OrbitSegment<P>>,
        gap: usize,
        eps: Q,
    ) -> Result<SpecificationInstance<P>, ShadowError> {
        if segments.is_empty() {
            return Err(ShadowError::EmptySpecification);
        }
        if !eps.is_positive() {
            return Err(ShadowError::System(SystemError::Dynamics(
                crate::dynamics::DynamicsError::BadRadius(eps),
            )));
        }
        segments.sort_by_key(|s| s.start);
        Ok(SpecificationInstance { segments, gap, eps })
    }

    /// Build an instance from time-zero points: the stored seed of a segment
    /// [a, b] at x is f^a(x).
    pub fn from_time_zero_points<S>(
        system: &S,
        triples: Vec<(usize, usize, P)>,
        gap: usize,
        eps: Q,
    ) -> Result<SpecificationInstance<P>, ShadowError>
    where
        S: RegionSystem<Point = P>,
    {
        let mut segments = Vec::with_capacity(triples.len());
        for (a, b, x) in triples {
            let seed = system.apply_iter(&x, a)?;
            segments.push(OrbitSegment::new(a, b, seed)?);
        }
        SpecificationInstance::new(segments, gap, eps)
    }

    /// The a_i - b_{i-1} >= N condition, checked pairwise.
    pub fn validate_spacing(&self) -> SpacingCheck {
        for (i, w) in self.segments.windows(2).enumerate() {
            if w[1].start < w[0].end + self.gap {
                return SpacingCheck::Violation { segment: i + 2 };
            }
        }
        SpacingCheck::Pass
    }

    /// Appends the wrap-around segment: a_{n+1} = b_n + N, b_{n+1} =
    /// a_{n+1} + m_1, replaying segment 1's window.
    pub fn periodic_extend(&self) -> SpecificationInstance<P> {
        let first = &self.segments[0];
        let last = self.segments.last().unwrap();
        let a = last.end + self.gap;
        let b = a + first.window_len();
        let mut segments = self.segments.clone();
        segments.push(OrbitSegment { start: a, end: b, seed: first.seed.clone() });
        SpecificationInstance { segments, gap: self.gap, eps: self.eps.clone() }
    }

    /// Exact period of the periodic shadow: b_{n+1} - a_1 + N over the
    /// extended instance.
    pub fn periodic_period(&self) -> usize {
        let ext = self.periodic_extend();
        ext.segments.last().unwrap().end - ext.segments[0].start + self.gap
    }
}

/// The nested-region certificate plus a representative shadowing point.
/// Certificate stage k is the refined suffix window anchored at segment
/// n-k+1's start time: each stage is nonempty and contained in the preceding
/// stage pulled back by the inter-anchor offset; the representative's
/// anchored image lies in the final stage.
#[derive(Clone, Debug, PartialEq)]
pub struct ShadowResult<P, R> {
    pub certificate: Vec<R>,
    pub representative: P,
    pub period: Option<usize>,
    pub max_deviation: Q,
}

/// Least N such that image^N(ball(y, eps)) is the whole space for every
/// center of an eps/3-net; the compactness argument of the proof run with a
/// finite net.
pub fn covering_time<S: RegionSystem>(
    system: &S,
    eps: &Q,
    max_n: usize,
) -> Result<usize, ShadowError> {
    let mut worst = 0usize;
    for center in system.covering_net(eps)? {
        let mut region = system.ball(&center, eps)?;
        let mut n = 0usize;
        while !system.is_whole(&region) {
            if n >= max_n {
                return Err(ShadowError::NotCoveringWithinBound { max_n });
            }
            region = system.image(&region);
            n += 1;
        }
        worst = worst.max(n);
    }
    Ok(worst)
}

pub struct ShadowSolver<'a, S: RegionSystem> {
    system: &'a S,
    eps: Q,
    covering: usize,
}

impl<'a, S: RegionSystem> ShadowSolver<'a, S> {
    /// Computes the covering time for `eps` up front; specifications must
    /// then come with gap >= that constant.
    pub fn new(system: &'a S, eps: Q, max_covering_n: usize) -> Result<Self, ShadowError> {
        let covering = covering_time(system, &eps, max_covering_n)?;
        Ok(ShadowSolver { system, eps, covering })
    }

    /// Uses a covering time established elsewhere.
    pub fn with_covering(system: &'a S, eps: Q, covering: usize) -> Self {
        ShadowSolver { system, eps, covering }
    }

    pub fn covering_time(&self) -> usize {
        self.covering
    }

    pub fn eps(&self) -> &Q {
        &self.eps
    }

    fn admit(&self, spec: &SpecificationInstance<S::Point>) -> Result<(), ShadowError> {
        if spec.eps != self.eps {
            return Err(ShadowError::EpsMismatch);
        }
        if let SpacingCheck::Violation { segment } = spec.validate_spacing() {
            return Err(ShadowError::SpacingViolation { segment });
        }
        if spec.gap < self.covering {
            return Err(ShadowError::GapBelowCoveringTime {
                gap: spec.gap,
                required: self.covering,
            });
        }
        Ok(())
    }

    /// Bowen window pinning times start..=end of the segment: the ball
    /// intersection over the whole inclusive window, pulled back to its
    /// anchor.
    fn segment_window(&self, seg: &OrbitSegment<S::Point>) -> Result<S::Region, ShadowError> {
        let m = seg.window_len();
        let mut orbit = Vec::with_capacity(m + 1);
        orbit.push(seg.seed.clone());
        for _ in 0..m {
            let next = self.system.apply(orbit.last().unwrap())?;
            orbit.push(next);
        }
        let mut region = self.system.ball(&orbit[m], &self.eps)?;
        for j in (0..m).rev() {
            let b = self.system.ball(&orbit[j], &self.eps)?;
            region = self.system.intersect(&b, &self.system.preimage(&region));
        }
        Ok(region)
    }

    /// Suffix windows T_i = window_i n f^-(a_{i+1}-a_i)(T_{i+1}), each
    /// anchored at its segment's start.
    fn refine(
        &self,
        spec: &SpecificationInstance<S::Point>,
    ) -> Result<Vec<S::Region>, ShadowError> {
        let n = spec.segments.len();
        let mut suffix: Vec<Option<S::Region>> = vec![None; n];
        let last = self.segment_window(&spec.segments[n - 1])?;
        if self.system.is_empty(&last) {
            return Err(ShadowError::EmptyRefinement { stage: n - 1 });
        }
        suffix[n - 1] = Some(last);
        for i in (0..n.saturating_sub(1)).rev() {
            let window = self.segment_window(&spec.segments[i])?;
            let delta = spec.segments[i + 1].start - spec.segments[i].start;
            // Forward chain of the window across the gap.
            let mut chain = Vec::with_capacity(delta + 1);
            chain.push(window);
            for _ in 0..delta {
                let next = self.system.image(chain.last().unwrap());
                chain.push(next);
            }
            let mut z = self
                .system
                .intersect(suffix[i + 1].as_ref().unwrap(), &chain[delta]);
            for k in (0..delta).rev() {
                z = self.system.intersect(&self.system.preimage(&z), &chain[k]);
            }
            if self.system.is_empty(&z) {
                return Err(ShadowError::EmptyRefinement { stage: i });
            }
            suffix[i] = Some(z);
        }
        Ok(suffix.into_iter().map(Option::unwrap).collect())
    }

    fn verify(
        &self,
        spec: &SpecificationInstance<S::Point>,
        y: &S::Point,
    ) -> Result<Q, ShadowError> {
        let mut max_dev = Q::from_integer(0.into());
        let mut cur = y.clone();
        let mut t = 0usize;
        for seg in &spec.segments {
            while t < seg.start {
                cur = self.system.apply(&cur)?;
                t += 1;
            }
            let mut ref_pt = seg.seed.clone();
            for k in 0..=seg.window_len() {
                let d = self.system.distance(&cur, &ref_pt);
                if d > max_dev {
                    max_dev = d;
                }
                if k < seg.window_len() {
                    cur = self.system.apply(&cur)?;
                    ref_pt = self.system.apply(&ref_pt)?;
                    t += 1;
                }
            }
        }
        if max_dev > self.eps {
            return Err(ShadowError::ShadowingViolated);
        }
        Ok(max_dev)
    }

    fn certificate_from(&self, suffix: Vec<S::Region>) -> Vec<S::Region> {
        suffix.into_iter().rev().collect()
    }

    /// Produce an eps-shadowing point for the specification, with the nested
    /// certificate and the exact maximal deviation over all pinned times.
    pub fn shadow(
        &self,
        spec: &SpecificationInstance<S::Point>,
    ) -> Result<ShadowResult<S::Point, S::Region>, ShadowError> {
        self.admit(spec)?;
        let suffix = self.refine(spec)?;
        let final_region = &suffix[0];
        let anchored = self
            .system
            .representative(final_region)
            .ok_or(ShadowError::EmptyRefinement { stage: 0 })?;
        // Pull the anchored representative back to time zero.
        let mut y = anchored;
        for _ in 0..spec.segments[0].start {
            y = self.system.min_point_preimage(&y)?;
        }
        let max_deviation = self.verify(spec, &y)?;
        Ok(ShadowResult {
            certificate: self.certificate_from(suffix),
            representative: y,
            period: None,
            max_deviation,
        })
    }

    /// Shadow the periodic extension and select an exact fixed point of f^P,
    /// P = b_{n+1} - a_1 + N, inside the closed hull of the final region.
    pub fn periodic_shadow(
        &self,
        spec: &SpecificationInstance<S::Point>,
    ) -> Result<ShadowResult<S::Point, S::Region>, ShadowError> {
        self.admit(spec)?;
        let ext = spec.periodic_extend();
        let suffix = self.refine(&ext)?;
        let period = spec.periodic_period();
        let hull = self.system.closure(&suffix[0]);
        let anchored = self
            .system
            .find_periodic_in(&hull, period)?
            .ok_or(ShadowError::NoPeriodicPointInRegion { period })?;
        // Rotate along the cycle so that f^{a_1}(y) is the anchored point.
        let a1 = spec.segments[0].start;
        let y = if a1 == 0 {
            anchored
        } else {
            let r = a1 % period;
            let back = (period - r) % period;
            self.system.apply_iter(&anchored, back)?
        };
        if self.system.apply_iter(&y, period)? != y {
            return Err(ShadowError::ShadowingViolated);
        }
        let max_deviation = self.verify(spec, &y)?;
        Ok(ShadowResult {
            certificate: self.certificate_from(suffix),
            representative: y,
            period: Some(period),
            max_deviation,
        })
    }
}

// --- specification failure witness for the graph shift --------------------------

/// Exact refutation that the truncated graph shift admits no uniform gap N:
/// the two-segment specification pinning symbol n = N+2 at time 0 and symbol
/// 1 at time N cannot be shadowed at eps = 1/4, because every path from n
/// decrements by at most one per step.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecFailureWitness {
    pub gap: usize,
    /// n = gap + 2, the symbol pinned at time zero.
    pub pinning_symbol: Symbol,
    /// Symbols reachable from n in exactly t steps, t = 0..=gap.
    pub reachable: Vec<BTreeSet<Symbol>>,
    pub symbol_one_unreachable: bool,
    /// [n,n] n sigma^-N([1,1]) computed exactly as cylinder sets.
    pub refutation_empty: bool,
    pub spec: SpecificationInstance<SymbolicPoint>,
}

pub fn spec_failure_witness(
    space: &ShiftSpace,
    gap: usize,
) -> Result<SpecFailureWitness, ShadowError> {
    let truncation = match space.kind() {
        ShiftKind::Graph { truncation } => *truncation,
        ShiftKind::Sft { .. } => {
            return Err(ShadowError::NotApplicable(
                "failure witness is specific to the graph shift".into(),
            ))
        }
    };
    let n = gap + 2;
    if truncation < n {
        return Err(ShadowError::TruncationTooSmall { truncation, required: n });
    }
    let reachable: Vec<BTreeSet<Symbol>> =
        (0..=gap).map(|t| space.reachable_in(n, t)).collect();
    let symbol_one_unreachable = !reachable[gap].contains(&1);

    // eps = 1/4 pins two symbols; both windows are length zero.
    let eps = Q::new(1.into(), 4.into());
    let spec = SpecificationInstance::new(
        vec![
            OrbitSegment::new(0, 0, SymbolicPoint::constant(n))?,
            OrbitSegment::new(gap, gap, SymbolicPoint::constant(1))?,
        ],
        gap,
        eps,
    )?;

    // Exact emptiness of the would-be refinement.
    let ball_n = CylinderSet::from_words(space, vec![vec![n, n]]);
    let mut pulled = CylinderSet::from_words(space, vec![vec![1, 1]]);
    for _ in 0..gap {
        pulled = pulled.preimage(space);
    }
    let refutation_empty = ball_n.intersect(space, &pulled).is_empty();

    Ok(SpecFailureWitness {
        gap,
        pinning_symbol: n,
        reachable,
        symbol_one_unreachable,
        refutation_empty,
        spec,
    })
}
