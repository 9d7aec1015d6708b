//! Piecewise-affine self-maps of a rational interval, exact on points and on
//! `IntervalSet` regions.
//!
//! A map is a finite list of affine branches on flagged subintervals whose
//! union is a single interval (the universe). Maps flagged `reduce_mod_one`
//! reduce outputs into [0,1); the doubling map and every beta-map are stored
//! as a single full-domain branch with that flag, so their image/preimage
//! never needs explicit branch bookkeeping.

use crate::interval::{Interval, IntervalSet};
use crate::rational::{floor_q, format_q, frac_q, parse_q, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Interval,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub domain: Interval,
    pub slope: Q,
    pub intercept: Q,
}

impl Branch {
    fn value_at(&self, x: &Q) -> Q {
        &self.slope * x + &self.intercept
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("point {} lies in no branch domain", format_q(.0))]
    PointOutsideDomain(Q),
    #[error("invalid map: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    branches: Vec<Branch>,
    topology: Topology,
    reduce_mod_one: bool,
    universe: Interval,
}

impl PiecewiseAffineMap {
    pub fn new(
        mut branches: Vec<Branch>,
        topology: Topology,
        reduce_mod_one: bool,
    ) -> Result<PiecewiseAffineMap, MapError> {
        if branches.is_empty() {
            return Err(MapError::Invalid("no branches".into()));
        }
        branches.sort_by(|a, b| a.domain.lo().cmp(b.domain.lo()));
        for b in &branches {
            if b.slope.is_zero() {
                return Err(MapError::Invalid("zero slope branch".into()));
            }
        }
        // Domains must tile a single interval: disjoint, adjacent, no holes.
        let union = IntervalSet::from_intervals(branches.iter().map(|b| b.domain.clone()).collect());
        if union.parts().len() != 1 {
            return Err(MapError::Invalid("branch domains do not tile an interval".into()));
        }
        let total: Q = branches.iter().map(|b| b.domain.measure()).sum();
        if total != union.parts()[0].measure() {
            return Err(MapError::Invalid("branch domains overlap".into()));
        }
        let universe = union.parts()[0].clone();
        if reduce_mod_one || topology == Topology::Circle {
            if *universe.lo() != Q::zero() || *universe.hi() != Q::one() || universe.hi_closed() {
                return Err(MapError::Invalid("circle/mod-1 maps must act on [0,1)".into()));
            }
        }
        let map = PiecewiseAffineMap { branches, topology, reduce_mod_one, universe };
        // Range check: every branch must land inside the universe.
        for b in &map.branches {
            let img = map.branch_image(&IntervalSet::from_interval(b.domain.clone()), b);
            if !img.is_subset(&map.whole_space()) {
                return Err(MapError::Invalid(format!(
                    "branch over {:?} leaves the universe {:?}",
                    b.domain, map.universe
                )));
            }
        }
        Ok(map)
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn reduce_mod_one(&self) -> bool {
        self.reduce_mod_one
    }

    pub fn universe(&self) -> &Interval {
        &self.universe
    }

    pub fn whole_space(&self) -> IntervalSet {
        IntervalSet::from_interval(self.universe.clone())
    }

    /// Metric of the phase space: circle distance on circle maps, |x-y| on
    /// interval maps.
    pub fn dist(&self, x: &Q, y: &Q) -> Q {
        let d = (x - y).abs();
        match self.topology {
            Topology::Interval => d,
            Topology::Circle => {
                let wrap = Q::one() - &d;
                if d <= wrap {
                    d
                } else {
                    wrap
                }
            }
        }
    }

    pub fn eval(&self, x: &Q) -> Result<Q, MapError> {
        let b = self
            .branches
            .iter()
            .find(|b| b.domain.contains(x))
            .ok_or_else(|| MapError::PointOutsideDomain(x.clone()))?;
        let v = b.value_at(x);
        Ok(if self.reduce_mod_one { frac_q(&v) } else { v })
    }

    /// x, f(x), ..., f^n(x).
    pub fn orbit(&self, x: &Q, n: usize) -> Result<Vec<Q>, MapError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for _ in 0..n {
            let next = self.eval(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn eval_iter(&self, x: &Q, n: usize) -> Result<Q, MapError> {
        Ok(self.orbit(x, n)?.pop().unwrap())
    }

    fn branch_image(&self, clipped: &IntervalSet, b: &Branch) -> IntervalSet {
        let img = clipped.affine(&b.slope, &b.intercept);
        if self.reduce_mod_one {
            img.reduce_mod_one()
        } else {
            img
        }
    }

    /// Exact forward image of a region.
    pub fn image(&self, s: &IntervalSet) -> IntervalSet {
        let mut out = IntervalSet::empty();
        for b in &self.branches {
            let clipped = s.intersect(&IntervalSet::from_interval(b.domain.clone()));
            if !clipped.is_empty() {
                out = out.union(&self.branch_image(&clipped, b));
            }
        }
        out
    }

    pub fn image_iter(&self, s: &IntervalSet, n: usize) -> IntervalSet {
        let mut cur = s.clone();
        for _ in 0..n {
            cur = self.image(&cur);
        }
        cur
    }

    /// Exact preimage of a region.
    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        let mut out = IntervalSet::empty();
        for b in &self.branches {
            let inv_slope = Q::one() / &b.slope;
            let inv_intercept = -&b.intercept / &b.slope;
            let dom = IntervalSet::from_interval(b.domain.clone());
            if self.reduce_mod_one {
                // Solve slope*x + intercept = y + j over the integer shifts j
                // that the branch's raw value range meets.
                let raw = b.domain.affine(&b.slope, &b.intercept);
                let j_lo = floor_q(raw.lo());
                let j_hi = floor_q(raw.hi());
                let mut j = j_lo;
                while j <= j_hi {
                    let shifted = s.translate(&Q::from_integer(j.clone()));
                    let pulled = shifted.affine(&inv_slope, &inv_intercept).intersect(&dom);
                    out = out.union(&pulled);
                    j += BigInt::one();
                }
            } else {
                let pulled = s.affine(&inv_slope, &inv_intercept).intersect(&dom);
                out = out.union(&pulled);
            }
        }
        out
    }

    pub fn preimage_iter(&self, s: &IntervalSet, n: usize) -> IntervalSet {
        let mut cur = s.clone();
        for _ in 0..n {
            cur = self.preimage(&cur);
        }
        cur
    }

    /// Preimage of a single point, ascending.
    pub fn point_preimages(&self, y: &Q) -> Vec<Q> {
        let target = IntervalSet::from_interval(Interval::singleton(y.clone()));
        self.preimage(&target)
            .parts()
            .iter()
            .map(|p| {
                debug_assert!(p.is_singleton());
                p.lo().clone()
            })
            .collect()
    }

    /// True iff the map is globally x |-> s*x mod 1 with one full branch and
    /// an integer slope; such maps have closed-form periodic points.
    pub fn integer_mod_slope(&self) -> Option<BigInt> {
        if self.reduce_mod_one
            && self.branches.len() == 1
            && self.branches[0].slope.denom().is_one()
            && self.branches[0].intercept.is_zero()
        {
            Some(self.branches[0].slope.numer().clone())
        } else {
            None
        }
    }
}

// --- builtin maps -----------------------------------------------------------

/// The circle doubling map x |-> 2x mod 1.
pub fn doubling() -> PiecewiseAffineMap {
    PiecewiseAffineMap::new(
        vec![Branch {
            domain: Interval::half_open(Q::zero(), Q::one()),
            slope: Q::from_integer(BigInt::from(2)),
            intercept: Q::zero(),
        }],
        Topology::Circle,
        true,
    )
    .expect("doubling map is valid")
}

/// The beta-map x |-> beta*x mod 1 on [0,1).
pub fn beta_map(beta: &Q) -> Result<PiecewiseAffineMap, MapError> {
    if beta <= &Q::one() {
        return Err(MapError::Invalid("beta-map needs beta > 1".into()));
    }
    PiecewiseAffineMap::new(
        vec![Branch {
            domain: Interval::half_open(Q::zero(), Q::one()),
            slope: beta.clone(),
            intercept: Q::zero(),
        }],
        Topology::Interval,
        true,
    )
}

fn q3(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The continuous piecewise-expanding tent-like map on [0,1/2] that gets
/// replicated in `replicated_map`.
pub fn base_tent_map() -> PiecewiseAffineMap {
    PiecewiseAffineMap::new(
        vec![
            Branch { domain: Interval::closed(Q::zero(), q3(1, 6)), slope: q3(3, 1), intercept: Q::zero() },
            Branch {
                domain: Interval::checked(q3(1, 6), q3(1, 3), false, true).unwrap(),
                slope: q3(-3, 1),
                intercept: Q::one(),
            },
            Branch {
                domain: Interval::checked(q3(1, 3), q3(1, 2), false, true).unwrap(),
                slope: q3(3, 1),
                intercept: q3(-1, 1),
            },
        ],
        Topology::Interval,
        false,
    )
    .expect("base tent map is valid")
}

/// Replicates `base_tent_map` on the dyadic blocks (1-2^-n, 1-2^-(n+1)] for
/// n = 0..=levels, accumulating at the fixed point 1; the tail block beyond
/// the last replica is filled with the identity so 1 stays fixed. The true
/// map has infinitely many replicas; this materializes finitely many.
pub fn replicated_map(levels: u32) -> PiecewiseAffineMap {
    let f0 = base_tent_map();
    let mut branches = Vec::new();
    for n in 0..=levels {
        let scale = Q::new(BigInt::one(), BigInt::one() << n as usize);
        let offset = Q::one() - &scale;
        for (i, b) in f0.branches().iter().enumerate() {
            let lo = &offset + &scale * b.domain.lo();
            let hi = &offset + &scale * b.domain.hi();
            let lo_closed = if i == 0 && n > 0 { false } else { b.domain.lo_closed() };
            let domain = Interval::checked(lo, hi, lo_closed, b.domain.hi_closed()).unwrap();
            // f(x) = offset + scale * f0((x - offset)/scale) keeps the slope.
            let intercept = &offset * (Q::one() - &b.slope) + &scale * &b.intercept;
            branches.push(Branch { domain, slope: b.slope.clone(), intercept });
        }
    }
    let tail_lo = Q::one() - Q::new(BigInt::one(), BigInt::one() << (levels + 1) as usize);
    branches.push(Branch {
        domain: Interval::checked(tail_lo, Q::one(), false, true).unwrap(),
        slope: Q::one(),
        intercept: Q::zero(),
    });
    PiecewiseAffineMap::new(branches, Topology::Interval, false).expect("replicated map is valid")
}

/// The non-transitive interval map with invariant domain [1/3, 1].
pub fn invariant_domain_map() -> PiecewiseAffineMap {
    PiecewiseAffineMap::new(
        vec![
            Branch { domain: Interval::closed(Q::zero(), q3(1, 3)), slope: q3(3, 1), intercept: Q::zero() },
            Branch {
                domain: Interval::checked(q3(1, 3), q3(2, 3), false, true).unwrap(),
                slope: q3(-2, 1),
                intercept: q3(5, 3),
            },
            Branch {
                domain: Interval::checked(q3(2, 3), Q::one(), false, true).unwrap(),
                slope: q3(2, 1),
                intercept: q3(-1, 1),
            },
        ],
        Topology::Interval,
        false,
    )
    .expect("invariant-domain map is valid")
}

// --- serde -------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BranchWire {
    domain: Interval,
    slope: String,
    intercept: String,
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    topology: Topology,
    reduce_mod_one: bool,
    branches: Vec<BranchWire>,
}

impl Serialize for PiecewiseAffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapWire {
            topology: self.topology,
            reduce_mod_one: self.reduce_mod_one,
            branches: self
                .branches
                .iter()
                .map(|b| BranchWire {
                    domain: b.domain.clone(),
                    slope: format_q(&b.slope),
                    intercept: format_q(&b.intercept),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseAffineMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MapWire::deserialize(d)?;
        let branches = w
            .branches
            .into_iter()
            .map(|b| {
                Ok(Branch {
                    domain: b.domain,
                    slope: parse_q(&b.slope).map_err(DeError::custom)?,
                    intercept: parse_q(&b.intercept).map_err(DeError::custom)?,
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        PiecewiseAffineMap::new(branches, w.topology, w.reduce_mod_one).map_err(DeError::custom)
    }
}
