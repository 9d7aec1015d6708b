//! The abstraction the shadowing solver runs over: a dynamical system whose
//! regions support exact images, preimages, intersections, nonemptiness, and
//! representative extraction.
//!
//! Two backends: piecewise-affine maps with `IntervalSet` regions, and shift
//! spaces with `CylinderSet` regions.

use crate::dynamics::{self, DynamicsError};
use crate::interval::IntervalSet;
use crate::map::{MapError, PiecewiseAffineMap};
use crate::rational::Q;
use crate::symbolic::{
    eps_to_pins, CylinderSet, ShiftSpace, Symbol, SymbolicError, SymbolicPoint,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("point has no preimage")]
    NoPreimage,
    #[error("periodic-point search is not available for this system")]
    PeriodicSearchUnsupported,
}

pub trait RegionSystem {
    type Point: Clone + PartialEq + std::fmt::Debug;
    type Region: Clone + PartialEq + std::fmt::Debug;

    fn whole(&self) -> Self::Region;
    fn apply(&self, p: &Self::Point) -> Result<Self::Point, SystemError>;
    fn ball(&self, center: &Self::Point, eps: &Q) -> Result<Self::Region, SystemError>;
    fn image(&self, r: &Self::Region) -> Self::Region;
    fn preimage(&self, r: &Self::Region) -> Self::Region;
    fn intersect(&self, a: &Self::Region, b: &Self::Region) -> Self::Region;
    fn is_empty(&self, r: &Self::Region) -> bool;
    fn is_whole(&self, r: &Self::Region) -> bool;
    fn representative(&self, r: &Self::Region) -> Option<Self::Point>;
    /// Deterministic (smallest) single preimage of a point.
    fn min_point_preimage(&self, p: &Self::Point) -> Result<Self::Point, SystemError>;
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Q;
    fn closure(&self, r: &Self::Region) -> Self::Region;
    /// Smallest exact fixed point of f^period inside the region, if any.
    fn find_periodic_in(
        &self,
        r: &Self::Region,
        period: usize,
    ) -> Result<Option<Self::Point>, SystemError>;
    /// Finite net of centers fine enough that every eps-ball contains a net
    /// ball, for the covering-time computation.
    fn covering_net(&self, eps: &Q) -> Result<Vec<Self::Point>, SystemError>;

    fn apply_iter(&self, p: &Self::Point, n: usize) -> Result<Self::Point, SystemError> {
        let mut cur = p.clone();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

// --- interval backend ---------------------------------------------------------

#[derive(Clone, Copy)]
pub struct IntervalSystem<'a> {
    map: &'a PiecewiseAffineMap,
}

impl<'a> IntervalSystem<'a> {
    pub fn new(map: &'a PiecewiseAffineMap) -> IntervalSystem<'a> {
        IntervalSystem { map }
    }

    pub fn map(&self) -> &PiecewiseAffineMap {
        self.map
    }
}

impl<'a> RegionSystem for IntervalSystem<'a> {
    type Point = Q;
    type Region = IntervalSet;

    fn whole(&self) -> IntervalSet {
        self.map.whole_space()
    }

    fn apply(&self, p: &Q) -> Result<Q, SystemError> {
        Ok(self.map.eval(p)?)
    }

    fn ball(&self, center: &Q, eps: &Q) -> Result<IntervalSet, SystemError> {
        Ok(dynamics::map_ball(self.map, center, eps)?)
    }

    fn image(&self, r: &IntervalSet) -> IntervalSet {
        self.map.image(r)
    }

    fn preimage(&self, r: &IntervalSet) -> IntervalSet {
        self.map.preimage(r)
    }

    fn intersect(&self, a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
        a.intersect(b)
    }

    fn is_empty(&self, r: &IntervalSet) -> bool {
        r.is_empty()
    }

    fn is_whole(&self, r: &IntervalSet) -> bool {
        *r == self.map.whole_space()
    }

    fn representative(&self, r: &IntervalSet) -> Option<Q> {
        r.representative()
    }

    fn min_point_preimage(&self, p: &Q) -> Result<Q, SystemError> {
        self.map.point_preimages(p).into_iter().next().ok_or(SystemError::NoPreimage)
    }

    fn distance(&self, x: &Q, y: &Q) -> Q {
        self.map.dist(x, y)
    }

    fn closure(&self, r: &IntervalSet) -> IntervalSet {
        r.closure().intersect(&self.map.whole_space())
    }

    fn find_periodic_in(
        &self,
        r: &IntervalSet,
        period: usize,
    ) -> Result<Option<Q>, SystemError> {
        // Closed form only for x |-> s x mod 1 with integer s: the fixed
        // points of f^P are k / (s^P - 1).
        let s = self
            .map
            .integer_mod_slope()
            .ok_or(SystemError::PeriodicSearchUnsupported)?;
        if !(s.clone() - BigInt::one()).is_positive() {
            return Err(SystemError::PeriodicSearchUnsupported);
        }
        let denom = s.pow(period as u32) - BigInt::one();
        let denom_q = Q::from_integer(denom.clone());
        let mut best: Option<Q> = None;
        for part in r.parts() {
            let mut k = (part.lo() * &denom_q).ceil().to_integer();
            if k.is_negative() {
                k = BigInt::from(0);
            }
            while Q::new(k.clone(), denom.clone()) <= *part.hi() && k < denom {
                let cand = Q::new(k.clone(), denom.clone());
                if part.contains(&cand) {
                    if best.as_ref().map_or(true, |b| &cand < b) {
                        best = Some(cand);
                    }
                    break; // parts are sorted; the first hit in a part is its smallest
                }
                k += BigInt::one();
            }
        }
        Ok(best)
    }

    fn covering_net(&self, eps: &Q) -> Result<Vec<Q>, SystemError> {
        if !eps.is_positive() {
            return Err(SystemError::Dynamics(DynamicsError::BadRadius(eps.clone())));
        }
        // Grid step 1/K <= eps/3.
        let three_over = Q::from_integer(BigInt::from(3)) / eps;
        let k = three_over.ceil().to_integer();
        let mut pts = Vec::new();
        let mut j = BigInt::from(0);
        while j <= k {
            let p = Q::new(j.clone(), k.clone());
            if self.map.universe().contains(&p) {
                pts.push(p);
            }
            j += BigInt::one();
        }
        Ok(pts)
    }
}

// --- symbolic backend -----------------------------------------------------------

#[derive(Clone, Copy)]
pub struct ShiftSystem<'a> {
    space: &'a ShiftSpace,
}

impl<'a> ShiftSystem<'a> {
    pub fn new(space: &'a ShiftSpace) -> ShiftSystem<'a> {
        ShiftSystem { space }
    }

    pub fn space(&self) -> &ShiftSpace {
        self.space
    }

    /// Backward reachability table: sets R_t of symbols that reach `target`
    /// in exactly t arrows, t = 0..=steps.
    fn reach_tables(&self, target: Symbol, steps: usize) -> Vec<Vec<bool>> {
        let k = self.space.alphabet_len();
        let mut tables = Vec::with_capacity(steps + 1);
        let mut cur = vec![false; k];
        cur[target] = true;
        tables.push(cur.clone());
        for _ in 0..steps {
            let mut next = vec![false; k];
            for (s, slot) in next.iter_mut().enumerate() {
                *slot = self.space.successors(s).iter().any(|&t| cur[t]);
            }
            tables.push(next.clone());
            cur = next;
        }
        tables
    }
}

impl<'a> RegionSystem for ShiftSystem<'a> {
    type Point = SymbolicPoint;
    type Region = CylinderSet;

    fn whole(&self) -> CylinderSet {
        CylinderSet::whole()
    }

    fn apply(&self, p: &SymbolicPoint) -> Result<SymbolicPoint, SystemError> {
        Ok(p.shift())
    }

    fn ball(&self, center: &SymbolicPoint, eps: &Q) -> Result<CylinderSet, SystemError> {
        let m = eps_to_pins(eps)?;
        if m == 0 {
            return Ok(CylinderSet::whole());
        }
        Ok(CylinderSet::from_words(self.space, vec![center.prefix(m)]))
    }

    fn image(&self, r: &CylinderSet) -> CylinderSet {
        r.image(self.space)
    }

    fn preimage(&self, r: &CylinderSet) -> CylinderSet {
        r.preimage(self.space)
    }

    fn intersect(&self, a: &CylinderSet, b: &CylinderSet) -> CylinderSet {
        a.intersect(self.space, b)
    }

    fn is_empty(&self, r: &CylinderSet) -> bool {
        r.is_empty()
    }

    fn is_whole(&self, r: &CylinderSet) -> bool {
        r.is_whole()
    }

    fn representative(&self, r: &CylinderSet) -> Option<SymbolicPoint> {
        r.representative(self.space)
    }

    fn min_point_preimage(&self, p: &SymbolicPoint) -> Result<SymbolicPoint, SystemError> {
        let a = self
            .space
            .predecessors(p.symbol_at(0))
            .into_iter()
            .next()
            .ok_or(SystemError::NoPreimage)?;
        let mut pre = Vec::with_capacity(p.pre.len() + 1);
        pre.push(a);
        pre.extend_from_slice(&p.pre);
        Ok(SymbolicPoint::new(pre, p.cycle.clone()))
    }

    fn distance(&self, x: &SymbolicPoint, y: &SymbolicPoint) -> Q {
        x.distance(y)
    }

    fn closure(&self, r: &CylinderSet) -> CylinderSet {
        r.clone() // cylinders are clopen
    }

    fn find_periodic_in(
        &self,
        r: &CylinderSet,
        period: usize,
    ) -> Result<Option<SymbolicPoint>, SystemError> {
        assert!(period >= 1);
        for u in r.words() {
            if u.len() >= period {
                // The cycle is forced to be u[..period]; check consistency.
                let cycle = u[..period].to_vec();
                if u.iter().enumerate().all(|(i, &s)| s == cycle[i % period])
                    && self.space.is_allowed(&cycle)?
                    && self.space.transition_allowed(cycle[period - 1], cycle[0])
                {
                    return Ok(Some(SymbolicPoint::periodic(cycle)));
                }
                continue;
            }
            // Extend u to length `period`, then close the loop back to u[0].
            let target = if u.is_empty() { 0 } else { u[0] };
            let tables = self.reach_tables(target, period);
            let mut w = u.clone();
            if w.is_empty() {
                // Smallest symbol that can close a loop of length `period`.
                match (0..self.space.alphabet_len()).find(|&s| tables[period][s]) {
                    Some(s) => w.push(s),
                    None => continue,
                }
            }
            if !tables[period - (w.len() - 1)][w[w.len() - 1]] {
                continue;
            }
            let mut ok = true;
            while w.len() < period {
                let i = w.len();
                let need = period - i; // arrows still needed to land on target
                let next = self
                    .space
                    .successors(w[i - 1])
                    .into_iter()
                    .find(|&s| tables[need][s]);
                match next {
                    Some(s) => w.push(s),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.space.transition_allowed(w[period - 1], w[0]) {
                return Ok(Some(SymbolicPoint::periodic(w)));
            }
        }
        Ok(None)
    }

    fn covering_net(&self, eps: &Q) -> Result<Vec<SymbolicPoint>, SystemError> {
        let m = eps_to_pins(eps)?;
        let words = self.space.words_of_length(m.max(1), crate::symbolic::ENUMERATION_CAP)?;
        Ok(words
            .into_iter()
            .map(|w| crate::symbolic::min_point_in_cylinder(self.space, &w))
            .collect())
    }
}
