//! Finite unions of rational intervals on the line, with explicit endpoint
//! inclusion flags.
//!
//! Open balls, affine images under negative slopes, and complements all move
//! endpoint inclusion around, so the set algebra tracks a closed/open flag per
//! endpoint instead of forcing a half-open convention. Every operation here is
//! exact: two `IntervalSet`s are equal as point sets iff they are structurally
//! equal after canonicalization. Degenerate singletons `[a,a]` are first-class
//! members (they arise from complements of open sets).
//!
//! The canonical form is: parts sorted by left endpoint, pairwise disjoint,
//! and not mergeable (two parts touching at a point stay separate only when
//! that point belongs to neither).

use crate::rational::{floor_q, format_q, parse_q, simplest_in, Q};
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Q,
    hi: Q,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// `None` if the data describes an empty set.
    pub fn checked(lo: Q, hi: Q, lo_closed: bool, hi_closed: bool) -> Option<Interval> {
        if lo < hi || (lo == hi && lo_closed && hi_closed) {
            Some(Interval { lo, hi, lo_closed, hi_closed })
        } else {
            None
        }
    }

    pub fn half_open(lo: Q, hi: Q) -> Interval {
        Interval::checked(lo, hi, true, false).expect("half_open requires lo < hi")
    }

    pub fn open(lo: Q, hi: Q) -> Interval {
        Interval::checked(lo, hi, false, false).expect("open requires lo < hi")
    }

    pub fn closed(lo: Q, hi: Q) -> Interval {
        Interval::checked(lo, hi, true, true).expect("closed requires lo <= hi")
    }

    pub fn singleton(x: Q) -> Interval {
        Interval { lo: x.clone(), hi: x, lo_closed: true, hi_closed: true }
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn measure(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Q) -> bool {
        (x > &self.lo || (self.lo_closed && x == &self.lo))
            && (x < &self.hi || (self.hi_closed && x == &self.hi))
    }

    pub fn closure(&self) -> Interval {
        Interval { lo: self.lo.clone(), hi: self.hi.clone(), lo_closed: true, hi_closed: true }
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo.clone(), self.lo_closed)
        } else if self.lo < other.lo {
            (other.lo.clone(), other.lo_closed)
        } else {
            (self.lo.clone(), self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi.clone(), self.hi_closed)
        } else if self.hi > other.hi {
            (other.hi.clone(), other.hi_closed)
        } else {
            (self.hi.clone(), self.hi_closed && other.hi_closed)
        };
        Interval::checked(lo, hi, lo_closed, hi_closed)
    }

    /// x |-> slope*x + intercept, exact; a negative slope swaps the endpoints
    /// together with their flags.
    pub fn affine(&self, slope: &Q, intercept: &Q) -> Interval {
        assert!(!slope.is_zero());
        let a = slope * &self.lo + intercept;
        let b = slope * &self.hi + intercept;
        if slope.is_positive() {
            Interval { lo: a, hi: b, lo_closed: self.lo_closed, hi_closed: self.hi_closed }
        } else {
            Interval { lo: b, hi: a, lo_closed: self.hi_closed, hi_closed: self.lo_closed }
        }
    }

    pub fn translate(&self, t: &Q) -> Interval {
        Interval {
            lo: &self.lo + t,
            hi: &self.hi + t,
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            format_q(&self.lo),
            format_q(&self.hi),
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(iv: Interval) -> IntervalSet {
        IntervalSet { parts: vec![iv] }
    }

    pub fn from_intervals(parts: Vec<Interval>) -> IntervalSet {
        let mut s = IntervalSet { parts };
        s.normalize();
        s
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> Q {
        self.parts.iter().fold(Q::zero(), |acc, p| acc + p.measure())
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    fn normalize(&mut self) {
        self.parts.sort_by(|a, b| {
            a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(self.parts.len());
        for next in self.parts.drain(..) {
            match merged.last_mut() {
                Some(cur) if next.lo < cur.hi
                    || (next.lo == cur.hi && (cur.hi_closed || next.lo_closed)) =>
                {
                    if next.hi > cur.hi || (next.hi == cur.hi && next.hi_closed) {
                        cur.hi = next.hi;
                        cur.hi_closed = next.hi_closed;
                    }
                }
                _ => merged.push(next),
            }
        }
        self.parts = merged;
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::from_intervals(parts)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        // Merge sweep over the two sorted part lists.
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if let Some(iv) = self.parts[i].intersect(&other.parts[j]) {
                out.push(iv);
            }
            let advance_self = match self.parts[i].hi.cmp(&other.parts[j].hi) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => !self.parts[i].hi_closed,
            };
            if advance_self {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts: out }
    }

    /// Complement relative to a universe interval.
    pub fn complement_in(&self, universe: &Interval) -> IntervalSet {
        let clipped = self.intersect(&IntervalSet::from_interval(universe.clone()));
        let mut out = Vec::new();
        let mut cursor = (universe.lo.clone(), universe.lo_closed);
        for p in &clipped.parts {
            if let Some(gap) = Interval::checked(cursor.0.clone(), p.lo.clone(), cursor.1, !p.lo_closed) {
                out.push(gap);
            }
            cursor = (p.hi.clone(), !p.hi_closed);
        }
        if let Some(gap) =
            Interval::checked(cursor.0, universe.hi.clone(), cursor.1, universe.hi_closed)
        {
            out.push(gap);
        }
        IntervalSet { parts: out }
    }

    pub fn minus(&self, other: &IntervalSet) -> IntervalSet {
        if self.is_empty() {
            return IntervalSet::empty();
        }
        let lo = self.parts.first().unwrap().lo.clone() - Q::one();
        let hi = self.parts.last().unwrap().hi.clone() + Q::one();
        let hull = Interval::closed(lo, hi);
        self.intersect(&other.complement_in(&hull))
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.minus(other).is_empty()
    }

    /// Equality up to finitely many points: the symmetric difference must be a
    /// finite union of singletons.
    pub fn eq_mod_endpoints(&self, other: &IntervalSet) -> bool {
        self.subset_mod_endpoints(other) && other.subset_mod_endpoints(self)
    }

    /// Containment up to finitely many points.
    pub fn subset_mod_endpoints(&self, other: &IntervalSet) -> bool {
        self.minus(other).parts.iter().all(Interval::is_singleton)
    }

    pub fn closure(&self) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().map(Interval::closure).collect())
    }

    /// Exact affine image of the whole set.
    pub fn affine(&self, slope: &Q, intercept: &Q) -> IntervalSet {
        IntervalSet::from_intervals(
            self.parts.iter().map(|p| p.affine(slope, intercept)).collect(),
        )
    }

    pub fn translate(&self, t: &Q) -> IntervalSet {
        IntervalSet { parts: self.parts.iter().map(|p| p.translate(t)).collect() }
    }

    /// Reduce a line set modulo 1 into [0,1), splitting parts at the integer
    /// lattice. The class of an integer point maps to the singleton {0}.
    pub fn reduce_mod_one(&self) -> IntervalSet {
        let mut out: Vec<Interval> = Vec::new();
        let unit = Interval { lo: Q::zero(), hi: Q::one(), lo_closed: true, hi_closed: false };
        for p in &self.parts {
            // A length-one part covers every class only if it owns at least
            // one of its endpoints; the open arc (c, c+1) misses class c.
            if p.measure() > Q::one()
                || (p.measure() == Q::one() && (p.lo_closed || p.hi_closed))
            {
                out.push(unit.clone());
                continue;
            }
            let shift = Q::from_integer(floor_q(&p.lo));
            let q = p.translate(&-shift);
            // Now q.lo in [0,1); q.hi <= q.lo + 1 < 2.
            if q.hi < Q::one() || (q.hi == Q::one() && !q.hi_closed) {
                out.push(q);
            } else {
                if let Some(left) =
                    Interval::checked(q.lo.clone(), Q::one(), q.lo_closed, false)
                {
                    out.push(left);
                }
                // The image of [1, hi] is [0, hi-1]; 1 itself is interior to q
                // here (or its included right endpoint), so 0 is included.
                if let Some(right) =
                    Interval::checked(Q::zero(), &q.hi - Q::one(), true, q.hi_closed)
                {
                    out.push(right);
                }
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// Number of parts counting a pair glued across 0 ~ 1 as one circle arc.
    pub fn circle_arc_count(&self) -> usize {
        let n = self.parts.len();
        if n >= 2 {
            let first = &self.parts[0];
            let last = &self.parts[n - 1];
            if first.lo.is_zero() && first.lo_closed && last.hi.is_one() {
                return n - 1;
            }
        }
        n
    }

    /// sup |x - y| over the closure.
    pub fn diam_interval(&self) -> Q {
        if self.parts.is_empty() {
            return Q::zero();
        }
        &self.parts.last().unwrap().hi - &self.parts.first().unwrap().lo
    }

    /// sup of the circle metric d(x,y) = min(|x-y|, 1-|x-y|) over the closure
    /// of a set contained in [0,1).
    pub fn diam_circle(&self) -> Q {
        let half = Q::new(num_bigint::BigInt::one(), num_bigint::BigInt::from(2));
        let mut best = Q::zero();
        for (i, a) in self.parts.iter().enumerate() {
            for b in &self.parts[i..] {
                // Differences x - y for x in closure(a), y in closure(b) fill
                // [a.lo - b.hi, a.hi - b.lo]; the circle distance of a class t
                // is min({t}, 1-{t}).
                let d_lo = &a.lo - &b.hi;
                let d_hi = &a.hi - &b.lo;
                if &d_hi - &d_lo >= Q::one() {
                    return half;
                }
                // Does [d_lo, d_hi] contain a point congruent to 1/2 mod 1?
                let k = (&d_hi - &half).floor();
                if &k >= &(&d_lo - &half) {
                    return half;
                }
                for d in [&d_lo, &d_hi] {
                    let t = d - Q::from_integer(floor_q(d));
                    let c = if t <= half { t } else { Q::one() - t };
                    if c > best {
                        best = c;
                    }
                }
            }
        }
        best
    }

    /// Deterministic representative: the smallest-denominator rational in the
    /// leftmost part (ties broken by smaller numerator).
    pub fn representative(&self) -> Option<Q> {
        let p = self.parts.first()?;
        Some(simplest_in(&p.lo, &p.hi, p.lo_closed, p.hi_closed))
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, " u ")?;
            }
            write!(f, "{p:?}")?;
            first = false;
        }
        Ok(())
    }
}

// --- serde: endpoints as "p/q" strings, inclusion as a two-char bounds tag ---

#[derive(Serialize, Deserialize)]
struct IntervalWire {
    lo: String,
    hi: String,
    #[serde(default = "default_bounds")]
    bounds: String,
}

fn default_bounds() -> String {
    "[)".to_string()
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let bounds = format!(
            "{}{}",
            if self.lo_closed { '[' } else { '(' },
            if self.hi_closed { ']' } else { ')' }
        );
        IntervalWire { lo: format_q(&self.lo), hi: format_q(&self.hi), bounds }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = IntervalWire::deserialize(d)?;
        let lo = parse_q(&w.lo).map_err(DeError::custom)?;
        let hi = parse_q(&w.hi).map_err(DeError::custom)?;
        let (lc, hc) = match w.bounds.as_str() {
            "[)" => (true, false),
            "()" => (false, false),
            "[]" => (true, true),
            "(]" => (false, true),
            other => return Err(DeError::custom(format!("bad bounds tag {other:?}"))),
        };
        Interval::checked(lo, hi, lc, hc)
            .ok_or_else(|| DeError::custom("empty interval in serialized form"))
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<Interval>::deserialize(d)?;
        Ok(IntervalSet::from_intervals(parts))
    }
}
