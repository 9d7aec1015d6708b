//! Wire formats for specifications and shadowing results.
//!
//! Rationals travel as "p/q" strings. A specification is
//! `{"gap": N, "eps": "1/64", "segments": [{"a":..,"b":..,"seed":..}]}`
//! where `seed` is the phase-space point at time `a`: a rational string for
//! interval systems, `{"pre": [...], "cycle": [...]}` for symbolic systems.

use crate::interval::IntervalSet;
use crate::rational::{format_q, parse_q, Q};
use crate::shadowing::{OrbitSegment, ShadowResult, SpecificationInstance};
use crate::symbolic::{CylinderSet, SymbolicPoint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Serialize, Deserialize)]
struct SegmentWire<P> {
    a: usize,
    b: usize,
    seed: P,
}

#[derive(Serialize, Deserialize)]
struct SpecWire<P> {
    gap: usize,
    eps: String,
    segments: Vec<SegmentWire<P>>,
}

fn spec_to_wire<P: Clone, W>(
    spec: &SpecificationInstance<P>,
    encode: impl Fn(&P) -> W,
) -> SpecWire<W> {
    SpecWire {
        gap: spec.gap,
        eps: format_q(&spec.eps),
        segments: spec
            .segments
            .iter()
            .map(|s| SegmentWire { a: s.start, b: s.end, seed: encode(&s.seed) })
            .collect(),
    }
}

fn spec_from_wire<P: Clone + PartialEq + std::fmt::Debug, W>(
    wire: SpecWire<W>,
    decode: impl Fn(&W) -> Result<P, String>,
) -> Result<SpecificationInstance<P>, String> {
    let eps = parse_q(&wire.eps)?;
    let mut segments = Vec::with_capacity(wire.segments.len());
    for s in &wire.segments {
        let seed = decode(&s.seed)?;
        segments.push(OrbitSegment::new(s.a, s.b, seed).map_err(|e| e.to_string())?);
    }
    SpecificationInstance::new(segments, wire.gap, eps).map_err(|e| e.to_string())
}

pub fn interval_spec_to_json(spec: &SpecificationInstance<Q>) -> Value {
    serde_json::to_value(spec_to_wire(spec, format_q)).expect("spec serializes")
}

pub fn interval_spec_from_json(v: &Value) -> Result<SpecificationInstance<Q>, String> {
    let wire: SpecWire<String> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    spec_from_wire(wire, |s| parse_q(s))
}

pub fn shift_spec_to_json(spec: &SpecificationInstance<SymbolicPoint>) -> Value {
    serde_json::to_value(spec_to_wire(spec, Clone::clone)).expect("spec serializes")
}

pub fn shift_spec_from_json(v: &Value) -> Result<SpecificationInstance<SymbolicPoint>, String> {
    let wire: SpecWire<SymbolicPoint> =
        serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    spec_from_wire(wire, |p| {
        if p.cycle.is_empty() {
            Err("cycle must be nonempty".into())
        } else {
            Ok(p.clone())
        }
    })
}

#[derive(Serialize)]
struct ResultWire<P, R> {
    representative: P,
    period: Option<usize>,
    max_deviation: String,
    certificate: Vec<R>,
}

pub fn interval_result_to_json(res: &ShadowResult<Q, IntervalSet>) -> Value {
    serde_json::to_value(ResultWire {
        representative: format_q(&res.representative),
        period: res.period,
        max_deviation: format_q(&res.max_deviation),
        certificate: res.certificate.clone(),
    })
    .expect("result serializes")
}

pub fn shift_result_to_json(res: &ShadowResult<SymbolicPoint, CylinderSet>) -> Value {
    serde_json::to_value(ResultWire {
        representative: res.representative.clone(),
        period: res.period,
        max_deviation: format_q(&res.max_deviation),
        certificate: res.certificate.clone(),
    })
    .expect("result serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::doubling;
    use crate::rational::q;
    use crate::region::IntervalSystem;

    #[test]
    fn interval_spec_round_trip() {
        let f = doubling();
        let sys = IntervalSystem::new(&f);
        let spec = SpecificationInstance::from_time_zero_points(
            &sys,
            vec![(0, 2, q(0, 1)), (10, 12, q(1, 3))],
            8,
            q(1, 8),
        )
        .unwrap();
        let j = interval_spec_to_json(&spec);
        let back = interval_spec_from_json(&j).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn shift_spec_round_trip() {
        let spec = SpecificationInstance::new(
            vec![
                OrbitSegment::new(0, 1, SymbolicPoint::new(vec![1, 0], vec![0])).unwrap(),
                OrbitSegment::new(4, 5, SymbolicPoint::constant(1)).unwrap(),
            ],
            2,
            q(1, 2),
        )
        .unwrap();
        let j = shift_spec_to_json(&spec);
        let back = shift_spec_from_json(&j).unwrap();
        assert_eq!(spec, back);
    }
}
