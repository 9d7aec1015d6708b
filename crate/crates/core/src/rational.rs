//! Exact rational scalar helpers shared across the crate.
//!
//! All endpoint and orbit arithmetic is done in `Q = BigRational`; nothing in
//! the library rounds silently. Parsing/printing uses the `"p/q"` convention
//! of the CLI ("3" is accepted for "3/1").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Shorthand used pervasively in tests and builtin maps.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// 2^-k as an exact rational.
pub fn pow2(k: i64) -> Q {
    let one = BigInt::one();
    if k >= 0 {
        Q::from_integer(one << k as usize)
    } else {
        Q::new(one, BigInt::one() << (-k) as usize)
    }
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in [0,1).
pub fn frac_q(x: &Q) -> Q {
    x - Q::from_integer(floor_q(x))
}

pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let den: BigInt = q.trim().parse().map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q::new(num, den))
    } else if let Some((int, dec)) = s.split_once('.') {
        // Decimal literals are convenient on the CLI for beta sweeps.
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|e| format!("bad number {s:?}: {e}"))? };
        let scale = BigInt::from(10u32).pow(dec.len() as u32);
        let frac: BigInt = dec.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
        let sign = if s.starts_with('-') { -BigInt::one() } else { BigInt::one() };
        Ok(Q::from_integer(int) + Q::new(sign * frac, scale))
    } else {
        let n: BigInt = s.parse().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        Ok(Q::from_integer(n))
    }
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Floor of the integer square root.
pub fn isqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x: BigInt = BigInt::one() << (n.bits() as usize / 2 + 1);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// serde adapter: rationals as "p/q" strings.
pub mod qserde {
    use super::{format_q, parse_q, Q};
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(DeError::custom)
    }
}

/// The rational with the smallest denominator (then smallest numerator) in a
/// bounded segment of the line, endpoint inclusion controlled by the flags.
/// Stern-Brocot descent; terminates because lo < hi.
pub fn simplest_in(lo: &Q, hi: &Q, lo_ok: bool, hi_ok: bool) -> Q {
    assert!(lo < hi || (lo == hi && lo_ok && hi_ok));
    if lo == hi {
        return lo.clone();
    }
    let admits = |x: &Q| -> bool {
        (x > lo || (lo_ok && x == lo)) && (x < hi || (hi_ok && x == hi))
    };
    // Integer candidates first: smallest |integer| in range.
    let lo_ceil = lo.ceil().to_integer();
    let hi_floor = hi.floor().to_integer();
    let mut best: Option<BigInt> = None;
    let mut k = lo_ceil.clone();
    while k <= hi_floor {
        let cand = Q::from_integer(k.clone());
        if admits(&cand) && best.as_ref().map_or(true, |b| k.abs() < b.abs() || (k.abs() == b.abs() && k < *b)) {
            best = Some(k.clone());
        }
        k += 1;
    }
    if let Some(b) = best {
        return Q::from_integer(b);
    }
    // Now lo and hi share an integer part; walk the Stern-Brocot tree.
    let base = floor_q(lo);
    let a = lo - Q::from_integer(base.clone());
    // Descend on the fractional parts in (0,1).
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one()); // 0/1
    let (mut rn, mut rd) = (BigInt::one(), BigInt::one()); // 1/1
    loop {
        let mn = &ln + &rn;
        let md = &ld + &rd;
        let m = Q::new(mn.clone(), md.clone());
        let cand = &m + Q::from_integer(base.clone());
        if admits(&cand) {
            return cand;
        }
        if m <= a {
            ln = mn;
            ld = md;
        } else {
            rn = mn;
            rd = md;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/3", "0", "7/8", "-2/5", "3"] {
            let v = parse_q(s).unwrap();
            assert_eq!(parse_q(&format_q(&v)).unwrap(), v);
        }
        assert_eq!(parse_q("1.25").unwrap(), q(5, 4));
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn isqrt_matches_squares() {
        for n in 0i64..200 {
            let r = isqrt_floor(&BigInt::from(n));
            let r2 = &r * &r;
            assert!(r2 <= BigInt::from(n));
            let r1 = (&r + 1) * (&r + 1);
            assert!(r1 > BigInt::from(n));
        }
    }

    #[test]
    fn simplest_rational_picks_small_denominators() {
        assert_eq!(simplest_in(&q(3, 10), &q(1, 2), true, false), q(1, 3));
        assert_eq!(simplest_in(&q(0, 1), &q(1, 8), true, false), q(0, 1));
        assert_eq!(simplest_in(&q(0, 1), &q(1, 8), false, false), q(1, 9));
        assert_eq!(simplest_in(&q(5, 8), &q(7, 8), false, false), q(2, 3));
        // half-open [1/2, 1/2 + tiny)
        assert_eq!(simplest_in(&q(1, 2), &q(513, 1024), true, false), q(1, 2));
    }

    #[test]
    fn pow2_is_exact() {
        assert_eq!(pow2(-3), q(1, 8));
        assert_eq!(pow2(4), qi(16));
        assert_eq!(frac_q(&q(7, 3)), q(1, 3));
        assert_eq!(floor_q(&q(-1, 2)), BigInt::from(-1));
    }
}
