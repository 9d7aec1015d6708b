//! Expansions of 1 in a real base beta > 1 and the zero-run specification
//! classifier.
//!
//! Rational bases are exact. Irrational bases are carried as a directed
//! rational approximation with a stated precision (default 128 bits, rounded
//! up so algebraic identities such as phi^2 = phi + 1 land strictly above
//! their integer values); the only place the approximation is interpreted is
//! the finite-expansion test, which treats a remainder below the precision
//! floor as zero.

use crate::rational::{floor_q, isqrt_floor, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BetaError {
    #[error("beta must exceed 1")]
    BetaTooSmall,
    #[error("polynomial must change sign on the bracket")]
    BadBracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta {
    value: Q,
    precision_bits: Option<u32>,
}

impl Beta {
    pub fn rational(value: Q) -> Result<Beta, BetaError> {
        if value <= Q::one() {
            return Err(BetaError::BetaTooSmall);
        }
        Ok(Beta { value, precision_bits: None })
    }

    /// (1 + sqrt(5)) / 2 rounded up at the given precision.
    pub fn golden(bits: u32) -> Beta {
        let five = BigInt::from(5) << (2 * bits as usize);
        let mut s = isqrt_floor(&five);
        if &s * &s < five {
            s += 1; // round the square root up; 5*4^bits is never a square
        }
        let denom = BigInt::one() << (bits as usize + 1);
        let value = Q::new((BigInt::one() << bits as usize) + s, denom);
        Beta { value, precision_bits: Some(bits) }
    }

    /// Upper bisection approximant of the root of p(x) = sum coeffs[i] x^i in
    /// (lo, hi); requires p(lo) < 0 < p(hi).
    pub fn polynomial_root_upper(
        coeffs: &[i64],
        lo: Q,
        hi: Q,
        bits: u32,
    ) -> Result<Beta, BetaError> {
        let eval = |x: &Q| -> Q {
            coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + Q::from_integer(BigInt::from(*c)))
        };
        if !(eval(&lo).is_negative() && eval(&hi).is_positive()) {
            return Err(BetaError::BadBracket);
        }
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..bits {
            let mid = (&lo + &hi) / Q::from_integer(BigInt::from(2));
            if eval(&mid).is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi <= Q::one() {
            return Err(BetaError::BetaTooSmall);
        }
        Ok(Beta { value: hi, precision_bits: Some(bits) })
    }

    pub fn value(&self) -> &Q {
        &self.value
    }

    pub fn precision_bits(&self) -> Option<u32> {
        self.precision_bits
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational::to_f64(&self.value)
    }

    /// Remainders below this threshold are treated as an exact zero when the
    /// base is an approximation; exact rational bases use literal zero.
    fn zero_floor(&self) -> Option<Q> {
        self.precision_bits.map(|b| {
            let k = (3 * b as usize) / 4;
            Q::new(BigInt::one(), BigInt::one() << k)
        })
    }

    fn is_effectively_zero(&self, x: &Q) -> bool {
        match self.zero_floor() {
            None => x.is_zero(),
            Some(floor) => x <= &floor,
        }
    }

    /// Largest admissible digit.
    fn digit_cap(&self) -> BigInt {
        let ceil = self.value.ceil().to_integer();
        ceil - BigInt::one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    Greedy,
    QuasiGreedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaExpansion {
    pub digits: Vec<u32>,
    pub convention: Convention,
    /// Set when the greedy expansion of 1 terminated (all later greedy digits
    /// are zero); index of the last nonzero digit, 1-based.
    pub finite_length: Option<usize>,
}

/// First k digits of the (quasi-)greedy expansion of 1 in base beta.
///
/// Digits are produced by d_i = floor(beta x_{i-1}), x_i = beta x_{i-1} - d_i
/// from x_0 = 1, capped at ceil(beta)-1 (the cap only binds for integer beta,
/// whose expansion of 1 then comes out directly in its infinite form
/// (beta-1)^inf). The quasi-greedy convention replaces a finite greedy
/// expansion d_1..d_m by the periodic block (d_1, ..., d_{m-1}, d_m - 1)
/// repeated forever.
pub fn expansion_of_one(beta: &Beta, k: usize, convention: Convention) -> BetaExpansion {
    assert!(k >= 1);
    let cap = beta.digit_cap();
    let mut digits: Vec<u32> = Vec::with_capacity(k);
    let mut x = Q::one();
    let mut finite_length = None;
    for i in 0..k {
        let y = beta.value() * &x;
        let mut d = floor_q(&y);
        if d > cap {
            d = cap.clone();
        }
        if d.is_negative() {
            d = BigInt::zero();
        }
        x = y - Q::from_integer(d.clone());
        digits.push(d.to_u32().expect("digit fits in u32"));
        if beta.is_effectively_zero(&x) {
            finite_length = Some(i + 1);
            break;
        }
    }
    match convention {
        Convention::Greedy => {
            digits.resize(k, 0);
            BetaExpansion { digits, convention, finite_length }
        }
        Convention::QuasiGreedy => {
            if let Some(m) = finite_length {
                let mut block = digits[..m].to_vec();
                block[m - 1] -= 1;
                let digits = (0..k).map(|i| block[i % m]).collect();
                BetaExpansion { digits, convention, finite_length: Some(m) }
            } else {
                BetaExpansion { digits, convention, finite_length: None }
            }
        }
    }
}

/// Partial sums sum d_i beta^-i, for the expansion invariants.
pub fn partial_sums(beta: &Beta, digits: &[u32]) -> Vec<Q> {
    let mut out = Vec::with_capacity(digits.len());
    let mut acc = Q::zero();
    let mut power = Q::one();
    for &d in digits {
        power = power / beta.value();
        acc = acc + Q::from_integer(BigInt::from(d)) * &power;
        out.push(acc.clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "run")]
pub enum SpecVerdict {
    SpecConsistent,
    SpecFailsAtDepth(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecClassification {
    pub depth: usize,
    pub max_zero_run: usize,
    pub verdict: SpecVerdict,
}

/// Zero-run classifier over the first k quasi-greedy digits of d(1, beta).
///
/// The bounded-zero-run criterion decides specification for beta-shifts; at
/// finite depth the verdict is necessarily heuristic. A window whose longest
/// run of zeros fills at least half the depth is reported as failing at this
/// depth, anything else as consistent.
pub fn classify_specification(beta: &Beta, k: usize) -> SpecClassification {
    let exp = expansion_of_one(beta, k, Convention::QuasiGreedy);
    let mut max_run = 0usize;
    let mut run = 0usize;
    for &d in &exp.digits {
        if d == 0 {
            run += 1;
            max_run = max_run.max(run);
        } else {
            run = 0;
        }
    }
    let verdict = if max_run * 2 >= k {
        SpecVerdict::SpecFailsAtDepth(max_run)
    } else {
        SpecVerdict::SpecConsistent
    };
    SpecClassification { depth: k, max_zero_run: max_run, verdict }
}
