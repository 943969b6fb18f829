#![allow(dead_code)]

//! Shared test support: a deterministic generator and a high-precision
//! numerical sign oracle kept independent of the exact predicates it checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use icotomo_core::geom::{ModulePoint, Point3};
use icotomo_core::qtau::{QTau, ZTau};

/// SplitMix64: deterministic, seedable, good enough for test sampling.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform integer in `[-mag, mag]`.
    pub fn int(&mut self, mag: i64) -> i64 {
        (self.below((2 * mag + 1) as u64)) as i64 - mag
    }

    /// Random rational with numerator in `[-mag, mag]`, denominator in `[1, mag]`.
    pub fn rational(&mut self, mag: i64) -> BigRational {
        BigRational::new(
            BigInt::from(self.int(mag)),
            BigInt::from(1 + self.below(mag as u64) as i64),
        )
    }

    pub fn qtau(&mut self, mag: i64) -> QTau {
        QTau::new(self.rational(mag), self.rational(mag))
    }

    pub fn point(&mut self, mag: i64) -> Point3 {
        Point3::new(self.qtau(mag), self.qtau(mag), self.qtau(mag))
    }

    pub fn module_point(&mut self, mag: i64) -> ModulePoint {
        ModulePoint::new(
            ZTau::from_ints(self.int(mag), self.int(mag)),
            ZTau::from_ints(self.int(mag), self.int(mag)),
            ZTau::from_ints(self.int(mag), self.int(mag)),
        )
    }
}

/// Rational interval endpoints bracketing a real number.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(r: BigRational) -> Interval {
        Interval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }

    /// Determined sign of the bracketed number: `None` when the interval
    /// straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Bracket of the golden ratio to `bits` fractional bits, computed through
/// an integer square root: an independent numerical route.
pub fn tau_interval(bits: u32) -> Interval {
    let scale: BigInt = BigInt::one() << bits;
    let five: BigInt = BigInt::from(5) << (2 * bits);
    let s_lo = five.sqrt();
    let s_hi = &s_lo + BigInt::one();
    let denom: BigInt = &scale * BigInt::from(2);
    Interval {
        lo: BigRational::new(&scale + s_lo, denom.clone()),
        hi: BigRational::new(&scale + s_hi, denom),
    }
}

/// Interval evaluation of `a + b*tau` at the given precision.
pub fn qtau_interval(x: &QTau, bits: u32) -> Interval {
    let tau = tau_interval(bits);
    let b = Interval::point(x.tau_part().clone());
    Interval::point(x.rational_part().clone()).add(&b.mul(&tau))
}

/// High-precision numerical sign: the oracle the exact `sign` is checked
/// against. Returns `None` when the precision cannot separate the value
/// from zero (never happens at the magnitudes the tests use, except for
/// exact zero, where both parts vanish).
pub fn numeric_sign(x: &QTau, bits: u32) -> Option<i32> {
    if x.is_zero() {
        return Some(0);
    }
    qtau_interval(x, bits).sign()
}
