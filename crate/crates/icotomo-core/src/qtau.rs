//! Exact arithmetic in the real quadratic field `Q(tau)` where `tau` is the
//! golden ratio, together with the ring of integers `Z[tau]`.
//!
//! Every element is stored as `a + b*tau` with arbitrary-precision rational
//! coefficients in lowest terms. The minimal polynomial `tau^2 = tau + 1`
//! drives multiplication, the Galois conjugation swaps `tau -> 1 - tau`, and
//! comparisons are decided by exact rational arithmetic alone. Floating point
//! appears only in [`QTau::to_f64`], which exists for plotting and is never
//! consulted by a predicate.
//!
//! ```
//! use icotomo_core::qtau::QTau;
//!
//! let tau = QTau::tau();
//! assert_eq!(&tau * &tau, &tau + &QTau::one()); // tau^2 = tau + 1
//! assert_eq!(tau.galois(), QTau::tau_prime()); // tau' = 1 - tau
//! assert!(tau > QTau::one());
//!
//! let x = QTau::from_literal("-8/1+5/1t").unwrap();
//! assert_eq!(x.to_literal(), "-8/1+5/1t");
//! assert_eq!(x.sign(), 1); // 5 tau > 8
//! ```

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `tau` rounded to the nearest `f64`, for plotting only.
pub const TAU_F64: f64 = 1.618_033_988_749_895;

/// An element `a + b*tau` of `Q(tau)`.
///
/// Equality is componentwise equality of the two reduced rationals; the
/// derived `PartialEq`/`Eq` agree with the total order implemented below
/// because `a + b*tau = 0` forces `a = b = 0` (`tau` is irrational).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QTau {
    a: BigRational,
    b: BigRational,
}

impl QTau {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QTau { a, b }
    }

    /// `a + b*tau` from integer coefficients.
    pub fn from_ints(a: i64, b: i64) -> Self {
        QTau {
            a: BigRational::from_integer(BigInt::from(a)),
            b: BigRational::from_integer(BigInt::from(b)),
        }
    }

    /// The rational `p/q` as an element of the field. Panics if `q == 0`.
    pub fn rat(p: i64, q: i64) -> Self {
        QTau {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::zero(),
        }
    }

    /// `p/q + (r/s)*tau`. Panics if a denominator is zero.
    pub fn rat2(p: i64, q: i64, r: i64, s: i64) -> Self {
        QTau {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::new(BigInt::from(r), BigInt::from(s)),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn tau() -> Self {
        Self::from_ints(0, 1)
    }

    /// `tau' = 1 - tau`, the Galois conjugate of `tau`.
    pub fn tau_prime() -> Self {
        Self::from_ints(1, -1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn tau_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True iff the element lies in `Q` (no `tau` component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The image under the field automorphism determined by
    /// `sqrt(5) -> -sqrt(5)`, i.e. `a + b*tau -> (a + b) - b*tau`.
    pub fn galois(&self) -> Self {
        QTau {
            a: &self.a + &self.b,
            b: -self.b.clone(),
        }
    }

    /// Field norm `x * galois(x) = a^2 + ab - b^2`, a rational number.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact sign of the real number `a + b*tau`.
    ///
    /// For `b != 0` the question reduces to comparing the rational
    /// `q = -a/b` against `tau`, decided by `q < tau  <=>  q < 0  or
    /// q^2 < q + 1` (both roots of `X^2 - X - 1` are bracketed by the rule,
    /// and `q = tau` cannot happen for rational `q`).
    pub fn sign(&self) -> i32 {
        if self.b.is_zero() {
            return rational_sign(&self.a);
        }
        let q = -&self.a / &self.b;
        let q_below_tau = q.is_negative() || &q * &q < &q + BigRational::one();
        let positive = if self.b.is_positive() {
            q_below_tau
        } else {
            !q_below_tau
        };
        if positive {
            1
        } else {
            -1
        }
    }

    /// Multiplicative inverse. Panics on zero; see [`QTau::checked_recip`].
    pub fn recip(&self) -> Self {
        self.checked_recip().expect("division by zero in Q(tau)")
    }

    pub fn checked_recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let conj = self.galois();
        Some(QTau {
            a: conj.a / &n,
            b: conj.b / n,
        })
    }

    /// Double-precision evaluation, for plotting only, never for predicates.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * TAU_F64
    }

    /// Canonical ASCII literal, `p/q` or `p/q+r/st` (`t` spells `tau`).
    pub fn to_literal(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "{}/{}", self.a.numer(), self.a.denom());
        if !self.b.is_zero() {
            if self.b.is_negative() {
                let _ = write!(s, "-{}/{}t", -self.b.numer(), self.b.denom());
            } else {
                let _ = write!(s, "+{}/{}t", self.b.numer(), self.b.denom());
            }
        }
        s
    }

    /// Parse the literal format produced by [`QTau::to_literal`].
    pub fn from_literal(text: &str) -> Result<Self, LiteralError> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let a = p.fraction()?;
        let b = if p.done() {
            BigRational::zero()
        } else {
            let negative = match p.next_byte()? {
                b'+' => false,
                b'-' => true,
                _ => return Err(p.unexpected_at(p.pos - 1)),
            };
            let mag = p.fraction()?;
            match p.next_byte()? {
                b't' => {}
                _ => return Err(p.unexpected_at(p.pos - 1)),
            }
            if negative {
                -mag
            } else {
                mag
            }
        };
        if !p.done() {
            return Err(LiteralError::TrailingInput { at: p.pos });
        }
        Ok(QTau { a, b })
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QTau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QTau {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.sign() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl Add<&QTau> for &QTau {
    type Output = QTau;
    fn add(self, rhs: &QTau) -> QTau {
        QTau {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub<&QTau> for &QTau {
    type Output = QTau;
    fn sub(self, rhs: &QTau) -> QTau {
        QTau {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul<&QTau> for &QTau {
    type Output = QTau;
    fn mul(self, rhs: &QTau) -> QTau {
        // (a1 + b1 t)(a2 + b2 t) = a1 a2 + b1 b2 + (a1 b2 + b1 a2 + b1 b2) t
        let cross = &self.b * &rhs.b;
        QTau {
            a: &self.a * &rhs.a + &cross,
            b: &self.a * &rhs.b + &self.b * &rhs.a + cross,
        }
    }
}

impl Div<&QTau> for &QTau {
    type Output = QTau;
    #[allow(clippy::suspicious_arithmetic_impl)] // division through the inverse
    fn div(self, rhs: &QTau) -> QTau {
        self * &rhs.recip()
    }
}

impl Neg for &QTau {
    type Output = QTau;
    fn neg(self) -> QTau {
        QTau {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Neg for QTau {
    type Output = QTau;
    fn neg(self) -> QTau {
        QTau {
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QTau> for QTau {
            type Output = QTau;
            fn $method(self, rhs: QTau) -> QTau {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QTau> for QTau {
            type Output = QTau;
            fn $method(self, rhs: &'a QTau) -> QTau {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QTau> for &'a QTau {
            type Output = QTau;
            fn $method(self, rhs: QTau) -> QTau {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

/// An element `m + n*tau` of the ring of integers `Z[tau]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct ZTau {
    m: BigInt,
    n: BigInt,
}

impl ZTau {
    pub fn new(m: BigInt, n: BigInt) -> Self {
        ZTau { m, n }
    }

    pub fn from_ints(m: i64, n: i64) -> Self {
        ZTau {
            m: BigInt::from(m),
            n: BigInt::from(n),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn tau() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero()
    }

    pub fn to_qtau(&self) -> QTau {
        QTau {
            a: BigRational::from_integer(self.m.clone()),
            b: BigRational::from_integer(self.n.clone()),
        }
    }

    /// Back from the field, succeeding iff both coefficients are integers.
    pub fn try_from_qtau(x: &QTau) -> Option<Self> {
        if x.a.is_integer() && x.b.is_integer() {
            Some(ZTau {
                m: x.a.numer().clone(),
                n: x.b.numer().clone(),
            })
        } else {
            None
        }
    }
}

impl Add<&ZTau> for &ZTau {
    type Output = ZTau;
    fn add(self, rhs: &ZTau) -> ZTau {
        ZTau {
            m: &self.m + &rhs.m,
            n: &self.n + &rhs.n,
        }
    }
}

impl Sub<&ZTau> for &ZTau {
    type Output = ZTau;
    fn sub(self, rhs: &ZTau) -> ZTau {
        ZTau {
            m: &self.m - &rhs.m,
            n: &self.n - &rhs.n,
        }
    }
}

impl Mul<&ZTau> for &ZTau {
    type Output = ZTau;
    fn mul(self, rhs: &ZTau) -> ZTau {
        let cross = &self.n * &rhs.n;
        ZTau {
            m: &self.m * &rhs.m + &cross,
            n: &self.m * &rhs.n + &self.n * &rhs.m + cross,
        }
    }
}

impl Neg for &ZTau {
    type Output = ZTau;
    fn neg(self) -> ZTau {
        ZTau {
            m: -self.m.clone(),
            n: -self.n.clone(),
        }
    }
}

impl Neg for ZTau {
    type Output = ZTau;
    fn neg(self) -> ZTau {
        ZTau {
            m: -self.m,
            n: -self.n,
        }
    }
}

macro_rules! forward_zbinop {
    ($trait:ident, $method:ident) => {
        impl $trait<ZTau> for ZTau {
            type Output = ZTau;
            fn $method(self, rhs: ZTau) -> ZTau {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a ZTau> for ZTau {
            type Output = ZTau;
            fn $method(self, rhs: &'a ZTau) -> ZTau {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<ZTau> for &'a ZTau {
            type Output = ZTau;
            fn $method(self, rhs: ZTau) -> ZTau {
                self.$method(&rhs)
            }
        }
    };
}

forward_zbinop!(Add, add);
forward_zbinop!(Sub, sub);
forward_zbinop!(Mul, mul);

impl fmt::Display for ZTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.m, self.n)
    }
}

/// Error produced by [`QTau::from_literal`], with a byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiteralError {
    /// A fraction had denominator zero.
    ZeroDenominator { at: usize },
    /// Malformed syntax at the given offset.
    Unexpected { at: usize, found: Option<char> },
    /// Valid literal followed by extra characters.
    TrailingInput { at: usize },
}

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiteralError::ZeroDenominator { at } => {
                write!(f, "zero denominator in QTau literal at offset {at}")
            }
            LiteralError::Unexpected { at, found: Some(c) } => {
                write!(
                    f,
                    "unexpected character '{c}' in QTau literal at offset {at}"
                )
            }
            LiteralError::Unexpected { at, found: None } => {
                write!(f, "QTau literal ended unexpectedly at offset {at}")
            }
            LiteralError::TrailingInput { at } => {
                write!(f, "trailing input after QTau literal at offset {at}")
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn done(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn next_byte(&mut self) -> Result<u8, LiteralError> {
        let b = *self.bytes.get(self.pos).ok_or(LiteralError::Unexpected {
            at: self.pos,
            found: None,
        })?;
        self.pos += 1;
        Ok(b)
    }

    fn unexpected_at(&self, at: usize) -> LiteralError {
        LiteralError::Unexpected {
            at,
            found: self.bytes.get(at).map(|&b| b as char),
        }
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.unexpected_at(self.pos));
        }
        // digits only, cannot fail
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn fraction(&mut self) -> Result<BigRational, LiteralError> {
        let numer = self.integer()?;
        match self.next_byte()? {
            b'/' => {}
            _ => return Err(self.unexpected_at(self.pos - 1)),
        }
        let denom_at = self.pos;
        let denom = self.integer()?;
        if denom.is_zero() {
            return Err(LiteralError::ZeroDenominator { at: denom_at });
        }
        Ok(BigRational::new(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_squared_is_tau_plus_one() {
        let t = QTau::tau();
        assert_eq!(&t * &t, QTau::from_ints(1, 1));
    }

    #[test]
    fn tau_times_one_minus_tau_is_minus_one() {
        let t = QTau::tau();
        let omt = QTau::from_ints(1, -1);
        assert_eq!(&t * &omt, QTau::from_ints(-1, 0));
    }

    #[test]
    fn halves_add_to_one() {
        let x = QTau::rat2(1, 2, 1, 2);
        let y = QTau::rat2(1, 2, -1, 2);
        assert_eq!(&x + &y, QTau::one());
    }

    #[test]
    fn galois_of_tau() {
        assert_eq!(QTau::tau().galois(), QTau::tau_prime());
        assert_eq!(QTau::from_ints(1, 1).galois(), QTau::from_ints(2, -1));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(QTau::tau_prime().sign(), -1); // 1 - tau < 0
        assert_eq!(QTau::zero().sign(), 0);
        assert_eq!(QTau::from_ints(-8, 5).sign(), 1);
        assert_eq!(QTau::from_ints(2, -1).sign(), 1); // 2 - tau ~ 0.382
        assert_eq!(QTau::from_ints(-2, 1).sign(), -1);
    }

    #[test]
    fn ordering_sorts_by_real_value() {
        let mut v = [
            QTau::from_ints(1, -1),
            QTau::zero(),
            QTau::from_ints(2, -1),
            QTau::tau(),
        ];
        v.sort();
        assert_eq!(
            v,
            [
                QTau::from_ints(1, -1),
                QTau::zero(),
                QTau::from_ints(2, -1),
                QTau::tau(),
            ]
        );
        assert!(QTau::tau() > QTau::one());
    }

    #[test]
    fn recip_round_trips() {
        let x = QTau::rat2(3, 4, -5, 7);
        assert_eq!(&x * &x.recip(), QTau::one());
        assert!(QTau::zero().checked_recip().is_none());
    }

    #[test]
    fn to_f64_values() {
        assert!((QTau::tau().to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(QTau::zero().to_f64(), 0.0);
        assert!((QTau::from_ints(-8, 5).to_f64() - 0.090_169_943_749_474).abs() < 1e-10);
    }

    #[test]
    fn literal_round_trip() {
        for x in [
            QTau::zero(),
            QTau::one(),
            QTau::tau(),
            QTau::from_ints(-8, 5),
            QTau::rat2(-3, 7, 22, 5),
            QTau::rat2(0, 1, -1, 2),
        ] {
            let s = x.to_literal();
            assert_eq!(QTau::from_literal(&s).unwrap(), x, "literal {s}");
        }
        assert_eq!(
            QTau::from_literal("-8/1+5/1t").unwrap(),
            QTau::from_ints(-8, 5)
        );
        assert_eq!(QTau::from_ints(-8, 5).to_literal(), "-8/1+5/1t");
    }

    #[test]
    fn literal_errors() {
        match QTau::from_literal("1/0+2t") {
            Err(LiteralError::ZeroDenominator { at: 2 }) => {}
            other => panic!("expected zero-denominator error, got {other:?}"),
        }
        assert!(QTau::from_literal("").is_err());
        assert!(QTau::from_literal("1/2+3t").is_err()); // missing /s
        assert!(QTau::from_literal("1/2x").is_err());
        assert!(QTau::from_literal("1/2+1/3t ").is_err());
    }

    #[test]
    fn ztau_arithmetic() {
        let x = ZTau::from_ints(2, 3);
        let y = ZTau::from_ints(-1, 4);
        assert_eq!(&x + &y, ZTau::from_ints(1, 7));
        // (2+3t)(-1+4t) = -2 + 8t - 3t + 12t^2 = -2 + 5t + 12(t+1) = 10 + 17t
        assert_eq!(&x * &y, ZTau::from_ints(10, 17));
        assert_eq!(ZTau::try_from_qtau(&x.to_qtau()), Some(x));
        assert_eq!(ZTau::try_from_qtau(&QTau::rat(1, 2)), None);
    }

    #[test]
    fn norm_matches_product_with_conjugate() {
        let x = QTau::rat2(3, 2, -4, 5);
        let prod = &x * &x.galois();
        assert!(prod.is_rational());
        assert_eq!(prod.rational_part(), &x.norm());
    }
}
