//! Points of `Q(tau)^3`, the face-centred icosahedral module `L`, the star
//! map into internal space, directions, line keys and exact convex geometry.
//!
//! The module `L` is spanned over `Z[tau]` by `b1 = (1,0,0)`,
//! `b2 = ((tau+1)/2, tau/2, 1/2)` and `b3 = (0,0,1)`, i.e. one half of the
//! standard face-centred module. All predicates are exact sign evaluations
//! over `Q(tau)`.

pub mod hull;
pub mod window;

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::qtau::{QTau, ZTau};

/// A point (or vector) of `Q(tau)^3`, written as a row vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Point3 {
    pub x: QTau,
    pub y: QTau,
    pub z: QTau,
}

impl Point3 {
    pub fn new(x: QTau, y: QTau, z: QTau) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3 {
            x: QTau::from_ints(x, 0),
            y: QTau::from_ints(y, 0),
            z: QTau::from_ints(z, 0),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Point3) -> QTau {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn scaled(&self, s: &QTau) -> Point3 {
        Point3 {
            x: &self.x * s,
            y: &self.y * s,
            z: &self.z * s,
        }
    }

    pub fn norm_sq(&self) -> QTau {
        self.dot(self)
    }

    /// Coordinatewise Galois conjugation; the star map of the model set,
    /// extended to all of `Q(tau)^3`.
    pub fn star(&self) -> Point3 {
        Point3 {
            x: self.x.galois(),
            y: self.y.galois(),
            z: self.z.galois(),
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    /// True iff the two vectors are parallel (zero cross product).
    pub fn is_parallel_to(&self, other: &Point3) -> bool {
        self.cross(other).is_zero()
    }

    /// The point with all three coordinates equal to `p/q`.
    pub fn rat_all(p: i64, q: i64) -> Point3 {
        Point3::new(QTau::rat(p, q), QTau::rat(p, q), QTau::rat(p, q))
    }
}

impl Add<&Point3> for &Point3 {
    type Output = Point3;
    fn add(self, rhs: &Point3) -> Point3 {
        Point3 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub<&Point3> for &Point3 {
    type Output = Point3;
    fn sub(self, rhs: &Point3) -> Point3 {
        Point3 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

macro_rules! forward_point_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Point3> for Point3 {
            type Output = Point3;
            fn $method(self, rhs: Point3) -> Point3 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Point3> for Point3 {
            type Output = Point3;
            fn $method(self, rhs: &'a Point3) -> Point3 {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Point3> for &'a Point3 {
            type Output = Point3;
            fn $method(self, rhs: Point3) -> Point3 {
                self.$method(&rhs)
            }
        }
    };
}

forward_point_binop!(Add, add);
forward_point_binop!(Sub, sub);

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

/// The five-fold symmetry axis `(tau, 0, 1)` of `L`.
pub fn five_fold_axis() -> Point3 {
    Point3::new(QTau::tau(), QTau::zero(), QTau::one())
}

/// First basis vector of `L`: `(1, 0, 0)`.
pub fn basis_b1() -> Point3 {
    Point3::from_ints(1, 0, 0)
}

/// Second basis vector of `L`: `((tau+1)/2, tau/2, 1/2)`.
pub fn basis_b2() -> Point3 {
    Point3::new(
        QTau::rat2(1, 2, 1, 2),
        QTau::rat2(0, 1, 1, 2),
        QTau::rat(1, 2),
    )
}

/// Third basis vector of `L`: `(0, 0, 1)`.
pub fn basis_b3() -> Point3 {
    Point3::from_ints(0, 0, 1)
}

/// An element of `L`, stored as its `Z[tau]` coefficients over the fixed
/// basis, so membership in `L` holds by construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct ModulePoint {
    pub c1: ZTau,
    pub c2: ZTau,
    pub c3: ZTau,
}

impl ModulePoint {
    pub fn new(c1: ZTau, c2: ZTau, c3: ZTau) -> Self {
        ModulePoint { c1, c2, c3 }
    }

    /// Coefficients `(m1 + n1 tau, m2 + n2 tau, m3 + n3 tau)` from six ints,
    /// the order used by point files.
    pub fn from_ints(m1: i64, n1: i64, m2: i64, n2: i64, m3: i64, n3: i64) -> Self {
        ModulePoint {
            c1: ZTau::from_ints(m1, n1),
            c2: ZTau::from_ints(m2, n2),
            c3: ZTau::from_ints(m3, n3),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero() && self.c3.is_zero()
    }

    /// The physical-space point `c1 b1 + c2 b2 + c3 b3`.
    pub fn embed(&self) -> Point3 {
        let c1 = self.c1.to_qtau();
        let c2 = self.c2.to_qtau();
        let c3 = self.c3.to_qtau();
        let b2 = basis_b2();
        Point3 {
            x: &c1 + &c2 * &b2.x,
            y: &c2 * &b2.y,
            z: &c2 * &b2.z + &c3,
        }
    }

    /// Solve the (always regular) linear system for the basis coefficients
    /// and accept iff all three land in `Z[tau]`.
    pub fn from_point(p: &Point3) -> Option<ModulePoint> {
        // y = c2 * tau/2     =>  c2 = 2 y (tau - 1)      (1/tau = tau - 1)
        // x = c1 + c2 (tau+1)/2  =>  c1 = x - y tau
        // z = c2 / 2 + c3    =>  c3 = z - y (tau - 1)
        let tau = QTau::tau();
        let c2 = &(&p.y + &p.y) * &QTau::from_ints(-1, 1);
        let c1 = &p.x - &(&p.y * &tau);
        let c3 = &p.z - &(&p.y * &QTau::from_ints(-1, 1));
        Some(ModulePoint {
            c1: ZTau::try_from_qtau(&c1)?,
            c2: ZTau::try_from_qtau(&c2)?,
            c3: ZTau::try_from_qtau(&c3)?,
        })
    }

    /// The exact field coefficients of an arbitrary point of `Q(tau)^3` over
    /// the `L`-basis (no integrality requirement).
    pub fn field_coefficients(p: &Point3) -> [QTau; 3] {
        let tau = QTau::tau();
        let c2 = &(&p.y + &p.y) * &QTau::from_ints(-1, 1);
        let c1 = &p.x - &(&p.y * &tau);
        let c3 = &p.z - &(&p.y * &QTau::from_ints(-1, 1));
        [c1, c2, c3]
    }

    pub fn star(&self) -> Point3 {
        self.embed().star()
    }
}

impl Add<&ModulePoint> for &ModulePoint {
    type Output = ModulePoint;
    fn add(self, rhs: &ModulePoint) -> ModulePoint {
        ModulePoint {
            c1: &self.c1 + &rhs.c1,
            c2: &self.c2 + &rhs.c2,
            c3: &self.c3 + &rhs.c3,
        }
    }
}

impl Sub<&ModulePoint> for &ModulePoint {
    type Output = ModulePoint;
    fn sub(self, rhs: &ModulePoint) -> ModulePoint {
        ModulePoint {
            c1: &self.c1 - &rhs.c1,
            c2: &self.c2 - &rhs.c2,
            c3: &self.c3 - &rhs.c3,
        }
    }
}

impl ModulePoint {
    /// Scale by an element of `Z[tau]`; `L` is closed under this action.
    pub fn scaled(&self, s: &ZTau) -> ModulePoint {
        ModulePoint {
            c1: &self.c1 * s,
            c2: &self.c2 * s,
            c3: &self.c3 * s,
        }
    }
}

impl fmt::Display for ModulePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.c1, self.c2, self.c3)
    }
}

/// Errors from direction and window construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    ZeroDirection,
    WindowNotFullDimensional,
    WindowVertexOffPlane,
    DegeneratePolygon,
    IcosahedronInvariant(&'static str),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::ZeroDirection => write!(f, "direction vector must be nonzero"),
            GeomError::WindowNotFullDimensional => {
                write!(f, "window vertices do not span a full-dimensional polytope")
            }
            GeomError::WindowVertexOffPlane => {
                write!(f, "window vertex does not lie on the stated plane")
            }
            GeomError::DegeneratePolygon => write!(f, "polygon has zero area"),
            GeomError::IcosahedronInvariant(what) => {
                write!(f, "icosahedron invariant violated: {what}")
            }
        }
    }
}

/// A direction of 3-space, canonicalised projectively over `Q(tau)`.
///
/// Two directions are equal iff their representatives are parallel, which is
/// exactly equality of the canonical keys (first nonzero coordinate scaled
/// to 1). Every representable direction is an `L`-direction: clearing
/// denominators of the basis coefficients yields an interpoint vector of `L`,
/// kept here as a witness.
#[derive(Clone, Debug)]
pub struct Direction {
    representative: Point3,
    canonical_key: Point3,
    l_witness: ModulePoint,
    axis_orthogonal: bool,
}

impl Direction {
    pub fn new(v: Point3) -> Result<Direction, GeomError> {
        if v.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let lead = [&v.x, &v.y, &v.z]
            .into_iter()
            .find(|c| !c.is_zero())
            .cloned()
            .expect("nonzero vector has a nonzero coordinate");
        let inv = lead.recip();
        let canonical_key = v.scaled(&inv);
        let l_witness = clear_denominators(&v);
        debug_assert_eq!(
            ModulePoint::from_point(&l_witness.embed()),
            Some(l_witness.clone())
        );
        let axis_orthogonal = v.dot(&five_fold_axis()).is_zero();
        Ok(Direction {
            representative: v,
            canonical_key,
            l_witness,
            axis_orthogonal,
        })
    }

    pub fn representative(&self) -> &Point3 {
        &self.representative
    }

    /// Projective normal form: first nonzero coordinate equals 1.
    pub fn canonical_key(&self) -> &Point3 {
        &self.canonical_key
    }

    /// An interpoint vector of `L` parallel to this direction.
    pub fn l_witness(&self) -> &ModulePoint {
        &self.l_witness
    }

    /// True iff the direction lies in the hyperplane orthogonal to the
    /// five-fold axis `(tau, 0, 1)`.
    pub fn is_axis_orthogonal(&self) -> bool {
        self.axis_orthogonal
    }

    pub fn is_parallel_to(&self, other: &Direction) -> bool {
        self == other
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key == other.canonical_key
    }
}

impl Eq for Direction {}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key.cmp(&other.canonical_key)
    }
}

/// Smallest positive integer multiple of `v` lying in `L`, as a module point.
fn clear_denominators(v: &Point3) -> ModulePoint {
    let coeffs = ModulePoint::field_coefficients(v);
    let mut scale = BigInt::one();
    for c in &coeffs {
        scale = scale.lcm(c.rational_part().denom());
        scale = scale.lcm(c.tau_part().denom());
    }
    let factor = QTau::new(scale.into(), num_traits::Zero::zero());
    let scaled = v.scaled(&factor);
    ModulePoint::from_point(&scaled).expect("denominator-cleared vector lies in L")
}

/// Canonical key for a line: its direction plus the unique point of the line
/// orthogonal to the direction (the foot of the perpendicular from the
/// origin). Equal for all points on the same line.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct LineKey {
    pub direction: Direction,
    pub base: Point3,
}

impl LineKey {
    /// Key of the line through `p` in direction `u`.
    pub fn through(p: &Point3, u: &Direction) -> LineKey {
        let k = u.canonical_key();
        let t = &p.dot(k) / &k.dot(k);
        let base = p - &k.scaled(&t);
        debug_assert!(base.dot(k).is_zero());
        LineKey {
            direction: u.clone(),
            base,
        }
    }

    /// Exact incidence test.
    pub fn contains(&self, p: &Point3) -> bool {
        (p - &self.base).is_parallel_to(self.direction.canonical_key())
    }

    /// The height `base . (tau,0,1)`, constant along the line when the
    /// direction is axis-orthogonal.
    pub fn axis_height(&self) -> QTau {
        self.base.dot(&five_fold_axis())
    }
}

/// A 3x3 matrix over `Q(tau)`, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat3 {
    pub rows: [Point3; 3],
}

impl Mat3 {
    pub fn identity() -> Self {
        Mat3 {
            rows: [
                Point3::from_ints(1, 0, 0),
                Point3::from_ints(0, 1, 0),
                Point3::from_ints(0, 0, 1),
            ],
        }
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        Point3 {
            x: self.rows[0].dot(p),
            y: self.rows[1].dot(p),
            z: self.rows[2].dot(p),
        }
    }

    pub fn matmul(&self, other: &Mat3) -> Mat3 {
        let col = |j: usize| -> Point3 {
            let get = |row: &Point3| match j {
                0 => row.x.clone(),
                1 => row.y.clone(),
                _ => row.z.clone(),
            };
            Point3::new(
                get(&other.rows[0]),
                get(&other.rows[1]),
                get(&other.rows[2]),
            )
        };
        let cols = [col(0), col(1), col(2)];
        let row = |i: usize| -> Point3 {
            Point3::new(
                self.rows[i].dot(&cols[0]),
                self.rows[i].dot(&cols[1]),
                self.rows[i].dot(&cols[2]),
            )
        };
        Mat3 {
            rows: [row(0), row(1), row(2)],
        }
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3 {
            rows: [
                Point3::new(
                    self.rows[0].x.clone(),
                    self.rows[1].x.clone(),
                    self.rows[2].x.clone(),
                ),
                Point3::new(
                    self.rows[0].y.clone(),
                    self.rows[1].y.clone(),
                    self.rows[2].y.clone(),
                ),
                Point3::new(
                    self.rows[0].z.clone(),
                    self.rows[1].z.clone(),
                    self.rows[2].z.clone(),
                ),
            ],
        }
    }

    /// Entrywise Galois conjugation.
    pub fn star(&self) -> Mat3 {
        Mat3 {
            rows: [
                self.rows[0].star(),
                self.rows[1].star(),
                self.rows[2].star(),
            ],
        }
    }
}

/// The order-5 rotation about the five-fold axis `(tau, 0, 1)`.
///
/// It fixes the axis, is orthogonal, and maps `L` onto itself, so it can be
/// used to derive exact in-plane `L`-directions at multiples of `2 pi / 5`.
pub fn five_fold_rotation() -> Mat3 {
    let h = |m: i64, n: i64| QTau::rat2(m, 2, n, 2);
    Mat3 {
        rows: [
            Point3::new(h(0, 1), h(-1, 0), h(-1, 1)),
            Point3::new(h(1, 0), h(-1, 1), h(0, -1)),
            Point3::new(h(-1, 1), h(0, 1), h(1, 0)),
        ],
    }
}

/// The rotation by `2 pi / 10` acting within the plane orthogonal to the
/// five-fold axis: the composition of the point reflection of the plane with
/// the inverse square of the five-fold rotation. Only its restriction to the
/// plane is a rotation by 36 degrees; it also maps `L` onto itself.
pub fn ten_fold_in_plane() -> Mat3 {
    let r = five_fold_rotation();
    let r3 = r.matmul(&r).matmul(&r);
    // negate: point reflection composed with r^3 = r^{-2}
    let neg = |p: &Point3| -p;
    Mat3 {
        rows: [neg(&r3.rows[0]), neg(&r3.rows[1]), neg(&r3.rows[2])],
    }
}

/// Collect the distinct points of a list, sorted canonically.
pub fn sorted_dedup(points: &[Point3]) -> Vec<Point3> {
    let mut v: Vec<Point3> = points.to_vec();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_basis_vectors() {
        assert_eq!(
            ModulePoint::from_ints(1, 0, 0, 0, 0, 0).embed(),
            Point3::from_ints(1, 0, 0)
        );
        assert_eq!(ModulePoint::from_ints(0, 0, 1, 0, 0, 0).embed(), basis_b2());
        // (0,0,tau) coefficients -> tau * b3
        assert_eq!(
            ModulePoint::from_ints(0, 0, 0, 0, 0, 1).embed(),
            Point3::new(QTau::zero(), QTau::zero(), QTau::tau())
        );
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            ModulePoint::from_point(&Point3::from_ints(1, 0, 0)),
            Some(ModulePoint::from_ints(1, 0, 0, 0, 0, 0))
        );
        let half = Point3::new(QTau::rat(1, 2), QTau::zero(), QTau::zero());
        assert_eq!(ModulePoint::from_point(&half), None);
        // (0,1,0) lies in L with coefficients (-tau, 2tau-2, 1-tau)
        assert_eq!(
            ModulePoint::from_point(&Point3::from_ints(0, 1, 0)),
            Some(ModulePoint::from_ints(0, -1, -2, 2, 1, -1))
        );
    }

    #[test]
    fn embed_membership_round_trip() {
        for coeffs in [
            [1, 2, 3, -4, 5, -6],
            [0, 0, 0, 0, 0, 0],
            [-7, 11, 2, 0, -1, 3],
        ] {
            let m = ModulePoint::from_ints(
                coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5],
            );
            assert_eq!(ModulePoint::from_point(&m.embed()), Some(m));
        }
    }

    #[test]
    fn star_of_b2() {
        // ((tau+1)/2, tau/2, 1/2) -> ((2-tau)/2, (1-tau)/2, 1/2)
        let expected = Point3::new(
            QTau::rat2(2, 2, -1, 2),
            QTau::rat2(1, 2, -1, 2),
            QTau::rat(1, 2),
        );
        assert_eq!(basis_b2().star(), expected);
        assert_eq!(
            Point3::from_ints(1, 0, 0).star(),
            Point3::from_ints(1, 0, 0)
        );
    }

    #[test]
    fn direction_canonicalisation() {
        let d1 = Direction::new(Point3::from_ints(1, 0, 0)).unwrap();
        let d2 = Direction::new(Point3::from_ints(2, 0, 0)).unwrap();
        let d3 = Direction::new(Point3::from_ints(-3, 0, 0)).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(d1, d3);
        assert!(Direction::new(Point3::zero()).is_err());
    }

    #[test]
    fn direction_axis_flags() {
        let u = Direction::new(Point3::from_ints(0, 1, 0)).unwrap();
        assert!(u.is_axis_orthogonal());
        let axis = Direction::new(five_fold_axis()).unwrap();
        assert!(!axis.is_axis_orthogonal());
        // witness of (0,1,0) is (0,1,0) itself
        assert_eq!(u.l_witness().embed(), Point3::from_ints(0, 1, 0));
    }

    #[test]
    fn line_keys_identify_lines() {
        let u = Direction::new(Point3::from_ints(0, 1, 0)).unwrap();
        let p = Point3::from_ints(3, 7, -2);
        let k1 = LineKey::through(&p, &u);
        let shifted = &p + &Point3::from_ints(0, 7, 0);
        assert_eq!(k1, LineKey::through(&shifted, &u));
        assert!(k1.contains(&p));
        assert!(k1.contains(&shifted));
        // a point on the axis through the origin has base 0
        let on_axis = Point3::from_ints(0, 5, 0);
        assert_eq!(LineKey::through(&on_axis, &u).base, Point3::zero());
        // distinct parallel lines, distinct bases
        let q = Point3::from_ints(4, 1, 1);
        assert_ne!(LineKey::through(&q, &u), k1);
    }

    #[test]
    fn five_fold_rotation_properties() {
        let r = five_fold_rotation();
        // fixes the axis
        assert_eq!(r.apply(&five_fold_axis()), five_fold_axis());
        // orthogonal
        let rt = r.transpose();
        assert_eq!(r.matmul(&rt), Mat3::identity());
        // order five
        let r2 = r.matmul(&r);
        let r4 = r2.matmul(&r2);
        assert_eq!(r4.matmul(&r), Mat3::identity());
        // preserves L on the basis
        for b in [basis_b1(), basis_b2(), basis_b3()] {
            assert!(ModulePoint::from_point(&r.apply(&b)).is_some());
        }
    }

    #[test]
    fn ten_fold_preserves_plane_and_module() {
        let s = ten_fold_in_plane();
        let u = Point3::from_ints(0, 1, 0);
        let img = s.apply(&u);
        assert!(img.dot(&five_fold_axis()).is_zero());
        assert!(ModulePoint::from_point(&img).is_some());
        // order ten on the plane: s^10 = identity as a matrix (s^2 = r^-4... s^10 = id)
        let mut acc = Mat3::identity();
        for _ in 0..10 {
            acc = acc.matmul(&s);
        }
        assert_eq!(acc, Mat3::identity());
    }
}
