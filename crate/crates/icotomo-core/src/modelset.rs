//! Cut-and-project generation of finite patches of F-type icosahedral model
//! sets, bounded genericity certificates, and slicing orthogonal to the
//! five-fold axis.
//!
//! A patch is `{ alpha in L | embed(alpha) + t in region, star(alpha) in
//! interior of (s + W) }`, stored as module coefficients. Enumeration bounds
//! each `Z[tau]` coefficient `m + n tau` through the pair of linear
//! identities
//!
//! ```text
//! n = ((m + n tau) - (m + n tau')) / sqrt(5)
//! m = ((m + n tau)(tau - 1) + (m + n tau') tau) / sqrt(5)
//! ```
//!
//! evaluated in rational interval arithmetic: the physical region bounds
//! `m + n tau`, the window bounding box bounds `m + n tau'`. Candidates in
//! the resulting finite integer boxes are then filtered exactly.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geom::window::{Classification, Window};
use crate::geom::{five_fold_axis, ModulePoint, Point3};
use crate::qtau::QTau;

/// Physical-space region of a patch.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Region {
    /// Closed Euclidean ball with rational radius.
    Ball { center: Point3, radius: BigRational },
    /// Axis-aligned box with exact bounds.
    Box { lo: [QTau; 3], hi: [QTau; 3] },
}

impl Region {
    pub fn ball(center: Point3, radius: BigRational) -> Region {
        Region::Ball { center, radius }
    }

    /// Exact membership; the ball test is a single sign evaluation.
    pub fn contains(&self, p: &Point3) -> bool {
        match self {
            Region::Ball { center, radius } => {
                let r2 = QTau::new(radius * radius, BigRational::zero());
                (&(p - center).norm_sq() - &r2).sign() <= 0
            }
            Region::Box { lo, hi } => {
                let coords = [&p.x, &p.y, &p.z];
                (0..3).all(|i| *coords[i] >= lo[i] && *coords[i] <= hi[i])
            }
        }
    }

    fn interval_bounds(&self) -> [RatInterval; 3] {
        match self {
            Region::Ball { center, radius } => {
                let c = [&center.x, &center.y, &center.z];
                core::array::from_fn(|i| {
                    let ci = RatInterval::from_qtau(c[i]);
                    RatInterval {
                        lo: &ci.lo - radius,
                        hi: &ci.hi + radius,
                    }
                })
            }
            Region::Box { lo, hi } => core::array::from_fn(|i| RatInterval {
                lo: RatInterval::from_qtau(&lo[i]).lo,
                hi: RatInterval::from_qtau(&hi[i]).hi,
            }),
        }
    }
}

/// Specification of a patch: window (with its shift), physical region, and
/// the global translate `t` of the model set.
#[derive(Clone, Debug)]
pub struct PatchSpec {
    pub window: Window,
    pub region: Region,
    pub translate: Point3,
}

/// A generated finite patch, canonically sorted module points.
#[derive(Clone, Debug)]
pub struct Patch {
    points: Vec<ModulePoint>,
    spec: PatchSpec,
}

impl Patch {
    pub fn points(&self) -> &[ModulePoint] {
        &self.points
    }

    pub fn spec(&self) -> &PatchSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn slices(&self) -> Vec<Slice> {
        slice_points(&self.points)
    }
}

/// A single slice: all patch points with a common inner product against the
/// five-fold axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    height: QTau,
    points: Vec<ModulePoint>,
}

impl Slice {
    pub fn new(height: QTau, mut points: Vec<ModulePoint>) -> Slice {
        points.sort();
        points.dedup();
        Slice { height, points }
    }

    pub fn height(&self) -> &QTau {
        &self.height
    }

    pub fn points(&self) -> &[ModulePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The slice plane `(normal, offset)` in physical space.
    pub fn plane(&self) -> (Point3, QTau) {
        (five_fold_axis(), self.height.clone())
    }

    /// The plane containing the star image of the slice:
    /// `(star(axis), galois(height))`.
    pub fn star_plane(&self) -> (Point3, QTau) {
        (five_fold_axis().star(), self.height.galois())
    }

    pub fn embedded(&self) -> Vec<Point3> {
        self.points.iter().map(|m| m.embed()).collect()
    }

    pub fn starred(&self) -> Vec<Point3> {
        self.points.iter().map(|m| m.star()).collect()
    }
}

/// Group points by their exact axis height; slices come back ordered by
/// increasing height and partition the input.
pub fn slice_points(points: &[ModulePoint]) -> Vec<Slice> {
    let mut groups: alloc::collections::BTreeMap<QTau, Vec<ModulePoint>> =
        alloc::collections::BTreeMap::new();
    let axis = five_fold_axis();
    for p in points {
        let h = p.embed().dot(&axis);
        groups.entry(h).or_default().push(p.clone());
    }
    groups
        .into_iter()
        .map(|(height, pts)| Slice::new(height, pts))
        .collect()
}

/// Report of a bounded genericity scan.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub scanned: usize,
    pub boundary_hits: Vec<ModulePoint>,
}

impl GenericityReport {
    pub fn is_clean(&self) -> bool {
        self.boundary_hits.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSetError {
    NegativeRadius,
    /// The coefficient enumeration box is too large to scan.
    EnumerationTooLarge {
        estimate: u128,
    },
}

impl fmt::Display for ModelSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSetError::NegativeRadius => write!(f, "region radius must be nonnegative"),
            ModelSetError::EnumerationTooLarge { estimate } => {
                write!(
                    f,
                    "coefficient enumeration box too large ({estimate} candidates)"
                )
            }
        }
    }
}

/// Inclusive integer ranges for the six module coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientBox {
    /// `(m_i, n_i)` ranges for i = 1, 2, 3.
    pub ranges: [((i64, i64), (i64, i64)); 3],
}

impl CoefficientBox {
    pub fn candidate_count(&self) -> u128 {
        self.ranges.iter().fold(1u128, |acc, ((ml, mh), (nl, nh))| {
            let m = (mh - ml + 1).max(0) as u128;
            let n = (nh - nl + 1).max(0) as u128;
            acc.saturating_mul(m).saturating_mul(n)
        })
    }
}

/// Exact acceptance filter of `generate`: physical point in the region and
/// star image strictly interior to the translated window.
pub fn accepts(spec: &PatchSpec, candidate: &ModulePoint) -> bool {
    let x = candidate.embed();
    let shifted = &x + &spec.translate;
    if !spec.region.contains(&shifted) {
        return false;
    }
    spec.window.classify(&x.star()) == Classification::Interior
}

/// Coefficient box enclosing every module point whose physical embedding can
/// lie in the region and whose star image can lie in the window bounding box
/// inflated by `margin`.
pub fn coefficient_box(
    spec: &PatchSpec,
    margin: &BigRational,
) -> Result<CoefficientBox, ModelSetError> {
    if let Region::Ball { radius, .. } = &spec.region {
        if radius.is_negative() {
            return Err(ModelSetError::NegativeRadius);
        }
    }
    // physical bounds for embed(p) = (region - translate)
    let region_bounds = spec.region.interval_bounds();
    let t = [&spec.translate.x, &spec.translate.y, &spec.translate.z];
    let phys: [RatInterval; 3] = core::array::from_fn(|i| {
        let ti = RatInterval::from_qtau(t[i]);
        RatInterval {
            lo: &region_bounds[i].lo - &ti.hi,
            hi: &region_bounds[i].hi - &ti.lo,
        }
    });
    // internal bounds: window bounding box inflated by margin
    let (wlo, whi) = spec.window.bounding_box();
    let internal: [RatInterval; 3] = core::array::from_fn(|i| RatInterval {
        lo: &RatInterval::from_qtau(&wlo[i]).lo - margin,
        hi: &RatInterval::from_qtau(&whi[i]).hi + margin,
    });

    let tau = tau_interval();
    let tau_m1 = tau.add_scalar(&-BigRational::one());
    let tau_p = RatInterval {
        lo: BigRational::one() - &tau.hi,
        hi: BigRational::one() - &tau.lo,
    };
    let tau_p_m1 = tau_p.add_scalar(&-BigRational::one());
    let two = BigRational::from_integer(BigInt::from(2));

    // c1 = x1 - x2 tau, c2 = 2 x2 (tau - 1), c3 = x3 - x2 (tau - 1)
    let coeff = |x: &[RatInterval; 3], tq: &RatInterval, tq_m1: &RatInterval| {
        [
            x[0].sub(&x[1].mul(tq)),
            x[1].mul(tq_m1).scale(&two),
            x[2].sub(&x[1].mul(tq_m1)),
        ]
    };
    let vals = coeff(&phys, &tau, &tau_m1);
    let conj = coeff(&internal, &tau_p, &tau_p_m1);

    let sqrt5 = RatInterval {
        lo: &tau.lo + &tau.lo - BigRational::one(),
        hi: &tau.hi + &tau.hi - BigRational::one(),
    };
    let mut ranges = [((0i64, -1i64), (0i64, -1i64)); 3];
    for i in 0..3 {
        // n = (v - w) / sqrt5 ; m = (v (tau - 1) + w tau) / sqrt5
        let n_iv = vals[i].sub(&conj[i]).div_positive(&sqrt5);
        let m_iv = vals[i]
            .mul(&tau_m1)
            .add(&conj[i].mul(&tau))
            .div_positive(&sqrt5);
        ranges[i] = (m_iv.integer_range()?, n_iv.integer_range()?);
    }
    let cb = CoefficientBox { ranges };
    if cb.candidate_count() > 500_000_000 {
        return Err(ModelSetError::EnumerationTooLarge {
            estimate: cb.candidate_count(),
        });
    }
    Ok(cb)
}

/// Generate the patch: enumerate the coefficient box and filter exactly.
pub fn generate(spec: &PatchSpec) -> Result<Patch, ModelSetError> {
    let cb = coefficient_box(spec, &BigRational::zero())?;
    let mut points = Vec::new();
    let [(r1m, r1n), (r2m, r2n), (r3m, r3n)] = cb.ranges;
    for m1 in r1m.0..=r1m.1 {
        for n1 in r1n.0..=r1n.1 {
            for m2 in r2m.0..=r2m.1 {
                for n2 in r2n.0..=r2n.1 {
                    for m3 in r3m.0..=r3m.1 {
                        for n3 in r3n.0..=r3n.1 {
                            let cand = ModulePoint::from_ints(m1, n1, m2, n2, m3, n3);
                            if accepts(spec, &cand) {
                                points.push(cand);
                            }
                        }
                    }
                }
            }
        }
    }
    points.sort();
    Ok(Patch {
        points,
        spec: spec.clone(),
    })
}

/// Bounded genericity scan: enumerate every module point whose star image
/// lies in the window bounding box inflated by `margin` and whose physical
/// embedding lies in the region, and report star images sitting exactly on
/// the window boundary. A clean report certifies genericity only for the
/// scanned range.
pub fn check_generic_bounded(
    spec: &PatchSpec,
    margin: &BigRational,
) -> Result<GenericityReport, ModelSetError> {
    let cb = coefficient_box(spec, margin)?;
    let (wlo, whi) = spec.window.bounding_box();
    let margin_q = QTau::new(margin.clone(), BigRational::zero());
    let blo: [QTau; 3] = core::array::from_fn(|i| &wlo[i] - &margin_q);
    let bhi: [QTau; 3] = core::array::from_fn(|i| &whi[i] + &margin_q);

    let mut scanned = 0usize;
    let mut boundary_hits = Vec::new();
    let [(r1m, r1n), (r2m, r2n), (r3m, r3n)] = cb.ranges;
    for m1 in r1m.0..=r1m.1 {
        for n1 in r1n.0..=r1n.1 {
            for m2 in r2m.0..=r2m.1 {
                for n2 in r2n.0..=r2n.1 {
                    for m3 in r3m.0..=r3m.1 {
                        for n3 in r3n.0..=r3n.1 {
                            let cand = ModulePoint::from_ints(m1, n1, m2, n2, m3, n3);
                            let x = cand.embed();
                            if !spec.region.contains(&(&x + &spec.translate)) {
                                continue;
                            }
                            let star = x.star();
                            let coords = [&star.x, &star.y, &star.z];
                            let in_box =
                                (0..3).all(|i| *coords[i] >= blo[i] && *coords[i] <= bhi[i]);
                            if !in_box {
                                continue;
                            }
                            scanned += 1;
                            if spec.window.classify(&star) == Classification::Boundary {
                                boundary_hits.push(cand);
                            }
                        }
                    }
                }
            }
        }
    }
    boundary_hits.sort();
    Ok(GenericityReport {
        scanned,
        boundary_hits,
    })
}

/// Rational interval with exact endpoints.
#[derive(Clone, Debug)]
struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    fn from_qtau(x: &QTau) -> RatInterval {
        let tau = tau_interval();
        let b = x.tau_part();
        let (blo, bhi) = if b.is_negative() {
            (b * &tau.hi, b * &tau.lo)
        } else {
            (b * &tau.lo, b * &tau.hi)
        };
        RatInterval {
            lo: x.rational_part() + blo,
            hi: x.rational_part() + bhi,
        }
    }

    fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    fn add_scalar(&self, s: &BigRational) -> RatInterval {
        RatInterval {
            lo: &self.lo + s,
            hi: &self.hi + s,
        }
    }

    fn scale(&self, s: &BigRational) -> RatInterval {
        if s.is_negative() {
            RatInterval {
                lo: &self.hi * s,
                hi: &self.lo * s,
            }
        } else {
            RatInterval {
                lo: &self.lo * s,
                hi: &self.hi * s,
            }
        }
    }

    fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RatInterval { lo, hi }
    }

    /// Division by an interval with positive lower bound.
    fn div_positive(&self, other: &RatInterval) -> RatInterval {
        debug_assert!(other.lo.is_positive());
        let candidates = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    fn integer_range(&self) -> Result<(i64, i64), ModelSetError> {
        let lo = self.lo.ceil().to_integer();
        let hi = self.hi.floor().to_integer();
        let lo = lo.to_i64().ok_or(ModelSetError::EnumerationTooLarge {
            estimate: u128::MAX,
        })?;
        let hi = hi.to_i64().ok_or(ModelSetError::EnumerationTooLarge {
            estimate: u128::MAX,
        })?;
        Ok((lo, hi))
    }
}

/// Rational bracket of the golden ratio from consecutive Fibonacci ratios,
/// tight to about 1e-19.
fn tau_interval() -> RatInterval {
    let f45 = BigInt::from(1_134_903_170i64);
    let f46 = BigInt::from(1_836_311_903i64);
    let f47 = BigInt::from(2_971_215_073i64);
    RatInterval {
        lo: BigRational::new(f46.clone(), f45),
        hi: BigRational::new(f47, f46),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn example_window() -> Window {
        let s = QTau::rat(1, 1000);
        Window::icosahedron(Point3::new(s.clone(), s.clone(), s)).unwrap()
    }

    fn ball_spec(radius_num: i64, radius_den: i64) -> PatchSpec {
        PatchSpec {
            window: example_window(),
            region: Region::ball(
                Point3::zero(),
                BigRational::new(BigInt::from(radius_num), BigInt::from(radius_den)),
            ),
            translate: Point3::zero(),
        }
    }

    #[test]
    fn tau_interval_brackets_tau() {
        // q < tau  <=>  q < 0 or q^2 < q + 1, exactly
        let iv = tau_interval();
        let below = |q: &BigRational| q * q < q + BigRational::one();
        assert!(below(&iv.lo), "lower bound not below tau");
        assert!(!below(&iv.hi), "upper bound not above tau");
        assert!(&iv.hi - &iv.lo < BigRational::from_f64(1e-18).unwrap());
    }

    #[test]
    fn origin_belongs_to_example_patch() {
        let patch = generate(&ball_spec(3, 1)).unwrap();
        assert!(patch.points().contains(&ModulePoint::zero()));
        assert!(!patch.is_empty());
    }

    #[test]
    fn radius_zero_keeps_at_most_the_center() {
        let patch = generate(&ball_spec(0, 1)).unwrap();
        assert_eq!(patch.points(), &[ModulePoint::zero()]);
        // zero-radius ball centred off the model set: empty
        let spec = PatchSpec {
            window: example_window(),
            region: Region::ball(Point3::from_ints(0, 0, 7), BigRational::zero()),
            translate: Point3::zero(),
        };
        // (0,0,7) is in L but its star (0,0,7) is far outside the window
        assert!(generate(&spec).unwrap().is_empty());
    }

    #[test]
    fn patch_points_satisfy_the_definitions() {
        let spec = ball_spec(2, 1);
        let patch = generate(&spec).unwrap();
        for p in patch.points() {
            assert!(accepts(&spec, p));
        }
        // sorted canonically
        let mut sorted = patch.points().to_vec();
        sorted.sort();
        assert_eq!(patch.points(), &sorted[..]);
    }

    #[test]
    fn generation_is_monotone_in_the_window() {
        // shrink the window by cutting with a smaller copy: compare the
        // icosahedron against a box inscribed in it
        let s = Point3::zero();
        let small = Window::solid(
            &[
                Point3::rat_all(-1, 2),
                Point3::new(QTau::rat(1, 2), QTau::rat(-1, 2), QTau::rat(-1, 2)),
                Point3::new(QTau::rat(-1, 2), QTau::rat(1, 2), QTau::rat(-1, 2)),
                Point3::new(QTau::rat(-1, 2), QTau::rat(-1, 2), QTau::rat(1, 2)),
                Point3::new(QTau::rat(1, 2), QTau::rat(1, 2), QTau::rat(-1, 2)),
                Point3::new(QTau::rat(1, 2), QTau::rat(-1, 2), QTau::rat(1, 2)),
                Point3::new(QTau::rat(-1, 2), QTau::rat(1, 2), QTau::rat(1, 2)),
                Point3::rat_all(1, 2),
            ],
            s.clone(),
        )
        .unwrap();
        let big = Window::icosahedron(s).unwrap();
        let mk = |w: &Window| PatchSpec {
            window: w.clone(),
            region: Region::ball(Point3::zero(), BigRational::from_integer(BigInt::from(2))),
            translate: Point3::zero(),
        };
        let inner = generate(&mk(&small)).unwrap();
        let outer = generate(&mk(&big)).unwrap();
        for p in inner.points() {
            assert!(outer.points().contains(p));
        }
        assert!(inner.len() < outer.len());
    }

    #[test]
    fn shifted_example_is_generic_in_range() {
        let report = check_generic_bounded(
            &ball_spec(3, 1),
            &BigRational::new(BigInt::from(1), BigInt::from(10)),
        )
        .unwrap();
        assert!(report.is_clean(), "hits: {:?}", report.boundary_hits);
        assert!(report.scanned > 0);
    }

    #[test]
    fn unshifted_window_has_boundary_witness() {
        let spec = PatchSpec {
            window: Window::icosahedron(Point3::zero()).unwrap(),
            region: Region::ball(Point3::zero(), BigRational::from_integer(BigInt::from(3))),
            translate: Point3::zero(),
        };
        let report =
            check_generic_bounded(&spec, &BigRational::new(BigInt::from(1), BigInt::from(10)))
                .unwrap();
        // (tau, 0, 1) lies in L and its star (tau', 0, 1) is a window vertex
        assert!(!report.is_clean());
        let witness = ModulePoint::from_point(&five_fold_axis()).unwrap();
        assert!(report.boundary_hits.contains(&witness));
    }

    #[test]
    fn empty_region_is_vacuously_clean() {
        let spec = PatchSpec {
            window: example_window(),
            region: Region::ball(
                Point3::new(QTau::from_ints(100, 0), QTau::zero(), QTau::zero()),
                BigRational::new(BigInt::from(1), BigInt::from(100)),
            ),
            translate: Point3::zero(),
        };
        let report = check_generic_bounded(&spec, &BigRational::zero()).unwrap();
        assert_eq!(report.scanned, 0);
        assert!(report.is_clean());
    }

    #[test]
    fn slices_partition_the_patch() {
        let patch = generate(&ball_spec(2, 1)).unwrap();
        let slices = patch.slices();
        let total: usize = slices.iter().map(|s| s.len()).sum();
        assert_eq!(total, patch.len());
        let mut reassembled: Vec<ModulePoint> = slices
            .iter()
            .flat_map(|s| s.points().iter().cloned())
            .collect();
        reassembled.sort();
        assert_eq!(reassembled, patch.points());
        // heights strictly increasing and consistent within each slice
        let axis = five_fold_axis();
        for pair in slices.windows(2) {
            assert!(pair[0].height() < pair[1].height());
        }
        for s in &slices {
            for p in s.points() {
                assert_eq!(&p.embed().dot(&axis), s.height());
            }
        }
        // the central slice contains the origin
        let central = slices
            .iter()
            .find(|s| s.height().is_zero())
            .expect("central slice");
        assert!(central.points().contains(&ModulePoint::zero()));
    }

    #[test]
    fn star_heights_are_conjugated() {
        let patch = generate(&ball_spec(2, 1)).unwrap();
        let axis_star = five_fold_axis().star();
        for s in patch.slices() {
            let expected = s.height().galois();
            for p in s.points() {
                assert_eq!(p.star().dot(&axis_star), expected);
            }
        }
    }

    #[test]
    fn translate_moves_the_region() {
        // a patch around t = (1,0,0) equals the patch around the origin of
        // the same window, shifted: membership condition is on embed(p) + t
        let t = Point3::from_ints(1, 0, 0);
        let spec = PatchSpec {
            window: example_window(),
            region: Region::ball(t.clone(), BigRational::from_integer(BigInt::from(1))),
            translate: t,
        };
        let moved = generate(&spec).unwrap();
        let base = generate(&PatchSpec {
            window: example_window(),
            region: Region::ball(Point3::zero(), BigRational::from_integer(BigInt::from(1))),
            translate: Point3::zero(),
        })
        .unwrap();
        assert_eq!(moved.points(), base.points());
    }
}
