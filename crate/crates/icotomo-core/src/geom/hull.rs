//! Exact convex hulls over `Q(tau)`, in the plane and in 3-space.
//!
//! Degenerate inputs are not errors: the hull of a lower-dimensional point
//! set is reported together with its affine dimension. The 3D hull is a
//! brute-force supporting-plane enumeration, quadratic-to-quartic in the
//! input size, which is fine at the scales this crate works with and keeps
//! every step an exact sign evaluation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{sorted_dedup, Point3};
use crate::qtau::QTau;

/// Sign of the orientation of `(a, b, c)` within the plane of normal `n`:
/// positive iff `c` lies to the left of the ray `a -> b` seen from the side
/// `n` points into.
pub fn orient_in_plane(a: &Point3, b: &Point3, c: &Point3, n: &Point3) -> i32 {
    (b - a).cross(&(c - a)).dot(n).sign()
}

/// Sign of the determinant `[b-a, c-a, d-a]`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i32 {
    (b - a).cross(&(c - a)).dot(&(d - a)).sign()
}

/// Affine dimension of a point set together with an affinely independent
/// witness subset (1 to 4 points; empty input gives dimension -1 encoded
/// as `None`).
pub fn affine_basis(points: &[Point3]) -> Option<(usize, Vec<Point3>)> {
    let pts = sorted_dedup(points);
    let first = pts.first()?.clone();
    let mut basis = vec![first.clone()];
    // a point off the current affine span extends the basis
    for p in pts.iter().skip(1) {
        let extends = match basis.len() {
            1 => *p != first,
            2 => !(p - &basis[0]).is_parallel_to(&(&basis[1] - &basis[0])),
            3 => orient3d(&basis[0], &basis[1], &basis[2], p) != 0,
            _ => false,
        };
        if extends {
            basis.push(p.clone());
            if basis.len() == 4 {
                break;
            }
        }
    }
    Some((basis.len() - 1, basis))
}

/// Hull of a planar point set.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // exact coordinates are heavyweight by nature
pub enum Hull2 {
    Empty,
    Point(Point3),
    /// Two extremes of a collinear set (affine dimension 1).
    Segment(Point3, Point3),
    /// Strictly convex vertices in counterclockwise order with respect to
    /// the plane normal.
    Polygon(Vec<Point3>),
}

impl Hull2 {
    pub fn affine_dim(&self) -> isize {
        match self {
            Hull2::Empty => -1,
            Hull2::Point(_) => 0,
            Hull2::Segment(..) => 1,
            Hull2::Polygon(_) => 2,
        }
    }

    pub fn vertices(&self) -> Vec<Point3> {
        match self {
            Hull2::Empty => Vec::new(),
            Hull2::Point(p) => vec![p.clone()],
            Hull2::Segment(a, b) => vec![a.clone(), b.clone()],
            Hull2::Polygon(v) => v.clone(),
        }
    }
}

/// Convex hull of points lying in a common plane with normal `n`.
///
/// Gift wrapping with exact orientation predicates; collinear triples on the
/// hull boundary keep only the extreme points.
pub fn hull2d(points: &[Point3], n: &Point3) -> Hull2 {
    let pts = sorted_dedup(points);
    match pts.len() {
        0 => return Hull2::Empty,
        1 => return Hull2::Point(pts[0].clone()),
        _ => {}
    }
    debug_assert!(
        pts.iter().all(|p| (p - &pts[0]).dot(n).is_zero()),
        "hull2d input must lie in the stated plane"
    );
    // collinear case: extremes along the common direction
    let dir = &pts[1] - &pts[0];
    if pts.iter().all(|p| (p - &pts[0]).is_parallel_to(&dir)) {
        let t = |p: &Point3| (p - &pts[0]).dot(&dir);
        let mut lo = pts[0].clone();
        let mut hi = pts[0].clone();
        let (mut tlo, mut thi) = (QTau::zero(), QTau::zero());
        for p in &pts {
            let tp = t(p);
            if tp < tlo {
                tlo = tp.clone();
                lo = p.clone();
            }
            if tp > thi {
                thi = tp.clone();
                hi = p.clone();
            }
        }
        return Hull2::Segment(lo, hi);
    }

    // gift wrapping from the canonically smallest point
    let start = pts[0].clone();
    let mut hull = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        // pick the candidate such that every other point is on its left or
        // collinear-and-nearer
        let mut best: Option<Point3> = None;
        for p in &pts {
            if *p == cur {
                continue;
            }
            match &best {
                None => best = Some(p.clone()),
                Some(b) => {
                    let o = orient_in_plane(&cur, b, p, n);
                    if o < 0 {
                        best = Some(p.clone());
                    } else if o == 0 {
                        // collinear: keep the farther one
                        let db = (b - &cur).norm_sq();
                        let dp = (p - &cur).norm_sq();
                        if dp > db {
                            best = Some(p.clone());
                        }
                    }
                }
            }
        }
        let next = best.expect("two or more distinct points");
        if next == start {
            break;
        }
        hull.push(next.clone());
        cur = next;
        debug_assert!(hull.len() <= pts.len(), "gift wrapping failed to close");
    }
    Hull2::Polygon(hull)
}

/// A facet of a 3D hull: outward supporting half-space plus its vertex cycle
/// (counterclockwise seen from outside).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Point3,
    pub offset: QTau,
    pub vertices: Vec<Point3>,
}

impl Facet {
    /// Signed side of `q`: negative inside, zero on the facet plane.
    pub fn side(&self, q: &Point3) -> i32 {
        (&self.normal.dot(q) - &self.offset).sign()
    }
}

/// Hull of a 3D point set, reported with its affine dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Hull3 {
    Empty,
    Point(Point3),
    Segment(Point3, Point3),
    /// Planar set: the plane normal plus counterclockwise vertices.
    Polygon {
        normal: Point3,
        vertices: Vec<Point3>,
    },
    Solid {
        vertices: Vec<Point3>,
        facets: Vec<Facet>,
    },
}

impl Hull3 {
    pub fn affine_dim(&self) -> isize {
        match self {
            Hull3::Empty => -1,
            Hull3::Point(_) => 0,
            Hull3::Segment(..) => 1,
            Hull3::Polygon { .. } => 2,
            Hull3::Solid { .. } => 3,
        }
    }

    pub fn vertices(&self) -> Vec<Point3> {
        match self {
            Hull3::Empty => Vec::new(),
            Hull3::Point(p) => vec![p.clone()],
            Hull3::Segment(a, b) => vec![a.clone(), b.clone()],
            Hull3::Polygon { vertices, .. } => vertices.clone(),
            Hull3::Solid { vertices, .. } => vertices.clone(),
        }
    }

    /// Exact inside-or-on-boundary test against the hull.
    pub fn contains(&self, q: &Point3) -> bool {
        match self {
            Hull3::Empty => false,
            Hull3::Point(p) => p == q,
            Hull3::Segment(a, b) => {
                let ab = b - a;
                let aq = q - a;
                if !aq.is_parallel_to(&ab) {
                    return false;
                }
                let t = aq.dot(&ab);
                t.sign() >= 0 && t <= ab.norm_sq()
            }
            Hull3::Polygon { normal, vertices } => {
                if !(q - &vertices[0]).dot(normal).is_zero() {
                    return false;
                }
                polygon_contains(vertices, normal, q)
            }
            Hull3::Solid { facets, .. } => facets.iter().all(|f| f.side(q) <= 0),
        }
    }
}

/// Inside-or-on test for a convex CCW polygon within its plane. The caller
/// guarantees `q` lies on the plane.
pub fn polygon_contains(vertices: &[Point3], normal: &Point3, q: &Point3) -> bool {
    let k = vertices.len();
    (0..k).all(|i| orient_in_plane(&vertices[i], &vertices[(i + 1) % k], q, normal) >= 0)
}

/// Exact 3D convex hull by supporting-plane enumeration.
pub fn hull3d(points: &[Point3]) -> Hull3 {
    let pts = sorted_dedup(points);
    let Some((dim, basis)) = affine_basis(&pts) else {
        return Hull3::Empty;
    };
    match dim {
        0 => return Hull3::Point(pts[0].clone()),
        1 => {
            let n = pick_orthogonal(&(&basis[1] - &basis[0]));
            match hull2d(&pts, &n) {
                Hull2::Segment(a, b) => return Hull3::Segment(a, b),
                Hull2::Point(p) => return Hull3::Point(p),
                _ => unreachable!("dimension-1 set"),
            }
        }
        2 => {
            let n = (&basis[1] - &basis[0]).cross(&(&basis[2] - &basis[0]));
            match hull2d(&pts, &n) {
                Hull2::Polygon(v) => {
                    return Hull3::Polygon {
                        normal: n,
                        vertices: v,
                    }
                }
                _ => unreachable!("dimension-2 set"),
            }
        }
        _ => {}
    }

    // full-dimensional: every oriented supporting plane spanned by a triple
    let mut planes: BTreeMap<(QTau, QTau, QTau, QTau), (Point3, QTau)> = BTreeMap::new();
    let n_pts = pts.len();
    for i in 0..n_pts {
        for j in (i + 1)..n_pts {
            for k in (j + 1)..n_pts {
                let n = (&pts[j] - &pts[i]).cross(&(&pts[k] - &pts[i]));
                if n.is_zero() {
                    continue;
                }
                let d = n.dot(&pts[i]);
                let mut pos = false;
                let mut neg = false;
                for p in &pts {
                    match (&n.dot(p) - &d).sign() {
                        s if s > 0 => pos = true,
                        s if s < 0 => neg = true,
                        _ => {}
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                // orient outward
                let (n, d) = if pos { (-&n, -&d) } else { (n, d) };
                let key = canonical_plane(&n, &d);
                planes.entry(key).or_insert((n, d));
            }
        }
    }

    let mut facets = Vec::new();
    for (n, d) in planes.values() {
        let on_plane: Vec<Point3> = pts
            .iter()
            .filter(|p| (&n.dot(p) - d).is_zero())
            .cloned()
            .collect();
        match hull2d(&on_plane, n) {
            Hull2::Polygon(vertices) => facets.push(Facet {
                normal: n.clone(),
                offset: d.clone(),
                vertices,
            }),
            _ => unreachable!("supporting plane spanned by a non-collinear triple"),
        }
    }

    let mut vertices: Vec<Point3> = facets
        .iter()
        .flat_map(|f| f.vertices.iter().cloned())
        .collect();
    vertices.sort();
    vertices.dedup();
    Hull3::Solid { vertices, facets }
}

/// Oriented-plane canonical form: scale `(n, d)` by the reciprocal of the
/// absolute value of the first nonzero normal coordinate.
fn canonical_plane(n: &Point3, d: &QTau) -> (QTau, QTau, QTau, QTau) {
    let lead = [&n.x, &n.y, &n.z]
        .into_iter()
        .find(|c| !c.is_zero())
        .expect("nonzero normal");
    let abs = if lead.sign() < 0 { -lead } else { lead.clone() };
    let inv = abs.recip();
    (&n.x * &inv, &n.y * &inv, &n.z * &inv, d * &inv)
}

/// Some vector orthogonal to a nonzero `v`.
fn pick_orthogonal(v: &Point3) -> Point3 {
    let cand = v.cross(&Point3::from_ints(1, 0, 0));
    if !cand.is_zero() {
        return cand;
    }
    v.cross(&Point3::from_ints(0, 1, 0))
}

/// Edge set of a solid hull as unordered vertex pairs.
pub fn solid_edges(facets: &[Facet]) -> Vec<(Point3, Point3)> {
    let mut edges: Vec<(Point3, Point3)> = Vec::new();
    for f in facets {
        let k = f.vertices.len();
        for i in 0..k {
            let a = f.vertices[i].clone();
            let b = f.vertices[(i + 1) % k].clone();
            let e = if a <= b { (a, b) } else { (b, a) };
            edges.push(e);
        }
    }
    edges.sort();
    edges.dedup();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_hull() {
        let pts = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(2, 0, 0),
            Point3::from_ints(0, 2, 0),
        ];
        let n = Point3::from_ints(0, 0, 1);
        match hull2d(&pts, &n) {
            Hull2::Polygon(v) => assert_eq!(v.len(), 3),
            other => panic!("expected triangle, got {other:?}"),
        }
    }

    #[test]
    fn collinear_points_report_dimension_one() {
        let pts = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 1, 0),
            Point3::from_ints(2, 2, 0),
            Point3::from_ints(3, 3, 0),
        ];
        let n = Point3::from_ints(0, 0, 1);
        let h = hull2d(&pts, &n);
        assert_eq!(h.affine_dim(), 1);
        assert_eq!(
            h,
            Hull2::Segment(Point3::from_ints(0, 0, 0), Point3::from_ints(3, 3, 0))
        );
    }

    #[test]
    fn hull_is_idempotent_on_its_vertices() {
        let pts = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(4, 0, 0),
            Point3::from_ints(4, 3, 0),
            Point3::from_ints(0, 3, 0),
            Point3::from_ints(2, 1, 0), // interior
            Point3::from_ints(2, 0, 0), // edge-interior
        ];
        let n = Point3::from_ints(0, 0, 1);
        let Hull2::Polygon(v) = hull2d(&pts, &n) else {
            panic!("expected polygon");
        };
        assert_eq!(v.len(), 4);
        let Hull2::Polygon(v2) = hull2d(&v, &n) else {
            panic!("expected polygon");
        };
        let mut s1 = v.clone();
        s1.sort();
        let mut s2 = v2;
        s2.sort();
        assert_eq!(s1, s2);
    }

    #[test]
    fn tetrahedron_hull() {
        let pts = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
            Point3::from_ints(0, 0, 0), // duplicate
        ];
        let h = hull3d(&pts);
        assert_eq!(h.affine_dim(), 3);
        let Hull3::Solid { vertices, facets } = &h else {
            panic!("expected solid");
        };
        assert_eq!(vertices.len(), 4);
        assert_eq!(facets.len(), 4);
        assert_eq!(solid_edges(facets).len(), 6);
        assert!(h.contains(&Point3::new(
            QTau::rat(1, 4),
            QTau::rat(1, 4),
            QTau::rat(1, 4)
        )));
        assert!(!h.contains(&Point3::from_ints(1, 1, 1)));
        // boundary point
        assert!(h.contains(&Point3::new(QTau::rat(1, 2), QTau::rat(1, 2), QTau::zero())));
    }

    #[test]
    fn cube_hull_merges_coplanar_triangles() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(Point3::from_ints(x, y, z));
                }
            }
        }
        let Hull3::Solid { vertices, facets } = hull3d(&pts) else {
            panic!("expected solid");
        };
        assert_eq!(vertices.len(), 8);
        assert_eq!(facets.len(), 6);
        for f in &facets {
            assert_eq!(f.vertices.len(), 4);
        }
        assert_eq!(solid_edges(&facets).len(), 12);
    }

    #[test]
    fn degenerate_3d_inputs() {
        assert_eq!(hull3d(&[]), Hull3::Empty);
        assert_eq!(hull3d(&[Point3::from_ints(5, 5, 5)]).affine_dim(), 0);
        let seg = hull3d(&[
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 2, 3),
            Point3::from_ints(2, 4, 6),
        ]);
        assert_eq!(seg.affine_dim(), 1);
        let planar = hull3d(&[
            Point3::from_ints(0, 0, 1),
            Point3::from_ints(1, 0, 1),
            Point3::from_ints(0, 1, 1),
            Point3::from_ints(1, 1, 1),
        ]);
        assert_eq!(planar.affine_dim(), 2);
    }
}
