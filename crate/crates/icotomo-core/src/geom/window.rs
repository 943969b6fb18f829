//! Convex polytope windows in internal space, with exact boundary
//! classification.
//!
//! A window is stored as its vertex set plus derived supporting half-spaces
//! (outward normals), together with a translate: the shift `s` of the window
//! `s + W`. Classification of a point is the sign pattern of the face
//! functionals, so interior/boundary/exterior are decided exactly.

use alloc::vec::Vec;

use crate::geom::hull::{hull2d, hull3d, orient_in_plane, solid_edges, Facet, Hull2, Hull3};
use crate::geom::{GeomError, Point3};
use crate::qtau::QTau;

/// Result of classifying a point against a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
enum WindowKind {
    /// Full-dimensional convex polytope.
    Solid {
        vertices: Vec<Point3>,
        facets: Vec<Facet>,
    },
    /// Convex polygon inside the plane `normal . x = offset`, counterclockwise.
    Planar {
        normal: Point3,
        offset: QTau,
        vertices: Vec<Point3>,
    },
}

/// A convex polytope window together with its translate `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    kind: WindowKind,
    translate: Point3,
}

impl Window {
    /// Full-dimensional window from its vertex set (hull is taken).
    pub fn solid(vertices: &[Point3], translate: Point3) -> Result<Window, GeomError> {
        match hull3d(vertices) {
            Hull3::Solid { vertices, facets } => Ok(Window {
                kind: WindowKind::Solid { vertices, facets },
                translate,
            }),
            _ => Err(GeomError::WindowNotFullDimensional),
        }
    }

    /// Polygonal window inside the stated plane (hull is taken). Degenerate
    /// polygons are rejected.
    pub fn planar(
        normal: Point3,
        offset: QTau,
        vertices: &[Point3],
        translate: Point3,
    ) -> Result<Window, GeomError> {
        if normal.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        for v in vertices {
            if normal.dot(v) != offset {
                return Err(GeomError::WindowVertexOffPlane);
            }
        }
        match hull2d(vertices, &normal) {
            Hull2::Polygon(vertices) => Ok(Window {
                kind: WindowKind::Planar {
                    normal,
                    offset,
                    vertices,
                },
                translate,
            }),
            _ => Err(GeomError::DegeneratePolygon),
        }
    }

    /// The regular icosahedron of Example-type orientation: the twelve
    /// vertices are the cyclic coordinate permutations of
    /// `(+-tau', 0, +-1)`. The constructor verifies regularity: 30 edges of
    /// squared length `4 (tau-1)^2`, common squared circumradius `3 - tau`,
    /// and 20 hull facets.
    pub fn icosahedron(translate: Point3) -> Result<Window, GeomError> {
        let w = Window::solid(&icosahedron_vertices(), translate)?;
        let WindowKind::Solid { vertices, facets } = &w.kind else {
            unreachable!()
        };
        if vertices.len() != 12 {
            return Err(GeomError::IcosahedronInvariant("vertex count"));
        }
        if facets.len() != 20 {
            return Err(GeomError::IcosahedronInvariant("facet count"));
        }
        let edges = solid_edges(facets);
        if edges.len() != 30 {
            return Err(GeomError::IcosahedronInvariant("edge count"));
        }
        // 4 (tau - 1)^2 = 8 - 4 tau
        let edge_sq = QTau::from_ints(8, -4);
        for (a, b) in &edges {
            if (b - a).norm_sq() != edge_sq {
                return Err(GeomError::IcosahedronInvariant("edge length"));
            }
        }
        let radius_sq = QTau::from_ints(3, -1);
        for v in vertices {
            if v.norm_sq() != radius_sq {
                return Err(GeomError::IcosahedronInvariant("circumradius"));
            }
        }
        Ok(w)
    }

    pub fn translate(&self) -> &Point3 {
        &self.translate
    }

    pub fn with_translate(&self, translate: Point3) -> Window {
        Window {
            kind: self.kind.clone(),
            translate,
        }
    }

    /// Untranslated vertices, as constructed.
    pub fn vertices(&self) -> &[Point3] {
        match &self.kind {
            WindowKind::Solid { vertices, .. } => vertices,
            WindowKind::Planar { vertices, .. } => vertices,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self.kind, WindowKind::Planar { .. })
    }

    /// For a planar window, its plane as `(normal, offset)` before
    /// translation.
    pub fn plane(&self) -> Option<(&Point3, &QTau)> {
        match &self.kind {
            WindowKind::Planar { normal, offset, .. } => Some((normal, offset)),
            WindowKind::Solid { .. } => None,
        }
    }

    /// Supporting half-spaces of a solid window.
    pub fn facets(&self) -> Option<&[Facet]> {
        match &self.kind {
            WindowKind::Solid { facets, .. } => Some(facets),
            WindowKind::Planar { .. } => None,
        }
    }

    /// Exact classification of `q` against the translated window.
    pub fn classify(&self, q: &Point3) -> Classification {
        let r = q - &self.translate;
        match &self.kind {
            WindowKind::Solid { facets, .. } => {
                let mut on_boundary = false;
                for f in facets {
                    match f.side(&r) {
                        s if s > 0 => return Classification::Exterior,
                        0 => on_boundary = true,
                        _ => {}
                    }
                }
                if on_boundary {
                    Classification::Boundary
                } else {
                    Classification::Interior
                }
            }
            WindowKind::Planar {
                normal,
                offset,
                vertices,
            } => {
                if &normal.dot(&r) != offset {
                    return Classification::Exterior;
                }
                let k = vertices.len();
                let mut on_boundary = false;
                for i in 0..k {
                    match orient_in_plane(&vertices[i], &vertices[(i + 1) % k], &r, normal) {
                        s if s < 0 => return Classification::Exterior,
                        0 => on_boundary = true,
                        _ => {}
                    }
                }
                if on_boundary {
                    Classification::Boundary
                } else {
                    Classification::Interior
                }
            }
        }
    }

    /// Coordinatewise bounds of the translated vertex set.
    pub fn bounding_box(&self) -> ([QTau; 3], [QTau; 3]) {
        let mut lo: Option<[QTau; 3]> = None;
        let mut hi: Option<[QTau; 3]> = None;
        for v in self.vertices() {
            let t = v + &self.translate;
            let coords = [t.x, t.y, t.z];
            match (&mut lo, &mut hi) {
                (Some(lo), Some(hi)) => {
                    for i in 0..3 {
                        if coords[i] < lo[i] {
                            lo[i] = coords[i].clone();
                        }
                        if coords[i] > hi[i] {
                            hi[i] = coords[i].clone();
                        }
                    }
                }
                _ => {
                    lo = Some(coords.clone());
                    hi = Some(coords);
                }
            }
        }
        let lo = lo.expect("window has vertices");
        let hi = hi.expect("window has vertices");
        (lo, hi)
    }

    /// Cross-section of a solid window with the plane `normal . x = offset`,
    /// as a planar window in that plane (translate preserved from the cut of
    /// the *translated* solid; the returned window has translate zero and
    /// carries the section in absolute coordinates).
    pub fn section(&self, normal: &Point3, offset: &QTau) -> Result<Window, GeomError> {
        let facets = self.facets().ok_or(GeomError::WindowNotFullDimensional)?;
        // cut every edge of every facet with the plane, collect section points
        let mut pts: Vec<Point3> = Vec::new();
        for f in facets {
            let k = f.vertices.len();
            for i in 0..k {
                let a = &f.vertices[i] + &self.translate;
                let b = &f.vertices[(i + 1) % k] + &self.translate;
                let fa = &normal.dot(&a) - offset;
                let fb = &normal.dot(&b) - offset;
                let (sa, sb) = (fa.sign(), fb.sign());
                if sa == 0 {
                    pts.push(a.clone());
                }
                if sb == 0 {
                    pts.push(b.clone());
                }
                if sa * sb < 0 {
                    // intersection point a + t (b - a), t = fa / (fa - fb)
                    let t = &fa / &(&fa - &fb);
                    let p = &a + &(&b - &a).scaled(&t);
                    pts.push(p);
                }
            }
        }
        Window::planar(normal.clone(), offset.clone(), &pts, Point3::zero())
    }
}

/// The twelve vertices of the Example-type icosahedron: all cyclic
/// coordinate permutations of `(+-tau', 0, +-1)`.
pub fn icosahedron_vertices() -> Vec<Point3> {
    let tp = QTau::tau_prime();
    let one = QTau::one();
    let zero = QTau::zero;
    let mut verts = Vec::with_capacity(12);
    for s1 in [1i64, -1] {
        for s2 in [1i64, -1] {
            let a = &tp * &QTau::from_ints(s1, 0);
            let b = &one * &QTau::from_ints(s2, 0);
            verts.push(Point3::new(a.clone(), zero(), b.clone()));
            verts.push(Point3::new(b.clone(), a.clone(), zero()));
            verts.push(Point3::new(zero(), b, a));
        }
    }
    verts
}
