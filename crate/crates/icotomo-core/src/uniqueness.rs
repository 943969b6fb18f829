//! Convex subsets of finite patches, U-polygons, witness pairs and bounded
//! determination experiments.
//!
//! A finite `C` is a convex subset of the ambient point set when
//! `C = conv(C) /\ ambient`. A U-polygon for a direction set `U` is a planar
//! non-degenerate convex polygon with vertices in the ambient set such that
//! every line parallel to a direction of `U` through a vertex meets another
//! vertex; its alternating vertex classes produce two distinct convex
//! subsets with identical X-rays in all directions of `U`. These are the
//! engines of non-uniqueness; conversely a bounded exhaustive scan over
//! convex subsets provides empirical (not proof-grade) evidence of
//! determination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::hull::{hull3d, Hull3};
use crate::geom::{sorted_dedup, Direction, LineKey, Point3};
use crate::tomography::XRayData;

/// Outcome of the convex-subset test: either confirmed, or an ambient point
/// inside the hull that is missing from the candidate set.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ConvexCheck {
    Convex,
    Violation(Point3),
}

impl ConvexCheck {
    pub fn is_convex(&self) -> bool {
        matches!(self, ConvexCheck::Convex)
    }
}

/// Test `C = conv(C) /\ ambient` exactly. The caller guarantees
/// `C` is a subset of `ambient` and that `ambient` geometrically covers
/// `conv(C)`; the ambient stands in for the infinite model set.
pub fn is_convex_subset(c: &[Point3], ambient: &[Point3]) -> ConvexCheck {
    let c = sorted_dedup(c);
    let hull = hull3d(&c);
    for a in sorted_dedup(ambient) {
        if c.binary_search(&a).is_ok() {
            continue;
        }
        if hull.contains(&a) {
            return ConvexCheck::Violation(a);
        }
    }
    ConvexCheck::Convex
}

/// A planar non-degenerate convex polygon, vertices in hull-cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolygon {
    pub vertices: Vec<Point3>,
}

impl UPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniquenessError {
    NotAUPolygon,
    /// Alternating two-coloring impossible (odd vertex count).
    OddVertexCount,
    /// A direction's vertex pairing joins two vertices of the same color.
    ColoringInconsistent,
    /// A verified postcondition of the witness construction failed.
    PostconditionFailed(&'static str),
}

impl fmt::Display for UniquenessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniquenessError::NotAUPolygon => write!(f, "vertex set is not a U-polygon"),
            UniquenessError::OddVertexCount => {
                write!(f, "alternating coloring impossible: odd vertex count")
            }
            UniquenessError::ColoringInconsistent => {
                write!(
                    f,
                    "direction pairing inconsistent with the alternating coloring"
                )
            }
            UniquenessError::PostconditionFailed(what) => {
                write!(f, "witness-pair postcondition failed: {what}")
            }
        }
    }
}

/// Does the vertex list form a U-polygon for the directions over the
/// ambient set? Checks vertex membership, coplanarity, strict convexity
/// (the list must be the hull cycle of its own vertex set, up to rotation
/// and reflection), and the vertex-pairing condition for every direction.
pub fn verify_u_polygon(vertices: &[Point3], dirs: &[Direction], ambient: &[Point3]) -> bool {
    if dirs.is_empty() {
        return false;
    }
    let Some(cycle) = hull_cycle(vertices) else {
        return false;
    };
    if !cycles_match(vertices, &cycle) {
        return false;
    }
    let ambient_sorted = sorted_dedup(ambient);
    if cycle
        .iter()
        .any(|v| ambient_sorted.binary_search(v).is_err())
    {
        return false;
    }
    dirs.iter().all(|u| pairing_holds(&cycle, u))
}

/// Every vertex must see another vertex along `u`.
fn pairing_holds(vertices: &[Point3], u: &Direction) -> bool {
    vertices.iter().all(|v| {
        vertices
            .iter()
            .any(|w| w != v && (w - v).is_parallel_to(u.canonical_key()))
    })
}

/// Strictly convex hull cycle of the given points: all points must be hull
/// vertices of a full-dimensional (planar) polygon.
fn hull_cycle(points: &[Point3]) -> Option<Vec<Point3>> {
    let pts = sorted_dedup(points);
    if pts.len() != points.len() {
        return None; // repeated vertices
    }
    match hull3d(&pts) {
        Hull3::Polygon { vertices, .. } if vertices.len() == pts.len() => Some(vertices),
        _ => None,
    }
}

/// The input cycle equals the hull cycle up to rotation and reflection.
fn cycles_match(input: &[Point3], cycle: &[Point3]) -> bool {
    let k = cycle.len();
    if input.len() != k {
        return false;
    }
    let Some(start) = cycle.iter().position(|p| p == &input[0]) else {
        return false;
    };
    let forward = (0..k).all(|i| input[i] == cycle[(start + i) % k]);
    let backward = (0..k).all(|i| input[i] == cycle[(start + k - i % k) % k]);
    forward || backward
}

/// Exhaustive search for a U-polygon with vertices in the ambient set:
/// sizes 4, 6, ... up to `max_vertices`, first hit in canonical order. A
/// `None` certifies absence up to that size within this ambient set.
pub fn find_u_polygon(
    ambient: &[Point3],
    dirs: &[Direction],
    max_vertices: usize,
) -> Option<UPolygon> {
    if dirs.len() < 2 || max_vertices < 4 {
        return None;
    }
    let pts = sorted_dedup(ambient);
    // a U-polygon vertex needs a partner along every direction
    let eligible: Vec<Point3> = pts
        .iter()
        .filter(|v| {
            dirs.iter().all(|u| {
                pts.iter()
                    .any(|w| w != *v && (w - *v).is_parallel_to(u.canonical_key()))
            })
        })
        .cloned()
        .collect();
    // candidate pairs along the first direction, canonically ordered
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..eligible.len() {
        for j in (i + 1)..eligible.len() {
            if (&eligible[j] - &eligible[i]).is_parallel_to(dirs[0].canonical_key()) {
                pairs.push((i, j));
            }
        }
    }
    let mut size = 4;
    while size <= max_vertices {
        if let Some(polygon) = search_size(&eligible, &pairs, dirs, size) {
            return Some(polygon);
        }
        size += 2;
    }
    None
}

fn search_size(
    pts: &[Point3],
    pairs: &[(usize, usize)],
    dirs: &[Direction],
    size: usize,
) -> Option<UPolygon> {
    let want_pairs = size / 2;
    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; pts.len()];
    descend_pairs(pts, pairs, dirs, want_pairs, 0, &mut chosen, &mut used)
}

fn descend_pairs(
    pts: &[Point3],
    pairs: &[(usize, usize)],
    dirs: &[Direction],
    want: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<UPolygon> {
    if chosen.len() == want {
        let vertex_ids: Vec<usize> = chosen
            .iter()
            .flat_map(|&pi| [pairs[pi].0, pairs[pi].1])
            .collect();
        let vertices: Vec<Point3> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
        // every direction must pair the vertices perfectly (groups of two)
        for u in dirs {
            let mut lines: alloc::collections::BTreeMap<LineKey, usize> =
                alloc::collections::BTreeMap::new();
            for v in &vertices {
                *lines.entry(LineKey::through(v, u)).or_insert(0) += 1;
            }
            if lines.values().any(|&c| c != 2) {
                return None;
            }
        }
        let cycle = hull_cycle(&vertices)?;
        let ambient_like: Vec<Point3> = vertices.clone();
        if verify_u_polygon(&cycle, dirs, &ambient_like) {
            return Some(UPolygon { vertices: cycle });
        }
        return None;
    }
    if pairs.len().saturating_sub(start) < want - chosen.len() {
        return None;
    }
    for pi in start..pairs.len() {
        let (a, b) = pairs[pi];
        if used[a] || used[b] {
            continue;
        }
        used[a] = true;
        used[b] = true;
        chosen.push(pi);
        // partner-deficit prune: every chosen vertex needs a partner among
        // the at most 2*(want - chosen) future vertices, per direction
        let feasible = {
            let remaining = 2 * (want - chosen.len());
            let vertices: Vec<&Point3> = chosen
                .iter()
                .flat_map(|&p| [&pts[pairs[p].0], &pts[pairs[p].1]])
                .collect();
            dirs.iter().all(|u| {
                let unmatched = vertices
                    .iter()
                    .filter(|v| {
                        !vertices
                            .iter()
                            .any(|w| w != *v && (*w - **v).is_parallel_to(u.canonical_key()))
                    })
                    .count();
                unmatched <= remaining
            })
        };
        if feasible {
            if let Some(found) = descend_pairs(pts, pairs, dirs, want, pi + 1, chosen, used) {
                return Some(found);
            }
        }
        chosen.pop();
        used[a] = false;
        used[b] = false;
    }
    None
}

/// The two halves of a witness pair, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub c1: Vec<Point3>,
    pub c2: Vec<Point3>,
}

/// Build two distinct convex subsets with identical X-rays in every
/// direction from the alternating vertices of a U-polygon. All
/// postconditions are re-verified before returning.
pub fn witness_pair(
    polygon: &UPolygon,
    dirs: &[Direction],
    ambient: &[Point3],
) -> Result<WitnessPair, UniquenessError> {
    if !polygon.vertices.len().is_multiple_of(2) {
        return Err(UniquenessError::OddVertexCount);
    }
    if !verify_u_polygon(&polygon.vertices, dirs, ambient) {
        return Err(UniquenessError::NotAUPolygon);
    }
    let cycle = hull_cycle(&polygon.vertices).expect("verified polygon");
    // alternating coloring around the cycle: pairings must join colors
    let color_of = |v: &Point3| cycle.iter().position(|c| c == v).map(|i| i % 2);
    for u in dirs {
        for v in &cycle {
            let partner = cycle
                .iter()
                .find(|w| *w != v && (*w - v).is_parallel_to(u.canonical_key()))
                .expect("verified pairing");
            if color_of(v) == color_of(partner) {
                return Err(UniquenessError::ColoringInconsistent);
            }
        }
    }

    let hull = hull3d(&cycle);
    let vertex_sorted = sorted_dedup(&cycle);
    let interior: Vec<Point3> = sorted_dedup(ambient)
        .into_iter()
        .filter(|a| vertex_sorted.binary_search(a).is_err() && hull.contains(a))
        .collect();
    let mut c1 = interior.clone();
    let mut c2 = interior;
    for (i, v) in cycle.iter().enumerate() {
        if i % 2 == 0 {
            c1.push(v.clone());
        } else {
            c2.push(v.clone());
        }
    }
    c1.sort();
    c2.sort();

    // postconditions, verified rather than assumed
    if c1 == c2 {
        return Err(UniquenessError::PostconditionFailed("halves are equal"));
    }
    if !is_convex_subset(&c1, ambient).is_convex() {
        return Err(UniquenessError::PostconditionFailed(
            "first half not convex",
        ));
    }
    if !is_convex_subset(&c2, ambient).is_convex() {
        return Err(UniquenessError::PostconditionFailed(
            "second half not convex",
        ));
    }
    for u in dirs {
        if XRayData::of(&c1, u) != XRayData::of(&c2, u) {
            return Err(UniquenessError::PostconditionFailed(
                "X-rays of the halves differ",
            ));
        }
    }
    Ok(WitnessPair { c1, c2 })
}

/// X-ray supports in every direction, the collision key of the scan.
type Fingerprint = Vec<Vec<(LineKey, u64)>>;
type SeenSubsets = alloc::collections::BTreeMap<Fingerprint, Vec<Point3>>;

/// Result of the bounded determination scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Determination {
    /// No two distinct convex subsets of size up to the bound share all
    /// X-rays; bounded evidence only, not a proof.
    DeterminedUpToBound {
        subsets_scanned: usize,
    },
    Counterexample {
        c1: Vec<Point3>,
        c2: Vec<Point3>,
    },
}

/// Exhaustively enumerate convex subsets of the ambient set with at most
/// `size_bound` points (via their hull-vertex seeds, each convex subset
/// visited exactly once) and fingerprint them by their X-rays in the given
/// directions; report the first collision in canonical order.
pub fn check_determination(
    ambient: &[Point3],
    dirs: &[Direction],
    size_bound: usize,
) -> Determination {
    let pts = sorted_dedup(ambient);
    let mut seen: SeenSubsets = alloc::collections::BTreeMap::new();
    let mut scanned = 0usize;

    struct Ctx<'a> {
        pts: &'a [Point3],
        dirs: &'a [Direction],
        size_bound: usize,
    }

    fn closure(ctx: &Ctx<'_>, seed: &[Point3]) -> Option<Vec<Point3>> {
        let hull = hull3d(seed);
        let mut out = Vec::new();
        for a in ctx.pts {
            if hull.contains(a) {
                out.push(a.clone());
                if out.len() > ctx.size_bound {
                    return None;
                }
            }
        }
        Some(out)
    }

    fn in_convex_position(seed: &[Point3]) -> bool {
        let k = seed.len();
        if k <= 2 {
            return true;
        }
        match hull3d(seed) {
            Hull3::Polygon { vertices, .. } => vertices.len() == k,
            Hull3::Solid { vertices, .. } => vertices.len() == k,
            _ => false, // collinear sets of 3+ points have interior members
        }
    }

    fn fingerprint(ctx: &Ctx<'_>, subset: &[Point3]) -> Fingerprint {
        ctx.dirs
            .iter()
            .map(|u| {
                XRayData::of(subset, u)
                    .lines()
                    .map(|(k, c)| (k.clone(), c))
                    .collect()
            })
            .collect()
    }

    fn descend(
        ctx: &Ctx<'_>,
        seed: &mut Vec<Point3>,
        from: usize,
        seen: &mut SeenSubsets,
        scanned: &mut usize,
    ) -> Option<(Vec<Point3>, Vec<Point3>)> {
        for i in from..ctx.pts.len() {
            seed.push(ctx.pts[i].clone());
            if in_convex_position(seed) {
                if let Some(subset) = closure(ctx, seed) {
                    *scanned += 1;
                    let fp = fingerprint(ctx, &subset);
                    if let Some(previous) = seen.get(&fp) {
                        if previous != &subset {
                            let hit = (previous.clone(), subset);
                            seed.pop();
                            return Some(hit);
                        }
                    } else {
                        seen.insert(fp, subset);
                    }
                    if let Some(hit) = descend(ctx, seed, i + 1, seen, scanned) {
                        seed.pop();
                        return Some(hit);
                    }
                }
            }
            seed.pop();
        }
        None
    }

    let ctx = Ctx {
        pts: &pts,
        dirs,
        size_bound,
    };
    let mut seed = Vec::new();
    match descend(&ctx, &mut seed, 0, &mut seen, &mut scanned) {
        Some((c1, c2)) => {
            // collisions always pair sets of equal cardinality
            debug_assert_eq!(c1.len(), c2.len());
            Determination::Counterexample { c1, c2 }
        }
        None => Determination::DeterminedUpToBound {
            subsets_scanned: scanned,
        },
    }
}
