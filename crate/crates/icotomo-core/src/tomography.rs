//! Discrete parallel X-rays, their supports, the grid generated by X-ray
//! data in several directions, and the classification of grid points by
//! coset of `L`.
//!
//! The X-ray of a finite set `F` in direction `u` assigns to each line
//! parallel to `u` the number of points of `F` on it; only the finitely many
//! lines with a positive count (the support) are stored. The grid of a
//! family of X-rays is the intersection over directions of the unions of
//! support lines; it always contains `F` and can be much bigger, and its
//! points need not lie in the same translate of `L` as `F`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{sorted_dedup, Direction, LineKey, ModulePoint, Point3};

/// The support of a discrete X-ray: a direction plus positive line counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XRayData {
    direction: Direction,
    counts: BTreeMap<LineKey, u64>,
}

impl XRayData {
    /// X-ray of a finite point set (duplicates are ignored: `F` is a set).
    pub fn of(points: &[Point3], direction: &Direction) -> XRayData {
        let mut counts = BTreeMap::new();
        for p in sorted_dedup(points) {
            let key = LineKey::through(&p, direction);
            *counts.entry(key).or_insert(0) += 1;
        }
        XRayData {
            direction: direction.clone(),
            counts,
        }
    }

    /// Assemble from parts, enforcing the support invariants.
    pub fn from_parts(
        direction: Direction,
        lines: impl IntoIterator<Item = (Point3, u64)>,
    ) -> Result<XRayData, TomographyError> {
        let mut counts = BTreeMap::new();
        for (base_point, count) in lines {
            if count == 0 {
                return Err(TomographyError::ZeroCount);
            }
            let key = LineKey::through(&base_point, &direction);
            if counts.insert(key, count).is_some() {
                return Err(TomographyError::DuplicateLine);
            }
        }
        Ok(XRayData { direction, counts })
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    /// Support lines with their counts, in canonical line order.
    pub fn lines(&self) -> impl Iterator<Item = (&LineKey, u64)> {
        self.counts.iter().map(|(k, &c)| (k, c))
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, line: &LineKey) -> u64 {
        self.counts.get(line).copied().unwrap_or(0)
    }

    /// Total mass, the cardinality of any witness set.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The multiset of counts, sorted. Equal for X-rays of translated sets.
    pub fn count_multiset(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.counts.values().copied().collect();
        v.sort_unstable();
        v
    }

    /// The sub-support of lines lying in the slice plane of the given axis
    /// height.
    pub fn restrict_to_height(&self, height: &crate::qtau::QTau) -> XRayData {
        XRayData {
            direction: self.direction.clone(),
            counts: self
                .counts
                .iter()
                .filter(|(k, _)| &k.axis_height() == height)
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }
}

/// The grid generated by X-ray data: every point lying on a support line of
/// each direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    points: Vec<Point3>,
    directions: Vec<Direction>,
}

impl Grid {
    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TomographyError {
    NeedTwoDirections,
    ParallelDirections,
    ZeroCount,
    DuplicateLine,
}

impl fmt::Display for TomographyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TomographyError::NeedTwoDirections => {
                write!(f, "grid construction needs at least two directions")
            }
            TomographyError::ParallelDirections => {
                write!(f, "grid directions must be pairwise non-parallel")
            }
            TomographyError::ZeroCount => write!(f, "X-ray support carries only positive counts"),
            TomographyError::DuplicateLine => write!(f, "duplicate line in X-ray support"),
        }
    }
}

/// Exact intersection point of two non-parallel lines, if they meet.
pub fn line_intersection(a: &LineKey, b: &LineKey) -> Option<Point3> {
    let k1 = a.direction.canonical_key();
    let k2 = b.direction.canonical_key();
    let n = k1.cross(k2);
    if n.is_zero() {
        return None; // parallel
    }
    let d = &b.base - &a.base;
    if !d.dot(&n).is_zero() {
        return None; // skew
    }
    // t = ((d x k2) . n) / (n . n)
    let t = &d.cross(k2).dot(&n) / &n.dot(&n);
    let p = &a.base + &k1.scaled(&t);
    debug_assert!(a.contains(&p) && b.contains(&p));
    Some(p)
}

/// Grid of the given X-ray data (at least two pairwise non-parallel
/// directions). For two directions this is all pairwise support-line
/// intersections; further directions filter by exact incidence.
pub fn grid(data: &[XRayData]) -> Result<Grid, TomographyError> {
    if data.len() < 2 {
        return Err(TomographyError::NeedTwoDirections);
    }
    for i in 0..data.len() {
        for j in (i + 1)..data.len() {
            if data[i].direction == data[j].direction {
                return Err(TomographyError::ParallelDirections);
            }
        }
    }
    let mut points = Vec::new();
    for (l1, _) in data[0].lines() {
        for (l2, _) in data[1].lines() {
            if let Some(p) = line_intersection(l1, l2) {
                points.push(p);
            }
        }
    }
    let mut points = sorted_dedup(&points);
    for extra in &data[2..] {
        points.retain(|p| {
            let key = LineKey::through(p, extra.direction());
            extra.count(&key) > 0
        });
    }
    Ok(Grid {
        points,
        directions: data.iter().map(|d| d.direction.clone()).collect(),
    })
}

/// Coset tags for the points of a grid: two points share a tag iff their
/// difference lies in `L`. Classes are numbered in order of their canonically
/// smallest member; `l_class` identifies the class lying in `L` itself, when
/// present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClasses {
    pub tags: Vec<usize>,
    pub class_count: usize,
    pub l_class: Option<usize>,
}

impl CosetClasses {
    /// Indices of the grid points carrying the given tag.
    pub fn members(&self, tag: usize) -> Vec<usize> {
        self.tags
            .iter()
            .enumerate()
            .filter_map(|(i, &t)| (t == tag).then_some(i))
            .collect()
    }
}

/// Union-find classification of grid points modulo `L`.
pub fn coset_classify(grid: &Grid) -> CosetClasses {
    let pts = grid.points();
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            if ModulePoint::from_point(&(&pts[j] - &pts[i])).is_some() {
                let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                parent[hi] = lo;
            }
        }
    }
    // points are sorted, so the first occurrence order of roots is the
    // canonical class order
    let mut tag_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut tags = Vec::with_capacity(n);
    let mut l_class = None;
    for (i, p) in pts.iter().enumerate() {
        let root = find(&mut parent, i);
        let next = tag_of_root.len();
        let tag = *tag_of_root.entry(root).or_insert(next);
        tags.push(tag);
        if l_class.is_none() && ModulePoint::from_point(p).is_some() {
            l_class = Some(tag);
        }
    }
    CosetClasses {
        tags,
        class_count: tag_of_root.len(),
        l_class,
    }
}
