//! Reconstruction of finite sets from two axis-orthogonal X-rays under a
//! window constraint, by integral flow over window-admissible grid
//! candidates, per coset class of `L`.
//!
//! Both directions must be orthogonal to the five-fold axis, so every
//! support line lies in a plane of constant axis height and a valid
//! instance is confined to a single slice (a multi-slice driver splits by
//! height and concatenates). Candidates are the grid points of the two
//! supports; a solution must reproduce both X-rays exactly, stay within one
//! coset of `L`, and have all star images strictly interior to the
//! translated window. A returned solution is always re-verified against
//! those three contracts.

pub mod flow;
pub mod lincidence;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::window::{Classification, Window};
use crate::geom::{five_fold_axis, LineKey, ModulePoint, Point3};
use crate::qtau::QTau;
use crate::tomography::{coset_classify, grid, CosetClasses, Grid, XRayData};

use flow::MaxFlow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructionError {
    ParallelDirections,
    DirectionNotAxisOrthogonal,
    /// Support lines spread over more than one slice plane.
    MultiSliceInput,
    /// A support line contains no point of `L` (inadmissible input data).
    SupportLineOutsideModuleLines,
    /// Translate search needs a polygonal window.
    WindowNotPlanar,
    /// The window polygon does not lie in the star plane of the data slice.
    SearchPlaneMismatch,
    /// A solver postcondition failed on re-verification.
    VerificationFailed(&'static str),
}

impl fmt::Display for ReconstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReconstructionError::ParallelDirections => {
                write!(f, "the two X-ray directions must not be parallel")
            }
            ReconstructionError::DirectionNotAxisOrthogonal => {
                write!(
                    f,
                    "X-ray directions must be orthogonal to the five-fold axis"
                )
            }
            ReconstructionError::MultiSliceInput => {
                write!(f, "support lines span more than one slice plane")
            }
            ReconstructionError::SupportLineOutsideModuleLines => {
                write!(f, "a support line passes through no point of the module")
            }
            ReconstructionError::WindowNotPlanar => {
                write!(f, "translate search requires a planar (polygon) window")
            }
            ReconstructionError::SearchPlaneMismatch => {
                write!(
                    f,
                    "window polygon plane does not match the data's star plane"
                )
            }
            ReconstructionError::VerificationFailed(what) => {
                write!(f, "solution verification failed: {what}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    MarginalSumsDiffer,
    NoFeasibleCoset,
    NoFeasibleCell,
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfeasibleReason::MarginalSumsDiffer => write!(f, "marginal sums differ"),
            InfeasibleReason::NoFeasibleCoset => {
                write!(f, "no coset class admits a feasible flow")
            }
            InfeasibleReason::NoFeasibleCell => {
                write!(f, "no translate cell admits a feasible flow")
            }
        }
    }
}

/// A reconstructed point set (canonically sorted) and the coset class it
/// lives in (`None` for the empty solution or multi-slice concatenations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub points: Vec<Point3>,
    pub coset: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Solution),
    Infeasible(InfeasibleReason),
}

impl Outcome {
    pub fn feasible(&self) -> Option<&Solution> {
        match self {
            Outcome::Feasible(s) => Some(s),
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Grid candidates with coset tags and window admissibility.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub grid: Grid,
    pub cosets: CosetClasses,
    pub admissible: Vec<bool>,
}

impl Candidates {
    pub fn entries(&self) -> impl Iterator<Item = (&Point3, usize, bool)> {
        self.grid
            .points()
            .iter()
            .zip(self.cosets.tags.iter())
            .zip(self.admissible.iter())
            .map(|((p, &t), &a)| (p, t, a))
    }

    pub fn admissible_count(&self) -> usize {
        self.admissible.iter().filter(|&&a| a).count()
    }
}

/// All solutions of an instance up to a limit.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub solutions: Vec<Solution>,
    pub truncated: bool,
}

/// Result of the two-dimensional translate search.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Feasible {
        translate: Point3,
        solution: Solution,
    },
    Infeasible(InfeasibleReason),
}

/// A validated two-direction reconstruction instance.
#[derive(Clone, Debug)]
pub struct ReconstructionInstance {
    data: [XRayData; 2],
    window: Window,
    slice_height: Option<QTau>,
}

impl ReconstructionInstance {
    pub fn new(
        a: XRayData,
        b: XRayData,
        window: Window,
    ) -> Result<ReconstructionInstance, ReconstructionError> {
        if a.direction() == b.direction() {
            return Err(ReconstructionError::ParallelDirections);
        }
        if !a.direction().is_axis_orthogonal() || !b.direction().is_axis_orthogonal() {
            return Err(ReconstructionError::DirectionNotAxisOrthogonal);
        }
        let mut height: Option<QTau> = None;
        for xr in [&a, &b] {
            for (line, _) in xr.lines() {
                let h = line.axis_height();
                match &height {
                    None => height = Some(h),
                    Some(h0) if *h0 == h => {}
                    Some(_) => return Err(ReconstructionError::MultiSliceInput),
                }
                if lincidence::line_lattice_point(line).is_none() {
                    return Err(ReconstructionError::SupportLineOutsideModuleLines);
                }
            }
        }
        Ok(ReconstructionInstance {
            data: [a, b],
            window,
            slice_height: height,
        })
    }

    pub fn data(&self) -> &[XRayData; 2] {
        &self.data
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn slice_height(&self) -> Option<&QTau> {
        self.slice_height.as_ref()
    }

    /// Grid of the two supports, coset-classified, with fixed-translate
    /// window admissibility per point.
    pub fn candidates(&self) -> Candidates {
        let g = grid(&self.data).expect("validated directions");
        let cosets = coset_classify(&g);
        let admissible = g
            .points()
            .iter()
            .map(|p| self.window.classify(&p.star()) == Classification::Interior)
            .collect();
        Candidates {
            grid: g,
            cosets,
            admissible,
        }
    }

    /// Decide and construct a solution with the window translate fixed to
    /// the one stored in the window. Coset classes are tried in canonical
    /// order; the first feasible class wins.
    pub fn solve_fixed(&self) -> Result<Outcome, ReconstructionError> {
        if self.data[0].total() != self.data[1].total() {
            return Ok(Outcome::Infeasible(InfeasibleReason::MarginalSumsDiffer));
        }
        if self.data[0].total() == 0 {
            return Ok(Outcome::Feasible(Solution {
                points: Vec::new(),
                coset: None,
            }));
        }
        let cands = self.candidates();
        for tag in 0..cands.cosets.class_count {
            if let Some(points) = flow_solve(&self.data, &cands, tag, None) {
                let solution = Solution {
                    points,
                    coset: Some(tag),
                };
                verify_solution(&self.data, &self.window, &solution)?;
                return Ok(Outcome::Feasible(solution));
            }
        }
        Ok(Outcome::Infeasible(InfeasibleReason::NoFeasibleCoset))
    }

    /// All solutions (across coset classes, classes in canonical order,
    /// within a class in canonical arc order), up to `limit`.
    pub fn enumerate_all(&self, limit: usize) -> Result<Enumeration, ReconstructionError> {
        if self.data[0].total() != self.data[1].total() {
            return Ok(Enumeration {
                solutions: Vec::new(),
                truncated: false,
            });
        }
        if self.data[0].total() == 0 {
            return Ok(Enumeration {
                solutions: vec![Solution {
                    points: Vec::new(),
                    coset: None,
                }],
                truncated: false,
            });
        }
        let cands = self.candidates();
        let mut solutions = Vec::new();
        let mut truncated = false;
        'cosets: for tag in 0..cands.cosets.class_count {
            let mut enumerator = Enumerator::new(&self.data, &cands, tag, None);
            let found = enumerator.run(limit.saturating_sub(solutions.len()));
            for points in found.0 {
                let solution = Solution {
                    points,
                    coset: Some(tag),
                };
                verify_solution(&self.data, &self.window, &solution)?;
                solutions.push(solution);
            }
            if found.1 {
                truncated = true;
                break 'cosets;
            }
        }
        Ok(Enumeration {
            solutions,
            truncated,
        })
    }

    /// Search over window translates within the star plane of the slice.
    ///
    /// The admissible candidate set is constant on each open cell of the
    /// arrangement of the reversed translated polygons `q - P` over the
    /// candidates `q`, and the set of feasible translates is open, so it
    /// suffices to test one interior sample per full-dimensional cell. The
    /// sweep walks vertical slabs between consecutive arrangement abscissae
    /// and samples each gap between consecutive edge crossings, tracking the
    /// admissible set by boundary toggles. Infeasible is a certificate
    /// relative to this cell enumeration.
    pub fn solve_search_2d(&self) -> Result<SearchOutcome, ReconstructionError> {
        if self.data[0].total() != self.data[1].total() {
            return Ok(SearchOutcome::Infeasible(
                InfeasibleReason::MarginalSumsDiffer,
            ));
        }
        if self.data[0].total() == 0 {
            return Ok(SearchOutcome::Feasible {
                translate: Point3::zero(),
                solution: Solution {
                    points: Vec::new(),
                    coset: None,
                },
            });
        }

        // bake the stored translate into absolute polygon vertices
        let (normal, offset) = self
            .window
            .plane()
            .ok_or(ReconstructionError::WindowNotPlanar)?;
        let normal = normal.clone();
        let translate = self.window.translate().clone();
        let offset_abs = offset + &normal.dot(&translate);
        let poly_abs: Vec<Point3> = self
            .window
            .vertices()
            .iter()
            .map(|v| v + &translate)
            .collect();

        // the star plane of the slice
        let height = self
            .slice_height
            .clone()
            .expect("nonzero totals have lines");
        let star_normal = five_fold_axis().star();
        let star_offset = height.galois();
        if !normal.is_parallel_to(&star_normal) {
            return Err(ReconstructionError::SearchPlaneMismatch);
        }
        // scale factor lambda with star_normal = lambda * normal
        let lambda = leading_ratio(&star_normal, &normal);
        if &offset_abs * &lambda != star_offset {
            return Err(ReconstructionError::SearchPlaneMismatch);
        }

        let g = grid(&self.data).expect("validated directions");
        let cosets = coset_classify(&g);
        let stars: Vec<Point3> = g.points().iter().map(|p| p.star()).collect();
        for q in &stars {
            debug_assert_eq!(q.dot(&star_normal), star_offset);
        }

        // reversed translated polygons: candidate q admissible for translate
        // s iff s lies inside q - P (point reflection keeps the orientation)
        let polygons: Vec<Vec<Point3>> = stars
            .iter()
            .map(|q| poly_abs.iter().map(|v| q - v).collect())
            .collect();

        // in-plane frame of the (linear) translate plane { normal . s = 0 }
        let d1 = Point3::from_ints(0, 1, 0);
        let d2 = normal.cross(&d1);
        debug_assert!(!d2.is_zero());
        let d1_sq = d1.dot(&d1);
        let d2_sq = d2.dot(&d2);

        struct Seg {
            poly: usize,
            xa: QTau,
            xb: QTau,
            ya: QTau,
            yb: QTau,
        }
        let mut segs: Vec<Seg> = Vec::new();
        let mut xs: BTreeSet<QTau> = BTreeSet::new();
        for (pi, poly) in polygons.iter().enumerate() {
            let k = poly.len();
            for e in 0..k {
                let a = &poly[e];
                let b = &poly[(e + 1) % k];
                let (xa, ya) = (a.dot(&d1), a.dot(&d2));
                let (xb, yb) = (b.dot(&d1), b.dot(&d2));
                xs.insert(xa.clone());
                xs.insert(xb.clone());
                segs.push(Seg {
                    poly: pi,
                    xa,
                    xb,
                    ya,
                    yb,
                });
            }
        }
        // pairwise proper crossings contribute slab boundaries
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let (s, t) = (&segs[i], &segs[j]);
                if s.poly == t.poly {
                    continue;
                }
                // 2D line intersection in (x, y) chart coordinates
                let ex = (&s.xb - &s.xa, &s.yb - &s.ya);
                let fx = (&t.xb - &t.xa, &t.yb - &t.ya);
                let denom = &ex.0 * &fx.1 - &ex.1 * &fx.0;
                if denom.is_zero() {
                    continue;
                }
                let dx = (&t.xa - &s.xa, &t.ya - &s.ya);
                let tt = &(&dx.0 * &fx.1 - &dx.1 * &fx.0) / &denom;
                let uu = &(&dx.0 * &ex.1 - &dx.1 * &ex.0) / &denom;
                let zero = QTau::zero();
                let one = QTau::one();
                if tt >= zero && tt <= one && uu >= zero && uu <= one {
                    xs.insert(&s.xa + &(&ex.0 * &tt));
                }
            }
        }

        let xs: Vec<QTau> = xs.into_iter().collect();
        let half = QTau::rat(1, 2);
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        for w in xs.windows(2) {
            let mid = (&w[0] + &w[1]) * &half;
            // crossings of the vertical fibre at mid, bottom to top
            let mut crossings: Vec<(QTau, usize)> = Vec::new();
            for s in &segs {
                let (lo, hi) = if s.xa <= s.xb {
                    (&s.xa, &s.xb)
                } else {
                    (&s.xb, &s.xa)
                };
                if !(*lo < mid && mid < *hi) {
                    continue;
                }
                let t = &(&mid - &s.xa) / &(&s.xb - &s.xa);
                let y = &s.ya + &(&(&s.yb - &s.ya) * &t);
                crossings.push((y, s.poly));
            }
            crossings.sort_by(|a, b| a.0.cmp(&b.0));
            if crossings.len() < 2 {
                continue;
            }
            // walk upwards; coincident crossings (overlapping collinear
            // edges of different polygons) toggle together so that only
            // genuine gaps between distinct heights are sampled
            let words = polygons.len().div_ceil(64);
            let mut mask = vec![0u64; words];
            let mut idx = 0;
            while idx < crossings.len() {
                let mut next = idx;
                while next < crossings.len() && crossings[next].0 == crossings[idx].0 {
                    let poly = crossings[next].1;
                    mask[poly / 64] ^= 1u64 << (poly % 64);
                    next += 1;
                }
                if next >= crossings.len() {
                    break; // above the last crossing: outside every polygon
                }
                let gap = (&crossings[idx].0, &crossings[next].0);
                idx = next;
                if mask.iter().all(|&wd| wd == 0) {
                    continue;
                }
                if !seen.insert(mask.clone()) {
                    continue;
                }
                let admissible: Vec<bool> = (0..polygons.len())
                    .map(|i| mask[i / 64] >> (i % 64) & 1 == 1)
                    .collect();
                let cands = Candidates {
                    grid: g.clone(),
                    cosets: cosets.clone(),
                    admissible,
                };
                for tag in 0..cands.cosets.class_count {
                    if let Some(points) = flow_solve(&self.data, &cands, tag, None) {
                        // reconstruct the sample translate exactly
                        let y_mid = (gap.0 + gap.1) * &half;
                        let s_point = &d1.scaled(&(&mid / &d1_sq)) + &d2.scaled(&(&y_mid / &d2_sq));
                        let effective = planar_window_at(&normal, &offset_abs, &poly_abs, &s_point);
                        let solution = Solution {
                            points,
                            coset: Some(tag),
                        };
                        verify_solution(&self.data, &effective, &solution)?;
                        return Ok(SearchOutcome::Feasible {
                            translate: &s_point + &translate,
                            solution,
                        });
                    }
                }
            }
        }
        Ok(SearchOutcome::Infeasible(InfeasibleReason::NoFeasibleCell))
    }
}

/// The planar window of the given absolute polygon, translated by `s`.
fn planar_window_at(normal: &Point3, offset_abs: &QTau, poly_abs: &[Point3], s: &Point3) -> Window {
    Window::planar(normal.clone(), offset_abs.clone(), poly_abs, s.clone())
        .expect("polygon window stays valid under translation")
}

/// Ratio `a_i / b_i` at the first nonzero coordinate of `b` (caller
/// guarantees parallel vectors).
fn leading_ratio(a: &Point3, b: &Point3) -> QTau {
    let pairs = [(&a.x, &b.x), (&a.y, &b.y), (&a.z, &b.z)];
    for (ai, bi) in pairs {
        if !bi.is_zero() {
            return ai / bi;
        }
    }
    unreachable!("nonzero vector")
}

/// Canonical line bookkeeping for a direction's support.
struct LineTable {
    keys: Vec<LineKey>,
    counts: Vec<u64>,
    index: BTreeMap<LineKey, usize>,
}

fn line_table(data: &XRayData) -> LineTable {
    let mut keys = Vec::new();
    let mut counts = Vec::new();
    let mut index = BTreeMap::new();
    for (k, c) in data.lines() {
        index.insert(k.clone(), keys.len());
        keys.push(k.clone());
        counts.push(c);
    }
    LineTable {
        keys,
        counts,
        index,
    }
}

/// Arcs of the bipartite instance restricted to one coset class (and an
/// optional extra admissibility mask): for every admissible candidate, the
/// pair of support-line indices it joins.
struct Arcs {
    /// (candidate index, line1 index, line2 index), candidate-sorted.
    list: Vec<(usize, usize, usize)>,
    t1: LineTable,
    t2: LineTable,
}

fn build_arcs(
    data: &[XRayData; 2],
    cands: &Candidates,
    tag: usize,
    extra: Option<&[bool]>,
) -> Arcs {
    let t1 = line_table(&data[0]);
    let t2 = line_table(&data[1]);
    let mut list = Vec::new();
    for (idx, p) in cands.grid.points().iter().enumerate() {
        if cands.cosets.tags[idx] != tag || !cands.admissible[idx] {
            continue;
        }
        if let Some(mask) = extra {
            if !mask[idx] {
                continue;
            }
        }
        let k1 = LineKey::through(p, data[0].direction());
        let k2 = LineKey::through(p, data[1].direction());
        let (Some(&i1), Some(&i2)) = (t1.index.get(&k1), t2.index.get(&k2)) else {
            continue;
        };
        list.push((idx, i1, i2));
    }
    Arcs { list, t1, t2 }
}

/// Integral flow feasibility for one coset class; returns the solution
/// points when the flow saturates the totals.
fn flow_solve(
    data: &[XRayData; 2],
    cands: &Candidates,
    tag: usize,
    extra: Option<&[bool]>,
) -> Option<Vec<Point3>> {
    let arcs = build_arcs(data, cands, tag, extra);
    let total: u64 = data[0].total();
    let n1 = arcs.t1.keys.len();
    let n2 = arcs.t2.keys.len();
    let source = 0;
    let sink = 1 + n1 + n2;
    let mut net = MaxFlow::new(sink + 1);
    for (i, &c) in arcs.t1.counts.iter().enumerate() {
        net.add_edge(source, 1 + i, c as i64);
    }
    for (j, &c) in arcs.t2.counts.iter().enumerate() {
        net.add_edge(1 + n1 + j, sink, c as i64);
    }
    let mut arc_edges = Vec::with_capacity(arcs.list.len());
    for &(idx, i1, i2) in &arcs.list {
        let e = net.add_edge(1 + i1, 1 + n1 + i2, 1);
        arc_edges.push((e, idx));
    }
    if net.run(source, sink) != total as i64 {
        return None;
    }
    let mut points: Vec<Point3> = arc_edges
        .iter()
        .filter(|&&(e, _)| net.flow(e) == 1)
        .map(|&(_, idx)| cands.grid.points()[idx].clone())
        .collect();
    points.sort();
    Some(points)
}

/// Systematic enumeration of all saturating 0/1 assignments for one coset.
struct Enumerator<'a> {
    arcs_by_line: Vec<Vec<(usize, usize)>>, // per line1: (candidate idx, line2 idx)
    need: Vec<u64>,
    cap: Vec<u64>,
    points: &'a [Point3],
    chosen: Vec<usize>,
    out: Vec<Vec<Point3>>,
    limit: usize,
    truncated: bool,
}

impl<'a> Enumerator<'a> {
    fn new(
        data: &'a [XRayData; 2],
        cands: &'a Candidates,
        tag: usize,
        extra: Option<&[bool]>,
    ) -> Enumerator<'a> {
        let arcs = build_arcs(data, cands, tag, extra);
        let mut arcs_by_line = vec![Vec::new(); arcs.t1.keys.len()];
        for &(idx, i1, i2) in &arcs.list {
            arcs_by_line[i1].push((idx, i2));
        }
        Enumerator {
            arcs_by_line,
            need: arcs.t1.counts.clone(),
            cap: arcs.t2.counts.clone(),
            points: cands.grid.points(),
            chosen: Vec::new(),
            out: Vec::new(),
            limit: usize::MAX,
            truncated: false,
        }
    }

    fn run(&mut self, limit: usize) -> (Vec<Vec<Point3>>, bool) {
        self.limit = limit;
        self.descend(0, 0);
        (core::mem::take(&mut self.out), self.truncated)
    }

    /// Remaining-problem feasibility: can the outstanding needs be routed
    /// through the arcs still allowed by canonical order?
    fn completion_feasible(&self, line: usize, start: usize) -> bool {
        let n1 = self.need.len();
        let n2 = self.cap.len();
        let source = 0;
        let sink = 1 + n1 + n2;
        let mut net = MaxFlow::new(sink + 1);
        let mut want: i64 = 0;
        for i in line..n1 {
            if self.need[i] > 0 {
                net.add_edge(source, 1 + i, self.need[i] as i64);
                want += self.need[i] as i64;
            }
        }
        for j in 0..n2 {
            if self.cap[j] > 0 {
                net.add_edge(1 + n1 + j, sink, self.cap[j] as i64);
            }
        }
        for i in line..n1 {
            let from = if i == line { start } else { 0 };
            for &(_, i2) in &self.arcs_by_line[i][from..] {
                net.add_edge(1 + i, 1 + n1 + i2, 1);
            }
        }
        net.run(source, sink) == want
    }

    fn descend(&mut self, line: usize, start: usize) {
        if self.out.len() >= self.limit {
            self.truncated = true;
            return;
        }
        if line == self.need.len() {
            let mut pts: Vec<Point3> = self
                .chosen
                .iter()
                .map(|&i| self.points[i].clone())
                .collect();
            pts.sort();
            self.out.push(pts);
            return;
        }
        if self.need[line] == 0 {
            self.descend(line + 1, 0);
            return;
        }
        if start == 0 && !self.completion_feasible(line, 0) {
            return;
        }
        let arcs = self.arcs_by_line[line].clone();
        for pos in start..arcs.len() {
            let (idx, i2) = arcs[pos];
            if self.cap[i2] == 0 {
                continue;
            }
            // remaining arcs must still cover the remaining need
            if (arcs.len() - pos) < self.need[line] as usize {
                break;
            }
            self.need[line] -= 1;
            self.cap[i2] -= 1;
            self.chosen.push(idx);
            self.descend(line, pos + 1);
            self.chosen.pop();
            self.cap[i2] += 1;
            self.need[line] += 1;
            if self.truncated {
                return;
            }
        }
    }
}

/// Re-verify a solver output against the three contracts: exact X-ray
/// equality in both directions, strict window interiority of all star
/// images, and coset purity. Run on every returned solution.
pub fn verify_solution(
    data: &[XRayData; 2],
    window: &Window,
    solution: &Solution,
) -> Result<(), ReconstructionError> {
    for (i, xr) in data.iter().enumerate() {
        let recomputed = XRayData::of(&solution.points, xr.direction());
        if &recomputed != xr {
            return Err(ReconstructionError::VerificationFailed(if i == 0 {
                "X-ray mismatch in the first direction"
            } else {
                "X-ray mismatch in the second direction"
            }));
        }
    }
    for p in &solution.points {
        if window.classify(&p.star()) != Classification::Interior {
            return Err(ReconstructionError::VerificationFailed(
                "a solution point's star image is not interior to the window",
            ));
        }
    }
    if let Some(first) = solution.points.first() {
        for p in &solution.points[1..] {
            if ModulePoint::from_point(&(p - first)).is_none() {
                return Err(ReconstructionError::VerificationFailed(
                    "solution points are not coset-pure",
                ));
            }
        }
    }
    Ok(())
}

/// Fixed-translate driver for multi-slice data: split both X-rays by slice
/// height, solve each slice independently, concatenate.
pub fn solve_fixed_multi(
    a: &XRayData,
    b: &XRayData,
    window: &Window,
) -> Result<Outcome, ReconstructionError> {
    let heights =
        |xr: &XRayData| -> BTreeSet<QTau> { xr.lines().map(|(k, _)| k.axis_height()).collect() };
    let mut all_heights = heights(a);
    all_heights.extend(heights(b));
    let mut combined = Vec::new();
    for h in &all_heights {
        let ah = a.restrict_to_height(h);
        let bh = b.restrict_to_height(h);
        let inst = ReconstructionInstance::new(ah, bh, window.clone())?;
        match inst.solve_fixed()? {
            Outcome::Feasible(sol) => combined.extend(sol.points),
            Outcome::Infeasible(reason) => return Ok(Outcome::Infeasible(reason)),
        }
    }
    combined.sort();
    Ok(Outcome::Feasible(Solution {
        points: combined,
        coset: None,
    }))
}
