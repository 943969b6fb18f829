//! Deterministic SVG rendering of slices, star images and grids.
//!
//! All coordinates are produced by `to_f64` projections into a fixed
//! orthonormal frame of the relevant plane and formatted with a fixed
//! precision, so identical inputs yield byte-identical documents. Floats
//! never flow back into exact computations.

use std::fmt;

use icotomo_core::geom::window::Window;
use icotomo_core::geom::{five_fold_axis, Point3};
use icotomo_core::modelset::Slice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlotError {
    /// The window polygon's plane does not match the plotted plane.
    MismatchedPlane,
    /// Nothing to plot and no window to size the canvas by.
    EmptyScene,
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::MismatchedPlane => {
                write!(f, "window plane does not match the plotted slice plane")
            }
            PlotError::EmptyScene => write!(f, "nothing to plot"),
        }
    }
}

/// Styling knobs; the defaults match the figures' look.
#[derive(Clone, Debug)]
pub struct Style {
    pub point_radius: f64,
    pub draw_window: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            point_radius: 0.045,
            draw_window: true,
        }
    }
}

/// Orthonormal float frame of the plane orthogonal to `normal`.
struct Frame {
    e1: [f64; 3],
    e2: [f64; 3],
}

impl Frame {
    fn for_normal(normal: &Point3) -> Frame {
        let d1 = Point3::from_ints(0, 1, 0);
        let d2 = normal.cross(&d1);
        let unit = |p: &Point3| {
            let [x, y, z] = p.to_f64();
            let n = (x * x + y * y + z * z).sqrt();
            [x / n, y / n, z / n]
        };
        Frame {
            e1: unit(&d1),
            e2: unit(&d2),
        }
    }

    fn project(&self, p: &Point3) -> (f64, f64) {
        let [x, y, z] = p.to_f64();
        (
            x * self.e1[0] + y * self.e1[1] + z * self.e1[2],
            x * self.e2[0] + y * self.e2[1] + z * self.e2[2],
        )
    }
}

fn fmt6(v: f64) -> String {
    // normalize negative zero for byte-stable output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.6}")
}

struct Svg {
    body: String,
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
    any: bool,
}

impl Svg {
    fn new() -> Svg {
        Svg {
            body: String::new(),
            min_x: 0.0,
            max_x: 0.0,
            min_y: 0.0,
            max_y: 0.0,
            any: false,
        }
    }

    fn grow(&mut self, x: f64, y: f64) {
        if !self.any {
            self.min_x = x;
            self.max_x = x;
            self.min_y = y;
            self.max_y = y;
            self.any = true;
        } else {
            self.min_x = self.min_x.min(x);
            self.max_x = self.max_x.max(x);
            self.min_y = self.min_y.min(y);
            self.max_y = self.max_y.max(y);
        }
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        self.grow(x, y);
        self.body.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>\n",
            fmt6(x),
            fmt6(-y),
            fmt6(r)
        ));
    }

    fn polygon(&mut self, pts: &[(f64, f64)], stroke: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                self.grow(x, y);
                format!("{},{}", fmt6(x), fmt6(-y))
            })
            .collect();
        self.body.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"0.01\"/>\n",
            coords.join(" ")
        ));
    }

    fn finish(self) -> String {
        let pad = 0.2;
        let (minx, miny, w, h) = if self.any {
            (
                self.min_x - pad,
                -(self.max_y + pad),
                self.max_x - self.min_x + 2.0 * pad,
                self.max_y - self.min_y + 2.0 * pad,
            )
        } else {
            (-1.0, -1.0, 2.0, 2.0)
        };
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            fmt6(minx),
            fmt6(miny),
            fmt6(w),
            fmt6(h),
            self.body
        )
    }
}

/// The physical-space picture of a slice, seen along the five-fold axis.
pub fn plot_slice_physical(slice: &Slice, style: &Style) -> String {
    let frame = Frame::for_normal(&five_fold_axis());
    let mut svg = Svg::new();
    for p in slice.embedded() {
        let (x, y) = frame.project(&p);
        svg.circle(x, y, style.point_radius, "black");
    }
    svg.finish()
}

/// The window polygon must describe (a translate within) the star plane of
/// the slice: parallel normals and, after applying the window translate,
/// the same plane offset.
fn check_star_plane(slice: &Slice, window: &Window) -> Result<(), PlotError> {
    let (normal, offset) = window.plane().ok_or(PlotError::MismatchedPlane)?;
    let (star_normal, star_offset) = slice.star_plane();
    if !normal.is_parallel_to(&star_normal) {
        return Err(PlotError::MismatchedPlane);
    }
    let shifted = offset + &normal.dot(window.translate());
    let lambda = leading_ratio(&star_normal, normal);
    if &shifted * &lambda != star_offset {
        return Err(PlotError::MismatchedPlane);
    }
    Ok(())
}

/// The star image of a slice inside its (planar) window cross-section.
pub fn plot_slice_star(slice: &Slice, window: &Window, style: &Style) -> Result<String, PlotError> {
    check_star_plane(slice, window)?;
    let (star_normal, _) = slice.star_plane();
    let frame = Frame::for_normal(&star_normal);
    let mut svg = Svg::new();
    if style.draw_window {
        let outline: Vec<(f64, f64)> = window
            .vertices()
            .iter()
            .map(|v| frame.project(&(v + window.translate())))
            .collect();
        svg.polygon(&outline, "black");
    }
    for p in slice.starred() {
        let (x, y) = frame.project(&p);
        svg.circle(x, y, style.point_radius, "black");
    }
    Ok(svg.finish())
}

/// A star-space grid together with the slice's star image and the window
/// cross-section: grid points hollow, slice points solid.
pub fn plot_grid_star(
    grid_points: &[Point3],
    slice: &Slice,
    window: &Window,
    style: &Style,
) -> Result<String, PlotError> {
    let (star_normal, _) = slice.star_plane();
    let frame = Frame::for_normal(&star_normal);
    let mut svg = Svg::new();
    if style.draw_window {
        check_star_plane(slice, window)?;
        let outline: Vec<(f64, f64)> = window
            .vertices()
            .iter()
            .map(|v| frame.project(&(v + window.translate())))
            .collect();
        svg.polygon(&outline, "black");
    }
    for g in grid_points {
        let (x, y) = frame.project(&g.star());
        svg.circle(x, y, style.point_radius * 0.7, "gray");
    }
    for p in slice.starred() {
        let (x, y) = frame.project(&p);
        svg.circle(x, y, style.point_radius, "black");
    }
    Ok(svg.finish())
}

fn leading_ratio(a: &Point3, b: &Point3) -> icotomo_core::qtau::QTau {
    let pairs = [(&a.x, &b.x), (&a.y, &b.y), (&a.z, &b.z)];
    for (ai, bi) in pairs {
        if !bi.is_zero() {
            return ai / bi;
        }
    }
    unreachable!("nonzero plane normal")
}
