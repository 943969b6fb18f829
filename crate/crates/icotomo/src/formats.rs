//! Text file formats: point lists, windows, X-ray data, direction lists and
//! slices. All numbers are exact literals and serialisation is canonical, so
//! files generated here round-trip bit-exactly.

use std::fmt;

use icotomo_core::geom::window::Window;
use icotomo_core::geom::{Direction, ModulePoint, Point3};
use icotomo_core::modelset::Slice;
use icotomo_core::qtau::{LiteralError, QTau, ZTau};
use icotomo_core::tomography::XRayData;

use num_bigint::BigInt;

/// Parse failure with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Whitespace-separated tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((col, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
            col = i + 1;
        }
    }
    if let Some(s) = start {
        out.push((col, &line[s..]));
    }
    out
}

fn parse_int(line_no: usize, tok: (usize, &str)) -> Result<i64, ParseError> {
    tok.1.parse::<i64>().map_err(|_| {
        ParseError::new(
            line_no,
            tok.0,
            format!("expected integer, found `{}`", tok.1),
        )
    })
}

fn parse_big(line_no: usize, tok: (usize, &str)) -> Result<BigInt, ParseError> {
    tok.1.parse::<BigInt>().map_err(|_| {
        ParseError::new(
            line_no,
            tok.0,
            format!("expected integer, found `{}`", tok.1),
        )
    })
}

fn parse_literal(line_no: usize, tok: (usize, &str)) -> Result<QTau, ParseError> {
    QTau::from_literal(tok.1).map_err(|e| {
        let at = match e {
            LiteralError::ZeroDenominator { at } => at,
            LiteralError::Unexpected { at, .. } => at,
            LiteralError::TrailingInput { at } => at,
        };
        ParseError::new(
            line_no,
            tok.0 + at,
            format!("bad QTau literal `{}`: {e}", tok.1),
        )
    })
}

fn module_point_from_tokens(
    line_no: usize,
    toks: &[(usize, &str)],
) -> Result<ModulePoint, ParseError> {
    if toks.len() != 6 {
        return Err(ParseError::new(
            line_no,
            toks.first().map_or(1, |t| t.0),
            format!("expected 6 integers, found {} tokens", toks.len()),
        ));
    }
    let mut v = Vec::with_capacity(6);
    for t in toks {
        v.push(parse_big(line_no, *t)?);
    }
    Ok(ModulePoint::new(
        ZTau::new(v[0].clone(), v[1].clone()),
        ZTau::new(v[2].clone(), v[3].clone()),
        ZTau::new(v[4].clone(), v[5].clone()),
    ))
}

fn non_empty_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Points file: one module point per line as six integers.
pub fn parse_points(text: &str) -> Result<Vec<ModulePoint>, ParseError> {
    let mut out = Vec::new();
    for (no, line) in non_empty_lines(text) {
        out.push(module_point_from_tokens(no, &tokens(line))?);
    }
    Ok(out)
}

pub fn serialize_points(points: &[ModulePoint]) -> String {
    let mut s = String::new();
    for p in points {
        s.push_str(&format!("{p}\n"));
    }
    s
}

/// Field-coordinate points file for sets that leave the module (header
/// `points field`, then three QTau literals per line).
pub fn parse_field_points(text: &str) -> Result<Vec<Point3>, ParseError> {
    let mut lines = non_empty_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty file"))?;
    let toks = tokens(header);
    if toks.len() != 2 || toks[0].1 != "points" || toks[1].1 != "field" {
        return Err(ParseError::new(no, 1, "expected header `points field`"));
    }
    let mut out = Vec::new();
    for (no, line) in lines {
        let toks = tokens(line);
        if toks.len() != 3 {
            return Err(ParseError::new(
                no,
                toks.first().map_or(1, |t| t.0),
                "expected 3 QTau literals",
            ));
        }
        out.push(Point3::new(
            parse_literal(no, toks[0])?,
            parse_literal(no, toks[1])?,
            parse_literal(no, toks[2])?,
        ));
    }
    Ok(out)
}

pub fn serialize_field_points(points: &[Point3]) -> String {
    let mut s = String::from("points field\n");
    for p in points {
        s.push_str(&format!("{p}\n"));
    }
    s
}

/// Window file: `window 3d` or `window 2d <nx> <ny> <nz> <offset>`, then one
/// vertex per line as three QTau literals. The translate is supplied
/// separately (the `--shift` flag), not stored in the file.
pub fn parse_window(text: &str) -> Result<Window, ParseError> {
    let mut lines = non_empty_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty window file"))?;
    let toks = tokens(header);
    if toks.is_empty() || toks[0].1 != "window" {
        return Err(ParseError::new(header_no, 1, "expected header `window`"));
    }
    #[allow(clippy::large_enum_variant)]
    enum Kind {
        Solid,
        Planar(Point3, QTau),
    }
    let kind = match toks.get(1).map(|t| t.1) {
        Some("3d") if toks.len() == 2 => Kind::Solid,
        Some("2d") if toks.len() == 6 => {
            let n = Point3::new(
                parse_literal(header_no, toks[2])?,
                parse_literal(header_no, toks[3])?,
                parse_literal(header_no, toks[4])?,
            );
            let off = parse_literal(header_no, toks[5])?;
            Kind::Planar(n, off)
        }
        _ => {
            return Err(ParseError::new(
                header_no,
                toks.get(1).map_or(1, |t| t.0),
                "expected `window 3d` or `window 2d <nx> <ny> <nz> <offset>`",
            ))
        }
    };
    let mut verts = Vec::new();
    for (no, line) in lines {
        let toks = tokens(line);
        if toks.len() != 3 {
            return Err(ParseError::new(
                no,
                toks.first().map_or(1, |t| t.0),
                "expected 3 QTau literals for a vertex",
            ));
        }
        verts.push(Point3::new(
            parse_literal(no, toks[0])?,
            parse_literal(no, toks[1])?,
            parse_literal(no, toks[2])?,
        ));
    }
    let built = match kind {
        Kind::Solid => Window::solid(&verts, Point3::zero()),
        Kind::Planar(n, off) => Window::planar(n, off, &verts, Point3::zero()),
    };
    built.map_err(|e| ParseError::new(header_no, 1, format!("invalid window: {e}")))
}

pub fn serialize_window(window: &Window) -> String {
    let mut s = String::new();
    match window.plane() {
        None => s.push_str("window 3d\n"),
        Some((n, off)) => {
            s.push_str(&format!("window 2d {} {} {} {}\n", n.x, n.y, n.z, off));
        }
    }
    for v in window.vertices() {
        s.push_str(&format!("{v}\n"));
    }
    s
}

/// X-ray file: `xray direction <6 ints>` (a module witness of the
/// direction), then `base <3 QTau literals> count <int>` per support line,
/// in canonical line order.
pub fn parse_xray(text: &str) -> Result<XRayData, ParseError> {
    let mut lines = non_empty_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty X-ray file"))?;
    let toks = tokens(header);
    if toks.len() != 8 || toks[0].1 != "xray" || toks[1].1 != "direction" {
        return Err(ParseError::new(
            no,
            1,
            "expected header `xray direction <6 ints>`",
        ));
    }
    let witness = module_point_from_tokens(no, &toks[2..])?;
    let rep = witness.embed();
    if rep.is_zero() {
        return Err(ParseError::new(no, toks[2].0, "direction must be nonzero"));
    }
    let direction = Direction::new(rep).expect("nonzero");
    let mut entries = Vec::new();
    for (no, line) in lines {
        let toks = tokens(line);
        if toks.len() != 6 || toks[0].1 != "base" || toks[4].1 != "count" {
            return Err(ParseError::new(
                no,
                toks.first().map_or(1, |t| t.0),
                "expected `base <x> <y> <z> count <n>`",
            ));
        }
        let base = Point3::new(
            parse_literal(no, toks[1])?,
            parse_literal(no, toks[2])?,
            parse_literal(no, toks[3])?,
        );
        let count = parse_int(no, toks[5])?;
        if count <= 0 {
            return Err(ParseError::new(
                no,
                toks[5].0,
                "support counts must be positive",
            ));
        }
        entries.push((base, count as u64));
    }
    XRayData::from_parts(direction, entries)
        .map_err(|e| ParseError::new(1, 1, format!("invalid X-ray data: {e}")))
}

pub fn serialize_xray(data: &XRayData) -> String {
    let mut s = format!("xray direction {}\n", data.direction().l_witness());
    for (line, count) in data.lines() {
        s.push_str(&format!("base {} count {count}\n", line.base));
    }
    s
}

/// Directions file: one module-coefficient 6-tuple per line.
pub fn parse_directions(text: &str) -> Result<Vec<Direction>, ParseError> {
    let mut out = Vec::new();
    for (no, line) in non_empty_lines(text) {
        let m = module_point_from_tokens(no, &tokens(line))?;
        let v = m.embed();
        if v.is_zero() {
            return Err(ParseError::new(no, 1, "direction must be nonzero"));
        }
        out.push(Direction::new(v).expect("nonzero"));
    }
    Ok(out)
}

pub fn serialize_directions(dirs: &[Direction]) -> String {
    let mut s = String::new();
    for d in dirs {
        s.push_str(&format!("{}\n", d.l_witness()));
    }
    s
}

/// Slice file: `slice height <QTau literal>`, then module points.
pub fn parse_slice(text: &str) -> Result<Slice, ParseError> {
    let mut lines = non_empty_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty slice file"))?;
    let toks = tokens(header);
    if toks.len() != 3 || toks[0].1 != "slice" || toks[1].1 != "height" {
        return Err(ParseError::new(
            no,
            1,
            "expected header `slice height <QTau literal>`",
        ));
    }
    let height = parse_literal(no, toks[2])?;
    let mut points = Vec::new();
    let axis = icotomo_core::geom::five_fold_axis();
    for (no, line) in lines {
        let p = module_point_from_tokens(no, &tokens(line))?;
        if p.embed().dot(&axis) != height {
            return Err(ParseError::new(
                no,
                1,
                "point does not lie at the slice height",
            ));
        }
        points.push(p);
    }
    Ok(Slice::new(height, points))
}

pub fn serialize_slice(slice: &Slice) -> String {
    let mut s = format!("slice height {}\n", slice.height());
    for p in slice.points() {
        s.push_str(&format!("{p}\n"));
    }
    s
}

/// Grid file: header `grid`, then `<x> <y> <z> coset <k>` per point.
pub fn parse_grid(text: &str) -> Result<Vec<(Point3, usize)>, ParseError> {
    let mut lines = non_empty_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty grid file"))?;
    let toks = tokens(header);
    if toks.len() != 1 || toks[0].1 != "grid" {
        return Err(ParseError::new(no, 1, "expected header `grid`"));
    }
    let mut out = Vec::new();
    for (no, line) in lines {
        let toks = tokens(line);
        if toks.len() != 5 || toks[3].1 != "coset" {
            return Err(ParseError::new(
                no,
                toks.first().map_or(1, |t| t.0),
                "expected `<x> <y> <z> coset <k>`",
            ));
        }
        let p = Point3::new(
            parse_literal(no, toks[0])?,
            parse_literal(no, toks[1])?,
            parse_literal(no, toks[2])?,
        );
        let tag = parse_int(no, toks[4])?;
        if tag < 0 {
            return Err(ParseError::new(
                no,
                toks[4].0,
                "coset tag must be nonnegative",
            ));
        }
        out.push((p, tag as usize));
    }
    Ok(out)
}

pub fn serialize_grid(entries: &[(Point3, usize)]) -> String {
    let mut s = String::from("grid\n");
    for (p, tag) in entries {
        s.push_str(&format!("{p} coset {tag}\n"));
    }
    s
}

/// Load points from either a plain points file or a slice file (sniffed by
/// header), returning embedded coordinates.
pub fn parse_any_points(text: &str) -> Result<Vec<Point3>, ParseError> {
    let first = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or_default();
    let head = tokens(first).first().map(|t| t.1.to_string());
    match head.as_deref() {
        Some("slice") => Ok(parse_slice(text)?.embedded()),
        Some("points") => parse_field_points(text),
        _ => Ok(parse_points(text)?.iter().map(|m| m.embed()).collect()),
    }
}
