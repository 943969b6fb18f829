//! Command-line front end. Exit codes: 0 success/feasible, 2 infeasible or
//! not found, 1 error.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;

use icotomo_core::geom::window::Window;
use icotomo_core::geom::{ModulePoint, Point3};
use icotomo_core::modelset::{slice_points, PatchSpec, Region};
use icotomo_core::qtau::QTau;
use icotomo_core::reconstruction::{
    solve_fixed_multi, Outcome, ReconstructionInstance, SearchOutcome,
};
use icotomo_core::tomography::{coset_classify, grid, XRayData};
use icotomo_core::uniqueness::{check_determination, find_u_polygon, Determination};

use crate::formats;
use crate::pipeline::{generate_parallel, run_demo, thread_budget, DemoConfig};
use crate::plot::{plot_grid_star, plot_slice_physical, plot_slice_star, Style};

/// Report lines go through a write that tolerates early-closed pipes, so a
/// consumer like `head` cannot abort the command mid-work.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const USAGE: &str = "\
icotomo -- exact discrete tomography of icosahedral model sets

usage: icotomo <command> [flags]

commands:
  generate   --window FILE|icosahedron --shift X,Y,Z --radius P/Q
             [--center X,Y,Z] --out FILE
  slice      FILE --out-dir DIR
  xray       --points FILE --dir M1,N1,M2,N2,M3,N3 --out FILE
  grid       --xray FILE --xray FILE [--xray FILE ...] [--out FILE]
  reconstruct --xray FILE --xray FILE --window FILE|icosahedron
             [--shift X,Y,Z | --search-plane auto] --out FILE [--all N]
  upolygon   --slice FILE --dirs FILE --max-vertices N
             [--region-radius P/Q [--region-center X,Y,Z]]
  determine  --slice FILE --dirs FILE --size-bound N
             [--region-radius P/Q [--region-center X,Y,Z]]
  plot       --what slice-physical|slice-star-with-window|grid-star-with-window
             --slice FILE [--grid FILE] [--window FILE|icosahedron]
             [--shift X,Y,Z] --out FILE [--point-radius R]
  demo       [--radius P/Q] [--out-dir DIR] [--corrupt-xray] [--search]

Coordinates are QTau literals `p/q` or `p/q+r/st` (t spells tau); the
ICOTOMO_THREADS environment variable caps generation parallelism (0 = auto).
";

struct Flags {
    values: BTreeMap<String, Vec<String>>,
    bools: BTreeSet<String>,
    positional: Vec<String>,
}

impl Flags {
    fn one(&self, key: &str) -> Result<&str, String> {
        match self.values.get(key).map(|v| v.as_slice()) {
            Some([v]) => Ok(v),
            Some(_) => Err(format!("--{key} given more than once")),
            None => Err(format!("missing required flag --{key}")),
        }
    }

    fn opt(&self, key: &str) -> Result<Option<&str>, String> {
        match self.values.get(key).map(|v| v.as_slice()) {
            Some([v]) => Ok(Some(v)),
            Some(_) => Err(format!("--{key} given more than once")),
            None => Ok(None),
        }
    }

    fn many(&self, key: &str) -> Vec<&str> {
        self.values
            .get(key)
            .map(|v| v.iter().map(String::as_str).collect())
            .unwrap_or_default()
    }
}

fn parse_flags(args: &[String], boolean: &[&str]) -> Result<Flags, String> {
    let mut flags = Flags {
        values: BTreeMap::new(),
        bools: BTreeSet::new(),
        positional: Vec::new(),
    };
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            if boolean.contains(&name) {
                flags.bools.insert(name.to_string());
                i += 1;
            } else {
                let value = args
                    .get(i + 1)
                    .ok_or_else(|| format!("flag --{name} needs a value"))?;
                flags
                    .values
                    .entry(name.to_string())
                    .or_default()
                    .push(value.clone());
                i += 2;
            }
        } else {
            flags.positional.push(a.clone());
            i += 1;
        }
    }
    Ok(flags)
}

fn parse_qtau3(text: &str) -> Result<Point3, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated QTau literals, got `{text}`"
        ));
    }
    let lit = |s: &str| QTau::from_literal(s).map_err(|e| format!("bad literal `{s}`: {e}"));
    Ok(Point3::new(lit(parts[0])?, lit(parts[1])?, lit(parts[2])?))
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational denominator `{den}`"))?;
    if d == BigInt::from(0) {
        return Err("rational denominator must be nonzero".into());
    }
    Ok(BigRational::new(n, d))
}

fn parse_ints6(text: &str) -> Result<ModulePoint, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected six comma-separated integers, got `{text}`"
        ));
    }
    let mut v = [0i64; 6];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p.parse().map_err(|_| format!("bad integer `{p}`"))?;
    }
    Ok(ModulePoint::from_ints(v[0], v[1], v[2], v[3], v[4], v[5]))
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| format!("cannot create {parent:?}: {e}"))?;
        }
    }
    fs::write(path, contents).map_err(|e| format!("cannot write {path:?}: {e}"))
}

fn load_window(spec: &str, shift: Option<&str>) -> Result<Window, String> {
    let translate = match shift {
        Some(s) => parse_qtau3(s)?,
        None => Point3::zero(),
    };
    if spec == "icosahedron" {
        return Window::icosahedron(translate).map_err(|e| e.to_string());
    }
    let text = read(spec)?;
    let w = formats::parse_window(&text).map_err(|e| format!("{spec}: {e}"))?;
    Ok(w.with_translate(translate))
}

fn load_xray(path: &str) -> Result<XRayData, String> {
    formats::parse_xray(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(args: &[String]) -> Result<i32, String> {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return Ok(1);
    };
    let rest = &args[1..];
    match command.as_str() {
        "generate" => cmd_generate(rest),
        "slice" => cmd_slice(rest),
        "xray" => cmd_xray(rest),
        "grid" => cmd_grid(rest),
        "reconstruct" => cmd_reconstruct(rest),
        "upolygon" => cmd_upolygon(rest),
        "determine" => cmd_determine(rest),
        "plot" => cmd_plot(rest),
        "demo" => cmd_demo(rest),
        "help" | "--help" | "-h" => {
            use std::io::Write;
            let _ = write!(std::io::stdout(), "{USAGE}");
            Ok(0)
        }
        other => Err(format!("unknown command `{other}`; try `icotomo help`")),
    }
}

fn cmd_generate(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let window = load_window(f.one("window")?, f.opt("shift")?)?;
    let radius = parse_rational(f.one("radius")?)?;
    let center = match f.opt("center")? {
        Some(c) => parse_qtau3(c)?,
        None => Point3::zero(),
    };
    let spec = PatchSpec {
        window,
        region: Region::ball(center, radius),
        translate: Point3::zero(),
    };
    let points = generate_parallel(&spec, thread_budget()).map_err(|e| e.to_string())?;
    write(
        Path::new(f.one("out")?),
        &formats::serialize_points(&points),
    )?;
    out!("patch_size={}", points.len());
    Ok(0)
}

fn cmd_slice(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let [input] = f.positional.as_slice() else {
        return Err("slice needs one positional points file".into());
    };
    let points = formats::parse_points(&read(input)?).map_err(|e| format!("{input}: {e}"))?;
    let slices = slice_points(&points);
    let dir = PathBuf::from(f.one("out-dir")?);
    fs::create_dir_all(&dir).map_err(|e| format!("cannot create {dir:?}: {e}"))?;
    out!("slice_count={}", slices.len());
    for (i, s) in slices.iter().enumerate() {
        let name = format!("slice_{i:03}.sl");
        write(&dir.join(&name), &formats::serialize_slice(s))?;
        out!("{name} height={} size={}", s.height(), s.len());
    }
    Ok(0)
}

fn cmd_xray(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let points_path = f.one("points")?;
    let pts = formats::parse_any_points(&read(points_path)?)
        .map_err(|e| format!("{points_path}: {e}"))?;
    let witness = parse_ints6(f.one("dir")?)?;
    let rep = witness.embed();
    if rep.is_zero() {
        return Err("direction must be nonzero".into());
    }
    let dir = icotomo_core::geom::Direction::new(rep).expect("nonzero");
    let xr = XRayData::of(&pts, &dir);
    write(Path::new(f.one("out")?), &formats::serialize_xray(&xr))?;
    out!("lines={} total={}", xr.support_len(), xr.total());
    Ok(0)
}

fn cmd_grid(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let paths = f.many("xray");
    if paths.len() < 2 {
        return Err("grid needs at least two --xray files".into());
    }
    let mut data = Vec::new();
    for p in paths {
        data.push(load_xray(p)?);
    }
    let g = grid(&data).map_err(|e| e.to_string())?;
    let classes = coset_classify(&g);
    out!("grid_size={}", g.len());
    out!("coset_classes={}", classes.class_count);
    if let Some(out) = f.opt("out")? {
        let entries: Vec<(Point3, usize)> = g
            .points()
            .iter()
            .cloned()
            .zip(classes.tags.iter().copied())
            .collect();
        write(Path::new(out), &formats::serialize_grid(&entries))?;
    }
    Ok(0)
}

fn cmd_reconstruct(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let paths = f.many("xray");
    let [pa, pb] = paths.as_slice() else {
        return Err("reconstruct needs exactly two --xray files".into());
    };
    let xa = load_xray(pa)?;
    let xb = load_xray(pb)?;
    let search = f.opt("search-plane")?;
    let shift = f.opt("shift")?;
    if search.is_some() && shift.is_some() {
        return Err("--shift and --search-plane are mutually exclusive".into());
    }
    let out = PathBuf::from(f.one("out")?);

    if let Some(mode) = search {
        if mode != "auto" {
            return Err("only `--search-plane auto` is supported".into());
        }
        let window = load_window(f.one("window")?, None)?;
        let inst = ReconstructionInstance::new(xa, xb, window).map_err(|e| e.to_string())?;
        return match inst.solve_search_2d().map_err(|e| e.to_string())? {
            SearchOutcome::Feasible {
                translate,
                solution,
            } => {
                write_solution(&out, &solution.points)?;
                out!("feasible=true");
                out!("translate={},{},{}", translate.x, translate.y, translate.z);
                out!("solution_size={}", solution.points.len());
                Ok(0)
            }
            SearchOutcome::Infeasible(reason) => {
                out!("feasible=false");
                out!("infeasible_reason={reason}");
                Ok(2)
            }
        };
    }

    let window = load_window(f.one("window")?, shift)?;
    let limit: Option<usize> = match f.opt("all")? {
        Some(n) => Some(n.parse().map_err(|_| format!("bad --all count `{n}`"))?),
        None => None,
    };
    let instance = ReconstructionInstance::new(xa.clone(), xb.clone(), window.clone());
    let outcome = match &instance {
        Ok(inst) => {
            if let Some(limit) = limit {
                let en = inst.enumerate_all(limit).map_err(|e| e.to_string())?;
                out!("solutions={}", en.solutions.len());
                out!("truncated={}", en.truncated);
                for (i, sol) in en.solutions.iter().enumerate() {
                    let path = numbered(&out, i + 1);
                    write_solution(&path, &sol.points)?;
                }
                return Ok(if en.solutions.is_empty() { 2 } else { 0 });
            }
            inst.solve_fixed().map_err(|e| e.to_string())?
        }
        Err(icotomo_core::reconstruction::ReconstructionError::MultiSliceInput) => {
            solve_fixed_multi(&xa, &xb, &window).map_err(|e| e.to_string())?
        }
        Err(e) => return Err(e.to_string()),
    };
    match outcome {
        Outcome::Feasible(solution) => {
            write_solution(&out, &solution.points)?;
            out!("feasible=true");
            out!("solution_size={}", solution.points.len());
            Ok(0)
        }
        Outcome::Infeasible(reason) => {
            out!("feasible=false");
            out!("infeasible_reason={reason}");
            Ok(2)
        }
    }
}

fn numbered(base: &Path, index: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sol".into());
    let ext = base
        .extension()
        .map(|s| format!(".{}", s.to_string_lossy()))
        .unwrap_or_default();
    base.with_file_name(format!("{stem}.{index:03}{ext}"))
}

fn write_solution(path: &Path, points: &[Point3]) -> Result<(), String> {
    let in_module: Option<Vec<ModulePoint>> = points.iter().map(ModulePoint::from_point).collect();
    match in_module {
        Some(ms) => write(path, &formats::serialize_points(&ms)),
        None => write(path, &formats::serialize_field_points(points)),
    }
}

/// The caveat behind convex-subset semantics on finite data: whatever set
/// `C` a certificate speaks about, its hull must stay strictly inside the
/// physical region the slice was generated from, else the slice may omit
/// model-set points of `conv(C)`. When the caller states that region, points
/// on or outside it are a hard error.
fn enforce_region_margin(f: &Flags, points: &[Point3], what: &str) -> Result<Option<bool>, String> {
    let Some(radius) = f.opt("region-radius")? else {
        return Ok(None);
    };
    let radius = parse_rational(radius)?;
    let center = match f.opt("region-center")? {
        Some(c) => parse_qtau3(c)?,
        None => Point3::zero(),
    };
    let r2 = QTau::new(&radius * &radius, num_traits::Zero::zero());
    for p in points {
        if (&(p - &center).norm_sq() - &r2).sign() >= 0 {
            return Err(format!(
                "{what} is not strictly inside the stated physical region;                  the slice may be missing hull points"
            ));
        }
    }
    Ok(Some(true))
}

fn cmd_upolygon(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let slice_path = f.one("slice")?;
    let slice =
        formats::parse_slice(&read(slice_path)?).map_err(|e| format!("{slice_path}: {e}"))?;
    let dirs_path = f.one("dirs")?;
    let dirs =
        formats::parse_directions(&read(dirs_path)?).map_err(|e| format!("{dirs_path}: {e}"))?;
    let max_vertices: usize = f
        .one("max-vertices")?
        .parse()
        .map_err(|_| "bad --max-vertices".to_string())?;
    match find_u_polygon(&slice.embedded(), &dirs, max_vertices) {
        Some(polygon) => {
            if enforce_region_margin(&f, &polygon.vertices, "the found polygon")?.is_some() {
                out!("region_margin=ok");
            }
            out!("found=true");
            out!("vertices={}", polygon.len());
            for v in &polygon.vertices {
                out!("{v}");
            }
            Ok(0)
        }
        None => {
            out!("found=false");
            out!("max_vertices_searched={max_vertices}");
            Ok(2)
        }
    }
}

fn cmd_determine(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let slice_path = f.one("slice")?;
    let slice =
        formats::parse_slice(&read(slice_path)?).map_err(|e| format!("{slice_path}: {e}"))?;
    let dirs_path = f.one("dirs")?;
    let dirs =
        formats::parse_directions(&read(dirs_path)?).map_err(|e| format!("{dirs_path}: {e}"))?;
    let size_bound: usize = f
        .one("size-bound")?
        .parse()
        .map_err(|_| "bad --size-bound".to_string())?;
    match check_determination(&slice.embedded(), &dirs, size_bound) {
        Determination::DeterminedUpToBound { subsets_scanned } => {
            out!("determined_up_to_bound=true");
            out!("size_bound={size_bound}");
            out!("convex_subsets_scanned={subsets_scanned}");
        }
        Determination::Counterexample { c1, c2 } => {
            let union: Vec<Point3> = c1.iter().chain(c2.iter()).cloned().collect();
            if enforce_region_margin(&f, &union, "the counterexample pair")?.is_some() {
                out!("region_margin=ok");
            }
            out!("determined_up_to_bound=false");
            out!("counterexample_size={}", c1.len());
            if let Some(prefix) = f.opt("out-prefix")? {
                write_solution(&PathBuf::from(format!("{prefix}.1.l")), &c1)?;
                write_solution(&PathBuf::from(format!("{prefix}.2.l")), &c2)?;
            }
        }
    }
    Ok(0)
}

fn cmd_plot(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &[])?;
    let what = f.one("what")?;
    let slice_path = f.one("slice")?;
    let slice =
        formats::parse_slice(&read(slice_path)?).map_err(|e| format!("{slice_path}: {e}"))?;
    let mut style = Style::default();
    if let Some(r) = f.opt("point-radius")? {
        style.point_radius = r.parse().map_err(|_| "bad --point-radius".to_string())?;
    }
    let svg = match what {
        "slice-physical" => plot_slice_physical(&slice, &style),
        "slice-star-with-window" => {
            let window = load_window(f.one("window")?, f.opt("shift")?)?;
            plot_slice_star(&slice, &window, &style).map_err(|e| e.to_string())?
        }
        "grid-star-with-window" => {
            let grid_path = f.one("grid")?;
            let entries =
                formats::parse_grid(&read(grid_path)?).map_err(|e| format!("{grid_path}: {e}"))?;
            let pts: Vec<Point3> = entries.into_iter().map(|(p, _)| p).collect();
            let window = load_window(f.one("window")?, f.opt("shift")?)?;
            plot_grid_star(&pts, &slice, &window, &style).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown plot kind `{other}`")),
    };
    write(Path::new(f.one("out")?), &svg)?;
    Ok(0)
}

fn cmd_demo(args: &[String]) -> Result<i32, String> {
    let f = parse_flags(args, &["corrupt-xray", "search"])?;
    let mut cfg = DemoConfig {
        threads: thread_budget(),
        ..DemoConfig::default()
    };
    if let Some(r) = f.opt("radius")? {
        cfg.radius = parse_rational(r)?;
    }
    if let Some(dir) = f.opt("out-dir")? {
        cfg.out_dir = Some(PathBuf::from(dir));
    }
    cfg.corrupt_xray = f.bools.contains("corrupt-xray");
    cfg.with_search = f.bools.contains("search");
    let report = run_demo(&cfg);
    {
        use std::io::Write;
        let _ = write!(std::io::stdout(), "{}", report.to_text());
    }
    Ok(report.exit_code)
}
