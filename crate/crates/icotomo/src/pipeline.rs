//! End-to-end demo driver: generate, slice, X-ray, grid, reconstruct,
//! verify, and report machine-readable `key=value` lines.

use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;

use icotomo_core::geom::window::Window;
use icotomo_core::geom::{five_fold_axis, five_fold_rotation, Direction, ModulePoint, Point3};
use icotomo_core::modelset::{
    accepts, coefficient_box, slice_points, ModelSetError, PatchSpec, Region, Slice,
};
use icotomo_core::qtau::QTau;
use icotomo_core::reconstruction::{
    verify_solution, Outcome, ReconstructionInstance, SearchOutcome,
};
use icotomo_core::tomography::{coset_classify, grid, XRayData};
use num_traits::Zero;

use crate::formats;
use crate::plot::{self, Style};

/// The shift `s = (1,1,1)/1000` of the running example.
pub fn example_shift() -> Point3 {
    let s = QTau::rat(1, 1000);
    Point3::new(s.clone(), s.clone(), s)
}

/// The example window: the regular icosahedron translated by `s`.
pub fn example_window() -> Window {
    Window::icosahedron(example_shift()).expect("constructor invariants hold")
}

/// The two in-plane directions of the demo: `(0,1,0)` and its image under
/// the exact five-fold rotation.
pub fn demo_directions() -> (Direction, Direction) {
    let u1 = Point3::from_ints(0, 1, 0);
    let u2 = five_fold_rotation().apply(&u1);
    (
        Direction::new(u1).expect("nonzero"),
        Direction::new(u2).expect("nonzero"),
    )
}

/// Effective thread budget: the `ICOTOMO_THREADS` cap, with 0 or unset
/// meaning automatic.
pub fn thread_budget() -> usize {
    let auto = || {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8)
    };
    match std::env::var("ICOTOMO_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => auto(),
            Ok(n) => n,
        },
        Err(_) => auto(),
    }
}

/// Parallel patch generation: the coefficient box is split along its first
/// coordinate across worker threads, each filtering candidates exactly;
/// results are merged and sorted, so the output equals the sequential one.
pub fn generate_parallel(
    spec: &PatchSpec,
    threads: usize,
) -> Result<Vec<ModulePoint>, ModelSetError> {
    let cb = coefficient_box(spec, &BigRational::zero())?;
    let [(r1m, r1n), (r2m, r2n), (r3m, r3n)] = cb.ranges;
    let m1_values: Vec<i64> = (r1m.0..=r1m.1).collect();
    let threads = threads.max(1).min(m1_values.len().max(1));
    let chunk = m1_values.len().div_ceil(threads.max(1)).max(1);
    let mut points: Vec<ModulePoint> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for ms in m1_values.chunks(chunk) {
            handles.push(scope.spawn(move || {
                let mut local = Vec::new();
                for &m1 in ms {
                    for n1 in r1n.0..=r1n.1 {
                        for m2 in r2m.0..=r2m.1 {
                            for n2 in r2n.0..=r2n.1 {
                                for m3 in r3m.0..=r3m.1 {
                                    for n3 in r3n.0..=r3n.1 {
                                        let cand = ModulePoint::from_ints(m1, n1, m2, n2, m3, n3);
                                        if accepts(spec, &cand) {
                                            local.push(cand);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                local
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    points.sort();
    Ok(points)
}

#[derive(Clone, Debug)]
pub struct DemoConfig {
    pub radius: BigRational,
    pub out_dir: Option<PathBuf>,
    pub corrupt_xray: bool,
    pub with_search: bool,
    pub threads: usize,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig {
            radius: BigRational::new(BigInt::from(5), BigInt::from(2)),
            out_dir: None,
            corrupt_xray: false,
            with_search: false,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DemoReport {
    pub entries: Vec<(String, String)>,
    pub exit_code: i32,
}

impl DemoReport {
    fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    fn fail(mut self, stage: &str, message: impl ToString, code: i32) -> DemoReport {
        self.push("failed_stage", stage);
        self.push("error", message.to_string());
        self.exit_code = code;
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Run the whole round trip and report. Exit code 0 when every stage and
/// verification passes, 2 when reconstruction is infeasible, 1 on errors.
pub fn run_demo(cfg: &DemoConfig) -> DemoReport {
    let mut report = DemoReport::default();
    let window = example_window();
    let spec = PatchSpec {
        window: window.clone(),
        region: Region::ball(Point3::zero(), cfg.radius.clone()),
        translate: Point3::zero(),
    };
    report.push("radius", &cfg.radius);

    // generate
    let points = match generate_parallel(&spec, cfg.threads) {
        Ok(p) => p,
        Err(e) => return report.fail("generate", e, 1),
    };
    report.push("patch_size", points.len());

    // slice
    let slices = slice_points(&points);
    report.push("slice_count", slices.len());
    let central: Slice = match slices.iter().find(|s| s.height().is_zero()) {
        Some(s) => s.clone(),
        None => Slice::new(QTau::zero(), Vec::new()),
    };
    report.push("central_slice_size", central.len());

    // X-rays
    let (u1, u2) = demo_directions();
    let pts = central.embedded();
    let xr1 = XRayData::of(&pts, &u1);
    let mut xr2 = XRayData::of(&pts, &u2);
    if cfg.corrupt_xray {
        // bump the first line's count: totals no longer match
        let mut entries: Vec<(Point3, u64)> =
            xr2.lines().map(|(k, c)| (k.base.clone(), c)).collect();
        if let Some(first) = entries.first_mut() {
            first.1 += 1;
        }
        xr2 = XRayData::from_parts(u2.clone(), entries).expect("counts stay positive");
    }
    report.push("xray1_lines", xr1.support_len());
    report.push("xray2_lines", xr2.support_len());
    report.push("xray1_total", xr1.total());
    report.push("xray2_total", xr2.total());

    // grid
    let g = match grid(&[xr1.clone(), xr2.clone()]) {
        Ok(g) => g,
        Err(e) => return report.fail("grid", e, 1),
    };
    let classes = coset_classify(&g);
    report.push("grid_size", g.len());
    report.push("coset_classes", classes.class_count);

    // reconstruct, fixed translate
    let inst = match ReconstructionInstance::new(xr1.clone(), xr2.clone(), window.clone()) {
        Ok(i) => i,
        Err(e) => return report.fail("reconstruct", e, 1),
    };
    let solution = match inst.solve_fixed() {
        Ok(Outcome::Feasible(sol)) => sol,
        Ok(Outcome::Infeasible(reason)) => {
            report.push("feasible", false);
            report.push("infeasible_reason", reason);
            return report.fail("reconstruct", reason, 2);
        }
        Err(e) => return report.fail("reconstruct", e, 1),
    };
    report.push("feasible", true);
    report.push("solution_size", solution.points.len());

    // verification (run again, explicitly, stage by stage)
    let xray_match =
        XRayData::of(&solution.points, &u1) == xr1 && XRayData::of(&solution.points, &u2) == xr2;
    report.push("xray_match", xray_match);
    let window_interior = solution.points.iter().all(|p| {
        window.classify(&p.star()) == icotomo_core::geom::window::Classification::Interior
    });
    report.push("window_interior", window_interior);
    let coset_pure = verify_solution(inst.data(), &window, &solution).is_ok();
    report.push("coset_pure", coset_pure);
    if !(xray_match && window_interior && coset_pure) {
        return report.fail("verify", "solution verification failed", 1);
    }

    // optional translate search with the decagonal cross-section
    if cfg.with_search {
        let star_normal = five_fold_axis().star();
        let decagon = match window.section(&star_normal, &QTau::zero()) {
            Ok(w) => w,
            Err(e) => return report.fail("search", e, 1),
        };
        let sinst = match ReconstructionInstance::new(xr1.clone(), xr2.clone(), decagon) {
            Ok(i) => i,
            Err(e) => return report.fail("search", e, 1),
        };
        match sinst.solve_search_2d() {
            Ok(SearchOutcome::Feasible {
                translate,
                solution: ssol,
            }) => {
                report.push("search_feasible", true);
                report.push("search_solution_size", ssol.points.len());
                report.push(
                    "search_translate",
                    format!("{},{},{}", translate.x, translate.y, translate.z),
                );
            }
            Ok(SearchOutcome::Infeasible(reason)) => {
                report.push("search_feasible", false);
                return report.fail("search", reason, 2);
            }
            Err(e) => return report.fail("search", e, 1),
        }
    }

    // artifacts
    if let Some(dir) = &cfg.out_dir {
        if let Err(e) = write_artifacts(
            dir,
            &points,
            &slices,
            &central,
            &xr1,
            &xr2,
            &solution.points,
            &window,
        ) {
            return report.fail("artifacts", e, 1);
        }
        report.push("out_dir", dir.display());
    }

    report.push("status", "ok");
    report
}

#[allow(clippy::too_many_arguments)]
fn write_artifacts(
    dir: &PathBuf,
    points: &[ModulePoint],
    slices: &[Slice],
    central: &Slice,
    xr1: &XRayData,
    xr2: &XRayData,
    solution: &[Point3],
    window: &Window,
) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("points.l"), formats::serialize_points(points))?;
    let slice_dir = dir.join("slices");
    fs::create_dir_all(&slice_dir)?;
    for (i, s) in slices.iter().enumerate() {
        fs::write(
            slice_dir.join(format!("slice_{i:03}.sl")),
            formats::serialize_slice(s),
        )?;
    }
    fs::write(dir.join("xray1.xr"), formats::serialize_xray(xr1))?;
    fs::write(dir.join("xray2.xr"), formats::serialize_xray(xr2))?;
    // solutions of real slices stay in the module; fall back to field
    // coordinates when they do not
    let in_module: Option<Vec<ModulePoint>> =
        solution.iter().map(ModulePoint::from_point).collect();
    match in_module {
        Some(ms) => fs::write(dir.join("sol.l"), formats::serialize_points(&ms))?,
        None => fs::write(dir.join("sol.l"), formats::serialize_field_points(solution))?,
    }
    let style = Style::default();
    fs::write(
        dir.join("slice_physical.svg"),
        plot::plot_slice_physical(central, &style),
    )?;
    let star_normal = five_fold_axis().star();
    if let Ok(decagon) = window.section(&star_normal, &central.height().galois()) {
        if let Ok(svg) = plot::plot_slice_star(central, &decagon, &style) {
            fs::write(dir.join("slice_star.svg"), svg)?;
        }
        if let Ok(g) = grid(&[xr1.clone(), xr2.clone()]) {
            if let Ok(svg) = plot::plot_grid_star(g.points(), central, &decagon, &style) {
                fs::write(dir.join("grid_star.svg"), svg)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_passes_at_small_radius() {
        let cfg = DemoConfig {
            radius: BigRational::new(BigInt::from(3), BigInt::from(2)),
            ..DemoConfig::default()
        };
        let report = run_demo(&cfg);
        assert_eq!(report.exit_code, 0, "report:\n{}", report.to_text());
        assert_eq!(report.get("status"), Some("ok"));
        assert_eq!(report.get("xray_match"), Some("true"));
    }

    #[test]
    fn corrupted_totals_exit_two_at_reconstruct() {
        let cfg = DemoConfig {
            radius: BigRational::new(BigInt::from(3), BigInt::from(2)),
            corrupt_xray: true,
            ..DemoConfig::default()
        };
        let report = run_demo(&cfg);
        assert_eq!(report.exit_code, 2, "report:\n{}", report.to_text());
        assert_eq!(report.get("failed_stage"), Some("reconstruct"));
        assert_eq!(
            report.get("infeasible_reason"),
            Some("marginal sums differ")
        );
    }

    #[test]
    fn zero_radius_demo_is_trivially_ok() {
        let cfg = DemoConfig {
            radius: BigRational::zero(),
            ..DemoConfig::default()
        };
        let report = run_demo(&cfg);
        assert_eq!(report.exit_code, 0, "report:\n{}", report.to_text());
    }

    #[test]
    fn parallel_generation_matches_sequential() {
        let spec = PatchSpec {
            window: example_window(),
            region: Region::ball(
                Point3::zero(),
                BigRational::new(BigInt::from(2), BigInt::from(1)),
            ),
            translate: Point3::zero(),
        };
        let seq = icotomo_core::modelset::generate(&spec).unwrap();
        for threads in [1, 2, 3, 7] {
            let par = generate_parallel(&spec, threads).unwrap();
            assert_eq!(par, seq.points(), "threads={threads}");
        }
    }
}
