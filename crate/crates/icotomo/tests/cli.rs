//! End-to-end checks of the command-line interface: flows between
//! subcommands through real files, and the documented exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icotomo"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("icotomo-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn demo_round_trip_exits_zero() {
    let dir = tempdir("demo");
    let out = bin()
        .args(["demo", "--radius", "3/2", "--out-dir", "artifacts"])
        .env("ICOTOMO_THREADS", "2")
        .current_dir(&dir)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("status=ok"), "{text}");
    assert!(text.contains("xray_match=true"), "{text}");
    assert!(dir.join("artifacts/points.l").exists());
    assert!(dir.join("artifacts/sol.l").exists());
    assert!(dir.join("artifacts/slice_star.svg").exists());
}

#[test]
fn corrupted_demo_exits_two_at_reconstruct() {
    let dir = tempdir("corrupt");
    let out = run_in(&dir, &["demo", "--radius", "3/2", "--corrupt-xray"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("failed_stage=reconstruct"), "{text}");
}

#[test]
fn zero_radius_demo_is_empty_but_ok() {
    let dir = tempdir("zero");
    let out = run_in(&dir, &["demo", "--radius", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(
        text.contains("patch_size=1") || text.contains("patch_size=0"),
        "{text}"
    );
    assert!(text.contains("status=ok"), "{text}");
}

#[test]
fn generate_slice_xray_reconstruct_pipeline() {
    let dir = tempdir("pipeline");
    let out = run_in(
        &dir,
        &[
            "generate",
            "--window",
            "icosahedron",
            "--shift",
            "1/1000,1/1000,1/1000",
            "--radius",
            "3/2",
            "--out",
            "patch.l",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run_in(&dir, &["slice", "patch.l", "--out-dir", "slices"]);
    assert_eq!(out.status.code(), Some(0));
    // locate the central slice (height 0/1) from the report
    let report = stdout(&out);
    let central = report
        .lines()
        .find(|l| l.contains("height=0/1"))
        .and_then(|l| l.split_whitespace().next())
        .expect("central slice listed");

    let slice_path = format!("slices/{central}");
    let out = run_in(
        &dir,
        &[
            "xray",
            "--points",
            &slice_path,
            "--dir",
            "0,-1,-2,2,1,-1",
            "--out",
            "a.xr",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run_in(
        &dir,
        &[
            "xray",
            "--points",
            &slice_path,
            "--dir",
            "-1,0,2,-1,-1,1",
            "--out",
            "b.xr",
        ],
    );
    assert_eq!(out.status.code(), Some(0));

    let out = run_in(
        &dir,
        &["grid", "--xray", "a.xr", "--xray", "b.xr", "--out", "g.txt"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("grid_size="));

    let out = run_in(
        &dir,
        &[
            "reconstruct",
            "--xray",
            "a.xr",
            "--xray",
            "b.xr",
            "--window",
            "icosahedron",
            "--shift",
            "1/1000,1/1000,1/1000",
            "--out",
            "sol.l",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("feasible=true"));
    assert!(dir.join("sol.l").exists());

    // reconstructing against a far-away window translate is infeasible
    let out = run_in(
        &dir,
        &[
            "reconstruct",
            "--xray",
            "a.xr",
            "--xray",
            "b.xr",
            "--window",
            "icosahedron",
            "--shift",
            "100/1,0/1,0/1",
            "--out",
            "sol2.l",
        ],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("feasible=false"));

    // enumerating all solutions writes numbered files
    let out = run_in(
        &dir,
        &[
            "reconstruct",
            "--xray",
            "a.xr",
            "--xray",
            "b.xr",
            "--window",
            "icosahedron",
            "--shift",
            "1/1000,1/1000,1/1000",
            "--all",
            "5",
            "--out",
            "many.l",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("solutions="));
    assert!(dir.join("many.001.l").exists());

    // the margin check accepts polygons strictly inside the stated region
    let out = run_in(
        &dir,
        &[
            "upolygon",
            "--slice",
            &slice_path,
            "--dirs",
            &fixture("dirs_inplane3.txt"),
            "--max-vertices",
            "4",
            "--region-radius",
            "3/2",
        ],
    );
    // no quadrilateral exists for three directions: found=false, exit 2
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));

    // plots are byte-identical across runs
    for name in ["p1.svg", "p2.svg"] {
        let out = run_in(
            &dir,
            &[
                "plot",
                "--what",
                "slice-physical",
                "--slice",
                &slice_path,
                "--out",
                name,
            ],
        );
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    assert_eq!(
        fs::read(dir.join("p1.svg")).unwrap(),
        fs::read(dir.join("p2.svg")).unwrap()
    );
}

#[test]
fn malformed_literal_is_a_parse_error() {
    let dir = tempdir("badlit");
    fs::write(
        dir.join("bad.window"),
        "window 2d 1/1 0/1 0/1 0/1\n1/0+2t 0/1 0/1\n",
    )
    .unwrap();
    fs::write(
        dir.join("a.xr"),
        "xray direction 0 -1 -2 2 1 -1\nbase 0/1 0/1 0/1 count 1\n",
    )
    .unwrap();
    fs::write(
        dir.join("b.xr"),
        "xray direction -1 0 2 -1 -1 1\nbase 0/1 0/1 0/1 count 1\n",
    )
    .unwrap();
    let out = run_in(
        &dir,
        &[
            "reconstruct",
            "--xray",
            "a.xr",
            "--xray",
            "b.xr",
            "--window",
            "bad.window",
            "--out",
            "sol.l",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("zero denominator"), "{err}");
}

#[test]
fn upolygon_exit_codes() {
    let dir = tempdir("upoly");
    // a slice with only the origin admits no polygon
    fs::write(dir.join("tiny.sl"), "slice height 0/1\n0 0 0 0 0 0\n").unwrap();
    let out = run_in(
        &dir,
        &[
            "upolygon",
            "--slice",
            "tiny.sl",
            "--dirs",
            &fixture("dirs_inplane3.txt"),
            "--max-vertices",
            "6",
        ],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("found=false"));
}

#[test]
fn unknown_command_fails() {
    let dir = tempdir("unknown");
    let out = run_in(&dir, &["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
