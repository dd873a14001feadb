#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_thetatrop"))
}

/// Runs the binary from the fixtures directory.
pub fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).current_dir(fixtures_dir()).output().expect("binary runs")
}

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const H: &str = r#"{"boundary":[0,0,0],"extras":{"H":1}}"#;

pub const CASES: &[Case] = &[
    Case { name: "p2_build", args: &["trop", "build", "-i", "p2.json"], exit: 0 },
    Case { name: "p2_monodromy", args: &["trop", "monodromy", "-i", "p2.json"], exit: 0 },
    Case { name: "conic_monodromy", args: &["trop", "monodromy", "-i", "conic.json"], exit: 0 },
    Case { name: "triangle_monodromy", args: &["trop", "monodromy", "-i", "triangle.json"], exit: 0 },
    Case { name: "dp5_monodromy", args: &["trop", "monodromy", "-i", "dp5.json"], exit: 0 },
    Case { name: "a1_monodromy", args: &["trop", "monodromy", "-i", "a1.json"], exit: 0 },
    Case { name: "p2_linear", args: &["trop", "linear-functions", "-i", "p2.json"], exit: 0 },
    Case { name: "conic_linear", args: &["trop", "linear-functions", "-i", "conic.json"], exit: 0 },
    Case { name: "triangle_linear", args: &["trop", "linear-functions", "-i", "triangle.json"], exit: 0 },
    Case { name: "p2_points", args: &["trop", "points", "-i", "p2.json", "--bound", "2"], exit: 0 },
    Case { name: "cubic_points", args: &["trop", "points", "-i", "cubic.json", "--bound", "2"], exit: 0 },
    Case {
        name: "conic_transport",
        args: &["trop", "transport", "-i", "conic.json", "--chart", "1", "--vector", "[1,0]", "--steps", "-2"],
        exit: 0,
    },
    Case { name: "p2_synth", args: &["liouville", "synth", "-i", "p2.json"], exit: 0 },
    Case { name: "dp5_check", args: &["liouville", "check", "-i", "dp5.json"], exit: 0 },
    Case { name: "nonample_check", args: &["liouville", "check", "-i", "nonample.json"], exit: 1 },
    Case { name: "conic_lengths", args: &["liouville", "lengths", "-i", "conic.json", "--bound", "1"], exit: 0 },
    Case { name: "p2_filter", args: &["liouville", "filter", "-i", "p2.json", "--slope", "5/2"], exit: 0 },
    Case { name: "fig_validate", args: &["broken", "validate", "-i", "fig.json"], exit: 0 },
    Case { name: "fig_refined_validate", args: &["broken", "validate", "-i", "fig.json", "--diagram", "1"], exit: 0 },
    Case { name: "fig_perturbed_validate", args: &["broken", "validate", "-i", "fig.json", "--diagram", "2"], exit: 1 },
    Case { name: "fig_class", args: &["broken", "class", "-i", "fig.json"], exit: 0 },
    Case { name: "cylinder_class", args: &["broken", "class", "-i", "fig.json", "--diagram", "3"], exit: 0 },
    Case { name: "p2_pair", args: &["homology", "pair", "-i", "p2.json", "--class", H], exit: 0 },
    Case {
        name: "p2_certify",
        args: &[
            "homology",
            "certify",
            "-i",
            "p2.json",
            "--class",
            r#"{"boundary":[1,0,0],"extras":{"H":1}}"#,
            "--certificate",
            r#"{"summands":[{"divisor":1,"multiplicity":1},{"generator":{"boundary":[0,0,0],"extras":{"H":1}}}]}"#,
        ],
        exit: 0,
    },
    Case {
        name: "p2_certify_negative",
        args: &["homology", "certify", "-i", "p2.json", "--class", r#"{"boundary":[-1,0,0]}"#],
        exit: 1,
    },
    Case { name: "p2_degree", args: &["homology", "degree", "-i", "p2.json", "--class", H], exit: 0 },
    Case {
        name: "dp5_vertex_mul",
        args: &[
            "ring",
            "vertex-mul",
            "-i",
            "dp5.json",
            "--left",
            r#"{"terms":[{"point":{"chart":1,"coords":[1,0]},"coeff":"1"},{"point":{"chart":3,"coords":[1,0]},"coeff":"1"}]}"#,
            "--right",
            r#"{"terms":[{"point":{"chart":2,"coords":[1,0]},"coeff":"2"}]}"#,
        ],
        exit: 0,
    },
    Case { name: "local_xy", args: &["ring", "local-mul", "--left", "x", "--right", "y"], exit: 0 },
    Case {
        name: "local_mul",
        args: &["ring", "local-mul", "--left", "x^2 + 3/2*u^-1", "--right", "y^3*u - 1"],
        exit: 0,
    },
    Case { name: "local_normal_form", args: &["ring", "normal-form", "--expr", "x^3*y^2*u^-1 - 3/2"], exit: 0 },
    Case {
        name: "p2_monoid_mul",
        args: &[
            "ring",
            "monoid-mul",
            "-i",
            "p2.json",
            "--left",
            r#"{"terms":[{"class":{"boundary":[1,0,0]},"coeff":"1"},{"class":{"boundary":[0,0,0]},"coeff":"1"}]}"#,
            "--right",
            r#"{"terms":[{"class":{"boundary":[0,1,0]},"coeff":"1"},{"class":{"boundary":[0,0,0],"extras":{"H":1}},"certificate":{"summands":[{"generator":{"boundary":[0,0,0],"extras":{"H":1}}}]},"coeff":"-2"}]}"#,
            "--trunc",
            "5",
        ],
        exit: 0,
    },
    Case { name: "malformed_build", args: &["trop", "build", "-i", "malformed.json"], exit: 2 },
    Case { name: "on_spectrum_filter", args: &["liouville", "filter", "-i", "p2.json", "--slope", "2"], exit: 2 },
    Case { name: "missing_file", args: &["trop", "build", "-i", "no-such-file.json"], exit: 2 },
];

/// Renders compared byte for byte against `golden/<name>.svg`.
pub const RENDERS: &[(&str, &[&str])] = &[
    ("p2", &["broken", "render", "-i", "p2.json", "--bound", "2"]),
    ("conic", &["broken", "render", "-i", "conic.json", "--bound", "2"]),
    ("fig", &["broken", "render", "-i", "fig.json", "--bound", "2"]),
];

/// Compares every case with its golden file; returns the mismatches.
/// With `bless`, rewrites the golden files instead.
pub fn check_goldens(bless: bool) -> Vec<String> {
    let mut bad = Vec::new();
    for case in CASES {
        let out = run(case.args);
        let code = out.status.code().unwrap_or(-1);
        if code != case.exit {
            bad.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        let path = golden_dir().join(format!("{}.json", case.name));
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
        } else if std::fs::read(&path).ok().as_deref() != Some(&out.stdout[..]) {
            bad.push(format!("{}: stdout differs from {}", case.name, path.display()));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in RENDERS {
        let svg = dir.path().join(format!("{name}.svg"));
        let mut full: Vec<&str> = args.to_vec();
        let svg_arg = svg.to_str().unwrap();
        full.extend(["--out", svg_arg]);
        let out = run(&full);
        if !out.status.success() {
            bad.push(format!("render {name}: exit {:?}", out.status.code()));
            continue;
        }
        let bytes = std::fs::read(&svg).unwrap();
        let path = golden_dir().join(format!("{name}.svg"));
        if bless {
            std::fs::write(&path, &bytes).unwrap();
        } else if std::fs::read(&path).ok() != Some(bytes) {
            bad.push(format!("render {name}: differs from {}", path.display()));
        }
    }
    bad
}
