//! Runs the binary on every corpus input and compares stdout byte-for-byte
//! with the recorded report. Set `TTFKIT_BLESS=1` to rewrite the records.

use std::path::{Path, PathBuf};
use std::process::Command;

/// (record name, expected exit code, arguments)
const CASES: &[(&str, i32, &[&str])] = &[
    (
        "ttf_heisenberg",
        1,
        &["ttf", "check", "heisenberg.grp", "--max-index", "2"],
    ),
    (
        "ttf_klein",
        1,
        &["ttf", "check", "klein.grp", "--max-index", "2"],
    ),
    (
        "ttf_semidirect_all",
        1,
        &[
            "ttf",
            "check",
            "semidirect.grp",
            "--max-index",
            "2",
            "--all-witnesses",
        ],
    ),
    (
        "ttf_nonorientable3",
        1,
        &[
            "ttf",
            "check",
            "builtin:nonorientable(3)",
            "--max-index",
            "2",
        ],
    ),
    (
        "ttf_rotation",
        1,
        &["ttf", "check", "rotation.grp", "--max-index", "4"],
    ),
    (
        "ttf_free2",
        0,
        &["ttf", "check", "builtin:free(2)", "--max-index", "3"],
    ),
    (
        "ttf_free_abelian3",
        0,
        &[
            "ttf",
            "check",
            "builtin:free_abelian(3)",
            "--max-index",
            "3",
        ],
    ),
    (
        "ttf_surface2",
        0,
        &["ttf", "check", "builtin:surface(2)", "--max-index", "2"],
    ),
    (
        "ttf_free_product",
        0,
        &[
            "ttf",
            "check",
            "builtin:free(1)",
            "builtin:surface(1)",
            "--max-index",
            "2",
        ],
    ),
    (
        "ttf_budget",
        3,
        &[
            "ttf",
            "check",
            "builtin:surface(2)",
            "--max-index",
            "3",
            "--budget",
            "10",
        ],
    ),
    (
        "subgroup_heisenberg",
        1,
        &[
            "ttf",
            "subgroup",
            "heisenberg.grp",
            "--gen",
            "x x",
            "--gen",
            "y",
            "--gen",
            "z",
        ],
    ),
    (
        "subgroup_semidirect",
        0,
        &[
            "ttf",
            "subgroup",
            "semidirect.grp",
            "--gen",
            "t t",
            "--gen",
            "a",
        ],
    ),
    ("ab_heisenberg", 0, &["ab", "invariants", "heisenberg.grp"]),
    ("ab_snf", 0, &["ab", "snf", "--rows", "2 4 ; 6 8"]),
    ("ab_dual", 0, &["ab", "dual", "--moduli", "4", "6"]),
    (
        "ab_profinite",
        0,
        &[
            "ab",
            "profinite",
            "--local",
            "2:1",
            "--local",
            "3:2",
            "--finite",
            "4",
        ],
    ),
    ("virtab_show", 0, &["virtab", "show", "klein_bottle.vab"]),
    (
        "virtab_klein_bottle",
        0,
        &["virtab", "torsion", "klein_bottle.vab"],
    ),
    (
        "virtab_dihedral",
        1,
        &["virtab", "torsion", "infinite_dihedral.vab"],
    ),
    (
        "virtab_hantzsche_wendt",
        0,
        &["virtab", "torsion", "hantzsche_wendt.vab"],
    ),
    (
        "embed_sigma_hantzsche_wendt",
        0,
        &["embed", "sigma", "hantzsche_wendt.vab"],
    ),
    (
        "virtab_order",
        0,
        &[
            "virtab",
            "order",
            "klein_bottle.vab",
            "--element",
            "flip | 3 1",
        ],
    ),
    ("embed_kk", 0, &["embed", "kk", "infinite_dihedral.vab"]),
    (
        "embed_kk_right",
        0,
        &[
            "embed",
            "kk",
            "klein_bottle.vab",
            "--convention",
            "right-inverse",
        ],
    ),
    ("embed_sigma", 0, &["embed", "sigma", "klein_bottle.vab"]),
    (
        "approx_check",
        1,
        &["approx", "check", "s1.as", "--p", "2", "--g", "flip"],
    ),
    (
        "approx_build",
        0,
        &[
            "approx",
            "build",
            "--systems",
            "s1.as",
            "s2.as",
            "--pairs",
            "2:flip",
        ],
    ),
    (
        "approx_uncovered",
        1,
        &["approx", "build", "--systems", "s1.as", "--pairs", "2:flip"],
    ),
    (
        "witt_coker",
        0,
        &["witt", "coker", "--p", "2", "--deg", "1", "--n", "2"],
    ),
    (
        "witt_ftilde",
        0,
        &["witt", "check-ftilde", "--p", "3", "--n", "2"],
    ),
    (
        "witt_div",
        0,
        &["witt", "check-div", "--p", "2", "--deg", "2", "--n", "2"],
    ),
    ("witt_polys", 0, &["witt", "polys", "--p", "2", "--n", "2"]),
    ("witt_guard", 3, &["witt", "coker", "--p", "2", "--n", "9"]),
    (
        "galois_alpha",
        0,
        &[
            "galois",
            "check",
            "--q",
            "5",
            "--n",
            "1",
            "--s",
            "4",
            "--subgroup",
            "alpha.sub",
        ],
    ),
    (
        "galois_swap",
        1,
        &[
            "galois",
            "check",
            "--q",
            "5",
            "--n",
            "2",
            "--s",
            "4",
            "--subgroup",
            "swap.sub",
        ],
    ),
    (
        "galois_inertia",
        1,
        &[
            "galois",
            "inertia",
            "--q",
            "5",
            "--n",
            "2",
            "--s",
            "4",
            "--subgroup",
            "swap.sub",
            "--point",
            "2",
            "2",
        ],
    ),
    (
        "galois_basis",
        0,
        &["galois", "basis", "--q", "5", "--n", "1", "--s", "2"],
    ),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ttfkit"))
        .args(args)
        .current_dir(golden_dir().join("inputs"))
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn corpus_matches_records() {
    let bless = std::env::var_os("TTFKIT_BLESS").is_some();
    let mut failures = Vec::new();
    for &(name, code, args) in CASES {
        let (got_code, stdout, stderr) = run(args);
        if got_code != code {
            failures.push(format!(
                "{name}: exit {got_code}, expected {code}\n{stderr}"
            ));
            continue;
        }
        let record = golden_dir().join(format!("{name}.out"));
        if bless {
            std::fs::write(&record, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&record)
            .unwrap_or_else(|_| panic!("missing record {}", record.display()));
        if stdout != expected {
            failures.push(format!(
                "{name}: report differs\n--- expected\n{expected}--- got\n{stdout}"
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reports_are_deterministic() {
    for &(_, _, args) in CASES {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        &["ttf", "check"][..],
        &["nonsense"],
        &["ttf", "check", "missing.grp", "--max-index", "2"],
        &["ttf", "check", "builtin:nope", "--max-index", "2"],
        &["ab", "snf", "--rows", "1 2 ; 3"],
        &[
            "virtab",
            "order",
            "klein_bottle.vab",
            "--element",
            "flip | 1",
        ],
        &[
            "galois",
            "check",
            "--q",
            "5",
            "--n",
            "1",
            "--s",
            "3",
            "--subgroup",
            "alpha.sub",
        ],
        &["witt", "coker", "--p", "4", "--n", "1"],
    ] {
        let (code, stdout, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(!stderr.trim().is_empty(), "{args:?}");
    }
}

#[test]
fn version_is_reported() {
    let (code, stdout, _) = run(&["witt", "coker", "--p", "3", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(&format!("version: {}\n", env!("CARGO_PKG_VERSION"))));
    assert!(stdout.starts_with("command: witt coker --p 3 --n 1\n"));
}
