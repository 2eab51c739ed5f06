use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use surgeon_cli::files::DiagramFile;
use surgeon_core::{CompanionKnot, ContactCoefficient, LegendrianComponent, Sign, SurgeryDiagram, TransverseSign};

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(rel)
}

fn surgeon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surgeon")).args(args).env("SURGEON_COLOR", "0").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let ok = surgeon(&["check", corpus("diagrams/trefoil_expansion_rot_zero.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("ok: 2 components"));

    let general = surgeon(&["check", corpus("diagrams/invalid_general_coefficient.json").to_str().unwrap()]);
    assert_eq!(general.status.code(), Some(1));
    let msg = stderr(&general);
    assert!(msg.contains(":7:7:") && msg.contains("expanded into a (±1/m)-diagram"), "{msg}");

    let asym = surgeon(&["check", corpus("diagrams/invalid_asymmetric_linking.json").to_str().unwrap()]);
    assert_eq!(asym.status.code(), Some(1));
    assert!(stderr(&asym).contains("not symmetric"));

    let missing = surgeon(&["check", "/nonexistent/diagram.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn invariants_for_a_named_knot() {
    let o = surgeon(&[
        "--format",
        "json",
        "invariants",
        "--knot",
        "T0",
        corpus("diagrams/overtwisted_transverse_positive.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sl"], "1");
    assert_eq!(v["order"], "1");

    let unknown = surgeon(&["invariants", "--knot", "nope", corpus("diagrams/unknot_plus_1.json").to_str().unwrap()]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).contains("no knot named \"nope\""));
}

#[test]
fn d3_undefined_for_non_torsion() {
    let o = surgeon(&["--format", "json", "d3", corpus("diagrams/non_torsion.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d3"], "undefined");
    assert_eq!(v["torsion"], false);
}

#[test]
fn expand_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("expanded.json");
    let o = surgeon(&["expand", corpus("diagrams/unknot_plus_1_2.json").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let d = DiagramFile::parse(&std::fs::read_to_string(&out).unwrap()).unwrap().to_diagram(None).unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d.linking, vec![vec![0, -1], vec![-1, 0]]);
    assert_eq!(d.knots[0].lk, vec![1, 1]);
    assert_eq!(surgeon(&["check", out.to_str().unwrap()]).status.code(), Some(0));

    let three = surgeon(&["expand", corpus("diagrams/unknot_plus_1_3.json").to_str().unwrap()]);
    let d = DiagramFile::parse(&stdout(&three)).unwrap().to_diagram(None).unwrap();
    assert_eq!(d.len(), 3);

    // (±1) diagrams expand to themselves
    let src = corpus("diagrams/stabilization_plus.json");
    let same = surgeon(&["expand", src.to_str().unwrap()]);
    let original = DiagramFile::parse(&std::fs::read_to_string(&src).unwrap()).unwrap();
    assert_eq!(DiagramFile::parse(&stdout(&same)).unwrap(), original);
}

#[test]
fn front_reports_and_errors() {
    let o = surgeon(&["front", corpus("fronts/trefoil.front").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let cols: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(cols, ["1", "T", "surgery", "3", "4", "1", "0"]);

    let bad = surgeon(&["front", corpus("fronts/malformed.front").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("malformed.front:1:12: validity error"), "{}", stderr(&bad));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let no_roles = surgeon(&["front", corpus("fronts/unknot.front").to_str().unwrap(), "--emit-diagram", out.to_str().unwrap()]);
    assert_eq!(no_roles.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn color_is_controlled_by_environment() {
    let path = corpus("diagrams/invalid_asymmetric_linking.json");
    let colored = Command::new(env!("CARGO_BIN_EXE_surgeon"))
        .args(["check", path.to_str().unwrap()])
        .env("SURGEON_COLOR", "1")
        .output()
        .unwrap();
    assert!(stderr(&colored).contains("\x1b["));
    assert!(!stderr(&surgeon(&["check", path.to_str().unwrap()])).contains("\x1b["));
}

#[test]
fn usage_errors_exit_nonzero() {
    let o = surgeon(&["bogus"]);
    assert_ne!(o.status.code(), Some(0));
}

fn arb_diagram() -> impl Strategy<Value = SurgeryDiagram> {
    (1..=3usize)
        .prop_flat_map(|k| {
            (
                prop::collection::vec((-4i64..=4, -3i64..=3, any::<bool>(), 1u64..=5), k),
                prop::collection::vec(-3i64..=3, k * k),
                prop::collection::vec((any::<bool>(), -5i64..=5, any::<bool>(), prop::collection::vec(-3i64..=3, k)), 0..3),
            )
        })
        .prop_map(|(comps, link, knots)| {
            let k = comps.len();
            let components = comps
                .into_iter()
                .enumerate()
                .map(|(i, (tb, rot, plus, m))| {
                    let sign = if plus { Sign::Plus } else { Sign::Minus };
                    LegendrianComponent::new(format!("L{i}"), tb, rot, ContactCoefficient::new(sign, m).unwrap())
                })
                .collect();
            let mut linking = vec![vec![0; k]; k];
            for i in 0..k {
                for j in 0..i {
                    linking[i][j] = link[i * k + j];
                    linking[j][i] = link[i * k + j];
                }
            }
            let knots = knots
                .into_iter()
                .enumerate()
                .map(|(i, (leg, x, pos, lk))| {
                    if leg {
                        CompanionKnot::legendrian(format!("K{i}"), x, x + 1, lk)
                    } else {
                        let sign = if pos { TransverseSign::Positive } else { TransverseSign::Negative };
                        CompanionKnot::transverse(format!("K{i}"), x, sign, lk)
                    }
                })
                .collect();
            SurgeryDiagram::new(components, linking, knots)
        })
}

proptest! {
    #[test]
    fn diagram_files_round_trip(d in arb_diagram()) {
        let text = DiagramFile::from_diagram(&d).render();
        let back = DiagramFile::parse(&text).unwrap().to_diagram(Some(&text)).unwrap();
        prop_assert_eq!(back, d);
    }
}
