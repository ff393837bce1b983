use std::process::{Command, Output};

use albert::engine::{CensusReport, Verdict};
use serde_json::Value;

fn albert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_albert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// The JSON report with `runtime_ms` removed everywhere.
fn without_runtime(text: &str) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("runtime_ms");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: Value = serde_json::from_str(text).unwrap();
    strip(&mut v);
    v
}

#[test]
fn census_at_three_has_24_dim2_vectors() {
    let o = albert(&["census", "--q", "3", "--norm-target", "-1", "--v", "[1,0,0],[0,1,0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: CensusReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.observed.dim2.vectors, 24);
    assert_eq!(report.matches, Some(true));
    assert_eq!(report.parameters.algebra.cubic_modulus.as_deref(), Some("t^3+2t+1"));
    assert_eq!(report.parameters.algebra.c.as_deref(), Some("[2,0,0]"));
}

#[test]
fn theorem_b_over_gf4() {
    let o = albert(&["verify", "--theorem", "B", "--q", "4", "--norm-target", "u"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Verdict = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.passed);
    assert_eq!(v.summary, "no 2-dim intersections");
}

#[test]
fn gf2_is_rejected_with_the_norm_explanation() {
    let o = albert(&["build", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("norm"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["census", "--q", "3", "--v", "[1,0],[0,1,0]"],
        &["census", "--q", "3", "--v", "[0,0,0],[0,0,0]"],
        &["build", "--q", "6"],
        &["build", "--q", "11"],
        &["build", "--q", "3", "--c", "[1,0,0]"],
        &["build", "--q", "3", "--c", "[x,0,0]"],
        &["build", "--q", "4", "--norm-target", "1"],
        &["verify", "--theorem", "3.1", "--q", "5", "--d", "2,3,4"],
        &["verify", "--theorem", "3.1", "--q", "5", "--norm-target", "2"],
        &["line-census", "--q", "3", "--v", "[1,0,0],[2,0,0]"],
        &["census", "--q", "3"],
        &["verify", "--theorem", "C", "--q", "3"],
        &["field-info", "--q", "3", "--workers", "0"],
    ];
    for args in cases {
        let o = albert(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn a_counterexample_exits_1() {
    let o = albert(&["verify", "--theorem", "B", "--q", "3", "--c", "2", "--claim-class", "noncommutative"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let v: Verdict = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v.passed);
    assert!(v.counterexample.unwrap().starts_with("v = "));
    let o = albert(&["verify", "--theorem", "B", "--q", "3", "--c", "2", "--claim-class", "commutative"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let base = ["census", "--q", "4", "--norm-target", "u+1", "--v", "[1,u,0],[0,1,1]"];
    let one = albert(&[&base[..], &["--workers", "1"]].concat());
    let three = albert(&[&base[..], &["--workers", "3"]].concat());
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(without_runtime(&stdout(&one)), without_runtime(&stdout(&three)));

    let sampled = ["verify", "--theorem", "A", "--q", "5", "--norm-target", "2", "--samples", "300", "--seed", "9"];
    let a = albert(&[&sampled[..], &["--workers", "1"]].concat());
    let b = albert(&[&sampled[..], &["--workers", "2"]].concat());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(without_runtime(&stdout(&a)), without_runtime(&stdout(&b)));
}

#[test]
fn reports_round_trip() {
    let o = albert(&["verify", "--theorem", "3.1", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let v: Verdict = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&v).unwrap(), serde_json::from_str::<Value>(&text).unwrap());

    let o = albert(&["census", "--q", "4", "--v", "[1,0,0],[0,0,0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let r: CensusReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.observed.complementary_spaces, 16 * (64 + 16 - 1));
    assert_eq!(serde_json::to_value(&r).unwrap(), serde_json::from_str::<Value>(&text).unwrap());
}

#[test]
fn build_and_split_headers_echo_the_algebra() {
    let o = albert(&["build", "--q", "5", "--norm-target", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra"]["norm_c"], "2");
    assert_eq!(v["division"], true);
    assert_eq!(v["commutative"], false);
    assert_eq!(v["structure_constants"]["tensor"].as_array().unwrap().len(), 27);

    let o = albert(&["split", "--q", "3", "--c", "[1,1,0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked"], 27 * 27);
    assert_eq!(v["algebra"]["d"].as_array().unwrap().len(), 3);
}

#[test]
fn scan_all_covers_every_nonzero_vector() {
    let o = albert(&["census", "--q", "3", "--scan-all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vectors_covered"], 728);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 13 + 13);
}

#[test]
fn line_census_histogram_matches() {
    let o = albert(&["line-census", "--q", "4", "--norm-target", "u", "--v", "[1,0,0],[0,1,0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["lines"].as_array().unwrap().len(), 21);
    assert_eq!(v["histogram"][0]["count"], 60);
}

#[test]
fn field_info_lists_norm_fibers() {
    let o = albert(&["field-info", "--q", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cubic_modulus"], "t^3+2t+1");
    let classes = v["norm_classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0]["count"], 13);
    assert_eq!(classes[0]["class"], Value::Null);
    assert_eq!(classes[1]["class"], "CommutativeIsotopic");
}

#[test]
fn csv_and_table_formats() {
    let o = albert(&["census", "--q", "3", "--norm-target", "-1", "--v", "[1,0,0],[0,1,0]", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("dim,observed_vectors,predicted_vectors,observed_spaces,predicted_spaces,match\n"));
    assert!(text.contains("\n2,24,24,12,12,true\n"));
    let o = albert(&["verify", "--theorem", "7.1", "--q", "2", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS"));
}
