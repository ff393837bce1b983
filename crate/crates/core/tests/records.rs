//! Serialized forms re-parse into the structures that produced them.

mod common;

use albert::algebra3::{Algebra3Record, TwistedFieldRecord};
use albert::engine::{
    per_vector_profile, predicted_counts, predicted_line_histogram, verify_theorem_a, AlgebraHeader, AvAtlas, CensusReport, SweepMode, Verdict,
};
use albert::linalg::SubspaceRecord;
use albert::par::Exec;
use albert::split_albert::SplitAlbertRecord;
use serde::de::DeserializeOwned;
use serde::Serialize;

use common::{commutative, field, pv, split, with_norm};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) -> T {
    let text = serde_json::to_string_pretty(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value);
    back
}

#[test]
fn census_report_round_trip() {
    let spec = commutative(3);
    let alg = spec.to_structure_constants();
    let exec = Exec::sequential();
    let atlas = AvAtlas::build(&alg, &exec);
    let v = pv(alg.field(), "[1,0,0],[0,1,0]");
    let profile = per_vector_profile(&alg, &atlas, &v, &exec, true).unwrap();
    let mut predicted = predicted_counts(3, spec.isotopy_class(), profile.kind).unwrap();
    predicted.line_histogram = Some(predicted_line_histogram(3, spec.isotopy_class()));
    let predicted = Some(predicted);
    let report = CensusReport::new(AlgebraHeader::twisted(&spec), &alg, &profile, predicted, 5);
    let back = round_trip(&report);
    assert_eq!(back.observed.dim2.vectors, 24);
    assert_eq!(back.witnesses.len(), 1);
    assert_eq!(back.witnesses[0].intersection.to_subspace(&**alg.field()).unwrap().dim(), 2);

    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    for key in ["parameters", "observed", "predicted", "match", "witnesses", "runtime_ms"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["match"], serde_json::Value::Bool(true));
    assert_eq!(json["observed"]["line_histogram"][1]["count"], 18);
}

#[test]
fn csv_has_one_row_per_dimension_class() {
    let spec = commutative(3);
    let alg = spec.to_structure_constants();
    let exec = Exec::sequential();
    let atlas = AvAtlas::build(&alg, &exec);
    let v = pv(alg.field(), "[1,0,0],[0,1,0]");
    let profile = per_vector_profile(&alg, &atlas, &v, &exec, false).unwrap();
    let predicted = predicted_counts(3, spec.isotopy_class(), profile.kind);
    let report = CensusReport::new(AlgebraHeader::twisted(&spec), &alg, &profile, predicted, 0);
    let csv = report.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "dim,observed_vectors,predicted_vectors,observed_spaces,predicted_spaces,match");
    assert_eq!(lines[1], "3,2,2,1,1,true");
    assert_eq!(lines[2], "2,24,24,12,12,true");
    assert_eq!(lines.len(), 8);
    assert_eq!(report.matches, Some(true));
}

#[test]
fn verdict_round_trip() {
    let spec = with_norm(4, field(4).fe(3)).remove(0);
    let alg = spec.to_structure_constants();
    let atlas = AvAtlas::build(&alg, &Exec::sequential());
    let v = verify_theorem_a(&alg, AlgebraHeader::twisted(&spec), &atlas, SweepMode::Sampled { samples: 50, seed: 3 });
    assert!(v.passed);
    let back: Verdict = round_trip(&v);
    assert_eq!(back.parameters.unwrap().norm_c.as_deref(), Some("u+1"));
}

#[test]
fn algebra_records_rebuild_the_algebra() {
    let spec = with_norm(5, field(5).fe(3)).remove(0);
    let rec: TwistedFieldRecord = round_trip(&spec.record());
    let rebuilt = rec.to_spec(field(5)).unwrap();
    assert_eq!(rebuilt.c(), spec.c());
    assert_eq!(rebuilt.to_structure_constants(), spec.to_structure_constants());

    let alg = spec.to_structure_constants();
    let arec: Algebra3Record = round_trip(&alg.record());
    assert_eq!(arec.to_algebra(field(5)).unwrap(), alg);

    let s = split(7, [2, 3, 5]);
    let srec: SplitAlbertRecord = round_trip(&s.record());
    assert_eq!(srec.to_spec(field(7)).unwrap(), s);
    assert!(srec.to_spec(field(5)).is_err());
}

#[test]
fn subspace_record_round_trip() {
    let alg = commutative(5).to_structure_constants();
    let f = alg.field().clone();
    let v = pv(&f, "[1,2,0],[0,1,4]");
    let s = albert::engine::av_subspace(&alg, &v);
    let rec: SubspaceRecord = round_trip(&SubspaceRecord::from_subspace(&*f, &s));
    assert_eq!(rec.to_subspace(&*f).unwrap(), s);
}
