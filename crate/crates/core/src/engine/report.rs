use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra3::{IsotopyClass, TwistedFieldSpec};
use crate::gf::{Field, Gf};
use crate::linalg::SubspaceRecord;
use crate::split_albert::SplitAlbertSpec;

use super::census::{CensusCounts, LineBucket, Profile};
use super::{intersection, VectorKind};
use crate::algebra3::Algebra3;

/// Everything needed to rebuild the algebra a report talks about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraHeader {
    pub q: u64,
    /// Defining polynomial of `GF(q)` over the prime field, in `u`.
    pub base_modulus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic_modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<IsotopyClass>,
    /// `d_0, d_1, d_2`; elements of `K` for a split twisted field.
    pub d: [String; 3],
    pub d_product: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative_tensor: Option<bool>,
}

/// Defining polynomial of `GF(q)` over the prime field, e.g. `u^2+u+1`.
pub fn modulus_string(f: &Gf) -> String {
    let spec = f.spec();
    let mut terms = Vec::new();
    for (k, &c) in spec.modulus_coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}u"),
            _ => format!("{coef}u^{k}"),
        });
    }
    terms.join("+")
}

impl AlgebraHeader {
    pub fn twisted(spec: &TwistedFieldSpec) -> Self {
        let tw = spec.tower();
        let f = spec.field();
        let c = spec.c();
        let d = [0, 1, 2].map(|i| tw.neg(tw.frobenius_pow(c, i)));
        let prod = tw.mul(tw.mul(d[0], d[1]), d[2]);
        AlgebraHeader {
            q: f.q() as u64,
            base_modulus: modulus_string(f),
            cubic_modulus: Some(tw.cubic_string()),
            c: Some(tw.format(c)),
            norm_c: Some(f.format(spec.norm_c())),
            class: Some(spec.isotopy_class()),
            d: d.map(|x| tw.format(x)),
            d_product: tw.format(prod),
            commutative_tensor: Some(spec.to_structure_constants().is_commutative()),
        }
    }

    pub fn split(spec: &SplitAlbertSpec<Gf>) -> Self {
        let f = &**spec.field();
        AlgebraHeader {
            q: f.q() as u64,
            base_modulus: modulus_string(f),
            cubic_modulus: None,
            c: None,
            norm_c: None,
            class: None,
            d: spec.d().map(|x| f.format(x)),
            d_product: f.format(spec.d_product()),
            commutative_tensor: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusParameters {
    pub algebra: AlgebraHeader,
    pub v: String,
    pub v_kind: VectorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub v_prime: String,
    pub dim: usize,
    pub intersection: SubspaceRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub parameters: CensusParameters,
    pub observed: CensusCounts,
    pub predicted: Option<CensusCounts>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub runtime_ms: u64,
}

impl CensusReport {
    pub fn new(header: AlgebraHeader, alg: &Algebra3, profile: &Profile, predicted: Option<CensusCounts>, runtime_ms: u64) -> Self {
        let f = &**alg.field();
        let witnesses = profile
            .first_dim2
            .iter()
            .map(|w| Witness {
                v_prime: w.format(f),
                dim: 2,
                intersection: SubspaceRecord::from_subspace(f, &intersection(alg, &profile.v, w)),
            })
            .collect();
        let matches = predicted.as_ref().map(|p| *p == profile.counts);
        CensusReport {
            parameters: CensusParameters { algebra: header, v: profile.v.format(f), v_kind: profile.kind },
            observed: profile.counts.clone(),
            predicted,
            matches,
            witnesses,
            runtime_ms,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,observed_vectors,predicted_vectors,observed_spaces,predicted_spaces,match\n");
        let predicted = self.predicted.as_ref().map(|p| p.rows());
        for (n, (label, obs)) in self.observed.rows().iter().enumerate() {
            let (pv, ps, m) = match &predicted {
                Some(rows) => {
                    let p = rows[n].1;
                    (p.vectors.to_string(), p.spaces.to_string(), (p == *obs).to_string())
                }
                None => (String::new(), String::new(), String::new()),
            };
            let _ = writeln!(out, "{label},{},{pv},{},{ps},{m}", obs.vectors, obs.spaces);
        }
        let pc = self.predicted.as_ref().map(|p| p.complementary_spaces);
        let _ = writeln!(
            out,
            "complementary,,,{},{},{}",
            self.observed.complementary_spaces,
            pc.map(|x| x.to_string()).unwrap_or_default(),
            pc.map(|x| (x == self.observed.complementary_spaces).to_string()).unwrap_or_default()
        );
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let a = &self.parameters.algebra;
        let _ = writeln!(out, "q = {}  modulus {}  cubic {}", a.q, a.base_modulus, a.cubic_modulus.as_deref().unwrap_or("-"));
        if let (Some(c), Some(n)) = (&a.c, &a.norm_c) {
            let class = a.class.map(|k| format!("{k:?}")).unwrap_or_default();
            let _ = writeln!(out, "c = {c}  N(c) = {n}  class {class}");
        }
        let _ = writeln!(out, "d = ({}, {}, {})", a.d[0], a.d[1], a.d[2]);
        let _ = writeln!(out, "v = {} ({:?})", self.parameters.v, self.parameters.v_kind);
        let _ = writeln!(out, "{:<16} {:>10} {:>10} {:>10} {:>10}", "dim", "vectors", "predicted", "spaces", "predicted");
        let predicted = self.predicted.as_ref().map(|p| p.rows());
        for (n, (label, obs)) in self.observed.rows().iter().enumerate() {
            let (pv, ps) = predicted
                .as_ref()
                .map(|r| (r[n].1.vectors.to_string(), r[n].1.spaces.to_string()))
                .unwrap_or_default();
            let _ = writeln!(out, "{label:<16} {:>10} {pv:>10} {:>10} {ps:>10}", obs.vectors, obs.spaces);
        }
        let _ = writeln!(out, "complementary spaces: {}", self.observed.complementary_spaces);
        if let Some(h) = &self.observed.line_histogram {
            for LineBucket { count, lines } in h {
                let _ = writeln!(out, "{lines} lines with count {count}");
            }
        }
        if let Some(m) = self.matches {
            let _ = writeln!(out, "match: {m}");
        }
        out
    }
}

/// Outcome of a verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub q: u64,
    pub parameters: Option<AlgebraHeader>,
    pub mode: String,
    pub passed: bool,
    /// Evidence only, never a proof of the statement it mirrors.
    pub heuristic: bool,
    pub checked: u64,
    pub summary: String,
    pub stats: BTreeMap<String, u64>,
    pub counterexample: Option<String>,
    pub witnesses: Vec<String>,
    pub runtime_ms: u64,
}

impl Verdict {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{} [{}] {status}: {}", self.check, self.mode, self.summary);
        let _ = writeln!(out, "checked {}", self.checked);
        for (k, v) in &self.stats {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(out, "counterexample: {c}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness: {w}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,mode,passed,checked,key,value\n");
        for (k, v) in &self.stats {
            let _ = writeln!(out, "{},{},{},{},{k},{v}", self.check, self.mode, self.passed, self.checked);
        }
        if self.stats.is_empty() {
            let _ = writeln!(out, "{},{},{},{},,", self.check, self.mode, self.passed, self.checked);
        }
        out
    }
}
