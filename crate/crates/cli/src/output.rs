//! Report types specific to the command line, and rendering of every report
//! as JSON, CSV or a plain table.

use std::fmt::Write as _;

use albert::algebra3::{Algebra3Record, IsotopyClass, TwistedFieldRecord};
use albert::engine::{AlgebraHeader, CensusCounts, CensusReport, LineBucket, VectorKind, Verdict};
use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormClass {
    pub norm: String,
    /// Number of `c` in `K^x` with this norm.
    pub count: u64,
    pub least_c: String,
    /// `None` when no twisted field exists for this norm.
    pub class: Option<IsotopyClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub q: u64,
    pub characteristic: u32,
    pub degree: u32,
    pub base_modulus: String,
    pub cubic_modulus: String,
    pub elements: Vec<String>,
    pub norm_classes: Vec<NormClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub algebra: AlgebraHeader,
    pub twisted_field: TwistedFieldRecord,
    pub structure_constants: Algebra3Record,
    pub commutative: bool,
    pub division: bool,
    pub runtime_ms: u64,
}

/// The `d_i` of a twisted field and the check of `nu(Ex, Ey) = E mu(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub algebra: AlgebraHeader,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub v: String,
    pub v_kind: VectorKind,
    /// Size of the `GL_2(F)` orbit of `v`; every member has the same census.
    pub orbit_size: u64,
    pub observed: CensusCounts,
    pub predicted: Option<CensusCounts>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub algebra: AlgebraHeader,
    pub entries: Vec<ScanEntry>,
    /// Sum of orbit sizes; `q^6 - 1` when every nonzero `v` is covered.
    pub vectors_covered: u64,
    pub all_match: bool,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRow {
    pub a: String,
    pub line: String,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_distinguished_plane: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCensusReport {
    pub algebra: AlgebraHeader,
    pub v: String,
    pub lines: Vec<LineRow>,
    pub histogram: Vec<LineBucket>,
    pub predicted_histogram: Vec<LineBucket>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Field(FieldInfo),
    Build(BuildReport),
    Split(SplitReport),
    Verdict(Verdict),
    Census(CensusReport),
    Scan(ScanReport),
    Lines(LineCensusReport),
}

pub struct Output {
    pub report: Report,
    pub ok: bool,
}

impl Output {
    pub fn text(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.report.to_csv(),
            Format::Table => self.report.to_table(),
        }
    }
}

fn algebra_lines(out: &mut String, a: &AlgebraHeader) {
    let _ = writeln!(out, "q = {}  modulus {}  cubic {}", a.q, a.base_modulus, a.cubic_modulus.as_deref().unwrap_or("-"));
    if let (Some(c), Some(n)) = (&a.c, &a.norm_c) {
        let class = a.class.map(|k| format!("{k:?}")).unwrap_or_default();
        let _ = writeln!(out, "c = {c}  N(c) = {n}  class {class}");
    }
    let _ = writeln!(out, "d = ({}, {}, {})  d0 d1 d2 = {}", a.d[0], a.d[1], a.d[2], a.d_product);
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|x| x.to_string()).unwrap_or_default()
}

impl Report {
    fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Field(fi) => {
                out.push_str("norm,count,least_c,class\n");
                for n in &fi.norm_classes {
                    let _ = writeln!(out, "{},{},\"{}\",{}", n.norm, n.count, n.least_c, opt(n.class.map(|c| format!("{c:?}"))));
                }
            }
            Report::Build(b) => {
                out.push_str("i,j,k,value\n");
                for (n, x) in b.structure_constants.tensor.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{},{x}", n / 9, (n / 3) % 3, n % 3);
                }
            }
            Report::Split(s) => {
                out.push_str("d0,d1,d2,d_product,passed,checked\n");
                let d = &s.algebra.d;
                let _ = writeln!(out, "\"{}\",\"{}\",\"{}\",\"{}\",{},{}", d[0], d[1], d[2], s.algebra.d_product, s.passed, s.checked);
            }
            Report::Verdict(v) => out = v.to_csv(),
            Report::Census(c) => out = c.to_csv(),
            Report::Scan(s) => {
                out.push_str("v,kind,orbit_size,dim3,dim2,dim1,dim0_nondegenerate,dim0_degenerate,complementary_spaces,match\n");
                for e in &s.entries {
                    let o = &e.observed;
                    let _ = writeln!(
                        out,
                        "\"{}\",{:?},{},{},{},{},{},{},{},{}",
                        e.v,
                        e.v_kind,
                        e.orbit_size,
                        o.dim3.vectors,
                        o.dim2.vectors,
                        o.dim1.vectors,
                        o.dim0_nondegenerate.vectors,
                        o.dim0_degenerate.vectors,
                        o.complementary_spaces,
                        opt(e.matches)
                    );
                }
            }
            Report::Lines(l) => {
                out.push_str("a,line,count,in_distinguished_plane\n");
                for r in &l.lines {
                    let _ = writeln!(out, "\"{}\",\"{}\",{},{}", r.a, r.line, r.count, opt(r.in_distinguished_plane));
                }
            }
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Field(fi) => {
                let _ = writeln!(out, "GF({}) = GF({})[u]/({})", fi.q, fi.characteristic, fi.base_modulus);
                let _ = writeln!(out, "K = GF({})[t]/({})", fi.q, fi.cubic_modulus);
                let _ = writeln!(out, "elements: {}", fi.elements.join(" "));
                let _ = writeln!(out, "{:<10} {:>8} {:>16}  class", "N(c)", "count", "least c");
                for n in &fi.norm_classes {
                    let class = n.class.map(|c| format!("{c:?}")).unwrap_or_else(|| "-".into());
                    let _ = writeln!(out, "{:<10} {:>8} {:>16}  {class}", n.norm, n.count, n.least_c);
                }
            }
            Report::Build(b) => {
                algebra_lines(&mut out, &b.algebra);
                let _ = writeln!(out, "commutative: {}  division: {}", b.commutative, b.division);
                let t = &b.structure_constants.tensor;
                for i in 0..3 {
                    for j in 0..3 {
                        let n = 9 * i + 3 * j;
                        let _ = writeln!(out, "e{i} e{j} = ({}, {}, {})", t[n], t[n + 1], t[n + 2]);
                    }
                }
            }
            Report::Split(s) => {
                algebra_lines(&mut out, &s.algebra);
                let status = if s.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "splitting identity {status} on {} pairs", s.checked);
                if let Some(c) = &s.counterexample {
                    let _ = writeln!(out, "counterexample: {c}");
                }
            }
            Report::Verdict(v) => out = v.to_table(),
            Report::Census(c) => out = c.to_table(),
            Report::Scan(s) => {
                algebra_lines(&mut out, &s.algebra);
                let _ = writeln!(out, "{:<28} {:>8} {:>6} {:>6} {:>8} {:>12}  match", "v", "orbit", "dim3", "dim2", "dim1", "complementary");
                for e in &s.entries {
                    let o = &e.observed;
                    let _ = writeln!(
                        out,
                        "{:<28} {:>8} {:>6} {:>6} {:>8} {:>12}  {}",
                        e.v,
                        e.orbit_size,
                        o.dim3.vectors,
                        o.dim2.vectors,
                        o.dim1.vectors,
                        o.complementary_spaces,
                        opt(e.matches)
                    );
                }
                let _ = writeln!(out, "vectors covered: {}  all match: {}", s.vectors_covered, s.all_match);
            }
            Report::Lines(l) => {
                algebra_lines(&mut out, &l.algebra);
                let _ = writeln!(out, "v = {}", l.v);
                for r in &l.lines {
                    let plane = r.in_distinguished_plane.map(|b| if b { "  in <x,y>" } else { "" }).unwrap_or("");
                    let _ = writeln!(out, "a = {:<16} {:>6}{plane}", r.a, r.count);
                }
                for b in &l.histogram {
                    let _ = writeln!(out, "{} lines with count {}", b.lines, b.count);
                }
                let _ = writeln!(out, "match: {}", l.matches);
            }
        }
        out
    }
}
