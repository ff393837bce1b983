//! Sweeps of `v'` over all of `F^6` against a fixed `v`, tallied by
//! `dim(Av ∩ Av')`, both per vector and per distinct space `Av'`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra3::{vectors3, Algebra3, IsotopyClass};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field, Gf};
use crate::linalg::rank_rows;
use crate::par::{Exec, CHUNK};

use super::action::{key_intersection_dim, AvAtlas};
use super::{in_span, independent, PairVector, VectorKind};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub vectors: u64,
    pub spaces: u64,
}

impl ClassCount {
    fn new(vectors: u64, spaces: u64) -> Self {
        ClassCount { vectors, spaces }
    }
}

/// Counts of `v'` (and of distinct `Av'`) by intersection dimension, with
/// dimension 0 split by the kind of `v'`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub dim3: ClassCount,
    pub dim2: ClassCount,
    pub dim1: ClassCount,
    pub dim0_nondegenerate: ClassCount,
    pub dim0_degenerate: ClassCount,
    pub zero: ClassCount,
    pub total_vectors: u64,
    /// Distinct `Av'` with `v' != 0` and `Av ∩ Av' = 0`.
    pub complementary_spaces: u64,
    /// Hits of dimension 1 or 2 violating the span conditions (see
    /// [`Profile`]); predicted to be 0.
    pub span_condition_failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_histogram: Option<Vec<LineBucket>>,
}

/// `lines` lines of `Av` each meet exactly `count` of the `Av'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBucket {
    pub count: u64,
    pub lines: u64,
}

impl CensusCounts {
    pub fn rows(&self) -> [(&'static str, ClassCount); 6] {
        [
            ("3", self.dim3),
            ("2", self.dim2),
            ("1", self.dim1),
            ("0-nondegenerate", self.dim0_nondegenerate),
            ("0-degenerate", self.dim0_degenerate),
            ("0-zero", self.zero),
        ]
    }
}

/// `#{v' : Av ∩ Av' = L}` for one line `L = F(av)` of `Av`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCount {
    /// `a`, normalized so its first nonzero coordinate is 1.
    pub a: [Fe; 3],
    /// `av`, normalized the same way.
    pub line: PairVector,
    pub count: u64,
    /// Whether `a` lies in `<x, y>`; only set for commutative tensors.
    pub in_distinguished_plane: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProfile {
    pub lines: Vec<LineCount>,
    /// By increasing count.
    pub histogram: Vec<LineBucket>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub v: PairVector,
    pub kind: VectorKind,
    pub counts: CensusCounts,
    /// Least `v'` (in index order) with a 2-dimensional intersection.
    pub first_dim2: Option<PairVector>,
    pub lines: Option<LineProfile>,
}

const ROWS: usize = 6;

fn row_of(dim: usize, kind: VectorKind) -> usize {
    match (dim, kind) {
        (3, _) => 0,
        (2, _) => 1,
        (1, _) => 2,
        (_, VectorKind::Nondegenerate) => 3,
        (_, VectorKind::DegenerateNonzero) => 4,
        (_, VectorKind::Zero) => 5,
    }
}

struct Tally {
    vectors: [u64; ROWS],
    /// Bitsets over space ids.
    spaces: [Vec<u64>; ROWS],
    first_dim2: Option<usize>,
    lines: HashMap<[Fe; 6], u64>,
    span_failures: u64,
}

impl Tally {
    fn new(words: usize) -> Self {
        Tally {
            vectors: [0; ROWS],
            spaces: std::array::from_fn(|_| vec![0; words]),
            first_dim2: None,
            lines: HashMap::new(),
            span_failures: 0,
        }
    }

    fn merge(&mut self, other: Tally) {
        for r in 0..ROWS {
            self.vectors[r] += other.vectors[r];
            for (mine, theirs) in self.spaces[r].iter_mut().zip(&other.spaces[r]) {
                *mine |= theirs;
            }
        }
        if self.first_dim2.is_none() {
            self.first_dim2 = other.first_dim2;
        }
        for (k, n) in other.lines {
            *self.lines.entry(k).or_insert(0) += n;
        }
        self.span_failures += other.span_failures;
    }

    fn distinct(&self, r: usize) -> u64 {
        self.spaces[r].iter().map(|w| w.count_ones() as u64).sum()
    }
}

fn span_conditions_hold(f: &Gf, v: &PairVector, w: &PairVector) -> bool {
    independent(f, &v.x, &v.y)
        && independent(f, &w.x, &w.y)
        && independent(f, &v.x, &w.x)
        && independent(f, &v.y, &w.y)
        && rank_rows(f, &[v.x, v.y, w.x, w.y]) > 2
}

fn first_nonzero_one(f: &Gf, v: &[Fe]) -> Vec<Fe> {
    match v.iter().find(|&&c| c != Fe::ZERO) {
        Some(&lead) => {
            let s = f.inv(lead).expect("lead is nonzero");
            v.iter().map(|&c| f.mul(s, c)).collect()
        }
        None => v.to_vec(),
    }
}

/// Tallies every `v'` against `v`. With `with_lines`, dimension-1 hits are
/// also grouped by their intersection line.
pub fn per_vector_profile(alg: &Algebra3, atlas: &AvAtlas, v: &PairVector, exec: &Exec, with_lines: bool) -> Result<Profile> {
    let f = &**alg.field();
    if v.is_zero() {
        return Err(Error::usage("the census needs a nonzero base vector v"));
    }
    if atlas.len() != PairVector::count(f) {
        return Err(Error::usage("atlas was built for a different field"));
    }
    let kv = *atlas.key(v.index(f));
    let kv_space = kv.to_subspace();
    let spaces = atlas.spaces();
    // the intersection only depends on Av', so it is computed once per space
    let meets: Vec<(usize, Option<[Fe; 6]>)> = exec.map_indices(spaces.len(), |s| {
        let dim = key_intersection_dim(f, &kv, &spaces[s]);
        let line = (with_lines && dim == 1).then(|| {
            let meet = kv_space.intersect(f, &spaces[s].to_subspace()).expect("same ambient");
            std::array::from_fn(|i| meet.basis()[0][i])
        });
        (dim, line)
    });
    let words = spaces.len().div_ceil(64);
    let chunks = exec.map_chunks(atlas.len(), CHUNK, |range| {
        let mut t = Tally::new(words);
        for n in range {
            let s = atlas.space_id(n);
            let (dim, line) = meets[s];
            let r = row_of(dim, atlas.kind(n));
            t.vectors[r] += 1;
            t.spaces[r][s / 64] |= 1 << (s % 64);
            if dim == 1 || dim == 2 {
                if !span_conditions_hold(f, v, &PairVector::from_index(f, n)) {
                    t.span_failures += 1;
                }
                if dim == 2 && t.first_dim2.is_none() {
                    t.first_dim2 = Some(n);
                }
                if let Some(key) = line {
                    *t.lines.entry(key).or_insert(0) += 1;
                }
            }
        }
        t
    });
    let mut total = Tally::new(words);
    for t in chunks {
        total.merge(t);
    }

    let c = |r: usize| ClassCount::new(total.vectors[r], total.distinct(r));
    let complementary: u64 =
        total.spaces[3].iter().zip(&total.spaces[4]).map(|(a, b)| (a | b).count_ones() as u64).sum();
    let mut counts = CensusCounts {
        dim3: c(0),
        dim2: c(1),
        dim1: c(2),
        dim0_nondegenerate: c(3),
        dim0_degenerate: c(4),
        zero: c(5),
        total_vectors: total.vectors.iter().sum(),
        complementary_spaces: complementary,
        span_condition_failures: total.span_failures,
        line_histogram: None,
    };
    let lines = with_lines.then(|| collect_lines(alg, v, &total.lines));
    counts.line_histogram = lines.as_ref().map(|l| l.histogram.clone());
    Ok(Profile {
        v: *v,
        kind: v.classify(f),
        counts,
        first_dim2: total.first_dim2.map(|n| PairVector::from_index(f, n)),
        lines,
    })
}

fn collect_lines(alg: &Algebra3, v: &PairVector, tally: &HashMap<[Fe; 6], u64>) -> LineProfile {
    let f = &**alg.field();
    let commutative = alg.is_commutative();
    let mut lines = Vec::new();
    for a in vectors3(f).skip(1) {
        if a.iter().find(|&&c| c != Fe::ZERO) != Some(&Fe::ONE) {
            continue;
        }
        let av = PairVector::new(alg.mul(&a, &v.x), alg.mul(&a, &v.y));
        let norm = first_nonzero_one(f, &av.flatten());
        let key: [Fe; 6] = std::array::from_fn(|i| norm[i]);
        lines.push(LineCount {
            a,
            line: PairVector::from_flat(&key),
            count: tally.get(&key).copied().unwrap_or(0),
            in_distinguished_plane: commutative.then(|| in_span(f, &v.x, &v.y, &a)),
        });
    }
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for l in &lines {
        *hist.entry(l.count).or_insert(0) += 1;
    }
    LineProfile { lines, histogram: hist.into_iter().map(|(count, lines)| LineBucket { count, lines }).collect() }
}

/// Per-line counts of dimension-1 intersections; `v` must be nondegenerate.
pub fn line_profile(alg: &Algebra3, atlas: &AvAtlas, v: &PairVector, exec: &Exec) -> Result<LineProfile> {
    if v.classify(alg.field()) != VectorKind::Nondegenerate {
        return Err(Error::usage("the line census needs a nondegenerate v"));
    }
    let p = per_vector_profile(alg, atlas, v, exec, true)?;
    Ok(p.lines.expect("requested"))
}

pub fn complementary_space_count(alg: &Algebra3, atlas: &AvAtlas, v: &PairVector, exec: &Exec) -> Result<u64> {
    Ok(per_vector_profile(alg, atlas, v, exec, false)?.counts.complementary_spaces)
}

/// Vector and distinct-space counts over all of `F^6`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalCounts {
    pub nondegenerate_vectors: u64,
    pub degenerate_nonzero_vectors: u64,
    pub nondegenerate_spaces: u64,
    pub degenerate_spaces: u64,
}

impl GlobalCounts {
    pub fn predicted(q: u64) -> Self {
        GlobalCounts {
            nondegenerate_vectors: (q.pow(3) - 1) * (q.pow(3) - q),
            degenerate_nonzero_vectors: (q.pow(3) - 1) * (q + 1),
            nondegenerate_spaces: (q.pow(3) - 1) * (q + 1) * q,
            degenerate_spaces: q + 1,
        }
    }
}

pub fn global_counts(atlas: &AvAtlas) -> GlobalCounts {
    let mut nondeg = HashSet::new();
    let mut deg = HashSet::new();
    let mut counts = GlobalCounts::default();
    for n in 0..atlas.len() {
        match atlas.kind(n) {
            VectorKind::Nondegenerate => {
                counts.nondegenerate_vectors += 1;
                nondeg.insert(atlas.space_id(n));
            }
            VectorKind::DegenerateNonzero => {
                counts.degenerate_nonzero_vectors += 1;
                deg.insert(atlas.space_id(n));
            }
            VectorKind::Zero => {}
        }
    }
    counts.nondegenerate_spaces = nondeg.len() as u64;
    counts.degenerate_spaces = deg.len() as u64;
    counts
}

/// Closed-form census for a base vector of the given kind.
pub fn predicted_counts(q: u64, class: IsotopyClass, kind: VectorKind) -> Option<CensusCounts> {
    let q2 = q * q;
    let q3 = q2 * q;
    let q5 = q3 * q2;
    let cc = ClassCount::new;
    let counts = match kind {
        VectorKind::Zero => return None,
        VectorKind::DegenerateNonzero => CensusCounts {
            dim3: cc(q3 - 1, 1),
            dim2: cc(0, 0),
            dim1: cc(0, 0),
            dim0_nondegenerate: cc((q3 - 1) * (q3 - q), (q3 - 1) * (q + 1) * q),
            dim0_degenerate: cc((q3 - 1) * q, q),
            zero: cc(1, 1),
            total_vectors: q3 * q3,
            complementary_spaces: q2 * (q3 + q2 - 1),
            ..Default::default()
        },
        VectorKind::Nondegenerate => {
            let degenerate = cc((q3 - 1) * (q + 1), q + 1);
            match class {
                IsotopyClass::CommutativeIsotopic => {
                    let n0 = q5 - q3 - 2 * q2 - 2 * q - 1;
                    CensusCounts {
                        dim3: cc(q - 1, 1),
                        dim2: cc(q3 - q, q2 + q),
                        dim1: cc(q3 * (q2 - 1), q3 * (q + 1)),
                        dim0_nondegenerate: cc((q - 1) * n0, n0),
                        dim0_degenerate: degenerate,
                        zero: cc(1, 1),
                        total_vectors: q3 * q3,
                        complementary_spaces: q5 - q3 - 2 * q2 - q,
                        ..Default::default()
                    }
                }
                IsotopyClass::NonCommutativeClass => {
                    let n0 = q5 - 2 * q3 - 3 * q2 - 2 * q - 1;
                    CensusCounts {
                        dim3: cc(q - 1, 1),
                        dim2: cc(0, 0),
                        dim1: cc(q * (q + 1) * (q3 - 1), q * (q + 1) * (q2 + q + 1)),
                        dim0_nondegenerate: cc((q - 1) * n0, n0),
                        dim0_degenerate: degenerate,
                        zero: cc(1, 1),
                        total_vectors: q3 * q3,
                        complementary_spaces: q5 - 2 * q3 - 3 * q2 - q,
                        ..Default::default()
                    }
                }
            }
        }
    };
    Some(counts)
}

/// Closed-form line histogram for nondegenerate `v`, by increasing count.
pub fn predicted_line_histogram(q: u64, class: IsotopyClass) -> Vec<LineBucket> {
    let b = |count, lines| LineBucket { count, lines };
    match class {
        // (q^2 - 1)(q - 1) < q^3 - q^2
        IsotopyClass::CommutativeIsotopic => vec![b((q * q - 1) * (q - 1), q * q), b(q * q * q - q * q, q + 1)],
        IsotopyClass::NonCommutativeClass => vec![b(q * q * q - q, q * q + q + 1)],
    }
}
