//! Brute-force verifiers. Each returns a [`Verdict`]; a failing verdict
//! always carries the first counterexample in sweep order.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra3::{vectors3, Algebra3, IsotopyClass, Vec3};
use crate::gf::{Fe, Field, Gf};
use crate::linalg::{rank_rows, rref_rows, MatF};
use crate::par::Exec;
use crate::split_albert::{char_poly3, poly_from_roots, SplitAlbertSpec, TriVector};

use super::action::{key_intersection_dim, AvAtlas, AvKey};
use super::census::per_vector_profile;
use super::pencil::{pair_normal_form, Mat2};
use super::report::{AlgebraHeader, Verdict};
use super::{independent, PairVector, VectorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl SweepMode {
    pub fn label(&self) -> String {
        match self {
            SweepMode::Exhaustive => "exhaustive".into(),
            SweepMode::Sampled { samples, seed } => format!("sampled({samples}, seed {seed})"),
        }
    }
}

struct Draft {
    check: &'static str,
    mode: String,
    started: Instant,
    stats: BTreeMap<String, u64>,
    witnesses: Vec<String>,
}

impl Draft {
    fn new(check: &'static str, mode: String) -> Self {
        Draft { check, mode, started: Instant::now(), stats: BTreeMap::new(), witnesses: Vec::new() }
    }

    fn stat(&mut self, key: &str, value: u64) {
        self.stats.insert(key.to_string(), value);
    }

    fn finish(
        self,
        parameters: Option<AlgebraHeader>,
        q: u64,
        passed: bool,
        checked: u64,
        summary: String,
        counterexample: Option<String>,
    ) -> Verdict {
        Verdict {
            check: self.check.to_string(),
            q,
            parameters,
            mode: self.mode,
            passed,
            heuristic: false,
            checked,
            summary,
            stats: self.stats,
            counterexample,
            witnesses: self.witnesses,
            runtime_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

fn proportional(f: &Gf, v: &PairVector, w: &PairVector) -> bool {
    rank_rows(f, &[v.flatten(), w.flatten()]) == 1
}

/// `Av = Av'` exactly when `Fv = Fv'`, over nondegenerate `v, v'`.
pub fn verify_theorem_a(alg: &Algebra3, header: AlgebraHeader, atlas: &AvAtlas, mode: SweepMode) -> Verdict {
    let f = &**alg.field();
    let q = f.q() as u64;
    let mut draft = Draft::new("theorem-A", mode.label());
    let nondeg: Vec<usize> = (0..atlas.len())
        .filter(|&n| PairVector::from_index(f, n).classify(f) == VectorKind::Nondegenerate)
        .collect();
    let mut groups: HashMap<AvKey, Vec<usize>> = HashMap::new();
    for &n in &nondeg {
        groups.entry(*atlas.key(n)).or_default().push(n);
    }
    draft.stat("nondegenerate_vectors", nondeg.len() as u64);
    draft.stat("distinct_spaces", groups.len() as u64);

    // every member of the group of v must be a multiple of v, and every
    // multiple of v must be in the group
    let check_base = |n: usize| -> Option<String> {
        let v = PairVector::from_index(f, n);
        let group = &groups[atlas.key(n)];
        if let Some(&m) = group.iter().find(|&&m| !proportional(f, &v, &PairVector::from_index(f, m))) {
            return Some(format!("Av = Av' for v = {}, v' = {}", v.format(f), PairVector::from_index(f, m).format(f)));
        }
        if let Some(k) = f.nonzero_elements().find(|&k| atlas.key(v.scale(f, k).index(f)) != atlas.key(n)) {
            return Some(format!("Av != A(kv) for v = {}, k = {}", v.format(f), f.format(k)));
        }
        None
    };

    let (checked, counterexample) = match mode {
        SweepMode::Exhaustive => {
            let mut bases: Vec<usize> = groups.values().map(|g| g[0]).collect();
            bases.sort_unstable();
            let bad = bases.iter().find_map(|&n| check_base(n));
            let sizes_ok = groups.values().all(|g| g.len() as u64 == q - 1);
            let bad = bad.or_else(|| (!sizes_ok).then(|| "a space Av with the wrong number of generators".to_string()));
            (nondeg.len() as u64, bad)
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = None;
            for _ in 0..samples {
                let n = nondeg[rng.gen_range(0..nondeg.len())];
                bad = check_base(n);
                if bad.is_some() {
                    break;
                }
            }
            (samples, bad)
        }
    };
    let passed = counterexample.is_none();
    let summary = if passed { "Av = Av' exactly when v' is a multiple of v".to_string() } else { "counterexample found".to_string() };
    draft.finish(Some(header), q, passed, checked, summary, counterexample)
}

/// `(x, y)` with `[x; y]` in reduced row echelon form: one per 2-plane of `F^3`.
pub fn plane_representatives(f: &Gf) -> Vec<PairVector> {
    let mut reps = Vec::new();
    for n in 0..PairVector::count(f) {
        let v = PairVector::from_index(f, n);
        if v.classify(f) != VectorKind::Nondegenerate {
            continue;
        }
        let mut rows = [v.x, v.y];
        rref_rows(f, &mut rows);
        if rows == [v.x, v.y] {
            reps.push(v);
        }
    }
    reps
}

/// Two-dimensional intersections exist exactly for the commutative-isotopic
/// class. One `v` per plane `<x, y>` suffices: replacing `(v, v')` by
/// `(vP, v'P)` for `P` in `GL_2(F)` keeps every intersection dimension, and
/// `v'` runs over all of `F^6`.
pub fn verify_theorem_b(alg: &Algebra3, header: AlgebraHeader, class: IsotopyClass, atlas: &AvAtlas, exec: &Exec) -> Verdict {
    let f = &**alg.field();
    let mut draft = Draft::new("theorem-B", "exhaustive over plane representatives".into());
    let reps = plane_representatives(f);
    let mut dim2 = 0;
    let mut span_failures = 0;
    let mut first = None;
    for v in &reps {
        let p = per_vector_profile(alg, atlas, v, exec, false).expect("v is nonzero");
        dim2 += p.counts.dim2.vectors;
        span_failures += p.counts.span_condition_failures;
        if first.is_none() {
            first = p.first_dim2.map(|w| (*v, w));
        }
    }
    draft.stat("plane_representatives", reps.len() as u64);
    draft.stat("dim2_pairs", dim2);
    draft.stat("span_condition_failures", span_failures);
    let checked = reps.len() as u64 * atlas.len() as u64;
    let q = f.q() as u64;
    let describe = |(v, w): (PairVector, PairVector)| format!("v = {}, v' = {}", v.format(f), w.format(f));
    match class {
        IsotopyClass::CommutativeIsotopic => {
            if let Some(pair) = first {
                draft.witnesses.push(describe(pair));
            }
            let passed = first.is_some() && span_failures == 0;
            let summary = if first.is_some() { "2-dim intersection found" } else { "no 2-dim intersection in the commutative-isotopic class" };
            draft.finish(Some(header), q, passed, checked, summary.into(), None)
        }
        IsotopyClass::NonCommutativeClass => {
            let passed = dim2 == 0 && span_failures == 0;
            let summary = if dim2 == 0 { "no 2-dim intersections" } else { "2-dim intersection in the noncommutative class" };
            draft.finish(Some(header), q, passed, checked, summary.into(), first.map(describe))
        }
    }
}

struct RegularTable {
    reg: Vec<Vec3>,
    /// Index of `x / x_0` in `reg`.
    class: Vec<usize>,
}

impl RegularTable {
    fn new(f: &Gf) -> Self {
        let reg: Vec<Vec3> = vectors3(f).filter(|v| v.iter().all(|&c| c != Fe::ZERO)).collect();
        let pos: HashMap<Vec3, usize> = reg.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let class = reg
            .iter()
            .map(|v| {
                let s = f.inv(v[0]).expect("regular");
                pos[&v.map(|c| f.mul(s, c))]
            })
            .collect();
        RegularTable { reg, class }
    }
}

/// Canonical `U(x, y) = {(ux, uy)}` for the split algebra.
fn u_key(spec: &SplitAlbertSpec<Gf>, x: &Vec3, y: &Vec3) -> [[Fe; 6]; 3] {
    let f = &**spec.field();
    let (tx, ty) = (TriVector::v(*x), TriVector::v(*y));
    let mut rows = [[Fe::ZERO; 6]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        let mut e = [Fe::ZERO; 3];
        e[i] = Fe::ONE;
        let u = TriVector::u(e);
        let ux = spec.phi(&u, &tx).expect("tags").coords;
        let uy = spec.phi(&u, &ty).expect("tags").coords;
        row[..3].copy_from_slice(&ux);
        row[3..].copy_from_slice(&uy);
    }
    rref_rows(f, &mut rows);
    rows
}

fn mat3(m: &MatF<Fe>) -> [[Fe; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j)))
}

/// Over regular `x, y, x', y'`: `U(x,y) = U(x',y')` exactly when
/// `(x',y') = k(x,y)` or `(y,y') = k(x,x')`, and exactly when
/// `R_{x'}^{-1} R_x = R_{y'}^{-1} R_y`.
pub fn verify_split_theorem_3_1(spec: &SplitAlbertSpec<Gf>, mode: SweepMode, exec: &Exec) -> Verdict {
    let f = &**spec.field();
    let q = f.q() as u64;
    let mut draft = Draft::new("theorem-3.1", mode.label());
    let table = RegularTable::new(f);
    let r = table.reg.len();
    let keys: Vec<[[Fe; 6]; 3]> = (0..r * r).map(|p| u_key(spec, &table.reg[p / r], &table.reg[p % r])).collect();
    let rmats: Vec<MatF<Fe>> = table.reg.iter().map(|v| spec.rmat(&TriVector::v(*v)).expect("tag")).collect();
    let rinvs: Vec<MatF<Fe>> = table.reg.iter().map(|v| spec.rmat_inv(&TriVector::v(*v)).expect("regular")).collect();
    // ratio[a * r + b] = R_a^{-1} R_b
    let ratio: Vec<[[Fe; 3]; 3]> = (0..r * r).map(|p| mat3(&rinvs[p / r].mul(f, &rmats[p % r]).expect("3x3"))).collect();

    // (equal keys, proportionality condition, eigenvalue criterion) for (x, y, x', y')
    let judge = |ix: usize, iy: usize, ix2: usize, iy2: usize| -> (bool, bool, bool) {
        let (x, y, x2, y2) = (&table.reg[ix], &table.reg[iy], &table.reg[ix2], &table.reg[iy2]);
        let eq = keys[ix * r + iy] == keys[ix2 * r + iy2];
        let c = &table.class;
        let lead = f.mul(x2[0], y[0]) == f.mul(y2[0], x[0]);
        let cond = lead && ((c[ix2] == c[ix] && c[iy2] == c[iy]) || (c[iy] == c[ix] && c[iy2] == c[ix2]));
        let crit = ratio[ix2 * r + ix] == ratio[iy2 * r + iy];
        (eq, cond, crit)
    };
    let describe = |q4: [usize; 4]| {
        let s: Vec<String> = q4.iter().map(|&i| {
            let v = table.reg[i];
            format!("[{},{},{}]", f.format(v[0]), f.format(v[1]), f.format(v[2]))
        }).collect();
        format!("(x, y, x', y') = ({})", s.join(", "))
    };

    let (checked, equal, bad) = match mode {
        SweepMode::Exhaustive => {
            let parts = exec.map_chunks(r * r, 16, |range| {
                let mut equal = 0u64;
                let mut bad = None;
                for p1 in range {
                    for p2 in 0..r * r {
                        let quad = [p1 / r, p1 % r, p2 / r, p2 % r];
                        let (eq, cond, crit) = judge(quad[0], quad[1], quad[2], quad[3]);
                        equal += eq as u64;
                        if (eq != cond || eq != crit) && bad.is_none() {
                            bad = Some(quad);
                        }
                    }
                }
                (equal, bad)
            });
            let equal = parts.iter().map(|p| p.0).sum();
            let bad = parts.iter().find_map(|p| p.1);
            ((r * r * r * r) as u64, equal, bad)
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut equal = 0;
            let mut bad = None;
            let scale = |i: usize, k: Fe| -> usize {
                let v = table.reg[i].map(|c| f.mul(k, c));
                table.reg.iter().position(|w| *w == v).expect("regular")
            };
            for s in 0..samples {
                let mut quad: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..r));
                // a third of the samples are forced to satisfy the condition
                let k = f.fe(rng.gen_range(1..f.q()));
                match s % 3 {
                    1 => {
                        quad[2] = scale(quad[0], k);
                        quad[3] = scale(quad[1], k);
                    }
                    2 => {
                        quad[1] = scale(quad[0], k);
                        quad[3] = scale(quad[2], k);
                    }
                    _ => {}
                }
                let (eq, cond, crit) = judge(quad[0], quad[1], quad[2], quad[3]);
                equal += eq as u64;
                if eq != cond || eq != crit {
                    bad = Some(quad);
                    break;
                }
            }
            (samples, equal, bad)
        }
    };
    draft.stat("regular_vectors", r as u64);
    draft.stat("equal_subspace_quadruples", equal);
    let passed = bad.is_none();
    let summary = if passed {
        "U(x,y) = U(x',y') exactly under the proportionality condition and the R-criterion".to_string()
    } else {
        "counterexample found".to_string()
    };
    draft.finish(Some(AlgebraHeader::split(spec)), q, passed, checked, summary, bad.map(describe))
}

/// The determinant formulas for `L_x`, `R_y`, the closed-form `R_y^{-1}`,
/// and the factorization of the characteristic polynomial of
/// `R_{y'}^{-1} R_y`. Pairs are exhaustive up to `max_pairs`, then sampled.
pub fn verify_split_identities(spec: &SplitAlbertSpec<Gf>, max_pairs: u64, seed: u64) -> Verdict {
    let f = &**spec.field();
    let q = f.q() as u64;
    let mut draft = Draft::new("split-identities", String::new());
    let one_plus_d = f.add(f.one(), spec.d_product());
    let mut bad = None;
    let mut checked = 0;
    for x in vectors3(f) {
        let expect = f.mul(one_plus_d, f.mul(x[0], f.mul(x[1], x[2])));
        let dl = crate::linalg::det(f, &spec.lmat(&TriVector::u(x)).expect("tag")).expect("square");
        let dr = crate::linalg::det(f, &spec.rmat(&TriVector::v(x)).expect("tag")).expect("square");
        checked += 1;
        if dl != expect || dr != expect {
            bad.get_or_insert(format!("det formula fails at {x:?}"));
        }
    }
    draft.stat("det_checks", checked);
    let table = RegularTable::new(f);
    let ident = MatF::identity(f, 3);
    for y in &table.reg {
        let ty = TriVector::v(*y);
        let prod = spec.rmat_inv(&ty).expect("regular").mul(f, &spec.rmat(&ty).expect("tag")).expect("3x3");
        checked += 1;
        if prod != ident {
            bad.get_or_insert(format!("closed-form inverse fails at {y:?}"));
        }
    }
    let r = table.reg.len() as u64;
    let pair_check = |a: usize, b: usize| -> bool {
        let (y, y2) = (TriVector::v(table.reg[a]), TriVector::v(table.reg[b]));
        let m = spec.rmat_inv(&y2).expect("regular").mul(f, &spec.rmat(&y).expect("tag")).expect("3x3");
        let roots = spec.char_poly_ratio(&y, &y2).expect("regular");
        char_poly3(f, &m) == poly_from_roots(f, &roots)
    };
    let mode = if r * r <= max_pairs {
        for a in 0..table.reg.len() {
            for b in 0..table.reg.len() {
                if !pair_check(a, b) {
                    bad.get_or_insert(format!("characteristic polynomial fails at {:?}, {:?}", table.reg[a], table.reg[b]));
                }
            }
        }
        draft.stat("char_poly_pairs", r * r);
        checked += r * r;
        "exhaustive".to_string()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..max_pairs {
            let (a, b) = (rng.gen_range(0..table.reg.len()), rng.gen_range(0..table.reg.len()));
            if !pair_check(a, b) {
                bad.get_or_insert(format!("characteristic polynomial fails at {:?}, {:?}", table.reg[a], table.reg[b]));
            }
        }
        draft.stat("char_poly_pairs", max_pairs);
        checked += max_pairs;
        format!("char poly sampled({max_pairs}, seed {seed})")
    };
    draft.mode = mode;
    let passed = bad.is_none();
    let summary = if passed { "det, inverse and eigenvalue identities hold" } else { "identity fails" };
    draft.finish(Some(AlgebraHeader::split(spec)), q, passed, checked, summary.into(), bad)
}

/// Every pair of 2x2 matrices over `f` gets a tag with verifying `(P, Q)`.
pub fn verify_pair_normal_forms(f: &Gf, mode: SweepMode) -> Verdict {
    let q = f.q();
    let mut draft = Draft::new("pair-normal-forms", mode.label());
    let mat = |n: usize| -> Mat2<Fe> {
        [[f.fe(n % q), f.fe((n / q) % q)], [f.fe((n / q / q) % q), f.fe(n / q / q / q)]]
    };
    let total = q.pow(4);
    let mut tags: BTreeMap<String, u64> = BTreeMap::new();
    let mut bad = None;
    let mut run = |a: usize, b: usize| {
        let (g0, g1) = (mat(a), mat(b));
        let nf = pair_normal_form(f, &g0, &g1);
        *tags.entry(nf.tag.name().to_string()).or_insert(0) += 1;
        if !nf.verify(f, &g0, &g1) && bad.is_none() {
            bad = Some(format!("({g0:?}, {g1:?}) -> {:?}", nf.tag));
        }
    };
    let checked = match mode {
        SweepMode::Exhaustive => {
            for a in 0..total {
                for b in 0..total {
                    run(a, b);
                }
            }
            (total * total) as u64
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                run(rng.gen_range(0..total), rng.gen_range(0..total));
            }
            samples
        }
    };
    for (k, v) in tags {
        draft.stat(&format!("tag {k}"), v);
    }
    let passed = bad.is_none();
    let summary = if passed { "every pair has a verified normal form (I* marks irreducible eigenvalues)" } else { "unverified normal form" };
    draft.finish(None, q as u64, passed, checked, summary.into(), bad)
}

/// The span hypotheses: for all nonzero `(nu, nu')` and `(lambda, mu)`,
/// `nu (lambda x + mu y) + nu' (lambda x' + mu y') != 0`. This is the same as
/// asking that every frame change `Q [[x, y], [x', y']] P` keeps the four
/// spans two-dimensional.
fn stable_spans(f: &Gf, x: &Vec3, y: &Vec3, x2: &Vec3, y2: &Vec3) -> bool {
    let line: Vec<[Fe; 2]> = std::iter::once([Fe::ONE, Fe::ZERO]).chain(f.elements().map(|t| [t, Fe::ONE])).collect();
    let comb = |a: &Vec3, b: &Vec3, s: [Fe; 2]| -> Vec3 { std::array::from_fn(|i| f.add(f.mul(s[0], a[i]), f.mul(s[1], b[i]))) };
    line.iter().all(|&lm| {
        let (top, bottom) = (comb(x, y, lm), comb(x2, y2, lm));
        line.iter().all(|&nn| comb(&top, &bottom, nn).iter().any(|&c| c != Fe::ZERO))
    })
}

/// Over a finite field, looks for `U(x,y) ∩ U(x',y')` of dimension 2 under
/// the span hypotheses. A hit with `d != 1` fails the verdict. The field is
/// not algebraically closed, so this is evidence, not a check.
pub fn search_theorem_7_2_analogue(spec: &SplitAlbertSpec<Gf>, exec: &Exec, max_witnesses: usize) -> Verdict {
    let f = &**spec.field();
    let q = f.q() as u64;
    let mut draft = Draft::new("theorem-7.2-analogue", "exhaustive".into());
    let all: Vec<Vec3> = vectors3(f).skip(1).collect();
    let pairs: Vec<(Vec3, Vec3)> = all
        .iter()
        .flat_map(|x| all.iter().map(move |y| (*x, *y)))
        .filter(|(x, y)| independent(f, x, y))
        .collect();
    let keys: Vec<AvKey> = exec.map_indices(pairs.len(), |i| {
        let rows = u_key(spec, &pairs[i].0, &pairs[i].1);
        let dim = rank_rows(f, &rows);
        AvKey::from_parts(dim, rows)
    });
    let n = pairs.len();
    let parts = exec.map_chunks(n, 8, |range| {
        let (mut dim2, mut hits) = (0u64, Vec::new());
        for i in range {
            for j in 0..n {
                if key_intersection_dim(f, &keys[i], &keys[j]) != 2 {
                    continue;
                }
                dim2 += 1;
                let ((x, y), (x2, y2)) = (&pairs[i], &pairs[j]);
                let distinct_planes = rank_rows(f, &[*x, *y, *x2, *y2]) > 2;
                if distinct_planes && stable_spans(f, x, y, x2, y2) {
                    hits.push((i, j));
                }
            }
        }
        (dim2, hits)
    });
    let dim2: u64 = parts.iter().map(|p| p.0).sum();
    let hits: Vec<(usize, usize)> = parts.into_iter().flat_map(|p| p.1).collect();
    let fmt3 = |v: &Vec3| format!("[{},{},{}]", f.format(v[0]), f.format(v[1]), f.format(v[2]));
    for &(i, j) in hits.iter().take(max_witnesses) {
        let ((x, y), (x2, y2)) = (&pairs[i], &pairs[j]);
        draft.witnesses.push(format!("x = {}, y = {}, x' = {}, y' = {}", fmt3(x), fmt3(y), fmt3(x2), fmt3(y2)));
    }
    draft.stat("independent_pairs", n as u64);
    draft.stat("dim2_quadruples", dim2);
    draft.stat("hypothesis_hits", hits.len() as u64);
    let d_is_one = spec.d_product() == f.one();
    let passed = d_is_one || hits.is_empty();
    let summary = match (d_is_one, hits.is_empty()) {
        (true, _) => format!("d = 1: {} hits logged (no constraint)", hits.len()),
        (false, true) => "d != 1: no 2-dim intersection under the hypotheses".to_string(),
        (false, false) => "d != 1 but a 2-dim intersection satisfies the hypotheses".to_string(),
    };
    let counterexample = (!passed).then(|| draft.witnesses.first().cloned()).flatten();
    let mut v = draft.finish(Some(AlgebraHeader::split(spec)), q, passed, (n * n) as u64, summary, counterexample);
    v.heuristic = true;
    v
}
