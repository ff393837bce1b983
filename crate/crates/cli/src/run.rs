use std::sync::Arc;
use std::time::Instant;

use albert::algebra3::{Algebra3, IsotopyClass, TwistedFieldSpec};
use albert::engine::{
    line_profile, per_vector_profile, plane_representatives, predicted_counts, predicted_line_histogram,
    search_theorem_7_2_analogue, verify_pair_normal_forms, verify_split_identities, verify_split_theorem_3_1,
    verify_theorem_a, verify_theorem_b, AlgebraHeader, AvAtlas, CensusReport, PairVector, SweepMode, VectorKind,
};
use albert::gf::{prime_power, Fe, Field, FieldTower, Gf};
use albert::par::Exec;
use albert::split_albert::{split_twisted_field, SplitAlbertSpec};
use albert::{Error, Result};

use crate::output::{BuildReport, FieldInfo, LineCensusReport, LineRow, NormClass, Output, Report, ScanEntry, ScanReport, SplitReport};
use crate::{AlgebraArgs, ClassClaim, Cli, Command, Theorem};

const ALGEBRA_ORDERS: [u64; 6] = [3, 4, 5, 7, 8, 9];

/// Characteristic-polynomial pairs checked exhaustively by `split --d` before sampling.
const SPLIT_PAIRS: u64 = 20_000;

pub fn run(cli: &Cli) -> Result<Output> {
    let exec = executor(cli.workers)?;
    let started = Instant::now();
    let (report, ok) = match &cli.command {
        Command::FieldInfo { q } => (Report::Field(field_info(*q)?), true),
        Command::Build(args) => build(args, started)?,
        Command::Split { algebra, d } => split(algebra, d.as_deref(), cli.seed, started)?,
        Command::Verify { theorem, algebra, d, samples, claim_class } => {
            let v = verify(*theorem, algebra, d.as_deref(), *claim_class, *samples, cli.seed, &exec)?;
            let ok = v.passed;
            (Report::Verdict(v), ok)
        }
        Command::Census { algebra, v, scan_all } => {
            if *scan_all {
                scan_all_census(algebra, &exec, started)?
            } else {
                census(algebra, v.as_deref().expect("clap requires --v without --scan-all"), &exec, started)?
            }
        }
        Command::LineCensus { algebra, v } => line_census(algebra, v, &exec, started)?,
    };
    Ok(Output { report, ok })
}

fn executor(workers: Option<usize>) -> Result<Exec> {
    let n = match workers {
        Some(0) => return Err(Error::Usage("--workers must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok(Exec::parallel(n))
}

fn elapsed(started: Instant) -> u64 {
    started.elapsed().as_millis() as u64
}

fn field(q: u64) -> Result<Arc<Gf>> {
    if prime_power(q).is_none() {
        return Err(Error::Usage(format!("q = {q} is not a prime power")));
    }
    Ok(Arc::new(Gf::standard(q)?))
}

fn tower(f: &Arc<Gf>) -> Result<Arc<FieldTower>> {
    Ok(Arc::new(FieldTower::standard(f.clone())?))
}

fn check_algebra_order(q: u64) -> Result<()> {
    if q == 2 || ALGEBRA_ORDERS.contains(&q) {
        Ok(())
    } else {
        Err(Error::Usage(format!("q must be one of 3, 4, 5, 7, 8, 9 (got {q})")))
    }
}

/// The twisted field named by `--c` or `--norm-target`; without either, the
/// least valid `c`.
fn twisted(args: &AlgebraArgs) -> Result<TwistedFieldSpec> {
    check_algebra_order(args.q)?;
    let f = field(args.q)?;
    let tw = tower(&f)?;
    if args.q == 2 {
        // rejected by the constructor with the norm explanation
        return TwistedFieldSpec::new(tw.clone(), tw.one());
    }
    match (&args.c, &args.norm_target) {
        (Some(c), _) => {
            let c = if c.trim_start().starts_with('[') { tw.parse(c)? } else { tw.embed(f.parse(c)?) };
            TwistedFieldSpec::new(tw, c)
        }
        (None, Some(n)) => TwistedFieldSpec::with_norm(tw, f.parse(n)?),
        (None, None) => {
            let c = tw
                .nonzero_elements()
                .find(|&c| tw.norm(c).is_ok_and(|n| n != Fe::ONE))
                .ok_or_else(|| Error::Internal("no valid c".into()))?;
            TwistedFieldSpec::new(tw, c)
        }
    }
}

fn reject_twisted_args(args: &AlgebraArgs, what: &str) -> Result<()> {
    if args.c.is_some() || args.norm_target.is_some() {
        return Err(Error::Usage(format!("--c and --norm-target do not apply to {what}")));
    }
    Ok(())
}

/// `d` from `d0,d1,d2`; by default `(1, 1, 1)`, or `(a, 1, 1)` with `a` the
/// least element other than `0, 1` in characteristic 2.
fn split_spec(args: &AlgebraArgs, d: Option<&str>) -> Result<SplitAlbertSpec<Gf>> {
    check_algebra_order(args.q)?;
    let f = field(args.q)?;
    let d = match d {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected 'd0,d1,d2', got '{s}'")));
            }
            [f.parse(parts[0])?, f.parse(parts[1])?, f.parse(parts[2])?]
        }
        None => {
            let minus_one = f.neg(f.one());
            let d0 = f.nonzero_elements().find(|&a| a != minus_one).ok_or_else(|| Error::Usage("no valid d".into()))?;
            [d0, f.one(), f.one()]
        }
    };
    SplitAlbertSpec::new(f, d)
}

fn field_info(q: u64) -> Result<FieldInfo> {
    check_algebra_order(q)?;
    let f = field(q)?;
    let tw = tower(&f)?;
    let mut classes: Vec<NormClass> = f
        .nonzero_elements()
        .map(|n| NormClass { norm: f.format(n), count: 0, least_c: String::new(), class: None })
        .collect();
    for c in tw.nonzero_elements() {
        let n = tw.norm(c)?;
        let slot = &mut classes[f.index_of(n) as usize - 1];
        if slot.count == 0 {
            slot.least_c = tw.format(c);
            slot.class = TwistedFieldSpec::new(tw.clone(), c).ok().map(|s| s.isotopy_class());
        }
        slot.count += 1;
    }
    let spec = f.spec();
    Ok(FieldInfo {
        q,
        characteristic: spec.p,
        degree: spec.m,
        base_modulus: albert::engine::modulus_string(&f),
        cubic_modulus: tw.cubic_string(),
        elements: f.elements().map(|a| f.format(a)).collect(),
        norm_classes: classes,
    })
}

fn build(args: &AlgebraArgs, started: Instant) -> Result<(Report, bool)> {
    let spec = twisted(args)?;
    let alg = spec.to_structure_constants();
    let division = alg.is_division();
    let report = BuildReport {
        algebra: AlgebraHeader::twisted(&spec),
        twisted_field: spec.record(),
        structure_constants: alg.record(),
        commutative: alg.is_commutative(),
        division,
        runtime_ms: elapsed(started),
    };
    Ok((Report::Build(report), division))
}

fn split(args: &AlgebraArgs, d: Option<&str>, seed: u64, started: Instant) -> Result<(Report, bool)> {
    if d.is_some() {
        reject_twisted_args(args, "a split Albert algebra given by --d")?;
        let v = verify_split_identities(&split_spec(args, d)?, SPLIT_PAIRS, seed);
        let ok = v.passed;
        return Ok((Report::Verdict(v), ok));
    }
    let spec = twisted(args)?;
    let st = split_twisted_field(&spec)?;
    let tw = spec.tower();
    let (passed, checked, counterexample) = match st.verify_splitting_identity() {
        Ok(n) => (true, n, None),
        Err((x, y)) => (false, 0, Some(format!("x = {}, y = {}", tw.format(x), tw.format(y)))),
    };
    let report = SplitReport { algebra: AlgebraHeader::twisted(&spec), passed, checked, counterexample, runtime_ms: elapsed(started) };
    Ok((Report::Split(report), passed))
}

fn mode(q: u64, exhaustive_up_to: u64, samples: u64, seed: u64) -> SweepMode {
    if q <= exhaustive_up_to {
        SweepMode::Exhaustive
    } else {
        SweepMode::Sampled { samples, seed }
    }
}

fn verify(
    theorem: Theorem,
    args: &AlgebraArgs,
    d: Option<&str>,
    claim: Option<ClassClaim>,
    samples: u64,
    seed: u64,
    exec: &Exec,
) -> Result<albert::engine::Verdict> {
    let q = args.q;
    if claim.is_some() && theorem != Theorem::B {
        return Err(Error::Usage("--claim-class only applies to --theorem B".into()));
    }
    if d.is_some() && matches!(theorem, Theorem::A | Theorem::B | Theorem::T71) {
        return Err(Error::Usage("--d only applies to --theorem 3.1 and 7.2-analogue".into()));
    }
    Ok(match theorem {
        Theorem::A | Theorem::B => {
            let spec = twisted(args)?;
            let alg = spec.to_structure_constants();
            let atlas = AvAtlas::build(&alg, exec);
            let header = AlgebraHeader::twisted(&spec);
            if theorem == Theorem::A {
                verify_theorem_a(&alg, header, &atlas, mode(q, 4, samples, seed))
            } else {
                let class = match claim {
                    Some(ClassClaim::Commutative) => IsotopyClass::CommutativeIsotopic,
                    Some(ClassClaim::Noncommutative) => IsotopyClass::NonCommutativeClass,
                    None => spec.isotopy_class(),
                };
                verify_theorem_b(&alg, header, class, &atlas, exec)
            }
        }
        Theorem::T31 => {
            reject_twisted_args(args, "--theorem 3.1")?;
            verify_split_theorem_3_1(&split_spec(args, d)?, mode(q, 4, samples, seed), exec)
        }
        Theorem::T71 => {
            reject_twisted_args(args, "--theorem 7.1")?;
            // a statement about 2x2 matrix pairs; GF(2) is allowed here
            if q != 2 {
                check_algebra_order(q)?;
            }
            verify_pair_normal_forms(&*field(q)?, mode(q, 3, samples, seed))
        }
        Theorem::T72 => {
            reject_twisted_args(args, "--theorem 7.2-analogue")?;
            search_theorem_7_2_analogue(&split_spec(args, d)?, exec, 5)
        }
    })
}

fn base_vector(alg: &Algebra3, v: &str) -> Result<PairVector> {
    let v = PairVector::parse(alg.field(), v)?;
    if v.is_zero() {
        return Err(Error::Usage("v must be nonzero".into()));
    }
    Ok(v)
}

fn census(args: &AlgebraArgs, v: &str, exec: &Exec, started: Instant) -> Result<(Report, bool)> {
    let spec = twisted(args)?;
    let alg = spec.to_structure_constants();
    let v = base_vector(&alg, v)?;
    let atlas = AvAtlas::build(&alg, exec);
    let nondegenerate = v.classify(alg.field()) == VectorKind::Nondegenerate;
    let profile = per_vector_profile(&alg, &atlas, &v, exec, nondegenerate)?;
    let class = spec.isotopy_class();
    let predicted = predicted_counts(args.q, class, profile.kind).map(|mut p| {
        if nondegenerate {
            p.line_histogram = Some(predicted_line_histogram(args.q, class));
        }
        p
    });
    let report = CensusReport::new(AlgebraHeader::twisted(&spec), &alg, &profile, predicted, elapsed(started));
    let ok = report.matches.unwrap_or(true);
    Ok((Report::Census(report), ok))
}

/// One `v` per `GL_2(F)` orbit of nonzero vectors: the plane representatives
/// and `(z, 0)` with `z` normalized to a leading 1.
fn orbit_representatives(f: &Gf) -> Vec<(PairVector, u64)> {
    let q = f.q() as u64;
    let mut reps: Vec<(PairVector, u64)> =
        plane_representatives(f).into_iter().map(|v| (v, (q * q - 1) * (q * q - q))).collect();
    for z in albert::algebra3::vectors3(f) {
        if z.iter().find(|&&c| c != Fe::ZERO) == Some(&Fe::ONE) {
            reps.push((PairVector::new(z, [Fe::ZERO; 3]), q * q - 1));
        }
    }
    reps
}

fn scan_all_census(args: &AlgebraArgs, exec: &Exec, started: Instant) -> Result<(Report, bool)> {
    let spec = twisted(args)?;
    let alg = spec.to_structure_constants();
    let f = alg.field().clone();
    let atlas = AvAtlas::build(&alg, exec);
    let class = spec.isotopy_class();
    let mut entries = Vec::new();
    for (v, orbit_size) in orbit_representatives(&f) {
        let profile = per_vector_profile(&alg, &atlas, &v, exec, false)?;
        let predicted = predicted_counts(args.q, class, profile.kind);
        let matches = predicted.as_ref().map(|p| *p == profile.counts);
        entries.push(ScanEntry { v: v.format(&f), v_kind: profile.kind, orbit_size, observed: profile.counts, predicted, matches });
    }
    let all_match = entries.iter().all(|e| e.matches != Some(false));
    let report = ScanReport {
        algebra: AlgebraHeader::twisted(&spec),
        vectors_covered: entries.iter().map(|e| e.orbit_size).sum(),
        entries,
        all_match,
        runtime_ms: elapsed(started),
    };
    Ok((Report::Scan(report), all_match))
}

fn line_census(args: &AlgebraArgs, v: &str, exec: &Exec, started: Instant) -> Result<(Report, bool)> {
    let spec = twisted(args)?;
    let alg = spec.to_structure_constants();
    let f = alg.field().clone();
    let v = base_vector(&alg, v)?;
    let atlas = AvAtlas::build(&alg, exec);
    let profile = line_profile(&alg, &atlas, &v, exec)?;
    let predicted = predicted_line_histogram(args.q, spec.isotopy_class());
    let fmt3 = |a: &[Fe; 3]| format!("[{},{},{}]", f.format(a[0]), f.format(a[1]), f.format(a[2]));
    let lines = profile
        .lines
        .iter()
        .map(|l| LineRow { a: fmt3(&l.a), line: l.line.format(&f), count: l.count, in_distinguished_plane: l.in_distinguished_plane })
        .collect();
    let matches = profile.histogram == predicted;
    let report = LineCensusReport {
        algebra: AlgebraHeader::twisted(&spec),
        v: v.format(&f),
        lines,
        histogram: profile.histogram,
        predicted_histogram: predicted,
        matches,
        runtime_ms: elapsed(started),
    };
    Ok((Report::Lines(report), matches))
}
