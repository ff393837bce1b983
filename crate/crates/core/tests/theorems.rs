mod common;

use albert::algebra3::{isotopy_witness, IsotopyClass, TwistedFieldSpec};
use albert::engine::{
    construct_two_dim_partner, independent, intersection, intersection_dim, plane_representatives,
    search_theorem_7_2_analogue, verify_split_theorem_3_1, verify_theorem_b, AlgebraHeader, AvAtlas, PairVector,
    SweepMode,
};
use albert::gf::{Field, FieldTower};
use albert::linalg::Subspace;
use albert::par::Exec;
use albert::split_albert::SplitAlbertSpec;
use albert::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{commutative, field, pv, split, tower, with_norm};

#[test]
fn analogue_search_finds_nothing_over_gf4() {
    let exec = Exec::parallel(2);
    for d in [[2, 1, 1], [3, 1, 1]] {
        let v = search_theorem_7_2_analogue(&split(4, d), &exec, 3);
        assert!(v.heuristic);
        assert!(v.passed, "{}", v.summary);
        assert_eq!(v.stats["hypothesis_hits"], 0);
        assert_eq!(v.stats["independent_pairs"], 63 * 60);
    }
}

#[test]
fn analogue_search_logs_hits_when_d_is_one() {
    let v = search_theorem_7_2_analogue(&split(3, [1, 1, 1]), &Exec::sequential(), 4);
    assert!(v.passed && v.heuristic);
    assert!(v.stats["hypothesis_hits"] > 0);
    assert_eq!(v.witnesses.len(), 4);
}

#[test]
fn partner_with_two_dim_intersection_is_unique() {
    let alg = commutative(3).to_structure_constants();
    let f = alg.field().clone();
    let all: Vec<[_; 3]> = albert::algebra3::vectors3(&f).collect();
    for v in plane_representatives(&f) {
        for x2 in all.iter().filter(|x2| independent(&f, &v.x, x2)) {
            let hits: Vec<PairVector> = all
                .iter()
                .map(|y2| PairVector::new(*x2, *y2))
                .filter(|w| intersection_dim(&alg, &v, w) == 2)
                .collect();
            assert_eq!(hits.len(), 1, "v = {}, x' = {x2:?}", v.format(&f));
            let w = construct_two_dim_partner(&alg, &v, x2).unwrap();
            assert_eq!(hits[0], w);
            // Av ∩ Av' = <x', y'>v = <x, y>v'
            let span_of = |a: &[[_; 3]; 2], u: &PairVector| {
                let rows: Vec<Vec<_>> =
                    a.iter().map(|a| PairVector::new(alg.mul(a, &u.x), alg.mul(a, &u.y)).flatten().to_vec()).collect();
                Subspace::span(&*f, 6, &rows).unwrap()
            };
            let meet = intersection(&alg, &v, &w);
            assert_eq!(meet, span_of(&[w.x, w.y], &v));
            assert_eq!(meet, span_of(&[v.x, v.y], &w));
        }
    }
}

#[test]
fn partner_construction_rejects_bad_input() {
    let noncomm = with_norm(4, field(4).fe(2)).remove(0).to_structure_constants();
    let f4 = noncomm.field().clone();
    let v4 = pv(&f4, "[1,0,0],[0,1,0]");
    assert!(matches!(construct_two_dim_partner(&noncomm, &v4, &[f4.zero(), f4.zero(), f4.one()]), Err(Error::Usage(_))));
    let alg = commutative(3).to_structure_constants();
    let f = alg.field().clone();
    let degenerate = pv(&f, "[1,0,0],[2,0,0]");
    assert!(construct_two_dim_partner(&alg, &degenerate, &[f.zero(), f.one(), f.zero()]).is_err());
}

#[test]
fn theorem_b_reports_a_counterexample_for_a_mislabelled_class() {
    let exec = Exec::sequential();
    let spec = commutative(3);
    let alg = spec.to_structure_constants();
    let atlas = AvAtlas::build(&alg, &exec);
    let v = verify_theorem_b(&alg, AlgebraHeader::twisted(&spec), IsotopyClass::NonCommutativeClass, &atlas, &exec);
    assert!(!v.passed);
    assert!(v.counterexample.as_deref().unwrap().starts_with("v = "));
    assert_eq!(v.stats["plane_representatives"], 13);
}

#[test]
fn isotopy_witness_exists_exactly_for_equal_norms() {
    let tw = tower(5);
    let f = tw.base().clone();
    let minus_one = with_norm(5, f.neg(f.one()));
    let (c, c2) = (minus_one[0].c(), minus_one[7].c());
    let w = isotopy_witness(&tw, c, c2).unwrap();
    assert_eq!(tw.div(tw.frobenius(w.a), w.a).unwrap(), tw.div(c2, c).unwrap());
    let other = with_norm(5, f.fe(2)).remove(0).c();
    assert!(matches!(isotopy_witness(&tw, c, other), Err(Error::NoWitness(_))));
}

#[test]
fn twisted_field_preconditions() {
    let gf2 = FieldTower::standard(field(2)).map(std::sync::Arc::new).unwrap();
    let err = TwistedFieldSpec::new(gf2.clone(), gf2.one()).unwrap_err();
    assert!(err.to_string().contains("norm"), "{err}");
    let tw = tower(3);
    assert!(TwistedFieldSpec::new(tw.clone(), tw.zero()).is_err());
    assert!(TwistedFieldSpec::new(tw.clone(), tw.one()).is_err());
    let s = TwistedFieldSpec::new(tw.clone(), tw.embed(tw.base().fe(2))).unwrap();
    assert_eq!(s.isotopy_class(), IsotopyClass::CommutativeIsotopic);
    assert!(s.to_structure_constants().is_commutative());
    assert!(s.to_structure_constants().is_division());
    let u = TwistedFieldSpec::unchecked(tw.clone(), tw.one());
    assert!(!u.to_structure_constants().is_division());
}

#[test]
fn split_isomorphisms_intertwine() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [5u64, 7] {
        let f = field(q);
        let nonzero = |rng: &mut ChaCha8Rng| f.fe(rng.gen_range(1..f.q()));
        for _ in 0..20 {
            let d = [0; 3].map(|_| nonzero(&mut rng));
            let Ok(spec) = SplitAlbertSpec::new(f.clone(), d) else { continue };
            let (r, s) = ([0; 3].map(|_| nonzero(&mut rng)), [0; 3].map(|_| nonzero(&mut rng)));
            let (target, iso) = spec.scale_isomorphism(r, s).unwrap();
            assert!(spec.intertwines(&target, &iso));
            assert_eq!(target.d_product(), spec.d_product());
            let (target, iso) = spec.cyclic_isomorphism();
            assert!(spec.intertwines(&target, &iso));
            let (target, iso) = spec.reversal_isomorphism();
            assert!(spec.intertwines(&target, &iso));
            assert_eq!(target.d_product(), f.inv(spec.d_product()).unwrap());
        }
    }
}

#[test]
fn split_criterion_sampled_at_seven() {
    let v = verify_split_theorem_3_1(&split(7, [2, 3, 5]), SweepMode::Sampled { samples: 3000, seed: 0 }, &Exec::sequential());
    assert!(v.passed, "{:?}", v.counterexample);
    assert!(v.stats["equal_subspace_quadruples"] >= 2000);
}

#[test]
fn split_spec_rejects_minus_one() {
    let f = field(5);
    assert!(matches!(SplitAlbertSpec::new(f.clone(), [f.fe(2), f.fe(3), f.fe(4)]), Err(Error::Domain(_))));
}
