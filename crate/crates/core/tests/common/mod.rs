#![allow(dead_code)]

use std::sync::Arc;

use albert::algebra3::{Algebra3, TwistedFieldSpec};
use albert::engine::{AlgebraHeader, AvAtlas, PairVector};
use albert::gf::{Fe, Field, FieldTower, Gf, KElem};
use albert::par::Exec;
use albert::split_albert::SplitAlbertSpec;

pub fn field(q: u64) -> Arc<Gf> {
    Arc::new(Gf::standard(q).unwrap())
}

pub fn tower(q: u64) -> Arc<FieldTower> {
    Arc::new(FieldTower::standard(field(q)).unwrap())
}

/// `c = -1`: a commutative twisted field, valid in odd characteristic.
pub fn commutative(q: u64) -> TwistedFieldSpec {
    let tw = tower(q);
    let f = tw.base().clone();
    let c = tw.embed(f.neg(f.one()));
    TwistedFieldSpec::new(tw, c).unwrap()
}

/// Every `c` in `K` with `N(c) = target`, in element order.
pub fn with_norm(q: u64, target: Fe) -> Vec<TwistedFieldSpec> {
    let tw = tower(q);
    tw.nonzero_elements()
        .filter(|&c| tw.norm(c).unwrap() == target)
        .map(|c| TwistedFieldSpec::new(tw.clone(), c).unwrap())
        .collect()
}

/// A `c` with `N(c) = -1` outside `F`, so the tensor is not commutative.
pub fn commutative_class_noncommutative_tensor(q: u64) -> TwistedFieldSpec {
    let f = field(q);
    with_norm(q, f.neg(f.one()))
        .into_iter()
        .find(|s| !s.tower().is_base(s.c()))
        .unwrap()
}

pub fn split(q: u64, d: [usize; 3]) -> SplitAlbertSpec<Gf> {
    let f = field(q);
    SplitAlbertSpec::new(f.clone(), d.map(|i| f.fe(i))).unwrap()
}

pub fn pv(f: &Gf, s: &str) -> PairVector {
    PairVector::parse(f, s).unwrap()
}

pub fn k_elem(tw: &FieldTower, i: u64) -> KElem {
    tw.element(i)
}

pub struct Built {
    pub spec: TwistedFieldSpec,
    pub alg: Algebra3,
    pub atlas: AvAtlas,
    pub header: AlgebraHeader,
}

pub fn build(spec: TwistedFieldSpec, exec: &Exec) -> Built {
    let alg = spec.to_structure_constants();
    let atlas = AvAtlas::build(&alg, exec);
    let header = AlgebraHeader::twisted(&spec);
    Built { spec, alg, atlas, header }
}
