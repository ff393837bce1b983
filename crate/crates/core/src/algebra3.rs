//! Three-dimensional algebras over `F = GF(q)` as structure tensors, and the
//! twisted fields `(K, mu)` with `mu(x, y) = x y^sigma - c x^sigma y`.
//!
//! No identity element is imposed: an algebra is just its bilinear product.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, Field, FieldTower, Gf, KElem};
use crate::linalg::MatF;

pub type Vec3 = [Fe; 3];
pub type Mat3 = [[Fe; 3]; 3];

/// Whether a twisted field is isotopic to a commutative algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsotopyClass {
    CommutativeIsotopic,
    NonCommutativeClass,
}

/// `(K/F, sigma, c)` with `c != 0` and `N(c) != 1`.
#[derive(Clone)]
pub struct TwistedFieldSpec {
    tower: Arc<FieldTower>,
    c: KElem,
}

impl fmt::Debug for TwistedFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedFieldSpec({:?}, c = {})", self.tower, self.tower.format(self.c))
    }
}

impl TwistedFieldSpec {
    pub fn new(tower: Arc<FieldTower>, c: KElem) -> Result<Self> {
        if tower.q() == 2 {
            return Err(Error::domain(
                "no twisted field over GF(2): the norm maps K^x onto GF(2)^x = {1}, so N(c) != 1 cannot hold for c != 0",
            ));
        }
        if c == tower.zero() {
            return Err(Error::domain("c must be nonzero (c = 0 gives an algebra isotopic to the field K)"));
        }
        let n = tower.norm(c)?;
        if n == Fe::ONE {
            return Err(Error::domain(format!(
                "N(c) = 1 for c = {}; mu then has zero divisors",
                tower.format(c)
            )));
        }
        Ok(TwistedFieldSpec { tower, c })
    }

    /// Least `c` (in element order) with `N(c) = target`.
    pub fn with_norm(tower: Arc<FieldTower>, target: Fe) -> Result<Self> {
        let c = lex_least_with_norm(&tower, target)?;
        Self::new(tower, c)
    }

    /// `mu` for any `c`, including the invalid `N(c) = 1` ones. Only useful
    /// for exhibiting what goes wrong there.
    pub fn unchecked(tower: Arc<FieldTower>, c: KElem) -> Self {
        TwistedFieldSpec { tower, c }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn field(&self) -> &Arc<Gf> {
        self.tower.base()
    }

    pub fn c(&self) -> KElem {
        self.c
    }

    pub fn norm_c(&self) -> Fe {
        self.tower.norm(self.c).expect("tower verified at construction")
    }

    pub fn mu(&self, x: KElem, y: KElem) -> KElem {
        mu_with(&self.tower, self.c, x, y)
    }

    /// Commutative-isotopic exactly when `N(c) = -1`.
    pub fn isotopy_class(&self) -> IsotopyClass {
        let f = self.field();
        if self.norm_c() == f.neg(f.one()) {
            IsotopyClass::CommutativeIsotopic
        } else {
            IsotopyClass::NonCommutativeClass
        }
    }

    /// Structure constants of `mu` in the basis `(1, t, t^2)`.
    pub fn to_structure_constants(&self) -> Algebra3 {
        let tw = &self.tower;
        let mut tensor = [[[Fe::ZERO; 3]; 3]; 3];
        for (i, plane) in tensor.iter_mut().enumerate() {
            for (j, out) in plane.iter_mut().enumerate() {
                *out = self.mu(tw.basis(i), tw.basis(j)).0;
            }
        }
        Algebra3 { field: tw.base().clone(), tensor }
    }

    pub fn record(&self) -> TwistedFieldRecord {
        let f = self.field();
        TwistedFieldRecord {
            q: f.q(),
            f_coeffs: self.tower.cubic().iter().map(|&c| f.format(c)).collect(),
            c: self.tower.format(self.c),
        }
    }
}

fn mu_with(tw: &FieldTower, c: KElem, x: KElem, y: KElem) -> KElem {
    let first = tw.mul(x, tw.frobenius(y));
    let second = tw.mul(c, tw.mul(tw.frobenius(x), y));
    tw.sub(first, second)
}

pub fn lex_least_with_norm(tower: &FieldTower, target: Fe) -> Result<KElem> {
    tower
        .nonzero_elements()
        .find(|&c| tower.norm(c).ok() == Some(target))
        .ok_or_else(|| {
            Error::domain(format!("no nonzero c has norm {}", tower.base().format(target)))
        })
}

/// Serialized form `{q, f_coeffs, c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedFieldRecord {
    pub q: usize,
    pub f_coeffs: Vec<String>,
    pub c: String,
}

impl TwistedFieldRecord {
    pub fn to_spec(&self, base: Arc<Gf>) -> Result<TwistedFieldSpec> {
        if base.q() != self.q {
            return Err(Error::usage(format!("record is over GF({}), field is GF({})", self.q, base.q())));
        }
        if self.f_coeffs.len() != 4 {
            return Err(Error::parse("f_coeffs must hold four coefficients"));
        }
        let mut cubic = [Fe::ZERO; 4];
        for (slot, s) in cubic.iter_mut().zip(&self.f_coeffs) {
            *slot = base.parse(s)?;
        }
        let tower = Arc::new(FieldTower::new(base, cubic)?);
        let c = tower.parse(&self.c)?;
        TwistedFieldSpec::new(tower, c)
    }
}

/// `a` with `c'/c = a^sigma / a`, certified on basis pairs by
/// `a mu'(x, y) = mu(a x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotopyWitness {
    pub a: KElem,
}

/// Scans `K^x` in element order for an isotopy witness from `c` to `c_prime`.
pub fn isotopy_witness(tower: &FieldTower, c: KElem, c_prime: KElem) -> Result<IsotopyWitness> {
    let (nc, ncp) = (tower.norm(c)?, tower.norm(c_prime)?);
    if nc != ncp {
        return Err(Error::NoWitness(format!(
            "N(c) = {} differs from N(c') = {}",
            tower.base().format(nc),
            tower.base().format(ncp)
        )));
    }
    if nc == Fe::ONE || c == tower.zero() {
        return Err(Error::usage("isotopy witnesses are defined for nonzero c with N(c) != 1"));
    }
    let ratio = tower.div(c_prime, c)?;
    let a = tower
        .nonzero_elements()
        .find(|&a| tower.div(tower.frobenius(a), a).ok() == Some(ratio))
        .ok_or_else(|| Error::NoWitness("no a with a^sigma / a = c'/c".into()))?;
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (tower.basis(i), tower.basis(j));
            let lhs = tower.mul(a, mu_with(tower, c_prime, x, y));
            let rhs = mu_with(tower, c, tower.mul(a, x), y);
            if lhs != rhs {
                return Err(Error::Internal(format!("witness fails on basis pair ({i}, {j})")));
            }
        }
    }
    Ok(IsotopyWitness { a })
}

/// A 3-dimensional algebra over `F`: `e_i e_j = sum_k tensor[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra3 {
    field: Arc<Gf>,
    tensor: [[[Fe; 3]; 3]; 3],
}

impl fmt::Debug for Algebra3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra3(GF({}), {:?})", self.field.q(), self.tensor)
    }
}

impl Algebra3 {
    pub fn new(field: Arc<Gf>, tensor: [[[Fe; 3]; 3]; 3]) -> Result<Self> {
        if tensor.iter().flatten().flatten().any(|e| e.index() >= field.q()) {
            return Err(Error::usage("tensor entry outside the base field"));
        }
        Ok(Algebra3 { field, tensor })
    }

    /// The associative field product of `K` in the basis `(1, t, t^2)`.
    pub fn field_product(tower: &FieldTower) -> Self {
        let mut tensor = [[[Fe::ZERO; 3]; 3]; 3];
        for (i, plane) in tensor.iter_mut().enumerate() {
            for (j, out) in plane.iter_mut().enumerate() {
                *out = tower.mul(tower.basis(i), tower.basis(j)).0;
            }
        }
        Algebra3 { field: tower.base().clone(), tensor }
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn tensor(&self) -> &[[[Fe; 3]; 3]; 3] {
        &self.tensor
    }

    pub fn mul(&self, a: &Vec3, b: &Vec3) -> Vec3 {
        let f = &*self.field;
        let mut out = [Fe::ZERO; 3];
        for i in 0..3 {
            if a[i] == Fe::ZERO {
                continue;
            }
            for j in 0..3 {
                let ab = f.mul(a[i], b[j]);
                if ab == Fe::ZERO {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(ab, self.tensor[i][j][k]));
                }
            }
        }
        out
    }

    /// Matrix of `L_a: b -> a b`, acting on column vectors.
    pub fn left_mul_matrix(&self, a: &Vec3) -> Mat3 {
        let f = &*self.field;
        let mut m = [[Fe::ZERO; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(a[i], self.tensor[i][j][k])));
            }
        }
        m
    }

    /// Matrix of `R_a: b -> b a`, acting on column vectors.
    pub fn right_mul_matrix(&self, a: &Vec3) -> Mat3 {
        let f = &*self.field;
        let mut m = [[Fe::ZERO; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(a[j], self.tensor[i][j][k])));
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.tensor[i][j] == self.tensor[j][i]))
    }

    /// Exhaustive: every nonzero `a` has invertible `L_a` and `R_a`.
    pub fn is_division(&self) -> bool {
        self.first_zero_divisor().is_none()
    }

    /// First nonzero `a` (in element order) with a singular `L_a` or `R_a`.
    pub fn first_zero_divisor(&self) -> Option<Vec3> {
        let f = &*self.field;
        vectors3(f).skip(1).find(|a| {
            det3(f, &self.left_mul_matrix(a)) == Fe::ZERO || det3(f, &self.right_mul_matrix(a)) == Fe::ZERO
        })
    }

    pub fn record(&self) -> Algebra3Record {
        let f = &*self.field;
        Algebra3Record {
            q: f.q(),
            tensor: self.tensor.iter().flatten().flatten().map(|&x| f.format(x)).collect(),
        }
    }
}

/// Serialized form `{q, tensor}`, the 27 entries in `[i][j][k]` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebra3Record {
    pub q: usize,
    pub tensor: Vec<String>,
}

impl Algebra3Record {
    pub fn to_algebra(&self, field: Arc<Gf>) -> Result<Algebra3> {
        if field.q() != self.q {
            return Err(Error::usage(format!("record is over GF({}), field is GF({})", self.q, field.q())));
        }
        if self.tensor.len() != 27 {
            return Err(Error::parse(format!("tensor has {} entries, expected 27", self.tensor.len())));
        }
        let mut tensor = [[[Fe::ZERO; 3]; 3]; 3];
        for (n, s) in self.tensor.iter().enumerate() {
            tensor[n / 9][(n / 3) % 3][n % 3] = field.parse(s)?;
        }
        Algebra3::new(field, tensor)
    }
}

/// All of `F^3` in lexicographic element order.
pub fn vectors3(f: &Gf) -> impl Iterator<Item = Vec3> + '_ {
    let q = f.q();
    (0..q * q * q).map(move |n| [f.fe(n / (q * q)), f.fe((n / q) % q), f.fe(n % q)])
}

pub fn det3(f: &Gf, m: &Mat3) -> Fe {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

pub fn mat3_to_matf(m: &Mat3) -> MatF<Fe> {
    MatF::from_fn(3, 3, |i, j| m[i][j])
}

pub fn apply3(f: &Gf, m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [Fe::ZERO; 3];
    for (o, row) in out.iter_mut().zip(m) {
        *o = (0..3).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(row[j], v[j])));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(q: u64) -> Arc<FieldTower> {
        Arc::new(FieldTower::standard(Arc::new(Gf::standard(q).unwrap())).unwrap())
    }

    #[test]
    fn mu_is_bilinear_at_zero() {
        let tw = tower(3);
        let spec = TwistedFieldSpec::with_norm(tw.clone(), tw.base().fe(2)).unwrap();
        for x in tw.elements() {
            assert_eq!(spec.mu(tw.zero(), x), tw.zero());
            assert_eq!(spec.mu(x, tw.zero()), tw.zero());
        }
    }

    #[test]
    fn c_minus_one_is_commutative() {
        for q in [3, 5] {
            let tw = tower(q);
            let minus_one = tw.neg(tw.one());
            let spec = TwistedFieldSpec::new(tw.clone(), minus_one).unwrap();
            for x in tw.elements() {
                for y in tw.elements().step_by(7) {
                    assert_eq!(spec.mu(x, y), spec.mu(y, x));
                }
            }
            assert!(spec.to_structure_constants().is_commutative());
        }
    }

    #[test]
    fn c_one_has_zero_divisors() {
        let tw = tower(3);
        let bad = TwistedFieldSpec::unchecked(tw.clone(), tw.one());
        for x in tw.elements() {
            assert_eq!(bad.mu(x, x), tw.zero());
        }
        assert!(TwistedFieldSpec::new(tw.clone(), tw.one()).is_err());
    }

    #[test]
    fn structure_constants_agree_with_mu() {
        let tw = tower(4);
        let spec = TwistedFieldSpec::with_norm(tw.clone(), tw.base().parse("u").unwrap()).unwrap();
        let alg = spec.to_structure_constants();
        for x in tw.elements().step_by(5) {
            for y in tw.elements().step_by(3) {
                assert_eq!(alg.mul(&x.0, &y.0), spec.mu(x, y).0);
            }
        }
    }

    #[test]
    fn q2_is_rejected_with_norm_reason() {
        let tw = tower(2);
        let err = TwistedFieldSpec::new(tw.clone(), tw.basis(1)).unwrap_err();
        assert!(err.to_string().contains("GF(2)^x = {1}"));
    }

    #[test]
    fn isotopy_witness_identity_and_mismatch() {
        let tw = tower(4);
        let f = tw.base();
        let c = lex_least_with_norm(&tw, f.parse("u").unwrap()).unwrap();
        assert_eq!(isotopy_witness(&tw, c, c).unwrap().a, tw.one());
        let d = lex_least_with_norm(&tw, f.parse("u+1").unwrap()).unwrap();
        assert!(matches!(isotopy_witness(&tw, c, d), Err(Error::NoWitness(_))));
    }

    #[test]
    fn left_mul_zero_is_zero() {
        let tw = tower(3);
        let alg = TwistedFieldSpec::with_norm(tw.clone(), tw.base().fe(2)).unwrap().to_structure_constants();
        assert_eq!(alg.left_mul_matrix(&[Fe::ZERO; 3]), [[Fe::ZERO; 3]; 3]);
        assert_eq!(alg.right_mul_matrix(&[Fe::ZERO; 3]), [[Fe::ZERO; 3]; 3]);
    }

    #[test]
    fn record_roundtrip() {
        let tw = tower(5);
        let spec = TwistedFieldSpec::with_norm(tw.clone(), tw.base().fe(2)).unwrap();
        let alg = spec.to_structure_constants();
        let back = alg.record().to_algebra(tw.base().clone()).unwrap();
        assert_eq!(back, alg);
        let spec2 = spec.record().to_spec(tw.base().clone()).unwrap();
        assert_eq!(spec2.c(), spec.c());
    }
}
