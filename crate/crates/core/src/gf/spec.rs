use serde::{Deserialize, Serialize};

use super::{is_prime, prime_power};
use crate::error::{Error, Result};

/// `GF(p^m) = GF(p)[u]/(modulus)`. Serializes as `{p, m, modulus_coeffs}`
/// with the modulus little-endian and monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus_coeffs: Vec<u32>,
}

/// Element of a [`FieldSpec`] as a little-endian coefficient vector of
/// length `m`, each coefficient reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

const MAX_TRIAL_DEGREE: u32 = 6;

impl FieldSpec {
    /// Validates `p` and the modulus. Irreducibility is decided by root
    /// search for `m <= 3` and by trial division up to degree `m / 2` for
    /// `m <= 6`; larger degrees are refused.
    pub fn new(p: u32, modulus_coeffs: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 15 {
            return Err(Error::usage(format!("characteristic {p} is not a supported prime")));
        }
        if modulus_coeffs.len() < 2 {
            return Err(Error::usage("modulus must have degree at least 1"));
        }
        if modulus_coeffs.iter().any(|&c| c >= p) {
            return Err(Error::usage(format!("modulus coefficients must lie in 0..{p}")));
        }
        if *modulus_coeffs.last().unwrap() != 1 {
            return Err(Error::usage("modulus must be monic"));
        }
        let m = (modulus_coeffs.len() - 1) as u32;
        if m > MAX_TRIAL_DEGREE {
            return Err(Error::usage(format!(
                "extension degree {m} exceeds the supported maximum {MAX_TRIAL_DEGREE}"
            )));
        }
        if !poly_irreducible(&modulus_coeffs, p) {
            return Err(Error::usage(format!("modulus {modulus_coeffs:?} is reducible over GF({p})")));
        }
        Ok(FieldSpec { p, m, modulus_coeffs })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, vec![0, 1])
    }

    /// `GF(q)` with the least irreducible modulus of degree `m`, scanning
    /// the non-leading coefficients `(a_0, .., a_{m-1})` by the index
    /// `a_0 + a_1 p + ..` in increasing order.
    pub fn standard(q: u64) -> Result<Self> {
        let (p, m) =
            prime_power(q).ok_or_else(|| Error::usage(format!("{q} is not a prime power")))?;
        if m == 1 {
            return Self::prime(p);
        }
        if m > MAX_TRIAL_DEGREE {
            return Err(Error::usage(format!("GF({q}) needs degree {m} > {MAX_TRIAL_DEGREE}")));
        }
        let count = (p as u64).pow(m);
        for n in 0..count {
            let mut coeffs = digits(n, p, m as usize);
            coeffs.push(1);
            if poly_irreducible(&coeffs, p) {
                return Self::new(p, coeffs);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {m} over GF({p})")))
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> FieldElem {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = 1;
        FieldElem { coeffs }
    }

    /// Builds an element, reducing each coefficient mod `p`.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.m as usize {
            return Err(Error::usage(format!(
                "expected {} coefficients for GF({}), got {}",
                self.m,
                self.order(),
                coeffs.len()
            )));
        }
        Ok(FieldElem { coeffs: coeffs.iter().map(|c| c % self.p).collect() })
    }

    pub fn from_index(&self, index: u64) -> FieldElem {
        FieldElem { coeffs: digits(index % self.order(), self.p, self.m as usize) }
    }

    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        if a.coeffs.len() != self.m as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::usage(format!(
                "element {:?} does not belong to GF({})",
                a.coeffs,
                self.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect();
        Ok(FieldElem { coeffs })
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(FieldElem { coeffs })
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut rem = poly_rem(&prod, &self.modulus_coeffs, self.p);
        rem.resize(self.m as usize, 0);
        Ok(FieldElem { coeffs: rem })
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> Result<FieldElem> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::domain("inverse of zero"));
        }
        self.pow(a, self.order() - 2)
    }
}

fn digits(mut n: u64, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % base as u64) as u32);
        n /= base as u64;
    }
    out
}

fn trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &mk) in m.iter().enumerate() {
            let sub = lead * mk % p;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn eval(poly: &[u32], x: u32, p: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Root search for degree <= 3, trial division by monic polynomials of degree
/// up to `deg / 2` otherwise.
fn poly_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    if deg <= 3 {
        return (0..p).all(|x| eval(f, x, p) != 0);
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = digits(n, p, d);
            g.push(1);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
