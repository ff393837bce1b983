//! Finite fields: a schoolbook reference implementation over coefficient
//! vectors ([`FieldSpec`]), table-backed small fields for the hot loops
//! ([`Gf`]), and the cubic tower `K = F[t]/(f)` over a base field
//! ([`FieldTower`]).
//!
//! Element order everywhere is the *index order*: an element of `GF(p^m)`
//! with coefficients `c_0 + c_1 u + ... + c_{m-1} u^{m-1}` has index
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, so iteration starts at `0`, then
//! `1`. Tower elements `a_0 + a_1 t + a_2 t^2` have index
//! `idx(a_0) + idx(a_1) q + idx(a_2) q^2`.

mod spec;
mod table;
mod tower;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

pub use spec::{FieldElem, FieldSpec};
pub use table::{Fe, Gf};
pub use tower::{find_cubic_modulus, FieldTower, KElem};

/// Arithmetic shared by the table fields and the cubic towers, so that
/// linear algebra and the split algebras can run over either.
pub trait Field: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `Err(Domain)` for zero.
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;

    /// The element with the given index (see the module docs for the order).
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: Self::Elem) -> u64;

    fn format(&self, a: Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under `Z -> F`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        let r = n.rem_euclid(p);
        let mut acc = self.zero();
        for _ in 0..r {
            acc = self.add(acc, self.one());
        }
        acc
    }

    /// All elements in index order, starting at zero.
    fn elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    fn nonzero_elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (1..self.order()).map(move |i| self.element(i))
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}
