use std::fmt;
use std::sync::Arc;

use super::{Fe, Field, Gf};
use crate::error::{Error, Result};

/// Element `a_0 + a_1 t + a_2 t^2` of the cubic extension `K = F[t]/(f)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct KElem(pub [Fe; 3]);

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{}, {}, {}]", self.0[0].0, self.0[1].0, self.0[2].0)
    }
}

const MAX_TOWER_BASE: usize = 64;

/// `F = GF(q)` with its cubic extension `K = F[t]/(f)`, `f` monic and
/// irreducible. Frobenius `x -> x^q` is tabulated once at construction.
pub struct FieldTower {
    base: Arc<Gf>,
    cubic: [Fe; 4],
    frob: Vec<KElem>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(q = {}, f = {})", self.base.q(), self.cubic_string())
    }
}

/// Least monic cubic over `base` without a root, scanning `(f_0, f_1, f_2)`
/// for `f = t^3 + f_2 t^2 + f_1 t + f_0` by increasing
/// `idx(f_0) + idx(f_1) q + idx(f_2) q^2`. Returns `[f_0, f_1, f_2, 1]`.
pub fn find_cubic_modulus(base: &Gf) -> [Fe; 4] {
    let q = base.q();
    for n in 0..q * q * q {
        let f = [base.fe(n % q), base.fe((n / q) % q), base.fe(n / (q * q)), Fe::ONE];
        if !has_root(base, &f) {
            return f;
        }
    }
    unreachable!("every finite field has an irreducible cubic")
}

fn has_root(base: &Gf, f: &[Fe; 4]) -> bool {
    base.elements().any(|a| {
        let v = f.iter().rev().fold(Fe::ZERO, |acc, &c| base.add(base.mul(acc, a), c));
        v == Fe::ZERO
    })
}

impl FieldTower {
    pub fn new(base: Arc<Gf>, cubic: [Fe; 4]) -> Result<Self> {
        if base.q() > MAX_TOWER_BASE {
            return Err(Error::usage(format!(
                "cubic towers are limited to base fields of order <= {MAX_TOWER_BASE}"
            )));
        }
        if cubic[3] != Fe::ONE {
            return Err(Error::usage("cubic modulus must be monic"));
        }
        if cubic.iter().any(|c| c.index() >= base.q()) {
            return Err(Error::usage("cubic modulus coefficient outside the base field"));
        }
        if has_root(&base, &cubic) {
            return Err(Error::usage("cubic modulus has a root in the base field"));
        }
        let mut tower = FieldTower { base, cubic, frob: Vec::new() };
        let q = tower.base.q() as u64;
        let frob: Vec<KElem> = (0..q * q * q).map(|i| tower.pow(tower.element(i), q)).collect();
        tower.frob = frob;
        Ok(tower)
    }

    /// Tower over `base` with the cubic from [`find_cubic_modulus`].
    pub fn standard(base: Arc<Gf>) -> Result<Self> {
        let cubic = find_cubic_modulus(&base);
        Self::new(base, cubic)
    }

    pub fn base(&self) -> &Arc<Gf> {
        &self.base
    }

    pub fn q(&self) -> usize {
        self.base.q()
    }

    /// `[f_0, f_1, f_2, 1]`.
    pub fn cubic(&self) -> [Fe; 4] {
        self.cubic
    }

    pub fn cubic_string(&self) -> String {
        let f = &*self.base;
        let mut terms = vec!["t^3".to_string()];
        for (k, &c) in self.cubic[..3].iter().enumerate().rev() {
            if c == Fe::ZERO {
                continue;
            }
            let coef = f.format(c);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            terms.push(match (k, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "t".to_string(),
                (1, _) => format!("{coef}t"),
                (_, "1") => format!("t^{k}"),
                _ => format!("{coef}t^{k}"),
            });
        }
        terms.join("+")
    }

    pub fn embed(&self, a: Fe) -> KElem {
        KElem([a, Fe::ZERO, Fe::ZERO])
    }

    /// The element `t^i` of the standard `F`-basis `(1, t, t^2)`.
    pub fn basis(&self, i: usize) -> KElem {
        let mut e = [Fe::ZERO; 3];
        e[i] = Fe::ONE;
        KElem(e)
    }

    pub fn is_base(&self, x: KElem) -> bool {
        x.0[1] == Fe::ZERO && x.0[2] == Fe::ZERO
    }

    /// `x^q`, the generator of `Gal(K/F)`.
    pub fn frobenius(&self, x: KElem) -> KElem {
        self.frob[self.index_of(x) as usize]
    }

    pub fn frobenius_pow(&self, x: KElem, k: usize) -> KElem {
        (0..k % 3).fold(x, |acc, _| self.frobenius(acc))
    }

    /// `x * x^sigma * x^(sigma^2)`, returned as a base-field element.
    pub fn norm(&self, x: KElem) -> Result<Fe> {
        let s1 = self.frobenius(x);
        let s2 = self.frobenius(s1);
        let n = self.mul(self.mul(x, s1), s2);
        if !self.is_base(n) {
            return Err(Error::Internal(format!(
                "norm of {} is not fixed by Frobenius; the tower is broken",
                self.format(x)
            )));
        }
        Ok(n.0[0])
    }
}

impl Field for FieldTower {
    type Elem = KElem;

    fn order(&self) -> u64 {
        (self.base.q() as u64).pow(3)
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    fn zero(&self) -> KElem {
        KElem::default()
    }

    fn one(&self) -> KElem {
        KElem([Fe::ONE, Fe::ZERO, Fe::ZERO])
    }

    fn add(&self, a: KElem, b: KElem) -> KElem {
        let f = &*self.base;
        KElem([f.add(a.0[0], b.0[0]), f.add(a.0[1], b.0[1]), f.add(a.0[2], b.0[2])])
    }

    fn neg(&self, a: KElem) -> KElem {
        let f = &*self.base;
        KElem([f.neg(a.0[0]), f.neg(a.0[1]), f.neg(a.0[2])])
    }

    /// Schoolbook product followed by reduction with `t^3 = -(f_2 t^2 + f_1 t + f_0)`.
    fn mul(&self, a: KElem, b: KElem) -> KElem {
        let f = &*self.base;
        let mut c = [Fe::ZERO; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] = f.add(c[i + j], f.mul(a.0[i], b.0[j]));
            }
        }
        for k in (3..5).rev() {
            let lead = c[k];
            if lead == Fe::ZERO {
                continue;
            }
            for (j, &fj) in self.cubic[..3].iter().enumerate() {
                c[k - 3 + j] = f.sub(c[k - 3 + j], f.mul(lead, fj));
            }
            c[k] = Fe::ZERO;
        }
        KElem([c[0], c[1], c[2]])
    }

    fn inv(&self, a: KElem) -> Result<KElem> {
        if a == self.zero() {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    fn element(&self, index: u64) -> KElem {
        let q = self.base.q() as u64;
        assert!(index < q * q * q, "index {index} out of range for GF({})", q * q * q);
        KElem([
            self.base.fe((index % q) as usize),
            self.base.fe(((index / q) % q) as usize),
            self.base.fe((index / (q * q)) as usize),
        ])
    }

    fn index_of(&self, a: KElem) -> u64 {
        let q = self.base.q() as u64;
        a.0[0].0 as u64 + q * a.0[1].0 as u64 + q * q * a.0[2].0 as u64
    }

    /// `[a0,a1,a2]` with base-field coefficient strings.
    fn format(&self, a: KElem) -> String {
        format!(
            "[{},{},{}]",
            self.base.format(a.0[0]),
            self.base.format(a.0[1]),
            self.base.format(a.0[2])
        )
    }

    fn parse(&self, s: &str) -> Result<KElem> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("expected '[a0,a1,a2]', got '{s}'")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(format!("expected three coordinates in '{s}'")));
        }
        Ok(KElem([
            self.base.parse(parts[0])?,
            self.base.parse(parts[1])?,
            self.base.parse(parts[2])?,
        ]))
    }
}
