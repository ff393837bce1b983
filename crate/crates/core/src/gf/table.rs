use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Field, FieldElem, FieldSpec};
use crate::error::{Error, Result};

/// Index of an element of a [`Gf`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Fe(pub(crate) u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

const MAX_TABLE_ORDER: u64 = 1024;

/// A small finite field with Cayley tables filled from the schoolbook
/// arithmetic of its [`FieldSpec`].
#[derive(Clone)]
pub struct Gf {
    spec: FieldSpec,
    q: usize,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({}, modulus {:?})", self.q, self.spec.modulus_coeffs)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Gf {}

impl Gf {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q64 = spec.order();
        if q64 > MAX_TABLE_ORDER {
            return Err(Error::usage(format!(
                "GF({q64}) is larger than the table limit {MAX_TABLE_ORDER}"
            )));
        }
        let q = q64 as usize;
        let elems: Vec<FieldElem> = spec.elements().collect();
        let idx = |e: &FieldElem| Fe(spec.index_of(e) as u16);
        let mut add = vec![Fe::ZERO; q * q];
        let mut mul = vec![Fe::ZERO; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate().skip(i) {
                let s = idx(&spec.add(a, b)?);
                let p = idx(&spec.mul(a, b)?);
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = p;
                mul[j * q + i] = p;
            }
        }
        let neg = elems.iter().map(|a| spec.neg(a).map(|n| idx(&n))).collect::<Result<_>>()?;
        let mut inv = vec![Fe::ZERO; q];
        for (i, a) in elems.iter().enumerate().skip(1) {
            inv[i] = idx(&spec.inv(a)?);
        }
        Ok(Gf { spec, q, add, mul, neg, inv })
    }

    /// `GF(q)` with the standard modulus of [`FieldSpec::standard`].
    pub fn standard(q: u64) -> Result<Self> {
        Self::new(FieldSpec::standard(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn fe(&self, index: usize) -> Fe {
        assert!(index < self.q, "index {index} out of range for GF({})", self.q);
        Fe(index as u16)
    }

    pub fn to_elem(&self, a: Fe) -> FieldElem {
        self.spec.from_index(a.0 as u64)
    }

    pub fn from_elem(&self, a: &FieldElem) -> Result<Fe> {
        if a.coeffs().len() != self.spec.m as usize || a.coeffs().iter().any(|&c| c >= self.spec.p) {
            return Err(Error::usage(format!("{:?} is not an element of GF({})", a.coeffs(), self.q)));
        }
        Ok(Fe(self.spec.index_of(a) as u16))
    }
}

impl Field for Gf {
    type Elem = Fe;

    fn order(&self) -> u64 {
        self.q as u64
    }

    fn characteristic(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    fn one(&self) -> Fe {
        Fe::ONE
    }

    #[inline]
    fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a.index() * self.q + b.index()]
    }

    #[inline]
    fn neg(&self, a: Fe) -> Fe {
        self.neg[a.index()]
    }

    #[inline]
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a.index() * self.q + b.index()]
    }

    #[inline]
    fn inv(&self, a: Fe) -> Result<Fe> {
        if a == Fe::ZERO {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(self.inv[a.index()])
    }

    fn element(&self, index: u64) -> Fe {
        self.fe(index as usize)
    }

    fn index_of(&self, a: Fe) -> u64 {
        a.0 as u64
    }

    /// Prime fields print as integers; extensions as polynomials in `u`,
    /// highest degree first (`2u^2+u+1`).
    fn format(&self, a: Fe) -> String {
        let coeffs = self.to_elem(a);
        let coeffs = coeffs.coeffs();
        let mut terms = Vec::new();
        for (k, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "u".to_string(),
                (1, c) => format!("{c}u"),
                (k, 1) => format!("u^{k}"),
                (k, c) => format!("{c}u^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Accepts signed sums of terms `c`, `u`, `cu`, `c*u`, `u^k`, `cu^k`;
    /// integer coefficients are reduced mod `p`, so `-1` is `p - 1`.
    fn parse(&self, s: &str) -> Result<Fe> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::parse("empty field element"));
        }
        let p = self.spec.p as i64;
        let m = self.spec.m as usize;
        let mut coeffs = vec![0i64; m];
        let mut rest = text.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (sign, body) = if let Some(r) = rest.strip_prefix('-') {
                (-1, r)
            } else if let Some(r) = rest.strip_prefix('+') {
                if first {
                    return Err(Error::parse(format!("unexpected '+' in '{s}'")));
                }
                (1, r)
            } else if first {
                (1, rest)
            } else {
                return Err(Error::parse(format!("malformed field element '{s}'")));
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, degree) = parse_term(term).ok_or_else(|| {
                Error::parse(format!("malformed term '{term}' in field element '{s}'"))
            })?;
            if degree >= m {
                return Err(Error::parse(format!(
                    "term '{term}' has degree {degree}, but GF({}) elements have degree < {m}",
                    self.q
                )));
            }
            coeffs[degree] = (coeffs[degree] + sign * (coef % p)).rem_euclid(p);
        }
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c as u32).collect();
        self.from_elem(&self.spec.elem(&coeffs)?)
    }
}

fn parse_term(term: &str) -> Option<(i64, usize)> {
    if term.is_empty() {
        return None;
    }
    let Some(upos) = term.find('u') else {
        return term.parse::<i64>().ok().map(|c| (c, 0));
    };
    let coef_part = term[..upos].trim_end_matches('*');
    let coef = if coef_part.is_empty() { 1 } else { coef_part.parse::<i64>().ok()? };
    let after = &term[upos + 1..];
    let degree = if after.is_empty() {
        1
    } else {
        after.strip_prefix('^')?.parse::<usize>().ok()?
    };
    Some((coef, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_reference() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let gf = Gf::standard(q).unwrap();
            let spec = gf.spec().clone();
            for a in gf.elements() {
                for b in gf.elements() {
                    let (ea, eb) = (gf.to_elem(a), gf.to_elem(b));
                    assert_eq!(gf.to_elem(gf.add(a, b)), spec.add(&ea, &eb).unwrap());
                    assert_eq!(gf.to_elem(gf.mul(a, b)), spec.mul(&ea, &eb).unwrap());
                }
            }
        }
    }

    #[test]
    fn format_and_parse() {
        let gf = Gf::standard(9).unwrap();
        for a in gf.elements() {
            assert_eq!(gf.parse(&gf.format(a)).unwrap(), a);
        }
        let gf4 = Gf::standard(4).unwrap();
        let u = gf4.parse("u").unwrap();
        assert_eq!(gf4.format(gf4.mul(u, u)), "u+1");
        assert_eq!(gf4.parse("u + 1").unwrap(), gf4.mul(u, u));
        let gf3 = Gf::standard(3).unwrap();
        assert_eq!(gf3.parse("-1").unwrap(), gf3.fe(2));
        assert_eq!(gf3.format(gf3.fe(2)), "2");
        assert!(gf3.parse("u").is_err());
        assert!(gf3.parse("").is_err());
        assert!(gf3.parse("1+").is_err());
        assert!(gf4.parse("u^2").is_err());
        assert!(gf4.parse("x").is_err());
    }
}
