//! Split Albert algebras `phi_{d0,d1,d2}: U x V -> W`, given on bases
//! `(alpha_i)`, `(beta_i)`, `(gamma_i)` by
//!
//! ```text
//! alpha_i beta_i     = 0
//! alpha_i beta_{i+1} = gamma_{i+2}
//! alpha_i beta_{i+2} = d_{i+1} gamma_{i+1}        (indices mod 3)
//! ```
//!
//! together with the splitting of a twisted field over `K`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra3::TwistedFieldSpec;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, KElem};
use crate::linalg::{det, MatF};

/// `(i + offset) mod 3`.
#[inline]
pub fn idx(i: usize, offset: isize) -> usize {
    (i as isize + offset).rem_euclid(3) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    U,
    V,
    W,
}

/// Coordinates of a vector of `U`, `V` or `W` in the standard basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriVector<E> {
    pub coords: [E; 3],
    pub space: Space,
}

impl<E: Copy + Eq> TriVector<E> {
    pub fn u(coords: [E; 3]) -> Self {
        TriVector { coords, space: Space::U }
    }

    pub fn v(coords: [E; 3]) -> Self {
        TriVector { coords, space: Space::V }
    }

    pub fn w(coords: [E; 3]) -> Self {
        TriVector { coords, space: Space::W }
    }

    /// All three coordinates nonzero.
    pub fn is_regular<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coords.iter().all(|&c| !f.is_zero(c))
    }

    fn expect(&self, space: Space) -> Result<()> {
        if self.space != space {
            return Err(Error::usage(format!("expected a vector of {space:?}, got {:?}", self.space)));
        }
        Ok(())
    }
}

/// A triple of linear maps `(f, g, h)` on `U`, `V`, `W`, as matrices acting
/// on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism<E> {
    pub f: MatF<E>,
    pub g: MatF<E>,
    pub h: MatF<E>,
}

#[derive(Clone)]
pub struct SplitAlbertSpec<F: Field> {
    field: Arc<F>,
    d: [F::Elem; 3],
}

impl<F: Field> std::fmt::Debug for SplitAlbertSpec<F> {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let f = &*self.field;
        write!(fm, "phi({}, {}, {})", f.format(self.d[0]), f.format(self.d[1]), f.format(self.d[2]))
    }
}

impl<F: Field> PartialEq for SplitAlbertSpec<F> {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl<F: Field> SplitAlbertSpec<F> {
    /// Requires every `d_i != 0` and `d = d_0 d_1 d_2 != -1`.
    pub fn new(field: Arc<F>, d: [F::Elem; 3]) -> Result<Self> {
        let f = &*field;
        if d.iter().any(|&x| f.is_zero(x)) {
            return Err(Error::usage("all d_i must be nonzero"));
        }
        let prod = f.mul(f.mul(d[0], d[1]), d[2]);
        if prod == f.neg(f.one()) {
            return Err(Error::domain("d = d0 d1 d2 = -1 is excluded"));
        }
        Ok(SplitAlbertSpec { field, d })
    }

    pub fn field(&self) -> &Arc<F> {
        &self.field
    }

    pub fn d(&self) -> [F::Elem; 3] {
        self.d
    }

    pub fn d_product(&self) -> F::Elem {
        let f = &*self.field;
        f.mul(f.mul(self.d[0], self.d[1]), self.d[2])
    }

    /// Coordinates in `W` of `phi(alpha_i, beta_j)`.
    pub fn basis_product(&self, i: usize, j: usize) -> [F::Elem; 3] {
        let f = &*self.field;
        let mut out = [f.zero(); 3];
        if j == idx(i, 1) {
            out[idx(i, 2)] = f.one();
        } else if j == idx(i, 2) {
            out[idx(i, 1)] = self.d[idx(i, 1)];
        }
        out
    }

    /// Bilinear extension of the basis table.
    pub fn phi(&self, u: &TriVector<F::Elem>, v: &TriVector<F::Elem>) -> Result<TriVector<F::Elem>> {
        u.expect(Space::U)?;
        v.expect(Space::V)?;
        let f = &*self.field;
        let mut out = [f.zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                let coef = f.mul(u.coords[i], v.coords[j]);
                if f.is_zero(coef) {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o = f.add(*o, f.mul(coef, b));
                }
            }
        }
        Ok(TriVector::w(out))
    }

    /// Matrix of `L_x: V -> W`.
    pub fn lmat(&self, x: &TriVector<F::Elem>) -> Result<MatF<F::Elem>> {
        x.expect(Space::U)?;
        let f = &*self.field;
        let [x0, x1, x2] = x.coords;
        let [d0, d1, d2] = self.d;
        let z = f.zero();
        let rows = [
            [z, f.mul(d0, x2), x1],
            [x2, z, f.mul(d1, x0)],
            [f.mul(d2, x1), x0, z],
        ];
        Ok(MatF::from_fn(3, 3, |i, j| rows[i][j]))
    }

    /// Matrix of `R_y: U -> W`.
    pub fn rmat(&self, y: &TriVector<F::Elem>) -> Result<MatF<F::Elem>> {
        y.expect(Space::V)?;
        let f = &*self.field;
        let [y0, y1, y2] = y.coords;
        let [d0, d1, d2] = self.d;
        let z = f.zero();
        let rows = [
            [z, y2, f.mul(d0, y1)],
            [f.mul(d1, y2), z, y0],
            [y1, f.mul(d2, y0), z],
        ];
        Ok(MatF::from_fn(3, 3, |i, j| rows[i][j]))
    }

    /// Closed-form inverse of `R_y` for regular `y`.
    pub fn rmat_inv(&self, y: &TriVector<F::Elem>) -> Result<MatF<F::Elem>> {
        y.expect(Space::V)?;
        let f = &*self.field;
        if !y.is_regular(f) {
            return Err(Error::domain("R_y^{-1} needs a regular y (all coordinates nonzero)"));
        }
        let [y0, y1, y2] = y.coords;
        let [d0, d1, d2] = self.d;
        let inv = |a| f.inv(a).expect("nonzero by regularity");
        let (i0, i1, i2) = (inv(y0), inv(y1), inv(y2));
        let scale = inv(f.add(f.one(), self.d_product()));
        let neg = |a| f.neg(a);
        let rows = [
            [neg(f.mul(d2, f.mul(y0, f.mul(i1, i2)))), f.mul(f.mul(d0, d2), i2), i1],
            [i2, neg(f.mul(d0, f.mul(y1, f.mul(i0, i2)))), f.mul(f.mul(d0, d1), i0)],
            [f.mul(f.mul(d1, d2), i1), i0, neg(f.mul(d1, f.mul(y2, f.mul(i0, i1))))],
        ];
        Ok(MatF::from_fn(3, 3, |i, j| f.mul(scale, rows[i][j])))
    }

    /// The multiset `{y_i / y'_i}` (sorted) of eigenvalues of `R_{y'}^{-1} R_y`.
    pub fn char_poly_ratio(
        &self,
        y: &TriVector<F::Elem>,
        y_prime: &TriVector<F::Elem>,
    ) -> Result<[F::Elem; 3]> {
        y.expect(Space::V)?;
        y_prime.expect(Space::V)?;
        let f = &*self.field;
        if !y.is_regular(f) || !y_prime.is_regular(f) {
            return Err(Error::domain("both arguments must be regular"));
        }
        let mut t = [f.zero(); 3];
        for i in 0..3 {
            t[i] = f.div(y.coords[i], y_prime.coords[i])?;
        }
        t.sort();
        Ok(t)
    }

    /// `f: alpha_i -> r_i alpha_i`, `g: beta_i -> s_i beta_i`,
    /// `h: gamma_i -> r_{i+1} s_{i+2} gamma_i`, onto
    /// `d'_i = (r_{i+1} / r_{i-1}) (s_{i-1} / s_{i+1}) d_i`.
    pub fn scale_isomorphism(
        &self,
        r: [F::Elem; 3],
        s: [F::Elem; 3],
    ) -> Result<(SplitAlbertSpec<F>, Isomorphism<F::Elem>)> {
        let f = &*self.field;
        if r.iter().chain(&s).any(|&x| f.is_zero(x)) {
            return Err(Error::usage("scale factors must be nonzero"));
        }
        let mut d = [f.zero(); 3];
        for i in 0..3 {
            let ratio = f.mul(
                f.div(r[idx(i, 1)], r[idx(i, -1)])?,
                f.div(s[idx(i, -1)], s[idx(i, 1)])?,
            );
            d[i] = f.mul(ratio, self.d[i]);
        }
        let diag = |v: [F::Elem; 3]| MatF::from_fn(3, 3, |i, j| if i == j { v[i] } else { f.zero() });
        let h = [
            f.mul(r[1], s[2]),
            f.mul(r[2], s[0]),
            f.mul(r[0], s[1]),
        ];
        let iso = Isomorphism { f: diag(r), g: diag(s), h: diag(h) };
        Ok((SplitAlbertSpec::new(self.field.clone(), d)?, iso))
    }

    /// Index shift `i -> i + 1` on all three bases, onto `(d_2, d_0, d_1)`.
    pub fn cyclic_isomorphism(&self) -> (SplitAlbertSpec<F>, Isomorphism<F::Elem>) {
        let f = &*self.field;
        let shift = MatF::from_fn(3, 3, |i, j| if i == idx(j, 1) { f.one() } else { f.zero() });
        let d = [self.d[2], self.d[0], self.d[1]];
        let spec = SplitAlbertSpec { field: self.field.clone(), d };
        (spec, Isomorphism { f: shift.clone(), g: shift.clone(), h: shift })
    }

    /// `alpha_i -> alpha_{1-i}`, `beta_i -> beta_{1-i}`,
    /// `gamma_i -> d_i^{-1} gamma_{1-i}`, onto `(d_1^{-1}, d_0^{-1}, d_2^{-1})`.
    pub fn reversal_isomorphism(&self) -> (SplitAlbertSpec<F>, Isomorphism<F::Elem>) {
        let f = &*self.field;
        let inv = |a| f.inv(a).expect("d_i nonzero");
        let flip = MatF::from_fn(3, 3, |i, j| if i == idx(1, -(j as isize)) { f.one() } else { f.zero() });
        let h = MatF::from_fn(3, 3, |i, j| {
            if i == idx(1, -(j as isize)) {
                inv(self.d[j])
            } else {
                f.zero()
            }
        });
        let d = [inv(self.d[1]), inv(self.d[0]), inv(self.d[2])];
        let spec = SplitAlbertSpec { field: self.field.clone(), d };
        (spec, Isomorphism { f: flip.clone(), g: flip, h })
    }

    /// Checks `h(phi(alpha_i, beta_j)) = phi'(f alpha_i, g beta_j)` on all nine basis pairs.
    pub fn intertwines(&self, target: &SplitAlbertSpec<F>, iso: &Isomorphism<F::Elem>) -> bool {
        let f = &*self.field;
        let unit = |i: usize| {
            let mut e = [f.zero(); 3];
            e[i] = f.one();
            e
        };
        let arr = |v: Vec<F::Elem>| [v[0], v[1], v[2]];
        (0..3).all(|i| {
            (0..3).all(|j| {
                let lhs = iso.h.apply(f, &self.basis_product(i, j));
                let fu = TriVector::u(arr(iso.f.apply(f, &unit(i))));
                let gv = TriVector::v(arr(iso.g.apply(f, &unit(j))));
                let rhs = target.phi(&fu, &gv).expect("tags are correct");
                lhs == rhs.coords
            })
        })
    }

    pub fn record(&self) -> SplitAlbertRecord {
        let f = &*self.field;
        SplitAlbertRecord {
            field: f.order(),
            d0: f.format(self.d[0]),
            d1: f.format(self.d[1]),
            d2: f.format(self.d[2]),
        }
    }
}

/// Serialized form `{field, d0, d1, d2}`; `field` is the order of the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitAlbertRecord {
    pub field: u64,
    pub d0: String,
    pub d1: String,
    pub d2: String,
}

impl SplitAlbertRecord {
    pub fn to_spec<F: Field>(&self, field: Arc<F>) -> Result<SplitAlbertSpec<F>> {
        if field.order() != self.field {
            return Err(Error::usage(format!("record is over a field of order {}", self.field)));
        }
        let d = [field.parse(&self.d0)?, field.parse(&self.d1)?, field.parse(&self.d2)?];
        SplitAlbertSpec::new(field, d)
    }
}

/// Monic characteristic polynomial of a 3x3 matrix as `[c0, c1, c2]`, meaning
/// `X^3 + c2 X^2 + c1 X + c0`.
pub fn char_poly3<F: Field>(f: &F, m: &MatF<F::Elem>) -> [F::Elem; 3] {
    let tr = m.trace(f);
    let minor = |a: usize, b: usize| {
        f.sub(f.mul(m.get(a, a), m.get(b, b)), f.mul(m.get(a, b), m.get(b, a)))
    };
    let m2 = f.add(f.add(minor(0, 1), minor(0, 2)), minor(1, 2));
    let dt = det(f, m).expect("square");
    [f.neg(dt), m2, f.neg(tr)]
}

/// Coefficients `[c0, c1, c2]` of `(X - t_0)(X - t_1)(X - t_2)`.
pub fn poly_from_roots<F: Field>(f: &F, t: &[F::Elem; 3]) -> [F::Elem; 3] {
    let e1 = f.add(f.add(t[0], t[1]), t[2]);
    let e2 = f.add(f.add(f.mul(t[0], t[1]), f.mul(t[1], t[2])), f.mul(t[0], t[2]));
    let e3 = f.mul(f.mul(t[0], t[1]), t[2]);
    [f.neg(e3), e2, f.neg(e1)]
}

/// The splitting of a twisted field over `K`: `phi` with `d_i = -c^(sigma^i)`
/// and the embedding `E(a) = (a, a^sigma, a^(sigma^2))`.
///
/// `nu` lives on `K^3` with standard basis `(e_i)`. It is the split algebra
/// under `alpha_i = beta_i = e_{i-1}`, `gamma_i = e_i`.
pub struct SplitTwisted {
    twisted: TwistedFieldSpec,
    split: SplitAlbertSpec<FieldTower>,
    gamma: [KElem; 3],
}

pub type K3 = [KElem; 3];

pub fn split_twisted_field(tf: &TwistedFieldSpec) -> Result<SplitTwisted> {
    let tw = tf.tower().clone();
    let c = tf.c();
    let gamma = [c, tw.frobenius(c), tw.frobenius_pow(c, 2)];
    let d = gamma.map(|g| tw.neg(g));
    let split = SplitAlbertSpec::new(tw, d)?;
    Ok(SplitTwisted { twisted: tf.clone(), split, gamma })
}

impl SplitTwisted {
    pub fn spec(&self) -> &SplitAlbertSpec<FieldTower> {
        &self.split
    }

    pub fn twisted(&self) -> &TwistedFieldSpec {
        &self.twisted
    }

    fn tower(&self) -> &FieldTower {
        self.twisted.tower()
    }

    pub fn embed(&self, a: KElem) -> K3 {
        let tw = self.tower();
        [a, tw.frobenius(a), tw.frobenius_pow(a, 2)]
    }

    /// `nu(xi, eta)_i = xi_i eta_{i+1} - c_i xi_{i+1} eta_i`.
    pub fn nu(&self, xi: &K3, eta: &K3) -> K3 {
        let tw = self.tower();
        let mut out = [tw.zero(); 3];
        for (i, o) in out.iter_mut().enumerate() {
            let a = tw.mul(xi[i], eta[idx(i, 1)]);
            let b = tw.mul(self.gamma[i], tw.mul(xi[idx(i, 1)], eta[i]));
            *o = tw.sub(a, b);
        }
        out
    }

    /// `nu` evaluated through `phi` and the basis identification.
    pub fn nu_via_phi(&self, xi: &K3, eta: &K3) -> K3 {
        let u = TriVector::u(self.to_split_coords(xi));
        let v = TriVector::v(self.to_split_coords(eta));
        self.split.phi(&u, &v).expect("tags are correct").coords
    }

    /// `e`-coordinates to `alpha`/`beta`-coordinates: the coefficient of
    /// `alpha_i = e_{i-1}` is `xi_{i-1}`.
    pub fn to_split_coords(&self, xi: &K3) -> K3 {
        [xi[idx(0, -1)], xi[idx(1, -1)], xi[idx(2, -1)]]
    }

    /// `lambda(xi)_i = xi_{i-1}^sigma`.
    pub fn lambda(&self, xi: &K3) -> K3 {
        let tw = self.tower();
        [0, 1, 2].map(|i| tw.frobenius(xi[idx(i, -1)]))
    }

    /// `rho(xi)_i = xi_{i+1}`.
    pub fn rho(&self, xi: &K3) -> K3 {
        [0, 1, 2].map(|i| xi[idx(i, 1)])
    }

    /// `nu(xi, eta) = xi eta^rho - gamma xi^rho eta` with componentwise products.
    pub fn nu_via_rho(&self, xi: &K3, eta: &K3) -> K3 {
        let tw = self.tower();
        let (er, xr) = (self.rho(eta), self.rho(xi));
        [0, 1, 2].map(|i| tw.sub(tw.mul(xi[i], er[i]), tw.mul(self.gamma[i], tw.mul(xr[i], eta[i]))))
    }

    /// Exhaustive check of `nu(E x, E y) = E(mu(x, y))`; returns the first
    /// failing pair.
    pub fn verify_splitting_identity(&self) -> std::result::Result<u64, (KElem, KElem)> {
        let tw = self.tower();
        let embedded: Vec<(KElem, K3)> = tw.elements().map(|x| (x, self.embed(x))).collect();
        let mut checked = 0;
        for (x, ex) in &embedded {
            for (y, ey) in &embedded {
                if self.nu(ex, ey) != self.embed(self.twisted.mu(*x, *y)) {
                    return Err((*x, *y));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }
}
