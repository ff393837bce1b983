//! Normal forms of pairs `(G0, G1)` of 2x2 matrices under
//! `(G0, G1) -> (P G0 Q, P G1 Q)` with `P, Q` invertible.
//!
//! Over a finite field the eigenvalues of `G0^{-1} G1` need not lie in `F`.
//! Such pairs get the extra tag [`PairTag::IStar`], whose second matrix is the
//! companion matrix of the irreducible characteristic polynomial.

use crate::gf::Field;

pub type Mat2<E> = [[E; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairTag<E> {
    /// `(I, diag(lambda, mu))`
    I { lambda: E, mu: E },
    /// `(I, [[lambda, 0], [1, lambda]])`
    II { lambda: E },
    /// `(diag(lambda, mu), I)`
    III { lambda: E, mu: E },
    /// `([[lambda, 0], [1, lambda]], I)`
    IV { lambda: E },
    /// `(E11, E22)`
    V,
    /// both bottom rows zero
    VI,
    /// both right columns zero
    VII,
    /// `(I, [[0, -det], [1, trace]])` with `X^2 - trace X + det` irreducible over `F`
    IStar { trace: E, det: E },
}

impl<E> PairTag<E> {
    pub fn name(&self) -> &'static str {
        match self {
            PairTag::I { .. } => "I",
            PairTag::II { .. } => "II",
            PairTag::III { .. } => "III",
            PairTag::IV { .. } => "IV",
            PairTag::V => "V",
            PairTag::VI => "VI",
            PairTag::VII => "VII",
            PairTag::IStar { .. } => "I*",
        }
    }

    /// Whether the tag is one of the seven listed forms.
    pub fn is_listed_form(&self) -> bool {
        !matches!(self, PairTag::IStar { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairNormalForm<E> {
    pub tag: PairTag<E>,
    pub p: Mat2<E>,
    pub q: Mat2<E>,
    /// `(P G0 Q, P G1 Q)`, kept verbatim; for VI and VII this carries the
    /// residual entries.
    pub reduced: (Mat2<E>, Mat2<E>),
}

fn mul2<F: Field>(f: &F, a: &Mat2<F::Elem>, b: &Mat2<F::Elem>) -> Mat2<F::Elem> {
    let mut out = [[f.zero(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            *o = f.add(f.mul(a[i][0], b[0][j]), f.mul(a[i][1], b[1][j]));
        }
    }
    out
}

fn det2<F: Field>(f: &F, a: &Mat2<F::Elem>) -> F::Elem {
    f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]))
}

fn inv2<F: Field>(f: &F, a: &Mat2<F::Elem>) -> Option<Mat2<F::Elem>> {
    let d = f.inv(det2(f, a)).ok()?;
    Some([
        [f.mul(d, a[1][1]), f.mul(d, f.neg(a[0][1]))],
        [f.mul(d, f.neg(a[1][0])), f.mul(d, a[0][0])],
    ])
}

fn ident<F: Field>(f: &F) -> Mat2<F::Elem> {
    [[f.one(), f.zero()], [f.zero(), f.one()]]
}

fn from_cols<F: Field>(s1: [F::Elem; 2], s2: [F::Elem; 2]) -> Mat2<F::Elem> {
    [[s1[0], s2[0]], [s1[1], s2[1]]]
}

fn apply2<F: Field>(f: &F, a: &Mat2<F::Elem>, v: [F::Elem; 2]) -> [F::Elem; 2] {
    [
        f.add(f.mul(a[0][0], v[0]), f.mul(a[0][1], v[1])),
        f.add(f.mul(a[1][0], v[0]), f.mul(a[1][1], v[1])),
    ]
}

fn rank2<F: Field>(f: &F, a: &Mat2<F::Elem>) -> usize {
    if !f.is_zero(det2(f, a)) {
        2
    } else if a.iter().flatten().any(|&e| !f.is_zero(e)) {
        1
    } else {
        0
    }
}

/// The printed representative of a tag, if it has a unique one.
pub fn representative<F: Field>(f: &F, tag: &PairTag<F::Elem>) -> Option<(Mat2<F::Elem>, Mat2<F::Elem>)> {
    let (o, z) = (f.one(), f.zero());
    let diag = |l, m| [[l, z], [z, m]];
    let jordan = |l| [[l, z], [o, l]];
    match *tag {
        PairTag::I { lambda, mu } => Some((ident(f), diag(lambda, mu))),
        PairTag::II { lambda } => Some((ident(f), jordan(lambda))),
        PairTag::III { lambda, mu } => Some((diag(lambda, mu), ident(f))),
        PairTag::IV { lambda } => Some((jordan(lambda), ident(f))),
        PairTag::V => Some((diag(o, z), diag(z, o))),
        PairTag::IStar { trace, det } => Some((ident(f), [[z, f.neg(det)], [o, trace]])),
        PairTag::VI | PairTag::VII => None,
    }
}

impl<E: Copy + Eq> PairNormalForm<E> {
    /// Checks that `P, Q` are invertible, that `reduced = (P G0 Q, P G1 Q)`,
    /// and that `reduced` matches the tag.
    pub fn verify<F: Field<Elem = E>>(&self, f: &F, g0: &Mat2<E>, g1: &Mat2<E>) -> bool {
        if f.is_zero(det2(f, &self.p)) || f.is_zero(det2(f, &self.q)) {
            return false;
        }
        let r0 = mul2(f, &mul2(f, &self.p, g0), &self.q);
        let r1 = mul2(f, &mul2(f, &self.p, g1), &self.q);
        if (r0, r1) != self.reduced {
            return false;
        }
        match self.tag {
            PairTag::VI => [r0, r1].iter().all(|m| f.is_zero(m[1][0]) && f.is_zero(m[1][1])),
            PairTag::VII => [r0, r1].iter().all(|m| f.is_zero(m[0][1]) && f.is_zero(m[1][1])),
            ref tag => representative(f, tag) == Some((r0, r1)),
        }
    }
}

/// `S` with `S^{-1} B S` in normal form, and the tag of that form
/// (with `G0` already normalized to the identity).
fn conjugate_normal<F: Field>(f: &F, b: &Mat2<F::Elem>) -> (PairTag<F::Elem>, Mat2<F::Elem>) {
    let (z, o) = (f.zero(), f.one());
    if f.is_zero(b[0][1]) && f.is_zero(b[1][0]) {
        return (PairTag::I { lambda: b[0][0], mu: b[1][1] }, ident(f));
    }
    let trace = f.add(b[0][0], b[1][1]);
    let det = det2(f, b);
    let roots: Vec<F::Elem> = f
        .elements()
        .filter(|&x| f.is_zero(f.add(f.sub(f.mul(x, x), f.mul(trace, x)), det)))
        .collect();
    let eigvec = |l: F::Elem| -> [F::Elem; 2] {
        if !f.is_zero(b[0][1]) {
            [b[0][1], f.sub(l, b[0][0])]
        } else {
            [f.sub(l, b[1][1]), b[1][0]]
        }
    };
    match roots.as_slice() {
        [] => {
            let e1 = [o, z];
            (PairTag::IStar { trace, det }, from_cols::<F>(e1, apply2(f, b, e1)))
        }
        [l, m] => (PairTag::I { lambda: *l, mu: *m }, from_cols::<F>(eigvec(*l), eigvec(*m))),
        [l] => {
            // b is not scalar here, so N = b - l has rank one and N^2 = 0
            let n = [[f.sub(b[0][0], *l), b[0][1]], [b[1][0], f.sub(b[1][1], *l)]];
            let e1 = [o, z];
            let s1 = if apply2(f, &n, e1).iter().all(|&e| f.is_zero(e)) { [z, o] } else { e1 };
            (PairTag::II { lambda: *l }, from_cols::<F>(s1, apply2(f, &n, s1)))
        }
        _ => unreachable!("a quadratic has at most two roots"),
    }
}

/// `(P, Q)` with `P a Q = E11` for a rank-one `a`.
fn reduce_rank_one<F: Field>(f: &F, a: &Mat2<F::Elem>) -> (Mat2<F::Elem>, Mat2<F::Elem>) {
    let (z, o) = (f.zero(), f.one());
    let swap = [[z, o], [o, z]];
    let (i, j) = (0..4)
        .map(|n| (n / 2, n % 2))
        .find(|&(i, j)| !f.is_zero(a[i][j]))
        .expect("rank one matrix has a nonzero entry");
    let p_perm = if i == 0 { ident(f) } else { swap };
    let q_perm = if j == 0 { ident(f) } else { swap };
    let a1 = mul2(f, &mul2(f, &p_perm, a), &q_perm);
    let s = f.inv(a1[0][0]).expect("pivot is nonzero");
    let p_scale = [[s, z], [z, o]];
    let a2 = mul2(f, &p_scale, &a1);
    let p_elim = [[o, z], [f.neg(a2[1][0]), o]];
    let q_elim = [[o, f.neg(a2[0][1])], [z, o]];
    let p = mul2(f, &p_elim, &mul2(f, &p_scale, &p_perm));
    let q = mul2(f, &q_perm, &q_elim);
    (p, q)
}

pub fn pair_normal_form<F: Field>(f: &F, g0: &Mat2<F::Elem>, g1: &Mat2<F::Elem>) -> PairNormalForm<F::Elem> {
    let (z, o) = (f.zero(), f.one());
    let finish = |tag, p: Mat2<F::Elem>, q: Mat2<F::Elem>| PairNormalForm {
        tag,
        p,
        q,
        reduced: (mul2(f, &mul2(f, &p, g0), &q), mul2(f, &mul2(f, &p, g1), &q)),
    };

    if let Some(g0_inv) = inv2(f, g0) {
        let b = mul2(f, &g0_inv, g1);
        let (tag, s) = conjugate_normal(f, &b);
        let s_inv = inv2(f, &s).expect("conjugating matrix is invertible");
        return finish(tag, mul2(f, &s_inv, &g0_inv), s);
    }
    if let Some(g1_inv) = inv2(f, g1) {
        let b = mul2(f, &g1_inv, g0);
        let (tag, s) = conjugate_normal(f, &b);
        let s_inv = inv2(f, &s).expect("conjugating matrix is invertible");
        let tag = match tag {
            PairTag::I { lambda, mu } => PairTag::III { lambda, mu },
            PairTag::II { lambda } => PairTag::IV { lambda },
            // g1^{-1} g0 is singular, so 0 is an eigenvalue in F
            _ => unreachable!("switched case always splits"),
        };
        return finish(tag, mul2(f, &s_inv, &g1_inv), s);
    }

    // both singular
    match (rank2(f, g0), rank2(f, g1)) {
        (1, _) => {}
        (0, 1) => {
            // (0, E11) after reduction
            let (p0, q0) = reduce_rank_one(f, g1);
            return finish(PairTag::VI, p0, q0);
        }
        _ => return finish(PairTag::VI, ident(f), ident(f)),
    }
    let (p0, q0) = reduce_rank_one(f, g0);
    let b = mul2(f, &mul2(f, &p0, g1), &q0);
    if !f.is_zero(b[1][1]) {
        let inv22 = f.inv(b[1][1]).expect("b22 is nonzero");
        let p1 = [[o, f.neg(f.mul(b[0][1], inv22))], [z, inv22]];
        let q1 = [[o, z], [f.neg(f.mul(b[1][0], inv22)), o]];
        return finish(PairTag::V, mul2(f, &p1, &p0), mul2(f, &q0, &q1));
    }
    if f.is_zero(b[1][0]) {
        finish(PairTag::VI, p0, q0)
    } else {
        finish(PairTag::VII, p0, q0)
    }
}
