use std::collections::HashMap;

use crate::algebra3::{mat3_to_matf, Algebra3};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field, Gf};
use crate::linalg::{inverse, kernel, rref_rows, MatF, Subspace};
use crate::par::Exec;

use super::{independent, PairVector, VectorKind};

/// `Av` in canonical form: the reduced row echelon basis, zero-padded to
/// three rows. Equal keys are equal subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AvKey {
    dim: u8,
    rows: [[Fe; 6]; 3],
}

impl AvKey {
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn rows(&self) -> &[[Fe; 6]] {
        &self.rows[..self.dim as usize]
    }

    /// Wraps rows already in reduced row echelon form.
    pub(crate) fn from_parts(dim: usize, rows: [[Fe; 6]; 3]) -> Self {
        AvKey { dim: dim as u8, rows }
    }

    pub fn to_subspace(&self) -> Subspace<Fe> {
        Subspace::from_rref_rows(6, self.rows().iter().map(|r| r.to_vec()).collect())
    }
}

/// Rows `(e_i x, e_i y)`: the image of the basis under `a -> av`.
fn av_rows(alg: &Algebra3, v: &PairVector) -> [[Fe; 6]; 3] {
    let f = &**alg.field();
    let t = alg.tensor();
    let mut rows = [[Fe::ZERO; 6]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        for k in 0..3 {
            let (mut ax, mut ay) = (Fe::ZERO, Fe::ZERO);
            for j in 0..3 {
                ax = f.add(ax, f.mul(v.x[j], t[i][j][k]));
                ay = f.add(ay, f.mul(v.y[j], t[i][j][k]));
            }
            row[k] = ax;
            row[3 + k] = ay;
        }
    }
    rows
}

pub fn av_key(alg: &Algebra3, v: &PairVector) -> AvKey {
    let mut rows = av_rows(alg, v);
    let dim = rref_rows(&**alg.field(), &mut rows).len() as u8;
    AvKey { dim, rows }
}

pub fn av_subspace(alg: &Algebra3, v: &PairVector) -> Subspace<Fe> {
    av_key(alg, v).to_subspace()
}

/// `dim(S1 ∩ S2) = dim S1 + dim S2 - dim(S1 + S2)`.
pub fn key_intersection_dim(f: &Gf, a: &AvKey, b: &AvKey) -> usize {
    let mut stack = [[Fe::ZERO; 6]; 6];
    let (da, db) = (a.dim(), b.dim());
    stack[..da].copy_from_slice(a.rows());
    stack[da..da + db].copy_from_slice(b.rows());
    da + db - rref_rows(f, &mut stack[..da + db]).len()
}

pub fn intersection_dim(alg: &Algebra3, v: &PairVector, w: &PairVector) -> usize {
    key_intersection_dim(alg.field(), &av_key(alg, v), &av_key(alg, w))
}

pub fn intersection(alg: &Algebra3, v: &PairVector, w: &PairVector) -> Subspace<Fe> {
    let f = &**alg.field();
    av_subspace(alg, v).intersect(f, &av_subspace(alg, w)).expect("both subspaces live in F^6")
}

/// Pairs `(a, a')` with `av = a'v'`: the kernel of
/// `[R_x | -R_x'; R_y | -R_y']`.
pub fn solution_space(alg: &Algebra3, v: &PairVector, w: &PairVector) -> Result<Subspace<Fe>> {
    for (name, u) in [("v", v), ("v'", w)] {
        if av_key(alg, u).dim() != 3 {
            return Err(Error::domain(format!("{name} = {} is not regular: a -> av is not injective", u.format(alg.field()))));
        }
    }
    let f = &**alg.field();
    let (rx, ry) = (alg.right_mul_matrix(&v.x), alg.right_mul_matrix(&v.y));
    let (rx2, ry2) = (alg.right_mul_matrix(&w.x), alg.right_mul_matrix(&w.y));
    let m = MatF::from_fn(6, 6, |r, c| {
        let (left, right) = if r < 3 { (&rx, &rx2) } else { (&ry, &ry2) };
        if c < 3 {
            left[r % 3][c]
        } else {
            f.neg(right[r % 3][c - 3])
        }
    });
    Ok(kernel(f, &m))
}

/// For commutative `A` and nondegenerate `v = (x, y)`, the unique `y'` with
/// `x'y = xy'`, returned as `v' = (x', y')`.
pub fn construct_two_dim_partner(alg: &Algebra3, v: &PairVector, x2: &[Fe; 3]) -> Result<PairVector> {
    let f = &**alg.field();
    if !alg.is_commutative() {
        return Err(Error::usage("the two-dimensional construction needs a commutative structure tensor"));
    }
    if v.classify(f) != VectorKind::Nondegenerate {
        return Err(Error::usage(format!("v = {} is not nondegenerate", v.format(f))));
    }
    if !independent(f, &v.x, x2) {
        return Err(Error::usage("x' must be linearly independent of x"));
    }
    let lx_inv = inverse(f, &mat3_to_matf(&alg.left_mul_matrix(&v.x)))?;
    let target = alg.mul(x2, &v.y);
    let y2 = lx_inv.apply(f, &target);
    Ok(PairVector::new(*x2, [y2[0], y2[1], y2[2]]))
}

/// Canonical `Av'` for every `v'` in `F^6`. Distinct spaces are interned in
/// order of first appearance, so ids are stable across worker counts.
pub struct AvAtlas {
    spaces: Vec<AvKey>,
    ids: Vec<u32>,
    kinds: Vec<VectorKind>,
}

impl AvAtlas {
    pub fn build(alg: &Algebra3, exec: &Exec) -> Self {
        let f = &**alg.field();
        let keys = exec.map_indices(PairVector::count(f), |n| av_key(alg, &PairVector::from_index(f, n)));
        let kinds = exec.map_indices(keys.len(), |n| PairVector::from_index(f, n).classify(f));
        let mut seen: HashMap<AvKey, u32> = HashMap::new();
        let mut spaces = Vec::new();
        let ids = keys
            .into_iter()
            .map(|k| {
                *seen.entry(k).or_insert_with(|| {
                    spaces.push(k);
                    (spaces.len() - 1) as u32
                })
            })
            .collect();
        AvAtlas { spaces, ids, kinds }
    }

    /// `Av'` for the `v'` with this index.
    pub fn key(&self, index: usize) -> &AvKey {
        &self.spaces[self.ids[index] as usize]
    }

    pub fn space_id(&self, index: usize) -> usize {
        self.ids[index] as usize
    }

    pub fn kind(&self, index: usize) -> VectorKind {
        self.kinds[index]
    }

    /// The distinct spaces `Av'`, indexed by id.
    pub fn spaces(&self) -> &[AvKey] {
        &self.spaces
    }

    /// Number of vectors, `q^6`.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra3::TwistedFieldSpec;
    use crate::gf::FieldTower;

    fn commutative_q3() -> Algebra3 {
        let f = Arc::new(Gf::standard(3).unwrap());
        let tw = Arc::new(FieldTower::standard(f.clone()).unwrap());
        let c = tw.embed(f.fe(2));
        TwistedFieldSpec::new(tw, c).unwrap().to_structure_constants()
    }

    #[test]
    fn basic_av_shapes() {
        let alg = commutative_q3();
        let f = alg.field().clone();
        assert_eq!(av_key(&alg, &PairVector::zero()).dim(), 0);
        let v = PairVector::parse(&f, "[1,1,0],[0,0,0]").unwrap();
        let key = av_key(&alg, &v);
        // A + 0
        assert_eq!(key.to_subspace(), Subspace::span(&*f, 6, &[
            vec![Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO],
            vec![Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO],
            vec![Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO],
        ]).unwrap());
        let w = PairVector::parse(&f, "[1,1,0],[2,2,0]").unwrap();
        for row in av_key(&alg, &w).rows() {
            for k in 0..3 {
                assert_eq!(row[3 + k], f.mul(f.fe(2), row[k]));
            }
        }
    }

    #[test]
    fn partner_gives_two_dimensions() {
        let alg = commutative_q3();
        let f = alg.field().clone();
        let v = PairVector::parse(&f, "[1,0,0],[0,1,0]").unwrap();
        let w = construct_two_dim_partner(&alg, &v, &[Fe::ZERO, Fe::ZERO, Fe::ONE]).unwrap();
        assert_eq!(intersection_dim(&alg, &v, &w), 2);
        assert_eq!(solution_space(&alg, &v, &w).unwrap().dim(), 2);
        assert!(construct_two_dim_partner(&alg, &v, &v.x).is_err());
    }

    #[test]
    fn solution_space_of_v_with_itself() {
        let alg = commutative_q3();
        let f = alg.field().clone();
        let v = PairVector::parse(&f, "[1,2,0],[0,1,1]").unwrap();
        let s = solution_space(&alg, &v, &v).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.contains(&*f, &[Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]));
        assert!(solution_space(&alg, &v, &PairVector::zero()).is_err());
    }
}
