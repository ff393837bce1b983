//! `A` acting on `A^2`: the subspaces `Av = {(ax, ay)}`, their
//! intersections, censuses over all `v'`, and the theorem verifiers.

mod action;
pub mod census;
pub mod pencil;
pub mod report;
pub mod verify;

use serde::{Deserialize, Serialize};

use crate::algebra3::Vec3;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field, Gf};

pub use action::{
    av_key, av_subspace, construct_two_dim_partner, intersection, intersection_dim, key_intersection_dim,
    solution_space, AvAtlas, AvKey,
};
pub use census::{
    complementary_space_count, global_counts, line_profile, per_vector_profile, predicted_counts,
    predicted_line_histogram, CensusCounts, ClassCount, GlobalCounts, LineBucket, LineCount, LineProfile, Profile,
};
pub use pencil::{pair_normal_form, representative, Mat2, PairNormalForm, PairTag};
pub use report::{modulus_string, AlgebraHeader, CensusParameters, CensusReport, Verdict, Witness};
pub use verify::{
    plane_representatives, search_theorem_7_2_analogue, verify_pair_normal_forms, verify_split_identities,
    verify_split_theorem_3_1, verify_theorem_a, verify_theorem_b, SweepMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VectorKind {
    Zero,
    DegenerateNonzero,
    Nondegenerate,
}

/// `v = (x, y)` in `A^2`, with `A = F^3` in coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairVector {
    pub x: Vec3,
    pub y: Vec3,
}

impl PairVector {
    pub fn new(x: Vec3, y: Vec3) -> Self {
        PairVector { x, y }
    }

    pub fn zero() -> Self {
        PairVector { x: [Fe::ZERO; 3], y: [Fe::ZERO; 3] }
    }

    pub fn flatten(&self) -> [Fe; 6] {
        [self.x[0], self.x[1], self.x[2], self.y[0], self.y[1], self.y[2]]
    }

    pub fn from_flat(v: &[Fe; 6]) -> Self {
        PairVector { x: [v[0], v[1], v[2]], y: [v[3], v[4], v[5]] }
    }

    /// Number of vectors in `F^6`.
    pub fn count(f: &Gf) -> usize {
        f.q().pow(6)
    }

    /// Lexicographic order on `(x0, x1, x2, y0, y1, y2)`, `x0` most significant.
    pub fn from_index(f: &Gf, mut n: usize) -> Self {
        let q = f.q();
        let mut flat = [Fe::ZERO; 6];
        for slot in flat.iter_mut().rev() {
            *slot = f.fe(n % q);
            n /= q;
        }
        PairVector::from_flat(&flat)
    }

    pub fn index(&self, f: &Gf) -> usize {
        let q = f.q();
        self.flatten().iter().fold(0, |acc, c| acc * q + c.index())
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(|&c| c == Fe::ZERO)
    }

    /// Rank of the 2x3 stack `[x; y]`: 0, 1 or 2.
    pub fn classify(&self, f: &Gf) -> VectorKind {
        if self.is_zero() {
            VectorKind::Zero
        } else if independent(f, &self.x, &self.y) {
            VectorKind::Nondegenerate
        } else {
            VectorKind::DegenerateNonzero
        }
    }

    pub fn scale(&self, f: &Gf, k: Fe) -> Self {
        PairVector { x: self.x.map(|c| f.mul(k, c)), y: self.y.map(|c| f.mul(k, c)) }
    }

    /// `[x0,x1,x2],[y0,y1,y2]`.
    pub fn format(&self, f: &Gf) -> String {
        let part = |v: &Vec3| format!("[{},{},{}]", f.format(v[0]), f.format(v[1]), f.format(v[2]));
        format!("{},{}", part(&self.x), part(&self.y))
    }

    pub fn parse(f: &Gf, s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("expected '[x0,x1,x2],[y0,y1,y2]', got '{s}'")))?;
        let halves: Vec<&str> = inner.split("],[").collect();
        if halves.len() != 2 {
            return Err(Error::parse(format!("expected two bracketed triples in '{s}'")));
        }
        let triple = |h: &str| -> Result<Vec3> {
            let parts: Vec<&str> = h.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::parse(format!("expected three coordinates in '[{h}]'")));
            }
            Ok([f.parse(parts[0])?, f.parse(parts[1])?, f.parse(parts[2])?])
        };
        Ok(PairVector { x: triple(halves[0])?, y: triple(halves[1])? })
    }
}

/// Whether `a` and `b` span a plane.
pub fn independent(f: &Gf, a: &Vec3, b: &Vec3) -> bool {
    (0..3).any(|i| {
        let j = (i + 1) % 3;
        f.mul(a[i], b[j]) != f.mul(a[j], b[i])
    })
}

/// Whether `c` lies in the span of `a` and `b`.
pub fn in_span(f: &Gf, a: &Vec3, b: &Vec3, c: &Vec3) -> bool {
    crate::linalg::rank_rows(f, &[*a, *b, *c]) == crate::linalg::rank_rows(f, &[*a, *b])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_order() {
        let f = Gf::standard(3).unwrap();
        assert_eq!(PairVector::from_index(&f, 0), PairVector::zero());
        let last = PairVector::from_index(&f, 1);
        assert_eq!(last.y[2], Fe::ONE);
        for n in [0, 1, 17, 400, 728] {
            assert_eq!(PairVector::from_index(&f, n).index(&f), n);
        }
    }

    #[test]
    fn classification() {
        let f = Gf::standard(3).unwrap();
        let p = |s| PairVector::parse(&f, s).unwrap();
        assert_eq!(p("[0,0,0],[0,0,0]").classify(&f), VectorKind::Zero);
        assert_eq!(p("[1,2,0],[2,1,0]").classify(&f), VectorKind::DegenerateNonzero);
        assert_eq!(p("[1,0,0],[0,0,0]").classify(&f), VectorKind::DegenerateNonzero);
        assert_eq!(p("[1,0,0],[0,1,0]").classify(&f), VectorKind::Nondegenerate);
    }

    #[test]
    fn format_parse() {
        let f = Gf::standard(4).unwrap();
        let v = PairVector::parse(&f, "[u, 1, 0], [0, u+1, 1]").unwrap();
        assert_eq!(v.format(&f), "[u,1,0],[0,u+1,1]");
        assert!(PairVector::parse(&f, "[1,0],[0,1,0]").is_err());
        assert!(PairVector::parse(&f, "[1,0,0]").is_err());
    }

    #[test]
    fn span_membership() {
        let f = Gf::standard(3).unwrap();
        let (a, b) = ([Fe::ONE, Fe::ZERO, Fe::ZERO], [Fe::ZERO, Fe::ONE, Fe::ZERO]);
        assert!(in_span(&f, &a, &b, &[f.fe(2), f.fe(1), Fe::ZERO]));
        assert!(!in_span(&f, &a, &b, &[Fe::ZERO, Fe::ZERO, Fe::ONE]));
        assert!(!in_span(&f, &a, &a, &b));
    }
}
