//! Polyhedra over Q and polyhedral complexes.
//!
//! A polyhedron in rank `n` is stored as its homogenization: the closed
//! cone in rank `n+1` spanned by `(v, 1)` for vertices and `(r, 0)` for
//! recession rays, with the extra coordinate last. The homogenization is
//! canonical, so polyhedron equality is structural cone equality, and
//! face tests reduce to cone face tests.

use num::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::vecs;
use crate::{Int, QVec, Rat, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyhedron {
    rank: usize,
    hom: Cone,
}

fn lift_q(v: &QVec, last: i64) -> QVec {
    let mut w = v.clone();
    w.push(Rat::from_integer(Int::from(last)));
    w
}

impl Polyhedron {
    pub fn from_generators(
        rank: usize,
        vertices: &[QVec],
        rays: &[QVec],
        lineality: &[QVec],
    ) -> Result<Polyhedron> {
        for v in vertices.iter().chain(rays).chain(lineality) {
            if v.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: v.len() });
            }
        }
        let mut hom_rays: Vec<QVec> = vertices.iter().map(|v| lift_q(v, 1)).collect();
        hom_rays.extend(rays.iter().map(|r| lift_q(r, 0)));
        let hom_lin: Vec<QVec> = lineality.iter().map(|l| lift_q(l, 0)).collect();
        let hom = Cone::from_rays_q(rank + 1, &hom_rays, &hom_lin)?;
        Ok(Polyhedron { rank, hom })
    }

    /// `{x : <a_i, x> >= b_i, <c_j, x> = d_j}` with each constraint
    /// given as the pair (normal, offset).
    pub fn from_halfspaces(
        rank: usize,
        ineqs: &[(QVec, Rat)],
        eqs: &[(QVec, Rat)],
    ) -> Result<Polyhedron> {
        let lift = |(a, b): &(QVec, Rat)| -> Result<ZVec> {
            if a.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: a.len() });
            }
            let mut w = a.clone();
            w.push(-b.clone());
            Ok(vecs::qvec_direction(&w).unwrap_or_else(|| vec![Int::zero(); rank + 1]))
        };
        let mut hs: Vec<ZVec> = ineqs.iter().map(&lift).collect::<Result<_>>()?;
        hs.push(vecs::unit(rank + 1, rank)); // homogenizing coordinate >= 0
        let es: Vec<ZVec> = eqs.iter().map(&lift).collect::<Result<_>>()?;
        let raw = Cone::from_halfspaces(rank + 1, &hs, &es)?;
        Ok(Self::from_hom(rank, raw))
    }

    /// Wrap a cone in rank `n+1` with nonnegative last coordinate as a
    /// polyhedron. Empty slices collapse to the canonical empty
    /// polyhedron (the zero cone).
    pub fn from_hom(rank: usize, hom: Cone) -> Polyhedron {
        let nonempty = hom.rays().iter().any(|r| r[rank].is_positive());
        if nonempty {
            Polyhedron { rank, hom }
        } else {
            Polyhedron { rank, hom: Cone::zero(rank + 1) }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hom(&self) -> &Cone {
        &self.hom
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_zero()
    }

    /// Dimension, or `None` for the empty polyhedron.
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.hom.dim() - 1)
        }
    }

    pub fn vertices(&self) -> Vec<QVec> {
        let mut out: Vec<QVec> = Vec::new();
        for r in self.hom.rays() {
            let h = &r[self.rank];
            if h.is_positive() {
                let denom = Rat::from_integer(h.clone());
                out.push(
                    r[..self.rank]
                        .iter()
                        .map(|e| Rat::from_integer(e.clone()) / &denom)
                        .collect(),
                );
            }
        }
        out
    }

    pub fn recession_rays(&self) -> Vec<ZVec> {
        self.hom
            .rays()
            .iter()
            .filter(|r| r[self.rank].is_zero())
            .map(|r| r[..self.rank].to_vec())
            .collect()
    }

    pub fn lineality(&self) -> Vec<ZVec> {
        self.hom
            .lineality()
            .iter()
            .map(|l| l[..self.rank].to_vec())
            .collect()
    }

    pub fn contains_q(&self, x: &QVec) -> bool {
        !self.is_empty() && self.hom.contains(&Self::lift_dir(x))
    }

    /// Integer direction of `(x, 1)`, shared by per-cell membership
    /// tests.
    pub fn lift_dir(x: &QVec) -> ZVec {
        let mut lifted = x.clone();
        lifted.push(Rat::one());
        vecs::qvec_direction(&lifted).expect("nonzero lift")
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron { rank: self.rank, hom: Cone::zero(self.rank + 1) });
        }
        let raw = self.hom.intersect(&other.hom)?;
        Ok(Self::from_hom(self.rank, raw))
    }

    /// Face test for nonempty polyhedra, via the homogenizations.
    pub fn is_face_of(&self, other: &Polyhedron) -> Result<bool> {
        if self.is_empty() || other.is_empty() {
            return Ok(self.is_empty());
        }
        self.hom.is_face_of(&other.hom)
    }
}

/// A polyhedral complex given by its maximal cells. Pairwise
/// intersections are faces of both cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    rank: usize,
    cells: Vec<Polyhedron>,
}

impl Complex {
    pub fn validate(rank: usize, cells: Vec<Polyhedron>) -> Result<Complex> {
        let mut kept: Vec<Polyhedron> = Vec::new();
        for c in cells {
            if c.rank() != rank {
                return Err(Error::RankMismatch(rank, c.rank()));
            }
            if !c.is_empty() && !kept.contains(&c) {
                kept.push(c);
            }
        }
        for i in 0..kept.len() {
            for j in i + 1..kept.len() {
                let m = kept[i].intersect(&kept[j])?;
                if m.is_empty() {
                    continue;
                }
                if !m.is_face_of(&kept[i])? || !m.is_face_of(&kept[j])? {
                    return Err(Error::NotAComplex { first: i, second: j });
                }
            }
        }
        kept.sort();
        Ok(Complex { rank, cells: kept })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_q(&self, x: &QVec) -> bool {
        let dir = Polyhedron::lift_dir(x);
        self.cells
            .iter()
            .any(|c| !c.is_empty() && c.hom().contains(&dir))
    }

    /// Cell-set equality (cells are canonical, so this is exact).
    pub fn cell_set_eq(&self, other: &Complex) -> bool {
        self.rank == other.rank && self.cells == other.cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecs::{qvec, zvec};

    #[test]
    fn point_and_segment() {
        let p = Polyhedron::from_generators(1, &[qvec(&[2])], &[], &[]).unwrap();
        assert_eq!(p.dim(), Some(0));
        assert_eq!(p.vertices(), vec![qvec(&[2])]);
        let s = Polyhedron::from_generators(1, &[qvec(&[0]), qvec(&[1])], &[], &[]).unwrap();
        assert_eq!(s.dim(), Some(1));
        assert!(s.contains_q(&vec![Rat::new(Int::from(1), Int::from(2))]));
        assert!(!s.contains_q(&qvec(&[2])));
    }

    #[test]
    fn h_rep_roundtrip() {
        // {0 <= x <= 1} as halfspaces
        let s = Polyhedron::from_halfspaces(
            1,
            &[
                (qvec(&[1]), Rat::zero()),
                (qvec(&[-1]), -Rat::one()),
            ],
            &[],
        )
        .unwrap();
        let g = Polyhedron::from_generators(1, &[qvec(&[0]), qvec(&[1])], &[], &[]).unwrap();
        assert_eq!(s, g);
    }

    #[test]
    fn empty_polyhedron_is_canonical() {
        let e = Polyhedron::from_halfspaces(
            1,
            &[
                (qvec(&[1]), Rat::one()),
                (qvec(&[-1]), Rat::zero()),
            ],
            &[],
        )
        .unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dim(), None);
        // two empty polyhedra from different constraints are equal
        let e2 = Polyhedron::from_halfspaces(
            1,
            &[
                (qvec(&[1]), Rat::from_integer(Int::from(5))),
                (qvec(&[-1]), -Rat::one()),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn recession_and_lineality() {
        let half = Polyhedron::from_generators(2, &[qvec(&[0, 0])], &[qvec(&[1, 0])], &[qvec(&[0, 1])])
            .unwrap();
        assert_eq!(half.recession_rays(), vec![zvec(&[1, 0])]);
        assert_eq!(half.lineality(), vec![zvec(&[0, 1])]);
        assert_eq!(half.dim(), Some(2));
    }

    #[test]
    fn complex_validation() {
        let a = Polyhedron::from_generators(1, &[qvec(&[0]), qvec(&[1])], &[], &[]).unwrap();
        let b = Polyhedron::from_generators(1, &[qvec(&[1]), qvec(&[2])], &[], &[]).unwrap();
        let good = Complex::validate(1, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(good.cells().len(), 2);
        // overlapping interiors: [0,1] and [1/2, 2]
        let c = Polyhedron::from_generators(
            1,
            &[vec![Rat::new(Int::from(1), Int::from(2))], qvec(&[2])],
            &[],
            &[],
        )
        .unwrap();
        assert!(matches!(
            Complex::validate(1, vec![a, c]),
            Err(Error::NotAComplex { .. })
        ));
    }

    #[test]
    fn disjoint_parallel_lines_form_a_complex() {
        let l0 = Polyhedron::from_generators(2, &[qvec(&[0, 0])], &[], &[qvec(&[1, 0])]).unwrap();
        let l1 = Polyhedron::from_generators(2, &[qvec(&[0, 1])], &[], &[qvec(&[1, 0])]).unwrap();
        let cx = Complex::validate(2, vec![l0, l1]).unwrap();
        assert_eq!(cx.cells().len(), 2);
    }
}
