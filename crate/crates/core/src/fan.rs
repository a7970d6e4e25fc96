//! Fans: collections of cones pairwise intersecting in common faces.
//!
//! Fans are stored by maximal cones with an eagerly computed face
//! closure. Support comparisons are decided by the exact covering test
//! from the cone layer, never by generator comparison.

use num::{Signed, Zero};

use crate::cone::{cover_witness, Cone};
use crate::error::{Error, Result};
use crate::polyhedron::{Complex, Polyhedron};
use crate::vecs;
use crate::{QVec, Rat, ZVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    maximal: Vec<Cone>,
    closure: Vec<Cone>,
}

impl Fan {
    /// Check the common-face condition on every pair and build the fan.
    /// The reported indices refer to the input list.
    pub fn validate(rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        for c in &cones {
            if c.rank() != rank {
                return Err(Error::RankMismatch(rank, c.rank()));
            }
        }
        let mut distinct: Vec<(usize, Cone)> = Vec::new();
        for (i, c) in cones.into_iter().enumerate() {
            if !distinct.iter().any(|(_, d)| *d == c) {
                distinct.push((i, c));
            }
        }
        for a in 0..distinct.len() {
            for b in a + 1..distinct.len() {
                let m = distinct[a].1.intersect(&distinct[b].1)?;
                if !m.is_face_of(&distinct[a].1)? || !m.is_face_of(&distinct[b].1)? {
                    return Err(Error::NotAFan {
                        first: distinct[a].0,
                        second: distinct[b].0,
                        intersection_rays: m.generators(),
                    });
                }
            }
        }
        let mut maximal: Vec<Cone> = Vec::new();
        for (_, c) in &distinct {
            if !distinct
                .iter()
                .any(|(_, d)| d != c && d.contains_cone(c))
            {
                maximal.push(c.clone());
            }
        }
        maximal.sort();
        let mut closure: Vec<Cone> = Vec::new();
        for c in &maximal {
            for f in c.faces() {
                if !closure.contains(&f) {
                    closure.push(f);
                }
            }
        }
        closure.sort();
        Ok(Fan { rank, maximal, closure })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// All faces of all maximal cones, including the maximal cones.
    pub fn face_closure(&self) -> &[Cone] {
        &self.closure
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Primitive generators of the 1-dimensional cones of the closure.
    pub fn rays(&self) -> Vec<ZVec> {
        self.closure
            .iter()
            .filter(|c| c.is_pointed() && c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect()
    }

    /// Index of some maximal cone containing the point, if any.
    pub fn support_membership(&self, x: &QVec) -> Option<usize> {
        self.maximal.iter().position(|c| c.contains_q(x))
    }

    pub fn support_contains(&self, x: &ZVec) -> bool {
        self.maximal.iter().any(|c| c.contains(x))
    }

    /// A point of `self`'s support outside `other`'s, if one exists.
    pub fn support_difference_witness(&self, other: &Fan) -> Option<ZVec> {
        let cover: Vec<&Cone> = other.maximal.iter().collect();
        for c in &self.maximal {
            if let Some(w) = cover_witness(c, &cover) {
                return Some(w);
            }
        }
        None
    }

    pub fn support_equal(&self, other: &Fan) -> bool {
        self.support_difference_witness(other).is_none()
            && other.support_difference_witness(self).is_none()
    }

    /// `self` refines `other`: equal supports and every cone of `self`
    /// lies in a cone of `other`.
    pub fn refines(&self, other: &Fan) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if !self.support_equal(other) {
            return Ok(false);
        }
        Ok(self
            .maximal
            .iter()
            .all(|c| other.maximal.iter().any(|d| d.contains_cone(c))))
    }

    pub fn common_refinement(&self, other: &Fan) -> Result<Fan> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if let Some(w) = self
            .support_difference_witness(other)
            .or_else(|| other.support_difference_witness(self))
        {
            return Err(Error::SupportMismatch { witness: w });
        }
        let mut pieces: Vec<Cone> = Vec::new();
        for a in &self.maximal {
            for b in &other.maximal {
                let m = a.intersect(b)?;
                if !pieces.contains(&m) {
                    pieces.push(m);
                }
            }
        }
        let maximal: Vec<Cone> = pieces
            .iter()
            .filter(|c| !pieces.iter().any(|d| *d != **c && d.contains_cone(c)))
            .cloned()
            .collect();
        Fan::validate(self.rank, maximal)
    }

    /// Subfan of cones having `sigma` as a face.
    pub fn star(&self, sigma: &Cone) -> Result<Fan> {
        if !self.closure.contains(sigma) {
            return Err(Error::ConeNotInFan);
        }
        let cones: Vec<Cone> = self
            .maximal
            .iter()
            .filter(|c| c.contains_cone(sigma))
            .cloned()
            .collect();
        Fan::validate(self.rank, cones)
    }

    /// Basis of the maximal linear subspace `L` with `|Δ| + L = |Δ|`.
    pub fn support_translation_space(&self) -> Vec<ZVec> {
        let mut candidates: Vec<ZVec> = Vec::new();
        for r in self.rays() {
            if self.support_contains(&vecs::neg(&r)) && !candidates.contains(&r) {
                candidates.push(r);
            }
        }
        for c in &self.maximal {
            for l in c.lineality() {
                if self.support_contains(l)
                    && self.support_contains(&vecs::neg(l))
                    && !candidates.contains(l)
                {
                    candidates.push(l.clone());
                }
            }
        }
        let cover: Vec<&Cone> = self.maximal.iter().collect();
        let mut basis: Vec<ZVec> = Vec::new();
        for v in candidates {
            if vecs::in_span(&v, &basis) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(v);
            let ok = self.maximal.iter().all(|c| {
                let mut lin = c.lineality().to_vec();
                lin.extend(trial.iter().cloned());
                let shifted = Cone::from_rays(self.rank, c.rays(), &lin).expect("shifted cone");
                cover_witness(&shifted, &cover).is_none()
            });
            if ok {
                basis = trial;
            }
        }
        vecs::rref(&basis, self.rank)
    }

    /// Greedily merge adjacent maximal cones whose union is a cone,
    /// keeping the fan axioms; iterates to a fixpoint.
    pub fn coarsen(&self) -> (Fan, bool) {
        let mut fan = self.clone();
        let cap = 10_000;
        for _ in 0..cap {
            let mut merged: Option<Fan> = None;
            'search: for i in 0..fan.maximal.len() {
                for j in i + 1..fan.maximal.len() {
                    let a = &fan.maximal[i];
                    let b = &fan.maximal[j];
                    let mut rays: Vec<ZVec> = a.rays().to_vec();
                    rays.extend(b.rays().to_vec());
                    let mut lin: Vec<ZVec> = a.lineality().to_vec();
                    lin.extend(b.lineality().to_vec());
                    let u = match Cone::from_rays(fan.rank, &rays, &lin) {
                        Ok(u) => u,
                        Err(_) => continue,
                    };
                    if u == *a || u == *b {
                        continue;
                    }
                    if cover_witness(&u, &[a, b]).is_some() {
                        continue; // union is not a cone
                    }
                    let mut cones: Vec<Cone> = fan
                        .maximal
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, c)| c.clone())
                        .collect();
                    cones.push(u);
                    if let Ok(f) = Fan::validate(fan.rank, cones) {
                        merged = Some(f);
                        break 'search;
                    }
                }
            }
            match merged {
                Some(f) => fan = f,
                None => return (fan, true),
            }
        }
        (fan, false)
    }

    /// Offending generator with negative last coordinate, if any.
    pub fn admissibility_witness(&self) -> Option<ZVec> {
        let last = self.rank - 1;
        for c in &self.maximal {
            for r in c.rays() {
                if r[last].is_negative() {
                    return Some(r.clone());
                }
            }
            for l in c.lineality() {
                if !l[last].is_zero() {
                    return Some(l.clone());
                }
            }
        }
        None
    }

    /// Cells `σ ∩ {last coordinate = 1}` of an admissible fan, as a
    /// complex in one rank lower.
    pub fn slice_at_height_one(&self) -> Result<Complex> {
        if let Some(w) = self.admissibility_witness() {
            return Err(Error::NotAdmissible(w));
        }
        let last = self.rank - 1;
        let mut cells: Vec<Polyhedron> = Vec::new();
        for c in &self.maximal {
            let mut vertices: Vec<QVec> = Vec::new();
            let mut rays: Vec<QVec> = Vec::new();
            for r in c.rays() {
                let h = &r[last];
                if h.is_positive() {
                    let denom = Rat::from_integer(h.clone());
                    vertices.push(
                        r[..last]
                            .iter()
                            .map(|e| Rat::from_integer(e.clone()) / &denom)
                            .collect(),
                    );
                } else {
                    rays.push(vecs::zvec_to_qvec(&r[..last].to_vec()));
                }
            }
            if vertices.is_empty() {
                continue; // recession-only cone, empty slice
            }
            let lin: Vec<QVec> = c
                .lineality()
                .iter()
                .map(|l| vecs::zvec_to_qvec(&l[..last].to_vec()))
                .collect();
            let cell = Polyhedron::from_generators(last, &vertices, &rays, &lin)?;
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
        Complex::validate(last, cells)
    }
}
