//! Rational polyhedral cones with exact V- and H-representations.
//!
//! Both representations are kept on every cone and are canonical: ray
//! generators are primitive, reduced modulo the lineality space and
//! sorted; lineality and equation bases are in integer reduced row
//! echelon form. Structural equality therefore coincides with set
//! equality, but set equality is still decided by mutual generator
//! membership where the contract asks for it.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeContext;
use crate::vecs::{self, dot};
use crate::{Int, QVec, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<ZVec>,
    lineality: Vec<ZVec>,
    halfspaces: Vec<ZVec>,
    equations: Vec<ZVec>,
}

struct DdRay {
    v: ZVec,
    tight: Vec<bool>,
}

/// Double description: extreme rays and lineality basis of
/// `{x : <h,x> >= 0 for h in ineqs, <e,x> = 0 for e in eqs}`.
fn extreme_description(rank: usize, ineqs: &[ZVec], eqs: &[ZVec]) -> (Vec<ZVec>, Vec<ZVec>) {
    let mut lin: Vec<ZVec> = (0..rank).map(|i| vecs::unit(rank, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();
    let n_ineqs = ineqs.len();

    for e in eqs {
        if vecs::is_zero(e) {
            continue;
        }
        if let Some(i) = lin.iter().position(|l| !dot(e, l).is_zero()) {
            let l0 = lin.remove(i);
            let d0 = dot(e, &l0);
            for l in lin.iter_mut() {
                let dl = dot(e, l);
                if !dl.is_zero() {
                    *l = vecs::primitive(&vecs::combine(&d0, l, &-dl, &l0));
                }
            }
            for r in rays.iter_mut() {
                let dr = dot(e, &r.v);
                if !dr.is_zero() {
                    r.v = vecs::primitive(&vecs::combine(&d0, &r.v, &-dr, &l0));
                }
            }
        } else {
            let mut kept: Vec<DdRay> = Vec::new();
            for r in rays {
                if dot(e, &r.v).is_zero() {
                    kept.push(r);
                }
            }
            rays = kept;
        }
    }

    for (k, h) in ineqs.iter().enumerate() {
        if vecs::is_zero(h) {
            for r in rays.iter_mut() {
                r.tight[k] = true;
            }
            continue;
        }
        if let Some(i) = lin.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lin.remove(i);
            if dot(h, &l0).is_negative() {
                l0 = vecs::neg(&l0);
            }
            let d0 = dot(h, &l0);
            for l in lin.iter_mut() {
                let dl = dot(h, l);
                if !dl.is_zero() {
                    *l = vecs::primitive(&vecs::combine(&d0, l, &-dl, &l0));
                }
            }
            for r in rays.iter_mut() {
                let dr = dot(h, &r.v);
                if !dr.is_zero() {
                    r.v = vecs::primitive(&vecs::combine(&d0, &r.v, &-dr, &l0));
                }
                r.tight[k] = true;
            }
            // the pivoted generator was lineality, hence tight at every
            // earlier constraint
            let mut tight = vec![false; n_ineqs];
            for t in tight.iter_mut().take(k) {
                *t = true;
            }
            rays.push(DdRay { v: l0, tight });
        } else {
            let mut pos: Vec<DdRay> = Vec::new();
            let mut zero: Vec<DdRay> = Vec::new();
            let mut neg: Vec<DdRay> = Vec::new();
            for mut r in rays {
                let d = dot(h, &r.v);
                if d.is_zero() {
                    r.tight[k] = true;
                    zero.push(r);
                } else if d.is_positive() {
                    pos.push(r);
                } else {
                    neg.push(r);
                }
            }
            let adjacent = |p: &DdRay, n: &DdRay, others: &[&DdRay]| -> bool {
                let meet: Vec<bool> = p
                    .tight
                    .iter()
                    .zip(&n.tight)
                    .map(|(a, b)| *a && *b)
                    .collect();
                !others.iter().any(|r| {
                    !std::ptr::eq(*r, p)
                        && !std::ptr::eq(*r, n)
                        && meet
                            .iter()
                            .zip(&r.tight)
                            .all(|(m, t)| !*m || *t)
                })
            };
            let mut combos: Vec<DdRay> = Vec::new();
            {
                let all: Vec<&DdRay> = pos.iter().chain(zero.iter()).chain(neg.iter()).collect();
                for p in &pos {
                    for n in &neg {
                        if !adjacent(p, n, &all) {
                            continue;
                        }
                        let dp = dot(h, &p.v);
                        let dn = dot(h, &n.v);
                        let v = vecs::primitive(&vecs::combine(&dp, &n.v, &-dn, &p.v));
                        let mut tight: Vec<bool> = p
                            .tight
                            .iter()
                            .zip(&n.tight)
                            .map(|(a, b)| *a && *b)
                            .collect();
                        tight[k] = true;
                        combos.push(DdRay { v, tight });
                    }
                }
            }
            rays = pos;
            rays.extend(zero);
            for c in combos {
                if !rays.iter().any(|r| r.v == c.v) {
                    rays.push(c);
                }
            }
        }
    }

    (rays.into_iter().map(|r| r.v).collect(), lin)
}

/// Canonicalize a V-description coming out of the double description
/// run for the system `(ineqs, eqs)`: keep only extreme rays, reduce
/// them modulo the lineality space, make everything primitive, sorted.
fn canonical_v(
    rank: usize,
    ineqs: &[ZVec],
    eqs: &[ZVec],
    dd_rays: Vec<ZVec>,
    dd_lin: Vec<ZVec>,
) -> (Vec<ZVec>, Vec<ZVec>) {
    let lin = vecs::rref(&dd_lin, rank);
    let lin_dim = lin.len();
    let mut rays: Vec<ZVec> = Vec::new();
    for r in &dd_rays {
        // extreme iff the tight constraints cut the span down to a line
        // modulo the lineality space
        let mut tight: Vec<ZVec> = eqs.to_vec();
        for h in ineqs {
            if dot(h, r).is_zero() {
                tight.push(h.clone());
            }
        }
        if vecs::rank(&tight) + lin_dim + 1 != rank {
            continue;
        }
        if let Some(red) = vecs::reduce_mod_span(r, &lin) {
            if !rays.contains(&red) {
                rays.push(red);
            }
        }
    }
    rays.sort();
    (rays, lin)
}

fn dual_description(rank: usize, ineqs: &[ZVec], eqs: &[ZVec]) -> (Vec<ZVec>, Vec<ZVec>) {
    let (r, l) = extreme_description(rank, ineqs, eqs);
    canonical_v(rank, ineqs, eqs, r, l)
}

impl Cone {
    pub fn from_rays(rank: usize, rays: &[ZVec], lineality: &[ZVec]) -> Result<Cone> {
        for v in rays.iter().chain(lineality) {
            if v.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: v.len() });
            }
        }
        let gens_r: Vec<ZVec> = rays.iter().map(|r| vecs::primitive(r)).filter(|r| !vecs::is_zero(r)).collect();
        let gens_l: Vec<ZVec> = lineality.iter().map(|l| vecs::primitive(l)).filter(|l| !vecs::is_zero(l)).collect();
        let (h, e) = dual_description(rank, &gens_r, &gens_l);
        let (cr, cl) = dual_description(rank, &h, &e);
        Ok(Cone { rank, rays: cr, lineality: cl, halfspaces: h, equations: e })
    }

    pub fn from_rays_q(rank: usize, rays: &[QVec], lineality: &[QVec]) -> Result<Cone> {
        let r: Vec<ZVec> = rays.iter().filter_map(|v| vecs::qvec_direction(v)).collect();
        let l: Vec<ZVec> = lineality.iter().filter_map(|v| vecs::qvec_direction(v)).collect();
        for v in rays.iter().chain(lineality) {
            if v.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: v.len() });
            }
        }
        Cone::from_rays(rank, &r, &l)
    }

    pub fn from_halfspaces(rank: usize, ineqs: &[ZVec], eqs: &[ZVec]) -> Result<Cone> {
        for v in ineqs.iter().chain(eqs) {
            if v.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: v.len() });
            }
        }
        let hs: Vec<ZVec> = ineqs.iter().map(|h| vecs::primitive(h)).filter(|h| !vecs::is_zero(h)).collect();
        let es: Vec<ZVec> = eqs.iter().map(|e| vecs::primitive(e)).filter(|e| !vecs::is_zero(e)).collect();
        let (r, l) = dual_description(rank, &hs, &es);
        let (h, e) = dual_description(rank, &r, &l);
        Ok(Cone { rank, rays: r, lineality: l, halfspaces: h, equations: e })
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_rays(rank, &[], &[]).expect("zero cone")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[ZVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[ZVec] {
        &self.lineality
    }

    pub fn halfspaces(&self) -> &[ZVec] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[ZVec] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.clone());
        vecs::rank(&gens)
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// All generators: rays plus lineality basis.
    pub fn generators(&self) -> Vec<ZVec> {
        let mut g = self.rays.clone();
        g.extend(self.lineality.clone());
        g
    }

    /// `{u : <u,x> >= 0 for all x in C}`. A swap of representations.
    pub fn dual(&self) -> Cone {
        Cone {
            rank: self.rank,
            rays: self.halfspaces.clone(),
            lineality: self.equations.clone(),
            halfspaces: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, x: &ZVec) -> bool {
        self.halfspaces.iter().all(|h| !dot(h, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_q(&self, x: &QVec) -> bool {
        match vecs::qvec_direction(x) {
            None => true, // the origin is in every cone
            Some(v) => self.contains(&v),
        }
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&vecs::neg(l)))
    }

    /// Set equality by mutual generator membership.
    pub fn set_eq(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut ineqs = self.halfspaces.clone();
        ineqs.extend(other.halfspaces.clone());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.clone());
        Cone::from_halfspaces(self.rank, &ineqs, &eqs)
    }

    /// Sum of the ray generators plus the lineality basis; lies in the
    /// relative interior.
    pub fn relative_interior_point(&self) -> Result<ZVec> {
        if self.is_zero() {
            return Err(Error::ZeroCone);
        }
        let mut p = vec![Int::zero(); self.rank];
        for g in self.rays.iter().chain(&self.lineality) {
            p = vecs::add(&p, g);
        }
        Ok(p)
    }

    /// Is `self` a face of `c`? The smallest face of `c` containing
    /// `self` is cut out by the halfspaces of `c` tight on `self`.
    pub fn is_face_of(&self, c: &Cone) -> Result<bool> {
        if self.rank != c.rank {
            return Err(Error::RankMismatch(self.rank, c.rank));
        }
        if !c.contains_cone(self) {
            return Ok(false);
        }
        let gens = self.generators();
        let mut eqs = c.equations.clone();
        for h in &c.halfspaces {
            if gens.iter().all(|g| dot(h, g).is_zero()) {
                eqs.push(h.clone());
            }
        }
        let smallest = Cone::from_halfspaces(c.rank, &c.halfspaces, &eqs)?;
        Ok(smallest.set_eq(self))
    }

    /// Facets, via the irredundant halfspace list. A linear subspace has
    /// no proper faces.
    pub fn facets(&self) -> Vec<Cone> {
        let mut out = Vec::new();
        for h in &self.halfspaces {
            let mut eqs = self.equations.clone();
            eqs.push(h.clone());
            let f = Cone::from_halfspaces(self.rank, &self.halfspaces, &eqs).expect("facet");
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    /// Full face lattice including `self` and the minimal face.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: Vec<Cone> = vec![self.clone()];
        let mut queue: Vec<Cone> = vec![self.clone()];
        while let Some(c) = queue.pop() {
            for f in c.facets() {
                if !seen.contains(&f) {
                    seen.push(f.clone());
                    queue.push(f);
                }
            }
        }
        seen.sort();
        seen
    }

    /// Basis of `C ∩ (−C)`.
    pub fn lineality_space(&self) -> Vec<ZVec> {
        self.lineality.clone()
    }

    /// Image under a linear map given by rows (one row per output
    /// coordinate).
    pub fn project(&self, rows: &[ZVec]) -> Result<Cone> {
        let rank = rows.len();
        let rays: Vec<ZVec> = self
            .rays
            .iter()
            .map(|r| rows.iter().map(|row| dot(row, r)).collect())
            .collect();
        let lin: Vec<ZVec> = self
            .lineality
            .iter()
            .map(|l| rows.iter().map(|row| dot(row, l)).collect())
            .collect();
        Cone::from_rays(rank, &rays, &lin)
    }
}

/// Exact covering test: is `target ⊆ ∪ cover`? Returns a point of
/// `target` outside the union when the answer is no.
pub fn cover_witness(target: &Cone, cover: &[&Cone]) -> Option<ZVec> {
    let mut pool: Vec<ZVec> = Vec::new();
    for c in cover {
        for h in c.halfspaces.iter().chain(c.equations.iter()) {
            let o = vecs::orient(h);
            if !pool.contains(&o) {
                pool.push(o);
            }
        }
    }
    cover_rec(target, cover, &pool)
}

fn cover_rec(target: &Cone, cover: &[&Cone], pool: &[ZVec]) -> Option<ZVec> {
    if cover.iter().any(|c| c.contains_cone(target)) {
        return None;
    }
    if target.is_zero() {
        return Some(vec![Int::zero(); target.rank]);
    }
    for (i, h) in pool.iter().enumerate() {
        let mut pos = false;
        let mut neg = false;
        for r in &target.rays {
            let d = dot(h, r);
            pos |= d.is_positive();
            neg |= d.is_negative();
        }
        for l in &target.lineality {
            if !dot(h, l).is_zero() {
                pos = true;
                neg = true;
            }
        }
        if pos && neg {
            let rest: Vec<ZVec> = pool
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let mut ineqs = target.halfspaces.clone();
            ineqs.push(h.clone());
            let a = Cone::from_halfspaces(target.rank, &ineqs, &target.equations).expect("split");
            ineqs.pop();
            ineqs.push(vecs::neg(h));
            let b = Cone::from_halfspaces(target.rank, &ineqs, &target.equations).expect("split");
            if let Some(w) = cover_rec(&a, cover, &rest) {
                return Some(w);
            }
            return cover_rec(&b, cover, &rest);
        }
    }
    Some(target.relative_interior_point().expect("nonzero"))
}

const HILBERT_RANK_CAP: usize = 6;

/// Minimal generating set of `C ∩ (N ⊕ dZ)` as a monoid, for a pointed
/// cone at desk scale. Enumerates lattice points of the bounding box of
/// the generator zonotope and reduces to irreducibles by increasing
/// degree.
pub fn hilbert_basis(c: &Cone, ctx: &LatticeContext, box_cap: usize) -> Result<Vec<ZVec>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if c.rank > HILBERT_RANK_CAP {
        return Err(Error::RankTooLarge(c.rank, HILBERT_RANK_CAP));
    }
    if ctx.rank != c.rank {
        return Err(Error::RankMismatch(ctx.rank, c.rank));
    }
    if c.is_zero() {
        return Ok(Vec::new());
    }
    let n = c.rank;
    // scale coordinates so the working lattice becomes Z^n
    let scaled_ray = |r: &ZVec| -> ZVec {
        let q = ctx.to_unit_coords(&vecs::zvec_to_qvec(r));
        vecs::qvec_direction(&q).expect("nonzero ray")
    };
    let scale_functional = |h: &ZVec| -> ZVec {
        let mut s = h.clone();
        s[n - 1] = &s[n - 1] * &ctx.scale;
        s
    };
    let rays: Vec<ZVec> = c.rays.iter().map(scaled_ray).collect();
    let halfspaces: Vec<ZVec> = c.halfspaces.iter().map(&scale_functional).collect();
    let equations: Vec<ZVec> = c.equations.iter().map(&scale_functional).collect();

    let to_i128 = |v: &ZVec| -> Result<Vec<i128>> {
        v.iter()
            .map(|e| i128::try_from(e).map_err(|_| Error::EnumerationOverflow))
            .collect()
    };
    let rays_i: Vec<Vec<i128>> = rays.iter().map(&to_i128).collect::<Result<_>>()?;
    let hs_i: Vec<Vec<i128>> = halfspaces.iter().map(&to_i128).collect::<Result<_>>()?;
    let eq_i: Vec<Vec<i128>> = equations.iter().map(&to_i128).collect::<Result<_>>()?;

    let mut bounds = vec![0i128; n];
    for r in &rays_i {
        for (b, e) in bounds.iter_mut().zip(r) {
            *b = b
                .checked_add(e.abs())
                .ok_or(Error::EnumerationOverflow)?;
        }
    }
    let mut total: u128 = 1;
    for b in &bounds {
        let side = (2 * *b + 1) as u128;
        total = total.checked_mul(side).ok_or(Error::EnumerationOverflow)?;
        if total > box_cap as u128 {
            return Err(Error::BoxTooLarge(usize::MAX, box_cap));
        }
    }

    let doti = |a: &[i128], b: &[i128]| -> i128 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let in_monoid = |x: &[i128]| -> bool {
        hs_i.iter().all(|h| doti(h, x) >= 0) && eq_i.iter().all(|e| doti(e, x) == 0)
    };

    // strictly positive grading on the pointed cone
    let mut grade = vec![0i128; n];
    for h in &hs_i {
        for (g, e) in grade.iter_mut().zip(h) {
            *g += e;
        }
    }

    let mut candidates: Vec<Vec<i128>> = Vec::new();
    let mut x: Vec<i128> = bounds.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|e| *e != 0) && in_monoid(&x) {
            candidates.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            x[k] += 1;
            if x[k] <= bounds[k] {
                break;
            }
            x[k] = -bounds[k];
            k += 1;
        }
        if k == n {
            break;
        }
    }
    candidates.sort_by_key(|x| (doti(&grade, x), x.clone()));

    let mut basis: Vec<Vec<i128>> = Vec::new();
    'outer: for x in candidates {
        for b in &basis {
            let diff: Vec<i128> = x.iter().zip(b).map(|(a, c)| a - c).collect();
            if diff.iter().any(|e| *e != 0) && in_monoid(&diff) {
                continue 'outer;
            }
        }
        basis.push(x);
    }

    let mut out: Vec<ZVec> = basis
        .into_iter()
        .map(|x| {
            let z: ZVec = x.into_iter().map(Int::from).collect();
            ctx.from_unit_coords(&z)
        })
        .collect();
    out.sort();
    Ok(out)
}
