//! Combinatorics of toric schemes over a discrete valuation ring.
//!
//! Ambient lattice is N ⊕ dZ with the t-direction last; the scale d
//! lives in a `LatticeContext`. Dual-side data (chart monoids,
//! valuation exponents) is expressed in unit coordinates, the basis in
//! which the working lattice is Z^(n+1) and the uniformizer exponent is
//! the last unit vector.

use num::{Integer as NumInteger, One, Signed, Zero};

use crate::cone::{hilbert_basis, Cone};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{primitive_generator, saturated_lattice_basis, LatticeContext, LatticeQuotient};
use crate::polyhedron::Complex;
use crate::vecs;
use crate::{Int, QVec, ZVec};

/// Default cap on zonotope-box size for Hilbert-basis enumeration.
pub const DEFAULT_BOX_CAP: usize = 100_000;

/// Offending generator with negative t-coordinate, if any.
pub fn admissibility_witness(fan: &Fan) -> Option<ZVec> {
    fan.admissibility_witness()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleFan {
    fan: Fan,
    ctx: LatticeContext,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFiberComponent {
    /// Primitive ray generator in the working lattice N ⊕ dZ.
    pub v: ZVec,
    /// t-coordinate of `v` in units of the t-step d; always positive.
    pub multiplicity: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFiberReport {
    pub components: Vec<SpecialFiberComponent>,
    pub reduced: bool,
    pub reduction_index: Int,
}

impl AdmissibleFan {
    pub fn new(fan: Fan, ctx: LatticeContext) -> Result<AdmissibleFan> {
        if fan.rank() < 2 {
            return Err(Error::InvalidInput(
                "admissible fans need rank at least 2".into(),
            ));
        }
        if ctx.rank != fan.rank() {
            return Err(Error::RankMismatch(ctx.rank, fan.rank()));
        }
        if let Some(w) = fan.admissibility_witness() {
            return Err(Error::NotAdmissible(w));
        }
        Ok(AdmissibleFan { fan, ctx })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ctx(&self) -> &LatticeContext {
        &self.ctx
    }

    /// Subfan at t-height 0, re-expressed in N.
    pub fn generic_fiber_subfan(&self) -> Result<Fan> {
        let n = self.fan.rank() - 1;
        let last = n;
        let rows: Vec<ZVec> = (0..n).map(|i| vecs::unit(n + 1, i)).collect();
        let mut cones = Vec::new();
        for c in self.fan.face_closure() {
            let flat = c
                .generators()
                .iter()
                .all(|g| g[last].is_zero());
            if flat {
                cones.push(c.project(&rows)?);
            }
        }
        Fan::validate(n, cones)
    }

    /// Primitive generators, in the working lattice, of the rays of the
    /// face closure.
    fn working_rays(&self) -> Result<Vec<ZVec>> {
        self.fan
            .rays()
            .iter()
            .map(|r| primitive_generator(&vecs::zvec_to_qvec(r), &self.ctx))
            .collect()
    }

    pub fn special_fiber_report(&self) -> Result<SpecialFiberReport> {
        let last = self.fan.rank() - 1;
        let mut components = Vec::new();
        for v in self.working_rays()? {
            let h = &v[last];
            if h.is_positive() {
                let multiplicity = h / &self.ctx.scale;
                components.push(SpecialFiberComponent { v, multiplicity });
            }
        }
        let reduced = components.iter().all(|c| c.multiplicity.is_one());
        let reduction_index = components
            .iter()
            .fold(Int::one(), |acc, c| acc.lcm(&c.multiplicity));
        Ok(SpecialFiberReport { components, reduced, reduction_index })
    }

    /// Same fan considered in N ⊕ (d·scale)Z.
    pub fn rescale(&self, d: &Int) -> Result<AdmissibleFan> {
        if !d.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        let ctx = LatticeContext::new(self.ctx.rank, &self.ctx.scale * d)?;
        Ok(AdmissibleFan { fan: self.fan.clone(), ctx })
    }
}

/// Vanishing order of the monomial with exponent `m` (in unit dual
/// coordinates, uniformizer exponent last) along the divisor of `ray`.
pub fn divisorial_valuation(m: &ZVec, ray: &ZVec, ctx: &LatticeContext) -> Result<Int> {
    if m.len() != ctx.rank {
        return Err(Error::LengthMismatch { expected: ctx.rank, got: m.len() });
    }
    let v = primitive_generator(&vecs::zvec_to_qvec(ray), ctx)?;
    let vu = ctx.to_unit_coords(&vecs::zvec_to_qvec(&v));
    let mut acc = num::BigRational::zero();
    for (mi, vi) in m.iter().zip(&vu) {
        acc += num::BigRational::from_integer(mi.clone()) * vi;
    }
    debug_assert!(acc.denom().is_one());
    Ok(acc.to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPresentation {
    pub cone: Cone,
    /// Monoid generators of the dual monoid, in unit dual coordinates.
    pub generators: Vec<ZVec>,
    /// Generators whose inverses are also generators (lineality of the
    /// dual cone).
    pub units: Vec<ZVec>,
    /// The uniformizer exponent; satisfies chi^e = t.
    pub marked: ZVec,
}

pub fn chart_presentation(
    sigma: &Cone,
    ctx: &LatticeContext,
    box_cap: usize,
) -> Result<ChartPresentation> {
    let n = sigma.rank();
    if ctx.rank != n {
        return Err(Error::RankMismatch(ctx.rank, n));
    }
    let last = n - 1;
    for g in sigma.generators() {
        if g[last].is_negative() {
            return Err(Error::NotAdmissible(g.clone()));
        }
    }
    for l in sigma.lineality() {
        if !l[last].is_zero() {
            return Err(Error::NotAdmissible(l.clone()));
        }
    }
    // pass to unit coordinates, where the working lattice is Z^n
    let to_unit = |v: &ZVec| ctx.to_unit_coords(&vecs::zvec_to_qvec(v));
    let rays_u: Vec<QVec> = sigma.rays().iter().map(&to_unit).collect();
    let lin_u: Vec<QVec> = sigma.lineality().iter().map(&to_unit).collect();
    let sigma_u = Cone::from_rays_q(n, &rays_u, &lin_u)?;
    let dual = sigma_u.dual();
    let unit_ctx = LatticeContext::standard(n);
    let mut generators: Vec<ZVec> = Vec::new();
    let mut units: Vec<ZVec> = Vec::new();
    if dual.is_pointed() {
        generators = hilbert_basis(&dual, &unit_ctx, box_cap)?;
    } else {
        for b in saturated_lattice_basis(dual.lineality(), n) {
            units.push(b.clone());
            units.push(vecs::neg(&b));
            generators.push(b.clone());
            generators.push(vecs::neg(&b));
        }
        let quot = LatticeQuotient::new(dual.lineality(), n);
        if quot.rank_to > 0 {
            let proj_rays: Vec<ZVec> =
                dual.rays().iter().map(|r| quot.project(r)).collect();
            let image = Cone::from_rays(quot.rank_to, &proj_rays, &[])?;
            let image_ctx = LatticeContext::standard(quot.rank_to);
            for h in hilbert_basis(&image, &image_ctx, box_cap)? {
                generators.push(quot.lift(&h));
            }
        }
    }
    generators.sort_by(|a, b| vecs::cmp_zvec(a, b));
    let marked = vecs::unit(n, last);
    debug_assert!(sigma_u
        .rays()
        .iter()
        .chain(sigma_u.lineality())
        .all(|g| !vecs::dot(&marked, g).is_negative()));
    Ok(ChartPresentation { cone: sigma.clone(), generators, units, marked })
}

/// Fan over a complex C: the cone on C x {1} together with its
/// height-0 recession part, in one rank higher with the height last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TConeFan {
    pub fan: Fan,
}

pub fn tcone_build(c: &Complex) -> Result<TConeFan> {
    let cones: Vec<Cone> = c.cells().iter().map(|p| p.hom().clone()).collect();
    let fan = Fan::validate(c.rank() + 1, cones)?;
    Ok(TConeFan { fan })
}

impl TConeFan {
    pub fn slice(&self) -> Result<Complex> {
        self.fan.slice_at_height_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropernessReport {
    /// |Δ| contains the fan over the complex.
    pub proper: bool,
    /// Point of the fan over the complex missing from |Δ|.
    pub witness: Option<ZVec>,
    /// Point of |Δ| outside the fan over the complex, when |Δ| is
    /// strictly larger.
    pub excess_witness: Option<ZVec>,
    pub support_equal: bool,
}

pub fn properness_support_check(
    delta: &AdmissibleFan,
    c: &Complex,
) -> Result<PropernessReport> {
    if delta.fan().rank() != c.rank() + 1 {
        return Err(Error::RankMismatch(delta.fan().rank(), c.rank() + 1));
    }
    let t = tcone_build(c)?;
    let witness = t.fan.support_difference_witness(delta.fan());
    let excess_witness = delta.fan().support_difference_witness(&t.fan);
    Ok(PropernessReport {
        proper: witness.is_none(),
        support_equal: witness.is_none() && excess_witness.is_none(),
        witness,
        excess_witness,
    })
}
