//! Valued Laurent polynomials, initial forms, tropical hypersurfaces.
//!
//! Min-plus convention throughout: a term with exponent m and
//! coefficient valuation a contributes the affine form a + <w, m>, and
//! the initial form at w collects the terms attaining the minimum.
//! Coefficients carry only a valuation and an opaque residue tag.

use num::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::polyhedron::{Complex, Polyhedron};
use crate::vecs;
use crate::{Int, QVec, Rat, ZVec};

/// Largest denominator accepted for a coefficient valuation.
pub const MAX_VALUATION_DENOMINATOR: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponent: ZVec,
    pub valuation: Rat,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedPoly {
    rank: usize,
    terms: Vec<Term>,
}

impl ValuedPoly {
    pub fn new(rank: usize, terms: Vec<Term>) -> Result<ValuedPoly> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        for t in &terms {
            if t.exponent.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: t.exponent.len() });
            }
            if *t.valuation.denom() > Int::from(MAX_VALUATION_DENOMINATOR) {
                return Err(Error::ValuationDenominatorTooLarge);
            }
        }
        let mut terms = terms;
        terms.sort_by(|a, b| vecs::cmp_zvec(&a.exponent, &b.exponent));
        for pair in terms.windows(2) {
            if pair[0].exponent == pair[1].exponent {
                return Err(Error::DuplicateExponent(pair[0].exponent.clone()));
            }
        }
        Ok(ValuedPoly { rank, terms })
    }

    /// Constant-coefficient polynomial from exponents alone.
    pub fn from_exponents(rank: usize, exponents: &[ZVec]) -> Result<ValuedPoly> {
        let terms = exponents
            .iter()
            .enumerate()
            .map(|(i, m)| Term {
                exponent: m.clone(),
                valuation: Rat::zero(),
                residue: format!("c{i}"),
            })
            .collect();
        ValuedPoly::new(rank, terms)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.iter().all(|t| t.valuation.is_zero())
    }

    /// Value of the tropical polynomial at w: min over terms of
    /// valuation + <w, exponent>.
    pub fn tropical_value(&self, w: &QVec) -> Rat {
        self.terms
            .iter()
            .map(|t| &t.valuation + vecs::dot_zq(&t.exponent, w))
            .min()
            .expect("nonempty polynomial")
    }
}

/// Terms of f attaining the minimum of valuation + <w, exponent>.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialForm {
    pub terms: Vec<Term>,
}

impl InitialForm {
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

pub fn initial_form(f: &ValuedPoly, w: &QVec) -> Result<InitialForm> {
    if w.len() != f.rank() {
        return Err(Error::LengthMismatch { expected: f.rank(), got: w.len() });
    }
    let min = f.tropical_value(w);
    let terms = f
        .terms()
        .iter()
        .filter(|t| &t.valuation + vecs::dot_zq(&t.exponent, w) == min)
        .cloned()
        .collect();
    Ok(InitialForm { terms })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `generators[index]` has a monomial initial form at w; w is not
    /// in the tropicalization.
    Excluded { index: usize, exponent: ZVec },
    /// No generator excludes w; proves nothing without a tropical basis.
    Undetermined,
}

pub fn is_in_tropicalization_certificate(
    generators: &[ValuedPoly],
    w: &QVec,
) -> Result<Certificate> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("empty generator list".into()));
    }
    for (i, f) in generators.iter().enumerate() {
        let inf = initial_form(f, w)?;
        if inf.is_monomial() {
            return Ok(Certificate::Excluded {
                index: i,
                exponent: inf.terms[0].exponent.clone(),
            });
        }
    }
    Ok(Certificate::Undetermined)
}

/// The locus where the minimum is attained at least twice, as a
/// polyhedral complex of pure dimension rank-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalHypersurface {
    pub complex: Complex,
    /// Set when the input was a monomial, which has empty locus.
    pub monomial_input: bool,
}

pub fn tropical_hypersurface(f: &ValuedPoly) -> Result<TropicalHypersurface> {
    let n = f.rank();
    if f.is_monomial() {
        return Ok(TropicalHypersurface {
            complex: Complex::validate(n, vec![])?,
            monomial_input: true,
        });
    }
    let terms = f.terms();
    let mut cells: Vec<Polyhedron> = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            // tie locus of terms i and j, below all other terms
            let eq = (
                vecs::zvec_to_qvec(&vecs::sub(&terms[i].exponent, &terms[j].exponent)),
                &terms[j].valuation - &terms[i].valuation,
            );
            let ineqs: Vec<(QVec, Rat)> = terms
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, t)| {
                    (
                        vecs::zvec_to_qvec(&vecs::sub(&t.exponent, &terms[i].exponent)),
                        &terms[i].valuation - &t.valuation,
                    )
                })
                .collect();
            let cell = Polyhedron::from_halfspaces(n, &ineqs, &[eq])?;
            if !cell.is_empty() && !cells.contains(&cell) {
                cells.push(cell);
            }
        }
    }
    let maximal: Vec<Polyhedron> = cells
        .iter()
        .filter(|c| {
            !cells
                .iter()
                .any(|d| *d != **c && d.hom().contains_cone(c.hom()))
        })
        .cloned()
        .collect();
    Ok(TropicalHypersurface {
        complex: Complex::validate(n, maximal)?,
        monomial_input: false,
    })
}

/// Direct membership predicate, independent of the cell enumeration.
pub fn is_tropical_point(f: &ValuedPoly, w: &QVec) -> Result<bool> {
    Ok(initial_form(f, w)?.terms.len() >= 2)
}

/// Fan structure on the hypersurface of a constant-coefficient
/// polynomial.
pub fn constant_coefficient_fan(f: &ValuedPoly) -> Result<Fan> {
    if !f.is_constant_coefficient() {
        return Err(Error::NonConstantCoefficient);
    }
    let n = f.rank();
    let hyp = tropical_hypersurface(f)?;
    let mut cones: Vec<Cone> = Vec::new();
    for cell in hyp.complex.cells() {
        let rays: Vec<QVec> = cell
            .recession_rays()
            .iter()
            .map(vecs::zvec_to_qvec)
            .collect();
        let lin: Vec<QVec> = cell.lineality().iter().map(vecs::zvec_to_qvec).collect();
        cones.push(Cone::from_rays_q(n, &rays, &lin)?);
    }
    if cones.is_empty() && !hyp.monomial_input {
        // two-term polynomials in rank 1 cut out the single point 0
        cones.push(Cone::zero(n));
    }
    Fan::validate(n, cones)
}
