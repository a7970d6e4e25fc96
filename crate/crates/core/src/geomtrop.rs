//! Geometric tropicalization from boundary-divisor data, lattice
//! certificates for the schon conditions, and the hubsch rigidity check.

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{smith_normal_form, solve_integer_linear, LatticeQuotient, ZMatrix};
use crate::{Int, ZVec};
use num::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub id: String,
    pub val: ZVec,
}

/// Boundary divisors with their divisorial valuation vectors, plus the
/// nerve of nonempty intersections. Strata are stored as sorted index
/// sets into `divisors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    rank: usize,
    divisors: Vec<Divisor>,
    strata: Vec<Vec<usize>>,
}

impl BoundaryData {
    /// Strata are given by divisor ids. The nerve must contain the
    /// empty stratum and be closed under subsets.
    pub fn new(rank: usize, divisors: Vec<Divisor>, strata_ids: &[Vec<String>]) -> Result<Self> {
        for d in &divisors {
            if d.val.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, got: d.val.len() });
            }
        }
        for i in 0..divisors.len() {
            for j in i + 1..divisors.len() {
                if divisors[i].id == divisors[j].id {
                    return Err(Error::MalformedNerve(format!(
                        "duplicate divisor id {}",
                        divisors[i].id
                    )));
                }
            }
        }
        let mut strata: Vec<Vec<usize>> = Vec::new();
        for ids in strata_ids {
            let mut s: Vec<usize> = Vec::new();
            for id in ids {
                let k = divisors
                    .iter()
                    .position(|d| d.id == *id)
                    .ok_or_else(|| Error::MalformedNerve(format!("unknown divisor id {id}")))?;
                if !s.contains(&k) {
                    s.push(k);
                }
            }
            s.sort_unstable();
            if !strata.contains(&s) {
                strata.push(s);
            }
        }
        if !strata.iter().any(|s| s.is_empty()) {
            return Err(Error::MalformedNerve("empty stratum missing".into()));
        }
        for s in &strata {
            for drop in s {
                let sub: Vec<usize> = s.iter().filter(|k| *k != drop).copied().collect();
                if !strata.contains(&sub) {
                    return Err(Error::MalformedNerve(format!(
                        "nerve not subset-closed at {s:?}"
                    )));
                }
            }
        }
        strata.sort();
        Ok(BoundaryData { rank, divisors, strata })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    fn val_rows(&self, stratum: &[usize]) -> Vec<ZVec> {
        stratum.iter().map(|&k| self.divisors[k].val.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCone {
    pub stratum: Vec<usize>,
    pub cone: Cone,
    /// Generators extend to a lattice basis: all elementary divisors of
    /// the valuation matrix are 1 and its rank equals the stratum size.
    pub strictly_simplicial: bool,
}

#[derive(Debug)]
pub struct GeomTropResult {
    pub cones: Vec<StratumCone>,
    pub fan_status: Result<Fan>,
}

pub fn strictly_simplicial(vals: &[ZVec]) -> bool {
    if vals.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&ZMatrix::from_rows(vals.to_vec()).expect("nonempty"));
    snf.rank() == vals.len() && snf.diagonal().iter().all(|d| d.is_one())
}

pub fn geometric_tropicalization(data: &BoundaryData) -> Result<GeomTropResult> {
    let mut cones = Vec::new();
    for s in data.strata() {
        let vals = data.val_rows(s);
        cones.push(StratumCone {
            stratum: s.clone(),
            cone: Cone::from_rays(data.rank(), &vals, &[])?,
            strictly_simplicial: strictly_simplicial(&vals),
        });
    }
    let fan_status = Fan::validate(data.rank(), cones.iter().map(|c| c.cone.clone()).collect());
    Ok(GeomTropResult { cones, fan_status })
}

/// Integer solution of `<m, val_D> = [D = pivot]` over the divisors of
/// the stratum, or `None` when certified infeasible.
pub fn check_condition2(
    data: &BoundaryData,
    stratum: &[usize],
    pivot: usize,
) -> Result<Option<ZVec>> {
    if !stratum.contains(&pivot) {
        return Err(Error::PivotNotInStratum);
    }
    for &k in stratum {
        if k >= data.divisors().len() {
            return Err(Error::BadDivisorIndex(k));
        }
    }
    let a = ZMatrix::from_rows(data.val_rows(stratum))?;
    let b: ZVec = stratum
        .iter()
        .map(|&k| if k == pivot { Int::one() } else { Int::from(0) })
        .collect();
    Ok(solve_integer_linear(&a, &b)?.map(|s| s.solution))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition2Entry {
    pub stratum: Vec<usize>,
    pub pivot: usize,
    pub solution: Option<ZVec>,
}

#[derive(Debug)]
pub struct SchoenCertificate {
    /// Affineness of the strata is scheme-theoretic and never checked
    /// here.
    pub condition1_note: &'static str,
    pub condition2: Vec<Condition2Entry>,
    pub all_condition2_feasible: bool,
    pub all_strictly_simplicial: bool,
    pub fan_status: Result<Fan>,
}

pub fn schoen_certificate(data: &BoundaryData) -> Result<SchoenCertificate> {
    let gt = geometric_tropicalization(data)?;
    let mut condition2 = Vec::new();
    for s in data.strata() {
        for &pivot in s {
            condition2.push(Condition2Entry {
                stratum: s.clone(),
                pivot,
                solution: check_condition2(data, s, pivot)?,
            });
        }
    }
    Ok(SchoenCertificate {
        condition1_note: "affineness of strata not machine-checked",
        all_condition2_feasible: condition2.iter().all(|e| e.solution.is_some()),
        condition2,
        all_strictly_simplicial: gt.cones.iter().all(|c| c.strictly_simplicial),
        fan_status: gt.fan_status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubschConeReport {
    pub cone: Cone,
    /// Rank of the translation space of the star projected to the
    /// quotient lattice by the span of the cone.
    pub translation_rank: usize,
    pub translation_basis: Vec<ZVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubschReport {
    pub per_cone: Vec<HubschConeReport>,
    /// All projected stars are translation-rigid.
    pub rigid: bool,
    /// `Some(true)` when coarsening reached a fixpoint and changed
    /// nothing; `None` when the fixpoint was not certified.
    pub minimal: Option<bool>,
    pub passes: bool,
}

pub fn hubsch_check(fan: &Fan) -> Result<HubschReport> {
    let mut per_cone = Vec::new();
    for sigma in fan.face_closure() {
        let star = fan.star(sigma)?;
        let quot = LatticeQuotient::new(&sigma.generators(), fan.rank());
        let (translation_rank, translation_basis) = if quot.rank_to == 0 {
            (0, Vec::new())
        } else {
            let projected: Vec<Cone> = star
                .maximal_cones()
                .iter()
                .map(|c| {
                    let rays: Vec<ZVec> = c.rays().iter().map(|r| quot.project(r)).collect();
                    let lin: Vec<ZVec> = c.lineality().iter().map(|l| quot.project(l)).collect();
                    Cone::from_rays(quot.rank_to, &rays, &lin)
                })
                .collect::<Result<_>>()?;
            let pfan = Fan::validate(quot.rank_to, projected)?;
            let basis = pfan.support_translation_space();
            (basis.len(), basis)
        };
        per_cone.push(HubschConeReport {
            cone: sigma.clone(),
            translation_rank,
            translation_basis,
        });
    }
    let rigid = per_cone.iter().all(|r| r.translation_rank == 0);
    let (coarse, fixpoint) = fan.coarsen();
    let minimal = if fixpoint { Some(coarse == *fan) } else { None };
    Ok(HubschReport {
        per_cone,
        rigid,
        minimal,
        passes: rigid && minimal == Some(true),
    })
}
