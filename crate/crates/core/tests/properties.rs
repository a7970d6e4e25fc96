//! Property tests for the structural invariants of the kernel layers.

use proptest::collection::vec;
use proptest::prelude::*;

use tropkit::cone::Cone;
use tropkit::fan::Fan;
use tropkit::lattice::{
    primitive_generator, smith_normal_form, solve_integer_linear, LatticeContext, ZMatrix,
};
use tropkit::polyhedron::{Complex, Polyhedron};
use tropkit::toric::tcone_build;
use tropkit::tropical::{initial_form, is_tropical_point, Term, ValuedPoly};
use tropkit::vecs;
use tropkit::{Int, QVec, Rat, ZVec};

fn zv(v: &[i64]) -> ZVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn qv(v: &[i64]) -> QVec {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

fn rays_strategy(rank: usize, max_rays: usize) -> impl Strategy<Value = Vec<ZVec>> {
    vec(vec(-3i64..=3, rank), 1..=max_rays).prop_map(|rs| rs.iter().map(|r| zv(r)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_dual_is_identity(rays in rays_strategy(3, 4)) {
        let c = Cone::from_rays(3, &rays, &[]).unwrap();
        prop_assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn construction_is_canonical(rays in rays_strategy(3, 4), k in 1i64..=4) {
        let c = Cone::from_rays(3, &rays, &[]).unwrap();
        // scaled and duplicated generators describe the same set
        let mut noisy: Vec<ZVec> = rays.iter().map(|r| vecs::scale(&Int::from(k), r)).collect();
        noisy.extend(rays.iter().rev().cloned());
        prop_assert_eq!(Cone::from_rays(3, &noisy, &[]).unwrap(), c);
    }

    #[test]
    fn intersection_is_a_lower_bound(a in rays_strategy(3, 3), b in rays_strategy(3, 3)) {
        let ca = Cone::from_rays(3, &a, &[]).unwrap();
        let cb = Cone::from_rays(3, &b, &[]).unwrap();
        let m = ca.intersect(&cb).unwrap();
        prop_assert_eq!(&m, &cb.intersect(&ca).unwrap());
        prop_assert!(ca.contains_cone(&m));
        prop_assert!(cb.contains_cone(&m));
    }

    #[test]
    fn duality_pairing_nonnegative(rays in rays_strategy(3, 4)) {
        let c = Cone::from_rays(3, &rays, &[]).unwrap();
        let d = c.dual();
        for g in c.generators() {
            for h in d.rays() {
                prop_assert!(vecs::dot(&g, h) >= Int::from(0));
            }
        }
    }

    #[test]
    fn smith_form_is_a_diagonalization(entries in vec(-9i64..=9, 9)) {
        let rows: Vec<ZVec> = entries.chunks(3).map(zv).collect();
        let a = ZMatrix::from_rows(rows).unwrap();
        let snf = smith_normal_form(&a);
        let d = snf.u.mul(&a).mul(&snf.v);
        prop_assert!(d.is_diagonal());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0] != Int::from(0) {
                prop_assert_eq!(&w[1] % &w[0], Int::from(0));
            } else {
                prop_assert_eq!(&w[1], &Int::from(0));
            }
        }
    }

    #[test]
    fn integer_solver_solutions_verify(entries in vec(-5i64..=5, 6), b in vec(-5i64..=5, 2)) {
        let rows: Vec<ZVec> = entries.chunks(3).map(zv).collect();
        let a = ZMatrix::from_rows(rows).unwrap();
        let bz = zv(&b);
        if let Some(sol) = solve_integer_linear(&a, &bz).unwrap() {
            prop_assert_eq!(a.mul_vec(&sol.solution), bz);
            for k in &sol.kernel_basis {
                prop_assert!(a.mul_vec(k).iter().all(|e| *e == Int::from(0)));
            }
        }
    }

    #[test]
    fn primitive_generator_scale_invariant(v in vec(-6i64..=6, 3), k in 1i64..=5) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let ctx = LatticeContext::standard(3);
        let p1 = primitive_generator(&qv(&v), &ctx).unwrap();
        let scaled: QVec = qv(&v).iter().map(|e| e * Rat::from_integer(Int::from(k))).collect();
        prop_assert_eq!(primitive_generator(&scaled, &ctx).unwrap(), p1);
    }

    #[test]
    fn initial_form_never_empty(exps in vec(vec(-2i64..=2, 2), 1..=5), w in vec(-4i64..=4, 2)) {
        let terms: Vec<Term> = exps.iter().enumerate().map(|(i, m)| Term {
            exponent: zv(m),
            valuation: Rat::from_integer(Int::from((i as i64) % 2)),
            residue: format!("c{i}"),
        }).collect();
        if let Ok(f) = ValuedPoly::new(2, terms) {
            let inf = initial_form(&f, &qv(&w)).unwrap();
            prop_assert!(!inf.terms.is_empty());
        }
    }

    #[test]
    fn constant_coefficient_membership_is_conical(
        exps in vec(vec(-2i64..=2, 2), 2..=5),
        w in vec(-4i64..=4, 2),
        k in 1i64..=4,
    ) {
        let uniq: Vec<ZVec> = {
            let mut out: Vec<ZVec> = Vec::new();
            for m in &exps {
                let m = zv(m);
                if !out.contains(&m) { out.push(m); }
            }
            out
        };
        prop_assume!(uniq.len() >= 2);
        let f = ValuedPoly::from_exponents(2, &uniq).unwrap();
        let scaled: QVec = qv(&w).iter().map(|e| e * Rat::from_integer(Int::from(k))).collect();
        prop_assert_eq!(
            is_tropical_point(&f, &qv(&w)).unwrap(),
            is_tropical_point(&f, &scaled).unwrap()
        );
    }

    #[test]
    fn ray_fans_refine_their_common_refinement_inputs(dirs in vec(vec(-3i64..=3, 2), 1..=4)) {
        // fans of pairwise distinct rays are always valid
        let mut cones: Vec<Cone> = Vec::new();
        for d in &dirs {
            let d = zv(d);
            if d.iter().any(|e| *e != Int::from(0)) {
                let c = Cone::from_rays(2, &[d], &[]).unwrap();
                if !cones.contains(&c) { cones.push(c); }
            }
        }
        prop_assume!(!cones.is_empty());
        let fan = Fan::validate(2, cones).unwrap();
        prop_assert!(fan.refines(&fan).unwrap());
        let cr = fan.common_refinement(&fan).unwrap();
        prop_assert_eq!(&cr, &fan);
    }

    #[test]
    fn tcone_slice_roundtrip_on_boxes(corner in vec(-4i64..=4, 2), side in 1i64..=3) {
        // axis-aligned box [c, c+side]^2
        let lo = qv(&corner);
        let hi: QVec = corner.iter().map(|&c| Rat::from_integer(Int::from(c + side))).collect();
        let vertices = vec![
            lo.clone(),
            vec![lo[0].clone(), hi[1].clone()],
            vec![hi[0].clone(), lo[1].clone()],
            hi,
        ];
        let p = Polyhedron::from_generators(2, &vertices, &[], &[]).unwrap();
        let cx = Complex::validate(2, vec![p]).unwrap();
        let t = tcone_build(&cx).unwrap();
        prop_assert!(t.slice().unwrap().cell_set_eq(&cx));
    }
}
