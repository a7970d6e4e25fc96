//! Acceptance suite: one test per criterion, each printing a single
//! PASS line. All randomness is seeded; all assertions are exact.

use std::time::Instant;

use num::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use tropkit::cone::{hilbert_basis, Cone};
use tropkit::fan::Fan;
use tropkit::geomtrop::{check_condition2, hubsch_check, BoundaryData, Divisor};
use tropkit::lattice::LatticeContext;
use tropkit::polyhedron::{Complex, Polyhedron};
use tropkit::toric::{
    divisorial_valuation, properness_support_check, tcone_build, AdmissibleFan,
};
use tropkit::tropical::{is_tropical_point, tropical_hypersurface, Term, ValuedPoly};
use tropkit::vecs;
use tropkit::{Int, QVec, Rat, ZVec};

fn int(v: i64) -> Int {
    Int::from(v)
}

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

fn rand_zvec(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> ZVec {
    (0..n).map(|_| int(rng.gen_range(lo..=hi))).collect()
}

/// Stellar subdivisions of the positive orthant: always a valid fan.
fn random_orthant_subdivision(rng: &mut ChaCha8Rng, n: usize, splits: usize) -> Vec<Cone> {
    let units: Vec<ZVec> = (0..n).map(|i| vecs::unit(n, i)).collect();
    let mut maximal = vec![Cone::from_rays(n, &units, &[]).unwrap()];
    for _ in 0..splits {
        let k = rng.gen_range(0..maximal.len());
        let cone = maximal.swap_remove(k);
        let rays = cone.rays().to_vec();
        // interior point: positive combination of the rays
        let mut p = vec![Int::zero(); n];
        for r in &rays {
            let c = int(rng.gen_range(1..=3));
            p = vecs::add(&p, &vecs::scale(&c, r));
        }
        let p = vecs::primitive(&p);
        for omit in 0..rays.len() {
            let sub: Vec<ZVec> = rays
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, r)| r.clone())
                .chain(std::iter::once(p.clone()))
                .collect();
            maximal.push(Cone::from_rays(n, &sub, &[]).unwrap());
        }
    }
    maximal
}

fn relint(c: &Cone) -> ZVec {
    let mut p = vec![Int::zero(); c.rank()];
    for g in c.generators() {
        p = vecs::add(&p, &g);
    }
    vecs::primitive(&p)
}

#[test]
fn criterion_1_fan_validation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..50 {
        let n = rng.gen_range(2..=4);
        let splits = rng.gen_range(1..=2);
        let cones = random_orthant_subdivision(&mut rng, n, splits);
        assert!(
            Fan::validate(n, cones.clone()).is_ok(),
            "valid fan rejected at trial {trial}"
        );
        // break the common-face condition: replace one cone by the cone
        // spanned by interior points of two different maximal cones
        let i = rng.gen_range(0..cones.len());
        let j = (i + 1 + rng.gen_range(0..cones.len() - 1)) % cones.len();
        let bad = Cone::from_rays(n, &[relint(&cones[i]), relint(&cones[j])], &[]).unwrap();
        let mut mutated = cones;
        mutated[i] = bad;
        assert!(
            Fan::validate(n, mutated).is_err(),
            "mutated fan accepted at trial {trial}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("criterion 1 (fan validation, 50 valid + 50 mutated): PASS ({elapsed:?})");
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> ValuedPoly {
    let vals = [rat(0, 1), rat(1, 2), rat(1, 1)];
    loop {
        // rank 1 admits only 5 distinct exponents in range, so the
        // term count is resampled on collision
        let nterms = rng.gen_range(2..=6);
        let terms: Vec<Term> = (0..nterms)
            .map(|i| Term {
                exponent: rand_zvec(rng, n, -2, 2),
                valuation: vals[rng.gen_range(0..3)].clone(),
                residue: format!("c{i}"),
            })
            .collect();
        if let Ok(p) = ValuedPoly::new(n, terms) {
            return p;
        }
    }
}

#[test]
fn criterion_2_hypersurface_vs_grid() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let grid: Vec<Rat> = (-10..=10).map(|k| rat(k, 2)).collect();
    for trial in 0..100 {
        let n = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, n);
        let hyp = tropical_hypersurface(&f).unwrap();
        let mut idx = vec![0usize; n];
        loop {
            let w: QVec = idx.iter().map(|&i| grid[i].clone()).collect();
            assert_eq!(
                hyp.complex.contains_q(&w),
                is_tropical_point(&f, &w).unwrap(),
                "disagreement at {w:?} in trial {trial}"
            );
            let mut carry = 0;
            while carry < n {
                idx[carry] += 1;
                if idx[carry] < grid.len() {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
            }
            if carry == n {
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 2 (hypersurface vs 21^n grid, 100 polynomials): PASS ({elapsed:?})");
}

fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polyhedron {
    loop {
        let nv = rng.gen_range(1..=4);
        let vertices: Vec<QVec> = (0..nv)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-6..=6), 2)).collect())
            .collect();
        let nr = rng.gen_range(0..=1);
        let rays: Vec<QVec> = (0..nr)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2), 1)).collect())
            .filter(|r: &QVec| r.iter().any(|e| !e.is_zero()))
            .collect();
        if let Ok(p) = Polyhedron::from_generators(n, &vertices, &rays, &[]) {
            if !p.is_empty() {
                return p;
            }
        }
    }
}

#[test]
fn criterion_3_tcone_roundtrip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(1..=3);
        let cx = if done % 2 == 0 {
            // single random polytope, possibly unbounded
            Complex::validate(n, vec![random_polytope(&mut rng, n)]).unwrap()
        } else {
            // tropical hypersurfaces carry bounded cells when the
            // lifted valuations are mixed
            let f = random_poly(&mut rng, n);
            let hyp = tropical_hypersurface(&f).unwrap();
            if hyp.complex.is_empty() {
                continue;
            }
            hyp.complex
        };
        let t = tcone_build(&cx).unwrap();
        let back = t.slice().unwrap();
        assert!(back.cell_set_eq(&cx), "roundtrip failed on {cx:?}");
        done += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("criterion 3 (slice of cone-over-complex roundtrip, 50 complexes): PASS ({elapsed:?})");
}

#[test]
fn criterion_4_semistable_rescaling() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for trial in 0..50 {
        let n = rng.gen_range(2..=3);
        // distinct admissible rays always form a fan
        let nrays = rng.gen_range(1..=5);
        let mut cones: Vec<Cone> = Vec::new();
        for _ in 0..nrays {
            let mut r = rand_zvec(&mut rng, n, -3, 3);
            let last = r[n - 1].abs();
            r[n - 1] = last;
            if r.iter().all(|e| e.is_zero()) {
                continue;
            }
            let c = Cone::from_rays(n, &[r], &[]).unwrap();
            if !cones.contains(&c) {
                cones.push(c);
            }
        }
        let fan = Fan::validate(n, cones).unwrap();
        let ctx = LatticeContext::new(n, int(rng.gen_range(1..=3))).unwrap();
        let af = AdmissibleFan::new(fan, ctx).unwrap();
        let index = af.special_fiber_report().unwrap().reduction_index;
        let rescaled = af.rescale(&index).unwrap();
        let report = rescaled.special_fiber_report().unwrap();
        assert!(report.reduced, "not reduced after rescale in trial {trial}");
        let e = vecs::unit(n, n - 1);
        for comp in &report.components {
            let val = divisorial_valuation(&e, &comp.v, rescaled.ctx()).unwrap();
            assert_eq!(val, comp.multiplicity, "valuation mismatch in trial {trial}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("criterion 4 (rescaled special fibers reduced, 50 fans): PASS ({elapsed:?})");
}

#[test]
fn criterion_5_condition2_vs_brute_force() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let vals: Vec<ZVec> = (0..k).map(|_| rand_zvec(&mut rng, n, -3, 3)).collect();
        let divisors: Vec<Divisor> = vals
            .iter()
            .enumerate()
            .map(|(i, v)| Divisor { id: format!("D{i}"), val: v.clone() })
            .collect();
        // full nerve on the divisor set
        let mut strata: Vec<Vec<String>> = Vec::new();
        for mask in 0..(1u32 << k) {
            strata.push(
                (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| format!("D{i}"))
                    .collect(),
            );
        }
        let data = BoundaryData::new(n, divisors, &strata).unwrap();
        let stratum: Vec<usize> = (0..k).collect();
        let pivot = rng.gen_range(0..k);
        let solved = check_condition2(&data, &stratum, pivot).unwrap();
        // brute force over |m_i| <= 6
        let mut found = false;
        let mut m = vec![-6i64; n];
        'scan: loop {
            let mz: ZVec = m.iter().map(|&x| int(x)).collect();
            let ok = stratum.iter().all(|&d| {
                let want = if d == pivot { Int::one() } else { Int::zero() };
                vecs::dot(&mz, &vals[d]) == want
            });
            if ok {
                found = true;
                break 'scan;
            }
            let mut carry = 0;
            while carry < n {
                m[carry] += 1;
                if m[carry] <= 6 {
                    break;
                }
                m[carry] = -6;
                carry += 1;
            }
            if carry == n {
                break;
            }
        }
        match &solved {
            Some(sol) => {
                for &d in &stratum {
                    let want = if d == pivot { Int::one() } else { Int::zero() };
                    assert_eq!(vecs::dot(sol, &vals[d]), want, "bad solution, trial {trial}");
                }
            }
            None => assert!(!found, "solver missed a boxed solution in trial {trial}"),
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 5 (condition-2 solver vs brute force, 100 strata): PASS ({elapsed:?})");
}

#[test]
fn criterion_6_hubsch_smoke() {
    let start = Instant::now();
    let line_fan = Fan::validate(
        2,
        vec![
            Cone::from_rays(2, &[vec![int(1), int(0)]], &[]).unwrap(),
            Cone::from_rays(2, &[vec![int(0), int(1)]], &[]).unwrap(),
            Cone::from_rays(2, &[vec![int(-1), int(-1)]], &[]).unwrap(),
        ],
    )
    .unwrap();
    let report = hubsch_check(&line_fan).unwrap();
    assert!(report.passes);

    let complete_line = Fan::validate(
        1,
        vec![
            Cone::from_rays(1, &[vec![int(1)]], &[]).unwrap(),
            Cone::from_rays(1, &[vec![int(-1)]], &[]).unwrap(),
        ],
    )
    .unwrap();
    let report = hubsch_check(&complete_line).unwrap();
    assert!(!report.passes);
    let origin = report
        .per_cone
        .iter()
        .find(|r| r.cone == Cone::zero(1))
        .unwrap();
    assert_eq!(origin.translation_rank, 1);
    let elapsed = start.elapsed();
    println!("criterion 6 (hubsch smoke test): PASS ({elapsed:?})");
}

#[test]
fn criterion_7_cone_invariants() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for trial in 0..200 {
        let n = rng.gen_range(1..=4);
        let nrays = rng.gen_range(1..=4);
        let rays: Vec<ZVec> = (0..nrays).map(|_| rand_zvec(&mut rng, n, -2, 2)).collect();
        let nlin = if rng.gen_bool(0.2) { 1 } else { 0 };
        let lin: Vec<ZVec> = (0..nlin).map(|_| rand_zvec(&mut rng, n, -2, 2)).collect();
        let c = Cone::from_rays(n, &rays, &lin).unwrap();
        // double dual is the identity
        assert_eq!(c.dual().dual(), c, "double dual failed in trial {trial}");
        // duality pairing is nonnegative on generators
        for g in c.generators() {
            for h in c.dual().generators() {
                assert!(!vecs::dot(&g, &h).is_negative(), "pairing sign, trial {trial}");
            }
        }
        if c.is_pointed() {
            let basis = hilbert_basis(&c, &LatticeContext::standard(n), 100_000).unwrap();
            for h in &basis {
                assert!(c.contains(h), "basis element outside cone, trial {trial}");
            }
            // primitive ray generators are irreducible, hence present
            for r in c.rays() {
                assert!(basis.contains(r), "missing ray generator, trial {trial}");
            }
            // no element is the sum of two others
            for a in &basis {
                for b in &basis {
                    assert!(
                        !basis.contains(&vecs::add(a, b)),
                        "reducible basis element, trial {trial}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 7 (double dual + Hilbert invariants, 200 cones): PASS ({elapsed:?})");
}

// Exercised alongside the criteria: properness of the cone over a
// complex against its own fan structure.
#[test]
fn properness_self_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for _ in 0..10 {
        let n = rng.gen_range(1..=2);
        let cx = Complex::validate(n, vec![random_polytope(&mut rng, n)]).unwrap();
        let t = tcone_build(&cx).unwrap();
        let af = AdmissibleFan::new(t.fan.clone(), LatticeContext::standard(n + 1)).unwrap();
        let r = properness_support_check(&af, &cx).unwrap();
        assert!(r.proper && r.support_equal);
    }
}

