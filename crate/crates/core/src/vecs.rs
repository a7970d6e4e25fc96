//! Small exact linear-algebra helpers on integer and rational vectors.

use num::{Integer, One, Signed, Zero};

use crate::{Int, QVec, Rat, ZVec};

pub fn zvec(entries: &[i64]) -> ZVec {
    entries.iter().map(|&e| Int::from(e)).collect()
}

pub fn qvec(entries: &[i64]) -> QVec {
    entries.iter().map(|&e| Rat::from_integer(Int::from(e))).collect()
}

pub fn zvec_to_qvec(v: &ZVec) -> QVec {
    v.iter().map(|e| Rat::from_integer(e.clone())).collect()
}

pub fn dot(a: &ZVec, b: &ZVec) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_zq(a: &ZVec, b: &QVec) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += Rat::from_integer(x.clone()) * y;
    }
    acc
}

pub fn is_zero(v: &ZVec) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn neg(v: &ZVec) -> ZVec {
    v.iter().map(|e| -e).collect()
}

pub fn add(a: &ZVec, b: &ZVec) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &ZVec, b: &ZVec) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Int, v: &ZVec) -> ZVec {
    v.iter().map(|e| c * e).collect()
}

/// `a*x + b*y`.
pub fn combine(a: &Int, x: &ZVec, b: &Int, y: &ZVec) -> ZVec {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

fn content(v: &ZVec) -> Int {
    let mut g = Int::zero();
    for e in v {
        g = g.gcd(e);
    }
    g
}

/// Divide by the gcd of the entries; direction is preserved.
/// The zero vector is returned unchanged.
pub fn primitive(v: &ZVec) -> ZVec {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.clone();
    }
    v.iter().map(|e| e / &g).collect()
}

/// Primitive integer vector in the direction of a nonzero rational vector.
pub fn qvec_direction(v: &QVec) -> Option<ZVec> {
    let mut lcm = Int::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let scaled: ZVec = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    if is_zero(&scaled) {
        None
    } else {
        Some(primitive(&scaled))
    }
}

/// Flip the sign so the first nonzero entry is positive. Used to key
/// hyperplanes where both orientations describe the same wall.
pub fn orient(v: &ZVec) -> ZVec {
    match v.iter().find(|e| !e.is_zero()) {
        Some(e) if e.is_negative() => neg(v),
        _ => v.clone(),
    }
}

/// Rank of the row span, by fraction-free Gaussian elimination.
pub fn rank(rows: &[ZVec]) -> usize {
    let mut m: Vec<ZVec> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                m[i] = combine(&pivot, &m[i], &-&f, &m[r]);
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form over the rationals, returned as primitive
/// integer rows with positive pivots. Canonical for the row span.
pub fn rref(rows: &[ZVec], cols: usize) -> Vec<ZVec> {
    let mut m: Vec<QVec> = rows
        .iter()
        .filter(|r| !is_zero(r))
        .map(|r| zvec_to_qvec(r))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for e in m[r].iter_mut() {
            *e /= &pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    m.iter()
        .map(|row| qvec_direction(row).expect("nonzero rref row"))
        .collect()
}

/// Reduce `v` modulo the row span of an rref basis, then rescale to a
/// primitive vector. Returns `None` when `v` lies in the span.
pub fn reduce_mod_span(v: &ZVec, basis: &[ZVec]) -> Option<ZVec> {
    let mut w = zvec_to_qvec(v);
    for row in basis {
        let pivot_col = row.iter().position(|e| !e.is_zero()).expect("nonzero row");
        if !w[pivot_col].is_zero() {
            let f = &w[pivot_col] / Rat::from_integer(row[pivot_col].clone());
            for (j, e) in row.iter().enumerate() {
                let t = &f * Rat::from_integer(e.clone());
                w[j] -= t;
            }
        }
    }
    qvec_direction(&w)
}

/// Is `v` contained in the rational span of `rows`?
pub fn in_span(v: &ZVec, rows: &[ZVec]) -> bool {
    if is_zero(v) {
        return true;
    }
    let mut all = rows.to_vec();
    let base = rank(&all);
    all.push(v.clone());
    rank(&all) == base
}

pub fn unit(rank: usize, i: usize) -> ZVec {
    let mut v = vec![Int::zero(); rank];
    v[i] = Int::one();
    v
}

/// Deterministic ordering used wherever generator lists are sorted.
pub fn cmp_zvec(a: &ZVec, b: &ZVec) -> std::cmp::Ordering {
    a.cmp(b)
}
