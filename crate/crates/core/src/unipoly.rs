//! Dense univariate polynomials over `Q`, coefficients from the constant term up.
//!
//! Just enough to run the Jordan–Chevalley Newton iteration in `Q[t]/(μ)`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::RationalMatrix;
use crate::rational::Q;

pub type UniPoly = Vec<Q>;

pub fn trim(mut p: UniPoly) -> UniPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Q]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(p: &[Q]) -> bool {
    degree(p).is_none()
}

pub fn add(a: &[Q], b: &[Q]) -> UniPoly {
    let n = a.len().max(b.len());
    let z = Q::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn sub(a: &[Q], b: &[Q]) -> UniPoly {
    let n = a.len().max(b.len());
    let z = Q::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn scale(a: &[Q], c: &Q) -> UniPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn mul(a: &[Q], b: &[Q]) -> UniPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = alloc::vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(a: &[Q]) -> UniPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect())
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[Q], b: &[Q]) -> (UniPoly, UniPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    let mut qt = alloc::vec![Q::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * y;
        }
        qt[shift] = c;
        r = trim(r);
    }
    (trim(qt), r)
}

pub fn rem(a: &[Q], b: &[Q]) -> UniPoly {
    divrem(a, b).1
}

pub fn monic(a: &[Q]) -> UniPoly {
    match degree(a) {
        Some(d) => scale(a, &a[d].recip()),
        None => Vec::new(),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Q], b: &[Q]) -> UniPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`, `g` monic.
pub fn extended_gcd(a: &[Q], b: &[Q]) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (alloc::vec![Q::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), alloc::vec![Q::one()]);
    while !is_zero(&r1) {
        let (qt, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&qt, &s1));
        let t = sub(&t0, &mul(&qt, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
        t0 = core::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
        None => (Vec::new(), s0, t0),
    }
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inverse_mod(a: &[Q], m: &[Q]) -> Option<UniPoly> {
    let (g, s, _) = extended_gcd(a, m);
    if g.len() == 1 && g[0].is_one() {
        Some(rem(&s, m))
    } else {
        None
    }
}

/// `a(b(t))` reduced modulo `m`.
pub fn compose_mod(a: &[Q], b: &[Q], m: &[Q]) -> UniPoly {
    let mut acc: UniPoly = Vec::new();
    for c in a.iter().rev() {
        acc = rem(&add(&mul(&acc, b), core::slice::from_ref(c)), m);
    }
    acc
}

pub fn eval_matrix(p: &[Q], m: &RationalMatrix) -> RationalMatrix {
    let n = m.nrows();
    let mut acc = RationalMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m).add(&RationalMatrix::identity(n).scale(c));
    }
    acc
}

pub fn eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Square-free part `μ / gcd(μ, μ')`, monic.
pub fn squarefree_part(p: &[Q]) -> UniPoly {
    let g = gcd(p, &derivative(p));
    monic(&divrem(p, &g).0)
}
