//! Dense univariate polynomials (constant term first) and root finding.

use crate::field::{big_floor, Field, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn trim<F: Field>(p: &mut Vec<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<F: Field>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval<F: Field>(p: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc.mul_ref(x).add_ref(c);
    }
    acc
}

pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul_assign(x, y);
        }
    }
    trim(&mut out);
    out
}

pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out: Vec<F> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(F::zero);
            let y = b.get(i).cloned().unwrap_or_else(F::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<F> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].inv();
    let mut q = vec![F::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].mul_ref(&lead_inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i].sub_mul_assign(&c, bc);
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic<F: Field>(p: &[F]) -> Vec<F> {
    let mut p = p.to_vec();
    trim(&mut p);
    if let Some(l) = p.last().cloned() {
        let li = l.inv();
        for c in p.iter_mut() {
            *c = c.mul_ref(&li);
        }
    }
    p
}

pub fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn derivative<F: Field>(p: &[F]) -> Vec<F> {
    let mut out: Vec<F> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_ref(&F::from_i64(i as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Square-free part (monic).
pub fn squarefree<F: Field>(p: &[F]) -> Vec<F> {
    let d = derivative(p);
    if d.is_empty() {
        return monic(p);
    }
    let g = gcd(p, &d);
    monic(&divrem(p, &g).0)
}

// ---------------------------------------------------------------------------
// Rational roots via Sturm isolation

fn to_big_poly(p: &[Rat]) -> Vec<BigRational> {
    p.iter().map(|c| c.to_big()).collect()
}

/// Integer primitive polynomial with the same roots.
fn primitive_int(p: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    ints
}

fn eval_big(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0i32;
    let mut n = 0;
    for p in seq {
        let v = eval_big(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    // closed interval, a <= b
    if !a.is_positive() && !b.is_negative() {
        return BigRational::zero();
    }
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    let fl = BigRational::from(big_floor(a));
    if &fl == a {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= b {
        return next;
    }
    let lo = (b - &fl).recip();
    let hi = (a - &fl).recip();
    fl + simplest_between(&lo, &hi).recip()
}

pub fn rational_roots(poly: &[Rat]) -> Vec<Rat> {
    let mut p = poly.to_vec();
    trim(&mut p);
    let Some(deg) = degree(&p) else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let sf = squarefree(&p);
    let big = to_big_poly(&sf);
    let ints = primitive_int(&big);
    let lead = ints.last().unwrap().abs();
    let f: Vec<BigRational> = ints.iter().map(|c| BigRational::from(c.clone())).collect();
    // Sturm sequence
    let mut seq: Vec<Vec<BigRational>> = vec![f.clone()];
    let df = {
        let mut d: Vec<BigRational> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from(BigInt::from(i))).collect();
        while d.last().is_some_and(|c| c.is_zero()) {
            d.pop();
        }
        d
    };
    if !df.is_empty() {
        seq.push(df);
        loop {
            let n = seq.len();
            let a: Vec<Rat> = seq[n - 2].iter().map(|c| Rat::from_big(c.clone())).collect();
            let b: Vec<Rat> = seq[n - 1].iter().map(|c| Rat::from_big(c.clone())).collect();
            let (_, r) = divrem(&a, &b);
            if r.is_empty() {
                break;
            }
            seq.push(r.iter().map(|c| -c.to_big()).collect());
        }
    }
    // Cauchy bound
    let ln = f.last().unwrap().abs();
    let mut bound = BigRational::one();
    for c in &f[..f.len() - 1] {
        let v = c.abs() / &ln;
        if v + BigRational::one() > bound {
            bound = c.abs() / &ln + BigRational::one();
        }
    }
    let lo = -bound.clone() - BigRational::one();
    let hi = bound + BigRational::one();
    let tol = BigRational::new(BigInt::one(), &lead * &lead);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) as i64 - sign_changes(&seq, &b) as i64;
        if count <= 0 {
            continue;
        }
        if count == 1 && (&b - &a) < tol {
            let cand = simplest_between(&a, &b);
            if eval_big(&f, &cand).is_zero() {
                out.push(Rat::from_big(cand));
            }
            continue;
        }
        let mid = (&a + &b) / BigRational::from(BigInt::from(2));
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Prime field roots via Cantor-Zassenhaus

fn powmod<F: Field>(base: &[F], mut e: u64, m: &[F]) -> Vec<F> {
    let mut acc = vec![F::one()];
    let mut b = divrem(base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(&mul(&acc, &b), m).1;
        }
        b = divrem(&mul(&b, &b), m).1;
        e >>= 1;
    }
    acc
}

pub fn fp_roots<F: Field>(poly: &[F]) -> Vec<F> {
    let p = F::characteristic();
    assert!(p > 2, "root finding needs an odd prime");
    let mut f = monic(poly);
    trim(&mut f);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = vec![F::zero(), F::one()];
    let xp = powmod(&x, p, &f);
    let g = gcd(&f, &sub(&xp, &x));
    let mut out = Vec::new();
    let mut work = vec![g];
    let mut delta = 1i64;
    while let Some(h) = work.pop() {
        match degree(&h) {
            None | Some(0) => continue,
            Some(1) => {
                out.push(h[0].neg_ref().mul_ref(&h[1].inv()));
                continue;
            }
            _ => {}
        }
        loop {
            let base = vec![F::from_i64(delta), F::one()];
            delta += 1;
            let t = sub(&powmod(&base, (p - 1) / 2, &h), &[F::one()]);
            let d = gcd(&h, &t);
            let dd = degree(&d).unwrap_or(0);
            if dd > 0 && dd < degree(&h).unwrap() {
                let q = divrem(&h, &d).0;
                work.push(d);
                work.push(q);
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rational_roots_basic() {
        // (x - 1/2)(x + 3)^2 (x^2 + 1)
        let a = vec![r(-1, 2), r(1, 1)];
        let b = vec![r(3, 1), r(1, 1)];
        let c = vec![r(1, 1), r(0, 1), r(1, 1)];
        let p = mul(&mul(&a, &mul(&b, &b)), &c);
        assert_eq!(rational_roots(&p), vec![r(-3, 1), r(1, 2)]);
    }

    #[test]
    fn irrational_has_no_roots() {
        let p = vec![r(-2, 1), r(0, 1), r(1, 1)];
        assert!(rational_roots(&p).is_empty());
    }

    #[test]
    fn fp_roots_split() {
        type F = Fp<1048583>;
        let roots = [3i64, 17, 1048500];
        let mut p = vec![F::one()];
        for v in roots {
            p = mul(&p, &[F::from_i64(-v), F::one()]);
        }
        p = mul(&p, &[F::from_i64(-3), F::one()]);
        let mut got = fp_roots(&p);
        got.sort();
        let mut want: Vec<F> = roots.iter().map(|&v| F::from_i64(v)).collect();
        want.sort();
        assert_eq!(got, want);
    }
}
