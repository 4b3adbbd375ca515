//! Distinct roots of polynomials over a prime field `F_p`, `p < 2^64`.
//!
//! Small primes are handled by exhaustive evaluation; large ones by
//! `gcd(f, x^p - x)` followed by deterministic equal-degree splitting with
//! `(x + delta)^((p-1)/2) - 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{add_mod, inv_mod, mul_mod};
use crate::poly::IntPoly;

/// Below this bound roots are found by evaluating every residue.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

type Fp = Vec<u64>;

fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn reduce(poly: &IntPoly, p: u64) -> Fp {
    let mut v: Fp = poly
        .coeffs()
        .iter()
        .map(|c| crate::arith::big_mod(c, p))
        .collect();
    trim(&mut v);
    v
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db {
        let top = r.len() - 1;
        let q = mul_mod(r[top], inv, p);
        if q != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = top - db + j;
                r[idx] = sub_mod(r[idx], mul_mod(q, bc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn div_exact(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        q[i] = c;
        for (j, &bc) in b.iter().enumerate() {
            r[i + j] = sub_mod(r[i + j], mul_mod(c, bc, p), p);
        }
    }
    trim(&mut q);
    q
}

fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

fn monic(mut a: Fp, p: u64) -> Fp {
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p).expect("nonzero leading coefficient");
        for c in &mut a {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = core::mem::replace(&mut y, r);
    }
    monic(x, p)
}

fn pow_mod_poly(base: &Fp, mut e: u64, modulus: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

fn eval(a: &Fp, x: u64, p: u64) -> u64 {
    a.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn split(g: &Fp, p: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => {
            // x + c
            let c = mul_mod(g[0], inv_mod(g[1], p).expect("monic"), p);
            out.push(sub_mod(0, c, p));
        }
        _ => {
            for delta in 0..p {
                let base = vec![delta, 1];
                let mut h = pow_mod_poly(&base, (p - 1) / 2, g, p);
                if h.is_empty() {
                    h.push(0);
                }
                h[0] = sub_mod(h[0], 1, p);
                trim(&mut h);
                let d = gcd(g, &h, p);
                if d.len() > 1 && d.len() < g.len() {
                    split(&d, p, out);
                    split(&div_exact(g, &d, p), p, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed over F_{p}");
        }
    }
}

/// Distinct roots in `[0, p)` of a nonzero polynomial over `F_p`, ascending.
/// `p` must be prime.
pub(crate) fn roots(f: &Fp, p: u64) -> Vec<u64> {
    debug_assert!(!f.is_empty());
    if f.len() == 1 {
        return Vec::new();
    }
    if p <= EXHAUSTIVE_LIMIT {
        return (0..p).filter(|&x| eval(f, x, p) == 0).collect();
    }
    let f = monic(f.clone(), p);
    // x^p - x mod f
    let mut xp = pow_mod_poly(&vec![0, 1], p, &f, p);
    if xp.len() < 2 {
        xp.resize(2, 0);
    }
    xp[1] = sub_mod(xp[1], 1, p);
    trim(&mut xp);
    let g = gcd(&f, &xp, p);
    let mut out = Vec::new();
    split(&g, p, &mut out);
    out.sort_unstable();
    out
}

/// Common roots modulo `p` of every polynomial in `polys`. `None` when every
/// polynomial vanishes identically mod `p` (every residue is a root).
pub(crate) fn common_roots(polys: &[IntPoly], p: u64) -> Option<Vec<u64>> {
    let g = polys
        .iter()
        .map(|q| reduce(q, p))
        .fold(Vec::new(), |acc, q| gcd(&acc, &q, p));
    if g.is_empty() {
        return None;
    }
    Some(roots(&g, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_small_prime() {
        // x^2 - 1 over F_7
        assert_eq!(roots(&vec![6, 0, 1], 7), [1, 6]);
        assert_eq!(roots(&vec![1, 0, 1], 7), Vec::<u64>::new());
    }

    #[test]
    fn roots_large_prime() {
        let p = 1_000_000_007u64;
        // (x - 3)(x - 5)(x^2 + 1); -1 is a non-residue mod p since p = 3 mod 4
        let f = IntPoly::from_i64s(&[-3, 1])
            * IntPoly::from_i64s(&[-5, 1])
            * IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(roots(&reduce(&f, p), p), [3, 5]);
        let g = IntPoly::from_i64s(&[-123_456, 1]) * IntPoly::from_i64s(&[-7, 1]).pow(2);
        assert_eq!(roots(&reduce(&g, p), p), [7, 123_456]);
    }

    #[test]
    fn common_roots_all_vanish() {
        let p = 5;
        let polys = [
            IntPoly::from_i64s(&[5, 10]),
            IntPoly::from_i64s(&[0, 0, 15]),
        ];
        assert_eq!(common_roots(&polys, p), None);
        let polys = [
            IntPoly::from_i64s(&[-1, 0, 1]),
            IntPoly::from_i64s(&[-1, 1]),
        ];
        assert_eq!(common_roots(&polys, 7), Some(alloc::vec![1]));
    }
}
