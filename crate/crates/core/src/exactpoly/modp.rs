//! Arithmetic mod word-sized primes: scalar helpers, deterministic primality
//! testing, and root finding for small polynomials. Shared by the rational
//! root finder and the modular rank backend.

/// `a * b mod p` via 128-bit widening.
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for everything below 3.3 * 10^24).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^62, descending. Deterministic, so the
/// rational root finder never depends on a seed.
pub(crate) fn fixed_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut cand = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(cand) {
            out.push(cand);
        }
        cand -= 2;
    }
    out
}

// --- dense polynomials mod p, low degree, used only for root finding ---

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    if b.is_empty() {
        panic!("polynomial division by zero");
    }
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    while r.len() > db {
        let q = mulmod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - db;
        for (j, &bc) in b.iter().enumerate() {
            let t = mulmod(q, bc, p);
            r[shift + j] = submod(r[shift + j], t, p);
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    // monic
    if let Some(&l) = a.last() {
        let inv = invmod(l, p);
        for c in &mut a {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

fn mul_mod_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    out
}

/// `(t + shift)^exp mod (f, p)` by binary exponentiation.
fn pow_linear_mod(shift: u64, exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = rem_mod(&[shift % p, 1], f, p);
    let mut acc = vec![1u64];
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem_mod(&mul_mod_poly(&acc, &base, p), f, p);
        }
        e >>= 1;
        if e > 0 {
            base = rem_mod(&mul_mod_poly(&base, &base, p), f, p);
        }
    }
    acc
}

/// All roots of `f` in `Z/p` (f given by coefficients, ascending). The input
/// degree stays small (<= 6), so equal-degree splitting with successive
/// shifts is plenty.
pub(crate) fn roots_mod_p(f: &[u64], p: u64) -> Vec<u64> {
    let mut f: Vec<u64> = f.iter().map(|&c| c % p).collect();
    trim(&mut f);
    if f.len() <= 1 {
        return vec![]; // constant (or zero) polynomial: treat as rootless here
    }
    // product of distinct linear factors: gcd(f, t^p - t)
    let tp = pow_linear_mod(0, p, &f, p);
    // t^p - t
    let mut tp_minus_t = tp;
    if tp_minus_t.len() < 2 {
        tp_minus_t.resize(2, 0);
    }
    tp_minus_t[1] = submod(tp_minus_t[1], 1, p);
    trim(&mut tp_minus_t);
    let lin = gcd_mod(&f, &tp_minus_t, p);
    if lin.len() <= 1 {
        return vec![];
    }
    // split into linear factors
    let mut roots = Vec::new();
    let mut stack = vec![lin];
    let mut shift = 0u64;
    while let Some(g) = stack.pop() {
        if g.len() == 2 {
            // monic linear t + g0 -> root -g0
            let r = submod(0, g[0], p);
            roots.push(r);
            continue;
        }
        // deterministic sequence of shifts until a proper split appears
        loop {
            shift = shift.wrapping_add(1);
            let w = pow_linear_mod(shift, (p - 1) / 2, &g, p);
            // w - 1
            let mut w1 = w;
            if w1.is_empty() {
                w1 = vec![0];
            }
            w1[0] = submod(w1[0], 1, p);
            trim(&mut w1);
            let h = gcd_mod(&g, &w1, p);
            if h.len() > 1 && h.len() < g.len() {
                let other = {
                    let mut q = rem_quotient(&g, &h, p);
                    trim(&mut q);
                    q
                };
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    roots.sort_unstable();
    roots
}

fn rem_quotient(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // exact quotient a / b (b divides a)
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - db;
        q[shift] = c;
        for (j, &bc) in b.iter().enumerate() {
            let t = mulmod(c, bc, p);
            r[shift + j] = submod(r[shift + j], t, p);
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1 << 62) - 1));
        let ps = fixed_primes(3);
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|&p| p > 1 << 61 && is_prime_u64(p)));
        assert!(ps[0] > ps[1] && ps[1] > ps[2]);
    }

    #[test]
    fn roots_small_prime_cross_check() {
        // brute force comparison on a small prime
        let p = 10007u64;
        // f = (t-3)(t-5)(t^2+1) mod p
        let f = {
            let a = [p - 3, 1];
            let b = [p - 5, 1];
            let c = [1, 0, 1];
            mul_mod_poly(&mul_mod_poly(&a, &b, p), &c, p)
        };
        let mut expect: Vec<u64> = (0..p)
            .filter(|&t| {
                let mut acc = 0u64;
                for &c in f.iter().rev() {
                    acc = addmod(mulmod(acc, t, p), c, p);
                }
                acc == 0
            })
            .collect();
        expect.sort_unstable();
        assert_eq!(roots_mod_p(&f, p), expect);
    }

    #[test]
    fn roots_large_prime() {
        let p = fixed_primes(1)[0];
        // (t - 42)(t - 10^15) mod p
        let r2 = 1_000_000_000_000_000u64 % p;
        let f = mul_mod_poly(&[p - 42, 1], &[p - r2, 1], p);
        assert_eq!(roots_mod_p(&f, p), {
            let mut v = vec![42, r2];
            v.sort_unstable();
            v
        });
    }
}
