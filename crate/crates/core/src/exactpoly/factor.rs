//! Factorization of univariate rational polynomials of degree at most four,
//! the range needed for point clustering: restrictions of conics to lines
//! have degree two, conic-conic resultants degree four.
//!
//! Rational roots are found through integer roots of the monicized
//! polynomial: roots are computed mod enough 62-bit primes that every root
//! within the Cauchy bound lifts uniquely, and each candidate is verified by
//! exact evaluation. Quadratics are decided by a discriminant square test,
//! quartics by the depressed-quartic resolvent.

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::modp::{fixed_primes, roots_mod_p};
use crate::exactpoly::rat::{rat_i, sqrt_rat, Int, Rat};
use crate::exactpoly::unipoly::UniPoly;

/// Integer roots of a monic integer polynomial (coefficients ascending,
/// leading coefficient 1). Exact: candidates come from roots mod primes
/// whose product exceeds twice the Cauchy root bound, then each candidate is
/// verified by evaluation.
fn integer_roots_monic(coeffs: &[Int]) -> Result<Vec<Int>> {
    let n = coeffs.len() - 1;
    debug_assert!(coeffs[n].is_one());
    if n == 0 {
        return Ok(vec![]);
    }
    // Cauchy bound: |root| <= 1 + max |c_i|
    let bound: Int = coeffs[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Int::zero)
        + 1;
    let two_bound = &bound * 2;
    let mut primes: Vec<u64> = Vec::new();
    let mut product = Int::one();
    let pool = fixed_primes(12);
    for &p in &pool {
        primes.push(p);
        product *= Int::from(p);
        if product > two_bound {
            break;
        }
    }
    if product <= two_bound {
        return Err(Error::InternalInconsistency(
            "root bound exceeds the supported prime pool".into(),
        ));
    }
    // roots mod each prime
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let fp: Vec<u64> = coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&Int::from(p));
                let (_, digits) = r.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            })
            .collect();
        let roots = roots_mod_p(&fp, p);
        if roots.is_empty() {
            return Ok(vec![]); // an integer root would survive mod every prime
        }
        per_prime.push(roots);
    }
    // CRT over all combinations, symmetric lift, exact verification
    let mut candidates: Vec<Int> = per_prime[0].iter().map(|&r| Int::from(r)).collect();
    let mut modulus = Int::from(primes[0]);
    for (i, roots) in per_prime.iter().enumerate().skip(1) {
        let p = Int::from(primes[i]);
        let mut next = Vec::new();
        // x = a mod modulus, x = b mod p
        let inv = mod_inverse(&modulus, &p);
        for a in &candidates {
            for &b in roots {
                let b = Int::from(b);
                let diff = (&b - a).mod_floor(&p);
                let t = (&diff * &inv).mod_floor(&p);
                next.push(a + &modulus * t);
            }
        }
        modulus *= &p;
        candidates = next;
        if candidates.len() > 4096 {
            return Err(Error::InternalInconsistency(
                "integer root candidate explosion".into(),
            ));
        }
    }
    let half = &modulus / 2;
    let mut out: Vec<Int> = Vec::new();
    for mut c in candidates {
        if c > half {
            c -= &modulus;
        }
        if c.abs() > bound {
            continue;
        }
        // Horner
        let mut acc = Int::zero();
        for k in (0..coeffs.len()).rev() {
            acc = acc * &c + &coeffs[k];
        }
        if acc.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    // extended euclid; m prime here
    let (mut old_r, mut r) = (a.mod_floor(m), m.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
    }
    old_s.mod_floor(m)
}

/// Distinct rational roots of `f` with multiplicities.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<(Rat, usize)>> {
    if f.is_zero() {
        return Err(Error::BothZero);
    }
    let prim = f.primitive();
    let n = match prim.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(n) => n,
    };
    let ints: Vec<Int> = prim.coeffs().iter().map(|c| c.numer().clone()).collect();
    let lead = ints[n].clone();
    // y = lead * x turns f into a monic integer polynomial in y:
    // g_i = c_i * lead^(n-1-i)
    let mut g = vec![Int::zero(); n + 1];
    for (i, c) in ints.iter().enumerate() {
        let mut v = c.clone();
        for _ in 0..(n - 1).saturating_sub(i) {
            v *= &lead;
        }
        g[i] = v;
    }
    g[n] = Int::one();
    let roots = integer_roots_monic(&g)?;
    let mut out = Vec::new();
    for r in roots {
        let root = Rat::new(r, lead.clone());
        // multiplicity by repeated exact division
        let lin = UniPoly::from_coeffs(vec![-root.clone(), Rat::one()]);
        let mut m = 0usize;
        let mut rest = prim.clone();
        loop {
            let (q, rem) = rest.divmod(&lin);
            if rem.is_zero() {
                m += 1;
                rest = q;
            } else {
                break;
            }
        }
        debug_assert!(m >= 1);
        out.push((root, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Complete factorization into monic irreducible factors over the rationals
/// with multiplicities. Supported up to degree 4.
pub fn factor_irreducible(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::BothZero);
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    // Yun's squarefree decomposition, then factor each squarefree part.
    for (part, mult) in squarefree_decomposition(f)? {
        for factor in factor_squarefree(&part)? {
            push_factor(&mut out, factor, mult);
        }
    }
    out.sort_by(|a, b| a.0.coeffs().cmp(b.0.coeffs()));
    // consistency: product of factors equals monic(f)
    debug_assert!({
        let mut acc = UniPoly::constant(Rat::one());
        for (g, m) in &out {
            acc = &acc * &g.pow(*m);
        }
        acc == f.monic()
    });
    Ok(out)
}

fn push_factor(out: &mut Vec<(UniPoly, usize)>, f: UniPoly, mult: usize) {
    for item in out.iter_mut() {
        if item.0 == f {
            item.1 += mult;
            return;
        }
    }
    out.push((f, mult));
}

/// Yun's algorithm: `f = prod part_i^i` with each part squarefree and the
/// parts pairwise coprime. Returns only the nontrivial parts.
fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1usize;
    loop {
        let a = b.gcd(&d)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Factor a squarefree monic polynomial of degree <= 4 into monic
/// irreducibles.
fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let n = match f.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(n) => n,
    };
    if n > 4 {
        return Err(Error::UnsupportedDegree(n));
    }
    let mut factors = Vec::new();
    let mut rest = f.monic();
    for (root, mult) in rational_roots(&rest)? {
        debug_assert_eq!(mult, 1, "squarefree input");
        let lin = UniPoly::from_coeffs(vec![-root, Rat::one()]);
        rest = rest.exact_div(&lin);
        factors.push(lin);
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(1) => factors.push(rest.monic()),
        // no rational roots left: degree 2 and 3 are irreducible
        Some(2) | Some(3) => factors.push(rest),
        Some(4) => match split_quartic(&rest)? {
            Some((q1, q2)) => {
                factors.push(q1);
                factors.push(q2);
            }
            None => factors.push(rest),
        },
        Some(_) => unreachable!(),
    }
    Ok(factors)
}

/// Try to split a monic quartic without rational roots into two monic
/// rational quadratics. Depress with `x = y - p/4`; then
/// `y^4 + Q y^2 + R y + S = (y^2 + u y + v)(y^2 - u y + w)` forces
/// `u^2` to be a rational root of `U^3 + 2Q U^2 + (Q^2 - 4S) U - R^2`
/// (or, when `R = 0`, the biquadratic cases).
fn split_quartic(f: &UniPoly) -> Result<Option<(UniPoly, UniPoly)>> {
    debug_assert_eq!(f.degree(), Some(4));
    debug_assert!(f.is_monic());
    let p = f.coeff(3);
    let shift = &p / rat_i(4);
    // g(y) = f(y - shift), computed by Horner on (y - shift)
    let g = compose_shift(f, &-&shift);
    debug_assert!(g.coeff(3).is_zero());
    let qq = g.coeff(2);
    let rr = g.coeff(1);
    let ss = g.coeff(0);

    let build = |u: Rat, v: Rat, w: Rat| -> Option<(UniPoly, UniPoly)> {
        let f1 = UniPoly::from_coeffs(vec![v, u.clone(), Rat::one()]);
        let f2 = UniPoly::from_coeffs(vec![w, -u, Rat::one()]);
        if &f1 * &f2 == g {
            // undo the shift: x = y + shift is y = x + shift... the factor in x
            let b1 = compose_shift(&f1, &shift);
            let b2 = compose_shift(&f2, &shift);
            debug_assert_eq!(&b1 * &b2, *f);
            Some((b1, b2))
        } else {
            None
        }
    };

    if rr.is_zero() {
        // (y^2 + v)(y^2 + w): v + w = Q, v w = S
        let disc = &qq * &qq - rat_i(4) * &ss;
        if let Some(s) = sqrt_rat(&disc) {
            let v = (&qq - &s) / rat_i(2);
            let w = (&qq + &s) / rat_i(2);
            if let Some(pair) = build(Rat::zero(), v, w) {
                return Ok(Some(pair));
            }
        }
        // (y^2 + a y + b)(y^2 - a y + b): b^2 = S, a^2 = 2b - Q
        if let Some(b) = sqrt_rat(&ss) {
            for bb in [b.clone(), -b] {
                let a2 = rat_i(2) * &bb - &qq;
                if let Some(a) = sqrt_rat(&a2) {
                    if let Some(pair) = build(a, bb.clone(), bb.clone()) {
                        return Ok(Some(pair));
                    }
                }
            }
        }
        return Ok(None);
    }
    // resolvent cubic in U = u^2
    let cubic = UniPoly::from_coeffs(vec![
        -(&rr * &rr),
        &qq * &qq - rat_i(4) * &ss,
        rat_i(2) * &qq,
        Rat::one(),
    ]);
    for (u2, _) in rational_roots(&cubic)? {
        if u2.is_negative() || u2.is_zero() {
            continue;
        }
        if let Some(u) = sqrt_rat(&u2) {
            let rv = &rr / &u;
            let v = (&(&qq + &u2) - &rv) / rat_i(2);
            let w = (&(&qq + &u2) + &rv) / rat_i(2);
            if let Some(pair) = build(u, v, w) {
                return Ok(Some(pair));
            }
        }
    }
    Ok(None)
}

/// `f(x + shift)`.
fn compose_shift(f: &UniPoly, shift: &Rat) -> UniPoly {
    let lin = UniPoly::from_coeffs(vec![shift.clone(), Rat::one()]);
    let mut acc = UniPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
    }
    acc
}

/// Is the quadratic `a t^2 + b t + c` reducible over the rationals?
/// Returns the two roots when it is.
pub fn quadratic_roots(f: &UniPoly) -> Option<(Rat, Rat)> {
    debug_assert_eq!(f.degree(), Some(2));
    let a = f.coeff(2);
    let b = f.coeff(1);
    let c = f.coeff(0);
    let disc = &b * &b - rat_i(4) * &a * &c;
    let s = sqrt_rat(&disc)?;
    let r1 = (-&b - &s) / (rat_i(2) * &a);
    let r2 = (-&b + &s) / (rat_i(2) * &a);
    Some((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn rational_roots_basic() {
        // (2t - 1)(t + 3)^2
        let f = &(&up(&[-1, 2]) * &up(&[3, 1])) * &up(&[3, 1]);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots, vec![(rat(-3, 1), 2), (rat(1, 2), 1)]);
        // t^2 + 1: none
        assert!(rational_roots(&up(&[1, 0, 1])).unwrap().is_empty());
        // constant: none
        assert!(rational_roots(&up(&[7])).unwrap().is_empty());
    }

    #[test]
    fn rational_roots_large_coefficients() {
        // (t - 10^12)(t + 3) has coefficients beyond one word
        let big = rat_i(1_000_000_000_000);
        let f = &UniPoly::from_coeffs(vec![-big.clone(), rat_i(1)]) * &up(&[3, 1]);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots, vec![(rat_i(-3), 1), (big, 1)]);
    }

    #[test]
    fn factor_quadratics() {
        // s^2 - 2: irreducible
        let f = up(&[-2, 0, 1]);
        let fs = factor_irreducible(&f).unwrap();
        assert_eq!(fs, vec![(f.monic(), 1)]);
        // s^2 - 1 = (s-1)(s+1)
        let g = up(&[-1, 0, 1]);
        let gs = factor_irreducible(&g).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(gs.iter().all(|(_, m)| *m == 1));
        // (s - 1)^2
        let h = &up(&[-1, 1]) * &up(&[-1, 1]);
        let hs = factor_irreducible(&h).unwrap();
        assert_eq!(hs, vec![(up(&[-1, 1]), 2)]);
    }

    #[test]
    fn factor_quartics() {
        // y^4 + 4 = (y^2 - 2y + 2)(y^2 + 2y + 2)
        let f = up(&[4, 0, 0, 0, 1]);
        let fs = factor_irreducible(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, up(&[2, -2, 1]));
        assert_eq!(fs[1].0, up(&[2, 2, 1]));
        // y^4 + 1 irreducible over Q
        let g = up(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_irreducible(&g).unwrap(), vec![(g.clone(), 1)]);
        // (y^2 + 1)(y^2 - 2)
        let h = &up(&[1, 0, 1]) * &up(&[-2, 0, 1]);
        let hs = factor_irreducible(&h).unwrap();
        assert_eq!(hs.len(), 2);
        // (y^2 + 1)^2
        let k = &up(&[1, 0, 1]) * &up(&[1, 0, 1]);
        assert_eq!(factor_irreducible(&k).unwrap(), vec![(up(&[1, 0, 1]), 2)]);
        // mixed: (y - 2)(y^3 + y + 1), cubic irreducible
        let m = &up(&[-2, 1]) * &up(&[1, 1, 0, 1]);
        let ms = factor_irreducible(&m).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(ms.contains(&(up(&[-2, 1]), 1)));
        assert!(ms.contains(&(up(&[1, 1, 0, 1]), 1)));
    }

    #[test]
    fn factor_with_non_monic_and_rational_coeffs() {
        // 6 (t - 1/2)(t - 1/3) = 6t^2 - 5t + 1
        let f = up(&[1, -5, 6]);
        let fs = factor_irreducible(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, UniPoly::from_coeffs(vec![rat(-1, 2), rat_i(1)]));
        assert_eq!(fs[1].0, UniPoly::from_coeffs(vec![rat(-1, 3), rat_i(1)]));
    }

    #[test]
    fn quadratic_root_formula() {
        let (r1, r2) = quadratic_roots(&up(&[-6, 1, 1])).unwrap();
        assert_eq!((r1, r2), (rat_i(-3), rat_i(2)));
        assert!(quadratic_roots(&up(&[1, 0, 1])).is_none());
    }
}
