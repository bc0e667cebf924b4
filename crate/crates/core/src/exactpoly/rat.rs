//! Exact rational scalars.
//!
//! Coefficients are `num::BigRational`: arbitrary-precision, always reduced,
//! denominator kept positive. The aliases exist so the rest of the crate
//! never spells out the backing types.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Exact integer square root test.
pub fn sqrt_int(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let u: BigUint = n.magnitude().clone();
    let r = u.sqrt();
    if &r * &r == u {
        Some(Int::from_biguint(Sign::Plus, r))
    } else {
        None
    }
}

/// Exact rational square root: `Some(s)` with `s >= 0` and `s^2 == r`.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = sqrt_int(r.numer())?;
    let d = sqrt_int(r.denom())?;
    Some(Rat::new(n, d))
}

/// gcd of the numerators and lcm of the denominators over a coefficient list;
/// multiplying by `lcm/gcd` makes the list primitive integral.
pub fn primitive_scale<'a, I: Iterator<Item = &'a Rat>>(coeffs: I) -> Rat {
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        Rat::one()
    } else {
        Rat::new(den_lcm, num_gcd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact() {
        assert_eq!(sqrt_int(&int(144)), Some(int(12)));
        assert_eq!(sqrt_int(&int(2)), None);
        assert_eq!(sqrt_int(&int(-4)), None);
        assert_eq!(sqrt_rat(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_rat(&rat(2, 1)), None);
        assert_eq!(sqrt_rat(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn primitive_scale_clears_denominators() {
        let coeffs = vec![rat(2, 3), rat(4, 1), rat(-8, 9)];
        let s = primitive_scale(coeffs.iter());
        // scaled coefficients: 2/3 * 9/2 = 3, 4 * 9/2 = 18, -8/9 * 9/2 = -4
        assert_eq!(s, rat(9, 2));
        let scaled: Vec<Rat> = coeffs.iter().map(|c| c * &s).collect();
        assert!(scaled.iter().all(|c| c.is_integer()));
    }
}
