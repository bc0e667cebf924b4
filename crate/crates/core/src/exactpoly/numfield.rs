//! Arithmetic in number fields `Q[a]/(m)` for irreducible `m` of degree at
//! most four. Singular points of an arrangement live in such fields:
//! line-conic clusters in degree <= 2, conic-conic-only points in degree <= 4.

use num::One;

use crate::error::{Error, Result};
use crate::exactpoly::hform::HForm;
use crate::exactpoly::rat::Rat;
use crate::exactpoly::unipoly::UniPoly;

/// `Q[a]/(modulus)`; elements are represented by their reduced `UniPoly` in
/// the generator. A degree-1 modulus degenerates to the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    /// `modulus` must be irreducible over the rationals; it is monicized
    /// here. Irreducibility is the caller's responsibility (factors come
    /// from `factor_irreducible`); inversion detects violations.
    pub fn new(modulus: UniPoly) -> Result<Self> {
        match modulus.degree() {
            Some(d) if d >= 1 => Ok(NumberField {
                modulus: modulus.monic(),
            }),
            _ => Err(Error::InvalidComponent(
                "number field modulus must have positive degree".into(),
            )),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// The class of the generator `a`.
    pub fn generator(&self) -> UniPoly {
        self.reduce(&UniPoly::monomial(1, Rat::one()))
    }

    pub fn from_rat(&self, c: Rat) -> UniPoly {
        UniPoly::constant(c)
    }

    pub fn reduce(&self, p: &UniPoly) -> UniPoly {
        let (_, r) = p.divmod(&self.modulus);
        r
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a - b
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    pub fn is_zero(&self, a: &UniPoly) -> bool {
        self.reduce(a).is_zero()
    }

    /// Inverse via the extended Euclidean algorithm. Errors on zero and on a
    /// zero divisor (which would mean the modulus is reducible).
    pub fn inv(&self, a: &UniPoly) -> Result<UniPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::InternalInconsistency(
                "inversion of zero in a number field".into(),
            ));
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::constant(Rat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return Err(Error::InternalInconsistency(
                "zero divisor: number field modulus is reducible".into(),
            ));
        }
        let c = Rat::one() / r0.coeff(0);
        Ok(self.reduce(&s0.scale(&c)))
    }

    /// Evaluate a trivariate form at a point with coordinates in this field.
    pub fn eval_hform(&self, f: &HForm, p: &[UniPoly; 3]) -> UniPoly {
        let one = UniPoly::constant(Rat::one());
        let mut pow: [Vec<UniPoly>; 3] = [vec![one.clone()], vec![one.clone()], vec![one]];
        for i in 0..3 {
            for k in 1..=f.degree() {
                let next = self.mul(&pow[i][k - 1], &p[i]);
                pow[i].push(next);
            }
        }
        let mut acc = UniPoly::zero();
        for (e, c) in f.terms() {
            let t = self.mul(
                &self.mul(&pow[0][e.a as usize], &pow[1][e.b as usize]),
                &pow[2][e.c as usize],
            );
            acc = &acc + &t.scale(c);
        }
        self.reduce(&acc)
    }

    /// Scale a projective point so its last nonzero coordinate is 1.
    pub fn normalize_point(&self, p: &[UniPoly; 3]) -> Result<[UniPoly; 3]> {
        let idx = (0..3)
            .rev()
            .find(|&i| !self.is_zero(&p[i]))
            .ok_or_else(|| {
                Error::InternalInconsistency("zero projective point".into())
            })?;
        let inv = self.inv(&p[idx])?;
        Ok([
            self.mul(&p[0], &inv),
            self.mul(&p[1], &inv),
            self.mul(&p[2], &inv),
        ])
    }
}

/// Polynomials in one extra variable over a number field, just enough for
/// gcds of quadratics (conic-conic point reconstruction).
pub(crate) fn gcd_over_field(
    field: &NumberField,
    a: &[UniPoly],
    b: &[UniPoly],
) -> Result<Vec<UniPoly>> {
    let trim = |v: &mut Vec<UniPoly>| {
        while v.last().is_some_and(|c| field.is_zero(c)) {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = field.inv(b.last().unwrap())?;
        while a.len() >= b.len() {
            let q = field.mul(a.last().unwrap(), &lead_inv);
            let shift = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                let t = field.mul(&q, bc);
                a[shift + j] = field.sub(&a[shift + j], &t);
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    // monic
    if let Some(l) = a.last().cloned() {
        let inv = field.inv(&l)?;
        for c in &mut a {
            *c = field.mul(c, &inv);
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat_i;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn sqrt2_field() {
        // Q(sqrt 2): a^2 = 2
        let k = NumberField::new(up(&[-2, 0, 1])).unwrap();
        let a = k.generator();
        assert_eq!(k.mul(&a, &a), up(&[2]));
        // (1 + a)^-1 = a - 1 since (1+a)(a-1) = a^2 - 1 = 1
        let e = up(&[1, 1]);
        let inv = k.inv(&e).unwrap();
        assert_eq!(inv, up(&[-1, 1]));
        assert_eq!(k.mul(&e, &inv), up(&[1]));
    }

    #[test]
    fn inversion_of_zero_fails() {
        let k = NumberField::new(up(&[-2, 0, 1])).unwrap();
        assert!(k.inv(&UniPoly::zero()).is_err());
    }

    #[test]
    fn eval_hform_at_algebraic_point() {
        // circle x^2 + y^2 - z^2 at (a, 1, 0) with a^2 = -1 vanishes
        let k = NumberField::new(up(&[1, 0, 1])).unwrap();
        let circle = HForm::conic([
            rat_i(1),
            rat_i(1),
            rat_i(-1),
            rat_i(0),
            rat_i(0),
            rat_i(0),
        ]);
        let p = [k.generator(), up(&[1]), UniPoly::zero()];
        assert!(k.is_zero(&k.eval_hform(&circle, &p)));
    }

    #[test]
    fn gcd_of_quadratics_over_field() {
        // over Q(sqrt 2): (z - a)(z - 1) and (z - a)(z + 3) share z - a
        let k = NumberField::new(up(&[-2, 0, 1])).unwrap();
        let a = k.generator();
        let mul2 = |p: &[UniPoly], q: &[UniPoly]| -> Vec<UniPoly> {
            let mut out = vec![UniPoly::zero(); p.len() + q.len() - 1];
            for (i, pi) in p.iter().enumerate() {
                for (j, qj) in q.iter().enumerate() {
                    let t = k.mul(pi, qj);
                    out[i + j] = k.add(&out[i + j], &t);
                }
            }
            out
        };
        let za = vec![k.sub(&UniPoly::zero(), &a), up(&[1])];
        let f1 = mul2(&za, &[up(&[-1]), up(&[1])]);
        let f2 = mul2(&za, &[up(&[3]), up(&[1])]);
        let g = gcd_over_field(&k, &f1, &f2).unwrap();
        assert_eq!(g.len(), 2);
        // monic z - a
        assert_eq!(g[1], up(&[1]));
        assert_eq!(g[0], k.sub(&UniPoly::zero(), &a));
    }

    #[test]
    fn normalize_point_scales_last_nonzero_to_one() {
        let k = NumberField::new(up(&[-2, 0, 1])).unwrap();
        let p = [up(&[1]), k.generator(), k.generator()];
        let n = k.normalize_point(&p).unwrap();
        assert_eq!(n[2], up(&[1]));
        // x coordinate becomes 1/a = a/2
        assert_eq!(n[0], UniPoly::from_coeffs(vec![rat_i(0), crate::exactpoly::rat::rat(1, 2)]));
    }
}
