//! Univariate polynomials and binary forms over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::rat::{primitive_scale, Rat};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of the `i`-th
/// power. The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = Rat::one() / l;
                UniPoly {
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divmod(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        if self.coeffs.len() < div.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - div.coeffs.len() + 1];
        let lead_inv = Rat::one() / div.leading().unwrap();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            quot[i - dd] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let delta = dc * &q;
                rem[i - dd + j] -= delta;
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.divmod(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Monic greatest common divisor over the rationals.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero input");
        self.exact_div(&g).monic()
    }

    /// Primitive integral coefficients, positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut s = primitive_scale(self.coeffs.iter());
        if (self.leading().unwrap() * &s).is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Render with a chosen variable name.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() || i == 0 {
                out.push_str(&mag.to_string());
                if i > 0 {
                    out.push('*');
                }
            }
            if i >= 1 {
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

/// Homogeneous binary form of a declared degree in parameters `(s, t)`;
/// `coeffs[i]` multiplies `s^i t^(degree - i)`.
///
/// This is how restrictions of plane forms to parametrized lines are
/// stored: the dehomogenization `t = 1` is a [`UniPoly`] in `s`, and the
/// degree drop `degree - deg(unipoly)` is the multiplicity of the root at
/// the parameter point `(1:0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn new(degree: usize, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(degree + 1, Rat::zero());
        BinaryForm { degree, coeffs }
    }

    pub fn from_unipoly(degree: usize, p: &UniPoly) -> Self {
        assert!(p.degree().map_or(true, |d| d <= degree));
        BinaryForm::new(degree, p.coeffs().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, s_exp: usize) -> Rat {
        self.coeffs.get(s_exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Dehomogenization at `t = 1`, a polynomial in `s`.
    pub fn unipoly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }

    /// Multiplicity of the root at the parameter point `(1:0)`, i.e. the
    /// degree drop of the dehomogenization.
    pub fn inf_mult(&self) -> usize {
        match self.unipoly().degree() {
            None => self.degree, // zero form: by convention the full degree
            Some(d) => self.degree - d,
        }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let p = &self.unipoly() * &rhs.unipoly();
        BinaryForm::from_unipoly(self.degree + rhs.degree, &p)
    }
}
