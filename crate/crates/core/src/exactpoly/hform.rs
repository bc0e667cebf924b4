//! Homogeneous trivariate forms over the rationals.
//!
//! A form stores its degree and a sparse table from exponent triples to
//! nonzero coefficients. The monomial order used everywhere (bases, matrix
//! layouts, display, sign normalization) is graded lexicographic with
//! `x > y > z`: within one degree, `(a,b,c)` triples are listed in
//! descending lexicographic order, so `x^d` comes first and `z^d` last.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::rat::{primitive_scale, Rat};
use crate::exactpoly::unipoly::BinaryForm;

/// Exponent triple `(a, b, c)` of the monomial `x^a y^b z^c`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exp {
    pub a: u16,
    pub b: u16,
    pub c: u16,
}

impl Exp {
    pub fn new(a: u16, b: u16, c: u16) -> Self {
        Exp { a, b, c }
    }

    pub fn total(&self) -> usize {
        self.a as usize + self.b as usize + self.c as usize
    }

    /// Index of this triple in `monomial_basis(self.total())`.
    pub fn basis_index(&self) -> usize {
        let n = self.total();
        let a = self.a as usize;
        let b = self.b as usize;
        let skipped = n - a;
        skipped * (skipped + 1) / 2 + (n - a - b)
    }
}

/// One of the three coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// All exponent triples of the given total degree, in graded lexicographic
/// order with `x > y > z` (descending). Length `(d+1)(d+2)/2`.
pub fn monomial_basis(degree: usize) -> Vec<Exp> {
    let mut out = Vec::with_capacity((degree + 1) * (degree + 2) / 2);
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push(Exp::new(a as u16, b as u16, (degree - a - b) as u16));
        }
    }
    out
}

/// Dimension of the degree-`k` graded piece of `Q[x,y,z]`.
pub fn dim_graded(k: isize) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// Homogeneous form of a fixed degree with exact rational coefficients.
///
/// The zero form keeps its declared degree and an empty table; zero forms
/// of different declared degrees compare equal (the zero element belongs to
/// every graded piece).
#[derive(Clone, Eq, Debug)]
pub struct HForm {
    degree: usize,
    terms: BTreeMap<Exp, Rat>,
}

impl PartialEq for HForm {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.degree == other.degree && self.terms == other.terms
    }
}

impl HForm {
    pub fn zero(degree: usize) -> Self {
        HForm { degree, terms: BTreeMap::new() }
    }

    pub fn monomial(exp: Exp, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        HForm { degree: exp.total(), terms }
    }

    pub fn from_terms(degree: usize, terms: Vec<(Exp, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.total() != degree {
                return Err(Error::InvalidComponent(format!(
                    "exponent ({},{},{}) does not sum to degree {degree}",
                    e.a, e.b, e.c
                )));
            }
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HForm { degree, terms: map })
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(a: Rat, b: Rat, c: Rat) -> Self {
        HForm::from_terms(
            1,
            vec![
                (Exp::new(1, 0, 0), a),
                (Exp::new(0, 1, 0), b),
                (Exp::new(0, 0, 1), c),
            ],
        )
        .expect("degree-1 exponents")
    }

    /// The conic `a x^2 + b y^2 + c z^2 + d xy + e xz + f yz`.
    pub fn conic(coeffs: [Rat; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs;
        HForm::from_terms(
            2,
            vec![
                (Exp::new(2, 0, 0), a),
                (Exp::new(0, 2, 0), b),
                (Exp::new(0, 0, 2), c),
                (Exp::new(1, 1, 0), d),
                (Exp::new(1, 0, 1), e),
                (Exp::new(0, 1, 1), f),
            ],
        )
        .expect("degree-2 exponents")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exp) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in graded lexicographic order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return HForm::zero(self.degree);
        }
        HForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Formal partial derivative; degree drops by one (a degree-0 input
    /// yields the zero form).
    pub fn partial(&self, var: Var) -> Self {
        if self.degree == 0 {
            return HForm::zero(0);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (exp, new_e) = match var {
                Var::X => (e.a, Exp::new(e.a.saturating_sub(1), e.b, e.c)),
                Var::Y => (e.b, Exp::new(e.a, e.b.saturating_sub(1), e.c)),
                Var::Z => (e.c, Exp::new(e.a, e.b, e.c.saturating_sub(1))),
            };
            if exp > 0 {
                terms.insert(new_e, c * Rat::from_integer(exp.into()));
            }
        }
        HForm { degree: self.degree - 1, terms }
    }

    pub fn eval_rat(&self, p: &[Rat; 3]) -> Rat {
        let mut pow = [vec![Rat::one()], vec![Rat::one()], vec![Rat::one()]];
        for i in 0..3 {
            for k in 1..=self.degree {
                let prev = pow[i][k - 1].clone();
                pow[i].push(prev * &p[i]);
            }
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * &pow[0][e.a as usize] * &pow[1][e.b as usize] * &pow[2][e.c as usize];
        }
        acc
    }

    /// `f(M v)`: substitute each variable by the linear form given by the
    /// corresponding row of `m`.
    pub fn substitute_linear(&self, m: &[[Rat; 3]; 3]) -> Self {
        let subs: Vec<HForm> = m
            .iter()
            .map(|row| HForm::linear(row[0].clone(), row[1].clone(), row[2].clone()))
            .collect();
        let one = HForm::monomial(Exp::new(0, 0, 0), Rat::one());
        let mut pows: Vec<Vec<HForm>> = vec![vec![one.clone()]; 3];
        for i in 0..3 {
            for k in 1..=self.degree {
                let next = &pows[i][k - 1] * &subs[i];
                pows[i].push(next);
            }
        }
        let mut acc = HForm::zero(self.degree);
        for (e, c) in &self.terms {
            let t = &(&pows[0][e.a as usize] * &pows[1][e.b as usize]) * &pows[2][e.c as usize];
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Primitive integral coefficients with the leading (graded-lex first)
    /// coefficient positive. The zero form is returned unchanged.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut s = primitive_scale(self.terms.values());
        let lead = self.terms.iter().next_back().expect("nonzero").1;
        if (lead * &s).is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Restriction of `self` to a projective line, as a binary form in the
    /// line parameters `(s, t)`.
    ///
    /// The line `a x + b y + c z = 0` is parametrized by `s P + t Q` where,
    /// with `i` the first index carrying a nonzero coefficient and `j1 < j2`
    /// the other two indices, `P` has `coeff[i]` in slot `j1` and `-coeff[j1]`
    /// in slot `i`, and `Q` has `coeff[i]` in slot `j2` and `-coeff[j2]` in
    /// slot `i`. This deterministic rule makes restriction outputs bit-stable.
    /// Root multiplicities of the output equal intersection multiplicities of
    /// `{self = 0}` with the line.
    pub fn restrict_to_line(&self, line: &HForm) -> Result<BinaryForm> {
        let (p, q) = line_parametrization(line)?;
        let mut pow_p: Vec<Vec<Rat>> = vec![vec![Rat::one()]; 3];
        let mut pow_q: Vec<Vec<Rat>> = vec![vec![Rat::one()]; 3];
        for i in 0..3 {
            for k in 1..=self.degree {
                let a = pow_p[i][k - 1].clone() * &p[i];
                pow_p[i].push(a);
                let b = pow_q[i][k - 1].clone() * &q[i];
                pow_q[i].push(b);
            }
        }
        // (s p_i + t q_i)^e expanded with binomials, per coordinate, then
        // multiplied out across coordinates.
        let n = self.degree;
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (e, c) in &self.terms {
            // per-coordinate binomial expansions: vector over s-degree
            let parts: Vec<Vec<Rat>> = [(0, e.a), (1, e.b), (2, e.c)]
                .iter()
                .map(|&(i, exp)| {
                    let exp = exp as usize;
                    let mut v = vec![Rat::zero(); exp + 1];
                    let mut binom = Rat::one();
                    for k in 0..=exp {
                        if k > 0 {
                            binom = binom * Rat::from_integer(((exp - k + 1) as i64).into())
                                / Rat::from_integer((k as i64).into());
                        }
                        v[k] = &binom * &pow_p[i][k] * &pow_q[i][exp - k];
                    }
                    v
                })
                .collect();
            let mut conv = vec![Rat::zero(); 1];
            conv[0] = c.clone();
            for part in &parts {
                let mut next = vec![Rat::zero(); conv.len() + part.len() - 1];
                for (i, a) in conv.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in part.iter().enumerate() {
                        if !b.is_zero() {
                            next[i + j] += a * b;
                        }
                    }
                }
                conv = next;
            }
            for (k, v) in conv.into_iter().enumerate() {
                coeffs[k] += v;
            }
        }
        Ok(BinaryForm::new(n, coeffs))
    }
}

/// The deterministic parametrization points `(P, Q)` used by
/// [`HForm::restrict_to_line`]; the line is `{s P + t Q : (s:t)}`.
pub fn line_parametrization(line: &HForm) -> Result<([Rat; 3], [Rat; 3])> {
    if line.is_zero() || line.degree() != 1 {
        return Err(Error::InvalidComponent(
            "restriction requires a nonzero linear form".into(),
        ));
    }
    let coeffs = [
        line.coeff(Exp::new(1, 0, 0)),
        line.coeff(Exp::new(0, 1, 0)),
        line.coeff(Exp::new(0, 0, 1)),
    ];
    let i = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let (j1, j2) = (others[0], others[1]);
    let mut p = [Rat::zero(), Rat::zero(), Rat::zero()];
    let mut q = [Rat::zero(), Rat::zero(), Rat::zero()];
    p[j1] = coeffs[i].clone();
    p[i] = -coeffs[j1].clone();
    q[j2] = coeffs[i].clone();
    q[i] = -coeffs[j2].clone();
    Ok((p, q))
}

impl Add for &HForm {
    type Output = HForm;
    fn add(self, rhs: &HForm) -> HForm {
        debug_assert!(
            self.is_zero() || rhs.is_zero() || self.degree == rhs.degree,
            "degree mismatch in addition"
        );
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        HForm { degree, terms }
    }
}

impl Sub for &HForm {
    type Output = HForm;
    fn sub(self, rhs: &HForm) -> HForm {
        self + &(-rhs)
    }
}

impl Neg for &HForm {
    type Output = HForm;
    fn neg(self) -> HForm {
        HForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &HForm {
    type Output = HForm;
    fn mul(self, rhs: &HForm) -> HForm {
        let degree = self.degree + rhs.degree;
        let mut terms: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = Exp::new(e1.a + e2.a, e1.b + e2.b, e1.c + e2.c);
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HForm { degree, terms }
    }
}

impl fmt::Display for HForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !mag.is_one() || e.total() == 0 {
                write!(f, "{mag}")?;
                printed = true;
            }
            for (var, exp) in [("x", e.a), ("y", e.b), ("z", e.c)] {
                if exp == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{var}")?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::{rat_i, Rat};
    use num::Zero;

    fn x() -> HForm {
        HForm::linear(rat_i(1), rat_i(0), rat_i(0))
    }
    fn y() -> HForm {
        HForm::linear(rat_i(0), rat_i(1), rat_i(0))
    }
    fn z() -> HForm {
        HForm::linear(rat_i(0), rat_i(0), rat_i(1))
    }

    #[test]
    fn monomial_basis_order_and_length() {
        assert_eq!(monomial_basis(0), vec![Exp::new(0, 0, 0)]);
        let b2 = monomial_basis(2);
        assert_eq!(b2.len(), 6);
        assert_eq!(b2[0], Exp::new(2, 0, 0));
        assert_eq!(b2[1], Exp::new(1, 1, 0));
        assert_eq!(b2[5], Exp::new(0, 0, 2));
        assert_eq!(monomial_basis(10).len(), 66);
        for (i, e) in monomial_basis(7).iter().enumerate() {
            assert_eq!(e.basis_index(), i);
        }
    }

    #[test]
    fn multiply_monomials_and_expansion() {
        let xy = &x() * &y();
        assert_eq!(xy, HForm::monomial(Exp::new(1, 1, 0), rat_i(1)));

        // (x+y-z)(x-y) = x^2 - y^2 - xz + yz
        let f = HForm::linear(rat_i(1), rat_i(1), rat_i(-1));
        let g = HForm::linear(rat_i(1), rat_i(-1), rat_i(0));
        let p = &f * &g;
        let expected = HForm::from_terms(
            2,
            vec![
                (Exp::new(2, 0, 0), rat_i(1)),
                (Exp::new(0, 2, 0), rat_i(-1)),
                (Exp::new(1, 0, 1), rat_i(-1)),
                (Exp::new(0, 1, 1), rat_i(1)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn cl3_defining_product_has_degree_eleven() {
        let lines = [
            x(),
            y(),
            HForm::linear(rat_i(1), rat_i(0), rat_i(-1)),
            HForm::linear(rat_i(1), rat_i(0), rat_i(1)),
            HForm::linear(rat_i(0), rat_i(1), rat_i(1)),
            HForm::linear(rat_i(0), rat_i(1), rat_i(-1)),
            HForm::linear(rat_i(-1), rat_i(1), rat_i(-1)),
            HForm::linear(rat_i(-1), rat_i(1), rat_i(1)),
            HForm::linear(rat_i(-1), rat_i(1), rat_i(0)),
        ];
        let conic = HForm::conic([
            rat_i(-1),
            rat_i(-1),
            rat_i(1),
            rat_i(1),
            rat_i(0),
            rat_i(0),
        ]);
        let mut f = conic;
        for l in &lines {
            f = &f * l;
        }
        assert_eq!(f.degree(), 11);
        assert!(!f.is_zero());
    }

    #[test]
    fn partial_derivatives() {
        // d/dx (x^2 + y^2 - z^2) = 2x
        let f = HForm::conic([rat_i(1), rat_i(1), rat_i(-1), rat_i(0), rat_i(0), rat_i(0)]);
        assert_eq!(f.partial(Var::X), x().scale(&rat_i(2)));
        // d/dz (xyz) = xy
        let xyz = &(&x() * &y()) * &z();
        assert_eq!(xyz.partial(Var::Z), &x() * &y());
        // degree-0 input gives the zero form
        let c = HForm::monomial(Exp::new(0, 0, 0), rat_i(5));
        assert!(c.partial(Var::X).is_zero());
    }

    #[test]
    fn euler_relation_on_fixed_form() {
        // x * fx + y * fy + z * fz = deg(f) * f for f = x^3 + y^2 z
        let f = HForm::from_terms(
            3,
            vec![(Exp::new(3, 0, 0), rat_i(1)), (Exp::new(0, 2, 1), rat_i(1))],
        )
        .unwrap();
        let lhs = &(&(&x() * &f.partial(Var::X)) + &(&y() * &f.partial(Var::Y)))
            + &(&z() * &f.partial(Var::Z));
        assert_eq!(lhs, f.scale(&rat_i(3)));
    }

    #[test]
    fn normalization_is_primitive_with_positive_lead() {
        let f = HForm::linear(rat(-2, 3), rat_i(0), rat(4, 3));
        let n = f.normalized();
        assert_eq!(n, HForm::linear(rat_i(1), rat_i(0), rat_i(-2)));
        assert_eq!(n.normalized(), n);
        let zero = HForm::zero(2);
        assert_eq!(zero.normalized(), zero);
    }

    fn rat(p: i64, q: i64) -> Rat {
        crate::exactpoly::rat::rat(p, q)
    }

    #[test]
    fn restriction_examples() {
        let circle =
            HForm::conic([rat_i(1), rat_i(1), rat_i(-1), rat_i(0), rat_i(0), rat_i(0)]);
        // line z = 0: s^2 + t^2
        let b = circle.restrict_to_line(&z()).unwrap();
        assert_eq!(b.degree(), 2);
        let p = b.unipoly();
        assert_eq!(p.coeffs(), &[rat_i(1), rat_i(0), rat_i(1)]);
        // line y = 0: s^2 - t^2, roots s = +-t
        let b = circle.restrict_to_line(&y()).unwrap();
        assert_eq!(b.unipoly().coeffs(), &[rat_i(-1), rat_i(0), rat_i(1)]);
        // line y - x - z = 0 meets the circle transversally: discriminant != 0
        let l = HForm::linear(rat_i(-1), rat_i(1), rat_i(-1));
        let b = circle.restrict_to_line(&l).unwrap();
        let u = b.unipoly();
        assert_eq!(u.degree(), Some(2));
        let disc = &(&u.coeffs()[1] * &u.coeffs()[1])
            - &(rat_i(4) * &u.coeffs()[0] * &u.coeffs()[2]);
        assert!(!disc.is_zero());
        // zero / non-linear input is rejected
        assert!(circle.restrict_to_line(&HForm::zero(1)).is_err());
    }

    #[test]
    fn substitute_linear_matches_direct_eval() {
        let f = HForm::conic([rat_i(1), rat_i(2), rat_i(-1), rat_i(3), rat_i(0), rat_i(-2)]);
        let m = [
            [rat_i(1), rat_i(2), rat_i(0)],
            [rat_i(0), rat_i(1), rat_i(-1)],
            [rat_i(1), rat_i(0), rat_i(1)],
        ];
        let g = f.substitute_linear(&m);
        for pt in [[1i64, 2, 3], [-1, 0, 5], [2, -3, 1]] {
            let v = [rat_i(pt[0]), rat_i(pt[1]), rat_i(pt[2])];
            let mv = [
                &(&(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1])) + &(&m[0][2] * &v[2]),
                &(&(&m[1][0] * &v[0]) + &(&m[1][1] * &v[1])) + &(&m[1][2] * &v[2]),
                &(&(&m[2][0] * &v[0]) + &(&m[2][1] * &v[1])) + &(&m[2][2] * &v[2]),
            ];
            assert_eq!(g.eval_rat(&v), f.eval_rat(&mv));
        }
    }
}
