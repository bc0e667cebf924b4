//! Conic-line arrangements: validation, exact singular-point detection,
//! weak combinatorics, conic traces, and deletion.

mod singular;

pub use singular::{SingularPoint, Witness};

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::hform::{Exp, HForm};
use crate::exactpoly::rat::Rat;

/// Identifier of one component, indexed within its kind.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ComponentId {
    Line(usize),
    Conic(usize),
}

impl std::fmt::Display for ComponentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentId::Line(i) => write!(f, "line[{i}]"),
            ComponentId::Conic(i) => write!(f, "conic[{i}]"),
        }
    }
}

/// A validated arrangement: nonzero forms of the right degrees, pairwise
/// non-proportional, conics smooth. Components are stored normalized
/// (primitive integer coefficients, leading coefficient positive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    lines: Vec<HForm>,
    conics: Vec<HForm>,
}

impl Arrangement {
    /// Validate and normalize. Checks: no zero forms, degrees 1 and 2, no
    /// proportional pair, every conic smooth (nonsingular symmetric matrix).
    pub fn new(lines: Vec<HForm>, conics: Vec<HForm>) -> Result<Self> {
        let mut norm_lines = Vec::with_capacity(lines.len());
        for l in &lines {
            if l.is_zero() {
                return Err(Error::ZeroForm);
            }
            if l.degree() != 1 {
                return Err(Error::InvalidComponent(format!(
                    "expected a linear form, got degree {}",
                    l.degree()
                )));
            }
            norm_lines.push(l.normalized());
        }
        let mut norm_conics = Vec::with_capacity(conics.len());
        for c in &conics {
            if c.is_zero() {
                return Err(Error::ZeroForm);
            }
            if c.degree() != 2 {
                return Err(Error::InvalidComponent(format!(
                    "expected a quadratic form, got degree {}",
                    c.degree()
                )));
            }
            if conic_matrix_det(c).is_zero() {
                return Err(Error::SingularConic(c.to_string()));
            }
            norm_conics.push(c.normalized());
        }
        for i in 0..norm_lines.len() {
            for j in i + 1..norm_lines.len() {
                if norm_lines[i] == norm_lines[j] {
                    return Err(Error::DuplicateComponent(norm_lines[i].to_string()));
                }
            }
        }
        for i in 0..norm_conics.len() {
            for j in i + 1..norm_conics.len() {
                if norm_conics[i] == norm_conics[j] {
                    return Err(Error::DuplicateComponent(norm_conics[i].to_string()));
                }
            }
        }
        Ok(Arrangement {
            lines: norm_lines,
            conics: norm_conics,
        })
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn k(&self) -> usize {
        self.conics.len()
    }

    pub fn lines(&self) -> &[HForm] {
        &self.lines
    }

    pub fn conics(&self) -> &[HForm] {
        &self.conics
    }

    pub fn total_degree(&self) -> usize {
        self.d() + 2 * self.k()
    }

    pub fn component(&self, id: ComponentId) -> Result<&HForm> {
        match id {
            ComponentId::Line(i) => self.lines.get(i),
            ComponentId::Conic(i) => self.conics.get(i),
        }
        .ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    pub fn component_ids(&self) -> Vec<ComponentId> {
        let mut out: Vec<ComponentId> = (0..self.d()).map(ComponentId::Line).collect();
        out.extend((0..self.k()).map(ComponentId::Conic));
        out
    }

    /// Product of all component forms; degree `d + 2k`.
    pub fn defining_form(&self) -> HForm {
        let mut acc = HForm::monomial(Exp::new(0, 0, 0), Rat::one());
        for l in &self.lines {
            acc = &acc * l;
        }
        for c in &self.conics {
            acc = &acc * c;
        }
        acc
    }

    /// The arrangement without the named component.
    pub fn delete_component(&self, id: ComponentId) -> Result<Arrangement> {
        self.component(id)?;
        if self.d() + self.k() <= 2 {
            return Err(Error::TooFewComponents);
        }
        let mut lines = self.lines.clone();
        let mut conics = self.conics.clone();
        match id {
            ComponentId::Line(i) => {
                lines.remove(i);
            }
            ComponentId::Conic(i) => {
                conics.remove(i);
            }
        }
        Arrangement::new(lines, conics)
    }

    /// Complete list of singular points of the union, over the complex
    /// numbers. `seed` drives the random shears used to separate
    /// conic-conic intersections; everything else is deterministic.
    pub fn singular_points(&self, seed: u64) -> Result<Vec<SingularPoint>> {
        singular::singular_points(self, seed)
    }

    /// Weak combinatorics `C(d, k; n_2, ..., n_t)`, cross-checked against
    /// the pairwise Bezout count (hard failure on mismatch).
    pub fn weak_combinatorics(&self, seed: u64) -> Result<WeakCombinatorics> {
        let points = self.singular_points(seed)?;
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &points {
            *counts.entry(p.multiplicity).or_insert(0) += p.local_count;
        }
        let wc = WeakCombinatorics {
            d: self.d(),
            k: self.k(),
            counts,
        };
        let verdict = crate::mtheory::bezout_check(&wc);
        if !verdict.satisfied {
            return Err(Error::InternalInconsistency(format!(
                "Bezout cross-check failed: pair count {} vs point count {}",
                verdict.lhs, verdict.rhs
            )));
        }
        Ok(wc)
    }

    /// Number of distinct points of the named conic lying on at least one
    /// other component.
    pub fn conic_trace(&self, conic_index: usize, seed: u64) -> Result<usize> {
        let id = ComponentId::Conic(conic_index);
        self.component(id)?;
        let points = self.singular_points(seed)?;
        Ok(points
            .iter()
            .filter(|p| p.incidence.contains(&id))
            .map(|p| p.local_count)
            .sum())
    }
}

/// Determinant of the symmetric matrix of a quadratic form.
fn conic_matrix_det(c: &HForm) -> Rat {
    let a = c.coeff(Exp::new(2, 0, 0));
    let b = c.coeff(Exp::new(0, 2, 0));
    let cc = c.coeff(Exp::new(0, 0, 2));
    let d = c.coeff(Exp::new(1, 1, 0)) / Rat::from_integer(2.into());
    let e = c.coeff(Exp::new(1, 0, 1)) / Rat::from_integer(2.into());
    let f = c.coeff(Exp::new(0, 1, 1)) / Rat::from_integer(2.into());
    // | a d e |
    // | d b f |
    // | e f c |
    &a * (&b * &cc - &f * &f) - &d * (&d * &cc - &f * &e) + &e * (&d * &f - &b * &e)
}

/// The vector `C(d, k; n_2, ..., n_t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakCombinatorics {
    pub d: usize,
    pub k: usize,
    /// `r -> n_r`, only nonzero entries stored.
    pub counts: BTreeMap<usize, usize>,
}

impl WeakCombinatorics {
    pub fn new(d: usize, k: usize, counts: &[(usize, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(r, n) in counts {
            if r < 2 {
                return Err(Error::OutOfRange(format!(
                    "multiplicity {r} below 2 in weak combinatorics"
                )));
            }
            if n > 0 {
                map.insert(r, n);
            }
        }
        Ok(WeakCombinatorics { d, k, counts: map })
    }

    pub fn count(&self, r: usize) -> usize {
        self.counts.get(&r).copied().unwrap_or(0)
    }

    /// Highest multiplicity present (0 when there are no singular points).
    pub fn t(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn max_supported_multiplicity_ok(&self) -> bool {
        self.t() <= 4
    }
}

impl std::fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C({},{};", self.d, self.k)?;
        let t = self.t().max(2);
        for r in 2..=t {
            if r > 2 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.count(r))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat_i;

    pub(crate) fn line(a: i64, b: i64, c: i64) -> HForm {
        HForm::linear(rat_i(a), rat_i(b), rat_i(c))
    }

    pub(crate) fn conic(v: [i64; 6]) -> HForm {
        HForm::conic([
            rat_i(v[0]),
            rat_i(v[1]),
            rat_i(v[2]),
            rat_i(v[3]),
            rat_i(v[4]),
            rat_i(v[5]),
        ])
    }

    pub(crate) fn cl1() -> Arrangement {
        Arrangement::new(
            vec![
                line(1, 0, 0),
                line(0, 1, 0),
                line(1, 1, -1),
                line(-1, 1, -1),
                line(1, 1, 1),
                line(-1, 1, 1),
            ],
            vec![conic([1, 1, -1, 0, 0, 0])],
        )
        .unwrap()
    }

    #[test]
    fn validate_cl1() {
        let arr = cl1();
        assert_eq!(arr.d(), 6);
        assert_eq!(arr.k(), 1);
        assert_eq!(arr.total_degree(), 8);
    }

    #[test]
    fn degenerate_conic_is_rejected() {
        // xy has rank-2 matrix
        let res = Arrangement::new(vec![], vec![conic([0, 0, 0, 1, 0, 0])]);
        assert!(matches!(res, Err(Error::SingularConic(_))));
    }

    #[test]
    fn proportional_lines_are_rejected() {
        let res = Arrangement::new(vec![line(1, 0, 0), line(2, 0, 0)], vec![]);
        assert!(matches!(res, Err(Error::DuplicateComponent(_))));
    }

    #[test]
    fn defining_form_degrees() {
        assert_eq!(cl1().defining_form().degree(), 8);
        let single = Arrangement::new(vec![], vec![conic([1, 1, -1, 0, 0, 0])]).unwrap();
        assert_eq!(single.defining_form(), conic([1, 1, -1, 0, 0, 0]));
    }

    #[test]
    fn delete_component_basics() {
        let arr = cl1();
        let del = arr.delete_component(ComponentId::Conic(0)).unwrap();
        assert_eq!(del.d(), 6);
        assert_eq!(del.k(), 0);
        assert!(matches!(
            arr.delete_component(ComponentId::Conic(5)),
            Err(Error::UnknownComponent(_))
        ));
        let two = Arrangement::new(vec![line(1, 0, 0), line(0, 1, 0)], vec![]).unwrap();
        assert!(matches!(
            two.delete_component(ComponentId::Line(0)),
            Err(Error::TooFewComponents)
        ));
    }
}
