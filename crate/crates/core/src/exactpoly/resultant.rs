//! Sylvester resultants eliminating one of the three variables.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::hform::{Exp, HForm, Var};
use crate::exactpoly::rat::Rat;
use crate::exactpoly::unipoly::{BinaryForm, UniPoly};

/// Sylvester resultant of `f` and `g` with respect to `var`, returned as a
/// homogeneous form in the two remaining variables. Requires both inputs to
/// have positive degree in `var`; the degree equals `deg f * deg g` exactly
/// when both are regular in `var` (their `var`-leading coefficients are
/// constants).
pub fn resultant_eliminating(f: &HForm, g: &HForm, var: Var) -> Result<HForm> {
    let fc = var_coefficients(f, var);
    let gc = var_coefficients(g, var);
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    if m == 0 || n == 0 {
        return Err(Error::InvalidComponent(format!(
            "resultant requires positive degree in {}; shear first",
            var.name()
        )));
    }
    // Sylvester matrix of binary forms in the remaining variables.
    let size = m + n;
    let mut rows: Vec<Vec<BinaryForm>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero_entry(); size];
        for (j, c) in fc.iter().enumerate() {
            row[shift + (m - j)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero_entry(); size];
        for (j, c) in gc.iter().enumerate() {
            row[shift + (n - j)] = c.clone();
        }
        rows.push(row);
    }
    let det = bareiss_det(rows)?;
    Ok(binary_to_hform(&det, var, f.degree() * g.degree()))
}

/// Coefficients of `f` as a polynomial in `var`: entry `j` is the coefficient
/// of `var^j`, a binary form in the remaining two variables dehomogenized
/// with degree tracking.
fn var_coefficients(f: &HForm, var: Var) -> Vec<BinaryForm> {
    let d = f.degree();
    let vi = var.index();
    let deg_in_var = f
        .terms()
        .map(|(e, _)| exp_component(e, vi))
        .max()
        .unwrap_or(0);
    let (u, _) = other_vars(var);
    let mut out: Vec<Vec<Rat>> = (0..=deg_in_var)
        .map(|j| vec![Rat::zero(); d - j + 1])
        .collect();
    for (e, c) in f.terms() {
        let j = exp_component(e, vi);
        let ue = exp_component(e, u.index());
        out[j][ue] = c.clone();
    }
    out.into_iter()
        .enumerate()
        .map(|(j, coeffs)| BinaryForm::new(d - j, coeffs))
        .collect()
}

fn exp_component(e: &Exp, i: usize) -> usize {
    match i {
        0 => e.a as usize,
        1 => e.b as usize,
        _ => e.c as usize,
    }
}

fn other_vars(var: Var) -> (Var, Var) {
    match var {
        Var::X => (Var::Y, Var::Z),
        Var::Y => (Var::X, Var::Z),
        Var::Z => (Var::X, Var::Y),
    }
}

fn zero_entry() -> BinaryForm {
    BinaryForm::new(0, vec![])
}

/// Fraction-free Bareiss determinant over binary forms (entries of a
/// homogeneous Sylvester matrix; all divisions are exact).
fn bareiss_det(mut m: Vec<Vec<BinaryForm>>) -> Result<BinaryForm> {
    let n = m.len();
    // The Sylvester degree function is separable (row weight + column
    // weight), so the determinant degree is the diagonal degree sum.
    let det_degree: usize = m.iter().enumerate().map(|(i, row)| row[i].degree()).sum();
    let mut sign = false;
    let mut prev_lead = BinaryForm::new(0, vec![Rat::one()]);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(BinaryForm::new(det_degree, vec![])),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = &m[k][k] * &m[i][j];
                let b = &m[i][k] * &m[k][j];
                let num = sub_forms(&a, &b)?;
                m[i][j] = exact_div_forms(&num, &prev_lead)?;
            }
            m[i][k] = BinaryForm::new(m[i][k].degree(), vec![]);
        }
        prev_lead = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign {
        det = BinaryForm::new(det.degree(), det.unipoly().scale(&-Rat::one()).coeffs().to_vec());
    }
    Ok(det)
}

fn sub_forms(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm> {
    // padded zeros can carry stale declared degrees; the nonzero side wins
    let deg = match (a.is_zero(), b.is_zero()) {
        (false, false) => {
            if a.degree() != b.degree() {
                return Err(Error::InternalInconsistency(
                    "binary form degree mismatch in determinant".into(),
                ));
            }
            a.degree()
        }
        (true, false) => b.degree(),
        (false, true) => a.degree(),
        (true, true) => a.degree().max(b.degree()),
    };
    let p = &a.unipoly() - &b.unipoly();
    Ok(BinaryForm::from_unipoly(deg, &p))
}

fn exact_div_forms(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm> {
    if b.is_zero() {
        return Err(Error::InternalInconsistency(
            "binary form division by zero".into(),
        ));
    }
    if a.is_zero() {
        // padded zeros may carry a stale declared degree; keep them zero
        return Ok(BinaryForm::new(a.degree().saturating_sub(b.degree()), vec![]));
    }
    let deg = a.degree().checked_sub(b.degree()).ok_or_else(|| {
        Error::InternalInconsistency("binary form degree underflow".into())
    })?;
    if a.inf_mult() < b.inf_mult() {
        return Err(Error::InternalInconsistency(
            "binary form division is not exact (t-multiplicity)".into(),
        ));
    }
    let q = a.unipoly().exact_div(&b.unipoly());
    Ok(BinaryForm::from_unipoly(deg, &q))
}

/// Rebuild an `HForm` in the two variables other than `var` from a binary
/// form, padding with the declared total degree.
fn binary_to_hform(b: &BinaryForm, var: Var, expected_degree: usize) -> HForm {
    let (u, v) = other_vars(var);
    let p = b.unipoly();
    if p.is_zero() {
        return HForm::zero(expected_degree);
    }
    let deg = b.degree();
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = [0u16; 3];
        e[u.index()] = i as u16;
        e[v.index()] = (deg - i) as u16;
        terms.push((Exp::new(e[0], e[1], e[2]), c.clone()));
    }
    HForm::from_terms(deg, terms).expect("homogeneous by construction")
}

/// Dehomogenize a binary form in the two variables other than `var` at
/// (second variable) = 1, as a `UniPoly` in the first remaining variable.
pub fn dehomogenize_pair(f: &HForm, var: Var) -> UniPoly {
    let (u, _) = other_vars(var);
    let mut coeffs = vec![Rat::zero(); f.degree() + 1];
    for (e, c) in f.terms() {
        coeffs[exp_component(e, u.index())] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}
