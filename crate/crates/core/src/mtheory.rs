//! Combinatorial constraints on weak combinatorics of conic-line
//! arrangements hitting the maximal Jacobian-ideal degree: Bezout counts,
//! the parity characterization, the one-conic system and its enumeration,
//! conic-trace admissibility, combinatorial Poincare polynomials with
//! rational splitting, the conic-deletion identity, and the closed-form
//! regularity values.

use std::collections::BTreeSet;

use crate::arrangement::WeakCombinatorics;
use crate::error::{Error, Result};

/// Outcome of one numerical constraint. For equality rules `satisfied`
/// means `lhs == rhs`; for membership rules `lhs` is the tested value and
/// `rhs` the inclusive bound of the admissible range (exceptional equality
/// branches are named in `rule`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintVerdict {
    pub rule: String,
    pub satisfied: bool,
    pub lhs: i64,
    pub rhs: i64,
}

impl ConstraintVerdict {
    fn equality(rule: &str, lhs: i64, rhs: i64) -> Self {
        ConstraintVerdict {
            rule: rule.to_string(),
            satisfied: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Total Tjurina number from ordinary multiplicities: `sum (r-1)^2 n_r`.
pub fn tau_of(wc: &WeakCombinatorics) -> usize {
    wc.counts.iter().map(|(&r, &n)| (r - 1) * (r - 1) * n).sum()
}

fn binom2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Pairwise Bezout count: `4 C(k,2) + 2kd + C(d,2) = sum C(r,2) n_r` for
/// arrangements with only ordinary (transversal) intersections.
pub fn bezout_check(wc: &WeakCombinatorics) -> ConstraintVerdict {
    let lhs = 4 * binom2(wc.k) + 2 * wc.k * wc.d + binom2(wc.d);
    let rhs: usize = wc.counts.iter().map(|(&r, &n)| binom2(r) * n).sum();
    ConstraintVerdict::equality("bezout", lhs as i64, rhs as i64)
}

/// Parity characterization of the Jacobian-degree target: a failed verdict
/// means the combinatorics cannot come from an arrangement hitting it
/// (necessary condition only).
pub fn char_check(wc: &WeakCombinatorics) -> Result<ConstraintVerdict> {
    if wc.k == 0 || wc.d < 3 {
        return Err(Error::OutOfRange(format!(
            "characterization needs k >= 1 and d >= 3, got k = {}, d = {}",
            wc.k, wc.d
        )));
    }
    if wc.t() > 4 {
        return Err(Error::UnsupportedMultiplicity(wc.t()));
    }
    let (n2, n3, n4) = (wc.count(2) as i64, wc.count(3) as i64, wc.count(4) as i64);
    let lhs = n2 + 2 * n3 + 3 * n4;
    let k = wc.k as i64;
    let (rule, rhs) = if wc.d % 2 == 0 {
        let l = (wc.d / 2) as i64;
        ("char:even", (k + l) * (k + l) + l - k - 3)
    } else {
        let l = ((wc.d - 1) / 2) as i64;
        ("char:odd", (k + l) * (k + l) + 2 * l - 1)
    };
    Ok(ConstraintVerdict::equality(rule, lhs, rhs))
}

/// The two equations of the one-conic system, parity-appropriate.
pub fn one_conic_check(
    wc: &WeakCombinatorics,
) -> Result<(ConstraintVerdict, ConstraintVerdict)> {
    if wc.k != 1 {
        return Err(Error::OutOfRange(format!(
            "one-conic system needs k = 1, got k = {}",
            wc.k
        )));
    }
    if wc.d < 3 {
        return Err(Error::OutOfRange(format!(
            "one-conic system needs d >= 3, got d = {}",
            wc.d
        )));
    }
    if wc.t() > 4 {
        return Err(Error::UnsupportedMultiplicity(wc.t()));
    }
    let (n2, n3, n4) = (wc.count(2) as i64, wc.count(3) as i64, wc.count(4) as i64);
    let (first, second) = one_conic_system(wc.d);
    Ok((
        ConstraintVerdict::equality("one-conic:n2+n3", n2 + n3, first),
        ConstraintVerdict::equality("one-conic:n3+3n4", n3 + 3 * n4, second),
    ))
}

/// Right-hand sides of the one-conic system for `d` lines:
/// even `d = 2l`: `n2 + n3 = 3l - 6`, `n3 + 3 n4 = l^2 + 3`;
/// odd `d = 2l+1`: `n2 + n3 = 3l - 2`, `n3 + 3 n4 = l^2 + l + 2`.
fn one_conic_system(d: usize) -> (i64, i64) {
    if d % 2 == 0 {
        let l = (d / 2) as i64;
        (3 * l - 6, l * l + 3)
    } else {
        let l = ((d - 1) / 2) as i64;
        (3 * l - 2, l * l + l + 2)
    }
}

/// All nonnegative `(n2, n3, n4)` solving the one-conic system for `d`
/// lines.
pub fn enumerate_one_conic(d: usize) -> Result<BTreeSet<(usize, usize, usize)>> {
    if d < 3 {
        return Err(Error::OutOfRange(format!(
            "enumeration needs d >= 3, got {d}"
        )));
    }
    let (first, second) = one_conic_system(d);
    let mut out = BTreeSet::new();
    if first < 0 || second < 0 {
        return Ok(out);
    }
    for n3 in 0..=first.min(second) {
        let n2 = first - n3;
        let rem = second - n3;
        if rem % 3 == 0 {
            out.insert((n2 as usize, n3 as usize, (rem / 3) as usize));
        }
    }
    Ok(out)
}

/// Admissibility of the conic trace `r` (number of points of the conic on
/// the rest) for `d` lines and one conic. Even `r = 2m` admits `m` equal to
/// the exceptional value `l + 2` or below the stated bound; odd `r = 2m+1`
/// admits only `m` below a bound. `lhs` is `m`, `rhs` the bound.
pub fn mvp_allowed(d: usize, r: usize) -> Result<ConstraintVerdict> {
    if d < 3 || r < 1 {
        return Err(Error::OutOfRange(format!(
            "conic-trace admissibility needs d >= 3 and r >= 1, got d = {d}, r = {r}"
        )));
    }
    let l = (d / 2) as i64; // floor; the case split below matches parity
    let m = (r / 2) as i64;
    let (rule, bound, exceptional) = match (d % 2 == 0, r % 2 == 0) {
        (true, true) => ("mvp:even-d,even-r", l - 1, Some(l + 2)),
        (true, false) => ("mvp:even-d,odd-r", l - 2, None),
        (false, true) => ("mvp:odd-d,even-r", l, Some(l + 2)),
        (false, false) => ("mvp:odd-d,odd-r", l - 1, None),
    };
    let satisfied = m <= bound || exceptional == Some(m);
    Ok(ConstraintVerdict {
        rule: rule.to_string(),
        satisfied,
        lhs: m,
        rhs: bound,
    })
}

/// True when `r = 2d`: a conic meeting `d` lines in the maximal number of
/// points; the first two generator degrees of the relation module then sum
/// to `deg + 1`, so the union is never free.
pub fn addition_never_free_advisory(d: usize, r: usize) -> bool {
    r == 2 * d
}

/// Degree-two combinatorial Poincare polynomial `1 + c1 t + c2 t^2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PoincarePolynomial {
    pub c1: i64,
    pub c2: i64,
}

impl std::fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1 + {}t + {}t^2", self.c1, self.c2)
    }
}

impl PoincarePolynomial {
    /// `P(C;t) = 1 + (e-1) t + ((e-1)^2 - tau) t^2` for a reduced curve of
    /// degree `e`.
    pub fn of_curve(e: usize, tau: usize) -> Self {
        let e1 = e as i64 - 1;
        PoincarePolynomial {
            c1: e1,
            c2: e1 * e1 - tau as i64,
        }
    }

    pub fn product(d1: i64, d2: i64) -> Self {
        PoincarePolynomial {
            c1: d1 + d2,
            c2: d1 * d2,
        }
    }
}

/// `P(CL;t) = 1 + (2k + d - 1) t + (sum (r-1) n_r - d + 1) t^2`. For `k = 0`
/// this is the classical Poincare polynomial of a line arrangement.
pub fn poincare_cl(wc: &WeakCombinatorics) -> PoincarePolynomial {
    let c1 = 2 * wc.k as i64 + wc.d as i64 - 1;
    let weighted: i64 = wc
        .counts
        .iter()
        .map(|(&r, &n)| ((r - 1) * n) as i64)
        .sum();
    PoincarePolynomial {
        c1,
        c2: weighted - wc.d as i64 + 1,
    }
}

/// Integer pair `(d1, d2)`, `d1 <= d2`, with `P = (1 + d1 t)(1 + d2 t)`,
/// when it exists.
pub fn splits_rationally(p: &PoincarePolynomial) -> Option<(i64, i64)> {
    let disc = p.c1 * p.c1 - 4 * p.c2;
    if disc < 0 {
        return None;
    }
    let s = (disc as u64).isqrt() as i64;
    if s * s != disc {
        return None;
    }
    if (p.c1 - s) % 2 != 0 {
        return None;
    }
    let d1 = (p.c1 - s) / 2;
    let d2 = (p.c1 + s) / 2;
    Some((d1, d2))
}

/// Poincare polynomial of the deletion of the conic from a one-conic
/// arrangement hitting the Jacobian-degree target, from the parity formula:
/// even `d = 2l`: `(l^2 + l - 2 - r) t^2 + (2l - 1) t + 1`;
/// odd `d = 2l + 1`: `(l^2 + 2l - r) t^2 + 2l t + 1`.
pub fn poincare_of_deletion(d: usize, r: usize) -> Result<PoincarePolynomial> {
    if d < 3 || r < 1 {
        return Err(Error::OutOfRange(format!(
            "deletion formula needs d >= 3 and r >= 1, got d = {d}, r = {r}"
        )));
    }
    Ok(if d % 2 == 0 {
        let l = (d / 2) as i64;
        PoincarePolynomial {
            c1: 2 * l - 1,
            c2: l * l + l - 2 - r as i64,
        }
    } else {
        let l = ((d - 1) / 2) as i64;
        PoincarePolynomial {
            c1: 2 * l,
            c2: l * l + 2 * l - r as i64,
        }
    })
}

/// Coefficientwise check of `P(CL;t) = P(L;t) + 2t + r t^2`. `lhs`/`rhs`
/// report the `t^2` coefficients; the `t` coefficient equality is folded
/// into `satisfied`.
pub fn deletion_identity_check(
    p_cl: &PoincarePolynomial,
    p_l: &PoincarePolynomial,
    r: usize,
) -> ConstraintVerdict {
    let t1_ok = p_cl.c1 == p_l.c1 + 2;
    let lhs = p_cl.c2;
    let rhs = p_l.c2 + r as i64;
    ConstraintVerdict {
        rule: "deletion-identity".to_string(),
        satisfied: t1_ok && lhs == rhs,
        lhs,
        rhs,
    }
}

/// Lower bound for the minimal relation degree of a line arrangement with
/// ordinary points of multiplicity at most four: `ceil(d/2) - 2`. The cited
/// statement covers even `d`; the odd value is advisory.
pub fn mdr_lower_bound_lines(d: usize) -> usize {
    (d.div_ceil(2)).saturating_sub(2)
}

/// Closed-form regularity values for a curve of total degree `D` hitting
/// the Jacobian-degree target: `reg M(f) = 3m - 2` (even `D = 2m`) or
/// `3m - 1` (odd `D = 2m + 1`), and `reg AR(f) = m + 1` in both cases.
pub fn m_reg_values(total_degree: usize) -> Result<(usize, usize)> {
    let d = total_degree;
    if d < 5 {
        return Err(Error::DegreeTooSmall(d));
    }
    Ok(if d % 2 == 0 {
        let m = d / 2;
        (3 * m - 2, m + 1)
    } else {
        let m = (d - 1) / 2;
        (3 * m - 1, m + 1)
    })
}
