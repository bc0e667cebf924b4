//! Exact detection of the singular points of a conic-line arrangement,
//! counted over the complex numbers.
//!
//! Three passes:
//!
//! 1. per line: restrict every other component to the line and cluster the
//!    irreducible factors of the restrictions; linear factors and the
//!    parameter point at infinity give rational points, quadratic factors
//!    give conjugate pairs (which lie on no second line, so they are final
//!    here);
//! 2. per conic pair: a random integral shear makes both conics regular in
//!    `z` and separates the at most four intersection points under the
//!    `(x:y)` projection; each irreducible factor of the degree-4 resultant
//!    cuts out one Galois orbit whose `z`-coordinate is recovered by a gcd
//!    over the factor's number field. Non-separating shears are retried.
//! 3. all rational candidates are deduplicated by canonical coordinates and
//!    their incidence recomputed by exact evaluation of every component.
//!
//! At every point the pairwise tangent directions of the incident
//! components are compared exactly in the residue field; a proportional
//! pair is a non-ordinary singularity and rejects the arrangement. The
//! Bezout cross-check in `weak_combinatorics` then certifies global
//! completeness of the point list.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, ComponentId};
use crate::error::{Error, Result};
use crate::exactpoly::factor::factor_irreducible;
use crate::exactpoly::hform::{line_parametrization, Exp, HForm, Var};
use crate::exactpoly::numfield::{gcd_over_field, NumberField};
use crate::exactpoly::rat::{Int, Rat};
use crate::exactpoly::resultant::{dehomogenize_pair, resultant_eliminating};
use crate::exactpoly::unipoly::UniPoly;

const SHEAR_ATTEMPTS: usize = 16;
const SHEAR_COEFF_RANGE: i64 = 20;

/// Location certificate of a singular point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// Exact projective coordinates, primitive integral, first nonzero
    /// coordinate positive.
    Rational { coords: [Rat; 3] },
    /// A Galois orbit of points: the pair of components that cut it out,
    /// the irreducible minimal polynomial of the clustering parameter, and
    /// coordinates in `Q[a]/(min_poly)`.
    Algebraic {
        cut_by: (ComponentId, ComponentId),
        min_poly: UniPoly,
        coords: [UniPoly; 3],
    },
}

/// One detected singular point (or conjugate orbit of points).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularPoint {
    /// Components through the point.
    pub incidence: BTreeSet<ComponentId>,
    /// Number of distinct complex points sharing this record (the degree of
    /// the Galois orbit).
    pub local_count: usize,
    /// Number of components through the point.
    pub multiplicity: usize,
    /// Degree of the residue field over the rationals.
    pub field_degree: usize,
    pub witness: Witness,
}

pub(crate) fn singular_points(arr: &Arrangement, seed: u64) -> Result<Vec<SingularPoint>> {
    let mut rational_pool: BTreeSet<CanonPoint> = BTreeSet::new();
    let mut records: Vec<SingularPoint> = Vec::new();

    line_pass(arr, &mut rational_pool, &mut records)?;
    conic_pair_pass(arr, seed, &mut rational_pool, &mut records)?;
    rational_pass(arr, &rational_pool, &mut records)?;

    records.sort_by(|a, b| witness_key(&a.witness).cmp(&witness_key(&b.witness)));
    Ok(records)
}

// ---------------------------------------------------------------- pass 1

fn line_pass(
    arr: &Arrangement,
    rational_pool: &mut BTreeSet<CanonPoint>,
    records: &mut Vec<SingularPoint>,
) -> Result<()> {
    for li in 0..arr.d() {
        let line_id = ComponentId::Line(li);
        let line = &arr.lines()[li];
        let (p, q) = line_parametrization(line)?;
        let mut infinity_hit = false;
        let mut quad_clusters: BTreeMap<UniPoly, BTreeSet<ComponentId>> = BTreeMap::new();
        for other in arr.component_ids() {
            if other == line_id {
                continue;
            }
            let form = arr.component(other)?;
            let restriction = form.restrict_to_line(line)?;
            if restriction.is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "{other} restricts to zero on {line_id}"
                )));
            }
            if restriction.inf_mult() > 0 {
                infinity_hit = true;
                rational_pool.insert(CanonPoint::from_rat(&p));
            }
            let poly = restriction.unipoly();
            if poly.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (factor, _mult) in factor_irreducible(&poly)? {
                match factor.degree() {
                    Some(1) => {
                        // root s0 of s + c0: point s0 P + Q
                        let s0 = -factor.coeff(0);
                        let pt = [
                            &p[0] * &s0 + &q[0],
                            &p[1] * &s0 + &q[1],
                            &p[2] * &s0 + &q[2],
                        ];
                        rational_pool.insert(CanonPoint::from_rat(&pt));
                    }
                    Some(2) => {
                        quad_clusters.entry(factor).or_default().insert(other);
                    }
                    _ => {}
                }
            }
        }
        let _ = infinity_hit;
        for (min_poly, others) in quad_clusters {
            // a non-rational point of a rational line lies on no other line
            if let Some(bad) = others.iter().find(|c| matches!(c, ComponentId::Line(_))) {
                return Err(Error::InternalInconsistency(format!(
                    "two lines {line_id}, {bad} share a non-rational point"
                )));
            }
            let field = NumberField::new(min_poly.clone())?;
            let alpha_coeff = |pi: &Rat, qi: &Rat| {
                UniPoly::from_coeffs(vec![qi.clone(), pi.clone()])
            };
            let coords = [
                alpha_coeff(&p[0], &q[0]),
                alpha_coeff(&p[1], &q[1]),
                alpha_coeff(&p[2], &q[2]),
            ];
            let coords = field.normalize_point(&coords)?;
            let mut incidence: BTreeSet<ComponentId> = others;
            incidence.insert(line_id);
            check_multiplicity(&incidence, &format!("on {line_id}"))?;
            check_ordinary(arr, &field, &coords, &incidence)?;
            let cut_by = (line_id, *incidence.iter().find(|c| **c != line_id).unwrap());
            records.push(SingularPoint {
                multiplicity: incidence.len(),
                local_count: 2,
                field_degree: 2,
                witness: Witness::Algebraic {
                    cut_by,
                    min_poly,
                    coords,
                },
                incidence,
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- pass 2

fn conic_pair_pass(
    arr: &Arrangement,
    seed: u64,
    rational_pool: &mut BTreeSet<CanonPoint>,
    records: &mut Vec<SingularPoint>,
) -> Result<()> {
    for i in 0..arr.k() {
        for j in i + 1..arr.k() {
            let candidates = conic_pair_points(arr, i, j, seed)?;
            for (field, min_poly, coords) in candidates {
                if field.degree() == 1 {
                    // constant coordinates; push to the rational pool
                    let pt = [
                        coords[0].coeff(0),
                        coords[1].coeff(0),
                        coords[2].coeff(0),
                    ];
                    rational_pool.insert(CanonPoint::from_rat(&pt));
                    continue;
                }
                let mut incidence: BTreeSet<ComponentId> = BTreeSet::new();
                for id in arr.component_ids() {
                    let form = arr.component(id)?;
                    if field.is_zero(&field.eval_hform(form, &coords)) {
                        incidence.insert(id);
                    }
                }
                if incidence.iter().any(|c| matches!(c, ComponentId::Line(_))) {
                    continue; // found on its line in pass 1
                }
                // keep each orbit once: only from its two smallest conics
                let mut conics = incidence.iter().copied();
                let smallest = (conics.next().unwrap(), conics.next().unwrap());
                if smallest != (ComponentId::Conic(i), ComponentId::Conic(j)) {
                    continue;
                }
                check_multiplicity(&incidence, "on a conic pair")?;
                check_ordinary(arr, &field, &coords, &incidence)?;
                records.push(SingularPoint {
                    multiplicity: incidence.len(),
                    local_count: field.degree(),
                    field_degree: field.degree(),
                    witness: Witness::Algebraic {
                        cut_by: (ComponentId::Conic(i), ComponentId::Conic(j)),
                        min_poly,
                        coords,
                    },
                    incidence,
                });
            }
        }
    }
    Ok(())
}

type PointCandidate = (NumberField, UniPoly, [UniPoly; 3]);

/// All intersection points of conics `i` and `j`, each as one Galois orbit
/// with coordinates in the number field of its minimal polynomial. Las
/// Vegas: shears that fail to separate the points are retried.
fn conic_pair_points(
    arr: &Arrangement,
    i: usize,
    j: usize,
    seed: u64,
) -> Result<Vec<PointCandidate>> {
    let c1 = &arr.conics()[i];
    let c2 = &arr.conics()[j];
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i as u64, j as u64));
    'attempt: for _ in 0..SHEAR_ATTEMPTS {
        let m = match random_shear(&mut rng) {
            Some(m) => m,
            None => continue,
        };
        let s1 = c1.substitute_linear(&m);
        let s2 = c2.substitute_linear(&m);
        // projection center (0:0:1) must avoid both conics
        if s1.coeff(Exp::new(0, 0, 2)).is_zero() || s2.coeff(Exp::new(0, 0, 2)).is_zero() {
            continue;
        }
        let res = resultant_eliminating(&s1, &s2, Var::Z)?;
        if res.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "vanishing resultant for conics {i}, {j}"
            )));
        }
        // no intersection point may project to (1:0)
        if res.coeff(Exp::new(4, 0, 0)).is_zero() {
            continue;
        }
        let quartic = dehomogenize_pair(&res, Var::Z);
        debug_assert_eq!(quartic.degree(), Some(4));
        let mut found = Vec::new();
        for (min_poly, _mult) in factor_irreducible(&quartic)? {
            let field = NumberField::new(min_poly.clone())?;
            let alpha = field.generator();
            let zp1 = z_coeffs_at(&s1, &field, &alpha);
            let zp2 = z_coeffs_at(&s2, &field, &alpha);
            let g = gcd_over_field(&field, &zp1, &zp2)?;
            if g.len() != 2 {
                // two points over one projection root: shear again
                continue 'attempt;
            }
            let z0 = field.sub(&UniPoly::zero(), &g[0]);
            let sheared = [alpha.clone(), field.from_rat(Rat::one()), z0];
            // original point = M * sheared
            let mut coords = [UniPoly::zero(), UniPoly::zero(), UniPoly::zero()];
            for (r, row) in m.iter().enumerate() {
                let mut acc = UniPoly::zero();
                for (c, entry) in row.iter().enumerate() {
                    let t = sheared[c].scale(entry);
                    acc = field.add(&acc, &t);
                }
                coords[r] = field.reduce(&acc);
            }
            let coords = field.normalize_point(&coords)?;
            found.push((field, min_poly, coords));
        }
        return Ok(found);
    }
    Err(Error::ShearExhausted)
}

/// Coefficients of a sheared conic as a quadratic in `z`, evaluated at
/// `x = alpha, y = 1`.
fn z_coeffs_at(conic: &HForm, field: &NumberField, alpha: &UniPoly) -> Vec<UniPoly> {
    let c = |a: u16, b: u16, cz: u16| conic.coeff(Exp::new(a, b, cz));
    let a2 = field.mul(alpha, alpha);
    // z^0: c200 x^2 + c110 xy + c020 y^2
    let z0 = &(&a2.scale(&c(2, 0, 0)) + &alpha.scale(&c(1, 1, 0)))
        + &UniPoly::constant(c(0, 2, 0));
    // z^1: c101 x + c011 y
    let z1 = &alpha.scale(&c(1, 0, 1)) + &UniPoly::constant(c(0, 1, 1));
    // z^2: c002
    let z2 = UniPoly::constant(c(0, 0, 2));
    vec![field.reduce(&z0), field.reduce(&z1), z2]
}

fn mix_seed(seed: u64, i: u64, j: u64) -> u64 {
    let mut h = seed ^ 0xd6e8_feb8_6659_fd93;
    for v in [i + 1, j + 1] {
        h ^= v.wrapping_mul(0x2545_f491_4f6c_dd1d);
        h = h.rotate_left(27).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    h
}

fn random_shear(rng: &mut ChaCha8Rng) -> Option<[[Rat; 3]; 3]> {
    let mut e = [[0i64; 3]; 3];
    for row in &mut e {
        for v in row.iter_mut() {
            *v = rng.gen_range(-SHEAR_COEFF_RANGE..=SHEAR_COEFF_RANGE);
        }
    }
    let det = (e[0][0] as i128) * ((e[1][1] * e[2][2] - e[1][2] * e[2][1]) as i128)
        - (e[0][1] as i128) * ((e[1][0] * e[2][2] - e[1][2] * e[2][0]) as i128)
        + (e[0][2] as i128) * ((e[1][0] * e[2][1] - e[1][1] * e[2][0]) as i128);
    if det == 0 {
        return None;
    }
    Some(e.map(|row| row.map(|v| Rat::from_integer(v.into()))))
}

// ---------------------------------------------------------------- pass 3

fn rational_pass(
    arr: &Arrangement,
    pool: &BTreeSet<CanonPoint>,
    records: &mut Vec<SingularPoint>,
) -> Result<()> {
    // the trivial field Q[a]/(a) lets the shared helpers run on rationals
    let q_field = NumberField::new(UniPoly::monomial(1, Rat::one()))?;
    for pt in pool {
        let coords = pt.to_rat();
        let mut incidence: BTreeSet<ComponentId> = BTreeSet::new();
        for id in arr.component_ids() {
            if arr.component(id)?.eval_rat(&coords).is_zero() {
                incidence.insert(id);
            }
        }
        if incidence.len() < 2 {
            return Err(Error::InternalInconsistency(format!(
                "pooled point {:?} lies on {} components",
                coords,
                incidence.len()
            )));
        }
        let display = format!(
            "({}, {}, {})",
            coords[0], coords[1], coords[2]
        );
        check_multiplicity(&incidence, &format!("at {display}"))?;
        let k_coords = [
            UniPoly::constant(coords[0].clone()),
            UniPoly::constant(coords[1].clone()),
            UniPoly::constant(coords[2].clone()),
        ];
        check_ordinary(arr, &q_field, &k_coords, &incidence)?;
        records.push(SingularPoint {
            multiplicity: incidence.len(),
            local_count: 1,
            field_degree: 1,
            witness: Witness::Rational { coords },
            incidence,
        });
    }
    Ok(())
}

// ------------------------------------------------------------- checks

fn check_multiplicity(incidence: &BTreeSet<ComponentId>, at: &str) -> Result<()> {
    if incidence.len() >= 5 {
        return Err(Error::MultiplicityTooHigh(format!(
            "{} components meet {at}",
            incidence.len()
        )));
    }
    Ok(())
}

/// All pairs of components through the point must have non-proportional
/// gradients there, evaluated exactly in the residue field.
fn check_ordinary(
    arr: &Arrangement,
    field: &NumberField,
    coords: &[UniPoly; 3],
    incidence: &BTreeSet<ComponentId>,
) -> Result<()> {
    let ids: Vec<ComponentId> = incidence.iter().copied().collect();
    let grads: Vec<[UniPoly; 3]> = ids
        .iter()
        .map(|id| {
            let f = arr.component(*id).expect("validated id");
            [
                field.eval_hform(&f.partial(Var::X), coords),
                field.eval_hform(&f.partial(Var::Y), coords),
                field.eval_hform(&f.partial(Var::Z), coords),
            ]
        })
        .collect();
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            let (ga, gb) = (&grads[a], &grads[b]);
            let proportional = (0..3).all(|u| {
                let v = (u + 1) % 3;
                let m1 = field.mul(&ga[u], &gb[v]);
                let m2 = field.mul(&ga[v], &gb[u]);
                field.is_zero(&field.sub(&m1, &m2))
            });
            if proportional {
                return Err(Error::NonOrdinarySingularity(format!(
                    "{} and {} share a tangent direction",
                    ids[a], ids[b]
                )));
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------- canonical points

/// Primitive-integer projective representative with positive first nonzero
/// coordinate; the dedup key for rational points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct CanonPoint([Int; 3]);

impl CanonPoint {
    fn from_rat(p: &[Rat; 3]) -> Self {
        let mut s = crate::exactpoly::rat::primitive_scale(p.iter());
        if let Some(first) = p.iter().find(|c| !c.is_zero()) {
            if (first * &s).is_negative() {
                s = -s;
            }
        }
        let to_int = |r: &Rat| {
            let v = r * &s;
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        CanonPoint([to_int(&p[0]), to_int(&p[1]), to_int(&p[2])])
    }

    fn to_rat(&self) -> [Rat; 3] {
        [
            Rat::from_integer(self.0[0].clone()),
            Rat::from_integer(self.0[1].clone()),
            Rat::from_integer(self.0[2].clone()),
        ]
    }
}

fn witness_key(w: &Witness) -> (u8, Vec<Rat>, Option<(ComponentId, ComponentId)>) {
    match w {
        Witness::Rational { coords } => (0, coords.to_vec(), None),
        Witness::Algebraic {
            cut_by, min_poly, ..
        } => (1, min_poly.coeffs().to_vec(), Some(*cut_by)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat_i;

    fn line(a: i64, b: i64, c: i64) -> HForm {
        HForm::linear(rat_i(a), rat_i(b), rat_i(c))
    }

    fn conic(v: [i64; 6]) -> HForm {
        HForm::conic([
            rat_i(v[0]),
            rat_i(v[1]),
            rat_i(v[2]),
            rat_i(v[3]),
            rat_i(v[4]),
            rat_i(v[5]),
        ])
    }

    #[test]
    fn two_generic_lines_meet_once() {
        let arr = Arrangement::new(vec![line(1, 0, 0), line(0, 1, 0)], vec![]).unwrap();
        let pts = arr.singular_points(0).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 2);
        assert_eq!(pts[0].field_degree, 1);
        match &pts[0].witness {
            Witness::Rational { coords } => {
                assert_eq!(coords, &[rat_i(0), rat_i(0), rat_i(1)]);
            }
            _ => panic!("expected a rational witness"),
        }
    }

    #[test]
    fn tangent_line_is_non_ordinary() {
        // y - z is tangent to the circle at (0 : 1 : 1)
        let arr = Arrangement::new(
            vec![line(0, 1, -1)],
            vec![conic([1, 1, -1, 0, 0, 0])],
        )
        .unwrap();
        assert!(matches!(
            arr.singular_points(0),
            Err(Error::NonOrdinarySingularity(_))
        ));
    }

    #[test]
    fn conjugate_pair_on_a_line() {
        // x = 0 meets x^2 + y^2 - 2 z^2 at (0 : +-sqrt2 : 1): one record,
        // local_count 2
        let arr = Arrangement::new(
            vec![line(1, 0, 0)],
            vec![conic([1, 1, -2, 0, 0, 0])],
        )
        .unwrap();
        let pts = arr.singular_points(0).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].local_count, 2);
        assert_eq!(pts[0].field_degree, 2);
        assert_eq!(pts[0].multiplicity, 2);
    }

    #[test]
    fn five_concurrent_lines_rejected() {
        let arr = Arrangement::new(
            vec![
                line(1, 0, 0),
                line(0, 1, 0),
                line(1, 1, 0),
                line(1, -1, 0),
                line(1, 2, 0),
            ],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            arr.singular_points(0),
            Err(Error::MultiplicityTooHigh(_))
        ));
    }

    #[test]
    fn tangent_conics_rejected() {
        // x^2+y^2-z^2 and x^2+2y^2-z^2 are tangent at (1 : 0 : +-1)
        let arr = Arrangement::new(
            vec![],
            vec![conic([1, 1, -1, 0, 0, 0]), conic([1, 2, -1, 0, 0, 0])],
        )
        .unwrap();
        assert!(matches!(
            arr.singular_points(0),
            Err(Error::NonOrdinarySingularity(_))
        ));
    }

    #[test]
    fn transversal_conics_give_four_points() {
        // x^2+y^2-z^2 and x^2+2y^2-4z^2+xz meet in 4 distinct points
        let arr = Arrangement::new(
            vec![],
            vec![conic([1, 1, -1, 0, 0, 0]), conic([1, 2, -4, 0, 1, 0])],
        )
        .unwrap();
        let pts = arr.singular_points(7).unwrap();
        let total: usize = pts.iter().map(|p| p.local_count).sum();
        assert_eq!(total, 4);
        for p in &pts {
            assert_eq!(p.multiplicity, 2);
        }
        // determinism: same seed, same output
        assert_eq!(arr.singular_points(7).unwrap(), pts);
    }
}
