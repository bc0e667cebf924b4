//! Machine-readable reports. Field order is fixed by the struct layout and
//! all maps are ordered, so a report is byte-identical across runs given the
//! same input, flags, and seed.

use std::collections::BTreeMap;

use serde::Serialize;

use mcurves::arrangement::{Arrangement, SingularPoint, Witness};
use mcurves::mtheory::{ConstraintVerdict, PoincarePolynomial};
use mcurves::syzygy::{MCurveVerdict, RankBackend, RankMode, SyzygyReport};
use mcurves::WeakCombinatorics;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug, Default)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_combinatorics: Option<WcInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_points: Option<Vec<PointInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syzygy: Option<SyzygyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_arrangement: Option<MArrangementInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<VerdictInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare: Option<PoincareInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deletion: Option<DeletionInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<Vec<EnumRow>>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            ..Default::default()
        }
    }
}

#[derive(Serialize, Debug)]
pub struct BackendInfo {
    pub mode: String,
    pub primes_used: Vec<u64>,
    pub exact_fallback_triggered: bool,
}

impl From<RankBackend> for BackendInfo {
    fn from(b: RankBackend) -> Self {
        BackendInfo {
            mode: match b.mode {
                RankMode::Exact => "exact".into(),
                RankMode::ModularCertified => "modular-certified".into(),
            },
            primes_used: b.primes_used,
            exact_fallback_triggered: b.exact_fallback_triggered,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ArrangementInfo {
    pub d: usize,
    pub k: usize,
    pub total_degree: usize,
    /// Normalized forms, expanded; the conic order in the input format is
    /// (x^2, y^2, z^2, xy, xz, yz).
    pub lines: Vec<String>,
    pub conics: Vec<String>,
}

impl From<&Arrangement> for ArrangementInfo {
    fn from(arr: &Arrangement) -> Self {
        ArrangementInfo {
            d: arr.d(),
            k: arr.k(),
            total_degree: arr.total_degree(),
            lines: arr.lines().iter().map(|f| f.to_string()).collect(),
            conics: arr.conics().iter().map(|f| f.to_string()).collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct WcInfo {
    pub d: usize,
    pub k: usize,
    pub counts: BTreeMap<usize, usize>,
    pub display: String,
    pub tau_combinatorial: usize,
}

impl From<&WeakCombinatorics> for WcInfo {
    fn from(wc: &WeakCombinatorics) -> Self {
        WcInfo {
            d: wc.d,
            k: wc.k,
            counts: wc.counts.clone(),
            display: wc.to_string(),
            tau_combinatorial: mcurves::mtheory::tau_of(wc),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PointInfo {
    pub multiplicity: usize,
    pub local_count: usize,
    pub field_degree: usize,
    pub incidence: Vec<String>,
    pub witness: String,
}

impl From<&SingularPoint> for PointInfo {
    fn from(p: &SingularPoint) -> Self {
        let witness = match &p.witness {
            Witness::Rational { coords } => format!(
                "({} : {} : {})",
                coords[0], coords[1], coords[2]
            ),
            Witness::Algebraic {
                cut_by,
                min_poly,
                coords,
            } => format!(
                "cut by {} and {}; a root of {} = 0; ({} : {} : {})",
                cut_by.0,
                cut_by.1,
                min_poly.to_string_var("a"),
                coords[0].to_string_var("a"),
                coords[1].to_string_var("a"),
                coords[2].to_string_var("a"),
            ),
        };
        PointInfo {
            multiplicity: p.multiplicity,
            local_count: p.local_count,
            field_degree: p.field_degree,
            incidence: p.incidence.iter().map(|c| c.to_string()).collect(),
            witness,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct SyzygyInfo {
    pub degree: usize,
    pub tau: usize,
    pub mdr: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mdr_e: Option<usize>,
    pub is_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<(usize, usize)>,
    pub dpw_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ct: Option<usize>,
    pub st: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg_m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg_ar: Option<usize>,
    pub hilbert: Vec<usize>,
}

impl From<&SyzygyReport> for SyzygyInfo {
    fn from(r: &SyzygyReport) -> Self {
        SyzygyInfo {
            degree: r.degree,
            tau: r.tau,
            mdr: r.mdr,
            mdr_e: r.mdr_e,
            is_free: r.is_free,
            exponents: r.exponents,
            dpw_bound: r.dpw_bound,
            ct: r.ct,
            st: r.st,
            reg_m: r.reg_m,
            reg_ar: r.reg_ar,
            hilbert: r.hilbert.clone(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct MArrangementInfo {
    pub is_m_arrangement: bool,
    pub target_tau: usize,
    pub actual_tau: usize,
    pub details: String,
}

impl From<&MCurveVerdict> for MArrangementInfo {
    fn from(v: &MCurveVerdict) -> Self {
        MArrangementInfo {
            is_m_arrangement: v.is_m_arrangement,
            target_tau: v.target_tau,
            actual_tau: v.actual_tau,
            details: v.details.clone(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct VerdictInfo {
    pub rule: String,
    pub satisfied: bool,
    pub lhs: i64,
    pub rhs: i64,
}

impl From<&ConstraintVerdict> for VerdictInfo {
    fn from(v: &ConstraintVerdict) -> Self {
        VerdictInfo {
            rule: v.rule.clone(),
            satisfied: v.satisfied,
            lhs: v.lhs,
            rhs: v.rhs,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PoincareInfo {
    /// `[1, c1, c2]`
    pub coefficients: [i64; 3],
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splits_as: Option<(i64, i64)>,
    pub splits_rationally: bool,
}

impl From<&PoincarePolynomial> for PoincareInfo {
    fn from(p: &PoincarePolynomial) -> Self {
        let split = mcurves::mtheory::splits_rationally(p);
        PoincareInfo {
            coefficients: [1, p.c1, p.c2],
            display: p.to_string(),
            splits_as: split,
            splits_rationally: split.is_some(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct DeletionInfo {
    pub deleted_conic: usize,
    pub conic_trace: usize,
    /// Formula route, present only when the input has exactly one conic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare_formula: Option<PoincareInfo>,
    /// Recomputation route from the deleted arrangement's combinatorics.
    pub poincare_recomputed: PoincareInfo,
    pub routes_agree: Option<bool>,
    pub mdr_lower_bound: usize,
    pub never_free_advisory: bool,
    pub weak_combinatorics: WcInfo,
    pub syzygy: SyzygyInfo,
    pub generator_degrees: Vec<(usize, usize)>,
}

#[derive(Serialize, Debug)]
pub struct EnumRow {
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
    pub char_check: VerdictInfo,
    pub admissible_conic_traces: Vec<usize>,
    pub never_free_trace: usize,
    pub poincare: PoincareInfo,
}
