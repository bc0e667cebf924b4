//! Command orchestration: full pipelines from input text to report plus
//! exit code.
//!
//! Exit codes: 0 success / verdict true, 1 verdict false, 2 parse or input
//! error, 3 unsupported singularity, 4 internal inconsistency.

use sha2::{Digest, Sha256};

use mcurves::arrangement::{Arrangement, ComponentId};
use mcurves::mtheory;
use mcurves::syzygy::{self, RankEngine, RankMode};
use mcurves::{Error, WeakCombinatorics};

use crate::parse::{parse_arrangement, parse_wc};
use crate::report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED_SINGULARITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    pub error: Option<String>,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NonOrdinarySingularity(_) | Error::MultiplicityTooHigh(_) => {
            EXIT_UNSUPPORTED_SINGULARITY
        }
        Error::InternalInconsistency(_)
        | Error::BoundViolated(_)
        | Error::StabilizationFailure
        | Error::ShearExhausted => EXIT_INTERNAL,
        _ => EXIT_PARSE,
    }
}

#[derive(Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub mode: RankMode,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            mode: RankMode::ModularCertified,
        }
    }
}

fn sha256_hex(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    format!("{:x}", h.finalize())
}

fn fail(mut report: Report, e: &Error) -> Outcome {
    let exit = exit_code_for(e);
    report.command = format!("{} (failed)", report.command);
    Outcome {
        report,
        exit,
        error: Some(e.to_string()),
    }
}

fn parse_and_validate(text: &str, report: &mut Report) -> Result<Arrangement, Outcome> {
    report.input_sha256 = Some(sha256_hex(text));
    let doc = match parse_arrangement(text) {
        Ok(doc) => doc,
        Err(e) => {
            return Err(Outcome {
                report: std::mem::take(report),
                exit: EXIT_PARSE,
                error: Some(e.to_string()),
            })
        }
    };
    match doc.arrangement() {
        Ok(arr) => Ok(arr),
        Err(e) => Err(fail(std::mem::take(report), &e)),
    }
}

/// Constraint verdicts that apply to the given combinatorics.
fn applicable_verdicts(wc: &WeakCombinatorics) -> Vec<VerdictInfo> {
    let mut out = vec![VerdictInfo::from(&mtheory::bezout_check(wc))];
    if let Ok(v) = mtheory::char_check(wc) {
        out.push(VerdictInfo::from(&v));
    }
    if let Ok((a, b)) = mtheory::one_conic_check(wc) {
        out.push(VerdictInfo::from(&a));
        out.push(VerdictInfo::from(&b));
    }
    out
}

/// Full certification pipeline.
pub fn cmd_certify(text: &str, opts: Options) -> Outcome {
    let mut report = Report::new("certify", opts.seed);
    let arr = match parse_and_validate(text, &mut report) {
        Ok(arr) => arr,
        Err(out) => return out,
    };
    report.arrangement = Some(ArrangementInfo::from(&arr));
    let points = match arr.singular_points(opts.seed) {
        Ok(p) => p,
        Err(e) => return fail(report, &e),
    };
    report.singular_points = Some(points.iter().map(PointInfo::from).collect());
    let wc = match arr.weak_combinatorics(opts.seed) {
        Ok(wc) => wc,
        Err(e) => return fail(report, &e),
    };
    report.weak_combinatorics = Some(WcInfo::from(&wc));

    let engine = RankEngine::new(opts.mode, opts.seed);
    let f = arr.defining_form();
    let syz = match syzygy::analyze(&f, &engine) {
        Ok(s) => s,
        Err(e) => return fail(report, &e),
    };
    report.syzygy = Some(SyzygyInfo::from(&syz));

    let verdict = match syzygy::m_curve_certify(&arr, &wc, &syz) {
        Ok(v) => v,
        Err(e) => return fail(report, &e),
    };
    report.m_arrangement = Some(MArrangementInfo::from(&verdict));
    report.verdicts = Some(applicable_verdicts(&wc));
    let poincare = mtheory::poincare_cl(&wc);
    report.poincare = Some(PoincareInfo::from(&poincare));
    report.backend = Some(BackendInfo::from(engine.backend()));

    let exit = if verdict.is_m_arrangement {
        EXIT_OK
    } else {
        EXIT_VERDICT_FALSE
    };
    Outcome {
        report,
        exit,
        error: None,
    }
}

/// Weak combinatorics only.
pub fn cmd_combinatorics(text: &str, opts: Options) -> Outcome {
    let mut report = Report::new("combinatorics", opts.seed);
    let arr = match parse_and_validate(text, &mut report) {
        Ok(arr) => arr,
        Err(out) => return out,
    };
    report.arrangement = Some(ArrangementInfo::from(&arr));
    let points = match arr.singular_points(opts.seed) {
        Ok(p) => p,
        Err(e) => return fail(report, &e),
    };
    report.singular_points = Some(points.iter().map(PointInfo::from).collect());
    let wc = match arr.weak_combinatorics(opts.seed) {
        Ok(wc) => wc,
        Err(e) => return fail(report, &e),
    };
    report.weak_combinatorics = Some(WcInfo::from(&wc));
    report.verdicts = Some(applicable_verdicts(&wc));
    Outcome {
        report,
        exit: EXIT_OK,
        error: None,
    }
}

/// Constraint checks on a weak-combinatorics string.
pub fn cmd_check(wc_text: &str, opts: Options) -> Outcome {
    let mut report = Report::new("check", opts.seed);
    report.input_sha256 = Some(sha256_hex(wc_text));
    let wc = match parse_wc(wc_text) {
        Ok(wc) => wc,
        Err(e) => {
            return Outcome {
                report,
                exit: EXIT_PARSE,
                error: Some(e.to_string()),
            }
        }
    };
    report.weak_combinatorics = Some(WcInfo::from(&wc));
    let verdicts = applicable_verdicts(&wc);
    let all_ok = verdicts.iter().all(|v| v.satisfied);
    report.verdicts = Some(verdicts);
    report.poincare = Some(PoincareInfo::from(&mtheory::poincare_cl(&wc)));
    Outcome {
        report,
        exit: if all_ok { EXIT_OK } else { EXIT_VERDICT_FALSE },
        error: None,
    }
}

/// Enumerate admissible one-conic weak combinatorics for `d` lines.
pub fn cmd_enumerate(d: usize, opts: Options) -> Outcome {
    let mut report = Report::new("enumerate", opts.seed);
    let solutions = match mtheory::enumerate_one_conic(d) {
        Ok(s) => s,
        Err(e) => return fail(report, &e),
    };
    let mut rows = Vec::new();
    for (n2, n3, n4) in solutions {
        let wc = WeakCombinatorics::new(d, 1, &[(2, n2), (3, n3), (4, n4)])
            .expect("multiplicities >= 2");
        let char_check = match mtheory::char_check(&wc) {
            Ok(v) => VerdictInfo::from(&v),
            Err(e) => return fail(report, &e),
        };
        let admissible: Vec<usize> = (1..=2 * d)
            .filter(|&r| {
                mtheory::mvp_allowed(d, r).map(|v| v.satisfied).unwrap_or(false)
            })
            .collect();
        rows.push(EnumRow {
            n2,
            n3,
            n4,
            char_check,
            admissible_conic_traces: admissible,
            never_free_trace: 2 * d,
            poincare: PoincareInfo::from(&mtheory::poincare_cl(&wc)),
        });
    }
    report.enumeration = Some(rows);
    Outcome {
        report,
        exit: EXIT_OK,
        error: None,
    }
}

/// Delete a conic and report both routes to the deletion's Poincare
/// polynomial, plus the deleted arrangement's own syzygy data.
pub fn cmd_delete_conic(text: &str, conic_index: usize, opts: Options) -> Outcome {
    let mut report = Report::new("delete-conic", opts.seed);
    let arr = match parse_and_validate(text, &mut report) {
        Ok(arr) => arr,
        Err(out) => return out,
    };
    report.arrangement = Some(ArrangementInfo::from(&arr));
    let id = ComponentId::Conic(conic_index);
    let trace = match arr.conic_trace(conic_index, opts.seed) {
        Ok(t) => t,
        Err(e) => return fail(report, &e),
    };
    let deleted = match arr.delete_component(id) {
        Ok(a) => a,
        Err(e) => return fail(report, &e),
    };
    let dwc = match deleted.weak_combinatorics(opts.seed) {
        Ok(wc) => wc,
        Err(e) => return fail(report, &e),
    };
    let recomputed = mtheory::poincare_cl(&dwc);

    // formula route applies when the input is lines plus this single conic
    let formula = if arr.k() == 1 {
        match mtheory::poincare_of_deletion(arr.d(), trace) {
            Ok(p) => Some(p),
            Err(_) => None,
        }
    } else {
        None
    };
    let routes_agree = formula.map(|f| f == recomputed);

    let engine = RankEngine::new(opts.mode, opts.seed);
    let dform = deleted.defining_form();
    let syz = match syzygy::analyze(&dform, &engine) {
        Ok(s) => s,
        Err(e) => return fail(report, &e),
    };
    let gens = syzygy::generator_degrees(&dform, dform.degree().saturating_sub(1));
    report.deletion = Some(DeletionInfo {
        deleted_conic: conic_index,
        conic_trace: trace,
        poincare_formula: formula.as_ref().map(PoincareInfo::from),
        poincare_recomputed: PoincareInfo::from(&recomputed),
        routes_agree,
        mdr_lower_bound: mtheory::mdr_lower_bound_lines(arr.d()),
        never_free_advisory: mtheory::addition_never_free_advisory(arr.d(), trace),
        weak_combinatorics: WcInfo::from(&dwc),
        syzygy: SyzygyInfo::from(&syz),
        generator_degrees: gens,
    });
    report.backend = Some(BackendInfo::from(engine.backend()));
    let exit = match routes_agree {
        Some(false) => EXIT_VERDICT_FALSE,
        _ => EXIT_OK,
    };
    Outcome {
        report,
        exit,
        error: None,
    }
}

/// Plain-text rendering of a report.
pub fn print_human(out: &Outcome) {
    let r = &out.report;
    println!("command: {}", r.command);
    if let Some(err) = &out.error {
        println!("error: {err}");
    }
    if let Some(a) = &r.arrangement {
        println!(
            "arrangement: {} lines, {} conic(s), total degree {}",
            a.d, a.k, a.total_degree
        );
        for l in &a.lines {
            println!("  line:  {l}");
        }
        for c in &a.conics {
            println!("  conic: {c}");
        }
    }
    if let Some(wc) = &r.weak_combinatorics {
        println!(
            "weak combinatorics: {}   (tau from multiplicities: {})",
            wc.display, wc.tau_combinatorial
        );
    }
    if let Some(points) = &r.singular_points {
        println!("singular points ({} records):", points.len());
        for p in points {
            println!(
                "  mult {} x{} (field degree {}) on {}  at {}",
                p.multiplicity,
                p.local_count,
                p.field_degree,
                p.incidence.join(", "),
                p.witness
            );
        }
    }
    if let Some(s) = &r.syzygy {
        print_syzygy(s, "");
    }
    if let Some(m) = &r.m_arrangement {
        println!(
            "M-arrangement: {}   (target {}, actual {})",
            m.is_m_arrangement, m.target_tau, m.actual_tau
        );
        println!("  {}", m.details);
    }
    if let Some(verdicts) = &r.verdicts {
        println!("constraint verdicts:");
        for v in verdicts {
            println!(
                "  {:24} {}  (lhs {}, rhs {})",
                v.rule,
                if v.satisfied { "ok" } else { "VIOLATED" },
                v.lhs,
                v.rhs
            );
        }
    }
    if let Some(p) = &r.poincare {
        print_poincare(p, "Poincare polynomial");
    }
    if let Some(d) = &r.deletion {
        println!("deletion of conic[{}]:", d.deleted_conic);
        println!("  conic trace r = {}", d.conic_trace);
        if let Some(f) = &d.poincare_formula {
            print_poincare(f, "  deletion Poincare (formula)");
        }
        print_poincare(&d.poincare_recomputed, "  deletion Poincare (recomputed)");
        match d.routes_agree {
            Some(true) => println!("  routes agree: yes"),
            Some(false) => println!("  routes agree: NO"),
            None => println!("  routes agree: formula not applicable"),
        }
        println!("  mdr lower bound (line arrangement): {}", d.mdr_lower_bound);
        if d.never_free_advisory {
            println!("  advisory: maximal trace, the union is never free");
        }
        println!("  deleted combinatorics: {}", d.weak_combinatorics.display);
        print_syzygy(&d.syzygy, "  ");
        let gens: Vec<String> = d
            .generator_degrees
            .iter()
            .map(|(deg, n)| format!("{deg} (x{n})"))
            .collect();
        println!("  minimal generator degrees: {}", gens.join(", "));
    }
    if let Some(rows) = &r.enumeration {
        println!("admissible (n2, n3, n4):");
        if rows.is_empty() {
            println!("  none");
        }
        for row in rows {
            println!(
                "  ({}, {}, {})  char {}  traces {:?}  {}",
                row.n2,
                row.n3,
                row.n4,
                if row.char_check.satisfied { "ok" } else { "VIOLATED" },
                row.admissible_conic_traces,
                row.poincare.display
            );
        }
    }
    if let Some(b) = &r.backend {
        println!(
            "backend: {} (seed {}, {} primes{})",
            b.mode,
            r.seed,
            b.primes_used.len(),
            if b.exact_fallback_triggered {
                ", exact fallback triggered"
            } else {
                ""
            }
        );
    }
}

fn print_syzygy(s: &SyzygyInfo, indent: &str) {
    println!(
        "{indent}syzygies: tau = {}, mdr = {}, free = {}{}",
        s.tau,
        s.mdr,
        s.is_free,
        match s.exponents {
            Some((a, b)) => format!(", exponents ({a}, {b})"),
            None => String::new(),
        }
    );
    println!(
        "{indent}  dpw bound {} | ct {} | st {} | reg M(f) {} | reg AR(f) {}",
        s.dpw_bound,
        s.ct.map_or("-".into(), |v| v.to_string()),
        s.st,
        s.reg_m.map_or("-".into(), |v| v.to_string()),
        s.reg_ar.map_or("-".into(), |v| v.to_string()),
    );
}

fn print_poincare(p: &PoincareInfo, label: &str) {
    println!(
        "{label}: {}  {}",
        p.display,
        match p.splits_as {
            Some((a, b)) => format!("= (1 + {a}t)(1 + {b}t)"),
            None => "(does not split over the rationals)".into(),
        }
    );
}
