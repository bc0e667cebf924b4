//! The arrangement file format and the weak-combinatorics string format.
//!
//! Grammar (one component per line):
//!
//! ```text
//! # comment
//! line: a b c            -> a x + b y + c z
//! conic: a b c d e f     -> a x^2 + b y^2 + c z^2 + d xy + e xz + f yz
//! ```
//!
//! Coefficients are integers or fractions `p/q`; blank lines are ignored.
//! Serialization writes the normalized forms back in the same grammar, so
//! parse-serialize-parse is byte-stable.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use mcurves::arrangement::Arrangement;
use mcurves::exactpoly::hform::Exp;
use mcurves::{HForm, Rat, WeakCombinatorics};

/// Parse failure with location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parsed arrangement document: raw forms plus their source lines. Semantic
/// validation (smoothness, duplicates) happens in [`ArrangementDocument::arrangement`].
#[derive(Debug, Clone)]
pub struct ArrangementDocument {
    pub source: String,
    pub lines: Vec<(HForm, usize)>,
    pub conics: Vec<(HForm, usize)>,
}

impl ArrangementDocument {
    pub fn arrangement(&self) -> mcurves::Result<Arrangement> {
        Arrangement::new(
            self.lines.iter().map(|(f, _)| f.clone()).collect(),
            self.conics.iter().map(|(f, _)| f.clone()).collect(),
        )
    }
}

fn parse_rat(tok: &str, line_no: usize, col: usize) -> Result<Rat, ParseError> {
    let err = |msg: String| ParseError {
        line: line_no,
        column: col,
        message: msg,
    };
    let parse_int = |s: &str| -> Result<BigInt, ParseError> {
        s.parse::<BigInt>()
            .map_err(|_| err(format!("invalid integer `{s}`")))
    };
    match tok.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(err(format!("zero denominator in `{tok}`")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(tok)?)),
    }
}

/// Parse the arrangement grammar. Column numbers are 1-based byte offsets
/// of the offending token.
pub fn parse_arrangement(text: &str) -> Result<ArrangementDocument, ParseError> {
    let mut lines = Vec::new();
    let mut conics = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some((kind, rest)) = content.split_once(':') else {
            return Err(ParseError {
                line: line_no,
                column: 1,
                message: "expected `line:` or `conic:`".into(),
            });
        };
        let expected = match kind.trim() {
            "line" => 3,
            "conic" => 6,
            other => {
                return Err(ParseError {
                    line: line_no,
                    column: 1,
                    message: format!("unknown component kind `{other}`"),
                })
            }
        };
        let mut coeffs = Vec::with_capacity(expected);
        for tok in rest.split_whitespace() {
            let col = raw.find(tok).map_or(1, |p| p + 1);
            coeffs.push(parse_rat(tok, line_no, col)?);
        }
        if coeffs.len() != expected {
            return Err(ParseError {
                line: line_no,
                column: 1,
                message: format!(
                    "`{}:` needs {expected} coefficients, found {}",
                    kind.trim(),
                    coeffs.len()
                ),
            });
        }
        if expected == 3 {
            let [a, b, c]: [Rat; 3] = coeffs.try_into().unwrap();
            lines.push((HForm::linear(a, b, c), line_no));
        } else {
            let arr: [Rat; 6] = coeffs.try_into().unwrap();
            conics.push((HForm::conic(arr), line_no));
        }
    }
    Ok(ArrangementDocument {
        source: text.to_string(),
        lines,
        conics,
    })
}

fn coeff_str(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text for a validated arrangement: normalized integer
/// coefficients, lines first.
pub fn serialize_arrangement(arr: &Arrangement) -> String {
    let mut out = String::new();
    for l in arr.lines() {
        let c = [
            l.coeff(Exp::new(1, 0, 0)),
            l.coeff(Exp::new(0, 1, 0)),
            l.coeff(Exp::new(0, 0, 1)),
        ];
        out.push_str(&format!(
            "line: {} {} {}\n",
            coeff_str(&c[0]),
            coeff_str(&c[1]),
            coeff_str(&c[2])
        ));
    }
    for q in arr.conics() {
        let c = [
            q.coeff(Exp::new(2, 0, 0)),
            q.coeff(Exp::new(0, 2, 0)),
            q.coeff(Exp::new(0, 0, 2)),
            q.coeff(Exp::new(1, 1, 0)),
            q.coeff(Exp::new(1, 0, 1)),
            q.coeff(Exp::new(0, 1, 1)),
        ];
        out.push_str(&format!(
            "conic: {} {} {} {} {} {}\n",
            coeff_str(&c[0]),
            coeff_str(&c[1]),
            coeff_str(&c[2]),
            coeff_str(&c[3]),
            coeff_str(&c[4]),
            coeff_str(&c[5])
        ));
    }
    out
}

/// Parse `d,k;n2,n3,...` into a weak-combinatorics vector; trailing counts
/// map to multiplicities 2, 3, ...
pub fn parse_wc(text: &str) -> Result<WeakCombinatorics, ParseError> {
    let err = |msg: String| ParseError {
        line: 1,
        column: 1,
        message: msg,
    };
    let text = text.trim();
    let (head, tail) = text
        .split_once(';')
        .ok_or_else(|| err("expected `d,k;n2,n3,...`".into()))?;
    let (d_str, k_str) = head
        .split_once(',')
        .ok_or_else(|| err("expected `d,k` before `;`".into()))?;
    let parse_count = |s: &str| -> Result<usize, ParseError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
                return Err(err(format!("negative count `{s}`")));
            }
        }
        s.parse::<usize>()
            .map_err(|_| err(format!("invalid count `{s}`")))
    };
    let d = parse_count(d_str)?;
    let k = parse_count(k_str)?;
    let mut counts = Vec::new();
    if !tail.trim().is_empty() {
        for (i, tok) in tail.split(',').enumerate() {
            counts.push((i + 2, parse_count(tok)?));
        }
    }
    WeakCombinatorics::new(d, k, &counts)
        .map_err(|e| err(e.to_string()))
}
