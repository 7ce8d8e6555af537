//! Real affine line arrangements over exact rationals.

mod lattice;
mod realize;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use lattice::{
    fan_graph, induced_presentation, lattice, IntersectionLattice, LatticePoint, LatticeReport,
};
pub use realize::{realize, round_trip_check, RoundTripReport};

pub type Point = (BigRational, BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("line {0}: both a and b are zero")]
    Degenerate(usize),
    #[error("lines {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("lines {0} and {1} are parallel")]
    Parallel(usize, usize),
    #[error("line labels must be exactly 1..={n}; found {label}")]
    BadLabel { label: usize, n: usize },
    #[error("line {0} is listed twice")]
    RepeatedLabel(usize),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("Fan's graph is not a disjoint union of conjugation-free graphs; the geometric presentation is not available")]
    NotConjugationFreeGraph,
    #[error("pair coverage fails (parallel lines?); no presentation can be read off")]
    IncompleteCoverage,
    #[error("realization needs a cycle-separated graph")]
    NotCycleSeparated,
    #[error("generator {generator} lies in {count} multiple relations; each generator may label at most one edge")]
    SharedEdgeLabel { generator: usize, count: usize },
    #[error("multiple relations {0} and {1} share more than one generator")]
    OverlappingVertices(usize, usize),
    #[error("vertex support mentions generator {generator} but n = {n}")]
    GeneratorOutOfRange { generator: usize, n: usize },
    #[error("graph edges do not match the generators shared by vertex supports")]
    InconsistentEdges,
    #[error("realization failed after {attempts} layouts: {detail}")]
    RealizationFailed { attempts: usize, detail: String },
    #[error("round trip needs a conjugation-free presentation")]
    NotConjugationFree,
    #[error("presentation is not cyclic-related")]
    InvalidPresentation,
}

/// `a·x + b·y = c`, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalLine {
    pub label: usize,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl RationalLine {
    pub fn new(
        label: usize,
        a: BigRational,
        b: BigRational,
        c: BigRational,
    ) -> Result<Self, ArrangementError> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(ArrangementError::Degenerate(label));
        };
        Ok(Self {
            label,
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        })
    }

    /// The line through two distinct points.
    pub fn through(label: usize, p: &Point, q: &Point) -> Self {
        // (y_q - y_p) x - (x_q - x_p) y = (y_q - y_p) x_p - (x_q - x_p) y_p
        let a = &q.1 - &p.1;
        let b = &p.0 - &q.0;
        let c = &a * &p.0 + &b * &p.1;
        Self::new(label, a, b, c).expect("points are distinct")
    }

    /// `y - y_p = slope (x - x_p)`.
    pub fn with_slope(label: usize, p: &Point, slope: &BigRational) -> Self {
        let a = -slope.clone();
        let b = BigRational::one();
        let c = &a * &p.0 + &p.1;
        Self::new(label, a, b, c).expect("b is nonzero")
    }

    pub fn contains(&self, p: &Point) -> bool {
        &self.a * &p.0 + &self.b * &p.1 == self.c
    }

    pub fn is_parallel(&self, other: &Self) -> bool {
        // normalized, so direction equality is coefficient equality
        self.a == other.a && self.b == other.b
    }

    pub fn same_line(&self, other: &Self) -> bool {
        self.is_parallel(other) && self.c == other.c
    }

    /// Intersection point, or `None` for parallel lines.
    pub fn intersect(&self, other: &Self) -> Option<Point> {
        let det = &self.a * &other.b - &other.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &other.c * &self.b) / &det;
        let y = (&self.a * &other.c - &other.a * &self.c) / &det;
        Some((x, y))
    }
}

/// Lines labeled `1..=n`, stored in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<RationalLine>,
}

impl Arrangement {
    pub fn new(mut lines: Vec<RationalLine>) -> Result<Self, ArrangementError> {
        let n = lines.len();
        lines.sort_by_key(|l| l.label);
        for (i, l) in lines.iter().enumerate() {
            if l.label == 0 || l.label > n {
                return Err(ArrangementError::BadLabel { label: l.label, n });
            }
            if i > 0 && lines[i - 1].label == l.label {
                return Err(ArrangementError::RepeatedLabel(l.label));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if lines[i].same_line(&lines[j]) {
                    return Err(ArrangementError::Duplicate(lines[i].label, lines[j].label));
                }
            }
        }
        Ok(Self { lines })
    }

    pub fn lines(&self) -> &[RationalLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// `line <label> <a> <b> <c>`, rationals as `p/q` or integers.
impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "line {} {} {} {}", l.label, l.a, l.b, l.c)?;
        }
        Ok(())
    }
}

fn parse_rational(tok: &str) -> Option<BigRational> {
    let r = BigRational::from_str(tok).ok()?;
    Some(r)
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut offset = 0;
        for tok in content.split_whitespace() {
            let at = content[offset..].find(tok).unwrap() + offset;
            offset = at + tok.len();
            toks.push((content[..at].chars().count() + 1, tok));
        }
        if toks.is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| ArrangementError::Syntax {
            line: idx + 1,
            column,
            message,
        };
        if toks[0].1 != "line" {
            return Err(syntax(toks[0].0, format!("expected `line`, found `{}`", toks[0].1)));
        }
        if toks.len() != 5 {
            return Err(syntax(
                toks[0].0,
                format!("expected `line <label> <a> <b> <c>`, got {} fields", toks.len()),
            ));
        }
        let label = toks[1]
            .1
            .parse::<usize>()
            .map_err(|_| syntax(toks[1].0, format!("invalid label `{}`", toks[1].1)))?;
        let mut coeffs = Vec::with_capacity(3);
        for &(col, tok) in &toks[2..] {
            coeffs.push(
                parse_rational(tok).ok_or_else(|| syntax(col, format!("invalid rational `{tok}`")))?,
            );
        }
        let c = coeffs.pop().unwrap();
        let b = coeffs.pop().unwrap();
        let a = coeffs.pop().unwrap();
        lines.push(RationalLine::new(label, a, b, c)?);
    }
    Arrangement::new(lines)
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
